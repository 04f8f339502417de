//! The quantum Koszul resolution `(S^e (x) wedge^m_q V, d_m)` of `S = S_q(V)`.
//!
//! `S^e = S (x) S^op` acts on `S (x) S` by `(a (x) b)(c (x) d) = ac (x) db`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::linalg::rank;
use crate::scalars::Scalar;
use crate::smash::{AlgebraSpec, GroupElement, SmashElement, SmashMonomial};

use super::cochain::Kappa;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KoszulError {
    #[error("wedge degree {m} outside 1..={k}")]
    BadDegree { m: usize, k: usize },
    #[error("wedge index does not have degree {0}")]
    DegreeMismatch(usize),
}

/// `w_{j_1} ^ ... ^ w_{j_m}` with `j_1 < ... < j_m`, stored as a bit mask
/// (bit `j` set for `w_{j+1}`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeIndex {
    mask: u32,
}

impl WedgeIndex {
    pub fn empty() -> Self {
        WedgeIndex { mask: 0 }
    }

    /// From zero-based indices in any order; repeated indices collapse.
    pub fn from_indices(indices: &[usize]) -> Self {
        WedgeIndex { mask: indices.iter().fold(0, |m, &j| m | (1 << j)) }
    }

    pub fn degree(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Zero-based indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|j| self.mask & (1 << j) != 0).collect()
    }

    pub fn without(&self, j: usize) -> Self {
        WedgeIndex { mask: self.mask & !(1 << j) }
    }

    /// All wedge indices of degree `m` in `k` variables.
    pub fn all(k: usize, m: usize) -> Vec<WedgeIndex> {
        (0u32..(1 << k)).filter(|x| x.count_ones() as usize == m).map(|mask| WedgeIndex { mask }).collect()
    }
}

impl fmt::Display for WedgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|j| format!("w{}", j + 1)).collect();
        write!(f, "{}", parts.join("^"))
    }
}

impl fmt::Debug for WedgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

type ChainKey = (SmashMonomial, SmashMonomial, WedgeIndex);

/// A finite sum of `c * (left (x) right (x) wedge)` in `S (x) S (x) wedge V`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct KoszulChain {
    terms: BTreeMap<ChainKey, Scalar>,
}

impl KoszulChain {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1 (x) 1 (x) wedge`.
    pub fn generator(spec: &AlgebraSpec, wedge: WedgeIndex) -> Self {
        let mut c = Self::zero();
        c.add_term(spec.one_monomial(), spec.one_monomial(), wedge, spec.field().one());
        c
    }

    pub fn add_term(&mut self, left: SmashMonomial, right: SmashMonomial, wedge: WedgeIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (left, right, wedge);
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SmashMonomial, &SmashMonomial, &WedgeIndex, &Scalar)> {
        self.terms.iter().map(|((l, r, w), c)| (l, r, w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for KoszulChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(l, r, w, c)| format!("({c}) {l} (x) {r} (x) {w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for KoszulChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `d_m(1 (x) 1 (x) w_{j_1} ^ ... ^ w_{j_m})`:
///
/// ```text
/// sum_i (-1)^{i+1} [ (prod_{s<=i} q_{j_s j_i}) w_{j_i} (x) 1
///                   - (prod_{s>=i} q_{j_i j_s}) 1 (x) w_{j_i} ] (x) (wedge without w_{j_i})
/// ```
pub fn koszul_d(spec: &AlgebraSpec, m: usize, wedge: WedgeIndex) -> Result<KoszulChain, KoszulError> {
    let k = spec.k();
    if m == 0 || m > k {
        return Err(KoszulError::BadDegree { m, k });
    }
    if wedge.degree() != m {
        return Err(KoszulError::DegreeMismatch(m));
    }
    let js = wedge.indices();
    let one = spec.one_monomial();
    let mut out = KoszulChain::zero();
    for (i, &ji) in js.iter().enumerate() {
        let sign = if i % 2 == 0 { spec.field().one() } else { spec.field().integer(-1) };
        let left = js[..=i].iter().fold(spec.field().one(), |acc, &js_| &acc * spec.q(js_, ji));
        let right = js[i..].iter().fold(spec.field().one(), |acc, &js_| &acc * spec.q(ji, js_));
        let w = spec.w(ji).terms()[0].0.clone();
        let rest = wedge.without(ji);
        out.add_term(w.clone(), one.clone(), rest, &sign * &left);
        out.add_term(one.clone(), w, rest, -&(&sign * &right));
    }
    Ok(out)
}

/// Extends `d_m` to a chain by `S^e`-linearity.
pub fn apply_d(spec: &AlgebraSpec, chain: &KoszulChain) -> Result<KoszulChain, KoszulError> {
    let mut out = KoszulChain::zero();
    for (l, r, w, c) in chain.terms() {
        let image = koszul_d(spec, w.degree(), *w)?;
        for (x, y, w2, c2) in image.terms() {
            let (c_l, left) = spec.monomial_mul(l, x);
            let (c_r, right) = spec.monomial_mul(y, r);
            out.add_term(left, right, *w2, &(&(c * c2) * &c_l) * &c_r);
        }
    }
    Ok(out)
}

/// The augmentation `m(a (x) b) = ab` on a degree-0 chain.
pub fn augmentation(spec: &AlgebraSpec, chain: &KoszulChain) -> SmashElement {
    let terms = chain
        .terms()
        .map(|(l, r, _, c)| {
            let (cm, m) = spec.monomial_mul(l, r);
            (m, c * &cm)
        })
        .collect();
    SmashElement::from_terms(terms)
}

/// `d_{m-1}(d_m(x)) = 0` for every wedge generator of degree `2..=max_degree`,
/// and `m(d_1(x)) = 0`. Returns the first failing wedge.
pub fn check_complex(spec: &AlgebraSpec, max_degree: usize) -> Result<(), (WedgeIndex, String)> {
    let k = spec.k();
    for w in WedgeIndex::all(k, 1) {
        let d1 = koszul_d(spec, 1, w).map_err(|e| (w, e.to_string()))?;
        let m = augmentation(spec, &d1);
        if !m.is_zero() {
            return Err((w, m.to_string()));
        }
    }
    for m in 2..=max_degree.min(k) {
        for w in WedgeIndex::all(k, m) {
            let dd = apply_d(spec, &koszul_d(spec, m, w).map_err(|e| (w, e.to_string()))?)
                .map_err(|e| (w, e.to_string()))?;
            if !dd.is_zero() {
                return Err((w, dd.to_string()));
            }
        }
    }
    Ok(())
}

/// `Psi_2(1 (x) w_i (x) w_j (x) 1)` (zero-based): `1 (x) 1 (x) w_i ^ w_j` when
/// `i < j`, zero otherwise.
pub fn psi2_value(i: usize, j: usize) -> Option<WedgeIndex> {
    (i < j).then(|| WedgeIndex::from_indices(&[i, j]))
}

/// Whether `kappa` is a coboundary `f o d_2` of some Koszul 1-cochain
/// `f: V -> S_q(V) # G`. `d_2^*` preserves the group part and raises the
/// polynomial degree by one, so each homogeneous piece of `kappa` is solved
/// exactly as a finite linear system.
pub fn is_koszul_coboundary(spec: &AlgebraSpec, kappa: &Kappa) -> bool {
    let k = spec.k();
    let pairs = WedgeIndex::all(k, 2);
    let pieces: BTreeSet<(GroupElement, u32)> =
        kappa.element.terms().iter().map(|(m, _)| (m.g.clone(), m.degree())).collect();
    let d2: Vec<KoszulChain> = pairs.iter().map(|w| koszul_d(spec, 2, *w).expect("degree 2 wedge")).collect();
    pieces.into_iter().all(|(g, degree)| {
        if degree == 0 {
            return false;
        }
        let unknowns: Vec<(usize, SmashMonomial)> = (0..k)
            .flat_map(|l| {
                spec.exponent_vectors(degree - 1)
                    .into_iter()
                    .filter(|a| a.iter().sum::<u32>() == degree - 1)
                    .map(move |a| (l, a))
            })
            .map(|(l, a)| (l, SmashMonomial::new(&a, g.clone())))
            .collect();
        let mut rows: BTreeMap<(usize, SmashMonomial), Vec<Scalar>> = BTreeMap::new();
        let width = unknowns.len() + 1;
        let zero_row = || vec![spec.field().zero(); width];
        for (col, (l, f)) in unknowns.iter().enumerate() {
            for (p, chain) in d2.iter().enumerate() {
                for (x, y, w, c) in chain.terms() {
                    if w.indices() != [*l] {
                        continue;
                    }
                    let (c1, xf) = spec.monomial_mul(x, f);
                    let (c2, m) = spec.monomial_mul(&xf, y);
                    let row = rows.entry((p, m)).or_insert_with(zero_row);
                    row[col] = &row[col] + &(&(c * &c1) * &c2);
                }
            }
        }
        for (p, w) in pairs.iter().enumerate() {
            for (m, c) in kappa.pair(*w).terms() {
                if m.g == g && m.degree() == degree {
                    rows.entry((p, m.clone())).or_insert_with(zero_row)[width - 1] = c.clone();
                }
            }
        }
        let augmented: Vec<Vec<Scalar>> = rows.into_values().collect();
        let plain: Vec<Vec<Scalar>> = augmented.iter().map(|r| r[..width - 1].to_vec()).collect();
        rank(plain) == rank(augmented)
    })
}
