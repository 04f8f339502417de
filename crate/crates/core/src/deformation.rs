//! Star products `a * b = m exp_q(t D1 (x) D2)(a (x) b)` on `(S_q(V) # G)[t]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::hopf::{HopfAction, Op};
use crate::report::{CheckReport, Witness};
use crate::scalars::{quantum_factorial, Scalar};
use crate::smash::{write_signed_term, AlgebraSpec, SmashElement, SmashMonomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error("deformation sum did not terminate by t^{t_cap} (D1^i(a) and D2^i(b) both nonzero)")]
    Nontermination { t_cap: u32 },
    #[error("quantum factorial ({0})_q! vanishes")]
    VanishingFactorial(u32),
}

/// A polynomial in `t` with coefficients in `S_q(V) # G`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DeformElement {
    coeffs: BTreeMap<u32, SmashElement>,
}

impl DeformElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `t^degree * e`.
    pub fn monomial(degree: u32, e: SmashElement) -> Self {
        let mut coeffs = BTreeMap::new();
        if !e.is_zero() {
            coeffs.insert(degree, e);
        }
        DeformElement { coeffs }
    }

    pub fn classical(e: SmashElement) -> Self {
        Self::monomial(0, e)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^degree`.
    pub fn coefficient(&self, degree: u32) -> SmashElement {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &SmashElement)> {
        self.coeffs.iter().map(|(&d, e)| (d, e))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_component(&mut self, degree: u32, e: &SmashElement) {
        if e.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&degree) {
            Some(old) => old.add(e),
            None => e.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&degree);
        } else {
            self.coeffs.insert(degree, sum);
        }
    }

    pub fn add(&self, other: &DeformElement) -> DeformElement {
        let mut out = self.clone();
        for (d, e) in other.components() {
            out.add_component(d, e);
        }
        out
    }

    pub fn sub(&self, other: &DeformElement) -> DeformElement {
        self.add(&other.scale_elementwise(|e| e.neg()))
    }

    pub fn scale(&self, s: &Scalar) -> DeformElement {
        self.scale_elementwise(|e| e.scale(s))
    }

    fn scale_elementwise(&self, f: impl Fn(&SmashElement) -> SmashElement) -> DeformElement {
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(&d, e)| {
                let v = f(e);
                (!v.is_zero()).then_some((d, v))
            })
            .collect();
        DeformElement { coeffs }
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: u32) -> DeformElement {
        DeformElement { coeffs: self.coeffs.iter().map(|(&d, e)| (d + shift, e.clone())).collect() }
    }

    /// Value at `t = 0`.
    pub fn at_zero(&self) -> SmashElement {
        self.coefficient(0)
    }
}

/// Terms in increasing `t`-degree, each printed as `c * t^d * m`.
impl fmt::Display for DeformElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, e) in self.components() {
            let t = match d {
                0 => None,
                1 => Some("t".to_string()),
                d => Some(format!("t^{d}")),
            };
            for (m, c) in e.terms() {
                let body = match (&t, m.is_one()) {
                    (None, true) => None,
                    (None, false) => Some(m.to_string()),
                    (Some(t), true) => Some(t.clone()),
                    (Some(t), false) => Some(format!("{t} * {m}")),
                };
                write_signed_term(f, first, c, body.as_deref())?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DeformElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeformationConfig {
    /// Largest `t`-degree a non-root-of-unity sum may reach.
    pub t_cap: u32,
}

impl Default for DeformationConfig {
    fn default() -> Self {
        DeformationConfig { t_cap: 8 }
    }
}

type PairKey = (SmashMonomial, SmashMonomial);

/// The UDF star product of one [`HopfAction`], caching monomial pairs.
pub struct Deformation<'a> {
    action: &'a HopfAction,
    cfg: DeformationConfig,
    inv_factorials: RwLock<Vec<Scalar>>,
    pairs: RwLock<HashMap<PairKey, DeformElement>>,
}

impl<'a> Deformation<'a> {
    pub fn new(action: &'a HopfAction, cfg: DeformationConfig) -> Self {
        Deformation { action, cfg, inv_factorials: RwLock::new(Vec::new()), pairs: RwLock::new(HashMap::new()) }
    }

    pub fn action(&self) -> &HopfAction {
        self.action
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        self.action.algebra()
    }

    pub fn config(&self) -> DeformationConfig {
        self.cfg
    }

    fn inv_factorial(&self, i: u32) -> Result<Scalar, DeformError> {
        if let Some(v) = self.inv_factorials.read().expect("lock").get(i as usize) {
            return Ok(v.clone());
        }
        let mut table = self.inv_factorials.write().expect("lock");
        while table.len() <= i as usize {
            let j = table.len() as u32;
            let f = quantum_factorial(j, self.action.q());
            table.push(f.inv().map_err(|_| DeformError::VanishingFactorial(j))?);
        }
        Ok(table[i as usize].clone())
    }

    /// `sum_i t^i / (i)_q! * D1^i(m1) D2^i(m2)` for basis monomials. For `q`
    /// of order `n >= 2` the sum stops at `i = n - 1`; otherwise it runs until
    /// a factor vanishes and fails past `t_cap`.
    pub fn udf_monomials(&self, m1: &SmashMonomial, m2: &SmashMonomial) -> Result<DeformElement, DeformError> {
        let key = (m1.clone(), m2.clone());
        if let Some(v) = self.pairs.read().expect("lock").get(&key) {
            return Ok(v.clone());
        }
        let a = self.algebra();
        let one = a.field().one();
        let mut x = SmashElement::from_monomial(m1.clone(), one.clone());
        let mut y = SmashElement::from_monomial(m2.clone(), one);
        let limit = self.action.nilpotency_order();
        let mut out = DeformElement::zero();
        let mut i = 0u32;
        loop {
            if x.is_zero() || y.is_zero() || limit.is_some_and(|n| i >= n) {
                break;
            }
            if limit.is_none() && i > self.cfg.t_cap {
                return Err(DeformError::Nontermination { t_cap: self.cfg.t_cap });
            }
            let term = a.mul(&x, &y).scale(&self.inv_factorial(i)?);
            out.add_component(i, &term);
            x = self.action.apply(Op::D1, &x);
            y = self.action.apply(Op::D2, &y);
            i += 1;
        }
        self.pairs.write().expect("lock").insert(key, out.clone());
        Ok(out)
    }

    pub fn udf_pair(&self, a: &SmashElement, b: &SmashElement) -> Result<DeformElement, DeformError> {
        let mut out = DeformElement::zero();
        for (m1, c1) in a.terms() {
            for (m2, c2) in b.terms() {
                let v = self.udf_monomials(m1, m2)?;
                out = out.add(&v.scale(&(c1 * c2)));
            }
        }
        Ok(out)
    }

    pub fn star_multiply(&self, a: &DeformElement, b: &DeformElement) -> Result<DeformElement, DeformError> {
        let mut out = DeformElement::zero();
        for (d1, x) in a.components() {
            for (d2, y) in b.components() {
                out = out.add(&self.udf_pair(x, y)?.shift(d1 + d2));
            }
        }
        Ok(out)
    }

    /// `w_i * w_j - q_ij (w_j * w_i)` (zero-based indices). Zero means the
    /// classical relation survives undeformed.
    pub fn deformed_relation(&self, i: usize, j: usize) -> Result<DeformElement, DeformError> {
        let a = self.algebra();
        let (wi, wj) = (a.w(i), a.w(j));
        let lhs = self.udf_pair(&wi, &wj)?;
        let rhs = self.udf_pair(&wj, &wi)?.scale(a.q(i, j));
        Ok(lhs.sub(&rhs))
    }

    /// All relations `w_i w_j - q_ij w_j w_i - tail_ij = 0`, `i < j`.
    pub fn presentation(&self) -> Result<Presentation, DeformError> {
        let a = self.algebra();
        let mut relations = Vec::new();
        for i in 0..a.k() {
            for j in i + 1..a.k() {
                relations.push(Relation { i, j, q: a.q(i, j).clone(), tail: self.deformed_relation(i, j)? });
            }
        }
        Ok(Presentation { k: a.k(), group_orders: a.group_orders().to_vec(), relations })
    }

    /// `mu_1(a, b) = D1(a) D2(b)`.
    pub fn mu1(&self, a: &SmashElement, b: &SmashElement) -> SmashElement {
        mu1(self.action, a, b)
    }

    /// `(a*b)*c = a*(b*c)` for every triple of basis monomials with
    /// `|alpha| <= degree_bound`.
    pub fn check_associativity(&self, degree_bound: u32) -> CheckReport {
        let mut r = CheckReport::new(format!("star associativity, |alpha| <= {degree_bound}"));
        let basis = self.algebra().basis_monomials(degree_bound);
        match self.associativity_witness(&basis) {
            Ok(w) => r.record("ASSOC", w),
            Err(e) => r.record_note("ASSOC", false, e.to_string()),
        }
        r
    }

    /// Sweeps all basis triples. Products are tabulated once over interned
    /// monomial ids so the inner loop only multiplies scalars and sorts ids.
    fn associativity_witness(&self, basis: &[SmashMonomial]) -> Result<Option<Witness>, DeformError> {
        let n = basis.len();
        let mut outputs = Interner::default();
        let mut mids = Interner::default();
        let mut ab: Vec<Vec<FlatTerms>> = Vec::with_capacity(n);
        for x in basis {
            let row = basis
                .iter()
                .map(|y| Ok(mids.flatten(&self.udf_monomials(x, y)?)))
                .collect::<Result<Vec<_>, DeformError>>()?;
            ab.push(row);
        }
        let mid_monomials = mids.items.clone();
        let products = |left: bool| -> Result<Vec<Vec<DeformElement>>, DeformError> {
            mid_monomials
                .par_iter()
                .map(|m| {
                    basis
                        .iter()
                        .map(|b| if left { self.udf_monomials(m, b) } else { self.udf_monomials(b, m) })
                        .collect()
                })
                .collect()
        };
        let flatten_all = |outputs: &mut Interner, t: Vec<Vec<DeformElement>>| -> Vec<Vec<FlatTerms>> {
            t.iter().map(|row| row.iter().map(|e| outputs.flatten(e)).collect()).collect()
        };
        let times_right = flatten_all(&mut outputs, products(true)?);
        let times_left = flatten_all(&mut outputs, products(false)?);

        let expand = |first: &FlatTerms, table: &[Vec<FlatTerms>], other: usize| -> Vec<(u64, Scalar)> {
            let mut terms = Vec::new();
            for (d1, mid, c1) in first {
                for (d2, out, c2) in &table[*mid as usize][other] {
                    terms.push(((((d1 + d2) as u64) << 32) | *out as u64, c1 * c2));
                }
            }
            canonical(terms)
        };
        let witness = (0..n * n * n).into_par_iter().find_map_first(|idx| {
            let (ia, ib, ic) = (idx / (n * n), (idx / n) % n, idx % n);
            let lhs = expand(&ab[ia][ib], &times_right, ic);
            let rhs = expand(&ab[ib][ic], &times_left, ia);
            (lhs != rhs).then(|| {
                Witness::new(
                    format!("({}) * ({}) * ({})", basis[ia], basis[ib], basis[ic]),
                    outputs.rebuild(&lhs),
                    outputs.rebuild(&rhs),
                )
            })
        });
        Ok(witness)
    }
}

/// `(t-degree, monomial id, coefficient)` triples.
type FlatTerms = Vec<(u32, u32, Scalar)>;

#[derive(Default)]
struct Interner {
    ids: HashMap<SmashMonomial, u32>,
    items: Vec<SmashMonomial>,
}

impl Interner {
    fn id(&mut self, m: &SmashMonomial) -> u32 {
        if let Some(&i) = self.ids.get(m) {
            return i;
        }
        let i = self.items.len() as u32;
        self.ids.insert(m.clone(), i);
        self.items.push(m.clone());
        i
    }

    fn flatten(&mut self, e: &DeformElement) -> FlatTerms {
        e.components()
            .flat_map(|(d, x)| x.terms().iter().map(move |(m, c)| (d, m, c)))
            .map(|(d, m, c)| (d, self.id(m), c.clone()))
            .collect()
    }

    fn rebuild(&self, terms: &[(u64, Scalar)]) -> DeformElement {
        let mut out = DeformElement::zero();
        for (key, c) in terms {
            let m = self.items[(key & 0xffff_ffff) as usize].clone();
            out.add_component((key >> 32) as u32, &SmashElement::from_monomial(m, c.clone()));
        }
        out
    }
}

/// Sorts by key, merges equal keys and drops zero coefficients.
fn canonical(mut terms: Vec<(u64, Scalar)>) -> Vec<(u64, Scalar)> {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(u64, Scalar)> = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc = &*lc + &c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// `mu_1(a, b) = D1(a) D2(b)`, the `t`-coefficient of the star product.
pub fn mu1(action: &HopfAction, a: &SmashElement, b: &SmashElement) -> SmashElement {
    action.algebra().mul(&action.apply_d1(a), &action.apply_d2(b))
}

/// One deformed relation `w_i w_j - q w_j w_i - tail = 0` in `T(V) # G [t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub i: usize,
    pub j: usize,
    pub q: Scalar,
    pub tail: DeformElement,
}

/// Words are printed with juxtaposed letters (`w1 w2`), distinct from the
/// reduced monomial syntax; the tail is in canonical form.
impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = self.q.field().one();
        write_signed_term(f, true, &one, Some(&format!("w{} w{}", self.i + 1, self.j + 1)))?;
        write_signed_term(f, false, &-&self.q, Some(&format!("w{} w{}", self.j + 1, self.i + 1)))?;
        let neg = DeformElement::zero().sub(&self.tail);
        if !neg.is_zero() {
            let s = neg.to_string();
            match s.strip_prefix('-') {
                Some(rest) => write!(f, " - {rest}")?,
                None => write!(f, " + {s}")?,
            }
        }
        write!(f, " = 0")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub k: usize,
    pub group_orders: Vec<u32>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn relation(&self, i: usize, j: usize) -> Option<&Relation> {
        self.relations.iter().find(|r| r.i == i && r.j == j)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.k).map(|i| format!("w{i}")).collect();
        let group: Vec<String> = self.group_orders.iter().map(|n| format!("Z{n}")).collect();
        writeln!(f, "generators: {}; group: {}", gens.join(", "), group.join(" x "))?;
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
