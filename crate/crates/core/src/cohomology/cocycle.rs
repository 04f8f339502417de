//! Hochschild 2-cocycle identity `a mu(b,c) + mu(a,bc) = mu(ab,c) + mu(a,b) c`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::deformation::mu1;
use crate::hopf::HopfAction;
use crate::report::{CheckReport, Witness};
use crate::scalars::Scalar;
use crate::smash::{AlgebraSpec, SmashElement, SmashMonomial};

/// `mu_1` on basis monomials.
pub fn cocycle_check_mu1(action: &HopfAction, degree_bound: u32) -> CheckReport {
    let one = action.algebra().field().one();
    cocycle_check(action.algebra(), degree_bound, |a, b| {
        mu1(
            action,
            &SmashElement::from_monomial(a.clone(), one.clone()),
            &SmashElement::from_monomial(b.clone(), one.clone()),
        )
    })
}

/// Checks the cocycle identity for a bilinear `mu` (given on basis monomials)
/// over every triple of basis monomials with `|alpha| <= degree_bound`.
pub fn cocycle_check<F>(algebra: &AlgebraSpec, degree_bound: u32, mu: F) -> CheckReport
where
    F: Fn(&SmashMonomial, &SmashMonomial) -> SmashElement + Sync,
{
    let mut r = CheckReport::new(format!("2-cocycle identity, |alpha| <= {degree_bound}"));
    let basis = algebra.basis_monomials(degree_bound);
    r.record("COCYCLE", cocycle_witness(algebra, &basis, &mu));
    r
}

type Flat = Vec<(u32, Scalar)>;

#[derive(Default)]
struct Ids {
    map: HashMap<SmashMonomial, u32>,
    items: Vec<SmashMonomial>,
}

impl Ids {
    fn id(&mut self, m: &SmashMonomial) -> u32 {
        if let Some(&i) = self.map.get(m) {
            return i;
        }
        let i = self.items.len() as u32;
        self.map.insert(m.clone(), i);
        self.items.push(m.clone());
        i
    }

    fn flatten(&mut self, e: &SmashElement) -> Flat {
        e.terms().iter().map(|(m, c)| (self.id(m), c.clone())).collect()
    }

    fn rebuild(&self, terms: &[(u32, Scalar)]) -> SmashElement {
        SmashElement::from_terms(terms.iter().map(|(i, c)| (self.items[*i as usize].clone(), c.clone())).collect())
    }
}

fn canonical(mut terms: Flat) -> Flat {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Flat = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc = &*lc + &c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Every product and every `mu` value is tabulated over interned ids first;
/// the per-triple work is then scalar multiplication and sorting.
fn cocycle_witness<F>(algebra: &AlgebraSpec, basis: &[SmashMonomial], mu: &F) -> Option<Witness>
where
    F: Fn(&SmashMonomial, &SmashMonomial) -> SmashElement + Sync,
{
    let n = basis.len();
    let mut prods = Ids::default();
    let prod: Vec<Vec<(Scalar, u32)>> = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let (c, m) = algebra.monomial_mul(a, b);
                    (c, prods.id(&m))
                })
                .collect()
        })
        .collect();

    let mut ids = Ids::default();
    let mu_rows = |lefts: &[SmashMonomial], rights: &[SmashMonomial]| -> Vec<Vec<SmashElement>> {
        lefts.par_iter().map(|a| rights.iter().map(|b| mu(a, b)).collect()).collect()
    };
    let flatten = |ids: &mut Ids, t: Vec<Vec<SmashElement>>| -> Vec<Vec<Flat>> {
        t.iter().map(|row| row.iter().map(|e| ids.flatten(e)).collect()).collect()
    };
    let mu_ab = flatten(&mut ids, mu_rows(basis, basis));
    let mu_a_p = flatten(&mut ids, mu_rows(basis, &prods.items));
    let mu_p_c = flatten(&mut ids, mu_rows(&prods.items, basis));

    let values = ids.items.clone();
    let times = |left: bool| -> Vec<Vec<(Scalar, SmashMonomial)>> {
        basis
            .par_iter()
            .map(|x| {
                values
                    .iter()
                    .map(|v| if left { algebra.monomial_mul(x, v) } else { algebra.monomial_mul(v, x) })
                    .collect()
            })
            .collect()
    };
    let intern = |ids: &mut Ids, t: Vec<Vec<(Scalar, SmashMonomial)>>| -> Vec<Vec<(Scalar, u32)>> {
        t.into_iter().map(|row| row.into_iter().map(|(c, m)| (c, ids.id(&m))).collect()).collect()
    };
    // left[a][v] = a * v and right[c][v] = v * c for every mu value v
    let left = intern(&mut ids, times(true));
    let right = intern(&mut ids, times(false));

    (0..n * n * n).into_par_iter().find_map_first(|idx| {
        let (ia, ib, ic) = (idx / (n * n), (idx / n) % n, idx % n);
        let mut lhs: Flat = mu_ab[ib][ic]
            .iter()
            .map(|(v, c)| {
                let (c2, out) = &left[ia][*v as usize];
                (*out, c * c2)
            })
            .collect();
        let (cbc, pbc) = &prod[ib][ic];
        lhs.extend(mu_a_p[ia][*pbc as usize].iter().map(|(v, c)| (*v, c * cbc)));
        let (cab, pab) = &prod[ia][ib];
        let mut rhs: Flat = mu_p_c[*pab as usize][ic].iter().map(|(v, c)| (*v, c * cab)).collect();
        rhs.extend(mu_ab[ia][ib].iter().map(|(v, c)| {
            let (c2, out) = &right[ic][*v as usize];
            (*out, c * c2)
        }));
        let (lhs, rhs) = (canonical(lhs), canonical(rhs));
        (lhs != rhs).then(|| {
            Witness::new(
                format!("a={} b={} c={}", basis[ia], basis[ib], basis[ic]),
                ids.rebuild(&lhs),
                ids.rebuild(&rhs),
            )
        })
    })
}
