//! Condition suites for an [`HopfAction`]: the `H_q` relations, the
//! generator-level module-algebra conditions EQ1-EQ9, the special-shape
//! conditions EQU2-EQU9, and the skew-Leibniz (well-definedness) sweep.

use crate::report::{first_failure, CheckReport, Witness};
use crate::scalars::Scalar;
use crate::smash::{format_word, Letter, SmashElement, SmashMonomial};

use super::{HopfAction, Op};

fn unit(action: &HopfAction, m: &SmashMonomial) -> SmashElement {
    SmashElement::from_monomial(m.clone(), action.algebra().field().one())
}

fn compare(input: impl FnOnce() -> String, lhs: SmashElement, rhs: SmashElement) -> Option<Witness> {
    (lhs != rhs).then(|| Witness::new(input(), lhs, rhs))
}

/// The matrix of `sigma` on `V` if every `sigma(w_i)` is linear in the `w_j`.
fn sigma_matrix(action: &HopfAction) -> Result<Vec<Vec<Scalar>>, Witness> {
    let a = action.algebra();
    let k = a.k();
    let mut rows = Vec::with_capacity(k);
    for (i, img) in action.general().sigma_on_v.iter().enumerate() {
        let mut row = vec![a.field().zero(); k];
        for (m, c) in img.terms() {
            if m.degree() != 1 || !m.g.is_identity() {
                return Err(Witness::new(format!("sigma(w{}) not in V", i + 1), img, "element of V"));
            }
            let j = m.alpha.iter().position(|&e| e == 1).expect("degree one");
            row[j] = c.clone();
        }
        rows.push(row);
    }
    Ok(rows)
}

fn is_invertible(m: Vec<Vec<Scalar>>) -> bool {
    let n = m.len();
    crate::linalg::rank(m) == n
}

fn sigma_bijective(action: &HopfAction) -> Option<Witness> {
    let matrix = match sigma_matrix(action) {
        Ok(m) => m,
        Err(w) => return Some(w),
    };
    if !is_invertible(matrix) {
        return Some(Witness::new("sigma on V", "singular", "invertible"));
    }
    if let Some(j) = action.general().xi.iter().position(Scalar::is_zero) {
        return Some(Witness::new(format!("xi(generator {})", j + 1), "0", "nonzero"));
    }
    None
}

/// `D_l^n(x) = 0` for every `x` in `items` when `q` has order `n >= 2`.
fn nilpotent(action: &HopfAction, op: Op, items: &[SmashMonomial]) -> Option<Witness> {
    let n = action.nilpotency_order()?;
    first_failure(items, |m| {
        let v = action.apply_power(op, n, &unit(action, m));
        (!v.is_zero()).then(|| Witness::new(format!("{}^{n}({m})", op.name()), v, "0"))
    })
}

fn nilpotency_note(action: &HopfAction) -> Option<String> {
    match action.nilpotency_order() {
        Some(_) => None,
        None => Some("q is not a primitive root of unity of order >= 2; vacuous".into()),
    }
}

fn record_nilpotency(report: &mut CheckReport, label: &str, action: &HopfAction, items: &[SmashMonomial]) {
    let w = nilpotent(action, Op::D1, items).or_else(|| nilpotent(action, Op::D2, items));
    match (nilpotency_note(action), w) {
        (Some(note), _) => report.record_note(label, true, note),
        (None, w) => report.record(label, w),
    }
}

fn commute_d1_d2(action: &HopfAction, items: &[SmashMonomial]) -> Option<Witness> {
    first_failure(items, |m| {
        let x = unit(action, m);
        let lhs = action.apply_d1(&action.apply_d2(&x));
        let rhs = action.apply_d2(&action.apply_d1(&x));
        compare(|| format!("D1 D2 vs D2 D1 at {m}"), lhs, rhs)
    })
}

fn q_sigma_commutes(action: &HopfAction, op: Op, items: &[SmashMonomial]) -> Option<Witness> {
    first_failure(items, |m| {
        let x = unit(action, m);
        let lhs = action.apply_sigma(&action.apply(op, &x)).scale(action.q());
        let rhs = action.apply(op, &action.apply_sigma(&x));
        compare(|| m.to_string(), lhs, rhs)
    })
}

/// The relations of `H_q`: `sigma` bijective, `D1 D2 = D2 D1`,
/// `q sigma D_i = D_i sigma`, and `D_i^n = 0` for `q` of order `n`, on every
/// basis monomial with `|alpha| <= degree_bound`.
pub fn check_hq_relations(action: &HopfAction, degree_bound: u32) -> CheckReport {
    let basis = action.algebra().basis_monomials(degree_bound);
    let mut r = CheckReport::new(format!("H_q relations, |alpha| <= {degree_bound}"));
    r.record("SIGMA_BIJECTIVE", sigma_bijective(action));
    r.record("D1D2_COMMUTE", commute_d1_d2(action, &basis));
    r.record("QSIGMA_D1", q_sigma_commutes(action, Op::D1, &basis));
    r.record("QSIGMA_D2", q_sigma_commutes(action, Op::D2, &basis));
    record_nilpotency(&mut r, "NILPOTENT", action, &basis);
    r
}

fn generator_monomials(action: &HopfAction) -> Vec<SmashMonomial> {
    let a = action.algebra();
    (0..a.k()).map(|i| a.w(i).terms()[0].0.clone()).collect()
}

fn group_monomials(action: &HopfAction) -> Vec<SmashMonomial> {
    let a = action.algebra();
    a.group_elements().into_iter().map(|g| SmashMonomial { alpha: a.one_monomial().alpha, g }).collect()
}

fn eq1(action: &HopfAction) -> Option<Witness> {
    let a = action.algebra();
    let gs = a.group_elements();
    for i in 0..a.k() {
        for g in &gs {
            let lhs = action.apply_sigma(&a.group_act(g, &a.w(i)));
            let rhs = a.group_act(g, &action.general().sigma_on_v[i]);
            if lhs != rhs {
                return Some(Witness::new(format!("sigma({g}(w{})) vs {g}(sigma(w{}))", i + 1, i + 1), lhs, rhs));
            }
        }
    }
    sigma_bijective(action)
}

fn ops_d() -> [Op; 2] {
    [Op::D1, Op::D2]
}

fn eq5(action: &HopfAction) -> Option<Witness> {
    let a = action.algebra();
    for op in ops_d() {
        for g in a.group_elements() {
            let x = a.group_as_element(&g);
            let d = action.apply(op, &x);
            let lhs = action.apply_sigma(&d).scale(action.q());
            let rhs = d.scale(&action.xi(&g));
            if lhs != rhs {
                return Some(Witness::new(format!("q sigma {}({g}) vs xi {}({g})", op.name(), op.name()), lhs, rhs));
            }
        }
    }
    None
}

fn eq7(action: &HopfAction) -> Option<Witness> {
    let a = action.algebra();
    for op in ops_d() {
        for i in 0..a.k() {
            for j in 0..a.k() {
                let lhs = action.word_image(op, &[Letter::W(i), Letter::W(j)]);
                let rhs = action.word_image(op, &[Letter::W(j), Letter::W(i)]).scale(a.q(i, j));
                if lhs != rhs {
                    return Some(Witness::new(format!("{}(w{} w{})", op.name(), i + 1, j + 1), lhs, rhs));
                }
            }
        }
    }
    None
}

fn eq8(action: &HopfAction) -> Option<Witness> {
    let a = action.algebra();
    for i in 0..a.k() {
        for j in 0..a.k() {
            let lhs = action.word_image(Op::Sigma, &[Letter::W(i), Letter::W(j)]);
            let rhs = action.word_image(Op::Sigma, &[Letter::W(j), Letter::W(i)]).scale(a.q(i, j));
            if lhs != rhs {
                return Some(Witness::new(format!("sigma(w{} w{})", i + 1, j + 1), lhs, rhs));
            }
        }
    }
    None
}

fn eq9(action: &HopfAction) -> Option<Witness> {
    let a = action.algebra();
    for op in ops_d() {
        for g in a.group_elements() {
            for i in 0..a.k() {
                let lhs = action.word_image(op, &[Letter::W(i), Letter::G(g.clone())]).scale(&a.chi(i, &g));
                let rhs = action.word_image(op, &[Letter::G(g.clone()), Letter::W(i)]);
                if lhs != rhs {
                    return Some(Witness::new(format!("{}({g}(w{}) {g})", op.name(), i + 1), lhs, rhs));
                }
            }
        }
    }
    None
}

/// `n_j` copies of generator `j` act like the identity, and generators commute.
fn group_relations(action: &HopfAction) -> Option<Witness> {
    let a = action.algebra();
    let m = a.m();
    for op in [Op::Sigma, Op::D1, Op::D2] {
        let unit_image = match op {
            Op::Sigma => a.one(),
            _ => SmashElement::zero(),
        };
        for j in 0..m {
            let word = vec![Letter::G(a.generator(j)); a.group_orders()[j] as usize];
            let v = action.word_image(op, &word);
            if v != unit_image {
                return Some(Witness::new(format!("{} on {}", op.name(), format_word(&word)), v, unit_image));
            }
            for l in j + 1..m {
                let w1 = [Letter::G(a.generator(j)), Letter::G(a.generator(l))];
                let w2 = [Letter::G(a.generator(l)), Letter::G(a.generator(j))];
                let (x, y) = (action.word_image(op, &w1), action.word_image(op, &w2));
                if x != y {
                    return Some(Witness::new(
                        format!("{} on {} vs {}", op.name(), format_word(&w1), format_word(&w2)),
                        x,
                        y,
                    ));
                }
            }
        }
    }
    None
}

/// EQ1-EQ9 on generators, plus `GRP` (the extension to `kG` respects the
/// group's relations). EQ2 and EQ6 are also swept over basis monomials with
/// `|alpha| <= degree_bound`.
pub fn check_module_algebra_general(action: &HopfAction, degree_bound: u32) -> CheckReport {
    let a = action.algebra();
    let gens = generator_monomials(action);
    let groups = group_monomials(action);
    let basis = a.basis_monomials(degree_bound);
    let mut r = CheckReport::new("module-algebra conditions EQ1-EQ9");
    r.record("EQ1", eq1(action));
    r.record("EQ2", commute_d1_d2(action, &gens).or_else(|| commute_d1_d2(action, &basis)));
    r.record("EQ3", commute_d1_d2(action, &groups));
    r.record("EQ4", q_sigma_commutes(action, Op::D1, &gens).or_else(|| q_sigma_commutes(action, Op::D2, &gens)));
    r.record("EQ5", eq5(action));
    let mut nil_items = gens.clone();
    nil_items.extend(groups.iter().cloned());
    nil_items.extend(basis.iter().cloned());
    record_nilpotency(&mut r, "EQ6", action, &nil_items);
    r.record("EQ7", eq7(action));
    r.record("EQ8", eq8(action));
    r.record("EQ9", eq9(action));
    r.record("GRP", group_relations(action));
    r
}

fn scalar_witness(input: String, lhs: &Scalar, rhs: &Scalar) -> Option<Witness> {
    (lhs != rhs).then(|| Witness::new(input, lhs, rhs))
}

/// EQU2-EQU9 for an action of the special shape, plus `QP` (the declared
/// `q_{P_i,w_j}` really satisfy `P_i w_j = q_{P_i,w_j} w_j P_i`). Returns
/// `None` for an action given only by general generator images.
pub fn check_special_conditions(action: &HopfAction, degree_bound: u32) -> Option<CheckReport> {
    let s = action.special()?;
    let a = action.algebra();
    let k = a.k();
    let gs = a.group_elements();
    let ps = [&s.p1, &s.p2];
    let g_i = [&s.g1, &s.g2];
    let mut r = CheckReport::new("special-shape conditions EQU2-EQU9");

    let qp = (|| {
        for (i, p) in ps.iter().enumerate() {
            for j in (0..k).filter(|&j| j != i) {
                let lhs = a.mul(p, &a.w(j));
                let rhs = a.mul(&a.w(j), p).scale(&s.q_p[i][j]);
                if lhs != rhs {
                    return Some(Witness::new(format!("P{} w{}", i + 1, j + 1), lhs, rhs));
                }
            }
        }
        None
    })();
    r.record("QP", qp);

    // EQU2 / EQU3: q_{P_1,w_i} = q_1i lambda_i^{-1} chi_i(g_1^{-1}),
    //              q_{P_2,w_i} = q_2i lambda_i chi_i(g_2^{-1}).
    for (idx, label) in [(0usize, "EQU2"), (1, "EQU3")] {
        let ginv = a.group_inv(g_i[idx]);
        let w = (0..k).filter(|&i| i != idx).find_map(|i| {
            let lam = if idx == 0 { s.lambda[i].inv().expect("lambda nonzero") } else { s.lambda[i].clone() };
            let rhs = &(a.q(idx, i) * &lam) * &a.chi(i, &ginv);
            scalar_witness(format!("q_(P{},w{})", idx + 1, i + 1), &s.q_p[idx][i], &rhs)
        });
        r.record(label, w);
    }

    let central = g_i.iter().find_map(|g| {
        gs.iter().find_map(|h| {
            let (x, y) = (a.group_mul(g, h), a.group_mul(h, g));
            (x != y).then(|| Witness::new(format!("{g} {h}"), x, y))
        })
    });
    r.record("EQU4", central);

    // EQU5: g(P_1) = chi_1(g) xi(g) P_1;  EQU6: g(P_2) = chi_2(g) xi(g^{-1}) P_2.
    let equ5 = gs.iter().find_map(|g| {
        let c = &a.chi(0, g) * &action.xi(g);
        compare(|| format!("{g}(P1)"), a.group_act(g, &s.p1), s.p1.scale(&c))
    });
    r.record("EQU5", equ5);
    let equ6 = gs.iter().find_map(|g| {
        let chi2 = if k > 1 { a.chi(1, g) } else { a.field().one() };
        let c = &chi2 * &action.xi(&a.group_inv(g));
        compare(|| format!("{g}(P2)"), a.group_act(g, &s.p2), s.p2.scale(&c))
    });
    r.record("EQU6", equ6);

    let equ7 = compare(|| "D2(P1)".into(), action.apply_d2(&s.p1), SmashElement::zero())
        .or_else(|| compare(|| "D1(P2)".into(), action.apply_d1(&s.p2), SmashElement::zero()));
    r.record("EQU7", equ7);

    // EQU8: sigma(P_i) = q^{-1} lambda_i xi(g_i^{-1}) P_i.
    let qinv = action.q().inv().expect("q nonzero");
    let equ8 = (0..2).find_map(|i| {
        if i >= k {
            return None;
        }
        let c = &(&qinv * &s.lambda[i]) * &action.xi(&a.group_inv(g_i[i]));
        compare(|| format!("sigma(P{})", i + 1), action.apply_sigma(ps[i]), ps[i].scale(&c))
    });
    r.record("EQU8", equ8);

    let mut nil_items = generator_monomials(action);
    nil_items.extend(a.basis_monomials(degree_bound));
    record_nilpotency(&mut r, "EQU9", action, &nil_items);
    Some(r)
}

/// Order-independence of the extension: for all monomial pairs with
/// `|alpha| <= degree_bound`, the folded images of `ab` agree with the
/// skew-Leibniz expansions in `a` and `b`.
pub fn check_skew_leibniz(action: &HopfAction, degree_bound: u32) -> CheckReport {
    let a = action.algebra();
    let basis = a.basis_monomials(degree_bound);
    let pairs: Vec<(&SmashMonomial, &SmashMonomial)> =
        basis.iter().flat_map(|x| basis.iter().map(move |y| (x, y))).collect();
    let mut r = CheckReport::new(format!("skew-Leibniz rules, |alpha| <= {degree_bound}"));
    for op in [Op::Sigma, Op::D1, Op::D2] {
        let w = first_failure(&pairs, |(x, y)| {
            let (ex, ey) = (unit(action, x), unit(action, y));
            let (c, m) = a.monomial_mul(x, y);
            let lhs = action.monomial_image(op, &m).scale(&c);
            let rhs = match op {
                Op::Sigma => a.mul(&action.apply_sigma(&ex), &action.apply_sigma(&ey)),
                Op::D1 => {
                    a.mul(&action.apply_d1(&ex), &action.apply_sigma(&ey)).add(&a.mul(&ex, &action.apply_d1(&ey)))
                }
                Op::D2 => {
                    a.mul(&action.apply_d2(&ex), &ey).add(&a.mul(&action.apply_sigma(&ex), &action.apply_d2(&ey)))
                }
            };
            compare(|| format!("{}({x} * {y})", op.name()), lhs, rhs)
        });
        r.record(format!("LEIBNIZ_{}", op.name().to_uppercase()), w);
    }
    r
}

/// Agreement of the folded extension with the family's closed forms on all
/// basis monomials with `|alpha| <= degree_bound`.
pub fn check_closed_form(action: &HopfAction, family: &super::Family, degree_bound: u32) -> CheckReport {
    let basis = action.algebra().basis_monomials(degree_bound);
    let mut r = CheckReport::new(format!("closed forms for {family}, |alpha| <= {degree_bound}"));
    let w = first_failure(&basis, |m| match super::closed_form_oracle(family, m) {
        Err(e) => Some(Witness::new(m.to_string(), e, "closed form")),
        Ok(expected) => [Op::Sigma, Op::D1, Op::D2]
            .into_iter()
            .zip(expected)
            .find_map(|(op, want)| compare(|| format!("{}({m})", op.name()), action.monomial_image(op, m), want)),
    });
    r.record("CLOSED_FORM", w);
    r
}
