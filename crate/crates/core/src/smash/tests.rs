use super::*;

/// `k = 3`, `G = Z_n x Z_n`, `q12 = q13 = q`, `q23 = 1`,
/// `chi_1 = (q,1)`, `chi_2 = (1,q)`, `chi_3 = (q,q)`.
pub(crate) fn motivational(n: u32) -> AlgebraSpec {
    let f = FieldSpec::new(n).unwrap();
    let q = f.zeta_pow(1);
    let qi = f.zeta_pow(-1);
    let one = f.one();
    let qm = vec![
        vec![one.clone(), q.clone(), q.clone()],
        vec![qi.clone(), one.clone(), one.clone()],
        vec![qi.clone(), one.clone(), one.clone()],
    ];
    let chars = vec![vec![q.clone(), one.clone()], vec![one.clone(), q.clone()], vec![q.clone(), q.clone()]];
    AlgebraSpec::new(f, qm, vec![n, n], chars).unwrap()
}

fn mono(spec: &AlgebraSpec, alpha: &[u32], g: &[i64]) -> SmashMonomial {
    SmashMonomial::new(alpha, spec.group_element(g).unwrap())
}

#[test]
fn identity_monomial_is_neutral() {
    let s = motivational(2);
    let m = mono(&s, &[1, 0, 2], &[1, 1]);
    let (c, p) = s.monomial_mul(&s.one_monomial(), &m);
    assert!(c.is_one());
    assert_eq!(p, m);
}

#[test]
fn reordering_picks_up_q_inverse() {
    let s = motivational(2);
    let (c, p) = s.monomial_mul(&mono(&s, &[0, 1, 0], &[0, 1]), &mono(&s, &[1, 0, 0], &[0, 0]));
    assert_eq!(c, s.field().integer(-1));
    assert_eq!(p, mono(&s, &[1, 1, 0], &[0, 1]));
    assert_eq!(s.mul(&s.w(1), &s.w(0)).to_string(), "-w1*w2");
    assert_eq!(s.mul(&s.w(0), &s.w(1)).to_string(), "w1*w2");
}

#[test]
fn group_letter_acts_on_w3() {
    for n in [2, 3] {
        let s = motivational(n);
        // sigma_2 * (w3 sigma_1 sigma_2^{-1}) = q w3 sigma_1
        let (c, p) = s.monomial_mul(&mono(&s, &[0, 0, 0], &[0, 1]), &mono(&s, &[0, 0, 1], &[1, -1]));
        assert_eq!(c, s.field().zeta_pow(1));
        assert_eq!(p, mono(&s, &[0, 0, 1], &[1, 0]));
    }
}

#[test]
fn group_action_examples() {
    let s = motivational(3);
    let q = s.field().zeta_pow(1);
    assert_eq!(s.group_act(&s.generator(0), &s.one()), s.one());
    assert_eq!(s.group_act(&s.generator(0), &s.w(0)), s.w(0).scale(&q));
    assert_eq!(s.group_act(&s.generator(1), &s.w(2)), s.w(2).scale(&q));
    assert_eq!(s.group_act(&s.generator(0), &s.w(1)), s.w(1));
}

#[test]
fn oracle_examples() {
    let s = motivational(2);
    assert_eq!(s.free_reduce_oracle(&[Letter::W(0)]), s.w(0));
    assert_eq!(s.free_reduce_oracle(&[Letter::W(1), Letter::W(0)]).to_string(), "-w1*w2");
    let s3 = motivational(3);
    let g = s3.generator(0);
    let got = s3.free_reduce_oracle(&[Letter::G(g.clone()), Letter::W(0)]);
    let want = s3.mul(&s3.w(0), &s3.group_as_element(&g)).scale(&s3.field().zeta_pow(1));
    assert_eq!(got, want);
    assert_eq!(got.to_string(), "z * w1 * g[(1,0)]");
}

#[test]
fn defining_relations_hold() {
    for n in [2, 3, 4] {
        let s = motivational(n);
        for i in 0..3 {
            for j in 0..3 {
                let lhs = s.mul(&s.w(i), &s.w(j));
                let rhs = s.mul(&s.w(j), &s.w(i)).scale(s.q(i, j));
                assert_eq!(lhs, rhs, "w{} w{}", i + 1, j + 1);
            }
            for g in s.group_elements() {
                let ge = s.group_as_element(&g);
                let lhs = s.mul(&ge, &s.w(i));
                let rhs = s.mul(&s.w(i), &ge).scale(&s.chi(i, &g));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn fast_path_matches_generic_path() {
    for n in [2, 3, 6] {
        let s = motivational(n);
        assert!(s.has_fast_path());
        let slow = s.without_fast_path();
        let basis = s.basis_monomials(2);
        for a in &basis {
            for b in &basis {
                assert_eq!(s.monomial_mul(a, b), slow.monomial_mul(a, b));
            }
        }
    }
}

#[test]
fn non_root_entries_disable_fast_path() {
    let f = FieldSpec::new(2).unwrap();
    let two = f.integer(2);
    let half = two.inv().unwrap();
    let one = f.one();
    let s = AlgebraSpec::new(
        f,
        vec![vec![one.clone(), two.clone()], vec![half, one.clone()]],
        vec![2],
        vec![vec![f.integer(-1)], vec![one.clone()]],
    )
    .unwrap();
    assert!(!s.has_fast_path());
    let p = s.mul(&s.w(1), &s.w(0));
    assert_eq!(p.to_string(), "1/2 * w1*w2");
}

#[test]
fn associativity_and_oracle_sweep() {
    for n in [2, 3] {
        let s = motivational(n);
        let basis = s.basis_monomials(if n == 2 { 3 } else { 2 });
        for a in &basis {
            for b in &basis {
                let ab = s.mul(
                    &SmashElement::from_monomial(a.clone(), s.field().one()),
                    &SmashElement::from_monomial(b.clone(), s.field().one()),
                );
                let mut word = a.letters();
                word.extend(b.letters());
                assert_eq!(ab, s.free_reduce_oracle(&word), "{a} * {b}");
            }
        }
        let small = s.basis_monomials(1);
        for a in &small {
            for b in &small {
                for c in &small {
                    let (c1, m1) = s.monomial_mul(a, b);
                    let (c2, m2) = s.monomial_mul(&m1, c);
                    let (c3, m3) = s.monomial_mul(b, c);
                    let (c4, m4) = s.monomial_mul(a, &m3);
                    assert_eq!(m2, m4);
                    assert_eq!(&c1 * &c2, &c3 * &c4);
                }
            }
        }
    }
}

#[test]
fn validation_rejects_bad_data() {
    let f = FieldSpec::new(3).unwrap();
    let z = f.zeta_pow(1);
    let one = f.one();
    let bad_pair = AlgebraSpec::new(
        f,
        vec![vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]],
        vec![3],
        vec![vec![one.clone()], vec![one.clone()]],
    );
    assert!(matches!(bad_pair, Err(AlgebraError::NotInversePair { .. })));
    let bad_char = AlgebraSpec::new(f, vec![vec![one.clone()]], vec![2], vec![vec![z.clone()]]);
    assert!(matches!(bad_char, Err(AlgebraError::CharacterOrder { .. })));
    let bad_diag = AlgebraSpec::new(f, vec![vec![z]], vec![3], vec![vec![one]]);
    assert!(matches!(bad_diag, Err(AlgebraError::DiagonalNotOne { .. })));
}

#[test]
fn parse_and_print_round_trip() {
    let s = motivational(2);
    let e = s.parse_element("w2*w1 + 1/2*w3*g[(1,1)] - 3").unwrap();
    assert_eq!(e.to_string(), "-3 + 1/2 * w3 * g[(1,1)] - w1*w2");
    assert_eq!(s.parse_element(&e.to_string()).unwrap(), e);
    assert!(matches!(s.parse_element("w4"), Err(AlgebraError::VariableOutOfRange(_))));
    assert!(matches!(s.parse_element("w1/w2"), Err(AlgebraError::NonScalarDivision)));
}
