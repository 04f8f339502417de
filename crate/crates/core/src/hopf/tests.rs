use super::checks::*;
use super::*;
use crate::scalars::FieldSpec;

fn motivational(n: u32) -> (Family, HopfAction) {
    let f = Family::Motivational { n };
    let a = f.action().unwrap();
    (f, a)
}

fn el(action: &HopfAction, s: &str) -> SmashElement {
    action.algebra().parse_element(s).unwrap()
}

#[test]
fn generator_values() {
    let (_, act) = motivational(2);
    assert_eq!(act.apply_d1(&el(&act, "w1")), el(&act, "g[(0,1)]"));
    assert_eq!(act.apply_d2(&el(&act, "w2")), el(&act, "w3*g[(1,1)]"));
    assert!(act.apply_d1(&act.algebra().one()).is_zero());
    assert!(act.apply_d2(&act.algebra().one()).is_zero());
    assert_eq!(act.apply_sigma(&act.algebra().one()), act.algebra().one());
    assert!(act.apply_d1(&el(&act, "w1^2")).is_zero());
}

#[test]
fn sigma_on_group_elements() {
    let (_, act) = motivational(3);
    let s1 = el(&act, "g[(1,0)]");
    assert_eq!(act.apply_sigma(&s1), s1.scale(&act.q().inv().unwrap()));
}

#[test]
fn family_names_round_trip() {
    for name in ["motivational-q2", "motivational-q3", "general-k4-n2-a1-b1", "general-k5-n3-a1_0_2-b0_1_0"] {
        let f = Family::from_name(name).unwrap();
        let printed = f.to_string();
        let expect = if name == "general-k4-n2-a1-b1" { "general-k4-n2-a1_0-b1_0" } else { name };
        assert_eq!(printed, expect);
        assert_eq!(Family::from_name(&printed), Some(f));
    }
    assert_eq!(Family::from_name("motivational-q1"), None);
    assert_eq!(Family::from_name("general-k2-n2-a-b"), None);
}

#[test]
fn general_family_d2_of_w2() {
    let f = Family::from_name("general-k4-n2-a1-b1").unwrap();
    let act = f.action().unwrap();
    assert_eq!(act.apply_d2(&el(&act, "w2")).to_string(), "w3^3 * g[(1,1)]");
    let m = act.algebra().w(0).terms()[0].0.clone();
    let [_, d1, _] = closed_form_oracle(&f, &m).unwrap();
    assert_eq!(d1.to_string(), "w3^2 * g[(0,1)]");
}

#[test]
fn closed_form_examples() {
    let (f, act) = motivational(3);
    let a = act.algebra();
    let q = act.q().clone();
    for g in a.group_elements() {
        let m = SmashMonomial::new(&[1, 0, 0], g.clone());
        let [_, d1, _] = closed_form_oracle(&f, &m).unwrap();
        let want = a.group_as_element(&a.group_mul(&a.generator(1), &g)).scale(&a.chi(0, &a.group_inv(&g)));
        assert_eq!(d1, want);
        let m0 = SmashMonomial::new(&[0, 2, 1], g);
        assert!(closed_form_oracle(&f, &m0).unwrap()[1].is_zero());
    }
    let bad = SmashMonomial::new(&[1, 0], a.identity());
    assert!(closed_form_oracle(&f, &bad).is_err());
    let _ = q;
}

#[test]
fn fold_matches_closed_forms() {
    for name in ["motivational-q2", "motivational-q3", "general-k4-n2-a1-b1", "general-k4-n3-a0_1-b1_0"] {
        let f = Family::from_name(name).unwrap();
        let act = f.action().unwrap();
        let r = check_closed_form(&act, &f, 3);
        assert!(r.passed(), "{name}\n{r}");
    }
}

#[test]
fn presets_satisfy_every_suite() {
    for name in ["motivational-q2", "motivational-q3", "general-k4-n2-a1-b1"] {
        let act = Family::from_name(name).unwrap().action().unwrap();
        let hq = check_hq_relations(&act, 3);
        assert!(hq.passed(), "{name}\n{hq}");
        let gen = check_module_algebra_general(&act, 2);
        assert!(gen.passed(), "{name}\n{gen}");
        let sp = check_special_conditions(&act, 2).unwrap();
        assert!(sp.passed(), "{name}\n{sp}");
        let lz = check_skew_leibniz(&act, 2);
        assert!(lz.passed(), "{name}\n{lz}");
    }
}

fn rebuild(f: &Family, tweak: impl FnOnce(&mut SpecialActionSpec)) -> HopfAction {
    let alg = f.algebra().unwrap();
    let mut s = f.special_spec(&alg);
    tweak(&mut s);
    HopfAction::new_special(alg, f.q(), s).unwrap()
}

#[test]
fn tampered_q_p2_fails_equ3() {
    let f = Family::Motivational { n: 2 };
    let act = rebuild(&f, |s| s.q_p[1][0] = f.field().one());
    let r = check_special_conditions(&act, 2).unwrap();
    assert_eq!(r.status("EQU3"), Some(false));
    assert_eq!(r.status("QP"), Some(false));
    assert_eq!(r.status("EQU2"), Some(true));
}

#[test]
fn trivial_xi_fails_equ5() {
    let f = Family::Motivational { n: 3 };
    let act = rebuild(&f, |s| s.xi = vec![f.field().one(); 2]);
    let r = check_special_conditions(&act, 2).unwrap();
    assert_eq!(r.status("EQU5"), Some(false), "{r}");
    let g = check_module_algebra_general(&act, 2);
    assert_eq!(g.status("EQ9"), Some(false), "{g}");
}

#[test]
fn broken_lambda_fails_equ8() {
    let f = Family::Motivational { n: 2 };
    let act = rebuild(&f, |s| s.lambda[0] = f.field().one());
    let r = check_special_conditions(&act, 2).unwrap();
    assert_eq!(r.status("EQU8"), Some(false), "{r}");
}

#[test]
fn non_diagonal_sigma_fails_eq1() {
    let f = Family::Motivational { n: 2 };
    let alg = f.algebra().unwrap();
    let mut g = f.special_spec(&alg).to_general(&alg);
    g.sigma_on_v[2] = alg.w(1);
    let act = HopfAction::new_general(alg, f.q(), g).unwrap();
    let r = check_module_algebra_general(&act, 2);
    let e = r.entry("EQ1").unwrap();
    assert!(!e.passed);
    assert!(e.witness.as_ref().unwrap().input.starts_with("sigma(g[(1,0)](w3))"), "{r}");
}

#[test]
fn tampered_d2_keeps_q_sigma_relation_but_breaks_eq9() {
    let f = Family::Motivational { n: 2 };
    let alg = f.algebra().unwrap();
    let mut g = f.special_spec(&alg).to_general(&alg);
    g.d2_on_w[1] = alg.parse_element("w2*g[(1,1)]").unwrap();
    let act = HopfAction::new_general(alg, f.q(), g).unwrap();
    let hq = check_hq_relations(&act, 3);
    assert_eq!(hq.status("QSIGMA_D2"), Some(true), "{hq}");
    let gen = check_module_algebra_general(&act, 2);
    assert_eq!(gen.status("EQ9"), Some(false), "{gen}");
}

#[test]
fn zero_derivations_pass() {
    let f = FieldSpec::new(1).unwrap();
    let one = f.one();
    let alg = AlgebraSpec::new(f, vec![vec![one.clone(); 2]; 2], vec![2], vec![vec![one.clone()]; 2]).unwrap();
    let z = vec![SmashElement::zero(); 2];
    let g = GeneralActionSpec {
        sigma_on_v: vec![alg.w(0), alg.w(1)],
        xi: vec![one.clone()],
        d1_on_w: z.clone(),
        d1_on_g: vec![SmashElement::zero()],
        d2_on_w: z,
        d2_on_g: vec![SmashElement::zero()],
    };
    let act = HopfAction::new_general(alg, one, g).unwrap();
    assert!(check_hq_relations(&act, 3).passed());
    assert!(check_module_algebra_general(&act, 3).passed());
}

#[test]
fn zero_p_passes_vacuously() {
    let f = Family::Motivational { n: 2 };
    let act = rebuild(&f, |s| {
        s.p1 = SmashElement::zero();
        s.p2 = SmashElement::zero();
    });
    let r = check_special_conditions(&act, 2).unwrap();
    for l in ["QP", "EQU5", "EQU6", "EQU7", "EQU8"] {
        assert_eq!(r.status(l), Some(true), "{l}");
    }
}

#[test]
fn xi_must_be_a_character() {
    let f = Family::Motivational { n: 2 };
    let alg = f.algebra().unwrap();
    let mut s = f.special_spec(&alg);
    s.xi[0] = f.field().integer(2);
    assert!(matches!(HopfAction::new_special(alg, f.q(), s), Err(ActionError::XiNotCharacter { .. })));
}

#[test]
fn word_image_agrees_with_monomial_image_on_sorted_words() {
    let (_, act) = motivational(3);
    for m in act.algebra().basis_monomials(2) {
        let mut word = Vec::new();
        for (i, &e) in m.alpha.iter().enumerate() {
            word.extend(std::iter::repeat_n(Letter::W(i), e as usize));
        }
        if !m.g.is_identity() {
            word.push(Letter::G(m.g.clone()));
        }
        for op in [Op::Sigma, Op::D1, Op::D2] {
            assert_eq!(act.word_image(op, &word), act.monomial_image(op, &m));
        }
    }
}
