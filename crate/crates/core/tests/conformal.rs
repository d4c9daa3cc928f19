use std::collections::BTreeSet;

use halg_core::conformal::*;
use halg_core::exactalg::{
    parse_formal, solve_linear, FormalPoly, FormalVar, LinearEquation, LinearSystem, Scalar,
};
use halg_core::random::Generator;
use halg_core::samples;
use halg_core::superalgebra::*;
use proptest::prelude::*;

fn fp(lit: &str) -> FormalPoly {
    parse_formal(lit, &["a".to_string()]).unwrap()
}

fn el(r: &ConformalAlgebra, terms: &[(&str, &str)]) -> ConformalElement {
    ConformalElement::from_terms(
        terms
            .iter()
            .map(|(g, p)| (r.generators.index_of(g).unwrap(), fp(p))),
    )
}

fn entry(r: &ConformalAlgebra, u: &str, v: &str) -> ConformalElement {
    r.lambda_bracket(&r.element(u).unwrap(), &r.element(v).unwrap())
}

fn scaled_alpha(r: ConformalAlgebra, images: &[(&str, &str)]) -> ConformalAlgebra {
    let table: Vec<_> = images
        .iter()
        .map(|(g, p)| (r.generators.index_of(g).unwrap(), el(&r, &[(g, p)])))
        .collect();
    r.with_alpha_table(table).unwrap()
}

#[test]
fn svir_lambda_brackets() {
    let r = samples::svir().unwrap();
    assert_eq!(entry(&r, "L", "L"), el(&r, &[("L", "D + 2*Lm")]));
    assert_eq!(entry(&r, "F", "G"), el(&r, &[("G", "1")]));
    assert_eq!(entry(&r, "G", "F"), el(&r, &[("G", "-1")]));
    let dl = el(&r, &[("L", "D")]);
    let l = r.element("L").unwrap();
    assert_eq!(
        r.lambda_bracket(&dl, &l),
        el(&r, &[("L", "-Lm*(D + 2*Lm)")])
    );
}

#[test]
fn svir_is_hom_lie_conformal_for_scalar_multiples_of_identity() {
    let r = samples::svir().unwrap().with_params(vec!["a".into()]);
    let r = scaled_alpha(r, &[("L", "a"), ("F", "a"), ("G", "a")]);
    let report = r.check_axioms();
    assert!(report.passed(), "{report}");
}

#[test]
fn svir_with_doubled_g_fails_on_l_f_g() {
    let r = scaled_alpha(
        samples::svir().unwrap(),
        &[("L", "1"), ("F", "1"), ("G", "2")],
    );
    let report = r.check_axioms();
    assert!(!report.has_axiom("conformal-skew-symmetry"));
    assert!(report
        .witnesses()
        .iter()
        .any(|w| w.axiom == "conformal-hom-jacobi" && w.args == ["L", "F", "G"]));
}

#[test]
fn zero_bracket_passes() {
    let basis = SuperBasis::new([("u", Parity::Even), ("v", Parity::Odd)]).unwrap();
    let r = ConformalAlgebra::new(basis);
    assert!(r.check_axioms().passed());
    let r = scaled_alpha(r, &[("u", "D^2 + 3"), ("v", "D")]);
    assert!(r.check_axioms().passed());
}

#[test]
fn exam32_quadratic_table() {
    let r = quadratic_from_gd(&samples::exam32_gd().unwrap()).unwrap();
    let want = [
        ("x1", "x1", vec![("x2", "D + 2*Lm")]),
        ("x1", "y", vec![("y", "Lm - 1")]),
        ("x1", "x2", vec![]),
        ("x2", "x2", vec![("x1", "D + 2*Lm")]),
        ("x2", "y", vec![("y", "Lm - 1")]),
        ("x2", "x1", vec![]),
        ("y", "x1", vec![("y", "D + Lm + 1")]),
        ("y", "x2", vec![("y", "D + Lm + 1")]),
        ("y", "y", vec![]),
    ];
    for (u, v, terms) in want {
        assert_eq!(entry(&r, u, v), el(&r, &terms), "[{u}_λ {v}]");
    }
    let report = r.check_axioms();
    assert!(report.passed(), "{report}");
}

#[test]
fn exam33_quadratic_algebra_passes_identically_in_lam() {
    let r = quadratic_from_gd(&samples::exam33_gd().unwrap()).unwrap();
    assert_eq!(r.params, vec!["lam".to_string()]);
    let report = r.check_axioms();
    assert!(report.passed(), "{report}");
}

#[test]
fn round_trip_through_quadratic_tables() {
    for g in [samples::exam32_gd().unwrap(), samples::exam33_gd().unwrap()] {
        let back = gd_from_quadratic(&quadratic_from_gd(&g).unwrap()).unwrap();
        assert_eq!(back.bracket_table(), g.bracket_table());
        assert_eq!(back.circ_table(), g.circ_table());
        assert_eq!(back.alpha_map(), g.alpha_map());
    }
    let r = samples::svir().unwrap();
    let again = quadratic_from_gd(&gd_from_quadratic(&r).unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn svir_inverts_to_l_circ_l_equals_l() {
    let g = gd_from_quadratic(&samples::svir().unwrap()).unwrap();
    let a = &g.algebra;
    let l = a.basis.index_of("L").unwrap();
    assert_eq!(
        g.circ_table().apply_basis(l, l),
        a.vector(&[("L", Scalar::one())]).unwrap()
    );
    assert!(g.bracket_table().apply_basis(l, l).is_zero());
}

#[test]
fn lambda_squared_is_not_quadratic() {
    let basis = SuperBasis::new([("a", Parity::Even)]).unwrap();
    let r = ConformalAlgebra::new(basis);
    let r = r
        .clone()
        .with_bracket(0, 0, el(&r, &[("a", "Lm^2")]))
        .unwrap();
    match gd_from_quadratic(&r) {
        Err(ConformalError::NotQuadratic { entry, .. }) => assert_eq!(entry, "[a_λ a]"),
        other => panic!("expected NotQuadratic, got {other:?}"),
    }
}

#[test]
fn malformed_entries_are_rejected() {
    let basis = SuperBasis::new([("a", Parity::Even), ("b", Parity::Odd)]).unwrap();
    let r = ConformalAlgebra::new(basis);
    let mu = el(&r, &[("a", "Mu")]);
    assert!(matches!(
        r.clone().with_bracket(0, 0, mu),
        Err(ConformalError::Variable { .. })
    ));
    let odd = el(&r, &[("b", "1")]);
    assert!(matches!(
        r.clone().with_bracket(0, 0, odd),
        Err(ConformalError::Parity { .. })
    ));
    let lam = el(&r, &[("a", "Lm")]);
    assert!(matches!(
        r.clone().with_alpha(0, lam),
        Err(ConformalError::Variable { .. })
    ));
    let mut t = r.clone().with_bracket(0, 0, el(&r, &[("a", "D")])).unwrap();
    assert!(matches!(
        t.set_torsion(0),
        Err(ConformalError::Torsion { .. })
    ));
}

#[test]
fn current_algebra_of_exam32() {
    let g = samples::exam32_gd().unwrap();
    let c = current_conformal(&g.algebra, "bracket", "alpha").unwrap();
    assert!(c.certificate.passed());
    let r = c.value;
    assert_eq!(entry(&r, "x1", "y"), el(&r, &[("y", "1")]));
    assert_eq!(r.max_d_degree(), 0);

    let abelian = g
        .algebra
        .clone()
        .with_product("bracket", ProductTable::default());
    let c = current_conformal(&abelian, "bracket", "alpha").unwrap();
    assert_eq!(c.value.bracket_entries().count(), 0);
    assert!(c.certificate.passed());

    let a = &g.algebra;
    let broken = a
        .table(&[("x1", "x1", vec![("x2", Scalar::one())])])
        .unwrap();
    let broken = a.clone().with_product("bracket", broken);
    assert!(matches!(
        current_conformal(&broken, "bracket", "alpha"),
        Err(ConformalError::PreconditionFailed { .. })
    ));
}

fn in_span(kernel: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let mut sys = LinearSystem::new((0..kernel.len()).map(|i| format!("t{i}")).collect());
    for (row, target) in v.iter().enumerate() {
        sys.push(LinearEquation {
            coeffs: kernel
                .iter()
                .enumerate()
                .filter(|(_, k)| !k[row].is_zero())
                .map(|(i, k)| (i, k[row].clone()))
                .collect(),
            rhs: target.clone(),
        });
    }
    solve_linear(&sys).is_ok()
}

#[test]
fn svir_alpha_space_is_the_scalar_identity() {
    let space = solve_alpha(&samples::svir().unwrap(), Some(2)).unwrap();
    assert_eq!(space.degree_bound, 2);
    assert_eq!(space.dimension(), 1);
    let r = samples::svir().unwrap();
    let want: Vec<Scalar> = space
        .slots
        .iter()
        .map(|s| {
            if s.source == s.target && s.degree == 0 {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect();
    assert!(in_span(&space.space.kernel, &want));
    let identity = space.table(&want);
    assert_eq!(identity.len(), r.dim());
    for (i, v) in identity {
        assert_eq!(v, ConformalElement::generator(i));
    }
}

#[test]
fn zero_bracket_admits_every_alpha() {
    let basis =
        SuperBasis::new([("u", Parity::Even), ("w", Parity::Even), ("v", Parity::Odd)]).unwrap();
    let space = solve_alpha(&ConformalAlgebra::new(basis), Some(1)).unwrap();
    // u, w may map to either even generator, v only to itself.
    assert_eq!(space.slots.len(), (4 + 1) * 2);
    assert_eq!(space.dimension(), space.slots.len());
}

#[test]
fn exam32_alpha_solves_the_generated_system() {
    let r = quadratic_from_gd(&samples::exam32_gd().unwrap()).unwrap();
    let space = solve_alpha(&r, Some(1)).unwrap();
    let swap: Vec<Scalar> = space
        .slots
        .iter()
        .map(|s| {
            let names = (r.generators.name(s.source), r.generators.name(s.target));
            let hit = s.degree == 0 && matches!(names, ("x1", "x2") | ("x2", "x1"));
            if hit {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect();
    assert!(in_span(&space.space.kernel, &swap));
    for table in space.basis_tables() {
        let twisted = r.clone().with_alpha_table(table).unwrap();
        assert!(twisted.check_jacobi().passed());
    }
}

#[test]
fn solve_alpha_requires_skew_symmetry() {
    let basis = SuperBasis::new([("a", Parity::Even)]).unwrap();
    let r = ConformalAlgebra::new(basis);
    let r = r.clone().with_bracket(0, 0, el(&r, &[("a", "1")])).unwrap();
    assert!(matches!(
        solve_alpha(&r, None),
        Err(ConformalError::PreconditionFailed { .. })
    ));
}

type Triples = BTreeSet<Vec<String>>;

fn failing_multisets(report: &CheckReport, skip: &str) -> Triples {
    report
        .witnesses()
        .iter()
        .filter(|w| w.axiom != skip && w.args.len() == 3)
        .map(|w| {
            let mut v = w.args.clone();
            v.sort();
            v
        })
        .collect()
}

fn skew_pairs(report: &CheckReport, axiom: &str) -> BTreeSet<Vec<String>> {
    report
        .witnesses()
        .iter()
        .filter(|w| w.axiom == axiom)
        .map(|w| w.args.clone())
        .collect()
}

#[test]
fn gd_verdict_matches_conformal_verdict_on_random_tables() {
    let mut gen = Generator::new(0x5eed_0420);
    let (mut pass, mut fail, mut matched) = (0, 0, 0);
    for i in 0..200 {
        let dim = gen.dim_between(2, 3);
        let g = gen.gd_candidate(dim);
        let gd = g.check().unwrap();
        let r = quadratic_from_gd(&g).unwrap();
        let conformal = r.check_axioms();
        assert_eq!(
            gd.passed(),
            conformal.passed(),
            "instance {i}: {gd}\n{conformal}"
        );
        if gd.passed() {
            pass += 1;
            continue;
        }
        fail += 1;
        assert_eq!(
            skew_pairs(&gd, "skew-symmetry"),
            skew_pairs(&conformal, "conformal-skew-symmetry"),
            "instance {i}"
        );
        if r.check_skew().passed() {
            assert_eq!(
                failing_multisets(&gd, "skew-symmetry"),
                failing_multisets(&conformal, "conformal-skew-symmetry"),
                "instance {i}"
            );
            matched += 1;
        }
    }
    assert!(pass >= 10 && fail >= 10, "pass {pass}, fail {fail}");
    assert!(matched >= 10, "only {matched} witness comparisons");
}

fn svir_element() -> impl Strategy<Value = Vec<(usize, Vec<i64>)>> {
    prop::collection::vec((0usize..3, prop::collection::vec(-3i64..=3, 0..4)), 0..4)
}

fn build(raw: &[(usize, Vec<i64>)]) -> ConformalElement {
    let mut x = ConformalElement::zero();
    for (g, coeffs) in raw {
        let p = FormalPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(d, &c)| ([d as u32, 0, 0], Scalar::int(c))),
        );
        x.add_term(*g, &p);
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sesquilinearity_holds_by_construction(a in svir_element(), b in svir_element()) {
        let r = samples::svir().unwrap();
        let (x, y) = (build(&a), build(&b));
        let lam = FormalPoly::var(FormalVar::Lambda);
        let d = FormalPoly::var(FormalVar::D);
        let xy = r.lambda_bracket(&x, &y);
        prop_assert!(r.lambda_bracket(&x.derivative(), &y).add(&xy.mul_poly(&lam)).is_zero());
        prop_assert_eq!(r.lambda_bracket(&x, &y.derivative()), xy.mul_poly(&d.add(&lam)));
    }

    #[test]
    fn quadratic_brackets_of_skew_tables_are_skew(seed in any::<u64>(), dim in 2usize..=3) {
        let g = Generator::new(seed).gd_structure(dim);
        let r = quadratic_from_gd(&g).unwrap();
        prop_assert!(r.check_skew().passed());
    }
}
