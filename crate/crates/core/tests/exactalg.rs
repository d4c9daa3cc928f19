use std::collections::BTreeMap;

use halg_core::exactalg::{
    parse_formal, parse_scalar, solve_linear, ExactError, FormalPoly, FormalVar, LinearEquation,
    LinearSystem, Monomial, Poly, Rat, Scalar, Var,
};
use num::{BigInt, One, Zero};
use proptest::prelude::*;

fn params(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn s(lit: &str, ps: &[&str]) -> Scalar {
    parse_scalar(lit, &params(ps)).unwrap()
}

fn fp(lit: &str) -> FormalPoly {
    parse_formal(lit, &[]).unwrap()
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[test]
fn constant_gcd_is_absorbed() {
    let a = Poly::var(Var::named("a"));
    let r = Scalar::normalize(a.scale(&rat(2)), Poly::constant(rat(4))).unwrap();
    assert_eq!(r, s("a/2", &["a"]));
    assert!(r.denominator().is_one());
}

#[test]
fn common_factor_cancels() {
    let a = Poly::var(Var::named("a"));
    let num = a.mul(&a).sub(&Poly::one());
    let den = a.sub(&Poly::one());
    let r = Scalar::normalize(num, den).unwrap();
    assert_eq!(r, s("a+1", &["a"]));
    assert!(r.denominator().is_one());
}

#[test]
fn zero_denominator_is_rejected() {
    assert_eq!(
        Scalar::normalize(Poly::one(), Poly::zero()),
        Err(ExactError::ZeroDenominator)
    );
    assert!(parse_scalar("1/(a-a)", &params(&["a"])).is_err());
}

/// Euclid on dense coefficient lists, lowest degree first.
fn univariate_gcd_degree(mut a: Vec<Rat>, mut b: Vec<Rat>) -> usize {
    fn trim(v: &mut Vec<Rat>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let f = a.last().unwrap() / b.last().unwrap();
            for (i, c) in b.iter().enumerate() {
                a[i + shift] = &a[i + shift] - &(&f * c);
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Coefficient list in `v` after fixing every other parameter to `at`.
fn specialize(p: &Poly, v: Var, at: i64) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut val = c.clone();
        for &(w, e) in m.factors() {
            if w != v {
                val *= num::pow(rat(at), e as usize);
            }
        }
        out[m.exponent(v) as usize] += val;
    }
    out
}

#[test]
fn lambda_squared_b_over_lambda_b() {
    let r = s("(lam^2*b)/(lam*b)", &["lam", "b"]);
    assert_eq!(r, s("lam", &["lam", "b"]));
    let l = Var::named("lam");
    let num = specialize(r.numerator(), l, 3);
    let den = specialize(r.denominator(), l, 3);
    assert_eq!(univariate_gcd_degree(num, den), 0);
}

#[test]
fn multivariate_cancellation_leaves_coprime_parts() {
    let r = s("(a^2*b - b^3)/(a^2 + 2*a*b + b^2)", &["a", "b"]);
    assert_eq!(r, s("(a*b - b^2)/(a+b)", &["a", "b"]));
    let a = Var::named("a");
    for at in [2, 5, 7] {
        let g = univariate_gcd_degree(
            specialize(r.numerator(), a, at),
            specialize(r.denominator(), a, at),
        );
        assert_eq!(g, 0, "shared factor after specializing b={at}");
    }
}

#[test]
fn denominator_leads_with_one() {
    let r = s("1/(3*a - 6)", &["a"]);
    assert_eq!(r.denominator().leading_coeff(), Rat::one());
    assert_eq!(r.to_string(), "1/3/(a - 2)");
    assert_eq!(r, s("1/3/(a-2)", &["a"]));
}

#[test]
fn literal_grammar() {
    let ps = ["a"];
    assert_eq!(s("(a^2-1)/(2*a)", &ps), &s("a/2", &ps) - &s("1/(2*a)", &ps));
    assert_eq!(s(" - 2 ^ 2 ", &ps), Scalar::int(-4));
    assert!(matches!(
        parse_scalar("a + z", &params(&ps)),
        Err(ExactError::UnknownParameter { .. })
    ));
    assert!(parse_scalar("a^", &params(&ps)).is_err());
    assert!(parse_scalar("a^b", &params(&ps)).is_err());
    assert!(parse_scalar("(a", &params(&ps)).is_err());
    assert!(parse_scalar("a $ 1", &params(&ps)).is_err());
}

#[test]
fn display_round_trips_through_the_parser() {
    let ps = ["a", "b"];
    for lit in [
        "0",
        "-7/3",
        "a^2*b - 1/2*a",
        "(a-1)/(a^2+b)",
        "-b/(a*b - 3)",
        "1/(a*b)",
        "1/a^2",
    ] {
        let x = s(lit, &ps);
        assert_eq!(s(&x.to_string(), &ps), x, "{lit} -> {x}");
    }
}

#[test]
fn skew_substitution_examples() {
    let skew = [(FormalVar::Lambda, fp("-Lm-D"))];
    assert_eq!(fp("Lm").substitute(&skew), fp("-Lm-D"));
    assert_eq!(fp("D+2*Lm").substitute(&skew), fp("-D-2*Lm"));
}

#[test]
fn simultaneous_substitution_against_binomial_expansion() {
    let p = fp("(D+Lm)^2");
    let got = p.substitute(&[(FormalVar::D, fp("D+Lm")), (FormalVar::Lambda, fp("Mu"))]);
    // (∂+λ+μ)² expanded by the multinomial theorem.
    let mut want = FormalPoly::zero();
    for i in 0..=2u32 {
        for j in 0..=(2 - i) {
            let k = 2 - i - j;
            let fact = |n: u32| (1..=n).product::<u32>().max(1) as i64;
            let c = 2 / (fact(i) * fact(j) * fact(k));
            want = want.add(&FormalPoly::monomial([i, j, k], Scalar::int(c)));
        }
    }
    assert_eq!(got, want);
    assert_eq!(got, fp("D^2 + Lm^2 + Mu^2 + 2*D*Lm + 2*D*Mu + 2*Lm*Mu"));
}

#[test]
fn formal_division_only_by_constants() {
    assert_eq!(fp("(2*D + 4)/2"), fp("D + 2"));
    assert!(parse_formal("1/D", &[]).is_err());
}

fn system(unknowns: &[&str], rows: &[(&[(usize, Scalar)], Scalar)]) -> LinearSystem {
    let mut sys = LinearSystem::new(params(unknowns));
    for (coeffs, rhs) in rows {
        sys.push(LinearEquation {
            coeffs: coeffs.iter().cloned().collect(),
            rhs: rhs.clone(),
        });
    }
    sys
}

#[test]
fn two_by_two_system() {
    let one = Scalar::one;
    let sys = system(
        &["x", "y"],
        &[
            (&[(0, one()), (1, one())], one()),
            (&[(0, one()), (1, Scalar::int(-1))], one()),
        ],
    );
    let sol = solve_linear(&sys).unwrap();
    assert_eq!(sol.particular, vec![Scalar::one(), Scalar::zero()]);
    assert_eq!(sol.dimension(), 0);
}

#[test]
fn parametric_kernel() {
    let a = s("a", &["a"]);
    let sys = system(
        &["x", "y"],
        &[(&[(0, a.clone()), (1, -&a)], Scalar::zero())],
    );
    let sol = solve_linear(&sys).unwrap();
    assert_eq!(sol.kernel, vec![vec![Scalar::one(), Scalar::one()]]);
}

#[test]
fn inconsistency_is_reported() {
    let one = Scalar::one;
    let sys = system(
        &["x"],
        &[
            (&[(0, one())], one()),
            (&[(0, Scalar::int(2))], Scalar::int(3)),
        ],
    );
    assert_eq!(
        solve_linear(&sys),
        Err(ExactError::Inconsistent { equation: 1 })
    );
}

/// Equations `Σ_j x_j p_j = 0` read off monomial by monomial.
fn push_identity(sys: &mut LinearSystem, terms: &[(usize, FormalPoly)]) {
    let mut rows: BTreeMap<[u32; 3], BTreeMap<usize, Scalar>> = BTreeMap::new();
    for (j, p) in terms {
        for (e, c) in p.terms() {
            let row = rows.entry(*e).or_default();
            let v = row.get(j).cloned().unwrap_or_default() + c;
            row.insert(*j, v);
        }
    }
    for (_, row) in rows {
        sys.push(LinearEquation::homogeneous(
            row.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        ));
    }
}

#[test]
fn super_virasoro_constant_ansatz() {
    let [f1, f2, g1, g2, h, b] = [0, 1, 2, 3, 4, 5];
    let mut sys = LinearSystem::new(params(&["f1", "f2", "g1", "g2", "h", "b"]));
    // (L,L,L), coefficient of F with α(L) = f1 L + f2 F constant.
    push_identity(
        &mut sys,
        &[
            (f2, fp("Lm*(D+Lm+2*Mu)")),
            (f2, fp("-(Lm-Mu)*(D+Lm+Mu) - Mu*(D+Mu+2*Lm)")),
        ],
    );
    push_identity(&mut sys, &[(f2, FormalPoly::one()), (b, fp("-1"))]);
    // (L,L,F), coefficients of L and F.
    push_identity(&mut sys, &[(g1, fp("(Lm-Mu)*(D+2*Lm+2*Mu)"))]);
    push_identity(
        &mut sys,
        &[
            (f1, fp("(D+Mu+Lm)*(D+Lm) - (D+Mu+Lm)*(D+Mu)")),
            (g2, fp("-(Lm-Mu)*(D+Mu+Lm)")),
        ],
    );
    // (L,F,G).
    push_identity(
        &mut sys,
        &[
            (f1, fp("(D+2*Lm) - (2*Lm+D+Mu)")),
            (b, fp("1")),
            (h, fp("Mu")),
        ],
    );
    let sol = solve_linear(&sys).unwrap();
    assert_eq!(sol.dimension(), 1);
    let ones = |idx: &[usize]| -> Vec<Scalar> {
        (0..6)
            .map(|j| {
                if idx.contains(&j) {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect()
    };
    assert_eq!(sol.kernel[0], ones(&[f1, g2, h]));
}

fn small_poly() -> impl Strategy<Value = Poly> {
    let a = Var::named("pa");
    let b = Var::named("pb");
    prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=2), 0..4).prop_map(move |ts| {
        Poly::from_terms(
            ts.into_iter()
                .map(|(c, i, j)| (Monomial::var(a, i).mul(&Monomial::var(b, j)), rat(c))),
        )
    })
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (small_poly(), small_poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { Poly::one() } else { d };
        Scalar::normalize(n, d).unwrap()
    })
}

fn small_formal() -> impl Strategy<Value = FormalPoly> {
    prop::collection::vec((-4i64..=4, 0u32..=3, 0u32..=3, 0u32..=1), 0..6).prop_map(|ts| {
        FormalPoly::from_terms(
            ts.into_iter()
                .map(|(c, d, l, m)| ([d, l, m], Scalar::int(c))),
        )
    })
}

proptest! {
    #[test]
    fn scalar_field_laws(x in small_scalar(), y in small_scalar(), z in small_scalar()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
    }

    #[test]
    fn normalize_is_idempotent(x in small_scalar()) {
        let again = Scalar::normalize(x.numerator().clone(), x.denominator().clone()).unwrap();
        prop_assert_eq!(again, x);
    }

    #[test]
    fn formal_ring_laws(p in small_formal(), q in small_formal(), r in small_formal()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
    }

    #[test]
    fn substitution_commutes_with_arithmetic(p in small_formal(), q in small_formal()) {
        let b = [(FormalVar::D, fp("D+Lm")), (FormalVar::Mu, fp("2*Lm-D"))];
        prop_assert_eq!(p.mul(&q).substitute(&b), p.substitute(&b).mul(&q.substitute(&b)));
        prop_assert_eq!(p.add(&q).substitute(&b), p.substitute(&b).add(&q.substitute(&b)));
    }
}

fn random_system() -> impl Strategy<Value = (LinearSystem, Option<Vec<Scalar>>)> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(m, n)| {
            (
                prop::collection::vec(prop::collection::vec(-3i64..=3, n), m),
                prop::collection::vec(-3i64..=3, n),
                prop::collection::vec(-3i64..=3, m),
                any::<bool>(),
            )
        })
        .prop_map(|(a, x0, noise, planted)| {
            let n = x0.len();
            let mut sys = LinearSystem::new((0..n).map(|j| format!("x{j}")).collect());
            for (row, e) in a.iter().zip(&noise) {
                let rhs = if planted {
                    row.iter().zip(&x0).map(|(c, x)| c * x).sum::<i64>()
                } else {
                    *e
                };
                sys.push(LinearEquation {
                    coeffs: row
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(j, &c)| (j, Scalar::int(c)))
                        .collect(),
                    rhs: Scalar::int(rhs),
                });
            }
            let x0 = planted.then(|| x0.into_iter().map(Scalar::int).collect());
            (sys, x0)
        })
}

proptest! {
    #[test]
    fn formal_display_reparses(p in small_formal(), a in small_scalar()) {
        prop_assert_eq!(fp(&p.to_string()), p.clone());
        let scaled = p.scale(&a);
        let printed = scaled.to_string();
        prop_assert_eq!(parse_formal(&printed, &params(&["pa", "pb"])).unwrap(), scaled, "{}", printed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn skew_substitution_is_an_involution(p in small_formal()) {
        let skew = [(FormalVar::Lambda, fp("-Lm-D"))];
        prop_assert_eq!(p.substitute(&skew).substitute(&skew), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn solutions_resatisfy_their_systems((sys, planted) in random_system(), t in prop::collection::vec(-3i64..=3, 5)) {
        match solve_linear(&sys) {
            Ok(sol) => {
                let t: Vec<Scalar> = t.into_iter().map(Scalar::int).collect();
                let x = sol.point(&t);
                for eq in &sys.equations {
                    prop_assert!(eq.residual(&sol.particular).is_zero());
                    prop_assert!(eq.residual(&x).is_zero());
                    for k in &sol.kernel {
                        prop_assert!((&eq.residual(k) + &eq.rhs).is_zero());
                    }
                }
                prop_assert_eq!(sol.dimension() + sol.pivots.len(), sys.unknowns.len());
            }
            Err(ExactError::Inconsistent { .. }) => prop_assert!(planted.is_none()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
