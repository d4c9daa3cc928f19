//! Small named algebras used by tests, benches and the shipped corpus.

use crate::conformal::{ConformalAlgebra, ConformalElement, ConformalError};
use crate::constructions::{supercommutator_gd, yau_twist, ConstructionError, GDStructure};
use crate::exactalg::{parse_formal, Scalar};
use crate::superalgebra::{AlgebraError, Parity, SuperAlgebra, SuperBasis};

fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

fn half() -> Scalar {
    Scalar::rational(1, 2)
}

fn x1x2y() -> SuperAlgebra {
    let basis = SuperBasis::new([
        ("x1", Parity::Even),
        ("x2", Parity::Even),
        ("y", Parity::Odd),
    ])
    .expect("static basis");
    SuperAlgebra::new(basis)
}

/// Three-dimensional Hom-Novikov superalgebra with the swap twist
/// `x1 ↔ x2`, `y ↦ 0`.
pub fn exam32() -> Result<SuperAlgebra, AlgebraError> {
    let a = x1x2y();
    let circ = a.table(&[
        ("x1", "x1", vec![("x2", int(1))]),
        ("x2", "x2", vec![("x1", int(1))]),
        ("x1", "y", vec![("y", int(1))]),
        ("x2", "y", vec![("y", int(1))]),
    ])?;
    let alpha = a.even_map(&[("x1", vec![("x2", int(1))]), ("x2", vec![("x1", int(1))])])?;
    Ok(a.with_product("circ", circ).with_map("alpha", alpha))
}

/// `exam32` with its supercommutator bracket.
pub fn exam32_gd() -> Result<GDStructure, ConstructionError> {
    Ok(supercommutator_gd(&exam32()?, "circ", "alpha")?.value)
}

/// `exam33_untwisted` twisted by its `alpha`, with the supercommutator of
/// the twisted product as bracket.
pub fn exam33_gd() -> Result<GDStructure, ConstructionError> {
    let twisted = yau_twist(&exam33_untwisted()?, &["circ"], "alpha")?.value;
    Ok(supercommutator_gd(&twisted, "circ", "alpha")?.value)
}

/// The untwisted Novikov superalgebra with its twist
/// `α = diag(lam², 1, lam)` stored as `alpha` (identity as `id`).
pub fn exam33_untwisted() -> Result<SuperAlgebra, AlgebraError> {
    let a = x1x2y().with_params(&["lam"]);
    let lam = Scalar::param("lam");
    let circ = a.table(&[
        ("x1", "x2", vec![("x1", half())]),
        ("x2", "x1", vec![("x1", -half())]),
        ("x2", "x2", vec![("x2", half())]),
        ("y", "x2", vec![("y", half())]),
        ("y", "y", vec![("x1", half())]),
    ])?;
    let alpha = a.even_map(&[
        ("x1", vec![("x1", lam.pow(2))]),
        ("x2", vec![("x2", int(1))]),
        ("y", vec![("y", lam)]),
    ])?;
    let id = a.even_map(&[
        ("x1", vec![("x1", int(1))]),
        ("x2", vec![("x2", int(1))]),
        ("y", vec![("y", int(1))]),
    ])?;
    Ok(a.with_product("circ", circ)
        .with_map("alpha", alpha)
        .with_map("id", id))
}

/// Doubled algebra over the 2-dim base `p·p = q`, `d = diag(1, 2)`,
/// `α = diag(t, t²)`: even copies `p0, q0`, odd copies `p1, q1`,
/// `mul = (u0·v0, 0)`, `D = (d(u0), u1)`.
pub fn exam35_doubled() -> Result<SuperAlgebra, AlgebraError> {
    let basis = SuperBasis::new([
        ("p0", Parity::Even),
        ("q0", Parity::Even),
        ("p1", Parity::Odd),
        ("q1", Parity::Odd),
    ])?;
    let a = SuperAlgebra::new(basis).with_params(&["t"]);
    let t = Scalar::param("t");
    let mul = a.table(&[("p0", "p0", vec![("q0", int(1))])])?;
    let alpha = a.even_map(&[
        ("p0", vec![("p0", t.clone())]),
        ("q0", vec![("q0", t.pow(2))]),
        ("p1", vec![("p1", t.clone())]),
        ("q1", vec![("q1", t.pow(2))]),
    ])?;
    let d = a.even_map(&[
        ("p0", vec![("p0", int(1))]),
        ("q0", vec![("q0", int(2))]),
        ("p1", vec![("p1", int(1))]),
        ("q1", vec![("q1", int(1))]),
    ])?;
    Ok(a.with_product("mul", mul)
        .with_map("alpha", alpha)
        .with_map("D", d))
}

/// Three-dimensional Hom-Poisson data exactly as listed in the source
/// example: `e1·e2 = a e1` (after twisting), `e2·e2 = e1 + e2`,
/// `e3·e2 = μ e3`, `[e1, e2] = a² e1`, `α = (a e1, e1 + e2, μ e3)` and
/// `D = ((a−1)b e1, b e1, c e3)`. It does not satisfy the axioms.
pub fn poisson_literal() -> Result<SuperAlgebra, AlgebraError> {
    let basis = SuperBasis::new([
        ("e1", Parity::Even),
        ("e2", Parity::Even),
        ("e3", Parity::Odd),
    ])?;
    let a = SuperAlgebra::new(basis).with_params(&["a", "mu", "b", "c"]);
    let (pa, mu, b, c) = (
        Scalar::param("a"),
        Scalar::param("mu"),
        Scalar::param("b"),
        Scalar::param("c"),
    );
    let mul = a.table(&[
        ("e1", "e2", vec![("e1", pa.clone())]),
        ("e2", "e1", vec![("e1", pa.clone())]),
        ("e2", "e2", vec![("e1", int(1)), ("e2", int(1))]),
        ("e3", "e2", vec![("e3", mu.clone())]),
        ("e2", "e3", vec![("e3", mu.clone())]),
    ])?;
    let bracket = a.table(&[
        ("e1", "e2", vec![("e1", pa.pow(2))]),
        ("e2", "e1", vec![("e1", -pa.pow(2))]),
    ])?;
    let alpha = a.even_map(&[
        ("e1", vec![("e1", pa.clone())]),
        ("e2", vec![("e1", int(1)), ("e2", int(1))]),
        ("e3", vec![("e3", mu)]),
    ])?;
    let d = a.even_map(&[
        ("e1", vec![("e1", &(&pa - &int(1)) * &b)]),
        ("e2", vec![("e1", b)]),
        ("e3", vec![("e3", c)]),
    ])?;
    Ok(a.with_product("mul", mul)
        .with_product("bracket", bracket)
        .with_map("alpha", alpha)
        .with_map("D", d))
}

/// A consistent three-dimensional Hom-Poisson superalgebra with a shifted
/// derivation: `e1·e1 = e1·e2 = e2·e2 = e1`, `[e2, e3] = μ e3`,
/// `α = diag(1, 1, μ)`, `D = (0, b(e1 − e2), c e3)` with shift `b`.
pub fn poisson_constructed() -> Result<SuperAlgebra, AlgebraError> {
    let basis = SuperBasis::new([
        ("e1", Parity::Even),
        ("e2", Parity::Even),
        ("e3", Parity::Odd),
    ])?;
    let a = SuperAlgebra::new(basis).with_params(&["mu", "b", "c"]);
    let (mu, b, c) = (Scalar::param("mu"), Scalar::param("b"), Scalar::param("c"));
    let mul = a.table(&[
        ("e1", "e1", vec![("e1", int(1))]),
        ("e1", "e2", vec![("e1", int(1))]),
        ("e2", "e1", vec![("e1", int(1))]),
        ("e2", "e2", vec![("e1", int(1))]),
    ])?;
    let bracket = a.table(&[
        ("e2", "e3", vec![("e3", mu.clone())]),
        ("e3", "e2", vec![("e3", -mu.clone())]),
    ])?;
    let alpha = a.even_map(&[
        ("e1", vec![("e1", int(1))]),
        ("e2", vec![("e2", int(1))]),
        ("e3", vec![("e3", mu)]),
    ])?;
    let d = a.even_map(&[
        ("e2", vec![("e1", b.clone()), ("e2", -b)]),
        ("e3", vec![("e3", c)]),
    ])?;
    Ok(a.with_product("mul", mul)
        .with_product("bracket", bracket)
        .with_map("alpha", alpha)
        .with_map("D", d))
}

/// `sl2` with `[h, e] = 2e`, `[h, f] = −2f`, `[e, f] = h` and `α = id`.
pub fn sl2() -> Result<SuperAlgebra, AlgebraError> {
    let basis = SuperBasis::new([
        ("e", Parity::Even),
        ("h", Parity::Even),
        ("f", Parity::Even),
    ])?;
    let a = SuperAlgebra::new(basis);
    let bracket = a.table(&[
        ("h", "e", vec![("e", int(2))]),
        ("e", "h", vec![("e", int(-2))]),
        ("h", "f", vec![("f", int(-2))]),
        ("f", "h", vec![("f", int(2))]),
        ("e", "f", vec![("h", int(1))]),
        ("f", "e", vec![("h", int(-1))]),
    ])?;
    let alpha = a.even_map(&[
        ("e", vec![("e", int(1))]),
        ("h", vec![("h", int(1))]),
        ("f", vec![("f", int(1))]),
    ])?;
    Ok(a.with_product("bracket", bracket).with_map("alpha", alpha))
}

fn conformal_table(
    r: ConformalAlgebra,
    entries: &[(&str, &str, &str, &str)],
) -> Result<ConformalAlgebra, ConformalError> {
    let mut r = r;
    for &(u, v, poly, w) in entries {
        let (i, j, k) = (
            r.generators.index_of(u)?,
            r.generators.index_of(v)?,
            r.generators.index_of(w)?,
        );
        let p = parse_formal(poly, &r.params).expect("static polynomial");
        r.set_bracket(i, j, ConformalElement::term(k, p))?;
    }
    Ok(r)
}

/// The super Virasoro conformal superalgebra on `L`, `F` (even) and `G`
/// (odd) with `α = id`.
pub fn svir() -> Result<ConformalAlgebra, ConformalError> {
    let basis = SuperBasis::new([("L", Parity::Even), ("F", Parity::Even), ("G", Parity::Odd)])?;
    conformal_table(
        ConformalAlgebra::new(basis),
        &[
            ("L", "L", "D + 2*Lm", "L"),
            ("L", "G", "D + 2*Lm", "G"),
            ("G", "L", "D + 2*Lm", "G"),
            ("F", "G", "1", "G"),
            ("L", "F", "D + Lm", "F"),
            ("F", "L", "Lm", "F"),
            ("G", "F", "-1", "G"),
        ],
    )
}

/// `ℂ[∂]L` with `[L_λ L] = (∂+2λ)L` and `α = id`.
pub fn virasoro() -> Result<ConformalAlgebra, ConformalError> {
    let basis = SuperBasis::new([("L", Parity::Even)])?;
    conformal_table(ConformalAlgebra::new(basis), &[("L", "L", "D + 2*Lm", "L")])
}
