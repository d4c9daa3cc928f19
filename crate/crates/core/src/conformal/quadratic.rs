use crate::constructions::{Certified, GDStructure};
use crate::exactalg::{FormalPoly, FormalVar, Scalar};
use crate::superalgebra::{
    check_hom_lie_super, sign_flip, EvenMap, ProductTable, SuperAlgebra, Vector,
};

use super::{ConformalAlgebra, ConformalElement, ConformalError};

fn lift(v: &Vector, p: &FormalPoly) -> ConformalElement {
    ConformalElement::from_terms(v.iter().map(|(k, c)| (k, p.scale(c))))
}

fn constant_alpha(
    r: ConformalAlgebra,
    alpha: &EvenMap,
) -> Result<ConformalAlgebra, ConformalError> {
    let n = r.dim();
    r.with_alpha_table((0..n).map(|i| (i, lift(&alpha.apply_basis(i), &FormalPoly::one()))))
}

/// `[u_λ v] = [v,u] + (∂+λ)(v∘u) + (−1)^{|u||v|} λ(u∘v)` with `α` extended
/// `ℂ[∂]`-linearly.
pub fn quadratic_from_gd(g: &GDStructure) -> Result<ConformalAlgebra, ConformalError> {
    let a = &g.algebra;
    let (br, circ, alpha) = (
        a.product(&g.bracket)?,
        a.product(&g.circ)?,
        a.map(&g.alpha)?,
    );
    let d = FormalPoly::var(FormalVar::D);
    let lam = FormalPoly::var(FormalVar::Lambda);
    let mut r = ConformalAlgebra::new(a.basis.clone()).with_params(a.params.clone());
    for u in 0..a.dim() {
        for v in 0..a.dim() {
            let s = if sign_flip(a.basis.parity(u), a.basis.parity(v)) {
                -1
            } else {
                1
            };
            let value = lift(&br.apply_basis(v, u), &FormalPoly::one())
                .add(&lift(&circ.apply_basis(v, u), &d.add(&lam)))
                .add(&lift(&circ.apply_basis(u, v), &lam.scale(&Scalar::int(s))));
            r.set_bracket(u, v, value)?;
        }
    }
    constant_alpha(r, alpha)
}

/// Reads `[u_λ v] = ∂A + λB + C` as `v∘u = A`, `u∘v = (−1)^{|u||v|}(B − A)`,
/// `[v,u] = C`. Every `∘` entry is determined twice (from `[u_λ v]` and
/// `[v_λ u]`); the two readings must agree.
pub fn gd_from_quadratic(r: &ConformalAlgebra) -> Result<GDStructure, ConformalError> {
    let basis = &r.generators;
    let n = r.dim();
    let not_quadratic = |entry: String, reason: &str| ConformalError::NotQuadratic {
        entry,
        reason: reason.to_string(),
    };
    if let Some(i) = r.torsion.iter().position(|&t| t) {
        return Err(not_quadratic(
            basis.name(i).to_string(),
            "torsion generator",
        ));
    }
    for i in 0..n {
        let v = r.alpha_entry(i);
        if v.iter().any(|(_, p)| p.mentions(FormalVar::D)) {
            return Err(not_quadratic(
                format!("α({})", basis.name(i)),
                "α involves ∂",
            ));
        }
    }
    let allowed = [[0, 0, 0], [1, 0, 0], [0, 1, 0]];
    let mut bracket = Vec::new();
    // circ[(x, y)] collects every reading of x∘y.
    let mut circ: Vec<Vec<Vector>> = vec![Vec::new(); n * n];
    for u in 0..n {
        for v in 0..n {
            let entry = r.bracket_entry(u, v);
            let label = format!("[{}_λ {}]", basis.name(u), basis.name(v));
            let mut parts = [Vector::zero(), Vector::zero(), Vector::zero()];
            for (k, p) in entry.iter() {
                for (e, c) in p.terms() {
                    let slot = allowed.iter().position(|a| a == e).ok_or_else(|| {
                        not_quadratic(label.clone(), "monomial outside {1, ∂, λ}")
                    })?;
                    parts[slot].add_term(k, c);
                }
            }
            let [c, a, b] = parts;
            let s = sign_flip(basis.parity(u), basis.parity(v));
            let uv = if s { &a - &b } else { &b - &a };
            bracket.push(((v, u), c));
            circ[v * n + u].push(a);
            circ[u * n + v].push(uv);
        }
    }
    let mut circ_entries = Vec::new();
    for (t, readings) in circ.into_iter().enumerate() {
        let (x, y) = (t / n, t % n);
        if readings.windows(2).any(|w| w[0] != w[1]) {
            return Err(not_quadratic(
                format!("{}∘{}", basis.name(x), basis.name(y)),
                "the two entries determining this product disagree",
            ));
        }
        circ_entries.push(((x, y), readings.into_iter().next().unwrap_or_default()));
    }
    let alpha = EvenMap::new(
        basis,
        (0..n).map(|i| {
            let v = r.alpha_entry(i);
            let vec = Vector::from_terms(v.iter().map(|(k, p)| (k, p.coeff([0, 0, 0]))));
            (i, vec)
        }),
    )?;
    let mut algebra = SuperAlgebra::new(basis.clone())
        .with_product("bracket", ProductTable::new(basis, bracket)?)
        .with_product("circ", ProductTable::new(basis, circ_entries)?)
        .with_map("alpha", alpha);
    algebra.params = r.params.clone();
    Ok(GDStructure::conventional(algebra))
}

/// `[u_λ v] = [u, v]` on a Hom-Lie superalgebra, certified by the conformal
/// checkers.
pub fn current_conformal(
    l: &SuperAlgebra,
    bracket: &str,
    alpha: &str,
) -> Result<Certified<ConformalAlgebra>, ConformalError> {
    let report = check_hom_lie_super(l, bracket, alpha)?;
    if !report.passed() {
        return Err(ConformalError::PreconditionFailed {
            what: "Hom-Lie superalgebra".into(),
            report,
        });
    }
    let br = l.product(bracket)?;
    let mut r = ConformalAlgebra::new(l.basis.clone()).with_params(l.params.clone());
    for ((i, j), v) in br.entries() {
        r.set_bracket(i, j, lift(v, &FormalPoly::one()))?;
    }
    let r = constant_alpha(r, l.map(alpha)?)?;
    let certificate = r.check_axioms();
    Ok(Certified {
        value: r,
        certificate,
    })
}
