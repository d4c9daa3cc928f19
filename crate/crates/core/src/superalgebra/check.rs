use std::collections::BTreeMap;

use crate::exactalg::{solve_linear, LinearEquation, LinearSystem, Scalar};
use crate::par;

use super::{
    sign_flip, AlgebraError, CheckReport, EvenMap, ProductTable, SuperAlgebra, SuperBasis, Vector,
    Witness,
};

pub(crate) fn witness(
    basis: &SuperBasis,
    axiom: &str,
    args: &[usize],
    residual: &Vector,
) -> Option<Witness> {
    (!residual.is_zero()).then(|| Witness {
        axiom: axiom.to_string(),
        args: args.iter().map(|&i| basis.name(i).to_string()).collect(),
        residual: residual.render(basis),
    })
}

pub(crate) fn over_pairs<F>(basis: &SuperBasis, upper_only: bool, f: F) -> Vec<Witness>
where
    F: Fn(usize, usize) -> Vec<Witness> + Sync + Send,
{
    let n = basis.len();
    par::flat_map_indices(n * n, |t| {
        let (i, j) = (t / n, t % n);
        if upper_only && j < i {
            Vec::new()
        } else {
            f(i, j)
        }
    })
}

pub(crate) fn over_triples<F>(basis: &SuperBasis, f: F) -> Vec<Witness>
where
    F: Fn(usize, usize, usize) -> Vec<Witness> + Sync + Send,
{
    let n = basis.len();
    par::flat_map_indices(n * n * n, |t| f(t / (n * n), (t / n) % n, t % n))
}

fn flip(v: Vector, negative: bool) -> Vector {
    if negative {
        -v
    } else {
        v
    }
}

pub(crate) fn skew_witnesses(basis: &SuperBasis, br: &ProductTable) -> Vec<Witness> {
    over_pairs(basis, false, |i, j| {
        let s = sign_flip(basis.parity(i), basis.parity(j));
        let r = &br.apply_basis(i, j) + &flip(br.apply_basis(j, i), s);
        witness(basis, "skew-symmetry", &[i, j], &r)
            .into_iter()
            .collect()
    })
}

pub(crate) fn jacobi_witnesses(
    basis: &SuperBasis,
    br: &ProductTable,
    alpha: &EvenMap,
) -> Vec<Witness> {
    let p = |i| basis.parity(i);
    over_triples(basis, |x, y, z| {
        let term = |a: usize, b: usize, c: usize| {
            flip(
                br.apply(&br.apply_basis(a, b), &alpha.apply_basis(c)),
                sign_flip(p(a), p(c)),
            )
        };
        let r = &(&term(x, y, z) + &term(y, z, x)) + &term(z, x, y);
        witness(basis, "hom-jacobi", &[x, y, z], &r)
            .into_iter()
            .collect()
    })
}

fn novikov_witnesses(basis: &SuperBasis, circ: &ProductTable, alpha: &EvenMap) -> Vec<Witness> {
    let p = |i| basis.parity(i);
    over_triples(basis, |x, y, z| {
        let e = Vector::basis;
        let a = |i| alpha.apply_basis(i);
        let m = |u: &Vector, v: &Vector| circ.apply(u, v);
        let assoc =
            |u: usize, v: usize| &m(&circ.apply_basis(u, v), &a(z)) - &m(&a(u), &m(&e(v), &e(z)));
        let left = &assoc(x, y) - &flip(assoc(y, x), sign_flip(p(x), p(y)));
        let right = &flip(m(&circ.apply_basis(x, z), &a(y)), sign_flip(p(y), p(z)))
            - &m(&circ.apply_basis(x, y), &a(z));
        let args = [x, y, z];
        witness(basis, "left-symmetry", &args, &left)
            .into_iter()
            .chain(witness(basis, "right-commutativity", &args, &right))
            .collect()
    })
}

fn associativity_witnesses(
    basis: &SuperBasis,
    mul: &ProductTable,
    alpha: &EvenMap,
) -> Vec<Witness> {
    over_triples(basis, |x, y, z| {
        let lhs = mul.apply(&alpha.apply_basis(x), &mul.apply_basis(y, z));
        let rhs = mul.apply(&mul.apply_basis(x, y), &alpha.apply_basis(z));
        witness(basis, "hom-associativity", &[x, y, z], &(&lhs - &rhs))
            .into_iter()
            .collect()
    })
}

fn commutativity_witnesses(basis: &SuperBasis, mul: &ProductTable) -> Vec<Witness> {
    over_pairs(basis, false, |i, j| {
        let s = sign_flip(basis.parity(i), basis.parity(j));
        let r = &mul.apply_basis(i, j) - &flip(mul.apply_basis(j, i), s);
        witness(basis, "commutativity", &[i, j], &r)
            .into_iter()
            .collect()
    })
}

fn compatibility_witnesses(
    basis: &SuperBasis,
    br: &ProductTable,
    circ: &ProductTable,
    alpha: &EvenMap,
) -> Vec<Witness> {
    let p = |i| basis.parity(i);
    over_triples(basis, |x, y, z| {
        let a = |i| alpha.apply_basis(i);
        let syz = sign_flip(p(y), p(z));
        let r = br.apply(&circ.apply_basis(x, y), &a(z))
            - flip(br.apply(&circ.apply_basis(x, z), &a(y)), syz)
            + circ.apply(&br.apply_basis(x, y), &a(z))
            - flip(circ.apply(&br.apply_basis(x, z), &a(y)), syz)
            - circ.apply(&a(x), &br.apply_basis(y, z));
        witness(basis, "gd-compatibility", &[x, y, z], &r)
            .into_iter()
            .collect()
    })
}

fn leibniz_witnesses(
    basis: &SuperBasis,
    mul: &ProductTable,
    br: &ProductTable,
    alpha: &EvenMap,
) -> Vec<Witness> {
    let p = |i| basis.parity(i);
    over_triples(basis, |x, y, z| {
        let a = |i| alpha.apply_basis(i);
        let lhs = br.apply(&a(x), &mul.apply_basis(y, z));
        let t1 = flip(
            mul.apply(&a(y), &br.apply_basis(x, z)),
            sign_flip(p(x), p(y)),
        );
        let t2 = flip(
            mul.apply(&a(z), &br.apply_basis(x, y)),
            sign_flip(p(z), p(x) + p(y)),
        );
        witness(basis, "leibniz", &[x, y, z], &(lhs - t1 - t2))
            .into_iter()
            .collect()
    })
}

/// Skew-symmetry on pairs and the cyclic Hom-Jacobi identity on triples.
pub fn check_hom_lie_super(
    a: &SuperAlgebra,
    bracket: &str,
    alpha: &str,
) -> Result<CheckReport, AlgebraError> {
    let (br, al) = (a.product(bracket)?, a.map(alpha)?);
    let mut w = skew_witnesses(&a.basis, br);
    w.extend(jacobi_witnesses(&a.basis, br, al));
    Ok(CheckReport::from_witnesses(w))
}

/// Twisted left-symmetry and right-commutativity on all triples.
pub fn check_hom_novikov_super(
    a: &SuperAlgebra,
    circ: &str,
    alpha: &str,
) -> Result<CheckReport, AlgebraError> {
    let (c, al) = (a.product(circ)?, a.map(alpha)?);
    Ok(CheckReport::from_witnesses(novikov_witnesses(
        &a.basis, c, al,
    )))
}

pub fn check_hom_associative(
    a: &SuperAlgebra,
    mul: &str,
    alpha: &str,
    require_commutative: bool,
) -> Result<CheckReport, AlgebraError> {
    let (m, al) = (a.product(mul)?, a.map(alpha)?);
    let mut w = associativity_witnesses(&a.basis, m, al);
    if require_commutative {
        w.extend(commutativity_witnesses(&a.basis, m));
    }
    Ok(CheckReport::from_witnesses(w))
}

/// The five-term identity tying the bracket to the Novikov product.
pub fn check_gd_compatibility(
    a: &SuperAlgebra,
    bracket: &str,
    circ: &str,
    alpha: &str,
) -> Result<CheckReport, AlgebraError> {
    let (br, c, al) = (a.product(bracket)?, a.product(circ)?, a.map(alpha)?);
    Ok(CheckReport::from_witnesses(compatibility_witnesses(
        &a.basis, br, c, al,
    )))
}

/// Hom-Lie, Hom-Novikov and compatibility together.
pub fn check_gd(
    a: &SuperAlgebra,
    bracket: &str,
    circ: &str,
    alpha: &str,
) -> Result<CheckReport, AlgebraError> {
    Ok(check_hom_lie_super(a, bracket, alpha)?
        .merge(check_hom_novikov_super(a, circ, alpha)?)
        .merge(check_gd_compatibility(a, bracket, circ, alpha)?))
}

pub fn check_hom_poisson(
    a: &SuperAlgebra,
    mul: &str,
    bracket: &str,
    alpha: &str,
) -> Result<CheckReport, AlgebraError> {
    let (m, br, al) = (a.product(mul)?, a.product(bracket)?, a.map(alpha)?);
    Ok(check_hom_associative(a, mul, alpha, true)?
        .merge(check_hom_lie_super(a, bracket, alpha)?)
        .merge(CheckReport::from_witnesses(leibniz_witnesses(
            &a.basis, m, br, al,
        ))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapProperty {
    /// `m(x∘y) = m(x)∘m(y)` for every listed product.
    Endomorphism(Vec<String>),
    /// `m(x·y) = m(x)·y + x·m(y)`.
    Derivation(String),
    /// `m∘other = other∘m`.
    CommutesWith(String),
    /// `m[x,y] = [m x,y] + [x,m y] + shift·[x,y]`.
    TwistedDerivation { bracket: String, shift: Scalar },
}

pub fn check_map_property(
    a: &SuperAlgebra,
    map: &str,
    property: &MapProperty,
) -> Result<CheckReport, AlgebraError> {
    let m = a.map(map)?;
    let basis = &a.basis;
    let w = match property {
        MapProperty::Endomorphism(products) => {
            let mut w = Vec::new();
            for name in products {
                let t = a.product(name)?;
                let axiom = format!("endomorphism({name})");
                w.extend(over_pairs(basis, false, |i, j| {
                    let r = &m.apply(&t.apply_basis(i, j))
                        - &t.apply(&m.apply_basis(i), &m.apply_basis(j));
                    witness(basis, &axiom, &[i, j], &r).into_iter().collect()
                }));
            }
            w
        }
        MapProperty::Derivation(name) => {
            let t = a.product(name)?;
            over_pairs(basis, false, |i, j| {
                let r = m.apply(&t.apply_basis(i, j))
                    - t.apply(&m.apply_basis(i), &Vector::basis(j))
                    - t.apply(&Vector::basis(i), &m.apply_basis(j));
                witness(basis, "derivation", &[i, j], &r)
                    .into_iter()
                    .collect()
            })
        }
        MapProperty::CommutesWith(other) => {
            let o = a.map(other)?;
            (0..basis.len())
                .filter_map(|i| {
                    let r = &m.apply(&o.apply_basis(i)) - &o.apply(&m.apply_basis(i));
                    witness(basis, "commutes", &[i], &r)
                })
                .collect()
        }
        MapProperty::TwistedDerivation { bracket, shift } => {
            let t = a.product(bracket)?;
            over_pairs(basis, false, |i, j| {
                let r = m.apply(&t.apply_basis(i, j))
                    - t.apply(&m.apply_basis(i), &Vector::basis(j))
                    - t.apply(&Vector::basis(i), &m.apply_basis(j))
                    - t.apply_basis(i, j).scale(shift);
                witness(basis, "twisted-derivation", &[i, j], &r)
                    .into_iter()
                    .collect()
            })
        }
    };
    Ok(CheckReport::from_witnesses(w))
}

/// Basis of `{x : [x, α(y)] = 0 for all y}` from the reduced echelon kernel.
pub fn centralizer_of_alpha_image(
    a: &SuperAlgebra,
    bracket: &str,
    alpha: &str,
) -> Result<Vec<Vector>, AlgebraError> {
    let (br, al) = (a.product(bracket)?, a.map(alpha)?);
    let n = a.dim();
    let mut sys = LinearSystem::new((0..n).map(|i| a.basis.name(i).to_string()).collect());
    for j in 0..n {
        let aj = al.apply_basis(j);
        let mut rows: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for i in 0..n {
            for (k, c) in br.apply(&Vector::basis(i), &aj).iter() {
                rows.entry(k).or_default().insert(i, c.clone());
            }
        }
        for (_, row) in rows {
            sys.push(LinearEquation::homogeneous(row));
        }
    }
    let sol = solve_linear(&sys).expect("homogeneous systems are consistent");
    Ok(sol
        .kernel
        .into_iter()
        .map(|v| Vector::from_terms(v.into_iter().enumerate()))
        .collect())
}

/// Whether `v` lies in the span of `gens` (all over a basis of size `dim`).
pub fn in_span(gens: &[Vector], v: &Vector, dim: usize) -> bool {
    if v.is_zero() {
        return true;
    }
    let mut sys = LinearSystem::new((0..gens.len()).map(|i| format!("t{i}")).collect());
    for k in 0..dim {
        let coeffs: BTreeMap<usize, Scalar> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (i, g.get(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        sys.push(LinearEquation {
            coeffs,
            rhs: v.get(k),
        });
    }
    solve_linear(&sys).is_ok()
}
