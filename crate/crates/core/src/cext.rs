//! One-dimensional central extensions of conformal superalgebras by an even
//! center `c` with `∂c = 0`, and the relation suite satisfied by cocycles
//! of quadratic algebras.

use std::collections::BTreeMap;

use crate::conformal::{quadratic_from_gd, ConformalAlgebra, ConformalElement, ConformalError};
use crate::constructions::GDStructure;
use crate::exactalg::{
    solve_linear, system_from_columns, Exps, FormalPoly, FormalVar, LinearSystem, Scalar,
    SolutionSpace,
};
use crate::par;
use crate::superalgebra::{
    sign_flip, AlgebraError, CheckReport, Parity, SuperBasis, Vector, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CextError {
    #[error(transparent)]
    Conformal(#[from] ConformalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("f_{degree}({left}, {right}) pairs generators of different parity")]
    Parity {
        degree: usize,
        left: String,
        right: String,
    },
    #[error("not a 2-cocycle\n{0}")]
    NotACocycle(CheckReport),
    #[error("hypothesis failed: the form is not a 2-cocycle\n{0}")]
    HypothesisFailed(CheckReport),
}

/// `f_λ(u, v) = Σ_i λ^i f_i(u, v)` on generators, stored as one sparse
/// matrix per power of `λ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cocycle {
    components: Vec<BTreeMap<(usize, usize), Scalar>>,
}

impl Cocycle {
    pub fn zero() -> Self {
        Cocycle::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Self {
        let mut f = Cocycle::zero();
        for (i, u, v, c) in entries {
            f.set(i, u, v, c);
        }
        f
    }

    pub fn set(&mut self, i: usize, u: usize, v: usize, c: Scalar) {
        if self.components.len() <= i {
            self.components.resize_with(i + 1, BTreeMap::new);
        }
        if c.is_zero() {
            self.components[i].remove(&(u, v));
        } else {
            self.components[i].insert((u, v), c);
        }
        while self.components.last().is_some_and(BTreeMap::is_empty) {
            self.components.pop();
        }
    }

    pub fn get(&self, i: usize, u: usize, v: usize) -> Scalar {
        self.components
            .get(i)
            .and_then(|m| m.get(&(u, v)))
            .cloned()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Highest power of `λ` with a nonzero component (0 for the zero form).
    pub fn degree(&self) -> usize {
        self.components.len().saturating_sub(1)
    }

    /// `(i, u, v, f_i(u, v))` over the nonzero entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, m)| m.iter().map(move |(&(u, v), c)| (i, u, v, c)))
    }

    /// `f_λ(u, v)` as a polynomial in `λ`.
    pub fn form(&self, u: usize, v: usize) -> FormalPoly {
        FormalPoly::from_terms(
            self.components
                .iter()
                .enumerate()
                .filter_map(|(i, m)| m.get(&(u, v)).map(|c| ([0, i as u32, 0], c.clone()))),
        )
    }

    /// `f_Λ(x, y)` via `f_Λ(p(∂)u, q(∂)v) = p(−Λ) q(Λ) f_Λ(u, v)`.
    pub fn eval(&self, x: &ConformalElement, y: &ConformalElement, lam: &FormalPoly) -> FormalPoly {
        let minus = [(FormalVar::D, lam.neg())];
        let plus = [(FormalVar::D, lam.clone())];
        let at = [(FormalVar::Lambda, lam.clone())];
        let mut out = FormalPoly::zero();
        for (i, p) in x.iter() {
            let p = p.substitute(&minus);
            for (j, q) in y.iter() {
                let f = self.form(i, j);
                if f.is_zero() {
                    continue;
                }
                out = out.add(&p.mul(&q.substitute(&plus)).mul(&f.substitute(&at)));
            }
        }
        out
    }

    /// `f_i` on vectors of the underlying superspace.
    pub fn bilinear(&self, i: usize, x: &Vector, y: &Vector) -> Scalar {
        let Some(m) = self.components.get(i) else {
            return Scalar::zero();
        };
        let mut out = Scalar::zero();
        for (a, xa) in x.iter() {
            for (b, yb) in y.iter() {
                if let Some(c) = m.get(&(a, b)) {
                    out = &out + &(&(xa * yb) * c);
                }
            }
        }
        out
    }

    /// Every component pairs generators of equal parity (the center is even).
    pub fn validate(&self, basis: &SuperBasis) -> Result<(), CextError> {
        match self
            .entries()
            .find(|&(_, u, v, _)| basis.parity(u) != basis.parity(v))
        {
            Some((degree, u, v, _)) => Err(CextError::Parity {
                degree,
                left: basis.name(u).into(),
                right: basis.name(v).into(),
            }),
            None => Ok(()),
        }
    }

    /// `f(u, v) = λ^3 + ...` lines for reports.
    pub fn render(&self, basis: &SuperBasis) -> Vec<(String, FormalPoly)> {
        let mut pairs: Vec<(usize, usize)> = self.entries().map(|(_, u, v, _)| (u, v)).collect();
        pairs.sort();
        pairs.dedup();
        pairs
            .into_iter()
            .map(|(u, v)| {
                (
                    format!("f({}, {})", basis.name(u), basis.name(v)),
                    self.form(u, v),
                )
            })
            .collect()
    }
}

/// Knobs for `extend`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendOptions {
    /// `α(c) = alpha_center · c`.
    pub alpha_center: Scalar,
    pub center_name: String,
}

impl Default for ExtendOptions {
    fn default() -> Self {
        ExtendOptions {
            alpha_center: Scalar::one(),
            center_name: "c".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub algebra: ConformalAlgebra,
    pub center: usize,
    pub cocycle: Cocycle,
    pub certificate: CheckReport,
}

/// Coefficient of `c` in the extension's skew-symmetry residual:
/// `f_λ(u, v) + (−1)^{|u||v|} f_{−λ}(v, u)`.
fn skew_residual(r: &ConformalAlgebra, f: &Cocycle, u: usize, v: usize) -> FormalPoly {
    let back = f
        .form(v, u)
        .substitute(&[(FormalVar::Lambda, FormalPoly::var(FormalVar::Lambda).neg())]);
    let back = back.scale(&Scalar::one().sign(sign_flip(r.parity(u), r.parity(v))));
    f.form(u, v).add(&back)
}

/// Coefficient of `c` in the extension's Hom-Jacobi residual:
/// `f_λ(α(a), [b_μ c]) − f_{λ+μ}([a_λ b], α(c)) − (−1)^{|a||b|} f_μ(α(b), [a_λ c])`.
fn jacobi_residual(r: &ConformalAlgebra, f: &Cocycle, a: usize, b: usize, c: usize) -> FormalPoly {
    let lam = FormalPoly::var(FormalVar::Lambda);
    let mu = FormalPoly::var(FormalVar::Mu);
    let g = ConformalElement::generator;
    let lhs = f.eval(
        &r.apply_alpha(&g(a)),
        &r.bracket_at(&g(b), &g(c), &mu),
        &lam,
    );
    let t1 = f.eval(
        &r.bracket_at(&g(a), &g(b), &lam),
        &r.apply_alpha(&g(c)),
        &lam.add(&mu),
    );
    let t2 = f.eval(
        &r.apply_alpha(&g(b)),
        &r.bracket_at(&g(a), &g(c), &lam),
        &mu,
    );
    let t2 = t2.scale(&Scalar::one().sign(sign_flip(r.parity(a), r.parity(b))));
    lhs.sub(&t1).sub(&t2)
}

fn scalar_witness(axiom: &str, args: Vec<String>, label: &str, p: &FormalPoly) -> Option<Witness> {
    (!p.is_zero()).then(|| Witness {
        axiom: axiom.into(),
        args,
        residual: p
            .terms()
            .map(|(e, c)| {
                (
                    format!("{}{label}", crate::exactalg::monomial_label(e)),
                    c.clone(),
                )
            })
            .collect(),
    })
}

/// Skew-symmetry and Hom-Jacobi of `f` as polynomial identities, on
/// generator pairs and triples.
pub fn check_cocycle(r: &ConformalAlgebra, f: &Cocycle) -> CheckReport {
    let n = r.dim();
    let name = |i: usize| r.generators.name(i).to_string();
    let skew = par::flat_map_indices(n * n, |t| {
        let (u, v) = (t / n, t % n);
        scalar_witness(
            "cocycle-skew-symmetry",
            vec![name(u), name(v)],
            "·c",
            &skew_residual(r, f, u, v),
        )
        .into_iter()
        .collect()
    });
    let jacobi = par::flat_map_indices(n * n * n, |t| {
        let (a, b, c) = (t / (n * n), (t / n) % n, t % n);
        let p = jacobi_residual(r, f, a, b, c);
        scalar_witness(
            "cocycle-hom-jacobi",
            vec![name(a), name(b), name(c)],
            "·c",
            &p,
        )
        .into_iter()
        .collect()
    });
    CheckReport::from_witnesses(skew).merge(CheckReport::from_witnesses(jacobi))
}

/// Unknown `f_degree(left, right)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CocycleSlot {
    pub degree: usize,
    pub left: usize,
    pub right: usize,
}

/// The cocycle conditions as a homogeneous linear system in the slots.
#[derive(Clone, Debug)]
pub struct CocycleConstraints {
    pub slots: Vec<CocycleSlot>,
    pub system: LinearSystem,
}

/// Rows: (0 for skew / 1 for Jacobi, generator indices, monomial in λ, μ).
type RowKey = (u8, Vec<usize>, Exps);

pub fn cocycle_constraints(r: &ConformalAlgebra, max_degree: usize) -> CocycleConstraints {
    let n = r.dim();
    let slots: Vec<CocycleSlot> = (0..=max_degree)
        .flat_map(|degree| {
            (0..n).flat_map(move |left| {
                (0..n).map(move |right| CocycleSlot {
                    degree,
                    left,
                    right,
                })
            })
        })
        .filter(|s| r.parity(s.left) == r.parity(s.right))
        .collect();
    let columns: Vec<BTreeMap<RowKey, Scalar>> = par::map_indices(slots.len(), |k| {
        let s = slots[k];
        let unit = Cocycle::from_entries([(s.degree, s.left, s.right, Scalar::one())]);
        let mut col = BTreeMap::new();
        let mut put = |kind: u8, args: Vec<usize>, p: FormalPoly| {
            for (e, c) in p.terms() {
                col.insert((kind, args.clone(), *e), c.clone());
            }
        };
        for u in 0..n {
            for v in 0..n {
                put(0, vec![u, v], skew_residual(r, &unit, u, v));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    put(1, vec![a, b, c], jacobi_residual(r, &unit, a, b, c));
                }
            }
        }
        col
    });
    let names = slots
        .iter()
        .map(|s| {
            let g = &r.generators;
            format!("f{}({},{})", s.degree, g.name(s.left), g.name(s.right))
        })
        .collect();
    CocycleConstraints {
        system: system_from_columns(names, &columns),
        slots,
    }
}

/// The space of cocycles of degree at most `max_degree`.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub max_degree: usize,
    pub slots: Vec<CocycleSlot>,
    pub space: SolutionSpace,
}

impl CocycleSpace {
    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    pub fn cocycle(&self, values: &[Scalar]) -> Cocycle {
        Cocycle::from_entries(
            self.slots
                .iter()
                .zip(values)
                .map(|(s, c)| (s.degree, s.left, s.right, c.clone())),
        )
    }

    pub fn basis(&self) -> Vec<Cocycle> {
        self.space.kernel.iter().map(|k| self.cocycle(k)).collect()
    }
}

pub fn solve_cocycle_space(r: &ConformalAlgebra, max_degree: usize) -> CocycleSpace {
    let c = cocycle_constraints(r, max_degree);
    CocycleSpace {
        max_degree,
        space: solve_linear(&c.system).expect("homogeneous systems are consistent"),
        slots: c.slots,
    }
}

/// `R ⊕ ℂc` with `[u_λ v]^ = [u_λ v] + f_λ(u, v)c`, `∂c = 0`, `c` central.
pub fn extend(
    r: &ConformalAlgebra,
    f: &Cocycle,
    opts: &ExtendOptions,
) -> Result<CentralExtension, CextError> {
    f.validate(&r.generators)?;
    let report = check_cocycle(r, f);
    if !report.passed() {
        return Err(CextError::NotACocycle(report));
    }
    let algebra = extend_unchecked(r, f, opts)?;
    let certificate = algebra.check_axioms();
    Ok(CentralExtension {
        center: r.dim(),
        algebra,
        cocycle: f.clone(),
        certificate,
    })
}

/// The extension table without the cocycle gate.
pub fn extend_unchecked(
    r: &ConformalAlgebra,
    f: &Cocycle,
    opts: &ExtendOptions,
) -> Result<ConformalAlgebra, CextError> {
    f.validate(&r.generators)?;
    let n = r.dim();
    let mut elems: Vec<(String, Parity)> = r
        .generators
        .elements()
        .iter()
        .map(|e| (e.name.clone(), e.parity))
        .collect();
    elems.push((opts.center_name.clone(), Parity::Even));
    let mut out = ConformalAlgebra::new(SuperBasis::new(elems)?).with_params(r.params.clone());
    out.set_torsion(n)?;
    for u in 0..n {
        for v in 0..n {
            let mut value = r.bracket_entry(u, v);
            value.add_term(n, &f.form(u, v));
            out.set_bracket(u, v, value)?;
        }
    }
    let alpha = (0..n)
        .map(|i| (i, r.alpha_entry(i)))
        .chain([(n, ConformalElement::generator(n).scale(&opts.alpha_center))]);
    Ok(out.with_alpha_table(alpha)?)
}

/// The relations satisfied by a cocycle `f` of the quadratic algebra of
/// `g`. With `n` the highest nonzero power of `λ`: for `n > 3`, the top
/// component vanishes on `(u∘v, α(w))`; otherwise the components have the
/// graded symmetry `f_i(u,v) = (−1)^{|u||v|+i+1} f_i(v,u)` and satisfy eight
/// identities linking consecutive components through `[·,·]`, `∘` and `α`.
pub fn verify_theorem51(g: &GDStructure, f: &Cocycle) -> Result<CheckReport, CextError> {
    let r = quadratic_from_gd(g)?;
    f.validate(&r.generators)?;
    let hypothesis = check_cocycle(&r, f);
    if !hypothesis.passed() {
        return Err(CextError::HypothesisFailed(hypothesis));
    }
    theorem51_relations(g, f)
}

/// The relations of `verify_theorem51` without the cocycle gate.
pub fn theorem51_relations(g: &GDStructure, f: &Cocycle) -> Result<CheckReport, CextError> {
    let a = &g.algebra;
    let (br, circ, alpha) = (
        a.product(&g.bracket)?,
        a.product(&g.circ)?,
        a.map(&g.alpha)?,
    );
    let basis = &a.basis;
    let dim = a.dim();
    let name = |i: usize| basis.name(i).to_string();
    let sgn = |x: usize, y: usize| Scalar::one().sign(sign_flip(basis.parity(x), basis.parity(y)));
    let witness = |axiom: &str, args: Vec<String>, value: Scalar| {
        (!value.is_zero()).then(|| Witness {
            axiom: axiom.into(),
            args,
            residual: vec![("c".into(), value)],
        })
    };
    let n = f.degree();
    if n > 3 {
        let found = par::flat_map_indices(dim * dim * dim, |t| {
            let (u, v, w) = (t / (dim * dim), (t / dim) % dim, t % dim);
            let value = f.bilinear(n, &circ.apply_basis(u, v), &alpha.apply_basis(w));
            witness(
                "top-degree-vanishing",
                vec![name(u), name(v), name(w)],
                value,
            )
            .into_iter()
            .collect()
        });
        return Ok(CheckReport::from_witnesses(found));
    }
    let mut found = Vec::new();
    for i in 0..=3 {
        for u in 0..dim {
            for v in 0..dim {
                let odd = sign_flip(basis.parity(u), basis.parity(v)) != (i % 2 == 0);
                let value = &f.get(i, u, v) - &f.get(i, v, u).sign(odd);
                found.extend((!value.is_zero()).then(|| Witness {
                    axiom: "component-symmetry".into(),
                    args: vec![name(u), name(v)],
                    residual: vec![(format!("Lm^{i}·c"), value)],
                }));
            }
        }
    }
    let relations = par::flat_map_indices(dim * dim * dim, |t| {
        let (u, v, w) = (t / (dim * dim), (t / dim) % dim, t % dim);
        let b = |x: usize, y: usize| br.apply_basis(x, y);
        let o = |x: usize, y: usize| circ.apply_basis(x, y);
        let al = |x: usize| alpha.apply_basis(x);
        let fi = |i: usize, x: &Vector, y: &Vector| f.bilinear(i, x, y);
        let (suv, suw, svw) = (sgn(u, v), sgn(u, w), sgn(v, w));
        // w∘u + (−1)^{|u||w|} u∘w and w∘v + (−1)^{|v||w|} v∘w.
        let sym_u = &o(w, u) + &o(u, w).scale(&suw);
        let sym_v = &o(w, v) + &o(v, w).scale(&svw);
        let values = [
            (
                "f3-circ-left",
                &(&suv * &fi(3, &o(u, v), &al(w))) - &fi(3, &al(u), &o(w, v)),
            ),
            (
                "f3-circ-right",
                &fi(3, &al(u), &o(w, v)) - &fi(3, &o(v, u), &al(w)),
            ),
            (
                "f3-f2-bracket",
                &(&(&fi(3, &b(v, u), &al(w)) + &(&suv * &fi(2, &o(u, v), &al(w))))
                    - &fi(3, &al(u), &b(w, v)))
                    - &fi(2, &al(u), &o(w, v)),
            ),
            (
                "f3-f2-circ",
                &(&(&(&Scalar::int(3) * &fi(3, &b(v, u), &al(w)))
                    - &(&Scalar::int(2) * &fi(2, &o(v, u), &al(w))))
                    + &(&suv * &fi(2, &o(u, v), &al(w))))
                    + &(&suv * &fi(2, &al(v), &sym_u)),
            ),
            (
                "f2-f1-bracket",
                &(&(&fi(2, &b(v, u), &al(w)) + &(&suv * &fi(1, &o(u, v), &al(w))))
                    - &fi(2, &al(u), &b(w, v)))
                    - &fi(1, &al(u), &o(w, v)),
            ),
            (
                "f2-f1-circ",
                &(&(&(&fi(1, &al(u), &sym_v) - &(&suv * &fi(1, &al(v), &sym_u)))
                    - &(&Scalar::int(2) * &fi(2, &b(v, u), &al(w))))
                    + &fi(1, &o(v, u), &al(w)))
                    - &(&suv * &fi(1, &o(u, v), &al(w))),
            ),
            (
                "f1-f0-mixed",
                &(&(&(&fi(1, &al(u), &b(w, v)) + &fi(0, &al(u), &o(w, v)))
                    - &(&suv * &fi(0, &al(v), &sym_u)))
                    - &fi(1, &b(v, u), &al(w)))
                    - &(&suv * &fi(0, &o(u, v), &al(w))),
            ),
            (
                "f0-bracket",
                &(&fi(0, &al(u), &b(w, v)) - &(&suv * &fi(0, &al(v), &b(w, u))))
                    - &fi(0, &b(v, u), &al(w)),
            ),
        ];
        values
            .into_iter()
            .filter_map(|(axiom, value)| witness(axiom, vec![name(u), name(v), name(w)], value))
            .collect()
    });
    found.extend(relations);
    Ok(CheckReport::from_witnesses(found))
}
