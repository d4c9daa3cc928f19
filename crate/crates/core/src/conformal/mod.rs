//! Hom-Lie conformal superalgebras on finitely generated `ℂ[∂]`-modules:
//! λ-brackets stored on generators, extended by sesquilinearity, and the
//! quadratic correspondence with Gel'fand-Dorfman data.

mod quadratic;
mod solve;

use std::collections::BTreeMap;
use std::fmt;

use crate::exactalg::{monomial_label, FormalPoly, FormalVar, Scalar};
use crate::par;
use crate::superalgebra::{sign_flip, AlgebraError, CheckReport, Parity, SuperBasis, Witness};

pub use quadratic::{current_conformal, gd_from_quadratic, quadratic_from_gd};
pub use solve::{solve_alpha, AlphaSlot, AlphaSpace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConformalError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{entry}: coefficient of `{target}` changes parity")]
    Parity { entry: String, target: String },
    #[error("{entry}: `{var}` is not allowed here")]
    Variable { entry: String, var: &'static str },
    #[error("{entry}: torsion generator `{target}` cannot carry ∂")]
    Torsion { entry: String, target: String },
    #[error("not quadratic at {entry}: {reason}")]
    NotQuadratic { entry: String, reason: String },
    #[error("precondition failed: {what}\n{report}")]
    PreconditionFailed { what: String, report: CheckReport },
}

/// `Σ p_i · u_i` with `p_i` polynomial in `∂` (and, inside computations,
/// in `λ`, `μ`). Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConformalElement(BTreeMap<usize, FormalPoly>);

impl ConformalElement {
    pub fn zero() -> Self {
        ConformalElement::default()
    }

    /// The generator `u_i`.
    pub fn generator(i: usize) -> Self {
        ConformalElement::term(i, FormalPoly::one())
    }

    pub fn term(i: usize, p: FormalPoly) -> Self {
        let mut e = ConformalElement::zero();
        e.add_term(i, &p);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, FormalPoly)>) -> Self {
        let mut e = ConformalElement::zero();
        for (i, p) in terms {
            e.add_term(i, &p);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> FormalPoly {
        self.0.get(&i).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &FormalPoly)> {
        self.0.iter().map(|(&i, p)| (i, p))
    }

    pub fn add_term(&mut self, i: usize, p: &FormalPoly) {
        let sum = self.coeff(i).add(p);
        if sum.is_zero() {
            self.0.remove(&i);
        } else {
            self.0.insert(i, sum);
        }
    }

    pub fn add(&self, other: &ConformalElement) -> ConformalElement {
        let mut out = self.clone();
        for (i, p) in other.iter() {
            out.add_term(i, p);
        }
        out
    }

    pub fn sub(&self, other: &ConformalElement) -> ConformalElement {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> ConformalElement {
        self.mul_poly(&FormalPoly::constant(c.clone()))
    }

    pub fn mul_poly(&self, p: &FormalPoly) -> ConformalElement {
        ConformalElement::from_terms(self.iter().map(|(i, q)| (i, q.mul(p))))
    }

    /// `∂` applied to the element.
    pub fn derivative(&self) -> ConformalElement {
        self.mul_poly(&FormalPoly::var(FormalVar::D))
    }

    /// Coefficients paired with monomials, for witnesses and reports.
    pub fn render(&self, basis: &SuperBasis) -> Vec<(String, Scalar)> {
        self.iter()
            .flat_map(|(i, p)| {
                let name = basis.name(i).to_string();
                p.terms()
                    .map(move |(e, c)| (format!("{}·{}", monomial_label(e), name), c.clone()))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    pub fn display<'a>(&'a self, basis: &'a SuperBasis) -> impl fmt::Display + 'a {
        DisplayElement(self, basis)
    }
}

struct DisplayElement<'a>(&'a ConformalElement, &'a SuperBasis);

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(i, p)| {
                let name = self.1.name(i);
                match p.as_constant() {
                    Some(c) if c.is_one() => name.to_string(),
                    _ => format!("({p})·{name}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A conformal superalgebra generated over `ℂ[∂]` by `generators`; the
/// generators flagged in `torsion` satisfy `∂u = 0` (and are then central).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalAlgebra {
    pub generators: SuperBasis,
    pub torsion: Vec<bool>,
    pub params: Vec<String>,
    bracket: BTreeMap<(usize, usize), ConformalElement>,
    alpha: BTreeMap<usize, ConformalElement>,
}

fn entry_label(basis: &SuperBasis, i: usize, j: usize) -> String {
    format!("[{}_λ {}]", basis.name(i), basis.name(j))
}

impl ConformalAlgebra {
    /// Free module on `generators` with zero bracket and `α = id`.
    pub fn new(generators: SuperBasis) -> Self {
        let n = generators.len();
        ConformalAlgebra {
            torsion: vec![false; n],
            params: Vec::new(),
            bracket: BTreeMap::new(),
            alpha: (0..n)
                .map(|i| (i, ConformalElement::generator(i)))
                .collect(),
            generators,
        }
    }

    pub fn with_params(mut self, params: Vec<String>) -> Self {
        self.params = params;
        self
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.generators.parity(i)
    }

    /// Marks generator `i` as torsion (`∂u_i = 0`).
    pub fn set_torsion(&mut self, i: usize) -> Result<(), ConformalError> {
        self.torsion[i] = true;
        let bad =
            self.bracket
                .iter()
                .map(|((a, b), v)| self.validate(&entry_label(&self.generators, *a, *b), v, true))
                .chain(self.alpha.iter().map(|(a, v)| {
                    self.validate(&format!("α({})", self.generators.name(*a)), v, false)
                }))
                .find(Result::is_err);
        if let Some(err) = bad {
            self.torsion[i] = false;
            return err;
        }
        Ok(())
    }

    fn validate(
        &self,
        entry: &str,
        v: &ConformalElement,
        lambda_allowed: bool,
    ) -> Result<(), ConformalError> {
        for (k, p) in v.iter() {
            if p.mentions(FormalVar::Mu) {
                return Err(ConformalError::Variable {
                    entry: entry.into(),
                    var: "Mu",
                });
            }
            if !lambda_allowed && p.mentions(FormalVar::Lambda) {
                return Err(ConformalError::Variable {
                    entry: entry.into(),
                    var: "Lm",
                });
            }
            if self.torsion[k] && p.mentions(FormalVar::D) {
                return Err(ConformalError::Torsion {
                    entry: entry.into(),
                    target: self.generators.name(k).into(),
                });
            }
        }
        Ok(())
    }

    fn check_parity(
        &self,
        entry: &str,
        v: &ConformalElement,
        expected: Parity,
    ) -> Result<(), ConformalError> {
        match v.iter().find(|&(k, _)| self.parity(k) != expected) {
            Some((k, _)) => Err(ConformalError::Parity {
                entry: entry.into(),
                target: self.generators.name(k).into(),
            }),
            None => Ok(()),
        }
    }

    /// Sets `[u_i λ u_j]`, a polynomial in `∂` and `λ`.
    pub fn set_bracket(
        &mut self,
        i: usize,
        j: usize,
        v: ConformalElement,
    ) -> Result<(), ConformalError> {
        let label = entry_label(&self.generators, i, j);
        self.check_parity(&label, &v, self.parity(i) + self.parity(j))?;
        self.validate(&label, &v, true)?;
        if v.is_zero() {
            self.bracket.remove(&(i, j));
        } else {
            self.bracket.insert((i, j), v);
        }
        Ok(())
    }

    /// Sets `α(u_i)`, a polynomial in `∂` only.
    pub fn set_alpha(&mut self, i: usize, v: ConformalElement) -> Result<(), ConformalError> {
        let label = format!("α({})", self.generators.name(i));
        self.check_parity(&label, &v, self.parity(i))?;
        self.validate(&label, &v, false)?;
        if v.is_zero() {
            self.alpha.remove(&i);
        } else {
            self.alpha.insert(i, v);
        }
        Ok(())
    }

    pub fn with_bracket(
        mut self,
        i: usize,
        j: usize,
        v: ConformalElement,
    ) -> Result<Self, ConformalError> {
        self.set_bracket(i, j, v)?;
        Ok(self)
    }

    pub fn with_alpha(mut self, i: usize, v: ConformalElement) -> Result<Self, ConformalError> {
        self.set_alpha(i, v)?;
        Ok(self)
    }

    /// Stored value of `[u_i λ u_j]` (zero when absent).
    pub fn bracket_entry(&self, i: usize, j: usize) -> ConformalElement {
        self.bracket.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn bracket_entries(&self) -> impl Iterator<Item = ((usize, usize), &ConformalElement)> {
        self.bracket.iter().map(|(&k, v)| (k, v))
    }

    pub fn alpha_entry(&self, i: usize) -> ConformalElement {
        self.alpha.get(&i).cloned().unwrap_or_default()
    }

    pub fn alpha_entries(&self) -> impl Iterator<Item = (usize, &ConformalElement)> {
        self.alpha.iter().map(|(&k, v)| (k, v))
    }

    /// Replaces the whole twist table.
    pub fn with_alpha_table(
        mut self,
        table: impl IntoIterator<Item = (usize, ConformalElement)>,
    ) -> Result<Self, ConformalError> {
        self.alpha.clear();
        for (i, v) in table {
            self.set_alpha(i, v)?;
        }
        Ok(self)
    }

    pub fn element(&self, name: &str) -> Result<ConformalElement, ConformalError> {
        Ok(ConformalElement::generator(self.generators.index_of(name)?))
    }

    /// Drops `∂`-terms on torsion generators.
    fn canon(&self, e: ConformalElement) -> ConformalElement {
        if !self.torsion.iter().any(|&t| t) {
            return e;
        }
        ConformalElement::from_terms(e.iter().map(|(i, p)| {
            let p = if self.torsion[i] {
                p.at_d_zero()
            } else {
                p.clone()
            };
            (i, p)
        }))
    }

    /// `α(p(∂)u) = p(∂)α(u)`; coefficients may involve `λ`, `μ`.
    pub fn apply_alpha(&self, x: &ConformalElement) -> ConformalElement {
        let mut out = ConformalElement::zero();
        for (i, p) in x.iter() {
            out = out.add(&self.alpha_entry(i).mul_poly(p));
        }
        self.canon(out)
    }

    /// `[x_Λ y]` for a bracket variable `Λ` built from `λ`, `μ`, via
    /// `[p(∂)u_Λ q(∂)v] = p(−Λ) q(∂+Λ) [u_Λ v]`.
    pub fn bracket_at(
        &self,
        x: &ConformalElement,
        y: &ConformalElement,
        lam: &FormalPoly,
    ) -> ConformalElement {
        let d = FormalPoly::var(FormalVar::D);
        let shifted = d.add(lam);
        let minus = lam.neg();
        let mut out = ConformalElement::zero();
        for (i, p) in x.iter() {
            let left = p.substitute(&[(FormalVar::D, minus.clone())]);
            for (j, q) in y.iter() {
                let Some(entry) = self.bracket.get(&(i, j)) else {
                    continue;
                };
                let factor = left.mul(&q.substitute(&[(FormalVar::D, shifted.clone())]));
                for (k, r) in entry.iter() {
                    let r = r.substitute(&[(FormalVar::Lambda, lam.clone())]);
                    out.add_term(k, &r.mul(&factor));
                }
            }
        }
        self.canon(out)
    }

    /// `[x_λ y]`.
    pub fn lambda_bracket(&self, x: &ConformalElement, y: &ConformalElement) -> ConformalElement {
        self.bracket_at(x, y, &FormalPoly::var(FormalVar::Lambda))
    }

    /// `[u_λ v] + (−1)^{|u||v|}[v_{−λ−∂} u]` on generators.
    pub fn skew_residual(&self, i: usize, j: usize) -> ConformalElement {
        let sub = FormalPoly::var(FormalVar::Lambda)
            .add(&FormalPoly::var(FormalVar::D))
            .neg();
        let back = ConformalElement::from_terms(
            self.bracket_entry(j, i)
                .iter()
                .map(|(k, p)| (k, p.substitute(&[(FormalVar::Lambda, sub.clone())]))),
        );
        let back = self.canon(back);
        let back = if sign_flip(self.parity(i), self.parity(j)) {
            back.scale(&Scalar::int(-1))
        } else {
            back
        };
        self.bracket_entry(i, j).add(&back)
    }

    /// `[α(a)_λ[b_μ c]] − [[a_λ b]_{λ+μ} α(c)] − (−1)^{|a||b|}[α(b)_μ[a_λ c]]`.
    pub fn jacobi_residual(&self, a: usize, b: usize, c: usize) -> ConformalElement {
        let lam = FormalPoly::var(FormalVar::Lambda);
        let mu = FormalPoly::var(FormalVar::Mu);
        let g = ConformalElement::generator;
        let lhs = self.bracket_at(
            &self.apply_alpha(&g(a)),
            &self.bracket_at(&g(b), &g(c), &mu),
            &lam,
        );
        let t1 = self.bracket_at(
            &self.bracket_at(&g(a), &g(b), &lam),
            &self.apply_alpha(&g(c)),
            &lam.add(&mu),
        );
        let t2 = self.bracket_at(
            &self.apply_alpha(&g(b)),
            &self.bracket_at(&g(a), &g(c), &lam),
            &mu,
        );
        let t2 = if sign_flip(self.parity(a), self.parity(b)) {
            t2.scale(&Scalar::int(-1))
        } else {
            t2
        };
        lhs.sub(&t1).sub(&t2)
    }

    fn witness(&self, axiom: &str, args: &[usize], r: &ConformalElement) -> Option<Witness> {
        (!r.is_zero()).then(|| Witness {
            axiom: axiom.to_string(),
            args: args
                .iter()
                .map(|&i| self.generators.name(i).to_string())
                .collect(),
            residual: r.render(&self.generators),
        })
    }

    pub fn check_skew(&self) -> CheckReport {
        let n = self.dim();
        CheckReport::from_witnesses(par::flat_map_indices(n * n, |t| {
            let (i, j) = (t / n, t % n);
            self.witness(
                "conformal-skew-symmetry",
                &[i, j],
                &self.skew_residual(i, j),
            )
            .into_iter()
            .collect()
        }))
    }

    pub fn check_jacobi(&self) -> CheckReport {
        let n = self.dim();
        CheckReport::from_witnesses(par::flat_map_indices(n * n * n, |t| {
            let (a, b, c) = (t / (n * n), (t / n) % n, t % n);
            self.witness(
                "conformal-hom-jacobi",
                &[a, b, c],
                &self.jacobi_residual(a, b, c),
            )
            .into_iter()
            .collect()
        }))
    }

    /// Skew-symmetry on generator pairs and Hom-Jacobi on generator triples;
    /// sesquilinearity holds by construction.
    pub fn check_axioms(&self) -> CheckReport {
        self.check_skew().merge(self.check_jacobi())
    }

    /// Largest power of `∂` in the bracket table.
    pub fn max_d_degree(&self) -> u32 {
        self.bracket
            .values()
            .flat_map(|v| v.iter().map(|(_, p)| p.degree_in(FormalVar::D)))
            .max()
            .unwrap_or(0)
    }
}
