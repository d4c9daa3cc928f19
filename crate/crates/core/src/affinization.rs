//! The loop superalgebra `𝒜 ⊗ t^{ℤ + |u|/2}` built from Gel'fand-Dorfman
//! data, checked either on a finite index window or symbolically in formal
//! indices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use crate::constructions::GDStructure;
use crate::exactalg::Scalar;
use crate::par;
use crate::superalgebra::{
    sign_flip, AlgebraError, CheckReport, EvenMap, Parity, ProductTable, SuperBasis, Vector,
    Witness,
};

/// `u ⊗ t^{degree2 / 2}`, so `u[m]` has `degree2 = 2m + |u|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopElement {
    pub base: usize,
    pub degree2: i64,
}

impl LoopElement {
    /// `u[m]` in the paper's indexing.
    pub fn new(basis: &SuperBasis, base: usize, m: i64) -> Self {
        LoopElement {
            base,
            degree2: 2 * m + i64::from(basis.parity(base).bit()),
        }
    }

    /// The index `m` of `u[m]`.
    pub fn index(&self) -> i64 {
        (self.degree2 - (self.degree2 & 1)) / 2
    }

    pub fn name(&self, basis: &SuperBasis) -> String {
        format!("{}[{}]", basis.name(self.base), self.index())
    }
}

/// Finite sum of loop elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoopVector(BTreeMap<LoopElement, Scalar>);

impl LoopVector {
    pub fn zero() -> Self {
        LoopVector::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, e: &LoopElement) -> Scalar {
        self.0.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LoopElement, &Scalar)> {
        self.0.iter()
    }

    fn add_vector(&mut self, v: &Vector, degree2: i64, c: &Scalar) {
        for (i, a) in v.iter() {
            let e = LoopElement { base: i, degree2 };
            let sum = &self.get(&e) + &(a * c);
            if sum.is_zero() {
                self.0.remove(&e);
            } else {
                self.0.insert(e, sum);
            }
        }
    }

    pub fn render(&self, basis: &SuperBasis) -> Vec<(String, Scalar)> {
        self.0
            .iter()
            .map(|(e, c)| (e.name(basis), c.clone()))
            .collect()
    }
}

/// Verification mode for the loop algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineMode {
    /// All loop triples with every index in the window.
    Window(RangeInclusive<i64>),
    /// Polynomial identities in formal indices `m, n, k`.
    Delta,
}

impl AffineMode {
    pub fn default_window() -> Self {
        AffineMode::Window(-3..=3)
    }
}

impl fmt::Display for AffineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineMode::Window(w) => write!(f, "window {}..{}", w.start(), w.end()),
            AffineMode::Delta => write!(f, "delta"),
        }
    }
}

/// Homogeneous term with a symbolic or concrete `t`-exponent.
#[derive(Clone)]
struct Term {
    v: Vector,
    parity: Parity,
    exponent: Scalar,
}

/// The loop bracket and twist `φ` derived from Gel'fand-Dorfman data.
#[derive(Clone, Debug)]
pub struct Affinization {
    basis: SuperBasis,
    params: Vec<String>,
    bracket: ProductTable,
    circ: ProductTable,
    alpha: EvenMap,
}

impl Affinization {
    pub fn new(g: &GDStructure) -> Result<Self, AlgebraError> {
        let a = &g.algebra;
        Ok(Affinization {
            basis: a.basis.clone(),
            params: a.params.clone(),
            bracket: a.product(&g.bracket)?.clone(),
            circ: a.product(&g.circ)?.clone(),
            alpha: a.map(&g.alpha)?.clone(),
        })
    }

    pub fn basis(&self) -> &SuperBasis {
        &self.basis
    }

    /// Names for the formal indices that avoid the declared parameters.
    pub fn index_names(&self) -> [String; 3] {
        ["m", "n", "k"].map(|base| {
            let mut name = base.to_string();
            while self.params.contains(&name) {
                name.push('\'');
            }
            name
        })
    }

    /// `[u ⊗ t^a, v ⊗ t^b]` split by `t`-exponent: `[u,v] ⊗ t^{a+b}` and
    /// `(a u∘v − (−1)^{|u||v|} b v∘u) ⊗ t^{a+b−1}`.
    fn bracket_terms(&self, x: &Term, y: &Term) -> [Vector; 2] {
        let top = self.bracket.apply(&x.v, &y.v);
        let xy = self.circ.apply(&x.v, &y.v).scale(&x.exponent);
        let yx = self.circ.apply(&y.v, &x.v).scale(&y.exponent);
        let lower = if sign_flip(x.parity, y.parity) {
            &xy + &yx
        } else {
            &xy - &yx
        };
        [top, lower]
    }

    /// Bracket of two loop elements.
    pub fn loop_bracket(&self, e1: LoopElement, e2: LoopElement) -> LoopVector {
        let [top, lower] = self.bracket_terms(&self.term(e1), &self.term(e2));
        let d = e1.degree2 + e2.degree2;
        let mut out = LoopVector::zero();
        out.add_vector(&top, d, &Scalar::one());
        out.add_vector(&lower, d - 2, &Scalar::one());
        out
    }

    /// Bracket of `u[m]` and `v[n]` for formal `m, n`: the coefficients of
    /// `t^{m+n+(|u|+|v|)/2}` and of the next lower power.
    pub fn formal_bracket(&self, u: usize, v: usize) -> [Vector; 2] {
        let [m, n, _] = self.index_names();
        self.bracket_terms(&self.formal_term(u, &m), &self.formal_term(v, &n))
    }

    /// `φ(u ⊗ t^a) = α(u) ⊗ t^a`.
    pub fn apply_phi(&self, e: LoopElement) -> LoopVector {
        let mut out = LoopVector::zero();
        out.add_vector(&self.alpha.apply_basis(e.base), e.degree2, &Scalar::one());
        out
    }

    fn term(&self, e: LoopElement) -> Term {
        Term {
            v: Vector::basis(e.base),
            parity: self.basis.parity(e.base),
            exponent: Scalar::rational(e.degree2, 2),
        }
    }

    fn formal_term(&self, i: usize, index: &str) -> Term {
        let p = self.basis.parity(i);
        Term {
            v: Vector::basis(i),
            parity: p,
            exponent: &Scalar::param(index) + &Scalar::rational(i64::from(p.bit()), 2),
        }
    }

    /// Skew-symmetry residual split by exponent offset.
    fn skew(&self, x: &Term, y: &Term) -> [Vector; 2] {
        let a = self.bracket_terms(x, y);
        let b = self.bracket_terms(y, x);
        let s = sign_flip(x.parity, y.parity);
        [0, 1].map(|j| if s { &a[j] - &b[j] } else { &a[j] + &b[j] })
    }

    /// Cyclic Hom-Jacobi sum split into the coefficients of
    /// `t^{top}`, `t^{top−1}`, `t^{top−2}` (`Δ₁`, `Δ₂`, `Δ₃`).
    fn jacobiator(&self, x: &Term, y: &Term, z: &Term) -> [Vector; 3] {
        let mut delta = [Vector::zero(), Vector::zero(), Vector::zero()];
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            let negative = sign_flip(a.parity, c.parity);
            let inner = self.bracket_terms(a, b);
            let twisted = Term {
                v: self.alpha.apply(&c.v),
                ..c.clone()
            };
            for (j, v) in inner.into_iter().enumerate() {
                let outer = Term {
                    v,
                    parity: a.parity + b.parity,
                    exponent: &(&a.exponent + &b.exponent) - &Scalar::int(j as i64),
                };
                for (l, w) in self.bracket_terms(&outer, &twisted).into_iter().enumerate() {
                    let c = if negative {
                        -Scalar::one()
                    } else {
                        Scalar::one()
                    };
                    delta[j + l].add_scaled(&w, &c);
                }
            }
        }
        delta
    }

    pub fn check(&self, mode: &AffineMode) -> CheckReport {
        match mode {
            AffineMode::Delta => self.check_delta(),
            AffineMode::Window(w) => self.check_window(w.clone()),
        }
    }

    fn check_delta(&self) -> CheckReport {
        let [m, n, k] = self.index_names();
        let basis = &self.basis;
        let dim = basis.len();
        let label = |i: usize, idx: &str| format!("{}[{idx}]", basis.name(i));
        let mut witnesses: Vec<Witness> = par::flat_map_indices(dim * dim, |t| {
            let (i, j) = (t / dim, t % dim);
            let r = self.skew(&self.formal_term(i, &m), &self.formal_term(j, &n));
            let args = [label(i, &m), label(j, &n)];
            (0..2)
                .filter_map(|d| delta_witness(basis, SKEW_IDS[d], &args, &r[d]))
                .collect()
        });
        witnesses.extend(par::flat_map_indices(dim * dim * dim, |t| {
            let (i, j, l) = (t / (dim * dim), (t / dim) % dim, t % dim);
            let r = self.jacobiator(
                &self.formal_term(i, &m),
                &self.formal_term(j, &n),
                &self.formal_term(l, &k),
            );
            let args = [label(i, &m), label(j, &n), label(l, &k)];
            (0..3)
                .filter_map(|d| delta_witness(basis, DELTA_IDS[d], &args, &r[d]))
                .collect::<Vec<_>>()
        }));
        CheckReport::from_witnesses(witnesses)
    }

    fn check_window(&self, window: RangeInclusive<i64>) -> CheckReport {
        let elems: Vec<LoopElement> = window
            .flat_map(|m| (0..self.basis.len()).map(move |i| (i, m)))
            .map(|(i, m)| LoopElement::new(&self.basis, i, m))
            .collect();
        let n = elems.len();
        let basis = &self.basis;
        let names = |es: &[LoopElement]| es.iter().map(|e| e.name(basis)).collect::<Vec<_>>();
        let mut witnesses: Vec<Witness> = par::flat_map_indices(n * n, |t| {
            let (a, b) = (elems[t / n], elems[t % n]);
            let r = self.skew(&self.term(a), &self.term(b));
            let top = a.degree2 + b.degree2;
            (0..2)
                .filter_map(|d| {
                    loop_witness(
                        basis,
                        SKEW_IDS[d],
                        names(&[a, b]),
                        &r[d],
                        top - 2 * d as i64,
                    )
                })
                .collect()
        });
        witnesses.extend(par::flat_map_indices(n * n * n, |t| {
            let (a, b, c) = (elems[t / (n * n)], elems[(t / n) % n], elems[t % n]);
            let r = self.jacobiator(&self.term(a), &self.term(b), &self.term(c));
            let top = a.degree2 + b.degree2 + c.degree2;
            (0..3)
                .filter_map(|d| {
                    loop_witness(
                        basis,
                        DELTA_IDS[d],
                        names(&[a, b, c]),
                        &r[d],
                        top - 2 * d as i64,
                    )
                })
                .collect::<Vec<_>>()
        }));
        CheckReport::from_witnesses(witnesses)
    }
}

const SKEW_IDS: [&str; 2] = ["loop-skew-symmetry-top", "loop-skew-symmetry-lower"];
const DELTA_IDS: [&str; 3] = [
    "hom-jacobi-delta1",
    "hom-jacobi-delta2",
    "hom-jacobi-delta3",
];

fn delta_witness(basis: &SuperBasis, axiom: &str, args: &[String], r: &Vector) -> Option<Witness> {
    (!r.is_zero()).then(|| Witness {
        axiom: axiom.to_string(),
        args: args.to_vec(),
        residual: r.render(basis),
    })
}

fn loop_witness(
    basis: &SuperBasis,
    axiom: &str,
    args: Vec<String>,
    r: &Vector,
    degree2: i64,
) -> Option<Witness> {
    let mut v = LoopVector::zero();
    v.add_vector(r, degree2, &Scalar::one());
    (!v.is_zero()).then(|| Witness {
        axiom: axiom.to_string(),
        args,
        residual: v.render(basis),
    })
}
