use std::collections::BTreeMap;

use crate::exactalg::{kernel_from_columns, Exps, FormalPoly, Scalar, SolutionSpace};
use crate::par;

use super::{ConformalAlgebra, ConformalElement, ConformalError};

/// Unknown coefficient of `∂^degree · u_target` in `α(u_source)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlphaSlot {
    pub source: usize,
    pub target: usize,
    pub degree: u32,
}

/// Every admissible twist up to the degree bound, as a linear space of
/// coefficient vectors.
#[derive(Clone, Debug)]
pub struct AlphaSpace {
    pub degree_bound: u32,
    pub slots: Vec<AlphaSlot>,
    pub space: SolutionSpace,
}

impl AlphaSpace {
    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    /// The twist table with the given slot values.
    pub fn table(&self, values: &[Scalar]) -> BTreeMap<usize, ConformalElement> {
        let mut out: BTreeMap<usize, ConformalElement> = BTreeMap::new();
        for (slot, c) in self.slots.iter().zip(values) {
            let p = FormalPoly::monomial([slot.degree, 0, 0], c.clone());
            out.entry(slot.source)
                .or_default()
                .add_term(slot.target, &p);
        }
        out
    }

    /// One twist table per kernel basis vector.
    pub fn basis_tables(&self) -> Vec<BTreeMap<usize, ConformalElement>> {
        self.space.kernel.iter().map(|k| self.table(k)).collect()
    }

    pub fn slot_name(&self, r: &ConformalAlgebra, s: &AlphaSlot) -> String {
        let g = &r.generators;
        format!(
            "α({})[∂^{}·{}]",
            g.name(s.source),
            s.degree,
            g.name(s.target)
        )
    }
}

/// Hom-Jacobi residual coefficients keyed by triple, generator and monomial.
type Column = BTreeMap<(usize, usize, usize, usize, Exps), Scalar>;

/// Solves for every even `α` with polynomial entries of `∂`-degree at most
/// `degree_bound` (default: largest `∂`-degree in the table plus one) making
/// the Hom-Jacobi identity hold. The identity is linear in `α`, so the
/// columns of the system are the residuals of single-entry twists.
pub fn solve_alpha(
    r: &ConformalAlgebra,
    degree_bound: Option<u32>,
) -> Result<AlphaSpace, ConformalError> {
    let skew = r.check_skew();
    if !skew.passed() {
        return Err(ConformalError::PreconditionFailed {
            what: "λ-bracket skew-symmetry".into(),
            report: skew,
        });
    }
    let bound = degree_bound.unwrap_or_else(|| r.max_d_degree() + 1);
    let n = r.dim();
    let slots: Vec<AlphaSlot> = (0..n)
        .flat_map(|source| (0..n).map(move |target| (source, target)))
        .filter(|&(s, t)| r.parity(s) == r.parity(t))
        .flat_map(|(source, target)| {
            let top = if r.torsion[target] { 0 } else { bound };
            (0..=top).map(move |degree| AlphaSlot {
                source,
                target,
                degree,
            })
        })
        .collect();
    let columns: Vec<Column> = par::map_indices(slots.len(), |idx| {
        let s = slots[idx];
        let mut single = r.clone();
        single.alpha.clear();
        single.alpha.insert(
            s.source,
            ConformalElement::term(
                s.target,
                FormalPoly::monomial([s.degree, 0, 0], Scalar::one()),
            ),
        );
        let mut col = Column::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for (k, p) in single.jacobi_residual(a, b, c).iter() {
                        for (e, coeff) in p.terms() {
                            col.insert((a, b, c, k, *e), coeff.clone());
                        }
                    }
                }
            }
        }
        col
    });
    let mut out = AlphaSpace {
        degree_bound: bound,
        slots,
        space: SolutionSpace {
            unknowns: Vec::new(),
            particular: Vec::new(),
            kernel: Vec::new(),
            pivots: Vec::new(),
        },
    };
    let names = out.slots.iter().map(|s| out.slot_name(r, s)).collect();
    out.space = kernel_from_columns(names, &columns);
    Ok(out)
}
