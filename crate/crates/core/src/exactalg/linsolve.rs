use std::collections::BTreeMap;

use super::scalar::Scalar;
use super::ExactError;

/// Sparse row `Σ coeffs[j]·x_j = rhs`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearEquation {
    pub coeffs: BTreeMap<usize, Scalar>,
    pub rhs: Scalar,
}

impl LinearEquation {
    pub fn homogeneous(coeffs: BTreeMap<usize, Scalar>) -> Self {
        LinearEquation {
            coeffs,
            rhs: Scalar::zero(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.is_empty() && self.rhs.is_zero()
    }

    /// `lhs − rhs` at the given point.
    pub fn residual(&self, x: &[Scalar]) -> Scalar {
        let lhs = self
            .coeffs
            .iter()
            .fold(Scalar::zero(), |acc, (&j, c)| &acc + &(c * &x[j]));
        &lhs - &self.rhs
    }
}

#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub unknowns: Vec<String>,
    pub equations: Vec<LinearEquation>,
}

impl LinearSystem {
    pub fn new(unknowns: Vec<String>) -> Self {
        LinearSystem {
            unknowns,
            equations: Vec::new(),
        }
    }

    pub fn push(&mut self, eq: LinearEquation) {
        if !eq.is_trivial() {
            self.equations.push(eq);
        }
    }
}

/// Affine solution set `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSpace {
    pub unknowns: Vec<String>,
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl SolutionSpace {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    /// `particular + Σ t_i kernel_i`.
    pub fn point(&self, t: &[Scalar]) -> Vec<Scalar> {
        let mut x = self.particular.clone();
        for (k, ti) in self.kernel.iter().zip(t) {
            for (xj, kj) in x.iter_mut().zip(k) {
                *xj = &*xj + &(kj * ti);
            }
        }
        x
    }
}

struct Row {
    pivot: usize,
    coeffs: BTreeMap<usize, Scalar>,
    rhs: Scalar,
}

fn axpy(target: &mut BTreeMap<usize, Scalar>, rhs: &mut Scalar, c: &Scalar, row: &Row) {
    for (&j, a) in &row.coeffs {
        let v = match target.get(&j) {
            Some(old) => old - &(c * a),
            None => -(c * a),
        };
        if v.is_zero() {
            target.remove(&j);
        } else {
            target.insert(j, v);
        }
    }
    *rhs = &*rhs - &(c * &row.rhs);
}

/// Gaussian elimination to reduced row echelon form over ℚ(params).
pub fn solve_linear(system: &LinearSystem) -> Result<SolutionSpace, ExactError> {
    let n = system.unknowns.len();
    let mut rows: Vec<Row> = Vec::new();
    let mut pivot_row: BTreeMap<usize, usize> = BTreeMap::new();
    for (idx, eq) in system.equations.iter().enumerate() {
        let mut coeffs: BTreeMap<usize, Scalar> = eq
            .coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&j, c)| (j, c.clone()))
            .collect();
        if let Some(&j) = coeffs.keys().find(|&&j| j >= n) {
            return Err(ExactError::UnknownIndex(j));
        }
        let mut rhs = eq.rhs.clone();
        let hits: Vec<usize> = coeffs
            .keys()
            .filter(|j| pivot_row.contains_key(j))
            .copied()
            .collect();
        for j in hits {
            if let Some(c) = coeffs.get(&j).cloned() {
                axpy(&mut coeffs, &mut rhs, &c, &rows[pivot_row[&j]]);
            }
        }
        let Some((&p, lead)) = coeffs.iter().next() else {
            if rhs.is_zero() {
                continue;
            }
            return Err(ExactError::Inconsistent { equation: idx });
        };
        let inv = lead.inv()?;
        for c in coeffs.values_mut() {
            *c = &*c * &inv;
        }
        let new = Row {
            pivot: p,
            coeffs,
            rhs: &rhs * &inv,
        };
        for row in rows.iter_mut() {
            if let Some(c) = row.coeffs.get(&p).cloned() {
                axpy(&mut row.coeffs, &mut row.rhs, &c, &new);
            }
        }
        pivot_row.insert(p, rows.len());
        rows.push(new);
    }

    let mut particular = vec![Scalar::zero(); n];
    for row in &rows {
        particular[row.pivot] = row.rhs.clone();
    }
    let kernel = (0..n)
        .filter(|j| !pivot_row.contains_key(j))
        .map(|free| {
            let mut v = vec![Scalar::zero(); n];
            v[free] = Scalar::one();
            for row in &rows {
                if let Some(c) = row.coeffs.get(&free) {
                    v[row.pivot] = -c;
                }
            }
            v
        })
        .collect();
    Ok(SolutionSpace {
        unknowns: system.unknowns.clone(),
        particular,
        kernel,
        pivots: pivot_row.keys().copied().collect(),
    })
}

/// The homogeneous system whose `j`-th column is `columns[j]`, one equation
/// per row label.
pub fn system_from_columns<K: Ord + Clone>(
    unknowns: Vec<String>,
    columns: &[BTreeMap<K, Scalar>],
) -> LinearSystem {
    let mut rows: BTreeMap<K, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (k, c) in col {
            if !c.is_zero() {
                rows.entry(k.clone()).or_default().insert(j, c.clone());
            }
        }
    }
    let mut sys = LinearSystem::new(unknowns);
    for (_, row) in rows {
        sys.push(LinearEquation::homogeneous(row));
    }
    sys
}

/// Kernel of the linear map whose `j`-th column is `columns[j]`, rows keyed
/// by any ordered label.
pub fn kernel_from_columns<K: Ord + Clone>(
    unknowns: Vec<String>,
    columns: &[BTreeMap<K, Scalar>],
) -> SolutionSpace {
    solve_linear(&system_from_columns(unknowns, columns))
        .expect("homogeneous systems are consistent")
}
