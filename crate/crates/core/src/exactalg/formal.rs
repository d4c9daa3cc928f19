use std::collections::BTreeMap;
use std::fmt;

use super::scalar::Scalar;

/// The three formal variables of conformal calculus.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FormalVar {
    D,
    Lambda,
    Mu,
}

impl FormalVar {
    pub const ALL: [FormalVar; 3] = [FormalVar::D, FormalVar::Lambda, FormalVar::Mu];

    fn slot(self) -> usize {
        self as usize
    }

    /// Name used by the literal grammar and by reports.
    pub fn symbol(self) -> &'static str {
        match self {
            FormalVar::D => "D",
            FormalVar::Lambda => "Lm",
            FormalVar::Mu => "Mu",
        }
    }
}

/// Exponents of (∂, λ, μ).
pub type Exps = [u32; 3];

/// Polynomial in ∂, λ, μ with `Scalar` coefficients; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FormalPoly {
    terms: BTreeMap<Exps, Scalar>,
}

impl FormalPoly {
    pub fn zero() -> Self {
        FormalPoly::default()
    }

    pub fn one() -> Self {
        FormalPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        FormalPoly::monomial([0, 0, 0], c)
    }

    pub fn monomial(e: Exps, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        FormalPoly { terms }
    }

    pub fn var(v: FormalVar) -> Self {
        let mut e = [0; 3];
        e[v.slot()] = 1;
        FormalPoly::monomial(e, Scalar::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exps, Scalar)>) -> Self {
        let mut p = FormalPoly::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exps) -> Scalar {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant value when no formal variable occurs.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    pub fn degree_in(&self, v: FormalVar) -> u32 {
        self.terms.keys().map(|e| e[v.slot()]).max().unwrap_or(0)
    }

    pub fn mentions(&self, v: FormalVar) -> bool {
        self.terms.keys().any(|e| e[v.slot()] > 0)
    }

    fn add_term(&mut self, e: Exps, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = &*old + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FormalPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (e, a) in &other.terms {
            if c.is_one() {
                self.add_term(*e, a);
            } else {
                self.add_term(*e, &(a * c));
            }
        }
    }

    pub fn add(&self, other: &FormalPoly) -> FormalPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &FormalPoly) -> FormalPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::int(-1));
        out
    }

    pub fn neg(&self) -> FormalPoly {
        self.scale(&Scalar::int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> FormalPoly {
        if c.is_zero() {
            return FormalPoly::zero();
        }
        FormalPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &FormalPoly) -> FormalPoly {
        let mut out = FormalPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> FormalPoly {
        (0..n).fold(FormalPoly::one(), |acc, _| acc.mul(self))
    }

    /// Simultaneous substitution of the bound variables.
    pub fn substitute(&self, bindings: &[(FormalVar, FormalPoly)]) -> FormalPoly {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut powers: [Vec<FormalPoly>; 3] = Default::default();
        let mut out = FormalPoly::zero();
        for (e, c) in &self.terms {
            let mut kept = [0u32; 3];
            let mut factor = FormalPoly::one();
            for v in FormalVar::ALL {
                let k = e[v.slot()];
                match bindings.iter().find(|(w, _)| *w == v) {
                    Some((_, p)) => {
                        let cache = &mut powers[v.slot()];
                        while cache.len() <= k as usize {
                            let next = cache.last().map_or_else(FormalPoly::one, |q| q.mul(p));
                            cache.push(next);
                        }
                        factor = factor.mul(&cache[k as usize]);
                    }
                    None => kept[v.slot()] = k,
                }
            }
            let term = FormalPoly::monomial(kept, c.clone()).mul(&factor);
            out.add_scaled(&term, &Scalar::one());
        }
        out
    }

    /// Drop every term carrying ∂, i.e. set ∂ = 0.
    pub fn at_d_zero(&self) -> FormalPoly {
        FormalPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[0] == 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }
}

pub fn monomial_label(e: &Exps) -> String {
    let parts: Vec<String> = FormalVar::ALL
        .iter()
        .filter(|v| e[v.slot()] > 0)
        .map(|v| match e[v.slot()] {
            1 => v.symbol().to_string(),
            k => format!("{}^{}", v.symbol(), k),
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for FormalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let simple = c.numerator().terms().len() == 1 && c.is_polynomial();
            let cs = c.to_string();
            let (negative, cs) = match cs.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, cs),
            };
            let sep = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let cs = if simple { cs } else { format!("({cs})") };
            if e == &[0, 0, 0] {
                write!(f, "{sep}{cs}")?;
            } else if cs == "1" {
                write!(f, "{sep}{}", monomial_label(e))?;
            } else {
                write!(f, "{sep}{cs}*{}", monomial_label(e))?;
            }
        }
        Ok(())
    }
}
