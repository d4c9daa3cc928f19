//! Finite-dimensional ℤ₂-graded algebras by structure constants.

mod check;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::exactalg::Scalar;

pub use check::{
    centralizer_of_alpha_image, check_gd, check_gd_compatibility, check_hom_associative,
    check_hom_lie_super, check_hom_novikov_super, check_hom_poisson, check_map_property, in_span,
    MapProperty,
};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Option<Parity> {
        match b {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Whether `(−1)^{|x||y|}` is −1.
pub fn sign_flip(x: Parity, y: Parity) -> bool {
    x.is_odd() && y.is_odd()
}

/// `(−1)^{|x||y|}` as a scalar factor.
pub fn koszul(x: Parity, y: Parity) -> Scalar {
    if sign_flip(x, y) {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("basis is empty")]
    EmptyBasis,
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("unknown basis element `{0}`")]
    UnknownElement(String),
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("unknown product `{0}`")]
    UnknownProduct(String),
    #[error("unknown map `{0}`")]
    UnknownMap(String),
    #[error("entry {entry} violates parity: {detail}")]
    ParityViolation { entry: String, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub parity: Parity,
}

/// Ordered homogeneous basis with unique names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperBasis {
    elems: Vec<BasisElement>,
    index: HashMap<String, usize>,
}

impl SuperBasis {
    pub fn new<S: Into<String>>(
        elems: impl IntoIterator<Item = (S, Parity)>,
    ) -> Result<Self, AlgebraError> {
        let elems: Vec<BasisElement> = elems
            .into_iter()
            .map(|(n, parity)| BasisElement {
                name: n.into(),
                parity,
            })
            .collect();
        if elems.is_empty() {
            return Err(AlgebraError::EmptyBasis);
        }
        let mut index = HashMap::new();
        for (i, e) in elems.iter().enumerate() {
            if index.insert(e.name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateName(e.name.clone()));
            }
        }
        Ok(SuperBasis { elems, index })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.elems[i].parity
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elems[i].name
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elems
    }

    pub fn index_of(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownElement(name.to_string()))
    }

    /// Parity shared by every component of `v`, `None` when mixed or zero.
    pub fn parity_of(&self, v: &Vector) -> Option<Parity> {
        let mut ps = v.iter().map(|(i, _)| self.parity(i));
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }
}

/// Sparse vector in a fixed basis; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector(BTreeMap<usize, Scalar>);

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(i: usize) -> Self {
        Vector::term(i, Scalar::one())
    }

    pub fn term(i: usize, c: Scalar) -> Self {
        let mut v = Vector::zero();
        v.add_term(i, &c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = Vector::zero();
        for (i, c) in terms {
            v.add_term(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&i) {
            Some(old) => {
                let s = &*old + c;
                if s.is_zero() {
                    self.0.remove(&i);
                } else {
                    *old = s;
                }
            }
            None => {
                self.0.insert(i, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (&i, a) in &other.0 {
            if c.is_one() {
                self.add_term(i, a);
            } else {
                self.add_term(i, &(a * c));
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        let mut out = Vector::zero();
        out.add_scaled(self, c);
        out
    }

    /// Multiply by `(−1)^{|x||y|}`.
    pub fn koszul(self, x: Parity, y: Parity) -> Vector {
        if sign_flip(x, y) {
            -&self
        } else {
            self
        }
    }

    pub fn render(&self, basis: &SuperBasis) -> Vec<(String, Scalar)> {
        self.iter()
            .map(|(i, c)| (basis.name(i).to_string(), c.clone()))
            .collect()
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::int(-1));
        out
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(&Scalar::int(-1))
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        &self + &rhs
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        &self - &rhs
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        -&self
    }
}

fn check_parity(
    basis: &SuperBasis,
    entry: impl Fn() -> String,
    want: Parity,
    v: &Vector,
) -> Result<(), AlgebraError> {
    for (k, _) in v.iter() {
        if k >= basis.len() {
            return Err(AlgebraError::IndexOutOfRange(k));
        }
        if basis.parity(k) != want {
            return Err(AlgebraError::ParityViolation {
                entry: entry(),
                detail: format!(
                    "result component `{}` has parity {} but {} is required",
                    basis.name(k),
                    basis.parity(k).bit(),
                    want.bit()
                ),
            });
        }
    }
    Ok(())
}

/// Even bilinear map on basis pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductTable(BTreeMap<(usize, usize), Vector>);

impl ProductTable {
    pub fn zero() -> Self {
        ProductTable::default()
    }

    /// Build from entries, summing repeated pairs and rejecting odd ones.
    pub fn new(
        basis: &SuperBasis,
        entries: impl IntoIterator<Item = ((usize, usize), Vector)>,
    ) -> Result<Self, AlgebraError> {
        let mut t = ProductTable::zero();
        for ((i, j), v) in entries {
            for idx in [i, j] {
                if idx >= basis.len() {
                    return Err(AlgebraError::IndexOutOfRange(idx));
                }
            }
            let want = basis.parity(i) + basis.parity(j);
            check_parity(
                basis,
                || format!("({}, {})", basis.name(i), basis.name(j)),
                want,
                &v,
            )?;
            let slot = t.0.entry((i, j)).or_default();
            slot.add_scaled(&v, &Scalar::one());
            if slot.is_zero() {
                t.0.remove(&(i, j));
            }
        }
        Ok(t)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Vector> {
        self.0.get(&(i, j))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Vector)> {
        self.0.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if let Some(v) = self.0.get(&(i, j)) {
                    out.add_scaled(v, &(a * b));
                }
            }
        }
        out
    }

    pub fn apply_basis(&self, i: usize, j: usize) -> Vector {
        self.0.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Tabulate a bilinear map given on basis pairs.
    pub fn from_fn(
        basis: &SuperBasis,
        f: impl Fn(usize, usize) -> Vector,
    ) -> Result<Self, AlgebraError> {
        let n = basis.len();
        ProductTable::new(
            basis,
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| ((i, j), f(i, j))),
        )
    }
}

/// Parity-preserving linear map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvenMap(BTreeMap<usize, Vector>);

impl EvenMap {
    pub fn zero() -> Self {
        EvenMap::default()
    }

    pub fn identity(n: usize) -> Self {
        EvenMap((0..n).map(|i| (i, Vector::basis(i))).collect())
    }

    pub fn new(
        basis: &SuperBasis,
        entries: impl IntoIterator<Item = (usize, Vector)>,
    ) -> Result<Self, AlgebraError> {
        let mut m = EvenMap::zero();
        for (i, v) in entries {
            if i >= basis.len() {
                return Err(AlgebraError::IndexOutOfRange(i));
            }
            check_parity(basis, || basis.name(i).to_string(), basis.parity(i), &v)?;
            let slot = m.0.entry(i).or_default();
            slot.add_scaled(&v, &Scalar::one());
            if slot.is_zero() {
                m.0.remove(&i);
            }
        }
        Ok(m)
    }

    pub fn from_fn(basis: &SuperBasis, f: impl Fn(usize) -> Vector) -> Result<Self, AlgebraError> {
        EvenMap::new(basis, (0..basis.len()).map(|i| (i, f(i))))
    }

    pub fn get(&self, i: usize) -> Option<&Vector> {
        self.0.get(&i)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Vector)> {
        self.0.iter().map(|(&k, v)| (k, v))
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in x.iter() {
            if let Some(v) = self.0.get(&i) {
                out.add_scaled(v, a);
            }
        }
        out
    }

    pub fn apply_basis(&self, i: usize) -> Vector {
        self.0.get(&i).cloned().unwrap_or_default()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &EvenMap) -> EvenMap {
        EvenMap(
            other
                .0
                .iter()
                .map(|(&i, v)| (i, self.apply(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        )
    }
}

/// Basis, named products, named even maps and declared parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperAlgebra {
    pub basis: SuperBasis,
    pub params: Vec<String>,
    pub products: BTreeMap<String, ProductTable>,
    pub maps: BTreeMap<String, EvenMap>,
}

impl SuperAlgebra {
    pub fn new(basis: SuperBasis) -> Self {
        SuperAlgebra {
            basis,
            params: Vec::new(),
            products: BTreeMap::new(),
            maps: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn with_product(mut self, name: &str, t: ProductTable) -> Self {
        self.products.insert(name.to_string(), t);
        self
    }

    pub fn with_map(mut self, name: &str, m: EvenMap) -> Self {
        self.maps.insert(name.to_string(), m);
        self
    }

    pub fn with_params(mut self, params: &[&str]) -> Self {
        self.params = params.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn product(&self, name: &str) -> Result<&ProductTable, AlgebraError> {
        self.products
            .get(name)
            .ok_or_else(|| AlgebraError::UnknownProduct(name.to_string()))
    }

    pub fn map(&self, name: &str) -> Result<&EvenMap, AlgebraError> {
        self.maps
            .get(name)
            .ok_or_else(|| AlgebraError::UnknownMap(name.to_string()))
    }

    pub fn apply_product(
        &self,
        product: &str,
        x: &Vector,
        y: &Vector,
    ) -> Result<Vector, AlgebraError> {
        Ok(self.product(product)?.apply(x, y))
    }

    pub fn apply_map(&self, map: &str, x: &Vector) -> Result<Vector, AlgebraError> {
        Ok(self.map(map)?.apply(x))
    }

    /// Vector from `(name, coefficient)` pairs.
    pub fn vector(&self, terms: &[(&str, Scalar)]) -> Result<Vector, AlgebraError> {
        let mut v = Vector::zero();
        for (n, c) in terms {
            v.add_term(self.basis.index_of(n)?, c);
        }
        Ok(v)
    }

    pub fn element(&self, name: &str) -> Result<Vector, AlgebraError> {
        Ok(Vector::basis(self.basis.index_of(name)?))
    }

    /// Product table from named entries `(left, right, result)`.
    pub fn table(&self, entries: &[NamedEntry2<'_>]) -> Result<ProductTable, AlgebraError> {
        let rows = entries
            .iter()
            .map(|(l, r, v)| {
                Ok((
                    (self.basis.index_of(l)?, self.basis.index_of(r)?),
                    self.vector(v)?,
                ))
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        ProductTable::new(&self.basis, rows)
    }

    /// Even map from named entries `(source, image)`; unlisted sources map to 0.
    pub fn even_map(&self, entries: &[NamedEntry1<'_>]) -> Result<EvenMap, AlgebraError> {
        let rows = entries
            .iter()
            .map(|(s, v)| Ok((self.basis.index_of(s)?, self.vector(v)?)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        EvenMap::new(&self.basis, rows)
    }
}

pub type NamedEntry2<'a> = (&'a str, &'a str, Vec<(&'a str, Scalar)>);
pub type NamedEntry1<'a> = (&'a str, Vec<(&'a str, Scalar)>);

/// One failing instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub axiom: String,
    pub args: Vec<String>,
    pub residual: Vec<(String, Scalar)>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let res: Vec<String> = self
            .residual
            .iter()
            .map(|(b, c)| format!("({c})·{b}"))
            .collect();
        write!(
            f,
            "{} at ({}): residual {}",
            self.axiom,
            self.args.join(", "),
            res.join(" + ")
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of an identity check; passes exactly when no witness was found.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    witnesses: Vec<Witness>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport::default()
    }

    pub fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        CheckReport {
            witnesses: witnesses
                .into_iter()
                .filter(|w| !w.residual.is_empty())
                .collect(),
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.witnesses.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn merge(mut self, other: CheckReport) -> Self {
        self.witnesses.extend(other.witnesses);
        self
    }

    pub fn has_axiom(&self, axiom: &str) -> bool {
        self.witnesses.iter().any(|w| w.axiom == axiom)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        writeln!(f, "fail ({} witnesses)", self.witnesses.len())?;
        for w in &self.witnesses {
            writeln!(f, "  {w}")?;
        }
        Ok(())
    }
}
