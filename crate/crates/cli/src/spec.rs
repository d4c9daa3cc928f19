//! The `.halg` document: one JSON object per algebra, entries by name.

use std::collections::BTreeMap;

use halg_core::cext::Cocycle;
use halg_core::conformal::{ConformalAlgebra, ConformalElement};
use halg_core::exactalg::{parse_formal, parse_scalar, FormalVar};
use halg_core::superalgebra::{EvenMap, Parity, ProductTable, SuperAlgebra, SuperBasis, Vector};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityName {
    Even,
    Odd,
}

impl From<ParityName> for Parity {
    fn from(p: ParityName) -> Parity {
        match p {
            ParityName::Even => Parity::Even,
            ParityName::Odd => Parity::Odd,
        }
    }
}

impl From<Parity> for ParityName {
    fn from(p: Parity) -> ParityName {
        match p {
            Parity::Even => ParityName::Even,
            Parity::Odd => ParityName::Odd,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub parity: ParityName,
}

/// `(basis name, coefficient literal)`.
pub type Term = (String, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub source: String,
    pub result: Vec<Term>,
}

/// λ-brackets on generators; coefficients are polynomials in `D` and `Lm`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConformalSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<String>,
    pub brackets: Vec<ProductEntry>,
    /// Omitted means the identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<MapEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    pub basis: Vec<BasisEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub products: BTreeMap<String, Vec<ProductEntry>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, Vec<MapEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conformal: Option<ConformalSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleEntry {
    pub left: String,
    pub right: String,
    /// Polynomial in `Lm`.
    pub form: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSpec {
    pub schema: u32,
    pub entries: Vec<CocycleEntry>,
}

fn invalid(path: impl Into<String>, message: impl ToString) -> CliError {
    CliError::Validation {
        path: path.into(),
        message: message.to_string(),
    }
}

pub fn parse_spec(text: &str) -> Result<AlgebraSpec, CliError> {
    let spec: AlgebraSpec =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    if spec.schema != SCHEMA {
        return Err(invalid(
            "schema",
            format!("unsupported schema {}", spec.schema),
        ));
    }
    Ok(spec)
}

pub fn parse_cocycle(text: &str) -> Result<CocycleSpec, CliError> {
    let spec: CocycleSpec =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    if spec.schema != SCHEMA {
        return Err(invalid(
            "schema",
            format!("unsupported schema {}", spec.schema),
        ));
    }
    Ok(spec)
}

fn vector(
    basis: &SuperBasis,
    params: &[String],
    terms: &[Term],
    path: &str,
) -> Result<Vector, CliError> {
    let mut v = Vector::zero();
    for (k, (name, lit)) in terms.iter().enumerate() {
        let i = basis
            .index_of(name)
            .map_err(|e| invalid(format!("{path}[{k}]"), e))?;
        let c = parse_scalar(lit, params).map_err(|e| invalid(format!("{path}[{k}]"), e))?;
        v.add_term(i, &c);
    }
    Ok(v)
}

fn element(
    basis: &SuperBasis,
    params: &[String],
    terms: &[Term],
    path: &str,
) -> Result<ConformalElement, CliError> {
    let mut v = ConformalElement::zero();
    for (k, (name, lit)) in terms.iter().enumerate() {
        let i = basis
            .index_of(name)
            .map_err(|e| invalid(format!("{path}[{k}]"), e))?;
        let p = parse_formal(lit, params).map_err(|e| invalid(format!("{path}[{k}]"), e))?;
        v.add_term(i, &p);
    }
    Ok(v)
}

fn index(basis: &SuperBasis, name: &str, path: String) -> Result<usize, CliError> {
    basis.index_of(name).map_err(|e| invalid(path, e))
}

impl AlgebraSpec {
    pub fn superbasis(&self) -> Result<SuperBasis, CliError> {
        SuperBasis::new(
            self.basis
                .iter()
                .map(|b| (b.name.clone(), Parity::from(b.parity))),
        )
        .map_err(|e| invalid("basis", e))
    }

    /// Products and maps; `None` when the document only carries λ-brackets.
    pub fn algebra(&self) -> Result<Option<SuperAlgebra>, CliError> {
        if self.products.is_empty() && self.maps.is_empty() && self.conformal.is_some() {
            return Ok(None);
        }
        let basis = self.superbasis()?;
        let mut a = SuperAlgebra::new(basis.clone());
        a.params = self.params.clone();
        for (name, entries) in &self.products {
            let mut rows = Vec::new();
            for (k, e) in entries.iter().enumerate() {
                let path = format!("products.{name}[{k}]");
                let i = index(&basis, &e.left, format!("{path}.left"))?;
                let j = index(&basis, &e.right, format!("{path}.right"))?;
                let v = vector(&basis, &self.params, &e.result, &format!("{path}.result"))?;
                let t =
                    ProductTable::new(&basis, [((i, j), v)]).map_err(|err| invalid(&path, err))?;
                rows.extend(t.entries().map(|(k, v)| (k, v.clone())));
            }
            let t = ProductTable::new(&basis, rows)
                .map_err(|e| invalid(format!("products.{name}"), e))?;
            a.products.insert(name.clone(), t);
        }
        for (name, entries) in &self.maps {
            let mut rows = Vec::new();
            for (k, e) in entries.iter().enumerate() {
                let path = format!("maps.{name}[{k}]");
                let i = index(&basis, &e.source, format!("{path}.source"))?;
                let v = vector(&basis, &self.params, &e.result, &format!("{path}.result"))?;
                EvenMap::new(&basis, [(i, v.clone())]).map_err(|err| invalid(&path, err))?;
                rows.push((i, v));
            }
            let m = EvenMap::new(&basis, rows).map_err(|e| invalid(format!("maps.{name}"), e))?;
            a.maps.insert(name.clone(), m);
        }
        Ok(Some(a))
    }

    /// The λ-bracket table, if present.
    pub fn conformal_algebra(&self) -> Result<Option<ConformalAlgebra>, CliError> {
        let Some(c) = &self.conformal else {
            return Ok(None);
        };
        let basis = self.superbasis()?;
        let mut r = ConformalAlgebra::new(basis.clone()).with_params(self.params.clone());
        for (k, name) in c.torsion.iter().enumerate() {
            let i = index(&basis, name, format!("conformal.torsion[{k}]"))?;
            r.set_torsion(i)
                .map_err(|e| invalid(format!("conformal.torsion[{k}]"), e))?;
        }
        for (k, e) in c.brackets.iter().enumerate() {
            let path = format!("conformal.brackets[{k}]");
            let i = index(&basis, &e.left, format!("{path}.left"))?;
            let j = index(&basis, &e.right, format!("{path}.right"))?;
            let mut v = r.bracket_entry(i, j);
            v = v.add(&element(
                &basis,
                &self.params,
                &e.result,
                &format!("{path}.result"),
            )?);
            r.set_bracket(i, j, v).map_err(|err| invalid(&path, err))?;
        }
        if let Some(alpha) = &c.alpha {
            let mut table: BTreeMap<usize, ConformalElement> = BTreeMap::new();
            for (k, e) in alpha.iter().enumerate() {
                let path = format!("conformal.alpha[{k}]");
                let i = index(&basis, &e.source, format!("{path}.source"))?;
                let v = element(&basis, &self.params, &e.result, &format!("{path}.result"))?;
                let slot = table.entry(i).or_default();
                *slot = slot.add(&v);
            }
            r = r
                .with_alpha_table(table)
                .map_err(|e| invalid("conformal.alpha", e))?;
        }
        Ok(Some(r))
    }

    /// Full validation, for documents that are only loaded.
    pub fn validate(&self) -> Result<(), CliError> {
        self.algebra()?;
        self.conformal_algebra()?;
        Ok(())
    }
}

fn terms(v: &Vector, basis: &SuperBasis) -> Vec<Term> {
    v.iter()
        .map(|(i, c)| (basis.name(i).to_string(), c.to_string()))
        .collect()
}

fn formal_terms(v: &ConformalElement, basis: &SuperBasis) -> Vec<Term> {
    v.iter()
        .map(|(i, p)| (basis.name(i).to_string(), p.to_string()))
        .collect()
}

fn basis_entries(basis: &SuperBasis) -> Vec<BasisEntry> {
    basis
        .elements()
        .iter()
        .map(|e| BasisEntry {
            name: e.name.clone(),
            parity: e.parity.into(),
        })
        .collect()
}

pub fn from_algebra(a: &SuperAlgebra, name: Option<String>) -> AlgebraSpec {
    let basis = &a.basis;
    AlgebraSpec {
        schema: SCHEMA,
        name,
        params: a.params.clone(),
        basis: basis_entries(basis),
        products: a
            .products
            .iter()
            .map(|(n, t)| {
                let entries = t
                    .entries()
                    .map(|((i, j), v)| ProductEntry {
                        left: basis.name(i).into(),
                        right: basis.name(j).into(),
                        result: terms(v, basis),
                    })
                    .collect();
                (n.clone(), entries)
            })
            .collect(),
        maps: a
            .maps
            .iter()
            .map(|(n, m)| {
                let entries = m
                    .entries()
                    .map(|(i, v)| MapEntry {
                        source: basis.name(i).into(),
                        result: terms(v, basis),
                    })
                    .collect();
                (n.clone(), entries)
            })
            .collect(),
        conformal: None,
    }
}

pub fn from_conformal(r: &ConformalAlgebra, name: Option<String>) -> AlgebraSpec {
    let basis = &r.generators;
    AlgebraSpec {
        schema: SCHEMA,
        name,
        params: r.params.clone(),
        basis: basis_entries(basis),
        products: BTreeMap::new(),
        maps: BTreeMap::new(),
        conformal: Some(ConformalSpec {
            torsion: (0..r.dim())
                .filter(|&i| r.torsion[i])
                .map(|i| basis.name(i).to_string())
                .collect(),
            brackets: r
                .bracket_entries()
                .map(|((i, j), v)| ProductEntry {
                    left: basis.name(i).into(),
                    right: basis.name(j).into(),
                    result: formal_terms(v, basis),
                })
                .collect(),
            alpha: Some(
                r.alpha_entries()
                    .map(|(i, v)| MapEntry {
                        source: basis.name(i).into(),
                        result: formal_terms(v, basis),
                    })
                    .collect(),
            ),
        }),
    }
}

impl CocycleSpec {
    pub fn cocycle(&self, basis: &SuperBasis, params: &[String]) -> Result<Cocycle, CliError> {
        let mut f = Cocycle::zero();
        for (k, e) in self.entries.iter().enumerate() {
            let path = format!("entries[{k}]");
            let u = index(basis, &e.left, format!("{path}.left"))?;
            let v = index(basis, &e.right, format!("{path}.right"))?;
            let p = parse_formal(&e.form, params).map_err(|err| invalid(&path, err))?;
            if p.mentions(FormalVar::D) || p.mentions(FormalVar::Mu) {
                return Err(invalid(path, "a cocycle entry is a polynomial in Lm only"));
            }
            for (ex, c) in p.terms() {
                let i = ex[1] as usize;
                let old = f.get(i, u, v);
                f.set(i, u, v, &old + c);
            }
        }
        f.validate(basis).map_err(|e| invalid("entries", e))?;
        Ok(f)
    }

    pub fn from_cocycle(f: &Cocycle, basis: &SuperBasis) -> CocycleSpec {
        let mut pairs: Vec<(usize, usize)> = f.entries().map(|(_, u, v, _)| (u, v)).collect();
        pairs.sort();
        pairs.dedup();
        CocycleSpec {
            schema: SCHEMA,
            entries: pairs
                .into_iter()
                .map(|(u, v)| CocycleEntry {
                    left: basis.name(u).into(),
                    right: basis.name(v).into(),
                    form: f.form(u, v).to_string(),
                })
                .collect(),
        }
    }
}
