use std::fs;
use std::path::Path;

use halg_core::conformal::{
    gd_from_quadratic, quadratic_from_gd, ConformalAlgebra, ConformalError,
};
use halg_core::constructions::GDStructure;
use halg_core::superalgebra::{ProductTable, SuperAlgebra};

use crate::spec::{self, AlgebraSpec};
use crate::{CliError, Roles};

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("documents serialize") + "\n";
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A validated document with whichever structures it describes.
pub struct Loaded {
    pub spec: AlgebraSpec,
    pub algebra: Option<SuperAlgebra>,
    pub conformal: Option<ConformalAlgebra>,
}

/// Either a usable value or the reason the document cannot supply it.
pub enum Derived<T> {
    Ok(T),
    NotQuadratic(ConformalError),
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let spec = spec::parse_spec(&read(path)?)?;
    Ok(Loaded {
        algebra: spec.algebra()?,
        conformal: spec.conformal_algebra()?,
        spec,
    })
}

impl Loaded {
    pub fn superalgebra(&self) -> Result<&SuperAlgebra, CliError> {
        self.algebra.as_ref().ok_or_else(|| CliError::Validation {
            path: "products".into(),
            message: "the document has no products or maps".into(),
        })
    }

    /// GD data from the products (a missing bracket or `∘` is zero), or
    /// read back from a quadratic λ-bracket.
    pub fn gd(&self, roles: &Roles) -> Result<Derived<GDStructure>, CliError> {
        let Some(a) = &self.algebra else {
            let r = self
                .conformal
                .as_ref()
                .expect("documents carry some structure");
            return Ok(match gd_from_quadratic(r) {
                Ok(g) => Derived::Ok(g),
                Err(e @ ConformalError::NotQuadratic { .. }) => Derived::NotQuadratic(e),
                Err(e) => return Err(validation(e)),
            });
        };
        let mut a = a.clone();
        for name in [&roles.bracket, &roles.circ] {
            a.products
                .entry(name.clone())
                .or_insert_with(ProductTable::zero);
        }
        a.map(&roles.alpha)?;
        Ok(Derived::Ok(GDStructure {
            algebra: a,
            bracket: roles.bracket.clone(),
            circ: roles.circ.clone(),
            alpha: roles.alpha.clone(),
        }))
    }

    /// The λ-bracket of the document, or the quadratic one of its GD data.
    pub fn conformal(&self, roles: &Roles) -> Result<ConformalAlgebra, CliError> {
        if let Some(r) = &self.conformal {
            return Ok(r.clone());
        }
        match self.gd(roles)? {
            Derived::Ok(g) => quadratic_from_gd(&g).map_err(validation),
            Derived::NotQuadratic(e) => Err(validation(e)),
        }
    }
}

pub fn validation(e: impl ToString) -> CliError {
    CliError::Validation {
        path: String::new(),
        message: e.to_string(),
    }
}
