//! Exact computations for Hom-Gel'fand-Dorfman superalgebras and their
//! conformal counterparts.

pub mod affinization;
pub mod cext;
pub mod conformal;
pub mod constructions;
pub mod exactalg;
pub mod par;
pub mod random;
pub mod samples;
pub mod superalgebra;
