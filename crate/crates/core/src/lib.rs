//! Exact construction and verification of quasi-hom-Lie algebras.

pub mod exact;
pub mod report;
pub mod sigma;
pub mod witt;
pub mod algebra;
pub mod extension;
pub mod loops;
