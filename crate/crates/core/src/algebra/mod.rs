//! Quasi-hom-Lie algebras given by callbacks on basis keys, and checkers for their axioms.
//!
//! An algebra supplies `<x, y>`, `alpha`, `beta` on basis keys (extended linearly) and a
//! scalar `omega(x, y)` on the pairs where it is defined. Windows only choose which
//! identities get checked; arithmetic is never truncated.

mod adapters;
mod checks;
pub mod fixtures;
mod grading;
mod table;
mod vector;

use thiserror::Error;

use crate::exact::{ExactError, Field};

pub use adapters::{random_mutation, witt_to_vector, Mutated, WittQhl};
pub use checks::{
    check_beta_twisting, check_morphism, check_omega_symmetry, check_qhl_axioms, check_qhl_jacobi,
    check_remark1, MorphismMode,
};
pub use grading::{CommutationFactor, Grade, GradeGroup};
pub use table::{make_color_algebra, OmegaRule, TableAlgebra};
pub(crate) use table::{coeff_from_json, parse_pair, vec_of};
pub use vector::{BasisKey, Vector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("bracket <{x}, {y}> leaves the grade {expected}")]
    GradingViolation { x: String, y: String, expected: String },
    #[error("commutation factor fails its axioms: {0}")]
    InvalidFactor(String),
    #[error("not a Lie algebra: {0}")]
    NotLie(String),
    #[error("invalid descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `(L, <.,.>, alpha, beta, omega)` with scalar `omega`.
pub trait QhlAlgebra<F: Field>: Send + Sync {
    type Key: BasisKey;

    fn bracket(&self, x: &Self::Key, y: &Self::Key) -> Vector<Self::Key, F>;

    fn alpha(&self, x: &Self::Key) -> Vector<Self::Key, F> {
        Vector::basis(x.clone())
    }

    fn beta(&self, x: &Self::Key) -> Vector<Self::Key, F> {
        Vector::basis(x.clone())
    }

    /// `None` outside the domain of `omega`.
    fn omega(&self, _x: &Self::Key, _y: &Self::Key) -> Option<F> {
        Some(-F::one())
    }

    /// The whole basis, for finite-dimensional algebras.
    fn basis(&self) -> Option<Vec<Self::Key>> {
        None
    }

    fn bracket_vec(&self, u: &Vector<Self::Key, F>, v: &Vector<Self::Key, F>) -> Vector<Self::Key, F> {
        u.bilinear(v, |x, y| self.bracket(x, y))
    }

    fn alpha_vec(&self, u: &Vector<Self::Key, F>) -> Vector<Self::Key, F> {
        u.map_linear(|x| self.alpha(x))
    }

    fn beta_vec(&self, u: &Vector<Self::Key, F>) -> Vector<Self::Key, F> {
        u.map_linear(|x| self.beta(x))
    }

    /// `omega` on vectors: defined when it is defined and constant on all pairs of their
    /// supports.
    fn omega_vec(&self, u: &Vector<Self::Key, F>, v: &Vector<Self::Key, F>) -> Option<F> {
        let mut value: Option<F> = None;
        for x in u.keys() {
            for y in v.keys() {
                let w = self.omega(x, y)?;
                match &value {
                    Some(prev) if *prev != w => return None,
                    Some(_) => {}
                    None => value = Some(w),
                }
            }
        }
        value
    }
}

impl<F: Field, A: QhlAlgebra<F> + ?Sized> QhlAlgebra<F> for &A {
    type Key = A::Key;

    fn bracket(&self, x: &Self::Key, y: &Self::Key) -> Vector<Self::Key, F> {
        (**self).bracket(x, y)
    }

    fn alpha(&self, x: &Self::Key) -> Vector<Self::Key, F> {
        (**self).alpha(x)
    }

    fn beta(&self, x: &Self::Key) -> Vector<Self::Key, F> {
        (**self).beta(x)
    }

    fn omega(&self, x: &Self::Key, y: &Self::Key) -> Option<F> {
        (**self).omega(x, y)
    }

    fn basis(&self) -> Option<Vec<Self::Key>> {
        (**self).basis()
    }

    fn omega_vec(&self, u: &Vector<Self::Key, F>, v: &Vector<Self::Key, F>) -> Option<F> {
        (**self).omega_vec(u, v)
    }
}
