//! Exact integer linear algebra: presented abelian groups, Smith normal
//! form, kernels, cokernels, and finite (co)limits.

mod abgrp;
mod int;
mod limits;
mod mat;
mod snf;
pub mod sparse;

pub use abgrp::{
    cokernel, cokernel_with_section, hom_invariants, image, injection, inverse, is_epi, is_iso,
    kernel, kernel_from_entries, lift, projection, simplify_presentation, subgroup, AbGrp, AbHom, HomInvariants,
    Invariants, Lifter, Simplified,
};
pub use int::{add_mul, Int};
pub use limits::{finite_colimit, finite_limit, Colimit, Diagram, Limit};
pub use mat::{parse_matrix, Mat};
pub use snf::{col_echelon, is_smith_form, nullspace_dense, snf, snf_with, verify_smith, Echelon, Smith, Track};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ZError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map does not respect relations")]
    NotWellDefined,
    #[error("diagram error: {0}")]
    Diagram(String),
    #[error("parse error: {0}")]
    Parse(String),
}
