//! Exact tools for finite simplicial complexes: exterior algebraic shifting,
//! homology and depth over prime fields, near-cone recognition, and
//! brute-force verification of Erdős–Ko–Rado type bounds.

pub mod clique;
pub mod complex;
pub mod corpus;
pub mod ekr;
pub mod error;
pub mod face;
pub mod fixtures;
pub mod family;
pub mod homology;
pub mod linalg;
pub mod nearcone;
pub mod par;
pub mod shifting;
pub mod sweep;

pub use complex::{Complex, FVector};
pub use error::{Error, Result};
pub use face::Face;
pub use family::Family;
pub use linalg::{FieldConfig, MatrixGFp, RankOracle, DEFAULT_PRIME};
pub use shifting::{exterior_shift, exterior_shift_with, shift_family, ShiftOptions, ShiftResult};
