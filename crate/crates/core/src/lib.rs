//! Exact-arithmetic library for lowering-raising (LR) pairs and triples of
//! linear transformations on finite-dimensional vector spaces.
//!
//! The crate constructs, recognizes, analyzes, normalizes, and classifies
//! LR pairs and triples over the rationals or a prime field GF(p), and
//! verifies the algebraic identities their structure theory provides:
//! idempotent and Toeplitz data, unipotent maps, rotators, projectors,
//! inverters, reflectors, classification families, and the associated
//! quantum algebra and Lie algebra module structures.
//!
//! All arithmetic is exact; equality checks are decidable and bit-stable.

pub mod field;
pub mod json;
pub mod linalg;
pub mod lrpair;
pub mod lrtriple;
pub mod families;
pub mod relations;

pub use field::{CharConstraint, FieldError, FieldSpec, Scalar};
pub use linalg::{BasisList, LinalgError, Matrix};
pub use lrpair::{LRPairData, PairBasisKind, PairOpError, PairRejection, WeylKind};
pub use lrtriple::{
    LRTripleData, PairSlot, ToeplitzData, TripleFlags, TripleOpError, TripleRejection,
};
pub use families::{ConstrainedForm, ConstrainedKind, FamilyDescriptor, FamilyError};
pub use relations::{ModuleStructure, RelationCheck, RelationReport};
