//! Two-dimensional shifts of finite type as textile systems: block
//! enumeration, strip towers, path lifting and the K-theory of the
//! associated graph algebras.

pub mod error;
pub mod examples;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod matrix;
pub mod shift2d;
pub mod textile;
pub mod tower;

use num_bigint::BigInt;

pub use error::{Error, Result};
pub use graph::{DirectedGraph, Edge, GraphMorphism, MorphismReport};
pub use invariants::{
    algebra_report, bowen_franks, ck_k_theory, identify_algebra, simplicity_flags, smith_normal_form,
    AlgebraDescriptor, AlgebraReport, AlgebraTag, FPAbelianGroup, SimplicityFlags, SmithDecomposition,
};
pub use io::{parse_input, InputDocument, Object};
pub use matrix::Matrix;
pub use shift2d::{Block, Budget, MatrixShift};
pub use textile::{are_isomorphic, count_lifts, LiftDirection, LiftReport, TextileSystem, Which};
pub use tower::{oracle_level, tower, Side, Tower, TowerLevel};

/// Non-negative integer matrices: transition and adjacency matrices.
pub type IntMatrix = Matrix<u64>;
/// Integer matrices with arbitrary precision.
pub type ZMatrix = Matrix<BigInt>;
/// Smith decomposition over arbitrary-precision integers.
pub type Smith = SmithDecomposition<BigInt>;
pub type EntropyRow64 = shift2d::EntropyRow<f64>;
