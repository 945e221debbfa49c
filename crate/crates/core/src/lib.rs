//! Decision procedure and witness construction for Anosov automorphisms of
//! 2-step nilpotent Lie algebras built from graphs, with finite permutation
//! holonomy.
//!
//! The core types are generic over the scalar ring; the aliases below fix the
//! exact integer and rational instances used by the pipeline.

pub mod algebraic;
pub mod cancel;
pub mod coherent;
pub mod families;
pub mod fixtures;
pub mod graph;
pub mod holonomy;
pub mod hyperbolic;
pub mod lie;
pub mod matrix;
pub mod perm;
pub mod poly;
pub mod repdecomp;
pub mod report;
pub mod scalar;
pub mod witness;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use cancel::{CancelToken, Cancelled};
pub use coherent::{CoherentPartition, ComponentKind, PartitionError};
pub use graph::{Graph, GraphError};
pub use lie::{GraphLieAlgebra, LieError};
pub use matrix::Matrix;
pub use perm::{PermError, Permutation};
pub use poly::{Poly, PolyParseError};

pub type IntMatrix = Matrix<BigInt>;
pub type RationalMatrix = Matrix<BigRational>;
pub type IntPolynomial = Poly<BigInt>;
pub type RationalPolynomial = Poly<BigRational>;

/// Errors surfaced by the end-to-end pipeline. Each variant family has its
/// own process exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("graph: {0}")]
    Graph(#[from] GraphError),
    #[error("polynomial: {0}")]
    Poly(#[from] PolyParseError),
    #[error("invalid holonomy: {0}")]
    InvalidHolonomy(String),
    #[error(transparent)]
    Holonomy(#[from] holonomy::HolonomyError),
    #[error(transparent)]
    Hyperbolic(#[from] hyperbolic::HyperbolicError),
    #[error(transparent)]
    Family(#[from] families::FamilyError),
    #[error("witness: {0}")]
    Witness(#[from] witness::WitnessError),
    #[error(transparent)]
    Cancelled(#[from] Cancelled),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// 3 parse, 4 invalid holonomy, 5 group order bound, 6 io, 7 witness,
    /// 8 family parameters, 70 cancelled.
    pub fn exit_code(&self) -> i32 {
        use holonomy::HolonomyError as H;
        match self {
            Error::Parse(_) | Error::Graph(_) | Error::Poly(_) => 3,
            Error::Hyperbolic(hyperbolic::HyperbolicError::Cancelled(_)) => 70,
            Error::Hyperbolic(_) => 3,
            Error::InvalidHolonomy(_) | Error::Holonomy(H::NotAutomorphism { .. } | H::Graph(_)) => 4,
            Error::Holonomy(H::OrderBoundExceeded(_)) => 5,
            Error::Io(_) => 6,
            Error::Witness(witness::WitnessError::Cancelled(_)) => 70,
            Error::Witness(_) => 7,
            Error::Family(_) => 8,
            Error::Cancelled(_) => 70,
        }
    }
}
