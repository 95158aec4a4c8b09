//! Exact algebra for the Hilbert Nullstellensatz over parametric systems.
//!
//! A system `f_1, ..., f_k` in `Z[x][y]` is satisfiable (HNP) when it has a
//! common zero over the algebraic closure of `Q(x)`. This crate decides
//! that directly by elimination, and also via random specialisation of the
//! parameters followed by a parameter-free (HN) decision.

pub mod algebraic;
pub mod arith;
pub mod certificate;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod modp;
pub mod normalize;
pub mod poly;
pub mod reduction;
pub mod sysio;
pub mod system;

use serde::{Deserialize, Serialize};

pub use arith::{Integer, PrimeField, PrimeFieldElem, Rational};
pub use error::{Error, Result};
pub use groebner::{Budget, GroebnerBasis, MonomialOrder};
pub use monomial::Monomial;
pub use poly::{Degree, Polynomial};
pub use system::{ParamPolynomial, PolynomialSystem};

/// Seed used whenever the caller does not choose one.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Outcome of a satisfiability decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Answer {
    #[serde(rename = "SAT")]
    Sat,
    #[serde(rename = "UNSAT")]
    Unsat,
}

impl Answer {
    pub fn is_sat(self) -> bool {
        self == Answer::Sat
    }
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Answer::Sat => "SAT",
            Answer::Unsat => "UNSAT",
        })
    }
}
