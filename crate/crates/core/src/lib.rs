//! Computable Bohr equivalence for exponential sums.
//!
//! Frequencies are exact rational combinations of declared generators. On top of
//! that the crate decides equivalence through integer phase congruences, finds
//! near-translation numbers with Kronecker-type searches, and instantiates the
//! machinery for the Riemann zeta function and the Liouville series.

pub mod error;
pub mod exactnum;

pub use error::{Error, Result};
pub mod equivalence;
pub mod expsum;
pub mod frequency;
pub mod kronecker;
pub mod translate;
pub mod zeta;

use serde::{Deserialize, Serialize};

/// Working precision for phases, evaluations and lattice arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Standard,
    High,
}

impl std::str::FromStr for Precision {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "standard" => Ok(Precision::Standard),
            "high" => Ok(Precision::High),
            other => Err(Error::Parse(format!("unknown precision mode {other:?}"))),
        }
    }
}
