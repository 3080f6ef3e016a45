//! Exact rationals, outward-rounded intervals and elementary-function enclosures.

pub mod elementary;
pub mod interval;
pub mod rational;
pub mod scalar;

pub use elementary::{enclose_elementary, Elementary};
pub use interval::{interval_from_rational, Interval};
pub use rational::ExactRational;
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericsError {
    #[error("cannot parse number: {0}")]
    Parse(String),
    #[error("argument outside the domain: {0}")]
    Domain(String),
}

/// A positive multiple of 1/2, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger {
    twice_value: u32,
}

impl HalfInteger {
    pub fn new(twice_value: u32) -> Result<Self, NumericsError> {
        if twice_value == 0 {
            return Err(NumericsError::Domain("half-integer must be at least 1/2".into()));
        }
        Ok(HalfInteger { twice_value })
    }

    pub const fn from_twice(twice_value: u32) -> Self {
        assert!(twice_value >= 1);
        HalfInteger { twice_value }
    }

    pub fn twice(self) -> u32 {
        self.twice_value
    }

    pub fn value(self) -> ExactRational {
        rational::rat(self.twice_value as i64, 2)
    }

    pub fn plus_one(self) -> Self {
        HalfInteger { twice_value: self.twice_value + 2 }
    }

    pub fn to_f64(self) -> f64 {
        self.twice_value as f64 / 2.0
    }
}

impl std::fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.twice_value.is_multiple_of(2) {
            write!(f, "{}", self.twice_value / 2)
        } else {
            write!(f, "{}/2", self.twice_value)
        }
    }
}
