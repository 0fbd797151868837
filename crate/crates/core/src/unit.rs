use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A unit Gaussian integer `i^k`, stored by its exponent `k mod 4`.
///
/// Cycle weights, switching values and the non-zero entries of a Hermitian
/// adjacency matrix all live here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(u8);

impl Weight {
    pub const ONE: Weight = Weight(0);
    pub const I: Weight = Weight(1);
    pub const NEG_ONE: Weight = Weight(2);
    pub const NEG_I: Weight = Weight(3);

    pub const ALL: [Weight; 4] = [Weight::ONE, Weight::I, Weight::NEG_ONE, Weight::NEG_I];

    pub fn from_exponent(k: i64) -> Weight {
        Weight(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn from_gaussian(re: i64, im: i64) -> Result<Weight> {
        match (re, im) {
            (1, 0) => Ok(Weight::ONE),
            (0, 1) => Ok(Weight::I),
            (-1, 0) => Ok(Weight::NEG_ONE),
            (0, -1) => Ok(Weight::NEG_I),
            _ => Err(Error::InvalidUnit(re, im)),
        }
    }

    /// `(re, im)` of the unit.
    pub fn gaussian(self) -> (i64, i64) {
        match self.0 {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        }
    }

    pub fn conj(self) -> Weight {
        Weight((4 - self.0) % 4)
    }

    pub fn inv(self) -> Weight {
        self.conj()
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn is_imaginary(self) -> bool {
        !self.is_real()
    }
}

impl Mul for Weight {
    type Output = Weight;

    fn mul(self, rhs: Weight) -> Weight {
        Weight((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        })
    }
}
