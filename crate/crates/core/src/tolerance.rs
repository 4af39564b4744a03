//! Tolerance policy shared by all geometric predicates.

use thiserror::Error;

/// Absolute tolerances used by tangency detection and angular tests.
///
/// `contact` is compared against center distances (same length unit as the
/// coordinates), `angle` against cosines/angles of unit directions. Both must
/// be strictly positive and below `1e-3`; the defaults are `1e-9`, which in
/// the unit-diameter convention (`r = 1/2`, integer centers) leaves tangency
/// exactly representable while absorbing rigid-motion rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub contact: f64,
    pub angle: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum ToleranceError {
    #[error("tolerance {value} out of range (must be in (0, 1e-3))")]
    OutOfRange { value: f64 },
}

impl Tolerance {
    pub const MAX: f64 = 1e-3;

    pub fn new(contact: f64, angle: f64) -> Result<Self, ToleranceError> {
        for value in [contact, angle] {
            if !(value > 0.0 && value < Self::MAX) {
                return Err(ToleranceError::OutOfRange { value });
            }
        }
        Ok(Tolerance { contact, angle })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            contact: 1e-9,
            angle: 1e-9,
        }
    }
}
