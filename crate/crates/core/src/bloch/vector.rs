//! Unit 3-vectors on the Bloch sphere.
//!
//! A pure qubit state and a single-qubit observable are both points on the unit
//! sphere. They are kept as distinct types because the two evolution pictures
//! act on them with opposite conjugation order.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ValidationError};

/// Allowed norm deviation for caller-supplied vectors.
pub const INPUT_NORM_TOLERANCE: f64 = 1e-6;
/// Allowed norm deviation for vectors produced by evolution.
pub const OUTPUT_NORM_TOLERANCE: f64 = 1e-9;
/// Norm drift below this is left untouched.
pub const RENORMALIZE_THRESHOLD: f64 = 1e-12;

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm(v: [f64; 3]) -> f64 {
    dot(v, v).sqrt()
}

/// Angle in `[0, π]` between two vectors.
///
/// Uses `atan2(|a×b|, a·b)`, which stays accurate near 0 and π where
/// `acos` of the dot product loses half the significant digits.
pub fn angle_between(a: [f64; 3], b: [f64; 3]) -> f64 {
    norm(cross(a, b)).atan2(dot(a, b))
}

fn check_finite(what: &'static str, v: [f64; 3]) -> Result<()> {
    match v.iter().find(|c| !c.is_finite()) {
        Some(&value) => Err(ValidationError::NonFinite { what, value }),
        None => Ok(()),
    }
}

fn scaled(v: [f64; 3], s: f64) -> [f64; 3] {
    [v[0] * s, v[1] * s, v[2] * s]
}

/// Validates a caller-supplied vector: finite, within 1e-6 of unit norm.
pub(crate) fn unit_from_input(what: &'static str, v: [f64; 3]) -> Result<[f64; 3]> {
    check_finite(what, v)?;
    let n = norm(v);
    if (n - 1.0).abs() > INPUT_NORM_TOLERANCE {
        return Err(ValidationError::NotUnit {
            what,
            norm: n,
            tolerance: INPUT_NORM_TOLERANCE,
        });
    }
    Ok(if (n - 1.0).abs() > RENORMALIZE_THRESHOLD {
        scaled(v, 1.0 / n)
    } else {
        v
    })
}

/// Validates a vector produced by a conjugation. Drift past 1e-9 is a bug,
/// not float noise, and is reported instead of being normalized away.
pub(crate) fn unit_from_evolution(what: &'static str, v: [f64; 3]) -> Result<[f64; 3]> {
    check_finite(what, v)?;
    let n = norm(v);
    let drift = (n - 1.0).abs();
    if drift > OUTPUT_NORM_TOLERANCE {
        return Err(ValidationError::NormDrift { what, drift });
    }
    Ok(if drift > RENORMALIZE_THRESHOLD {
        scaled(v, 1.0 / n)
    } else {
        v
    })
}

fn spherical(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

macro_rules! unit_vector {
    ($(#[$meta:meta])* $name:ident, $what:literal) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
        #[serde(into = "[f64; 3]", try_from = "[f64; 3]")]
        pub struct $name {
            x: f64,
            y: f64,
            z: f64,
        }

        impl $name {
            /// Builds from Cartesian components. Rejects norms more than 1e-6
            /// away from one; smaller deviations are normalized out.
            pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
                unit_from_input($what, [x, y, z]).map(Self::from_raw)
            }

            /// Builds from polar angle `theta` and azimuth `phi` in radians.
            /// Angles outside the conventional ranges are accepted as-is.
            pub fn from_angles(theta: f64, phi: f64) -> Result<Self> {
                if !theta.is_finite() {
                    return Err(ValidationError::NonFinite { what: "theta", value: theta });
                }
                if !phi.is_finite() {
                    return Err(ValidationError::NonFinite { what: "phi", value: phi });
                }
                unit_from_input($what, spherical(theta, phi)).map(Self::from_raw)
            }

            /// The +z pole.
            pub const fn z_up() -> Self {
                Self { x: 0.0, y: 0.0, z: 1.0 }
            }

            pub(crate) fn from_evolved(v: [f64; 3]) -> Result<Self> {
                unit_from_evolution($what, v).map(Self::from_raw)
            }

            fn from_raw(v: [f64; 3]) -> Self {
                Self { x: v[0], y: v[1], z: v[2] }
            }

            pub fn x(&self) -> f64 {
                self.x
            }

            pub fn y(&self) -> f64 {
                self.y
            }

            pub fn z(&self) -> f64 {
                self.z
            }

            pub fn to_array(self) -> [f64; 3] {
                [self.x, self.y, self.z]
            }

            /// Antipodal point.
            pub fn negated(self) -> Self {
                Self { x: -self.x, y: -self.y, z: -self.z }
            }

            /// `(theta, phi)` with `theta` in `[0, π]` and `phi` in `(-π, π]`.
            pub fn angles(&self) -> (f64, f64) {
                (self.z.clamp(-1.0, 1.0).acos(), self.y.atan2(self.x))
            }
        }

        impl From<$name> for [f64; 3] {
            fn from(v: $name) -> Self {
                v.to_array()
            }
        }

        impl TryFrom<[f64; 3]> for $name {
            type Error = ValidationError;

            fn try_from(v: [f64; 3]) -> Result<Self> {
                Self::new(v[0], v[1], v[2])
            }
        }
    };
}

unit_vector!(
    /// Pure single-qubit state `ρ = ½(1 + μ·σ)` stored as its Bloch vector μ.
    BlochVector,
    "Bloch vector"
);

unit_vector!(
    /// Single-qubit observable `ν·σ` stored as its measurement direction ν.
    Observable,
    "observable"
);

impl Observable {
    /// Reads a state direction as a measurement direction.
    pub fn from_state(mu: BlochVector) -> Self {
        Self { x: mu.x, y: mu.y, z: mu.z }
    }
}

impl BlochVector {
    /// Reads a measurement direction as a state direction.
    pub fn from_observable(nu: Observable) -> Self {
        Self { x: nu.x, y: nu.y, z: nu.z }
    }
}
