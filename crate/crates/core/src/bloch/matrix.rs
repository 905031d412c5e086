//! 2×2 complex matrices: Pauli constants, density matrices, unitaries.

use num_complex::Complex64;
use serde::Serialize;

use super::vector::unit_from_input;
use crate::error::{Result, ValidationError};

/// Row-major 2×2 complex matrix.
pub type Entries = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Entrywise tolerance for Hermiticity, trace and unitarity checks.
pub const MATRIX_TOLERANCE: f64 = 1e-12;
/// Allowed deviation of `trace(ρ²)` from one for a pure state.
pub const PURITY_TOLERANCE: f64 = 1e-9;

pub const IDENTITY: Entries = [[ONE, ZERO], [ZERO, ONE]];
/// `|0⟩⟨1| + |1⟩⟨0|`
pub const PAULI_X: Entries = [[ZERO, ONE], [ONE, ZERO]];
/// `-i|0⟩⟨1| + i|1⟩⟨0|`
pub const PAULI_Y: Entries = [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]];
/// `|0⟩⟨0| - |1⟩⟨1|`
pub const PAULI_Z: Entries = [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]];
pub const PAULIS: [Entries; 3] = [PAULI_X, PAULI_Y, PAULI_Z];

pub(crate) fn mul(a: &Entries, b: &Entries) -> Entries {
    let mut out = [[ZERO; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

pub(crate) fn adjoint(a: &Entries) -> Entries {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

pub(crate) fn add(a: &Entries, b: &Entries) -> Entries {
    [
        [a[0][0] + b[0][0], a[0][1] + b[0][1]],
        [a[1][0] + b[1][0], a[1][1] + b[1][1]],
    ]
}

pub(crate) fn scale(a: &Entries, s: Complex64) -> Entries {
    [
        [a[0][0] * s, a[0][1] * s],
        [a[1][0] * s, a[1][1] * s],
    ]
}

pub(crate) fn trace(a: &Entries) -> Complex64 {
    a[0][0] + a[1][1]
}

/// `v·σ`
pub(crate) fn pauli_combination(v: [f64; 3]) -> Entries {
    PAULIS
        .iter()
        .zip(v)
        .fold([[ZERO; 2]; 2], |acc, (p, c)| add(&acc, &scale(p, c.into())))
}

/// `(Re tr(M σx), Re tr(M σy), Re tr(M σz))`
pub(crate) fn pauli_components(m: &Entries) -> [f64; 3] {
    PAULIS.map(|p| trace(&mul(m, &p)).re)
}

fn max_deviation(a: &Entries, b: &Entries) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Forces exact Hermitian structure after checking the deviation is small.
fn hermitize(m: &Entries) -> Result<Entries> {
    let off = (m[1][0] - m[0][1].conj()).norm();
    let deviation = off.max(m[0][0].im.abs()).max(m[1][1].im.abs());
    if !deviation.is_finite() || deviation > MATRIX_TOLERANCE {
        return Err(ValidationError::NotHermitian { deviation });
    }
    let upper = (m[0][1] + m[1][0].conj()) * 0.5;
    Ok([
        [Complex64::new(m[0][0].re, 0.0), upper],
        [upper.conj(), Complex64::new(m[1][1].re, 0.0)],
    ])
}

/// Single-qubit density matrix: Hermitian with unit trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DensityMatrix {
    entries: Entries,
}

impl DensityMatrix {
    /// Validates Hermiticity and trace at 1e-12. Entry (1,0) is then set to the
    /// conjugate of (0,1) and the diagonal is made real.
    pub fn from_entries(entries: Entries) -> Result<Self> {
        let entries = hermitize(&entries)?;
        let tr = trace(&entries).re;
        if (tr - 1.0).abs() > MATRIX_TOLERANCE {
            return Err(ValidationError::BadTrace { trace: tr });
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        trace(&self.entries).re
    }

    /// `trace(ρ²)`; one for pure states.
    pub fn purity(&self) -> f64 {
        trace(&mul(&self.entries, &self.entries)).re
    }

    /// `Re trace(ρ (ν·σ))`, the matrix-form expectation value.
    pub fn expectation(&self, nu: super::Observable) -> f64 {
        trace(&mul(&self.entries, &pauli_combination(nu.to_array()))).re
    }
}

/// 2×2 unitary with `U U† = 1` within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Unitary2 {
    entries: Entries,
}

impl Unitary2 {
    pub fn from_entries(entries: Entries) -> Result<Self> {
        let deviation = max_deviation(&mul(&entries, &adjoint(&entries)), &IDENTITY);
        if !deviation.is_finite() || deviation > MATRIX_TOLERANCE {
            return Err(ValidationError::NotUnitary { deviation });
        }
        Ok(Self { entries })
    }

    pub fn identity() -> Self {
        Self { entries: IDENTITY }
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: adjoint(&self.entries),
        }
    }

    /// Matrix product `self · other`.
    pub fn then_after(&self, other: &Self) -> Self {
        Self {
            entries: mul(&self.entries, &other.entries),
        }
    }

    /// Largest entry of `|U U† - 1|`.
    pub fn unitarity_deviation(&self) -> f64 {
        max_deviation(&mul(&self.entries, &adjoint(&self.entries)), &IDENTITY)
    }

    /// Largest entrywise distance to another unitary.
    pub fn distance(&self, other: &Self) -> f64 {
        max_deviation(&self.entries, &other.entries)
    }

    /// `U M U†`
    pub(crate) fn conjugate(&self, m: &Entries) -> Entries {
        mul(&mul(&self.entries, m), &adjoint(&self.entries))
    }

    /// `U† M U`
    pub(crate) fn conjugate_adjoint(&self, m: &Entries) -> Entries {
        mul(&mul(&adjoint(&self.entries), m), &self.entries)
    }
}

/// Rotation axis (unit 3-vector) and angle in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotationSpec {
    axis: [f64; 3],
    angle: f64,
}

impl RotationSpec {
    pub fn new(axis: [f64; 3], angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(ValidationError::NonFinite {
                what: "rotation angle",
                value: angle,
            });
        }
        let axis = unit_from_input("rotation axis", axis)?;
        Ok(Self { axis, angle })
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }
}
