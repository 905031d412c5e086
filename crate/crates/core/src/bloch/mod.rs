//! Single-qubit kernel: Bloch vectors, observables, Pauli algebra, axis-angle
//! unitaries and the two evolution pictures.
//!
//! Conjugation is always carried out on 2×2 complex matrices and read back
//! through Pauli traces. No 3×3 rotation matrix is ever formed, so the fact
//! that conjugation acts on Bloch vectors as a proper rotation is something the
//! tests check rather than something the code assumes.

mod matrix;
mod vector;

use num_complex::Complex64;

pub use matrix::{
    DensityMatrix, Entries, RotationSpec, Unitary2, IDENTITY, MATRIX_TOLERANCE, PAULIS, PAULI_X,
    PAULI_Y, PAULI_Z, PURITY_TOLERANCE,
};
pub use vector::{
    angle_between, BlochVector, Observable, INPUT_NORM_TOLERANCE, OUTPUT_NORM_TOLERANCE,
    RENORMALIZE_THRESHOLD,
};

use crate::error::{Result, ValidationError};
use matrix::{add, pauli_combination, pauli_components, scale};

/// `ρ = ½(1 + μ·σ)`
pub fn bloch_to_density(mu: BlochVector) -> DensityMatrix {
    let sum = add(&IDENTITY, &pauli_combination(mu.to_array()));
    DensityMatrix::from_entries(scale(&sum, Complex64::new(0.5, 0.0)))
        .expect("a unit Bloch vector always yields a valid density matrix")
}

/// Inverse of [`bloch_to_density`]: `μᵢ = trace(ρ σᵢ)`. Rejects mixed states.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    let trace = rho.trace();
    if (trace - 1.0).abs() > MATRIX_TOLERANCE {
        return Err(ValidationError::BadTrace { trace });
    }
    let purity = rho.purity();
    if (purity - 1.0).abs() > PURITY_TOLERANCE {
        return Err(ValidationError::NotPure { purity });
    }
    BlochVector::from_evolved(pauli_components(rho.entries()))
}

/// Rotation about the y axis by `delta`:
/// `cos(δ/2)|0⟩⟨0| − sin(δ/2)|0⟩⟨1| + sin(δ/2)|1⟩⟨0| + cos(δ/2)|1⟩⟨1|`.
pub fn u_y(delta: f64) -> Result<Unitary2> {
    if !delta.is_finite() {
        return Err(ValidationError::NonFinite {
            what: "delta",
            value: delta,
        });
    }
    let (s, c) = (delta / 2.0).sin_cos();
    Unitary2::from_entries([
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ])
}

/// `exp(−iδ n·σ/2) = cos(δ/2)·1 − i sin(δ/2)(n·σ)`
pub fn axis_unitary(spec: &RotationSpec) -> Result<Unitary2> {
    let (s, c) = (spec.angle() / 2.0).sin_cos();
    let generator = pauli_combination(spec.axis());
    Unitary2::from_entries(add(
        &scale(&IDENTITY, Complex64::new(c, 0.0)),
        &scale(&generator, Complex64::new(0.0, -s)),
    ))
}

/// Schrödinger picture: the state evolves, `ρ' = U ρ U†`.
pub fn evolve_schrodinger(mu: BlochVector, u: &Unitary2) -> Result<BlochVector> {
    let rho = bloch_to_density(mu);
    let evolved = DensityMatrix::from_entries(u.conjugate(rho.entries()))?;
    density_to_bloch(&evolved)
}

/// Heisenberg picture: the observable evolves, `ν'·σ = U† (ν·σ) U`.
pub fn evolve_heisenberg(nu: Observable, u: &Unitary2) -> Result<Observable> {
    let op = pauli_combination(nu.to_array());
    let evolved = u.conjugate_adjoint(&op);
    // ν'ᵢ = ½ trace((ν'·σ) σᵢ)
    let components = pauli_components(&evolved).map(|c| c * 0.5);
    Observable::from_evolved(components)
}

/// `ν·μ`, the expectation of `ν·σ` in the state μ.
pub fn expectation(nu: Observable, mu: BlochVector) -> f64 {
    vector::dot(nu.to_array(), mu.to_array()).clamp(-1.0, 1.0)
}
