//! The halt-qubit machine: a one-gate quantum computer made of a system
//! observable, a halt qubit and its observable, driven by a single y rotation.
//!
//! Two scenarios are supported. With a [`ScenarioInput::State`] the machine
//! rotates an external state and the observer compares expectation values (P2).
//! With [`ScenarioInput::SelfInput`] the machine's own observable is fed back as
//! the input, so the same vector plays both the state and the observable (P3),
//! and the two pictures are compared on the evolved vector itself.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::bloch::{
    angle_between, axis_unitary, evolve_heisenberg, evolve_schrodinger, expectation, u_y,
    BlochVector, Observable, RotationSpec, Unitary2,
};
use crate::error::{Result, ValidationError};

/// Divergence angles at or below this count as agreement.
pub const DIVERGENCE_TOLERANCE: f64 = 1e-9;

/// Rotation angle used when none is given.
pub const DEFAULT_DELTA: f64 = FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Picture {
    Schrodinger,
    Heisenberg,
}

impl Picture {
    pub const BOTH: [Picture; 2] = [Picture::Schrodinger, Picture::Heisenberg];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Scenario {
    /// Observer watches an external state rotate.
    #[serde(rename = "p2")]
    P2,
    /// Observer watches its own observable rotate.
    #[serde(rename = "p3")]
    P3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScenarioInput {
    State(BlochVector),
    /// The machine's own system observable is the input.
    SelfInput,
}

impl ScenarioInput {
    pub fn scenario(&self) -> Scenario {
        match self {
            ScenarioInput::State(_) => Scenario::P2,
            ScenarioInput::SelfInput => Scenario::P3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    /// Halts with a single consistent outcome.
    ComputableA,
    /// Never halts. Not reachable for this one-step machine.
    ComputableB,
    /// Halts, but the two pictures disagree on the outcome.
    Contradiction,
}

impl Classification {
    pub fn is_computable(self) -> bool {
        !matches!(self, Classification::Contradiction)
    }
}

/// Halt register reading: Bloch z = +1 is symbol 0, z = −1 is symbol 1.
pub fn halt_symbol(reading: f64) -> Option<u8> {
    if (reading - 1.0).abs() <= DIVERGENCE_TOLERANCE {
        Some(0)
    } else if (reading + 1.0).abs() <= DIVERGENCE_TOLERANCE {
        Some(1)
    } else {
        None
    }
}

/// The machine's fixed parts. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MachineT {
    nu_s: Observable,
    mu_h: BlochVector,
    nu_h: Observable,
    delta: f64,
    #[serde(skip)]
    gate: Unitary2,
    #[serde(skip)]
    halt_gate: Unitary2,
}

impl MachineT {
    /// Fresh machine: system observable, halt qubit and halt observable all at
    /// (0,0,1), rotating by `delta` about y.
    pub fn new(delta: f64) -> Result<Self> {
        Self::with_system_observable(Observable::z_up(), delta)
    }

    /// Same gate and halt register, different system observable.
    pub fn with_system_observable(nu_s: Observable, delta: f64) -> Result<Self> {
        let gate = u_y(delta)?;
        // π about x: the 0 → 1 flip of the halt register.
        let halt_gate = axis_unitary(&RotationSpec::new([1.0, 0.0, 0.0], PI)?)?;
        Ok(Self {
            nu_s,
            mu_h: BlochVector::z_up(),
            nu_h: Observable::z_up(),
            delta,
            gate,
            halt_gate,
        })
    }

    /// Copy of this machine with a different rotation angle.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        Self::with_system_observable(self.nu_s, delta)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn system_observable(&self) -> Observable {
        self.nu_s
    }

    pub fn halt_qubit(&self) -> BlochVector {
        self.mu_h
    }

    pub fn halt_observable(&self) -> Observable {
        self.nu_h
    }

    pub fn gate(&self) -> &Unitary2 {
        &self.gate
    }

    /// Flips the halt register in the given picture and returns
    /// `(reading_before, reading_after, register_after)`.
    fn halt(&self, picture: Picture) -> Result<(f64, f64, [f64; 3])> {
        let before = expectation(self.nu_h, self.mu_h);
        Ok(match picture {
            Picture::Schrodinger => {
                let mu_h = evolve_schrodinger(self.mu_h, &self.halt_gate)?;
                (before, expectation(self.nu_h, mu_h), mu_h.to_array())
            }
            Picture::Heisenberg => {
                let nu_h = evolve_heisenberg(self.nu_h, &self.halt_gate)?;
                (before, expectation(nu_h, self.mu_h), nu_h.to_array())
            }
        })
    }

    fn trace(
        &self,
        scenario: Scenario,
        picture: Picture,
        input: [f64; 3],
        output: [f64; 3],
        expectations: (f64, f64),
    ) -> Result<RunTrace> {
        let (halt_before, halt_after, halt_register) = self.halt(picture)?;
        Ok(RunTrace {
            scenario,
            picture,
            delta: self.delta,
            input,
            output,
            halt_register,
            halt_state_flipped: halt_symbol(halt_before) == Some(0)
                && halt_symbol(halt_after) == Some(1),
            expectation_before: expectations.0,
            expectation_after: expectations.1,
        })
    }

    /// Rotates an external state. The Schrödinger branch evolves the state,
    /// the Heisenberg branch evolves the system observable; the output is
    /// whichever vector moved.
    pub fn run_p2(&self, input: BlochVector, picture: Picture) -> Result<RunTrace> {
        let before = expectation(self.nu_s, input);
        let (output, after) = match picture {
            Picture::Schrodinger => {
                let mu = evolve_schrodinger(input, &self.gate)?;
                (mu.to_array(), expectation(self.nu_s, mu))
            }
            Picture::Heisenberg => {
                let nu = evolve_heisenberg(self.nu_s, &self.gate)?;
                (nu.to_array(), expectation(nu, input))
            }
        };
        self.trace(Scenario::P2, picture, input.to_array(), output, (before, after))
    }

    /// Feeds the system observable back in as the input. The Schrödinger
    /// branch evolves it as a state, the Heisenberg branch as an observable;
    /// both measure against the unevolved reference frame.
    pub fn run_p3(&self, picture: Picture) -> Result<RunTrace> {
        let input = self.nu_s;
        let as_state = BlochVector::from_observable(input);
        let (output, after) = match picture {
            Picture::Schrodinger => {
                let mu = evolve_schrodinger(as_state, &self.gate)?;
                (mu.to_array(), expectation(input, mu))
            }
            Picture::Heisenberg => {
                let nu = evolve_heisenberg(input, &self.gate)?;
                (nu.to_array(), expectation(nu, as_state))
            }
        };
        let before = expectation(input, as_state);
        self.trace(Scenario::P3, picture, input.to_array(), output, (before, after))
    }

    pub fn run(&self, input: ScenarioInput, picture: Picture) -> Result<RunTrace> {
        match input {
            ScenarioInput::State(mu) => self.run_p2(mu, picture),
            ScenarioInput::SelfInput => self.run_p3(picture),
        }
    }

    /// Runs both pictures and checks them against the halting criteria.
    ///
    /// P2 outcomes are compared as expectation values, expressed as the
    /// difference of the observer-to-state angles. P3 outcomes are compared
    /// as the evolved vectors themselves.
    pub fn classify(&self, input: ScenarioInput) -> Result<Verdict> {
        let schrodinger = self.run(input, Picture::Schrodinger)?;
        let heisenberg = self.run(input, Picture::Heisenberg)?;
        let divergence_angle = match input {
            ScenarioInput::State(mu) => {
                let frame_s = angle_between(self.nu_s.to_array(), schrodinger.output);
                let frame_h = angle_between(heisenberg.output, mu.to_array());
                (frame_s - frame_h).abs()
            }
            ScenarioInput::SelfInput => angle_between(schrodinger.output, heisenberg.output),
        };
        let classification = criterion(
            schrodinger.halt_state_flipped,
            heisenberg.halt_state_flipped,
            divergence_angle,
        );
        Ok(Verdict {
            scenario: input.scenario(),
            delta: self.delta,
            classification,
            schrodinger_result: schrodinger.output,
            heisenberg_result: heisenberg.output,
            divergence_angle,
            schrodinger,
            heisenberg,
        })
    }
}

impl Default for MachineT {
    fn default() -> Self {
        Self::new(DEFAULT_DELTA).expect("default delta is finite")
    }
}

/// Criterion (A): halts with one outcome. Criterion (B): never halts.
/// Anything else is a contradiction.
fn criterion(halted_s: bool, halted_h: bool, divergence: f64) -> Classification {
    match (halted_s, halted_h) {
        (true, true) if divergence <= DIVERGENCE_TOLERANCE => Classification::ComputableA,
        (false, false) => Classification::ComputableB,
        _ => Classification::Contradiction,
    }
}

/// One picture's run of the machine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunTrace {
    pub scenario: Scenario,
    pub picture: Picture,
    pub delta: f64,
    pub input: [f64; 3],
    /// The evolved state (Schrödinger) or evolved observable (Heisenberg).
    pub output: [f64; 3],
    /// Halt qubit (Schrödinger) or halt observable (Heisenberg) after the run.
    pub halt_register: [f64; 3],
    pub halt_state_flipped: bool,
    pub expectation_before: f64,
    pub expectation_after: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Verdict {
    pub scenario: Scenario,
    pub delta: f64,
    pub classification: Classification,
    pub schrodinger_result: [f64; 3],
    pub heisenberg_result: [f64; 3],
    pub divergence_angle: f64,
    pub schrodinger: RunTrace,
    pub heisenberg: RunTrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub delta: f64,
    pub divergence_angle: f64,
    pub classification: Classification,
}

/// Classifies `input` once per angle, keeping the template's system
/// observable. Results follow the order of `deltas`.
pub fn sweep_delta(
    template: &MachineT,
    input: ScenarioInput,
    deltas: &[f64],
) -> Result<Vec<SweepPoint>> {
    if let Some(&bad) = deltas.iter().find(|d| !d.is_finite()) {
        return Err(ValidationError::NonFinite {
            what: "delta",
            value: bad,
        });
    }
    deltas
        .iter()
        .map(|&delta| {
            let verdict = template.with_delta(delta)?.classify(input)?;
            Ok(SweepPoint {
                delta,
                divergence_angle: verdict.divergence_angle,
                classification: verdict.classification,
            })
        })
        .collect()
}
