use std::f64::consts::PI;
use std::fs;
use std::io::Write;

use anyhow::{bail, ensure, Context, Result};
use serde::Serialize;

use qtm_core::bloch::{
    axis_unitary, bloch_to_density, evolve_heisenberg, evolve_schrodinger, expectation,
    BlochVector, DensityMatrix, Observable, RotationSpec, Unitary2,
};
use qtm_core::machine::{
    sweep_delta, Classification, MachineT, Picture, RunTrace, Scenario, ScenarioInput, Verdict,
    DEFAULT_DELTA,
};
use qtm_core::tm::{
    diagonalize_demo, library, parse_machine, AlwaysHalt, AlwaysLoop, BudgetRunner, Decider,
    DiagonalReport, DiagonalVerdict, RunKind, Tape, Transition, TuringMachine,
};

use crate::args::{
    DeciderName, Format, QubitArgs, ScenarioArgs, ScenarioName, SweepArgs, TmDiagArgs, TmRunArgs,
};
use crate::output::{fmt17, sig17, sig17_matrix, sig17_vec, sink, write_json};

/// Process exit status. Usage errors (1) are raised as `Err` instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success,
    Contradiction,
    Loops,
    Inconclusive,
}

impl Exit {
    pub fn code(self) -> u8 {
        match self {
            Exit::Success => 0,
            Exit::Contradiction => 2,
            Exit::Loops => 3,
            Exit::Inconclusive => 4,
        }
    }
}

pub fn verdict_exit(c: Classification) -> Exit {
    match c {
        Classification::ComputableA => Exit::Success,
        Classification::Contradiction => Exit::Contradiction,
        Classification::ComputableB => Exit::Loops,
    }
}

/// Radians, or a multiple of pi: `pi`, `-pi/4`, `3pi/2`, `2*pi`.
pub fn parse_angle(text: &str) -> Result<f64> {
    let t = text.trim().to_ascii_lowercase();
    let value = match t.find("pi") {
        None => t
            .parse::<f64>()
            .with_context(|| format!("invalid angle `{text}`"))?,
        Some(at) => {
            let coeff = t[..at].trim_end_matches('*');
            let coeff = match coeff {
                "" => 1.0,
                "-" => -1.0,
                c => c
                    .parse::<f64>()
                    .with_context(|| format!("invalid angle `{text}`"))?,
            };
            let rest = &t[at + 2..];
            let denom = match rest.strip_prefix('/') {
                Some(d) => d
                    .parse::<f64>()
                    .with_context(|| format!("invalid angle `{text}`"))?,
                None if rest.is_empty() => 1.0,
                None => bail!("invalid angle `{text}`"),
            };
            coeff * PI / denom
        }
    };
    ensure!(value.is_finite(), "angle `{text}` is not finite");
    Ok(value)
}

/// `x,y,z`
pub fn parse_vector(text: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    ensure!(parts.len() == 3, "expected a vector `x,y,z`, got `{text}`");
    let mut v = [0.0; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .with_context(|| format!("invalid component `{part}` in `{text}`"))?;
    }
    Ok(v)
}

fn parse_state(text: &str) -> Result<BlochVector> {
    let v = parse_vector(text)?;
    BlochVector::new(v[0], v[1], v[2]).with_context(|| format!("invalid input vector `{text}`"))
}

fn delta_or_default(text: Option<&str>) -> Result<f64> {
    text.map_or(Ok(DEFAULT_DELTA), parse_angle)
}

/// Resolves the positional scenario against `--input`.
fn scenario_input(name: Option<ScenarioName>, input: Option<&str>) -> Result<ScenarioInput> {
    let is_self = input.is_some_and(|i| i.trim() == "self");
    match (name, input) {
        (Some(ScenarioName::P2), _) if is_self => {
            bail!("`--input self` selects p3 and conflicts with scenario p2")
        }
        (Some(ScenarioName::P3), Some(i)) if !is_self => {
            bail!("scenario p3 takes the machine itself as input; `--input {i}` is not allowed")
        }
        (Some(ScenarioName::P3), _) => Ok(ScenarioInput::SelfInput),
        (None, Some(_)) if is_self => Ok(ScenarioInput::SelfInput),
        (_, Some(i)) => Ok(ScenarioInput::State(parse_state(i)?)),
        (_, None) => Ok(ScenarioInput::State(BlochVector::z_up())),
    }
}

#[derive(Serialize)]
struct TraceRecord {
    scenario: Scenario,
    #[serde(serialize_with = "sig17")]
    delta: f64,
    picture: Picture,
    #[serde(serialize_with = "sig17_vec")]
    input: [f64; 3],
    #[serde(serialize_with = "sig17_vec")]
    output: [f64; 3],
    halt_flipped: bool,
    #[serde(serialize_with = "sig17")]
    expectation_before: f64,
    #[serde(serialize_with = "sig17")]
    expectation_after: f64,
    classification: Classification,
    #[serde(serialize_with = "sig17")]
    divergence_angle: f64,
}

impl TraceRecord {
    fn new(trace: &RunTrace, verdict: &Verdict) -> Self {
        Self {
            scenario: trace.scenario,
            delta: trace.delta,
            picture: trace.picture,
            input: trace.input,
            output: trace.output,
            halt_flipped: trace.halt_state_flipped,
            expectation_before: trace.expectation_before,
            expectation_after: trace.expectation_after,
            classification: verdict.classification,
            divergence_angle: verdict.divergence_angle,
        }
    }

    fn csv_row(&self) -> Vec<String> {
        let mut row = vec![scenario_name(self.scenario).to_owned(), fmt17(self.delta)];
        row.push(picture_name(self.picture).to_owned());
        row.extend(self.input.iter().chain(&self.output).map(|x| fmt17(*x)));
        row.push(self.halt_flipped.to_string());
        row.push(fmt17(self.expectation_before));
        row.push(fmt17(self.expectation_after));
        row.push(classification_name(self.classification).to_owned());
        row.push(fmt17(self.divergence_angle));
        row
    }
}

const TRACE_CSV_HEADER: [&str; 14] = [
    "scenario",
    "delta",
    "picture",
    "input_x",
    "input_y",
    "input_z",
    "output_x",
    "output_y",
    "output_z",
    "halt_flipped",
    "expectation_before",
    "expectation_after",
    "classification",
    "divergence_angle",
];

#[derive(Serialize)]
struct VerdictRecord {
    scenario: Scenario,
    #[serde(serialize_with = "sig17")]
    delta: f64,
    classification: Classification,
    #[serde(serialize_with = "sig17_vec")]
    schrodinger_result: [f64; 3],
    #[serde(serialize_with = "sig17_vec")]
    heisenberg_result: [f64; 3],
    #[serde(serialize_with = "sig17")]
    divergence_angle: f64,
}

#[derive(Serialize)]
struct ScenarioReport {
    traces: [TraceRecord; 2],
    verdict: VerdictRecord,
}

fn scenario_name(s: Scenario) -> &'static str {
    match s {
        Scenario::P2 => "p2",
        Scenario::P3 => "p3",
    }
}

fn picture_name(p: Picture) -> &'static str {
    match p {
        Picture::Schrodinger => "schrodinger",
        Picture::Heisenberg => "heisenberg",
    }
}

fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::ComputableA => "ComputableA",
        Classification::ComputableB => "ComputableB",
        Classification::Contradiction => "Contradiction",
    }
}

fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_scenario(args: &ScenarioArgs) -> Result<Exit> {
    let input = scenario_input(args.scenario, args.input.as_deref())?;
    let machine = MachineT::new(delta_or_default(args.delta.as_deref())?)?;
    let verdict = machine.classify(input)?;
    let report = ScenarioReport {
        traces: [
            TraceRecord::new(&verdict.schrodinger, &verdict),
            TraceRecord::new(&verdict.heisenberg, &verdict),
        ],
        verdict: VerdictRecord {
            scenario: verdict.scenario,
            delta: verdict.delta,
            classification: verdict.classification,
            schrodinger_result: verdict.schrodinger_result,
            heisenberg_result: verdict.heisenberg_result,
            divergence_angle: verdict.divergence_angle,
        },
    };
    let mut out = sink(args.output.out.as_deref())?;
    match args.output.format.unwrap_or(Format::Json) {
        Format::Json => write_json(&mut out, &report)?,
        Format::Csv => {
            let rows: Vec<_> = report.traces.iter().map(TraceRecord::csv_row).collect();
            write_csv(&mut out, &TRACE_CSV_HEADER, &rows)?;
        }
    }
    out.flush()?;
    Ok(verdict_exit(verdict.classification))
}

/// `from, from + step, …` up to and including `to` (with a 1e-9 step slack).
pub fn sweep_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    ensure!(step > 0.0, "sweep step must be positive, got {step}");
    ensure!(to >= from, "sweep range is empty: {from} > {to}");
    let count = ((to - from) / step + 1e-9).floor() + 1.0;
    ensure!(count <= 1e7, "sweep would produce {count} rows");
    Ok((0..count as usize).map(|k| from + k as f64 * step).collect())
}

#[derive(Serialize)]
struct SweepRecord {
    #[serde(serialize_with = "sig17")]
    delta: f64,
    #[serde(serialize_with = "sig17")]
    divergence_angle: f64,
    classification: Classification,
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<Exit> {
    let input = scenario_input(args.scenario, args.input.as_deref())?;
    let deltas = sweep_grid(
        parse_angle(&args.from)?,
        parse_angle(&args.to)?,
        parse_angle(&args.step)?,
    )?;
    let points = sweep_delta(&MachineT::default(), input, &deltas)?;
    let mut out = sink(args.output.out.as_deref())?;
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let rows: Vec<_> = points
                .iter()
                .map(|p| {
                    vec![
                        fmt17(p.delta),
                        fmt17(p.divergence_angle),
                        classification_name(p.classification).to_owned(),
                    ]
                })
                .collect();
            write_csv(&mut out, &["delta", "divergence_angle", "classification"], &rows)?;
        }
        Format::Json => {
            let records: Vec<_> = points
                .iter()
                .map(|p| SweepRecord {
                    delta: p.delta,
                    divergence_angle: p.divergence_angle,
                    classification: p.classification,
                })
                .collect();
            write_json(&mut out, &records)?;
        }
    }
    out.flush()?;
    Ok(Exit::Success)
}

fn pairs(m: &[[num_complex::Complex64; 2]; 2]) -> [[(f64, f64); 2]; 2] {
    m.map(|row| row.map(|c| (c.re, c.im)))
}

#[derive(Serialize)]
struct QubitReport {
    #[serde(serialize_with = "sig17")]
    delta: f64,
    #[serde(serialize_with = "sig17_vec")]
    axis: [f64; 3],
    #[serde(serialize_with = "sig17_vec")]
    state: [f64; 3],
    #[serde(serialize_with = "sig17_vec")]
    observable: [f64; 3],
    #[serde(serialize_with = "sig17_matrix")]
    unitary: [[(f64, f64); 2]; 2],
    #[serde(serialize_with = "sig17_matrix")]
    density_before: [[(f64, f64); 2]; 2],
    #[serde(serialize_with = "sig17")]
    expectation_before: f64,
    #[serde(serialize_with = "sig17_vec")]
    schrodinger_state: [f64; 3],
    #[serde(serialize_with = "sig17_matrix")]
    schrodinger_density: [[(f64, f64); 2]; 2],
    #[serde(serialize_with = "sig17")]
    schrodinger_expectation: f64,
    #[serde(serialize_with = "sig17_vec")]
    heisenberg_observable: [f64; 3],
    #[serde(serialize_with = "sig17")]
    heisenberg_expectation: f64,
}

pub fn cmd_qubit(args: &QubitArgs) -> Result<Exit> {
    let delta = delta_or_default(args.delta.as_deref())?;
    let mu = match &args.input {
        Some(text) => parse_state(text)?,
        None => BlochVector::z_up(),
    };
    let nu = match &args.observable {
        Some(text) => {
            let v = parse_vector(text)?;
            Observable::new(v[0], v[1], v[2])
                .with_context(|| format!("invalid observable `{text}`"))?
        }
        None => Observable::z_up(),
    };
    let axis = match &args.axis {
        Some(text) => parse_vector(text)?,
        None => [0.0, 1.0, 0.0],
    };
    let spec = RotationSpec::new(axis, delta)?;
    let u: Unitary2 = axis_unitary(&spec)?;
    let mu_after = evolve_schrodinger(mu, &u)?;
    let nu_after = evolve_heisenberg(nu, &u)?;
    let density_after: DensityMatrix = bloch_to_density(mu_after);
    let report = QubitReport {
        delta,
        axis: spec.axis(),
        state: mu.to_array(),
        observable: nu.to_array(),
        unitary: pairs(u.entries()),
        density_before: pairs(bloch_to_density(mu).entries()),
        expectation_before: expectation(nu, mu),
        schrodinger_state: mu_after.to_array(),
        schrodinger_density: pairs(density_after.entries()),
        schrodinger_expectation: expectation(nu, mu_after),
        heisenberg_observable: nu_after.to_array(),
        heisenberg_expectation: expectation(nu_after, mu),
    };
    let mut out = sink(args.output.out.as_deref())?;
    match args.output.format.unwrap_or(Format::Json) {
        Format::Json => write_json(&mut out, &report)?,
        Format::Csv => {
            let mut row = vec![
                fmt17(report.delta),
                fmt17(report.expectation_before),
                fmt17(report.schrodinger_expectation),
                fmt17(report.heisenberg_expectation),
            ];
            row.extend(
                report
                    .schrodinger_state
                    .iter()
                    .chain(&report.heisenberg_observable)
                    .map(|x| fmt17(*x)),
            );
            let header = [
                "delta",
                "expectation_before",
                "schrodinger_expectation",
                "heisenberg_expectation",
                "state_x",
                "state_y",
                "state_z",
                "observable_x",
                "observable_y",
                "observable_z",
            ];
            write_csv(&mut out, &header, &[row])?;
        }
    }
    out.flush()?;
    Ok(Exit::Success)
}

fn load_machine(path: &std::path::Path) -> Result<TuringMachine> {
    let source =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_machine(&source).with_context(|| format!("{}", path.display()))
}

#[derive(Serialize)]
struct StepLine<'a> {
    step: u64,
    state: &'a str,
    head: i64,
    read: &'a str,
    written: &'a str,
    direction: i64,
}

#[derive(Serialize)]
struct OutcomeRecord {
    kind: RunKind,
    output_symbol: Option<String>,
    steps: u64,
    final_state: String,
    head: i64,
    tape: String,
}

pub fn cmd_tm(args: &TmRunArgs) -> Result<Exit> {
    let format = args.output.format.unwrap_or(Format::Json);
    ensure!(
        !(args.trace && format == Format::Csv),
        "`--trace` emits JSON lines and cannot be combined with `--format csv`"
    );
    let machine = load_machine(&args.machine)?;
    let tape = Tape::from_chars(machine.blank().clone(), &args.tape);
    let mut out = sink(args.output.out.as_deref())?;
    let mut trace_error = None;
    let outcome = if args.trace {
        machine.run_traced(tape, args.budget, |step, t: &Transition| {
            let line = StepLine {
                step,
                state: t.state.as_str(),
                head: t.head,
                read: t.read.as_str(),
                written: t.written.as_str(),
                direction: t.direction.map_or(0, |d| d.offset()),
            };
            if trace_error.is_none() {
                if let Err(e) = serde_json::to_writer(&mut out, &line)
                    .map_err(anyhow::Error::from)
                    .and_then(|()| writeln!(out).map_err(Into::into))
                {
                    trace_error = Some(e);
                }
            }
        })
    } else {
        machine.run(tape, args.budget)
    };
    if let Some(e) = trace_error {
        return Err(e);
    }
    let record = OutcomeRecord {
        kind: outcome.kind,
        output_symbol: outcome.output_symbol.as_ref().map(|s| s.to_string()),
        steps: outcome.steps,
        final_state: outcome.final_state.to_string(),
        head: outcome.final_tape.head(),
        tape: outcome.final_tape.to_string(),
    };
    match format {
        Format::Json if args.trace => {
            serde_json::to_writer(&mut out, &record)?;
            writeln!(out)?;
        }
        Format::Json => write_json(&mut out, &record)?,
        Format::Csv => {
            let kind = match record.kind {
                RunKind::Halted => "Halted",
                RunKind::BudgetExceeded => "BudgetExceeded",
            };
            let row = vec![
                kind.to_owned(),
                record.output_symbol.clone().unwrap_or_default(),
                record.steps.to_string(),
                record.final_state.clone(),
                record.head.to_string(),
                record.tape.clone(),
            ];
            write_csv(
                &mut out,
                &["kind", "output_symbol", "steps", "final_state", "head", "tape"],
                &[row],
            )?;
        }
    }
    out.flush()?;
    Ok(match outcome.kind {
        RunKind::Halted => Exit::Success,
        RunKind::BudgetExceeded => Exit::Loops,
    })
}

#[derive(Serialize)]
struct DiagOutput<'a> {
    corpus_names: Vec<String>,
    mismatch_exhibited: bool,
    #[serde(flatten)]
    report: &'a DiagonalReport,
}

pub fn cmd_diag(args: &TmDiagArgs) -> Result<Exit> {
    ensure!(
        args.output.format != Some(Format::Csv),
        "tm-diag only emits JSON"
    );
    ensure!(
        args.decider_budget.is_none() || args.decider == DeciderName::BudgetRunner,
        "`--decider-budget` only applies to `--decider budget-runner`"
    );
    let decider: Box<dyn Decider> = match args.decider {
        DeciderName::AlwaysHalt => Box::new(AlwaysHalt),
        DeciderName::AlwaysLoop => Box::new(AlwaysLoop),
        DeciderName::BudgetRunner => Box::new(BudgetRunner::new(
            args.decider_budget.unwrap_or((args.budget / 10).max(1)),
        )),
    };
    let (names, corpus): (Vec<String>, Vec<TuringMachine>) = if args.machine.is_empty() {
        library::all()
            .into_iter()
            .map(|(n, m)| (n.to_owned(), m))
            .unzip()
    } else {
        args.machine
            .iter()
            .map(|p| Ok((p.display().to_string(), load_machine(p)?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip()
    };
    let report = diagonalize_demo(decider.as_ref(), &corpus, args.budget)?;
    let mut out = sink(args.output.out.as_deref())?;
    write_json(
        &mut out,
        &DiagOutput {
            corpus_names: names,
            mismatch_exhibited: report.mismatch_exhibited(),
            report: &report,
        },
    )?;
    out.flush()?;
    Ok(match report.self_application.verdict {
        DiagonalVerdict::Mismatch => Exit::Success,
        DiagonalVerdict::Inconclusive | DiagonalVerdict::Agreement => Exit::Inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("1.5707963267948966").unwrap(), PI / 2.0);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_angle("-pi/4").unwrap(), -PI / 4.0);
        assert_eq!(parse_angle("3pi/2").unwrap(), 3.0 * PI / 2.0);
        assert_eq!(parse_angle("2*pi").unwrap(), 2.0 * PI);
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("abc").is_err());
        assert!(parse_angle("inf").is_err());
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("0,0,1").unwrap(), [0.0, 0.0, 1.0]);
        assert_eq!(parse_vector(" -1, 0 ,0").unwrap(), [-1.0, 0.0, 0.0]);
        assert!(parse_vector("0,1").is_err());
        assert!(parse_state("1,1,0").is_err());
    }

    #[test]
    fn scenario_resolution() {
        use ScenarioName::*;
        assert_eq!(scenario_input(Some(P3), None).unwrap(), ScenarioInput::SelfInput);
        assert_eq!(scenario_input(None, Some("self")).unwrap(), ScenarioInput::SelfInput);
        assert_eq!(
            scenario_input(None, None).unwrap(),
            ScenarioInput::State(BlochVector::z_up())
        );
        assert!(scenario_input(Some(P2), Some("self")).is_err());
        assert!(scenario_input(Some(P3), Some("0,0,1")).is_err());
    }

    #[test]
    fn grid() {
        let g = sweep_grid(0.0, 2.0 * PI, PI / 2.0).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(sweep_grid(0.0, 0.0, 0.1).unwrap(), vec![0.0]);
        assert_eq!(sweep_grid(0.0, 2.0 * PI, PI / 180.0).unwrap().len(), 361);
        assert!(sweep_grid(0.0, 1.0, 0.0).is_err());
        assert!(sweep_grid(0.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(verdict_exit(Classification::ComputableA).code(), 0);
        assert_eq!(verdict_exit(Classification::Contradiction).code(), 2);
        assert_eq!(verdict_exit(Classification::ComputableB).code(), 3);
    }
}
