//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qtm_core::bloch::{
    axis_unitary, bloch_to_density, density_to_bloch, evolve_heisenberg, evolve_schrodinger,
    expectation, u_y, BlochVector, Observable, RotationSpec,
};
use qtm_core::machine::{sweep_delta, Classification, MachineT, ScenarioInput};
use qtm_core::tm::{
    diagonalize_demo, library, parse_machine, AlwaysHalt, AlwaysLoop, BudgetRunner, Decider,
    DiagonalVerdict, Direction, Rule, RunKind, StateId, Symbol, TuringMachine,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn unit(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

fn state(rng: &mut ChaCha8Rng) -> BlochVector {
    let v = unit(rng);
    BlochVector::new(v[0], v[1], v[2]).unwrap()
}

fn observable(rng: &mut ChaCha8Rng) -> Observable {
    let v = unit(rng);
    Observable::new(v[0], v[1], v[2]).unwrap()
}

fn angle(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-4.0 * PI..4.0 * PI)
}

fn max_diff(a: [f64; 3], b: [f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn picture_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let (mu, nu, axis, delta) = (state(&mut rng), observable(&mut rng), unit(&mut rng), angle(&mut rng));
        let u = axis_unitary(&RotationSpec::new(axis, delta).unwrap()).unwrap();
        let s = expectation(nu, evolve_schrodinger(mu, &u).unwrap());
        let h = expectation(evolve_heisenberg(nu, &u).unwrap(), mu);
        worst = worst.max((s - h).abs());
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    if worst <= 1e-12 {
        Ok(format!("10000 cases, max deviation {worst:.1e}"))
    } else {
        Err(format!("max deviation {worst:e}"))
    }
}

fn p3_divergence() -> Check {
    let start = Instant::now();
    let delta = PI / 2.0;
    let v = MachineT::new(delta).unwrap().classify(ScenarioInput::SelfInput).unwrap();
    let want_s = [delta.sin(), 0.0, delta.cos()];
    let want_h = [-delta.sin(), 0.0, delta.cos()];
    let ds = max_diff(v.schrodinger_result, want_s);
    let dh = max_diff(v.heisenberg_result, want_h);
    if ds > 1e-12 || dh > 1e-12 {
        return Err(format!("results off by {ds:e} / {dh:e}"));
    }
    if max_diff(v.schrodinger_result, [1.0, 0.0, 0.0]) > 1e-12
        || max_diff(v.heisenberg_result, [-1.0, 0.0, 0.0]) > 1e-12
    {
        return Err("results are not (1,0,0) and (-1,0,0)".into());
    }
    if v.classification != Classification::Contradiction {
        return Err(format!("pi/2 classified {:?}", v.classification));
    }
    for k in 0..=3 {
        let c = MachineT::new(k as f64 * PI)
            .unwrap()
            .classify(ScenarioInput::SelfInput)
            .unwrap()
            .classification;
        if c != Classification::ComputableA {
            return Err(format!("{k}pi classified {c:?}"));
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("pi/2 contradicts; 0, pi, 2pi, 3pi computable".into())
}

fn divergence_curve() -> Check {
    let start = Instant::now();
    let deltas: Vec<f64> = (0..=360).map(|k| k as f64 * PI / 180.0).collect();
    let points = sweep_delta(&MachineT::default(), ScenarioInput::SelfInput, &deltas).unwrap();
    let zeros: Vec<usize> = (0..points.len())
        .filter(|&k| points[k].divergence_angle <= 1e-9)
        .collect();
    if zeros != [0, 180, 360] {
        return Err(format!("zeros at steps {zeros:?}"));
    }
    let top = points.iter().map(|p| p.divergence_angle).fold(f64::MIN, f64::max);
    let maxima: Vec<usize> = (0..points.len())
        .filter(|&k| top - points[k].divergence_angle <= 1e-12)
        .collect();
    if maxima != [90, 270] {
        return Err(format!("maxima at steps {maxima:?}"));
    }
    within(start.elapsed(), Duration::from_secs(2))?;
    Ok(format!("361 points, zeros {zeros:?}, maxima {maxima:?}"))
}

fn kernel_invariants() -> Check {
    const N: usize = 1_000;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let fail = |name: &str, dev: f64, tol: f64| -> Result<(), String> {
        if dev <= tol {
            Ok(())
        } else {
            Err(format!("{name}: deviation {dev:e} > {tol:e}"))
        }
    };
    for _ in 0..N {
        let mu = state(&mut rng);
        let back = density_to_bloch(&bloch_to_density(mu)).unwrap();
        fail("density round trip", max_diff(back.to_array(), mu.to_array()), 1e-12)?;
    }
    for _ in 0..N {
        let (axis, delta) = (unit(&mut rng), angle(&mut rng));
        fail("u_y unitarity", u_y(delta).unwrap().unitarity_deviation(), 1e-12)?;
        let u = axis_unitary(&RotationSpec::new(axis, delta).unwrap()).unwrap();
        fail("axis unitarity", u.unitarity_deviation(), 1e-12)?;
    }
    for _ in 0..N {
        let (mu, nu, axis, delta) = (state(&mut rng), observable(&mut rng), unit(&mut rng), angle(&mut rng));
        let u = axis_unitary(&RotationSpec::new(axis, delta).unwrap()).unwrap();
        let norm = |v: [f64; 3]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        fail("norm", (norm(evolve_schrodinger(mu, &u).unwrap().to_array()) - 1.0).abs(), 1e-9)?;
        fail("norm", (norm(evolve_heisenberg(nu, &u).unwrap().to_array()) - 1.0).abs(), 1e-9)?;
    }
    for _ in 0..N {
        let (mu, a, b) = (state(&mut rng), angle(&mut rng), angle(&mut rng));
        let twice = evolve_schrodinger(evolve_schrodinger(mu, &u_y(a).unwrap()).unwrap(), &u_y(b).unwrap()).unwrap();
        let once = evolve_schrodinger(mu, &u_y(a + b).unwrap()).unwrap();
        fail("composition", max_diff(twice.to_array(), once.to_array()), 1e-12)?;
    }
    for _ in 0..N {
        let (v, delta) = (unit(&mut rng), angle(&mut rng));
        let h = evolve_heisenberg(Observable::new(v[0], v[1], v[2]).unwrap(), &u_y(delta).unwrap()).unwrap();
        let s = evolve_schrodinger(BlochVector::new(v[0], v[1], v[2]).unwrap(), &u_y(-delta).unwrap()).unwrap();
        fail("heisenberg inverse", max_diff(h.to_array(), s.to_array()), 1e-12)?;
    }
    Ok(format!("5 invariants x {N} cases"))
}

fn random_machine(rng: &mut ChaCha8Rng) -> TuringMachine {
    let mut states: Vec<&str> = vec!["a", "b", "c"];
    states.shuffle(rng);
    states.truncate(rng.gen_range(0..=3));
    let mut symbols: Vec<&str> = vec!["0", "1", "x", "states"];
    symbols.shuffle(rng);
    symbols.truncate(rng.gen_range(0..=4));
    let all_states: Vec<&str> = ["h0", "h1"].iter().copied().chain(states.iter().copied()).collect();
    let all_symbols: Vec<&str> = std::iter::once("_").chain(symbols.iter().copied()).collect();
    let mut rules = Vec::new();
    for s in all_states.iter().filter(|s| **s != "h1") {
        for a in &all_symbols {
            if rng.gen_bool(0.6) {
                let next = *all_states.choose(rng).unwrap();
                let write = *all_symbols.choose(rng).unwrap();
                let dir = if rng.gen() { Direction::Right } else { Direction::Left };
                rules.push(Rule::new(*s, *a, next, write, dir));
            }
        }
    }
    TuringMachine::new(
        states.into_iter().map(StateId::new),
        symbols.into_iter().map(Symbol::new),
        Symbol::new("_"),
        rules,
    )
    .unwrap()
}

fn tm_engine() -> Check {
    // Hand trace of the committed rules on "11": two moves right over the
    // 1s, then write 1 on the blank and halt.
    let out = library::unary_increment().run_on_str("11", 1_000);
    if out.kind != RunKind::Halted || out.final_tape.to_string() != "111" || out.steps != 3 {
        return Err(format!("unary increment gave {out:?}"));
    }
    let budget = 5_000;
    let out = library::mover().run_on_str("", budget);
    if out.kind != RunKind::BudgetExceeded || out.steps != budget {
        return Err(format!("mover gave {:?} after {} steps", out.kind, out.steps));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let count = 200;
    for i in 0..count {
        let m = random_machine(&mut rng);
        let text = m.to_dsl().map_err(|e| e.to_string())?;
        match parse_machine(&text) {
            Ok(back) if back == m => {}
            other => return Err(format!("machine {i} did not round trip: {other:?}\n{text}")),
        }
    }
    Ok(format!("unary 111 in 3 steps, mover stops at {budget}, {count} machines round trip"))
}

fn diagonalization() -> Check {
    let start = Instant::now();
    let corpus: Vec<TuringMachine> = library::all().into_iter().map(|(_, m)| m).collect();
    let deciders: [Box<dyn Decider>; 3] = [
        Box::new(AlwaysHalt),
        Box::new(AlwaysLoop),
        Box::new(BudgetRunner::new(10_000)),
    ];
    let mut names = Vec::new();
    for d in &deciders {
        let report = diagonalize_demo(d.as_ref(), &corpus, 100_000).map_err(|e| e.to_string())?;
        let own = &report.self_application;
        if own.verdict != DiagonalVerdict::Mismatch {
            return Err(format!("{}: predicted {:?}, observed {:?}", report.decider, own.prediction, own.observed));
        }
        names.push(report.decider);
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("mismatch for {}", names.join(", ")))
}

fn cli_contract() -> Check {
    let mover: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "machines", "mover.tm"].iter().collect();
    let cases: [(&[&str], i32); 3] = [
        (&["scenario", "p3", "--delta", "1.5707963267948966"], 2),
        (&["scenario", "p3", "--delta", "3.141592653589793"], 0),
        (&["tm-run", "--machine", mover.to_str().unwrap(), "--budget", "1000"], 3),
    ];
    for (args, want) in cases {
        let status = Command::new(env!("CARGO_BIN_EXE_qtm"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())?
            .status;
        if status.code() != Some(want) {
            return Err(format!("qtm {} exited {status}, wanted {want}", args.join(" ")));
        }
    }
    Ok("exit codes 2, 0, 3".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("picture equivalence", picture_equivalence),
        ("p3 divergence", p3_divergence),
        ("divergence curve", divergence_curve),
        ("kernel invariants", kernel_invariants),
        ("tm engine", tm_engine),
        ("diagonalization", diagonalization),
        ("cli contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("PASS {}. {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
