//! Thin command-line front end.
//!
//! ```text
//! gqft bratteli --group g.json [--out d.json] [--dot d.dot]
//! gqft synth    --group g.json [--plan beals|homothetic|auto] [--out c.json] [--stats]
//! gqft simulate --group g.json --circuit c.json
//!               (--preset delta|uniform|random [--seed N] | --input f.json)
//!               [--out amps.json]
//! gqft verify   --group g.json [--plan P] [--tol T] [--seed N] [--out r.json]
//! gqft costs    --family symmetric|cyclic|cyclic-two-power|dihedral
//!               --from A --to B [--out costs.csv]
//! ```
//!
//! Exit codes: 0 pass, 1 failure, 2 capability error.

use std::collections::HashMap;
use std::process::ExitCode;

use num_complex::Complex64;

use gqft::circuit::{dot, Circuit};
use gqft::group::{Group, GroupSpec};
use gqft::rep::Reps;
use gqft::rng::SplitMix64;
use gqft::sim;
use gqft::synth::{self, PlanChoice};
use gqft::verify;

struct Args {
    flags: HashMap<String, String>,
}

impl Args {
    fn parse(argv: &[String]) -> Result<Args, String> {
        let mut flags = HashMap::new();
        let mut it = argv.iter();
        while let Some(arg) = it.next() {
            let Some(name) = arg.strip_prefix("--") else {
                return Err(format!("unexpected argument {arg:?}"));
            };
            let value = match name {
                "stats" => "true".to_string(),
                _ => it.next().cloned().ok_or(format!("--{name} needs a value"))?,
            };
            flags.insert(name.to_string(), value);
        }
        Ok(Args { flags })
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.flags.get(name).map(|s| s.as_str())
    }

    fn required(&self, name: &str) -> Result<&str, String> {
        self.get(name).ok_or(format!("missing --{name}"))
    }
}

fn load_group(args: &Args) -> Result<(Group, GroupSpec), String> {
    let path = args.required("group")?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let spec: GroupSpec =
        serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
    let group = Group::build(&spec).map_err(|e| e.to_string())?;
    Ok((group, spec))
}

fn write_out(args: &Args, default_stdout: &str) -> Result<(), String> {
    match args.get("out") {
        Some(path) => std::fs::write(path, default_stdout).map_err(|e| format!("{path}: {e}")),
        None => {
            println!("{default_stdout}");
            Ok(())
        }
    }
}

fn plan_choice(args: &Args) -> Result<PlanChoice, String> {
    args.get("plan").unwrap_or("auto").parse()
}

fn cmd_bratteli(args: &Args) -> Result<ExitCode, String> {
    let (group, _) = load_group(args)?;
    let reps = Reps::build(group).map_err(|e| e.to_string())?;
    if let Some(path) = args.get("dot") {
        std::fs::write(path, reps.diagram().to_dot()).map_err(|e| format!("{path}: {e}"))?;
    }
    if let Some(path) = args.get("reference") {
        // Dense reference transform, entries as [re, im] pairs.
        let matrix = gqft::rep::fourier::dense_qft_matrix(&reps).map_err(|e| e.to_string())?;
        std::fs::write(path, serde_json::to_string(&matrix).unwrap())
            .map_err(|e| format!("{path}: {e}"))?;
    }
    let json = serde_json::to_string_pretty(&reps.diagram().to_json()).unwrap();
    write_out(args, &json)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_synth(args: &Args) -> Result<ExitCode, String> {
    let (group, _) = load_group(args)?;
    let reps = Reps::build(group).map_err(|e| e.to_string())?;
    let (circuit, plan) =
        synth::synthesize(&reps, plan_choice(args)?).map_err(|e| e.to_string())?;
    if args.get("stats").is_some() {
        let (max_index, diameter) = reps.group().tower_stats();
        eprintln!(
            "I = {max_index}, D = {diameter}, M = {}, log2|G| = {:.3}",
            gqft::rep::schur::max_multiplicity(&reps),
            (reps.group().order() as f64).log2()
        );
        for lp in &plan.levels {
            let gates = circuit
                .gates
                .iter()
                .filter(|g| g.note.starts_with(&format!("L{}/", lp.level)))
                .count();
            eprintln!(
                "  level {}: {:?}, index {}, {} gates",
                lp.level, lp.strategy, lp.index, gates
            );
        }
        eprintln!(
            "  total: {} gates, cost {}",
            circuit.gates.len(),
            circuit.cost().map_err(|e| e.to_string())?
        );
    }
    if let Some(path) = args.get("dot") {
        std::fs::write(path, dot::to_dot(&circuit)).map_err(|e| format!("{path}: {e}"))?;
    }
    write_out(args, &circuit.serialize_json())?;
    Ok(ExitCode::SUCCESS)
}

fn parse_input_function(
    args: &Args,
    group: &Group,
) -> Result<Vec<Complex64>, String> {
    let order = group.order() as usize;
    if let Some(path) = args.get("input") {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        let map: HashMap<String, [f64; 2]> =
            serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
        let mut f = vec![Complex64::new(0.0, 0.0); order];
        for (key, [re, im]) in map {
            let el = group.parse(&key).map_err(|e| e.to_string())?;
            let idx = group
                .element_index(&el)
                .ok_or(format!("element {key:?} not in the group"))?;
            f[idx] = Complex64::new(re, im);
        }
        return Ok(f);
    }
    match args.get("preset").unwrap_or("delta") {
        "delta" => {
            let mut f = vec![Complex64::new(0.0, 0.0); order];
            let idx = group.element_index(&group.identity()).unwrap();
            f[idx] = Complex64::new(1.0, 0.0);
            Ok(f)
        }
        "uniform" => Ok(vec![Complex64::new(1.0 / (order as f64).sqrt(), 0.0); order]),
        "random" => {
            let seed: u64 = args.get("seed").unwrap_or("7").parse().map_err(|_| "bad --seed")?;
            let mut rng = SplitMix64::new(seed);
            let mut f: Vec<Complex64> = (0..order)
                .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
                .collect();
            let norm = f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in &mut f {
                *z /= norm;
            }
            Ok(f)
        }
        other => Err(format!("unknown preset {other:?}")),
    }
}

fn cmd_simulate(args: &Args) -> Result<ExitCode, String> {
    let (group, _) = load_group(args)?;
    let circuit_path = args.required("circuit")?;
    let text = std::fs::read_to_string(circuit_path).map_err(|e| format!("{circuit_path}: {e}"))?;
    let circuit = Circuit::deserialize_json(&text).map_err(|e| e.to_string())?;
    let f = parse_input_function(args, &group)?;
    let mut state = sim::encode_input(&group, &circuit.layout, &f, sim::DEFAULT_AMP_CAP)
        .map_err(|e| e.to_string())?;
    sim::apply(&circuit, &mut state).map_err(|e| e.to_string())?;
    let decoded = sim::decode_output(&state);
    let pairs: Vec<serde_json::Value> = circuit
        .layout
        .output_pairs
        .iter()
        .zip(&decoded.amplitudes)
        .map(|((s, t), amp)| {
            serde_json::json!({ "s": s, "t": t, "amp": [amp.re, amp.im] })
        })
        .collect();
    let json = serde_json::to_string_pretty(&serde_json::json!({
        "pairs": pairs,
        "leakage": decoded.leakage,
    }))
    .unwrap();
    write_out(args, &json)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &Args) -> Result<ExitCode, String> {
    let path = args.required("group")?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let spec: GroupSpec = serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
    let mut options = verify::VerifyOptions {
        plan: plan_choice(args)?,
        ..Default::default()
    };
    if let Some(t) = args.get("tol") {
        options.tolerance = t.parse().map_err(|_| "bad --tol")?;
    }
    if let Some(s) = args.get("seed") {
        options.seed = s.parse().map_err(|_| "bad --seed")?;
    }
    match verify::verify_group(&spec, &options) {
        Ok(report) => {
            let json = serde_json::to_string_pretty(&report).unwrap();
            write_out(args, &json)?;
            eprintln!(
                "{}: max deviation {:.3e}, max leakage {:.3e} -> {}",
                report.group,
                report.max_deviation,
                report.max_leakage,
                if report.passed { "PASS" } else { "FAIL" }
            );
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Err(e) => {
            eprintln!("verification error: {e}");
            Ok(ExitCode::from(e.exit_code() as u8))
        }
    }
}

fn cmd_costs(args: &Args) -> Result<ExitCode, String> {
    let family = args.required("family")?;
    let from: u64 = args.required("from")?.parse().map_err(|_| "bad --from")?;
    let to: u64 = args.required("to")?.parse().map_err(|_| "bad --to")?;
    let rows = verify::cost_report(family, from, to).map_err(|e| e.to_string())?;
    write_out(args, verify::cost_rows_to_csv(&rows).trim_end())?;
    Ok(ExitCode::SUCCESS)
}

const USAGE: &str = "usage: gqft <bratteli|synth|simulate|verify|costs> [flags]
  common: --group spec.json   group file, e.g. {\"family\":\"symmetric\",\"n\":4}
  bratteli: --out diagram.json, --dot file.dot, --reference matrix.json
  synth:    --plan beals|homothetic|auto, --out circuit.json, --dot file.dot, --stats
  simulate: --circuit circuit.json, --preset delta|uniform|random, --seed N, --input f.json
  verify:   --plan, --tol, --seed, --out report.json (exit 0 pass / 1 fail / 2 capability)
  costs:    --family symmetric|cyclic|cyclic-two-power|dihedral --from A --to B";

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let Some(cmd) = argv.first() else {
        eprintln!("{USAGE}");
        return ExitCode::from(1);
    };
    let args = match Args::parse(&argv[1..]) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{e}\n{USAGE}");
            return ExitCode::from(1);
        }
    };
    let result = match cmd.as_str() {
        "bratteli" => cmd_bratteli(&args),
        "synth" => cmd_synth(&args),
        "simulate" => cmd_simulate(&args),
        "verify" => cmd_verify(&args),
        "costs" => cmd_costs(&args),
        other => Err(format!("unknown command {other:?}\n{USAGE}")),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
