use cartan::flow::{check_reachable, simulate, ControlSchedule, Model};
use cartan::io::{inline_or_file, read_matrix, MatrixJson};
use cartan::kak::{kak_su2n, kak_sun_son, residual};
use cartan::random::rng;
use cartan::roots::{compute_roots, CartanPair};
use cartan::synth::synthesize;
use cartan::two_qubit::{canonical_params_unitary, diagonalize_coupling, CouplingMatrix};
use cartan::weyl::{min_time, OrbitType};
use cartan::Result;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cartan", version, about = "KAK decompositions, reachable sets and minimum-time pulse synthesis")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecomposeFamily {
    SunSon,
    Su2n,
}

#[derive(Subcommand)]
enum Cmd {
    /// KAK decomposition of a special unitary matrix.
    Decompose {
        #[arg(long, value_enum)]
        family: DecomposeFamily,
        #[arg(long)]
        input: PathBuf,
    },
    /// Canonical two-qubit parameters of a 4x4 unitary.
    Canonical {
        #[arg(long)]
        input: PathBuf,
    },
    /// Local diagonalization of a coupling matrix.
    Coupling {
        /// 3x3 coupling matrix as inline JSON or a file path.
        #[arg(long = "J")]
        j: String,
    },
    /// Minimum time to reach a Cartan target with the given drift.
    Mintime {
        #[arg(long, allow_hyphen_values = true)]
        drift: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long)]
        orbit: OrbitType,
    },
    /// Positive restricted roots of a Cartan pair.
    Roots {
        /// twospin | epr | sun-son:<n> | su2n:<n>
        #[arg(long)]
        pair: String,
    },
    /// Random piecewise-constant control of a drift given by Cartan coordinates.
    Simulate {
        /// sun-son:<n> | su2n:<n> | two-qubit
        #[arg(long)]
        family: Model,
        #[arg(long, allow_hyphen_values = true)]
        drift: String,
        #[arg(long)]
        segments: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Mean segment duration.
        #[arg(long, default_value_t = 0.5)]
        mean_tau: f64,
        /// Certify the endpoint against the reachable set at the elapsed time.
        #[arg(long)]
        check: bool,
    },
    /// Minimum-time pulse program for a two-qubit target.
    Synth {
        #[arg(long)]
        target: PathBuf,
        #[arg(long = "J")]
        j: String,
    },
}

fn mat(m: &cartan::CMatrix) -> Value {
    serde_json::to_value(MatrixJson::from(m)).expect("matrix serializes")
}

fn run(cmd: Cmd) -> Result<Value> {
    Ok(match cmd {
        Cmd::Decompose { family, input } => {
            let u = read_matrix(&input)?;
            let f = match family {
                DecomposeFamily::SunSon => kak_sun_son(&u)?,
                DecomposeFamily::Su2n => kak_su2n(&u)?,
            };
            json!({
                "k_left": mat(&f.k_left),
                "cartan": f.cartan.values,
                "k_right": mat(&f.k_right),
                "residual": residual(&f, &u),
            })
        }
        Cmd::Canonical { input } => {
            let c = canonical_params_unitary(&read_matrix(&input)?)?;
            json!({ "triple": c.triple.to_array(), "k1": mat(&c.k1), "k2": mat(&c.k2) })
        }
        Cmd::Coupling { j } => {
            let j: CouplingMatrix = inline_or_file(&j)?;
            let d = diagonalize_coupling(&j)?;
            json!({ "triple": d.triple.to_array(), "k": mat(&d.k), "residual": d.residual })
        }
        Cmd::Mintime { drift, target, orbit } => {
            let drift: Vec<f64> = inline_or_file(&drift)?;
            let target: Vec<f64> = inline_or_file(&target)?;
            serde_json::to_value(min_time(&target, &drift, orbit)?).expect("serializes")
        }
        Cmd::Roots { pair } => {
            let rs = compute_roots(&CartanPair::by_name(&pair)?)?;
            let fund = rs.fundamental_roots()?;
            Value::Array(
                rs.roots
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        json!({
                            "value_fn": r.value_fn.iter().map(|v| v + 0.0).collect::<Vec<f64>>(),
                            "multiplicity": r.multiplicity,
                            "fundamental": fund.contains(&i),
                        })
                    })
                    .collect(),
            )
        }
        Cmd::Simulate { family, drift, segments, seed, mean_tau, check } => {
            let d: Vec<f64> = inline_or_file(&drift)?;
            let x = family.embed(&d)?;
            let mut r = rng(seed);
            let s = ControlSchedule::random(family, segments, mean_tau, &mut r);
            let p = simulate(family, &x, &s)?;
            let mut out = json!({ "endpoint": mat(&p), "T": s.total_time() });
            if check {
                let c = check_reachable(family, &p, &d, s.total_time())?;
                out["coords"] = json!(c.coords);
                out["cert"] = serde_json::to_value(&c.cert).expect("serializes");
                out["slack"] = json!(c.slack);
            } else {
                out["coords"] = json!(family.decompose(&p)?.1);
                out["cert"] = Value::Null;
                out["slack"] = Value::Null;
            }
            out
        }
        Cmd::Synth { target, j } => {
            let j: CouplingMatrix = inline_or_file(&j)?;
            serde_json::to_value(synthesize(&read_matrix(&target)?, &j)?).expect("serializes")
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
