//! Command implementations for the `bdconvex` binary.
//!
//! Each command returns an [`Output`] carrying the text for stdout, an
//! optional message for stderr, and the process exit code, so that the
//! commands can be exercised without spawning a process.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use bdconvex::convex::{
    duality_gap, lsd_as_sdp, lsd_lp_over_separable, solve_sdp, DEFAULT_TOL,
};
use bdconvex::io::{format_sig15, parse_state, round_sig15};
use bdconvex::lsd::{optimal_lsd, residual_spectrum};
use bdconvex::oracle::{grid_max_lambda, grid_min_ree};
use bdconvex::relent::{kkt_report, min_relative_entropy, ree_bd, EntropyProblem};
use bdconvex::sampling::random_entangled;
use bdconvex::{BDState, Error, RegionClass};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID_STATE: i32 = 3;
pub const EXIT_BAD_RANGE: i32 = 4;

pub const SEED_VAR: &str = "BDCONVEX_SEED";
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_STEP: f64 = 5e-3;

/// Closest REE state and LSD separable part count as equal within this.
const COINCIDENCE_TOL: f64 = 1e-12;

const SDP_LAMBDA_TOL: f64 = 1e-6;
const LP_LAMBDA_TOL: f64 = 1e-8;
const KKT_TOL: f64 = 1e-9;
const SLACKNESS_TOL: f64 = 1e-6;
const PURITY_TOL: f64 = 1e-8;
/// Lattice optimizers must land within this many grid steps of the
/// analytic optimizer.
const ORACLE_STEPS: f64 = 3.0;

#[derive(Debug, Parser)]
#[command(
    name = "bdconvex",
    version,
    about = "Optimal Lewenstein-Sanpera decomposition and relative entropy of entanglement for Bell-diagonal states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a state and report its optimal decomposition and REE.
    Analyze {
        /// State JSON file, or `-` for stdin.
        #[arg(long, default_value = "-")]
        state: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tabulate λ and REE along p = (p1, r, r, r), r = (1 − p1)/3.
    Sweep {
        #[arg(long)]
        p1_min: f64,
        #[arg(long)]
        p1_max: f64,
        /// Number of rows, endpoints included.
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Cross-check the closed forms against the solvers and oracles.
    Verify {
        /// State JSON file, or `-` for stdin. Ignored with `--random`.
        #[arg(long, default_value = "-")]
        state: String,
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        /// Grid step for the oracle checks of the full level.
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        /// Verify this many random entangled states instead of `--state`,
        /// drawn with the seed in BDCONVEX_SEED.
        #[arg(long)]
        random: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        Self {
            stdout: String::new(),
            stderr: message.into(),
            code,
        }
    }
}

/// Exit code for a library error raised while reading or using a state.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => EXIT_PARSE,
        Error::OutOfRange { .. } | Error::StepOutOfRange(_) => EXIT_BAD_RANGE,
        _ => EXIT_INVALID_STATE,
    }
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig15(x)).map_or(Value::Null, Value::Number)
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn read_input(source: &str) -> Result<String, Output> {
    let mut text = String::new();
    let res = if source == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(Path::new(source)).map(|t| text = t)
    };
    res.map_err(|e| Output::fail(EXIT_PARSE, format!("cannot read {source}: {e}")))?;
    Ok(text)
}

fn load_state(source: &str) -> Result<BDState, Output> {
    let text = read_input(source)?;
    parse_state(&text).map_err(|e| Output::fail(exit_code(&e), format!("error: {e}")))
}

pub fn run(cli: Cli) -> Output {
    match cli.command {
        Command::Analyze { state, format } => match load_state(&state) {
            Ok(s) => cmd_analyze(&s, format),
            Err(out) => out,
        },
        Command::Sweep {
            p1_min,
            p1_max,
            steps,
            format,
        } => cmd_sweep(p1_min, p1_max, steps, format),
        Command::Verify {
            state,
            level,
            step,
            random,
        } => {
            if let Some(n) = random {
                return match seed_from_env() {
                    Ok(seed) => cmd_verify_random(n, seed, level, step),
                    Err(out) => out,
                };
            }
            match load_state(&state) {
                Ok(s) => cmd_verify(&s, level, step),
                Err(out) => out,
            }
        }
    }
}

fn seed_from_env() -> Result<u64, Output> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Output::fail(EXIT_PARSE, format!("{SEED_VAR} must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Full analysis report of one state.
pub fn analyze_report(rho: &BDState) -> Value {
    let class = rho.classify();
    let t = rho.to_tvec();
    let lsd = optimal_lsd(rho);
    let ree = ree_bd(rho);
    let coincidence = ree.closest_state.max_abs_diff(&lsd.separable) <= COINCIDENCE_TOL;
    let index = match class {
        RegionClass::Entangled(k) => json!(k),
        _ => Value::Null,
    };
    json!({
        "state": { "p": nums(&rho.probs()) },
        "t": nums(&t.as_array()),
        "classification": class.label(),
        "dominant_index": index,
        "concurrence": num(rho.concurrence()),
        "lsd": {
            "lambda": num(lsd.lambda),
            "separable": nums(&lsd.separable.probs()),
            "entangled_index": lsd.entangled_index,
            "entangled_weight": num(lsd.entangled_weight),
        },
        "ree": {
            "bits": num(ree.value),
            "infinite": ree.infinite,
            "closest_state": nums(&ree.closest_state.probs()),
            "multiplier": num(ree.multiplier),
        },
        "coincidence": coincidence,
    })
}

const CSV_HEADER: &str = "p1,lambda,ree_bits,concurrence,w1,w2,w3,w4";

/// One table row: dominant weight, λ, REE, concurrence, closest state.
fn row_values(rho: &BDState) -> [f64; 8] {
    let lsd = optimal_lsd(rho);
    let ree = ree_bd(rho);
    let w = ree.closest_state.probs();
    [
        rho.max_prob(),
        lsd.lambda,
        ree.value,
        rho.concurrence(),
        w[0],
        w[1],
        w[2],
        w[3],
    ]
}

fn csv_line(values: &[f64]) -> String {
    values.iter().map(|&v| format_sig15(v)).collect::<Vec<_>>().join(",")
}

fn row_json(values: &[f64; 8]) -> Value {
    let mut m = Map::new();
    for (name, v) in ["p1", "lambda", "ree_bits", "concurrence"].iter().zip(values) {
        m.insert((*name).into(), num(*v));
    }
    m.insert("closest_state".into(), nums(&values[4..]));
    Value::Object(m)
}

pub fn cmd_analyze(rho: &BDState, format: Format) -> Output {
    match format {
        Format::Json => Output::ok(to_json_text(&analyze_report(rho))),
        Format::Csv => Output::ok(format!("{CSV_HEADER}\n{}\n", csv_line(&row_values(rho)))),
    }
}

/// States p = (p1, r, r, r) for evenly spaced p1 in [p1_min, p1_max].
pub fn sweep_states(p1_min: f64, p1_max: f64, steps: usize) -> Result<Vec<BDState>, Error> {
    let valid = p1_min.is_finite() && p1_max.is_finite() && 0.5 < p1_min && p1_min < p1_max && p1_max < 1.0;
    if !valid {
        return Err(Error::OutOfRange {
            value: if 0.5 < p1_min && p1_min < 1.0 { p1_max } else { p1_min },
            range: "1/2 < p1_min < p1_max < 1",
        });
    }
    if steps == 0 {
        return Err(Error::OutOfRange {
            value: 0.0,
            range: "steps >= 1",
        });
    }
    let h = if steps > 1 {
        (p1_max - p1_min) / (steps - 1) as f64
    } else {
        0.0
    };
    (0..steps)
        .map(|i| {
            let p1 = if i + 1 == steps && steps > 1 {
                p1_max
            } else {
                p1_min + i as f64 * h
            };
            let r = (1.0 - p1) / 3.0;
            BDState::from_probs([p1, r, r, r])
        })
        .collect()
}

pub fn cmd_sweep(p1_min: f64, p1_max: f64, steps: usize, format: Format) -> Output {
    let states = match sweep_states(p1_min, p1_max, steps) {
        Ok(s) => s,
        Err(e) => return Output::fail(EXIT_BAD_RANGE, format!("error: {e}")),
    };
    let rows: Vec<[f64; 8]> = states.iter().map(row_values).collect();
    match format {
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in &rows {
                let _ = writeln!(out, "{}", csv_line(r));
            }
            Output::ok(out)
        }
        Format::Json => Output::ok(to_json_text(&Value::Array(rows.iter().map(row_json).collect()))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "residual": num(self.residual),
            "tolerance": num(self.tolerance),
            "pass": self.passed(),
        })
    }
}

/// Runs the cross-checks for an entangled state. Failures to solve count
/// as an infinite residual on the affected check.
pub fn verify_checks(rho: &BDState, level: Level, step: f64) -> Result<Vec<Check>, Error> {
    if !rho.classify().is_entangled() {
        return Err(Error::NotEntangled);
    }
    let lsd = optimal_lsd(rho);
    let ree = ree_bd(rho);
    let mut checks = Vec::new();

    let prob = lsd_as_sdp(rho, &lsd.separable)?;
    let sol = solve_sdp(&prob, DEFAULT_TOL);
    let (sdp_res, slack_res) = if sol.is_optimal() {
        let slack = (&prob.eval(&sol.x) * &sol.z).max_abs();
        let gap = duality_gap(&prob, &sol.x, &sol.z).unwrap_or(f64::INFINITY);
        ((sol.x[0] - lsd.lambda).abs(), slack.max(gap))
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    checks.push(Check {
        name: "sdp_lambda",
        residual: sdp_res,
        tolerance: SDP_LAMBDA_TOL,
    });

    let lp_res = match lsd_lp_over_separable(rho) {
        Ok((lam, _, _)) => (lam - lsd.lambda).abs(),
        Err(_) => f64::INFINITY,
    };
    checks.push(Check {
        name: "lp_lambda",
        residual: lp_res,
        tolerance: LP_LAMBDA_TOL,
    });

    let kkt_res = if ree.infinite {
        // no interior optimum for a pure state; nothing to certify
        0.0
    } else {
        let ep = EntropyProblem::bell_diagonal(rho, 0.5)?;
        match min_relative_entropy(&ep) {
            Ok(newton) => kkt_report(&ep, &ree.closest_state.probs(), &newton.y_star, KKT_TOL)
                .map(|r| r.max_violation)
                .unwrap_or(f64::INFINITY),
            Err(_) => f64::INFINITY,
        }
    };
    checks.push(Check {
        name: "kkt_ree",
        residual: kkt_res,
        tolerance: KKT_TOL,
    });

    checks.push(Check {
        name: "slackness",
        residual: slack_res,
        tolerance: SLACKNESS_TOL,
    });

    let purity = match residual_spectrum(rho, &lsd) {
        Ok(eig) => eig
            .iter()
            .zip([1.0, 0.0, 0.0, 0.0])
            .map(|(e, x)| (e - x).abs())
            .fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    };
    checks.push(Check {
        name: "residual_purity",
        residual: purity,
        tolerance: PURITY_TOL,
    });

    if level == Level::Full {
        let g = grid_min_ree(rho, step)?;
        let target = if ree.infinite { None } else { Some(ree.closest_state) };
        checks.push(Check {
            name: "grid_min_ree",
            residual: target.map_or(0.0, |t| g.argmin_or_max.max_abs_diff(&t)),
            tolerance: ORACLE_STEPS * step,
        });
        let l = grid_max_lambda(rho, step)?;
        checks.push(Check {
            name: "grid_max_lambda",
            residual: if lsd.lambda > 0.0 {
                l.argmin_or_max.max_abs_diff(&lsd.separable)
            } else {
                l.value
            },
            tolerance: ORACLE_STEPS * step,
        });
    }
    Ok(checks)
}

fn verify_report(rho: &BDState, level: Level, step: f64, checks: &[Check]) -> Value {
    let mut m = Map::new();
    m.insert("state".into(), json!({ "p": nums(&rho.probs()) }));
    m.insert(
        "level".into(),
        json!(match level {
            Level::Quick => "quick",
            Level::Full => "full",
        }),
    );
    if level == Level::Full {
        m.insert("step".into(), num(step));
    }
    m.insert("checks".into(), Value::Array(checks.iter().map(Check::to_json).collect()));
    m.insert("passed".into(), json!(checks.iter().all(Check::passed)));
    Value::Object(m)
}

fn failed_names(checks: &[Check]) -> Vec<&'static str> {
    checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect()
}

pub fn cmd_verify(rho: &BDState, level: Level, step: f64) -> Output {
    let checks = match verify_checks(rho, level, step) {
        Ok(c) => c,
        Err(e) => return Output::fail(exit_code(&e), format!("error: {e}")),
    };
    let failed = failed_names(&checks);
    Output {
        stdout: to_json_text(&verify_report(rho, level, step, &checks)),
        stderr: if failed.is_empty() {
            String::new()
        } else {
            format!("failed checks: {}", failed.join(", "))
        },
        code: if failed.is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED },
    }
}

pub fn cmd_verify_random(n: usize, seed: u64, level: Level, step: f64) -> Output {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::with_capacity(n);
    let mut failures = Vec::new();
    for i in 0..n {
        let rho = random_entangled(&mut rng);
        let checks = match verify_checks(&rho, level, step) {
            Ok(c) => c,
            Err(e) => return Output::fail(exit_code(&e), format!("error: {e}")),
        };
        for name in failed_names(&checks) {
            failures.push(format!("state {i}: {name}"));
        }
        reports.push(verify_report(&rho, level, step, &checks));
    }
    let report = json!({
        "seed": seed,
        "count": n,
        "passed": failures.is_empty(),
        "reports": reports,
    });
    Output {
        stdout: to_json_text(&report),
        stderr: if failures.is_empty() {
            String::new()
        } else {
            format!("failed checks: {}", failures.join(", "))
        },
        code: if failures.is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED },
    }
}
