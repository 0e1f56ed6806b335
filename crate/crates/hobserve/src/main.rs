use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hobserve::checks;
use hobserve::error::{Error, Result};
use hobserve::io::{
    self, parse_coeff_list, parse_pole_list, parse_quat_literal, parse_state_vector, DesignReport,
    RunManifest, FORMAT_VERSION,
};
use hobserve::observer::{self, Method};
use hobserve::poly::QPoly;
use hobserve::quat::Quat;
use hobserve::simulate::{simulate_error, simulate_observer, InputSignal, SimConfig};
use hobserve::tol::Tol;

#[derive(Parser)]
#[command(name = "hobserve", version, about = "Quaternionic observer design and simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Companion,
    Ackermann,
    Dual,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Companion => Method::Companion,
            MethodArg::Ackermann => Method::Ackermann,
            MethodArg::Dual => Method::Dual,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Paper,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a system file: companion form, companion polynomial,
    /// spectra by both routes, observability/controllability, stability.
    Analyze {
        system: PathBuf,
        /// Report JSON path (default: analysis.json next to the input).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Design an observer gain for a target polynomial or pole list.
    Design {
        system: PathBuf,
        /// Comma-separated pole list, e.g. "-1,-2" or "-1+1i" or "-1+1j,-2+1k".
        #[arg(long, conflicts_with = "poly", allow_hyphen_values = true)]
        poles: Option<String>,
        /// Ascending target coefficients, e.g. "2,3,1".
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long, value_enum, default_value = "companion")]
        method: MethodArg,
        /// Allow a noncentral (quaternionic) target through Ackermann,
        /// reproducing its documented pole misplacement.
        #[arg(long)]
        force: bool,
        #[arg(long, default_value = "design.json")]
        output: PathBuf,
    },
    /// Simulate the plant/observer pair and write a CSV trace.
    Simulate {
        system: PathBuf,
        design: PathBuf,
        #[arg(long = "t-end", default_value_t = 10.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Constant step input as a quaternion literal (default: zero).
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        /// Initial plant state, comma-separated quaternion literals.
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        /// Initial observer state (default: zero).
        #[arg(long, allow_hyphen_values = true)]
        xhat0: Option<String>,
        /// Simulate only the error system e' = (A - LC) e.
        #[arg(long = "emit-error-only")]
        emit_error_only: bool,
        #[arg(long, default_value = "trace.csv")]
        output: PathBuf,
    },
    /// Run the self-verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "paper")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn tolerances_json(tol: &Tol) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("algebra".into(), json!(tol.algebra));
    m.insert("spectral".into(), json!(tol.spectral));
    m.insert("pivot".into(), json!(tol.pivot));
    m.insert("rank".into(), json!(tol.rank));
    m
}

fn write_manifest(dir: &Path, manifest: &RunManifest) {
    let path = dir.join("manifest.json");
    if let Ok(text) = serde_json::to_string_pretty(manifest) {
        let _ = std::fs::write(path, text);
    }
}

fn quat_json(q: Quat) -> Value {
    json!([q.w, q.x, q.y, q.z])
}

fn matrix_json(m: &hobserve::QMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| quat_json(m.get(i, j))).collect()))
            .collect(),
    )
}

fn cmd_analyze(system: &Path, output: Option<&Path>) -> Result<Vec<String>> {
    let tol = Tol::from_env();
    let sys = io::read_system(system)?;
    let observable = sys.is_observable();
    let controllable = sys.is_controllable();
    if !observable {
        eprintln!("system is not observable; no companion form exists");
        return Err(Error::NotObservable);
    }
    let obs = sys.observability_matrix();
    let obs_inv = obs.solve_tol(&hobserve::QMatrix::identity(sys.dim()), &tol)?;
    let cr = sys.to_observable_companion_tol(&tol)?;
    let spectrum_companion = cr.poly.right_root_classes_tol(&tol)?;
    let spectrum_direct = sys.a.right_spectrum_tol(&tol)?;
    let stable = spectrum_direct.classes.iter().all(|c| c.re < 0.0);
    let annihilation = cr.annihilation_residual();

    println!("observability matrix O:\n{obs}");
    println!("O^-1:\n{obs_inv}");
    println!("similarity T:\n{}", cr.t);
    println!("companion A_o:\n{}", cr.a_o);
    println!("companion C_o:\n{}", cr.c_o);
    println!("companion polynomial: {}", cr.poly);
    println!("annihilation residual |a(A_o)_l|_F = {annihilation:.3e}");
    println!("conditioning estimate |T|_F |T^-1|_F = {:.3e}", cr.cond_estimate);
    println!("right spectrum (companion route): {spectrum_companion}");
    println!("right spectrum (complex-adjoint route): {spectrum_direct}");
    println!("observable: {observable}, controllable: {controllable}, stable: {stable}");

    let report = json!({
        "format_version": FORMAT_VERSION,
        "observability_matrix": matrix_json(&obs),
        "observability_inverse": matrix_json(&obs_inv),
        "similarity_T": matrix_json(&cr.t),
        "companion_Ao": matrix_json(&cr.a_o),
        "companion_Co": matrix_json(&cr.c_o),
        "companion_coefficients": cr.poly.coeffs.iter().map(|c| quat_json(*c)).collect::<Vec<_>>(),
        "annihilation_residual": annihilation,
        "cond_estimate": cr.cond_estimate,
        "spectrum_companion_route": spectrum_companion.classes,
        "spectrum_adjoint_route": spectrum_direct.classes,
        "observable": observable,
        "controllable": controllable,
        "stable": stable,
    });
    let out_path = output
        .map(Path::to_path_buf)
        .unwrap_or_else(|| system.with_file_name("analysis.json"));
    std::fs::write(&out_path, serde_json::to_string_pretty(&report).expect("serializable"))?;
    Ok(vec![out_path.display().to_string()])
}

fn cmd_design(
    system: &Path,
    poles: Option<&str>,
    poly: Option<&str>,
    method: Method,
    force: bool,
    output: &Path,
) -> Result<Vec<String>> {
    let tol = Tol::from_env();
    let sys = io::read_system(system)?;
    let target = match (poles, poly) {
        (Some(p), None) => observer::target_from_poles(&parse_pole_list(p)?, sys.dim())?,
        (None, Some(c)) => QPoly::new(parse_coeff_list(c)?),
        _ => {
            return Err(Error::Parse(
                "exactly one of --poles and --poly is required".into(),
            ))
        }
    };
    let design = observer::place(&sys, &target, method, force)?;
    let report = observer::verify_design(&sys, &design, tol.spectral)?;
    let mut residuals = Map::new();
    residuals.insert("class_deviation".into(), json!(report.class_deviation));
    residuals.insert("target_matched".into(), json!(report.matched));
    let file = DesignReport::from_design(&design, residuals);
    std::fs::write(output, serde_json::to_string_pretty(&file).expect("serializable"))?;
    println!("method: {method}");
    println!("gain L:");
    for q in &file.gain {
        println!("  {q:.6}");
    }
    println!("achieved spectrum: {}", design.achieved);
    println!(
        "target matched: {} (class deviation {:.3e}), stable: {}",
        report.matched, report.class_deviation, report.stable
    );
    Ok(vec![output.display().to_string()])
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    system: &Path,
    design: &Path,
    t_end: f64,
    dt: f64,
    u: Option<&str>,
    x0: Option<&str>,
    xhat0: Option<&str>,
    emit_error_only: bool,
    output: &Path,
) -> Result<Vec<String>> {
    let sys = io::read_system(system)?;
    let gain = io::read_design(design)?.gain_matrix();
    if gain.rows() != sys.dim() {
        return Err(Error::Dimension("design gain dimension does not match the system".into()));
    }
    let n = sys.dim();
    let input = match u {
        Some(lit) => InputSignal::Step(parse_quat_literal(lit)?),
        None => InputSignal::Zero,
    };
    let parse_state = |s: Option<&str>| -> Result<Vec<Quat>> {
        match s {
            Some(text) => {
                let v = parse_state_vector(text)?;
                if v.len() != n {
                    return Err(Error::Parse(format!("state vector must have {n} entries")));
                }
                Ok(v)
            }
            None => Ok(vec![Quat::ZERO; n]),
        }
    };
    let cfg = SimConfig::new(t_end, dt, input, parse_state(x0)?, parse_state(xhat0)?)?;
    let trace = if emit_error_only {
        let a_obs = &sys.a - &gain.matmul(&sys.c)?;
        let e0: Vec<Quat> = cfg
            .x0
            .iter()
            .zip(&cfg.xhat0)
            .map(|(a, b)| *a - *b)
            .collect();
        simulate_error(&a_obs, &e0, &cfg)?
    } else {
        simulate_observer(&sys, &gain, &cfg)?
    };
    let mut file = std::fs::File::create(output)?;
    io::write_trace_csv(&mut file, &trace)?;
    println!(
        "wrote {} steps; err_norm start {:.6e}, end {:.6e}",
        trace.times.len(),
        trace.err_norm.first().unwrap_or(&0.0),
        trace.err_norm.last().unwrap_or(&0.0)
    );
    Ok(vec![output.display().to_string()])
}

fn cmd_verify(suite: SuiteArg, seed: u64) -> Result<Vec<String>> {
    let results = match suite {
        SuiteArg::Paper => checks::paper_suite(),
        SuiteArg::Random => checks::random_suite(seed),
    };
    let mut all_passed = true;
    for r in &results {
        println!(
            "[{}] {} residual {:.3e} | {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.residual,
            r.detail
        );
        all_passed &= r.passed;
    }
    if !all_passed {
        return Err(Error::NonConvergence(0));
    }
    println!("all {} checks passed", results.len());
    Ok(vec![])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = Tol::from_env();
    let (command_name, input, options): (&str, Option<String>, Map<String, Value>) = match &cli.command {
        Command::Analyze { system, output } => (
            "analyze",
            Some(system.display().to_string()),
            [("output".to_string(), json!(output.as_ref().map(|p| p.display().to_string())))]
                .into_iter()
                .collect(),
        ),
        Command::Design {
            system,
            poles,
            poly,
            method,
            force,
            output,
        } => (
            "design",
            Some(system.display().to_string()),
            [
                ("poles".to_string(), json!(poles)),
                ("poly".to_string(), json!(poly)),
                ("method".to_string(), json!(format!("{:?}", method).to_lowercase())),
                ("force".to_string(), json!(force)),
                ("output".to_string(), json!(output.display().to_string())),
            ]
            .into_iter()
            .collect(),
        ),
        Command::Simulate {
            system,
            design,
            t_end,
            dt,
            u,
            x0,
            xhat0,
            emit_error_only,
            output,
        } => (
            "simulate",
            Some(system.display().to_string()),
            [
                ("design".to_string(), json!(design.display().to_string())),
                ("t_end".to_string(), json!(t_end)),
                ("dt".to_string(), json!(dt)),
                ("u".to_string(), json!(u)),
                ("x0".to_string(), json!(x0)),
                ("xhat0".to_string(), json!(xhat0)),
                ("emit_error_only".to_string(), json!(emit_error_only)),
                ("output".to_string(), json!(output.display().to_string())),
            ]
            .into_iter()
            .collect(),
        ),
        Command::Verify { suite, seed } => (
            "verify",
            None,
            [
                ("suite".to_string(), json!(format!("{:?}", suite).to_lowercase())),
                ("seed".to_string(), json!(seed)),
            ]
            .into_iter()
            .collect(),
        ),
    };

    let result = match &cli.command {
        Command::Analyze { system, output } => cmd_analyze(system, output.as_deref()),
        Command::Design {
            system,
            poles,
            poly,
            method,
            force,
            output,
        } => cmd_design(
            system,
            poles.as_deref(),
            poly.as_deref(),
            (*method).into(),
            *force,
            output,
        ),
        Command::Simulate {
            system,
            design,
            t_end,
            dt,
            u,
            x0,
            xhat0,
            emit_error_only,
            output,
        } => cmd_simulate(
            system,
            design,
            *t_end,
            *dt,
            u.as_deref(),
            x0.as_deref(),
            xhat0.as_deref(),
            *emit_error_only,
            output,
        ),
        Command::Verify { suite, seed } => cmd_verify(*suite, *seed),
    };

    let (status, exit_code, outputs) = match &result {
        Ok(outputs) => ("ok".to_string(), 0, outputs.clone()),
        Err(e) => {
            eprintln!("error: {e}");
            (e.to_string(), e.exit_code(), vec![])
        }
    };
    // The manifest lands next to the first output, or in the current
    // directory when the run produced none.
    let manifest_dir = outputs
        .first()
        .map(|p| {
            PathBuf::from(p)
                .parent()
                .map(Path::to_path_buf)
                .filter(|d| !d.as_os_str().is_empty())
                .unwrap_or_else(|| PathBuf::from("."))
        })
        .unwrap_or_else(|| PathBuf::from("."));
    let manifest = RunManifest {
        format_version: FORMAT_VERSION,
        tool_version: hobserve::VERSION.to_string(),
        command: command_name.to_string(),
        input,
        options,
        outputs,
        tolerances: tolerances_json(&tol),
        status,
        exit_code,
    };
    write_manifest(&manifest_dir, &manifest);
    ExitCode::from(exit_code as u8)
}
