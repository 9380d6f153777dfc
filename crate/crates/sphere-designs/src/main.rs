//! Command-line front end. All reports go to standard output as JSON;
//! diagnostics go to standard error. Exit codes: 0 success, 1 for a
//! NOT_DESIGN verdict from `verify`, 2 for input errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use sphere_designs::config::{
    bound_report_to_json, certificate_to_json, configuration_to_json, convert_mode,
    design_report_to_json, flex_result_to_json, parse_configuration,
};
use sphere_designs::design::{generate, verify_design, Configuration, Family, DESIGN_TOL};
use sphere_designs::rigidity::{
    certify, flex_search_system, matrix_rank, DEFAULT_MAX_ITERATIONS, DEFAULT_STEPS, RANK_TOL,
};
use sphere_designs::system::{build_system, export_system, select_pins};
use sphere_designs::{bound, Error};

#[derive(Parser)]
#[command(
    name = "sphere-designs",
    version,
    about = "Spherical t-designs: verification, pinned systems, rigidity, bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy, Default)]
struct ModeOverride {
    /// Convert the input to float mode on ingestion.
    #[arg(long, conflicts_with = "exact")]
    float: bool,
    /// Convert the input to exact mode on ingestion (exact binary value
    /// of each double; unit norms are re-validated).
    #[arg(long)]
    exact: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write a classical configuration (cross-polytope, polygon,
    /// simplex, hypercube, icosahedron).
    Gen {
        /// Family name.
        family: String,
        /// Sphere dimension d (cross-polytope, simplex, hypercube).
        #[arg(long)]
        d: Option<usize>,
        /// Point count (polygon).
        #[arg(long)]
        n: Option<usize>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the t-design property and print a report.
    Verify {
        file: PathBuf,
        #[arg(long)]
        t: u32,
        /// Residual tolerance (float mode only).
        #[arg(long, default_value_t = DESIGN_TOL)]
        tol: f64,
        #[command(flatten)]
        mode: ModeOverride,
    },
    /// Build the pinned polynomial system; optionally export it.
    System {
        file: PathBuf,
        #[arg(long)]
        t: u32,
        /// Write the plain-text system to this path.
        #[arg(long)]
        export: Option<PathBuf>,
        #[command(flatten)]
        mode: ModeOverride,
    },
    /// Certify the isolated-root condition or refute rigidity.
    Rigidity {
        file: PathBuf,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = DESIGN_TOL)]
        tol: f64,
        #[arg(long, default_value_t = RANK_TOL)]
        rank_tol: f64,
        #[command(flatten)]
        mode: ModeOverride,
    },
    /// Run a Gauss-Newton flex search along kernel directions.
    Flex {
        file: PathBuf,
        #[arg(long)]
        t: u32,
        /// "auto" tries every kernel direction; an integer picks one
        /// kernel basis vector.
        #[arg(long, default_value = "auto")]
        direction: String,
        #[command(flatten)]
        mode: ModeOverride,
    },
    /// Evaluate the root-count inequality exactly.
    Bound {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        d: u32,
        /// Configuration size; without it, one JSON line per n up to the
        /// feasibility crossing.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Largest n for which the inequality holds; optional (t, d) ranges
    /// emit one JSON line per pair.
    MaxN {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        t_max: Option<u32>,
        #[arg(long)]
        d_max: Option<u32>,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    });
}

fn load(file: &PathBuf, mode: ModeOverride) -> Result<Configuration, Error> {
    let text = std::fs::read_to_string(file)?;
    let config = parse_configuration(&text)?;
    if mode.exact {
        convert_mode(&config, true)
    } else if mode.float {
        convert_mode(&config, false)
    } else {
        Ok(config)
    }
}

fn parse_family(family: &str, d: Option<usize>, n: Option<usize>) -> Result<Family, Error> {
    let need_d = || d.ok_or_else(|| Error::UnsupportedFamily(format!("{family}: --d required")));
    match family {
        "cross-polytope" => Ok(Family::CrossPolytope(need_d()?)),
        "simplex" => Ok(Family::Simplex(need_d()?)),
        "hypercube" => Ok(Family::Hypercube(need_d()?)),
        "polygon" => Ok(Family::Polygon(n.ok_or_else(|| {
            Error::UnsupportedFamily("polygon: --n required".into())
        })?)),
        "icosahedron" => Ok(Family::Icosahedron),
        other => Err(Error::UnsupportedFamily(other.to_string())),
    }
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn run(command: Command) -> Result<i32, Error> {
    match command {
        Command::Gen { family, d, n, out } => {
            let config = generate(parse_family(&family, d, n)?)?;
            let text =
                serde_json::to_string(&configuration_to_json(&config)).expect("serializable");
            match out {
                Some(path) => std::fs::write(path, text + "\n")?,
                None => println!("{text}"),
            }
            Ok(0)
        }
        Command::Verify { file, t, tol, mode } => {
            let config = load(&file, mode)?;
            let (report_json, is_design) = match &config {
                Configuration::Exact(c) => {
                    let r = verify_design(c, t, tol)?;
                    (design_report_to_json(&r), r.is_design)
                }
                Configuration::Float(c) => {
                    let r = verify_design(c, t, tol)?;
                    (design_report_to_json(&r), r.is_design)
                }
            };
            emit(&report_json);
            Ok(if is_design { 0 } else { 1 })
        }
        Command::System {
            file,
            t,
            export,
            mode,
        } => {
            let config = load(&file, mode)?;
            let summary = match &config {
                Configuration::Exact(c) => {
                    let report = verify_design(c, t, DESIGN_TOL)?;
                    if !report.is_design {
                        eprintln!(
                            "warning: input is not a {t}-design (max residual {}); the system is still well defined",
                            report.max_abs_residual
                        );
                    }
                    let (cp, perm) = select_pins(c)?;
                    let sys = build_system(&cp, t)?;
                    if let Some(path) = &export {
                        std::fs::write(path, export_system(&sys))?;
                    }
                    system_summary(&sys.to_float(), &perm)
                }
                Configuration::Float(c) => {
                    let report = verify_design(c, t, DESIGN_TOL)?;
                    if !report.is_design {
                        eprintln!(
                            "warning: input is not a {t}-design (max residual {:e}); the system is still well defined",
                            report.max_abs_residual
                        );
                    }
                    let (cp, perm) = select_pins(c)?;
                    let sys = build_system(&cp, t)?;
                    if let Some(path) = &export {
                        std::fs::write(path, export_system(&sys))?;
                    }
                    system_summary(&sys, &perm)
                }
            };
            emit(&summary);
            Ok(0)
        }
        Command::Rigidity {
            file,
            t,
            tol,
            rank_tol,
            mode,
        } => {
            let config = load(&file, mode)?;
            let cert = match &config {
                Configuration::Exact(c) => certify(c, t, tol, rank_tol)?,
                Configuration::Float(c) => certify(c, t, tol, rank_tol)?,
            };
            emit(&certificate_to_json(&cert));
            Ok(0)
        }
        Command::Flex {
            file,
            t,
            direction,
            mode,
        } => {
            let config = load(&file, mode)?;
            let c = config.to_float();
            let (cp, _) = select_pins(&c)?;
            let sys = build_system(&cp, t)?;
            let base = sys.assignment_from(&cp)?;
            let jac = sys.jacobian(&base)?;
            let info = matrix_rank(&jac, sys.k(), RANK_TOL);
            let chosen: Vec<usize> = match direction.as_str() {
                "auto" => (0..info.kernel.len()).collect(),
                idx => {
                    let i: usize = idx.parse().map_err(|_| {
                        Error::InvalidDirection(format!(
                            "--direction must be \"auto\" or a kernel index, got {idx:?}"
                        ))
                    })?;
                    if i >= info.kernel.len() {
                        return Err(Error::InvalidDirection(format!(
                            "kernel index {i} out of range (kernel dimension {})",
                            info.kernel.len()
                        )));
                    }
                    vec![i]
                }
            };
            let mut results = Vec::new();
            for i in chosen {
                let mut dir = info.kernel[i].clone();
                let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
                for v in dir.iter_mut() {
                    *v /= norm;
                }
                let r =
                    flex_search_system(&sys, &base, &dir, &DEFAULT_STEPS, DEFAULT_MAX_ITERATIONS)?;
                let mut obj = flex_result_to_json(&r);
                obj["direction"] = json!(i);
                results.push(obj);
            }
            emit(&json!({
                "k": sys.k(),
                "jacobian_rank": info.rank,
                "kernel_dimension": info.kernel.len(),
                "results": results,
            }));
            Ok(0)
        }
        Command::Bound { t, d, n } => {
            match n {
                Some(n) => emit(&bound_report_to_json(&bound::theorem_check(t, d, n))),
                None => {
                    let nmax = bound::max_feasible_n(t, d);
                    for n in d as u64 + 2..=nmax + 1 {
                        emit(&bound_report_to_json(&bound::theorem_check(t, d, n)));
                    }
                }
            }
            Ok(0)
        }
        Command::MaxN { t, d, t_max, d_max } => {
            for ti in t..=t_max.unwrap_or(t) {
                for di in d..=d_max.unwrap_or(d) {
                    let nmax = bound::max_feasible_n(ti, di);
                    let at_max = bound::theorem_check(ti, di, nmax);
                    emit(&json!({
                        "t": ti,
                        "d": di,
                        "max_feasible_n": nmax,
                        "lhs_digits": at_max.lhs.to_string().len(),
                        "rhs_digits": at_max.rhs.to_string().len(),
                    }));
                }
            }
            Ok(0)
        }
    }
}

fn system_summary(
    sys: &sphere_designs::PolynomialSystem<f64>,
    perm: &[usize],
) -> serde_json::Value {
    json!({
        "n": sys.n(),
        "d": sys.dim_d(),
        "t": sys.t(),
        "k": sys.k(),
        "sphere_equations": sys.num_sphere_equations(),
        "design_equations": sys.num_design_equations(),
        "max_degree": sys.max_degree(),
        "pin_permutation": perm,
        "variables": sys.variable_names(),
    })
}
