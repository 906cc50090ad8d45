use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use volcert::budget::{min_distance_rho, DisplacementBudget, RhoBound};
use volcert::certificate::{sweep, VOLUME_FLOOR};
use volcert::homology::{
    fill_slope, hypothesis_gate, mod_p_dim, smith_normal_form, GateInput, IntegerMatrix,
};
use volcert::hyperbolic::{
    collar_radius, displacement_at_radius, prime_radius, tube_radius, tube_volume, Loxodromic,
};
use volcert::matrix_file::parse_matrix_file;
use volcert::packing::{packing_profile, paper_constants};
use volcert::Error;
use volcert_cli::verify::{run_verify, VerifyOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "volcert", version, about = "Certified volume bounds for cusped hyperbolic 3-manifolds")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Absolute tolerance for simplex-volume quadrature.
    #[arg(long, global = true, default_value_t = 1e-10)]
    quad_tol: f64,
    /// β grid step for the case analysis.
    #[arg(long, global = true, default_value_t = 1e-4)]
    grid_step: f64,
    /// Half-width used when comparing against printed truncations.
    #[arg(long, global = true, default_value_t = 5e-4)]
    tol: f64,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the limit density and derived constants.
    Constants,
    /// Evaluate the case bound on a β grid and write it as CSV.
    CaseSweep {
        #[arg(long, default_value_t = 1.0001)]
        beta_min: f64,
        #[arg(long, default_value_t = 1.9999)]
        beta_max: f64,
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the displacement budget for the minimal distance ρ.
    Budget {
        #[arg(long)]
        k: u32,
        /// Number of loops; must match the number of --loop values.
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// Loop displacement, repeatable.
        #[arg(long = "loop")]
        loops: Vec<f64>,
        /// Decimal places printed.
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
    /// Displacement, tube, collar and prime radii for a loxodromic isometry.
    Tube {
        /// Translation length.
        #[arg(long)]
        l: f64,
        /// Twist angle in radians.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Displacement threshold defining the tube.
        #[arg(long)]
        lambda: Option<f64>,
        /// Distance from the axis at which to report the displacement.
        #[arg(long)]
        r: Option<f64>,
    },
    /// Smith normal form, mod-p dimensions and hypothesis gates for a matrix file.
    Homology {
        file: PathBuf,
        /// Primes to report, repeatable.
        #[arg(long = "p", default_values_t = [2u64, 3, 5])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        k: u32,
        /// Rank of the mod-2 cup-product image, when known.
        #[arg(long)]
        t: Option<usize>,
        /// Fill along a·λ + b·μ before computing.
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        slope: Option<Vec<i64>>,
    },
    /// Run every certification check and write the report.
    Verify {
        /// Report destination.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    /// A certification check failed.
    Check(String),
    /// Bad input or usage.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Certification(_) => Failure::Check(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn input(msg: impl std::fmt::Display) -> Failure {
    Failure::Input(msg.to_string())
}

fn print_table(rows: &[(String, String)]) {
    let width = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
    for (k, v) in rows {
        println!("{k:<width$}  {v}");
    }
}

fn num(x: f64) -> String {
    format!("{x:.15}")
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    if let Some(n) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(input)?;
    }
    match cli.command {
        Command::Constants => {
            let c = paper_constants(g.quad_tol)?;
            let half = packing_profile(0.5 * 3f64.ln(), g.quad_tol)?;
            print_table(&[
                ("d_inf".into(), num(c.d_inf)),
                ("d_inf_closed_form".into(), num(c.d_inf_closed_form())),
                ("C1".into(), num(c.c1)),
                ("C2".into(), num(c.c2)),
                ("B(log3/2)".into(), num(half.ball_volume)),
                ("d(log3/2)".into(), num(half.density)),
                ("h3(log3/2)".into(), num(c.h3_half_log3())),
                ("k3_inf".into(), num(c.k3_inf)),
                ("V_ideal".into(), num(c.v_ideal)),
            ]);
        }
        Command::CaseSweep {
            beta_min,
            beta_max,
            step,
            out,
        } => {
            let c = paper_constants(g.quad_tol)?;
            let rows = sweep(&c, beta_min, beta_max, step)?;
            let mut buf = Vec::new();
            {
                let mut w = csv::Writer::from_writer(&mut buf);
                w.write_record(["beta", "case_id", "bound"]).map_err(input)?;
                for (beta, b) in &rows {
                    w.write_record([
                        format!("{beta:.14e}"),
                        b.case_id.label().to_string(),
                        format!("{:.14e}", b.bound_value),
                    ])
                    .map_err(input)?;
                }
                w.flush().map_err(input)?;
            }
            let (beta, min) = rows
                .iter()
                .min_by(|a, b| a.1.bound_value.total_cmp(&b.1.bound_value))
                .ok_or_else(|| input("empty sweep"))?;
            match out {
                Some(path) => {
                    fs::write(&path, &buf).map_err(|e| input(format!("{}: {e}", path.display())))?;
                    print_table(&[
                        ("rows".into(), rows.len().to_string()),
                        ("min_bound".into(), num(min.bound_value)),
                        ("min_beta".into(), num(*beta)),
                        ("min_case".into(), min.case_id.to_string()),
                    ]);
                }
                None => print!("{}", String::from_utf8_lossy(&buf)),
            }
            if !(min.bound_value > VOLUME_FLOOR) {
                return Err(Failure::Check(format!(
                    "bound {} <= {VOLUME_FLOOR} at beta {beta} in case {}",
                    min.bound_value, min.case_id
                )));
            }
        }
        Command::Budget {
            k,
            m,
            loops,
            precision,
        } => {
            if loops.len() != m as usize {
                return Err(input(format!("--m {m} but {} --loop values given", loops.len())));
            }
            let b = DisplacementBudget::new(k, loops)?;
            match min_distance_rho(&b)? {
                RhoBound::Finite(rho) => println!("{rho:.precision$}"),
                RhoBound::Divergent => println!("inf"),
            }
        }
        Command::Tube { l, theta, lambda, r } => {
            let iso = Loxodromic::new(l, theta)?;
            let mut rows = vec![
                ("l".into(), num(iso.translation_length())),
                ("theta".into(), num(iso.twist_angle())),
                ("collar_radius".into(), num(collar_radius(l)?)),
            ];
            if let Some(r) = r {
                rows.push(("displacement".into(), num(displacement_at_radius(&iso, r)?)));
            }
            if let Some(lambda) = lambda {
                match tube_radius(&iso, lambda)? {
                    Some(big_r) => {
                        rows.push(("tube_radius".into(), num(big_r)));
                        rows.push(("tube_volume".into(), num(tube_volume(l, big_r)?)));
                        rows.push(("prime_radius".into(), num(prime_radius(big_r, l)?)));
                    }
                    None => rows.push(("tube_radius".into(), "empty (l >= lambda)".into())),
                }
            }
            print_table(&rows);
        }
        Command::Homology {
            file,
            primes,
            k,
            t,
            slope,
        } => {
            let text =
                fs::read_to_string(&file).map_err(|e| input(format!("{}: {e}", file.display())))?;
            let parsed = parse_matrix_file(&text)?;
            let matrix: IntegerMatrix = match slope {
                Some(ab) => {
                    let per = parsed
                        .peripheral()
                        .ok_or_else(|| input("--slope needs lambda: and mu: lines"))??;
                    fill_slope(&parsed.matrix, &per, ab[0], ab[1])?
                }
                None => parsed.matrix,
            };
            let ed = smith_normal_form(&matrix).divisors;
            let divisors: Vec<String> = ed.divisors.iter().map(|d| d.to_string()).collect();
            let mut rows = vec![
                ("H1".into(), ed.to_string()),
                ("elementary_divisors".into(), divisors.join(" ")),
                ("free_rank".into(), ed.free_rank.to_string()),
            ];
            let mut dims = BTreeMap::new();
            for p in primes {
                let d = mod_p_dim(&ed, p)?;
                dims.insert(p, d);
                rows.push((format!("dim_Z{p}"), d.to_string()));
            }
            let gate = GateInput::new(dims, t, k)?;
            rows.push(("gate".into(), hypothesis_gate(&gate).to_string()));
            print_table(&rows);
        }
        Command::Verify { out, seed } => {
            let opts = VerifyOptions {
                quad_tol: g.quad_tol,
                grid_step: g.grid_step,
                tol: g.tol,
                seed,
            };
            let v = run_verify(&opts)?;
            let width = v.report.check_results.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &v.report.check_results {
                println!(
                    "{:<4}  {:<width$}  achieved {:.6e}  limit {:.6e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.achieved,
                    c.tolerance
                );
            }
            println!(
                "global minimum {} in case {}",
                num(v.case_report.global_min),
                v.case_report.global_case
            );
            if let Some(path) = out {
                fs::write(&path, v.report.emit())
                    .map_err(|e| input(format!("{}: {e}", path.display())))?;
            }
            if !v.report.all_passed() {
                let names: Vec<&str> = v.report.failures().map(|c| c.name.as_str()).collect();
                return Err(Failure::Check(format!("failed checks: {}", names.join(", "))));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("volcert: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("volcert: {msg}");
            ExitCode::from(2)
        }
    }
}
