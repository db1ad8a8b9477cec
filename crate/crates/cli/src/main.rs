//! Command-line surface over the verification library: extremal lengths,
//! local-connectivity tables, continuity deltas, boundary components, and the
//! full suite. Checks that fail exit nonzero; vacuous runs count as passing
//! and are flagged in the report.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use num_complex::Complex;

use diskbound_core::annulus::extremal_length;
use diskbound_core::bounds::{delta_of, BoundQuery, Log2Real};
use diskbound_core::components::{boundary_component, JordanDomain};
use diskbound_core::geom::{AnnulusSpec, PlanePoint};
use diskbound_core::harness::{verify_continuity, verify_diameter, DomainWire};
use diskbound_core::mlc::{check_mlc, estimate_mlc, MLCTable};
use diskbound_core::suite::{run_suite, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "diskbound",
    about = "Verification toolkit for conformal boundary continuity"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Extremal length of the round annulus with the given radii.
    Lambda {
        #[arg(long)]
        inner: f64,
        #[arg(long)]
        outer: f64,
    },
    /// Local-connectivity tables: estimation and checking.
    Mlc {
        #[command(subcommand)]
        cmd: MlcCmd,
    },
    /// Continuity radius for a mapped-disk domain at a boundary point.
    Delta {
        #[arg(long)]
        domain: PathBuf,
        /// Boundary point as "x,y".
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        table: PathBuf,
        #[arg(long = "l-grid", default_value_t = 256)]
        l_grid: usize,
    },
    /// Rasterize the boundary-reaching component of domain ∩ disk to CSV.
    Component {
        #[arg(long)]
        domain: PathBuf,
        /// Disk center as "x,y"; snapped to the nearest boundary point.
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Empirical verification runs against a mapped-disk domain.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// The full criterion suite from a JSON config.
    Suite {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Subcommand)]
enum MlcCmd {
    /// Estimate a table g(k) for k ≤ kmax from a sampled pair search.
    Estimate {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
        #[arg(long, default_value_t = 4096)]
        resolution: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check one table entry; prints a witness and exits nonzero on failure.
    Check {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 4096)]
        resolution: u32,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Sample the δ-disk at a boundary point and count ε-violations.
    Continuity {
        #[arg(long)]
        domain: PathBuf,
        /// Boundary point as "x,y".
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long)]
        eps: f64,
        #[arg(long = "delta-log2", allow_negative_numbers = true)]
        delta_log2: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        report: PathBuf,
    },
    /// Measure the image diameter of the r0-disk boundary component.
    Diameter {
        #[arg(long)]
        domain: PathBuf,
        /// Boundary point as "x,y".
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        r0: f64,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[arg(long)]
        report: PathBuf,
    },
}

fn parse_zeta(s: &str) -> anyhow::Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        bail!("expected \"x,y\", got {s:?}");
    }
    Ok((parts[0].parse()?, parts[1].parse()?))
}

fn read_domain(path: &PathBuf) -> anyhow::Result<DomainWire> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(DomainWire::from_json(&text)?)
}

fn read_curve(path: &PathBuf) -> anyhow::Result<diskbound_core::Curve> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(diskbound_core::harness::curve_from_file_json(&text)?)
}

fn read_table(path: &PathBuf) -> anyhow::Result<MLCTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(MLCTable::from_json(&text)?)
}

fn run() -> anyhow::Result<bool> {
    match Cli::parse().cmd {
        Cmd::Lambda { inner, outer } => {
            let a = AnnulusSpec::try_new(PlanePoint::new(0.0, 0.0), inner, outer)?;
            println!("{}", extremal_length(&a));
            Ok(true)
        }
        Cmd::Mlc {
            cmd:
                MlcCmd::Estimate {
                    curve,
                    kmax,
                    resolution,
                    out,
                },
        } => {
            let curve = read_curve(&curve)?;
            let table = estimate_mlc(&curve, kmax, resolution)?;
            fs::write(&out, table.to_json())?;
            println!("g = {:?}", table.entries());
            Ok(true)
        }
        Cmd::Mlc {
            cmd:
                MlcCmd::Check {
                    curve,
                    table,
                    k,
                    resolution,
                },
        } => {
            let curve = read_curve(&curve)?;
            let table = read_table(&table)?;
            let outcome = check_mlc(&curve, &table, k, resolution)?;
            match outcome.witness() {
                None => {
                    println!("pass k={k} g={}", table.value(k as i64)?);
                    Ok(true)
                }
                Some(w) => {
                    println!(
                        "witness k={k}: pair distance {} with both arc diameters >= {}",
                        w.pair_distance, w.best_arc_diameter
                    );
                    Ok(false)
                }
            }
        }
        Cmd::Delta {
            domain,
            zeta,
            eps,
            table,
            l_grid,
        } => {
            let (x, y) = parse_zeta(&zeta)?;
            let map = read_domain(&domain)?.map()?;
            let table = read_table(&table)?;
            let q = BoundQuery {
                map,
                zeta0: Complex::new(x, y),
                eps,
            };
            let result = delta_of(&q, &table, l_grid, 1024)?;
            println!("{}", result.to_json());
            Ok(true)
        }
        Cmd::Component {
            domain,
            zeta,
            radius,
            grid,
            out,
        } => {
            let (x, y) = parse_zeta(&zeta)?;
            let boundary = read_domain(&domain)?.boundary()?;
            let (zeta_cp, _) = boundary.nearest_point(PlanePoint::new(x, y));
            let region = boundary_component(&JordanDomain::new(boundary), zeta_cp, radius, grid)?;
            let mut file = fs::File::create(&out)?;
            writeln!(file, "cell_x,cell_y")?;
            for (ix, iy) in region.mask.iter_set() {
                let c = region.grid.cell_center(ix, iy);
                writeln!(file, "{},{}", c.x, c.y)?;
            }
            Ok(true)
        }
        Cmd::Verify { cmd } => {
            let report = match cmd {
                VerifyCmd::Continuity {
                    domain,
                    zeta,
                    eps,
                    delta_log2,
                    samples,
                    seed,
                    report,
                } => {
                    let (x, y) = parse_zeta(&zeta)?;
                    let map = read_domain(&domain)?.map()?;
                    let out = verify_continuity(
                        &map,
                        Complex::new(x, y),
                        eps,
                        Log2Real::from_log2(delta_log2),
                        samples,
                        seed,
                    )?;
                    fs::write(&report, out.to_json())?;
                    out
                }
                VerifyCmd::Diameter {
                    domain,
                    zeta,
                    eps,
                    r0,
                    grid,
                    report,
                } => {
                    let (x, y) = parse_zeta(&zeta)?;
                    let map = read_domain(&domain)?.map()?;
                    let out = verify_diameter(&map, Complex::new(x, y), r0, eps, grid)?;
                    fs::write(&report, out.to_json())?;
                    out
                }
            };
            println!("{}", report.to_json());
            Ok(report.pass)
        }
        Cmd::Suite { config, report } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let config = SuiteConfig::from_json(&text)?;
            let out = run_suite(&config);
            fs::write(&report, out.to_json())?;
            for c in &out.criteria {
                println!(
                    "{} {:2} {}: {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    c.name,
                    c.detail
                );
            }
            Ok(out.pass)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
