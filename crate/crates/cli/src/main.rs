//! `reflekt`: certificates for the two reflection groups and limit-set renderings.
//!
//! Exit status is 0 when every check passes, 1 on a failed certificate or a runtime
//! error, 2 on a usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use reflekt::gamma6::verify_gamma6;
use reflekt::limitset::{
    default_basepoint, export, group_by_name, metadata_json, orbit_bfs_limited, ExportFormat, ExportOptions,
    DEFAULT_DEDUP_EPS, DEFAULT_MAX_POINTS,
};
use reflekt::menger::menger_by_group;
use reflekt::polytope600::{build_600_cell, verify_gamma4};
use reflekt::report::{Report, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "reflekt", version, about = "Certificates for right-angled hyperbolic reflection groups")]
struct Cli {
    /// Directory for reports and renderings.
    #[arg(long, global = true, default_value = "reflekt-out")]
    output_dir: PathBuf,
    /// Working precision in bits for interval computations.
    #[arg(long, global = true, env = "REFLEKT_PRECISION_BITS", default_value_t = 256,
          value_parser = clap::value_parser!(u32).range(128..=4096))]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one certificate suite.
    Verify {
        #[command(subcommand)]
        target: Target,
    },
    /// Enumerate an orbit and write its boundary directions.
    Render {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Ply)]
        format: Format,
        /// Side of the dedup cells on the boundary sphere.
        #[arg(long, default_value_t = DEFAULT_DEDUP_EPS, value_parser = positive_f64)]
        eps: f64,
        /// PNG side in pixels.
        #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u32).range(1..=16384))]
        resolution: u32,
        /// PNG axes as two coordinate indices, e.g. `0,1`.
        #[arg(long, default_value = "0,1", value_parser = parse_axes)]
        axes: (usize, usize),
        /// Projection pole for PLY output, comma separated; defaults to the last axis.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        pole: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max_points: usize,
    },
    /// Run every certificate and write one consolidated report.
    Report,
}

#[derive(Subcommand, Debug)]
enum Target {
    Gamma4,
    Gamma6,
    Menger {
        #[arg(long, value_enum)]
        group: Group,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Group {
    Gamma4,
    Gamma6,
}

impl Group {
    fn name(self) -> &'static str {
        match self {
            Group::Gamma4 => "gamma4",
            Group::Gamma6 => "gamma6",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Ply,
    Csv,
    Png,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Ply => ExportFormat::Ply,
            Format::Csv => ExportFormat::Csv,
            Format::Png => ExportFormat::Png,
        }
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("{s:?} is not a positive number")),
    }
}

fn parse_axes(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b] => match (a.trim().parse(), b.trim().parse()) {
            (Ok(a), Ok(b)) if a != b => Ok((a, b)),
            _ => Err(format!("{s:?} is not two distinct indices")),
        },
        _ => Err(format!("{s:?} is not of the form i,j")),
    }
}

type Outcome = Result<bool, String>;

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, String> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(path)
}

fn print_report(r: &Report) {
    for (name, c) in &r.checks {
        println!("{} {}.{}", if c.pass { "PASS" } else { "FAIL" }, r.name, name);
    }
}

fn gamma4_report() -> Report {
    match build_600_cell() {
        Ok(c) => verify_gamma4(&c),
        Err(e) => {
            let mut r = Report::new("gamma4");
            r.fail("c600_census", e);
            r
        }
    }
}

fn menger_value(group: Group) -> (bool, Value) {
    match menger_by_group(group.name()) {
        Ok(cert) => (cert.verdict, serde_json::to_value(&cert).expect("certificate serializes")),
        Err(e) => (false, json!({"error": e.to_string()})),
    }
}

fn verify(cli: &Cli, target: &Target) -> Outcome {
    let (name, pass, body) = match target {
        Target::Gamma4 => {
            let r = gamma4_report();
            print_report(&r);
            ("gamma4", r.pass, r.to_json_pretty())
        }
        Target::Gamma6 => {
            let r = verify_gamma6(cli.precision);
            print_report(&r);
            ("gamma6", r.pass, r.to_json_pretty())
        }
        Target::Menger { group } => {
            let (pass, v) = menger_value(*group);
            if let Some(checks) = v.get("checks").and_then(|c| c.get("checks")).and_then(Value::as_object) {
                for (k, c) in checks {
                    let ok = c.get("pass").and_then(Value::as_bool).unwrap_or(false);
                    println!("{} menger_{}.{}", if ok { "PASS" } else { "FAIL" }, group.name(), k);
                }
            } else {
                println!("FAIL menger_{}: {}", group.name(), v["error"]);
            }
            let name = if matches!(group, Group::Gamma4) { "menger_gamma4" } else { "menger_gamma6" };
            (name, pass, serde_json::to_string_pretty(&v).expect("json"))
        }
    };
    let path = write(&cli.output_dir, &format!("{name}.json"), &body)?;
    println!("{} {name} -> {}", if pass { "PASS" } else { "FAIL" }, path.display());
    Ok(pass)
}

#[allow(clippy::too_many_arguments)]
fn render(
    cli: &Cli,
    group: Group,
    depth: usize,
    format: Format,
    eps: f64,
    resolution: u32,
    axes: (usize, usize),
    pole: &Option<Vec<f64>>,
    max_points: usize,
) -> Outcome {
    let start = Instant::now();
    let g = group_by_name(group.name()).map_err(|e| e.to_string())?;
    let cloud = orbit_bfs_limited(&g, &default_basepoint(g.matrix_size()), depth, eps, max_points).map_err(|e| e.to_string())?;
    let opts = ExportOptions { pole: pole.clone(), resolution, axes };
    let format: ExportFormat = format.into();
    fs::create_dir_all(&cli.output_dir).map_err(|e| format!("{}: {e}", cli.output_dir.display()))?;
    let stem = format!("{}_depth{depth}", group.name());
    let path = cli.output_dir.join(format!("{stem}.{}", format.extension()));
    let summary = export(&cloud, format, &path, &opts).map_err(|e| format!("{}: {e}", path.display()))?;
    let meta = metadata_json(&cloud, &summary, &opts, start.elapsed().as_secs_f64());
    let meta_path = write(&cli.output_dir, &format!("{stem}.meta.json"), &meta)?;
    println!(
        "{} points ({} dropped near the pole), max drift {:e} -> {} (metadata {})",
        summary.points_written,
        summary.dropped_near_pole,
        cloud.metadata.max_point_drift,
        path.display(),
        meta_path.display()
    );
    Ok(true)
}

fn report(cli: &Cli) -> Outcome {
    let g4 = gamma4_report();
    let g6 = verify_gamma6(cli.precision);
    let (m4, m4v) = menger_value(Group::Gamma4);
    let (m6, m6v) = menger_value(Group::Gamma6);
    print_report(&g4);
    print_report(&g6);
    let summary = json!({"gamma4": g4.pass, "gamma6": g6.pass, "menger_gamma4": m4, "menger_gamma6": m6});
    let pass = g4.pass && g6.pass && m4 && m6;
    let all = json!({
        "schema_version": SCHEMA_VERSION,
        "pass": pass,
        "precision_bits": cli.precision,
        "summary": summary,
        "reports": {"gamma4": g4, "gamma6": g6, "menger_gamma4": m4v, "menger_gamma6": m6v},
    });
    for (k, v) in summary.as_object().expect("object") {
        println!("{} {k}", if v.as_bool() == Some(true) { "PASS" } else { "FAIL" });
    }
    let path = write(&cli.output_dir, "report.json", &serde_json::to_string_pretty(&all).expect("json"))?;
    println!("{} report -> {}", if pass { "PASS" } else { "FAIL" }, path.display());
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify { target } => verify(&cli, target),
        Command::Render { group, depth, format, eps, resolution, axes, pole, max_points } => {
            render(&cli, *group, *depth, *format, *eps, *resolution, *axes, pole, *max_points)
        }
        Command::Report => report(&cli),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
