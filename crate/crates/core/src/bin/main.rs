use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use landau_oam::classical::{classical_oam, Trajectory, CLASSICAL_SPECS};
use landau_oam::report::{
    cmd_classical, cmd_spectrum, cmd_table1, cmd_verify, ClassicalRun, OutputFormat, Report, RunConfig, Tolerances,
};
use landau_oam::PhysicalConfig;

/// Canonical, mechanical and pseudo orbital angular momenta of Landau states.
#[derive(Debug, Parser)]
#[command(name = "landau-oam", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Magnetic field strength.
    #[arg(long = "B", global = true, default_value_t = 1.0)]
    b: f64,
    /// Elementary charge magnitude.
    #[arg(long = "e", global = true, default_value_t = 1.0)]
    e: f64,
    /// Electron mass.
    #[arg(long = "mass", global = true, default_value_t = 1.0)]
    mass: f64,
    /// Largest Landau index in the sweep.
    #[arg(long = "nmax", global = true, default_value_t = 5, allow_negative_numbers = true)]
    n_max: i64,
    /// Smallest magnetic quantum number in the sweep.
    #[arg(long = "mmin", global = true, default_value_t = -5, allow_negative_numbers = true)]
    m_min: i64,
    /// Maximum occupation per Fock mode.
    #[arg(long, global = true, default_value_t = 20)]
    cutoff: usize,
    /// Interior block is n_a + n_b <= cutoff - margin.
    #[arg(long, global = true, default_value_t = 4)]
    margin: usize,
    /// Gauss–Laguerre order of the radial quadrature.
    #[arg(long = "quad-order", global = true, default_value_t = 64)]
    quad_order: usize,
    /// Points of the uniform azimuthal grid.
    #[arg(long = "azimuthal-points", global = true, default_value_t = 128)]
    azimuthal_points: usize,
    /// Replace every check tolerance with this value.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output format (reports default to json, trajectories to csv).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Sweep (n, m) states concurrently; results are unchanged.
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Six OAM expectation values per state from quadrature and Fock routes.
    Table1,
    /// Operator identities, conservation laws, norms, radii and route agreement.
    Verify,
    /// Classical cyclotron orbit: trajectory series and OAM checks.
    Classical(ClassicalArgs),
    /// Landau levels from closed form, quadrature and Fock eigenvalues.
    Spectrum,
}

#[derive(Debug, Args)]
struct ClassicalArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x0: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    y0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    vx0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    vy0: f64,
    /// Simpson intervals for the one-period averages (at least 16).
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// RK4 time step; defaults to one thousandth of the period.
    #[arg(long)]
    dt: Option<f64>,
    /// Also write the RK4 trajectory here.
    #[arg(long = "rk4-out")]
    rk4_out: Option<PathBuf>,
    /// Write the JSON check report here instead of stderr.
    #[arg(long)]
    report: Option<PathBuf>,
}

impl GlobalArgs {
    fn run_config(&self) -> RunConfig {
        RunConfig {
            b: self.b,
            e: self.e,
            mass: self.mass,
            n_max: self.n_max,
            m_min: self.m_min,
            cutoff: self.cutoff,
            margin: self.margin,
            quad_order: self.quad_order,
            azimuthal_points: self.azimuthal_points,
            tolerances: self.tol.map_or_else(Tolerances::default, Tolerances::uniform),
            parallel: self.parallel,
        }
    }
}

#[derive(Serialize)]
struct TrajectoryRow {
    t: f64,
    x: f64,
    y: f64,
    vx: f64,
    vy: f64,
    #[serde(rename = "L_mech_origin")]
    l_mech_origin: f64,
    #[serde(rename = "L_ps_origin")]
    l_ps_origin: f64,
    #[serde(rename = "L_mech_gc")]
    l_mech_gc: f64,
    #[serde(rename = "L_ps_gc")]
    l_ps_gc: f64,
}

fn trajectory_json(
    traj: &Trajectory,
    ic: &landau_oam::classical::InitialConditions,
    config: &PhysicalConfig,
) -> String {
    let rows: Vec<TrajectoryRow> = traj
        .states
        .iter()
        .map(|s| {
            let l = CLASSICAL_SPECS.map(|spec| classical_oam(s, ic, config, spec).expect("non-canonical spec"));
            TrajectoryRow {
                t: s.t,
                x: s.x,
                y: s.y,
                vx: s.vx,
                vy: s.vy,
                l_mech_origin: l[0],
                l_ps_origin: l[1],
                l_mech_gc: l[2],
                l_ps_gc: l[3],
            }
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
    s.push('\n');
    s
}

fn emit(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn summarize(report: &Report) {
    for r in report.failures() {
        let note = r.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
        eprintln!(
            "FAIL {} {:?}: residual {} > {}{}",
            r.check,
            r.inputs,
            r.residual.map_or("n/a".into(), |v| format!("{v:e}")),
            r.tolerance,
            note
        );
    }
    eprintln!(
        "{}: {}/{} checks passed",
        report.command, report.summary.passed, report.summary.total
    );
}

fn run(cli: Cli) -> Result<i32, Box<dyn std::error::Error>> {
    let run = cli.global.run_config();
    let out = cli.global.out.as_deref();
    let report_format = cli.global.format.map_or(OutputFormat::Json, OutputFormat::from);
    let report = match cli.command {
        Command::Table1 => cmd_table1(&run)?,
        Command::Verify => cmd_verify(&run)?,
        Command::Spectrum => cmd_spectrum(&run)?,
        Command::Classical(args) => {
            let cl = ClassicalRun {
                x0: args.x0,
                y0: args.y0,
                vx0: args.vx0,
                vy0: args.vy0,
                samples: args.samples,
                dt: args.dt,
            };
            let output = cmd_classical(&run, &cl)?;
            let config = run.physical()?;
            let traj_format = cli.global.format.map_or(OutputFormat::Csv, OutputFormat::from);
            let render = |traj: &Trajectory| match traj_format {
                OutputFormat::Csv => landau_oam::report::trajectory_csv(traj, &output.initial, &config),
                OutputFormat::Json => trajectory_json(traj, &output.initial, &config),
            };
            emit(out, &render(&output.closed_form))?;
            if let Some(p) = &args.rk4_out {
                fs::write(p, render(&output.rk4))?;
            }
            match &args.report {
                Some(p) => fs::write(p, output.report.to_json())?,
                None => eprint!("{}", output.report.to_json()),
            }
            summarize(&output.report);
            return Ok(output.report.exit_code());
        }
    };
    emit(out, &report.render(report_format))?;
    summarize(&report);
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
