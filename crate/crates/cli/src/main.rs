//! `ritz`: Bratu folds, reaction kinetics, the classic problems and the
//! oracle sweep from the command line.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ritz_core::bratu::{self, CurveSource, Source};
use ritz_core::classic::{self, DuffingSpec, LambertSpec};
use ritz_core::kinetics::{self, Estimate, KineticsProfile, ReactionSpec};
use ritz_core::oracle;

use output::{emit, format_sig, Cell, Format, OutputSpec, Table};

#[derive(Debug, Parser)]
#[command(name = "ritz", version, about = "Ritz variational method versus exact and brute-force solutions")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Significant digits for every number printed.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u8).range(4..=17))]
    precision: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The Bratu problem u'' + λe^u = 0, u(0) = u(1) = 0.
    #[command(subcommand)]
    Bratu(BratuCmd),
    /// nth-order kinetics dx/dt = k(a - x)^n.
    #[command(subcommand)]
    Kinetics(KineticsCmd),
    /// Duffing potential, Lambert equation and KdV soliton.
    #[command(subcommand)]
    Classic(ClassicCmd),
    /// Run every closed-form check against its oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SourceArg {
    Exact,
    Poly,
    Sine,
}

impl From<SourceArg> for Source {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::Exact => Source::Exact,
            SourceArg::Poly => Source::PolyTrial,
            SourceArg::Sine => Source::SineTrial,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CurveSourceArg {
    Exact,
    Poly,
    Sine,
    Shooting,
}

impl From<CurveSourceArg> for CurveSource {
    fn from(s: CurveSourceArg) -> Self {
        match s {
            CurveSourceArg::Exact => CurveSource::Exact,
            CurveSourceArg::Poly => CurveSource::PolyTrial,
            CurveSourceArg::Sine => CurveSource::SineTrial,
            CurveSourceArg::Shooting => CurveSource::Shooting,
        }
    }
}

#[derive(Debug, Subcommand)]
enum BratuCmd {
    /// Fold of each λ curve: parameter, λ_c and slope u'(0) there.
    Critical,
    /// Solutions at one λ.
    Branches {
        #[arg(long)]
        lambda: f64,
        #[arg(long, value_enum, default_value_t = SourceArg::Exact)]
        source: SourceArg,
    },
    /// Coefficients of u'(0) as a power series in λ.
    Series {
        #[arg(long, value_enum, default_value_t = SourceArg::Exact)]
        source: SourceArg,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Slope-versus-λ samples for the bifurcation diagram.
    Bifurcation {
        /// λ grid as start:stop:step.
        #[arg(long, value_parser = parse_grid)]
        grid: Grid,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [CurveSourceArg::Exact, CurveSourceArg::Poly, CurveSourceArg::Sine, CurveSourceArg::Shooting])]
        sources: Vec<CurveSourceArg>,
    },
}

#[derive(Debug, Clone, Args)]
struct ReactionArgs {
    /// Reaction order, n ≥ 1.
    #[arg(long)]
    n: f64,
    /// Rate constant.
    #[arg(long)]
    k: f64,
    /// Initial amount.
    #[arg(long)]
    a: f64,
}

impl ReactionArgs {
    fn spec(&self) -> Result<ReactionSpec> {
        Ok(ReactionSpec::new(self.n, self.k, self.a)?)
    }
}

#[derive(Debug, Subcommand)]
enum KineticsCmd {
    /// Exact and variational extent on an even time grid.
    Profile {
        #[command(flatten)]
        reaction: ReactionArgs,
        #[arg(long, default_value_t = 10.0)]
        t_end: f64,
        #[arg(long, default_value_t = 21)]
        points: usize,
    },
    /// Half and quarter times and their ratio.
    Halftimes {
        #[command(flatten)]
        reaction: ReactionArgs,
    },
    /// Reaction order from measured half and quarter times.
    Infer {
        #[arg(long)]
        t_half: f64,
        #[arg(long)]
        t_quarter: f64,
    },
    /// What goes wrong with the second-order formula a(1 - 1/(1 - kat)).
    Errata {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        a: f64,
    },
}

#[derive(Debug, Subcommand)]
enum ClassicCmd {
    /// Equilibria and oscillation centre of ü - u + εu³ = 0 released at A.
    Duffing {
        #[arg(long, allow_hyphen_values = true)]
        epsilon: f64,
        #[arg(long)]
        amplitude: f64,
    },
    /// y(x) from z = yⁿ on [0, x] with finite-difference residuals.
    Lambert {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        k: f64,
        #[arg(long)]
        y0: f64,
        #[arg(long, allow_hyphen_values = true)]
        yp0: f64,
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 11)]
        points: usize,
    },
    /// Soliton u = p sech²(qξ) of u'' - cu - 3u² = 0, both signs of p.
    Kdv {
        #[arg(long)]
        c: f64,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Added to every closed-form value; any nonzero value must fail.
    #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
    inject_offset: f64,
}

#[derive(Debug, Clone)]
struct Grid(Vec<f64>);

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err("expected start:stop:step".into());
    };
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b, step) = (num(a)?, num(b)?, num(step)?);
    if !(a > 0.0 && b >= a && step > 0.0) || ![a, b, step].iter().all(|v| v.is_finite()) {
        return Err("need 0 < start <= stop and step > 0".into());
    }
    let count = ((b - a) / step + 1e-9).floor() as usize;
    if count > 1_000_000 {
        return Err("grid has more than a million points".into());
    }
    Ok(Grid((0..=count).map(|i| a + step * i as f64).collect()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = OutputSpec { format: cli.format, path: cli.out.clone(), precision: cli.precision as usize };
    match run(cli.command, &spec) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// `Ok(false)` means the output was written but reports a failure.
fn run(command: Command, spec: &OutputSpec) -> Result<bool> {
    match command {
        Command::Bratu(cmd) => bratu_cmd(cmd, spec).map(|_| true),
        Command::Kinetics(cmd) => kinetics_cmd(cmd, spec).map(|_| true),
        Command::Classic(cmd) => classic_cmd(cmd, spec).map(|_| true),
        Command::Verify(args) => verify_cmd(args, spec),
    }
}

fn bratu_cmd(cmd: BratuCmd, spec: &OutputSpec) -> Result<()> {
    match cmd {
        BratuCmd::Critical => {
            let mut t = Table::new(&["source", "param", "lambda", "slope"]);
            for src in Source::ALL {
                let c = bratu::critical_point(src)?;
                t.push(vec![src.name().into(), c.param.into(), c.lambda.into(), c.slope.into()]);
            }
            emit(&t, spec)
        }
        BratuCmd::Branches { lambda, source } => {
            let b = bratu::branches_at(lambda, source.into())?;
            let mut t = Table::new(&["source", "branch", "param", "lambda", "slope"]);
            for s in &b.solutions {
                t.push(vec![s.source.name().into(), s.branch.name().into(), s.param.into(), s.lambda.into(), s.slope.into()]);
            }
            if b.upper_out_of_range {
                eprintln!("note: upper-branch parameter exceeds {}", bratu::PARAM_MAX);
            }
            emit(&t, spec)
        }
        BratuCmd::Series { source, order } => {
            let series = bratu::perturbation_series(source.into(), order)?;
            let mut t = Table::new(&["power", "coefficient"]);
            for j in 1..=order {
                t.push(vec![j.into(), series.coeff(j).into()]);
            }
            emit(&t, spec)
        }
        BratuCmd::Bifurcation { grid, sources } => {
            let sources: Vec<CurveSource> = sources.into_iter().map(Into::into).collect();
            let ds = bratu::bifurcation_dataset(&sources, &grid.0)?;
            for g in &ds.gaps {
                eprintln!("gap: {} {} at lambda {}: {}", g.source.name(), g.branch.name(), g.lambda, g.reason);
            }
            match spec.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    bratu::write_csv(&ds, &mut buf, |v| format_sig(v, spec.precision))?;
                    output::emit_bytes(&buf, spec)
                }
                Format::Json => {
                    let mut t = Table::new(&["lambda", "slope", "branch", "source"]);
                    for s in ds.samples() {
                        t.push(vec![s.lambda.into(), s.slope.into(), s.branch.name().into(), s.source.name().into()]);
                    }
                    emit(&t, spec)
                }
            }
        }
    }
}

fn kinetics_cmd(cmd: KineticsCmd, spec: &OutputSpec) -> Result<()> {
    match cmd {
        KineticsCmd::Profile { reaction, t_end, points } => {
            let r = reaction.spec()?;
            if !(t_end > 0.0) || points < 2 {
                bail!("need t_end > 0 and at least two points");
            }
            let exact = KineticsProfile::exact(r);
            let var = KineticsProfile::variational(r);
            let mut t = Table::new(&["t", "exact", "variational"]);
            for i in 0..points {
                let time = t_end * i as f64 / (points - 1) as f64;
                t.push(vec![time.into(), exact.extent(time).into(), var.extent(time).into()]);
            }
            emit(&t, spec)
        }
        KineticsCmd::Halftimes { reaction } => {
            let r = reaction.spec()?;
            let mut t = Table::new(&["source", "t_half", "t_quarter", "ratio"]);
            for (name, est) in [("exact", Estimate::Exact), ("variational", Estimate::Variational)] {
                t.push(vec![
                    name.into(),
                    kinetics::half_time(&r, est).into(),
                    kinetics::quarter_time(&r, est).into(),
                    kinetics::partial_time_ratio(&r, est).into(),
                ]);
            }
            emit(&t, spec)
        }
        KineticsCmd::Infer { t_half, t_quarter } => {
            let n = kinetics::infer_order(t_half, t_quarter)?;
            emit(&Table::record(vec![("t_half", t_half.into()), ("t_quarter", t_quarter.into()), ("order", n.into())]), spec)
        }
        KineticsCmd::Errata { k, a } => {
            let r = kinetics::he_erroneous_analysis(k, a)?;
            emit(
                &Table::record(vec![
                    ("pole_time", r.pole_time.into()),
                    ("half_time", r.half_time.into()),
                    ("pole_unphysical", r.pole_unphysical.into()),
                    ("half_time_unphysical", r.half_time_unphysical.into()),
                    ("variational_half_time_as_printed", r.variational_half_time_as_printed.into()),
                    ("variational_half_time", r.variational_half_time.into()),
                    ("exact_half_time", r.exact_half_time.into()),
                    ("integrated_max_extent", r.integrated_max_extent.into()),
                    ("integrated_is_monotone", r.integrated_is_monotone.into()),
                    ("erroneous_law_blowup", r.erroneous_law_blowup.into()),
                ]),
                spec,
            )
        }
    }
}

fn classic_cmd(cmd: ClassicCmd, spec: &OutputSpec) -> Result<()> {
    match cmd {
        ClassicCmd::Duffing { epsilon, amplitude } => {
            let r = classic::duffing_classify(&DuffingSpec::new(epsilon, amplitude)?);
            let points: Vec<String> = r
                .points
                .iter()
                .map(|p| format!("{}:{}", format_sig(p.u, spec.precision), format!("{:?}", p.kind).to_lowercase()))
                .collect();
            let center = match r.oscillation_center {
                classic::OscillationCenter::Origin => "origin",
                classic::OscillationCenter::LeftWell => "left-well",
                classic::OscillationCenter::RightWell => "right-well",
                classic::OscillationCenter::Unbounded => "unbounded",
            };
            emit(
                &Table::record(vec![
                    ("epsilon", epsilon.into()),
                    ("amplitude", amplitude.into()),
                    ("potential_at_amplitude", r.potential_at_amplitude.into()),
                    ("center", center.into()),
                    ("separatrix", r.separatrix.into()),
                    ("equilibria", points.join(";").into()),
                ]),
                spec,
            )
        }
        ClassicCmd::Lambert { n, k, y0, yp0, x, points } => {
            let s = LambertSpec::new(n, k, y0, yp0)?;
            if !x.is_finite() || points < 2 {
                bail!("need a finite x and at least two points");
            }
            let mut t = Table::new(&["x", "y", "residual"]);
            for i in 0..points {
                let xi = x * i as f64 / (points - 1) as f64;
                let y = classic::lambert_solve(&s, xi)?;
                let r = classic::lambert_residual_at(&s, xi).ok();
                t.push(vec![xi.into(), y.into(), r.into()]);
            }
            emit(&t, spec)
        }
        ClassicCmd::Kdv { c } => {
            let r = classic::kdv_report(c)?;
            let mut t = Table::new(&["convention", "c", "p", "q", "max_residual"]);
            t.push(vec!["p=-c/2".into(), c.into(), r.canonical.p.into(), r.canonical.q.into(), r.canonical.max_residual.into()]);
            t.push(vec!["p=+c/2".into(), c.into(), r.mirrored.p.into(), r.mirrored.q.into(), r.mirrored.max_residual.into()]);
            t.push(vec!["ritz".into(), c.into(), r.ritz_p.into(), r.ritz_q.into(), r.ritz_max_residual.into()]);
            eprintln!("{}", r.finding);
            emit(&t, spec)
        }
    }
}

fn verify_cmd(args: VerifyArgs, spec: &OutputSpec) -> Result<bool> {
    let reports = oracle::verify_all(args.inject_offset)?;
    let mut t = Table::new(&["case", "max_abs_discrepancy", "tolerance", "passed", "description"]);
    for r in &reports {
        t.push(vec![
            r.case.as_str().into(),
            r.max_abs_discrepancy.into(),
            r.tolerance.into(),
            r.passed.into(),
            Cell::Text(r.description.clone()),
        ]);
    }
    emit(&t, spec)?;
    Ok(reports.iter().all(|r| r.passed))
}
