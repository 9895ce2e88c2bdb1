//! `rtinv`: level-k modular data, fusion numbers and link invariants from the
//! command line.

mod format;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use format::{fmt_complex, fmt_real, Table};
use rtinv::identities::{self, Check};
use rtinv::invariants::{self, TorusKnotSpec};
use rtinv::lie::{default_weyl_cap, fmt_dynkin, CartanType, RootSystem};
use rtinv::linkmodel::{self, ShadowMethod, DEFAULT_TERM_BUDGET};
use rtinv::modular::LevelData;
use rtinv::weights::multiplicities_dynkin;
use rtinv::{Error, Exec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Smatrix,
    Fusion,
    VerlindeDim,
    Fiber,
    TorusKnot,
    RossoJones,
    Shadow,
    Check,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Smatrix => "smatrix",
            Command::Fusion => "fusion",
            Command::VerlindeDim => "verlinde-dim",
            Command::Fiber => "fiber",
            Command::TorusKnot => "torus-knot",
            Command::RossoJones => "rosso-jones",
            Command::Shadow => "shadow",
            Command::Check => "check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Enumerate,
    Contract,
}

#[derive(Debug, Parser)]
#[command(
    name = "rtinv",
    version,
    about = "Quantum invariants from level-k modular data"
)]
struct Cli {
    /// Simple type, e.g. A1, B2, G2.
    #[arg(long)]
    group: String,

    /// Level k (must exceed the dual Coxeter number).
    #[arg(long)]
    level: i64,

    #[arg(long = "cmd", value_enum)]
    command: Command,

    /// Link description file (for `shadow`).
    #[arg(long)]
    link: Option<PathBuf>,

    /// Torus winding numbers.
    #[arg(long, default_value_t = 1)]
    p: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    q: i64,

    /// Dynkin coordinates "a,b,..."; repeat for several colors.
    #[arg(long)]
    color: Vec<String>,

    /// Color of the fiber passing alongside the torus knot.
    #[arg(long)]
    fiber_color: Option<String>,

    #[arg(long, default_value_t = 0)]
    genus: u32,

    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,

    /// Largest Weyl group to enumerate.
    #[arg(long)]
    weyl_cap: Option<usize>,

    /// Largest number of colorings the shadow enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
    term_budget: u64,

    /// Shadow state-sum evaluation strategy.
    #[arg(long, value_enum, default_value_t = Method::Enumerate)]
    method: Method,

    /// Multiplies every identity tolerance used by `check`.
    #[arg(long, default_value_t = 1.0)]
    tolerance_scale: f64,

    /// Worker threads; 1 runs everything sequentially.
    #[arg(long)]
    threads: Option<usize>,
}

/// Why a run stopped, mapped onto the process exit status.
#[derive(Debug)]
enum Failure {
    Config(String),
    Rejected(String),
    Identity(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Rejected(_) => 3,
            Failure::Identity(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Rejected(m) | Failure::Identity(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidType { .. }
            | Error::LevelTooLow { .. }
            | Error::NotDominantIntegral(_)
            | Error::NotInLevelSet { .. }
            | Error::InvalidKnot(_)
            | Error::InvalidLink(_)
            | Error::LinkParse { .. } => Failure::Config(msg),
            Error::WeylCapExceeded { .. }
            | Error::TermBudgetExceeded { .. }
            | Error::OnAffineWall(_)
            | Error::Inconsistent(_) => Failure::Rejected(msg),
            Error::Numerical { .. } => Failure::Identity(msg),
        }
    }
}

type Outcome = Result<Table, Failure>;

fn parse_color(field: &str, s: &str, rank: usize) -> Result<Vec<i64>, Failure> {
    let coords = s
        .split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| {
            Failure::Config(format!(
                "--{field}: '{s}' is not a comma-separated list of integers"
            ))
        })?;
    if coords.len() != rank {
        return Err(Failure::Config(format!(
            "--{field}: '{s}' has {} coordinates, rank is {rank}",
            coords.len()
        )));
    }
    Ok(coords)
}

struct Run {
    cli: Cli,
    ld: LevelData,
}

impl Run {
    fn colors(&self) -> Result<Vec<Vec<i64>>, Failure> {
        let rank = self.ld.rs().rank();
        self.cli
            .color
            .iter()
            .map(|c| parse_color("color", c, rank))
            .collect()
    }

    fn single_color(&self) -> Result<Vec<i64>, Failure> {
        let mut colors = self.colors()?;
        match colors.len() {
            0 => Ok(vec![0; self.ld.rs().rank()]),
            1 => Ok(colors.remove(0)),
            n => Err(Failure::Config(format!(
                "--color: expected one color, got {n}"
            ))),
        }
    }

    fn knot(&self) -> Result<TorusKnotSpec, Failure> {
        Ok(TorusKnotSpec::new(
            self.cli.p,
            self.cli.q,
            self.single_color()?,
        )?)
    }

    fn label(&self, i: usize) -> String {
        fmt_dynkin(&self.ld.labels()[i])
    }

    fn smatrix(&self) -> Outcome {
        let mut t = Table::new(&["i", "j", "lambda", "mu", "s"]);
        let n = self.ld.len();
        for i in 0..n {
            for j in 0..n {
                t.row(vec![
                    i.to_string(),
                    j.to_string(),
                    self.label(i),
                    self.label(j),
                    fmt_complex(self.ld.s(i, j)),
                ]);
            }
        }
        Ok(t)
    }

    fn fusion(&self) -> Outcome {
        let colors = self.colors()?;
        if !(2..=3).contains(&colors.len()) {
            return Err(Failure::Config(format!(
                "--color: fusion takes two or three colors, got {}",
                colors.len()
            )));
        }
        let l = self.ld.label_index(&colors[0])?;
        let m = self.ld.label_index(&colors[1])?;
        let targets: Vec<usize> = match colors.get(2) {
            Some(c) => vec![self.ld.label_index(c)?],
            None => (0..self.ld.len()).collect(),
        };
        let table = multiplicities_dynkin(self.ld.rs(), &colors[0])?;
        let mut t = Table::new(&["lambda", "mu", "nu", "racah", "verlinde"]);
        for nu in targets {
            t.row(vec![
                self.label(l),
                self.label(m),
                self.label(nu),
                self.ld.fusion_racah(&table, nu, m).to_string(),
                fmt_complex(self.ld.fusion_verlinde(l, m, nu)),
            ]);
        }
        Ok(t)
    }

    fn verlinde_dim(&self) -> Outcome {
        let mut t = Table::new(&["genus", "dim"]);
        let dim = invariants::verlinde_dim(&self.ld, self.cli.genus)?;
        t.row(vec![self.cli.genus.to_string(), dim.to_string()]);
        Ok(t)
    }

    fn fiber(&self) -> Outcome {
        let colors = self.colors()?;
        let z = invariants::z_fiber_link(&self.ld, self.cli.genus, &colors)?;
        let mut t = Table::new(&["genus", "colors", "value"]);
        let names: Vec<String> = colors.iter().map(|c| fmt_dynkin(c)).collect();
        t.row(vec![
            self.cli.genus.to_string(),
            names.join(";"),
            fmt_complex(z.value),
        ]);
        Ok(t)
    }

    fn torus_knot(&self) -> Outcome {
        let spec = self.knot()?;
        let mut t = Table::new(&["p", "q", "color", "fiber", "bracket"]);
        let (fiber, value) = match &self.cli.fiber_color {
            Some(f) => {
                let f = parse_color("fiber-color", f, self.ld.rs().rank())?;
                let z = invariants::bracket_torus_knot_with_fiber(&self.ld, &spec, &f)?;
                (fmt_dynkin(&f), z.value)
            }
            None => (
                "-".to_string(),
                invariants::bracket_torus_knot_s2s1(&self.ld, &spec)?.value,
            ),
        };
        t.row(vec![
            spec.p().to_string(),
            spec.q().to_string(),
            fmt_dynkin(spec.color()),
            fiber,
            fmt_complex(value),
        ]);
        Ok(t)
    }

    fn rosso_jones(&self) -> Outcome {
        let spec = self.knot()?;
        let coeffs = invariants::rosso_jones_coefficients(&self.ld, &spec)?;
        let report = invariants::surgery_check(&self.ld, &spec)?;
        let mut t = Table::new(&["quantity", "mu", "value"]);
        for (mu, c) in &coeffs {
            t.row(vec!["c".into(), fmt_dynkin(mu), c.to_string()]);
        }
        t.row(vec![
            "z_s3".into(),
            "-".into(),
            fmt_complex(report.rosso_jones),
        ]);
        t.row(vec![
            "surgery".into(),
            "-".into(),
            fmt_complex(report.surgery),
        ]);
        t.row(vec![
            "residual".into(),
            "-".into(),
            fmt_real(report.residual),
        ]);
        t.row(vec![
            "precondition".into(),
            "-".into(),
            report.precondition_holds.to_string(),
        ]);
        Ok(t)
    }

    fn shadow(&self) -> Outcome {
        let path = self.cli.link.as_ref().ok_or_else(|| {
            Failure::Config("--link: shadow needs a link description file".into())
        })?;
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Config(format!("--link: cannot read {}: {e}", path.display())))?;
        let link = linkmodel::parse_link(&text)?;
        let method = match self.cli.method {
            Method::Enumerate => ShadowMethod::Enumerate,
            Method::Contract => ShadowMethod::Contract,
        };
        let budget = self.cli.term_budget;
        let raw = linkmodel::shadow_invariant_with(&self.ld, &link, method, budget)?;
        let normalized = linkmodel::normalized_shadow_with(&self.ld, &link, method, budget)?;
        let mut t = Table::new(&["genus", "loops", "estimate", "shadow", "normalized"]);
        t.row(vec![
            link.genus.to_string(),
            link.loops.len().to_string(),
            fmt_real(linkmodel::shadow_term_estimate(&self.ld, &link)),
            fmt_complex(raw),
            fmt_complex(normalized),
        ]);
        Ok(t)
    }

    fn check(&self) -> Outcome {
        let scale = self.cli.tolerance_scale;
        let checks: Vec<Check> = identities::run_all(&self.ld)?
            .into_iter()
            .map(|c| Check {
                tolerance: c.tolerance * scale,
                ..c
            })
            .collect();
        let mut t = Table::new(&["identity", "residual", "tolerance", "status"]);
        let mut failed = Vec::new();
        for c in &checks {
            let status = if c.skipped {
                "skip"
            } else if c.passed() {
                "pass"
            } else {
                failed.push(format!(
                    "{}: residual {:.3e} >= tolerance {:.1e}",
                    c.name, c.residual, c.tolerance
                ));
                "FAIL"
            };
            t.row(vec![
                c.name.clone(),
                fmt_real(c.residual),
                fmt_real(c.tolerance),
                status.into(),
            ]);
        }
        t.failures = failed;
        Ok(t)
    }

    fn execute(&self) -> Outcome {
        match self.cli.command {
            Command::Smatrix => self.smatrix(),
            Command::Fusion => self.fusion(),
            Command::VerlindeDim => self.verlinde_dim(),
            Command::Fiber => self.fiber(),
            Command::TorusKnot => self.torus_knot(),
            Command::RossoJones => self.rosso_jones(),
            Command::Shadow => self.shadow(),
            Command::Check => self.check(),
        }
    }
}

fn setup(cli: Cli) -> Result<Run, Failure> {
    let ct: CartanType = cli
        .group
        .parse()
        .map_err(|e| Failure::Config(format!("--group: {e}")))?;
    if !(cli.tolerance_scale.is_finite() && cli.tolerance_scale > 0.0) {
        return Err(Failure::Config("--tolerance-scale must be positive".into()));
    }
    let exec = match cli.threads {
        Some(0) => return Err(Failure::Config("--threads must be at least 1".into())),
        Some(1) => Exec::Sequential,
        Some(n) => {
            rtinv::exec::set_thread_count(n)
                .map_err(|e| Failure::Config(format!("--threads: {e}")))?;
            Exec::Parallel
        }
        None => Exec::default(),
    };
    let rs = RootSystem::new(ct)?;
    let cap = cli.weyl_cap.unwrap_or_else(default_weyl_cap);
    let ld = LevelData::new(&rs, cli.level, cap, exec)?;
    Ok(Run { cli, ld })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let header = format!(
        "# rtinv {}\n# group {} level {} cmd {}",
        env!("CARGO_PKG_VERSION"),
        cli.group.trim(),
        cli.level,
        cli.command.name()
    );
    let format = cli.format;
    let result = setup(cli).and_then(|run| run.execute());
    match result {
        Ok(table) => {
            println!("{header}");
            match format {
                OutputFormat::Table => print!("{}", table.render_table()),
                OutputFormat::Csv => print!("{}", table.render_csv()),
            }
            if table.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                for f in &table.failures {
                    eprintln!("identity failed: {f}");
                }
                ExitCode::from(4)
            }
        }
        Err(f) => {
            eprintln!("rtinv: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
