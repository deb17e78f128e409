use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hmf_core::{Group, TestFunctionKind};

#[derive(Debug, Parser)]
#[command(
    name = "hmf",
    version,
    about = "Petersson trace formula and one-level densities of Hilbert modular forms"
)]
pub struct Cli {
    /// JSON run configuration; command-line flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Cap on worker threads.
    #[arg(long, global = true, value_name = "T")]
    pub threads: Option<usize>,
    /// Also write the JSON report here.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write tabular output as CSV here.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

// Overrides for the shared `RunConfig` keys.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// Field preset: q, q-sqrt5, q-sqrt13, q-sqrt17.
    #[arg(long)]
    pub field: Option<String>,
    /// Half the parallel weight.
    #[arg(long)]
    pub k: Option<u32>,
    /// Level generator as A or A,B.
    #[arg(long, value_name = "A,B")]
    pub level: Option<String>,
    /// Test function: fejer or cosine-squared.
    #[arg(long, value_parser = parse_phi)]
    pub phi: Option<TestFunctionKind>,
    /// Support half-width of the Fourier transform of phi.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Largest |N(c)| in the Kloosterman sums.
    #[arg(long)]
    pub cmax: Option<u64>,
    /// Newform sieve cutoff on N(L).
    #[arg(long)]
    pub x: Option<f64>,
    /// Newform sieve cutoff on N(m).
    #[arg(long)]
    pub y: Option<f64>,
    /// Unit terms with a smaller Bessel bound are skipped.
    #[arg(long)]
    pub unit_tol: Option<f64>,
    /// Seed for Haar sampling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Allow supports beyond the proven budget.
    #[arg(long)]
    pub skip_support_check: bool,
}

fn parse_phi(s: &str) -> Result<TestFunctionKind, String> {
    s.parse().map_err(|e: hmf_core::Error| e.to_string())
}

fn parse_group(s: &str) -> Result<Group, String> {
    s.parse().map_err(|e: hmf_core::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Special functions.
    #[command(subcommand)]
    Special(SpecialCmd),
    /// One generalised Kloosterman sum.
    Kloosterman(KloostermanArgs),
    /// Petersson trace formula.
    #[command(subcommand)]
    Petersson(PeterssonCmd),
    /// Family-averaged one-level density.
    #[command(subcommand)]
    Density(DensityCmd),
    /// Random matrix predictions and Haar sampling.
    #[command(subcommand)]
    Rmt(RmtCmd),
    /// Reference values over Q.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Special(SpecialCmd::Bessel { .. }) => "special bessel",
            Command::Special(SpecialCmd::Digamma { .. }) => "special digamma",
            Command::Kloosterman(_) => "kloosterman",
            Command::Petersson(PeterssonCmd::Delta { .. }) => "petersson delta",
            Command::Petersson(PeterssonCmd::Dim { .. }) => "petersson dim",
            Command::Density(DensityCmd::Run { .. }) => "density run",
            Command::Density(DensityCmd::Sweep { .. }) => "density sweep",
            Command::Rmt(RmtCmd::Predict { .. }) => "rmt predict",
            Command::Rmt(RmtCmd::Sample { .. }) => "rmt sample",
            Command::Oracle(OracleCmd::Tau { .. }) => "oracle tau",
            Command::Oracle(OracleCmd::Dim { .. }) => "oracle dim",
        }
    }

    pub fn overrides(&self) -> Overrides {
        match self {
            Command::Kloosterman(a) => a.overrides.clone(),
            Command::Petersson(PeterssonCmd::Delta { overrides, .. })
            | Command::Petersson(PeterssonCmd::Dim { overrides })
            | Command::Density(DensityCmd::Run { overrides })
            | Command::Density(DensityCmd::Sweep { overrides, .. })
            | Command::Rmt(RmtCmd::Predict { overrides, .. })
            | Command::Rmt(RmtCmd::Sample { overrides, .. }) => overrides.clone(),
            _ => Overrides::default(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum SpecialCmd {
    /// `J_M(X)` with the bound `min(1, (e X / (2(M+1)))^M)`.
    Bessel {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        x: f64,
    },
    /// `psi(A + iB)`.
    Digamma {
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, allow_hyphen_values = true)]
        im: f64,
    },
}

#[derive(Debug, Args)]
pub struct KloostermanArgs {
    #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
    pub nu: String,
    #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
    pub mu: String,
    #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
    pub c: String,
    /// Report the Weil bound and whether it holds.
    #[arg(long)]
    pub weil: bool,
    /// Use `e(Tr(x / (delta c)))`, the sum entering the trace formula.
    #[arg(long)]
    pub twisted: bool,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Subcommand)]
pub enum PeterssonCmd {
    /// `Delta(m, n)` at the configured level.
    Delta {
        #[arg(long, value_name = "A,B")]
        m: String,
        #[arg(long, value_name = "A,B")]
        n: String,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Dimension main term and `Delta'((1))`.
    Dim {
        #[command(flatten)]
        overrides: Overrides,
    },
}

#[derive(Debug, Subcommand)]
pub enum DensityCmd {
    /// Averaged one-level density at the configured level.
    Run {
        #[command(flatten)]
        overrides: Overrides,
    },
    /// One report per level, sorted by norm.
    Sweep {
        /// `N1,N2,...` over Q, or `A,B;C,D;...`.
        #[arg(long)]
        levels: String,
        #[command(flatten)]
        overrides: Overrides,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Fourier,
    X,
}

#[derive(Debug, Subcommand)]
pub enum RmtCmd {
    /// `int phi W_G`.
    Predict {
        #[arg(long, value_parser = parse_group)]
        group: Group,
        #[arg(long, value_enum, default_value = "fourier")]
        side: SideArg,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Histogram of scaled eigenangles of Haar-random matrices.
    Sample {
        #[arg(long, value_parser = parse_group)]
        group: Group,
        /// Matrix size.
        #[arg(long)]
        n: usize,
        /// Number of samples.
        #[arg(long, default_value_t = 1000)]
        m: usize,
        #[arg(long, default_value_t = 30)]
        bins: usize,
        /// Histogram covers `[0, range)` on the scaled axis.
        #[arg(long, default_value_t = 3.0)]
        range: f64,
        #[command(flatten)]
        overrides: Overrides,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCmd {
    /// `tau(n)` for `n <= N`.
    Tau {
        #[arg(long)]
        n: usize,
    },
    /// `dim S_w(Gamma_0(N))` and its new subspace.
    Dim {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 1)]
        level: u64,
    },
}
