//! `qk`: quandles, torus curves, metrics, cohomology, extensions and
//! quandle rings from the command line. Every result is JSON on stdout.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qk_core::cohomology::Kind;
use qk_core::torus::CurveClass;

use crate::output::{emit, CliError, Report};

/// Environment variable overriding every node cap.
pub const MAX_NODES_ENV: &str = "QK_MAX_NODES";

#[derive(Parser, Debug)]
#[command(name = "qk", version, about = "Exact quandle computations")]
pub struct Cli {
    /// Seed for all randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the result to a file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// Human-readable; no stability guarantee.
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite quandle tables.
    #[command(subcommand)]
    Quandle(QuandleCmd),
    /// Curve classes on the torus.
    #[command(subcommand)]
    Torus(TorusCmd),
    /// Quandle metric, Farey distance and twist word length.
    #[command(subcommand)]
    Metric(MetricCmd),
    /// Quandle cohomology of a finite quandle.
    Cohomology(CohomologyArgs),
    /// Abelian extensions and the averaging map.
    #[command(subcommand)]
    Extension(ExtensionCmd),
    /// Integral quandle rings.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Run the acceptance battery.
    Suite(SuiteArgs),
}

#[derive(Subcommand, Debug)]
pub enum QuandleCmd {
    /// Check the three quandle axioms on a table file.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Components and their diameters.
    Components {
        #[arg(long)]
        file: PathBuf,
    },
    /// Coset decomposition over the inner automorphism group.
    Decompose {
        #[arg(long)]
        file: PathBuf,
    },
    /// An isomorphism between two quandles, if any.
    Isomorphic {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Conjugation quandle of a group table, optionally on a subset.
    Conj {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Print a named fixture, or list them.
    Fixture { name: Option<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TorusQuandle {
    D1,
    C1,
    W1,
}

#[derive(Subcommand, Debug)]
pub enum TorusCmd {
    /// Normal form of a class.
    Normalize { curve: CurveClass },
    /// `lhs ∗ rhs` (or `lhs ∗⁻¹ rhs`) in D1, C1 or W1.
    Op {
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, value_enum, default_value_t = TorusQuandle::C1)]
        quandle: TorusQuandle,
        #[arg(long)]
        inverse: bool,
    },
    /// Geometric intersection number.
    Intersection {
        #[arg(allow_hyphen_values = true)]
        a: CurveClass,
        #[arg(allow_hyphen_values = true)]
        b: CurveClass,
    },
    /// `T_γ^k(v)`.
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        gamma: CurveClass,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        v: CurveClass,
    },
    /// Matrix of `T_γ`.
    Matrix {
        #[arg(long, allow_hyphen_values = true)]
        gamma: CurveClass,
    },
    /// The map C1 → W1+.
    Phi {
        #[arg(allow_hyphen_values = true)]
        curve: CurveClass,
    },
    /// Inverse of phi on its image.
    PhiInverse {
        #[arg(allow_hyphen_values = true)]
        multicurve: String,
    },
    /// `T_{T_α(β)}(α) = β` for classes meeting once.
    Braid {
        #[arg(long, allow_hyphen_values = true)]
        alpha: CurveClass,
        #[arg(long, allow_hyphen_values = true)]
        beta: CurveClass,
    },
    /// Whether `a, b, a∗b, b∗a` are four distinct classes.
    Distinct {
        #[arg(allow_hyphen_values = true)]
        a: CurveClass,
        #[arg(allow_hyphen_values = true)]
        b: CurveClass,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct CapArgs {
    #[arg(long)]
    pub coord_cap: Option<u64>,
    #[arg(long)]
    pub twist_cap: Option<u64>,
    #[arg(long)]
    pub depth_cap: Option<usize>,
    /// Defaults to $QK_MAX_NODES, then 10^6.
    #[arg(long)]
    pub node_cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum MetricCmd {
    /// Least number of quandle operations joining two classes.
    Quandle {
        #[arg(long, allow_hyphen_values = true)]
        from: CurveClass,
        #[arg(long, allow_hyphen_values = true)]
        to: CurveClass,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Path distance in the Farey graph.
    Farey {
        #[arg(long, allow_hyphen_values = true)]
        from: CurveClass,
        #[arg(long, allow_hyphen_values = true)]
        to: CurveClass,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Least number of Dehn twists whose product is a matrix.
    Twistlen {
        /// Entries `a,b,c,d` of `[[a,b],[c,d]]`.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        matrix: Vec<i64>,
        /// Search depth; defaults to the depth cap.
        #[arg(long)]
        target: Option<usize>,
        /// Compare matrices modulo ±I.
        #[arg(long)]
        modulo_sign: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[arg(long)]
    pub quandle: PathBuf,
    #[arg(long)]
    pub degree: usize,
    /// rack, sub or quotient.
    #[arg(long, default_value = "rack")]
    pub kind: Kind,
    /// Also test this cochain for being a cocycle or coboundary.
    #[arg(long)]
    pub cochain: Option<PathBuf>,
    /// Include a cocycle basis.
    #[arg(long)]
    pub basis: bool,
}

#[derive(Subcommand, Debug)]
pub enum ExtensionCmd {
    /// Build the extension quandle of a 2-cocycle.
    Build {
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Check the averaging map on random cochains and π* on cohomology.
    VerifyGmt {
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// First nonzero 2-cocycle of a quandle in a finite abelian group.
    Search {
        #[arg(long)]
        quandle: PathBuf,
        /// Cyclic factor orders, e.g. `2` or `2,2`.
        #[arg(long, value_delimiter = ',')]
        orders: Vec<usize>,
        /// Skip cocycles that are coboundaries.
        #[arg(long)]
        non_coboundary: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct BoxArgs {
    #[arg(short = 'L', long = "max-length", default_value_t = 3)]
    pub max_length: usize,
    #[arg(short = 'B', long = "coeff-bound", default_value_t = 3)]
    pub coeff_bound: i64,
    /// Defaults to $QK_MAX_NODES.
    #[arg(long)]
    pub node_cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum RingCmd {
    /// All idempotents of Z[Q] in the box.
    Idempotents {
        #[arg(long)]
        quandle: PathBuf,
        #[command(flatten)]
        bounds: BoxArgs,
    },
    /// Idempotent scan in Z[D1] over classes within a coordinate cap.
    ScanTorus {
        #[command(flatten)]
        bounds: BoxArgs,
        #[arg(long, default_value_t = 10)]
        cap: u64,
        /// Leave the null curve out of the universe.
        #[arg(long)]
        no_zero: bool,
    },
    /// Product of two torus ring elements, e.g. "2*(1,0) - 1*(0,1) + 3*o".
    Multiply {
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Idempotency, augmentation and length of a torus ring element.
    Inspect {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Distinctness and squared-intersection checks on random pairs.
    Audit {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        cap: i64,
    },
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Criteria to run, e.g. `1,4,9`; all by default.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result: Result<Report, CliError> = commands::dispatch(&cli);
    match result.and_then(|r| emit(&cli, &r).map(|()| r)) {
        Ok(r) => ExitCode::from(if r.ok { 0 } else { 1 }),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
