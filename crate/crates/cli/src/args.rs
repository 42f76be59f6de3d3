//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::request::{AnalysisRequest, Command, HulsbergenFlags, MonadFlags};

#[derive(Parser, Debug)]
#[command(name = "gitplane", version, about = "Exact instability certificates for plane curves and sheaves on P²")]
pub struct Cli {
    /// Input file (curve form, Chern data, configuration, monad pair or report).
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Seed for every randomized sample (frames, sweep lines, directions).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Add wall-clock timing to the report; reports are then not reproducible.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// Multiplicity certificate at a point, or a full classification.
    Curve {
        /// Check only this point, as `x,y,z`.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Riemann-Roch, reduced Hilbert polynomial and the h¹ table.
    Chern {
        #[arg(long, requires_all = ["c1", "c2"])]
        r: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        c1: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        c2: Option<i64>,
    },
    /// Rank-2 bundles from point configurations.
    Hulsbergen(HulsbergenArgs),
    /// Monad pairs `(K, L)`.
    Monad(MonadArgs),
    /// Re-verify every certificate in a report given with `--in`.
    Replay,
}

#[derive(Args, Debug)]
pub struct HulsbergenArgs {
    /// Jump curve in the dual plane, with its degree and smoothness.
    #[arg(long)]
    pub jump_curve: bool,
    /// Splitting type on one line.
    #[arg(long, requires = "line")]
    pub splitting: bool,
    /// Line `a0,a1,a2` for `--splitting`.
    #[arg(long, allow_hyphen_values = true)]
    pub line: Option<String>,
    /// Test the best secant line against `d > 2n/3`.
    #[arg(long)]
    pub check_unstable: bool,
    /// Compare the jump curve of `g·Z` with the transformed jump curve.
    #[arg(long)]
    pub equivariance: bool,
    /// Group element for `--equivariance`; otherwise seeded random ones.
    #[arg(long, requires = "equivariance", value_name = "FILE")]
    pub matrix: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MonadArgs {
    /// Check that the quotient data composes to zero.
    #[arg(long)]
    pub check_condition: bool,
    /// `det(l₁A₁ + l₂A₂ + l₃A₃)` as a form in the line coordinates.
    #[arg(long)]
    pub jump_divisor: bool,
    /// The map `K → H` on one line and its kernel dimension.
    #[arg(long, requires = "line")]
    pub phi: bool,
    /// Line `l1,l2,l3` for `--phi`.
    #[arg(long, allow_hyphen_values = true)]
    pub line: Option<String>,
    /// SL(V) and large-`m` instability for a subspace `V′`.
    #[arg(long)]
    pub instability: bool,
    /// `V′` as a JSON file or as a line `l1,l2,l3` with `V′ = ker l`;
    /// without it the best candidate line is scanned for.
    #[arg(long, requires = "instability", allow_hyphen_values = true)]
    pub vprime: Option<String>,
    /// Injectivity of `α_v` and `L* ∩ H* ⊗ v` at sample directions.
    #[arg(long)]
    pub validate_lemmas: bool,
}

/// What the binary should do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Analyze(AnalysisRequest),
    Replay { input: Option<PathBuf>, output: Option<PathBuf> },
}

impl Cli {
    pub fn into_action(self) -> Action {
        let command = match self.command {
            Sub::Replay => {
                return Action::Replay {
                    input: self.input,
                    output: self.out,
                }
            }
            Sub::Curve { point } => Command::Curve { point },
            Sub::Chern { r, c1, c2 } => Command::Chern {
                inline: r.map(|r| (r, c1.unwrap_or(0), c2.unwrap_or(0))),
            },
            Sub::Hulsbergen(a) => Command::Hulsbergen(HulsbergenFlags {
                jump_curve: a.jump_curve,
                splitting: a.splitting,
                line: a.line,
                check_unstable: a.check_unstable,
                equivariance: a.equivariance,
                matrix: a.matrix,
            }),
            Sub::Monad(a) => Command::Monad(MonadFlags {
                check_condition: a.check_condition,
                jump_divisor: a.jump_divisor,
                phi: a.phi,
                line: a.line,
                instability: a.instability,
                vprime: a.vprime,
                validate_lemmas: a.validate_lemmas,
            }),
        };
        Action::Analyze(AnalysisRequest {
            command,
            input: self.input,
            output: self.out,
            seed: self.seed,
            timing: self.timing,
        })
    }
}
