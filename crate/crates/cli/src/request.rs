//! Requests as typed on the command line, and the jobs they resolve to.
//!
//! A [`Job`] holds every input the analysis reads, including whatever the
//! seed generated, so a report can be replayed without the original files.

use std::fs;
use std::path::{Path, PathBuf};

use gitplane::algebra::int;
use gitplane::io::parse_triple;
use gitplane::random::{random_det_one, small_int};
use gitplane::{
    ChernData, DualLinePoint, HomogeneousPolynomial, HulsbergenDatum, LineFunctional, MonadPair, ProjectivePoint,
    Rational, RationalMatrix, Subspace,
};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Number of random group elements tried when no matrix is given.
pub const EQUIVARIANCE_SAMPLES: usize = 10;
/// Random dual-plane lines swept when scanning for jump lines.
pub const SWEEP_LINES: usize = 6;
/// Random directions added to the coordinate ones when checking lemmas.
pub const LEMMA_SAMPLES: usize = 4;

/// A parsed command line: what to run, where the data lives, and how to
/// write the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Curve { point: Option<String> },
    Chern { inline: Option<(u32, i64, i64)> },
    Hulsbergen(HulsbergenFlags),
    Monad(MonadFlags),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HulsbergenFlags {
    pub jump_curve: bool,
    pub splitting: bool,
    pub line: Option<String>,
    pub check_unstable: bool,
    pub equivariance: bool,
    pub matrix: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonadFlags {
    pub check_condition: bool,
    pub jump_divisor: bool,
    pub phi: bool,
    pub line: Option<String>,
    pub instability: bool,
    pub vprime: Option<String>,
    pub validate_lemmas: bool,
}

/// A vector of `V` (or a point of the dual plane) written as coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector3(#[serde(with = "gitplane::io::triple")] pub [Rational; 3]);

/// Fully resolved analysis input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Job {
    Curve {
        curve: HomogeneousPolynomial,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        point: Option<ProjectivePoint>,
    },
    Chern {
        chern: ChernData,
    },
    Hulsbergen {
        datum: HulsbergenDatum,
        actions: HulsbergenActions,
    },
    Monad {
        pair: MonadPair,
        actions: MonadActions,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HulsbergenActions {
    pub jump_curve: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting_line: Option<DualLinePoint>,
    pub check_unstable: bool,
    /// Group elements for the equivariance check; empty when not requested.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equivariance: Vec<RationalMatrix>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonadActions {
    pub check_condition: bool,
    pub jump_divisor: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_line: Option<LineFunctional>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instability: Option<InstabilitySpec>,
    /// Directions `v` at which the injectivity lemmas are checked.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lemma_directions: Vec<Vector3>,
}

/// Either a given `V′` or a scan for the best candidate line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstabilitySpec {
    Subspace { basis: Vec<Vector3> },
    Scan { sweeps: Vec<[Vector3; 2]> },
}

/// File form of `--vprime`: a basis, or a functional whose kernel is `V′`.
#[derive(Deserialize)]
#[serde(untagged)]
enum VPrimeFile {
    Basis { basis: Vec<Vector3> },
    Line(LineFunctional),
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn need_input(input: &Option<PathBuf>) -> Result<&Path, CliError> {
    input
        .as_deref()
        .ok_or_else(|| CliError::Input("this command needs --in <file>".into()))
}

fn triple(s: &str, what: &str) -> Result<[Rational; 3], CliError> {
    parse_triple(s).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

fn basis_of(s: &Subspace) -> Vec<Vector3> {
    s.basis_vectors()
        .into_iter()
        .map(|v| Vector3([v[0].clone(), v[1].clone(), v[2].clone()]))
        .collect()
}

fn coordinate_vector(k: usize) -> [Rational; 3] {
    let mut v = [0, 0, 0].map(int);
    v[k] = int(1);
    v
}

fn random_nonzero(rng: &mut ChaCha8Rng, bound: i64) -> [Rational; 3] {
    loop {
        let v = [0; 3].map(|_| int(small_int(rng, bound)));
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

impl AnalysisRequest {
    /// Reads the input files and draws the seeded samples.
    pub fn resolve(&self) -> Result<Job, CliError> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        match &self.command {
            Command::Curve { point } => {
                let curve: HomogeneousPolynomial = read_json(need_input(&self.input)?)?;
                let point = point
                    .as_deref()
                    .map(|p| ProjectivePoint::new(triple(p, "--point")?).map_err(CliError::from))
                    .transpose()?;
                Ok(Job::Curve { curve, point })
            }
            Command::Chern { inline } => {
                let chern = match (inline, &self.input) {
                    (Some((r, c1, c2)), _) => ChernData::new(*r, *c1, *c2)?,
                    (None, Some(path)) => read_json(path)?,
                    (None, None) => {
                        return Err(CliError::Input("chern needs --r/--c1/--c2 or --in <file>".into()))
                    }
                };
                Ok(Job::Chern { chern })
            }
            Command::Hulsbergen(f) => {
                let datum: HulsbergenDatum = read_json(need_input(&self.input)?)?;
                let any = f.jump_curve || f.splitting || f.check_unstable || f.equivariance;
                let splitting_line = match (f.splitting, &f.line) {
                    (true, Some(l)) => Some(DualLinePoint::new(triple(l, "--line")?)?),
                    (true, None) => return Err(CliError::Input("--splitting needs --line a0,a1,a2".into())),
                    (false, Some(_)) => return Err(CliError::Input("--line is only used with --splitting".into())),
                    (false, None) => None,
                };
                let equivariance = if !f.equivariance {
                    Vec::new()
                } else if let Some(path) = &f.matrix {
                    vec![read_json(path)?]
                } else {
                    (0..EQUIVARIANCE_SAMPLES).map(|_| random_det_one(&mut rng, 4)).collect()
                };
                let actions = HulsbergenActions {
                    jump_curve: f.jump_curve || !any,
                    splitting_line,
                    check_unstable: f.check_unstable || !any,
                    equivariance,
                };
                Ok(Job::Hulsbergen { datum, actions })
            }
            Command::Monad(f) => {
                let pair: MonadPair = read_json(need_input(&self.input)?)?;
                let any = f.check_condition || f.jump_divisor || f.phi || f.instability || f.validate_lemmas;
                let phi_line = match (f.phi, &f.line) {
                    (true, Some(l)) => Some(LineFunctional::new(triple(l, "--line")?)?),
                    (true, None) => return Err(CliError::Input("--phi needs --line l1,l2,l3".into())),
                    (false, Some(_)) => return Err(CliError::Input("--line is only used with --phi".into())),
                    (false, None) => None,
                };
                if f.vprime.is_some() && !f.instability {
                    return Err(CliError::Input("--vprime is only used with --instability".into()));
                }
                let instability = if f.instability || !any {
                    Some(match &f.vprime {
                        Some(v) => InstabilitySpec::Subspace { basis: resolve_vprime(v)? },
                        None => InstabilitySpec::Scan {
                            sweeps: (0..SWEEP_LINES)
                                .map(|_| [Vector3(random_nonzero(&mut rng, 5)), Vector3(random_nonzero(&mut rng, 5))])
                                .collect(),
                        },
                    })
                } else {
                    None
                };
                let lemma_directions = if f.validate_lemmas || !any {
                    let mut dirs: Vec<Vector3> = (0..3).map(|k| Vector3(coordinate_vector(k))).collect();
                    dirs.extend((0..LEMMA_SAMPLES).map(|_| Vector3(random_nonzero(&mut rng, 5))));
                    dirs
                } else {
                    Vec::new()
                };
                let actions = MonadActions {
                    check_condition: f.check_condition || !any,
                    jump_divisor: f.jump_divisor || !any,
                    phi_line,
                    instability,
                    lemma_directions,
                };
                Ok(Job::Monad { pair, actions })
            }
        }
    }
}

/// `--vprime` is a JSON file or a functional `l1,l2,l3` with `V′ = ker l`.
fn resolve_vprime(arg: &str) -> Result<Vec<Vector3>, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        return match read_json::<VPrimeFile>(path)? {
            VPrimeFile::Basis { basis } => Ok(basis),
            VPrimeFile::Line(l) => Ok(basis_of(&l.kernel())),
        };
    }
    Ok(basis_of(&LineFunctional::new(triple(arg, "--vprime")?)?.kernel()))
}

impl Vector3 {
    pub fn subspace(vs: &[Vector3]) -> Result<Subspace, CliError> {
        let vecs: Vec<Vec<Rational>> = vs.iter().map(|v| v.0.to_vec()).collect();
        Ok(Subspace::span(3, &vecs)?)
    }
}
