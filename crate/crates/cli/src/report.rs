//! Running a job and the report it produces.

use std::time::Instant;

use gitplane::curves::{
    check_point_instability, classify_curve, find_rational_singular_points, is_nonsingular, CurveStatus,
    PointVerdict,
};
use gitplane::hulsbergen::{
    best_secant_line, equivariance_check, jump_curve, rank2_unstable_check, secant_dual_points, Rank2Check,
};
use gitplane::monads::{
    alpha_rank, h0_splitting_count, jump_divisor, large_m_verdict, lstar_intersection, monad_condition_check,
    phi_line, scan_candidate_lines, sl_v_instability, CandidateLine, LargeMReport, SlVReport,
};
use gitplane::sheaves::{euler_characteristic, h1_table, reduced_hilbert_polynomial, CohomologyTable};
use gitplane::{
    ChernData, HomogeneousPolynomial, InstabilityCertificate, LineFunctional, MonadPair, PlaneCurve,
    ProjectivePoint, Rational, RationalMatrix, ReducedHilbertPolynomial, Verdict,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::request::{AnalysisRequest, HulsbergenActions, InstabilitySpec, Job, MonadActions, Vector3};

pub const TOOL: &str = "gitplane";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Candidate lines kept in a scan report.
const CANDIDATES_REPORTED: usize = 8;

/// Output of one run. Everything except `timing` is a function of the job.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    /// Hex SHA-256 of the compact JSON of `input`.
    pub input_hash: String,
    pub input: Job,
    pub findings: Vec<Finding>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_micros: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveClass {
    Unstable,
    StableByNonsingularity,
    Inconclusive,
}

/// The check at one point: `3·mult > 2n` yields a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointFinding {
    pub point: ProjectivePoint,
    pub degree: u32,
    pub multiplicity: u32,
    #[serde(with = "gitplane::io::rational")]
    pub threshold: Rational,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<InstabilityCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationFinding {
    pub degree: u32,
    pub class: CurveClass,
    pub nonsingular: bool,
    pub singular_points: Vec<ProjectivePoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular_component: Option<HomogeneousPolynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<InstabilityCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernFinding {
    pub chern: ChernData,
    pub euler_characteristic: i64,
    #[serde(with = "gitplane::io::rational")]
    pub slope: Rational,
    pub hilbert_polynomial: ReducedHilbertPolynomial,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1_table: Option<CohomologyTable>,
    /// Why the table is missing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpCurveFinding {
    pub form: HomogeneousPolynomial,
    pub degree: u32,
    pub c2: i64,
    pub nonsingular: bool,
    /// Dual points of the secant lines; each lies on the curve.
    pub secants: Vec<Vector3>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceFinding {
    pub matrix: RationalMatrix,
    pub equivariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpDivisorFinding {
    pub form: HomogeneousPolynomial,
    pub degree: u32,
    pub identically_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiFinding {
    pub line: LineFunctional,
    pub matrix: RationalMatrix,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstabilityFinding {
    pub vprime: Vec<Vector3>,
    pub sl_v: SlVReport,
    /// Present when `dim V′ = 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub large_m: Option<LargeMReport>,
    /// Present when `V′` came from a scan.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<CandidateLine>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSample {
    pub direction: Vector3,
    pub alpha_rank: usize,
    pub alpha_injective: bool,
    /// `dim L* ∩ H* ⊗ ⟨v⟩`; absent for `r = n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lstar_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaFinding {
    pub samples: Vec<LemmaSample>,
    /// Some sampled direction breaks a lemma: the pair does not come from a
    /// semistable sheaf.
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    Point(PointFinding),
    Classification(ClassificationFinding),
    Chern(ChernFinding),
    JumpCurve(JumpCurveFinding),
    Splitting(Rank2Check),
    SecantInstability(Rank2Check),
    Equivariance(EquivarianceFinding),
    MonadCondition { holds: bool },
    JumpDivisor(JumpDivisorFinding),
    Phi(PhiFinding),
    Instability(InstabilityFinding),
    Lemmas(LemmaFinding),
}

/// Hex SHA-256 of the compact JSON of a job.
pub fn input_hash(job: &Job) -> String {
    let bytes = serde_json::to_vec(job).expect("jobs serialise");
    hex::encode(Sha256::digest(bytes))
}

/// Resolves the request and runs it.
pub fn run(request: &AnalysisRequest) -> Result<Report, CliError> {
    let start = Instant::now();
    let job = request.resolve()?;
    let mut report = run_job(&job, request.seed)?;
    if request.timing {
        report.timing = Some(Timing {
            elapsed_micros: start.elapsed().as_micros() as u64,
        });
    }
    Ok(report)
}

/// Runs a resolved job; no timing.
pub fn run_job(job: &Job, seed: u64) -> Result<Report, CliError> {
    Ok(Report {
        tool: TOOL.into(),
        version: VERSION.into(),
        seed,
        input_hash: input_hash(job),
        input: job.clone(),
        findings: findings(job)?,
        timing: None,
    })
}

pub(crate) fn findings(job: &Job) -> Result<Vec<Finding>, CliError> {
    match job {
        Job::Curve { curve, point } => curve_findings(&PlaneCurve::new(curve.clone())?, point.as_ref()),
        Job::Chern { chern } => Ok(vec![Finding::Chern(chern_finding(chern))]),
        Job::Hulsbergen { datum, actions } => hulsbergen_findings(datum, actions),
        Job::Monad { pair, actions } => monad_findings(pair, actions),
    }
}

pub(crate) fn point_finding(curve: &PlaneCurve, p: &ProjectivePoint) -> PointFinding {
    let degree = curve.degree();
    let threshold = Rational::new((2 * degree).into(), 3.into());
    let (multiplicity, certificate) = match check_point_instability(curve, p) {
        PointVerdict::Unstable(cert) => (cert.multiplicity, Some(cert)),
        PointVerdict::Inconclusive { multiplicity } => (multiplicity, None),
    };
    PointFinding {
        point: p.clone(),
        degree,
        multiplicity,
        threshold,
        verdict: Verdict::from_unstable(certificate.is_some()),
        certificate,
    }
}

pub(crate) fn classification_finding(curve: &PlaneCurve) -> Result<ClassificationFinding, CliError> {
    let (points, component) = if curve.degree() >= 2 {
        let locus = find_rational_singular_points(curve)?;
        (locus.points, locus.component)
    } else {
        (Vec::new(), None)
    };
    let (class, certificate) = match classify_curve(curve)? {
        CurveStatus::Unstable(c) => (CurveClass::Unstable, Some(c)),
        CurveStatus::StableByNonsingularity => (CurveClass::StableByNonsingularity, None),
        CurveStatus::Inconclusive => (CurveClass::Inconclusive, None),
    };
    Ok(ClassificationFinding {
        degree: curve.degree(),
        class,
        nonsingular: is_nonsingular(curve),
        singular_points: points,
        singular_component: component,
        certificate,
    })
}

fn curve_findings(curve: &PlaneCurve, point: Option<&ProjectivePoint>) -> Result<Vec<Finding>, CliError> {
    Ok(match point {
        Some(p) => vec![Finding::Point(point_finding(curve, p))],
        None => vec![Finding::Classification(classification_finding(curve)?)],
    })
}

pub(crate) fn chern_finding(c: &ChernData) -> ChernFinding {
    let (h1_table, table_note) = match h1_table(c) {
        Ok(t) => (Some(t), None),
        Err(e) => (None, Some(e.to_string())),
    };
    ChernFinding {
        chern: *c,
        euler_characteristic: euler_characteristic(c),
        slope: c.slope(),
        hilbert_polynomial: reduced_hilbert_polynomial(c),
        h1_table,
        table_note,
    }
}

fn hulsbergen_findings(d: &gitplane::HulsbergenDatum, a: &HulsbergenActions) -> Result<Vec<Finding>, CliError> {
    let z = d.config();
    let mut out = Vec::new();
    if a.jump_curve {
        let j = jump_curve(d)?;
        out.push(Finding::JumpCurve(JumpCurveFinding {
            degree: j.degree(),
            c2: d.chern().c2(),
            nonsingular: is_nonsingular(&j),
            form: j.form().clone(),
            secants: secant_dual_points(z).into_iter().map(Vector3).collect(),
        }));
    }
    if let Some(l) = &a.splitting_line {
        out.push(Finding::Splitting(rank2_unstable_check(z, l)));
    }
    if a.check_unstable {
        let (line, _) = best_secant_line(z).expect("a configuration has at least two points");
        out.push(Finding::SecantInstability(rank2_unstable_check(z, &line)));
    }
    for g in &a.equivariance {
        out.push(Finding::Equivariance(EquivarianceFinding {
            matrix: g.clone(),
            equivariant: equivariance_check(d, g)?,
        }));
    }
    Ok(out)
}

pub(crate) fn instability_finding(m: &MonadPair, vprime: Vec<Vector3>, candidates: Vec<CandidateLine>) -> Result<InstabilityFinding, CliError> {
    let sub = Vector3::subspace(&vprime)?;
    let sl_v = sl_v_instability(m, &sub)?;
    let large_m = if sub.dim() == 2 { Some(large_m_verdict(m, &sub)?) } else { None };
    Ok(InstabilityFinding {
        vprime,
        sl_v,
        large_m,
        candidates,
    })
}

pub(crate) fn lemma_finding(m: &MonadPair, dirs: &[Vector3]) -> Result<LemmaFinding, CliError> {
    let mut samples = Vec::with_capacity(dirs.len());
    for v in dirs {
        let rank = alpha_rank(m, &v.0)?;
        let lstar_dim = if m.b().is_some() { Some(lstar_intersection(m, &v.0)?) } else { None };
        samples.push(LemmaSample {
            direction: v.clone(),
            alpha_rank: rank,
            alpha_injective: rank == m.n(),
            lstar_dim,
        });
    }
    let violation = samples
        .iter()
        .any(|s| !s.alpha_injective || s.lstar_dim.is_some_and(|d| d > 0));
    Ok(LemmaFinding { samples, violation })
}

fn monad_findings(m: &MonadPair, a: &MonadActions) -> Result<Vec<Finding>, CliError> {
    let mut out = Vec::new();
    if a.check_condition {
        out.push(Finding::MonadCondition {
            holds: monad_condition_check(m),
        });
    }
    if a.jump_divisor {
        let d = jump_divisor(m);
        out.push(Finding::JumpDivisor(JumpDivisorFinding {
            degree: d.degree(),
            identically_zero: d.is_zero(),
            form: d,
        }));
    }
    if let Some(l) = &a.phi_line {
        out.push(Finding::Phi(PhiFinding {
            line: l.clone(),
            matrix: phi_line(m, l),
            kernel_dim: h0_splitting_count(m, l),
        }));
    }
    match &a.instability {
        Some(InstabilitySpec::Subspace { basis }) => {
            out.push(Finding::Instability(instability_finding(m, basis.clone(), Vec::new())?));
        }
        Some(InstabilitySpec::Scan { sweeps }) => {
            let sweeps: Vec<([Rational; 3], [Rational; 3])> =
                sweeps.iter().map(|[p, q]| (p.0.clone(), q.0.clone())).collect();
            let mut candidates = scan_candidate_lines(m, &[], &sweeps);
            candidates.truncate(CANDIDATES_REPORTED);
            let best = candidates.first().expect("the coordinate lines are always candidates");
            let plane = best.line.kernel();
            let basis = plane
                .basis_vectors()
                .into_iter()
                .map(|v| Vector3([v[0].clone(), v[1].clone(), v[2].clone()]))
                .collect();
            out.push(Finding::Instability(instability_finding(m, basis, candidates)?));
        }
        None => {}
    }
    if !a.lemma_directions.is_empty() {
        out.push(Finding::Lemmas(lemma_finding(m, &a.lemma_directions)?));
    }
    Ok(out)
}

impl Report {
    /// Unstable verdicts in the report, for summaries.
    pub fn unstable_count(&self) -> usize {
        self.findings
            .iter()
            .filter(|f| match f {
                Finding::Point(p) => p.verdict.is_unstable(),
                Finding::Classification(c) => c.class == CurveClass::Unstable,
                Finding::Splitting(c) | Finding::SecantInstability(c) => c.verdict.is_unstable(),
                Finding::Instability(i) => {
                    i.sl_v.verdict.is_unstable() || i.large_m.as_ref().is_some_and(|l| l.verdict.is_unstable())
                }
                _ => false,
            })
            .count()
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }
}
