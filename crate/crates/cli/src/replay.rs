//! Re-checking a report against the library.
//!
//! Each certificate is checked on its own terms (a negative weight under the
//! recorded frame, a kernel dimension above the threshold, vanishing at the
//! secant points), and the whole job is then re-run and compared, so an edit
//! anywhere in the findings is caught.

use gitplane::curves::{is_nonsingular, multiplicity_at};
use gitplane::hulsbergen::{jump_curve, jump_multiplicity, secant_dual_points, Rank2Check};
use gitplane::monads::{k_prime, mu_pair, plane_one_ps, LargeMReport};
use gitplane::{
    HulsbergenDatum, InstabilityCertificate, MonadPair, PairOnePS, PlaneCurve, Rational, Subspace, Verdict,
};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::report::{
    classification_finding, findings, input_hash, ClassificationFinding, CurveClass, Finding, InstabilityFinding,
    JumpCurveFinding, PointFinding, Report, TOOL, VERSION,
};
use crate::request::{Job, Vector3};

/// Outcome of [`replay_detailed`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayOutcome {
    pub passed: bool,
    pub failures: Vec<String>,
    pub warnings: Vec<String>,
}

/// True when every check in the report re-verifies.
pub fn replay(report: &Report) -> bool {
    replay_detailed(report).passed
}

/// Parses a report and replays it. Unparseable text fails.
pub fn replay_json(text: &str) -> ReplayOutcome {
    match serde_json::from_str::<Report>(text) {
        Ok(r) => replay_detailed(&r),
        Err(e) => ReplayOutcome {
            passed: false,
            failures: vec![format!("report does not parse: {e}")],
            warnings: Vec::new(),
        },
    }
}

struct Checker {
    failures: Vec<String>,
}

impl Checker {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

pub fn replay_detailed(report: &Report) -> ReplayOutcome {
    let mut warnings = Vec::new();
    if report.tool != TOOL {
        warnings.push(format!("report written by {:?}, not {TOOL}", report.tool));
    }
    if report.version != VERSION {
        warnings.push(format!(
            "report written by version {}, replaying with {VERSION}",
            report.version
        ));
    }
    let mut c = Checker { failures: Vec::new() };
    c.check(input_hash(&report.input) == report.input_hash, || {
        "input hash does not match the embedded input".into()
    });
    for (i, f) in report.findings.iter().enumerate() {
        if let Err(e) = check_finding(&mut c, &report.input, f) {
            c.failures.push(format!("finding {i}: {e}"));
        }
    }
    match findings(&report.input) {
        Ok(again) => c.check(again == report.findings, || {
            "re-running the input gives different findings".into()
        }),
        Err(e) => c.failures.push(format!("re-running the input failed: {e}")),
    }
    ReplayOutcome {
        passed: c.failures.is_empty(),
        failures: c.failures,
        warnings,
    }
}

fn check_finding(c: &mut Checker, input: &Job, f: &Finding) -> Result<(), String> {
    let e = |x: &dyn std::fmt::Display| x.to_string();
    match (input, f) {
        (Job::Curve { curve, .. }, Finding::Point(p)) => {
            check_point(c, &PlaneCurve::new(curve.clone()).map_err(|x| e(&x))?, p)
        }
        (Job::Curve { curve, .. }, Finding::Classification(k)) => {
            check_classification(c, &PlaneCurve::new(curve.clone()).map_err(|x| e(&x))?, k)?
        }
        (Job::Chern { chern }, Finding::Chern(found)) => {
            c.check(crate::report::chern_finding(chern) == *found, || {
                "Chern quantities differ from a recomputation".into()
            })
        }
        (Job::Hulsbergen { datum, .. }, Finding::JumpCurve(j)) => check_jump_curve(c, datum, j)?,
        (Job::Hulsbergen { datum, actions }, Finding::Splitting(r)) => {
            c.check(actions.splitting_line.as_ref() == Some(&r.line), || {
                "splitting reported for a line that was not requested".into()
            });
            check_rank2(c, datum, r)?;
        }
        (Job::Hulsbergen { datum, .. }, Finding::SecantInstability(r)) => check_rank2(c, datum, r)?,
        (Job::Hulsbergen { datum, .. }, Finding::Equivariance(q)) => {
            let again = gitplane::hulsbergen::equivariance_check(datum, &q.matrix).map_err(|x| e(&x))?;
            c.check(again == q.equivariant, || "equivariance verdict differs".into());
        }
        (Job::Monad { pair, .. }, Finding::MonadCondition { holds }) => {
            c.check(gitplane::monads::monad_condition_check(pair) == *holds, || {
                "monad condition verdict differs".into()
            })
        }
        (Job::Monad { pair, .. }, Finding::JumpDivisor(d)) => {
            let again = gitplane::monads::jump_divisor(pair);
            c.check(again == d.form && d.degree == pair.n() as u32 && d.identically_zero == again.is_zero(), || {
                "jump divisor differs from det(l1 A1 + l2 A2 + l3 A3)".into()
            });
        }
        (Job::Monad { pair, .. }, Finding::Phi(p)) => {
            let m = gitplane::monads::phi_line(pair, &p.line);
            c.check(m == p.matrix && m.nullity() == p.kernel_dim, || {
                "phi_l or its kernel dimension differs".into()
            });
        }
        (Job::Monad { pair, .. }, Finding::Instability(i)) => check_instability(c, pair, i)?,
        (Job::Monad { pair, .. }, Finding::Lemmas(l)) => {
            let dirs: Vec<Vector3> = l.samples.iter().map(|s| s.direction.clone()).collect();
            let again = crate::report::lemma_finding(pair, &dirs).map_err(|x| e(&x))?;
            c.check(again == *l, || "lemma checks differ".into());
        }
        _ => return Err("finding does not belong to this command".into()),
    }
    Ok(())
}

fn check_certificate(c: &mut Checker, curve: &PlaneCurve, cert: &InstabilityCertificate) {
    c.check(cert.verify(curve), || {
        format!(
            "certificate at {} does not verify (mu {} under weights {:?})",
            cert.witness_point,
            cert.mu_value,
            cert.one_ps.weights()
        )
    });
}

fn check_point(c: &mut Checker, curve: &PlaneCurve, p: &PointFinding) {
    let m = multiplicity_at(curve, &p.point);
    let n = curve.degree();
    c.check(m == p.multiplicity && n == p.degree, || {
        format!("multiplicity at {} is {m}, report says {}", p.point, p.multiplicity)
    });
    c.check(p.threshold == Rational::new((2 * n).into(), 3.into()), || "threshold is not 2n/3".into());
    let unstable = 3 * m > 2 * n;
    c.check(p.verdict == Verdict::from_unstable(unstable), || "verdict contradicts 3m > 2n".into());
    c.check(p.certificate.is_some() == unstable, || {
        "an unstable verdict needs a certificate, and only then".into()
    });
    if let Some(cert) = &p.certificate {
        c.check(cert.witness_point == p.point, || "certificate is for another point".into());
        check_certificate(c, curve, cert);
    }
}

fn check_classification(c: &mut Checker, curve: &PlaneCurve, k: &ClassificationFinding) -> Result<(), String> {
    let partials = curve.form().partials().map_err(|e| e.to_string())?;
    for p in &k.singular_points {
        c.check(partials.iter().all(|d| p.lies_on(d)), || format!("{p} is not a singular point"));
    }
    match k.class {
        CurveClass::Unstable => match &k.certificate {
            Some(cert) => check_certificate(c, curve, cert),
            None => c.failures.push("unstable classification without a certificate".into()),
        },
        CurveClass::StableByNonsingularity => {
            c.check(curve.degree() >= 3 && is_nonsingular(curve), || {
                "stability by nonsingularity needs a smooth curve of degree at least 3".into()
            });
        }
        CurveClass::Inconclusive => {
            c.check(k.certificate.is_none(), || "inconclusive classification carries a certificate".into());
        }
    }
    let again = classification_finding(curve).map_err(|e| e.to_string())?;
    c.check(again == *k, || "classification differs from a recomputation".into());
    Ok(())
}

fn check_jump_curve(c: &mut Checker, d: &HulsbergenDatum, j: &JumpCurveFinding) -> Result<(), String> {
    let again = jump_curve(d).map_err(|e| e.to_string())?;
    c.check(again.form().is_proportional_to(&j.form), || "jump curve differs".into());
    c.check(j.degree == d.config().n() && j.c2 == d.chern().c2() && j.form.degree() == j.degree, || {
        "jump curve degree is not c2".into()
    });
    let expected: Vec<Vector3> = secant_dual_points(d.config()).into_iter().map(Vector3).collect();
    c.check(expected == j.secants, || "secant list differs".into());
    for s in &j.secants {
        c.check(j.form.eval(&s.0).is_zero(), || "jump curve does not vanish at a secant line".into());
    }
    c.check(is_nonsingular(&again) == j.nonsingular, || "nonsingularity flag differs".into());
    Ok(())
}

fn check_rank2(c: &mut Checker, d: &HulsbergenDatum, r: &Rank2Check) -> Result<(), String> {
    let z = d.config();
    c.check(r.verify(z), || format!("splitting on {:?} does not re-verify", r.line.coords()));
    c.check(
        r.verdict == Verdict::from_unstable(3 * r.splitting.d > 2 * r.n),
        || "verdict contradicts 3d > 2n".into(),
    );
    if let Some(bound) = r.jump_multiplicity_lower_bound {
        let m = jump_multiplicity(d, &r.line).map_err(|e| e.to_string())?;
        c.check(m >= bound, || {
            format!("jump curve has multiplicity {m} at the line, below {bound}")
        });
    }
    Ok(())
}

fn check_instability(c: &mut Checker, m: &MonadPair, i: &InstabilityFinding) -> Result<(), String> {
    let vprime = Vector3::subspace(&i.vprime).map_err(|e| e.to_string())?;
    let kp = k_prime(m, &vprime).map_err(|e| e.to_string())?.dim();
    let s = &i.sl_v;
    c.check(s.vprime_dim == vprime.dim() && s.k_prime_dim == kp && s.n == m.n(), || {
        format!("dim K' is {kp}, report says {}", s.k_prime_dim)
    });
    c.check(
        s.verdict == Verdict::from_unstable(3 * kp > vprime.dim() * m.n()),
        || "SL(V) verdict contradicts dim K' > dim V' dim K / dim V".into(),
    );
    for cand in &i.candidates {
        c.check(gitplane::monads::h0_splitting_count(m, &cand.line) == cand.h0, || {
            format!("candidate {:?} has a different kernel dimension", cand.line.coords())
        });
    }
    match (&i.large_m, vprime.dim()) {
        (Some(l), 2) => check_large_m(c, m, &vprime, kp, l),
        (None, 2) => c.failures.push("plane V' without the large-m reduction".into()),
        (Some(_), _) => c.failures.push("large-m reduction for a V' that is not a plane".into()),
        (None, _) => {}
    }
    Ok(())
}

/// The recorded subgroup must have weights `(1, 1, −2)` on `V` with `V′`
/// spanned by the first two frame columns and trivial weights on `H`.
fn adapted_to(l: &PairOnePS, vprime: &Subspace, n: usize) -> bool {
    let Ok(checked) = PairOnePS::new(l.h_weights.clone(), l.h_frame.clone(), l.v_weights, l.v_frame.clone()) else {
        return false;
    };
    let Some(frame) = &checked.v_frame else {
        return false;
    };
    let cols: Vec<Vec<Rational>> = (0..2).map(|j| frame.column(j)).collect();
    let Ok(span) = Subspace::span(3, &cols) else {
        return false;
    };
    checked.h_weights == vec![0; n] && checked.v_weights == [1, 1, -2] && span.same_as(vprime)
}

fn check_large_m(c: &mut Checker, m: &MonadPair, vprime: &Subspace, kp: usize, l: &LargeMReport) {
    let n = m.n() as i64;
    let r = m.r() as i64;
    let leading = 3 * kp as i64 - 2 * n;
    c.check(l.k_prime_dim == kp && l.leading == leading && l.n == m.n() && l.r == m.r(), || {
        format!("large-m data disagrees with dim K' = {kp}")
    });
    c.check(l.line.kernel().same_as(vprime), || "recorded line does not cut out V'".into());
    if !adapted_to(&l.one_ps, vprime, m.n()) {
        c.failures.push("one-parameter subgroup is not adapted to V'".into());
        return;
    }
    let (Ok(mu_k), Ok(mu_w)) = (mu_pair(m, &l.one_ps, 1, 0), mu_pair(m, &l.one_ps, 0, 1)) else {
        c.failures.push("weights could not be recomputed".into());
        return;
    };
    c.check(mu_k == l.mu_k && mu_w == l.mu_w, || {
        format!("recomputed weights are ({mu_k}, {mu_w}), report says ({}, {})", l.mu_k, l.mu_w)
    });
    c.check(mu_k == -leading, || "mu_K is not -(3 dim K' - 2n)".into());
    c.check(l.mu_slope == r * mu_k && l.mu_intercept == n * (mu_w - mu_k), || {
        "mu(m) coefficients differ".into()
    });
    c.check(l.verdict == Verdict::from_unstable(leading > 0), || "verdict contradicts dim K' > 2n/3".into());
    match l.unstable_from_m {
        Some(from) => {
            let ok = r * from > n
                && mu_pair(m, &l.one_ps, (r * from - n) as u64, n as u64).is_ok_and(|mu| mu < 0);
            c.check(ok && l.verdict.is_unstable(), || format!("mu is not negative at m = {from}"));
        }
        None => c.check(!l.verdict.is_unstable(), || "unstable verdict without a starting m".into()),
    }
    if let Ok(canonical) = plane_one_ps(m.n(), vprime) {
        // any adapted frame gives the same weights
        c.check(mu_pair(m, &canonical, 1, 0).ok() == Some(mu_k), || {
            "weights depend on the choice of adapted frame".into()
        });
    }
}
