//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Every check compares library output against a value computed here by
//! other means (direct evaluation, rank counts, closed formulas).

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{self, Command};

use clap::Parser;
use gitplane::algebra::{cross3, dot3, int, Rational};
use gitplane::curves::{
    check_point_instability, classify_curve, form_from_i64, is_nonsingular, mu_curve, multiplicity_at, CurveStatus,
    PointVerdict,
};
use gitplane::hulsbergen::{jump_curve, secant_dual_points};
use gitplane::monads::{
    alpha_injectivity, h0_splitting_count, jump_divisor, k_prime, large_m_verdict, lstar_intersection,
    sl_v_instability,
};
use gitplane::random::{
    monomials, planted_lstar_monad, planted_monad, pure_tensor, pure_tensor_monad, random_coefficients,
    random_configuration, random_det_one, random_line, random_monad, random_monad_with_quotient, random_vector,
    small_int,
};
use gitplane::sheaves::{euler_characteristic, gieseker_compare, reduced_hilbert_polynomial, semistable_h1_table};
use gitplane::{
    ChernData, DiagonalOnePS, HomogeneousPolynomial, HulsbergenDatum, LineFunctional, MonadPair, PlaneCurve,
    ProjectivePoint, RationalMatrix,
};
use gitplane_cli::args::{Action, Cli};
use gitplane_cli::{replay, replay_json, run, Report};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x6a17_0000 + tag)
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn nonzero_triple(r: &mut ChaCha8Rng, bound: i64) -> [Rational; 3] {
    loop {
        let v = [0; 3].map(|_| int(small_int(r, bound)));
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// `−min ⟨w, e⟩` over the support, with the curve read in the standard basis.
fn mu_by_hand(f: &HomogeneousPolynomial, w: [i64; 3]) -> i64 {
    -f.terms()
        .map(|(e, _)| (0..3).map(|i| w[i] * e[i] as i64).sum::<i64>())
        .min()
        .expect("nonzero form")
}

/// `Σᵢ aᵢ Πⱼ≠ᵢ ⟨xⱼ, ξ⟩` evaluated at a single dual point.
fn jump_value(points: &[[Rational; 3]], coeffs: &[Rational], xi: &[Rational; 3]) -> Rational {
    let vals: Vec<Rational> = points.iter().map(|p| dot3(p, xi)).collect();
    let mut total = Rational::zero();
    for (i, a) in coeffs.iter().enumerate() {
        let mut term = a.clone();
        for (j, v) in vals.iter().enumerate() {
            if j != i {
                term *= v;
            }
        }
        total += term;
    }
    total
}

fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RationalMatrix::from_rows(vectors.to_vec()).expect("equal lengths").rank()
}

/// `dim K ∩ (H ⊗ P)` from `dim(A ∩ B) = dim A + dim B − dim(A + B)`.
fn kernel_meet_by_rank(m: &MonadPair, plane: &[[Rational; 3]]) -> usize {
    let n = m.n();
    let k: Vec<Vec<Rational>> = m.k_matrix().columns();
    let mut tensors = Vec::new();
    for v in plane {
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = int(1);
            tensors.push(pure_tensor(&e, v));
        }
    }
    let both: Vec<Vec<Rational>> = k.iter().chain(tensors.iter()).cloned().collect();
    rank_of(&k) + rank_of(&tensors) - rank_of(&both)
}

fn triple_of(v: &[Rational]) -> [Rational; 3] {
    [v[0].clone(), v[1].clone(), v[2].clone()]
}

fn det_of_pencil(m: &MonadPair, l: &[Rational; 3]) -> Rational {
    let n = m.n();
    let a = m.a();
    RationalMatrix::from_fn(n, n, |i, j| (0..3).map(|v| &l[v] * &a[v][(i, j)]).sum())
        .det()
        .expect("square")
}

fn criterion_1() -> Outcome {
    let mut r = rng(1);
    for trial in 0..20 {
        let n: u32 = r.gen_range(3..=8);
        let min_ab = (2 * n).div_ceil(3) + 1;
        let terms: Vec<([u32; 3], i64)> = monomials(n)
            .into_iter()
            .filter(|e| e[0] + e[1] >= min_ab)
            .map(|e| {
                let mut c = 0;
                while c == 0 {
                    c = small_int(&mut r, 7);
                }
                (e, c)
            })
            .collect();
        let f = form_from_i64(n, &terms).map_err(|e| e.to_string())?;
        let curve = PlaneCurve::new(f.clone()).map_err(|e| e.to_string())?;
        let origin = ProjectivePoint::from_i64(0, 0, 1).unwrap();
        let PointVerdict::Unstable(cert) = check_point_instability(&curve, &origin) else {
            return Err(format!("trial {trial}: no certificate at (0:0:1) for degree {n}"));
        };
        ensure!(cert.verify(&curve), "trial {trial}: certificate does not verify");
        ensure!(cert.mu_value < 0, "trial {trial}: mu = {} is not negative", cert.mu_value);
        let expect = mu_by_hand(&f, [1, 1, -2]);
        ensure!(cert.mu_value == expect, "trial {trial}: mu {} != {expect}", cert.mu_value);
        ensure!(cert.multiplicity == min_ab, "trial {trial}: multiplicity {} != {min_ab}", cert.multiplicity);

        // the same curve after a random change of coordinates
        let g = random_det_one(&mut r, 3);
        let moved = curve.substitute(&g).map_err(|e| e.to_string())?;
        let ginv = g.inverse().map_err(|e| e.to_string())?;
        let p = ProjectivePoint::new(triple_of(&ginv.row(2))).unwrap();
        ensure!(multiplicity_at(&moved, &p) == min_ab, "trial {trial}: multiplicity not carried by g");
        match check_point_instability(&moved, &p) {
            PointVerdict::Unstable(c) if c.verify(&moved) && c.mu_value < 0 => {}
            other => return Err(format!("trial {trial}: moved curve gave {other:?}")),
        }
    }
    Ok("20 curves, degrees 3..8, certified with mu < 0".into())
}

fn criterion_2() -> Outcome {
    let f = form_from_i64(3, &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)]).unwrap();
    let curve = PlaneCurve::new(f.clone()).unwrap();
    let mut count = 0;
    for a in -6i64..=6 {
        for b in -6i64..=6 {
            let c = -a - b;
            if !(-6..=6).contains(&c) || (a, b) == (0, 0) {
                continue;
            }
            let w = [a, b, c];
            let mu = mu_curve(&curve, &DiagonalOnePS::diagonal(w).unwrap());
            // every weight of X³, Y³, Z³ is 3wᵢ and some wᵢ is negative
            let expect = -3 * a.min(b).min(c);
            ensure!(mu == expect && mu > 0, "weights {w:?}: mu = {mu}, expected {expect}");
            ensure!(mu == mu_by_hand(&f, w), "weights {w:?}: direct count disagrees");
            count += 1;
        }
    }
    ensure!(is_nonsingular(&curve), "Fermat cubic reported singular");
    ensure!(
        classify_curve(&curve).unwrap() == CurveStatus::StableByNonsingularity,
        "classification is not stable-by-nonsingularity"
    );
    Ok(format!("{count} weight vectors, mu > 0, nonsingular"))
}

fn criterion_3() -> Outcome {
    let d = HulsbergenDatum::new(
        gitplane::PointConfiguration::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap(),
        vec![int(1), int(1), int(1)],
    )
    .unwrap();
    let j = jump_curve(&d).map_err(|e| e.to_string())?;
    let expect = form_from_i64(2, &[([1, 1, 0], 1), ([0, 1, 1], 1), ([1, 0, 1], 1)]).unwrap();
    ensure!(j.degree() == 2, "degree {}", j.degree());
    ensure!(j.form().is_proportional_to(&expect), "jump curve {:?}", j.form());
    // a conic is smooth iff its symmetric Gram matrix is invertible
    let f = j.form();
    let c = |e: [u32; 3]| f.coeff(&e);
    let half = |e: [u32; 3]| c(e) / int(2);
    let gram = RationalMatrix::from_rows(vec![
        vec![c([2, 0, 0]), half([1, 1, 0]), half([1, 0, 1])],
        vec![half([1, 1, 0]), c([0, 2, 0]), half([0, 1, 1])],
        vec![half([1, 0, 1]), half([0, 1, 1]), c([0, 0, 2])],
    ])
    .unwrap();
    ensure!(!gram.det().unwrap().is_zero(), "Gram determinant vanishes");
    ensure!(is_nonsingular(&j), "library reports the conic singular");
    Ok("a0a1 + a1a2 + a0a2, degree 2, nonsingular".into())
}

fn random_data(r: &mut ChaCha8Rng) -> Vec<(u32, HulsbergenDatum)> {
    let mut out = Vec::new();
    for n in 2u32..=6 {
        for _ in 0..10 {
            let k = n as usize + 1;
            let z = random_configuration(r, k, 4);
            out.push((n, HulsbergenDatum::new(z, random_coefficients(r, k)).unwrap()));
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let all = random_data(&mut r);
    for (n, d) in &all {
        let j = jump_curve(d).map_err(|e| e.to_string())?;
        ensure!(j.degree() == *n, "degree {} for c2 = {n}", j.degree());
        ensure!(d.chern().c2() == *n as i64, "c2 bookkeeping");
        // nonzero: some random dual point gives a nonzero direct value
        let nonzero = (0..20).any(|_| {
            let xi = nonzero_triple(&mut r, 9);
            let v = jump_value(d.config().points(), d.coefficients(), &xi);
            j.form().eval(&xi) == v && !v.is_zero()
        });
        ensure!(nonzero, "jump curve vanishes or disagrees with direct evaluation");
    }
    Ok(format!("{} configurations, deg J = c2", all.len()))
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let all = random_data(&mut r);
    let mut lines = 0;
    for (_, d) in &all {
        let j = jump_curve(d).map_err(|e| e.to_string())?;
        let pts = d.config().points();
        let secants = secant_dual_points(d.config());
        ensure!(secants.len() == pts.len() * (pts.len() - 1) / 2, "secant count");
        for i in 0..pts.len() {
            for k in i + 1..pts.len() {
                let xi = cross3(&pts[i], &pts[k]);
                ensure!(jump_value(pts, d.coefficients(), &xi).is_zero(), "direct value nonzero on a secant");
                ensure!(j.form().eval(&xi).is_zero(), "J does not vanish on the secant {i}{k}");
                lines += 1;
            }
        }
    }
    Ok(format!("{lines} secant lines"))
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let all = random_data(&mut r);
    let mut checks = 0;
    for (_, d) in &all {
        let j = jump_curve(d).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let g = random_det_one(&mut r, 3);
            ensure!(g.det().unwrap() == int(1), "sampled matrix has det != 1");
            let moved = HulsbergenDatum::new(d.config().transform(&g).unwrap(), d.coefficients().to_vec()).unwrap();
            let jg = jump_curve(&moved).map_err(|e| e.to_string())?;
            ensure!(
                gitplane::hulsbergen::equivariance_check(d, &g).unwrap(),
                "library equivariance check failed"
            );
            // ⟨g·x, ξ⟩ = ⟨x, ξ·g⟩, so J_{gZ}(ξ) = J_Z(ξ·g) exactly
            for _ in 0..5 {
                let xi = nonzero_triple(&mut r, 6);
                let xig: Vec<Rational> = (0..3).map(|c| (0..3).map(|k| &xi[k] * &g[(k, c)]).sum()).collect();
                ensure!(
                    jg.form().eval(&xi) == j.form().eval(&triple_of(&xig)),
                    "J_gZ(xi) != J_Z(xi g)"
                );
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} det-1 transforms"))
}

fn criterion_7() -> Outcome {
    let conic: MonadPair = serde_json::from_str(&std::fs::read_to_string(data("conic_pair.json")).unwrap()).unwrap();
    let div = jump_divisor(&conic);
    let expect = form_from_i64(2, &[([1, 0, 1], 1), ([0, 2, 0], -1)]).unwrap();
    ensure!(div.degree() == 2 && div.is_proportional_to(&expect), "divisor {:?}", div);

    let mut r = rng(7);
    let mut instances = vec![(conic, None)];
    for n in 2..=4 {
        instances.push((random_monad(&mut r, n), None));
        let (m, l) = planted_monad(&mut r, n, 1);
        instances.push((m, Some(l)));
    }
    let (mut jumps, mut total) = (0, 0);
    for (m, planted) in &instances {
        let d = jump_divisor(m);
        ensure!(d.degree() as usize == m.n(), "divisor degree");
        let mut lines: Vec<LineFunctional> = (0..100).map(|_| random_line(&mut r, 4)).collect();
        // points of the conic l1 l3 = l2² are (s², st, t²)
        for (s, t) in [(1, 0), (0, 1), (1, 1), (2, -3)] {
            lines.push(LineFunctional::from_i64(s * s, s * t, t * t).unwrap());
        }
        lines.extend(planted.clone());
        for l in &lines {
            let det = det_of_pencil(m, l.coords());
            let jump = h0_splitting_count(m, l) > 0;
            ensure!(d.eval(l.coords()) == det, "divisor value differs from det");
            ensure!(jump == det.is_zero(), "jump {jump} but det = {det} at {:?}", l.coords());
            jumps += usize::from(jump);
            total += 1;
        }
    }
    Ok(format!("divisor l1l3 - l2^2; {total} lines on {} pairs, {jumps} jump lines", instances.len()))
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let mut seen = Vec::new();
    for n in [3usize, 6, 9] {
        for k in 1..=n {
            let (m, l) = planted_monad(&mut r, n, k);
            let plane = l.kernel();
            let basis: Vec<[Rational; 3]> = plane.basis_vectors().iter().map(|v| triple_of(v)).collect();
            let kp = kernel_meet_by_rank(&m, &basis);
            ensure!(h0_splitting_count(&m, &l) == k, "n={n} k={k}: h0 != k");
            ensure!(kp == k, "n={n} k={k}: rank count gives {kp}");
            ensure!(k_prime(&m, &plane).unwrap().dim() == k, "n={n} k={k}: k_prime");
            let large = large_m_verdict(&m, &plane).map_err(|e| e.to_string())?;
            let slv = sl_v_instability(&m, &plane).map_err(|e| e.to_string())?;
            let predicted = 3 * k > 2 * n;
            ensure!(large.verdict.is_unstable() == predicted, "n={n} k={k}: large-m verdict {:?}", large.verdict);
            ensure!(slv.verdict.is_unstable() == predicted, "n={n} k={k}: SL(V) verdict {:?}", slv.verdict);
            if predicted {
                seen.push(format!("{n}:{k}"));
            }
        }
    }
    Ok(format!("unstable at n:k = {}; inconclusive below 2n/3", seen.join(" ")))
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    for i in 0..20 {
        let n = 2 + i % 4;
        let v = nonzero_triple(&mut r, 4);
        let m = pure_tensor_monad(&mut r, n, &v);
        ensure!(kernel_meet_by_rank(&m, std::slice::from_ref(&v)) > 0, "pure tensor missing from K");
        ensure!(!alpha_injectivity(&m, &v).unwrap(), "alpha injective on a pure tensor pair");
    }
    for i in 0..20 {
        let n = 2 + i % 4;
        let m = random_monad(&mut r, n);
        let v = nonzero_triple(&mut r, 4);
        let expect = kernel_meet_by_rank(&m, std::slice::from_ref(&v)) == 0;
        ensure!(expect, "random pair {i} meets H ⊗ <v>; not a generic instance");
        ensure!(alpha_injectivity(&m, &v).unwrap() == expect, "alpha on random pair {i}");
    }
    let mut planted = Vec::new();
    for i in 0..20 {
        let n = 3 + i % 3;
        let rank = 1 + i % (n - 1);
        let v = nonzero_triple(&mut r, 4);
        let m = random_monad_with_quotient(&mut r, n, rank);
        ensure!(lstar_intersection(&m, &v).unwrap() == 0, "random L* meets H* ⊗ <v>");

        let p = 1 + i % (n - rank);
        let duals: Vec<Vec<Rational>> = loop {
            let d: Vec<Vec<Rational>> = (0..p).map(|_| random_vector(&mut r, n, 3)).collect();
            if rank_of(&d) == p {
                break d;
            }
        };
        let m = planted_lstar_monad(&mut r, n, rank, &v, &duals);
        let got = lstar_intersection(&m, &v).unwrap();
        ensure!(got == p, "planted {p} vectors, found {got}");
        planted.push(p);
    }
    Ok(format!(
        "alpha fails on 20 pure tensors, holds on 20 random; L* meets in planted dims {:?}",
        planted
    ))
}

fn criterion_10() -> Outcome {
    for n in 2..=10 {
        let chi = euler_characteristic(&ChernData::new(2, 0, n).unwrap());
        ensure!(chi == 2 - n, "chi(2,0,{n}) = {chi}");
    }
    for rank in 1u32..=6 {
        for c2 in -3i64..=15 {
            let t = semistable_h1_table(rank, c2);
            if c2 < rank as i64 {
                ensure!(t.is_err(), "table accepted c2 = {c2} < r = {rank}");
            } else {
                let t = t.unwrap();
                let got = (t.h1_f_minus_2, t.h1_f_minus_1, t.h1_f);
                ensure!(got == (c2, c2, c2 - rank as i64), "table ({rank},{c2}) = {got:?}");
            }
        }
    }
    let mut r = rng(10);
    let draw = |r: &mut ChaCha8Rng| {
        ChernData::new(r.gen_range(1..=6), r.gen_range(-8..=8), r.gen_range(-20..=40)).unwrap()
    };
    let big = int(100_000);
    for t in 0..200 {
        let (a, b, c) = (draw(&mut r), draw(&mut r), draw(&mut r));
        let (pa, pb, pc) = (
            reduced_hilbert_polynomial(&a),
            reduced_hilbert_polynomial(&b),
            reduced_hilbert_polynomial(&c),
        );
        let ab = gieseker_compare(&pa, &pb);
        ensure!(ab == gieseker_compare(&pb, &pa).reverse(), "triple {t}: not antisymmetric");
        ensure!((ab == Ordering::Equal) == (pa == pb), "triple {t}: Equal without equal polynomials");
        if ab != Ordering::Equal {
            ensure!(pa.eval(&big).cmp(&pb.eval(&big)) == ab, "triple {t}: disagrees with large twists");
        }
        if ab != Ordering::Greater && gieseker_compare(&pb, &pc) != Ordering::Greater {
            ensure!(gieseker_compare(&pa, &pc) != Ordering::Greater, "triple {t}: not transitive");
        }
    }
    Ok("chi(2,0,n) = 2-n; table (c2, c2, c2-r) with c2 < r rejected; 200 triples ordered".into())
}

/// Command lines of the regression corpus, with data-file names resolved.
fn corpus() -> Vec<Vec<String>> {
    let lines: &[&[&str]] = &[
        &["curve", "--in", "@quartic_cusp.json", "--point", "0,0,1"],
        &["curve", "--in", "@quartic_cusp.json"],
        &["curve", "--in", "@fermat_cubic.json"],
        &["curve", "--in", "@nodal_cubic.json"],
        &["curve", "--in", "@four_concurrent_lines.json"],
        &["chern", "--r", "2", "--c1", "0", "--c2", "5"],
        &["chern", "--r", "2", "--c1", "-1", "--c2", "1"],
        &["chern", "--r", "3", "--c1", "0", "--c2", "1"],
        &["chern", "--in", "@chern_rank3.json"],
        &["hulsbergen", "--in", "@triangle.json"],
        &["hulsbergen", "--in", "@collinear_six.json", "--check-unstable", "--splitting", "--line", "0,0,1"],
        &["hulsbergen", "--in", "@general_five.json", "--equivariance", "--matrix", "@det_one.json", "--jump-curve"],
        &["hulsbergen", "--in", "@general_five.json", "--equivariance", "--seed", "7"],
        &["monad", "--in", "@conic_pair.json"],
        &["monad", "--in", "@conic_pair.json", "--phi", "--line", "1,2,1", "--jump-divisor"],
        &["monad", "--in", "@planted_three.json", "--instability", "--vprime", "@vprime_plane.json"],
        &["monad", "--in", "@planted_three.json", "--seed", "3"],
        &["monad", "--in", "@pair_with_quotient.json"],
    ];
    lines
        .iter()
        .map(|l| {
            l.iter()
                .map(|a| match a.strip_prefix('@') {
                    Some(name) => data(name).display().to_string(),
                    None => a.to_string(),
                })
                .collect()
        })
        .collect()
}

fn run_args(args: &[String]) -> Result<Report, String> {
    let cli = Cli::try_parse_from(std::iter::once("gitplane".to_string()).chain(args.iter().cloned()))
        .map_err(|e| e.to_string())?;
    let Action::Analyze(req) = cli.into_action() else {
        return Err("not an analysis".into());
    };
    run(&req).map_err(|e| e.to_string())
}

fn tampered(report: &Report, pointer: &str, value: Value) -> Result<bool, String> {
    let mut v: Value = serde_json::from_str(&report.to_json()).map_err(|e| e.to_string())?;
    *v.pointer_mut(pointer).ok_or_else(|| format!("no field {pointer}"))? = value;
    Ok(replay_json(&v.to_string()).passed)
}

fn frac_matrix(rows: [[i64; 3]; 3]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(|x| json!({"num": x, "den": 1})).collect()))
            .collect(),
    )
}

fn criterion_11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_gitplane");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for (i, args) in corpus().iter().enumerate() {
        let report = run_args(args)?;
        ensure!(replay(&report), "corpus entry {i} does not replay: {args:?}");
        let text = report.to_json();
        ensure!(replay_json(&text).passed, "corpus entry {i} does not replay from JSON");
        ensure!(run_args(args)?.to_json() == text, "corpus entry {i} is not deterministic in-process");

        let mut bytes = Vec::new();
        for k in 0..2 {
            let out = dir.path().join(format!("r{i}_{k}.json"));
            let status = Command::new(bin)
                .args(args)
                .arg("--out")
                .arg(&out)
                .status()
                .map_err(|e| e.to_string())?;
            ensure!(status.success(), "binary failed on entry {i}: {status}");
            bytes.push(std::fs::read(&out).map_err(|e| e.to_string())?);
        }
        ensure!(bytes[0] == bytes[1], "entry {i}: two binary runs differ");
        ensure!(bytes[0] == text.as_bytes(), "entry {i}: binary and library output differ");
        reports.push(report);
    }

    let cusp = &reports[0];
    ensure!(
        !tampered(cusp, "/findings/0/certificate/mu_value", json!(1))?,
        "flipped mu sign accepted"
    );
    ensure!(
        !tampered(cusp, "/findings/0/certificate/one_ps/frame", frac_matrix([[1, 0, 0], [0, 1, 0], [1, 0, 1]]))?,
        "edited curve frame accepted"
    );
    ensure!(
        !tampered(cusp, "/input/curve/terms/0/num", json!(5))?,
        "edited input accepted"
    );
    let chern = &reports[5];
    ensure!(
        !tampered(chern, "/findings/0/euler_characteristic", json!(-2))?,
        "edited Euler characteristic accepted"
    );
    let planted = &reports[15];
    ensure!(
        !tampered(planted, "/findings/0/large_m/one_ps/v_frame", frac_matrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]]))?,
        "edited large-m frame accepted"
    );
    ensure!(
        !tampered(planted, "/findings/0/large_m/mu_k", json!(3))?,
        "flipped mu_K accepted"
    );
    let collinear = &reports[10];
    ensure!(
        !tampered(collinear, "/findings/0/splitting/d", json!(1))?,
        "edited splitting accepted"
    );
    Ok(format!("{} corpus runs replay and are byte-identical; 7 tampered reports rejected", reports.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("planted multiplicity certifies instability", criterion_1),
        ("Fermat cubic is stable for every diagonal weight", criterion_2),
        ("triangle jump conic", criterion_3),
        ("jump curve degree equals c2", criterion_4),
        ("jump curve vanishes on secants", criterion_5),
        ("jump curve equivariance", criterion_6),
        ("jump divisor and jump lines", criterion_7),
        ("planted K' above 2n/3 is unstable", criterion_8),
        ("injectivity lemmas", criterion_9),
        ("Riemann-Roch, h1 table, Gieseker order", criterion_10),
        ("replay soundness and determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        process::exit(1);
    }
}
