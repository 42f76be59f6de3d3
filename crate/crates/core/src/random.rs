//! Seeded generators for test and benchmark inputs. Every generator takes
//! the caller's RNG, so a fixed seed reproduces the whole input set.

use num_traits::Zero;
use rand::Rng;

use crate::algebra::{proportional3, HomogeneousPolynomial, Rational, RationalMatrix};
use crate::hulsbergen::PointConfiguration;
use crate::monads::{LineFunctional, MonadPair};

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// An integer in `[-bound, bound]`.
pub fn small_int<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

/// A rational `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(small_int(rng, bound).into(), rng.gen_range(1..=bound).into())
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let r = small_rational(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn monomials(degree: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            out.push([a, b, degree - a - b]);
        }
    }
    out
}

/// A form with each monomial present with probability `density`; never zero.
pub fn random_form<R: Rng + ?Sized>(rng: &mut R, degree: u32, density: f64, bound: i64) -> HomogeneousPolynomial {
    restricted_form(rng, degree, density, bound, |_| true)
}

/// Random coefficients on the monomials `X^a Y^b Z^c` with `a + b ≥ min_ab`,
/// at least one of them nonzero: a curve with multiplicity at least
/// `min_ab` at `(0:0:1)`.
pub fn planted_multiplicity_form<R: Rng + ?Sized>(rng: &mut R, degree: u32, min_ab: u32) -> HomogeneousPolynomial {
    restricted_form(rng, degree, 0.7, 5, |e| e[0] + e[1] >= min_ab)
}

fn restricted_form<R: Rng + ?Sized>(
    rng: &mut R,
    degree: u32,
    density: f64,
    bound: i64,
    keep: impl Fn(&[u32; 3]) -> bool,
) -> HomogeneousPolynomial {
    let support: Vec<[u32; 3]> = monomials(degree).into_iter().filter(|e| keep(e)).collect();
    assert!(!support.is_empty(), "no monomial satisfies the restriction");
    loop {
        let mut terms = Vec::new();
        for e in &support {
            if rng.gen_bool(density) {
                terms.push((*e, nonzero_rational(rng, bound)));
            }
        }
        let f = HomogeneousPolynomial::from_terms(degree, terms).expect("exponents of the right degree");
        if !f.is_zero() {
            return f;
        }
    }
}

/// A product of elementary integer matrices: integer entries, determinant 1.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, size: usize, steps: usize) -> RationalMatrix {
    let mut m = RationalMatrix::identity(size);
    for _ in 0..steps {
        let i = rng.gen_range(0..size);
        let j = (i + rng.gen_range(1..size)) % size;
        let c = int(small_int(rng, 3));
        for k in 0..size {
            let v = &m[(i, k)] + &c * &m[(j, k)];
            m[(i, k)] = v;
        }
    }
    m
}

/// A determinant-1 matrix with rational entries.
pub fn random_det_one<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> RationalMatrix {
    loop {
        let mut m = RationalMatrix::from_fn(3, 3, |_, _| small_rational(rng, bound));
        let d = m.det().expect("square");
        if d.is_zero() {
            continue;
        }
        let inv = d.recip();
        for j in 0..3 {
            let v = &m[(0, j)] * &inv;
            m[(0, j)] = v;
        }
        return m;
    }
}

/// `k` distinct points with integer coordinates in `[-bound, bound]`.
pub fn random_configuration<R: Rng + ?Sized>(rng: &mut R, k: usize, bound: i64) -> PointConfiguration {
    let mut pts: Vec<[Rational; 3]> = Vec::with_capacity(k);
    while pts.len() < k {
        let p = [0; 3].map(|_| int(small_int(rng, bound)));
        if p.iter().all(Zero::is_zero) || pts.iter().any(|q| proportional3(&p, q)) {
            continue;
        }
        pts.push(p);
    }
    PointConfiguration::new(pts).expect("distinct nonzero points")
}

pub fn random_coefficients<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<Rational> {
    (0..k).map(|_| nonzero_rational(rng, 5)).collect()
}

pub fn random_line<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> LineFunctional {
    loop {
        let c = [0; 3].map(|_| small_rational(rng, bound));
        if let Ok(l) = LineFunctional::new(c) {
            return l;
        }
    }
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| int(small_int(rng, bound))).collect()
}

fn nonzero_triple<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> [Rational; 3] {
    loop {
        let v = [0; 3].map(|_| int(small_int(rng, bound)));
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// A pair with `r = n` and random integer `A` matrices.
pub fn random_monad<R: Rng + ?Sized>(rng: &mut R, n: usize) -> MonadPair {
    loop {
        let a = [0; 3].map(|_| RationalMatrix::from_fn(n, n, |_, _| int(small_int(rng, 3))));
        if let Ok(m) = MonadPair::without_quotient(a) {
            return m;
        }
    }
}

/// `h ⊗ v` in the coordinates of `H ⊗ V`.
pub fn pure_tensor(h: &[Rational], v: &[Rational; 3]) -> Vec<Rational> {
    let n = h.len();
    let mut x = vec![Rational::zero(); 3 * n];
    for (w, vw) in v.iter().enumerate() {
        for (i, hi) in h.iter().enumerate() {
            x[w * n + i] = vw * hi;
        }
    }
    x
}

/// A pair with `r = n` whose `K` meets `H ⊗ ker l` in exactly `k`
/// dimensions, for a random line `l`.
pub fn planted_monad<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> (MonadPair, LineFunctional) {
    assert!(k <= n, "cannot plant more than n vectors");
    let l = LineFunctional::new(nonzero_triple(rng, 3)).expect("nonzero");
    let plane = l.kernel().basis_vectors();
    loop {
        let mut basis = Vec::with_capacity(n);
        for _ in 0..k {
            // Σ hᵢ ⊗ vᵢ with vᵢ in the plane
            let h1 = random_vector(rng, n, 3);
            let h2 = random_vector(rng, n, 3);
            let v1 = [plane[0][0].clone(), plane[0][1].clone(), plane[0][2].clone()];
            let v2 = [plane[1][0].clone(), plane[1][1].clone(), plane[1][2].clone()];
            let x: Vec<Rational> = pure_tensor(&h1, &v1)
                .iter()
                .zip(pure_tensor(&h2, &v2))
                .map(|(a, b)| a + b)
                .collect();
            basis.push(x);
        }
        for _ in k..n {
            basis.push(random_vector(rng, 3 * n, 3));
        }
        let Ok(m) = MonadPair::from_k_basis(n, n, &basis, None) else {
            continue;
        };
        if crate::monads::h0_splitting_count(&m, &l) == k {
            return (m, l);
        }
    }
}

/// A pair with `r = n` whose `K` contains `h ⊗ v` for random `h`.
pub fn pure_tensor_monad<R: Rng + ?Sized>(rng: &mut R, n: usize, v: &[Rational; 3]) -> MonadPair {
    loop {
        let h = random_vector(rng, n, 3);
        if h.iter().all(Zero::is_zero) {
            continue;
        }
        let mut basis = vec![pure_tensor(&h, v)];
        for _ in 1..n {
            basis.push(random_vector(rng, 3 * n, 3));
        }
        if let Ok(m) = MonadPair::from_k_basis(n, n, &basis, None) {
            return m;
        }
    }
}

/// A pair with `r < n`, random `A` and random quotient data of full rank.
/// The quotient rows are random, so `b ∘ a = 0` is not arranged.
pub fn random_monad_with_quotient<R: Rng + ?Sized>(rng: &mut R, n: usize, r: usize) -> MonadPair {
    with_quotient_rows(rng, n, r, Vec::new())
}

/// Like [`random_monad_with_quotient`] but with `L*` containing
/// `h* ⊗ v` for each given `h*`.
pub fn planted_lstar_monad<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    r: usize,
    v: &[Rational; 3],
    h_duals: &[Vec<Rational>],
) -> MonadPair {
    let rows = h_duals.iter().map(|h| pure_tensor(h, v)).collect();
    with_quotient_rows(rng, n, r, rows)
}

fn with_quotient_rows<R: Rng + ?Sized>(rng: &mut R, n: usize, r: usize, fixed: Vec<Vec<Rational>>) -> MonadPair {
    assert!(r < n && fixed.len() <= n - r, "need room for the fixed rows");
    loop {
        let a = [0; 3].map(|_| RationalMatrix::from_fn(n, n, |_, _| int(small_int(rng, 3))));
        let mut rows = fixed.clone();
        while rows.len() < n - r {
            rows.push(random_vector(rng, 3 * n, 3));
        }
        let q = RationalMatrix::from_rows(rows).expect("rows of length 3n");
        let b = [0, 1, 2].map(|v| RationalMatrix::from_fn(n - r, n, |i, j| q[(i, v * n + j)].clone()));
        if let Ok(m) = MonadPair::new(n, r, a, Some(b)) {
            return m;
        }
    }
}
