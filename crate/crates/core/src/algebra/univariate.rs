use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Dense univariate polynomial over the rationals, coefficients stored from
/// the constant term upward with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
            None => self.clone(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let qlen = self.coeffs.len().saturating_sub(dd);
        let mut quot = vec![Rational::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`. Each remainder is replaced by its
    /// primitive integer part, which keeps coefficient growth in check.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        let mut a = self.primitive_integer();
        let mut b = if other.is_zero() { other.clone() } else { other.primitive_integer() };
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_integer() };
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// All rational roots, sorted and without repetition.
    ///
    /// Real roots of the primitive square-free part are isolated with a
    /// Sturm chain and narrowed by bisection to intervals shorter than
    /// `1/(2a²)`, `a` the leading coefficient. A rational root `u/w` has
    /// `w | a`, so by Legendre's theorem it is a continued-fraction
    /// convergent of any point of such an interval; the convergents with
    /// denominator at most `|a|` are tested exactly.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut p = self.squarefree_part();
        let mut roots = Vec::new();
        if p.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            p = Self::new(p.coeffs[1..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let q = p.primitive_integer();
        let ints: Vec<BigInt> = q.coeffs.iter().map(|c| c.to_integer()).collect();
        let lead = ints[ints.len() - 1].abs();
        // Cauchy: every root has |x| < 1 + max |aᵢ| / |a_d|
        let max = ints[..ints.len() - 1]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero);
        let bound = Rational::new(max, lead.clone()) + Rational::one();
        let chain = sturm_chain(&q);
        let tol = Rational::new(BigInt::one(), BigInt::from(2) * &lead * &lead);
        for (a, b) in isolate_real_roots(&q, &chain, -bound.clone(), bound) {
            roots.extend(narrow_to_rational(&q, a, b, &tol, &lead));
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Positive rational multiple with coprime integer coefficients.
    fn primitive_integer(&self) -> Self {
        Self::new(integer_coeffs(&self.coeffs).into_iter().map(Rational::from_integer).collect())
    }
}

/// Primitive integer multiple of the coefficient list.
fn integer_coeffs(c: &[Rational]) -> Vec<BigInt> {
    let l = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    // positive rescaling keeps every sign, and the coefficients small
    let mut chain = vec![p.clone(), p.derivative().primitive_integer()];
    loop {
        let n = chain.len();
        if chain[n - 1].degree().unwrap_or(0) == 0 {
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        let neg = UniPoly::new(r.coeffs.iter().map(|c| -c).collect());
        chain.push(neg.primitive_integer());
    }
    chain
}

/// Sign of `p(u/v)` for integer `p`, from `Σ aᵢ uⁱ v^{d−i}` with `v > 0`;
/// avoids a gcd per Horner step.
fn sign_at(p: &UniPoly, x: &Rational) -> Ordering {
    let (u, v) = (x.numer(), x.denom());
    let mut it = p.coeffs.iter().rev();
    let Some(lead) = it.next() else {
        return Ordering::Equal;
    };
    let mut acc = lead.to_integer();
    let mut pw = BigInt::one();
    for c in it {
        pw *= v;
        acc = acc * u + c.numer() * &pw;
    }
    acc.sign().cmp(&num_bigint::Sign::NoSign)
}

fn sign_variations(chain: &[UniPoly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = sign_at(p, x);
        if v == Ordering::Equal {
            continue;
        }
        let pos = v == Ordering::Greater;
        if let Some(l) = last {
            if l != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

/// Disjoint intervals `(a, b)` inside `(lo, hi)`, each holding exactly one
/// root of the square-free `p`, with endpoints that are not roots.
fn isolate_real_roots(p: &UniPoly, chain: &[UniPoly], lo: Rational, hi: Rational) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    let (vlo, vhi) = (sign_variations(chain, &lo), sign_variations(chain, &hi));
    let mut stack = vec![(lo, vlo, hi, vhi)];
    while let Some((a, va, b, vb)) = stack.pop() {
        match va.saturating_sub(vb) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = split_point(p, &a, &b);
                let vm = sign_variations(chain, &mid);
                stack.push((a, va, mid.clone(), vm));
                stack.push((mid, vm, b, vb));
            }
        }
    }
    out
}

/// `a + (b − a)·t` for the first `t` in `1/2, 3/4, 7/8, …` that is not a root.
fn split_point(p: &UniPoly, a: &Rational, b: &Rational) -> Rational {
    let two = Rational::from_integer(2.into());
    let mut t = Rational::new(BigInt::one(), BigInt::from(2));
    loop {
        let m = a + (b - a) * &t;
        if sign_at(p, &m) != Ordering::Equal {
            return m;
        }
        t = (&t + Rational::one()) / &two;
    }
}

/// The rational root in `(a, b)` if the single root there is rational.
fn narrow_to_rational(p: &UniPoly, mut a: Rational, mut b: Rational, tol: &Rational, lead: &BigInt) -> Option<Rational> {
    let two = Rational::from_integer(2.into());
    let left = sign_at(p, &a);
    while &b - &a >= *tol {
        let m = (&a + &b) / &two;
        let v = sign_at(p, &m);
        if v == Ordering::Equal {
            return Some(m);
        }
        if v == left {
            a = m;
        } else {
            b = m;
        }
    }
    let x = (&a + &b) / &two;
    convergents(&x, lead)
        .into_iter()
        .find(|c| *c > a && *c < b && sign_at(p, c) == Ordering::Equal)
}

/// Continued-fraction convergents of `x` with denominator at most `max_den`.
fn convergents(x: &Rational, max_den: &BigInt) -> Vec<Rational> {
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    let mut out = Vec::new();
    loop {
        let q = r.floor().to_integer();
        let h2 = &q * &h1 + &h0;
        let k2 = &q * &k1 + &k0;
        if &k2 > max_den {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        let frac = r - Rational::from_integer(q);
        if frac.is_zero() {
            break;
        }
        r = frac.recip();
    }
    out
}
