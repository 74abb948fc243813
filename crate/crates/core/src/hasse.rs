//! Hasse polynomial, Frobenius traces of twisted Legendre curves and the
//! Serre-bound predicates over `F_p`, `F_{p^2}` and `F_{p^3}`.
//!
//! For `E: y^2 = theta x (x - 1)(x - lambda)` the trace of Frobenius over `F_p`
//! satisfies `a_1 = (-theta)^m H_p(lambda) (mod p)` with
//! `H_p(t) = sum_{i=0}^{m} C(m, i)^2 t^i` and `m = (p - 1) / 2`. Each predicate
//! below turns that congruence into an exact yes/no answer without counting
//! points.

use crate::curves::{self, PointCount, COUNT_CAP};
use crate::error::{Error, Result};
use crate::field::{Fp, PrimeModulus};

/// Smallest prime for which the `F_p` Serre test is an equivalence.
pub const SERRE_FP_MIN_P: u64 = 17;
/// Smallest prime for which the `F_{p^3}` Serre test is an equivalence.
pub const SERRE_FP3_MIN_P: u64 = 11;

/// `floor(sqrt(n))` by integer Newton iteration.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = 1u128 << ((128 - n.leading_zeros()).div_ceil(2));
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `floor(2 sqrt(q)) = isqrt(4q)`.
pub fn floor_two_sqrt(q: u64) -> u64 {
    isqrt(4 * q as u128) as u64
}

/// `q + 1 + g floor(2 sqrt(q))`.
pub fn serre_bound(q: u64, g: u64) -> u64 {
    q + 1 + g * floor_two_sqrt(q)
}

/// `E: y^2 = theta x (x - 1)(x - lambda)` over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LegendreCurve {
    theta: Fp,
    lambda: Fp,
}

impl LegendreCurve {
    pub fn new(theta: Fp, lambda: Fp) -> Result<Self> {
        if theta.modulus() != lambda.modulus() {
            return Err(Error::InvalidCurve(
                "theta and lambda live in different fields".into(),
            ));
        }
        if theta.is_zero() {
            return Err(Error::InvalidCurve("theta = 0".into()));
        }
        if lambda.is_zero() || lambda.value() == 1 {
            return Err(Error::InvalidCurve(format!(
                "lambda = {lambda} is degenerate"
            )));
        }
        Ok(LegendreCurve { theta, lambda })
    }

    pub fn from_ints(p: u64, theta: i64, lambda: i64) -> Result<Self> {
        let m = PrimeModulus::new(p)?;
        Self::new(m.elem_signed(theta), m.elem_signed(lambda))
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.theta.modulus()
    }

    pub fn theta(&self) -> Fp {
        self.theta
    }

    pub fn lambda(&self) -> Fp {
        self.lambda
    }
}

/// `C(m, i)^2 mod p` for `i = 0..=m`, binomials built by the multiplicative
/// recurrence `C(m, i) = C(m, i - 1) (m - i + 1) / i`.
fn hasse_coefficients(modulus: PrimeModulus) -> Vec<u64> {
    let m = modulus.m();
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    let mut binom = modulus.one();
    coeffs.push(1);
    for i in 1..=m {
        let i_inv = modulus.elem(i).inv().expect("i <= m < p");
        binom = binom * modulus.elem(m - i + 1) * i_inv;
        coeffs.push((binom * binom).value());
    }
    coeffs
}

fn horner(coeffs: &[u64], t: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| (acc * t + c) % p)
}

/// `H_p(lambda) mod p`.
pub fn hasse_poly_eval(modulus: PrimeModulus, lambda: Fp) -> Fp {
    debug_assert_eq!(lambda.modulus(), modulus);
    let coeffs = hasse_coefficients(modulus);
    modulus.elem(horner(&coeffs, lambda.value(), modulus.p()))
}

/// `H_p` evaluated at every element of `F_p`.
#[derive(Clone, Debug)]
pub struct HasseTable {
    modulus: PrimeModulus,
    values: Vec<u64>,
}

impl HasseTable {
    pub fn new(modulus: PrimeModulus) -> Self {
        let coeffs = hasse_coefficients(modulus);
        let p = modulus.p();
        let values = (0..p).map(|t| horner(&coeffs, t, p)).collect();
        HasseTable { modulus, values }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn get(&self, lambda: Fp) -> Fp {
        self.modulus.elem(self.values[lambda.value() as usize])
    }

    /// Roots of `H_p` in `F_p`, ascending.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.modulus.p())
            .filter(|&t| self.values[t as usize] == 0)
            .collect()
    }
}

/// `(-theta)^m H_p(lambda) mod p`, the Frobenius trace modulo `p`.
pub fn trace_mod_p(curve: &LegendreCurve) -> Fp {
    let modulus = curve.modulus();
    trace_from_hasse(curve.theta, hasse_poly_eval(modulus, curve.lambda))
}

pub(crate) fn trace_from_hasse(theta: Fp, hasse: Fp) -> Fp {
    (-theta).pow(theta.modulus().m()) * hasse
}

/// Serre test over `F_p` on a trace residue.
pub fn serre_fp_condition(modulus: PrimeModulus, trace: Fp) -> bool {
    trace == -modulus.elem(floor_two_sqrt(modulus.p()))
}

/// Serre test over `F_{p^3}`: with `h` the representative of the trace in
/// `[0, p)`, `h^3 - 3ph = -floor(2p sqrt(p))` as integers.
pub fn serre_fp3_condition(modulus: PrimeModulus, trace: Fp) -> bool {
    let p = modulus.p() as i128;
    let h = trace.value() as i128;
    let bound = isqrt(4 * (p * p * p) as u128) as i128;
    h * h * h - 3 * p * h == -bound
}

fn require(what: &'static str, modulus: PrimeModulus, min: u64) -> Result<()> {
    if modulus.p() < min {
        Err(Error::HypothesisViolated {
            what,
            min,
            got: modulus.p(),
        })
    } else {
        Ok(())
    }
}

/// Does `E(F_p)` reach `p + 1 + floor(2 sqrt p)`? Needs `p >= 17`.
pub fn attains_serre_fp(curve: &LegendreCurve) -> Result<bool> {
    let modulus = curve.modulus();
    require("Serre test over F_p (prime p)", modulus, SERRE_FP_MIN_P)?;
    Ok(serre_fp_condition(modulus, trace_mod_p(curve)))
}

/// Is `E` maximal over `F_{p^2}`? Equivalent to `H_p(lambda) = 0`, so theta
/// plays no role.
pub fn maximal_fp2(curve: &LegendreCurve) -> bool {
    hasse_poly_eval(curve.modulus(), curve.lambda).is_zero()
}

/// Does `E(F_{p^3})` reach the Serre bound? Needs `p >= 11`.
pub fn attains_serre_fp3(curve: &LegendreCurve) -> Result<bool> {
    let modulus = curve.modulus();
    require("Serre test over F_p^3 (prime p)", modulus, SERRE_FP3_MIN_P)?;
    Ok(serre_fp3_condition(modulus, trace_mod_p(curve)))
}

/// Frobenius traces `a_1, a_2, a_3` of a genus-1 curve from its `F_p` count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceSequence {
    p: u64,
    n1: u64,
    a: [i64; 3],
}

impl TraceSequence {
    pub fn from_count(p: u64, n1: u64) -> Result<Self> {
        let a1 = p as i64 + 1 - n1 as i64;
        if a1.unsigned_abs() > floor_two_sqrt(p) {
            return Err(Error::HasseViolation { n1, p });
        }
        let p_i = p as i64;
        let a2 = a1 * a1 - 2 * p_i;
        let a3 = a1 * a2 - p_i * a1;
        Ok(TraceSequence {
            p,
            n1,
            a: [a1, a2, a3],
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    /// Trace `a_j`, `j` in `1..=3`.
    pub fn trace(&self, j: u32) -> Result<i64> {
        match j {
            1..=3 => Ok(self.a[j as usize - 1]),
            _ => Err(Error::UnsupportedDegree(j)),
        }
    }

    /// `n_j = p^j + 1 - a_j`.
    pub fn count(&self, j: u32) -> Result<u64> {
        let a = self.trace(j)?;
        let n = self.p.pow(j) as i64 + 1 - a;
        Ok(n as u64)
    }
}

/// `#E(F_{p^j})` from `#E(F_p)` through the zeta recursion.
pub fn zeta_lift(n1: u64, p: u64, j: u32) -> Result<u64> {
    TraceSequence::from_count(p, n1)?.count(j)
}

/// Point count of a Legendre curve over `F_{p^j}`: brute force while
/// `p^j` is within [`COUNT_CAP`], zeta lift beyond.
pub fn legendre_count(curve: &LegendreCurve, j: u32) -> Result<PointCount> {
    let modulus = curve.modulus();
    if !(1..=3).contains(&j) {
        return Err(Error::UnsupportedDegree(j));
    }
    let q = modulus.power(j);
    if q <= COUNT_CAP {
        curves::count_points(&curve.into(), j)
    } else {
        let n1 = curves::count_points(&curve.into(), 1)?;
        Ok(PointCount::new(
            q,
            zeta_lift(n1.count(), modulus.p(), j)?,
            curves::CountMethod::ZetaLift,
        ))
    }
}

/// `#E(F_{p^j}) = 0 (mod 4)`; holds for every twisted Legendre curve.
pub fn mod4_check(curve: &LegendreCurve, j: u32) -> Result<bool> {
    Ok(legendre_count(curve, j)?.count() % 4 == 0)
}
