//! Prime fields `F_p` and their small extensions `F_{p^2}`, `F_{p^3}`.
//!
//! All residues are kept in canonical form `0 <= v < p`. The modulus is capped
//! at `2^20` so that every product of two residues, and every cube `p^3`, fits
//! comfortably in a `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// An odd prime `p` together with `m = (p - 1) / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: u64,
    m: u64,
}

impl PrimeModulus {
    /// Exclusive upper bound on supported primes.
    pub const CAP: u64 = 1 << 20;

    pub fn new(p: u64) -> Result<Self> {
        if p < 3 {
            return Err(Error::ModulusTooSmall(p));
        }
        if p >= Self::CAP {
            return Err(Error::ModulusTooLarge { p, cap: Self::CAP });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeModulus { p, m: (p - 1) / 2 })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u64 {
        self.m
    }

    /// `p^j` as an exact integer.
    pub fn power(&self, j: u32) -> u64 {
        self.p.pow(j)
    }

    pub fn elem(&self, value: u64) -> Fp {
        Fp {
            value: value % self.p,
            modulus: *self,
        }
    }

    /// Reduces a signed integer to its canonical residue.
    pub fn elem_signed(&self, value: i64) -> Fp {
        let v = value.rem_euclid(self.p as i64) as u64;
        Fp {
            value: v,
            modulus: *self,
        }
    }

    pub fn zero(&self) -> Fp {
        self.elem(0)
    }

    pub fn one(&self) -> Fp {
        self.elem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fp> + '_ {
        (0..self.p).map(move |v| self.elem(v))
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A canonical residue modulo an odd prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: PrimeModulus,
}

impl Fp {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, exp: u64) -> Fp {
        Fp {
            value: pow_mod(self.value, exp, self.modulus.p),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Fp> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.modulus.p - 2))
        }
    }

    pub fn legendre(&self) -> i8 {
        legendre_symbol(*self)
    }

    pub fn sqrt(&self) -> Result<Fp> {
        sqrt_mod_p(*self)
    }

    /// The integer in `(-p/2, p/2]` congruent to this residue.
    pub fn signed(&self) -> i64 {
        if self.value > self.modulus.m {
            self.value as i64 - self.modulus.p as i64
        } else {
            self.value as i64
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;

    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let mut v = self.value + rhs.value;
        if v >= self.modulus.p {
            v -= self.modulus.p;
        }
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;

    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus.p - rhs.value
        };
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;

    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: mul_mod(self.value, rhs.value, self.modulus.p),
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;

    fn neg(self) -> Fp {
        self.modulus.zero() - self
    }
}

/// Returns `+1` for nonzero squares, `-1` for non-squares and `0` for zero,
/// via Euler's criterion `a^m`.
pub fn legendre_symbol(a: Fp) -> i8 {
    if a.is_zero() {
        return 0;
    }
    if a.pow(a.modulus.m).value == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli-Shanks. Of the two roots `r` and `p - r` the smaller one is
/// returned, so the result always lies in `[1, (p - 1) / 2]`.
pub fn sqrt_mod_p(a: Fp) -> Result<Fp> {
    let modulus = a.modulus;
    let p = modulus.p;
    if legendre_symbol(a) != 1 {
        return Err(Error::NonResidue { value: a.value, p });
    }

    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let root = if s == 1 {
        pow_mod(a.value, (p + 1) / 4, p)
    } else {
        let mut z = 2;
        while pow_mod(z, modulus.m, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a.value, q, p);
        let mut r = pow_mod(a.value, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    Ok(modulus.elem(root.min(p - root)))
}

/// `F_{p^k}` for `k` in `{1, 2, 3}`, realised as `F_p[x] / (f)` with `f`
/// monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    modulus: PrimeModulus,
    degree: u32,
    /// Low coefficients `c_0..c_{k-1}` of `f = x^k + c_{k-1} x^{k-1} + ... + c_0`.
    poly: [u64; 3],
}

/// Element of an [`ExtField`] in the power basis; unused slots stay zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExtElem {
    coeffs: [u64; 3],
}

impl ExtElem {
    pub fn coeffs(&self) -> [u64; 3] {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0; 3]
    }
}

/// Finds the first monic irreducible polynomial of degree `k` over `F_p`,
/// scanning `x^k + c_{k-1} x^{k-1} + ... + c_0` in ascending order of
/// `(c_{k-1}, ..., c_0)`. For `k <= 3` irreducible means root-free.
pub fn build_extension(modulus: PrimeModulus, k: u32) -> Result<ExtField> {
    if !(2..=3).contains(&k) {
        return Err(Error::UnsupportedDegree(k));
    }
    let p = modulus.p;
    for n in 0..p.pow(k) {
        let mut poly = [0u64; 3];
        let mut rest = n;
        for c in poly.iter_mut().take(k as usize) {
            *c = rest % p;
            rest /= p;
        }
        let has_root = (0..p).any(|x| {
            let mut v = 1u64;
            for i in (0..k as usize).rev() {
                v = (mul_mod(v, x, p) + poly[i]) % p;
            }
            v == 0
        });
        if !has_root {
            return Ok(ExtField {
                modulus,
                degree: k,
                poly,
            });
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

impl ExtField {
    /// The prime field itself, viewed as a degree-1 extension.
    pub fn prime(modulus: PrimeModulus) -> ExtField {
        ExtField {
            modulus,
            degree: 1,
            poly: [0; 3],
        }
    }

    /// `F_{p^j}`: the prime field for `j = 1`, otherwise [`build_extension`].
    pub fn of_degree(modulus: PrimeModulus, j: u32) -> Result<ExtField> {
        match j {
            1 => Ok(Self::prime(modulus)),
            _ => build_extension(modulus, j),
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficients `[c_0, ..., c_{k-1}, 1]` of the defining polynomial.
    pub fn defining_poly(&self) -> Vec<u64> {
        let mut c: Vec<u64> = self.poly[..self.degree as usize].to_vec();
        c.push(1);
        c
    }

    pub fn order(&self) -> u64 {
        self.modulus.power(self.degree)
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem::default()
    }

    pub fn one(&self) -> ExtElem {
        self.embed(self.modulus.one())
    }

    pub fn embed(&self, a: Fp) -> ExtElem {
        debug_assert_eq!(a.modulus(), self.modulus);
        ExtElem {
            coeffs: [a.value(), 0, 0],
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> ExtElem {
        assert!(
            coeffs.len() <= self.degree as usize,
            "too many coefficients"
        );
        let mut c = [0u64; 3];
        for (slot, v) in c.iter_mut().zip(coeffs) {
            *slot = v % self.modulus.p;
        }
        ExtElem { coeffs: c }
    }

    /// Bijection `0..q -> F_q`, little-endian base-p digits.
    #[inline]
    pub fn from_index(&self, mut index: u64) -> ExtElem {
        let p = self.modulus.p;
        let mut c = [0u64; 3];
        for slot in c.iter_mut().take(self.degree as usize) {
            *slot = index % p;
            index /= p;
        }
        ExtElem { coeffs: c }
    }

    #[inline]
    pub fn index(&self, a: ExtElem) -> u64 {
        let p = self.modulus.p;
        a.coeffs[0] + p * (a.coeffs[1] + p * a.coeffs[2])
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    #[inline]
    pub fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let p = self.modulus.p;
        ExtElem {
            coeffs: std::array::from_fn(|i| (a.coeffs[i] + b.coeffs[i]) % p),
        }
    }

    #[inline]
    pub fn sub(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let p = self.modulus.p;
        ExtElem {
            coeffs: std::array::from_fn(|i| (a.coeffs[i] + p - b.coeffs[i]) % p),
        }
    }

    pub fn neg(&self, a: ExtElem) -> ExtElem {
        self.sub(self.zero(), a)
    }

    /// `a - r` for a base-field scalar `r`.
    #[inline]
    pub fn sub_base(&self, a: ExtElem, r: u64) -> ExtElem {
        let p = self.modulus.p;
        let mut c = a.coeffs;
        c[0] = (c[0] + p - r) % p;
        ExtElem { coeffs: c }
    }

    #[inline]
    pub fn scale(&self, a: ExtElem, s: u64) -> ExtElem {
        let p = self.modulus.p;
        ExtElem {
            coeffs: [
                a.coeffs[0] * s % p,
                a.coeffs[1] * s % p,
                a.coeffs[2] * s % p,
            ],
        }
    }

    #[inline]
    pub fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let p = self.modulus.p;
        let [a0, a1, a2] = a.coeffs;
        let [b0, b1, b2] = b.coeffs;
        match self.degree {
            1 => ExtElem {
                coeffs: [a0 * b0 % p, 0, 0],
            },
            2 => {
                // x^2 = -c1 x - c0
                let [c0, c1, _] = self.poly;
                let d0 = a0 * b0 % p;
                let d1 = (a0 * b1 + a1 * b0) % p;
                let d2 = a1 * b1 % p;
                let r0 = (d0 + (p - c0) * d2) % p;
                let r1 = (d1 + (p - c1) * d2) % p;
                ExtElem {
                    coeffs: [r0, r1, 0],
                }
            }
            _ => {
                // x^3 = -c2 x^2 - c1 x - c0
                let [c0, c1, c2] = self.poly;
                let d0 = a0 * b0 % p;
                let d1 = (a0 * b1 + a1 * b0) % p;
                let d2 = (a0 * b2 + a1 * b1 + a2 * b0) % p;
                let d3 = (a1 * b2 + a2 * b1) % p;
                let d4 = a2 * b2 % p;
                // fold x^4 = x * x^3 first, then x^3
                let (n0, n1, n2) = (p - c0, p - c1, p - c2);
                let e1 = (d1 + n0 * d4) % p;
                let e2 = (d2 + n1 * d4) % p;
                let e3 = (d3 + n2 * d4) % p;
                let r0 = (d0 + n0 * e3) % p;
                let r1 = (e1 + n1 * e3) % p;
                let r2 = (e2 + n2 * e3) % p;
                ExtElem {
                    coeffs: [r0, r1, r2],
                }
            }
        }
    }

    pub fn pow(&self, mut base: ExtElem, mut exp: u64) -> ExtElem {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse through `a^(q-2)`; `None` for zero.
    pub fn inv(&self, a: ExtElem) -> Option<ExtElem> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }

    /// Euler's criterion in `F_q`.
    pub fn is_square(&self, a: ExtElem) -> bool {
        a.is_zero() || self.pow(a, (self.order() - 1) / 2) == self.one()
    }

    /// Table indexed by [`ExtField::index`]: `true` iff the element is a
    /// square (zero included).
    pub fn square_table(&self) -> Vec<bool> {
        let q = self.order() as usize;
        let mut table = vec![false; q];
        for i in 0..q as u64 {
            let z = self.from_index(i);
            table[self.index(self.mul(z, z)) as usize] = true;
        }
        table
    }
}

/// Euler-criterion squareness test in an extension field.
pub fn ext_is_square(field: &ExtField, a: ExtElem) -> bool {
    field.is_square(a)
}
