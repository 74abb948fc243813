//! Hyperelliptic models `y^2 = alpha * prod (x - r_i)` and brute-force point
//! counting on their nonsingular projective models over `F_{p^j}`.

use std::cell::RefCell;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ExtField, Fp, PrimeModulus};
use crate::hasse::LegendreCurve;

/// Largest field size counted point by point.
pub const COUNT_CAP: u64 = 10_000_000;

const PARALLEL_THRESHOLD: u64 = 1 << 15;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticModel {
    alpha: Fp,
    roots: Vec<Fp>,
}

impl HyperellipticModel {
    pub fn new(alpha: Fp, roots: Vec<Fp>) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::InvalidCurve("leading coefficient is zero".into()));
        }
        if !(3..=6).contains(&roots.len()) {
            return Err(Error::InvalidCurve(format!(
                "degree {} not in 3..=6",
                roots.len()
            )));
        }
        if roots.iter().any(|r| r.modulus() != alpha.modulus()) {
            return Err(Error::InvalidCurve(
                "roots live in a different field".into(),
            ));
        }
        for (i, r) in roots.iter().enumerate() {
            if roots[..i].contains(r) {
                return Err(Error::InvalidCurve(format!("repeated root {r}")));
            }
        }
        Ok(HyperellipticModel { alpha, roots })
    }

    pub fn from_ints(p: u64, alpha: i64, roots: &[i64]) -> Result<Self> {
        let m = PrimeModulus::new(p)?;
        Self::new(
            m.elem_signed(alpha),
            roots.iter().map(|&r| m.elem_signed(r)).collect(),
        )
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.alpha.modulus()
    }

    pub fn alpha(&self) -> Fp {
        self.alpha
    }

    pub fn roots(&self) -> &[Fp] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn genus(&self) -> u64 {
        (self.degree() as u64 - 1) / 2
    }
}

impl From<&LegendreCurve> for HyperellipticModel {
    fn from(curve: &LegendreCurve) -> Self {
        let m = curve.modulus();
        HyperellipticModel {
            alpha: curve.theta(),
            roots: vec![m.zero(), m.one(), curve.lambda()],
        }
    }
}

impl From<LegendreCurve> for HyperellipticModel {
    fn from(curve: LegendreCurve) -> Self {
        (&curve).into()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    BruteForce,
    ZetaLift,
    Decomposition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointCount {
    q: u64,
    count: u64,
    method: CountMethod,
}

impl PointCount {
    pub fn new(q: u64, count: u64, method: CountMethod) -> Self {
        PointCount { q, count, method }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn method(&self) -> CountMethod {
        self.method
    }

    /// `q + 1 - count`.
    pub fn trace(&self) -> i64 {
        self.q as i64 + 1 - self.count as i64
    }

    /// `|q + 1 - count| <= 2 g sqrt(q)`, checked as `t^2 <= 4 g^2 q`.
    pub fn within_weil_bound(&self, genus: u64) -> bool {
        let t = self.trace().unsigned_abs() as u128;
        t * t <= 4 * (genus as u128).pow(2) * self.q as u128
    }
}

/// Distribution of the quadratic character on `f(x) = prod (x - r_i)` over
/// `F_q`. Determines the projective point count of every twist `alpha f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacterProfile {
    pub q: u64,
    pub degree: usize,
    pub zeros: u64,
    pub squares: u64,
    pub non_squares: u64,
}

impl CharacterProfile {
    /// Points on the smooth projective model of `y^2 = alpha f(x)`: affine
    /// solutions plus one point at infinity for odd degree, two or none for
    /// even degree depending on whether `alpha` is a square in `F_q`.
    pub fn count(&self, alpha_is_square: bool) -> u64 {
        let nonzero = if alpha_is_square {
            self.squares
        } else {
            self.non_squares
        };
        let infinity = match (self.degree % 2, alpha_is_square) {
            (1, _) => 1,
            (_, true) => 2,
            (_, false) => 0,
        };
        self.zeros + 2 * nonzero + infinity
    }
}

/// Anything that can count points over one fixed field `F_{p^j}`.
pub trait CurveCounter {
    fn field(&self) -> &ExtField;

    fn profile(&self, roots: &[Fp]) -> CharacterProfile;

    /// Whether a base-field element is a square in `F_q`.
    fn is_square(&self, a: Fp) -> bool;

    fn q(&self) -> u64 {
        self.field().order()
    }

    fn count(&self, model: &HyperellipticModel) -> PointCount {
        assert_eq!(
            model.modulus(),
            self.field().modulus(),
            "model over a different prime"
        );
        let n = self
            .profile(model.roots())
            .count(self.is_square(model.alpha()));
        PointCount::new(self.q(), n, CountMethod::BruteForce)
    }

    fn count_legendre(&self, curve: &LegendreCurve) -> PointCount {
        self.count(&curve.into())
    }
}

/// Brute-force counter for one field `F_{p^j}`; holds the field and its table
/// of squares.
#[derive(Clone, Debug)]
pub struct PointCounter {
    field: ExtField,
    squares: Vec<bool>,
}

impl PointCounter {
    pub fn new(modulus: PrimeModulus, j: u32) -> Result<Self> {
        if !(1..=3).contains(&j) {
            return Err(Error::UnsupportedDegree(j));
        }
        let q = modulus.power(j);
        if q > COUNT_CAP {
            return Err(Error::CapExceeded { q, cap: COUNT_CAP });
        }
        let field = ExtField::of_degree(modulus, j)?;
        let squares = field.square_table();
        Ok(PointCounter { field, squares })
    }

    /// 0 for zero, 1 for a nonzero square, 2 otherwise.
    #[inline]
    fn classify(&self, index: u64, roots: &[u64]) -> usize {
        let f = &self.field;
        let x = f.from_index(index);
        let mut v = f.sub_base(x, roots[0]);
        for &r in &roots[1..] {
            v = f.mul(v, f.sub_base(x, r));
        }
        if v.is_zero() {
            0
        } else if self.squares[f.index(v) as usize] {
            1
        } else {
            2
        }
    }
}

impl CurveCounter for PointCounter {
    fn field(&self) -> &ExtField {
        &self.field
    }

    fn profile(&self, roots: &[Fp]) -> CharacterProfile {
        let q = self.q();
        let roots: Vec<u64> = roots.iter().map(Fp::value).collect();
        let tally = |mut acc: [u64; 3], i: usize| {
            acc[self.classify(i as u64, &roots)] += 1;
            acc
        };
        let [zeros, squares, non_squares] = if q >= PARALLEL_THRESHOLD {
            (0..q as usize)
                .into_par_iter()
                .with_min_len(4096)
                .fold(|| [0u64; 3], tally)
                .reduce(|| [0u64; 3], |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]])
        } else {
            (0..q as usize).fold([0u64; 3], tally)
        };
        CharacterProfile {
            q,
            degree: roots.len(),
            zeros,
            squares,
            non_squares,
        }
    }

    fn is_square(&self, a: Fp) -> bool {
        self.squares[self.field.index(self.field.embed(a)) as usize]
    }
}

/// Memoises profiles by root list. Not `Sync`; meant for one worker.
#[derive(Debug)]
pub struct CachedCounter<'a> {
    inner: &'a PointCounter,
    cache: RefCell<HashMap<[u64; 6], CharacterProfile>>,
}

impl<'a> CachedCounter<'a> {
    const MAX_ENTRIES: usize = 1 << 12;

    pub fn new(inner: &'a PointCounter) -> Self {
        CachedCounter {
            inner,
            cache: RefCell::new(HashMap::new()),
        }
    }
}

impl CurveCounter for CachedCounter<'_> {
    fn field(&self) -> &ExtField {
        self.inner.field()
    }

    fn profile(&self, roots: &[Fp]) -> CharacterProfile {
        let mut key = [u64::MAX; 6];
        if roots.len() > key.len() {
            return self.inner.profile(roots);
        }
        for (slot, r) in key.iter_mut().zip(roots) {
            *slot = r.value();
        }
        if let Some(hit) = self.cache.borrow().get(&key) {
            return *hit;
        }
        let profile = self.inner.profile(roots);
        let mut cache = self.cache.borrow_mut();
        if cache.len() >= Self::MAX_ENTRIES {
            cache.clear();
        }
        cache.insert(key, profile);
        profile
    }

    fn is_square(&self, a: Fp) -> bool {
        self.inner.is_square(a)
    }
}

pub fn count_points(model: &HyperellipticModel, j: u32) -> Result<PointCount> {
    Ok(PointCounter::new(model.modulus(), j)?.count(model))
}

/// Frobenius trace `p^j + 1 - #H(F_{p^j})`.
pub fn curve_trace(model: &HyperellipticModel, j: u32) -> Result<i64> {
    Ok(count_points(model, j)?.trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hasse::{floor_two_sqrt, zeta_lift};

    #[test]
    fn legendre_p11_maximal() {
        let e = LegendreCurve::from_ints(11, 8, 6).unwrap();
        let n1 = count_points(&(&e).into(), 1).unwrap();
        assert_eq!(n1.count(), 12);
        assert_eq!(n1.count() % 4, 0);
        let n2 = count_points(&(&e).into(), 2).unwrap();
        assert_eq!(n2.count(), 144);
        assert_eq!(zeta_lift(n1.count(), 11, 2).unwrap(), 144);
        assert_eq!(curve_trace(&(&e).into(), 2).unwrap(), -22);
    }

    #[test]
    fn small_cubic_over_f5() {
        // y^2 = x(x-1)(x-2): x in {0,1,2} give y = 0; f(3) = 6 = 1 and
        // f(4) = 24 = 4 are squares, so 3 + 2 + 2 affine points and infinity.
        let h = HyperellipticModel::from_ints(5, 1, &[0, 1, 2]).unwrap();
        assert_eq!(count_points(&h, 1).unwrap().count(), 8);
    }

    #[test]
    fn even_degree_infinity() {
        // alpha = 2 is a non-square mod 5: no points at infinity
        let twisted = HyperellipticModel::from_ints(5, 2, &[0, 1, 2, 3]).unwrap();
        let plain = HyperellipticModel::from_ints(5, 1, &[0, 1, 2, 3]).unwrap();
        // f(4) = 24 = 4: plain has 4 + 2 affine + 2 at infinity, twist 4 + 0
        assert_eq!(count_points(&plain, 1).unwrap().count(), 8);
        assert_eq!(count_points(&twisted, 1).unwrap().count(), 4);
        // alpha becomes a square over F_25
        let n2 = count_points(&twisted, 2).unwrap().count();
        assert_eq!(n2, count_points(&plain, 2).unwrap().count());
    }

    #[test]
    fn serre_attaining_trace() {
        let e = LegendreCurve::from_ints(499, 31, 438).unwrap();
        assert_eq!(
            curve_trace(&(&e).into(), 1).unwrap(),
            -(floor_two_sqrt(499) as i64)
        );
    }

    #[test]
    fn model_validation() {
        assert!(HyperellipticModel::from_ints(11, 0, &[1, 2, 3]).is_err());
        assert!(HyperellipticModel::from_ints(11, 1, &[1, 2]).is_err());
        assert!(HyperellipticModel::from_ints(11, 1, &[1, 2, 3, 4, 5, 6, 7]).is_err());
        assert!(HyperellipticModel::from_ints(11, 1, &[1, 2, 13]).is_err());
        let h = HyperellipticModel::from_ints(11, 3, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!((h.degree(), h.genus()), (6, 2));
    }

    #[test]
    fn cap_and_degree_errors() {
        let h = HyperellipticModel::from_ints(499, 1, &[0, 1, 2]).unwrap();
        assert!(matches!(
            count_points(&h, 3),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            count_points(&h, 4),
            Err(Error::UnsupportedDegree(4))
        ));
    }

    #[test]
    fn cached_counter_agrees() {
        let base = PointCounter::new(PrimeModulus::new(23).unwrap(), 2).unwrap();
        let cached = CachedCounter::new(&base);
        for alpha in 1..23 {
            let h = HyperellipticModel::from_ints(23, alpha, &[0, 1, 5, 7]).unwrap();
            assert_eq!(cached.count(&h), base.count(&h));
            let h = HyperellipticModel::from_ints(23, alpha, &[0, 1, 5, 7, 9]).unwrap();
            assert_eq!(cached.count(&h), base.count(&h));
        }
    }

    #[test]
    fn parallel_count_is_deterministic() {
        // q = 37^3 crosses the parallel threshold
        let h = HyperellipticModel::from_ints(37, 17, &[0, 1, 3, 31, 34, 13]).unwrap();
        let a = count_points(&h, 3).unwrap();
        let b = count_points(&h, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.within_weil_bound(2));
    }
}
