//! Enumeration of genus-5 parameter tuples whose curve reaches a target
//! bound.
//!
//! A frame is a tuple `(a1, a2, a3, a4, a5, b5)` of distinct points. Both
//! cross-ratio conditions are linear in the remaining points, so `a6` and `b6`
//! are solved for rather than enumerated. Each frame is screened with raw
//! table lookups: the squareness hypotheses, then the Hasse-polynomial
//! congruence of every factor, which depends on the twists only through the
//! quadratic characters of `alpha1` and `alpha2`. Surviving `(alpha1, alpha2)`
//! pairs are rebuilt through [`decompose_genus5`] and confirmed by point
//! counts before they are reported.
//!
//! Frames are grouped into blocks by `(a1, a2)`. Blocks run in parallel in
//! fixed-size chunks and are merged in enumeration order, so the hits and the
//! statistics do not depend on the number of threads.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{CachedCounter, PointCounter};
use crate::error::{Error, Result};
use crate::field::{is_prime, Fp, PrimeModulus};
use crate::hasse::{serre_bound, serre_fp3_condition, serre_fp_condition, HasseTable};
use crate::howe::{decompose_genus5, validate, DecompositionReport, HoweParams, ReportRecord};
use crate::tables::format_row;

/// Largest `p^j` at which a hit is confirmed by counting points over
/// `F_{p^j}` itself; above it the factor counts are zeta-lifted from `F_p`.
pub const CONFIRM_DIRECT_LIMIT: u64 = 250_000;

const CHUNK_BLOCKS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// `#C(F_p)` equals the Serre bound.
    SerreFp,
    /// `C` is maximal over `F_{p^2}`.
    MaximalFp2,
    /// `#C(F_{p^3})` equals the Serre bound.
    SerreFp3,
}

impl Target {
    pub const ALL: [Target; 3] = [Target::SerreFp, Target::MaximalFp2, Target::SerreFp3];

    /// Smallest prime for which the criterion is proved.
    pub fn min_prime(self) -> u64 {
        match self {
            Target::SerreFp => 17,
            Target::MaximalFp2 => 3,
            Target::SerreFp3 => 11,
        }
    }

    pub fn degree(self) -> u32 {
        match self {
            Target::SerreFp => 1,
            Target::MaximalFp2 => 2,
            Target::SerreFp3 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Target::SerreFp => "serre-fp",
            Target::MaximalFp2 => "maximal-fp2",
            Target::SerreFp3 => "serre-fp3",
        }
    }

    /// `#C(F_{p^j})` of a hit: the Serre bound for genus 5 (which over
    /// `F_{p^2}` is the Hasse-Weil bound).
    pub fn expected_count(self, p: u64) -> u64 {
        serre_bound(p.pow(self.degree()), 5)
    }

    /// Whether a factor with Hasse value `h` and `chi(-theta) = sign` meets the
    /// congruence of this target.
    fn factor_ok(self, modulus: PrimeModulus, h: Fp, sign: i8) -> bool {
        let trace = if sign == 1 { h } else { -h };
        match self {
            Target::SerreFp => serre_fp_condition(modulus, trace),
            Target::MaximalFp2 => h.is_zero(),
            Target::SerreFp3 => serre_fp3_condition(modulus, trace),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown target {s:?}; expected serre-fp, maximal-fp2 or serre-fp3"
                ))
            })
    }
}

/// Fixed values for individual coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pins {
    pub alpha1: Option<u64>,
    pub alpha2: Option<u64>,
    pub a1: Option<u64>,
    pub a2: Option<u64>,
    pub a3: Option<u64>,
    pub a4: Option<u64>,
    pub a5: Option<u64>,
    pub b5: Option<u64>,
}

impl Pins {
    fn named(&self) -> [(&'static str, Option<u64>); 8] {
        [
            ("alpha1", self.alpha1),
            ("alpha2", self.alpha2),
            ("a1", self.a1),
            ("a2", self.a2),
            ("a3", self.a3),
            ("a4", self.a4),
            ("a5", self.a5),
            ("b5", self.b5),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub target: Target,
    pub p_min: u64,
    pub p_max: u64,
    /// Frames examined per prime.
    pub max_candidates_per_prime: Option<u64>,
    pub max_hits: Option<usize>,
    /// Checked between chunks of blocks, so it may be overrun by one chunk.
    pub time_budget: Option<Duration>,
    /// Shuffles the order in which every coordinate runs through its values.
    pub seed: Option<u64>,
    /// Use the affine freedom to fix `a1 = 0` and `a2 = 1` unless pinned.
    pub normalize: bool,
    pub pins: Pins,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl SearchConfig {
    pub fn new(target: Target, p_min: u64, p_max: u64) -> Self {
        SearchConfig {
            target,
            p_min,
            p_max,
            max_candidates_per_prime: None,
            max_hits: None,
            time_budget: None,
            seed: None,
            normalize: false,
            pins: Pins::default(),
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let min = self.target.min_prime();
        if self.p_min < min {
            return Err(Error::Config(format!(
                "target {} needs p >= {min}, but p_min is {}",
                self.target, self.p_min
            )));
        }
        if self.p_min > self.p_max {
            return Err(Error::Config(format!(
                "p_min {} exceeds p_max {}",
                self.p_min, self.p_max
            )));
        }
        if self.p_max >= PrimeModulus::CAP {
            return Err(Error::Config(format!(
                "p_max {} is not below {}",
                self.p_max,
                PrimeModulus::CAP
            )));
        }
        for (name, pin) in self.pins.named() {
            match pin {
                Some(v) if v >= self.p_min => {
                    return Err(Error::Config(format!(
                        "pinned {name} = {v} is not below p_min {}",
                        self.p_min
                    )))
                }
                Some(0) if name.starts_with("alpha") => {
                    return Err(Error::Config(format!("pinned {name} must be nonzero")))
                }
                _ => {}
            }
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        if self.max_hits == Some(0) {
            return Err(Error::Config("max_hits must be at least 1".into()));
        }
        Ok(())
    }

    fn effective_pins(&self) -> Pins {
        let mut pins = self.pins;
        if self.normalize {
            pins.a1 = pins.a1.or(Some(0));
            pins.a2 = pins.a2.or(Some(1));
        }
        pins
    }
}

/// A confirmed parameter tuple.
#[derive(Clone, Debug)]
pub struct SearchHit {
    pub target: Target,
    pub params: HoweParams,
    /// Counts over `F_p` and, for the extension targets, `F_{p^j}`.
    pub report: DecompositionReport,
    /// Time since the search started; not part of any output format.
    pub wall_time: Duration,
}

/// JSON-lines shape of a hit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitRecord {
    pub target: Target,
    #[serde(flatten)]
    pub report: ReportRecord,
}

impl SearchHit {
    pub fn csv_row(&self) -> String {
        format_row(&self.params)
    }

    pub fn record(&self) -> HitRecord {
        HitRecord {
            target: self.target,
            report: (&self.report).into(),
        }
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(&self.record()).expect("hit records serialise")
    }

    /// `#C(F_{p^j})` for the target degree.
    pub fn target_count(&self) -> u64 {
        let j = self.target.degree();
        self.report
            .counts
            .iter()
            .find(|c| c.j == j)
            .expect("target degree counted")
            .curve
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub primes: u64,
    /// Frames examined.
    pub frames: u64,
    /// No admissible `a6` or `b6`.
    pub rejected_cross_ratio: u64,
    pub rejected_non_square: u64,
    /// Colliding points, or a factor with `lambda` in `{0, 1}`.
    pub rejected_degenerate: u64,
    pub rejected_predicate: u64,
    /// Frames for which some twist class passes every factor congruence.
    pub frames_passing: u64,
    pub hits: u64,
    /// Candidates that passed the congruence screen but failed confirmation.
    pub disagreements: u64,
    pub timed_out: bool,
    pub hit_limit_reached: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.frames += other.frames;
        self.rejected_cross_ratio += other.rejected_cross_ratio;
        self.rejected_non_square += other.rejected_non_square;
        self.rejected_degenerate += other.rejected_degenerate;
        self.rejected_predicate += other.rejected_predicate;
        self.frames_passing += other.frames_passing;
        self.disagreements += other.disagreements;
    }
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "primes={} frames={} cross_ratio={} non_square={} degenerate={} predicate={} passing={} hits={} disagreements={}",
            self.primes,
            self.frames,
            self.rejected_cross_ratio,
            self.rejected_non_square,
            self.rejected_degenerate,
            self.rejected_predicate,
            self.frames_passing,
            self.hits,
            self.disagreements,
        )?;
        if self.timed_out {
            f.write_str(" timed_out")?;
        }
        if self.hit_limit_reached {
            f.write_str(" hit_limit")?;
        }
        write!(f, " elapsed={:.3}s", self.elapsed.as_secs_f64())
    }
}

/// The point `x` completing the cross-ratio condition
/// `(x2 - x4)(x1 - x)(x3 - x5) = (x2 - x)(x1 - x5)(x3 - x4)`, or `None` when
/// the condition has no solution or it collides with one of the fixed points.
pub fn solve_linear_root(fixed: [Fp; 5]) -> Option<Fp> {
    let [x1, x2, x3, x4, x5] = fixed;
    let k = (x2 - x4) * (x3 - x5);
    let l = (x1 - x5) * (x3 - x4);
    let x = (l * x2 - k * x1) * (l - k).inv()?;
    (!fixed.contains(&x)).then_some(x)
}

/// Draws random frames and twists until every hypothesis holds, giving up
/// after `attempts` draws.
pub fn random_valid_params<R: Rng + ?Sized>(
    modulus: PrimeModulus,
    rng: &mut R,
    attempts: usize,
) -> Option<HoweParams> {
    let p = modulus.p();
    for _ in 0..attempts {
        let frame: Vec<Fp> = index::sample(rng, p as usize, 6)
            .iter()
            .map(|v| modulus.elem(v as u64))
            .collect();
        let [a1, a2, a3, a4, a5, b5] = frame[..] else {
            unreachable!()
        };
        let (Some(a6), Some(b6)) = (
            solve_linear_root([a1, a2, a3, a4, a5]),
            solve_linear_root([a1, a2, a3, a4, b5]),
        ) else {
            continue;
        };
        let alpha1 = modulus.elem(rng.gen_range(1..p));
        let alpha2 = modulus.elem(rng.gen_range(1..p));
        let params = HoweParams::new(alpha1, alpha2, [a1, a2, a3, a4, a5, a6], [b5, b6]);
        if validate(&params).is_ok() {
            return Some(params);
        }
    }
    None
}

/// Lookup tables for one prime.
struct PrimeTables {
    p: u64,
    modulus: PrimeModulus,
    inv: Vec<u64>,
    chi: Vec<i8>,
    /// Canonical square root, or `u64::MAX` for non-squares.
    sqrt: Vec<u64>,
    /// Bit 0: sign +1 passes at this lambda; bit 1: sign -1 passes.
    mask: Vec<u8>,
}

impl PrimeTables {
    fn new(modulus: PrimeModulus, target: Target, hasse: &HasseTable) -> Self {
        let p = modulus.p();
        let n = p as usize;
        let mut inv = vec![0u64; n];
        let mut chi = vec![-1i8; n];
        let mut sqrt = vec![u64::MAX; n];
        chi[0] = 0;
        sqrt[0] = 0;
        for r in 1..=(p - 1) / 2 {
            let s = (r * r % p) as usize;
            chi[s] = 1;
            sqrt[s] = r;
        }
        for x in 1..p {
            if inv[x as usize] == 0 {
                let y = modulus.elem(x).inv().expect("nonzero").value();
                inv[x as usize] = y;
                inv[y as usize] = x;
            }
        }
        let mask = (0..p)
            .map(|t| {
                let h = hasse.get(modulus.elem(t));
                u8::from(target.factor_ok(modulus, h, 1))
                    | (u8::from(target.factor_ok(modulus, h, -1)) << 1)
            })
            .collect();
        PrimeTables {
            p,
            modulus,
            inv,
            chi,
            sqrt,
            mask,
        }
    }

    #[inline]
    fn sub(&self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    #[inline]
    fn mul(&self, x: u64, y: u64) -> u64 {
        x * y % self.p
    }

    #[inline]
    fn div(&self, x: u64, y: u64) -> Option<u64> {
        (y != 0).then(|| self.mul(x, self.inv[y as usize]))
    }

    fn cross(&self, x1: u64, x2: u64, x3: u64, x4: u64) -> u64 {
        let num = self.mul(self.sub(x1, x3), self.sub(x2, x4));
        let den = self.mul(self.sub(x2, x3), self.sub(x1, x4));
        self.div(num, den).expect("distinct points")
    }

    fn solve(&self, x: [u64; 5]) -> Option<u64> {
        let [x1, x2, x3, x4, x5] = x;
        let k = self.mul(self.sub(x2, x4), self.sub(x3, x5));
        let l = self.mul(self.sub(x1, x5), self.sub(x3, x4));
        let v = self.sub(self.mul(l, x2), self.mul(k, x1));
        let r = self.div(v, self.sub(l, k))?;
        (!x.contains(&r)).then_some(r)
    }

    /// Legendre parameters of the two factors of a genus-2 curve with
    /// cross-ratios `lambda, mu` and the twist of both divided by `alpha`.
    /// `None` if `lambda (lambda - mu)` is not a nonzero square or a
    /// parameter degenerates.
    fn split(&self, lambda: u64, mu: u64, theta_over_alpha: u64) -> Split {
        let disc = self.mul(lambda, self.sub(lambda, mu));
        if self.chi[disc as usize] != 1 {
            return Split::NonSquare;
        }
        let root = self.sqrt[disc as usize];
        let one_minus_l = self.sub(1, lambda);
        let (Some(scale), Some(kappa)) = (
            self.div(one_minus_l, self.sub(mu, 1)),
            self.div(self.mul(theta_over_alpha, self.sub(1, mu)), one_minus_l),
        ) else {
            return Split::Degenerate;
        };
        let centre = self.sub(mu, self.mul(2, lambda));
        let two_root = self.mul(2, root);
        let plus = self.mul(scale, (centre + two_root) % self.p);
        let minus = self.mul(scale, self.sub(centre, two_root));
        if kappa == 0 || [plus, minus].iter().any(|&l| l <= 1) {
            return Split::Degenerate;
        }
        Split::Ok {
            kappa,
            lambdas: [plus, minus],
        }
    }

    /// Allowed `chi(alpha)` as a bit set (bit 0 for +1, bit 1 for -1) such that
    /// every factor with twist `alpha * kappa` and the given lambdas passes.
    fn alpha_classes(&self, kappa: u64, lambdas: &[u64]) -> u8 {
        let signs = lambdas
            .iter()
            .fold(3u8, |acc, &l| acc & self.mask[l as usize]);
        if self.chi[self.sub(0, kappa) as usize] == 1 {
            signs
        } else {
            ((signs & 1) << 1) | (signs >> 1)
        }
    }

    fn class_bit(&self, x: u64) -> u8 {
        if self.chi[x as usize] == 1 {
            1
        } else {
            2
        }
    }
}

enum Split {
    Ok { kappa: u64, lambdas: [u64; 2] },
    NonSquare,
    Degenerate,
}

/// Everything shared by the blocks of one prime.
struct PrimeSearch<'a> {
    target: Target,
    tables: PrimeTables,
    hasse: HasseTable,
    base: PointCounter,
    direct: Option<PointCounter>,
    orders: [Vec<u64>; 8],
    start: &'a Instant,
}

struct Candidate {
    /// Index of the frame within its block.
    frame: u64,
    hit: std::result::Result<SearchHit, ()>,
}

#[derive(Default)]
struct BlockResult {
    stats: SearchStats,
    candidates: Vec<Candidate>,
}

impl PrimeSearch<'_> {
    fn blocks(&self) -> Vec<(u64, u64)> {
        let mut blocks = Vec::new();
        for &a1 in &self.orders[2] {
            for &a2 in self.orders[3].iter().filter(|&&a2| a2 != a1) {
                blocks.push((a1, a2));
            }
        }
        blocks
    }

    /// Scans the frames starting with `(a1, a2)`, at most `limit` of them.
    fn scan_block(&self, a1: u64, a2: u64, limit: u64) -> BlockResult {
        let t = &self.tables;
        let base = CachedCounter::new(&self.base);
        let direct = self.direct.as_ref().map(CachedCounter::new);
        let mut out = BlockResult::default();
        let mut frame = 0u64;
        let st = &mut out.stats;

        for &a3 in self.orders[4].iter().filter(|&&v| v != a1 && v != a2) {
            for &a4 in self.orders[5]
                .iter()
                .filter(|&&v| ![a1, a2, a3].contains(&v))
            {
                let a = t.cross(a1, a2, a3, a4);
                for &a5 in self.orders[6]
                    .iter()
                    .filter(|&&v| ![a1, a2, a3, a4].contains(&v))
                {
                    if frame >= limit {
                        st.frames = frame;
                        return out;
                    }
                    let fixed = [a1, a2, a3, a4, a5];
                    let b5s: Vec<u64> = self.orders[7]
                        .iter()
                        .copied()
                        .filter(|v| !fixed.contains(v))
                        .collect();
                    let span = (b5s.len() as u64).min(limit - frame);

                    let first = (|| {
                        let Some(a6) = t.solve(fixed) else {
                            return Err(Reject::CrossRatio);
                        };
                        let b = t.cross(a1, a2, a3, a5);
                        let kappa = t.mul(
                            t.mul(t.sub(a2, a3), t.sub(a1, a4)),
                            t.mul(t.sub(a1, a5), t.sub(a1, a6)),
                        );
                        match t.split(a, b, kappa) {
                            Split::NonSquare => Err(Reject::NonSquare),
                            Split::Degenerate => Err(Reject::Degenerate),
                            Split::Ok { kappa, lambdas } => {
                                let classes = t.alpha_classes(kappa, &lambdas);
                                if classes == 0 {
                                    Err(Reject::Predicate)
                                } else {
                                    Ok((a6, classes))
                                }
                            }
                        }
                    })();
                    let (a6, classes1) = match first {
                        Ok(v) => v,
                        Err(reason) => {
                            reason.record(st, span);
                            frame += span;
                            continue;
                        }
                    };

                    for &b5 in &b5s[..span as usize] {
                        let this = frame;
                        frame += 1;
                        let second = (|| {
                            if b5 == a6 {
                                return Err(Reject::Degenerate);
                            }
                            let Some(b6) = t.solve([a1, a2, a3, a4, b5]) else {
                                return Err(Reject::CrossRatio);
                            };
                            if b6 == a5 || b6 == a6 {
                                return Err(Reject::Degenerate);
                            }
                            let c = t.cross(a1, a2, a3, b5);
                            let kappa = t.mul(
                                t.mul(t.sub(a2, a3), t.sub(a1, a4)),
                                t.mul(t.sub(a1, b5), t.sub(a1, b6)),
                            );
                            let (kappa34, lambdas) = match t.split(a, c, kappa) {
                                Split::NonSquare => return Err(Reject::NonSquare),
                                Split::Degenerate => return Err(Reject::Degenerate),
                                Split::Ok { kappa, lambdas } => (kappa, lambdas),
                            };
                            let classes2 = t.alpha_classes(kappa34, &lambdas);
                            let den5 = t.sub(a6, b5);
                            let kappa5 = t.div(t.sub(a5, b6), den5).expect("distinct points");
                            let lambda5 = t
                                .div(
                                    t.mul(t.sub(a5, b5), t.sub(a6, b6)),
                                    t.mul(t.sub(a5, b6), den5),
                                )
                                .expect("distinct points");
                            if lambda5 <= 1 {
                                return Err(Reject::Degenerate);
                            }
                            let classes5 = t.alpha_classes(kappa5, &[lambda5]);
                            if classes2 == 0 || classes5 == 0 {
                                return Err(Reject::Predicate);
                            }
                            // chi(alpha1 alpha2) must lie in classes5; the bit of a
                            // product is the xor of the bit indices.
                            let mut pairs = Vec::new();
                            for s1 in [1u8, 2] {
                                for s2 in [1u8, 2] {
                                    let prod = if s1 == s2 { 1 } else { 2 };
                                    if classes1 & s1 != 0
                                        && classes2 & s2 != 0
                                        && classes5 & prod != 0
                                    {
                                        pairs.push((s1, s2));
                                    }
                                }
                            }
                            if pairs.is_empty() {
                                return Err(Reject::Predicate);
                            }
                            Ok((b6, pairs))
                        })();
                        let (b6, pairs) = match second {
                            Ok(v) => v,
                            Err(reason) => {
                                reason.record(st, 1);
                                continue;
                            }
                        };
                        st.frames_passing += 1;
                        for &al1 in &self.orders[0] {
                            let c1 = t.class_bit(al1);
                            for &al2 in &self.orders[1] {
                                if !pairs.contains(&(c1, t.class_bit(al2))) {
                                    continue;
                                }
                                let m = t.modulus;
                                let e = |v: u64| m.elem(v);
                                let params = HoweParams::new(
                                    e(al1),
                                    e(al2),
                                    [a1, a2, a3, a4, a5, a6].map(e),
                                    [e(b5), e(b6)],
                                );
                                let hit = self.confirm(params, &base, direct.as_ref());
                                if hit.is_err() {
                                    st.disagreements += 1;
                                }
                                out.candidates.push(Candidate { frame: this, hit });
                            }
                        }
                    }
                }
            }
        }
        st.frames = frame;
        out
    }

    /// Rebuilds the tuple through the library path and counts points.
    fn confirm(
        &self,
        params: HoweParams,
        base: &CachedCounter<'_>,
        direct: Option<&CachedCounter<'_>>,
    ) -> std::result::Result<SearchHit, ()> {
        let run = || -> Result<Option<DecompositionReport>> {
            let decomposition = decompose_genus5(&params)?;
            let verdicts = decomposition.verdicts_using(&self.hasse, base)?;
            let claimed = match self.target {
                Target::SerreFp => verdicts.serre_fp == Some(true),
                Target::MaximalFp2 => verdicts.maximal_fp2,
                Target::SerreFp3 => verdicts.serre_fp3 == Some(true),
            };
            if !claimed || !verdicts.count_mod4 {
                return Ok(None);
            }
            let mut counts = vec![decomposition.count_with(base)?];
            let j = self.target.degree();
            if j > 1 {
                let lifted = decomposition.count_by_zeta(base, j)?;
                match direct {
                    Some(counter) => {
                        let counted = decomposition.count_with(counter)?;
                        if counted.curve != lifted.curve {
                            return Ok(None);
                        }
                        counts.push(counted);
                    }
                    None => counts.push(lifted),
                }
            }
            let p = params.p();
            let reached = counts.last().expect("nonempty").curve == self.target.expected_count(p);
            if !reached || (self.target == Target::MaximalFp2 && p % 4 != 3) {
                return Ok(None);
            }
            Ok(Some(DecompositionReport {
                decomposition,
                counts,
                verdicts,
            }))
        };
        match run() {
            Ok(Some(report)) => Ok(SearchHit {
                target: self.target,
                params,
                report,
                wall_time: self.start.elapsed(),
            }),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Copy)]
enum Reject {
    CrossRatio,
    NonSquare,
    Degenerate,
    Predicate,
}

impl Reject {
    fn record(self, stats: &mut SearchStats, n: u64) {
        let slot = match self {
            Reject::CrossRatio => &mut stats.rejected_cross_ratio,
            Reject::NonSquare => &mut stats.rejected_non_square,
            Reject::Degenerate => &mut stats.rejected_degenerate,
            Reject::Predicate => &mut stats.rejected_predicate,
        };
        *slot += n;
    }
}

/// Order in which coordinate `coord` runs through `lo..p`.
fn coordinate_order(p: u64, lo: u64, pin: Option<u64>, seed: Option<u64>, coord: u64) -> Vec<u64> {
    if let Some(v) = pin {
        return vec![v];
    }
    let mut values: Vec<u64> = (lo..p).collect();
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(p * 8 + coord);
        values.shuffle(&mut rng);
    }
    values
}

/// Runs the search, calling `on_hit` for every confirmed hit in enumeration
/// order.
pub fn enumerate(config: &SearchConfig, mut on_hit: impl FnMut(&SearchHit)) -> Result<SearchStats> {
    config.validate()?;
    let pool = match config.threads {
        Some(n) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("cannot start thread pool: {e}")))?,
        ),
        None => None,
    };
    run_search(config, pool.as_ref(), &mut on_hit)
}

fn run_search(
    config: &SearchConfig,
    pool: Option<&rayon::ThreadPool>,
    on_hit: &mut dyn FnMut(&SearchHit),
) -> Result<SearchStats> {
    let start = Instant::now();
    let pins = config.effective_pins();
    let mut stats = SearchStats::default();
    let max_hits = config.max_hits.map_or(u64::MAX, |n| n as u64);

    'primes: for p in (config.p_min..=config.p_max).filter(|&p| is_prime(p)) {
        let modulus = PrimeModulus::new(p)?;
        stats.primes += 1;
        let hasse = HasseTable::new(modulus);
        let j = config.target.degree();
        let direct = if j > 1 && modulus.power(j) <= CONFIRM_DIRECT_LIMIT {
            Some(PointCounter::new(modulus, j)?)
        } else {
            None
        };
        let named = pins.named();
        let orders: [Vec<u64>; 8] = std::array::from_fn(|i| {
            let lo = if i < 2 { 1 } else { 0 };
            coordinate_order(p, lo, named[i].1, config.seed, i as u64)
        });
        let search = PrimeSearch {
            target: config.target,
            tables: PrimeTables::new(modulus, config.target, &hasse),
            hasse,
            base: PointCounter::new(modulus, 1)?,
            direct,
            orders,
            start: &start,
        };

        let limit = config.max_candidates_per_prime.unwrap_or(u64::MAX);
        let mut frames = 0u64;
        let blocks = search.blocks();
        let mut next = 0;
        let mut width = 1;
        while next < blocks.len() {
            // chunks grow so that small hit limits stop early
            let chunk = &blocks[next..(next + width).min(blocks.len())];
            next += chunk.len();
            width = (width * 2).min(CHUNK_BLOCKS);
            if frames >= limit {
                break;
            }
            if config
                .time_budget
                .is_some_and(|budget| start.elapsed() >= budget)
            {
                stats.timed_out = true;
                break 'primes;
            }
            let remaining = limit - frames;
            let scan = || -> Vec<BlockResult> {
                chunk
                    .par_iter()
                    .map(|&(a1, a2)| search.scan_block(a1, a2, remaining))
                    .collect()
            };
            let results = match pool {
                Some(pool) => pool.install(scan),
                None => scan(),
            };
            for block in results {
                let allowed = limit - frames;
                if allowed == 0 {
                    break;
                }
                stats.absorb(&block.stats);
                frames += block.stats.frames.min(allowed);
                for candidate in block.candidates.iter().filter(|c| c.frame < allowed) {
                    if let Ok(hit) = &candidate.hit {
                        on_hit(hit);
                        stats.hits += 1;
                        if stats.hits >= max_hits {
                            stats.hit_limit_reached = true;
                            break 'primes;
                        }
                    }
                }
            }
        }
    }
    stats.elapsed = start.elapsed();
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(config: &SearchConfig) -> (Vec<SearchHit>, SearchStats) {
        let mut hits = Vec::new();
        let stats = enumerate(config, |h| hits.push(h.clone())).unwrap();
        (hits, stats)
    }

    #[test]
    fn linear_root_examples() {
        let m = PrimeModulus::new(11).unwrap();
        let x = [5, 3, 10, 7, 6].map(|v| m.elem(v));
        assert_eq!(solve_linear_root(x).unwrap().value(), 8);
        let x = [5, 3, 10, 7, 9].map(|v| m.elem(v));
        assert_eq!(solve_linear_root(x).unwrap().value(), 2);

        let m = PrimeModulus::new(499).unwrap();
        let x = [2, 1, 10, 55, 36].map(|v| m.elem(v));
        assert_eq!(solve_linear_root(x).unwrap().value(), 275);
        let x = [2, 1, 10, 55, 92].map(|v| m.elem(v));
        assert_eq!(solve_linear_root(x).unwrap().value(), 84);
    }

    #[test]
    fn linear_root_without_solution() {
        // (x2 - x4)(x3 - x5) = (x1 - x5)(x3 - x4) makes the equation constant
        let m = PrimeModulus::new(11).unwrap();
        let x = [0, 1, 2, 3, 4].map(|v| m.elem(v));
        // k = (1-3)(2-4) = 4, l = (0-4)(2-3) = 4
        assert_eq!(solve_linear_root(x), None);
    }

    #[test]
    fn raw_solver_matches_field_solver() {
        let m = PrimeModulus::new(13).unwrap();
        let t = PrimeTables::new(m, Target::MaximalFp2, &HasseTable::new(m));
        for x1 in 0..13 {
            for x3 in 0..13 {
                let x = [x1, (x1 + 1) % 13, x3, (x3 + 5) % 13, 7];
                let mut distinct = x.to_vec();
                distinct.sort();
                distinct.dedup();
                if distinct.len() < 5 {
                    continue;
                }
                let fp = solve_linear_root(x.map(|v| m.elem(v))).map(|v| v.value());
                assert_eq!(t.solve(x), fp);
            }
        }
    }

    #[test]
    fn maximal_at_eleven() {
        let mut config = SearchConfig::new(Target::MaximalFp2, 11, 11);
        config.max_hits = Some(20);
        let (hits, stats) = collect(&config);
        assert_eq!(hits.len(), 20);
        assert!(stats.hit_limit_reached);
        assert_eq!(stats.disagreements, 0);
        for hit in &hits {
            assert_eq!(hit.params.p() % 4, 3);
            assert_eq!(hit.target_count(), 121 + 1 + 110);
        }
    }

    #[test]
    fn nothing_maximal_at_thirteen() {
        let config = SearchConfig::new(Target::MaximalFp2, 13, 13);
        let (hits, stats) = collect(&config);
        assert!(hits.is_empty());
        assert_eq!(stats.frames, 13 * 12 * 11 * 10 * 9 * 8);
        assert_eq!(stats.frames_passing, 0);
    }

    #[test]
    fn finds_known_serre_fp_row() {
        let mut config = SearchConfig::new(Target::SerreFp, 499, 499);
        config.pins = Pins {
            alpha1: Some(47),
            alpha2: Some(436),
            a1: Some(2),
            a2: Some(1),
            a3: Some(10),
            a4: Some(55),
            ..Pins::default()
        };
        let mut found = false;
        let stats = enumerate(&config, |h| {
            assert_eq!(h.target_count(), 720);
            found |= h.params.to_row() == [499, 47, 436, 2, 1, 10, 55, 92, 84, 36, 275];
        })
        .unwrap();
        assert!(found, "{stats}");
        assert_eq!(stats.disagreements, 0);
    }

    #[test]
    fn finds_known_serre_fp3_row() {
        let mut config = SearchConfig::new(Target::SerreFp3, 37, 37);
        config.pins = Pins {
            a1: Some(0),
            a2: Some(1),
            a3: Some(3),
            a4: Some(31),
            a5: Some(34),
            ..Pins::default()
        };
        let (hits, stats) = collect(&config);
        assert_eq!(stats.disagreements, 0);
        assert!(hits
            .iter()
            .any(|h| h.params.to_row() == [37, 17, 6, 0, 1, 3, 31, 34, 13, 29, 30]));
        assert!(hits.iter().all(|h| h.target_count() == 52904));
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let mut config = SearchConfig::new(Target::MaximalFp2, 7, 19);
        config.seed = Some(7);
        config.max_candidates_per_prime = Some(20_000);
        let lines = |threads| {
            let mut c = config.clone();
            c.threads = Some(threads);
            let (hits, stats) = collect(&c);
            (
                hits.iter().map(SearchHit::json_line).collect::<Vec<_>>(),
                stats.frames,
                stats.hits,
            )
        };
        let one = lines(1);
        assert!(one.2 > 0);
        assert_eq!(one, lines(3));
    }

    #[test]
    fn seed_changes_order_not_content() {
        let mut config = SearchConfig::new(Target::MaximalFp2, 7, 7);
        let (plain, _) = collect(&config);
        config.seed = Some(99);
        let (seeded, _) = collect(&config);
        let mut a: Vec<_> = plain.iter().map(|h| h.params.to_row()).collect();
        let mut b: Vec<_> = seeded.iter().map(|h| h.params.to_row()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn candidate_cap_is_exact() {
        let mut config = SearchConfig::new(Target::SerreFp, 17, 17);
        config.max_candidates_per_prime = Some(12_345);
        let (_, stats) = collect(&config);
        assert_eq!(stats.frames, 12_345);
    }

    #[test]
    fn random_params_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = PrimeModulus::new(101).unwrap();
        for _ in 0..20 {
            let params = random_valid_params(m, &mut rng, 1000).unwrap();
            assert!(validate(&params).is_ok());
        }
    }

    #[test]
    fn config_errors() {
        let bad = |c: SearchConfig| matches!(enumerate(&c, |_| {}), Err(Error::Config(_)));
        assert!(bad(SearchConfig::new(Target::SerreFp, 13, 20)));
        assert!(bad(SearchConfig::new(Target::SerreFp3, 7, 20)));
        assert!(bad(SearchConfig::new(Target::MaximalFp2, 20, 10)));
        assert!(bad(SearchConfig::new(Target::MaximalFp2, 3, 1 << 20)));
        let mut c = SearchConfig::new(Target::MaximalFp2, 11, 11);
        c.pins.a3 = Some(11);
        assert!(bad(c.clone()));
        c.pins.a3 = None;
        c.pins.alpha1 = Some(0);
        assert!(bad(c.clone()));
        c.pins.alpha1 = None;
        c.threads = Some(0);
        assert!(bad(c));
        assert!("serre-fp4".parse::<Target>().is_err());
        assert_eq!("maximal-fp2".parse::<Target>().unwrap(), Target::MaximalFp2);
    }
}
