//! Twisted generalised Howe curves of genus 5.
//!
//! `C` is the fibre product over the `x`-line of
//!
//! ```text
//! C1: y1^2 = alpha1 (x - a1)(x - a2)(x - a3)(x - a4)(x - a5)(x - a6)
//! C2: y2^2 = alpha2 (x - a1)(x - a2)(x - a3)(x - a4)(x - b5)(x - b6)
//! ```
//!
//! Its Jacobian is isogenous to `J(C1) x J(C2) x J(C3)` with
//! `C3: y3^2 = alpha1 alpha2 (x - a5)(x - a6)(x - b5)(x - b6)`, and under the
//! cross-ratio and squareness hypotheses checked by [`validate`] each genus-2
//! factor splits again, leaving five twisted Legendre curves `E1..E5`.

use serde::{Deserialize, Serialize};

use crate::curves::{CountMethod, CurveCounter, HyperellipticModel, PointCount, PointCounter};
use crate::error::{Error, Result, ValidationErrors, Violation};
use crate::field::{Fp, PrimeModulus};
use crate::hasse::{
    self, hasse_poly_eval, serre_fp3_condition, serre_fp_condition, trace_from_hasse, HasseTable,
    LegendreCurve, SERRE_FP3_MIN_P, SERRE_FP_MIN_P,
};

/// Genus `2(g1 + g2) + 1 - r` of the fibre product of two hyperelliptic curves
/// of genera `g1 <= g2` sharing `r` branch points.
pub fn genus_of_howe(g1: u64, g2: u64, r: u64) -> Result<u64> {
    if g1 == 0 || g1 > g2 || r > 2 * g1 + 2 {
        return Err(Error::InvalidCurve(format!(
            "no Howe curve with (g1, g2, r) = ({g1}, {g2}, {r})"
        )));
    }
    Ok(2 * (g1 + g2) + 1 - r)
}

/// For genus at least 4, the curve is hyperelliptic exactly when
/// `r = g1 + g2 + 1`.
pub fn is_hyperelliptic_howe(g1: u64, g2: u64, r: u64) -> Result<bool> {
    let g = genus_of_howe(g1, g2, r)?;
    if g < 4 {
        return Err(Error::HypothesisViolated {
            what: "hyperellipticity criterion (genus)",
            min: 4,
            got: g,
        });
    }
    Ok(r == g1 + g2 + 1)
}

const POINT_NAMES: [&str; 8] = ["a1", "a2", "a3", "a4", "a5", "a6", "b5", "b6"];

/// `(p, alpha1, alpha2, a1..a6, b5, b6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HoweParams {
    modulus: PrimeModulus,
    alpha1: Fp,
    alpha2: Fp,
    a: [Fp; 6],
    b: [Fp; 2],
}

impl HoweParams {
    pub fn new(alpha1: Fp, alpha2: Fp, a: [Fp; 6], b: [Fp; 2]) -> Self {
        let modulus = alpha1.modulus();
        debug_assert!(a
            .iter()
            .chain(&b)
            .chain([&alpha2])
            .all(|x| x.modulus() == modulus));
        HoweParams {
            modulus,
            alpha1,
            alpha2,
            a,
            b,
        }
    }

    pub fn from_ints(p: u64, alpha1: i64, alpha2: i64, a: [i64; 6], b: [i64; 2]) -> Result<Self> {
        let m = PrimeModulus::new(p)?;
        Ok(Self::new(
            m.elem_signed(alpha1),
            m.elem_signed(alpha2),
            a.map(|v| m.elem_signed(v)),
            b.map(|v| m.elem_signed(v)),
        ))
    }

    /// Builds from a table row `p, alpha1, alpha2, a1..a6, b5, b6`.
    pub fn from_row(row: [u64; 11]) -> Result<Self> {
        let m = PrimeModulus::new(row[0])?;
        if let Some(v) = row[1..].iter().find(|&&v| v >= row[0]) {
            return Err(Error::InvalidCurve(format!(
                "{v} is not reduced modulo {}",
                row[0]
            )));
        }
        let e = |i: usize| m.elem(row[i]);
        Ok(Self::new(
            e(1),
            e(2),
            [e(3), e(4), e(5), e(6), e(7), e(8)],
            [e(9), e(10)],
        ))
    }

    pub fn to_row(&self) -> [u64; 11] {
        let mut row = [0u64; 11];
        row[0] = self.modulus.p();
        row[1] = self.alpha1.value();
        row[2] = self.alpha2.value();
        for (slot, x) in row[3..].iter_mut().zip(self.a.iter().chain(&self.b)) {
            *slot = x.value();
        }
        row
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn p(&self) -> u64 {
        self.modulus.p()
    }

    pub fn alpha1(&self) -> Fp {
        self.alpha1
    }

    pub fn alpha2(&self) -> Fp {
        self.alpha2
    }

    pub fn a(&self) -> [Fp; 6] {
        self.a
    }

    pub fn b(&self) -> [Fp; 2] {
        self.b
    }

    fn points(&self) -> [Fp; 8] {
        let [a1, a2, a3, a4, a5, a6] = self.a;
        let [b5, b6] = self.b;
        [a1, a2, a3, a4, a5, a6, b5, b6]
    }

    pub fn c1(&self) -> Result<HyperellipticModel> {
        HyperellipticModel::new(self.alpha1, self.a.to_vec())
    }

    pub fn c2(&self) -> Result<HyperellipticModel> {
        let [a1, a2, a3, a4, ..] = self.a;
        let [b5, b6] = self.b;
        HyperellipticModel::new(self.alpha2, vec![a1, a2, a3, a4, b5, b6])
    }

    pub fn c3(&self) -> Result<HyperellipticModel> {
        let [.., a5, a6] = self.a;
        let [b5, b6] = self.b;
        HyperellipticModel::new(self.alpha1 * self.alpha2, vec![a5, a6, b5, b6])
    }
}

/// Cross-ratio `(x1 - x3)(x2 - x4) / ((x2 - x3)(x1 - x4))`.
fn cross_ratio(x1: Fp, x2: Fp, x3: Fp, x4: Fp) -> Option<Fp> {
    Some((x1 - x3) * (x2 - x4) * ((x2 - x3) * (x1 - x4)).inv()?)
}

/// `(x2 - x4)(x1 - x6)(x3 - x5) = (x2 - x6)(x1 - x5)(x3 - x4)`.
fn splitting_condition(r: [Fp; 6]) -> bool {
    let [x1, x2, x3, x4, x5, x6] = r;
    (x2 - x4) * (x1 - x6) * (x3 - x5) == (x2 - x6) * (x1 - x5) * (x3 - x4)
}

/// Output of [`split_genus2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Genus2Split {
    /// Cross-ratio of `(a1, a2, a3, a4)`.
    pub lambda: Fp,
    /// Cross-ratio of `(a1, a2, a3, a5)`.
    pub mu: Fp,
    /// `alpha (a2 - a3)(a1 - a4)(a1 - a5)(a1 - a6)`.
    pub theta: Fp,
    /// Branch using the canonical square root of `lambda (lambda - mu)`.
    pub plus: LegendreCurve,
    pub minus: LegendreCurve,
}

impl Genus2Split {
    pub fn curves(&self) -> [LegendreCurve; 2] {
        [self.plus, self.minus]
    }
}

/// Splits `J(D)` for a genus-2 curve `D: y^2 = alpha (x - a1)...(x - a6)` whose
/// roots satisfy the splitting condition, returning
/// `E+-: s^2 = theta (1 - mu)/(1 - lambda) t (t - 1)(t - L+-)` with
/// `L+- = (1 - lambda)(mu - 2 lambda +- 2 sqrt(lambda^2 - lambda mu)) / (mu - 1)`.
pub fn split_genus2(curve: &HyperellipticModel) -> Result<Genus2Split> {
    let r: [Fp; 6] = curve
        .roots()
        .try_into()
        .map_err(|_| Error::InvalidCurve(format!("expected 6 roots, got {}", curve.degree())))?;
    if !splitting_condition(r) {
        return Err(Error::ConditionFailed(
            "(a2-a4)(a1-a6)(a3-a5) != (a2-a6)(a1-a5)(a3-a4)".into(),
        ));
    }
    let [x1, x2, x3, x4, x5, x6] = r;
    let modulus = curve.modulus();
    let one = modulus.one();
    let two = modulus.elem(2);

    // roots are distinct, so these denominators are nonzero
    let lambda = cross_ratio(x1, x2, x3, x4).expect("distinct roots");
    let mu = cross_ratio(x1, x2, x3, x5).expect("distinct roots");
    let inv_one_minus_lambda = (one - lambda)
        .inv()
        .ok_or(Error::DivisionByZero("lambda = 1"))?;
    let inv_mu_minus_one = (mu - one).inv().ok_or(Error::DivisionByZero("mu = 1"))?;

    let root = (lambda * (lambda - mu)).sqrt()?;
    let theta = curve.alpha() * (x2 - x3) * (x1 - x4) * (x1 - x5) * (x1 - x6);
    let twist = theta * (one - mu) * inv_one_minus_lambda;
    let scale = (one - lambda) * inv_mu_minus_one;
    let plus = LegendreCurve::new(twist, scale * (mu - two * lambda + two * root))?;
    let minus = LegendreCurve::new(twist, scale * (mu - two * lambda - two * root))?;
    Ok(Genus2Split {
        lambda,
        mu,
        theta,
        plus,
        minus,
    })
}

/// Cross-ratios, twist constants and Legendre parameters of `E1..E5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitData {
    pub a: Fp,
    pub b: Fp,
    pub c: Fp,
    pub beta1: Fp,
    pub beta2: Fp,
    pub theta: [Fp; 5],
    pub lambda: [Fp; 5],
}

/// Legendre symbols of the squareness products in terms of the branch points.
/// The second product has two inequivalent forms in circulation; both are
/// reported. Informational only: validity is decided by `a(a - b)` and
/// `a(a - c)` directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquarenessInfo {
    /// `(a1 - a2)(a2 - a4)(a4 - a5)(a5 - a1)`.
    pub first: i8,
    /// `(a1 - a2)(a2 - a4)(a4 - b5)(b5 - a1)`, the form matching `a(a - c)`.
    pub second: i8,
    /// `(a1 - a2)(a2 - a5)(a5 - b5)(b5 - a1)`.
    pub second_alt: i8,
}

impl SquarenessInfo {
    fn of(params: &HoweParams) -> Self {
        let [a1, a2, _, a4, a5, _] = params.a;
        let b5 = params.b[0];
        SquarenessInfo {
            first: ((a1 - a2) * (a2 - a4) * (a4 - a5) * (a5 - a1)).legendre(),
            second: ((a1 - a2) * (a2 - a4) * (a4 - b5) * (b5 - a1)).legendre(),
            second_alt: ((a1 - a2) * (a2 - a5) * (a5 - b5) * (b5 - a1)).legendre(),
        }
    }

    /// The two forms of the second condition disagree.
    pub fn second_forms_disagree(&self) -> bool {
        (self.second == 1) != (self.second_alt == 1)
    }
}

/// A validated parameter set together with its five elliptic factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition {
    params: HoweParams,
    split: SplitData,
    factors: [LegendreCurve; 5],
    squareness: SquarenessInfo,
}

impl Decomposition {
    pub fn params(&self) -> &HoweParams {
        &self.params
    }

    pub fn split(&self) -> &SplitData {
        &self.split
    }

    pub fn factors(&self) -> &[LegendreCurve; 5] {
        &self.factors
    }

    pub fn squareness(&self) -> &SquarenessInfo {
        &self.squareness
    }

    /// Brute-force counts of `C1, C2, C3` and `E1..E5` over the counter's
    /// field, cross-checked through both count formulas.
    pub fn count_with(&self, counter: &impl CurveCounter) -> Result<FieldCounts> {
        let q = counter.q();
        let quotients = [self.params.c1()?, self.params.c2()?, self.params.c3()?]
            .map(|c| counter.count(&c).count());
        let factors = self.factors.map(|e| counter.count_legendre(&e).count());
        let from_quotients = quotients.iter().sum::<u64>() as i64 - 2 * q as i64 - 2;
        let from_factors = factors.iter().sum::<u64>() as i64 - 4 * q as i64 - 4;
        if from_quotients != from_factors || from_factors < 0 {
            return Err(Error::DecompositionMismatch {
                q,
                quotients: from_quotients,
                factors: from_factors,
            });
        }
        Ok(FieldCounts {
            j: counter.field().degree(),
            q,
            quotients: Some(quotients),
            factors,
            curve: from_factors as u64,
            method: CountMethod::BruteForce,
        })
    }

    /// `#C(F_{p^j}) = sum #E_i(F_{p^j}) - 4q - 4` with the factor counts
    /// lifted from `F_p`.
    pub fn count_by_zeta(&self, base: &impl CurveCounter, j: u32) -> Result<FieldCounts> {
        assert_eq!(
            base.field().degree(),
            1,
            "zeta lift needs counts over the prime field"
        );
        self.lift_factor_counts(self.factors.map(|e| base.count_legendre(&e).count()), j)
    }

    fn lift_factor_counts(&self, base_counts: [u64; 5], j: u32) -> Result<FieldCounts> {
        let p = self.params.p();
        let q = self.params.modulus.power(j);
        let mut factors = [0u64; 5];
        for (slot, &n1) in factors.iter_mut().zip(&base_counts) {
            *slot = hasse::zeta_lift(n1, p, j)?;
        }
        let curve = factors.iter().sum::<u64>() - 4 * q - 4;
        Ok(FieldCounts {
            j,
            q,
            quotients: None,
            factors,
            curve,
            method: CountMethod::ZetaLift,
        })
    }

    /// Verdicts through the Hasse-polynomial congruences.
    pub fn verdicts(&self) -> Result<Verdicts> {
        let modulus = self.params.modulus;
        let hasse: Vec<Fp> = self
            .factors
            .iter()
            .map(|e| hasse_poly_eval(modulus, e.lambda()))
            .collect();
        self.verdicts_from(&hasse, &PointCounter::new(modulus, 1)?)
    }

    /// As [`Decomposition::verdicts`] with `H_p` looked up in a table.
    pub fn verdicts_with(&self, table: &HasseTable) -> Result<Verdicts> {
        self.verdicts_using(table, &PointCounter::new(self.params.modulus, 1)?)
    }

    /// As [`Decomposition::verdicts_with`], reusing a counter over `F_p`.
    pub fn verdicts_using(&self, table: &HasseTable, base: &impl CurveCounter) -> Result<Verdicts> {
        assert_eq!(table.modulus(), self.params.modulus);
        let hasse: Vec<Fp> = self.factors.iter().map(|e| table.get(e.lambda())).collect();
        self.verdicts_from(&hasse, base)
    }

    fn verdicts_from(&self, hasse: &[Fp], base: &impl CurveCounter) -> Result<Verdicts> {
        let modulus = self.params.modulus;
        let p = modulus.p();
        let traces: Vec<Fp> = self
            .factors
            .iter()
            .zip(hasse)
            .map(|(e, &h)| trace_from_hasse(e.theta(), h))
            .collect();
        let serre_fp =
            (p >= SERRE_FP_MIN_P).then(|| traces.iter().all(|&t| serre_fp_condition(modulus, t)));
        let maximal_fp2 = hasse.iter().all(Fp::is_zero);
        let serre_fp3 =
            (p >= SERRE_FP3_MIN_P).then(|| traces.iter().all(|&t| serre_fp3_condition(modulus, t)));

        let base_counts = self.factors.map(|e| base.count_legendre(&e).count());
        let mut count_mod4 = true;
        for j in 1..=3 {
            count_mod4 &= self.lift_factor_counts(base_counts, j)?.curve % 4 == 0;
        }
        Ok(Verdicts {
            serre_fp,
            maximal_fp2,
            serre_fp3,
            count_mod4,
        })
    }
}

/// Point counts of every curve in the decomposition over one field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCounts {
    pub j: u32,
    pub q: u64,
    /// `#C1, #C2, #C3`; absent when the factors were zeta-lifted.
    pub quotients: Option<[u64; 3]>,
    pub factors: [u64; 5],
    /// `#C`.
    pub curve: u64,
    pub method: CountMethod,
}

/// Verdicts for the three fields; `None` below the prime threshold of the
/// corresponding criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub serre_fp: Option<bool>,
    pub maximal_fp2: bool,
    pub serre_fp3: Option<bool>,
    /// `#C(F_{p^j}) = 0 (mod 4)` for `j = 1, 2, 3`.
    pub count_mod4: bool,
}

/// Checks every hypothesis on a parameter tuple and, when they all hold,
/// returns the decomposition. All violations found are reported together.
pub fn validate(params: &HoweParams) -> Result<Decomposition, ValidationErrors> {
    let mut errors = Vec::new();
    if params.alpha1.is_zero() {
        errors.push(Violation::ZeroTwist("alpha1"));
    }
    if params.alpha2.is_zero() {
        errors.push(Violation::ZeroTwist("alpha2"));
    }
    let points = params.points();
    for i in 0..points.len() {
        for j in 0..i {
            if points[i] == points[j] {
                errors.push(Violation::Degenerate {
                    first: POINT_NAMES[j],
                    second: POINT_NAMES[i],
                });
            }
        }
    }
    if !errors.is_empty() {
        return Err(ValidationErrors(errors));
    }

    let [a1, a2, a3, a4, a5, a6] = params.a;
    let [b5, b6] = params.b;
    if !splitting_condition(params.a) {
        errors.push(Violation::CrossRatioFailed(1));
    }
    if !splitting_condition([a1, a2, a3, a4, b5, b6]) {
        errors.push(Violation::CrossRatioFailed(2));
    }
    let a = cross_ratio(a1, a2, a3, a4).expect("distinct points");
    let b = cross_ratio(a1, a2, a3, a5).expect("distinct points");
    let c = cross_ratio(a1, a2, a3, b5).expect("distinct points");
    if (a * (a - b)).legendre() != 1 {
        errors.push(Violation::NonSquareObstruction("a(a - b)"));
    }
    if (a * (a - c)).legendre() != 1 {
        errors.push(Violation::NonSquareObstruction("a(a - c)"));
    }
    if !errors.is_empty() {
        return Err(ValidationErrors(errors));
    }

    let degenerate = |index: usize, e: Error| Violation::DegenerateLambda {
        index,
        detail: e.to_string(),
    };
    let c1 = params.c1().expect("checked above");
    let c2 = params.c2().expect("checked above");
    let s1 = split_genus2(&c1).map_err(|e| degenerate(1, e));
    let s2 = split_genus2(&c2).map_err(|e| degenerate(3, e));

    let modulus = params.modulus;
    let theta5 =
        params.alpha1 * params.alpha2 * (a5 - b6) * (a6 - b5).inv().expect("distinct points");
    let lambda5 = (a5 - b5) * (a6 - b6) * ((a5 - b6) * (a6 - b5)).inv().expect("distinct points");
    let e5 = LegendreCurve::new(theta5, lambda5).map_err(|e| degenerate(5, e));

    match (s1, s2, e5) {
        (Ok(s1), Ok(s2), Ok(e5)) => {
            debug_assert_eq!((s1.lambda, s1.mu, s2.mu), (a, b, c));
            let factors = [s1.plus, s1.minus, s2.plus, s2.minus, e5];
            let split = SplitData {
                a,
                b,
                c,
                beta1: s1.theta,
                beta2: s2.theta,
                theta: factors.map(|e| e.theta()),
                lambda: factors.map(|e| e.lambda()),
            };
            debug_assert!(split.theta.iter().all(|t| t.modulus() == modulus));
            Ok(Decomposition {
                params: *params,
                split,
                factors,
                squareness: SquarenessInfo::of(params),
            })
        }
        (s1, s2, e5) => {
            errors.extend(s1.err());
            errors.extend(s2.err());
            errors.extend(e5.err());
            Err(ValidationErrors(errors))
        }
    }
}

pub fn decompose_genus5(params: &HoweParams) -> Result<Decomposition> {
    validate(params).map_err(Error::Validation)
}

/// `#C(F_{p^j})`, computed from the three quotient curves and from the five
/// elliptic factors; errors if the two disagree.
pub fn howe_point_count(params: &HoweParams, j: u32) -> Result<PointCount> {
    let decomposition = decompose_genus5(params)?;
    let counter = PointCounter::new(params.modulus, j)?;
    let counts = decomposition.count_with(&counter)?;
    Ok(PointCount::new(
        counts.q,
        counts.curve,
        CountMethod::Decomposition,
    ))
}

pub fn serre_verdicts(params: &HoweParams) -> Result<Verdicts> {
    decompose_genus5(params)?.verdicts()
}

/// Which field degrees to count, and up to which field size to count point
/// by point instead of zeta-lifting.
#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub degrees: Vec<u32>,
    pub direct_limit: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            degrees: vec![1, 2, 3],
            direct_limit: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub decomposition: Decomposition,
    pub counts: Vec<FieldCounts>,
    pub verdicts: Verdicts,
}

pub fn decomposition_report(
    params: &HoweParams,
    options: &ReportOptions,
) -> Result<DecompositionReport> {
    let decomposition = decompose_genus5(params)?;
    let modulus = params.modulus;
    let base = PointCounter::new(modulus, 1)?;
    let mut counts = Vec::with_capacity(options.degrees.len());
    for &j in &options.degrees {
        if !(1..=3).contains(&j) {
            return Err(Error::UnsupportedDegree(j));
        }
        let q = modulus.power(j);
        let row = if q <= options.direct_limit.min(crate::curves::COUNT_CAP) {
            let counter = if j == 1 {
                base.clone()
            } else {
                PointCounter::new(modulus, j)?
            };
            let direct = decomposition.count_with(&counter)?;
            let lifted = decomposition.count_by_zeta(&base, j)?;
            if direct.curve != lifted.curve {
                return Err(Error::DecompositionMismatch {
                    q,
                    quotients: direct.curve as i64,
                    factors: lifted.curve as i64,
                });
            }
            direct
        } else {
            decomposition.count_by_zeta(&base, j)?
        };
        counts.push(row);
    }
    let verdicts = decomposition.verdicts()?;
    Ok(DecompositionReport {
        decomposition,
        counts,
        verdicts,
    })
}

/// The parameter fields of a report record; also accepted as input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub p: u64,
    pub alpha1: u64,
    pub alpha2: u64,
    pub a: [u64; 6],
    pub b: [u64; 2],
}

impl From<&HoweParams> for ParamsRecord {
    fn from(params: &HoweParams) -> Self {
        let row = params.to_row();
        ParamsRecord {
            p: row[0],
            alpha1: row[1],
            alpha2: row[2],
            a: [row[3], row[4], row[5], row[6], row[7], row[8]],
            b: [row[9], row[10]],
        }
    }
}

impl ParamsRecord {
    pub fn to_params(&self) -> Result<HoweParams> {
        let [a1, a2, a3, a4, a5, a6] = self.a;
        let [b5, b6] = self.b;
        HoweParams::from_row([
            self.p,
            self.alpha1,
            self.alpha2,
            a1,
            a2,
            a3,
            a4,
            a5,
            a6,
            b5,
            b6,
        ])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub theta: u64,
    pub lambda: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub beta1: u64,
    pub beta2: u64,
}

/// JSON shape of a [`DecompositionReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    #[serde(flatten)]
    pub params: ParamsRecord,
    pub factors: Vec<FactorRecord>,
    pub split: SplitRecord,
    pub counts: Vec<FieldCounts>,
    pub verdicts: Verdicts,
    pub squareness: SquarenessInfo,
}

impl From<&DecompositionReport> for ReportRecord {
    fn from(report: &DecompositionReport) -> Self {
        let d = &report.decomposition;
        let s = d.split;
        ReportRecord {
            params: d.params().into(),
            factors: d
                .factors
                .iter()
                .map(|e| FactorRecord {
                    theta: e.theta().value(),
                    lambda: e.lambda().value(),
                })
                .collect(),
            split: SplitRecord {
                a: s.a.value(),
                b: s.b.value(),
                c: s.c.value(),
                beta1: s.beta1.value(),
                beta2: s.beta2.value(),
            },
            counts: report.counts.clone(),
            verdicts: report.verdicts,
            squareness: d.squareness,
        }
    }
}
