//! Genus-5 twisted generalised Howe curves over prime fields.
//!
//! The crate builds the fibre product of two genus-2 curves sharing four
//! branch points, splits its Jacobian into five twisted Legendre elliptic
//! curves, and decides whether the curve reaches the Serre bound over `F_p`
//! or `F_{p^3}`, or is maximal over `F_{p^2}`, using Hasse-polynomial
//! congruences. Every such claim can be cross-checked against brute-force
//! point counts. A parallel search enumerates new parameter tuples.

pub mod curves;
pub mod error;
pub mod field;
pub mod hasse;
pub mod howe;
pub mod search;
pub mod tables;

pub use curves::{
    count_points, curve_trace, CachedCounter, CharacterProfile, CountMethod, CurveCounter,
    HyperellipticModel, PointCount, PointCounter, COUNT_CAP,
};
pub use error::{Error, Result, ValidationErrors, Violation};
pub use field::{
    build_extension, ext_is_square, legendre_symbol, sqrt_mod_p, ExtElem, ExtField, Fp,
    PrimeModulus,
};
pub use hasse::{
    attains_serre_fp, attains_serre_fp3, floor_two_sqrt, hasse_poly_eval, maximal_fp2, mod4_check,
    serre_bound, trace_mod_p, zeta_lift, HasseTable, LegendreCurve, TraceSequence,
};
pub use howe::{
    decompose_genus5, decomposition_report, genus_of_howe, howe_point_count, is_hyperelliptic_howe,
    serre_verdicts, split_genus2, validate, Decomposition, DecompositionReport, FieldCounts,
    HoweParams, ParamsRecord, ReportOptions, ReportRecord, Verdicts,
};
pub use search::{
    enumerate, random_valid_params, solve_linear_root, HitRecord, Pins, SearchConfig, SearchHit,
    SearchStats, Target,
};
pub use tables::{format_row, parse_rows, verify_row, RowCheck, Table, CSV_HEADER};
