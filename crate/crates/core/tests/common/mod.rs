#![allow(dead_code)]

use howe_core::{ExtField, HyperellipticModel, LegendreCurve, PrimeModulus};

/// Counts pairs (x, y) over F_p with y^2 = alpha f(x) by trying every y,
/// plus the points at infinity.
pub fn naive_count_fp(model: &HyperellipticModel) -> u64 {
    let p = model.modulus().p();
    let alpha = model.alpha().value();
    let roots: Vec<u64> = model.roots().iter().map(|r| r.value()).collect();
    let mut affine = 0;
    for x in 0..p {
        let f = roots
            .iter()
            .fold(alpha, |acc, &r| acc * ((x + p - r) % p) % p);
        affine += (0..p).filter(|&y| y * y % p == f).count() as u64;
    }
    affine + naive_infinity(model.degree(), (0..p).any(|y| y * y % p == alpha))
}

/// Same over F_{p^j}, with field elements enumerated by index.
pub fn naive_count(model: &HyperellipticModel, j: u32) -> u64 {
    if j == 1 {
        return naive_count_fp(model);
    }
    let field = ExtField::of_degree(model.modulus(), j).unwrap();
    let squares: Vec<_> = field.elements().map(|y| field.mul(y, y)).collect();
    let alpha = field.embed(model.alpha());
    let mut affine = 0;
    for x in field.elements() {
        let mut f = alpha;
        for r in model.roots() {
            f = field.mul(f, field.sub(x, field.embed(*r)));
        }
        affine += squares.iter().filter(|&&s| s == f).count() as u64;
    }
    affine + naive_infinity(model.degree(), squares.contains(&alpha))
}

fn naive_infinity(degree: usize, alpha_square: bool) -> u64 {
    match (degree % 2, alpha_square) {
        (1, _) => 1,
        (_, true) => 2,
        _ => 0,
    }
}

pub fn naive_legendre(curve: &LegendreCurve, j: u32) -> u64 {
    naive_count(&curve.into(), j)
}

pub fn odd_primes_up_to(n: u64) -> Vec<u64> {
    (3..=n).filter(|&p| PrimeModulus::new(p).is_ok()).collect()
}
