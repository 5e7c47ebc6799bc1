//! Denominator-free evaluation of ℂPᵐ localization sums.
//!
//! With `H = (1/D) Σ N_k t^k` over the Gaussian integers,
//! `t^m D^m M · S_H(w; t) = Σ_i ε_i (M/π_i) Π_j N(w_ij t)` where
//! `π_i = Π_j w_ij` and `M = lcm |π_i|`. Everything on the right is integral,
//! so constancy of `S_H` reduces to vanishing of integer coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::catalog::CharacteristicSeries;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

trait Ring: Clone + PartialEq {
    fn nil() -> Self;
    fn vanishes(&self) -> bool;
    fn add_mul(&mut self, a: &Self, b: &Self);
    fn mul_int(&self, k: &BigInt) -> Self;
    fn add_assign(&mut self, other: &Self);
}

impl Ring for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn mul_int(&self, k: &BigInt) -> Self {
        self * k
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}

impl Ring for GaussInt {
    fn nil() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::zero() }
    }
    fn vanishes(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.re += &a.re * &b.re - &a.im * &b.im;
        self.im += &a.re * &b.im + &a.im * &b.re;
    }
    fn mul_int(&self, k: &BigInt) -> Self {
        GaussInt { re: &self.re * k, im: &self.im * k }
    }
    fn add_assign(&mut self, other: &Self) {
        self.re += &other.re;
        self.im += &other.im;
    }
}

/// `H` with denominators cleared, ready for repeated localization sums.
pub(crate) struct IntegralSeries {
    coeffs: Coeffs,
}

enum Coeffs {
    Real(Vec<BigInt>),
    Complex(Vec<GaussInt>),
}

impl IntegralSeries {
    pub fn new<F: Scalar>(h: &CharacteristicSeries<F>) -> Self {
        let gs: Vec<_> = h.series().coeffs().iter().map(|c| c.to_gaussian()).collect();
        let denom = gs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.re.denom()).lcm(c.im.denom()));
        let scale = |q: &crate::scalar::Rational| (q * &denom).to_integer();
        let coeffs = if gs.iter().all(|c| c.im.is_zero()) {
            Coeffs::Real(gs.iter().map(|c| scale(&c.re)).collect())
        } else {
            Coeffs::Complex(gs.iter().map(|c| GaussInt { re: scale(&c.re), im: scale(&c.im) }).collect())
        };
        Self { coeffs }
    }

    /// First degree `k ≠ 0` (up to `order`) where `S_H(weights; t)` has a
    /// nonzero coefficient, or `None` when the sum is constant. Needs
    /// `order(H) ≥ order + m` for `m + 1` weights.
    pub fn first_nonconstant(&self, weights: &[i64], order: usize) -> Option<i64> {
        match &self.coeffs {
            Coeffs::Real(c) => sum_cpn(c, weights, order),
            Coeffs::Complex(c) => sum_cpn(c, weights, order),
        }
    }
}

fn sum_cpn<R: Ring>(n: &[R], weights: &[i64], order: usize) -> Option<i64> {
    let m = weights.len() - 1;
    let len = order + m + 1;
    assert!(n.len() >= len, "series order too small for this tuple");
    let points: Vec<Vec<i64>> = (0..=m)
        .map(|i| weights.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &w)| w - weights[i]).collect())
        .collect();
    let pis: Vec<BigInt> = points.iter().map(|p| p.iter().map(|&w| BigInt::from(w)).product()).collect();
    let lcm = pis.iter().fold(BigInt::one(), |acc, p| acc.lcm(p));
    let mut total = vec![R::nil(); len];
    for (point, pi) in points.iter().zip(&pis) {
        let mut prod: Vec<R> = n[..len].to_vec();
        scale_argument(&mut prod, point[0]);
        for &w in &point[1..] {
            let mut factor = n[..len].to_vec();
            scale_argument(&mut factor, w);
            prod = convolve(&prod, &factor, len);
        }
        let weight = &lcm / pi;
        for (t, p) in total.iter_mut().zip(&prod) {
            t.add_assign(&p.mul_int(&weight));
        }
    }
    total
        .iter()
        .enumerate()
        .find(|&(k, c)| k != m && !c.vanishes())
        .map(|(k, _)| k as i64 - m as i64)
}

fn scale_argument<R: Ring>(coeffs: &mut [R], w: i64) {
    let w = BigInt::from(w);
    let mut power = BigInt::one();
    for c in coeffs.iter_mut() {
        *c = c.mul_int(&power);
        power *= &w;
    }
}

fn convolve<R: Ring>(a: &[R], b: &[R], len: usize) -> Vec<R> {
    let mut out = vec![R::nil(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.vanishes() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j].add_mul(x, y);
        }
    }
    out
}
