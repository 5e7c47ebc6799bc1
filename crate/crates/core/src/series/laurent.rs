use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{GenusError, Result};
use crate::scalar::Scalar;
use crate::series::PowerSeries;

/// A truncated Laurent series `Σ_{k=valuation}^{order} c_k t^k + O(t^{order+1})`.
///
/// The leading stored coefficient is always nonzero. A series that vanishes
/// on its whole known range stores no coefficients and has
/// `valuation == order + 1`.
#[derive(Clone, Debug)]
pub struct LaurentSeries<F> {
    valuation: i64,
    coeffs: Vec<F>,
    order: i64,
}

impl<F: Scalar> LaurentSeries<F> {
    /// Builds `Σ coeffs[k] t^{valuation+k}`, known exactly up to the last
    /// supplied degree.
    pub fn new(valuation: i64, coeffs: Vec<F>) -> Self {
        let order = valuation + coeffs.len() as i64 - 1;
        Self::with_order(valuation, coeffs, order)
    }

    /// Like [`new`](Self::new) but with an explicit known order. Missing
    /// coefficients up to `order` are zero; extra ones are dropped.
    pub fn with_order(valuation: i64, mut coeffs: Vec<F>, order: i64) -> Self {
        let len = (order - valuation + 1).max(0) as usize;
        coeffs.resize(len, F::zero());
        let mut s = Self { valuation, coeffs, order };
        s.normalize();
        s
    }

    /// The zero series, known up to `order`.
    pub fn zero(order: i64) -> Self {
        Self { valuation: order + 1, coeffs: Vec::new(), order }
    }

    pub fn monomial(c: F, degree: i64, order: i64) -> Self {
        Self::with_order(degree, vec![c], order)
    }

    pub fn from_power(p: &PowerSeries<F>) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.valuation = self.order + 1;
        }
    }

    /// Lowest degree with a nonzero coefficient (or `order + 1` for zero).
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Highest exactly-known degree.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients from `valuation()` to `order()`.
    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, or `None` beyond the known order.
    pub fn coeff(&self, k: i64) -> Option<F> {
        if k > self.order {
            None
        } else if k < self.valuation {
            Some(F::zero())
        } else {
            Some(self.coeffs[(k - self.valuation) as usize].clone())
        }
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let keep = (order - self.valuation + 1).max(0) as usize;
        Self::with_order(self.valuation, self.coeffs[..keep.min(self.coeffs.len())].to_vec(), order)
    }

    /// Converts to a power series, provided no negative-degree term survives
    /// and the order is non-negative.
    pub fn to_power_series(&self) -> Option<PowerSeries<F>> {
        if self.order < 0 || (self.valuation < 0 && !self.is_zero()) {
            return None;
        }
        let coeffs = (0..=self.order).map(|k| self.coeff(k).unwrap()).collect();
        Some(PowerSeries::new(coeffs))
    }

    /// First degree in the shared known range where the two series differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<i64> {
        let lo = self.valuation.min(other.valuation);
        let hi = self.order.min(other.order);
        (lo..=hi).find(|&k| self.coeff(k) != other.coeff(k))
    }

    /// `true` when the series is a constant on its known range.
    pub fn is_constant(&self) -> bool {
        self.first_nonconstant().is_none()
    }

    /// First degree `k != 0` carrying a nonzero coefficient.
    pub fn first_nonconstant(&self) -> Option<(i64, F)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (self.valuation + i as i64, c))
            .find(|(k, c)| *k != 0 && !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::with_order(self.valuation, self.coeffs.iter().map(|x| x.clone() * c).collect(), self.order)
    }

    /// Product, exact on `min(order(a) + val(b), order(b) + val(a))`.
    pub fn multiply(&self, other: &Self) -> Self {
        let valuation = self.valuation + other.valuation;
        let order = (self.order + other.valuation).min(other.order + self.valuation);
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let len = (order - valuation + 1).max(0) as usize;
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            let lo = k.saturating_sub(other.coeffs.len() - 1);
            let hi = k.min(self.coeffs.len() - 1);
            let mut acc = F::zero();
            for i in lo..=hi {
                acc = acc + self.coeffs[i].clone() * &other.coeffs[k - i];
            }
            out.push(acc);
        }
        Self::with_order(valuation, out, order)
    }

    /// Quotient `self / divisor`, known to the smaller of the two relative
    /// precisions.
    pub fn divide(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(GenusError::DivisionByZeroSeries);
        }
        let valuation = self.valuation - divisor.valuation;
        let precision = (self.order - self.valuation).min(divisor.order - divisor.valuation);
        let order = valuation + precision;
        if self.is_zero() {
            return Ok(Self::zero(order));
        }
        let len = (precision + 1) as usize;
        let lead = &divisor.coeffs[0];
        let mut q: Vec<F> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k.min(divisor.coeffs.len() - 1) {
                acc = acc - divisor.coeffs[j].clone() * &q[k - j];
            }
            q.push(acc / lead);
        }
        Ok(Self::with_order(valuation, q, order))
    }

    /// Termwise derivative; the order drops by one.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.clone() * &F::from_i64(self.valuation + i as i64))
            .collect();
        Self::with_order(self.valuation - 1, coeffs, self.order - 1)
    }

    /// Substitution `t ↦ w·t`.
    pub fn scale_argument(&self, w: &F) -> Result<Self> {
        if w.is_zero() {
            if self.valuation < 0 && !self.is_zero() {
                return Err(GenusError::ZeroScale);
            }
            let c0 = self.coeff(0).unwrap_or_else(F::zero);
            return Ok(Self::with_order(0, vec![c0], self.order));
        }
        let mut power = w.powi(self.valuation);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.clone() * &power);
            power = power * w;
        }
        Ok(Self::with_order(self.valuation, coeffs, self.order))
    }

    /// `f(-t)`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.valuation + i as i64) % 2 == 0 { c.clone() } else { -c.clone() })
            .collect();
        Self::with_order(self.valuation, coeffs, self.order)
    }

    fn combine(&self, other: &Self, op: impl Fn(F, F) -> F) -> Self {
        let order = self.order.min(other.order);
        let valuation = self.valuation.min(other.valuation).min(order + 1);
        let coeffs = (valuation..=order)
            .map(|k| op(self.coeff(k).unwrap(), other.coeff(k).unwrap()))
            .collect();
        Self::with_order(valuation, coeffs, order)
    }
}

/// Coefficientwise equality on the intersection of the known ranges.
impl<F: Scalar> PartialEq for LaurentSeries<F> {
    fn eq(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }
}

impl<'a, F: Scalar> Add<&'a LaurentSeries<F>> for &'a LaurentSeries<F> {
    type Output = LaurentSeries<F>;
    fn add(self, rhs: &LaurentSeries<F>) -> LaurentSeries<F> {
        self.combine(rhs, |a, b| a + b)
    }
}

impl<'a, F: Scalar> Sub<&'a LaurentSeries<F>> for &'a LaurentSeries<F> {
    type Output = LaurentSeries<F>;
    fn sub(self, rhs: &LaurentSeries<F>) -> LaurentSeries<F> {
        self.combine(rhs, |a, b| a - b)
    }
}

impl<'a, F: Scalar> Mul<&'a LaurentSeries<F>> for &'a LaurentSeries<F> {
    type Output = LaurentSeries<F>;
    fn mul(self, rhs: &LaurentSeries<F>) -> LaurentSeries<F> {
        self.multiply(rhs)
    }
}

impl<F: Scalar> Neg for &LaurentSeries<F> {
    type Output = LaurentSeries<F>;
    fn neg(self) -> LaurentSeries<F> {
        self.scale(&-F::one())
    }
}

impl<F: Scalar> fmt::Display for LaurentSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.valuation + i as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::GaussianRational as G;

    fn q(n: i64, d: i64) -> G {
        G::ratio(n, d)
    }

    fn s(valuation: i64, cs: &[(i64, i64)]) -> LaurentSeries<G> {
        LaurentSeries::new(valuation, cs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn polynomial_product() {
        let (a, b) = (q(2, 3), q(-5, 7));
        let x = LaurentSeries::with_order(0, vec![G::from(1), a.clone()], 6);
        let y = LaurentSeries::with_order(0, vec![G::from(1), b.clone()], 6);
        let p = x.multiply(&y);
        assert_eq!(p.order(), 6);
        assert_eq!(p.coeff(1), Some(&a + &b));
        assert_eq!(p.coeff(2), Some(&a * &b));
        assert_eq!(p.coeff(3), Some(G::zero()));
    }

    #[test]
    fn valuation_cancellation() {
        let inv = LaurentSeries::monomial(G::from(1), -1, 10);
        let t = LaurentSeries::monomial(G::from(1), 1, 10);
        let p = inv.multiply(&t);
        assert_eq!(p.valuation(), 0);
        assert_eq!(p.coeff(0), Some(G::from(1)));
        assert_eq!(p.order(), 9);
    }

    #[test]
    fn order_bookkeeping() {
        // (1/t + O(t^3)) * (t^2 + O(t^5)): order min(3+2, 5-1) = 4
        let a = LaurentSeries::with_order(-1, vec![G::from(1)], 3);
        let b = LaurentSeries::with_order(2, vec![G::from(1)], 5);
        let p = a.multiply(&b);
        assert_eq!((p.valuation(), p.order()), (1, 4));
    }

    #[test]
    fn geometric_series() {
        let one = LaurentSeries::with_order(0, vec![G::from(1)], 4);
        let d = s(0, &[(1, 1), (-1, 1)]).truncate(4);
        let d = LaurentSeries::with_order(0, d.coeffs().to_vec(), 4);
        let q = one.divide(&d).unwrap();
        assert_eq!(q.order(), 4);
        for k in 0..=4 {
            assert_eq!(q.coeff(k), Some(G::from(1)));
        }
    }

    #[test]
    fn divide_by_zero_series() {
        let a = s(0, &[(1, 1)]);
        assert!(matches!(a.divide(&LaurentSeries::zero(5)), Err(GenusError::DivisionByZeroSeries)));
    }

    #[test]
    fn derivative_of_inverse() {
        let d = LaurentSeries::monomial(G::from(1), -1, 4).derivative();
        assert_eq!(d.valuation(), -2);
        assert_eq!(d.coeff(-2), Some(G::from(-1)));
        assert_eq!(d.order(), 3);
        let p = s(0, &[(1, 1), (3, 2), (5, 7)]).derivative();
        assert_eq!(p.coeffs(), &[q(3, 2), q(10, 7)]);
    }

    #[test]
    fn scaling_rules() {
        let f = s(-1, &[(1, 1), (3, 4), (1, 5)]);
        assert_eq!(f.scale_argument(&G::from(1)).unwrap(), f);
        let g = f.scale_argument(&G::from(2)).unwrap();
        assert_eq!(g.coeff(-1), Some(q(1, 2)));
        assert_eq!(g.coeff(1), Some(q(2, 5)));
        let r = f.scale_argument(&G::from(-1)).unwrap();
        assert_eq!(r, f.reflect());
        assert_eq!(r.coeff(-1), Some(q(-1, 1)));
        assert_eq!(r.coeff(0), Some(q(3, 4)));
        assert!(matches!(f.scale_argument(&G::zero()), Err(GenusError::ZeroScale)));
        let p = s(0, &[(2, 1), (1, 1)]).scale_argument(&G::zero()).unwrap();
        assert_eq!(p.coeff(0), Some(q(2, 1)));
        assert_eq!(p.coeff(1), Some(G::zero()));
        assert_eq!(p.order(), 1);
    }

    #[test]
    fn addition_cancels_leading_terms() {
        let a = s(-1, &[(1, 1), (1, 1), (2, 1)]);
        let b = s(-1, &[(-1, 1), (0, 1), (1, 1), (7, 1)]);
        let c = &a + &b;
        assert_eq!((c.valuation(), c.order()), (0, 1));
        assert_eq!(c.coeffs(), &[q(1, 1), q(3, 1)]);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn equality_on_shared_range() {
        let a = s(0, &[(1, 1), (2, 1)]);
        let b = s(0, &[(1, 1), (2, 1), (9, 1)]);
        assert_eq!(a, b);
        assert_eq!(b.first_mismatch(&s(0, &[(1, 1), (3, 1)])), Some(1));
    }
}
