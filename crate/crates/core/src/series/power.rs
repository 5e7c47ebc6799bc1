use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};



use crate::error::{GenusError, Result};
use crate::scalar::Scalar;
use crate::series::LaurentSeries;

/// A truncated power series `Σ_{k=0}^{order} c_k t^k + O(t^{order+1})`.
#[derive(Clone, Debug)]
pub struct PowerSeries<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> PowerSeries<F> {
    /// Panics on an empty coefficient list: a power series always knows its
    /// constant term.
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "power series needs at least a constant term");
        Self { coeffs }
    }

    /// Pads (with zeros) or truncates `coeffs` to exactly `order + 1` terms.
    pub fn with_order(mut coeffs: Vec<F>, order: usize) -> Self {
        coeffs.resize(order + 1, F::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::with_order(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::with_order(vec![F::one()], order)
    }

    /// The series `t`, known to `order`.
    pub fn identity(order: usize) -> Self {
        Self::with_order(vec![F::zero(), F::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `t^k`. Panics beyond the known order.
    pub fn coeff(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::with_order(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    /// Raises the known order by declaring every missing coefficient zero.
    /// Only sound for series that are exact polynomials.
    pub fn extend_exact(&self, order: usize) -> Self {
        Self::with_order(self.coeffs.clone(), order.max(self.order()))
    }

    pub fn to_laurent(&self) -> LaurentSeries<F> {
        LaurentSeries::from_power(self)
    }

    /// First degree on the shared range where the coefficients differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let hi = self.order().min(other.order());
        (0..=hi).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    /// First odd degree with a nonzero coefficient.
    pub fn first_odd_term(&self) -> Option<usize> {
        (1..=self.order()).step_by(2).find(|&k| !self.coeffs[k].is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x.clone() * c).collect() }
    }

    /// Truncated product known to `min(order, self.order(), other.order())`.
    pub fn mul_to(&self, other: &Self, order: usize) -> Self {
        let n = order.min(self.order()).min(other.order());
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = F::zero();
            for i in 0..=k {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                acc = acc + self.coeffs[i].clone() * &other.coeffs[k - i];
            }
            out.push(acc);
        }
        Self { coeffs: out }
    }

    /// `self^exp` known to `min(order, self.order())`.
    pub fn pow_to(&self, exp: u32, order: usize) -> Self {
        let n = order.min(self.order());
        let mut result = Self::one(n);
        for _ in 0..exp {
            result = result.mul_to(self, n);
        }
        result
    }

    /// Quotient of power series; the divisor needs a nonzero constant term.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        if divisor.coeffs[0].is_zero() {
            return Err(GenusError::DivisionByZeroSeries);
        }
        let q = self.to_laurent().divide(&divisor.to_laurent())?;
        Ok(q.to_power_series().expect("valuation is non-negative"))
    }

    /// `t ↦ w·t`.
    pub fn scale_argument(&self, w: &F) -> Self {
        let mut power = F::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.clone() * &power);
            power = power * w;
        }
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=self.order()).map(|k| self.coeffs[k].clone() * &F::from_i64(k as i64)).collect();
        Self { coeffs }
    }

    /// `self(inner(t))`. Coefficient `k` of the result only depends on
    /// coefficients `≤ k` of both arguments.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(GenusError::NonzeroConstantTerm);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::with_order(vec![self.coeffs[n].clone()], n);
        for j in (0..n).rev() {
            acc = acc.mul_to(&inner, n);
            acc.coeffs[0] = acc.coeffs[0].clone() + &self.coeffs[j];
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g(t)) = g(self(t)) = t`, by
    /// Newton iteration `g ← g − (f∘g − t) / (f'∘g)`.
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() || self.order() == 0 || self.coeffs[1].is_zero() {
            return Err(GenusError::NonInvertibleLinearTerm);
        }
        let n = self.order();
        let t = Self::identity(n);
        // f' is known to n-1 only; its degree-n slot never reaches the
        // corrected coefficients of g.
        let df = self.derivative().extend_exact(n);
        let mut g = Self::with_order(vec![F::zero(), F::one() / &self.coeffs[1]], n);
        // Quadratic convergence: ⌈log₂(n+1)⌉ + 1 steps always suffice.
        for _ in 0..=usize::BITS - n.leading_zeros() + 1 {
            let residual = &self.compose(&g)? - &t;
            if residual.coeffs.iter().all(|c| c.is_zero()) {
                return Ok(g);
            }
            let slope = df.compose(&g)?;
            g = &g - &residual.div(&slope)?;
        }
        unreachable!("Newton reversion did not converge")
    }

    /// `exp(self)` via `g' = f' g`. Requires a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(GenusError::ExpPrecondition);
        }
        let n = self.order();
        let mut g = Vec::with_capacity(n + 1);
        g.push(F::one());
        for m in 1..=n {
            let mut acc = F::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc + self.coeffs[k].clone() * &F::from_i64(k as i64) * &g[m - k];
            }
            g.push(acc / F::from_i64(m as i64));
        }
        Ok(Self { coeffs: g })
    }

    /// `log(self)` via `f' = g'/g`. Requires a unit constant term.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(GenusError::LogPrecondition);
        }
        let n = self.order();
        let mut f: Vec<F> = Vec::with_capacity(n + 1);
        f.push(F::zero());
        for m in 1..=n {
            let mut acc = self.coeffs[m].clone() * &F::from_i64(m as i64);
            for (k, fk) in f.iter().enumerate().skip(1) {
                acc = acc - fk.clone() * &F::from_i64(k as i64) * &self.coeffs[m - k];
            }
            f.push(acc / F::from_i64(m as i64));
        }
        Ok(Self { coeffs: f })
    }
}

/// Coefficientwise equality on the shared known range.
impl<F: Scalar> PartialEq for PowerSeries<F> {
    fn eq(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }
}

impl<'a, F: Scalar> Add<&'a PowerSeries<F>> for &'a PowerSeries<F> {
    type Output = PowerSeries<F>;
    fn add(self, rhs: &PowerSeries<F>) -> PowerSeries<F> {
        let n = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..=n).map(|k| self.coeffs[k].clone() + &rhs.coeffs[k]).collect() }
    }
}

impl<'a, F: Scalar> Sub<&'a PowerSeries<F>> for &'a PowerSeries<F> {
    type Output = PowerSeries<F>;
    fn sub(self, rhs: &PowerSeries<F>) -> PowerSeries<F> {
        let n = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..=n).map(|k| self.coeffs[k].clone() - &rhs.coeffs[k]).collect() }
    }
}

impl<'a, F: Scalar> Mul<&'a PowerSeries<F>> for &'a PowerSeries<F> {
    type Output = PowerSeries<F>;
    fn mul(self, rhs: &PowerSeries<F>) -> PowerSeries<F> {
        self.mul_to(rhs, usize::MAX)
    }
}

impl<F: Scalar> Neg for &PowerSeries<F> {
    type Output = PowerSeries<F>;
    fn neg(self) -> PowerSeries<F> {
        self.scale(&-F::one())
    }
}

impl<F: Scalar> fmt::Display for PowerSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_laurent().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussianRational as G;

    fn q(n: i64, d: i64) -> G {
        G::ratio(n, d)
    }

    fn exp_t(order: usize) -> PowerSeries<G> {
        PowerSeries::identity(order).exp().unwrap()
    }

    #[test]
    fn exp_of_zero_and_t() {
        assert_eq!(PowerSeries::<G>::zero(5).exp().unwrap(), PowerSeries::one(5));
        let e = exp_t(4);
        assert_eq!(e.coeffs(), &[q(1, 1), q(1, 1), q(1, 2), q(1, 6), q(1, 24)]);
    }

    #[test]
    fn log_of_todd_prefix() {
        let g = PowerSeries::new(vec![q(1, 1), q(1, 2), q(1, 12)]);
        // log(1+u) = u - u²/2: u = t/2 + t²/12 gives t/2 + (1/12 - 1/8) t²
        assert_eq!(g.log().unwrap().coeffs(), &[q(0, 1), q(1, 2), q(-1, 24)]);
    }

    #[test]
    fn preconditions() {
        let one = PowerSeries::<G>::one(3);
        assert!(matches!(one.exp(), Err(GenusError::ExpPrecondition)));
        assert!(matches!(PowerSeries::<G>::zero(3).log(), Err(GenusError::LogPrecondition)));
        assert!(matches!(one.compose(&one), Err(GenusError::NonzeroConstantTerm)));
        let quad = PowerSeries::new(vec![q(0, 1), q(0, 1), q(1, 1)]);
        assert!(matches!(quad.reversion(), Err(GenusError::NonInvertibleLinearTerm)));
    }

    #[test]
    fn compose_with_identity_and_negation() {
        let outer = PowerSeries::new(vec![q(1, 1), q(1, 1), q(1, 1)]);
        assert_eq!(outer.compose(&PowerSeries::identity(2)).unwrap(), outer);
        let minus_t = PowerSeries::identity(6).scale(&q(-1, 1));
        let e = exp_t(6).compose(&minus_t).unwrap();
        assert_eq!(e, minus_t.exp().unwrap());
        assert_eq!(e.coeff(3), &q(-1, 6));
    }

    #[test]
    fn novikov_identity_for_todd() {
        let n = 10;
        // -log(1 - u) = Σ u^k / k
        let minus_log = PowerSeries::new((0..=n).map(|k| if k == 0 { q(0, 1) } else { q(1, k as i64) }).collect());
        let inner = &PowerSeries::one(n) - &exp_t(n).scale_argument(&q(-1, 1));
        assert_eq!(minus_log.compose(&inner).unwrap(), PowerSeries::identity(n));
    }

    #[test]
    fn reversion_examples() {
        let t = PowerSeries::<G>::identity(8);
        assert_eq!(t.reversion().unwrap(), t);

        // t / (1 - a t)  ↦  t / (1 + a t)
        let a = q(3, 5);
        let f = PowerSeries::new((0..=8).map(|k| if k == 0 { q(0, 1) } else { a.powi(k - 1) }).collect());
        let g = f.reversion().unwrap();
        let expected: Vec<G> = (0..=8).map(|k| if k == 0 { q(0, 1) } else { (-a.clone()).powi(k - 1) }).collect();
        assert_eq!(g.coeffs(), expected.as_slice());

        // 1 - e^{-t}  ↦  -log(1 - t)
        let f = &PowerSeries::one(8) - &exp_t(8).scale_argument(&q(-1, 1));
        let g = f.reversion().unwrap();
        for k in 1..=8 {
            assert_eq!(g.coeff(k), &q(1, k as i64));
        }
    }

    #[test]
    fn division_recovers_factor() {
        let a = PowerSeries::new(vec![q(2, 1), q(-1, 3), q(5, 7), q(0, 1)]);
        let b = PowerSeries::new(vec![q(1, 1), q(4, 1), q(-2, 9), q(1, 2)]);
        assert_eq!((&a * &b).div(&b).unwrap(), a);
    }
}
