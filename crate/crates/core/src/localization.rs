//! Equivariant genera of circle actions with isolated fixed points.
//!
//! A fixed point contributes `ε ∏_j F_H(w_j t)` with `F_H(t) = H(t)/t`, the
//! product running over all of its tangent weights.

mod integral;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::catalog::CharacteristicSeries;
use crate::error::{GenusError, Result};
use crate::scalar::Scalar;
use crate::series::LaurentSeries;

pub(crate) use integral::IntegralSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl TryFrom<i64> for Sign {
    type Error = GenusError;
    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(GenusError::InvalidSign(other)),
        }
    }
}

/// Tangent weights and sign at an isolated fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    weights: Vec<i64>,
    sign: Sign,
}

impl FixedPoint {
    pub fn new(weights: Vec<i64>, sign: Sign) -> Result<Self> {
        if weights.is_empty() {
            return Err(GenusError::EmptyFixedPoints);
        }
        if weights.contains(&0) {
            return Err(GenusError::ZeroWeight);
        }
        Ok(Self { weights, sign })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Numbers of strictly positive and strictly negative weights.
    pub fn sign_counts(&self) -> (usize, usize) {
        let plus = self.weights.iter().filter(|&&w| w > 0).count();
        (plus, self.weights.len() - plus)
    }
}

/// A nonempty list of fixed points sharing the same dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointSet {
    points: Vec<FixedPoint>,
}

impl FixedPointSet {
    pub fn new(points: Vec<FixedPoint>) -> Result<Self> {
        let first = points.first().ok_or(GenusError::EmptyFixedPoints)?;
        let n = first.weights.len();
        if let Some(p) = points.iter().find(|p| p.weights.len() != n) {
            return Err(GenusError::NonUniformDimension(n, p.weights.len()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    /// Complex dimension `n` (weights per point).
    pub fn dimension(&self) -> usize {
        self.points[0].weights.len()
    }

    /// Parses `{"points": [{"weights": [1, -2], "sign": 1}, …]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: FixedPointFile = serde_json::from_str(text).map_err(|e| GenusError::Parse(e.to_string()))?;
        let points = file
            .points
            .into_iter()
            .map(|p| FixedPoint::new(p.weights, Sign::try_from(p.sign)?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn to_json(&self) -> String {
        let points = self
            .points
            .iter()
            .map(|p| PointRecord { weights: p.weights.clone(), sign: p.sign.as_i64() })
            .collect();
        serde_json::to_string_pretty(&FixedPointFile { points }).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointRecord {
    weights: Vec<i64>,
    sign: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixedPointFile {
    points: Vec<PointRecord>,
}

/// Fixed points of the linear action on ℂPⁿ with pairwise distinct weights
/// `w_0, …, w_n`: point `i` has weights `w_k − w_i` for `k ≠ i`, sign `+1`.
pub fn cpn_fixed_points(w: &[i64]) -> Result<FixedPointSet> {
    if w.len() < 2 {
        return Err(GenusError::EmptyFixedPoints);
    }
    let mut seen = BTreeSet::new();
    if let Some(&dup) = w.iter().find(|&&x| !seen.insert(x)) {
        return Err(GenusError::RepeatedWeight(dup));
    }
    let points = (0..w.len())
        .map(|i| {
            let weights = w.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &wk)| wk - w[i]).collect();
            FixedPoint { weights, sign: Sign::Plus }
        })
        .collect();
    Ok(FixedPointSet { points })
}

/// `Σ_i ε_i ∏_j F_H(w_ij t)` as a Laurent series known to `order`.
///
/// Needs `order(H) ≥ order + n`: each factor `F_H` has valuation −1.
pub fn equivariant_genus<F: Scalar>(
    h: &CharacteristicSeries<F>,
    fps: &FixedPointSet,
    order: i64,
) -> Result<LaurentSeries<F>> {
    let n = fps.dimension() as i64;
    let needed = order + n;
    if (h.order() as i64) < needed {
        return Err(GenusError::InsufficientOrder { needed, available: h.order() as i64 });
    }
    // Only degrees up to order+n of H can reach degree `order` of the product.
    let f = LaurentSeries::new(-1, h.series().truncate(needed as usize).coeffs().to_vec());
    let mut total = LaurentSeries::zero(order);
    for p in &fps.points {
        let mut term = LaurentSeries::monomial(F::from_i64(p.sign.as_i64()), 0, order + n);
        for &w in &p.weights {
            term = term.multiply(&f.scale_argument(&F::from_i64(w))?);
        }
        total = &total + &term.truncate(order);
    }
    Ok(total)
}

/// The signed Atiyah–Hirzebruch sum `Σ_i ε_i x^{s_i^+} (−y)^{s_i^-}`, with
/// `0^0 = 1`.
pub fn ahbr_value<F: Scalar>(x: &F, y: &F, fps: &FixedPointSet) -> F {
    let minus_y = -y.clone();
    fps.points.iter().fold(F::zero(), |acc, p| {
        let (plus, minus) = p.sign_counts();
        let term = x.powi(plus as i64) * minus_y.powi(minus as i64);
        match p.sign {
            Sign::Plus => acc + term,
            Sign::Minus => acc - term,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::SeriesSpec;
    use crate::gaussian::GaussianRational as G;
    use crate::PowerSeries;

    fn g(s: &str) -> G {
        s.parse().unwrap()
    }

    #[test]
    fn cpn_weights() {
        let p = cpn_fixed_points(&[1, 0]).unwrap();
        assert_eq!(p.points()[0].weights(), &[-1]);
        assert_eq!(p.points()[1].weights(), &[1]);
        assert!(p.points().iter().all(|x| x.sign() == Sign::Plus));
        let q = cpn_fixed_points(&[0, 1, 2]).unwrap();
        assert_eq!(q.points()[1].weights(), &[-1, 1]);
        assert!(matches!(cpn_fixed_points(&[0, 0, 1]), Err(GenusError::RepeatedWeight(0))));
    }

    #[test]
    fn validation() {
        assert!(matches!(FixedPoint::new(vec![1, 0], Sign::Plus), Err(GenusError::ZeroWeight)));
        assert!(matches!(FixedPointSet::new(vec![]), Err(GenusError::EmptyFixedPoints)));
        let a = FixedPoint::new(vec![1], Sign::Plus).unwrap();
        let b = FixedPoint::new(vec![1, 2], Sign::Plus).unwrap();
        assert!(matches!(FixedPointSet::new(vec![a, b]), Err(GenusError::NonUniformDimension(1, 2))));
        assert!(matches!(
            FixedPointSet::from_json(r#"{"points":[{"weights":[1],"sign":2}]}"#),
            Err(GenusError::InvalidSign(2))
        ));
    }

    #[test]
    fn json_layout() {
        let text = r#"{"points":[{"weights":[1,-2],"sign":1},{"weights":[-1,3],"sign":-1}]}"#;
        let fps = FixedPointSet::from_json(text).unwrap();
        assert_eq!(fps.points()[1].sign(), Sign::Minus);
        assert_eq!(FixedPointSet::from_json(&fps.to_json()).unwrap(), fps);
    }

    #[test]
    fn sign_counting() {
        let c = |w: Vec<i64>| FixedPoint::new(w, Sign::Plus).unwrap().sign_counts();
        assert_eq!(c(vec![-1, 1]), (1, 1));
        assert_eq!(c(vec![1, 2]), (2, 0));
        assert_eq!(c(vec![-2, -1]), (0, 2));
    }

    #[test]
    fn todd_on_projective_line() {
        let h = SeriesSpec::Todd.construct(12).unwrap();
        let s = equivariant_genus(&h, &cpn_fixed_points(&[1, 0]).unwrap(), 10).unwrap();
        assert_eq!(s.valuation(), 0);
        assert!(s.is_constant());
        assert_eq!(s.coeff(0), Some(g("1")));
    }

    #[test]
    fn single_negative_point() {
        let h = SeriesSpec::Euler { a: g("2/3") }.construct(6).unwrap();
        let fps = FixedPointSet::new(vec![FixedPoint::new(vec![1], Sign::Minus).unwrap()]).unwrap();
        let s = equivariant_genus(&h, &fps, 4).unwrap();
        assert_eq!(s.coeff(-1), Some(g("-1")));
        assert_eq!(s.coeff(0), Some(g("-2/3")));
        assert_eq!(s.coeff(1), Some(g("0")));
    }

    #[test]
    fn generic_series_has_genus_constant_term() {
        let coeffs: Vec<G> = (0..=12).map(|k| if k == 0 { g("1") } else { G::ratio(k * k - 3, 2 * k + 1) }).collect();
        let h = CharacteristicSeries::new(PowerSeries::new(coeffs)).unwrap();
        let s = equivariant_genus(&h, &cpn_fixed_points(&[0, 1, 3]).unwrap(), 10).unwrap();
        assert!(s.valuation() >= 0);
        assert_eq!(s.coeff(0).unwrap(), h.h_n(2).unwrap());
        assert!(!s.is_constant());
    }

    #[test]
    fn order_precondition() {
        let h = SeriesSpec::Todd.construct(6).unwrap();
        let r = equivariant_genus(&h, &cpn_fixed_points(&[0, 1, 2]).unwrap(), 5);
        assert!(matches!(r, Err(GenusError::InsufficientOrder { needed: 7, available: 6 })));
    }

    #[test]
    fn integral_kernel_matches_reference() {
        let coeffs: Vec<G> =
            (0..=14).map(|k| if k == 0 { g("1") } else { G::new(G::ratio(k, k + 2).re, G::ratio(1 - k, 3).re) }).collect();
        let generic = CharacteristicSeries::new(PowerSeries::new(coeffs)).unwrap();
        let gt = SeriesSpec::Dab { a: g("3/5"), b: g("-2/7") }.construct(14).unwrap();
        for h in [&generic, &gt] {
            let kernel = IntegralSeries::new(h);
            for w in [vec![0, 3], vec![-2, 5, 1], vec![4, -7, 0, 9], vec![1, 2, 3, 4]] {
                let order = 14 - (w.len() - 1);
                let reference = equivariant_genus(h, &cpn_fixed_points(&w).unwrap(), order as i64).unwrap();
                assert_eq!(kernel.first_nonconstant(&w, order), reference.first_nonconstant().map(|(k, _)| k));
            }
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]

        #[test]
        fn integral_kernel_agrees_on_random_input(
            tail in proptest::collection::vec((-9i64..=9, 1i64..=6, -3i64..=3), 10),
            set in proptest::collection::btree_set(-15i64..=15, 2..=4),
        ) {
            let mut coeffs = vec![g("1")];
            coeffs.extend(tail.into_iter().map(|(n, d, im)| G::new(G::ratio(n, d).re, G::ratio(im, d).re)));
            let h = CharacteristicSeries::new(PowerSeries::new(coeffs)).unwrap();
            let w: Vec<i64> = set.into_iter().collect();
            let order = 10 - (w.len() - 1);
            let reference = equivariant_genus(&h, &cpn_fixed_points(&w).unwrap(), order as i64).unwrap();
            let kernel = IntegralSeries::new(&h).first_nonconstant(&w, order);
            proptest::prop_assert_eq!(kernel, reference.first_nonconstant().map(|(k, _)| k));
        }
    }

    #[test]
    fn signed_formula() {
        let fps = cpn_fixed_points(&[0, 1, 2]).unwrap();
        assert_eq!(ahbr_value(&g("2"), &g("3"), &fps), g("7"));
        assert_eq!(ahbr_value(&g("0"), &g("0"), &fps), g("0"));
        let p = FixedPoint::new(vec![1, -2], Sign::Plus).unwrap();
        let q = FixedPoint::new(vec![1, -2], Sign::Minus).unwrap();
        assert_eq!(ahbr_value(&g("5"), &g("1/3"), &FixedPointSet::new(vec![p, q]).unwrap()), g("0"));
    }
}
