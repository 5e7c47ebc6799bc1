//! Algebraic rigidity and the Generalized Todd classification.
//!
//! A series is tested three ways: by sampling the localization sum over ℂPᵐ
//! weight tuples ([`ar_check`]), through the functional equations satisfied
//! by `F_H` ([`ar1_residual`], [`functional_residual`]), and by reconstructing
//! the unique solution of the Riccati equation
//! `f' = −f² + h₁f + h₂ − h₁²` with `f = 1/t + r₁ + …` ([`reconstruct`]).

use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{CharacteristicSeries, SeriesSpec};
use crate::error::{GenusError, Result};
use crate::gaussian::GaussianRational;
use crate::localization::{cpn_fixed_points, equivariant_genus, IntegralSeries};
use crate::scalar::Scalar;
use crate::series::{LaurentSeries, PowerSeries};

type G = GaussianRational;

fn require<F: Scalar>(h: &CharacteristicSeries<F>, needed: usize) -> Result<()> {
    if h.order() < needed {
        return Err(GenusError::InsufficientOrder { needed: needed as i64, available: h.order() as i64 });
    }
    Ok(())
}

/// `f(t) + f(−t) − h₁` for `f = F_H`, known to `order`.
///
/// The degree-k coefficient is `2 r_{k+1}` for even `k > 0`, so this needs
/// `order(H) ≥ order + 1`.
pub fn ar1_residual<F: Scalar>(h: &CharacteristicSeries<F>, order: usize) -> Result<PowerSeries<F>> {
    require(h, order + 1)?;
    let f = LaurentSeries::new(-1, h.series().truncate(order + 1).coeffs().to_vec());
    let h1 = LaurentSeries::monomial(h.r(1).clone() * F::from_i64(2), 0, order as i64);
    let sum = &(&f + &f.reflect()) - &h1;
    Ok(sum.to_power_series().expect("principal parts cancel").truncate(order))
}

/// `F_H(−t)² + h₁F_H(t) + F_H'(t) − h₂`, known to `order`.
pub fn functional_residual<F: Scalar>(h: &CharacteristicSeries<F>, order: usize) -> Result<LaurentSeries<F>> {
    require(h, order + 2)?;
    let f = LaurentSeries::new(-1, h.series().truncate(order + 2).coeffs().to_vec());
    let h1 = h.r(1).clone() * F::from_i64(2);
    let h2 = h.h_n(2)?;
    let reflected = f.reflect();
    let lhs = &(&reflected.multiply(&reflected) + &f.scale(&h1)) + &f.derivative();
    Ok((&lhs - &LaurentSeries::monomial(h2, 0, order as i64)).truncate(order as i64))
}

/// The unique `H = t·f` whose `f = 1/t + r₁ + r₂t + …` solves
/// `f' = −f² + h₁f + h₂ − h₁²` with `h₁ = 2r₁`.
pub fn reconstruct<F: Scalar>(r1: &F, h2: &F, order: usize) -> PowerSeries<F> {
    assert!(order >= 2, "reconstruction needs order >= 2");
    let h1 = r1.clone() * F::from_i64(2);
    let forcing = h2.clone() - h1.clone() * &h1;
    // f[k] is the coefficient of t^k in f, k ≥ 0; f_{-1} = 1. Matching t^m:
    // (m+3) f_{m+1} = −Σ_{i=0}^{m} f_i f_{m−i} + h₁ f_m + [m = 0](h₂ − h₁²)
    let mut f: Vec<F> = vec![r1.clone()];
    for m in 0..order - 1 {
        let mut acc = h1.clone() * &f[m];
        for i in 0..=m {
            acc = acc - f[i].clone() * &f[m - i];
        }
        if m == 0 {
            acc = acc + &forcing;
        }
        f.push(acc / F::from_i64(m as i64 + 3));
    }
    let mut coeffs = vec![F::one()];
    coeffs.extend(f);
    PowerSeries::new(coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GtCase {
    /// `D_{√d, r₁}`, `d ≠ 0`.
    D,
    /// `E_{r₁} = 1 + r₁t`, `d = 0`.
    E,
    NotGT,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientedKind {
    /// `a t coth(a t)`
    Coth,
    /// `a t cot(a t)`
    Cot,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrientedForm {
    pub kind: OrientedKind,
    pub a: G,
}

/// Verdict of [`classify`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GtReport {
    pub is_gt: bool,
    pub case: GtCase,
    /// Number of coefficients compared.
    pub order: usize,
    pub r1: G,
    pub h2: G,
    /// `h₂ − 3r₁²`.
    pub d: G,
    /// Principal square root of `d`, when it lies in ℚ(i).
    pub sqrt_d: Option<G>,
    /// `true` when `d` is a negative rational, i.e. the series is a real
    /// `G_{a,b}` with `a = √(−d)`.
    pub d_negative_rational: bool,
    /// `dab:a=√d,b=r₁` (or `euler:a=r₁` in case E).
    pub closed_form: Option<SeriesSpec>,
    /// `gab:a=√(−d),b=r₁` when `d` is a negative rational square.
    pub g_form: Option<SeriesSpec>,
    /// First degree where `H` leaves the reconstructed GT series.
    pub witness: Option<usize>,
    /// Filled by [`classify_oriented`].
    pub oriented: Option<OrientedForm>,
}

/// Decides whether `H` is a GT series on its full known order.
pub fn classify(h: &CharacteristicSeries<G>) -> Result<GtReport> {
    require(h, 4)?;
    let order = h.order();
    let r1 = h.r(1).clone();
    let h2 = h.h_n(2)?;
    let d = h2.clone() - G::from(3) * &r1 * &r1;
    let rebuilt = reconstruct(&r1, &h2, order);
    let witness = rebuilt.first_mismatch(h.series());
    let is_gt = witness.is_none();
    let sqrt_d = d.sqrt();
    let d_negative_rational = d.as_real().is_some_and(|q| q < &num_rational::BigRational::zero());
    let case = match (is_gt, d.is_zero()) {
        (false, _) => GtCase::NotGT,
        (true, true) => GtCase::E,
        (true, false) => GtCase::D,
    };
    let closed_form = match case {
        GtCase::NotGT => None,
        GtCase::E => Some(SeriesSpec::Euler { a: r1.clone() }),
        GtCase::D => sqrt_d.clone().map(|a| SeriesSpec::Dab { a, b: r1.clone() }),
    };
    let g_form = if is_gt && d_negative_rational {
        (-d.clone()).sqrt().map(|a| SeriesSpec::Gab { a, b: r1.clone() })
    } else {
        None
    };
    Ok(GtReport {
        is_gt,
        case,
        order,
        r1,
        h2,
        d,
        sqrt_d,
        d_negative_rational,
        closed_form,
        g_form,
        witness,
        oriented: None,
    })
}

/// Classification for oriented genera: `H` must be even, and the GT
/// solutions are then `a t coth(a t)` or `a t cot(a t)`.
pub fn classify_oriented(h: &CharacteristicSeries<G>) -> Result<GtReport> {
    require(h, 4)?;
    if let Some(degree) = h.series().first_odd_term() {
        return Err(GenusError::NotEven { degree });
    }
    let mut report = classify(h)?;
    debug_assert!(report.r1.is_zero());
    if report.is_gt {
        report.oriented = if report.d_negative_rational {
            (-report.d.clone()).sqrt().map(|a| OrientedForm { kind: OrientedKind::Cot, a })
        } else {
            report.sqrt_d.clone().map(|a| OrientedForm { kind: OrientedKind::Coth, a })
        };
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A weight tuple whose localization sum is not constant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArWitness<F> {
    pub weights: Vec<i64>,
    pub degree: i64,
    pub coefficient: F,
}

/// Result of [`ar_check`]. Constancy is certified up to `order` only.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArReport<F> {
    pub max_n: usize,
    pub order: usize,
    pub trials: usize,
    pub seed: u64,
    pub tuples_checked: Vec<Vec<i64>>,
    pub verdict: Verdict,
    pub witness: Option<ArWitness<F>>,
}

const BASE_RANGE: std::ops::RangeInclusive<i64> = -4..=4;
const RANDOM_RADIUS: i64 = 20;
/// Mixed signs and large gaps; prefixes give one tuple per dimension.
const SPREAD: [i64; 8] = [-9, 2, 13, -5, 20, -16, 11, 4];

fn increasing_tuples(len: usize, values: &[i64]) -> Vec<Vec<i64>> {
    fn rec(start: usize, len: usize, values: &[i64], prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for i in start..values.len() {
            prefix.push(values[i]);
            rec(i + 1, len, values, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, values, &mut Vec::new(), &mut out);
    out
}

/// The weight tuples visited by [`ar_check`], in evaluation order.
pub fn ar_tuples(max_n: usize, trials: usize, seed: u64) -> Vec<Vec<i64>> {
    let base: Vec<i64> = BASE_RANGE.collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = (2 * RANDOM_RADIUS + 1) as usize;
    let mut out = Vec::new();
    for m in 1..=max_n {
        if m <= 2 {
            out.extend(increasing_tuples(m + 1, &base));
        }
        let mut gap: Vec<i64> = (0..m as i64).collect();
        gap.push(17);
        out.push(gap);
        if m < SPREAD.len() {
            out.push(SPREAD[..=m].to_vec());
        }
        for _ in 0..trials {
            let picked = sample(&mut rng, span, m + 1);
            out.push(picked.into_iter().map(|k| k as i64 - RANDOM_RADIUS).collect());
        }
    }
    out
}

/// Samples algebraic rigidity `ARⁿ`: the localization sum of ℂPᵐ with
/// weights `w` must be constant for every checked tuple with `m ≤ max_n`.
///
/// The tuple set is the deterministic base (all increasing tuples from
/// `[−4, 4]` for `m ≤ 2`, plus spread-out tuples such as `(0, 1, 17)`)
/// followed by `trials` seeded random tuples from `[−20, 20]` for each `m`.
/// Stops at the first non-constant sum.
pub fn ar_check<F: Scalar>(
    h: &CharacteristicSeries<F>,
    max_n: usize,
    order: usize,
    trials: usize,
    seed: u64,
) -> Result<ArReport<F>> {
    require(h, order + max_n)?;
    let mut report = ArReport {
        max_n,
        order,
        trials,
        seed,
        tuples_checked: Vec::new(),
        verdict: Verdict::Pass,
        witness: None,
    };
    // Constancy is decided on cleared denominators; the field-valued sum is
    // only formed for the failing tuple, to report its coefficient.
    let kernel = IntegralSeries::new(h);
    for weights in ar_tuples(max_n, trials, seed) {
        let fps = cpn_fixed_points(&weights)?;
        report.tuples_checked.push(weights.clone());
        if kernel.first_nonconstant(&weights, order).is_some() {
            let s = equivariant_genus(h, &fps, order as i64)?;
            let (degree, coefficient) = s.first_nonconstant().expect("both evaluations agree");
            report.verdict = Verdict::Fail;
            report.witness = Some(ArWitness { weights, degree, coefficient });
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> G {
        s.parse().unwrap()
    }

    fn spec(s: &str) -> SeriesSpec {
        s.parse().unwrap()
    }

    fn poly(cs: &[&str], order: usize) -> CharacteristicSeries<G> {
        CharacteristicSeries::new(PowerSeries::with_order(cs.iter().map(|s| g(s)).collect(), order)).unwrap()
    }

    #[test]
    fn ar1_examples() {
        let d = spec("dab:a=3/2,b=-1/3").construct(12).unwrap();
        assert!(ar1_residual(&d, 11).unwrap().coeffs().iter().all(|c| c.is_zero()));
        let cubic = poly(&["1", "1", "1", "1"], 8);
        let r = ar1_residual(&cubic, 6).unwrap();
        assert_eq!(r.coeffs(), &[g("0"), g("0"), g("2"), g("0"), g("0"), g("0"), g("0")]);
        assert!(ar1_residual(&poly(&["1"], 6), 5).unwrap().coeffs().iter().all(|c| c.is_zero()));
        assert!(ar1_residual(&cubic, 8).is_err());
    }

    #[test]
    fn functional_residual_examples() {
        let e = spec("euler:a=5/7").construct(10).unwrap();
        assert!(functional_residual(&e, 8).unwrap().is_zero());
        let todd = SeriesSpec::Todd.construct(12).unwrap();
        assert!(functional_residual(&todd, 10).unwrap().is_zero());
        let r = functional_residual(&poly(&["1", "0", "1"], 8), 6).unwrap();
        assert_eq!(r.valuation(), 2);
        assert_eq!(r.coeff(2), Some(g("1")));
        assert_eq!(r.coeff(3), Some(g("0")));
        assert_eq!(r.coeff(4), Some(g("0")));
    }

    #[test]
    fn reconstruction_examples() {
        let todd = SeriesSpec::Todd.construct(14).unwrap();
        assert_eq!(reconstruct(&g("1/2"), &g("1"), 14), *todd.series());
        let e = reconstruct(&g("-2/5"), &g("12/25"), 10);
        assert_eq!(e, spec("euler:a=-2/5").construct(10).unwrap().series().clone());
        let (a, b) = (g("2/3"), g("1/4"));
        let rec = reconstruct(&b, &(&a * &a + G::from(3) * &b * &b), 6);
        assert_eq!(rec.coeff(2), &(&a * &a / G::from(3)));
        assert_eq!(rec.coeff(3), &g("0"));
        assert_eq!(rec.coeff(4), &(-a.powi(4) / G::from(45)));
        assert_eq!(rec, *spec("dab:a=2/3,b=1/4").construct(6).unwrap().series());
    }

    #[test]
    fn classify_examples() {
        let todd = classify(&SeriesSpec::Todd.construct(16).unwrap()).unwrap();
        assert!(todd.is_gt);
        assert_eq!(todd.case, GtCase::D);
        assert_eq!(todd.d, g("1/4"));
        assert_eq!(todd.closed_form, Some(spec("dab:a=1/2,b=1/2")));

        let bad = classify(&poly(&["1", "0", "1"], 8)).unwrap();
        assert_eq!(bad.case, GtCase::NotGT);
        assert_eq!(bad.witness, Some(4));
        assert_eq!(bad.d, g("3"));
        assert_eq!(bad.sqrt_d, None);

        let cot = classify(&spec("gab:a=1,b=0").construct(16).unwrap()).unwrap();
        assert!(cot.is_gt);
        assert_eq!(cot.d, g("-1"));
        assert_eq!(cot.closed_form, Some(spec("dab:a=i,b=0")));
        assert_eq!(cot.g_form, Some(spec("gab:a=1,b=0")));
        assert!(cot.d_negative_rational);

        let e = classify(&spec("euler:a=3").construct(8).unwrap()).unwrap();
        assert_eq!(e.case, GtCase::E);
        assert_eq!(e.closed_form, Some(spec("euler:a=3")));

        // d = 2 has no rational root: still GT, closed form omitted.
        let irr = reconstruct(&g("0"), &g("2"), 12);
        let r = classify(&CharacteristicSeries::new(irr).unwrap()).unwrap();
        assert!(r.is_gt && r.closed_form.is_none());

        assert!(classify(&poly(&["1", "1", "1"], 3)).is_err());
    }

    #[test]
    fn oriented_examples() {
        let r = classify_oriented(&spec("dab:a=1,b=0").construct(16).unwrap()).unwrap();
        assert_eq!(r.oriented, Some(OrientedForm { kind: OrientedKind::Coth, a: g("1") }));
        let l = classify_oriented(&spec("ty:y=1").construct(16).unwrap()).unwrap();
        assert!(l.is_gt);
        assert_eq!(l.oriented.unwrap().kind, OrientedKind::Coth);
        let c = classify_oriented(&spec("gab:a=2/3,b=0").construct(16).unwrap()).unwrap();
        assert_eq!(c.oriented, Some(OrientedForm { kind: OrientedKind::Cot, a: g("2/3") }));
        let todd = classify_oriented(&SeriesSpec::Todd.construct(16).unwrap());
        assert!(matches!(todd, Err(GenusError::NotEven { degree: 1 })));
    }

    #[test]
    fn ar_check_examples() {
        let d = spec("dab:a=2,b=1/3").construct(14).unwrap();
        let rep = ar_check(&d, 3, 10, 5, 1).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.witness.is_none());

        let cubic = poly(&["1", "1", "1", "1"], 16);
        let rep = ar_check(&cubic, 1, 12, 20, 7).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        let w = rep.witness.unwrap();
        assert_eq!(w.degree, 2);
        let gap = w.weights[1] - w.weights[0];
        assert_eq!(w.coefficient, G::from(2 * gap * gap));

        let e = spec("euler:a=-3/2").construct(12).unwrap();
        assert_eq!(ar_check(&e, 3, 9, 5, 3).unwrap().verdict, Verdict::Pass);
        assert!(ar_check(&e, 3, 10, 5, 3).is_err());
    }

    #[test]
    fn tuples_are_seeded_and_distinct() {
        let a = ar_tuples(3, 10, 42);
        assert_eq!(a, ar_tuples(3, 10, 42));
        assert_ne!(a, ar_tuples(3, 10, 43));
        assert!(a.contains(&vec![0, 1, 17]));
        assert_eq!(a.iter().filter(|t| t.len() == 2).count(), 36 + 2 + 10);
        assert_eq!(a.iter().filter(|t| t.len() == 3).count(), 84 + 2 + 10);
        for t in &a {
            let mut s = t.clone();
            s.sort();
            s.dedup();
            assert_eq!(s.len(), t.len());
        }
    }
}
