//! Named characteristic series, genera of ℂPⁿ, and the Novikov logarithm.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GenusError, Result};
use crate::gaussian::GaussianRational;
use crate::scalar::Scalar;
use crate::series::{LaurentSeries, PowerSeries, SeriesFile};

/// Construction order used when the caller does not ask for one.
pub const DEFAULT_ORDER: usize = 16;

type G = GaussianRational;

/// A named member of the catalog, with concrete parameters in ℚ(i).
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesSpec {
    /// `1 + a t`.
    Euler { a: G },
    /// `t / (1 - e^{-t})`.
    Todd,
    /// `H_{1,y}`.
    Ty { y: G },
    /// `t (x e^{t(x+y)} + y) / (e^{t(x+y)} - 1)`.
    Txy { x: G, y: G },
    /// `t (a coth(a t) + b)`.
    Dab { a: G, b: G },
    /// `t (a cot(a t) + b)`, built as `Dab { a: i·a, b }`.
    Gab { a: G, b: G },
    /// Coefficients read from a series file.
    File { path: PathBuf },
}

/// One row of the family table shown by `genus catalog`.
pub struct FamilyInfo {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub formula: &'static str,
}

pub const FAMILIES: &[FamilyInfo] = &[
    FamilyInfo { name: "euler", params: &["a"], formula: "1 + a t" },
    FamilyInfo { name: "todd", params: &[], formula: "t / (1 - e^(-t))" },
    FamilyInfo { name: "ty", params: &["y"], formula: "t (e^(t(1+y)) + y) / (e^(t(1+y)) - 1)" },
    FamilyInfo { name: "txy", params: &["x", "y"], formula: "t (x e^(t(x+y)) + y) / (e^(t(x+y)) - 1)" },
    FamilyInfo { name: "dab", params: &["a", "b"], formula: "t (a coth(a t) + b)" },
    FamilyInfo { name: "gab", params: &["a", "b"], formula: "t (a cot(a t) + b)" },
    FamilyInfo { name: "file", params: &["PATH"], formula: "coefficients from a JSON series file" },
];

impl SeriesSpec {
    pub fn family(&self) -> &'static str {
        match self {
            Self::Euler { .. } => "euler",
            Self::Todd => "todd",
            Self::Ty { .. } => "ty",
            Self::Txy { .. } => "txy",
            Self::Dab { .. } => "dab",
            Self::Gab { .. } => "gab",
            Self::File { .. } => "file",
        }
    }

    /// Exact expansion to `order`. File series are truncated to `order` when
    /// they carry more terms and kept at their own order otherwise.
    pub fn construct(&self, order: usize) -> Result<CharacteristicSeries<G>> {
        if order < 2 {
            return Err(GenusError::InsufficientOrder { needed: 2, available: order as i64 });
        }
        let series = match self {
            Self::Euler { a } => PowerSeries::with_order(vec![G::one(), a.clone()], order),
            Self::Todd => todd(order),
            Self::Ty { y } => txy(&G::one(), y, order),
            Self::Txy { x, y } => txy(x, y, order),
            Self::Dab { a, b } => dab(a, b, order),
            Self::Gab { a, b } => dab(&(G::i() * a), b, order),
            Self::File { path } => {
                let s = read_series_file(path)?;
                s.truncate(order.min(s.order()))
            }
        };
        let mut h = CharacteristicSeries::new(series)?;
        h.spec = Some(self.clone());
        Ok(h)
    }

    /// `h(ℂPⁿ)` from the family's closed form, independent of any series
    /// expansion. Removable singularities are resolved by polynomial division.
    pub fn closed_form_cpn(&self, n: usize) -> Result<G> {
        let n = n as i64;
        Ok(match self {
            Self::Euler { a } => G::from(n + 1) * a.powi(n),
            Self::Todd => G::one(),
            Self::Ty { y } => txy_cpn(&G::one(), y, n),
            Self::Txy { x, y } => txy_cpn(x, y, n),
            Self::Dab { a, b } => txy_cpn(&(a + b), &(a - b), n),
            Self::Gab { a, b } => {
                let ia = G::i() * a;
                let (plus, minus) = (b + &ia, b - &ia);
                if a.is_zero() {
                    G::from(n + 1) * b.powi(n)
                } else {
                    (plus.powi(n + 1) - minus.powi(n + 1)) / (G::from(2) * ia)
                }
            }
            Self::File { .. } => return Err(GenusError::UnsupportedFamily("file".into())),
        })
    }
}

/// `(x^{n+1} - (-y)^{n+1}) / (x + y)`, or its quotient polynomial
/// `Σ_k x^{n-k} (-y)^k` when `x + y = 0`.
fn txy_cpn(x: &G, y: &G, n: i64) -> G {
    let minus_y = -y.clone();
    let s = x + y;
    if s.is_zero() {
        (0..=n).fold(G::zero(), |acc, k| acc + x.powi(n - k) * minus_y.powi(k))
    } else {
        (x.powi(n + 1) - minus_y.powi(n + 1)) / s
    }
}

fn exp_scaled(w: &G, order: usize) -> PowerSeries<G> {
    PowerSeries::with_order(vec![G::zero(), w.clone()], order).exp().expect("zero constant term")
}

/// `t / (1 - e^{-t})`.
fn todd(order: usize) -> PowerSeries<G> {
    let denom = &PowerSeries::one(order + 1) - &exp_scaled(&-G::one(), order + 1);
    let t = LaurentSeries::monomial(G::one(), 1, order as i64 + 1);
    t.divide(&denom.to_laurent()).expect("nonzero divisor").to_power_series().expect("power series")
}

/// `u / (e^u - 1)`.
fn bernoulli(order: usize) -> PowerSeries<G> {
    let denom = &exp_scaled(&G::one(), order + 1) - &PowerSeries::one(order + 1);
    let u = LaurentSeries::monomial(G::one(), 1, order as i64 + 1);
    u.divide(&denom.to_laurent()).expect("nonzero divisor").to_power_series().expect("power series")
}

/// `H_{x,y}(t) = x t + B((x+y) t)` with `B(u) = u / (e^u - 1)`; the
/// rewrite keeps `x + y = 0` regular.
fn txy(x: &G, y: &G, order: usize) -> PowerSeries<G> {
    let b = bernoulli(order).scale_argument(&(x + y));
    &b + &PowerSeries::with_order(vec![G::zero(), x.clone()], order)
}

/// `D_{a,b}(t) = C(a t) + b t` with `C(u) = u cosh u / sinh u`.
fn dab(a: &G, b: &G, order: usize) -> PowerSeries<G> {
    let up = exp_scaled(&G::one(), order + 1);
    let down = exp_scaled(&-G::one(), order + 1);
    let half = G::ratio(1, 2);
    let sinh = (&up - &down).scale(&half);
    let u_cosh = LaurentSeries::from_power(&(&up + &down).scale(&half))
        .multiply(&LaurentSeries::monomial(G::one(), 1, order as i64 + 2));
    let coth = u_cosh.divide(&sinh.to_laurent()).expect("nonzero divisor").to_power_series().expect("power series");
    &coth.scale_argument(a) + &PowerSeries::with_order(vec![G::zero(), b.clone()], order)
}

pub fn read_series_file(path: &std::path::Path) -> Result<PowerSeries<G>> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| GenusError::Io { path: display.clone(), source })?;
    let malformed = |message: String| GenusError::MalformedFile { path: display.clone(), message };
    let laurent = SeriesFile::from_json(&text)
        .and_then(|f| f.to_series())
        .map_err(|e| malformed(e.to_string()))?;
    laurent
        .to_power_series()
        .ok_or_else(|| malformed("characteristic series must be a power series".into()))
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Euler { a } => write!(f, "euler:a={a}"),
            Self::Todd => write!(f, "todd"),
            Self::Ty { y } => write!(f, "ty:y={y}"),
            Self::Txy { x, y } => write!(f, "txy:x={x},y={y}"),
            Self::Dab { a, b } => write!(f, "dab:a={a},b={b}"),
            Self::Gab { a, b } => write!(f, "gab:a={a},b={b}"),
            Self::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

impl FromStr for SeriesSpec {
    type Err = GenusError;

    /// Grammar: `todd`, `euler:a=1/2`, `ty:y=-1`, `txy:x=2,y=3`,
    /// `dab:a=1,b=1/2`, `gab:a=1,b=0`, `file:PATH`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        if family == "file" {
            if rest.is_empty() {
                return Err(GenusError::MissingParam { family: "file".into(), param: "PATH".into() });
            }
            return Ok(Self::File { path: PathBuf::from(rest) });
        }
        let info = FAMILIES
            .iter()
            .find(|f| f.name == family)
            .ok_or_else(|| GenusError::UnknownFamily(family.to_string()))?;
        let mut values: Vec<Option<G>> = vec![None; info.params.len()];
        for item in rest.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| GenusError::Parse(format!("expected key=value, got `{item}`")))?;
            let slot = info
                .params
                .iter()
                .position(|p| *p == key.trim())
                .ok_or_else(|| GenusError::UnknownParam { family: family.into(), param: key.trim().into() })?;
            values[slot] = Some(value.parse()?);
        }
        let mut values = values.into_iter().zip(info.params).map(|(v, name)| {
            v.ok_or_else(|| GenusError::MissingParam { family: family.into(), param: (*name).into() })
        });
        let mut next = || values.next().expect("parameter slot");
        Ok(match family {
            "euler" => Self::Euler { a: next()? },
            "todd" => Self::Todd,
            "ty" => Self::Ty { y: next()? },
            "txy" => Self::Txy { x: next()?, y: next()? },
            "dab" => Self::Dab { a: next()?, b: next()? },
            "gab" => Self::Gab { a: next()?, b: next()? },
            _ => unreachable!(),
        })
    }
}

impl Serialize for SeriesSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SeriesSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A characteristic series `H(t) = 1 + r₁t + r₂t² + …`.
#[derive(Clone, Debug)]
pub struct CharacteristicSeries<F> {
    series: PowerSeries<F>,
    pub spec: Option<SeriesSpec>,
}

/// Outcome of comparing `reversion(t/H)` with the Novikov logarithm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NovikovCheck {
    pub holds: bool,
    pub order: usize,
    /// Index `n` of the first disagreeing coefficient `h_n / (n+1)`, which
    /// sits at degree `n + 1`.
    pub first_mismatch: Option<usize>,
}

impl<F: Scalar> CharacteristicSeries<F> {
    /// Requires constant term 1 and order at least 2.
    pub fn new(series: PowerSeries<F>) -> Result<Self> {
        if !series.coeff(0).is_one() {
            return Err(GenusError::NotNormalized);
        }
        if series.order() < 2 {
            return Err(GenusError::InsufficientOrder { needed: 2, available: series.order() as i64 });
        }
        Ok(Self { series, spec: None })
    }

    pub fn series(&self) -> &PowerSeries<F> {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `r_k`, the coefficient of `t^k`.
    pub fn r(&self, k: usize) -> &F {
        self.series.coeff(k)
    }

    /// `F_H(t) = H(t)/t`.
    pub fn f_series(&self) -> LaurentSeries<F> {
        LaurentSeries::new(-1, self.series.coeffs().to_vec())
    }

    fn require(&self, needed: usize) -> Result<()> {
        if self.order() < needed {
            return Err(GenusError::InsufficientOrder { needed: needed as i64, available: self.order() as i64 });
        }
        Ok(())
    }

    /// `h_n = [H^{n+1}]_n`, the genus of ℂPⁿ.
    pub fn h_n(&self, n: usize) -> Result<F> {
        self.require(n)?;
        Ok(self.series.pow_to(n as u32 + 1, n).coeff(n).clone())
    }

    /// `h_0, …, h_max`.
    pub fn h_values(&self, max: usize) -> Result<Vec<F>> {
        self.require(max)?;
        let mut power = PowerSeries::one(max);
        let mut out = Vec::with_capacity(max + 1);
        for n in 0..=max {
            power = power.mul_to(&self.series, max);
            out.push(power.coeff(n).clone());
        }
        Ok(out)
    }

    /// `g_h(t) = Σ h_n t^{n+1} / (n+1)`, known to `order`.
    pub fn novikov_g(&self, order: usize) -> Result<PowerSeries<F>> {
        self.require(order)?;
        let hs = self.h_values(order.saturating_sub(1))?;
        Ok(novikov_from_values(&hs, order))
    }

    /// Checks `reversion(t / H) == g_h` up to `order`.
    pub fn verify_novikov(&self, order: usize) -> Result<NovikovCheck> {
        self.require(order)?;
        let hs = self.h_values(order.saturating_sub(1))?;
        self.verify_novikov_with(&hs, order)
    }

    /// Checks `reversion(t / H)` against the logarithm built from externally
    /// supplied genus values `h_0, h_1, …` (for instance a closed form).
    pub fn verify_novikov_with(&self, h_values: &[F], order: usize) -> Result<NovikovCheck> {
        self.require(order)?;
        if h_values.len() < order {
            return Err(GenusError::InsufficientOrder { needed: order as i64, available: h_values.len() as i64 });
        }
        let g = novikov_from_values(h_values, order);
        let t = LaurentSeries::monomial(F::one(), 1, order as i64 + 1);
        let t_over_h = t
            .divide(&self.series.truncate(order).to_laurent())?
            .to_power_series()
            .expect("valuation one");
        let inverse = t_over_h.truncate(order).reversion()?;
        let first_mismatch = inverse.first_mismatch(&g).map(|k| k - 1);
        Ok(NovikovCheck { holds: first_mismatch.is_none(), order, first_mismatch })
    }
}

fn novikov_from_values<F: Scalar>(hs: &[F], order: usize) -> PowerSeries<F> {
    let mut coeffs = vec![F::zero()];
    coeffs.extend((0..order).map(|n| hs[n].clone() / F::from_i64(n as i64 + 1)));
    PowerSeries::with_order(coeffs, order)
}
