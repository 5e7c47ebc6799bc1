//! Multiplicative sequences as graded polynomials in the Chern classes.
//!
//! `K_n` is obtained from the power-sum route: `log H(t) = Σ s_m t^m`, so
//! `Σ K_j t^j = exp(Σ s_m p_m t^m)` where `p_m` is the m-th power sum of the
//! Chern roots, written in `c_1, …, c_m` through Newton's identities.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::catalog::CharacteristicSeries;
use crate::error::{GenusError, Result};
use crate::gaussian::GaussianRational;
use crate::scalar::{Rational, Scalar};

/// A partition `λ = (λ_1 ≥ λ_2 ≥ … > 0)`, indexing the monomial
/// `c_λ = c_{λ_1} c_{λ_2} ⋯`.
///
/// Partitions order reverse-lexicographically: `[3] < [2,1] < [1,1,1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts `parts` into canonical (weakly decreasing) order. Zero parts are
    /// rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(GenusError::Parse("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Multiset union, i.e. the monomial product `c_λ c_μ`.
    pub fn union(&self, other: &Self) -> Self {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            if j == other.parts.len() || (i < self.parts.len() && self.parts[i] >= other.parts[j]) {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        Self { parts }
    }

    /// All partitions of `n`, in reverse-lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            for p in (1..=max.min(rest)).rev() {
                prefix.push(p);
                rec(rest - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n as u32, n as u32, &mut Vec::new(), &mut out);
        out
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        let mut run = Vec::<(u32, usize)>::new();
        for &p in &self.parts {
            match run.last_mut() {
                Some((q, k)) if *q == p => *k += 1,
                _ => run.push((p, 1)),
            }
        }
        let terms: Vec<String> = run
            .into_iter()
            .map(|(p, k)| if k == 1 { format!("c{p}") } else { format!("c{p}^{k}") })
            .collect();
        write!(f, "{}", terms.join("*"))
    }
}

/// A homogeneous polynomial of weighted degree `degree` in `c_1, c_2, …`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedPoly<F> {
    degree: usize,
    terms: BTreeMap<Partition, F>,
}

impl<F: Scalar> GradedPoly<F> {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Partition::empty(), F::one())
    }

    pub fn monomial(partition: Partition, coeff: F) -> Self {
        let mut p = Self::zero(partition.weight());
        p.insert(partition, coeff);
        p
    }

    /// The variable `c_k`.
    pub fn chern(k: u32) -> Self {
        Self::monomial(Partition { parts: vec![k] }, F::one())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, F> {
        &self.terms
    }

    pub fn coeff(&self, partition: &Partition) -> F {
        self.terms.get(partition).cloned().unwrap_or_else(F::zero)
    }

    fn insert(&mut self, partition: Partition, coeff: F) {
        debug_assert_eq!(partition.weight(), self.degree);
        let slot = self.terms.entry(partition).or_insert_with(F::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding graded pieces of different degree");
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.insert(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        Self { degree: self.degree, terms: self.terms.iter().map(|(p, x)| (p.clone(), x.clone() * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.insert(p.union(q), a.clone() * b);
            }
        }
        out
    }

    /// Drops every monomial that involves some `c_k` with `k > n`.
    pub fn restrict(&self, n: usize) -> Self {
        let terms = self.terms.iter().filter(|(p, _)| p.largest() as usize <= n);
        Self { degree: self.degree, terms: terms.map(|(p, c)| (p.clone(), c.clone())).collect() }
    }

    /// Value at `c_k = classes[k-1]`; classes beyond the slice are zero.
    pub fn evaluate(&self, classes: &[F]) -> F {
        self.terms.iter().fold(F::zero(), |acc, (p, coeff)| {
            let mono = p.parts.iter().try_fold(coeff.clone(), |m, &k| {
                classes.get(k as usize - 1).map(|c| m * c)
            });
            match mono {
                Some(m) => acc + m,
                None => acc,
            }
        })
    }
}

impl<F: Scalar> fmt::Display for GradedPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.terms.iter().map(|(p, c)| format!("({c})*{p}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `p_1, …, p_max` with `p_m` the m-th power sum in `c_1, …, c_m`.
fn power_sum_table<F: Scalar>(max: usize) -> Vec<GradedPoly<F>> {
    let mut table: Vec<GradedPoly<F>> = Vec::with_capacity(max);
    for m in 1..=max {
        // p_m = Σ_{k<m} (-1)^{k-1} c_k p_{m-k} + (-1)^{m-1} m c_m
        let sign = |k: usize| if k % 2 == 1 { F::one() } else { -F::one() };
        let mut p = GradedPoly::chern(m as u32).scale(&(sign(m) * F::from_i64(m as i64)));
        for k in 1..m {
            p = p.add(&GradedPoly::chern(k as u32).mul(&table[m - k - 1]).scale(&sign(k)));
        }
        table.push(p);
    }
    table
}

/// The power sum `p_m` of the Chern roots, as a polynomial in `c_1, …, c_n`.
pub fn power_sums<F: Scalar>(n: usize, m: usize) -> GradedPoly<F> {
    assert!(m >= 1, "power sums start at p_1");
    power_sum_table::<F>(m).pop().expect("m >= 1").restrict(n)
}

/// `K_0, …, K_n` of the multiplicative sequence with characteristic series `h`.
pub fn multiplicative_sequence_upto<F: Scalar>(h: &CharacteristicSeries<F>, n: usize) -> Result<Vec<GradedPoly<F>>> {
    if h.order() < n {
        return Err(GenusError::InsufficientOrder { needed: n as i64, available: h.order() as i64 });
    }
    let s = h.series().truncate(n).log()?;
    let p = power_sum_table::<F>(n);
    // m s_m p_m, pre-scaled for the recurrence j K_j = Σ_m m s_m p_m K_{j-m}
    let weighted: Vec<GradedPoly<F>> =
        (1..=n).map(|m| p[m - 1].scale(&(s.coeff(m).clone() * F::from_i64(m as i64)))).collect();
    let mut ks = vec![GradedPoly::one()];
    for j in 1..=n {
        let mut acc = GradedPoly::zero(j);
        for m in 1..=j {
            acc = acc.add(&weighted[m - 1].mul(&ks[j - m]));
        }
        ks.push(acc.scale(&(F::one() / F::from_i64(j as i64))));
    }
    Ok(ks)
}

/// `K_n`.
pub fn multiplicative_sequence<F: Scalar>(h: &CharacteristicSeries<F>, n: usize) -> Result<GradedPoly<F>> {
    Ok(multiplicative_sequence_upto(h, n)?.pop().expect("K_0 is always present"))
}

/// `Σ_j K_j(a_1, …, a_j) t^j` for the total class `1 + a_1 t + a_2 t² + …`.
pub fn k_transform<F: Scalar>(ks: &[GradedPoly<F>], classes: &[F]) -> Vec<F> {
    ks.iter().map(|k| k.evaluate(classes)).collect()
}

/// Chern numbers `c_λ[X]` of a closed stably complex manifold of complex
/// dimension `dimension`. Absent partitions count as zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernData<F> {
    dimension: usize,
    numbers: BTreeMap<Partition, F>,
}

impl<F: Scalar> ChernData<F> {
    pub fn new(dimension: usize, entries: impl IntoIterator<Item = (Partition, F)>) -> Result<Self> {
        let mut numbers = BTreeMap::new();
        for (p, v) in entries {
            if p.weight() != dimension {
                return Err(GenusError::PartitionWeight {
                    parts: p.parts.clone(),
                    weight: p.weight(),
                    expected: dimension,
                });
            }
            if numbers.insert(p.clone(), v).is_some() {
                return Err(GenusError::Parse(format!("duplicate Chern number for partition {:?}", p.parts)));
            }
        }
        Ok(Self { dimension, numbers })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn numbers(&self) -> &BTreeMap<Partition, F> {
        &self.numbers
    }

    pub fn get(&self, p: &Partition) -> F {
        self.numbers.get(p).cloned().unwrap_or_else(F::zero)
    }
}

/// `K[X] = Σ_λ K[λ] · c_λ[X]`.
pub fn evaluate_genus<F: Scalar>(k: &GradedPoly<F>, data: &ChernData<F>) -> Result<F> {
    if k.degree != data.dimension {
        return Err(GenusError::DimensionMismatch { degree: k.degree, dimension: data.dimension });
    }
    Ok(k.terms.iter().fold(F::zero(), |acc, (p, c)| acc + c.clone() * data.get(p)))
}

/// Chern numbers of ℂPⁿ from `c(ℂPⁿ) = (1+x)^{n+1}`: `c_λ = Π_k C(n+1, λ_k)`.
pub fn cpn_chern_numbers<F: Scalar>(n: usize) -> ChernData<F> {
    assert!(n >= 1, "ℂPⁿ needs n >= 1");
    let binom = |k: u32| F::from_rational(Rational::from_integer(num_integer::binomial(BigInt::from(n + 1), BigInt::from(k))));
    let entries = Partition::all(n).into_iter().map(|p| {
        let v = p.parts.iter().fold(F::one(), |acc, &k| acc * binom(k));
        (p, v)
    });
    ChernData::new(n, entries).expect("partitions of n have weight n")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NumberRecord {
    partition: Vec<u32>,
    value: GaussianRational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChernFile {
    dimension: usize,
    numbers: Vec<NumberRecord>,
}

#[derive(Serialize)]
struct PolyFile {
    degree: usize,
    terms: Vec<NumberRecord>,
}

impl ChernData<GaussianRational> {
    /// Parses `{"dimension": n, "numbers": [{"partition": [3,1], "value": "p/q"}, …]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ChernFile = serde_json::from_str(text).map_err(|e| GenusError::Parse(e.to_string()))?;
        let entries = file
            .numbers
            .into_iter()
            .map(|r| Ok((Partition::new(r.partition)?, r.value)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.dimension, entries)
    }

    pub fn to_json(&self) -> String {
        let numbers =
            self.numbers.iter().map(|(p, v)| NumberRecord { partition: p.parts.clone(), value: v.clone() }).collect();
        serde_json::to_string_pretty(&ChernFile { dimension: self.dimension, numbers }).expect("serializable")
    }
}

impl GradedPoly<GaussianRational> {
    /// Dump in the Chern-data partition encoding.
    pub fn to_json(&self) -> String {
        let terms = self.terms.iter().map(|(p, v)| NumberRecord { partition: p.parts.clone(), value: v.clone() }).collect();
        serde_json::to_string_pretty(&PolyFile { degree: self.degree, terms }).expect("serializable")
    }
}
