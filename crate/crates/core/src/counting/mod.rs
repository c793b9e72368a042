//! Single and pair counting functions over a census.
//!
//! Pair counters use sparse convolution of homology histograms,
//! `Σ_α H₁[α] H₂[α+β]`, iterating over the smaller support. Translation by β
//! preserves the lexicographic key order, so the summands come out in α order
//! either way and real sums are bit-identical.

mod report;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};

use serde::{Deserialize, Serialize};

use crate::census::Census;
use crate::error::{Error, Result};
use crate::surface_group::{HomologyVector, NormKind};

pub use report::{CountRow, CountValue};

/// Per-geodesic weight of a histogram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    /// 1.
    Unit,
    /// `l / sinh(l/2)`.
    R,
    /// `2 log N / √N = 2 l e^{−l/2}`.
    P,
}

impl WeightKind {
    pub fn weight(self, length: f64) -> f64 {
        match self {
            WeightKind::Unit => 1.0,
            WeightKind::R => length / (length / 2.0).sinh(),
            WeightKind::P => 2.0 * length * (-length / 2.0).exp(),
        }
    }
}

/// Sparse map from homology class to a count or weighted sum at a cutoff.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyHistogram {
    pub bins: BTreeMap<HomologyVector, f64>,
    pub cutoff_x: f64,
    pub weight_kind: WeightKind,
}

impl HomologyHistogram {
    pub fn total(&self) -> f64 {
        pairwise_sum(&self.bins.values().copied().collect::<Vec<_>>())
    }

    pub fn get(&self, h: &HomologyVector) -> f64 {
        self.bins.get(h).copied().unwrap_or(0.0)
    }

    pub fn support_len(&self) -> usize {
        self.bins.len()
    }
}

/// Summation with a fixed binary tree over the input order.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        2 => v[0] + v[1],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// Homology difference `β` with norm cutoffs `x1`, `x2`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairQuery {
    pub beta: HomologyVector,
    pub x1: f64,
    pub x2: f64,
    pub k: f64,
}

impl PairQuery {
    /// Checks `x1, x2 > 1`, `0 < k < 1` and `x^k ≤ xᵢ ≤ x` for `x = max(x1, x2)`.
    pub fn new(beta: HomologyVector, x1: f64, x2: f64, k: f64) -> Result<Self> {
        if !(x1 > 1.0 && x2 > 1.0 && x1.is_finite() && x2.is_finite()) {
            return Err(Error::InvalidQuery(format!(
                "cutoffs must be finite and > 1, got x1 = {x1}, x2 = {x2}"
            )));
        }
        if !(k > 0.0 && k < 1.0) {
            return Err(Error::InvalidQuery(format!("k = {k} is not in (0, 1)")));
        }
        let x = x1.max(x2);
        if x1.min(x2) < x.powf(k) {
            return Err(Error::InvalidQuery(format!(
                "cutoffs {x1} and {x2} violate x^k <= x_i with k = {k}"
            )));
        }
        Ok(PairQuery { beta, x1, x2, k })
    }

    pub fn symmetric(beta: HomologyVector, x: f64) -> Result<Self> {
        PairQuery::new(beta, x, x, 0.5)
    }
}

/// `u(x) = √(log x) · log log x`.
pub fn truncation_window(x: f64) -> f64 {
    let l = x.ln();
    l.sqrt() * l.ln()
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    length: f64,
    err: f64,
    class: usize,
}

/// Options shared by the pair counters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairOptions {
    /// Count ordered pairs with γ₁ = γ₂ (only possible when β = 0).
    pub include_diagonal: bool,
    pub norm: NormKind,
}

impl Default for PairOptions {
    fn default() -> Self {
        PairOptions {
            include_diagonal: true,
            norm: NormKind::Sum,
        }
    }
}

/// Read-only counting view of the primitive classes of a census, sorted by
/// length.
pub struct Counter<'a> {
    census: &'a Census,
    entries: Vec<Entry>,
    lstar: Option<f64>,
    warned: AtomicBool,
    pub options: PairOptions,
}

impl<'a> Counter<'a> {
    pub fn new(census: &'a Census) -> Self {
        let mut entries: Vec<Entry> = census
            .classes()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.primitive)
            .map(|(i, c)| Entry {
                length: c.length.to_f64(),
                err: c.length.err(),
                class: i,
            })
            .collect();
        entries.sort_by(|a, b| a.length.total_cmp(&b.length).then(a.class.cmp(&b.class)));
        Counter {
            census,
            entries,
            lstar: census.completeness_length_f64(),
            warned: AtomicBool::new(false),
            options: PairOptions::default(),
        }
    }

    pub fn with_options(mut self, options: PairOptions) -> Self {
        self.options = options;
        self
    }

    pub fn census(&self) -> &Census {
        self.census
    }

    /// Whether every class with norm ≤ x is in the census (log x ≤ ℓ*).
    pub fn is_complete(&self, x: f64) -> bool {
        self.lstar.is_some_and(|l| x.ln() <= l)
    }

    fn warn_if_incomplete(&self, x: f64) {
        if !self.is_complete(x) && !self.warned.swap(true, AtomicOrdering::Relaxed) {
            log::warn!(
                "log x = {:.6} exceeds the completeness length {:?}; counts may be missing classes",
                x.ln(),
                self.lstar
            );
        }
    }

    /// Entries with `N(γ) ≤ x`, closed; classes within their error bound of
    /// the cutoff are included with a warning.
    fn selected(&self, x: f64) -> &[Entry] {
        self.warn_if_incomplete(x);
        let lx = x.ln();
        let slack = 4.0 * f64::EPSILON * lx.abs();
        let sure = self.entries.partition_point(|e| e.length + e.err + slack <= lx);
        let end = self.entries.partition_point(|e| e.length - e.err - slack <= lx);
        if end > sure {
            log::warn!(
                "{} class(es) lie within their error bound of the cutoff log x = {lx}; included",
                end - sure
            );
        }
        &self.entries[..end]
    }

    fn homology(&self, e: &Entry) -> &HomologyVector {
        &self.census.classes()[e.class].homology
    }

    /// Primitive classes with norm ≤ x, as (length, homology).
    pub fn primitive_up_to(&self, x: f64) -> impl Iterator<Item = (f64, &HomologyVector)> {
        self.selected(x).iter().map(|e| (e.length, self.homology(e)))
    }

    pub fn pi(&self, x: f64) -> u64 {
        self.selected(x).len() as u64
    }

    pub fn pi_beta(&self, beta: &HomologyVector, x: f64) -> u64 {
        self.pi_b(|h| h == beta, x)
    }

    pub fn pi_b(&self, pred: impl Fn(&HomologyVector) -> bool, x: f64) -> u64 {
        self.selected(x)
            .iter()
            .filter(|e| pred(self.homology(e)))
            .count() as u64
    }

    pub fn r_beta(&self, beta: &HomologyVector, x: f64) -> f64 {
        let terms: Vec<f64> = self
            .selected(x)
            .iter()
            .filter(|e| self.homology(e) == beta)
            .map(|e| WeightKind::R.weight(e.length))
            .collect();
        pairwise_sum(&terms)
    }

    pub fn histogram(&self, x: f64, kind: WeightKind) -> HomologyHistogram {
        let mut bins: BTreeMap<HomologyVector, Vec<f64>> = BTreeMap::new();
        for e in self.selected(x) {
            bins.entry(self.homology(e).clone())
                .or_default()
                .push(kind.weight(e.length));
        }
        HomologyHistogram {
            bins: bins.into_iter().map(|(h, v)| (h, pairwise_sum(&v))).collect(),
            cutoff_x: x,
            weight_kind: kind,
        }
    }

    /// Summands `H₁[α]·H₂[α+β]` for `‖α‖ ≤ window`, in α key order.
    fn convolution_terms(
        &self,
        h1: &HomologyHistogram,
        h2: &HomologyHistogram,
        beta: &HomologyVector,
        window: Option<f64>,
    ) -> Vec<(f64, f64)> {
        let inside = |a: &HomologyVector| window.is_none_or(|u| (a.norm(self.options.norm) as f64) <= u);
        let mut out = Vec::new();
        if h1.support_len() <= h2.support_len() {
            for (a, &v1) in &h1.bins {
                if !inside(a) {
                    continue;
                }
                if let Some(&v2) = h2.bins.get(&a.add(beta)) {
                    out.push((v1, v2));
                }
            }
        } else {
            for (b, &v2) in &h2.bins {
                let a = b.sub(beta);
                if !inside(&a) {
                    continue;
                }
                if let Some(&v1) = h1.bins.get(&a) {
                    out.push((v1, v2));
                }
            }
        }
        out
    }

    /// Σ over γ with N(γ) ≤ min(x1, x2) and homology within the window of
    /// the product of the two weights: the diagonal of a β = 0 pair sum.
    fn diagonal(&self, q: &PairQuery, kind: WeightKind, window: Option<f64>) -> Vec<f64> {
        if !q.beta.is_zero() {
            return Vec::new();
        }
        self.selected(q.x1.min(q.x2))
            .iter()
            .filter(|e| {
                window.is_none_or(|u| (self.homology(e).norm(self.options.norm) as f64) <= u)
            })
            .map(|e| kind.weight(e.length).powi(2))
            .collect()
    }

    /// π₂^β(x1, x2): ordered pairs with `Φ(γ₂) − Φ(γ₁) = β`.
    pub fn pair_count(&self, q: &PairQuery) -> u64 {
        let h1 = self.histogram(q.x1, WeightKind::Unit);
        let h2 = self.histogram(q.x2, WeightKind::Unit);
        let total: u64 = self
            .convolution_terms(&h1, &h2, &q.beta, None)
            .iter()
            .map(|&(a, b)| a as u64 * b as u64)
            .sum();
        if self.options.include_diagonal {
            total
        } else {
            total - self.diagonal(q, WeightKind::Unit, None).len() as u64
        }
    }

    fn weighted_pair(&self, q: &PairQuery, kind: WeightKind, window: Option<f64>) -> f64 {
        let h1 = self.histogram(q.x1, kind);
        let h2 = self.histogram(q.x2, kind);
        let terms: Vec<f64> = self
            .convolution_terms(&h1, &h2, &q.beta, window)
            .iter()
            .map(|&(a, b)| a * b)
            .collect();
        let total = pairwise_sum(&terms);
        if self.options.include_diagonal {
            total
        } else {
            total - pairwise_sum(&self.diagonal(q, kind, window))
        }
    }

    /// R₂^β(x1, x2) = Σ_α R_α(x1) R_{α+β}(x2).
    pub fn r2_beta(&self, q: &PairQuery) -> f64 {
        self.weighted_pair(q, WeightKind::R, None)
    }

    /// P₂^β(x1, x2) with weight 4 log N₁ log N₂ / √(N₁N₂).
    pub fn p2_beta(&self, q: &PairQuery) -> f64 {
        self.weighted_pair(q, WeightKind::P, None)
    }

    /// R₂^β restricted to `‖α‖_m ≤ window`.
    pub fn truncated_r2(&self, q: &PairQuery, window: f64) -> f64 {
        self.weighted_pair(q, WeightKind::R, Some(window))
    }

    /// Largest `‖h‖_m / l` over primitive classes with length in `[lo, hi)`.
    pub fn max_homology_ratio(&self, lo: f64, hi: f64) -> Option<f64> {
        self.entries
            .iter()
            .filter(|e| e.length >= lo && e.length < hi)
            .map(|e| self.homology(e).norm(self.options.norm) as f64 / e.length)
            .reduce(f64::max)
    }
}

pub fn pi(c: &Census, x: f64) -> u64 {
    Counter::new(c).pi(x)
}

pub fn pi_beta(c: &Census, beta: &HomologyVector, x: f64) -> u64 {
    Counter::new(c).pi_beta(beta, x)
}

pub fn pi_b(c: &Census, pred: impl Fn(&HomologyVector) -> bool, x: f64) -> u64 {
    Counter::new(c).pi_b(pred, x)
}

pub fn r_beta(c: &Census, beta: &HomologyVector, x: f64) -> f64 {
    Counter::new(c).r_beta(beta, x)
}

pub fn histogram(c: &Census, x: f64, kind: WeightKind) -> HomologyHistogram {
    Counter::new(c).histogram(x, kind)
}

pub fn pair_count(c: &Census, q: &PairQuery) -> u64 {
    Counter::new(c).pair_count(q)
}

pub fn r2_beta(c: &Census, q: &PairQuery) -> f64 {
    Counter::new(c).r2_beta(q)
}

pub fn p2_beta(c: &Census, q: &PairQuery) -> f64 {
    Counter::new(c).p2_beta(q)
}

pub fn truncated_r2(c: &Census, q: &PairQuery, window: f64) -> f64 {
    Counter::new(c).truncated_r2(q, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::enumerate;
    use crate::hyperbolic::Representation;

    fn census(l: usize) -> Census {
        enumerate(&Representation::bolza(128).unwrap(), l).unwrap()
    }

    #[test]
    fn single_counts() {
        let c = census(3);
        let k = Counter::new(&c);
        let systole = 2.0 * (1.0 + 2f64.sqrt()).acosh();
        assert_eq!(k.pi(systole.exp() * 0.999), 0);
        let n = k.pi(3.06f64.exp());
        assert!(n >= 8);
        let h = k.histogram(3.06f64.exp(), WeightKind::Unit);
        assert_eq!(h.total() as u64, n);
        let r = k.histogram(3.06f64.exp(), WeightKind::R);
        let beta = HomologyVector(vec![1, 0, 0, 0]);
        assert_eq!(r.get(&beta), k.r_beta(&beta, 3.06f64.exp()));
        assert!((k.r_beta(&beta, 3.06f64.exp()) - systole / (systole / 2.0).sinh()).abs() < 1e-12);
        assert_eq!(k.pi_b(|_| true, 3.06f64.exp()), n);
        assert_eq!(k.pi_b(|_| false, 3.06f64.exp()), 0);
    }

    #[test]
    fn pair_identities() {
        let c = census(4);
        let k = Counter::new(&c);
        let x = 5.9f64.exp();
        let n = k.pi(x);
        let h = k.histogram(x, WeightKind::Unit);
        let mut total = 0;
        let betas: Vec<HomologyVector> = h
            .bins
            .keys()
            .flat_map(|a| h.bins.keys().map(move |b| b.sub(a)))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        for b in &betas {
            let q = PairQuery::symmetric(b.clone(), x).unwrap();
            let v = k.pair_count(&q);
            assert_eq!(v, k.pair_count(&PairQuery::symmetric(b.neg(), x).unwrap()));
            total += v;
        }
        assert_eq!(total, n * n);
        let q0 = PairQuery::symmetric(HomologyVector::zero(2), x).unwrap();
        let off = Counter::new(&c).with_options(PairOptions {
            include_diagonal: false,
            ..Default::default()
        });
        assert_eq!(off.pair_count(&q0), k.pair_count(&q0) - n);
    }

    #[test]
    fn window_and_queries() {
        assert!((truncation_window(9f64.exp()) - 3.0 * 9f64.ln()).abs() < 1e-12);
        assert!(PairQuery::new(HomologyVector::zero(2), 1.0, 5.0, 0.5).is_err());
        assert!(PairQuery::new(HomologyVector::zero(2), 2.0, 100.0, 0.5).is_err());
        assert!(PairQuery::new(HomologyVector::zero(2), 10.0, 100.0, 0.5).is_ok());
        let c = census(3);
        let k = Counter::new(&c);
        let x = 4.0f64.exp();
        let q = PairQuery::symmetric(HomologyVector(vec![1, 0, 0, 0]), x).unwrap();
        assert_eq!(k.truncated_r2(&q, f64::INFINITY), k.r2_beta(&q));
        let h = k.histogram(x, WeightKind::R);
        let zero = HomologyVector::zero(2);
        let only0 = h.get(&zero) * h.get(&q.beta);
        assert_eq!(k.truncated_r2(&q, 0.0), only0);
    }
}
