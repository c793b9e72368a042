//! Conjugacy-class census: enumeration, persistence and merging.

mod enumerate;
mod io;
mod oracle;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::hyperbolic::{LengthNorm, ScalarHP};
use crate::surface_group::{abelianize, primitive_root, CyclicWord, HomologyVector};

pub use enumerate::{enumerate, enumerate_shard, enumerate_with, EnumerateOptions};
pub use io::{census_file_name, load, load_for, read_census, save, write_census, FORMAT_VERSION};
pub use oracle::brute_conjugacy_oracle;

/// Significant digits kept for lengths and norms.
pub const LENGTH_DIGITS: usize = 30;

/// One conjugacy class of the group, i.e. one oriented closed geodesic.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicClass {
    pub canonical: CyclicWord,
    pub word_length: usize,
    pub length: ScalarHP,
    pub norm: ScalarHP,
    pub homology: HomologyVector,
    pub primitive: bool,
    pub multiplicity: usize,
}

/// Error bound attached to a stored norm. It is a function of the stored
/// length error only, so records rebuild identically from a cache file.
pub(crate) fn derived_norm_err(norm: &ScalarHP, length_err: f64) -> f64 {
    norm.to_f64().abs() * (length_err.exp_m1() * (1.0 + 1e-9) + 1e-29)
}

impl GeodesicClass {
    /// Builds the record for a canonical word, rounding length and norm to
    /// [`LENGTH_DIGITS`] significant digits.
    pub fn new(genus: usize, canonical: CyclicWord, ln: &LengthNorm) -> Self {
        let length = ln.length.rounded_to_decimal(LENGTH_DIGITS);
        let norm_value = ln.norm.rounded_to_decimal(LENGTH_DIGITS);
        let err = derived_norm_err(&norm_value, length.err());
        debug_assert!(err >= norm_value.err(), "{err} < {}", norm_value.err());
        let norm = ScalarHP::new(norm_value.value().clone(), err);
        let (_, m) = primitive_root(&canonical);
        GeodesicClass {
            word_length: canonical.len(),
            homology: abelianize(genus, canonical.letters()),
            primitive: m == 1,
            multiplicity: m,
            canonical,
            length,
            norm,
        }
    }

    pub fn length_f64(&self) -> f64 {
        self.length.to_f64()
    }
}

/// Every conjugacy class up to a word-length bound, sorted shortlex by
/// canonical word.
#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    pub genus: usize,
    pub representation_name: String,
    pub representation_id: String,
    pub precision: u32,
    pub word_length_bound: usize,
    /// Subtracted from the frontier minimum to give ℓ*.
    pub safety_margin: f64,
    pub tool_version: String,
    classes: Vec<GeodesicClass>,
}

impl Census {
    pub fn new(
        genus: usize,
        representation_name: impl Into<String>,
        representation_id: impl Into<String>,
        precision: u32,
        word_length_bound: usize,
        safety_margin: f64,
        mut classes: Vec<GeodesicClass>,
    ) -> Self {
        classes.sort_by(|a, b| a.canonical.cmp(&b.canonical));
        classes.dedup_by(|a, b| a.canonical == b.canonical);
        Census {
            genus,
            representation_name: representation_name.into(),
            representation_id: representation_id.into(),
            precision,
            word_length_bound,
            safety_margin,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            classes,
        }
    }

    pub fn classes(&self) -> &[GeodesicClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn get(&self, canonical: &CyclicWord) -> Option<&GeodesicClass> {
        self.classes
            .binary_search_by(|c| c.canonical.cmp(canonical))
            .ok()
            .map(|i| &self.classes[i])
    }

    pub fn primitive(&self) -> impl Iterator<Item = &GeodesicClass> {
        self.classes.iter().filter(|c| c.primitive)
    }

    /// Number of classes at each word length `0..=L`.
    pub fn counts_by_word_length(&self) -> Vec<usize> {
        let mut v = vec![0; self.word_length_bound + 1];
        for c in &self.classes {
            if c.word_length < v.len() {
                v[c.word_length] += 1;
            }
        }
        v
    }

    /// ℓ*: the shortest length among classes of word length exactly `L`,
    /// minus the safety margin.
    pub fn completeness_length(&self) -> Result<ScalarHP> {
        let frontier = self
            .classes
            .iter()
            .filter(|c| c.word_length == self.word_length_bound)
            .min_by(|a, b| {
                a.length
                    .value()
                    .partial_cmp(b.length.value())
                    .unwrap_or(Ordering::Equal)
            });
        let Some(min) = frontier else {
            return Err(Error::InsufficientData(
                "census has no classes at its word-length bound".into(),
            ));
        };
        let margin = ScalarHP::exact_f64(self.precision, self.safety_margin);
        Ok(min.length.sub(&margin))
    }

    /// ℓ* as a double, conservatively rounded down.
    pub fn completeness_length_f64(&self) -> Option<f64> {
        self.completeness_length().ok().map(|l| l.lo_f64())
    }

    pub(crate) fn check_compatible(&self, o: &Census) -> Result<()> {
        if self.representation_id != o.representation_id {
            return Err(Error::IncompatibleCensus(format!(
                "representation {} vs {}",
                self.representation_id, o.representation_id
            )));
        }
        if self.precision != o.precision || self.genus != o.genus {
            return Err(Error::IncompatibleCensus(format!(
                "precision/genus {}/{} vs {}/{}",
                self.precision, self.genus, o.precision, o.genus
            )));
        }
        Ok(())
    }
}

/// Union keyed by canonical word, with `L = max`.
pub fn merge(a: &Census, b: &Census) -> Result<Census> {
    a.check_compatible(b)?;
    let mut classes = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let (x, y) = (&a.classes, &b.classes);
    while i < x.len() || j < y.len() {
        let ord = match (x.get(i), y.get(j)) {
            (Some(p), Some(q)) => p.canonical.cmp(&q.canonical),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                classes.push(x[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                classes.push(y[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                classes.push(x[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    let mut out = Census::new(
        a.genus,
        a.representation_name.clone(),
        a.representation_id.clone(),
        a.precision,
        a.word_length_bound.max(b.word_length_bound),
        a.safety_margin.max(b.safety_margin),
        Vec::new(),
    );
    out.classes = classes;
    Ok(out)
}
