use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::word::Letter;
use crate::error::{Error, Result};

/// Exponent sums in coordinates (a1, …, ag, b1, …, bg).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyVector(pub Vec<i32>);

/// Which norm `‖·‖_m` means on homology vectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    /// Σ|rᵢ|.
    #[default]
    Sum,
    /// max|rᵢ|.
    Max,
}

impl HomologyVector {
    pub fn zero(genus: usize) -> Self {
        HomologyVector(vec![0; 2 * genus])
    }

    pub fn unit(genus: usize, i: usize) -> Self {
        let mut v = vec![0; 2 * genus];
        v[i] = 1;
        HomologyVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn norm(&self, kind: NormKind) -> i64 {
        let abs = self.0.iter().map(|&x| (x as i64).abs());
        match kind {
            NormKind::Sum => abs.sum(),
            NormKind::Max => abs.max().unwrap_or(0),
        }
    }

    pub fn neg(&self) -> Self {
        HomologyVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        HomologyVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        HomologyVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    /// Parse comma-separated integers; the count must be `2 * genus`.
    pub fn parse_for_genus(s: &str, genus: usize) -> Result<Self> {
        let h: HomologyVector = s.parse()?;
        if h.dim() != 2 * genus {
            return Err(Error::InvalidQuery(format!(
                "homology vector {s:?} has {} entries, expected {}",
                h.dim(),
                2 * genus
            )));
        }
        Ok(h)
    }
}

impl FromStr for HomologyVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(HomologyVector(Vec::new()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::InvalidQuery(format!("bad integer {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(HomologyVector)
    }
}

impl fmt::Display for HomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

pub fn abelianize(genus: usize, letters: &[Letter]) -> HomologyVector {
    let mut v = vec![0i32; 2 * genus];
    for l in letters {
        v[l.homology_index(genus)] += l.exponent();
    }
    HomologyVector(v)
}

/// `exp(2πi⟨h, eps⟩)`.
pub fn eval_character(h: &HomologyVector, eps: &[f64]) -> Complex64 {
    assert_eq!(h.dim(), eps.len(), "dimension mismatch");
    let dot: f64 = h.0.iter().zip(eps).map(|(&a, &e)| a as f64 * e).sum();
    // Reduce mod 1 first so integer eps gives exactly 1.
    let frac = dot - dot.round();
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * frac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_group::word::parse_letters;

    #[test]
    fn exponent_sums() {
        let w = parse_letters("a1a1A2b2b2b2").unwrap();
        assert_eq!(abelianize(2, &w).0, vec![2, -1, 0, 3]);
        let w = parse_letters("a1b1A1").unwrap();
        assert_eq!(abelianize(2, &w), HomologyVector::unit(2, 2));
        let r = parse_letters("a1b1A1B1a2b2A2B2a3b3A3B3").unwrap();
        assert!(abelianize(3, &r).is_zero());
    }

    #[test]
    fn characters() {
        let h = HomologyVector(vec![1, 0, 0, 0]);
        let z = eval_character(&h, &[0.5, 0.0, 0.0, 0.0]);
        assert!((z.re + 1.0).abs() < 1e-15 && z.im.abs() < 1e-15);
        let z = eval_character(&HomologyVector(vec![3, -2]), &[1.0, 4.0]);
        assert_eq!(z, Complex64::new(1.0, 0.0));
        let z = eval_character(&HomologyVector(vec![1, 1]), &[1.0 / 3.0, 1.0 / 3.0]);
        let want = Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / 3.0);
        assert!((z - want).norm() < 1e-12);
        assert!((z.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn norms_and_parsing() {
        let h: HomologyVector = "1,-2,0,3".parse().unwrap();
        assert_eq!(h.norm(NormKind::Sum), 6);
        assert_eq!(h.norm(NormKind::Max), 3);
        assert!(HomologyVector::parse_for_genus("1,2,3", 2).is_err());
        assert!(HomologyVector::parse_for_genus("1,x,3,4", 2).is_err());
    }
}
