//! Predictor formulas for single and pair counts, covariance estimation and
//! census-versus-prediction reports.

mod compare;
mod li;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::census::Census;
use crate::counting::Counter;
use crate::error::{Error, Result};
use crate::surface_group::{HomologyVector, NormKind};

pub use compare::{compare, default_queries, ComparisonReport, ComparisonRow, Query, QueryKind};
pub use li::li;

/// Gaussian local-limit parameters: `σ²` and the determinant-one matrix `N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticModel {
    pub genus: usize,
    pub sigma2: f64,
    #[serde(with = "matrix_rows")]
    pub n: DMatrix<f64>,
    #[serde(skip)]
    n_inverse: DMatrix<f64>,
    pub source: String,
}

mod matrix_rows {
    use nalgebra::DMatrix;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &DMatrix<f64>, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DMatrix<f64>, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom("matrix must be square"));
        }
        Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }
}

impl AsymptoticModel {
    /// `σ² = 1/(2π(g−1))` and `N = I`.
    pub fn default_for_genus(genus: usize) -> Self {
        let dim = 2 * genus;
        AsymptoticModel {
            genus,
            sigma2: 1.0 / (2.0 * PI * (genus as f64 - 1.0)),
            n: DMatrix::identity(dim, dim),
            n_inverse: DMatrix::identity(dim, dim),
            source: "default".into(),
        }
    }

    /// Checks that `N` is `2g×2g`, symmetric, positive definite with det 1.
    pub fn new(genus: usize, sigma2: f64, n: DMatrix<f64>, source: &str) -> Result<Self> {
        let dim = 2 * genus;
        if genus < 2 || n.nrows() != dim || n.ncols() != dim {
            return Err(Error::Config(format!(
                "N must be {dim}x{dim} for genus {genus}, got {}x{}",
                n.nrows(),
                n.ncols()
            )));
        }
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::Config(format!("sigma2 = {sigma2} must be positive")));
        }
        if (&n - n.transpose()).amax() > 1e-12 * n.amax() {
            return Err(Error::Config("N is not symmetric".into()));
        }
        let det = n.determinant();
        if (det - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("det N = {det}, expected 1")));
        }
        let chol = n
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Config("N is not positive definite".into()))?;
        Ok(AsymptoticModel {
            genus,
            sigma2,
            n_inverse: chol.inverse(),
            n,
            source: source.into(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: AsymptoticModel =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("model: {e}")))?;
        AsymptoticModel::new(m.genus, m.sigma2, m.n, &m.source)
    }

    pub fn n_inverse(&self) -> &DMatrix<f64> {
        &self.n_inverse
    }

    /// `⟨β, N⁻¹β⟩`.
    pub fn quadratic_form(&self, beta: &HomologyVector) -> f64 {
        let b: Vec<f64> = beta.coords().iter().map(|&x| x as f64).collect();
        let mut s = 0.0;
        for i in 0..b.len() {
            for j in 0..b.len() {
                s += b[i] * self.n_inverse[(i, j)] * b[j];
            }
        }
        s
    }

    fn check_beta(&self, beta: &HomologyVector) {
        assert_eq!(beta.dim(), 2 * self.genus, "homology vector of wrong dimension");
    }

    fn gauss(&self, beta: &HomologyVector, log_x: f64) -> f64 {
        self.check_beta(beta);
        (-self.quadratic_form(beta) / (2.0 * self.sigma2 * log_x)).exp()
    }

    fn gauss_norm(&self, log_x: f64) -> f64 {
        (2.0 * PI * self.sigma2 * log_x).powi(self.genus as i32)
    }
}

fn domain(x: f64, min: f64, strict: bool) -> Result<()> {
    if x.is_nan() || x < min || (strict && x == min) {
        Err(Error::Domain(x))
    } else {
        Ok(())
    }
}

/// `(g−1)^g x / log^{g+1} x`.
pub fn ps_main_term(model: &AsymptoticModel, x: f64) -> Result<f64> {
    domain(x, 1.0, true)?;
    let g = model.genus as i32;
    Ok(((g - 1) as f64).powi(g) * x / x.ln().powi(g + 1))
}

/// `e^{−⟨β,N⁻¹β⟩/2σ² log x} / (2πσ² log x)^g · li(x)`.
pub fn sharp_local_term(model: &AsymptoticModel, beta: &HomologyVector, x: f64) -> Result<f64> {
    let l = x.ln();
    Ok(model.gauss(beta, l) / model.gauss_norm(l) * li(x)?)
}

/// `A(β, x) = 4√x e^{−⟨β,N⁻¹β⟩/2σ² log x} / (2πσ² log x)^g`.
pub fn a_weight(model: &AsymptoticModel, beta: &HomologyVector, x: f64) -> Result<f64> {
    domain(x, 1.0, true)?;
    let l = x.ln();
    Ok(4.0 * x.sqrt() * model.gauss(beta, l) / model.gauss_norm(l))
}

fn pair_domain(x1: f64, x2: f64) -> Result<()> {
    domain(x1, 1.0, true)?;
    domain(x2, 1.0, true)
}

/// `e^{−⟨β,N⁻¹β⟩/2σ² log x₂} / (2πσ²(log x₁ + log x₂))^g · x₁x₂ / (log x₁ log x₂)`.
pub fn pair_main_term(model: &AsymptoticModel, beta: &HomologyVector, x1: f64, x2: f64) -> Result<f64> {
    pair_domain(x1, x2)?;
    let (l1, l2) = (x1.ln(), x2.ln());
    Ok(model.gauss(beta, l2) / model.gauss_norm(l1 + l2) * x1 * x2 / (l1 * l2))
}

/// `16√(x₁x₂) e^{−⟨β,N⁻¹β⟩/2σ² log x₂} / (2πσ²(log x₁ + log x₂))^g`.
pub fn r2_main_term(model: &AsymptoticModel, beta: &HomologyVector, x1: f64, x2: f64) -> Result<f64> {
    pair_domain(x1, x2)?;
    let (l1, l2) = (x1.ln(), x2.ln());
    Ok(16.0 * (x1 * x2).sqrt() * model.gauss(beta, l2) / model.gauss_norm(l1 + l2))
}

/// `(1/log x₁ + 1/log x₂)⁻¹`.
pub fn g_combined(x1: f64, x2: f64) -> Result<f64> {
    pair_domain(x1, x2)?;
    Ok(g_combined_logs(x1.ln(), x2.ln()))
}

fn g_combined_logs(l1: f64, l2: f64) -> f64 {
    1.0 / (1.0 / l1 + 1.0 / l2)
}

/// Result of [`gaussian_convolution_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
}

/// Compares the lattice sum
/// `Σ_{‖α‖≤window} e^{−⟨α,N⁻¹α⟩/2σ²L₁} e^{−⟨α+β,N⁻¹(α+β)⟩/2σ²L₂}`
/// against `e^{−⟨β,N⁻¹β⟩/2σ²(L₁+L₂)} (2πσ² g(L₁,L₂))^g`.
pub fn gaussian_convolution_check(
    model: &AsymptoticModel,
    beta: &HomologyVector,
    l1: f64,
    l2: f64,
    window: f64,
    norm: NormKind,
) -> GaussianCheck {
    model.check_beta(beta);
    let dim = 2 * model.genus;
    let w = window.max(0.0).floor() as i32;
    let mut terms = Vec::new();
    let mut alpha = vec![0i32; dim];
    lattice_points(&mut alpha, 0, w, norm, &mut |a| {
        let a = HomologyVector(a.to_vec());
        let ab = a.add(beta);
        terms.push(model.gauss(&a, l1) * model.gauss(&ab, l2));
    });
    let lhs = crate::counting::pairwise_sum(&terms);
    let rhs = model.gauss(beta, l1 + l2) * (2.0 * PI * model.sigma2 * g_combined_logs(l1, l2)).powi(model.genus as i32);
    GaussianCheck {
        lhs,
        rhs,
        rel_err: (lhs - rhs).abs() / rhs,
    }
}

/// Visits every `α ∈ Z^dim` with `‖α‖ ≤ budget` in lexicographic order.
fn lattice_points(a: &mut [i32], i: usize, budget: i32, norm: NormKind, f: &mut impl FnMut(&[i32])) {
    if i == a.len() {
        f(a);
        return;
    }
    for v in -budget..=budget {
        a[i] = v;
        let rest = match norm {
            NormKind::Sum => budget - v.abs(),
            NormKind::Max => budget,
        };
        lattice_points(a, i + 1, rest, norm, f);
    }
    a[i] = 0;
}

/// Sample covariance `Ĉ` of `homology/√length` over primitive classes with
/// length in `[lo, hi]`, returned as `σ̂² = det(Ĉ)^{1/2g}` and `N̂ = Ĉ/σ̂²`.
pub fn estimate_covariance(census: &Census, window: (f64, f64)) -> Result<(f64, DMatrix<f64>)> {
    let dim = 2 * census.genus;
    let samples: Vec<Vec<f64>> = Counter::new(census)
        .primitive_up_to(window.1.exp())
        .filter(|(l, _)| *l >= window.0 && *l <= window.1)
        .map(|(l, h)| h.coords().iter().map(|&x| x as f64 / l.sqrt()).collect())
        .collect();
    if samples.len() < 100 {
        return Err(Error::InsufficientData(format!(
            "{} primitive classes with length in [{}, {}], need at least 100",
            samples.len(),
            window.0,
            window.1
        )));
    }
    let n = samples.len() as f64;
    let mean: Vec<f64> = (0..dim)
        .map(|i| samples.iter().map(|s| s[i]).sum::<f64>() / n)
        .collect();
    let c = DMatrix::from_fn(dim, dim, |i, j| {
        samples
            .iter()
            .map(|s| (s[i] - mean[i]) * (s[j] - mean[j]))
            .sum::<f64>()
            / (n - 1.0)
    });
    let det = c.determinant();
    if det.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InsufficientData(format!(
            "sample covariance is singular (det = {det})"
        )));
    }
    let sigma2 = det.powf(1.0 / dim as f64);
    Ok((sigma2, c / sigma2))
}

/// `σ̂²` and `N̂` packaged as a model.
pub fn empirical_model(census: &Census, window: (f64, f64)) -> Result<AsymptoticModel> {
    let (sigma2, n) = estimate_covariance(census, window)?;
    let n = (&n + n.transpose()) * 0.5;
    let det = n.determinant();
    let dim = n.nrows() as f64;
    let n = n / det.powf(1.0 / dim);
    AsymptoticModel::new(census.genus, sigma2, n, "empirical")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn e(i: usize) -> HomologyVector {
        HomologyVector::unit(2, i)
    }

    #[test]
    fn formulas() {
        let m2 = AsymptoticModel::default_for_genus(2);
        let x = 10f64.exp();
        assert_relative_eq!(ps_main_term(&m2, x).unwrap(), x / 1000.0, max_relative = 1e-14);
        let m3 = AsymptoticModel::default_for_genus(3);
        assert_relative_eq!(ps_main_term(&m3, 1f64.exp()).unwrap(), 8.0 * 1f64.exp(), max_relative = 1e-14);
        let zero = HomologyVector::zero(2);
        let a0 = a_weight(&m2, &zero, x).unwrap();
        assert_relative_eq!(a0 * m2.gauss_norm(10.0) / (4.0 * x.sqrt()), 1.0, max_relative = 1e-14);
        assert_eq!(a_weight(&m2, &e(0), x).unwrap(), a_weight(&m2, &e(0).neg(), x).unwrap());
        let n4pi = AsymptoticModel::new(2, 1.0 / (4.0 * PI), DMatrix::identity(4, 4), "t").unwrap();
        let x100 = 100f64.exp();
        let ratio = sharp_local_term(&n4pi, &e(0), x100).unwrap() / sharp_local_term(&n4pi, &zero, x100).unwrap();
        assert_relative_eq!(ratio, (-PI / 50.0).exp(), max_relative = 1e-12);
        assert_relative_eq!(pair_main_term(&m2, &zero, x, x).unwrap(), 0.25 * x * x / 1e4, max_relative = 1e-12);
        assert_relative_eq!(g_combined(2f64.exp(), 2f64.exp()).unwrap(), 1.0, max_relative = 1e-14);
        assert!(matches!(ps_main_term(&m2, 1.0), Err(Error::Domain(_))));
        assert!(matches!(sharp_local_term(&m2, &zero, 1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn model_validation() {
        assert!(AsymptoticModel::new(2, 0.1, DMatrix::identity(4, 4) * 2.0, "t").is_err());
        assert!(AsymptoticModel::new(2, 0.1, DMatrix::identity(3, 3), "t").is_err());
        let mut n = DMatrix::identity(4, 4);
        n[(0, 1)] = 0.5;
        assert!(AsymptoticModel::new(2, 0.1, n, "t").is_err());
        let m = AsymptoticModel::default_for_genus(2);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(AsymptoticModel::from_json(&json).unwrap(), m);
    }

    #[test]
    fn gaussian_window_zero_is_single_term() {
        let m = AsymptoticModel::default_for_genus(2);
        let b = e(0);
        let c = gaussian_convolution_check(&m, &b, 10.0, 10.0, 0.0, NormKind::Sum);
        assert_relative_eq!(c.lhs, m.gauss(&b, 10.0), max_relative = 1e-15);
        let mut count = 0;
        lattice_points(&mut [0; 4], 0, 2, NormKind::Sum, &mut |_| count += 1);
        assert_eq!(count, 1 + 8 + 32);
    }
}
