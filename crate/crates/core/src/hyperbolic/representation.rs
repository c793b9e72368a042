use std::path::Path;

use rug::Float;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use super::mat2::{length_from_trace, Mat2};
use super::scalar::ScalarHP;
use crate::error::{Error, Result};
use crate::surface_group::{cyclic_free_reduce_letters, Letter, Presentation};

/// Relator tolerance for the built-in preset.
const PRESET_TOLERANCE: f64 = 1e-20;
const CONFIG_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Source {
    Preset(String),
    Config(String),
}

/// Images of the generators in SL₂(R), one matrix per letter.
#[derive(Clone, Debug)]
pub struct Representation {
    presentation: Presentation,
    name: String,
    id: String,
    source: Source,
    images: Vec<Mat2>,
    images_f64: Vec<[f64; 4]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    genus: usize,
    name: Option<String>,
    tolerance: Option<f64>,
    generators: Vec<ConfigGenerator>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigGenerator {
    #[allow(dead_code)]
    label: Option<String>,
    entries: [String; 4],
}

/// `"bolza"` or a path to a representation config file.
pub fn load_preset(name: &str, prec: u32) -> Result<Representation> {
    Representation::load(name, prec)
}

impl Representation {
    pub fn load(name: &str, prec: u32) -> Result<Self> {
        match name {
            "bolza" => Representation::bolza(prec),
            path if Path::new(path).is_file() => Representation::from_config_file(path, prec),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }

    /// The regular-octagon group of the Bolza surface.
    ///
    /// The octagon side pairings are hyperbolic translations `g_k` of length
    /// `2r` (with `cosh r = 1 + √2`) along the axis through the origin at angle
    /// `kπ/4`, k = 0..3. They satisfy `g0 g3 g2⁻¹ g1 g0⁻¹ g3⁻¹ g2 g1⁻¹ = 1`, and
    /// `a1 = g0, b1 = g3, a2 = g2 g1⁻¹, b2 = g0 g3 g1⁻¹` is a generating set
    /// satisfying the standard relator.
    pub fn bolza(prec: u32) -> Result<Self> {
        let wp = prec + 32;
        let sqrt2 = Float::with_val(wp, 2).sqrt();
        let c = Float::with_val(wp, 1 + &sqrt2);
        let s = Float::with_val(wp, &c * 2).sqrt();
        let h = Float::with_val(wp, &sqrt2 / 2);
        let zero = Float::new(wp);
        let one = Float::with_val(wp, 1);
        let angles = [
            (one.clone(), zero.clone()),
            (h.clone(), h.clone()),
            (zero.clone(), one.clone()),
            (Float::with_val(wp, -&h), h.clone()),
        ];
        let g: Vec<Mat2> = angles
            .iter()
            .map(|(cos, sin)| {
                let sc = Float::with_val(wp, &s * cos);
                let ss = Float::with_val(wp, &s * sin);
                let e = [
                    Float::with_val(prec, &c + &sc),
                    Float::with_val(prec, -&ss),
                    Float::with_val(prec, -&ss),
                    Float::with_val(prec, &c - &sc),
                ];
                let err = 4.0 * e[0].to_f64().abs() * (2.0f64).powi(1 - prec as i32);
                Mat2::from_floats(e, err)
            })
            .collect();
        let a1 = g[0].clone();
        let b1 = g[3].clone();
        let a2 = g[2].mul(&g[1].inverse());
        let b2 = g[0].mul(&g[3]).mul(&g[1].inverse());
        let p = Presentation::new(2)?;
        Representation::build(
            p,
            "bolza".to_string(),
            Source::Preset("bolza".to_string()),
            vec![a1, b1, a2, b2],
            PRESET_TOLERANCE,
        )
    }

    pub fn from_config_file(path: impl AsRef<Path>, prec: u32) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Representation::from_config_str(&text, prec)
    }

    /// Parses a config of the form
    ///
    /// ```toml
    /// genus = 2
    /// name = "example"
    /// [[generators]]          # in order a1, b1, a2, b2, ...
    /// entries = ["a", "b", "c", "d"]
    /// ```
    ///
    /// Each matrix is rescaled by `1/√det` into SL₂(R).
    pub fn from_config_str(text: &str, prec: u32) -> Result<Self> {
        let cfg: ConfigFile =
            toml::from_str(text).map_err(|e| Error::Config(format!("representation config: {e}")))?;
        let p = Presentation::new(cfg.genus)?;
        if cfg.generators.len() != 2 * cfg.genus {
            return Err(Error::Config(format!(
                "genus {} needs {} generator matrices, found {}",
                cfg.genus,
                2 * cfg.genus,
                cfg.generators.len()
            )));
        }
        let mut gens = Vec::with_capacity(cfg.generators.len());
        for (k, g) in cfg.generators.iter().enumerate() {
            let s = [
                ScalarHP::parse(prec, &g.entries[0])?,
                ScalarHP::parse(prec, &g.entries[1])?,
                ScalarHP::parse(prec, &g.entries[2])?,
                ScalarHP::parse(prec, &g.entries[3])?,
            ];
            let m = Mat2::from_scalars(s);
            let det = m.det();
            if det.lo_f64() <= 0.0 {
                return Err(Error::ValidationFailed(format!(
                    "generator {k} has non-positive determinant"
                )));
            }
            let scale = det.sqrt()?;
            let f = m.floats();
            let e = [0, 1, 2, 3].map(|i| Float::with_val(prec, &f[i] / scale.value()));
            let rel = scale.err() / scale.lo_f64();
            let err = m.err() / scale.lo_f64()
                + m.max_abs() * rel * 2.0
                + 2.0 * m.max_abs() * (2.0f64).powi(1 - prec as i32);
            gens.push(Mat2::from_floats(e, err));
        }
        let name = cfg.name.clone().unwrap_or_else(|| "config".to_string());
        Representation::build(
            p,
            name,
            Source::Config(text.to_string()),
            gens,
            cfg.tolerance.unwrap_or(CONFIG_TOLERANCE),
        )
    }

    fn build(
        presentation: Presentation,
        name: String,
        source: Source,
        generators: Vec<Mat2>,
        tolerance: f64,
    ) -> Result<Self> {
        let mut images = Vec::with_capacity(2 * generators.len());
        for g in generators {
            images.push(g.inverse());
            images.push(g);
            let n = images.len();
            images.swap(n - 2, n - 1);
        }
        let images_f64 = images.iter().map(|m| m.to_f64()).collect();
        let id = {
            let mut h = Sha256::new();
            match &source {
                Source::Preset(n) => h.update(format!("preset:{n}")),
                Source::Config(t) => {
                    h.update("config:");
                    h.update(t.as_bytes());
                }
            }
            let digest = h.finalize();
            digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
        };
        let rep = Representation {
            presentation,
            name,
            id,
            source,
            images,
            images_f64,
        };
        rep.validate(tolerance)?;
        Ok(rep)
    }

    fn validate(&self, tolerance: f64) -> Result<()> {
        let r = self.word_to_matrix(self.presentation.relator())?;
        let dev = r.distance_to_pm_identity();
        if !(dev <= tolerance) {
            return Err(Error::ValidationFailed(format!(
                "relator maps {dev:e} away from ±I (tolerance {tolerance:e})"
            )));
        }
        for m in self.images.iter() {
            let d = m.det();
            let dev = (d.to_f64() - 1.0).abs() + d.err();
            if !(dev <= tolerance) {
                return Err(Error::ValidationFailed(format!(
                    "generator determinant is {dev:e} away from 1"
                )));
            }
        }
        let letters: Vec<Letter> = self.presentation.alphabet().collect();
        let mut words: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..3 {
            let mut next = Vec::new();
            for w in &words {
                for &l in &letters {
                    if w.last().is_some_and(|x| *x == l.inverse()) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(l);
                    let cyclic = cyclic_free_reduce_letters(&v).len() == v.len();
                    if cyclic {
                        let t = self.word_to_matrix(&v)?.trace();
                        if let Err(e) = length_from_trace(&t) {
                            return Err(Error::ValidationFailed(format!(
                                "word {} is not certifiably hyperbolic ({e})",
                                crate::surface_group::Word::new(&v)
                            )));
                        }
                    }
                    next.push(v);
                }
            }
            words = next;
        }
        Ok(())
    }

    /// The same representation rebuilt at another precision.
    pub fn with_precision(&self, prec: u32) -> Result<Self> {
        match &self.source {
            Source::Preset(n) => Representation::load(n, prec),
            Source::Config(t) => Representation::from_config_str(t, prec),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn genus(&self) -> usize {
        self.presentation.genus()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Stable hash of the representation source, independent of precision.
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn precision(&self) -> u32 {
        self.images[0].prec()
    }

    pub fn image(&self, l: Letter) -> &Mat2 {
        &self.images[l.code() as usize]
    }

    pub fn word_to_matrix(&self, w: &[Letter]) -> Result<Mat2> {
        self.presentation.check_letters(w)?;
        let mut acc = Mat2::identity(self.precision());
        let mut out = acc.clone();
        let mut tmp = Float::new(self.precision());
        for &l in w {
            acc.mul_into(self.image(l), &mut out, &mut tmp);
            std::mem::swap(&mut acc, &mut out);
        }
        Ok(acc)
    }

    /// Double-precision trace, for diagnostics and bucketing only.
    pub fn trace_f64(&self, w: &[Letter]) -> f64 {
        let mut m = [1.0, 0.0, 0.0, 1.0];
        for &l in w {
            let g = &self.images_f64[l.code() as usize];
            m = [
                m[0] * g[0] + m[1] * g[2],
                m[0] * g[1] + m[1] * g[3],
                m[2] * g[0] + m[3] * g[2],
                m[2] * g[1] + m[3] * g[3],
            ];
        }
        m[0] + m[3]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::length_of;
    use crate::surface_group::parse_letters;

    #[test]
    fn bolza_generators_are_systolic() {
        let rep = Representation::bolza(128).unwrap();
        let want = 2.0 * (1.0 + 2f64.sqrt());
        for l in rep.presentation().alphabet() {
            let t = rep.image(l).trace();
            assert!((t.to_f64().abs() - want).abs() < 1e-12);
            let ln = length_of(rep.image(l)).unwrap();
            assert!((ln.length.to_f64() - 3.057141839).abs() < 1e-8);
        }
    }

    #[test]
    fn bolza_relator_is_identity() {
        let rep = Representation::bolza(128).unwrap();
        let r = rep.word_to_matrix(rep.presentation().relator()).unwrap();
        assert!(r.distance_to_pm_identity() < 1e-20);
    }

    #[test]
    fn identity_config_fails_validation() {
        let cfg = r#"
genus = 2
[[generators]]
entries = ["1", "0", "0", "1"]
[[generators]]
entries = ["1", "0", "0", "1"]
[[generators]]
entries = ["1", "0", "0", "1"]
[[generators]]
entries = ["1", "0", "0", "1"]
"#;
        let e = Representation::from_config_str(cfg, 128).unwrap_err();
        assert!(matches!(e, Error::ValidationFailed(_)), "{e}");
    }

    #[test]
    fn unknown_preset() {
        assert!(matches!(
            Representation::load("no-such-surface", 128),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn word_and_inverse() {
        let rep = Representation::bolza(128).unwrap();
        let w = parse_letters("a1b2A2b1b1").unwrap();
        let wi = crate::surface_group::inverse_letters(&w);
        let mut both = w.clone();
        both.extend(wi);
        assert!(rep.word_to_matrix(&both).unwrap().distance_to_pm_identity() < 1e-25);
        assert!(rep.word_to_matrix(&[]).unwrap().distance_to_pm_identity() == 0.0);
    }
}
