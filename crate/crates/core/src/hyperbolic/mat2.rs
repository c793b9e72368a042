use rug::{Assign, Float};

use super::scalar::ScalarHP;
use crate::error::{Error, Result};

#[inline]
fn up(x: f64) -> f64 {
    x * (1.0 + 4.0 * f64::EPSILON)
}

/// A 2×2 real matrix `[[a, b], [c, d]]` with one error bound shared by all
/// four entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2 {
    e: [Float; 4],
    err: f64,
}

impl Mat2 {
    pub fn identity(prec: u32) -> Self {
        Mat2::from_floats(
            [
                Float::with_val(prec, 1),
                Float::with_val(prec, 0),
                Float::with_val(prec, 0),
                Float::with_val(prec, 1),
            ],
            0.0,
        )
    }

    pub fn from_floats(e: [Float; 4], err: f64) -> Self {
        Mat2 { e, err }
    }

    pub fn from_scalars(s: [ScalarHP; 4]) -> Self {
        let err = s.iter().map(|x| x.err()).fold(0.0, f64::max);
        let [a, b, c, d] = s;
        Mat2 {
            e: [a.value().clone(), b.value().clone(), c.value().clone(), d.value().clone()],
            err,
        }
    }

    pub fn prec(&self) -> u32 {
        self.e[0].prec()
    }

    pub fn entry(&self, i: usize, j: usize) -> ScalarHP {
        ScalarHP::new(self.e[2 * i + j].clone(), self.err)
    }

    pub fn floats(&self) -> &[Float; 4] {
        &self.e
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [
            self.e[0].to_f64(),
            self.e[1].to_f64(),
            self.e[2].to_f64(),
            self.e[3].to_f64(),
        ]
    }

    pub(crate) fn max_abs(&self) -> f64 {
        self.e.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let mut out = Mat2::identity(self.prec());
        let mut tmp = Float::new(self.prec());
        self.mul_into(o, &mut out, &mut tmp);
        out
    }

    /// `out = self · o` without allocating.
    pub fn mul_into(&self, o: &Mat2, out: &mut Mat2, tmp: &mut Float) {
        let (a, b) = (&self.e, &o.e);
        for i in 0..2 {
            for j in 0..2 {
                let dst = &mut out.e[2 * i + j];
                dst.assign(&a[2 * i] * &b[j]);
                tmp.assign(&a[2 * i + 1] * &b[2 + j]);
                *dst += &*tmp;
            }
        }
        let (ma, mb) = (self.max_abs(), o.max_abs());
        let ulp = (2.0f64).powi(1 - self.prec() as i32);
        out.err = up(2.0 * (ma * o.err + mb * self.err + self.err * o.err) + 4.0 * ma * mb * ulp);
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inverse(&self) -> Mat2 {
        let p = self.prec();
        Mat2 {
            e: [
                self.e[3].clone(),
                Float::with_val(p, -&self.e[1]),
                Float::with_val(p, -&self.e[2]),
                self.e[0].clone(),
            ],
            err: self.err,
        }
    }

    pub fn trace(&self) -> ScalarHP {
        let v = Float::with_val(self.prec(), &self.e[0] + &self.e[3]);
        let r = v.to_f64().abs() * (2.0f64).powi(1 - self.prec() as i32);
        ScalarHP::new(v, up(2.0 * self.err + r))
    }

    pub fn det(&self) -> ScalarHP {
        let a = self.entry(0, 0).mul(&self.entry(1, 1));
        let b = self.entry(0, 1).mul(&self.entry(1, 0));
        a.sub(&b)
    }

    /// Largest deviation from `+I` or `−I`, whichever is closer, plus the
    /// error bound.
    pub fn distance_to_pm_identity(&self) -> f64 {
        let f = self.to_f64();
        let plus = (f[0] - 1.0).abs().max(f[1].abs()).max(f[2].abs()).max((f[3] - 1.0).abs());
        let minus = (f[0] + 1.0).abs().max(f[1].abs()).max(f[2].abs()).max((f[3] + 1.0).abs());
        // f64 rounding of entries near ±1 is far below any tolerance we use.
        plus.min(minus) + self.err
    }
}

/// Geodesic length and norm of a hyperbolic element.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthNorm {
    pub length: ScalarHP,
    pub norm: ScalarHP,
}

/// `l = 2 arccosh(|tr|/2)` and `N = e^l`, both computed from
/// `s = u + √(u² − 1)` with `u = |tr|/2`, so that `l = 2 ln s` and `N = s²`.
pub fn length_of(m: &Mat2) -> Result<LengthNorm> {
    length_from_trace(&m.trace())
}

pub fn length_from_trace(trace: &ScalarHP) -> Result<LengthNorm> {
    let u = trace.abs().div_int(2);
    let lo = u.lo_f64();
    let hi = u.hi_f64();
    if hi <= 1.0 || (*u.value() <= 1 && u.err() == 0.0) {
        return Err(Error::NotHyperbolic);
    }
    if lo <= 1.0 {
        return Err(Error::PrecisionExhausted(format!(
            "|trace|/2 = {} ± {:e} is too close to 1",
            u.to_f64(),
            u.err()
        )));
    }
    let one = ScalarHP::exact_int(u.prec(), 1);
    let s = u.add(&u.mul(&u).sub(&one).sqrt()?);
    let length = s.ln()?.mul_int(2);
    let norm = s.mul(&s);
    Ok(LengthNorm { length, norm })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_of_known_traces() {
        let p = 128;
        let half = ScalarHP::exact_f64(p, 0.5);
        let t = half.exp().add(&half.neg().exp());
        let ln = length_from_trace(&t).unwrap();
        assert!((ln.length.to_f64() - 1.0).abs() < 1e-30);
        assert!(ln.length.err() < 1e-30);
        let two = ScalarHP::exact_int(p, 2);
        assert!(matches!(length_from_trace(&two), Err(Error::NotHyperbolic)));
        assert!(matches!(length_from_trace(&two.neg()), Err(Error::NotHyperbolic)));
    }

    #[test]
    fn norm_is_exp_length() {
        let t = ScalarHP::parse(128, "7.123").unwrap();
        let ln = length_from_trace(&t).unwrap();
        let e = ln.length.exp();
        let d = e.sub(&ln.norm).to_f64().abs();
        assert!(d <= e.err() + ln.norm.err());
    }

    #[test]
    fn inverse_gives_identity() {
        let p = 128;
        let m = Mat2::from_scalars([
            ScalarHP::parse(p, "2").unwrap(),
            ScalarHP::parse(p, "3").unwrap(),
            ScalarHP::parse(p, "1").unwrap(),
            ScalarHP::parse(p, "2").unwrap(),
        ]);
        assert!(m.mul(&m.inverse()).distance_to_pm_identity() < 1e-35);
    }
}
