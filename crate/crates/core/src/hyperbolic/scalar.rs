use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::ops::AssignRound;
use rug::Float;

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 128;

/// Pads an f64 error bound upward to absorb rounding in the bound itself.
#[inline]
fn up(x: f64) -> f64 {
    x * (1.0 + 4.0 * f64::EPSILON)
}

/// Bound on the rounding error of a correctly rounded result.
#[inline]
fn rnd(v: &Float) -> f64 {
    let m = v.to_f64().abs();
    if m == 0.0 {
        0.0
    } else {
        m * (2.0f64).powi(1 - v.prec() as i32)
    }
}

/// Evaluates at `prec` and returns the value with its rounding bound, which is
/// zero when MPFR reports an exact result.
fn eval<T>(prec: u32, src: T) -> (Float, f64)
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    let mut v = Float::new(prec);
    let dir = v.assign_round(src, Round::Nearest);
    let r = if dir == Ordering::Equal { 0.0 } else { rnd(&v) };
    (v, r)
}

/// A high-precision real with a rigorous absolute error bound.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarHP {
    value: Float,
    err: f64,
}

impl ScalarHP {
    pub fn new(value: Float, err: f64) -> Self {
        assert!(err >= 0.0 && !err.is_nan(), "error bound must be non-negative");
        ScalarHP { value, err }
    }

    pub fn exact_f64(prec: u32, x: f64) -> Self {
        ScalarHP::new(Float::with_val(prec, x), 0.0)
    }

    pub fn exact_int(prec: u32, x: i64) -> Self {
        ScalarHP::new(Float::with_val(prec, x), 0.0)
    }

    /// Parses a decimal string; the bound covers the conversion rounding.
    pub fn parse(prec: u32, s: &str) -> Result<Self> {
        let parsed = Float::parse(s.trim())
            .map_err(|e| Error::Format(format!("bad decimal {s:?}: {e}")))?;
        let (value, err) = eval(prec, parsed);
        Ok(ScalarHP { value, err })
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn with_extra_err(mut self, e: f64) -> Self {
        self.err = up(self.err + e);
        self
    }

    /// Lower end of the enclosing interval, rounded down to f64.
    pub fn lo_f64(&self) -> f64 {
        let (v, _) = Float::with_val_round(53, &self.value - self.err, Round::Down);
        v.to_f64_round(Round::Down)
    }

    pub fn hi_f64(&self) -> f64 {
        let (v, _) = Float::with_val_round(53, &self.value + self.err, Round::Up);
        v.to_f64_round(Round::Up)
    }

    pub fn add(&self, o: &ScalarHP) -> ScalarHP {
        let (value, r) = eval(self.prec(), &self.value + &o.value);
        let err = up(self.err + o.err + r);
        ScalarHP { value, err }
    }

    pub fn sub(&self, o: &ScalarHP) -> ScalarHP {
        let (value, r) = eval(self.prec(), &self.value - &o.value);
        let err = up(self.err + o.err + r);
        ScalarHP { value, err }
    }

    pub fn mul(&self, o: &ScalarHP) -> ScalarHP {
        let (value, r) = eval(self.prec(), &self.value * &o.value);
        let (a, b) = (self.to_f64().abs(), o.to_f64().abs());
        let err = up(a * o.err + b * self.err + self.err * o.err + r);
        ScalarHP { value, err }
    }

    pub fn neg(&self) -> ScalarHP {
        ScalarHP {
            value: Float::with_val(self.prec(), -&self.value),
            err: self.err,
        }
    }

    pub fn abs(&self) -> ScalarHP {
        ScalarHP {
            value: Float::with_val(self.prec(), self.value.abs_ref()),
            err: self.err,
        }
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, k: i64) -> ScalarHP {
        assert!(k != 0);
        let (value, r) = eval(self.prec(), &self.value / k);
        let err = up(self.err / (k as f64).abs() + r);
        ScalarHP { value, err }
    }

    pub fn mul_int(&self, k: i64) -> ScalarHP {
        let (value, r) = eval(self.prec(), &self.value * k);
        let err = up(self.err * (k as f64).abs() + r);
        ScalarHP { value, err }
    }

    fn require_lo_above(&self, bound: f64, what: &str) -> Result<f64> {
        let lo = self.lo_f64();
        if lo > bound {
            Ok(lo)
        } else {
            Err(Error::PrecisionExhausted(format!(
                "{what}: argument {} ± {:e} not certifiably above {bound}",
                self.to_f64(),
                self.err
            )))
        }
    }

    pub fn sqrt(&self) -> Result<ScalarHP> {
        if self.err == 0.0 && self.value >= 0 {
            let (value, err) = eval(self.prec(), self.value.sqrt_ref());
            return Ok(ScalarHP { value, err });
        }
        let lo = self.require_lo_above(0.0, "sqrt")?;
        let value = Float::with_val(self.prec(), self.value.sqrt_ref());
        let err = up(self.err / lo.sqrt() + rnd(&value));
        Ok(ScalarHP { value, err })
    }

    pub fn ln(&self) -> Result<ScalarHP> {
        let lo = self.require_lo_above(0.0, "ln")?;
        let value = Float::with_val(self.prec(), self.value.ln_ref());
        let err = up(self.err / lo + rnd(&value) + 2.0f64.powi(-(self.prec() as i32)));
        Ok(ScalarHP { value, err })
    }

    pub fn exp(&self) -> ScalarHP {
        let value = Float::with_val(self.prec(), self.value.exp_ref());
        let err = up(value.to_f64().abs() * self.err.exp_m1() * (1.0 + self.err) + rnd(&value));
        ScalarHP { value, err }
    }

    pub fn acosh(&self) -> Result<ScalarHP> {
        let lo = self.require_lo_above(1.0, "acosh")?;
        let value = Float::with_val(self.prec(), self.value.acosh_ref());
        let err = up(self.err / (lo * lo - 1.0).sqrt() + rnd(&value) + 2.0f64.powi(-(self.prec() as i32)));
        Ok(ScalarHP { value, err })
    }

    /// Certified comparison; fails when the enclosures overlap.
    pub fn cmp_checked(&self, o: &ScalarHP) -> Result<Ordering> {
        let diff = Float::with_val(self.prec().max(o.prec()), &self.value - &o.value);
        let slack = self.err + o.err;
        if diff.is_zero() && slack == 0.0 {
            return Ok(Ordering::Equal);
        }
        let d = diff.to_f64();
        if d.abs() > up(slack) + rnd(&diff) {
            Ok(if d > 0.0 {
                Ordering::Greater
            } else {
                Ordering::Less
            })
        } else {
            Err(Error::PrecisionExhausted(format!(
                "cannot order {} and {} within error {:e}",
                self.to_f64(),
                o.to_f64(),
                slack
            )))
        }
    }

    /// Decimal string with `digits` significant digits, plain notation when
    /// the magnitude allows.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_decimal(&self.value, digits)
    }

    /// Rounds the value to `digits` significant decimal digits, widening the
    /// error bound by the rounding, so that the decimal form round-trips.
    pub fn rounded_to_decimal(&self, digits: usize) -> ScalarHP {
        let s = self.to_decimal(digits);
        let value = Float::with_val(self.prec(), Float::parse(&s).expect("formatted decimal"));
        let moved = Float::with_val(self.prec(), &value - &self.value).to_f64().abs();
        ScalarHP {
            err: up(self.err + moved + rnd(&value)),
            value,
        }
    }
}

pub(crate) fn format_decimal(v: &Float, digits: usize) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let (neg, mantissa, exp) = v.to_sign_string_exp(10, Some(digits));
    let exp = exp.unwrap_or(0);
    let mantissa = mantissa.trim_end_matches('0');
    let mantissa = if mantissa.is_empty() { "0" } else { mantissa };
    let sign = if neg { "-" } else { "" };
    // value = 0.mantissa × 10^exp
    let body = if (1..=40).contains(&exp) {
        let e = exp as usize;
        if mantissa.len() <= e {
            format!("{mantissa}{}", "0".repeat(e - mantissa.len()))
        } else {
            format!("{}.{}", &mantissa[..e], &mantissa[e..])
        }
    } else if (-6..=0).contains(&exp) {
        format!("0.{}{mantissa}", "0".repeat((-exp) as usize))
    } else {
        let (head, tail) = mantissa.split_at(1);
        let tail = if tail.is_empty() { String::new() } else { format!(".{tail}") };
        format!("{head}{tail}e{}", exp - 1)
    };
    format!("{sign}{body}")
}

impl fmt::Display for ScalarHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:e}", self.to_decimal(20), self.err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_formatting() {
        let p = 128;
        let x = ScalarHP::parse(p, "3.25").unwrap();
        assert_eq!(x.to_decimal(30), "3.25");
        let x = ScalarHP::parse(p, "-0.00125").unwrap();
        assert_eq!(x.to_decimal(30), "-0.00125");
        let x = ScalarHP::parse(p, "123456").unwrap();
        assert_eq!(x.to_decimal(30), "123456");
        let x = ScalarHP::parse(p, "1.5e-30").unwrap();
        assert_eq!(x.to_decimal(30), "1.5e-30");
        let x = ScalarHP::parse(p, "2.5e50").unwrap();
        assert_eq!(x.to_decimal(30), "2.5e50");
    }

    #[test]
    fn rounding_to_decimal_round_trips() {
        let p = 128;
        let x = ScalarHP::exact_int(p, 2).sqrt().unwrap();
        let r = x.rounded_to_decimal(30);
        assert!(r.err() >= x.err());
        let s = r.to_decimal(30);
        assert_eq!(ScalarHP::parse(p, &s).unwrap().value(), r.value());
        assert!(r.err() < 1e-29);
    }

    #[test]
    fn error_bounds_enclose_truth() {
        let p = 64;
        let x = ScalarHP::exact_int(p, 3).ln().unwrap().exp();
        let d = Float::with_val(200, x.value() - 3).to_f64().abs();
        assert!(d <= x.err(), "{d} > {}", x.err());
        let y = ScalarHP::exact_f64(p, 2.5).acosh().unwrap();
        let truth = Float::with_val(300, 2.5).acosh();
        let d = Float::with_val(300, y.value() - &truth).to_f64().abs();
        assert!(d <= y.err());
    }

    #[test]
    fn checked_comparisons() {
        let a = ScalarHP::exact_int(128, 1);
        let b = ScalarHP::exact_int(128, 2);
        assert_eq!(a.cmp_checked(&b).unwrap(), Ordering::Less);
        assert_eq!(a.cmp_checked(&a).unwrap(), Ordering::Equal);
        let fuzzy = ScalarHP::new(Float::with_val(128, 1), 1e-3);
        assert!(matches!(fuzzy.cmp_checked(&a), Err(Error::PrecisionExhausted(_))));
        assert!(ScalarHP::exact_int(128, 1).acosh().is_err());
    }
}
