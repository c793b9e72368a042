use crate::error::{Error, Result};

/// `li(2)`.
pub const LI_2: f64 = 1.045_163_780_117_493;

/// Logarithmic integral `li(x) = li(2) + ∫₂^x dt/log t` for `x ≥ 2`.
///
/// The integral is taken in `u = log t`, where the integrand `e^u/u` is
/// smooth, by adaptive Gauss-Kronrod (7, 15) to relative tolerance 1e-13.
pub fn li(x: f64) -> Result<f64> {
    if x.is_nan() || x < 2.0 {
        return Err(Error::Domain(x));
    }
    if x == 2.0 {
        return Ok(LI_2);
    }
    let f = |u: f64| u.exp() / u;
    let (a, b) = (2f64.ln(), x.ln());
    // Exponential growth: split into unit-width panels so the tolerance is
    // relative to each panel's own size.
    let panels = ((b - a).ceil() as usize).max(1);
    let h = (b - a) / panels as f64;
    let mut parts: Vec<f64> = (0..panels)
        .map(|i| adaptive(&f, a + i as f64 * h, a + (i + 1) as f64 * h, 1e-13, 40))
        .collect();
    parts.push(LI_2);
    parts.sort_by(f64::total_cmp);
    Ok(parts.iter().sum())
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let s = f(c - h * XGK[j]) + f(c + h * XGK[j]);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, rel: f64, depth: u32) -> f64 {
    let (k, err) = kronrod(f, a, b);
    if err <= rel * k.abs() || depth == 0 {
        return k;
    }
    let m = 0.5 * (a + b);
    adaptive(f, a, m, rel, depth - 1) + adaptive(f, m, b, rel, depth - 1)
}
