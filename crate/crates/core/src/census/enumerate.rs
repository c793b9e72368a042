use rayon::prelude::*;
use rug::Float;

use super::{merge, Census, GeodesicClass};
use crate::error::{Error, Result};
use crate::hyperbolic::{length_from_trace, length_of, LengthNorm, Mat2, Representation};
use crate::surface_group::{
    is_canonical_minimal, shorten_cyclic_once, CyclicWord, Letter, Presentation, Side,
};

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Number of first-letter shards.
    pub shards: usize,
    pub safety_margin: f64,
    /// Run shards on the rayon pool.
    pub parallel: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            shards: 1,
            safety_margin: 0.0,
            parallel: true,
        }
    }
}

pub fn enumerate(rep: &Representation, max_len: usize) -> Result<Census> {
    enumerate_with(rep, max_len, &EnumerateOptions::default())
}

pub fn enumerate_with(rep: &Representation, max_len: usize, opts: &EnumerateOptions) -> Result<Census> {
    let shards = opts.shards.max(1);
    let run = |s: usize| enumerate_shard(rep, max_len, s, shards, opts.safety_margin);
    let parts: Vec<Census> = if opts.parallel && shards > 1 {
        (0..shards).into_par_iter().map(run).collect::<Result<_>>()?
    } else {
        (0..shards).map(run).collect::<Result<_>>()?
    };
    let mut parts = parts.into_iter();
    let first = parts.next().expect("at least one shard");
    parts.try_fold(first, |acc, c| merge(&acc, &c))
}

/// Classes whose canonical word starts with a letter of code `≡ shard (mod shards)`.
pub fn enumerate_shard(
    rep: &Representation,
    max_len: usize,
    shard: usize,
    shards: usize,
    safety_margin: f64,
) -> Result<Census> {
    let p = rep.presentation();
    let mut dfs = Dfs::new(rep, max_len);
    for c in p.alphabet() {
        if c.code() as usize % shards == shard {
            dfs.visit_root(c)?;
        }
    }
    Ok(Census::new(
        p.genus(),
        rep.name(),
        rep.id(),
        rep.precision(),
        max_len,
        safety_margin,
        dfs.out,
    ))
}

/// Incremental piece state of the current prefix on one side.
#[derive(Clone, Copy, Default)]
struct SideState {
    piece_len: u8,
    /// The pieces since the last break are a 2g piece followed by zero or
    /// more (2g−1) pieces, all linked: one more 2g piece would shorten.
    open: bool,
}

/// Depth-first search over prenecklaces (least rotations) in the
/// Fredricksen–Kessler–Maiorana order, pruned to prefixes that are geodesic
/// words. Every prefix of a cyclically minimal word is geodesic, so no class
/// is lost.
struct Dfs<'a> {
    rep: &'a Representation,
    p: &'a Presentation,
    max_len: usize,
    half: u8,
    word: Vec<Letter>,
    mats: Vec<Mat2>,
    states: Vec<[SideState; 2]>,
    tmp: Float,
    out: Vec<GeodesicClass>,
}

impl<'a> Dfs<'a> {
    fn new(rep: &'a Representation, max_len: usize) -> Self {
        let prec = rep.precision();
        Dfs {
            rep,
            p: rep.presentation(),
            max_len,
            half: (2 * rep.genus()) as u8,
            word: Vec::with_capacity(max_len),
            mats: vec![Mat2::identity(prec); max_len + 1],
            states: vec![[SideState::default(); 2]; max_len + 1],
            tmp: Float::new(prec),
            out: Vec::new(),
        }
    }

    fn visit_root(&mut self, c: Letter) -> Result<()> {
        if self.max_len == 0 {
            return Ok(());
        }
        self.push(c, [SideState { piece_len: 1, open: false }; 2]);
        let r = self.visit(1);
        self.word.pop();
        r
    }

    fn push(&mut self, c: Letter, st: [SideState; 2]) {
        let t = self.word.len();
        self.word.push(c);
        let (done, rest) = self.mats.split_at_mut(t + 1);
        done[t].mul_into(self.rep.image(c), &mut rest[0], &mut self.tmp);
        self.states[t + 1] = st;
    }

    /// Prefix state after appending `c`, or `None` if the prefix stops being
    /// geodesic.
    fn extend_state(&self, c: Letter) -> Option<[SideState; 2]> {
        let t = self.word.len();
        let x = self.word[t - 1];
        if c == x.inverse() {
            return None;
        }
        let tau = self.p.turn(x, c);
        let mut st = self.states[t];
        for (k, side) in Side::BOTH.into_iter().enumerate() {
            let s = &mut st[k];
            if tau == self.p.run_turn(side) {
                s.piece_len += 1;
                if s.piece_len > self.half || (s.piece_len == self.half && s.open) {
                    return None;
                }
            } else if tau == self.p.link_turn(side) {
                s.open = s.piece_len == self.half || (s.open && s.piece_len == self.half - 1);
                s.piece_len = 1;
            } else {
                s.open = false;
                s.piece_len = 1;
            }
        }
        Some(st)
    }

    /// `period` is the length of the longest Lyndon prefix of the current word.
    fn visit(&mut self, period: usize) -> Result<()> {
        let t = self.word.len();
        if t.is_multiple_of(period) {
            self.emit_if_canonical()?;
        }
        if t == self.max_len {
            return Ok(());
        }
        let floor = self.word[t - period].code();
        for code in floor..self.p.alphabet_size() as u8 {
            let c = Letter::from_code(code);
            let Some(st) = self.extend_state(c) else {
                continue;
            };
            self.push(c, st);
            let next_period = if code == floor { period } else { t + 1 };
            let r = self.visit(next_period);
            self.word.pop();
            r?;
        }
        Ok(())
    }

    fn emit_if_canonical(&mut self) -> Result<()> {
        let w = &self.word;
        let n = w.len();
        if w[n - 1] == w[0].inverse() {
            return Ok(());
        }
        if shorten_cyclic_once(self.p, w).is_some() {
            return Ok(());
        }
        if !is_canonical_minimal(self.p, w) {
            return Ok(());
        }
        let ln = self.length(n)?;
        let c = CyclicWord::new(w);
        self.out.push(GeodesicClass::new(self.p.genus(), c, &ln));
        Ok(())
    }

    fn length(&self, n: usize) -> Result<LengthNorm> {
        match length_from_trace(&self.mats[n].trace()) {
            Err(Error::PrecisionExhausted(_)) => {
                let hi = self.rep.with_precision(2 * self.rep.precision())?;
                let ln = length_of(&hi.word_to_matrix(&self.word)?)?;
                let prec = self.rep.precision();
                let down = |x: &crate::hyperbolic::ScalarHP| {
                    let v = Float::with_val(prec, x.value());
                    let moved = Float::with_val(2 * prec, &v - x.value()).to_f64().abs();
                    crate::hyperbolic::ScalarHP::new(v, x.err() + moved)
                };
                Ok(LengthNorm {
                    length: down(&ln.length),
                    norm: down(&ln.norm),
                })
            }
            Err(Error::NotHyperbolic) => Err(Error::ValidationFailed(format!(
                "nontrivial class {} is not hyperbolic",
                CyclicWord::new(&self.word)
            ))),
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_censuses() {
        let rep = Representation::bolza(128).unwrap();
        assert!(enumerate(&rep, 0).unwrap().is_empty());
        let c1 = enumerate(&rep, 1).unwrap();
        assert_eq!(c1.len(), 8);
        for c in c1.classes() {
            assert!((c.length_f64() - 3.0571418395).abs() < 1e-8);
        }
        let l = c1.completeness_length().unwrap();
        assert!((l.to_f64() - 3.0571418395).abs() < 1e-8);
    }

    #[test]
    fn shards_agree() {
        let rep = Representation::bolza(128).unwrap();
        let whole = enumerate(&rep, 4).unwrap();
        for shards in [2, 3, 8, 11] {
            let opts = EnumerateOptions {
                shards,
                ..Default::default()
            };
            assert_eq!(enumerate_with(&rep, 4, &opts).unwrap(), whole);
        }
    }
}
