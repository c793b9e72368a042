use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the 4g letters. The code is `2 * generator + inverse_bit`, with
/// generators ordered a1, b1, a2, b2, ..., so the derived order on codes is the
/// shortlex letter order a1 < A1 < b1 < B1 < a2 < ...
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub const fn from_code(code: u8) -> Self {
        Letter(code)
    }

    pub const fn code(self) -> u8 {
        self.0
    }

    /// a_i for 1-based `i`.
    pub const fn a(i: usize) -> Self {
        Letter((4 * (i - 1)) as u8)
    }

    /// b_i for 1-based `i`.
    pub const fn b(i: usize) -> Self {
        Letter((4 * (i - 1) + 2) as u8)
    }

    /// Generator index in a1, b1, a2, b2, ... order (0-based).
    pub const fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub const fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub const fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// 1-based handle index i of a_i / b_i.
    pub const fn handle(self) -> usize {
        (self.0 >> 2) as usize + 1
    }

    pub const fn is_b(self) -> bool {
        self.0 & 2 == 2
    }

    /// Coordinate in the homology vector ordered (a1..ag, b1..bg).
    pub const fn homology_index(self, genus: usize) -> usize {
        if self.is_b() {
            genus + self.handle() - 1
        } else {
            self.handle() - 1
        }
    }

    pub const fn exponent(self) -> i32 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.is_b(), self.is_inverse()) {
            (false, false) => 'a',
            (false, true) => 'A',
            (true, false) => 'b',
            (true, true) => 'B',
        };
        write!(f, "{c}{}", self.handle())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse a compact letter string such as `"a1b1A1B1"`. Whitespace is ignored.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let bytes: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut out = Vec::with_capacity(bytes.len() / 2);
    let mut i = 0;
    while i < bytes.len() {
        let (b, inv) = match bytes[i] {
            b'a' => (false, false),
            b'A' => (false, true),
            b'b' => (true, false),
            b'B' => (true, true),
            other => {
                return Err(Error::InvalidWord(format!(
                    "unexpected character {:?} in {s:?}",
                    other as char
                )))
            }
        };
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if start == i {
            return Err(Error::InvalidWord(format!("missing handle index in {s:?}")));
        }
        let idx: usize = std::str::from_utf8(&bytes[start..i])
            .ok()
            .and_then(|t| t.parse().ok())
            .filter(|&k| (1..=63).contains(&k))
            .ok_or_else(|| Error::InvalidWord(format!("bad handle index in {s:?}")))?;
        let base = if b { Letter::b(idx) } else { Letter::a(idx) };
        out.push(if inv { base.inverse() } else { base });
    }
    Ok(out)
}

pub(crate) fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for l in letters {
        write!(f, "{l}")?;
    }
    Ok(())
}

/// Free reduction by stack simulation.
pub fn free_reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by stripping letter/inverse pairs across the ends.
pub fn cyclic_free_reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let w = free_reduce_letters(letters);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == w[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

pub fn inverse_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// Index of the lexicographically least rotation.
pub fn least_rotation(letters: &[Letter]) -> usize {
    let n = letters.len();
    let mut best = 0;
    for r in 1..n {
        for k in 0..n {
            let x = letters[(r + k) % n];
            let y = letters[(best + k) % n];
            if x != y {
                if x < y {
                    best = r;
                }
                break;
            }
        }
    }
    best
}

pub(crate) fn rotated(letters: &[Letter], r: usize) -> Vec<Letter> {
    let mut v = Vec::with_capacity(letters.len());
    v.extend_from_slice(&letters[r..]);
    v.extend_from_slice(&letters[..r]);
    v
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    /// Freely reduces its input.
    pub fn new(letters: &[Letter]) -> Self {
        Word(free_reduce_letters(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(inverse_letters(&self.0))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word::new(&v)
    }

    pub fn pow(&self, m: usize) -> Word {
        Word::new(&self.0.repeat(m))
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Word::new(&parse_letters(s)?))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// A cyclically reduced word stored in its lexicographically least rotation.
///
/// Ordering is shortlex (length first), which is the order used for canonical
/// forms and for census files.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    /// Cyclically free-reduces and rotates into least position.
    pub fn new(letters: &[Letter]) -> Self {
        let w = cyclic_free_reduce_letters(letters);
        let r = least_rotation(&w);
        CyclicWord(rotated(&w, r))
    }

    /// Caller guarantees the letters are cyclically reduced and least-rotated.
    pub(crate) fn from_normalized(letters: Vec<Letter>) -> Self {
        debug_assert_eq!(cyclic_free_reduce_letters(&letters).len(), letters.len());
        debug_assert_eq!(least_rotation(&letters), 0);
        CyclicWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord::new(&inverse_letters(&self.0))
    }

    pub fn pow(&self, m: usize) -> CyclicWord {
        CyclicWord(self.0.repeat(m))
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl FromStr for CyclicWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(CyclicWord::new(&parse_letters(s)?))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicWord({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_order_is_shortlex_alphabet() {
        let s = parse_letters("a1A1b1B1a2A2b2B2").unwrap();
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Letter::a(2).homology_index(2), 1);
        assert_eq!(Letter::b(1).homology_index(2), 2);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let w: Word = "a1b1A1B1a2b2A2B2".parse().unwrap();
        assert_eq!(w.to_string(), "a1b1A1B1a2b2A2B2");
        assert!("a0".parse::<Word>().is_err());
        assert!("x1".parse::<Word>().is_err());
        assert!("a".parse::<Word>().is_err());
        assert_eq!("".parse::<Word>().unwrap(), Word::empty());
    }

    #[test]
    fn free_reduction_examples() {
        let w: Word = "a1A1b1".parse().unwrap();
        assert_eq!(w.to_string(), "b1");
        let w: Word = "a1b2B2A1a1".parse().unwrap();
        assert_eq!(w.to_string(), "a1");
        let w: Word = "a1b2B2a1".parse().unwrap();
        assert_eq!(w.to_string(), "a1a1");
        assert!(Word::new(&[]).is_empty());
    }

    #[test]
    fn cyclic_word_normalizes_rotation() {
        let c: CyclicWord = "b1a1".parse().unwrap();
        assert_eq!(c.to_string(), "a1b1");
        let c: CyclicWord = "a1b2A1".parse().unwrap();
        assert_eq!(c.to_string(), "b2");
    }
}
