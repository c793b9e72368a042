use super::word::Letter;
use crate::error::{Error, Result};

/// The two orientations of the relator cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Subwords of cyclic rotations of R.
    Relator,
    /// Subwords of cyclic rotations of R⁻¹.
    Inverse,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Relator, Side::Inverse];

    fn idx(self) -> usize {
        match self {
            Side::Relator => 0,
            Side::Inverse => 1,
        }
    }
}

/// One-relator presentation ⟨a1, b1, ..., ag, bg | [a1,b1]⋯[ag,bg]⟩.
///
/// Besides the relator this precomputes the vertex link of the one-vertex
/// 4g-gon complex. The turn between consecutive letters `x y` is the number of
/// link steps from `x⁻¹` to `y`; a turn of 1 means `x y` is a subword of a
/// rotation of R, a turn of 4g−1 means the same for R⁻¹, and 0 is a free
/// cancellation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    genus: usize,
    relator: Vec<Letter>,
    cycles: [Vec<Letter>; 2],
    pos: [Vec<u8>; 2],
    turns: Vec<u8>,
}

impl Presentation {
    pub fn new(genus: usize) -> Result<Self> {
        if !(2..=16).contains(&genus) {
            return Err(Error::Config(format!(
                "genus must be between 2 and 16, got {genus}"
            )));
        }
        let mut relator = Vec::with_capacity(4 * genus);
        for i in 1..=genus {
            let (a, b) = (Letter::a(i), Letter::b(i));
            relator.extend_from_slice(&[a, b, a.inverse(), b.inverse()]);
        }
        let n = 4 * genus;
        let inv: Vec<Letter> = relator.iter().rev().map(|l| l.inverse()).collect();
        let mut pos = [vec![0u8; n], vec![0u8; n]];
        for (j, l) in relator.iter().enumerate() {
            pos[0][l.code() as usize] = j as u8;
        }
        for (j, l) in inv.iter().enumerate() {
            pos[1][l.code() as usize] = j as u8;
        }
        let cycles = [relator.clone(), inv];

        let succ = |e: Letter| -> Letter {
            let p = pos[0][e.inverse().code() as usize] as usize;
            cycles[0][(p + 1) % n]
        };
        let mut turns = vec![0u8; n * n];
        for x in 0..n {
            let start = Letter::from_code(x as u8).inverse();
            let mut e = start;
            for k in 0..n {
                turns[x * n + e.code() as usize] = k as u8;
                e = succ(e);
            }
            debug_assert_eq!(e, start, "vertex link must be a single 4g-cycle");
        }
        Ok(Presentation {
            genus,
            relator,
            cycles,
            pos,
            turns,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of letters, 4g.
    pub fn alphabet_size(&self) -> usize {
        4 * self.genus
    }

    pub fn relator(&self) -> &[Letter] {
        &self.relator
    }

    pub fn alphabet(&self) -> impl Iterator<Item = Letter> {
        (0..self.alphabet_size() as u8).map(Letter::from_code)
    }

    pub fn contains(&self, l: Letter) -> bool {
        (l.code() as usize) < self.alphabet_size()
    }

    pub fn check_letters(&self, letters: &[Letter]) -> Result<()> {
        match letters.iter().find(|l| !self.contains(**l)) {
            Some(l) => Err(Error::InvalidWord(format!(
                "letter {l} is outside the genus-{} alphabet",
                self.genus
            ))),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn turn(&self, x: Letter, y: Letter) -> u8 {
        self.turns[x.code() as usize * self.alphabet_size() + y.code() as usize]
    }

    /// Turn value inside a relator run on `side`.
    #[inline]
    pub fn run_turn(&self, side: Side) -> u8 {
        match side {
            Side::Relator => 1,
            Side::Inverse => (4 * self.genus - 1) as u8,
        }
    }

    /// Turn value joining two consecutive pieces of a chain on `side`.
    #[inline]
    pub fn link_turn(&self, side: Side) -> u8 {
        match side {
            Side::Relator => 2,
            Side::Inverse => (4 * self.genus - 2) as u8,
        }
    }

    pub fn cycle(&self, side: Side) -> &[Letter] {
        &self.cycles[side.idx()]
    }

    #[inline]
    pub fn position(&self, side: Side, l: Letter) -> usize {
        self.pos[side.idx()][l.code() as usize] as usize
    }

    /// For a piece `s` lying on `side`, the inverse of its complement in the
    /// relator cycle: the word of length 4g − |s| equal to `s` in the group.
    pub fn inverse_complement(&self, side: Side, piece: &[Letter], out: &mut Vec<Letter>) {
        let n = self.alphabet_size();
        let cyc = self.cycle(side);
        let p = self.position(side, piece[0]);
        debug_assert!(piece
            .iter()
            .enumerate()
            .all(|(k, l)| cyc[(p + k) % n] == *l));
        let m = piece.len() % n;
        for k in (m..n).rev() {
            out.push(cyc[(p + k) % n].inverse());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_group::word::parse_letters;

    #[test]
    fn relator_shape() {
        let p = Presentation::new(2).unwrap();
        let r = parse_letters("a1b1A1B1a2b2A2B2").unwrap();
        assert_eq!(p.relator(), r.as_slice());
        assert!(Presentation::new(1).is_err());
    }

    #[test]
    fn turns_detect_relator_pairs() {
        let p = Presentation::new(2).unwrap();
        let r = p.relator().to_vec();
        let n = r.len();
        for i in 0..n {
            let (x, y) = (r[i], r[(i + 1) % n]);
            assert_eq!(p.turn(x, y), 1);
            assert_eq!(p.turn(y.inverse(), x.inverse()), (n - 1) as u8);
        }
        for l in p.alphabet() {
            assert_eq!(p.turn(l, l.inverse()), 0);
        }
    }

    #[test]
    fn inverse_complement_of_half() {
        let p = Presentation::new(2).unwrap();
        let s = parse_letters("a1b1A1B1a2").unwrap();
        let mut out = Vec::new();
        p.inverse_complement(Side::Relator, &s, &mut out);
        assert_eq!(out, parse_letters("b2a2B2").unwrap());
    }
}
