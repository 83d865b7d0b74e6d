//! Combinatorial labeling of the half-turn lines crossed by the axis of `E_{p/q}`.
//!
//! Writing `E = s_1 ⋯ s_k` in half-turns (`k = 2(p+q)`), one translation
//! period of the axis crosses the lines `s_1 ⋯ s_{i-1}(Y_{s_i})`, `i = 1..k`.
//! Wall `j` is wall `i = j + 1` for `0 ≤ j < k`, extended to all integers by
//! `E`-translation. Perpendicular walls are detected exactly in the free
//! product of the three half-turns: `r E r = E⁻¹`.

use crate::error::{Error, Result};
use crate::farey::{primitive_word, PrimitiveWord, RationalLabel};
use crate::words::{GroupWord, HalfTurnWord, Seam};

/// One labeled line `L_j = W_j(Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub index: i64,
    /// Group-word conjugator `W_j`, so that the line is `W_j(seam)`.
    pub conjugator: GroupWord,
    pub seam: Seam,
    pub perpendicular: bool,
}

impl Wall {
    /// Half-turn about the wall, `W_j H_Y W_j⁻¹`.
    pub fn half_turn_word(&self) -> HalfTurnWord {
        let c = self.conjugator.half_turns();
        c.concat(&HalfTurnWord::from_seams([self.seam])).concat(&c.inverse())
    }
}

/// The walls of one closed period window `[start, start + k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub word: PrimitiveWord,
    /// Walls per translation period, `2(p+q)`.
    pub period: i64,
    /// Index of the perpendicular wall opening the window.
    pub start: i64,
    /// Walls `start ..= start + period`, in axis order.
    pub walls: Vec<Wall>,
}

impl Labeling {
    pub fn label(&self) -> RationalLabel {
        self.word.label()
    }

    pub fn wall(&self, index: i64) -> Option<&Wall> {
        usize::try_from(index - self.start).ok().and_then(|k| self.walls.get(k))
    }

    /// Indices of the two perpendicular walls in the half-open window.
    pub fn perpendicular_indices(&self) -> [i64; 2] {
        [self.start, self.start + self.period / 2]
    }

    /// Non-perpendicular walls in the half-open window.
    pub fn essential_count(&self) -> usize {
        self.walls[..self.walls.len() - 1].iter().filter(|w| !w.perpendicular).count()
    }

    /// Seam tags of the `p+q` arcs between consecutive `L`-type walls over the
    /// half-open window; each arc crosses exactly one `L_A` or `L_B` wall.
    pub fn loop_tags(&self) -> Vec<Seam> {
        self.walls[..self.walls.len() - 1].iter().map(|w| w.seam).filter(|s| *s != Seam::L).collect()
    }
}

/// Walls `j = 0 .. k-1` of the base period: conjugator and seam.
fn base_walls(e: &GroupWord) -> Vec<(GroupWord, Seam)> {
    let seams: Vec<Seam> = e.letters().iter().flat_map(|l| l.half_turns()).collect();
    let mut prefix = HalfTurnWord::default();
    let mut out = Vec::with_capacity(seams.len());
    for &s in &seams {
        let conj = if prefix.len() % 2 == 0 {
            prefix.to_group_word()
        } else {
            prefix.concat(&HalfTurnWord::from_seams([s])).to_group_word()
        }
        .expect("even length");
        out.push((conj, s));
        prefix.push(s);
    }
    out
}

fn power(e: &GroupWord, m: i64) -> GroupWord {
    let base = if m < 0 { e.inverse() } else { e.clone() };
    (0..m.unsigned_abs()).fold(GroupWord::identity(), |acc, _| acc.concat(&base))
}

fn make_wall(e: &GroupWord, base: &[(GroupWord, Seam)], e_inv_ht: &HalfTurnWord, e_ht: &HalfTurnWord, j: i64) -> Wall {
    let k = base.len() as i64;
    let (m, r) = (j.div_euclid(k), j.rem_euclid(k) as usize);
    let (conj, seam) = &base[r];
    let conjugator = power(e, m).concat(conj);
    let mut wall = Wall { index: j, conjugator, seam: *seam, perpendicular: false };
    let h = wall.half_turn_word();
    wall.perpendicular = h.concat(e_ht).concat(&h) == *e_inv_ht;
    wall
}

/// The labeled walls of `E_{p/q}` for one period.
///
/// Odd `p+q`: the window is `[-(p+q), p+q]`, perpendicular at both ends and
/// at `j = 0` (the line `L`). Even `p+q`: the window opens at the largest
/// perpendicular index `≤ 0`.
pub fn labeling(x: RationalLabel) -> Result<Labeling> {
    let word = primitive_word(x)?;
    let e = word.to_group_word();
    let base = base_walls(&e);
    let k = base.len() as i64;
    let e_ht = e.half_turns();
    let e_inv_ht = e.inverse().half_turns();

    let perp: Vec<i64> = (0..k)
        .filter(|&j| make_wall(&e, &base, &e_inv_ht, &e_ht, j).perpendicular)
        .collect();
    if perp.len() != 2 || perp[1] - perp[0] != k / 2 {
        return Err(Error::Invariant(format!("{x}: perpendicular walls at {perp:?} in a period of {k}")));
    }
    let start = if x.is_odd() { -k / 2 } else { perp[1] - k };
    let walls = (start..=start + k).map(|j| make_wall(&e, &base, &e_inv_ht, &e_ht, j)).collect();
    Ok(Labeling { word, period: k, start, walls })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: u64, q: u64) -> RationalLabel {
        RationalLabel::new(p, q).unwrap()
    }

    #[test]
    fn one_half_walls() {
        let lab = labeling(r(1, 2)).unwrap();
        assert_eq!(lab.period, 6);
        assert_eq!(lab.start, -3);
        let seams: Vec<_> = lab.walls.iter().map(|w| w.seam).collect();
        use Seam::*;
        assert_eq!(seams, [LB, L, LA, L, LA, L, LB]);
        let perp: Vec<_> = lab.walls.iter().filter(|w| w.perpendicular).map(|w| w.index).collect();
        assert_eq!(perp, [-3, 0, 3]);
        assert_eq!(lab.wall(0).unwrap().conjugator, GroupWord::identity());
        assert_eq!(lab.loop_tags(), [LB, LA, LA]);
        assert_eq!(lab.essential_count(), 4);
    }

    #[test]
    fn simple_curve_has_no_essential_walls() {
        for x in [RationalLabel::ZERO, RationalLabel::INFINITY] {
            let lab = labeling(x).unwrap();
            assert_eq!(lab.essential_count(), 0);
            assert_eq!(lab.loop_tags().len(), 1);
        }
    }

    #[test]
    fn counts_and_symmetry() {
        for x in RationalLabel::all_up_to(16) {
            let lab = labeling(x).unwrap();
            let n = x.sum() as usize;
            assert_eq!(lab.essential_count(), 2 * n - 2, "{x}");
            let tags = lab.loop_tags();
            assert_eq!(tags.len(), n);
            assert_eq!(tags.iter().filter(|s| **s == Seam::LA).count() as u64, x.q(), "{x}");
            assert_eq!(tags.iter().filter(|s| **s == Seam::LB).count() as u64, x.p(), "{x}");
            // Walls are pairwise distinct lines: distinct reduced half-turn words.
            let hs: std::collections::HashSet<_> = lab.walls.iter().map(|w| w.half_turn_word()).collect();
            assert_eq!(hs.len(), lab.walls.len(), "{x}");
        }
    }

    #[test]
    fn translation_by_period() {
        let lab = labeling(r(2, 3)).unwrap();
        let e = lab.word.to_group_word();
        let first = &lab.walls[0];
        let last = lab.walls.last().unwrap();
        assert_eq!(last.seam, first.seam);
        assert_eq!(last.half_turn_word(), e.half_turns().concat(&first.half_turn_word()).concat(&e.inverse().half_turns()));
    }
}
