//! Words in the free group ⟨A, B⟩ and in the half-turn group ⟨H_L, H_{L_A}, H_{L_B}⟩.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Generator or inverse generator of the free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    AInv,
    BInv,
}

impl Letter {
    pub fn inverse(self) -> Self {
        match self {
            Letter::A => Letter::AInv,
            Letter::B => Letter::BInv,
            Letter::AInv => Letter::A,
            Letter::BInv => Letter::B,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::AInv => 'a',
            Letter::BInv => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'A' => Some(Letter::A),
            'B' => Some(Letter::B),
            'a' => Some(Letter::AInv),
            'b' => Some(Letter::BInv),
            _ => None,
        }
    }

    /// Half-turn factorization: `A = H_L H_{L_A}`, `B = H_L H_{L_B}`.
    pub fn half_turns(self) -> [Seam; 2] {
        match self {
            Letter::A => [Seam::L, Seam::LA],
            Letter::B => [Seam::L, Seam::LB],
            Letter::AInv => [Seam::LA, Seam::L],
            Letter::BInv => [Seam::LB, Seam::L],
        }
    }
}

/// A freely reduced word over `{A, B, a = A⁻¹, b = B⁻¹}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Self::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
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

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    /// Cyclic reduction: strip matching inverse pairs at the two ends.
    pub fn cyclically_reduced(&self) -> Self {
        let mut v = self.0.as_slice();
        while v.len() >= 2 && v[0] == v[v.len() - 1].inverse() {
            v = &v[1..v.len() - 1];
        }
        Self(v.to_vec())
    }

    /// Half-turn expansion of the word, reduced in the half-turn group.
    pub fn half_turns(&self) -> HalfTurnWord {
        HalfTurnWord::from_seams(self.0.iter().flat_map(|l| l.half_turns()))
    }

    /// Every reduced word of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> Vec<GroupWord> {
        const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::AInv, Letter::BInv];
        let mut out = vec![GroupWord::identity()];
        let mut frontier = vec![GroupWord::identity()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(frontier.len() * 3);
            for w in &frontier {
                for l in ALL {
                    if w.0.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut x = w.clone();
                    x.0.push(l);
                    next.push(x);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Are `self` and `other` conjugate in the free group?
    pub fn is_conjugate_to(&self, other: &GroupWord) -> bool {
        let x = self.cyclically_reduced();
        let y = other.cyclically_reduced();
        if x.len() != y.len() {
            return false;
        }
        if x.is_empty() {
            return true;
        }
        (0..x.len()).any(|k| x.0[k..].iter().chain(&x.0[..k]).eq(y.0.iter()))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "1" {
            return Ok(Self::identity());
        }
        s.chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Config(format!("bad word letter {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(GroupWord::from_letters)
    }
}

/// One of the three half-turn lines of a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Seam {
    L,
    LA,
    LB,
}

impl Seam {
    pub fn name(self) -> &'static str {
        match self {
            Seam::L => "L",
            Seam::LA => "LA",
            Seam::LB => "LB",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "L" => Some(Seam::L),
            "LA" => Some(Seam::LA),
            "LB" => Some(Seam::LB),
            _ => None,
        }
    }

    /// `X` with `X = H_L H_{self}` (identity for `L`).
    fn as_group_letter(self) -> Option<Letter> {
        match self {
            Seam::L => None,
            Seam::LA => Some(Letter::A),
            Seam::LB => Some(Letter::B),
        }
    }
}

impl fmt::Display for Seam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A reduced word in the free product of three copies of Z/2 generated by
/// the half-turns (adjacent equal letters cancel).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HalfTurnWord(Vec<Seam>);

impl HalfTurnWord {
    pub fn from_seams<I: IntoIterator<Item = Seam>>(seams: I) -> Self {
        let mut w = Self::default();
        for s in seams {
            w.push(s);
        }
        w
    }

    pub fn push(&mut self, s: Seam) {
        if self.0.last() == Some(&s) {
            self.0.pop();
        } else {
            self.0.push(s);
        }
    }

    pub fn seams(&self) -> &[Seam] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &HalfTurnWord) -> Self {
        let mut w = self.clone();
        for &s in &other.0 {
            w.push(s);
        }
        w
    }

    /// Rewrite an even-length word as a word in `A, B` using
    /// `H_X H_Y = X⁻¹ Y` with `X_L = 1`.
    pub fn to_group_word(&self) -> Option<GroupWord> {
        if self.0.len() % 2 != 0 {
            return None;
        }
        let mut w = GroupWord::identity();
        for pair in self.0.chunks(2) {
            if let Some(x) = pair[0].as_group_letter() {
                w.push(x.inverse());
            }
            if let Some(y) = pair[1].as_group_letter() {
                w.push(y);
            }
        }
        Some(w)
    }
}

impl fmt::Display for HalfTurnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<_> = self.0.iter().map(|s| s.name()).collect();
        write!(f, "{}", names.join("."))
    }
}
