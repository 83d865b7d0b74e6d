//! Rational labels, Farey parents, continued fractions and the palindromic
//! enumeration `p/q ↦ E_{p/q}` of primitive words.
//!
//! Convention: `E_{0/1} = A`, `E_{1/0} = B`, so `E_{p/q}` has `q` letters `A`
//! and `p` letters `B`. For odd `p + q` the word is a palindrome; for even
//! `p + q` it is the product of the parent words in the order that leaves
//! both Farey children palindromic. That order is never unique (reversal is
//! a symmetry of the scheme), so the left parent goes first whenever it
//! qualifies.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::words::{GroupWord, Letter};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A nonnegative rational `p/q` in lowest terms; `1/0` is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalLabel {
    p: u64,
    q: u64,
}

impl RationalLabel {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if (p, q) == (0, 0) || gcd(p, q) != 1 {
            return Err(Error::NotReduced(format!("{p}/{q}")));
        }
        Ok(Self { p, q })
    }

    pub const ZERO: RationalLabel = RationalLabel { p: 0, q: 1 };
    pub const INFINITY: RationalLabel = RationalLabel { p: 1, q: 0 };
    pub const ONE: RationalLabel = RationalLabel { p: 1, q: 1 };

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `p + q`, the word length.
    pub fn sum(&self) -> u64 {
        self.p + self.q
    }

    pub fn is_odd(&self) -> bool {
        self.sum() % 2 == 1
    }

    pub fn mediant(&self, other: &RationalLabel) -> RationalLabel {
        RationalLabel { p: self.p + other.p, q: self.q + other.q }
    }

    /// Every label with `p + q ≤ max_sum`, ordered by sum then by value.
    pub fn all_up_to(max_sum: u64) -> Vec<RationalLabel> {
        let mut out = Vec::new();
        for n in 1..=max_sum {
            let mut level: Vec<_> = (0..=n).filter_map(|p| RationalLabel::new(p, n - p).ok()).collect();
            level.sort_by(|x, y| (x.p * y.q).cmp(&(y.p * x.q)));
            out.extend(level);
        }
        out
    }

    fn less_than(&self, other: &RationalLabel) -> bool {
        (self.p as u128) * (other.q as u128) < (other.p as u128) * (self.q as u128)
    }
}

impl fmt::Display for RationalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RationalLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('-') {
            return Err(Error::OutOfScope(s.to_string()));
        }
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        let p = p.trim().parse::<u64>().map_err(|_| Error::BadLabel(s.to_string()))?;
        let q = q.trim().parse::<u64>().map_err(|_| Error::BadLabel(s.to_string()))?;
        RationalLabel::new(p, q)
    }
}

/// The unimodular pair `l/m < r/s` whose mediant is the child.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FareyParents {
    pub left: RationalLabel,
    pub right: RationalLabel,
}

/// Stern–Brocot descent; defined for every label except `0/1` and `1/0`.
fn parents_unchecked(x: RationalLabel) -> FareyParents {
    let mut left = RationalLabel::ZERO;
    let mut right = RationalLabel::INFINITY;
    loop {
        let m = left.mediant(&right);
        if m == x {
            return FareyParents { left, right };
        }
        if x.less_than(&m) {
            right = m;
        } else {
            left = m;
        }
    }
}

pub fn farey_parents(x: RationalLabel) -> Result<FareyParents> {
    if x == RationalLabel::ZERO || x == RationalLabel::INFINITY || x == RationalLabel::ONE {
        return Err(Error::NoParents(x.to_string()));
    }
    Ok(parents_unchecked(x))
}

/// `[a0; a1, …, ak]` with `ak ≥ 2` whenever `k ≥ 1`.
pub fn continued_fraction(x: RationalLabel) -> Result<Vec<u64>> {
    if x.q == 0 {
        return Err(Error::InfiniteLabel);
    }
    let (mut a, mut b) = (x.p, x.q);
    let mut out = Vec::new();
    while b != 0 {
        out.push(a / b);
        (a, b) = (b, a % b);
    }
    Ok(out)
}

/// `E_{p/q}` with its label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimitiveWord {
    letters: Vec<Letter>,
    label: RationalLabel,
}

impl PrimitiveWord {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn label(&self) -> RationalLabel {
        self.label
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_palindrome(&self) -> bool {
        self.letters.iter().eq(self.letters.iter().rev())
    }

    pub fn count(&self, l: Letter) -> usize {
        self.letters.iter().filter(|&&x| x == l).count()
    }

    pub fn to_group_word(&self) -> GroupWord {
        GroupWord::from_letters(self.letters.iter().copied())
    }
}

impl fmt::Display for PrimitiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

fn is_pal(w: &[Letter]) -> bool {
    w.iter().eq(w.iter().rev())
}

fn join(x: &[Letter], y: &[Letter]) -> Vec<Letter> {
    x.iter().chain(y).copied().collect()
}

/// Can some ordering of `x·y` be a palindrome?
fn some_order_palindromic(x: &[Letter], y: &[Letter]) -> bool {
    is_pal(&join(x, y)) || is_pal(&join(y, x))
}

struct Enumerator {
    memo: HashMap<RationalLabel, Vec<Letter>>,
}

impl Enumerator {
    fn word(&mut self, x: RationalLabel) -> Result<Vec<Letter>> {
        if let Some(w) = self.memo.get(&x) {
            return Ok(w.clone());
        }
        let w = if x == RationalLabel::ZERO {
            vec![Letter::A]
        } else if x == RationalLabel::INFINITY {
            vec![Letter::B]
        } else {
            let FareyParents { left, right } = parents_unchecked(x);
            let wl = self.word(left)?;
            let wr = self.word(right)?;
            let first = join(&wl, &wr);
            let second = join(&wr, &wl);
            if x.is_odd() {
                [first, second]
                    .into_iter()
                    .find(|w| is_pal(w))
                    .ok_or_else(|| Error::Invariant(format!("no palindromic ordering for {x}")))?
            } else {
                let qualifies =
                    |w: &[Letter]| some_order_palindromic(&wl, w) && some_order_palindromic(&wr, w);
                if qualifies(&first) {
                    first
                } else if qualifies(&second) {
                    second
                } else {
                    return Err(Error::Invariant(format!("no ordering of {x} has palindromic children")));
                }
            }
        };
        self.memo.insert(x, w.clone());
        Ok(w)
    }
}

/// `E_{p/q}`.
pub fn primitive_word(x: RationalLabel) -> Result<PrimitiveWord> {
    let mut e = Enumerator { memo: HashMap::new() };
    let letters = e.word(x)?;
    Ok(PrimitiveWord { letters, label: x })
}

/// `Ẽ_{p/q} = E_{r/s} E_{l/m}` for even `p + q`: the product of the parent
/// words in the opposite order to `E_{p/q}`.
pub fn conjugate_partner(x: RationalLabel) -> Result<PrimitiveWord> {
    if x.is_odd() || x == RationalLabel::ZERO || x == RationalLabel::INFINITY {
        return Err(Error::PartnerUndefined(x.to_string()));
    }
    let FareyParents { left, right } = parents_unchecked(x);
    let e = primitive_word(x)?;
    let wl = primitive_word(left)?.letters;
    let wr = primitive_word(right)?.letters;
    let lr = join(&wl, &wr);
    let letters = if e.letters == lr { join(&wr, &wl) } else { lr };
    Ok(PrimitiveWord { letters, label: x })
}

/// `E = W U W̄` for palindromic words: `(W, U, W̄)`.
pub fn palindrome_decomposition(w: &PrimitiveWord) -> Option<(Vec<Letter>, Letter, Vec<Letter>)> {
    if w.len() % 2 == 0 || !w.is_palindrome() {
        return None;
    }
    let n = (w.len() - 1) / 2;
    Some((w.letters[..n].to_vec(), w.letters[n], w.letters[n + 1..].to_vec()))
}
