//! Finite binary strings and the exhaustive, level-by-level enumeration of
//! all of them.
//!
//! The global order is length first, then lexicographic with `0 < 1`:
//! `ε, 0, 1, 00, 01, 10, 11, 000, ...`. Under that order the position of a
//! string has a closed form, see [`rank_of`].

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::caps::{CapExceeded, Caps};

/// A finite sequence of bits. The empty string is a valid value.
///
/// `Ord` is the canonical enumeration order (shorter strings first, equal
/// lengths compared lexicographically), so ordered collections of
/// `BitString` come out in rank order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub const fn new() -> Self {
        BitString { bits: Vec::new() }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitString { bits }
    }

    /// The `len` low bits of `value`, most significant first.
    pub fn from_value(value: u64, len: usize) -> Self {
        let bits = (0..len)
            .rev()
            .map(|i| i < 64 && (value >> i) & 1 == 1)
            .collect();
        BitString { bits }
    }

    pub fn repeat(bit: bool, len: usize) -> Self {
        BitString {
            bits: alloc::vec![bit; len],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn pop(&mut self) -> Option<bool> {
        self.bits.pop()
    }

    pub fn last(&self) -> Option<bool> {
        self.bits.last().copied()
    }

    /// A copy with `bit` appended.
    pub fn with(&self, bit: bool) -> BitString {
        let mut bits = Vec::with_capacity(self.bits.len() + 1);
        bits.extend_from_slice(&self.bits);
        bits.push(bit);
        BitString { bits }
    }

    pub fn starts_with(&self, prefix: &BitString) -> bool {
        self.bits.starts_with(&prefix.bits)
    }

    /// The binary numeral spelled by the string (`value("") = 0`).
    pub fn value(&self) -> BigUint {
        let mut v = BigUint::zero();
        for &b in &self.bits {
            v <<= 1u32;
            if b {
                v += 1u32;
            }
        }
        v
    }

    /// [`value`](Self::value) for strings of at most 64 bits.
    pub fn value_u64(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    /// Advances to the lexicographic successor within the same length.
    /// Returns `false` (and wraps to all zeros) when `self` was all ones.
    pub fn increment(&mut self) -> bool {
        for bit in self.bits.iter_mut().rev() {
            if *bit {
                *bit = false;
            } else {
                *bit = true;
                return true;
            }
        }
        false
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits
            .len()
            .cmp(&other.bits.len())
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("invalid bit character {found:?} at position {position}")]
pub struct ParseBitsError {
    pub position: usize,
    pub found: char,
}

impl FromStr for BitString {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                found => Err(ParseBitsError { position, found }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString::from_bits)
    }
}

impl From<BitString> for String {
    fn from(s: BitString) -> String {
        alloc::format!("{}", s)
    }
}

/// Position of `s` in the length-then-lexicographic order:
/// `(2^len − 1) + value(s)`.
pub fn rank_of(s: &BitString) -> BigUint {
    let shorter = (BigUint::one() << s.len()) - 1u32;
    shorter + s.value()
}

/// Inverse of [`rank_of`].
pub fn string_at(k: &BigUint) -> BitString {
    // The string of rank k has length len = floor(log2(k + 1)) and value
    // k + 1 − 2^len, i.e. k + 1 in binary with its leading one removed.
    let shifted = k + 1u32;
    let len = (shifted.bits() - 1) as usize;
    let bits = (0..len).rev().map(|i| shifted.bit(i as u64)).collect();
    BitString { bits }
}

/// All strings, in rank order, forever. This is the enumeration itself, walked
/// by successor steps rather than through [`string_at`].
#[derive(Debug, Clone, Default)]
pub struct AllStrings {
    next: Option<BitString>,
}

impl AllStrings {
    pub fn new() -> Self {
        AllStrings {
            next: Some(BitString::new()),
        }
    }
}

impl Iterator for AllStrings {
    type Item = BitString;

    fn next(&mut self) -> Option<BitString> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if !succ.increment() {
            // Wrapped past 1…1: the next level starts at 0…0.
            succ.push(false);
        }
        self.next = Some(succ);
        Some(current)
    }
}

/// A lazy view of level `n`: the `2^n` strings of length `n` in ascending
/// order. Rows are produced on demand, so a level can be inspected far past
/// the materialization cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Level {
    n: u32,
}

impl Level {
    pub fn new(n: u32) -> Self {
        Level { n }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of rows, `None` when `2^n` does not fit a `u64`.
    pub fn row_count(&self) -> Option<u64> {
        1u64.checked_shl(self.n)
    }

    /// Row `i`, i.e. `i` written with `n` bits.
    pub fn row(&self, i: u64) -> Option<BitString> {
        if self.row_count().is_some_and(|c| i >= c) {
            return None;
        }
        Some(BitString::from_value(i, self.n as usize))
    }

    /// Index of `s` among the rows, or `None` when `s` is not a row.
    pub fn position(&self, s: &BitString) -> Option<u64> {
        if s.len() != self.n as usize {
            return None;
        }
        s.value_u64()
    }

    pub fn contains(&self, s: &BitString) -> bool {
        s.len() == self.n as usize
    }

    pub fn iter(&self) -> LevelIter {
        LevelIter {
            next: Some(BitString::repeat(false, self.n as usize)),
        }
    }
}

pub struct LevelIter {
    next: Option<BitString>,
}

impl Iterator for LevelIter {
    type Item = BitString;

    fn next(&mut self) -> Option<BitString> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if succ.increment() {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// All `2^n` strings of length `n`, materialized, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMatrix {
    n: u32,
    rows: Vec<BitString>,
}

impl LevelMatrix {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> &[BitString] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitString> {
        self.rows
    }

    pub fn contains(&self, s: &BitString) -> bool {
        self.rows.binary_search(s).is_ok()
    }
}

/// `n` rows of length `n`, taken from level `n` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: u32,
    rows: Vec<BitString>,
}

impl SquareMatrix {
    /// Checks the shape and ordering invariants.
    pub fn from_rows(rows: Vec<BitString>) -> Option<Self> {
        let n = rows.len();
        let shaped = rows.iter().all(|r| r.len() == n);
        let ascending = rows.windows(2).all(|w| w[0] < w[1]);
        if n == 0 || !shaped || !ascending {
            return None;
        }
        Some(SquareMatrix { n: n as u32, rows })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> &[BitString] {
        &self.rows
    }

    pub fn contains(&self, s: &BitString) -> bool {
        self.rows.binary_search(s).is_ok()
    }
}

/// Every string of length `n`, ascending. Rejects `n` above `caps.max_level`.
pub fn enumerate_level(n: u32, caps: &Caps) -> Result<LevelMatrix, CapExceeded> {
    caps.check_level(n)?;
    Ok(LevelMatrix {
        n,
        rows: Level::new(n).iter().collect(),
    })
}

/// The first `n` rows of level `n`.
pub fn square_matrix(n: u32, caps: &Caps) -> Result<SquareMatrix, SquareError> {
    if n == 0 {
        return Err(SquareError::ZeroSide);
    }
    caps.check_square(n)?;
    let level = Level::new(n);
    let rows = (0..n as u64)
        .map(|i| level.row(i).expect("n < 2^n"))
        .collect();
    Ok(SquareMatrix { n, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SquareError {
    #[error("a square matrix needs a side of at least 1")]
    ZeroSide,
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

/// The string that differs from row `i` at position `i`, for every `i`.
pub fn antidiagonal_flip(m: &SquareMatrix) -> BitString {
    m.rows
        .iter()
        .enumerate()
        .map(|(i, row)| !row.bits[i])
        .collect::<Vec<_>>()
        .into()
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        BitString { bits }
    }
}

/// One primitive edit; together they reach any string from any other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edit {
    Flip(usize),
    Extend(bool),
    Truncate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EditError {
    #[error("IndexOutOfRange: flip at {index} on a string of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("EmptyTruncate: cannot truncate the empty string")]
    EmptyTruncate,
}

pub fn edit_bit(s: &BitString, action: Edit) -> Result<BitString, EditError> {
    let mut out = s.clone();
    match action {
        Edit::Flip(index) => match out.bits.get_mut(index) {
            Some(bit) => *bit = !*bit,
            None => {
                return Err(EditError::IndexOutOfRange {
                    index,
                    len: s.len(),
                })
            }
        },
        Edit::Extend(bit) => out.bits.push(bit),
        Edit::Truncate => {
            out.bits.pop().ok_or(EditError::EmptyTruncate)?;
        }
    }
    Ok(out)
}

/// A sequence of edits turning `from` into `to`: truncate the excess, flip
/// the mismatches on the common part, then extend.
pub fn edit_path(from: &BitString, to: &BitString) -> Vec<Edit> {
    let mut path = Vec::new();
    let common = from.len().min(to.len());
    path.extend(core::iter::repeat_n(Edit::Truncate, from.len() - common));
    path.extend(
        (0..common)
            .filter(|&i| from.bits[i] != to.bits[i])
            .map(Edit::Flip),
    );
    path.extend(to.bits[common..].iter().map(|&b| Edit::Extend(b)));
    path
}

/// Convenience for small ranks.
pub fn rank_of_u64(s: &BitString) -> Option<u64> {
    rank_of(s).to_u64()
}
