//! Lattice paths over the two-letter step alphabet, stored one bit per step.
//!
//! A path is a word over `U` (height +1) and `D` (height −m) for a fixed
//! slope parameter m ≥ 1. Step totals are cached so the height of the whole
//! path is O(1); classification predicates scan once.

use std::fmt;

use bitvec::vec::BitVec;

use crate::Error;

/// One step of a path: `Up` rises by 1, `Down` falls by m.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    /// Height contribution of this step for slope parameter `m`.
    #[inline]
    pub fn delta(self, m: u32) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -i64::from(m),
        }
    }

    /// The ASCII letter for this step.
    #[inline]
    pub fn to_char(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }

    /// Parse one ASCII step letter.
    pub fn from_char(c: char) -> Result<Self, Error> {
        match c {
            'U' => Ok(Step::Up),
            'D' => Ok(Step::Down),
            other => Err(Error::InvalidStepChar(other)),
        }
    }
}

/// The reduced form of a path of length n and height h: the unique
/// decomposition n = (m+1)·n̄ + r and h = (m+1)·h̄ + r with a shared
/// remainder r ∈ [0, m].
///
/// Both decompositions share the same r because every step changes the height
/// by +1 modulo m+1, so h ≡ n (mod m+1). `h_bar` uses floor division and may
/// be negative (it is −1 exactly for m-Łukasiewicz paths).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ReducedForm {
    pub n_bar: usize,
    pub h_bar: i64,
    pub r: u32,
}

/// A lattice path over {U, D} with slope parameter m, stored as a packed bit
/// sequence (one bit per step, `true` = U) with cached step totals.
#[derive(Clone, PartialEq, Eq)]
pub struct Path {
    m: u32,
    steps: BitVec,
    ups: usize,
}

impl Path {
    /// Empty path for slope parameter `m` (must be ≥ 1).
    pub fn new(m: u32) -> Self {
        assert!(m >= 1, "slope parameter m must be >= 1, got {m}");
        Path { m, steps: BitVec::new(), ups: 0 }
    }

    /// Empty path with room for `n` steps.
    pub fn with_capacity(m: u32, n: usize) -> Self {
        assert!(m >= 1, "slope parameter m must be >= 1, got {m}");
        Path { m, steps: BitVec::with_capacity(n), ups: 0 }
    }

    /// Build a path from a sequence of steps.
    pub fn from_steps<I: IntoIterator<Item = Step>>(m: u32, steps: I) -> Self {
        let mut p = Path::new(m);
        for s in steps {
            p.push(s);
        }
        p
    }

    /// Parse an ASCII word over {U, D}. Any other character is rejected.
    pub fn parse(m: u32, s: &str) -> Result<Self, Error> {
        let mut p = Path::with_capacity(m, s.len());
        for c in s.chars() {
            p.push(Step::from_char(c)?);
        }
        Ok(p)
    }

    /// Slope parameter m.
    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of steps.
    #[inline]
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Whether the path has no steps.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of U steps.
    #[inline]
    pub fn n_up(&self) -> usize {
        self.ups
    }

    /// Number of D steps.
    #[inline]
    pub fn n_down(&self) -> usize {
        self.steps.len() - self.ups
    }

    /// Append a step.
    #[inline]
    pub fn push(&mut self, s: Step) {
        self.steps.push(s == Step::Up);
        self.ups += (s == Step::Up) as usize;
    }

    /// Remove and return the final step.
    pub fn pop(&mut self) -> Option<Step> {
        let up = self.steps.pop()?;
        self.ups -= up as usize;
        Some(if up { Step::Up } else { Step::Down })
    }

    /// The step at 0-based index `i`. Panics if out of range.
    #[inline]
    pub fn step(&self, i: usize) -> Step {
        if self.steps[i] {
            Step::Up
        } else {
            Step::Down
        }
    }

    /// Overwrite the step at 0-based index `i`, keeping the cached totals
    /// consistent. Panics if out of range.
    #[inline]
    pub fn set_step(&mut self, i: usize, s: Step) {
        let new = s == Step::Up;
        let old = self.steps.replace(i, new);
        match (old, new) {
            (false, true) => self.ups += 1,
            (true, false) => self.ups -= 1,
            _ => {}
        }
    }

    /// Iterate over the steps in order.
    pub fn iter(&self) -> impl Iterator<Item = Step> + '_ {
        self.steps.iter().map(|b| if *b { Step::Up } else { Step::Down })
    }

    /// Height of the full path: n_up − m·n_down, in O(1) from cached totals.
    #[inline]
    pub fn height(&self) -> i64 {
        self.ups as i64 - i64::from(self.m) * (self.steps.len() - self.ups) as i64
    }

    /// Reduced form (n̄, h̄, r) of the path; see [`ReducedForm`].
    pub fn reduced_form(&self) -> ReducedForm {
        let period = self.m as usize + 1;
        let r = (self.len() % period) as u32;
        let n_bar = self.len() / period;
        let h = self.height();
        let num = h - i64::from(r);
        debug_assert_eq!(
            num.rem_euclid(period as i64),
            0,
            "height must be congruent to length modulo m+1"
        );
        ReducedForm { n_bar, h_bar: num / period as i64, r }
    }

    /// Whether every running height (all prefixes) stays ≥ 0.
    pub fn is_mdyck_prefix(&self) -> bool {
        let m = i64::from(self.m);
        let mut h = 0i64;
        for b in self.steps.iter() {
            h += if *b { 1 } else { -m };
            if h < 0 {
                return false;
            }
        }
        true
    }

    /// Whether every *proper* prefix stays ≥ 0 and the full path ends < 0.
    ///
    /// The final height of such a path is automatically in [−m, −1] and its
    /// reduced height h̄ is −1.
    pub fn is_mluka(&self) -> bool {
        if self.steps.is_empty() {
            return false;
        }
        let m = i64::from(self.m);
        let mut h = 0i64;
        for (i, b) in self.steps.iter().enumerate() {
            h += if *b { 1 } else { -m };
            if h < 0 {
                return i == self.steps.len() - 1;
            }
        }
        false
    }

    /// Whether the path is an m-Dyck path: an m-Dyck prefix of height 0.
    pub fn is_mdyck_path(&self) -> bool {
        self.height() == 0 && self.is_mdyck_prefix()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.iter() {
            f.write_fmt(format_args!("{}", s.to_char()))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path(m={}, \"{}\")", self.m, self)
    }
}
