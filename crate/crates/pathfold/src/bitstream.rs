//! Counted random-bit plumbing and entropy-optimal discrete generators.
//!
//! Every random decision in this crate flows through [`CountedBitSource`], so
//! the exact number of random bits an algorithm consumed can be read off its
//! counter afterwards. On top of the raw source sit three generators:
//!
//! * [`BernoulliGen`] draws steps with P(U) = m/(m+1), P(D) = 1/(m+1) in
//!   groups of `g`, walking an exact discrete-distribution-generating tree
//!   over the g+1 classes "number of U steps in the group". The draw is
//!   exact (no floating point), costs at most g·η(m) + 2 expected bits per
//!   group where η(m) is the per-step entropy, and larger `g` drives the
//!   per-step cost toward η(m).
//! * [`draw_uniform`] draws an exact uniform on 1..=k with the bit-recycling
//!   dice roller; powers of two cost exactly log2(k) bits, k = 1 costs none.
//! * [`draw_decoration`] draws the tuple of uniform labels a sampled prefix
//!   needs before it can be folded.

use crate::path::Step;
use crate::Error;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A deterministic stream of random bits with an exact consumption counter.
///
/// Bits are taken from the low end of successive 64-bit words of a seeded
/// ChaCha8 generator. Each [`next_bit`](Self::next_bit) costs one counted
/// bit, [`next_bits`](Self::next_bits)`(k)` costs `k`, and
/// [`next_f64`](Self::next_f64) costs 53.
#[derive(Clone, Debug)]
pub struct CountedBitSource {
    rng: ChaCha8Rng,
    buf: u64,
    avail: u32,
    consumed: u64,
}

impl CountedBitSource {
    pub fn from_seed(seed: u64) -> Self {
        CountedBitSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            buf: 0,
            avail: 0,
            consumed: 0,
        }
    }

    /// Total bits handed out so far.
    pub fn bits_consumed(&self) -> u64 {
        self.consumed
    }

    pub fn next_bit(&mut self) -> bool {
        if self.avail == 0 {
            self.buf = self.rng.next_u64();
            self.avail = 64;
        }
        let bit = self.buf & 1 != 0;
        self.buf >>= 1;
        self.avail -= 1;
        self.consumed += 1;
        bit
    }

    /// The next `k` bits (`k` ≤ 64) packed little-endian: the first bit drawn
    /// is the least significant bit of the result.
    pub fn next_bits(&mut self, k: u32) -> u64 {
        assert!(k <= 64, "at most 64 bits per call");
        if k == 0 {
            return 0;
        }
        self.consumed += u64::from(k);
        let mut out = 0u64;
        let mut got = 0u32;
        while got < k {
            if self.avail == 0 {
                self.buf = self.rng.next_u64();
                self.avail = 64;
            }
            let take = (k - got).min(self.avail);
            let chunk = if take == 64 { self.buf } else { self.buf & ((1u64 << take) - 1) };
            out |= chunk << got;
            self.buf = if take == 64 { 0 } else { self.buf >> take };
            self.avail -= take;
            got += take;
        }
        out
    }

    /// A uniform double in [0, 1) with 53 random bits of resolution.
    pub fn next_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / 9007199254740992.0; // 2^-53
        self.next_bits(53) as f64 * SCALE
    }
}

/// Entropy in bits of one step of the walk: the entropy of the distribution
/// {U: m/(m+1), D: 1/(m+1)}.
pub fn step_entropy_bits(m: u32) -> f64 {
    assert!(m >= 1);
    let m = f64::from(m);
    let q = m + 1.0;
    q.log2() - (m / q) * m.log2()
}

/// Exact grouped step generator.
///
/// A group of `g` consecutive steps has (m+1)^g equally structured outcomes;
/// the outcome with t U steps has probability m^t/(m+1)^g. The generator
/// walks the discrete-distribution-generating tree of that distribution with
/// the outcomes collapsed into the g+1 classes "t U steps": at depth d the
/// class gains C(g,t) leaves whenever the d-th binary digit of m^t/(m+1)^g is
/// one. Reaching a leaf yields both the class and the leaf's rank inside its
/// block, and the rank is exactly a free uniform index over the C(g,t)
/// arrangements, so no further bits are needed to place the U steps.
///
/// The walk index stays below 2^(g+1) and the per-class remainders stay below
/// 2·(m+1)^g, so all state fits in machine words for (m+1)^g < 2^126.
#[derive(Clone, Debug)]
pub struct BernoulliGen {
    grouping: u32,
    weight_total: u128,
    init_rems: Vec<u128>,
    rems: Vec<u128>,
    class_counts: Vec<u64>,
    pascal: Vec<Vec<u64>>,
    buffer: Vec<Step>,
    pos: usize,
}

impl BernoulliGen {
    /// `grouping` must lie in 1..=16 and (m+1)^grouping must fit below 2^126.
    pub fn new(m: u32, grouping: u32) -> Result<Self, Error> {
        assert!(m >= 1, "m must be at least 1");
        if !(1..=16).contains(&grouping) {
            return Err(Error::BadGrouping(format!(
                "grouping {grouping} outside supported range 1..=16"
            )));
        }
        let g = grouping as usize;
        let base = u128::from(m) + 1;
        let weight_total = base
            .checked_pow(grouping)
            .filter(|w| *w < (1u128 << 126))
            .ok_or_else(|| {
                Error::BadGrouping(format!(
                    "(m+1)^grouping overflows the sampler state for m = {m}, grouping = {grouping}"
                ))
            })?;
        let mut pascal: Vec<Vec<u64>> = Vec::with_capacity(g + 1);
        pascal.push(vec![1]);
        for l in 1..=g {
            let prev = &pascal[l - 1];
            let mut row = vec![1u64; l + 1];
            for k in 1..l {
                row[k] = prev[k - 1] + prev[k];
            }
            pascal.push(row);
        }
        let class_counts = pascal[g].clone();
        let init_rems: Vec<u128> = (0..=g as u32)
            .map(|t| u128::from(m).pow(t))
            .collect();
        debug_assert_eq!(
            init_rems
                .iter()
                .zip(&class_counts)
                .map(|(w, c)| w * u128::from(*c))
                .sum::<u128>(),
            weight_total
        );
        Ok(BernoulliGen {
            grouping,
            weight_total,
            rems: init_rems.clone(),
            init_rems,
            class_counts,
            pascal,
            buffer: vec![Step::Down; g],
            pos: g,
        })
    }

    pub fn grouping(&self) -> u32 {
        self.grouping
    }

    /// Draw the next step, refilling the group buffer when it runs dry.
    pub fn draw_step(&mut self, src: &mut CountedBitSource) -> Step {
        if self.pos == self.buffer.len() {
            self.refill(src);
            self.pos = 0;
        }
        let step = self.buffer[self.pos];
        self.pos += 1;
        step
    }

    fn refill(&mut self, src: &mut CountedBitSource) {
        let g = self.grouping as usize;
        let w = self.weight_total;
        self.rems.copy_from_slice(&self.init_rems);
        let mut u: u64 = 0;
        let (class, rank) = 'draw: loop {
            u = (u << 1) | u64::from(src.next_bit());
            debug_assert!(u < (2u64 << g), "walk index escaped its bound");
            let mut leaves: u64 = 0;
            for t in 0..=g {
                self.rems[t] <<= 1;
                if self.rems[t] >= w {
                    self.rems[t] -= w;
                    let c = self.class_counts[t];
                    if u < leaves + c {
                        break 'draw (t, u - leaves);
                    }
                    leaves += c;
                }
            }
            u -= leaves;
        };
        // Unrank the free uniform index into a concrete arrangement of the
        // class's U steps, slot by slot.
        let mut rank = rank;
        let mut ups = class;
        for slot in 0..g {
            let left = g - slot;
            self.buffer[slot] = if ups == left {
                ups -= 1;
                Step::Up
            } else if ups == 0 {
                Step::Down
            } else {
                let starting_with_up = self.pascal[left - 1][ups - 1];
                if rank < starting_with_up {
                    ups -= 1;
                    Step::Up
                } else {
                    rank -= starting_with_up;
                    Step::Down
                }
            };
        }
        debug_assert_eq!(rank, 0, "arrangement rank not exhausted");
        debug_assert_eq!(ups, 0);
    }
}

/// Exact uniform draw from 1..=k by the bit-recycling dice roller.
///
/// k = 1 consumes no bits and k = 2^j consumes exactly j; in general the
/// expected cost is below log2(k) + 2 bits.
pub fn draw_uniform(src: &mut CountedBitSource, k: u64) -> u64 {
    assert!(k >= 1 && k <= (1u64 << 62), "k out of supported range");
    if k == 1 {
        return 1;
    }
    let mut range: u64 = 1;
    let mut value: u64 = 0;
    loop {
        range <<= 1;
        value = (value << 1) | u64::from(src.next_bit());
        if range >= k {
            if value < k {
                return value + 1;
            }
            range -= k;
            value -= k;
        }
    }
}

/// Draw the decoration labels (a_0, …, a_h̄) for a prefix with the given
/// reduced height h̄ and remainder r: the first h̄ entries are uniform on
/// 1..=m and the last is uniform on 1..=r.
pub fn draw_decoration(src: &mut CountedBitSource, m: u32, h_bar: usize, r: u32) -> Vec<u32> {
    assert!(m >= 1);
    assert!(r >= 1 && r <= m, "remainder out of range");
    let mut out = Vec::with_capacity(h_bar + 1);
    for _ in 0..h_bar {
        out.push(draw_uniform(src, u64::from(m)) as u32);
    }
    out.push(draw_uniform(src, u64::from(r)) as u32);
    out
}
