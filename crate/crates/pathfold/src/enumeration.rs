//! Exact counting and exhaustive generation of m-Dyck / m-Łukasiewicz paths.
//!
//! All counts are arbitrary-precision ([`BigCount`]). The closed forms are
//!
//! * m-Łukasiewicz paths of length n: `L_n = (r/n)·C(n, n̄)` (0 when r = 0),
//! * weighted m-Dyck prefixes of length n: `Σ_w m^{h̄(w)} = C(n, n̄)`,
//! * m-Dyck paths of length (m+1)t: the Fuss–Catalan number
//!   `C((m+1)t, t)/(mt+1)`,
//!
//! where n = (m+1)·n̄ + r is the reduced form of the length. The divisions are
//! exact and asserted exact. [`enumerate_all`] generates the same families
//! explicitly for small n and is the brute-force oracle for everything else.

use num::bigint::BigUint;
use num::traits::{One, Zero};

use crate::path::{Path, Step};
use crate::Error;

/// Arbitrary-precision unsigned count.
pub type BigCount = BigUint;

/// Hard cap on `n` for [`enumerate_all`]; beyond it the generation walks far
/// too many nodes to be useful as a test oracle.
pub const ENUMERATION_MAX_N: usize = 24;

/// Which path family to enumerate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PathFamily {
    /// Every running height ≥ 0.
    DyckPrefix,
    /// Running heights ≥ 0, final height 0.
    DyckPath,
    /// Proper prefixes ≥ 0, final height < 0.
    Luka,
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: usize, k: usize) -> BigCount {
    num::integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Number of m-Łukasiewicz paths of length n: `(r/n)·C(n, n̄)`, which is 0
/// exactly when (m+1) divides n.
pub fn luka_count(m: u32, n: usize) -> BigCount {
    assert!(m >= 1, "slope parameter m must be >= 1");
    if n == 0 {
        return BigCount::zero();
    }
    let period = m as usize + 1;
    let r = n % period;
    if r == 0 {
        return BigCount::zero();
    }
    let n_bar = n / period;
    let num = binomial(n, n_bar) * BigUint::from(r);
    let (q, rem) = num::integer::div_rem(num, BigUint::from(n));
    assert!(rem.is_zero(), "r·C(n, n_bar) must be divisible by n");
    q
}

/// Weighted count of m-Dyck prefixes of length n, each prefix weighted by
/// m^{h̄}: equals `C(n, n̄)` exactly.
pub fn prefix_weighted_count(m: u32, n: usize) -> BigCount {
    assert!(m >= 1, "slope parameter m must be >= 1");
    binomial(n, n / (m as usize + 1))
}

/// The Fuss–Catalan number `C((m+1)t, t) / (mt + 1)`: the number of m-Dyck
/// paths of length (m+1)t. Equals `luka_count(m, (m+1)t + 1)`.
pub fn fuss_catalan(m: u32, t: usize) -> BigCount {
    assert!(m >= 1, "slope parameter m must be >= 1");
    let num = binomial((m as usize + 1) * t, t);
    let (q, rem) = num::integer::div_rem(num, BigUint::from(m as usize * t + 1));
    assert!(rem.is_zero(), "C((m+1)t, t) must be divisible by mt+1");
    q
}

/// Number of m-Dyck paths of length n: the Fuss–Catalan number when
/// (m+1) | n, and 0 otherwise.
pub fn mdyck_path_count(m: u32, n: usize) -> BigCount {
    let period = m as usize + 1;
    if n % period == 0 {
        fuss_catalan(m, n / period)
    } else {
        BigCount::zero()
    }
}

/// The length-n prefix polynomial `P_n(u) = Σ_w u^{h̄(w)}` over all m-Dyck
/// prefixes w of length n, with exact coefficients indexed by h̄ ∈ [0, n̄].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrefixPolynomial {
    m: u32,
    n: usize,
    coeffs: Vec<BigCount>,
}

impl PrefixPolynomial {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient of u^{h̄} (the number of prefixes with that reduced
    /// height); zero beyond the stored degree.
    pub fn coeff(&self, h_bar: usize) -> BigCount {
        self.coeffs.get(h_bar).cloned().unwrap_or_else(BigCount::zero)
    }

    /// Degree in u (equals n̄ for n ≥ 0).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Evaluate at an arbitrary-precision point.
    pub fn eval(&self, u: &BigCount) -> BigCount {
        let mut acc = BigCount::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }

    /// Total number of prefixes of this length, `P_n(1)`.
    pub fn total(&self) -> BigCount {
        self.coeffs.iter().cloned().sum()
    }
}

/// Compute `P_n(u)` by dynamic programming over (length, height). O(n²)
/// arbitrary-precision additions.
pub fn prefix_polynomial(m: u32, n: usize) -> PrefixPolynomial {
    assert!(m >= 1, "slope parameter m must be >= 1");
    let md = m as usize;
    // counts[h] = number of m-Dyck prefixes of the current length with height h
    let mut counts: Vec<BigCount> = vec![BigCount::zero(); n + 1];
    counts[0] = BigCount::one();
    let mut scratch: Vec<BigCount> = vec![BigCount::zero(); n + 1];
    for len in 0..n {
        for s in scratch.iter_mut() {
            s.set_zero();
        }
        for h in 0..=len {
            if counts[h].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut counts[h], BigCount::zero());
            scratch[h + 1] += &c;
            if h >= md {
                scratch[h - md] += &c;
            }
        }
        std::mem::swap(&mut counts, &mut scratch);
    }
    let period = md + 1;
    let r = n % period;
    let n_bar = n / period;
    let coeffs = (0..=n_bar)
        .map(|h_bar| std::mem::replace(&mut counts[period * h_bar + r], BigCount::zero()))
        .collect();
    PrefixPolynomial { m, n, coeffs }
}

/// Generate every path of length n in the family, in lexicographic order
/// (`D` < `U`), by pruned recursive descent. Errors when n exceeds
/// [`ENUMERATION_MAX_N`].
pub fn enumerate_all(m: u32, n: usize, family: PathFamily) -> Result<Vec<Path>, Error> {
    assert!(m >= 1, "slope parameter m must be >= 1");
    if n > ENUMERATION_MAX_N {
        return Err(Error::EnumerationBound { n, max: ENUMERATION_MAX_N });
    }
    let mut out = Vec::new();
    // A Dyck path must return to 0, which needs n ≡ 0 (mod m+1); that residue
    // is invariant along the walk, so check it once up front.
    if family == PathFamily::DyckPath && n % (m as usize + 1) != 0 {
        return Ok(out);
    }
    let mut cur = Path::with_capacity(m, n);
    descend(m, n, family, &mut cur, 0, &mut out);
    Ok(out)
}

fn descend(m: u32, n: usize, family: PathFamily, cur: &mut Path, h: i64, out: &mut Vec<Path>) {
    if cur.len() == n {
        let keep = match family {
            PathFamily::DyckPrefix => true,
            PathFamily::DyckPath => h == 0,
            PathFamily::Luka => h < 0,
        };
        if keep {
            out.push(cur.clone());
        }
        return;
    }
    let remaining = n - cur.len();
    // Feasibility pruning per family.
    match family {
        PathFamily::DyckPrefix => {}
        // Must be able to come back down to 0: each D drops by at most m.
        PathFamily::DyckPath => {
            if h > i64::from(m) * remaining as i64 {
                return;
            }
        }
        // Must be able to dip below 0 with the last step.
        PathFamily::Luka => {
            if h > i64::from(m) * remaining as i64 - 1 {
                return;
            }
        }
    }
    // 'D' < 'U' in ASCII, so descend Down first for lexicographic output.
    let hd = h - i64::from(m);
    let down_ok = match family {
        PathFamily::DyckPrefix | PathFamily::DyckPath => hd >= 0,
        // Proper prefixes stay ≥ 0; only the final step may dive.
        PathFamily::Luka => {
            if remaining == 1 {
                hd < 0
            } else {
                hd >= 0
            }
        }
    };
    if down_ok {
        cur.push(Step::Down);
        descend(m, n, family, cur, hd, out);
        cur.pop();
    }
    let up_ok = match family {
        PathFamily::Luka => remaining > 1,
        _ => true,
    };
    if up_ok {
        cur.push(Step::Up);
        descend(m, n, family, cur, h + 1, out);
        cur.pop();
    }
}
