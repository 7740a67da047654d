//! Numerics for the limit distribution of the sampler's normalized memory
//! cost.
//!
//! As n grows, the total number of cells rewritten by the sampler's
//! corrective unfolds, divided by n, converges in distribution to a random
//! variable X with cumulants κ_n = 1/(2n(n+1)) — equivalently, X is a sum of
//! jumps of a Poisson point process with intensity (1−x)/(2x)·dx on (0, 1).
//! Its distribution function F:
//!
//! * on [0, 1] has the closed form F(x) = A·sin(√(2x)) with
//!   A = √(2e^(1−γ)/π), γ the Euler–Mascheroni constant;
//! * beyond 1 satisfies the delay differential equation
//!   F(x) + F′(x) + 2x·F″(x) = F(x−1),
//!   which [`solve_f`] integrates with classical fourth-order Runge–Kutta on
//!   a fixed mesh, validating itself by step halving;
//! * decays super-exponentially: ln(1−F(x)) falls faster than linearly, an
//!   invariant [`tail_decay_check`] verifies on a solved table.
//!
//! The full normalized cost (appends + unfolds + the final fold) converges to
//! 1 + X + U with U uniform on [0, 1] and independent of X;
//! [`cost_distribution`] turns a table for F into a table for that law.
//! [`simulate_x`] draws X directly from the truncated jump representation,
//! providing a Monte Carlo cross-check that is independent of the solver.

use crate::bitstream::CountedBitSource;
use crate::Error;
use num::{BigInt, BigRational, One};

/// The Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Amplitude A = √(2e^(1−γ)/π) of the closed form on [0, 1].
pub fn amplitude() -> f64 {
    (2.0 * (1.0 - EULER_GAMMA).exp() / std::f64::consts::PI).sqrt()
}

/// The closed form F(x) = A·sin(√(2x)), valid for 0 ≤ x ≤ 1.
pub fn closed_form(x: f64) -> f64 {
    assert!((0.0..=1.0).contains(&x), "closed form only holds on [0, 1]");
    amplitude() * (2.0 * x).sqrt().sin()
}

/// Density of the closed form: F′(x) = A·cos(s)/s with s = √(2x). Diverges
/// like x^(−1/2) as x → 0.
pub fn closed_form_density(x: f64) -> f64 {
    assert!(x > 0.0 && x <= 1.0);
    let s = (2.0 * x).sqrt();
    amplitude() * s.cos() / s
}

/// The n-th cumulant of X as an exact rational: κ_n = 1/(2n(n+1)).
pub fn cumulant(n: usize) -> BigRational {
    assert!(n >= 1);
    let den = BigInt::from(2u32) * BigInt::from(n) * BigInt::from(n + 1);
    BigRational::new(BigInt::one(), den)
}

/// First `count` cumulants extracted from the cumulant generating function,
/// computed along an independent route: the generating function is
/// K(z) = ∫₀^z (e^y − 1 − y)/(2y²) dy, whose integrand expands as
/// Σ_j y^j/(2(j+2)!); integrating termwise and scaling the z^n coefficient
/// by n! yields κ_n. All arithmetic is exact.
pub fn cumulants_from_generating_function(count: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(count);
    let mut fact_n = BigInt::one(); // n!
    let mut fact_np1 = BigInt::one(); // (n+1)!
    for n in 1..=count {
        fact_n *= BigInt::from(n);
        if n == 1 {
            fact_np1 = BigInt::from(2u32);
        } else {
            fact_np1 *= BigInt::from(n + 1);
        }
        // Integrand coefficient of y^(n-1) is 1/(2(n+1)!); integration
        // divides by n; κ_n multiplies by n!.
        let den = BigInt::from(2u32) * &fact_np1 * BigInt::from(n);
        out.push(BigRational::new(fact_n.clone(), den));
    }
    out
}

/// Cubic Hermite basis evaluation on a unit panel: f0, f1 are endpoint
/// values and g0, g1 endpoint derivatives *scaled by the panel width*.
fn hermite(f0: f64, g0: f64, f1: f64, g1: f64, t: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * f0
        + (t3 - 2.0 * t2 + t) * g0
        + (-2.0 * t3 + 3.0 * t2) * f1
        + (t3 - t2) * g1
}

/// d/dt of [`hermite`] (divide by the panel width for d/dx).
fn hermite_deriv(f0: f64, g0: f64, f1: f64, g1: f64, t: f64) -> f64 {
    let t2 = t * t;
    (6.0 * t2 - 6.0 * t) * f0
        + (3.0 * t2 - 4.0 * t + 1.0) * g0
        + (-6.0 * t2 + 6.0 * t) * f1
        + (3.0 * t2 - 2.0 * t) * g1
}

/// A cumulative distribution function tabulated on a uniform mesh, with the
/// derivative stored alongside so evaluation between mesh points is cubic
/// Hermite (locally C¹, fourth-order accurate).
#[derive(Clone, Debug)]
pub struct DistributionTable {
    dx: f64,
    x_max: f64,
    values: Vec<f64>,
    derivs: Vec<f64>,
    /// When set, [0, 1] is evaluated through the exact closed form instead
    /// of interpolation (the mesh there stores closed-form samples anyway).
    head_closed_form: bool,
}

impl DistributionTable {
    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    /// Mesh values (index i holds the cdf at i·dx).
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The cdf at x: 0 below the support, the last mesh value at and beyond
    /// x_max, exact closed form on [0, 1] for head tables, cubic Hermite in
    /// between.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if self.head_closed_form && x <= 1.0 {
            return closed_form(x);
        }
        if x >= self.x_max {
            return *self.values.last().expect("table is never empty");
        }
        let pos = x / self.dx;
        let i = (pos.floor() as usize).min(self.values.len() - 2);
        let t = pos - i as f64;
        hermite(
            self.values[i],
            self.derivs[i] * self.dx,
            self.values[i + 1],
            self.derivs[i + 1] * self.dx,
            t,
        )
    }

    /// The density at x (derivative of [`eval`]); 0 outside the support.
    pub fn density(&self, x: f64) -> f64 {
        if x <= 0.0 || x >= self.x_max {
            return 0.0;
        }
        if self.head_closed_form && x <= 1.0 {
            return closed_form_density(x);
        }
        let pos = x / self.dx;
        let i = (pos.floor() as usize).min(self.values.len() - 2);
        let t = pos - i as f64;
        hermite_deriv(
            self.values[i],
            self.derivs[i] * self.dx,
            self.values[i + 1],
            self.derivs[i + 1] * self.dx,
            t,
        ) / self.dx
    }

    /// ∫₀^{x_max} cdf(x) dx: analytic over the closed-form head (where the
    /// derivative is unbounded), derivative-corrected trapezoid elsewhere.
    fn integral_of_cdf(&self) -> f64 {
        let h = self.dx;
        let mut total = 0.0;
        let start = if self.head_closed_form {
            let s = std::f64::consts::SQRT_2;
            total += amplitude() * (s.sin() - s * s.cos());
            (1.0 / h).round() as usize
        } else {
            0
        };
        for i in start..self.values.len() - 1 {
            total += h * (self.values[i] + self.values[i + 1]) / 2.0
                + h * h * (self.derivs[i] - self.derivs[i + 1]) / 12.0;
        }
        total
    }

    /// ∫₀^{x_max} x·cdf(x) dx, same scheme as [`integral_of_cdf`].
    fn integral_of_x_times_cdf(&self) -> f64 {
        let h = self.dx;
        let mut total = 0.0;
        let start = if self.head_closed_form {
            // ∫₀¹ x·A·sin(√(2x)) dx = 2√2·A·cos(√2) by the substitution
            // s = √(2x) and two integrations by parts.
            let s = std::f64::consts::SQRT_2;
            total += 2.0 * s * amplitude() * s.cos();
            (1.0 / h).round() as usize
        } else {
            0
        };
        for i in start..self.values.len() - 1 {
            let x0 = i as f64 * h;
            let x1 = (i + 1) as f64 * h;
            let g0 = x0 * self.values[i];
            let g1 = x1 * self.values[i + 1];
            let d0 = self.values[i] + x0 * self.derivs[i];
            let d1 = self.values[i + 1] + x1 * self.derivs[i + 1];
            total += h * (g0 + g1) / 2.0 + h * h * (d0 - d1) / 12.0;
        }
        total
    }

    /// Mean of the tabulated distribution, via E = x_max − ∫ cdf (the mass
    /// beyond x_max is negligible for the tables this crate builds).
    pub fn mean(&self) -> f64 {
        self.x_max - self.integral_of_cdf()
    }

    /// Second moment E[X²] = x_max² − 2·∫ x·cdf(x) dx.
    pub fn second_moment(&self) -> f64 {
        self.x_max * self.x_max - 2.0 * self.integral_of_x_times_cdf()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.second_moment() - m * m
    }
}

/// Hard cap on the requested mesh size (panels), keeping memory bounded.
const MAX_PANELS: usize = 2_000_000;
/// Step-halving acceptance tolerance for the solver.
const SOLVER_TOLERANCE: f64 = 1e-8;

/// Solve the delay differential equation for F on [0, x_max].
///
/// `x_max` must be an integer in 2..=64 and `dx` the reciprocal of an
/// integer, within [1e-6, 1e-3], with x_max/dx at most 2·10⁶ panels. The
/// head [0, 1] is filled with the exact closed form; each following unit
/// interval is integrated with fixed-step fourth-order Runge–Kutta, reading
/// the delayed term from the already-computed mesh (exactly at whole steps,
/// by cubic Hermite at half steps). The integration is run again at half
/// the step and the two solutions must agree within 1e-8 at every shared
/// mesh point, otherwise [`Error::SolverTolerance`] is returned; the finer
/// solution, sampled on the requested mesh, is what the table keeps.
pub fn solve_f(x_max: f64, dx: f64) -> Result<DistributionTable, Error> {
    if !x_max.is_finite() || !dx.is_finite() || dx <= 0.0 {
        return Err(Error::BadSolverParams(format!(
            "x_max = {x_max}, dx = {dx} are not usable"
        )));
    }
    let units = x_max.round();
    if (x_max - units).abs() > 1e-9 || !(2.0..=64.0).contains(&units) {
        return Err(Error::BadSolverParams(format!(
            "x_max must be an integer in 2..=64, got {x_max}"
        )));
    }
    if !(1e-6..=1.000_000_1e-3).contains(&dx) {
        return Err(Error::BadSolverParams(format!(
            "dx must lie in [1e-6, 1e-3], got {dx}"
        )));
    }
    let spu_f = (1.0 / dx).round();
    if (1.0 / dx - spu_f).abs() > 1e-6 {
        return Err(Error::BadSolverParams(format!(
            "1/dx must be an integer number of steps per unit, got {}",
            1.0 / dx
        )));
    }
    let spu = spu_f as usize;
    let units = units as usize;
    if units * spu > MAX_PANELS {
        return Err(Error::BadSolverParams(format!(
            "mesh of {} panels exceeds the {MAX_PANELS} limit",
            units * spu
        )));
    }

    let (coarse, _) = integrate_delay_ode(spu, units);
    let (fine_v, fine_d) = integrate_delay_ode(2 * spu, units);
    let mut worst_x = 0.0;
    let mut worst_diff = 0.0f64;
    for (i, &v) in coarse.iter().enumerate() {
        let d = (v - fine_v[2 * i]).abs();
        if d > worst_diff {
            worst_diff = d;
            worst_x = i as f64 / spu as f64;
        }
    }
    if worst_diff > SOLVER_TOLERANCE {
        return Err(Error::SolverTolerance {
            x: worst_x,
            estimate: worst_diff,
            tolerance: SOLVER_TOLERANCE,
        });
    }
    let values: Vec<f64> = (0..=units * spu).map(|i| fine_v[2 * i]).collect();
    let derivs: Vec<f64> = (0..=units * spu).map(|i| fine_d[2 * i]).collect();
    Ok(DistributionTable {
        dx: 1.0 / spu as f64,
        x_max: units as f64,
        values,
        derivs,
        head_closed_form: true,
    })
}

/// Substep factor for the first integrated unit interval [1, 2]. The forcing
/// F(x−1) ~ A·√(2(x−1)) just past x = 1 costs the fourth-order scheme two
/// orders in that layer (error ~ step^{3/2}); substepping shrinks the layer
/// error by 32^{3/2} ≈ 181, pushing it far below [`SOLVER_TOLERANCE`] for
/// every permitted mesh. The delayed term on [1, 2] is the closed form, so
/// the substeps need no interpolation.
const LAYER_SUBSTEPS: usize = 32;

/// Fixed-step integration of F + F′ + 2xF″ = F(x−1) at `spu` steps per unit
/// interval, closed form on [0, 1]. Returns mesh values and derivatives.
fn integrate_delay_ode(spu: usize, units: usize) -> (Vec<f64>, Vec<f64>) {
    let h = 1.0 / spu as f64;
    let total = units * spu;
    let mut f = vec![0.0f64; total + 1];
    let mut fp = vec![0.0f64; total + 1];
    for i in 0..=spu {
        let x = i as f64 / spu as f64;
        f[i] = closed_form(x);
        fp[i] = if i == 0 {
            f64::INFINITY
        } else {
            closed_form_density(x)
        };
    }
    let accel = |x: f64, y: f64, v: f64, d: f64| (d - y - v) / (2.0 * x);
    // One RK4 step of size `step` from (x0, y, v), given the delayed values
    // d0, dm, d1 at x0, x0 + step/2, x0 + step.
    let rk4 = |x0: f64, step: f64, y: f64, v: f64, d0: f64, dm: f64, d1: f64| {
        let xm = x0 + 0.5 * step;
        let x1 = x0 + step;
        let k1y = v;
        let k1v = accel(x0, y, v, d0);
        let k2y = v + 0.5 * step * k1v;
        let k2v = accel(xm, y + 0.5 * step * k1y, v + 0.5 * step * k1v, dm);
        let k3y = v + 0.5 * step * k2v;
        let k3v = accel(xm, y + 0.5 * step * k2y, v + 0.5 * step * k2v, dm);
        let k4y = v + step * k3v;
        let k4v = accel(x1, y + step * k3y, v + step * k3v, d1);
        (
            y + step * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0,
            v + step * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0,
        )
    };
    // Unit [1, 2]: substepped panels through the singular layer, the delayed
    // term evaluated exactly.
    let hs = 1.0 / (spu * LAYER_SUBSTEPS) as f64;
    for i in spu..(2 * spu).min(total) {
        let mut y = f[i];
        let mut v = fp[i];
        for s in 0..LAYER_SUBSTEPS {
            let fine = (i - spu) * LAYER_SUBSTEPS + s;
            let u0 = fine as f64 * hs; // delay argument x − 1, exactly
            let (ny, nv) = rk4(
                1.0 + u0,
                hs,
                y,
                v,
                closed_form(u0),
                closed_form(u0 + 0.5 * hs),
                closed_form((fine + 1) as f64 * hs),
            );
            y = ny;
            v = nv;
        }
        f[i + 1] = y;
        fp[i + 1] = v;
    }
    // Units beyond 2: whole panels. The delayed term F(x−1) at the
    // double-resolution index di2 (the point di2·h/2): exact closed form
    // while x−1 ≤ 1, mesh value at whole steps, cubic Hermite at half steps.
    let delay = |f: &[f64], fp: &[f64], di2: usize| -> f64 {
        if di2 <= 2 * spu {
            closed_form(di2 as f64 / (2 * spu) as f64)
        } else if di2 % 2 == 0 {
            f[di2 / 2]
        } else {
            let k = di2 / 2;
            hermite(f[k], fp[k] * h, f[k + 1], fp[k + 1] * h, 0.5)
        }
    };
    for i in 2 * spu..total {
        let x0 = i as f64 / spu as f64;
        let d0 = delay(&f, &fp, 2 * (i - spu));
        let dm = delay(&f, &fp, 2 * (i - spu) + 1);
        let d1 = delay(&f, &fp, 2 * (i + 1 - spu));
        let (ny, nv) = rk4(x0, h, f[i], fp[i], d0, dm, d1);
        f[i + 1] = ny;
        fp[i + 1] = nv;
    }
    (f, fp)
}

/// Build the distribution table of the full normalized cost 1 + X + U from
/// a solved table for X: its cdf is G(y) = I(y−1) − I(y−2) with I the
/// running integral of F, and its density is F(y−1) − F(y−2). The returned
/// table spans [0, x_max + 2]; beyond the input's range F is taken as 1,
/// which is accurate to the solver's own tail error.
pub fn cost_distribution(f: &DistributionTable) -> DistributionTable {
    assert!(
        f.head_closed_form,
        "expects a table produced by solve_f, not a derived law"
    );
    let spu = (1.0 / f.dx).round() as usize;
    let n = f.values.len() - 1;
    let h = f.dx;
    // Running integral of F on the same mesh: analytic over the head
    // (∫₀^x A sin √(2t) dt = A(sin s − s·cos s), s = √(2x)), corrected
    // trapezoid afterwards.
    let mut cum = vec![0.0f64; n + 1];
    for (i, c) in cum.iter_mut().enumerate().take(spu + 1) {
        let s = (2.0 * (i as f64 / spu as f64)).sqrt();
        *c = amplitude() * (s.sin() - s * s.cos());
    }
    for i in spu..n {
        cum[i + 1] = cum[i]
            + h * (f.values[i] + f.values[i + 1]) / 2.0
            + h * h * (f.derivs[i] - f.derivs[i + 1]) / 12.0;
    }
    let i_end = cum[n];
    let i_ext = |idx: isize| -> f64 {
        if idx <= 0 {
            0.0
        } else if (idx as usize) <= n {
            cum[idx as usize]
        } else {
            i_end + (idx as usize - n) as f64 * h
        }
    };
    let f_ext = |idx: isize| -> f64 {
        if idx <= 0 {
            0.0
        } else if (idx as usize) <= n {
            f.values[idx as usize]
        } else {
            1.0
        }
    };
    let total = n + 2 * spu;
    let mut values = vec![0.0f64; total + 1];
    let mut derivs = vec![0.0f64; total + 1];
    for k in 0..=total {
        let k_i = k as isize;
        values[k] = i_ext(k_i - spu as isize) - i_ext(k_i - 2 * spu as isize);
        derivs[k] = f_ext(k_i - spu as isize) - f_ext(k_i - 2 * spu as isize);
    }
    DistributionTable {
        dx: h,
        x_max: f.x_max + 2.0,
        values,
        derivs,
        head_closed_form: false,
    }
}

/// Draw X from its jump representation, truncated at jump size `eps`:
/// jumps arrive as a Poisson(½·ln(1/eps)) number of sizes eps^V (V uniform),
/// each contributing size·U′ with an independent uniform mark U′. The
/// truncation biases the mean down by less than eps/4.
pub fn simulate_x(src: &mut CountedBitSource, eps: f64) -> f64 {
    assert!(eps > 0.0 && eps < 0.5, "eps must be a small positive cutoff");
    let lambda = 0.5 * (1.0 / eps).ln();
    let floor = (-lambda).exp();
    let mut jumps = 0usize;
    let mut product = 1.0f64;
    loop {
        product *= src.next_f64();
        if product <= floor {
            break;
        }
        jumps += 1;
    }
    let mut x = 0.0;
    for _ in 0..jumps {
        let size = eps.powf(src.next_f64());
        x += size * src.next_f64();
    }
    x
}

/// Verify the super-exponential tail decay of a solved table for F.
///
/// Let x* be the last mesh point whose survival probability 1−F still
/// exceeds the 1e-9 solver noise floor. The check samples ln(1−F) at the
/// integers 2..=⌊x*⌋ (requiring at least 2, 3, 4 to be present) and demands:
/// the survival probabilities strictly decrease; the unit-interval slopes of
/// ln(1−F) strictly steepen (decay faster than any single exponential); and
/// at the last sampled point ln(1−F)/(x·ln x) ≤ −1/2, i.e. the decay has at
/// least half the x·ln(x) rate it approaches asymptotically.
pub fn tail_decay_check(f: &DistributionTable) -> bool {
    assert!(f.head_closed_form, "expects a table produced by solve_f");
    const NOISE_FLOOR: f64 = 1e-9;
    let mut x_star = None;
    for (i, &v) in f.values.iter().enumerate().rev() {
        if 1.0 - v > NOISE_FLOOR {
            x_star = Some(i as f64 * f.dx);
            break;
        }
    }
    let Some(x_star) = x_star else {
        return false;
    };
    let top = x_star.floor() as usize;
    if top < 4 {
        return false; // not enough range to judge steepening
    }
    let mut log_survival = Vec::with_capacity(top - 1);
    for k in 2..=top {
        let s = 1.0 - f.eval(k as f64);
        if s <= 0.0 {
            return false;
        }
        log_survival.push(s.ln());
    }
    for w in log_survival.windows(2) {
        if w[1] >= w[0] {
            return false;
        }
    }
    let slopes: Vec<f64> = log_survival.windows(2).map(|w| w[1] - w[0]).collect();
    for w in slopes.windows(2) {
        if w[1] >= w[0] {
            return false;
        }
    }
    let x_end = top as f64;
    log_survival.last().unwrap() / (x_end * x_end.ln()) <= -0.5
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{ks_distance, StreamingMoments};

    #[test]
    fn cumulant_closed_form_values() {
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4u32));
        let twelfth = BigRational::new(BigInt::one(), BigInt::from(12u32));
        let twenty_fourth = BigRational::new(BigInt::one(), BigInt::from(24u32));
        assert_eq!(cumulant(1), quarter);
        assert_eq!(cumulant(2), twelfth);
        assert_eq!(cumulant(3), twenty_fourth);
    }

    #[test]
    fn cumulant_routes_agree_exactly() {
        let series = cumulants_from_generating_function(12);
        for (i, kappa) in series.iter().enumerate() {
            assert_eq!(kappa, &cumulant(i + 1), "cumulant {} disagrees", i + 1);
        }
    }

    /// Reference values computed independently at high precision.
    #[test]
    fn closed_form_reference_values() {
        assert!((amplitude() - 0.985_703_987_376_736_72).abs() < 1e-12);
        let cases = [
            (0.25, 0.640_349_721_198_435_75),
            (0.5, 0.829_441_304_986_973_04),
            (0.75, 0.927_270_798_271_328_61),
            (1.0, 0.973_644_831_559_993_79),
        ];
        for (x, want) in cases {
            assert!(
                (closed_form(x) - want).abs() < 1e-12,
                "closed form at {x} off: {} vs {want}",
                closed_form(x)
            );
        }
        assert!((closed_form_density(1.0) - 0.108_692_439_265_363_06).abs() < 1e-12);
    }

    /// On (0, 1) the forcing term vanishes, so the closed form must satisfy
    /// F + F′ + 2xF″ = 0; verified through finite differences.
    #[test]
    fn closed_form_satisfies_the_homogeneous_equation() {
        let h = 1e-4;
        for k in 1..=9 {
            let x = k as f64 / 10.0;
            let f = closed_form(x);
            let fp = closed_form_density(x);
            let fpp = (closed_form(x + h) - 2.0 * f + closed_form(x - h)) / (h * h);
            let residual = f + fp + 2.0 * x * fpp;
            assert!(residual.abs() < 1e-6, "residual {residual} at x = {x}");
        }
    }

    #[test]
    fn solver_matches_independent_integration() {
        // Frozen values from an adaptive high-order integration of the same
        // delay equation (independent integrator, tolerance 1e-13).
        let f = solve_f(4.0, 1e-4).unwrap();
        let cases = [
            (1.5, 0.996_809_954_829_292),
            (2.0, 0.999_693_141_425_841),
            (2.5, 0.999_974_447_728_307),
            (3.0, 0.999_998_127_111_278),
            (3.5, 0.999_999_877_053_925),
            (4.0, 0.999_999_992_633_191),
        ];
        for (x, want) in cases {
            let got = f.eval(x);
            assert!(
                (got - want).abs() < 1e-6,
                "F({x}) = {got}, reference {want}"
            );
        }
    }

    #[test]
    fn solver_head_is_the_closed_form() {
        let f = solve_f(2.0, 1e-4).unwrap();
        for x in [0.1, 0.31, 0.5, 0.99] {
            assert_eq!(f.eval(x), closed_form(x));
        }
    }

    #[test]
    fn solver_table_is_monotone_and_continuous_at_joins() {
        let f = solve_f(4.0, 1e-4).unwrap();
        for w in f.values().windows(2) {
            assert!(w[1] >= w[0] - 1e-12, "table must be nondecreasing");
        }
        for join in [1.0f64, 2.0, 3.0] {
            let below = f.eval(join - 1e-9);
            let above = f.eval(join + 1e-9);
            assert!((below - above).abs() < 1e-8, "jump at {join}");
            let d_below = f.density(join - 1e-9);
            let d_above = f.density(join + 1e-9);
            assert!(
                (d_below - d_above).abs() < 1e-6,
                "derivative jump at {join}: {d_below} vs {d_above}"
            );
        }
    }

    #[test]
    fn solver_moments_match_cumulants() {
        let f = solve_f(6.0, 1e-4).unwrap();
        assert!((f.mean() - 0.25).abs() < 1e-6, "mean {}", f.mean());
        assert!(
            (f.variance() - 1.0 / 12.0).abs() < 1e-5,
            "variance {}",
            f.variance()
        );
    }

    #[test]
    fn solver_rejects_bad_parameters() {
        assert!(matches!(
            solve_f(1.5, 1e-4),
            Err(Error::BadSolverParams(_))
        ));
        assert!(matches!(
            solve_f(100.0, 1e-4),
            Err(Error::BadSolverParams(_))
        ));
        assert!(matches!(
            solve_f(4.0, 3e-4),
            Err(Error::BadSolverParams(_))
        ));
        assert!(matches!(
            solve_f(4.0, 1e-2),
            Err(Error::BadSolverParams(_))
        ));
        assert!(matches!(
            solve_f(4.0, 1e-7),
            Err(Error::BadSolverParams(_))
        ));
        assert!(matches!(
            solve_f(64.0, 1e-6),
            Err(Error::BadSolverParams(_))
        ));
    }

    #[test]
    fn survival_probabilities_and_tail_shape() {
        let f = solve_f(6.0, 1e-4).unwrap();
        let s3 = 1.0 - f.eval(3.0);
        assert!((1.5e-6..2.5e-6).contains(&s3), "1 - F(3) = {s3}");
        assert!(tail_decay_check(&f));
    }

    #[test]
    fn cost_law_reference_properties() {
        let f = solve_f(6.0, 1e-4).unwrap();
        let g = cost_distribution(&f);
        assert_eq!(g.x_max(), 8.0);
        assert_eq!(g.eval(0.5), 0.0);
        assert!(g.eval(1.0).abs() < 1e-12, "G(1) = {}", g.eval(1.0));
        assert!((g.eval(8.0) - 1.0).abs() < 1e-9);
        for w in g.values().windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
        assert!((g.mean() - 1.75).abs() < 1e-6, "mean {}", g.mean());
        assert!(
            (g.variance() - 1.0 / 6.0).abs() < 1e-5,
            "variance {}",
            g.variance()
        );
        // Density of 1 + X + U at y is F(y−1) − F(y−2).
        let want = closed_form(0.5);
        assert!((g.density(1.5) - want).abs() < 1e-9);
    }

    #[test]
    fn simulation_matches_the_solved_law() {
        let f = solve_f(6.0, 1e-4).unwrap();
        let mut src = CountedBitSource::from_seed(424242);
        let n = 20_000;
        let mut draws = Vec::with_capacity(n);
        let mut moments = StreamingMoments::new();
        for _ in 0..n {
            let x = simulate_x(&mut src, 1e-6);
            assert!(x >= 0.0);
            draws.push(x);
            moments.push(x);
        }
        assert!(
            (moments.mean() - 0.25).abs() < 0.008,
            "mean {}",
            moments.mean()
        );
        assert!(
            (moments.sample_variance() - 1.0 / 12.0).abs() < 0.01,
            "variance {}",
            moments.sample_variance()
        );
        draws.sort_by(f64::total_cmp);
        let d = ks_distance(&draws, |x| f.eval(x));
        assert!(d < 0.02, "KS distance {d} too large");
    }
}
