//! All complex roots of an integer polynomial with per-root error radii.
//!
//! The solve runs simultaneous (Aberth–Ehrlich) iteration from a
//! perturbed-circle initialization in `f64`, polishes in double-double, and
//! escalates to fixed-point big-float arithmetic when the coefficient
//! profile makes lower precision evaluation-limited (high-degree Chebyshev
//! polynomials need working precision proportional to the degree).
//!
//! Every reported radius is `n |p(z)/p'(z)|` with the evaluation rounding
//! floor added in, so a radius is an honest inclusion estimate at whatever
//! precision produced it. For the real (integer) coefficients handled here
//! the returned multiset is exactly closed under conjugation.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dd::{Cdd, Dd};
use crate::extprec::{FixedComplex, FixedReal};
use crate::intpoly::{log2_abs, pow2, IntPolynomial};
use crate::{Error, Result};

pub const DEFAULT_TARGET_RADIUS: f64 = 1e-10;

const SWEEP_CAP: usize = 200;
const SIMPLE_ZERO_CHECK_CUTOFF: usize = 500;
const MAX_STAGE_BITS: u32 = 8192;
const F64_EPS: f64 = 2.220446049250313e-16;
const DD_EPS: f64 = 2.5e-32;

/// Validated root approximations: one root and one error radius per zero of
/// the source polynomial, sorted by (real, imaginary) ascending.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub radii: Vec<f64>,
    pub source_degree: usize,
}

impl RootSet {
    pub fn mean_radius(&self) -> f64 {
        if self.radii.is_empty() {
            return 0.0;
        }
        self.radii.iter().sum::<f64>() / self.radii.len() as f64
    }

    pub fn max_radius(&self) -> f64 {
        self.radii.iter().cloned().fold(0.0, f64::max)
    }
}

/// Find all roots with the default deterministic seed.
pub fn find_roots(p: &IntPolynomial, target_radius: f64) -> Result<RootSet> {
    find_roots_seeded(p, target_radius, 0x0051_f0c5)
}

/// Find all roots; the seed only jitters the initial configuration, so a
/// fixed seed gives byte-identical results.
pub fn find_roots_seeded(p: &IntPolynomial, target_radius: f64, seed: u64) -> Result<RootSet> {
    let n = p.degree_at_least(1)?;
    if n <= SIMPLE_ZERO_CHECK_CUTOFF && !p.has_simple_zeros()? {
        return Err(Error::MultipleZeros);
    }
    let sc = ScaledPoly::new(p);
    let dd_coeffs = sc.dd_coeffs();

    if n == 1 {
        let root = Complex64::new(-sc.cf[0] / sc.cf[1], 0.0);
        let radius = residual_radius_dd(&sc, &dd_coeffs, Cdd::from_c64(root)).0;
        return Ok(RootSet { roots: vec![root], radii: vec![radius], source_degree: 1 });
    }

    let dbg = std::env::var("EQUIDIST_DEBUG_ROOTS").is_ok();
    let mut bits: u32 = 224;
    let mut fixed: Vec<FixedComplex> = initial_guesses(&sc, seed)
        .into_iter()
        .map(|z| FixedComplex::from_c64(z, bits))
        .collect();
    loop {
        let t = std::time::Instant::now();
        let tiers = FixedTiers::build(&sc, bits);
        let coeffs = &tiers.tables.last().expect("at least one tier").1.clone();
        aberth_pass(&sc, &dd_coeffs, &tiers, bits, target_radius, &mut fixed);
        symmetrize_fixed(&sc, coeffs, bits, &mut fixed);
        let radii: Vec<f64> =
            fixed.iter().map(|z| residual_radius_fixed(&sc, &coeffs, bits, z).0).collect();
        if dbg {
            let unmet = radii.iter().filter(|&&r| r > target_radius).count();
            eprintln!("[roots] pass bits={bits} {:?}, radii unmet {unmet}/{n}", t.elapsed());
        }
        if radii.iter().all(|&r| r <= target_radius) {
            return Ok(finish(fixed.iter().map(|z| z.to_c64()).collect(), radii, n));
        }
        if bits >= MAX_STAGE_BITS {
            let worst = radii.iter().cloned().fold(0.0, f64::max);
            return Err(Error::NonConvergence { worst_residual: worst, degree: n });
        }
        let view: Vec<Complex64> = fixed.iter().map(|z| z.to_c64()).collect();
        let est = estimate_required_bits(&sc, &view, target_radius, bits);
        let new_bits = est.max(bits * 2).min(MAX_STAGE_BITS);
        fixed = fixed.iter().map(|z| z.with_bits(new_bits)).collect();
        bits = new_bits;
    }
}

/// Newton ratio p/p' at the cheapest precision tier that can certify its own
/// accuracy at this point. The fixed tier also reports when the value has
/// hit the evaluation-noise floor for the pass precision.
enum NewtonRatio {
    /// ratio accurate enough for an iteration step, in plain f64
    Low(Complex64),
    /// full-precision ratio
    Full(FixedComplex),
    /// |p(z)| is below the pass evaluation noise: converged at this
    /// precision, with the achievable inclusion radius it implies
    FloorFrozen { radius: f64 },
    /// derivative indistinguishable from zero
    CriticalPoint,
}

/// Coefficient tables at a geometric ladder of fixed precisions up to the
/// pass precision; far-field iteration steps certify themselves at a cheap
/// tier and only the endgame pays full price.
struct FixedTiers {
    tables: Vec<(u32, Vec<FixedComplex>)>,
}

impl FixedTiers {
    fn build(sc: &ScaledPoly, bits: u32) -> FixedTiers {
        // A single table at the pass precision. Intermediate precisions were
        // tried for the far-field phase and destabilize the outside-in peel:
        // iterates descending at uneven rates end up trapped between claimed
        // zeros. The f64 and double-double tiers already cover the cheap
        // far-field work.
        FixedTiers { tables: vec![(bits, sc.fixed_coeffs(bits))] }
    }
}

fn newton_ratio_adaptive(
    sc: &ScaledPoly,
    dd_coeffs: &[Cdd],
    tiers: &FixedTiers,
    bits: u32,
    z: &FixedComplex,
    z64: Complex64,
) -> NewtonRatio {
    let n = sc.n as f64;
    // f64 tier: usable while p dominates both the Horner noise and the
    // error from evaluating at the rounded point
    let ev = eval_f64(sc, z64);
    let pn = ev.p.norm();
    let dpn = ev.dp.norm();
    if pn.is_finite() && dpn.is_finite() && dpn > 0.0 {
        let horner_noise = 2.0 * n * F64_EPS * ev.abs;
        let point_noise = dpn * z64.norm() * F64_EPS;
        if pn > 64.0 * horner_noise && pn > 64.0 * point_noise && dpn > 64.0 * 2.0 * n * F64_EPS * ev.dabs {
            let w = safe_cdiv(ev.p, ev.dp);
            if sane(w) {
                return NewtonRatio::Low(w);
            }
        }
    }
    // double-double tier
    let zdd = fixed_to_cdd(z);
    let ev = eval_dd(dd_coeffs, &sc.af, zdd);
    let pn = ev.p.to_c64().norm();
    let dpn = ev.dp.to_c64().norm();
    if pn.is_finite() && dpn.is_finite() && dpn > 0.0 {
        let horner_noise = 2.0 * n * DD_EPS * ev.abs;
        let point_noise = dpn * z64.norm() * DD_EPS;
        if pn > 64.0 * horner_noise && pn > 64.0 * point_noise && dpn > 64.0 * 2.0 * n * DD_EPS * ev.dabs {
            let s = Dd::from_f64(pow2(-(dpn.log2().round() as i64)));
            let pr = Cdd::new(ev.p.re.mul(s), ev.p.im.mul(s));
            let dpr = Cdd::new(ev.dp.re.mul(s), ev.dp.im.mul(s));
            let w = pr.div(dpr).to_c64();
            if sane(w) {
                return NewtonRatio::Low(w);
            }
        }
    }
    // fixed-point tiers, cheapest adequate one wins
    for (tb, table) in &tiers.tables {
        let tb = *tb;
        let top = tb == bits;
        let zt = if top { z.clone() } else { z.with_bits(tb) };
        let ev = eval_fixed(table, &sc.af, tb, &zt);
        let eps_t = pow2(-(tb as i64));
        let noise = 2.0 * n * eps_t;
        let pn = ev.p.to_c64().norm();
        let dpn = ev.dp.to_c64().norm();
        if !top {
            // A lower tier may only certify a far-field step: it must prove
            // its own noise margins and the step must be macroscopic. The
            // endgame always runs at the top tier, whose floor and critical
            // checks are the only authority.
            const MARGIN: f64 = 16384.0;
            if pn.is_finite()
                && dpn.is_finite()
                && dpn > pow2(-((tb / 2) as i64) + 2)
                && ev.abs.is_finite()
                && ev.dabs.is_finite()
                && pn > MARGIN * noise * ev.abs
                && pn > MARGIN * dpn * z64.norm() * eps_t
                && dpn > MARGIN * 2.0 * noise * ev.dabs
            {
                let w = ev.p.div(&ev.dp);
                if w.to_c64().norm() > 1e-6 * (1.0 + z64.norm()) {
                    return NewtonRatio::Full(w);
                }
            }
            continue;
        }
        if pn.is_finite() && ev.abs.is_finite() && pn <= noise * ev.abs {
            let e_p = noise * ev.abs;
            let e_dp = noise * ev.dabs;
            let radius = if dpn.is_finite() && e_dp.is_finite() && dpn > 2.0 * e_dp {
                n * (pn + e_p) / (dpn - e_dp)
            } else {
                f64::INFINITY
            };
            return NewtonRatio::FloorFrozen { radius };
        }
        if ev.dp.is_zero() {
            return NewtonRatio::CriticalPoint;
        }
        if dpn.is_finite() {
            if dpn < pow2(-((tb / 2) as i64) + 2) {
                return NewtonRatio::CriticalPoint;
            }
            if ev.dabs.is_finite() && dpn <= 2.0 * noise * ev.dabs {
                return NewtonRatio::CriticalPoint;
            }
        }
        // the fixed-point quotient itself is exact arithmetic at any magnitude
        return NewtonRatio::Full(ev.p.div(&ev.dp));
    }
    unreachable!("top tier always decides")
}

fn fixed_to_cdd(z: &FixedComplex) -> Cdd {
    let re_hi = z.re.to_f64();
    let im_hi = z.im.to_f64();
    let bits = z.re.bits;
    let re_lo = z.re.sub(&FixedReal::from_f64(re_hi, bits)).to_f64();
    let im_lo = z.im.sub(&FixedReal::from_f64(im_hi, bits)).to_f64();
    Cdd::new(Dd::from_parts(re_hi, re_lo), Dd::from_parts(im_hi, im_lo))
}

/// Far from the spectrum the simultaneous iteration contracts every iterate
/// by the same factor of roughly `1 - 2/n` per sweep, so reaching the roots
/// from the enclosing circle costs O(n log) sweeps. When a sweep shows that
/// uniform signature, replay it as a single jump worth 31 extra sweeps; any
/// overshoot is modest and the regular iteration recovers locally.
fn warp_contraction(
    n: usize,
    frozen: &[bool],
    before: &[f64],
    roots: &mut [FixedComplex],
    view: &mut [Complex64],
    bits: u32,
) {
    let mut ratios: Vec<f64> = Vec::new();
    for k in 0..n {
        if frozen[k] || before[k] == 0.0 {
            continue;
        }
        ratios.push(view[k].norm() / before[k]);
    }
    if ratios.len() < 16 || ratios.len() < n / 2 {
        return;
    }
    ratios.sort_by(f64::total_cmp);
    let med = ratios[ratios.len() / 2];
    let nf = n as f64;
    if !(med < 1.0 - 0.25 / nf && med > 1.0 - 8.0 / nf) {
        return;
    }
    let spread_ok = {
        let lo = ratios[ratios.len() / 10];
        let hi = ratios[ratios.len() - 1 - ratios.len() / 10];
        hi < 1.0 && (hi - lo) <= 2.0 * (1.0 - med)
    };
    if !spread_ok {
        return;
    }
    let factor = med.powi(31);
    let f = FixedReal::from_f64(factor, bits);
    for k in 0..n {
        if frozen[k] {
            continue;
        }
        roots[k] = FixedComplex { re: roots[k].re.mul(&f), im: roots[k].im.mul(&f) };
        view[k] = roots[k].to_c64();
    }
}

/// One simultaneous-iteration pass at the given precision. Newton ratios are
/// evaluated at the cheapest adequate tier, so early sweeps run at f64 cost
/// and only the per-root endgame pays for full precision.
fn aberth_pass(
    sc: &ScaledPoly,
    dd_coeffs: &[Cdd],
    tiers: &FixedTiers,
    bits: u32,
    target_radius: f64,
    roots: &mut Vec<FixedComplex>,
) {
    let n = sc.n;
    let eps_b = pow2(-(bits as i64));
    // a gated-accuracy step this small leaves the remaining error far below
    // the target; the end-of-pass radius check is the arbiter anyway
    let settle = target_radius / 8.0;
    let mut frozen = vec![false; n];
    let mut stagnant = 0u32;
    let mut hopeless = 0usize;
    let mut view: Vec<Complex64> = roots.iter().map(|z| z.to_c64()).collect();
    for sweep in 0..SWEEP_CAP {
        let mut productive = 0usize;
        let before: Vec<f64> = view.iter().map(|z| z.norm()).collect();
        for k in 0..n {
            if frozen[k] {
                continue;
            }
            let ratio = newton_ratio_adaptive(sc, dd_coeffs, tiers, bits, &roots[k], view[k]);
            let s = repulsion(&view, k);
            let step_norm;
            match ratio {
                NewtonRatio::FloorFrozen { radius } => {
                    frozen[k] = true;
                    if radius > target_radius {
                        hopeless += 1;
                    }
                    continue;
                }
                NewtonRatio::CriticalPoint => {
                    roots[k] = FixedComplex::from_c64(nudge(view[k], k), bits);
                    view[k] = roots[k].to_c64();
                    continue;
                }
                NewtonRatio::Low(w) => {
                    let delta = aberth_delta64(w, s);
                    let cand = view[k] - delta;
                    if !sane(cand) {
                        roots[k] = FixedComplex::from_c64(nudge(view[k], k), bits);
                        view[k] = roots[k].to_c64();
                        continue;
                    }
                    roots[k] = roots[k].sub(&FixedComplex::from_c64(delta, bits));
                    view[k] = roots[k].to_c64();
                    step_norm = delta.norm();
                }
                NewtonRatio::Full(w) => {
                    let wb = w.re.bits;
                    let w64 = w.to_c64();
                    let denom = Complex64::new(1.0, 0.0) - w64 * s;
                    let delta = if sane(denom) && denom.norm() > 1e-12 && sane(denom.finv()) {
                        w.mul(&FixedComplex::from_c64(denom.finv(), wb))
                    } else {
                        w
                    };
                    roots[k] = roots[k].sub(&delta.with_bits(bits));
                    view[k] = roots[k].to_c64();
                    step_norm = delta.to_c64().norm();
                }
            }
            if step_norm > settle.max(4.0 * eps_b * (1.0 + view[k].norm())) {
                productive += 1;
            } else {
                frozen[k] = true;
            }
        }
        if std::env::var("EQUIDIST_TRACE_SWEEP").is_ok() {
            let frozen_ct = frozen.iter().filter(|&&f| f).count();
            let rmax = view.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
            eprintln!("  sweep {sweep}: productive {productive} frozen {frozen_ct} rmax {rmax:.3}");
        }
        if productive == 0 {
            stagnant += 1;
            if stagnant >= 2 {
                break;
            }
        } else {
            stagnant = 0;
        }
        // enough roots provably cannot reach the target at this precision:
        // stop polishing the rest and let the escalation loop move on
        if hopeless > n / 4 {
            break;
        }
        warp_contraction(sc.n, &frozen, &before, roots, &mut view, bits);
    }
}

/// `n |p(z)/p'(z)|`: radius of a disk about `z` containing a true root
/// (inclusion-disk heuristic), evaluated in double-double.
pub fn root_residual(p: &IntPolynomial, z: Complex64) -> Result<f64> {
    p.degree_at_least(1)?;
    let sc = ScaledPoly::new(p);
    let dd_coeffs = sc.dd_coeffs();
    let (radius, deriv_ok) = residual_radius_dd(&sc, &dd_coeffs, Cdd::from_c64(z));
    if !deriv_ok {
        return Err(Error::DerivativeVanishes { z });
    }
    Ok(radius)
}

// ---------------------------------------------------------------------------
// scaled coefficient views
// ---------------------------------------------------------------------------

struct ScaledPoly {
    /// original coefficients, low to high
    big: Vec<BigInt>,
    /// common power-of-two scale: working coefficients are big[j] / 2^shift
    shift: i64,
    /// scaled f64 coefficients
    cf: Vec<f64>,
    /// absolute values of the scaled coefficients
    af: Vec<f64>,
    n: usize,
}

impl ScaledPoly {
    fn new(p: &IntPolynomial) -> ScaledPoly {
        let big: Vec<BigInt> = p.coeffs().to_vec();
        let n = big.len() - 1;
        let max_bits = big.iter().map(|c| c.magnitude().bits()).max().unwrap_or(1);
        let shift = max_bits as i64 - 1;
        let cf: Vec<f64> = big.iter().map(|c| scaled_f64(c, shift)).collect();
        let af: Vec<f64> = cf.iter().map(|c| c.abs()).collect();
        ScaledPoly { big, shift, cf, af, n }
    }

    fn dd_coeffs(&self) -> Vec<Cdd> {
        self.big.iter().map(|c| Cdd::new(scaled_dd(c, self.shift), Dd::ZERO)).collect()
    }

    fn fixed_coeffs(&self, bits: u32) -> Vec<FixedComplex> {
        self.big
            .iter()
            .map(|c| FixedComplex::from_real(FixedReal::from_bigint_scaled(c, -self.shift, bits)))
            .collect()
    }
}

/// `c / 2^shift` rounded to f64 without overflowing on the way.
fn scaled_f64(c: &BigInt, shift: i64) -> f64 {
    if c.is_zero() {
        return 0.0;
    }
    let mag = c.magnitude();
    let bits = mag.bits() as i64;
    let take = bits.min(54);
    let top = (mag >> (bits - take) as u64).to_u64().expect("<= 54 bits") as f64;
    let v = top * pow2(bits - take - shift);
    if c.is_negative() {
        -v
    } else {
        v
    }
}

/// `c / 2^shift` as a double-double (~106 bit) value.
fn scaled_dd(c: &BigInt, shift: i64) -> Dd {
    if c.is_zero() {
        return Dd::ZERO;
    }
    let hi = scaled_f64(c, shift);
    let rem = c - exact_f64_scaled_to_bigint(hi, shift);
    let lo = scaled_f64(&rem, shift);
    Dd::from_parts(hi, lo)
}

/// Exact `x * 2^shift` as a big integer, for f64 values produced by
/// `scaled_f64` (whose scaled-back value is integral).
fn exact_f64_scaled_to_bigint(x: f64, shift: i64) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let raw = x.abs().to_bits();
    let exp_field = ((raw >> 52) & 0x7ff) as i64;
    let frac = raw & ((1u64 << 52) - 1);
    let (m, e) =
        if exp_field == 0 { (frac, -1074i64) } else { (frac | (1u64 << 52), exp_field - 1075) };
    let total = e + shift;
    let mag =
        if total >= 0 { BigInt::from(m) << total } else { BigInt::from(m) >> (-total) as u64 };
    if x < 0.0 {
        -mag
    } else {
        mag
    }
}

// ---------------------------------------------------------------------------
// f64 stage
// ---------------------------------------------------------------------------

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Perturbed-circle initialization at the Fujiwara-type magnitude bound
/// `max(1, 2 max_k |a_(n-k)/a_n|^(1/k))`, angularly jittered by the seed.
fn initial_guesses(sc: &ScaledPoly, seed: u64) -> Vec<Complex64> {
    let n = sc.n;
    let lead = log2_abs(&sc.big[n]);
    let mut lr: f64 = f64::NEG_INFINITY;
    for k in 1..=n {
        let l = log2_abs(&sc.big[n - k]);
        if l.is_finite() {
            lr = lr.max((l - lead) / k as f64);
        }
    }
    let radius = if lr.is_finite() { (1.0f64).max(2.0 * lr.exp2()) } else { 1.0 };
    let mut state = seed ^ 0x6a09_e667_f3bc_c908;
    let base = 2.0 * std::f64::consts::PI / n as f64;
    let offset = 0.3733 * base;
    (0..n)
        .map(|j| {
            let jit = (splitmix64(&mut state) >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            let theta = base * (j as f64 + 0.35 * jit) + offset;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

/// p, p', and their absolute-value Horner sums at z, all under one shared
/// power-of-two rescaling so that ratios and comparisons are scale-free.
struct EvalF64 {
    p: Complex64,
    dp: Complex64,
    abs: f64,
    dabs: f64,
}

fn eval_f64(sc: &ScaledPoly, z: Complex64) -> EvalF64 {
    let az = z.norm();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut dacc = Complex64::new(0.0, 0.0);
    let mut aacc = 0.0f64;
    let mut daacc = 0.0f64;
    for j in (0..=sc.n).rev() {
        dacc = dacc * z + acc;
        acc = acc * z + sc.cf[j];
        daacc = daacc * az + aacc;
        aacc = aacc * az + sc.af[j];
        if aacc > 1e280 || daacc > 1e280 {
            let s = pow2(-600);
            acc *= s;
            dacc *= s;
            aacc *= s;
            daacc *= s;
        }
    }
    EvalF64 { p: acc, dp: dacc, abs: aacc, dabs: daacc }
}

fn repulsion(view: &[Complex64], k: usize) -> Complex64 {
    let z = view[k];
    let mut s = Complex64::new(0.0, 0.0);
    for (j, &other) in view.iter().enumerate() {
        if j != k {
            let d = z - other;
            if d.norm_sqr() > 0.0 {
                s += d.finv();
            }
        }
    }
    s
}

#[inline]
fn sane(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Deterministic escape hatch for an iterate that went non-finite or sits on
/// a critical point.
fn nudge(z: Complex64, k: usize) -> Complex64 {
    let base = if sane(z) { z } else { Complex64::new(0.37 + 0.11 * (k % 13) as f64, 0.29) };
    base + (1.0 + base.norm())
        * Complex64::new(1.7e-3 * ((k % 7) as f64 + 1.0), -2.3e-3 * ((k % 5) as f64 + 1.0))
}

/// Overflow-safe complex division: rescales both operands by a power of two
/// before dividing (the textbook formula overflows for components beyond
/// ~1e154).
fn safe_cdiv(a: Complex64, b: Complex64) -> Complex64 {
    let m = b.re.abs().max(b.im.abs());
    if m == 0.0 || !m.is_finite() {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    let e = m.log2().round() as i64;
    let s = pow2(-e);
    (a * s) / (b * s)
}

/// Aberth correction from the Newton step `w` and repulsion sum `s`, with a
/// plain Newton fallback whenever the coupled form degenerates.
fn aberth_delta64(w: Complex64, s: Complex64) -> Complex64 {
    if !sane(w) {
        return w;
    }
    let denom = Complex64::new(1.0, 0.0) - w * s;
    if sane(denom) && denom.norm() > 1e-12 {
        let d = w / denom;
        if sane(d) {
            return d;
        }
    }
    w
}


// ---------------------------------------------------------------------------
// double-double stage
// ---------------------------------------------------------------------------

struct EvalDd {
    p: Cdd,
    dp: Cdd,
    abs: f64,
    dabs: f64,
}

fn eval_dd(coeffs: &[Cdd], af: &[f64], z: Cdd) -> EvalDd {
    let n = coeffs.len() - 1;
    let az = z.to_c64().norm();
    let mut acc = Cdd::ZERO;
    let mut dacc = Cdd::ZERO;
    let mut aacc = 0.0f64;
    let mut daacc = 0.0f64;
    for j in (0..=n).rev() {
        dacc = dacc.mul(z).add(acc);
        acc = acc.mul(z).add(coeffs[j]);
        daacc = daacc * az + aacc;
        aacc = aacc * az + af[j];
        if aacc > 1e280 || daacc > 1e280 {
            let s = Dd::from_f64(pow2(-600));
            acc = Cdd::new(acc.re.mul(s), acc.im.mul(s));
            dacc = Cdd::new(dacc.re.mul(s), dacc.im.mul(s));
            aacc *= pow2(-600);
            daacc *= pow2(-600);
        }
    }
    EvalDd { p: acc, dp: dacc, abs: aacc, dabs: daacc }
}


/// Inclusion radius at double-double precision; the flag is false when the
/// derivative sits below its own evaluation noise.
fn residual_radius_dd(sc: &ScaledPoly, coeffs: &[Cdd], z: Cdd) -> (f64, bool) {
    let n = sc.n;
    let ev = eval_dd(coeffs, &sc.af, z);
    let noise = 2.0 * n as f64 * DD_EPS;
    let e_p = noise * ev.abs;
    let e_dp = noise * ev.dabs;
    let dpn = ev.dp.to_c64().norm();
    if !dpn.is_finite() {
        return (f64::INFINITY, true);
    }
    if dpn <= 2.0 * e_dp {
        return (f64::INFINITY, false);
    }
    let pn = ev.p.to_c64().norm();
    if !pn.is_finite() || !e_p.is_finite() {
        return (f64::INFINITY, true);
    }
    let r = n as f64 * (pn + e_p) / (dpn - e_dp);
    (r + F64_EPS * (1.0 + z.to_c64().norm()), true)
}

enum PairAction {
    SnapReal(usize),
    Mirror(usize, usize),
}

/// Decide which roots get snapped to the real axis and which pair off as
/// conjugates. Only near-converged roots take part: symmetrizing a root that
/// is still wandering would collapse distinct iterates onto one zero.
fn pairing_plan(view: &[Complex64], radii: &[f64]) -> Vec<PairAction> {
    let n = view.len();
    let mut actions = Vec::new();
    let mut used = vec![false; n];
    let settled = |k: usize| radii[k] <= 1e-6 * (1.0 + view[k].norm());
    for k in 0..n {
        if !settled(k) {
            used[k] = true; // leave unsettled roots alone
            continue;
        }
        let tol = radii[k].max(64.0 * F64_EPS * (1.0 + view[k].norm()));
        if view[k].im.abs() <= tol {
            actions.push(PairAction::SnapReal(k));
            used[k] = true;
        }
    }
    let pos: Vec<usize> = (0..n).filter(|&k| !used[k] && view[k].im > 0.0).collect();
    let mut neg: Vec<usize> = (0..n).filter(|&k| !used[k] && view[k].im < 0.0).collect();
    for &a in &pos {
        let mut best: Option<(usize, f64)> = None;
        for (slot, &b) in neg.iter().enumerate() {
            let d = (view[a] - view[b].conj()).norm();
            if best.map(|(_, bd)| d < bd).unwrap_or(true) {
                best = Some((slot, d));
            }
        }
        if let Some((slot, d)) = best {
            // only mirror a genuinely matching pair
            if d <= 1e-5 * (1.0 + view[a].norm()) {
                let b = neg.swap_remove(slot);
                actions.push(PairAction::Mirror(a, b));
            }
        }
    }
    actions
}


// ---------------------------------------------------------------------------
// fixed-point stages
// ---------------------------------------------------------------------------

struct EvalFixed {
    p: FixedComplex,
    dp: FixedComplex,
    abs: f64,
    dabs: f64,
}

fn eval_fixed(coeffs: &[FixedComplex], af: &[f64], bits: u32, z: &FixedComplex) -> EvalFixed {
    let n = coeffs.len() - 1;
    let az = z.to_c64().norm();
    let mut acc = FixedComplex::zero(bits);
    let mut dacc = FixedComplex::zero(bits);
    let mut aacc = 0.0f64;
    let mut daacc = 0.0f64;
    let mut rescales = 0i64;
    for j in (0..=n).rev() {
        dacc = dacc.mul(z).add(&acc);
        acc = acc.mul(z).add(&coeffs[j]);
        daacc = daacc * az + aacc;
        aacc = aacc * az + af[j];
        if aacc > 1e280 {
            aacc *= pow2(-600);
            daacc *= pow2(-600);
            rescales += 1;
        }
    }
    let back = pow2((rescales * 600).min(2000));
    EvalFixed { p: acc, dp: dacc, abs: aacc * back, dabs: daacc * back }
}

fn residual_radius_fixed(
    sc: &ScaledPoly,
    coeffs: &[FixedComplex],
    bits: u32,
    z: &FixedComplex,
) -> (f64, bool) {
    let n = sc.n;
    let ev = eval_fixed(coeffs, &sc.af, bits, z);
    let noise = 2.0 * n as f64 * pow2(-(bits as i64));
    let e_p = noise * ev.abs;
    let e_dp = noise * ev.dabs;
    let dpn = ev.dp.to_c64().norm();
    if !dpn.is_finite() {
        return (f64::INFINITY, true);
    }
    if dpn <= 2.0 * e_dp {
        return (f64::INFINITY, false);
    }
    let pn = ev.p.to_c64().norm();
    if !pn.is_finite() || !e_p.is_finite() {
        return (f64::INFINITY, true);
    }
    let r = n as f64 * (pn + e_p) / (dpn - e_dp);
    (r + F64_EPS * (1.0 + z.to_c64().norm()), true)
}


fn symmetrize_fixed(
    sc: &ScaledPoly,
    coeffs: &[FixedComplex],
    bits: u32,
    roots: &mut [FixedComplex],
) {
    let n = sc.n;
    let eps_b = pow2(-(bits as i64));
    let view: Vec<Complex64> = roots.iter().map(|z| z.to_c64()).collect();
    let radii: Vec<f64> =
        roots.iter().map(|z| residual_radius_fixed(sc, coeffs, bits, z).0).collect();
    let newton = |mut z: FixedComplex| {
        for _ in 0..2 {
            let ev = eval_fixed(coeffs, &sc.af, bits, &z);
            let floor = 2.0 * n as f64 * eps_b * ev.abs;
            let pn = ev.p.to_c64().norm();
            if (pn.is_finite() && pn <= floor)
                || ev.dp.to_c64().norm() < pow2(-((bits / 2) as i64))
            {
                break;
            }
            z = z.sub(&ev.p.div(&ev.dp));
        }
        z
    };
    for action in pairing_plan(&view, &radii) {
        match action {
            PairAction::SnapReal(k) => {
                roots[k].im = FixedReal::zero(bits);
                roots[k] = newton(roots[k].clone());
                roots[k].im = FixedReal::zero(bits);
            }
            PairAction::Mirror(a, b) => {
                let two = FixedReal::from_f64(2.0, bits);
                let mid = FixedComplex {
                    re: roots[a].re.add(&roots[b].re).div(&two),
                    im: roots[a].im.sub(&roots[b].im).div(&two),
                };
                let rep = newton(mid);
                roots[b] = FixedComplex { re: rep.re.clone(), im: rep.im.neg() };
                roots[a] = rep;
            }
        }
    }
}

/// Working precision needed so the evaluation noise at each point clears the
/// target radius. The true |p'| is estimated from the current point cloud as
/// `|a_n| prod |z_k - z_j|`, which stays meaningful even when direct
/// evaluation of p' is noise-dominated.
fn estimate_required_bits(sc: &ScaledPoly, view: &[Complex64], target: f64, floor_bits: u32) -> u32 {
    let n = sc.n;
    let lead = sc.af[n].max(1e-300).log2();
    let margin = (4.0 * n as f64 / target).log2() + 48.0;
    let mut need = floor_bits as f64;
    for k in 0..n {
        let labs = log2_abs_sum(sc, view[k]);
        let mut lp = lead;
        for j in 0..n {
            if j != k {
                lp += (view[k] - view[j]).norm().max(1e-300).log2();
            }
        }
        need = need.max(labs - lp + margin);
    }
    (need.ceil() as u32).clamp(floor_bits, MAX_STAGE_BITS)
}

/// log2 of `sum |c_j| |z|^j` by a renormalizing Horner pass.
fn log2_abs_sum(sc: &ScaledPoly, z: Complex64) -> f64 {
    let az = if sane(z) { z.norm() } else { 1.0 };
    let mut acc = 0.0f64;
    let mut exp = 0i64;
    for j in (0..=sc.n).rev() {
        acc = acc * az + sc.af[j];
        if acc > 1e280 {
            acc *= pow2(-600);
            exp += 600;
        }
    }
    acc.max(1e-300).log2() + exp as f64
}

fn finish(roots: Vec<Complex64>, radii: Vec<f64>, n: usize) -> RootSet {
    let mut idx: Vec<usize> = (0..roots.len()).collect();
    idx.sort_by(|&a, &b| roots[a].re.total_cmp(&roots[b].re).then(roots[a].im.total_cmp(&roots[b].im)));
    let roots = idx.iter().map(|&i| roots[i]).collect();
    let radii = idx.iter().map(|&i| radii[i]).collect();
    RootSet { roots, radii, source_degree: n }
}
