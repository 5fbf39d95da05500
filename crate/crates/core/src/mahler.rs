//! Mahler measure, generalized Mahler measures on capacity-one domains,
//! logarithmic height, and approximate sup-norms.
//!
//! The classical Mahler measure comes from the Jensen product
//! `|a_n| prod max(1, |root|)`. Its generalization to a compact set E sums
//! the Green function over the roots that lie in the unbounded complement
//! component; the tilde variant sums the extended Green function over all
//! roots, which coincides with the circle/segment geometric mean whenever no
//! root sits on the support of the equilibrium measure.

use num_complex::Complex64;

use crate::extprec::{FixedComplex, FixedReal};
use crate::intpoly::{log2_abs, log_abs, pow2, IntPolynomial};
use crate::potential::Domain;
use crate::rootfinder::RootSet;
use crate::Result;

/// All measure-type quantities for one (polynomial, domain) pair, with notes
/// recording how each value was obtained.
#[derive(Clone, Debug)]
pub struct MeasureReport {
    pub mahler: f64,
    pub generalized: f64,
    pub tilde: f64,
    pub height: f64,
    pub domain: Domain,
    pub sup_norm: f64,
    pub sup_gap: f64,
    pub method_notes: Vec<String>,
}

/// `ln M(p)` by the Jensen product over the computed roots.
pub fn log_mahler_measure(p: &IntPolynomial, rs: &RootSet) -> f64 {
    let lead = log_abs(p.leading().expect("nonzero polynomial")).expect("nonzero").value;
    let mut acc = lead;
    for z in &rs.roots {
        let m = z.norm();
        if m > 1.0 {
            acc += m.ln();
        }
    }
    acc
}

/// Mahler measure `|a_n| prod max(1, |root|)`; no snapping of near-unit
/// moduli.
pub fn mahler_measure(p: &IntPolynomial, rs: &RootSet) -> f64 {
    log_mahler_measure(p, rs).exp()
}

/// `ln M_E(p)`: only roots strictly inside the unbounded complement
/// component contribute. A root within its own error radius of E counts as
/// belonging to E and contributes nothing.
pub fn log_generalized_mahler(p: &IntPolynomial, rs: &RootSet, domain: &Domain) -> f64 {
    let lead = log_abs(p.leading().expect("nonzero polynomial")).expect("nonzero").value;
    let mut acc = lead;
    for (z, r) in rs.roots.iter().zip(rs.radii.iter()) {
        if domain.distance_to(*z) > *r {
            acc += domain.green(*z).0;
        }
    }
    acc
}

pub fn generalized_mahler(p: &IntPolynomial, rs: &RootSet, domain: &Domain) -> f64 {
    log_generalized_mahler(p, rs, domain).exp()
}

/// `ln M~_E(p)`: the extended Green function summed over all roots. Returns
/// the value together with a note about the quadrature cross-check (the
/// geometric-mean form), attempted only when every root stays at least 1e-6
/// away from the support of the equilibrium measure and the coefficient
/// profile allows a trustworthy f64 evaluation.
pub fn log_tilde_mahler_with_note(
    p: &IntPolynomial,
    rs: &RootSet,
    domain: &Domain,
) -> (f64, String) {
    let lead = log_abs(p.leading().expect("nonzero polynomial")).expect("nonzero").value;
    let mut acc = lead;
    for z in &rs.roots {
        acc += domain.green(*z).0;
    }

    let support_clearance = rs
        .roots
        .iter()
        .map(|z| support_distance(domain, *z))
        .fold(f64::INFINITY, f64::min);
    let note = if support_clearance < 1e-6 {
        "tilde: green sum; quadrature cross-check skipped (roots on support)".to_string()
    } else if needed_bits_on_support(p, domain) > F64_CONDITIONING_LIMIT {
        "tilde: green sum; quadrature cross-check skipped (coefficient profile beyond f64)"
            .to_string()
    } else {
        match domain.equilibrium_mean(|z| {
            let v = p.evaluate(z).norm();
            if v > 0.0 {
                v.ln()
            } else {
                -700.0
            }
        }) {
            Ok(quad) => format!(
                "tilde: green sum; quadrature cross-check agrees to {:.3e}",
                (quad - acc).abs()
            ),
            Err(_) => "tilde: green sum; quadrature cross-check did not converge".to_string(),
        }
    };
    (acc, note)
}

pub fn tilde_mahler(p: &IntPolynomial, rs: &RootSet, domain: &Domain) -> f64 {
    log_tilde_mahler_with_note(p, rs, domain).0.exp()
}

/// Logarithmic height `h = (1/n) ln M(p)`.
pub fn height(p: &IntPolynomial, rs: &RootSet) -> Result<f64> {
    let n = p.degree_at_least(1)?;
    Ok(log_mahler_measure(p, rs) / n as f64)
}

/// Distance from z to the support of the equilibrium measure (circle or
/// segment; added points are not part of the support).
fn support_distance(domain: &Domain, z: Complex64) -> f64 {
    match domain {
        Domain::UnitDisk | Domain::DiskPlusPoints { .. } => (z.norm() - 1.0).abs(),
        Domain::Segment { .. } => domain.distance_to(z),
    }
}

/// Sup-norm estimate: a certified-style lower bound (every reported value is
/// an actual evaluation) plus the refinement gap, an estimate of how much
/// higher the true maximum could sit based on the local parabolic models.
#[derive(Clone, Copy, Debug)]
pub struct SupNormEstimate {
    pub log_value: f64,
    pub value: f64,
    pub gap: f64,
}

/// Approximate `sup_E |p|` by dense boundary sampling with three-point
/// parabolic refinement of each local maximum. The maximum principle makes
/// boundary-only search sound for the disk; added points are evaluated
/// individually. Sampling precision escalates beyond f64 when the
/// coefficient profile demands it.
pub fn sup_norm(p: &IntPolynomial, domain: &Domain) -> SupNormEstimate {
    let n = p.degree().unwrap_or(0);
    let m = 4096usize.max(64 * n.min(40_000));
    let bits = needed_bits_on_support(p, domain);
    let eval: Box<dyn Fn(Complex64) -> f64> = if bits <= F64_CONDITIONING_LIMIT {
        Box::new(|z| log_abs_eval_f64(p, z))
    } else {
        let b = (bits + 64).next_multiple_of(64);
        let coeffs: Vec<FixedReal> = p
            .coeffs()
            .iter()
            .map(|c| FixedReal::from_bigint_scaled(c, 0, b))
            .collect();
        Box::new(move |z| log_abs_eval_fixed(&coeffs, b, z))
    };

    let param_point: Box<dyn Fn(f64) -> Complex64> = match domain {
        Domain::UnitDisk | Domain::DiskPlusPoints { .. } => {
            Box::new(|t| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t))
        }
        Domain::Segment { a, .. } => {
            let a = *a;
            Box::new(move |t| Complex64::new(a + 4.0 * t, 0.0))
        }
    };
    let circular = matches!(domain, Domain::UnitDisk | Domain::DiskPlusPoints { .. });

    let step = if circular { 1.0 / m as f64 } else { 1.0 / (m - 1) as f64 };
    let samples: Vec<f64> = (0..m).map(|i| eval(param_point(i as f64 * step))).collect();

    let mut best_log = f64::NEG_INFINITY;
    let mut max_excess: f64 = 0.0;
    for i in 0..m {
        let c = samples[i];
        if !c.is_finite() {
            continue;
        }
        best_log = best_log.max(c);
        let (l, r) = if circular {
            (samples[(i + m - 1) % m], samples[(i + 1) % m])
        } else {
            if i == 0 || i == m - 1 {
                continue;
            }
            (samples[i - 1], samples[i + 1])
        };
        if !(l.is_finite() && r.is_finite()) || c < l || c < r {
            continue;
        }
        let denom = l - 2.0 * c + r;
        if denom >= 0.0 {
            continue;
        }
        let delta = (0.5 * (l - r) / denom).clamp(-0.5, 0.5);
        let predicted = c - 0.25 * (l - r) * delta;
        let refined = eval(param_point((i as f64 + delta) * step));
        if refined.is_finite() {
            best_log = best_log.max(refined);
            max_excess = max_excess.max(predicted - refined.max(c));
        }
    }

    if let Domain::DiskPlusPoints { points } = domain {
        for pt in points {
            let v = eval(*pt);
            if v.is_finite() {
                best_log = best_log.max(v);
            }
        }
    }

    let value = best_log.exp();
    let gap = if max_excess > 0.0 { value * max_excess.exp_m1() } else { 0.0 };
    SupNormEstimate { log_value: best_log, value, gap }
}

/// f64 path: renormalizing Horner returning `ln |p(z)|`.
fn log_abs_eval_f64(p: &IntPolynomial, z: Complex64) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut shift_bits = 0i64;
    for c in p.coeffs().iter().rev() {
        acc = acc * z + crate::intpoly::bigint_to_f64(c);
        let n2 = acc.norm_sqr();
        if n2 > 1e280 {
            acc *= pow2(-600);
            shift_bits += 600;
        } else if n2 > 0.0 && n2 < 1e-280 {
            acc *= pow2(600);
            shift_bits -= 600;
        }
    }
    let n = acc.norm();
    if n == 0.0 {
        return f64::NEG_INFINITY;
    }
    n.ln() + shift_bits as f64 * std::f64::consts::LN_2
}

/// Fixed-point path: `ln |p(z)|` at the given precision.
fn log_abs_eval_fixed(coeffs: &[FixedReal], bits: u32, z: Complex64) -> f64 {
    let zf = FixedComplex::from_c64(z, bits);
    let mut acc = FixedComplex::zero(bits);
    for c in coeffs.iter().rev() {
        acc = acc.mul(&zf).add(&FixedComplex::from_real(c.clone()));
    }
    if acc.re.is_zero() && acc.im.is_zero() {
        return f64::NEG_INFINITY;
    }
    let lr = fixed_log2(&acc.re);
    let li = fixed_log2(&acc.im);
    let hi = lr.max(li);
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let r = ((lr - hi).exp2().powi(2) + (li - hi).exp2().powi(2)).sqrt();
    (hi + r.log2()) * std::f64::consts::LN_2
}

fn fixed_log2(x: &FixedReal) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    log2_abs(&x.mant) - x.bits as f64
}

/// Conditioning of evaluation on the domain's support: how many bits of
/// cancellation separate the coefficient profile from the guaranteed lower
/// bound `|a_n| cap(E)^n = |a_n|`. An f64 evaluation is trustworthy below
/// about 45; above that the fixed-point path runs at this plus a margin.
fn needed_bits_on_support(p: &IntPolynomial, domain: &Domain) -> u32 {
    let n = match p.degree() {
        Some(n) => n,
        None => return 0,
    };
    let radius: f64 = match domain {
        Domain::UnitDisk => 1.0,
        Domain::DiskPlusPoints { points } => {
            points.iter().map(|p| p.norm()).fold(1.0, f64::max)
        }
        Domain::Segment { a, b } => a.abs().max(b.abs()),
    };
    let lr = radius.log2();
    let mut l1 = f64::NEG_INFINITY;
    for (j, c) in p.coeffs().iter().enumerate() {
        let l = log2_abs(c) + j as f64 * lr;
        if l > l1 {
            l1 = l;
        }
    }
    l1 += ((n + 1) as f64).log2();
    let lead = log2_abs(p.leading().expect("nonzero"));
    (l1 - lead).clamp(0.0, 65536.0) as u32
}

const F64_CONDITIONING_LIMIT: u32 = 45;

/// Finite-n diagnostics for the norm-growth conditions: the n-th roots of
/// the leading coefficient, of the Mahler measure, and of the modulus
/// product over roots beyond radius R. The limits themselves are asymptotic
/// statements; these are the per-n numbers.
#[derive(Clone, Copy, Debug)]
pub struct GrowthDiagnostics {
    pub lead_root: f64,
    pub mahler_root: f64,
    pub tail_product_root: f64,
    pub tail_radius: f64,
}

pub fn growth_diagnostics(p: &IntPolynomial, rs: &RootSet, tail_radius: f64) -> GrowthDiagnostics {
    let n = rs.roots.len().max(1) as f64;
    let lead = log_abs(p.leading().expect("nonzero polynomial")).expect("nonzero").value;
    let tail: f64 = rs
        .roots
        .iter()
        .filter(|z| z.norm() >= tail_radius)
        .map(|z| z.norm().ln())
        .sum();
    GrowthDiagnostics {
        lead_root: (lead / n).exp(),
        mahler_root: (log_mahler_measure(p, rs) / n).exp(),
        tail_product_root: (tail / n).exp(),
        tail_radius,
    }
}

/// Assemble the full report for one (polynomial, roots, domain) triple.
pub fn measure(p: &IntPolynomial, rs: &RootSet, domain: &Domain) -> Result<MeasureReport> {
    let n = p.degree_at_least(1)?;
    let log_m = log_mahler_measure(p, rs);
    let log_gen = log_generalized_mahler(p, rs, domain);
    let (log_tilde, tilde_note) = log_tilde_mahler_with_note(p, rs, domain);
    let sup = sup_norm(p, domain);
    let mut notes = vec![
        "mahler: jensen product over computed roots".to_string(),
        format!(
            "generalized: green sum over {} roots outside E",
            rs.roots
                .iter()
                .zip(rs.radii.iter())
                .filter(|(z, r)| domain.distance_to(**z) > **r)
                .count()
        ),
        tilde_note,
        format!("sup_norm: boundary sampling, refinement gap {:.3e}", sup.gap),
    ];
    if rs.max_radius() > 1e-8 {
        notes.push(format!("root radii up to {:.3e} propagate into all values", rs.max_radius()));
    }
    Ok(MeasureReport {
        mahler: log_m.exp(),
        generalized: log_gen.exp(),
        tilde: log_tilde.exp(),
        height: log_m / n as f64,
        domain: domain.clone(),
        sup_norm: sup.value,
        sup_gap: sup.gap,
        method_notes: notes,
    })
}
