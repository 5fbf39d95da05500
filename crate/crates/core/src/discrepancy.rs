//! Zero-distribution statistics and both sides of the explicit discrepancy
//! inequalities, with pass/fail verdicts.
//!
//! A report compares `|(1/n) sum phi(root) - int phi d(mu_E)|` against the
//! theorem's right-hand side at the stated parameters. The reported LHS
//! carries an uncertainty annotation, the Lipschitz constant times the mean
//! root radius, so a verdict never hinges on unacknowledged root error.

use num_complex::Complex64;

use crate::families::FamilySpec;
use crate::intpoly::{log_abs, IntPolynomial};
use crate::mahler;
use crate::potential::Domain;
use crate::rootfinder::{find_roots, RootSet, DEFAULT_TARGET_RADIUS};
use crate::{Error, Result};

/// Power means of the zeros and a sector histogram of their arguments.
#[derive(Clone, Debug)]
pub struct ZeroStats {
    pub n: usize,
    /// arithmetic mean of the zeros
    pub mean: Complex64,
    /// mean of the squared zeros
    pub mean_square: Complex64,
    /// complex power means of orders 1..=8 (index 0 is order 1)
    pub moments: Vec<Complex64>,
    /// counts over half-open argument bins `[phi1, phi2)` partitioning
    /// `[0, 2pi)`
    pub sector_counts: Vec<usize>,
}

/// Compute power means for orders 1..=8 and the argument histogram.
/// Conjugate pairs are summed together so the means of a conjugate-closed
/// set are exactly real.
pub fn zero_stats(rs: &RootSet, sector_bins: usize) -> Result<ZeroStats> {
    if rs.roots.is_empty() {
        return Err(Error::DegreeTooLow { required: 1, found: 0 });
    }
    let bins = sector_bins.max(1);
    let n = rs.roots.len();
    let mut moments = vec![Complex64::new(0.0, 0.0); 8];

    // pair indices of conjugates: roots are sorted, mirror exact
    let mut visited = vec![false; n];
    for i in 0..n {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let z = rs.roots[i];
        if z.im == 0.0 {
            let mut pw = Complex64::new(1.0, 0.0);
            for m in moments.iter_mut() {
                pw *= z;
                *m += pw;
            }
            continue;
        }
        // find the mirror partner
        let partner = (0..n).find(|&j| !visited[j] && rs.roots[j] == z.conj());
        match partner {
            Some(j) => {
                visited[j] = true;
                let mut pw = Complex64::new(1.0, 0.0);
                for m in moments.iter_mut() {
                    pw *= z;
                    // z^k + conj(z)^k = 2 Re(z^k), exactly real
                    *m += Complex64::new(2.0 * pw.re, 0.0);
                }
            }
            None => {
                let mut pw = Complex64::new(1.0, 0.0);
                for m in moments.iter_mut() {
                    pw *= z;
                    *m += pw;
                }
            }
        }
    }
    for m in moments.iter_mut() {
        *m /= n as f64;
    }

    let mut sector_counts = vec![0usize; bins];
    for z in &rs.roots {
        let mut arg = z.arg();
        if arg < 0.0 {
            arg += 2.0 * std::f64::consts::PI;
        }
        let mut idx = (arg / (2.0 * std::f64::consts::PI) * bins as f64).floor() as usize;
        if idx >= bins {
            idx = 0; // arg == 2pi wraps to the first half-open bin
        }
        sector_counts[idx] += 1;
    }

    Ok(ZeroStats { n, mean: moments[0], mean_square: moments[1], moments, sector_counts })
}

/// A compactly supported real test function with the constants the
/// discrepancy bounds need.
pub struct TestFunction {
    pub evaluator: Box<dyn Fn(Complex64) -> f64 + Send + Sync>,
    pub lipschitz: f64,
    pub support_radius: f64,
    pub support_center: Complex64,
    /// upper bound on the Dirichlet integral of the function
    pub dirichlet_bound: f64,
    /// modulus of continuity r -> omega(r); defaults to `lipschitz * r`
    pub modulus_of_continuity: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub name: String,
}

impl TestFunction {
    pub fn eval(&self, z: Complex64) -> f64 {
        (self.evaluator)(z)
    }

    pub fn omega(&self, r: f64) -> f64 {
        (self.modulus_of_continuity)(r)
    }

    fn lipschitz_default(
        name: &str,
        evaluator: Box<dyn Fn(Complex64) -> f64 + Send + Sync>,
        lipschitz: f64,
        support_radius: f64,
        support_center: Complex64,
        dirichlet_bound: f64,
    ) -> TestFunction {
        TestFunction {
            evaluator,
            lipschitz,
            support_radius,
            support_center,
            dirichlet_bound,
            modulus_of_continuity: Box::new(move |r| lipschitz * r),
            name: name.to_string(),
        }
    }
}

/// Nonnegative-part helper for the piecewise test functions.
fn hat(y: f64) -> f64 {
    (1.0 - y.abs()).max(0.0)
}

/// The built-in test functions used by the corollary-level reports. Names
/// follow the CLI grammar.
pub enum BuiltinTestFunction {
    /// `Re(z)` tapered off radially between 1 and e; Lipschitz sqrt(5)/2,
    /// support radius e.
    Cor32,
    /// `log|z - w|` tapered the same way; the parameter is a point near the
    /// unit circle.
    Cor33 { z: Complex64 },
    /// `x (1-|y|)` over the segment `[a, b]`, ramped down over one unit on
    /// both sides.
    Cor35 { a: f64, b: f64 },
    /// `x^2 (1-|y|)` over `[-2, 2]`, ramped down over `2 <= |x| <= 3`.
    Cor36,
    /// `(1-|y|) log|z - x|` over `[-2, 2]`, ramped over `2 <= |x| <= 3`;
    /// the parameter is a point near the segment.
    Cor37 { z: Complex64 },
}

/// Construct a built-in test function with its exact evaluator, Lipschitz
/// constant, support radius and Dirichlet-integral bound.
pub fn builtin_test_function(which: BuiltinTestFunction) -> TestFunction {
    match which {
        BuiltinTestFunction::Cor32 => {
            let e = std::f64::consts::E;
            let a = 5.0f64.sqrt() / 2.0;
            TestFunction::lipschitz_default(
                "cor32",
                Box::new(move |z: Complex64| {
                    let m = z.norm();
                    if m <= 1.0 {
                        z.re
                    } else if m < std::f64::consts::E {
                        z.re * (1.0 - m.ln())
                    } else {
                        0.0
                    }
                }),
                a,
                e,
                Complex64::new(0.0, 0.0),
                2.0 * std::f64::consts::PI * e * e * a * a,
            )
        }
        BuiltinTestFunction::Cor33 { z } => {
            let e = std::f64::consts::E;
            let delta = (z.norm() - 1.0).max(1e-300);
            // gradient bounds: 1/delta inside the disk; in the annulus the
            // log factor and the pole of log|1 - conj(z) w| at w = z/|z|^2
            // give (|ln delta| + (1+|z|)/delta)
            let lip = (1.0 / delta).max(delta.ln().abs() + (1.0 + z.norm()) / delta) * 1.05;
            // area integrals of the squared gradients: 2 pi ln((2+d)/d) from
            // the disk region, twice that order from the annulus, plus the
            // bounded log^2 term
            let lmax = delta.ln().abs().max((1.0 + e * z.norm()).ln().abs());
            let dirichlet = 2.0 * std::f64::consts::PI
                * ((2.0 + delta) / delta).ln().max(0.0)
                + 4.0 * std::f64::consts::PI * ((1.0 + e * z.norm()) / delta).ln().max(0.0)
                + 4.0 * std::f64::consts::PI * lmax * lmax;
            TestFunction {
                evaluator: Box::new(move |w: Complex64| {
                    let m = w.norm();
                    if m <= 1.0 {
                        (z - w).norm().max(1e-300).ln()
                    } else if m < e {
                        (1.0 - m.ln())
                            * (Complex64::new(1.0, 0.0) - z.conj() * w).norm().max(1e-300).ln()
                    } else {
                        0.0
                    }
                }),
                lipschitz: lip,
                support_radius: e,
                support_center: Complex64::new(0.0, 0.0),
                dirichlet_bound: dirichlet,
                modulus_of_continuity: Box::new(move |r| lip * r),
                name: "cor33".to_string(),
            }
        }
        BuiltinTestFunction::Cor35 { a, b } => {
            let big = a.abs().max(b.abs());
            TestFunction::lipschitz_default(
                "cor35",
                Box::new(move |z: Complex64| {
                    let (x, y) = (z.re, z.im);
                    if y.abs() > 1.0 {
                        0.0
                    } else if x >= a && x <= b {
                        x * hat(y)
                    } else if x >= a - 1.0 && x < a {
                        a * hat(y) * (x + 1.0 - a)
                    } else if x > b && x <= b + 1.0 {
                        b * hat(y) * (b + 1.0 - x)
                    } else {
                        0.0
                    }
                }),
                2.0f64.sqrt() * big,
                10.0f64.sqrt(),
                Complex64::new(a + 2.0, 0.0),
                24.0 * big * big,
            )
        }
        BuiltinTestFunction::Cor36 => TestFunction::lipschitz_default(
            "cor36",
            Box::new(|z: Complex64| {
                let (x, y) = (z.re, z.im);
                if y.abs() > 1.0 {
                    0.0
                } else if x.abs() <= 2.0 {
                    x * x * hat(y)
                } else if x.abs() <= 3.0 {
                    4.0 * hat(y) * (3.0 - x.abs())
                } else {
                    0.0
                }
            }),
            4.0 * 2.0f64.sqrt(),
            10.0f64.sqrt(),
            Complex64::new(0.0, 0.0),
            384.0,
        ),
        BuiltinTestFunction::Cor37 { z } => {
            let seg = Domain::Segment { a: -2.0, b: 2.0 };
            let d = seg.distance_to(z).max(1e-300);
            let l_p2 = (z - Complex64::new(2.0, 0.0)).norm().max(1e-300).ln().abs();
            let l_m2 = (z + Complex64::new(2.0, 0.0)).norm().max(1e-300).ln().abs();
            let lmax = d.ln().abs().max((z.norm() + 2.0).ln().abs()).max(l_p2).max(l_m2);
            let lip = (1.0 / d).max(lmax) * 1.5;
            // region |x|<=2: int dx/|z-x|^2 in closed form, log^2 bounded
            let j = if z.im.abs() > 0.0 {
                let c = z.im.abs();
                (((2.0 - z.re) / c).atan() + ((2.0 + z.re) / c).atan()) / c
            } else {
                // real z beyond an endpoint
                let t = z.re.abs();
                1.0 / (t - 2.0).max(1e-300) - 1.0 / (t + 2.0)
            };
            let dirichlet =
                (2.0 / 3.0) * j + 4.0 * lmax * lmax + (4.0 / 3.0) * (l_p2 * l_p2 + l_m2 * l_m2) + 16.0;
            TestFunction {
                evaluator: Box::new(move |w: Complex64| {
                    let (x, y) = (w.re, w.im);
                    if y.abs() > 1.0 {
                        0.0
                    } else if x.abs() <= 2.0 {
                        hat(y) * (z - Complex64::new(x, 0.0)).norm().max(1e-300).ln()
                    } else if x >= -3.0 && x < -2.0 {
                        (x + 3.0) * hat(y) * (z + Complex64::new(2.0, 0.0)).norm().ln()
                    } else if x > 2.0 && x <= 3.0 {
                        (3.0 - x) * hat(y) * (z - Complex64::new(2.0, 0.0)).norm().ln()
                    } else {
                        0.0
                    }
                }),
                lipschitz: lip,
                support_radius: 10.0f64.sqrt(),
                support_center: Complex64::new(0.0, 0.0),
                dirichlet_bound: dirichlet,
                modulus_of_continuity: Box::new(move |r| lip * r),
                name: "cor37".to_string(),
            }
        }
    }
}

/// Parse a built-in test function name from the CLI grammar.
pub fn parse_test_function(name: &str, level_param: Option<Complex64>) -> Result<TestFunction> {
    match name {
        "cor32" => Ok(builtin_test_function(BuiltinTestFunction::Cor32)),
        "cor33" => {
            let z = level_param
                .ok_or_else(|| Error::UnknownTestFunction("cor33 needs a level point".into()))?;
            Ok(builtin_test_function(BuiltinTestFunction::Cor33 { z }))
        }
        "cor35" => Ok(builtin_test_function(BuiltinTestFunction::Cor35 { a: 0.0, b: 4.0 })),
        "cor36" => Ok(builtin_test_function(BuiltinTestFunction::Cor36)),
        "cor37" => {
            let z = level_param
                .ok_or_else(|| Error::UnknownTestFunction("cor37 needs a level point".into()))?;
            Ok(builtin_test_function(BuiltinTestFunction::Cor37 { z }))
        }
        other => Err(Error::UnknownTestFunction(other.to_string())),
    }
}

/// Central-difference Dirichlet integral over the support bounding box;
/// validates the stated `dirichlet_bound` of the built-ins.
pub fn dirichlet_integral(phi: &TestFunction, grid_step: f64) -> f64 {
    assert!(grid_step > 0.0);
    let r = phi.support_radius * 1.05;
    let c = phi.support_center;
    let h = grid_step;
    let steps = (2.0 * r / h).ceil() as usize + 1;
    let mut acc = 0.0;
    for i in 0..steps {
        let x = c.re - r + i as f64 * h;
        for j in 0..steps {
            let y = c.im - r + j as f64 * h;
            let gx = (phi.eval(Complex64::new(x + h, y)) - phi.eval(Complex64::new(x - h, y)))
                / (2.0 * h);
            let gy = (phi.eval(Complex64::new(x, y + h)) - phi.eval(Complex64::new(x, y - h)))
                / (2.0 * h);
            acc += (gx * gx + gy * gy) * h * h;
        }
    }
    acc
}

/// Which inequality a report instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremTag {
    Et31,
    Thm31,
    Thm34,
    Thm52,
    Thm54Seg,
    Cor32,
    Cor35,
    Cor36,
}

impl TheoremTag {
    pub fn label(self) -> &'static str {
        match self {
            TheoremTag::Et31 => "et31",
            TheoremTag::Thm31 => "thm31",
            TheoremTag::Thm34 => "thm34",
            TheoremTag::Thm52 => "thm52",
            TheoremTag::Thm54Seg => "thm54seg",
            TheoremTag::Cor32 => "cor32",
            TheoremTag::Cor35 => "cor35",
            TheoremTag::Cor36 => "cor36",
        }
    }
}

/// Parameter record carried by every report.
#[derive(Clone, Debug)]
pub struct ReportParams {
    pub n: usize,
    pub m_value: f64,
    pub r: f64,
    pub lipschitz: f64,
    pub support_radius: f64,
    pub domain: String,
}

/// One inequality instance: both sides, the uncertainty annotation on the
/// left side, and the verdict. `pass` is `None` when the theorem's degree
/// threshold is not met (no verdict).
#[derive(Clone, Debug)]
pub struct DiscrepancyReport {
    pub theorem: TheoremTag,
    pub lhs: f64,
    pub lhs_uncertainty: f64,
    pub rhs: f64,
    pub params: ReportParams,
    pub pass: Option<bool>,
}

impl DiscrepancyReport {
    pub fn passes(&self) -> bool {
        self.pass == Some(true)
    }

    pub fn threshold_met(&self) -> bool {
        self.pass.is_some()
    }
}

fn verdict(lhs: f64, rhs: f64, unc: f64) -> Option<bool> {
    Some(lhs <= rhs + unc)
}

fn mean_phi(phi: &TestFunction, rs: &RootSet) -> f64 {
    rs.roots.iter().map(|&z| phi.eval(z)).sum::<f64>() / rs.roots.len() as f64
}

/// The Erdos-Turan right-hand side `16 sqrt((1/n) ln(||p||_D /
/// sqrt|a_0 a_n|))`, from a disk sup-norm supplied by the caller. Errors on
/// a vanishing constant term (divide the power of z out first).
pub fn erdos_turan_rhs(p: &IntPolynomial, disk_sup_norm: f64) -> Result<f64> {
    let n = p.degree_at_least(1)?;
    if p.coeff(0) == num_bigint::BigInt::from(0) {
        return Err(Error::ZeroConstantTerm);
    }
    let l0 = log_abs(&p.coeff(0)).expect("nonzero").value;
    let ln_lead = log_abs(p.leading().expect("nonzero")).expect("nonzero").value;
    let inner = (disk_sup_norm.ln() - 0.5 * (l0 + ln_lead)).max(0.0);
    Ok(16.0 * (inner / n as f64).sqrt())
}

/// Sector-count discrepancy against the Erdos-Turan right-hand side
/// `16 sqrt((1/n) ln(||p||_D / sqrt|a_0 a_n|))`. The LHS is the worst
/// deviation `|N(bin)/n - |bin|/2pi|` over the given half-open bins.
pub fn erdos_turan_report(p: &IntPolynomial, rs: &RootSet, sector_bins: usize) -> Result<DiscrepancyReport> {
    let n = p.degree_at_least(1)?;
    if p.coeff(0) == num_bigint::BigInt::from(0) {
        return Err(Error::ZeroConstantTerm);
    }
    let stats = zero_stats(rs, sector_bins)?;
    let lhs = stats
        .sector_counts
        .iter()
        .map(|&c| (c as f64 / n as f64 - 1.0 / sector_bins as f64).abs())
        .fold(0.0, f64::max);
    let sup = mahler::sup_norm(p, &Domain::UnitDisk);
    let rhs = erdos_turan_rhs(p, sup.log_value.exp())?;
    // sector counting error: roots within a radius of a bin edge could fall
    // either side; bound by n * (mean radius) / bin width
    let bin_width = 2.0 * std::f64::consts::PI / sector_bins as f64;
    let unc = rs.mean_radius() / bin_width;
    Ok(DiscrepancyReport {
        theorem: TheoremTag::Et31,
        lhs,
        lhs_uncertainty: unc,
        rhs,
        params: ReportParams {
            n,
            m_value: sup.value,
            r: f64::NAN,
            lipschitz: f64::NAN,
            support_radius: f64::NAN,
            domain: "disk".into(),
        },
        pass: verdict(lhs, rhs, unc),
    })
}

/// Disk discrepancy bound `A(2R+1) sqrt(ln max(n, M(p)) / n)` for n >= 55.
pub fn thm31_report(p: &IntPolynomial, rs: &RootSet, phi: &TestFunction) -> Result<DiscrepancyReport> {
    let n = p.degree_at_least(1)?;
    let disk = Domain::UnitDisk;
    let lhs = (mean_phi(phi, rs) - disk.equilibrium_mean(|z| phi.eval(z))?).abs();
    let unc = phi.lipschitz * rs.mean_radius();
    let log_m = mahler::log_mahler_measure(p, rs);
    let m_for_bound = log_m.max((n as f64).ln());
    let rhs = phi.lipschitz * (2.0 * phi.support_radius + 1.0) * (m_for_bound / n as f64).sqrt();
    let pass = if n >= 55 { verdict(lhs, rhs, unc) } else { None };
    Ok(DiscrepancyReport {
        theorem: TheoremTag::Thm31,
        lhs,
        lhs_uncertainty: unc,
        rhs,
        params: ReportParams {
            n,
            m_value: log_m.exp(),
            r: f64::NAN,
            lipschitz: phi.lipschitz,
            support_radius: phi.support_radius,
            domain: "disk".into(),
        },
        pass,
    })
}

/// Segment discrepancy bound `A(3R+1) sqrt(ln max(n, M_E(p)) / n)` for
/// n >= 25; phi must be supported in a disk of radius R about the segment
/// center.
pub fn thm34_report(
    p: &IntPolynomial,
    rs: &RootSet,
    phi: &TestFunction,
    segment: &Domain,
) -> Result<DiscrepancyReport> {
    let Domain::Segment { .. } = segment else {
        return Err(Error::InvalidDomain("thm34 needs a segment domain".into()));
    };
    let n = p.degree_at_least(1)?;
    let lhs = (mean_phi(phi, rs) - segment.equilibrium_mean(|z| phi.eval(z))?).abs();
    let unc = phi.lipschitz * rs.mean_radius();
    let log_me = mahler::log_generalized_mahler(p, rs, segment);
    let m_for_bound = log_me.max((n as f64).ln());
    let rhs = phi.lipschitz * (3.0 * phi.support_radius + 1.0) * (m_for_bound / n as f64).sqrt();
    let pass = if n >= 25 { verdict(lhs, rhs, unc) } else { None };
    Ok(DiscrepancyReport {
        theorem: TheoremTag::Thm34,
        lhs,
        lhs_uncertainty: unc,
        rhs,
        params: ReportParams {
            n,
            m_value: log_me.exp(),
            r: f64::NAN,
            lipschitz: phi.lipschitz,
            support_radius: phi.support_radius,
            domain: segment.describe(),
        },
        pass,
    })
}

/// Energy-method bound: `omega(r) + sqrt(D[phi]/(2 pi)) sqrt(T)` with
/// `T = (2/n) ln M - (1/n^2) ln|a_n^2 disc| - (ln r)/n + tail`, where the
/// tail is `4r` on the disk and `2 g(b + 2r)` on a segment. Defaults
/// `r = 1/n` (disk) and `r = 1/n^2` (segment) when `r` is not given.
pub fn energy_report(
    p: &IntPolynomial,
    rs: &RootSet,
    phi: &TestFunction,
    r: Option<f64>,
    domain: &Domain,
) -> Result<DiscrepancyReport> {
    let n = p.degree_at_least(1)?;
    let nf = n as f64;
    let disc = p.discriminant()?;
    if disc == num_bigint::BigInt::from(0) {
        return Err(Error::EnergyBoundInapplicable);
    }
    let (r, is_segment) = match domain {
        Domain::UnitDisk | Domain::DiskPlusPoints { .. } => (r.unwrap_or(1.0 / nf), false),
        Domain::Segment { .. } => (r.unwrap_or(1.0 / (nf * nf)), true),
    };
    if !(r > 0.0) {
        return Err(Error::InvalidDomain(format!("radius r must be positive, got {r}")));
    }

    let lhs = (mean_phi(phi, rs) - domain.equilibrium_mean(|z| phi.eval(z))?).abs();
    let unc = phi.lipschitz * rs.mean_radius();

    // ln |a_n^2 disc| exactly, via the big-integer log
    let lead = p.leading().expect("nonzero");
    let ln_an2_disc = 2.0 * log_abs(lead).expect("nonzero").value + log_abs(&disc)?.value;

    let log_m = if is_segment {
        mahler::log_generalized_mahler(p, rs, domain)
    } else {
        mahler::log_mahler_measure(p, rs)
    };

    let tail = if is_segment {
        let Domain::Segment { b, .. } = domain else { unreachable!() };
        2.0 * domain.green(Complex64::new(b + 2.0 * r, 0.0)).0
    } else {
        4.0 * r
    };
    let t = (2.0 / nf) * log_m - ln_an2_disc / (nf * nf) - r.ln() / nf + tail;
    let rhs = phi.omega(r) + (phi.dirichlet_bound / (2.0 * std::f64::consts::PI)).sqrt()
        * t.max(0.0).sqrt();

    Ok(DiscrepancyReport {
        theorem: if is_segment { TheoremTag::Thm54Seg } else { TheoremTag::Thm52 },
        lhs,
        lhs_uncertainty: unc,
        rhs,
        params: ReportParams {
            n,
            m_value: log_m.exp(),
            r,
            lipschitz: phi.lipschitz,
            support_radius: phi.support_radius,
            domain: domain.describe(),
        },
        pass: verdict(lhs, rhs, unc),
    })
}

/// Specialized disk bound `|A_n| <= 8 sqrt(ln n / n)` for
/// `n >= max(|a_n|, 55)`.
pub fn cor32_report(p: &IntPolynomial, rs: &RootSet) -> Result<DiscrepancyReport> {
    let n = p.degree_at_least(1)?;
    let stats = zero_stats(rs, 4)?;
    let lhs = stats.mean.norm();
    let unc = rs.mean_radius();
    let rhs = 8.0 * ((n as f64).ln() / n as f64).sqrt();
    let lead = crate::intpoly::bigint_to_f64(p.leading().expect("nonzero")).abs();
    let pass = if n as f64 >= lead.max(55.0) { verdict(lhs, rhs, unc) } else { None };
    Ok(DiscrepancyReport {
        theorem: TheoremTag::Cor32,
        lhs,
        lhs_uncertainty: unc,
        rhs,
        params: ReportParams {
            n,
            m_value: lead,
            r: f64::NAN,
            lipschitz: 1.0,
            support_radius: f64::NAN,
            domain: "disk".into(),
        },
        pass,
    })
}

/// Specialized segment bound `|A_n - (a+b)/2| <= 6 max(|a|,|b|)
/// sqrt(ln n / n)` for `n >= max(|a_n|, 25)`.
pub fn cor35_report(p: &IntPolynomial, rs: &RootSet, segment: &Domain) -> Result<DiscrepancyReport> {
    let Domain::Segment { a, b } = segment else {
        return Err(Error::InvalidDomain("cor35 needs a segment domain".into()));
    };
    let n = p.degree_at_least(1)?;
    let stats = zero_stats(rs, 4)?;
    let lhs = (stats.mean - Complex64::new((a + b) / 2.0, 0.0)).norm();
    let unc = rs.mean_radius();
    let rhs = 6.0 * a.abs().max(b.abs()) * ((n as f64).ln() / n as f64).sqrt();
    let lead = crate::intpoly::bigint_to_f64(p.leading().expect("nonzero")).abs();
    let pass = if n as f64 >= lead.max(25.0) { verdict(lhs, rhs, unc) } else { None };
    Ok(DiscrepancyReport {
        theorem: TheoremTag::Cor35,
        lhs,
        lhs_uncertainty: unc,
        rhs,
        params: ReportParams {
            n,
            m_value: lead,
            r: f64::NAN,
            lipschitz: 1.0,
            support_radius: f64::NAN,
            domain: segment.describe(),
        },
        pass,
    })
}

/// Specialized `[-2,2]` second-moment bound `|S_n - 2| <= 24
/// sqrt(ln n / n)` for `n >= max(|a_n|, 25)`.
pub fn cor36_report(p: &IntPolynomial, rs: &RootSet) -> Result<DiscrepancyReport> {
    let n = p.degree_at_least(1)?;
    let stats = zero_stats(rs, 4)?;
    let lhs = (stats.mean_square - Complex64::new(2.0, 0.0)).norm();
    // propagated root error on the second power sum
    let unc = rs
        .roots
        .iter()
        .zip(rs.radii.iter())
        .map(|(z, r)| (2.0 * z.norm() + r) * r)
        .sum::<f64>()
        / n as f64;
    let rhs = 24.0 * ((n as f64).ln() / n as f64).sqrt();
    let lead = crate::intpoly::bigint_to_f64(p.leading().expect("nonzero")).abs();
    let pass = if n as f64 >= lead.max(25.0) { verdict(lhs, rhs, unc) } else { None };
    Ok(DiscrepancyReport {
        theorem: TheoremTag::Cor36,
        lhs,
        lhs_uncertainty: unc,
        rhs,
        params: ReportParams {
            n,
            m_value: lead,
            r: f64::NAN,
            lipschitz: 1.0,
            support_radius: f64::NAN,
            domain: "segment[-2,2]".into(),
        },
        pass,
    })
}

/// One row of the norm-growth table.
#[derive(Clone, Debug)]
pub struct GrowthRow {
    pub parameter: u64,
    pub n: usize,
    pub log_sup: f64,
    /// `log ||p||_E / (sqrt(n) log n)`: the empirical constant in the
    /// subexponential growth bound. Reported, never asserted.
    pub ratio: f64,
}

/// Sup-norm growth table across a family sweep. Members with multiple zeros
/// are excluded (the growth bounds assume simple zeros).
pub fn growth_report(
    family: &FamilySpec,
    domain: &Domain,
    n_min: usize,
    n_max: usize,
    step: usize,
) -> Result<Vec<GrowthRow>> {
    let members = family.members_in_degree_range(n_min, n_max, step)?;
    let mut rows = Vec::new();
    for (parameter, poly) in members {
        let n = poly.degree().unwrap_or(0);
        if n < 2 {
            continue;
        }
        if n <= 500 && !poly.has_simple_zeros()? {
            continue;
        }
        let sup = mahler::sup_norm(&poly, domain);
        let nf = n as f64;
        rows.push(GrowthRow {
            parameter,
            n,
            log_sup: sup.log_value,
            ratio: sup.log_value / (nf.sqrt() * nf.ln()),
        });
    }
    Ok(rows)
}

/// Convenience: roots with the default target radius (used by sweeps).
pub fn roots_for(p: &IntPolynomial) -> Result<RootSet> {
    find_roots(p, DEFAULT_TARGET_RADIUS)
}
