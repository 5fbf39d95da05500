//! Capacity-one domains with closed-form Green functions, equilibrium
//! densities and quadrature of equilibrium integrals.
//!
//! Three kinds are supported: the closed unit disk, real segments of length
//! 4, and the disk with finitely many exterior points attached. All have
//! logarithmic capacity one, so their Green functions grow like `log|z|`
//! with no constant term.

use num_complex::Complex64;

use crate::{Error, Result};

/// A compact set of logarithmic capacity one.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    UnitDisk,
    /// Real segment `[a, b]` with `b - a = 4`.
    Segment { a: f64, b: f64 },
    /// Unit disk together with finitely many points strictly outside it.
    /// The extra points have zero capacity: the equilibrium measure and the
    /// Green function are those of the disk. The points matter to sup-norms
    /// and membership tests, and each is an irregular boundary point of the
    /// complement.
    DiskPlusPoints { points: Vec<Complex64> },
}

/// Nonnegative value of the extended Green function `g_E(z, infinity)`,
/// using the convention that extends it by zero across the set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenValue(pub f64);

const QUAD_START: usize = 64;
const QUAD_CAP: usize = 1 << 16;
const QUAD_TOL: f64 = 1e-12;

impl Domain {
    pub fn segment(a: f64, b: f64) -> Result<Domain> {
        if !(a.is_finite() && b.is_finite()) || (b - a - 4.0).abs() > 1e-9 {
            return Err(Error::InvalidDomain(format!(
                "segment must have length 4 (capacity one), got [{a}, {b}]"
            )));
        }
        Ok(Domain::Segment { a, b })
    }

    pub fn disk_plus_points(points: Vec<Complex64>) -> Result<Domain> {
        for p in &points {
            if p.norm() <= 1.0 {
                return Err(Error::InvalidDomain(format!(
                    "added points must lie strictly outside the unit disk, got {p}"
                )));
            }
        }
        Ok(Domain::DiskPlusPoints { points })
    }

    /// Parse the CLI grammar: `disk`, `segment:a=-2,b=2`,
    /// `diskplus:points=2` (points separated by `;`, complex values as
    /// `re` or `re+imi`).
    pub fn parse(s: &str) -> Result<Domain> {
        if s == "disk" {
            return Ok(Domain::UnitDisk);
        }
        if let Some(rest) = s.strip_prefix("segment:") {
            let mut a = None;
            let mut b = None;
            for part in rest.split(',') {
                let (k, v) = part.split_once('=').ok_or_else(|| {
                    Error::InvalidDomain(format!("expected a=<num>,b=<num>, found {rest:?}"))
                })?;
                let val: f64 = v.parse().map_err(|_| {
                    Error::InvalidDomain(format!("not a number: {v:?}"))
                })?;
                match k {
                    "a" => a = Some(val),
                    "b" => b = Some(val),
                    other => {
                        return Err(Error::InvalidDomain(format!("unknown key {other:?}")))
                    }
                }
            }
            let (a, b) = match (a, b) {
                (Some(a), Some(b)) => (a, b),
                (Some(a), None) => (a, a + 4.0),
                _ => return Err(Error::InvalidDomain("segment needs a=<num>".into())),
            };
            return Domain::segment(a, b);
        }
        if let Some(rest) = s.strip_prefix("diskplus:") {
            let list = rest.strip_prefix("points=").ok_or_else(|| {
                Error::InvalidDomain(format!("expected points=<list>, found {rest:?}"))
            })?;
            let mut points = Vec::new();
            for tok in list.split(';') {
                points.push(parse_complex(tok)?);
            }
            return Domain::disk_plus_points(points);
        }
        Err(Error::InvalidDomain(format!(
            "unknown domain {s:?} (expected disk, segment:a=..,b=.., or diskplus:points=..)"
        )))
    }

    /// Extended Green function with pole at infinity, zero on the set and on
    /// the bounded complement components.
    pub fn green(&self, z: Complex64) -> GreenValue {
        match self {
            Domain::UnitDisk | Domain::DiskPlusPoints { .. } => {
                GreenValue(z.norm().ln().max(0.0))
            }
            Domain::Segment { a, b } => {
                let w = z - Complex64::new((a + b) / 2.0, 0.0);
                // factored form (w-2)(w+2) avoids the cancellation in w^2-4
                // near the endpoints; both square-root branches are tried and
                // the one with |w + s| >= 2 carries the exterior value
                let s = ((w - Complex64::new(2.0, 0.0)) * (w + Complex64::new(2.0, 0.0))).sqrt();
                let m = (w + s).norm().max((w - s).norm());
                GreenValue((m / 2.0).ln().max(0.0))
            }
        }
    }

    /// Distance from z to the set, in closed form.
    pub fn distance_to(&self, z: Complex64) -> f64 {
        match self {
            Domain::UnitDisk => (z.norm() - 1.0).max(0.0),
            Domain::Segment { a, b } => {
                let dx = (a - z.re).max(0.0).max(z.re - b);
                (dx * dx + z.im * z.im).sqrt()
            }
            Domain::DiskPlusPoints { points } => {
                let disk = (z.norm() - 1.0).max(0.0);
                points
                    .iter()
                    .map(|p| (z - p).norm())
                    .fold(disk, f64::min)
            }
        }
    }

    /// Integral of f against the equilibrium measure: the arcsine law on a
    /// segment (equal-weight Gauss–Chebyshev nodes), normalized arclength on
    /// the circle (trapezoid, spectrally exact for trigonometric
    /// polynomials). Node counts double until two successive estimates agree
    /// to 1e-12.
    pub fn equilibrium_mean(&self, f: impl Fn(Complex64) -> f64) -> Result<f64> {
        let eval = |m: usize| -> f64 {
            match self {
                Domain::UnitDisk | Domain::DiskPlusPoints { .. } => {
                    let mut acc = 0.0;
                    for j in 0..m {
                        let t = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                        acc += f(Complex64::from_polar(1.0, t));
                    }
                    acc / m as f64
                }
                Domain::Segment { a, b } => {
                    let mid = (a + b) / 2.0;
                    let mut acc = 0.0;
                    for j in 1..=m {
                        let t = (2.0 * j as f64 - 1.0) * std::f64::consts::PI
                            / (2.0 * m as f64);
                        acc += f(Complex64::new(mid + 2.0 * t.cos(), 0.0));
                    }
                    acc / m as f64
                }
            }
        };
        let mut m = QUAD_START;
        let mut prev = eval(m);
        while m <= QUAD_CAP {
            m *= 2;
            let cur = eval(m);
            if (cur - prev).abs() < QUAD_TOL * cur.abs().max(1.0) {
                return Ok(cur);
            }
            prev = cur;
        }
        Err(Error::QuadratureNonConvergence { last: prev, prev: eval(m / 2) })
    }

    /// A canonical point on the level curve `{g = c}`: on the positive real
    /// axis for the disk, just beyond the right endpoint for a segment
    /// (located by bisection to 1e-13).
    pub fn green_level_point(&self, c: f64) -> Result<Complex64> {
        if !(c > 0.0) {
            return Err(Error::InvalidDomain(format!(
                "level value must be positive, got {c}"
            )));
        }
        match self {
            Domain::UnitDisk | Domain::DiskPlusPoints { .. } => {
                Ok(Complex64::new(c.exp(), 0.0))
            }
            Domain::Segment { b, .. } => {
                let g_at = |eps: f64| self.green(Complex64::new(b + eps, 0.0)).0;
                let mut hi = 1e-6;
                while g_at(hi) < c {
                    hi *= 2.0;
                    if hi > 1e300 {
                        return Err(Error::InvalidDomain(format!(
                            "level value {c} unreachable"
                        )));
                    }
                }
                let mut lo = 0.0;
                while hi - lo > 1e-13 * hi {
                    let mid = 0.5 * (lo + hi);
                    if g_at(mid) < c {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                Ok(Complex64::new(b + 0.5 * (lo + hi), 0.0))
            }
        }
    }

    /// True when z belongs to the set (within the given slack), used to
    /// decide membership of roots with error radii.
    pub fn contains(&self, z: Complex64, slack: f64) -> bool {
        self.distance_to(z) <= slack
    }

    /// Center of the segment's support; the disk's is the origin.
    pub fn center(&self) -> Complex64 {
        match self {
            Domain::UnitDisk | Domain::DiskPlusPoints { .. } => Complex64::new(0.0, 0.0),
            Domain::Segment { a, b } => Complex64::new((a + b) / 2.0, 0.0),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Domain::UnitDisk => "disk".into(),
            Domain::Segment { a, b } => format!("segment[{a},{b}]"),
            Domain::DiskPlusPoints { points } => {
                let list: Vec<String> = points.iter().map(|p| format!("{p}")).collect();
                format!("disk+{{{}}}", list.join(";"))
            }
        }
    }
}

fn parse_complex(tok: &str) -> Result<Complex64> {
    let t = tok.trim();
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    // re+imi / re-imi
    if let Some(stripped) = t.strip_suffix('i') {
        // find the sign separating real and imaginary parts (not at index 0)
        let bytes = stripped.as_bytes();
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E'
            {
                let re: f64 = stripped[..i]
                    .parse()
                    .map_err(|_| Error::InvalidDomain(format!("bad complex number {tok:?}")))?;
                let im_str = &stripped[i..];
                let im: f64 = if im_str == "+" || im_str == "-" {
                    format!("{im_str}1").parse().unwrap()
                } else {
                    im_str
                        .parse()
                        .map_err(|_| Error::InvalidDomain(format!("bad complex number {tok:?}")))?
                };
                return Ok(Complex64::new(re, im));
            }
        }
        let im: f64 = stripped
            .parse()
            .map_err(|_| Error::InvalidDomain(format!("bad complex number {tok:?}")))?;
        return Ok(Complex64::new(0.0, im));
    }
    Err(Error::InvalidDomain(format!("bad complex number {tok:?}")))
}
