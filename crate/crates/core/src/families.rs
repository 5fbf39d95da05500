//! Generators for the polynomial families used as test corpora: cyclotomic
//! polynomials and their products, monic Chebyshev polynomials on `[-2,2]`,
//! minimal polynomials of `4cos^2(pi/p)`, and `z^n - 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::extprec::{cos, pi, FixedReal};
use crate::intpoly::IntPolynomial;
use crate::resultant::is_prime_u64;
use crate::{Error, Result};

/// Which constructive family a corpus member comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `prod_{d<=k} Phi_d`, all roots of unity of order up to `k`.
    CyclotomicProduct,
    /// Monic Chebyshev polynomial for the segment `[-2,2]`.
    ChebyshevT,
    /// Minimal polynomial of `4cos^2(pi/p)` for an odd prime `p`.
    TotallyPositiveMinPoly,
    /// Chebyshev relocated by an integer shift.
    ShiftedChebyshev,
    /// `z^n - 1`.
    PowerMinusOne,
    /// A literal polynomial supplied by the caller.
    Custom,
}

/// A family member request: kind, its integer parameter (`k`, `n` or prime
/// `p`), and an optional domain-relocation shift `x -> x + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub parameter: u64,
    pub shift: i64,
}

impl FamilySpec {
    /// Parse the CLI grammar: `cycloprod:k=200`, `chebyshev:n=101`,
    /// `trace:p=97`, `powm1:n=64`; the parameter clause may be omitted for
    /// sweeps.
    pub fn parse(s: &str) -> Result<FamilySpec> {
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, Some(r)),
            None => (s, None),
        };
        let (kind, pname) = match name {
            "cycloprod" => (FamilyKind::CyclotomicProduct, "k"),
            "chebyshev" => (FamilyKind::ChebyshevT, "n"),
            "trace" => (FamilyKind::TotallyPositiveMinPoly, "p"),
            "powm1" => (FamilyKind::PowerMinusOne, "n"),
            other => {
                return Err(Error::InvalidFamily(format!(
                    "unknown family {other:?} (expected cycloprod, chebyshev, trace or powm1)"
                )))
            }
        };
        let parameter = match rest {
            None => 0,
            Some(r) => {
                let (key, val) = r.split_once('=').ok_or_else(|| {
                    Error::InvalidFamily(format!("expected {pname}=<integer>, found {r:?}"))
                })?;
                if key != pname {
                    return Err(Error::InvalidFamily(format!(
                        "family {name} takes parameter {pname}, found {key:?}"
                    )));
                }
                val.parse().map_err(|_| {
                    Error::InvalidFamily(format!("parameter {pname} must be a positive integer"))
                })?
            }
        };
        Ok(FamilySpec { kind, parameter, shift: 0 })
    }

    /// Generate the member for this spec (parameter must be set).
    pub fn generate(&self) -> Result<IntPolynomial> {
        let base = match self.kind {
            FamilyKind::CyclotomicProduct => {
                if self.parameter < 1 {
                    return Err(Error::InvalidFamily("cycloprod needs k >= 1".into()));
                }
                cyclotomic_product(self.parameter)
            }
            FamilyKind::ChebyshevT | FamilyKind::ShiftedChebyshev => chebyshev_t(self.parameter),
            FamilyKind::TotallyPositiveMinPoly => totally_positive_minpoly(self.parameter)?,
            FamilyKind::PowerMinusOne => {
                if self.parameter < 1 {
                    return Err(Error::InvalidFamily("powm1 needs n >= 1".into()));
                }
                power_minus_one(self.parameter)
            }
            FamilyKind::Custom => {
                return Err(Error::InvalidFamily("custom members carry their own polynomial".into()))
            }
        };
        Ok(if self.shift != 0 { shift(&base, self.shift) } else { base })
    }

    /// Enumerate (parameter, polynomial) pairs whose degree lies in
    /// `[n_min, n_max]`, stepping the underlying parameter by `step`.
    pub fn members_in_degree_range(
        &self,
        n_min: usize,
        n_max: usize,
        step: usize,
    ) -> Result<Vec<(u64, IntPolynomial)>> {
        let step = step.max(1);
        let mut out = Vec::new();
        match self.kind {
            FamilyKind::CyclotomicProduct => {
                let mut k = 1u64;
                let mut deg = 0usize;
                let mut since_last = step; // always take the first in range
                while deg <= n_max {
                    deg += euler_phi(k) as usize;
                    if deg > n_max {
                        break;
                    }
                    if deg >= n_min {
                        if since_last >= step {
                            let spec = FamilySpec { parameter: k, ..*self };
                            out.push((k, spec.generate()?));
                            since_last = 0;
                        }
                        since_last += 1;
                    }
                    k += 1;
                }
            }
            FamilyKind::ChebyshevT | FamilyKind::ShiftedChebyshev | FamilyKind::PowerMinusOne => {
                let mut n = n_min.max(1);
                while n <= n_max {
                    let spec = FamilySpec { parameter: n as u64, ..*self };
                    out.push((n as u64, spec.generate()?));
                    n += step;
                }
            }
            FamilyKind::TotallyPositiveMinPoly => {
                let mut since_last = step;
                let mut p = 3u64;
                loop {
                    let deg = ((p - 1) / 2) as usize;
                    if deg > n_max {
                        break;
                    }
                    if is_prime_u64(p) && deg >= n_min {
                        if since_last >= step {
                            let spec = FamilySpec { parameter: p, ..*self };
                            out.push((p, spec.generate()?));
                            since_last = 0;
                        }
                        since_last += 1;
                    }
                    p += 2;
                }
            }
            FamilyKind::Custom => {
                return Err(Error::InvalidFamily("custom members cannot be swept".into()))
            }
        }
        Ok(out)
    }
}

/// Euler's totient for small arguments.
pub(crate) fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            result -= result / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The d-th cyclotomic polynomial by exact division:
/// `Phi_d = (z^d - 1) / prod_{e | d, e < d} Phi_e`.
pub fn cyclotomic(d: u64) -> IntPolynomial {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut memo: Vec<(u64, IntPolynomial)> = Vec::new();
    cyclotomic_memo(d, &mut memo)
}

fn cyclotomic_memo(d: u64, memo: &mut Vec<(u64, IntPolynomial)>) -> IntPolynomial {
    if let Some((_, p)) = memo.iter().find(|(e, _)| *e == d) {
        return p.clone();
    }
    let mut result = power_minus_one(d);
    for e in 1..d {
        if d % e == 0 {
            let phi_e = cyclotomic_memo(e, memo);
            result = result
                .divide_exact(&phi_e)
                .expect("cyclotomic division is exact");
        }
    }
    memo.push((d, result.clone()));
    result
}

/// `prod_{d=1}^{k} Phi_d`: monic with simple zeros (the distinct roots of
/// unity of order at most k), degree `sum_{d<=k} phi(d)`, Mahler measure 1.
pub fn cyclotomic_product(k: u64) -> IntPolynomial {
    assert!(k >= 1);
    let mut memo: Vec<(u64, IntPolynomial)> = Vec::new();
    let mut result = IntPolynomial::one();
    for d in 1..=k {
        let phi_d = cyclotomic_memo(d, &mut memo);
        result = &result * &phi_d;
    }
    result
}

/// `z^n - 1`.
pub fn power_minus_one(n: u64) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n as usize] = BigInt::one();
    IntPolynomial::new(coeffs)
}

/// Monic Chebyshev polynomial for `[-2,2]`: `t_0 = 2`, `t_1 = x`,
/// `t_{n+1} = x t_n - t_{n-1}`. All n roots `2cos((2k-1)pi/(2n))` are simple
/// and lie in `(-2,2)`.
pub fn chebyshev_t(n: u64) -> IntPolynomial {
    let mut prev = IntPolynomial::constant(BigInt::from(2));
    if n == 0 {
        return prev;
    }
    let x = IntPolynomial::monomial(BigInt::one(), 1);
    let mut cur = x.clone();
    for _ in 1..n {
        let next = &(&x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact composition `p(z - c)`, moving every zero by `+c`.
pub fn shift(p: &IntPolynomial, c: i64) -> IntPolynomial {
    if p.is_zero() || c == 0 {
        return p.clone();
    }
    // in-place Ruffini-Horner Taylor shift: p(z + a) with a = -c
    let a = BigInt::from(-c);
    let n = p.degree().expect("nonzero");
    let mut w: Vec<BigInt> = p.coeffs().to_vec();
    for i in 0..n {
        for j in (i..n).rev() {
            let t = &a * &w[j + 1];
            w[j] += t;
        }
    }
    IntPolynomial::new(w)
}

const MINPOLY_DEFAULT_DIGITS: u32 = 30;
const MINPOLY_MAX_DIGITS: u32 = 960;

/// Minimal polynomial of the totally positive algebraic integer
/// `4cos^2(pi/p)` for an odd prime p: monic, degree `(p-1)/2`, with the
/// coefficient of the second-highest term equal to `-(p-2)`.
///
/// Built by round-and-verify from high-precision roots, starting at 30
/// significant digits and doubling until the per-coefficient rounding
/// residual is sound.
pub fn totally_positive_minpoly(p: u64) -> Result<IntPolynomial> {
    let mut digits = MINPOLY_DEFAULT_DIGITS;
    loop {
        match totally_positive_minpoly_with_digits(p, digits) {
            Err(Error::InsufficientPrecision { .. }) if digits < MINPOLY_MAX_DIGITS => {
                digits *= 2;
            }
            other => return other,
        }
    }
}

/// Single round-and-verify pass at a fixed working precision. Fails with
/// `InsufficientPrecision` when some coefficient sits further than 0.25 from
/// the nearest integer.
pub fn totally_positive_minpoly_with_digits(p: u64, digits: u32) -> Result<IntPolynomial> {
    if p < 3 || p % 2 == 0 || !is_prime_u64(p) {
        return Err(Error::InvalidFamily(format!("trace family needs an odd prime, got {p}")));
    }
    let bits = (digits as f64 * std::f64::consts::LN_10 / std::f64::consts::LN_2).ceil() as u32 + 16;
    let half_deg = ((p - 1) / 2) as usize;
    let pi_b = pi(bits);

    // roots 4cos^2(k pi / p), k = 1..=(p-1)/2, all in (0, 4)
    let mut coeffs: Vec<FixedReal> = vec![FixedReal::one(bits)];
    for k in 1..=half_deg as u64 {
        let angle = pi_b.mul_u64(k).div_u64(p);
        let c = cos(&angle);
        let root = c.mul(&c).mul_u64(4);
        // multiply the expanded product by (x - root)
        let mut next = vec![FixedReal::zero(bits); coeffs.len() + 1];
        for (j, a) in coeffs.iter().enumerate() {
            next[j + 1] = next[j + 1].add(a);
            next[j] = next[j].sub(&a.mul(&root));
        }
        coeffs = next;
    }

    // coeffs is highest-first in construction order: coeffs[j] multiplies
    // x^(len-1-j)? No: we built with next[j+1] += a (degree raise), so
    // index j holds the coefficient of x^j counted from the constant term
    // once we reverse the accumulation. The loop above keeps index j as the
    // coefficient of x^j directly.
    let mut rounded = Vec::with_capacity(coeffs.len());
    let mut worst = 0.0f64;
    for c in &coeffs {
        let (q, resid) = c.round_to_int();
        worst = worst.max(resid.to_f64());
        rounded.push(q);
    }
    if worst >= 0.25 {
        return Err(Error::InsufficientPrecision { digits });
    }
    let poly = IntPolynomial::new(rounded);
    // structural validation: monic of the right degree with trace p - 2
    let deg_ok = poly.degree() == Some(half_deg) && poly.is_monic();
    let trace_ok = poly.coeff(half_deg - 1) == BigInt::from(-((p as i64) - 2));
    if !deg_ok || !trace_ok {
        return Err(Error::InsufficientPrecision { digits });
    }
    Ok(poly)
}

/// All odd primes up to the bound, ascending.
pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    (3..=bound).filter(|&n| n % 2 == 1 && is_prime_u64(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        IntPolynomial::parse(s).unwrap()
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic(1), p("z-1"));
        assert_eq!(cyclotomic(2), p("z+1"));
        assert_eq!(cyclotomic(3), p("z^2+z+1"));
        assert_eq!(cyclotomic(4), p("z^2+1"));
        // exact-division oracle from z^6-1: (z^6-1)/((z-1)(z+1)(z^2+z+1))
        let phi6 = power_minus_one(6)
            .divide_exact(&cyclotomic(1))
            .unwrap()
            .divide_exact(&cyclotomic(2))
            .unwrap()
            .divide_exact(&cyclotomic(3))
            .unwrap();
        assert_eq!(cyclotomic(6), phi6);
        assert_eq!(cyclotomic(6), p("z^2-z+1"));
        assert_eq!(cyclotomic(12), p("z^4-z^2+1"));
    }

    #[test]
    fn cyclotomic_degree_is_phi() {
        for d in 1..=40u64 {
            assert_eq!(cyclotomic(d).degree().unwrap() as u64, euler_phi(d), "d = {d}");
        }
    }

    #[test]
    fn cyclotomic_product_small_cases() {
        assert_eq!(cyclotomic_product(2), p("z^2-1"));
        // exact multiplication oracle: (z-1)(z+1)(z^2+z+1)
        let expect = &(&p("z-1") * &p("z+1")) * &p("z^2+z+1");
        assert_eq!(cyclotomic_product(3), expect);
        assert_eq!(cyclotomic_product(3), p("z^4+z^3-z-1"));
    }

    #[test]
    fn cyclotomic_product_degree_and_root_sum() {
        // degree = sum of phi(d); root sum = -(second coefficient) equals the
        // Mobius partial sum (computed here independently)
        let moebius = |n: u64| -> i64 {
            let mut n = n;
            let mut count = 0;
            let mut p = 2u64;
            while p * p <= n {
                if n % p == 0 {
                    n /= p;
                    if n % p == 0 {
                        return 0;
                    }
                    count += 1;
                }
                p += 1;
            }
            if n > 1 {
                count += 1;
            }
            if count % 2 == 0 {
                1
            } else {
                -1
            }
        };
        for k in [3u64, 5, 8, 13, 20] {
            let poly = cyclotomic_product(k);
            let deg: u64 = (1..=k).map(euler_phi).sum();
            assert_eq!(poly.degree().unwrap() as u64, deg);
            let mertens: i64 = (1..=k).map(moebius).sum();
            let n = poly.degree().unwrap();
            assert_eq!(poly.coeff(n - 1), BigInt::from(-mertens), "k = {k}");
        }
    }

    #[test]
    fn chebyshev_recurrence_oracle() {
        assert_eq!(chebyshev_t(0), p("2"));
        assert_eq!(chebyshev_t(1), p("z"));
        assert_eq!(chebyshev_t(2), p("z^2-2"));
        assert_eq!(chebyshev_t(3), p("z^3-3z"));
        assert_eq!(chebyshev_t(4), p("z^4-4z^2+2"));
        // independent recurrence replay at a point: t_n(2cos a) = 2cos(n a)
        let a = 0.83f64;
        let x = num_complex::Complex64::new(2.0 * a.cos(), 0.0);
        for n in [5u64, 9, 16] {
            let v = chebyshev_t(n).evaluate(x).re;
            assert!((v - 2.0 * (n as f64 * a).cos()).abs() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn chebyshev_structural_coefficients() {
        for n in [2u64, 5, 10, 33, 101] {
            let t = chebyshev_t(n);
            assert!(t.is_monic());
            let deg = t.degree().unwrap();
            // coefficient of x^(n-1) vanishes: mean of zeros is exactly 0
            assert!(t.coeff(deg - 1).is_zero());
            // Newton identity p2 = e1^2 - 2 e2 gives sum of squares 2n
            let e2 = t.coeff(deg - 2);
            assert_eq!(-BigInt::from(2) * e2, BigInt::from(2 * n), "n = {n}");
        }
    }

    #[test]
    fn shift_examples() {
        // (x^2 - 2) shifted by c=2: (x-2)^2 - 2 = x^2 - 4x + 2
        assert_eq!(shift(&p("z^2-2"), 2), p("z^2-4z+2"));
        assert_eq!(shift(&p("z"), 0), p("z"));
        assert_eq!(shift(&p("z-1"), 3), p("z-4"));
        // zeros move by +c: root of z-1 is 1, shifted poly has root 4
        let s = shift(&p("z-1"), 3);
        assert!(s.evaluate(num_complex::Complex64::new(4.0, 0.0)).norm() == 0.0);
    }

    #[test]
    fn trace_minpoly_small_primes() {
        assert_eq!(totally_positive_minpoly(3).unwrap(), p("z-1"));
        // roots (3 +- sqrt 5)/2, expand-and-round oracle
        assert_eq!(totally_positive_minpoly(5).unwrap(), p("z^2-3z+1"));
        // substitution y = x-2 into y^3+y^2-2y-1
        let y_form = p("z^3+z^2-2z-1");
        let x_form = shift(&y_form, 2);
        assert_eq!(totally_positive_minpoly(7).unwrap(), x_form);
        assert_eq!(totally_positive_minpoly(7).unwrap(), p("z^3-5z^2+6z-1"));
    }

    #[test]
    fn trace_minpoly_identity_oracle() {
        // (x - 4) m(x)^2 = t_p(x - 2) - 2 for m the minimal polynomial of
        // 4cos^2(pi/p): both sides vanish to the same multiplicity at every
        // 2 + 2cos(2k pi / p)
        for prime in [3u64, 5, 7, 11, 13, 31] {
            let m = totally_positive_minpoly(prime).unwrap();
            let lhs = &(&p("z-4") * &m) * &m;
            let shifted = shift(&chebyshev_t(prime), 2);
            let rhs = &shifted - &p("2");
            assert_eq!(lhs, rhs, "p = {prime}");
        }
    }

    #[test]
    fn trace_minpoly_rejects_bad_parameters() {
        assert!(matches!(totally_positive_minpoly(4), Err(Error::InvalidFamily(_))));
        assert!(matches!(totally_positive_minpoly(9), Err(Error::InvalidFamily(_))));
        assert!(matches!(totally_positive_minpoly(2), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn trace_minpoly_insufficient_precision_path() {
        // far too few digits for p = 101 (degree 50): the residual check
        // must fire rather than return a wrong polynomial
        match totally_positive_minpoly_with_digits(101, 2) {
            Err(Error::InsufficientPrecision { digits: 2 }) => {}
            other => panic!("expected precision error, got {other:?}"),
        }
        // and the doubling driver recovers
        let m = totally_positive_minpoly(101).unwrap();
        assert_eq!(m.degree(), Some(50));
        assert_eq!(m.coeff(49), BigInt::from(-99));
    }

    #[test]
    fn family_spec_parsing() {
        let f = FamilySpec::parse("cycloprod:k=200").unwrap();
        assert_eq!(f.kind, FamilyKind::CyclotomicProduct);
        assert_eq!(f.parameter, 200);
        assert_eq!(FamilySpec::parse("chebyshev:n=101").unwrap().parameter, 101);
        assert_eq!(FamilySpec::parse("trace:p=97").unwrap().parameter, 97);
        assert_eq!(FamilySpec::parse("powm1:n=64").unwrap().parameter, 64);
        assert!(FamilySpec::parse("salem:n=2").is_err());
        assert!(FamilySpec::parse("chebyshev:k=5").is_err());
        assert!(FamilySpec::parse("chebyshev:n=x").is_err());
    }

    #[test]
    fn degree_range_enumeration() {
        let spec = FamilySpec::parse("cycloprod").unwrap();
        let members = spec.members_in_degree_range(10, 60, 1).unwrap();
        for (k, poly) in &members {
            let deg: u64 = (1..=*k).map(euler_phi).sum();
            assert_eq!(poly.degree().unwrap() as u64, deg);
            assert!((10..=60).contains(&(deg as usize)));
        }
        assert!(!members.is_empty());

        let spec = FamilySpec::parse("trace").unwrap();
        let members = spec.members_in_degree_range(25, 40, 1).unwrap();
        for (prime, poly) in &members {
            assert_eq!(poly.degree().unwrap() as u64, (prime - 1) / 2);
        }
        assert!(members.iter().all(|(p, _)| is_prime_u64(*p)));
    }
}
