//! Exact arithmetic on integer-coefficient polynomials.
//!
//! Coefficients are arbitrary-precision integers stored densely, index `k`
//! holding the coefficient of `z^k`. The zero polynomial is represented by an
//! empty coefficient list and is rejected wherever a degree precondition
//! applies.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

use crate::resultant;
use crate::{Error, Result};

/// Dense integer-coefficient polynomial. `coeffs[k]` is the coefficient of
/// `z^k`; the leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::from(1))
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// The monomial `c * z^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPolynomial::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with a precondition that it is at least `min`.
    pub fn degree_at_least(&self, min: usize) -> Result<usize> {
        match self.degree() {
            Some(n) if n >= min => Ok(n),
            other => Err(Error::DegreeTooLow {
                required: min,
                found: other.unwrap_or(0),
            }),
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == BigInt::from(1))
    }

    /// Exact evaluation at an integer point by Horner's rule.
    pub fn evaluate_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluate at a complex point by Horner's rule. When `z` is a real
    /// integer within exact `f64` range the value is computed in exact
    /// integer arithmetic first and converted afterwards.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        if z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() < 9.0e15 {
            let v = self.evaluate_int(&BigInt::from(z.re as i64));
            return Complex64::new(bigint_to_f64(&v), 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + bigint_to_f64(c);
        }
        acc
    }

    /// Exact formal derivative. The derivative of a constant (or of the zero
    /// polynomial) is the zero polynomial.
    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        IntPolynomial::new(coeffs)
    }

    /// Resultant of `self` and `other`, exact.
    pub fn resultant(&self, other: &IntPolynomial) -> BigInt {
        resultant::resultant(self, other)
    }

    /// Exact discriminant, `(-1)^(n(n-1)/2) * Res(p, p') / a_n`.
    ///
    /// Requires degree at least 2. Equals `a_n^(2n-2)` times the squared
    /// Vandermonde product of the roots.
    pub fn discriminant(&self) -> Result<BigInt> {
        let n = self.degree_at_least(2)?;
        let res = resultant::resultant(self, &self.derivative());
        let lead = self.leading().expect("nonzero by degree check");
        let (q, r) = num_integer::Integer::div_rem(&res, lead);
        debug_assert!(r.is_zero(), "resultant must be divisible by the leading coefficient");
        let _ = r;
        if (n * (n - 1) / 2) % 2 == 1 {
            Ok(-q)
        } else {
            Ok(q)
        }
    }

    /// True iff all zeros are simple (degree 1 is always simple; otherwise
    /// the discriminant is nonzero). For integer coefficients a nonzero
    /// discriminant has `|disc| >= 1`.
    pub fn has_simple_zeros(&self) -> Result<bool> {
        let n = self.degree_at_least(1)?;
        if n == 1 {
            return Ok(true);
        }
        // A single nonzero modular image certifies disc != 0 without the
        // full-size computation; fall back to the exact value otherwise.
        if resultant::discriminant_nonzero_hint(self, &self.derivative()) {
            return Ok(true);
        }
        let d = self.discriminant()?;
        if !d.is_zero() {
            debug_assert!(d.abs() >= BigInt::from(1));
        }
        Ok(!d.is_zero())
    }

    /// Exact quotient; `None` if the division is not exact.
    pub fn divide_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let nd = self.degree().expect("nonzero");
        if nd < dd {
            return None;
        }
        let lead = divisor.leading().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = std::mem::take(&mut rem[k + dd]);
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&top, lead);
            if !r.is_zero() {
                return None;
            }
            for j in 0..dd {
                let t = &q * &divisor.coeffs[j];
                rem[k + j] -= t;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPolynomial::new(quot))
    }

    /// Parse either a comma-separated low-to-high coefficient list
    /// (`"c0,c1,...,cn"`) or a symbolic expression over `z` (or `x`) with
    /// integer coefficients, e.g. `"z^4+z^3-z-1"`.
    pub fn parse(input: &str) -> Result<IntPolynomial> {
        if input.contains(',') {
            parse_coeff_list(input)
        } else {
            parse_symbolic(input)
        }
    }

    /// Low-to-high comma-separated coefficient form; round-trips through
    /// [`IntPolynomial::parse`].
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    /// Symbolic form over `z`, highest degree first; round-trips through
    /// [`IntPolynomial::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == Sign::Minus;
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit = mag == BigInt::from(1);
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}z^{k}")?,
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        IntPolynomial::new(coeffs)
    }
}

impl std::ops::Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] -= c;
        }
        IntPolynomial::new(coeffs)
    }
}

impl std::ops::Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }
}

impl std::ops::Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Natural log of the absolute value of a big integer, held as a plain `f64`
/// with a bound on its relative error. Avoids overflow for integers far
/// beyond `f64` range (discriminants of high-degree polynomials).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BigLog {
    pub value: f64,
    pub relative_error: f64,
}

/// `ln |i|` from the bit length plus a 64-bit leading mantissa.
pub fn log_abs(i: &BigInt) -> Result<BigLog> {
    if i.is_zero() {
        return Err(Error::LogOfZero);
    }
    let mag = i.magnitude();
    let bits = mag.bits();
    if bits <= 63 {
        let v = mag.to_u64().expect("fits") as f64;
        return Ok(BigLog {
            value: v.ln(),
            relative_error: 1e-15,
        });
    }
    // ln(top 64 bits) + (bits - 64) ln 2; the discarded tail perturbs the
    // argument by less than 2^-63, far below the 1e-12 budget.
    let shift = bits - 64;
    let top = (mag >> shift).to_u64().expect("exactly 64 bits");
    let value = (top as f64).ln() + shift as f64 * std::f64::consts::LN_2;
    Ok(BigLog {
        value,
        relative_error: 1e-14,
    })
}

/// Base-2 log of |i|, `-inf` for zero. Used for size estimates and bounds.
pub(crate) fn log2_abs(i: &BigInt) -> f64 {
    if i.is_zero() {
        return f64::NEG_INFINITY;
    }
    let mag = i.magnitude();
    let bits = mag.bits();
    if bits <= 63 {
        return (mag.to_u64().expect("fits") as f64).log2();
    }
    let shift = bits - 64;
    let top = (mag >> shift).to_u64().expect("exactly 64 bits");
    (top as f64).log2() + shift as f64
}

/// Round a big integer to the nearest `f64` (ties away from zero),
/// saturating to infinity outside `f64` range.
pub fn bigint_to_f64(x: &BigInt) -> f64 {
    let mag = x.magnitude();
    let bits = mag.bits();
    let v = if bits <= 53 {
        mag.to_u64().map(|m| m as f64).unwrap_or(0.0)
    } else {
        let shift = bits - 54;
        let top = (mag >> shift).to_u64().expect("54 bits");
        let rounded = (top + 1) >> 1;
        (rounded as f64) * pow2(shift as i64 + 1)
    };
    if x.sign() == Sign::Minus {
        -v
    } else {
        v
    }
}

/// `2^e` without intermediate overflow for large |e|.
pub(crate) fn pow2(e: i64) -> f64 {
    if e >= 1024 {
        return f64::INFINITY;
    }
    if e <= -1075 {
        return 0.0;
    }
    // Split so each factor stays in range.
    let half = e / 2;
    let rest = e - half;
    f64::powi(2.0, half as i32) * f64::powi(2.0, rest as i32)
}

fn parse_coeff_list(input: &str) -> Result<IntPolynomial> {
    let mut coeffs = Vec::new();
    let mut col = 0usize;
    for part in input.split(',') {
        let t = part.trim();
        let c: BigInt = t.parse().map_err(|_| Error::Parse {
            col: col + 1,
            msg: format!("expected an integer coefficient, found {t:?}"),
        })?;
        coeffs.push(c);
        col += part.len() + 1;
    }
    Ok(IntPolynomial::new(coeffs))
}

fn parse_symbolic(input: &str) -> Result<IntPolynomial> {
    let b = input.as_bytes();
    let mut pos = 0usize;
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut any = false;

    let skip_ws = |pos: &mut usize| {
        while *pos < b.len() && b[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    while pos < b.len() {
        // sign
        let mut sign = 1i32;
        while pos < b.len() && (b[pos] == b'+' || b[pos] == b'-') {
            if b[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        if pos >= b.len() {
            return Err(Error::Parse {
                col: pos + 1,
                msg: "dangling sign".into(),
            });
        }
        // optional integer part
        let num_start = pos;
        while pos < b.len() && b[pos].is_ascii_digit() {
            pos += 1;
        }
        let mut coeff = if pos > num_start {
            input[num_start..pos].parse::<BigInt>().map_err(|_| Error::Parse {
                col: num_start + 1,
                msg: "integer coefficient out of form".into(),
            })?
        } else {
            BigInt::from(1)
        };
        if sign < 0 {
            coeff = -coeff;
        }
        skip_ws(&mut pos);
        if pos < b.len() && b[pos] == b'*' {
            pos += 1;
            skip_ws(&mut pos);
        }
        // optional variable with exponent
        let mut exp = 0usize;
        if pos < b.len() && (b[pos] == b'z' || b[pos] == b'x') {
            pos += 1;
            exp = 1;
            skip_ws(&mut pos);
            if pos < b.len() && b[pos] == b'^' {
                pos += 1;
                skip_ws(&mut pos);
                let e_start = pos;
                while pos < b.len() && b[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == e_start {
                    return Err(Error::Parse {
                        col: pos + 1,
                        msg: "expected an exponent after '^'".into(),
                    });
                }
                exp = input[e_start..pos].parse().map_err(|_| Error::Parse {
                    col: e_start + 1,
                    msg: "exponent out of range".into(),
                })?;
            }
        } else if pos == num_start {
            return Err(Error::Parse {
                col: pos + 1,
                msg: format!("unexpected character {:?}", b[pos] as char),
            });
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += coeff;
        any = true;
        skip_ws(&mut pos);
    }
    if !any {
        return Err(Error::Parse {
            col: 1,
            msg: "empty polynomial".into(),
        });
    }
    Ok(IntPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        IntPolynomial::parse(s).unwrap()
    }

    #[test]
    fn evaluate_matches_hand_values() {
        // root by construction
        let q = p("z^4+z^3-z-1");
        assert_eq!(q.evaluate(Complex64::new(1.0, 0.0)), Complex64::new(0.0, 0.0));
        // constant term at the origin
        assert_eq!(p("z^2-2").evaluate(Complex64::new(0.0, 0.0)), Complex64::new(-2.0, 0.0));
        // direct hand evaluation: 2^3 - 1 = 7
        assert_eq!(p("z^3-1").evaluate(Complex64::new(2.0, 0.0)), Complex64::new(7.0, 0.0));
    }

    #[test]
    fn evaluate_complex_point() {
        // (1+i)^2 - 2 = 2i - 2
        let v = p("z^2-2").evaluate(Complex64::new(1.0, 1.0));
        assert!((v - Complex64::new(-2.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("z^2-2").derivative(), p("2z"));
        assert_eq!(p("z^4+z^3-z-1").derivative(), p("4z^3+3z^2-1"));
        assert_eq!(p("5z").derivative(), p("5"));
        assert!(p("7").derivative().is_zero());
        assert!(IntPolynomial::zero().derivative().is_zero());
    }

    #[test]
    fn discriminant_quadratic_oracle() {
        // b^2 - 4ac for a z^2 + b z + c
        let cases = [("z^2-2", (1i64, 0, -2)), ("z^2-z-1", (1, -1, -1)), ("2z^2+3z+1", (2, 3, 1))];
        for (s, (a, b, c)) in cases {
            let expect = BigInt::from(b * b - 4 * a * c);
            assert_eq!(p(s).discriminant().unwrap(), expect, "disc of {s}");
        }
        assert_eq!(p("z^2").discriminant().unwrap(), BigInt::zero());
    }

    #[test]
    fn discriminant_depressed_cubic_oracle() {
        // -4p^3 - 27q^2 for z^3 + p z + q
        let cases = [("z^3-1", (0i64, -1i64)), ("z^3-3z", (-3, 0)), ("z^3+2z+5", (2, 5))];
        for (s, (pc, qc)) in cases {
            let expect = BigInt::from(-4 * pc.pow(3) - 27 * qc.pow(2));
            assert_eq!(p(s).discriminant().unwrap(), expect, "disc of {s}");
        }
    }

    #[test]
    fn discriminant_degree_precondition() {
        assert!(matches!(
            p("z-1").discriminant(),
            Err(Error::DegreeTooLow { required: 2, found: 1 })
        ));
    }

    #[test]
    fn simple_zero_detection() {
        assert!(p("z^2-2").has_simple_zeros().unwrap());
        // (z-1)^2 = z^2 - 2z + 1
        assert!(!p("z^2-2z+1").has_simple_zeros().unwrap());
        // distinct roots of unity
        assert!(p("z^4+z^3-z-1").has_simple_zeros().unwrap());
        assert!(p("3z-2").has_simple_zeros().unwrap());
    }

    #[test]
    fn log_abs_examples() {
        assert_eq!(log_abs(&BigInt::from(1)).unwrap().value, 0.0);
        let l8 = log_abs(&BigInt::from(8)).unwrap();
        assert!((l8.value - 8.0_f64.ln()).abs() < 1e-13);
        let big = BigInt::from(1) << 100;
        let l = log_abs(&big).unwrap();
        let expect = 100.0 * std::f64::consts::LN_2;
        assert!((l.value - expect).abs() / expect < 1e-12);
        assert!(matches!(log_abs(&BigInt::zero()), Err(Error::LogOfZero)));
        // negative values use |i|
        let ln = log_abs(&BigInt::from(-8)).unwrap();
        assert_eq!(ln.value, l8.value);
    }

    #[test]
    fn parse_round_trips() {
        for s in ["z^4+z^3-z-1", "z^2-2", "5z", "-z^3+2z-7", "0", "42", "-1"] {
            let q = p(s);
            assert_eq!(IntPolynomial::parse(&q.to_string()).unwrap(), q, "symbolic round trip of {s}");
            assert_eq!(IntPolynomial::parse(&q.to_coeff_string()).unwrap(), q, "list round trip of {s}");
        }
        // the two input forms agree
        assert_eq!(p("-1,0,0,0,1"), p("z^4-1"));
        assert_eq!(p("x^2-3x+1"), p("z^2-3z+1"));
        assert_eq!(p("2*z^2 + 1"), p("1,0,2"));
    }

    #[test]
    fn parse_errors_carry_position() {
        match IntPolynomial::parse("z^") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(IntPolynomial::parse("z^4+?").is_err());
        assert!(IntPolynomial::parse("1,2,a").is_err());
        assert!(IntPolynomial::parse("").is_err());
    }

    #[test]
    fn exact_division() {
        let prod = &p("z^2-1") * &p("z^2+z+1");
        assert_eq!(prod.divide_exact(&p("z^2+z+1")).unwrap(), p("z^2-1"));
        assert!(p("z^2+1").divide_exact(&p("z-1")).is_none());
    }

    #[test]
    fn bigint_f64_conversion() {
        assert_eq!(bigint_to_f64(&BigInt::from(-12345)), -12345.0);
        let x = BigInt::from(3) << 200;
        let v = bigint_to_f64(&x);
        assert!((v / (3.0 * pow2(200)) - 1.0).abs() < 1e-15);
        assert_eq!(bigint_to_f64(&(BigInt::from(1) << 1100)), f64::INFINITY);
    }

    #[test]
    fn finite_difference_matches_derivative() {
        let q = p("z^4+z^3-z-1");
        let dq = q.derivative();
        let h = 1e-7;
        for t in [-1.5, -0.3, 0.2, 0.9, 1.7] {
            let z = Complex64::new(t, 0.0);
            let fd = (q.evaluate(z + h) - q.evaluate(z)) / h;
            let ex = dq.evaluate(z);
            assert!((fd - ex).norm() < 1e-5 * (1.0 + ex.norm()), "at {t}");
        }
    }
}
