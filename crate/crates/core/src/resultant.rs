//! Exact resultants of integer polynomials.
//!
//! Two routes share the public entry point: a subresultant pseudo-remainder
//! chain (fraction-free, good for moderate degrees) and a modular route that
//! computes the resultant mod many word-size primes and reassembles it by
//! CRT. The modular route is used for high degrees where the chain's
//! intermediate coefficients get expensive; the two are cross-checked in
//! tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::intpoly::{log2_abs, IntPolynomial};

const SUBRESULTANT_DEGREE_CUTOFF: usize = 96;

/// Exact resultant `Res(a, b)`.
pub(crate) fn resultant(a: &IntPolynomial, b: &IntPolynomial) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let da = a.degree().expect("nonzero");
    let db = b.degree().expect("nonzero");
    match (da, db) {
        (0, 0) => BigInt::from(1),
        (0, m) => a.coeff(0).pow(m as u32),
        (n, 0) => b.coeff(0).pow(n as u32),
        _ if da + db <= SUBRESULTANT_DEGREE_CUTOFF => resultant_subresultant(a, b),
        _ => resultant_modular(a, b),
    }
}

/// Quick certificate that `Res(a, b) != 0`: a single nonzero modular image
/// suffices. Returns false when the tried images all vanish (the caller then
/// decides exactly).
pub(crate) fn discriminant_nonzero_hint(a: &IntPolynomial, b: &IntPolynomial) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let la = a.leading().expect("nonzero");
    let lb = b.leading().expect("nonzero");
    let mut tried = 0;
    let mut q = PRIME_SEARCH_START;
    while tried < 3 {
        q = next_prime_above(q);
        if (la % q as i64).is_zero() || (lb % q as i64).is_zero() {
            continue;
        }
        let am = reduce_mod(a, q);
        let bm = reduce_mod(b, q);
        if resultant_mod(am, bm, q) != 0 {
            return true;
        }
        tried += 1;
    }
    false
}

// ---------------------------------------------------------------------------
// Subresultant pseudo-remainder chain
// ---------------------------------------------------------------------------

fn content(p: &IntPolynomial) -> BigInt {
    let mut g = BigInt::zero();
    for c in p.coeffs() {
        g = g.gcd(c);
        if g == BigInt::from(1) {
            break;
        }
    }
    if g.is_zero() {
        BigInt::from(1)
    } else {
        g
    }
}

fn scale(p: &IntPolynomial, s: &BigInt) -> IntPolynomial {
    IntPolynomial::new(p.coeffs().iter().map(|c| c * s).collect())
}

fn divide_coeffs_exact(p: &IntPolynomial, d: &BigInt) -> IntPolynomial {
    IntPolynomial::new(
        p.coeffs()
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(d);
                debug_assert!(r.is_zero());
                q
            })
            .collect(),
    )
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a  mod  b`.
fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let da = a.degree().expect("nonzero");
    let db = b.degree().expect("nonzero");
    debug_assert!(da >= db && db >= 1);
    let d = b.leading().expect("nonzero").clone();
    let mut r = a.clone();
    let mut e = (da - db + 1) as u32;
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lead = r.leading().expect("nonzero").clone();
        let shifted = IntPolynomial::monomial(lead, dr - db);
        r = &scale(&r, &d) - &(&shifted * b);
        e -= 1;
    }
    if e > 0 {
        r = scale(&r, &d.pow(e));
    }
    r
}

fn resultant_subresultant(a: &IntPolynomial, b: &IntPolynomial) -> BigInt {
    let (mut p, mut q) = (a.clone(), b.clone());
    let mut s = 1i32;
    if p.degree() < q.degree() {
        let (da, db) = (p.degree().unwrap(), q.degree().unwrap());
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut p, &mut q);
    }
    let ca = content(&p);
    let cb = content(&q);
    let t = ca.pow(q.degree().unwrap() as u32) * cb.pow(p.degree().unwrap() as u32);
    p = divide_coeffs_exact(&p, &ca);
    q = divide_coeffs_exact(&q, &cb);

    let mut g = BigInt::from(1);
    let mut h = BigInt::from(1);
    loop {
        let da = p.degree().expect("nonzero");
        let db = q.degree().expect("nonzero");
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let delta = (da - db) as u32;
        let r = pseudo_rem(&p, &q);
        if r.is_zero() {
            return BigInt::zero();
        }
        p = q;
        let denom = &g * h.pow(delta);
        q = divide_coeffs_exact(&r, &denom);
        g = p.leading().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            let (hn, hr) = g.pow(delta).div_rem(&h.pow(delta - 1));
            debug_assert!(hr.is_zero());
            hn
        };
        if q.degree() == Some(0) {
            let da = p.degree().expect("nonzero") as u32;
            let lead = q.coeff(0);
            let (hn, hr) = lead.pow(da).div_rem(&h.pow(da.saturating_sub(1)));
            debug_assert!(hr.is_zero());
            let res = t * hn;
            return if s < 0 { -res } else { res };
        }
    }
}

// ---------------------------------------------------------------------------
// Modular route
// ---------------------------------------------------------------------------

const PRIME_SEARCH_START: u64 = 1 << 62;

fn resultant_modular(a: &IntPolynomial, b: &IntPolynomial) -> BigInt {
    let da = a.degree().expect("nonzero");
    let db = b.degree().expect("nonzero");
    // Hadamard ceiling on |Res| from the Sylvester matrix row norms.
    let log2_bound = db as f64 * log2_norm2(a) + da as f64 * log2_norm2(b) + 1.0;
    // Early exit once the reconstructed value has been stable under many
    // extra primes and carries generous slack; the Hadamard ceiling is the
    // hard stop that makes the answer exact in the worst case.
    const SLACK_BITS: f64 = 192.0;
    const STABLE_PRIMES: u32 = 4;

    let la = a.leading().expect("nonzero");
    let lb = b.leading().expect("nonzero");

    let mut modulus = BigInt::from(1);
    let mut residue = BigInt::zero();
    let mut sym = BigInt::zero();
    let mut stable = 0u32;
    let mut q = PRIME_SEARCH_START;
    loop {
        q = next_prime_above(q);
        let qb = BigInt::from(q);
        if (la % &qb).is_zero() || (lb % &qb).is_zero() {
            continue;
        }
        let r = resultant_mod(reduce_mod(a, q), reduce_mod(b, q), q);

        // CRT: residue <- residue + modulus * t, t = (r - residue)/modulus mod q
        let m_mod_q = (&modulus % &qb).to_u64().expect("fits");
        let res_mod_q = residue.mod_floor(&qb).to_u64().expect("fits");
        let t = mul_mod(sub_mod(r, res_mod_q, q), inv_mod(m_mod_q, q), q);
        residue += &modulus * BigInt::from(t);
        modulus *= &qb;

        let lifted = symmetric_lift(&residue, &modulus);
        if lifted == sym {
            stable += 1;
        } else {
            stable = 0;
            sym = lifted;
        }
        let mod_bits = modulus.bits() as f64;
        let val_bits = sym.magnitude().bits() as f64;
        if mod_bits > log2_bound + 1.0 {
            break;
        }
        if stable >= STABLE_PRIMES && mod_bits > val_bits + SLACK_BITS {
            break;
        }
    }
    sym
}

fn symmetric_lift(residue: &BigInt, modulus: &BigInt) -> BigInt {
    let half = modulus >> 1;
    if residue > &half {
        residue - modulus
    } else {
        residue.clone()
    }
}

fn log2_norm2(p: &IntPolynomial) -> f64 {
    let mut lmax = f64::NEG_INFINITY;
    let logs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| {
            let l = 2.0 * log2_abs(c);
            if l > lmax {
                lmax = l;
            }
            l
        })
        .collect();
    if lmax == f64::NEG_INFINITY {
        return 0.0;
    }
    let sum: f64 = logs.iter().map(|l| (l - lmax).exp2()).sum();
    0.5 * (lmax + sum.log2())
}

fn reduce_mod(p: &IntPolynomial, q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    p.coeffs()
        .iter()
        .map(|c| c.mod_floor(&qb).to_u64().expect("fits"))
        .collect()
}

/// Resultant of two polynomials over F_q (little-endian, nonzero leads).
fn resultant_mod(mut a: Vec<u64>, mut b: Vec<u64>, q: u64) -> u64 {
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut neg = false;
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            neg = !neg;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut res: u64 = 1;
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            res = mul_mod(res, pow_mod(b[0], da as u64, q), q);
            break;
        }
        let r = poly_rem_mod(&a, &b, q);
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        if da % 2 == 1 && db % 2 == 1 {
            neg = !neg;
        }
        res = mul_mod(res, pow_mod(b[db], (da - dr) as u64, q), q);
        a = b;
        b = r;
    }
    if neg && res != 0 {
        q - res
    } else {
        res
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem_mod(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let inv_lead = inv_mod(b[db], q);
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = mul_mod(r[dr], inv_lead, q);
        if factor != 0 {
            for j in 0..db {
                let t = mul_mod(factor, b[j], q);
                r[dr - db + j] = sub_mod(r[dr - db + j], t, q);
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

#[inline]
fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

#[inline]
fn sub_mod(a: u64, b: u64, q: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (q - b)
    }
}

fn pow_mod(mut base: u64, mut e: u64, q: u64) -> u64 {
    let mut acc: u64 = 1 % q;
    base %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, q: u64) -> u64 {
    // q is prime
    pow_mod(a, q - 2, q)
}

fn next_prime_above(n: u64) -> u64 {
    let mut c = n + 1 + (n % 2);
    loop {
        if is_prime_u64(c) {
            return c;
        }
        c += 2;
    }
}

/// Deterministic Miller-Rabin for u64.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
