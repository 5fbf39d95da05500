//! Cross-module invariants and property tests over randomized inputs.

use num_complex::Complex64;
use proptest::prelude::*;

use equidist_core::discrepancy::zero_stats;
use equidist_core::families::{chebyshev_t, cyclotomic_product, shift};
use equidist_core::intpoly::{log_abs, IntPolynomial};
use equidist_core::rootfinder::{find_roots, DEFAULT_TARGET_RADIUS};

fn small_poly() -> impl Strategy<Value = IntPolynomial> {
    proptest::collection::vec(-9i64..=9, 1..=9)
        .prop_filter_map("nonzero polynomial", |coeffs| {
            let p = IntPolynomial::from_i64(&coeffs);
            (!p.is_zero()).then_some(p)
        })
}

proptest! {
    #[test]
    fn display_round_trips(p in small_poly()) {
        let symbolic = IntPolynomial::parse(&p.to_string()).unwrap();
        prop_assert_eq!(&symbolic, &p);
        let list = IntPolynomial::parse(&p.to_coeff_string()).unwrap();
        prop_assert_eq!(&list, &p);
    }

    #[test]
    fn shift_is_invertible(p in small_poly(), c in -20i64..=20) {
        prop_assert_eq!(&shift(&shift(&p, c), -c), &p);
    }

    #[test]
    fn shift_moves_evaluation_points(p in small_poly(), c in -5i64..=5) {
        // (shift p c)(z) = p(z - c)
        let q = shift(&p, c);
        for t in [-1.7, 0.3, 2.9] {
            let z = Complex64::new(t, 0.4);
            let lhs = q.evaluate(z);
            let rhs = p.evaluate(z - Complex64::new(c as f64, 0.0));
            prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn resultant_is_multiplicative(
        a in small_poly(), b in small_poly(), c in small_poly()
    ) {
        prop_assume!(a.degree().is_some() && b.degree().is_some() && c.degree().is_some());
        let ab = &a * &b;
        let lhs = ab.resultant(&c);
        let rhs = a.resultant(&c) * b.resultant(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn log_abs_is_additive(a in 1i64..=i64::MAX, shift_bits in 0u32..=700) {
        use num_bigint::BigInt;
        let x = BigInt::from(a) << shift_bits;
        let l = log_abs(&x).unwrap();
        let expect = (a as f64).ln() + shift_bits as f64 * std::f64::consts::LN_2;
        let tol = 1e-12 * expect.abs().max(1.0);
        prop_assert!((l.value - expect).abs() <= tol, "{} vs {}", l.value, expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn roots_satisfy_vieta(coeffs in proptest::collection::vec(-9i64..=9, 3..=10)) {
        let p = IntPolynomial::from_i64(&coeffs);
        prop_assume!(p.degree().map(|d| d >= 2).unwrap_or(false));
        prop_assume!(p.has_simple_zeros().unwrap_or(false));
        let n = p.degree().unwrap();
        let rs = find_roots(&p, DEFAULT_TARGET_RADIUS).unwrap();
        let sum: Complex64 = rs.roots.iter().sum();
        let lead = p.coeff(n);
        let next = p.coeff(n - 1);
        let expect = -equidist_core::intpoly::bigint_to_f64(&next)
            / equidist_core::intpoly::bigint_to_f64(&lead);
        prop_assert!((sum.re - expect).abs() < 1e-8 * (1.0 + expect.abs()));
        prop_assert!(sum.im.abs() < 1e-10);
    }
}

#[test]
fn vandermonde_discriminant_cross_check_random() {
    // exact discriminant vs a_n^(2n-2) V^2 computed from the numerical roots
    let mut state = 0xacce97u64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 17
    };
    let mut done = 0;
    while done < 50 {
        let deg = 2 + (next() % 39) as usize;
        let coeffs: Vec<i64> = (0..deg).map(|_| (next() % 19) as i64 - 9).collect();
        let mut coeffs = coeffs;
        coeffs.push(1); // monic
        let p = IntPolynomial::new(coeffs.iter().map(|&c| num_bigint::BigInt::from(c)).collect());
        if p.degree() != Some(deg) || !p.has_simple_zeros().unwrap() {
            continue;
        }
        let disc = p.discriminant().unwrap();
        let rs = find_roots(&p, DEFAULT_TARGET_RADIUS).unwrap();
        let mut log_v2 = 0.0;
        for i in 0..rs.roots.len() {
            for j in 0..i {
                log_v2 += 2.0 * (rs.roots[i] - rs.roots[j]).norm().ln();
            }
        }
        let log_disc = log_abs(&disc).unwrap().value;
        assert!(
            (log_disc - log_v2).abs() <= 1e-6 * log_disc.abs().max(1.0),
            "degree {deg}: exact {log_disc} vs vandermonde {log_v2}"
        );
        done += 1;
    }
}

#[test]
fn reconstruction_mid_degree_corpus() {
    // expanding a_n prod (z - root) reproduces every coefficient to 1e-8
    // relative for representative members up to degree ~200. Factors are
    // multiplied in bit-reversed angular order so every prefix stays
    // near-equidistributed and partial products do not overshoot.
    for p in [cyclotomic_product(24), chebyshev_t(60)] {
        let n = p.degree().unwrap();
        let rs = find_roots(&p, DEFAULT_TARGET_RADIUS).unwrap();
        let mut by_angle: Vec<Complex64> = rs.roots.clone();
        by_angle.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        let bits = usize::BITS - (n - 1).leading_zeros();
        let mut order: Vec<Complex64> = Vec::with_capacity(n);
        for i in 0..(1usize << bits) {
            let rev = i.reverse_bits() >> (usize::BITS - bits);
            if rev < n {
                order.push(by_angle[rev]);
            }
        }
        let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
        c[0] = Complex64::new(1.0, 0.0);
        let mut len = 1usize;
        for z in &order {
            let mut nxt = vec![Complex64::new(0.0, 0.0); len + 1];
            for j in 0..len {
                nxt[j + 1] += c[j];
                nxt[j] -= c[j] * z;
            }
            c = nxt;
            len += 1;
        }
        let scale: f64 = p
            .coeffs()
            .iter()
            .map(|x| equidist_core::intpoly::bigint_to_f64(x).abs())
            .fold(0.0, f64::max);
        for (k, ck) in c.iter().enumerate() {
            let expect = equidist_core::intpoly::bigint_to_f64(&p.coeff(k));
            assert!(
                (ck.re - expect).abs() <= 1e-8 * scale,
                "{p} coeff {k}: {} vs {expect}",
                ck.re
            );
            assert!(ck.im.abs() <= 1e-8 * scale);
        }
    }
}

#[test]
fn sector_counts_rotate_with_the_roots() {
    // p(-z) rotates every root by pi: with an even bin count the histogram
    // shifts cyclically by half a turn
    let p = cyclotomic_product(5);
    let rotated = IntPolynomial::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect(),
    );
    let bins = 8usize;
    let a = zero_stats(&find_roots(&p, DEFAULT_TARGET_RADIUS).unwrap(), bins).unwrap();
    let b = zero_stats(&find_roots(&rotated, DEFAULT_TARGET_RADIUS).unwrap(), bins).unwrap();
    let shifted: Vec<usize> =
        (0..bins).map(|i| a.sector_counts[(i + bins / 2) % bins]).collect();
    assert_eq!(b.sector_counts, shifted);
}

#[test]
fn conjugate_closure_across_families() {
    for p in [cyclotomic_product(9), chebyshev_t(21), IntPolynomial::parse("z^5+z+7").unwrap()] {
        let rs = find_roots(&p, DEFAULT_TARGET_RADIUS).unwrap();
        let mut mirrored: Vec<Complex64> = rs.roots.iter().map(|z| z.conj()).collect();
        mirrored.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
        assert_eq!(mirrored, rs.roots, "{p}");
    }
}
