//! Acceptance suite: every criterion runs as its own test and prints one
//! PASS/FAIL line. Run with
//!
//! ```text
//! cargo test --release --test acceptance -- --nocapture
//! ```
//!
//! The family sweeps are sampled on fixed grids chosen so the whole suite
//! finishes in minutes; the full ranges remain available through the CLI.

use num_bigint::BigInt;
use num_complex::Complex64;
use rayon::prelude::*;
use std::sync::OnceLock;

use equidist_core::discrepancy::{
    self, builtin_test_function, BuiltinTestFunction, TheoremTag,
};
use equidist_core::families::{self, FamilySpec};
use equidist_core::intpoly::{log_abs, IntPolynomial};
use equidist_core::mahler;
use equidist_core::potential::Domain;
use equidist_core::rootfinder::{find_roots, RootSet, DEFAULT_TARGET_RADIUS};

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {id:02} {verdict}: {name} — {detail}");
    assert!(pass, "criterion {id:02} ({name}) failed: {detail}");
}

struct Member {
    param: u64,
    poly: IntPolynomial,
    roots: RootSet,
}

fn solve_members(params: &[u64], gen: impl Fn(u64) -> IntPolynomial + Sync) -> Vec<Member> {
    params
        .par_iter()
        .map(|&param| {
            let poly = gen(param);
            let roots = find_roots(&poly, DEFAULT_TARGET_RADIUS)
                .unwrap_or_else(|e| panic!("solving member {param}: {e}"));
            Member { param, poly, roots }
        })
        .collect()
}

/// Cyclotomic products covering 55 <= n <= 2000 on a fixed grid.
fn cyclo_corpus() -> &'static [Member] {
    static CORPUS: OnceLock<Vec<Member>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let ks: Vec<u64> = (13..=30)
            .chain([33, 36, 40, 44, 48, 53, 58, 64, 70, 75, 80])
            .collect();
        solve_members(&ks, families::cyclotomic_product)
    })
}

fn powm1_corpus() -> &'static [Member] {
    static CORPUS: OnceLock<Vec<Member>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        solve_members(&[56, 100, 200, 500, 1000, 2000], families::power_minus_one)
    })
}

/// Chebyshev members: dense at the threshold, sampled beyond. The criterion
/// range runs to n = 1000; the grid stops at 300 because the solver's
/// certified-precision cost on Chebyshev coefficient profiles grows steeply
/// with the degree. Larger members remain available through the CLI.
fn cheb_corpus() -> &'static [Member] {
    static CORPUS: OnceLock<Vec<Member>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let ns: Vec<u64> = (25..=40).chain([45, 50, 60, 75, 100, 150, 200, 250, 300]).collect();
        solve_members(&ns, families::chebyshev_t)
    })
}

fn trace_corpus() -> &'static [Member] {
    static CORPUS: OnceLock<Vec<Member>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let ps: Vec<u64> = families::odd_primes_up_to(199).into_iter().filter(|&p| p >= 61).collect();
        solve_members(&ps, |p| families::totally_positive_minpoly(p).expect("odd prime"))
    })
}

fn mertens(k: u64) -> i64 {
    // independent Mobius-sum oracle
    let moebius = |n: u64| -> i64 {
        let mut n = n;
        let mut factors = 0;
        let mut d = 2u64;
        while d * d <= n {
            if n % d == 0 {
                n /= d;
                if n % d == 0 {
                    return 0;
                }
                factors += 1;
            }
            d += 1;
        }
        if n > 1 {
            factors += 1;
        }
        if factors % 2 == 0 {
            1
        } else {
            -1
        }
    };
    (1..=k).map(moebius).sum()
}

#[test]
fn criterion_01_equilibrium_moments() {
    let t0 = std::time::Instant::now();
    let seg_sym = Domain::segment(-2.0, 2.0).unwrap();
    let v = seg_sym.equilibrium_mean(|z| z.re * z.re).unwrap();
    let mut ok = (v - 2.0).abs() <= 1e-10 * 2.0;
    let mut worst = (v - 2.0).abs() / 2.0;

    let seg_pos = Domain::segment(0.0, 4.0).unwrap();
    let mut expect = 1.0f64;
    for m in 1..=8u32 {
        // central binomial via the double-factorial recurrence
        expect = expect * 2.0 * (2.0 * m as f64 - 1.0) / m as f64;
        let got = seg_pos.equilibrium_mean(|z| z.re.powi(m as i32)).unwrap();
        let rel = (got - expect).abs() / expect;
        worst = worst.max(rel);
        ok &= rel <= 1e-10;
    }
    let dt = t0.elapsed();
    ok &= dt.as_secs_f64() < 1.0;
    report(
        1,
        "equilibrium moments",
        ok,
        &format!("worst relative error {worst:.2e}, runtime {dt:?}"),
    );
}

#[test]
fn criterion_02_jensen_consistency() {
    let t0 = std::time::Instant::now();
    let mut state = 0x2e5e_edde_u64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 16
    };
    let disk = Domain::UnitDisk;
    let mut accepted = 0;
    let mut attempts = 0;
    let mut worst = 0.0f64;
    while accepted < 50 {
        attempts += 1;
        assert!(attempts < 3000, "random polynomial generation starved");
        let deg = 2 + (next() % 29) as usize;
        let mut coeffs: Vec<i64> = (0..=deg).map(|_| (next() % 19) as i64 - 9).collect();
        if coeffs[0] == 0 {
            coeffs[0] = 3;
        }
        if coeffs[deg] == 0 {
            coeffs[deg] = 1;
        }
        let p = IntPolynomial::from_i64(&coeffs);
        if p.degree() != Some(deg) || !p.has_simple_zeros().unwrap_or(false) {
            continue;
        }
        let rs = match find_roots(&p, DEFAULT_TARGET_RADIUS) {
            Ok(rs) => rs,
            Err(_) => continue,
        };
        if rs.roots.iter().any(|z| (z.norm() - 1.0).abs() < 1e-3) {
            continue;
        }
        let product_form = mahler::log_mahler_measure(&p, &rs);
        let quad = disk
            .equilibrium_mean(|z| p.evaluate(z).norm().ln())
            .expect("quadrature converges away from the circle");
        worst = worst.max((product_form - quad).abs());
        accepted += 1;
    }
    let dt = t0.elapsed();
    let ok = worst <= 1e-6 && dt.as_secs_f64() < 10.0;
    report(
        2,
        "jensen consistency on random polynomials",
        ok,
        &format!("50 accepted of {attempts} drawn, worst |log gap| {worst:.2e}, runtime {dt:?}"),
    );
}

#[test]
fn criterion_03_discriminant_identity() {
    // degrees <= 40 across all family kinds, plus shifted variants
    let mut corpus: Vec<IntPolynomial> = Vec::new();
    for k in 2..=10 {
        corpus.push(families::cyclotomic_product(k));
    }
    for n in [2u64, 5, 9, 14, 20, 27, 33, 40] {
        corpus.push(families::chebyshev_t(n));
        corpus.push(families::shift(&families::chebyshev_t(n), 2));
        corpus.push(families::power_minus_one(n));
    }
    for p in [3u64, 13, 31, 53, 79] {
        corpus.push(families::totally_positive_minpoly(p).unwrap());
    }

    let mut worst = 0.0f64;
    let mut all_nonzero = true;
    for poly in &corpus {
        let n = poly.degree().unwrap();
        if n < 2 {
            continue;
        }
        let disc = poly.discriminant().unwrap();
        // a nonzero integer discriminant has |disc| >= 1 by integrality
        all_nonzero &= disc.magnitude().bits() >= 1;
        let rs = find_roots(poly, DEFAULT_TARGET_RADIUS).unwrap();
        let mut log_v2 = 0.0;
        for i in 0..rs.roots.len() {
            for j in 0..i {
                log_v2 += 2.0 * (rs.roots[i] - rs.roots[j]).norm().ln();
            }
        }
        let lead = log_abs(poly.leading().unwrap()).unwrap().value;
        let numeric = (2 * n - 2) as f64 * lead + log_v2;
        let exact = log_abs(&disc).unwrap().value;
        let rel = (exact - numeric).abs() / exact.abs().max(1.0);
        worst = worst.max(rel);
    }
    // closed forms as extra oracles: |disc(t_n)| = n^n 2^(n-1),
    // |disc(z^n - 1)| = n^n
    let mut closed_ok = true;
    for n in [2u32, 5, 9, 14] {
        use num_traits::Signed;
        let d = families::chebyshev_t(n as u64).discriminant().unwrap();
        closed_ok &= d.abs() == BigInt::from(n).pow(n) * (BigInt::from(1) << (n - 1));
        let d = families::power_minus_one(n as u64).discriminant().unwrap();
        closed_ok &= d.abs() == BigInt::from(n).pow(n);
    }
    let ok = worst <= 1e-6 && all_nonzero && closed_ok;
    report(
        3,
        "discriminant identity",
        ok,
        &format!(
            "{} members, worst relative log deviation {worst:.2e}, |disc| >= 1 everywhere: {all_nonzero}, closed forms: {closed_ok}",
            corpus.len()
        ),
    );
}

#[test]
fn criterion_04_cyclotomic_mean_sweep() {
    let t0 = std::time::Instant::now();
    let corpus = cyclo_corpus();
    let mut ok = true;
    let mut worst_gap = 0.0f64;
    for m in corpus {
        let n = m.poly.degree().unwrap();
        let stats = discrepancy::zero_stats(&m.roots, 8).unwrap();
        let bound = 8.0 * ((n as f64).ln() / n as f64).sqrt();
        ok &= stats.mean.norm() <= bound;
        let oracle = mertens(m.param) as f64 / n as f64;
        let gap = (stats.mean.re - oracle).abs().max(stats.mean.im.abs());
        worst_gap = worst_gap.max(gap);
        ok &= gap <= 1e-8;
        // the specialized report agrees
        let rep = discrepancy::cor32_report(&m.poly, &m.roots).unwrap();
        ok &= rep.passes();
    }
    report(
        4,
        "cyclotomic-product mean sweep",
        ok,
        &format!(
            "{} members, degrees {}..{}, worst |A_n - Mertens/n| = {worst_gap:.2e}, runtime {:?}",
            corpus.len(),
            corpus.first().map(|m| m.poly.degree().unwrap()).unwrap_or(0),
            corpus.last().map(|m| m.poly.degree().unwrap()).unwrap_or(0),
            t0.elapsed()
        ),
    );
}

#[test]
fn criterion_05_disk_theorem_and_energy_sweeps() {
    let t0 = std::time::Instant::now();
    let phi = builtin_test_function(BuiltinTestFunction::Cor32);
    let disk = Domain::UnitDisk;
    let mut ok = true;
    let mut count = 0;
    for m in cyclo_corpus().iter().chain(powm1_corpus()) {
        let n = m.poly.degree().unwrap();
        let rep = discrepancy::thm31_report(&m.poly, &m.roots, &phi).unwrap();
        if n >= 55 {
            ok &= rep.threshold_met() && rep.passes();
        }
        let en = discrepancy::energy_report(&m.poly, &m.roots, &phi, None, &disk).unwrap();
        ok &= en.passes();
        assert_eq!(en.theorem, TheoremTag::Thm52);

        // independent recomputation of the energy right-hand side
        let nf = n as f64;
        let r = 1.0 / nf;
        let disc = m.poly.discriminant().unwrap();
        let ln_a2d = 2.0 * log_abs(m.poly.leading().unwrap()).unwrap().value
            + log_abs(&disc).unwrap().value;
        let log_m = mahler::log_mahler_measure(&m.poly, &m.roots);
        let t = (2.0 / nf) * log_m - ln_a2d / (nf * nf) - r.ln() / nf + 4.0 * r;
        let rhs = phi.lipschitz * r
            + (phi.dirichlet_bound / (2.0 * std::f64::consts::PI)).sqrt() * t.max(0.0).sqrt();
        ok &= (rhs - en.rhs).abs() <= 1e-9 * rhs.abs().max(1.0);
        count += 1;
    }
    report(
        5,
        "disk discrepancy and energy sweeps",
        ok,
        &format!("{count} members (cyclotomic products and z^n-1), runtime {:?}", t0.elapsed()),
    );
}

#[test]
fn criterion_06_segment_sweeps() {
    let t0 = std::time::Instant::now();
    let mut ok = true;

    // chebyshev on [-2,2]: second moment pinned at 2
    for m in cheb_corpus() {
        let rep = discrepancy::cor36_report(&m.poly, &m.roots).unwrap();
        ok &= rep.threshold_met() && rep.passes();
        // S_n equals 2 to within the propagated root error
        ok &= rep.lhs <= rep.lhs_uncertainty + 1e-11;
    }

    // trace family on [0,4]: mean near 2, centered bound; all conjugates
    // real and positive within their error radii
    let seg = Domain::segment(0.0, 4.0).unwrap();
    for m in trace_corpus() {
        let rep = discrepancy::cor35_report(&m.poly, &m.roots, &seg).unwrap();
        ok &= rep.threshold_met() && rep.passes();
        ok &= m
            .roots
            .roots
            .iter()
            .zip(m.roots.radii.iter())
            .all(|(z, r)| z.im == 0.0 && z.re > *r && z.re < 4.0);
    }
    report(
        6,
        "segment sweeps (chebyshev second moment, trace-family mean)",
        ok,
        &format!(
            "{} chebyshev members (25..=300; larger degrees via CLI), {} trace members, runtime {:?}",
            cheb_corpus().len(),
            trace_corpus().len(),
            t0.elapsed()
        ),
    );
}

#[test]
fn criterion_07_trace_family_exactness() {
    let mut ok = true;
    let primes = families::odd_primes_up_to(199);
    let mut prev_mean = 0.0;
    let mut final_gap = f64::NAN;
    for &p in &primes {
        let poly = families::totally_positive_minpoly(p).unwrap();
        let deg = ((p - 1) / 2) as usize;
        ok &= poly.degree() == Some(deg);
        ok &= poly.is_monic();
        // trace is exactly p - 2
        ok &= poly.coeff(deg - 1) == BigInt::from(-(p as i64 - 2));
        // A_n = 2(p-2)/(p-1), increasing toward 2 from below
        let mean = 2.0 * (p as f64 - 2.0) / (p as f64 - 1.0);
        ok &= mean > prev_mean && mean < 2.0;
        prev_mean = mean;
        final_gap = 2.0 - mean;
    }
    ok &= final_gap < 0.011;
    report(
        7,
        "trace family exactness",
        ok,
        &format!("{} primes up to 199, final mean gap {final_gap:.6}", primes.len()),
    );
}

#[test]
fn criterion_08_irregular_set_example() {
    let e = Domain::disk_plus_points(vec![Complex64::new(2.0, 0.0)]).unwrap();
    let mut ok = true;
    let mut worst = 0.0f64;
    for n in 2..=30u64 {
        let poly = families::power_minus_one(n);
        let rs = find_roots(&poly, DEFAULT_TARGET_RADIUS).unwrap();
        // empty exterior sum: exactly one
        ok &= mahler::generalized_mahler(&poly, &rs, &e) == 1.0;
        let sup = mahler::sup_norm(&poly, &e);
        let expect = 2.0f64.powi(n as i32) - 1.0;
        let rel = (sup.value - expect).abs() / expect;
        worst = worst.max(rel);
        ok &= rel <= 1e-9;
    }
    report(
        8,
        "irregular set: z^n - 1 on the disk plus {2}",
        ok,
        &format!("n = 2..=30, worst sup-norm relative error {worst:.2e}"),
    );
}

#[test]
fn criterion_09_measure_chain() {
    let t0 = std::time::Instant::now();
    let domains = [
        Domain::UnitDisk,
        Domain::segment(-2.0, 2.0).unwrap(),
        Domain::segment(0.0, 4.0).unwrap(),
        Domain::disk_plus_points(vec![Complex64::new(2.0, 0.0)]).unwrap(),
    ];
    let mut members: Vec<(String, IntPolynomial)> = Vec::new();
    for k in [3u64, 8, 13, 20, 30] {
        members.push((format!("cycloprod:{k}"), families::cyclotomic_product(k)));
    }
    for n in [10u64, 30, 60, 100] {
        members.push((format!("chebyshev:{n}"), families::chebyshev_t(n)));
    }
    for p in [13u64, 61, 101, 199] {
        members.push((format!("trace:{p}"), families::totally_positive_minpoly(p).unwrap()));
    }
    for n in [8u64, 30, 64] {
        members.push((format!("powm1:{n}"), families::power_minus_one(n)));
    }
    members.push(("z^2-z-1".into(), IntPolynomial::parse("z^2-z-1").unwrap()));
    members.push(("z-3".into(), IntPolynomial::parse("z-3").unwrap()));

    let results: Vec<(String, bool)> = members
        .par_iter()
        .map(|(label, poly)| {
            let rs = find_roots(poly, DEFAULT_TARGET_RADIUS).unwrap();
            let n = poly.degree().unwrap() as f64;
            let mut good = true;
            for d in &domains {
                let log_gen = mahler::log_generalized_mahler(poly, &rs, d);
                let (log_tilde, _) = mahler::log_tilde_mahler_with_note(poly, &rs, d);
                let sup = mahler::sup_norm(poly, d);
                // 1 <= M_E <= M~_E <= ||p||_E
                good &= log_gen >= -1e-12;
                good &= log_tilde >= log_gen - 1e-12;
                good &= sup.log_value + (sup.gap / sup.value).max(0.0) >= log_tilde - 1e-9;
                // regular kinds: equality of the two generalizations
                if !matches!(d, Domain::DiskPlusPoints { .. }) {
                    let tol = 1e-9 + n * rs.mean_radius();
                    good &= (log_tilde - log_gen).abs() <= tol;
                }
            }
            (label.clone(), good)
        })
        .collect();

    let bad: Vec<&str> =
        results.iter().filter(|(_, g)| !g).map(|(l, _)| l.as_str()).collect();
    report(
        9,
        "measure chain over corpus x domains",
        bad.is_empty(),
        &format!(
            "{} members x {} domains, failures: [{}], runtime {:?}",
            results.len(),
            domains.len(),
            bad.join(", "),
            t0.elapsed()
        ),
    );
}

#[test]
fn criterion_10_growth_trend_tables() {
    let t0 = std::time::Instant::now();
    let disk = Domain::UnitDisk;
    let seg = Domain::segment(-2.0, 2.0).unwrap();
    let mut ok = true;
    let mut summary = String::new();

    let cyclo = FamilySpec::parse("cycloprod").unwrap();
    let rows = discrepancy::growth_report(&cyclo, &disk, 50, 500, 3).unwrap();
    ok &= !rows.is_empty() && rows.iter().all(|r| r.ratio.is_finite() && r.log_sup.is_finite());
    // subexponential-norm diagnostic: sup^(1/n) stays within 1.25 for n >= 100
    ok &= rows
        .iter()
        .filter(|r| r.n >= 100)
        .all(|r| (r.log_sup / r.n as f64).exp() <= 1.25);
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    summary.push_str(&format!("cycloprod max empirical c = {max_ratio:.4}; "));

    let cheb = FamilySpec::parse("chebyshev").unwrap();
    let rows = discrepancy::growth_report(&cheb, &seg, 25, 200, 10).unwrap();
    ok &= !rows.is_empty();
    // monic chebyshev attains sup 2 on the segment: log sup pinned at ln 2
    ok &= rows.iter().all(|r| (r.log_sup - 2.0f64.ln()).abs() < 1e-6);
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    summary.push_str(&format!("chebyshev max empirical c = {max_ratio:.4}; "));

    let powm1 = FamilySpec::parse("powm1").unwrap();
    let rows = discrepancy::growth_report(&powm1, &disk, 10, 300, 20).unwrap();
    ok &= !rows.is_empty() && rows.iter().all(|r| (r.log_sup - 2.0f64.ln()).abs() < 1e-9);
    summary.push_str("powm1 log sup pinned at ln 2");

    // asymptotic constants are reported, never asserted
    report(10, "growth trend tables (empirical constants reported)", ok, &format!("{summary}, runtime {:?}", t0.elapsed()));
}
