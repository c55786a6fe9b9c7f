//! Acceptance suite. Runs each criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any of them fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lozenge_gap::correlation::{
    branch_sum, distance_product_check, double_sum_moment_form, e_ratio_finite, e_ratio_limit,
    expand_coefficients, expansion::summand_value, finite_n_correlation, master_sum, moment_closed,
    moment_direct, omega_asymptotic, omega_double_sum, omega_exact,
};
use lozenge_gap::enumerate::{count_gapped, count_matchings_capped};
use lozenge_gap::exactmath::{frac, rat, rational_to_f64};
use lozenge_gap::formulas::{kuo_check_e, kuo_check_f, m_e, m_f, m_g};
use lozenge_gap::region::{build, gap_fits, RegionSpec};

/// Large enough for every region in the calibration box (G(6,4) has 240 cells).
const CAP: usize = 400;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle(spec: RegionSpec) -> Result<num_bigint::BigInt, String> {
    let region = build(&spec).map_err(|e| e.to_string())?;
    count_matchings_capped(&region, CAP).map_err(|e| e.to_string())
}

fn geometry_calibration() -> Result<String, String> {
    let start = Instant::now();
    let mut cases = 0;
    for n in 0..=6 {
        for x in 0..=4 {
            let g = oracle(RegionSpec::G { n, x })?;
            ensure(g == m_g(n, x).unwrap(), || format!("G({n},{x}): oracle {g}"))?;
            cases += 1;
            for i in 1..=n {
                let f = oracle(RegionSpec::F { n, x, i })?;
                ensure(f == m_f(n, x, i).unwrap(), || format!("F({n},{x},{i}): oracle {f}"))?;
                cases += 1;
            }
            if n <= 5 {
                for i in 1..=n {
                    for j in i + 1..=n {
                        let e = oracle(RegionSpec::E { n, x, i, j })?;
                        ensure(e == m_e(n, x, i, j).unwrap(), || format!("E({n},{x},{i},{j}): oracle {e}"))?;
                        cases += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{cases} regions agree, {:.1}s", elapsed.as_secs_f64()))
}

fn gap_calibration() -> Result<String, String> {
    let mut cases = 0;
    for n in 2..=6 {
        for r in 1..=2 * n {
            for v in 1..=n {
                if !gap_fits(n, 1, r, v) {
                    continue;
                }
                let brute = oracle(RegionSpec::DGap { n, x: 1, r, v })?;
                let laplace = count_gapped(n, r, v, |i, j| m_e(n, 1, i, j)).map_err(|e| e.to_string())?;
                ensure(brute == laplace, || format!("DGap({n},1,{r},{v}): oracle {brute}, expansion {laplace}"))?;
                cases += 1;
            }
        }
    }
    ensure(cases > 0, || "no gap fits".into())?;
    let big = count_gapped(11, 4, 5, |i, j| m_e(11, 1, i, j)).map_err(|e| e.to_string())?;
    ensure(big.is_positive(), || "M(DGap(11,1,4,5)) not positive".into())?;
    Ok(format!("{cases} gapped regions agree; M(DGap(11,1,4,5)) = {big}"))
}

fn kuo_identities() -> Result<String, String> {
    let mut cases = 0;
    for n in 2..=8 {
        for x in 0..=3 {
            if n >= 3 {
                for i in 3..=n {
                    ensure(kuo_check_f(n, x, i).unwrap(), || format!("F identity fails at ({n},{x},{i})"))?;
                    cases += 1;
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    ensure(kuo_check_e(n, x, i, j).unwrap(), || format!("E identity fails at ({n},{x},{i},{j})"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} identities hold"))
}

fn moments() -> Result<String, String> {
    let q = frac(1, 4);
    for k in 0..=5 {
        for r in 0..=60 {
            let d = moment_direct(k, r, &q).unwrap();
            ensure(d == moment_closed(k, r).unwrap(), || format!("k={k} R={r}"))?;
        }
    }
    ensure(moment_direct(0, 3, &q).unwrap() == rat(-1), || "S0(3) != -1".into())?;
    ensure(moment_direct(1, 2, &q).unwrap() == rat(-1), || "S1(2) != -1".into())?;
    Ok("366 moments exact; S0(3) = S1(2) = -1".into())
}

fn correlation_identity() -> Result<String, String> {
    for r in 1..=12 {
        for v in 1..=12 {
            let d = omega_double_sum(r, v).map_err(|e| e.to_string())?;
            let e = omega_exact(r, v).unwrap();
            ensure(d == e, || format!("({r},{v}): double sum {d}, closed form {e}"))?;
        }
    }
    for ((r, v), want) in [((1, 2), 11), ((3, 3), 42), ((1, 1), 0), ((3, 2), 0)] {
        let got = omega_exact(r, v).unwrap();
        ensure(got == rat(want), || format!("omega({r},{v}) = {got}, expected {want}"))?;
    }
    Ok("144 grid points exact; spot values 11, 42, 0, 0".into())
}

fn trig_master_form() -> Result<String, String> {
    for r in 1..=30 {
        for v in 1..=30 {
            ensure(master_sum(r, v) == branch_sum(r, v), || format!("R={r} v={v}"))?;
        }
    }
    let coeffs = expand_coefficients();
    for r in 1..=12 {
        for v in 1..=12 {
            let sep = double_sum_moment_form(r, v, &coeffs).unwrap() * rat(24 * r);
            ensure(sep == master_sum(r, v), || format!("moment sum differs at R={r} v={v}"))?;
        }
    }
    Ok("trig form equals all three residue branches for R <= 30".into())
}

fn ratio_convergence() -> Result<String, String> {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (i, j) in [(2, 5), (3, 4), (2, 3)] {
        let finite = rational_to_f64(&e_ratio_finite(10_000, i, j).unwrap());
        let limit = rational_to_f64(&e_ratio_limit(i, j));
        let err = ((finite - limit) / limit).abs();
        ensure(err < 1e-3, || format!("({i},{j}): {finite} vs {limit}"))?;
        worst = worst.max(err);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("worst relative error {worst:.2e} at n = 10^4"))
}

fn limit_definition() -> Result<String, String> {
    let exact = rational_to_f64(&omega_exact(2, 3).unwrap());
    let at50 = rational_to_f64(&finite_n_correlation(50, 2, 3).unwrap());
    let at1000 = rational_to_f64(&finite_n_correlation(1000, 2, 3).unwrap());
    let (d50, d1000) = ((at50 - exact).abs(), (at1000 - exact).abs());
    ensure(d1000 < d50, || format!("not closer: |{at1000} - {exact}| >= |{at50} - {exact}|"))?;
    ensure(d1000 / exact < 0.02, || format!("n=1000 value {at1000} not within 2% of {exact}"))?;
    Ok(format!("n=50: {at50:.6}, n=1000: {at1000:.6}, limit {exact}"))
}

fn asymptotics() -> Result<String, String> {
    for (r, v) in [(300, 300), (300, 400), (300, 600)] {
        let ratio = rational_to_f64(&omega_exact(r, v).unwrap()) / omega_asymptotic(r, v).unwrap();
        ensure((ratio - 1.0).abs() < 0.02, || format!("({r},{v}): ratio {ratio}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut sampled = 0;
    let mut worst: f64 = 0.0;
    while sampled < 50 {
        let r = rng.gen_range(1..=200);
        let v = rng.gen_range(1..=200);
        if 3 * v - 2 * r <= 0 {
            continue;
        }
        let chk = distance_product_check(r, v).unwrap();
        ensure(chk.rel_error < 1e-9, || format!("({r},{v}): rel error {}", chk.rel_error))?;
        ensure(chk.sixth_root_matches, || format!("({r},{v}): sixth-root form differs"))?;
        worst = worst.max(chk.rel_error);
        sampled += 1;
    }
    Ok(format!("3 ratios within 2%; 50 distance products, worst rel error {worst:.1e}"))
}

fn expansion_audit() -> Result<String, String> {
    let mc = expand_coefficients();
    ensure(mc.monomial_count() == 120, || format!("{} monomials", mc.monomial_count()))?;
    ensure(mc.coefficient(5, 1, 0, 0) == 1.into(), || "a^5 b".into())?;
    ensure(mc.coefficient(1, 5, 0, 0) == 1.into(), || "a b^5".into())?;
    // w = 2v: the term 3 a b^4 w
    ensure(mc.coefficient(1, 4, 0, 1) == 3.into(), || "3 a b^4 w".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let p: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-1000..=1000));
        let expanded = mc.full.eval_int([p[0], p[1], p[2], 2 * p[3]]);
        let direct = summand_value(&rat(p[0]), &rat(p[1]), &rat(p[2]), &rat(p[3]));
        ensure(expanded == direct, || format!("mismatch at {p:?}"))?;
    }
    Ok("120 monomials; spot terms match; 200 random points exact".into())
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("geometry calibration", geometry_calibration),
        ("gap calibration", gap_calibration),
        ("Kuo identities", kuo_identities),
        ("moments", moments),
        ("correlation identity", correlation_identity),
        ("trig master form", trig_master_form),
        ("E-ratio convergence", ratio_convergence),
        ("limit definition", limit_definition),
        ("asymptotics", asymptotics),
        ("expansion audit", expansion_audit),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
