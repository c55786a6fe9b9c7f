//! Correlation of a side-2 gap with the 60 degree corner: finite-size
//! ratios, the double sum over gap positions, its moment factorization, the
//! exact piecewise value and its asymptotics.

pub mod expansion;
pub mod images;
pub mod moments;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{count_gapped, gap_weight};
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, frac, rat, rational_to_f64, trig_at, ExactRational};
use crate::formulas::{f_ratio, m_e};
use crate::region::gap_fits;

pub use expansion::{expand_coefficients, MonomialCoefficients};
pub use images::{distance_product_check, image_configuration, DistanceCheck, ImageConfiguration};
pub use moments::{moment_closed, moment_direct, MomentValue};

fn check_rv(r: i64, v: i64) -> Result<()> {
    if r < 1 || v < 1 {
        return Err(Error::Domain(format!("R and v must be positive, got ({r}, {v})")));
    }
    Ok(())
}

/// Limit of `M(E(n,1,i,j)) / M(E(n,1,1,3))` as `n` grows.
pub fn e_ratio_limit(i: i64, j: i64) -> ExactRational {
    rat(i * j * (j - i) * (i * i + i * j + j * j - 2 * i - 2 * j - 1)) / rat(24)
}

/// `M(E(n,1,i,j))` up to a factor that depends only on `n`.
fn e_scaled(n: i64, i: i64, j: i64) -> Result<ExactRational> {
    Ok(f_ratio(n - 1, 1, i)? * f_ratio(n, 1, j)? - f_ratio(n - 1, 1, j)? * f_ratio(n, 1, i)?)
}

/// `M(E(n,1,i,j)) / M(E(n,1,1,3))`, exact. The `M(G)` and `M(F(.,.,1))`
/// factors cancel, so this stays cheap for `n` in the thousands.
pub fn e_ratio_finite(n: i64, i: i64, j: i64) -> Result<ExactRational> {
    if n < 3 || !(1 <= i && i < j && j <= n) {
        return Err(Error::Domain(format!("E({n},1,{i},{j}) is not defined")));
    }
    Ok(e_scaled(n, i, j)? / e_scaled(n, 1, 3)?)
}

/// `M(DGap(n,1,R,v)) / M(DZero(n,1))`.
pub fn finite_n_correlation(n: i64, r: i64, v: i64) -> Result<ExactRational> {
    check_rv(r, v)?;
    if n < 3 || !gap_fits(n, 1, r, v) {
        return Err(Error::Domain(format!("gap (R={r}, v={v}) does not fit in D({n},1)")));
    }
    let norm = e_scaled(n, 1, 3)?;
    let mut sum = ExactRational::zero();
    for a in 0..=r {
        for b in a + 1..=r {
            let (i, j) = (2 * v - r + a, 2 * v - r + b);
            if i < 1 || j > n {
                continue;
            }
            let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
            sum += rat(sign * (b - a)) * gap_weight(r, a) * gap_weight(r, b) * e_scaled(n, i, j)?;
        }
    }
    Ok((rat(2 * r) * sum / norm).abs())
}

/// Same quantity from the integer counts, for cross-checking at small `n`.
pub fn finite_n_correlation_from_counts(n: i64, r: i64, v: i64) -> Result<ExactRational> {
    let gapped = count_gapped(n, r, v, |i, j| m_e(n, 1, i, j))?;
    Ok(ExactRational::new(gapped, m_e(n, 1, 1, 3)?))
}

/// Summand of the double sum at `(a, b)`:
/// `(-1)^(a+b) w(a) w(b) (b-a)^2 A B (A^2+AB+B^2-2A-2B-1)`.
pub fn double_sum_summand(r: i64, v: i64, a: i64, b: i64) -> ExactRational {
    let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
    rat(sign)
        * gap_weight(r, a)
        * gap_weight(r, b)
        * expansion::summand_value(&rat(a), &rat(b), &rat(r), &rat(v))
}

/// `(R/24) sum_{a,b} summand`, before taking the absolute value.
pub fn double_sum_raw(r: i64, v: i64) -> Result<ExactRational> {
    check_rv(r, v)?;
    let rows: Vec<ExactRational> = (0..=r)
        .into_par_iter()
        .map(|a| (0..=r).map(|b| double_sum_summand(r, v, a, b)).sum())
        .collect();
    let total: ExactRational = rows.into_iter().sum();
    Ok(total * rat(r) / rat(24))
}

/// `(1/(24R)) sum c_{l,m}(R,v) S^(l) S^(m)`, before taking the absolute value.
pub fn double_sum_moment_form(r: i64, v: i64, coeffs: &MonomialCoefficients) -> Result<ExactRational> {
    check_rv(r, v)?;
    let s: Vec<ExactRational> = (0..=moments::MAX_K)
        .map(|k| moment_closed(k, r as u64))
        .collect::<Result<_>>()?;
    let mut total = ExactRational::zero();
    for &(l, m) in coeffs.by_ab.keys() {
        total += coeffs.c_at(l, m, r, v) * &s[l as usize] * &s[m as usize];
    }
    Ok(total / rat(24 * r))
}

/// Signed common value of the raw double sum and its moment form.
pub fn double_sum_signed(r: i64, v: i64) -> Result<ExactRational> {
    let raw = double_sum_raw(r, v)?;
    let sep = double_sum_moment_form(r, v, &expand_coefficients())?;
    if raw != sep {
        return Err(Error::Disagreement(format!(
            "double sum {} != moment form {} at (R={r}, v={v})",
            format_rational(&raw),
            format_rational(&sep)
        )));
    }
    Ok(raw)
}

pub fn omega_double_sum(r: i64, v: i64) -> Result<ExactRational> {
    Ok(double_sum_signed(r, v)?.abs())
}

/// The moment sum `sum c_{l,m} S^(l) S^(m)` in the factored form for the
/// residue class of `R mod 3`.
pub fn branch_sum(r: i64, v: i64) -> ExactRational {
    let (rr, vv) = (rat(r), rat(v));
    let q = |a: i64, b: i64, c: i64, d: i64, e: i64, f: i64| {
        // a R^2 + b R v + c v^2 + d R + e v + f
        rat(a) * &rr * &rr + rat(b) * &rr * &vv + rat(c) * &vv * &vv + rat(d) * &rr + rat(e) * &vv + rat(f)
    };
    let lin = |a: i64, b: i64, c: i64| rat(a) * &rr + rat(b) * &vv + rat(c);
    match r.rem_euclid(3) {
        0 => {
            -frac(8, 27) * &rr * &rr * lin(1, -3, 0) * lin(2, -3, 0) * q(4, -12, 12, -8, 16, 3)
        }
        1 => {
            -frac(4, 27) * &rr * lin(2, 0, 1) * lin(1, -3, -1) * lin(4, -6, -1) * q(2, -6, 6, -1, -1, 0)
        }
        _ => {
            -frac(4, 27) * &rr * lin(2, 0, -1) * lin(2, -6, -1) * lin(2, -3, -1) * q(2, -6, 6, 2, -1, 0)
        }
    }
}

/// The moment sum as one trig expression in `cos(2R pi/3)` and
/// `sin(2R pi/3)/sqrt(3)`, valid for every residue class.
pub fn master_sum(r: i64, v: i64) -> ExactRational {
    let (rr, vv) = (rat(r), rat(v));
    let t = trig_at(2 * r as u64);
    let r2 = &rr * &rr;
    let k0 = -frac(2, 27)
        * &r2
        * (rat(2) * &rr - rat(6) * &vv - rat(1))
        * (rat(4) * &rr - rat(6) * &vv - rat(1))
        * (rat(4) * &r2 - rat(2) * &rr * (rat(6) * &vv + rat(1)) + rat(4) * &vv * (rat(3) * &vv + rat(1)) - rat(2));
    let kc = frac(4, 27)
        * &r2
        * (rat(2) * &rr - rat(4) * &vv - rat(1))
        * (rat(6) * &r2 - rat(3) * &rr * (rat(12) * &vv + rat(1)) + rat(36) * &vv * &vv + rat(6) * &vv + rat(1));
    let v2 = &vv * &vv;
    let ks = rat(12) * &r2 * &r2 - rat(12) * &r2 * &rr
        - &r2 * (rat(216) * &v2 + rat(12) * &vv - rat(5))
        + &rr * (rat(12) * &vv + rat(1)) * (rat(36) * &v2 + rat(6) * &vv - rat(1))
        - rat(2) * &vv * (rat(3) * &vv + rat(1)) * (rat(6) * &vv - rat(1)) * (rat(6) * &vv + rat(1));
    k0 + kc * t.cos_val + frac(4, 27) * &rr * ks * t.sin_over_sqrt3
}

/// Piecewise exact correlation before the absolute value.
pub fn omega_exact_signed(r: i64, v: i64) -> Result<ExactRational> {
    check_rv(r, v)?;
    let (rr, vv) = (rat(r), rat(v));
    let value = match r.rem_euclid(3) {
        0 => {
            frac(1, 81)
                * &rr
                * (&rr - rat(3) * &vv)
                * (rat(2) * &rr - rat(3) * &vv)
                * (rat(4) * &rr * &rr - rat(12) * &rr * &vv + rat(12) * &vv * &vv - rat(8) * &rr + rat(16) * &vv + rat(3))
        }
        1 => {
            frac(1, 162)
                * (rat(2) * &rr + rat(1))
                * (&rr - rat(3) * &vv - rat(1))
                * (rat(4) * &rr - rat(6) * &vv - rat(1))
                * (rat(2) * &rr * &rr - rat(6) * &rr * &vv + rat(6) * &vv * &vv - &rr - &vv)
        }
        _ => {
            frac(1, 162)
                * (rat(2) * &rr - rat(1))
                * (rat(2) * &rr - rat(6) * &vv - rat(1))
                * (rat(2) * &rr - rat(3) * &vv - rat(1))
                * (rat(2) * &rr * &rr - rat(6) * &rr * &vv + rat(6) * &vv * &vv + rat(2) * &rr - &vv)
        }
    };
    Ok(value)
}

pub fn omega_exact(r: i64, v: i64) -> Result<ExactRational> {
    Ok(omega_exact_signed(r, v)?.abs())
}

/// Leading-order prediction `(4/81) R (3v-R)(3v-2R)(R^2-3Rv+3v^2)`.
pub fn omega_asymptotic(r: i64, v: i64) -> Result<f64> {
    check_rv(r, v)?;
    if 3 * v - 2 * r < 0 {
        return Err(Error::Domain(format!(
            "gap (R={r}, v={v}) lies outside the angle"
        )));
    }
    let (rf, vf) = (r as f64, v as f64);
    Ok(4.0 / 81.0 * rf * (3.0 * vf - rf) * (3.0 * vf - 2.0 * rf) * (rf * rf - 3.0 * rf * vf + 3.0 * vf * vf))
}

/// Rounds to 15 significant digits so serialized floats are stable.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteSample {
    pub n: i64,
    pub ratio: String,
    pub approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    #[serde(rename = "R")]
    pub r: i64,
    pub v: i64,
    pub exact_value: String,
    pub signed_value: String,
    pub double_sum_value: String,
    pub exact_approx: f64,
    pub asymptotic_value: Option<f64>,
    pub asymptotic_relative_gap: Option<f64>,
    pub image_points: Vec<(i64, i64)>,
    pub squared_distances: Vec<String>,
    pub distance_product: Option<DistanceCheck>,
    pub finite_n_samples: Vec<FiniteSample>,
    pub warnings: Vec<String>,
}

/// Builds the full report for `(R, v)`. `sample_ns` lists the `n` values at
/// which the finite-size ratio is evaluated; values where the gap does not
/// fit are skipped.
pub fn correlation_report(r: i64, v: i64, sample_ns: &[i64]) -> Result<CorrelationReport> {
    let exact = omega_exact(r, v)?;
    let signed = omega_exact_signed(r, v)?;
    let double = omega_double_sum(r, v)?;
    if exact != double {
        return Err(Error::Disagreement(format!(
            "closed form {} != double sum {} at (R={r}, v={v})",
            format_rational(&exact),
            format_rational(&double)
        )));
    }
    let mut warnings = Vec::new();
    let (asym, gap, dist) = if 3 * v - 2 * r > 0 {
        let a = omega_asymptotic(r, v)?;
        let d = distance_product_check(r, v)?;
        let g = (rational_to_f64(&exact) / a - 1.0).abs();
        (Some(round15(a)), Some(round15(g)), Some(d))
    } else {
        warnings.push(format!(
            "3v-2R = {} <= 0: gap not strictly inside the angle, asymptotic fields omitted",
            3 * v - 2 * r
        ));
        (None, None, None)
    };
    let dist = dist.map(|d| DistanceCheck {
        lhs: round15(d.lhs),
        rhs: round15(d.rhs),
        rel_error: round15(d.rel_error),
        sixth_root_matches: d.sixth_root_matches,
    });
    let cfg = image_configuration(r, v)?;
    let mut samples = Vec::new();
    for &n in sample_ns {
        if n < 3 || !gap_fits(n, 1, r, v) {
            warnings.push(format!("n = {n}: gap does not fit, sample skipped"));
            continue;
        }
        let q = finite_n_correlation(n, r, v)?;
        samples.push(FiniteSample {
            n,
            ratio: format_rational(&q),
            approx: round15(rational_to_f64(&q)),
        });
    }
    Ok(CorrelationReport {
        r,
        v,
        exact_value: format_rational(&exact),
        signed_value: format_rational(&signed),
        double_sum_value: format_rational(&double),
        exact_approx: round15(rational_to_f64(&exact)),
        asymptotic_value: asym,
        asymptotic_relative_gap: gap,
        image_points: cfg.points.to_vec(),
        squared_distances: cfg
            .squared_distances
            .iter()
            .map(|((i, j), d)| format!("d{i}{j}^2={d}"))
            .collect(),
        distance_product: dist,
        finite_n_samples: samples,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn limit_ratio_values() {
        assert_eq!(e_ratio_limit(1, 3), rat(1));
        assert_eq!(e_ratio_limit(1, 2), rat(0));
        assert_eq!(e_ratio_limit(2, 5), rat(30));
    }

    #[test]
    fn finite_ratio_small_n() {
        for n in 3..=12 {
            assert_eq!(e_ratio_finite(n, 1, 3).unwrap(), rat(1));
            assert_eq!(e_ratio_finite(n, 1, 2).unwrap(), rat(0));
            for i in 1..=n {
                for j in i + 1..=n {
                    let literal = ExactRational::new(m_e(n, 1, i, j).unwrap(), m_e(n, 1, 1, 3).unwrap());
                    assert_eq!(e_ratio_finite(n, i, j).unwrap(), literal, "n={n} i={i} j={j}");
                }
            }
        }
        assert!(e_ratio_finite(2, 1, 2).is_err());
    }

    #[test]
    fn finite_correlation_routes_agree() {
        for n in 3..=12 {
            for r in 1..=6 {
                for v in 1..=6 {
                    if !gap_fits(n, 1, r, v) {
                        assert!(finite_n_correlation(n, r, v).is_err());
                        continue;
                    }
                    let fast = finite_n_correlation(n, r, v).unwrap();
                    assert_eq!(fast, finite_n_correlation_from_counts(n, r, v).unwrap());
                    assert!(!fast.is_negative());
                }
            }
        }
    }

    #[test]
    fn exact_spot_values() {
        let cases = [((1, 2), 11), ((3, 3), 42), ((1, 1), 0), ((3, 2), 0), ((2, 2), 5), ((2, 3), 45)];
        for ((r, v), want) in cases {
            assert_eq!(omega_exact(r, v).unwrap(), rat(want), "({r},{v})");
            assert_eq!(omega_double_sum(r, v).unwrap(), rat(want), "({r},{v})");
        }
        assert_eq!(omega_exact_signed(4, 2).unwrap(), rat(-1));
        assert!(omega_exact(0, 2).is_err());
    }

    #[test]
    fn branches_match_exact_and_master() {
        for r in 1..=30 {
            for v in 1..=30 {
                let s = branch_sum(r, v);
                assert_eq!(-&s / rat(24 * r), omega_exact_signed(r, v).unwrap());
                assert_eq!(master_sum(r, v), s, "R={r} v={v}");
            }
        }
    }

    #[test]
    fn summand_symmetry() {
        for r in 1..=6 {
            for v in 1..=6 {
                for a in 0..=r {
                    assert!(double_sum_summand(r, v, a, a).is_zero());
                    for b in 0..=r {
                        assert_eq!(double_sum_summand(r, v, a, b), double_sum_summand(r, v, b, a));
                    }
                }
            }
        }
    }

    #[test]
    fn branch_factorization_matches_expanded_polynomial() {
        use expansion::{Poly4, R as RV, W as WV};
        let r = Poly4::var(RV);
        // w stands for v in this test
        let v = Poly4::var(WV);
        let lin = |a: i64, b: i64, c: i64| &(&r.scale(a) + &v.scale(b)) + &Poly4::constant(c);
        let quad = |a: i64, b: i64, c: i64, d: i64, e: i64, f: i64| {
            let p = &(&(&r * &r).scale(a) + &(&r * &v).scale(b)) + &(&v * &v).scale(c);
            &(&p + &r.scale(d)) + &(&v.scale(e) + &Poly4::constant(f))
        };
        // 81 * omega for R = 0 mod 3, 162 * omega otherwise
        let polys = [
            &(&(&r * &lin(1, -3, 0)) * &lin(2, -3, 0)) * &quad(4, -12, 12, -8, 16, 3),
            &(&(&lin(2, 0, 1) * &lin(1, -3, -1)) * &lin(4, -6, -1)) * &quad(2, -6, 6, -1, -1, 0),
            &(&(&lin(2, 0, -1) * &lin(2, -6, -1)) * &lin(2, -3, -1)) * &quad(2, -6, 6, 2, -1, 0),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let rr = rng.gen_range(1i64..500);
            let vv = rng.gen_range(1i64..500);
            let class = rr.rem_euclid(3) as usize;
            let scale = if class == 0 { 81 } else { 162 };
            let expanded = polys[class].eval_int([0, 0, rr, vv]) / rat(scale);
            assert_eq!(expanded, omega_exact_signed(rr, vv).unwrap());
        }
    }

    #[test]
    fn asymptotic_domain() {
        assert_eq!(omega_asymptotic(3, 2).unwrap(), 0.0);
        assert!(omega_asymptotic(4, 2).is_err());
        let ratio = |r: i64, v: i64| rational_to_f64(&omega_exact(r, v).unwrap()) / omega_asymptotic(r, v).unwrap();
        assert!((ratio(300, 300) - 1.0).abs() < 0.02);
        let trend: Vec<f64> = (10..=100).step_by(10).map(|t| ratio(3 * t, 4 * t)).collect();
        assert!(trend.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs()));
    }

    #[test]
    fn asymptotic_sandwich_along_rays() {
        // v = rho R for rho in {1, 4/3, 2}; R a multiple of 3 keeps v integral
        for (num, den) in [(1, 1), (4, 3), (2, 1)] {
            let err = |r: i64| {
                let v = r * num / den;
                let e = rational_to_f64(&omega_exact(r, v).unwrap()) / omega_asymptotic(r, v).unwrap();
                (e - 1.0).abs()
            };
            let c = 30.0 * err(30);
            let mut prev = f64::INFINITY;
            for r in (30..=600).step_by(3) {
                let e = err(r);
                assert!(e <= c / r as f64 * 1.000001, "rho={num}/{den} R={r}");
                assert!(e <= prev, "rho={num}/{den} R={r} not monotone");
                prev = e;
            }
        }
    }

    #[test]
    fn report_fields() {
        let rep = correlation_report(3, 2, &[10]).unwrap();
        assert_eq!(rep.exact_value, "0");
        assert!(rep.asymptotic_value.is_none());
        assert!(!rep.warnings.is_empty());
        let rep = correlation_report(1, 2, &[5, 10]).unwrap();
        assert_eq!(rep.exact_value, "11");
        assert_eq!(rep.finite_n_samples.len(), 2);
        assert!(rep.distance_product.unwrap().rel_error < 1e-9);
    }

    #[test]
    fn rounding() {
        assert_eq!(round15(0.1 + 0.2), 0.3);
        assert_eq!(round15(0.0), 0.0);
    }
}
