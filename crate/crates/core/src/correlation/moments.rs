//! Moments `S^(k)(R; x) = sum_i (-R)_i (R)_i / ((1)_i (1/2)_i) x^i i^k`.
//!
//! At `x = 1/4` the moments are rational combinations of `cos(R pi/3)` and
//! `sin(R pi/3)/sqrt(3)`, taken here from the exact `R mod 6` table.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{frac, rat, trig_at, ExactRational};

pub const MAX_K: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentValue {
    pub k: u32,
    pub r: u64,
    pub value: ExactRational,
}

fn check_k(k: u32) -> Result<()> {
    if k > MAX_K {
        return Err(Error::OutOfRange(format!("moment order {k} exceeds {MAX_K}")));
    }
    Ok(())
}

/// Series terms `t_i = (-R)_i (R)_i / ((1)_i (1/2)_i) x^i` for `i = 0..=R`.
pub fn series_terms(r: u64, x: &ExactRational) -> Vec<ExactRational> {
    let rr = rat(r as i64);
    let half = frac(1, 2);
    let mut terms = Vec::with_capacity(r as usize + 1);
    let mut t = ExactRational::one();
    for i in 0..=r {
        terms.push(t.clone());
        let ii = rat(i as i64);
        t = t * (&ii - &rr) * (&ii + &rr) / ((&ii + ExactRational::one()) * (&ii + &half)) * x;
    }
    terms
}

/// Finite-sum value of `S^(k)(R; x)`.
pub fn moment_direct(k: u32, r: u64, x: &ExactRational) -> Result<ExactRational> {
    check_k(k)?;
    let mut total = ExactRational::zero();
    for (i, t) in series_terms(r, x).into_iter().enumerate() {
        total += t * rat((i as i64).pow(k));
    }
    Ok(total)
}

/// Descending moment `sum_i t_i i(i-1)...(i-k+1)` at `x = 1/4`, summed directly.
pub fn descending_direct(k: u32, r: u64) -> Result<ExactRational> {
    check_k(k)?;
    let mut total = ExactRational::zero();
    for (i, t) in series_terms(r, &frac(1, 4)).into_iter().enumerate() {
        let falling: i64 = (0..k as i64).map(|s| i as i64 - s).product();
        total += t * rat(falling);
    }
    Ok(total)
}

fn trig_parts(r: u64) -> (ExactRational, ExactRational, ExactRational) {
    let t = trig_at(r);
    (rat(r as i64), t.cos_val, t.sin_over_sqrt3)
}

/// Closed form of the descending moments at `x = 1/4`.
pub fn descending_closed(k: u32, r: u64) -> Result<ExactRational> {
    check_k(k)?;
    let (rr, c, s) = trig_parts(r);
    let r2 = &rr * &rr;
    let r4 = &r2 * &r2;
    let v = match k {
        0 => c,
        1 => -&rr * s,
        2 => -&r2 / rat(3) * c + &rr / rat(3) * s,
        3 => &r2 / rat(3) * c + &rr * (&r2 - rat(2)) / rat(3) * s,
        4 => &r2 * (&r2 - rat(9)) / rat(9) * c - rat(2) * &rr * (rat(3) * &r2 - rat(7)) / rat(9) * s,
        _ => {
            -rat(10) * &r2 * (&r2 - rat(9)) / rat(27) * c
                - &rr * (rat(3) * &r4 - rat(75) * &r2 + rat(152)) / rat(27) * s
        }
    };
    Ok(v)
}

/// Stirling numbers of the second kind `{k, j}` for `k <= 5`.
fn stirling2(k: u32, j: u32) -> i64 {
    const TABLE: [[i64; 6]; 6] = [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [0, 1, 3, 1, 0, 0],
        [0, 1, 7, 6, 1, 0],
        [0, 1, 15, 25, 10, 1],
    ];
    TABLE[k as usize][j as usize]
}

/// `S^(k)(R; 1/4)` assembled from descending moments via `i^k = sum_j {k,j} i^(j falling)`.
pub fn moment_from_descending(k: u32, r: u64) -> Result<ExactRational> {
    check_k(k)?;
    let mut total = ExactRational::zero();
    for j in 0..=k {
        total += rat(stirling2(k, j)) * descending_closed(j, r)?;
    }
    Ok(total)
}

/// Closed form of `S^(k)(R; 1/4)` from the trig table.
pub fn moment_closed(k: u32, r: u64) -> Result<ExactRational> {
    check_k(k)?;
    let (rr, c, s) = trig_parts(r);
    let r2 = &rr * &rr;
    let r4 = &r2 * &r2;
    let v = match k {
        0 => c,
        1 => -&rr * s,
        2 => -&r2 / rat(3) * c - rat(2) * &rr / rat(3) * s,
        3 => &rr * (&r2 - rat(2)) / rat(3) * s - rat(2) * &r2 / rat(3) * c,
        4 => &r2 * (&r2 - rat(12)) / rat(9) * c + rat(2) * &rr * (rat(6) * &r2 - rat(5)) / rat(9) * s,
        _ => {
            -&rr * (rat(3) * &r4 - rat(120) * &r2 + rat(74)) / rat(27) * s
                + rat(10) * &r2 * (rat(2) * &r2 - rat(9)) / rat(27) * c
        }
    };
    Ok(v)
}

pub fn moment_value(k: u32, r: u64) -> Result<MomentValue> {
    Ok(MomentValue {
        k,
        r,
        value: moment_closed(k, r)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        let q = frac(1, 4);
        assert_eq!(moment_direct(0, 0, &frac(7, 3)).unwrap(), rat(1));
        assert_eq!(moment_direct(0, 3, &q).unwrap(), rat(-1));
        assert_eq!(moment_direct(1, 2, &q).unwrap(), rat(-1));
        assert_eq!(moment_direct(5, 3, &q).unwrap(), rat(-30));
        assert_eq!(moment_closed(5, 3).unwrap(), rat(-30));
        assert!(moment_direct(6, 3, &q).is_err());
    }

    #[test]
    fn order_zero_is_cosine() {
        for r in 0..30 {
            assert_eq!(moment_closed(0, r).unwrap(), trig_at(r).cos_val);
        }
    }

    #[test]
    fn closed_forms_agree_with_sums() {
        for k in 0..=MAX_K {
            for r in 0..=40 {
                let direct = moment_direct(k, r, &frac(1, 4)).unwrap();
                assert_eq!(moment_closed(k, r).unwrap(), direct, "k={k} R={r}");
                assert_eq!(descending_closed(k, r).unwrap(), descending_direct(k, r).unwrap());
                assert_eq!(moment_from_descending(k, r).unwrap(), direct);
            }
        }
    }
}
