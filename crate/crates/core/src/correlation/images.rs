//! The gap's position in the corner frame and its five mirror images.
//!
//! A point `(p, q)` stands for `(p, q*sqrt(3))`. The two sides of the
//! 60 degree angle are the lines `l1` and `l2` through the origin; `l2` is
//! the vertical axis.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

pub type ImagePoint = (i64, i64);

/// Mirror image in `l1`.
pub fn reflect_l1((p, q): ImagePoint) -> ImagePoint {
    debug_assert_eq!((p - q).rem_euclid(2), 0);
    ((p - 3 * q) / 2, -(p + q) / 2)
}

/// Mirror image in `l2`.
pub fn reflect_l2((p, q): ImagePoint) -> ImagePoint {
    (-p, q)
}

pub fn squared_distance(u: ImagePoint, w: ImagePoint) -> i128 {
    let dp = (u.0 - w.0) as i128;
    let dq = (u.1 - w.1) as i128;
    dp * dp + 3 * dq * dq
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageConfiguration {
    pub r: i64,
    pub v: i64,
    pub points: [ImagePoint; 6],
    /// `d(O_i, O_j)^2` for `i < j`, in lexicographic pair order.
    pub squared_distances: Vec<((usize, usize), i128)>,
}

impl ImageConfiguration {
    pub fn squared_distance(&self, i: usize, j: usize) -> i128 {
        squared_distance(self.points[i - 1], self.points[j - 1])
    }

    /// Product of all 15 squared distances.
    pub fn distance_square_product(&self) -> BigInt {
        self.squared_distances
            .iter()
            .fold(BigInt::one(), |acc, (_, d)| acc * BigInt::from(*d))
    }
}

pub fn image_configuration(r: i64, v: i64) -> Result<ImageConfiguration> {
    if r < 1 || v < 1 {
        return Err(Error::Domain(format!("images need R, v >= 1, got ({r}, {v})")));
    }
    let o1 = (3 * v - 2 * r, -v);
    let o2 = reflect_l1(o1);
    let o3 = reflect_l2(o1);
    let o4 = reflect_l2(o2);
    let o5 = reflect_l1(o3);
    let o6 = reflect_l1(o4);
    let points = [o1, o2, o3, o4, o5, o6];
    let mut squared_distances = Vec::with_capacity(15);
    for i in 0..6 {
        for j in i + 1..6 {
            squared_distances.push(((i + 1, j + 1), squared_distance(points[i], points[j])));
        }
    }
    Ok(ImageConfiguration {
        r,
        v,
        points,
        squared_distances,
    })
}

/// A real number of the form `radicand^(1/index)`, kept symbolic so two
/// root expressions can be compared exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootForm {
    pub radicand: BigInt,
    pub index: u32,
}

impl RootForm {
    pub fn to_f64(&self) -> f64 {
        ln_big(&self.radicand) / self.index as f64
    }
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 900 {
        return x.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    (x >> shift as usize).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Cube root of the product of distances: `(prod d)^(1/3) = (prod d^2)^(1/6)`.
pub fn cube_root_form(cfg: &ImageConfiguration) -> RootForm {
    RootForm {
        radicand: cfg.distance_square_product(),
        index: 6,
    }
}

/// Sixth root of `prod d^(q_i q_j / 2)` for charges `q`. Each exponent
/// `q_i q_j / 2` must be an even integer so that `d^(exponent)` is a power
/// of the exact squared distance.
pub fn charged_root_form(cfg: &ImageConfiguration, charges: [i64; 6]) -> Result<RootForm> {
    let mut radicand = BigInt::one();
    for ((i, j), d2) in &cfg.squared_distances {
        let twice_exp = charges[i - 1] * charges[j - 1];
        if twice_exp % 4 != 0 || twice_exp < 0 {
            return Err(Error::Domain(format!(
                "exponent {twice_exp}/2 is not a non-negative even integer"
            )));
        }
        radicand *= BigInt::from(*d2).pow((twice_exp / 4) as u32);
    }
    Ok(RootForm { radicand, index: 6 })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_error: f64,
    /// Whether the charge-weighted sixth root coincides with the cube root.
    pub sixth_root_matches: bool,
}

/// Compares `(4/81) R (3v-R)(3v-2R)(R^2-3Rv+3v^2)` with
/// `(1/1944) (prod d(O_i,O_j))^(1/3)`.
pub fn distance_product_check(r: i64, v: i64) -> Result<DistanceCheck> {
    if 3 * v - 2 * r <= 0 {
        return Err(Error::Domain(format!(
            "gap (R={r}, v={v}) is not strictly inside the angle"
        )));
    }
    let cfg = image_configuration(r, v)?;
    let (rf, vf) = (r as f64, v as f64);
    let lhs = 4.0 / 81.0 * rf * (3.0 * vf - rf) * (3.0 * vf - 2.0 * rf) * (rf * rf - 3.0 * rf * vf + 3.0 * vf * vf);
    let cube = cube_root_form(&cfg);
    let rhs = (cube.to_f64() - 1944f64.ln()).exp();
    let sixth = charged_root_form(&cfg, [2; 6])?;
    Ok(DistanceCheck {
        lhs,
        rhs,
        rel_error: ((lhs - rhs) / lhs).abs(),
        sixth_root_matches: sixth == cube,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_parameters() {
        let cfg = image_configuration(3, 4).unwrap();
        assert_eq!(cfg.points, [(6, -4), (9, -1), (-6, -4), (-9, -1), (3, 5), (-3, 5)]);
        assert_eq!(cfg.squared_distance(1, 2), 36);
        assert_eq!(cfg.squared_distance(1, 3), 144);
        assert_eq!(cfg.squared_distance(1, 6), 324);
    }

    #[test]
    fn distance_formulas() {
        for r in 1..15 {
            for v in 1..15 {
                let cfg = image_configuration(r, v).unwrap();
                let (r, v) = (r as i128, v as i128);
                assert_eq!(cfg.squared_distance(1, 2), 4 * r * r);
                assert_eq!(cfg.squared_distance(1, 3), 4 * (3 * v - 2 * r).pow(2));
                let q = 12 * (r * r - 3 * r * v + 3 * v * v);
                assert_eq!(cfg.squared_distance(1, 4), q);
                assert_eq!(cfg.squared_distance(1, 5), q);
                assert_eq!(cfg.squared_distance(1, 6), 4 * (3 * v - r).pow(2));
            }
        }
    }

    #[test]
    fn reflection_closure() {
        for r in 1..10 {
            for v in 1..10 {
                let cfg = image_configuration(r, v).unwrap();
                let [_, _, o3, o4, o5, o6] = cfg.points;
                assert_eq!(reflect_l1(o4), reflect_l2(o5));
                assert_eq!(reflect_l1(o3), o5);
                assert_eq!(reflect_l2(o5), o6);
                // reflections are involutions
                for p in cfg.points {
                    assert_eq!(reflect_l1(reflect_l1(p)), p);
                    assert_eq!(reflect_l2(reflect_l2(p)), p);
                }
            }
        }
    }

    #[test]
    fn swapping_mirrors_preserves_distances() {
        // swapping l1 and l2 images permutes O2<->O3, O4<->O5, fixes O1, O6
        let perm = [1, 3, 2, 5, 4, 6];
        for (r, v) in [(3, 4), (2, 5), (7, 6)] {
            let cfg = image_configuration(r, v).unwrap();
            let mut a: Vec<i128> = cfg.squared_distances.iter().map(|(_, d)| *d).collect();
            let mut b: Vec<i128> = cfg
                .squared_distances
                .iter()
                .map(|((i, j), _)| cfg.squared_distance(perm[i - 1], perm[j - 1]))
                .collect();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn product_identity() {
        for (r, v) in [(3, 4), (10, 15), (1, 1), (50, 34)] {
            let chk = distance_product_check(r, v).unwrap();
            assert!(chk.rel_error < 1e-9, "{r},{v}: {chk:?}");
            assert!(chk.sixth_root_matches);
        }
        assert!(distance_product_check(3, 2).is_err());
    }

    #[test]
    fn odd_charges_rejected() {
        let cfg = image_configuration(3, 4).unwrap();
        assert!(charged_root_form(&cfg, [1; 6]).is_err());
    }
}
