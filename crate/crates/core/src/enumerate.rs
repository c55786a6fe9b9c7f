//! Tiling counters: an exhaustive perfect-matching oracle over the dual graph
//! and a nonintersecting-path determinant engine with the Laplace expansion
//! used for the gapped region.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{as_integer, binomial, factorial, rat, ExactInteger, ExactRational};
use crate::region::{gap_cells, gap_fits, Orientation, Region};

/// Cell cap applied by [`count_matchings`].
pub const DEFAULT_CELL_CAP: usize = 120;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![ExactRational::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactRational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<ExactRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactRational) {
        self.entries[i * self.cols + j] = v;
    }

    /// Submatrix on the given 0-based row and column indices, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<ExactMatrix> {
        if rows.iter().any(|&r| r >= self.rows) || cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::DimensionMismatch(format!(
                "selection out of bounds for {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(ExactMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        }))
    }

    /// Determinant by Gaussian elimination over the rationals. The 0x0
    /// determinant is 1.
    pub fn determinant(&self) -> Result<ExactRational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.entries.clone();
        let mut det = ExactRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                return Ok(ExactRational::zero());
            };
            if p != c {
                for k in 0..n {
                    m.swap(c * n + k, p * n + k);
                }
                det = -det;
            }
            let pivot = m[c * n + c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if m[r * n + c].is_zero() {
                    continue;
                }
                let factor = &m[r * n + c] / &pivot;
                for k in c..n {
                    let delta = &factor * &m[c * n + k];
                    m[r * n + k] -= delta;
                }
            }
        }
        Ok(det)
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<ExactRational> {
        if rows.len() != cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "minor with {} rows and {} columns",
                rows.len(),
                cols.len()
            )));
        }
        self.select(rows, cols)?.determinant()
    }
}

/// Counts perfect matchings of the region's dual graph (lozenge tilings),
/// refusing regions above [`DEFAULT_CELL_CAP`] cells.
pub fn count_matchings(region: &Region) -> Result<ExactInteger> {
    count_matchings_capped(region, DEFAULT_CELL_CAP)
}

pub fn count_matchings_capped(region: &Region, cap: usize) -> Result<ExactInteger> {
    let cells: Vec<_> = region.cells.iter().copied().collect();
    if cells.len() > cap {
        return Err(Error::CellCapExceeded {
            cells: cells.len(),
            cap,
        });
    }
    let ups = cells.iter().filter(|c| c.orientation == Orientation::Up).count();
    if 2 * ups != cells.len() {
        return Ok(BigInt::zero());
    }
    let adjacency: Vec<Vec<usize>> = cells
        .iter()
        .map(|c| {
            let mut nbs: Vec<usize> = c
                .neighbors()
                .iter()
                .filter_map(|nb| cells.binary_search(nb).ok())
                .collect();
            nbs.sort_unstable();
            nbs
        })
        .collect();
    let words = cells.len().div_ceil(64).max(1);
    let mut full = vec![0u64; words];
    for idx in 0..cells.len() {
        full[idx / 64] |= 1 << (idx % 64);
    }
    let mut oracle = Oracle {
        adjacency,
        memo: HashMap::new(),
    };
    Ok(oracle.count(full))
}

struct Oracle {
    adjacency: Vec<Vec<usize>>,
    memo: HashMap<Vec<u64>, BigInt>,
}

fn has(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn clear(set: &mut [u64], i: usize) {
    set[i / 64] &= !(1 << (i % 64));
}

fn first_set(set: &[u64]) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

impl Oracle {
    /// Removes forced pairs (a remaining cell with a single remaining
    /// neighbour) until none are left. Returns false if some cell is isolated.
    fn propagate(&self, set: &mut [u64]) -> bool {
        loop {
            let mut changed = false;
            for i in 0..self.adjacency.len() {
                if !has(set, i) {
                    continue;
                }
                let mut live = self.adjacency[i].iter().filter(|&&j| has(set, j));
                match (live.next(), live.next()) {
                    (None, _) => return false,
                    (Some(&j), None) => {
                        clear(set, i);
                        clear(set, j);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn count(&mut self, mut set: Vec<u64>) -> BigInt {
        if !self.propagate(&mut set) {
            return BigInt::zero();
        }
        // Branch on the first remaining cell in row-major order.
        let Some(c) = first_set(&set) else {
            return BigInt::one();
        };
        if let Some(v) = self.memo.get(&set) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for k in 0..self.adjacency[c].len() {
            let d = self.adjacency[c][k];
            if has(&set, d) {
                let mut next = set.clone();
                clear(&mut next, c);
                clear(&mut next, d);
                total += self.count(next);
            }
        }
        self.memo.insert(set, total.clone());
        total
    }
}

/// A lattice point on a path family: `(row, col)` of the last up-triangle
/// the path has crossed. Steps go from `(r, p)` to `(r, p + 2)` or
/// `(r - 1, p + 1)`.
pub type PathPoint = (i64, i64);

/// Number of lattice paths between two termini.
pub fn path_count(start: PathPoint, end: PathPoint) -> ExactInteger {
    let up = start.0 - end.0;
    if up < 0 {
        return BigInt::zero();
    }
    let d = end.1 - start.1 - up;
    if d < 0 || d % 2 != 0 {
        return BigInt::zero();
    }
    binomial(d / 2 + up, up)
}

/// Start and end points of the path families of `D(n, x)`.
///
/// Start labels 1 and 2 belong to the gap (absent for ungapped regions),
/// labels 3..=n sit on the western boundary from top to bottom. End labels
/// 1..=n are the bumps from the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathEndpointLabeling {
    pub starts: Vec<Option<PathPoint>>,
    pub ends: Vec<PathPoint>,
}

impl PathEndpointLabeling {
    pub fn new(n: i64, x: i64, gap: Option<(i64, i64)>) -> Self {
        let mut starts = Vec::new();
        match gap {
            Some((r, v)) => {
                let [top, _, _, right] = gap_cells(r, v);
                starts.push(Some((top.row, top.col)));
                starts.push(Some((right.row, right.col)));
            }
            None => {
                starts.push(None);
                starts.push(None);
            }
        }
        for row in (1..(2 * n - 4)).step_by(2) {
            starts.push(Some((row, -1)));
        }
        let ends = (1..=n).map(|i| (i - 1, 2 * x + 3 * (i - 1))).collect();
        PathEndpointLabeling { starts, ends }
    }

    pub fn n(&self) -> usize {
        self.ends.len()
    }

    /// Path-count entry for 1-based start label `s` and end label `e`.
    pub fn entry(&self, s: usize, e: usize) -> Result<ExactInteger> {
        let start = self
            .starts
            .get(s.wrapping_sub(1))
            .ok_or_else(|| Error::OutOfRange(format!("start label {s}")))?
            .ok_or_else(|| Error::OutOfRange(format!("start label {s} has no terminus")))?;
        let end = *self
            .ends
            .get(e.wrapping_sub(1))
            .ok_or_else(|| Error::OutOfRange(format!("end label {e}")))?;
        Ok(path_count(start, end))
    }

    /// The full path-count matrix; requires both gap termini.
    pub fn matrix(&self) -> Result<ExactMatrix> {
        let n = self.n();
        let mut rows = Vec::with_capacity(n);
        for s in 1..=n {
            let mut row = Vec::with_capacity(n);
            for e in 1..=n {
                row.push(ExactRational::from_integer(self.entry(s, e)?));
            }
            rows.push(row);
        }
        ExactMatrix::from_rows(rows)
    }
}

/// |det| of the path-count minor on 1-based start labels `rows` and end
/// labels `cols`.
pub fn lgv_count(labeling: &PathEndpointLabeling, rows: &[usize], cols: &[usize]) -> Result<ExactInteger> {
    if rows.len() != cols.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} start labels against {} end labels",
            rows.len(),
            cols.len()
        )));
    }
    let mut entries = Vec::with_capacity(rows.len());
    for &s in rows {
        let mut row = Vec::with_capacity(cols.len());
        for &e in cols {
            row.push(ExactRational::from_integer(labeling.entry(s, e)?));
        }
        entries.push(row);
    }
    let det = ExactMatrix::from_rows(entries)?.determinant()?;
    as_integer(&det.abs()).ok_or_else(|| Error::Domain("path determinant is not integral".into()))
}

/// `M(E(n, x, i, j))` from the path determinant: start labels 3..=n against
/// all end labels except `i` and `j`.
pub fn lgv_e_count(n: i64, x: i64, i: i64, j: i64) -> Result<ExactInteger> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::OutOfRange(format!("E({n},{x},{i},{j})")));
    }
    let labeling = PathEndpointLabeling::new(n, x, None);
    let rows: Vec<usize> = (3..=n as usize).collect();
    let cols: Vec<usize> = (1..=n as usize)
        .filter(|&c| c != i as usize && c != j as usize)
        .collect();
    lgv_count(&labeling, &rows, &cols)
}

/// Weight `(R+a-1)! / ((2a)! (R-a)!)` attached to column `2v - R + a`.
pub fn gap_weight(r: i64, a: i64) -> ExactRational {
    ExactRational::new(
        factorial((r + a - 1) as usize),
        factorial((2 * a) as usize) * factorial((r - a) as usize),
    )
}

/// The 2x2 minor of the gap rows on the columns `a` and `b` of the window.
pub fn gap_minor(r: i64, a: i64, b: i64) -> ExactRational {
    let m = [
        [binomial(r + a - 1, 2 * a), binomial(r + b - 1, 2 * b)],
        [binomial(r + a - 1, 2 * a - 1), binomial(r + b - 1, 2 * b - 1)],
    ];
    ExactRational::from_integer(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0])
}

pub fn gap_minor_closed(r: i64, a: i64, b: i64) -> ExactRational {
    rat(2 * r * (b - a)) * gap_weight(r, a) * gap_weight(r, b)
}

/// Tiling count of `DGap(n, 1, R, v)` by Laplace expansion along the two
/// gap rows. `e_count(i, j)` must return `M(E(n, 1, i, j))`.
pub fn count_gapped(
    n: i64,
    r: i64,
    v: i64,
    mut e_count: impl FnMut(i64, i64) -> Result<ExactInteger>,
) -> Result<ExactInteger> {
    if !gap_fits(n, 1, r, v) {
        return Err(Error::OutOfRange(format!(
            "gap (R={r}, v={v}) does not fit in D({n},1)"
        )));
    }
    let mut sum = ExactRational::zero();
    for a in 0..=r {
        for b in a + 1..=r {
            let (i, j) = (2 * v - r + a, 2 * v - r + b);
            if i < 1 || j > n {
                continue;
            }
            let e = e_count(i, j)?;
            if e.is_zero() {
                continue;
            }
            let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
            sum += rat(sign * (b - a)) * gap_weight(r, a) * gap_weight(r, b) * ExactRational::from_integer(e);
        }
    }
    let total = (rat(2 * r) * sum).abs();
    as_integer(&total).ok_or_else(|| Error::Domain("Laplace expansion produced a non-integer".into()))
}

/// Tiling count of `DGap(n, 1, R, v)` as the |det| of the full path matrix.
pub fn count_gapped_determinant(n: i64, r: i64, v: i64) -> Result<ExactInteger> {
    if !gap_fits(n, 1, r, v) {
        return Err(Error::OutOfRange(format!(
            "gap (R={r}, v={v}) does not fit in D({n},1)"
        )));
    }
    let labeling = PathEndpointLabeling::new(n, 1, Some((r, v)));
    let labels: Vec<usize> = (1..=n as usize).collect();
    lgv_count(&labeling, &labels, &labels)
}
