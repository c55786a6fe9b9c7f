//! Triangular-lattice regions: the D, D-with-gap, D-zero, E, F and G families.
//!
//! Cells are addressed by `(row, col)`. Rows count downward from the top
//! side; `col` is the position of the unit triangle inside its row, counted
//! rightward from the western boundary. A cell points up iff `row + col` is
//! even. Row `r` of a region with parameters `(n, x)` spans
//! `0..=min(2x + 3r, 2x + 4n - 1 - r)`, and bump `i` (1-based, from the top)
//! is the up-triangle at `(i - 1, 2x + 3(i - 1))`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Up,
    Down,
}

impl Orientation {
    pub fn at(row: i64, col: i64) -> Orientation {
        if (row + col).rem_euclid(2) == 0 {
            Orientation::Up
        } else {
            Orientation::Down
        }
    }

    pub fn letter(self) -> char {
        match self {
            Orientation::Up => 'U',
            Orientation::Down => 'D',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitTriangle {
    pub row: i64,
    pub col: i64,
    pub orientation: Orientation,
}

impl UnitTriangle {
    pub fn new(row: i64, col: i64) -> Self {
        UnitTriangle {
            row,
            col,
            orientation: Orientation::at(row, col),
        }
    }

    /// The three cells sharing an edge with this one (they have the opposite
    /// orientation). Whether they exist in a region is up to the caller.
    pub fn neighbors(&self) -> [UnitTriangle; 3] {
        let (r, k) = (self.row, self.col);
        match self.orientation {
            Orientation::Up => [
                UnitTriangle::new(r, k - 1),
                UnitTriangle::new(r, k + 1),
                UnitTriangle::new(r + 1, k),
            ],
            Orientation::Down => [
                UnitTriangle::new(r - 1, k),
                UnitTriangle::new(r, k - 1),
                UnitTriangle::new(r, k + 1),
            ],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionSpec {
    D { n: i64, x: i64 },
    DGap { n: i64, x: i64, r: i64, v: i64 },
    DZero { n: i64, x: i64 },
    E { n: i64, x: i64, i: i64, j: i64 },
    F { n: i64, x: i64, i: i64 },
    G { n: i64, x: i64 },
}

impl RegionSpec {
    pub fn family(&self) -> &'static str {
        match self {
            RegionSpec::D { .. } => "D",
            RegionSpec::DGap { .. } => "DGap",
            RegionSpec::DZero { .. } => "DZero",
            RegionSpec::E { .. } => "E",
            RegionSpec::F { .. } => "F",
            RegionSpec::G { .. } => "G",
        }
    }

    pub fn params(&self) -> Vec<i64> {
        match *self {
            RegionSpec::D { n, x } | RegionSpec::DZero { n, x } | RegionSpec::G { n, x } => {
                vec![n, x]
            }
            RegionSpec::DGap { n, x, r, v } => vec![n, x, r, v],
            RegionSpec::E { n, x, i, j } => vec![n, x, i, j],
            RegionSpec::F { n, x, i } => vec![n, x, i],
        }
    }

    pub fn from_parts(family: &str, p: &[i64]) -> Result<RegionSpec> {
        let need = |k: usize| -> Result<()> {
            if p.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "family {family} takes {k} parameters, got {}",
                    p.len()
                )))
            }
        };
        let spec = match family {
            "D" => {
                need(2)?;
                RegionSpec::D { n: p[0], x: p[1] }
            }
            "DGap" => {
                need(4)?;
                RegionSpec::DGap { n: p[0], x: p[1], r: p[2], v: p[3] }
            }
            "DZero" => {
                need(2)?;
                RegionSpec::DZero { n: p[0], x: p[1] }
            }
            "E" => {
                need(4)?;
                RegionSpec::E { n: p[0], x: p[1], i: p[2], j: p[3] }
            }
            "F" => {
                need(3)?;
                RegionSpec::F { n: p[0], x: p[1], i: p[2] }
            }
            "G" => {
                need(2)?;
                RegionSpec::G { n: p[0], x: p[1] }
            }
            other => return Err(Error::Parse(format!("unknown region family {other:?}"))),
        };
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidSpec {
                spec: self.to_string(),
                reason: reason.to_string(),
            })
        };
        match *self {
            RegionSpec::G { x, .. } if x < 0 => bad("x must be non-negative"),
            RegionSpec::G { .. } => Ok(()),
            RegionSpec::D { n, x } => {
                if n < 2 || x < 0 {
                    bad("requires n >= 2 and x >= 0")
                } else {
                    Ok(())
                }
            }
            RegionSpec::DZero { n, x } => {
                if n < 3 || x < 0 {
                    bad("requires n >= 3 and x >= 0")
                } else {
                    Ok(())
                }
            }
            RegionSpec::E { n, x, i, j } => {
                if x < 0 || !(1 <= i && i < j && j <= n) {
                    bad("requires 1 <= i < j <= n and x >= 0")
                } else {
                    Ok(())
                }
            }
            RegionSpec::F { n, x, i } => {
                if x < 0 || !(1 <= i && i <= n) {
                    bad("requires 1 <= i <= n and x >= 0")
                } else {
                    Ok(())
                }
            }
            RegionSpec::DGap { n, x, r, v } => {
                if n < 2 || x < 0 || r < 1 || v < 1 {
                    return bad("requires n >= 2, x >= 0, R >= 1, v >= 1");
                }
                if !gap_fits(n, x, r, v) {
                    return bad("gap does not lie inside the region");
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.family(), params.join(","))
    }
}

impl FromStr for RegionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<RegionSpec> {
        let s = s.trim();
        let open = s
            .find('(')
            .ok_or_else(|| Error::Parse(format!("region spec {s:?} lacks '('")))?;
        if !s.ends_with(')') {
            return Err(Error::Parse(format!("region spec {s:?} lacks ')'")));
        }
        let family = s[..open].trim();
        let params = s[open + 1..s.len() - 1]
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("parameter {t:?}: {e}")))
            })
            .collect::<Result<Vec<i64>>>()?;
        RegionSpec::from_parts(family, &params)
    }
}

fn right_end(n: i64, x: i64, r: i64) -> i64 {
    (2 * x + 3 * r).min(2 * x + 4 * n - 1 - r)
}

/// Bump `i` (1-based) of the `(n, x)` boundary.
pub fn bump_cell(x: i64, i: i64) -> UnitTriangle {
    UnitTriangle::new(i - 1, 2 * x + 3 * (i - 1))
}

/// The four cells removed by the side-2 gap with parameters `(R, v)`:
/// the top up-cell first, then the bottom row left to right.
pub fn gap_cells(r: i64, v: i64) -> [UnitTriangle; 4] {
    let p = 6 * v - 4 * r;
    [
        UnitTriangle::new(2 * v - 2, p),
        UnitTriangle::new(2 * v - 1, p - 1),
        UnitTriangle::new(2 * v - 1, p),
        UnitTriangle::new(2 * v - 1, p + 1),
    ]
}

fn in_rows(n: i64, x: i64, nrows: i64, c: &UnitTriangle) -> bool {
    let in_body = c.row >= 0 && c.row < nrows && c.col >= 0 && c.col <= right_end(n, x, c.row);
    let is_bump = c.row >= 0 && c.row < n && *c == bump_cell(x, c.row + 1);
    in_body || is_bump
}

/// Whether the gap `(R, v)` lies entirely inside `D(n, x)`.
pub fn gap_fits(n: i64, x: i64, r: i64, v: i64) -> bool {
    if n < 2 || r < 1 || v < 1 {
        return false;
    }
    let nrows = (2 * n - 4).max(0);
    gap_cells(r, v).iter().all(|c| in_rows(n, x, nrows, c))
}

fn base_cells(n: i64, x: i64, nrows: i64) -> BTreeSet<UnitTriangle> {
    let mut cells = BTreeSet::new();
    for r in 0..nrows {
        for k in 0..=right_end(n, x, r) {
            cells.insert(UnitTriangle::new(r, k));
        }
    }
    for i in 1..=n {
        cells.insert(bump_cell(x, i));
    }
    cells
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub cells: BTreeSet<UnitTriangle>,
    pub spec: Option<RegionSpec>,
}

impl Region {
    pub fn from_cells(cells: impl IntoIterator<Item = UnitTriangle>) -> Region {
        Region {
            cells: cells.into_iter().collect(),
            spec: None,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &UnitTriangle) -> bool {
        self.cells.contains(c)
    }

    /// Line-oriented text form: an optional `# spec:` header followed by one
    /// `row col U|D` line per cell in sorted order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(spec) = &self.spec {
            out.push_str(&format!("# spec: {spec}\n"));
        }
        out.push_str(&format!("# cells: {}\n", self.cells.len()));
        for c in &self.cells {
            out.push_str(&format!("{} {} {}\n", c.row, c.col, c.orientation.letter()));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Region> {
        let mut spec = None;
        let mut cells = BTreeSet::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(s) = rest.trim().strip_prefix("spec:") {
                    spec = Some(s.parse::<RegionSpec>()?);
                }
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected 'row col U|D'", lineno + 1)));
            }
            let row: i64 = fields[0]
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            let col: i64 = fields[1]
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            let cell = UnitTriangle::new(row, col);
            let expected = cell.orientation.letter().to_string();
            if fields[2] != expected {
                return Err(Error::Parse(format!(
                    "line {}: cell ({row},{col}) has orientation {expected}, not {}",
                    lineno + 1,
                    fields[2]
                )));
            }
            cells.insert(cell);
        }
        Ok(Region { cells, spec })
    }
}

pub fn build(spec: &RegionSpec) -> Result<Region> {
    spec.validate()?;
    let cells = match *spec {
        RegionSpec::G { n, x } => {
            if n <= 0 {
                BTreeSet::new()
            } else {
                base_cells(n, x, (2 * n).max(0))
            }
        }
        RegionSpec::F { n, x, i } => {
            let mut cells = base_cells(n, x, (2 * n - 2).max(0));
            cells.remove(&bump_cell(x, i));
            cells
        }
        RegionSpec::D { n, x } => base_cells(n, x, (2 * n - 4).max(0)),
        RegionSpec::E { n, x, i, j } => {
            let mut cells = base_cells(n, x, (2 * n - 4).max(0));
            cells.remove(&bump_cell(x, i));
            cells.remove(&bump_cell(x, j));
            cells
        }
        RegionSpec::DZero { n, x } => {
            let mut cells = base_cells(n, x, (2 * n - 4).max(0));
            cells.remove(&bump_cell(x, 1));
            cells.remove(&bump_cell(x, 3));
            cells
        }
        RegionSpec::DGap { n, x, r, v } => {
            let mut cells = base_cells(n, x, (2 * n - 4).max(0));
            for c in gap_cells(r, v) {
                cells.remove(&c);
            }
            cells
        }
    };
    Ok(Region {
        cells,
        spec: Some(*spec),
    })
}

/// Bipartite dual graph: up-cells on one side, down-cells on the other,
/// edges `(up_index, down_index)` sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub ups: Vec<UnitTriangle>,
    pub downs: Vec<UnitTriangle>,
    pub edges: Vec<(usize, usize)>,
}

pub fn dual_graph(region: &Region) -> DualGraph {
    let ups: Vec<UnitTriangle> = region
        .cells
        .iter()
        .copied()
        .filter(|c| c.orientation == Orientation::Up)
        .collect();
    let downs: Vec<UnitTriangle> = region
        .cells
        .iter()
        .copied()
        .filter(|c| c.orientation == Orientation::Down)
        .collect();
    let mut edges = Vec::new();
    for (ui, u) in ups.iter().enumerate() {
        for nb in u.neighbors() {
            if let Ok(di) = downs.binary_search(&nb) {
                edges.push((ui, di));
            }
        }
    }
    edges.sort_unstable();
    DualGraph { ups, downs, edges }
}

pub fn balance(region: &Region) -> (usize, usize) {
    let up = region
        .cells
        .iter()
        .filter(|c| c.orientation == Orientation::Up)
        .count();
    (up, region.cells.len() - up)
}

/// Whether the cells form one edge-connected piece (the empty set counts).
pub fn is_connected(region: &Region) -> bool {
    let Some(first) = region.cells.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::new();
    let mut stack = vec![*first];
    seen.insert(*first);
    while let Some(c) = stack.pop() {
        for nb in c.neighbors() {
            if region.cells.contains(&nb) && seen.insert(nb) {
                stack.push(nb);
            }
        }
    }
    seen.len() == region.cells.len()
}
