//! Command-line front end. [`run`] parses arguments, executes the command
//! and returns the rendered output together with the exit status, so the
//! binary and the tests share one code path.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::correlation::{
    correlation_report, distance_product_check, e_ratio_finite, e_ratio_limit, finite_n_correlation,
    image_configuration, images, moment_closed, moment_direct, omega_asymptotic, omega_double_sum,
    omega_exact, round15,
};
use crate::enumerate::{count_gapped_determinant, count_matchings_capped, lgv_e_count, DEFAULT_CELL_CAP};
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, frac, rational_to_f64, ExactInteger};
use crate::formulas::{kuo_check_e, kuo_check_f, m_e, m_f, m_g};
use crate::region::{build, Region, RegionSpec};

/// Environment variable holding the worker-pool size for sweeps.
pub const WORKERS_ENV: &str = "LOZENGE_GAP_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Lgv,
    Formula,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Prop31,
    Kuo,
    Moments,
    Doublesum,
    Images,
}

#[derive(Debug, Parser)]
#[command(name = "lozenge-gap", version, about = "Exact lozenge-tiling counts and gap-corner correlations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "plain", global = true)]
    pub format: Format,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count lozenge tilings of one region.
    Count {
        /// Region family: D, DGap, DZero, E, F or G.
        #[arg(long)]
        region: Option<String>,
        /// Full spec such as "E(5,2,2,3)"; overrides --region.
        #[arg(long)]
        spec: Option<String>,
        /// Serialized region file (row col U|D lines).
        #[arg(long, conflicts_with_all = ["region", "spec"])]
        region_file: Option<PathBuf>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        x: Option<i64>,
        #[arg(long)]
        i: Option<i64>,
        #[arg(long)]
        j: Option<i64>,
        #[arg(long = "r", alias = "R")]
        r: Option<i64>,
        #[arg(long)]
        v: Option<i64>,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
        /// Largest region the matching oracle accepts.
        #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
        cell_cap: usize,
    },
    /// Run an identity suite over a parameter box.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        n_max: i64,
        #[arg(long, default_value_t = 4)]
        x_max: i64,
        #[arg(long, default_value_t = 5)]
        k_max: u32,
        #[arg(long = "r-max", default_value_t = 12)]
        r_max: i64,
        #[arg(long, default_value_t = 12)]
        v_max: i64,
        #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
        cell_cap: usize,
        /// Relative tolerance for the floating-point image check.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Full correlation report for one gap position.
    Correlate {
        #[arg(long = "r", alias = "R")]
        r: i64,
        #[arg(long)]
        v: i64,
        /// Region sizes at which to sample the finite ratio.
        #[arg(long, value_delimiter = ',')]
        samples: Vec<i64>,
    },
    /// Finite-size convergence: E ratios, or the gap correlation when --r/--v are given.
    Converge {
        #[arg(long, default_value_t = 10_000)]
        n: i64,
        /// Bump pairs as i:j.
        #[arg(long, value_delimiter = ',', default_value = "2:5,3:4,2:3")]
        pairs: Vec<String>,
        #[arg(long = "r", alias = "R", requires = "v")]
        r: Option<i64>,
        #[arg(long, requires = "r")]
        v: Option<i64>,
        /// Region sizes for the correlation sequence.
        #[arg(long, value_delimiter = ',', default_value = "10,50,200,1000")]
        ns: Vec<i64>,
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
    },
    /// Compare exact correlations with the leading asymptotics.
    Asymptote {
        /// Gap positions as R:v.
        #[arg(long, value_delimiter = ',', default_value = "300:300,300:400,300:600")]
        points: Vec<String>,
        #[arg(long, default_value_t = 0.02)]
        tolerance: f64,
    },
}

/// Rendered result of a command.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub ok: bool,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: String,
    /// Structured payload for JSON output; the table is used when absent.
    pub json: Option<Value>,
}

impl Outcome {
    fn table(title: &str, columns: &[&str]) -> Self {
        Outcome {
            ok: true,
            title: title.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: String::new(),
            json: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.render_plain(),
            Format::Csv => self.render_csv(),
            Format::Json => {
                let payload = self.json.clone().unwrap_or_else(|| self.table_json());
                let doc = json!({
                    "command": self.title,
                    "ok": self.ok,
                    "summary": self.summary,
                    "result": payload,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("json value serializes");
                s.push('\n');
                s
            }
        }
    }

    fn table_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.clone(), Value::String(v.clone())))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    fn render_plain(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.title);
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let _ = writeln!(out, "{}", line(&self.columns));
        for row in &self.rows {
            let _ = writeln!(out, "{}", line(row));
        }
        let _ = writeln!(out, "{}: {}", if self.ok { "PASS" } else { "FAIL" }, self.summary);
        out
    }

    fn render_csv(&self) -> String {
        let esc = |s: &String| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        };
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.columns.iter().map(esc).collect::<Vec<_>>().join(","));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.iter().map(esc).collect::<Vec<_>>().join(","));
        }
        out
    }
}

/// Sizes the global rayon pool from [`WORKERS_ENV`] if set. Later calls are no-ops.
pub fn init_workers() {
    if let Some(n) = std::env::var(WORKERS_ENV).ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses, executes and renders. Returns `(exit_code, text)`; the text goes
/// to stdout, or is written to `--out` (in which case the returned text is
/// empty on success).
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    init_workers();
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => return (1, format!("error: {e}\n")),
    };
    let text = outcome.render(cli.format);
    let code = if outcome.ok { 0 } else { 1 };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => (code, String::new()),
            Err(e) => (1, format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => (code, text),
    }
}

pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Count {
            region,
            spec,
            region_file,
            n,
            x,
            i,
            j,
            r,
            v,
            method,
            cell_cap,
        } => {
            if let Some(path) = region_file {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let reg = Region::from_text(&text)?;
                return cmd_count_region(&reg, *method, *cell_cap);
            }
            let spec = match (spec, region) {
                (Some(s), _) => s.parse::<RegionSpec>()?,
                (None, Some(fam)) => {
                    let p = |name: &str, val: &Option<i64>| {
                        val.ok_or_else(|| Error::Parse(format!("--{name} is required for family {fam}")))
                    };
                    let params = match fam.as_str() {
                        "D" | "DZero" | "G" => vec![p("n", n)?, p("x", x)?],
                        "F" => vec![p("n", n)?, p("x", x)?, p("i", i)?],
                        "E" => vec![p("n", n)?, p("x", x)?, p("i", i)?, p("j", j)?],
                        "DGap" => vec![p("n", n)?, p("x", x)?, p("r", r)?, p("v", v)?],
                        other => return Err(Error::Parse(format!("unknown region family {other:?}"))),
                    };
                    RegionSpec::from_parts(fam, &params)?
                }
                (None, None) => return Err(Error::Parse("one of --region, --spec, --region-file is required".into())),
            };
            cmd_count(&spec, *method, *cell_cap)
        }
        Command::Verify {
            suite,
            n_max,
            x_max,
            k_max,
            r_max,
            v_max,
            cell_cap,
            tolerance,
        } => {
            if *tolerance <= 0.0 {
                return Err(Error::Domain("tolerance must be positive".into()));
            }
            match suite {
                Suite::Prop31 => verify_prop31(*n_max, *x_max, *cell_cap),
                Suite::Kuo => verify_kuo(*n_max, *x_max),
                Suite::Moments => verify_moments(*k_max, *r_max),
                Suite::Doublesum => verify_doublesum(*r_max, *v_max),
                Suite::Images => verify_images(*r_max, *v_max, *tolerance),
            }
        }
        Command::Correlate { r, v, samples } => cmd_correlate(*r, *v, samples),
        Command::Converge {
            n,
            pairs,
            r,
            v,
            ns,
            tolerance,
        } => match (r, v) {
            (Some(r), Some(v)) => converge_correlation(*r, *v, ns),
            _ => converge_ratios(*n, pairs, *tolerance),
        },
        Command::Asymptote { points, tolerance } => cmd_asymptote(points, *tolerance),
    }
}

fn parse_pair(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected a:b, got {s:?}")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
    };
    Ok((parse(a)?, parse(b)?))
}

fn formula_count(spec: &RegionSpec) -> Option<Result<ExactInteger>> {
    match *spec {
        RegionSpec::G { n, x } => Some(m_g(n, x)),
        RegionSpec::F { n, x, i } => Some(m_f(n, x, i)),
        RegionSpec::E { n, x, i, j } => Some(m_e(n, x, i, j)),
        RegionSpec::DZero { n, x } => Some(m_e(n, x, 1, 3)),
        RegionSpec::D { .. } | RegionSpec::DGap { .. } => None,
    }
}

fn lgv_count_for(spec: &RegionSpec) -> Option<Result<ExactInteger>> {
    match *spec {
        RegionSpec::E { n, x, i, j } => Some(lgv_e_count(n, x, i, j)),
        RegionSpec::DZero { n, x } => Some(lgv_e_count(n, x, 1, 3)),
        RegionSpec::DGap { n, x: 1, r, v } => Some(count_gapped_determinant(n, r, v)),
        _ => None,
    }
}

pub fn cmd_count(spec: &RegionSpec, method: Method, cell_cap: usize) -> Result<Outcome> {
    let region = build(spec)?;
    let mut out = Outcome::table("count", &["region", "method", "count"]);
    let mut values = Vec::new();
    let want = |m: Method| method == m || method == Method::All;
    if want(Method::Formula) {
        match formula_count(spec) {
            Some(v) => values.push(("formula", v?)),
            None if method == Method::Formula => {
                return Err(Error::Domain(format!("no closed formula for {spec}")))
            }
            None => {}
        }
    }
    if want(Method::Lgv) {
        match lgv_count_for(spec) {
            Some(v) => values.push(("lgv", v?)),
            None if method == Method::Lgv => {
                return Err(Error::Domain(format!("no path determinant for {spec}")))
            }
            None => {}
        }
    }
    if want(Method::Oracle) {
        match count_matchings_capped(&region, cell_cap) {
            Ok(v) => values.push(("oracle", v)),
            Err(e @ Error::CellCapExceeded { .. }) if method == Method::All => {
                out.rows.push(vec![spec.to_string(), "oracle".into(), format!("skipped: {e}")]);
            }
            Err(e) => return Err(e),
        }
    }
    for (m, v) in &values {
        out.rows.push(vec![spec.to_string(), m.to_string(), v.to_string()]);
    }
    out.ok = values.windows(2).all(|w| w[0].1 == w[1].1);
    out.summary = match (method, out.ok) {
        (Method::All, true) => format!("{} method(s) agree", values.len()),
        (Method::All, false) => "methods disagree".into(),
        _ => "counted".into(),
    };
    Ok(out)
}

fn cmd_count_region(region: &Region, method: Method, cell_cap: usize) -> Result<Outcome> {
    if let Some(spec) = &region.spec {
        if build(spec)?.cells != region.cells {
            // the file is not the canonical region for its header; count cells as given
            return count_cells_only(region, method, cell_cap, &format!("{spec} (edited)"));
        }
        return cmd_count(spec, method, cell_cap);
    }
    count_cells_only(region, method, cell_cap, "file")
}

fn count_cells_only(region: &Region, method: Method, cell_cap: usize, label: &str) -> Result<Outcome> {
    if !matches!(method, Method::Oracle | Method::All) {
        return Err(Error::Domain("only the oracle counts arbitrary cell sets".into()));
    }
    let v = count_matchings_capped(region, cell_cap)?;
    let mut out = Outcome::table("count", &["region", "method", "count"]);
    out.rows.push(vec![label.to_string(), "oracle".into(), v.to_string()]);
    out.summary = "counted".into();
    Ok(out)
}

/// Collects `(label, Ok(pass) | Err(skip/error))` results into an outcome.
fn collect_cases(title: &str, cases: Vec<(String, Result<(bool, String)>)>) -> Outcome {
    let mut out = Outcome::table(title, &["case", "status", "detail"]);
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for (label, res) in cases {
        let (status, detail) = match res {
            Ok((true, d)) => {
                pass += 1;
                ("pass", d)
            }
            Ok((false, d)) => {
                fail += 1;
                ("FAIL", d)
            }
            Err(e @ Error::CellCapExceeded { .. }) => {
                skip += 1;
                ("skip", format!("{e}; raise --cell-cap to include"))
            }
            Err(e) => {
                fail += 1;
                ("FAIL", e.to_string())
            }
        };
        out.rows.push(vec![label, status.to_string(), detail]);
    }
    out.ok = fail == 0;
    out.summary = format!("{pass} passed, {fail} failed, {skip} skipped");
    out
}

fn oracle_vs(spec: RegionSpec, formula: Result<ExactInteger>, cap: usize) -> Result<(bool, String)> {
    let oracle = count_matchings_capped(&build(&spec)?, cap)?;
    let formula = formula?;
    Ok((oracle == formula, format!("oracle={oracle} formula={formula}")))
}

pub fn verify_prop31(n_max: i64, x_max: i64, cap: usize) -> Result<Outcome> {
    let mut specs = Vec::new();
    for n in 0..=n_max {
        for x in 0..=x_max {
            specs.push(RegionSpec::G { n, x });
            for i in 1..=n {
                specs.push(RegionSpec::F { n, x, i });
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    specs.push(RegionSpec::E { n, x, i, j });
                }
            }
        }
    }
    let cases = specs
        .into_par_iter()
        .map(|spec| {
            let formula = formula_count(&spec).expect("G, F, E have formulas");
            (spec.to_string(), oracle_vs(spec, formula, cap))
        })
        .collect();
    Ok(collect_cases("verify prop31", cases))
}

pub fn verify_kuo(n_max: i64, x_max: i64) -> Result<Outcome> {
    let mut params = Vec::new();
    for n in 1..=2.min(n_max) {
        for x in 0..=x_max {
            for i in 1..=n {
                params.push(('b', n, x, i, 0));
            }
        }
    }
    for n in 3..=n_max {
        for x in 0..=x_max {
            for i in 3..=n {
                params.push(('f', n, x, i, 0));
            }
        }
    }
    for n in 2..=n_max {
        for x in 0..=x_max {
            for i in 1..=n {
                for j in i + 1..=n {
                    params.push(('e', n, x, i, j));
                }
            }
        }
    }
    let cases = params
        .into_par_iter()
        .map(|(kind, n, x, i, j)| match kind {
            'b' => {
                // base cases: F(1,x,1) = F(2,x,1) = 1, F(2,x,2) = x+1
                let want = if n == 2 && i == 2 { x + 1 } else { 1 };
                let res = m_f(n, x, i).map(|v| (v == want.into(), format!("M={v} expected {want}")));
                (format!("F-base({n},{x},{i})"), res)
            }
            'f' => (
                format!("kuo-F({n},{x},{i})"),
                kuo_check_f(n, x, i).map(|ok| (ok, String::new())),
            ),
            _ => (
                format!("kuo-E({n},{x},{i},{j})"),
                kuo_check_e(n, x, i, j).map(|ok| (ok, String::new())),
            ),
        })
        .collect();
    Ok(collect_cases("verify kuo", cases))
}

pub fn verify_moments(k_max: u32, r_max: i64) -> Result<Outcome> {
    let mut params = Vec::new();
    for k in 0..=k_max {
        for r in 0..=r_max.max(0) as u64 {
            params.push((k, r));
        }
    }
    let cases = params
        .into_par_iter()
        .map(|(k, r)| {
            let res = moment_direct(k, r, &frac(1, 4)).and_then(|d| {
                let c = moment_closed(k, r)?;
                Ok((d == c, format!("S={}", format_rational(&d))))
            });
            (format!("S^({k})({r})"), res)
        })
        .collect();
    Ok(collect_cases("verify moments", cases))
}

pub fn verify_doublesum(r_max: i64, v_max: i64) -> Result<Outcome> {
    let mut params = Vec::new();
    for r in 1..=r_max {
        for v in 1..=v_max {
            params.push((r, v));
        }
    }
    let cases = params
        .into_par_iter()
        .map(|(r, v)| {
            let res = omega_double_sum(r, v).and_then(|d| {
                let e = omega_exact(r, v)?;
                Ok((d == e, format!("omega={}", format_rational(&e))))
            });
            (format!("({r},{v})"), res)
        })
        .collect();
    Ok(collect_cases("verify doublesum", cases))
}

pub fn verify_images(r_max: i64, v_max: i64, tol: f64) -> Result<Outcome> {
    let mut params = Vec::new();
    for r in 1..=r_max {
        for v in 1..=v_max {
            if 3 * v - 2 * r > 0 {
                params.push((r, v));
            }
        }
    }
    let cases = params
        .into_iter()
        .map(|(r, v)| {
            let res = image_configuration(r, v).and_then(|cfg| {
                let [_, _, _, o4, o5, _] = cfg.points;
                let closed = images::reflect_l1(o4) == images::reflect_l2(o5);
                let chk = distance_product_check(r, v)?;
                let ok = closed && chk.sixth_root_matches && chk.rel_error < tol;
                Ok((ok, format!("rel_error={:.3e}", chk.rel_error)))
            });
            (format!("({r},{v})"), res)
        })
        .collect();
    Ok(collect_cases("verify images", cases))
}

pub fn cmd_correlate(r: i64, v: i64, samples: &[i64]) -> Result<Outcome> {
    let rep = correlation_report(r, v, samples)?;
    let mut out = Outcome::table("correlate", &["field", "value"]);
    let fmt_opt = |x: Option<f64>| x.map_or("omitted".to_string(), |v| format!("{v}"));
    let mut push = |k: &str, v: String| out.rows.push(vec![k.to_string(), v]);
    push("R", r.to_string());
    push("v", v.to_string());
    push("exact", rep.exact_value.clone());
    push("signed", rep.signed_value.clone());
    push("double_sum", rep.double_sum_value.clone());
    push("exact_approx", format!("{}", rep.exact_approx));
    push("asymptotic", fmt_opt(rep.asymptotic_value));
    push("asymptotic_relative_gap", fmt_opt(rep.asymptotic_relative_gap));
    let pts: Vec<String> = rep
        .image_points
        .iter()
        .enumerate()
        .map(|(k, (p, q))| format!("O{}=({p}, {q}*sqrt3)", k + 1))
        .collect();
    push("images", pts.join(" "));
    push("squared_distances", rep.squared_distances.join(" "));
    if let Some(d) = &rep.distance_product {
        push("distance_product_lhs", format!("{}", d.lhs));
        push("distance_product_rhs", format!("{}", d.rhs));
        push("distance_product_rel_error", format!("{}", d.rel_error));
    }
    for s in &rep.finite_n_samples {
        push(&format!("finite_n[{}]", s.n), format!("{} ~ {}", s.ratio, s.approx));
    }
    for w in &rep.warnings {
        push("warning", w.clone());
    }
    out.summary = "exact value and double sum agree".into();
    out.json = Some(serde_json::to_value(&rep).map_err(|e| Error::Parse(e.to_string()))?);
    Ok(out)
}

pub fn converge_ratios(n: i64, pairs: &[String], tol: f64) -> Result<Outcome> {
    let mut out = Outcome::table("converge", &["n", "i", "j", "finite", "limit", "rel_error", "status"]);
    for p in pairs {
        let (i, j) = parse_pair(p)?;
        let finite = e_ratio_finite(n, i, j)?;
        let limit = e_ratio_limit(i, j);
        let f = rational_to_f64(&finite);
        let l = rational_to_f64(&limit);
        let err = if l == 0.0 { f.abs() } else { ((f - l) / l).abs() };
        let pass = err < tol;
        out.ok &= pass;
        out.rows.push(vec![
            n.to_string(),
            i.to_string(),
            j.to_string(),
            format!("{}", round15(f)),
            format_rational(&limit),
            format!("{:.3e}", err),
            if pass { "pass" } else { "FAIL" }.to_string(),
        ]);
    }
    out.summary = format!("relative tolerance {tol:e}");
    Ok(out)
}

pub fn converge_correlation(r: i64, v: i64, ns: &[i64]) -> Result<Outcome> {
    let exact = rational_to_f64(&omega_exact(r, v)?);
    let mut out = Outcome::table("converge", &["n", "finite", "exact", "abs_diff"]);
    let mut diffs = Vec::new();
    for &n in ns {
        let f = rational_to_f64(&finite_n_correlation(n, r, v)?);
        let d = (f - exact).abs();
        diffs.push(d);
        out.rows.push(vec![
            n.to_string(),
            format!("{}", round15(f)),
            format!("{}", round15(exact)),
            format!("{:.6e}", d),
        ]);
    }
    out.ok = diffs.windows(2).all(|w| w[1] < w[0]);
    out.summary = if out.ok {
        "distance to the limit decreases with n".into()
    } else {
        "distance to the limit does not decrease monotonically".into()
    };
    Ok(out)
}

pub fn cmd_asymptote(points: &[String], tol: f64) -> Result<Outcome> {
    let mut out = Outcome::table(
        "asymptote",
        &["R", "v", "exact", "asymptotic", "rel_gap", "product_rel_error", "status"],
    );
    for p in points {
        let (r, v) = parse_pair(p)?;
        let exact = omega_exact(r, v)?;
        let asym = omega_asymptotic(r, v)?;
        let chk = distance_product_check(r, v)?;
        let gap = (rational_to_f64(&exact) / asym - 1.0).abs();
        let pass = gap < tol && chk.rel_error < 1e-9 && !exact.is_negative();
        out.ok &= pass;
        out.rows.push(vec![
            r.to_string(),
            v.to_string(),
            format_rational(&exact),
            format!("{}", round15(asym)),
            format!("{:.6e}", gap),
            format!("{:.3e}", chk.rel_error),
            if pass { "pass" } else { "FAIL" }.to_string(),
        ]);
    }
    out.summary = format!("relative tolerance {tol}");
    Ok(out)
}
