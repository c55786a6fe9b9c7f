//! Exact integers and rationals plus the small special-function kernel
//! (factorials, binomials, Pochhammer symbols, trig values at multiples of
//! pi/3) shared by every other module.
//!
//! Nothing in here touches floating point.

use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type ExactInteger = BigInt;
pub type ExactRational = BigRational;

/// Default number of factorials kept in the shared cache.
pub const DEFAULT_FACTORIAL_CAP: usize = 50_000;

pub fn int(v: i64) -> ExactInteger {
    BigInt::from(v)
}

pub fn rat(v: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Returns the integer value of `q`, or `None` when `q` has a non-trivial denominator.
pub fn as_integer(q: &ExactRational) -> Option<ExactInteger> {
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else {
        None
    }
}

/// Rising factorial `(a)_k`, extended to negative `k` by
/// `(a)_{-m} = 1 / ((a-m)(a-m+1)...(a-1))`.
pub fn pochhammer(a: &ExactRational, k: i64) -> Result<ExactRational> {
    let mut acc = ExactRational::one();
    if k >= 0 {
        let mut term = a.clone();
        for _ in 0..k {
            acc *= &term;
            term += ExactRational::one();
        }
        return Ok(acc);
    }
    let m = -k;
    let mut term = a - rat(m);
    for _ in 0..m {
        if term.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "pochhammer({a}, {k}) has a vanishing factor"
            )));
        }
        acc *= &term;
        term += ExactRational::one();
    }
    Ok(acc.recip())
}

/// Integer-argument convenience wrapper around [`pochhammer`].
pub fn pochhammer_int(a: i64, k: i64) -> Result<ExactRational> {
    pochhammer(&rat(a), k)
}

/// Binomial coefficient with integer (possibly negative) upper index.
///
/// Negative lower index gives 0. Negative upper index uses the generalized
/// falling-factorial definition, e.g. `C(-1, k) = (-1)^k`.
pub fn binomial(n: i64, k: i64) -> ExactInteger {
    binomial_big(&int(n), k)
}

pub fn binomial_big(n: &ExactInteger, k: i64) -> ExactInteger {
    if k < 0 {
        return BigInt::zero();
    }
    if !n.is_negative() && BigInt::from(k) > *n {
        return BigInt::zero();
    }
    // Use symmetry for large non-negative n to keep the loop short.
    let k = match n.to_i64() {
        Some(nn) if nn >= 0 && k > nn - k => nn - k,
        _ => k,
    };
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

/// Binomial coefficient with rational upper argument.
pub fn binomial_rational(a: &ExactRational, k: i64) -> ExactRational {
    if k < 0 {
        return ExactRational::zero();
    }
    let mut acc = ExactRational::one();
    for t in 0..k {
        acc *= a - rat(t);
        acc /= rat(t + 1);
    }
    acc
}

/// Memoized factorial table up to a configurable cap. Requests above the cap
/// are computed on the fly from the largest cached value.
#[derive(Debug)]
pub struct FactorialCache {
    cap: usize,
    table: RwLock<Vec<ExactInteger>>,
}

impl FactorialCache {
    pub fn new(cap: usize) -> Self {
        FactorialCache {
            cap,
            table: RwLock::new(vec![BigInt::one()]),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn get(&self, n: usize) -> ExactInteger {
        {
            let table = self.table.read().expect("factorial cache poisoned");
            if n < table.len() {
                return table[n].clone();
            }
        }
        let mut table = self.table.write().expect("factorial cache poisoned");
        while table.len() <= n.min(self.cap) {
            let next = table.last().unwrap() * BigInt::from(table.len());
            table.push(next);
        }
        if n < table.len() {
            return table[n].clone();
        }
        let mut acc = table.last().unwrap().clone();
        for t in table.len()..=n {
            acc *= t;
        }
        acc
    }
}

fn shared_factorials() -> &'static FactorialCache {
    static CACHE: OnceLock<FactorialCache> = OnceLock::new();
    CACHE.get_or_init(|| FactorialCache::new(DEFAULT_FACTORIAL_CAP))
}

/// `n!` from the process-wide cache.
pub fn factorial(n: usize) -> ExactInteger {
    shared_factorials().get(n)
}

/// Exact values of cos(R pi/3) and sin(R pi/3)/sqrt(3), keyed by R mod 6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigValue {
    pub residue: u8,
    pub cos_val: ExactRational,
    pub sin_over_sqrt3: ExactRational,
}

pub fn trig_at(r: u64) -> TrigValue {
    let residue = (r % 6) as u8;
    let (c, s) = match residue {
        0 => ((1, 1), (0, 1)),
        1 => ((1, 2), (1, 2)),
        2 => ((-1, 2), (1, 2)),
        3 => ((-1, 1), (0, 1)),
        4 => ((-1, 2), (-1, 2)),
        _ => ((1, 2), (-1, 2)),
    };
    TrigValue {
        residue,
        cos_val: frac(c.0, c.1),
        sin_over_sqrt3: frac(s.0, s.1),
    }
}

/// Decimal form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &ExactRational) -> String {
    if q.denom().is_one() {
        q.numer().to_str_radix(10)
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_integer(s: &str) -> Result<ExactInteger> {
    BigInt::from_str(s.trim()).map_err(|e| Error::Parse(format!("integer {s:?}: {e}")))
}

pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_integer(s)?)),
        Some((p, q)) => {
            let den = parse_integer(q)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("rational {s:?} has zero denominator")));
            }
            Ok(BigRational::new(parse_integer(p)?, den))
        }
    }
}

/// Exact quotient of two integers, or an error naming `context` when the
/// division leaves a remainder.
pub fn exact_div(num: &ExactInteger, den: &ExactInteger, context: &str) -> Result<ExactInteger> {
    if den.is_zero() {
        return Err(Error::DivisionByZero(context.to_string()));
    }
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::InexactDivision(context.to_string()));
    }
    Ok(q)
}

/// Best-effort conversion to `f64` that survives numerators and denominators
/// far beyond the `f64` range.
pub fn rational_to_f64(q: &ExactRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let num_bits = q.numer().bits() as i64;
    let den_bits = q.denom().bits() as i64;
    let shift_n = (num_bits - 60).max(0);
    let shift_d = (den_bits - 60).max(0);
    let n = (q.numer() >> shift_n as usize).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift_d as usize).to_f64().unwrap_or(f64::NAN);
    n / d * 2f64.powi((shift_n - shift_d) as i32)
}
