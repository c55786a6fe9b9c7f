//! Closed-form product evaluators for the G, F and E families, the
//! binomial determinant, and the condensation identities that tie them
//! together.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    as_integer, binomial, exact_div, factorial, frac, pochhammer, rat, ExactInteger, ExactRational,
};
use crate::enumerate::{lgv_e_count, ExactMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    G,
    F,
    E,
    CDet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaValue {
    pub value: ExactRational,
    pub family: Family,
    pub params: Vec<i64>,
}

impl FormulaValue {
    pub fn evaluate(family: Family, params: &[i64]) -> Result<FormulaValue> {
        let arity = match family {
            Family::G | Family::CDet => 2,
            Family::F => 3,
            Family::E => 4,
        };
        if params.len() != arity {
            return Err(Error::DimensionMismatch(format!(
                "{family:?} takes {arity} parameters"
            )));
        }
        let p = params;
        let value = match family {
            Family::G => m_g(p[0], p[1])?,
            Family::F => m_f(p[0], p[1], p[2])?,
            Family::E => m_e(p[0], p[1], p[2], p[3])?,
            Family::CDet => c_determinant(p[0], p[1])?,
        };
        Ok(FormulaValue {
            value: ExactRational::from_integer(value),
            family,
            params: params.to_vec(),
        })
    }
}

fn poch(a: ExactRational, k: i64) -> Result<ExactRational> {
    pochhammer(&a, k)
}

fn integral(q: ExactRational, what: &str) -> Result<ExactInteger> {
    as_integer(&q).ok_or_else(|| Error::InexactDivision(format!("{what} = {q} is not an integer")))
}

/// Product side of the binomial determinant identity for `C(n, x)`.
pub fn c_product(n: i64, x: i64) -> Result<ExactRational> {
    if n < 1 {
        return Err(Error::OutOfRange(format!("c_product needs n >= 1, got {n}")));
    }
    let mut acc = ExactRational::new(ExactInteger::one(), ExactInteger::one() << (n - 1) as usize);
    for k in 1..n {
        let num = poch(rat(2 * x + 2 * k + 2), k)? * poch(rat(x + 2 * k) + frac(3, 2), k - 1)?;
        let den = poch(rat(k), k)? * poch(rat(x + k) + frac(3, 2), k - 1)?;
        acc *= num / den;
    }
    Ok(acc)
}

/// `M(G(n, x))`; 1 for `n <= 0`.
pub fn m_g(n: i64, x: i64) -> Result<ExactInteger> {
    if n <= 0 {
        return Ok(ExactInteger::one());
    }
    if x < 0 {
        return Err(Error::OutOfRange(format!("m_G needs x >= 0, got {x}")));
    }
    let mut acc = ExactRational::new(ExactInteger::one(), ExactInteger::one() << n as usize);
    for k in 1..=n {
        let num = poch(rat(2 * x + 2 * k), k)? * poch(rat(x + 2 * k) + frac(1, 2), k - 1)?;
        let den = poch(rat(k), k)? * poch(rat(x + k) + frac(1, 2), k - 1)?;
        acc *= num / den;
    }
    integral(acc, &format!("M(G({n},{x}))"))
}

/// `M(F(n, x, i)) / M(F(n, x, 1))`; zero for `i > n`.
pub fn f_ratio(n: i64, x: i64, i: i64) -> Result<ExactRational> {
    if n < 1 || x < 0 || i < 1 {
        return Err(Error::OutOfRange(format!("f_ratio({n},{x},{i})")));
    }
    if i > n {
        return Ok(ExactRational::zero());
    }
    let num = poch(rat(x + 1), i - 1)?
        * poch(rat(n - i + 1), i - 1)?
        * poch(rat(2 * x + 2 * n + i), i - 2)?
        * rat(2 * x + 2 * n);
    let den = poch(rat(2 * n - i), i - 1)?
        * poch(rat(n + x), i - 1)?
        * ExactRational::from_integer(factorial((i - 1) as usize));
    Ok(num / den)
}

/// `M(F(n, x, i))`; zero for `i > n` (that bump does not exist).
pub fn m_f(n: i64, x: i64, i: i64) -> Result<ExactInteger> {
    let ratio = f_ratio(n, x, i)?;
    let g = ExactRational::from_integer(m_g(n - 2, x + 3)?);
    integral(g * ratio, &format!("M(F({n},{x},{i}))"))
}

/// `M(E(n, x, i, j))` from the F and G values; the final division must be exact.
pub fn m_e(n: i64, x: i64, i: i64, j: i64) -> Result<ExactInteger> {
    if n < 2 || x < 0 || !(1 <= i && i < j && j <= n) {
        return Err(Error::OutOfRange(format!("m_E({n},{x},{i},{j})")));
    }
    let num = m_f(n - 1, x, i)? * m_f(n, x, j)? - m_f(n - 1, x, j)? * m_f(n, x, i)?;
    exact_div(&num, &m_g(n - 1, x)?, &format!("M(E({n},{x},{i},{j}))"))
}

/// `det(C(x+i+j, 2j-i))` over `0 <= i, j < n`. `x = -1` is accepted.
pub fn c_determinant(n: i64, x: i64) -> Result<ExactInteger> {
    if n < 1 || x < -1 {
        return Err(Error::OutOfRange(format!("c_determinant({n},{x})")));
    }
    let size = n as usize;
    let m = ExactMatrix::from_fn(size, size, |i, j| {
        let (i, j) = (i as i64, j as i64);
        ExactRational::from_integer(binomial(x + i + j, 2 * j - i))
    });
    integral(m.determinant()?, &format!("C({n},{x}) determinant"))
}

/// `M(F(n,x,i)) M(G(n-3,x+3)) = M(G(n-2,x+3)) M(F(n-1,x,i)) + M(G(n-1,x)) M(F(n-2,x+3,i-2))`.
pub fn kuo_check_f(n: i64, x: i64, i: i64) -> Result<bool> {
    if n < 3 || !(1 <= i && i <= n) {
        return Err(Error::OutOfRange(format!("kuo_check_F({n},{x},{i})")));
    }
    let tail = if i >= 3 { m_f(n - 2, x + 3, i - 2)? } else { ExactInteger::zero() };
    let lhs = m_f(n, x, i)? * m_g(n - 3, x + 3)?;
    let rhs = m_g(n - 2, x + 3)? * m_f(n - 1, x, i)? + m_g(n - 1, x)? * tail;
    Ok(lhs == rhs)
}

/// `M(G(n-1,x)) M(E(n,x,i,j)) = M(F(n-1,x,i)) M(F(n,x,j)) - M(F(n-1,x,j)) M(F(n,x,i))`,
/// with the E count taken from the path determinant so the check is not
/// circular.
pub fn kuo_check_e(n: i64, x: i64, i: i64, j: i64) -> Result<bool> {
    if n < 2 || !(1 <= i && i < j && j <= n) {
        return Err(Error::OutOfRange(format!("kuo_check_E({n},{x},{i},{j})")));
    }
    let e = lgv_e_count(n, x, i, j)?;
    let lhs = m_g(n - 1, x)? * e;
    let rhs = m_f(n - 1, x, i)? * m_f(n, x, j)? - m_f(n - 1, x, j)? * m_f(n, x, i)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    #[test]
    fn g_values() {
        assert_eq!(m_g(0, 7).unwrap(), int(1));
        assert_eq!(m_g(-1, 3).unwrap(), int(1));
        assert_eq!(m_g(1, 2).unwrap(), int(3));
        assert_eq!(m_g(2, 0).unwrap(), int(3));
        let row0: Vec<_> = (0..5).map(|n| m_g(n, 0).unwrap()).collect();
        assert_eq!(row0, [1, 1, 3, 26, 646].map(int));
        let row1: Vec<_> = (0..5).map(|n| m_g(n, 1).unwrap()).collect();
        assert_eq!(row1, [1, 2, 11, 170, 7429].map(int));
    }

    #[test]
    fn f_base_cases() {
        for x in 0..6 {
            assert_eq!(m_f(1, x, 1).unwrap(), int(1));
            assert_eq!(m_f(2, x, 1).unwrap(), int(1));
            assert_eq!(m_f(2, x, 2).unwrap(), int(x + 1));
            assert_eq!(m_f(2, x, 3).unwrap(), int(0));
        }
    }

    #[test]
    fn e_values() {
        for x in 0..4 {
            assert_eq!(m_e(2, x, 1, 2).unwrap(), int(1));
            assert_eq!(m_e(3, x, 1, 2).unwrap(), int(0));
            assert_eq!(m_e(3, x, 1, 3).unwrap(), int(1));
            assert_eq!(m_e(3, x, 2, 3).unwrap(), int(x + 1));
        }
        for n in 3..=5 {
            assert_eq!(m_e(n, 1, 1, 2).unwrap(), int(0));
            assert!(m_e(n, 1, 1, 3).unwrap() > int(0));
        }
        assert!(m_e(3, 0, 2, 2).is_err());
    }

    #[test]
    fn binomial_determinant() {
        for x in 0..6 {
            assert_eq!(c_determinant(1, x).unwrap(), int(1));
            assert_eq!(c_determinant(2, x).unwrap(), int(x + 2));
        }
        for n in 1..=6 {
            for x in -1..=4 {
                let det = ExactRational::from_integer(c_determinant(n, x).unwrap());
                assert_eq!(det, c_product(n, x).unwrap(), "n={n} x={x}");
            }
        }
        for n in 0..=5 {
            for x in 0..=4 {
                assert_eq!(m_g(n, x).unwrap(), c_determinant(n + 1, x - 1).unwrap());
            }
        }
    }

    #[test]
    fn f_ratio_matches_quotient() {
        for n in 1..=20 {
            for x in 0..=3 {
                let base = ExactRational::from_integer(m_f(n, x, 1).unwrap());
                for i in 1..=n {
                    let q = ExactRational::from_integer(m_f(n, x, i).unwrap()) / &base;
                    assert_eq!(q, f_ratio(n, x, i).unwrap(), "n={n} x={x} i={i}");
                }
            }
        }
    }

    #[test]
    fn kuo_instances() {
        assert!(kuo_check_f(5, 2, 3).unwrap());
        assert!(kuo_check_f(3, 0, 1).unwrap());
        assert!(kuo_check_e(5, 2, 2, 3).unwrap());
        for x in 0..4 {
            assert!(kuo_check_e(2, x, 1, 2).unwrap());
        }
        assert!(kuo_check_f(2, 0, 1).is_err());
    }

    #[test]
    fn formula_value_wrapper() {
        let v = FormulaValue::evaluate(Family::G, &[2, 0]).unwrap();
        assert_eq!(v.value, rat(3));
        assert!(FormulaValue::evaluate(Family::E, &[2, 0]).is_err());
        let c = FormulaValue::evaluate(Family::CDet, &[2, 3]).unwrap();
        assert_eq!(c.value, rat(5));
    }
}
