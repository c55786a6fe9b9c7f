//! Sparse multivariate polynomials over the integers and the expansion of
//! the correlation summand into monomials `a^l b^m`.
//!
//! The summand is expanded in the variables `(a, b, R, w)` with `w = 2v`;
//! callers evaluate at `w = 2v`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactmath::{ExactInteger, ExactRational};

pub const A: usize = 0;
pub const B: usize = 1;
pub const R: usize = 2;
pub const W: usize = 3;

/// Exponent vector over `(a, b, R, w)`.
pub type Monomial = [u32; 4];

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly4 {
    terms: BTreeMap<Monomial, ExactInteger>,
}

impl Poly4 {
    pub fn zero() -> Self {
        Poly4::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Poly4::zero();
        p.add_term([0; 4], BigInt::from(c));
        p
    }

    pub fn var(idx: usize) -> Self {
        let mut e = [0; 4];
        e[idx] = 1;
        let mut p = Poly4::zero();
        p.add_term(e, BigInt::one());
        p
    }

    fn add_term(&mut self, e: Monomial, c: ExactInteger) {
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Poly4::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly4::constant(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: Monomial) -> ExactInteger {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactInteger)> {
        self.terms.iter()
    }

    pub fn eval(&self, point: [&ExactRational; 4]) -> ExactRational {
        let mut total = ExactRational::zero();
        for (e, c) in &self.terms {
            let mut t = ExactRational::from_integer(c.clone());
            for (k, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    t *= point[k];
                }
            }
            total += t;
        }
        total
    }

    pub fn eval_int(&self, point: [i64; 4]) -> ExactRational {
        let p = point.map(|v| ExactRational::from_integer(BigInt::from(v)));
        self.eval([&p[0], &p[1], &p[2], &p[3]])
    }

    /// Groups terms by their `(a, b)` exponents; each group is a polynomial
    /// in `(R, w)` stored with zero `a`, `b` exponents.
    pub fn split_ab(&self) -> BTreeMap<(u32, u32), Poly4> {
        let mut out: BTreeMap<(u32, u32), Poly4> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry((e[A], e[B]))
                .or_default()
                .add_term([0, 0, e[R], e[W]], c.clone());
        }
        out
    }
}

impl Add for &Poly4 {
    type Output = Poly4;
    fn add(self, rhs: &Poly4) -> Poly4 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly4 {
    type Output = Poly4;
    fn sub(self, rhs: &Poly4) -> Poly4 {
        self + &(-rhs)
    }
}

impl Neg for &Poly4 {
    type Output = Poly4;
    fn neg(self) -> Poly4 {
        self.scale(-1)
    }
}

impl Mul for &Poly4 {
    type Output = Poly4;
    fn mul(self, rhs: &Poly4) -> Poly4 {
        let mut out = Poly4::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// `(b-a)^2 A B (A^2 + AB + B^2 - 2A - 2B - 1)` with `A = w - R + a`,
/// `B = w - R + b`, unexpanded in structure but built from the sparse type.
pub fn summand_polynomial() -> Poly4 {
    let (a, b, r, w) = (Poly4::var(A), Poly4::var(B), Poly4::var(R), Poly4::var(W));
    let big_a = &(&w - &r) + &a;
    let big_b = &(&w - &r) + &b;
    let diff = &b - &a;
    let quad = &(&(&(&(&big_a * &big_a) + &(&big_a * &big_b)) + &(&big_b * &big_b)) - &big_a.scale(2))
        - &(&big_b.scale(2) + &Poly4::constant(1));
    &(&(&diff * &diff) * &(&big_a * &big_b)) * &quad
}

/// Direct evaluation of the unexpanded summand polynomial at `v` (not `w`).
pub fn summand_value(a: &ExactRational, b: &ExactRational, r: &ExactRational, v: &ExactRational) -> ExactRational {
    let two = ExactRational::from_integer(BigInt::from(2));
    let big_a = &two * v - r + a;
    let big_b = &two * v - r + b;
    let quad = &big_a * &big_a + &big_a * &big_b + &big_b * &big_b
        - &two * &big_a
        - &two * &big_b
        - ExactRational::one();
    let diff = b - a;
    &diff * &diff * &big_a * &big_b * quad
}

/// Coefficients `c_{l,m}(R, w)` of `a^l b^m` in the expanded summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialCoefficients {
    pub full: Poly4,
    pub by_ab: BTreeMap<(u32, u32), Poly4>,
}

impl MonomialCoefficients {
    pub fn monomial_count(&self) -> usize {
        self.full.len()
    }

    /// Coefficient of `a^l b^m R^r w^k`.
    pub fn coefficient(&self, l: u32, m: u32, r: u32, k: u32) -> ExactInteger {
        self.full.coefficient([l, m, r, k])
    }

    /// `c_{l,m}` evaluated at integer `(R, v)`.
    pub fn c_at(&self, l: u32, m: u32, r: i64, v: i64) -> ExactRational {
        match self.by_ab.get(&(l, m)) {
            Some(p) => p.eval_int([0, 0, r, 2 * v]),
            None => ExactRational::zero(),
        }
    }
}

pub fn expand_coefficients() -> MonomialCoefficients {
    let full = summand_polynomial();
    let by_ab = full.split_ab();
    MonomialCoefficients { full, by_ab }
}
