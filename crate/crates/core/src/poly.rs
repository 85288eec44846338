//! Dense polynomials with exact rational coefficients, and the polynomial
//! identities that tie the two Stirling triangles together.
//!
//! Building `sum_j s(m,j) sum_k S(j,k) x^k` yields exactly `x^m`; dropping
//! the cancelling `x^m` term leaves a residual that is identically zero.
//! The mirrored constructions swap the roles of the two kinds.

use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_rat, BigInt, BigRat, Index};
use crate::stirling::{StirlingEngine, StirlingTables};

/// Coefficients in the power basis, lowest order first, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<BigRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(BigRat::from_integer).collect())
    }

    /// `x^power`.
    pub fn monomial(power: Index) -> Self {
        let mut coeffs = vec![BigRat::zero(); power + 1];
        coeffs[power] = BigRat::one();
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<Index> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, power: Index) -> BigRat {
        self.coeffs.get(power).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    /// Coefficient of `x`, i.e. the derivative at zero.
    pub fn linear_coefficient(&self) -> BigRat {
        self.coeff(1)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|c| parse_rat(c))
            .collect::<Result<Vec<_>>>()
            .map(Poly::from_coeffs)
            .map_err(serde::de::Error::custom)
    }
}

/// Free-function spelling of [`Poly::eval`].
pub fn poly_eval(p: &Poly, x: &BigRat) -> BigRat {
    p.eval(x)
}

/// Free-function spelling of [`Poly::linear_coefficient`].
pub fn linear_coefficient(p: &Poly) -> BigRat {
    p.linear_coefficient()
}

/// Integer accumulator indexed by power; turned into a [`Poly`] once filled.
struct Accumulator(Vec<BigInt>);

impl Accumulator {
    fn new(max_power: Index) -> Self {
        Accumulator(vec![BigInt::zero(); max_power + 1])
    }

    fn add(&mut self, power: Index, a: &BigInt, b: &BigInt) {
        self.0[power] += a * b;
    }

    fn finish(self) -> Poly {
        Poly::from_ints(self.0)
    }
}

type Lookup = for<'a> fn(&'a StirlingTables, Index, Index) -> &'a BigInt;

/// `sum_{j=1}^{outer_end} outer(n,j) sum_{k=1}^{j} inner(j,k) x^k`
/// plus, when `tail` is set, `outer(n,n) sum_{k=1}^{n-1} inner(n,k) x^k`.
fn nested_sum(
    t: &StirlingTables,
    n: Index,
    outer: Lookup,
    inner: Lookup,
    outer_end: Index,
    tail: bool,
) -> Poly {
    let mut acc = Accumulator::new(n);
    for j in 1..=outer_end {
        let a = outer(t, n, j);
        for k in 1..=j {
            acc.add(k, a, inner(t, j, k));
        }
    }
    if tail {
        let a = outer(t, n, n);
        for k in 1..n {
            acc.add(k, a, inner(t, n, k));
        }
    }
    acc.finish()
}

fn s1(t: &StirlingTables, n: Index, m: Index) -> &BigInt {
    t.s1(n, m)
}

fn s2(t: &StirlingTables, n: Index, m: Index) -> &BigInt {
    t.s2(n, m)
}

fn positive(engine: &StirlingEngine, m: Index, what: &str) -> Result<()> {
    engine.check_index(m)?;
    if m == 0 {
        return Err(Error::domain(format!("{what} needs an index >= 1")));
    }
    Ok(())
}

/// `sum_{j=1}^{m} s(m,j) sum_{k=1}^{j} S(j,k) x^k`, which equals `x^m`.
pub fn basis_poly_first(engine: &StirlingEngine, m: Index) -> Result<Poly> {
    positive(engine, m, "basis_poly_first")?;
    Ok(nested_sum(&engine.tables(m), m, s1, s2, m, false))
}

/// `sum_{m=1}^{j} S(j,m) sum_{k=1}^{m} s(m,k) x^k`, which equals `x^j`.
pub fn basis_poly_second(engine: &StirlingEngine, j: Index) -> Result<Poly> {
    positive(engine, j, "basis_poly_second")?;
    Ok(nested_sum(&engine.tables(j), j, s2, s1, j, false))
}

/// The first-kind basis sum with its `x^m` term removed; identically zero.
pub fn residual_poly_first(engine: &StirlingEngine, m: Index) -> Result<Poly> {
    positive(engine, m, "residual_poly_first")?;
    Ok(nested_sum(&engine.tables(m), m, s1, s2, m - 1, true))
}

/// The second-kind basis sum with its `x^j` term removed; identically zero.
pub fn residual_poly_second(engine: &StirlingEngine, j: Index) -> Result<Poly> {
    positive(engine, j, "residual_poly_second")?;
    Ok(nested_sum(&engine.tables(j), j, s2, s1, j - 1, true))
}
