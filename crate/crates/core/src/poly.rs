//! Sparse polynomials in `x₁, x₂, x₃` with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent triple. Zero coefficients
//! are never stored, so structural equality is polynomial equality and the
//! zero polynomial is the empty map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Exponents of `x₁^e₁ x₂^e₂ x₃^e₃`.
pub type Exponents = [u32; 3];

/// Polynomials with more terms than this are rejected where a size check
/// applies (input parsing, products, chain application).
pub const MAX_TERMS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial has {terms} terms, limit is {limit}")]
pub struct TooManyTerms {
    pub terms: usize,
    pub limit: usize,
}

/// Axis of R^3, numbered 1 to 3 at the API boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X1,
    X2,
    X3,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X1, Axis::X2, Axis::X3];

    pub const fn index(self) -> usize {
        match self {
            Axis::X1 => 0,
            Axis::X2 => 1,
            Axis::X3 => 2,
        }
    }

    /// `1 | 2 | 3` to an axis.
    pub fn from_number(n: usize) -> Option<Axis> {
        match n {
            1 => Some(Axis::X1),
            2 => Some(Axis::X2),
            3 => Some(Axis::X3),
            _ => None,
        }
    }
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::monomial(c, [0, 0, 0])
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    /// `x₁`, `x₂` or `x₃`.
    pub fn var(axis: Axis) -> Self {
        let mut e = [0; 3];
        e[axis.index()] = 1;
        Polynomial::monomial(Rational::one(), e)
    }

    pub fn monomial(c: Rational, e: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Polynomial { terms }
    }

    /// Sums the given terms; repeated exponents are added together.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, Rational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Integer-coefficient shorthand, mostly for tests.
    pub fn from_int_terms(terms: &[(i64, Exponents)]) -> Self {
        Polynomial::from_terms(terms.iter().map(|&(c, e)| (e, rational(c))))
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: Exponents) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    pub fn check_size(&self) -> Result<(), TooManyTerms> {
        if self.len() > MAX_TERMS {
            Err(TooManyTerms {
                terms: self.len(),
                limit: MAX_TERMS,
            })
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Formal partial derivative.
    pub fn partial(&self, axis: Axis) -> Self {
        let a = axis.index();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[a] == 0 {
                continue;
            }
            let mut d = *e;
            d[a] -= 1;
            // Distinct input exponents map to distinct outputs, so no merging.
            terms.insert(d, c * Rational::from_integer(BigInt::from(e[a])));
        }
        Polynomial { terms }
    }

    /// Product with a size check on the result.
    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, TooManyTerms> {
        let bound = self.len().saturating_mul(other.len());
        let mut out = Polynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
            if bound > MAX_TERMS {
                out.check_size()?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            sum += term;
        }
        sum
    }

    /// Floating-point value, used to sample a polynomial for the numeric
    /// oracle.
    pub fn eval_f64(&self, point: [f64; 3]) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(e, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                c * point[0].powi(e[0] as i32)
                    * point[1].powi(e[1] as i32)
                    * point[2].powi(e[2] as i32)
            })
            .sum()
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

/// Unchecked product; see [`Polynomial::try_mul`] for the size-limited form.
impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Highest degree first reads more naturally.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let abs = c.abs();
            let is_const = *e == [0, 0, 0];
            if is_const || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            let mut first = is_const || !abs.is_one();
            for (k, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                if first {
                    f.write_str("*")?;
                }
                first = true;
                write!(f, "x{}", k + 1)?;
                if p > 1 {
                    write!(f, "^{p}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(Axis::from_number(i).unwrap())
    }

    #[test]
    fn power_rule() {
        let p = Polynomial::from_int_terms(&[(1, [2, 1, 0])]);
        assert_eq!(
            p.partial(Axis::X1),
            Polynomial::from_int_terms(&[(2, [1, 1, 0])])
        );
        assert!(x(3).partial(Axis::X1).is_zero());
    }

    #[test]
    fn rational_coefficient_partial() {
        let p = Polynomial::from_terms([([2, 0, 0], rational(1)), ([1, 1, 0], ratio(3, 2))]);
        assert_eq!(
            p.partial(Axis::X2),
            Polynomial::monomial(ratio(3, 2), [1, 0, 0])
        );
    }

    #[test]
    fn cancellation_yields_canonical_zero() {
        let p = &x(1) - &x(1);
        assert!(p.is_zero());
        assert_eq!(p, Polynomial::zero());
        let q = Polynomial::from_terms([([1, 0, 0], rational(2)), ([1, 0, 0], rational(-2))]);
        assert!(q.is_zero());
        assert!(Polynomial::monomial(rational(0), [3, 0, 0]).is_zero());
    }

    #[test]
    fn rationals_normalize() {
        let c = ratio(6, -4);
        assert_eq!(c, ratio(-3, 2));
        assert!(c.denom() > &BigInt::from(0));
    }

    #[test]
    fn eval_by_substitution() {
        let p = Polynomial::from_int_terms(&[(1, [2, 1, 0])]);
        assert_eq!(
            p.eval(&[rational(2), rational(3), rational(0)]),
            rational(12)
        );
        let q = Polynomial::from_int_terms(&[(2, [1, 0, 0])]);
        assert_eq!(
            q.eval(&[ratio(1, 2), rational(0), rational(0)]),
            rational(1)
        );
    }

    #[test]
    fn products_and_powers() {
        let r2 = &(&(&x(1) * &x(1)) + &(&x(2) * &x(2))) + &(&x(3) * &x(3));
        let r4 = r2.pow(2);
        assert_eq!(r4.len(), 6);
        assert_eq!(r4.coefficient([2, 2, 0]), rational(2));
        assert_eq!(r4.total_degree(), Some(4));
        assert_eq!(r2.try_mul(&r2).unwrap(), r4);
        assert_eq!(Polynomial::zero().total_degree(), None);
    }

    #[test]
    fn display() {
        let p = Polynomial::from_terms([
            ([2, 0, 1], ratio(3, 2)),
            ([0, 0, 0], rational(-1)),
            ([0, 1, 0], rational(1)),
        ]);
        assert_eq!(p.to_string(), "3/2*x1^2*x3 + x2 - 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }
}
