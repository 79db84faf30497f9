//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] lives in a ring `ℚ[x_0, …, x_{n-1}]` of fixed arity `n`.
//! Terms are stored in a map from [`Monomial`] to [`Rational`]; zero
//! coefficients are never stored, so structural equality is mathematical
//! equality. Variables are addressed by index; names only matter for
//! [`parse_poly`] and [`Polynomial::display`].

mod monomial;
mod parse;

pub use monomial::Monomial;
pub use parse::{parse_poly, parse_rational, validate_vars};

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational number.
pub type Rational = num::BigRational;

/// Builds a rational from a numerator and a non-zero denominator.
#[must_use]
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integral rational.
#[must_use]
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` or `p/q` (sign on the numerator).
#[must_use]
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Converts a rational to the nearest `f64`, even for huge numerators/denominators.
#[must_use]
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Fall back on a scaled division to avoid overflow.
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// A sparse polynomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    /// The zero polynomial of the given arity.
    #[must_use]
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: BTreeMap::new() }
    }

    /// A constant polynomial.
    #[must_use]
    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(Monomial::one(arity), c);
        p
    }

    /// The variable `x_i` (panics if `i >= arity`).
    #[must_use]
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable index {i} out of range for arity {arity}");
        let mut e = vec![0; arity];
        e[i] = 1;
        Self::from_terms(arity, [(Monomial::new(e), Rational::one())])
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging duplicates.
    ///
    /// Panics if a monomial has the wrong arity.
    #[must_use]
    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(arity);
        for (m, c) in terms {
            assert_eq!(m.arity(), arity, "monomial arity does not match polynomial arity");
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c · m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Number of variables of the ambient ring.
    #[must_use]
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Whether this is the zero polynomial.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of non-zero terms.
    #[must_use]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero if absent).
    #[must_use]
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant value, if the polynomial has no non-constant term.
    #[must_use]
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree (0 for the zero polynomial).
    #[must_use]
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn check_var(&self, i: usize) -> Result<()> {
        if i < self.arity {
            Ok(())
        } else {
            Err(Error::VariableOutOfRange { index: i, arity: self.arity })
        }
    }

    fn check_same_arity(&self, other: &Self) -> Result<()> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch { left: self.arity, right: other.arity })
        }
    }

    /// Multiplies every coefficient by `c`.
    #[must_use]
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Self {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Computes `c1·p1 + c2·p2`.
    pub fn linear_combine(c1: &Rational, p1: &Self, c2: &Rational, p2: &Self) -> Result<Self> {
        p1.check_same_arity(p2)?;
        let mut out = p1.scale(c1);
        if !c2.is_zero() {
            for (m, a) in &p2.terms {
                out.add_term(m.clone(), a * c2);
            }
        }
        Ok(out)
    }

    /// Sum of two polynomials of equal arity.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(&Rational::one(), self, &Rational::one(), other)
    }

    /// Difference of two polynomials of equal arity.
    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(&Rational::one(), self, &-Rational::one(), other)
    }

    /// Product of two polynomials of equal arity.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (m1, a1) in &self.terms {
            for (m2, a2) in &other.terms {
                out.add_term(m1.mul(m2), a1 * a2);
            }
        }
        Ok(out)
    }

    /// `∂/∂x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        self.check_var(i)?;
        let mut out = Self::zero(self.arity);
        for (m, a) in &self.terms {
            let e = m.exponent(i);
            if e > 0 {
                out.add_term(m.with_exponent(i, e - 1), a * BigInt::from(e));
            }
        }
        Ok(out)
    }

    /// Antiderivative in `x_i` with integration constant zero.
    pub fn antiderivative(&self, i: usize) -> Result<Self> {
        self.check_var(i)?;
        let mut out = Self::zero(self.arity);
        for (m, a) in &self.terms {
            let e = m.exponent(i) + 1;
            out.add_term(m.with_exponent(i, e), a / BigInt::from(e));
        }
        Ok(out)
    }

    /// Substitutes the rational value `v` for `x_i`; the arity is unchanged.
    pub fn substitute(&self, i: usize, v: &Rational) -> Result<Self> {
        self.check_var(i)?;
        let mut out = Self::zero(self.arity);
        for (m, a) in &self.terms {
            let e = m.exponent(i);
            let factor = pow_rational(v, e);
            out.add_term(m.with_exponent(i, 0), a * factor);
        }
        Ok(out)
    }

    /// Largest exponent of `x_i` over all terms (0 for the zero polynomial).
    pub fn x_index(&self, i: usize) -> Result<u32> {
        self.check_var(i)?;
        Ok(self.terms.keys().map(|m| m.exponent(i)).max().unwrap_or(0))
    }

    /// The part of the polynomial whose terms do not contain `x_i`.
    pub fn free_part(&self, i: usize) -> Result<Self> {
        self.check_var(i)?;
        Ok(Self {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(i) == 0)
                .map(|(m, a)| (m.clone(), a.clone()))
                .collect(),
        })
    }

    /// Iterated definite integral over a box, in the order given.
    ///
    /// Each entry is `(variable index, lower bound, upper bound)`. Integrated
    /// variables disappear from the result; others survive, so the result is
    /// a polynomial of the same arity.
    pub fn integrate_box(&self, bounds: &[(usize, Rational, Rational)]) -> Result<Self> {
        let mut seen = vec![false; self.arity];
        for (i, _, _) in bounds {
            self.check_var(*i)?;
            if seen[*i] {
                return Err(Error::DuplicateIntegrationVariable(*i));
            }
            seen[*i] = true;
        }
        let mut p = self.clone();
        for (i, lo, hi) in bounds {
            let a = p.antiderivative(*i)?;
            p = a.substitute(*i, hi)?.try_sub(&a.substitute(*i, lo)?)?;
        }
        Ok(p)
    }

    /// Exact evaluation at a full point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, a) in &self.terms {
            let mut t = a.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= pow_rational(&point[i], e);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating-point evaluator, precompiled for fast repeated evaluation.
    #[must_use]
    pub fn to_f64_evaluator(&self) -> F64Poly {
        F64Poly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (rational_to_f64(a), m.exponents().to_vec()))
                .collect(),
        }
    }

    /// Renders the polynomial with the given variable names.
    ///
    /// Terms appear in descending graded-lex order, using explicit `*` and `^`.
    #[must_use]
    pub fn display<'a>(&'a self, vars: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }

    /// Convenience wrapper around [`Polynomial::display`].
    #[must_use]
    pub fn format(&self, vars: &[String]) -> String {
        self.display(vars).to_string()
    }
}

/// `v^e` for a rational base.
#[must_use]
pub fn pow_rational(v: &Rational, e: u32) -> Rational {
    num::pow::pow(v.clone(), e as usize)
}

/// A polynomial with `f64` coefficients, for quadrature.
#[derive(Clone, Debug)]
pub struct F64Poly {
    arity: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl F64Poly {
    /// Evaluates at a point of length `arity`.
    #[must_use]
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.arity);
        let mut acc = 0.0;
        for (c, e) in &self.terms {
            let mut t = *c;
            for (xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    t *= xi.powi(ei as i32);
                }
            }
            acc += t;
        }
        acc
    }
}

/// Display adapter returned by [`Polynomial::display`].
pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    vars: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}*", format_rational(&abs))?;
            }
            let mut first = true;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                let name = self.vars.get(i).map_or_else(|| format!("x{i}"), Clone::clone);
                if e == 1 {
                    f.write_str(&name)?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
