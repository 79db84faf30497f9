//! Polynomial tuples and the expansion operator.
//!
//! A [`PolyTuple`] is a vector `(f_1, …, f_s)`, `s ≥ 2`, of polynomials of a
//! common arity. The mixing map `β = J − I` replaces each entry with the sum
//! of the *other* entries; it is invertible with `β⁻¹ = J/(s−1) − I`. The
//! expansion in direction `d` is `E_d(t) = β(∂t/∂x_d)`, taken entrywise.
//!
//! Since `β` is invertible and `∂/∂x_d` lowers the largest `x_d` exponent of
//! a non-null tuple by exactly one, `E_d` is nilpotent on every tuple and its
//! annihilation step (the *totient*) is the largest `x_d` exponent plus one.

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Rational};

/// A direction: the index of the variable to differentiate in.
pub type Direction = usize;

/// A tuple of at least two polynomials of equal arity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyTuple {
    arity: usize,
    entries: Vec<Polynomial>,
}

impl PolyTuple {
    /// Builds a tuple, checking the length and that all arities agree.
    pub fn new(entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::TupleTooShort(entries.len()));
        }
        let arity = entries[0].arity();
        if let Some(p) = entries.iter().find(|p| p.arity() != arity) {
            return Err(Error::ArityMismatch { left: arity, right: p.arity() });
        }
        Ok(Self { arity, entries })
    }

    /// Parses every entry over the given variables.
    pub fn parse<S: AsRef<str>>(vars: &[String], entries: &[S]) -> Result<Self> {
        let polys = entries
            .iter()
            .map(|e| crate::polyring::parse_poly(e.as_ref(), vars))
            .collect::<Result<Vec<_>>>()?;
        Self::new(polys)
    }

    /// The null tuple `(0, …, 0)`.
    #[must_use]
    pub fn zero(arity: usize, len: usize) -> Self {
        assert!(len >= 2, "tuple length must be at least 2");
        Self { arity, entries: vec![Polynomial::zero(arity); len] }
    }

    /// Number of entries `s`.
    #[must_use]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false: tuples have at least two entries.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Arity shared by all entries.
    #[must_use]
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The entries.
    #[must_use]
    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    /// Whether every entry is zero.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Whether some entry is zero.
    #[must_use]
    pub fn has_zero_entry(&self) -> bool {
        self.entries.iter().any(Polynomial::is_zero)
    }

    /// Whether every entry is a constant polynomial.
    #[must_use]
    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|p| p.constant_value().is_some())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        Ok(())
    }

    pub(crate) fn check_direction(&self, d: Direction) -> Result<()> {
        if d < self.arity {
            Ok(())
        } else {
            Err(Error::VariableOutOfRange { index: d, arity: self.arity })
        }
    }

    /// Applies a fallible map to every entry.
    pub fn try_map<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&Polynomial) -> Result<Polynomial>,
    {
        Ok(Self { arity: self.arity, entries: self.entries.iter().map(f).collect::<Result<_>>()? })
    }

    /// `c1·a + c2·b`, entrywise.
    pub fn linear_combine(c1: &Rational, a: &Self, c2: &Rational, b: &Self) -> Result<Self> {
        a.check_compatible(b)?;
        let entries = a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(p, q)| Polynomial::linear_combine(c1, p, c2, q))
            .collect::<Result<_>>()?;
        Ok(Self { arity: a.arity, entries })
    }

    /// Entrywise sum.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(&Rational::one(), self, &Rational::one(), other)
    }

    /// Entrywise difference.
    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(&Rational::one(), self, &-Rational::one(), other)
    }

    /// Multiplies every entry by a scalar.
    #[must_use]
    pub fn scale(&self, c: &Rational) -> Self {
        Self { arity: self.arity, entries: self.entries.iter().map(|p| p.scale(c)).collect() }
    }

    /// Largest `x_d` exponent over all entries.
    pub fn x_index(&self, d: Direction) -> Result<u32> {
        self.check_direction(d)?;
        let mut m = 0;
        for p in &self.entries {
            m = m.max(p.x_index(d)?);
        }
        Ok(m)
    }

    /// The `x_d` exponent of each entry.
    pub fn entry_indices(&self, d: Direction) -> Result<Vec<u32>> {
        self.check_direction(d)?;
        self.entries.iter().map(|p| p.x_index(d)).collect()
    }

    /// Entries rendered with the given variable names.
    #[must_use]
    pub fn format(&self, vars: &[String]) -> Vec<String> {
        self.entries.iter().map(|p| p.format(vars)).collect()
    }

    /// Renders as `(e_1, …, e_s)`.
    #[must_use]
    pub fn display(&self, vars: &[String]) -> String {
        format!("({})", self.format(vars).join(", "))
    }
}

/// A non-empty sequence of directions, applied left to right; repeats allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MixedDirection(Vec<Direction>);

impl MixedDirection {
    /// Builds a path, rejecting the empty one.
    pub fn new(dirs: Vec<Direction>) -> Result<Self> {
        if dirs.is_empty() {
            Err(Error::EmptyPath)
        } else {
            Ok(Self(dirs))
        }
    }

    /// A path of length one.
    #[must_use]
    pub fn single(d: Direction) -> Self {
        Self(vec![d])
    }

    /// The directions, in application order.
    #[must_use]
    pub fn dirs(&self) -> &[Direction] {
        &self.0
    }

    /// Path length `l` (counting repeats).
    #[must_use]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: paths are non-empty.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Distinct directions in order of first appearance.
    #[must_use]
    pub fn distinct(&self) -> Vec<Direction> {
        let mut out = Vec::new();
        for &d in &self.0 {
            if !out.contains(&d) {
                out.push(d);
            }
        }
        out
    }

    /// How many times `d` occurs in the path.
    #[must_use]
    pub fn multiplicity(&self, d: Direction) -> usize {
        self.0.iter().filter(|&&e| e == d).count()
    }

    /// The single direction of a length-one path.
    #[must_use]
    pub fn as_single(&self) -> Option<Direction> {
        (self.0.len() == 1).then(|| self.0[0])
    }

    /// Renders as `x,y,…` with the given variable names.
    #[must_use]
    pub fn format(&self, vars: &[String]) -> Vec<String> {
        self.0.iter().map(|&d| vars.get(d).cloned().unwrap_or_else(|| d.to_string())).collect()
    }
}

/// `β(t)`: entry `j` becomes the sum of all other entries.
#[must_use]
pub fn beta_apply(t: &PolyTuple) -> PolyTuple {
    let total = sum_entries(t);
    let entries = t.entries.iter().map(|p| total.try_sub(p).expect("same arity")).collect();
    PolyTuple { arity: t.arity, entries }
}

/// `β⁻¹(t)`: entry `j` becomes `(Σ t)/(s−1) − t_j`.
#[must_use]
pub fn beta_inverse_apply(t: &PolyTuple) -> PolyTuple {
    let s1 = Rational::from_integer(BigInt::from(t.len() - 1));
    let share = sum_entries(t).scale(&(Rational::one() / s1));
    let entries = t.entries.iter().map(|p| share.try_sub(p).expect("same arity")).collect();
    PolyTuple { arity: t.arity, entries }
}

fn sum_entries(t: &PolyTuple) -> Polynomial {
    let mut total = Polynomial::zero(t.arity);
    for p in &t.entries {
        total = total.try_add(p).expect("same arity");
    }
    total
}

/// `E_d(t) = β(∂t/∂x_d)`.
pub fn expand(t: &PolyTuple, d: Direction) -> Result<PolyTuple> {
    t.check_direction(d)?;
    Ok(beta_apply(&t.try_map(|p| p.partial_derivative(d))?))
}

/// `E_d^k(t)`; `k = 0` returns `t`.
pub fn expand_pow(t: &PolyTuple, d: Direction, k: u32) -> Result<PolyTuple> {
    t.check_direction(d)?;
    let mut cur = t.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        cur = expand(&cur, d)?;
    }
    Ok(cur)
}

/// Applies `E_{m_1}`, then `E_{m_2}`, … along the path.
pub fn expand_mixed(t: &PolyTuple, m: &MixedDirection) -> Result<PolyTuple> {
    let mut cur = t.clone();
    for &d in m.dirs() {
        cur = expand(&cur, d)?;
    }
    Ok(cur)
}

/// `E_m^k(t)`: the mixed expansion applied `k` times.
pub fn expand_mixed_pow(t: &PolyTuple, m: &MixedDirection, k: u32) -> Result<PolyTuple> {
    let mut cur = t.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        cur = expand_mixed(&cur, m)?;
    }
    Ok(cur)
}

/// Substitutes the given values; unassigned variables stay symbolic.
pub fn value_at(t: &PolyTuple, assignments: &[(Direction, Rational)]) -> Result<PolyTuple> {
    t.try_map(|p| {
        let mut q = p.clone();
        for (i, v) in assignments {
            q = q.substitute(*i, v)?;
        }
        Ok(q)
    })
}

/// Evaluates at `x_d = 0`, leaving the other variables symbolic.
pub fn at_origin(t: &PolyTuple, d: Direction) -> Result<PolyTuple> {
    value_at(t, &[(d, Rational::zero())])
}

/// Smallest `k ≥ 1` with `E_d^k(t) = 0`, found by iterating the operator.
pub fn totient(t: &PolyTuple, d: Direction) -> Result<u32> {
    t.check_direction(d)?;
    let mut cur = t.clone();
    let mut k = 0;
    loop {
        k += 1;
        if cur.is_zero() {
            return Ok(k);
        }
        cur = expand(&cur, d)?;
        if cur.is_zero() {
            return Ok(k);
        }
    }
}

/// Closed form of the totient: the largest `x_d` exponent plus one.
pub fn totient_formula(t: &PolyTuple, d: Direction) -> Result<u32> {
    Ok(t.x_index(d)? + 1)
}

/// Smallest `k ≥ 1` with `E_m^k(t) = 0`.
pub fn mixed_totient(t: &PolyTuple, m: &MixedDirection) -> Result<u32> {
    let mut cur = t.clone();
    let mut k = 0;
    loop {
        k += 1;
        cur = expand_mixed(&cur, m)?;
        if cur.is_zero() {
            return Ok(k);
        }
    }
}

/// `E_d^{Φ−1}(t)`: the last non-null iterate (the null tuple maps to itself).
pub fn residue(t: &PolyTuple, d: Direction) -> Result<PolyTuple> {
    let phi = totient_formula(t, d)?;
    expand_pow(t, d, phi - 1)
}

/// Antiderivative in `x_d` (constant zero) of `β⁻¹(t)`; a right inverse of `E_d`.
pub fn contract(t: &PolyTuple, d: Direction) -> Result<PolyTuple> {
    t.check_direction(d)?;
    beta_inverse_apply(t).try_map(|p| p.antiderivative(d))
}

/// Applies [`contract`] `k` times.
pub fn contract_pow(t: &PolyTuple, d: Direction, k: u32) -> Result<PolyTuple> {
    let mut cur = t.clone();
    for _ in 0..k {
        cur = contract(&cur, d)?;
    }
    Ok(cur)
}

/// Fixes every variable except `keep`, yielding a one-variable tuple (same arity).
pub fn specialize(
    t: &PolyTuple,
    assignments: &[(Direction, Rational)],
    keep: Direction,
) -> Result<PolyTuple> {
    t.check_direction(keep)?;
    let mut covered = vec![false; t.arity];
    for (i, _) in assignments {
        t.check_direction(*i)?;
        if *i == keep {
            return Err(Error::SpecializationCoverage(format!("kept variable {keep} is assigned")));
        }
        if covered[*i] {
            return Err(Error::SpecializationCoverage(format!("variable {i} assigned twice")));
        }
        covered[*i] = true;
    }
    if let Some(i) = (0..t.arity).find(|&i| i != keep && !covered[i]) {
        return Err(Error::SpecializationCoverage(format!("variable {i} is not assigned")));
    }
    value_at(t, assignments)
}
