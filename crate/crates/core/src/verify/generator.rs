//! Deterministic random instances.
//!
//! Every case draws from its own ChaCha stream keyed by `(seed, case index)`,
//! so a case can be regenerated in isolation and results do not depend on
//! how cases are scheduled across threads.

use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{Direction, MixedDirection, PolyTuple};
use crate::polyring::{Monomial, Polynomial, Rational};

/// Bounds for generated tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    /// Largest arity (each case draws from `1..=arity`); at most 4.
    pub arity: usize,
    /// Largest tuple length (each case draws from `2..=tuple_len`); at most 5.
    pub tuple_len: usize,
    /// Largest total degree of a term; at most 8.
    pub max_degree: u32,
    /// Largest number of terms drawn per entry; between 1 and 8.
    pub terms_per_entry: usize,
    /// Coefficient numerators lie in `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    /// Base seed.
    pub seed: u64,
    /// Number of random cases per suite.
    pub cases: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self { arity: 3, tuple_len: 4, max_degree: 6, terms_per_entry: 4, coeff_bound: 9, seed: 42, cases: 200 }
    }
}

impl GenConfig {
    /// Checks every bound.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Input(format!("generator config: {m}")));
        if !(1..=4).contains(&self.arity) {
            return bad("arity must be in 1..=4");
        }
        if !(2..=5).contains(&self.tuple_len) {
            return bad("tuple_len must be in 2..=5");
        }
        if self.max_degree > 8 {
            return bad("max_degree must be in 0..=8");
        }
        if !(1..=8).contains(&self.terms_per_entry) {
            return bad("terms_per_entry must be in 1..=8");
        }
        if self.coeff_bound < 1 {
            return bad("coeff_bound must be positive");
        }
        Ok(())
    }
}

/// Conventional variable names for arity up to 4.
#[must_use]
pub fn vars_for(arity: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    (0..arity).map(|i| NAMES.get(i).map_or_else(|| format!("x{i}"), |s| (*s).to_string())).collect()
}

/// The random stream of one case.
#[must_use]
pub fn case_rng(cfg: &GenConfig, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(case);
    rng
}

fn coefficient<R: Rng>(rng: &mut R, cfg: &GenConfig, allow_zero: bool) -> Rational {
    let b = cfg.coeff_bound;
    let num = loop {
        let n = rng.gen_range(-b..=b);
        if n != 0 || allow_zero {
            break n;
        }
    };
    let den = [1, 1, 1, 2, 3][rng.gen_range(0..5)];
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn monomial<R: Rng>(rng: &mut R, arity: usize, max_degree: u32) -> Monomial {
    let deg = rng.gen_range(0..=max_degree);
    let mut e = vec![0u32; arity];
    for _ in 0..deg {
        e[rng.gen_range(0..arity)] += 1;
    }
    Monomial::new(e)
}

/// A random polynomial; non-zero unless `max_degree = 0`, where zero constants may be drawn.
pub fn gen_poly<R: Rng>(rng: &mut R, cfg: &GenConfig, arity: usize) -> Polynomial {
    let allow_zero = cfg.max_degree == 0;
    loop {
        let k = rng.gen_range(1..=cfg.terms_per_entry);
        let mut p = Polynomial::zero(arity);
        for _ in 0..k {
            let m = monomial(rng, arity, cfg.max_degree);
            p.add_term(m, coefficient(rng, cfg, allow_zero));
        }
        if !p.is_zero() || allow_zero {
            return p;
        }
    }
}

/// A random tuple of the given shape.
pub fn gen_tuple_shaped<R: Rng>(rng: &mut R, cfg: &GenConfig, arity: usize, len: usize) -> PolyTuple {
    PolyTuple::new((0..len).map(|_| gen_poly(rng, cfg, arity)).collect())
        .expect("generated tuples are well formed")
}

/// A random tuple with random shape within the configured bounds.
pub fn gen_tuple<R: Rng>(rng: &mut R, cfg: &GenConfig) -> PolyTuple {
    let arity = rng.gen_range(1..=cfg.arity);
    let len = rng.gen_range(2..=cfg.tuple_len);
    gen_tuple_shaped(rng, cfg, arity, len)
}

/// The tuple of case `idx`: a pure function of `(cfg, idx)`.
#[must_use]
pub fn gen_random_tuple(cfg: &GenConfig, idx: u64) -> PolyTuple {
    gen_tuple(&mut case_rng(cfg, idx), cfg)
}

/// A random tuple shaped like `t` whose entries share no monomial with the matching entry of `t`.
pub fn gen_disjoint_like<R: Rng>(rng: &mut R, cfg: &GenConfig, t: &PolyTuple) -> PolyTuple {
    let entries = t
        .entries()
        .iter()
        .map(|a| {
            let b = gen_poly(rng, cfg, t.arity());
            Polynomial::from_terms(
                t.arity(),
                b.terms()
                    .filter(|(m, _)| a.coeff(m).is_zero())
                    .map(|(m, c)| (m.clone(), c.clone())),
            )
        })
        .collect();
    PolyTuple::new(entries).expect("same shape as t")
}

/// A random direction below `arity`.
pub fn gen_direction<R: Rng>(rng: &mut R, arity: usize) -> Direction {
    rng.gen_range(0..arity)
}

/// A random path of length 1..=3, optionally forced to contain `must`.
pub fn gen_path<R: Rng>(rng: &mut R, arity: usize, must: Option<Direction>) -> MixedDirection {
    let len = rng.gen_range(1..=3);
    let mut dirs: Vec<Direction> = (0..len).map(|_| rng.gen_range(0..arity)).collect();
    if let Some(d) = must {
        if !dirs.contains(&d) {
            let k = rng.gen_range(0..len);
            dirs[k] = d;
        }
    }
    MixedDirection::new(dirs).expect("non-empty")
}

/// A random path whose directions are pairwise distinct.
pub fn gen_distinct_path<R: Rng>(rng: &mut R, arity: usize) -> MixedDirection {
    let mut pool: Vec<Direction> = (0..arity).collect();
    let len = rng.gen_range(1..=arity.min(3));
    let mut dirs = Vec::with_capacity(len);
    for _ in 0..len {
        dirs.push(pool.swap_remove(rng.gen_range(0..pool.len())));
    }
    MixedDirection::new(dirs).expect("non-empty")
}

/// A small random rational in `[-2, 2]` with denominator at most 2.
pub fn gen_small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(-4..=4)), BigInt::from(2))
}

/// Random bounds `lo < hi` with half-integer endpoints in `[-1, 2]`.
pub fn gen_interval<R: Rng>(rng: &mut R) -> (Rational, Rational) {
    let a = rng.gen_range(-2i64..=3);
    let b = rng.gen_range(a + 1..=4);
    (Rational::new(BigInt::from(a), BigInt::from(2)), Rational::new(BigInt::from(b), BigInt::from(2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic_and_bounded() {
        let cfg = GenConfig::default();
        for i in 0..50 {
            let a = gen_random_tuple(&cfg, i);
            assert_eq!(a, gen_random_tuple(&cfg, i));
            assert!((1..=cfg.arity).contains(&a.arity()));
            assert!((2..=cfg.tuple_len).contains(&a.len()));
            for p in a.entries() {
                assert!(!p.is_zero());
                assert!(p.total_degree() <= cfg.max_degree);
                assert!(p.num_terms() <= cfg.terms_per_entry);
            }
        }
        let other = GenConfig { seed: 7, ..cfg.clone() };
        assert!((0..20).any(|i| gen_random_tuple(&cfg, i) != gen_random_tuple(&other, i)));
    }

    #[test]
    fn degree_zero_gives_constants() {
        let cfg = GenConfig { max_degree: 0, ..GenConfig::default() };
        for i in 0..20 {
            assert!(gen_random_tuple(&cfg, i).is_constant());
        }
    }

    #[test]
    fn disjoint_variant_shares_no_monomials() {
        let cfg = GenConfig::default();
        let mut rng = case_rng(&cfg, 3);
        let a = gen_tuple(&mut rng, &cfg);
        let b = gen_disjoint_like(&mut rng, &cfg, &a);
        for (p, q) in a.entries().iter().zip(b.entries()) {
            assert!(q.terms().all(|(m, _)| p.coeff(m).is_zero()));
        }
    }

    #[test]
    fn config_validation() {
        assert!(GenConfig::default().validate().is_ok());
        assert!(GenConfig { arity: 5, ..GenConfig::default() }.validate().is_err());
        assert!(GenConfig { tuple_len: 1, ..GenConfig::default() }.validate().is_err());
        assert!(GenConfig { max_degree: 9, ..GenConfig::default() }.validate().is_err());
    }
}
