//! Adaptive tensor-product Gauss–Legendre quadrature over axis-aligned boxes.
//!
//! Every cell is integrated with an order-16 tensor rule and compared with
//! the sum over its `2^l` dyadic children. Cells whose discrepancy exceeds
//! their share of the tolerance are split, up to a fixed depth. Cells of
//! one level are processed in a fixed order and summed pairwise, so the
//! parallel and sequential paths produce bit-identical results.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Points per axis of the tensor rule.
pub const GL_ORDER: usize = 16;
/// Maximum number of dyadic refinement levels.
pub const MAX_DEPTH: u32 = 6;

/// Settings for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    /// Relative tolerance on the final estimate.
    pub tol: f64,
    /// Maximum refinement depth.
    pub max_depth: u32,
    /// Evaluate cells of a level in parallel.
    pub parallel: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { tol: 1e-9, max_depth: MAX_DEPTH, parallel: true }
    }
}

/// Estimate returned by [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    /// Integral estimate.
    pub value: f64,
    /// Sum of the per-cell discrepancies between successive levels.
    pub error_estimate: f64,
    /// Whether `error_estimate ≤ tol·|value|`.
    pub converged: bool,
    /// Number of accepted cells.
    pub cells: usize,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, computed once by Newton iteration.
#[must_use]
pub fn gauss_legendre() -> &'static ([f64; GL_ORDER], [f64; GL_ORDER]) {
    static RULE: OnceLock<([f64; GL_ORDER], [f64; GL_ORDER])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut x = [0.0; GL_ORDER];
        let mut w = [0.0; GL_ORDER];
        for i in 0..n {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            x[i] = -z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        (x, w)
    })
}

/// Sums in a fixed balanced-tree order.
#[must_use]
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

#[derive(Clone, Debug)]
struct Cell {
    lo: Vec<f64>,
    hi: Vec<f64>,
    depth: u32,
}

impl Cell {
    fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    fn children(&self) -> Vec<Cell> {
        let l = self.lo.len();
        (0..1usize << l)
            .map(|mask| {
                let mut lo = self.lo.clone();
                let mut hi = self.hi.clone();
                for k in 0..l {
                    let mid = 0.5 * (self.lo[k] + self.hi[k]);
                    if mask >> k & 1 == 0 {
                        hi[k] = mid;
                    } else {
                        lo[k] = mid;
                    }
                }
                Cell { lo, hi, depth: self.depth + 1 }
            })
            .collect()
    }
}

fn tensor_rule<F: Fn(&[f64]) -> f64>(f: &F, cell: &Cell) -> f64 {
    let (x, w) = gauss_legendre();
    let l = cell.lo.len();
    let half: Vec<f64> = (0..l).map(|k| 0.5 * (cell.hi[k] - cell.lo[k])).collect();
    let mid: Vec<f64> = (0..l).map(|k| 0.5 * (cell.hi[k] + cell.lo[k])).collect();
    let jac: f64 = half.iter().product();
    let mut idx = vec![0usize; l];
    let mut pt = vec![0.0; l];
    let mut acc = 0.0;
    loop {
        let mut weight = 1.0;
        for k in 0..l {
            pt[k] = mid[k] + half[k] * x[idx[k]];
            weight *= w[idx[k]];
        }
        acc += weight * f(&pt);
        let mut k = 0;
        loop {
            if k == l {
                return acc * jac;
            }
            idx[k] += 1;
            if idx[k] < GL_ORDER {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// What refining one cell produced.
struct Refined {
    coarse: f64,
    fine: f64,
    children: Vec<Cell>,
    child_values: Vec<f64>,
}

fn refine<F: Fn(&[f64]) -> f64>(f: &F, cell: &Cell, coarse: f64) -> Refined {
    let children = cell.children();
    let child_values: Vec<f64> = children.iter().map(|c| tensor_rule(f, c)).collect();
    Refined { coarse, fine: pairwise_sum(&child_values), children, child_values }
}

/// Integrates `f` over the box `[lo_k, hi_k]` (f64 bounds, any orientation).
///
/// Reversed bounds flip the sign, matching iterated one-dimensional integrals.
pub fn integrate<F>(f: F, lo: &[f64], hi: &[f64], cfg: &QuadratureConfig) -> Quadrature
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    assert_eq!(lo.len(), hi.len());
    let mut sign = 1.0;
    let mut a = lo.to_vec();
    let mut b = hi.to_vec();
    for k in 0..a.len() {
        if a[k] > b[k] {
            std::mem::swap(&mut a[k], &mut b[k]);
            sign = -sign;
        }
    }
    let root = Cell { lo: a, hi: b, depth: 0 };
    let total_volume = root.volume();
    if a_is_degenerate(&root) {
        return Quadrature { value: 0.0, error_estimate: 0.0, converged: true, cells: 0 };
    }
    let root_value = tensor_rule(&f, &root);
    let mut level: Vec<(Cell, f64)> = vec![(root, root_value)];
    let mut accepted_values: Vec<f64> = Vec::new();
    let mut accepted_errors: Vec<f64> = Vec::new();
    let mut scale: Option<f64> = None;
    while !level.is_empty() {
        let refined: Vec<Refined> = if cfg.parallel {
            level.par_iter().map(|(c, v)| refine(&f, c, *v)).collect()
        } else {
            level.iter().map(|(c, v)| refine(&f, c, *v)).collect()
        };
        // Tolerance is anchored on the first refined estimate of the whole integral.
        let target = *scale.get_or_insert_with(|| {
            let fine: Vec<f64> = refined.iter().map(|r| r.fine).collect();
            cfg.tol * pairwise_sum(&fine).abs()
        });
        let mut next = Vec::new();
        for ((cell, _), r) in level.iter().zip(refined) {
            let err = (r.fine - r.coarse).abs();
            let share = target * cell.volume() / total_volume;
            if err <= share || cell.depth + 1 >= cfg.max_depth {
                accepted_values.push(r.fine);
                accepted_errors.push(err);
            } else {
                next.extend(r.children.into_iter().zip(r.child_values));
            }
        }
        level = next;
    }
    let value = pairwise_sum(&accepted_values);
    let error_estimate = pairwise_sum(&accepted_errors);
    Quadrature {
        value: sign * value,
        error_estimate,
        converged: error_estimate <= cfg.tol * value.abs() || error_estimate == 0.0,
        cells: accepted_values.len(),
    }
}

fn a_is_degenerate(c: &Cell) -> bool {
    c.lo.iter().zip(&c.hi).any(|(a, b)| a == b)
}

/// Like [`integrate`], but turns non-convergence into an error.
pub fn integrate_checked<F>(f: F, lo: &[f64], hi: &[f64], cfg: &QuadratureConfig) -> Result<Quadrature>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let q = integrate(f, lo, hi, cfg);
    if q.converged {
        Ok(q)
    } else {
        Err(Error::QuadratureNonConvergence { estimate: q.value, error_bound: q.error_estimate })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_high_degree_monomials_exactly() {
        let (x, w) = gauss_legendre();
        for deg in 0..32u32 {
            let s: f64 = x.iter().zip(w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
            let exact = if deg % 2 == 0 { 2.0 / f64::from(deg + 1) } else { 0.0 };
            assert!((s - exact).abs() < 1e-13, "degree {deg}: {s} vs {exact}");
        }
    }

    #[test]
    fn cone_on_unit_square() {
        let q = integrate(
            |p| 2.0 * (p[0] * p[0] + p[1] * p[1]).sqrt(),
            &[0.0, 0.0],
            &[1.0, 1.0],
            &QuadratureConfig::default(),
        );
        let exact = 2.0 * (2f64.sqrt() + 1f64.asinh()) / 3.0;
        assert!(q.converged, "{q:?}");
        assert!((q.value - exact).abs() < 1e-9, "{} vs {exact}", q.value);
    }

    #[test]
    fn parallel_matches_sequential_bitwise() {
        let f = |p: &[f64]| ((p[0] - 0.3).powi(2) + (p[1] + 0.1).powi(2)).sqrt();
        let par = QuadratureConfig { parallel: true, ..Default::default() };
        let seq = QuadratureConfig { parallel: false, ..Default::default() };
        let a = integrate(f, &[-1.0, -0.5], &[1.0, 2.0], &par);
        let b = integrate(f, &[-1.0, -0.5], &[1.0, 2.0], &seq);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.error_estimate.to_bits(), b.error_estimate.to_bits());
    }

    #[test]
    fn reversed_bounds_flip_sign() {
        let cfg = QuadratureConfig::default();
        let a = integrate(|p| p[0] * p[0], &[0.0], &[2.0], &cfg);
        let b = integrate(|p| p[0] * p[0], &[2.0], &[0.0], &cfg);
        assert!((a.value - 8.0 / 3.0).abs() < 1e-13);
        assert_eq!(a.value, -b.value);
    }
}
