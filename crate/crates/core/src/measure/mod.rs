//! Integrals of expansions over boxes, and the inequalities built on them.
//!
//! Areas are exact (iterated antiderivatives over rationals). Integrals of
//! the Euclidean norm of a tuple need [`quadrature`]. Generalized cross
//! products are exact cofactor expansions.

pub mod quadrature;

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{expand_mixed, Direction, MixedDirection, PolyTuple};
use crate::polyring::{rational_to_f64, Polynomial, Rational};
use quadrature::QuadratureConfig;

/// Points per axis of the sampling grid used to bound functions on a box.
pub const SAMPLE_GRID: usize = 33;

/// An axis-aligned box `∏ [lo_k, hi_k]` over some of the variables, in integration order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoxDomain {
    /// `(direction, lower, upper)`; bounds may be given in either order.
    pub bounds: Vec<(Direction, Rational, Rational)>,
}

impl BoxDomain {
    /// Builds a box, rejecting repeated directions.
    pub fn new(bounds: Vec<(Direction, Rational, Rational)>) -> Result<Self> {
        for (i, (d, _, _)) in bounds.iter().enumerate() {
            if bounds[..i].iter().any(|(e, _, _)| e == d) {
                return Err(Error::DuplicateIntegrationVariable(*d));
            }
        }
        Ok(Self { bounds })
    }

    /// The unit cube over the given directions.
    #[must_use]
    pub fn unit(dirs: &[Direction]) -> Self {
        Self { bounds: dirs.iter().map(|&d| (d, Rational::zero(), Rational::one())).collect() }
    }

    /// Directions covered, in integration order.
    #[must_use]
    pub fn dirs(&self) -> Vec<Direction> {
        self.bounds.iter().map(|(d, _, _)| *d).collect()
    }

    /// `∏ |hi − lo|`.
    #[must_use]
    pub fn volume(&self) -> Rational {
        self.bounds.iter().map(|(_, a, b)| (b - a).abs()).fold(Rational::one(), |x, y| x * y)
    }
}

/// A point of `ℝ^l`, with exact coordinates.
pub type Spot = Vec<Rational>;

/// Both sides of an inequality check and its verdict.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct InequalityReport {
    /// Left-hand side.
    pub lhs: f64,
    /// Right-hand side.
    pub rhs: f64,
    /// `lhs − rhs` (or `rhs − lhs` for upper bounds; positive means slack).
    pub margin: f64,
    /// Whether the inequality holds within tolerance.
    pub holds: bool,
    /// Error estimate of the quadrature involved (0 when exact).
    pub quadrature_error_estimate: f64,
    /// False when a hypothesis of the inequality failed, so the verdict is moot.
    pub applicable: bool,
    /// True when a side relies on sampling rather than exact or certified computation.
    pub approximate: bool,
}

fn check_box_matches_path(m: &MixedDirection, b: &BoxDomain) -> Result<()> {
    let mut want = m.distinct();
    let mut got = b.dirs();
    want.sort_unstable();
    got.sort_unstable();
    if want == got {
        Ok(())
    } else {
        Err(Error::Precondition(
            "box directions must be exactly the distinct directions of the path".into(),
        ))
    }
}

/// Integrates every entry of a tuple exactly over the box.
pub fn integrate_entries(g: &PolyTuple, b: &BoxDomain) -> Result<Vec<Polynomial>> {
    g.entries().iter().map(|p| p.integrate_box(&b.bounds)).collect()
}

/// `Σ_j ∫_box E_m(t)_j`, exactly. Variables outside the box stay symbolic.
pub fn area(t: &PolyTuple, m: &MixedDirection, b: &BoxDomain) -> Result<Polynomial> {
    check_box_matches_path(m, b)?;
    let g = expand_mixed(t, m)?;
    let mut total = Polynomial::zero(t.arity());
    for p in integrate_entries(&g, b)? {
        total = total.try_add(&p)?;
    }
    Ok(total)
}

/// Like [`area`], but requires the result to be a number.
pub fn area_value(t: &PolyTuple, m: &MixedDirection, b: &BoxDomain) -> Result<Rational> {
    area(t, m, b)?.constant_value().ok_or(Error::NonConstant)
}

fn check_depends_only_on_box(g: &PolyTuple, b: &BoxDomain) -> Result<()> {
    let dirs = b.dirs();
    for v in 0..g.arity() {
        if !dirs.contains(&v) && g.x_index(v)? > 0 {
            return Err(Error::Precondition(format!(
                "tuple depends on variable {v}, which the box does not cover"
            )));
        }
    }
    Ok(())
}

/// Floating-point bounds of the box and a closure mapping box coordinates to full points.
fn box_f64(g: &PolyTuple, b: &BoxDomain) -> (Vec<f64>, Vec<f64>, impl Fn(&[f64]) -> f64 + Sync) {
    let lo: Vec<f64> = b.bounds.iter().map(|(_, a, _)| rational_to_f64(a)).collect();
    let hi: Vec<f64> = b.bounds.iter().map(|(_, _, c)| rational_to_f64(c)).collect();
    let evals: Vec<_> = g.entries().iter().map(Polynomial::to_f64_evaluator).collect();
    let dirs = b.dirs();
    let arity = g.arity();
    let f = move |p: &[f64]| {
        let mut full = vec![0.0; arity];
        for (k, &d) in dirs.iter().enumerate() {
            full[d] = p[k];
        }
        evals.iter().map(|e| e.eval(&full).powi(2)).sum::<f64>().sqrt()
    };
    (lo, hi, f)
}

/// `∫_box ‖g‖₂`, by adaptive quadrature; fails if the tolerance is not reached.
pub fn norm2_integral(g: &PolyTuple, b: &BoxDomain, tol: f64) -> Result<quadrature::Quadrature> {
    norm2_integral_with(g, b, &QuadratureConfig { tol, ..Default::default() })
}

/// [`norm2_integral`] with explicit quadrature settings.
pub fn norm2_integral_with(
    g: &PolyTuple,
    b: &BoxDomain,
    cfg: &QuadratureConfig,
) -> Result<quadrature::Quadrature> {
    check_depends_only_on_box(g, b)?;
    let (lo, hi, f) = box_f64(g, b);
    // Bounds are taken as given; orientation only flips signs, so integrate over |box|.
    let (lo, hi): (Vec<f64>, Vec<f64>) =
        lo.iter().zip(&hi).map(|(a, c)| (a.min(*c), a.max(*c))).unzip();
    quadrature::integrate_checked(f, &lo, &hi, cfg)
}

fn exact_norm_of_integrals(g: &PolyTuple, b: &BoxDomain) -> Result<Rational> {
    let mut sq = Rational::zero();
    for p in integrate_entries(g, b)? {
        let v = p.constant_value().ok_or(Error::NonConstant)?;
        sq += &v * &v;
    }
    Ok(sq)
}

fn positive_box(b: &BoxDomain) -> BoxDomain {
    BoxDomain {
        bounds: b
            .bounds
            .iter()
            .map(|(d, a, c)| if a <= c { (*d, a.clone(), c.clone()) } else { (*d, c.clone(), a.clone()) })
            .collect(),
    }
}

/// `∫ ‖E_m(t)‖ ≥ ‖∫ E_m(t)‖` (constant one).
///
/// Holds when `lhs − rhs ≥ −tol·max(1, rhs)`, which absorbs the relative
/// quadrature tolerance on the left-hand side. Integrands with a kink along a
/// hypersurface (all entries sharing a sign-changing factor) may not reach the
/// tolerance within the refinement budget; the verdict is still returned when
/// the margin exceeds the error estimate, and an error is raised otherwise.
pub fn check_integral_inequality(
    t: &PolyTuple,
    m: &MixedDirection,
    b: &BoxDomain,
    tol: f64,
) -> Result<InequalityReport> {
    check_box_matches_path(m, b)?;
    let b = positive_box(b);
    let g = expand_mixed(t, m)?;
    check_depends_only_on_box(&g, &b)?;
    let (lo, hi, f) = box_f64(&g, &b);
    let q = quadrature::integrate(f, &lo, &hi, &QuadratureConfig { tol, ..Default::default() });
    let rhs = rational_to_f64(&exact_norm_of_integrals(&g, &b)?).sqrt();
    let margin = q.value - rhs;
    let slack = tol * rhs.abs().max(1.0);
    let undecided = margin - q.error_estimate < -slack && margin + q.error_estimate >= -slack;
    if !q.converged && undecided {
        return Err(Error::QuadratureNonConvergence { estimate: q.value, error_bound: q.error_estimate });
    }
    Ok(InequalityReport {
        lhs: q.value,
        rhs,
        margin,
        holds: margin >= -slack,
        quadrature_error_estimate: q.error_estimate,
        applicable: true,
        approximate: false,
    })
}

/// Grid points (`SAMPLE_GRID` per axis) of a box, in box coordinates.
fn grid_points(lo: &[f64], hi: &[f64], n: usize) -> Vec<Vec<f64>> {
    let l = lo.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; l];
    loop {
        out.push(
            (0..l)
                .map(|k| if n == 1 { lo[k] } else { lo[k] + (hi[k] - lo[k]) * idx[k] as f64 / (n - 1) as f64 })
                .collect(),
        );
        let mut k = 0;
        loop {
            if k == l {
                return out;
            }
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Grid maximum of `f` over a box, followed by one finer grid around the best point.
fn sampled_max<F: Fn(&[f64]) -> f64>(f: F, lo: &[f64], hi: &[f64]) -> f64 {
    let n = SAMPLE_GRID;
    let mut best = f64::NEG_INFINITY;
    let mut arg = lo.to_vec();
    for p in grid_points(lo, hi, n) {
        let v = f(&p);
        if v > best {
            best = v;
            arg = p;
        }
    }
    let step: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| (b - a) / (n - 1) as f64).collect();
    let lo2: Vec<f64> = (0..lo.len()).map(|k| (arg[k] - step[k]).max(lo[k])).collect();
    let hi2: Vec<f64> = (0..lo.len()).map(|k| (arg[k] + step[k]).min(hi[k])).collect();
    for p in grid_points(&lo2, &hi2, n) {
        best = best.max(f(&p));
    }
    best
}

/// `∏|b−a| ≥ ‖∫ E_m(t)‖`, under the hypothesis `‖E_m(t)‖ ≤ 1` on the box.
///
/// The comparison itself is exact (squared, over rationals); the hypothesis
/// is checked on a sampling grid, and a violation marks the report inapplicable.
pub fn check_min_gap(t: &PolyTuple, m: &MixedDirection, b: &BoxDomain) -> Result<InequalityReport> {
    check_box_matches_path(m, b)?;
    let b = positive_box(b);
    let g = expand_mixed(t, m)?;
    check_depends_only_on_box(&g, &b)?;
    let (lo, hi, norm) = box_f64(&g, &b);
    let applicable = sampled_max(&norm, &lo, &hi) <= 1.0 + 1e-12;
    let vol = b.volume();
    let sq = exact_norm_of_integrals(&g, &b)?;
    let lhs = rational_to_f64(&vol);
    let rhs = rational_to_f64(&sq).sqrt();
    Ok(InequalityReport {
        lhs,
        rhs,
        margin: lhs - rhs,
        holds: &vol * &vol >= sq,
        quadrature_error_estimate: 0.0,
        applicable,
        approximate: false,
    })
}

/// Exact determinant by fraction-preserving Gaussian elimination.
#[must_use]
pub fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        let (upper, lower) = a.split_at_mut(c + 1);
        let pivot_row = &upper[c];
        for row in lower.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] / &pivot;
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &factor * p;
            }
        }
    }
    det
}

/// Generalized cross product of `l − 1` vectors in `ℝ^l`.
///
/// The result `v` satisfies `⟨v, w⟩ = det(v_1, …, v_{l−1}, w)` for every `w`,
/// so component `i` (0-based) is `(−1)^{l−1+i}` times the minor without column `i`.
/// In `ℝ³` this is the usual cross product; in `ℝ²` it maps `(a, b)` to `(−b, a)`.
pub fn cross_product(vs: &[Spot]) -> Result<Spot> {
    let l = vs.len() + 1;
    if l < 2 {
        return Err(Error::Precondition("cross product needs at least one vector".into()));
    }
    if let Some(v) = vs.iter().find(|v| v.len() != l) {
        return Err(Error::Precondition(format!(
            "cross product of {} vectors needs length {l}, got {}",
            vs.len(),
            v.len()
        )));
    }
    Ok((0..l)
        .map(|i| {
            let minor: Vec<Vec<Rational>> = vs
                .iter()
                .map(|v| v.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = determinant(minor);
            if (l - 1 + i).is_multiple_of(2) {
                d
            } else {
                -d
            }
        })
        .collect())
}

/// Exact squared Euclidean norm.
#[must_use]
pub fn norm_squared(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, x| acc + x * x)
}

fn check_spots(m: &MixedDirection, spots: &[Spot]) -> Result<Vec<Direction>> {
    let dirs = m.distinct();
    let l = dirs.len();
    if spots.len() != l || spots.iter().any(|s| s.len() != l) {
        return Err(Error::Precondition(format!(
            "need {l} spots with {l} coordinates each (one per distinct path direction)"
        )));
    }
    Ok(dirs)
}

/// The box spanned by two spots: per axis `[min, max]`, axes in path order.
#[must_use]
pub fn spanned_box(dirs: &[Direction], a: &Spot, b: &Spot) -> BoxDomain {
    BoxDomain {
        bounds: dirs
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                let (lo, hi) = if a[k] <= b[k] { (&a[k], &b[k]) } else { (&b[k], &a[k]) };
                (d, lo.clone(), hi.clone())
            })
            .collect(),
    }
}

/// One summand of [`volume`].
#[derive(Clone, PartialEq, Debug)]
pub struct VolumeTerm {
    /// First spot index of the pair.
    pub s: usize,
    /// Second spot index of the pair.
    pub t: usize,
    /// The excluded spot.
    pub v: usize,
    /// Exact area over the box spanned by spots `s` and `t`.
    pub area: Rational,
    /// Squared norm of the cross product of all spots except `v`.
    pub cross_norm_squared: Rational,
}

impl VolumeTerm {
    /// `area · ‖cross‖`.
    #[must_use]
    pub fn value(&self) -> f64 {
        rational_to_f64(&self.area) * rational_to_f64(&self.cross_norm_squared).sqrt()
    }
}

/// The summands `area(box(a_s, a_t)) · ‖⋄(spots without a_v)‖` over `s < t`, `v ∉ {s, t}`.
pub fn volume_terms(t: &PolyTuple, m: &MixedDirection, spots: &[Spot]) -> Result<Vec<VolumeTerm>> {
    let dirs = check_spots(m, spots)?;
    let l = dirs.len();
    let mut cross = Vec::with_capacity(l);
    for v in 0..l {
        let rest: Vec<Spot> =
            spots.iter().enumerate().filter(|(k, _)| *k != v).map(|(_, s)| s.clone()).collect();
        cross.push(norm_squared(&cross_product(&rest)?));
    }
    let mut out = Vec::new();
    for s in 0..l {
        for u in s + 1..l {
            let b = spanned_box(&dirs, &spots[s], &spots[u]);
            let a = area_value(t, m, &b)?;
            for (v, c) in cross.iter().enumerate() {
                if v != s && v != u {
                    out.push(VolumeTerm { s, t: u, v, area: a.clone(), cross_norm_squared: c.clone() });
                }
            }
        }
    }
    Ok(out)
}

/// `Σ_{s<t} Σ_{v∉{s,t}} area(box(a_s, a_t)) · ‖⋄(spots ∖ a_v)‖`.
pub fn volume(t: &PolyTuple, m: &MixedDirection, spots: &[Spot]) -> Result<f64> {
    let terms: Vec<f64> = volume_terms(t, m, spots)?.iter().map(VolumeTerm::value).collect();
    Ok(quadrature::pairwise_sum(&terms))
}

/// Binomial coefficient `C(n, 2)`.
fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Compares the volume sum with `2·C(l,2)·√s·vol(H)·√(Σ_k (max_H g_k)²)`, where `H`
/// is the bounding box of all spots and the maxima are estimated by grid sampling.
///
/// Requires `∫ g_k > 0` over every non-degenerate spanned box; otherwise the
/// report is marked inapplicable. The report is always marked approximate.
pub fn check_average_inequality(
    t: &PolyTuple,
    m: &MixedDirection,
    spots: &[Spot],
    tol: f64,
) -> Result<InequalityReport> {
    let dirs = check_spots(m, spots)?;
    let l = dirs.len();
    let g = expand_mixed(t, m)?;
    let mut applicable = true;
    let mut any_box = false;
    for s in 0..l {
        for u in s + 1..l {
            let b = spanned_box(&dirs, &spots[s], &spots[u]);
            if b.volume().is_zero() {
                continue;
            }
            any_box = true;
            for p in integrate_entries(&g, &b)? {
                let v = p.constant_value().ok_or(Error::NonConstant)?;
                applicable &= v.is_positive();
            }
        }
    }
    applicable &= any_box;
    let lhs = volume(t, m, spots)?;
    let hull = BoxDomain {
        bounds: dirs
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                let lo = spots.iter().map(|s| s[k].clone()).min().expect("non-empty");
                let hi = spots.iter().map(|s| s[k].clone()).max().expect("non-empty");
                (d, lo, hi)
            })
            .collect(),
    };
    check_depends_only_on_box(&g, &hull)?;
    let lo: Vec<f64> = hull.bounds.iter().map(|(_, a, _)| rational_to_f64(a)).collect();
    let hi: Vec<f64> = hull.bounds.iter().map(|(_, _, c)| rational_to_f64(c)).collect();
    let mut max_sq = 0.0;
    for p in g.entries() {
        let e = p.to_f64_evaluator();
        let arity = g.arity();
        let dirs = &dirs;
        let mx = sampled_max(
            |x: &[f64]| {
                let mut full = vec![0.0; arity];
                for (k, &d) in dirs.iter().enumerate() {
                    full[d] = x[k];
                }
                e.eval(&full)
            },
            &lo,
            &hi,
        );
        max_sq += mx * mx;
    }
    let rhs = 2.0
        * pairs(l) as f64
        * (g.len() as f64).sqrt()
        * rational_to_f64(&hull.volume())
        * f64::sqrt(max_sq);
    let margin = rhs - lhs;
    Ok(InequalityReport {
        lhs,
        rhs,
        margin,
        holds: margin >= -tol * rhs.abs().max(1.0),
        quadrature_error_estimate: 0.0,
        applicable,
        approximate: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, rat};

    fn v2() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }
    fn w() -> PolyTuple {
        PolyTuple::parse(&v2(), &["x^2*y", "x*y^2"]).unwrap()
    }
    fn xy() -> MixedDirection {
        MixedDirection::new(vec![0, 1]).unwrap()
    }

    #[test]
    fn area_worked() {
        assert_eq!(area_value(&w(), &xy(), &BoxDomain::unit(&[0, 1])).unwrap(), int(2));
        let v1 = vec!["x".to_string()];
        let t = PolyTuple::parse(&v1, &["x^2", "x^3"]).unwrap();
        let a = area_value(&t, &MixedDirection::single(0), &BoxDomain::unit(&[0])).unwrap();
        assert_eq!(a, int(2));
        assert!(area(&w(), &xy(), &BoxDomain::unit(&[0])).is_err());
    }

    #[test]
    fn integral_inequality_worked() {
        let r = check_integral_inequality(&w(), &xy(), &BoxDomain::unit(&[0, 1]), 1e-9).unwrap();
        let exact = 2.0 * (2f64.sqrt() + 1f64.asinh()) / 3.0;
        assert!((r.lhs - exact).abs() < 1e-9);
        assert!((r.rhs - 2f64.sqrt()).abs() < 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn min_gap_worked() {
        // E_x(0, x/2) = (1/2, 0).
        let t = PolyTuple::parse(&v2(), &["0", "1/2*x"]).unwrap();
        let m = MixedDirection::single(0);
        let b = BoxDomain::new(vec![(0, int(0), int(1))]).unwrap();
        let r = check_min_gap(&t, &m, &b).unwrap();
        assert!(r.applicable && r.holds);
        assert_eq!((r.lhs, r.rhs), (1.0, 0.5));
        let r = check_min_gap(&w(), &xy(), &BoxDomain::unit(&[0, 1])).unwrap();
        assert!(!r.applicable);
    }

    #[test]
    fn cross_products() {
        let e = |i: usize, l: usize| -> Spot { (0..l).map(|k| if k == i { int(1) } else { int(0) }).collect() };
        assert_eq!(cross_product(&[e(0, 3), e(1, 3)]).unwrap(), e(2, 3));
        assert_eq!(cross_product(&[vec![int(3), int(5)]]).unwrap(), vec![int(-5), int(3)]);
        let a = vec![int(1), int(2), int(3)];
        let b = vec![rat(-1, 2), int(0), int(4)];
        let c = cross_product(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(c, vec![int(8), rat(-11, 2), int(1)]);
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![int(2), int(1)], vec![int(7), int(4)]];
        assert_eq!(determinant(m), int(1));
        let s = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(determinant(s), int(-1));
    }
}
