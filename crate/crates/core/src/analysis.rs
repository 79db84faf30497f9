//! Derived invariants of the expansion operator.
//!
//! Everything here is built from [`crate::expansion`]: iterating `E_d`,
//! contracting back, and comparing tuples exactly. All searches are bounded
//! by the relevant totient, so every function terminates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{
    at_origin, contract_pow, expand_mixed, expand_mixed_pow, expand_pow, mixed_totient, totient,
    Direction, MixedDirection, PolyTuple,
};

/// A tuple together with an expansion applied to it: `value = E_path^power(spot)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpansionExpr {
    /// The tuple the expansion is applied to.
    pub spot: PolyTuple,
    /// The direction path.
    pub path: MixedDirection,
    /// How many times the whole path is applied.
    pub power: u32,
    /// The resulting tuple.
    pub value: PolyTuple,
}

impl ExpansionExpr {
    /// Builds the expression, computing its value.
    pub fn new(spot: PolyTuple, path: MixedDirection, power: u32) -> Result<Self> {
        let value = expand_mixed_pow(&spot, &path, power)?;
        Ok(Self { spot, path, power, value })
    }

    /// The plain expansion `E_d(spot)`.
    pub fn single(spot: PolyTuple, d: Direction) -> Result<Self> {
        Self::new(spot, MixedDirection::single(d), 1)
    }

    fn direction(&self) -> Result<Direction> {
        self.path
            .as_single()
            .ok_or_else(|| Error::Precondition("expression must use a single direction".into()))
    }
}

/// Outcome of [`dropler_intensity`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DroplerResult {
    /// Smallest `k ≥ 1` with `E_d^k(source) = 0`.
    pub intensity: u32,
    /// Whether `intensity < Φ(t, d)`.
    pub admits: bool,
    /// `Φ(t, d) − intensity` when admitted, otherwise 0.
    pub energy: u32,
}

/// Outcome of [`destabilization`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DestabilizationResult {
    /// Whether `t` itself is non-null at `x_d = 0`.
    pub natural: bool,
    /// Smallest `k ≥ 0` with `E_d^k(t)` non-null at `x_d = 0`.
    pub stage: u32,
    /// Whether the tuple at that stage, evaluated at `x_d = 0`, has no zero entry.
    pub strong: bool,
    /// `E_d^stage(t)` evaluated at `x_d = 0`.
    pub value: PolyTuple,
}

/// Outcome of [`diagonalize`]: `E_direction^order(spot) = E_m(t)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagonalizationResult {
    /// The diagonalizing tuple.
    pub spot: PolyTuple,
    /// Number of times `direction` must be applied.
    pub order: u32,
    /// The direction of the diagonal expansion.
    pub direction: Direction,
}

impl DiagonalizationResult {
    /// Whether `spot` differs from `original` by a non-constant tuple.
    pub fn differs_non_constantly(&self, original: &PolyTuple) -> Result<bool> {
        Ok(!original.try_sub(&self.spot)?.is_constant())
    }
}

/// Measures how many steps of `E_d` kill the value of `source`.
pub fn dropler_intensity(source: &ExpansionExpr, t: &PolyTuple, d: Direction) -> Result<DroplerResult> {
    let intensity = totient(&source.value, d)?;
    let phi = totient(t, d)?;
    let admits = intensity < phi;
    Ok(DroplerResult { intensity, admits, energy: if admits { phi - intensity } else { 0 } })
}

/// Finds the first iterate of `E_d` that survives evaluation at `x_d = 0`.
///
/// The null tuple has no such iterate and is rejected.
pub fn destabilization(t: &PolyTuple, d: Direction) -> Result<DestabilizationResult> {
    t.check_direction(d)?;
    if t.is_zero() {
        return Err(Error::Precondition("the null tuple never destabilizes".into()));
    }
    let phi = totient(t, d)?;
    let mut cur = t.clone();
    for k in 0..phi {
        let v = at_origin(&cur, d)?;
        if !v.is_zero() {
            return Ok(DestabilizationResult {
                natural: k == 0,
                stage: k,
                strong: !v.has_zero_entry(),
                value: v,
            });
        }
        cur = expand_pow(&cur, d, 1)?;
    }
    unreachable!("the last non-null iterate is free of x_d and survives evaluation")
}

/// Expresses the mixed expansion `E_m(t)` as a power of the single direction `d`.
pub fn diagonalize(t: &PolyTuple, m: &MixedDirection, d: Direction) -> Result<DiagonalizationResult> {
    t.check_direction(d)?;
    let order = m.multiplicity(d);
    if order == 0 {
        return Err(Error::Precondition(format!("direction {d} does not occur in the path")));
    }
    let order = order as u32;
    let value = expand_mixed(t, m)?;
    let spot = contract_pow(&value, d, order)?;
    Ok(DiagonalizationResult { spot, order, direction: d })
}

/// Two diagonal expressions in distinct directions with equal values.
pub fn is_hybrid(e1: &ExpansionExpr, e2: &ExpansionExpr) -> Result<bool> {
    let (d1, d2) = (e1.direction()?, e2.direction()?);
    if d1 == d2 {
        return Err(Error::Precondition("hybrid expressions need distinct directions".into()));
    }
    Ok(e1.value == e2.value)
}

/// Smallest `s ∈ [1, Φ(t,d)]` with `E_d^s(t) = E_m(spot)`.
pub fn exactness_degree(
    t: &PolyTuple,
    d: Direction,
    spot: &PolyTuple,
    m: &MixedDirection,
) -> Result<Option<u32>> {
    let target = expand_mixed(spot, m)?;
    let phi = totient(t, d)?;
    let mut cur = t.clone();
    for s in 1..=phi {
        cur = expand_pow(&cur, d, 1)?;
        if cur == target {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Smallest `m ≥ 0` with `u = E_d^m(v)`, if any.
pub fn sub_expansion_offset(u: &PolyTuple, v: &PolyTuple, d: Direction) -> Result<Option<u32>> {
    let phi = totient(v, d)?;
    let mut cur = v.clone();
    for m in 0..=phi {
        if &cur == u {
            return Ok(Some(m));
        }
        cur = expand_pow(&cur, d, 1)?;
    }
    Ok(None)
}

fn common_direction(a: &ExpansionExpr, b: &ExpansionExpr) -> Result<Direction> {
    let (d1, d2) = (a.direction()?, b.direction()?);
    if d1 != d2 {
        return Err(Error::Precondition("expressions use different directions".into()));
    }
    Ok(d1)
}

/// Smallest `r ≥ 1` with `z.value = E_d^r(t.spot)`.
pub fn expansion_index(t_expr: &ExpansionExpr, z_expr: &ExpansionExpr) -> Result<Option<u32>> {
    let d = common_direction(t_expr, z_expr)?;
    let phi = totient(&t_expr.spot, d)?;
    let mut cur = t_expr.spot.clone();
    for r in 1..=phi {
        cur = expand_pow(&cur, d, 1)?;
        if cur == z_expr.value {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Smallest `s ≥ 1` such that `E_d^s(t.spot)` is an iterate of `z.value`.
pub fn dominating_number(z_expr: &ExpansionExpr, t_expr: &ExpansionExpr) -> Result<Option<u32>> {
    let d = common_direction(t_expr, z_expr)?;
    let phi = totient(&t_expr.spot, d)?;
    let mut cur = t_expr.spot.clone();
    for s in 1..=phi {
        cur = expand_pow(&cur, d, 1)?;
        if sub_expansion_offset(&cur, &z_expr.value, d)?.is_some() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Outcome of [`chain_identity_check`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ChainReport {
    /// `[S_{i+1} : S_i]` for consecutive members.
    pub indices: Vec<u32>,
    /// `[S_n : S_1]`.
    pub total: u32,
    /// Sum of the consecutive indices.
    pub sum: u32,
    /// `total = sum − (n − 2)`.
    pub identity_holds: bool,
    /// `total < sum`.
    pub corollary_holds: bool,
}

/// Checks the telescoping identity `[S_n:S_1] = Σ[S_{i+1}:S_i] − (n−2)` on a chain.
///
/// The chain is listed from the smallest member `S_1` to the largest `S_n`;
/// each entry is the single-direction expansion of that member.
pub fn chain_identity_check(chain: &[ExpansionExpr]) -> Result<ChainReport> {
    let n = chain.len();
    if n < 2 {
        return Err(Error::Precondition("a chain needs at least two members".into()));
    }
    let not_chain = || Error::Precondition("consecutive members are not related by expansion".into());
    let mut indices = Vec::with_capacity(n - 1);
    for i in 1..n {
        indices.push(expansion_index(&chain[i], &chain[i - 1])?.ok_or_else(not_chain)?);
    }
    let total = expansion_index(&chain[n - 1], &chain[0])?.ok_or_else(not_chain)?;
    let sum: u32 = indices.iter().sum();
    Ok(ChainReport {
        identity_holds: i64::from(total) == i64::from(sum) - (n as i64 - 2),
        corollary_holds: total < sum,
        indices,
        total,
        sum,
    })
}

/// Outcome of [`chain_dominating_bound`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ChainBoundReport {
    /// `Σ_{i=k+1}^{n} [S_i : S_{i−1}]`.
    pub index_sum: u32,
    /// `D[S_k | S_n]`.
    pub dominating: u32,
    /// `n − k`.
    pub slack: u32,
    /// `index_sum < dominating + slack`.
    pub holds: bool,
}

/// Compares the tail index sum of a chain with the dominating number of its `k`-th member
/// (1-based) relative to the top of the chain.
pub fn chain_dominating_bound(chain: &[ExpansionExpr], k: usize) -> Result<ChainBoundReport> {
    let n = chain.len();
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("member {k} is outside the chain 1..={n}")));
    }
    let not_chain = || Error::Precondition("members are not related by expansion".into());
    let mut index_sum = 0;
    for i in k..n {
        index_sum += expansion_index(&chain[i], &chain[i - 1])?.ok_or_else(not_chain)?;
    }
    let dominating = dominating_number(&chain[k - 1], &chain[n - 1])?.ok_or_else(not_chain)?;
    let slack = (n - k) as u32;
    Ok(ChainBoundReport { index_sum, dominating, slack, holds: index_sum < dominating + slack })
}

/// Smallest `k ≥ 0` at which all entries of `E_d^k(t)` share the same `x_d` exponent,
/// together with that iterate.
pub fn normalization_stage(t: &PolyTuple, d: Direction) -> Result<(u32, PolyTuple)> {
    let phi = totient(t, d)?;
    let mut cur = t.clone();
    for k in 0..phi {
        let idx = cur.entry_indices(d)?;
        if idx.iter().all(|&e| e == idx[0]) {
            return Ok((k, cur));
        }
        cur = expand_pow(&cur, d, 1)?;
    }
    unreachable!("the last non-null iterate is free of x_d")
}

/// Least `j ≥ 1` with `E_d^j(t)` null at `x_d = 0`.
pub fn unionization_stage(t: &PolyTuple, d: Direction) -> Result<u32> {
    let phi = totient(t, d)?;
    let mut cur = t.clone();
    for j in 1..=phi {
        cur = expand_pow(&cur, d, 1)?;
        if at_origin(&cur, d)?.is_zero() {
            return Ok(j);
        }
    }
    unreachable!("E_d^Φ is null")
}

/// `⌊Φ(t,d)/2⌋`.
pub fn analytic_range_bound(t: &PolyTuple, d: Direction) -> Result<u32> {
    Ok(totient(t, d)? / 2)
}

/// Invariants of a tuple in one variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SingleVarProfile {
    /// `Φ − 1`.
    pub degree: u32,
    /// The residue `E^{Φ−1}(t)`.
    pub rank: PolyTuple,
    /// The normalization stage.
    pub local_number: u32,
    /// `degree − local_number`.
    pub dimension: u32,
}

/// Profile of a one-variable tuple.
pub fn single_var_profile(t: &PolyTuple) -> Result<SingleVarProfile> {
    if t.arity() != 1 {
        return Err(Error::Precondition(format!(
            "profile needs a one-variable tuple, got arity {}",
            t.arity()
        )));
    }
    let phi = totient(t, 0)?;
    let degree = phi - 1;
    let rank = expand_pow(t, 0, degree)?;
    let (local_number, _) = normalization_stage(t, 0)?;
    Ok(SingleVarProfile { degree, rank, local_number, dimension: degree - local_number })
}

/// Both sides of the mixed totient inequality, scaled by the path length `l`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MixedSpecificReport {
    /// Path length `l`.
    pub length: u32,
    /// Totient of the mixed expansion.
    pub mixed_totient: u32,
    /// `Σ_i Φ(t, m_i)` over the path entries.
    pub totient_sum: u32,
    /// `Σ_i O(m_i)`: diagonalization orders over the path entries.
    pub order_sum: u32,
    /// `l·Φ_m < Σ Φ + Σ O`.
    pub holds: bool,
    /// Whether every direction occurs once (the corollary's setting).
    pub all_orders_one: bool,
    /// `Φ_m < (1/l)ΣΦ + 1`, meaningful when `all_orders_one`.
    pub corollary_holds: bool,
    /// `Σ (energy + intensity)` of the mixed value against `t`, when every direction admits.
    pub energy_intensity_sum: Option<u32>,
    /// `l·Φ_m < Σ (energy + intensity) + Σ O`, when every direction admits.
    pub energy_form_holds: Option<bool>,
}

/// Compares the mixed totient with the average directional totient plus average order.
pub fn mixed_specific_check(t: &PolyTuple, m: &MixedDirection) -> Result<MixedSpecificReport> {
    let l = m.len() as u32;
    let phi_m = mixed_totient(t, m)?;
    let source = ExpansionExpr::new(t.clone(), m.clone(), 1)?;
    let mut totient_sum = 0;
    let mut order_sum = 0;
    let mut energy_sum = Some(0);
    for &d in m.dirs() {
        totient_sum += totient(t, d)?;
        order_sum += diagonalize(t, m, d)?.order;
        let dr = dropler_intensity(&source, t, d)?;
        energy_sum = match (energy_sum, dr.admits) {
            (Some(s), true) => Some(s + dr.energy + dr.intensity),
            _ => None,
        };
    }
    let all_orders_one = m.distinct().len() == m.len();
    Ok(MixedSpecificReport {
        length: l,
        mixed_totient: phi_m,
        totient_sum,
        order_sum,
        holds: l * phi_m < totient_sum + order_sum,
        all_orders_one,
        corollary_holds: l * phi_m < totient_sum + l,
        energy_intensity_sum: energy_sum,
        energy_form_holds: energy_sum.map(|e| l * phi_m < e + order_sum),
    })
}

/// Outcome of [`min_index_check`].
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct MinIndexReport {
    /// `min_i (ind_i + 1)` over the path entries.
    pub min_totient: u32,
    /// Average of `ind_i` over the path entries.
    pub mean_index: f64,
    /// Slack term added to the right-hand side.
    pub slack: u32,
    /// `min_totient < mean_index + 2 + slack`.
    pub holds: bool,
}

/// Compares the smallest directional totient along a path with the mean exponent.
pub fn min_index_check(t: &PolyTuple, m: &MixedDirection) -> Result<MinIndexReport> {
    let idx = m.dirs().iter().map(|&d| t.x_index(d)).collect::<Result<Vec<_>>>()?;
    let min_totient = idx.iter().map(|e| e + 1).min().expect("non-empty path");
    let total: u64 = idx.iter().map(|&e| u64::from(e)).sum();
    let l = idx.len() as u64;
    // Integer form of min < total/l + 2: l·min < total + 2l.
    let holds = l * u64::from(min_totient) < total + 2 * l;
    Ok(MinIndexReport { min_totient, mean_index: total as f64 / l as f64, slack: 0, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v2() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }
    fn v1() -> Vec<String> {
        vec!["x".into()]
    }
    fn t2(es: &[&str]) -> PolyTuple {
        PolyTuple::parse(&v2(), es).unwrap()
    }
    fn t1(es: &[&str]) -> PolyTuple {
        PolyTuple::parse(&v1(), es).unwrap()
    }
    fn w() -> PolyTuple {
        t2(&["x^2*y", "x*y^2"])
    }
    fn xy() -> MixedDirection {
        MixedDirection::new(vec![0, 1]).unwrap()
    }
    fn mother() -> PolyTuple {
        t1(&["x^4", "x^5"])
    }
    fn e(spot: PolyTuple) -> ExpansionExpr {
        ExpansionExpr::single(spot, 0).unwrap()
    }

    #[test]
    fn dropler_worked() {
        let src = ExpansionExpr::new(w(), xy(), 1).unwrap();
        assert_eq!(src.value, t2(&["2*x", "2*y"]));
        let r = dropler_intensity(&src, &w(), 0).unwrap();
        assert_eq!(r, DroplerResult { intensity: 2, admits: true, energy: 1 });
    }

    #[test]
    fn destabilization_worked() {
        let r = destabilization(&w(), 0).unwrap();
        assert_eq!((r.natural, r.stage, r.strong), (false, 1, false));
        let r = destabilization(&t2(&["x + 1", "y"]), 0).unwrap();
        assert_eq!((r.natural, r.stage), (true, 0));
        let r = destabilization(&t1(&["x", "x^2"]), 0).unwrap();
        assert_eq!((r.natural, r.stage, r.strong), (false, 1, false));
        let last = at_origin(&expand_pow(&t1(&["x", "x^2"]), 0, 2).unwrap(), 0).unwrap();
        assert_eq!(last, t1(&["0", "2"]));
        assert!(destabilization(&PolyTuple::zero(1, 2), 0).is_err());
    }

    #[test]
    fn diagonalization_worked() {
        let r = diagonalize(&w(), &xy(), 0).unwrap();
        assert_eq!((r.spot.clone(), r.order), (t2(&["2*x*y", "x^2"]), 1));
        let r = diagonalize(&w(), &xy(), 1).unwrap();
        assert_eq!(r.spot, t2(&["y^2", "2*x*y"]));
        assert!(diagonalize(&w(), &MixedDirection::single(0), 1).is_err());
    }

    #[test]
    fn hybrid_worked() {
        let a = diagonalize(&w(), &xy(), 0).unwrap();
        let b = diagonalize(&w(), &xy(), 1).unwrap();
        let e1 = ExpansionExpr::new(a.spot, MixedDirection::single(0), a.order).unwrap();
        let e2 = ExpansionExpr::new(b.spot, MixedDirection::single(1), b.order).unwrap();
        assert!(is_hybrid(&e1, &e2).unwrap());
        assert!(is_hybrid(&e1, &e1).is_err());
    }

    #[test]
    fn exactness_worked() {
        assert_eq!(exactness_degree(&t2(&["2*x*y", "x^2"]), 0, &w(), &xy()).unwrap(), Some(1));
        assert_eq!(exactness_degree(&w(), 0, &w(), &xy()).unwrap(), None);
    }

    #[test]
    fn sub_expansion_worked() {
        assert_eq!(sub_expansion_offset(&t2(&["1", "1"]), &t2(&["x", "y"]), 0).unwrap(), None);
        let v = w();
        assert_eq!(sub_expansion_offset(&expand_pow(&v, 0, 2).unwrap(), &v, 0).unwrap(), Some(2));
    }

    #[test]
    fn index_and_dominating_worked() {
        let m = mother();
        let e2 = expand_pow(&m, 0, 2).unwrap();
        assert_eq!(expansion_index(&e(m.clone()), &e(e2.clone())).unwrap(), Some(3));
        assert_eq!(expansion_index(&e(m.clone()), &e(m.clone())).unwrap(), Some(1));
        let e1 = expand_pow(&m, 0, 1).unwrap();
        assert_eq!(dominating_number(&e(e1), &e(m.clone())).unwrap(), Some(2));
        assert_eq!(dominating_number(&e(m.clone()), &e(m.clone())).unwrap(), Some(1));
        let null = ExpansionExpr { spot: PolyTuple::zero(1, 2), path: MixedDirection::single(0), power: 0, value: PolyTuple::zero(1, 2) };
        assert_eq!(dominating_number(&null, &e(m)).unwrap(), Some(6));
    }

    #[test]
    fn chain_worked() {
        let m = mother();
        let chain = vec![
            e(expand_pow(&m, 0, 3).unwrap()),
            e(expand_pow(&m, 0, 2).unwrap()),
            e(m),
        ];
        let r = chain_identity_check(&chain).unwrap();
        assert_eq!(r.indices, vec![2, 3]);
        assert_eq!(r.total, 4);
        assert!(r.identity_holds && r.corollary_holds);
        let b = chain_dominating_bound(&chain, 1).unwrap();
        assert_eq!((b.index_sum, b.dominating, b.slack, b.holds), (5, 4, 2, true));
    }

    #[test]
    fn normalization_and_unionization_worked() {
        let (k, fibre) = normalization_stage(&w(), 0).unwrap();
        assert_eq!((k, fibre), (2, t2(&["2*y", "0"])));
        assert_eq!(normalization_stage(&t1(&["x^3", "x"]), 0).unwrap().0, 3);
        assert_eq!(unionization_stage(&w(), 0).unwrap(), 3);
        assert_eq!(unionization_stage(&t2(&["3", "-1/2"]), 0).unwrap(), 1);
        assert_eq!(analytic_range_bound(&w(), 0).unwrap(), 1);
    }

    #[test]
    fn profile_worked() {
        let p = single_var_profile(&t1(&["x^3", "x"])).unwrap();
        assert_eq!(p.degree, 3);
        assert_eq!(p.rank, t1(&["0", "6"]));
        assert_eq!((p.local_number, p.dimension), (3, 0));
        assert!(single_var_profile(&w()).is_err());
    }

    #[test]
    fn mixed_specific_worked() {
        let r = mixed_specific_check(&w(), &xy()).unwrap();
        assert_eq!((r.mixed_totient, r.totient_sum, r.order_sum), (2, 6, 2));
        assert!(r.holds && r.all_orders_one && r.corollary_holds);
        assert!(min_index_check(&w(), &xy()).unwrap().holds);
    }
}
