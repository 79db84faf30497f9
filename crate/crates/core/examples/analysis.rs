//! Intensities, destabilization, diagonalization and chains.

use expd::analysis::{
    chain_dominating_bound, chain_identity_check, destabilization, diagonalize, dropler_intensity,
    mixed_specific_check, normalization_stage, single_var_profile, unionization_stage,
    ExpansionExpr,
};
use expd::expansion::{expand_pow, MixedDirection, PolyTuple};

fn main() -> expd::Result<()> {
    let vars: Vec<String> = vec!["x".into(), "y".into()];
    let t = PolyTuple::parse(&vars, &["x^2*y", "x*y^2"])?;
    let xy = MixedDirection::new(vec![0, 1])?;

    let source = ExpansionExpr::new(t.clone(), xy.clone(), 1)?;
    let d = dropler_intensity(&source, &t, 0)?;
    println!("intensity {} (admits: {}), energy {}", d.intensity, d.admits, d.energy);

    let s = destabilization(&t, 0)?;
    println!("destabilizes at stage {} (strong: {}) to {}", s.stage, s.strong, s.value.display(&vars));

    let g = diagonalize(&t, &xy, 0)?;
    println!("E_[x,y](t) = E_x^{}({})", g.order, g.spot.display(&vars));

    let (rho, fibre) = normalization_stage(&t, 0)?;
    println!("normalization stage {rho}, fibre {}", fibre.display(&vars));
    println!("unionization stage {}", unionization_stage(&t, 0)?);

    let r = mixed_specific_check(&t, &xy)?;
    println!(
        "{}·{} < {} + {}: {}",
        r.length, r.mixed_totient, r.totient_sum, r.order_sum, r.holds
    );

    // A chain built from powers of one mother tuple.
    let x: Vec<String> = vec!["x".into()];
    let mother = PolyTuple::parse(&x, &["x^4", "x^5"])?;
    let chain = [3, 2, 0]
        .iter()
        .map(|&k| ExpansionExpr::single(expand_pow(&mother, 0, k)?, 0))
        .collect::<expd::Result<Vec<_>>>()?;
    let report = chain_identity_check(&chain)?;
    println!("chain indices {:?}, total {}, identity holds: {}", report.indices, report.total, report.identity_holds);
    let bound = chain_dominating_bound(&chain, 1)?;
    println!("Σ indices {} vs dominating {} + slack {}: {}", bound.index_sum, bound.dominating, bound.slack, bound.holds);

    let p = single_var_profile(&PolyTuple::parse(&x, &["x^3", "x"])?)?;
    println!(
        "profile of (x^3, x): degree {}, rank {}, local number {}, dimension {}",
        p.degree,
        p.rank.display(&x),
        p.local_number,
        p.dimension
    );
    Ok(())
}
