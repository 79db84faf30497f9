//! Expansions, totients, residues and contractions of a tuple.

use expd::expansion::{
    contract, expand, expand_mixed, expand_pow, mixed_totient, residue, specialize, totient,
    totient_formula, MixedDirection, PolyTuple,
};
use expd::polyring::int;

fn main() -> expd::Result<()> {
    let vars: Vec<String> = vec!["x".into(), "y".into()];
    let t = PolyTuple::parse(&vars, &["x^2*y", "x*y^2"])?;
    let (x, y) = (0, 1);
    println!("t              = {}", t.display(&vars));

    let mut cur = t.clone();
    for k in 1..=totient(&t, x)? {
        cur = expand(&cur, x)?;
        println!("E_x^{k}(t)       = {}", cur.display(&vars));
    }
    println!("totient in x   = {} (formula {})", totient(&t, x)?, totient_formula(&t, x)?);
    println!("residue in x   = {}", residue(&t, x)?.display(&vars));

    let xy = MixedDirection::new(vec![x, y])?;
    println!("E_[x,y](t)     = {}", expand_mixed(&t, &xy)?.display(&vars));
    println!("mixed totient  = {}", mixed_totient(&t, &xy)?);

    // Contraction is a right inverse: expanding it gives back the tuple.
    let c = contract(&t, x)?;
    println!("contract_x(t)  = {}", c.display(&vars));
    println!("E_x(contract)  = {}", expand_pow(&c, x, 1)?.display(&vars));

    let s = specialize(&t, &[(y, int(2))], x)?;
    println!("t at y = 2     = {}", s.display(&vars));
    Ok(())
}
