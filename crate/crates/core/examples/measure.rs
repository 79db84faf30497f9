//! Exact areas, the norm-integral inequality, and volumes over spots.

use expd::expansion::{MixedDirection, PolyTuple};
use expd::measure::{area_value, check_integral_inequality, volume, BoxDomain};
use expd::polyring::{int, rat};

fn main() -> expd::Result<()> {
    let vars: Vec<String> = vec!["x".into(), "y".into()];
    let t = PolyTuple::parse(&vars, &["x^2*y", "x*y^2"])?;
    let xy = MixedDirection::new(vec![0, 1])?;
    let unit = BoxDomain::unit(&[0, 1]);

    println!("area over the unit square = {}", area_value(&t, &xy, &unit)?);

    let r = check_integral_inequality(&t, &xy, &unit, 1e-9)?;
    println!("∫‖E‖ = {:.12} ≥ ‖∫E‖ = {:.12}: {} (margin {:.6})", r.lhs, r.rhs, r.holds, r.margin);

    let skew = BoxDomain::new(vec![(0, rat(-1, 2), int(1)), (1, int(0), int(2))])?;
    let r = check_integral_inequality(&t, &xy, &skew, 1e-9)?;
    println!("on [-1/2,1]×[0,2]: lhs {:.9}, rhs {:.9}, holds {}", r.lhs, r.rhs, r.holds);

    let names: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
    let u = PolyTuple::parse(&names, &["x*y*z", "x + y + z"])?;
    let xyz = MixedDirection::new(vec![0, 1, 2])?;
    let spots = vec![
        vec![int(1), int(2), int(3)],
        vec![int(2), int(0), int(1)],
        vec![int(0), int(1), int(2)],
    ];
    println!("volume over three spots = {:.9}", volume(&u, &xyz, &spots)?);
    Ok(())
}
