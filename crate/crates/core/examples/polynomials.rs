//! Parsing, arithmetic, calculus and exact integration of polynomials.

use expd::polyring::{int, parse_poly, rat};

fn main() -> expd::Result<()> {
    let vars: Vec<String> = vec!["x".into(), "y".into()];
    let p = parse_poly("x^2*y - 1/2*y + 3", &vars)?;
    let q = parse_poly("x + y", &vars)?;

    println!("p          = {}", p.display(&vars));
    println!("q          = {}", q.display(&vars));
    println!("p + q      = {}", p.try_add(&q)?.display(&vars));
    println!("p * q      = {}", p.mul(&q)?.display(&vars));
    println!("dp/dx      = {}", p.partial_derivative(0)?.display(&vars));
    println!("∫p dy      = {}", p.antiderivative(1)?.display(&vars));
    println!("p(y = 2)   = {}", p.substitute(1, &int(2))?.display(&vars));
    println!("deg_x(p)   = {}", p.x_index(0)?);

    let box_integral = p.integrate_box(&[(0, int(0), int(1)), (1, rat(-1, 2), int(1))])?;
    println!("∫∫ p over [0,1]×[-1/2,1] = {}", box_integral.display(&vars));

    let value = p.evaluate(&[rat(1, 3), int(2)])?;
    println!("p(1/3, 2)  = {value}");
    Ok(())
}
