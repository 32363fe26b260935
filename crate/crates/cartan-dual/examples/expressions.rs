//! Symbolic expression tour: parsing, exact differentiation, numeric
//! evaluation and printing.
//!
//! Run with: cargo run --example expressions

use cartan_dual::symexpr::{parse_expr, Chart, Point};

fn main() {
    let chart = Chart::new(["t", "r", "th", "ph"], vec![("M".into(), 1.0)]).unwrap();

    let f = parse_expr("1 - 2*M/r", &chart).unwrap();
    println!("f        = {}", f.print(&chart));

    let df = f.differentiate(&chart, "r").unwrap();
    println!("df/dr    = {}", df.print(&chart));

    let p = Point::new([0.0, 4.0, 1.2, 0.3]).unwrap();
    println!("f(r=4)   = {}", f.evaluate(&p, &chart).unwrap());
    println!("f'(r=4)  = {}", df.evaluate(&p, &chart).unwrap());

    let g = parse_expr("r^2*sin(th)", &chart).unwrap();
    let dg = g.differentiate(&chart, "r").unwrap();
    println!("d(r^2 sin th)/dr = {}", dg.print(&chart));

    // construction applies the guaranteed rewrites
    let h = parse_expr("0*(r^2) + 1*t + (2/4)*r", &chart).unwrap();
    println!("normalized      = {}", h.print(&chart));

    // domain errors carry the offending subexpression
    let pole = parse_expr("1/(r - 4)", &chart).unwrap();
    match pole.evaluate(&p, &chart) {
        Err(e) => println!("at the pole     : {e}"),
        Ok(v) => println!("unexpected value {v}"),
    }
}
