//! The vacuum check: the Levi-Civita connection of the black-hole metric
//! has nonzero curvature but vanishing Ricci tensor.
//!
//! Run with: cargo run --example schwarzschild_vacuum

use cartan_dual::connection::levi_civita_connection;
use cartan_dual::curvature::{curvature, ricci_einstein, RicciConvention};
use cartan_dual::structure::{CoFrameField, MetricField};
use cartan_dual::symexpr::{parse_expr, Chart, Expr, Point};
use cartan_dual::tensor::e2;

fn main() {
    let chart = Chart::new(["t", "r", "th", "ph"], vec![("M".into(), 1.0)]).unwrap();
    let entries = ["1 - 2*M/r", "-1/(1 - 2*M/r)", "-r^2", "-r^2*sin(th)^2"];
    let g = MetricField::new(e2(|i, j| {
        if i == j {
            parse_expr(entries[i], &chart).unwrap()
        } else {
            Expr::zero()
        }
    }));
    let cf = CoFrameField::coordinate();
    let lc = levi_civita_connection(&g, &cf);

    let p = Point::new([0.0, 4.0, 1.2, 0.3]).unwrap();
    println!("Christoffel symbols at r=4 (a few):");
    println!("  Γ^r_tt  = {}", lc.entry(1, 0, 0).evaluate(&p, &chart).unwrap());
    println!("  Γ^t_tr  = {}", lc.entry(0, 0, 1).evaluate(&p, &chart).unwrap());
    println!("  Γ^th_r,th = {}", lc.entry(2, 1, 2).evaluate(&p, &chart).unwrap());

    let r = curvature(&lc, &cf, &g);
    println!(
        "curvature component R_t{{}}^r{{}}_tr = {}",
        r.components[0][1][0][1].evaluate(&p, &chart).unwrap()
    );

    let ricci = ricci_einstein(&r, &g, &cf, RicciConvention::E4);
    for radius in [3.0, 4.0, 10.0] {
        let p = Point::new([0.0, radius, 1.1, 0.7]).unwrap();
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                worst = worst.max(ricci.ricci[mu][nu].evaluate(&p, &chart).unwrap().abs());
            }
        }
        println!("max |R_munu| at r={radius}: {worst:e}  (vacuum)");
    }
    let scalar = ricci.scalar.evaluate(&p, &chart).unwrap();
    println!("curvature scalar at r=4: {scalar:e}");
}
