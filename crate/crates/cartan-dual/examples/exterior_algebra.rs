//! The 16-dimensional fibre algebra: wedge, scalar product, contractions,
//! reversion and the Hodge star of a Lorentzian metric.
//!
//! Run with: cargo run --example exterior_algebra

use cartan_dual::exterior::{
    hodge_inverse, hodge_star, minkowski_metric, monomial_name, Multivector, Orientation,
};

fn main() {
    let m = minkowski_metric::<f64>();
    let o = Orientation::from_metric(&m, 1).unwrap();
    let theta = |i: usize| Multivector::<f64>::one_form(i);

    let e01 = theta(0).wedge(&theta(1));
    println!("θ0∧θ1                = {e01:?}");
    println!("θ0∧θ0                = {:?}", theta(0).wedge(&theta(0)));
    println!("(θ0∧θ1)·(θ0∧θ1)      = {}", e01.scalar_product(&e01, &m));
    println!("θ0 ⌟ (θ0∧θ1)         = {:?}", theta(0).left_contract(&e01, &m));
    println!("reverse(θ0∧θ1)       = {:?}", e01.reverse());

    println!("⋆1                   = {:?}", hodge_star(&Multivector::scalar(1.0), &m, &o));
    println!("⋆τ                   = {:?}", hodge_star(o.tau(), &m, &o));
    println!("⋆θ0                  = {:?}", hodge_star(&theta(0), &m, &o));
    println!("⋆(θ0∧θ1)             = {:?}", hodge_star(&e01, &m, &o));

    // the inversion law, grade by grade
    for mask in [0b0001usize, 0b0011, 0b0111, 0b1111] {
        let a = Multivector::<f64>::basis(mask);
        let round = hodge_inverse(&hodge_star(&a, &m, &o), &m, &o);
        println!(
            "⋆⁻¹⋆ {}            = {:?}",
            monomial_name(mask),
            round
        );
    }

    // defining property A∧⋆B = (A·B)τ on a sample pair
    let a = theta(1).wedge(&theta(2));
    let b = theta(1).wedge(&theta(3));
    let lhs = a.wedge(&hodge_star(&b, &m, &o));
    let rhs = o.tau().scale(&a.scalar_product(&b, &m));
    println!("A∧⋆B − (A·B)τ        = {:?}", lhs.sub(&rhs));
}
