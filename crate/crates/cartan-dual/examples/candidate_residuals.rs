//! Residuals of the general duality system for a candidate pair (g′, D′):
//! the outer Hodge duals are taken with g′ while the starred quantities
//! keep the g-duals. The library only reports residuals for the supplied
//! candidate; it does not decide whether some other candidate could work.
//!
//! Run with: cargo run --example candidate_residuals

use cartan_dual::connection::levi_civita_connection;
use cartan_dual::duality::{gprime_residual_check, CandidatePrime, DualityContext};
use cartan_dual::structure::MetricField;
use cartan_dual::symexpr::{parse_expr, Expr};
use cartan_dual::tensor::e2;

fn main() {
    let s = cartan_dual::fixtures::load("schwarzschild").unwrap().unwrap();
    let ctx = DualityContext::new(
        &s.chart,
        &s.metric,
        &s.coframe,
        &s.connection,
        &s.sample_points,
        s.orientation_sign,
        s.conventions.dual_pair,
    );

    // candidate 1: the same-metric default (D′ reconstructed from ⋆T)
    let same = gprime_residual_check(
        &ctx,
        &CandidatePrime {
            metric: None,
            connection: None,
            same_metric: true,
        },
    )
    .unwrap();
    println!("same-metric candidate:");
    for entry in &same.entries {
        println!("   {:<24} {:e}", entry.name, entry.max());
    }

    // candidate 2: constant conformal scaling — the connection is
    // unchanged, and on a vacuum background every line closes.
    let factor = Expr::from_int(2);
    let gprime = MetricField::new(e2(|i, j| {
        Expr::mul(factor.clone(), s.metric.lower()[i][j].clone())
    }));
    let dprime = levi_civita_connection(&gprime, &s.coframe);
    let constant = gprime_residual_check(
        &ctx,
        &CandidatePrime {
            metric: Some(gprime),
            connection: Some(dprime),
            same_metric: false,
        },
    )
    .unwrap();
    println!("\nconstant conformal candidate g′ = 2g:");
    for entry in &constant.entries {
        println!("   {:<24} {:e}", entry.name, entry.max());
    }

    // candidate 3: a position-dependent conformal factor shifts the
    // connection and the residuals become visible.
    let factor = parse_expr("(1 + r/10)^2", &s.chart).unwrap();
    let gprime = MetricField::new(e2(|i, j| {
        Expr::mul(factor.clone(), s.metric.lower()[i][j].clone())
    }));
    let dprime = levi_civita_connection(&gprime, &s.coframe);
    let scaled = gprime_residual_check(
        &ctx,
        &CandidatePrime {
            metric: Some(gprime),
            connection: Some(dprime),
            same_metric: false,
        },
    )
    .unwrap();
    println!("\nposition-dependent conformal candidate g′ = (1 + r/10)² g:");
    for entry in &scaled.entries {
        println!("   {:<24} {:e}", entry.name, entry.max());
    }
}
