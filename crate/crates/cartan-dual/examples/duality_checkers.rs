//! The two duality-constraint programs on the bundled structures: can
//! (⋆T, ⋆R) be the torsion and curvature of a connection compatible with
//! the same metric, and does the postulated particular-case system hold?
//!
//! Run with: cargo run --example duality_checkers

use cartan_dual::duality::{
    nonduality_witness, particular_case_check, same_metric_duality_check, DualityContext,
};
use cartan_dual::spec::Structure;

fn ctx_for(s: &Structure) -> DualityContext<'_> {
    DualityContext::new(
        &s.chart,
        &s.metric,
        &s.coframe,
        &s.connection,
        &s.sample_points,
        s.orientation_sign,
        s.conventions.dual_pair,
    )
}

fn main() {
    for name in cartan_dual::fixtures::list() {
        let s = cartan_dual::fixtures::load(name).unwrap().unwrap();
        let ctx = ctx_for(&s);
        println!("== {name}");

        let nd = nonduality_witness(&ctx).unwrap();
        println!(
            "   witnesses: |D⋆T − ⋆ℛ∧θ| = {:.3e},  |D⋆ℛ| = {:.3e}",
            nd.entry("nonduality-torsion").unwrap().max(),
            nd.entry("nonduality-curvature").unwrap().max()
        );

        let same = same_metric_duality_check(&ctx).unwrap();
        for entry in &same.entries {
            let status = if entry.max() < 1e-6 {
                "holds"
            } else if entry.max() > 1e-3 {
                "violated"
            } else {
                "indeterminate"
            };
            println!("   same-metric {:<24} {:<12} ({:.3e})", entry.name, status, entry.max());
        }

        let part = particular_case_check(&ctx).unwrap();
        for entry in &part.entries {
            let status = if entry.max() < 1e-6 {
                "holds"
            } else if entry.max() > 1e-3 {
                "violated"
            } else {
                "indeterminate"
            };
            println!("   particular  {:<24} {:<12} ({:.3e})", entry.name, status, entry.max());
        }
        println!();
    }
}
