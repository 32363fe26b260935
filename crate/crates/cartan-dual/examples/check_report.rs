//! Loading a structure file, running the catalogue programmatically and
//! rendering both report formats — the same path the CLI takes.
//!
//! Run with: cargo run --example check_report

use cartan_dual::checks::run_checks;
use cartan_dual::report::{emit_report, Format};
use cartan_dual::spec::parse_spec;

fn main() {
    let text = cartan_dual::fixtures::emit("torsionful-minkowski").unwrap();
    let structure = parse_spec(text).unwrap();
    let report = run_checks(&structure).unwrap();

    println!("{}", String::from_utf8(emit_report(&report, Format::Text)).unwrap());

    let json = emit_report(&report, Format::Json);
    println!("JSON report: {} bytes, exit code {}", json.len(), report.exit_code());

    // determinism: a second run emits identical bytes
    let again = emit_report(&run_checks(&structure).unwrap(), Format::Json);
    assert_eq!(json, again);
    println!("byte-identical across runs: yes");
}
