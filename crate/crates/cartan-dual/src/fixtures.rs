//! Bundled structure files: flat space, the vacuum black-hole chart, the
//! constant-curvature static patch, and flat space with constant totally
//! antisymmetric torsion. Together they exercise every check in the
//! catalogue with both passing and failing outcomes.

use crate::spec::{parse_spec, SpecError, Structure};

const MINKOWSKI: &str = include_str!("../fixtures/minkowski.json");
const SCHWARZSCHILD: &str = include_str!("../fixtures/schwarzschild.json");
const DESITTER: &str = include_str!("../fixtures/desitter.json");
const TORSIONFUL: &str = include_str!("../fixtures/torsionful-minkowski.json");

pub fn list() -> &'static [&'static str] {
    &["minkowski", "schwarzschild", "desitter", "torsionful-minkowski"]
}

/// The raw JSON text of a bundled fixture.
pub fn emit(name: &str) -> Option<&'static str> {
    match name {
        "minkowski" => Some(MINKOWSKI),
        "schwarzschild" => Some(SCHWARZSCHILD),
        "desitter" => Some(DESITTER),
        "torsionful-minkowski" => Some(TORSIONFUL),
        _ => None,
    }
}

pub fn load(name: &str) -> Option<Result<Structure, SpecError>> {
    emit(name).map(parse_spec)
}
