//! Construction scripts bundled with the library.

use crate::lattice::{Construction, Script, ScriptError};

/// `(name, script text)` for every bundled construction.
pub const FIXTURES: &[(&str, &str)] = &[
    ("char2", include_str!("../data/fixtures/char2.ldp")),
    ("char_any", include_str!("../data/fixtures/char_any.ldp")),
    ("nt5_nu3", include_str!("../data/fixtures/nt5_nu3.ldp")),
    ("nt6_nu3", include_str!("../data/fixtures/nt6_nu3.ldp")),
    ("nt5_nu4", include_str!("../data/fixtures/nt5_nu4.ldp")),
    ("nodal", include_str!("../data/fixtures/nodal.ldp")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn run_fixture(name: &str) -> Option<Result<Construction, ScriptError>> {
    let text = fixture(name)?;
    Some(Script::parse(text).and_then(|s| s.run(&format!("construct {name}"), None)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_passes() {
        for (name, _) in FIXTURES {
            let c = run_fixture(name).unwrap().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(c.report.passed(), "{name}\n{}", c.report.render_text());
            assert!(c.report.checks.iter().any(|r| r.id == "noether"), "{name}");
        }
    }
}
