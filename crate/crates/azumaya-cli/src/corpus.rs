//! Bundled demo corpus. Each fixture is compiled into the binary; the
//! `AZUMAYA_DEMO_DIR` environment variable redirects lookups to a
//! directory of files with the same names.

use crate::dataset::{self, Dataset};
use crate::error::{CliError, CliResult};

pub const DEMO_DIR_ENV: &str = "AZUMAYA_DEMO_DIR";

pub const FIXTURES: &[(&str, &str)] = &[
    ("s2.json", include_str!("../fixtures/s2.json")),
    ("t2.json", include_str!("../fixtures/t2.json")),
    ("rp2.json", include_str!("../fixtures/rp2.json")),
    ("rp2xs1.json", include_str!("../fixtures/rp2xs1.json")),
    ("cup_t2_k2.json", include_str!("../fixtures/cup_t2_k2.json")),
    (
        "cup_rp2xs1_k2.json",
        include_str!("../fixtures/cup_rp2xs1_k2.json"),
    ),
    (
        "quaternion_s2.json",
        include_str!("../fixtures/quaternion_s2.json"),
    ),
    (
        "induced_quaternion_s2.json",
        include_str!("../fixtures/induced_quaternion_s2.json"),
    ),
    (
        "witness_quaternion_s2.json",
        include_str!("../fixtures/witness_quaternion_s2.json"),
    ),
    (
        "generator_loop_k2.json",
        include_str!("../fixtures/generator_loop_k2.json"),
    ),
    (
        "constant_loop_k2.json",
        include_str!("../fixtures/constant_loop_k2.json"),
    ),
];

/// Raw fixture text, honoring the `AZUMAYA_DEMO_DIR` override.
pub fn fixture_text(name: &str) -> CliResult<String> {
    if let Ok(dir) = std::env::var(DEMO_DIR_ENV) {
        let path = std::path::Path::new(&dir).join(name);
        return std::fs::read_to_string(&path).map_err(|e| {
            CliError::Input(format!("cannot read {} ({DEMO_DIR_ENV}): {e}", path.display()))
        });
    }
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| text.to_string())
        .ok_or_else(|| CliError::Input(format!("no bundled fixture named {name}")))
}

pub fn fixture(name: &str) -> CliResult<Dataset> {
    dataset::parse(&fixture_text(name)?, name)
}
