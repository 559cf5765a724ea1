//! Benchmark-only crate; see benches/core_ops.rs.

use qls_core::config::JobConfig;
use qls_core::qas::ModuleAction;

/// Loads a bundled golden config and builds its validated action.
pub fn load_action(name: &str) -> ModuleAction {
    let path = format!("{}/../../configs/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).expect("read bundled config");
    JobConfig::parse(&text)
        .expect("parse config")
        .action()
        .expect("valid action")
}
