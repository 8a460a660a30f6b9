//! Runs the Python smoke script against the freshly built extension.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn python_smoke_script_passes() {
    // Integration tests live in target/<profile>/deps next to the freshly linked cdylib.
    let lib = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .join("liba1ext_py.so");
    assert!(lib.exists(), "{} was not built", lib.display());
    let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../python/smoke_test.py");
    let out = Command::new("python3")
        .arg(script)
        .env("A1EXT_LIB", &lib)
        .output()
        .expect("python3 runs");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        out.status.success(),
        "{stdout}\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout.contains("python smoke test: ok"));
}
