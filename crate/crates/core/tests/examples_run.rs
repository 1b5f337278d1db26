//! The quick examples double as smoke tests. `cargo test` builds every
//! example next to the test binaries, so run those executables directly.

use std::path::PathBuf;
use std::process::Command;

const QUICK: &[&str] = &["ladder_algebra", "linear_operator", "gamma_oracle", "fit_spectra", "weights", "kolmogorov"];

fn example_path(name: &str) -> PathBuf {
    // target/<profile>/deps/<test> -> target/<profile>/examples/<name>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    profile_dir.join("examples").join(format!("{name}{}", std::env::consts::EXE_SUFFIX))
}

#[test]
fn quick_examples_run() {
    for name in QUICK {
        let path = example_path(name);
        assert!(path.exists(), "example binary missing: {}", path.display());
        let out = Command::new(&path).output().unwrap();
        assert!(
            out.status.success(),
            "{name} failed:\n{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}
