use std::path::PathBuf;
use std::process::Command;

fn derive(target: &str, format: &str) -> Vec<u8> {
    let o = Command::new(env!("CARGO_BIN_EXE_qpain")).args(["derive", target, "--format", format]).output().expect("spawn qpain");
    assert!(o.status.success(), "derive {target} failed: {}", String::from_utf8_lossy(&o.stdout));
    o.stdout
}

fn golden(name: &str) -> Vec<u8> {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/testdata").join(name);
    std::fs::read(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

#[test]
fn derive_outputs_match_golden_files() {
    for target in ["pii", "piv", "pv"] {
        for (format, ext) in [("text", "txt"), ("latex", "tex"), ("structured", "json")] {
            let name = format!("derive_{target}.{ext}");
            assert!(derive(target, format) == golden(&name), "{name} differs from the golden file");
        }
    }
}

#[test]
fn structured_pv_is_byte_identical_across_runs() {
    assert_eq!(derive("pv", "structured"), derive("pv", "structured"));
}
