//! Compiles tests/c/smoke.c against the generated header and the static
//! library, then runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

fn target_dir() -> PathBuf {
    // integration test binaries live in <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_declares_the_abi() {
    let h = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/tpsgeo.h")).unwrap();
    for name in [
        "tpsgeo_version",
        "tpsgeo_last_error",
        "tpsgeo_model_from_json",
        "tpsgeo_model_hessian",
        "tpsgeo_model_analyze",
        "tpsgeo_curvature",
        "tpsgeo_killing",
        "tpsgeo_verify_all",
        "tpsgeo_report_render",
        "tpsgeo_report_free",
        "typedef struct TpsgeoModel TpsgeoModel;",
        "TPSGEO_STATUS_BUFFER_TOO_SMALL = 6",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libtpsgeo_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let exe = std::env::temp_dir().join(format!("tpsgeo-smoke-{}", std::process::id()));
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler runs");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
