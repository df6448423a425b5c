//! Compiles and runs the C example against the generated header and the
//! static library. Needs a C compiler on PATH (`CC` or `cc`).

use std::env;
use std::path::{Path, PathBuf};
use std::process::Command;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test-binary>
    let exe = env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_example_builds_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include/landau_oam.h");
    assert!(header.exists(), "build script did not write {}", header.display());
    let lib = target_dir().join("liblandau_oam_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let cc = env::var("CC").unwrap_or_else(|_| "cc".into());
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("table1");
    let status = Command::new(&cc)
        .arg(manifest.join("examples/table1.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status();
    let status = match status {
        Ok(s) => s,
        Err(e) => panic!("could not run C compiler `{cc}`: {e}"),
    };
    assert!(status.success(), "C example failed to compile");

    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("(!)"), "routes disagree:\n{text}");
    assert!(text.contains("2 1 1.0000000000 5.0000000000 1.0000000000 2.5000000000 5.0000000000 2.5000000000"));
    assert!(text.contains("status 3"));
}
