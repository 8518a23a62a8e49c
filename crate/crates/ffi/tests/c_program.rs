//! Compiles a C program against the generated header and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "premon.h"

int main(void) {
    PremonInstance *h = NULL;
    if (premon_instance_new("{\"family\":\"puiseux\",\"a\":2,\"b\":3}", &h) != PREMON_STATUS_OK) return 10;
    PremonTri t = PREMON_TRI_UNKNOWN;
    if (premon_is_quark(h, "2/3", NULL, &t) != PREMON_STATUS_OK || t != PREMON_TRI_TRUE) return 11;
    PremonBudget b = premon_budget_default();
    b.chain_depth = 6;
    PremonHeight height;
    if (premon_height(h, "2", &b, &height) != PREMON_STATUS_OK) return 12;
    if (height.kind != PREMON_HEIGHT_KIND_INFINITE || height.value != 6) return 13;
    char *json = NULL;
    if (premon_classify(h, "4/3", NULL, &json) != PREMON_STATUS_OK) return 14;
    if (strstr(json, "\"is_quark\":\"false\"") == NULL) return 15;
    premon_string_free(json);
    if (premon_is_quark(h, "1/2", NULL, &t) != PREMON_STATUS_INVALID_INPUT) return 16;
    if (premon_last_error() == NULL) return 17;
    premon_instance_free(h);
    printf("ok %s\n", premon_version());
    return 0;
}
"#;

/// `cargo test` only rebuilds the rlib, so build the static library here.
fn static_library() -> PathBuf {
    let status = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "--lib", "-p", "premon-ffi"])
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .status()
        .unwrap();
    assert!(status.success(), "cargo build failed");
    // <target>/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().join("libpremon_ffi.a")
}

#[test]
fn c_program_links_and_runs() {
    let header_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(header_dir.join("premon.h").exists());
    let lib = static_library();
    assert!(lib.exists(), "{} missing", lib.display());

    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    let bin = dir.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "{cc} failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
    std::fs::remove_dir_all(dir).ok();
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("premon-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
