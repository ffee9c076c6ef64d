use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use witt_twist_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(wt_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    wt_string_free(s);
    out
}

#[test]
fn modular_delta_and_antipode() {
    let mut ctx = ptr::null_mut();
    let eta = [1u32];
    unsafe {
        assert_eq!(wt_context_modular(3, 1, eta.as_ptr(), 1, 1, &mut ctx), WtStatus::Ok);
        let alpha = [1i64];
        let mut s = ptr::null_mut();
        assert_eq!(wt_delta(ctx, alpha.as_ptr(), 1, 1, &mut s), WtStatus::Ok);
        assert_eq!(
            take(s),
            "1 (x) x(1)D1 + x(1)D1 (x) 1 + 2*x(1)D1 (x) x(2)D1*t + x(1)D1 (x) x(2)D1^2*t^2"
        );
        assert_eq!(wt_antipode(ctx, alpha.as_ptr(), 1, 1, &mut s), WtStatus::Ok);
        assert_eq!(take(s), "2*x(1)D1 + 2*x(1)D1.x(2)D1*t");
        assert_eq!(last_error(), "");
        wt_context_free(ctx);
    }
}

#[test]
fn integral_delta() {
    let mut ctx = ptr::null_mut();
    let eta = [1u32];
    unsafe {
        assert_eq!(wt_context_integral(1, eta.as_ptr(), 1, 3, &mut ctx), WtStatus::Ok);
        let alpha = [1i64];
        let mut s = ptr::null_mut();
        assert_eq!(wt_delta(ctx, alpha.as_ptr(), 1, 1, &mut s), WtStatus::Ok);
        assert_eq!(
            take(s),
            "1 (x) x(1)D1 + x(1)D1 (x) 1 + x(1)D1 (x) x(2)D1*t + x(1)D1 (x) x(2)D1^2*t^2"
        );
        wt_context_free(ctx);
    }
}

#[test]
fn errors_are_reported() {
    let mut ctx = ptr::null_mut();
    let eta = [1u32];
    unsafe {
        assert_eq!(
            wt_context_modular(4, 1, eta.as_ptr(), 1, 0, &mut ctx),
            WtStatus::InvalidArgument
        );
        assert!(last_error().contains("prime"));
        assert_eq!(
            wt_context_modular(3, 1, eta.as_ptr(), 1, 0, ptr::null_mut()),
            WtStatus::NullPointer
        );
        assert_eq!(wt_context_modular(3, 1, ptr::null(), 1, 0, &mut ctx), WtStatus::NullPointer);
        let bad_eta = [2u32];
        assert_eq!(
            wt_context_modular(3, 1, bad_eta.as_ptr(), 1, 0, &mut ctx),
            WtStatus::InvalidArgument
        );

        assert_eq!(wt_context_modular(3, 1, eta.as_ptr(), 1, 0, &mut ctx), WtStatus::Ok);
        let mut s = ptr::null_mut();
        let alpha = [3i64];
        assert_eq!(wt_delta(ctx, alpha.as_ptr(), 1, 1, &mut s), WtStatus::InvalidArgument);
        let two = [0i64, 0];
        assert_eq!(wt_delta(ctx, two.as_ptr(), 2, 1, &mut s), WtStatus::InvalidArgument);
        assert_eq!(wt_delta(ptr::null(), alpha.as_ptr(), 1, 1, &mut s), WtStatus::NullPointer);
        wt_context_free(ctx);
        wt_context_free(ptr::null_mut());
    }
}

#[test]
fn verify_returns_json() {
    let eta = [1u32];
    let suite = CString::new("dims").unwrap();
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(
            wt_verify_modular(3, 1, eta.as_ptr(), 1, 0, suite.as_ptr(), 1, &mut json),
            WtStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["suite"], "dims");
        assert_eq!(v["checks"].as_array().unwrap().len(), 2);

        let bad = CString::new("everything").unwrap();
        assert_eq!(
            wt_verify_modular(3, 1, eta.as_ptr(), 1, 0, bad.as_ptr(), 1, ptr::null_mut()),
            WtStatus::InvalidArgument
        );
    }
}

#[test]
fn header_declares_the_interface() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/witt_twist.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "wt_context_modular",
        "wt_context_integral",
        "wt_context_free",
        "wt_delta",
        "wt_antipode",
        "wt_verify_modular",
        "wt_last_error",
        "wt_string_free",
        "WT_STATUS_OK",
        "typedef struct WtContext WtContext",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
}

/// Compiles and runs a small C program against the header and static library.
#[test]
fn c_program_links() {
    let Ok(cc) = which("cc") else { return };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target_dir = manifest.join("../../target");
    let lib_dir = ["debug", "release"]
        .iter()
        .map(|p| target_dir.join(p))
        .find(|d| d.join("libwitt_twist_ffi.a").exists());
    let Some(lib_dir) = lib_dir else { return };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "witt_twist.h"
int main(void) {
    WtContext *ctx = NULL;
    uint32_t eta[1] = {1};
    int64_t alpha[1] = {1};
    char *out = NULL;
    if (wt_context_modular(3, 1, eta, 1, 0, &ctx) != WT_STATUS_OK) return 1;
    if (wt_delta(ctx, alpha, 1, 1, &out) != WT_STATUS_OK) return 2;
    printf("%s\n", out);
    wt_string_free(out);
    wt_context_free(ctx);
    if (wt_context_modular(2, 1, eta, 1, 0, &ctx) != WT_STATUS_INVALID_ARGUMENT) return 3;
    if (strlen(wt_last_error()) == 0) return 4;
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(lib_dir.join("libwitt_twist_ffi.a"))
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "1 (x) x(1)D1 + x(1)D1 (x) 1 + 2*x(1)D1 (x) x(2)D1*t + x(1)D1 (x) x(2)D1^2*t^2\n"
    );
}

fn which(name: &str) -> Result<PathBuf, ()> {
    std::env::var_os("PATH")
        .and_then(|paths| {
            std::env::split_paths(&paths)
                .map(|d| d.join(name))
                .find(|p| p.is_file())
        })
        .ok_or(())
}
