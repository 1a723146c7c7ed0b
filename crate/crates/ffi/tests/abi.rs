use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use loopjones_ffi::*;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { lj_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(lj_last_error()) }.to_str().unwrap().to_owned()
}

fn parse(text: &str, strands: usize) -> (LjStatus, *mut LjBraid) {
    let c = CString::new(text).unwrap();
    let mut braid = ptr::null_mut();
    let status = unsafe { lj_braid_parse(c.as_ptr(), strands, &mut braid) };
    (status, braid)
}

#[test]
fn trefoil_round_trip() {
    let (status, braid) = parse("1 1 1", 0);
    assert_eq!(status, LjStatus::Ok);
    unsafe {
        assert_eq!(lj_braid_strands(braid), 2);
        assert_eq!(lj_braid_is_knot(braid), 1);

        let mut s = ptr::null_mut();
        assert_eq!(lj_alexander(braid, &mut s), LjStatus::Ok);
        assert_eq!(take_string(s), "u^2 - 1 + u^-2");

        assert_eq!(lj_colored_jones(braid, 2, &mut s), LjStatus::Ok);
        assert_eq!(take_string(s), "s^-2 + s^-6 - s^-8");

        let mut exp = ptr::null_mut();
        assert_eq!(lj_loop_expansion(braid, 1, 12, -30, &mut exp), LjStatus::Ok);
        assert_eq!(lj_expansion_is_partial(exp), 0);
        let mut top = 0;
        assert_eq!(lj_expansion_exact_above(exp, &mut top), LjStatus::Ok);
        assert!(top < -30);
        // V^(0) = 1/(u^2 - 1 + u^-2) = u^-2 + u^-4 - u^-8 - …
        assert_eq!(lj_expansion_coefficient(exp, 0, -8, &mut s), LjStatus::Ok);
        assert_eq!(take_string(s), "-1");
        assert_eq!(lj_expansion_coefficient(exp, 0, -60, &mut s), LjStatus::Unverified);
        assert_eq!(lj_expansion_coefficient(exp, 5, 0, &mut s), LjStatus::InvalidArgument);

        assert_eq!(lj_expansion_json(exp, &mut s), LjStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(json["L"], 1);
        assert_eq!(json["V"][0]["tail"][0][0], -2);

        lj_expansion_free(exp);
        lj_braid_free(braid);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let (status, braid) = parse("1 x", 0);
    assert_eq!(status, LjStatus::InvalidBraid);
    assert!(braid.is_null());
    assert!(!last_error().is_empty());

    let (status, link) = parse("1 1", 0);
    assert_eq!(status, LjStatus::Ok);
    assert!(last_error().is_empty());
    let mut exp = ptr::null_mut();
    unsafe {
        assert_eq!(lj_loop_expansion(link, 1, 4, -10, &mut exp), LjStatus::NotAKnot);
        assert!(last_error().contains("2-component link"));
        assert_eq!(lj_loop_expansion(link, 1, 4, 5, &mut exp), LjStatus::InvalidArgument);
        let mut s = ptr::null_mut();
        assert_eq!(lj_colored_jones(link, 1, &mut s), LjStatus::InvalidArgument);
        lj_braid_free(link);
    }
}

#[test]
fn null_pointers_are_rejected() {
    unsafe {
        let mut braid = ptr::null_mut();
        assert_eq!(lj_braid_parse(ptr::null(), 0, &mut braid), LjStatus::NullPointer);
        let mut s = ptr::null_mut();
        assert_eq!(lj_alexander(ptr::null(), &mut s), LjStatus::NullPointer);
        assert_eq!(lj_braid_strands(ptr::null()), 0);
        assert_eq!(lj_expansion_is_partial(ptr::null()), -1);
        lj_braid_free(ptr::null_mut());
        lj_expansion_free(ptr::null_mut());
        lj_string_free(ptr::null_mut());
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(lj_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn header() -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/loopjones.h")).unwrap()
}

#[test]
fn header_declares_every_export() {
    let source = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("src/lib.rs")).unwrap();
    let header = header();
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 10);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("LJ_STATUS_UNVERIFIED = 6"));
    assert!(header.contains("typedef struct LjBraid LjBraid;"));
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile_dir();
    let src = dir.join("use_header.c");
    std::fs::write(
        &src,
        "#include \"loopjones.h\"\nint main(void) { LjBraid *b = 0; LjStatus s = lj_braid_parse(\"1 1 1\", 0, &b); (void)s; return 0; }\n",
    )
    .unwrap();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
        .ok_or(())
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("loopjones-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
