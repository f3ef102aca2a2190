use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use astheno_ffi::*;

struct Handle(*mut AsthenoForm);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { astheno_form_free(self.0) }
    }
}

fn parse(text: &str) -> Handle {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { astheno_form_parse(c.as_ptr(), &mut out) },
        AsthenoStatus::Ok
    );
    Handle(out)
}

fn text(h: &Handle) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { astheno_form_to_text(h.0, &mut s) },
        AsthenoStatus::Ok
    );
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { astheno_string_free(s) };
    out
}

fn last_error() -> String {
    let p = astheno_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

const FREE: AsthenoGeometry = AsthenoGeometry {
    m1: 2,
    m2: 2,
    truncate: false,
    reduce_ring: true,
};

#[test]
fn operators_through_handles() {
    let omega = parse("Phi1 + Phi2 - 2*eta1/\\eta2");
    let mut d = ptr::null_mut();
    let status =
        unsafe { astheno_form_d(omega.0, AsthenoConvention::Ungraded as u32, &FREE, &mut d) };
    assert_eq!(status, AsthenoStatus::Ok);
    let d = Handle(d);
    assert_eq!(
        text(&d),
        "2*b1*eta1/\\Phi1 - 2*a2*eta1/\\Phi2 - 2*a1*eta2/\\Phi1 + 2*b2*eta2/\\Phi2"
    );

    let mut j = ptr::null_mut();
    assert_eq!(
        unsafe { astheno_form_j(omega.0, &mut j) },
        AsthenoStatus::Ok
    );
    let j = Handle(j);
    let mut same = false;
    assert_eq!(
        unsafe { astheno_form_equal(omega.0, j.0, &mut same) },
        AsthenoStatus::Ok
    );
    assert!(same);

    let mut dc = ptr::null_mut();
    let status =
        unsafe { astheno_form_dc(omega.0, AsthenoConvention::Graded as u32, &FREE, &mut dc) };
    assert_eq!(status, AsthenoStatus::Ok);
    drop(Handle(dc));
}

#[test]
fn wedge_add_and_zero() {
    let a = parse("eta1");
    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { astheno_form_wedge(a.0, a.0, &FREE, &mut w) },
        AsthenoStatus::Ok
    );
    let w = Handle(w);
    let mut zero = false;
    assert_eq!(
        unsafe { astheno_form_is_zero(w.0, &mut zero) },
        AsthenoStatus::Ok
    );
    assert!(zero);

    let b = parse("-eta1 + Phi2");
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { astheno_form_add(a.0, b.0, &mut s) },
        AsthenoStatus::Ok
    );
    assert_eq!(text(&Handle(s)), "Phi2");
}

#[test]
fn record_and_latex() {
    let f = parse("1/2*b2*eta2/\\Phi2");
    let mut rec = ptr::null_mut();
    assert_eq!(
        unsafe { astheno_form_to_record(f.0, &mut rec) },
        AsthenoStatus::Ok
    );
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { astheno_form_from_record(rec, &mut back) },
        AsthenoStatus::Ok
    );
    unsafe { astheno_string_free(rec) };
    let back = Handle(back);
    assert_eq!(text(&back), text(&f));

    let mut tex = ptr::null_mut();
    assert_eq!(
        unsafe { astheno_form_to_latex(f.0, &mut tex) },
        AsthenoStatus::Ok
    );
    let s = unsafe { CStr::from_ptr(tex) }.to_str().unwrap().to_string();
    unsafe { astheno_string_free(tex) };
    assert_eq!(s, "\\frac{1}{2}\\beta_2\\,\\eta_2\\wedge\\Phi_2");

    let bad = CString::new(r#"{"terms":[{"eta1":2}]}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { astheno_form_from_record(bad.as_ptr(), &mut out) },
        AsthenoStatus::RecordError
    );
    assert!(out.is_null());
    assert!(last_error().contains("/terms/0"));
}

#[test]
fn classification() {
    let g = AsthenoGeometry {
        m1: 2,
        m2: 2,
        truncate: true,
        reduce_ring: true,
    };
    let mut verdict = AsthenoVerdict::IdenticallyZero;
    let mut residual = ptr::null_mut();
    let status = unsafe {
        astheno_classify(
            AsthenoCondition::Astheno as u32,
            &g,
            AsthenoFactor::BetaKenmotsu as u32,
            AsthenoFactor::BetaKenmotsu as u32,
            AsthenoConvention::Graded as u32,
            &mut verdict,
            &mut residual,
        )
    };
    assert_eq!(status, AsthenoStatus::Ok);
    assert_eq!(verdict, AsthenoVerdict::Nonzero);
    assert!(text(&Handle(residual)).contains("b1^2"));

    let small = AsthenoGeometry {
        m1: 1,
        m2: 1,
        truncate: true,
        reduce_ring: true,
    };
    let status = unsafe {
        astheno_classify(
            AsthenoCondition::Gauduchon as u32,
            &small,
            AsthenoFactor::Cosymplectic as u32,
            AsthenoFactor::Cosymplectic as u32,
            AsthenoConvention::Graded as u32,
            &mut verdict,
            ptr::null_mut(),
        )
    };
    assert_eq!(status, AsthenoStatus::Ok);
    assert_eq!(verdict, AsthenoVerdict::IdenticallyZero);
}

#[test]
fn errors_set_status_and_message() {
    let c = CString::new("eta1 + Phi3").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { astheno_form_parse(c.as_ptr(), &mut out) },
        AsthenoStatus::ParseError
    );
    assert!(out.is_null());
    assert!(last_error().contains("1:8"));

    assert_eq!(
        unsafe { astheno_form_parse(ptr::null(), &mut out) },
        AsthenoStatus::NullArgument
    );
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { astheno_form_parse(invalid.as_ptr().cast(), &mut out) },
        AsthenoStatus::InvalidUtf8
    );

    let f = parse("eta1");
    let degenerate = AsthenoGeometry {
        m1: 0,
        m2: 1,
        truncate: true,
        reduce_ring: true,
    };
    assert_eq!(
        unsafe { astheno_form_d(f.0, 0, &degenerate, &mut out) },
        AsthenoStatus::InvalidGeometry
    );
    assert_eq!(
        unsafe { astheno_form_d(f.0, 7, &FREE, &mut out) },
        AsthenoStatus::InvalidArgument
    );
    assert!(last_error().contains("convention code 7"));

    let mut v = AsthenoVerdict::Nonzero;
    assert_eq!(
        unsafe {
            astheno_classify(
                AsthenoCondition::Astheno as u32,
                &AsthenoGeometry {
                    m1: 1,
                    m2: 1,
                    truncate: true,
                    reduce_ring: true,
                },
                9,
                0,
                0,
                &mut v,
                ptr::null_mut(),
            )
        },
        AsthenoStatus::InvalidArgument
    );
    unsafe { astheno_form_free(ptr::null_mut()) };
    unsafe { astheno_string_free(ptr::null_mut()) };
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(astheno_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    std::env::current_exe()
        .unwrap()
        .parent()
        .and_then(Path::parent)
        .unwrap()
        .to_path_buf()
}

#[test]
fn c_program_links_against_header_and_static_library() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libastheno_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let exe = std::env::temp_dir().join(format!("astheno_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-I"])
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
