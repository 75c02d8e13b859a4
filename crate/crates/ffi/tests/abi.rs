use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use stepgraphon_ffi::*;

const C5: &str = "blocks 5\nmeasures 1/5 1/5 1/5 1/5 1/5\n\
0 1 0 0 1\n1 0 1 0 0\n0 1 0 1 0\n0 0 1 0 1\n1 0 0 1 0\n";
const HALF_K3: &str = "blocks 3\nmeasures 1/3 1/3 1/3\n0 1/2 1/2\n1/2 0 1/2\n1/2 1/2 0\n";
const TRIANGLE: &str = "vertices 3\n0 1\n1 2\n0 2\n";

fn graphon(text: &str) -> *mut SgGraphon {
    let source = CString::new(text).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { sg_graphon_parse(source.as_ptr(), &mut w) }, SgStatus::Ok);
    assert!(!w.is_null());
    w
}

fn graph(text: &str) -> *mut SgGraph {
    let source = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { sg_graph_parse(source.as_ptr(), &mut g) }, SgStatus::Ok);
    g
}

/// Takes ownership of a returned string.
fn take(s: *mut c_char) -> String {
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { sg_string_free(s) };
    owned
}

fn last_error() -> String {
    let p = sg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parameter(w: *const SgGraphon, p: SgParameter) -> String {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sg_parameter(w, p, &mut out) }, SgStatus::Ok);
    take(out)
}

#[test]
fn c5_parameters() {
    let w = graphon(C5);
    let mut blocks = 0;
    assert_eq!(unsafe { sg_graphon_blocks(w, &mut blocks) }, SgStatus::Ok);
    assert_eq!(blocks, 5);
    assert_eq!(parameter(w, SgParameter::Alpha), "2/5");
    assert_eq!(parameter(w, SgParameter::Chromatic), "3/1");
    assert_eq!(parameter(w, SgParameter::Clique), "2/1");
    assert_eq!(parameter(w, SgParameter::FractionalChromatic), "5/2");
    assert_eq!(parameter(w, SgParameter::FractionalClique), "5/2");
    assert!(sg_last_error_message().is_null());
    unsafe { sg_graphon_free(w) };
}

#[test]
fn looped_graphon_has_infinite_chromatic_number() {
    let w = graphon("blocks 1\nmeasures 1\n1/3\n");
    assert_eq!(parameter(w, SgParameter::Chromatic), "inf");
    assert_eq!(parameter(w, SgParameter::Alpha), "0/1");
    unsafe { sg_graphon_free(w) };
}

#[test]
fn densities_and_cut_norm() {
    let (w, h) = (graphon(HALF_K3), graph(TRIANGLE));
    for induced in [false, true] {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { sg_density(h, w, induced, &mut out) }, SgStatus::Ok);
        assert_eq!(take(out), "1/36");
    }
    let (c5, zero) = (graphon(C5), graphon("blocks 1\nmeasures 1\n0\n"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sg_cut_norm(c5, zero, &mut out) }, SgStatus::Ok);
    assert_eq!(take(out), "2/5");
    unsafe {
        sg_graph_free(h);
        sg_graphon_free(w);
        sg_graphon_free(c5);
        sg_graphon_free(zero);
    }
}

#[test]
fn perfectness_verdicts() {
    let w = graphon(HALF_K3);
    let (mut subgraph, mut inheritance) = (true, false);
    assert_eq!(unsafe { sg_subgraph_perfect(w, 5, &mut subgraph) }, SgStatus::Ok);
    assert_eq!(unsafe { sg_inheritance_perfect(w, &mut inheritance) }, SgStatus::Ok);
    assert!(!subgraph && inheritance);
    assert_eq!(unsafe { sg_subgraph_perfect(w, 6, &mut subgraph) }, SgStatus::InvalidArgument);
    assert!(last_error().contains("odd"));
    unsafe { sg_graphon_free(w) };
}

#[test]
fn polyton_membership() {
    let w = graphon(C5);
    let coords = |vals: &[&str]| vals.iter().map(|s| CString::new(*s).unwrap()).collect::<Vec<_>>();
    let check = |vals: &[&str]| {
        let owned = coords(vals);
        let ptrs: Vec<*const c_char> = owned.iter().map(|c| c.as_ptr()).collect();
        let mut member = false;
        let status = unsafe { sg_polyton_contains(w, ptrs.as_ptr(), ptrs.len(), &mut member) };
        (status, member)
    };
    assert_eq!(check(&["2/5"; 5]), (SgStatus::Ok, true));
    assert_eq!(check(&["1/2"; 5]), (SgStatus::Ok, false));
    assert_eq!(check(&["1/2", "x", "0", "0", "0"]).0, SgStatus::InvalidArgument);
    assert_eq!(check(&["1/2"; 2]).0, SgStatus::InvalidArgument);
    unsafe { sg_graphon_free(w) };
}

#[test]
fn sampling_is_seeded() {
    let w = graphon("blocks 2\nmeasures 1/2 1/2\n0 1\n1 0\n");
    let draw = |seed| {
        let mut g = ptr::null_mut();
        assert_eq!(unsafe { sg_sample(w, 10, seed, &mut g) }, SgStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { sg_graph_to_string(g, &mut out) }, SgStatus::Ok);
        unsafe { sg_graph_free(g) };
        take(out)
    };
    let first = draw(3);
    assert!(first.starts_with("vertices 10\n"));
    assert_eq!(first, draw(3));
    unsafe { sg_graphon_free(w) };
}

#[test]
fn round_trip_through_text() {
    let w = graphon(HALF_K3);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sg_graphon_to_string(w, &mut out) }, SgStatus::Ok);
    let again = graphon(&take(out));
    assert_eq!(parameter(again, SgParameter::Alpha), "1/3");
    unsafe {
        sg_graphon_free(w);
        sg_graphon_free(again);
    }
}

#[test]
fn errors_are_reported() {
    let mut w = ptr::null_mut();
    let asym = CString::new("blocks 2\nmeasures 1/2 1/2\n0 1\n0 0\n").unwrap();
    assert_eq!(unsafe { sg_graphon_parse(asym.as_ptr(), &mut w) }, SgStatus::InvalidGraphon);
    assert!(w.is_null());
    assert!(last_error().contains("symmetric"));

    let garbage = CString::new("vertices two").unwrap();
    assert_eq!(unsafe { sg_graphon_parse(garbage.as_ptr(), &mut w) }, SgStatus::Parse);
    assert!(last_error().starts_with("parse error"));

    assert_eq!(unsafe { sg_graphon_parse(ptr::null(), &mut w) }, SgStatus::NullPointer);
    let bad_utf8 = [0xffu8, 0];
    assert_eq!(unsafe { sg_graphon_parse(bad_utf8.as_ptr().cast(), &mut w) }, SgStatus::InvalidUtf8);

    let mut blocks = 0;
    assert_eq!(unsafe { sg_graphon_blocks(ptr::null(), &mut blocks) }, SgStatus::NullPointer);
    let ok = graphon(C5);
    assert_eq!(unsafe { sg_graphon_blocks(ok, ptr::null_mut()) }, SgStatus::NullPointer);
    unsafe {
        sg_graphon_free(ok);
        sg_graphon_free(ptr::null_mut());
        sg_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let Ok(probe) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping header check");
        return;
    };
    assert!(probe.status.success());
    let dir = std::env::temp_dir().join(format!("stepgraphon-header-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let source = dir.join("use.c");
    std::fs::write(
        &source,
        "#include \"stepgraphon.h\"\n\
         int main(void) {\n\
           SgGraphon *w = 0; char *s = 0;\n\
           if (sg_graphon_parse(\"blocks 1\\nmeasures 1\\n0\\n\", &w) != SG_STATUS_OK) return 1;\n\
           sg_parameter(w, SG_PARAMETER_ALPHA, &s);\n\
           sg_string_free(s); sg_graphon_free(w);\n\
           return sg_last_error_message() != 0;\n\
         }\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&header)
        .arg(&source)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
