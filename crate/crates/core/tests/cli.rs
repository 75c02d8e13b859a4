use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stepgraphon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn analyze_c5() {
    let got = stdout_of(&["analyze", "--graphon", &data("c5.sg")]);
    assert_eq!(
        got,
        "blocks 5\n\
         alpha 2/5 witness {0,2}\n\
         chi 3 colouring 0 1 0 1 2\n\
         omega 2 witness {0,1}\n\
         chi_frac 5/2\n\
         omega_frac 5/2\n"
    );
}

#[test]
fn analyze_half_k3() {
    let got = stdout_of(&["analyze", "--graphon", &data("half_k3.sg")]);
    assert_eq!(
        got,
        "blocks 3\n\
         alpha 1/3 witness {0}\n\
         chi 3 colouring 0 1 2\n\
         omega 3 witness {0,1,2}\n\
         chi_frac 3/1\n\
         omega_frac 3/1\n"
    );
}

#[test]
fn triangle_densities() {
    let args = ["--pattern", &data("triangle.graph"), "--graphon", &data("half_k3.sg")];
    let mut plain = vec!["density"];
    plain.extend(args);
    assert_eq!(stdout_of(&plain), "density 1/36\n");
    plain.insert(1, "--induced");
    assert_eq!(stdout_of(&plain), "induced_density 1/36\n");
}

#[test]
fn bfold_profile_c5() {
    let got = stdout_of(&["bfold", "--graphon", &data("c5.sg"), "--bmax", "3"]);
    assert_eq!(got, "chi_frac 5/2\nb chi_b ratio\n1 3 3/1\n2 5 5/2\n3 8 8/3\n");
}

#[test]
fn polyton_separates_the_half_point() {
    let got = stdout_of(&["polyton", "--graphon", &data("c5.sg"), "--point", "1/2,1/2,1/2,1/2,1/2"]);
    assert_eq!(
        got,
        "conditions PASS\nmembership NON-MEMBER\nweights 1/1 1/1 1/1 1/1 1/1\nthreshold 2/1\n"
    );
}

#[test]
fn perfect_reports_hole_for_half_k3() {
    let got = stdout_of(&["perfect", "--graphon", &data("half_k3.sg")]);
    let mut lines = got.lines();
    assert!(lines.next().unwrap().starts_with("subgraph-perfect(<=7) NO witness C5"));
    assert_eq!(lines.next(), Some("inheritance-perfect YES"));
    let bounded = stdout_of(&["perfect", "--graphon", &data("k2.sg"), "--upto", "9"]);
    assert_eq!(bounded, "subgraph-perfect(<=9) YES\ninheritance-perfect YES\n");
}

#[test]
fn cutnorm_against_zero() {
    let got = stdout_of(&["cutnorm", "--a", &data("c5.sg"), "--b", &data("zero.sg")]);
    assert_eq!(got.lines().next(), Some("cut_norm 2/5"));
}

#[test]
fn sample_is_reproducible_and_parseable() {
    let args = ["sample", "--graphon", &data("k2.sg"), "--n", "12", "--seed", "7"];
    let first = stdout_of(&args);
    assert_eq!(first, stdout_of(&args));
    let dir = std::env::temp_dir().join(format!("stepgraphon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sample.graph");
    let written = path.to_string_lossy().into_owned();
    let mut with_out = args.to_vec();
    with_out.extend(["--out", &written]);
    stdout_of(&with_out);
    let graph = stepgraphon::io::parse_graph(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(graph.vertex_count(), 12);
    assert!(graph.is_bipartite());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn converge_constant_family() {
    let got = stdout_of(&["converge", "--family", "yn", "--param", "chi", "--steps", "3"]);
    assert_eq!(
        got,
        "family,parameter,limit\n\
         yn,chi,1/1\n\
         n,value,cut_norm,overlay\n\
         1,inf,1/1,aligned\n\
         2,inf,1/2,aligned\n\
         3,inf,1/3,aligned\n\
         inequality limit <= last: holds\n"
    );
}

#[test]
fn output_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("stepgraphon-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let written = path.to_string_lossy().into_owned();
    let out = run(&["--output", &written, "cutnorm", "--a", &data("k2.sg"), "--b", &data("k2.sg")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("cut_norm 0/1\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    let c5 = data("c5.sg");
    assert_eq!(exit_code(&["analyze", "--graphon", &data("missing.sg")]), 2);
    assert_eq!(exit_code(&["analyze", "--graphon", &data("triangle.graph")]), 2);
    assert_eq!(exit_code(&["sample", "--graphon", &c5, "--n", "4"]), 2);
    assert_eq!(exit_code(&["converge", "--family", "sample", "--param", "chi", "--steps", "2"]), 2);
    assert_eq!(exit_code(&["polyton", "--graphon", &c5, "--point", "1,2"]), 2);
    assert_eq!(exit_code(&["perfect", "--graphon", &c5, "--upto", "6"]), 2);
    assert_eq!(exit_code(&["frobnicate"]), 2);
    let err = run(&["polyton", "--graphon", &c5, "--point", "1,2"]);
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error: "));
}
