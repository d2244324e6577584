//! The `itercomp` binary: outputs, formats and exit codes.

use std::process::{Command, Output};

use itercomp::Poly;

fn itercomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itercomp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn classify_prints_the_class() {
    let o = itercomp(&["classify", "--field", "3", "--f", "x^2+1", "--g", "x^2"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "generic d=2 h=0\n"));
    let o = itercomp(&["classify", "--field", "2", "--f", "x", "--g", "x^2+1"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "p-critical a=1 b=1 h=1\n"));
    // 2 (x - 1)^3 + 1 with f = 3 (x - 1)^2 over F_5.
    let o = itercomp(&["classify", "--field", "5", "--f", "3*x^2+4*x+3", "--g", "2*x^3+4*x^2+x+4"]);
    assert!(stdout(&o).starts_with("critical alpha=1"), "{}", stdout(&o));
}

#[test]
fn unexpanded_input_is_a_parse_error() {
    let o = itercomp(&["classify", "--field", "5", "--f", "2*(x-1)^3", "--g", "x^2"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("parse") || err.contains("parenthes"), "{err}");
}

#[test]
fn profile_rows_for_x_plus_one() {
    let o = itercomp(&["profile", "--field", "3", "--f", "x+1", "--g", "x^2", "--nmax", "2", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "n,E,e,Delta,M,m,N,A,A_decimal,census\n\
         0,1,1,1,1,1,1,1/1,1.000000,1:1:1\n\
         1,1,1,2,2,2,1,2/1,2.000000,2:1:1\n\
         2,1,1,4,2,2,2,4/2,2.000000,2:1:2\n"
    );
}

#[test]
fn every_mode_gives_the_same_rows() {
    let run = |mode: &str, g: &str| {
        let o = itercomp(&[
            "profile", "--field", "5", "--f", "x^2+2", "--g", g, "--nmax", "3", "--mode", mode, "--format", "json",
        ]);
        assert_eq!(code(&o), 0, "{mode}: {}", String::from_utf8_lossy(&o.stderr));
        stdout(&o)
    };
    let direct = run("direct", "x^2");
    assert_eq!(run("via-root", "x^2"), direct);
    assert_eq!(run("closed-form", "monomial:2"), direct);
    for line in direct.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["schema"], 1);
    }
}

#[test]
fn cross_check_passes_on_a_linearized_pair() {
    let o = itercomp(&[
        "profile",
        "--field",
        "2",
        "--f",
        "x^2+x+1",
        "--g",
        "linearized:x+1",
        "--nmax",
        "4",
        "--mode",
        "closed-form",
        "--cross-check",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn exit_codes() {
    // Degree cap.
    let o = itercomp(&["profile", "--field", "3", "--f", "x+1", "--g", "x^2", "--nmax", "20", "--cap", "1000"]);
    assert_eq!(code(&o), 3);
    // Degenerate pair without the flag, then with it.
    let args = ["profile", "--field", "2", "--f", "x", "--g", "x^2+1", "--nmax", "2"];
    assert_eq!(code(&itercomp(&args)), 4);
    let mut with_flag = args.to_vec();
    with_flag.push("--allow-degenerate");
    assert_eq!(code(&itercomp(&with_flag)), 0);
    // Witness checker on a p-critical pair.
    assert_eq!(code(&itercomp(&["verify", "delta-witness", "--field", "2", "--f", "x", "--g", "x^2+1"])), 4);
    // Unknown checker, unknown shortcut.
    assert_eq!(code(&itercomp(&["verify", "nonsense", "--field", "3", "--f", "x"])), 2);
    assert_eq!(code(&itercomp(&["classify", "--field", "3", "--f", "x", "--g", "cubic:3"])), 2);
    assert_eq!(code(&itercomp(&["classify", "--field", "6", "--f", "x", "--g", "x^2"])), 2);
}

#[test]
fn verify_emits_passing_reports() {
    for args in [
        vec!["verify", "multiplicity", "--field", "3", "--f", "x^2+1", "--g", "x^2", "--nmax", "3"],
        vec!["verify", "closed-form", "--kind", "monomial", "--field", "3", "--f", "x+1", "--D", "2", "--nmax", "3"],
        vec!["verify", "closed-form", "--kind", "linearized", "--field", "2", "--f", "x^2+x+1", "--u", "x+1"],
        vec!["verify", "expgrowth", "--field", "3", "--f", "x^2+x+2", "--nmax", "2"],
        vec!["verify", "all", "--field", "3", "--f", "x+1", "--g", "x^2", "--nmax", "4"],
    ] {
        let o = itercomp(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
        for line in stdout(&o).lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!((v["schema"].as_u64(), v["pass"].as_bool()), (Some(1), Some(true)), "{line}");
        }
    }
    let o = itercomp(&["verify", "all", "--field", "3", "--f", "x+1", "--g", "x^2", "--nmax", "2"]);
    let names: Vec<String> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names, ["delta-witness", "dichotomy", "max-degree", "min-degree", "multiplicity"]);
}

#[test]
fn output_is_identical_across_seeds_and_runs() {
    let base = ["profile", "--field", "4", "--f", "x^2+x+t", "--g", "x^3+t*x+1", "--nmax", "3", "--format", "csv"];
    let first = stdout(&itercomp(&base));
    let mut reseeded = base.to_vec();
    reseeded.extend(["--seed", "987654321"]);
    assert_eq!(stdout(&itercomp(&base)), first);
    assert_eq!(stdout(&itercomp(&reseeded)), first);
}

#[test]
fn printed_polynomials_parse_back() {
    let plan = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        plan.path(),
        "[[family]]\nfields = [\"4\", \"9\"]\nf = [\"irreducible:1\"]\ng = [\"x^2+{c}*x+t\"]\nnmax = 1\n",
    )
    .unwrap();
    let o = itercomp(&["sweep", plan.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut rows = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        let field = itercomp::poly::parse_field(&rec[0], None).unwrap();
        for col in [1, 2] {
            let p = Poly::parse(&field, &rec[col]).unwrap();
            assert_eq!(p.to_string(), &rec[col]);
        }
        rows += 1;
    }
    assert_eq!(rows, (4 * 4 + 9 * 9) * 2);
}

#[test]
fn sweep_format_and_order() {
    let plan = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        plan.path(),
        "[[family]]\nfields = [\"3\", \"5\"]\nf = [\"irreducible:2\"]\ng = [\"x^2+{c}\"]\nnmax = 3\n\n\
         [[family]]\nname = \"critical\"\nfields = [\"5\"]\nf = [\"x+4\"]\ng = [\"x^2+3*x+2\"]\nnmax = 2\n",
    )
    .unwrap();
    let path = plan.path().to_str().unwrap();
    let serial = itercomp(&["sweep", path]);
    let parallel = itercomp(&["sweep", path, "--jobs", "4"]);
    assert_eq!(code(&serial), 0);
    assert_eq!(stdout(&serial), stdout(&parallel));
    let text = stdout(&serial);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "q,f,g,n,E,e,Delta,M,m,N,A,A_decimal,class,log_d_N,log_d_M,M_over_n");
    // 3 irreducible quadratics x 3 constants over F_3, 10 x 5 over F_5, 4 n each, then the critical pair.
    assert_eq!(text.lines().count(), 1 + (3 * 3 + 10 * 5) * 4 + 3);
    // (x - 1) with g = (x - 1)^2 + 1 over F_5.
    let critical: Vec<&str> = text.lines().filter(|l| l.contains(",critical,")).collect();
    assert_eq!(critical.len(), 3);
    assert!(critical[2].starts_with("5,x + 4,x^2 + 3*x + 2,2,4,4,1,1,1,1,1/1"), "{}", critical[2]);
}

#[test]
fn empty_sweep_prints_the_header() {
    let plan = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(plan.path(), "# nothing to do\n").unwrap();
    let o = itercomp(&["sweep", plan.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "q,f,g,n,E,e,Delta,M,m,N,A,A_decimal,class,log_d_N,log_d_M,M_over_n\n");
    std::fs::write(plan.path(), "[[family]\n").unwrap();
    assert_eq!(code(&itercomp(&["sweep", plan.path().to_str().unwrap()])), 2);
}

#[test]
fn extension_field_with_explicit_modulus() {
    let o =
        itercomp(&["profile", "--field", "2^2", "--modulus", "t^2+t+1", "--f", "x+t", "--g", "x^3+x+1", "--nmax", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = itercomp(&["profile", "--field", "2^2", "--modulus", "t^2+1", "--f", "x", "--g", "x^3", "--nmax", "1"]);
    assert_eq!(code(&o), 2);
}
