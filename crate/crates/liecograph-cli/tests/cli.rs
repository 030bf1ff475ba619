use std::path::PathBuf;
use std::process::{Command, Output};

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liecograph"))
        .args(args)
        .current_dir(crate_dir())
        .env_remove("LIECOGRAPH_CAP_OVERRIDE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(crate_dir().join("tests/golden").join(name)).unwrap()
}

fn table(text: &str) -> Vec<(i32, usize)> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let (d, n) = l.split_once('\t').unwrap();
            (d.parse().unwrap(), n.parse().unwrap())
        })
        .collect()
}

#[test]
fn homotopy_of_spheres_and_cp2() {
    let s3 = stdout(&["pi", "examples/s3.alg", "--window", "2..8"]);
    assert_eq!(s3, golden("pi_s3.txt"));
    let nonzero = |t: &str| table(t).into_iter().filter(|(_, n)| *n > 0).collect::<Vec<_>>();
    assert_eq!(nonzero(&s3), [(3, 1)]);
    let cp2 = stdout(&["pi", "examples/cp2.alg", "--oracle"]);
    assert_eq!(cp2, golden("pi_cp2.txt"));
    assert_eq!(nonzero(&cp2), [(2, 1), (5, 1)]);
    // the Sullivan model and the cohomology ring see the same homotopy
    let s2 = nonzero(&stdout(&["pi", "examples/s2.alg", "--window", "2..6"]));
    assert_eq!(s2, [(2, 1), (3, 1)]);
    assert_eq!(nonzero(&stdout(&["pi", "examples/sullivan_s2.alg", "--window", "2..6", "--oracle"])), s2);
}

#[test]
fn harrison_homology_is_homotopy_shifted() {
    let h = table(&stdout(&["harrison", "examples/cp2.alg", "--window", "1..6"]));
    let pi = table(&stdout(&["pi", "examples/cp2.alg", "--window", "2..7"]));
    assert_eq!(h.iter().map(|(d, n)| (d + 1, *n)).collect::<Vec<_>>(), pi);
}

#[test]
fn term_verbs() {
    assert_eq!(stdout(&["pair", "G[3;1->2,2->3](a,a,b)", "[[a,b],a]"]), "-1\n");
    assert_eq!(stdout(&["iszero", "a|b + b|a"]), "zero\n");
    assert!(stdout(&["iszero", "a|b"]).starts_with("nonzero\t"));
    assert_eq!(stdout(&["cobracket", "a|b|c"]), golden("cobracket_abc.txt"));
    // the antisymmetry relation for two even labels
    assert_eq!(stdout(&["normalize", "a|b + b|a"]), "0\n");
    assert_eq!(stdout(&["lie-normalize", "[a,b] + [b,a]"]), "0\n");
    let graphs = stdout(&["enumerate", "graphs", "3"]);
    assert_eq!(graphs.lines().count(), 12);
    assert_eq!(stdout(&["enumerate", "bar", "a,b,c"]).lines().count(), 2);
    assert_eq!(stdout(&["enumerate", "lie", "a,b,c,d"]).lines().count(), 6);
}

#[test]
fn declared_generators_change_signs() {
    // even labels give an antisymmetric bar word, odd labels a symmetric one
    let even = ["--gen", "a:2", "--gen", "b:2"];
    let odd = ["--gen", "a:1", "--gen", "b:1"];
    let zero = |expr: &str, gens: &[&str]| stdout(&[&["iszero", expr][..], gens].concat()) == "zero\n";
    assert!(zero("a|b + b|a", &even));
    assert!(!zero("a|b - b|a", &even));
    assert!(zero("a|b - b|a", &odd));
    assert!(!zero("a|b + b|a", &odd));
}

#[test]
fn spectral_sequence_and_duality() {
    assert_eq!(stdout(&["ss", "examples/sullivan_s2.alg", "--pages", "2"]), golden("ss_sullivan_s2.txt"));
    assert_eq!(stdout(&["dual-check", "examples/cp2.alg", "examples/cp2.coalg"]), golden("dual_cp2.txt"));
    assert!(stdout(&["dual-check", "examples/s2.alg", "examples/s2.coalg"]).ends_with("pass\n"));
}

#[test]
fn exit_codes() {
    let cap = run(&["pi", "examples/s3.alg", "--window", "2..40"]);
    assert_eq!(cap.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&cap.stderr).starts_with("error[cap]"));
    for bad in [
        &["pair", "G[2;1->2](a)", "[a,b]"][..],
        &["pair", "a|q", "[a,b]", "--gen", "a:2", "--gen", "b:2"],
        &["normalize", "a|"],
        &["pi", "missing.alg"],
        &["pi", "examples/s2.coalg"],
        &["frobnicate"],
    ] {
        let out = run(bad);
        assert_eq!(out.status.code(), Some(1), "{bad:?}");
        assert!(out.stdout.is_empty(), "{bad:?}");
    }
}

#[test]
fn cap_override_precedence() {
    let with_env = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_liecograph"))
            .args(args)
            .current_dir(crate_dir())
            .env("LIECOGRAPH_CAP_OVERRIDE", "3,5")
            .output()
            .unwrap();
        String::from_utf8(out.stdout).unwrap()
    };
    assert!(with_env(&["pi", "examples/s2.alg"]).starts_with("# caps weight 3 degree 5\n"));
    assert!(with_env(&["pi", "examples/s2.alg", "--cap-degree", "6"]).starts_with("# caps weight 3 degree 6\n"));
}

#[test]
fn output_is_deterministic() {
    for args in [&["ss", "examples/cp2.alg"][..], &["cobracket", "G[4;1->2,1->3,1->4](a,b,c,d)"]] {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.stdout, second.stdout);
        assert!(first.status.success());
    }
}
