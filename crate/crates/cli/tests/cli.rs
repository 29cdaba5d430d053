use std::path::Path;
use std::process::{Command, Output};

use fts_core::brown::{hat, sigma, DIM};
use fts_core::exact::{Field, Mat, PrimeField, RationalField, Rng};
use fts_core::format;
use fts_core::groups::gen_isometry;

fn fts(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fts")).args(args).output().expect("spawn fts")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn default_verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let out = fts(&["verify", "--out", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text, stdout(&out));
    assert!(text.starts_with("# verify mode=rational seed=0\n"));
    assert!(!text.contains("FAIL"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("PASS [")));
}

#[test]
fn prime_seven_verify_passes_and_is_deterministic() {
    let a = fts(&["--mode", "prime:7", "verify"]);
    let b = fts(&["--mode", "prime:7", "verify"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_modes_are_usage_errors() {
    for m in ["prime:2", "prime:9", "prime:x", "complex"] {
        let out = fts(&["--mode", m, "verify", "--suite", "identities"]);
        assert_eq!(code(&out), 2, "{m}");
    }
    assert_eq!(code(&fts(&["verify", "--suite", "nonsense"])), 2);
    assert_eq!(code(&fts(&[])), 2);
}

#[test]
fn seeded_subset_is_repeatable() {
    let a = fts(&["--seed", "5", "verify", "--suite", "identities,normalization-gap"]);
    let b = fts(&["--seed", "5", "verify", "--suite", "identities,normalization-gap"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("t(1,1,1) = c (e - f)"), "{text}");
    assert!(text.contains("-6"), "{text}");
}

#[test]
fn lie_dim_prints_dimension_and_expected() {
    for (target, dim) in [("aut_oct", 14), ("isom_norm", 78), ("inv_fts", 133)] {
        let out = fts(&["--mode", "prime:1000003", "lie-dim", target]);
        assert_eq!(code(&out), 0, "{target}");
        let text = stdout(&out);
        assert!(text.contains(&format!("dimension {dim}\n")), "{text}");
        assert!(text.contains(&format!("expected {dim}\n")), "{text}");
    }
}

#[test]
fn lie_dim_needs_prime_mode_and_known_target() {
    assert_eq!(code(&fts(&["lie-dim", "aut_oct"])), 2);
    assert_eq!(code(&fts(&["--mode", "prime:1000003", "lie-dim", "aut_nothing"])), 2);
}

#[test]
fn check_map_identity_accepts_everything() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "id.ftsv", &format::matrix_to_string(&Mat::identity(RationalField, DIM)));
    let out = fts(&["check-map", &file]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.contains("# reconstructed rho\nFTSV1 rational 27\n"), "{text}");
}

#[test]
fn check_map_round_trips_hat() {
    let f = RationalField;
    let mut rng = Rng::new(11);
    let rho = gen_isometry(f, &mut rng).unwrap();
    let m = hat(&rho, &mut rng).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "hat.ftsv", &format::matrix_to_string(&m));
    let out = fts(&["check-map", &file]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in ["is_invariance", "is_inv1", "is_automorphism", "reconstruction hat(rho)"] {
        assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains(name)), "{name}: {text}");
    }
    let printed = text.split("# reconstructed rho\n").nth(1).expect("rho printed");
    assert_eq!(format::parse_matrix(f, printed).unwrap(), rho);
}

#[test]
fn check_map_rejects_double_identity() {
    let f = RationalField;
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "two.ftsv", &format::matrix_to_string(&Mat::identity(f, DIM).scale(&f.int(2))));
    let out = fts(&["check-map", &file]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(!text.contains("PASS"), "{text}");
    assert!(!text.contains("reconstructed"));
}

#[test]
fn check_map_sigma_is_automorphism_only() {
    let f = PrimeField::new(1_000_003).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "sigma.ftsv", &format::matrix_to_string(&sigma(f, -1)));
    let out = fts(&["check-map", &file]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("PASS [automorphism] is_automorphism: accept"), "{text}");
    assert!(text.contains("PASS [automorphism] pi: -1"), "{text}");
    assert!(text.contains("FAIL [invariance-group] is_invariance: reject (b is not preserved)"), "{text}");
}

#[test]
fn check_map_albert_isometry() {
    let f = RationalField;
    let mut rng = Rng::new(2);
    let rho = gen_isometry(f, &mut rng).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "rho.ftsv", &format::matrix_to_string(&rho));
    assert_eq!(code(&fts(&["check-map", &good])), 0);
    let bad = write(dir.path(), "bad.ftsv", &format::matrix_to_string(&rho.scale(&f.int(3))));
    assert_eq!(code(&fts(&["check-map", &bad])), 1);
}

#[test]
fn check_map_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let garbled = write(dir.path(), "g.ftsv", "FTSV1 rational 2\n1 2\n3 x\n");
    assert_eq!(code(&fts(&["check-map", &garbled])), 2);
    let no_header = write(dir.path(), "h.ftsv", "1 0\n0 1\n");
    assert_eq!(code(&fts(&["check-map", &no_header])), 2);
    let missing = dir.path().join("missing.ftsv");
    assert_eq!(code(&fts(&["check-map", missing.to_str().unwrap()])), 2);
    let id = write(dir.path(), "id.ftsv", &format::matrix_to_string(&Mat::identity(RationalField, DIM)));
    assert_eq!(code(&fts(&["--mode", "prime:7", "check-map", &id])), 2);
    let small = write(dir.path(), "s.ftsv", "FTSV1 rational 2\n1 0\n0 1\n");
    assert_eq!(code(&fts(&["check-map", &small])), 1);
}

#[test]
fn isotope_demo_identity_composite() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("demo");
    let out = fts(&["isotope-demo", "--factors", "none", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("isotope equals the base algebra"), "{text}");
    assert!(text.contains("u moves the unit: false"), "{text}");
    for name in ["phi.ftsv", "u.ftsv", "u_hat.ftsv", "isotope.ftsv", "report.txt"] {
        assert!(out_dir.join(name).is_file(), "{name}");
    }
    let u = format::parse_element(RationalField, &std::fs::read_to_string(out_dir.join("u.ftsv")).unwrap()).unwrap();
    assert_eq!(u.len(), DIM);
}

#[test]
fn isotope_demo_translation_moves_unit() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("demo");
    let out = fts(&["isotope-demo", "--factors", "translation", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("u moves the unit: true"));
    let s = std::fs::read_to_string(out_dir.join("isotope.ftsv")).unwrap();
    format::parse_structure(RationalField, &s).unwrap();
}

#[test]
fn isotope_demo_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let ra = fts(&["--seed", "3", "isotope-demo", "--out", a.to_str().unwrap()]);
    let rb = fts(&["--seed", "3", "isotope-demo", "--out", b.to_str().unwrap()]);
    assert_eq!(code(&ra), 0);
    let body = |o: &Output| stdout(o).lines().filter(|l| !l.starts_with("# artifacts")).collect::<Vec<_>>().join("\n");
    assert_eq!(body(&ra), body(&rb));
    for name in ["phi.ftsv", "u.ftsv", "u_hat.ftsv", "isotope.ftsv", "report.txt"] {
        assert_eq!(std::fs::read(a.join(name)).unwrap(), std::fs::read(b.join(name)).unwrap(), "{name}");
    }
}

#[test]
fn isotope_demo_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "plain", "not a directory");
    let under_file = Path::new(&file).join("demo");
    assert_eq!(code(&fts(&["isotope-demo", "--out", under_file.to_str().unwrap()])), 2);
    let ok_dir = dir.path().join("p");
    assert_eq!(code(&fts(&["--mode", "prime:7", "isotope-demo", "--out", ok_dir.to_str().unwrap()])), 2);
    assert_eq!(code(&fts(&["isotope-demo", "--factors", "rotation"])), 2);
}
