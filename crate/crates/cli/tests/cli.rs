use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn glab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glab"))
        .args(args)
        .env_remove("GLAB_MAX_ELEMS")
        .output()
        .expect("spawn glab")
}

fn run(args: &[&str], fixture_name: &str) -> (i32, String, String) {
    let path = fixture(fixture_name);
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    all.insert(
        args.iter()
            .position(|a| a.starts_with("--"))
            .unwrap_or(args.len()),
        p,
    );
    let out = glab(&all);
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// (status, witness) of every row with the given id.
fn rows<'a>(tsv: &'a str, id: &str) -> Vec<(&'a str, &'a str)> {
    tsv.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').collect::<Vec<_>>())
        .filter(|c| c[0] == id)
        .map(|c| (c[2], c[3]))
        .collect()
}

fn one<'a>(tsv: &'a str, id: &str) -> (&'a str, &'a str) {
    let r = rows(tsv, id);
    assert_eq!(r.len(), 1, "{id} in\n{tsv}");
    r[0]
}

#[test]
fn tsv_has_five_columns_everywhere() {
    let (code, out, _) = run(&["verify-all"], "f3c2.glab");
    assert_eq!(code, 0, "{out}");
    let mut body = out.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(
        body.next(),
        Some("check_id\tpaper_ref\tstatus\twitness\tmicros")
    );
    for l in body {
        let cols: Vec<&str> = l.split('\t').collect();
        assert_eq!(cols.len(), 5, "{l}");
        assert!(!cols[1].is_empty(), "row without a statement: {l}");
        assert!(["pass", "fail", "skip", "info"].contains(&cols[2]), "{l}");
        assert_eq!(cols[4], "-");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for (args, f) in [
        (vec!["verify-all"], "f2s3.glab"),
        (vec!["lcp", "scan"], "f3c2.glab"),
        (vec!["checkable", "census"], "f2c3.glab"),
        (vec!["ring-info"], "upper.glab"),
    ] {
        let a = run(&args, f);
        let b = run(&args, f);
        assert_eq!(a, b, "{args:?} {f}");
    }
}

#[test]
fn timing_fills_micros() {
    let (_, out, _) = run(&["verify-all", "--timing"], "f2c2.glab");
    let row = out
        .lines()
        .find(|l| l.starts_with("duality-sum\t"))
        .unwrap();
    let micros = row.rsplit('\t').next().unwrap();
    assert!(micros.parse::<u64>().is_ok(), "{row}");
}

#[test]
fn digest_names_the_instance() {
    let src = std::fs::read_to_string(fixture("f2c2.glab")).unwrap();
    use sha2::{Digest, Sha256};
    let want = hex::encode(Sha256::digest(src.as_bytes()));
    let (_, out, _) = run(&["ring-info"], "f2c2.glab");
    assert!(
        out.contains(&format!("# instance\tsha256:{}", &want[..16])),
        "{out}"
    );
}

#[test]
fn zmod4_ring_info() {
    let (code, out, _) = run(&["ring-info"], "z4.glab");
    assert_eq!(code, 0);
    assert_eq!(one(&out, "local").1, "true");
    assert!(one(&out, "frobenius").1.starts_with("true"));
    assert_eq!(one(&out, "nilpotency-index").1, "2");
    assert_eq!(one(&out, "units").1, "2: {1, 3}");
}

#[test]
fn matrix_ring_info() {
    let (_, out, _) = run(&["ring-info"], "m2f2.glab");
    assert_eq!(one(&out, "local").1, "false");
    assert!(one(&out, "frobenius").1.starts_with("true"));
    assert!(one(&out, "units").1.starts_with("6: "));
}

#[test]
fn upper_triangular_is_not_frobenius() {
    let (code, out, _) = run(&["ring-info"], "upper.glab");
    assert_eq!(code, 0);
    assert!(one(&out, "frobenius").1.starts_with("false"));
}

#[test]
fn f3c2_idempotents() {
    let (code, out, _) = run(&["idempotents"], "f3c2.glab");
    assert_eq!(code, 0);
    assert_eq!(one(&out, "idempotent-count").1, "4");
    let primitive: Vec<&str> = rows(&out, "idempotent")
        .into_iter()
        .filter(|(_, w)| w.ends_with("primitive = true"))
        .map(|(_, w)| w.split(';').next().unwrap())
        .collect();
    // 2+g and 2+2g
    assert_eq!(primitive, ["[2,1]", "[2,2]"]);
    assert_eq!(
        one(&out, "decomposition-of-one"),
        ("pass", "s = 2: {[2,1], [2,2]}")
    );
}

#[test]
fn f2c2_has_only_trivial_idempotents() {
    let (_, out, _) = run(&["idempotents"], "f2c2.glab");
    assert_eq!(one(&out, "idempotent-count").1, "2");
    assert_eq!(one(&out, "decomposition-of-one").1, "s = 1: {[1,0]}");
}

#[test]
fn z4c3_decomposition_reduces_to_f2c3() {
    let (code, out, _) = run(&["idempotents"], "z4c3.glab");
    assert_eq!(code, 0, "{out}");
    let (status, reduced) = one(&out, "decomposition-reduces");
    assert_eq!(status, "pass");
    let (_, f2, _) = run(&["idempotents"], "f2c3.glab");
    let d = one(&f2, "decomposition-of-one").1;
    assert_eq!(d.split_once(": ").unwrap().1, reduced);
}

#[test]
fn f3c2_scan_finds_four_pairs() {
    let (code, out, _) = run(&["lcp", "scan"], "f3c2.glab");
    assert_eq!(code, 0);
    assert_eq!(rows(&out, "lcp-pair").len(), 4);
    assert_eq!(one(&out, "lcp-pair-count").1, "4");
}

#[test]
fn f2c2_scan_finds_only_trivial_pairs() {
    let (_, out, _) = run(&["lcp", "scan"], "f2c2.glab");
    let pairs = rows(&out, "lcp-pair");
    assert_eq!(pairs.len(), 2);
    assert!(pairs
        .iter()
        .all(|(_, w)| w.contains("|1|") && w.contains("|4|")));
}

#[test]
fn verify_named_pair() {
    let (code, out, _) = run(&["lcp", "verify", "--pair", "C", "D"], "f3c2.glab");
    assert_eq!(code, 0, "{out}");
    assert_eq!(one(&out, "is-lcp").0, "pass");
    assert!(one(&out, "certificate").1.starts_with("e = [2,1]"));
    assert_eq!(one(&out, "adjoint-equivalence").0, "pass");
    assert_eq!(one(&out, "lcd").1, "true");
}

#[test]
fn verify_non_pair_fails() {
    // C = D is never complementary unless both are trivial
    let (code, out, _) = run(&["lcp", "verify", "--pair", "C", "C"], "f3c2.glab");
    assert_eq!(code, 1);
    assert_eq!(one(&out, "is-lcp").0, "fail");
}

#[test]
fn residue_pair_lifts() {
    let (code, out, _) = run(&["lcp", "residue", "--pair", "C", "D"], "z4c3.glab");
    assert_eq!(code, 0, "{out}");
    assert_eq!(one(&out, "residue-lcp-forward").0, "pass");
    assert_eq!(one(&out, "residue-lcp-converse").0, "pass");
    let (s, w) = one(&out, "residue-lift");
    assert_eq!(s, "pass");
    assert!(w.contains("e' = [3,3,3]"), "{w}");
}

#[test]
fn residue_converse_counterexample_exits_one() {
    let (code, out, _) = run(&["lcp", "residue", "--pair", "C", "D"], "z4c2.glab");
    assert_eq!(code, 1);
    assert_eq!(one(&out, "residue-lcp-converse").0, "fail");
    assert_eq!(one(&out, "residue-lcp-forward").0, "pass");
}

#[test]
fn residue_needs_local_ring() {
    let (code, _, err) = run(&["lcp", "residue"], "m2f2c2.glab");
    assert_eq!(code, 2, "{err}");
}

#[test]
fn f2c2_census_is_code_checkable() {
    let (code, out, _) = run(&["checkable", "census"], "f2c2.glab");
    assert_eq!(code, 0);
    assert_eq!(one(&out, "code-checkable").1, "true");
    assert_eq!(rows(&out, "ideal").len(), 3);
}

#[test]
fn f2c3_census_table() {
    let (code, out, _) = run(&["checkable", "census"], "f2c3.glab");
    assert_eq!(code, 0);
    assert_eq!(rows(&out, "ideal").len(), 4);
}

#[test]
fn checkable_single_ideal() {
    let (code, out, _) = run(&["checkable", "ideal", "--ideal", "C"], "f2c2.glab");
    assert_eq!(code, 0, "{out}");
    assert_eq!(
        one(&out, "checkable").1,
        "span_right([1,1]) |2|; true; u = [1,1]"
    );
}

#[test]
fn verify_all_passes_on_semisimple_instances() {
    for f in ["f2c2.glab", "f3c2.glab", "f2c3.glab", "f2s3.glab"] {
        let (code, out, _) = run(&["verify-all"], f);
        assert_eq!(code, 0, "{f}\n{out}");
        assert!(
            out.contains("\t0 fail,") || out.contains(" 0 fail,"),
            "{out}"
        );
    }
}

#[test]
fn verify_all_reports_failures_with_exit_one() {
    let (code, out, _) = run(&["verify-all"], "z4c2.glab");
    assert_eq!(code, 1);
    let failed: Vec<&str> = out
        .lines()
        .filter(|l| l.split('\t').nth(2) == Some("fail"))
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert_eq!(failed, ["residue-lcp-converse"]);
}

#[test]
fn text_format_renders() {
    let (code, out, _) = run(&["lcp", "scan", "--format", "text"], "f3c2.glab");
    assert_eq!(code, 0);
    assert!(out.starts_with("glab lcp scan (instance sha256:"));
    assert!(out
        .trim_end()
        .ends_with("summary: 4 pass, 0 fail, 0 skip, 1 info"));
}

#[test]
fn scale_error_exits_three() {
    let (code, out, err) = run(&["verify-all"], "s4.glab");
    assert_eq!(code, 3);
    assert!(out.is_empty());
    assert!(err.contains("scale"), "{err}");
}

#[test]
fn bound_flag_overrides_file() {
    // the census bound (256) is what stops S4 even with a generous op bound
    let (code, _, err) = run(&["checkable", "census", "--bound", "100000000"], "s4.glab");
    assert_eq!(code, 3, "{err}");
    let (code, _, err) = run(&["idempotents", "--bound", "4"], "f2c3.glab");
    assert_eq!(code, 3, "{err}");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    for (args, f) in [
        (vec!["verify-all"], "bad_key.glab"),
        (vec!["verify-all"], "corrupt.glab"),
        (vec!["verify-all"], "nonlatin.glab"),
        (vec!["lcp", "scan"], "z4.glab"),
        (vec!["checkable", "ideal"], "f2c2.glab"),
        (vec!["checkable", "ideal", "--ideal", "Nope"], "f2c2.glab"),
        (vec!["lcp", "verify", "--pair", "C", "Nope"], "f3c2.glab"),
    ] {
        let (code, out, err) = run(&args, f);
        assert_eq!(code, 2, "{args:?} {f}: {out}{err}");
        assert!(err.starts_with("glab: "), "{err}");
    }
    assert_eq!(glab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        glab(&["verify-all", "/nonexistent/x.glab"]).status.code(),
        Some(2)
    );
}

#[test]
fn corrupted_table_names_a_triple() {
    let (_, _, err) = run(&["verify-all"], "corrupt.glab");
    assert!(err.contains("not associative: ("), "{err}");
}

#[test]
fn parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.glab");
    std::fs::write(
        &p,
        "ring = zmod(2)\ngroup = cyclic(2)\nelem e = [1, 1]\nideal C = span_right(f)\n",
    )
    .unwrap();
    let out = glab(&["verify-all", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn hard_cap_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_glab"))
        .args(["ring-info", fixture("f2c2.glab").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_glab"))
        .args([
            "verify-all",
            fixture("f2c3.glab").to_str().unwrap(),
            "--bound",
            "100000",
        ])
        .env("GLAB_MAX_ELEMS", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn noncommutative_coefficients_flag_failures() {
    let (code, out, _) = run(&["verify-all"], "m2f2c2.glab");
    assert_eq!(code, 1);
    assert_eq!(one(&out, "idempotent-dual-formula").0, "fail");
    assert_eq!(one(&out, "checkable-iff-ann-principal").0, "pass");
    assert_eq!(one(&out, "residue-lcp-forward").0, "skip");
}
