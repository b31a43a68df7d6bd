//! Command-level and end-to-end tests: report contents, JSON schema
//! conformance, cap and field precedence, exit codes, and error wording.

use std::path::PathBuf;
use std::process::Command;

use deltak_cli::{
    cmd_growth, cmd_resolve, cmd_yoneda, parse_algebra, AlgebraFile, CliError,
    ComputeOpts, ReportDocument, EXIT_HORIZON, EXIT_OK, EXIT_PARSE,
    EXIT_VALIDATION,
};
use deltak_cli::report::FieldReport;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn fixture(name: &str) -> AlgebraFile {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_algebra(&text).unwrap()
}

fn plain_opts() -> ComputeOpts {
    ComputeOpts { cap: None, field_env: None }
}

/// Flattens one step's generator table to `(vertex, degree, multiplicity)`.
fn step_entries(doc: &ReportDocument, step: usize) -> Vec<(String, usize, usize)> {
    doc.resolution.as_ref().unwrap().steps[step]
        .generators
        .iter()
        .map(|g| (g.vertex.clone(), g.degree, g.multiplicity))
        .collect()
}

#[test]
fn resolve_reports_the_zigzag_member() {
    let doc = cmd_resolve(&fixture("a3.alg"), 6, &plain_opts()).unwrap();
    assert_eq!(doc.command, "resolve");
    assert_eq!(doc.field, FieldReport::Rational);

    let algebra = doc.algebra.as_ref().unwrap();
    assert_eq!(algebra.vertices, ["v1", "v2", "v3"]);
    assert_eq!(algebra.arrows.len(), 4);
    assert_eq!(algebra.relations.len(), 3);
    assert_eq!(&algebra.hilbert[..4], [3, 4, 3, 0]);
    assert_eq!(algebra.first_zero, Some(3));
    assert_eq!(algebra.total_dimension, Some(10));

    // The multiplicity tables, step by step.  Every step is generated in a
    // single degree; the degrees are exactly the degree map.
    let expected: [(&[usize; 3], usize); 7] = [
        (&[1, 1, 1], 0),
        (&[1, 2, 1], 1),
        (&[1, 1, 1], 2),
        (&[1, 1, 1], 4),
        (&[1, 2, 1], 5),
        (&[1, 1, 1], 6),
        (&[1, 1, 1], 8),
    ];
    for (step, (mults, degree)) in expected.iter().enumerate() {
        let want: Vec<(String, usize, usize)> = ["v1", "v2", "v3"]
            .iter()
            .zip(mults.iter())
            .map(|(v, m)| (v.to_string(), *degree, *m))
            .collect();
        assert_eq!(step_entries(&doc, step), want, "step {step}");
    }

    let delta = doc.delta.as_ref().unwrap();
    assert_eq!(
        delta.values,
        [0, 1, 2, 4, 5, 6, 8].map(Some).to_vec()
    );
    assert!(delta.resolution_determined);
    let good = delta.good.as_ref().unwrap();
    assert!(good.is_good);
    assert_eq!(good.n0, 3);
    assert!(good.violations.is_empty());
    assert_eq!(delta.classification, "delta-Koszul");

    assert!(
        doc.notes.iter().any(|n| n.contains("passed")),
        "notes should record the Euler check: {:?}",
        doc.notes
    );
}

#[test]
fn resolve_flags_algebras_without_a_vanishing_degree() {
    // One loop, no relations reachable below the cap: relation x^4 with a
    // cap that hides the vanishing degree.
    let text = "
        options { cap 3; }
        quiver { vertices v; arrow x : v -> v; }
        relations { x^4; }
    ";
    let file = parse_algebra(text).unwrap();
    match cmd_resolve(&file, 1, &plain_opts()) {
        Ok(doc) => {
            assert!(doc
                .notes
                .iter()
                .any(|n| n.contains("infinite-dimensional")));
        }
        // Equally acceptable: the horizon machinery refuses to certify.
        Err(CliError::Horizon(_)) => {}
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn yoneda_reports_ext_rows_and_generator_degrees() {
    let doc = cmd_yoneda(&fixture("a3.alg"), Some(7), &plain_opts()).unwrap();
    let ext = doc.ext.as_ref().unwrap();

    let dims: Vec<usize> = ext.rows.iter().map(|r| r.dim).collect();
    assert_eq!(dims, [3, 4, 3, 3, 4, 3, 3, 4]);

    let decomposable: Vec<usize> =
        ext.rows.iter().map(|r| r.decomposable_dim).collect();
    assert_eq!(decomposable, [0, 0, 3, 0, 4, 3, 3, 4]);

    // Row 0 carries the unit, not generators; fresh generators appear in
    // cohomological degrees 1 and 3 only.
    let fresh: Vec<bool> = ext.rows.iter().map(|r| r.new_generators).collect();
    assert_eq!(
        fresh,
        [false, true, false, true, false, false, false, false]
    );

    assert_eq!(ext.minimal_generator_degrees, [0, 1, 3]);

    // Every Ext group sits in a single internal degree, the negative of
    // the resolution degree map.
    let delta = [0usize, 1, 2, 4, 5, 6, 8, 9];
    for (n, row) in ext.rows.iter().enumerate() {
        assert_eq!(row.n, n);
        assert_eq!(row.internal_degrees.len(), 1, "row {n}");
        assert_eq!(row.internal_degrees[0].degree, -(delta[n] as i64));
        assert_eq!(row.internal_degrees[0].dim, row.dim);
    }

    assert!(doc.notes.iter().any(|n| n.contains("degree 0")));
}

#[test]
fn yoneda_defaults_scale_with_the_quiver() {
    // Default n_max = 2 * vertices + 1 = 3 for one vertex.
    let doc = cmd_yoneda(&fixture("kx3.alg"), None, &plain_opts()).unwrap();
    let ext = doc.ext.as_ref().unwrap();
    assert_eq!(ext.rows.len(), 4);
    assert_eq!(ext.minimal_generator_degrees, [0, 1, 2]);
}

#[test]
fn growth_rows_track_the_parameter() {
    let doc = cmd_growth(3, 5, false, &plain_opts()).unwrap();
    let growth = doc.growth.as_ref().unwrap();
    assert_eq!(growth.rows.len(), 3);
    for row in &growth.rows {
        assert_eq!(row.minimal_generator_degrees, [0, 1, row.n0]);
        assert_eq!(row.top_generator_degree, row.n0);
    }
    assert!(doc.notes.iter().any(|n| n.contains("no uniform bound")));

    // Inverted range: a successful, empty report.
    let doc = cmd_growth(5, 4, false, &plain_opts()).unwrap();
    assert!(doc.growth.as_ref().unwrap().rows.is_empty());

    // A parameter below the family start is rejected.
    let err = cmd_growth(2, 4, false, &plain_opts()).unwrap_err();
    assert_eq!(err.exit_code(), EXIT_VALIDATION);

    // Desk-scale guard, overridable.
    let err = cmd_growth(3, 7, false, &plain_opts()).unwrap_err();
    assert!(err.to_string().contains("--allow-large"), "{err}");
    let doc = cmd_growth(7, 7, true, &plain_opts()).unwrap();
    assert_eq!(doc.growth.as_ref().unwrap().rows[0].top_generator_degree, 7);
}

#[test]
fn cap_precedence_is_flag_then_file_then_default() {
    // Flag beats the file header.
    let text = "
        options { cap 4; }
        quiver { vertices v; arrow x : v -> v; }
        relations { x^3; }
    ";
    let file = parse_algebra(text).unwrap();
    let opts = ComputeOpts { cap: Some(9), field_env: None };
    let doc = cmd_resolve(&file, 2, &opts).unwrap();
    assert_eq!(doc.algebra.as_ref().unwrap().cap, 9);

    // File header beats the built-in default (steps + 3 = 5).
    let doc = cmd_resolve(&file, 2, &plain_opts()).unwrap();
    assert_eq!(doc.algebra.as_ref().unwrap().cap, 4);

    // No flag, no header: steps + 3.
    let doc = cmd_resolve(&fixture("kx3.alg"), 2, &plain_opts()).unwrap();
    assert_eq!(doc.algebra.as_ref().unwrap().cap, 5);
}

#[test]
fn horizon_errors_suggest_a_workable_cap() {
    let opts = ComputeOpts { cap: Some(4), field_env: None };
    let err = cmd_resolve(&fixture("a3.alg"), 6, &opts).unwrap_err();
    assert_eq!(err.exit_code(), EXIT_HORIZON);
    let msg = err.to_string();
    assert!(msg.contains("step 4"), "names the failing step: {msg}");
    assert!(msg.contains('6'), "carries a suggested cap: {msg}");

    // Following the suggestion makes strict progress: the next failure,
    // if any, is at a later step.
    let opts = ComputeOpts { cap: Some(6), field_env: None };
    match cmd_resolve(&fixture("a3.alg"), 6, &opts) {
        Ok(_) => {}
        Err(e) => {
            let msg = e.to_string();
            assert!(!msg.contains("step 4"), "no progress: {msg}");
        }
    }
}

#[test]
fn field_environment_reaches_the_computation() {
    let opts = ComputeOpts { cap: None, field_env: Some("prime:7".into()) };
    let doc = cmd_resolve(&fixture("kx2.alg"), 3, &opts).unwrap();
    assert_eq!(doc.field, FieldReport::Prime { p: 7 });

    let opts = ComputeOpts { cap: None, field_env: Some("prime".into()) };
    let doc = cmd_resolve(&fixture("kx2.alg"), 3, &opts).unwrap();
    assert_eq!(doc.field, FieldReport::Prime { p: 32003 });

    // Junk values fail with a validation error, not a silent fallback.
    let opts = ComputeOpts { cap: None, field_env: Some("binary64".into()) };
    let err = cmd_resolve(&fixture("kx2.alg"), 3, &opts).unwrap_err();
    assert_eq!(err.exit_code(), EXIT_VALIDATION);

    // The witness family computes identically over both fields.
    let rational = cmd_resolve(&fixture("a3.alg"), 6, &plain_opts()).unwrap();
    let opts = ComputeOpts { cap: None, field_env: Some("prime".into()) };
    let modular = cmd_resolve(&fixture("a3.alg"), 6, &opts).unwrap();
    assert_eq!(rational.resolution, modular.resolution);
    assert_eq!(rational.delta, modular.delta);
}

#[test]
fn reports_round_trip_through_serde() {
    let docs = [
        cmd_resolve(&fixture("a3.alg"), 6, &plain_opts()).unwrap(),
        cmd_yoneda(&fixture("kx3.alg"), Some(4), &plain_opts()).unwrap(),
        cmd_growth(3, 4, false, &plain_opts()).unwrap(),
    ];
    for doc in docs {
        let json = doc.to_json();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }
    // Unknown fields are rejected, so stale readers fail loudly.
    let json = cmd_growth(3, 3, false, &plain_opts()).unwrap().to_json();
    let spiked = json.replacen('{', "{\n  \"surprise\": 1,", 1);
    assert!(serde_json::from_str::<ReportDocument>(&spiked).is_err());
}

#[test]
fn reports_validate_against_the_shipped_schema() {
    let schema_text = std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("schemas")
            .join("report.schema.json"),
    )
    .unwrap();
    let schema: serde_json::Value = serde_json::from_str(&schema_text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();

    let prime_opts = ComputeOpts { cap: None, field_env: Some("prime:7".into()) };
    let docs = [
        cmd_resolve(&fixture("a3.alg"), 6, &plain_opts()).unwrap(),
        // Two steps is as far as an uncertifiable (infinite-dimensional)
        // algebra can go; the report still carries a mixed degree map.
        cmd_resolve(&fixture("two_loop.alg"), 2, &plain_opts()).unwrap(),
        cmd_resolve(&fixture("kx2.alg"), 3, &prime_opts).unwrap(),
        cmd_yoneda(&fixture("a3.alg"), Some(7), &plain_opts()).unwrap(),
        cmd_yoneda(&fixture("kx3.alg"), None, &plain_opts()).unwrap(),
        cmd_growth(3, 5, false, &plain_opts()).unwrap(),
        cmd_growth(5, 4, false, &plain_opts()).unwrap(),
    ];
    for doc in docs {
        let value: serde_json::Value =
            serde_json::from_str(&doc.to_json()).unwrap();
        let errors: Vec<String> = validator
            .iter_errors(&value)
            .map(|e| format!("{}: {e}", e.instance_path))
            .collect();
        assert!(
            errors.is_empty(),
            "`{}` report violates the schema:\n{}",
            doc.command,
            errors.join("\n")
        );
    }

    // The schema has teeth: a document with the wrong tool name fails.
    let mut doc = cmd_growth(3, 3, false, &plain_opts()).unwrap();
    doc.tool = "impostor".into();
    let value: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
    assert!(validator.iter_errors(&value).next().is_some());
}

// --- end-to-end binary invocations ---------------------------------------

fn deltak() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_deltak"));
    cmd.env_remove("DELTAK_FIELD");
    cmd
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn binary_resolve_succeeds_with_valid_json() {
    let (code, stdout, stderr) = run(deltak()
        .arg("resolve")
        .arg(fixture_path("a3.alg"))
        .args(["--steps", "6", "--format", "json"]));
    assert_eq!(code, EXIT_OK, "stderr: {stderr}");
    let doc: ReportDocument = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc.command, "resolve");
    assert_eq!(
        doc.delta.unwrap().values,
        [0, 1, 2, 4, 5, 6, 8].map(Some).to_vec()
    );
}

#[test]
fn binary_reports_parse_errors_with_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.alg");
    std::fs::write(&path, "quiver {\n  vertices v1, v2\n}\n").unwrap();
    let (code, _, stderr) = run(deltak().arg("resolve").arg(&path));
    assert_eq!(code, EXIT_PARSE);
    assert!(stderr.contains("line 3"), "stderr: {stderr}");
    assert!(stderr.contains("column 1"), "stderr: {stderr}");
}

#[test]
fn binary_reports_validation_errors() {
    // Growth beyond the desk-scale guard.
    let (code, _, stderr) =
        run(deltak().args(["growth", "--n0-range", "7..8"]));
    assert_eq!(code, EXIT_VALIDATION);
    assert!(stderr.contains("--allow-large"), "stderr: {stderr}");

    // Family parameter below the start of the family.
    let (code, _, stderr) = run(deltak().args(["family", "--n0", "2"]));
    assert_eq!(code, EXIT_VALIDATION);
    assert!(stderr.contains("--d-koszul"), "stderr: {stderr}");

    // A presentation whose relations are not homogeneous-parallel.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.alg");
    std::fs::write(
        &path,
        "quiver { vertices v; arrow x : v -> v; } relations { x^2 + x^3; }\n",
    )
    .unwrap();
    let (code, _, stderr) = run(deltak().arg("resolve").arg(&path));
    assert_eq!(code, EXIT_VALIDATION, "stderr: {stderr}");
}

#[test]
fn binary_reports_horizon_errors() {
    let (code, _, stderr) = run(deltak()
        .arg("resolve")
        .arg(fixture_path("a3.alg"))
        .args(["--steps", "6", "--cap", "4"]));
    assert_eq!(code, EXIT_HORIZON);
    assert!(stderr.contains("cap"), "stderr: {stderr}");

    let (code, _, stderr) = run(deltak()
        .arg("yoneda")
        .arg(fixture_path("kx2.alg"))
        .args(["--n-max", "9", "--cap", "5"]));
    assert_eq!(code, EXIT_HORIZON, "stderr: {stderr}");
}

#[test]
fn binary_family_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a5.alg");
    let (code, _, stderr) = run(deltak()
        .args(["family", "--n0", "5", "--out"])
        .arg(&path));
    assert_eq!(code, EXIT_OK, "stderr: {stderr}");

    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = parse_algebra(&text).unwrap();
    assert_eq!(parsed.vertices.len(), 5);
    assert_eq!(parsed.arrows.len(), 8);
    assert_eq!(parsed.relations.len(), 9);

    // The emitted file is immediately consumable by the other commands.
    let (code, stdout, stderr) = run(deltak()
        .arg("resolve")
        .arg(&path)
        .args(["--steps", "3", "--format", "json"]));
    assert_eq!(code, EXIT_OK, "stderr: {stderr}");
    let doc: ReportDocument = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc.algebra.unwrap().hilbert[..3], [5, 8, 5]);
}

#[test]
fn binary_honors_the_field_environment() {
    let (code, stdout, stderr) = run(deltak()
        .arg("resolve")
        .arg(fixture_path("kx2.alg"))
        .args(["--steps", "3", "--format", "json"])
        .env("DELTAK_FIELD", "prime:101"));
    assert_eq!(code, EXIT_OK, "stderr: {stderr}");
    let doc: ReportDocument = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc.field, FieldReport::Prime { p: 101 });

    let (code, _, stderr) = run(deltak()
        .arg("resolve")
        .arg(fixture_path("kx2.alg"))
        .env("DELTAK_FIELD", "binary64"));
    assert_eq!(code, EXIT_VALIDATION);
    assert!(stderr.contains("DELTAK_FIELD") || stderr.contains("binary64"), "stderr: {stderr}");
}

#[test]
fn binary_text_reports_are_human_readable() {
    let (code, stdout, _) = run(deltak()
        .arg("resolve")
        .arg(fixture_path("a3.alg"))
        .args(["--steps", "6"]));
    assert_eq!(code, EXIT_OK);
    for needle in [
        "field: the rational numbers",
        "degree map",
        "delta-Koszul",
        "Euler characteristic",
    ] {
        assert!(stdout.contains(needle), "missing {needle:?} in:\n{stdout}");
    }

    let (code, stdout, _) = run(deltak()
        .arg("yoneda")
        .arg(fixture_path("a3.alg"))
        .args(["--n-max", "7"]));
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("minimal generator degrees: {0, 1, 3}"), "{stdout}");
}

#[test]
fn binary_rejects_missing_files_without_panicking() {
    let (code, _, stderr) = run(deltak().args(["resolve", "/nonexistent.alg"]));
    assert_eq!(code, 1, "stderr: {stderr}");
    assert!(!stderr.contains("panicked"), "stderr: {stderr}");
}
