//! Round-trip and error-position tests for the presentation language.
//!
//! The canonical printer and the parser must be mutually inverse on the
//! parsed representation: `parse(print(f)) == f` for every file `f` the
//! parser accepts, and printing is idempotent.  Fixture files are pinned
//! to the `family` generator so they cannot drift.

use std::fs;
use std::path::PathBuf;

use deltak_cli::{
    cmd_family, effective_field, parse_algebra, print_algebra, AlgebraFile,
    CliError, FamilyKind, FieldSpec,
};
use deltak_cli::render_relation;
use deltak_core::Field;

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}

const FIXTURES: [&str; 4] = ["a3.alg", "kx2.alg", "kx3.alg", "two_loop.alg"];

#[test]
fn fixtures_parse_and_round_trip() {
    for name in FIXTURES {
        let text = fixture(name);
        let parsed = parse_algebra(&text)
            .unwrap_or_else(|e| panic!("{name} does not parse: {e}"));
        let printed = print_algebra(&parsed);
        let reparsed = parse_algebra(&printed)
            .unwrap_or_else(|e| panic!("printed {name} does not re-parse: {e}"));
        assert_eq!(reparsed, parsed, "{name} changed across print/parse");
        // The canonical form is a fixed point of the printer.
        assert_eq!(print_algebra(&reparsed), printed, "{name} printer not idempotent");
    }
}

#[test]
fn fixtures_stay_in_sync_with_the_family_generator() {
    for (kind, name) in [
        (FamilyKind::Zigzag(3), "a3.alg"),
        (FamilyKind::Koszul, "kx2.alg"),
        (FamilyKind::DKoszul(3), "kx3.alg"),
    ] {
        let generated = cmd_family(kind).unwrap();
        assert_eq!(
            fixture(name),
            generated,
            "{name} is stale; regenerate it with the family command"
        );
    }
}

#[test]
fn fixtures_materialize_with_expected_shape() {
    let expected = [
        ("a3.alg", 3, 4, 3),
        ("kx2.alg", 1, 1, 1),
        ("kx3.alg", 1, 1, 1),
        ("two_loop.alg", 1, 2, 2),
    ];
    for (name, vertices, arrows, relations) in expected {
        let parsed = parse_algebra(&fixture(name)).unwrap();
        let (quiver, rels) = parsed.materialize(Field::Rationals).unwrap();
        assert_eq!(quiver.n_vertices(), vertices, "{name} vertex count");
        assert_eq!(quiver.arrows().len(), arrows, "{name} arrow count");
        assert_eq!(rels.len(), relations, "{name} relation count");
    }
}

#[test]
fn both_composition_conventions_name_the_same_relations() {
    // Same presentation written twice: function-style (`a2*a1` = a1 acts
    // first) and left-to-right under `compose left` (`a1*a2` = a1 acts
    // first).  The materialized relations must be identical.
    let function_style = "
        quiver {
          vertices v1, v2, v3;
          arrow a1 : v1 -> v2;
          arrow a2 : v2 -> v3;
        }
        relations {
          a2*a1;
        }
    ";
    let left_style = "
        options { compose left; }
        quiver {
          vertices v1, v2, v3;
          arrow a1 : v1 -> v2;
          arrow a2 : v2 -> v3;
        }
        relations {
          a1*a2;
        }
    ";
    let f = parse_algebra(function_style).unwrap();
    let g = parse_algebra(left_style).unwrap();
    assert!(!f.compose_left);
    assert!(g.compose_left);
    assert_eq!(f.relations, g.relations, "stored order should be convention-free");

    let (qf, rf) = f.materialize(Field::Rationals).unwrap();
    let (_, rg) = g.materialize(Field::Rationals).unwrap();
    assert_eq!(rf, rg);
    assert_eq!(render_relation(Field::Rationals, &qf, &rf[0]), "a2*a1");

    // And each file reprints in its own convention.
    assert!(print_algebra(&f).contains("a2*a1"));
    assert!(print_algebra(&g).contains("compose left"));
    assert!(print_algebra(&g).contains("a1*a2"));
}

#[test]
fn coefficients_signs_and_powers_round_trip() {
    let text = "
        field prime 7;
        options { cap 9; }
        quiver {
          vertices v;
          arrow x : v -> v;
          arrow y : v -> v;
        }
        relations {
          2*x^2 - 3*y*x + x*y;
          y^3;
        }
    ";
    let parsed = parse_algebra(text).unwrap();
    assert_eq!(parsed.field, Some(FieldSpec::Prime(Some(7))));
    assert_eq!(parsed.cap, Some(9));
    assert_eq!(
        parsed.relations[0],
        vec![
            (2, vec!["x".into(), "x".into()]),
            // Function-style: `y*x` means x acts first.
            (-3, vec!["x".into(), "y".into()]),
            (1, vec!["y".into(), "x".into()]),
        ]
    );
    let printed = print_algebra(&parsed);
    assert_eq!(parse_algebra(&printed).unwrap(), parsed);
    // Powers are re-compressed on output.
    assert!(printed.contains("2*x^2"), "got:\n{printed}");
    assert!(printed.contains("y^3"), "got:\n{printed}");

    // Degenerate coefficient spellings normalize: `+1*x*x` and `x^2`
    // parse to the same term list.
    let a = parse_algebra(
        "quiver { vertices v; arrow x : v -> v; } relations { +1*x*x; }",
    )
    .unwrap();
    let b = parse_algebra(
        "quiver { vertices v; arrow x : v -> v; } relations { x^2; }",
    )
    .unwrap();
    assert_eq!(a.relations, b.relations);
}

#[test]
fn field_precedence_is_file_then_environment_then_rationals() {
    // File header wins over the environment.
    let header = Some(FieldSpec::Prime(None));
    assert_eq!(
        effective_field(header, Some("rational")).unwrap(),
        Field::Prime(deltak_cli::default_prime())
    );
    // Environment fills in when the file is silent.
    assert_eq!(
        effective_field(None, Some("prime:7")).unwrap(),
        Field::Prime(7)
    );
    assert_eq!(effective_field(None, Some("prime")).unwrap(), Field::Prime(32003));
    assert_eq!(effective_field(None, Some("rational")).unwrap(), Field::Rationals);
    // Default: exact rationals.
    assert_eq!(effective_field(None, None).unwrap(), Field::Rationals);
    // Junk in the environment fails loudly rather than falling back.
    assert!(effective_field(None, Some("float64")).is_err());
    // A composite modulus is rejected no matter where it came from.
    assert!(effective_field(None, Some("prime:6")).is_err());
    assert!(effective_field(Some(FieldSpec::Prime(Some(1))), None).is_err());
}

#[test]
fn syntax_errors_are_positioned() {
    // Missing `;` after the vertex list: the `}` on line 3 is the offender.
    let text = "quiver {\n  vertices v1, v2\n}";
    match parse_algebra(text) {
        Err(CliError::Syntax { line, column, expected, found }) => {
            assert_eq!((line, column), (3, 1));
            assert!(expected.contains(';'), "expected mentions `;`: {expected}");
            assert_eq!(found, "`}`");
        }
        other => panic!("wanted a syntax error, got {other:?}"),
    }

    // An unterminated relation points at end of input.
    let text = "quiver { vertices v; arrow x : v -> v; } relations { x^2";
    match parse_algebra(text) {
        Err(CliError::Syntax { found, .. }) => assert_eq!(found, "end of input"),
        other => panic!("wanted a syntax error, got {other:?}"),
    }

    // A stray token at the very start is reported at line 1, column 1.
    match parse_algebra("42") {
        Err(CliError::Syntax { line, column, .. }) => {
            assert_eq!((line, column), (1, 1));
        }
        other => panic!("wanted a syntax error, got {other:?}"),
    }
}

#[test]
fn semantic_errors_name_the_offending_symbol() {
    // Arrow endpoint that was never declared.
    let text = "quiver {\n  vertices v1;\n  arrow a : v1 -> v9;\n}";
    match parse_algebra(text) {
        Err(CliError::Semantic { line, message, .. }) => {
            assert_eq!(line, 3);
            assert!(message.contains("v9"), "message names the vertex: {message}");
        }
        other => panic!("wanted a semantic error, got {other:?}"),
    }

    // Non-composable product: endpoints are spelled out.
    let text = "
quiver {
  vertices v1, v2, v3;
  arrow a1 : v1 -> v2;
  arrow a2 : v2 -> v3;
}
relations {
  a1*a2;
}
";
    match parse_algebra(text) {
        Err(CliError::Semantic { message, .. }) => {
            assert!(
                message.contains("a1") && message.contains("a2"),
                "message names both arrows: {message}"
            );
        }
        other => panic!("wanted a semantic error, got {other:?}"),
    }

    // Duplicate names are caught at the second declaration.
    let text = "quiver {\n  vertices v, v;\n}";
    assert!(matches!(parse_algebra(text), Err(CliError::Semantic { .. })));
    let text = "quiver {\n  vertices v;\n  arrow x : v -> v;\n  arrow x : v -> v;\n}";
    assert!(matches!(parse_algebra(text), Err(CliError::Semantic { .. })));

    // An unknown arrow inside a relation.
    let text = "quiver { vertices v; arrow x : v -> v; } relations { z*x; }";
    match parse_algebra(text) {
        Err(CliError::Semantic { message, .. }) => {
            assert!(message.contains('z'), "message names the arrow: {message}");
        }
        other => panic!("wanted a semantic error, got {other:?}"),
    }
}

#[test]
fn comments_and_layout_are_immaterial() {
    let dense = "quiver{vertices v;arrow x:v->v;}relations{x^2;}";
    let airy = "
        # a one-loop algebra
        quiver {         # the quiver block
          vertices v;    # one vertex
          arrow x : v -> v;
        }
        relations {
          x ^ 2 ;        # the only relation
        }
    ";
    assert_eq!(parse_algebra(dense).unwrap(), parse_algebra(airy).unwrap());
}

#[test]
fn constructed_files_round_trip_through_the_printer() {
    // A hand-built AlgebraFile with every feature switched on.
    let f = AlgebraFile {
        field: Some(FieldSpec::Prime(Some(11))),
        cap: Some(5),
        compose_left: true,
        vertices: vec!["p".into(), "q".into()],
        arrows: vec![
            deltak_cli::dsl::ArrowDecl {
                name: "u".into(),
                source: "p".into(),
                target: "q".into(),
            },
            deltak_cli::dsl::ArrowDecl {
                name: "w".into(),
                source: "q".into(),
                target: "p".into(),
            },
        ],
        relations: vec![
            vec![(1, vec!["u".into(), "w".into()])],
            vec![
                (-2, vec!["w".into(), "u".into(), "w".into(), "u".into()]),
                (1, vec!["w".into(), "u".into()]),
            ],
        ],
    };
    let printed = print_algebra(&f);
    let reparsed = parse_algebra(&printed)
        .unwrap_or_else(|e| panic!("printed file does not parse: {e}\n{printed}"));
    assert_eq!(reparsed, f, "print/parse is not the identity:\n{printed}");
}
