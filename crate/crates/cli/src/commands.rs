//! The four command workflows behind the binary, as plain functions so
//! they can be driven from tests.

use std::sync::Arc;

use deltak_core::{
    build_family_presentation, build_quotient, build_truncated_presentation, classify,
    euler_check, extract_delta, ext_groups, family_recommended_cap, is_good_map,
    minimal_generator_degrees, minimal_resolution, Field, GradedQuotientAlgebra, Resolution,
};

use crate::dsl::{effective_field, presentation_to_file, print_algebra, AlgebraFile};
use crate::error::CliError;
use crate::report::{
    AlgebraSummary, ArrowSummary, DeltaReport, ExtReport, ExtRowReport, GeneratorEntry,
    GoodReport, GrowthReport, GrowthRow, InternalDegreeEntry, ReportDocument, ResolutionReport,
    StepReport,
};

/// Options shared by the computing commands.
#[derive(Clone, Debug, Default)]
pub struct ComputeOpts {
    /// `--cap`: overrides the file's cap and the per-command default.
    pub cap: Option<usize>,
    /// The `DELTAK_FIELD` environment value, when set.
    pub field_env: Option<String>,
}

fn build(
    file: &AlgebraFile,
    opts: &ComputeOpts,
    default_cap: usize,
) -> Result<(Field, Arc<GradedQuotientAlgebra>), CliError> {
    let field = effective_field(file.field, opts.field_env.as_deref())?;
    let cap = opts.cap.or(file.cap).unwrap_or(default_cap);
    let (quiver, relations) = file.materialize(field)?;
    let algebra = build_quotient(field, quiver, relations, cap)?;
    Ok((field, algebra))
}

fn summarize_algebra(field: Field, algebra: &GradedQuotientAlgebra) -> AlgebraSummary {
    let quiver = algebra.quiver();
    let hilbert = algebra.hilbert_function();
    let first_zero = algebra.first_zero();
    AlgebraSummary {
        vertices: quiver.vertex_names().to_vec(),
        arrows: quiver
            .arrows()
            .iter()
            .map(|a| ArrowSummary {
                name: a.name.clone(),
                source: quiver.vertex_name(a.source).to_string(),
                target: quiver.vertex_name(a.target).to_string(),
            })
            .collect(),
        relations: algebra
            .relations()
            .iter()
            .map(|r| crate::report::render_relation(field, quiver, r))
            .collect(),
        cap: algebra.cap(),
        hilbert: hilbert.clone(),
        first_zero,
        total_dimension: first_zero.map(|_| hilbert.iter().sum()),
    }
}

fn resolution_report(algebra: &GradedQuotientAlgebra, r: &Resolution) -> ResolutionReport {
    let quiver = algebra.quiver();
    ResolutionReport {
        steps: r
            .steps
            .iter()
            .enumerate()
            .map(|(n, step)| StepReport {
                step: n,
                generators: step
                    .generator_table()
                    .iter()
                    .map(|e| GeneratorEntry {
                        vertex: quiver.vertex_name(e.vertex).to_string(),
                        degree: e.degree,
                        multiplicity: e.multiplicity,
                    })
                    .collect(),
            })
            .collect(),
    }
}

fn delta_report(r: &Resolution) -> DeltaReport {
    let delta = extract_delta(r);
    let good = delta
        .total_values()
        .and_then(|v| is_good_map(&v, None).ok())
        .map(|g| GoodReport {
            is_good: g.is_good,
            n0: g.n0,
            n_max: g.n_max,
            violations: g.violations.clone(),
        });
    let classification = {
        let report = delta
            .total_values()
            .and_then(|v| is_good_map(&v, None).ok());
        classify(&delta, report.as_ref()).label().to_string()
    };
    DeltaReport {
        values: delta.values.clone(),
        resolution_determined: delta.resolution_determined(),
        good,
        classification,
    }
}

/// Resolves the trivial module, reports the generator tables, the degree
/// map, the good-map test, and the classification.
pub fn cmd_resolve(
    file: &AlgebraFile,
    steps: usize,
    opts: &ComputeOpts,
) -> Result<ReportDocument, CliError> {
    let (field, algebra) = build(file, opts, steps + 3)?;
    let r = minimal_resolution(&algebra, steps)?;
    let mut doc = ReportDocument::new("resolve", field);
    doc.algebra = Some(summarize_algebra(field, &algebra));
    doc.resolution = Some(resolution_report(&algebra, &r));
    doc.delta = Some(delta_report(&r));
    doc.notes.push(
        "a table row (v, d, m) means m copies of the indecomposable \
         projective A·e_v generated in degree d"
            .into(),
    );
    let euler = euler_check(&r);
    doc.notes.push(format!(
        "Euler characteristic check {} through degree {}",
        if euler.pass { "passed" } else { "FAILED" },
        euler.checked_through
    ));
    if algebra.first_zero().is_none() {
        doc.notes.push(
            "no graded piece vanishes within the cap; the algebra may be \
             infinite-dimensional"
                .into(),
        );
    }
    Ok(doc)
}

/// Computes Ext groups, decomposable spans, and the minimal generator
/// degrees of the Ext algebra through cohomological degree `n_max`.
pub fn cmd_yoneda(
    file: &AlgebraFile,
    n_max: Option<usize>,
    opts: &ComputeOpts,
) -> Result<ReportDocument, CliError> {
    let n_vertices = file.vertices.len();
    let n_max = n_max.unwrap_or(2 * n_vertices + 1);
    let (field, algebra) = build(file, opts, n_max + 3)?;
    let r = minimal_resolution(&algebra, n_max)?;
    let groups = ext_groups(&r);
    let summary = minimal_generator_degrees(&r, n_max)?;
    let rows = groups
        .iter()
        .zip(&summary.rows)
        .map(|(g, row)| ExtRowReport {
            n: g.n,
            dim: g.dim,
            internal_degrees: g
                .internal_degrees
                .iter()
                .map(|&(degree, dim)| InternalDegreeEntry { degree, dim })
                .collect(),
            decomposable_dim: row.decomposable_dim,
            new_generators: row.new_generators,
        })
        .collect();
    let mut degrees = vec![0usize];
    degrees.extend(&summary.minimal_generator_degrees);
    let mut doc = ReportDocument::new("yoneda", field);
    doc.algebra = Some(summarize_algebra(field, &algebra));
    doc.ext = Some(ExtReport {
        rows,
        minimal_generator_degrees: degrees,
    });
    doc.notes.push(
        "degree 0 always generates (the vertex classes span a copy of the \
         degree-zero module)"
            .into(),
    );
    Ok(doc)
}

/// What `cmd_family` should emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// The zigzag member with the given parameter (at least 3).
    Zigzag(usize),
    /// One loop with its square zero.
    Koszul,
    /// One loop with its `d`-th power zero.
    DKoszul(usize),
}

/// Emits a presentation file for a witness algebra.
pub fn cmd_family(kind: FamilyKind) -> Result<String, CliError> {
    // Coefficients are 0 or ±1, so the emitting field does not matter.
    let field = Field::Rationals;
    let (header, quiver, relations) = match kind {
        FamilyKind::Zigzag(n0) => {
            if n0 < 3 {
                return Err(CliError::Invalid(format!(
                    "the zigzag family starts at parameter 3 (got {n0}); for a \
                     one-loop algebra use --koszul or --d-koszul D"
                )));
            }
            let (q, rels) = build_family_presentation(field, n0)?;
            let steps = 2 * n0 + 1;
            let header = format!(
                "# zigzag algebra with parameter {n0}: {} vertices, {} arrows, \
                 {} relations\n# suggested degree cap for a {steps}-step \
                 resolution: {}\n",
                n0,
                2 * (n0 - 1),
                3 * (n0 - 2),
                family_recommended_cap(n0, steps)
            );
            (header, q, rels)
        }
        FamilyKind::Koszul => {
            let (q, rels) = build_truncated_presentation(field, 2)?;
            let header = "# Koszul control: one loop x with x^2 = 0\n".to_string();
            (header, q, rels)
        }
        FamilyKind::DKoszul(d) => {
            if d < 2 {
                return Err(CliError::Invalid(format!(
                    "a truncation exponent must be at least 2 (got {d})"
                )));
            }
            let (q, rels) = build_truncated_presentation(field, d)?;
            let header = format!("# d-Koszul control: one loop x with x^{d} = 0\n");
            (header, q, rels)
        }
    };
    let file = presentation_to_file(field, &quiver, &relations, None)?;
    Ok(format!("{header}{}", print_algebra(&file)))
}

/// One row per family parameter in `a..=b`: where the Ext algebra needs its
/// top minimal generator.
pub fn cmd_growth(
    a: usize,
    b: usize,
    allow_large: bool,
    opts: &ComputeOpts,
) -> Result<ReportDocument, CliError> {
    let field = effective_field(None, opts.field_env.as_deref())?;
    if a > b {
        let mut doc = ReportDocument::new("growth", field);
        doc.growth = Some(GrowthReport { rows: Vec::new() });
        return Ok(doc);
    }
    if a < 3 {
        return Err(CliError::Invalid(format!(
            "the family starts at parameter 3 (got {a})"
        )));
    }
    if b > 6 && !allow_large {
        return Err(CliError::Invalid(format!(
            "parameter {b} exceeds the desk-scale bound 6; pass --allow-large \
             to compute anyway"
        )));
    }
    let mut rows = Vec::new();
    for n0 in a..=b {
        let steps = n0 + 1;
        let cap = opts.cap.unwrap_or_else(|| family_recommended_cap(n0, steps));
        let (quiver, relations) = build_family_presentation(field, n0)?;
        let algebra = build_quotient(field, quiver, relations, cap)?;
        let r = minimal_resolution(&algebra, steps)?;
        let summary = minimal_generator_degrees(&r, steps)?;
        let mut degrees = vec![0usize];
        degrees.extend(&summary.minimal_generator_degrees);
        let top = *degrees.last().expect("degree 0 is present");
        rows.push(GrowthRow {
            n0,
            minimal_generator_degrees: degrees,
            top_generator_degree: top,
        });
    }
    let mut doc = ReportDocument::new("growth", field);
    doc.growth = Some(GrowthReport { rows });
    doc.notes.push(
        "the top minimal generator degree equals the parameter, so no \
         uniform bound covers the whole family"
            .into(),
    );
    Ok(doc)
}
