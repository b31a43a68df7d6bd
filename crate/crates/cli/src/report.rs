//! Machine-readable report documents and their text rendering.
//!
//! Every command that computes something emits a [`ReportDocument`]: JSON
//! under `--format json` (stable schema, shipped in `schemas/`), or a text
//! rendering.  Generator tables always use explicit (vertex, degree,
//! multiplicity) triples; the projective at a vertex is spanned by the
//! paths leaving it.

use deltak_core::{Field, Quiver, Relation, Scalar};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldReport {
    Rational,
    Prime { p: u64 },
}

impl From<Field> for FieldReport {
    fn from(f: Field) -> FieldReport {
        match f {
            Field::Rationals => FieldReport::Rational,
            Field::Prime(p) => FieldReport::Prime { p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSummary {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSummary {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSummary>,
    /// Relations rendered in the function-style notation.
    pub relations: Vec<String>,
    pub cap: usize,
    /// Dimensions of the graded pieces, degrees `0..=cap`.
    pub hilbert: Vec<usize>,
    /// First degree with dimension zero, when one exists within the cap
    /// (all later degrees then vanish too).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_zero: Option<usize>,
    /// Total dimension when the algebra is finite-dimensional.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub total_dimension: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub vertex: String,
    pub degree: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepReport {
    pub step: usize,
    /// Empty exactly when the step is zero (the resolution has ended).
    pub generators: Vec<GeneratorEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionReport {
    pub steps: Vec<StepReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoodReport {
    pub is_good: bool,
    pub n0: usize,
    pub n_max: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaReport {
    /// One entry per computed step; `null` where the step mixes internal
    /// degrees (so no single degree exists).
    pub values: Vec<Option<usize>>,
    pub resolution_determined: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub good: Option<GoodReport>,
    pub classification: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InternalDegreeEntry {
    pub degree: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtRowReport {
    pub n: usize,
    pub dim: usize,
    pub internal_degrees: Vec<InternalDegreeEntry>,
    /// Dimension of the span of products of lower positive-degree classes.
    pub decomposable_dim: usize,
    pub new_generators: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtReport {
    pub rows: Vec<ExtRowReport>,
    /// Cohomological degrees contributing algebra generators, degree 0
    /// included.
    pub minimal_generator_degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthRow {
    pub n0: usize,
    pub minimal_generator_degrees: Vec<usize>,
    pub top_generator_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    /// Which command produced the document: resolve, yoneda, or growth.
    pub command: String,
    pub field: FieldReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub algebra: Option<AlgebraSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub resolution: Option<ResolutionReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<DeltaReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ext: Option<ExtReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub growth: Option<GrowthReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str, field: Field) -> ReportDocument {
        ReportDocument {
            tool: "deltak".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            field: field.into(),
            algebra: None,
            resolution: None,
            delta: None,
            ext: None,
            growth: None,
            notes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Renders the document for a terminal.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} {} — {}\n",
            self.tool, self.version, self.command
        ));
        out.push_str(&format!("field: {}\n", describe_field(&self.field)));
        if let Some(a) = &self.algebra {
            out.push_str(&format!(
                "algebra: {}, {}, {}, degree cap {}\n",
                count(a.vertices.len(), "vertex", "vertices"),
                count(a.arrows.len(), "arrow", "arrows"),
                count(a.relations.len(), "relation", "relations"),
                a.cap
            ));
            let h: Vec<String> = a.hilbert.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!("hilbert function: {}", h.join(", ")));
            match a.total_dimension {
                Some(total) => out.push_str(&format!(" (total dimension {total})\n")),
                None => out.push_str(" (no zero degree within the cap)\n"),
            }
        }
        if let Some(r) = &self.resolution {
            out.push_str(&format!(
                "\nminimal graded resolution of the degree-zero module, steps 0..={}\n",
                r.steps.len().saturating_sub(1)
            ));
            out.push_str("step  generators (vertex, degree, multiplicity)\n");
            for s in &r.steps {
                let gens = if s.generators.is_empty() {
                    "(zero)".to_string()
                } else {
                    s.generators
                        .iter()
                        .map(|g| format!("({}, {}, {})", g.vertex, g.degree, g.multiplicity))
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                out.push_str(&format!("{:<5} {}\n", s.step, gens));
            }
        }
        if let Some(d) = &self.delta {
            let values: Vec<String> = d
                .values
                .iter()
                .map(|v| match v {
                    Some(n) => n.to_string(),
                    None => "mixed".to_string(),
                })
                .collect();
            out.push_str(&format!("\ndegree map: {}\n", values.join(", ")));
            match &d.good {
                Some(g) if g.is_good => out.push_str(&format!(
                    "good-map test: passes with parameter {} (checked through step {})\n",
                    g.n0, g.n_max
                )),
                Some(g) => {
                    out.push_str(&format!(
                        "good-map test: fails with parameter {}\n",
                        g.n0
                    ));
                    for v in &g.violations {
                        out.push_str(&format!("  - {v}\n"));
                    }
                }
                None => out.push_str(
                    "good-map test: not applicable (a step mixes internal degrees)\n",
                ),
            }
            out.push_str(&format!("classification: {}\n", d.classification));
        }
        if let Some(e) = &self.ext {
            out.push_str("\next groups and products\n");
            out.push_str("n     dim   decomposable  new generators\n");
            for row in &e.rows {
                out.push_str(&format!(
                    "{:<5} {:<5} {:<13} {}\n",
                    row.n,
                    row.dim,
                    row.decomposable_dim,
                    if row.new_generators { "yes" } else { "no" }
                ));
            }
            let degs: Vec<String> = e
                .minimal_generator_degrees
                .iter()
                .map(|d| d.to_string())
                .collect();
            out.push_str(&format!(
                "minimal generator degrees: {{{}}}\n",
                degs.join(", ")
            ));
        }
        if let Some(g) = &self.growth {
            out.push_str("\ngenerator growth across the family\n");
            out.push_str("n0    generator degrees   top\n");
            for row in &g.rows {
                let degs: Vec<String> = row
                    .minimal_generator_degrees
                    .iter()
                    .map(|d| d.to_string())
                    .collect();
                out.push_str(&format!(
                    "{:<5} {:<19} {}\n",
                    row.n0,
                    format!("{{{}}}", degs.join(", ")),
                    row.top_generator_degree
                ));
            }
            if g.rows.is_empty() {
                out.push_str("(empty range)\n");
            }
        }
        for note in &self.notes {
            out.push_str(&format!("\nnote: {note}\n"));
        }
        out
    }
}

fn count(n: usize, singular: &str, plural: &str) -> String {
    format!("{n} {}", if n == 1 { singular } else { plural })
}

fn describe_field(f: &FieldReport) -> String {
    match f {
        FieldReport::Rational => "the rational numbers".into(),
        FieldReport::Prime { p } => format!("the prime field with {p} elements"),
    }
}

/// Renders one relation in the function-style notation for report output.
pub fn render_relation(field: Field, quiver: &Quiver, r: &Relation) -> String {
    let mut out = String::new();
    for (i, (c, p)) in r.terms().iter().enumerate() {
        let (sign, magnitude) = split_sign(field, c);
        if i == 0 {
            if sign < 0 {
                out.push('-');
            }
        } else if sign < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !field.is_zero(&field.sub(&magnitude, &field.one())) {
            out.push_str(&format!("{magnitude}*"));
        }
        out.push_str(&format!("{}", p.display(quiver)));
    }
    out
}

/// Splits a scalar into a sign and a magnitude for display: small negative
/// integers render as subtractions, everything else renders as written.
fn split_sign(field: Field, c: &Scalar) -> (i32, Scalar) {
    for n in 1..=64i64 {
        if field.integer(-n) == *c {
            return (-1, field.integer(n));
        }
    }
    (1, c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_round_trip_through_json() {
        let mut doc = ReportDocument::new("resolve", Field::Rationals);
        doc.algebra = Some(AlgebraSummary {
            vertices: vec!["v1".into()],
            arrows: vec![ArrowSummary {
                name: "x".into(),
                source: "v1".into(),
                target: "v1".into(),
            }],
            relations: vec!["x^2".into()],
            cap: 5,
            hilbert: vec![1, 1, 0, 0, 0, 0],
            first_zero: Some(2),
            total_dimension: Some(2),
        });
        doc.resolution = Some(ResolutionReport {
            steps: vec![StepReport {
                step: 0,
                generators: vec![GeneratorEntry {
                    vertex: "v1".into(),
                    degree: 0,
                    multiplicity: 1,
                }],
            }],
        });
        doc.delta = Some(DeltaReport {
            values: vec![Some(0), Some(1)],
            resolution_determined: true,
            good: Some(GoodReport {
                is_good: true,
                n0: 1,
                n_max: 1,
                violations: vec![],
            }),
            classification: "delta-Koszul".into(),
        });
        doc.notes.push("a note".into());
        let json = doc.to_json();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn text_rendering_mentions_the_key_sections(){
        let mut doc = ReportDocument::new("growth", Field::prime_default());
        doc.growth = Some(GrowthReport {
            rows: vec![GrowthRow {
                n0: 3,
                minimal_generator_degrees: vec![0, 1, 3],
                top_generator_degree: 3,
            }],
        });
        let text = doc.to_text();
        assert!(text.contains("growth"));
        assert!(text.contains("32003"));
        assert!(text.contains("{0, 1, 3}"));
    }
}
