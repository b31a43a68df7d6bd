//! The algebra presentation language.
//!
//! A presentation file has up to four blocks, in any order, at most one
//! each:
//!
//! ```text
//! # comments run to end of line
//! field rational;            # or: field prime;  /  field prime 7;
//! options {
//!   cap 10;
//!   compose right;           # in a product x*y the right factor acts
//! }                          # first (the default); `compose left` flips it
//! quiver {
//!   vertices v1, v2;
//!   arrow a : v1 -> v2;
//!   arrow b : v2 -> v1;
//! }
//! relations {
//!   a*b;                     # signed integer combinations of products
//!   2*b*a - b*a;             # of parallel arrows, `^` for powers
//! }
//! ```
//!
//! Parsing resolves every product to a path of the quiver in application
//! order (first-acting arrow first), so the stored presentation does not
//! depend on the composition convention; printing converts back.

use std::collections::BTreeMap;

use deltak_core::{
    validate_relations, ArrowId, Field, Path, Quiver, Relation, DEFAULT_PRIME,
};

use crate::error::CliError;

/// The field named by a presentation file header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    /// `None` selects the default prime.
    Prime(Option<u64>),
}

/// One arrow declaration, by vertex names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// A relation as written: signed integer terms, each a product of arrows
/// stored in application order.
pub type RelationExpr = Vec<(i64, Vec<String>)>;

/// A parsed presentation file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub field: Option<FieldSpec>,
    pub cap: Option<usize>,
    /// When true, `x*y` means "x acts first" instead of the default
    /// function-style reading.
    pub compose_left: bool,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<RelationExpr>,
}

impl AlgebraFile {
    /// Rebuilds the quiver object named by the file.
    pub fn quiver(&self) -> Result<Quiver, CliError> {
        let index: BTreeMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                let s = *index
                    .get(a.source.as_str())
                    .ok_or_else(|| CliError::Other(format!("unknown vertex {}", a.source)))?;
                let t = *index
                    .get(a.target.as_str())
                    .ok_or_else(|| CliError::Other(format!("unknown vertex {}", a.target)))?;
                Ok((a.name.clone(), s, t))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Quiver::new(self.vertices.clone(), arrows).map_err(CliError::Validation)
    }

    /// Builds the presentation over a concrete field and validates it.
    pub fn materialize(&self, field: Field) -> Result<(Quiver, Vec<Relation>), CliError> {
        let quiver = self.quiver()?;
        let relations = self
            .relations
            .iter()
            .map(|expr| {
                let terms = expr
                    .iter()
                    .map(|(c, names)| {
                        let path = path_from_names(&quiver, names)?;
                        Ok((field.integer(*c), path))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Ok(Relation::new(field, terms))
            })
            .collect::<Result<Vec<Relation>, CliError>>()?;
        validate_relations(&quiver, &relations).map_err(CliError::Validation)?;
        Ok((quiver, relations))
    }
}

fn path_from_names(q: &Quiver, names: &[String]) -> Result<Path, CliError> {
    let first = names
        .first()
        .ok_or_else(|| CliError::Other("empty product".into()))?;
    let id = arrow_id(q, first)?;
    let mut p = Path::from_arrow(q, id);
    for name in &names[1..] {
        let id = arrow_id(q, name)?;
        p = p
            .extend(q, id)
            .ok_or_else(|| CliError::Other(format!("non-composable product at {name}")))?;
    }
    Ok(p)
}

fn arrow_id(q: &Quiver, name: &str) -> Result<ArrowId, CliError> {
    q.arrow_by_name(name)
        .ok_or_else(|| CliError::Other(format!("unknown arrow {name}")))
}

/// Resolves the field a command should compute over: the file header wins,
/// then the `DELTAK_FIELD` environment variable (`rational`, `prime`, or
/// `prime:P`), then the rationals.
pub fn effective_field(file: Option<FieldSpec>, env: Option<&str>) -> Result<Field, CliError> {
    let spec = match (file, env) {
        (Some(s), _) => s,
        (None, Some(text)) => parse_field_env(text.trim())?,
        (None, None) => FieldSpec::Rational,
    };
    let field = match spec {
        FieldSpec::Rational => Field::Rationals,
        FieldSpec::Prime(None) => Field::prime_default(),
        FieldSpec::Prime(Some(p)) => Field::Prime(p),
    };
    field.validate().map_err(CliError::Validation)
}

fn parse_field_env(text: &str) -> Result<FieldSpec, CliError> {
    if text.is_empty() || text == "rational" {
        return Ok(FieldSpec::Rational);
    }
    if text == "prime" {
        return Ok(FieldSpec::Prime(None));
    }
    if let Some(rest) = text.strip_prefix("prime:") {
        let p: u64 = rest.parse().map_err(|_| {
            CliError::Invalid(format!("DELTAK_FIELD: bad prime {rest:?}"))
        })?;
        return Ok(FieldSpec::Prime(Some(p)));
    }
    Err(CliError::Invalid(format!(
        "DELTAK_FIELD must be `rational`, `prime`, or `prime:P`, not {text:?}"
    )))
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LBrace,
    RBrace,
    Semi,
    Comma,
    Colon,
    RArrow,
    Star,
    Plus,
    Minus,
    Caret,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::RArrow => "`->`".into(),
            Tok::Star => "`*`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Ident(s), line: tl, column: tc });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            let n: i64 = s.parse().map_err(|_| CliError::Syntax {
                line: tl,
                column: tc,
                expected: "an integer that fits in 64 bits".into(),
                found: format!("`{s}`"),
            })?;
            out.push(Token { tok: Tok::Int(n), line: tl, column: tc });
            continue;
        }
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '^' => Tok::Caret,
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    out.push(Token { tok: Tok::RArrow, line: tl, column: tc });
                } else {
                    out.push(Token { tok: Tok::Minus, line: tl, column: tc });
                }
                continue;
            }
            other => {
                return Err(CliError::Syntax {
                    line: tl,
                    column: tc,
                    expected: "a token".into(),
                    found: format!("`{other}`"),
                })
            }
        };
        bump(&mut chars);
        out.push(Token { tok, line: tl, column: tc });
    }
    out.push(Token { tok: Tok::Eof, line, column });
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax_error(&self, expected: &str) -> CliError {
        let t = self.peek();
        CliError::Syntax {
            line: t.line,
            column: t.column,
            expected: expected.into(),
            found: t.tok.describe(),
        }
    }

    fn semantic_error(&self, at: &Token, message: String) -> CliError {
        CliError::Semantic {
            line: at.line,
            column: at.column,
            message,
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Token, CliError> {
        if self.peek().tok == tok {
            Ok(self.advance())
        } else {
            Err(self.syntax_error(expected))
        }
    }

    fn expect_ident(&mut self, expected: &str) -> Result<(String, Token), CliError> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let t = self.advance();
                Ok((s, t))
            }
            _ => Err(self.syntax_error(expected)),
        }
    }

    fn expect_int(&mut self, expected: &str) -> Result<(i64, Token), CliError> {
        match self.peek().tok {
            Tok::Int(n) => {
                let t = self.advance();
                Ok((n, t))
            }
            _ => Err(self.syntax_error(expected)),
        }
    }

    fn keyword(&self) -> Option<&str> {
        match &self.peek().tok {
            Tok::Ident(s) => Some(s.as_str()),
            _ => None,
        }
    }
}

/// Parses a presentation file.
pub fn parse_algebra(text: &str) -> Result<AlgebraFile, CliError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    let mut field: Option<FieldSpec> = None;
    let mut cap: Option<usize> = None;
    let mut compose_left = false;
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows: Vec<ArrowDecl> = Vec::new();
    let mut saw_quiver = false;
    let mut relations: Option<Vec<RelationExpr>> = None;

    loop {
        match p.keyword() {
            Some("field") => {
                let at = p.advance();
                if field.is_some() {
                    return Err(p.semantic_error(&at, "duplicate field header".into()));
                }
                field = Some(parse_field_spec(&mut p)?);
                p.expect(Tok::Semi, "`;` after the field header")?;
            }
            Some("options") => {
                p.advance();
                p.expect(Tok::LBrace, "`{` to open the options block")?;
                while p.peek().tok != Tok::RBrace {
                    match p.keyword() {
                        Some("cap") => {
                            p.advance();
                            let (n, at) = p.expect_int("a degree cap")?;
                            if n < 0 {
                                return Err(
                                    p.semantic_error(&at, "the cap cannot be negative".into())
                                );
                            }
                            cap = Some(n as usize);
                        }
                        Some("compose") => {
                            p.advance();
                            let (side, at) = p.expect_ident("`left` or `right`")?;
                            match side.as_str() {
                                "left" => compose_left = true,
                                "right" => compose_left = false,
                                other => {
                                    return Err(p.semantic_error(
                                        &at,
                                        format!("compose must be left or right, not {other}"),
                                    ))
                                }
                            }
                        }
                        _ => return Err(p.syntax_error("`cap` or `compose`")),
                    }
                    p.expect(Tok::Semi, "`;` after the option")?;
                }
                p.expect(Tok::RBrace, "`}`")?;
            }
            Some("quiver") => {
                let at = p.advance();
                if saw_quiver {
                    return Err(p.semantic_error(&at, "duplicate quiver block".into()));
                }
                saw_quiver = true;
                p.expect(Tok::LBrace, "`{` to open the quiver block")?;
                while p.peek().tok != Tok::RBrace {
                    match p.keyword() {
                        Some("vertices") => {
                            let at = p.advance();
                            if vertices.is_some() {
                                return Err(p.semantic_error(
                                    &at,
                                    "duplicate vertices declaration".into(),
                                ));
                            }
                            let mut vs = Vec::new();
                            loop {
                                let (v, at) = p.expect_ident("a vertex name")?;
                                if vs.contains(&v) {
                                    return Err(p.semantic_error(
                                        &at,
                                        format!("duplicate vertex {v}"),
                                    ));
                                }
                                vs.push(v);
                                if p.peek().tok == Tok::Comma {
                                    p.advance();
                                } else {
                                    break;
                                }
                            }
                            p.expect(Tok::Semi, "`;` after the vertex list")?;
                            vertices = Some(vs);
                        }
                        Some("arrow") => {
                            p.advance();
                            let (name, at) = p.expect_ident("an arrow name")?;
                            if arrows.iter().any(|a| a.name == name) {
                                return Err(p.semantic_error(
                                    &at,
                                    format!("duplicate arrow {name}"),
                                ));
                            }
                            p.expect(Tok::Colon, "`:` after the arrow name")?;
                            let (source, sat) = p.expect_ident("a source vertex")?;
                            p.expect(Tok::RArrow, "`->`")?;
                            let (target, tat) = p.expect_ident("a target vertex")?;
                            let known = vertices.as_deref().unwrap_or(&[]);
                            if !known.contains(&source) {
                                return Err(p.semantic_error(
                                    &sat,
                                    format!("unknown vertex {source}"),
                                ));
                            }
                            if !known.contains(&target) {
                                return Err(p.semantic_error(
                                    &tat,
                                    format!("unknown vertex {target}"),
                                ));
                            }
                            p.expect(Tok::Semi, "`;` after the arrow declaration")?;
                            arrows.push(ArrowDecl { name, source, target });
                        }
                        _ => return Err(p.syntax_error("`vertices` or `arrow`")),
                    }
                }
                p.expect(Tok::RBrace, "`}`")?;
            }
            Some("relations") => {
                let at = p.advance();
                if relations.is_some() {
                    return Err(p.semantic_error(&at, "duplicate relations block".into()));
                }
                let mut rels = Vec::new();
                p.expect(Tok::LBrace, "`{` to open the relations block")?;
                while p.peek().tok != Tok::RBrace {
                    rels.push(parse_relation(&mut p, &arrows, compose_left)?);
                    p.expect(Tok::Semi, "`;` after the relation")?;
                }
                p.expect(Tok::RBrace, "`}`")?;
                relations = Some(rels);
            }
            _ if p.peek().tok == Tok::Eof => break,
            _ => {
                return Err(p.syntax_error(
                    "`field`, `options`, `quiver`, or `relations`",
                ))
            }
        }
    }

    let Some(vertices) = vertices else {
        return Err(CliError::Semantic {
            line: 1,
            column: 1,
            message: "the file declares no vertices".into(),
        });
    };
    Ok(AlgebraFile {
        field,
        cap,
        compose_left,
        vertices,
        arrows,
        relations: relations.unwrap_or_default(),
    })
}

fn parse_field_spec(p: &mut Parser) -> Result<FieldSpec, CliError> {
    let (kind, at) = p.expect_ident("`rational` or `prime`")?;
    match kind.as_str() {
        "rational" => Ok(FieldSpec::Rational),
        "prime" => {
            if let Tok::Int(n) = p.peek().tok {
                let (_, at) = p.expect_int("a prime")?;
                if n <= 1 {
                    return Err(p.semantic_error(&at, format!("{n} is not a prime")));
                }
                Ok(FieldSpec::Prime(Some(n as u64)))
            } else {
                Ok(FieldSpec::Prime(None))
            }
        }
        other => Err(p.semantic_error(
            &at,
            format!("the field must be rational or prime, not {other}"),
        )),
    }
}

/// Parses one signed sum of products, resolving each product to application
/// order under the active convention.
fn parse_relation(
    p: &mut Parser,
    arrows: &[ArrowDecl],
    compose_left: bool,
) -> Result<RelationExpr, CliError> {
    let mut terms = Vec::new();
    let mut sign: i64 = 1;
    if p.peek().tok == Tok::Minus {
        p.advance();
        sign = -1;
    } else if p.peek().tok == Tok::Plus {
        p.advance();
    }
    loop {
        terms.push(parse_term(p, arrows, compose_left, sign)?);
        match p.peek().tok {
            Tok::Plus => {
                p.advance();
                sign = 1;
            }
            Tok::Minus => {
                p.advance();
                sign = -1;
            }
            _ => break,
        }
    }
    Ok(terms)
}

fn parse_term(
    p: &mut Parser,
    arrows: &[ArrowDecl],
    compose_left: bool,
    sign: i64,
) -> Result<(i64, Vec<String>), CliError> {
    let mut coeff: i64 = 1;
    if let Tok::Int(n) = p.peek().tok {
        p.advance();
        coeff = n;
        if p.peek().tok == Tok::Star {
            p.advance();
        }
    }
    // Written order first, with powers already expanded.
    let mut written: Vec<(String, Token)> = Vec::new();
    loop {
        let (name, at) = p.expect_ident("an arrow name")?;
        if !arrows.iter().any(|a| a.name == name) {
            return Err(p.semantic_error(&at, format!("unknown arrow {name}")));
        }
        let mut power = 1i64;
        if p.peek().tok == Tok::Caret {
            p.advance();
            let (n, pat) = p.expect_int("a positive exponent")?;
            if n < 1 {
                return Err(p.semantic_error(&pat, "exponents must be positive".into()));
            }
            power = n;
        }
        for _ in 0..power {
            written.push((name.clone(), at.clone()));
        }
        if p.peek().tok == Tok::Star && matches!(p.tokens[p.pos + 1].tok, Tok::Ident(_)) {
            p.advance();
        } else {
            break;
        }
    }
    // Application order: under the function-style default the rightmost
    // factor acts first.
    let application: Vec<(String, Token)> = if compose_left {
        written
    } else {
        written.into_iter().rev().collect()
    };
    let ends = |name: &str| -> (&str, &str) {
        let a = arrows.iter().find(|a| a.name == name).expect("checked");
        (a.source.as_str(), a.target.as_str())
    };
    for pair in application.windows(2) {
        let (prev, next) = (&pair[0], &pair[1]);
        if ends(&prev.0).1 != ends(&next.0).0 {
            return Err(p.semantic_error(
                &next.1,
                format!(
                    "non-composable product: {} ends at {} but {} starts at {}",
                    prev.0,
                    ends(&prev.0).1,
                    next.0,
                    ends(&next.0).0
                ),
            ));
        }
    }
    Ok((sign * coeff, application.into_iter().map(|(n, _)| n).collect()))
}

// ---------------------------------------------------------------------------
// Printer

/// Renders a presentation back to canonical text; `parse_algebra` returns
/// the same structure.
pub fn print_algebra(f: &AlgebraFile) -> String {
    let mut out = String::new();
    if let Some(spec) = f.field {
        match spec {
            FieldSpec::Rational => out.push_str("field rational;\n"),
            FieldSpec::Prime(None) => out.push_str("field prime;\n"),
            FieldSpec::Prime(Some(p)) => out.push_str(&format!("field prime {p};\n")),
        }
    }
    if f.cap.is_some() || f.compose_left {
        out.push_str("options {\n");
        if let Some(c) = f.cap {
            out.push_str(&format!("  cap {c};\n"));
        }
        if f.compose_left {
            out.push_str("  compose left;\n");
        }
        out.push_str("}\n");
    }
    out.push_str("quiver {\n  vertices ");
    out.push_str(&f.vertices.join(", "));
    out.push_str(";\n");
    for a in &f.arrows {
        out.push_str(&format!("  arrow {} : {} -> {};\n", a.name, a.source, a.target));
    }
    out.push_str("}\nrelations {\n");
    for rel in &f.relations {
        out.push_str("  ");
        out.push_str(&render_expr(rel, f.compose_left));
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

fn render_expr(rel: &RelationExpr, compose_left: bool) -> String {
    let mut out = String::new();
    for (i, (coeff, names)) in rel.iter().enumerate() {
        let c = *coeff;
        if i == 0 {
            if c < 0 {
                out.push('-');
            }
        } else if c < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if c.unsigned_abs() != 1 {
            out.push_str(&format!("{}*", c.unsigned_abs()));
        }
        out.push_str(&render_product(names, compose_left));
    }
    out
}

fn render_product(application: &[String], compose_left: bool) -> String {
    let written: Vec<&String> = if compose_left {
        application.iter().collect()
    } else {
        application.iter().rev().collect()
    };
    // Compress runs of a repeated arrow into powers.
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < written.len() {
        let mut j = i + 1;
        while j < written.len() && written[j] == written[i] {
            j += 1;
        }
        if j - i == 1 {
            parts.push(written[i].clone());
        } else {
            parts.push(format!("{}^{}", written[i], j - i));
        }
        i = j;
    }
    parts.join("*")
}

/// Converts a materialized presentation (for example one built by the
/// family constructors) into its file form.  Coefficients must be integers
/// small enough for the text format.
pub fn presentation_to_file(
    field: Field,
    quiver: &Quiver,
    relations: &[Relation],
    cap: Option<usize>,
) -> Result<AlgebraFile, CliError> {
    let vertices = quiver.vertex_names().to_vec();
    let arrows = quiver
        .arrows()
        .iter()
        .map(|a| ArrowDecl {
            name: a.name.clone(),
            source: quiver.vertex_name(a.source).to_string(),
            target: quiver.vertex_name(a.target).to_string(),
        })
        .collect();
    let relations = relations
        .iter()
        .map(|r| {
            r.terms()
                .iter()
                .map(|(c, p)| {
                    let coeff = scalar_to_i64(field, c)?;
                    let names = p
                        .arrows()
                        .iter()
                        .map(|&a| quiver.arrow(a).name.clone())
                        .collect();
                    Ok((coeff, names))
                })
                .collect::<Result<RelationExpr, CliError>>()
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(AlgebraFile {
        field: None,
        cap,
        compose_left: false,
        vertices,
        arrows,
        relations,
    })
}

fn scalar_to_i64(field: Field, c: &deltak_core::Scalar) -> Result<i64, CliError> {
    for candidate in 0..=64i64 {
        for signed in [candidate, -candidate] {
            if field.integer(signed) == *c {
                return Ok(signed);
            }
        }
    }
    Err(CliError::Other(format!(
        "coefficient {c} does not fit the presentation format"
    )))
}

/// The default prime, re-exported so `--help` text can name it.
pub fn default_prime() -> u64 {
    DEFAULT_PRIME
}
