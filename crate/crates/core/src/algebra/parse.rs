use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{format_scalar, parse_rational, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertices and arrows are referred to by position.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Source and target of a nonempty arrow sequence, if it is composable.
    pub fn path_endpoints(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*path.first()?)?;
        let mut at = first.target;
        for &a in &path[1..] {
            let arrow = self.arrows.get(a)?;
            if arrow.source != at {
                return None;
            }
            at = arrow.target;
        }
        Some((first.source, at))
    }
}

/// A linear combination of parallel paths, each path a sequence of arrow indices
/// composed left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationExpr {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl RelationExpr {
    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }
}

/// Parsed contents of an algebra file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<RelationExpr>,
}

impl Presentation {
    pub fn new(name: impl Into<String>, field: Field, quiver: Quiver) -> Self {
        Presentation {
            name: name.into(),
            field,
            quiver,
            relations: Vec::new(),
        }
    }

    /// Renders the presentation back into the file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebra {}", self.name);
        match self.field {
            Field::Rationals => out.push_str("field Q\n"),
            Field::Prime(p) => {
                let _ = writeln!(out, "field F {p}");
            }
        }
        let _ = writeln!(out, "vertices {}", self.quiver.vertices.join(" "));
        for a in &self.quiver.arrows {
            let _ = writeln!(
                out,
                "arrow {} {} {}",
                a.name, self.quiver.vertices[a.source], self.quiver.vertices[a.target]
            );
        }
        for r in &self.relations {
            out.push_str("relation ");
            for (k, (c, path)) in r.terms.iter().enumerate() {
                let neg = c < &Scalar::from_integer(0.into());
                if k > 0 {
                    out.push_str(if neg { " - " } else { " + " });
                } else if neg {
                    out.push('-');
                }
                let abs = if neg { -c.clone() } else { c.clone() };
                if abs != Scalar::from_integer(1.into()) {
                    let _ = write!(out, "{}*", format_scalar(&abs));
                }
                let names: Vec<&str> = path
                    .iter()
                    .map(|&i| self.quiver.arrows[i].name.as_str())
                    .collect();
                out.push_str(&names.join("*"));
            }
            out.push('\n');
        }
        out.push_str("end\n");
        out
    }
}

/// Splits a line into whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

/// Parses the algebra file format.
///
/// ```text
/// algebra A3
/// field Q
/// vertices 1 2 3
/// arrow alpha 1 2
/// arrow beta 2 3
/// relation alpha*beta
/// end
/// ```
pub fn parse_algebra(text: &str) -> Result<Presentation> {
    let mut name: Option<String> = None;
    let mut field = Field::Rationals;
    let mut quiver = Quiver::default();
    let mut vertex_lookup: HashMap<String, usize> = HashMap::new();
    let mut arrow_lookup: HashMap<String, usize> = HashMap::new();
    let mut pending: Vec<(usize, usize, String)> = Vec::new();
    let mut ended = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = strip_comment(raw);
        let toks = tokens(line);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        if ended {
            return Err(Error::parse(line_no, col, "content after 'end'"));
        }
        match keyword {
            "algebra" => {
                if toks.len() != 2 {
                    return Err(Error::parse(line_no, col, "expected 'algebra <name>'"));
                }
                name = Some(toks[1].1.to_string());
            }
            "field" => {
                let rest: Vec<&str> = toks[1..].iter().map(|t| t.1).collect();
                field = rest
                    .join(" ")
                    .parse()
                    .map_err(|e: Error| Error::parse(line_no, col, e.to_string()))?;
            }
            "vertices" => {
                if !quiver.vertices.is_empty() {
                    return Err(Error::parse(line_no, col, "vertices declared twice"));
                }
                for &(c, label) in &toks[1..] {
                    if vertex_lookup.contains_key(label) {
                        return Err(Error::parse(line_no, c, format!("duplicate vertex '{label}'")));
                    }
                    vertex_lookup.insert(label.to_string(), quiver.vertices.len());
                    quiver.vertices.push(label.to_string());
                }
            }
            "arrow" => {
                if toks.len() != 4 {
                    return Err(Error::parse(line_no, col, "expected 'arrow <name> <src> <dst>'"));
                }
                let (c, aname) = toks[1];
                if !is_name(aname) {
                    return Err(Error::parse(line_no, c, format!("invalid arrow name '{aname}'")));
                }
                if arrow_lookup.contains_key(aname) {
                    return Err(Error::parse(line_no, c, format!("duplicate arrow '{aname}'")));
                }
                let endpoint = |(c, label): (usize, &str)| {
                    vertex_lookup
                        .get(label)
                        .copied()
                        .ok_or_else(|| Error::parse(line_no, c, format!("unknown vertex '{label}'")))
                };
                let source = endpoint(toks[2])?;
                let target = endpoint(toks[3])?;
                arrow_lookup.insert(aname.to_string(), quiver.arrows.len());
                quiver.arrows.push(Arrow {
                    name: aname.to_string(),
                    source,
                    target,
                });
            }
            "relation" => {
                let body_start = col - 1 + keyword.len();
                pending.push((line_no, body_start, line[body_start..].to_string()));
            }
            "end" => ended = true,
            other => {
                return Err(Error::parse(line_no, col, format!("unknown keyword '{other}'")));
            }
        }
    }

    let name = name.ok_or_else(|| Error::parse(1, 1, "missing 'algebra <name>' line"))?;
    if quiver.vertices.is_empty() {
        return Err(Error::parse(1, 1, "no vertices declared"));
    }
    let mut relations = Vec::new();
    for (line_no, offset, body) in pending {
        relations.push(parse_relation(&quiver, field, &body, line_no, offset)?);
    }
    Ok(Presentation {
        name,
        field,
        quiver,
        relations,
    })
}

/// Parses `[<coef>*]a*b*... (+|-) ...`. `offset` is the byte offset of `body` in its line.
fn parse_relation(
    quiver: &Quiver,
    field: Field,
    body: &str,
    line_no: usize,
    offset: usize,
) -> Result<RelationExpr> {
    // split on top-level signs, remembering where each term starts
    let mut pieces: Vec<(usize, bool, &str)> = Vec::new();
    let mut negative = false;
    let mut start = 0;
    for (i, ch) in body.char_indices() {
        if ch == '+' || ch == '-' {
            let piece = &body[start..i];
            if !piece.trim().is_empty() {
                pieces.push((start, negative, piece));
            } else if !(pieces.is_empty() && start == 0) {
                return Err(Error::parse(line_no, offset + i + 1, "dangling sign"));
            }
            negative = ch == '-';
            start = i + 1;
        }
    }
    let last = &body[start..];
    if last.trim().is_empty() {
        let column = offset + body.len() + 1;
        return Err(Error::parse(line_no, column, "relation ends without a term"));
    }
    pieces.push((start, negative, last));

    let mut terms: Vec<(Scalar, Vec<usize>)> = Vec::new();
    let mut endpoints: Option<(usize, usize)> = None;
    for (pos, neg, piece) in pieces {
        let lead = piece.len() - piece.trim_start().len();
        let column = offset + pos + lead + 1;
        let text: String = piece.chars().filter(|c| !c.is_whitespace()).collect();
        let mut factors: Vec<&str> = text.split('*').collect();
        let mut coef = field.one();
        if let Some(first) = factors.first() {
            if first.starts_with(|c: char| c.is_ascii_digit()) {
                coef = field
                    .parse_scalar(first)
                    .map_err(|e| Error::parse(line_no, column, e.to_string()))?;
                factors.remove(0);
            }
        }
        if neg {
            coef = field.neg(&coef);
        }
        if factors.is_empty() || factors.iter().any(|f| f.is_empty()) {
            return Err(Error::parse(line_no, column, format!("malformed term '{text}'")));
        }
        let mut path = Vec::with_capacity(factors.len());
        for f in factors {
            let idx = quiver
                .arrow_index(f)
                .ok_or_else(|| Error::parse(line_no, column, format!("unknown arrow '{f}'")))?;
            path.push(idx);
        }
        let ends = quiver.path_endpoints(&path).ok_or_else(|| {
            Error::parse(line_no, column, format!("arrows in '{text}' do not compose"))
        })?;
        match endpoints {
            None => endpoints = Some(ends),
            Some(e) if e != ends => {
                return Err(Error::parse(
                    line_no,
                    column,
                    format!("term '{text}' is not parallel to the preceding terms"),
                ));
            }
            _ => {}
        }
        if let Some(existing) = terms.iter_mut().find(|(_, p)| *p == path) {
            existing.0 = field.add(&existing.0, &coef);
        } else {
            terms.push((coef, path));
        }
    }
    terms.retain(|(c, _)| c != &field.zero());
    Ok(RelationExpr { terms })
}

/// Parses a rational or integer literal used in matrices and relations.
pub(crate) fn parse_entry(field: Field, s: &str) -> Result<Scalar> {
    field.reduce(&parse_rational(s.trim())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const A3: &str = "algebra A3\nfield Q\nvertices 1 2 3\narrow alpha 1 2\narrow beta 2 3\nend\n";

    #[test]
    fn parses_linear_quiver() {
        let p = parse_algebra(A3).unwrap();
        assert_eq!(p.quiver.vertices.len(), 3);
        assert_eq!(p.quiver.arrows.len(), 2);
        assert!(p.relations.is_empty());
    }

    #[test]
    fn parses_monomial_relation() {
        let text = A3.replace("end", "relation alpha*beta\nend");
        let p = parse_algebra(&text).unwrap();
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].terms, vec![(Field::Rationals.one(), vec![0, 1])]);
    }

    #[test]
    fn unknown_arrow_is_reported_with_position() {
        let text = A3.replace("end", "relation alpha*gamma\nend");
        match parse_algebra(&text) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!(line, 6);
                assert_eq!(column, 10);
                assert!(message.contains("gamma"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_non_parallel_terms() {
        let text = "algebra X\nvertices 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 1 2\narrow d 2 2\nrelation a*b - c*d\n";
        assert!(matches!(parse_algebra(text), Err(Error::Parse { line: 7, .. })));
    }

    #[test]
    fn rejects_duplicates() {
        assert!(parse_algebra("algebra X\nvertices 1 1\n").is_err());
        assert!(parse_algebra("algebra X\nvertices 1 2\narrow a 1 2\narrow a 2 1\n").is_err());
    }

    #[test]
    fn coefficients_and_round_trip() {
        let text = "algebra K\nfield F 5\nvertices 1\narrow x 1 1\narrow y 1 1\nrelation x*y - 2*y*x\nrelation -x*x + 1/2*y*y\n";
        let p = parse_algebra(text).unwrap();
        let f = Field::Prime(5);
        assert_eq!(p.relations[0].terms[1].0, f.from_int(-2));
        assert_eq!(p.relations[1].terms[0].0, f.from_int(-1));
        assert_eq!(p.relations[1].terms[1].0, f.from_int(3));
        let again = parse_algebra(&p.to_text()).unwrap();
        assert_eq!(again, p);
    }
}
