use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use super::RightModule;
use crate::algebra::{parse_entry, strip_comment, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{format_scalar, Field, Matrix, Scalar};

/// A module together with the name it was given in its file or on the command line.
#[derive(Clone, Debug)]
pub struct NamedModule {
    pub name: String,
    pub module: RightModule,
}

/// Parses a module file over `algebra`. Generators without a `map` line act as zero.
pub fn parse_module(text: &str, algebra: &Arc<Algebra>) -> Result<RightModule> {
    Ok(parse_module_named(text, algebra)?.module)
}

pub fn parse_module_named(text: &str, algebra: &Arc<Algebra>) -> Result<NamedModule> {
    let f = algebra.field();
    let mut name = None;
    let mut dims: Option<Vec<usize>> = None;
    let mut maps: HashMap<usize, Matrix> = HashMap::new();
    let mut ended = false;
    let mut lines = text.lines().enumerate().peekable();
    while let Some((i, raw)) = lines.next() {
        let line_no = i + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let col = line.len() - trimmed.len() + 1;
        if ended {
            return Err(Error::parse(line_no, col, "content after 'end'"));
        }
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        match keyword {
            "module" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [n, "over", alg] = words[..] else {
                    return Err(Error::parse(line_no, col, "expected 'module <name> over <algebra>'"));
                };
                if alg != algebra.name() {
                    return Err(Error::AlgebraMismatch(format!(
                        "module {n} is over {alg}, expected {}",
                        algebra.name()
                    )));
                }
                name = Some(n.to_string());
            }
            "dim" => {
                let parsed: std::result::Result<Vec<usize>, _> =
                    rest.split_whitespace().map(str::parse).collect();
                let d = parsed.map_err(|_| Error::parse(line_no, col, "dimensions must be nonnegative integers"))?;
                if d.len() != algebra.vertex_count() {
                    return Err(Error::parse(
                        line_no,
                        col,
                        format!("expected {} dimensions, found {}", algebra.vertex_count(), d.len()),
                    ));
                }
                dims = Some(d);
            }
            "map" => {
                let Some(d) = &dims else {
                    return Err(Error::parse(line_no, col, "'map' before 'dim'"));
                };
                let rest = rest.trim_start();
                let (label, literal) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let Some((_, s, t, g)) = algebra.arrows().into_iter().find(|a| a.0 == label) else {
                    return Err(Error::parse(line_no, col, format!("unknown arrow '{label}'")));
                };
                // a matrix literal may run over several lines
                let mut literal = literal.to_string();
                while depth(&literal) > 0 {
                    let Some((_, more)) = lines.next() else {
                        return Err(Error::parse(line_no, col, "unterminated matrix literal"));
                    };
                    literal.push(' ');
                    literal.push_str(strip_comment(more));
                }
                let m = parse_matrix(f, &literal, d[s], d[t])
                    .map_err(|msg| Error::parse(line_no, col, format!("map {label}: {msg}")))?;
                if maps.insert(g, m).is_some() {
                    return Err(Error::parse(line_no, col, format!("duplicate map for '{label}'")));
                }
            }
            "end" => ended = true,
            other => return Err(Error::parse(line_no, col, format!("unknown keyword '{other}'"))),
        }
    }
    let name = name.ok_or_else(|| Error::parse(1, 1, "missing 'module <name> over <algebra>' header"))?;
    let dims = dims.ok_or_else(|| Error::parse(1, 1, "missing 'dim' line"))?;
    let module = RightModule::from_generators(algebra.clone(), dims, &maps)?;
    Ok(NamedModule { name, module })
}

fn depth(s: &str) -> i64 {
    s.chars()
        .map(|c| match c {
            '[' => 1,
            ']' => -1,
            _ => 0,
        })
        .sum()
}

/// Parses `[[a, b], [c, d]]` into a `rows x cols` matrix. An empty matrix may be
/// written `[]`.
fn parse_matrix(f: Field, s: &str, rows: usize, cols: usize) -> std::result::Result<Matrix, String> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or("matrix literal must be enclosed in brackets")?
        .trim();
    let mut parsed: Vec<Vec<Scalar>> = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or("expected '[' starting a row")?;
        let close = body.find(']').ok_or("unclosed row")?;
        let row = body[..close].trim();
        let entries = if row.is_empty() {
            Vec::new()
        } else {
            row.split(',')
                .map(|e| parse_entry(f, e).map_err(|err| err.to_string()))
                .collect::<std::result::Result<Vec<_>, _>>()?
        };
        parsed.push(entries);
        rest = body[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    if rows == 0 || cols == 0 {
        // allow both [] and a list of empty rows
        let ok = parsed.is_empty() || (parsed.len() == rows && parsed.iter().all(Vec::is_empty));
        if !ok {
            return Err(format!("expected a {rows} x {cols} matrix"));
        }
        return Ok(Matrix::zeros(f, rows, cols));
    }
    if parsed.len() != rows || parsed.iter().any(|r| r.len() != cols) {
        return Err(format!("expected a {rows} x {cols} matrix"));
    }
    Ok(Matrix::from_rows(f, cols, parsed))
}

fn format_matrix(m: &Matrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return "[]".to_string();
    }
    let rows: Vec<String> = m
        .row_vecs()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(format_scalar).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Serializes a module in the file format read by [`parse_module`]. Zero maps
/// are omitted.
pub fn module_to_text(name: &str, m: &RightModule) -> String {
    let a = m.algebra();
    let mut out = String::new();
    let _ = writeln!(out, "module {name} over {}", a.name());
    let dims: Vec<String> = m.dims().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "dim {}", dims.join(" "));
    for (label, _, _, g) in a.arrows() {
        let act = m.action(g);
        if !act.is_zero() {
            let _ = writeln!(out, "map {label} {}", format_matrix(act));
        }
    }
    out.push_str("end\n");
    out
}

fn vertex(a: &Algebra, label: &str) -> Result<usize> {
    a.vertex_index(label.trim())
        .ok_or_else(|| Error::input(format!("unknown vertex '{}'", label.trim())))
}

/// Resolves `simple:v`, `proj:v`, `inj:v` and `thin:v1,v2,...`, with vertices
/// given by name. Returns `None` when `spec` is not of that form.
pub fn resolve_named(spec: &str, algebra: &Arc<Algebra>) -> Result<Option<RightModule>> {
    let Some((kind, arg)) = spec.split_once(':') else {
        return Ok(None);
    };
    let a = algebra.clone();
    let m = match kind {
        "simple" => RightModule::simple(a, vertex(algebra, arg)?)?,
        "proj" => RightModule::projective(a, vertex(algebra, arg)?)?,
        "inj" => RightModule::injective(a, vertex(algebra, arg)?)?,
        "thin" => {
            let support = arg
                .split(',')
                .map(|v| vertex(algebra, v))
                .collect::<Result<Vec<_>>>()?;
            RightModule::thin(a, &support)?
        }
        _ => return Ok(None),
    };
    Ok(Some(m))
}

/// A named constructor or the path of a module file.
pub fn load_module(spec: &str, algebra: &Arc<Algebra>) -> Result<NamedModule> {
    if let Some(module) = resolve_named(spec, algebra)? {
        return Ok(NamedModule {
            name: spec.to_string(),
            module,
        });
    }
    let text = std::fs::read_to_string(Path::new(spec))?;
    parse_module_named(&text, algebra)
}

/// Parses a sequence file: one module per line, each a named constructor or a
/// module file path. Relative paths are taken from `base`. Blank lines and `#`
/// comments are skipped.
pub fn parse_sequence(text: &str, algebra: &Arc<Algebra>, base: Option<&Path>) -> Result<Vec<NamedModule>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let spec = match (resolve_named(line, algebra), base) {
            (Ok(None), Some(dir)) if Path::new(line).is_relative() => dir.join(line).to_string_lossy().into_owned(),
            _ => line.to_string(),
        };
        let m = load_module(&spec, algebra).map_err(|e| Error::parse(i + 1, 1, e.to_string()))?;
        out.push(m);
    }
    Ok(out)
}

/// Reads a sequence file from disk; see [`parse_sequence`].
pub fn load_sequence(path: &Path, algebra: &Arc<Algebra>) -> Result<Vec<NamedModule>> {
    let text = std::fs::read_to_string(path)?;
    parse_sequence(&text, algebra, path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::iso_test;

    #[test]
    fn sequence_lines() {
        let a = a3();
        let seq = parse_sequence("# row\nthin:3\n\nsimple:1  # trailing\n", &a, None).unwrap();
        assert_eq!(seq.len(), 2);
        assert_eq!(seq[0].name, "thin:3");
        assert_eq!(seq[1].module.dims(), &[1, 0, 0]);
        assert!(matches!(parse_sequence("thin:9\n", &a, None), Err(Error::Parse { line: 1, .. })));
    }
    use crate::module::tests::{a3, a3_ab};

    #[test]
    fn parses_thin_module() {
        let a = a3();
        let text = "module M over A3\ndim 1 1 0\nmap alpha [[1]]\nend\n";
        let m = parse_module(text, &a).unwrap();
        let thin = RightModule::thin(a.clone(), &[0, 1]).unwrap();
        assert!(iso_test(&m, &thin).unwrap().is_iso());
    }

    #[test]
    fn round_trip() {
        let a = a3();
        for spec in ["proj:1", "inj:3", "thin:1,2,3", "simple:2"] {
            let m = resolve_named(spec, &a).unwrap().unwrap();
            let text = module_to_text("X", &m);
            let back = parse_module(&text, &a).unwrap();
            assert_eq!(back.dims(), m.dims());
            assert_eq!(back.actions(), m.actions());
        }
    }

    #[test]
    fn multiline_matrix_and_fractions() {
        let a = a3();
        let text = "module M over A3\ndim 2 1 0\nmap alpha [[1/2],\n  [-3]]\n";
        let m = parse_module(text, &a).unwrap();
        assert_eq!(m.dims(), &[2, 1, 0]);
    }

    #[test]
    fn relation_violation_is_rejected() {
        let a = a3_ab();
        let text = "module M over A\ndim 1 1 1\nmap alpha [[1]]\nmap beta [[1]]\nend\n";
        let err = parse_module(text, &a).unwrap_err();
        assert!(matches!(err, Error::ModuleAxiom(_)), "{err}");
    }

    #[test]
    fn errors_carry_positions() {
        let a = a3();
        let err = parse_module("module M over A3\ndim 1 1 0\nmap gamma [[1]]\n", &a).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_module("module M over A3\ndim 1 1 0\nmap alpha [[1, 2]]\n", &a).unwrap_err();
        assert!(err.to_string().contains("1 x 1"), "{err}");
        let err = parse_module("module M over B\ndim 1 1 0\n", &a).unwrap_err();
        assert!(matches!(err, Error::AlgebraMismatch(_)));
        assert!(resolve_named("proj:9", &a).is_err());
        assert!(resolve_named("fancy:1", &a).unwrap().is_none());
    }
}
