use std::collections::HashMap;

use num_traits::Zero;

use super::parse::{Presentation, RelationExpr};
use super::{Algebra, BasisElement, Product};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

pub const DEFAULT_MAX_LEN: usize = 64;

/// Hard cap on the number of paths considered, so that quivers with several
/// loops and too few relations fail fast instead of exhausting memory.
const PATH_CAP: usize = 20_000;

type Path = Vec<usize>;

/// All nonzero-length paths, bucketed by length, each bucket in lexicographic
/// order of arrow indices.
struct Paths {
    by_len: Vec<Vec<Path>>,
    ends: Vec<Vec<(usize, usize)>>,
}

impl Paths {
    fn new(p: &Presentation) -> Self {
        let arrows: Vec<Path> = (0..p.quiver.arrows.len()).map(|a| vec![a]).collect();
        let ends = p.quiver.arrows.iter().map(|a| (a.source, a.target)).collect();
        Paths {
            by_len: vec![Vec::new(), arrows],
            ends: vec![Vec::new(), ends],
        }
    }

    fn extend_to(&mut self, p: &Presentation, len: usize) -> usize {
        while self.by_len.len() <= len {
            let last = self.by_len.len() - 1;
            let mut next = Vec::new();
            let mut next_ends = Vec::new();
            for (path, &(s, t)) in self.by_len[last].iter().zip(&self.ends[last]) {
                for (a, arrow) in p.quiver.arrows.iter().enumerate() {
                    if arrow.source == t {
                        let mut q = path.clone();
                        q.push(a);
                        next.push(q);
                        next_ends.push((s, arrow.target));
                    }
                }
            }
            self.by_len.push(next);
            self.ends.push(next_ends);
        }
        self.by_len[1..=len].iter().map(Vec::len).sum()
    }

    /// Paths of the given length ending at `v`, plus the trivial path when `len == 0`.
    fn ending_at(&self, v: usize, len: usize) -> Vec<Path> {
        if len == 0 {
            return vec![Vec::new()];
        }
        self.by_len[len]
            .iter()
            .zip(&self.ends[len])
            .filter(|(_, e)| e.1 == v)
            .map(|(p, _)| p.clone())
            .collect()
    }

    fn starting_at(&self, v: usize, len: usize) -> Vec<Path> {
        if len == 0 {
            return vec![Vec::new()];
        }
        self.by_len[len]
            .iter()
            .zip(&self.ends[len])
            .filter(|(_, e)| e.0 == v)
            .map(|(p, _)| p.clone())
            .collect()
    }
}

/// Span of `{u r v}` over relations `r` and paths `u`, `v` subject to a length filter,
/// with each product truncated to paths shorter than `keep_below`.
fn ideal_rows(
    p: &Presentation,
    paths: &Paths,
    column: &HashMap<Path, usize>,
    ncols: usize,
    allow: impl Fn(&RelationExpr, usize) -> bool,
    budget: usize,
    keep_below: usize,
) -> Matrix {
    let f = p.field;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in &p.relations {
        let (s, t) = p.quiver.path_endpoints(&r.terms[0].1).expect("validated relation");
        for a in 0..=budget {
            for b in 0..=budget - a {
                if !allow(r, a + b) {
                    continue;
                }
                for u in paths.ending_at(s, a) {
                    for v in paths.starting_at(t, b) {
                        let mut row = vec![f.zero(); ncols];
                        let mut nonzero = false;
                        for (c, path) in &r.terms {
                            let len = a + path.len() + b;
                            if len >= keep_below {
                                continue;
                            }
                            let mut full = u.clone();
                            full.extend(path);
                            full.extend(&v);
                            let col = column[&full];
                            row[col] = f.add(&row[col], c);
                            nonzero = true;
                        }
                        if nonzero {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    Matrix::from_rows(f, ncols, rows)
}

/// Columns are ordered so that larger paths (longer, then lexicographically later)
/// come first; reduced echelon pivots are then the leading terms.
fn column_index(paths: &Paths, max_len: usize) -> (Vec<Path>, HashMap<Path, usize>) {
    let ascending: Vec<Path> = paths.by_len[1..=max_len].iter().flatten().cloned().collect();
    let n = ascending.len();
    let mut column = HashMap::with_capacity(n);
    for (i, path) in ascending.iter().enumerate() {
        column.insert(path.clone(), n - 1 - i);
    }
    (ascending, column)
}

fn validate(p: &Presentation) -> Result<()> {
    for r in &p.relations {
        if r.terms.is_empty() {
            return Err(Error::NotAdmissible("relation with no nonzero terms".into()));
        }
        if r.min_len() < 2 {
            return Err(Error::NotAdmissible(format!(
                "relation term of length {} (terms must have length at least 2)",
                r.min_len()
            )));
        }
    }
    Ok(())
}

/// Compiles a quiver with relations into a structure-constant algebra.
///
/// The ideal is eliminated length by length until every path of some length
/// `k` lies in it. The basis is the set of non-leading paths of length below
/// `k` together with the vertex idempotents.
pub fn build_algebra(p: &Presentation, max_len: usize) -> Result<Algebra> {
    validate(p)?;
    let mut paths = Paths::new(p);
    let mut stable = None;
    for l in 1..=max_len {
        let total = paths.extend_to(p, l);
        if total > PATH_CAP {
            return Err(Error::NotFiniteDimensional(l));
        }
        let (_, column) = column_index(&paths, l);
        let ncols = column.len();
        let rows = ideal_rows(p, &paths, &column, ncols, |r, extra| extra + r.max_len() <= l, l, usize::MAX);
        let rref = rows.rref();
        // a path lies in the ideal iff its echelon row has no other nonzero entry
        let mut in_ideal = vec![false; ncols];
        for (i, &c) in rref.pivots.iter().enumerate() {
            in_ideal[c] = rref.matrix.row(i).iter().filter(|x| !x.is_zero()).count() == 1;
        }
        let found = (1..=l).find(|&k| paths.by_len[k].iter().all(|q| in_ideal[column[q]]));
        if let Some(k) = found {
            stable = Some(k);
            break;
        }
    }
    let k = stable.ok_or(Error::NotFiniteDimensional(max_len))?;
    finalize(p, &paths, k)
}

fn finalize(p: &Presentation, paths: &Paths, k: usize) -> Result<Algebra> {
    let f = p.field;
    let top = k - 1;
    let (ascending, column) = column_index(paths, top);
    let ncols = ascending.len();
    let rows = ideal_rows(
        p,
        paths,
        &column,
        ncols,
        |r, extra| extra + r.min_len() < k,
        top,
        k,
    );
    let rref = rows.rref();
    let mut pivot_row: HashMap<usize, usize> = HashMap::new();
    for (i, &c) in rref.pivots.iter().enumerate() {
        pivot_row.insert(c, i);
    }

    let nv = p.quiver.vertices.len();
    let mut basis: Vec<BasisElement> = (0..nv)
        .map(|v| BasisElement {
            source: v,
            target: v,
            degree: 0,
            label: format!("e{}", p.quiver.vertices[v]),
        })
        .collect();
    let mut basis_paths: Vec<Path> = vec![Vec::new(); nv];
    let mut basis_of_column: HashMap<usize, usize> = HashMap::new();
    for path in &ascending {
        let col = column[path];
        if pivot_row.contains_key(&col) {
            continue;
        }
        let (s, t) = p.quiver.path_endpoints(path).expect("enumerated path");
        let names: Vec<&str> = path.iter().map(|&a| p.quiver.arrows[a].name.as_str()).collect();
        basis_of_column.insert(col, basis.len());
        basis.push(BasisElement {
            source: s,
            target: t,
            degree: path.len(),
            label: names.join("*"),
        });
        basis_paths.push(path.clone());
    }

    // normal form of a path as a sparse combination of basis elements
    let normal_form = |path: &Path| -> Product {
        if path.len() >= k {
            return Vec::new();
        }
        let col = column[path];
        if let Some(&b) = basis_of_column.get(&col) {
            return vec![(b, f.one())];
        }
        let row = pivot_row[&col];
        let mut out = Vec::new();
        for (c, x) in rref.matrix.row(row).iter().enumerate() {
            if c != col && !x.is_zero() {
                out.push((basis_of_column[&c], f.neg(x)));
            }
        }
        out.sort_by_key(|t| t.0);
        out
    };

    let n = basis.len();
    let mut table: Vec<Vec<Product>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if basis[i].target != basis[j].source {
                continue;
            }
            table[i][j] = if i < nv {
                vec![(j, f.one())]
            } else if j < nv {
                vec![(i, f.one())]
            } else {
                let mut q = basis_paths[i].clone();
                q.extend(&basis_paths[j]);
                normal_form(&q)
            };
        }
    }
    Algebra::from_parts(
        p.name.clone(),
        f,
        p.quiver.vertices.clone(),
        basis,
        (0..nv).collect(),
        table,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_algebra;

    fn build(text: &str) -> Result<Algebra> {
        build_algebra(&parse_algebra(text).unwrap(), DEFAULT_MAX_LEN)
    }

    const A3: &str = "algebra A3\nvertices 1 2 3\narrow alpha 1 2\narrow beta 2 3\n";
    const CYCLE: &str = "algebra C\nvertices 1 2 3\narrow alpha 1 2\narrow beta 2 3\narrow gamma 3 1\n";

    fn labels(a: &Algebra) -> Vec<String> {
        a.basis().iter().map(|b| b.label.clone()).collect()
    }

    #[test]
    fn path_algebra_of_a3() {
        let a = build(A3).unwrap();
        assert_eq!(labels(&a), ["e1", "e2", "e3", "alpha", "beta", "alpha*beta"]);
        assert!(a.axiom_diagnostics().is_empty());
    }

    #[test]
    fn monomial_relation_removes_one_path() {
        let a = build(&format!("{A3}relation alpha*beta\n")).unwrap();
        assert_eq!(a.dim(), 5);
    }

    #[test]
    fn radical_square_zero_cycle() {
        let text = format!("{CYCLE}relation alpha*beta\nrelation beta*gamma\nrelation gamma*alpha\n");
        let a = build(&text).unwrap();
        assert_eq!(labels(&a), ["e1", "e2", "e3", "alpha", "beta", "gamma"]);
    }

    #[test]
    fn cycle_with_one_relation() {
        let a = build(&format!("{CYCLE}relation alpha*beta\n")).unwrap();
        assert_eq!(a.dim(), 9);
        assert!(labels(&a).contains(&"beta*gamma*alpha".to_string()));
    }

    #[test]
    fn commutative_square() {
        let text = "algebra S\nvertices 1 2 3 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrelation a*b - c*d\n";
        let a = build(text).unwrap();
        assert_eq!(a.dim(), 4 + 4 + 1);
        assert!(a.axiom_diagnostics().is_empty());
    }

    #[test]
    fn unbounded_cycle_fails() {
        let err = build_algebra(&parse_algebra(CYCLE).unwrap(), 10).unwrap_err();
        assert!(matches!(err, Error::NotFiniteDimensional(10)));
    }

    #[test]
    fn short_relation_rejected() {
        let err = build(&format!("{A3}relation alpha\n")).unwrap_err();
        assert!(matches!(err, Error::NotAdmissible(_)));
    }

    #[test]
    fn nonhomogeneous_relation() {
        // x^2 = y^3 at a single vertex with x^3 = 0 and xy = yx = 0 gives a finite algebra
        let text = "algebra N\nvertices 1\narrow x 1 1\narrow y 1 1\nrelation x*x - y*y*y\nrelation x*y\nrelation y*x\nrelation y*y*y*y\n";
        let a = build(text).unwrap();
        assert!(a.axiom_diagnostics().is_empty());
        assert_eq!(labels(&a), ["e1", "x", "y", "x*x", "y*y"]);
    }
}
