use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use super::{degree_descending, Algebra, AlgebraMorphism, BasisElement, MorphismKind, OrderedSpan, Product};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

fn check_vertex_set(a: &Algebra, eps: &[usize]) -> Result<Vec<usize>> {
    if eps.is_empty() {
        return Err(Error::input("idempotent vertex set must be nonempty"));
    }
    let mut sorted = eps.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&v) = sorted.iter().find(|&&v| v >= a.vertex_count()) {
        return Err(Error::input(format!("vertex index {v} out of range")));
    }
    Ok(sorted)
}

/// The subalgebra spanned by `keep` (which must contain the idempotents of
/// `vertices`), together with its inclusion. Fails with a witness product when
/// the span is not closed under multiplication.
pub fn subalgebra_on(
    a: &Arc<Algebra>,
    keep: &[usize],
    vertices: &[usize],
    name: impl Into<String>,
    kind: MorphismKind,
) -> Result<(Arc<Algebra>, AlgebraMorphism)> {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    let position: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let vpos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut basis = Vec::with_capacity(keep.len());
    for &i in &keep {
        let b = a.element(i);
        let (Some(&s), Some(&t)) = (vpos.get(&b.source), vpos.get(&b.target)) else {
            return Err(Error::input(format!("{} lies outside the chosen vertices", b.label)));
        };
        basis.push(BasisElement {
            source: s,
            target: t,
            degree: b.degree,
            label: b.label.clone(),
        });
    }
    let mut table: Vec<Vec<Product>> = vec![vec![Vec::new(); keep.len()]; keep.len()];
    for (x, &i) in keep.iter().enumerate() {
        for (y, &j) in keep.iter().enumerate() {
            let mut entry = Vec::new();
            for (k, c) in a.product(i, j) {
                match position.get(k) {
                    Some(&z) => entry.push((z, c.clone())),
                    None => {
                        return Err(Error::NotSplit(format!(
                            "{} * {} has the term {} outside the span",
                            a.element(i).label,
                            a.element(j).label,
                            a.element(*k).label
                        )))
                    }
                }
            }
            table[x][y] = entry;
        }
    }
    let idempotents = vertices
        .iter()
        .map(|&v| {
            position
                .get(&a.idempotent(v))
                .copied()
                .ok_or_else(|| Error::input("kept span misses a vertex idempotent"))
        })
        .collect::<Result<Vec<_>>>()?;
    let sub = Arc::new(Algebra::from_parts(
        name.into(),
        a.field(),
        vertices.iter().map(|&v| a.vertices()[v].clone()).collect(),
        basis,
        idempotents,
        table,
    )?);
    let mut images = Matrix::zeros(a.field(), keep.len(), a.dim());
    for (x, &i) in keep.iter().enumerate() {
        images.set(x, i, a.field().one());
    }
    let morphism = AlgebraMorphism {
        kind,
        source: sub.clone(),
        target: a.clone(),
        vertex_map: vertices.iter().map(|&v| Some(v)).collect(),
        images,
    };
    Ok((sub, morphism))
}

/// The corner algebra `eAe` for `e` the sum of the idempotents at `eps`, with its
/// (non-unital) inclusion into `A`.
pub fn corner_algebra(a: &Arc<Algebra>, eps: &[usize]) -> Result<(Arc<Algebra>, AlgebraMorphism)> {
    let eps = check_vertex_set(a, eps)?;
    let keep: Vec<usize> = (0..a.dim())
        .filter(|&i| eps.contains(&a.element(i).source) && eps.contains(&a.element(i).target))
        .collect();
    subalgebra_on(a, &keep, &eps, format!("{}_corner", a.name()), MorphismKind::CornerInclusion)
}

/// The quotient `A/AeA` with the projection `A -> A/AeA`. The quotient basis is the
/// set of basis elements of `A` that are not leading terms of the ideal.
pub fn quotient_by_idempotent_ideal(
    a: &Arc<Algebra>,
    eps: &[usize],
) -> Result<(Arc<Algebra>, AlgebraMorphism)> {
    let eps = check_vertex_set(a, eps)?;
    let f = a.field();
    let nv = a.vertex_count();

    // the ideal, block by block
    let mut spans: HashMap<(usize, usize), OrderedSpan> = HashMap::new();
    for s in 0..nv {
        for t in 0..nv {
            let block = a.block(s, t);
            let mut vectors = Vec::new();
            for &v in &eps {
                for &i in &a.block(s, v) {
                    for &j in &a.block(v, t) {
                        let p = a.product(i, j);
                        if !p.is_empty() {
                            vectors.push(a.dense(p));
                        }
                    }
                }
            }
            spans.insert((s, t), OrderedSpan::new(f, degree_descending(a, &block), &vectors));
        }
    }
    let mut complement: Vec<usize> = spans.values().flat_map(|s| s.free()).collect();
    complement.sort_unstable();
    let position: HashMap<usize, usize> = complement.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let kept_vertices: Vec<usize> = (0..nv).filter(|v| !eps.contains(v)).collect();
    let vpos: HashMap<usize, usize> = kept_vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();

    let project = |v: &[crate::linalg::Scalar], s: usize, t: usize| -> Product {
        let red = spans[&(s, t)].reduce(v);
        red.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (position[&k], c.clone()))
            .collect()
    };

    let basis: Vec<BasisElement> = complement
        .iter()
        .map(|&i| {
            let b = a.element(i);
            BasisElement {
                source: vpos[&b.source],
                target: vpos[&b.target],
                degree: b.degree,
                label: b.label.clone(),
            }
        })
        .collect();
    let n = complement.len();
    let mut table: Vec<Vec<Product>> = vec![vec![Vec::new(); n]; n];
    for (x, &i) in complement.iter().enumerate() {
        for (y, &j) in complement.iter().enumerate() {
            let p = a.product(i, j);
            if p.is_empty() {
                continue;
            }
            table[x][y] = project(&a.dense(p), a.element(i).source, a.element(j).target);
        }
    }
    let idempotents = kept_vertices.iter().map(|&v| position[&a.idempotent(v)]).collect();
    let quotient = Arc::new(Algebra::from_parts(
        format!("{}_quotient", a.name()),
        f,
        kept_vertices.iter().map(|&v| a.vertices()[v].clone()).collect(),
        basis,
        idempotents,
        table,
    )?);
    let mut images = Matrix::zeros(f, a.dim(), n);
    for i in 0..a.dim() {
        let b = a.element(i);
        for (k, c) in project(&a.unit_vector(i), b.source, b.target) {
            images.set(i, k, c);
        }
    }
    let morphism = AlgebraMorphism {
        kind: MorphismKind::Quotient,
        source: a.clone(),
        target: quotient.clone(),
        vertex_map: (0..nv).map(|v| vpos.get(&v).copied()).collect(),
        images,
    };
    Ok((quotient, morphism))
}

fn reverse_label(label: &str) -> String {
    let mut parts: Vec<&str> = label.split('*').collect();
    parts.reverse();
    parts.join("*")
}

/// The opposite algebra: same basis with sources and targets swapped and the
/// table transposed. Right modules over it are left modules over `A`.
pub fn opposite_algebra(a: &Arc<Algebra>) -> Result<(Arc<Algebra>, AlgebraMorphism)> {
    let n = a.dim();
    let basis = a
        .basis()
        .iter()
        .map(|b| BasisElement {
            source: b.target,
            target: b.source,
            degree: b.degree,
            label: reverse_label(&b.label),
        })
        .collect();
    let table = (0..n)
        .map(|i| (0..n).map(|j| a.product(j, i).clone()).collect())
        .collect();
    let name = match a.name().strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{}^op", a.name()),
    };
    let op = Arc::new(Algebra::from_parts(
        name,
        a.field(),
        a.vertices().to_vec(),
        basis,
        a.idempotents().to_vec(),
        table,
    )?);
    let morphism = AlgebraMorphism {
        kind: MorphismKind::Opposite,
        source: a.clone(),
        target: op.clone(),
        vertex_map: (0..a.vertex_count()).map(Some).collect(),
        images: Matrix::identity(a.field(), n),
    };
    Ok((op, morphism))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Arc<Algebra> {
        Algebra::from_text("algebra A3\nvertices 1 2 3\narrow alpha 1 2\narrow beta 2 3\n").unwrap()
    }

    fn labels(a: &Algebra) -> Vec<&str> {
        a.basis().iter().map(|b| b.label.as_str()).collect()
    }

    #[test]
    fn corner_of_everything_is_the_algebra() {
        let a = a3();
        let (c, m) = corner_algebra(&a, &[0, 1, 2]).unwrap();
        assert_eq!(c.dim(), a.dim());
        assert!(m.diagnostics().is_empty());
        assert_eq!(c.fingerprint(), a.fingerprint());
    }

    #[test]
    fn corners_of_a3() {
        let a = a3();
        let (c, m) = corner_algebra(&a, &[1, 2]).unwrap();
        assert_eq!(labels(&c), ["e2", "e3", "beta"]);
        assert!(m.diagnostics().is_empty());
        let (c, _) = corner_algebra(&a, &[0, 2]).unwrap();
        assert_eq!(labels(&c), ["e1", "e3", "alpha*beta"]);
        assert!(c.axiom_diagnostics().is_empty());
        assert!(corner_algebra(&a, &[]).is_err());
    }

    #[test]
    fn quotients_of_a3() {
        let a = a3();
        let (q, m) = quotient_by_idempotent_ideal(&a, &[1, 2]).unwrap();
        assert_eq!(labels(&q), ["e1"]);
        assert!(m.diagnostics().is_empty());
        let (q, m) = quotient_by_idempotent_ideal(&a, &[1]).unwrap();
        assert_eq!(labels(&q), ["e1", "e3"]);
        assert!(m.diagnostics().is_empty());
        let (q, _) = quotient_by_idempotent_ideal(&a, &[0, 1, 2]).unwrap();
        assert_eq!(q.dim(), 0);
        assert_eq!(q.vertex_count(), 0);
    }

    #[test]
    fn opposite_is_an_involution() {
        let a = a3();
        let (op, m) = opposite_algebra(&a).unwrap();
        assert!(m.diagnostics().is_empty());
        assert!(op.axiom_diagnostics().is_empty());
        let (back, _) = opposite_algebra(&op).unwrap();
        assert_eq!(back.fingerprint(), a.fingerprint());
        assert_eq!(back.name(), a.name());
    }

    #[test]
    fn opposite_of_a3_is_reversed_path_algebra() {
        let (op, _) = opposite_algebra(&a3()).unwrap();
        let rev = Algebra::from_text("algebra R\nvertices 1 2 3\narrow beta 3 2\narrow alpha 2 1\n").unwrap();
        // same dimension, same Peirce blocks, and the length-two path multiplies the same way
        assert_eq!(op.dim(), rev.dim());
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(op.block(u, v).len(), rev.block(u, v).len());
            }
        }
        let (b, al) = (op.basis_index("beta").unwrap(), op.basis_index("alpha").unwrap());
        let ba = op.basis_index("beta*alpha").unwrap();
        assert_eq!(op.product(b, al), &vec![(ba, op.field().one())]);
    }

    #[test]
    fn opposite_of_commutative_algebra_is_itself() {
        let k = Algebra::from_text("algebra D\nvertices 1\narrow x 1 1\nrelation x*x\n").unwrap();
        let (op, _) = opposite_algebra(&k).unwrap();
        assert_eq!(op.fingerprint(), k.fingerprint());
    }
}
