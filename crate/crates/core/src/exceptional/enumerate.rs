use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{higher_ext, is_exceptional, is_exceptional_sequence};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::module::{brick_report, hom_dim, iso_test, RightModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    /// field the representations are enumerated over; must be finite
    pub field: Field,
    /// largest dimension at each vertex
    pub dim_bound: usize,
    /// largest number of candidate representations examined
    pub budget: usize,
    /// Ext degrees listed when certifying exceptionality
    pub max_n: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            field: Field::Prime(2),
            dim_bound: 1,
            budget: 1 << 20,
            max_n: 6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BrickEnumeration {
    /// pairwise non-isomorphic bricks over the input algebra's field, in
    /// canonical order (dimension vector, then entries)
    pub bricks: Vec<RightModule>,
    /// false when the budget cut the search short
    pub complete: bool,
    /// bricks found over the enumeration field that did not lift to a brick
    pub lost_on_lift: usize,
}

/// Dimension vectors with entries in `0..=bound`, lexicographically, skipping zero.
fn dim_vectors(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=bound).map(move |d| {
                    let mut p = prefix.clone();
                    p.push(d);
                    p
                })
            })
            .collect();
    }
    out.retain(|d| d.iter().any(|&x| x > 0));
    out
}

/// All representations with dimension vector `dims`, in lexicographic order of
/// the generator entries, that satisfy the relations.
fn representations(a: &Arc<Algebra>, dims: &[usize], elements: &[Scalar]) -> Vec<RightModule> {
    let f = a.field();
    let gens = a.arrows();
    let shapes: Vec<(usize, usize)> = gens.iter().map(|g| (dims[g.1], dims[g.2])).collect();
    let slots: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let q = elements.len();
    let total = q.checked_pow(slots as u32).unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let mut digits = vec![0usize; slots];
    for code in 0..total {
        // most significant digit first so the order is lexicographic in entries
        let mut rest = code;
        for d in digits.iter_mut().rev() {
            *d = rest % q;
            rest /= q;
        }
        let mut pos = 0;
        let mut map = HashMap::new();
        for (g, &(r, c)) in gens.iter().zip(&shapes) {
            let rows = (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| {
                            pos += 1;
                            elements[digits[pos - 1]].clone()
                        })
                        .collect()
                })
                .collect();
            map.insert(g.3, Matrix::from_rows(f, c, rows));
        }
        if let Ok(m) = RightModule::from_generators(a.clone(), dims.to_vec(), &map) {
            out.push(m);
        }
    }
    out
}

fn candidate_count(a: &Algebra, dims: &[usize], q: usize) -> usize {
    let slots: usize = a.arrows().iter().map(|g| dims[g.1] * dims[g.2]).sum();
    q.checked_pow(slots as u32).unwrap_or(usize::MAX)
}

/// Enumerates bricks with every vertex dimension at most `cfg.dim_bound`, over
/// `cfg.field`, up to isomorphism; the survivors are lifted back to the field
/// of `algebra` and checked again there.
pub fn enumerate_bricks(algebra: &Arc<Algebra>, cfg: &EnumerationConfig) -> Result<BrickEnumeration> {
    let elements = cfg
        .field
        .elements()
        .ok_or_else(|| Error::Field("enumeration needs a finite field".into()))?;
    if cfg.budget == 0 {
        return Err(Error::input("enumeration budget must be positive"));
    }
    let over = if algebra.field() == cfg.field {
        algebra.clone()
    } else {
        Arc::new(algebra.over_field(cfg.field)?)
    };
    let mut vectors = Vec::new();
    let mut spent = 0usize;
    let mut complete = true;
    for d in dim_vectors(algebra.vertex_count(), cfg.dim_bound) {
        let c = candidate_count(&over, &d, elements.len());
        if spent.saturating_add(c) > cfg.budget {
            complete = false;
            break;
        }
        spent += c;
        vectors.push(d);
    }
    let per_vector: Vec<Vec<RightModule>> = vectors
        .par_iter()
        .map(|d| -> Result<Vec<RightModule>> {
            let mut classes: Vec<RightModule> = Vec::new();
            for m in representations(&over, d, &elements) {
                if !brick_report(&m).is_brick {
                    continue;
                }
                let mut new = true;
                for c in &classes {
                    if iso_test(c, &m)?.is_iso() {
                        new = false;
                        break;
                    }
                }
                if new {
                    classes.push(m);
                }
            }
            Ok(classes)
        })
        .collect::<Result<_>>()?;
    let mut bricks = Vec::new();
    let mut lost_on_lift = 0;
    for m in per_vector.into_iter().flatten() {
        let lifted = if Arc::ptr_eq(&over, algebra) {
            Some(m)
        } else {
            m.transport(algebra.clone()).ok().filter(|l| brick_report(l).is_brick)
        };
        match lifted {
            Some(l) => bricks.push(l),
            None => lost_on_lift += 1,
        }
    }
    Ok(BrickEnumeration {
        bricks,
        complete,
        lost_on_lift,
    })
}

#[derive(Clone, Debug)]
pub struct CesEnumeration {
    /// exceptional modules among the enumerated bricks, in canonical order
    pub modules: Vec<RightModule>,
    /// each sequence lists indices into `modules`
    pub sequences: Vec<Vec<usize>>,
    pub complete: bool,
    /// every emitted sequence passed the independent sequence check
    pub reverified: bool,
}

impl CesEnumeration {
    pub fn sequence(&self, k: usize) -> Vec<RightModule> {
        self.sequences[k].iter().map(|&i| self.modules[i].clone()).collect()
    }
}

/// Complete exceptional sequences built from the enumerated bricks.
///
/// `follows[x][y]` records that `y` may come after `x`: `Hom(y, x) = 0` and
/// `Ext^n(y, x) = 0` for all `n >= 1`, with a certificate. Sequences of length
/// equal to the number of vertices are found by backtracking and listed in
/// lexicographic order of module indices.
pub fn enumerate_ces(algebra: &Arc<Algebra>, cfg: &EnumerationConfig) -> Result<CesEnumeration> {
    let found = enumerate_bricks(algebra, cfg)?;
    let verdicts: Vec<bool> = found
        .bricks
        .par_iter()
        .map(|m| is_exceptional(m, cfg.max_n).map(|r| r.certified()))
        .collect::<Result<_>>()?;
    let modules: Vec<RightModule> = found
        .bricks
        .into_iter()
        .zip(verdicts)
        .filter_map(|(m, ok)| ok.then_some(m))
        .collect();
    let k = modules.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|x| (0..k).map(move |y| (x, y))).collect();
    let flags: Vec<bool> = pairs
        .par_iter()
        .map(|&(x, y)| -> Result<bool> {
            if x == y {
                return Ok(false);
            }
            if hom_dim(&modules[y], &modules[x])? != 0 {
                return Ok(false);
            }
            let (witness, certainty) = higher_ext(&modules[y], &modules[x], cfg.max_n)?;
            Ok(witness.is_none() && certainty == super::Certainty::Certified)
        })
        .collect::<Result<_>>()?;
    let follows = |x: usize, y: usize| flags[x * k + y];

    let r = algebra.vertex_count();
    let mut sequences = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn extend(
        k: usize,
        r: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        follows: &dyn Fn(usize, usize) -> bool,
    ) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        for y in 0..k {
            if current.iter().all(|&x| follows(x, y)) {
                current.push(y);
                extend(k, r, current, out, follows);
                current.pop();
            }
        }
    }
    if r > 0 {
        extend(k, r, &mut current, &mut sequences, &follows);
    }
    let reverified = sequences
        .par_iter()
        .map(|s| {
            let seq: Vec<RightModule> = s.iter().map(|&i| modules[i].clone()).collect();
            is_exceptional_sequence(&seq, cfg.max_n).map(|rep| rep.certified() && rep.complete)
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|ok| ok);
    Ok(CesEnumeration {
        modules,
        sequences,
        complete: found.complete,
        reverified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exceptional::tests::{a3, a3_mod_alpha, thin};

    fn supports(ms: &[RightModule]) -> Vec<Vec<usize>> {
        ms.iter()
            .map(|m| (0..m.dims().len()).filter(|&v| m.dims()[v] > 0).collect())
            .collect()
    }

    #[test]
    fn dimension_vectors() {
        assert_eq!(dim_vectors(2, 1), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(dim_vectors(1, 2).len(), 2);
    }

    #[test]
    fn bricks_of_a3() {
        let out = enumerate_bricks(&a3(), &EnumerationConfig::default()).unwrap();
        assert!(out.complete);
        assert_eq!(out.lost_on_lift, 0);
        let mut s = supports(&out.bricks);
        s.sort();
        assert_eq!(s, vec![vec![0], vec![0, 1], vec![0, 1, 2], vec![1], vec![1, 2], vec![2]]);
        assert_eq!(out.bricks[0].field(), Field::Rationals);
    }

    #[test]
    fn bricks_of_quotient() {
        let out = enumerate_bricks(&a3_mod_alpha(), &EnumerationConfig::default()).unwrap();
        let mut s = supports(&out.bricks);
        s.sort();
        assert_eq!(s, vec![vec![0], vec![1], vec![1, 2], vec![2]]);
    }

    #[test]
    fn ces_counts() {
        let cfg = EnumerationConfig::default();
        let a = enumerate_ces(&a3_mod_alpha(), &cfg).unwrap();
        assert_eq!(a.sequences.len(), 9);
        assert!(a.reverified);
        let r = enumerate_ces(&a3(), &cfg).unwrap();
        assert_eq!(r.sequences.len(), 16);
        assert!(r.reverified);
        let k = Algebra::from_text("algebra K\nvertices 1\n").unwrap();
        let one = enumerate_ces(&k, &cfg).unwrap();
        assert_eq!(one.sequences, vec![vec![0]]);
    }

    #[test]
    fn budget_cuts_search() {
        let cfg = EnumerationConfig {
            budget: 3,
            ..EnumerationConfig::default()
        };
        let out = enumerate_bricks(&a3(), &cfg).unwrap();
        assert!(!out.complete);
        assert!(out.bricks.len() < 6);
    }

    #[test]
    fn rationals_cannot_be_enumerated() {
        let cfg = EnumerationConfig {
            field: Field::Rationals,
            ..EnumerationConfig::default()
        };
        assert!(matches!(enumerate_bricks(&a3(), &cfg), Err(Error::Field(_))));
    }

    #[test]
    fn larger_bound_adds_no_bricks_on_a3() {
        let cfg = EnumerationConfig {
            dim_bound: 2,
            ..EnumerationConfig::default()
        };
        let out = enumerate_bricks(&a3(), &cfg).unwrap();
        assert_eq!(out.bricks.len(), 6);
        let _ = thin(&a3(), &[0]);
    }
}
