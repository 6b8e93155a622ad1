//! Exceptional modules and sequences, enumeration of bricks and complete
//! exceptional sequences, and checkers for the transfer theorems along split
//! extensions and recollements.

mod enumerate;
mod theorems;

use serde::{Serialize, Serializer};

pub use enumerate::{enumerate_bricks, enumerate_ces, BrickEnumeration, CesEnumeration, EnumerationConfig};
pub use theorems::{
    check_recollement_theorem, check_split_theorem, Hypothesis, Implication, RecollementTheoremReport,
    SplitTheoremReport,
};

use crate::error::Result;
use crate::module::{brick_report, ext_dims, hom_dim, RightModule};

/// Default number of Ext degrees listed when checking exceptionality.
pub const DEFAULT_MAX_N: usize = 24;

/// How far a verdict reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    /// Every Ext condition is covered by a finite projective dimension or a
    /// periodicity certificate.
    Certified,
    /// Some resolution was truncated; Ext conditions hold up to this degree only.
    UpToBound(usize),
}

impl Certainty {
    fn and(self, other: Certainty) -> Certainty {
        match (self, other) {
            (Certainty::Certified, c) | (c, Certainty::Certified) => c,
            (Certainty::UpToBound(a), Certainty::UpToBound(b)) => Certainty::UpToBound(a.min(b)),
        }
    }
}

impl std::fmt::Display for Certainty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certainty::Certified => write!(f, "certified"),
            Certainty::UpToBound(n) => write!(f, "up-to-bound({n})"),
        }
    }
}

impl Serialize for Certainty {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A violated condition. Positions `i < j` are 1-based places in a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: String,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub n: Option<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalReport {
    pub subject: String,
    pub verdict: bool,
    pub certainty: Certainty,
    pub complete: bool,
    pub witnesses: Vec<Witness>,
    /// functor images in the module file format, when the report is about them
    pub images: Vec<String>,
}

impl ExceptionalReport {
    /// True with a certificate covering every `n`.
    pub fn certified(&self) -> bool {
        self.verdict && self.certainty == Certainty::Certified
    }
}

/// Short description of a module for report subjects.
pub fn describe(m: &RightModule) -> String {
    let d: Vec<String> = m.dims().iter().map(usize::to_string).collect();
    format!("[{}]", d.join(","))
}

/// `Ext^n(M, N) = 0` for all `n >= 1`, with the first nonzero degree as witness.
fn higher_ext(m: &RightModule, n: &RightModule, n_max: usize) -> Result<(Option<(usize, usize)>, Certainty)> {
    let table = ext_dims(m, n, n_max)?;
    let certainty = match table.higher_vanish {
        Some(_) => Certainty::Certified,
        None => Certainty::UpToBound(n_max),
    };
    Ok((table.witness, certainty))
}

fn exceptional_witnesses(m: &RightModule, n_max: usize, at: Option<usize>) -> Result<(Vec<Witness>, Certainty)> {
    let mut out = Vec::new();
    let end = brick_report(m).end_dim;
    if end != 1 {
        out.push(Witness {
            condition: "E1".into(),
            i: at,
            j: None,
            n: None,
            dim: end,
        });
    }
    let (ext, certainty) = higher_ext(m, m, n_max)?;
    if let Some((n, dim)) = ext {
        out.push(Witness {
            condition: "E2".into(),
            i: at,
            j: None,
            n: Some(n),
            dim,
        });
    }
    Ok((out, certainty))
}

/// `End(M) = K` and `Ext^n(M, M) = 0` for every `n >= 1`.
pub fn is_exceptional(m: &RightModule, n_max: usize) -> Result<ExceptionalReport> {
    let (witnesses, certainty) = exceptional_witnesses(m, n_max, None)?;
    Ok(ExceptionalReport {
        subject: format!("module {}", describe(m)),
        verdict: witnesses.is_empty(),
        certainty,
        complete: false,
        witnesses,
        images: Vec::new(),
    })
}

/// Every member is exceptional and, for positions `i < j`, `Hom(M_j, M_i) = 0`
/// and `Ext^n(M_j, M_i) = 0` for all `n >= 1`.
pub fn is_exceptional_sequence(seq: &[RightModule], n_max: usize) -> Result<ExceptionalReport> {
    let mut witnesses = Vec::new();
    let mut certainty = Certainty::Certified;
    for (k, m) in seq.iter().enumerate() {
        crate::module::same_algebra(seq[0].algebra(), m.algebra())?;
        let (w, c) = exceptional_witnesses(m, n_max, Some(k + 1))?;
        witnesses.extend(w);
        certainty = certainty.and(c);
    }
    for j in 0..seq.len() {
        for i in 0..j {
            let h = hom_dim(&seq[j], &seq[i])?;
            if h != 0 {
                witnesses.push(Witness {
                    condition: "E1'".into(),
                    i: Some(i + 1),
                    j: Some(j + 1),
                    n: None,
                    dim: h,
                });
            }
            let (ext, c) = higher_ext(&seq[j], &seq[i], n_max)?;
            certainty = certainty.and(c);
            if let Some((n, dim)) = ext {
                witnesses.push(Witness {
                    condition: "E2'".into(),
                    i: Some(i + 1),
                    j: Some(j + 1),
                    n: Some(n),
                    dim,
                });
            }
        }
    }
    let complete = seq.first().is_some_and(|m| m.algebra().vertex_count() == seq.len());
    let subject = format!(
        "sequence ({})",
        seq.iter().map(describe).collect::<Vec<_>>().join(", ")
    );
    Ok(ExceptionalReport {
        subject,
        verdict: witnesses.is_empty(),
        certainty,
        complete,
        witnesses,
        images: Vec::new(),
    })
}

/// Whether the set is a semibrick, with witnesses for non-bricks (`brick`) and
/// nonzero homs between distinct members (`hom`).
pub fn semibrick_report(set: &[RightModule]) -> Result<ExceptionalReport> {
    let mut witnesses = Vec::new();
    for (i, x) in set.iter().enumerate() {
        let end = hom_dim(x, x)?;
        if end != 1 {
            witnesses.push(Witness {
                condition: "brick".into(),
                i: Some(i + 1),
                j: None,
                n: None,
                dim: end,
            });
        }
        for (j, y) in set.iter().enumerate() {
            if i == j {
                continue;
            }
            let h = hom_dim(x, y)?;
            if h != 0 {
                witnesses.push(Witness {
                    condition: "hom".into(),
                    i: Some(i + 1),
                    j: Some(j + 1),
                    n: None,
                    dim: h,
                });
            }
        }
    }
    Ok(ExceptionalReport {
        subject: format!("set ({})", set.iter().map(describe).collect::<Vec<_>>().join(", ")),
        verdict: witnesses.is_empty(),
        certainty: Certainty::Certified,
        complete: false,
        witnesses,
        images: Vec::new(),
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Algebra;

    pub(crate) fn a3() -> Arc<Algebra> {
        Algebra::from_text("algebra A3\nvertices 1 2 3\narrow alpha 1 2\narrow beta 2 3\n").unwrap()
    }

    pub(crate) fn a3_mod_alpha() -> Arc<Algebra> {
        Algebra::from_text("algebra A\nvertices 1 2 3\narrow beta 2 3\n").unwrap()
    }

    pub(crate) fn cycle() -> Arc<Algebra> {
        Algebra::from_text(
            "algebra R\nvertices 1 2 3\narrow alpha 1 2\narrow beta 2 3\narrow gamma 3 1\nrelation alpha*beta\nrelation beta*gamma\nrelation gamma*alpha\n",
        )
        .unwrap()
    }

    pub(crate) fn thin(a: &Arc<Algebra>, support: &[usize]) -> RightModule {
        RightModule::thin(a.clone(), support).unwrap()
    }

    #[test]
    fn simple_projective_is_exceptional() {
        let r = is_exceptional(&thin(&a3(), &[2]), 6).unwrap();
        assert!(r.certified());
        let r = is_exceptional(&thin(&a3(), &[0, 1, 2]), 6).unwrap();
        assert!(r.certified());
    }

    #[test]
    fn simple_over_cycle_is_not_exceptional() {
        let r = is_exceptional(&thin(&cycle(), &[0]), 6).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.certainty, Certainty::Certified);
        assert_eq!(
            r.witnesses,
            vec![Witness {
                condition: "E2".into(),
                i: None,
                j: None,
                n: Some(3),
                dim: 1
            }]
        );
    }

    #[test]
    fn table_row_a() {
        let a = a3_mod_alpha();
        let seq = [thin(&a, &[2]), thin(&a, &[1, 2]), thin(&a, &[0])];
        let r = is_exceptional_sequence(&seq, 6).unwrap();
        assert!(r.certified() && r.complete, "{:?}", r.witnesses);
        let r3 = a3();
        let image = [thin(&r3, &[2]), thin(&r3, &[1, 2]), thin(&r3, &[0, 1, 2])];
        assert!(is_exceptional_sequence(&image, 6).unwrap().certified());
    }

    #[test]
    fn repeated_module_fails() {
        let a = a3();
        let r = is_exceptional_sequence(&[thin(&a, &[0]), thin(&a, &[0])], 6).unwrap();
        assert!(!r.verdict);
        assert!(!r.complete);
        assert!(r.witnesses.iter().any(|w| w.condition == "E1'" && w.i == Some(1) && w.j == Some(2)));
    }

    #[test]
    fn semibricks() {
        let a = a3();
        let simples: Vec<_> = (0..3).map(|v| thin(&a, &[v])).collect();
        assert!(semibrick_report(&simples).unwrap().verdict);
        assert!(semibrick_report(&[]).unwrap().verdict);
        let r = semibrick_report(&[thin(&a, &[0, 1]), thin(&a, &[1, 2])]).unwrap();
        // the only map between them goes (2 3) -> (1 2) through the simple at 2
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.witnesses[0].condition, "hom");
    }
}
