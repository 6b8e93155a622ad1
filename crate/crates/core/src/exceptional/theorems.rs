use serde::Serialize;

use super::{describe, higher_ext, is_exceptional_sequence, Certainty, ExceptionalReport, Witness};
use crate::bimodule::{FunctorKind, Recollement, SplitExtension};
use crate::error::Result;
use crate::module::{ext_dims, hom_dim, module_to_text, same_algebra, RightModule};

#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub id: String,
    pub statement: String,
    /// `None` when only a bounded range of Ext degrees could be checked
    pub holds: Option<bool>,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Implication {
    /// hypotheses hold and the conclusion was verified
    Confirmed,
    /// hypotheses hold but the conclusion is false
    Violated,
    /// hypotheses hold but the conclusion could only be checked up to a bound
    Undecided,
    /// some hypothesis fails or is undecided; the conclusion is reported but
    /// not asserted
    HypothesesNotMet,
}

fn implication(hypotheses: &[Hypothesis], conclusions: &[&ExceptionalReport]) -> Implication {
    if !hypotheses.iter().all(|h| h.holds == Some(true)) {
        Implication::HypothesesNotMet
    } else if conclusions.iter().any(|c| !c.verdict) {
        Implication::Violated
    } else if conclusions.iter().all(|c| c.certified()) {
        Implication::Confirmed
    } else {
        Implication::Undecided
    }
}

fn sequence_hypothesis(id: &str, statement: &str, report: &ExceptionalReport) -> Hypothesis {
    Hypothesis {
        id: id.into(),
        statement: statement.into(),
        holds: if !report.verdict {
            Some(false)
        } else {
            (report.certainty == Certainty::Certified).then_some(true)
        },
        witnesses: report.witnesses.clone(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitTheoremReport {
    /// verdict on the image sequence `(M_1 (x)_A R, ..., M_r (x)_A R)`
    #[serde(flatten)]
    pub conclusion: ExceptionalReport,
    pub hypotheses: Vec<Hypothesis>,
    pub implication: Implication,
    #[serde(skip)]
    pub image_modules: Vec<RightModule>,
}

impl SplitTheoremReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds == Some(true))
    }

    pub fn hypothesis(&self, id: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.id == id)
    }
}

/// Evaluates the four hypotheses of the transfer theorem for a split extension
/// on a sequence of `A`-modules, and independently checks whether the induced
/// sequence over `R` is exceptional.
///
/// Hypotheses: (1) the sequence is exceptional over `A`; (2) `_A R` is
/// projective; (3) `Hom_A(M_j, M_i (x)_A Q) = 0` and (4) `Ext^n_A(M_j, M_i (x)_A Q) = 0`
/// for all `n >= 1`, both for all `i <= j`.
pub fn check_split_theorem(se: &SplitExtension, seq: &[RightModule], n_max: usize) -> Result<SplitTheoremReport> {
    for m in seq {
        same_algebra(&se.a, m.algebra())?;
    }
    let mut hypotheses = Vec::with_capacity(4);
    let base = is_exceptional_sequence(seq, n_max)?;
    hypotheses.push(sequence_hypothesis("1", "exceptional sequence over A", &base));
    hypotheses.push(Hypothesis {
        id: "2".into(),
        statement: "R is projective as a left A-module".into(),
        holds: Some(se.is_projective_left()?),
        witnesses: Vec::new(),
    });

    let twisted: Vec<RightModule> = seq.iter().map(|m| se.tensor_q(m)).collect::<Result<_>>()?;
    let mut hom_witnesses = Vec::new();
    let mut ext_witnesses = Vec::new();
    let mut ext_certainty = Certainty::Certified;
    for j in 0..seq.len() {
        for i in 0..=j {
            let h = hom_dim(&seq[j], &twisted[i])?;
            if h != 0 {
                hom_witnesses.push(Witness {
                    condition: "3".into(),
                    i: Some(i + 1),
                    j: Some(j + 1),
                    n: None,
                    dim: h,
                });
            }
            let (ext, c) = higher_ext(&seq[j], &twisted[i], n_max)?;
            ext_certainty = ext_certainty.and(c);
            if let Some((n, dim)) = ext {
                ext_witnesses.push(Witness {
                    condition: "4".into(),
                    i: Some(i + 1),
                    j: Some(j + 1),
                    n: Some(n),
                    dim,
                });
            }
        }
    }
    hypotheses.push(Hypothesis {
        id: "3".into(),
        statement: "Hom_A(M_j, M_i (x) Q) = 0 for i <= j".into(),
        holds: Some(hom_witnesses.is_empty()),
        witnesses: hom_witnesses,
    });
    hypotheses.push(Hypothesis {
        id: "4".into(),
        statement: "Ext^n_A(M_j, M_i (x) Q) = 0 for n >= 1, i <= j".into(),
        holds: if !ext_witnesses.is_empty() {
            Some(false)
        } else {
            (ext_certainty == Certainty::Certified).then_some(true)
        },
        witnesses: ext_witnesses,
    });

    let images: Vec<RightModule> = seq.iter().map(|m| se.induce(m)).collect::<Result<_>>()?;
    let mut conclusion = is_exceptional_sequence(&images, n_max)?;
    conclusion.subject = format!("image of ({}) in mod {}", seq.iter().map(describe).collect::<Vec<_>>().join(", "), se.r.name());
    conclusion.images = images
        .iter()
        .enumerate()
        .map(|(k, m)| module_to_text(&format!("image{}", k + 1), m))
        .collect();
    let implication = implication(&hypotheses, &[&conclusion]);
    Ok(SplitTheoremReport {
        conclusion,
        hypotheses,
        implication,
        image_modules: images,
    })
}

/// An `Ext^n` dimension that a fully faithful functor failed to preserve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub functor: String,
    pub position: usize,
    pub n: usize,
    pub image_dim: usize,
    pub original_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecollementTheoremReport {
    pub i_upper_exact: bool,
    pub i_shriek_exact: bool,
    pub hypotheses: Vec<Hypothesis>,
    /// verdict on `(i_* X_1, ..., i_* X_s)`
    pub closed: ExceptionalReport,
    /// verdict on `(j_! Y_1, ..., j_! Y_t)`
    pub open: ExceptionalReport,
    /// failures of `Ext^n(F M, F M) = Ext^n(M, M)` for `F = i_*, j_!`
    pub identity_failures: Vec<IdentityFailure>,
    pub implication: Implication,
}

fn ext_identities(
    functor: FunctorKind,
    originals: &[RightModule],
    images: &[RightModule],
    n_max: usize,
    out: &mut Vec<IdentityFailure>,
) -> Result<()> {
    for (k, (m, fm)) in originals.iter().zip(images).enumerate() {
        let before = ext_dims(m, m, n_max)?.dims;
        let after = ext_dims(fm, fm, n_max)?.dims;
        for n in 0..=n_max {
            if before[n] != after[n] {
                out.push(IdentityFailure {
                    functor: functor.name().into(),
                    position: k + 1,
                    n,
                    image_dim: after[n],
                    original_dim: before[n],
                });
            }
        }
    }
    Ok(())
}

/// Checks the transfer theorem for a recollement: if `i^*` and `i^!` are exact,
/// then `i_*` and `j_!` send exceptional sequences over `A/AeA` and `eAe` to
/// exceptional sequences over `A`. The conclusions and the Ext identities for
/// `i_*` and `j_!` are evaluated whether or not the hypotheses hold.
pub fn check_recollement_theorem(
    rec: &Recollement,
    xs: &[RightModule],
    ys: &[RightModule],
    n_max: usize,
) -> Result<RecollementTheoremReport> {
    let mut hypotheses = vec![
        Hypothesis {
            id: "i^* exact".into(),
            statement: "A/AeA is projective as a left A-module".into(),
            holds: Some(rec.i_upper_exact),
            witnesses: Vec::new(),
        },
        Hypothesis {
            id: "i^! exact".into(),
            statement: "A/AeA is projective as a right A-module".into(),
            holds: Some(rec.i_shriek_exact),
            witnesses: Vec::new(),
        },
    ];
    hypotheses.push(sequence_hypothesis(
        "X exceptional",
        "exceptional sequence over A/AeA",
        &is_exceptional_sequence(xs, n_max)?,
    ));
    hypotheses.push(sequence_hypothesis(
        "Y exceptional",
        "exceptional sequence over eAe",
        &is_exceptional_sequence(ys, n_max)?,
    ));
    let ix: Vec<RightModule> = xs.iter().map(|x| rec.i_star(x)).collect::<Result<_>>()?;
    let jy: Vec<RightModule> = ys.iter().map(|y| rec.j_lower(y)).collect::<Result<_>>()?;
    let mut closed = is_exceptional_sequence(&ix, n_max)?;
    closed.images = ix
        .iter()
        .enumerate()
        .map(|(k, m)| module_to_text(&format!("i_star{}", k + 1), m))
        .collect();
    let mut open = is_exceptional_sequence(&jy, n_max)?;
    open.images = jy
        .iter()
        .enumerate()
        .map(|(k, m)| module_to_text(&format!("j_shriek{}", k + 1), m))
        .collect();
    let mut identity_failures = Vec::new();
    ext_identities(FunctorKind::IStar, xs, &ix, n_max, &mut identity_failures)?;
    ext_identities(FunctorKind::JLower, ys, &jy, n_max, &mut identity_failures)?;
    let implication = implication(&hypotheses, &[&closed, &open]);
    Ok(RecollementTheoremReport {
        i_upper_exact: rec.i_upper_exact,
        i_shriek_exact: rec.i_shriek_exact,
        hypotheses,
        closed,
        open,
        identity_failures,
        implication,
    })
}
