use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use serde::Serialize;

use super::{direct_sum, iso_test, kernel, radical_spaces, same_algebra, ModuleMap, RightModule};
use crate::error::{Error, Result};
use crate::linalg::{quotient_with_section, Matrix, Scalar};

/// Default number of resolution terms computed before giving up on periodicity.
pub const DEFAULT_STEPS: usize = 24;

/// A projective cover `P -> M`. Summand `c` of `P` is `e_{tops[c]} A`, and its
/// generator is sent to `generators[c]`, a vector of `M` at vertex `tops[c]`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub tops: Vec<usize>,
    pub generators: Vec<Vec<Scalar>>,
    pub projective: RightModule,
    pub map: ModuleMap,
}

impl Cover {
    /// Number of copies of each indecomposable projective.
    pub fn multiplicities(&self, vertices: usize) -> Vec<usize> {
        let mut out = vec![0; vertices];
        for &t in &self.tops {
            out[t] += 1;
        }
        out
    }
}

/// Projective cover of `M`, built from lifts of a basis of `M / M rad A`.
pub fn top_and_cover(m: &RightModule) -> Result<Cover> {
    cover_with(m, &[])
}

/// A cover with additional summands `e_v A` (one per entry of `extra`) sent to
/// zero; `extra` empty gives the minimal cover.
fn cover_with(m: &RightModule, extra: &[usize]) -> Result<Cover> {
    let a = m.algebra();
    let f = m.field();
    let nv = a.vertex_count();
    let rad = radical_spaces(m);
    let mut tops = Vec::new();
    let mut generators = Vec::new();
    for (v, space) in rad.iter().enumerate() {
        let q = quotient_with_section(space);
        for row in q.section.row_vecs() {
            tops.push(v);
            generators.push(row);
        }
        for _ in extra.iter().filter(|&&x| x == v) {
            tops.push(v);
            generators.push(vec![f.zero(); m.dims()[v]]);
        }
    }
    let indecomposables: Vec<RightModule> = (0..nv)
        .map(|v| RightModule::projective(a.clone(), v))
        .collect::<Result<_>>()?;
    let summands: Vec<&RightModule> = tops.iter().map(|&t| &indecomposables[t]).collect();
    let projective = direct_sum(a, &summands)?;
    let mut blocks = Vec::with_capacity(nv);
    for x in 0..nv {
        let mut rows = Vec::with_capacity(projective.dims()[x]);
        for (c, &t) in tops.iter().enumerate() {
            for b in a.block(t, x) {
                rows.push(m.action(b).apply(&generators[c]));
            }
        }
        blocks.push(Matrix::from_rows(f, m.dims()[x], rows));
    }
    Ok(Cover {
        tops,
        generators,
        projective,
        map: ModuleMap { blocks },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResolutionStatus {
    /// `Omega^{pd+1} = 0`.
    FinitePd { pd: usize },
    /// `Omega^lead` is isomorphic to `Omega^{lead+period}`.
    Periodic { lead: usize, period: usize },
    TruncatedAt { steps: usize },
}

/// A prefix of a projective resolution `... -> P_1 -> P_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// `covers[k]` is `P_k -> Omega^k`.
    pub covers: Vec<Cover>,
    /// `Omega^0 = M, Omega^1, ...`, one more than the number of covers.
    pub syzygies: Vec<RightModule>,
    /// `inclusions[k]` embeds `Omega^{k+1}` into `P_k`.
    pub inclusions: Vec<ModuleMap>,
    pub status: ResolutionStatus,
}

impl Resolution {
    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    /// The differential `P_{k+1} -> P_k` as a module map.
    pub fn differential(&self, k: usize) -> ModuleMap {
        self.covers[k + 1].map.then(&self.inclusions[k])
    }
}

fn build(m: &RightModule, steps: usize, pad: bool) -> Result<Resolution> {
    let mut syzygies = vec![m.clone()];
    let mut covers = Vec::new();
    let mut inclusions = Vec::new();
    let mut status = None;
    for k in 0..steps {
        if syzygies[k].is_zero() {
            status = Some(ResolutionStatus::FinitePd { pd: k.saturating_sub(1) });
            break;
        }
        let extra: &[usize] = if pad && k == 0 { &[0] } else { &[] };
        let cover = cover_with(&syzygies[k], extra)?;
        let (next, inclusion) = kernel(&cover.projective, &cover.map)?;
        covers.push(cover);
        inclusions.push(inclusion);
        if status.is_none() && !pad && !next.is_zero() {
            for j in 0..=k {
                if syzygies[j].dims() == next.dims() && iso_test(&syzygies[j], &next)?.is_iso() {
                    status = Some(ResolutionStatus::Periodic {
                        lead: j,
                        period: k + 1 - j,
                    });
                    break;
                }
            }
        }
        syzygies.push(next);
    }
    let status = match status {
        Some(s) => s,
        None if syzygies.last().is_some_and(RightModule::is_zero) => ResolutionStatus::FinitePd {
            pd: covers.len().saturating_sub(1),
        },
        None => ResolutionStatus::TruncatedAt { steps },
    };
    Ok(Resolution {
        covers,
        syzygies,
        inclusions,
        status,
    })
}

type Cache = Mutex<HashMap<String, (usize, Arc<Resolution>)>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Minimal projective resolution with at most `max_steps` terms.
///
/// Syzygies are compared pairwise as they appear; the first isomorphism
/// `Omega^j = Omega^{j+q}` found fixes the periodic status. Terms keep being
/// computed up to `max_steps` after that. Results are cached per module.
pub fn minimal_resolution(m: &RightModule, max_steps: usize) -> Result<Arc<Resolution>> {
    if max_steps == 0 {
        return Err(Error::input("resolution needs at least one step"));
    }
    let key = m.fingerprint();
    if let Some((steps, res)) = cache().lock().expect("cache poisoned").get(&key) {
        let complete = matches!(res.status, ResolutionStatus::FinitePd { .. });
        if complete || *steps >= max_steps {
            return Ok(res.clone());
        }
    }
    let res = Arc::new(build(m, max_steps, false)?);
    cache()
        .lock()
        .expect("cache poisoned")
        .insert(key, (max_steps, res.clone()));
    Ok(res)
}

pub fn is_projective_module(m: &RightModule) -> Result<bool> {
    Ok(top_and_cover(m)?.projective.dim() == m.dim())
}

/// Multiplicities of the indecomposable projectives in `M`, if `M` is projective.
pub fn projective_multiplicities(m: &RightModule) -> Result<Option<Vec<usize>>> {
    let cover = top_and_cover(m)?;
    if cover.projective.dim() != m.dim() {
        return Ok(None);
    }
    Ok(Some(cover.multiplicities(m.algebra().vertex_count())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtCertainty {
    /// Finite projective dimension: `Ext^n = 0` for all `n > pd`.
    AllHigherVanish { pd: usize },
    /// `Ext^n = Ext^{n+period}` for all `n > lead`.
    EventuallyPeriodic { lead: usize, period: usize },
    /// Only the listed dimensions are known.
    ExactUpTo { n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    /// `dim Ext^n` for `n = 0..=n_max`.
    pub dims: Vec<usize>,
    pub certainty: ExtCertainty,
    /// Whether `Ext^n = 0` for every `n >= 1`: `Some` when decided, `None` when
    /// the resolution was truncated before anything nonzero showed up.
    pub higher_vanish: Option<bool>,
    /// First `(n, dim)` with `n >= 1` and nonzero dimension, if any was found.
    pub witness: Option<(usize, usize)>,
}

impl ExtTable {
    /// `dim Ext^n` for any `n`, using the certificate beyond the computed range.
    pub fn dim(&self, n: usize) -> Option<usize> {
        if n < self.dims.len() {
            return Some(self.dims[n]);
        }
        match self.certainty {
            ExtCertainty::AllHigherVanish { pd } if n > pd => Some(0),
            ExtCertainty::EventuallyPeriodic { lead, period } if n > lead => {
                let reduced = lead + 1 + (n - lead - 1) % period;
                self.dims.get(reduced).copied()
            }
            _ => None,
        }
    }
}

/// Cohomology dimensions of `Hom(P_*, N)` in degrees `0..=upto`.
fn cochain_dims(res: &Resolution, n: &RightModule, upto: usize) -> Vec<usize> {
    let a = n.algebra();
    let f = n.field();
    let terms = res.covers.len();
    let hom_dim = |k: usize| -> usize {
        if k >= terms {
            return 0;
        }
        res.covers[k].tops.iter().map(|&t| n.dims()[t]).sum()
    };
    let mut ranks = Vec::with_capacity(upto + 1);
    for k in 0..=upto {
        let (rows, cols) = (hom_dim(k), hom_dim(k + 1));
        if rows == 0 || cols == 0 {
            ranks.push(0);
            continue;
        }
        let (pk, pk1) = (&res.covers[k], &res.covers[k + 1]);
        let row_offsets: Vec<usize> = pk
            .tops
            .iter()
            .scan(0, |acc, &t| {
                let here = *acc;
                *acc += n.dims()[t];
                Some(here)
            })
            .collect();
        let mut delta = Matrix::zeros(f, rows, cols);
        let mut col_offset = 0;
        for (c1, &x) in pk1.tops.iter().enumerate() {
            // image of the generator of summand c1 inside P_k, at vertex x
            let image = res.inclusions[k].blocks[x].apply(&pk1.generators[c1]);
            let mut pos = 0;
            for (c, &t) in pk.tops.iter().enumerate() {
                for b in a.block(t, x) {
                    let lambda = &image[pos];
                    pos += 1;
                    if lambda.is_zero() {
                        continue;
                    }
                    let act = n.action(b);
                    for i in 0..n.dims()[t] {
                        for j in 0..n.dims()[x] {
                            let v = act.get(i, j);
                            if !v.is_zero() {
                                delta.add_at(row_offsets[c] + i, col_offset + j, &f.mul(lambda, v));
                            }
                        }
                    }
                }
            }
            col_offset += n.dims()[x];
        }
        ranks.push(delta.rank());
    }
    (0..=upto)
        .map(|k| hom_dim(k) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect()
}

/// `dim Ext^n_A(M, N)` for `n <= n_max`, from the minimal resolution of `M`, with
/// a certificate describing all higher degrees when one is available.
pub fn ext_dims(m: &RightModule, n: &RightModule, n_max: usize) -> Result<ExtTable> {
    same_algebra(m.algebra(), n.algebra())?;
    let mut steps = DEFAULT_STEPS.max(n_max + 2);
    let mut res = minimal_resolution(m, steps)?;
    let need = match res.status {
        ResolutionStatus::FinitePd { pd } => n_max.max(pd),
        ResolutionStatus::Periodic { lead, period } => n_max.max(lead + period),
        ResolutionStatus::TruncatedAt { .. } => n_max,
    };
    if !matches!(res.status, ResolutionStatus::FinitePd { .. }) && res.covers.len() < need + 2 {
        steps = need + 2;
        res = minimal_resolution(m, steps)?;
    }
    let all = cochain_dims(&res, n, need);
    let witness = all.iter().enumerate().skip(1).find(|(_, &d)| d > 0).map(|(k, &d)| (k, d));
    let (certainty, higher_vanish) = match res.status {
        ResolutionStatus::FinitePd { pd } => (ExtCertainty::AllHigherVanish { pd }, Some(witness.is_none())),
        ResolutionStatus::Periodic { lead, period } => (
            ExtCertainty::EventuallyPeriodic { lead, period },
            Some(witness.is_none()),
        ),
        ResolutionStatus::TruncatedAt { .. } => (
            ExtCertainty::ExactUpTo { n: need },
            witness.map(|_| false),
        ),
    };
    let mut dims = all;
    let extended = ExtTable {
        dims: dims.clone(),
        certainty,
        higher_vanish,
        witness,
    };
    dims.truncate(n_max + 1);
    let dims = (0..=n_max)
        .map(|k| dims.get(k).copied().or_else(|| extended.dim(k)).unwrap_or(0))
        .collect();
    Ok(ExtTable { dims, ..extended })
}

/// `dim Ext^n` computed from a deliberately non-minimal resolution (the first
/// cover padded with an extra projective summand sent to zero). Used to check
/// that the answer does not depend on the resolution.
pub fn ext_dims_padded(m: &RightModule, n: &RightModule, n_max: usize) -> Result<Vec<usize>> {
    same_algebra(m.algebra(), n.algebra())?;
    let res = build(m, n_max + 2, true)?;
    Ok(cochain_dims(&res, n, n_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::tests::{a3, a3_ab, cycle};

    #[test]
    fn projective_resolves_in_one_step() {
        let p = RightModule::projective(a3(), 0).unwrap();
        let res = minimal_resolution(&p, 5).unwrap();
        assert_eq!(res.status, ResolutionStatus::FinitePd { pd: 0 });
        assert!(is_projective_module(&p).unwrap());
        let cover = top_and_cover(&p).unwrap();
        assert_eq!(cover.tops, vec![0]);
    }

    #[test]
    fn zero_module_has_empty_cover() {
        let z = RightModule::zero(a3());
        let cover = top_and_cover(&z).unwrap();
        assert!(cover.tops.is_empty());
        assert!(cover.projective.is_zero());
    }

    #[test]
    fn non_sink_simple_is_not_projective() {
        let s = RightModule::simple(a3(), 0).unwrap();
        assert!(!is_projective_module(&s).unwrap());
        assert!(is_projective_module(&RightModule::simple(a3(), 2).unwrap()).unwrap());
    }

    #[test]
    fn simple_over_monomial_a3_has_pd_two() {
        let a = a3_ab();
        let s = RightModule::simple(a.clone(), 0).unwrap();
        let res = minimal_resolution(&s, 10).unwrap();
        assert_eq!(res.status, ResolutionStatus::FinitePd { pd: 2 });
        let tops: Vec<Vec<usize>> = res.covers.iter().map(|c| c.tops.clone()).collect();
        assert_eq!(tops, vec![vec![0], vec![1], vec![2]]);
        let ext = ext_dims(&s, &s, 4).unwrap();
        assert_eq!(ext.dims, vec![1, 0, 0, 0, 0]);
        assert_eq!(ext.higher_vanish, Some(true));
    }

    #[test]
    fn simple_over_cycle_is_periodic() {
        let r = cycle();
        let s = RightModule::simple(r.clone(), 0).unwrap();
        let res = minimal_resolution(&s, 6).unwrap();
        assert_eq!(res.status, ResolutionStatus::Periodic { lead: 0, period: 3 });
        let tops: Vec<usize> = res.covers.iter().take(5).map(|c| c.tops[0]).collect();
        assert_eq!(tops, vec![0, 1, 2, 0, 1]);
        let ext = ext_dims(&s, &s, 6).unwrap();
        assert_eq!(ext.dims, vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(ext.higher_vanish, Some(false));
        assert_eq!(ext.witness, Some((3, 1)));
        assert_eq!(ext.dim(30), Some(1));
        assert_eq!(ext.dim(31), Some(0));
    }

    #[test]
    fn padded_resolution_agrees() {
        let r = cycle();
        for v in 0..3 {
            let s = RightModule::simple(r.clone(), v).unwrap();
            for w in 0..3 {
                let t = RightModule::simple(r.clone(), w).unwrap();
                assert_eq!(ext_dims_padded(&s, &t, 5).unwrap(), ext_dims(&s, &t, 5).unwrap().dims);
            }
        }
    }

    #[test]
    fn differentials_compose_to_zero() {
        let s = RightModule::simple(cycle(), 1).unwrap();
        let res = minimal_resolution(&s, 6).unwrap();
        for k in 0..res.len() - 2 {
            assert!(res.differential(k + 1).then(&res.differential(k)).is_zero());
        }
    }
}
