use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    cached, hom_from_bimodule, restrict_along, restrict_map, same, tensor_with_bimodule, Bimodule, FunctorCache,
    FunctorKind,
};
use crate::algebra::{corner_algebra, opposite_algebra, quotient_by_idempotent_ideal, Algebra, AlgebraMorphism};
use crate::error::{Error, Result};
use crate::module::{
    generated_submodule, hom_dim, is_projective_module, iso_test, quotient_module, ModuleMap, RightModule,
};

/// The recollement of `mod A` along the idempotent `e` = sum of the vertex
/// idempotents in `eps`: `mod A/AeA -> mod A -> mod eAe`.
#[derive(Debug)]
pub struct Recollement {
    pub a: Arc<Algebra>,
    pub eps: Vec<usize>,
    /// `A/AeA`
    pub bar: Arc<Algebra>,
    /// `A -> A/AeA`
    pub pi: AlgebraMorphism,
    /// `eAe`
    pub corner: Arc<Algebra>,
    /// `eAe -> A`
    pub iota: AlgebraMorphism,
    /// `_A (A/AeA)_{A/AeA}`
    pub a_bar: Bimodule,
    /// `_{A/AeA} (A/AeA)_A`
    pub bar_a: Bimodule,
    /// `_{eAe} eA_A`
    pub eps_a: Bimodule,
    /// `_A Ae_{eAe}`
    pub a_eps: Bimodule,
    /// `i^*` is exact: `A/AeA` is projective as a left `A`-module.
    pub i_upper_exact: bool,
    /// `i^!` is exact: `A/AeA` is projective as a right `A`-module.
    pub i_shriek_exact: bool,
    swapped: bool,
    cache: FunctorCache,
}

pub fn build_recollement(a: &Arc<Algebra>, eps: &[usize]) -> Result<Recollement> {
    let (bar, pi) = quotient_by_idempotent_ideal(a, eps)?;
    let (corner, iota) = corner_algebra(a, eps)?;
    let eps = corner_vertices(&iota);
    let id_a = AlgebraMorphism::identity(a);
    let id_bar = AlgebraMorphism::identity(&bar);
    let all_bar: Vec<usize> = (0..bar.dim()).collect();
    let a_bar = Bimodule::from_carrier(&bar, &all_bar, &pi, &id_bar)?;
    let bar_a = Bimodule::from_carrier(&bar, &all_bar, &id_bar, &pi)?;
    let starts: Vec<usize> = (0..a.dim()).filter(|&i| eps.contains(&a.element(i).source)).collect();
    let ends: Vec<usize> = (0..a.dim()).filter(|&i| eps.contains(&a.element(i).target)).collect();
    let eps_a = Bimodule::from_carrier(a, &starts, &iota, &id_a)?;
    let a_eps = Bimodule::from_carrier(a, &ends, &id_a, &iota)?;
    let (a_op, _) = opposite_algebra(a)?;
    let i_upper_exact = is_projective_module(&a_bar.as_left_module(&a_op)?)?;
    let i_shriek_exact = is_projective_module(&bar_a.as_right_module())?;
    Ok(Recollement {
        a: a.clone(),
        eps,
        bar,
        pi,
        corner,
        iota,
        a_bar,
        bar_a,
        eps_a,
        a_eps,
        i_upper_exact,
        i_shriek_exact,
        swapped: false,
        cache: Mutex::new(HashMap::new()),
    })
}

fn corner_vertices(iota: &AlgebraMorphism) -> Vec<usize> {
    iota.vertex_map.iter().map(|v| v.expect("corner vertices map into A")).collect()
}

impl Recollement {
    /// A deliberately wrong copy where `j_!` is computed as `Hom_{eAe}(Ae, -)`,
    /// i.e. with the bimodule of the other side. Used to check that the law
    /// checker notices broken adjunctions.
    pub fn with_swapped_j_lower(a: &Arc<Algebra>, eps: &[usize]) -> Result<Recollement> {
        let mut rec = build_recollement(a, eps)?;
        rec.swapped = true;
        Ok(rec)
    }

    fn source_of(&self, kind: FunctorKind) -> Result<&Arc<Algebra>> {
        match kind {
            FunctorKind::IStar => Ok(&self.bar),
            FunctorKind::IUpperStar | FunctorKind::IShriek | FunctorKind::JUpperStar => Ok(&self.a),
            FunctorKind::JLower | FunctorKind::JStar => Ok(&self.corner),
            other => Err(Error::input(format!("{} is not a recollement functor", other.name()))),
        }
    }

    pub fn apply(&self, kind: FunctorKind, m: &RightModule) -> Result<RightModule> {
        same(self.source_of(kind)?, m.algebra(), kind.name())?;
        cached(&self.cache, kind, m, || match kind {
            FunctorKind::IStar => restrict_along(m, &self.pi),
            FunctorKind::IUpperStar => tensor_with_bimodule(m, &self.a_bar),
            FunctorKind::IShriek => hom_from_bimodule(&self.bar_a, m),
            FunctorKind::JLower if self.swapped => hom_from_bimodule(&self.a_eps, m),
            FunctorKind::JLower => tensor_with_bimodule(m, &self.eps_a),
            FunctorKind::JUpperStar => restrict_along(m, &self.iota),
            _ => hom_from_bimodule(&self.a_eps, m),
        })
    }

    pub fn i_star(&self, m: &RightModule) -> Result<RightModule> {
        self.apply(FunctorKind::IStar, m)
    }

    pub fn j_lower(&self, m: &RightModule) -> Result<RightModule> {
        self.apply(FunctorKind::JLower, m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawFailure {
    pub law: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LawReport {
    pub checks: usize,
    pub failures: Vec<LawFailure>,
    /// which bimodule realizes `j_*`; recorded so the report says what was tested
    pub j_star_bimodule: String,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, law: &str, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(LawFailure {
                law: law.to_string(),
                detail: detail(),
            });
        }
    }
}

fn dims(m: &RightModule) -> String {
    format!("{:?}", m.dims())
}

fn samples_over(b: &Arc<Algebra>, extra: Vec<RightModule>) -> Result<Vec<RightModule>> {
    let mut out = extra;
    for v in 0..b.vertex_count() {
        out.push(RightModule::simple(b.clone(), v)?);
        out.push(RightModule::projective(b.clone(), v)?);
        out.push(RightModule::injective(b.clone(), v)?);
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|m| !m.is_zero() && seen.insert(m.fingerprint()));
    Ok(out)
}

/// Random short exact sequences `0 -> U -> X -> X/U -> 0` with `U` generated by
/// one random vector of `X`.
/// `(U, X, X/U, U -> X, X -> X/U)`
type ShortExact = (RightModule, RightModule, RightModule, ModuleMap, ModuleMap);

fn short_exact_sequences(samples: &[RightModule], rng: &mut ChaCha8Rng) -> Result<Vec<ShortExact>> {
    let mut out = Vec::new();
    for x in samples {
        let support: Vec<usize> = (0..x.dims().len()).filter(|&v| x.dims()[v] > 0).collect();
        if support.is_empty() {
            continue;
        }
        let v = support[rng.gen_range(0..support.len())];
        let f = x.field();
        let vector = (0..x.dims()[v]).map(|_| f.from_int(rng.gen_range(-3..=3))).collect();
        let (u, inc) = generated_submodule(x, &[(v, vector)])?;
        let spaces: Vec<_> = inc.blocks.iter().map(crate::linalg::Subspace::span).collect();
        let (q, proj) = quotient_module(x, &spaces)?;
        out.push((u, x.clone(), q, inc, proj));
    }
    Ok(out)
}

/// Checks the recollement identities on sample `A`-modules (plus derived
/// samples over `A/AeA` and `eAe`). Every law is an exact dimension identity or
/// an isomorphism test; failures carry the offending dimension vectors.
pub fn verify_recollement_laws(rec: &Recollement, samples: &[RightModule]) -> Result<LawReport> {
    use FunctorKind::*;
    let mut report = LawReport {
        j_star_bimodule: "Ae".to_string(),
        ..LawReport::default()
    };
    for x in samples {
        same(&rec.a, x.algebra(), "recollement sample")?;
    }
    let mut bar_extra = Vec::new();
    let mut corner_extra = Vec::new();
    for x in samples {
        bar_extra.push(rec.apply(IUpperStar, x)?);
        bar_extra.push(rec.apply(IShriek, x)?);
        corner_extra.push(rec.apply(JUpperStar, x)?);
    }
    let zs = samples_over(&rec.bar, bar_extra)?;
    let ys = samples_over(&rec.corner, corner_extra)?;

    // (1) vanishing compositions, (R3), (4)
    for y in &ys {
        let jl = rec.apply(JLower, y)?;
        let js = rec.apply(JStar, y)?;
        let v = rec.apply(IUpperStar, &jl)?;
        report.check(v.is_zero(), "i^* j_! = 0", || format!("Y = {}: i^* j_! Y = {}", dims(y), dims(&v)));
        let v = rec.apply(IShriek, &js)?;
        report.check(v.is_zero(), "i^! j_* = 0", || format!("Y = {}: i^! j_* Y = {}", dims(y), dims(&v)));
        if rec.i_upper_exact {
            let v = rec.apply(IShriek, &jl)?;
            report.check(v.is_zero(), "i^! j_! = 0 when i^* is exact", || {
                format!("Y = {}: i^! j_! Y = {}", dims(y), dims(&v))
            });
        }
        // (3) units and counits on the open part
        let back = rec.apply(JUpperStar, &jl)?;
        report.check(iso_test(&back, y)?.is_iso(), "j^* j_! = 1", || {
            format!("Y = {}: j^* j_! Y = {}", dims(y), dims(&back))
        });
        let back = rec.apply(JUpperStar, &js)?;
        report.check(iso_test(&back, y)?.is_iso(), "j^* j_* = 1", || {
            format!("Y = {}: j^* j_* Y = {}", dims(y), dims(&back))
        });
    }
    for z in &zs {
        let iz = rec.apply(IStar, z)?;
        let v = rec.apply(JUpperStar, &iz)?;
        report.check(v.is_zero(), "j^* i_* = 0", || format!("Z = {}: j^* i_* Z = {}", dims(z), dims(&v)));
        let back = rec.apply(IUpperStar, &iz)?;
        report.check(iso_test(&back, z)?.is_iso(), "i^* i_* = 1", || {
            format!("Z = {}: i^* i_* Z = {}", dims(z), dims(&back))
        });
        let back = rec.apply(IShriek, &iz)?;
        report.check(iso_test(&back, z)?.is_iso(), "i^! i_* = 1", || {
            format!("Z = {}: i^! i_* Z = {}", dims(z), dims(&back))
        });
    }

    // (R1) adjunctions
    for x in samples {
        for z in &zs {
            let lhs = hom_dim(&rec.apply(IUpperStar, x)?, z)?;
            let rhs = hom_dim(x, &rec.apply(IStar, z)?)?;
            report.check(lhs == rhs, "adjunction (i^*, i_*)", || {
                format!("X = {}, Z = {}: {lhs} != {rhs}", dims(x), dims(z))
            });
            let lhs = hom_dim(&rec.apply(IStar, z)?, x)?;
            let rhs = hom_dim(z, &rec.apply(IShriek, x)?)?;
            report.check(lhs == rhs, "adjunction (i_*, i^!)", || {
                format!("Z = {}, X = {}: {lhs} != {rhs}", dims(z), dims(x))
            });
        }
        for y in &ys {
            let lhs = hom_dim(&rec.apply(JLower, y)?, x)?;
            let rhs = hom_dim(y, &rec.apply(JUpperStar, x)?)?;
            report.check(lhs == rhs, "adjunction (j_!, j^*)", || {
                format!("Y = {}, X = {}: {lhs} != {rhs}", dims(y), dims(x))
            });
            let lhs = hom_dim(&rec.apply(JUpperStar, x)?, y)?;
            let rhs = hom_dim(x, &rec.apply(JStar, y)?)?;
            report.check(lhs == rhs, "adjunction (j^*, j_*)", || {
                format!("X = {}, Y = {}: {lhs} != {rhs}", dims(x), dims(y))
            });
        }
    }

    // (R2) full faithfulness
    for z in &zs {
        for z2 in &zs {
            let lhs = hom_dim(z, z2)?;
            let rhs = hom_dim(&rec.apply(IStar, z)?, &rec.apply(IStar, z2)?)?;
            report.check(lhs == rhs, "i_* fully faithful", || {
                format!("Z = {}, Z' = {}: {lhs} != {rhs}", dims(z), dims(z2))
            });
        }
    }
    for y in &ys {
        for y2 in &ys {
            let lhs = hom_dim(y, y2)?;
            let rhs = hom_dim(&rec.apply(JLower, y)?, &rec.apply(JLower, y2)?)?;
            report.check(lhs == rhs, "j_! fully faithful", || {
                format!("Y = {}, Y' = {}: {lhs} != {rhs}", dims(y), dims(y2))
            });
            let rhs = hom_dim(&rec.apply(JStar, y)?, &rec.apply(JStar, y2)?)?;
            report.check(lhs == rhs, "j_* fully faithful", || {
                format!("Y = {}, Y' = {}: {lhs} != {rhs}", dims(y), dims(y2))
            });
        }
    }

    // (2) exactness of i_* and j^* on sampled short exact sequences
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ec0_11e0);
    for (u, x, q, inc, proj) in short_exact_sequences(samples, &mut rng)? {
        let (fu, fx, fq) = (
            rec.apply(JUpperStar, &u)?,
            rec.apply(JUpperStar, &x)?,
            rec.apply(JUpperStar, &q)?,
        );
        let (fi, fp) = (restrict_map(&inc, &rec.iota), restrict_map(&proj, &rec.iota));
        let exact = fi.rank() == fu.dim()
            && fp.rank() == fq.dim()
            && fi.then(&fp).is_zero()
            && fu.dim() + fq.dim() == fx.dim();
        report.check(exact, "j^* exact", || format!("0 -> {} -> {} -> {} -> 0", dims(&u), dims(&x), dims(&q)));
    }
    for (u, x, q, inc, proj) in short_exact_sequences(&zs, &mut rng)? {
        let (fu, fx, fq) = (rec.apply(IStar, &u)?, rec.apply(IStar, &x)?, rec.apply(IStar, &q)?);
        let (fi, fp) = (restrict_map(&inc, &rec.pi), restrict_map(&proj, &rec.pi));
        let exact = fi.rank() == fu.dim()
            && fp.rank() == fq.dim()
            && fi.then(&fp).is_zero()
            && fu.dim() + fq.dim() == fx.dim();
        report.check(exact, "i_* exact", || format!("0 -> {} -> {} -> {} -> 0", dims(&u), dims(&x), dims(&q)));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::tests::{a3, thin_modules};

    fn a3_alpha_killed() -> Arc<Algebra> {
        Algebra::from_text("algebra A\nvertices 1 2 3\narrow beta 2 3\n").unwrap()
    }

    #[test]
    fn corner_and_quotient_shapes() {
        let a = a3();
        let rec = build_recollement(&a, &[1, 2]).unwrap();
        assert_eq!(rec.bar.dim(), 1);
        assert_eq!(rec.corner.dim(), 3);
        let rec = build_recollement(&a, &[0]).unwrap();
        assert_eq!(rec.bar.vertices(), ["2", "3"]);
    }

    #[test]
    fn laws_hold_on_a3() {
        let a = a3();
        let samples = thin_modules(&a);
        for eps in [vec![1, 2], vec![0], vec![2], vec![1], vec![0, 2]] {
            let rec = build_recollement(&a, &eps).unwrap();
            let report = verify_recollement_laws(&rec, &samples).unwrap();
            assert!(report.holds(), "eps = {eps:?}: {:?}", report.failures);
            assert!(report.checks > 50);
        }
    }

    #[test]
    fn laws_hold_on_quotient_of_a3() {
        let a = a3_alpha_killed();
        let samples = thin_modules(&a);
        for eps in [vec![0], vec![1], vec![2], vec![1, 2]] {
            let rec = build_recollement(&a, &eps).unwrap();
            let report = verify_recollement_laws(&rec, &samples).unwrap();
            assert!(report.holds(), "eps = {eps:?}: {:?}", report.failures);
        }
    }

    #[test]
    fn certificates_on_a3() {
        let a = a3();
        let rec = build_recollement(&a, &[0]).unwrap();
        assert!(!rec.i_upper_exact);
        assert!(rec.i_shriek_exact);
        let rec = build_recollement(&a, &[2]).unwrap();
        assert!(rec.i_upper_exact);
        assert!(!rec.i_shriek_exact);
    }

    #[test]
    fn everything_idempotent_gives_zero_quotient() {
        let a = a3();
        let rec = build_recollement(&a, &[0, 1, 2]).unwrap();
        assert_eq!(rec.bar.dim(), 0);
        assert!(rec.i_upper_exact && rec.i_shriek_exact);
        for x in thin_modules(&a) {
            assert!(rec.apply(FunctorKind::IUpperStar, &x).unwrap().is_zero());
        }
        let report = verify_recollement_laws(&rec, &thin_modules(&a)).unwrap();
        assert!(report.holds(), "{:?}", report.failures);
    }

    #[test]
    fn swapped_bimodule_breaks_an_adjunction() {
        let a = a3();
        let rec = Recollement::with_swapped_j_lower(&a, &[1, 2]).unwrap();
        let report = verify_recollement_laws(&rec, &thin_modules(&a)).unwrap();
        assert!(report.failures.iter().any(|f| f.law == "adjunction (j_!, j^*)"));
    }

    #[test]
    fn wrong_category_is_rejected() {
        let a = a3();
        let rec = build_recollement(&a, &[1, 2]).unwrap();
        let s = RightModule::simple(a.clone(), 0).unwrap();
        assert!(rec.apply(FunctorKind::IStar, &s).is_err());
        assert!(rec.apply(FunctorKind::TensorUpR, &s).is_err());
    }
}
