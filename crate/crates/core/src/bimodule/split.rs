use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::{cached, hom_from_bimodule, tensor_with_bimodule, Bimodule, FunctorCache, FunctorKind};
use crate::algebra::{opposite_algebra, subalgebra_on, Algebra, AlgebraMorphism, MorphismKind};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::module::{is_projective_module, projective_multiplicities, RightModule};

/// A split surjection `xi: R -> A` whose kernel `Q` is the ideal generated by a
/// set of arrows of `R`, with `A` realized as the subalgebra of `R` spanned by
/// the normal forms avoiding those arrows.
#[derive(Debug)]
pub struct SplitExtension {
    pub r: Arc<Algebra>,
    pub a: Arc<Algebra>,
    pub a_op: Arc<Algebra>,
    pub kernel_arrows: Vec<String>,
    /// the section `A -> R`
    pub sigma: AlgebraMorphism,
    /// the surjection `R -> A`
    pub xi: AlgebraMorphism,
    /// basis elements of `R` spanning `Q`
    pub q_basis: Vec<usize>,
    /// `_A R_R`
    pub a_r_r: Bimodule,
    /// `_R R_A`
    pub r_r_a: Bimodule,
    /// `_R A_A`
    pub r_a_a: Bimodule,
    /// `_A A_R`
    pub a_a_r: Bimodule,
    /// `_A Q_A`
    pub a_q_a: Bimodule,
    cache: FunctorCache,
}

/// Splits `R` along the ideal generated by `kernel_arrows`.
///
/// Fails with [`Error::NotSplit`] and a witness product when the ideal is not
/// spanned by the normal forms through a kernel arrow, or when the remaining
/// normal forms do not span a subalgebra.
pub fn build_split_extension(r: &Arc<Algebra>, kernel_arrows: &[&str]) -> Result<SplitExtension> {
    let f = r.field();
    let arrows = r.arrows();
    let mut kernel_idx = Vec::with_capacity(kernel_arrows.len());
    for name in kernel_arrows {
        let Some(a) = arrows.iter().find(|a| a.0 == *name) else {
            return Err(Error::input(format!("kernel arrow '{name}' not found in {}", r.name())));
        };
        kernel_idx.push(a.3);
    }
    if kernel_idx.is_empty() {
        return Err(Error::input("at least one kernel arrow is required"));
    }
    let through_kernel = |i: usize| r.element(i).label.split('*').any(|part| kernel_arrows.contains(&part));
    let q_basis: Vec<usize> = (0..r.dim()).filter(|&i| through_kernel(i)).collect();
    let complement: Vec<usize> = (0..r.dim()).filter(|&i| !through_kernel(i)).collect();

    // the ideal generated by the kernel arrows must be exactly span(q_basis)
    let mut ideal = Vec::new();
    for &k in &kernel_idx {
        for u in 0..r.dim() {
            let uk = r.multiply(&r.unit_vector(u), &r.unit_vector(k));
            if uk.iter().all(Zero::is_zero) {
                continue;
            }
            for v in 0..r.dim() {
                let ukv = r.multiply(&uk, &r.unit_vector(v));
                if let Some(bad) = complement.iter().find(|&&c| !ukv[c].is_zero()) {
                    return Err(Error::NotSplit(format!(
                        "{} * {} * {} has the term {} outside the kernel span",
                        r.element(u).label,
                        r.element(k).label,
                        r.element(v).label,
                        r.element(*bad).label
                    )));
                }
                if ukv.iter().any(|c| !c.is_zero()) {
                    ideal.push(ukv);
                }
            }
        }
    }
    let span = Subspace::span_vectors(f, r.dim(), ideal);
    if span.dim() != q_basis.len() {
        return Err(Error::NotSplit(format!(
            "the ideal has dimension {} but {} normal forms pass through a kernel arrow",
            span.dim(),
            q_basis.len()
        )));
    }

    let vertices: Vec<usize> = (0..r.vertex_count()).collect();
    let (a, sigma) = subalgebra_on(r, &complement, &vertices, format!("{}_base", r.name()), MorphismKind::Section)?;
    let position: HashMap<usize, usize> = complement.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut images = Matrix::zeros(f, r.dim(), a.dim());
    for (&i, &k) in &position {
        images.set(i, k, f.one());
    }
    let xi = AlgebraMorphism {
        kind: MorphismKind::Quotient,
        source: r.clone(),
        target: a.clone(),
        vertex_map: vertices.iter().map(|&v| Some(v)).collect(),
        images,
    };
    let id_r = AlgebraMorphism::identity(r);
    let id_a = AlgebraMorphism::identity(&a);
    let all_r: Vec<usize> = (0..r.dim()).collect();
    let all_a: Vec<usize> = (0..a.dim()).collect();
    let a_r_r = Bimodule::from_carrier(r, &all_r, &sigma, &id_r)?;
    let r_r_a = Bimodule::from_carrier(r, &all_r, &id_r, &sigma)?;
    let r_a_a = Bimodule::from_carrier(&a, &all_a, &xi, &id_a)?;
    let a_a_r = Bimodule::from_carrier(&a, &all_a, &id_a, &xi)?;
    let a_q_a = Bimodule::from_carrier(r, &q_basis, &sigma, &sigma)?;
    let (a_op, _) = opposite_algebra(&a)?;
    Ok(SplitExtension {
        r: r.clone(),
        a,
        a_op,
        kernel_arrows: kernel_arrows.iter().map(|s| s.to_string()).collect(),
        sigma,
        xi,
        q_basis,
        a_r_r,
        r_r_a,
        r_a_a,
        a_a_r,
        a_q_a,
        cache: Mutex::new(HashMap::new()),
    })
}

impl SplitExtension {
    pub fn dim_q(&self) -> usize {
        self.q_basis.len()
    }

    /// `_A R` as a right module over the opposite of `A`.
    pub fn left_r(&self) -> Result<RightModule> {
        self.a_r_r.as_left_module(&self.a_op)
    }

    /// `_A Q` as a right module over the opposite of `A`.
    pub fn left_q(&self) -> Result<RightModule> {
        self.a_q_a.as_left_module(&self.a_op)
    }

    /// Whether `_A R` is projective, i.e. whether `xi` is a projective extension.
    pub fn is_projective_left(&self) -> Result<bool> {
        is_projective_module(&self.left_r()?)
    }

    /// Multiplicities of the indecomposable projective left modules `A e_v` in
    /// `_A R`, when it is projective.
    pub fn left_multiplicities(&self) -> Result<Option<Vec<usize>>> {
        projective_multiplicities(&self.left_r()?)
    }

    /// One of the four functors between `mod A` and `mod R`.
    pub fn apply(&self, kind: FunctorKind, m: &RightModule) -> Result<RightModule> {
        let x = match kind {
            FunctorKind::TensorUpR | FunctorKind::HomUp => &self.a,
            FunctorKind::TensorDownA | FunctorKind::HomDown => &self.r,
            other => {
                return Err(Error::input(format!(
                    "{} is not a split-extension functor",
                    other.name()
                )))
            }
        };
        super::same(x, m.algebra(), kind.name())?;
        cached(&self.cache, kind, m, || match kind {
            FunctorKind::TensorUpR => tensor_with_bimodule(m, &self.a_r_r),
            FunctorKind::TensorDownA => tensor_with_bimodule(m, &self.r_a_a),
            FunctorKind::HomUp => hom_from_bimodule(&self.r_r_a, m),
            _ => hom_from_bimodule(&self.a_a_r, m),
        })
    }

    /// `M (x)_A R`.
    pub fn induce(&self, m: &RightModule) -> Result<RightModule> {
        self.apply(FunctorKind::TensorUpR, m)
    }

    /// `M (x)_A Q`.
    pub fn tensor_q(&self, m: &RightModule) -> Result<RightModule> {
        tensor_with_bimodule(m, &self.a_q_a)
    }

    /// `Hom_R(_A R_R, N)`, the restriction of an `R`-module to `A`.
    pub fn restrict(&self, n: &RightModule) -> Result<RightModule> {
        hom_from_bimodule(&self.a_r_r, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::tests::thin_modules;
    use crate::module::{ext_dims, hom_dim, iso_test};

    fn cycle(relations: &[&str]) -> Arc<Algebra> {
        let mut text = String::from("algebra R\nvertices 1 2 3\narrow alpha 1 2\narrow beta 2 3\narrow gamma 3 1\n");
        for r in relations {
            text.push_str(&format!("relation {r}\n"));
        }
        Algebra::from_text(&text).unwrap()
    }

    fn a3() -> Arc<Algebra> {
        crate::bimodule::tests::a3()
    }

    #[test]
    fn cycle_with_gamma_killed() {
        let r = cycle(&["alpha*beta", "beta*gamma", "gamma*alpha"]);
        let se = build_split_extension(&r, &["gamma"]).unwrap();
        assert_eq!(se.a.dim(), 5);
        assert_eq!(se.dim_q(), 1);
        assert!(se.sigma.diagnostics().is_empty());
        assert!(se.xi.diagnostics().is_empty());
        for x in [&se.a_r_r, &se.r_r_a, &se.r_a_a, &se.a_a_r, &se.a_q_a] {
            assert!(x.diagnostics().is_empty());
        }
        assert!(!se.is_projective_left().unwrap());
    }

    #[test]
    fn quiver_a3_with_alpha_killed() {
        let se = build_split_extension(&a3(), &["alpha"]).unwrap();
        assert_eq!(se.dim_q(), 2);
        assert!(se.is_projective_left().unwrap());
        let q = se.left_q().unwrap();
        assert_eq!(projective_multiplicities(&q).unwrap(), Some(vec![2, 0, 0]));
    }

    #[test]
    fn unknown_kernel_arrow() {
        assert!(matches!(build_split_extension(&a3(), &["delta"]), Err(Error::Input(_))));
    }

    #[test]
    fn ideal_leaving_the_kernel_span_is_rejected() {
        // alpha*beta = gamma*delta: killing gamma also kills alpha*beta
        let r = Algebra::from_text(
            "algebra S\nvertices 1 2 3 4\narrow alpha 1 2\narrow beta 2 4\narrow gamma 1 3\narrow delta 3 4\nrelation alpha*beta - gamma*delta\n",
        )
        .unwrap();
        let err = build_split_extension(&r, &["gamma"]).unwrap_err();
        assert!(matches!(err, Error::NotSplit(_)), "{err}");
    }

    #[test]
    fn down_after_up_is_identity() {
        let r = cycle(&["alpha*beta"]);
        let se = build_split_extension(&r, &["gamma"]).unwrap();
        for m in thin_modules(&se.a) {
            let up = se.induce(&m).unwrap();
            assert!(up.axiom_violation().is_none());
            assert_eq!(up.dim(), m.dim() + se.tensor_q(&m).unwrap().dim());
            let down = se.apply(FunctorKind::TensorDownA, &up).unwrap();
            assert!(iso_test(&down, &m).unwrap().is_iso());
        }
        for n in thin_modules(&r) {
            let up = se.apply(FunctorKind::HomUp, &n);
            assert!(up.is_err(), "HomUp takes A-modules");
            let down = se.apply(FunctorKind::HomDown, &n).unwrap();
            let back = se.apply(FunctorKind::HomUp, &down).unwrap();
            assert!(back.axiom_violation().is_none());
        }
    }

    #[test]
    fn tensor_hom_adjunction() {
        let r = cycle(&["alpha*beta", "beta*gamma", "gamma*alpha"]);
        let se = build_split_extension(&r, &["gamma"]).unwrap();
        for m in thin_modules(&se.a) {
            for n in thin_modules(&r) {
                let lhs = hom_dim(&se.induce(&m).unwrap(), &n).unwrap();
                let rhs = hom_dim(&m, &se.restrict(&n).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ext_counterexample_on_cycle() {
        let r = cycle(&["alpha*beta", "beta*gamma", "gamma*alpha"]);
        let se = build_split_extension(&r, &["gamma"]).unwrap();
        let s1 = RightModule::simple(se.a.clone(), 0).unwrap();
        let up = se.induce(&s1).unwrap();
        assert!(iso_test(&up, &RightModule::simple(r.clone(), 0).unwrap()).unwrap().is_iso());
        assert_eq!(ext_dims(&up, &up, 3).unwrap().dims[3], 1);
        let back = se.restrict(&up).unwrap();
        assert_eq!(ext_dims(&s1, &back, 3).unwrap().dims[3], 0);
    }
}
