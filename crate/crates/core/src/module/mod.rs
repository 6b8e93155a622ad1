//! Right modules over structure-constant algebras.
//!
//! A module stores one vector space per vertex and, for every basis element
//! `b: u -> v` of the algebra, a `d_u x d_v` matrix acting on row vectors.

mod hom;
mod io;
mod random;
mod resolution;

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::Zero;

pub use hom::{brick_report, hom_basis, hom_dim, is_semibrick, iso_test, BrickReport, IsoOutcome};
pub use random::random_module;
pub use io::{
    load_module, load_sequence, module_to_text, parse_module, parse_module_named, parse_sequence, resolve_named, NamedModule,
};
pub use resolution::{
    ext_dims, ext_dims_padded, is_projective_module, minimal_resolution, projective_multiplicities,
    top_and_cover, Cover, ExtCertainty, ExtTable, Resolution, ResolutionStatus, DEFAULT_STEPS,
};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{quotient_with_section, Field, Matrix, Scalar, Subspace};

#[derive(Clone, Debug)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    actions: Vec<Matrix>,
}

/// A module map given by one matrix per vertex, `f_v: d_v(M) x d_v(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: Vec<Matrix>,
}

pub(crate) fn same_algebra(a: &Algebra, b: &Algebra) -> Result<()> {
    if std::ptr::eq(a, b) || a.fingerprint() == b.fingerprint() {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch(format!(
            "modules live over '{}' and '{}'",
            a.name(),
            b.name()
        )))
    }
}

impl RightModule {
    /// Builds a module from the action of every basis element and checks all
    /// module axioms on every pair of basis elements.
    pub fn from_actions(algebra: Arc<Algebra>, dims: Vec<usize>, actions: Vec<Matrix>) -> Result<Self> {
        let m = RightModule::unchecked(algebra, dims, actions)?;
        if let Some(problem) = m.axiom_violation() {
            return Err(Error::ModuleAxiom(problem));
        }
        Ok(m)
    }

    /// Shape-checked but otherwise unverified construction, for results that are
    /// modules by construction.
    pub(crate) fn unchecked(algebra: Arc<Algebra>, dims: Vec<usize>, actions: Vec<Matrix>) -> Result<Self> {
        if dims.len() != algebra.vertex_count() {
            return Err(Error::Dimension(format!(
                "{} vertex dimensions given for {} vertices",
                dims.len(),
                algebra.vertex_count()
            )));
        }
        if actions.len() != algebra.dim() {
            return Err(Error::Dimension("one action matrix per basis element is required".into()));
        }
        for (i, m) in actions.iter().enumerate() {
            let b = algebra.element(i);
            if m.shape() != (dims[b.source], dims[b.target]) {
                return Err(Error::Dimension(format!(
                    "action of {} is {}x{}, expected {}x{}",
                    b.label,
                    m.rows(),
                    m.cols(),
                    dims[b.source],
                    dims[b.target]
                )));
            }
        }
        Ok(RightModule {
            algebra,
            dims,
            actions,
        })
    }

    /// Builds a module from matrices for the radical generators (missing ones act
    /// as zero); the other basis elements act through their word expressions.
    pub fn from_generators(
        algebra: Arc<Algebra>,
        dims: Vec<usize>,
        gens: &HashMap<usize, Matrix>,
    ) -> Result<Self> {
        let actions = actions_from_generators(&algebra, &dims, gens)?;
        RightModule::from_actions(algebra, dims, actions)
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let dims = vec![0; algebra.vertex_count()];
        let f = algebra.field();
        let actions = (0..algebra.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect();
        RightModule {
            algebra,
            dims,
            actions,
        }
    }

    pub fn simple(algebra: Arc<Algebra>, v: usize) -> Result<Self> {
        check_vertex(&algebra, v)?;
        let mut dims = vec![0; algebra.vertex_count()];
        dims[v] = 1;
        let f = algebra.field();
        let actions = algebra
            .basis()
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut m = Matrix::zeros(f, dims[b.source], dims[b.target]);
                if algebra.is_idempotent(i) && b.source == v {
                    m.set(0, 0, f.one());
                }
                m
            })
            .collect();
        RightModule::unchecked(algebra, dims, actions)
    }

    /// The indecomposable projective `e_v A`.
    pub fn projective(algebra: Arc<Algebra>, v: usize) -> Result<Self> {
        check_vertex(&algebra, v)?;
        let n = algebra.vertex_count();
        let blocks: Vec<Vec<usize>> = (0..n).map(|x| algebra.block(v, x)).collect();
        let dims: Vec<usize> = blocks.iter().map(Vec::len).collect();
        let f = algebra.field();
        let mut actions = Vec::with_capacity(algebra.dim());
        for a in 0..algebra.dim() {
            let ea = algebra.element(a);
            let (src, dst) = (&blocks[ea.source], &blocks[ea.target]);
            let mut m = Matrix::zeros(f, src.len(), dst.len());
            for (r, &b) in src.iter().enumerate() {
                for (k, c) in algebra.product(b, a) {
                    let col = dst.iter().position(|&x| x == *k).expect("Peirce grading");
                    m.set(r, col, c.clone());
                }
            }
            actions.push(m);
        }
        RightModule::unchecked(algebra, dims, actions)
    }

    /// The indecomposable injective `D(A e_v)`: the dual of the left projective at
    /// `v`, i.e. of the projective at `v` over the opposite algebra.
    pub fn injective(algebra: Arc<Algebra>, v: usize) -> Result<Self> {
        check_vertex(&algebra, v)?;
        let n = algebra.vertex_count();
        // I(v)_x is dual to e_x A e_v; (f.a)(b') = f(a b')
        let blocks: Vec<Vec<usize>> = (0..n).map(|x| algebra.block(x, v)).collect();
        let dims: Vec<usize> = blocks.iter().map(Vec::len).collect();
        let f = algebra.field();
        let mut actions = Vec::with_capacity(algebra.dim());
        for a in 0..algebra.dim() {
            let ea = algebra.element(a);
            let (src, dst) = (&blocks[ea.source], &blocks[ea.target]);
            let mut m = Matrix::zeros(f, src.len(), dst.len());
            for (col, &b2) in dst.iter().enumerate() {
                for (k, c) in algebra.product(a, b2) {
                    let row = src.iter().position(|&x| x == *k).expect("Peirce grading");
                    m.set(row, col, c.clone());
                }
            }
            actions.push(m);
        }
        RightModule::unchecked(algebra, dims, actions)
    }

    /// One-dimensional at each vertex of `support`, with every generator inside
    /// the support acting as the identity.
    pub fn thin(algebra: Arc<Algebra>, support: &[usize]) -> Result<Self> {
        for &v in support {
            check_vertex(&algebra, v)?;
        }
        let mut dims = vec![0; algebra.vertex_count()];
        for &v in support {
            dims[v] = 1;
        }
        let f = algebra.field();
        let mut gens = HashMap::new();
        for &g in algebra.generators() {
            let b = algebra.element(g);
            if dims[b.source] == 1 && dims[b.target] == 1 {
                gens.insert(g, Matrix::identity(f, 1));
            }
        }
        let actions = actions_from_generators(&algebra, &dims, &gens)?;
        let m = RightModule::unchecked(algebra, dims, actions)?;
        if let Some(problem) = m.axiom_violation() {
            return Err(Error::ModuleAxiom(format!("thin module violates the relations: {problem}")));
        }
        Ok(m)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.actions[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Start of each vertex space in the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    /// Action of basis element `b` on the total space.
    pub fn total_action(&self, b: usize) -> Matrix {
        let e = self.algebra.element(b);
        let off = self.offsets();
        let mut m = Matrix::zeros(self.field(), self.dim(), self.dim());
        m.set_block(off[e.source], off[e.target], &self.actions[b]);
        m
    }

    /// Hash of the exact data (not an isomorphism invariant), used as a cache key.
    pub fn fingerprint(&self) -> String {
        let mut h = DefaultHasher::new();
        self.algebra.fingerprint().hash(&mut h);
        self.dims.hash(&mut h);
        for &r in &self.algebra.radical() {
            self.actions[r].hash(&mut h);
        }
        format!("{:016x}", h.finish())
    }

    /// First failure of the module axioms, if any.
    pub fn axiom_violation(&self) -> Option<String> {
        let a = &self.algebra;
        let f = self.field();
        for (v, &e) in a.idempotents().iter().enumerate() {
            if !self.actions[e].is_identity() {
                return Some(format!("e{} does not act as the identity", a.vertices()[v]));
            }
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let (bi, bj) = (a.element(i), a.element(j));
                if bi.target != bj.source {
                    continue;
                }
                let lhs = self.actions[i].mul(&self.actions[j]);
                let mut rhs = Matrix::zeros(f, self.dims[bi.source], self.dims[bj.target]);
                for (k, c) in a.product(i, j) {
                    rhs.axpy(c, &self.actions[*k]);
                }
                if lhs != rhs {
                    return Some(format!("action of {} * {} is not multiplicative", bi.label, bj.label));
                }
            }
        }
        None
    }

    /// The module over another algebra with the same basis and table (e.g. after
    /// lifting from `F_p` to `Q`): generator matrices are read as integers and
    /// the remaining actions are recomputed over the new field.
    pub fn transport(&self, algebra: Arc<Algebra>) -> Result<RightModule> {
        if algebra.dim() != self.algebra.dim() || algebra.vertex_count() != self.dims.len() {
            return Err(Error::AlgebraMismatch(format!(
                "cannot transport from {} to {}",
                self.algebra.name(),
                algebra.name()
            )));
        }
        let f = algebra.field();
        let mut gens = HashMap::new();
        for &g in algebra.generators() {
            let m = &self.actions[g];
            let rows = m
                .row_vecs()
                .into_iter()
                .map(|r| r.iter().map(|x| f.reduce(x)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            gens.insert(g, Matrix::from_rows(f, m.cols(), rows));
        }
        RightModule::from_generators(algebra, self.dims.clone(), &gens)
    }

    pub fn identity_map(&self) -> ModuleMap {
        ModuleMap {
            blocks: self.dims.iter().map(|&d| Matrix::identity(self.field(), d)).collect(),
        }
    }

    pub fn zero_map_to(&self, other: &RightModule) -> ModuleMap {
        ModuleMap {
            blocks: self
                .dims
                .iter()
                .zip(&other.dims)
                .map(|(&a, &b)| Matrix::zeros(self.field(), a, b))
                .collect(),
        }
    }
}

fn check_vertex(a: &Algebra, v: usize) -> Result<()> {
    if v >= a.vertex_count() {
        return Err(Error::input(format!("vertex index {v} out of range")));
    }
    Ok(())
}

pub(crate) fn actions_from_generators(
    algebra: &Algebra,
    dims: &[usize],
    gens: &HashMap<usize, Matrix>,
) -> Result<Vec<Matrix>> {
    let f = algebra.field();
    let g = algebra.generators();
    for (&b, m) in gens {
        let e = algebra.element(b);
        if !g.contains(&b) {
            return Err(Error::input(format!("{} is not a generator", e.label)));
        }
        if m.shape() != (dims[e.source], dims[e.target]) {
            return Err(Error::Dimension(format!(
                "matrix for {} is {}x{}, expected {}x{}",
                e.label,
                m.rows(),
                m.cols(),
                dims[e.source],
                dims[e.target]
            )));
        }
    }
    let gen_matrix = |k: usize| -> Matrix {
        let b = g[k];
        let e = algebra.element(b);
        gens.get(&b)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(f, dims[e.source], dims[e.target]))
    };
    let word_actions: Vec<Matrix> = algebra
        .words()
        .iter()
        .map(|w| {
            let mut m = gen_matrix(w[0]);
            for &k in &w[1..] {
                m = m.mul(&gen_matrix(k));
            }
            m
        })
        .collect();
    let mut actions = Vec::with_capacity(algebra.dim());
    for i in 0..algebra.dim() {
        let e = algebra.element(i);
        if algebra.is_idempotent(i) {
            actions.push(Matrix::identity(f, dims[e.source]));
            continue;
        }
        let mut m = Matrix::zeros(f, dims[e.source], dims[e.target]);
        for (w, c) in algebra.expression(i) {
            m.axpy(c, &word_actions[*w]);
        }
        actions.push(m);
    }
    Ok(actions)
}

/// Direct sum with block-diagonal actions, summands in the given order at every vertex.
pub fn direct_sum(algebra: &Arc<Algebra>, summands: &[&RightModule]) -> Result<RightModule> {
    for m in summands {
        same_algebra(algebra, m.algebra())?;
    }
    let n = algebra.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| summands.iter().map(|m| m.dims[v]).sum()).collect();
    let f = algebra.field();
    let actions = (0..algebra.dim())
        .map(|b| {
            let blocks: Vec<&Matrix> = summands.iter().map(|m| &m.actions[b]).collect();
            if blocks.is_empty() {
                let e = algebra.element(b);
                Matrix::zeros(f, dims[e.source], dims[e.target])
            } else {
                Matrix::block_diagonal(f, &blocks)
            }
        })
        .collect();
    RightModule::unchecked(algebra.clone(), dims, actions)
}

impl ModuleMap {
    /// `self` then `other`.
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    /// Checks `rho_M(b) f_v = f_u rho_N(b)` for every basis element `b: u -> v`.
    pub fn is_homomorphism(&self, m: &RightModule, n: &RightModule) -> bool {
        let a = m.algebra();
        if self.blocks.len() != a.vertex_count() {
            return false;
        }
        for (v, blk) in self.blocks.iter().enumerate() {
            if blk.shape() != (m.dims[v], n.dims[v]) {
                return false;
            }
        }
        (0..a.dim()).all(|b| {
            let e = a.element(b);
            m.actions[b].mul(&self.blocks[e.target]) == self.blocks[e.source].mul(&n.actions[b])
        })
    }
}

/// A submodule given by one subspace per vertex, with its inclusion map.
pub fn submodule(m: &RightModule, spaces: &[Subspace]) -> Result<(RightModule, ModuleMap)> {
    let a = m.algebra();
    if spaces.len() != a.vertex_count() {
        return Err(Error::Dimension("one subspace per vertex is required".into()));
    }
    let f = m.field();
    let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
    let mut actions = Vec::with_capacity(a.dim());
    for b in 0..a.dim() {
        let e = a.element(b);
        let image = spaces[e.source].basis().mul(&m.actions[b]);
        let mut rows = Vec::with_capacity(image.rows());
        for r in image.row_vecs() {
            let c = spaces[e.target].coordinates(&r).ok_or_else(|| {
                Error::ModuleAxiom(format!("subspace not closed under {}", e.label))
            })?;
            rows.push(c);
        }
        actions.push(Matrix::from_rows(f, dims[e.target], rows));
    }
    let sub = RightModule::unchecked(a.clone(), dims, actions)?;
    let inclusion = ModuleMap {
        blocks: spaces.iter().map(|s| s.basis().clone()).collect(),
    };
    Ok((sub, inclusion))
}

/// The submodule generated by the given vectors (each tagged with its vertex).
pub fn generated_submodule(m: &RightModule, gens: &[(usize, Vec<Scalar>)]) -> Result<(RightModule, ModuleMap)> {
    let a = m.algebra();
    let f = m.field();
    let mut vectors: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); a.vertex_count()];
    for (u, x) in gens {
        for b in 0..a.dim() {
            let e = a.element(b);
            if e.source == *u {
                let y = m.actions[b].apply(x);
                if y.iter().any(|c| !c.is_zero()) {
                    vectors[e.target].push(y);
                }
            }
        }
    }
    let spaces: Vec<Subspace> = vectors
        .into_iter()
        .enumerate()
        .map(|(v, vs)| Subspace::span_vectors(f, m.dims[v], vs))
        .collect();
    submodule(m, &spaces)
}

/// The quotient by a submodule given per vertex, with the projection map.
pub fn quotient_module(m: &RightModule, spaces: &[Subspace]) -> Result<(RightModule, ModuleMap)> {
    let a = m.algebra();
    let quotients: Vec<_> = spaces.iter().map(quotient_with_section).collect();
    let dims: Vec<usize> = quotients.iter().map(|q| q.dim).collect();
    let mut actions = Vec::with_capacity(a.dim());
    for b in 0..a.dim() {
        let e = a.element(b);
        for r in spaces[e.source].basis().row_vecs() {
            if !spaces[e.target].contains(&m.actions[b].apply(&r)) {
                return Err(Error::ModuleAxiom(format!("subspace not closed under {}", e.label)));
            }
        }
        let act = quotients[e.source]
            .section
            .mul(&m.actions[b])
            .mul(&quotients[e.target].projection);
        actions.push(act);
    }
    let q = RightModule::unchecked(a.clone(), dims, actions)?;
    let projection = ModuleMap {
        blocks: quotients.into_iter().map(|q| q.projection).collect(),
    };
    Ok((q, projection))
}

/// Kernel of a module map as a submodule of its source.
pub fn kernel(m: &RightModule, f: &ModuleMap) -> Result<(RightModule, ModuleMap)> {
    let spaces: Vec<Subspace> = f.blocks.iter().map(crate::linalg::left_kernel).collect();
    submodule(m, &spaces)
}

/// Image of a module map as a submodule of its target.
pub fn image(n: &RightModule, f: &ModuleMap) -> Result<(RightModule, ModuleMap)> {
    let spaces: Vec<Subspace> = f.blocks.iter().map(Subspace::span).collect();
    submodule(n, &spaces)
}

/// The radical `M rad A`, per vertex.
pub fn radical_spaces(m: &RightModule) -> Vec<Subspace> {
    let a = m.algebra();
    let f = m.field();
    let mut vectors: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); a.vertex_count()];
    for b in a.radical() {
        let e = a.element(b);
        vectors[e.target].extend(m.actions[b].row_vecs());
    }
    vectors
        .into_iter()
        .enumerate()
        .map(|(v, vs)| Subspace::span_vectors(f, m.dims[v], vs))
        .collect()
}
