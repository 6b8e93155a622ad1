//! Finite-dimensional basic algebras given by structure constants.
//!
//! An [`Algebra`] carries a basis graded by pairs of vertices, one idempotent per
//! vertex, and a sparse multiplication table. Paths compose left to right, so the
//! label `alpha*beta` means "alpha then beta".

mod build;
mod derived;
mod parse;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

pub use build::{build_algebra, DEFAULT_MAX_LEN};
pub use derived::{corner_algebra, opposite_algebra, quotient_by_idempotent_ideal, subalgebra_on};
pub use parse::{parse_algebra, Arrow, Presentation, Quiver, RelationExpr};

pub(crate) use parse::{parse_entry, strip_comment};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, Subspace};

/// Sparse coefficient vector: `(basis index, coefficient)` pairs with nonzero coefficients.
pub type Product = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    pub label: String,
}

/// Generators of the radical and, for every radical basis element, an expression
/// as a combination of words in the generators.
#[derive(Clone, Debug)]
struct Generators {
    gens: Vec<usize>,
    words: Vec<Vec<usize>>,
    expressions: Vec<Vec<(usize, Scalar)>>,
}

#[derive(Debug)]
pub struct Algebra {
    name: String,
    field: Field,
    vertices: Vec<String>,
    basis: Vec<BasisElement>,
    idempotents: Vec<usize>,
    table: Vec<Vec<Product>>,
    fingerprint: String,
    generators: OnceLock<Generators>,
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        Algebra {
            name: self.name.clone(),
            field: self.field,
            vertices: self.vertices.clone(),
            basis: self.basis.clone(),
            idempotents: self.idempotents.clone(),
            table: self.table.clone(),
            fingerprint: self.fingerprint.clone(),
            generators: OnceLock::new(),
        }
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Assembles an algebra from its table. Only shape checks happen here; use
    /// [`Algebra::axiom_diagnostics`] for the full axiom check.
    pub fn from_parts(
        name: String,
        field: Field,
        vertices: Vec<String>,
        basis: Vec<BasisElement>,
        idempotents: Vec<usize>,
        table: Vec<Vec<Product>>,
    ) -> Result<Algebra> {
        let n = basis.len();
        if idempotents.len() != vertices.len() {
            return Err(Error::input("one idempotent per vertex is required"));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!("multiplication table is not {n}x{n}")));
        }
        for b in &basis {
            if b.source >= vertices.len() || b.target >= vertices.len() {
                return Err(Error::input(format!("basis element {} has an unknown vertex", b.label)));
            }
        }
        let mut table = table;
        for row in &mut table {
            for entry in row.iter_mut() {
                entry.retain(|(_, c)| !c.is_zero());
                entry.sort_by_key(|t| t.0);
            }
        }
        let fingerprint = fingerprint(field, &vertices, &basis, &table);
        Ok(Algebra {
            name,
            field,
            vertices,
            basis,
            idempotents,
            table,
            fingerprint,
            generators: OnceLock::new(),
        })
    }

    /// Parses and builds an algebra file in one step.
    pub fn from_text(text: &str) -> Result<Arc<Algebra>> {
        let p = parse_algebra(text)?;
        Ok(Arc::new(build_algebra(&p, DEFAULT_MAX_LEN)?))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: impl Into<String>) -> Algebra {
        let mut a = self.clone();
        a.name = name.into();
        a
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.idempotents.contains(&i)
    }

    /// Basis elements other than the vertex idempotents; they span the radical.
    pub fn radical(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.is_idempotent(i)).collect()
    }

    /// Basis elements of `e_u A e_v`.
    pub fn block(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].source == u && self.basis[i].target == v)
            .collect()
    }

    pub fn product(&self, i: usize, j: usize) -> &Product {
        &self.table[i][j]
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn max_degree(&self) -> usize {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    /// Product of two dense coefficient vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in &self.table[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(&ab, c));
                }
            }
        }
        out
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn dense(&self, p: &Product) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        for (k, c) in p {
            v[*k] = c.clone();
        }
        v
    }

    /// Radical generators: basis elements completing a basis of `rad^2` to one of `rad`.
    /// For algebras built from a quiver these are exactly the arrows.
    pub fn generators(&self) -> &[usize] {
        &self.presentation().gens
    }

    /// Generators as named arrows `(label, source, target, basis index)`.
    pub fn arrows(&self) -> Vec<(String, usize, usize, usize)> {
        self.generators()
            .iter()
            .map(|&g| {
                let b = &self.basis[g];
                (b.label.clone(), b.source, b.target, g)
            })
            .collect()
    }

    /// Words in the generators (as positions into [`Algebra::generators`]) whose
    /// products span the radical.
    pub fn words(&self) -> &[Vec<usize>] {
        &self.presentation().words
    }

    /// Expression of basis element `i` as `(word index, coefficient)` pairs. Empty
    /// for idempotents.
    pub fn expression(&self, i: usize) -> &[(usize, Scalar)] {
        &self.presentation().expressions[i]
    }

    fn presentation(&self) -> &Generators {
        self.generators.get_or_init(|| compute_generators(self))
    }

    /// Reinterprets the table over another field, e.g. to enumerate over `F_p`.
    pub fn over_field(&self, field: Field) -> Result<Algebra> {
        let mut table = self.table.clone();
        for row in &mut table {
            for entry in row.iter_mut() {
                for (_, c) in entry.iter_mut() {
                    *c = field.reduce(c)?;
                }
            }
        }
        Algebra::from_parts(
            self.name.clone(),
            field,
            self.vertices.clone(),
            self.basis.clone(),
            self.idempotents.clone(),
            table,
        )
    }

    /// Checks associativity, the idempotent and Peirce axioms and nilpotency of
    /// the radical on every basis element. An empty list means all hold.
    pub fn axiom_diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        let f = self.field;
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let (bi, bj) = (&self.basis[i], &self.basis[j]);
                for (k, _) in &self.table[i][j] {
                    let bk = &self.basis[*k];
                    if bi.target != bj.source || bk.source != bi.source || bk.target != bj.target {
                        out.push(format!(
                            "Peirce grading failed: {} * {} has a term {}",
                            bi.label, bj.label, bk.label
                        ));
                    }
                }
            }
        }
        for (u, &eu) in self.idempotents.iter().enumerate() {
            for b in 0..n {
                let left = if self.basis[b].source == u { vec![(b, f.one())] } else { Vec::new() };
                let right = if self.basis[b].target == u { vec![(b, f.one())] } else { Vec::new() };
                if self.table[eu][b] != left || self.table[b][eu] != right {
                    out.push(format!(
                        "idempotent axiom failed: e{} against {}",
                        self.vertices[u], self.basis[b].label
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.table[i][j].is_empty() {
                    continue;
                }
                let ij = self.dense(&self.table[i][j]);
                for k in 0..n {
                    let lhs = self.multiply(&ij, &self.unit_vector(k));
                    let jk = self.dense(&self.table[j][k]);
                    let rhs = self.multiply(&self.unit_vector(i), &jk);
                    if lhs != rhs {
                        out.push(format!(
                            "associativity failed on ({}, {}, {})",
                            self.basis[i].label, self.basis[j].label, self.basis[k].label
                        ));
                    }
                }
            }
        }
        if self.nilpotency_index().is_none() {
            out.push("radical is not nilpotent".to_string());
        }
        out
    }

    /// Smallest `m` with `rad^m = 0`, if the radical is nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let rad = self.radical();
        let mut power: Vec<Vec<Scalar>> = rad.iter().map(|&i| self.unit_vector(i)).collect();
        for m in 1..=self.dim() + 1 {
            if power.is_empty() {
                return Some(m);
            }
            let mut next = Vec::new();
            for x in &power {
                for &r in &rad {
                    let y = self.multiply(x, &self.unit_vector(r));
                    if y.iter().any(|c| !c.is_zero()) {
                        next.push(y);
                    }
                }
            }
            let span = Subspace::span_vectors(self.field, self.dim(), next);
            power = span.basis().row_vecs();
        }
        None
    }
}

fn fingerprint(field: Field, vertices: &[String], basis: &[BasisElement], table: &[Vec<Product>]) -> String {
    let mut h = DefaultHasher::new();
    field.hash(&mut h);
    vertices.hash(&mut h);
    basis.hash(&mut h);
    table.hash(&mut h);
    format!("{:016x}", h.finish())
}

/// Column order preferring high-degree elements as echelon pivots, so that the
/// remaining (non-pivot) elements are as low in degree as possible.
pub(crate) fn degree_descending(a: &Algebra, elements: &[usize]) -> Vec<usize> {
    let mut order = elements.to_vec();
    order.sort_by(|&x, &y| (a.basis[y].degree, y).cmp(&(a.basis[x].degree, x)));
    order
}

/// A span of algebra elements restricted to a set of coordinates, echelonized in
/// a chosen coordinate order.
pub(crate) struct OrderedSpan {
    order: Vec<usize>,
    space: Subspace,
}

impl OrderedSpan {
    pub(crate) fn new(field: Field, order: Vec<usize>, vectors: &[Vec<Scalar>]) -> Self {
        let rows: Vec<Vec<Scalar>> = vectors
            .iter()
            .map(|v| order.iter().map(|&i| v[i].clone()).collect())
            .collect();
        let space = Subspace::span_vectors(field, order.len(), rows);
        OrderedSpan { order, space }
    }

    /// Coordinates (in the original indexing) that are not leading terms.
    pub(crate) fn free(&self) -> Vec<usize> {
        let pivots = self.space.pivots();
        let mut out: Vec<usize> = (0..self.order.len())
            .filter(|k| !pivots.contains(k))
            .map(|k| self.order[k])
            .collect();
        out.sort_unstable();
        out
    }

    /// Reduces `v` modulo the span, returning a full-length vector supported on
    /// the free coordinates.
    pub(crate) fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let local: Vec<Scalar> = self.order.iter().map(|&i| v[i].clone()).collect();
        let red = self.space.reduce(&local);
        let mut out = v.to_vec();
        for (k, &i) in self.order.iter().enumerate() {
            out[i] = red[k].clone();
        }
        out
    }
}

fn compute_generators(a: &Algebra) -> Generators {
    let f = a.field;
    let rad = a.radical();
    let mut squares = Vec::new();
    for &i in &rad {
        for &j in &rad {
            if !a.table[i][j].is_empty() {
                squares.push(a.dense(&a.table[i][j]));
            }
        }
    }
    let span = OrderedSpan::new(f, degree_descending(a, &rad), &squares);
    let gens = span.free();

    // breadth-first search for independent words
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut values: Vec<Vec<Scalar>> = Vec::new();
    let mut seen = Subspace::zero(f, a.dim());
    for (k, &g) in gens.iter().enumerate() {
        let v = a.unit_vector(g);
        seen = seen.sum(&Subspace::span_vectors(f, a.dim(), vec![v.clone()]));
        words.push(vec![k]);
        values.push(v);
    }
    let mut head = 0;
    while head < words.len() {
        for (k, &g) in gens.iter().enumerate() {
            let v = a.multiply(&values[head], &a.unit_vector(g));
            if v.iter().all(Zero::is_zero) || seen.contains(&v) {
                continue;
            }
            seen = seen.sum(&Subspace::span_vectors(f, a.dim(), vec![v.clone()]));
            let mut w = words[head].clone();
            w.push(k);
            words.push(w);
            values.push(v);
        }
        head += 1;
    }

    let word_matrix = Matrix::from_rows(f, a.dim(), values);
    let mut expressions = vec![Vec::new(); a.dim()];
    for &r in &rad {
        let target = Matrix::from_rows(f, a.dim(), vec![a.unit_vector(r)]);
        let sol = crate::linalg::solve_right(&word_matrix, &target)
            .expect("shapes agree")
            .expect("generators span the radical");
        expressions[r] = sol
            .particular
            .row(0)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w, c.clone()))
            .collect();
    }
    Generators {
        gens,
        words,
        expressions,
    }
}

/// Kind of a structure-preserving map between algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorphismKind {
    Identity,
    /// Surjection onto a quotient, e.g. `A -> A/AeA` or `R -> A`.
    Quotient,
    /// Inclusion of a corner `eAe` (not unital).
    CornerInclusion,
    /// Inclusion of a subalgebra such as the section of a split extension.
    Section,
    /// Identity on the basis of the opposite algebra; reverses products.
    Opposite,
}

/// A linear map between algebras given on basis elements. `vertex_map[v]` is the
/// vertex whose idempotent is the image of `e_v`, or `None` when `e_v` maps to 0.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub kind: MorphismKind,
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub vertex_map: Vec<Option<usize>>,
    pub images: Matrix,
}

impl AlgebraMorphism {
    pub fn identity(a: &Arc<Algebra>) -> Self {
        AlgebraMorphism {
            kind: MorphismKind::Identity,
            source: a.clone(),
            target: a.clone(),
            vertex_map: (0..a.vertex_count()).map(Some).collect(),
            images: Matrix::identity(a.field(), a.dim()),
        }
    }

    pub fn image(&self, i: usize) -> &[Scalar] {
        self.images.row(i)
    }

    /// Empty iff the map is multiplicative (anti-multiplicative for
    /// [`MorphismKind::Opposite`]) and sends idempotents as `vertex_map` says.
    pub fn diagnostics(&self) -> Vec<String> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        for (v, w) in self.vertex_map.iter().enumerate() {
            let expected = match w {
                Some(w) => t.unit_vector(t.idempotent(*w)),
                None => vec![t.field().zero(); t.dim()],
            };
            if self.image(s.idempotent(v)) != expected.as_slice() {
                out.push(format!("idempotent e{} is not sent to its declared image", s.vertices()[v]));
            }
        }
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.images.apply(&s.dense(s.product(i, j)));
                let rhs = if self.kind == MorphismKind::Opposite {
                    t.multiply(self.image(j), self.image(i))
                } else {
                    t.multiply(self.image(i), self.image(j))
                };
                if lhs != rhs {
                    out.push(format!(
                        "not multiplicative on ({}, {})",
                        s.element(i).label,
                        s.element(j).label
                    ));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn a3() -> Arc<Algebra> {
        Algebra::from_text("algebra A3\nvertices 1 2 3\narrow alpha 1 2\narrow beta 2 3\n").unwrap()
    }

    #[test]
    fn generators_of_path_algebra_are_arrows() {
        let a = a3();
        let names: Vec<String> = a.arrows().into_iter().map(|t| t.0).collect();
        assert_eq!(names, ["alpha", "beta"]);
        let ab = a.basis_index("alpha*beta").unwrap();
        assert_eq!(a.words()[a.expression(ab)[0].0], vec![0, 1]);
    }

    #[test]
    fn broken_idempotent_is_reported() {
        let a = a3();
        let mut table = a.table.clone();
        table[0][0] = Vec::new();
        let bad = Algebra::from_parts(
            "bad".into(),
            a.field(),
            a.vertices().to_vec(),
            a.basis().to_vec(),
            a.idempotents().to_vec(),
            table,
        )
        .unwrap();
        let d = bad.axiom_diagnostics();
        assert!(d.iter().any(|m| m.starts_with("idempotent axiom failed")), "{d:?}");
    }

    #[test]
    fn broken_associativity_names_the_triple() {
        let a = Algebra::from_text(
            "algebra A4\nvertices 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\n",
        )
        .unwrap();
        let mut table = a.table.clone();
        let (x, y) = (a.basis_index("a").unwrap(), a.basis_index("b").unwrap());
        let xy = a.basis_index("a*b").unwrap();
        table[x][y] = vec![(xy, a.field().from_int(2))];
        let bad = Algebra::from_parts(
            "bad".into(),
            a.field(),
            a.vertices().to_vec(),
            a.basis().to_vec(),
            a.idempotents().to_vec(),
            table,
        )
        .unwrap();
        let d = bad.axiom_diagnostics();
        assert!(d.contains(&"associativity failed on (a, b, c)".to_string()), "{d:?}");
    }

    #[test]
    fn peirce_decomposition_partitions_basis() {
        let a = a3();
        let total: usize = (0..3).flat_map(|u| (0..3).map(move |v| (u, v))).map(|(u, v)| a.block(u, v).len()).sum();
        assert_eq!(total, a.dim());
        assert_eq!(a.nilpotency_index(), Some(3));
    }

    #[test]
    fn reduction_mod_p_keeps_dimension() {
        let a = a3();
        let b = a.over_field(Field::Prime(2)).unwrap();
        assert_eq!(b.dim(), a.dim());
        assert!(b.axiom_diagnostics().is_empty());
    }
}
