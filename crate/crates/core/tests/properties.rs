use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use exrep::bimodule::{build_recollement, build_split_extension, FunctorKind, SplitExtension};
use exrep::exceptional::{check_split_theorem, enumerate_ces, is_exceptional_sequence, EnumerationConfig, Implication};
use exrep::fixtures;
use exrep::linalg::{left_kernel, Field, Matrix};
use exrep::module::{direct_sum, ext_dims, ext_dims_padded, hom_dim, iso_test, random_module, RightModule};
use exrep::Algebra;

fn ka3() -> Arc<Algebra> {
    fixtures::algebra(fixtures::KA3).unwrap()
}

fn split(text: &str, kernel: &str) -> SplitExtension {
    build_split_extension(&fixtures::algebra(text).unwrap(), &[kernel]).unwrap()
}

fn sample(a: &Arc<Algebra>, seed: u64) -> RightModule {
    random_module(a, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn matrix(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let rows = (0..rows)
        .map(|i| (0..cols).map(|j| field.from_int(entries[i * cols + j])).collect())
        .collect();
    Matrix::from_rows(field, cols, rows)
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(2)), Just(Field::Prime(5))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(field in field_strategy(), rows in 0usize..6, cols in 0usize..6, entries in prop::collection::vec(-3i64..=3, 36)) {
        let m = matrix(field, rows, cols, &entries);
        let kernel = left_kernel(&m);
        prop_assert_eq!(m.rank() + kernel.dim(), rows);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(kernel.basis().mul(&m).is_zero());
        let r = m.rref();
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
        prop_assert_eq!(r.pivots.len(), m.rank());
    }

    #[test]
    fn product_rank_is_bounded(a in prop::collection::vec(-2i64..=2, 16), b in prop::collection::vec(-2i64..=2, 16)) {
        let (x, y) = (matrix(Field::Rationals, 4, 4, &a), matrix(Field::Rationals, 4, 4, &b));
        let xy = x.mul(&y);
        prop_assert!(xy.rank() <= x.rank().min(y.rank()));
        prop_assert!(xy.rank() + 4 >= x.rank() + y.rank());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_form_on_hereditary_algebra(s in any::<u64>(), t in any::<u64>()) {
        let a = ka3();
        let (m, n) = (sample(&a, s), sample(&a, t));
        let (d, e) = (m.dims(), n.dims());
        let euler = (0..3).map(|v| (d[v] * e[v]) as i64).sum::<i64>()
            - a.arrows().iter().map(|g| (d[g.1] * e[g.2]) as i64).sum::<i64>();
        let ext = ext_dims(&m, &n, 4).unwrap();
        prop_assert_eq!(ext.dims[0], hom_dim(&m, &n).unwrap());
        prop_assert_eq!(ext.dims[0] as i64 - ext.dims[1] as i64, euler);
        prop_assert!(ext.dims[2..].iter().all(|&x| x == 0));
    }

    #[test]
    fn hom_and_ext_are_additive(s in any::<u64>(), t in any::<u64>(), u in any::<u64>(), which in 0usize..4) {
        let text = [fixtures::KA3, fixtures::KA3_ALPHA, fixtures::CYCLE3, fixtures::CYCLE3_AB][which];
        let a = fixtures::algebra(text).unwrap();
        let (m, n, x) = (sample(&a, s), sample(&a, t), sample(&a, u));
        let sum = direct_sum(&a, &[&m, &n]).unwrap();
        prop_assert_eq!(hom_dim(&sum, &x).unwrap(), hom_dim(&m, &x).unwrap() + hom_dim(&n, &x).unwrap());
        prop_assert_eq!(hom_dim(&x, &sum).unwrap(), hom_dim(&x, &m).unwrap() + hom_dim(&x, &n).unwrap());
        let (es, em, en) = (ext_dims(&sum, &x, 4).unwrap(), ext_dims(&m, &x, 4).unwrap(), ext_dims(&n, &x, 4).unwrap());
        for k in 0..=4 {
            prop_assert_eq!(es.dims[k], em.dims[k] + en.dims[k]);
        }
    }

    #[test]
    fn padded_resolutions_agree(s in any::<u64>(), t in any::<u64>(), which in 0usize..4) {
        let text = [fixtures::KA3, fixtures::KA3_ALPHA, fixtures::CYCLE3, fixtures::CYCLE3_AB][which];
        let a = fixtures::algebra(text).unwrap();
        let (m, n) = (sample(&a, s), sample(&a, t));
        prop_assert_eq!(ext_dims(&m, &n, 5).unwrap().dims, ext_dims_padded(&m, &n, 5).unwrap());
    }

    #[test]
    fn split_extension_identities(s in any::<u64>(), t in any::<u64>(), which in 0usize..3) {
        let se = match which {
            0 => split(fixtures::KA3, "alpha"),
            1 => split(fixtures::CYCLE3, "gamma"),
            _ => split(fixtures::CYCLE3_AB, "gamma"),
        };
        let m = sample(&se.a, s);
        let n = sample(&se.r, t);
        let up = se.induce(&m).unwrap();
        // R = A + Q as (A, A)-bimodules
        prop_assert_eq!(up.dim(), m.dim() + se.tensor_q(&m).unwrap().dim());
        let back = se.apply(FunctorKind::TensorDownA, &up).unwrap();
        prop_assert!(iso_test(&back, &m).unwrap().is_iso());
        prop_assert_eq!(hom_dim(&up, &n).unwrap(), hom_dim(&m, &se.restrict(&n).unwrap()).unwrap());
    }

    #[test]
    fn recollement_embeddings_are_fully_faithful(s in any::<u64>(), t in any::<u64>(), v in 0usize..3) {
        let a = ka3();
        let rec = build_recollement(&a, &[v]).unwrap();
        let (x, x2) = (sample(&rec.bar, s), sample(&rec.bar, t));
        prop_assert_eq!(hom_dim(&x, &x2).unwrap(), hom_dim(&rec.i_star(&x).unwrap(), &rec.i_star(&x2).unwrap()).unwrap());
        let (y, y2) = (sample(&rec.corner, s), sample(&rec.corner, t));
        prop_assert_eq!(hom_dim(&y, &y2).unwrap(), hom_dim(&rec.j_lower(&y).unwrap(), &rec.j_lower(&y2).unwrap()).unwrap());
    }
}

#[test]
fn induced_projectives_are_projective() {
    for se in [split(fixtures::KA3, "alpha"), split(fixtures::CYCLE3, "gamma"), split(fixtures::CYCLE3_AB, "gamma")] {
        for v in 0..se.a.vertex_count() {
            let p = RightModule::projective(se.a.clone(), v).unwrap();
            let q = RightModule::projective(se.r.clone(), v).unwrap();
            assert!(iso_test(&se.induce(&p).unwrap(), &q).unwrap().is_iso(), "P({v}) over {}", se.r.name());
        }
    }
}

fn thin_modules(a: &Arc<Algebra>) -> Vec<RightModule> {
    (1u32..8)
        .map(|mask| (0..3).filter(|v| mask & (1 << v) != 0).collect::<Vec<_>>())
        .filter_map(|s| RightModule::thin(a.clone(), &s).ok())
        .collect()
}

#[test]
fn ext_transfers_along_projective_extension() {
    let se = split(fixtures::KA3, "alpha");
    assert!(se.is_projective_left().unwrap());
    let ms = thin_modules(&se.a);
    for m in &ms {
        for n in &ms {
            let (mr, nr) = (se.induce(m).unwrap(), se.induce(n).unwrap());
            let upstairs = ext_dims(&mr, &nr, 6).unwrap().dims;
            let downstairs = ext_dims(m, &se.restrict(&nr).unwrap(), 6).unwrap().dims;
            assert_eq!(upstairs, downstairs, "{:?} {:?}", m.dims(), n.dims());
        }
    }
}

#[test]
fn ext_transfer_fails_without_projectivity() {
    let se = split(fixtures::CYCLE3, "gamma");
    let m = RightModule::thin(se.a.clone(), &[0]).unwrap();
    let mr = se.induce(&m).unwrap();
    let upstairs = ext_dims(&mr, &mr, 3).unwrap().dims[3];
    let downstairs = ext_dims(&m, &se.restrict(&mr).unwrap(), 3).unwrap().dims[3];
    assert_eq!((upstairs, downstairs), (1, 0));
}

#[test]
fn split_theorem_is_never_violated_on_the_table() {
    let se = split(fixtures::KA3, "alpha");
    for (row, text) in fixtures::TABLE_ROWS {
        let seq = fixtures::sequence(text, &se.a).unwrap();
        let report = check_split_theorem(&se, &seq, 6).unwrap();
        assert_ne!(report.implication, Implication::Violated, "row {row}");
        if report.hypotheses_hold() {
            assert!(report.conclusion.certified(), "row {row}");
        }
    }
}

#[test]
fn rejected_orderings_violate_a_pair_condition() {
    let a = fixtures::algebra(fixtures::KA3_ALPHA).unwrap();
    let found = enumerate_ces(&a, &EnumerationConfig::default()).unwrap();
    let k = found.modules.len();
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                let s = vec![x, y, z];
                let seq: Vec<RightModule> = s.iter().map(|&i| found.modules[i].clone()).collect();
                let direct = is_exceptional_sequence(&seq, 6).unwrap().certified();
                assert_eq!(direct, found.sequences.contains(&s), "{s:?}");
            }
        }
    }
}
