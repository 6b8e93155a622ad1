use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{same_algebra, ModuleMap, RightModule};
use crate::error::Result;
use crate::linalg::{left_kernel, Field, Matrix, Scalar};

/// Basis of `Hom_A(M, N)`, solved from the intertwining equations of the radical
/// generators (which imply those of every basis element).
pub fn hom_basis(m: &RightModule, n: &RightModule) -> Result<Vec<ModuleMap>> {
    same_algebra(m.algebra(), n.algebra())?;
    let a = m.algebra();
    let f = m.field();
    let nv = a.vertex_count();
    let mut offset = Vec::with_capacity(nv);
    let mut unknowns = 0;
    for v in 0..nv {
        offset.push(unknowns);
        unknowns += m.dims()[v] * n.dims()[v];
    }
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let var = |v: usize, i: usize, j: usize| offset[v] + i * n.dims()[v] + j;

    let mut equations = 0;
    for &g in a.generators() {
        let e = a.element(g);
        equations += m.dims()[e.source] * n.dims()[e.target];
    }
    let mut c = Matrix::zeros(f, unknowns, equations);
    let mut col = 0;
    for &g in a.generators() {
        let e = a.element(g);
        let (u, v) = (e.source, e.target);
        let (rm, rn) = (m.action(g), n.action(g));
        // (rho_M(g) f_v - f_u rho_N(g))[i, j] = 0
        for i in 0..m.dims()[u] {
            for j in 0..n.dims()[v] {
                for k in 0..m.dims()[v] {
                    let x = rm.get(i, k);
                    if !x.is_zero() {
                        c.add_at(var(v, k, j), col, x);
                    }
                }
                for k in 0..n.dims()[u] {
                    let y = rn.get(k, j);
                    if !y.is_zero() {
                        c.add_at(var(u, i, k), col, &f.neg(y));
                    }
                }
                col += 1;
            }
        }
    }
    let kernel = left_kernel(&c);
    let maps = kernel
        .basis()
        .row_vecs()
        .into_iter()
        .map(|x| ModuleMap {
            blocks: (0..nv)
                .map(|v| {
                    let (r, s) = (m.dims()[v], n.dims()[v]);
                    let rows = (0..r)
                        .map(|i| (0..s).map(|j| x[var(v, i, j)].clone()).collect())
                        .collect();
                    Matrix::from_rows(f, s, rows)
                })
                .collect(),
        })
        .collect();
    Ok(maps)
}

pub fn hom_dim(m: &RightModule, n: &RightModule) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BrickReport {
    pub end_dim: usize,
    pub is_brick: bool,
}

pub fn brick_report(m: &RightModule) -> BrickReport {
    let end_dim = hom_dim(m, m).expect("same algebra");
    BrickReport {
        end_dim,
        is_brick: end_dim == 1,
    }
}

/// Every member is a brick and all homs between distinct members vanish.
pub fn is_semibrick(set: &[RightModule]) -> Result<bool> {
    for (i, x) in set.iter().enumerate() {
        if hom_dim(x, x)? != 1 {
            return Ok(false);
        }
        for (j, y) in set.iter().enumerate() {
            if i != j && hom_dim(x, y)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Result of an isomorphism search. `inconclusive` is set when no invertible
/// map was found by a randomized search over a nonzero Hom space, so a negative
/// answer is not a proof.
#[derive(Clone, Debug)]
pub struct IsoOutcome {
    pub map: Option<ModuleMap>,
    pub inconclusive: bool,
}

impl IsoOutcome {
    pub fn is_iso(&self) -> bool {
        self.map.is_some()
    }

    fn no() -> Self {
        IsoOutcome {
            map: None,
            inconclusive: false,
        }
    }
}

const ENUMERATION_BUDGET: u64 = 4096;
const RANDOM_TRIES: usize = 32;
const RANDOM_RANGE: i64 = 1000;

/// Searches for an invertible element of `Hom(M, N)`.
///
/// Over `F_p` all coefficient vectors are tried when there are at most 4096 of
/// them; otherwise (and over `Q`) 32 pseudo-random combinations are tried with a
/// fixed seed. Any map returned has been checked to be an invertible homomorphism.
pub fn iso_test(m: &RightModule, n: &RightModule) -> Result<IsoOutcome> {
    same_algebra(m.algebra(), n.algebra())?;
    if m.dims() != n.dims() {
        return Ok(IsoOutcome::no());
    }
    if m.is_zero() || m.fingerprint() == n.fingerprint() {
        return Ok(IsoOutcome {
            map: Some(m.identity_map()),
            inconclusive: false,
        });
    }
    let basis = hom_basis(m, n)?;
    let k = basis.len();
    if k == 0 {
        return Ok(IsoOutcome::no());
    }
    // an isomorphism forces all four hom dimensions to agree
    if hom_dim(n, m)? != k || hom_dim(m, m)? != k || hom_dim(n, n)? != k {
        return Ok(IsoOutcome::no());
    }
    let f = m.field();
    let found = |map: ModuleMap| -> Option<ModuleMap> {
        (map.is_invertible() && map.is_homomorphism(m, n)).then_some(map)
    };
    for b in &basis {
        if let Some(map) = found(b.clone()) {
            return Ok(IsoOutcome {
                map: Some(map),
                inconclusive: false,
            });
        }
    }
    let combine = |coefs: &[Scalar]| -> ModuleMap {
        let mut acc = basis[0].scale(&coefs[0]);
        for (b, c) in basis.iter().zip(coefs).skip(1) {
            acc = acc.add(&b.scale(c));
        }
        acc
    };
    if let Field::Prime(p) = f {
        let total = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if total <= ENUMERATION_BUDGET as u128 {
            for code in 1..total as u64 {
                let mut rest = code;
                let coefs: Vec<Scalar> = (0..k)
                    .map(|_| {
                        let digit = rest % p;
                        rest /= p;
                        f.from_int(digit as i64)
                    })
                    .collect();
                if let Some(map) = found(combine(&coefs)) {
                    return Ok(IsoOutcome {
                        map: Some(map),
                        inconclusive: false,
                    });
                }
            }
            return Ok(IsoOutcome::no());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f15);
    for _ in 0..RANDOM_TRIES {
        let coefs: Vec<Scalar> = (0..k)
            .map(|_| f.from_int(rng.gen_range(-RANDOM_RANGE..=RANDOM_RANGE)))
            .collect();
        if let Some(map) = found(combine(&coefs)) {
            return Ok(IsoOutcome {
                map: Some(map),
                inconclusive: false,
            });
        }
    }
    Ok(IsoOutcome {
        map: None,
        inconclusive: true,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::module::direct_sum;
    use crate::module::tests::a3;

    #[test]
    fn simple_endomorphisms_are_scalars() {
        let a = a3();
        for v in 0..3 {
            let s = RightModule::simple(a.clone(), v).unwrap();
            assert_eq!(brick_report(&s), BrickReport { end_dim: 1, is_brick: true });
        }
    }

    #[test]
    fn hom_from_sincere_thin_to_socle() {
        let a = a3();
        let m = RightModule::thin(a.clone(), &[0, 1, 2]).unwrap();
        let s3 = RightModule::simple(a.clone(), 2).unwrap();
        let s1 = RightModule::simple(a.clone(), 0).unwrap();
        // (1 2 3) has socle S3 and top S1
        assert_eq!(hom_dim(&s3, &m).unwrap(), 1);
        assert_eq!(hom_dim(&m, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&m, &s3).unwrap(), 0);
        for h in hom_basis(&s3, &m).unwrap() {
            assert!(h.is_homomorphism(&s3, &m));
        }
        assert!(brick_report(&m).is_brick);
    }

    #[test]
    fn doubled_simple_is_not_a_brick() {
        let a = a3();
        let s = RightModule::simple(a.clone(), 0).unwrap();
        let ss = direct_sum(&a, &[&s, &s]).unwrap();
        assert_eq!(brick_report(&ss), BrickReport { end_dim: 4, is_brick: false });
    }

    #[test]
    fn semibricks() {
        let a = a3();
        let simples: Vec<_> = (0..3).map(|v| RightModule::simple(a.clone(), v).unwrap()).collect();
        assert!(is_semibrick(&simples).unwrap());
        assert!(is_semibrick(&[]).unwrap());
        let m = RightModule::thin(a.clone(), &[0, 1, 2]).unwrap();
        let s3 = RightModule::simple(a.clone(), 2).unwrap();
        assert!(is_semibrick(&[m.clone()]).unwrap());
        assert!(!is_semibrick(&[m, s3]).unwrap());
    }

    #[test]
    fn rescaled_arrow_is_isomorphic() {
        let a = a3();
        let f = a.field();
        let thin = RightModule::thin(a.clone(), &[0, 1]).unwrap();
        let mut gens = HashMap::new();
        gens.insert(a.basis_index("alpha").unwrap(), Matrix::from_ints(f, &[&[7]]));
        let scaled = RightModule::from_generators(a.clone(), vec![1, 1, 0], &gens).unwrap();
        let out = iso_test(&thin, &scaled).unwrap();
        let map = out.map.expect("isomorphic");
        assert!(map.is_invertible() && map.is_homomorphism(&thin, &scaled));
        let other = RightModule::thin(a.clone(), &[1, 2]).unwrap();
        assert!(!iso_test(&thin, &other).unwrap().is_iso());
        assert!(iso_test(&thin, &thin).unwrap().is_iso());
    }

    #[test]
    fn split_vs_nonsplit_same_dimension_vector() {
        let a = a3();
        let thin = RightModule::thin(a.clone(), &[0, 1]).unwrap();
        let split = direct_sum(
            &a,
            &[&RightModule::simple(a.clone(), 0).unwrap(), &RightModule::simple(a.clone(), 1).unwrap()],
        )
        .unwrap();
        let out = iso_test(&thin, &split).unwrap();
        assert!(!out.is_iso());
        assert!(!out.inconclusive);
    }
}
