use std::sync::Arc;

use rand::Rng;

use super::{direct_sum, generated_submodule, quotient_module, RightModule};
use crate::algebra::Algebra;
use crate::error::Result;
use crate::linalg::Subspace;

/// A random nonzero module: a submodule or quotient of a sum of one or two
/// indecomposable projectives and injectives, cut out by one random vector.
/// Small integer entries keep the arithmetic cheap.
pub fn random_module<R: Rng + ?Sized>(a: &Arc<Algebra>, rng: &mut R) -> Result<RightModule> {
    let n = a.vertex_count();
    let f = a.field();
    loop {
        let parts = (0..rng.gen_range(1..=2))
            .map(|_| {
                let v = rng.gen_range(0..n);
                if rng.gen_bool(0.5) {
                    RightModule::projective(a.clone(), v)
                } else {
                    RightModule::injective(a.clone(), v)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let x = direct_sum(a, &parts.iter().collect::<Vec<_>>())?;
        let support: Vec<usize> = (0..n).filter(|&v| x.dims()[v] > 0).collect();
        let v = support[rng.gen_range(0..support.len())];
        let vector = (0..x.dims()[v]).map(|_| f.from_int(rng.gen_range(-2..=2))).collect();
        let (sub, inc) = generated_submodule(&x, &[(v, vector)])?;
        let m = match rng.gen_range(0..3) {
            0 => x,
            1 => sub,
            _ => {
                let spaces: Vec<Subspace> = inc.blocks.iter().map(Subspace::span).collect();
                quotient_module(&x, &spaces)?.0
            }
        };
        if !m.is_zero() {
            return Ok(m);
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::module::tests::a3;

    #[test]
    fn random_modules_satisfy_axioms() {
        let a = a3();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_module(&a, &mut rng).unwrap();
            assert!(m.axiom_violation().is_none());
            assert!(m.dim() > 0);
        }
    }
}
