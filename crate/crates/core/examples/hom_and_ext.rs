// Hom and Ext between simples of the 3-cycle with all length-two paths zero.
use exrep::fixtures;
use exrep::module::{ext_dims, hom_dim};
use exrep::RightModule;

fn main() -> exrep::Result<()> {
    let r = fixtures::algebra(fixtures::CYCLE3)?;
    let simples: Vec<RightModule> = (0..3).map(|v| RightModule::simple(r.clone(), v)).collect::<exrep::Result<_>>()?;
    for (i, s) in simples.iter().enumerate() {
        for (j, t) in simples.iter().enumerate() {
            let table = ext_dims(s, t, 6)?;
            println!("S{} -> S{}: hom {} ext {:?} ({:?})", i + 1, j + 1, hom_dim(s, t)?, table.dims, table.certainty);
        }
    }
    Ok(())
}
