//! Induction and restriction along the split extension kA3 -> kA3/<alpha>.

use exrep::bimodule::build_split_extension;
use exrep::fixtures;
use exrep::RightModule;

fn main() -> exrep::Result<()> {
    let r = fixtures::algebra(fixtures::KA3)?;
    let se = build_split_extension(&r, &["alpha"])?;
    println!("dim R = {}, dim A = {}, dim Q = {}", se.r.dim(), se.a.dim(), se.dim_q());
    println!("R projective over A: {} {:?}", se.is_projective_left()?, se.left_multiplicities()?);
    for support in [&[0][..], &[1], &[2], &[1, 2]] {
        let m = RightModule::thin(se.a.clone(), support)?;
        let up = se.induce(&m)?;
        let q = se.tensor_q(&m)?;
        println!("{:?} (x) R = {:?}, (x) Q = {:?}", m.dims(), up.dims(), q.dims());
    }
    Ok(())
}
