// Minimal projective resolution of a simple over the 3-cycle: it is periodic
// with period three.
use exrep::fixtures;
use exrep::module::{minimal_resolution, DEFAULT_STEPS};
use exrep::RightModule;

fn main() -> exrep::Result<()> {
    let r = fixtures::algebra(fixtures::CYCLE3)?;
    let res = minimal_resolution(&RightModule::simple(r.clone(), 0)?, DEFAULT_STEPS)?;
    for (k, cover) in res.covers.iter().take(6).enumerate() {
        let tops: Vec<&str> = cover.tops.iter().map(|&v| r.vertices()[v].as_str()).collect();
        println!("P_{k} = P({}), syzygy dims {:?}", tops.join(") + P("), res.syzygies[k + 1].dims());
    }
    println!("{:?}", res.status);
    Ok(())
}
