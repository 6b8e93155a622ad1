// Enumerates bricks and complete exceptional sequences by brute force over F2.
use exrep::exceptional::{enumerate_bricks, enumerate_ces, EnumerationConfig};
use exrep::fixtures;

fn main() -> exrep::Result<()> {
    let cfg = EnumerationConfig::default();
    for (name, text) in [("kA3", fixtures::KA3), ("kA3/<alpha>", fixtures::KA3_ALPHA)] {
        let a = fixtures::algebra(text)?;
        let bricks = enumerate_bricks(&a, &cfg)?;
        let ces = enumerate_ces(&a, &cfg)?;
        println!("{name}: {} bricks, {} complete exceptional sequences", bricks.bricks.len(), ces.sequences.len());
        for k in 0..ces.sequences.len() {
            let dims: Vec<_> = ces.sequence(k).iter().map(|m| m.dims().to_vec()).collect();
            println!("  {dims:?}");
        }
    }
    Ok(())
}
