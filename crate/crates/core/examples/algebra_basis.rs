//! Builds a bound quiver algebra from text and prints its normal-form basis
//! and Cartan matrix.

use exrep::Algebra;

fn main() -> exrep::Result<()> {
    let a = Algebra::from_text(
        "algebra R'\nvertices 1 2 3\narrow alpha 1 2\narrow beta 2 3\narrow gamma 3 1\nrelation alpha*beta\n",
    )?;
    println!("{} has dimension {}", a.name(), a.dim());
    for b in a.basis() {
        println!("  {:<16} {} -> {}", b.label, a.vertices()[b.source], a.vertices()[b.target]);
    }
    let n = a.vertex_count();
    for u in 0..n {
        let row: Vec<usize> = (0..n).map(|v| a.block(u, v).len()).collect();
        println!("e{}Ae_v: {row:?}", u + 1);
    }
    Ok(())
}
