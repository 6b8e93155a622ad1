//! Reads a module file, checks it, and writes it back out.

use exrep::fixtures;
use exrep::module::{module_to_text, parse_module_named, brick_report};

fn main() -> exrep::Result<()> {
    let a = fixtures::algebra(fixtures::KA3)?;
    let text = "module M over R\ndim 1 2 1\nmap alpha [[1, 0]]\nmap beta [[0], [1]]\nend\n";
    let m = parse_module_named(text, &a)?;
    println!("{} has dims {:?}, End dim {}", m.name, m.module.dims(), brick_report(&m.module).end_dim);
    print!("{}", module_to_text("M", &m.module));
    Ok(())
}
