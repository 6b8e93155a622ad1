//! Runs the reproduction suite and prints its pass/fail matrix.

use exrep::reproduce::{render, run_all, Fixtures};

fn main() {
    print!("{}", render(&run_all(&Fixtures::bundled())));
}
