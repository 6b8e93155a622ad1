//! The six functors of the recollement of mod kA3 at vertex 1, and a law check.

use exrep::bimodule::{build_recollement, verify_recollement_laws, FunctorKind};
use exrep::fixtures;
use exrep::RightModule;

fn main() -> exrep::Result<()> {
    let a = fixtures::algebra(fixtures::KA3)?;
    let rec = build_recollement(&a, &[0])?;
    println!("i^* exact: {}, i^! exact: {}", rec.i_upper_exact, rec.i_shriek_exact);
    let p1 = RightModule::projective(a.clone(), 0)?;
    for kind in [FunctorKind::IUpperStar, FunctorKind::IShriek, FunctorKind::JUpperStar] {
        println!("{}(P1) has dims {:?}", kind.name(), rec.apply(kind, &p1)?.dims());
    }
    let y = RightModule::simple(rec.corner.clone(), 0)?;
    println!("j_!(K) = {:?}, j_*(K) = {:?}", rec.j_lower(&y)?.dims(), rec.apply(FunctorKind::JStar, &y)?.dims());
    let samples: Vec<RightModule> = (0..3).map(|v| RightModule::injective(a.clone(), v)).collect::<exrep::Result<_>>()?;
    let report = verify_recollement_laws(&rec, &samples)?;
    println!("{} law checks, {} failures", report.checks, report.failures.len());
    Ok(())
}
