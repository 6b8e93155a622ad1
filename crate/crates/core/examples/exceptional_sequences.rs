//! Checks a complete exceptional sequence over kA3/<alpha> and its image
//! under induction to kA3.

use exrep::bimodule::build_split_extension;
use exrep::exceptional::{check_split_theorem, is_exceptional_sequence};
use exrep::fixtures;

fn main() -> exrep::Result<()> {
    let se = build_split_extension(&fixtures::algebra(fixtures::KA3)?, &["alpha"])?;
    for (row, text) in fixtures::TABLE_ROWS {
        let seq = fixtures::sequence(text, &se.a)?;
        let base = is_exceptional_sequence(&seq, 6)?;
        let report = check_split_theorem(&se, &seq, 6)?;
        let failing: Vec<&str> = report
            .hypotheses
            .iter()
            .filter(|h| h.holds != Some(true))
            .map(|h| h.id.as_str())
            .collect();
        println!(
            "({row}) {}: exceptional {}, image exceptional {}, failing hypotheses {failing:?}",
            base.subject,
            base.certified(),
            report.conclusion.certified()
        );
    }
    Ok(())
}
