//! Algebras and sequences bundled with the crate, in the documented text formats.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::module::{parse_sequence, RightModule};

/// `kA3`: the path algebra of `1 -> 2 -> 3`.
pub const KA3: &str = include_str!("../fixtures/kA3.alg");
/// `kA3` with `alpha` killed.
pub const KA3_ALPHA: &str = include_str!("../fixtures/kA3_alpha.alg");
/// Oriented 3-cycle with all paths of length two zero.
pub const CYCLE3: &str = include_str!("../fixtures/cycle3.alg");
/// Oriented 3-cycle with the single relation `alpha*beta`.
pub const CYCLE3_AB: &str = include_str!("../fixtures/cycle3_ab.alg");

/// The nine complete exceptional sequences over `kA3_alpha`, keyed by row letter.
pub const TABLE_ROWS: [(char, &str); 9] = [
    ('a', include_str!("../fixtures/table/row_a.seq")),
    ('b', include_str!("../fixtures/table/row_b.seq")),
    ('c', include_str!("../fixtures/table/row_c.seq")),
    ('d', include_str!("../fixtures/table/row_d.seq")),
    ('e', include_str!("../fixtures/table/row_e.seq")),
    ('f', include_str!("../fixtures/table/row_f.seq")),
    ('g', include_str!("../fixtures/table/row_g.seq")),
    ('h', include_str!("../fixtures/table/row_h.seq")),
    ('i', include_str!("../fixtures/table/row_i.seq")),
];

/// Expected images under `- (x)_A kA3` of the rows whose images are asserted to
/// be complete exceptional sequences over `kA3`.
pub const TABLE_IMAGES: [(char, &str); 5] = [
    ('a', include_str!("../fixtures/table/image_a.seq")),
    ('d', include_str!("../fixtures/table/image_d.seq")),
    ('e', include_str!("../fixtures/table/image_e.seq")),
    ('f', include_str!("../fixtures/table/image_f.seq")),
    ('i', include_str!("../fixtures/table/image_i.seq")),
];

pub fn algebra(text: &str) -> Result<Arc<Algebra>> {
    Algebra::from_text(text)
}

/// Parses a bundled sequence made of named constructors.
pub fn sequence(text: &str, algebra: &Arc<Algebra>) -> Result<Vec<RightModule>> {
    Ok(parse_sequence(text, algebra, None)?.into_iter().map(|m| m.module).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_parse() {
        let dims: Vec<usize> = [KA3, KA3_ALPHA, CYCLE3, CYCLE3_AB]
            .iter()
            .map(|t| algebra(t).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![6, 4, 6, 9]);
        let a = algebra(KA3_ALPHA).unwrap();
        for (_, row) in TABLE_ROWS {
            assert_eq!(sequence(row, &a).unwrap().len(), 3);
        }
        let r = algebra(KA3).unwrap();
        for (_, row) in TABLE_IMAGES {
            assert_eq!(sequence(row, &r).unwrap().len(), 3);
        }
    }
}
