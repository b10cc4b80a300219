//! Dimension and degree of a few binary models on four variables.

use marginal_independence::cdf::{param_matrix, StateShape};
use marginal_independence::closure::closure;
use marginal_independence::toric::{projective_dimension, toric_degree};
use marginal_independence::{Result, StatementSet};

fn main() -> Result<()> {
    let shape = StateShape::binary(4);
    for gens in ["", "1|2", "1|23", "12|34", "1|2|34", "1|2|3|4"] {
        let a = param_matrix(&closure(&StatementSet::parse(gens, 4)?), &shape);
        let label = if gens.is_empty() { "∅" } else { gens };
        println!(
            "{label:<8} dimension {:>2}  degree {:>2}",
            projective_dimension(&a),
            toric_degree(&a)
        );
    }
    Ok(())
}
