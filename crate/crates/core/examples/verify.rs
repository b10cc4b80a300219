//! Checks a ternary model on random points: every equation vanishes and
//! each minimal statement outside the model fails at a generic point.

use marginal_independence::cdf::{
    minimal_non_members, param_matrix, sample_model_point, verify_model, StateShape,
};
use marginal_independence::closure::closure;
use marginal_independence::{Result, StatementSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let ideal = closure(&StatementSet::parse("1|23", 3)?);
    let shape = StateShape::parse("2,3,3")?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    let point = sample_model_point(&param_matrix(&ideal, &shape), &mut rng);
    println!("generic point sums to {}", point.prob.sum());
    let outside: Vec<String> = minimal_non_members(&ideal)
        .iter()
        .map(|p| p.to_text())
        .collect();
    println!(
        "minimal statements outside the model: {}",
        outside.join(", ")
    );

    let report = verify_model(&ideal, &shape, 5, &mut rng);
    println!("{report:#?}");
    println!("passed: {}", report.passed());
    Ok(())
}
