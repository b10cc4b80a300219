//! Probability and cdf coordinates of a small table, and back.

use marginal_independence::cdf::{cdf_to_prob, prob_to_cdf, Rational, RationalTensor, StateShape};
use marginal_independence::Result;
use num_bigint::BigInt;

fn main() -> Result<()> {
    let shape = StateShape::parse("2,3")?;
    let weights = [1, 2, 3, 4, 5, 5];
    let total: i64 = weights.iter().sum();
    let p = RationalTensor::from_entries(
        shape.clone(),
        weights
            .iter()
            .map(|&w| Rational::new(BigInt::from(w), BigInt::from(total)))
            .collect(),
    )?;
    let q = prob_to_cdf(&p);
    for i in shape.indices() {
        println!(
            "{i}: p = {:<5} q = {:<5} {}",
            p.get(&i).to_string(),
            q.get(&i).to_string(),
            shape.label(&i)
        );
    }
    assert_eq!(cdf_to_prob(&q), p);
    println!("inverse transform recovers p exactly");
    Ok(())
}
