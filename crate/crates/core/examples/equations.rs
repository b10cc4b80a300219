//! Equations and parametrization matrix of the model generated by 1|2|34.

use marginal_independence::cdf::{
    binomial_in_kernel, maximal_equations, minor_equations, param_matrix, StateShape,
};
use marginal_independence::closure::closure;
use marginal_independence::{PartialSetPartition, Result, StatementSet};

fn main() -> Result<()> {
    let ideal = closure(&StatementSet::parse("1|2|34", 4)?);
    let shape = StateShape::binary(4);

    println!("factorization equations:");
    for f in maximal_equations(&ideal, &shape) {
        println!("  {}", f.render(&shape));
    }

    let pi = PartialSetPartition::parse("12|3", 4)?;
    println!("minors of {pi}:");
    for m in minor_equations(&pi, &shape) {
        println!("  {}", m.render(&shape));
    }

    let a = param_matrix(&ideal, &shape);
    println!("parametrization matrix:\n{a}");
    let col = |label: &str| a.binary_column(label);
    let in_kernel = binomial_in_kernel(
        &a,
        &[col("q_134")?, col("q_234")?],
        &[col("q_34")?, col("q_1234")?],
    )?;
    println!("q_134*q_234 - q_34*q_1234 in kernel: {in_kernel}");
    Ok(())
}
