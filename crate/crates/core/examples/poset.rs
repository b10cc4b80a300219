//! Partial set partitions of [4]: parsing, order, rank and covers.

use marginal_independence::partition::enumerate;
use marginal_independence::{PartialSetPartition, Result};

fn main() -> Result<()> {
    let n = 4;
    let all = enumerate(n, 2);
    println!("{} statements with at least two blocks on [{n}]", all.len());

    let tau = PartialSetPartition::parse("1|2", n)?;
    let pi = PartialSetPartition::parse("13|24", n)?;
    println!("{tau} <= {pi}: {}", tau.leq(&pi));
    println!("rank({pi}) = {}", pi.rank());

    let covers: Vec<String> = all
        .iter()
        .filter(|x| x.covers(&tau))
        .map(|x| x.to_text())
        .collect();
    println!("covers of {tau}: {}", covers.join(", "));

    // 1|2 and 3|4 have two minimal upper bounds
    let other = PartialSetPartition::parse("3|4", n)?;
    let upper: Vec<&PartialSetPartition> =
        all.iter().filter(|x| tau.leq(x) && other.leq(x)).collect();
    let minimal: Vec<String> = upper
        .iter()
        .filter(|x| !upper.iter().any(|y| y != *x && y.leq(x)))
        .map(|x| x.to_text())
        .collect();
    println!(
        "minimal upper bounds of {tau} and {other}: {}",
        minimal.join(", ")
    );

    let refined = PartialSetPartition::parse("12|34", n)?
        .meet_same_support(&PartialSetPartition::parse("13|24", n)?)?;
    println!("common refinement of 12|34 and 13|24: {refined}");
    Ok(())
}
