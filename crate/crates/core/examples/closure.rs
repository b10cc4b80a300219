//! Split closure, the splitting fixpoint and the membership test.

use marginal_independence::closure::{closure, fixpoint_split, max_element_for, member};
use marginal_independence::{GroundSet, PartialSetPartition, Result, StatementSet};

fn main() -> Result<()> {
    let gens = StatementSet::parse("1|23,2|3", 3)?;
    let ideal = closure(&gens);
    let elements: Vec<String> = ideal.iter().map(|e| e.to_text()).collect();
    println!("closure of {}: {}", gens.to_text(), elements.join(", "));
    println!(
        "maximal generators: {}",
        ideal.maximal_generators().to_text()
    );

    let c = StatementSet::parse("3|4,2|34,1|234", 4)?;
    let top = max_element_for(GroundSet::full(4), &c);
    println!("maximal element on 1234 for {}: {top}", c.to_text());
    let seed = PartialSetPartition::parse("12|34", 4)?;
    println!(
        "splitting fixpoint of {seed}: {}",
        fixpoint_split(&seed, &c)
    );

    for query in ["1|2|3|4", "12|3", "1|2"] {
        let sigma = PartialSetPartition::parse(query, 4)?;
        println!("{query} in closure: {}", member(&sigma, &c));
    }

    let json = serde_json::to_string(&gens.to_json()).expect("serializable");
    println!("JSON form: {json}");
    Ok(())
}
