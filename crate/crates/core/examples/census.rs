//! Counts every model on four binary variables and prints the geometry of
//! each model up to relabeling.

use marginal_independence::census::{class_census, table2, ModelClass};

fn main() -> marginal_independence::Result<()> {
    for n in [3, 4] {
        for class in ModelClass::ALL {
            let c = class_census(n, class)?;
            println!("n={n} {class:<10} total={:<4} orbits={}", c.total, c.orbits);
        }
    }
    println!();
    println!(
        "{:<40} {:>6} {:>4} {:>3} {:>3} {:>5}",
        "generators", "degree", "dim", "G", "S", "orbit"
    );
    for row in table2(4)? {
        let flag = |b: bool| if b { "x" } else { "-" };
        println!(
            "{:<40} {:>6} {:>4} {:>3} {:>3} {:>5}",
            row.generators_text(),
            row.degree,
            row.dimension,
            flag(row.graphical),
            flag(row.simplicial),
            row.orbit_size
        );
    }
    Ok(())
}
