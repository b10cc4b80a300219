//! Graphical and simplicial models on the 4-cycle and the 4-chain.

use marginal_independence::markov::BidirectedGraph;
use marginal_independence::markov::{
    graph_ideal, graph_statements, is_complete_multipartite, models_coincide, sigma_of_graph,
    simplicial_ideal, SimplicialComplex,
};
use marginal_independence::Result;

fn main() -> Result<()> {
    for (name, edges) in [("4-cycle", "1-2,2-3,3-4,1-4"), ("4-chain", "1-2,2-3,3-4")] {
        let g = BidirectedGraph::parse(edges, 4)?;
        let sigma = sigma_of_graph(&g);
        println!("{name} ({g})");
        println!("  statements: {}", graph_statements(&g).to_text());
        println!(
            "  model generators: {}",
            graph_ideal(&g).maximal_generators().to_text()
        );
        println!("  associated complex: {sigma}");
        println!(
            "  complex model: {}",
            simplicial_ideal(&sigma).maximal_generators().to_text()
        );
        println!("  models coincide: {}", models_coincide(&g));
        println!("  complete multipartite: {}", is_complete_multipartite(&g));
    }
    let boundary = SimplicialComplex::parse("12,13,23", 3)?;
    println!(
        "triangle boundary model: {}",
        simplicial_ideal(&boundary).maximal_generators().to_text()
    );
    Ok(())
}
