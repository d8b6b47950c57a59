use std::io::Read;

use mlbalance::cycles::{cycle_graph, petersen, petersen_signings};
use mlbalance::SignedGraph;

/// Resolves one positional input to a graph. Errors name the input.
pub fn load(input: &str) -> Result<SignedGraph, String> {
    let fail = |msg: String| format!("{input}: {msg}");
    if let Some(spec) = input.strip_prefix("gen:") {
        return generate(spec).map_err(fail);
    }
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| fail(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(input).map_err(|e| fail(e.to_string()))?
    };
    SignedGraph::parse_edge_list(&text).map_err(|e| fail(e.to_string()))
}

fn generate(spec: &str) -> Result<SignedGraph, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts[..] {
        ["cycle", n, k] => {
            let n: usize = n
                .parse()
                .map_err(|_| format!("cycle length `{n}` is not an integer"))?;
            let k: usize = k
                .parse()
                .map_err(|_| format!("negative edge count `{k}` is not an integer"))?;
            cycle_graph(n, k).map_err(|e| e.to_string())
        }
        ["petersen"] => Ok(petersen()),
        ["petersen", letter] => petersen_signings()
            .into_iter()
            .find(|(l, _)| letter.len() == 1 && letter.starts_with(*l))
            .map(|(_, g)| g)
            .ok_or_else(|| format!("unknown Petersen signing `{letter}`, expected a..e")),
        _ => Err("unknown generator; expected gen:cycle:N:K or gen:petersen[:a..e]".into()),
    }
}
