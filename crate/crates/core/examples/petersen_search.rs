//! Searches the co-tree sign patterns of the Petersen graph for the five
//! signings identified by their negative-cycle counts and prints them in the
//! form used by `PETERSEN_SIGNINGS`.
//!
//! Run: cargo run -p mlbalance --example petersen_search

use mlbalance::balance::k_exp;
use mlbalance::cycles::{cycle_census, search_petersen_signings, signed_petersen};

fn main() -> mlbalance::Result<()> {
    for (letter, negative) in search_petersen_signings()? {
        let g = signed_petersen(&negative)?;
        let census = cycle_census(&g, 9)?;
        let negatives: Vec<String> = (5..=9).map(|l| census.negative(l).to_string()).collect();
        eprintln!(
            "{letter}: negative cycles of length 5..9 = [{}], K_1 = {:.4}",
            negatives.join(", "),
            k_exp(&g, 1.0)?.index
        );
        let list: Vec<String> = negative.iter().map(|(u, v)| format!("({u}, {v})")).collect();
        println!("    ('{letter}', &[{}]),", list.join(", "));
    }
    Ok(())
}
