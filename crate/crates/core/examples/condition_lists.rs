//! Determining index sequences, grouped by the order that introduces them.

use splitgen::conditions::{determining_indices, label, Scheme};

fn main() -> splitgen::Result<()> {
    for (scheme, orders) in [
        (Scheme::NonsymmetricComplex, vec![2, 3, 4, 5]),
        (Scheme::Symmetric, vec![3, 5, 7, 9]),
        (Scheme::Recursive { l: 2 }, vec![6]),
    ] {
        println!("{}", scheme.name());
        let mut seen = 0;
        for m in orders {
            let idx = determining_indices(scheme, m)?;
            let new: Vec<String> = idx[seen..].iter().map(|i| label(i)).collect();
            println!("  order {m}: {}", new.join(" "));
            seen = idx.len();
        }
    }
    Ok(())
}
