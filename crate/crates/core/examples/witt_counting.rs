//! Dimension counts: Witt's formula, multigraded counts and the minimal
//! number of parameters per scheme.

use splitgen::conditions::Scheme;
use splitgen::witt::{s_min, witt_count, witt_multi};

fn main() -> splitgen::Result<()> {
    println!("Lyndon words of length n over r letters");
    for r in 2..=4u64 {
        let row: Vec<String> = (1..=10).map(|n| witt_count(r, n).to_string()).collect();
        println!("  r={r}: {}", row.join(" "));
    }

    println!("\nwords with content x^a y^b, a + b = 9");
    for a in 0..=9u64 {
        println!("  M({a},{}) = {}", 9 - a, witt_multi(&[a, 9 - a]));
    }

    println!("\nminimal parameter counts");
    for scheme in [Scheme::NonsymmetricComplex, Scheme::NonsymmetricTilde, Scheme::Symmetric] {
        let row = (2..=12)
            .map(|m| s_min(scheme, m).map(|n| n.to_string()))
            .collect::<splitgen::Result<Vec<_>>>()?;
        println!("  {:<10} orders 2..=12: {}", scheme.name(), row.join(" "));
    }
    Ok(())
}
