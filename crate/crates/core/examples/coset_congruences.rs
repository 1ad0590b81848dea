//! Dimension identities and coset congruences for small stage
//! counts.

use splitgen::coeffs::{check_congruence, mod_d9_relation, Congruence};
use splitgen::witt::{corollary_identity, Identity};

fn main() -> splitgen::Result<()> {
    for id in [
        Identity::Stride { k: 2, m: 9 },
        Identity::AllGrades { m: 8 },
        Identity::OddGrades { m: 8 },
        Identity::PrimeWeights { weights: vec![1, 3, 5], p: 7 },
        Identity::PrimeTwoGrades { p: 11 },
    ] {
        let (l, r) = corollary_identity(&id)?;
        println!("{id:?}: {l} = {r}");
    }

    for r in [3, 4, 5] {
        println!("\nr = {r}");
        for c in [
            Congruence::Aaa([1, 1, 3]),
            Congruence::ApB([1, 3, 1]),
            Congruence::Aaaaa([1, 1, 1, 1, 1]),
            Congruence::AaaaP([1, 1, 1, 1, 1]),
        ] {
            let o = check_congruence(&c, r)?;
            println!("  {c:?}: member {} mirror {:?}", o.member, o.mirror);
        }
        println!("  mod-D9 relation: {}", mod_d9_relation(r)?);
    }
    Ok(())
}
