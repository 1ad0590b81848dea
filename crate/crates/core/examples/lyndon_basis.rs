//! Lyndon words over a two-letter alphabet and over graded correction
//! operators, with their standard bracketings.

use splitgen::lyndon::{
    bracketing, expand_bracket, generate_lyndon, standard_factorization, GradedAlphabet,
};

fn main() -> splitgen::Result<()> {
    let ab = GradedAlphabet::uniform(&["A", "B"]);
    for l in generate_lyndon(&ab, 5) {
        let t = bracketing(&l);
        println!("{:<6} {}", ab.spell(l.word()), t.render(&ab));
    }

    // R1, R3, R5 carry grades 1, 3, 5
    let r = GradedAlphabet::correction_operators(&[1, 3, 5])?;
    let words = generate_lyndon(&r, 7);
    println!("\n{} words of grade <= 7 over {{R1, R3, R5}}", words.len());
    for l in words.iter().filter(|l| r.grade(l.word()) == 7) {
        println!("  {}", bracketing(l).render(&r));
    }

    let l = generate_lyndon(&ab, 6)
        .into_iter()
        .find(|l| ab.spell(l.word()) == "AABABB")
        .expect("AABABB is Lyndon");
    let (u, v) = standard_factorization(&l)?;
    println!("\nAABABB = ({})({})", ab.spell(u.word()), ab.spell(v.word()));
    println!("expanded: {}", expand_bracket(&bracketing(&l)).render(&ab));
    Ok(())
}
