//! Associative Lyndon-Shirshov words, factorizations and bracketings.
//!
//! cargo run --example lyndon_words -- 5

use lie_gsb::words::{alsw_factorization, alsws_of_degree, is_alsw, special_bracketing, standard_bracketing};
use lie_gsb::{Alphabet, Word};

fn main() -> lie_gsb::Result<()> {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let ab = Alphabet::new(["a", "b"])?;

    for d in 1..=max {
        let words = alsws_of_degree(ab.len(), d);
        let shown: Vec<String> = words
            .iter()
            .map(|w| standard_bracketing(w).map(|t| t.display(&ab).to_string()))
            .collect::<Result<_, _>>()?;
        println!("degree {d} ({}): {}", words.len(), shown.join("  "));
    }

    let w = ab.parse_word("babaab")?;
    let factors = alsw_factorization(&w)?;
    let names: Vec<String> = factors.iter().map(|f| ab.format_word(f)).collect();
    println!("{} = {}", ab.format_word(&w), names.join(" . "));

    let abc = Alphabet::new(["a", "b", "c"])?;
    let u = abc.parse_word("cb")?;
    assert!(is_alsw(&u));
    let tree = special_bracketing(&Word::empty(), &u, &abc.parse_word("a")?)?;
    println!("special bracketing of cba around cb: {}", tree.display(&abc));
    Ok(())
}
