//! Knuth-Bendix completion and normal forms in a finitely presented semigroup.

use lie_gsb::semigroup::{congruence_pairs, knuth_bendix, orient, SgpPresentation};
use lie_gsb::Alphabet;

fn main() -> lie_gsb::Result<()> {
    let alpha = Alphabet::new(["a", "b"])?;
    // The bicyclic-like monoid quotient aba = b, bb = b.
    let p = SgpPresentation::parse(alpha.clone(), &["aba=b", "bb=b"])?;
    let rs = match knuth_bendix(&orient(&p), 8, 32) {
        Ok(rs) => rs,
        Err(inc) => {
            println!("{inc}");
            return Ok(());
        }
    };
    println!("complete system:\n{}", rs.display());
    for w in ["abab", "baab", "aabba"] {
        let u = alpha.parse_word(w)?;
        println!("nf({w}) = {}", alpha.format_word(&rs.normal_form(&u)));
    }
    let pairs = congruence_pairs(&rs, 3)?;
    println!("{} congruent pairs of length at most 3", pairs.len());
    Ok(())
}
