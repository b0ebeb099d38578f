//! Parses a Lie presentation, checks it and runs bounded completion.

use lie_gsb::cli::parse_presentation;
use lie_gsb::gsb::{check_gsb, complete, irr_enumerate, Relation};
use lie_gsb::{Ring, RelationSet};

const TEXT: &str = "
letters: a < b < c
relation: [c, b] = [c, a]
relation: [b, a] - (c ; a)
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let file = parse_presentation(TEXT)?;
    print!("{}", file.to_text());

    let mut set = RelationSet::new(file.alphabet.clone(), Ring::Rationals);
    for (i, p) in file.relations().into_iter().enumerate() {
        set.push(Relation::new(format!("R{}", i + 1), "input", p, Ring::Rationals)?)?;
    }
    let report = check_gsb(&set);
    print!("{}", report.to_lines());
    println!("basis: {}", report.passed());

    let out = complete(&set, 6, 8)?;
    println!("completion: complete={} after {} rounds", out.complete, out.rounds);
    for r in out.set.relations() {
        println!("  {}: {}", r.id(), r.poly().display(out.set.alphabet()));
    }
    if out.complete {
        let words = irr_enumerate(&out.set, 4);
        let shown: Vec<String> = words.iter().map(|w| out.set.alphabet().format_word(w)).collect();
        println!("Irr up to degree 4: {}", shown.join(" "));
    }
    Ok(())
}
