//! Verifies the Drinfeld-Kohno relations as a Gröbner-Shirshov basis and
//! prints the ranks of the graded pieces.
//!
//! cargo run --release --example drinfeld_kohno -- 4 7

use std::time::Instant;

use lie_gsb::drinfeld_kohno::{dk_check, dk_ranks};

fn main() -> lie_gsb::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (lo, hi) = match args.as_slice() {
        [a, b, ..] => (*a, *b),
        [a] => (*a, *a),
        [] => (4, 6),
    };
    for n in lo..=hi {
        let t = Instant::now();
        let r = dk_check(n)?;
        println!(
            "L_{n}: {} ambiguities, {} ({:.1?})",
            r.report.records.len(),
            if r.passed() { "pass" } else { "FAIL" },
            t.elapsed()
        );
        for (pair, count) in r.family_counts() {
            println!("  {pair}: {count}");
        }
        println!("  ranks up to degree 5: {:?}", dk_ranks(n, 5)?);
    }
    Ok(())
}
