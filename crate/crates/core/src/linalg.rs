//! Exact rank of finitely supported vectors over ℚ.

use std::collections::{BTreeMap, HashMap};

use crate::coeff::Coeff;
use crate::words::Word;

/// Rank of the span of `vectors`, each given as `(coordinate, value)` pairs.
/// Elimination runs on the deg-lex greatest coordinate of each vector.
pub fn rank<I, V>(vectors: I) -> usize
where
    I: IntoIterator<Item = V>,
    V: IntoIterator<Item = (Word, Coeff)>,
{
    let mut pivots: HashMap<Word, BTreeMap<Word, Coeff>> = HashMap::new();
    for v in vectors {
        let mut row: BTreeMap<Word, Coeff> = BTreeMap::new();
        for (w, c) in v {
            let e = row.entry(w).or_insert(Coeff::ZERO);
            *e += c;
        }
        row.retain(|_, c| !c.is_zero());
        while let Some((lead, c)) = row.last_key_value().map(|(w, c)| (w.clone(), *c)) {
            match pivots.get(&lead) {
                Some(p) => {
                    for (w, d) in p {
                        let e = row.entry(w.clone()).or_insert(Coeff::ZERO);
                        *e -= c * *d;
                    }
                    row.retain(|_, c| !c.is_zero());
                }
                None => {
                    let inv = Coeff::ONE.checked_div(&c).expect("nonzero pivot");
                    for d in row.values_mut() {
                        *d = *d * inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}
