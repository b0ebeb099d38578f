//! Lie polynomials in the Lyndon-Shirshov basis.

use lie_gsb::words::standard_bracketing;
use lie_gsb::{Alphabet, Coeff, LiePoly};

fn main() -> lie_gsb::Result<()> {
    let alpha = Alphabet::new(["x", "y", "z"])?;
    let g = |n: &str| LiePoly::generator(alpha.letter(n).unwrap());
    let (x, y, z) = (g("x"), g("y"), g("z"));

    // [[x, y], z] written in the basis.
    let p = x.bracket(&y).bracket(&z);
    println!("[[x, y], z] = {}", p.display(&alpha));

    // Jacobi.
    let jac = p.add(&y.bracket(&z).bracket(&x)).add(&z.bracket(&x).bracket(&y));
    println!("Jacobi sum = {}", jac.display(&alpha));

    let q = z.bracket(&y).scale(Coeff::int(2)).sub(&z.bracket(&x));
    let lead = q.leading_word()?.clone();
    println!("q = {}  (leading word {})", q.display(&alpha), alpha.format_word(&lead));
    println!("bracketing of the lead: {}", standard_bracketing(&lead)?.display(&alpha));

    // The expansion is a polynomial in the free associative algebra.
    let e = q.expand();
    let terms: Vec<String> = e
        .iter()
        .rev()
        .map(|(w, c)| format!("{c}*{}", alpha.format_word(w)))
        .collect();
    println!("expansion: {}", terms.join(" + "));
    assert_eq!(LiePoly::from_assoc(&e)?, q);
    Ok(())
}
