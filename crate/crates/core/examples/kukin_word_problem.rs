//! Reduces the word problem of a semigroup to Lie normal forms.

use lie_gsb::kukin::{KukinContext, KukinSolver};
use lie_gsb::semigroup::SgpPresentation;
use lie_gsb::Alphabet;

fn main() -> lie_gsb::Result<()> {
    let alpha = Alphabet::new(["y", "x"])?;
    let sgp = SgpPresentation::parse(alpha.clone(), &["xy=yx"])?;
    let ctx = KukinContext::new(&sgp, 5)?;
    let ext = ctx.alphabet().clone();
    let solver = KukinSolver::new(ctx)?;
    println!("{} relations over {}", solver.relations().len(), ext.names().join(" < "));

    for (u, v) in [("xy", "yx"), ("xxy", "xyx"), ("xy", "xx"), ("yxy", "xyy")] {
        let (wu, wv) = (alpha.parse_word(u)?, alpha.parse_word(v)?);
        let nu = solver.normal_form(&wu)?;
        let nv = solver.normal_form(&wv)?;
        let verdict = if nu == nv { "EQUAL" } else { "NOT EQUAL" };
        println!("{u} vs {v}: {verdict}");
        println!("  (z ; {u}) -> {}", nu.display(&ext));
        println!("  (z ; {v}) -> {}", nv.display(&ext));
    }
    Ok(())
}
