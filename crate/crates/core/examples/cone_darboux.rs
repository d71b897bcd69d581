//! The reduced cone: its bracket table, the Darboux pair and the fields it
//! generates, and the reconstruction of the table from the pair.

use gm_quant::derivation::reconstruct_bracket;
use gm_quant::models::cone;

fn main() -> gm_quant::Result<()> {
    let m = cone::model()?;
    let alg = &m.algebra;
    for (&(i, j), v) in m.structure.entries() {
        println!("q({}, {}) = {}", alg.gen_name(i), alg.gen_name(j), m.format(v));
    }
    let sys = m.darboux()?;
    let (a, b) = &sys.pairs()[0];
    println!("q({}, {}) = {}", m.format(a), m.format(b), m.format(&m.structure.bracket(a, b)?));
    for (label, field) in [("A", sys.a_field(0)), ("B", sys.b_field(0))] {
        let images: Vec<String> = field
            .images()
            .iter()
            .map(|(g, v)| format!("{} -> {}", alg.gen_name(*g), m.format(v)))
            .collect();
        println!("{label}: {}", images.join(", "));
    }
    let rebuilt = reconstruct_bracket(sys)?;
    println!("reconstruction differences: {}", m.structure.differences(&rebuilt)?.len());
    for c in m.tangency_check()?.checks {
        println!("{}: {}", c.statement, if c.pass { "ok" } else { "FAILED" });
    }
    Ok(())
}
