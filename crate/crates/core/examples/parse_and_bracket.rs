//! Parsing expressions into normal forms and bracketing them in any model
//! of the catalogue.

use gm_quant::models::build_model;

fn main() -> gm_quant::Result<()> {
    let cases = [
        ("cone", "s3^2 - s1*s2", "s1"),
        ("cone", "sqrt(s1)*s3", "s2^(3/2)"),
        ("flat2", "x1*xi2 - x2*xi1", "x1^2 + x2^2"),
        ("matrices", "gamma - (1/2)*alpha1*beta1", "alpha2"),
        ("k3-IV", "x1*x3^(-3/2)", "-x2*x3^(-3/2)"),
    ];
    for (model, f, g) in cases {
        let m = build_model(model)?;
        let (pf, pg) = (m.parse(f)?, m.parse(g)?);
        println!("[{model}] {f}  =>  {}", m.format(&pf));
        println!("[{model}] q({f}, {g}) = {}", m.format(&m.structure.bracket(&pf, &pg)?));
    }
    let m = build_model("cone")?;
    if let Err(e) = m.parse("s1 ^") {
        println!("s1 ^  =>  {e}");
    }
    Ok(())
}
