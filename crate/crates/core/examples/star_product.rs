//! Star products on the cone: coefficients, the closed forms and an
//! associativity check through order 4.

use gm_quant::models::cone;
use gm_quant::moyal::MoyalQuantizer;

fn main() -> gm_quant::Result<()> {
    let m = cone::model()?;
    let q = MoyalQuantizer::new(m.darboux()?.clone());
    let f = m.parse("s1^2 + s3")?;
    let g = m.parse("s2*s3")?;
    let st = q.star(4, &f, &g)?;
    println!("f = {}, g = {}", m.format(&f), m.format(&g));
    for (k, c) in st.coefficients.iter().enumerate() {
        println!("  t^{k}: {}", m.format(c));
    }
    for k in 1..=5 {
        println!("Q_{k} closed form agrees: {}", q.closed_form_crosscheck(k, &f, &g)?);
    }
    let h = m.parse("sqrt(s1) + s2")?;
    let d = q.associativity_defect(4, &f, &g, &h)?;
    println!("associativity defect through order 4 vanishes: {}", d.is_zero());
    Ok(())
}
