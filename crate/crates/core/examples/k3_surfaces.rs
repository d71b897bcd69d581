//! Determinant brackets of the three quartic surfaces and the status of
//! their printed Darboux pairs.

use gm_quant::models::k3::{self, K3Variant};

fn main() -> gm_quant::Result<()> {
    for v in K3Variant::all() {
        let q = k3::k3_bracket_from_f(v)?;
        let alg = q.algebra();
        println!("variant {}: f = {}", v.label(), v.f_text());
        for (&(i, j), e) in q.entries() {
            println!("  q({}, {}) = {}", alg.gen_name(i), alg.gen_name(j), alg.format(e));
        }
        let checks = k3::k3_table_check(v)?;
        println!("  {} checks, all pass: {}", checks.len(), checks.all_pass());
        for n in &checks.notes {
            println!("  note: {n}");
        }
        match k3::model(v)?.darboux() {
            Ok(_) => println!("  printed pair is a Darboux pair"),
            Err(e) => println!("  {e}"),
        }
    }
    Ok(())
}
