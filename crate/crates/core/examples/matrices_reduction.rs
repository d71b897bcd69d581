//! Pairs of 2x2 matrices modulo simultaneous conjugation: the reduced
//! bracket, its two Darboux pairs and the order-2 probe.

use gm_quant::models::matrices;

fn main() -> gm_quant::Result<()> {
    let m = matrices::model()?;
    for n in &m.notes {
        println!("{n}");
    }
    let alg = &m.algebra;
    for (&(i, j), v) in m.structure.entries() {
        println!("q({}, {}) = {}", alg.gen_name(i), alg.gen_name(j), m.format(v));
    }
    for list in [
        matrices::rho_identity_check()?,
        matrices::matrices_bracket_check()?,
        matrices::q2_conjecture_probe(&m)?,
    ] {
        let failed = list.failures().count();
        println!("{} checks, {failed} failed", list.len());
        for n in &list.notes {
            println!("  note: {n}");
        }
    }
    Ok(())
}
