use gm_quant::convergence::{operator_constant_check, radius_scan, DEFAULT_K, DEFAULT_M};

fn main() -> gm_quant::Result<()> {
    let (checks, norms) = operator_constant_check()?;
    for n in &norms {
        println!("{:>4}  second-order {:>3}  full {:>3}  {}", n.name, n.second_order_norm, n.full_norm, n.operator);
    }
    for c in &checks.checks {
        println!("{} {}", if c.pass { "ok  " } else { "FAIL" }, c.statement);
    }
    let report = radius_scan(1.0, "0.05:0.3:6,0.02:0.2:5", DEFAULT_K, DEFAULT_M)?;
    print!("{}", report.to_text());
    println!("inside-ball failures: {}", report.inside_failures().len());
    println!("monotone: {}", report.monotone());
    Ok(())
}
