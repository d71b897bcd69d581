//! Runs one verification suite (default `darboux`) and prints its report.

use gm_quant::suite::{default_seed, run_suite};

fn main() -> gm_quant::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "darboux".into());
    let report = run_suite(&name, default_seed())?;
    print!("{}", report.to_text());
    Ok(())
}
