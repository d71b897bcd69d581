use std::time::{Duration, Instant};

use gm_quant::convergence::operator_constant_check;
use gm_quant::models::{build_model, flat, matrices, K3Variant};
use gm_quant::report::CheckList;
use gm_quant::suite::{
    closed_form_checks, convergence_checks, darboux_checks, degree_bound_checks, jacobi_checks, moyal_checks,
    norm_lemma_checks, reconstruction_check,
};
use gm_quant::Result;

const SEED: u64 = 7;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn criterion(name: &'static str, limit: Duration, f: impl FnOnce() -> Result<CheckList>) -> Outcome {
    let start = Instant::now();
    let res = f();
    let took = start.elapsed();
    let (pass, mut detail) = match res {
        Ok(list) => {
            let failed: Vec<String> = list
                .failures()
                .map(|c| format!("{} [{}]", c.id, c.witness))
                .collect();
            (failed.is_empty() && !list.is_empty(), format!("{} checks", list.len()) + &fmt_failures(&failed))
        }
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = took <= limit;
    if !in_time {
        detail.push_str(&format!("; over time limit {limit:?}"));
    }
    Outcome {
        name,
        pass: pass && in_time,
        detail: format!("{detail}; {:.2?}", took),
    }
}

fn fmt_failures(failed: &[String]) -> String {
    if failed.is_empty() {
        String::new()
    } else {
        format!(", failed: {}", failed.join("; "))
    }
}

fn k3_names() -> Vec<String> {
    K3Variant::all().iter().map(|v| format!("k3-{}", v.label())).collect()
}

#[test]
fn primary_criteria() {
    let mut outcomes = Vec::new();

    outcomes.push(criterion("jacobi suite", Duration::from_secs(60), || {
        let mut out = CheckList::default();
        let mut names: Vec<String> = ["flat2", "flat3", "cone", "matrices"].map(String::from).to_vec();
        names.extend(k3_names());
        for n in names {
            out.extend(jacobi_checks(&build_model(&n)?, SEED)?);
        }
        Ok(out)
    }));

    outcomes.push(criterion("darboux suite", Duration::from_secs(10), || {
        let mut out = CheckList::default();
        let mut names: Vec<String> = vec!["cone".into(), "matrices".into()];
        names.extend(k3_names());
        for n in names {
            out.extend(darboux_checks(&build_model(&n)?)?);
        }
        Ok(out)
    }));

    outcomes.push(criterion("reconstruction", Duration::from_secs(60), || {
        let mut out = reconstruction_check(&build_model("cone")?)?;
        out.extend(reconstruction_check(&build_model("matrices")?)?);
        Ok(out)
    }));

    outcomes.push(criterion("reduction suite", Duration::from_secs(60), || {
        let mut out = CheckList::default();
        for n in [2, 3] {
            out.extend(flat::pullback_check(n)?);
            out.extend(flat::hamiltonian_condition_check(n)?);
            out.extend(flat::invariant_closure_check(&flat::model(n)?)?);
        }
        out.extend(flat::invariant_closure_check(&matrices::entries_model()?)?);
        out.extend(matrices::rho_identity_check()?);
        out.extend(matrices::matrices_bracket_check()?);
        Ok(out)
    }));

    outcomes.push(criterion("moyal suite", Duration::from_secs(300), || {
        let cone = build_model("cone")?;
        let mut out = moyal_checks(&cone, SEED, 4, 20, 3)?;
        out.extend(closed_form_checks(&cone, SEED, 5)?);
        out.extend(moyal_checks(&build_model("matrices")?, SEED, 3, 10, 2)?);
        Ok(out)
    }));

    outcomes.push(criterion("degree bound k <= 6", Duration::from_secs(300), || degree_bound_checks(6)));

    outcomes.push(criterion("Q2 conjecture probe", Duration::from_secs(300), || {
        matrices::q2_conjecture_probe(&build_model("matrices")?)
    }));

    outcomes.push(criterion("operator constant", Duration::from_secs(60), || {
        Ok(operator_constant_check()?.0)
    }));

    outcomes.push(criterion("convergence sigma = 1", Duration::from_secs(300), || {
        convergence_checks(1.0, "0.02:0.2:10,0.01:0.1:10")
    }));

    outcomes.push(criterion("norm lemmas m, n <= 12", Duration::from_secs(300), || norm_lemma_checks(SEED, 12)));

    for o in &outcomes {
        println!("{} {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.name).collect();
    assert!(failed.is_empty(), "failed criteria: {}", failed.join(", "));
}
