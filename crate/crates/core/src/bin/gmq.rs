use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gm_quant::convergence::{radius_scan, DEFAULT_K, DEFAULT_M};
use gm_quant::models::{build_model, model_names};
use gm_quant::moyal::MoyalQuantizer;
use gm_quant::suite::{model_atoms, random_element, rng_for, run_suite, SEED_ENV};

#[derive(Parser)]
#[command(name = "gmq", version, about = "Exact star products on reduced Poisson spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Model catalogue
    Models {
        #[command(subcommand)]
        cmd: ModelsCmd,
    },
    /// Normal forms of expressions
    Expr {
        #[command(subcommand)]
        cmd: ExprCmd,
    },
    /// Poisson bracket q(f, g)
    Bracket {
        #[arg(long)]
        model: String,
        #[arg(short)]
        f: String,
        #[arg(short)]
        g: String,
    },
    /// Star-product coefficients Q_k(f, g)/k! through order K
    Star {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(short)]
        f: String,
        #[arg(short)]
        g: String,
    },
    /// Associativity defect on random triples
    Assoc {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, env = SEED_ENV, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Run a verification suite
    Verify {
        suite: String,
        #[arg(long, env = SEED_ENV, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Scan the star-product series over a grid of |s| and t
    Converge {
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value = "0.05:0.3:6,0.02:0.2:5")]
        grid: String,
        #[arg(long, default_value_t = DEFAULT_K)]
        order: usize,
        #[arg(long, default_value_t = DEFAULT_M)]
        truncation: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ModelsCmd {
    List,
}

#[derive(Subcommand)]
enum ExprCmd {
    Eval {
        #[arg(long)]
        model: String,
        #[arg(short)]
        e: String,
    },
}

enum Outcome {
    Ok,
    Failures,
}

fn run(cmd: Cmd) -> gm_quant::Result<Outcome> {
    match cmd {
        Cmd::Models { cmd: ModelsCmd::List } => {
            for name in model_names() {
                let m = build_model(name)?;
                let gens: Vec<&str> = m.algebra.generators().iter().map(|g| g.name.as_str()).collect();
                let status = if m.darboux.is_some() { "darboux" } else { "no darboux system" };
                println!("{name:<15} generators [{}]  {status}", gens.join(", "));
                for n in &m.notes {
                    println!("{:<15} {n}", "");
                }
            }
        }
        Cmd::Expr { cmd: ExprCmd::Eval { model, e } } => {
            let m = build_model(&model)?;
            println!("{}", m.format(&m.parse(&e)?));
        }
        Cmd::Bracket { model, f, g } => {
            let m = build_model(&model)?;
            let v = m.structure.bracket(&m.parse(&f)?, &m.parse(&g)?)?;
            println!("{}", m.format(&v));
        }
        Cmd::Star { model, order, f, g } => {
            let m = build_model(&model)?;
            let q = MoyalQuantizer::new(m.darboux()?.clone());
            let st = q.star(order, &m.parse(&f)?, &m.parse(&g)?)?;
            for (k, c) in st.coefficients.iter().enumerate() {
                println!("t^{k}: {}", m.format(c));
            }
        }
        Cmd::Assoc { model, order, trials, seed, degree } => {
            let m = build_model(&model)?;
            let q = MoyalQuantizer::new(m.darboux()?.clone());
            let atoms = model_atoms(&m);
            let mut rng = rng_for(seed, "cli/assoc");
            let mut failed = 0;
            for trial in 0..trials {
                let [f, g, h] = [(); 3].map(|_| random_element(&mut rng, &atoms, degree, 3));
                let d = q.associativity_defect(order, &f, &g, &h)?;
                match d.first_nonzero() {
                    None => println!("trial {trial}: defect zero through order {order}"),
                    Some(k) => {
                        failed += 1;
                        println!("trial {trial}: defect at order {k}: {}", m.format(d.coefficient(k)));
                    }
                }
            }
            if failed > 0 {
                return Ok(Outcome::Failures);
            }
        }
        Cmd::Verify { suite, seed, json } => {
            let rep = run_suite(&suite, seed)?;
            print!("{}", rep.to_text());
            if let Some(path) = json {
                std::fs::write(&path, rep.to_json())
                    .map_err(|e| gm_quant::Error::InvalidInput(format!("{}: {e}", path.display())))?;
            }
            if !rep.passed() {
                return Ok(Outcome::Failures);
            }
        }
        Cmd::Converge { sigma, grid, order, truncation, json } => {
            let rep = radius_scan(sigma, &grid, order, truncation)?;
            print!("{}", rep.to_text());
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&rep).expect("report serializes");
                std::fs::write(&path, text)
                    .map_err(|e| gm_quant::Error::InvalidInput(format!("{}: {e}", path.display())))?;
            }
            if !rep.inside_failures().is_empty() {
                return Ok(Outcome::Failures);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failures) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
