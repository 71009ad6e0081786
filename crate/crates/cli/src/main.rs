use clap::{Parser, Subcommand};

use siltloc_cli::*;

#[derive(Parser)]
#[command(name = "siltloc", about = "Silting modules, ring epimorphisms and universal localisations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate an algebra file: axioms, radical, round trip.
    Check { file: String },
    /// Silting verdicts for a module, or the census with --enumerate.
    Silting {
        file: String,
        module: Option<String>,
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        dim_bound: Option<usize>,
    },
    /// Universal localisation by bounded rewriting.
    Localize {
        file: String,
        sigma: String,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long)]
        dump: bool,
    },
    /// Ring epimorphism of a presentation and its bireflective class.
    Ringepi {
        file: String,
        sigma: String,
        /// STEPS,DIM
        #[arg(long, env = "SILTLOC_CAPS", default_value = "64,4096")]
        caps: String,
    },
    /// Localising class of a sigma set against the silting side, module by module.
    Agreement {
        file: String,
        sigma: String,
        /// ITERATIONS,DIM
        #[arg(long, env = "SILTLOC_APPROX_CAPS", default_value = "32,10000")]
        caps: String,
    },
    /// Torsion-theoretic parts of a module.
    Torsion { file: String, sigma: String, module: String },
    /// Ext^1 in the morphism category by three routes.
    Morcat {
        file: String,
        sigma: String,
        g: String,
        #[arg(long)]
        cone: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Check { file } => cmd_check(&file),
        Cmd::Silting { file, module, enumerate, dim_bound } => {
            cmd_silting(&file, module.as_deref(), enumerate, dim_bound)
        }
        Cmd::Localize { file, sigma, bound, dump } => cmd_localize(&file, &sigma, bound, dump),
        Cmd::Ringepi { file, sigma, caps } => match parse_caps(&caps) {
            Ok(c) => cmd_ringepi(&file, &sigma, c),
            Err(e) => Outcome::from(e),
        },
        Cmd::Agreement { file, sigma, caps } => match parse_caps(&caps) {
            Ok(c) => cmd_agreement(&file, &sigma, c),
            Err(e) => Outcome::from(e),
        },
        Cmd::Torsion { file, sigma, module } => cmd_torsion(&file, &sigma, &module),
        Cmd::Morcat { file, sigma, g, cone } => cmd_morcat(&file, &sigma, &g, cone),
    };
    if out.status == Status::Ok || out.status == Status::Failed {
        print!("{}", out.text);
    } else {
        eprint!("{}", out.text);
    }
    std::process::exit(out.status as i32);
}
