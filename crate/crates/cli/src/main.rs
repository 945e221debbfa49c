use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use infranil_core::families::FamilySpec;
use infranil_core::report::{self, AnalysisOptions};
use infranil_core::repdecomp::Verdict;
use infranil_core::witness::{WitnessError, WitnessOptions};
use infranil_core::Error;

const EXIT_USAGE: u8 = 64;

/// Anosov diffeomorphisms on infra-nilmanifolds modelled on graph Lie algebras.
#[derive(Parser, Debug)]
#[command(name = "infranil", version)]
struct Cli {
    /// Worker threads for parallel stages (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Graph file (JSON or edge list), `-` for stdin.
    #[arg(long)]
    graph: String,
}

#[derive(Args, Debug)]
struct Search {
    /// Holonomy generators in cycle notation, separated by `;`.
    #[arg(long, default_value = "")]
    holonomy: String,
    /// Coefficient bound for exhaustive seed search.
    #[arg(long, default_value_t = infranil_core::witness::DEFAULT_SEARCH_BOUND)]
    search_bound: i64,
    /// Largest holonomy group that is enumerated.
    #[arg(long, default_value_t = infranil_core::holonomy::DEFAULT_MAX_GROUP_ORDER)]
    max_group_order: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the infra-nilmanifold admits an Anosov diffeomorphism.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        search: Search,
        /// Construct and certify an explicit automorphism when the answer is yes.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the quotient graph of coherent components.
    Quotient {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Generate a graph from one of the parameterised families.
    Family {
        #[arg(long, value_enum)]
        name: FamilyName,
        #[arg(long)]
        m: Option<usize>,
        /// Component sizes ℓ_1,…,ℓ_m for family I.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        l: usize,
    },
    /// Construct and certify a witness automorphism.
    Witness {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        search: Search,
        #[arg(long)]
        json: bool,
    },
    /// Check a polynomial or integer matrix for c-hyperbolicity.
    Certify {
        /// Polynomial such as "x^3 - x^2 - 2x + 1" or matrix "2 1; 1 1".
        input: String,
        #[arg(short, long, default_value_t = 1)]
        c: u8,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyName {
    #[value(name = "I")]
    I,
    #[value(name = "I-modified")]
    IModified,
    #[value(name = "II")]
    II,
    #[value(name = "II-Z4")]
    IIZ4,
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Yes => 0,
        Verdict::No => 1,
        Verdict::Undecided => 2,
    }
}

fn read_graph(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{path}: {e}"))))
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn options(search: &Search, witness: bool) -> AnalysisOptions {
    AnalysisOptions {
        max_group_order: search.max_group_order,
        witness,
        witness_options: WitnessOptions { search_bound: search.search_bound, ..Default::default() },
    }
}

fn family_spec(name: FamilyName, m: Option<usize>, sizes: Option<Vec<usize>>, n: Option<usize>, l: usize) -> Result<FamilySpec, Error> {
    let missing = |flag: &str| Error::Family(infranil_core::families::FamilyError::Invalid(format!("--{flag} is required")));
    Ok(match name {
        FamilyName::I => {
            let sizes = match (sizes, m) {
                (Some(s), Some(m)) if s.len() != m => {
                    return Err(Error::Family(infranil_core::families::FamilyError::Invalid(format!(
                        "--sizes has {} entries, expected m = {m}",
                        s.len()
                    ))))
                }
                (Some(s), _) => s,
                (None, Some(m)) if m >= 1 => {
                    let mut s = vec![2; m];
                    s[m - 1] = 3;
                    s
                }
                _ => return Err(missing("m")),
            };
            FamilySpec::I { sizes }
        }
        FamilyName::IModified => FamilySpec::IModified { m: m.ok_or_else(|| missing("m"))? },
        FamilyName::II => FamilySpec::II { n: n.ok_or_else(|| missing("n"))?, l },
        FamilyName::IIZ4 => FamilySpec::IIZ4 { l },
    })
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Analyze { input, search, witness, json } => {
            let text = read_graph(&input.graph)?;
            let r = report::analyze(&text, &search.holonomy, &options(&search, witness))?;
            if json {
                println!("{}", pretty(&r.to_json()));
            } else {
                print!("{}", r.to_text());
            }
            match &r.witness {
                Some(Err(e)) if !matches!(e, WitnessError::NotDecidedYes(_)) => Ok(7),
                _ => Ok(verdict_code(r.verdict())),
            }
        }
        Command::Quotient { input, json, dot } => {
            let (j, d) = report::quotient(&read_graph(&input.graph)?)?;
            if json || !dot {
                println!("{}", pretty(&j));
            }
            if dot {
                print!("{d}");
            }
            Ok(0)
        }
        Command::Family { name, m, sizes, n, l } => {
            let inst = report::family(&family_spec(name, m, sizes, n, l)?)?;
            println!("{}", pretty(&inst.to_json()));
            Ok(0)
        }
        Command::Witness { input, search, json } => {
            let text = read_graph(&input.graph)?;
            let r = report::analyze(&text, &search.holonomy, &options(&search, true))?;
            match r.witness.as_ref().expect("witness requested") {
                Ok(w) => {
                    if json {
                        println!("{}", pretty(&w.to_json(&r.graph, &r.partition, &r.action)));
                    } else {
                        print!("{}", w.proof_sketch(&r.graph, &r.partition, &r.action));
                    }
                    Ok(0)
                }
                Err(WitnessError::NotDecidedYes(v)) => {
                    eprintln!("error: decision is {v}; no witness exists to construct");
                    Ok(verdict_code(r.verdict()))
                }
                Err(e) => Err(Error::Witness(e.clone())),
            }
        }
        Command::Certify { input, c, json } => {
            let cert = report::certify(&input, c)?;
            if json {
                println!("{}", pretty(&serde_json::to_value(&cert).expect("serializes")));
            } else {
                println!("char poly: {}", cert.char_poly);
                println!("integer-like: {}", cert.integer_like);
                if let Some(q) = &cert.compound_char_poly {
                    println!("exterior square char poly: {q}");
                }
                match &cert.reason {
                    None => println!("{c}-hyperbolic: valid"),
                    Some(r) => println!("{c}-hyperbolic: invalid ({r})"),
                }
            }
            Ok(if cert.valid { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
