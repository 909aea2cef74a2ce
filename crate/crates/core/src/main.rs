use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde::Deserialize;

use engelcert::certsearch::{counterexample_search, theoretical_bounds, verify_certificate_json, CertError, SearchBudget};
use engelcert::freegroup::{subgroup_rank, Word, WordSystem};
use engelcert::polyring::{standard_monomial_count, Poly, PrimeField, TwistedBasis};
use engelcert::symbolic::{reduce_mod, word_to_h, IntMatrix2};

const EXIT_FAILED: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "engelcert", version, about = "Finite groups violating iterated identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Freely reduce a word.
    Reduce { word: String },
    /// Iterate a word by substitution into its first letter, or iterate a
    /// system whose first coordinate is WORD.
    Iterate {
        word: String,
        n: usize,
        /// Remaining coordinates of the system, comma separated.
        #[arg(long, value_delimiter = ',')]
        system: Option<Vec<String>>,
    },
    /// Polynomial matrix H and exponent s with w(x, y) = H / det(x)^s.
    Symbolic {
        word: String,
        /// Entries of y, row by row.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Option<Vec<i64>>,
        /// Reduce the coefficients modulo this prime.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Check that f_i - x_i^Q is a Groebner basis.
    GroebnerCheck {
        /// JSON file {"q": prime, "polys": ["...", ...]}.
        #[arg(long)]
        basis: PathBuf,
        #[arg(long = "Q")]
        q_power: u64,
    },
    /// Search for a certificate that WORD is not an iterated identity.
    Search {
        word: String,
        #[arg(long, default_value_t = 10_000)]
        max_order: u64,
        #[arg(long, default_value_t = 10_000)]
        max_prime: u64,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Seconds.
        #[arg(long, default_value_t = 60)]
        time_limit: u64,
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Verify a certificate file.
    VerifyCert { file: PathBuf },
    /// Explicit bounds for a word of this length.
    Bounds {
        word: String,
        #[arg(long, default_value_t = 1)]
        s: u64,
    },
    /// Rank of the subgroup generated by comma separated words.
    Rank { words: String },
}

#[derive(Deserialize)]
struct BasisFile {
    q: u64,
    polys: Vec<String>,
}

fn parse_word(text: &str) -> Result<Word, String> {
    Word::parse(text, Word::infer_alphabet(text)).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    let input = |e: String| (EXIT_INPUT, e);
    match cli.command {
        Command::Reduce { word } => {
            println!("{}", parse_word(&word).map_err(input)?.reduce());
        }
        Command::Iterate { word, n, system } => match system {
            None => {
                let w = parse_word(&word).map_err(input)?;
                println!("{}", w.iterate_first(n).map_err(|e| input(e.to_string()))?);
            }
            Some(rest) => {
                let text = std::iter::once(word).chain(rest).collect::<Vec<_>>().join(",");
                let ws = WordSystem::parse(&text).map_err(|e| input(e.to_string()))?;
                let (it, trivial) = ws.iterate(n).map_err(|e| input(e.to_string()))?;
                let out = serde_json::json!({
                    "words": it.words().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    "trivial": trivial,
                });
                println!("{out}");
            }
        },
        Command::Symbolic { word, y, modulus } => {
            let w = parse_word(&word).map_err(input)?;
            let y = match y {
                None => IntMatrix2::default_y(),
                Some(v) => {
                    let e: [i64; 4] = v
                        .as_slice()
                        .try_into()
                        .map_err(|_| input(format!("--y needs 4 entries, got {}", v.len())))?;
                    IntMatrix2::from_i64(e)
                }
            };
            let rm = word_to_h(&w, &y).map_err(|e| input(e.to_string()))?;
            let out = match modulus {
                None => rm.to_json(),
                Some(q) => {
                    let r = reduce_mod(&rm, q).map_err(|e| input(e.to_string()))?;
                    serde_json::json!({
                        "entries": r.h.iter().map(|p| p.to_text()).collect::<Vec<_>>(),
                        "s": r.s,
                        "q": q,
                        "y": rm.to_json()["y"],
                        "word": rm.word.to_string(),
                        "y_degenerate": r.y_degenerate,
                    })
                }
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Command::GroebnerCheck { basis, q_power } => {
            let text = fs::read_to_string(&basis).map_err(|e| input(format!("{}: {e}", basis.display())))?;
            let file: BasisFile = serde_json::from_str(&text).map_err(|e| input(e.to_string()))?;
            let field = PrimeField::new(file.q).map_err(|e| input(e.to_string()))?;
            let n = file.polys.len();
            let polys = file
                .polys
                .iter()
                .map(|p| Poly::parse(p, field, n))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| input(e.to_string()))?;
            let tb = TwistedBasis::new(polys, q_power).map_err(|e| input(e.to_string()))?;
            let ok = tb.check_groebner();
            let out = serde_json::json!({
                "groebner": ok,
                "n": n,
                "Q": q_power,
                "standard_monomials": standard_monomial_count(n, q_power).to_string(),
            });
            println!("{out}");
            if !ok {
                return Ok(EXIT_FAILED);
            }
        }
        Command::Search {
            word,
            max_order,
            max_prime,
            max_degree,
            time_limit,
            json,
        } => {
            let w = parse_word(&word).map_err(input)?;
            let budget = SearchBudget {
                max_field_order: max_order,
                max_prime,
                max_extension_degree: max_degree,
                time_limit: Duration::from_secs(time_limit),
                ..SearchBudget::default()
            };
            let cert = match counterexample_search(&w, &budget) {
                Ok(c) => c,
                Err(e @ CertError::BudgetExhausted { .. }) => return Err((EXIT_BUDGET, e.to_string())),
                Err(e) => return Err(input(e.to_string())),
            };
            let text = cert.to_json_pretty();
            match json {
                Some(path) => {
                    fs::write(&path, text + "\n").map_err(|e| input(format!("{}: {e}", path.display())))?
                }
                None => println!("{text}"),
            }
        }
        Command::VerifyCert { file } => {
            let text = fs::read_to_string(&file).map_err(|e| input(format!("{}: {e}", file.display())))?;
            match verify_certificate_json(&text) {
                Ok(true) => println!("verified"),
                Ok(false) => {
                    println!("verification failed");
                    return Ok(EXIT_FAILED);
                }
                Err(e) => return Err(input(e.to_string())),
            }
        }
        Command::Bounds { word, s } => {
            let w = parse_word(&word).map_err(input)?;
            let report = theoretical_bounds(&w, s).map_err(|e| input(e.to_string()))?;
            println!("{}", serde_json::to_string_pretty(&report).expect("json"));
        }
        Command::Rank { words } => {
            let parts: Vec<&str> = words.split(',').collect();
            let m = parts.iter().map(|p| Word::infer_alphabet(p)).max().unwrap_or(1);
            let ws = parts
                .iter()
                .map(|p| Word::parse(p, m))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| input(e.to_string()))?;
            println!("{}", subgroup_rank(&ws));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
