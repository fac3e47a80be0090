//! Command-line front end. Verdict-style subcommands use the exit status:
//! 0 = success / verdict true, 1 = verdict false or counterexample found,
//! 2 = usage or parse error.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::character::{dual_character, key, schubert, CharacterReport};
use crate::diagram::{find_pattern, Composition, Diagram, Permutation};
use crate::verify::{
    dependence_witness, verify_theorem, verify_witness, VerifyMode, DEFAULT_EXHAUSTIVE_CAP,
};
use crate::ypoly::{det_leibniz, det_via_fillings};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "fweyl",
    about = "Dual characters of flagged Weyl modules: exact computation and verification",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the dual character report of a diagram.
    Character {
        /// Diagram: inline ASCII rows joined by '/', a file path, or '-' for stdin.
        diagram: String,
    },
    /// Decide whether a diagram avoids the forbidden configuration.
    Avoids { diagram: String },
    /// Build and verify a linear-dependence witness for a pattern-containing diagram.
    Witness { diagram: String },
    /// Verify the upper-bound criterion over many diagrams.
    Verify {
        /// Grid size.
        #[arg(long)]
        n: usize,
        /// Sweep all 2^(n^2) diagrams.
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        /// Sample random diagrams instead.
        #[arg(long)]
        random: bool,
        /// Number of random samples.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Box density for random sampling.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// RNG seed for random sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the Schubert polynomial of a permutation (one-line notation).
    Schubert {
        /// Permutation, e.g. "3,1,2" or "312".
        perm: String,
        /// Also compare against the dual character of the Rothe diagram.
        #[arg(long)]
        check: bool,
    },
    /// Print the key polynomial of a composition.
    Key {
        /// Composition, e.g. "0,2,1" or "021".
        composition: String,
        /// Also compare against the dual character of the skyline diagram.
        #[arg(long)]
        check: bool,
    },
    /// Print both determinant expansions of det(Y_D^C) and whether they match.
    Expand { diagram: String, content: String },
}

fn read_diagram(arg: &str) -> Result<Diagram> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        buf
    } else if arg.contains('/') || arg.chars().all(|c| c == '#' || c == '.') || arg.starts_with('{')
    {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    };
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("json diagram: {e}")))
    } else {
        Diagram::from_ascii(trimmed)
    }
}

fn parse_int_sequence(arg: &str) -> Result<Vec<usize>> {
    let tokens: Vec<&str> = arg
        .split([',', ' '])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    let parse = |t: &str| -> Result<usize> {
        t.parse()
            .map_err(|_| Error::Parse(format!("not an integer: '{t}'")))
    };
    if tokens.len() == 1 && tokens[0].len() > 1 && tokens[0].chars().all(|c| c.is_ascii_digit()) {
        // compact single-digit form like "312"
        return tokens[0]
            .chars()
            .map(|c| Ok(c.to_digit(10).unwrap() as usize))
            .collect();
    }
    tokens.into_iter().map(parse).collect()
}

fn env_cap(var: &str, default: usize) -> usize {
    std::env::var(var)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("report types always serialize")
    );
}

fn run_inner(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Character { diagram } => {
            let d = read_diagram(&diagram)?;
            let report = CharacterReport::compute(&d);
            match cli.format {
                Format::Json => emit_json(&report),
                Format::Text => {
                    println!("diagram = {d}");
                    println!("chi = {}", report.chi);
                    println!("lower = {}", report.lower);
                    println!("upper_count = {}", report.upper_count);
                    println!("chi_at_ones = {}", report.chi_at_ones);
                    println!("attains_upper = {}", report.attains_upper);
                    println!("attains_lower = {}", report.attains_lower);
                    match report.pattern {
                        Some(p) => println!("pattern = {p}"),
                        None => println!("pattern = none"),
                    }
                }
            }
            Ok(0)
        }
        Cmd::Avoids { diagram } => {
            let d = read_diagram(&diagram)?;
            let witness = find_pattern(&d);
            match cli.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct AvoidsOut {
                        avoids: bool,
                        witness: Option<crate::diagram::PatternWitness>,
                    }
                    emit_json(&AvoidsOut {
                        avoids: witness.is_none(),
                        witness,
                    });
                }
                Format::Text => match witness {
                    Some(p) => println!("contains pattern {p}"),
                    None => println!("avoids pattern"),
                },
            }
            Ok(if witness.is_none() { 0 } else { 1 })
        }
        Cmd::Witness { diagram } => {
            let d = read_diagram(&diagram)?;
            let w = dependence_witness(&d)?;
            let ok = verify_witness(&w)?;
            match cli.format {
                Format::Json => emit_json(&w),
                Format::Text => {
                    println!("base = {}", w.base);
                    println!(
                        "configuration: j1={}, j2={}, i1={}, i2={}",
                        w.location.j1, w.location.j2, w.location.i1, w.location.i2
                    );
                    for term in &w.terms {
                        println!("{:+} * det(Y_D^C) for C = {}", term.coeff, term.diagram);
                    }
                    println!("verified = {ok}");
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Verify {
            n,
            exhaustive,
            random,
            trials,
            density,
            seed,
        } => {
            let mode = if random {
                VerifyMode::Random {
                    seed,
                    trials,
                    density,
                }
            } else if exhaustive {
                VerifyMode::Exhaustive
            } else {
                return Err(Error::Parse(
                    "choose one of --exhaustive or --random".into(),
                ));
            };
            let cap = env_cap("FWEYL_MAX_EXHAUSTIVE_N", DEFAULT_EXHAUSTIVE_CAP);
            let report = verify_theorem(n, mode, cap)?;
            match cli.format {
                Format::Json => emit_json(&report),
                Format::Text => {
                    println!("n = {}", report.n);
                    println!("mode = {:?}", report.mode);
                    println!("diagrams_checked = {}", report.diagrams_checked);
                    println!("counterexamples = {}", report.counterexamples.len());
                    for c in &report.counterexamples {
                        println!("counterexample:\n{}", c.to_ascii());
                    }
                }
            }
            // wall-clock goes to stderr so stdout stays byte-identical
            eprintln!("elapsed: {:?}", report.elapsed);
            Ok(if report.counterexamples.is_empty() { 0 } else { 1 })
        }
        Cmd::Schubert { perm, check } => {
            let w = Permutation::new(parse_int_sequence(&perm)?)?;
            let poly = schubert(&w);
            oracle_output(cli.format, &poly, check, || {
                dual_character(&w.rothe_diagram())
            })
        }
        Cmd::Key { composition, check } => {
            let alpha = Composition::new(parse_int_sequence(&composition)?);
            let poly = key(&alpha);
            let n = alpha
                .parts()
                .iter()
                .copied()
                .max()
                .unwrap_or(0)
                .max(alpha.len())
                .max(1);
            let alpha2 = alpha.clone();
            oracle_output(cli.format, &poly.pad_to(n), check, move || {
                dual_character(&alpha2.skyline_diagram(n).expect("grid sized to fit"))
            })
        }
        Cmd::Expand { diagram, content } => {
            let d = read_diagram(&diagram)?;
            let c = read_diagram(&content)?;
            let via_fillings = det_via_fillings(&d, &c)?;
            let leibniz = det_leibniz(&d, &c)?;
            let matches = via_fillings == leibniz;
            match cli.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct ExpandOut {
                        via_fillings: crate::ypoly::YPolynomial,
                        leibniz: crate::ypoly::YPolynomial,
                        #[serde(rename = "match")]
                        matches: bool,
                    }
                    emit_json(&ExpandOut {
                        via_fillings,
                        leibniz,
                        matches,
                    });
                }
                Format::Text => {
                    println!("via_fillings = {via_fillings}");
                    println!("leibniz = {leibniz}");
                    println!("match = {matches}");
                }
            }
            Ok(if matches { 0 } else { 1 })
        }
    }
}

fn oracle_output<F>(
    format: Format,
    poly: &crate::character::XPolynomial,
    check: bool,
    diagram_route: F,
) -> Result<i32>
where
    F: FnOnce() -> crate::character::XPolynomial,
{
    if !check {
        match format {
            Format::Json => emit_json(poly),
            Format::Text => println!("{poly}"),
        }
        return Ok(0);
    }
    let other = diagram_route();
    let agrees = poly == &other.pad_to(poly.nvars().max(other.nvars()));
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct CheckOut<'a> {
                poly: &'a crate::character::XPolynomial,
                agrees: bool,
            }
            emit_json(&CheckOut { poly, agrees });
        }
        Format::Text => {
            println!("{poly}");
            println!("agrees = {agrees}");
        }
    }
    Ok(if agrees { 0 } else { 1 })
}

/// Parse `argv` and run; returns the process exit status.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match run_inner(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
