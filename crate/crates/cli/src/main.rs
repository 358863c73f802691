//! Command line interface for the stanley library.
//!
//! Exit codes: 0 success, 1 assertion or verification failure, 2 input
//! error, 3 resource cap or search budget exceeded.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use stanley::error::Error;
use stanley::homology::{betti_via_lcm_lattice, depth_and_pd, multigraded_betti, Field};
use stanley::ideal::Quotient;
use stanley::io;
use stanley::lattice::build_lcm_lattice;
use stanley::posets::{embed_from_realizer, order_dimension_with, DimOptions};
use stanley::sdepth::{characteristic_poset, sdepth_with_options, SdepthOptions};
use stanley::simplicial::{complex_from_squarefree_ideal, VertexDecomposability};

use stanley_cli::bounds::{check_bounds, run_conjecture_sweep, run_sweep};
use stanley_cli::experiment::{Caps, ExperimentConfig};
use stanley_cli::reproduce::reproduce_reference_examples;

#[derive(Parser)]
#[command(
    name = "stanley",
    about = "Exact invariants of monomial ideals: lcm numbers and lattices, order dimension, Stanley depth, Betti numbers, simplicial tools",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Input selection shared by the ideal-based commands.
#[derive(Args)]
struct IdealInput {
    /// Ideal file (text or JSON), or '-' for standard input
    file: String,
    /// Denominator ideal J, making the module I/J
    #[arg(long = "mod", value_name = "FILE")]
    modulus: Option<String>,
    /// Work with the quotient ring S/I instead of the ideal I
    #[arg(long)]
    ring: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Longest strict chain of running generator lcms, with a witness
    LcmNumber(IdealInput),
    /// Build the lcm lattice; print a summary or export it
    LcmLattice {
        #[command(flatten)]
        input: IdealInput,
        /// Write the Hasse diagram in DOT format to a file ('-' = stdout)
        #[arg(long, value_name = "FILE")]
        dot: Option<String>,
        /// Write the lattice as JSON to a file ('-' = stdout)
        #[arg(long, value_name = "FILE")]
        json: Option<String>,
    },
    /// Exact order dimension of the lcm lattice (or of a poset JSON file)
    OrderDim {
        #[command(flatten)]
        input: IdealInput,
        /// Largest dimension to try before giving up
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        /// Treat the input file as a poset JSON instead of an ideal
        #[arg(long)]
        poset: bool,
        /// Write the realizer and embedding witness JSON to a file
        #[arg(long, value_name = "FILE")]
        witness: Option<String>,
    },
    /// Exact Stanley depth with an interval-partition certificate
    Sdepth {
        #[command(flatten)]
        input: IdealInput,
        /// Degree box, comma separated (defaults to the generator lcm)
        #[arg(long, value_name = "e1,..,en")]
        g: Option<String>,
        /// Write the certificate JSON to a file
        #[arg(long, value_name = "FILE")]
        certificate: Option<String>,
    },
    /// Depth and projective dimension from the Betti table
    Depth {
        /// Ideal file (text or JSON), or '-' for standard input
        file: String,
        /// Coefficient field: q (rationals) or a prime p
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Multigraded Betti numbers by both routes
    Betti {
        /// Ideal file (text or JSON), or '-' for standard input
        file: String,
        /// Coefficient field: q (rationals) or a prime p
        #[arg(long, default_value = "q")]
        field: String,
        /// Write the table as JSON to a file ('-' = stdout)
        #[arg(long, value_name = "FILE")]
        json: Option<String>,
    },
    /// Stanley-Reisner ideal of a simplicial complex
    SrIdeal {
        /// Complex file (text or JSON), or '-' for standard input
        file: String,
        /// Emit JSON instead of the text format
        #[arg(long)]
        json: bool,
    },
    /// Simplicial complex of a squarefree ideal
    SrComplex {
        /// Ideal file (text or JSON), or '-' for standard input
        file: String,
        /// Emit JSON instead of the text format
        #[arg(long)]
        json: bool,
    },
    /// Decide vertex decomposability, with a shedding witness
    VertexDecomposable {
        /// Complex file (text or JSON), or '-' for standard input
        file: String,
    },
    /// Evaluate every applicable bound for one input
    CheckBounds {
        #[command(flatten)]
        input: IdealInput,
        /// Write the report row as JSON to a file ('-' = stdout)
        #[arg(long, value_name = "FILE")]
        json: Option<String>,
    },
    /// Randomized bound-verification sweep
    Sweep {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        /// Ambient variable count
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_exp: u64,
        #[arg(long, default_value_t = 4)]
        max_gens: usize,
        /// Only squarefree generators
        #[arg(long)]
        squarefree: bool,
        /// Mix the shapes I, S/I and I/J instead of plain ideals
        #[arg(long)]
        quotients: bool,
        /// Also run the vertex-decomposability suite and conjecture filter
        #[arg(long)]
        conjecture: bool,
        /// Largest order dimension to try per instance
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        /// Deterministic search-node budget per invocation
        #[arg(long, default_value_t = 20_000_000)]
        budget: u64,
        /// Write the full report as JSON to a file
        #[arg(long, value_name = "FILE")]
        json: Option<String>,
        /// Write the full report as CSV to a file
        #[arg(long, value_name = "FILE")]
        csv: Option<String>,
    },
    /// Recompute the bundled reference examples and verify their values
    ReproducePaper {
        /// Write the comparison report as JSON to a file
        #[arg(long, value_name = "FILE")]
        json: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::ResourceCap(_) | Error::BudgetExhausted(_) | Error::DimBoundExceeded { .. } => 3,
        Error::Invariant(_) => 1,
        _ => 2,
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
    }
}

fn write_output(path: &str, content: &str) -> Result<(), Error> {
    if path == "-" {
        print!("{content}");
        Ok(())
    } else {
        fs::write(PathBuf::from(path), content).map_err(|e| Error::Parse(format!("{path}: {e}")))
    }
}

fn load_quotient(input: &IdealInput) -> Result<(Quotient, Vec<String>), Error> {
    let parsed = io::parse_ideal(&read_input(&input.file)?)?;
    let names = parsed.names.clone();
    let q = match (&input.modulus, input.ring) {
        (Some(_), true) => {
            return Err(Error::Parse(
                "--mod and --ring are mutually exclusive".into(),
            ))
        }
        (Some(path), false) => {
            let denominator = io::parse_ideal(&read_input(path)?)?;
            Quotient::new(parsed.ideal, denominator.ideal)?
        }
        (None, true) => Quotient::ring_quotient(parsed.ideal)?,
        (None, false) => Quotient::ideal(parsed.ideal)?,
    };
    Ok((q, names))
}

fn load_ideal(path: &str) -> Result<io::NamedIdeal, Error> {
    io::parse_ideal(&read_input(path)?)
}

fn parse_field(spec: &str) -> Result<Field, Error> {
    if spec == "q" || spec == "Q" {
        Ok(Field::Rationals)
    } else {
        let p = spec
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad field '{spec}': use q or a prime")))?;
        Ok(Field::Prime(p))
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::LcmNumber(input) => {
            let (q, names) = load_quotient(&input)?;
            let chain = q.lcm_number()?;
            println!("l = {}", chain.length());
            let steps: Vec<String> = chain
                .running_lcms()
                .iter()
                .map(|m| io::format_monomial(m, Some(&names)))
                .collect();
            println!("witness chain: {}", steps.join(" | "));
            Ok(ExitCode::SUCCESS)
        }
        Command::LcmLattice { input, dot, json } => {
            let (q, names) = load_quotient(&input)?;
            let lattice = build_lcm_lattice(&q)?;
            if let Some(path) = &dot {
                write_output(path, &lattice.to_dot(Some(&names)))?;
            }
            if let Some(path) = &json {
                write_output(path, &(lattice.to_json() + "\n"))?;
            }
            if dot.is_none() && json.is_none() {
                println!(
                    "elements: {} (including the bottom)\ncovers: {}\nlength: {}",
                    lattice.len(),
                    lattice.covers().len(),
                    lattice.length()
                );
                let irr: Vec<String> = lattice
                    .join_irreducibles()
                    .iter()
                    .map(|&i| {
                        io::format_monomial(lattice.monomial(i).expect("non-bottom"), Some(&names))
                    })
                    .collect();
                println!("join irreducibles: {}", irr.join(", "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::OrderDim {
            input,
            dmax,
            poset,
            witness,
        } => {
            let target = if poset {
                io::parse_poset_json(&read_input(&input.file)?)?
            } else {
                let (q, _) = load_quotient(&input)?;
                build_lcm_lattice(&q)?.as_poset()
            };
            let (d, realizer) = order_dimension_with(
                &target,
                DimOptions {
                    d_max: dmax,
                    node_budget: None,
                },
            )?;
            println!("order dimension: {d}");
            if let Some(path) = &witness {
                let embedding = embed_from_realizer(&target, &realizer)?;
                let blob = serde_json::json!({
                    "d": d,
                    "extensions": realizer.extensions,
                    "coordinates": embedding.coordinates,
                });
                write_output(path, &format!("{blob:#}\n"))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sdepth {
            input,
            g,
            certificate,
        } => {
            let (q, _) = load_quotient(&input)?;
            let g = match g {
                None => None,
                Some(spec) => {
                    let exps = spec
                        .split(',')
                        .map(|t| {
                            t.trim()
                                .parse::<u64>()
                                .map_err(|_| Error::Parse(format!("bad exponent '{t}'")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Some(stanley::monomial::Monomial::new(exps))
                }
            };
            let cert = sdepth_with_options(
                &q,
                &SdepthOptions {
                    g,
                    ..Default::default()
                },
            )?;
            let poset = characteristic_poset(&q, Some(&cert.g))?;
            if !stanley::sdepth::verify_certificate(&poset, &cert) {
                return Err(Error::Invariant("certificate failed verification".into()));
            }
            println!("sdepth = {}", cert.value);
            println!(
                "certificate: {} intervals over {} points, verified",
                cert.intervals.len(),
                poset.len()
            );
            if let Some(path) = &certificate {
                let blob =
                    serde_json::to_string_pretty(&cert).map_err(|e| Error::Parse(e.to_string()))?;
                write_output(path, &(blob + "\n"))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Depth { file, field } => {
            let parsed = load_ideal(&file)?;
            let field = parse_field(&field)?;
            let summary = depth_and_pd(&parsed.ideal, field)?;
            println!("pd(S/I)    = {}", summary.projective_dimension);
            println!("depth(S/I) = {}", summary.depth_ring_quotient);
            println!("depth(I)   = {}", summary.depth_ideal);
            Ok(ExitCode::SUCCESS)
        }
        Command::Betti { file, field, json } => {
            let parsed = load_ideal(&file)?;
            let field = parse_field(&field)?;
            let table = multigraded_betti(&parsed.ideal, field)?.into_ring_quotient();
            let lattice_route = betti_via_lcm_lattice(&parsed.ideal, field)?;
            if table != lattice_route {
                return Err(Error::Invariant("the two Betti routes disagree".into()));
            }
            let mut rows = vec![];
            for ((i, degree), value) in table.nonzero() {
                rows.push(serde_json::json!({
                    "i": i,
                    "degree": degree.exponents(),
                    "value": value,
                }));
                println!(
                    "b_{i}[{}] = {value}",
                    io::format_monomial(degree, Some(&parsed.names)),
                );
            }
            println!(
                "pd(S/I) = {} (both routes agree)",
                table.projective_dimension()
            );
            if let Some(path) = &json {
                let blob =
                    serde_json::to_string_pretty(&rows).map_err(|e| Error::Parse(e.to_string()))?;
                write_output(path, &(blob + "\n"))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SrIdeal { file, json } => {
            let complex = io::parse_complex(&read_input(&file)?)?;
            let ideal = complex.stanley_reisner_ideal()?;
            if json {
                println!("{}", io::ideal_to_json(&ideal));
            } else {
                print!("{}", io::ideal_to_text(&ideal, None));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SrComplex { file, json } => {
            let parsed = load_ideal(&file)?;
            let complex = complex_from_squarefree_ideal(&parsed.ideal)?;
            if json {
                println!("{}", io::complex_to_json(&complex));
            } else {
                print!("{}", io::complex_to_text(&complex));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VertexDecomposable { file } => {
            let complex = io::parse_complex(&read_input(&file)?)?;
            match complex.is_vertex_decomposable()? {
                VertexDecomposability::Decomposable(tree) => {
                    println!("vertex decomposable: yes");
                    println!("shedding witness: {}", render_shed_tree(&tree));
                    Ok(ExitCode::SUCCESS)
                }
                VertexDecomposability::NotDecomposable(reasons) => {
                    println!("vertex decomposable: no");
                    for (vertex, why) in reasons {
                        println!("  vertex {}: {:?}", vertex + 1, why);
                    }
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::CheckBounds { input, json } => {
            let (q, _) = load_quotient(&input)?;
            let caps = Caps::default();
            let report = check_bounds(&q, 0, &caps)?;
            print!("{}", report.render());
            if let Some(path) = &json {
                let blob =
                    serde_json::to_string_pretty(&report).map_err(|e| Error::Parse(e.to_string()))?;
                write_output(path, &(blob + "\n"))?;
            }
            if report.failures() > 0 {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            seed,
            count,
            n,
            max_exp,
            max_gens,
            squarefree,
            quotients,
            conjecture,
            dmax,
            budget,
            json,
            csv,
        } => {
            let cfg = ExperimentConfig {
                seed,
                n,
                max_exponent: max_exp,
                max_generators: max_gens,
                squarefree,
                sample_count: count,
                quotient_shapes: quotients,
                caps: Caps {
                    d_max: dmax,
                    node_budget: budget,
                    ..Caps::default()
                },
            };
            let report = if conjecture {
                run_conjecture_sweep(&cfg)?
            } else {
                run_sweep(&cfg)?
            };
            print!("{}", report.render());
            if let Some(path) = &json {
                write_output(path, &(report.to_json() + "\n"))?;
            }
            if let Some(path) = &csv {
                write_output(path, &report.to_csv())?;
            }
            if report.has_failures() {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ReproducePaper { json } => {
            let report = reproduce_reference_examples()?;
            print!("{}", report.render());
            if let Some(path) = &json {
                write_output(path, &(report.to_json() + "\n"))?;
            }
            if !report.all_pass() {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn render_shed_tree(tree: &stanley::simplicial::ShedTree) -> String {
    match tree {
        stanley::simplicial::ShedTree::Simplex => "simplex".into(),
        stanley::simplicial::ShedTree::Shed {
            vertex,
            deletion,
            link,
        } => format!(
            "shed v{} (del: {}, lk: {})",
            vertex + 1,
            render_shed_tree(deletion),
            render_shed_tree(link)
        ),
    }
}
