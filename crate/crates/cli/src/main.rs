//! `splitnest`: command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 negative answer, 3 size cap hit.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use splitnest::buneman::{
    buneman_graph_capped, embed_network, extract_network, marguerites, max_vertices, BunemanGraph,
};
use splitnest::closure::{i_closure, int_closure};
use splitnest::incompat::{components, is_maximal_generator, GeneratorCheck};
use splitnest::io::{
    buneman_dot, emit_buneman, emit_network, emit_split_system, network_dot, parse_network, parse_split,
    parse_split_system, split_text,
};
use splitnest::oracle::{brute_circular, brute_min_cuts, naive_closure};
use splitnest::synthesis::{buneman_tree, is_circular, minimal_1nested, splits_equivalence_check};
use splitnest::{CircularOrdering, Error, Network, Split, SplitSystem};

#[derive(Parser, Debug)]
#[command(name = "splitnest", version, about = "Split systems, circular orderings and 1-nested networks")]
struct Cli {
    /// Input file, `-` for stdin.
    #[arg(short, long, global = true, default_value = "-")]
    input: String,
    /// Output file, `-` for stdout.
    #[arg(short, long, global = true, default_value = "-")]
    output: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Txt)]
    format: Format,
    /// Cross-check the result against the brute-force reference, where one
    /// exists for the command.
    #[arg(long, global = true)]
    oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Txt,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closure under all pairwise intersections.
    Closure,
    /// Closure under intersections of incompatible pairs.
    Iclosure,
    /// Connected components of the incompatibility graph.
    Components,
    /// Decide circularity and print a displaying ordering.
    IsCircular {
        /// Scan every ordering instead (at most 10 taxa).
        #[arg(long)]
        brute_force: bool,
    },
    /// Decide whether the I-closure is maximal circular.
    IsMaximal,
    /// Minimal 1-nested network displaying the splits.
    Synthesize,
    /// Split system of a network.
    SplitsOf,
    /// Number of minimal cuts inducing each split of a network.
    Multiplicity {
        /// Only this split, written `a b | c d`.
        #[arg(long)]
        split: Option<String>,
    },
    /// Maximal partial resolution of a network.
    Resolve,
    /// Buneman graph of a split system.
    Buneman {
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// Marguerites of the Buneman graph.
    Marguerites {
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// Embed a resolved network into the Buneman graph of its splits.
    Embed,
    /// Minimal network read off the Buneman graph.
    Extract {
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// A network displaying exactly the splits, if one exists.
    CheckEqual,
    /// Tree of a compatible split system.
    Tree,
}

/// Why a command did not succeed, with its exit code.
#[derive(Debug)]
enum Failure {
    Invalid(String),
    Negative(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Negative(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Negative(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else if e.is_negative_decision() {
            Failure::Negative(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

/// Data for the output stream plus the exit code it comes with.
struct Answer {
    text: String,
    code: u8,
}

impl Answer {
    fn ok(text: String) -> Self {
        Answer { text, code: 0 }
    }

    fn no(text: String) -> Self {
        Answer { text, code: 2 }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{path}: {e}")))
    }
}

fn write_output(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()?;
    } else {
        fs::write(path, text).map_err(|e| Failure::Invalid(format!("{path}: {e}")))?;
    }
    Ok(())
}

fn warn(msg: &str) {
    eprintln!("warning: {msg}");
}

fn read_splits(cli: &Cli) -> Result<SplitSystem, Failure> {
    let sigma = parse_split_system(&read_input(&cli.input)?)?;
    if sigma.is_empty() {
        warn("the split system is empty");
    }
    Ok(sigma)
}

fn read_network(cli: &Cli) -> Result<Network, Failure> {
    Ok(parse_network(&read_input(&cli.input)?)?)
}

/// Warns about the trivial splits a construction will add on its own.
fn warn_missing_trivials(sigma: &SplitSystem) {
    let missing: Vec<&str> = (0..sigma.n())
        .filter(|&x| !sigma.contains(&Split::trivial(sigma.n(), x)))
        .map(|x| sigma.taxa().name(x))
        .collect();
    if !missing.is_empty() {
        warn(&format!("added trivial splits for {}", missing.join(" ")));
    }
}

fn text_only(cli: &Cli) -> Result<(), Failure> {
    match cli.format {
        Format::Txt => Ok(()),
        Format::Dot => Err(Failure::Invalid("--format dot is not available for this command".into())),
    }
}

fn network_out(cli: &Cli, net: &Network) -> String {
    match cli.format {
        Format::Txt => emit_network(net),
        Format::Dot => network_dot(net),
    }
}

fn ordering_line(sigma: &SplitSystem, o: &CircularOrdering) -> String {
    format!("ORDER {}\n", o.display(sigma.taxa()))
}

fn graph(sigma: &SplitSystem, cap: Option<usize>) -> Result<BunemanGraph, Failure> {
    Ok(buneman_graph_capped(sigma, cap.unwrap_or_else(max_vertices))?)
}

fn oracle_mismatch(what: &str) -> Failure {
    Failure::Invalid(format!("internal check failed: {what} disagrees with the brute-force reference"))
}

fn run(cli: &Cli) -> Result<Answer, Failure> {
    match &cli.command {
        Command::Closure | Command::Iclosure => {
            text_only(cli)?;
            let sigma = read_splits(cli)?;
            let all = matches!(cli.command, Command::Closure);
            let closed = if all { int_closure(&sigma)? } else { i_closure(&sigma)? };
            if cli.oracle && closed != naive_closure(&sigma, !all) {
                return Err(oracle_mismatch("closure"));
            }
            Ok(Answer::ok(emit_split_system(&closed)))
        }
        Command::Components => {
            text_only(cli)?;
            let sigma = read_splits(cli)?;
            let mut out = emit_split_system(&SplitSystem::empty(sigma.taxa().clone()));
            for (i, c) in components(&sigma).iter().enumerate() {
                let _ = writeln!(out, "# component {i}");
                for s in c.iter() {
                    let _ = writeln!(out, "SPLIT {}", split_text(sigma.taxa(), s));
                }
            }
            Ok(Answer::ok(out))
        }
        Command::IsCircular { brute_force } => {
            text_only(cli)?;
            let sigma = read_splits(cli)?;
            let found = if *brute_force { brute_circular(&sigma)? } else { is_circular(&sigma) };
            if cli.oracle && !*brute_force && found.is_some() != brute_circular(&sigma)?.is_some() {
                return Err(oracle_mismatch("circularity"));
            }
            Ok(match found {
                Some(o) => Answer::ok(format!("circular\n{}", ordering_line(&sigma, &o))),
                None => Answer::no("not circular\n".into()),
            })
        }
        Command::IsMaximal => {
            text_only(cli)?;
            let sigma = read_splits(cli)?;
            if is_circular(&sigma).is_none() {
                return Ok(Answer::no("not circular\n".into()));
            }
            let t = sigma.taxa();
            Ok(match is_maximal_generator(&sigma) {
                GeneratorCheck::Maximal => Answer::ok("maximal\n".into()),
                GeneratorCheck::Unseparated(x, y) => Answer::no(format!(
                    "not maximal: no non-trivial split separates {} and {}\n",
                    t.name(x),
                    t.name(y)
                )),
                GeneratorCheck::Disconnected(a, b) => Answer::no(format!(
                    "not maximal: the non-trivial splits are disconnected, e.g. {} and {}\n",
                    split_text(t, a.iter().next().expect("non-empty component")),
                    split_text(t, b.iter().next().expect("non-empty component")),
                )),
            })
        }
        Command::Synthesize => {
            let sigma = read_splits(cli)?;
            warn_missing_trivials(&sigma);
            let net = minimal_1nested(&sigma)?;
            Ok(Answer::ok(network_out(cli, &net)))
        }
        Command::SplitsOf => {
            text_only(cli)?;
            let net = read_network(cli)?;
            let sigma = net.splits()?;
            if cli.oracle && sigma != brute_min_cuts(&net) {
                return Err(oracle_mismatch("split enumeration"));
            }
            Ok(Answer::ok(emit_split_system(&sigma)))
        }
        Command::Multiplicity { split } => {
            text_only(cli)?;
            let net = read_network(cli)?;
            let t = net.taxa().clone();
            let wanted = match split {
                Some(text) => vec![parse_split(&t, text)?],
                None => net.splits()?.to_vec(),
            };
            let mut out = String::new();
            for s in &wanted {
                let _ = writeln!(out, "{} {}", net.split_multiplicity(s)?, split_text(&t, s));
            }
            Ok(Answer::ok(out))
        }
        Command::Resolve => {
            let net = read_network(cli)?;
            Ok(Answer::ok(network_out(cli, &net.maximal_partial_resolution()?)))
        }
        Command::Buneman { max_vertices } => {
            let sigma = read_splits(cli)?;
            let g = graph(&sigma, *max_vertices)?;
            Ok(Answer::ok(match cli.format {
                Format::Txt => emit_buneman(&g),
                Format::Dot => {
                    let ms = marguerites(&g).unwrap_or_else(|e| {
                        warn(&format!("marguerites not marked: {e}"));
                        Vec::new()
                    });
                    buneman_dot(&g, &ms)
                }
            }))
        }
        Command::Marguerites { max_vertices } => {
            let sigma = read_splits(cli)?;
            let g = graph(&sigma, *max_vertices)?;
            let ms = marguerites(&g)?;
            if cli.format == Format::Dot {
                return Ok(Answer::ok(buneman_dot(&g, &ms)));
            }
            let t = sigma.taxa();
            let mut out = format!("# {} marguerites\n", ms.len());
            for m in &ms {
                let blocks: Vec<String> = m
                    .cycle
                    .iter()
                    .map(|ys| {
                        let names: Vec<&str> = ys.iter().map(|&x| t.name(x)).collect();
                        format!("{{{}}}", names.join(" "))
                    })
                    .collect();
                let ext: Vec<String> = m.external().iter().map(usize::to_string).collect();
                let _ = writeln!(out, "MARGUERITE k={} block={} vertices={}", m.k, m.block, m.vertices().len());
                let _ = writeln!(out, "CYCLE {}", blocks.join(" "));
                let _ = writeln!(out, "EXTERNAL {}", ext.join(" "));
            }
            Ok(Answer::ok(out))
        }
        Command::Embed => {
            text_only(cli)?;
            let net = read_network(cli)?;
            let e = embed_network(&net)?;
            let mut out = format!(
                "# {} network vertices into a graph with {} vertices\n",
                net.vertex_count(),
                e.graph.vertex_count()
            );
            for (v, &g) in e.vertex_map.iter().enumerate() {
                let _ = writeln!(out, "MAP {v} {g}");
            }
            for ((u, w), path) in &e.cycle_paths {
                let p: Vec<String> = path.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "PATH {u} {w} : {}", p.join(" "));
            }
            let gates = e.graph.gates()?;
            let _ = writeln!(
                out,
                "# injective={} subgraph={} image_is_gates={}",
                e.is_injective(),
                e.is_subgraph(),
                e.image() == gates
            );
            Ok(Answer::ok(out))
        }
        Command::Extract { max_vertices } => {
            let sigma = read_splits(cli)?;
            let net = extract_network(&graph(&sigma, *max_vertices)?)?;
            Ok(Answer::ok(network_out(cli, &net)))
        }
        Command::CheckEqual => {
            let sigma = read_splits(cli)?;
            match splits_equivalence_check(&sigma)? {
                Some(net) => Ok(Answer::ok(network_out(cli, &net))),
                None => Err(Failure::Negative(
                    "no 1-nested network displays exactly this split system".into(),
                )),
            }
        }
        Command::Tree => {
            let sigma = read_splits(cli)?;
            warn_missing_trivials(&sigma);
            Ok(Answer::ok(network_out(cli, &buneman_tree(&sigma.with_trivials())?)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|answer| {
        write_output(&cli.output, &answer.text)?;
        Ok(answer.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
