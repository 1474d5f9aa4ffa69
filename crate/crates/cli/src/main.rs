mod error;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use princ_core::congruence::princ;
use princ_core::construction::{
    bridge_template, principal_generator, represent, represent_chain, vertical_skeleton,
};
use princ_core::corpus;
use princ_core::dot;
use princ_core::io::{
    from_json, to_json, trace_to_json, AuxJson, LatticeJson, PosetJson, PrincJson,
};
use princ_core::lattice::FiniteLattice;
use princ_core::order::Poset;
use princ_core::quasicolor::{aux_substructure, check_aux, check_maximal_chains, AuxStructure};
use serde::Serialize;

use error::CliError;
use report::{RunReport, Verdict};

#[derive(Parser)]
#[command(
    name = "princ",
    version,
    about = "Build finite lattices whose principal congruences form a given ordered set"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a lattice L with Princ L isomorphic to the input ordered set.
    Represent {
        /// Ordered set JSON: {"elements": [...], "leq": [[x, y], ...]}.
        poset: PathBuf,
        /// Write the lattice JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the full auxiliary structure (coloring included).
        #[arg(long)]
        aux: Option<PathBuf>,
        /// Write the colored Hasse diagram as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the list of extension steps as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the run report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Build stage by stage from growing principal ideals, one ideal per
        /// line given as element labels ("-" reads stdin). Prints one JSON
        /// line per stage.
        #[arg(long, value_name = "IDEALS")]
        stream: Option<PathBuf>,
    },
    /// Print the principal congruences of a lattice and their order.
    Princ {
        /// Lattice JSON, or an auxiliary structure JSON.
        lattice: PathBuf,
    },
    /// Check that Princ L is isomorphic to an ordered set; with an auxiliary
    /// structure also run the axiom and chain checks.
    Verify {
        poset: PathBuf,
        /// Lattice JSON or auxiliary structure JSON.
        lattice: PathBuf,
    },
    /// Print one of the building blocks of the construction.
    Gadget {
        #[arg(value_enum)]
        name: Gadget,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the eight axioms of an auxiliary structure.
    CheckAux { aux: PathBuf },
    /// Represent and verify a seeded batch of random bounded ordered sets.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Largest ordered set to generate.
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Gadget {
    Bridge,
    VerticalSkeleton,
}

fn read(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        return io::read_to_string(io::stdin()).map_err(CliError::io(path));
    }
    fs::read_to_string(path).map_err(CliError::io(path))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(CliError::io(path))
}

fn parse<T: for<'de> serde::Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    from_json(text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn load_poset(path: &Path) -> Result<Poset, CliError> {
    let json: PosetJson = parse(path, &read(path)?)?;
    json.to_poset().map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Either a lattice or a whole auxiliary structure.
enum Loaded {
    Lattice(FiniteLattice),
    Aux(Box<AuxStructure>),
}

impl Loaded {
    fn lattice(&self) -> &FiniteLattice {
        match self {
            Loaded::Lattice(l) => l,
            Loaded::Aux(a) => &a.lattice,
        }
    }
}

fn load_lattice_or_aux(path: &Path) -> Result<Loaded, CliError> {
    let text = read(path)?;
    let value: serde_json::Value = parse(path, &text)?;
    let wrap = |source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    };
    if value.get("gamma").is_some() {
        let json: AuxJson = parse(path, &text)?;
        Ok(Loaded::Aux(Box::new(json.to_aux().map_err(wrap)?)))
    } else {
        let json: LatticeJson = parse(path, &text)?;
        Ok(Loaded::Lattice(json.to_lattice().map_err(wrap)?))
    }
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write(path, contents),
        None => {
            println!("{contents}");
            Ok(())
        }
    }
}

fn finish(report: &RunReport, path: Option<&Path>) -> Result<(), CliError> {
    eprintln!("{}", report.summary());
    if let Some(path) = path {
        write(path, &to_json(report))?;
    }
    match report.verdict {
        Verdict::Ok => Ok(()),
        Verdict::Fail => Err(CliError::Verification(
            report.explanation.clone().unwrap_or_default(),
        )),
    }
}

struct Outputs<'a> {
    out: Option<&'a Path>,
    aux: Option<&'a Path>,
    dot: Option<&'a Path>,
    trace: Option<&'a Path>,
    report: Option<&'a Path>,
}

fn write_outputs(a: &AuxStructure, o: &Outputs) -> Result<(), CliError> {
    emit(o.out, &to_json(&LatticeJson::from_lattice(&a.lattice)))?;
    if let Some(path) = o.aux {
        write(path, &to_json(&AuxJson::from_aux(a)))?;
    }
    if let Some(path) = o.dot {
        write(path, &dot::colored_hasse(a))?;
    }
    Ok(())
}

fn cmd_represent(poset: &Path, o: Outputs) -> Result<(), CliError> {
    let start = Instant::now();
    let p = load_poset(poset)?;
    let r = represent(&p)?;
    let mut report = RunReport::compare("represent", &p, &r.aux.lattice, &r.princ);
    report.trace = r.trace.clone();
    write_outputs(&r.aux, &o)?;
    if let Some(path) = o.trace {
        write(path, &trace_to_json(&r.trace))?;
    }
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    finish(&report, o.report)
}

#[derive(Serialize)]
struct StageLine {
    stage: usize,
    generator: String,
    ideal_elements: usize,
    lattice_elements: usize,
    principal_congruences: usize,
    /// Whether the previous stage is a substructure of this one.
    embeds_previous: Option<bool>,
    verdict: Verdict,
    error: Option<String>,
}

/// Ideals as element labels, one per line; blank lines and `#` comments
/// are skipped.
fn read_ideals(path: &Path, p: &Poset) -> Result<Vec<usize>, CliError> {
    let text = read(path)?;
    let mut generators = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ideal = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|label| {
                p.index_of(label).ok_or_else(|| {
                    CliError::Rejected(format!("line {}: unknown element `{label}`", n + 1))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let c = principal_generator(p, &ideal)
            .ok_or_else(|| CliError::Rejected(format!("line {}: not a principal ideal", n + 1)))?;
        generators.push(c);
    }
    Ok(generators)
}

fn cmd_stream(poset: &Path, ideals: &Path, o: Outputs) -> Result<(), CliError> {
    let start = Instant::now();
    let p = load_poset(poset)?;
    let generators = read_ideals(ideals, &p)?;
    let stages = represent_chain(&p, &generators)?;
    let stdout = io::stdout();
    let mut lines = stdout.lock();
    let mut prev: Option<princ_core::construction::Stage> = None;
    let mut failure = None;
    let mut trace = Vec::new();
    for (i, stage) in stages.enumerate() {
        let line = match stage {
            Ok(stage) => {
                let embeds = match (&prev, &stage.embed) {
                    (Some(before), Some(embed)) => {
                        Some(aux_substructure(&before.aux, &stage.aux, embed))
                    }
                    _ => None,
                };
                if embeds == Some(false) {
                    failure = Some(format!("stage {} does not embed in stage {i}", i - 1));
                }
                trace.extend(stage.trace.iter().cloned());
                let line = StageLine {
                    stage: i,
                    generator: p.label(stage.generator).to_string(),
                    ideal_elements: stage.ideal.len(),
                    lattice_elements: stage.aux.lattice.size(),
                    principal_congruences: stage.princ.len(),
                    embeds_previous: embeds,
                    verdict: if embeds == Some(false) {
                        Verdict::Fail
                    } else {
                        Verdict::Ok
                    },
                    error: None,
                };
                prev = Some(stage);
                line
            }
            Err(e) => {
                failure = Some(format!("stage {i}: {e}"));
                StageLine {
                    stage: i,
                    generator: p.label(generators[i]).to_string(),
                    ideal_elements: p.principal_ideal(generators[i]).len(),
                    lattice_elements: 0,
                    principal_congruences: 0,
                    embeds_previous: None,
                    verdict: Verdict::Fail,
                    error: Some(e.to_string()),
                }
            }
        };
        let json = serde_json::to_string(&line).expect("plain data serializes");
        writeln!(lines, "{json}").map_err(CliError::io("stdout"))?;
    }
    drop(lines);

    let Some(last) = prev else {
        return Err(CliError::Verification(failure.unwrap_or_default()));
    };
    if let Some(out) = o.out {
        write(out, &to_json(&LatticeJson::from_lattice(&last.aux.lattice)))?;
    }
    if let Some(path) = o.aux {
        write(path, &to_json(&AuxJson::from_aux(&last.aux)))?;
    }
    if let Some(path) = o.dot {
        write(path, &dot::colored_hasse(&last.aux))?;
    }
    if let Some(path) = o.trace {
        write(path, &trace_to_json(&trace))?;
    }
    let local = p.restrict(&last.ideal);
    let mut report =
        RunReport::compare("represent --stream", &local, &last.aux.lattice, &last.princ);
    report.trace = trace;
    if let Some(why) = failure {
        report.fail(why);
    }
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    finish(&report, o.report)
}

fn cmd_princ(path: &Path) -> Result<(), CliError> {
    let loaded = load_lattice_or_aux(path)?;
    let l = loaded.lattice();
    println!("{}", to_json(&PrincJson::from_princ(l, &princ(l))));
    Ok(())
}

fn cmd_verify(poset: &Path, lattice: &Path) -> Result<(), CliError> {
    let start = Instant::now();
    let p = load_poset(poset)?;
    let loaded = load_lattice_or_aux(lattice)?;
    let l = loaded.lattice();
    let princ = princ(l);
    let mut report = RunReport::compare("verify", &p, l, &princ);
    if let Loaded::Aux(a) = &loaded {
        let axioms = check_aux(a);
        report.axioms = Some(axioms.to_string().lines().map(String::from).collect());
        if !axioms.passed() {
            report.fail("the auxiliary structure fails an axiom".into());
        } else {
            let (count, bad) = check_maximal_chains(a);
            report.maximal_chains = Some(count);
            if let Some(chain) = bad {
                let labels: Vec<&str> = chain.iter().map(|&x| l.label(x)).collect();
                report.fail(format!("join identity fails on the chain {labels:?}"));
            }
        }
    }
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    println!("{}", to_json(&report));
    finish(&report, None)
}

fn cmd_gadget(name: Gadget, dot_path: Option<&Path>) -> Result<(), CliError> {
    let (lattice, diagram) = match name {
        Gadget::Bridge => {
            let l = bridge_template().lattice;
            let d = dot::hasse(&l, None);
            (l, d)
        }
        Gadget::VerticalSkeleton => {
            let a = vertical_skeleton();
            let d = dot::colored_hasse(&a);
            (a.lattice, d)
        }
    };
    println!("{}", to_json(&LatticeJson::from_lattice(&lattice)));
    if let Some(path) = dot_path {
        write(path, &diagram)?;
    }
    Ok(())
}

fn cmd_check_aux(path: &Path) -> Result<(), CliError> {
    let Loaded::Aux(a) = load_lattice_or_aux(path)? else {
        return Err(CliError::Rejected(format!(
            "{}: not an auxiliary structure (no \"gamma\" section)",
            path.display()
        )));
    };
    let report = check_aux(&a);
    println!("{report}");
    if !report.passed() {
        return Err(CliError::Verification("axioms fail".into()));
    }
    let (count, bad) = check_maximal_chains(&a);
    match bad {
        None => {
            println!("join identity ok on {count} maximal chains");
            Ok(())
        }
        Some(chain) => Err(CliError::Verification(format!(
            "join identity fails on the chain {chain:?}"
        ))),
    }
}

fn cmd_selftest(seed: u64, count: usize, max: usize) -> Result<(), CliError> {
    if max == 0 {
        return Err(CliError::Rejected("--max must be at least 1".into()));
    }
    let mut rng = corpus::rng(seed);
    let mut failures = 0;
    for i in 0..count {
        let p = corpus::random_bounded_upto(&mut rng, max);
        let verdict = match represent(&p) {
            Ok(r) => {
                let report = RunReport::compare("selftest", &p, &r.aux.lattice, &r.princ);
                match (report.verdict, check_aux(&r.aux).passed()) {
                    (Verdict::Ok, true) => Ok(r.aux.lattice.size()),
                    (Verdict::Ok, false) => Err("axioms fail".to_string()),
                    _ => Err(report.explanation.unwrap_or_default()),
                }
            }
            Err(e) => Err(e.to_string()),
        };
        match verdict {
            Ok(n) => println!("{i}: |P| = {}, |L| = {n}: ok", p.size()),
            Err(why) => {
                failures += 1;
                println!("{i}: |P| = {}: FAIL: {why}", p.size());
                println!("{}", to_json(&PosetJson::from_poset(&p)));
            }
        }
    }
    println!("{} of {count} passed (seed {seed})", count - failures);
    if failures > 0 {
        return Err(CliError::Verification(format!("{failures} inputs failed")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Represent {
            poset,
            out,
            aux,
            dot,
            trace,
            report,
            stream,
        } => {
            let outputs = Outputs {
                out: out.as_deref(),
                aux: aux.as_deref(),
                dot: dot.as_deref(),
                trace: trace.as_deref(),
                report: report.as_deref(),
            };
            match stream {
                Some(ideals) => cmd_stream(&poset, &ideals, outputs),
                None => cmd_represent(&poset, outputs),
            }
        }
        Command::Princ { lattice } => cmd_princ(&lattice),
        Command::Verify { poset, lattice } => cmd_verify(&poset, &lattice),
        Command::Gadget { name, dot } => cmd_gadget(name, dot.as_deref()),
        Command::CheckAux { aux } => cmd_check_aux(&aux),
        Command::Selftest { seed, count, max } => cmd_selftest(seed, count, max),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
