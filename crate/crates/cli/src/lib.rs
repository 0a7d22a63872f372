//! Command-line front end for the decomposition pipeline.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code with everything that would be printed, so tests can drive the tool
//! without spawning a process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use cascade_core::automaton::DEFAULT_MAX_STATE_BITS;
use cascade_core::circuit::{format_label, DEFAULT_MAX_COMPONENTS};
use cascade_core::document::{parse_document_with_limit, parse_map, Document, RawDocument};
use cascade_core::dot::{architecture_dot, std_dot};
use cascade_core::partition::search_chains;
use cascade_core::phi::{phi_g, PhiReport};
use cascade_core::synth::{synthesize, trajectory, verify_isomorphism, Cascade, Isomorphism};
use cascade_core::zombie::{build_zombie, Selector, ZombieOptions, ZombieReport};
use cascade_core::{Automaton, Circuit, DependencyGraph, DyadicMatrix, GateKind};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NO_CASCADE: i32 = 2;

/// Alternative chains counted before giving up.
const CHAIN_COUNT_CAP: usize = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "cascade",
    version,
    about = "Isomorphic feed-forward decomposition of boolean circuits"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Write a Graphviz diagram of the main result to this file.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Largest number of components accepted.
    #[arg(long = "max-n", global = true, value_name = "K", default_value_t = DEFAULT_MAX_COMPONENTS)]
    max_n: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the circuit, its dependency graphs and its state transitions.
    Show { file: PathBuf },
    /// Print the transition probability matrix (one per input symbol).
    Tpm { file: PathBuf },
    /// Search for nested preserved partitions and synthesize cascades.
    Decompose {
        file: PathBuf,
        /// List every nested sequence instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Check a label map between two systems.
    Verify {
        original: PathBuf,
        cascade: PathBuf,
        map: PathBuf,
    },
    /// Evaluate every directed bipartition of a closed circuit.
    Phi { file: PathBuf },
    /// Print a trajectory.
    Simulate {
        file: PathBuf,
        /// Start state as a bit string (default all zeros).
        #[arg(long)]
        start: Option<String>,
        #[arg(long)]
        steps: usize,
        /// Input symbols, comma separated, one per step.
        #[arg(long, value_delimiter = ',')]
        inputs: Vec<String>,
    },
    /// Build, verify and measure an isomorphic feed-forward circuit.
    Zombie {
        file: PathBuf,
        /// Pick the first architecture identical to this circuit.
        #[arg(long, value_name = "CIRCUIT", conflicts_with = "gates")]
        like: Option<PathBuf>,
        /// Pick the first architecture with these gate kinds, e.g. NOT,COPY,COPY.
        #[arg(long, value_delimiter = ',')]
        gates: Vec<String>,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    text: String,
    dot: Option<String>,
    code: i32,
}

impl Report {
    fn ok(text: String, dot: Option<String>) -> Self {
        Report {
            text,
            dot,
            code: EXIT_OK,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli).and_then(|report| deliver(&cli, report)) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
        },
    }
}

fn deliver(cli: &Cli, report: Report) -> Result<Outcome> {
    if let Some(path) = &cli.dot {
        let dot = report
            .dot
            .as_ref()
            .ok_or_else(|| anyhow!("this command has no diagram to export"))?;
        fs::write(path, dot).with_context(|| format!("writing {}", path.display()))?;
    }
    let stdout = match &cli.out {
        Some(path) => {
            fs::write(path, &report.text).with_context(|| format!("writing {}", path.display()))?;
            String::new()
        }
        None => report.text,
    };
    Ok(Outcome {
        code: report.code,
        stdout,
        stderr: String::new(),
    })
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Show { file } => show(&load(file, cli.max_n)?),
        Command::Tpm { file } => tpm(&load(file, cli.max_n)?),
        Command::Decompose { file, all } => decompose(&load(file, cli.max_n)?, *all),
        Command::Verify {
            original,
            cascade,
            map,
        } => verify(&load(original, cli.max_n)?, &load(cascade, cli.max_n)?, map),
        Command::Phi { file } => phi(&load(file, cli.max_n)?),
        Command::Simulate {
            file,
            start,
            steps,
            inputs,
        } => simulate(&load(file, cli.max_n)?, start.as_deref(), *steps, inputs),
        Command::Zombie { file, like, gates } => {
            let selector = match (like, gates.is_empty()) {
                (Some(path), _) => {
                    let target = load(path, cli.max_n)?;
                    let circuit = target
                        .circuit()
                        .ok_or_else(|| anyhow!("--like needs a gate-level circuit"))?;
                    Selector::Like(circuit.clone())
                }
                (None, false) => Selector::GateKinds(
                    gates
                        .iter()
                        .map(|g| g.parse::<GateKind>())
                        .collect::<cascade_core::Result<_>>()
                        .context("--gates")?,
                ),
                (None, true) => Selector::Canonical,
            };
            zombie(&load(file, cli.max_n)?, selector)
        }
    }
}

/// A parsed input file with its state-transition diagram.
struct Loaded {
    doc: Document,
    std: Automaton,
}

impl Loaded {
    fn name(&self) -> &str {
        self.doc.name()
    }

    fn circuit(&self) -> Option<&Circuit> {
        self.doc.circuit()
    }
}

fn load(path: &Path, max_n: usize) -> Result<Loaded> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc = parse_document_with_limit(&text, max_n)
        .with_context(|| format!("parsing {}", path.display()))?;
    let std = doc.automaton(DEFAULT_MAX_STATE_BITS.max(max_n))?;
    Ok(Loaded { doc, std })
}

fn component_lines(c: &Circuit) -> Vec<String> {
    c.components()
        .iter()
        .map(|comp| format!("{} = {}({})", comp.id, comp.gate, comp.inputs.join(",")))
        .collect()
}

/// `state -> next` for closed systems, one column per symbol otherwise.
fn std_lines(a: &Automaton) -> Vec<String> {
    let w = a.width();
    if a.is_closed() {
        return (0..a.size() as u32)
            .map(|s| format!("{} -> {}", a.label(s), a.label(a.next(0, s))))
            .collect();
    }
    let col = w.max(a.inputs().len());
    let mut lines = vec![format!(
        "{:w$}    {}",
        "",
        a.symbols()
            .iter()
            .map(|s| format!("{s:col$}"))
            .collect::<Vec<_>>()
            .join(" ")
    )];
    for s in 0..a.size() as u32 {
        let row: Vec<String> = (0..a.symbol_count())
            .map(|sym| format!("{:col$}", a.label(a.next(sym, s))))
            .collect();
        lines.push(format!("{} -> {}", a.label(s), row.join(" ")));
    }
    lines
}

fn cascade_status(graph: &DependencyGraph) -> String {
    match graph.component_order() {
        Some(order) => {
            let names: Vec<&str> = order.iter().map(|&i| graph.nodes()[i].as_str()).collect();
            format!("cascade (order {})", names.join(" "))
        }
        None => "not a cascade (feedback between components)".to_string(),
    }
}

fn edge_list(graph: &DependencyGraph) -> String {
    let edges: Vec<String> = graph
        .named_edges()
        .iter()
        .map(|(a, b)| format!("{a}->{b}"))
        .collect();
    if edges.is_empty() {
        "(none)".to_string()
    } else {
        edges.join(" ")
    }
}

fn show(input: &Loaded) -> Result<Report> {
    let mut out = String::new();
    let a = &input.std;
    writeln!(out, "name: {}", input.name())?;
    let dot = match input.circuit() {
        Some(c) => {
            writeln!(out, "components: {}", c.len())?;
            writeln!(
                out,
                "external inputs: {}",
                list_or_none(c.external_inputs())
            )?;
            for line in component_lines(c) {
                writeln!(out, "  {line}")?;
            }
            let wiring = DependencyGraph::wiring(c);
            let influence = DependencyGraph::influence(c);
            writeln!(out, "wiring: {}", edge_list(&wiring))?;
            writeln!(out, "  {}", cascade_status(&wiring))?;
            writeln!(out, "influence: {}", edge_list(&influence))?;
            writeln!(out, "  {}", cascade_status(&influence))?;
            architecture_dot(c)
        }
        None => {
            writeln!(out, "transition table over {} bits", a.width())?;
            writeln!(out, "external inputs: {}", list_or_none(a.inputs()))?;
            std_dot(input.name(), a)
        }
    };
    writeln!(out, "transitions:")?;
    for line in std_lines(a) {
        writeln!(out, "  {line}")?;
    }
    let reach = a.reachability();
    writeln!(
        out,
        "states without predecessor: {}",
        labels(a, &reach.sources())
    )?;
    Ok(Report::ok(out, Some(dot)))
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".to_string()
    } else {
        items.join(" ")
    }
}

fn labels(a: &Automaton, states: &[u32]) -> String {
    if states.is_empty() {
        return "(none)".to_string();
    }
    states
        .iter()
        .map(|&s| a.label(s))
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_matrix(a: &Automaton, m: &DyadicMatrix) -> String {
    let mut out = String::new();
    for (s, row) in m.to_string().lines().enumerate() {
        let _ = writeln!(out, "{}: {row}", a.label(s as u32));
    }
    out
}

fn tpm(input: &Loaded) -> Result<Report> {
    let a = &input.std;
    let mut out = String::new();
    for (sym, symbol) in a.symbols().iter().enumerate() {
        if !a.is_closed() {
            writeln!(out, "symbol {symbol}:")?;
        }
        let m = if a.is_closed() {
            a.tpm()?
        } else {
            DyadicMatrix::deterministic(a.successors(sym))
        };
        out.push_str(&render_matrix(a, &m));
    }
    Ok(Report::ok(out, Some(std_dot(input.name(), a))))
}

fn cascade_name(name: &str) -> String {
    format!("{name}'")
}

fn map_lines(h: &Isomorphism) -> Vec<String> {
    let w = h.width();
    h.map()
        .iter()
        .enumerate()
        .map(|(s, &t)| format!("{} {}", format_label(s as u32, w), format_label(t, w)))
        .collect()
}

fn write_cascade(out: &mut String, a: &Automaton, cascade: &Cascade) -> Result<()> {
    let width = a.width();
    for (k, p) in cascade.sequence.levels().iter().enumerate() {
        writeln!(out, "  P{}: {}", k + 1, p.render(width))?;
    }
    writeln!(out, "  coordinate tables:")?;
    for (t, comp) in cascade.tables.iter().zip(cascade.circuit.components()) {
        writeln!(out, "    {}: {}", comp.id, t.render())?;
    }
    writeln!(out, "  gates:")?;
    for line in component_lines(&cascade.circuit) {
        writeln!(out, "    {line}")?;
    }
    writeln!(out, "  isomorphism (original cascade):")?;
    for line in map_lines(&cascade.isomorphism) {
        writeln!(out, "    {line}")?;
    }
    Ok(())
}

fn failure_witness(deepest: usize) -> String {
    if deepest == 0 {
        "no balanced preserved bipartition (search exhausted at level 1)".to_string()
    } else {
        format!("preserved partitions reach level {deepest} but none refines further (search exhausted at level {})", deepest + 1)
    }
}

fn phi_summary(report: &Option<PhiReport>, circuit: Option<&Circuit>) -> String {
    match (report, circuit) {
        (Some(r), Some(c)) => {
            let cut = r
                .minimizing_cut()
                .map(|v| v.cut.render(c))
                .unwrap_or_else(|| "no cuts".into());
            format!("{} (minimized by {cut})", fmt_phi(r.phi_g))
        }
        (None, Some(_)) => "n/a (circuit has external inputs)".to_string(),
        _ => "n/a (no gate-level circuit)".to_string(),
    }
}

fn fmt_phi(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.6}")
    }
}

fn closed_phi(c: Option<&Circuit>) -> Result<Option<PhiReport>> {
    match c {
        Some(c) if c.is_closed() => Ok(Some(phi_g(c)?)),
        _ => Ok(None),
    }
}

fn no_cascade(input: &Loaded, deepest: usize) -> Result<Report> {
    let mut out = String::new();
    writeln!(out, "{}: no isomorphic cascade decomposition", input.name())?;
    writeln!(out, "witness: {}", failure_witness(deepest))?;
    writeln!(
        out,
        "Phi_G(original): {}",
        phi_summary(&closed_phi(input.circuit())?, input.circuit())
    )?;
    let dot = input
        .circuit()
        .map(architecture_dot)
        .unwrap_or_else(|| std_dot(input.name(), &input.std));
    Ok(Report {
        text: out,
        dot: Some(dot),
        code: EXIT_NO_CASCADE,
    })
}

fn decompose(input: &Loaded, all: bool) -> Result<Report> {
    let a = &input.std;
    let mut out = String::new();
    if let Some(c) = input.circuit() {
        if let Some(order) = DependencyGraph::wiring(c).component_order() {
            let names: Vec<&str> = order
                .iter()
                .map(|&i| c.components()[i].id.as_str())
                .collect();
            writeln!(
                out,
                "{} is already in cascade form (component order {})",
                input.name(),
                names.join(" ")
            )?;
            writeln!(out, "labeling from component order:")?;
            let n = c.len();
            for s in 0..a.size() as u32 {
                let label = order
                    .iter()
                    .fold(0u32, |acc, &i| (acc << 1) | ((s >> (n - 1 - i)) & 1));
                writeln!(out, "  {} {}", a.label(s), format_label(label, n))?;
            }
        }
    }
    let found = search_chains(a, Some(CHAIN_COUNT_CAP))?;
    if found.chains.is_empty() {
        let mut report = no_cascade(input, found.deepest_level)?;
        report.text.insert_str(0, &out);
        return Ok(report);
    }
    let per_chain = found.chains[0].labeling_count();
    writeln!(
        out,
        "chains: {}{} ({per_chain} labelings each)",
        found.chains.len(),
        if found.truncated { "+" } else { "" }
    )?;
    let name = cascade_name(input.name());
    let mut first = None;
    let sequences: Box<dyn Iterator<Item = _>> = if all {
        Box::new(found.chains.iter().flat_map(|chain| chain.labelings()))
    } else {
        Box::new(std::iter::once(found.chains[0].canonical_sequence()))
    };
    for (i, seq) in sequences.enumerate() {
        let cascade = synthesize(a, &seq, &name)?;
        writeln!(out, "sequence {}:", i + 1)?;
        write_cascade(&mut out, a, &cascade)?;
        first.get_or_insert(cascade);
    }
    let dot = first.map(|c| architecture_dot(&c.circuit));
    Ok(Report::ok(out, dot))
}

fn verify(original: &Loaded, cascade: &Loaded, map: &Path) -> Result<Report> {
    let text = fs::read_to_string(map).with_context(|| format!("reading {}", map.display()))?;
    let h = parse_map(&text).with_context(|| format!("parsing {}", map.display()))?;
    let (a, b) = (&original.std, &cascade.std);
    let mut out = String::new();
    match verify_isomorphism(a, b, &h)? {
        None => {
            writeln!(
                out,
                "verified: {} -> {} commutes for all {} states and {} symbols",
                original.name(),
                cascade.name(),
                a.size(),
                a.symbol_count()
            )?;
            if let Some(c) = cascade.circuit() {
                writeln!(
                    out,
                    "{}: {}",
                    cascade.name(),
                    cascade_status(&DependencyGraph::wiring(c))
                )?;
            }
            Ok(Report::ok(out, None))
        }
        Some(cx) => {
            let q = cx.state;
            writeln!(
                out,
                "not an isomorphism: symbol {}, state {}: h(next) = {} but next(h) = {}",
                a.symbols()[cx.symbol],
                a.label(q),
                a.label(h.apply(a.next(cx.symbol, q))),
                a.label(b.next(cx.symbol, h.apply(q)))
            )?;
            Ok(Report {
                text: out,
                dot: None,
                code: EXIT_INPUT,
            })
        }
    }
}

fn phi(input: &Loaded) -> Result<Report> {
    let c = input
        .circuit()
        .ok_or_else(|| anyhow!("Phi_G needs a gate-level circuit"))?;
    if !c.is_closed() {
        bail!(
            "Phi_G is defined for closed circuits only; {} has external inputs",
            c.name()
        );
    }
    let report = phi_g(c)?;
    let rows: Vec<(String, &cascade_core::phi::CutValue)> =
        report.values.iter().map(|v| (v.cut.render(c), v)).collect();
    let col = rows.iter().map(|(r, _)| r.len()).max().unwrap_or(0).max(3);
    let mut out = String::new();
    writeln!(out, "{:col$}  phi", "cut")?;
    for (r, v) in &rows {
        writeln!(out, "{r:col$}  {}", fmt_phi(v.phi))?;
    }
    writeln!(
        out,
        "Phi_G = {}",
        phi_summary(&Some(report.clone()), Some(c))
    )?;
    match &report.certificate {
        Some(cut) => writeln!(
            out,
            "certificate: {} leaves the dynamics unchanged",
            cut.render(c)
        )?,
        None => writeln!(out, "certificate: none")?,
    }
    Ok(Report::ok(out, Some(architecture_dot(c))))
}

fn parse_state(a: &Automaton, bits: &str) -> Result<u32> {
    if bits.len() != a.width() || !bits.chars().all(|ch| ch == '0' || ch == '1') {
        bail!("start state `{bits}` is not a {}-bit string", a.width());
    }
    Ok(u32::from_str_radix(bits, 2)?)
}

fn simulate(
    input: &Loaded,
    start: Option<&str>,
    steps: usize,
    inputs: &[String],
) -> Result<Report> {
    let a = &input.std;
    let start = match start {
        Some(bits) => parse_state(a, bits)?,
        None => 0,
    };
    let symbols: Vec<usize> = if a.is_closed() {
        if !inputs.is_empty() {
            bail!("{} has no external inputs", input.name());
        }
        Vec::new()
    } else {
        if inputs.len() < steps {
            bail!(
                "{steps} steps need {steps} input symbols, got {}",
                inputs.len()
            );
        }
        inputs
            .iter()
            .map(|s| a.symbol_index(s))
            .collect::<cascade_core::Result<_>>()?
    };
    let states = trajectory(a, start, steps, &symbols)?;
    let line: Vec<String> = states.iter().map(|&s| a.label(s)).collect();
    Ok(Report::ok(
        format!("{}\n", line.join(" ")),
        Some(std_dot(input.name(), a)),
    ))
}

#[derive(Serialize)]
struct Summary {
    name: String,
    decomposable: bool,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi_original: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi_cascade: Option<f64>,
    chains: usize,
    chains_truncated: bool,
    traces_agree: usize,
    traces_total: usize,
}

#[derive(Serialize)]
struct Machine {
    summary: Summary,
    isomorphism: std::collections::BTreeMap<String, String>,
    cascade: RawDocument,
}

fn side_by_side(left: &[String], right: &[String]) -> String {
    let col = left
        .iter()
        .map(|l| l.chars().count())
        .max()
        .unwrap_or(0)
        .max(8);
    let rows = left.len().max(right.len());
    let blank = String::new();
    (0..rows)
        .map(|i| {
            let l = left.get(i).unwrap_or(&blank);
            let r = right.get(i).unwrap_or(&blank);
            format!("  {l:col$}  |  {r}").trim_end().to_string() + "\n"
        })
        .collect()
}

fn zombie(input: &Loaded, selector: Selector) -> Result<Report> {
    let options = ZombieOptions {
        selector,
        count_cap: CHAIN_COUNT_CAP,
        ..Default::default()
    };
    let report = build_zombie(input.name(), input.circuit(), &input.std, &options)?;
    if !report.is_decomposable() {
        return no_cascade(input, report.deepest_level);
    }
    let Some(cascade) = &report.cascade else {
        bail!(
            "no decomposition of {} matches the requested architecture",
            input.name()
        );
    };
    Ok(Report::ok(
        render_zombie(input, &report, cascade)?,
        Some(architecture_dot(&cascade.circuit)),
    ))
}

fn render_zombie(input: &Loaded, report: &ZombieReport, cascade: &Cascade) -> Result<String> {
    let a = &input.std;
    let mut out = String::new();
    let left_name = input.name().to_string();
    let right_name = cascade.circuit.name().to_string();

    let mut left = vec![left_name.clone(), String::new()];
    let mut right = vec![right_name.clone(), String::new()];
    match input.circuit() {
        Some(c) => left.extend(component_lines(c)),
        None => left.push("(transition table)".into()),
    }
    right.extend(component_lines(&cascade.circuit));
    let pad = left.len().max(right.len());
    left.resize(pad, String::new());
    right.resize(pad, String::new());
    let graph_of = |c: &Circuit| cascade_status(&DependencyGraph::wiring(c));
    left.push(input.circuit().map(graph_of).unwrap_or_else(|| "-".into()));
    right.push(graph_of(&cascade.circuit));
    left.push(String::new());
    right.push(String::new());
    left.extend(std_lines(a));
    right.extend(std_lines(&cascade.automaton));
    left.push(String::new());
    right.push(String::new());
    left.push(format!(
        "Phi_G = {}",
        phi_summary(&report.phi_original, input.circuit())
    ));
    right.push(format!(
        "Phi_G = {}",
        phi_summary(&report.phi_cascade, Some(&cascade.circuit))
    ));
    out.push_str(&side_by_side(&left, &right));
    writeln!(out)?;

    if let Some(cert) = report
        .phi_cascade
        .as_ref()
        .and_then(|r| r.certificate.as_ref())
    {
        writeln!(
            out,
            "certificate: {} leaves {} unchanged",
            cert.render(&cascade.circuit),
            right_name
        )?;
    }
    writeln!(out, "coordinate tables:")?;
    for (t, comp) in cascade.tables.iter().zip(cascade.circuit.components()) {
        writeln!(out, "  {}: {}", comp.id, t.render())?;
    }
    writeln!(out, "isomorphism ({left_name} {right_name}):")?;
    for line in map_lines(&cascade.isomorphism) {
        writeln!(out, "  {line}")?;
    }
    match report.counterexample {
        None => writeln!(
            out,
            "verification: commutes for all {} states and {} symbols",
            a.size(),
            a.symbol_count()
        )?,
        Some(cx) => writeln!(
            out,
            "verification: FAILED at symbol {}, state {}",
            a.symbols()[cx.symbol],
            a.label(cx.state)
        )?,
    }
    let agree = report.traces.iter().filter(|(_, ok)| *ok).count();
    writeln!(
        out,
        "traces: {agree}/{} start states agree over 16 steps",
        report.traces.len()
    )?;
    writeln!(
        out,
        "alternatives: {}{} chains, {} labelings each",
        report.chains_found,
        if report.chains_truncated { "+" } else { "" },
        cascade.sequence.chain().labeling_count()
    )?;

    let machine = Machine {
        summary: Summary {
            name: input.name().to_string(),
            decomposable: true,
            verified: report.verified(),
            phi_original: report.phi_original.as_ref().map(|r| r.phi_g),
            phi_cascade: report.phi_cascade.as_ref().map(|r| r.phi_g),
            chains: report.chains_found,
            chains_truncated: report.chains_truncated,
            traces_agree: agree,
            traces_total: report.traces.len(),
        },
        isomorphism: (0..a.size() as u32)
            .map(|s| (a.label(s), a.label(cascade.isomorphism.apply(s))))
            .collect(),
        cascade: RawDocument::from(&cascade.circuit),
    };
    writeln!(out)?;
    writeln!(out, "# machine-readable")?;
    out.push_str(&toml::to_string(&machine)?);
    Ok(out)
}
