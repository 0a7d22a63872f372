//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails the target when any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, UnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use cascade_core::graph::DependencyGraph;
use cascade_core::partition::{search_nested_sequence, SearchMode};
use cascade_core::phi::{enumerate_directed_bipartitions, phi_g};
use cascade_core::synth::{synthesize, verify_isomorphism, Cascade, Isomorphism};
use cascade_core::{fixtures, Automaton, Circuit};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sample(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("circuits")
        .join(name)
}

fn bits(t: &[bool]) -> String {
    t.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// First synthesized cascade whose circuit equals `target` component for component.
fn find_architecture(a: &Automaton, target: &Circuit) -> Option<Cascade> {
    search_nested_sequence(a, SearchMode::All)
        .unwrap()
        .sequences
        .iter()
        .map(|s| synthesize(a, s, target.name()).unwrap())
        .find(|c| c.circuit.components() == target.components())
}

fn verified(a: &Automaton, c: &Cascade) -> bool {
    verify_isomorphism(a, &c.automaton, &c.isomorphism)
        .unwrap()
        .is_none()
}

fn criterion_1() -> Check {
    let t = Instant::now();
    let a = Automaton::from_circuit(&fixtures::and_or()).unwrap();
    let c = find_architecture(&a, &fixtures::copy_or()).ok_or("COPY/OR not among the solutions")?;
    ensure(verified(&a, &c), "isomorphism does not commute")?;
    ensure(c.gate_names() == ["COPY", "OR"], "gate names")?;
    let elapsed = t.elapsed();
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "COPY(Q1'), OR(Q1',Q2') found and verified on 4 states in {elapsed:?}"
    ))
}

fn criterion_2() -> Check {
    let t = Instant::now();
    let a = Automaton::from_circuit(&fixtures::xnor_xnor_xor()).unwrap();
    let c = find_architecture(&a, &fixtures::not_copy_copy())
        .ok_or("NOT/COPY/COPY not among the solutions")?;
    ensure(
        bits(&c.tables[0].table) == "10",
        "first coordinate is not NOT",
    )?;
    ensure(
        bits(&c.tables[1].table) == "0101",
        format!("second table {}", bits(&c.tables[1].table)),
    )?;
    ensure(
        bits(&c.tables[2].table) == "00110011",
        format!("third table {}", bits(&c.tables[2].table)),
    )?;
    ensure(verified(&a, &c), "isomorphism does not commute")?;
    let elapsed = t.elapsed();
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "NOT, COPY(self), COPY(Q2') with exact tables, verified on 8 states in {elapsed:?}"
    ))
}

fn criterion_3() -> Check {
    let cases = [
        (fixtures::xnor_xnor_xor(), true),
        (fixtures::not_copy_copy(), false),
        (fixtures::and_or(), true),
        (fixtures::copy_or(), false),
    ];
    let mut values = Vec::new();
    for (c, positive) in cases {
        let report = phi_g(&c).unwrap();
        for (v, cut) in report
            .values
            .iter()
            .zip(enumerate_directed_bipartitions(c.len()))
        {
            let exact = phi_by_enumeration(&c, &cut.noised);
            ensure(
                (v.phi - exact).abs() <= 1e-12,
                format!("{}: {} vs {exact}", c.name(), v.phi),
            )?;
        }
        if positive {
            ensure(
                report.phi_g > 0.0 && report.certificate.is_none(),
                format!("{} not positive", c.name()),
            )?;
        } else {
            ensure(report.phi_g == 0.0, format!("{} not zero", c.name()))?;
            let cert = report
                .certificate
                .as_ref()
                .ok_or(format!("{} has no certificate", c.name()))?;
            ensure(
                phi_by_enumeration(&c, &cert.noised) == 0.0,
                "certificate cut is not free",
            )?;
        }
        values.push(format!("{}={}", c.name(), report.phi_g));
    }
    Ok(format!("{} (cascades certified)", values.join(" ")))
}

fn criterion_4() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut decomposable, mut tried, mut cascades) = (0, 0, 0);
    while decomposable < 100 {
        tried += 1;
        ensure(tried < 100_000, "too few decomposable circuits")?;
        let n = rng.gen_range(2..=4);
        let circuit = random_circuit(&mut rng, n, 3);
        let a = Automaton::from_circuit(&circuit).unwrap();
        let outcome = search_nested_sequence(&a, SearchMode::First).unwrap();
        let Some(seq) = outcome.sequences.first() else {
            continue;
        };
        decomposable += 1;
        // the canonical labeling plus a few alternatives of the same chain
        let chain = seq.chain();
        for seq in chain.labelings().step_by(37).take(4) {
            let c = synthesize(&a, &seq, "c").unwrap();
            ensure(
                DependencyGraph::wiring(&c.circuit)
                    .is_cascade()
                    .is_cascade(),
                "wiring has feedback",
            )?;
            ensure(
                DependencyGraph::influence(&c.circuit)
                    .is_cascade()
                    .is_cascade(),
                "influence has feedback",
            )?;
            ensure(
                phi_g(&c.circuit).unwrap().phi_g == 0.0,
                format!("Phi_G > 0 for {}", circuit),
            )?;
            ensure(verified(&a, &c), format!("no isomorphism for {}", circuit))?;
            cascades += 1;
        }
    }
    let elapsed = t.elapsed();
    ensure(
        elapsed < Duration::from_secs(120),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "{decomposable} decomposable of {tried} random circuits, {cascades} cascades all feed-forward, Phi_G = 0, verified ({elapsed:?})"
    ))
}

fn chain_discrepancy(a: &Automaton) -> bool {
    let found: BTreeSet<RawChain> = search_nested_sequence(a, SearchMode::All)
        .unwrap()
        .sequences
        .iter()
        .map(|s| raw_chain(&s.chain()))
        .collect();
    found != oracle_chains(a)
}

fn criterion_5() -> Check {
    let mut discrepancies = 0;
    let mut positive = 0;
    for code in 0..256u32 {
        let a = Automaton::closed(2, (0..4).map(|s| (code >> (2 * s)) & 3).collect()).unwrap();
        discrepancies += chain_discrepancy(&a) as usize;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..200 {
        let a = if i % 2 == 0 {
            random_map(&mut rng, 3)
        } else {
            random_decomposable_map(&mut rng, 3)
        };
        positive += !oracle_chains(&a).is_empty() as usize;
        discrepancies += chain_discrepancy(&a) as usize;
    }
    ensure(discrepancies == 0, format!("{discrepancies} discrepancies"))?;
    Ok(format!(
        "256 four-state maps and 200 eight-state maps ({positive} decomposable), 0 discrepancies"
    ))
}

fn criterion_6() -> Check {
    let a = fixtures::seven_cycle_plus_fixed_point();
    let level_one: Vec<RawChain> = all_balanced_chains(3);
    let preserved = level_one
        .iter()
        .filter(|c| raw_preserved(&c[0], a.delta()))
        .count();
    ensure(
        preserved == 0,
        format!("oracle found {preserved} preserved bipartitions"),
    )?;
    let out = Command::new(env!("CARGO_BIN_EXE_cascade"))
        .arg("zombie")
        .arg(sample("seven-cycle.toml"))
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(
        out.status.code() == Some(2),
        format!("exit {:?}", out.status.code()),
    )?;
    ensure(
        stdout.contains("no balanced preserved bipartition (search exhausted at level 1)"),
        "witness missing",
    )?;
    Ok("exit 2, level-1 exhaustion, oracle agrees (0 of 35 bipartitions preserved)".into())
}

fn criterion_7() -> Check {
    let circuit = cascade_core::make_right_shift();
    let a = Automaton::from_circuit(&circuit).unwrap();
    for s in 0..2u32 {
        for q in 0..4u32 {
            let q1 = q >> 1;
            ensure(
                a.next(s as usize, q) == (s << 1) | q1,
                format!("delta({s}, {q:02b})"),
            )?;
        }
    }
    let out = cascade_cli::run([
        "cascade",
        "decompose",
        sample("right-shift.toml").to_str().unwrap(),
    ]);
    ensure(out.code == 0, format!("exit {}", out.code))?;
    ensure(
        out.stdout.contains("already in cascade form"),
        "no cascade-form notice",
    )?;
    Ok("delta(s, q1q2) = (s, q1) for all 8 pairs; reported already in cascade form".into())
}

fn traces_agree(a: &Automaton, b: &Automaton, h: &Isomorphism, inputs: &[usize]) -> bool {
    (0..a.size() as u32).all(|start| {
        let (mut x, mut y) = (start, h.apply(start));
        (0..16).all(|t| {
            let sym = if a.is_closed() { 0 } else { inputs[t] };
            x = a.next(sym, x);
            y = b.next(sym, y);
            h.apply(x) == y
        })
    })
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut systems: Vec<Automaton> = [
        fixtures::and_or(),
        fixtures::xnor_xnor_xor(),
        fixtures::right_shift(),
        fixtures::identity(4),
    ]
    .iter()
    .map(|c| Automaton::from_circuit(c).unwrap())
    .collect();
    systems.push(fixtures::counter(4));
    for _ in 0..20 {
        let width = rng.gen_range(1..=4);
        systems.push(random_decomposable_map(&mut rng, width));
    }
    let mut triples = 0;
    for a in &systems {
        for seq in search_nested_sequence(a, SearchMode::First)
            .unwrap()
            .sequences
        {
            let c = synthesize(a, &seq, "c").unwrap();
            if !verified(a, &c) {
                continue;
            }
            let inputs: Vec<usize> = (0..16)
                .map(|_| rng.gen_range(0..a.symbol_count()))
                .collect();
            ensure(
                traces_agree(a, &c.automaton, &c.isomorphism, &inputs),
                "trajectory mismatch",
            )?;
            triples += 1;
        }
    }
    ensure(triples == systems.len(), "some system did not verify")?;
    Ok(format!(
        "{triples} verified systems, 16-step trajectories agree from every start state"
    ))
}

fn criterion_9() -> Check {
    let y = fixtures::xnor_xnor_xor();
    let yp = fixtures::not_copy_copy();
    let a = Automaton::from_circuit(&y).unwrap();
    let c = find_architecture(&a, &yp).ok_or("no isomorphism to Y'")?;
    ensure(verified(&a, &c), "Y and Y' not isomorphic")?;
    let (py, pyp) = (phi_g(&y).unwrap().phi_g, phi_g(&yp).unwrap().phi_g);
    ensure(
        py > 0.0 && pyp == 0.0,
        format!("Phi_G(Y)={py}, Phi_G(Y')={pyp}"),
    )?;
    Ok(format!(
        "Y and Y' isomorphic, Phi_G(Y)={py} but Phi_G(Y')={pyp}: not invariant"
    ))
}

fn guarded(f: impl FnOnce() -> Check + UnwindSafe) -> Check {
    catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("and/or worked example", criterion_1),
        ("xnor worked example", criterion_2),
        ("integration signs", criterion_3),
        ("cascade zero law", criterion_4),
        ("partition oracle equivalence", criterion_5),
        ("negative instance", criterion_6),
        ("right-shift", criterion_7),
        ("trace equivalence", criterion_8),
        ("non-invariance", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        match guarded(check) {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
