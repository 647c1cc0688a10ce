//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test -p geosat --test acceptance`.

mod common;

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use geosat::certificate::{self, Certificate, RefutationBody, WitnessBody};
use geosat::gallery::{
    gen_dedekind, gen_mono, gen_nti, gen_random, gen_splitting_epi, partial_sections_nodes,
    FiniteMap, FiniteRing,
};
use geosat::inductive::{random_construction, random_stratified, Subset};
use geosat::logic::{find_models, is_model, Sequent, Theory};
use geosat::proof::{check_refutation, extract_refutation, refuted_nodes};
use geosat::site::{covering_closure, degeneracy, is_dense, subsite_degeneracy, DegeneracyTrace, NodeSet};

/// Evidence gathered while criteria 1–4 run, judged by criteria 5 and 7.
#[derive(Default)]
struct Ledger {
    refutations_checked: usize,
    witnesses_checked: usize,
    certificate_failures: Vec<String>,
    zset_runs: usize,
    zset_not_upward: Vec<String>,
}

thread_local! {
    static LEDGER: RefCell<Ledger> = RefCell::new(Ledger::default());
}

/// Certificate round trip and zset shape for one degeneracy run.
fn audit(t: &Theory, tr: &DegeneracyTrace, label: &str) {
    LEDGER.with(|l| {
        let mut l = l.borrow_mut();
        l.zset_runs += 1;
        if !tr.zset.is_upward_closed() {
            l.zset_not_upward.push(label.to_string());
        }
        if tr.verdict.is_degenerate() {
            let ok = extract_refutation(t, tr)
                .map_err(|e| e.to_string())
                .and_then(|d| {
                    check_refutation(t, &d).map_err(|f| f.to_string())?;
                    if refuted_nodes(&d) > tr.zset.len() {
                        return Err("refutation larger than the closure".into());
                    }
                    Ok(())
                });
            l.refutations_checked += 1;
            if let Err(e) = ok {
                l.certificate_failures.push(format!("{label}: {e}"));
            }
        } else {
            let ok = certificate::certificate_from_trace(t, tr)
                .and_then(|c| certificate::verify(t, &c))
                .map_err(|e| e.to_string())
                .and_then(|r| r.map_err(|r| r.to_string()));
            l.witnesses_checked += 1;
            if let Err(e) = ok {
                l.certificate_failures.push(format!("{label}: {e}"));
            }
        }
    });
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    if elapsed > Duration::from_secs(limit_secs) {
        Err(format!("took {elapsed:.1?}, limit {limit_secs}s"))
    } else {
        Ok(())
    }
}

fn criterion_1() -> Result<String, String> {
    let start = Instant::now();
    let mut exhaustive = 0usize;
    let mut degenerate = 0usize;
    let mut mismatches = Vec::new();
    for n in 0..=3 {
        let u = common::universe(n);
        let pool = common::all_sequents(&u, 2);
        common::for_each_theory(&u, &pool, 3, |t| {
            let tr = degeneracy(&t).unwrap();
            let no_model = common::models(&t).is_empty();
            if tr.verdict.is_degenerate() != no_model {
                mismatches.push(format!("{t:?}"));
            }
            audit(&t, &tr, "exhaustive");
            exhaustive += 1;
            degenerate += no_model as usize;
        });
    }
    let mut random_degenerate = 0usize;
    for seed in 0..10_000u64 {
        let n = (seed % 6) as usize;
        let axioms = ((seed / 6) % 8) as usize;
        let t = gen_random(n, axioms, (seed % 4) as usize, seed).unwrap();
        let tr = degeneracy(&t).unwrap();
        let no_model = common::models(&t).is_empty();
        if tr.verdict.is_degenerate() != no_model {
            mismatches.push(format!("random seed {seed}"));
        }
        audit(&t, &tr, &format!("random seed {seed}"));
        random_degenerate += no_model as usize;
    }
    if !mismatches.is_empty() {
        return Err(format!("{} disagreements, first: {}", mismatches.len(), mismatches[0]));
    }
    within(start.elapsed(), 60)?;
    Ok(format!(
        "{exhaustive} exhaustive theories (|A|<=3, <=3 axioms, <=2 disjuncts; {degenerate} degenerate) \
         and 10000 random theories (|A|<=5; {random_degenerate} degenerate) agree with model search in {:.1?}",
        start.elapsed()
    ))
}

fn criterion_2() -> Result<String, String> {
    let start = Instant::now();
    let mut degenerate = Vec::new();
    for n in 2..=12 {
        let t = gen_nti(&FiniteRing::zmod(n).unwrap()).unwrap();
        let tr = degeneracy(&t).unwrap();
        audit(&t, &tr, &format!("nti Z/{n}"));
        if tr.verdict.is_degenerate() {
            degenerate.push(n);
        }
    }
    if degenerate != [2, 3, 5, 7, 11] {
        return Err(format!("degenerate for {degenerate:?}"));
    }
    let z2 = FiniteRing::zmod(2).unwrap();
    let t = gen_nti(&FiniteRing::product(&z2, &z2).unwrap()).unwrap();
    let tr = degeneracy(&t).unwrap();
    audit(&t, &tr, "nti Z/2xZ/2");
    if tr.verdict.is_degenerate() {
        return Err("Z/2 x Z/2 reported degenerate".into());
    }
    let model = t.universe().set_of(["0:0", "1:0"]).unwrap();
    if !is_model(&model, &t).unwrap() {
        return Err("{0:0 1:0} is not a model".into());
    }
    within(start.elapsed(), 10)?;
    Ok(format!(
        "degenerate exactly for n in {degenerate:?}; Z/2xZ/2 nondegenerate with model {model} ({:.1?})",
        start.elapsed()
    ))
}

fn random_surjection(rng: &mut ChaCha8Rng) -> FiniteMap {
    let nb = rng.gen_range(1..=3);
    let na = rng.gen_range(nb..=5);
    let mut values: Vec<usize> = (0..nb).collect();
    values.extend((nb..na).map(|_| rng.gen_range(0..nb)));
    values.shuffle(rng);
    let domain = (0..na).map(|i| i.to_string()).collect();
    let codomain = ["x", "y", "z"][..nb].iter().map(|s| s.to_string()).collect();
    FiniteMap::new(domain, codomain, values).unwrap()
}

/// Graphs of sections of `f` as masks over the `b:a` universe.
fn sections(f: &FiniteMap) -> BTreeSet<u64> {
    let na = f.domain().len();
    let mut out = vec![0u64];
    for b in 0..f.codomain().len() {
        out = out
            .iter()
            .flat_map(|&m| {
                (0..na)
                    .filter(move |&a| f.apply(a) == b)
                    .map(move |a| m | 1 << (b * na + a))
            })
            .collect();
    }
    out.into_iter().collect()
}

fn criterion_3() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut total_models = 0;
    for i in 0..50 {
        let f = random_surjection(&mut rng);
        let label = format!("surjection {}", f.to_spec());
        let t = gen_splitting_epi(&f).unwrap();
        let tr = degeneracy(&t).unwrap();
        audit(&t, &tr, &label);
        if tr.verdict.is_degenerate() {
            return Err(format!("{label} degenerate"));
        }
        let models: BTreeSet<u64> = find_models(&t, None).iter().map(|m| m.bits()).collect();
        if models != sections(&f) {
            return Err(format!("{label}: models differ from sections"));
        }
        total_models += models.len();
        let d = partial_sections_nodes(&f).unwrap();
        if !is_dense(&t, &d).unwrap() {
            return Err(format!("{label}: partial sections not dense"));
        }
        if subsite_degeneracy(&t, &d).unwrap() != tr.verdict.is_degenerate() {
            return Err(format!("{label}: subsite verdict differs (instance {i})"));
        }
    }
    within(start.elapsed(), 60)?;
    Ok(format!(
        "50 random surjections nondegenerate; {total_models} models = sections; partial sections dense, subsite agrees ({:.1?})",
        start.elapsed()
    ))
}

fn criterion_4() -> Result<String, String> {
    let mut notes = Vec::new();
    for n in 1..=3 {
        let start = Instant::now();
        let t = gen_dedekind(n).unwrap();
        let tr = degeneracy(&t).unwrap();
        if !tr.verdict.is_degenerate() {
            return Err(format!("dedekind({n}) nondegenerate"));
        }
        let d = extract_refutation(&t, &tr).map_err(|e| e.to_string())?;
        check_refutation(&t, &d).map_err(|f| format!("dedekind({n}): {f}"))?;
        audit(&t, &tr, &format!("dedekind({n})"));
        if n == 3 {
            within(start.elapsed(), 300)?;
            notes.push(format!("dedekind(3) [{} symbols] in {:.1?}", t.universe().size(), start.elapsed()));
        }
    }
    // stress: 20 symbols, 2^20 nodes
    let start = Instant::now();
    let t = gen_dedekind(4).unwrap();
    let tr = degeneracy(&t).unwrap();
    if !tr.verdict.is_degenerate() {
        return Err("dedekind(4) nondegenerate".into());
    }
    let d = extract_refutation(&t, &tr).map_err(|e| e.to_string())?;
    check_refutation(&t, &d).map_err(|f| format!("dedekind(4): {f}"))?;
    within(start.elapsed(), 300)?;
    notes.push(format!("dedekind(4) [20 symbols] in {:.1?}", start.elapsed()));

    let mut mono = 0;
    for k in 0..=3 {
        for n in 1..=4 {
            let t = gen_mono(k, n).unwrap();
            let tr = degeneracy(&t).unwrap();
            let expected = k + 1 > n;
            if tr.verdict.is_degenerate() != expected {
                return Err(format!("mono({k},{n}) verdict {}", tr.verdict));
            }
            if common::models(&t).is_empty() != expected {
                return Err(format!("mono({k},{n}) model search disagrees"));
            }
            audit(&t, &tr, &format!("mono({k},{n})"));
            mono += 1;
        }
    }
    notes.push(format!("{mono} mono instances match k+1>n"));
    Ok(format!("dedekind(1..3) refuted and checked; {}", notes.join("; ")))
}

/// One random field mutation that is guaranteed to invalidate the
/// certificate, or `None` when the drawn mutation does not apply.
fn mutate(t: &Theory, cert: &Certificate, rng: &mut ChaCha8Rng) -> Option<Certificate> {
    let mut c = cert.clone();
    let names = t.universe().names().to_vec();
    let toggle = |set: &mut Vec<String>, rng: &mut ChaCha8Rng| {
        let s = names.choose(rng).unwrap().clone();
        match set.iter().position(|x| *x == s) {
            Some(i) => {
                set.remove(i);
            }
            None => set.push(s),
        }
    };
    match rng.gen_range(0..2) {
        0 if rng.gen_bool(0.5) => {
            let mut h: Vec<char> = c.theory_hash.chars().collect();
            let i = rng.gen_range(0..h.len());
            h[i] = if h[i] == '0' { '1' } else { '0' };
            c.theory_hash = h.into_iter().collect();
            return Some(c);
        }
        0 => {
            c.engine = "geosat/0".into();
            return Some(c);
        }
        _ => {}
    }
    if cert.kind.is_degenerate() {
        let mut body: RefutationBody = serde_json::from_value(c.body.clone()).unwrap();
        let i = rng.gen_range(0..body.nodes.len());
        let node = &mut body.nodes[i];
        match rng.gen_range(0..6) {
            0 => {
                if node.rule == "axiom" {
                    toggle(&mut node.conclusion.premise, rng);
                    let u = t.universe();
                    let p = u.set_of(node.conclusion.premise.iter().map(String::as_str)).ok()?;
                    let ds = node
                        .conclusion
                        .disjuncts
                        .iter()
                        .map(|q| u.set_of(q.iter().map(String::as_str)).unwrap());
                    if t.position_of(&Sequent::new(p, ds).unwrap()).is_some() {
                        return None;
                    }
                } else {
                    toggle(&mut node.conclusion.premise, rng);
                }
            }
            1 => {
                if node.rule == "axiom" || node.conclusion.disjuncts.is_empty() {
                    return None;
                }
                let j = rng.gen_range(0..node.conclusion.disjuncts.len());
                toggle(&mut node.conclusion.disjuncts[j], rng);
            }
            2 => {
                let p2 = node.p2.as_mut()?;
                toggle(p2, rng);
            }
            3 => {
                let rules = ["axiom", "identity", "rule2", "rule3", "rule3b"];
                let other: Vec<_> = rules.iter().filter(|r| **r != node.rule).collect();
                node.rule = other.choose(rng).unwrap().to_string();
            }
            4 => {
                if node.premises.is_empty() {
                    return None;
                }
                let j = rng.gen_range(0..node.premises.len());
                node.premises.remove(j);
            }
            _ => {
                if body.nodes.len() < 2 {
                    return None;
                }
                body.root = rng.gen_range(0..body.nodes.len() - 1);
            }
        }
        c.body = serde_json::to_value(body).unwrap();
    } else {
        let mut body: WitnessBody = serde_json::from_value(c.body.clone()).unwrap();
        match rng.gen_range(0..4) {
            0 => {
                let delta = rng.gen_range(1..=3);
                body.node_count = if rng.gen_bool(0.5) || body.node_count < delta {
                    body.node_count + delta
                } else {
                    body.node_count - delta
                };
            }
            1 => body.empty_excluded = false,
            2 => {
                if body.minimal.is_empty() {
                    return None;
                }
                let j = rng.gen_range(0..body.minimal.len());
                body.minimal.remove(j);
            }
            _ => {
                let u = t.universe();
                let m = rng.gen_range(0..=u.full_mask());
                let s: Vec<String> = u.set_from_mask(m).unwrap().symbols().map(str::to_string).collect();
                if body.minimal.contains(&s) {
                    return None;
                }
                body.minimal.push(s);
            }
        }
        c.body = serde_json::to_value(body).unwrap();
    }
    Some(c)
}

fn criterion_5() -> Result<String, String> {
    let (refutations, witnesses, failures) = LEDGER.with(|l| {
        let l = l.borrow();
        (l.refutations_checked, l.witnesses_checked, l.certificate_failures.clone())
    });
    if !failures.is_empty() {
        return Err(format!("{} certificate failures, first: {}", failures.len(), failures[0]));
    }
    if refutations == 0 || witnesses == 0 {
        return Err("criteria 1-4 produced no instances".into());
    }
    let mut pool: Vec<(Theory, Certificate)> = Vec::new();
    let mut theories: Vec<Theory> = (2..=7)
        .map(|n| gen_nti(&FiniteRing::zmod(n).unwrap()).unwrap())
        .collect();
    theories.push(gen_dedekind(2).unwrap());
    theories.push(gen_mono(1, 1).unwrap());
    theories.push(gen_mono(1, 2).unwrap());
    theories.push(gen_splitting_epi(&FiniteMap::parse("0:x,1:y,2:y").unwrap()).unwrap());
    theories.extend((0..20).map(|s| gen_random(4, 6, 2, 1000 + s).unwrap()));
    for t in theories {
        let c = certificate::prove(&t).unwrap();
        pool.push((t, c));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut tried, mut accepted) = (0, Vec::new());
    while tried < 1000 {
        let (t, c) = pool.choose(&mut rng).unwrap();
        let Some(m) = mutate(t, c, &mut rng) else {
            continue;
        };
        tried += 1;
        let text = m.to_json();
        let verdict = Certificate::from_json(&text).and_then(|m| certificate::verify(t, &m));
        if matches!(verdict, Ok(Ok(()))) {
            accepted.push(text);
        }
    }
    if !accepted.is_empty() {
        return Err(format!("{} of 1000 mutants accepted", accepted.len()));
    }
    Ok(format!(
        "{refutations} refutations replayed and {witnesses} witnesses verified from criteria 1-4; 1000/1000 mutants rejected"
    ))
}

fn criterion_6() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut total = 0;
    for i in 0..1000 {
        let n = rng.gen_range(0..=6);
        let (ic, order) = random_stratified(&mut rng, n, 6);
        if !ic.is_downward_stratified(&order) {
            return Err(format!("instance {i} not stratified"));
        }
        let empty = Subset::new();
        if ic.closure(&empty) != ic.site_closure(&order, &empty) {
            return Err(format!("instance {i}: closure differs from the covering closure"));
        }
        if ic.stratified_degeneracy(&order) != Ok(ic.is_total()) {
            return Err(format!("instance {i}: totality differs from degeneracy"));
        }
        total += ic.is_total() as usize;
    }
    Ok(format!("1000 stratified constructions: closure(∅) = covering closure ({total} total)"))
}

fn criterion_7() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000u64 {
        let n = rng.gen_range(0..=5);
        let t = gen_random(n, rng.gen_range(0..=6), 3, 70_000 + i).unwrap();
        let u = t.universe();
        let pick = |rng: &mut ChaCha8Rng, p: f64| -> BTreeSet<u64> {
            (0..=u.full_mask()).filter(|_| rng.gen_bool(p)).collect()
        };
        let r = pick(&mut rng, 0.15);
        let r2: BTreeSet<u64> = r.union(&pick(&mut rng, 0.15)).copied().collect();
        let ns = |s: &BTreeSet<u64>| NodeSet::from_nodes(u, s.iter().map(|&m| u.set_from_mask(m).unwrap())).unwrap();
        let c = covering_closure(&t, &ns(&r)).unwrap();
        let c2 = covering_closure(&t, &ns(&r2)).unwrap();
        if !ns(&r).is_subset(&c).unwrap() {
            return Err(format!("instance {i}: not extensive"));
        }
        if !c.is_subset(&c2).unwrap() {
            return Err(format!("instance {i}: not monotone"));
        }
        if covering_closure(&t, &c).unwrap() != c {
            return Err(format!("instance {i}: not idempotent"));
        }
        let bits: BTreeSet<u64> = c.iter().map(|s| s.bits()).collect();
        if bits != common::closure(&t, &r) {
            return Err(format!("instance {i}: differs from the oracle"));
        }
    }
    for i in 0..1000 {
        let ic = random_construction(&mut rng, 6, 8);
        let y: Subset = (0..6).filter(|_| rng.gen_bool(0.25)).collect();
        let y2: Subset = y.iter().copied().chain((0..6).filter(|_| rng.gen_bool(0.25))).collect();
        let c = ic.closure(&y);
        if !y.is_subset(&c) || !c.is_subset(&ic.closure(&y2)) || ic.closure(&c) != c {
            return Err(format!("inductive instance {i} breaks a closure law"));
        }
    }
    let (runs, bad) = LEDGER.with(|l| {
        let l = l.borrow();
        (l.zset_runs, l.zset_not_upward.clone())
    });
    if !bad.is_empty() {
        return Err(format!("{} closures not upward closed, first: {}", bad.len(), bad[0]));
    }
    Ok(format!(
        "closure laws on 1000 covering and 1000 inductive instances; zset upward closed on all {runs} degeneracy runs"
    ))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_geosat"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_8() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let write = |name: &str, text: &str| std::fs::write(Path::new(&p(name)), text).unwrap();
    let gen = |args: &[&str], name: &str| {
        let (code, out) = run_cli(args);
        assert_eq!(code, 0, "gen {args:?}");
        write(name, std::str::from_utf8(&out).unwrap());
    };
    gen(&["gen", "nti", "--zmod", "5"], "nti5.thy");
    gen(&["gen", "nti", "--zmod", "4"], "nti4.thy");
    gen(&["gen", "epi", "--map", "0:x,1:y,2:y"], "epi.thy");
    write("axiomless.thy", "symbols a b\n");
    write("chain.ind", "elements x y z\nstep s0: => x\nstep s1: x => y\nstep s2: x y => z\n");
    write("chain.ord", "le x y\nle y z\n");
    for (thy, cert) in [("nti5.thy", "nti5.cert"), ("nti4.thy", "nti4.cert")] {
        run_cli(&["prove", &p(thy), "--out", &p(cert)]);
    }
    let (code, out) = run_cli(&["check", &p("nti5.thy")]);
    if code != 0 || out != b"degenerate\n" {
        return Err("check nti5 did not print `degenerate`".into());
    }
    let commands: Vec<Vec<String>> = [
        vec!["check", &p("nti5.thy")],
        vec!["check", &p("nti4.thy")],
        vec!["model", &p("epi.thy"), "--all"],
        vec!["model", &p("nti4.thy"), "--limit", "3"],
        vec!["prove", &p("nti5.thy")],
        vec!["prove", &p("nti4.thy")],
        vec!["prove", &p("axiomless.thy")],
        vec!["verify", &p("nti5.thy"), "--cert", &p("nti5.cert")],
        vec!["verify", &p("nti4.thy"), "--cert", &p("nti4.cert")],
        vec!["gen", "nti", "--product", "2", "3"],
        vec!["gen", "dedekind", "--size", "2"],
        vec!["gen", "epi", "--map", "0:x,1:y"],
        vec!["gen", "mono", "--k", "1", "--size", "2"],
        vec!["gen", "random", "--symbols", "4", "--axioms", "5", "--seed", "9"],
        vec!["ind", &p("chain.ind"), "--closure"],
        vec!["ind", &p("chain.ind"), "--total"],
        vec!["ind", &p("chain.ind"), "--stratified", &p("chain.ord")],
    ]
    .iter()
    .map(|c| c.iter().map(|s| s.to_string()).collect())
    .collect();
    for cmd in &commands {
        let mut args: Vec<&str> = vec!["--format", "json"];
        args.extend(cmd.iter().map(String::as_str));
        let first = run_cli(&args);
        let second = run_cli(&args);
        if first != second {
            return Err(format!("output differs between runs: {}", cmd.join(" ")));
        }
        if serde_json::from_slice::<serde_json::Value>(&first.1).is_err() {
            return Err(format!("not JSON: {}", cmd.join(" ")));
        }
    }
    let again = dir.path().join("nti5-again.cert");
    run_cli(&["prove", &p("nti5.thy"), "--out", &again.to_string_lossy()]);
    if std::fs::read(p("nti5.cert")).unwrap() != std::fs::read(&again).unwrap() {
        return Err("certificate files differ between runs".into());
    }
    Ok(format!("{} commands byte-identical across runs; certificate files identical", commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Result<String, String>); 8] = [
        ("oracle equivalence", criterion_1),
        ("field theorem table", criterion_2),
        ("splitting epimorphisms", criterion_3),
        ("Dedekind finiteness and pigeonhole", criterion_4),
        ("certificates", criterion_5),
        ("stratified bridge", criterion_6),
        ("closure laws", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("criterion {} [PASS] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [FAIL] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
