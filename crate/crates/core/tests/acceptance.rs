//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any fails.
//!
//! Worker count comes from `CAYLAB_JOBS`, else the available parallelism.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use caylab::cayley::ConnectionSet;
use caylab::corpus::{atoms, connected_sets, in_scope, sample_sets, set_from_mask};
use caylab::groups::{unique_subgroup_of_order, AbelianGroup};
use caylab::isotest::{audit_iso_pairs, iso_pairs_exhaustive, iso_pairs_sampled};
use caylab::keys::{audit_phi_on_classes, PhiReading, TwicePrimePower};
use caylab::par::Exec;
use caylab::poschel::{brute_force_srings, build_ssystem_partition, compare_with_brute_force, enumerate_ssystems};
use caylab::sring::SRing;
use caylab::stability::audit::{audit_theorems, axiom_violation, AuditOutcome, Check};
use caylab::stability::involution;

const SEED: u64 = 20240517;
const SAMPLES: usize = 500;
const STRUCTURED: usize = 100;
const ODD_SAMPLES: usize = 300;
const PAIR_SAMPLES: usize = 300;

struct Line {
    id: u32,
    pass: bool,
    text: String,
}

fn group(spec: &str) -> AbelianGroup {
    spec.parse().expect("valid group")
}

fn exec() -> Exec {
    let jobs = std::env::var("CAYLAB_JOBS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    Exec::new(jobs)
}

/// Sets whose part in `H_0` is a union of non-trivial `L`-cosets, `|L| = p`.
fn radical_sets(h: &AbelianGroup, p: usize, k: usize, seed: u64) -> Vec<ConnectionSet> {
    let n = h.order();
    let l = unique_subgroup_of_order(h, p).unwrap();
    let atoms = atoms(h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<ConnectionSet> = Vec::new();
    while out.len() < k {
        let s = set_from_mask(h, &atoms, rng.gen_range(0..1u64 << atoms.len()));
        let mut elems: Vec<usize> = Vec::new();
        for &x in s.elements() {
            if x % 2 == 1 {
                elems.push(x);
            } else {
                elems.extend(l.elements().iter().map(|&y| (x + y) % n).filter(|z| !l.contains(*z)));
            }
        }
        elems.sort_unstable();
        elems.dedup();
        let t = ConnectionSet::new(h, &elems).unwrap();
        if in_scope(h, &t) && !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// Sets with `S + b = S`.
fn involution_invariant_sets(h: &AbelianGroup, k: usize, seed: u64) -> Vec<ConnectionSet> {
    let b = involution(h).unwrap();
    let atoms = atoms(h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<ConnectionSet> = Vec::new();
    while out.len() < k {
        let s = set_from_mask(h, &atoms, rng.gen_range(0..1u64 << atoms.len()));
        let mut elems: Vec<usize> = s.elements().iter().copied().filter(|&x| x % 2 == 0).collect();
        let shifted: Vec<usize> = elems.iter().map(|&x| h.add(x, b)).collect();
        elems.extend(shifted);
        elems.sort_unstable();
        let t = ConnectionSet::new(h, &elems).unwrap();
        if in_scope(h, &t) && !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

fn count(out: &AuditOutcome, check: Check) -> usize {
    out.violations.iter().filter(|v| v.check == check).count()
}

struct Audited {
    label: String,
    out: AuditOutcome,
    secs: f64,
}

fn audit(label: &str, h: &AbelianGroup, sets: &[ConnectionSet], exec: &Exec) -> Audited {
    let t = Instant::now();
    let out = audit_theorems(h, sets, &Check::ALL, exec).expect("audit runs");
    Audited { label: label.to_string(), out, secs: t.elapsed().as_secs_f64() }
}

fn summary(runs: &[&Audited], check: Check) -> (bool, String) {
    let mut bad = 0;
    let parts: Vec<String> = runs
        .iter()
        .map(|r| {
            let v = count(&r.out, check);
            bad += v;
            format!("{} {} inst/{} unstable/{} bad ({:.1}s)", r.label, r.out.instances, r.out.unstable, v, r.secs)
        })
        .collect();
    (bad == 0, parts.join("; "))
}

fn ring_problems(rings: &[SRing]) -> usize {
    rings.iter().filter(|a| axiom_violation(a).expect("axiom check runs").is_some()).count()
}

fn main() {
    let exec = exec();
    let started = Instant::now();
    let mut lines: Vec<Line> = Vec::new();
    let mut push = |id: u32, pass: bool, text: String| {
        println!("criterion {id:>2}  {}  {text}", if pass { "PASS" } else { "FAIL" });
        lines.push(Line { id, pass, text });
    };

    let z18 = group("Z18");
    let z10 = group("Z10");
    let z14 = group("Z14");
    let z50 = group("Z50");
    let z54 = group("Z54");
    let a18 = audit("Z18 all", &z18, &connected_sets(&z18).unwrap(), &exec);
    let a10 = audit("Z10 all", &z10, &connected_sets(&z10).unwrap(), &exec);
    let a14 = audit("Z14 all", &z14, &connected_sets(&z14).unwrap(), &exec);
    let mut runs50 = Vec::new();
    let mut runs54 = Vec::new();
    for (h, p, runs) in [(&z50, 5, &mut runs50), (&z54, 3, &mut runs54)] {
        runs.push(audit(&format!("{h} sample"), h, &sample_sets(h, SAMPLES, SEED).unwrap(), &exec));
        runs.push(audit(&format!("{h} radical"), h, &radical_sets(h, p, STRUCTURED, SEED), &exec));
        runs.push(audit(&format!("{h} b-invariant"), h, &involution_invariant_sets(h, STRUCTURED, SEED), &exec));
    }

    let (ok, text) = summary(&[&a18], Check::Criterion);
    push(1, ok && a18.out.instances == 462, text);
    let (ok, text) = summary(&[&a10, &a14], Check::Criterion);
    push(2, ok, text);
    let big: Vec<&Audited> = runs50.iter().chain(&runs54).collect();
    let (ok, text) = summary(&big, Check::Criterion);
    let enough = runs50[0].out.instances >= SAMPLES && runs54[0].out.instances >= SAMPLES;
    push(3, ok && enough, text);
    let mut all_even: Vec<&Audited> = vec![&a18, &a10, &a14];
    all_even.extend(&big);
    let (ok, _) = summary(&all_even, Check::Equivalence);
    let total: usize = all_even.iter().map(|r| r.out.instances).sum();
    let bad: usize = all_even.iter().map(|r| count(&r.out, Check::Equivalence)).sum();
    push(4, ok, format!("{total} instances, {bad} exceptions"));

    let z27 = group("Z27");
    let odd = [
        audit("Z9 all", &group("Z9"), &connected_sets(&group("Z9")).unwrap(), &exec),
        audit("Z15 all", &group("Z15"), &connected_sets(&group("Z15")).unwrap(), &exec),
        audit("Z3xZ3 all", &group("Z3xZ3"), &connected_sets(&group("Z3xZ3")).unwrap(), &exec),
        audit("Z27 sample", &z27, &sample_sets(&z27, ODD_SAMPLES, SEED).unwrap(), &exec),
    ];
    let odd_refs: Vec<&Audited> = odd.iter().collect();
    let (ok, text) = summary(&odd_refs, Check::Twins);
    push(5, ok && odd[3].out.instances >= ODD_SAMPLES, text);
    let (ok, text) = summary(&odd_refs, Check::Wreath);
    push(6, ok, text);

    let mut t4: Vec<&Audited> = vec![&a18];
    t4.extend(&runs54);
    let (ok_a, text) = summary(&t4, Check::PairOrRadical);
    let (ok_b, _) = summary(&t4, Check::ClassShape);
    let shape_bad: usize = t4.iter().map(|r| count(&r.out, Check::ClassShape)).sum();
    push(7, ok_a && ok_b, format!("{text}; class shape bad {shape_bad}"));

    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in ["Z3", "Z5", "Z7", "Z9"] {
        let c = compare_with_brute_force(&group(spec)).unwrap();
        ok &= c.agrees();
        parts.push(format!("{spec}: {} brute / {} S-systems", c.brute.len(), c.systems.len()));
    }
    push(8, ok, format!("{} ({:.1}s)", parts.join(", "), t.elapsed().as_secs_f64()));

    let t = Instant::now();
    let mut parts = Vec::new();
    let mut bad = 0;
    for (spec, pairs) in [
        ("Z18", iso_pairs_exhaustive(&TwicePrimePower::new(&z18).unwrap()).unwrap()),
        ("Z50", iso_pairs_sampled(&TwicePrimePower::new(&z50).unwrap(), PAIR_SAMPLES, SEED).unwrap()),
        ("Z54", iso_pairs_sampled(&TwicePrimePower::new(&z54).unwrap(), PAIR_SAMPLES, SEED).unwrap()),
    ] {
        let h = TwicePrimePower::new(&group(spec)).unwrap();
        let d = audit_iso_pairs(&h, &pairs, PhiReading::Crt, &exec).unwrap();
        bad += d.len();
        parts.push(format!("{spec} {} pairs/{} disagree", pairs.len(), d.len()));
    }
    push(9, bad == 0, format!("{} ({:.1}s)", parts.join(", "), t.elapsed().as_secs_f64()));

    let mut parts = Vec::new();
    let mut bad = 0;
    for spec in ["Z18", "Z50"] {
        let h = TwicePrimePower::new(&group(spec)).unwrap();
        let (checks, v) = audit_phi_on_classes(&h, PhiReading::Crt).unwrap();
        bad += v.len();
        parts.push(format!("p^e={} {checks} checks/{} bad", h.pe(), v.len()));
    }
    push(10, bad == 0, parts.join(", "));

    let mut everything: Vec<&Audited> = all_even.clone();
    everything.extend(&odd);
    let module_bad: usize = everything.iter().map(|r| count(&r.out, Check::Axioms)).sum();
    let modules: usize = everything.iter().map(|r| r.out.instances).sum();
    let mut rings: Vec<SRing> = Vec::new();
    for spec in ["Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z2xZ4", "Z3xZ3"] {
        rings.extend(brute_force_srings(&group(spec)).unwrap());
    }
    for (p, e) in [(3u64, 3u32), (5, 2), (7, 2), (3, 4)] {
        let g = AbelianGroup::cyclic(p.pow(e) as usize).unwrap();
        for s in enumerate_ssystems(p, e).unwrap() {
            rings.push(build_ssystem_partition(&g, &s).unwrap());
        }
    }
    let ring_bad = ring_problems(&rings);
    push(
        11,
        module_bad == 0 && ring_bad == 0,
        format!("{modules} transitivity modules/{module_bad} bad, {} enumerated rings/{ring_bad} bad", rings.len()),
    );

    let t = Instant::now();
    let mut outputs = Vec::new();
    for jobs in ["1", "4", "8", "1", "4", "8"] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = caylab::cli::run_cli(["caylab", "enumerate", "--group", "Z18", "--jobs", jobs], &mut out, &mut err);
        outputs.push((code, out));
    }
    let same = outputs.iter().all(|o| *o == outputs[0]) && outputs[0].0 == 0 && !outputs[0].1.is_empty();
    push(
        12,
        same,
        format!("6 runs over jobs 1/4/8, {} bytes each ({:.1}s)", outputs[0].1.len(), t.elapsed().as_secs_f64()),
    );

    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    println!(
        "{} of {} criteria passed in {:.1}s with {} worker(s)",
        lines.len() - failed.len(),
        lines.len(),
        started.elapsed().as_secs_f64(),
        exec.jobs()
    );
    for l in lines.iter().filter(|l| !l.pass) {
        eprintln!("failed criterion {}: {}", l.id, l.text);
    }
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
