//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use regtough::certify::{
    certify, cross_check, random_connected_regular, witness_refutes, CrossCheck, Theorem, Verdict,
};
use regtough::constructions::{build, build_g4star, ExtremalSpec, Family};
use regtough::graph::{complete, complete_bipartite, copies_k2_complement, cycle, petersen, Graph};
use regtough::graph6::{parse_graph6, write_graph6};
use regtough::spectral::{check_interlacing, eigenvalues, eigenvalues_small_matrix, quotient_matrix, Partition};
use regtough::thresholds::{alpha_d, alpha_residual, phi, psi, ThresholdParams};
use regtough::toughness::{is_one_over_b_tough, toughness_exact, SearchBudget, MAX_ORDER};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn alpha_three() -> Outcome {
    let t = Instant::now();
    let a = alpha_d(3);
    let elapsed = t.elapsed();
    ensure((a - 2.85577).abs() < 1e-4, || format!("alpha_3 = {a}"))?;
    let r = alpha_residual(3, a).abs();
    ensure(r < 1e-9, || format!("residual {r:e}"))?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("alpha_3 = {a:.10}, residual {r:.1e}, {elapsed:?}"))
}

fn alpha_realization() -> Outcome {
    let t = Instant::now();
    let mut worst = 0f64;
    for d in [1usize, 3, 5, 7, 9] {
        let k1_k2 = Graph::from_edges(3, [(1, 2)]).unwrap();
        let g = k1_k2.join(&copies_k2_complement((d - 1) / 2));
        let rho = eigenvalues(&g).unwrap().spectral_radius();
        let err = (rho - alpha_d(d as u32)).abs();
        ensure(err < 1e-6, || format!("d = {d}: rho = {rho}, alpha = {}", alpha_d(d as u32)))?;
        worst = worst.max(err);
    }
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("max |rho - alpha_d| = {worst:.1e}"))
}

fn b_one_closed_forms() -> Outcome {
    let mut worst = 0f64;
    for d in [3u32, 5, 7, 9, 4, 6, 8] {
        let df = d as f64;
        let inner = if d % 2 == 1 { df * df + 8.0 } else { df * df + 12.0 };
        let expected = (df - 2.0 + inner.sqrt()) / 2.0;
        let p = ThresholdParams::new(d, 1).unwrap();
        for (name, v) in [("phi", phi(p).value), ("psi", psi(p).value)] {
            let err = (v - expected).abs();
            ensure(err < 1e-12, || format!("{name}({d},1) = {v}, expected {expected}"))?;
            worst = worst.max(err);
        }
    }
    Ok(format!("max deviation {worst:.1e}"))
}

fn sharpness() -> Outcome {
    let t = Instant::now();
    let mut checked = Vec::new();
    for family in Family::STARS {
        for d in 1..=5u32 {
            for b in 1..=5u32 {
                let Ok(e) = build(ExtremalSpec::new(family, d, b)) else {
                    continue;
                };
                let g = &e.graph;
                let n = g.order();
                let tag = format!("{family}({d},{b})");
                ensure(g.is_connected(), || format!("{tag} disconnected"))?;
                ensure(g.is_regular() == Some(d as usize), || format!("{tag} not {d}-regular"))?;
                let l2 = eigenvalues(g).unwrap().values[1];
                let target = phi(ThresholdParams::new(d, b).unwrap()).value;
                ensure((l2 - target).abs() < 1e-6, || format!("{tag}: lambda_2 = {l2}, phi = {target}"))?;
                if n <= 24 {
                    let tau = toughness_exact(g, budget()).map_err(|err| format!("{tag}: {err}"))?.tau;
                    ensure(tau < Ratio::new(1, b as usize), || format!("{tag}: tau = {tau}"))?;
                    checked.push(format!("{tag} n={n} tau={tau}"));
                } else {
                    let c = g.delete_vertices(&e.hubs).unwrap().components().count;
                    let s = e.hubs.len();
                    ensure(c > b as usize * s, || format!("{tag}: hub cut |S| = {s}, c = {c}"))?;
                    checked.push(format!("{tag} n={n} hubs={s} c={c}"));
                }
            }
        }
    }
    ensure(checked.len() == 7, || format!("expected 7 feasible members, found {}", checked.len()))?;
    within(t.elapsed(), Duration::from_secs(120))?;
    Ok(checked.join("; "))
}

fn higher_eigenvalue_extremal() -> Outcome {
    let mut parts = Vec::new();
    for d in [3u32, 5] {
        let e = build_g4star(d, d - 1).map_err(|err| err.to_string())?;
        let lam = eigenvalues(&e.graph).unwrap().values[d as usize - 1];
        ensure((lam - alpha_d(d)).abs() < 1e-6, || format!("d = {d}: lambda_{d} = {lam}"))?;
        let how = if e.graph.order() <= MAX_ORDER {
            let dec = is_one_over_b_tough(&e.graph, d as usize - 1, budget()).map_err(|err| err.to_string())?;
            ensure(!dec.tough, || format!("d = {d}: graph is 1/{}-tough", d - 1))?;
            "solver"
        } else {
            ensure(witness_refutes(&e.graph, &e.hubs, d - 1), || format!("d = {d}: hub cut is not a witness"))?;
            "hub cut"
        };
        parts.push(format!("d={d} n={} lambda_{d}={lam:.10} not 1/{}-tough ({how})", e.graph.order(), d - 1));
    }
    Ok(parts.join("; "))
}

fn soundness_on_random_graphs() -> Outcome {
    let t = Instant::now();
    let mut cases = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    while cases.len() < 500 {
        let d = rng.gen_range(3..=5usize);
        let n = rng.gen_range(d + 1..=16);
        if n * d % 2 == 1 {
            continue;
        }
        let b = rng.gen_range(1..=3u32);
        cases.push((n, d, b, rng.gen::<u64>()));
    }
    let results: Vec<Result<[usize; 2], String>> = cases
        .par_iter()
        .map(|&(n, d, b, seed)| {
            let g = random_connected_regular(n, d, seed).map_err(|e| e.to_string())?;
            let mut certified = [0usize; 2];
            for (i, th) in [Theorem::SecondEigenvalue, Theorem::HigherEigenvalue].into_iter().enumerate() {
                if certify(&g, b, th).verdict != Verdict::Certified {
                    continue;
                }
                certified[i] += 1;
                match cross_check(&g, b, budget()) {
                    CrossCheck::Confirmed { .. } => {}
                    other => return Err(format!("{th} n={n} d={d} b={b} seed={seed}: {other:?}")),
                }
            }
            Ok(certified)
        })
        .collect();
    let mut totals = [0usize; 2];
    for r in results {
        let c = r?;
        totals[0] += c[0];
        totals[1] += c[1];
    }
    within(t.elapsed(), Duration::from_secs(600))?;
    Ok(format!(
        "500 graphs, 0 contradictions, certified: thm3 {}, thm4 {}",
        totals[0], totals[1]
    ))
}

/// Every labelled graph on `n` vertices, in upper-triangle bit order.
fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

fn oracle_agreement() -> Outcome {
    let t = Instant::now();
    let mut seen = HashSet::new();
    let mut graphs = Vec::new();
    for n in 1..=7 {
        for g in all_graphs(n) {
            if g.is_connected() && !g.is_complete() && seen.insert(write_graph6(&g).unwrap()) {
                graphs.push(g);
            }
        }
    }
    let mismatches: Vec<String> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let tau = toughness_exact(g, budget()).unwrap().tau;
            [1usize, 2].into_iter().filter_map(move |b| {
                let tough = is_one_over_b_tough(g, b, budget()).unwrap().tough;
                (tough != (tau >= Ratio::new(1, b))).then(|| format!("{g:?} b={b} tau={tau}"))
            })
        })
        .collect();
    ensure(mismatches.is_empty(), || format!("{} mismatches, first {}", mismatches.len(), mismatches[0]))?;
    within(t.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{} graphs, b in {{1,2}}, {:?}", graphs.len(), t.elapsed()))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::edgeless(n);
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

/// Distance partition of a cycle from vertex 0: always equitable.
fn cycle_distance_partition(n: usize) -> Partition {
    let labels: Vec<usize> = (0..n).map(|v| v.min(n - v)).collect();
    Partition::from_labels(&labels).unwrap()
}

fn interlacing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a7e);
    let mut equitable = 0;
    for i in 0..1000 {
        let (g, p) = match i % 4 {
            0 => {
                let n = rng.gen_range(3..=12);
                (cycle(n).unwrap(), cycle_distance_partition(n))
            }
            _ => {
                let n = rng.gen_range(1..=12);
                let density = rng.gen_range(0.1..0.9);
                let g = random_graph(&mut rng, n, density);
                let m = rng.gen_range(1..=n);
                let mut labels: Vec<usize> = (0..n).map(|v| if v < m { v } else { rng.gen_range(0..m) }).collect();
                labels.rotate_left(rng.gen_range(0..n));
                (g, Partition::from_labels(&labels).unwrap())
            }
        };
        let spec = eigenvalues(&g).unwrap();
        let q = quotient_matrix(&g, &p).unwrap();
        let mu = eigenvalues_small_matrix(&q.entries).map_err(|e| format!("pair {i}: {e}"))?;
        ensure(check_interlacing(&spec, &mu).unwrap(), || format!("pair {i}: {mu:?} vs {:?}", spec.values))?;
        if q.equitable {
            equitable += 1;
            for m in &mu {
                ensure(spec.contains_within(*m, 1e-6), || format!("pair {i}: {m} not in spectrum"))?;
            }
        }
    }
    Ok(format!("1000 pairs, {equitable} equitable"))
}

fn round_trip(g: &Graph) -> Result<(), String> {
    let bytes = write_graph6(g).map_err(|e| e.to_string())?;
    let back = parse_graph6(&bytes).map_err(|e| e.to_string())?;
    ensure(&back == g, || format!("decode mismatch for {}", String::from_utf8_lossy(&bytes)))?;
    ensure(write_graph6(&back).unwrap() == bytes, || "re-encoding differs".into())
}

fn graph6_round_trip() -> Outcome {
    let mut count = 0;
    for n in 0..=5 {
        for g in all_graphs(n) {
            round_trip(&g)?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x96);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=40);
        let p = rng.gen_range(0.0..1.0);
        round_trip(&random_graph(&mut rng, n, p))?;
        count += 1;
    }
    Ok(format!("{count} graphs"))
}

fn known_toughness() -> Outcome {
    let tau = |g: &Graph| toughness_exact(g, budget()).map(|r| r.tau).map_err(|e| e.to_string());
    ensure(tau(&petersen())? == Ratio::new(4, 3), || "Petersen".into())?;
    for m in 2..=5 {
        for n in m..=5 {
            let t = tau(&complete_bipartite(m, n))?;
            ensure(t == Ratio::new(m, n), || format!("K_{{{m},{n}}}: {t}"))?;
        }
    }
    for n in 3..=8 {
        if n == 3 {
            ensure(toughness_exact(&complete(3), budget()).is_err(), || "C_3 = K_3 has no cut".into())?;
            continue;
        }
        let t = tau(&cycle(n).unwrap())?;
        ensure(t == Ratio::new(1, 1), || format!("C_{n}: {t}"))?;
    }
    Ok("Petersen 4/3, K_{m,n} m/n, C_n 1".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("alpha_3 value and cubic residual", alpha_three),
        ("alpha_d as spectral radius of (K1+K2) v cocktail", alpha_realization),
        ("phi(d,1) and psi(d,1) closed forms", b_one_closed_forms),
        ("sharpness of extremal families, d <= 5", sharpness),
        ("lambda_{b+1} extremal graphs G4*(d,d-1)", higher_eigenvalue_extremal),
        ("certificate soundness on random regular graphs", soundness_on_random_graphs),
        ("decision vs exact toughness, n <= 7", oracle_agreement),
        ("interlacing and equitable quotients", interlacing),
        ("graph6 round-trip", graph6_round_trip),
        ("known toughness values", known_toughness),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

