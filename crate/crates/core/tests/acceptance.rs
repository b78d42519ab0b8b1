//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime
//! against the pinned budget. Exits non-zero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dcjperm::dcj::{
    self, apply_dcj, components, count_scenarios_exhaustive, enumerate_scenarios, DcjMode,
};
use dcjperm::genome::{
    count_genomes, decode, encode, enumerate_genomes, random_genome_with, random_involution,
    random_perfect_matching, GenomeSpec,
};
use dcjperm::oracle::{adjacency_distance, bfs_distance_map, graph_dcj_apply, BfsTable, VertexSet};
use dcjperm::perm::{enumerate_minimal_factorizations, Cycle, Permutation};
use dcjperm::{Execution, Genome};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn genome(text: &str, n: usize) -> Genome {
    Genome::parse(text, n).unwrap()
}

fn all_genomes(n: usize) -> Vec<Genome> {
    enumerate_genomes(n, false).unwrap().collect()
}

fn table_counts() -> Outcome {
    let expected: [u64; 9] = [2, 10, 76, 764, 9496, 140152, 2390480, 46206736, 997313824];
    for (k, &e) in expected.iter().enumerate() {
        let got = count_genomes(k + 1);
        ensure(got == BigUint::from(e), || {
            format!("n={}: {got} != {e}", k + 1)
        })?;
    }
    Ok("n=1..9 exact".into())
}

fn example_genome() -> Outcome {
    let spec = GenomeSpec::parse("L 1 3 2 4\nC 5 6\n").map_err(|e| e.to_string())?;
    let g = encode(&spec);
    ensure(g.to_string() == "(2,5)(3,6)(4,7)(9,12)(10,11)", || {
        format!("encoded {g}")
    })?;
    ensure(g.telomeres() == [1, 8], || {
        format!("telomeres {:?}", g.telomeres())
    })?;
    let back = decode(&g);
    ensure(back == spec, || format!("decoded {back}"))?;
    ensure(encode(&back) == g, || "re-encode differs".into())?;
    Ok("(2,5)(3,6)(4,7)(9,12)(10,11), telomeres {1,8}, round trip".into())
}

fn triple_oracle() -> Outcome {
    let mut checked = 0usize;
    let space = all_genomes(3);
    ensure(space.len() == 76, || format!("|Γ_3| = {}", space.len()))?;
    for a in &space {
        let bfs = bfs_distance_map(a, false).map_err(|e| e.to_string())?;
        for b in &space {
            let closed = dcj::distance(a, b).unwrap().total;
            let ag = adjacency_distance(a, b).unwrap();
            ensure(closed == bfs[b] && ag == bfs[b], || {
                format!("{a} vs {b}: closed {closed}, bfs {}, ag {ag}", bfs[b])
            })?;
            checked += 1;
        }
    }
    let exhaustive = checked;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [4, 5] {
        let table = BfsTable::new(n, false, Execution::default()).map_err(|e| e.to_string())?;
        for _ in 0..10_000 {
            let a = random_genome_with(&mut rng, n);
            let b = random_genome_with(&mut rng, n);
            let closed = dcj::distance(&a, &b).unwrap().total;
            let ag = adjacency_distance(&a, &b).unwrap();
            let bfs = table.distance(&a, &b).unwrap();
            ensure(closed == bfs && ag == bfs, || {
                format!("{a} vs {b}: closed {closed}, bfs {bfs}, ag {ag}")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{exhaustive} exhaustive pairs at n=3, {} random pairs at n=4,5",
        checked - exhaustive
    ))
}

fn worked_examples() -> Outcome {
    let p1 = genome("(1,6)(2,3)(4,5)", 3);
    let p2 = genome("(1,2)(3,4)(5,6)", 3);
    let d = dcj::distance(&p1, &p2).unwrap().total;
    ensure(d == 2, || format!("d = {d}"))?;
    // sorting p2 into p1: g·p2·g⁻¹ = p1
    let part = components(&p2, &p1).unwrap();
    let g = dcj::sorting_element(&part.classes[0]).map_err(|e| e.to_string())?;
    ensure(g.to_string() == "(1,3,5)", || {
        format!("sorting element {g}")
    })?;
    let gp = g.to_permutation(6).unwrap();
    ensure(p2.perm().conjugate(&gp).unwrap() == *p1.perm(), || {
        "g·π₂·g⁻¹ != π₁".into()
    })?;

    let q1 = genome("(1,6)(2,3)(4,5)(7,8)", 4);
    let q2 = genome("(1,2)(3,4)(5,6)", 4);
    let part = components(&q1, &q2).unwrap();
    let sets: Vec<Vec<usize>> = part.classes.iter().map(|c| c.points.clone()).collect();
    ensure(sets == [vec![1, 2, 3, 4, 5, 6], vec![7, 8]], || {
        format!("components {sets:?}")
    })?;
    let d = dcj::distance(&q1, &q2).unwrap().total;
    let bfs = dcjperm::bfs_distance(&q1, &q2, false).unwrap();
    ensure(d == 3 && bfs == 3, || format!("d = {d}, bfs = {bfs}"))?;
    Ok("d=2 with (1,3,5); components {1..6},{7,8} with d=3 (BFS 3)".into())
}

// Genome sequences obtained by conjugating `start` by the factors of each
// factorization, rightmost factor first.
fn factorization_paths(start: &Genome, g: &Cycle) -> BTreeSet<Vec<Genome>> {
    let degree = start.degree();
    enumerate_minimal_factorizations(g, degree)
        .unwrap()
        .iter()
        .map(|seq| {
            let mut cur = start.perm().clone();
            let mut path = Vec::new();
            for t in seq.items().iter().rev() {
                let (a, b) = t.points();
                let tp = Permutation::transposition(degree, a, b).unwrap();
                cur = cur.conjugate(&tp).unwrap();
                path.push(dcjperm::genome::validate(cur.clone()).unwrap());
            }
            path
        })
        .collect()
}

fn scenario_counts() -> Outcome {
    let p1 = genome("(1,6)(2,3)(4,5)", 3);
    let p2 = genome("(1,2)(3,4)(5,6)", 3);
    let e = enumerate_scenarios(&p2, &p1, None, false).map_err(|e| e.to_string())?;
    let found: BTreeSet<Vec<Genome>> = e
        .scenarios
        .iter()
        .map(|s| s.steps().iter().map(|st| st.genome.clone()).collect())
        .collect();
    let expected = factorization_paths(&p2, &Cycle::new(vec![1, 3, 5]).unwrap());
    ensure(e.scenarios.len() == 3 && found == expected, || {
        format!(
            "{} scenarios, match S((1,3,5)): {}",
            e.scenarios.len(),
            found == expected
        )
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut per_d = [0usize; 5];
    let mut attempts = 0;
    while per_d[1..].iter().any(|&c| c < 15) {
        attempts += 1;
        ensure(attempts < 200_000, || {
            format!("sampling stalled at {per_d:?}")
        })?;
        let n = rng.gen_range(2..=5);
        let a = random_genome_with(&mut rng, n);
        let b = random_genome_with(&mut rng, n);
        if a.telomeres().len() != b.telomeres().len() {
            continue;
        }
        let report = dcj::distance(&a, &b).unwrap();
        let d = report.total;
        if !(1..=4).contains(&d) || report.nontrivial().count() != 1 || per_d[d] >= 15 {
            continue;
        }
        let formula = BigUint::from(d + 1).pow(d as u32 - 1);
        let listed = enumerate_scenarios(&a, &b, None, false).map_err(|e| e.to_string())?;
        let distinct: HashSet<Vec<&Genome>> = listed
            .scenarios
            .iter()
            .map(|s| s.genomes().collect())
            .collect();
        let counted = count_scenarios_exhaustive(&a, &b, false, Execution::default()).unwrap();
        let closed = dcj::count_optimal_scenarios(&a, &b).map_err(|e| e.to_string())?;
        ensure(
            BigUint::from(listed.scenarios.len()) == formula
                && distinct.len() == listed.scenarios.len()
                && counted == formula
                && closed == formula,
            || {
                format!(
                    "{a} -> {b}, d={d}: enumerated {}, counted {counted}, formula {formula}",
                    listed.scenarios.len()
                )
            },
        )?;
        ensure(
            listed
                .scenarios
                .iter()
                .all(|s| s.replays() && s.target() == &b),
            || "bad scenario".into(),
        )?;
        per_d[d] += 1;
    }
    let total: usize = per_d.iter().sum();
    Ok(format!(
        "S((1,3,5)) gives 3; {total} random single-class pairs, 15 each for d=1..4"
    ))
}

fn factorization_count() -> Outcome {
    for k in 2..=6usize {
        let cycle = Cycle::new((1..=k).collect()).unwrap();
        let target = cycle.to_permutation(k).unwrap();
        let seqs = enumerate_minimal_factorizations(&cycle, k).unwrap();
        let expected = k.pow(k as u32 - 2);
        ensure(seqs.len() == expected, || {
            format!("k={k}: {} != {expected}", seqs.len())
        })?;
        let distinct: HashSet<String> = seqs.iter().map(|s| s.to_string()).collect();
        ensure(distinct.len() == expected, || format!("k={k}: duplicates"))?;
        for s in &seqs {
            ensure(s.len() == k - 1 && s.product(k).unwrap() == target, || {
                format!("k={k}: {s} is not a factorization")
            })?;
        }
    }
    Ok("k^(k-2) for k=2..6, all products equal the cycle".into())
}

fn operator_laws() -> Outcome {
    let space = all_genomes(3);
    let degree = 6;
    let mut coincidences = 0usize;
    for g in &space {
        let mut conj = Vec::new();
        for i in 1..=degree {
            for j in (i + 1)..=degree {
                let (h, op) = apply_dcj(g, i, j).unwrap();
                let (back, _) = apply_dcj(&h, i, j).unwrap();
                ensure(back == *g, || format!("D_{i}{j} twice on {g} gives {back}"))?;
                if op.mode == DcjMode::Conjugate {
                    conj.push((i, j, h));
                }
            }
        }
        for (i, j, h) in &conj {
            for (k, l, h2) in &conj {
                let same_pair = (i, j) == (k, l);
                let images: BTreeSet<usize> = [g.partner(*i), g.partner(*j)].into();
                let kl: BTreeSet<usize> = [*k, *l].into();
                let disjoint = ![*i, *j].iter().any(|x| kl.contains(x));
                let predicted = same_pair || (kl == images && disjoint);
                ensure((h == h2) == predicted, || {
                    format!(
                        "{g}: D_{i}{j} vs D_{k}{l}: equal {}, predicted {predicted}",
                        h == h2
                    )
                })?;
                coincidences += 1;
            }
        }
    }
    Ok(format!(
        "involution on 76 genomes x 15 pairs; {coincidences} conjugate-mode pair comparisons"
    ))
}

fn commutativity() -> Outcome {
    let mut checked = 0;
    for g in all_genomes(3) {
        let v = VertexSet::from_genome(&g);
        ensure(v.to_genome() == g, || format!("ρ round trip fails on {g}"))?;
        for i in 1..=6 {
            for j in 1..=6 {
                if i == j {
                    continue;
                }
                let graph = graph_dcj_apply(&v, i, j).unwrap().to_genome();
                let algebra = apply_dcj(&g, i, j).unwrap().0;
                ensure(graph == algebra, || {
                    format!("{g} with ({i},{j}): graph {graph}, algebra {algebra}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (genome, i, j) cases at n=3"))
}

fn product_cycles(a: &Permutation, b: &Permutation) -> Vec<Cycle> {
    b.compose(a).unwrap().cycles()
}

fn involution_products() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let degree = 2 * rng.gen_range(1..=20);
        let alpha = random_perfect_matching(&mut rng, degree);
        let beta = random_perfect_matching(&mut rng, degree);
        let cycles = product_cycles(&alpha, &beta);
        let mut lengths: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
        lengths.sort_unstable();
        let even_multiplicity = lengths
            .chunk_by(|x, y| x == y)
            .all(|run| run.len() % 2 == 0);
        ensure(even_multiplicity, || {
            format!("cycle lengths {lengths:?} for {alpha} and {beta}")
        })?;
        for c in &cycles {
            for &i in c.points() {
                ensure(!c.contains(alpha.apply(i)), || {
                    format!("{i} and α({i}) share a cycle")
                })?;
            }
        }
    }
    for _ in 0..1000 {
        let degree = 2 * rng.gen_range(1..=20);
        let rate_a = rng.gen_range(0.0..1.0);
        let rate_b = rng.gen_range(0.0..1.0);
        let p1 = random_involution(&mut rng, degree, rate_a);
        let p2 = random_involution(&mut rng, degree, rate_b);
        let fixed: BTreeSet<usize> = p1
            .fixed_points()
            .into_iter()
            .chain(p2.fixed_points())
            .collect();
        for c in product_cycles(&p1, &p2) {
            let k = c.points().iter().filter(|x| fixed.contains(x)).count();
            ensure(k <= 2, || format!("cycle {c} holds {k} fixed points"))?;
        }
    }
    Ok("1000 fixed-point-free pairs, 1000 general pairs, degree <= 40".into())
}

fn transposition_length_step() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10_000 {
        let degree = rng.gen_range(2..=40);
        let mut images: Vec<usize> = (1..=degree).collect();
        images.shuffle(&mut rng);
        let p = Permutation::from_images(images).unwrap();
        let i = rng.gen_range(1..=degree);
        let mut j = rng.gen_range(1..degree);
        if j >= i {
            j += 1;
        }
        let t = Permutation::transposition(degree, i, j).unwrap();
        let before = p.transposition_length() as i64;
        let after = t.compose(&p).unwrap().transposition_length() as i64;
        ensure((after - before).abs() == 1, || {
            format!("({i},{j}) on {p}: {before} -> {after}")
        })?;
    }
    Ok("10000 random trials, degree <= 40".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "genome counts n=1..9",
            budget: Duration::from_secs(1),
            run: table_counts,
        },
        Criterion {
            id: 2,
            name: "example genome encoding",
            budget: Duration::from_secs(1),
            run: example_genome,
        },
        Criterion {
            id: 3,
            name: "triple-oracle distance agreement",
            budget: Duration::from_secs(60),
            run: triple_oracle,
        },
        Criterion {
            id: 4,
            name: "worked examples",
            budget: Duration::from_secs(1),
            run: worked_examples,
        },
        Criterion {
            id: 5,
            name: "optimal scenario count (d+1)^(d-1)",
            budget: Duration::from_secs(120),
            run: scenario_counts,
        },
        Criterion {
            id: 6,
            name: "minimal factorization count k^(k-2)",
            budget: Duration::from_secs(30),
            run: factorization_count,
        },
        Criterion {
            id: 7,
            name: "operator involution and coincidences",
            budget: Duration::from_secs(30),
            run: operator_laws,
        },
        Criterion {
            id: 8,
            name: "graph/algebra DCJ commutativity",
            budget: Duration::from_secs(30),
            run: commutativity,
        },
        Criterion {
            id: 9,
            name: "involution product structure",
            budget: Duration::from_secs(10),
            run: involution_products,
        },
        Criterion {
            id: 10,
            name: "transposition length step",
            budget: Duration::from_secs(5),
            run: transposition_length_step,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= c.budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over budget")),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} [{:>2}] {} ({:.2}s / {}s): {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
