//! Acceptance gate: one pass/fail line per criterion, non-zero exit on failure.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use linforest::bounds::{
    diam_bounds_decycling, diam_bounds_l, diam_upper_l_fine, kary_bounds_l, kary_caterpillar_l, perfect_kary_decycling,
    perfect_kary_l, perfect_kary_recurrence,
};
use linforest::extremal::{kary_caterpillar, Extremal};
use linforest::forest::{hc_construct, hc_lower_bound, l_of_tree, leaf_exchange, stats_of_tree};
use linforest::generate::{
    enumerate_tree_range, enumerate_trees, labeled_tree_count, perfect_kary, perfect_kary_order, random_kary,
    random_tree_with,
};
use linforest::graph::{line_graph, Graph};
use linforest::oracle::{self, is_hamiltonian_cycle, Oracle};
use linforest::tree::diameter;
use linforest::verify::{verify_theorems, ExchangeSampling, Theorem, VerifyConfig};
use linforest::Rational;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs `f` over every labeled tree on `n` vertices in parallel chunks,
/// returning the first failure in Prüfer order.
fn all_trees<F>(n: usize, f: F) -> Result<u64, String>
where
    F: Fn(&Graph) -> Result<(), String> + Sync,
{
    const CHUNK: u64 = 1 << 14;
    let total = labeled_tree_count(n).expect("small n");
    let starts: Vec<u64> = (0..total).step_by(CHUNK as usize).collect();
    let failures: Vec<String> = starts
        .into_par_iter()
        .filter_map(|s| {
            enumerate_tree_range(n, s..(s + CHUNK).min(total), 10)
                .expect("range")
                .find_map(|g| f(&g).err().map(|e| format!("{e} on {:?}", g.edges())))
        })
        .collect();
    match failures.into_iter().next() {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

fn dp_matches_oracle() -> Outcome {
    let mut count = 0;
    for n in 2..=9 {
        count += all_trees(n, |g| {
            let dp = l_of_tree(g).map_err(|e| e.to_string())?;
            let bf = oracle::max_linear_forest_bf(g).map_err(|e| e.to_string())?.value;
            ensure(dp == bf, || format!("dp {dp} != oracle {bf}"))
        })?;
    }
    Ok(format!("{count} labeled trees, n=2..9"))
}

fn random_connected(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(2..=7);
    let tree = random_tree_with(n, rng).expect("n >= 1");
    let extra = rng.gen_range(0..=5);
    let mut added = Vec::new();
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let e = (u.min(v), u.max(v));
        if u != v && !tree.has_edge(u, v) && !added.contains(&e) {
            added.push(e);
        }
    }
    tree.with_added_edges(added).expect("fresh edges")
}

fn line_graph_correspondence() -> Outcome {
    const INSTANCES: u64 = 12_000;
    let oracle = Oracle::default();
    let cyclic: Vec<bool> = (0..INSTANCES)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x11_0000 + i);
            let g = random_connected(&mut rng);
            let lg = line_graph(&g).graph;
            let l = oracle.max_linear_forest(&g).map_err(|e| e.to_string())?.value;
            let f = oracle.max_induced_forest(&lg).map_err(|e| e.to_string())?.value;
            let p = oracle.longest_path(&g).map_err(|e| e.to_string())?.value;
            let t = oracle.max_induced_tree(&lg).map_err(|e| e.to_string())?.value;
            ensure(l == f && p == t, || format!("l={l} f(L)={f} p={p} t(L)={t} on {:?}", g.edges()))?;
            Ok(g.m() >= g.n())
        })
        .collect::<Result<_, String>>()?;
    let with_cycles = cyclic.iter().filter(|&&c| c).count();
    Ok(format!("{INSTANCES} connected graphs n<=7 ({with_cycles} with cycles)"))
}

fn perfect_kary_formula() -> Outcome {
    let oracle = Oracle::default();
    let mut instances = 0;
    let mut confirmed = 0;
    for k in 2..=5usize {
        for h in 1.. {
            let Some(n) = perfect_kary_order(k, h).filter(|&n| n <= 10_000) else { break };
            let g = perfect_kary(k, h).map_err(|e| e.to_string())?;
            let closed = perfect_kary_l(n as i64, k as i64).map_err(|e| e.to_string())?;
            let rec = perfect_kary_recurrence(k as i64, h as u32).map_err(|e| e.to_string())?;
            let dp = l_of_tree(&g).map_err(|e| e.to_string())? as i64;
            ensure(closed == rec && rec == dp, || format!("k={k} h={h}: closed {closed} rec {rec} dp {dp}"))?;
            if n <= 13 {
                let bf = oracle.max_linear_forest(&g).map_err(|e| e.to_string())?.value as i64;
                ensure(bf == dp, || format!("k={k} h={h}: oracle {bf} dp {dp}"))?;
                confirmed += 1;
            }
            instances += 1;
        }
    }
    let l23 = l_of_tree(&perfect_kary(2, 3).unwrap()).unwrap();
    let l33 = l_of_tree(&perfect_kary(3, 3).unwrap()).unwrap();
    ensure(l23 == 4 && l33 == 6, || format!("l(2,3)={l23} l(3,3)={l33}"))?;
    Ok(format!("{instances} (k,h) instances, {confirmed} oracle-confirmed, l(2,3)=4 l(3,3)=6"))
}

fn diameter_theorem(summary: &linforest::verify::VerifySummary) -> Outcome {
    for theorem in [Theorem::DiameterL, Theorem::DiameterLFine] {
        let t = summary.tally(theorem);
        ensure(t.violations == 0, || format!("{theorem}: {} violations", t.violations))?;
    }
    let checked = summary.tally(Theorem::DiameterL).checked;
    let mut built = 0;
    for d in 4..=9usize {
        let r = d / 2;
        for n in d + 1..=60 {
            let (_, upper) = diam_bounds_l(n as i64, d as i64).unwrap();
            let fine = diam_upper_l_fine(n as i64, d as i64).unwrap();
            let mut specs = vec![(Extremal::LowerSpider { n, d }, Some(d as i64))];
            if d % 2 == 0 {
                specs.push((Extremal::TStar { n, d }, Some(upper)));
            } else {
                specs.push((Extremal::T1Star { n, d }, (n <= 4 * r + 1).then_some(fine)));
                specs.push((Extremal::T2Star { n, d }, Some(upper)));
            }
            for (spec, target) in specs {
                let Ok(g) = spec.build() else {
                    ensure(matches!(spec, Extremal::T2Star { .. }) && n < 4 * r + 2, || format!("{spec:?} infeasible"))?;
                    continue;
                };
                let l = l_of_tree(&g).map_err(|e| e.to_string())? as i64;
                let want = spec.predicted_l().map_err(|e| e.to_string())? as i64;
                ensure(g.n() == n && diameter(&g) == d, || format!("{spec:?}: wrong shape"))?;
                ensure(l == want, || format!("{spec:?}: l {l}, predicted {want}"))?;
                if let Some(target) = target {
                    ensure(l == target, || format!("{spec:?}: l {l}, bound {target}"))?;
                }
                built += 1;
            }
        }
    }
    Ok(format!("{checked} trees n<=9 with d>=4 in bounds; {built} extremal trees n<=60 d=4..9 attain their values"))
}

fn hamiltonian_completion(summary: &linforest::verify::VerifySummary) -> Outcome {
    let t = summary.tally(Theorem::HcBounds);
    ensure(t.violations == 0, || format!("hc bounds: {} violations", t.violations))?;
    let oracle = Oracle::default();
    let check = |g: &Graph| -> Result<(), String> {
        let stats = stats_of_tree(g).map_err(|e| e.to_string())?;
        let done = hc_construct(g).map_err(|e| e.to_string())?;
        ensure(done.added_edges.len() == stats.out - 1, || {
            format!("{} edges added, out-1 = {}", done.added_edges.len(), stats.out - 1)
        })?;
        let h = g.with_added_edges(done.added_edges.iter().copied()).map_err(|e| e.to_string())?;
        ensure(is_hamiltonian_cycle(&h, &done.cycle), || "cycle certificate rejected".into())?;
        if h.n() <= oracle.caps.hc_vertices {
            ensure(oracle.is_hamiltonian(&h).map_err(|e| e.to_string())?, || "oracle finds no cycle".into())?;
        }
        let lower = hc_lower_bound(&stats);
        let hc = g.n() - l_of_tree(g).unwrap();
        ensure(lower <= hc && hc < stats.out, || format!("{lower} <= {hc} <= {} fails", stats.out - 1))
    };
    let mut exhaustive = 0;
    for n in 3..=8 {
        exhaustive += all_trees(n, check)?;
    }
    const SAMPLES: u64 = 10_000;
    (0..SAMPLES).into_par_iter().try_for_each(|i| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x55_0000 + i);
        let n = rng.gen_range(3..=12);
        let g = random_tree_with(n, &mut rng).unwrap();
        check(&g).map_err(|e| format!("{e} on {:?}", g.edges()))
    })?;
    Ok(format!(
        "bounds on {} trees n<=9; construction on {exhaustive} trees n=3..8 and {SAMPLES} random trees n<=12",
        t.checked
    ))
}

fn leaf_exchange_monotone() -> Outcome {
    let mut cfg = VerifyConfig::new(8);
    cfg.exchange = ExchangeSampling::All;
    cfg.oracle_max_m = 0;
    let summary = verify_theorems(&cfg).map_err(|e| e.to_string())?;
    let t = summary.tally(Theorem::LeafExchange);
    ensure(t.violations == 0, || summary.to_text())?;
    // Independent recount without the harness.
    let mut pairs = 0u64;
    for n in 3..=7 {
        for g in enumerate_trees(n).unwrap() {
            let l = l_of_tree(&g).unwrap();
            let leaves: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 1).collect();
            for &a in &leaves {
                for &b in leaves.iter().filter(|&&b| b != a) {
                    let after = l_of_tree(&leaf_exchange(&g, a, b).unwrap()).unwrap();
                    ensure(after >= l, || format!("{:?}: {a}->{b} drops l", g.edges()))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{} ordered leaf pairs over trees n<=8 (recount n<=7: {pairs})", t.checked))
}

fn kary_bounds() -> Outcome {
    let mut count = 0;
    for k in 2..=4usize {
        let max_internal = (400 - 1) / k;
        for i in 0..250u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(0x77_0000 + 1000 * k as u64 + i);
            let internal = rng.gen_range(1..=max_internal);
            let g = random_kary(k, internal, &mut rng).map_err(|e| e.to_string())?;
            let n = g.n();
            let l = Rational::from_integer(l_of_tree(&g).unwrap() as i64);
            let (lo, hi) = kary_bounds_l(n as i64, k as i64).map_err(|e| e.to_string())?;
            ensure(lo <= l && l <= hi, || format!("k={k} n={n}: {lo} <= {l} <= {hi} fails"))?;
            count += 1;
        }
        for n in (1 + k..=400).step_by(k) {
            let g = kary_caterpillar(n, k).map_err(|e| e.to_string())?;
            let l = l_of_tree(&g).unwrap() as i64;
            let want = kary_caterpillar_l(n as i64, k as i64).map_err(|e| e.to_string())?;
            ensure(l == want, || format!("caterpillar k={k} n={n}: l {l} formula {want}"))?;
            if k >= 3 {
                let (_, hi) = kary_bounds_l(n as i64, k as i64).unwrap();
                ensure(Rational::from_integer(l) == hi, || format!("caterpillar k={k} n={n} below {hi}"))?;
            } else {
                let parity = if ((n - 1) / 2) % 2 == 0 { 3 * (n - 1) / 4 } else { (3 * n - 1) / 4 };
                ensure(l == parity as i64, || format!("caterpillar k=2 n={n}: l {l} parity formula {parity}"))?;
            }
        }
    }
    Ok(format!("{count} random k-ary trees k=2..4 n<=400; caterpillars n<=400"))
}

fn decycling_corollaries(summary: &linforest::verify::VerifySummary) -> Outcome {
    let oracle = Oracle::default();
    let mut identity = 0;
    for n in 1..=8 {
        identity += all_trees(n, |g| {
            let l = l_of_tree(g).map_err(|e| e.to_string())?;
            let lg = line_graph(g).graph;
            let nabla = oracle.decycling_number(&lg).map_err(|e| e.to_string())?.value;
            ensure(nabla == n - 1 - l, || format!("oracle {nabla} != n-1-l {}", n - 1 - l))?;
            let d = diameter(g);
            if d >= 4 {
                let (lo, hi) = diam_bounds_decycling(n as i64, d as i64).unwrap();
                ensure(lo <= nabla as i64 && nabla as i64 <= hi, || format!("{lo} <= {nabla} <= {hi} fails"))?;
            }
            Ok(())
        })?;
    }
    let t = summary.tally(Theorem::DiameterDecycling);
    ensure(t.violations == 0, || format!("decycling bounds n<=9: {} violations", t.violations))?;
    for (k, h) in [(2, 2), (2, 3), (3, 2)] {
        let g = perfect_kary(k, h).unwrap();
        let want = perfect_kary_decycling(g.n() as i64, k as i64).map_err(|e| e.to_string())?;
        let got = oracle.decycling_number(&line_graph(&g).graph).map_err(|e| e.to_string())?.value as i64;
        ensure(want == got, || format!("perfect k={k} h={h}: formula {want} oracle {got}"))?;
    }
    Ok(format!(
        "identity on {identity} trees n<=8; corollary bounds on {} trees n<=9; perfect k-ary (2,2) (2,3) (3,2)",
        t.checked
    ))
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("[PASS] {name}: {detail} ({secs:.1}s)");
            true
        }
        Err(e) => {
            println!("[FAIL] {name}: {e} ({secs:.1}s)");
            false
        }
    }
}

fn main() {
    // Shared run over all trees n<=9: diameter, hc and decycling-bound tallies.
    let mut cfg = VerifyConfig::new(9);
    cfg.exchange = ExchangeSampling::PerTree(0);
    cfg.oracle_max_m = 0;
    let summary = verify_theorems(&cfg).expect("n_max within cap");

    let results = [
        run("1 dp-oracle-equivalence", dp_matches_oracle),
        run("2 line-graph-correspondence", line_graph_correspondence),
        run("3 perfect-kary-formula", perfect_kary_formula),
        run("4 diameter-theorem", || diameter_theorem(&summary)),
        run("5 hamiltonian-completion", || hamiltonian_completion(&summary)),
        run("6 leaf-exchange-monotonicity", leaf_exchange_monotone),
        run("7 kary-bounds", kary_bounds),
        run("8 decycling-corollaries", || decycling_corollaries(&summary)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
