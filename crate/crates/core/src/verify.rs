//! Bound reports and the exhaustive verification harness over labeled trees.

use std::fmt;
use std::fmt::Write as _;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{self, Scalar};
use crate::forest::{dp_table, hc_lower_bound, leaf_exchange, l_of_tree};
use crate::generate::{enumerate_tree_range, labeled_tree_count, GenError, LabeledTrees, DEFAULT_ENUMERATION_CAP};
use crate::graph::{line_graph, Graph};
use crate::oracle::{Oracle, OracleCaps, OracleError};
use crate::tree::{root_at_center, tree_stats};
use crate::Rational;

/// Version of the tabular report layout, written as its first line.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    /// `d ≤ l(T) ≤ U(n, d)` for diameter `d ≥ 4`.
    DiameterL,
    /// Odd-diameter refinement: `+3` numerator when `n ≤ 4r+1`.
    DiameterLFine,
    /// Decycling bounds of L(T) in terms of `n` and `d`.
    DiameterDecycling,
    /// `⌈(out+Σex)/2⌉ ≤ hc(T) ≤ out−1`.
    HcBounds,
    /// `l(T[u_i→u_j]) ≥ l(T)`.
    LeafExchange,
    /// Oracle `∇(L(T))` equals `n − 1 − l(T)`.
    DecyclingIdentity,
    /// `(n+k−1)/k ≤ l ≤ (2n−2)/k` for k-ary trees.
    KaryBounds,
    /// Closed form of l for perfect k-ary trees.
    PerfectKary,
    /// `∇(L(G)) ≥ m − n + 1`.
    LineGraphLower,
    /// `m − U(n, p) ≤ ∇(L(G)) ≤ m − p` for longest path `p ≥ 4`.
    LongestPathDecycling,
}

impl Theorem {
    pub const TREE_THEOREMS: [Theorem; 6] = [
        Theorem::DiameterL,
        Theorem::DiameterLFine,
        Theorem::DiameterDecycling,
        Theorem::HcBounds,
        Theorem::LeafExchange,
        Theorem::DecyclingIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::DiameterL => "diameter-l",
            Theorem::DiameterLFine => "diameter-l-fine",
            Theorem::DiameterDecycling => "diameter-decycling",
            Theorem::HcBounds => "hc-bounds",
            Theorem::LeafExchange => "leaf-exchange",
            Theorem::DecyclingIdentity => "decycling-identity",
            Theorem::KaryBounds => "kary-bounds",
            Theorem::PerfectKary => "perfect-kary",
            Theorem::LineGraphLower => "linegraph-lower",
            Theorem::LongestPathDecycling => "longest-path-decycling",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One measured quantity against one theorem's `[lower, upper]` window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub theorem: Theorem,
    pub measured: Rational,
    pub lower: Rational,
    pub upper: Rational,
}

impl BoundCheck {
    fn new<T: Into<Rational>>(theorem: Theorem, measured: T, lower: T, upper: T) -> Self {
        BoundCheck { theorem, measured: measured.into(), lower: lower.into(), upper: upper.into() }
    }

    pub fn holds(&self) -> bool {
        self.lower <= self.measured && self.measured <= self.upper
    }

    pub fn saturates_lower(&self) -> bool {
        self.measured == self.lower
    }

    pub fn saturates_upper(&self) -> bool {
        self.measured == self.upper
    }

    pub fn saturated(&self) -> bool {
        self.saturates_lower() || self.saturates_upper()
    }
}

/// Invariants of one graph and the bound checks it is in scope for.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundReport {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub d: Option<usize>,
    pub p: Option<usize>,
    pub k: Option<usize>,
    pub h: Option<u32>,
    pub l: Option<usize>,
    pub hc: Option<usize>,
    /// ∇ of the line graph.
    pub decycling: Option<usize>,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn violations(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(BoundCheck::holds)
    }

    pub fn check(&self, theorem: Theorem) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.theorem == theorem)
    }

    /// Human-readable block: one header line and one line per check.
    pub fn to_text(&self) -> String {
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        let mut out = format!(
            "graph {}: n={} m={} d={} p={} l={} hc={} decycling(L)={}\n",
            self.graph,
            self.n,
            self.m,
            opt(self.d),
            opt(self.p),
            opt(self.l),
            opt(self.hc),
            opt(self.decycling)
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  {:<24} {} <= {} <= {}  {}{}",
                c.theorem.name(),
                c.lower,
                c.measured,
                c.upper,
                if c.holds() { "ok" } else { "VIOLATED" },
                if c.saturated() { " (tight)" } else { "" }
            );
        }
        out
    }

    /// Rows in the tabular layout (see [`csv_header`]), one per check.
    pub fn csv_rows(&self) -> Vec<String> {
        let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "check,{},{},{},{},{},{},{},{},{},{},,,,",
                    c.theorem,
                    self.graph,
                    self.n,
                    self.m,
                    opt(self.d),
                    opt(self.l),
                    c.measured,
                    c.lower,
                    c.upper,
                    c.holds()
                )
            })
            .collect()
    }
}

/// Header of the tabular report. `record` is `check` for per-graph rows and
/// `summary` for per-theorem totals; columns that do not apply are empty.
pub fn csv_header() -> String {
    format!(
        "# linforest report schema {REPORT_SCHEMA_VERSION}\n\
         record,theorem,graph,n,m,d,l,measured,lower,upper,holds,checked,skipped,saturating,violations"
    )
}

fn ratio(x: usize) -> Rational {
    Ratio::from_integer(x as i64)
}

fn int<T: Scalar>(x: usize) -> T {
    T::from_usize(x).expect("graph sizes fit the scalar")
}

/// Evaluates every tree theorem except leaf exchange. `oracle_max_m` bounds
/// the line-graph order for the oracle decycling check; `mutate` lowers every
/// upper bound by one (harness self-test).
pub fn tree_report(g: &Graph, description: &str, oracle_max_m: usize, mutate: bool) -> BoundReport {
    let t = root_at_center(g.clone()).expect("tree_report needs a tree");
    let stats = tree_stats(&t);
    let n = g.n();
    let l = dp_table(&t).f[t.root()];
    let bump = |x: i64| if mutate { x - 1 } else { x };
    let mut report = BoundReport {
        graph: description.to_string(),
        n,
        m: g.m(),
        d: Some(stats.diameter),
        p: Some(stats.diameter),
        l: Some(l),
        ..Default::default()
    };
    let d = stats.diameter;
    if d >= 4 {
        let (lo, hi) = bounds::diam_bounds_l::<i64>(int(n), int(d)).expect("d >= 4 and n >= d+1");
        report.checks.push(BoundCheck::new(Theorem::DiameterL, l as i64, lo, bump(hi)));
        let fine = bounds::diam_upper_l_fine::<i64>(int(n), int(d)).expect("same preconditions");
        report.checks.push(BoundCheck::new(Theorem::DiameterLFine, l as i64, lo, bump(fine)));
        let (dlo, dhi) = bounds::diam_bounds_decycling::<i64>(int(n), int(d)).expect("same preconditions");
        let derived = (n - 1 - l) as i64;
        report.checks.push(BoundCheck::new(Theorem::DiameterDecycling, derived, dlo, bump(dhi)));
    }
    if n >= 2 {
        let hc = n - l;
        report.hc = Some(hc);
        let lower = hc_lower_bound(&stats) as i64;
        let upper = stats.out as i64 - 1;
        report.checks.push(BoundCheck::new(Theorem::HcBounds, hc as i64, lower, bump(upper)));
    }
    if n >= 1 && g.m() <= oracle_max_m {
        let oracle = Oracle::new(OracleCaps { vertices: oracle_max_m, ..OracleCaps::default() });
        let lg = line_graph(g).graph;
        let measured = oracle.decycling_number(&lg).expect("within cap").value;
        report.decycling = Some(measured);
        let expected = (n - 1 - l) as i64;
        report.checks.push(BoundCheck::new(Theorem::DecyclingIdentity, measured as i64, expected, bump(expected)));
    }
    report
}

/// k-ary bounds, plus the perfect k-ary closed form when `g` is perfect.
pub fn kary_report(g: &Graph, k: usize, description: &str) -> Result<BoundReport, crate::bounds::BoundsError> {
    let l = l_of_tree(g).expect("kary_report needs a tree");
    let n = g.n();
    let (lo, hi) = bounds::kary_bounds_l::<i64>(int(n), int(k))?;
    let mut report = BoundReport {
        graph: description.to_string(),
        n,
        m: g.m(),
        k: Some(k),
        l: Some(l),
        checks: vec![BoundCheck { theorem: Theorem::KaryBounds, measured: ratio(l), lower: lo, upper: hi }],
        ..Default::default()
    };
    if let Ok(h) = bounds::perfect_kary_height::<i64>(&int(n), &int(k)) {
        let t = root_at_center(g.clone()).expect("tree");
        let perfect = t.height() + 1 == h as usize
            && (0..n).all(|v| t.children(v).is_empty() || t.children(v).len() == k)
            && (0..n).all(|v| !t.children(v).is_empty() || t.depth(v) + 1 == h as usize);
        if perfect {
            report.h = Some(h);
            let want = bounds::perfect_kary_l::<i64>(int(n), int(k))?;
            report.checks.push(BoundCheck::new(Theorem::PerfectKary, l as i64, want, want));
        }
    }
    Ok(report)
}

/// Line-graph bounds for a connected general graph, by oracle.
pub fn graph_report(g: &Graph, description: &str, oracle: &Oracle) -> Result<BoundReport, OracleError> {
    let l = oracle.max_linear_forest(g)?.value;
    let p = oracle.longest_path(g)?.value;
    let lg = line_graph(g).graph;
    let nabla = oracle.decycling_number(&lg)?.value;
    let (n, m) = (g.n(), g.m());
    let mut report = BoundReport {
        graph: description.to_string(),
        n,
        m,
        p: Some(p),
        l: Some(l),
        decycling: Some(nabla),
        ..Default::default()
    };
    let lower = bounds::line_graph_decycling_lower::<i64>(int(n), int(m));
    report.checks.push(BoundCheck::new(Theorem::LineGraphLower, nabla as i64, lower, m as i64));
    if p >= 4 {
        let (lo, hi) = bounds::longest_path_decycling_bounds::<i64>(int(n), int(m), int(p)).expect("p >= 4");
        report.checks.push(BoundCheck::new(Theorem::LongestPathDecycling, nabla as i64, lo, hi));
    }
    Ok(report)
}

/// How many ordered leaf pairs to exchange per tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExchangeSampling {
    All,
    /// At most this many pairs, drawn from the run seed and the tree index.
    PerTree(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub enumeration_cap: usize,
    pub exchange: ExchangeSampling,
    /// Largest tree edge count (line-graph order) checked by the oracle.
    pub oracle_max_m: usize,
    pub mutate_bounds: bool,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(n_max: usize) -> Self {
        VerifyConfig {
            n_max,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            exchange: ExchangeSampling::PerTree(4),
            oracle_max_m: 8,
            mutate_bounds: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TheoremTally {
    pub checked: u64,
    pub skipped: u64,
    pub saturating: u64,
    pub violations: u64,
}

impl TheoremTally {
    fn merge(&mut self, other: &TheoremTally) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.saturating += other.saturating;
        self.violations += other.violations;
    }
}

/// Totals per theorem plus every violating report, in Prüfer order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifySummary {
    pub n_max: usize,
    pub trees: u64,
    pub tallies: Vec<(Theorem, TheoremTally)>,
    pub violations: Vec<BoundReport>,
    /// Odd-diameter trees whose ∇(L(T)) equals `⌈(n−d−2)/(d−2)⌉`, showing
    /// that the weaker variant with an extra `−1` is never attained.
    pub odd_decycling_lower_tight: u64,
}

impl VerifySummary {
    fn empty(n_max: usize) -> Self {
        VerifySummary {
            n_max,
            tallies: Theorem::TREE_THEOREMS.iter().map(|&t| (t, TheoremTally::default())).collect(),
            ..Default::default()
        }
    }

    pub fn tally(&self, theorem: Theorem) -> TheoremTally {
        self.tallies
            .iter()
            .find(|(t, _)| *t == theorem)
            .map(|(_, tally)| *tally)
            .unwrap_or_default()
    }

    pub fn total_violations(&self) -> u64 {
        self.tallies.iter().map(|(_, t)| t.violations).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.total_violations() == 0
    }

    fn absorb(&mut self, other: VerifySummary) {
        self.trees += other.trees;
        for ((_, mine), (_, theirs)) in self.tallies.iter_mut().zip(&other.tallies) {
            mine.merge(theirs);
        }
        self.violations.extend(other.violations);
        self.odd_decycling_lower_tight += other.odd_decycling_lower_tight;
    }

    fn tally_mut(&mut self, theorem: Theorem) -> &mut TheoremTally {
        &mut self.tallies.iter_mut().find(|(t, _)| *t == theorem).expect("tree theorem").1
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for report in &self.violations {
            out.push_str(&report.to_text());
        }
        for (theorem, t) in &self.tallies {
            let _ = writeln!(
                out,
                "theorem {theorem}: {} checks over {} trees n<={}, {} skipped, {} saturating, {} violations",
                t.checked, self.trees, self.n_max, t.skipped, t.saturating, t.violations
            );
        }
        let _ = writeln!(
            out,
            "note: odd-diameter decycling lower bound ceil((n-d-2)/(d-2)) attained by {} trees; \
             the variant with an extra -1 is never tight",
            self.odd_decycling_lower_tight
        );
        let _ = writeln!(
            out,
            "result: {}",
            if self.is_clean() { "verified".to_string() } else { format!("{} violations", self.total_violations()) }
        );
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = csv_header();
        out.push('\n');
        for (theorem, t) in &self.tallies {
            let _ = writeln!(
                out,
                "summary,{theorem},,,,,,,,,,{},{},{},{}",
                t.checked, t.skipped, t.saturating, t.violations
            );
        }
        for report in &self.violations {
            for row in report.csv_rows() {
                out.push_str(&row);
                out.push('\n');
            }
        }
        out
    }
}

fn describe(seq: &[usize], n: usize) -> String {
    let body: Vec<String> = seq.iter().map(usize::to_string).collect();
    format!("prufer{n}:[{}]", body.join("-"))
}

fn verify_one(g: &Graph, seq: &[usize], index: u64, cfg: &VerifyConfig, acc: &mut VerifySummary) {
    let n = g.n();
    acc.trees += 1;
    let mut report = tree_report(g, &describe(seq, n), cfg.oracle_max_m, cfg.mutate_bounds);
    let present: Vec<Theorem> = report.checks.iter().map(|c| c.theorem).collect();
    for theorem in [
        Theorem::DiameterL,
        Theorem::DiameterLFine,
        Theorem::DiameterDecycling,
        Theorem::HcBounds,
        Theorem::DecyclingIdentity,
    ] {
        if !present.contains(&theorem) {
            acc.tally_mut(theorem).skipped += 1;
        }
    }
    for c in &report.checks {
        let tally = acc.tally_mut(c.theorem);
        tally.checked += 1;
        tally.saturating += u64::from(c.saturated());
        tally.violations += u64::from(!c.holds());
    }
    if let (Some(d), Some(l)) = (report.d, report.l) {
        if d >= 5 && d % 2 == 1 && n > d {
            let (lo, _) = bounds::diam_bounds_decycling::<i64>(n as i64, d as i64).expect("d >= 5");
            acc.odd_decycling_lower_tight += u64::from((n - 1 - l) as i64 == lo);
        }
    }

    // Leaf exchange.
    let l = report.l.expect("tree report has l");
    let leaves: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    let mut pairs: Vec<(usize, usize)> = leaves
        .iter()
        .flat_map(|&a| leaves.iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
        .collect();
    if let ExchangeSampling::PerTree(limit) = cfg.exchange {
        if pairs.len() > limit {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (n as u64) << 56 ^ index);
            pairs.shuffle(&mut rng);
            pairs.truncate(limit);
            pairs.sort_unstable();
        }
    }
    if pairs.is_empty() {
        acc.tally_mut(Theorem::LeafExchange).skipped += 1;
    }
    for (a, b) in pairs {
        let moved = leaf_exchange(g, a, b).expect("distinct leaves of a tree");
        let after = l_of_tree(&moved).expect("leaf exchange keeps a tree");
        let upper = if cfg.mutate_bounds { l as i64 - 1 } else { n as i64 - 1 };
        let check = BoundCheck::new(Theorem::LeafExchange, after as i64, l as i64, upper.max(l as i64 - 1));
        let tally = acc.tally_mut(Theorem::LeafExchange);
        tally.checked += 1;
        tally.saturating += u64::from(check.saturates_lower());
        if !check.holds() {
            tally.violations += 1;
            report.checks.push(check);
        }
    }

    if !report.all_hold() {
        report.checks.retain(|c| !c.holds());
        acc.violations.push(report);
    }
}

const CHUNK: u64 = 1 << 12;

/// Checks every tree theorem on all labeled trees with `1 ≤ n ≤ n_max`,
/// splitting each Prüfer space into chunks processed in parallel and merged
/// in sequence order.
pub fn verify_theorems(cfg: &VerifyConfig) -> Result<VerifySummary, GenError> {
    if cfg.n_max > cfg.enumeration_cap {
        return Err(GenError::CapExceeded { n: cfg.n_max, cap: cfg.enumeration_cap });
    }
    let mut summary = VerifySummary::empty(cfg.n_max);
    for n in 1..=cfg.n_max {
        let total = labeled_tree_count(n).expect("n within cap");
        let starts: Vec<u64> = (0..total).step_by(CHUNK as usize).collect();
        let parts: Vec<VerifySummary> = starts
            .into_par_iter()
            .map(|start| {
                let end = (start + CHUNK).min(total);
                let mut acc = VerifySummary::empty(cfg.n_max);
                let mut trees: LabeledTrees =
                    enumerate_tree_range(n, start..end, cfg.enumeration_cap).expect("range within space");
                loop {
                    let index = trees.position();
                    let seq = trees.sequence().to_vec();
                    let Some(g) = trees.next() else { break };
                    verify_one(&g, &seq, index, cfg, &mut acc);
                }
                acc
            })
            .collect();
        for part in parts {
            summary.absorb(part);
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{path, perfect_kary, spider, star};

    #[test]
    fn reports_for_small_trees() {
        let r = tree_report(&spider(&[2, 2, 2]).unwrap(), "spider", 8, false);
        assert_eq!((r.l, r.hc, r.d, r.decycling), (Some(5), Some(2), Some(4), Some(1)));
        assert!(r.all_hold());
        let dl = r.check(Theorem::DiameterL).unwrap();
        assert_eq!((dl.lower, dl.upper), (ratio(4), ratio(5)));
        assert!(dl.saturates_upper());

        let r = tree_report(&star(4).unwrap(), "claw", 8, false);
        assert!(r.check(Theorem::DiameterL).is_none());
        assert_eq!(r.decycling, Some(1));
        assert!(r.all_hold());
    }

    #[test]
    fn kary_reports() {
        let r = kary_report(&perfect_kary(2, 3).unwrap(), 2, "p23").unwrap();
        assert_eq!(r.h, Some(3));
        assert!(r.all_hold());
        assert!(r.check(Theorem::PerfectKary).is_some());
        let r = kary_report(&crate::generate::kary(2, &[vec![0], vec![0]]).unwrap(), 2, "k").unwrap();
        assert!(r.check(Theorem::PerfectKary).is_none());
        assert!(kary_report(&path(4).unwrap(), 2, "p4").is_err());
    }

    #[test]
    fn general_graph_report() {
        let c6 = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let r = graph_report(&c6, "c6", &Oracle::default()).unwrap();
        assert_eq!((r.l, r.p, r.decycling), (Some(5), Some(5), Some(1)));
        assert!(r.all_hold());
    }

    #[test]
    fn small_runs_are_clean() {
        let s = verify_theorems(&VerifyConfig::new(7)).unwrap();
        assert!(s.is_clean(), "{}", s.to_text());
        assert_eq!(s.trees, 1 + 1 + 3 + 16 + 125 + 1296 + 16807);
        assert!(s.tally(Theorem::DiameterL).checked > 0);

        let s = verify_theorems(&VerifyConfig::new(3)).unwrap();
        assert!(s.is_clean());
        assert_eq!(s.tally(Theorem::DiameterL).checked, 0);
        assert_eq!(s.tally(Theorem::DiameterL).skipped, 5);
        assert_eq!(s.tally(Theorem::HcBounds).checked, 4);
    }

    #[test]
    fn mutated_bounds_are_caught() {
        let mut cfg = VerifyConfig::new(6);
        cfg.mutate_bounds = true;
        let s = verify_theorems(&cfg).unwrap();
        assert!(!s.is_clean());
        assert!(s.tally(Theorem::DiameterL).violations > 0);
        assert!(s.to_text().contains("VIOLATED"));
        assert!(s.to_csv().lines().any(|l| l.starts_with("check,diameter-l,")));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            verify_theorems(&VerifyConfig::new(25)),
            Err(GenError::CapExceeded { n: 25, .. })
        ));
    }

    #[test]
    fn output_is_deterministic() {
        let cfg = VerifyConfig::new(6);
        let a = verify_theorems(&cfg).unwrap().to_csv();
        let b = verify_theorems(&cfg).unwrap().to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("# linforest report schema 1\nrecord,theorem,"));
    }
}
