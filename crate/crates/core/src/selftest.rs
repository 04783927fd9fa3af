//! The acceptance suite: one check per criterion, shared by the test
//! harness and the `selftest` command.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{compose, star_expand, BDiagram};
use crate::enumeration::{crosscheck, d_table, enumerate_all, hfup_histogram, shard_count, visit_lambda};
use crate::fusion::{diagram_of, fstar, word_of, FusionSum};
use crate::heisenberg::{
    mul, normal_order, parse_expr, project, stirling, NormalMonomial, NormalPoly, Route,
};
use crate::heisenberg::{diagram_product, vertex_diagram};
use crate::hopf::{coproduct, counit, eulerian, is_primitive, iterated_coproducts, star, Coeff, DiagramSum, TensorSum};
use crate::partitions::{
    b_of, bwsym_product_oracle, g21_diagrams, lists_of_m, m_of, partition_of_b, wsym_product_oracle, SetPartition,
    SetPartitionIntoLists,
};

/// Rows of `d_{p,q}` for `p = 0..=6`.
pub const REFERENCE_D_TABLE: [&[u64]; 7] = [
    &[1],
    &[2, 2],
    &[10, 18, 8],
    &[62, 154, 124, 32],
    &[462, 1426, 1596, 760, 128],
    &[3982, 14506, 20380, 13680, 4336, 512],
    &[38646, 161042, 269284, 229448, 104032, 23520, 2048],
];

/// Number of diagrams of weight `p = 0..=6`.
pub const REFERENCE_ALPHA: [u64; 7] = [1, 4, 36, 372, 4372, 57396, 828020];

/// Seed for the random weight-3 samples.
pub const SAMPLE_SEED: u64 = 0x5eed_b1a6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Deep,
}

impl std::str::FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Level::Quick),
            "deep" => Ok(Level::Deep),
            _ => Err(format!("unknown level '{s}' (expected quick or deep)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2} {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "enumeration table"),
    (2, "recurrence agreement"),
    (3, "totals"),
    (4, "normal-ordering identity"),
    (5, "star-product golden counts"),
    (6, "Hopf axiom suite"),
    (7, "word-realization morphism"),
    (8, "primitives"),
    (9, "Stirling tables"),
    (10, "WSym"),
    (11, "BWSym"),
    (12, "projection morphism"),
];

/// Accumulates named sub-checks; the first failure is kept as the detail.
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks { failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) -> (bool, String) {
        if self.failures.is_empty() {
            (true, self.notes.join("; "))
        } else {
            let shown: Vec<_> = self.failures.iter().take(3).cloned().collect();
            (false, format!("{} failure(s): {}", self.failures.len(), shown.join("; ")))
        }
    }
}

fn row_string(v: &[BigUint]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn reference_row(p: u32) -> Vec<BigUint> {
    REFERENCE_D_TABLE[p as usize].iter().map(|&x| BigUint::from(x)).collect()
}

/// All diagrams of each weight `0..=p`.
pub fn diagrams_by_weight(p: u32) -> Vec<Vec<BDiagram>> {
    (0..=p).map(|w| enumerate_all(w, shard_count())).collect()
}

/// The pair population: all weight-1 pairs, all weight-2 pairs, and
/// `random` seeded pairs of weight-3 diagrams.
pub fn pair_population(by_weight: &[Vec<BDiagram>], random: usize, seed: u64) -> Vec<(BDiagram, BDiagram)> {
    let mut pairs = Vec::new();
    for w in [1, 2] {
        for g in &by_weight[w] {
            for h in &by_weight[w] {
                pairs.push((g.clone(), h.clone()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let g = by_weight[3].choose(&mut rng).expect("weight 3 is nonempty");
        let h = by_weight[3].choose(&mut rng).expect("weight 3 is nonempty");
        pairs.push((g.clone(), h.clone()));
    }
    pairs
}

fn timed(id: u8, level: Level, f: fn(Level) -> (bool, String)) -> CriterionReport {
    let title = CRITERIA[id as usize - 1].1;
    let start = Instant::now();
    let (passed, detail) = f(level);
    CriterionReport { id, title, passed, detail, elapsed: start.elapsed() }
}

pub fn run_criterion(id: u8, level: Level) -> Option<CriterionReport> {
    let f: fn(Level) -> (bool, String) = match id {
        1 => enumeration_table,
        2 => recurrence_agreement,
        3 => totals,
        4 => normal_ordering_identity,
        5 => golden_counts,
        6 => hopf_axioms,
        7 => word_morphism,
        8 => primitives,
        9 => stirling_tables,
        10 => wsym,
        11 => bwsym,
        12 => projection_morphism,
        _ => return None,
    };
    Some(timed(id, level, f))
}

pub fn run_all(level: Level) -> Vec<CriterionReport> {
    CRITERIA.iter().filter_map(|&(id, _)| run_criterion(id, level)).collect()
}

fn max_weight(level: Level) -> u32 {
    match level {
        Level::Quick => 5,
        Level::Deep => 6,
    }
}

fn enumeration_table(level: Level) -> (bool, String) {
    let mut c = Checks::new();
    let start = Instant::now();
    let mut last = Vec::new();
    for p in 0..=max_weight(level) {
        let brute = hfup_histogram(p, shard_count());
        c.check(brute == reference_row(p), || format!("p={p}: got {}", row_string(&brute)));
        last = brute;
    }
    let limit = if level == Level::Deep { 600 } else { 60 };
    let secs = start.elapsed().as_secs_f64();
    c.check(secs <= limit as f64, || format!("took {secs:.1}s, limit {limit}s"));
    c.note(format!("p={} row {}", max_weight(level), row_string(&last)));
    c.finish()
}

fn recurrence_agreement(level: Level) -> (bool, String) {
    let mut c = Checks::new();
    for p in 0..=max_weight(level) {
        let report = crosscheck(p, shard_count());
        c.check(report.is_ok(), || {
            let m = report.mismatches();
            format!("p={p}: {} mismatched cell(s), first q={}", m.len(), m[0].0)
        });
    }
    c.note(format!("d_table equals brute force for p <= {}", max_weight(level)));
    c.finish()
}

fn totals(level: Level) -> (bool, String) {
    let mut c = Checks::new();
    let table = d_table(6);
    let p_max = max_weight(level);
    let mut got = Vec::new();
    for p in 0..=p_max {
        let a = table.alpha(p);
        c.check(a == BigUint::from(REFERENCE_ALPHA[p as usize]), || format!("alpha_{p} = {a}"));
        got.push(a);
    }
    for p in 0..=p_max.min(5) {
        let n = enumerate_all(p, shard_count()).len() as u64;
        c.check(n == REFERENCE_ALPHA[p as usize], || format!("enumerated {n} diagrams of weight {p}"));
    }
    c.note(format!("alpha = {}", row_string(&got)));
    c.finish()
}

fn normal_ordering_identity(_: Level) -> (bool, String) {
    let mut c = Checks::new();
    let expr = parse_expr("a+^2 a^2 * a+^2 a^2").expect("valid expression");
    let mut expected = NormalPoly::zero();
    for (k, coef) in [(4, 1), (3, 4), (2, 2)] {
        expected.add_term(NormalMonomial::new(k, k, 0, 0), coef.into());
    }
    for route in Route::ALL {
        let got = normal_order(&expr, route);
        c.check(got == expected, || format!("{route} route gave {}", got.to_string().trim().replace('\n', " + ")));
    }
    let g = vertex_diagram(2, 2).expect("valid");
    let sum = diagram_product(&[(2, 2), (2, 2)]).expect("valid");
    let mut expanded = star_expand(&g, &g);
    expanded.sort();
    let keys: Vec<BDiagram> = sum.iter().map(|(d, _)| d.clone()).collect();
    c.check(keys == expanded && sum.iter().all(|(_, k)| k.is_one()), || {
        format!("diagram route has {} terms, expected the 7 compositions", sum.len())
    });
    let mut mult: BTreeMap<NormalMonomial, usize> = BTreeMap::new();
    for (d, _) in sum.iter() {
        *mult.entry(project(d).collapse()).or_default() += 1;
    }
    let got: Vec<usize> = [4, 3, 2].iter().map(|&k| mult.get(&NormalMonomial::new(k, k, 0, 0)).copied().unwrap_or(0)).collect();
    c.check(got == [1, 4, 2], || format!("multiplicities {got:?}"));
    c.note("(a+)^2 a^2 . (a+)^2 a^2 = (a+)^4 a^4 + 4 (a+)^3 a^3 + 2 (a+)^2 a^2 on all three routes; 7 diagrams split 1/4/2");
    c.finish()
}

fn golden_counts(_: Level) -> (bool, String) {
    let mut c = Checks::new();
    let fig9 = BDiagram::new(vec![2], vec![1], vec![1, 2], vec![]).expect("valid");
    let fig10 = BDiagram::new(vec![2], vec![1, 2], vec![1, 2], vec![]).expect("valid");
    let n9 = star(&fig9.clone().into(), &fig9.into()).len();
    let n10 = star(&fig10.clone().into(), &fig10.into()).len();
    c.check(n9 == 3, || format!("first product has {n9} terms"));
    c.check(n10 == 7, || format!("second product has {n10} terms"));
    let lower = BDiagram::new(vec![1, 3, 2, 2], vec![1, 3, 4, 6], vec![1, 3, 6, 7], vec![(1, 6), (3, 7)]).expect("valid");
    let upper = BDiagram::new(vec![3, 1, 2], (1..=5).collect(), (1..=6).collect(), vec![(1, 6), (2, 4), (4, 5)]).expect("valid");
    let json = compose(&lower, &upper, &[4, 6], &[3, 1]).map(|g| g.to_json()).unwrap_or_else(|e| e.to_string());
    let expected = r#"{"n":7,"lambda":[1,3,2,2,3,1,2],"up":[1,3,4,6,9,10,11,12,13],"down":[1,3,6,7,9,10,11,12,13,14],"edges":[[1,6],[3,7],[4,11],[6,9],[9,14],[10,12],[12,13]]}"#;
    c.check(json == expected, || format!("composition gave {json}"));
    c.note(format!("{n9} and {n10} terms; composition JSON exact"));
    c.finish()
}

fn tensor_counit_left(t: &TensorSum) -> DiagramSum {
    t.iter().map(|((l, r), k)| (r.clone(), k * counit(&l.clone().into()))).collect()
}

fn tensor_counit_right(t: &TensorSum) -> DiagramSum {
    t.iter().map(|((l, r), k)| (l.clone(), k * counit(&r.clone().into()))).collect()
}

fn coproduct_of_sum(x: &DiagramSum) -> TensorSum {
    crate::hopf::coproduct_sum(x)
}

fn hopf_axioms(level: Level) -> (bool, String) {
    let mut c = Checks::new();
    let by_weight = diagrams_by_weight(3);
    let pairs = pair_population(&by_weight, 200, SAMPLE_SEED);
    for (g, h) in &pairs {
        let lhs = coproduct_of_sum(&star(&g.clone().into(), &h.clone().into()));
        let rhs = coproduct(g).star(&coproduct(h));
        c.check(lhs == rhs, || format!("Delta(G*G') differs for G={g}, G'={h}"));
    }
    let mut triples = 0usize;
    for (g, h) in &pairs {
        for z in &by_weight[1] {
            let (x, y, z) = (DiagramSum::from(g.clone()), DiagramSum::from(h.clone()), DiagramSum::from(z.clone()));
            c.check(star(&star(&x, &y), &z) == star(&x, &star(&y, &z)), || format!("associativity fails for {g}, {h}"));
            triples += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ 1);
    let small: Vec<&BDiagram> = by_weight[1..=3].iter().flatten().collect();
    for _ in 0..20 {
        let t: Vec<DiagramSum> = (0..3).map(|_| (*small.choose(&mut rng).expect("nonempty")).clone().into()).collect();
        c.check(star(&star(&t[0], &t[1]), &t[2]) == star(&t[0], &star(&t[1], &t[2])), || {
            "associativity fails on a random triple".to_string()
        });
        triples += 1;
    }
    if level == Level::Deep {
        let upto2: Vec<DiagramSum> = by_weight[..=2].iter().flatten().map(|g| g.clone().into()).collect();
        for x in &upto2 {
            for y in &upto2 {
                let xy = star(x, y);
                for z in &upto2 {
                    c.check(star(&xy, z) == star(x, &star(y, z)), || "associativity fails at weight <= 2".to_string());
                    triples += 1;
                }
            }
        }
    }
    let mut singles = 0usize;
    for g in by_weight.iter().flatten() {
        let delta = coproduct(g);
        let (left, right) = iterated_coproducts(g);
        c.check(left == right, || format!("coassociativity fails for {g}"));
        c.check(delta.swapped() == delta, || format!("cocommutativity fails for {g}"));
        let x = DiagramSum::from(g.clone());
        c.check(tensor_counit_left(&delta) == x && tensor_counit_right(&delta) == x, || format!("counit law fails for {g}"));
        singles += 1;
    }
    c.note(format!("{} pairs, {triples} triples, {singles} diagrams for coproduct laws", pairs.len()));
    c.finish()
}

fn word_morphism(_: Level) -> (bool, String) {
    let mut c = Checks::new();
    let by_weight = diagrams_by_weight(4);
    let pairs = pair_population(&by_weight, 200, SAMPLE_SEED);
    for (g, h) in &pairs {
        let lhs = fstar(&word_of(g), &word_of(h));
        let rhs: FusionSum = star_expand(g, h).iter().map(word_of).collect();
        c.check(lhs == rhs, || format!("word product differs for G={g}, G'={h}"));
    }
    let mut round = 0usize;
    for g in by_weight.iter().flatten() {
        let back = diagram_of(&word_of(g));
        c.check(back.as_ref().ok() == Some(g), || format!("round trip fails for {g}"));
        round += 1;
    }
    c.note(format!("{} pairs; {round} round trips up to weight 4", pairs.len()));
    c.finish()
}

fn primitives(level: Level) -> (bool, String) {
    let mut c = Checks::new();
    let p_max = if level == Level::Deep { 5 } else { 4 };
    let mut checked = 0usize;
    for w in 1..=p_max {
        for g in enumerate_all(w, shard_count()) {
            let pi = eulerian(&g).expect("nonempty");
            c.check(is_primitive(&pi), || format!("pi_1 not primitive for {g}"));
            if g.is_connected() {
                c.check(pi == DiagramSum::from(g.clone()), || format!("pi_1(G) != G for connected {g}"));
            }
            checked += 1;
        }
    }
    let b = BDiagram::new(vec![2, 2, 2], vec![1, 3, 5], (1..=6).collect(), vec![(1, 5)]).expect("valid");
    let pi = eulerian(&b).expect("nonempty");
    let lone = BDiagram::new(vec![2], vec![1], vec![1, 2], vec![]).expect("valid");
    let pair = BDiagram::new(vec![2, 2], vec![1, 3], (1..=4).collect(), vec![(1, 3)]).expect("valid");
    let half = -Coeff::new(BigInt::one(), BigInt::from(2));
    let x = crate::diagram::juxtapose(&pair, &lone);
    let y = crate::diagram::juxtapose(&lone, &pair);
    c.check(pi.coeff(&b).is_one(), || "coefficient of B is not 1".to_string());
    c.check(pi.coeff(&x) == half && pi.coeff(&y) == half, || {
        format!("coefficients of X, Y are {} and {}", pi.coeff(&x), pi.coeff(&y))
    });
    c.check(is_primitive(&pi), || "pi_1(B) is not primitive".to_string());
    c.note(format!("{checked} diagrams up to weight {p_max}; worked example gives -1/2, -1/2"));
    c.finish()
}

fn stirling2(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 1..=n as usize {
        let mut next = vec![BigInt::zero(); i + 1];
        for k in 1..=i {
            let prev = row.get(k).cloned().unwrap_or_default();
            next[k] = prev * k + &row[k - 1];
        }
        row = next;
    }
    row
}

fn lah(n: u32, k: u32) -> BigInt {
    let f = |m: u32| (1..=m).fold(BigInt::one(), |a, i| a * i);
    let binom = f(n - 1) / (f(k - 1) * f(n - k));
    binom * f(n) / f(k)
}

fn stirling_tables(_: Level) -> (bool, String) {
    let mut c = Checks::new();
    for n in 1..=6u32 {
        let ones = vec![1; n as usize];
        let expected: BTreeMap<u32, BigInt> = (1..=n).map(|k| (k, stirling2(n)[k as usize].clone())).collect();
        for route in Route::ALL {
            let s = stirling(&ones, &ones, route).expect("valid");
            c.check(s.alpha == 0 && s.coeffs == expected, || format!("r=s=1, n={n}, {route}: {s}"));
        }
        let twos = vec![2; n as usize];
        let expected: BTreeMap<u32, BigInt> = (1..=n).map(|k| (k, lah(n, k))).collect();
        for route in Route::ALL {
            let s = stirling(&twos, &ones, route).expect("valid");
            c.check(s.alpha == n && s.coeffs == expected, || format!("r=2,s=1, n={n}, {route}: {s}"));
        }
    }
    let row6 = stirling(&[1; 6], &[1; 6], Route::Rewrite).expect("valid");
    c.note(format!("n<=6 on all routes; {row6}"));
    c.finish()
}

fn wsym(_: Level) -> (bool, String) {
    let mut c = Checks::new();
    let (a, b): (SetPartition, SetPartition) = ("{1,3|2}".parse().expect("valid"), "{1|2}".parse().expect("valid"));
    let mut expected: Vec<SetPartition> = [
        "{1,3|2|4|5}",
        "{1,3|2,4|5}",
        "{1,3,4|2|5}",
        "{1,3|2,5|4}",
        "{1,3,5|2|4}",
        "{1,3,4|2,5}",
        "{1,3,5|2,4}",
    ]
    .iter()
    .map(|s| s.parse().expect("valid"))
    .collect();
    expected.sort();
    let mut oracle = wsym_product_oracle(&a, &b);
    oracle.sort();
    c.check(oracle == expected, || format!("oracle gave {} terms", oracle.len()));
    let mut via = Vec::new();
    for g in star_expand(&b_of(&a), &b_of(&b)) {
        match partition_of_b(&g) {
            Ok(p) => via.push(p),
            Err(e) => c.check(false, || format!("product term leaves the subalgebra: {e}")),
        }
    }
    via.sort();
    c.check(via == expected, || format!("diagram route gave {} terms", via.len()));
    let mut bell = Vec::new();
    for n in 0..=4u32 {
        let mut images: Vec<BDiagram> = SetPartition::all(n).iter().map(b_of).collect();
        images.sort();
        images.dedup();
        let mut direct = 0usize;
        let lambda = vec![1; n as usize];
        visit_lambda(&lambda, &mut |g| direct += (g.up().len() == n as usize && g.down().len() == n as usize) as usize);
        c.check(images.len() == direct, || format!("n={n}: {} images vs {direct} diagrams", images.len()));
        bell.push(images.len());
    }
    c.check(bell == [1, 1, 2, 5, 15], || format!("Bell counts {bell:?}"));
    c.note(format!("7 terms on both routes; counts {bell:?}"));
    c.finish()
}

fn component_sizes_of_diagram(g: &BDiagram) -> Vec<usize> {
    let mut v: Vec<usize> = g.connected_components().iter().map(Vec::len).collect();
    v.sort_unstable();
    v
}

fn component_sizes_of_lists(p: &SetPartitionIntoLists) -> Vec<usize> {
    let mut v: Vec<usize> = p.lists().iter().map(Vec::len).collect();
    v.sort_unstable();
    v
}

fn bwsym(_: Level) -> (bool, String) {
    let mut c = Checks::new();
    let a: SetPartitionIntoLists = "{[3,1]|[2]}".parse().expect("valid");
    let b: SetPartitionIntoLists = "{[1,2]}".parse().expect("valid");
    let oracle = bwsym_product_oracle(&a, &b);
    let terms = star_expand(&m_of(&a), &m_of(&b));
    c.check(oracle.len() == 6 && terms.len() == 6, || format!("{} oracle terms, {} diagram terms", oracle.len(), terms.len()));
    let mut s1: Vec<Vec<usize>> = terms.iter().map(component_sizes_of_diagram).collect();
    let mut s2: Vec<Vec<usize>> = oracle.iter().map(component_sizes_of_lists).collect();
    s1.sort();
    s2.sort();
    c.check(s1 == s2, || format!("component sizes {s1:?} vs {s2:?}"));
    let mut decoded: Vec<SetPartitionIntoLists> = terms.iter().filter_map(|g| lists_of_m(g).ok()).collect();
    let mut sorted_oracle = oracle.clone();
    decoded.sort();
    sorted_oracle.sort();
    c.check(decoded == sorted_oracle, || "decoded diagram terms differ from the oracle".to_string());
    let mut all = Vec::new();
    let mut connected = Vec::new();
    for n in 1..=4u32 {
        let gs = g21_diagrams(n);
        all.push(gs.len());
        connected.push(gs.iter().filter(|g| g.is_connected()).count());
    }
    c.check(all == [1, 3, 13, 73], || format!("G21 counts {all:?}"));
    c.check(connected == [1, 2, 6, 24], || format!("connected G21 counts {connected:?}"));
    c.note(format!("6 terms, sizes agree; G21 counts {all:?}, connected {connected:?}"));
    c.finish()
}

fn projection_morphism(_: Level) -> (bool, String) {
    let mut c = Checks::new();
    let by_weight = diagrams_by_weight(3);
    let pairs = pair_population(&by_weight, 200, SAMPLE_SEED);
    for (g, h) in &pairs {
        let mut lhs = NormalPoly::zero();
        for d in star_expand(g, h) {
            lhs.add_term(project(&d), BigInt::one());
        }
        let rhs = mul(&project(g), &project(h));
        c.check(lhs == rhs, || format!("projection differs for G={g}, G'={h}"));
    }
    c.note(format!("{} pairs, e and e' carried", pairs.len()));
    c.finish()
}
