//! Exhaustive generation of B-diagrams by weight, the `d_{p,q}` recurrence
//! and brute-force cross-validation.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::diagram::{BDiagram, HalfEdge};

/// Name of the environment variable holding the shard count.
pub const SHARDS_VAR: &str = "BDIAG_SHARDS";

/// Shard count from [`SHARDS_VAR`]; 1 when unset or invalid.
pub fn shard_count() -> usize {
    std::env::var(SHARDS_VAR).ok().and_then(|s| s.trim().parse().ok()).filter(|&n| n >= 1).unwrap_or(1)
}

/// All compositions of `p`, colexicographically (compared from the last
/// part backwards).
pub fn compositions(p: u32) -> Vec<Vec<u32>> {
    if p == 0 {
        return vec![Vec::new()];
    }
    let mut out: Vec<Vec<u32>> = (0..1u32 << (p - 1))
        .map(|cuts| {
            let mut parts = Vec::new();
            let mut len = 1;
            for bit in 0..p - 1 {
                if cuts >> bit & 1 == 1 {
                    parts.push(len);
                    len = 1;
                } else {
                    len += 1;
                }
            }
            parts.push(len);
            parts
        })
        .collect();
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

type Edges = [(HalfEdge, HalfEdge)];

struct Matcher<'a> {
    owner: &'a [u32],
    sources: Vec<HalfEdge>,
    targets: Vec<HalfEdge>,
    used: Vec<bool>,
    edges: Vec<(HalfEdge, HalfEdge)>,
}

impl Matcher<'_> {
    /// Each source in turn is either skipped or joined to an unused target
    /// on a later vertex, smallest target first.
    fn run(&mut self, i: usize, emit: &mut dyn FnMut(&Edges)) {
        if i == self.sources.len() {
            emit(&self.edges);
            return;
        }
        self.run(i + 1, emit);
        let a = self.sources[i];
        for t in 0..self.targets.len() {
            let b = self.targets[t];
            if self.used[t] || self.owner[b as usize] <= self.owner[a as usize] {
                continue;
            }
            self.used[t] = true;
            self.edges.push((a, b));
            self.run(i + 1, emit);
            self.edges.pop();
            self.used[t] = false;
        }
    }
}

fn members(mask: u32, weight: u32) -> Vec<HalfEdge> {
    (0..weight).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect()
}

/// Every diagram with slot counts `lambda`, in generation order.
pub fn visit_lambda(lambda: &[u32], f: &mut dyn FnMut(BDiagram)) {
    let weight: u32 = lambda.iter().sum();
    let mut owner = vec![0u32; weight as usize + 1];
    let mut k = 1;
    for (i, &l) in lambda.iter().enumerate() {
        for _ in 0..l {
            owner[k] = i as u32 + 1;
            k += 1;
        }
    }
    for up_mask in 0..1u32 << weight {
        let up = members(up_mask, weight);
        for down_mask in 0..1u32 << weight {
            let down = members(down_mask, weight);
            let mut m = Matcher {
                owner: &owner,
                sources: up.clone(),
                targets: down.clone(),
                used: vec![false; down.len()],
                edges: Vec::new(),
            };
            m.run(0, &mut |edges| {
                f(BDiagram::from_parts_unchecked(lambda.to_vec(), up.clone(), down.clone(), edges.to_vec()))
            });
        }
    }
}

/// Every diagram of weight `p`, each exactly once, sequentially.
pub fn visit(p: u32, f: &mut dyn FnMut(BDiagram)) {
    for lambda in compositions(p) {
        visit_lambda(&lambda, f);
    }
}

/// Every diagram of weight `p` in deterministic order; compositions are
/// split into contiguous chunks across `shards` threads and the chunks are
/// concatenated in order.
pub fn enumerate_all(p: u32, shards: usize) -> Vec<BDiagram> {
    map_shards(p, shards, |lambdas| {
        let mut out = Vec::new();
        for lambda in lambdas {
            visit_lambda(lambda, &mut |g| out.push(g));
        }
        out
    })
    .into_iter()
    .flatten()
    .collect()
}

fn map_shards<T: Send>(p: u32, shards: usize, work: impl Fn(&[Vec<u32>]) -> T + Sync) -> Vec<T> {
    let comps = compositions(p);
    let shards = shards.max(1).min(comps.len());
    if shards == 1 {
        return vec![work(&comps)];
    }
    let chunk = comps.len().div_ceil(shards);
    std::thread::scope(|s| {
        let handles: Vec<_> = comps.chunks(chunk).map(|c| s.spawn(|| work(c))).collect();
        handles.into_iter().map(|h| h.join().expect("enumeration shard panicked")).collect()
    })
}

/// Brute-force histogram of weight-`p` diagrams by `hf↑`, indices `0..=p`.
pub fn hfup_histogram(p: u32, shards: usize) -> Vec<BigUint> {
    let parts = map_shards(p, shards, |lambdas| {
        let mut counts = vec![0u64; p as usize + 1];
        for lambda in lambdas {
            visit_lambda(lambda, &mut |g| counts[g.free_up().len()] += 1);
        }
        counts
    });
    let mut total = vec![BigUint::zero(); p as usize + 1];
    for counts in parts {
        for (t, c) in total.iter_mut().zip(counts) {
            *t += c;
        }
    }
    total
}

/// `d_{p,q}` for `p ≤ p_max`, `q ≤ p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn p_max(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    /// `d_{p,q}`, zero outside the table's triangle.
    pub fn get(&self, p: u32, q: u32) -> BigUint {
        self.rows.get(p as usize).and_then(|r| r.get(q as usize)).cloned().unwrap_or_default()
    }

    pub fn row(&self, p: u32) -> &[BigUint] {
        &self.rows[p as usize]
    }

    pub fn alpha(&self, p: u32) -> BigUint {
        self.row(p).iter().sum()
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{p}: {}", cells.join(" "))?;
        }
        Ok(())
    }
}

fn binomials(n: usize) -> Vec<Vec<BigUint>> {
    let mut c = vec![vec![BigUint::zero(); n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = BigUint::one();
        for j in 1..=i {
            c[i][j] = &c[i - 1][j - 1] + &c[i - 1][j];
        }
    }
    c
}

/// Fills the table by adding a last vertex with `i` slots, `j` free inner
/// and `k` free outer half-edges, `ℓ` of the inner ones joined to free
/// outer half-edges below.
pub fn d_table(p_max: u32) -> CountTable {
    let pm = p_max as usize;
    let c = binomials(2 * pm + 1);
    let fact: Vec<BigUint> = (0..=pm).scan(BigUint::one(), |acc, i| {
        if i > 0 {
            *acc *= i;
        }
        Some(acc.clone())
    }).collect();
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for p in 1..=pm {
        let mut row = vec![BigUint::zero(); p + 1];
        for (q, cell) in row.iter_mut().enumerate() {
            for i in 1..=p {
                let prev = &rows[p - i];
                for j in 0..=i {
                    for k in 0..=i {
                        for l in 0..=j {
                            let Some(q2) = (q + l).checked_sub(k) else { continue };
                            let Some(d) = prev.get(q2) else { continue };
                            if d.is_zero() {
                                continue;
                            }
                            *cell += &fact[l] * &c[j][l] * &c[q2][l] * &c[i][j] * &c[i][k] * d;
                        }
                    }
                }
            }
        }
        rows.push(row);
    }
    CountTable { rows }
}

pub fn alpha(p: u32) -> BigUint {
    d_table(p).alpha(p)
}

/// Brute-force histogram against the recurrence for one weight.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub p: u32,
    pub brute: Vec<BigUint>,
    pub recurrence: Vec<BigUint>,
}

impl CrossCheck {
    /// `(q, brute, recurrence)` for every disagreeing cell.
    pub fn mismatches(&self) -> Vec<(usize, BigUint, BigUint)> {
        (0..self.brute.len().max(self.recurrence.len()))
            .map(|q| {
                let b = self.brute.get(q).cloned().unwrap_or_default();
                let r = self.recurrence.get(q).cloned().unwrap_or_default();
                (q, b, r)
            })
            .filter(|(_, b, r)| b != r)
            .collect()
    }

    pub fn is_ok(&self) -> bool {
        self.mismatches().is_empty()
    }
}

impl fmt::Display for CrossCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |v: &[BigUint]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "p={} brute: {}", self.p, row(&self.brute))?;
        writeln!(f, "p={} recurrence: {}", self.p, row(&self.recurrence))?;
        for (q, b, r) in self.mismatches() {
            writeln!(f, "mismatch at q={q}: brute {b}, recurrence {r}")?;
        }
        Ok(())
    }
}

pub fn crosscheck(p: u32, shards: usize) -> CrossCheck {
    CrossCheck { p, brute: hfup_histogram(p, shards), recurrence: d_table(p).row(p).to_vec() }
}

/// Number of indivisible diagrams of each weight `0..=p_max` (weight 0 has
/// none).
pub fn indivisible_counts(p_max: u32) -> Vec<BigUint> {
    (0..=p_max)
        .map(|p| {
            let mut n = 0u64;
            visit(p, &mut |g| n += g.is_indivisible() as u64);
            BigUint::from(n)
        })
        .collect()
}

/// Number of sequences of indivisible diagrams of total weight `p`, for each
/// `p ≤ p_max`, from per-weight indivisible counts.
pub fn free_monoid_counts(indivisible: &[BigUint]) -> Vec<BigUint> {
    let mut s = vec![BigUint::one()];
    for p in 1..indivisible.len() {
        let v = (1..=p).map(|j| &indivisible[j] * &s[p - j]).sum();
        s.push(v);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn compositions_in_colex_order() {
        assert_eq!(compositions(0), vec![Vec::<u32>::new()]);
        assert_eq!(compositions(3), vec![vec![1, 1, 1], vec![2, 1], vec![1, 2], vec![3]]);
        assert_eq!(compositions(5).len(), 16);
    }

    #[test]
    fn small_weights() {
        let all = enumerate_all(0, 1);
        assert_eq!(all, vec![BDiagram::empty()]);
        assert_eq!(enumerate_all(1, 1).len(), 4);
        assert_eq!(enumerate_all(2, 1).len(), 36);
        assert_eq!(enumerate_all(3, 3).len(), 372);
    }

    #[test]
    fn sharding_preserves_order() {
        assert_eq!(enumerate_all(3, 1), enumerate_all(3, 4));
        assert_eq!(hfup_histogram(3, 1), hfup_histogram(3, 8));
    }

    #[test]
    fn recurrence_rows() {
        let t = d_table(6);
        assert_eq!(t.get(0, 0), BigUint::one());
        assert_eq!(t.row(1), big(&[2, 2]));
        assert_eq!(t.row(2), big(&[10, 18, 8]));
        assert_eq!(t.row(5), big(&[3982, 14506, 20380, 13680, 4336, 512]));
        assert_eq!(t.row(6), big(&[38646, 161042, 269284, 229448, 104032, 23520, 2048]));
        assert_eq!(t.get(2, 3), BigUint::zero());
        let alphas: Vec<BigUint> = (0..=6).map(|p| t.alpha(p)).collect();
        assert_eq!(alphas, big(&[1, 4, 36, 372, 4372, 57396, 828020]));
        assert_eq!(alpha(0), BigUint::one());
    }

    #[test]
    fn crosscheck_small() {
        for p in 0..=3 {
            let c = crosscheck(p, 1);
            assert!(c.is_ok(), "{c}");
        }
        assert_eq!(crosscheck(2, 1).brute, big(&[10, 18, 8]));
    }

    #[test]
    fn mismatch_report() {
        let c = CrossCheck { p: 1, brute: big(&[2, 2]), recurrence: big(&[2, 3]) };
        assert_eq!(c.mismatches(), vec![(1, BigUint::from(2u32), BigUint::from(3u32))]);
        assert!(c.to_string().contains("mismatch at q=1"));
    }

    #[test]
    fn free_monoid_small() {
        let ind = indivisible_counts(3);
        assert_eq!(ind[0], BigUint::zero());
        assert_eq!(ind[1], BigUint::from(4u32));
        assert_eq!(free_monoid_counts(&ind), big(&[1, 4, 36, 372]));
    }
}
