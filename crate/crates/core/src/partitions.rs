//! Set partitions and set partitions into lists, their diagram images `b_π`
//! and `m_Π`, and independent product oracles for WSym and BWSym.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

use crate::diagram::{BDiagram, HalfEdge};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("empty block")]
    EmptyBlock,
    #[error("entry {0} occurs twice")]
    Duplicate(u32),
    #[error("entries must cover 1..={n}; {missing} is missing")]
    NotInitialSegment { n: u32, missing: u32 },
    #[error("{message} at offset {offset}")]
    Parse { offset: usize, message: String },
    #[error("diagram is not of the required shape: {0}")]
    Shape(&'static str),
}

fn check_cover<'a>(parts: impl Iterator<Item = &'a Vec<u32>>) -> Result<u32, PartitionError> {
    let mut seen = Vec::new();
    for p in parts {
        if p.is_empty() {
            return Err(PartitionError::EmptyBlock);
        }
        seen.extend_from_slice(p);
    }
    seen.sort_unstable();
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(PartitionError::Duplicate(w[0]));
    }
    let n = seen.len() as u32;
    if let Some(missing) = (1..=n).zip(&seen).find(|(k, &x)| *k != x).map(|(k, _)| k) {
        return Err(PartitionError::NotInitialSegment { n, missing });
    }
    Ok(n)
}

/// A partition of `⟦1,n⟧` into blocks; blocks are sorted and ordered by
/// minimum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<Vec<u32>>) -> Result<Self, PartitionError> {
        check_cover(blocks.iter())?;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable();
        Ok(SetPartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn size(&self) -> u32 {
        self.blocks.iter().map(|b| b.len() as u32).sum()
    }

    /// `π ⊎ π′`.
    pub fn disjoint_union(&self, other: &SetPartition) -> SetPartition {
        let n = self.size();
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| b.iter().map(|x| x + n).collect()));
        SetPartition::new(blocks).expect("disjoint union is valid")
    }

    /// `π` is not `π₁ ⊎ π₂` with both sides nonempty.
    pub fn is_indivisible(&self) -> bool {
        self.size() > 0 && !has_prefix_split(self.size(), &self.blocks)
    }

    /// All partitions of `⟦1,n⟧`, in restricted-growth order.
    pub fn all(n: u32) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        fn go(k: u32, n: u32, blocks: &mut Vec<Vec<u32>>, out: &mut Vec<SetPartition>) {
            if k > n {
                out.push(SetPartition { blocks: blocks.clone() });
                return;
            }
            for i in 0..blocks.len() {
                blocks[i].push(k);
                go(k + 1, n, blocks, out);
                blocks[i].pop();
            }
            blocks.push(vec![k]);
            go(k + 1, n, blocks, out);
            blocks.pop();
        }
        go(1, n, &mut blocks, &mut out);
        out
    }
}

/// Relabels a selection of blocks onto an initial segment, preserving order.
pub fn standardize(parts: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut all: Vec<u32> = parts.iter().flatten().copied().collect();
    all.sort_unstable();
    parts.iter().map(|p| p.iter().map(|x| all.binary_search(x).expect("present") as u32 + 1).collect()).collect()
}

fn has_prefix_split(n: u32, parts: &[Vec<u32>]) -> bool {
    (1..n).any(|k| parts.iter().all(|p| p.iter().all(|&x| x <= k) || p.iter().all(|&x| x > k)))
}

/// A set of disjoint lists covering `⟦1,n⟧`, ordered by minimum entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartitionIntoLists {
    lists: Vec<Vec<u32>>,
}

impl SetPartitionIntoLists {
    pub fn new(mut lists: Vec<Vec<u32>>) -> Result<Self, PartitionError> {
        check_cover(lists.iter())?;
        lists.sort_by_key(|l| *l.iter().min().expect("nonempty"));
        Ok(SetPartitionIntoLists { lists })
    }

    pub fn lists(&self) -> &[Vec<u32>] {
        &self.lists
    }

    pub fn size(&self) -> u32 {
        self.lists.iter().map(|l| l.len() as u32).sum()
    }

    /// `Π ⊎ Π′`.
    pub fn disjoint_union(&self, other: &SetPartitionIntoLists) -> SetPartitionIntoLists {
        let n = self.size();
        let mut lists = self.lists.clone();
        lists.extend(other.lists.iter().map(|l| l.iter().map(|x| x + n).collect()));
        SetPartitionIntoLists::new(lists).expect("disjoint union is valid")
    }

    pub fn is_indivisible(&self) -> bool {
        self.size() > 0 && !has_prefix_split(self.size(), &self.lists)
    }

    /// All partitions of `⟦1,n⟧` into lists.
    pub fn all(n: u32) -> Vec<SetPartitionIntoLists> {
        let mut out = Vec::new();
        for pi in SetPartition::all(n) {
            let choices: Vec<Vec<Vec<u32>>> =
                pi.blocks.iter().map(|b| b.iter().copied().permutations(b.len()).collect()).collect();
            for lists in choices.into_iter().multi_cartesian_product() {
                out.push(SetPartitionIntoLists::new(lists).expect("valid"));
            }
            if pi.blocks.is_empty() {
                out.push(SetPartitionIntoLists { lists: Vec::new() });
            }
        }
        out
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[Vec<u32>], open: &str, close: &str) -> fmt::Result {
    f.write_str("{")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str("|")?;
        }
        write!(f, "{open}{}{close}", p.iter().join(","))?;
    }
    f.write_str("}")
}

/// `{1,3|2}`.
impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.blocks, "", "")
    }
}

/// `{[3,1]|[2]}`.
impl fmt::Display for SetPartitionIntoLists {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.lists, "[", "]")
    }
}

fn parse_parts(text: &str, bracketed: bool) -> Result<Vec<Vec<u32>>, PartitionError> {
    let err = |offset: usize, message: &str| PartitionError::Parse { offset, message: message.to_string() };
    let t = text.trim_end();
    let lead = text.len() - text.trim_start().len();
    let t = &t[lead..];
    if !t.starts_with('{') {
        return Err(err(lead, "expected '{'"));
    }
    if !t.ends_with('}') || t.len() < 2 {
        return Err(err(lead + t.len(), "expected '}'"));
    }
    let body = &t[1..t.len() - 1];
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut parts = Vec::new();
    let mut offset = lead + 1;
    for piece in body.split('|') {
        let mut inner = piece.trim();
        let start = offset + (piece.len() - piece.trim_start().len());
        if bracketed {
            if !(inner.starts_with('[') && inner.ends_with(']') && inner.len() >= 2) {
                return Err(err(start, "expected a bracketed list"));
            }
            inner = &inner[1..inner.len() - 1];
        }
        let mut part = Vec::new();
        for item in inner.split(',') {
            match item.trim().parse::<u32>() {
                Ok(x) if x > 0 => part.push(x),
                _ => return Err(err(start, "expected positive integers separated by ','")),
            }
        }
        parts.push(part);
        offset += piece.len() + 1;
    }
    Ok(parts)
}

impl FromStr for SetPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SetPartition::new(parse_parts(s, false)?)
    }
}

impl FromStr for SetPartitionIntoLists {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SetPartitionIntoLists::new(parse_parts(s, true)?)
    }
}

/// `b_π`: unit vertices, all half-edges free, an edge from each entry to
/// its successor in its block.
pub fn b_of(pi: &SetPartition) -> BDiagram {
    let n = pi.size();
    let edges = pi.blocks.iter().flat_map(|b| b.windows(2).map(|w| (w[0], w[1]))).collect();
    BDiagram::new(vec![1; n as usize], (1..=n).collect(), (1..=n).collect(), edges).expect("b_π is valid")
}

/// Inverse of [`b_of`] on diagrams with unit vertices and all half-edges
/// non-cut.
pub fn partition_of_b(g: &BDiagram) -> Result<SetPartition, PartitionError> {
    let n = g.vertex_count() as u32;
    if g.lambda().iter().any(|&l| l != 1) || g.up().len() as u32 != n || g.down().len() as u32 != n {
        return Err(PartitionError::Shape("expected unit vertices with all half-edges non-cut"));
    }
    let blocks = g.connected_components().into_iter().map(|c| c.into_iter().map(|v| v as u32).collect()).collect();
    SetPartition::new(blocks)
}

/// Whether `g` lies in `𝒢²₁`: every vertex has two slots, both outer
/// half-edges non-cut, inner slot 1 non-cut and inner slot 2 cut.
pub fn is_g21(g: &BDiagram) -> bool {
    let n = g.vertex_count() as u32;
    g.lambda().iter().all(|&l| l == 2)
        && g.up().iter().copied().eq(1..=2 * n)
        && g.down().iter().copied().eq((1..=n).map(|i| 2 * i - 1))
}

/// Attaches the increasing binary tree of `list` below `parent_slot`; the
/// minimum is the root, the entries before it form the left subtree (hung
/// from outer slot `2i−1`) and those after it the right subtree (slot `2i`).
fn tree_edges(list: &[u32], parent_slot: Option<HalfEdge>, edges: &mut Vec<(HalfEdge, HalfEdge)>) {
    let Some((pos, &root)) = list.iter().enumerate().min_by_key(|(_, &x)| x) else { return };
    if let Some(a) = parent_slot {
        edges.push((a, 2 * root - 1));
    }
    tree_edges(&list[..pos], Some(2 * root - 1), edges);
    tree_edges(&list[pos + 1..], Some(2 * root), edges);
}

/// `m_Π`: one `𝒢²₁` component per list, shaped as the increasing binary
/// tree whose in-order reading is the list.
pub fn m_of(pi: &SetPartitionIntoLists) -> BDiagram {
    let n = pi.size();
    let mut edges = Vec::new();
    for l in &pi.lists {
        tree_edges(l, None, &mut edges);
    }
    BDiagram::new(vec![2; n as usize], (1..=2 * n).collect(), (1..=n).map(|i| 2 * i - 1).collect(), edges)
        .expect("m_Π is valid")
}

/// Inverse of [`m_of`] on `𝒢²₁`.
pub fn lists_of_m(g: &BDiagram) -> Result<SetPartitionIntoLists, PartitionError> {
    if !is_g21(g) {
        return Err(PartitionError::Shape("expected a diagram of G21 shape"));
    }
    let n = g.vertex_count();
    // child[v][0] hangs from slot 2v−1, child[v][1] from slot 2v
    let mut child = vec![[0u32; 2]; n + 1];
    let mut has_parent = vec![false; n + 1];
    for &(a, b) in g.edges() {
        let v = a.div_ceil(2) as usize;
        child[v][((a + 1) % 2) as usize] = b.div_ceil(2);
        has_parent[b.div_ceil(2) as usize] = true;
    }
    fn in_order(v: u32, child: &[[u32; 2]], out: &mut Vec<u32>) {
        if v == 0 {
            return;
        }
        in_order(child[v as usize][0], child, out);
        out.push(v);
        in_order(child[v as usize][1], child, out);
    }
    let mut lists = Vec::new();
    for v in (1..=n).filter(|&v| !has_parent[v]) {
        let mut l = Vec::new();
        in_order(v as u32, &child, &mut l);
        lists.push(l);
    }
    SetPartitionIntoLists::new(lists)
}

/// All `𝒢²₁` diagrams on `n` vertices, generated directly: each vertex
/// after the first either has no incoming edge or receives one from a free
/// outer half-edge of an earlier vertex.
pub fn g21_diagrams(n: u32) -> Vec<BDiagram> {
    fn go(v: u32, n: u32, used: &mut Vec<bool>, edges: &mut Vec<(HalfEdge, HalfEdge)>, out: &mut Vec<BDiagram>) {
        if v > n {
            let g = BDiagram::new(
                vec![2; n as usize],
                (1..=2 * n).collect(),
                (1..=n).map(|i| 2 * i - 1).collect(),
                edges.clone(),
            )
            .expect("valid");
            out.push(g);
            return;
        }
        go(v + 1, n, used, edges, out);
        for a in 1..=2 * (v - 1) {
            if used[a as usize] {
                continue;
            }
            used[a as usize] = true;
            edges.push((a, 2 * v - 1));
            go(v + 1, n, used, edges, out);
            edges.pop();
            used[a as usize] = false;
        }
    }
    let mut out = Vec::new();
    go(1, n, &mut vec![false; 2 * n as usize + 1], &mut Vec::new(), &mut out);
    out
}

/// Products in WSym: every partial matching of the blocks of `π` with the
/// shifted blocks of `π′`, matched pairs merged.
pub fn wsym_product_oracle(pi: &SetPartition, pi2: &SetPartition) -> Vec<SetPartition> {
    let n = pi.size();
    let left = &pi.blocks;
    let right: Vec<Vec<u32>> = pi2.blocks.iter().map(|b| b.iter().map(|x| x + n).collect()).collect();
    let mut out = Vec::new();
    for k in 0..=left.len().min(right.len()) {
        for ls in (0..left.len()).combinations(k) {
            for rs in (0..right.len()).permutations(k) {
                let mut blocks: Vec<Vec<u32>> = Vec::new();
                for (&i, &j) in ls.iter().zip(&rs) {
                    blocks.push(left[i].iter().chain(&right[j]).copied().collect());
                }
                blocks.extend((0..left.len()).filter(|i| !ls.contains(i)).map(|i| left[i].clone()));
                blocks.extend((0..right.len()).filter(|j| !rs.contains(j)).map(|j| right[j].clone()));
                out.push(SetPartition::new(blocks).expect("valid"));
            }
        }
    }
    out
}

/// `Δ` on WSym: every split of the blocks into two groups, each
/// standardized.
pub fn wsym_coproduct_oracle(pi: &SetPartition) -> Vec<(SetPartition, SetPartition)> {
    let b = pi.blocks.len();
    (0..1u64 << b)
        .map(|mask| {
            let (mut e, mut f) = (Vec::new(), Vec::new());
            for (i, block) in pi.blocks.iter().enumerate() {
                if mask >> i & 1 == 1 { &mut e } else { &mut f }.push(block.clone());
            }
            (SetPartition::new(standardize(&e)).expect("valid"), SetPartition::new(standardize(&f)).expect("valid"))
        })
        .collect()
}

/// Products in BWSym: `Π ⊎ Π′` together with every way of inserting some
/// shifted lists of `Π′`, each as a contiguous run, into distinct gaps of
/// the lists of `Π`.
pub fn bwsym_product_oracle(pi: &SetPartitionIntoLists, pi2: &SetPartitionIntoLists) -> Vec<SetPartitionIntoLists> {
    let n = pi.size();
    let right: Vec<Vec<u32>> = pi2.lists.iter().map(|l| l.iter().map(|x| x + n).collect()).collect();
    // gap (list, position): position p sits before entry p
    let gaps: Vec<(usize, usize)> =
        pi.lists.iter().enumerate().flat_map(|(i, l)| (0..=l.len()).map(move |p| (i, p))).collect();
    let mut out = Vec::new();
    for k in 0..=right.len().min(gaps.len()) {
        for rs in (0..right.len()).combinations(k) {
            for gs in (0..gaps.len()).permutations(k) {
                let mut lists = pi.lists.clone();
                // insert from the highest position down so earlier positions stay put
                let mut inserts: Vec<(usize, usize, usize)> =
                    rs.iter().zip(&gs).map(|(&r, &g)| (gaps[g].0, gaps[g].1, r)).collect();
                inserts.sort_unstable_by(|a, b| b.cmp(a));
                for (i, p, r) in inserts {
                    lists[i].splice(p..p, right[r].iter().copied());
                }
                lists.extend((0..right.len()).filter(|r| !rs.contains(r)).map(|r| right[r].clone()));
                out.push(SetPartitionIntoLists::new(lists).expect("valid"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::star_expand;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn spl(s: &str) -> SetPartitionIntoLists {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(sp("{1,3|2}").blocks(), &[vec![1, 3], vec![2]]);
        assert_eq!(sp(" {3,1 | 2} ").to_string(), "{1,3|2}");
        assert_eq!(sp("{}").size(), 0);
        assert_eq!(spl("{[2]|[3,1]}").to_string(), "{[3,1]|[2]}");
        assert!(matches!("{1,3}".parse::<SetPartition>(), Err(PartitionError::NotInitialSegment { n: 2, missing: 2 })));
        assert!(matches!("{1|1}".parse::<SetPartition>(), Err(PartitionError::Duplicate(1))));
        assert!(matches!("1,2".parse::<SetPartition>(), Err(PartitionError::Parse { offset: 0, .. })));
        assert!(matches!("{1,x}".parse::<SetPartition>(), Err(PartitionError::Parse { offset: 1, .. })));
        assert!(matches!("{1|[2]}".parse::<SetPartitionIntoLists>(), Err(PartitionError::Parse { offset: 1, .. })));
    }

    #[test]
    fn b_of_examples() {
        let g = b_of(&sp("{1,3|2|4,7,8|5,6}"));
        assert_eq!(g.edges(), &[(1, 3), (4, 7), (5, 6), (7, 8)]);
        assert!(b_of(&sp("{1|2|3}")).edges().is_empty());
        assert_eq!(b_of(&sp("{1,2}")).edges(), &[(1, 2)]);
        assert_eq!(partition_of_b(&g).unwrap(), sp("{1,3|2|4,7,8|5,6}"));
    }

    #[test]
    fn wsym_examples() {
        let terms = wsym_product_oracle(&sp("{1,3|2}"), &sp("{1|2}"));
        assert_eq!(terms.len(), 7);
        assert!(terms.contains(&sp("{1,3|2|4|5}")));
        assert!(terms.contains(&sp("{1,3,4|2,5}")));
        assert_eq!(wsym_product_oracle(&sp("{1,3|2}"), &sp("{}")), vec![sp("{1,3|2}")]);
        let mut t = wsym_product_oracle(&sp("{1}"), &sp("{1}"));
        t.sort();
        assert_eq!(t, vec![sp("{1|2}"), sp("{1,2}")]);
    }

    #[test]
    fn m_of_examples() {
        let one = m_of(&spl("{[1]}"));
        assert_eq!(one, BDiagram::new(vec![2], vec![1, 2], vec![1], vec![]).unwrap());
        let fig12 = m_of(&spl("{[5,2,4,1,3,7,6]}"));
        assert_eq!(fig12.edges(), &[(1, 3), (2, 5), (3, 9), (4, 7), (6, 11), (11, 13)]);
        assert!(fig12.is_connected());
        assert_eq!(m_of(&spl("{[3,1]|[2]}")).edges(), &[(1, 5)]);
        assert_eq!(m_of(&spl("{[1,2]}")).edges(), &[(2, 3)]);
        for n in 0..=4 {
            for pi in SetPartitionIntoLists::all(n) {
                assert_eq!(lists_of_m(&m_of(&pi)).unwrap(), pi);
            }
        }
    }

    #[test]
    fn bwsym_examples() {
        let terms = bwsym_product_oracle(&spl("{[3,1]|[2]}"), &spl("{[1,2]}"));
        assert_eq!(terms.len(), 6);
        for t in ["{[3,1]|[2]|[4,5]}", "{[3,1]|[4,5,2]}", "{[3,1]|[2,4,5]}", "{[4,5,3,1]|[2]}", "{[3,4,5,1]|[2]}", "{[3,1,4,5]|[2]}"] {
            assert!(terms.contains(&spl(t)), "{t}");
        }
        assert_eq!(bwsym_product_oracle(&spl("{[1]}"), &spl("{}")), vec![spl("{[1]}")]);
        let mut t = bwsym_product_oracle(&spl("{[1]}"), &spl("{[1]}"));
        t.sort();
        assert_eq!(t, vec![spl("{[1]|[2]}"), spl("{[1,2]}"), spl("{[2,1]}")]);
    }

    #[test]
    fn bwsym_products_match_term_for_term() {
        let (a, b) = (spl("{[3,1]|[2]}"), spl("{[1,2]}"));
        let mut via_diagrams: Vec<_> =
            star_expand(&m_of(&a), &m_of(&b)).iter().map(|g| lists_of_m(g).unwrap()).collect();
        let mut via_oracle = bwsym_product_oracle(&a, &b);
        via_diagrams.sort();
        via_oracle.sort();
        assert_eq!(via_diagrams, via_oracle);
    }

    #[test]
    fn counts() {
        let bell: Vec<usize> = (0..=4).map(|n| SetPartition::all(n).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15]);
        let lah: Vec<usize> = (1..=4).map(|n| SetPartitionIntoLists::all(n).len()).collect();
        assert_eq!(lah, vec![1, 3, 13, 73]);
        let g21: Vec<usize> = (1..=4).map(|n| g21_diagrams(n).len()).collect();
        assert_eq!(g21, vec![1, 3, 13, 73]);
        let connected: Vec<usize> = (1..=4).map(|n| g21_diagrams(n).iter().filter(|g| g.is_connected()).count()).collect();
        assert_eq!(connected, vec![1, 2, 6, 24]);
    }

    #[test]
    fn standardization() {
        assert_eq!(standardize(&[vec![2, 5], vec![7]]), vec![vec![1, 2], vec![3]]);
        assert_eq!(standardize(&[vec![4, 2]]), vec![vec![2, 1]]);
    }

    #[test]
    fn indivisibility_matches_diagrams() {
        for n in 1..=4 {
            for pi in SetPartition::all(n) {
                assert_eq!(pi.is_indivisible(), b_of(&pi).is_indivisible(), "{pi}");
            }
            for pi in SetPartitionIntoLists::all(n) {
                assert_eq!(pi.is_indivisible(), m_of(&pi).is_indivisible(), "{pi}");
            }
        }
    }
}
