//! B-diagrams: labeled vertices carrying inner and outer half-edges, joined by
//! upward edges.
//!
//! A diagram is the 5-tuple `(n, λ, E↑, E↓, E)`. Vertex `i` owns the half-edge
//! labels `λ₁+…+λ_{i-1}+1 ..= λ₁+…+λ_i`; every label exists both as an inner
//! (bottom) and as an outer (top) half-edge. `E↑` lists the outer half-edges
//! that are not cut, `E↓` the inner ones, and each edge `(a, b)` joins the
//! outer half-edge `a` to the inner half-edge `b` of a strictly higher vertex.
//!
//! All labels and vertex numbers in the public API are 1-based. Values are
//! stored in canonical form (sorted sets, lexicographically sorted edges), so
//! structural equality is diagram equality.

mod compose;
mod paths;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use compose::{compose, juxtapose, star_expand};
pub use paths::DecoratedPath;

/// Half-edge label (1-based).
pub type HalfEdge = u32;

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("n = {n} does not match the length {len} of lambda")]
    VertexCount { n: usize, len: usize },
    #[error("vertex {vertex} has lambda = 0")]
    EmptyVertex { vertex: usize },
    #[error("half-edge {label} is outside 1..={weight}")]
    LabelOutOfRange { label: HalfEdge, weight: u32 },
    #[error("half-edge {label} listed twice in {set}")]
    DuplicateLabel { label: HalfEdge, set: &'static str },
    #[error("edge ({a},{b}): source {a} is not a non-cut outer half-edge")]
    SourceNotOuter { a: HalfEdge, b: HalfEdge },
    #[error("edge ({a},{b}): target {b} is not a non-cut inner half-edge")]
    TargetNotInner { a: HalfEdge, b: HalfEdge },
    #[error("edge ({a},{b}) violates v(a) < v(b): v(a) = {va}, v(b) = {vb}")]
    NotUpward { a: HalfEdge, b: HalfEdge, va: usize, vb: usize },
    #[error("half-edge {0} is the source of more than one edge")]
    DuplicateSource(HalfEdge),
    #[error("half-edge {0} is the target of more than one edge")]
    DuplicateTarget(HalfEdge),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex selection must be strictly increasing")]
    NotIncreasing,
    #[error("composition: {0} is not a free outer half-edge of the lower diagram")]
    NotFreeOuter(HalfEdge),
    #[error("composition: {0} is not a free inner half-edge of the upper diagram")]
    NotFreeInner(HalfEdge),
    #[error("composition: lower sequence must be strictly increasing")]
    SourcesNotIncreasing,
    #[error("composition: inner half-edge {0} used twice")]
    RepeatedTarget(HalfEdge),
    #[error("composition: {a} outer half-edges but {b} inner half-edges")]
    LengthMismatch { a: usize, b: usize },
    #[error("invalid diagram JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// The unchecked 5-tuple, as found in the JSON interchange format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagram {
    pub n: usize,
    pub lambda: Vec<u32>,
    pub up: Vec<HalfEdge>,
    pub down: Vec<HalfEdge>,
    pub edges: Vec<(HalfEdge, HalfEdge)>,
}

impl RawDiagram {
    /// Checks every clause of the B-diagram definition and returns the
    /// canonical diagram.
    pub fn validate(self) -> Result<BDiagram, DiagramError> {
        let RawDiagram { n, lambda, mut up, mut down, mut edges } = self;
        if n != lambda.len() {
            return Err(DiagramError::VertexCount { n, len: lambda.len() });
        }
        if let Some(i) = lambda.iter().position(|&l| l == 0) {
            return Err(DiagramError::EmptyVertex { vertex: i + 1 });
        }
        let weight: u32 = lambda.iter().sum();
        for (set, name) in [(&mut up, "up"), (&mut down, "down")] {
            set.sort_unstable();
            for w in set.windows(2) {
                if w[0] == w[1] {
                    return Err(DiagramError::DuplicateLabel { label: w[0], set: name });
                }
            }
            if let Some(&label) = set.iter().find(|&&l| l == 0 || l > weight) {
                return Err(DiagramError::LabelOutOfRange { label, weight });
            }
        }
        edges.sort_unstable();
        let g = BDiagram { lambda, up, down, edges: Vec::new() };
        let mut sources = vec![false; weight as usize + 1];
        let mut targets = vec![false; weight as usize + 1];
        for &(a, b) in &edges {
            for label in [a, b] {
                if label == 0 || label > weight {
                    return Err(DiagramError::LabelOutOfRange { label, weight });
                }
            }
            if !g.is_up(a) {
                return Err(DiagramError::SourceNotOuter { a, b });
            }
            if !g.is_down(b) {
                return Err(DiagramError::TargetNotInner { a, b });
            }
            let (va, vb) = (g.vertex_unchecked(a), g.vertex_unchecked(b));
            if va >= vb {
                return Err(DiagramError::NotUpward { a, b, va, vb });
            }
            if std::mem::replace(&mut sources[a as usize], true) {
                return Err(DiagramError::DuplicateSource(a));
            }
            if std::mem::replace(&mut targets[b as usize], true) {
                return Err(DiagramError::DuplicateTarget(b));
            }
        }
        Ok(BDiagram { edges, ..g })
    }
}

/// A validated B-diagram in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BDiagram {
    lambda: Vec<u32>,
    up: Vec<HalfEdge>,
    down: Vec<HalfEdge>,
    edges: Vec<(HalfEdge, HalfEdge)>,
}

/// Counting statistics of a diagram.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiagramStats {
    pub vertices: usize,
    /// ω(G), the number of half-edge labels.
    pub weight: u32,
    /// τ(G), the number of edges.
    pub tau: u32,
    pub h_up: u32,
    pub h_down: u32,
    /// Free (non-cut, unused) outer half-edges.
    pub hf_up: u32,
    /// Free (non-cut, unused) inner half-edges.
    pub hf_down: u32,
    /// Unused cut half-edges, inner and outer together.
    pub h_c: u32,
}

impl BDiagram {
    /// The empty diagram ε, unit of juxtaposition and of the star product.
    pub fn empty() -> Self {
        BDiagram { lambda: Vec::new(), up: Vec::new(), down: Vec::new(), edges: Vec::new() }
    }

    pub fn new(
        lambda: Vec<u32>,
        up: Vec<HalfEdge>,
        down: Vec<HalfEdge>,
        edges: Vec<(HalfEdge, HalfEdge)>,
    ) -> Result<Self, DiagramError> {
        RawDiagram { n: lambda.len(), lambda, up, down, edges }.validate()
    }

    /// Builds from parts already known to be valid and canonical.
    pub(crate) fn from_parts_unchecked(
        lambda: Vec<u32>,
        up: Vec<HalfEdge>,
        down: Vec<HalfEdge>,
        edges: Vec<(HalfEdge, HalfEdge)>,
    ) -> Self {
        debug_assert!(up.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(down.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        BDiagram { lambda, up, down, edges }
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    pub fn up(&self) -> &[HalfEdge] {
        &self.up
    }

    pub fn down(&self) -> &[HalfEdge] {
        &self.down
    }

    pub fn edges(&self) -> &[(HalfEdge, HalfEdge)] {
        &self.edges
    }

    pub fn weight(&self) -> u32 {
        self.lambda.iter().sum()
    }

    pub fn tau(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn is_up(&self, k: HalfEdge) -> bool {
        self.up.binary_search(&k).is_ok()
    }

    pub fn is_down(&self, k: HalfEdge) -> bool {
        self.down.binary_search(&k).is_ok()
    }

    /// The vertex owning half-edge `k`.
    pub fn vertex_of(&self, k: HalfEdge) -> Result<usize, DiagramError> {
        let weight = self.weight();
        if k == 0 || k > weight {
            return Err(DiagramError::LabelOutOfRange { label: k, weight });
        }
        Ok(self.vertex_unchecked(k))
    }

    fn vertex_unchecked(&self, k: HalfEdge) -> usize {
        let mut end = 0;
        for (i, &l) in self.lambda.iter().enumerate() {
            end += l;
            if k <= end {
                return i + 1;
            }
        }
        unreachable!("half-edge {k} beyond weight")
    }

    /// Vertex owner of every label, indexed by label (index 0 unused).
    pub(crate) fn owners(&self) -> Vec<usize> {
        let mut owner = Vec::with_capacity(self.weight() as usize + 1);
        owner.push(0);
        for (i, &l) in self.lambda.iter().enumerate() {
            owner.extend(std::iter::repeat_n(i + 1, l as usize));
        }
        owner
    }

    /// First label of each vertex, plus one trailing entry `ω + 1`.
    pub(crate) fn offsets(&self) -> Vec<HalfEdge> {
        let mut offsets = Vec::with_capacity(self.lambda.len() + 1);
        let mut start = 1;
        for &l in &self.lambda {
            offsets.push(start);
            start += l;
        }
        offsets.push(start);
        offsets
    }

    /// `H_f↑(G)`: non-cut outer half-edges that carry no edge, ascending.
    pub fn free_up(&self) -> Vec<HalfEdge> {
        let mut sources: Vec<HalfEdge> = self.edges.iter().map(|e| e.0).collect();
        sources.sort_unstable();
        self.up.iter().copied().filter(|a| sources.binary_search(a).is_err()).collect()
    }

    /// `H_f↓(G)`: non-cut inner half-edges that carry no edge, ascending.
    pub fn free_down(&self) -> Vec<HalfEdge> {
        let mut targets: Vec<HalfEdge> = self.edges.iter().map(|e| e.1).collect();
        targets.sort_unstable();
        self.down.iter().copied().filter(|b| targets.binary_search(b).is_err()).collect()
    }

    pub fn stats(&self) -> DiagramStats {
        let weight = self.weight();
        let tau = self.tau();
        let hf_up = self.free_up().len() as u32;
        let hf_down = self.free_down().len() as u32;
        let h_up = weight - tau;
        let h_down = weight - tau;
        DiagramStats {
            vertices: self.vertex_count(),
            weight,
            tau,
            h_up,
            h_down,
            hf_up,
            hf_down,
            h_c: (h_up - hf_up) + (h_down - hf_down),
        }
    }

    /// The sub-diagram `G[i₁,…,i_k]` on a strictly increasing vertex selection.
    ///
    /// Labels are renumbered by the increasing bijection onto `1..=ω'`; only
    /// edges with both ends on selected vertices survive.
    pub fn subdiagram(&self, selection: &[usize]) -> Result<BDiagram, DiagramError> {
        let n = self.vertex_count();
        for w in selection.windows(2) {
            if w[0] >= w[1] {
                return Err(DiagramError::NotIncreasing);
            }
        }
        if let Some(&vertex) = selection.iter().find(|&&v| v == 0 || v > n) {
            return Err(DiagramError::VertexOutOfRange { vertex, n });
        }
        Ok(self.subdiagram_unchecked(selection))
    }

    pub(crate) fn subdiagram_unchecked(&self, selection: &[usize]) -> BDiagram {
        let offsets = self.offsets();
        // relabel[k] = new label of old label k, 0 when dropped
        let mut relabel = vec![0 as HalfEdge; self.weight() as usize + 1];
        let mut lambda = Vec::with_capacity(selection.len());
        let mut next = 1;
        for &v in selection {
            for k in offsets[v - 1]..offsets[v] {
                relabel[k as usize] = next;
                next += 1;
            }
            lambda.push(self.lambda[v - 1]);
        }
        let keep = |set: &[HalfEdge]| -> Vec<HalfEdge> {
            set.iter().map(|&k| relabel[k as usize]).filter(|&k| k != 0).collect()
        };
        let up = keep(&self.up);
        let down = keep(&self.down);
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (relabel[a as usize], relabel[b as usize]))
            .filter(|&(a, b)| a != 0 && b != 0)
            .collect();
        BDiagram { lambda, up, down, edges }
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let owner = self.owners();
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let ra = find(&mut parent, owner[a as usize]);
            let rb = find(&mut parent, owner[b as usize]);
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n + 1];
        for v in 1..=n {
            let r = find(&mut parent, v);
            if slot[r] == usize::MAX {
                slot[r] = components.len();
                components.push(Vec::new());
            }
            components[slot[r]].push(v);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Every isolated vertex set: all unions of connected components,
    /// indexed by the bitmask of chosen components.
    pub fn isolated_sets(&self) -> Vec<Vec<usize>> {
        let components = self.connected_components();
        (0u64..1 << components.len())
            .map(|mask| union_of(&components, mask))
            .collect()
    }

    /// True when no edge crosses between `selection` and its complement.
    pub fn is_isolated(&self, selection: &[usize]) -> bool {
        let owner = self.owners();
        let mut inside = vec![false; self.vertex_count() + 1];
        for &v in selection {
            if v < inside.len() {
                inside[v] = true;
            }
        }
        self.edges
            .iter()
            .all(|&(a, b)| inside[owner[a as usize]] == inside[owner[b as usize]])
    }

    /// Vertex counts `k` such that `G = G[1..=k] | G[k+1..=n]`.
    fn prefix_cuts(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let owner = self.owners();
        // crossing[k] > 0 iff some edge jumps from ≤ k to > k
        let mut crossing = vec![0i32; n + 2];
        for &(a, b) in &self.edges {
            crossing[owner[a as usize]] += 1;
            crossing[owner[b as usize]] -= 1;
        }
        let mut open = 0;
        let mut cuts = Vec::new();
        for (k, delta) in crossing.iter().enumerate().take(n).skip(1) {
            open += delta;
            if open == 0 {
                cuts.push(k);
            }
        }
        cuts
    }

    /// Indivisible diagrams are the free generators of the juxtaposition
    /// monoid; ε is the unit and is not one of them.
    pub fn is_indivisible(&self) -> bool {
        !self.is_empty() && self.prefix_cuts().is_empty()
    }

    /// The unique decomposition `G = G₁|…|G_m` into indivisible factors.
    /// The empty diagram factors as the empty sequence.
    pub fn factorize(&self) -> Vec<BDiagram> {
        let n = self.vertex_count();
        if n == 0 {
            return Vec::new();
        }
        let mut bounds = vec![0];
        bounds.extend(self.prefix_cuts());
        bounds.push(n);
        bounds
            .windows(2)
            .map(|w| {
                let range: Vec<usize> = (w[0] + 1..=w[1]).collect();
                self.subdiagram_unchecked(&range)
            })
            .collect()
    }

    pub fn to_raw(&self) -> RawDiagram {
        RawDiagram {
            n: self.vertex_count(),
            lambda: self.lambda.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
            edges: self.edges.clone(),
        }
    }

    /// Compact JSON with keys `n`, `lambda`, `up`, `down`, `edges`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("diagram serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<BDiagram, DiagramError> {
        let raw: RawDiagram = serde_json::from_str(text)?;
        raw.validate()
    }

    /// Plain-text dump, one line per vertex, `x` marking cut half-edges.
    pub fn ascii(&self) -> String {
        let offsets = self.offsets();
        let mut out = String::new();
        for v in (1..=self.vertex_count()).rev() {
            let labels = offsets[v - 1]..offsets[v];
            let side = |present: &dyn Fn(HalfEdge) -> bool| {
                labels
                    .clone()
                    .map(|k| if present(k) { k.to_string() } else { format!("x{k}") })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let outs = side(&|k| self.is_up(k));
            let ins = side(&|k| self.is_down(k));
            out.push_str(&format!("v{v}: out [{outs}] in [{ins}]\n"));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("{a} -> {b}\n"));
        }
        out
    }
}

impl fmt::Display for BDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

impl TryFrom<RawDiagram> for BDiagram {
    type Error = DiagramError;

    fn try_from(raw: RawDiagram) -> Result<Self, Self::Error> {
        raw.validate()
    }
}

impl Serialize for BDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_raw().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        RawDiagram::deserialize(deserializer)?
            .validate()
            .map_err(serde::de::Error::custom)
    }
}

pub(crate) fn union_of(components: &[Vec<usize>], mask: u64) -> Vec<usize> {
    let mut set: Vec<usize> = components
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .flat_map(|(_, c)| c.iter().copied())
        .collect();
    set.sort_unstable();
    set
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validate_accepts_empty_and_fig1() {
        let e = RawDiagram { n: 0, lambda: vec![], up: vec![], down: vec![], edges: vec![] };
        assert_eq!(e.validate().unwrap(), BDiagram::empty());
        assert_eq!(fig1().vertex_count(), 3);
    }

    #[test]
    fn validate_rejects_backward_edge() {
        let raw = RawDiagram { n: 2, lambda: vec![1, 1], up: vec![1, 2], down: vec![1, 2], edges: vec![(2, 1)] };
        assert!(matches!(raw.validate(), Err(DiagramError::NotUpward { a: 2, b: 1, va: 2, vb: 1 })));
    }

    #[test]
    fn validate_reports_each_clause() {
        let base = RawDiagram { n: 2, lambda: vec![1, 1], up: vec![1, 2], down: vec![1, 2], edges: vec![] };
        let mut r = base.clone();
        r.lambda = vec![1, 0];
        assert!(matches!(r.validate(), Err(DiagramError::EmptyVertex { vertex: 2 })));
        let mut r = base.clone();
        r.n = 3;
        assert!(matches!(r.validate(), Err(DiagramError::VertexCount { n: 3, len: 2 })));
        let mut r = base.clone();
        r.up = vec![1, 3];
        assert!(matches!(r.validate(), Err(DiagramError::LabelOutOfRange { label: 3, .. })));
        let mut r = base.clone();
        r.up = vec![2];
        r.edges = vec![(1, 2)];
        assert!(matches!(r.validate(), Err(DiagramError::SourceNotOuter { .. })));
        let mut r = base.clone();
        r.down = vec![1];
        r.edges = vec![(1, 2)];
        assert!(matches!(r.validate(), Err(DiagramError::TargetNotInner { .. })));
        let r = RawDiagram { n: 2, lambda: vec![2, 1], up: vec![1, 2], down: vec![3], edges: vec![(1, 3), (2, 3)] };
        assert!(matches!(r.validate(), Err(DiagramError::DuplicateTarget(3))));
        let r = RawDiagram { n: 3, lambda: vec![1, 1, 1], up: vec![1], down: vec![2, 3], edges: vec![(1, 2), (1, 3)] };
        assert!(matches!(r.validate(), Err(DiagramError::DuplicateSource(1))));
        let mut r = base;
        r.down = vec![1, 1];
        assert!(matches!(r.validate(), Err(DiagramError::DuplicateLabel { label: 1, .. })));
    }

    #[test]
    fn stats_of_fig1() {
        let s = fig1().stats();
        assert_eq!(
            (s.vertices, s.weight, s.tau, s.h_up, s.hf_up, s.h_down, s.hf_down, s.h_c),
            (3, 6, 3, 3, 2, 3, 3, 1)
        );
        assert_eq!(fig1().free_up(), vec![3, 5]);
        assert_eq!(fig1().free_down(), vec![1, 2, 3]);
    }

    #[test]
    fn stats_of_small_diagrams() {
        assert_eq!(BDiagram::empty().stats(), DiagramStats::default());
        let g = BDiagram::new(vec![2], vec![1, 2], vec![1, 2], vec![]).unwrap();
        let s = g.stats();
        assert_eq!((s.weight, s.tau, s.hf_up, s.hf_down, s.h_c), (2, 0, 2, 2, 0));
    }

    #[test]
    fn vertex_of_fig1() {
        let g = fig1();
        let owners: Vec<usize> = (1..=6).map(|k| g.vertex_of(k).unwrap()).collect();
        assert_eq!(owners, vec![1, 1, 1, 2, 3, 3]);
        assert!(g.vertex_of(0).is_err());
        assert!(g.vertex_of(7).is_err());
        let unit = BDiagram::new(vec![1; 4], vec![], vec![], vec![]).unwrap();
        for k in 1..=4 {
            assert_eq!(unit.vertex_of(k).unwrap(), k as usize);
        }
    }

    #[test]
    fn subdiagram_of_fig1() {
        let g = fig1();
        let sub = g.subdiagram(&[1, 3]).unwrap();
        let expected = BDiagram::new(vec![3, 2], (1..=4).collect(), (1..=5).collect(), vec![(1, 5)]).unwrap();
        assert_eq!(sub, expected);
        assert_eq!(g.subdiagram(&[1, 2, 3]).unwrap(), g);
        assert_eq!(g.subdiagram(&[]).unwrap(), BDiagram::empty());
        assert!(matches!(g.subdiagram(&[2, 1]), Err(DiagramError::NotIncreasing)));
        assert!(matches!(g.subdiagram(&[4]), Err(DiagramError::VertexOutOfRange { vertex: 4, n: 3 })));
    }

    #[test]
    fn subdiagram_of_fig2_component() {
        // vertices 2 and 4: λ = [3, 2], the edge (3,7) becomes (2,4)
        let sub = fig2().subdiagram(&[2, 4]).unwrap();
        assert_eq!(sub, BDiagram::new(vec![3, 2], vec![2, 3], vec![2, 4], vec![(2, 4)]).unwrap());
        assert!(sub.is_connected());
    }

    #[test]
    fn components_and_isolation() {
        assert_eq!(fig2().connected_components(), vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(fig1().connected_components(), vec![vec![1, 2, 3]]);
        let edgeless = BDiagram::new(vec![1, 1, 1], vec![], vec![], vec![]).unwrap();
        assert_eq!(edgeless.connected_components(), vec![vec![1], vec![2], vec![3]]);

        assert_eq!(fig1().isolated_sets(), vec![vec![], vec![1, 2, 3]]);
        assert_eq!(fig2().isolated_sets(), vec![vec![], vec![1, 3], vec![2, 4], vec![1, 2, 3, 4]]);
        let two = BDiagram::new(vec![1, 1], vec![], vec![], vec![]).unwrap();
        assert_eq!(two.isolated_sets(), vec![vec![], vec![1], vec![2], vec![1, 2]]);
        assert!(fig2().is_isolated(&[1, 3]));
        assert!(!fig2().is_isolated(&[1, 2]));
    }

    #[test]
    fn factorization() {
        let g = fig1();
        assert!(g.is_indivisible());
        assert_eq!(g.factorize(), vec![g.clone()]);
        // interleaved components: no prefix split exists
        assert!(fig2().is_indivisible());
        assert_eq!(fig2().factorize(), vec![fig2()]);

        let unit = BDiagram::new(vec![1], vec![1], vec![1], vec![]).unwrap();
        let twice = juxtapose(&unit, &unit);
        assert!(!twice.is_indivisible());
        assert_eq!(twice.factorize(), vec![unit.clone(), unit]);
        assert!(BDiagram::empty().factorize().is_empty());
        assert!(!BDiagram::empty().is_indivisible());
    }

    #[test]
    fn json_round_trip_and_format() {
        let g = fig1();
        let text = g.to_json();
        assert_eq!(
            text,
            r#"{"n":3,"lambda":[3,1,2],"up":[1,2,3,4,5],"down":[1,2,3,4,5,6],"edges":[[1,6],[2,4],[4,5]]}"#
        );
        assert_eq!(BDiagram::from_json(&text).unwrap(), g);
        assert!(BDiagram::from_json(r#"{"n":1}"#).is_err());
        assert!(g.ascii().contains("v3: out [5 x6] in [5 6]"));
    }
}
