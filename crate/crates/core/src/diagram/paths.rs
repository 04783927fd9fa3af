use super::{BDiagram, HalfEdge};

/// A maximal chain of edges, entering each vertex on inner slot `j` and
/// leaving it on outer slot `j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedPath {
    /// Strictly increasing half-edge labels `i₁ < … < i_k`.
    pub indices: Vec<HalfEdge>,
    /// `i₁` is a free inner half-edge (otherwise it is cut).
    pub start_free: bool,
    /// `i_k` is a free outer half-edge (otherwise it is cut).
    pub end_free: bool,
    /// `(vertex, label)` for each index.
    pub seq: Vec<(u32, HalfEdge)>,
}

impl DecoratedPath {
    pub fn first(&self) -> HalfEdge {
        self.indices[0]
    }

    pub fn last(&self) -> HalfEdge {
        *self.indices.last().expect("paths are nonempty")
    }
}

impl BDiagram {
    /// All paths, ordered by their first half-edge. Every label lies on
    /// exactly one path, so there are `ω(G) − τ(G)` of them.
    pub fn paths(&self) -> Vec<DecoratedPath> {
        let weight = self.weight() as usize;
        let owner = self.owners();
        let mut next = vec![0 as HalfEdge; weight + 1];
        let mut is_target = vec![false; weight + 1];
        for &(a, b) in self.edges() {
            next[a as usize] = b;
            is_target[b as usize] = true;
        }
        let mut paths = Vec::with_capacity(weight - self.edges().len());
        for start in 1..=weight as HalfEdge {
            if is_target[start as usize] {
                continue;
            }
            let mut indices = vec![start];
            let mut cur = start;
            while next[cur as usize] != 0 {
                cur = next[cur as usize];
                indices.push(cur);
            }
            let seq = indices.iter().map(|&k| (owner[k as usize] as u32, k)).collect();
            paths.push(DecoratedPath {
                start_free: self.is_down(start),
                end_free: self.is_up(cur),
                indices,
                seq,
            });
        }
        paths
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn paths_of_fig1() {
        let paths = fig1().paths();
        let idx: Vec<Vec<u32>> = paths.iter().map(|p| p.indices.clone()).collect();
        assert_eq!(idx, vec![vec![1, 6], vec![2, 4, 5], vec![3]]);
        let p = &paths[0];
        assert!(p.start_free);
        assert!(!p.end_free, "6 is a cut outer half-edge");
        assert_eq!(p.seq, vec![(1, 1), (3, 6)]);
        assert!(paths[1].end_free && paths[2].end_free);
        assert_eq!(paths[1].seq, vec![(1, 2), (2, 4), (3, 5)]);
    }

    #[test]
    fn paths_of_small_diagrams() {
        assert!(BDiagram::empty().paths().is_empty());
        let g = BDiagram::new(vec![2], vec![1, 2], vec![1, 2], vec![]).unwrap();
        let paths = g.paths();
        assert_eq!(paths.len(), 2);
        assert!(paths.iter().all(|p| p.start_free && p.end_free && p.indices.len() == 1));
    }

    #[test]
    fn paths_of_fig2_include_cut_ends() {
        let idx: Vec<Vec<u32>> = fig2().paths().into_iter().map(|p| p.indices).collect();
        assert_eq!(idx, vec![vec![1, 6], vec![2], vec![3, 7], vec![4], vec![5], vec![8]]);
    }
}
