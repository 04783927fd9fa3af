//! Inputs shared by the benchmarks.

use bdiagram::diagram::BDiagram;

/// Three vertices joined into one component, every half-edge free or cut.
pub fn connected() -> BDiagram {
    BDiagram::new(vec![3, 1, 2], (1..=5).collect(), (1..=6).collect(), vec![(1, 6), (2, 4), (4, 5)]).unwrap()
}

/// `k` single-slot vertices with no edges.
pub fn dots(k: usize) -> BDiagram {
    let w = k as u32;
    BDiagram::new(vec![1; k], (1..=w).collect(), (1..=w).collect(), vec![]).unwrap()
}
