use itertools::Itertools;

use super::{BDiagram, DiagramError, HalfEdge};

/// Grafts `upper` on top of `lower`, joining the free outer half-edge
/// `sources[ℓ]` of `lower` to the free inner half-edge `targets[ℓ]` of
/// `upper`. Labels of `upper` are shifted by `ω(lower)`.
///
/// `sources` must be strictly increasing; `targets` must be distinct.
/// With no pairs this is the juxtaposition `lower | upper`.
pub fn compose(
    lower: &BDiagram,
    upper: &BDiagram,
    sources: &[HalfEdge],
    targets: &[HalfEdge],
) -> Result<BDiagram, DiagramError> {
    if sources.len() != targets.len() {
        return Err(DiagramError::LengthMismatch { a: sources.len(), b: targets.len() });
    }
    if sources.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DiagramError::SourcesNotIncreasing);
    }
    let free_up = lower.free_up();
    if let Some(&a) = sources.iter().find(|a| free_up.binary_search(a).is_err()) {
        return Err(DiagramError::NotFreeOuter(a));
    }
    let free_down = upper.free_down();
    if let Some(&b) = targets.iter().find(|b| free_down.binary_search(b).is_err()) {
        return Err(DiagramError::NotFreeInner(b));
    }
    let mut seen = targets.to_vec();
    seen.sort_unstable();
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(DiagramError::RepeatedTarget(w[0]));
    }
    Ok(compose_unchecked(lower, upper, sources.iter().copied().zip(targets.iter().copied())))
}

pub(crate) fn compose_unchecked(
    lower: &BDiagram,
    upper: &BDiagram,
    pairs: impl IntoIterator<Item = (HalfEdge, HalfEdge)>,
) -> BDiagram {
    let shift = lower.weight();
    let lambda = lower.lambda.iter().chain(&upper.lambda).copied().collect();
    let up = lower.up.iter().copied().chain(upper.up.iter().map(|k| k + shift)).collect();
    let down = lower.down.iter().copied().chain(upper.down.iter().map(|k| k + shift)).collect();
    let mut edges: Vec<(HalfEdge, HalfEdge)> = lower
        .edges
        .iter()
        .copied()
        .chain(pairs.into_iter().map(|(a, b)| (a, b + shift)))
        .collect();
    // all edges so far start at or below `shift`, the upper ones start above it
    edges.sort_unstable();
    edges.extend(upper.edges.iter().map(|&(a, b)| (a + shift, b + shift)));
    BDiagram::from_parts_unchecked(lambda, up, down, edges)
}

/// `lower | upper`.
pub fn juxtapose(lower: &BDiagram, upper: &BDiagram) -> BDiagram {
    compose_unchecked(lower, upper, std::iter::empty())
}

/// Every composition of `lower` with `upper`: all `k ≥ 0`, all increasing
/// `k`-subsets of `H_f↑(lower)` and all injective `k`-sequences in
/// `H_f↓(upper)`. The results are pairwise distinct; the juxtaposition
/// comes first.
pub fn star_expand(lower: &BDiagram, upper: &BDiagram) -> Vec<BDiagram> {
    let free_up = lower.free_up();
    let free_down = upper.free_down();
    let mut out = Vec::new();
    for k in 0..=free_up.len().min(free_down.len()) {
        for sources in free_up.iter().copied().combinations(k) {
            for targets in free_down.iter().copied().permutations(k) {
                out.push(compose_unchecked(lower, upper, sources.iter().copied().zip(targets)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::RawDiagram;
    use super::*;

    #[test]
    fn fig4_composition() {
        let g = compose(&fig2(), &fig1(), &[4, 6], &[3, 1]).unwrap();
        assert_eq!(
            g.to_json(),
            r#"{"n":7,"lambda":[1,3,2,2,3,1,2],"up":[1,3,4,6,9,10,11,12,13],"down":[1,3,6,7,9,10,11,12,13,14],"edges":[[1,6],[3,7],[4,11],[6,9],[9,14],[10,12],[12,13]]}"#
        );
        let idx: Vec<Vec<u32>> = g.paths().into_iter().map(|p| p.indices).collect();
        assert_eq!(
            idx,
            vec![vec![1, 6, 9, 14], vec![2], vec![3, 7], vec![4, 11], vec![5], vec![8], vec![10, 12, 13]]
        );
    }

    #[test]
    fn juxtaposition_and_unit() {
        let g = fig1();
        let e = BDiagram::empty();
        assert_eq!(compose(&e, &g, &[], &[]).unwrap(), g);
        assert_eq!(juxtapose(&g, &e), g);
        let j = compose(&fig1(), &fig2(), &[], &[]).unwrap();
        assert_eq!(j, juxtapose(&fig1(), &fig2()));
        assert_eq!(j.factorize(), vec![fig1(), fig2()]);
    }

    #[test]
    fn compose_rejects_bad_arguments() {
        let (g, h) = (fig2(), fig1());
        assert!(matches!(compose(&g, &h, &[4], &[]), Err(DiagramError::LengthMismatch { .. })));
        assert!(matches!(compose(&g, &h, &[1], &[1]), Err(DiagramError::NotFreeOuter(1))));
        assert!(matches!(compose(&g, &h, &[4], &[4]), Err(DiagramError::NotFreeInner(4))));
        assert!(matches!(compose(&g, &h, &[6, 4], &[1, 2]), Err(DiagramError::SourcesNotIncreasing)));
        assert!(matches!(compose(&g, &h, &[4, 6], &[1, 1]), Err(DiagramError::RepeatedTarget(1))));
    }

    #[test]
    fn star_expand_counts() {
        let fig9 = BDiagram::new(vec![2], vec![1], vec![1, 2], vec![]).unwrap();
        assert_eq!(star_expand(&fig9, &fig9).len(), 3);
        let fig10 = BDiagram::new(vec![2], vec![1, 2], vec![1, 2], vec![]).unwrap();
        let terms = star_expand(&fig10, &fig10);
        assert_eq!(terms.len(), 7);
        let mut sorted = terms.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 7);
        assert_eq!(star_expand(&BDiagram::empty(), &fig1()), vec![fig1()]);
    }

    #[test]
    fn compositions_are_valid() {
        for g in star_expand(&fig2(), &fig1()) {
            let raw: RawDiagram = g.to_raw();
            assert_eq!(raw.validate().unwrap(), g);
        }
    }
}
