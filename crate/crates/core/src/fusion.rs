//! Path-word realization of the diagram algebra. A diagram is encoded by one
//! letter per path; the shifted product pairs free path ends of the left
//! word with free path starts of the right word.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagram::{BDiagram, DiagramError, HalfEdge, RawDiagram};
use crate::hopf::Coeff;

#[derive(Debug, Error)]
pub enum FusionError {
    #[error("letter {0} has an empty sequence")]
    EmptyLetter(usize),
    #[error("slot {0} occurs more than once")]
    RepeatedSlot(HalfEdge),
    #[error("slot {0} is missing from the labeling")]
    SlotGap(HalfEdge),
    #[error("slot {slot} is assigned to vertex {vertex}, inconsistent with its neighbours")]
    InconsistentVertex { slot: HalfEdge, vertex: u32 },
    #[error("vertex {0} owns no slot")]
    EmptyVertex(u32),
    #[error("vertices must strictly increase along a letter")]
    NotIncreasing,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// One path: its `(vertex, slot)` sequence and whether each end is free.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FusionLetter {
    pub start_free: bool,
    pub end_free: bool,
    pub seq: Vec<(u32, HalfEdge)>,
}

impl FusionLetter {
    fn first_slot(&self) -> HalfEdge {
        self.seq.first().map_or(0, |&(_, s)| s)
    }

    fn write_seq(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (v, s) in &self.seq {
            write!(f, "({v},{s})")?;
        }
        f.write_str(")")
    }
}

/// Canonical path-word: letters sorted by first slot.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FusionMonomial {
    letters: Vec<FusionLetter>,
}

impl FusionMonomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn new(mut letters: Vec<FusionLetter>) -> Self {
        letters.sort_by_key(FusionLetter::first_slot);
        FusionMonomial { letters }
    }

    pub fn letters(&self) -> &[FusionLetter] {
        &self.letters
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    /// `(|u|, ω(u))`: the largest vertex and slot occurring in the word.
    pub fn extent(&self) -> (u32, HalfEdge) {
        self.letters
            .iter()
            .flat_map(|l| &l.seq)
            .fold((0, 0), |(mv, ms), &(v, s)| (mv.max(v), ms.max(s)))
    }

    pub fn shift(&self, dv: u32, ds: HalfEdge) -> FusionMonomial {
        let letters = self
            .letters
            .iter()
            .map(|l| FusionLetter {
                seq: l.seq.iter().map(|&(v, s)| (v + dv, s + ds)).collect(),
                ..l.clone()
            })
            .collect();
        FusionMonomial { letters }
    }
}

/// Red letters `R>`/`R<` (free or cut start) followed by blue letters
/// `B…<`/`B…>` (free or cut end); the unit prints as `1`.
impl fmt::Display for FusionMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(if l.start_free { "R>" } else { "R<" })?;
            l.write_seq(f)?;
        }
        for l in &self.letters {
            f.write_str(" B")?;
            l.write_seq(f)?;
            f.write_str(if l.end_free { "<" } else { ">" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FusionSum {
    terms: BTreeMap<FusionMonomial, Coeff>,
}

impl FusionSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, m: FusionMonomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Coeff::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coeff(&self, m: &FusionMonomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FusionMonomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl From<FusionMonomial> for FusionSum {
    fn from(m: FusionMonomial) -> Self {
        let mut s = FusionSum::zero();
        s.add_term(m, Coeff::one());
        s
    }
}

impl FromIterator<FusionMonomial> for FusionSum {
    fn from_iter<I: IntoIterator<Item = FusionMonomial>>(iter: I) -> Self {
        let mut s = FusionSum::zero();
        for m in iter {
            s.add_term(m, Coeff::one());
        }
        s
    }
}

impl fmt::Display for FusionSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (m, c) in &self.terms {
            writeln!(f, "{c} {m}")?;
        }
        Ok(())
    }
}

/// `w(G)`.
pub fn word_of(g: &BDiagram) -> FusionMonomial {
    FusionMonomial::new(
        g.paths()
            .into_iter()
            .map(|p| FusionLetter { start_free: p.start_free, end_free: p.end_free, seq: p.seq })
            .collect(),
    )
}

/// The shifted product of two canonical words, as an unweighted list of
/// terms (one per pairing).
pub fn fstar_terms(u: &FusionMonomial, v: &FusionMonomial) -> Vec<FusionMonomial> {
    let (dv, ds) = u.extent();
    let v = v.shift(dv, ds);
    let ends: Vec<usize> = (0..u.letters.len()).filter(|&i| u.letters[i].end_free).collect();
    let starts: Vec<usize> = (0..v.letters.len()).filter(|&j| v.letters[j].start_free).collect();
    let mut out = Vec::new();
    for k in 0..=ends.len().min(starts.len()) {
        for left in ends.iter().copied().combinations(k) {
            for right in starts.iter().copied().permutations(k) {
                let mut used_u = vec![false; u.letters.len()];
                let mut used_v = vec![false; v.letters.len()];
                let mut letters = Vec::with_capacity(u.letters.len() + v.letters.len() - k);
                for (&i, &j) in left.iter().zip(&right) {
                    used_u[i] = true;
                    used_v[j] = true;
                    let (a, b) = (&u.letters[i], &v.letters[j]);
                    letters.push(FusionLetter {
                        start_free: a.start_free,
                        end_free: b.end_free,
                        seq: a.seq.iter().chain(&b.seq).copied().collect(),
                    });
                }
                letters.extend(u.letters.iter().zip(&used_u).filter(|(_, &x)| !x).map(|(l, _)| l.clone()));
                letters.extend(v.letters.iter().zip(&used_v).filter(|(_, &x)| !x).map(|(l, _)| l.clone()));
                out.push(FusionMonomial::new(letters));
            }
        }
    }
    out
}

pub fn fstar(u: &FusionMonomial, v: &FusionMonomial) -> FusionSum {
    fstar_terms(u, v).into_iter().collect()
}

/// Bilinear extension of [`fstar`].
pub fn fstar_sum(x: &FusionSum, y: &FusionSum) -> FusionSum {
    let mut out = FusionSum::zero();
    for (u, a) in x.iter() {
        for (v, b) in y.iter() {
            let ab = a * b;
            for m in fstar_terms(u, v) {
                out.add_term(m, ab.clone());
            }
        }
    }
    out
}

/// Decodes a canonical word back into the unique diagram it encodes.
pub fn diagram_of(m: &FusionMonomial) -> Result<BDiagram, FusionError> {
    let mut owner: BTreeMap<HalfEdge, u32> = BTreeMap::new();
    for (i, l) in m.letters.iter().enumerate() {
        if l.seq.is_empty() {
            return Err(FusionError::EmptyLetter(i + 1));
        }
        if l.seq.windows(2).any(|w| w[0].0 >= w[1].0 || w[0].1 >= w[1].1) {
            return Err(FusionError::NotIncreasing);
        }
        for &(v, s) in &l.seq {
            if owner.insert(s, v).is_some() {
                return Err(FusionError::RepeatedSlot(s));
            }
        }
    }
    let weight = owner.len() as HalfEdge;
    let mut lambda: Vec<u32> = Vec::new();
    for (k, (&s, &v)) in (1..).zip(&owner) {
        if s != k {
            return Err(FusionError::SlotGap(k));
        }
        let current = lambda.len() as u32;
        if v == current && current > 0 {
            *lambda.last_mut().expect("nonempty") += 1;
        } else if v == current + 1 {
            lambda.push(1);
        } else if v > current + 1 {
            return Err(FusionError::EmptyVertex(current + 1));
        } else {
            return Err(FusionError::InconsistentVertex { slot: s, vertex: v });
        }
    }
    debug_assert_eq!(lambda.iter().sum::<u32>(), weight);
    let mut up = Vec::new();
    let mut down = Vec::new();
    let mut edges = Vec::new();
    for l in &m.letters {
        if l.start_free {
            down.push(l.seq[0].1);
        }
        if l.end_free {
            up.push(l.seq[l.seq.len() - 1].1);
        }
        for w in l.seq.windows(2) {
            up.push(w[0].1);
            down.push(w[1].1);
            edges.push((w[0].1, w[1].1));
        }
    }
    let raw = RawDiagram { n: lambda.len(), lambda, up, down, edges };
    Ok(raw.validate()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::star_expand;

    fn d(lambda: Vec<u32>, up: Vec<u32>, down: Vec<u32>, edges: Vec<(u32, u32)>) -> BDiagram {
        BDiagram::new(lambda, up, down, edges).unwrap()
    }

    fn fig1() -> BDiagram {
        d(vec![3, 1, 2], (1..=5).collect(), (1..=6).collect(), vec![(1, 6), (2, 4), (4, 5)])
    }

    fn letter(start_free: bool, end_free: bool, seq: &[(u32, u32)]) -> FusionLetter {
        FusionLetter { start_free, end_free, seq: seq.to_vec() }
    }

    #[test]
    fn word_of_fig1() {
        let w = word_of(&fig1());
        assert_eq!(
            w.letters(),
            &[
                letter(true, false, &[(1, 1), (3, 6)]),
                letter(true, true, &[(1, 2), (2, 4), (3, 5)]),
                letter(true, true, &[(1, 3)]),
            ]
        );
        assert_eq!(
            w.to_string(),
            "R>((1,1)(3,6)) R>((1,2)(2,4)(3,5)) R>((1,3)) B((1,1)(3,6))> B((1,2)(2,4)(3,5))< B((1,3))<"
        );
        assert_eq!(diagram_of(&w).unwrap(), fig1());
    }

    #[test]
    fn unit_word() {
        assert!(word_of(&BDiagram::empty()).is_unit());
        assert_eq!(diagram_of(&FusionMonomial::unit()).unwrap(), BDiagram::empty());
        assert_eq!(FusionMonomial::unit().to_string(), "1");
        assert_eq!(FusionMonomial::unit().shift(3, 4), FusionMonomial::unit());
    }

    #[test]
    fn shift_two_letter_word() {
        let w = word_of(&d(vec![2], vec![1, 2], vec![1, 2], vec![]));
        assert_eq!(w.letters(), &[letter(true, true, &[(1, 1)]), letter(true, true, &[(1, 2)])]);
        assert_eq!(w.shift(0, 0), w);
        let s = w.shift(1, 2);
        assert_eq!(s.letters(), &[letter(true, true, &[(2, 3)]), letter(true, true, &[(2, 4)])]);
    }

    #[test]
    fn fstar_worked_example() {
        let g = d(vec![2], vec![1], vec![1, 2], vec![]);
        let w = word_of(&g);
        let terms = fstar_terms(&w, &w);
        assert_eq!(terms.len(), 3);
        let expected = [
            vec![
                letter(true, true, &[(1, 1)]),
                letter(true, false, &[(1, 2)]),
                letter(true, true, &[(2, 3)]),
                letter(true, false, &[(2, 4)]),
            ],
            vec![letter(true, true, &[(1, 1), (2, 3)]), letter(true, false, &[(1, 2)]), letter(true, false, &[(2, 4)])],
            vec![letter(true, false, &[(1, 1), (2, 4)]), letter(true, false, &[(1, 2)]), letter(true, true, &[(2, 3)])],
        ];
        for (t, e) in terms.iter().zip(expected) {
            assert_eq!(t, &FusionMonomial::new(e));
        }
        let decoded: Vec<BDiagram> = terms.iter().map(|t| diagram_of(t).unwrap()).collect();
        assert_eq!(decoded, star_expand(&g, &g));
    }

    #[test]
    fn fstar_square_of_free_vertex() {
        let w = word_of(&d(vec![2], vec![1, 2], vec![1, 2], vec![]));
        let sq = fstar(&w, &w);
        assert_eq!(sq.len(), 7);
        assert!(sq.iter().all(|(_, c)| c.is_one()));
        assert_eq!(fstar(&FusionMonomial::unit(), &w), FusionSum::from(w.clone()));
        assert_eq!(fstar(&w, &FusionMonomial::unit()), FusionSum::from(w));
    }

    #[test]
    fn letter_counts_drop_by_pairings() {
        let u = word_of(&fig1());
        let v = word_of(&d(vec![2], vec![1, 2], vec![1, 2], vec![]));
        let full = u.letters().len() + v.letters().len();
        for t in fstar_terms(&u, &v) {
            let g = diagram_of(&t).unwrap();
            let k = g.tau() - fig1().tau();
            assert_eq!(t.letters().len(), full - k as usize);
        }
    }

    #[test]
    fn diagram_of_rejects_bad_words() {
        let gap = FusionMonomial::new(vec![letter(true, true, &[(1, 1)]), letter(true, true, &[(1, 3)])]);
        assert!(matches!(diagram_of(&gap), Err(FusionError::SlotGap(2))));
        let back = FusionMonomial::new(vec![letter(true, true, &[(2, 2), (1, 1)])]);
        assert!(matches!(diagram_of(&back), Err(FusionError::NotIncreasing)));
        let same = FusionMonomial::new(vec![letter(true, true, &[(1, 1), (1, 2)])]);
        assert!(matches!(diagram_of(&same), Err(FusionError::NotIncreasing)));
        let skip = FusionMonomial::new(vec![letter(true, true, &[(2, 1)])]);
        assert!(matches!(diagram_of(&skip), Err(FusionError::EmptyVertex(1))));
        let rep = FusionMonomial::new(vec![letter(true, true, &[(1, 1)]), letter(true, true, &[(1, 1)])]);
        assert!(matches!(diagram_of(&rep), Err(FusionError::RepeatedSlot(1))));
        let mixed = FusionMonomial::new(vec![
            letter(true, true, &[(1, 1)]),
            letter(true, true, &[(2, 2)]),
            letter(true, true, &[(1, 3)]),
        ]);
        assert!(matches!(diagram_of(&mixed), Err(FusionError::InconsistentVertex { slot: 3, vertex: 1 })));
    }
}
