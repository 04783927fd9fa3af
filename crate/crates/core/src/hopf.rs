//! The algebra of B-diagrams: exact linear combinations, the star product,
//! the coproduct splitting connected components, convolution of linear maps,
//! and the Eulerian idempotent projecting onto primitive elements.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{AddAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::diagram::{star_expand, union_of, BDiagram};

/// Exact rational coefficient.
pub type Coeff = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HopfError {
    #[error("the Eulerian idempotent is undefined on the empty diagram")]
    EmptyDiagram,
}

/// Finite linear combination of diagrams; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramSum {
    terms: BTreeMap<BDiagram, Coeff>,
}

impl DiagramSum {
    pub fn zero() -> Self {
        Self::default()
    }

    /// ε with coefficient 1.
    pub fn one() -> Self {
        Self::from(BDiagram::empty())
    }

    pub fn add_term(&mut self, g: BDiagram, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, g: &BDiagram) -> Coeff {
        self.terms.get(g).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BDiagram, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &Coeff) -> DiagramSum {
        let mut out = DiagramSum::zero();
        for (g, k) in &self.terms {
            out.add_term(g.clone(), k * c);
        }
        out
    }

    /// Restriction to the graded piece of weight `k`.
    pub fn homogeneous_part(&self, k: u32) -> DiagramSum {
        DiagramSum {
            terms: self.terms.iter().filter(|(g, _)| g.weight() == k).map(|(g, c)| (g.clone(), c.clone())).collect(),
        }
    }

    /// Applies a basis-level map linearly.
    pub fn map_linear(&self, f: impl Fn(&BDiagram) -> DiagramSum) -> DiagramSum {
        let mut out = DiagramSum::zero();
        for (g, c) in &self.terms {
            out += &f(g).scaled(c);
        }
        out
    }
}

impl From<BDiagram> for DiagramSum {
    fn from(g: BDiagram) -> Self {
        let mut s = DiagramSum::zero();
        s.add_term(g, Coeff::one());
        s
    }
}

impl FromIterator<(BDiagram, Coeff)> for DiagramSum {
    fn from_iter<I: IntoIterator<Item = (BDiagram, Coeff)>>(iter: I) -> Self {
        let mut s = DiagramSum::zero();
        for (g, c) in iter {
            s.add_term(g, c);
        }
        s
    }
}

impl FromIterator<BDiagram> for DiagramSum {
    fn from_iter<I: IntoIterator<Item = BDiagram>>(iter: I) -> Self {
        iter.into_iter().map(|g| (g, Coeff::one())).collect()
    }
}

impl AddAssign<&DiagramSum> for DiagramSum {
    fn add_assign(&mut self, rhs: &DiagramSum) {
        for (g, c) in &rhs.terms {
            self.add_term(g.clone(), c.clone());
        }
    }
}

impl SubAssign<&DiagramSum> for DiagramSum {
    fn sub_assign(&mut self, rhs: &DiagramSum) {
        for (g, c) in &rhs.terms {
            self.add_term(g.clone(), -c);
        }
    }
}

impl Sub for &DiagramSum {
    type Output = DiagramSum;

    fn sub(self, rhs: &DiagramSum) -> DiagramSum {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &DiagramSum {
    type Output = DiagramSum;

    fn neg(self) -> DiagramSum {
        self.scaled(&-Coeff::one())
    }
}

/// One term per line: coefficient, a space, then the diagram JSON.
impl fmt::Display for DiagramSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (g, c) in &self.terms {
            writeln!(f, "{c} {g}")?;
        }
        Ok(())
    }
}

/// Element of `ℬ ⊗ ℬ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorSum {
    terms: BTreeMap<(BDiagram, BDiagram), Coeff>,
}

impl TensorSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, left: BDiagram, right: BDiagram, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((left, right)).or_insert_with(Coeff::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(BDiagram, BDiagram), &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, left: &BDiagram, right: &BDiagram) -> Coeff {
        self.terms.get(&(left.clone(), right.clone())).cloned().unwrap_or_else(Coeff::zero)
    }

    /// The flip `x ⊗ y ↦ y ⊗ x`.
    pub fn swapped(&self) -> TensorSum {
        let mut out = TensorSum::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(r.clone(), l.clone(), c.clone());
        }
        out
    }

    /// Componentwise product `(a ⊗ b) ⋆ (c ⊗ d) = (a ⋆ c) ⊗ (b ⋆ d)`.
    pub fn star(&self, other: &TensorSum) -> TensorSum {
        let mut out = TensorSum::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let xy = x * y;
                let left = star_expand(a, c);
                let right = star_expand(b, d);
                for l in &left {
                    for r in &right {
                        out.add_term(l.clone(), r.clone(), xy.clone());
                    }
                }
            }
        }
        out
    }

    /// `μ(x ⊗ y) = x ⋆ y` summed over terms.
    pub fn multiply(&self) -> DiagramSum {
        let mut out = DiagramSum::zero();
        for ((l, r), c) in &self.terms {
            for g in star_expand(l, r) {
                out.add_term(g, c.clone());
            }
        }
        out
    }
}

impl fmt::Display for TensorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for ((l, r), c) in &self.terms {
            writeln!(f, "{c} {l} (x) {r}")?;
        }
        Ok(())
    }
}

/// Bilinear star product.
pub fn star(x: &DiagramSum, y: &DiagramSum) -> DiagramSum {
    let mut out = DiagramSum::zero();
    for (g, a) in x.iter() {
        for (h, b) in y.iter() {
            let ab = a * b;
            for term in star_expand(g, h) {
                out.add_term(term, ab.clone());
            }
        }
    }
    out
}

/// `Δ(G)`: one term `G[⋃𝓘] ⊗ G[complement]` per subset `𝓘` of connected
/// components.
pub fn coproduct(g: &BDiagram) -> TensorSum {
    let components = g.connected_components();
    let all = (1u64 << components.len()) - 1;
    let mut out = TensorSum::zero();
    for mask in 0..=all {
        let left = g.subdiagram_unchecked(&union_of(&components, mask));
        let right = g.subdiagram_unchecked(&union_of(&components, all ^ mask));
        out.add_term(left, right, Coeff::one());
    }
    out
}

pub fn coproduct_sum(x: &DiagramSum) -> TensorSum {
    let mut out = TensorSum::zero();
    for (g, c) in x.iter() {
        for ((l, r), k) in coproduct(g).iter() {
            out.add_term(l.clone(), r.clone(), k * c);
        }
    }
    out
}

/// Coefficient of ε.
pub fn counit(x: &DiagramSum) -> Coeff {
    x.coeff(&BDiagram::empty())
}

/// `x` is primitive iff `Δ(x) = x ⊗ ε + ε ⊗ x`.
pub fn is_primitive(x: &DiagramSum) -> bool {
    let mut expected = TensorSum::zero();
    let e = BDiagram::empty();
    for (g, c) in x.iter() {
        expected.add_term(g.clone(), e.clone(), c.clone());
        expected.add_term(e.clone(), g.clone(), c.clone());
    }
    coproduct_sum(x) == expected
}

type Triple = BTreeMap<(BDiagram, BDiagram, BDiagram), Coeff>;

fn add_triple(acc: &mut Triple, key: (BDiagram, BDiagram, BDiagram), c: Coeff) {
    let slot = acc.entry(key).or_insert_with(Coeff::zero);
    *slot += c;
}

/// `(Δ ⊗ Id)∘Δ(G)` and `(Id ⊗ Δ)∘Δ(G)` with zero entries dropped.
pub fn iterated_coproducts(g: &BDiagram) -> (Triple, Triple) {
    let delta = coproduct(g);
    let mut left = Triple::new();
    let mut right = Triple::new();
    for ((l, r), c) in delta.iter() {
        for ((ll, lr), k) in coproduct(l).iter() {
            add_triple(&mut left, (ll.clone(), lr.clone(), r.clone()), c * k);
        }
        for ((rl, rr), k) in coproduct(r).iter() {
            add_triple(&mut right, (l.clone(), rl.clone(), rr.clone()), c * k);
        }
    }
    left.retain(|_, v| !v.is_zero());
    right.retain(|_, v| !v.is_zero());
    (left, right)
}

/// A linear endomorphism of `ℬ`, given by its values on basis diagrams and
/// evaluated lazily.
#[derive(Clone)]
pub struct Endomorphism(Arc<dyn Fn(&BDiagram) -> DiagramSum + Send + Sync>);

impl Endomorphism {
    pub fn from_fn(f: impl Fn(&BDiagram) -> DiagramSum + Send + Sync + 'static) -> Self {
        Endomorphism(Arc::new(f))
    }

    pub fn identity() -> Self {
        Self::from_fn(|g| DiagramSum::from(g.clone()))
    }

    /// ξ: projection onto the span of ε; the unit of convolution.
    pub fn unit() -> Self {
        Self::from_fn(|g| if g.is_empty() { DiagramSum::one() } else { DiagramSum::zero() })
    }

    /// `Id − ξ`.
    pub fn augmentation() -> Self {
        Self::from_fn(|g| if g.is_empty() { DiagramSum::zero() } else { DiagramSum::from(g.clone()) })
    }

    pub fn apply_basis(&self, g: &BDiagram) -> DiagramSum {
        (self.0)(g)
    }

    pub fn apply(&self, x: &DiagramSum) -> DiagramSum {
        x.map_linear(|g| self.apply_basis(g))
    }

    /// `f ∗ g = μ∘(f ⊗ g)∘Δ`.
    pub fn convolve(&self, other: &Endomorphism) -> Endomorphism {
        let (f, g) = (self.clone(), other.clone());
        Self::from_fn(move |d| {
            let mut out = DiagramSum::zero();
            for ((l, r), c) in coproduct(d).iter() {
                let fl = f.apply_basis(l);
                if fl.is_empty() {
                    continue;
                }
                let gr = g.apply_basis(r);
                out += &star(&fl, &gr).scaled(c);
            }
            out
        })
    }

    /// `f^{∗k}`, with `f^{∗0} = ξ`.
    pub fn convolution_power(&self, k: u32) -> Endomorphism {
        (0..k).fold(Self::unit(), |acc, _| self.convolve(&acc))
    }
}

/// `π₁(G) = Σ_{k ≥ 1} (−1)^{k+1}/k · (Id − ξ)^{∗k}(G)`.
///
/// `(Id − ξ)^{∗k}` vanishes on a diagram with fewer than `k` connected
/// components, so the series stops at the component count.
pub fn eulerian(g: &BDiagram) -> Result<DiagramSum, HopfError> {
    if g.is_empty() {
        return Err(HopfError::EmptyDiagram);
    }
    let components = g.connected_components().len() as u32;
    let aug = Endomorphism::augmentation();
    let mut power = aug.clone();
    let mut out = DiagramSum::zero();
    for k in 1..=components {
        let sign = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        let c = Coeff::new(sign, BigInt::from(k));
        out += &power.apply_basis(g).scaled(&c);
        if k < components {
            power = aug.convolve(&power);
        }
    }
    Ok(out)
}

/// Linear extension of [`eulerian`]; ε is sent to zero.
pub fn eulerian_sum(x: &DiagramSum) -> DiagramSum {
    x.map_linear(|g| eulerian(g).unwrap_or_default())
}

/// `[P, Q] = P ⋆ Q − Q ⋆ P`.
pub fn bracket(p: &DiagramSum, q: &DiagramSum) -> DiagramSum {
    &star(p, q) - &star(q, p)
}

/// Largest absolute numerator among coefficients; handy for sanity reports.
pub fn max_abs_numer(x: &DiagramSum) -> BigInt {
    x.iter().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}
