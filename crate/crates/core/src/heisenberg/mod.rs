//! Normally ordered monomials `(a†)^m a^n e^q e′^v`, their product formula,
//! and the projection of diagrams onto them.

mod expr;
mod order;

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagram::BDiagram;

pub use expr::{parse_expr, Letter, OperatorExpr, ParseError};
pub use order::{diagram_product, normal_order, normal_order_word, stirling, Route, Stirling};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeisenbergError {
    #[error("a vertex needs at least one half-edge (r = s = 0)")]
    EmptyVertex,
    #[error("r has {r} entries but s has {s}")]
    LengthMismatch { r: usize, s: usize },
    #[error("at least one factor is required")]
    NoFactors,
    #[error("exponents must be positive")]
    NonPositive,
    #[error("alpha = {0} is negative")]
    NegativeAlpha(i64),
}

/// `(a†)^m a^n e^q e′^v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalMonomial {
    pub m: u32,
    pub n: u32,
    pub q: u32,
    pub v: u32,
}

impl NormalMonomial {
    pub const fn new(m: u32, n: u32, q: u32, v: u32) -> Self {
        NormalMonomial { m, n, q, v }
    }

    pub fn unit() -> Self {
        Self::default()
    }

    /// Sets both central letters to 1.
    pub fn collapse(self) -> Self {
        NormalMonomial { q: 0, v: 0, ..self }
    }

    fn sort_key(&self) -> Reverse<(u32, u32, u32, u32)> {
        Reverse((self.m, self.n, self.q, self.v))
    }
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [("a+", self.m), ("a", self.n), ("e", self.q), ("e'", self.v)]
            .into_iter()
            .filter(|&(_, k)| k > 0)
            .map(|(x, k)| format!("{x}^{k}"))
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Integer combination of normal monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalPoly {
    terms: BTreeMap<NormalMonomial, BigInt>,
}

impl NormalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, x: NormalMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(x).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn coeff(&self, x: &NormalMonomial) -> BigInt {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NormalMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &NormalPoly) -> NormalPoly {
        let mut out = NormalPoly::zero();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                for (z, c) in mul(x, y).terms {
                    out.add_term(z, a * b * c);
                }
            }
        }
        out
    }

    /// Image in the Heisenberg–Weyl quotient `e = e′ = 1`.
    pub fn collapse(&self) -> NormalPoly {
        let mut out = NormalPoly::zero();
        for (x, c) in &self.terms {
            out.add_term(x.collapse(), c.clone());
        }
        out
    }
}

impl From<NormalMonomial> for NormalPoly {
    fn from(x: NormalMonomial) -> Self {
        let mut p = NormalPoly::zero();
        p.add_term(x, BigInt::one());
        p
    }
}

/// One monomial per line, `c * a+^m a^n e^q e'^v`, by `(m, n)` descending.
impl fmt::Display for NormalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(x, _)| x.sort_key());
        for (x, c) in terms {
            writeln!(f, "{c} * {x}")?;
        }
        Ok(())
    }
}

/// `𝔭_B(G) = (a†)^{hf↓} a^{hf↑} e^{h_c} e′^τ`.
pub fn project(g: &BDiagram) -> NormalMonomial {
    let s = g.stats();
    NormalMonomial::new(s.hf_down, s.hf_up, s.h_c, s.tau)
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `x · y = Σ_i i!·C(n,i)·C(r,i) (a†)^{m+r−i} a^{n+s−i} e^{q+t} e′^{v+w+i}`.
pub fn mul(x: &NormalMonomial, y: &NormalMonomial) -> NormalPoly {
    let mut out = NormalPoly::zero();
    for i in 0..=x.n.min(y.m) {
        let c = factorial(i) * binomial(x.n, i) * binomial(y.m, i);
        out.add_term(NormalMonomial::new(x.m + y.m - i, x.n + y.n - i, x.q + y.q, x.v + y.v + i), c);
    }
    out
}

/// Single vertex realizing `(a†)^r a^s`: `r` free inner and `s` free outer
/// half-edges in the lowest slots.
pub fn vertex_diagram(r: u32, s: u32) -> Result<BDiagram, HeisenbergError> {
    if r == 0 && s == 0 {
        return Err(HeisenbergError::EmptyVertex);
    }
    Ok(BDiagram::new(vec![r.max(s)], (1..=s).collect(), (1..=r).collect(), vec![]).expect("vertex diagram is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nm(m: u32, n: u32, q: u32, v: u32) -> NormalMonomial {
        NormalMonomial::new(m, n, q, v)
    }

    #[test]
    fn project_examples() {
        let fig1 = BDiagram::new(vec![3, 1, 2], (1..=5).collect(), (1..=6).collect(), vec![(1, 6), (2, 4), (4, 5)]).unwrap();
        assert_eq!(project(&fig1), nm(3, 2, 1, 3));
        assert_eq!(project(&BDiagram::empty()), NormalMonomial::unit());
        assert_eq!(project(&vertex_diagram(2, 2).unwrap()), nm(2, 2, 0, 0));
    }

    #[test]
    fn mul_examples() {
        let p = mul(&nm(2, 2, 0, 0), &nm(2, 2, 0, 0));
        let mut expected = NormalPoly::zero();
        expected.add_term(nm(4, 4, 0, 0), 1.into());
        expected.add_term(nm(3, 3, 0, 1), 4.into());
        expected.add_term(nm(2, 2, 0, 2), 2.into());
        assert_eq!(p, expected);
        let x = nm(3, 1, 2, 5);
        assert_eq!(mul(&NormalMonomial::unit(), &x), x.into());
        assert_eq!(mul(&x, &NormalMonomial::unit()), x.into());
        let aad = mul(&nm(0, 1, 0, 0), &nm(1, 0, 0, 0));
        let mut expected = NormalPoly::from(nm(1, 1, 0, 0));
        expected.add_term(nm(0, 0, 0, 1), 1.into());
        assert_eq!(aad, expected);
    }

    #[test]
    fn vertex_diagrams() {
        assert_eq!(vertex_diagram(2, 2).unwrap(), BDiagram::new(vec![2], vec![1, 2], vec![1, 2], vec![]).unwrap());
        assert_eq!(vertex_diagram(1, 1).unwrap(), BDiagram::new(vec![1], vec![1], vec![1], vec![]).unwrap());
        let g = vertex_diagram(2, 1).unwrap();
        assert_eq!(g, BDiagram::new(vec![2], vec![1], vec![1, 2], vec![]).unwrap());
        assert_eq!(project(&g), nm(2, 1, 1, 0));
        assert_eq!(vertex_diagram(0, 0), Err(HeisenbergError::EmptyVertex));
    }

    #[test]
    fn display_sorted_descending() {
        let mut p = NormalPoly::zero();
        p.add_term(nm(1, 1, 0, 0), 1.into());
        p.add_term(nm(2, 2, 1, 3), 3.into());
        p.add_term(NormalMonomial::unit(), (-2).into());
        assert_eq!(p.to_string(), "3 * a+^2 a^2 e^1 e'^3\n1 * a+^1 a^1\n-2 * 1\n");
        assert_eq!(NormalPoly::zero().to_string(), "0\n");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.into());
        assert_eq!(binomial(2, 3), 0.into());
        assert_eq!(binomial(0, 0), 1.into());
        assert_eq!(factorial(5), 120.into());
    }
}
