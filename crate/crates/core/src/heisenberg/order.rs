use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::expr::{factors_of, Letter, OperatorExpr};
use super::{project, vertex_diagram, HeisenbergError, NormalMonomial, NormalPoly};
use crate::hopf::{star, DiagramSum};

/// Normal-ordering strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// Repeated `a a† → a† a + 1` on words.
    Rewrite,
    /// Vertex diagrams multiplied with ⋆ and projected.
    Diagram,
    /// The closed product formula folded over the factors.
    Monomial,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Rewrite, Route::Diagram, Route::Monomial];
}

impl FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rewrite" => Ok(Route::Rewrite),
            "diagram" => Ok(Route::Diagram),
            "monomial" => Ok(Route::Monomial),
            _ => Err(format!("unknown route '{s}' (expected rewrite, diagram or monomial)")),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Rewrite => "rewrite",
            Route::Diagram => "diagram",
            Route::Monomial => "monomial",
        })
    }
}

fn rewrite(word: &[Letter]) -> NormalPoly {
    let mut pending: BTreeMap<Vec<Letter>, BigInt> = BTreeMap::new();
    pending.insert(word.to_vec(), BigInt::one());
    let mut out = NormalPoly::zero();
    while let Some((w, c)) = pending.pop_last() {
        match w.windows(2).position(|p| p == [Letter::Annihilate, Letter::Create]) {
            None => {
                let m = w.iter().filter(|&&l| l == Letter::Create).count() as u32;
                out.add_term(NormalMonomial::new(m, w.len() as u32 - m, 0, 0), c);
            }
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                let mut contracted = w;
                contracted.drain(i..i + 2);
                for next in [swapped, contracted] {
                    *pending.entry(next).or_insert_with(BigInt::zero) += &c;
                }
            }
        }
    }
    out
}

/// `X₁ ⋆ X₂ ⋆ ⋯` for the vertex diagrams of the factors, the first factor
/// lowest.
pub fn diagram_product(factors: &[(u32, u32)]) -> Result<DiagramSum, HeisenbergError> {
    let mut acc = DiagramSum::one();
    for &(r, s) in factors {
        acc = star(&acc, &vertex_diagram(r, s)?.into());
    }
    Ok(acc)
}

/// Normal form of a word with `e = e′ = 1`.
pub fn normal_order_word(word: &[Letter], route: Route) -> NormalPoly {
    let factors = factors_of(word);
    match route {
        Route::Rewrite => rewrite(word),
        Route::Diagram => {
            let mut out = NormalPoly::zero();
            let sum = diagram_product(&factors).expect("blocks are nonempty");
            for (g, c) in sum.iter() {
                out.add_term(project(g).collapse(), c.to_integer());
            }
            out
        }
        Route::Monomial => factors
            .iter()
            .fold(NormalPoly::from(NormalMonomial::unit()), |acc, &(r, s)| {
                acc.mul(&NormalMonomial::new(r, s, r.abs_diff(s), 0).into())
            })
            .collapse(),
    }
}

pub fn normal_order(expr: &OperatorExpr, route: Route) -> NormalPoly {
    normal_order_word(&expr.word(), route)
}

/// `α` and the generalized Stirling numbers `S_{r,s}(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stirling {
    pub alpha: u32,
    pub coeffs: BTreeMap<u32, BigInt>,
}

impl fmt::Display for Stirling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={};", self.alpha)?;
        for (k, c) in &self.coeffs {
            write!(f, " S({k})={c}")?;
        }
        Ok(())
    }
}

/// Normal-orders `(a†)^{r_n} a^{s_n} ⋯ (a†)^{r_1} a^{s_1}` and reads off
/// `(a†)^α Σ_k S(k) (a†)^k a^k`.
pub fn stirling(r: &[u32], s: &[u32], route: Route) -> Result<Stirling, HeisenbergError> {
    if r.len() != s.len() {
        return Err(HeisenbergError::LengthMismatch { r: r.len(), s: s.len() });
    }
    if r.is_empty() {
        return Err(HeisenbergError::NoFactors);
    }
    if r.iter().chain(s).any(|&x| x == 0) {
        return Err(HeisenbergError::NonPositive);
    }
    let alpha: i64 = r.iter().zip(s).map(|(&a, &b)| a as i64 - b as i64).sum();
    if alpha < 0 {
        return Err(HeisenbergError::NegativeAlpha(alpha));
    }
    let factors: Vec<(u32, u32)> = r.iter().copied().zip(s.iter().copied()).rev().collect();
    let poly = normal_order(&OperatorExpr::from_factors(&factors), route);
    let alpha = alpha as u32;
    let mut coeffs = BTreeMap::new();
    for (x, c) in poly.iter() {
        debug_assert_eq!(x.m, x.n + alpha);
        coeffs.insert(x.n, c.clone());
    }
    Ok(Stirling { alpha, coeffs })
}
