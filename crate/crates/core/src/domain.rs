//! Possibly reducible domains as multisets of Cartan factors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{CartanFactor, InvariantTriple};

/// Upper bound on the number of factors; keeps `sym_D` orders inside `u128`.
pub const MAX_FACTORS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("a domain needs at least one factor")]
    EmptyProduct,
    #[error("{0} factors exceeds the supported maximum of {MAX_FACTORS}")]
    TooManyFactors(usize),
}

/// A product `D_1 x ... x D_s` in normal form.
///
/// Factors are kept sorted by the [`CartanFactor`] order (family
/// I < II < III < IV < V < VI, then parameters lexicographically), so two
/// domains are isomorphic exactly when they compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Domain {
    factors: Vec<CartanFactor>,
}

pub fn product<I>(factors: I) -> Result<Domain, DomainError>
where
    I: IntoIterator<Item = CartanFactor>,
{
    let mut factors: Vec<CartanFactor> = factors.into_iter().collect();
    if factors.is_empty() {
        return Err(DomainError::EmptyProduct);
    }
    if factors.len() > MAX_FACTORS {
        return Err(DomainError::TooManyFactors(factors.len()));
    }
    factors.sort();
    Ok(Domain { factors })
}

/// Isomorphism of domains, and with it stable isomorphism of their Toeplitz
/// algebras.
pub fn is_isomorphic(a: &Domain, b: &Domain) -> bool {
    a == b
}

impl Domain {
    pub fn factors(&self) -> &[CartanFactor] {
        &self.factors
    }

    /// Number of irreducible factors `s`.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn invariants(&self) -> InvariantTriple {
        self.factors
            .iter()
            .map(CartanFactor::invariant_triple)
            .sum()
    }

    pub fn rank(&self) -> u64 {
        self.invariants().rank
    }

    /// Product with another domain (multiset union of factors).
    pub fn times(&self, other: &Domain) -> Result<Domain, DomainError> {
        product(self.factors.iter().chain(&other.factors).copied())
    }

    pub fn sym_group(&self) -> SymGroupDescriptor {
        let mut blocks: Vec<(CartanFactor, usize)> = Vec::new();
        for &f in &self.factors {
            match blocks.last_mut() {
                Some((g, m)) if *g == f => *m += 1,
                _ => blocks.push((f, 1)),
            }
        }
        let order = blocks.iter().map(|&(_, m)| factorial(m)).product();
        SymGroupDescriptor { blocks, order }
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl FromStr for Domain {
    type Err = crate::expr::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::expr::parse_domain(s)
    }
}

impl Serialize for Domain {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Domain {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The group `sym_D` of factor permutations that only move isomorphic
/// factors among each other: a product of symmetric groups, one per block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymGroupDescriptor {
    pub blocks: Vec<(CartanFactor, usize)>,
    pub order: u128,
}

impl SymGroupDescriptor {
    /// Whether the coordinate permutation `perm` (`perm[j]` is the image of
    /// coordinate `j`) lies in the group for `domain`.
    pub fn contains(domain: &Domain, perm: &[usize]) -> bool {
        perm.len() == domain.len()
            && perm
                .iter()
                .enumerate()
                .all(|(j, &k)| domain.factors.get(k) == Some(&domain.factors[j]))
    }
}
