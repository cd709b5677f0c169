//! The primitive-ideal spectrum of a Toeplitz algebra at stratum granularity.
//!
//! For `D = D_1 x ... x D_s` with factor ranks `r_j`, the strata are the
//! tuples `i = (i_1, ..., i_s)` with `0 <= i_j <= r_j`. Specialization is the
//! componentwise order, so the poset is a product of chains graded by the
//! weight `|i| = i_1 + ... + i_s`. The bottom tuple is the open point (the
//! compact operators) and the weight-`k` strata form the `k`-th layer of the
//! canonical ideal filtration.
//!
//! Ideals correspond to open sets of the spectrum, modeled here as down-sets
//! ([`IdealDownSet`]).

mod automorphism;
mod export;
mod ideal;

use std::fmt;

use thiserror::Error;

use crate::cartan::{CartanFactor, InvariantTriple};
use crate::domain::Domain;

pub use automorphism::{Permutation, PosetAutomorphism, DEFAULT_AUTOMORPHISM_LIMIT};
pub use export::{CoordinateLabel, SpectrumJson};
pub use ideal::IdealDownSet;

/// Default bound on the number of strata [`build_spectrum`] will materialize.
pub const DEFAULT_STRATA_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("poset would have {size} strata, above the limit of {limit}")]
    SizeLimit { size: u128, limit: usize },
    #[error("weight {weight} is outside 0..={max}")]
    WeightOutOfRange { weight: u64, max: u64 },
    #[error("{tuple} is not a stratum of a poset with ranks {ranks:?}")]
    InvalidTuple { tuple: Stratum, ranks: Vec<u32> },
    #[error("ideals belong to different posets")]
    PosetMismatch,
    #[error("automorphism is not induced by a permutation of coordinates")]
    NotCoordinateInduced,
}

/// A stratum index `(i_1, ..., i_s)`, printed as `1,0,2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stratum(pub Vec<u32>);

impl Stratum {
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &Stratum) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl From<Vec<u32>> for Stratum {
    fn from(v: Vec<u32>) -> Self {
        Stratum(v)
    }
}

impl From<&[u32]> for Stratum {
    fn from(v: &[u32]) -> Self {
        Stratum(v.to_vec())
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Labeled product-of-chains poset modeling the spectrum of `T(D)`.
///
/// Strata are stored in lexicographic order (last coordinate fastest), which
/// is a linear extension of the specialization order. Coordinates follow the
/// factor order of the [`Domain`] normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumPoset {
    factors: Vec<CartanFactor>,
    ranks: Vec<u32>,
    strata: Vec<Stratum>,
}

pub fn build_spectrum(domain: &Domain) -> Result<StratumPoset, SpectrumError> {
    StratumPoset::with_limit(domain, DEFAULT_STRATA_LIMIT)
}

impl StratumPoset {
    pub fn with_limit(domain: &Domain, limit: usize) -> Result<Self, SpectrumError> {
        let factors = domain.factors().to_vec();
        let ranks: Vec<u32> = factors
            .iter()
            .map(|f| u32::try_from(f.rank()).unwrap_or(u32::MAX))
            .collect();
        let size = ranks
            .iter()
            .try_fold(1u128, |acc, &r| acc.checked_mul(r as u128 + 1))
            .unwrap_or(u128::MAX);
        if size > limit as u128 {
            return Err(SpectrumError::SizeLimit { size, limit });
        }
        let mut strata = Vec::with_capacity(size as usize);
        let mut current = vec![0u32; ranks.len()];
        loop {
            strata.push(Stratum(current.clone()));
            // odometer increment, last coordinate fastest
            let mut j = ranks.len();
            loop {
                if j == 0 {
                    return Ok(StratumPoset {
                        factors,
                        ranks,
                        strata,
                    });
                }
                j -= 1;
                if current[j] < ranks[j] {
                    current[j] += 1;
                    break;
                }
                current[j] = 0;
            }
        }
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn factors(&self) -> &[CartanFactor] {
        &self.factors
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// Number of coordinates `s`.
    pub fn dimension(&self) -> usize {
        self.ranks.len()
    }

    pub fn stratum(&self, index: usize) -> &Stratum {
        &self.strata[index]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.strata.len() - 1
    }

    /// Mixed-radix position of `coords`, if it is a stratum.
    pub fn index_of(&self, coords: &[u32]) -> Option<usize> {
        if coords.len() != self.ranks.len() {
            return None;
        }
        let mut idx = 0usize;
        for (&c, &r) in coords.iter().zip(&self.ranks) {
            if c > r {
                return None;
            }
            idx = idx * (r as usize + 1) + c as usize;
        }
        Some(idx)
    }

    pub(crate) fn checked_index(&self, coords: &[u32]) -> Result<usize, SpectrumError> {
        self.index_of(coords)
            .ok_or_else(|| SpectrumError::InvalidTuple {
                tuple: Stratum(coords.to_vec()),
                ranks: self.ranks.clone(),
            })
    }

    pub fn weight(&self, index: usize) -> u64 {
        self.strata[index].weight()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.strata[a].leq(&self.strata[b])
    }

    /// Strata covering `index`: one coordinate raised by one.
    pub fn upper_covers(&self, index: usize) -> Vec<usize> {
        let s = &self.strata[index].0;
        let mut out = Vec::new();
        let mut stride = 1usize;
        for j in (0..s.len()).rev() {
            if s[j] < self.ranks[j] {
                out.push(index + stride);
            }
            stride *= self.ranks[j] as usize + 1;
        }
        out.sort_unstable();
        out
    }

    /// Strata covered by `index`: one coordinate lowered by one.
    pub fn lower_covers(&self, index: usize) -> Vec<usize> {
        let s = &self.strata[index].0;
        let mut out = Vec::new();
        let mut stride = 1usize;
        for j in (0..s.len()).rev() {
            if s[j] > 0 {
                out.push(index - stride);
            }
            stride *= self.ranks[j] as usize + 1;
        }
        out.sort_unstable();
        out
    }

    /// All covering pairs `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.upper_covers(i).into_iter().map(move |j| (i, j)))
            .collect()
    }

    /// Per-coordinate label of a stratum: the factor invariants paired with
    /// the coordinate's stratum index.
    pub fn label(&self, index: usize) -> Vec<(InvariantTriple, u32)> {
        self.factors
            .iter()
            .zip(&self.strata[index].0)
            .map(|(f, &c)| (f.invariant_triple(), c))
            .collect()
    }

    /// The label as a multiset (sorted), which is what automorphisms preserve.
    pub fn label_multiset(&self, index: usize) -> Vec<(InvariantTriple, u32)> {
        let mut l = self.label(index);
        l.sort_unstable();
        l
    }

    /// Invariant triples of the coordinates, in coordinate order.
    pub fn coordinate_triples(&self) -> Vec<InvariantTriple> {
        self.factors
            .iter()
            .map(CartanFactor::invariant_triple)
            .collect()
    }

    /// Longest chains from the bottom, computed from the cover graph alone.
    pub(crate) fn heights(&self) -> Vec<u64> {
        let mut height = vec![0u64; self.len()];
        // index order is a linear extension, so predecessors are final
        for i in 0..self.len() {
            for j in self.upper_covers(i) {
                height[j] = height[j].max(height[i] + 1);
            }
        }
        height
    }

    /// Length of the canonical ideal filtration, i.e. the length of the
    /// longest chain in the poset.
    pub fn solvable_length(&self) -> u64 {
        self.heights().into_iter().max().unwrap_or(0)
    }

    pub fn max_weight(&self) -> u64 {
        self.ranks.iter().map(|&r| r as u64).sum()
    }

    fn check_weight(&self, k: u64) -> Result<(), SpectrumError> {
        let max = self.max_weight();
        if k > max {
            return Err(SpectrumError::WeightOutOfRange { weight: k, max });
        }
        Ok(())
    }

    /// The tuples of weight `k`, one per connected component of the `k`-th
    /// layer, in descending lexicographic order.
    pub fn layer_components(&self, k: u64) -> Result<Vec<Stratum>, SpectrumError> {
        self.check_weight(k)?;
        Ok(self
            .strata
            .iter()
            .rev()
            .filter(|s| s.weight() == k)
            .cloned()
            .collect())
    }

    /// Strata of weight at most `k`: the ideal `I_k` of the filtration.
    pub fn ideal_of_weight(&self, k: u64) -> Result<IdealDownSet<'_>, SpectrumError> {
        self.check_weight(k)?;
        Ok(IdealDownSet::from_predicate(self, |s| s.weight() <= k))
    }

    /// `{ j : j <= i }`, the tensor-product ideal `I_i`.
    pub fn principal_downset(&self, coords: &[u32]) -> Result<IdealDownSet<'_>, SpectrumError> {
        let top = self.strata[self.checked_index(coords)?].clone();
        Ok(IdealDownSet::from_predicate(self, |s| s.leq(&top)))
    }

    /// `I_k` as the sum of the `I_i` with `|i| = k`, one summand per layer
    /// component.
    pub fn decompose_weight_ideal(&self, k: u64) -> Result<Vec<IdealDownSet<'_>>, SpectrumError> {
        let parts: Vec<IdealDownSet<'_>> = self
            .layer_components(k)?
            .iter()
            .map(|s| self.principal_downset(s.coords()))
            .collect::<Result<_, _>>()?;
        let mut union = IdealDownSet::empty(self);
        for p in &parts {
            union = union.union(p)?;
        }
        assert_eq!(
            union,
            self.ideal_of_weight(k)?,
            "I_k must be the sum of the I_i"
        );
        Ok(parts)
    }

    /// The tuple with `k` in coordinate `j` and zeros elsewhere.
    pub fn bullet(&self, j: usize, k: u32) -> Result<Stratum, SpectrumError> {
        let mut v = vec![0u32; self.dimension()];
        if j < v.len() {
            v[j] = k;
        }
        if j >= v.len() || self.index_of(&v).is_none() {
            return Err(SpectrumError::InvalidTuple {
                tuple: Stratum(v),
                ranks: self.ranks.clone(),
            });
        }
        Ok(Stratum(v))
    }

    /// Length and number of the maximal chains from the bottom to `coords`.
    pub fn maximal_chain_lengths(&self, coords: &[u32]) -> Result<ChainStats, SpectrumError> {
        let target = self.checked_index(coords)?;
        // shortest and longest saturated chains plus their count over the
        // interval [bottom, target], walking covers in index order
        let n = target + 1;
        let mut shortest = vec![u64::MAX; n];
        let mut longest = vec![0u64; n];
        let mut count = vec![0u128; n];
        shortest[0] = 0;
        count[0] = 1;
        for i in 0..n {
            if count[i] == 0 || !self.leq(i, target) {
                continue;
            }
            for j in self.upper_covers(i) {
                if j < n && self.leq(j, target) {
                    shortest[j] = shortest[j].min(shortest[i] + 1);
                    longest[j] = longest[j].max(longest[i] + 1);
                    count[j] = count[j].saturating_add(count[i]);
                }
            }
        }
        assert_eq!(
            shortest[target], longest[target],
            "maximal chains in a graded poset share one length"
        );
        Ok(ChainStats {
            length: longest[target],
            count: count[target],
        })
    }
}

/// Result of [`StratumPoset::maximal_chain_lengths`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainStats {
    /// Common length of every maximal chain, equal to the weight.
    pub length: u64,
    /// Number of maximal chains (a multinomial coefficient); saturates.
    pub count: u128,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_domain;

    fn spec(text: &str) -> StratumPoset {
        build_spectrum(&parse_domain(text).unwrap()).unwrap()
    }

    fn strs(v: &[Stratum]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn build_examples() {
        let p = spec("Ball(1) x Ball(1)");
        assert_eq!(strs(p.strata()), ["0,0", "0,1", "1,0", "1,1"]);
        let vi = spec("VI");
        assert_eq!(vi.len(), 4);
        assert_eq!(vi.covers(), vec![(0, 1), (1, 2), (2, 3)]);
        let grid = spec("I(3,2) x IV(5)");
        assert_eq!(grid.ranks(), &[2, 2]);
        assert_eq!(grid.len(), 9);
    }

    #[test]
    fn size_limit() {
        let d = parse_domain("VI x VI x VI").unwrap();
        assert_eq!(
            StratumPoset::with_limit(&d, 63),
            Err(SpectrumError::SizeLimit {
                size: 64,
                limit: 63
            })
        );
        assert!(StratumPoset::with_limit(&d, 64).is_ok());
        let big = parse_domain("I(1000000,1000000) x I(1000000,1000000)").unwrap();
        assert!(matches!(
            build_spectrum(&big),
            Err(SpectrumError::SizeLimit { .. })
        ));
    }

    #[test]
    fn solvable_length_examples() {
        assert_eq!(spec("Ball(1) x Ball(1)").solvable_length(), 2);
        assert_eq!(spec("VI").solvable_length(), 3);
        assert_eq!(spec("I(3,2) x IV(5)").solvable_length(), 4);
    }

    #[test]
    fn weight_ideals() {
        let p = spec("Ball(1) x Ball(1)");
        let i1 = p.ideal_of_weight(1).unwrap();
        assert_eq!(strs(&i1.members()), ["0,0", "0,1", "1,0"]);
        assert_eq!(
            p.ideal_of_weight(0).unwrap().members(),
            vec![Stratum(vec![0, 0])]
        );
        assert_eq!(p.ideal_of_weight(2).unwrap().len(), 4);
        assert_eq!(
            p.ideal_of_weight(3).unwrap_err(),
            SpectrumError::WeightOutOfRange { weight: 3, max: 2 }
        );
    }

    #[test]
    fn principal_downsets() {
        let p = spec("Ball(1) x Ball(1)");
        assert_eq!(
            strs(&p.principal_downset(&[1, 0]).unwrap().members()),
            ["0,0", "1,0"]
        );
        assert_eq!(p.principal_downset(&[0, 0]).unwrap().len(), 1);
        assert_eq!(p.principal_downset(&[1, 1]).unwrap().len(), 4);
        assert!(matches!(
            p.principal_downset(&[2, 0]),
            Err(SpectrumError::InvalidTuple { .. })
        ));
        assert!(matches!(
            p.principal_downset(&[0]),
            Err(SpectrumError::InvalidTuple { .. })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let p = spec("Ball(1) x Ball(1)");
        let parts = p.decompose_weight_ideal(1).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], p.principal_downset(&[1, 0]).unwrap());
        assert_eq!(parts[1], p.principal_downset(&[0, 1]).unwrap());
        let chain = spec("VI");
        for k in 0..=3 {
            assert_eq!(chain.decompose_weight_ideal(k).unwrap().len(), 1);
        }
        let cube = spec("I(1,1) x I(1,1) x I(1,1)");
        let tops: Vec<String> = cube
            .decompose_weight_ideal(2)
            .unwrap()
            .iter()
            .map(|d| d.maximal_elements()[0].to_string())
            .collect();
        assert_eq!(tops, ["1,1,0", "1,0,1", "0,1,1"]);
        assert!(cube.decompose_weight_ideal(4).is_err());
    }

    #[test]
    fn layer_component_examples() {
        let p = spec("Ball(1) x Ball(1)");
        assert_eq!(strs(&p.layer_components(1).unwrap()), ["1,0", "0,1"]);
        assert_eq!(strs(&p.layer_components(0).unwrap()), ["0,0"]);
        let grid = spec("I(3,2) x IV(5)");
        assert_eq!(
            strs(&grid.layer_components(2).unwrap()),
            ["2,0", "1,1", "0,2"]
        );
    }

    #[test]
    fn chain_examples() {
        let p = spec("Ball(1) x Ball(1)");
        assert_eq!(p.maximal_chain_lengths(&[1, 1]).unwrap().length, 2);
        assert_eq!(
            p.maximal_chain_lengths(&[0, 0]).unwrap(),
            ChainStats {
                length: 0,
                count: 1
            }
        );
        let cube = spec("I(1,1) x I(1,1) x I(1,1)");
        assert_eq!(
            cube.maximal_chain_lengths(&[1, 1, 1]).unwrap(),
            ChainStats {
                length: 3,
                count: 6
            }
        );
        assert!(cube.maximal_chain_lengths(&[1, 1]).is_err());
    }

    #[test]
    fn covers_and_index() {
        let p = spec("I(1,1) x I(2,2)");
        for (i, s) in p.strata().iter().enumerate() {
            assert_eq!(p.index_of(s.coords()), Some(i));
            for j in p.upper_covers(i) {
                assert_eq!(p.weight(j), p.weight(i) + 1);
                assert!(p.leq(i, j));
                assert!(p.lower_covers(j).contains(&i));
            }
        }
        assert_eq!(p.covers().len(), 7);
        assert_eq!(p.bullet(1, 2).unwrap(), Stratum(vec![0, 2]));
        assert!(p.bullet(0, 2).is_err());
        assert!(p.bullet(2, 0).is_err());
    }
}
