//! Recovering domains from invariant data, and bounded injectivity sweeps
//! of the invariant map.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{canonical_factors, make_factor, CartanFactor, Family, InvariantTriple};
use crate::domain::{product, Domain, DomainError};
use crate::spectrum::StratumPoset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("no irreducible domain has invariants {0}")]
    NotFound(InvariantTriple),
    #[error("invariants {triple} match several domains: {}", display_list(.matches))]
    Ambiguous {
        triple: InvariantTriple,
        matches: Vec<CartanFactor>,
    },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

fn display_list(factors: &[CartanFactor]) -> String {
    factors
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Candidate factors whose closed forms could produce `t`, one per family
/// branch. Parameters are solved exactly; candidates still need a forward
/// check.
fn candidates(t: &InvariantTriple) -> Vec<CartanFactor> {
    let q = t.rank;
    let mut out = Vec::new();
    let mut push = |family: Family, params: &[u64]| {
        if let Ok(f) = make_factor(family, params) {
            out.push(f);
        }
    };
    if q >= 1 {
        if let Some(two_q) = q.checked_mul(2) {
            if t.real_dim.is_multiple_of(two_q) {
                let p = t.real_dim / two_q;
                if p >= q {
                    push(Family::I, &[p, q]);
                }
            }
            push(Family::II, &[two_q]);
            if let Some(odd) = two_q.checked_add(1) {
                push(Family::II, &[odd]);
            }
        }
        push(Family::III, &[q]);
    }
    if q == 2 && t.real_dim.is_multiple_of(2) {
        push(Family::IV, &[t.real_dim / 2]);
    }
    push(Family::V, &[]);
    push(Family::VI, &[]);
    out
}

/// The canonical irreducible factor with invariant triple `t`.
pub fn from_invariants(t: InvariantTriple) -> Result<CartanFactor, ReconstructError> {
    let mut matches: Vec<CartanFactor> = candidates(&t)
        .into_iter()
        .filter(|f| f.invariant_triple() == t)
        .collect();
    matches.sort();
    matches.dedup();
    match matches.len() {
        0 => Err(ReconstructError::NotFound(t)),
        1 => Ok(matches[0]),
        _ => Err(ReconstructError::Ambiguous { triple: t, matches }),
    }
}

/// Rebuilds a product domain from the multiset of its factor triples.
pub fn reconstruct_product(triples: &[InvariantTriple]) -> Result<Domain, ReconstructError> {
    let factors = triples
        .iter()
        .map(|&t| from_invariants(t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(product(factors)?)
}

/// Per-coordinate factor triples carried by the spectrum labels, sorted.
pub fn factor_data_of_spectrum(poset: &StratumPoset) -> Vec<InvariantTriple> {
    let mut triples: Vec<InvariantTriple> = poset
        .label(poset.bottom())
        .into_iter()
        .map(|(t, _)| t)
        .collect();
    triples.sort();
    triples
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub triple: InvariantTriple,
    pub factors: Vec<CartanFactor>,
}

/// Findings of [`verify_complete_invariant`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub scanned_count: usize,
    pub max_param: u64,
    /// Triples hit by more than one factor.
    pub collisions: Vec<Collision>,
    /// Factors `f` with `from_invariants(invariant_triple(f)) != f`.
    pub roundtrip_failures: Vec<CartanFactor>,
    /// Factors where the tube flag disagrees with `2 * shilov_dim == real_dim`.
    pub tube_violations: Vec<CartanFactor>,
    /// Tube factors sharing `(rank, real_dim)`.
    pub tube_rank_dim_collisions: Vec<Collision>,
    pub elapsed_ms: u64,
}

impl ReconstructionReport {
    pub fn is_clean(&self) -> bool {
        self.collisions.is_empty()
            && self.roundtrip_failures.is_empty()
            && self.tube_violations.is_empty()
            && self.tube_rank_dim_collisions.is_empty()
    }
}

struct Scanned {
    factor: CartanFactor,
    triple: InvariantTriple,
    roundtrip_ok: bool,
    tube_ok: bool,
}

fn group(entries: impl Iterator<Item = (InvariantTriple, CartanFactor)>) -> Vec<Collision> {
    let mut by_triple: BTreeMap<InvariantTriple, Vec<CartanFactor>> = BTreeMap::new();
    for (t, f) in entries {
        by_triple.entry(t).or_default().push(f);
    }
    by_triple
        .into_iter()
        .filter(|(_, fs)| fs.len() > 1)
        .map(|(triple, factors)| Collision { triple, factors })
        .collect()
}

/// Scans every canonical factor with parameters `<= max_param` (V and VI
/// always included) on the global rayon pool.
pub fn verify_complete_invariant(max_param: u64) -> ReconstructionReport {
    let start = Instant::now();
    let factors = canonical_factors(max_param);
    let scanned: Vec<Scanned> = factors
        .par_iter()
        .map(|&factor| {
            let triple = factor.invariant_triple();
            Scanned {
                factor,
                triple,
                roundtrip_ok: from_invariants(triple) == Ok(factor),
                tube_ok: factor.is_tube() == triple.looks_tube(),
            }
        })
        .collect();
    let collisions = group(scanned.iter().map(|s| (s.triple, s.factor)));
    let tube_rank_dim_collisions = group(scanned.iter().filter(|s| s.factor.is_tube()).map(|s| {
        (
            InvariantTriple::new(s.triple.rank, s.triple.real_dim, 0),
            s.factor,
        )
    }));
    ReconstructionReport {
        scanned_count: scanned.len(),
        max_param,
        collisions,
        roundtrip_failures: scanned
            .iter()
            .filter(|s| !s.roundtrip_ok)
            .map(|s| s.factor)
            .collect(),
        tube_violations: scanned
            .iter()
            .filter(|s| !s.tube_ok)
            .map(|s| s.factor)
            .collect(),
        tube_rank_dim_collisions,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
