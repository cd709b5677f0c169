//! Combinatorial model of Hardy–Toeplitz algebras of bounded symmetric
//! domains.
//!
//! * [`cartan`]: irreducible domains, their rank, dimension and Shilov
//!   boundary dimension.
//! * [`domain`]: products of irreducible factors in normal form.
//! * [`spectrum`]: the stratified primitive-ideal spectrum as a graded poset,
//!   its ideal lattice and automorphisms.
//! * [`reconstruct`]: recovering a domain from its invariant data.
//! * [`expr`]: the text syntax for domains.
//! * [`sweep`]: exhaustive checks over families of small product domains.

pub mod cartan;
pub mod domain;
pub mod expr;
pub mod reconstruct;
pub mod spectrum;
pub mod sweep;

pub use cartan::{make_factor, CartanError, CartanFactor, Family, InvariantTriple};
pub use domain::{is_isomorphic, product, Domain, DomainError, SymGroupDescriptor};
pub use expr::{parse_domain, ParseError};
pub use reconstruct::{
    factor_data_of_spectrum, from_invariants, reconstruct_product, verify_complete_invariant,
    ReconstructError, ReconstructionReport,
};
pub use spectrum::{
    build_spectrum, IdealDownSet, PosetAutomorphism, SpectrumError, Stratum, StratumPoset,
};
