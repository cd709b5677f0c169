//! Irreducible bounded symmetric domains in canonical Cartan form.
//!
//! Each factor belongs to one of the six Cartan families. Parameters are kept
//! inside the ranges where no two family members coincide up to isomorphism:
//!
//! | family | parameters             | tube type      |
//! |--------|------------------------|----------------|
//! | I      | `p >= q >= 1`          | iff `p == q`   |
//! | II     | `n >= 6` even, `n >= 5` odd | iff `n` even |
//! | III    | `q >= 2`               | always         |
//! | IV     | `q >= 5`               | always         |
//! | V      | none                   | never          |
//! | VI     | none                   | always         |

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest accepted value for any single parameter.
pub const MAX_PARAM: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("family {family} takes {expected} parameter(s), got {got}")]
    WrongArity {
        family: Family,
        expected: usize,
        got: usize,
    },
    #[error("{factor} is outside the canonical range {range}")]
    OutOfCanonicalRange { factor: String, range: &'static str },
    #[error("parameter {value} exceeds the supported bound {MAX_PARAM}")]
    ParameterTooLarge { value: u64 },
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::I,
        Family::II,
        Family::III,
        Family::IV,
        Family::V,
        Family::VI,
    ];

    pub fn arity(self) -> usize {
        match self {
            Family::I => 2,
            Family::II | Family::III | Family::IV => 1,
            Family::V | Family::VI => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
            Family::IV => "IV",
            Family::V => "V",
            Family::VI => "VI",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

// Variant order and derived field order give the documented total order:
// family I < II < III < IV < V < VI, then parameters lexicographically.
#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Repr {
    I { p: u64, q: u64 },
    II { n: u64 },
    III { q: u64 },
    IV { q: u64 },
    V,
    VI,
}

/// An irreducible bounded symmetric domain with validated canonical parameters.
///
/// Values can only be obtained through [`make_factor`] (or the shorthand
/// constructors), so every `CartanFactor` in circulation is canonical.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanFactor(Repr);

/// Validates `params` against the canonical range of `family`.
///
/// Type I parameters are reordered so that `p >= q`.
pub fn make_factor(family: Family, params: &[u64]) -> Result<CartanFactor, CartanError> {
    if params.len() != family.arity() {
        return Err(CartanError::WrongArity {
            family,
            expected: family.arity(),
            got: params.len(),
        });
    }
    if let Some(&value) = params.iter().find(|&&v| v > MAX_PARAM) {
        return Err(CartanError::ParameterTooLarge { value });
    }
    let out_of_range = |range: &'static str| {
        let args: Vec<String> = params.iter().map(u64::to_string).collect();
        CartanError::OutOfCanonicalRange {
            factor: format!("{}({})", family, args.join(",")),
            range,
        }
    };
    let repr = match family {
        Family::I => {
            let (p, q) = (params[0].max(params[1]), params[0].min(params[1]));
            if q < 1 {
                return Err(out_of_range("p >= q >= 1"));
            }
            Repr::I { p, q }
        }
        Family::II => {
            let n = params[0];
            if n < 5 {
                return Err(out_of_range("n = 2q with q >= 3, or n = 2q+1 with q >= 2"));
            }
            Repr::II { n }
        }
        Family::III => {
            let q = params[0];
            if q < 2 {
                return Err(out_of_range("q >= 2"));
            }
            Repr::III { q }
        }
        Family::IV => {
            let q = params[0];
            if q < 5 {
                return Err(out_of_range("q >= 5"));
            }
            Repr::IV { q }
        }
        Family::V => Repr::V,
        Family::VI => Repr::VI,
    };
    Ok(CartanFactor(repr))
}

fn mul(a: u64, b: u64) -> u64 {
    a.checked_mul(b)
        .expect("parameters are bounded so invariants fit in u64")
}

impl CartanFactor {
    pub const V: CartanFactor = CartanFactor(Repr::V);
    pub const VI: CartanFactor = CartanFactor(Repr::VI);

    pub fn i(p: u64, q: u64) -> Result<Self, CartanError> {
        make_factor(Family::I, &[p, q])
    }

    pub fn ii(n: u64) -> Result<Self, CartanError> {
        make_factor(Family::II, &[n])
    }

    pub fn iii(q: u64) -> Result<Self, CartanError> {
        make_factor(Family::III, &[q])
    }

    pub fn iv(q: u64) -> Result<Self, CartanError> {
        make_factor(Family::IV, &[q])
    }

    /// The open unit ball in `C^n`, i.e. `I(n,1)`.
    pub fn ball(n: u64) -> Result<Self, CartanError> {
        make_factor(Family::I, &[n, 1])
    }

    pub fn family(&self) -> Family {
        match self.0 {
            Repr::I { .. } => Family::I,
            Repr::II { .. } => Family::II,
            Repr::III { .. } => Family::III,
            Repr::IV { .. } => Family::IV,
            Repr::V => Family::V,
            Repr::VI => Family::VI,
        }
    }

    pub fn params(&self) -> Vec<u64> {
        match self.0 {
            Repr::I { p, q } => vec![p, q],
            Repr::II { n } => vec![n],
            Repr::III { q } | Repr::IV { q } => vec![q],
            Repr::V | Repr::VI => vec![],
        }
    }

    pub fn rank(&self) -> u64 {
        match self.0 {
            Repr::I { q, .. } => q,
            Repr::II { n } => n / 2,
            Repr::III { q } => q,
            Repr::IV { .. } | Repr::V => 2,
            Repr::VI => 3,
        }
    }

    pub fn real_dim(&self) -> u64 {
        match self.0 {
            Repr::I { p, q } => mul(2, mul(p, q)),
            // n(n-1) covers both parities: 2q(2q-1) and (2q+1)2q.
            Repr::II { n } => mul(n, n - 1),
            Repr::III { q } => mul(q, q + 1),
            Repr::IV { q } => mul(2, q),
            Repr::V => 32,
            Repr::VI => 54,
        }
    }

    pub fn shilov_dim(&self) -> u64 {
        if self.is_tube() {
            return self.real_dim() / 2;
        }
        match self.0 {
            Repr::I { p, q } => mul(2, mul(p, q)) - mul(q, q),
            Repr::II { n } => {
                let q = n / 2;
                mul(2, mul(q, q)) + mul(3, q)
            }
            Repr::V => 24,
            _ => unreachable!("tube factors handled above"),
        }
    }

    pub fn is_tube(&self) -> bool {
        match self.0 {
            Repr::I { p, q } => p == q,
            Repr::II { n } => n % 2 == 0,
            Repr::III { .. } | Repr::IV { .. } | Repr::VI => true,
            Repr::V => false,
        }
    }

    pub fn invariant_triple(&self) -> InvariantTriple {
        InvariantTriple {
            rank: self.rank(),
            real_dim: self.real_dim(),
            shilov_dim: self.shilov_dim(),
        }
    }
}

impl fmt::Display for CartanFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::I { p, q } => write!(f, "I({p},{q})"),
            Repr::II { n } => write!(f, "II({n})"),
            Repr::III { q } => write!(f, "III({q})"),
            Repr::IV { q } => write!(f, "IV({q})"),
            Repr::V => f.write_str("V"),
            Repr::VI => f.write_str("VI"),
        }
    }
}

impl FromStr for CartanFactor {
    type Err = crate::expr::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::expr::parse_factor(s)
    }
}

impl Serialize for CartanFactor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CartanFactor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every canonical factor whose parameters are all `<= max_param`, in the
/// factor total order. Families V and VI are always included.
pub fn canonical_factors(max_param: u64) -> Vec<CartanFactor> {
    let max_param = max_param.min(MAX_PARAM);
    let mut out = Vec::new();
    for p in 1..=max_param {
        for q in 1..=p {
            out.push(CartanFactor(Repr::I { p, q }));
        }
    }
    out.extend((5..=max_param).map(|n| CartanFactor(Repr::II { n })));
    out.extend((2..=max_param).map(|q| CartanFactor(Repr::III { q })));
    out.extend((5..=max_param).map(|q| CartanFactor(Repr::IV { q })));
    out.push(CartanFactor::V);
    out.push(CartanFactor::VI);
    out
}

/// Rank, real dimension and Shilov-boundary dimension. Additive over products.
#[derive(
    Debug, Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct InvariantTriple {
    pub rank: u64,
    pub real_dim: u64,
    pub shilov_dim: u64,
}

impl InvariantTriple {
    pub fn new(rank: u64, real_dim: u64, shilov_dim: u64) -> Self {
        InvariantTriple {
            rank,
            real_dim,
            shilov_dim,
        }
    }

    /// True when the Shilov boundary has exactly half the real dimension.
    pub fn looks_tube(&self) -> bool {
        self.shilov_dim.checked_mul(2) == Some(self.real_dim)
    }
}

impl Add for InvariantTriple {
    type Output = InvariantTriple;

    fn add(self, rhs: Self) -> Self {
        InvariantTriple {
            rank: self.rank + rhs.rank,
            real_dim: self.real_dim + rhs.real_dim,
            shilov_dim: self.shilov_dim + rhs.shilov_dim,
        }
    }
}

impl Sum for InvariantTriple {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(InvariantTriple::default(), Add::add)
    }
}

impl fmt::Display for InvariantTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.rank, self.real_dim, self.shilov_dim)
    }
}
