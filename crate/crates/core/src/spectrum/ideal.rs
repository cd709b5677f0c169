use std::fmt;

use super::{PosetAutomorphism, SpectrumError, Stratum, StratumPoset};

/// An ideal of `T(D)`, modeled as a down-closed set of strata.
#[derive(Clone)]
pub struct IdealDownSet<'p> {
    poset: &'p StratumPoset,
    members: Vec<bool>,
}

impl<'p> IdealDownSet<'p> {
    pub(crate) fn from_predicate(poset: &'p StratumPoset, keep: impl Fn(&Stratum) -> bool) -> Self {
        let members = poset.strata().iter().map(keep).collect();
        let set = IdealDownSet { poset, members };
        debug_assert!(set.is_down_closed());
        set
    }

    pub fn empty(poset: &'p StratumPoset) -> Self {
        IdealDownSet {
            poset,
            members: vec![false; poset.len()],
        }
    }

    /// Down-closure of the given strata.
    pub fn generated_by(
        poset: &'p StratumPoset,
        generators: &[Stratum],
    ) -> Result<Self, SpectrumError> {
        for g in generators {
            poset.checked_index(g.coords())?;
        }
        Ok(Self::from_predicate(poset, |s| {
            generators.iter().any(|g| s.leq(g))
        }))
    }

    pub fn poset(&self) -> &'p StratumPoset {
        self.poset
    }

    pub fn contains(&self, coords: &[u32]) -> bool {
        self.poset.index_of(coords).is_some_and(|i| self.members[i])
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.members[index]
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> Vec<Stratum> {
        self.indices()
            .map(|i| self.poset.stratum(i).clone())
            .collect()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    /// Members with no larger member, in lexicographic order.
    pub fn maximal_elements(&self) -> Vec<Stratum> {
        self.indices()
            .filter(|&i| {
                self.poset
                    .upper_covers(i)
                    .into_iter()
                    .all(|j| !self.members[j])
            })
            .map(|i| self.poset.stratum(i).clone())
            .collect()
    }

    /// Checks closure under passing to lower covers (equivalently, to any
    /// smaller stratum).
    pub fn is_down_closed(&self) -> bool {
        self.indices().all(|i| {
            self.poset
                .lower_covers(i)
                .into_iter()
                .all(|j| self.members[j])
        })
    }

    fn same_poset(&self, other: &IdealDownSet<'_>) -> bool {
        std::ptr::eq(self.poset, other.poset) || self.poset == other.poset
    }

    /// Sum of two ideals. The union of open sets is open, so the result is
    /// again a down-set.
    pub fn union(&self, other: &IdealDownSet<'_>) -> Result<IdealDownSet<'p>, SpectrumError> {
        if !self.same_poset(other) {
            return Err(SpectrumError::PosetMismatch);
        }
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(&a, &b)| a || b)
            .collect();
        let out = IdealDownSet {
            poset: self.poset,
            members,
        };
        assert!(out.is_down_closed());
        Ok(out)
    }

    pub fn intersection(
        &self,
        other: &IdealDownSet<'_>,
    ) -> Result<IdealDownSet<'p>, SpectrumError> {
        if !self.same_poset(other) {
            return Err(SpectrumError::PosetMismatch);
        }
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(&a, &b)| a && b)
            .collect();
        Ok(IdealDownSet {
            poset: self.poset,
            members,
        })
    }

    /// Image under a poset automorphism of the same poset.
    pub fn image(&self, automorphism: &PosetAutomorphism) -> IdealDownSet<'p> {
        let mut members = vec![false; self.members.len()];
        for i in self.indices() {
            members[automorphism.apply(i)] = true;
        }
        IdealDownSet {
            poset: self.poset,
            members,
        }
    }
}

impl PartialEq for IdealDownSet<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.same_poset(other) && self.members == other.members
    }
}

impl Eq for IdealDownSet<'_> {}

impl fmt::Debug for IdealDownSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.members().iter().map(ToString::to_string))
            .finish()
    }
}

impl fmt::Display for IdealDownSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, s) in self.members().iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({s})")?;
        }
        f.write_str("}")
    }
}
