//! Brute-force automorphism search on stratum posets.
//!
//! Candidates for the image of a stratum are restricted to strata with the
//! same height in the cover graph, the same numbers of elements below and
//! above, and (optionally) the same label multiset. These are all invariants
//! of any order automorphism, so no automorphism is lost. Assignments are
//! made in index order and every new pair is checked against all earlier
//! pairs for `x <= y <=> f(x) <= f(y)`.

use std::fmt;

use super::{SpectrumError, StratumPoset};

/// Default bound on the poset size for [`StratumPoset::automorphisms`].
pub const DEFAULT_AUTOMORPHISM_LIMIT: usize = 10_000;

/// An order automorphism, stored as the image of every stratum index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosetAutomorphism {
    images: Vec<usize>,
}

impl PosetAutomorphism {
    pub fn identity(len: usize) -> Self {
        PosetAutomorphism {
            images: (0..len).collect(),
        }
    }

    pub fn apply(&self, index: usize) -> usize {
        self.images[index]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Whether `self` is an order-preserving bijection of `poset` whose
    /// inverse is also order-preserving.
    pub fn is_automorphism_of(&self, poset: &StratumPoset) -> bool {
        let n = poset.len();
        if self.images.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &j in &self.images {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| poset.leq(a, b) == poset.leq(self.images[a], self.images[b])))
    }
}

/// A permutation of the coordinates `0..s`; `images[j]` is where coordinate
/// `j` is sent. Displayed in 1-based cycle notation, e.g. `(1 2)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Permutation((0..len).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.0[j];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            let items: Vec<String> = cycle.iter().map(|j| (j + 1).to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        Ok(())
    }
}

struct Search<'a> {
    poset: &'a StratumPoset,
    candidates: Vec<Vec<usize>>,
    assignment: Vec<usize>,
    used: Vec<bool>,
    found: Vec<PosetAutomorphism>,
}

impl Search<'_> {
    fn extend(&mut self, x: usize) {
        let n = self.poset.len();
        if x == n {
            self.found.push(PosetAutomorphism {
                images: self.assignment.clone(),
            });
            return;
        }
        for c in 0..self.candidates[x].len() {
            let y = self.candidates[x][c];
            if self.used[y] || !self.consistent(x, y) {
                continue;
            }
            self.used[y] = true;
            self.assignment.push(y);
            self.extend(x + 1);
            self.assignment.pop();
            self.used[y] = false;
        }
    }

    fn consistent(&self, x: usize, y: usize) -> bool {
        self.assignment.iter().enumerate().all(|(w, &fw)| {
            self.poset.leq(w, x) == self.poset.leq(fw, y)
                && self.poset.leq(x, w) == self.poset.leq(y, fw)
        })
    }
}

impl StratumPoset {
    /// All order automorphisms; with `respect_labels`, only those mapping each
    /// stratum to one with an equal label multiset.
    pub fn automorphisms(
        &self,
        respect_labels: bool,
    ) -> Result<Vec<PosetAutomorphism>, SpectrumError> {
        self.automorphisms_with_limit(respect_labels, DEFAULT_AUTOMORPHISM_LIMIT)
    }

    pub fn automorphisms_with_limit(
        &self,
        respect_labels: bool,
        limit: usize,
    ) -> Result<Vec<PosetAutomorphism>, SpectrumError> {
        let n = self.len();
        if n > limit {
            return Err(SpectrumError::SizeLimit {
                size: n as u128,
                limit,
            });
        }
        let heights = self.heights();
        let below: Vec<usize> = (0..n)
            .map(|i| (0..n).filter(|&j| self.leq(j, i)).count())
            .collect();
        let above: Vec<usize> = (0..n)
            .map(|i| (0..n).filter(|&j| self.leq(i, j)).count())
            .collect();
        let labels: Vec<_> = if respect_labels {
            (0..n).map(|i| self.label_multiset(i)).collect()
        } else {
            vec![Vec::new(); n]
        };
        let signature = |i: usize| (heights[i], below[i], above[i], &labels[i]);
        let candidates = (0..n)
            .map(|x| (0..n).filter(|&y| signature(x) == signature(y)).collect())
            .collect();
        let mut search = Search {
            poset: self,
            candidates,
            assignment: Vec::with_capacity(n),
            used: vec![false; n],
            found: Vec::new(),
        };
        search.extend(0);
        let mut found = search.found;
        found.sort();
        Ok(found)
    }

    /// The coordinate permutation `sigma` with `a(i)_{sigma(j)} = i_j` for
    /// every stratum `i`, if `a` is of that form.
    pub fn factor_permutation_of(
        &self,
        automorphism: &PosetAutomorphism,
    ) -> Result<Permutation, SpectrumError> {
        let s = self.dimension();
        if automorphism.images.len() != self.len() {
            return Err(SpectrumError::NotCoordinateInduced);
        }
        // read sigma off the atoms e_j
        let mut sigma = Vec::with_capacity(s);
        for j in 0..s {
            let mut e = vec![0u32; s];
            e[j] = 1;
            let Some(atom) = self.index_of(&e) else {
                return Err(SpectrumError::NotCoordinateInduced);
            };
            let image = self.stratum(automorphism.apply(atom)).coords();
            match image.iter().position(|&c| c == 1) {
                Some(k) if image.iter().sum::<u32>() == 1 => sigma.push(k),
                _ => return Err(SpectrumError::NotCoordinateInduced),
            }
        }
        let mut hit = vec![false; s];
        for &k in &sigma {
            if std::mem::replace(&mut hit[k], true) {
                return Err(SpectrumError::NotCoordinateInduced);
            }
        }
        for (i, stratum) in self.strata().iter().enumerate() {
            let image = self.stratum(automorphism.apply(i)).coords();
            if (0..s).any(|j| image[sigma[j]] != stratum.coords()[j]) {
                return Err(SpectrumError::NotCoordinateInduced);
            }
        }
        Ok(Permutation(sigma))
    }

    /// The automorphism induced by permuting coordinates, if the ranks allow.
    pub fn coordinate_automorphism(&self, sigma: &Permutation) -> Option<PosetAutomorphism> {
        let s = self.dimension();
        if sigma.0.len() != s || (0..s).any(|j| self.ranks()[sigma.0[j]] != self.ranks()[j]) {
            return None;
        }
        let images = self
            .strata()
            .iter()
            .map(|st| {
                let mut v = vec![0u32; s];
                for j in 0..s {
                    v[sigma.0[j]] = st.coords()[j];
                }
                self.index_of(&v)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PosetAutomorphism { images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_domain;
    use crate::spectrum::build_spectrum;

    fn spec(text: &str) -> StratumPoset {
        build_spectrum(&parse_domain(text).unwrap()).unwrap()
    }

    #[test]
    fn bidisk_has_the_flip() {
        let p = spec("Ball(1) x Ball(1)");
        let autos = p.automorphisms(true).unwrap();
        assert_eq!(autos.len(), 2);
        assert!(autos[0].is_identity());
        let perm = p.factor_permutation_of(&autos[1]).unwrap();
        assert_eq!(perm, Permutation(vec![1, 0]));
        assert_eq!(perm.to_string(), "(1 2)");
        assert_eq!(
            p.factor_permutation_of(&autos[0]).unwrap().to_string(),
            "()"
        );
    }

    #[test]
    fn labels_forbid_swapping_distinct_factors() {
        let p = spec("I(2,1) x I(1,1)");
        assert_eq!(p.automorphisms(true).unwrap().len(), 1);
        // the bare poset is a square and still has the flip
        assert_eq!(p.automorphisms(false).unwrap().len(), 2);
    }

    #[test]
    fn chains_are_rigid() {
        for text in ["VI", "I(4,4)", "IV(7)"] {
            let autos = spec(text).automorphisms(false).unwrap();
            assert_eq!(autos.len(), 1, "{text}");
        }
    }

    #[test]
    fn cube_automorphisms_are_s3() {
        let p = spec("I(1,1) x I(1,1) x I(1,1)");
        let autos = p.automorphisms(true).unwrap();
        assert_eq!(autos.len(), 6);
        let mut perms: Vec<Permutation> = autos
            .iter()
            .map(|a| p.factor_permutation_of(a).unwrap())
            .collect();
        perms.sort();
        perms.dedup();
        assert_eq!(perms.len(), 6);
        for perm in perms {
            assert_eq!(
                p.coordinate_automorphism(&perm).unwrap(),
                autos
                    .iter()
                    .find(|a| p.factor_permutation_of(a).unwrap() == perm)
                    .unwrap()
                    .clone()
            );
        }
    }

    #[test]
    fn search_results_are_automorphisms() {
        let p = spec("I(2,2) x III(2) x I(1,1)");
        for a in p.automorphisms(false).unwrap() {
            assert!(a.is_automorphism_of(&p));
            for i in 0..p.len() {
                assert_eq!(p.weight(a.apply(i)), p.weight(i));
            }
        }
    }

    #[test]
    fn non_automorphisms_are_rejected() {
        let p = spec("Ball(1) x Ball(1)");
        // swap (0,1) with (1,1): not order preserving
        let bogus = PosetAutomorphism {
            images: vec![0, 3, 2, 1],
        };
        assert!(!bogus.is_automorphism_of(&p));
        assert_eq!(
            p.factor_permutation_of(&bogus),
            Err(SpectrumError::NotCoordinateInduced)
        );
        assert!(!PosetAutomorphism {
            images: vec![0, 0, 1, 2]
        }
        .is_automorphism_of(&p));
    }

    #[test]
    fn size_limit_applies() {
        let p = spec("VI x VI");
        assert_eq!(
            p.automorphisms_with_limit(true, 15),
            Err(SpectrumError::SizeLimit {
                size: 16,
                limit: 15
            })
        );
    }

    #[test]
    fn permutation_display() {
        assert_eq!(Permutation(vec![1, 2, 0]).to_string(), "(1 2 3)");
        assert_eq!(Permutation(vec![1, 0, 3, 2]).to_string(), "(1 2)(3 4)");
        assert!(Permutation::identity(3).is_identity());
    }
}
