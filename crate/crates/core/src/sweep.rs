//! Exhaustive consistency checks of the spectrum model over families of
//! small product domains.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::CartanFactor;
use crate::domain::{product, Domain, SymGroupDescriptor};
use crate::reconstruct::{factor_data_of_spectrum, reconstruct_product};
use crate::spectrum::{build_spectrum, IdealDownSet, SpectrumError, StratumPoset};

/// Factors used by the default spectrum sweep: `I(r,r)` and `I(r+1,r)` for
/// every rank `r <= max_rank`, plus `III(q)` for `2 <= q <= max_rank`.
/// Each rank gets a tube and a non-tube factor, so equal-rank coordinates
/// with different labels occur.
pub fn spectrum_pool(max_rank: u64) -> Vec<CartanFactor> {
    let mut pool = Vec::new();
    for r in 1..=max_rank {
        pool.extend(CartanFactor::i(r, r));
        pool.extend(CartanFactor::i(r + 1, r));
    }
    for q in 2..=max_rank {
        pool.extend(CartanFactor::iii(q));
    }
    pool.sort();
    pool.dedup();
    pool
}

/// Every domain with between 1 and `max_factors` factors drawn from `pool`
/// (with repetition), each listed once.
pub fn domains_over(pool: &[CartanFactor], max_factors: usize) -> Vec<Domain> {
    let mut pool = pool.to_vec();
    pool.sort();
    pool.dedup();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        pool: &[CartanFactor],
        from: usize,
        max: usize,
        current: &mut Vec<CartanFactor>,
        out: &mut Vec<Domain>,
    ) {
        if !current.is_empty() {
            out.push(product(current.iter().copied()).expect("non-empty"));
        }
        if current.len() == max {
            return;
        }
        for i in from..pool.len() {
            current.push(pool[i]);
            rec(pool, i, max, current, out);
            current.pop();
        }
    }
    rec(&pool, 0, max_factors, &mut current, &mut out);
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub domain: Domain,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSweepReport {
    pub domains_checked: usize,
    pub automorphisms_checked: usize,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u64,
}

impl SpectrumSweepReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Outcome of [`check_domain`].
#[derive(Debug, Clone, Default)]
pub struct DomainCheck {
    pub automorphisms: usize,
    pub failures: Vec<(String, String)>,
}

impl DomainCheck {
    fn fail(&mut self, check: &str, detail: impl Into<String>) {
        self.failures.push((check.to_string(), detail.into()));
    }
}

/// Runs every structural check of the spectrum model on one domain:
/// solvable length, the weight-ideal decomposition, chain lengths,
/// automorphism rigidity and reconstruction from spectrum labels.
pub fn check_domain(domain: &Domain) -> Result<DomainCheck, SpectrumError> {
    let poset = build_spectrum(domain)?;
    let mut out = DomainCheck::default();

    if poset.solvable_length() != domain.rank() {
        out.fail(
            "solvable-length",
            format!("{} != rank {}", poset.solvable_length(), domain.rank()),
        );
    }

    for k in 0..=poset.max_weight() {
        let parts = poset.decompose_weight_ideal(k)?;
        let mut union = IdealDownSet::empty(&poset);
        for part in &parts {
            if !part.is_down_closed() {
                out.fail(
                    "decomposition",
                    format!("summand {part} at weight {k} not down-closed"),
                );
            }
            union = union.union(part)?;
        }
        if union != poset.ideal_of_weight(k)? {
            out.fail("decomposition", format!("union at weight {k} is {union}"));
        }
    }

    for (i, s) in poset.strata().iter().enumerate() {
        let stats = poset.maximal_chain_lengths(s.coords())?;
        if stats.length != poset.weight(i) {
            out.fail(
                "chains",
                format!("({s}) has chains of length {}", stats.length),
            );
        }
    }

    check_automorphisms(domain, &poset, &mut out)?;

    match reconstruct_product(&factor_data_of_spectrum(&poset)) {
        Ok(d) if d == *domain => {}
        Ok(d) => out.fail("reconstruction", format!("got {d}")),
        Err(e) => out.fail("reconstruction", e.to_string()),
    }
    Ok(out)
}

fn check_automorphisms(
    domain: &Domain,
    poset: &StratumPoset,
    out: &mut DomainCheck,
) -> Result<(), SpectrumError> {
    let autos = poset.automorphisms(true)?;
    out.automorphisms = autos.len();
    let expected = domain.sym_group().order;
    if autos.len() as u128 != expected {
        out.fail(
            "automorphism-count",
            format!("{} automorphisms, sym_D order {expected}", autos.len()),
        );
    }
    for a in &autos {
        if (0..poset.len()).any(|i| poset.weight(a.apply(i)) != poset.weight(i)) {
            out.fail("grading", "automorphism moves a stratum to another weight");
        }
        let sigma = match poset.factor_permutation_of(a) {
            Ok(s) => s,
            Err(e) => {
                out.fail("coordinate-induced", e.to_string());
                continue;
            }
        };
        if !SymGroupDescriptor::contains(domain, &sigma.0) {
            out.fail(
                "sym-membership",
                format!("{sigma} moves non-isomorphic factors"),
            );
        }
        for (j, &r) in poset.ranks().iter().enumerate() {
            for k in 1..=r {
                let source = poset.principal_downset(poset.bullet(j, k)?.coords())?;
                let target_coord = sigma.0[j];
                let target = poset.principal_downset(poset.bullet(target_coord, k)?.coords())?;
                if source.image(a) != target {
                    out.fail(
                        "bullets",
                        format!("{sigma} does not send bullet ({j},{k}) to ({target_coord},{k})"),
                    );
                }
                if poset.factors()[target_coord] != poset.factors()[j] {
                    out.fail(
                        "bullets",
                        format!("{sigma} maps bullet {j} to a differently labeled one"),
                    );
                }
            }
        }
    }
    Ok(())
}

/// Runs [`check_domain`] on every domain in parallel; the report lists
/// violations in domain order.
pub fn verify_spectrum(domains: &[Domain]) -> SpectrumSweepReport {
    let start = Instant::now();
    let results: Vec<(Domain, Result<DomainCheck, SpectrumError>)> = domains
        .par_iter()
        .map(|d| (d.clone(), check_domain(d)))
        .collect();
    let mut violations = Vec::new();
    let mut automorphisms_checked = 0;
    for (domain, result) in results {
        match result {
            Ok(check) => {
                automorphisms_checked += check.automorphisms;
                violations.extend(check.failures.into_iter().map(|(check, detail)| Violation {
                    domain: domain.clone(),
                    check,
                    detail,
                }));
            }
            Err(e) => violations.push(Violation {
                domain,
                check: "error".to_string(),
                detail: e.to_string(),
            }),
        }
    }
    SpectrumSweepReport {
        domains_checked: domains.len(),
        automorphisms_checked,
        violations,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_domain;

    #[test]
    fn pool_contents() {
        let names: Vec<String> = spectrum_pool(2).iter().map(ToString::to_string).collect();
        assert_eq!(names, ["I(1,1)", "I(2,1)", "I(2,2)", "I(3,2)", "III(2)"]);
    }

    #[test]
    fn multiset_counts() {
        let pool = spectrum_pool(1);
        // sizes 1..=3 over two factors: 2 + 3 + 4
        assert_eq!(domains_over(&pool, 3).len(), 9);
        let pool4 = [
            CartanFactor::i(1, 1).unwrap(),
            CartanFactor::i(2, 1).unwrap(),
            CartanFactor::i(2, 2).unwrap(),
            CartanFactor::iii(2).unwrap(),
        ];
        // C(4,1) + C(5,2) + C(6,3) + C(7,4)
        assert_eq!(domains_over(&pool4, 4).len(), 4 + 10 + 20 + 35);
    }

    #[test]
    fn single_domain_checks() {
        let d = parse_domain("I(1,1) x I(1,1) x I(2,1)").unwrap();
        let check = check_domain(&d).unwrap();
        assert!(check.failures.is_empty(), "{:?}", check.failures);
        assert_eq!(check.automorphisms, 2);
    }

    #[test]
    fn small_sweep_is_clean() {
        let report = verify_spectrum(&domains_over(&spectrum_pool(2), 3));
        assert!(report.is_clean(), "{:?}", report.violations);
        assert_eq!(report.domains_checked, 5 + 15 + 35);
    }
}
