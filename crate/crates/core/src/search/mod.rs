//! Exhaustive minimal-support search over H(n, d).

mod burnside;
mod certificate;
mod corpus;
mod enumerate;
mod feasibility;
mod rules;
mod universe;

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use burnside::orbit_count;
pub use certificate::{
    recheck, support_from_exponents, CertificateKind, LevelRecord, RecheckReport, RefutationRecord,
    SearchCertificate, WitnessRecord, CERTIFICATE_FORMAT,
};
pub use corpus::{corpus_generate, corpus_generate_exact};
pub use enumerate::{binomial, scan_level, supports_of_size, LevelScan};
pub use feasibility::{
    check_refutation, check_witness, expand_monomial, lp_feasible, lp_feasible_with, Expansions,
    FeasibilityOutcome, Refutation, RefutationEntry,
};
pub use rules::{prune_rules, PruneRule, DEFAULT_RULES};
pub use universe::{permutations, Support, Universe, MAX_UNIVERSE};

use crate::bounds::min_term_lower_bound;
use crate::error::{Error, Result};

/// Limits on LP solves and wall time; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SearchBudget {
    pub lp_calls: Option<u64>,
    pub seconds: Option<f64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }
}

impl FromStr for SearchBudget {
    type Err = Error;

    /// Accepts `unlimited`, a bare LP-call count, or `lp=N,secs=S`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidArgument(format!(
                "bad budget `{s}`; expected N, lp=N,secs=S or unlimited"
            ))
        };
        let s = s.trim();
        if s == "unlimited" || s.is_empty() {
            return Ok(Self::unlimited());
        }
        if let Ok(n) = s.parse::<u64>() {
            return Ok(SearchBudget {
                lp_calls: Some(n),
                seconds: None,
            });
        }
        let mut out = Self::unlimited();
        for part in s.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "lp" => out.lp_calls = Some(value.trim().parse().map_err(|_| bad())?),
                "secs" => {
                    let v: f64 = value.trim().parse().map_err(|_| bad())?;
                    if !(v >= 0.0 && v.is_finite()) {
                        return Err(bad());
                    }
                    out.seconds = Some(v);
                }
                _ => return Err(bad()),
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOptions {
    /// Prune rule names; empty means brute force.
    pub rules: Vec<String>,
    pub budget: SearchBudget,
    /// Worker cap; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub seed: u64,
    /// Pruned supports re-run through the LP per level as a soundness audit.
    pub audit_samples: usize,
    /// First size tried by `min_terms`; defaults to the proved lower bound.
    pub start_terms: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            rules: DEFAULT_RULES.iter().map(|s| s.to_string()).collect(),
            budget: SearchBudget::unlimited(),
            jobs: None,
            seed: 0,
            audit_samples: 8,
            start_terms: None,
        }
    }
}

impl SearchOptions {
    pub fn brute_force() -> Self {
        SearchOptions {
            rules: Vec::new(),
            audit_samples: 0,
            ..Self::default()
        }
    }
}

struct Run<'a> {
    u: Universe,
    rules: Vec<Box<dyn PruneRule>>,
    expansions: Expansions,
    opts: &'a SearchOptions,
    started: Instant,
    lp_used: u64,
    exhausted: Option<String>,
}

const CHUNK: usize = 2048;

impl<'a> Run<'a> {
    fn new(n: usize, d: u32, opts: &'a SearchOptions) -> Result<Self> {
        if n < 2 || d < 1 {
            return Err(Error::InvalidArgument(format!(
                "search needs n >= 2 and d >= 1, got n = {n}, d = {d}"
            )));
        }
        let u = Universe::new(n, d)?;
        let reg = prune_rules();
        let rules = opts
            .rules
            .iter()
            .map(|r| reg.build(r, &u))
            .collect::<Result<Vec<_>>>()?;
        let expansions = Expansions::new(u.monomials());
        Ok(Run {
            u,
            rules,
            expansions,
            opts,
            started: Instant::now(),
            lp_used: 0,
            exhausted: None,
        })
    }

    fn out_of_time(&self) -> bool {
        self.opts
            .budget
            .seconds
            .is_some_and(|s| self.started.elapsed() >= Duration::from_secs_f64(s))
    }

    /// Runs random pruned supports through the LP; any feasible one means a
    /// rule is unsound.
    fn audit(&self, k: usize, scan: &LevelScan) -> Result<u64> {
        if self.opts.audit_samples == 0 || self.rules.is_empty() {
            return Ok(0);
        }
        let pruned_total: u64 = scan.pruned.iter().sum();
        if pruned_total == 0 {
            return Ok(0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(
            self.opts.seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
        );
        let top: Vec<usize> = (0..self.u.top_count()).collect();
        let all: Vec<usize> = (0..self.u.len()).collect();
        let mut audited = 0;
        // rejection sampling with a fixed attempt cap keeps the cost bounded
        for _ in 0..self.opts.audit_samples * 200 {
            if audited as usize == self.opts.audit_samples {
                break;
            }
            let first = *top.choose(&mut rng).expect("top degree present");
            let mut mask = 1u128 << first;
            while (mask.count_ones() as usize) < k {
                mask |= 1u128 << *all.choose(&mut rng).expect("nonempty");
            }
            if self.rules.iter().all(|r| r.admits(mask)) {
                continue;
            }
            let s = self.u.support(mask);
            let out = lp_feasible_with(&s, &self.expansions);
            if out.feasible {
                return Err(Error::Internal(format!(
                    "a prune rule rejected the realizable support {:?}",
                    s.exponents()
                )));
            }
            audited += 1;
        }
        Ok(audited)
    }

    fn level(&mut self, k: usize) -> Result<LevelRecord> {
        let scan = scan_level(&self.u, k, &self.rules);
        let audited = self.audit(k, &scan)?;
        let mut witnesses = Vec::new();
        let mut refutations = Vec::new();
        let mut checked = 0usize;
        for chunk in scan.survivors.chunks(CHUNK) {
            if self.exhausted.is_some() {
                break;
            }
            if self.out_of_time() {
                self.exhausted = Some(format!("time budget exhausted at size {k}"));
                break;
            }
            let take = match self.opts.budget.lp_calls {
                Some(limit) => {
                    let left = limit.saturating_sub(self.lp_used) as usize;
                    if left < chunk.len() {
                        self.exhausted =
                            Some(format!("LP budget of {limit} calls exhausted at size {k}"));
                    }
                    left.min(chunk.len())
                }
                None => chunk.len(),
            };
            let u = &self.u;
            let expansions = &self.expansions;
            let results: Vec<(Support, FeasibilityOutcome)> = chunk[..take]
                .par_iter()
                .map(|&mask| {
                    let s = u.support(mask);
                    let out = lp_feasible_with(&s, expansions);
                    (s, out)
                })
                .collect();
            self.lp_used += take as u64;
            checked += take;
            for (s, out) in results {
                let support = s.exponents();
                if out.feasible {
                    let p = out.witness.expect("feasible outcome carries a witness");
                    let t = out.max_min_coeff.expect("feasible outcome carries t");
                    check_witness(&s, &p, Some(&t))?;
                    witnesses.push(WitnessRecord {
                        support,
                        polynomial: (&p).into(),
                        max_min_coeff: t.to_string(),
                    });
                } else {
                    let y = out
                        .refutation
                        .expect("infeasible outcome carries a refutation");
                    refutations.push(RefutationRecord {
                        support,
                        max_min_coeff: out.max_min_coeff.map(|t| t.to_string()),
                        y: y.to_entries(),
                    });
                }
            }
        }
        let pruned = self
            .opts
            .rules
            .iter()
            .cloned()
            .zip(scan.pruned.iter().copied())
            .collect::<BTreeMap<_, _>>();
        Ok(LevelRecord {
            terms: k,
            orbits: scan.orbits,
            subsets_covered: scan.subsets_covered,
            pruned,
            audited,
            lp_checked: checked as u64,
            feasible: witnesses.len() as u64,
            complete: checked == scan.survivors.len(),
            witnesses,
            refutations,
        })
    }

    fn certificate(
        &self,
        kind: CertificateKind,
        target_terms: Option<usize>,
        min_terms: Option<usize>,
        start_terms: usize,
        levels: Vec<LevelRecord>,
    ) -> SearchCertificate {
        SearchCertificate {
            format: CERTIFICATE_FORMAT.into(),
            kind,
            n: self.u.n(),
            d: self.u.d(),
            target_terms,
            min_terms,
            start_terms,
            rules: self.opts.rules.clone(),
            levels,
            seed: self.opts.seed,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            wall_time_ms: self.started.elapsed().as_millis() as u64,
            partial_reason: self.exhausted.clone(),
        }
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        None => f(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(f),
    }
}

/// Smallest number of terms of an element of H(n, d) of degree exactly `d`,
/// found by exhausting sizes upward from the start.
pub fn min_terms(n: usize, d: u32, opts: &SearchOptions) -> Result<SearchCertificate> {
    with_pool(opts.jobs, || {
        let mut run = Run::new(n, d, opts)?;
        let proved = min_term_lower_bound(n, d)?.proved_value as usize;
        let start = opts.start_terms.unwrap_or(proved).max(1);
        if start > proved {
            return Err(Error::InvalidArgument(format!(
                "start size {start} exceeds the proved lower bound {proved}"
            )));
        }
        let mut levels = Vec::new();
        for k in start..=run.u.len() {
            let level = run.level(k)?;
            let found = level.feasible > 0;
            levels.push(level);
            if run.exhausted.is_some() {
                return Ok(run.certificate(CertificateKind::Partial, None, None, start, levels));
            }
            if found {
                return Ok(run.certificate(CertificateKind::Optimum, None, Some(k), start, levels));
            }
        }
        Err(Error::Internal(format!(
            "no realizable support for ({n}, {d})"
        )))
    })
}

/// Decides whether some element of H(n, d) of degree exactly `d` has exactly
/// `k` terms, exhausting every surviving orbit of that size.
pub fn exists_with_terms(
    n: usize,
    d: u32,
    k: usize,
    opts: &SearchOptions,
) -> Result<SearchCertificate> {
    with_pool(opts.jobs, || {
        let mut run = Run::new(n, d, opts)?;
        let level = run.level(k)?;
        let kind = if run.exhausted.is_some() {
            CertificateKind::Partial
        } else if level.feasible > 0 {
            CertificateKind::Existence
        } else {
            CertificateKind::Nonexistence
        };
        Ok(run.certificate(kind, Some(k), None, k, vec![level]))
    })
}

/// Whether some witness in the certificate shares the permutation orbit of
/// the support of `p`.
pub fn has_witness_orbit(cert: &SearchCertificate, p: &crate::Polynomial) -> Result<bool> {
    let u = Universe::new(cert.n, cert.d)?;
    let target = u.canonical(u.mask_of(&Support::of(p)?)?);
    for w in cert.witnesses() {
        let s = support_from_exponents(cert.n, &w.support)?;
        if u.canonical(u.mask_of(&s)?) == target {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{family_pd, named};
    use crate::poly::parse_text;

    #[test]
    fn budget_parsing() {
        assert_eq!(
            "unlimited".parse::<SearchBudget>().unwrap(),
            SearchBudget::unlimited()
        );
        assert_eq!("25".parse::<SearchBudget>().unwrap().lp_calls, Some(25));
        let b: SearchBudget = "lp=10,secs=1.5".parse().unwrap();
        assert_eq!((b.lp_calls, b.seconds), (Some(10), Some(1.5)));
        assert!("lp=x".parse::<SearchBudget>().is_err());
        assert!("secs=-1".parse::<SearchBudget>().is_err());
        assert!("foo=1".parse::<SearchBudget>().is_err());
    }

    #[test]
    fn cubic_optimum_in_two_variables() {
        let opts = SearchOptions {
            start_terms: Some(1),
            ..SearchOptions::default()
        };
        let cert = min_terms(2, 3, &opts).unwrap();
        assert_eq!(cert.kind, CertificateKind::Optimum);
        assert_eq!(cert.min_terms, Some(3));
        assert!(has_witness_orbit(&cert, &family_pd(3).unwrap()).unwrap());
        recheck(&cert).unwrap();
    }

    #[test]
    fn four_term_cubic_exists() {
        let cert = exists_with_terms(2, 3, 4, &SearchOptions::default()).unwrap();
        assert_eq!(cert.kind, CertificateKind::Existence);
        recheck(&cert).unwrap();
    }

    #[test]
    fn too_few_terms_is_empty() {
        let cert = exists_with_terms(3, 2, 2, &SearchOptions::default()).unwrap();
        assert_eq!(cert.kind, CertificateKind::Nonexistence);
        assert_eq!(cert.levels[0].lp_checked, 0);
        recheck(&cert).unwrap();
    }

    #[test]
    fn budget_yields_partial() {
        let opts = SearchOptions {
            budget: "0".parse().unwrap(),
            ..SearchOptions::default()
        };
        let cert = min_terms(2, 5, &opts).unwrap();
        assert_eq!(cert.kind, CertificateKind::Partial);
        assert!(cert.partial_reason.is_some());
        recheck(&cert).unwrap();
    }

    #[test]
    fn recheck_rejects_perturbed_witness() {
        let mut cert = min_terms(2, 3, &SearchOptions::default()).unwrap();
        recheck(&cert).unwrap();
        let w = &mut cert.levels.last_mut().unwrap().witnesses[0];
        w.polynomial.terms[0].c = "2".into();
        assert!(recheck(&cert).is_err());
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let one = SearchOptions {
            jobs: Some(1),
            start_terms: Some(3),
            ..SearchOptions::default()
        };
        let four = SearchOptions {
            jobs: Some(4),
            ..one.clone()
        };
        let mut a = min_terms(3, 2, &one).unwrap();
        let mut b = min_terms(3, 2, &four).unwrap();
        a.wall_time_ms = 0;
        b.wall_time_ms = 0;
        assert_eq!(a, b);
        assert_eq!(a.min_terms, Some(5));
    }

    #[test]
    fn permuted_witness_keeps_its_orbit() {
        let p = named::cubic_not_whitney();
        let u = Universe::new(3, 3).unwrap();
        let orbit = u.canonical(u.mask_of(&Support::of(&p).unwrap()).unwrap());
        for sigma in permutations(3) {
            let q = p.permute_vars(&sigma);
            let s = Support::of(&q).unwrap();
            assert!(lp_feasible(&s).feasible);
            assert_eq!(u.canonical(u.mask_of(&s).unwrap()), orbit);
        }
        assert!(
            !lp_feasible(&Support::of(&parse_text("x^3 + y^3", Some(2)).unwrap()).unwrap())
                .feasible
        );
    }
}
