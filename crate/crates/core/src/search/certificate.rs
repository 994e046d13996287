//! Search certificates and their offline re-verification.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::burnside::orbit_count;
use super::enumerate::{scan_level, supports_of_size};
use super::feasibility::{check_witness, Expansions, Refutation, RefutationEntry};
use super::rules::{prune_rules, PruneRule};
use super::universe::{Support, Universe};
use crate::bounds::min_term_lower_bound;
use crate::error::{Error, Result};
use crate::poly::{parse_rational, Monomial, PolynomialDocument};

pub const CERTIFICATE_FORMAT: &str = "planepoly-search-certificate/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    /// Smallest feasible size, with every witness orbit of that size.
    Optimum,
    /// No support of the target size is realizable.
    Nonexistence,
    /// Some support of the target size is realizable.
    Existence,
    /// A budget ran out; only the completed levels carry weight.
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRecord {
    pub support: Vec<Vec<u32>>,
    pub polynomial: PolynomialDocument,
    pub max_min_coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefutationRecord {
    pub support: Vec<Vec<u32>>,
    pub max_min_coeff: Option<String>,
    pub y: Vec<RefutationEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelRecord {
    pub terms: usize,
    pub orbits: u64,
    pub subsets_covered: u64,
    pub pruned: BTreeMap<String, u64>,
    pub audited: u64,
    pub lp_checked: u64,
    pub feasible: u64,
    pub complete: bool,
    pub witnesses: Vec<WitnessRecord>,
    pub refutations: Vec<RefutationRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchCertificate {
    pub format: String,
    pub kind: CertificateKind,
    pub n: usize,
    pub d: u32,
    pub target_terms: Option<usize>,
    pub min_terms: Option<usize>,
    /// Sizes below this were skipped on the strength of a proved bound.
    pub start_terms: usize,
    pub rules: Vec<String>,
    pub levels: Vec<LevelRecord>,
    pub seed: u64,
    pub tool_version: String,
    pub wall_time_ms: u64,
    pub partial_reason: Option<String>,
}

impl SearchCertificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Certificate(e.to_string()))
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &WitnessRecord> + '_ {
        self.levels.iter().flat_map(|l| l.witnesses.iter())
    }
}

pub fn support_from_exponents(n: usize, e: &[Vec<u32>]) -> Result<Support> {
    let monomials = e
        .iter()
        .map(|v| {
            if v.len() != n {
                return Err(Error::Certificate(format!(
                    "exponent {v:?} has the wrong length"
                )));
            }
            Monomial::new(v.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let s = Support::new(n, monomials)?;
    if s.len() != e.len() {
        return Err(Error::Certificate("support lists a monomial twice".into()));
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecheckReport {
    pub kind: CertificateKind,
    pub levels: usize,
    pub witnesses: usize,
    pub refutations: usize,
}

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Certificate(msg.into()))
}

fn build_rules(u: &Universe, names: &[String]) -> Result<Vec<Box<dyn PruneRule>>> {
    let reg = prune_rules();
    names.iter().map(|r| reg.build(r, u)).collect()
}

/// Re-verifies a certificate from scratch: witnesses are re-checked for
/// membership, orbit counts are compared with Burnside's lemma, the surviving
/// supports are re-enumerated and each needs a valid witness or refutation.
pub fn recheck(cert: &SearchCertificate) -> Result<RecheckReport> {
    if cert.format != CERTIFICATE_FORMAT {
        return fail(format!("unknown format `{}`", cert.format));
    }
    if cert.n < 2 || cert.d < 1 {
        return fail("search certificates need n >= 2 and d >= 1");
    }
    let u = Universe::new(cert.n, cert.d)?;
    let rules = build_rules(&u, &cert.rules)?;
    let expansions = Expansions::new(u.monomials());
    let mut sizes = BTreeSet::new();
    let mut witnesses = 0;
    let mut refutations = 0;

    for level in &cert.levels {
        let k = level.terms;
        if !sizes.insert(k) {
            return fail(format!("size {k} appears twice"));
        }
        let scan = scan_level(&u, k, &rules);
        if level.orbits != scan.orbits || level.orbits != orbit_count(cert.n, cert.d, k) {
            return fail(format!("size {k}: orbit count {} is wrong", level.orbits));
        }
        if level.subsets_covered != supports_of_size(&u, k)
            || scan.subsets_covered != level.subsets_covered
        {
            return fail(format!("size {k}: covered supports do not add up"));
        }
        let pruned: BTreeMap<String, u64> = cert
            .rules
            .iter()
            .cloned()
            .zip(scan.pruned.iter().copied())
            .collect();
        if pruned != level.pruned {
            return fail(format!("size {k}: prune counts differ"));
        }
        if level.feasible != level.witnesses.len() as u64
            || level.lp_checked != level.feasible + level.refutations.len() as u64
        {
            return fail(format!("size {k}: LP accounting is inconsistent"));
        }
        let survivors: BTreeSet<u128> = scan.survivors.iter().copied().collect();
        let mut seen = BTreeSet::new();
        for w in &level.witnesses {
            let s = support_from_exponents(cert.n, &w.support)?;
            let mask = u.mask_of(&s)?;
            if !survivors.contains(&mask) || !seen.insert(mask) {
                return fail(format!(
                    "size {k}: witness support is not a fresh surviving orbit"
                ));
            }
            let p = w.polynomial.to_polynomial()?;
            let t = parse_rational(&w.max_min_coeff)?;
            check_witness(&s, &p, Some(&t))?;
            witnesses += 1;
        }
        for r in &level.refutations {
            let s = support_from_exponents(cert.n, &r.support)?;
            let mask = u.mask_of(&s)?;
            if !survivors.contains(&mask) || !seen.insert(mask) {
                return fail(format!(
                    "size {k}: refuted support is not a fresh surviving orbit"
                ));
            }
            if let Some(t) = &r.max_min_coeff {
                if parse_rational(t)?.is_positive() {
                    return fail(format!(
                        "size {k}: refuted support records a positive optimum"
                    ));
                }
            }
            let y = Refutation::from_entries(&r.y)?;
            if !super::feasibility::check_refutation_with(&s, &y, &expansions) {
                return fail(format!(
                    "size {k}: refutation for {:?} does not verify",
                    r.support
                ));
            }
            refutations += 1;
        }
        if level.complete != (seen.len() == survivors.len()) {
            return fail(format!("size {k}: completeness flag is wrong"));
        }
    }

    let first = cert.levels.first().map(|l| l.terms);
    if let Some(first) = first {
        if first != cert.start_terms.max(1) && cert.target_terms.is_none() {
            return fail("levels do not begin at the recorded start");
        }
    }
    let contiguous = cert.levels.windows(2).all(|w| w[1].terms == w[0].terms + 1);
    let all_complete = cert.levels.iter().all(|l| l.complete);
    match cert.kind {
        CertificateKind::Optimum => {
            let proved = min_term_lower_bound(cert.n, cert.d)?.proved_value;
            let (last, earlier) = cert
                .levels
                .split_last()
                .ok_or_else(|| Error::Certificate("no levels".into()))?;
            if cert.start_terms as u64 > proved.max(1) {
                return fail(format!(
                    "start {} exceeds the proved lower bound {proved}",
                    cert.start_terms
                ));
            }
            if !contiguous
                || !all_complete
                || last.feasible == 0
                || earlier.iter().any(|l| l.feasible > 0)
            {
                return fail("optimum levels are not a complete ascending run ending at the first feasible size");
            }
            if cert.min_terms != Some(last.terms) {
                return fail("min_terms does not match the last level");
            }
        }
        CertificateKind::Nonexistence | CertificateKind::Existence => {
            let [level] = cert.levels.as_slice() else {
                return fail("a single-size certificate needs exactly one level");
            };
            if cert.target_terms != Some(level.terms) {
                return fail("target size does not match the level");
            }
            let found = level.feasible > 0;
            if cert.kind == CertificateKind::Nonexistence && (found || !level.complete) {
                return fail("nonexistence needs a complete level with no witness");
            }
            if cert.kind == CertificateKind::Existence && !found {
                return fail("existence needs a witness");
            }
        }
        CertificateKind::Partial => {
            if cert.partial_reason.is_none() || all_complete {
                return fail("partial certificates name a reason and have an incomplete level");
            }
        }
    }
    Ok(RecheckReport {
        kind: cert.kind,
        levels: cert.levels.len(),
        witnesses,
        refutations,
    })
}
