//! Degree and term-count bounds for elements of H(n, d), as exact rationals.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::classes::{require_h, top_monomials};
use crate::error::{Error, Result};
use crate::poly::{rat, rational_string, Monomial, Polynomial, Rational};

/// `C(n + d, n)`, the number of monomials of degree at most `d`.
pub fn binom_bound(n: usize, d: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=n as u64 {
        acc = acc * BigUint::from(d as u64 + i) / BigUint::from(i);
    }
    acc
}

fn q(num: i64, den: i64) -> Rational {
    rat(num, den)
}

/// Upper bounds on the degree of an element of H(n) with `N` terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBounds {
    #[serde(with = "rational_string::option")]
    pub thm0: Option<Rational>,
    #[serde(with = "rational_string")]
    pub prop4: Rational,
    #[serde(with = "rational_string")]
    pub lemma4: Rational,
    #[serde(with = "rational_string")]
    pub theorem1: Rational,
    #[serde(with = "rational_string")]
    pub conjecture: Rational,
}

pub fn degree_bounds(n: usize, num_terms: usize) -> Result<DegreeBounds> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "degree bounds need n >= 2, got {n}"
        )));
    }
    if num_terms < 1 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let (n, nn) = (n as i64, num_terms as i64);
    Ok(DegreeBounds {
        thm0: (n == 2).then(|| q(2 * nn - 3, 1)),
        prop4: q(2 * nn - 3, n - 1),
        lemma4: q(2 * nn - 3, 2 * n - 3),
        theorem1: q(2 * n * (2 * nn - 3), 3 * n * n - 3 * n - 2),
        conjecture: q(nn - 1, n - 1),
    })
}

/// `C(n-1, 2) / (n (2n - 3))`.
pub fn c_of_n(n: usize) -> Rational {
    let n = n as i64;
    q((n - 1) * (n - 2) / 2, n * (2 * n - 3))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma5Bounds {
    #[serde(with = "rational_string")]
    pub by_variables: Rational,
    #[serde(with = "rational_string")]
    pub by_excess: Rational,
    pub excess: u64,
}

/// `E = Σ_{j>=3} (j-2) a_j` over the nonzero exponents sorted descending.
pub fn excess(m: &Monomial) -> u64 {
    let mut a: Vec<u64> = m
        .exponents()
        .iter()
        .filter(|&&e| e > 0)
        .map(|&e| e as u64)
        .collect();
    a.sort_unstable_by(|x, y| y.cmp(x));
    a.iter()
        .enumerate()
        .skip(2)
        .map(|(j, &aj)| (j as u64 - 1) * aj)
        .sum()
}

pub fn bound_lemma5(n: usize, num_terms: usize, m: &Monomial) -> Result<Lemma5Bounds> {
    if m.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: m.n(),
        });
    }
    let k = m.num_vars_used();
    if k < 2 || k > n {
        return Err(Error::InvalidArgument(format!(
            "monomial {m} uses {k} variables; need 2 <= k <= {n}"
        )));
    }
    let e = excess(m);
    let (n, k, nn) = (n as i64, k as i64, num_terms as i64);
    Ok(Lemma5Bounds {
        by_variables: q(2 * nn - 2 * k + 1, 2 * n - 2 * k + 1),
        by_excess: q(2 * nn - 3 + e as i64, 2 * n - 3),
        excess: e,
    })
}

/// Largest degree allowed by the four-step staircase for `n >= 3`, or
/// `None` once `N >= 4n - 3`.
pub fn prop5_max_degree(n: usize, num_terms: usize) -> Option<u32> {
    if n < 3 {
        return None;
    }
    [n, 2 * n - 1, 3 * n - 2, 4 * n - 3]
        .iter()
        .position(|&cut| num_terms < cut)
        .map(|d| d as u32)
}

pub fn theorem2_threshold(d: u32) -> u64 {
    let d = d as u64;
    2 * d * d + 2 * d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Proved,
    Conjectured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinTermBound {
    /// The sharp value `d(n-1) + 1` (or `(d+3)/2` rounded up for n = 2).
    pub value: u64,
    pub status: BoundStatus,
    /// Best lower bound actually proved for `(n, d)`.
    pub proved_value: u64,
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

pub fn min_term_lower_bound(n: usize, d: u32) -> Result<MinTermBound> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "no term bound exists for n = {n}"
        )));
    }
    let (nu, du) = (n as u64, d as u64);
    if d == 0 {
        return Ok(MinTermBound {
            value: 1,
            status: BoundStatus::Proved,
            proved_value: 1,
        });
    }
    if n == 2 {
        let v = ceil_div(du + 3, 2);
        return Ok(MinTermBound {
            value: v,
            status: BoundStatus::Proved,
            proved_value: v,
        });
    }
    let sharp = du * (nu - 1) + 1;
    if d <= 4 || nu >= theorem2_threshold(d) {
        return Ok(MinTermBound {
            value: sharp,
            status: BoundStatus::Proved,
            proved_value: sharp,
        });
    }
    // d >= 5: the staircase gives N >= 4n - 3; inverting the general degree
    // bound gives 2N - 3 >= d (3n^2 - 3n - 2) / (2n).
    let staircase = 4 * nu - 3;
    let general = ceil_div(ceil_div(du * (3 * nu * nu - 3 * nu - 2), 2 * nu) + 3, 2);
    let prop4 = ceil_div(du * (nu - 1) + 3, 2);
    let proved = staircase.max(general).max(prop4).min(sharp);
    Ok(MinTermBound {
        value: sharp,
        status: if proved == sharp {
            BoundStatus::Proved
        } else {
            BoundStatus::Conjectured
        },
        proved_value: proved,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `observed` is the degree and must not exceed `value`.
    DegreeAtMost,
    /// `observed` is a term count and must reach `value`.
    CountAtLeast,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    #[serde(with = "rational_string")]
    pub value: Rational,
    pub observed: u64,
    pub applicable: bool,
    /// False only for the conjectured bound, which is reported but never
    /// counted as a violation.
    pub binding: bool,
    pub satisfied: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub d: u32,
    #[serde(rename = "N")]
    pub num_terms: usize,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn violations(&self) -> Vec<&BoundEntry> {
        self.entries
            .iter()
            .filter(|e| e.applicable && e.binding && !e.satisfied)
            .collect()
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

struct Builder {
    d: u32,
    entries: Vec<BoundEntry>,
}

impl Builder {
    fn degree(
        &mut self,
        name: &'static str,
        value: Rational,
        applicable: bool,
        witness: Option<String>,
    ) {
        let satisfied = Rational::from_integer(self.d.into()) <= value;
        self.entries.push(BoundEntry {
            name,
            kind: BoundKind::DegreeAtMost,
            value,
            observed: self.d as u64,
            applicable,
            binding: true,
            satisfied,
            witness,
        });
    }

    fn count(&mut self, name: &'static str, value: u64, observed: usize, applicable: bool) {
        self.entries.push(BoundEntry {
            name,
            kind: BoundKind::CountAtLeast,
            value: Rational::from_integer(value.into()),
            observed: observed as u64,
            applicable,
            binding: true,
            satisfied: observed as u64 >= value,
            witness: None,
        });
    }
}

/// Evaluates every bound against `p ∈ H(n, d)`. Degree bounds assume
/// `d >= 1` and are inapplicable to the constant 1.
pub fn bound_report(p: &Polynomial) -> Result<BoundReport> {
    require_h(p)?;
    let n = p.n();
    let measure = p.measure()?;
    let d = measure.d;
    let nt = measure.num_terms;
    let positive = d >= 1;
    let mut b = Builder {
        d,
        entries: Vec::new(),
    };

    if n >= 2 {
        let db = degree_bounds(n, nt)?;
        b.degree(
            "theorem0",
            db.thm0.clone().unwrap_or_else(|| q(2 * nt as i64 - 3, 1)),
            positive && n == 2,
            None,
        );
        b.degree("prop4", db.prop4.clone(), positive, None);

        let tops = top_monomials(p);
        let few = tops.iter().find(|m| m.num_vars_used() <= 2);
        b.degree(
            "lemma4",
            db.lemma4.clone(),
            positive && few.is_some(),
            few.map(|m| m.to_string()),
        );

        let lemma5: Vec<(Lemma5Bounds, &Monomial)> = tops
            .iter()
            .filter(|m| m.num_vars_used() >= 2)
            .map(|m| Ok((bound_lemma5(n, nt, m)?, m)))
            .collect::<Result<_>>()?;
        let best_vars = lemma5
            .iter()
            .min_by(|x, y| x.0.by_variables.cmp(&y.0.by_variables));
        let best_excess = lemma5
            .iter()
            .min_by(|x, y| x.0.by_excess.cmp(&y.0.by_excess));
        b.degree(
            "lemma5_variables",
            best_vars
                .map(|x| x.0.by_variables.clone())
                .unwrap_or_else(|| db.lemma4.clone()),
            positive && best_vars.is_some(),
            best_vars.map(|x| x.1.to_string()),
        );
        b.degree(
            "lemma5_excess",
            best_excess
                .map(|x| x.0.by_excess.clone())
                .unwrap_or_else(|| db.lemma4.clone()),
            positive && best_excess.is_some(),
            best_excess.map(|x| x.1.to_string()),
        );

        b.degree("theorem1", db.theorem1.clone(), positive, None);

        let staircase = prop5_max_degree(n, nt);
        b.degree(
            "prop5_staircase",
            Rational::from_integer(staircase.unwrap_or(0).into()),
            positive && staircase.is_some(),
            None,
        );

        let cor2 = n >= 3 && (d <= 4 || nt < 4 * n - 3);
        b.degree("corollary2", db.conjecture.clone(), positive && cor2, None);
        let thm2 = n >= 3 && n as u64 >= theorem2_threshold(d);
        b.degree("theorem2", db.conjecture.clone(), positive && thm2, None);
        b.degree("conjecture", db.conjecture, positive && n >= 3, None);
        if let Some(last) = b.entries.last_mut() {
            last.binding = false;
        }
    }

    b.count(
        "corollary1_top_terms",
        n as u64,
        measure.top_degree_terms,
        positive,
    );
    let nonconstant_pure = p.monomials().filter(|m| m.is_pure() && !m.is_one()).count();
    b.count("pure_terms", n as u64, nonconstant_pure, positive);
    let mixed_needed = (d.saturating_sub(1) as u64).div_ceil(2);
    b.count(
        "theorem0_mixed_terms",
        mixed_needed,
        measure.mixed_count,
        positive && n == 2,
    );
    b.count(
        "theorem0_pure_terms",
        2,
        nonconstant_pure,
        positive && n == 2,
    );

    Ok(BoundReport {
        n,
        d,
        num_terms: nt,
        entries: b.entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{family_pd, named};

    #[test]
    fn binomial_examples() {
        assert_eq!(binom_bound(2, 3), BigUint::from(10u32));
        assert_eq!(binom_bound(5, 0), BigUint::from(1u32));
        assert_eq!(binom_bound(3, 4), BigUint::from(35u32));
    }

    #[test]
    fn degree_bound_examples() {
        for nt in 2..20 {
            let b = degree_bounds(2, nt).unwrap();
            assert_eq!(b.theorem1, q(2 * nt as i64 - 3, 1));
            assert_eq!(b.thm0, Some(b.theorem1.clone()));
        }
        let b = degree_bounds(3, 7).unwrap();
        assert_eq!(b.prop4, q(11, 2));
        assert_eq!(b.lemma4, q(11, 3));
        assert_eq!(b.conjecture, q(3, 1));
        assert!(b.thm0.is_none());
        assert!(degree_bounds(1, 3).is_err());
    }

    #[test]
    fn lemma5_examples() {
        let m = Monomial::new(vec![2, 2, 0]).unwrap();
        let b = bound_lemma5(3, 9, &m).unwrap();
        assert_eq!(b.excess, 0);
        assert_eq!(b.by_excess, degree_bounds(3, 9).unwrap().lemma4);
        let m = Monomial::new(vec![1, 1, 1, 1, 0]).unwrap();
        assert_eq!(bound_lemma5(5, 20, &m).unwrap().excess, 3);
        let m = Monomial::new(vec![1, 1, 1]).unwrap();
        assert_eq!(bound_lemma5(3, 10, &m).unwrap().excess, 1);
        assert!(bound_lemma5(3, 10, &Monomial::new(vec![3, 0, 0]).unwrap()).is_err());
        // sorting: (1, 3, 2) is treated as (3, 2, 1)
        assert_eq!(excess(&Monomial::new(vec![1, 3, 2]).unwrap()), 1);
    }

    #[test]
    fn min_term_examples() {
        let b = min_term_lower_bound(3, 3).unwrap();
        assert_eq!((b.value, b.status), (7, BoundStatus::Proved));
        assert_eq!(min_term_lower_bound(3, 4).unwrap().value, 9);
        assert_eq!(min_term_lower_bound(12, 2).unwrap().proved_value, 23);
        assert_eq!(min_term_lower_bound(2, 7).unwrap().value, 5);
        let open = min_term_lower_bound(3, 5).unwrap();
        assert_eq!(open.status, BoundStatus::Conjectured);
        assert_eq!(open.value, 11);
        assert!(open.proved_value < open.value);
        assert!(min_term_lower_bound(1, 3).is_err());
        assert_eq!(theorem2_threshold(2), 12);
        assert_eq!(theorem2_threshold(1), 4);
        assert_eq!(theorem2_threshold(3), 24);
    }

    #[test]
    fn staircase_table() {
        assert_eq!(prop5_max_degree(3, 2), Some(0));
        assert_eq!(prop5_max_degree(3, 4), Some(1));
        assert_eq!(prop5_max_degree(3, 6), Some(2));
        assert_eq!(prop5_max_degree(3, 8), Some(3));
        assert_eq!(prop5_max_degree(3, 9), None);
        assert_eq!(prop5_max_degree(2, 3), None);
    }

    #[test]
    fn report_examples() {
        let r = bound_report(&family_pd(7).unwrap()).unwrap();
        let t0 = r.entry("theorem0").unwrap();
        assert!(t0.applicable && t0.satisfied);
        assert_eq!(t0.value, q(7, 1));
        assert!(r.violations().is_empty());

        let r = bound_report(&named::quartic_nine_terms()).unwrap();
        assert_eq!(r.entry("theorem1").unwrap().value, q(45, 8));
        assert!(!r.entry("lemma4").unwrap().applicable);
        assert!(r.violations().is_empty());

        let r = bound_report(&Polynomial::sum_of_vars(4)).unwrap();
        assert!(r.violations().is_empty());
        let r = bound_report(&Polynomial::one(3)).unwrap();
        assert!(r.violations().is_empty());
    }

    #[test]
    fn c_of_n_below_one() {
        assert_eq!(c_of_n(3), q(1, 9));
        for n in 2..=10_000 {
            assert!(c_of_n(n) < Rational::one());
        }
    }
}
