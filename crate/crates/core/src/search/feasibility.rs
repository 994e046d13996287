//! Exact support realizability: does some p in H have exactly this support?
//!
//! Substituting `x1 = 1 - x2 - ... - xn` turns `p = 1` on the hyperplane into
//! linear equations `Σ c_m E_m = e_0` in the coefficients, where `E_m` is the
//! expansion of the monomial `m`. The LP maximizes `t` subject to `c_m >= t`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::universe::Support;
use crate::classes;
use crate::error::{Error, Result};
use crate::lp::{self, LpBuilder, LpOutcome, Relation};
use crate::poly::{parse_rational, Monomial, Polynomial, Rational};

/// Dual multipliers indexed by monomials in `x2..xn` (stored with `x1`
/// exponent zero). Valid when every `L_m = Σ_r y_r E_m[r]` is nonnegative and
/// either `yᵀe_0 < 0`, or `yᵀe_0 <= 0` with some `L_m > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub y: Vec<(Monomial, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefutationEntry {
    pub e: Vec<u32>,
    pub y: String,
}

impl Refutation {
    pub fn to_entries(&self) -> Vec<RefutationEntry> {
        self.y
            .iter()
            .map(|(m, v)| RefutationEntry {
                e: m.exponents().to_vec(),
                y: v.to_string(),
            })
            .collect()
    }

    pub fn from_entries(entries: &[RefutationEntry]) -> Result<Self> {
        let y = entries
            .iter()
            .map(|t| Ok((Monomial::new(t.e.clone())?, parse_rational(&t.y)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Refutation { y })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityOutcome {
    pub feasible: bool,
    pub witness: Option<Polynomial>,
    /// Optimal `t`; `None` when the equations have no solution at all.
    pub max_min_coeff: Option<Rational>,
    /// Present exactly when infeasible.
    pub refutation: Option<Refutation>,
}

/// `m(1 - x2 - ... - xn, x2, ..., xn)` as sparse terms.
pub fn expand_monomial(m: &Monomial) -> Vec<(Monomial, Rational)> {
    let n = m.n();
    let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    images[0] = &(&Polynomial::one(n) - &Polynomial::sum_of_vars(n)) + &Polynomial::var(n, 0);
    Polynomial::from_monomial(m.clone(), Rational::one())
        .substitute(&images)
        .expect("matching arity")
        .terms()
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

/// Memoized expansions over a fixed monomial list.
pub struct Expansions {
    by_monomial: BTreeMap<Monomial, Vec<(Monomial, Rational)>>,
}

impl Expansions {
    pub fn new<'a>(monomials: impl IntoIterator<Item = &'a Monomial>) -> Self {
        Expansions {
            by_monomial: monomials
                .into_iter()
                .map(|m| (m.clone(), expand_monomial(m)))
                .collect(),
        }
    }

    fn get(&self, m: &Monomial) -> Vec<(Monomial, Rational)> {
        self.by_monomial
            .get(m)
            .cloned()
            .unwrap_or_else(|| expand_monomial(m))
    }
}

pub fn lp_feasible(support: &Support) -> FeasibilityOutcome {
    lp_feasible_with(support, &Expansions::new(&support.monomials))
}

pub fn lp_feasible_with(support: &Support, cache: &Expansions) -> FeasibilityOutcome {
    let n = support.n;
    let k = support.len();
    let columns: Vec<Vec<(Monomial, Rational)>> =
        support.monomials.iter().map(|m| cache.get(m)).collect();
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    rows.insert(Monomial::one(n), 0);
    for col in &columns {
        for (r, _) in col {
            let next = rows.len();
            rows.entry(r.clone()).or_insert(next);
        }
    }
    // variables: e_m (c_m = e_m + t) for each m, then t+ and t-
    let mut b = LpBuilder::new();
    for _ in 0..k {
        b.add_var();
    }
    let tp = b.add_var();
    let tm = b.add_var();
    let mut row_coeffs: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows.len()];
    let mut row_sum: Vec<Rational> = vec![Rational::zero(); rows.len()];
    for (j, col) in columns.iter().enumerate() {
        for (r, v) in col {
            let i = rows[r];
            row_coeffs[i].push((j, v.clone()));
            row_sum[i] += v;
        }
    }
    for (i, (mut coeffs, sum)) in row_coeffs.into_iter().zip(row_sum).enumerate() {
        coeffs.push((tp, sum.clone()));
        coeffs.push((tm, -sum));
        let rhs = if i == 0 {
            Rational::one()
        } else {
            Rational::zero()
        };
        b.constrain(coeffs, Relation::Eq, rhs);
    }
    b.maximize(vec![(tp, Rational::one()), (tm, -Rational::one())]);
    let order: Vec<Monomial> = {
        let mut v = vec![Monomial::one(n); rows.len()];
        for (m, &i) in &rows {
            v[i] = m.clone();
        }
        v
    };
    let refutation = |y: Vec<Rational>| Refutation {
        y: order
            .iter()
            .cloned()
            .zip(y)
            .filter(|(_, v)| !v.is_zero())
            .collect(),
    };
    match lp::solve(&b.build(), None) {
        LpOutcome::Optimal { x, value, dual } => {
            if value.is_positive() {
                let terms = support
                    .monomials
                    .iter()
                    .zip(&x)
                    .map(|(m, e)| (m.clone(), e + &value));
                let witness = Polynomial::from_terms(n, terms).expect("matching arity");
                FeasibilityOutcome {
                    feasible: true,
                    witness: Some(witness),
                    max_min_coeff: Some(value),
                    refutation: None,
                }
            } else {
                FeasibilityOutcome {
                    feasible: false,
                    witness: None,
                    max_min_coeff: Some(value),
                    refutation: Some(refutation(dual)),
                }
            }
        }
        LpOutcome::Infeasible { farkas } => FeasibilityOutcome {
            feasible: false,
            witness: None,
            max_min_coeff: None,
            refutation: Some(refutation(farkas)),
        },
        // t is bounded by 1/k through the constant row and Bland's rule terminates
        LpOutcome::Unbounded | LpOutcome::PivotLimit => {
            unreachable!("bounded LP without pivot limit")
        }
    }
}

/// Checks a refutation against freshly computed expansions.
pub fn check_refutation(support: &Support, refutation: &Refutation) -> bool {
    check_refutation_with(support, refutation, &Expansions::new(&support.monomials))
}

pub fn check_refutation_with(
    support: &Support,
    refutation: &Refutation,
    cache: &Expansions,
) -> bool {
    let n = support.n;
    if refutation
        .y
        .iter()
        .any(|(m, _)| m.n() != n || m.exponents()[0] != 0)
    {
        return false;
    }
    let y: BTreeMap<&Monomial, &Rational> = refutation.y.iter().map(|(m, v)| (m, v)).collect();
    if y.len() != refutation.y.len() {
        return false;
    }
    let mut any_positive = false;
    for m in &support.monomials {
        let l = cache
            .get(m)
            .iter()
            .filter_map(|(r, v)| y.get(r).map(|w| v * *w))
            .fold(Rational::zero(), |a, b| a + b);
        if l.is_negative() {
            return false;
        }
        any_positive |= l.is_positive();
    }
    let at_one = y
        .get(&Monomial::one(n))
        .map(|v| (*v).clone())
        .unwrap_or_else(Rational::zero);
    at_one.is_negative() || (any_positive && !at_one.is_positive())
}

/// Checks that `p` lies in H, has exactly the support, and all coefficients
/// are at least `min_coeff`.
pub fn check_witness(
    support: &Support,
    p: &Polynomial,
    min_coeff: Option<&Rational>,
) -> Result<()> {
    if Support::of(p)? != *support {
        return Err(Error::Certificate(format!(
            "witness {p} does not have the recorded support"
        )));
    }
    if !classes::is_in_h(p) {
        return Err(Error::Certificate(format!("witness {p} is not in H")));
    }
    if let Some(t) = min_coeff {
        if !t.is_positive() || p.terms().any(|(_, c)| c < t) {
            return Err(Error::Certificate(format!(
                "witness {p} has a coefficient below {t}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_text, rat};

    fn support(s: &str, n: usize) -> Support {
        Support::of(&parse_text(s, Some(n)).unwrap()).unwrap()
    }

    #[test]
    fn p3_support_is_forced() {
        let out = lp_feasible(&support("x^3 + x*y + y^3", 2));
        assert!(out.feasible);
        let w = out.witness.unwrap();
        assert_eq!(w, parse_text("x^3 + 3 x y + y^3", None).unwrap());
        assert_eq!(out.max_min_coeff, Some(rat(1, 1)));
        check_witness(
            &support("x^3 + x*y + y^3", 2),
            &w,
            out.max_min_coeff.as_ref(),
        )
        .unwrap();
    }

    #[test]
    fn pure_cubes_are_infeasible() {
        let s = support("x^3 + y^3", 2);
        let out = lp_feasible(&s);
        assert!(!out.feasible && out.witness.is_none());
        assert!(check_refutation(&s, out.refutation.as_ref().unwrap()));
    }

    #[test]
    fn linear_support() {
        let out = lp_feasible(&support("x + y", 2));
        assert!(out.feasible);
        assert_eq!(out.witness.unwrap(), Polynomial::sum_of_vars(2));
        assert_eq!(out.max_min_coeff, Some(rat(1, 1)));
    }

    #[test]
    fn convex_combination_support() {
        // 1/2 p3 + 1/2 s^3 has four terms
        let s = support("x^3 + x^2 y + x y^2 + y^3 + x y", 2);
        assert!(lp_feasible(&s).feasible);
    }

    #[test]
    fn refutation_checks_reject_tampering() {
        let s = support("x^3 + y^3", 2);
        let r = lp_feasible(&s).refutation.unwrap();
        let flipped = Refutation {
            y: r.y.iter().map(|(m, v)| (m.clone(), -v)).collect(),
        };
        assert!(!check_refutation(&s, &flipped));
        assert!(!check_refutation(&s, &Refutation { y: Vec::new() }));
        let round = Refutation::from_entries(&r.to_entries()).unwrap();
        assert_eq!(round, r);
    }

    #[test]
    fn nine_term_quartic_support_is_feasible() {
        let p = crate::constructions::named::quartic_nine_terms();
        let s = Support::of(&p).unwrap();
        let out = lp_feasible(&s);
        assert!(out.feasible);
        check_witness(
            &s,
            out.witness.as_ref().unwrap(),
            out.max_min_coeff.as_ref(),
        )
        .unwrap();
    }
}
