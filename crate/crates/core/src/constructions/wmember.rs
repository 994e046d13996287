use serde::Serialize;

use super::chain::WhitneyChain;
use crate::classes::{quotient_q, require_h};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational};

/// A checkable reason why `p` has no Whitney chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The forced top of the last step, `p_d / s`, has a negative coefficient.
    TopQuotientNegative {
        quotient: Polynomial,
        monomial: Monomial,
        coeff: Rational,
    },
    /// The steps of any chain sum to `Q(p)`, which has a negative coefficient.
    QuotientNegative {
        quotient: Polynomial,
        monomial: Monomial,
        coeff: Rational,
    },
}

#[derive(Serialize)]
pub struct ObstructionReport {
    pub kind: &'static str,
    pub quotient: String,
    pub monomial: String,
    pub coeff: String,
}

impl Obstruction {
    pub fn kind(&self) -> &'static str {
        match self {
            Obstruction::TopQuotientNegative { .. } => "top-quotient-negative",
            Obstruction::QuotientNegative { .. } => "quotient-negative",
        }
    }

    pub fn report(&self) -> ObstructionReport {
        let (Obstruction::TopQuotientNegative {
            quotient,
            monomial,
            coeff,
        }
        | Obstruction::QuotientNegative {
            quotient,
            monomial,
            coeff,
        }) = self;
        ObstructionReport {
            kind: self.kind(),
            quotient: quotient.to_string(),
            monomial: monomial.to_string(),
            coeff: coeff.to_string(),
        }
    }

    /// Re-derives the obstruction for `p` from scratch.
    pub fn recheck(&self, p: &Polynomial) -> bool {
        let Some(d) = p.degree() else { return false };
        match self {
            Obstruction::TopQuotientNegative {
                quotient,
                monomial,
                coeff,
            } => {
                let s = Polynomial::sum_of_vars(p.n());
                s.try_mul(quotient).ok() == Some(p.homogeneous_part(d))
                    && quotient.coeff(monomial) == *coeff
                    && coeff < &Rational::from_integer(0.into())
            }
            Obstruction::QuotientNegative {
                quotient,
                monomial,
                coeff,
            } => {
                let (q, r) = quotient_q(p);
                r.is_zero()
                    && &q == quotient
                    && q.coeff(monomial) == *coeff
                    && coeff < &Rational::from_integer(0.into())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WVerdict {
    InW(WhitneyChain),
    NotInW(Obstruction),
}

impl WVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            WVerdict::InW(_) => "IN_W",
            WVerdict::NotInW(_) => "NOT_IN_W",
        }
    }
}

/// Steps `u_k = Q_{k-1}`, the homogeneous parts of `Q(p)`.
fn homogeneous_chain(p: &Polynomial, q: &Polynomial, d: u32) -> Result<WhitneyChain> {
    let steps = (0..d).map(|k| q.homogeneous_part(k)).collect();
    let chain = WhitneyChain::from_steps(p.n(), steps)?;
    if chain.result() != p {
        return Err(Error::Internal(format!("chain ends at {}", chain.result())));
    }
    Ok(chain)
}

/// Decides whether `p ∈ H` is reachable from 1 by W steps.
///
/// The steps of any chain are nonnegative and sum to `Q(p)`. Conversely when
/// `Q(p)` is nonnegative the chain with `u_k = Q_{k-1}` is valid: the
/// subpolynomial condition at level `k` reads coefficientwise as
/// `p_j >= 0` for `j <= k`. So the verdict is exact.
pub fn w_membership(p: &Polynomial) -> Result<WVerdict> {
    require_h(p)?;
    let n = p.n();
    let d = p.degree().expect("members of H are nonzero");
    if d == 0 {
        return Ok(WVerdict::InW(homogeneous_chain(p, p, 0)?));
    }
    let top = p.homogeneous_part(d);
    let forced = top
        .div_exact(&Polynomial::sum_of_vars(n))
        .ok_or_else(|| Error::Internal(format!("s does not divide the top part {top}")))?;
    if let Some((m, c)) = forced.first_negative() {
        let (monomial, coeff) = (m.clone(), c.clone());
        return Ok(WVerdict::NotInW(Obstruction::TopQuotientNegative {
            quotient: forced,
            monomial,
            coeff,
        }));
    }
    let (q, _) = quotient_q(p);
    if let Some((m, c)) = q.first_negative() {
        let (monomial, coeff) = (m.clone(), c.clone());
        return Ok(WVerdict::NotInW(Obstruction::QuotientNegative {
            quotient: q,
            monomial,
            coeff,
        }));
    }
    Ok(WVerdict::InW(homogeneous_chain(p, &q, d)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{family_gd, named, whitney_chain, RandomSteps};
    use crate::poly::{parse_text, rat};

    #[test]
    fn cubic_not_whitney_has_negative_forced_top() {
        let p = named::cubic_not_whitney();
        match w_membership(&p).unwrap() {
            WVerdict::NotInW(ob) => {
                assert_eq!(ob.kind(), "top-quotient-negative");
                if let Obstruction::TopQuotientNegative { quotient, .. } = &ob {
                    assert_eq!(
                        quotient,
                        &parse_text("x^2 - x(y+z) + (y+z)^2", Some(3)).unwrap()
                    );
                }
                assert!(ob.recheck(&p));
                assert!(!ob.recheck(&named::last_monomial_cubic()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn known_members() {
        for p in [
            family_gd(3, 3).unwrap(),
            Polynomial::one(2),
            named::last_monomial_cubic(),
        ] {
            match w_membership(&p).unwrap() {
                WVerdict::InW(c) => assert_eq!(c.result(), &p),
                other => panic!("{other:?}"),
            }
        }
        assert!(w_membership(&parse_text("x^2", Some(2)).unwrap()).is_err());
    }

    #[test]
    fn lower_quotient_obstruction() {
        // Q is negative only below its top part
        let q = parse_text("1 + x + y + x^2 - 1/4 x y + y^2 + x^3 + y^3", Some(2)).unwrap();
        let s1 = &Polynomial::sum_of_vars(2) - &Polynomial::one(2);
        let p = &Polynomial::one(2) + &(&s1 * &q);
        assert!(p.is_nonnegative());
        match w_membership(&p).unwrap() {
            WVerdict::NotInW(ob) => {
                assert_eq!(ob.kind(), "quotient-negative");
                assert!(ob.recheck(&p));
                if let Obstruction::QuotientNegative { coeff, .. } = &ob {
                    assert_eq!(coeff, &rat(-1, 4));
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invariant_cubic_is_not_whitney() {
        let p = named::cubic_invariant();
        let v = w_membership(&p).unwrap();
        assert_eq!(v.status(), "NOT_IN_W");
        if let WVerdict::NotInW(ob) = v {
            assert!(ob.recheck(&p));
        }
    }

    #[test]
    fn random_chains_are_recognized() {
        for seed in 0..40 {
            let c = whitney_chain(3, 4, &mut RandomSteps::new(seed)).unwrap();
            match w_membership(c.result()).unwrap() {
                WVerdict::InW(w) => assert_eq!(w.result(), c.result()),
                other => panic!("seed {seed}: {other:?}"),
            }
        }
    }
}
