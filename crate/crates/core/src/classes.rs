//! Membership in J(n) (equal to one on the hyperplane), P(n) (nonnegative
//! coefficients) and H(n) = J(n) ∩ P(n).

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational};

/// Result of [`membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub in_j: bool,
    pub in_p: bool,
    pub in_h: bool,
    /// `None` for the zero polynomial.
    pub degree: Option<u32>,
    pub num_terms: usize,
    /// `(p - 1) / (s - 1)`, present exactly when `in_j`.
    pub quotient: Option<Polynomial>,
}

#[derive(Serialize)]
pub struct MembershipReport {
    pub in_j: bool,
    pub in_p: bool,
    pub in_h: bool,
    pub degree: String,
    pub num_terms: usize,
    pub quotient: Option<crate::poly::PolynomialDocument>,
}

impl Membership {
    pub fn report(&self) -> MembershipReport {
        MembershipReport {
            in_j: self.in_j,
            in_p: self.in_p,
            in_h: self.in_h,
            degree: degree_string(self.degree),
            num_terms: self.num_terms,
            quotient: self.quotient.as_ref().map(Into::into),
        }
    }
}

/// Renders a degree, with `-inf` for the zero polynomial.
pub fn degree_string(d: Option<u32>) -> String {
    d.map(|d| d.to_string()).unwrap_or_else(|| "-inf".into())
}

/// Synthetic division of `p - 1` by `s - 1` in `x1`.
///
/// Returns `(Q, R)` with `p - 1 = (s - 1) Q + R` where `R` does not involve
/// `x1`; `R` is `p - 1` evaluated at `x1 = 1 - x2 - ... - xn`, so it is zero
/// exactly when `p` is identically one on the hyperplane.
pub fn quotient_q(p: &Polynomial) -> (Polynomial, Polynomial) {
    let n = p.n();
    let f = p - &Polynomial::one(n);
    let coeffs = f.coefficients_in(0);
    // root of s - 1 as a polynomial in x1: a = 1 - (x2 + ... + xn)
    let rest = &Polynomial::sum_of_vars(n) - &Polynomial::var(n, 0);
    let a = &Polynomial::one(n) - &rest;
    let top = coeffs.len() - 1;
    if top == 0 {
        return (Polynomial::zero(n), coeffs[0].clone());
    }
    // q[k] is the coefficient of x1^k in Q
    let mut q = vec![Polynomial::zero(n); top];
    q[top - 1] = coeffs[top].clone();
    for k in (1..top).rev() {
        q[k - 1] = &coeffs[k] + &(&a * &q[k]);
    }
    let remainder = &coeffs[0] + &(&a * &q[0]);
    let x1 = Polynomial::var(n, 0);
    let mut quotient = Polynomial::zero(n);
    let mut power = Polynomial::one(n);
    for qk in &q {
        quotient = &quotient + &(qk * &power);
        power = &power * &x1;
    }
    (quotient, remainder)
}

pub fn is_in_j(p: &Polynomial) -> bool {
    quotient_q(p).1.is_zero()
}

pub fn membership(p: &Polynomial) -> Membership {
    let (q, r) = quotient_q(p);
    let in_j = r.is_zero();
    let in_p = p.is_nonnegative();
    Membership {
        in_j,
        in_p,
        in_h: in_j && in_p,
        degree: p.degree(),
        num_terms: p.num_terms(),
        quotient: in_j.then_some(q),
    }
}

pub fn is_in_h(p: &Polynomial) -> bool {
    p.is_nonnegative() && is_in_j(p)
}

/// Fails with a membership error unless `p` lies in H(n).
pub fn require_h(p: &Polynomial) -> Result<()> {
    if !p.is_nonnegative() {
        let (m, c) = p.first_negative().expect("negative term");
        return Err(Error::Membership {
            class: "H",
            detail: format!("coefficient {c} on {m} is negative"),
        });
    }
    require_j(p)
}

pub fn require_j(p: &Polynomial) -> Result<()> {
    if !is_in_j(p) {
        return Err(Error::Membership {
            class: "J",
            detail: format!("{p} is not identically 1 on the hyperplane"),
        });
    }
    Ok(())
}

/// `g ⊂ p`: both `g` and `p - g` have nonnegative coefficients.
pub fn is_subpolynomial(g: &Polynomial, p: &Polynomial) -> Result<bool> {
    let diff = p.try_sub(g)?;
    Ok(g.is_nonnegative() && diff.is_nonnegative())
}

/// `Σ wᵢ pᵢ` for nonnegative weights summing to one.
pub fn convex_combination(ps: &[Polynomial], weights: &[Rational]) -> Result<Polynomial> {
    if ps.is_empty() {
        return Err(Error::InvalidWeights("no polynomials".into()));
    }
    if ps.len() != weights.len() {
        return Err(Error::InvalidWeights(format!(
            "{} polynomials but {} weights",
            ps.len(),
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| w.is_negative()) {
        return Err(Error::InvalidWeights(format!("negative weight {w}")));
    }
    let total: Rational = weights.iter().cloned().fold(Rational::zero(), |a, b| a + b);
    if !total.is_one() {
        return Err(Error::InvalidWeights(format!(
            "weights sum to {total}, not 1"
        )));
    }
    let n = ps[0].n();
    let mut out = Polynomial::zero(n);
    for (p, w) in ps.iter().zip(weights) {
        out = out.try_add(&p.scale(w))?;
    }
    Ok(out)
}

/// Monomials of degree `d(p)`.
pub fn top_monomials(p: &Polynomial) -> Vec<Monomial> {
    match p.degree() {
        None => Vec::new(),
        Some(d) => p.monomials().filter(|m| m.degree() == d).cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_text, rat};

    fn p2(s: &str) -> Polynomial {
        parse_text(s, Some(2)).unwrap()
    }

    #[test]
    fn quotient_of_s_is_one() {
        let (q, r) = quotient_q(&Polynomial::sum_of_vars(3));
        assert!(q.is_one());
        assert!(r.is_zero());
    }

    #[test]
    fn quotient_of_first_example() {
        let p = p2("x + x*y + x*y^2 + y^3");
        let (q, r) = quotient_q(&p);
        assert!(r.is_zero());
        assert_eq!(q, p2("1 + y + y^2"));
        // independent check: 1 + (s - 1)(1 + y + y^2) == p
        let s1 = &Polynomial::sum_of_vars(2) - &Polynomial::one(2);
        assert_eq!(&Polynomial::one(2) + &(&s1 * &p2("1 + y + y^2")), p);
    }

    #[test]
    fn x_squared_is_not_in_j() {
        let (_, r) = quotient_q(&p2("x^2"));
        assert!(!r.is_zero());
    }

    #[test]
    fn quotient_identity_with_remainder() {
        let p = parse_text("x^2 y + 3 z - 7/3 x y z^2", Some(3)).unwrap();
        let (q, r) = quotient_q(&p);
        let s1 = &Polynomial::sum_of_vars(3) - &Polynomial::one(3);
        assert_eq!(&(&s1 * &q) + &r, &p - &Polynomial::one(3));
        assert_eq!(r.degree_in(0), 0);
    }

    #[test]
    fn membership_examples() {
        // x1^4 s - x1^4 + 1 with n = 3
        let shifted = parse_text("x^4 (x+y+z) - x^4 + 1", Some(3)).unwrap();
        let m = membership(&shifted);
        assert!(m.in_j && !m.in_p && !m.in_h);
        assert_eq!(m.num_terms, 5);

        let quartic =
            parse_text("x + y + z^2 + x z + y^2 z + y z^2 + x y z (x+y+z)", None).unwrap();
        let m = membership(&quartic);
        assert!(m.in_h);
        assert_eq!(m.degree, Some(4));

        let sym_cubic = parse_text("x^3+y^3+z^3 + 3(x y + x z + y z)", None).unwrap();
        assert!(!membership(&sym_cubic).in_j);

        let one = membership(&Polynomial::one(4));
        assert!(one.in_h);
        assert_eq!(one.degree, Some(0));

        let zero = membership(&Polynomial::zero(2));
        assert!(!zero.in_j && zero.in_p && zero.degree.is_none());
    }

    #[test]
    fn subpolynomial_examples() {
        let p = p2("x^3 + 3x y + y^3");
        assert!(is_subpolynomial(&p2("3x y"), &p).unwrap());
        assert!(is_subpolynomial(&p, &p).unwrap());
        assert!(!is_subpolynomial(&p2("2x"), &p2("x + y")).unwrap());
    }

    #[test]
    fn convex_combination_examples() {
        let s = Polynomial::sum_of_vars(2);
        let half = rat(1, 2);
        let both = [half.clone(), half.clone()];
        assert_eq!(
            convex_combination(&[s.clone(), s.clone()], &both).unwrap(),
            s
        );

        let p3 = p2("x^3 + 3x y + y^3");
        let swapped = p2("y^3 + 3x y + x^3");
        assert_eq!(
            convex_combination(&[p3.clone(), swapped], &both).unwrap(),
            p3
        );

        let mix = convex_combination(&[p3, s.pow(3)], &both).unwrap();
        assert_eq!(mix.num_terms(), 5);
        assert!(membership(&mix).in_h);
        assert_eq!(mix.degree(), Some(3));

        assert!(convex_combination(std::slice::from_ref(&s), &[rat(1, 2)]).is_err());
        assert!(convex_combination(&[s.clone(), s.clone()], &[rat(3, 2), rat(-1, 2)]).is_err());
    }
}
