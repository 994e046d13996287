use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational};
use crate::error::{Error, Result};

/// Sparse polynomial over the rationals in a fixed number of variables.
///
/// Stored coefficients are never zero. Iteration through [`Polynomial::terms`]
/// runs in descending graded-lex order, which is also the serialization order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// Counts reported by [`Polynomial::measure`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Measure {
    pub n: usize,
    pub d: u32,
    pub num_terms: usize,
    pub pure_count: usize,
    pub mixed_count: usize,
    pub top_degree_terms: usize,
}

/// `parts[j]` is the homogeneous component of degree `j` (possibly zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousParts {
    pub parts: Vec<Polynomial>,
}

impl HomogeneousParts {
    pub fn get(&self, j: usize) -> Option<&Polynomial> {
        self.parts.get(j)
    }

    pub fn reassemble(&self, n: usize) -> Polynomial {
        self.parts
            .iter()
            .fold(Polynomial::zero(n), |acc, part| &acc + part)
    }
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "polynomial needs at least one variable");
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::from_monomial(Monomial::one(n), c)
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::from_monomial(Monomial::var(n, i), Rational::one())
    }

    /// `s = x1 + ... + xn`.
    pub fn sum_of_vars(n: usize) -> Self {
        Self::from_terms_unchecked(n, (0..n).map(|i| (Monomial::var(n, i), Rational::one())))
    }

    pub fn from_monomial(m: Monomial, c: Rational) -> Self {
        let n = m.n();
        Self::from_terms_unchecked(n, std::iter::once((m, c)))
    }

    /// Builds a canonical polynomial, merging duplicates and dropping zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        if n == 0 {
            return Err(Error::NoVariables);
        }
        let mut p = Polynomial::zero(n);
        for (m, c) in terms {
            if m.n() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: m.n(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn from_terms_unchecked<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Convenience for small integer-coefficient polynomials in tests and
    /// constructions: `(coefficient, exponents)` pairs.
    pub fn from_int_terms(n: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms_unchecked(
            n,
            terms.iter().map(|(c, e)| {
                assert_eq!(e.len(), n);
                (
                    Monomial::new(e.to_vec()).unwrap(),
                    Rational::from_integer((*c).into()),
                )
            }),
        )
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Number of distinct monomials.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// First monomial (canonical order) carrying a negative coefficient.
    pub fn first_negative(&self) -> Option<(&Monomial, &Rational)> {
        self.terms().find(|(_, c)| c.is_negative())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_same_n(&self, other: &Polynomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VarCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_n(other)?;
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += prod;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            n: self.n,
            terms: acc,
        })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact quotient by `divisor`, or `None` if the division leaves a
    /// remainder. Single-divisor graded-lex division, so the remainder is
    /// unique and zero exactly when `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.n, divisor.n);
        let (lead_m, lead_c) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.n);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lead_m)?;
            let qc = c / lead_c;
            let step = divisor.mul_monomial(&qm).scale(&qc);
            quot.add_term(qm, qc);
            rem = &rem - &step;
        }
        Some(quot)
    }

    /// Composite `p(images)`; every image must share one variable count.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: images.len(),
            });
        }
        let m = images[0].n;
        if let Some(bad) = images.iter().find(|q| q.n != m) {
            return Err(Error::VarCountMismatch {
                left: m,
                right: bad.n,
            });
        }
        // powers[i][k] = images[i]^k, built lazily up to the max exponent used
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(m)]; self.n];
        let mut out = Polynomial::zero(m);
        for (mono, c) in &self.terms {
            let mut term = Polynomial::constant(m, c.clone());
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Degree-`j` component.
    pub fn homogeneous_part(&self, j: u32) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == j)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_parts(&self) -> HomogeneousParts {
        let d = self.degree().unwrap_or(0);
        HomogeneousParts {
            parts: (0..=d).map(|j| self.homogeneous_part(j)).collect(),
        }
    }

    pub fn measure(&self) -> Result<Measure> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        let pure_count = self.terms.keys().filter(|m| m.is_pure()).count();
        Ok(Measure {
            n: self.n,
            d,
            num_terms: self.terms.len(),
            pure_count,
            mixed_count: self.terms.len() - pure_count,
            top_degree_terms: self.terms.keys().filter(|m| m.degree() == d).count(),
        })
    }

    /// Largest exponent of `x_i` over all terms.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponents()[i])
            .max()
            .unwrap_or(0)
    }

    /// Reorders variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial {
        assert_eq!(perm.len(), self.n);
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.permute(perm), c.clone()))
                .collect(),
        }
    }

    /// Collects terms by the exponent of `x_i`: entry `k` is the coefficient
    /// polynomial of `x_i^k` (with `x_i` removed).
    pub fn coefficients_in(&self, i: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(self.n); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.exponents()[i] as usize;
            let mut e = m.exponents().to_vec();
            e[i] = 0;
            out[k].add_term(Monomial::new(e).unwrap(), c.clone());
        }
        out
    }

    /// Polynomial with the same support and all coefficients equal to one.
    pub fn support_indicator(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .keys()
                .map(|m| (m.clone(), Rational::one()))
                .collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_polynomial(self, false))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_text;

    fn p(s: &str) -> Polynomial {
        parse_text(s, None).unwrap()
    }

    fn p2(s: &str) -> Polynomial {
        parse_text(s, Some(2)).unwrap()
    }

    fn p3(s: &str) -> Polynomial {
        parse_text(s, Some(3)).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p("x+y") + &p("x-y"), p2("2x"));
        let q = p("x^3+3x*y+y^3");
        assert_eq!(&q + &Polynomial::zero(2), q);
        assert_eq!(&q + &p2("y^3"), p("x^3+3x*y+2y^3"));
        assert!(p("x").try_add(&p("x+y")).is_err());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("x+y") * &p("x+y"), p("x^2+2x*y+y^2"));
        let s = Polynomial::sum_of_vars(3);
        assert_eq!(&s * &Polynomial::one(3), s);
    }

    #[test]
    fn mul_reconstructs_quotient_by_s() {
        // x^3 + (y+z)^3 divided by s, multiplied back
        let target = p3("x^3 + y^3 + 3y^2 z + 3y z^2 + z^3");
        let s = Polynomial::sum_of_vars(3);
        let quotient = target.div_exact(&s).unwrap();
        assert_eq!(quotient, p3("x^2 - x*y - x*z + y^2 + 2y*z + z^2"));
        // independent expansion of (x+y+z)(x^2 - x(y+z) + (y+z)^2)
        let yz = p3("y+z");
        let manual = &s * &(&(&p3("x^2") - &(&p3("x") * &yz)) + &(&yz * &yz));
        assert_eq!(manual, target);
        assert_eq!(&s * &quotient, target);
    }

    #[test]
    fn substitute_veronese_examples() {
        // (u, v) written as (x, y)
        let u2 = p2("x^2");
        let uv2 = p2("2x*y");
        let v2 = p2("y^2");
        let imgs = [u2, uv2, v2];
        assert!(p3("y^2 - 4x*z").substitute(&imgs).unwrap().is_zero());
        assert_eq!(
            Polynomial::sum_of_vars(3).substitute(&imgs).unwrap(),
            p("x^2+2x*y+y^2")
        );
        let id = [p3("x"), p3("y"), p3("z")];
        assert_eq!(p3("x").substitute(&id).unwrap(), p3("x"));
        assert!(p3("x").substitute(&imgs[..2]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let third = Rational::new(1.into(), 3.into());
        let pt = vec![third.clone(), third.clone(), third];
        assert_eq!(
            Polynomial::sum_of_vars(3).evaluate(&pt).unwrap(),
            Rational::one()
        );
        assert!(Polynomial::sum_of_vars(3).evaluate(&pt[..2]).is_err());
    }

    #[test]
    fn homogeneous_parts_examples() {
        let q = p("x^3+3x*y+y^3");
        let parts = q.homogeneous_parts();
        assert_eq!(parts.parts.len(), 4);
        assert!(parts.parts[0].is_zero() && parts.parts[1].is_zero());
        assert_eq!(parts.parts[2], p("3x*y"));
        assert_eq!(parts.parts[3], p("x^3+y^3"));
        assert_eq!(parts.reassemble(2), q);
        assert_eq!(
            Polynomial::sum_of_vars(2).homogeneous_parts().parts.len(),
            2
        );
        assert_eq!(
            Polynomial::one(2).homogeneous_parts().parts,
            vec![Polynomial::one(2)]
        );
    }

    #[test]
    fn measure_examples() {
        let m = p("x^3+3x*y+y^3").measure().unwrap();
        assert_eq!(
            (
                m.d,
                m.num_terms,
                m.pure_count,
                m.mixed_count,
                m.top_degree_terms
            ),
            (3, 3, 2, 1, 2)
        );
        assert_eq!(Polynomial::zero(2).measure(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Polynomial::zero(3).degree(), None);
        assert_eq!(Polynomial::one(3).degree(), Some(0));
    }
}
