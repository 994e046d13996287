use super::op_x;
use crate::classes::{require_h, require_j};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogenized {
    /// The `u` applied at each X step, lowest homogeneous part first.
    pub steps: Vec<Polynomial>,
    pub result: Polynomial,
}

/// Applies X with the lowest nonzero homogeneous part until the polynomial
/// is homogeneous, then checks the result against `s^d` and `Σ p_j s^(d-j)`.
pub fn homogenize_to_sd(p: &Polynomial) -> Result<Homogenized> {
    require_h(p)?;
    let n = p.n();
    let d = p.degree().expect("members of H are nonzero");
    let mut cur = p.clone();
    let mut steps = Vec::new();
    while !cur.is_homogeneous() {
        let low = cur.monomials().map(|m| m.degree()).min().expect("nonzero");
        let u = cur.homogeneous_part(low);
        cur = op_x(&cur, &u)?;
        steps.push(u);
    }
    let s = Polynomial::sum_of_vars(n);
    if cur != s.pow(d) {
        return Err(Error::Internal(format!(
            "homogenized form {cur} is not s^{d}"
        )));
    }
    let parts = p.homogeneous_parts();
    let mut weighted = Polynomial::zero(n);
    for j in 0..=d {
        if let Some(pj) = parts.get(j as usize) {
            weighted = &weighted + &(pj * &s.pow(d - j));
        }
    }
    if weighted != cur {
        return Err(Error::Internal(format!(
            "Σ p_j s^(d-j) = {weighted} differs from s^{d}"
        )));
    }
    Ok(Homogenized { steps, result: cur })
}

/// Splits off the top part: returns `(lower, r)` with
/// `r = s^(d-1) - Σ_{j<d} p_j s^(d-j-1)` and `p = X_r(lower)`.
pub fn undo_top(p: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidArgument(
                "undo_top needs degree at least 1".into(),
            ))
        }
    };
    require_j(p)?;
    let n = p.n();
    let s = Polynomial::sum_of_vars(n);
    let parts = p.homogeneous_parts();
    let mut r = s.pow(d - 1);
    for j in 0..d {
        if let Some(pj) = parts.get(j as usize) {
            r = &r - &(pj * &s.pow(d - j - 1));
        }
    }
    let lower = &(p - &p.homogeneous_part(d)) + &r;
    if op_x(&lower, &r)? != *p {
        return Err(Error::Internal(format!("X_r(lower) does not return {p}")));
    }
    Ok((lower, r))
}

/// X steps from 1 to `p`; intermediate polynomials may have negative
/// coefficients.
pub fn chain_decompose(p: &Polynomial) -> Result<Vec<Polynomial>> {
    require_j(p)?;
    let mut steps = Vec::new();
    let mut cur = p.clone();
    while !cur.is_one() {
        let (lower, r) = undo_top(&cur)?;
        steps.push(r);
        cur = lower;
    }
    steps.reverse();
    Ok(steps)
}

/// Folds X steps over 1.
pub fn replay(n: usize, steps: &[Polynomial]) -> Result<Polynomial> {
    steps
        .iter()
        .try_fold(Polynomial::one(n), |g, u| op_x(&g, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::named;
    use crate::poly::parse_text;

    fn p2(s: &str) -> Polynomial {
        parse_text(s, Some(2)).unwrap()
    }

    #[test]
    fn homogenize_examples() {
        let s = Polynomial::sum_of_vars(2);
        let h = homogenize_to_sd(&s).unwrap();
        assert!(h.steps.is_empty());
        assert_eq!(h.result, s);

        let h = homogenize_to_sd(&named::first_chain_example()).unwrap();
        assert_eq!(h.result, s.pow(3));

        let q = named::quartic_nine_terms();
        assert_eq!(
            homogenize_to_sd(&q).unwrap().result,
            Polynomial::sum_of_vars(3).pow(4)
        );

        assert!(homogenize_to_sd(&p2("x^2")).is_err());
        assert!(homogenize_to_sd(&Polynomial::one(3))
            .unwrap()
            .result
            .is_one());
    }

    #[test]
    fn undo_top_examples() {
        let (_, r) = undo_top(&named::non_invariant_septic()).unwrap();
        assert_eq!(r, named::non_invariant_septic_remainder());
        assert_eq!(
            r.to_string(),
            "x^6 - x^5*y + x^4*y^2 - x^3*y^3 + x^2*y^4 - x*y^5 + y^6"
        );

        let s = Polynomial::sum_of_vars(2);
        let (lower, r) = undo_top(&s.pow(2)).unwrap();
        assert_eq!(r, s);
        assert_eq!(lower, s);

        let (lower, r) = undo_top(&named::cubic_invariant()).unwrap();
        assert_eq!(r, p2("x^2 - x y + y^2"));
        assert_eq!(lower, s.pow(2));

        assert!(undo_top(&Polynomial::one(2)).is_err());
        assert!(undo_top(&p2("x^2")).is_err());
    }

    #[test]
    fn decompose_and_replay() {
        assert!(chain_decompose(&Polynomial::one(2)).unwrap().is_empty());

        let p = named::cubic_invariant();
        let steps = chain_decompose(&p).unwrap();
        let s = Polynomial::sum_of_vars(2);
        assert_eq!(
            steps,
            vec![Polynomial::one(2), s.clone(), &s.pow(2) - &p2("3x y")]
        );
        assert_eq!(replay(2, &steps).unwrap(), p);

        let q = named::quartic_nine_terms();
        assert_eq!(replay(3, &chain_decompose(&q).unwrap()).unwrap(), q);

        let shifted = crate::constructions::family_eq2(3, 4).unwrap();
        assert_eq!(
            replay(3, &chain_decompose(&shifted).unwrap()).unwrap(),
            shifted
        );
    }
}
