use super::chain::WhitneyChain;
use crate::classes::require_h;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub fn is_affine_in(p: &Polynomial, j: usize) -> bool {
    j < p.n() && p.degree_in(j) <= 1
}

/// Highest-index variable in which `p` is affine.
pub fn affine_variable(p: &Polynomial) -> Option<usize> {
    (0..p.n()).rev().find(|&j| is_affine_in(p, j))
}

/// A W chain for an affine element of H: at each level the step is the top
/// part divided by `x_j`.
pub fn affine_chain(p: &Polynomial) -> Result<WhitneyChain> {
    require_h(p)?;
    let j = affine_variable(p).ok_or(Error::NotAffine)?;
    let n = p.n();
    let mut cur = p.clone();
    let mut steps = Vec::new();
    while let Some(d) = cur.degree().filter(|&d| d > 0) {
        let top = cur.homogeneous_part(d);
        let b = top
            .coefficients_in(j)
            .get(1)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(n));
        cur = &(&cur - &top) + &b;
        steps.push(b);
    }
    steps.reverse();
    let chain = WhitneyChain::from_steps(n, steps)?;
    if chain.result() != p {
        return Err(Error::Internal(format!(
            "affine chain ends at {}",
            chain.result()
        )));
    }
    Ok(chain)
}
