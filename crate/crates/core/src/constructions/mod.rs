//! The X and W operations, Whitney chains, named families, and the
//! decompositions built on them.

mod affine;
mod chain;
mod decompose;
mod families;
pub mod named;
mod wmember;

pub use affine::{affine_chain, affine_variable, is_affine_in};
pub use chain::{
    chain_strategies, whitney_chain, ChainDocument, ChainStrategy, LastMonomial, RandomSteps,
    Scripted, StrategyParams, WhitneyChain,
};
pub use decompose::{chain_decompose, homogenize_to_sd, replay, undo_top, Homogenized};
pub use families::{family_eq2, family_gd, family_pd, family_pd_recurrence, minimal_affine_h2};
pub use wmember::{w_membership, Obstruction, ObstructionReport, WVerdict};

use crate::classes::{is_in_h, is_subpolynomial};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// `p - u + s u`.
pub fn op_x(p: &Polynomial, u: &Polynomial) -> Result<Polynomial> {
    let s = Polynomial::sum_of_vars(p.n());
    let su = s.try_mul(u)?;
    p.try_sub(u)?.try_add(&su)
}

/// The X operation restricted to subpolynomials `u ⊂ p`.
pub fn op_w(p: &Polynomial, u: &Polynomial) -> Result<Polynomial> {
    if !is_subpolynomial(u, p)? {
        return Err(Error::NotSubpolynomial {
            u: u.to_string(),
            p: p.to_string(),
        });
    }
    let out = op_x(p, u)?;
    debug_assert!(!is_in_h(p) || is_in_h(&out));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_text;

    fn p2(s: &str) -> Polynomial {
        parse_text(s, Some(2)).unwrap()
    }

    #[test]
    fn op_x_examples() {
        let one = Polynomial::one(2);
        assert_eq!(op_x(&one, &one).unwrap(), Polynomial::sum_of_vars(2));
        let p = p2("x^3 + 3x y + y^3");
        assert_eq!(op_x(&p, &Polynomial::zero(2)).unwrap(), p);
        let s2 = Polynomial::sum_of_vars(2).pow(2);
        assert_eq!(op_x(&s2, &p2("(x+y)^2 - 3x y")).unwrap(), p);
    }

    #[test]
    fn op_w_examples() {
        let s = Polynomial::sum_of_vars(2);
        assert_eq!(op_w(&s, &p2("y")).unwrap(), p2("x + x y + y^2"));
        let s2 = s.pow(2);
        assert!(matches!(
            op_w(&s2, &p2("(x+y)^2 - 3x y")),
            Err(Error::NotSubpolynomial { .. })
        ));
        let p = p2("x^3 + 3x y + y^3");
        assert_eq!(op_w(&p, &p).unwrap(), &s * &p);
    }
}
