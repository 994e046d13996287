//! Fixed example polynomials used across tests, the CLI and the corpus.

use crate::poly::{parse_text, Polynomial};

fn fixed(src: &str, n: usize) -> Polynomial {
    parse_text(src, Some(n)).expect("fixed example parses")
}

/// `x + xy + xy^2 + y^3`, reached by three W steps from 1.
pub fn first_chain_example() -> Polynomial {
    fixed("x + x y + x y^2 + y^3", 2)
}

/// `x^3 + 3xy + y^3`.
pub fn cubic_invariant() -> Polynomial {
    fixed("x^3 + 3 x y + y^3", 2)
}

/// A degree-7 element of H(2) with five terms that is not group invariant.
pub fn non_invariant_septic() -> Polynomial {
    fixed("x^7 + y^7 + 7/2 x^5 y + 7/2 x y^5 + 7/2 x y", 2)
}

/// The remainder step `r` of [`non_invariant_septic`], as printed.
pub fn non_invariant_septic_remainder() -> Polynomial {
    fixed("x^6 - x^5 y + x^4 y^2 - x^3 y^3 + x^2 y^4 - x y^5 + y^6", 2)
}

/// Result of three last-monomial W steps from 1 in three variables.
pub fn last_monomial_cubic() -> Polynomial {
    fixed("x + y + x z + y z + x z^2 + y z^2 + z^3", 3)
}

/// The printed form of [`last_monomial_cubic`]. It contains `xy` where the
/// replay gives `yz`, and is not in J(3).
pub fn last_monomial_cubic_printed() -> Polynomial {
    fixed("x + y + x y + x z + x z^2 + y z^2 + z^3", 3)
}

/// `x^3 + 3x(y+z) + (y+z)^3`: in H(3,3) with seven terms, but not in W.
pub fn cubic_not_whitney() -> Polynomial {
    fixed("x^3 + 3 x y + 3 x z + y^3 + 3 y^2 z + 3 y z^2 + z^3", 3)
}

/// A nine-term element of H(3,4).
pub fn quartic_nine_terms() -> Polynomial {
    fixed("x + y + z^2 + x z + y^2 z + y z^2 + x y z (x + y + z)", 3)
}

/// `Σ x_j^3 + 3 Σ_{i<j} x_i x_j`, one coefficient 3 per unordered pair.
pub fn symmetric_cubic(n: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for j in 0..n {
        let xj = Polynomial::var(n, j);
        p = &p + &xj.pow(3);
        for i in 0..j {
            let three = Polynomial::constant(n, crate::poly::int(3));
            p = &p + &(&three * &(&Polynomial::var(n, i) * &xj));
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{is_in_h, is_in_j};

    #[test]
    fn fixed_examples_are_well_formed() {
        assert!(is_in_h(&first_chain_example()));
        assert!(is_in_h(&cubic_invariant()));
        assert!(is_in_h(&non_invariant_septic()));
        assert!(is_in_h(&last_monomial_cubic()));
        assert!(!is_in_j(&last_monomial_cubic_printed()));
        assert!(is_in_h(&cubic_not_whitney()));
        assert_eq!(cubic_not_whitney().num_terms(), 7);
        assert_eq!(quartic_nine_terms().num_terms(), 9);
        assert_eq!(symmetric_cubic(2), cubic_invariant());
        assert_eq!(symmetric_cubic(3).num_terms(), 6);
        assert!(!is_in_j(&symmetric_cubic(3)));
    }
}
