use crate::error::{Error, Result};
use crate::poly::{int, Polynomial};

fn require_odd(d: u32) -> Result<()> {
    if d.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "degree must be odd, got {d}"
        )));
    }
    Ok(())
}

/// `x_n^d + s'(x) Σ_{k<d} x_n^k`, where `s'` sums the first `n - 1` variables.
pub fn family_gd(n: usize, d: u32) -> Result<Polynomial> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidArgument(format!(
            "family g_d needs n >= 2 and d >= 1, got n={n}, d={d}"
        )));
    }
    let last = Polynomial::var(n, n - 1);
    let s_prime = &Polynomial::sum_of_vars(n) - &last;
    let mut geometric = Polynomial::zero(n);
    let mut power = Polynomial::one(n);
    for _ in 0..d {
        geometric = &geometric + &power;
        power = &power * &last;
    }
    Ok(&power + &(&s_prime * &geometric))
}

/// The invariant odd-degree family in two variables, via power sums of the
/// two roots of `t^2 - x t - y`.
pub fn family_pd(d: u32) -> Result<Polynomial> {
    require_odd(d)?;
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let mut prev = Polynomial::constant(2, int(2));
    let mut cur = x.clone();
    for _ in 1..d {
        let next = &(&x * &cur) + &(&y * &prev);
        prev = cur;
        cur = next;
    }
    Ok(&cur + &y.pow(d))
}

/// Same family through the second-order recurrence in `k = (d - 1) / 2`.
pub fn family_pd_recurrence(d: u32) -> Result<Polynomial> {
    require_odd(d)?;
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let k = (d - 1) / 2;
    let mut g0 = x.clone();
    let mut g1 = &x.pow(3) + &(&x * &y).scale(&int(3));
    if k == 0 {
        return Ok(&g0 + &y);
    }
    let step = &x.pow(2) + &y.scale(&int(2));
    let y2 = y.pow(2);
    for _ in 1..k {
        let next = &(&step * &g1) - &(&y2 * &g0);
        g0 = g1;
        g1 = next;
    }
    Ok(&g1 + &y.pow(d))
}

/// `x1^(d-1) s - x1^(d-1) + 1`: in J(n) but with a negative coefficient.
pub fn family_eq2(n: usize, d: u32) -> Result<Polynomial> {
    if n < 1 || d < 2 {
        return Err(Error::InvalidArgument(format!(
            "needs n >= 1 and d >= 2, got n={n}, d={d}"
        )));
    }
    let lead = Polynomial::var(n, 0).pow(d - 1);
    let s = Polynomial::sum_of_vars(n);
    Ok(&(&(&lead * &s) - &lead) + &Polynomial::one(n))
}

/// `x^d + y (x^(d-1) + ... + x + 1)`.
pub fn minimal_affine_h2(d: u32) -> Result<Polynomial> {
    if d < 1 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let mut geometric = Polynomial::zero(2);
    let mut power = Polynomial::one(2);
    for _ in 0..d {
        geometric = &geometric + &power;
        power = &power * &x;
    }
    Ok(&power + &(&y * &geometric))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::membership;
    use crate::poly::parse_text;

    fn p2(s: &str) -> Polynomial {
        parse_text(s, Some(2)).unwrap()
    }

    #[test]
    fn gd_examples() {
        // variables (x1, x2): x2^3 + x1 (1 + x2 + x2^2)
        assert_eq!(family_gd(2, 3).unwrap(), p2("x + x y + x y^2 + y^3"));
        assert_eq!(family_gd(3, 1).unwrap(), Polynomial::sum_of_vars(3));
        assert_eq!(family_gd(4, 2).unwrap().num_terms(), 7);
        assert!(family_gd(1, 2).is_err());
    }

    #[test]
    fn pd_examples() {
        assert_eq!(family_pd(1).unwrap(), p2("x + y"));
        assert_eq!(family_pd(3).unwrap(), p2("x^3 + 3x y + y^3"));
        let p5 = family_pd(5).unwrap();
        assert_eq!(p5, p2("x^5 + 5x^3 y + 5x y^2 + y^5"));
        assert_eq!(p5.num_terms(), 4);
        assert!(family_pd(4).is_err());
        for d in [1, 3, 5] {
            assert_eq!(family_pd_recurrence(d).unwrap(), family_pd(d).unwrap());
        }
        assert!(family_pd_recurrence(6).is_err());
    }

    #[test]
    fn j_not_p_family_examples() {
        assert_eq!(family_eq2(2, 2).unwrap(), p2("x^2 + x y - x + 1"));
        let p = family_eq2(3, 5).unwrap();
        let m = membership(&p);
        assert!(m.in_j && !m.in_p);
        assert_eq!(p.num_terms(), 5);
    }

    #[test]
    fn minimal_affine_examples() {
        assert_eq!(minimal_affine_h2(3).unwrap(), p2("x^3 + y(x^2 + x + 1)"));
        assert_eq!(minimal_affine_h2(1).unwrap(), p2("x + y"));
        assert_eq!(minimal_affine_h2(5).unwrap().num_terms(), 6);
        // same polynomial as g_d with the two variables swapped
        let gd = family_gd(2, 4).unwrap().permute_vars(&[1, 0]);
        assert_eq!(minimal_affine_h2(4).unwrap(), gd);
    }
}
