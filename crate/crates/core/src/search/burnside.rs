//! Orbit counts of fixed-size supports by Burnside's lemma, computed from
//! cycle types without touching the enumerator.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::universe::permutations;
use crate::poly::Monomial;

fn cycle_lengths(monomials: &[Monomial], sigma: &[usize]) -> Vec<usize> {
    let pos = |m: &Monomial| monomials.iter().position(|x| x == m).expect("closed set");
    let mut seen = vec![false; monomials.len()];
    let mut out = Vec::new();
    for start in 0..monomials.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            len += 1;
            i = pos(&monomials[i].permute(sigma));
        }
        out.push(len);
    }
    out
}

/// Orbits of `k`-subsets of `monomials` (closed under permutation).
fn subset_orbits(n: usize, monomials: &[Monomial], k: usize) -> BigUint {
    let perms = permutations(n);
    let mut total = BigUint::zero();
    for sigma in &perms {
        // coefficient of z^k in Π (1 + z^len)
        let mut poly = vec![BigUint::zero(); k + 1];
        poly[0] = BigUint::from(1u32);
        for len in cycle_lengths(monomials, sigma) {
            for j in (len..=k).rev() {
                let add = poly[j - len].clone();
                poly[j] += add;
            }
        }
        total += &poly[k];
    }
    total / BigUint::from(perms.len())
}

/// Orbits of supports with `k` monomials and maximal degree exactly `d`.
pub fn orbit_count(n: usize, d: u32, k: usize) -> u64 {
    let all = subset_orbits(n, &Monomial::all_up_to_degree(n, d), k);
    let lower = if d == 0 {
        BigUint::zero()
    } else {
        subset_orbits(n, &Monomial::all_up_to_degree(n, d - 1), k)
    };
    (all - lower).to_u64().expect("orbit count fits in u64")
}
