//! Seeded pseudo-random elements of H(n) built only from closure operations:
//! products, convex combinations, W steps, variable permutations and
//! compositions with linear maps that preserve the hyperplane.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classes::{convex_combination, is_in_h};
use crate::constructions::{family_gd, family_pd, named, op_w, whitney_chain, RandomSteps};
use crate::error::{Error, Result};
use crate::poly::{rat, Polynomial};

const POOL_CAP: usize = 48;

fn seeds(n: usize, d_max: u32, rng: &mut ChaCha8Rng) -> Result<Vec<Polynomial>> {
    let mut out = vec![Polynomial::one(n)];
    if d_max == 0 {
        return Ok(out);
    }
    out.push(Polynomial::sum_of_vars(n));
    for d in 1..=d_max {
        out.push(
            whitney_chain(n, d, &mut RandomSteps::new(rng.gen()))?
                .result()
                .clone(),
        );
        if n >= 2 {
            out.push(family_gd(n, d)?);
        }
        if n == 2 && d % 2 == 1 {
            out.push(family_pd(d)?);
        }
    }
    let named = [
        named::first_chain_example(),
        named::non_invariant_septic(),
        named::last_monomial_cubic(),
        named::cubic_not_whitney(),
        named::quartic_nine_terms(),
    ];
    out.extend(
        named
            .into_iter()
            .filter(|p| p.n() == n && p.degree().is_some_and(|d| d <= d_max)),
    );
    Ok(out)
}

fn random_subpolynomial(p: &Polynomial, rng: &mut ChaCha8Rng) -> Polynomial {
    let terms: Vec<_> = p.terms().collect();
    let k = rng.gen_range(1..=terms.len());
    let mut u = Polynomial::zero(p.n());
    for (m, c) in terms.choose_multiple(rng, k) {
        let f = rat(rng.gen_range(1..=4), 4);
        u = &u + &Polynomial::from_monomial((*m).clone(), *c * &f);
    }
    u
}

/// `x_j` replaced by `x_j + x_k` and `x_k` by zero.
fn merge_variables(p: &Polynomial, rng: &mut ChaCha8Rng) -> Polynomial {
    let n = p.n();
    let j = rng.gen_range(0..n);
    let k = rng.gen_range(0..n);
    if j == k {
        return p.clone();
    }
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            if i == j {
                &Polynomial::var(n, j) + &Polynomial::var(n, k)
            } else if i == k {
                Polynomial::zero(n)
            } else {
                Polynomial::var(n, i)
            }
        })
        .collect();
    p.substitute(&images).expect("matching arity")
}

fn step(pool: &[Polynomial], rng: &mut ChaCha8Rng) -> Result<Polynomial> {
    let p = pool.choose(rng).expect("nonempty pool");
    let q = pool.choose(rng).expect("nonempty pool");
    Ok(match rng.gen_range(0..5) {
        0 => p * q,
        1 => {
            let w = rat(rng.gen_range(1..8), 8);
            convex_combination(&[p.clone(), q.clone()], &[w.clone(), rat(1, 1) - w])?
        }
        2 => op_w(p, &random_subpolynomial(p, rng))?,
        3 => {
            let mut perm: Vec<usize> = (0..p.n()).collect();
            perm.shuffle(rng);
            p.permute_vars(&perm)
        }
        _ => merge_variables(p, rng),
    })
}

fn generate(
    n: usize,
    d_max: u32,
    seed: u64,
    size: usize,
    keep: impl Fn(&Polynomial) -> bool,
) -> Result<Vec<Polynomial>> {
    if n == 0 {
        return Err(Error::NoVariables);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = seeds(n, d_max, &mut rng)?;
    let mut out: Vec<Polynomial> = pool
        .iter()
        .filter(|p| keep(p))
        .take(size)
        .cloned()
        .collect();
    let mut attempts = 0usize;
    while out.len() < size {
        attempts += 1;
        if attempts > 1000 * (size + 1) {
            return Err(Error::Internal(format!(
                "corpus generation stalled after {} of {size} elements",
                out.len()
            )));
        }
        let p = step(&pool, &mut rng)?;
        if p.degree().is_none_or(|d| d > d_max) {
            continue;
        }
        if !is_in_h(&p) {
            return Err(Error::Internal(format!("closure operation left H: {p}")));
        }
        if keep(&p) {
            out.push(p.clone());
        }
        if pool.len() < POOL_CAP {
            pool.push(p);
        } else {
            let i = rng.gen_range(0..POOL_CAP);
            pool[i] = p;
        }
    }
    Ok(out)
}

/// `size` elements of H(n) of degree at most `d_max`, deterministic in `seed`.
pub fn corpus_generate(n: usize, d_max: u32, seed: u64, size: usize) -> Result<Vec<Polynomial>> {
    generate(n, d_max, seed, size, |_| true)
}

/// Like [`corpus_generate`] but keeps only elements of degree exactly `d`.
pub fn corpus_generate_exact(n: usize, d: u32, seed: u64, size: usize) -> Result<Vec<Polynomial>> {
    generate(n, d, seed, size, |p| p.degree() == Some(d))
}
