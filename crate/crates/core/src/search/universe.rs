use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// All permutations of `0..n` in lexicographic order, identity first.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// A monomial set with maximal degree exactly `d`, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Support {
    pub n: usize,
    pub d: u32,
    pub monomials: Vec<Monomial>,
}

impl Support {
    pub fn new(n: usize, mut monomials: Vec<Monomial>) -> Result<Self> {
        if monomials.iter().any(|m| m.n() != n) {
            return Err(Error::InvalidArgument(
                "monomials have mixed variable counts".into(),
            ));
        }
        monomials.sort_by(|a, b| b.cmp(a));
        monomials.dedup();
        let d = monomials
            .iter()
            .map(Monomial::degree)
            .max()
            .ok_or_else(|| Error::InvalidArgument("empty support".into()))?;
        Ok(Support { n, d, monomials })
    }

    pub fn of(p: &Polynomial) -> Result<Self> {
        Support::new(p.n(), p.monomials().cloned().collect())
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn exponents(&self) -> Vec<Vec<u32>> {
        self.monomials
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect()
    }
}

type ByteTable = [[u128; 256]; 16];

/// Monomials of degree at most `d` in `n` variables, indexed in canonical
/// (descending) order so that a support is a bitmask.
pub struct Universe {
    n: usize,
    d: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Index images under each non-identity variable permutation.
    perms: Vec<Vec<usize>>,
    tables: Vec<Box<ByteTable>>,
    degree_masks: Vec<u128>,
}

pub const MAX_UNIVERSE: usize = 128;

impl Universe {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVariables);
        }
        let monomials = Monomial::all_up_to_degree(n, d);
        if monomials.len() > MAX_UNIVERSE {
            return Err(Error::SearchTooLarge(format!(
                "{} monomials of degree <= {d} in {n} variables; at most {MAX_UNIVERSE} supported",
                monomials.len()
            )));
        }
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut perms = Vec::new();
        let mut tables = Vec::new();
        for sigma in permutations(n).into_iter().skip(1) {
            let image: Vec<usize> = monomials
                .iter()
                .map(|m| index[&m.permute(&sigma)])
                .collect();
            let mut table: Box<ByteTable> = Box::new([[0u128; 256]; 16]);
            for (byte, row) in table.iter_mut().enumerate() {
                for (value, slot) in row.iter_mut().enumerate() {
                    let mut out = 0u128;
                    for bit in 0..8 {
                        let i = byte * 8 + bit;
                        if value >> bit & 1 == 1 && i < monomials.len() {
                            out |= 1u128 << image[i];
                        }
                    }
                    *slot = out;
                }
            }
            perms.push(image);
            tables.push(table);
        }
        let mut degree_masks = vec![0u128; d as usize + 1];
        for (i, m) in monomials.iter().enumerate() {
            degree_masks[m.degree() as usize] |= 1u128 << i;
        }
        Ok(Universe {
            n,
            d,
            monomials,
            index,
            perms,
            tables,
            degree_masks,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Number of monomials of degree exactly `d`; they occupy indices `0..top_count`.
    pub fn top_count(&self) -> usize {
        self.degree_masks[self.d as usize].count_ones() as usize
    }

    pub fn degree_mask(&self, k: u32) -> u128 {
        self.degree_masks.get(k as usize).copied().unwrap_or(0)
    }

    /// Monomials all of whose variables lie in `vars`.
    pub fn mask_where(&self, pred: impl Fn(&Monomial) -> bool) -> u128 {
        self.monomials
            .iter()
            .enumerate()
            .filter(|(_, m)| pred(m))
            .fold(0u128, |acc, (i, _)| acc | 1u128 << i)
    }

    pub fn mask_of(&self, support: &Support) -> Result<u128> {
        support.monomials.iter().try_fold(0u128, |acc, m| {
            self.index
                .get(m)
                .map(|&i| acc | 1u128 << i)
                .ok_or_else(|| Error::MonomialOutOfUniverse(m.clone()))
        })
    }

    pub fn support(&self, mask: u128) -> Support {
        let monomials: Vec<Monomial> = (0..self.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.monomials[i].clone())
            .collect();
        Support::new(self.n, monomials).expect("nonempty mask")
    }

    #[inline]
    pub fn permute_mask(&self, k: usize, mask: u128) -> u128 {
        let table = &self.tables[k];
        let mut out = 0u128;
        let mut rest = mask;
        let mut byte = 0;
        while rest != 0 {
            let v = (rest & 0xff) as usize;
            if v != 0 {
                out |= table[byte][v];
            }
            rest >>= 8;
            byte += 1;
        }
        out
    }

    /// Orbit representative test: the sorted index list is lexicographically
    /// minimal, i.e. the bit-reversed mask is maximal.
    #[inline]
    pub fn is_canonical(&self, mask: u128) -> bool {
        let key = mask.reverse_bits();
        (0..self.tables.len()).all(|k| self.permute_mask(k, mask).reverse_bits() <= key)
    }

    pub fn canonical(&self, mask: u128) -> u128 {
        (0..self.tables.len())
            .map(|k| self.permute_mask(k, mask))
            .fold(mask, |best, m| {
                if m.reverse_bits() > best.reverse_bits() {
                    m
                } else {
                    best
                }
            })
    }

    /// Size of the orbit of `mask` under variable permutations.
    pub fn orbit_size(&self, mask: u128) -> u64 {
        let fixed = 1
            + (0..self.tables.len())
                .filter(|&k| self.permute_mask(k, mask) == mask)
                .count() as u64;
        (self.tables.len() as u64 + 1) / fixed
    }

    pub fn canonical_support(&self, support: &Support) -> Result<Support> {
        Ok(self.support(self.canonical(self.mask_of(support)?)))
    }

    /// Index images used by the byte tables, for cross-checks.
    pub fn permutation_images(&self) -> &[Vec<usize>] {
        &self.perms
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_listing() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[0], vec![0, 1, 2]);
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn tables_agree_with_direct_permutation() {
        let u = Universe::new(3, 4).unwrap();
        assert_eq!(u.len(), 35);
        assert_eq!(u.top_count(), 15);
        let mask: u128 = 0b101_1001_0011_0100_1000_0110_1011_0101_1001;
        for (k, image) in u.permutation_images().iter().enumerate() {
            let direct = (0..u.len())
                .filter(|&i| mask >> i & 1 == 1)
                .fold(0u128, |acc, i| acc | 1u128 << image[i]);
            assert_eq!(u.permute_mask(k, mask), direct);
        }
    }

    #[test]
    fn canonical_forms() {
        let u = Universe::new(2, 3).unwrap();
        let s = Support::new(
            2,
            vec![
                Monomial::new(vec![0, 3]).unwrap(),
                Monomial::new(vec![1, 1]).unwrap(),
                Monomial::new(vec![2, 0]).unwrap(),
            ],
        )
        .unwrap();
        let c = u.canonical_support(&s).unwrap();
        // x^3 precedes y^3 canonically, so the representative uses x^3
        assert_eq!(c.monomials[0], Monomial::new(vec![3, 0]).unwrap());
        let cm = u.mask_of(&c).unwrap();
        assert!(u.is_canonical(cm));
        assert_eq!(u.canonical(cm), cm);
        assert_eq!(u.orbit_size(cm), 2);
        let sym = u
            .mask_of(
                &Support::new(
                    2,
                    vec![
                        Monomial::new(vec![3, 0]).unwrap(),
                        Monomial::new(vec![0, 3]).unwrap(),
                    ],
                )
                .unwrap(),
            )
            .unwrap();
        assert_eq!(u.orbit_size(sym), 1);
    }

    #[test]
    fn too_large() {
        assert!(matches!(Universe::new(5, 6), Err(Error::SearchTooLarge(_))));
    }
}
