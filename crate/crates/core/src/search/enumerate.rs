//! Orbit-representative enumeration of fixed-size supports.

use rayon::prelude::*;

use super::rules::PruneRule;
use super::universe::Universe;

/// Tally of one level of the enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelScan {
    pub orbits: u64,
    /// Sum of orbit sizes; equals the number of supports of this size.
    pub subsets_covered: u64,
    /// Orbits rejected, indexed like the rule list (first rejecting rule).
    pub pruned: Vec<u64>,
    /// Admitted canonical masks in enumeration order.
    pub survivors: Vec<u128>,
}

impl LevelScan {
    fn merge(mut self, other: LevelScan) -> LevelScan {
        self.orbits += other.orbits;
        self.subsets_covered += other.subsets_covered;
        for (a, b) in self.pruned.iter_mut().zip(other.pruned) {
            *a += b;
        }
        self.survivors.extend(other.survivors);
        self
    }
}

fn walk(start: usize, remaining: usize, end: usize, mask: u128, f: &mut impl FnMut(u128)) {
    if remaining == 0 {
        f(mask);
        return;
    }
    for i in start..=end - remaining {
        walk(i + 1, remaining - 1, end, mask | 1u128 << i, f);
    }
}

/// Scans every size-`k` support of maximal degree exactly `d`, keeping one
/// representative per permutation orbit. Order is lexicographic on sorted
/// index lists and does not depend on the thread count.
pub fn scan_level(u: &Universe, k: usize, rules: &[Box<dyn PruneRule>]) -> LevelScan {
    let total = u.len();
    let top = u.top_count();
    let empty = LevelScan {
        pruned: vec![0; rules.len()],
        ..LevelScan::default()
    };
    if k == 0 || k > total || top == 0 {
        return empty;
    }
    // prefixes of length min(k, 2) whose first index is a top-degree monomial
    let mut prefixes: Vec<(u128, usize)> = Vec::new();
    for i0 in 0..top.min(total - k + 1) {
        if k == 1 {
            prefixes.push((1u128 << i0, i0 + 1));
        } else {
            for i1 in i0 + 1..=total - k + 1 {
                prefixes.push((1u128 << i0 | 1u128 << i1, i1 + 1));
            }
        }
    }
    let rest = k.saturating_sub(2);
    prefixes
        .par_iter()
        .map(|&(prefix, start)| {
            let mut scan = LevelScan {
                pruned: vec![0; rules.len()],
                ..LevelScan::default()
            };
            walk(start, rest, total, prefix, &mut |mask| {
                if !u.is_canonical(mask) {
                    return;
                }
                scan.orbits += 1;
                scan.subsets_covered += u.orbit_size(mask);
                match rules.iter().position(|r| !r.admits(mask)) {
                    Some(i) => scan.pruned[i] += 1,
                    None => scan.survivors.push(mask),
                }
            });
            scan
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(empty, LevelScan::merge)
}

/// `C(a, b)` with saturation at `u64::MAX`.
pub fn binomial(a: usize, b: usize) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Number of size-`k` supports of maximal degree exactly `d`.
pub fn supports_of_size(u: &Universe, k: usize) -> u64 {
    binomial(u.len(), k) - binomial(u.len() - u.top_count(), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_text;
    use crate::search::burnside::orbit_count;
    use crate::search::Support;

    #[test]
    fn unpruned_scan_matches_burnside() {
        for (n, d) in [(2, 1), (2, 3), (3, 2), (3, 3)] {
            let u = Universe::new(n, d).unwrap();
            for k in 1..=6 {
                let scan = scan_level(&u, k, &[]);
                assert_eq!(scan.orbits, orbit_count(n, d, k), "({n},{d},{k})");
                assert_eq!(scan.subsets_covered, supports_of_size(&u, k));
                assert_eq!(scan.survivors.len() as u64, scan.orbits);
            }
        }
    }

    #[test]
    fn small_cubic_stream_contains_p3() {
        let u = Universe::new(2, 3).unwrap();
        let rules: Vec<_> = super::super::rules::DEFAULT_RULES
            .iter()
            .map(|r| super::super::rules::prune_rules().build(r, &u).unwrap())
            .collect();
        let scan = scan_level(&u, 3, &rules);
        let p3 = Support::of(&parse_text("x^3 + x y + y^3", None).unwrap()).unwrap();
        let m = u.mask_of(&p3).unwrap();
        assert!(scan.survivors.contains(&u.canonical(m)));
        assert!(scan_level(&u, 1, &rules).survivors.is_empty());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(35, 8), 23_535_820);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(10, 0), 1);
    }
}
