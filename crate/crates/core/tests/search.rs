use std::collections::BTreeSet;

use planepoly::search::{
    exists_with_terms, lp_feasible, min_terms, orbit_count, prune_rules, recheck, scan_level,
    support_from_exponents, CertificateKind, SearchCertificate, SearchOptions, Universe,
    DEFAULT_RULES,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn witness_orbits(cert: &SearchCertificate) -> BTreeSet<u128> {
    let u = Universe::new(cert.n, cert.d).unwrap();
    cert.witnesses()
        .map(|w| {
            let s = support_from_exponents(cert.n, &w.support).unwrap();
            u.canonical(u.mask_of(&s).unwrap())
        })
        .collect()
}

#[test]
fn pruned_search_matches_brute_force() {
    for d in 1..=3 {
        let pruned = min_terms(
            2,
            d,
            &SearchOptions {
                start_terms: Some(1),
                ..SearchOptions::default()
            },
        )
        .unwrap();
        let brute = min_terms(
            2,
            d,
            &SearchOptions {
                start_terms: Some(1),
                ..SearchOptions::brute_force()
            },
        )
        .unwrap();
        assert_eq!(pruned.kind, CertificateKind::Optimum);
        assert_eq!(pruned.min_terms, brute.min_terms, "d = {d}");
        assert_eq!(witness_orbits(&pruned), witness_orbits(&brute), "d = {d}");
        recheck(&pruned).unwrap();
        recheck(&brute).unwrap();
    }
}

#[test]
fn discarded_supports_are_infeasible() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, d) in [(2, 5), (3, 3), (3, 4)] {
        let u = Universe::new(n, d).unwrap();
        let reg = prune_rules();
        let rules: Vec<_> = DEFAULT_RULES
            .iter()
            .map(|r| reg.build(r, &u).unwrap())
            .collect();
        let mut checked = 0;
        while checked < 40 {
            let k = rng.gen_range(n..=u.len().min(10));
            let mut mask = 1u128 << rng.gen_range(0..u.top_count());
            while (mask.count_ones() as usize) < k {
                mask |= 1u128 << rng.gen_range(0..u.len());
            }
            if rules.iter().all(|r| r.admits(mask)) {
                continue;
            }
            assert!(
                !lp_feasible(&u.support(mask)).feasible,
                "({n},{d}) {:?}",
                u.support(mask)
            );
            checked += 1;
        }
    }
}

#[test]
fn certificates_are_deterministic_and_round_trip() {
    let opts = SearchOptions {
        start_terms: Some(4),
        ..SearchOptions::default()
    };
    let mut a = min_terms(3, 3, &opts).unwrap();
    let mut b = min_terms(3, 3, &opts).unwrap();
    a.wall_time_ms = 0;
    b.wall_time_ms = 0;
    assert_eq!(a, b);
    assert_eq!(a.min_terms, Some(7));
    let back = SearchCertificate::from_json(&a.to_json()).unwrap();
    assert_eq!(back, a);
    recheck(&back).unwrap();
}

#[test]
fn recheck_rejects_tampering() {
    let cert = exists_with_terms(3, 3, 6, &SearchOptions::default()).unwrap();
    assert_eq!(cert.kind, CertificateKind::Nonexistence);
    recheck(&cert).unwrap();

    let mut dropped = cert.clone();
    dropped.levels[0].refutations.pop();
    dropped.levels[0].lp_checked -= 1;
    assert!(recheck(&dropped).is_err());

    let mut miscounted = cert.clone();
    miscounted.levels[0].orbits += 1;
    assert!(recheck(&miscounted).is_err());

    let mut bad_y = cert.clone();
    let y = &mut bad_y.levels[0].refutations[0].y[0].y;
    *y = match y.strip_prefix('-') {
        Some(abs) => abs.to_string(),
        None => format!("-{y}"),
    };
    assert!(recheck(&bad_y).is_err());

    let mut flipped = cert;
    flipped.kind = CertificateKind::Existence;
    assert!(recheck(&flipped).is_err());
}

#[test]
fn unpruned_enumeration_counts_orbits() {
    let u = Universe::new(3, 3).unwrap();
    for k in [3, 5, 7] {
        assert_eq!(scan_level(&u, k, &[]).orbits, orbit_count(3, 3, k));
    }
}
