mod common;

use common::*;
use lefkit::groups::{Element, Group};
use lefkit::partial::{extract_table, verify_partial_hom, PartialGroupTable};
use lefkit::search::{search_embedding, SearchBudget, SearchOutcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn finite_groups() -> Vec<Group> {
    vec![
        Group::cyclic(7).unwrap(),
        Group::cyclic(12).unwrap(),
        Group::symmetric(3).unwrap(),
        Group::symmetric(4).unwrap(),
        Group::direct_product(Group::cyclic(2).unwrap(), Group::symmetric(3).unwrap()),
        Group::fg_abelian(0, vec![2, 4]).unwrap(),
    ]
}

#[test]
fn extraction_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in finite_groups() {
        for _ in 0..50 {
            let subset = random_subset(&mut rng, &g, 8);
            let t = extract_table(&g, &subset).unwrap();
            for i in 0..subset.len() {
                for j in 0..subset.len() {
                    let p = g.multiply(&subset[i], &subset[j]).unwrap();
                    match t.product(i, j) {
                        Some(k) => assert_eq!(subset[k], p),
                        None => assert!(!subset.contains(&p)),
                    }
                }
            }
            let e = subset.iter().position(|x| *x == g.identity());
            assert_eq!(t.identity(), e);
        }
    }
}

#[test]
fn extraction_from_integers() {
    let z = Group::integers();
    let subset: Vec<Element> = (-3..=3).map(|a| Element::Vector(vec![a])).collect();
    let t = extract_table(&z, &subset).unwrap();
    for &(i, j, k) in t.triples() {
        assert_eq!(z.multiply(&subset[i], &subset[j]).unwrap(), subset[k]);
    }
    // pairs summing into [-3, 3]
    assert_eq!(t.triples().len(), 37);
}

#[test]
fn homomorphisms_restrict_to_partial_homs() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..400 {
        let hom = random_hom(&mut rng);
        let subset = random_subset(&mut rng, &hom.domain, 6);
        let t = extract_table(&hom.domain, &subset).unwrap();
        let images: Vec<Element> = subset.iter().map(|e| (hom.map)(e)).collect();
        let report = verify_partial_hom(&t, &hom.codomain, &images).unwrap();
        assert!(report.is_partial_hom, "{} -> {}", hom.domain, hom.codomain);
    }
}

#[test]
fn report_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let t = random_table(&mut rng, 5, 0.5);
        let target = Group::cyclic(rng.gen_range(1..=6)).unwrap();
        let images: Vec<Element> = (0..t.size())
            .map(|_| random_element(&mut rng, &target))
            .collect();
        let r = verify_partial_hom(&t, &target, &images).unwrap();
        let satisfied: Vec<_> = t
            .triples()
            .iter()
            .filter(|&&(i, j, k)| target.multiply(&images[i], &images[j]).unwrap() == images[k])
            .copied()
            .collect();
        assert_eq!(satisfied.len() + r.violations.len(), t.triples().len());
        assert!(r.violations.iter().all(|v| !satisfied.contains(v)));
        assert_eq!(r.is_partial_hom, r.violations.is_empty());
        assert_eq!(r.is_injective, r.collisions.is_empty());
        for &(a, b) in &r.collisions {
            assert!(a < b && images[a] == images[b]);
        }
    }
}

#[test]
fn forced_identity_and_inverse_coherence() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let budget = SearchBudget::default();
    let mut checked = 0;
    for _ in 0..200 {
        let source = finite_groups()[rng.gen_range(0..finite_groups().len())].clone();
        let mut subset = random_subset(&mut rng, &source, 4);
        if !subset.contains(&source.identity()) {
            subset.push(source.identity());
        }
        let t = extract_table(&source, &subset).unwrap();
        let target = Group::symmetric(4).unwrap();
        let SearchOutcome::Found(w) = search_embedding(&t, &target, &budget).unwrap() else {
            continue;
        };
        let e = t.identity().unwrap();
        assert_eq!(w.images[e], target.identity());
        for (a, x) in subset.iter().enumerate() {
            let inv = source.inverse(x).unwrap();
            if let Some(b) = subset.iter().position(|y| *y == inv) {
                assert_eq!(w.images[b], target.inverse(&w.images[a]).unwrap());
            }
        }
        checked += 1;
    }
    assert!(checked > 50, "only {checked} witnesses");
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..100 {
        let t = random_table(&mut rng, 6, 0.4);
        let text = serde_json::to_string(&t).unwrap();
        let back: PartialGroupTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.digest(), t.digest());
    }
}
