//! Agreement between independent routes to the same numbers.

use std::collections::BTreeSet;

use sigatlas_core::covering::{
    enumerate_coverings, is_admissible, monodromy_report, quotient_covering, MarkedGroup,
};
use sigatlas_core::fpgroup::{todd_coxeter, OrbifoldPresentation, DEFAULT_MAX_COSETS};
use sigatlas_core::numeric::{monodromy, ComplexPolynomial, TrackConfig};
use sigatlas_core::perm::{group_order_by_chain, subgroup_classes};
use sigatlas_core::ritt::{enumerate_branch_data, realized_signature};
use sigatlas_core::signature::enumerate_elliptic;
use sigatlas_core::tiling::{build_polygon, reflect_orbit, MAX_DEPTH};
use sigatlas_core::{OrderSet, SignatureKind};

fn os(s: &str) -> OrderSet {
    OrderSet::parse(s).unwrap()
}

#[test]
fn coset_counts_chain_orders_and_tile_counts_agree() {
    for r in enumerate_elliptic(7) {
        let table = todd_coxeter(&OrbifoldPresentation::from_orders(&r), &[], DEFAULT_MAX_COSETS);
        let gens = table.perm_rep().unwrap();
        let chain = group_order_by_chain(table.coset_count(), &gens).unwrap();
        let tiles = reflect_orbit(&build_polygon(&r).unwrap(), MAX_DEPTH).unwrap().elements.len();
        assert_eq!(chain, table.coset_count() as u128, "{r}");
        assert_eq!(tiles, 2 * table.coset_count(), "{r}");
    }
}

/// Admissible quotients of the regular action are exactly the enumerated
/// coverings, degree by degree.
#[test]
fn quotients_match_enumeration() {
    for r in ["2,2,3", "2,3,3", "2,2,4", "2,3,4"] {
        let r = os(r);
        let g = MarkedGroup::regular(&r).unwrap();
        let mut from_quotients: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
        for c in subgroup_classes(&g.group).unwrap() {
            let f = &c.representative;
            let t = quotient_covering(&g, f).unwrap();
            if t.degree() <= 8 && is_admissible(&g.group, f) && t.matches_orders(&r) {
                from_quotients.insert((t.degree(), t.class_key()));
            }
        }
        let mut enumerated: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
        let max = g.group.order().min(8) as usize;
        for m in 2..=max {
            for t in enumerate_coverings(&r, m).unwrap() {
                enumerated.insert((m, t.class_key()));
            }
        }
        // each enumerated class is some quotient; conversely every admissible
        // quotient is enumerated (possibly with other markings too)
        assert!(from_quotients.is_subset(&enumerated), "{r}");
        let degrees_q: BTreeSet<usize> = from_quotients.iter().map(|x| x.0).collect();
        let degrees_e: BTreeSet<usize> = enumerated.iter().map(|x| x.0).collect();
        assert_eq!(degrees_q, degrees_e, "{r}");
    }
}

#[test]
fn polynomial_monodromy_is_an_enumerated_covering() {
    let p = ComplexPolynomial::chebyshev(4).unwrap();
    let res = monodromy(&p, &TrackConfig::default()).unwrap();
    let mut sigma = res.permutations.clone();
    sigma.push(res.infinity.clone());
    let r = os("2,2,4");
    // tuple slots follow loop order; compare after sorting by realized order
    let mut slots: Vec<_> = sigma.iter().map(|s| s.order()).collect();
    slots.sort_unstable();
    assert_eq!(slots, vec![2, 2, 4]);
    let keys: BTreeSet<Vec<u32>> = enumerate_coverings(&r, 4).unwrap().iter().map(|t| t.class_key()).collect();
    // rotate into the product-one order the enumeration uses
    let t = (0..3)
        .map(|k| {
            let mut v = sigma.clone();
            v.rotate_left(k);
            v
        })
        .find(|v| v.iter().map(|s| s.order()).collect::<Vec<_>>() == vec![2, 2, 4])
        .expect("a cyclic rotation has orders (2,2,4)");
    let t = sigatlas_core::covering::HurwitzTuple::new(t).unwrap();
    assert!(keys.contains(&t.class_key()));
    assert_eq!(monodromy_report(&t, Some(&r)).unwrap().group_order, 8);
}

#[test]
fn ritt_realizations_are_covered_by_the_classification() {
    for p in [3, 5, 7, 11, 13, 17, 19, 23] {
        for d in enumerate_branch_data(p).unwrap() {
            let s = realized_signature(&d, p).unwrap();
            assert_ne!(s.classify().kind, SignatureKind::Hyperbolic);
            if s.classify().kind == SignatureKind::Elliptic {
                assert!(enumerate_elliptic(p).contains(&s), "{s}");
            }
        }
    }
}
