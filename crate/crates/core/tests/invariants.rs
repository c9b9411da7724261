use proptest::prelude::*;

use sring_core::elements::{element_sets, witness_for};
use sring_core::ideals::all_ideals;
use sring_core::localize::localize;
use sring_core::mult_set::{closure, map_set};
use sring_core::ring::{
    direct_product, ideal_span, quotient, trivial_extension, truncated_poly, zn,
};
use sring_core::{ElemSet, FiniteRing, Ideal, MultiplicativeSet, Property};

fn ring_pool() -> Vec<FiniteRing> {
    let z2 = zn(2).unwrap();
    let z4 = zn(4).unwrap();
    let mut pool: Vec<FiniteRing> = (2..=12).map(|n| zn(n).unwrap()).collect();
    pool.push(direct_product(&[z2.clone(), zn(3).unwrap()]).unwrap());
    pool.push(direct_product(&[zn(3).unwrap(), zn(3).unwrap()]).unwrap());
    pool.push(direct_product(&[z2.clone(), z4.clone()]).unwrap());
    pool.push(direct_product(&[z2.clone(), z2.clone(), z2.clone()]).unwrap());
    pool.push(truncated_poly(&z2, 3).unwrap());
    pool.push(truncated_poly(&zn(3).unwrap(), 2).unwrap());
    let t = truncated_poly(&direct_product(&[z2.clone(), z2.clone()]).unwrap(), 2).unwrap();
    let g = t.find("(1,0)*x").unwrap();
    pool.push(quotient(&t, &ideal_span(&t, [g])).unwrap().0);
    pool.push(trivial_extension(&z2, &Ideal::whole(&z2)).unwrap());
    pool.push(trivial_extension(&z4, &ideal_span(&z4, [2])).unwrap());
    pool
}

/// A ring from the pool and a strict multiplicative set generated by up to
/// three of its elements.
fn ring_and_set() -> impl Strategy<Value = (FiniteRing, MultiplicativeSet)> {
    let pool = ring_pool();
    (
        0..pool.len(),
        prop::collection::vec(any::<prop::sample::Index>(), 0..3),
    )
        .prop_filter_map("zero generated", move |(i, gens)| {
            let r = pool[i].clone();
            let gens: Vec<usize> = gens.iter().map(|g| g.index(r.size())).collect();
            let s = closure(&r, gens, true).ok()?;
            Some((r, s))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn constructed_rings_satisfy_the_axioms((r, _s) in ring_and_set()) {
        prop_assert!(r.audit().is_ok());
    }

    #[test]
    fn witnesses_exist_exactly_for_members((r, s) in ring_and_set()) {
        let sets = element_sets(&r, &s);
        for kind in Property::ALL {
            let members = sets.get(kind);
            for a in r.elements() {
                let w = witness_for(&r, &s, a, kind);
                prop_assert_eq!(w.is_some(), members.contains(a), "{} {}", kind, r.name(a));
                if let Some(w) = w {
                    prop_assert!(w.replays(&r));
                    prop_assert!(s.contains(w.s));
                }
            }
        }
    }

    #[test]
    fn global_sets_are_unions_over_s((r, s) in ring_and_set()) {
        let sets = element_sets(&r, &s);
        for kind in Property::ALL {
            let union = sets.per_s.iter().fold(ElemSet::default(), |acc, rel| acc | rel.get(kind));
            prop_assert_eq!(union, sets.get(kind));
        }
    }

    #[test]
    fn sets_grow_with_s((r, s) in ring_and_set(), extra in any::<prop::sample::Index>()) {
        let g = extra.index(r.size());
        let gens: Vec<usize> = s.iter().chain([g]).collect();
        if let Ok(t) = closure(&r, gens, true) {
            prop_assert!(s.members().is_subset(&t.members()));
            let (a, b) = (element_sets(&r, &s), element_sets(&r, &t));
            for kind in Property::ALL {
                prop_assert!(a.get(kind).is_subset(&b.get(kind)), "{}", kind);
            }
        }
    }

    #[test]
    fn closure_is_idempotent((r, s) in ring_and_set()) {
        let again = closure(&r, s.iter(), true).unwrap();
        prop_assert_eq!(again.members(), s.members());
        for a in s.iter() {
            for b in s.iter() {
                prop_assert!(s.contains(r.mul(a, b)));
            }
        }
    }

    #[test]
    fn localization_is_consistent((r, s) in ring_and_set()) {
        let loc = localize(&r, &s);
        let rs = loc.ring();
        prop_assert!(rs.audit().is_ok());
        prop_assert!(rs.size() <= r.size() * s.len());
        let f = loc.canonical();
        prop_assert!(f.is_valid(&r, rs));
        for a in s.iter() {
            prop_assert!(rs.is_unit(f.apply(a)));
        }
        let kernel = f.kernel(rs);
        prop_assert_eq!(kernel, element_sets(&r, &s).s_zero);
        for a in r.elements() {
            prop_assert_eq!(loc.class_of(a, r.one()), Some(f.apply(a)));
        }
    }

    #[test]
    fn quotient_maps_commute_with_closure((r, s) in ring_and_set(), pick in any::<prop::sample::Index>()) {
        let ideals = all_ideals(&r).unwrap();
        let i = &ideals[pick.index(ideals.len())];
        let (q, f) = quotient(&r, i).unwrap();
        prop_assert_eq!(q.size() * i.members().len(), r.size());
        prop_assert!(f.is_surjective(&q));
        prop_assert_eq!(f.kernel(&q), i.members());
        let image = map_set(&f, &q, &s);
        let closed = closure(&q, s.iter().map(|a| f.apply(a)), false).unwrap();
        prop_assert_eq!(image.members(), closed.members());
    }
}
