//! Multiplicative subsets of a finite ring.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing, RingHom};

/// Rings above this size are never enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 16;

/// A subset containing one and closed under multiplication. Strict sets
/// exclude zero; non-strict ones only arise as projections of a strict set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicativeSet {
    members: ElemSet,
    strict: bool,
    ring_id: u64,
}

impl MultiplicativeSet {
    /// Wraps `members` after checking that it contains one and is closed.
    pub fn from_members(ring: &FiniteRing, members: ElemSet) -> Result<Self> {
        if !members.contains(ring.one()) {
            return Err(Error::Axiom("a multiplicative set must contain one".into()));
        }
        if let Some((a, b)) = ring.closed_under_mul(&members) {
            return Err(Error::Axiom(format!(
                "{} * {} leaves the set",
                ring.name(a),
                ring.name(b)
            )));
        }
        Ok(Self::new_unchecked(ring, members))
    }

    pub(crate) fn new_unchecked(ring: &FiniteRing, members: ElemSet) -> Self {
        MultiplicativeSet {
            members,
            strict: !members.contains(ring.zero()),
            ring_id: ring.id(),
        }
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(a)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Zero is not a member.
    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn belongs_to(&self, ring: &FiniteRing) -> bool {
        self.ring_id == ring.id()
    }

    pub fn describe(&self, ring: &FiniteRing) -> String {
        ring.format_set(&self.members)
    }
}

/// Smallest multiplicative set containing `gens`.
pub fn closure<I: IntoIterator<Item = Elem>>(
    ring: &FiniteRing,
    gens: I,
    strict: bool,
) -> Result<MultiplicativeSet> {
    let mut gens: Vec<Elem> = gens.into_iter().collect();
    gens.sort_unstable();
    gens.dedup();
    // breadth-first over products of generators, remembering how each was reached
    let mut parent: Vec<Option<(Elem, Elem)>> = vec![None; ring.size()];
    let mut members = ElemSet::singleton(ring.one());
    let mut queue = vec![ring.one()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &g in &gens {
            let y = ring.mul(x, g);
            if members.insert(y) {
                parent[y] = Some((x, g));
                queue.push(y);
            }
        }
    }
    if strict && members.contains(ring.zero()) {
        let mut chain = Vec::new();
        let mut cur = ring.zero();
        while let Some((prev, g)) = parent[cur] {
            chain.push(ring.name(g).to_string());
            cur = prev;
        }
        if chain.is_empty() {
            // zero ring: 0 = 1
            chain.push(ring.name(ring.one()).to_string());
        }
        chain.reverse();
        return Err(Error::DegenerateSet {
            chain: chain.join(" * "),
        });
    }
    Ok(MultiplicativeSet::new_unchecked(ring, members))
}

/// `{x * g^k : x in closed, k >= 0}`, the closure of `closed ∪ {g}` when
/// `closed` is already multiplicatively closed.
fn adjoin(ring: &FiniteRing, closed: ElemSet, g: Elem) -> ElemSet {
    let mut out = closed;
    let mut layer = closed;
    loop {
        let next = ring.scale_set(g, &layer);
        if next.is_subset(&out) {
            return out;
        }
        out = out | next;
        layer = next;
    }
}

/// Every multiplicative set of `ring` (only zero-free ones when `strict`),
/// in ascending bitmask order. Rings above [`EXHAUSTIVE_LIMIT`] are refused.
pub fn all_mult_subsets(ring: &FiniteRing, strict: bool) -> Result<Vec<MultiplicativeSet>> {
    all_mult_subsets_capped(ring, strict, EXHAUSTIVE_LIMIT)
}

pub fn all_mult_subsets_capped(
    ring: &FiniteRing,
    strict: bool,
    cap: usize,
) -> Result<Vec<MultiplicativeSet>> {
    if ring.size() > cap {
        return Err(Error::EnumerationCap(format!(
            "{} has {} elements; exhaustive enumeration stops at {}",
            ring.label(),
            ring.size(),
            cap
        )));
    }
    let base = ElemSet::singleton(ring.one());
    if strict && base.contains(ring.zero()) {
        return Ok(Vec::new());
    }
    let mut seen: BTreeSet<ElemSet> = BTreeSet::new();
    seen.insert(base);
    let mut queue = vec![base];
    while let Some(x) = queue.pop() {
        for g in ring.carrier() - x {
            let y = adjoin(ring, x, g);
            if strict && y.contains(ring.zero()) {
                continue;
            }
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|m| MultiplicativeSet::new_unchecked(ring, m))
        .collect())
}

/// Up to `count` distinct strict multiplicative sets drawn by closing random
/// generator sets of size one to three. Always includes `{1}` and `u(R)`.
pub fn sample_mult_subsets(ring: &FiniteRing, count: usize, seed: u64) -> Vec<MultiplicativeSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: BTreeSet<ElemSet> = BTreeSet::new();
    if ring.zero() == ring.one() {
        return Vec::new();
    }
    seen.insert(one_set(ring).members());
    seen.insert(units_set(ring).members());
    let pool: Vec<Elem> = ring.elements().filter(|&a| a != ring.zero()).collect();
    let attempts = count.saturating_mul(20);
    for _ in 0..attempts {
        if seen.len() >= count {
            break;
        }
        let k = rng.gen_range(1..=3usize);
        let gens: Vec<Elem> = pool.choose_multiple(&mut rng, k).copied().collect();
        if let Ok(s) = closure(ring, gens, true) {
            seen.insert(s.members());
        }
    }
    seen.into_iter()
        .map(|m| MultiplicativeSet::new_unchecked(ring, m))
        .collect()
}

/// `f(S)` in the target ring; strict exactly when zero is not hit.
pub fn map_set(f: &RingHom, target: &FiniteRing, set: &MultiplicativeSet) -> MultiplicativeSet {
    MultiplicativeSet::new_unchecked(target, f.image(&set.members()))
}

pub fn units_set(ring: &FiniteRing) -> MultiplicativeSet {
    MultiplicativeSet::new_unchecked(ring, ring.elements().filter(|&a| ring.is_unit(a)).collect())
}

pub fn one_set(ring: &FiniteRing) -> MultiplicativeSet {
    MultiplicativeSet::new_unchecked(ring, ElemSet::singleton(ring.one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{direct_product, ideal_span, quotient, truncated_poly, zn};

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    /// Oracle: every subset containing one and closed under multiplication.
    fn brute_force(ring: &FiniteRing, strict: bool) -> Vec<ElemSet> {
        let n = ring.size();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            let s: ElemSet = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if !s.contains(ring.one()) || (strict && s.contains(ring.zero())) {
                continue;
            }
            if s.iter()
                .all(|a| s.iter().all(|b| s.contains(ring.mul(a, b))))
            {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn closure_examples() {
        let z6 = zn(6).unwrap();
        assert_eq!(closure(&z6, [5], true).unwrap().members(), set(&[1, 5]));
        let z10 = zn(10).unwrap();
        assert_eq!(closure(&z10, [4], true).unwrap().members(), set(&[1, 4, 6]));
        let err = closure(&z6, [0], true).unwrap_err();
        assert!(matches!(err, Error::DegenerateSet { .. }));
        let err = closure(&z6, [2, 3], true).unwrap_err();
        assert_eq!(
            err,
            Error::DegenerateSet {
                chain: "2 * 3".into()
            }
        );
        assert!(closure(&z6, [2, 3], false).unwrap().contains(0));
    }

    #[test]
    fn enumeration_small_cases() {
        let z2 = zn(2).unwrap();
        let all = all_mult_subsets(&z2, true).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].members(), set(&[1]));
        let z4 = zn(4).unwrap();
        let sets: Vec<ElemSet> = all_mult_subsets(&z4, true)
            .unwrap()
            .iter()
            .map(|s| s.members())
            .collect();
        assert_eq!(sets, vec![set(&[1]), set(&[1, 3])]);
        assert!(all_mult_subsets(&zn(1).unwrap(), true).unwrap().is_empty());
        assert!(matches!(
            all_mult_subsets(&zn(17).unwrap(), true),
            Err(Error::EnumerationCap(_))
        ));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let z2 = zn(2).unwrap();
        let rings = vec![
            zn(6).unwrap(),
            zn(8).unwrap(),
            zn(12).unwrap(),
            direct_product(&[z2.clone(), z2.clone(), z2.clone()]).unwrap(),
            direct_product(&[zn(3).unwrap(), zn(3).unwrap()]).unwrap(),
            truncated_poly(&z2, 3).unwrap(),
        ];
        for r in &rings {
            for strict in [true, false] {
                let got: Vec<ElemSet> = all_mult_subsets(r, strict)
                    .unwrap()
                    .iter()
                    .map(|s| s.members())
                    .collect();
                assert_eq!(got, brute_force(r, strict), "{} strict={strict}", r.label());
            }
        }
    }

    #[test]
    fn sampled_sets_are_valid_and_reproducible() {
        let r = zn(24).unwrap();
        let a = sample_mult_subsets(&r, 40, 7);
        let b = sample_mult_subsets(&r, 40, 7);
        assert_eq!(a, b);
        for s in &a {
            assert!(s.is_strict());
            assert!(MultiplicativeSet::from_members(&r, s.members()).is_ok());
        }
    }

    #[test]
    fn images_under_homs() {
        let z6 = zn(6).unwrap();
        let (z3, f) = quotient(&z6, &ideal_span(&z6, [3])).unwrap();
        let s = closure(&z6, [5], true).unwrap();
        let img = map_set(&f, &z3, &s);
        assert_eq!(img.members(), set(&[1, 2]));
        assert!(img.is_strict());
        let id = RingHom::identity(&z6);
        assert_eq!(map_set(&id, &z6, &s).members(), s.members());

        let z3 = zn(3).unwrap();
        let p = crate::ring::ProductRing::new(vec![z3.clone(), z3.clone()]).unwrap();
        let u = units_set(p.ring());
        assert_eq!(map_set(&p.projection(0), &z3, &u).members(), set(&[1, 2]));
    }

    #[test]
    fn distinguished_sets() {
        let z6 = zn(6).unwrap();
        assert_eq!(units_set(&z6).members(), set(&[1, 5]));
        assert_eq!(one_set(&z6).members(), set(&[1]));
    }
}
