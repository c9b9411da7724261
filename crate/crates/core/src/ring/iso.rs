//! Ring isomorphism by backtracking over images of a ring-generating set.

use super::{Elem, FiniteRing, RingHom};
use crate::bits::ElemSet;

/// Per-element isomorphism invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Signature {
    additive_order: usize,
    idempotent: bool,
    unit: bool,
    nil_index: usize,
    annihilator: usize,
    principal: usize,
    preperiod: usize,
    period: usize,
}

fn signatures(r: &FiniteRing) -> Vec<Signature> {
    r.elements()
        .map(|a| {
            let mut additive_order = 1;
            let mut x = a;
            while x != r.zero() {
                x = r.add(x, a);
                additive_order += 1;
            }
            // power sequence a, a^2, ... : first repeat gives preperiod and period
            let mut seen = vec![usize::MAX; r.size()];
            let mut p = a;
            let mut k = 1;
            while seen[p] == usize::MAX {
                seen[p] = k;
                p = r.mul(p, a);
                k += 1;
            }
            Signature {
                additive_order,
                idempotent: r.is_idempotent(a),
                unit: r.is_unit(a),
                nil_index: r.nilpotency_index(a).unwrap_or(0),
                annihilator: r.annihilator(a).len(),
                principal: r.multiples(a).len(),
                preperiod: seen[p],
                period: k - seen[p],
            }
        })
        .collect()
}

/// Subring generated by `set`.
fn subring_closure(r: &FiniteRing, set: &ElemSet) -> ElemSet {
    let mut known: Vec<Elem> = vec![r.zero()];
    let mut members = ElemSet::singleton(r.zero());
    for a in std::iter::once(r.one()).chain(set.iter()) {
        if members.insert(a) {
            known.push(a);
        }
    }
    let mut i = 0;
    while i < known.len() {
        let x = known[i];
        for j in 0..=i {
            let y = known[j];
            for z in [r.add(x, y), r.mul(x, y)] {
                if members.insert(z) {
                    known.push(z);
                }
            }
        }
        i += 1;
    }
    members
}

fn ring_generators(r: &FiniteRing) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut span = subring_closure(r, &ElemSet::EMPTY);
    while span.len() < r.size() {
        let g = (r.carrier() - span)
            .first()
            .expect("span is a proper subset");
        gens.push(g);
        span = subring_closure(r, &gens.iter().copied().collect());
    }
    gens
}

#[derive(Clone)]
struct Partial {
    map: Vec<Option<Elem>>,
    used: ElemSet,
    known: Vec<Elem>,
    done: usize,
}

impl Partial {
    fn assign(&mut self, a: Elem, b: Elem) -> bool {
        match self.map[a] {
            Some(prev) => prev == b,
            None => {
                if !self.used.insert(b) {
                    return false;
                }
                self.map[a] = Some(b);
                self.known.push(a);
                true
            }
        }
    }

    /// Closes the partial map under + and *, failing on any inconsistency.
    fn close(&mut self, ra: &FiniteRing, rb: &FiniteRing) -> bool {
        while self.done < self.known.len() {
            let x = self.known[self.done];
            let fx = self.map[x].unwrap();
            for j in 0..=self.done {
                let y = self.known[j];
                let fy = self.map[y].unwrap();
                if !self.assign(ra.add(x, y), rb.add(fx, fy))
                    || !self.assign(ra.mul(x, y), rb.mul(fx, fy))
                {
                    return false;
                }
            }
            self.done += 1;
        }
        true
    }
}

/// Returns an isomorphism `a -> b` if one exists.
pub fn find_isomorphism(a: &FiniteRing, b: &FiniteRing) -> Option<RingHom> {
    if a.size() != b.size() {
        return None;
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let mut sorted_a = sa.clone();
    let mut sorted_b = sb.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }
    let mut start = Partial {
        map: vec![None; a.size()],
        used: ElemSet::EMPTY,
        known: Vec::new(),
        done: 0,
    };
    if !start.assign(a.zero(), b.zero()) || !start.assign(a.one(), b.one()) || !start.close(a, b) {
        return None;
    }
    let gens = ring_generators(a);
    let map = search(a, b, &sa, &sb, &gens, start)?;
    Some(RingHom::new_unchecked(a, b, map))
}

fn search(
    a: &FiniteRing,
    b: &FiniteRing,
    sa: &[Signature],
    sb: &[Signature],
    gens: &[Elem],
    state: Partial,
) -> Option<Vec<Elem>> {
    let Some((&g, rest)) = gens.split_first() else {
        return (state.known.len() == a.size())
            .then(|| state.map.iter().map(|x| x.unwrap()).collect());
    };
    if state.map[g].is_some() {
        // already forced by earlier generators
        return search(a, b, sa, sb, rest, state);
    }
    for c in b.elements() {
        if sb[c] != sa[g] || state.used.contains(c) {
            continue;
        }
        let mut next = state.clone();
        if next.assign(g, c) && next.close(a, b) {
            if let Some(map) = search(a, b, sa, sb, rest, next) {
                return Some(map);
            }
        }
    }
    None
}

pub fn is_isomorphic(a: &FiniteRing, b: &FiniteRing) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{direct_product, ideal_span, quotient, truncated_poly, zn};

    #[test]
    fn crt_and_non_examples() {
        let z6 = zn(6).unwrap();
        let p = direct_product(&[zn(2).unwrap(), zn(3).unwrap()]).unwrap();
        let f = find_isomorphism(&z6, &p).expect("CRT isomorphism");
        assert!(f.is_valid(&z6, &p));
        let z4 = zn(4).unwrap();
        let v = direct_product(&[zn(2).unwrap(), zn(2).unwrap()]).unwrap();
        assert!(!is_isomorphic(&z4, &v));
        assert!(is_isomorphic(&z4, &z4));
        // Z4 and Z2[x]/(x^2) agree on every count except the additive orders
        let d = truncated_poly(&zn(2).unwrap(), 2).unwrap();
        assert!(!is_isomorphic(&z4, &d));
    }

    #[test]
    fn iso_up_to_relabelling() {
        let a = direct_product(&[zn(3).unwrap(), zn(4).unwrap()]).unwrap();
        let b = direct_product(&[zn(4).unwrap(), zn(3).unwrap()]).unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(is_isomorphic(&a, &zn(12).unwrap()));
        let z12 = zn(12).unwrap();
        let (q, _) = quotient(&z12, &ideal_span(&z12, [4])).unwrap();
        assert!(is_isomorphic(&q, &zn(4).unwrap()));
    }
}
