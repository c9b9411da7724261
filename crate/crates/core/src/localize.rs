//! Rings of fractions `R_S` and the statements linking S-properties of `R`
//! with classical properties of `R_S`.

use crate::check::{ensure, Outcome};
use crate::elements::Analysis;
use crate::mult_set::MultiplicativeSet;
use crate::ring::{Elem, FiniteRing, RingHom};

/// Disjoint-set forest over fraction pairs.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root so every root is the least member of its class.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[derive(Debug, Clone)]
pub struct LocalizedRing {
    ring: FiniteRing,
    canonical: RingHom,
    /// Indexed by `a * |S| + position of s in S`.
    classes: Vec<Elem>,
    s_members: Vec<Elem>,
    degenerate: bool,
}

/// `(a, s) ~ (b, t)` iff `u(at − bs) = 0` for some `u ∈ S`.
pub fn fractions_equivalent(
    ring: &FiniteRing,
    set: &MultiplicativeSet,
    (a, s): (Elem, Elem),
    (b, t): (Elem, Elem),
) -> bool {
    let d = ring.sub(ring.mul(a, t), ring.mul(b, s));
    set.iter().any(|u| ring.mul(u, d) == ring.zero())
}

pub fn localize(ring: &FiniteRing, set: &MultiplicativeSet) -> LocalizedRing {
    let s_members: Vec<Elem> = set.iter().collect();
    let k = s_members.len();
    let pair = |p: usize| (p / k, s_members[p % k]);
    let total = ring.size() * k;

    let mut uf = UnionFind::new(total);
    let mut roots: Vec<usize> = Vec::new();
    for p in 0..total {
        match roots
            .iter()
            .find(|&&q| fractions_equivalent(ring, set, pair(q), pair(p)))
        {
            Some(&q) => uf.union(q, p),
            None => roots.push(p),
        }
    }
    // roots are discovered in increasing order, so class ids follow least pairs
    let mut class_of_root = vec![usize::MAX; total];
    for (i, &q) in roots.iter().enumerate() {
        class_of_root[q] = i;
    }
    let classes: Vec<Elem> = (0..total).map(|p| class_of_root[uf.find(p)]).collect();
    let index = |a: Elem, s: Elem| {
        a * k
            + s_members
                .iter()
                .position(|&x| x == s)
                .expect("denominator in S")
    };
    let class = |a: Elem, s: Elem| classes[index(a, s)];

    let n = roots.len();
    let one = ring.one();
    let reps: Vec<(Elem, Elem)> = roots.iter().map(|&q| pair(q)).collect();
    // a class containing some a/1 is named after the least such a
    let mut integral: Vec<Option<Elem>> = vec![None; n];
    for a in ring.elements().rev() {
        integral[class(a, one)] = Some(a);
    }
    let names: Vec<String> = reps
        .iter()
        .zip(&integral)
        .map(|(&(a, s), whole)| match whole {
            Some(b) => ring.name(*b).to_string(),
            None => format!("{}/{}", ring.name(a), ring.name(s)),
        })
        .collect();
    let add = |x: Elem, y: Elem| {
        let ((a, s), (b, t)) = (reps[x], reps[y]);
        class(ring.add(ring.mul(a, t), ring.mul(b, s)), ring.mul(s, t))
    };
    let mul = |x: Elem, y: Elem| {
        let ((a, s), (b, t)) = (reps[x], reps[y]);
        class(ring.mul(a, b), ring.mul(s, t))
    };
    let label = format!("loc({},{})", ring.label(), set.describe(ring));
    let local = FiniteRing::from_fns(
        n,
        add,
        mul,
        class(ring.zero(), one),
        class(one, one),
        names,
        label,
    )
    .expect("a localization is no larger than its ring");
    let canonical = RingHom::new_unchecked(
        ring,
        &local,
        ring.elements().map(|a| class(a, one)).collect(),
    );
    LocalizedRing {
        degenerate: n == 1,
        ring: local,
        canonical,
        classes,
        s_members,
    }
}

impl LocalizedRing {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn canonical(&self) -> &RingHom {
        &self.canonical
    }

    /// Class of `a/s`; `None` when `s` is not a denominator.
    pub fn class_of(&self, a: Elem, s: Elem) -> Option<Elem> {
        let i = self.s_members.iter().position(|&x| x == s)?;
        self.classes.get(a * self.s_members.len() + i).copied()
    }

    /// The localization collapsed to the zero ring (zero was a denominator).
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }
}

/// Every element S-π-regular ⇔ R_S π-regular, and elementwise: `a` is
/// S-π-regular ⇔ `a/1` is π-regular.
pub fn pi_regular_bridge_check(an: &Analysis, loc: &LocalizedRing) -> Outcome {
    bridge(
        an,
        loc,
        an.sets.s_pireg,
        |r, x| r.pi_regular_exponent(x).is_some(),
        "π-regular",
    )
}

/// Every element S-vNr ⇔ R_S von Neumann regular, and elementwise.
pub fn vnr_bridge_check(an: &Analysis, loc: &LocalizedRing) -> Outcome {
    bridge(
        an,
        loc,
        an.sets.s_vnr,
        |r, x| r.is_vnr(x),
        "von Neumann regular",
    )
}

fn bridge(
    an: &Analysis,
    loc: &LocalizedRing,
    s_set: crate::bits::ElemSet,
    classical: impl Fn(&FiniteRing, Elem) -> bool,
    what: &str,
) -> Outcome {
    let local = loc.ring();
    let every_element = s_set == an.ring.carrier();
    let local_class = local.elements().all(|x| classical(local, x));
    let run = || -> Result<(), String> {
        ensure(every_element == local_class, || {
            format!("every element S-{what}: {every_element}, R_S {what}: {local_class}")
        })?;
        for a in an.ring.elements() {
            let image = classical(local, loc.canonical().apply(a));
            ensure(s_set.contains(a) == image, || {
                format!("{}: S-{what} differs from {what} image", an.ring.name(a))
            })?;
        }
        Ok(())
    };
    run().into()
}

/// Finite rings satisfy every descending chain condition, so R_S is always
/// π-regular and every element S-π-regular.
pub fn artinian_conclusion_check(an: &Analysis, loc: &LocalizedRing) -> Outcome {
    let local = loc.ring();
    if let Some(x) = local
        .elements()
        .find(|&x| local.pi_regular_exponent(x).is_none())
    {
        return Outcome::Violated(format!("{} is not π-regular in R_S", local.name(x)));
    }
    match (an.ring.carrier() - an.sets.s_pireg).first() {
        Some(a) => Outcome::Violated(format!("{} is not S-π-regular", an.ring.name(a))),
        None => Outcome::Holds,
    }
}

/// The canonical map is a ring map, sends S to units, and has kernel the
/// S-zero elements.
pub fn canonical_map_check(an: &Analysis, loc: &LocalizedRing) -> Outcome {
    let local = loc.ring();
    let f = loc.canonical();
    let run = || -> Result<(), String> {
        ensure(f.is_valid(an.ring, local), || {
            "canonical map is not a ring homomorphism".into()
        })?;
        for s in an.set.iter() {
            ensure(local.is_unit(f.apply(s)), || {
                format!("{}/1 is not a unit", an.ring.name(s))
            })?;
        }
        let kernel = f.kernel(local);
        ensure(kernel == an.sets.s_zero, || {
            format!(
                "kernel {} differs from S-zero elements {}",
                an.ring.format_set(&kernel),
                an.ring.format_set(&an.sets.s_zero)
            )
        })?;
        ensure(local.size() <= an.ring.size() * an.set.len(), || {
            "too many classes".into()
        })?;
        Ok(())
    };
    run().into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mult_set::{all_mult_subsets, closure, one_set, units_set};
    use crate::ring::{
        direct_product, ideal_span, is_isomorphic, quotient, truncated_poly, zn, ProductRing,
    };

    fn section3_ring() -> FiniteRing {
        let z2 = zn(2).unwrap();
        let t = direct_product(&[z2.clone(), z2]).unwrap();
        let p = truncated_poly(&t, 2).unwrap();
        let g = p.find("(1,0)*x").unwrap();
        quotient(&p, &ideal_span(&p, [g])).unwrap().0
    }

    /// Oracle: classes by direct pairwise comparison, no union-find.
    fn brute_force_class_count(ring: &FiniteRing, set: &MultiplicativeSet) -> usize {
        let pairs: Vec<(Elem, Elem)> = ring
            .elements()
            .flat_map(|a| set.iter().map(move |s| (a, s)))
            .collect();
        let mut count = 0;
        for (i, &p) in pairs.iter().enumerate() {
            if !pairs[..i]
                .iter()
                .any(|&q| fractions_equivalent(ring, set, q, p))
            {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn z6_at_three_is_z2() {
        let z6 = zn(6).unwrap();
        let s = closure(&z6, [3], true).unwrap();
        let loc = localize(&z6, &s);
        assert!(loc.ring().audit().is_ok());
        assert!(is_isomorphic(loc.ring(), &zn(2).unwrap()));
        assert_eq!(loc.class_of(2, 3), loc.class_of(0, 1));
    }

    #[test]
    fn units_and_one_give_the_ring_back() {
        for r in [zn(4).unwrap(), zn(12).unwrap(), section3_ring()] {
            for s in [one_set(&r), units_set(&r)] {
                let loc = localize(&r, &s);
                assert!(is_isomorphic(loc.ring(), &r));
            }
        }
    }

    #[test]
    fn classes_match_pairwise_oracle() {
        for r in [zn(8).unwrap(), zn(12).unwrap(), section3_ring()] {
            for s in all_mult_subsets(&r, true).unwrap() {
                let loc = localize(&r, &s);
                assert_eq!(loc.ring().size(), brute_force_class_count(&r, &s));
                assert!(loc.ring().audit().is_ok());
                for a in r.elements() {
                    for t in s.iter() {
                        for b in r.elements() {
                            for u in s.iter() {
                                assert_eq!(
                                    loc.class_of(a, t) == loc.class_of(b, u),
                                    fractions_equivalent(&r, &s, (a, t), (b, u))
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn section3_localization_is_boolean() {
        let r = section3_ring();
        let s = closure(&r, [r.find("(1,0)").unwrap()], true).unwrap();
        let loc = localize(&r, &s);
        let local = loc.ring();
        assert_eq!(local.size(), 2);
        assert!(local.elements().all(|x| local.is_idempotent(x)));
        let an = Analysis::new(&r, &s);
        assert!(vnr_bridge_check(&an, &loc).holds());
    }

    #[test]
    fn bridges_and_kernel_on_small_rings() {
        let z2 = zn(2).unwrap();
        for r in [
            zn(8).unwrap(),
            zn(12).unwrap(),
            truncated_poly(&z2, 3).unwrap(),
            section3_ring(),
        ] {
            for s in all_mult_subsets(&r, true).unwrap() {
                let an = Analysis::new(&r, &s);
                let loc = localize(&r, &s);
                assert!(pi_regular_bridge_check(&an, &loc).holds());
                assert!(vnr_bridge_check(&an, &loc).holds());
                assert!(artinian_conclusion_check(&an, &loc).holds());
                assert_eq!(canonical_map_check(&an, &loc), Outcome::Holds);
            }
        }
    }

    #[test]
    fn zero_denominator_collapses() {
        let z6 = zn(6).unwrap();
        let s = closure(&z6, [2, 3], false).unwrap();
        let loc = localize(&z6, &s);
        assert!(loc.is_degenerate());
        assert_eq!(loc.ring().size(), 1);
    }

    #[test]
    fn localizing_a_product_factorwise() {
        let (a, b) = (zn(6).unwrap(), zn(4).unwrap());
        let p = ProductRing::new(vec![a.clone(), b.clone()]).unwrap();
        let sa = closure(&a, [3], true).unwrap();
        let sb = closure(&b, [3], true).unwrap();
        let s =
            MultiplicativeSet::from_members(p.ring(), p.product_set(&[sa.members(), sb.members()]))
                .unwrap();
        let whole = localize(p.ring(), &s);
        let parts = direct_product(&[
            localize(&a, &sa).ring().clone(),
            localize(&b, &sb).ring().clone(),
        ])
        .unwrap();
        assert!(is_isomorphic(whole.ring(), &parts));
    }
}
