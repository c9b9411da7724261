//! Finite commutative rings stored as dense operation tables.
//!
//! Elements are the indices `0..size`. Every predicate on elements becomes a
//! finite loop over the tables, which is the whole point of the representation.

mod construct;
mod hom;
mod iso;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::bits::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

pub use construct::{
    direct_product, ideal_span, quotient, trivial_extension, truncated_poly, zn, ProductRing,
};
pub use hom::RingHom;
pub use iso::{find_isomorphism, is_isomorphic};

/// Index of a ring element.
pub type Elem = usize;

#[derive(Clone)]
pub struct FiniteRing {
    size: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    zero: Elem,
    one: Elem,
    names: Vec<String>,
    label: String,
    // multiples[c] = cR
    multiples: Vec<ElemSet>,
    id: u64,
}

impl FiniteRing {
    /// Builds a ring from flat `size * size` tables and audits every axiom.
    pub fn from_tables(
        size: usize,
        add: &[Elem],
        mul: &[Elem],
        zero: Elem,
        one: Elem,
        names: Vec<String>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidSize(
                "a ring needs at least one element".into(),
            ));
        }
        if size > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                size,
                cap: MAX_ELEMENTS,
            });
        }
        if add.len() != size * size || mul.len() != size * size || names.len() != size {
            return Err(Error::InvalidSize(
                "table dimensions do not match the size".into(),
            ));
        }
        if zero >= size || one >= size || add.iter().chain(mul).any(|&x| x >= size) {
            return Err(Error::InvalidSize("table entry out of range".into()));
        }
        let ring = Self::from_fns(
            size,
            |a, b| add[a * size + b],
            |a, b| mul[a * size + b],
            zero,
            one,
            names,
            label.into(),
        )?;
        ring.audit()?;
        Ok(ring)
    }

    /// Builds a ring from operation closures. The caller vouches for the axioms;
    /// only the additive inverse is searched for.
    pub(crate) fn from_fns(
        size: usize,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
        zero: Elem,
        one: Elem,
        names: Vec<String>,
        label: String,
    ) -> Result<Self> {
        if size > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                size,
                cap: MAX_ELEMENTS,
            });
        }
        let mut add_t = Vec::with_capacity(size * size);
        let mut mul_t = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                add_t.push(add(a, b) as u8);
                mul_t.push(mul(a, b) as u8);
            }
        }
        let mut neg = vec![0u8; size];
        for a in 0..size {
            let inv = (0..size).find(|&b| add_t[a * size + b] as usize == zero);
            match inv {
                Some(b) => neg[a] = b as u8,
                None => {
                    return Err(Error::Axiom(format!(
                        "{} has no additive inverse",
                        names[a]
                    )))
                }
            }
        }
        let mut multiples = vec![ElemSet::EMPTY; size];
        for (c, set) in multiples.iter_mut().enumerate() {
            for b in 0..size {
                set.insert(mul_t[c * size + b] as usize);
            }
        }
        let mut h = DefaultHasher::new();
        (size, &add_t, &mul_t, zero, one).hash(&mut h);
        Ok(FiniteRing {
            size,
            add: add_t,
            mul: mul_t,
            neg,
            zero,
            one,
            names,
            label,
            multiples,
            id: h.finish(),
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b] as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size + b] as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a] as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `a^n`, with `a^0 = 1`.
    pub fn pow(&self, a: Elem, n: usize) -> Elem {
        let mut acc = self.one;
        let mut base = a;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of the integer `k` under `Z -> R`.
    pub fn nat(&self, k: usize) -> Elem {
        (0..k).fold(self.zero, |acc, _| self.add(acc, self.one))
    }

    /// The principal ideal `cR`.
    #[inline]
    pub fn multiples(&self, c: Elem) -> ElemSet {
        self.multiples[c]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn carrier(&self) -> ElemSet {
        ElemSet::full(self.size)
    }

    /// Largest exponent tried when searching for `n` in nilpotency and
    /// pi-regularity conditions. The power sequence of any element has
    /// preperiod and period at most `size`, so `2 * size` covers every
    /// distinct pair `(a^n, a^2n)`.
    pub fn exponent_bound(&self) -> usize {
        2 * self.size
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Canonical description in ring-spec syntax.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub(crate) fn with_label(mut self, label: String) -> Self {
        self.label = label;
        self
    }

    /// Structural fingerprint of the operation tables.
    pub fn id(&self) -> u64 {
        self.id
    }

    /// Looks an element up by display name (whitespace-insensitive), falling
    /// back to its numeric index.
    pub fn find(&self, name: &str) -> Option<Elem> {
        let wanted = normalize(name);
        if let Some(i) = self.names.iter().position(|n| normalize(n) == wanted) {
            return Some(i);
        }
        wanted.parse::<usize>().ok().filter(|&i| i < self.size)
    }

    pub fn set_names(&self, set: &ElemSet) -> Vec<String> {
        set.iter().map(|a| self.names[a].clone()).collect()
    }

    /// `{a, b, c}` using display names.
    pub fn format_set(&self, set: &ElemSet) -> String {
        format!("{{{}}}", self.set_names(set).join(", "))
    }

    /// Checks every ring axiom by full table scan.
    pub fn audit(&self) -> Result<()> {
        let n = self.size;
        let (z, o) = (self.zero, self.one);
        if z == o && n != 1 {
            return Err(Error::Axiom("zero equals one in a nonzero ring".into()));
        }
        let nm = |a: Elem| &self.names[a];
        for a in 0..n {
            if self.add(a, z) != a {
                return Err(Error::Axiom(format!("{} + 0 != {}", nm(a), nm(a))));
            }
            if self.mul(a, o) != a {
                return Err(Error::Axiom(format!("{} * 1 != {}", nm(a), nm(a))));
            }
            if self.add(a, self.neg(a)) != z {
                return Err(Error::Axiom(format!("{} has no additive inverse", nm(a))));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::Axiom(format!(
                        "addition of {}, {} not commutative",
                        nm(a),
                        nm(b)
                    )));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::Axiom(format!(
                        "multiplication of {}, {} not commutative",
                        nm(a),
                        nm(b)
                    )));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(Error::Axiom(format!(
                            "addition not associative on {}, {}, {}",
                            nm(a),
                            nm(b),
                            nm(c)
                        )));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Axiom(format!(
                            "multiplication not associative on {}, {}, {}",
                            nm(a),
                            nm(b),
                            nm(c)
                        )));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(Error::Axiom(format!(
                            "distributivity fails on {}, {}, {}",
                            nm(a),
                            nm(b),
                            nm(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_idempotent(&self, a: Elem) -> bool {
        self.mul(a, a) == a
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.multiples[a].contains(self.one)
    }

    /// `a ∈ a²R`.
    pub fn is_vnr(&self, a: Elem) -> bool {
        self.multiples[self.mul(a, a)].contains(a)
    }

    /// Least `n` with `a^n ∈ a^{2n}R`, if any within the exponent bound.
    pub fn pi_regular_exponent(&self, a: Elem) -> Option<usize> {
        let mut an = a;
        for n in 1..=self.exponent_bound() {
            if self.multiples[self.mul(an, an)].contains(an) {
                return Some(n);
            }
            an = self.mul(an, a);
        }
        None
    }

    /// Least `n` with `a^n = 0`.
    pub fn nilpotency_index(&self, a: Elem) -> Option<usize> {
        let mut an = a;
        for n in 1..=self.exponent_bound() {
            if an == self.zero {
                return Some(n);
            }
            an = self.mul(an, a);
        }
        None
    }

    /// `a` is a zero-divisor: `ab = 0` for some `b != 0`.
    pub fn is_zero_divisor(&self, a: Elem) -> bool {
        (0..self.size).any(|b| b != self.zero && self.mul(a, b) == self.zero)
    }

    /// Annihilator of `a`.
    pub fn annihilator(&self, a: Elem) -> ElemSet {
        (0..self.size)
            .filter(|&b| self.mul(a, b) == self.zero)
            .collect()
    }

    /// The set `{c·x : x ∈ set}`.
    pub fn scale_set(&self, c: Elem, set: &ElemSet) -> ElemSet {
        set.iter().map(|x| self.mul(c, x)).collect()
    }

    /// The sumset `A + B`.
    pub fn sum_set(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for x in a {
            for y in b {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    /// Whether `set` is closed under addition.
    pub fn closed_under_add(&self, set: &ElemSet) -> Option<(Elem, Elem)> {
        for a in set {
            for b in set {
                if !set.contains(self.add(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// First pair whose product leaves `set`, if any.
    pub fn closed_under_mul(&self, set: &ElemSet) -> Option<(Elem, Elem)> {
        for a in set {
            for b in set {
                if !set.contains(self.mul(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Whether `set` is a subring: contains 0 and 1 and is closed under
    /// addition, negation and multiplication.
    pub fn is_subring(&self, set: &ElemSet) -> bool {
        set.contains(self.zero)
            && set.contains(self.one)
            && set.iter().all(|a| set.contains(self.neg(a)))
            && self.closed_under_add(set).is_none()
            && self.closed_under_mul(set).is_none()
    }

    pub fn classical_sets(&self) -> ClassicalSets {
        let mut cs = ClassicalSets::default();
        for a in self.elements() {
            if self.is_idempotent(a) {
                cs.idem.insert(a);
            }
            if self.is_vnr(a) {
                cs.vnr.insert(a);
            }
            if self.pi_regular_exponent(a).is_some() {
                cs.pi_reg.insert(a);
            }
            if self.is_zero_divisor(a) {
                cs.zero_divisors.insert(a);
            } else {
                cs.regular.insert(a);
            }
            if self.nilpotency_index(a).is_some() {
                cs.nil.insert(a);
            }
            if self.is_unit(a) {
                cs.units.insert(a);
            }
        }
        cs
    }
}

fn normalize(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("size", &self.size)
            .finish()
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

/// The classical element sets of a ring.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassicalSets {
    pub idem: ElemSet,
    pub vnr: ElemSet,
    pub pi_reg: ElemSet,
    pub regular: ElemSet,
    pub zero_divisors: ElemSet,
    pub nil: ElemSet,
    pub units: ElemSet,
}

/// An ideal, remembered together with the fingerprint of its ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ideal {
    ring_id: u64,
    members: ElemSet,
}

impl Ideal {
    /// Wraps `members` after checking the ideal axioms.
    pub fn new(ring: &FiniteRing, members: ElemSet) -> Result<Ideal> {
        let ideal = Ideal {
            ring_id: ring.id(),
            members,
        };
        if !ideal.is_valid(ring) {
            return Err(Error::Axiom(format!(
                "{} is not an ideal",
                ring.format_set(&members)
            )));
        }
        Ok(ideal)
    }

    pub(crate) fn new_unchecked(ring: &FiniteRing, members: ElemSet) -> Ideal {
        Ideal {
            ring_id: ring.id(),
            members,
        }
    }

    pub fn zero(ring: &FiniteRing) -> Ideal {
        Ideal::new_unchecked(ring, ElemSet::singleton(ring.zero()))
    }

    pub fn whole(ring: &FiniteRing) -> Ideal {
        Ideal::new_unchecked(ring, ring.carrier())
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(a)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn belongs_to(&self, ring: &FiniteRing) -> bool {
        self.ring_id == ring.id()
    }

    pub fn is_proper(&self, ring: &FiniteRing) -> bool {
        !self.members.contains(ring.one())
    }

    pub fn is_valid(&self, ring: &FiniteRing) -> bool {
        let m = self.members;
        m.contains(ring.zero())
            && m.iter().all(|a| m.contains(ring.neg(a)))
            && ring.closed_under_add(&m).is_none()
            && m.iter().all(|a| ring.multiples(a).is_subset(&m))
    }
}
