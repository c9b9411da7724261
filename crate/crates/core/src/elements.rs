//! Element-level S-properties: witnesses, the S-element sets and the checks of
//! the element-level statements.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bits::ElemSet;
use crate::check::{ensure, Outcome};
use crate::mult_set::MultiplicativeSet;
use crate::ring::{ClassicalSets, Elem, FiniteRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Property {
    SInvertible,
    SIdempotent,
    SVnr,
    SPiRegular,
    SNilpotent,
    SZero,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::SInvertible,
        Property::SIdempotent,
        Property::SVnr,
        Property::SPiRegular,
        Property::SNilpotent,
        Property::SZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::SInvertible => "S_INVERTIBLE",
            Property::SIdempotent => "S_IDEMPOTENT",
            Property::SVnr => "S_VNR",
            Property::SPiRegular => "S_PI_REGULAR",
            Property::SNilpotent => "S_NILPOTENT",
            Property::SZero => "S_ZERO",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    /// Accepts `S_VNR`, `s-vnr`, `vnr` and similar spellings.
    fn from_str(s: &str) -> Result<Self, String> {
        let key: String = s
            .to_ascii_lowercase()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect();
        let key = key
            .strip_prefix('s')
            .filter(|k| !k.is_empty() && *k != "ero")
            .unwrap_or(&key);
        match key {
            "invertible" | "u" | "unit" => Ok(Property::SInvertible),
            "idempotent" | "idem" => Ok(Property::SIdempotent),
            "vnr" | "vonneumannregular" => Ok(Property::SVnr),
            "piregular" | "pireg" | "preg" => Ok(Property::SPiRegular),
            "nilpotent" | "nil" => Ok(Property::SNilpotent),
            "zero" | "z" => Ok(Property::SZero),
            _ => Err(format!("unknown property `{s}`")),
        }
    }
}

/// Evidence that `element` has property `kind`:
///
/// | kind | identity |
/// |------|----------|
/// | S_INVERTIBLE | `a·b = s` |
/// | S_IDEMPOTENT | `s·a = a²` |
/// | S_VNR | `s·a = a²·b` |
/// | S_PI_REGULAR | `s·aⁿ = a²ⁿ·b` |
/// | S_NILPOTENT | `s·aⁿ = 0` |
/// | S_ZERO | `s·a = 0` |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub kind: Property,
    pub element: Elem,
    pub s: Elem,
    pub b: Option<Elem>,
    pub n: Option<usize>,
}

impl Witness {
    /// Re-evaluates the defining identity through the ring tables.
    pub fn replays(&self, ring: &FiniteRing) -> bool {
        let (a, s) = (self.element, self.s);
        let n = self.n.unwrap_or(1);
        let b = self.b;
        match (self.kind, b) {
            (Property::SInvertible, Some(b)) => ring.mul(a, b) == s,
            (Property::SIdempotent, None) => ring.mul(s, a) == ring.mul(a, a),
            (Property::SVnr, Some(b)) => ring.mul(s, a) == ring.mul(ring.mul(a, a), b),
            (Property::SPiRegular, Some(b)) => {
                n >= 1 && ring.mul(s, ring.pow(a, n)) == ring.mul(ring.pow(a, 2 * n), b)
            }
            (Property::SNilpotent, None) => n >= 1 && ring.mul(s, ring.pow(a, n)) == ring.zero(),
            (Property::SZero, None) => ring.mul(s, a) == ring.zero(),
            _ => false,
        }
    }

    pub fn describe(&self, ring: &FiniteRing) -> String {
        let nm = |x: Elem| ring.name(x).to_string();
        let (a, s) = (nm(self.element), nm(self.s));
        let b = self.b.map(nm).unwrap_or_default();
        let n = self.n.unwrap_or(1);
        match self.kind {
            Property::SInvertible => format!("{a} * {b} = {s}"),
            Property::SIdempotent => format!("{s} * {a} = {a}^2"),
            Property::SVnr => format!("{s} * {a} = {a}^2 * {b}"),
            Property::SPiRegular => format!("{s} * {a}^{n} = {a}^{} * {b}", 2 * n),
            Property::SNilpotent => format!("{s} * {a}^{n} = 0"),
            Property::SZero => format!("{s} * {a} = 0"),
        }
    }
}

/// Whether `a` has property `kind` with respect to the single element `s`.
pub fn holds_relative(ring: &FiniteRing, s: Elem, a: Elem, kind: Property) -> bool {
    match kind {
        Property::SInvertible => ring.multiples(a).contains(s),
        Property::SIdempotent => ring.mul(s, a) == ring.mul(a, a),
        Property::SVnr => ring.multiples(ring.mul(a, a)).contains(ring.mul(s, a)),
        Property::SPiRegular => {
            let mut an = a;
            (1..=ring.exponent_bound()).any(|_| {
                let hit = ring.multiples(ring.mul(an, an)).contains(ring.mul(s, an));
                an = ring.mul(an, a);
                hit
            })
        }
        Property::SNilpotent => {
            let mut an = a;
            (1..=ring.exponent_bound()).any(|_| {
                let hit = ring.mul(s, an) == ring.zero();
                an = ring.mul(an, a);
                hit
            })
        }
        Property::SZero => ring.mul(s, a) == ring.zero(),
    }
}

/// First witness in the order: ascending `s`, then `b`, then `n`.
pub fn witness_for(
    ring: &FiniteRing,
    set: &MultiplicativeSet,
    a: Elem,
    kind: Property,
) -> Option<Witness> {
    let bound = ring.exponent_bound();
    let w = |s, b, n| Witness {
        kind,
        element: a,
        s,
        b,
        n,
    };
    let a2 = ring.mul(a, a);
    for s in set.iter() {
        match kind {
            Property::SInvertible => {
                if let Some(b) = ring.elements().find(|&b| ring.mul(a, b) == s) {
                    return Some(w(s, Some(b), None));
                }
            }
            Property::SIdempotent => {
                if ring.mul(s, a) == a2 {
                    return Some(w(s, None, None));
                }
            }
            Property::SVnr => {
                let sa = ring.mul(s, a);
                if let Some(b) = ring.elements().find(|&b| ring.mul(a2, b) == sa) {
                    return Some(w(s, Some(b), None));
                }
            }
            Property::SPiRegular => {
                for b in ring.elements() {
                    let mut an = a;
                    for n in 1..=bound {
                        if ring.mul(s, an) == ring.mul(ring.mul(an, an), b) {
                            return Some(w(s, Some(b), Some(n)));
                        }
                        an = ring.mul(an, a);
                    }
                }
            }
            Property::SNilpotent => {
                let mut an = a;
                for n in 1..=bound {
                    if ring.mul(s, an) == ring.zero() {
                        return Some(w(s, None, Some(n)));
                    }
                    an = ring.mul(an, a);
                }
            }
            Property::SZero => {
                if ring.mul(s, a) == ring.zero() {
                    return Some(w(s, None, None));
                }
            }
        }
    }
    None
}

/// The six element sets taken with respect to one fixed `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RelativeSets {
    pub s: Elem,
    pub u: ElemSet,
    pub idem: ElemSet,
    pub vnr: ElemSet,
    pub pireg: ElemSet,
    pub nil: ElemSet,
    pub zero: ElemSet,
}

impl RelativeSets {
    pub fn compute(ring: &FiniteRing, s: Elem) -> Self {
        let mut r = RelativeSets {
            s,
            ..Default::default()
        };
        for a in ring.elements() {
            for (kind, target) in [
                (Property::SInvertible, &mut r.u),
                (Property::SIdempotent, &mut r.idem),
                (Property::SVnr, &mut r.vnr),
                (Property::SPiRegular, &mut r.pireg),
                (Property::SNilpotent, &mut r.nil),
                (Property::SZero, &mut r.zero),
            ] {
                if holds_relative(ring, s, a, kind) {
                    target.insert(a);
                }
            }
        }
        r
    }

    pub fn get(&self, kind: Property) -> ElemSet {
        match kind {
            Property::SInvertible => self.u,
            Property::SIdempotent => self.idem,
            Property::SVnr => self.vnr,
            Property::SPiRegular => self.pireg,
            Property::SNilpotent => self.nil,
            Property::SZero => self.zero,
        }
    }
}

/// S-u(R), S-idem(R), S-vnr(R), S-π-reg(R), S-nil(R), S-zero elements, and
/// the same sets for each fixed `s ∈ S`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ElementSets {
    pub s_u: ElemSet,
    pub s_idem: ElemSet,
    pub s_vnr: ElemSet,
    pub s_pireg: ElemSet,
    pub s_nil: ElemSet,
    pub s_zero: ElemSet,
    pub per_s: Vec<RelativeSets>,
}

impl ElementSets {
    pub fn get(&self, kind: Property) -> ElemSet {
        match kind {
            Property::SInvertible => self.s_u,
            Property::SIdempotent => self.s_idem,
            Property::SVnr => self.s_vnr,
            Property::SPiRegular => self.s_pireg,
            Property::SNilpotent => self.s_nil,
            Property::SZero => self.s_zero,
        }
    }

    pub fn relative(&self, s: Elem) -> Option<&RelativeSets> {
        self.per_s.iter().find(|r| r.s == s)
    }
}

pub fn element_sets(ring: &FiniteRing, set: &MultiplicativeSet) -> ElementSets {
    let per_s: Vec<RelativeSets> = set.iter().map(|s| RelativeSets::compute(ring, s)).collect();
    let mut out = ElementSets::default();
    for r in &per_s {
        out.s_u = out.s_u | r.u;
        out.s_idem = out.s_idem | r.idem;
        out.s_vnr = out.s_vnr | r.vnr;
        out.s_pireg = out.s_pireg | r.pireg;
        out.s_nil = out.s_nil | r.nil;
        out.s_zero = out.s_zero | r.zero;
    }
    out.per_s = per_s;
    out
}

/// A ring, a multiplicative set, and everything derived from them that the
/// checks share.
#[derive(Debug, Clone)]
pub struct Analysis<'r> {
    pub ring: &'r FiniteRing,
    pub set: MultiplicativeSet,
    pub sets: ElementSets,
    pub classical: ClassicalSets,
}

impl<'r> Analysis<'r> {
    pub fn new(ring: &'r FiniteRing, set: &MultiplicativeSet) -> Self {
        debug_assert!(set.belongs_to(ring));
        Analysis {
            ring,
            set: *set,
            sets: element_sets(ring, set),
            classical: ring.classical_sets(),
        }
    }

    fn name(&self, a: Elem) -> &str {
        self.ring.name(a)
    }

    fn fmt(&self, set: &ElemSet) -> String {
        self.ring.format_set(set)
    }
}

/// The inclusion chains between classical sets, S and the S-element sets.
pub fn inclusion_chain_check(an: &Analysis) -> Outcome {
    let (e, c, s) = (&an.sets, &an.classical, an.set.members());
    let z = c.zero_divisors;
    let chain: [(&str, ElemSet, ElemSet); 7] = [
        ("S ⊆ S-u(R)", s, e.s_u),
        ("idem(R) ∪ S ⊆ S-idem(R)", c.idem | s, e.s_idem),
        ("S-idem(R) ⊆ S ∪ Z(R)", e.s_idem, s | z),
        (
            "vnr(R) ∪ S-u(R) ∪ S-idem(R) ⊆ S-vnr(R)",
            c.vnr | e.s_u | e.s_idem,
            e.s_vnr,
        ),
        ("S-vnr(R) ⊆ S-u(R) ∪ Z(R)", e.s_vnr, e.s_u | z),
        (
            "π-reg(R) ∪ S-vnr(R) ∪ S-nil(R) ⊆ S-π-reg(R)",
            c.pi_reg | e.s_vnr | e.s_nil,
            e.s_pireg,
        ),
        ("S-π-reg(R) ⊆ S-u(R) ∪ Z(R)", e.s_pireg, e.s_u | z),
    ];
    for (name, lhs, rhs) in chain {
        if let Some(a) = (lhs - rhs).first() {
            return Outcome::Violated(format!("{name} fails at {}", an.name(a)));
        }
    }
    Outcome::Holds
}

/// Multiplicative closure of the four S-sets, plus the three element-level
/// closure facts: `ab ∈ S-u ⇒ a ∈ S-u`, `e s-idempotent ⇒ s − e s-idempotent`,
/// and `s·aⁿ = a²ⁿ·b ⇒ aⁿ·b ∈ S-idem`.
pub fn multiplicative_closure_check(an: &Analysis) -> Outcome {
    let r = an.ring;
    let e = &an.sets;
    let run = || -> Result<(), String> {
        for (name, set) in [
            ("S-u", e.s_u),
            ("S-idem", e.s_idem),
            ("S-vnr", e.s_vnr),
            ("S-π-reg", e.s_pireg),
        ] {
            if let Some((a, b)) = r.closed_under_mul(&set) {
                return Err(format!(
                    "{name} not closed: {} * {}",
                    an.name(a),
                    an.name(b)
                ));
            }
        }
        for a in r.elements() {
            for b in r.elements() {
                ensure(!e.s_u.contains(r.mul(a, b)) || e.s_u.contains(a), || {
                    format!(
                        "{} * {} ∈ S-u but {} ∉ S-u",
                        an.name(a),
                        an.name(b),
                        an.name(a)
                    )
                })?;
            }
        }
        for rel in &e.per_s {
            let s = rel.s;
            for x in rel.idem.iter() {
                ensure(rel.idem.contains(r.sub(s, x)), || {
                    format!(
                        "{} is {}-idempotent but {} - {} is not",
                        an.name(x),
                        an.name(s),
                        an.name(s),
                        an.name(x)
                    )
                })?;
            }
            for a in r.elements() {
                let mut seen = HashSet::new();
                let mut an_ = a;
                for n in 1..=r.exponent_bound() {
                    let a2n = r.mul(an_, an_);
                    if seen.insert((an_, a2n)) {
                        let lhs = r.mul(s, an_);
                        for b in r.elements() {
                            if r.mul(a2n, b) == lhs {
                                let c = r.mul(an_, b);
                                ensure(e.s_idem.contains(c), || {
                                    format!(
                                        "{} * {}^{n} = {}^{} * {} but {} ∉ S-idem",
                                        an.name(s),
                                        an.name(a),
                                        an.name(a),
                                        2 * n,
                                        an.name(b),
                                        an.name(c)
                                    )
                                })?;
                            }
                        }
                    }
                    an_ = r.mul(an_, a);
                }
            }
        }
        Ok(())
    };
    run().into()
}

/// `A` is S-torsion: every element is killed by some member of S.
fn s_torsion_failure(r: &FiniteRing, set: &MultiplicativeSet, a: &ElemSet) -> Option<Elem> {
    a.iter()
        .find(|&x| !set.iter().any(|t| r.mul(t, x) == r.zero()))
}

/// Some single member of S kills all of `a`.
fn uniform_killer(r: &FiniteRing, set: &MultiplicativeSet, a: &ElemSet) -> Option<Elem> {
    set.iter()
        .find(|&k| a.iter().all(|x| r.mul(k, x) == r.zero()))
}

/// S-vnr ∩ S-nil and S-idem ∩ S-nil are S-torsion; for fixed `s, t`,
/// s-vnr ∩ t-nil and s-idem ∩ t-nil are uniformly S-torsion.
pub fn torsion_intersection_check(an: &Analysis) -> Outcome {
    let (r, e, set) = (an.ring, &an.sets, &an.set);
    let run = || -> Result<(), String> {
        for (name, x) in [
            ("S-vnr ∩ S-nil", e.s_vnr & e.s_nil),
            ("S-idem ∩ S-nil", e.s_idem & e.s_nil),
        ] {
            if let Some(a) = s_torsion_failure(r, set, &x) {
                return Err(format!("{} ∈ {name} is not S-zero", an.name(a)));
            }
        }
        for rs in &e.per_s {
            for rt in &e.per_s {
                for (name, x) in [("vnr", rs.vnr & rt.nil), ("idem", rs.idem & rt.nil)] {
                    ensure(uniform_killer(r, set, &x).is_some(), || {
                        format!(
                            "{}-{name} ∩ {}-nil = {} has no single killer in S",
                            an.name(rs.s),
                            an.name(rt.s),
                            an.fmt(&x)
                        )
                    })?;
                }
            }
        }
        Ok(())
    };
    run().into()
}

/// The five conditions characterising S-von Neumann regularity of `a`:
///
/// 1. `a ∈ S-vnr(R)`;
/// 2. `s·a = a²·u` for some `s ∈ S`, `u ∈ S-u(R)`;
/// 3. `s·a = u·e` for some `s ∈ S`, `u ∈ S-u(R)`, `e ∈ S-idem(R)`;
/// 4. `s·a·b = 0` and `s·a + b ∈ S-u(R)` for some `s ∈ S`, `b ∈ S-vnr(R) ∖ {a}`;
/// 5. `s·a·b = 0` and `s·a + b ∈ u(R)` for some `s ∈ S`, `b ∈ R`.
///
/// Each is decided by its own search.
pub fn vnr_conditions(an: &Analysis, a: Elem) -> [bool; 5] {
    let products = unit_idem_products(an);
    vnr_conditions_with(an, a, &products)
}

fn unit_idem_products(an: &Analysis) -> ElemSet {
    let mut out = ElemSet::EMPTY;
    for u in an.sets.s_u.iter() {
        for e in an.sets.s_idem.iter() {
            out.insert(an.ring.mul(u, e));
        }
    }
    out
}

fn vnr_conditions_with(an: &Analysis, a: Elem, unit_idem: &ElemSet) -> [bool; 5] {
    let r = an.ring;
    let e = &an.sets;
    let a2 = r.mul(a, a);
    let c1 = an
        .set
        .iter()
        .any(|s| r.elements().any(|b| r.mul(s, a) == r.mul(a2, b)));
    let c2 = an
        .set
        .iter()
        .any(|s| e.s_u.iter().any(|u| r.mul(s, a) == r.mul(a2, u)));
    let c3 = an.set.iter().any(|s| unit_idem.contains(r.mul(s, a)));
    let c4 = an.set.iter().any(|s| {
        let sa = r.mul(s, a);
        (e.s_vnr - ElemSet::singleton(a))
            .iter()
            .any(|b| r.mul(sa, b) == r.zero() && e.s_u.contains(r.add(sa, b)))
    });
    let c5 = an.set.iter().any(|s| {
        let sa = r.mul(s, a);
        r.elements()
            .any(|b| r.mul(sa, b) == r.zero() && an.classical.units.contains(r.add(sa, b)))
    });
    [c1, c2, c3, c4, c5]
}

pub fn vnr_characterization_check(an: &Analysis, a: Elem) -> Outcome {
    let c = vnr_conditions(an, a);
    if c.iter().all(|&x| x == c[0]) {
        Outcome::Holds
    } else {
        Outcome::Violated(format!("conditions disagree at {}: {:?}", an.name(a), c))
    }
}

/// The five-way characterisation at every element of the ring.
pub fn vnr_characterization_all(an: &Analysis) -> Outcome {
    let products = unit_idem_products(an);
    for a in an.ring.elements() {
        let c = vnr_conditions_with(an, a, &products);
        if !c.iter().all(|&x| x == c[0]) {
            return Outcome::Violated(format!("conditions disagree at {}: {:?}", an.name(a), c));
        }
    }
    Outcome::Holds
}

/// A weak inverse `x` of an S-vnr element `a`: `a²x = s²a` and `x²a = s²x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakInverse {
    pub s: Elem,
    pub x: Elem,
    /// Every `y` with `a²y = s²a` and `y²a = s²y`.
    pub candidates: Vec<Elem>,
    /// `s⁴y = s⁴x` for every candidate.
    pub certificate: bool,
    pub s_regular: bool,
}

impl WeakInverse {
    pub fn unique(&self) -> bool {
        self.candidates == [self.x]
    }
}

/// Builds `x = a·b²` from the first S-vnr witness `s·a = a²·b`.
pub fn weak_inverse(ring: &FiniteRing, set: &MultiplicativeSet, a: Elem) -> Option<WeakInverse> {
    let w = witness_for(ring, set, a, Property::SVnr)?;
    let (s, b) = (w.s, w.b?);
    let x = ring.mul(a, ring.mul(b, b));
    let s2 = ring.mul(s, s);
    let s4 = ring.mul(s2, s2);
    let a2 = ring.mul(a, a);
    let solves = |y: Elem| {
        ring.mul(a2, y) == ring.mul(s2, a) && ring.mul(ring.mul(y, y), a) == ring.mul(s2, y)
    };
    let candidates: Vec<Elem> = ring.elements().filter(|&y| solves(y)).collect();
    let certificate = candidates
        .iter()
        .all(|&y| ring.mul(s4, y) == ring.mul(s4, x));
    Some(WeakInverse {
        s,
        x,
        candidates,
        certificate,
        s_regular: !ring.is_zero_divisor(s),
    })
}

pub fn weak_inverse_check(an: &Analysis) -> Outcome {
    let r = an.ring;
    for a in an.sets.s_vnr.iter() {
        let Some(wi) = weak_inverse(r, &an.set, a) else {
            return Outcome::Violated(format!("{} ∈ S-vnr but no witness found", an.name(a)));
        };
        if !wi.candidates.contains(&wi.x) {
            return Outcome::Violated(format!(
                "x = {} fails the weak-inverse identities for {}",
                an.name(wi.x),
                an.name(a)
            ));
        }
        if !wi.certificate {
            return Outcome::Violated(format!("s^4 y = s^4 x fails for a = {}", an.name(a)));
        }
        if wi.s_regular && !wi.unique() {
            return Outcome::Violated(format!(
                "s = {} is regular but {} has weak inverses {}",
                an.name(wi.s),
                an.name(a),
                an.fmt(&wi.candidates.iter().copied().collect())
            ));
        }
    }
    Outcome::Holds
}

/// Additive behaviour of S-vnr(R).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumClosureStatus {
    pub closed_under_addition: bool,
    /// First `(a, b)` in S-vnr with `a + b ∉ S-vnr`.
    pub addition_failure: Option<(Elem, Elem)>,
    pub two_in_su: bool,
    /// When `2 ∈ S-u(R)`: every S-vnr `a` has some `s` with `s·a` a sum of
    /// two S-invertible elements.
    pub two_invertible_decomposition: Option<bool>,
    /// When `2 ∈ S-u(R)`: (S-vnr is a subring, sums of four S-invertibles are
    /// S-vnr, `u(s + k) + v(t + m) ∈ S-vnr`), each computed on its own.
    pub subring_equivalence: Option<[bool; 3]>,
}

pub fn sum_closure_status(an: &Analysis) -> SumClosureStatus {
    let r = an.ring;
    let e = &an.sets;
    let addition_failure = r.closed_under_add(&e.s_vnr);
    let two = r.nat(2);
    let two_in_su = e.s_u.contains(two);
    let (mut decomposition, mut equivalence) = (None, None);
    if two_in_su {
        let pair_sums = r.sum_set(&e.s_u, &e.s_u);
        decomposition = Some(
            e.s_vnr
                .iter()
                .all(|a| an.set.iter().any(|s| pair_sums.contains(r.mul(s, a)))),
        );
        let subring = r.is_subring(&e.s_vnr);
        let four_sums = r.sum_set(&pair_sums, &pair_sums);
        let four = four_sums.is_subset(&e.s_vnr);
        let squares_in_s: ElemSet = e
            .s_u
            .iter()
            .filter(|&k| an.set.contains(r.mul(k, k)))
            .collect();
        let mut shifted = ElemSet::EMPTY;
        for s in an.set.iter() {
            for k in squares_in_s.iter() {
                let sk = r.add(s, k);
                shifted = shifted | r.scale_set(sk, &e.s_u);
            }
        }
        let special = r.sum_set(&shifted, &shifted).is_subset(&e.s_vnr);
        equivalence = Some([subring, four, special]);
    }
    SumClosureStatus {
        closed_under_addition: addition_failure.is_none(),
        addition_failure,
        two_in_su,
        two_invertible_decomposition: decomposition,
        subring_equivalence: equivalence,
    }
}

/// When `2 ∈ S-u(R)`: the two-invertible decomposition exists and the three
/// subring conditions agree.
pub fn sum_closure_check(an: &Analysis) -> Outcome {
    let st = sum_closure_status(an);
    if !st.two_in_su {
        return Outcome::NotApplicable("2 ∉ S-u(R)".into());
    }
    if st.two_invertible_decomposition == Some(false) {
        return Outcome::Violated(
            "some S-vnr element has no s with s·a a sum of two S-invertibles".into(),
        );
    }
    match st.subring_equivalence {
        Some(c) if c.iter().all(|&x| x == c[0]) => Outcome::Holds,
        Some(c) => Outcome::Violated(format!("subring conditions disagree: {c:?}")),
        None => Outcome::Holds,
    }
}

/// If S-vnr(R) is a subring then nil(R) is S-torsion; if some s-vnr(R) is a
/// subring then one element of S kills nil(R).
pub fn weakly_reduced_consequence_check(an: &Analysis) -> Outcome {
    let r = an.ring;
    let nil = an.classical.nil;
    let plain = if r.is_subring(&an.sets.s_vnr) {
        match s_torsion_failure(r, &an.set, &nil) {
            None => Outcome::Holds,
            Some(a) => Outcome::Violated(format!(
                "S-vnr is a subring but {} is not S-zero",
                an.name(a)
            )),
        }
    } else {
        Outcome::NotApplicable("S-vnr(R) is not a subring".into())
    };
    plain.and_then(|| {
        let Some(rel) = an.sets.per_s.iter().find(|rel| r.is_subring(&rel.vnr)) else {
            return Outcome::NotApplicable("no s-vnr(R) is a subring".into());
        };
        match uniform_killer(r, &an.set, &nil) {
            Some(_) => Outcome::Holds,
            None => Outcome::Violated(format!(
                "{}-vnr is a subring but nil(R) has no single killer",
                an.name(rel.s)
            )),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mult_set::{all_mult_subsets, closure, one_set, units_set};
    use crate::ring::{direct_product, ideal_span, quotient, truncated_poly, zn};

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    fn section3_ring() -> FiniteRing {
        let z2 = zn(2).unwrap();
        let t = direct_product(&[z2.clone(), z2]).unwrap();
        let p = truncated_poly(&t, 2).unwrap();
        let g = p.find("(1,0)*x").unwrap();
        quotient(&p, &ideal_span(&p, [g])).unwrap().0
    }

    #[test]
    fn property_names_parse() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>(), Ok(p));
        }
        assert_eq!("s-vnr".parse::<Property>(), Ok(Property::SVnr));
        assert_eq!("S-pi-regular".parse::<Property>(), Ok(Property::SPiRegular));
        assert_eq!("zero".parse::<Property>(), Ok(Property::SZero));
        assert!("bogus".parse::<Property>().is_err());
    }

    #[test]
    fn witness_examples() {
        let z6 = zn(6).unwrap();
        let s = closure(&z6, [5], true).unwrap();
        let w = witness_for(&z6, &s, 2, Property::SIdempotent).unwrap();
        assert_eq!(w.s, 5);
        assert!(w.replays(&z6));

        let w = witness_for(&z6, &s, 0, Property::SVnr).unwrap();
        assert_eq!((w.s, w.b), (1, Some(0)));

        let z10 = zn(10).unwrap();
        let s = closure(&z10, [4], true).unwrap();
        assert!(!s.contains(2));
        let w = witness_for(&z10, &s, 2, Property::SInvertible).unwrap();
        assert_eq!((w.s, w.b), (4, Some(2)));
    }

    #[test]
    fn witnesses_replay_and_match_sets() {
        for n in [4, 6, 8, 9, 10, 12] {
            let r = zn(n).unwrap();
            for s in all_mult_subsets(&r, true).unwrap() {
                let sets = element_sets(&r, &s);
                for kind in Property::ALL {
                    // the witness search is an independent route to the global set
                    let mut found = ElemSet::EMPTY;
                    for a in r.elements() {
                        if let Some(w) = witness_for(&r, &s, a, kind) {
                            assert!(w.replays(&r), "{kind} {a} in Z{n}");
                            found.insert(a);
                        }
                    }
                    assert_eq!(
                        found,
                        sets.get(kind),
                        "{kind} over Z{n} with S = {:?}",
                        s.members()
                    );
                }
            }
        }
    }

    #[test]
    fn collapse_to_classical_sets() {
        let z2 = zn(2).unwrap();
        let rings = [
            zn(4).unwrap(),
            zn(12).unwrap(),
            truncated_poly(&z2, 3).unwrap(),
            section3_ring(),
        ];
        for r in &rings {
            let c = r.classical_sets();
            let one = element_sets(r, &one_set(r));
            assert_eq!(one.s_idem, c.idem);
            assert_eq!(one.s_vnr, c.vnr);
            assert_eq!(one.s_pireg, c.pi_reg);
            assert_eq!(one.s_nil, c.nil);
            assert_eq!(one.s_u, c.units);
            let units = element_sets(r, &units_set(r));
            assert_eq!(units.s_idem, c.vnr);
            assert_eq!(units.s_vnr, c.vnr);
            assert_eq!(units.s_u, c.units);
        }
        let p = direct_product(&[zn(3).unwrap(), zn(3).unwrap()]).unwrap();
        assert_eq!(element_sets(&p, &units_set(&p)).s_idem, p.carrier());
    }

    #[test]
    fn monotone_in_the_multiplicative_set() {
        let r = zn(12).unwrap();
        let all = all_mult_subsets(&r, true).unwrap();
        for a in &all {
            for b in &all {
                if a.members().is_subset(&b.members()) {
                    let (ea, eb) = (element_sets(&r, a), element_sets(&r, b));
                    for kind in Property::ALL {
                        assert!(ea.get(kind).is_subset(&eb.get(kind)));
                    }
                }
            }
        }
    }

    #[test]
    fn checks_on_z6() {
        let z6 = zn(6).unwrap();
        let s = closure(&z6, [5], true).unwrap();
        let an = Analysis::new(&z6, &s);
        assert!(inclusion_chain_check(&an).holds());
        assert!(multiplicative_closure_check(&an).holds());
        // 3 is 1-idempotent, so 1 - 3 = 4 is too
        assert!(an.sets.relative(1).unwrap().idem.contains(4));
        assert!(torsion_intersection_check(&an).holds());
        assert!(vnr_characterization_check(&an, 2).holds());
        assert_eq!(vnr_conditions(&an, 2), [true; 5]);
        assert_eq!(vnr_conditions(&an, 1), [true; 5]);
        // 2 ∉ S-u: 2·b is even, S = {1, 5} is odd
        assert!(!an.sets.s_u.contains(2));
        assert!(!sum_closure_status(&an).two_in_su);
    }

    #[test]
    fn z4_torsion_and_reducedness() {
        let z4 = zn(4).unwrap();
        let an = Analysis::new(&z4, &one_set(&z4));
        assert_eq!(an.sets.s_vnr & an.sets.s_nil, set(&[0]));
        let an = Analysis::new(&z4, &closure(&z4, [3], true).unwrap());
        // 2 is nilpotent, 3·2 = 2 and 1·2 = 2 are nonzero, so S-vnr cannot be a subring
        assert!(!z4.is_subring(&an.sets.s_vnr));
        assert!(!weakly_reduced_consequence_check(&an).is_applicable());
    }

    #[test]
    fn weak_inverses() {
        let z6 = zn(6).unwrap();
        let one = one_set(&z6);
        let wi = weak_inverse(&z6, &one, 0).unwrap();
        assert_eq!(wi.x, 0);
        let wi = weak_inverse(&z6, &one, 2).unwrap();
        assert_eq!(wi.x, 2);
        assert!(wi.unique());
        assert!(weak_inverse(&zn(4).unwrap(), &one_set(&zn(4).unwrap()), 2).is_none());
    }

    #[test]
    fn section3_ring_is_uniformly_vnr_at_s() {
        let r = section3_ring();
        let s = r.find("(1,0)").unwrap();
        let set = closure(&r, [s], true).unwrap();
        assert_eq!(set.len(), 2);
        let an = Analysis::new(&r, &set);
        assert_eq!(an.sets.relative(s).unwrap().vnr, r.carrier());
        let a = r.find("(1,1) + (0,1)*x").unwrap();
        assert_eq!(r.mul(s, a), s);
        assert!(vnr_characterization_check(&an, a).holds());
        assert_eq!(vnr_conditions(&an, a), [true; 5]);
        assert!(!an.sets.s_idem.contains(a));
    }

    #[test]
    fn boolean_ring_sums() {
        let z2 = zn(2).unwrap();
        let b = direct_product(&[z2.clone(), z2]).unwrap();
        let an = Analysis::new(&b, &one_set(&b));
        assert!(sum_closure_status(&an).closed_under_addition);
    }
}
