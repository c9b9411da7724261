//! The ideal lattice of a finite ring and the relative notions S-prime,
//! S-maximal and S-primary.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bits::ElemSet;
use crate::check::Outcome;
use crate::elements::Analysis;
use crate::error::{Error, Result};
use crate::mult_set::MultiplicativeSet;
use crate::ring::{Elem, FiniteRing, Ideal};

/// Largest ideal lattice [`all_ideals`] will build.
pub const IDEAL_LATTICE_CAP: usize = 4096;

/// Every ideal of `ring`, ordered by bitmask.
pub fn all_ideals(ring: &FiniteRing) -> Result<Vec<Ideal>> {
    let zero = ElemSet::singleton(ring.zero());
    let mut seen: BTreeSet<ElemSet> = BTreeSet::from([zero]);
    let mut queue = vec![zero];
    while let Some(i) = queue.pop() {
        for g in ring.carrier() - i {
            let j = ring.sum_set(&i, &ring.multiples(g));
            if seen.insert(j) {
                if seen.len() > IDEAL_LATTICE_CAP {
                    return Err(Error::EnumerationCap(format!(
                        "{} has more than {IDEAL_LATTICE_CAP} ideals",
                        ring.label()
                    )));
                }
                queue.push(j);
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|m| Ideal::new_unchecked(ring, m))
        .collect())
}

/// `{a : aⁿ ∈ I for some n ≤ |R|}`.
pub fn radical(ring: &FiniteRing, ideal: &Ideal) -> Ideal {
    let members = ring
        .elements()
        .filter(|&a| {
            let mut p = a;
            (1..=ring.size()).any(|_| {
                let hit = ideal.contains(p);
                p = ring.mul(p, a);
                hit
            })
        })
        .collect();
    Ideal::new_unchecked(ring, members)
}

pub fn is_prime(ring: &FiniteRing, p: &Ideal) -> bool {
    s_prime_with(ring, p, ring.one())
}

/// Proper ideals not strictly contained in another proper ideal.
pub fn maximal_ideals(ring: &FiniteRing, lattice: &[Ideal]) -> Vec<Ideal> {
    let proper: Vec<&Ideal> = lattice.iter().filter(|i| i.is_proper(ring)).collect();
    proper
        .iter()
        .filter(|m| {
            !proper
                .iter()
                .any(|j| j.members() != m.members() && m.members().is_subset(&j.members()))
        })
        .map(|m| **m)
        .collect()
}

/// `ab ∈ P ⇒ sa ∈ P or sb ∈ P`.
fn s_prime_with(ring: &FiniteRing, p: &Ideal, s: Elem) -> bool {
    if !p.is_proper(ring) {
        return false;
    }
    relative_pairs_hold(
        ring,
        p,
        |a| p.contains(ring.mul(s, a)),
        |b| p.contains(ring.mul(s, b)),
    )
}

/// `ab ∈ P ⇒ sa ∈ P or sb ∈ rad(P)`.
fn s_primary_with(ring: &FiniteRing, p: &Ideal, rad: &Ideal, s: Elem) -> bool {
    if !p.is_proper(ring) {
        return false;
    }
    relative_pairs_hold(
        ring,
        p,
        |a| p.contains(ring.mul(s, a)),
        |b| rad.contains(ring.mul(s, b)),
    )
}

fn relative_pairs_hold(
    ring: &FiniteRing,
    p: &Ideal,
    left: impl Fn(Elem) -> bool,
    right: impl Fn(Elem) -> bool,
) -> bool {
    ring.elements().all(|a| {
        left(a)
            || ring
                .elements()
                .all(|b| !p.contains(ring.mul(a, b)) || right(b))
    })
}

/// Every ideal `I ⊇ M` has `sI ⊆ M` or meets S.
fn s_maximal_with(
    ring: &FiniteRing,
    set: &MultiplicativeSet,
    lattice: &[Ideal],
    m: &Ideal,
    s: Elem,
) -> bool {
    lattice
        .iter()
        .filter(|i| m.members().is_subset(&i.members()))
        .all(|i| {
            !i.members().is_disjoint(&set.members())
                || ring.scale_set(s, &i.members()).is_subset(&m.members())
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealVerdict {
    pub ideal: ElemSet,
    pub s_prime: Option<Elem>,
    pub s_maximal: Option<Elem>,
    pub s_primary: Option<Elem>,
    pub disjoint_from_s: bool,
    pub radical: ElemSet,
}

/// Decides S-prime, S-maximal and S-primary for `p`, each with the least
/// witness `s`. All three are absent when `p` meets S.
pub fn ideal_verdict(
    ring: &FiniteRing,
    set: &MultiplicativeSet,
    lattice: &[Ideal],
    p: &Ideal,
) -> IdealVerdict {
    let rad = radical(ring, p);
    let disjoint = p.members().is_disjoint(&set.members());
    let pick = |f: &dyn Fn(Elem) -> bool| {
        if disjoint {
            set.iter().find(|&s| f(s))
        } else {
            None
        }
    };
    IdealVerdict {
        ideal: p.members(),
        s_prime: pick(&|s| s_prime_with(ring, p, s)),
        s_maximal: pick(&|s| s_maximal_with(ring, set, lattice, p, s)),
        s_primary: pick(&|s| s_primary_with(ring, p, &rad, s)),
        disjoint_from_s: disjoint,
        radical: rad.members(),
    }
}

/// The ideal lattice with every verdict for one multiplicative set.
#[derive(Debug, Clone)]
pub struct IdealReport {
    pub lattice: Vec<Ideal>,
    pub verdicts: Vec<IdealVerdict>,
}

impl IdealReport {
    pub fn new(ring: &FiniteRing, set: &MultiplicativeSet) -> Result<Self> {
        let lattice = all_ideals(ring)?;
        Ok(Self::with_lattice(ring, set, lattice))
    }

    pub fn with_lattice(ring: &FiniteRing, set: &MultiplicativeSet, lattice: Vec<Ideal>) -> Self {
        let verdicts = lattice
            .iter()
            .map(|p| ideal_verdict(ring, set, &lattice, p))
            .collect();
        IdealReport { lattice, verdicts }
    }

    pub fn verdict(&self, ideal: &ElemSet) -> Option<&IdealVerdict> {
        self.verdicts.iter().find(|v| v.ideal == *ideal)
    }

    /// S-maximal ideals containing `i`.
    pub fn s_maximal_over(&self, i: &ElemSet) -> impl Iterator<Item = &IdealVerdict> + '_ {
        let i = *i;
        self.verdicts
            .iter()
            .filter(move |v| v.s_maximal.is_some() && i.is_subset(&v.ideal))
    }
}

/// S-maximal ideals are S-prime.
pub fn s_maximal_is_prime_check(an: &Analysis, report: &IdealReport) -> Outcome {
    for v in &report.verdicts {
        if v.s_maximal.is_some() && v.s_prime.is_none() {
            return Outcome::Violated(format!(
                "{} is S-maximal but not S-prime",
                an.ring.format_set(&v.ideal)
            ));
        }
    }
    Outcome::Holds
}

/// The hypothesis under which S-primary ideals are shown S-maximal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimaryHypothesis {
    SBoolean,
    UniformlySBoolean,
    UniformlySVnr,
    /// Every element S-vNr, with no single `s`. Reported only.
    EveryElementSVnr,
}

impl PrimaryHypothesis {
    pub const ALL: [PrimaryHypothesis; 4] = [
        PrimaryHypothesis::SBoolean,
        PrimaryHypothesis::UniformlySBoolean,
        PrimaryHypothesis::UniformlySVnr,
        PrimaryHypothesis::EveryElementSVnr,
    ];

    pub fn holds(self, an: &Analysis) -> bool {
        let full = an.ring.carrier();
        match self {
            PrimaryHypothesis::SBoolean => an.sets.s_idem == full,
            PrimaryHypothesis::UniformlySBoolean => uniform_boolean_witness(an).is_some(),
            PrimaryHypothesis::UniformlySVnr => an.sets.per_s.iter().any(|r| r.vnr == full),
            PrimaryHypothesis::EveryElementSVnr => an.sets.s_vnr == full,
        }
    }
}

/// Least `s` with `s·a = a²` for every non-idempotent `a`.
pub(crate) fn uniform_boolean_witness(an: &Analysis) -> Option<Elem> {
    let required = an.ring.carrier() - an.classical.idem;
    an.sets
        .per_s
        .iter()
        .find(|r| required.is_subset(&r.idem))
        .map(|r| r.s)
}

/// Under `hyp`, every S-primary ideal disjoint from S is S-maximal and S-prime.
pub fn primary_implies_maximal_check(
    an: &Analysis,
    report: &IdealReport,
    hyp: PrimaryHypothesis,
) -> Outcome {
    if !hyp.holds(an) {
        return Outcome::NotApplicable(format!("hypothesis {hyp:?} not met"));
    }
    for v in &report.verdicts {
        if v.disjoint_from_s
            && v.s_primary.is_some()
            && (v.s_maximal.is_none() || v.s_prime.is_none())
        {
            return Outcome::Violated(format!(
                "{} is S-primary but {}",
                an.ring.format_set(&v.ideal),
                if v.s_maximal.is_none() {
                    "not S-maximal"
                } else {
                    "not S-prime"
                }
            ));
        }
    }
    Outcome::Holds
}

/// Idempotent `s` serving as a uniform S-Boolean witness.
pub fn sandwich_witnesses(an: &Analysis) -> Vec<Elem> {
    let required = an.ring.carrier() - an.classical.idem;
    an.sets
        .per_s
        .iter()
        .filter(|r| an.ring.is_idempotent(r.s) && required.is_subset(&r.idem))
        .map(|r| r.s)
        .collect()
}

/// With `J` the intersection of the S-maximal ideals over `i`: `s·J ⊆ I ⊆ J`
/// for every idempotent uniform S-Boolean witness `s`.
pub fn sandwich_check(an: &Analysis, report: &IdealReport, i: &Ideal) -> Outcome {
    let witnesses = sandwich_witnesses(an);
    if witnesses.is_empty() {
        return Outcome::NotApplicable("no idempotent uniform S-Boolean witness".into());
    }
    if !i.members().is_disjoint(&an.set.members()) {
        return Outcome::NotApplicable("I meets S".into());
    }
    let j = report
        .s_maximal_over(&i.members())
        .fold(an.ring.carrier(), |acc, v| acc & v.ideal);
    if !i.members().is_subset(&j) {
        return Outcome::Violated(format!(
            "I = {} is not inside J",
            an.ring.format_set(&i.members())
        ));
    }
    for s in witnesses {
        if !an.ring.scale_set(s, &j).is_subset(&i.members()) {
            return Outcome::Violated(format!(
                "s = {}: s·J ⊄ I for I = {}, J = {}",
                an.ring.name(s),
                an.ring.format_set(&i.members()),
                an.ring.format_set(&j)
            ));
        }
    }
    Outcome::Holds
}

pub fn sandwich_check_all(an: &Analysis, report: &IdealReport) -> Outcome {
    if sandwich_witnesses(an).is_empty() {
        return Outcome::NotApplicable("no idempotent uniform S-Boolean witness".into());
    }
    let mut out = Outcome::NotApplicable("no ideal disjoint from S".into());
    for i in &report.lattice {
        out = out.and_then(|| sandwich_check(an, report, i));
        if out.is_violated() {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mult_set::{all_mult_subsets, closure, one_set};
    use crate::ring::{direct_product, ideal_span, truncated_poly, zn};

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    /// Oracle: every subset that passes the ideal axioms.
    fn brute_force_ideals(r: &FiniteRing) -> Vec<ElemSet> {
        let n = r.size();
        let mut out: Vec<ElemSet> = (0u64..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<ElemSet>())
            .filter(|s| Ideal::new(r, *s).is_ok())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn lattices() {
        let z6 = zn(6).unwrap();
        let got: Vec<ElemSet> = all_ideals(&z6)
            .unwrap()
            .iter()
            .map(|i| i.members())
            .collect();
        assert_eq!(
            got,
            vec![set(&[0]), set(&[0, 3]), set(&[0, 2, 4]), z6.carrier()]
        );
        assert_eq!(all_ideals(&zn(4).unwrap()).unwrap().len(), 3);
        assert_eq!(all_ideals(&zn(7).unwrap()).unwrap().len(), 2);
        let z2 = zn(2).unwrap();
        for r in [
            zn(12).unwrap(),
            direct_product(&[z2.clone(), z2.clone(), z2.clone()]).unwrap(),
            truncated_poly(&z2, 3).unwrap(),
            direct_product(&[zn(3).unwrap(), zn(3).unwrap()]).unwrap(),
        ] {
            let got: Vec<ElemSet> = all_ideals(&r)
                .unwrap()
                .iter()
                .map(|i| i.members())
                .collect();
            assert_eq!(got, brute_force_ideals(&r), "{}", r.label());
            for a in &got {
                for b in &got {
                    assert!(got.contains(&(*a & *b)));
                    assert!(got.contains(&r.sum_set(a, b)));
                }
            }
        }
    }

    #[test]
    fn radicals() {
        let z4 = zn(4).unwrap();
        assert_eq!(radical(&z4, &Ideal::zero(&z4)).members(), set(&[0, 2]));
        let z6 = zn(6).unwrap();
        assert_eq!(radical(&z6, &Ideal::zero(&z6)).members(), set(&[0]));
        let z12 = zn(12).unwrap();
        for i in all_ideals(&z12).unwrap() {
            let r = radical(&z12, &i);
            assert!(r.is_valid(&z12));
            assert_eq!(radical(&z12, &r), r);
            assert!(i.members().is_subset(&r.members()));
        }
    }

    #[test]
    fn verdicts_on_z6() {
        let z6 = zn(6).unwrap();
        let s = closure(&z6, [5], true).unwrap();
        let report = IdealReport::new(&z6, &s).unwrap();
        let v = report.verdict(&set(&[0, 3])).unwrap();
        assert_eq!(v.s_prime, Some(1));
        assert_eq!(v.s_maximal, Some(1));
        let v = report.verdict(&set(&[0])).unwrap();
        assert_eq!(v.s_prime, None);
        let whole = report.verdict(&z6.carrier()).unwrap();
        assert!(!whole.disjoint_from_s);
        assert_eq!(
            (whole.s_prime, whole.s_maximal, whole.s_primary),
            (None, None, None)
        );
    }

    #[test]
    fn classical_collapse() {
        for n in [4, 6, 8, 12] {
            let r = zn(n).unwrap();
            let one = one_set(&r);
            let report = IdealReport::new(&r, &one).unwrap();
            let maxes: Vec<ElemSet> = maximal_ideals(&r, &report.lattice)
                .iter()
                .map(|m| m.members())
                .collect();
            for (i, v) in report.lattice.iter().zip(&report.verdicts) {
                assert_eq!(v.s_prime.is_some(), is_prime(&r, i));
                assert_eq!(v.s_maximal.is_some(), maxes.contains(&i.members()));
                // primary: proper, and ab ∈ P with a ∉ P forces b ∈ rad(P)
                let rad = radical(&r, i);
                let primary = i.is_proper(&r)
                    && r.elements().all(|a| {
                        r.elements()
                            .all(|b| !i.contains(r.mul(a, b)) || i.contains(a) || rad.contains(b))
                    });
                assert_eq!(v.s_primary.is_some(), primary);
            }
        }
    }

    #[test]
    fn s_maximal_ideals_are_s_prime() {
        for r in [
            zn(12).unwrap(),
            direct_product(&[zn(2).unwrap(), zn(4).unwrap()]).unwrap(),
        ] {
            for s in all_mult_subsets(&r, true).unwrap() {
                let an = Analysis::new(&r, &s);
                let report = IdealReport::new(&r, &s).unwrap();
                assert!(s_maximal_is_prime_check(&an, &report).holds());
            }
        }
    }

    #[test]
    fn primary_and_sandwich() {
        let z6 = zn(6).unwrap();
        let s = closure(&z6, [5], true).unwrap();
        let an = Analysis::new(&z6, &s);
        let report = IdealReport::new(&z6, &s).unwrap();
        assert!(
            !primary_implies_maximal_check(&an, &report, PrimaryHypothesis::UniformlySBoolean)
                .is_violated()
        );
        assert!(primary_implies_maximal_check(&an, &report, PrimaryHypothesis::SBoolean).holds());

        let z2 = zn(2).unwrap();
        let b = direct_product(&[z2.clone(), z2]).unwrap();
        let one = one_set(&b);
        let an = Analysis::new(&b, &one);
        let report = IdealReport::new(&b, &one).unwrap();
        let i = ideal_span(&b, [b.find("(0,1)").unwrap()]);
        assert_eq!(sandwich_check(&an, &report, &i), Outcome::Holds);
        assert!(sandwich_check_all(&an, &report).holds());
    }
}
