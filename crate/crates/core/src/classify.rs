//! Ring-level S-classes and the ring-level statements that need neither
//! localization nor transfer along maps.

use serde::Serialize;

use crate::bits::ElemSet;
use crate::check::{ensure, Outcome};
use crate::elements::{element_sets, holds_relative, Analysis, Property};
use crate::error::Result;
use crate::ideals::{maximal_ideals, IdealReport};
use crate::mult_set::MultiplicativeSet;
use crate::ring::{Elem, FiniteRing, Ideal};

/// A failing element for one candidate `s`. Pairs carry the second element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub s: Elem,
    pub element: Elem,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<Elem>,
}

/// A class defined by "there is one `s ∈ S` such that ...". When false,
/// `counterexamples` has one entry per member of S.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformFlag {
    pub holds: bool,
    pub witness: Option<Elem>,
    pub counterexamples: Vec<Counterexample>,
}

impl UniformFlag {
    fn decide(
        set: &MultiplicativeSet,
        mut fails: impl FnMut(Elem) -> Option<(Elem, Option<Elem>)>,
    ) -> Self {
        let mut counterexamples = Vec::new();
        for s in set.iter() {
            match fails(s) {
                None => {
                    return UniformFlag {
                        holds: true,
                        witness: Some(s),
                        counterexamples: Vec::new(),
                    }
                }
                Some((element, partner)) => counterexamples.push(Counterexample {
                    s,
                    element,
                    partner,
                }),
            }
        }
        UniformFlag {
            holds: false,
            witness: None,
            counterexamples,
        }
    }
}

/// A class defined by "every element has ..."; when false, the first
/// failing element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlainFlag {
    pub holds: bool,
    pub counterexample: Option<Elem>,
}

impl PlainFlag {
    fn all_in(required: ElemSet, set: ElemSet) -> Self {
        let counterexample = (required - set).first();
        PlainFlag {
            holds: counterexample.is_none(),
            counterexample,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub ring: String,
    pub size: usize,
    pub s_members: ElemSet,
    pub boolean: PlainFlag,
    pub vnr: PlainFlag,
    pub pi_regular: PlainFlag,
    pub reduced: PlainFlag,
    pub s_boolean: PlainFlag,
    pub uniformly_s_boolean: UniformFlag,
    pub uniformly_s_vnr: UniformFlag,
    pub uniformly_s_pi_regular: UniformFlag,
    /// For the uniform π-regular witness, the least exponent per element.
    pub pi_regular_exponents: Option<Vec<usize>>,
    pub s_field: UniformFlag,
    pub s_integral_domain: UniformFlag,
    pub s_reduced: PlainFlag,
    pub weakly_s_reduced: PlainFlag,
    pub uniformly_s_reduced: UniformFlag,
    pub idempotents: ElemSet,
    pub s_u: ElemSet,
    pub s_idem: ElemSet,
    pub s_vnr: ElemSet,
    pub s_pireg: ElemSet,
    pub s_nil: ElemSet,
}

/// Least `n` with `s·aⁿ ∈ a²ⁿR`.
fn pi_regular_exponent_at(ring: &FiniteRing, s: Elem, a: Elem) -> Option<usize> {
    let mut an = a;
    for n in 1..=ring.exponent_bound() {
        if ring.multiples(ring.mul(an, an)).contains(ring.mul(s, an)) {
            return Some(n);
        }
        an = ring.mul(an, a);
    }
    None
}

fn is_s_zero(an: &Analysis, a: Elem) -> bool {
    an.set.iter().any(|t| an.ring.mul(t, a) == an.ring.zero())
}

pub fn classify(an: &Analysis, ideals: &IdealReport) -> ClassificationReport {
    let r = an.ring;
    let full = r.carrier();
    let c = &an.classical;
    let e = &an.sets;
    let rel = |s: Elem| e.relative(s).expect("per-s sets cover S");
    let non_idem = full - c.idem;

    let uniformly_s_boolean = UniformFlag::decide(&an.set, |s| {
        (non_idem - rel(s).idem).first().map(|a| (a, None))
    });
    let uniformly_s_vnr =
        UniformFlag::decide(&an.set, |s| (full - rel(s).vnr).first().map(|a| (a, None)));
    let uniformly_s_pi_regular = UniformFlag::decide(&an.set, |s| {
        (full - rel(s).pireg).first().map(|a| (a, None))
    });
    let pi_regular_exponents = uniformly_s_pi_regular.witness.map(|s| {
        r.elements()
            .map(|a| pi_regular_exponent_at(r, s, a).expect("witness covers every element"))
            .collect()
    });

    // Zero ideal S-maximal: a failing s is shown by an a with Ra ∩ S = ∅ and s·a ≠ 0.
    let zero = ideals
        .verdict(&ElemSet::singleton(r.zero()))
        .expect("lattice contains the zero ideal");
    let s_field_flag = UniformFlag::decide(&an.set, |s| {
        r.elements()
            .find(|&a| r.multiples(a).is_disjoint(&an.set.members()) && r.mul(s, a) != r.zero())
            .map(|a| (a, None))
    });
    let s_field = UniformFlag {
        holds: zero.s_maximal.is_some(),
        witness: zero.s_maximal,
        ..s_field_flag
    };
    let s_integral_domain_flag = UniformFlag::decide(&an.set, |s| {
        r.elements().find_map(|a| {
            r.elements()
                .find(|&b| {
                    r.mul(a, b) == r.zero() && r.mul(s, a) != r.zero() && r.mul(s, b) != r.zero()
                })
                .map(|b| (a, Some(b)))
        })
    });
    let s_integral_domain = UniformFlag {
        holds: zero.s_prime.is_some(),
        witness: zero.s_prime,
        ..s_integral_domain_flag
    };

    let nil = c.nil;
    let uniformly_s_reduced = UniformFlag::decide(&an.set, |s| {
        nil.iter()
            .find(|&a| r.mul(s, a) != r.zero())
            .map(|a| (a, None))
    });
    let weakly_counter = nil.iter().find(|&a| !is_s_zero(an, a));

    ClassificationReport {
        ring: r.label().to_string(),
        size: r.size(),
        s_members: an.set.members(),
        boolean: PlainFlag::all_in(full, c.idem),
        vnr: PlainFlag::all_in(full, c.vnr),
        pi_regular: PlainFlag::all_in(full, c.pi_reg),
        reduced: PlainFlag::all_in(nil, ElemSet::singleton(r.zero())),
        s_boolean: PlainFlag::all_in(full, e.s_idem),
        uniformly_s_boolean,
        uniformly_s_vnr,
        uniformly_s_pi_regular,
        pi_regular_exponents,
        s_field,
        s_integral_domain,
        s_reduced: PlainFlag::all_in(e.s_nil, ElemSet::singleton(r.zero())),
        weakly_s_reduced: PlainFlag {
            holds: weakly_counter.is_none(),
            counterexample: weakly_counter,
        },
        uniformly_s_reduced,
        idempotents: c.idem,
        s_u: e.s_u,
        s_idem: e.s_idem,
        s_vnr: e.s_vnr,
        s_pireg: e.s_pireg,
        s_nil: e.s_nil,
    }
}

pub fn classify_ring(ring: &FiniteRing, set: &MultiplicativeSet) -> Result<ClassificationReport> {
    let an = Analysis::new(ring, set);
    let ideals = IdealReport::new(ring, set)?;
    Ok(classify(&an, &ideals))
}

/// Every true flag replays: the witness `s` serves every required element,
/// and every listed counterexample really fails for its `s`.
pub fn replay_report(
    ring: &FiniteRing,
    set: &MultiplicativeSet,
    rep: &ClassificationReport,
) -> Outcome {
    let zero = ring.zero();
    let non_idem: Vec<Elem> = ring
        .elements()
        .filter(|&a| !ring.is_idempotent(a))
        .collect();
    let all: Vec<Elem> = ring.elements().collect();
    let nil: Vec<Elem> = ring
        .elements()
        .filter(|&a| ring.nilpotency_index(a).is_some())
        .collect();
    let run = || -> std::result::Result<(), String> {
        let uniform: [(&str, &UniformFlag, &Vec<Elem>, Property); 3] = [
            (
                "uniformly S-Boolean",
                &rep.uniformly_s_boolean,
                &non_idem,
                Property::SIdempotent,
            ),
            (
                "uniformly S-vNr",
                &rep.uniformly_s_vnr,
                &all,
                Property::SVnr,
            ),
            (
                "uniformly S-π-regular",
                &rep.uniformly_s_pi_regular,
                &all,
                Property::SPiRegular,
            ),
        ];
        for (name, flag, required, kind) in uniform {
            if let Some(s) = flag.witness {
                ensure(
                    required.iter().all(|&a| holds_relative(ring, s, a, kind)),
                    || format!("{name} witness fails"),
                )?;
            }
            for ce in &flag.counterexamples {
                ensure(!holds_relative(ring, ce.s, ce.element, kind), || {
                    format!("{name} counterexample holds")
                })?;
            }
        }
        if let Some(s) = rep.uniformly_s_reduced.witness {
            ensure(nil.iter().all(|&a| ring.mul(s, a) == zero), || {
                "uniformly S-reduced witness fails".into()
            })?;
        }
        if let Some(s) = rep.s_field.witness {
            ensure(
                ring.elements().all(|a| {
                    !ring.multiples(a).is_disjoint(&set.members()) || ring.mul(s, a) == zero
                }),
                || "S-field witness fails".into(),
            )?;
        }
        for ce in &rep.s_field.counterexamples {
            ensure(
                ring.multiples(ce.element).is_disjoint(&set.members())
                    && ring.mul(ce.s, ce.element) != zero,
                || "S-field counterexample does not fail".into(),
            )?;
        }
        if let Some(s) = rep.s_integral_domain.witness {
            ensure(
                ring.elements().all(|a| {
                    ring.elements().all(|b| {
                        ring.mul(a, b) != zero || ring.mul(s, a) == zero || ring.mul(s, b) == zero
                    })
                }),
                || "S-integral-domain witness fails".into(),
            )?;
        }
        if let (Some(s), Some(exps)) = (
            rep.uniformly_s_pi_regular.witness,
            &rep.pi_regular_exponents,
        ) {
            for (a, &n) in exps.iter().enumerate() {
                let an = ring.pow(a, n);
                ensure(
                    ring.multiples(ring.mul(an, an)).contains(ring.mul(s, an)),
                    || format!("exponent {n} fails at {}", ring.name(a)),
                )?;
            }
        }
        Ok(())
    };
    run().into()
}

/// Zero ideal S-maximal ⇔ some `s` makes every element S-invertible or s-zero.
pub fn s_field_equivalence_check(an: &Analysis, ideals: &IdealReport) -> Outcome {
    let r = an.ring;
    let by_ideals = ideals
        .verdict(&ElemSet::singleton(r.zero()))
        .is_some_and(|v| v.s_maximal.is_some());
    let by_elements = an.set.iter().any(|s| {
        r.elements()
            .all(|a| an.sets.s_u.contains(a) || r.mul(s, a) == r.zero())
    });
    if by_ideals == by_elements {
        Outcome::Holds
    } else {
        Outcome::Violated(format!(
            "zero ideal S-maximal = {by_ideals}, element criterion = {by_elements}"
        ))
    }
}

/// The relative sets taken at `S_M = R ∖ M` for every maximal `M`, and how
/// their intersections compare with the classical sets.
pub fn max_relative_check(ring: &FiniteRing, lattice: &[Ideal]) -> Outcome {
    let full = ring.carrier();
    let maxes = maximal_ideals(ring, lattice);
    if maxes.is_empty() {
        return Outcome::NotApplicable("zero ring".into());
    }
    let (mut z, mut u, mut nil, mut idem, mut vnr) = (full, full, full, full, full);
    for m in &maxes {
        let sm = MultiplicativeSet::new_unchecked(ring, full - m.members());
        let e = element_sets(ring, &sm);
        z = z & e.s_zero;
        u = u & e.s_u;
        nil = nil & e.s_nil;
        idem = idem & e.s_idem;
        vnr = vnr & e.s_vnr;
    }
    let c = ring.classical_sets();
    let run = || -> std::result::Result<(), String> {
        ensure(z == ElemSet::singleton(ring.zero()), || {
            format!("⋂ M-z(R) = {}", ring.format_set(&z))
        })?;
        ensure(u == c.units, || {
            format!("⋂ M-u(R) = {}", ring.format_set(&u))
        })?;
        ensure(nil == c.nil, || {
            format!("⋂ M-nil(R) = {}", ring.format_set(&nil))
        })?;
        ensure(c.idem.is_subset(&idem) && idem.is_subset(&c.vnr), || {
            format!(
                "⋂ M-idem(R) = {} not between idem(R) and vnr(R)",
                ring.format_set(&idem)
            )
        })?;
        ensure(vnr == c.vnr, || {
            format!("⋂ M-vnr(R) = {}", ring.format_set(&vnr))
        })?;
        Ok(())
    };
    run().into()
}

/// Whether `R = S-idem(R) ∪ nil(R)`, `R = S-idem(R) ∪ S-nil(R)`, and
/// whether R is S-Boolean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecompositionStatus {
    pub only_unit_is_one: bool,
    pub idem_nil_cover: bool,
    pub idem_s_nil_cover: bool,
    pub s_boolean: bool,
    /// First element outside S-idem(R) when R is not S-Boolean.
    pub non_s_idempotent: Option<Elem>,
}

pub fn decomposition_status(an: &Analysis) -> DecompositionStatus {
    let full = an.ring.carrier();
    let e = &an.sets;
    DecompositionStatus {
        only_unit_is_one: an.set.members() & an.classical.units
            == ElemSet::singleton(an.ring.one()),
        idem_nil_cover: e.s_idem | an.classical.nil == full,
        idem_s_nil_cover: e.s_idem | e.s_nil == full,
        s_boolean: e.s_idem == full,
        non_s_idempotent: (full - e.s_idem).first(),
    }
}

/// When S ∩ u(R) = {1}: `R = S-idem(R) ∪ nil(R)` ⇔ R is S-Boolean.
pub fn boolean_decomposition_check(an: &Analysis) -> Outcome {
    let st = decomposition_status(an);
    if !st.only_unit_is_one {
        return Outcome::NotApplicable("S contains a unit other than 1".into());
    }
    if st.idem_nil_cover == st.s_boolean {
        Outcome::Holds
    } else {
        Outcome::Violated(format!(
            "cover = {}, S-Boolean = {}",
            st.idem_nil_cover, st.s_boolean
        ))
    }
}

/// For `s ∈ S`, with a nonzero zero-divisor other than `s`: if Z(R) ⊆
/// s-idem(R) then `s²y ∈ S` for each regular `y` and every element is
/// s²-von Neumann regular.
pub fn zero_divisor_idempotent_check(an: &Analysis, s: Elem) -> Outcome {
    let r = an.ring;
    let z = an.classical.zero_divisors;
    if (z - ElemSet::singleton(r.zero()) - ElemSet::singleton(s)).is_empty() {
        return Outcome::NotApplicable("no nonzero zero-divisor other than s".into());
    }
    let rel = an.sets.relative(s).expect("s is in S");
    if !z.is_subset(&rel.idem) {
        return Outcome::NotApplicable("Z(R) is not inside s-idem(R)".into());
    }
    let s2 = r.mul(s, s);
    let run = || -> std::result::Result<(), String> {
        for y in r.carrier() - z {
            ensure(an.set.contains(r.mul(s2, y)), || {
                format!("s²·{} ∉ S", r.name(y))
            })?;
        }
        for a in r.elements() {
            ensure(holds_relative(r, s2, a, Property::SVnr), || {
                format!("{} is not s²-vNr", r.name(a))
            })?;
        }
        Ok(())
    };
    run().into()
}

pub fn zero_divisor_idempotent_check_all(an: &Analysis) -> Outcome {
    let mut out = Outcome::NotApplicable("no s meets the hypothesis".into());
    for s in an.set.iter() {
        out = out.and_then(|| zero_divisor_idempotent_check(an, s));
    }
    out
}

/// Equivalences and implications between the reduced variants, as usually
/// stated: weakly S-reduced ⇔ S-nil(R) is S-torsion; uniformly S-reduced ⇔
/// some s-nil(R) is uniformly S-torsion; reduced ⇒ S-reduced ⇒ weakly
/// S-reduced; uniformly S-reduced ⇒ weakly S-reduced; reduced ⇒ uniformly
/// S-reduced.
///
/// The step reduced ⇒ S-reduced needs S ⊆ reg(R) (see
/// [`s_reduced_characterization_check`]); Z6 with S = {1, 3} breaks it.
pub fn reduced_equivalences_check(an: &Analysis, rep: &ClassificationReport) -> Outcome {
    let r = an.ring;
    let e = &an.sets;
    let s_nil_torsion = e.s_nil.iter().all(|a| is_s_zero(an, a));
    let s_nil_uniform = e.per_s.iter().any(|rel| {
        an.set
            .iter()
            .any(|t| rel.nil.iter().all(|a| r.mul(t, a) == r.zero()))
    });
    let (red, sred, wred, ured) = (
        rep.reduced.holds,
        rep.s_reduced.holds,
        rep.weakly_s_reduced.holds,
        rep.uniformly_s_reduced.holds,
    );
    let run = || -> std::result::Result<(), String> {
        ensure(wred == s_nil_torsion, || {
            format!("weakly S-reduced = {wred}, S-nil S-torsion = {s_nil_torsion}")
        })?;
        ensure(ured == s_nil_uniform, || {
            format!(
                "uniformly S-reduced = {ured}, some s-nil uniformly S-torsion = {s_nil_uniform}"
            )
        })?;
        ensure(!sred || wred, || {
            "S-reduced but not weakly S-reduced".into()
        })?;
        ensure(!ured || wred, || {
            "uniformly S-reduced but not weakly S-reduced".into()
        })?;
        ensure(!red || ured, || {
            "reduced but not uniformly S-reduced".into()
        })?;
        ensure(!red || sred, || {
            let a = (e.s_nil - ElemSet::singleton(r.zero()))
                .first()
                .expect("S-nil(R) is nonzero");
            let w = crate::elements::witness_for(r, &an.set, a, Property::SNilpotent)
                .expect("a is S-nilpotent");
            format!("reduced but not S-reduced: {}", w.describe(r))
        })?;
        Ok(())
    };
    run().into()
}

/// S-reduced ⇔ reduced and S ⊆ reg(R).
pub fn s_reduced_characterization_check(an: &Analysis, rep: &ClassificationReport) -> Outcome {
    let s_regular = an.set.iter().all(|s| !an.ring.is_zero_divisor(s));
    let rhs = rep.reduced.holds && s_regular;
    if rep.s_reduced.holds == rhs {
        Outcome::Holds
    } else {
        Outcome::Violated(format!(
            "S-reduced = {}, reduced with S regular = {rhs}",
            rep.s_reduced.holds
        ))
    }
}

/// Implications between the ring classes, and their collapse at S = u(R).
pub fn class_hierarchy_check(an: &Analysis, rep: &ClassificationReport) -> Outcome {
    let r = an.ring;
    let units_only = an.set.members() == an.classical.units;
    let one_serves_boolean = (r.carrier() - an.classical.idem).is_empty();
    let run = || -> std::result::Result<(), String> {
        ensure(
            !rep.uniformly_s_boolean.holds || rep.s_boolean.holds,
            || "uniformly S-Boolean but not S-Boolean".into(),
        )?;
        ensure(
            !rep.uniformly_s_boolean.holds || rep.uniformly_s_vnr.holds,
            || "uniformly S-Boolean but not uniformly S-vNr".into(),
        )?;
        ensure(
            !rep.uniformly_s_vnr.holds || rep.uniformly_s_pi_regular.holds,
            || "uniformly S-vNr but not uniformly S-π-regular".into(),
        )?;
        ensure(
            !rep.pi_regular.holds || rep.uniformly_s_pi_regular.holds,
            || "π-regular but not uniformly S-π-regular".into(),
        )?;
        ensure(
            !rep.boolean.holds || (one_serves_boolean && rep.uniformly_s_boolean.holds),
            || "Boolean but one is not a uniform S-Boolean witness".into(),
        )?;
        if units_only {
            ensure(rep.uniformly_s_vnr.holds == rep.vnr.holds, || {
                "S = u(R): uniformly S-vNr differs from vNr".into()
            })?;
            ensure(
                rep.uniformly_s_pi_regular.holds == rep.pi_regular.holds,
                || "S = u(R): uniformly S-π-regular differs from π-regular".into(),
            )?;
        }
        Ok(())
    };
    run().into()
}
