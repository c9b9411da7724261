//! Runs every proposition check over a fixed corpus and tallies the outcomes.

use std::collections::BTreeSet;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::check::Outcome;
use crate::classify::{
    boolean_decomposition_check, class_hierarchy_check, classify, max_relative_check,
    reduced_equivalences_check, replay_report, s_field_equivalence_check,
    s_reduced_characterization_check, zero_divisor_idempotent_check_all,
};
use crate::elements::{
    element_sets, inclusion_chain_check, multiplicative_closure_check, sum_closure_check,
    torsion_intersection_check, vnr_characterization_all, weak_inverse_check,
    weakly_reduced_consequence_check, Analysis,
};
use crate::error::{Error, Result};
use crate::ideals::{
    all_ideals, primary_implies_maximal_check, s_maximal_is_prime_check, sandwich_check_all,
    IdealReport, PrimaryHypothesis,
};
use crate::localize::{
    artinian_conclusion_check, canonical_map_check, localize, pi_regular_bridge_check,
    vnr_bridge_check,
};
use crate::mult_set::{one_set, units_set, MultiplicativeSet};
use crate::ring::{
    direct_product, ideal_span, is_isomorphic, quotient, trivial_extension, truncated_poly, zn,
    FiniteRing, Ideal, ProductRing, RingHom,
};
use crate::search::{corpus_sets, distinct_indices, CorpusConfig, CorpusRing, Family};
use crate::transfer::{
    hom_transfer_check, hom_transfer_restricted_check, product_class_equivalences,
    product_class_transfer, product_idem_for_product_sets, product_idem_inclusion,
    product_per_s_equalities, product_reduced_equivalences, product_set_equalities, ProductData,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Once per ring.
    Ring,
    /// Once per (ring, S) pair.
    Pair,
    /// Once per (product ring, S) pair, products kept even when isomorphic
    /// to an earlier ring.
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Proposition {
    pub id: &'static str,
    pub statement: &'static str,
    pub scope: Scope,
    /// Report-only entries never fail a run.
    pub asserted: bool,
}

const fn prop(id: &'static str, scope: Scope, statement: &'static str) -> Proposition {
    Proposition {
        id,
        statement,
        scope,
        asserted: true,
    }
}

pub const PROPOSITIONS: &[Proposition] = &[
    prop("classical-collapse", Scope::Ring, "S = {1} gives idem, vnr, π-reg and nil exactly; S = u(R) gives S-idem(R) = vnr(R)"),
    prop("localize-trivial", Scope::Ring, "R localized at {1} or at u(R) is isomorphic to R"),
    prop("max-intersections", Scope::Ring, "{0}, u(R), nil(R), vnr(R) are the intersections of the R∖M-relative sets over Max(R); idem(R) ⊆ ⋂ M-idem(R) ⊆ vnr(R)"),
    prop("inclusion-chains", Scope::Pair, "S ⊆ S-u; idem ∪ S ⊆ S-idem ⊆ S ∪ Z; vnr ∪ S-u ∪ S-idem ⊆ S-vnr ⊆ S-u ∪ Z; π-reg ∪ S-vnr ∪ S-nil ⊆ S-π-reg ⊆ S-u ∪ Z"),
    prop("multiplicative-closure", Scope::Pair, "S-u, S-idem, S-vnr, S-π-reg are multiplicatively closed; ab ∈ S-u ⇒ a ∈ S-u; e s-idempotent ⇒ s − e s-idempotent; sa = a²b ⇒ ab ∈ S-idem"),
    prop("torsion-intersections", Scope::Pair, "S-vnr ∩ S-nil is S-torsion; s-vnr ∩ t-nil is uniformly S-torsion"),
    prop("vnr-five-way", Scope::Pair, "the five characterizations of S-vNr agree on every element"),
    prop("weak-inverse", Scope::Pair, "each S-vNr element has x with a²x = s²a, x²a = s²x, unique up to s⁴"),
    prop("two-invertible-sums", Scope::Pair, "when 2 ∈ S-u(R): s·a is a sum of two S-invertibles for a ∈ S-vnr, and the subring conditions agree"),
    prop("weakly-reduced-consequence", Scope::Pair, "S-vnr(R) a subring ⇒ weakly S-reduced; some s-vnr(R) a subring ⇒ uniformly S-reduced"),
    prop("classification-replay", Scope::Pair, "every classification witness and counterexample replays"),
    prop("s-field-equivalence", Scope::Pair, "(0) S-maximal ⇔ some s makes every element s-invertible or s-zero"),
    prop("idem-nil-decomposition", Scope::Pair, "S ∩ u(R) = {1}: R = S-idem ∪ nil ⇔ S-Boolean"),
    prop("zero-divisor-idempotent", Scope::Pair, "Z(R) ⊆ s-idem(R) ⇒ s²y ∈ S for regular y and R uniformly s²-vNr"),
    prop("reduced-equivalences", Scope::Pair, "weakly S-reduced ⇔ S-nil S-torsion; uniformly S-reduced ⇔ some s-nil uniformly S-torsion; reduced ⇒ S-reduced ⇒ weakly S-reduced; uniformly ⇒ weakly; reduced ⇒ uniformly S-reduced"),
    prop("s-reduced-characterization", Scope::Pair, "S-reduced ⇔ reduced and S ⊆ reg(R)"),
    prop("class-hierarchy", Scope::Pair, "uniformly S-Boolean ⇒ S-Boolean and ⇒ uniformly S-vNr ⇒ uniformly S-π-regular; π-regular ⇒ uniformly S-π-regular; Boolean ⇒ uniformly S-Boolean"),
    prop("s-maximal-prime", Scope::Pair, "S-maximal ideals are S-prime"),
    prop("primary-maximal-s-boolean", Scope::Pair, "R S-Boolean: S-primary ideals disjoint from S are S-maximal and S-prime"),
    prop("primary-maximal-uniformly-s-boolean", Scope::Pair, "R uniformly S-Boolean: S-primary ideals disjoint from S are S-maximal and S-prime"),
    prop("primary-maximal-uniformly-s-vnr", Scope::Pair, "R uniformly S-vNr: S-primary ideals disjoint from S are S-maximal and S-prime"),
    Proposition {
        id: "primary-maximal-every-s-vnr",
        statement: "every element S-vNr: S-primary ideals disjoint from S are S-maximal (open, reported only)",
        scope: Scope::Pair,
        asserted: false,
    },
    prop("sandwich", Scope::Pair, "R uniformly S-Boolean by an idempotent s, I ∩ S = ∅, J the intersection of the S-maximal ideals over I: sJ ⊆ I ⊆ J"),
    prop("pi-regular-bridge", Scope::Pair, "every element S-π-regular ⇔ R_S π-regular, elementwise through the canonical map"),
    prop("vnr-bridge", Scope::Pair, "every element S-vNr ⇔ R_S von Neumann regular, elementwise through the canonical map"),
    prop("artinian-conclusion", Scope::Pair, "R_S is π-regular and every element is S-π-regular"),
    prop("canonical-map", Scope::Pair, "R → R_S is a homomorphism, sends S to units, has kernel the S-zero elements and |R_S| ≤ |R|·|S|"),
    prop("hom-transfer-quotient", Scope::Pair, "for every quotient map f: f(X_S) = X_{f(S)} for S-u, S-idem, S-vnr, S-π-reg, globally and per s"),
    prop("hom-transfer-quotient-restricted", Scope::Pair, "for every quotient map f: f(X_S) ⊆ X_{f(S)} for the four sets, with equality for S-u, S-vnr, S-π-reg, globally and per s"),
    prop("hom-transfer-projection", Scope::Product, "for every projection of a product: f(X_S) = X_{f(S)}, globally and per s"),
    prop("product-sets", Scope::Product, "X_S(∏R_i) = ∏X_{S_i}(R_i) for S-u, S-idem, S-vnr, S-π-reg, S-nil"),
    prop("product-idem-product-sets", Scope::Product, "S a product of sets: S-idem(∏R_i) = ∏S_i-idem(R_i) and S-Boolean ⇔ every factor S_i-Boolean"),
    prop("product-idem-inclusion", Scope::Product, "S-idem(∏R_i) ⊆ ∏S_i-idem(R_i)"),
    prop("product-per-s", Scope::Product, "X_s(∏R_i) = ∏X_{s_i}(R_i) for every s ∈ S and every property"),
    prop("product-classes", Scope::Product, "∏R_i is (uniformly) S-Boolean, uniformly S-vNr, uniformly S-π-regular ⇔ every factor is"),
    prop("product-class-transfer", Scope::Product, "each class passes to the factors; with S a product of sets, all but uniformly S-Boolean pass back"),
    prop("product-reduced", Scope::Product, "∏R_i is S-reduced, weakly or uniformly S-reduced ⇔ every factor is"),
];

pub fn proposition(id: &str) -> Option<&'static Proposition> {
    PROPOSITIONS.iter().find(|p| p.id == id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusKind {
    Small,
    Std,
}

impl FromStr for CorpusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "small" => Ok(CorpusKind::Small),
            "std" => Ok(CorpusKind::Std),
            other => Err(Error::Usage(format!(
                "unknown corpus `{other}` (expected small or std)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub corpus: CorpusKind,
    pub seed: u64,
    /// `None` runs everything.
    pub props: Option<BTreeSet<&'static str>>,
}

impl VerifyConfig {
    pub fn new(corpus: CorpusKind) -> Self {
        VerifyConfig {
            corpus,
            seed: 0,
            props: None,
        }
    }

    /// Selects propositions from `all` or a comma-separated id list.
    pub fn with_props(mut self, list: &str) -> Result<Self> {
        if list.trim() == "all" {
            self.props = None;
            return Ok(self);
        }
        let mut chosen = BTreeSet::new();
        for id in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let p = proposition(id).ok_or_else(|| Error::UnknownProposition(id.to_string()))?;
            chosen.insert(p.id);
        }
        self.props = Some(chosen);
        Ok(self)
    }

    fn wants(&self, id: &str) -> bool {
        self.props.as_ref().is_none_or(|p| p.contains(id))
    }

    fn wants_scope(&self, scope: Scope) -> bool {
        PROPOSITIONS
            .iter()
            .any(|p| p.scope == scope && self.wants(p.id))
    }

    fn corpus_config(&self) -> CorpusConfig {
        CorpusConfig {
            families: Family::ALL.into_iter().collect(),
            exhaustive_up_to: 12,
            samples_per_ring: 32,
            seed: self.seed,
            max_ring_size: 25,
        }
    }
}

/// The corpus rings: `Z1..Z24`, `Za x Zb` for `2 ≤ a ≤ b ≤ 5`, `Z2³`,
/// `poly(Z2,2)`, `poly(Z2,3)`, `poly(Z2 x Z2,2)` and its quotient by
/// `(1,0)*x`, `triv(Z2,[1])` and `triv(Z4,[2])`. The small corpus keeps those
/// with at most 12 elements, plus the 8-element quotient.
pub fn corpus_rings(kind: CorpusKind) -> Result<Vec<CorpusRing>> {
    let cap = match kind {
        CorpusKind::Small => 12,
        CorpusKind::Std => 25,
    };
    let z2 = zn(2)?;
    let mut out = Vec::new();
    let plain = |ring, family| CorpusRing {
        ring,
        family,
        product: None,
    };
    for n in 1..=24.min(cap) {
        out.push(plain(zn(n)?, Family::Zn));
    }
    for a in 2..=5 {
        for b in a..=5 {
            if a * b <= cap {
                let p = ProductRing::new(vec![zn(a)?, zn(b)?])?;
                out.push(CorpusRing {
                    ring: p.ring().clone(),
                    family: Family::Products,
                    product: Some(p),
                });
            }
        }
    }
    let cube = ProductRing::new(vec![z2.clone(), z2.clone(), z2.clone()])?;
    out.push(CorpusRing {
        ring: cube.ring().clone(),
        family: Family::Products,
        product: Some(cube),
    });
    out.push(plain(truncated_poly(&z2, 2)?, Family::TruncatedPoly));
    out.push(plain(truncated_poly(&z2, 3)?, Family::TruncatedPoly));
    let t = truncated_poly(&direct_product(&[z2.clone(), z2.clone()])?, 2)?;
    let g = t.find("(1,0)*x").expect("named element");
    let q = quotient(&t, &ideal_span(&t, [g]))?.0;
    if t.size() <= cap {
        out.push(plain(t, Family::TruncatedPoly));
    }
    out.push(plain(q, Family::Quotients));
    out.push(plain(
        trivial_extension(&z2, &Ideal::whole(&z2))?,
        Family::TrivialExt,
    ));
    let z4 = zn(4)?;
    out.push(plain(
        trivial_extension(&z4, &ideal_span(&z4, [2]))?,
        Family::TrivialExt,
    ));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub asserted: bool,
    /// Instances where the hypothesis held and the statement was tested.
    pub checked: usize,
    pub not_applicable: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl PropositionReport {
    pub fn passed(&self) -> bool {
        !self.asserted || self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub corpus: CorpusKind,
    pub seed: u64,
    pub rings: usize,
    pub distinct_rings: usize,
    pub pairs: usize,
    pub product_pairs: usize,
    /// Pairs whose S came from sampling rather than full enumeration.
    pub sampled_pairs: usize,
    pub propositions: Vec<PropositionReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.propositions.iter().all(PropositionReport::passed)
    }

    pub fn get(&self, id: &str) -> Option<&PropositionReport> {
        self.propositions.iter().find(|p| p.id == id)
    }
}

struct Record {
    id: &'static str,
    outcome: Outcome,
    context: String,
}

struct Sink<'a> {
    config: &'a VerifyConfig,
    records: Vec<Record>,
}

impl Sink<'_> {
    fn run(
        &mut self,
        id: &'static str,
        context: impl Fn() -> String,
        check: impl FnOnce() -> Outcome,
    ) {
        debug_assert!(proposition(id).is_some(), "{id}");
        if !self.config.wants(id) {
            return;
        }
        let outcome = check();
        let context = if outcome.is_violated() {
            context()
        } else {
            String::new()
        };
        self.records.push(Record {
            id,
            outcome,
            context,
        });
    }
}

struct RingData {
    ring: CorpusRing,
    lattice: Vec<Ideal>,
    quotients: Vec<(FiniteRing, RingHom)>,
    sets: Vec<MultiplicativeSet>,
    sampled: bool,
    distinct: bool,
}

enum Job<'a> {
    Ring(&'a RingData),
    Pair(&'a RingData, &'a MultiplicativeSet),
    Product(&'a ProductRing, &'a MultiplicativeSet),
}

pub fn verify(config: &VerifyConfig) -> Result<VerifyReport> {
    let rings = corpus_rings(config.corpus)?;
    let distinct: BTreeSet<usize> = distinct_indices(&rings).into_iter().collect();
    let corpus_config = config.corpus_config();
    let data = rings
        .into_iter()
        .enumerate()
        .map(|(i, ring)| {
            let lattice = all_ideals(&ring.ring)?;
            let quotients = lattice
                .iter()
                .filter(|i| i.is_proper(&ring.ring))
                .map(|i| quotient(&ring.ring, i))
                .collect::<Result<Vec<_>>>()?;
            let (sets, sampled) = corpus_sets(&corpus_config, &ring.ring)?;
            Ok(RingData {
                ring,
                lattice,
                quotients,
                sets,
                sampled,
                distinct: distinct.contains(&i),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut jobs = Vec::new();
    for d in data.iter().filter(|d| d.distinct) {
        if config.wants_scope(Scope::Ring) {
            jobs.push(Job::Ring(d));
        }
        if config.wants_scope(Scope::Pair) {
            jobs.extend(d.sets.iter().map(|s| Job::Pair(d, s)));
        }
    }
    if config.wants_scope(Scope::Product) {
        for d in &data {
            if let Some(p) = &d.ring.product {
                jobs.extend(d.sets.iter().map(|s| Job::Product(p, s)));
            }
        }
    }

    let results: Vec<Vec<Record>> = jobs.par_iter().map(|job| run_job(config, job)).collect();

    let mut reports: Vec<PropositionReport> = PROPOSITIONS
        .iter()
        .filter(|p| config.wants(p.id))
        .map(|p| PropositionReport {
            id: p.id,
            statement: p.statement,
            asserted: p.asserted,
            checked: 0,
            not_applicable: 0,
            violations: 0,
            first_violation: None,
        })
        .collect();
    for rec in results.into_iter().flatten() {
        let r = reports
            .iter_mut()
            .find(|r| r.id == rec.id)
            .expect("registered proposition");
        match rec.outcome {
            Outcome::Holds => r.checked += 1,
            Outcome::NotApplicable(_) => r.not_applicable += 1,
            Outcome::Violated(detail) => {
                r.checked += 1;
                r.violations += 1;
                if r.first_violation.is_none() {
                    r.first_violation = Some(format!("{}: {detail}", rec.context));
                }
            }
        }
    }

    let distinct_data = data.iter().filter(|d| d.distinct);
    Ok(VerifyReport {
        corpus: config.corpus,
        seed: config.seed,
        rings: data.len(),
        distinct_rings: distinct.len(),
        pairs: distinct_data.clone().map(|d| d.sets.len()).sum(),
        product_pairs: data
            .iter()
            .filter(|d| d.ring.product.is_some())
            .map(|d| d.sets.len())
            .sum(),
        sampled_pairs: distinct_data
            .filter(|d| d.sampled)
            .map(|d| d.sets.len())
            .sum(),
        propositions: reports,
    })
}

fn run_job(config: &VerifyConfig, job: &Job) -> Vec<Record> {
    let mut sink = Sink {
        config,
        records: Vec::new(),
    };
    match *job {
        Job::Ring(d) => ring_checks(&mut sink, d),
        Job::Pair(d, s) => pair_checks(&mut sink, d, s),
        Job::Product(p, s) => product_checks(&mut sink, p, s),
    }
    sink.records
}

fn ring_checks(sink: &mut Sink, d: &RingData) {
    let r = &d.ring.ring;
    let ctx = || r.label().to_string();
    sink.run("classical-collapse", ctx, || {
        let c = r.classical_sets();
        let one = element_sets(r, &one_set(r));
        let units = element_sets(r, &units_set(r));
        let pairs = [
            ("idem", one.s_idem, c.idem),
            ("vnr", one.s_vnr, c.vnr),
            ("π-reg", one.s_pireg, c.pi_reg),
            ("nil", one.s_nil, c.nil),
        ];
        for (name, got, want) in pairs {
            if got != want {
                return Outcome::Violated(format!(
                    "S = {{1}}: S-{name} = {} ≠ {}",
                    r.format_set(&got),
                    r.format_set(&want)
                ));
            }
        }
        if units.s_idem != c.vnr {
            return Outcome::Violated(format!(
                "S = u(R): S-idem = {} ≠ vnr = {}",
                r.format_set(&units.s_idem),
                r.format_set(&c.vnr)
            ));
        }
        Outcome::Holds
    });
    sink.run("localize-trivial", ctx, || {
        for (name, set) in [("{1}", one_set(r)), ("u(R)", units_set(r))] {
            let loc = localize(r, &set);
            if !is_isomorphic(loc.ring(), r) {
                return Outcome::Violated(format!(
                    "R localized at {name} has {} elements and is not isomorphic to R",
                    loc.ring().size()
                ));
            }
        }
        Outcome::Holds
    });
    sink.run("max-intersections", ctx, || {
        max_relative_check(r, &d.lattice)
    });
}

fn pair_checks(sink: &mut Sink, d: &RingData, s: &MultiplicativeSet) {
    let r = &d.ring.ring;
    let ctx = || format!("{} with S = {}", r.label(), s.describe(r));
    let an = Analysis::new(r, s);
    let ideals = IdealReport::with_lattice(r, s, d.lattice.clone());
    let rep = classify(&an, &ideals);
    sink.run("inclusion-chains", ctx, || inclusion_chain_check(&an));
    sink.run("multiplicative-closure", ctx, || {
        multiplicative_closure_check(&an)
    });
    sink.run("torsion-intersections", ctx, || {
        torsion_intersection_check(&an)
    });
    sink.run("vnr-five-way", ctx, || vnr_characterization_all(&an));
    sink.run("weak-inverse", ctx, || weak_inverse_check(&an));
    sink.run("two-invertible-sums", ctx, || sum_closure_check(&an));
    sink.run("weakly-reduced-consequence", ctx, || {
        weakly_reduced_consequence_check(&an)
    });
    sink.run("classification-replay", ctx, || replay_report(r, s, &rep));
    sink.run("s-field-equivalence", ctx, || {
        s_field_equivalence_check(&an, &ideals)
    });
    sink.run("idem-nil-decomposition", ctx, || {
        boolean_decomposition_check(&an)
    });
    sink.run("zero-divisor-idempotent", ctx, || {
        zero_divisor_idempotent_check_all(&an)
    });
    sink.run("reduced-equivalences", ctx, || {
        reduced_equivalences_check(&an, &rep)
    });
    sink.run("s-reduced-characterization", ctx, || {
        s_reduced_characterization_check(&an, &rep)
    });
    sink.run("class-hierarchy", ctx, || class_hierarchy_check(&an, &rep));
    sink.run("s-maximal-prime", ctx, || {
        s_maximal_is_prime_check(&an, &ideals)
    });
    let hyps = [
        ("primary-maximal-s-boolean", PrimaryHypothesis::SBoolean),
        (
            "primary-maximal-uniformly-s-boolean",
            PrimaryHypothesis::UniformlySBoolean,
        ),
        (
            "primary-maximal-uniformly-s-vnr",
            PrimaryHypothesis::UniformlySVnr,
        ),
        (
            "primary-maximal-every-s-vnr",
            PrimaryHypothesis::EveryElementSVnr,
        ),
    ];
    for (id, hyp) in hyps {
        sink.run(id, ctx, || primary_implies_maximal_check(&an, &ideals, hyp));
    }
    sink.run("sandwich", ctx, || sandwich_check_all(&an, &ideals));
    let wants_loc = [
        "pi-regular-bridge",
        "vnr-bridge",
        "artinian-conclusion",
        "canonical-map",
    ]
    .iter()
    .any(|id| sink.config.wants(id));
    if wants_loc {
        let loc = localize(r, s);
        sink.run("pi-regular-bridge", ctx, || {
            pi_regular_bridge_check(&an, &loc)
        });
        sink.run("vnr-bridge", ctx, || vnr_bridge_check(&an, &loc));
        sink.run("artinian-conclusion", ctx, || {
            artinian_conclusion_check(&an, &loc)
        });
        sink.run("canonical-map", ctx, || canonical_map_check(&an, &loc));
    }
    let quotient_checks: [(&'static str, HomCheck); 2] = [
        ("hom-transfer-quotient", hom_transfer_check),
        (
            "hom-transfer-quotient-restricted",
            hom_transfer_restricted_check,
        ),
    ];
    for (id, check) in quotient_checks {
        sink.run(id, ctx, || {
            let mut out = Outcome::NotApplicable("every quotient sends some s to 0".into());
            for (q, f) in &d.quotients {
                out = out.and_then(|| match check(r, q, f, s) {
                    Outcome::Violated(m) => Outcome::Violated(format!("onto {}: {m}", q.label())),
                    other => other,
                });
                if out.is_violated() {
                    break;
                }
            }
            out
        });
    }
}

type HomCheck = fn(&FiniteRing, &FiniteRing, &RingHom, &MultiplicativeSet) -> Outcome;

fn product_checks(sink: &mut Sink, p: &ProductRing, s: &MultiplicativeSet) {
    let r = p.ring();
    let ctx = || format!("{} with S = {}", r.label(), s.describe(r));
    sink.run("hom-transfer-projection", ctx, || {
        let mut out = Outcome::NotApplicable("every projection sends some s to 0".into());
        for i in 0..p.arity() {
            out = out.and_then(|| hom_transfer_check(r, &p.factors()[i], &p.projection(i), s));
            if out.is_violated() {
                break;
            }
        }
        out
    });
    let data = ProductData::new(p, s);
    sink.run("product-sets", ctx, || product_set_equalities(&data));
    sink.run("product-idem-product-sets", ctx, || {
        product_idem_for_product_sets(&data)
    });
    sink.run("product-idem-inclusion", ctx, || {
        product_idem_inclusion(&data)
    });
    sink.run("product-per-s", ctx, || product_per_s_equalities(&data));
    sink.run("product-classes", ctx, || product_class_equivalences(&data));
    sink.run("product-class-transfer", ctx, || {
        product_class_transfer(&data)
    });
    sink.run("product-reduced", ctx, || {
        product_reduced_equivalences(&data)
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let ids: BTreeSet<&str> = PROPOSITIONS.iter().map(|p| p.id).collect();
        assert_eq!(ids.len(), PROPOSITIONS.len());
    }

    #[test]
    fn prop_selection() {
        let cfg = VerifyConfig::new(CorpusKind::Small)
            .with_props("sandwich, vnr-bridge")
            .unwrap();
        assert!(cfg.wants("sandwich") && !cfg.wants("product-sets"));
        assert!(matches!(
            VerifyConfig::new(CorpusKind::Small).with_props("nope"),
            Err(Error::UnknownProposition(_))
        ));
    }

    #[test]
    fn small_corpus_selected_props() {
        let cfg = VerifyConfig::new(CorpusKind::Small)
            .with_props("inclusion-chains,vnr-bridge,product-per-s,classical-collapse")
            .unwrap();
        let rep = verify(&cfg).unwrap();
        assert_eq!(rep.propositions.len(), 4);
        assert!(rep.passed(), "{rep:#?}");
        assert_eq!(rep.sampled_pairs, 0);
        for p in &rep.propositions {
            assert!(p.checked > 0, "{}", p.id);
        }
    }

    #[test]
    fn reduced_chain_fails_on_the_small_corpus() {
        let cfg = VerifyConfig::new(CorpusKind::Small)
            .with_props("reduced-equivalences,s-reduced-characterization")
            .unwrap();
        let rep = verify(&cfg).unwrap();
        let literal = rep.get("reduced-equivalences").unwrap();
        assert!(literal.violations > 0);
        assert!(literal
            .first_violation
            .as_ref()
            .unwrap()
            .contains("reduced but not S-reduced"));
        assert_eq!(rep.get("s-reduced-characterization").unwrap().violations, 0);
    }
}
