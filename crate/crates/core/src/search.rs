//! Corpus generation and counterexample mining for the open questions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::check::Outcome;
use crate::classify::{classify, decomposition_status, reduced_equivalences_check};
use crate::elements::{sum_closure_status, Analysis};
use crate::error::{Error, Result};
use crate::ideals::{primary_implies_maximal_check, IdealReport, PrimaryHypothesis};
use crate::mult_set::{all_mult_subsets_capped, closure, sample_mult_subsets, MultiplicativeSet};
use crate::ring::{
    direct_product, ideal_span, is_isomorphic, quotient, trivial_extension, truncated_poly, zn,
    FiniteRing, ProductRing,
};
use crate::ring_spec::{parse_elements, parse_ring_spec};
use crate::transfer::{product_class_equivalences, product_set_equalities, ProductData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Zn,
    Products,
    TruncatedPoly,
    Quotients,
    TrivialExt,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Zn,
        Family::Products,
        Family::TruncatedPoly,
        Family::Quotients,
        Family::TrivialExt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Zn => "zn",
            Family::Products => "products",
            Family::TruncatedPoly => "truncated_poly",
            Family::Quotients => "quotients",
            Family::TrivialExt => "trivial_ext",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| Error::Usage(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusConfig {
    pub max_ring_size: usize,
    pub families: BTreeSet<Family>,
    /// Rings up to this size get every strict multiplicative set.
    pub exhaustive_up_to: usize,
    /// Sampled sets per larger ring.
    pub samples_per_ring: usize,
    pub seed: u64,
}

impl CorpusConfig {
    pub fn new(max_ring_size: usize) -> Self {
        CorpusConfig {
            max_ring_size,
            families: Family::ALL.into_iter().collect(),
            exhaustive_up_to: 12,
            samples_per_ring: 32,
            seed: 0,
        }
    }
}

/// A corpus ring; products keep their factors.
#[derive(Debug, Clone)]
pub struct CorpusRing {
    pub ring: FiniteRing,
    pub family: Family,
    pub product: Option<ProductRing>,
}

impl CorpusRing {
    fn plain(ring: FiniteRing, family: Family) -> Self {
        CorpusRing {
            ring,
            family,
            product: None,
        }
    }

    fn product(p: ProductRing) -> Self {
        CorpusRing {
            ring: p.ring().clone(),
            family: Family::Products,
            product: Some(p),
        }
    }
}

/// The rings of each configured family up to the size cap, before
/// isomorphism dedup, in family order.
pub fn corpus_rings(config: &CorpusConfig) -> Result<Vec<CorpusRing>> {
    let max = config.max_ring_size;
    let mut out = Vec::new();
    for family in &config.families {
        match family {
            Family::Zn => {
                for n in 1..=max {
                    out.push(CorpusRing::plain(zn(n)?, Family::Zn));
                }
            }
            Family::Products => {
                for a in 2..=5 {
                    for b in a..=5 {
                        if a * b <= max {
                            out.push(CorpusRing::product(ProductRing::new(vec![zn(a)?, zn(b)?])?));
                        }
                    }
                }
                if max >= 8 {
                    let z2 = zn(2)?;
                    out.push(CorpusRing::product(ProductRing::new(vec![
                        z2.clone(),
                        z2.clone(),
                        z2,
                    ])?));
                }
            }
            Family::TruncatedPoly => {
                for (m, k) in [(2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (5, 2)] {
                    if usize::pow(m, k as u32) <= max {
                        out.push(CorpusRing::plain(
                            truncated_poly(&zn(m)?, k)?,
                            Family::TruncatedPoly,
                        ));
                    }
                }
                if max >= 16 {
                    let base = direct_product(&[zn(2)?, zn(2)?])?;
                    out.push(CorpusRing::plain(
                        truncated_poly(&base, 2)?,
                        Family::TruncatedPoly,
                    ));
                }
            }
            Family::Quotients => {
                // principal quotients of poly(Z2 x Z2, 2)
                let base = truncated_poly(&direct_product(&[zn(2)?, zn(2)?])?, 2)?;
                let mut seen = BTreeSet::new();
                for g in base.elements() {
                    let ideal = ideal_span(&base, [g]);
                    let size = base.size() / ideal.len();
                    if ideal.len() > 1
                        && ideal.is_proper(&base)
                        && size <= max
                        && seen.insert(ideal.members())
                    {
                        out.push(CorpusRing::plain(
                            quotient(&base, &ideal)?.0,
                            Family::Quotients,
                        ));
                    }
                }
            }
            Family::TrivialExt => {
                for (n, d) in [(2, 1), (4, 2), (3, 1), (6, 3), (6, 2), (4, 1)] {
                    let r = zn(n)?;
                    let module = ideal_span(&r, [d]);
                    if n * module.len() <= max {
                        out.push(CorpusRing::plain(
                            trivial_extension(&r, &module)?,
                            Family::TrivialExt,
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Indices of the first ring in each isomorphism class.
pub fn distinct_indices(rings: &[CorpusRing]) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    for (i, r) in rings.iter().enumerate() {
        if !kept.iter().any(|&j| is_isomorphic(&rings[j].ring, &r.ring)) {
            kept.push(i);
        }
    }
    kept
}

fn label_seed(seed: u64, label: &str) -> u64 {
    label.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// The multiplicative sets paired with `ring`: all strict ones for small
/// rings, a seeded sample otherwise. The flag says which.
pub fn corpus_sets(
    config: &CorpusConfig,
    ring: &FiniteRing,
) -> Result<(Vec<MultiplicativeSet>, bool)> {
    if ring.size() <= config.exhaustive_up_to {
        Ok((
            all_mult_subsets_capped(ring, true, config.exhaustive_up_to)?,
            false,
        ))
    } else {
        Ok((
            sample_mult_subsets(
                ring,
                config.samples_per_ring,
                label_seed(config.seed, ring.label()),
            ),
            true,
        ))
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub ring: CorpusRing,
    pub sets: Vec<MultiplicativeSet>,
    pub sampled: bool,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    /// The (ring, S) pairs in corpus order.
    pub fn pairs(&self) -> impl Iterator<Item = (&FiniteRing, &MultiplicativeSet)> {
        self.entries
            .iter()
            .flat_map(|e| e.sets.iter().map(move |s| (&e.ring.ring, s)))
    }

    pub fn len(&self) -> usize {
        self.entries.iter().map(|e| e.sets.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Isomorphism-deduplicated rings of the configured families, each with its
/// multiplicative sets.
pub fn enumerate_corpus(config: &CorpusConfig) -> Result<Corpus> {
    let rings = corpus_rings(config)?;
    let entries = distinct_indices(&rings)
        .into_iter()
        .map(|i| {
            let ring = rings[i].clone();
            let (sets, sampled) = corpus_sets(config, &ring.ring)?;
            Ok(CorpusEntry {
                ring,
                sets,
                sampled,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Corpus { entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Target {
    SvnrAdditiveClosure,
    IdemNilDecomp,
    HypothesisNecessity,
}

impl Target {
    pub const ALL: [Target; 3] = [
        Target::SvnrAdditiveClosure,
        Target::IdemNilDecomp,
        Target::HypothesisNecessity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::SvnrAdditiveClosure => "SVNR_ADDITIVE_CLOSURE",
            Target::IdemNilDecomp => "IDEM_NIL_DECOMP",
            Target::HypothesisNecessity => "HYPOTHESIS_NECESSITY",
        }
    }

    /// Whether a counterexample for this target should fail the run.
    /// Additive closure is a question, not a claim, so it never does.
    pub fn counterexamples_fail(self) -> bool {
        !matches!(self, Target::SvnrAdditiveClosure)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        Target::ALL
            .into_iter()
            .find(|t| t.name() == key)
            .ok_or_else(|| Error::UnknownTarget(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Counterexample,
    PositiveInstance,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Status of S-vnr(R) under addition with the correlates.
    AdditiveClosure {
        closed: bool,
        /// `a`, `b`, `a + b` with `a, b ∈ S-vnr(R)` and `a + b ∉ S-vnr(R)`.
        failure: Option<[String; 3]>,
        two_in_su: bool,
        weakly_s_reduced: bool,
    },
    /// `R = S-idem(R) ∪ S-nil(R)`; `element` is outside S-idem(R) when set.
    Decomposition { element: Option<String> },
    /// A statement checked with a hypothesis dropped.
    Violation { detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub target: Target,
    /// What was tested.
    pub claim: String,
    pub ring: String,
    pub s: String,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub seed: u64,
}

impl Finding {
    /// Rebuilds the ring and S from their text and re-derives the finding.
    pub fn replays(&self) -> Result<bool> {
        let ring = parse_ring_spec(&self.ring)?;
        let set = closure(&ring, parse_elements(&ring, &self.s)?, true)?;
        if set.describe(&ring) != self.s {
            return Ok(false);
        }
        if let Evidence::AdditiveClosure {
            failure: Some([a, b, sum]),
            ..
        } = &self.evidence
        {
            let an = Analysis::new(&ring, &set);
            let find = |n: &str| {
                ring.find(n)
                    .ok_or_else(|| Error::UnknownElement(n.to_string()))
            };
            let (a, b, sum) = (find(a)?, find(b)?, find(sum)?);
            let direct = ring.add(a, b) == sum
                && an.sets.s_vnr.contains(a)
                && an.sets.s_vnr.contains(b)
                && !an.sets.s_vnr.contains(sum);
            if !direct {
                return Ok(false);
            }
        }
        let product = product_of_label(&self.ring)?;
        let again = evaluate(self.target, &ring, product.as_ref(), &set, self.seed);
        Ok(again.contains(self))
    }
}

/// Rebuilds the factors of a two-or-more factor product label.
fn product_of_label(label: &str) -> Result<Option<ProductRing>> {
    match crate::ring_spec::parse(label)? {
        crate::ring_spec::RingSpec::Product(parts) => {
            let factors = parts
                .iter()
                .map(|p| p.build(crate::MAX_ELEMENTS))
                .collect::<Result<Vec<_>>>()?;
            Ok(Some(ProductRing::new(factors)?))
        }
        _ => Ok(None),
    }
}

/// The findings for one (ring, S) pair.
pub fn evaluate(
    target: Target,
    ring: &FiniteRing,
    product: Option<&ProductRing>,
    set: &MultiplicativeSet,
    seed: u64,
) -> Vec<Finding> {
    let an = Analysis::new(ring, set);
    let finding = |claim: &str, verdict: Verdict, evidence: Evidence| Finding {
        target,
        claim: claim.to_string(),
        ring: ring.label().to_string(),
        s: set.describe(ring),
        verdict,
        evidence,
        seed,
    };
    match target {
        Target::SvnrAdditiveClosure => {
            let st = sum_closure_status(&an);
            let nil_torsion = an
                .classical
                .nil
                .iter()
                .all(|a| set.iter().any(|t| ring.mul(t, a) == ring.zero()));
            let failure = st.addition_failure.map(|(a, b)| {
                [
                    ring.name(a).to_string(),
                    ring.name(b).to_string(),
                    ring.name(ring.add(a, b)).to_string(),
                ]
            });
            let verdict = if st.closed_under_addition {
                Verdict::PositiveInstance
            } else {
                Verdict::Counterexample
            };
            vec![finding(
                "S-vnr(R) is closed under addition",
                verdict,
                Evidence::AdditiveClosure {
                    closed: st.closed_under_addition,
                    failure,
                    two_in_su: st.two_in_su,
                    weakly_s_reduced: nil_torsion,
                },
            )]
        }
        Target::IdemNilDecomp => {
            let st = decomposition_status(&an);
            if !(st.only_unit_is_one && st.idem_s_nil_cover) {
                return Vec::new();
            }
            let element = st.non_s_idempotent.map(|a| ring.name(a).to_string());
            let verdict = if st.s_boolean {
                Verdict::PositiveInstance
            } else {
                Verdict::Counterexample
            };
            vec![finding(
                "S ∩ u(R) = {1} and R = S-idem(R) ∪ S-nil(R) imply R is S-Boolean",
                verdict,
                Evidence::Decomposition { element },
            )]
        }
        Target::HypothesisNecessity => hypothesis_findings(&an, product, &finding),
    }
}

fn hypothesis_findings(
    an: &Analysis,
    product: Option<&ProductRing>,
    finding: &dyn Fn(&str, Verdict, Evidence) -> Finding,
) -> Vec<Finding> {
    let ring = an.ring;
    let mut out = Vec::new();
    let mut push = |claim: &str, outcome: Outcome| {
        if let Outcome::Violated(detail) = outcome {
            out.push(finding(
                claim,
                Verdict::Counterexample,
                Evidence::Violation { detail },
            ));
        }
    };

    let st = decomposition_status(an);
    if !st.only_unit_is_one {
        if st.idem_nil_cover != st.s_boolean {
            push(
                "R = S-idem(R) ∪ nil(R) ⇔ S-Boolean, without S ∩ u(R) = {1}",
                Outcome::Violated(format!(
                    "cover = {}, S-Boolean = {}",
                    st.idem_nil_cover, st.s_boolean
                )),
            );
        }
        if st.idem_s_nil_cover && !st.s_boolean {
            let a = st.non_s_idempotent.expect("not S-Boolean");
            push(
                "R = S-idem(R) ∪ S-nil(R) ⇒ S-Boolean, without S ∩ u(R) = {1}",
                Outcome::Violated(format!("{} is not S-idempotent", ring.name(a))),
            );
        }
    }

    if let Ok(ideals) = IdealReport::new(ring, &an.set) {
        let rep = classify(an, &ideals);
        if let Outcome::Violated(d) = reduced_equivalences_check(an, &rep) {
            if d.starts_with("reduced but not S-reduced") {
                push(
                    "reduced ⇒ S-reduced, without S ⊆ reg(R)",
                    Outcome::Violated(d),
                );
            }
        }
        for v in &ideals.verdicts {
            if v.disjoint_from_s && v.s_primary.is_some() && v.s_maximal.is_none() {
                push(
                    "S-primary ⇒ S-maximal, with no hypothesis on R",
                    Outcome::Violated(format!(
                        "{} is S-primary, not S-maximal",
                        ring.format_set(&v.ideal)
                    )),
                );
                break;
            }
        }
        push(
            "S-primary ⇒ S-maximal when every element is S-vNr",
            primary_implies_maximal_check(an, &ideals, PrimaryHypothesis::EveryElementSVnr),
        );
    }

    if let Some(p) = product {
        let data = ProductData::new(p, &an.set);
        let claim = if data.is_product_set {
            "product sets and classes match the factors, S a product of sets"
        } else {
            "product sets and classes match the factors, S not a product of sets"
        };
        push(
            claim,
            product_set_equalities(&data).and_then(|| product_class_equivalences(&data)),
        );
    }
    out
}

/// Runs a target over the corpus, in corpus order.
pub fn find_instances(target: Target, config: &CorpusConfig) -> Result<Vec<Finding>> {
    let corpus = enumerate_corpus(config)?;
    let jobs: Vec<(&CorpusRing, &MultiplicativeSet)> = corpus
        .entries
        .iter()
        .flat_map(|e| e.sets.iter().map(move |s| (&e.ring, s)))
        .collect();
    Ok(jobs
        .par_iter()
        .map(|(r, s)| evaluate(target, &r.ring, r.product.as_ref(), s, config.seed))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mult_set::one_set;

    fn small(max: usize, families: &[Family]) -> CorpusConfig {
        CorpusConfig {
            families: families.iter().copied().collect(),
            ..CorpusConfig::new(max)
        }
    }

    #[test]
    fn zn_corpus_pairs() {
        let c = enumerate_corpus(&small(6, &[Family::Zn])).unwrap();
        let z6: Vec<String> = c
            .pairs()
            .filter(|(r, _)| r.label() == "Z6")
            .map(|(r, s)| s.describe(r))
            .collect();
        for want in ["{1, 5}", "{1, 3}", "{1, 2, 4}", "{1}"] {
            assert!(z6.iter().any(|s| s == want), "{want}");
        }
        assert!(enumerate_corpus(&small(6, &[])).unwrap().is_empty());
    }

    #[test]
    fn products_are_deduplicated() {
        let cfg = small(9, &[Family::Products]);
        let rings = corpus_rings(&cfg).unwrap();
        let labels: Vec<&str> = rings.iter().map(|r| r.ring.label()).collect();
        assert_eq!(
            labels,
            ["Z2 x Z2", "Z2 x Z3", "Z2 x Z4", "Z3 x Z3", "Z2 x Z2 x Z2"]
        );
        let mut with_z6 = small(9, &[Family::Zn, Family::Products]);
        with_z6.max_ring_size = 9;
        let c = enumerate_corpus(&with_z6).unwrap();
        let kept: Vec<&str> = c.entries.iter().map(|e| e.ring.ring.label()).collect();
        assert!(kept.contains(&"Z2 x Z2") && kept.contains(&"Z3 x Z3"));
        assert!(!kept.contains(&"Z2 x Z3"));
    }

    #[test]
    fn corpus_is_deterministic() {
        let cfg = CorpusConfig {
            exhaustive_up_to: 6,
            samples_per_ring: 5,
            seed: 9,
            ..CorpusConfig::new(10)
        };
        let a: Vec<String> = enumerate_corpus(&cfg)
            .unwrap()
            .pairs()
            .map(|(r, s)| s.describe(r))
            .collect();
        let b: Vec<String> = enumerate_corpus(&cfg)
            .unwrap()
            .pairs()
            .map(|(r, s)| s.describe(r))
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn z4_is_not_closed_under_addition() {
        let z4 = zn(4).unwrap();
        let got = evaluate(Target::SvnrAdditiveClosure, &z4, None, &one_set(&z4), 0);
        assert_eq!(got.len(), 1);
        let f = &got[0];
        assert_eq!(f.verdict, Verdict::Counterexample);
        match &f.evidence {
            Evidence::AdditiveClosure {
                closed, failure, ..
            } => {
                assert!(!closed);
                assert_eq!(
                    failure.as_ref().unwrap(),
                    &["1".to_string(), "1".into(), "2".into()]
                );
            }
            other => panic!("{other:?}"),
        }
        assert!(f.replays().unwrap());
    }

    #[test]
    fn boolean_rings_are_positive_for_the_decomposition() {
        let p = ProductRing::new(vec![zn(2).unwrap(), zn(2).unwrap(), zn(2).unwrap()]).unwrap();
        let got = evaluate(
            Target::IdemNilDecomp,
            p.ring(),
            Some(&p),
            &one_set(p.ring()),
            0,
        );
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].verdict, Verdict::PositiveInstance);
        assert!(got[0].replays().unwrap());
    }

    #[test]
    fn dropped_hypotheses_on_small_rings() {
        let z4 = zn(4).unwrap();
        let s = closure(&z4, [3], true).unwrap();
        let got = evaluate(Target::HypothesisNecessity, &z4, None, &s, 0);
        let claims: Vec<&str> = got.iter().map(|f| f.claim.as_str()).collect();
        assert!(
            claims.contains(&"R = S-idem(R) ∪ S-nil(R) ⇒ S-Boolean, without S ∩ u(R) = {1}"),
            "{claims:?}"
        );
        let z6 = zn(6).unwrap();
        let s = closure(&z6, [3], true).unwrap();
        let got = evaluate(Target::HypothesisNecessity, &z6, None, &s, 0);
        assert!(got
            .iter()
            .any(|f| f.claim.starts_with("reduced ⇒ S-reduced")));
        let z33 = ProductRing::new(vec![zn(3).unwrap(), zn(3).unwrap()]).unwrap();
        let u = crate::mult_set::units_set(z33.ring());
        let got = evaluate(Target::HypothesisNecessity, z33.ring(), Some(&z33), &u, 0);
        assert!(got.iter().any(|f| f.claim.ends_with("S a product of sets")));
        for f in &got {
            assert!(f.replays().unwrap(), "{f:?}");
        }
    }

    #[test]
    fn targets_parse() {
        assert_eq!(
            "svnr_additive_closure".parse::<Target>().unwrap(),
            Target::SvnrAdditiveClosure
        );
        assert_eq!(
            "IDEM-NIL-DECOMP".parse::<Target>().unwrap(),
            Target::IdemNilDecomp
        );
        assert!(matches!(
            "nope".parse::<Target>(),
            Err(Error::UnknownTarget(_))
        ));
    }
}
