//! Transfer of S-element sets and S-ring classes along homomorphisms and
//! across finite direct products.

use crate::bits::ElemSet;
use crate::check::Outcome;
use crate::elements::{element_sets, ElementSets, Property};
use crate::mult_set::{map_set, MultiplicativeSet};
use crate::ring::{Elem, FiniteRing, ProductRing, RingHom};

const SET_KINDS: [Property; 4] = [
    Property::SInvertible,
    Property::SIdempotent,
    Property::SVnr,
    Property::SPiRegular,
];

/// `f(X_S(R)) ⊆ X_{f(S)}(R')` for the four S-sets X, globally and for each
/// fixed `s`; equalities when `f` is surjective. Reports every failing kind.
///
/// The S-idem equality fails for some quotients, e.g. Z24 → Z12 with
/// S = {1, 16}; [`hom_transfer_restricted_check`] leaves it out.
pub fn hom_transfer_check(
    source: &FiniteRing,
    target: &FiniteRing,
    f: &RingHom,
    set: &MultiplicativeSet,
) -> Outcome {
    hom_transfer_with(source, target, f, set, &SET_KINDS)
}

/// The inclusions for all four S-sets, and under surjectivity the equalities
/// for S-u, S-vnr and S-π-reg.
pub fn hom_transfer_restricted_check(
    source: &FiniteRing,
    target: &FiniteRing,
    f: &RingHom,
    set: &MultiplicativeSet,
) -> Outcome {
    hom_transfer_with(
        source,
        target,
        f,
        set,
        &[Property::SInvertible, Property::SVnr, Property::SPiRegular],
    )
}

fn hom_transfer_with(
    source: &FiniteRing,
    target: &FiniteRing,
    f: &RingHom,
    set: &MultiplicativeSet,
    equal_kinds: &[Property],
) -> Outcome {
    let image = map_set(f, target, set);
    if !image.is_strict() {
        return Outcome::NotApplicable("0 ∈ f(S)".into());
    }
    let surjective = f.is_surjective(target);
    let (src, tgt) = (element_sets(source, set), element_sets(target, &image));
    let mut failures: Vec<String> = Vec::new();
    for kind in SET_KINDS {
        let equal = surjective && equal_kinds.contains(&kind);
        let mut compare = |what: String, pushed: ElemSet, there: ElemSet| {
            if !pushed.is_subset(&there) {
                failures.push(format!(
                    "f({what}) = {} ⊄ {}",
                    target.format_set(&pushed),
                    target.format_set(&there)
                ));
            } else if equal && pushed != there {
                failures.push(format!(
                    "f({what}) = {} ≠ {}",
                    target.format_set(&pushed),
                    target.format_set(&there)
                ));
            }
        };
        compare(format!("{kind}"), f.image(&src.get(kind)), tgt.get(kind));
        for rel in &src.per_s {
            let t = tgt.relative(f.apply(rel.s)).expect("f(s) ∈ f(S)");
            compare(
                format!("{}-{kind}", source.name(rel.s)),
                f.image(&rel.get(kind)),
                t.get(kind),
            );
        }
    }
    match failures.len() {
        0 => Outcome::Holds,
        1 => Outcome::Violated(failures.remove(0)),
        n => Outcome::Violated(format!("{} (and {} more)", failures[0], n - 1)),
    }
}

/// The factor data `e_iS` of a product and the element sets on both sides.
pub struct ProductData<'p> {
    pub product: &'p ProductRing,
    pub set: MultiplicativeSet,
    pub projected: Vec<MultiplicativeSet>,
    pub whole: ElementSets,
    pub factors: Vec<ElementSets>,
    /// S equals the product of its projections.
    pub is_product_set: bool,
}

impl<'p> ProductData<'p> {
    pub fn new(product: &'p ProductRing, set: &MultiplicativeSet) -> Self {
        let projected: Vec<MultiplicativeSet> = (0..product.arity())
            .map(|i| map_set(&product.projection(i), &product.factors()[i], set))
            .collect();
        let factors = projected
            .iter()
            .zip(product.factors())
            .map(|(s, r)| element_sets(r, s))
            .collect();
        let members: Vec<ElemSet> = projected.iter().map(|s| s.members()).collect();
        ProductData {
            product,
            set: *set,
            is_product_set: product.product_set(&members) == set.members(),
            whole: element_sets(product.ring(), set),
            factors,
            projected,
        }
    }

    fn product_of(&self, f: impl Fn(usize) -> ElemSet) -> ElemSet {
        let parts: Vec<ElemSet> = (0..self.product.arity()).map(f).collect();
        self.product.product_set(&parts)
    }
}

/// `X_S(∏R_i) = ∏ X_{S_i}(R_i)` for S-u, S-idem, S-vnr, S-π-reg and S-nil,
/// with `S_i` the projection of S. Reports every kind that fails.
pub fn product_set_equalities(data: &ProductData) -> Outcome {
    let kinds = [
        Property::SInvertible,
        Property::SIdempotent,
        Property::SVnr,
        Property::SPiRegular,
        Property::SNilpotent,
    ];
    set_equalities(data, &kinds)
}

fn set_equalities(data: &ProductData, kinds: &[Property]) -> Outcome {
    let ring = data.product.ring();
    let mut failures = Vec::new();
    for &kind in kinds {
        let lhs = data.whole.get(kind);
        let rhs = data.product_of(|i| data.factors[i].get(kind));
        if let Some(a) = ((lhs - rhs) | (rhs - lhs)).first() {
            let side = if lhs.contains(a) { "left" } else { "right" };
            failures.push(format!("{kind} ({} only on the {side})", ring.name(a)));
        }
    }
    if failures.is_empty() {
        Outcome::Holds
    } else {
        Outcome::Violated(format!(
            "S = {}: {}",
            data.set.describe(ring),
            failures.join(", ")
        ))
    }
}

/// The idempotent statements when S is the product of its projections:
/// S-idem equality and S-Boolean ⇔ every factor S_i-Boolean.
pub fn product_idem_for_product_sets(data: &ProductData) -> Outcome {
    if !data.is_product_set {
        return Outcome::NotApplicable("S is not a product of sets".into());
    }
    set_equalities(data, &[Property::SIdempotent]).and_then(|| {
        let whole = data.whole.s_idem == data.product.ring().carrier();
        let parts = data
            .factors
            .iter()
            .zip(data.product.factors())
            .all(|(es, r)| es.s_idem == r.carrier());
        if whole == parts {
            Outcome::Holds
        } else {
            Outcome::Violated(format!("S-Boolean: product {whole}, factors {parts}"))
        }
    })
}

/// S-idem(∏R_i) ⊆ ∏ S_i-idem(R_i), for any S.
pub fn product_idem_inclusion(data: &ProductData) -> Outcome {
    let rhs = data.product_of(|i| data.factors[i].s_idem);
    match (data.whole.s_idem - rhs).first() {
        None => Outcome::Holds,
        Some(a) => Outcome::Violated(format!(
            "{} is S-idempotent but a component is not",
            data.product.ring().name(a)
        )),
    }
}

/// For each `s ∈ S`: `X_s(∏R_i) = ∏ X_{s_i}(R_i)` with `s_i` the components.
pub fn product_per_s_equalities(data: &ProductData) -> Outcome {
    let p = data.product;
    for rel in &data.whole.per_s {
        let comps = p.components(rel.s);
        for kind in Property::ALL {
            let rhs = data.product_of(|i| {
                data.factors[i]
                    .relative(comps[i])
                    .expect("component lies in the projection")
                    .get(kind)
            });
            if rel.get(kind) != rhs {
                return Outcome::Violated(format!(
                    "{}-{kind} is not the product of the factor sets",
                    p.ring().name(rel.s)
                ));
            }
        }
    }
    Outcome::Holds
}

/// Uniform witness for a family of per-s sets: some `s` whose set covers
/// `required`.
fn uniform(es: &ElementSets, kind: Property, required: ElemSet) -> bool {
    es.per_s.iter().any(|r| required.is_subset(&r.get(kind)))
}

fn class_flags(es: &ElementSets, r: &FiniteRing) -> [bool; 4] {
    let full = r.carrier();
    let idem: ElemSet = r.elements().filter(|&a| r.is_idempotent(a)).collect();
    [
        es.s_idem == full,
        uniform(es, Property::SIdempotent, full - idem),
        uniform(es, Property::SVnr, full),
        uniform(es, Property::SPiRegular, full),
    ]
}

const CLASS_NAMES: [&str; 4] = [
    "S-Boolean",
    "uniformly S-Boolean",
    "uniformly S-vNr",
    "uniformly S-π-regular",
];

/// The ring-class statements, each "product has the class ⇔ every factor
/// has it for its projected set". Reports every class that fails.
pub fn product_class_equivalences(data: &ProductData) -> Outcome {
    let p = data.product;
    let whole = class_flags(&data.whole, p.ring());
    let parts: Vec<[bool; 4]> = data
        .factors
        .iter()
        .zip(p.factors())
        .map(|(es, r)| class_flags(es, r))
        .collect();
    let mut failures = Vec::new();
    for k in 0..4 {
        let all_factors = parts.iter().all(|c| c[k]);
        if whole[k] != all_factors {
            failures.push(format!(
                "{} (product {}, factors {})",
                CLASS_NAMES[k], whole[k], all_factors
            ));
        }
    }
    if failures.is_empty() {
        Outcome::Holds
    } else {
        Outcome::Violated(format!(
            "S = {}: {}",
            data.set.describe(p.ring()),
            failures.join(", ")
        ))
    }
}

/// Each class passes from the product to every factor; when S is a product
/// of sets, S-Boolean, uniformly S-vNr and uniformly S-π-regular also pass
/// from the factors back to the product.
pub fn product_class_transfer(data: &ProductData) -> Outcome {
    let p = data.product;
    let whole = class_flags(&data.whole, p.ring());
    let parts: Vec<[bool; 4]> = data
        .factors
        .iter()
        .zip(p.factors())
        .map(|(es, r)| class_flags(es, r))
        .collect();
    for k in 0..4 {
        let all_factors = parts.iter().all(|c| c[k]);
        if whole[k] && !all_factors {
            return Outcome::Violated(format!(
                "{}: product has it, a factor does not",
                CLASS_NAMES[k]
            ));
        }
        // uniformly S-Boolean is the one class that does not come back
        let comes_back = data.is_product_set && k != 1;
        if comes_back && all_factors && !whole[k] {
            return Outcome::Violated(format!(
                "{}: every factor has it, the product does not",
                CLASS_NAMES[k]
            ));
        }
    }
    Outcome::Holds
}

/// `R` (weakly, uniformly) S-reduced ⇔ every factor is, for its projection.
pub fn product_reduced_equivalences(data: &ProductData) -> Outcome {
    let p = data.product;
    let variants = |r: &FiniteRing, set: &MultiplicativeSet, es: &ElementSets| -> [bool; 3] {
        let nil: Vec<Elem> = r
            .elements()
            .filter(|&a| r.nilpotency_index(a).is_some())
            .collect();
        let zero = r.zero();
        [
            es.s_nil == ElemSet::singleton(zero),
            nil.iter().all(|&a| set.iter().any(|t| r.mul(t, a) == zero)),
            set.iter().any(|t| nil.iter().all(|&a| r.mul(t, a) == zero)),
        ]
    };
    let names = ["S-reduced", "weakly S-reduced", "uniformly S-reduced"];
    let whole = variants(p.ring(), &data.set, &data.whole);
    let parts: Vec<[bool; 3]> = (0..p.arity())
        .map(|i| variants(&p.factors()[i], &data.projected[i], &data.factors[i]))
        .collect();
    for k in 0..3 {
        if whole[k] != parts.iter().all(|c| c[k]) {
            return Outcome::Violated(format!("{}: product and factors disagree", names[k]));
        }
    }
    Outcome::Holds
}

/// All product statements in order.
pub fn product_decomposition_check(data: &ProductData) -> Outcome {
    product_set_equalities(data)
        .and_then(|| product_per_s_equalities(data))
        .and_then(|| product_class_equivalences(data))
        .and_then(|| product_reduced_equivalences(data))
}
