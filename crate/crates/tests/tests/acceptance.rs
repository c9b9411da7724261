//! Acceptance criteria 1-8, one test each. Every test prints a single
//! `criterion N: PASS|FAIL` line (run with `--nocapture` to see them).

use std::time::{Duration, Instant};

use serde_json::Value;
use sring_core::elements::element_sets;
use sring_core::localize::localize;
use sring_core::mult_set::{closure, one_set, units_set};
use sring_core::ring::is_isomorphic;
use sring_core::ring::zn;
use sring_core::ring_spec::parse_ring_spec;
use sring_core::search::{find_instances, CorpusConfig, Evidence, Target};
use sring_core::verify::{corpus_rings, verify, CorpusKind, VerifyConfig};
use sring_core::{ElemSet, FiniteRing};
use sring_tests::{report, sring, sring_json, strings};

const QUOTIENT: &str = "quot(poly(Z2 x Z2,2),[(1,0)*x])";

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn within(failures: &mut Vec<String>, start: Instant, limit: Duration) {
    let took = start.elapsed();
    check(
        failures,
        took <= limit,
        format!("took {took:?}, limit {limit:?}"),
    );
}

fn flag(v: &Value, class: &str, field: &str) -> Value {
    v["classifications"][class][field].clone()
}

#[test]
fn criterion_1_z6_reproduction() {
    let start = Instant::now();
    let v = sring_json(&["classify", "--ring", "Z6", "--s", "{5}"], &[]);
    let mut f = Vec::new();
    check(
        &mut f,
        strings(&v["sets"]["idempotents"]) == ["0", "1", "3", "4"],
        format!("idempotents {}", v["sets"]["idempotents"]),
    );
    let five = v["sets"]["relative"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["s"] == "5")
        .expect("relative sets for s = 5");
    let five_idem = strings(&five["idem"]);
    for a in ["2", "5"] {
        check(
            &mut f,
            five_idem.iter().any(|x| x == a),
            format!("{a} is not 5-idempotent"),
        );
    }
    check(
        &mut f,
        flag(&v, "uniformly_s_boolean", "holds") == true,
        "not uniformly S-Boolean",
    );
    check(
        &mut f,
        flag(&v, "uniformly_s_boolean", "witness") == "5",
        format!("witness {}", flag(&v, "uniformly_s_boolean", "witness")),
    );
    check(
        &mut f,
        flag(&v, "boolean", "holds") == false,
        "Z6 reported Boolean",
    );
    within(&mut f, start, Duration::from_secs(1));
    report(1, "Z6 with S = {1, 5}: idem {0,1,3,4}; 2 and 5 are 5-idempotent; uniformly S-Boolean by 5; not Boolean", &f);
}

#[test]
fn criterion_2_z3_x_z3_reproduction() {
    let start = Instant::now();
    let spec = "Z3 x Z3";
    let v = sring_json(
        &["classify", "--ring", spec, "--s", "{(1,2), (2,1), (2,2)}"],
        &[],
    );
    let ring = parse_ring_spec(spec).unwrap();
    let mut f = Vec::new();
    check(
        &mut f,
        v["s_members"].as_array().unwrap().len() == 4,
        "S is not the four units",
    );
    check(
        &mut f,
        flag(&v, "s_boolean", "holds") == true,
        "not S-Boolean",
    );
    check(
        &mut f,
        flag(&v, "uniformly_s_boolean", "holds") == false,
        "reported uniformly S-Boolean",
    );
    let cexs = flag(&v, "uniformly_s_boolean", "counterexamples");
    let cexs = cexs.as_array().unwrap();
    let mut covered: Vec<String> = cexs
        .iter()
        .map(|c| c["s"].as_str().unwrap().to_string())
        .collect();
    covered.sort();
    let mut units = strings(&v["s_members"]);
    units.sort();
    check(
        &mut f,
        covered == units,
        format!("counterexamples cover {covered:?}"),
    );
    for c in cexs {
        let s = ring.find(c["s"].as_str().unwrap()).unwrap();
        let a = ring.find(c["element"].as_str().unwrap()).unwrap();
        let replays = ring.mul(s, a) != ring.mul(a, a) && ring.mul(a, a) != a;
        check(
            &mut f,
            replays,
            format!("counterexample {c} does not replay"),
        );
    }
    within(&mut f, start, Duration::from_secs(1));
    report(
        2,
        "Z3 x Z3 with S = u(R): S-Boolean, not uniformly, one counterexample per unit",
        &f,
    );
}

#[test]
fn criterion_3_quotient_ring() {
    let start = Instant::now();
    let v = sring_json(&["classify", "--ring", QUOTIENT, "--s", "{(1,0)}"], &[]);
    let ring = parse_ring_spec(QUOTIENT).unwrap();
    let mut f = Vec::new();
    check(&mut f, v["size"] == 8, format!("size {}", v["size"]));
    check(
        &mut f,
        strings(&v["s_members"]) == ["(1,0)", "(1,1)"],
        format!("S = {}", v["s_members"]),
    );
    check(
        &mut f,
        flag(&v, "uniformly_s_vnr", "holds") == true,
        "not uniformly S-vNr",
    );
    let w = flag(&v, "uniformly_s_vnr", "witness");
    check(
        &mut f,
        w == "(1,0)" || w == "(1,1)",
        format!("uniformly S-vNr witness {w}"),
    );
    check(
        &mut f,
        flag(&v, "von_neumann_regular", "holds") == false,
        "reported vNr",
    );
    check(
        &mut f,
        flag(&v, "uniformly_s_boolean", "holds") == false,
        "reported uniformly S-Boolean",
    );
    // 1 + x̄ is not S-idempotent: s(1 + x̄) ≠ (1 + x̄)² for both s
    let one_plus_x = "(1,1) + (0,1)*x";
    let a = ring.find(one_plus_x).expect("1 + x in the quotient");
    let sq = ring.mul(a, a);
    for s in strings(&v["s_members"]) {
        let s = ring.find(&s).unwrap();
        check(&mut f, ring.mul(s, a) != sq, "1 + x is s-idempotent");
    }
    check(
        &mut f,
        !strings(&v["sets"]["s_idem"])
            .iter()
            .any(|x| x == one_plus_x),
        "1 + x listed in S-idem",
    );
    let loc = &v["localization"];
    check(
        &mut f,
        loc["boolean"].is_boolean(),
        "R_S Boolean status missing",
    );
    within(&mut f, start, Duration::from_secs(1));
    report(
        3,
        &format!(
            "quotient of size 8: uniformly S-vNr by {w}, not vNr, not uniformly S-Boolean, 1 + x not S-idempotent; R_S ≅ {} with Boolean = {}",
            loc["isomorphic_to"], loc["boolean"]
        ),
        &f,
    );
}

#[test]
fn criterion_4_proposition_suite() {
    let start = Instant::now();
    let rep = verify(&VerifyConfig::new(CorpusKind::Std)).unwrap();
    let mut f = Vec::new();
    check(
        &mut f,
        rep.sampled_pairs >= 200,
        format!("only {} sampled pairs", rep.sampled_pairs),
    );
    for p in &rep.propositions {
        check(
            &mut f,
            !p.asserted || p.checked > 0,
            format!("{} never applied", p.id),
        );
        if !p.passed() {
            f.push(format!(
                "{}: {} violation(s), first: {}",
                p.id,
                p.violations,
                p.first_violation.as_deref().unwrap_or("")
            ));
        }
    }
    within(&mut f, start, Duration::from_secs(300));
    report(
        4,
        &format!(
            "verify std: {} rings, {} pairs ({} sampled), {} product pairs, {} propositions",
            rep.rings,
            rep.pairs,
            rep.sampled_pairs,
            rep.product_pairs,
            rep.propositions.len()
        ),
        &f,
    );
}

fn brute(ring: &FiniteRing, pred: impl Fn(usize) -> bool) -> ElemSet {
    ring.elements().filter(|&a| pred(a)).collect()
}

fn exists(ring: &FiniteRing, pred: impl Fn(usize) -> bool) -> bool {
    ring.elements().any(pred)
}

#[test]
fn criterion_5_classical_collapse() {
    let mut f = Vec::new();
    let rings = corpus_rings(CorpusKind::Std).unwrap();
    for c in &rings {
        let r = &c.ring;
        let bound = 2 * r.size();
        let idem = brute(r, |a| r.mul(a, a) == a);
        let vnr = brute(r, |a| exists(r, |b| r.mul(r.mul(a, a), b) == a));
        let pireg = brute(r, |a| {
            (1..=bound).any(|n| {
                let an = r.pow(a, n);
                exists(r, |b| r.mul(r.pow(a, 2 * n), b) == an)
            })
        });
        let nil = brute(r, |a| (1..=bound).any(|n| r.pow(a, n) == r.zero()));
        let one = element_sets(r, &one_set(r));
        for (name, got, want) in [
            ("idem", one.s_idem, idem),
            ("vnr", one.s_vnr, vnr),
            ("π-reg", one.s_pireg, pireg),
            ("nil", one.s_nil, nil),
        ] {
            check(
                &mut f,
                got == want,
                format!("{}: S = {{1}} {name} mismatch", r.label()),
            );
        }
        let units = element_sets(r, &units_set(r));
        check(
            &mut f,
            units.s_idem == vnr,
            format!("{}: S = u(R) gives S-idem ≠ vnr", r.label()),
        );
    }
    let rep = verify(
        &VerifyConfig::new(CorpusKind::Std)
            .with_props("classical-collapse")
            .unwrap(),
    )
    .unwrap();
    let p = rep.get("classical-collapse").unwrap();
    check(
        &mut f,
        p.passed(),
        format!("classical-collapse: {:?}", p.first_violation),
    );
    report(
        5,
        &format!("classical collapse on {} corpus rings", rings.len()),
        &f,
    );
}

#[test]
fn criterion_6_localization_exactness() {
    let mut f = Vec::new();
    let z6 = zn(6).unwrap();
    let s3 = closure(&z6, [3], true).unwrap();
    let loc = localize(&z6, &s3);
    check(
        &mut f,
        is_isomorphic(loc.ring(), &zn(2).unwrap()),
        format!("Z6 at {{1, 3}} has {} elements", loc.ring().size()),
    );
    let rings = corpus_rings(CorpusKind::Std).unwrap();
    for c in &rings {
        let loc = localize(&c.ring, &units_set(&c.ring));
        check(
            &mut f,
            is_isomorphic(loc.ring(), &c.ring),
            format!("{} at u(R) is not isomorphic to it", c.ring.label()),
        );
    }
    report(
        6,
        &format!(
            "Z6 at {{1, 3}} ≅ Z2; R at u(R) ≅ R for {} corpus rings",
            rings.len()
        ),
        &f,
    );
}

#[test]
fn criterion_7_determinism() {
    let a = sring(&["--json", "verify", "--corpus", "std"]);
    let b = sring(&["--json", "verify", "--corpus", "std"]);
    let mut f = Vec::new();
    check(&mut f, !a.stdout.is_empty(), "empty output");
    check(&mut f, a.stdout == b.stdout, "outputs differ");
    check(&mut f, a.code == b.code, "exit codes differ");
    report(
        7,
        &format!(
            "two verify --corpus std --json runs are byte-identical ({} bytes)",
            a.stdout.len()
        ),
        &f,
    );
}

#[test]
fn criterion_8_open_problem_mining() {
    let start = Instant::now();
    let out = sring(&[
        "--json",
        "search",
        "--target",
        "SVNR_ADDITIVE_CLOSURE",
        "--max-size",
        "12",
    ]);
    let took = start.elapsed();
    let mut f = Vec::new();
    check(&mut f, out.code == 0, format!("exit code {}", out.code));
    let v: Value = serde_json::from_str(&out.stdout).expect("JSON");
    let z4 = v["findings"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["ring"] == "Z4" && x["s"] == "{1}");
    match z4 {
        None => f.push("no finding for Z4 with S = {1}".into()),
        Some(x) => {
            check(
                &mut f,
                x["evidence"]["closed"] == false,
                "Z4 reported closed",
            );
            check(
                &mut f,
                strings(&x["evidence"]["failure"]) == ["1", "1", "2"],
                format!("evidence {}", x["evidence"]["failure"]),
            );
        }
    }
    // replay 1 + 1 = 2 ∉ vnr(Z4) from scratch
    let z4 = zn(4).unwrap();
    let sets = element_sets(&z4, &one_set(&z4));
    check(
        &mut f,
        sets.s_vnr.contains(1) && z4.add(1, 1) == 2 && !sets.s_vnr.contains(2),
        "1 + 1 = 2 ∉ vnr(Z4) does not replay",
    );
    let findings = find_instances(Target::SvnrAdditiveClosure, &CorpusConfig::new(12)).unwrap();
    let core = findings.iter().find(|x| x.ring == "Z4" && x.s == "{1}");
    check(
        &mut f,
        matches!(core, Some(x) if matches!(x.evidence, Evidence::AdditiveClosure { closed: false, .. })
            && x.replays().unwrap()),
        "core finding for Z4 does not replay",
    );
    check(
        &mut f,
        took <= Duration::from_secs(120),
        format!("took {took:?}"),
    );
    report(
        8,
        &format!(
            "SVNR_ADDITIVE_CLOSURE up to 12: {} counterexamples, Z4 with S = {{1}} not closed (1 + 1 = 2), exit 0, {took:?}",
            v["counterexamples"]
        ),
        &f,
    );
}
