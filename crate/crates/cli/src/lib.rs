//! Command-line front end: ring and set specifications in, text or JSON
//! reports out.
//!
//! Exit codes: 0 success, 1 a verify violation or a failing search
//! counterexample, 2 usage or parse errors.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sring_core::classify::{
    classify, ClassificationReport, Counterexample, PlainFlag, UniformFlag,
};
use sring_core::elements::{witness_for, Analysis, Property};
use sring_core::ideals::IdealReport;
use sring_core::localize::localize;
use sring_core::mult_set::{closure, MultiplicativeSet};
use sring_core::ring::is_isomorphic;
use sring_core::ring_spec::{parse_elements, parse_ring_spec_capped};
use sring_core::search::{corpus_rings, find_instances, CorpusConfig, Target, Verdict};
use sring_core::verify::{verify, CorpusKind, VerifyConfig};
use sring_core::{Elem, ElemSet, Error, FiniteRing, MAX_ELEMENTS};

pub const MAX_SIZE_ENV: &str = "SRING_MAX_SIZE";
const DEFAULT_SEARCH_SIZE: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "sring",
    version,
    about = "Finite commutative rings with multiplicative subsets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for sampled multiplicative sets.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest ring to build or enumerate (default from SRING_MAX_SIZE).
    #[arg(long, global = true)]
    max_size: Option<usize>,
}

#[derive(Debug, Args)]
struct RingArgs {
    /// Ring specification, e.g. "Z6", "Z3 x Z3", "quot(poly(Z2 x Z2,2),[(1,0)*x])".
    #[arg(long)]
    ring: String,

    /// Generators of S, closed under multiplication, e.g. "{5}". Defaults to {1}.
    #[arg(long = "s")]
    s: Option<String>,

    /// Allow 0 in S.
    #[arg(long)]
    allow_zero_in_s: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Every ring class with witnesses and counterexamples.
    Classify(RingArgs),
    /// The S-element sets, globally and for each s.
    Sets(RingArgs),
    /// A witness for one element and property.
    Witness {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        elem: String,
        /// S_INVERTIBLE, S_IDEMPOTENT, S_VNR, S_PI_REGULAR, S_NILPOTENT or S_ZERO.
        #[arg(long)]
        prop: String,
    },
    /// S-prime, S-maximal and S-primary verdicts for every ideal.
    Ideals(RingArgs),
    /// The localization at S.
    Localize(RingArgs),
    /// Runs the proposition checks over a corpus.
    Verify {
        #[arg(long, default_value = "std")]
        corpus: String,
        /// `all` or a comma-separated list of proposition ids.
        #[arg(long, default_value = "all")]
        props: String,
    },
    /// Mines the corpus for instances of an open question.
    Search {
        /// SVNR_ADDITIVE_CLOSURE, IDEM_NIL_DECOMP or HYPOTHESIS_NECESSITY.
        #[arg(long)]
        target: String,
    },
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Output {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output::ok(text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => Output::usage(e),
    }
}

fn max_size(cli: &Cli) -> Result<Option<usize>, Error> {
    if let Some(n) = cli.max_size {
        return Ok(Some(n));
    }
    match std::env::var(MAX_SIZE_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            Error::Usage(format!(
                "{MAX_SIZE_ENV} must be a positive integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(None),
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Error> {
    let cap = max_size(cli)?;
    let render = |value: Value, text: String| {
        if cli.json {
            let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
            s.push('\n');
            s
        } else {
            text
        }
    };
    match &cli.command {
        Command::Classify(args) => {
            let (ring, set) = load(args, cap)?;
            let (value, text) = classify_report(&ring, &set)?;
            Ok(Output::ok(render(value, text)))
        }
        Command::Sets(args) => {
            let (ring, set) = load(args, cap)?;
            let (value, text) = sets_report(&ring, &set);
            Ok(Output::ok(render(value, text)))
        }
        Command::Witness {
            ring: args,
            elem,
            prop,
        } => {
            let (ring, set) = load(args, cap)?;
            let a = ring
                .find(elem)
                .ok_or_else(|| Error::UnknownElement(elem.clone()))?;
            let kind: Property = prop.parse().map_err(Error::Usage)?;
            let (value, text) = witness_report(&ring, &set, a, kind);
            Ok(Output::ok(render(value, text)))
        }
        Command::Ideals(args) => {
            let (ring, set) = load(args, cap)?;
            let (value, text) = ideals_report(&ring, &set)?;
            Ok(Output::ok(render(value, text)))
        }
        Command::Localize(args) => {
            let (ring, set) = load(args, cap)?;
            let (value, text) = localize_report(&ring, &set)?;
            Ok(Output::ok(render(value, text)))
        }
        Command::Verify { corpus, props } => {
            let kind: CorpusKind = corpus.parse()?;
            let config = VerifyConfig {
                seed: cli.seed,
                ..VerifyConfig::new(kind)
            }
            .with_props(props)?;
            let report = verify(&config)?;
            let mut text = format!(
                "corpus {:?}: {} rings ({} up to isomorphism), {} pairs ({} sampled), {} product pairs\n",
                report.corpus, report.rings, report.distinct_rings, report.pairs, report.sampled_pairs, report.product_pairs
            )
            .to_lowercase();
            for p in &report.propositions {
                let status = match (p.asserted, p.violations) {
                    (false, _) => "INFO",
                    (true, 0) => "PASS",
                    _ => "FAIL",
                };
                let _ = writeln!(
                    text,
                    "{status} {:<38} checked {:>4}  n/a {:>4}  violations {:>4}",
                    p.id, p.checked, p.not_applicable, p.violations
                );
                if let Some(v) = &p.first_violation {
                    let _ = writeln!(text, "     first: {v}");
                }
            }
            let _ = writeln!(
                text,
                "{}",
                if report.passed() {
                    "all asserted propositions hold"
                } else {
                    "violations found"
                }
            );
            let value = serde_json::to_value(&report).expect("report serializes");
            let code = if report.passed() { 0 } else { 1 };
            Ok(Output {
                code,
                stdout: render(value, text),
                stderr: String::new(),
            })
        }
        Command::Search { target } => {
            let target: Target = target.parse()?;
            let config = CorpusConfig {
                seed: cli.seed,
                ..CorpusConfig::new(cap.unwrap_or(DEFAULT_SEARCH_SIZE))
            };
            let findings = find_instances(target, &config)?;
            let count = |v: Verdict| findings.iter().filter(|f| f.verdict == v).count();
            let (counter, positive) = (
                count(Verdict::Counterexample),
                count(Verdict::PositiveInstance),
            );
            let mut text = format!(
                "{target} over rings of size ≤ {}: {} findings, {counter} counterexamples, {positive} positive instances\n",
                config.max_ring_size,
                findings.len()
            );
            for f in &findings {
                let verdict = match f.verdict {
                    Verdict::Counterexample => "counterexample",
                    Verdict::PositiveInstance => "positive",
                    Verdict::None => "none",
                };
                let _ = writeln!(
                    text,
                    "{verdict:<14} {} with S = {}: {}",
                    f.ring,
                    f.s,
                    evidence_text(f)
                );
            }
            let value = json!({
                "target": target.name(),
                "max_size": config.max_ring_size,
                "seed": config.seed,
                "counterexamples": counter,
                "positive_instances": positive,
                "findings": findings,
            });
            let code = if target.counterexamples_fail() && counter > 0 {
                1
            } else {
                0
            };
            Ok(Output {
                code,
                stdout: render(value, text),
                stderr: String::new(),
            })
        }
    }
}

fn evidence_text(f: &sring_core::search::Finding) -> String {
    use sring_core::search::Evidence;
    match &f.evidence {
        Evidence::AdditiveClosure {
            closed,
            failure,
            two_in_su,
            weakly_s_reduced,
        } => {
            let head = match failure {
                Some([a, b, sum]) => format!("{a} + {b} = {sum} ∉ S-vnr(R)"),
                None if *closed => "S-vnr(R) closed under addition".to_string(),
                None => "not closed".to_string(),
            };
            format!("{head}; 2 ∈ S-u(R): {two_in_su}; weakly S-reduced: {weakly_s_reduced}")
        }
        Evidence::Decomposition { element: Some(a) } => {
            format!("{}; {a} is not S-idempotent", f.claim)
        }
        Evidence::Decomposition { element: None } => format!("{}; R is S-Boolean", f.claim),
        Evidence::Violation { detail } => format!("{}: {detail}", f.claim),
    }
}

fn load(args: &RingArgs, cap: Option<usize>) -> Result<(FiniteRing, MultiplicativeSet), Error> {
    let ring = parse_ring_spec_capped(&args.ring, cap.unwrap_or(MAX_ELEMENTS))?;
    let gens = match &args.s {
        Some(text) => parse_elements(&ring, text)?,
        None => Vec::new(),
    };
    let set = closure(&ring, gens, !args.allow_zero_in_s)?;
    Ok((ring, set))
}

fn names(ring: &FiniteRing, set: &ElemSet) -> Vec<String> {
    ring.set_names(set)
}

fn name(ring: &FiniteRing, a: Option<Elem>) -> Value {
    a.map_or(Value::Null, |a| Value::String(ring.name(a).to_string()))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn plain_flag(ring: &FiniteRing, f: &PlainFlag) -> (Value, String) {
    let text = match f.counterexample {
        Some(a) if !f.holds => format!("no (fails at {})", ring.name(a)),
        _ => yes(f.holds).to_string(),
    };
    (
        json!({ "holds": f.holds, "counterexample": name(ring, f.counterexample) }),
        text,
    )
}

fn counterexample_json(ring: &FiniteRing, c: &Counterexample) -> Value {
    let mut v = json!({ "s": ring.name(c.s), "element": ring.name(c.element) });
    if let Some(p) = c.partner {
        v["partner"] = json!(ring.name(p));
    }
    v
}

fn uniform_flag(ring: &FiniteRing, f: &UniformFlag) -> (Value, String) {
    let text = match f.witness {
        Some(s) => format!("yes (s = {})", ring.name(s)),
        None => {
            let parts: Vec<String> = f
                .counterexamples
                .iter()
                .map(|c| match c.partner {
                    Some(p) => format!(
                        "s = {} fails at ({}, {})",
                        ring.name(c.s),
                        ring.name(c.element),
                        ring.name(p)
                    ),
                    None => format!("s = {} fails at {}", ring.name(c.s), ring.name(c.element)),
                })
                .collect();
            if parts.is_empty() {
                "no".to_string()
            } else {
                format!("no ({})", parts.join("; "))
            }
        }
    };
    let value = json!({
        "holds": f.holds,
        "witness": name(ring, f.witness),
        "counterexamples": f.counterexamples.iter().map(|c| counterexample_json(ring, c)).collect::<Vec<_>>(),
    });
    (value, text)
}

fn classifications(ring: &FiniteRing, rep: &ClassificationReport) -> (Value, String) {
    let plain: [(&str, &str, &PlainFlag); 7] = [
        ("boolean", "Boolean", &rep.boolean),
        ("von_neumann_regular", "von Neumann regular", &rep.vnr),
        ("pi_regular", "π-regular", &rep.pi_regular),
        ("reduced", "reduced", &rep.reduced),
        ("s_boolean", "S-Boolean", &rep.s_boolean),
        ("s_reduced", "S-reduced", &rep.s_reduced),
        (
            "weakly_s_reduced",
            "weakly S-reduced",
            &rep.weakly_s_reduced,
        ),
    ];
    let uniform: [(&str, &str, &UniformFlag); 6] = [
        (
            "uniformly_s_boolean",
            "uniformly S-Boolean",
            &rep.uniformly_s_boolean,
        ),
        ("uniformly_s_vnr", "uniformly S-vNr", &rep.uniformly_s_vnr),
        (
            "uniformly_s_pi_regular",
            "uniformly S-π-regular",
            &rep.uniformly_s_pi_regular,
        ),
        ("s_field", "S-field", &rep.s_field),
        (
            "s_integral_domain",
            "S-integral domain",
            &rep.s_integral_domain,
        ),
        (
            "uniformly_s_reduced",
            "uniformly S-reduced",
            &rep.uniformly_s_reduced,
        ),
    ];
    let mut map = serde_json::Map::new();
    let mut text = String::new();
    for (key, label, flag) in plain {
        let (v, t) = plain_flag(ring, flag);
        map.insert(key.into(), v);
        let _ = writeln!(text, "  {label:<24} {t}");
    }
    for (key, label, flag) in uniform {
        let (mut v, t) = uniform_flag(ring, flag);
        if key == "uniformly_s_pi_regular" {
            if let Some(exps) = &rep.pi_regular_exponents {
                let m: serde_json::Map<String, Value> = ring
                    .elements()
                    .map(|a| (ring.name(a).to_string(), json!(exps[a])))
                    .collect();
                v["exponents"] = Value::Object(m);
            }
        }
        map.insert(key.into(), v);
        let _ = writeln!(text, "  {label:<24} {t}");
    }
    (Value::Object(map), text)
}

fn sets_value(ring: &FiniteRing, an: &Analysis) -> (Value, String) {
    let e = &an.sets;
    let c = &an.classical;
    let global = [
        ("idempotents", "idem(R)", c.idem),
        ("s_u", "S-u(R)", e.s_u),
        ("s_idem", "S-idem(R)", e.s_idem),
        ("s_vnr", "S-vnr(R)", e.s_vnr),
        ("s_pireg", "S-π-reg(R)", e.s_pireg),
        ("s_nil", "S-nil(R)", e.s_nil),
        ("s_zero", "S-zero", e.s_zero),
    ];
    let mut map = serde_json::Map::new();
    let mut text = String::new();
    for (key, label, set) in global {
        map.insert(key.into(), json!(names(ring, &set)));
        let _ = writeln!(text, "  {label:<12} {}", ring.format_set(&set));
    }
    let mut relative = Vec::new();
    for rel in &e.per_s {
        let _ = writeln!(text, "  s = {}:", ring.name(rel.s));
        let mut m = serde_json::Map::new();
        m.insert("s".into(), json!(ring.name(rel.s)));
        for (key, label, set) in [
            ("u", "u", rel.u),
            ("idem", "idem", rel.idem),
            ("vnr", "vnr", rel.vnr),
            ("pireg", "π-reg", rel.pireg),
            ("nil", "nil", rel.nil),
            ("zero", "zero", rel.zero),
        ] {
            m.insert(key.into(), json!(names(ring, &set)));
            let _ = writeln!(text, "    s-{label:<8} {}", ring.format_set(&set));
        }
        relative.push(Value::Object(m));
    }
    map.insert("relative".into(), Value::Array(relative));
    (Value::Object(map), text)
}

fn header(ring: &FiniteRing, set: &MultiplicativeSet) -> (serde_json::Map<String, Value>, String) {
    let mut map = serde_json::Map::new();
    map.insert("ring".into(), json!(ring.label()));
    map.insert("size".into(), json!(ring.size()));
    map.insert("s_members".into(), json!(names(ring, &set.members())));
    let strict = if set.is_strict() { "" } else { " (contains 0)" };
    let text = format!(
        "ring {} ({} elements)\nS = {}{strict}\n",
        ring.label(),
        ring.size(),
        set.describe(ring)
    );
    (map, text)
}

fn classify_report(ring: &FiniteRing, set: &MultiplicativeSet) -> Result<(Value, String), Error> {
    let an = Analysis::new(ring, set);
    let ideals = IdealReport::new(ring, set)?;
    let rep = classify(&an, &ideals);
    let (mut map, mut text) = header(ring, set);
    let (cls, cls_text) = classifications(ring, &rep);
    let (sets, sets_text) = sets_value(ring, &an);
    let (loc, loc_text) = localization_value(ring, set)?;
    map.insert("classifications".into(), cls);
    map.insert("sets".into(), sets);
    map.insert("localization".into(), loc);
    text.push_str("classes:\n");
    text.push_str(&cls_text);
    text.push_str("sets:\n");
    text.push_str(&sets_text);
    text.push_str(&loc_text);
    Ok((Value::Object(map), text))
}

fn sets_report(ring: &FiniteRing, set: &MultiplicativeSet) -> (Value, String) {
    let an = Analysis::new(ring, set);
    let (mut map, mut text) = header(ring, set);
    let (sets, sets_text) = sets_value(ring, &an);
    map.insert("sets".into(), sets);
    text.push_str(&sets_text);
    (Value::Object(map), text)
}

fn witness_report(
    ring: &FiniteRing,
    set: &MultiplicativeSet,
    a: Elem,
    kind: Property,
) -> (Value, String) {
    let (mut map, mut text) = header(ring, set);
    let w = witness_for(ring, set, a, kind);
    let value = match &w {
        Some(w) => json!({
            "kind": kind.name(),
            "element": ring.name(w.element),
            "s": ring.name(w.s),
            "b": name(ring, w.b),
            "n": w.n,
            "identity": w.describe(ring),
        }),
        None => Value::Null,
    };
    map.insert("element".into(), json!(ring.name(a)));
    map.insert("property".into(), json!(kind.name()));
    map.insert("witness".into(), value);
    match w {
        Some(w) => {
            let _ = writeln!(
                text,
                "{kind} witness for {}: {}",
                ring.name(a),
                w.describe(ring)
            );
        }
        None => {
            let _ = writeln!(text, "{kind} witness for {}: none", ring.name(a));
        }
    }
    (Value::Object(map), text)
}

fn ideals_report(ring: &FiniteRing, set: &MultiplicativeSet) -> Result<(Value, String), Error> {
    let report = IdealReport::new(ring, set)?;
    let (mut map, mut text) = header(ring, set);
    let mut rows = Vec::new();
    let mark = |w: Option<Elem>| w.map_or("-".to_string(), |s| format!("s={}", ring.name(s)));
    let _ = writeln!(text, "{} ideals", report.verdicts.len());
    for v in &report.verdicts {
        rows.push(json!({
            "ideal": names(ring, &v.ideal),
            "s_prime": name(ring, v.s_prime),
            "s_maximal": name(ring, v.s_maximal),
            "s_primary": name(ring, v.s_primary),
            "disjoint_from_s": v.disjoint_from_s,
            "radical": names(ring, &v.radical),
        }));
        let _ = writeln!(
            text,
            "  {:<28} S-prime {:<8} S-maximal {:<8} S-primary {:<8} disjoint {:<3} radical {}",
            ring.format_set(&v.ideal),
            mark(v.s_prime),
            mark(v.s_maximal),
            mark(v.s_primary),
            yes(v.disjoint_from_s),
            ring.format_set(&v.radical)
        );
    }
    map.insert("ideals".into(), Value::Array(rows));
    Ok((Value::Object(map), text))
}

/// The first ring of the corpus families, or the source itself, that is
/// isomorphic to `ring`.
fn iso_class(ring: &FiniteRing, source: &FiniteRing) -> Result<Option<String>, Error> {
    if is_isomorphic(ring, source) {
        return Ok(Some(source.label().to_string()));
    }
    let candidates = corpus_rings(&CorpusConfig::new(ring.size()))?;
    Ok(candidates
        .iter()
        .filter(|c| c.ring.size() == ring.size())
        .find(|c| is_isomorphic(&c.ring, ring))
        .map(|c| c.ring.label().to_string()))
}

fn localization_value(
    ring: &FiniteRing,
    set: &MultiplicativeSet,
) -> Result<(Value, String), Error> {
    let loc = localize(ring, set);
    let l = loc.ring();
    let c = l.classical_sets();
    let full = l.carrier();
    let iso = iso_class(l, ring)?;
    let value = json!({
        "size": l.size(),
        "elements": l.names(),
        "degenerate": loc.is_degenerate(),
        "isomorphic_to": iso,
        "isomorphic_to_source": is_isomorphic(l, ring),
        "boolean": c.idem == full,
        "von_neumann_regular": c.vnr == full,
        "pi_regular": c.pi_reg == full,
        "canonical_map": ring.elements().map(|a| l.name(loc.canonical().apply(a)).to_string()).collect::<Vec<_>>(),
    });
    let text = format!(
        "localization: {} elements {}, isomorphic to {}; Boolean {}, von Neumann regular {}, π-regular {}\n",
        l.size(),
        l.format_set(&full),
        iso.as_deref().unwrap_or("no corpus ring"),
        yes(c.idem == full),
        yes(c.vnr == full),
        yes(c.pi_reg == full)
    );
    Ok((value, text))
}

fn localize_report(ring: &FiniteRing, set: &MultiplicativeSet) -> Result<(Value, String), Error> {
    let (mut map, mut text) = header(ring, set);
    let (loc, loc_text) = localization_value(ring, set)?;
    map.insert("localization".into(), loc);
    text.push_str(&loc_text);
    Ok((Value::Object(map), text))
}
