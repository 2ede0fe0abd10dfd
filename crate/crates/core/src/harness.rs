//! Runs the characterization statements over a catalog of extensions.
//!
//! Every row is gated on the hypotheses its statement assumes. A row is a
//! VIOLATION only when all hypotheses hold and the two sides disagree; an
//! undecided input gives CAPABILITY_LIMITED with a reason, never a pass.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::classify::{self, ExtensionReport, Flag, HYP_AUT_ORDER, HYP_DEGREE_TWO, HYP_FIXED_FIELD, HYP_PERFECT, HYP_STABLE};
use crate::cli::parse::{Built, InputSpec};
use crate::composite::CompositeRing;
use crate::error::{Error, Result};
use crate::magid;
use crate::towers::Extension;

pub const CHECK_IDS: [&str; 14] =
    ["P01", "P02", "P04", "P06", "P07", "P09", "P10", "P13", "P14", "P15", "P17", "P18", "T3", "T4"];

const REVERSE_READING: &str = "the reverse direction is marked (⟺) in the argument; read as (⇐)";
const NORMAL_FINITE_CAVEAT: &str =
    "the argument uses \"every normal extension is finite\", which fails for infinite normal extensions; only finite extensions are decided";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Consistent,
    Violation,
    HypothesisNotMet,
    CapabilityLimited,
}

/// How `lhs` and `rhs` are compared once the hypotheses hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs ⇒ rhs`.
    Implies,
    /// `lhs ⟺ rhs`.
    Equivalent,
    /// `lhs` must hold; `rhs` is the constant `true`.
    Claim,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropositionCheck {
    pub id: String,
    pub direction: String,
    pub entry: String,
    pub hypotheses: BTreeMap<String, Flag>,
    pub relation: Relation,
    pub lhs_name: String,
    pub lhs: Flag,
    pub rhs_name: String,
    pub rhs: Flag,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub consistent: usize,
    pub violation: usize,
    pub hypothesis_not_met: usize,
    pub capability_limited: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictTable {
    pub entries: Vec<String>,
    pub rows: Vec<PropositionCheck>,
    pub summary: Summary,
    /// Catalog expectations that the classification did not reproduce.
    pub fixture_mismatches: Vec<String>,
    pub notes: Vec<String>,
}

impl VerdictTable {
    pub fn passed(&self) -> bool {
        self.summary.violation == 0 && self.fixture_mismatches.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct HarnessOptions {
    pub bound: usize,
    pub seed: u64,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions { bound: 6, seed: 0 }
    }
}

/// Everything the checks read about one catalog entry, computed once.
pub struct EntryFacts {
    pub name: String,
    pub built: Built,
    pub report: ExtensionReport,
    pub noetherian: Flag,
    pub certificate: Flag,
    pub magid: std::result::Result<magid::MagidReport, String>,
    /// `(K ⊂ L, L ⊂ M)` for towers with at least two levels.
    pub steps: Option<(ExtensionReport, ExtensionReport)>,
    reasons: BTreeMap<String, String>,
}

impl EntryFacts {
    pub fn gather(spec: &InputSpec, opts: HarnessOptions) -> Result<Self> {
        let built = spec.build()?;
        let ext = &built.extension;
        let report = classify::classify(ext)?;
        let mut reasons = report.reasons.clone();
        let ring = CompositeRing::new(ext);
        let noetherian = Flag::from(ring.is_noetherian());
        let certificate = if ext.is_finite() {
            match ring.xl_ideal_generators().and_then(|g| ring.certify_generation(&g, opts.bound)) {
                Ok(_) => Flag::True,
                Err(Error::NotGenerated { .. }) => Flag::False,
                Err(Error::Capability(m)) => {
                    reasons.insert("certificate".into(), m);
                    Flag::Unknown
                }
                Err(e) => return Err(e),
            }
        } else {
            reasons.insert("certificate".into(), "no finite generator set is representable for an infinite extension".into());
            Flag::Unknown
        };
        let magid = match magid::evaluate(ext, opts.seed) {
            Ok(r) => Ok(r),
            Err(Error::Capability(m)) => Err(m),
            Err(e) => return Err(e),
        };
        if let Err(m) = &magid {
            reasons.insert("magid".into(), m.clone());
        }
        let steps = if built.levels.len() >= 3 {
            let k = built.base();
            let l = &built.levels[1];
            let m = built.top();
            Some((classify::classify(&Extension::new(k, l)?)?, classify::classify(&Extension::new(l, m)?)?))
        } else {
            None
        };
        Ok(EntryFacts { name: spec.display_name(), built, report, noetherian, certificate, magid, steps, reasons })
    }

    fn hyp(&self, name: &str) -> Flag {
        self.report.hypothesis_flags.get(name).copied().unwrap_or(Flag::Unknown)
    }

    fn magid_flag(&self, pick: impl Fn(&magid::MagidReport) -> bool) -> Flag {
        match &self.magid {
            Ok(r) => pick(r).into(),
            Err(_) => Flag::Unknown,
        }
    }

    fn reason_for(&self, name: &str) -> Option<String> {
        match name {
            "nilradical_zero" | "unit_times_idempotent" | "idempotent_generated" => self.reasons.get("magid").cloned(),
            "normal(L,M)" => self.steps.as_ref().and_then(|(_, lm)| lm.reasons.get("normal").cloned()),
            HYP_FIXED_FIELD => self.reasons.get("fixed_field_is_k").cloned(),
            HYP_AUT_ORDER => self.reasons.get("aut_order").cloned(),
            n => self.reasons.get(n).cloned(),
        }
    }
}

struct RowSpec<'a> {
    id: &'a str,
    direction: &'a str,
    hypotheses: Vec<(&'a str, Flag)>,
    relation: Relation,
    lhs: (&'a str, Flag),
    rhs: (&'a str, Flag),
    notes: Vec<&'a str>,
}

fn verdict_of(spec: &RowSpec, facts: &EntryFacts) -> (Verdict, Option<String>) {
    if spec.hypotheses.iter().any(|(_, f)| *f == Flag::False) {
        return (Verdict::HypothesisNotMet, None);
    }
    let unknown: Vec<&str> = spec
        .hypotheses
        .iter()
        .map(|(n, f)| (*n, *f))
        .chain([spec.lhs, spec.rhs])
        .filter(|(_, f)| *f == Flag::Unknown)
        .map(|(n, _)| n)
        .collect();
    if !unknown.is_empty() {
        let detail: Vec<String> = unknown
            .iter()
            .map(|n| match facts.reason_for(n) {
                Some(r) => format!("{n}: {r}"),
                None => format!("{n}: undecided"),
            })
            .collect();
        return (Verdict::CapabilityLimited, Some(detail.join("; ")));
    }
    let (l, r) = (spec.lhs.1.is_true(), spec.rhs.1.is_true());
    let ok = match spec.relation {
        Relation::Implies => !l || r,
        Relation::Equivalent => l == r,
        Relation::Claim => l,
    };
    if ok {
        (Verdict::Consistent, None)
    } else {
        (Verdict::Violation, Some(format!("{} is {l} but {} is {r}", spec.lhs.0, spec.rhs.0)))
    }
}

fn make_row(spec: RowSpec, facts: &EntryFacts) -> PropositionCheck {
    let (verdict, reason) = verdict_of(&spec, facts);
    PropositionCheck {
        id: spec.id.to_string(),
        direction: spec.direction.to_string(),
        entry: facts.name.clone(),
        hypotheses: spec.hypotheses.iter().map(|(n, f)| (n.to_string(), *f)).collect(),
        relation: spec.relation,
        lhs_name: spec.lhs.0.to_string(),
        lhs: spec.lhs.1,
        rhs_name: spec.rhs.0.to_string(),
        rhs: spec.rhs.1,
        verdict,
        reason,
        notes: spec.notes.iter().map(|s| s.to_string()).collect(),
    }
}

/// Both directions of `N ⟺ rhs`, each gated on the stated hypotheses.
fn biconditional<'a>(
    id: &'a str,
    facts: &EntryFacts,
    hypotheses: Vec<(&'a str, Flag)>,
    rhs: (&'a str, Flag),
    forward_notes: Vec<&'a str>,
    reverse_notes: Vec<&'a str>,
) -> Vec<PropositionCheck> {
    let n = ("noetherian", facts.noetherian);
    vec![
        make_row(
            RowSpec { id, direction: "=>", hypotheses: hypotheses.clone(), relation: Relation::Implies, lhs: n, rhs, notes: forward_notes },
            facts,
        ),
        make_row(
            RowSpec { id, direction: "<=", hypotheses, relation: Relation::Implies, lhs: rhs, rhs: n, notes: reverse_notes },
            facts,
        ),
    ]
}

/// The rows of check `id` for one entry; empty when the entry's shape does
/// not apply (tower checks on single extensions).
pub fn run_check(id: &str, facts: &EntryFacts) -> Result<Vec<PropositionCheck>> {
    let r = &facts.report;
    let fixed = (HYP_FIXED_FIELD, facts.hyp(HYP_FIXED_FIELD));
    let perfect = (HYP_PERFECT, facts.hyp(HYP_PERFECT));
    let stable = (HYP_STABLE, facts.hyp(HYP_STABLE));
    let rows = match id {
        "P01" => biconditional(id, facts, vec![], ("finite", r.finite), vec![], vec![]),
        "P02" => biconditional(
            id,
            facts,
            vec![fixed],
            ("algebraic", r.algebraic),
            vec!["this direction's argument does not use fixed_field_is_base"],
            vec![REVERSE_READING, NORMAL_FINITE_CAVEAT],
        ),
        "P04" => biconditional(
            id,
            facts,
            vec![perfect, stable],
            ("separable", r.separable),
            vec!["this direction's argument uses perfect_base only"],
            vec![REVERSE_READING, "this direction's argument uses embedding_stability only"],
        ),
        "P06" => biconditional(
            id,
            facts,
            vec![stable],
            ("normal", r.normal),
            vec![],
            vec![REVERSE_READING, NORMAL_FINITE_CAVEAT],
        ),
        "P07" => biconditional(id, facts, vec![fixed], ("normal", r.normal), vec![], vec![REVERSE_READING]),
        "P09" => biconditional(
            id,
            facts,
            vec![("composite_noetherian", facts.noetherian), (HYP_AUT_ORDER, facts.hyp(HYP_AUT_ORDER)), stable],
            ("galois", r.galois),
            vec!["this direction's argument uses aut_order_equals_degree"],
            vec!["this direction's argument uses embedding_stability"],
        ),
        "P10" => biconditional(id, facts, vec![fixed], ("galois", r.galois), vec![], vec![]),
        "P13" => {
            let Some((kl, lm)) = &facts.steps else { return Ok(Vec::new()) };
            let premise = Flag::from(kl.finite.is_true()).and(lm.finite);
            let premise = ("noetherian(K,L) and noetherian(L,M)", premise);
            vec![
                make_row(
                    RowSpec {
                        id,
                        direction: "=> separable(K,M)",
                        hypotheses: vec![perfect],
                        relation: Relation::Implies,
                        lhs: premise,
                        rhs: ("separable(K,M)", r.separable),
                        notes: vec![],
                    },
                    facts,
                ),
                make_row(
                    RowSpec {
                        id,
                        direction: "=> noetherian(K,M)",
                        hypotheses: vec![perfect, stable],
                        relation: Relation::Implies,
                        lhs: premise,
                        rhs: ("noetherian(K,M)", facts.noetherian),
                        notes: vec![],
                    },
                    facts,
                ),
            ]
        }
        "P14" => {
            let Some((_, lm)) = &facts.steps else { return Ok(Vec::new()) };
            let premise = ("noetherian(K,M)", facts.noetherian);
            vec![
                make_row(
                    RowSpec {
                        id,
                        direction: "=> normal(L,M)",
                        hypotheses: vec![fixed],
                        relation: Relation::Implies,
                        lhs: premise,
                        rhs: ("normal(L,M)", lm.normal),
                        notes: vec![],
                    },
                    facts,
                ),
                make_row(
                    RowSpec {
                        id,
                        direction: "=> noetherian(L,M)",
                        hypotheses: vec![fixed],
                        relation: Relation::Implies,
                        lhs: premise,
                        rhs: ("noetherian(L,M)", lm.finite),
                        notes: vec![],
                    },
                    facts,
                ),
            ]
        }
        "P15" => {
            let deg2 = (HYP_DEGREE_TWO, facts.hyp(HYP_DEGREE_TWO));
            vec![
                make_row(
                    RowSpec {
                        id,
                        direction: "claim noetherian",
                        hypotheses: vec![deg2],
                        relation: Relation::Claim,
                        lhs: ("noetherian", facts.noetherian),
                        rhs: ("claimed", Flag::True),
                        notes: vec![],
                    },
                    facts,
                ),
                make_row(
                    RowSpec {
                        id,
                        direction: "claim normal",
                        hypotheses: vec![deg2, fixed],
                        relation: Relation::Claim,
                        lhs: ("normal", r.normal),
                        rhs: ("claimed", Flag::True),
                        notes: vec![],
                    },
                    facts,
                ),
            ]
        }
        "P17" | "P18" => {
            let hypotheses = if id == "P17" { vec![("algebraic", r.algebraic), fixed] } else { vec![("finite", r.finite)] };
            vec![make_row(
                RowSpec {
                    id,
                    direction: "claim certificate",
                    hypotheses,
                    relation: Relation::Claim,
                    lhs: ("certificate", facts.certificate),
                    rhs: ("claimed", Flag::True),
                    notes: vec!["finite generation certified for XL[X] up to the degree bound"],
                },
                facts,
            )]
        }
        "T3" => {
            let others = [
                ("(b)", "nilradical_zero", facts.magid_flag(|m| m.reduced)),
                ("(c)", "unit_times_idempotent", facts.magid_flag(|m| m.unit_times_idempotent)),
                ("(d)", "idempotent_generated", facts.magid_flag(|m| m.idempotent_generated)),
                ("(e)", "noetherian", facts.noetherian),
                ("(f)", "finite", r.finite),
                ("(g)", "algebraic", r.algebraic),
                ("(h)", "galois", r.galois),
            ];
            others
                .into_iter()
                .map(|(tag, name, flag)| {
                    let direction = format!("(a) <=> {tag}");
                    let mut row = make_row(
                        RowSpec {
                            id,
                            direction: "",
                            hypotheses: vec![fixed],
                            relation: Relation::Equivalent,
                            lhs: ("separable", r.separable),
                            rhs: (name, flag),
                            notes: vec![],
                        },
                        facts,
                    );
                    row.direction = direction;
                    row
                })
                .collect()
        }
        "T4" => vec![make_row(
            RowSpec {
                id,
                direction: "(a) <=> normal",
                hypotheses: vec![perfect, fixed],
                relation: Relation::Equivalent,
                lhs: ("separable", r.separable),
                rhs: ("normal", r.normal),
                notes: vec![],
            },
            facts,
        )],
        other => return Err(Error::domain(format!("unknown check {other}"))),
    };
    Ok(rows)
}

/// Fields of `expected` that the report does not reproduce.
pub fn fixture_mismatches(facts: &EntryFacts, expected: &BTreeMap<String, serde_json::Value>) -> Result<Vec<String>> {
    let actual = serde_json::to_value(&facts.report).map_err(|e| Error::internal(e.to_string()))?;
    let mut out = Vec::new();
    for (key, want) in expected {
        let got = actual.get(key).cloned().unwrap_or(serde_json::Value::Null);
        if &got != want {
            out.push(format!("{}: {key} expected {want}, got {got}", facts.name));
        }
    }
    Ok(out)
}

/// All checks over all entries, ordered by (check id, entry name).
pub fn run_all(catalog: &[InputSpec], opts: HarnessOptions) -> Result<VerdictTable> {
    let facts: Vec<EntryFacts> = catalog.iter().map(|s| EntryFacts::gather(s, opts)).collect::<Result<_>>()?;
    let mut mismatches = Vec::new();
    for (spec, f) in catalog.iter().zip(&facts) {
        mismatches.extend(fixture_mismatches(f, &spec.expected)?);
    }
    let mut order: Vec<usize> = (0..facts.len()).collect();
    order.sort_by(|&a, &b| facts[a].name.cmp(&facts[b].name));
    let mut rows = Vec::new();
    for id in CHECK_IDS {
        for &i in &order {
            rows.extend(run_check(id, &facts[i])?);
        }
    }
    let mut summary = Summary::default();
    for r in &rows {
        match r.verdict {
            Verdict::Consistent => summary.consistent += 1,
            Verdict::Violation => summary.violation += 1,
            Verdict::HypothesisNotMet => summary.hypothesis_not_met += 1,
            Verdict::CapabilityLimited => summary.capability_limited += 1,
        }
    }
    Ok(VerdictTable {
        entries: order.iter().map(|&i| facts[i].name.clone()).collect(),
        rows,
        summary,
        fixture_mismatches: mismatches,
        notes: vec![
            NORMAL_FINITE_CAVEAT.to_string(),
            format!("tensor products use {}", magid::SURROGATE_NOTE),
            format!("certificates use degree bound {}", opts.bound),
        ],
    })
}

fn entry(name: &str, base: &str, ext: &[&str], expected: serde_json::Value) -> InputSpec {
    let mut spec = InputSpec::new(base, ext);
    spec.name = Some(name.to_string());
    if let serde_json::Value::Object(m) = expected {
        spec.expected = m.into_iter().collect();
    }
    spec
}

fn galois(degree: usize, group: &str) -> serde_json::Value {
    json!({"degree": degree, "separable": true, "normal": true, "galois": true, "aut_order": degree, "group_id": group})
}

/// Extensions over ℚ, finite fields and 𝔽_p(t), plus two infinite markers.
pub fn builtin_catalog() -> Vec<InputSpec> {
    let mut cat = vec![
        entry("Q/Q", "Q", &[], galois(1, "C1")),
        entry("Q(sqrt2)/Q", "Q", &["x^2-2"], galois(2, "C2")),
        entry(
            "Q(cbrt2)/Q",
            "Q",
            &["x^3-2"],
            json!({"degree": 3, "separable": true, "normal": false, "galois": false, "aut_order": 1, "fixed_field_is_k": false}),
        ),
        entry("Q(sqrt2,sqrt3)/Q", "Q", &["x^2-2", "x^2-3"], galois(4, "V4")),
        entry("Q(i)/Q", "Q", &["x^2+1"], galois(2, "C2")),
        entry("Q(zeta5)/Q", "Q", &["x^4+x^3+x^2+x+1"], galois(4, "C4")),
        entry("Q(x^3-3x+1)/Q", "Q", &["x^3-3x+1"], galois(3, "C3")),
        entry("GF(4)/GF(2)", "GF(2)", &["x^2+x+1"], galois(2, "C2")),
        entry("GF(16)/GF(2)", "GF(2)", &["x^4+x+1"], galois(4, "C4")),
        entry("GF(16)/GF(4)/GF(2)", "GF(2)", &["x^2+x+1", "x^2+x+a"], galois(4, "C4")),
        entry("GF(9)/GF(3)", "GF(3)", &["x^2+1"], galois(2, "C2")),
        entry("GF(343)/GF(7)", "GF(7)", &["x^3-2"], galois(3, "C3")),
        entry(
            "GF(2)(t)(sqrt t)",
            "GF(2)(t)",
            &["x^2-t"],
            json!({"degree": 2, "separable": false, "normal": true, "galois": false, "aut_order": 1}),
        ),
        entry("GF(2)(t)[x^2+x+t]", "GF(2)(t)", &["x^2+x+t"], galois(2, "C2")),
        entry("GF(3)(t)(sqrt t)", "GF(3)(t)", &["x^2-t"], galois(2, "C2")),
        entry(
            "GF(3)(t)(cbrt t)",
            "GF(3)(t)",
            &["x^3-t"],
            json!({"degree": 3, "separable": false, "normal": true, "galois": false, "aut_order": 1}),
        ),
    ];
    let mut closure = entry(
        "algebraic closure of Q",
        "Q",
        &[],
        json!({"degree": "infinite", "finite": false, "algebraic": true, "separable": true, "normal": "unknown"}),
    );
    closure.infinite = Some("algebraic".into());
    let mut transcendental = entry(
        "Q(s)/Q",
        "Q",
        &[],
        json!({"degree": "infinite", "finite": false, "algebraic": false, "separable": false}),
    );
    transcendental.infinite = Some("transcendental".into());
    cat.push(closure);
    cat.push(transcendental);
    cat
}
