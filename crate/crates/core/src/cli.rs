//! Batch driver: group summaries, hypothesis scans and per-tag pipelines.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{geometric_sum, Precision};
use crate::freeness::{
    check_bass_pair, free_group_oracle, free_monoid_oracle, free_product_oracle, thm33_check, triangular_pair_check,
    FreenessError, FreenessReport, Verdict, DEFAULT_GROUP_LENGTH, DEFAULT_MONOID_LENGTH, DEFAULT_SYLLABLES,
};
use crate::group::{catalog, load_group_json, FiniteGroup, GroupError};
use crate::reps::{
    class2_rep, generated_subgroup, metabelian_sample_check, pierce_blocks, root_of_unity_index, CycMatrixJson, RepError,
    DEFAULT_PAIR_CAP,
};
use crate::ring::{hat_subgroup, GroupRingElement};
use crate::units::{
    bass, bicyclic_left, bovdi_left, bovdi_right, generalized_bovdi, predicted_bovdi_order, verify_order, OrderVerdict,
    PredictedOrder, Side, UnitError, UnitJson,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "unitforge", version, about = "Units, free products and free monoids in integral group rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group summaries.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// List the pairs (g, h) satisfying a tag's hypotheses.
    Scan {
        /// catalog key or path to a group JSON file
        group: String,
        #[arg(ignore_case = true)]
        tag: Tag,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build the units for a pair and run the checkers and oracles.
    Check(CheckArgs),
}

#[derive(Debug, Subcommand)]
pub enum GroupAction {
    /// Order, centre, class and element orders.
    Info {
        group: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    pub group: String,
    #[arg(ignore_case = true)]
    pub tag: Tag,
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long)]
    pub h: Option<String>,
    /// Bovdi exponent of the first unit
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub t: Option<u64>,
    /// Bass parameters `k,m`; give twice
    #[arg(long, value_parser = parse_bass)]
    pub bass: Vec<(u64, u64)>,
    #[arg(long, default_value_t = DEFAULT_SYLLABLES)]
    pub syllables: usize,
    /// word length bound (free group, free monoid, metabelian check)
    #[arg(long)]
    pub len: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

fn parse_bass(s: &str) -> Result<(u64, u64), String> {
    let (k, m) = s.split_once(',').ok_or_else(|| format!("expected k,m, got '{s}'"))?;
    let p = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("'{x}': {e}"));
    Ok((p(k)?, p(m)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "UPPERCASE")]
pub enum Tag {
    /// order of Bovdi units
    Lemma31,
    /// ⟨u, u^w⟩ is metabelian
    Prop32,
    /// free monoids from Bass-perturbed units
    Thm33,
    /// class 2: free products of Bovdi units
    Thm41,
    /// nilpotent, o(h) prime: C_p * C_p
    Thm42,
    /// free group of rank 2, p odd
    Cor43,
}

impl Tag {
    pub const ALL: [Tag; 6] = [Tag::Lemma31, Tag::Prop32, Tag::Thm33, Tag::Thm41, Tag::Thm42, Tag::Cor43];

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Lemma31 => "LEMMA31",
            Tag::Prop32 => "PROP32",
            Tag::Thm33 => "THM33",
            Tag::Thm41 => "THM41",
            Tag::Thm42 => "THM42",
            Tag::Cor43 => "COR43",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Freeness(#[from] FreenessError),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
    /// stdout closed early, e.g. piped into `head`
    #[error("output closed")]
    OutputClosed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Hypothesis(_)
            | CliError::Unit(UnitError::Hypothesis(_) | UnitError::TrivialCase | UnitError::BadBassParams { .. })
            | CliError::Rep(RepError::HypothesisViolation(_))
            | CliError::Freeness(FreenessError::BadBassParams { .. }) => EXIT_HYPOTHESIS,
            _ => EXIT_ERROR,
        }
    }
}

/// A catalog key, or else a path to a group JSON file.
pub fn load_group(spec: &str) -> Result<Arc<FiniteGroup>, CliError> {
    if let Ok(c) = catalog(spec) {
        return Ok(c.group);
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{spec}: {e}")))?;
        return Ok(Arc::new(load_group_json(&text, true)?));
    }
    Err(GroupError::UnknownGroup(spec.to_string()).into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub group: String,
    pub order: usize,
    pub abelian: bool,
    /// absent when not nilpotent
    pub nilpotency_class: Option<usize>,
    pub exponent: usize,
    pub center: Vec<String>,
    /// element order ↦ number of elements
    pub element_orders: BTreeMap<usize, usize>,
}

pub fn group_info(name: &str, g: &FiniteGroup) -> GroupInfo {
    let mut element_orders = BTreeMap::new();
    for x in g.elements() {
        *element_orders.entry(g.element_order(x)).or_insert(0) += 1;
    }
    GroupInfo {
        group: name.to_string(),
        order: g.order(),
        abelian: g.is_abelian(),
        nilpotency_class: g.nilpotency_class().ok(),
        exponent: g.exponent(),
        center: g.center().elements().iter().map(|&x| g.name(x)).collect(),
        element_orders,
    }
}

impl GroupInfo {
    fn render(&self) -> String {
        let mut s = String::new();
        let class = self.nilpotency_class.map_or("not nilpotent".to_string(), |c| format!("class {c}"));
        let _ = writeln!(s, "{}: order {}, {}, exponent {}", self.group, self.order, class, self.exponent);
        let _ = writeln!(s, "  center: {{{}}}", self.center.join(", "));
        let orders: Vec<String> = self.element_orders.iter().map(|(o, c)| format!("{o}:{c}")).collect();
        let _ = writeln!(s, "  element orders (order:count): {}", orders.join(" "));
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub group: String,
    pub g: String,
    pub h: String,
    /// every tag whose hypotheses the pair satisfies
    pub tags: Vec<Tag>,
    pub notes: String,
}

fn prime_of(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

fn multiplicative_order(k: u64, n: u64) -> Option<u64> {
    if k.gcd(&n) != 1 {
        return None;
    }
    let mut acc = k % n;
    for m in 1..=n {
        if acc == 1 % n {
            return Some(m);
        }
        acc = acc * k % n;
    }
    None
}

/// Non-trivial Bass exponents `1 < k < n−1` coprime to `n`.
fn bass_exponents(n: u64) -> Vec<u64> {
    (2..n.saturating_sub(1)).filter(|k| k.gcd(&n) == 1).collect()
}

/// Tags satisfied by `(g, h)`; `group_class` is the class of the whole
/// group when nilpotent.
fn pair_tags(g_: &FiniteGroup, group_class: Option<usize>, g: usize, h: usize) -> (Vec<Tag>, String) {
    if g_.is_in_normalizer(g, h) {
        return (Vec::new(), String::new());
    }
    let oh = g_.element_order(h);
    let m = g_.min_normalized_power(g, h);
    let mut tags = vec![Tag::Lemma31, Tag::Prop32];
    if bass_exponents(oh as u64).len() >= 2 {
        tags.push(Tag::Thm33);
    }
    let sub_class = match group_class {
        Some(c) if c <= 2 => Some(2),
        _ => {
            let (s, _) = generated_subgroup(g_, &[g, h]);
            s.nilpotency_class().ok()
        }
    };
    let p = prime_of(oh);
    if sub_class == Some(2) {
        if let Some(p) = p {
            let mut ok = true;
            // g ∉ N(⟨h^{p^i}⟩) for every p^i < o(h)
            let mut q = 1usize;
            while q < oh {
                if g_.is_in_normalizer(g, g_.pow(h, q as i64)) {
                    ok = false;
                }
                q *= p;
            }
            if ok {
                tags.push(Tag::Thm41);
            }
        }
    }
    if sub_class.is_some() && p == Some(oh) {
        tags.push(Tag::Thm42);
        if oh != 2 {
            tags.push(Tag::Cor43);
        }
    }
    let class_note = sub_class.map_or("<g,h> not nilpotent".to_string(), |c| format!("class of <g,h> = {c}"));
    (tags, format!("o(h) = {oh}, m = {m}, {class_note}"))
}

pub fn scan(name: &str, g_: &FiniteGroup, tag: Tag) -> Vec<ScanResult> {
    let class = g_.nilpotency_class().ok();
    let mut out = Vec::new();
    for h in g_.elements() {
        for g in g_.elements() {
            let (tags, notes) = pair_tags(g_, class, g, h);
            if tags.contains(&tag) {
                out.push(ScanResult { group: name.to_string(), g: g_.name(g), h: g_.name(h), tags, notes });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub name: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<FreenessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

impl Step {
    fn from_report(name: &str, report: FreenessReport) -> Self {
        Step { name: name.to_string(), verdict: report.verdict, report: Some(report), detail: None }
    }

    fn plain(name: &str, verdict: Verdict, detail: serde_json::Value) -> Self {
        Step { name: name.to_string(), verdict, report: None, detail: Some(detail) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: CycMatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub group: String,
    pub tag: Tag,
    pub g: String,
    pub h: String,
    pub units: Vec<UnitJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<NamedMatrix>,
    pub steps: Vec<Step>,
}

impl CheckReport {
    pub fn exit_code(&self) -> i32 {
        if self.steps.iter().any(|s| s.verdict == Verdict::Violation) {
            EXIT_VIOLATION
        } else if self.steps.iter().any(|s| s.verdict == Verdict::Inconclusive) {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_OK
        }
    }

    fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} (g = {}, h = {})", self.group, self.tag.as_str(), self.g, self.h);
        for u in &self.units {
            let _ = writeln!(s, "  unit {:?}: {}", u.kind, u.element);
        }
        for m in &self.matrices {
            let _ = writeln!(s, "  matrix {} over Q(zeta_{}):", m.name, m.matrix.conductor);
            for row in &m.matrix.entries {
                let _ = writeln!(s, "    [ {} ]", row.join(" | "));
            }
        }
        for st in &self.steps {
            let verdict = serde_json::to_value(st.verdict).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
            let _ = write!(s, "  [{verdict}] {}", st.name);
            if let Some(r) = &st.report {
                if let Some(c) = &r.conclusion {
                    let _ = write!(s, ": {c}");
                }
                if r.words_checked > 0 {
                    let _ = write!(s, " ({} words, bound {})", r.words_checked, r.bound);
                }
                if let Some(w) = &r.witness {
                    let _ = write!(s, " witness {w:?}");
                }
                if !r.notes.is_empty() {
                    let _ = write!(s, "; {}", r.notes);
                }
            } else if let Some(d) = &st.detail {
                let _ = write!(s, ": {d}");
            }
            let _ = writeln!(s);
        }
        s
    }
}

fn element(g: &FiniteGroup, name: &Option<String>, flag: &str) -> Result<usize, CliError> {
    let n = name.as_deref().ok_or_else(|| CliError::Usage(format!("--{flag} is required for this tag")))?;
    Ok(g.find(n)?)
}

/// Order as a free-product factor index: 1 stands for infinite.
fn factor_order(v: OrderVerdict) -> Option<u64> {
    match v {
        OrderVerdict::ConfirmedFinite(n) => Some(n),
        OrderVerdict::ConfirmedInfinite => Some(1),
        OrderVerdict::ExceededBound => None,
    }
}

/// Matrix images of `u` and `v` in the class-2 component, basis reordered
/// so the exceptional entries sit at (2,1) and (1,2), then the triangular
/// pair criterion.
pub fn class2_certificate(
    s: &Arc<FiniteGroup>,
    g: usize,
    h: usize,
    u: &GroupRingElement,
    v: &GroupRingElement,
    prec: Precision,
) -> Result<(Step, Vec<NamedMatrix>), CliError> {
    let sys = class2_rep(s, g, h)?;
    let d = sys.degree;
    let mut order = vec![0, d - 1];
    order.extend(1..d - 1);
    let a = sys.to_matrix(u)?.permute_basis(&order);
    let b = sys.to_matrix(v)?.permute_basis(&order);
    let root = |x| root_of_unity_index(x).ok_or_else(|| CliError::Usage("diagonal entry is not a root of unity".into()));
    let (n, k_n) = root(a.get(1, 1))?;
    let (m, k_m) = root(b.get(1, 1))?;
    let report = triangular_pair_check(&a, &b, n, k_n, m, k_m, prec)?;
    let mut step = Step::from_report(if d >= 3 { "lemma25_check" } else { "prop24_check" }, report);
    step.detail = Some(serde_json::json!({
        "degree": d,
        "conductor": sys.conductor,
        "basis_order": order,
        "image_of_c": sys.image_of_c().to_string(),
        "a21_times_d_norm_sq": (a.get(1, 0) * b.get(0, 1)).norm_sq().to_string(),
        "roots": [[n, k_n], [m, k_m]],
    }));
    let mats = vec![
        NamedMatrix { name: "u".into(), matrix: (&a).into() },
        NamedMatrix { name: "v".into(), matrix: (&b).into() },
    ];
    Ok((step, mats))
}

/// Projects `(G, g, h)` through `G/Z(G)` until `⟨g,h⟩` has class 2,
/// recording that the images of `b_k(g,h̃)` and `b_l(h̃,g⁻¹)` are the Bovdi
/// units of the images.
pub fn project_to_class_two(
    s: &Arc<FiniteGroup>,
    g: usize,
    h: usize,
    k: u64,
    l: u64,
) -> Result<(Arc<FiniteGroup>, usize, usize, Vec<Step>), CliError> {
    let mut cur = s.clone();
    let (mut g, mut h) = (g, h);
    let mut u = bovdi_left(&cur, k, g, h)?.element;
    let mut v = bovdi_right(&cur, l, h, cur.inv(g))?.element;
    let mut steps = Vec::new();
    let p = cur.element_order(h);
    loop {
        let class = cur.nilpotency_class()?;
        if class <= 2 {
            return Ok((cur, g, h, steps));
        }
        let (q, proj) = cur.quotient_by_central(&cur.center())?;
        let q = Arc::new(q);
        let (gq, hq) = (proj[g], proj[h]);
        if q.element_order(hq) != p || q.is_in_normalizer(gq, hq) {
            return Err(CliError::Hypothesis("hypotheses not inherited by G/Z(G)".into()));
        }
        let uq = bovdi_left(&q, k, gq, hq)?.element;
        let vq = bovdi_right(&q, l, hq, q.inv(gq))?.element;
        let coherent = u.project(&q, &proj) == uq && v.project(&q, &proj) == vq;
        steps.push(Step::plain(
            "quotient_coherence",
            if coherent { Verdict::CertifiedCondition } else { Verdict::Violation },
            serde_json::json!({ "from_order": cur.order(), "to_order": q.order(), "class_before": class }),
        ));
        if !coherent {
            return Err(CliError::Usage("projected units differ from the quotient Bovdi units".into()));
        }
        cur = q;
        g = gq;
        h = hq;
        u = uq;
        v = vq;
    }
}

fn order_bound(g: &FiniteGroup) -> u64 {
    (g.order() as u64).max(2) * 2
}

pub fn check(name: &str, group: &Arc<FiniteGroup>, args: &CheckArgs) -> Result<CheckReport, CliError> {
    let g = element(group, &args.g, "g")?;
    let h = element(group, &args.h, "h")?;
    let prec = Precision::from_env();
    let mut report = CheckReport {
        group: name.to_string(),
        tag: args.tag,
        g: group.name(g),
        h: group.name(h),
        units: Vec::new(),
        matrices: Vec::new(),
        steps: Vec::new(),
    };
    let oh = group.element_order(h) as u64;
    if group.is_in_normalizer(g, h) {
        return Err(CliError::Hypothesis(format!("g = {} normalises <h>", group.name(g))));
    }
    match args.tag {
        Tag::Lemma31 => {
            let ks: Vec<u64> = match args.k {
                Some(k) => vec![k],
                None => (1..oh).collect(),
            };
            for k in ks {
                if k == 0 || k >= oh {
                    return Err(CliError::Hypothesis(format!("need 1 ≤ k < o(h) = {oh}")));
                }
                let predicted = predicted_bovdi_order(group, k, g, h)?;
                for unit in [bovdi_left(group, k, g, h)?, bovdi_right(group, k, h, g)?] {
                    let verdict = verify_order(&unit, order_bound(group));
                    let agrees = matches!(
                        (predicted, verdict),
                        (PredictedOrder::Finite(a), OrderVerdict::ConfirmedFinite(b)) if a == b
                    ) || matches!((predicted, verdict), (PredictedOrder::Infinite, OrderVerdict::ConfirmedInfinite));
                    report.steps.push(Step::plain(
                        &format!("order k={k} {:?}", unit.kind),
                        if agrees { Verdict::CertifiedCondition } else { Verdict::Violation },
                        serde_json::json!({ "predicted": predicted, "verified": verdict }),
                    ));
                    report.units.push(unit.to_json(Some(verdict)));
                }
            }
        }
        Tag::Prop32 => {
            let k = args.k.unwrap_or(1);
            let u = bovdi_left(group, k, g, h)?;
            let w = bicyclic_left(group, g, h)?;
            let winv = w.inverse.clone();
            let uw = &(&winv * &u.element) * &w.element;
            let e = hat_subgroup(group, &group.cyclic_subgroup(h));
            let one = GroupRingElement::one(group);
            let hk = GroupRingElement::from_element(group, group.pow(h, k as i64));
            let expected_tl = &hk * &(&one - &e);
            let mut pattern = true;
            for x in [&u.element, &uw] {
                let b = pierce_blocks(x, &e)?;
                pattern &= b.bottom_left.is_zero() && b.bottom_right == e && b.top_left == expected_tl;
            }
            report.steps.push(Step::plain(
                "pierce_pattern",
                if pattern { Verdict::CertifiedCondition } else { Verdict::Violation },
                serde_json::json!({ "bottom_left": "0", "bottom_right": "e", "top_left": "h^k(1-e)" }),
            ));
            let len = args.len.unwrap_or(3);
            let m = metabelian_sample_check(&u.element, &w.element, len, DEFAULT_PAIR_CAP, args.seed)?;
            report.steps.push(Step::plain(
                "metabelian_sample_check",
                if m.passed { Verdict::PassedToBound } else { Verdict::Violation },
                serde_json::to_value(&m).expect("serialisable"),
            ));
            report.units.push(u.to_json(None));
            report.units.push(w.to_json(None));
        }
        Tag::Thm33 => {
            let pairs = match args.bass.as_slice() {
                [] => default_bass_pairs(oh)?,
                [a, b] => [*a, *b],
                _ => return Err(CliError::Usage("give --bass exactly twice".into())),
            };
            for &(k, m) in &pairs {
                check_bass_pair(oh, k, m)?;
            }
            let out = thm33_check(oh, pairs[0], pairs[1], prec)?;
            let mut step = Step::from_report("thm33_check", out.report.clone());
            step.detail = Some(serde_json::json!({ "mu_abs": out.mu_abs, "power_abs": out.power_abs, "margins": out.margins }));
            report.steps.push(step);
            let mut gens = Vec::new();
            for &(k, m) in &pairs {
                let b = bass(group, h, k, m)?;
                let gb = generalized_bovdi(group, &b.element, g, h, Side::Left)?;
                gens.push(gb.element.clone());
                report.units.push(b.to_json(None));
                report.units.push(gb.to_json(None));
            }
            let len = args.len.unwrap_or(DEFAULT_MONOID_LENGTH);
            report.steps.push(Step::from_report("free_monoid_oracle", free_monoid_oracle(&gens[0], &gens[1], len)?));
        }
        Tag::Thm41 => {
            let (s, emb) = generated_subgroup(group, &[g, h]);
            let pos = |x: usize| emb.iter().position(|&y| y == x).expect("generator lies in <g,h>");
            let (gs, hs) = (pos(g), pos(h));
            let l = args.l.unwrap_or(1);
            let t = args.t.unwrap_or(1);
            if l == 0 || t == 0 || l > oh || t > oh {
                return Err(CliError::Hypothesis(format!("need 1 ≤ l, t ≤ o(h) = {oh}")));
            }
            let u = bovdi_left(&s, l, gs, hs)?;
            let v = bovdi_right(&s, t, hs, s.inv(gs))?;
            run_pair(&mut report, &s, gs, hs, &u.element, &v.element, args.syllables, prec)?;
            let bound = order_bound(&s);
            report.units.push(u.to_json(Some(verify_order(&u, bound))));
            report.units.push(v.to_json(Some(verify_order(&v, bound))));
        }
        Tag::Thm42 | Tag::Cor43 => {
            let (s, emb) = generated_subgroup(group, &[g, h]);
            let pos = |x: usize| emb.iter().position(|&y| y == x).expect("generator lies in <g,h>");
            let (gs, hs) = (pos(g), pos(h));
            if s.nilpotency_class().is_err() {
                return Err(CliError::Hypothesis("<g,h> is not nilpotent".into()));
            }
            if prime_of(oh as usize) != Some(oh as usize) {
                return Err(CliError::Hypothesis(format!("o(h) = {oh} is not prime")));
            }
            if args.tag == Tag::Cor43 && oh == 2 {
                return Err(CliError::Hypothesis("o(h) = 2; the free group statement needs p odd".into()));
            }
            let k = args.k.unwrap_or(1);
            let l = args.l.unwrap_or(1);
            if k == 0 || l == 0 || k >= oh || l >= oh {
                return Err(CliError::Hypothesis(format!("need 1 ≤ k, l ≤ p − 1 = {}", oh - 1)));
            }
            if args.tag == Tag::Thm42 {
                let u = bovdi_left(&s, k, gs, hs)?;
                let v = bovdi_right(&s, l, hs, s.inv(gs))?;
                let (q, gq, hq, steps) = project_to_class_two(&s, gs, hs, k, l)?;
                report.steps.extend(steps);
                let uq = bovdi_left(&q, k, gq, hq)?.element;
                let vq = bovdi_right(&q, l, hq, q.inv(gq))?.element;
                let (mut step, mats) = class2_certificate(&q, gq, hq, &uq, &vq, prec)?;
                step.name = format!("{} (class-2 image of order {})", step.name, q.order());
                report.steps.push(step);
                report.matrices = mats;
                report.steps.push(Step::from_report(
                    "free_product_oracle",
                    free_product_oracle(&u.element, oh, &v.element, oh, args.syllables)?,
                ));
                let bound = order_bound(&s);
                report.units.push(u.to_json(Some(verify_order(&u, bound))));
                report.units.push(v.to_json(Some(verify_order(&v, bound))));
            } else {
                let u = bovdi_left(&s, k, gs, hs)?;
                let w = bovdi_left(&s, l, gs, hs)?;
                let ws = w.element.involution();
                let a = &u.element * &ws;
                let b = &ws * &u.element;
                let len = args.len.unwrap_or(DEFAULT_GROUP_LENGTH);
                report.steps.push(Step::from_report("free_group_oracle", free_group_oracle(&a, &b, len)?));
                report.units.push(u.to_json(None));
                report.units.push(w.to_json(None));
            }
        }
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn run_pair(
    report: &mut CheckReport,
    s: &Arc<FiniteGroup>,
    g: usize,
    h: usize,
    u: &GroupRingElement,
    v: &GroupRingElement,
    syllables: usize,
    prec: Precision,
) -> Result<(), CliError> {
    let (step, mats) = class2_certificate(s, g, h, u, v, prec)?;
    report.steps.push(step);
    report.matrices = mats;
    let bound = order_bound(s);
    let ou = factor_order(verify_order(&as_unit(u), bound));
    let ov = factor_order(verify_order(&as_unit(v), bound));
    match (ou, ov) {
        (Some(a), Some(b)) if a > 1 && b > 1 => {
            report.steps.push(Step::from_report("free_product_oracle", free_product_oracle(u, a, v, b, syllables)?));
        }
        _ => report.steps.push(Step::plain(
            "free_product_oracle",
            Verdict::PassedToBound,
            serde_json::json!({ "skipped": "a factor has infinite order; the oracle enumerates finite exponents only" }),
        )),
    }
    Ok(())
}

/// A bare unit for order verification by powering.
fn as_unit(x: &GroupRingElement) -> crate::units::UnitDescriptor {
    crate::units::UnitDescriptor {
        kind: crate::units::UnitKind::GeneralizedBovdi,
        params: Default::default(),
        element: x.clone(),
        inverse: x.try_invert().unwrap_or_else(|_| x.clone()),
        predicted_order: PredictedOrder::Unknown,
        trivial: false,
    }
}

/// First two non-trivial Bass pairs `(k, ord_n(k))` with distinct `μ^m`.
fn default_bass_pairs(n: u64) -> Result<[(u64, u64); 2], CliError> {
    let cands: Vec<(u64, u64)> =
        bass_exponents(n).into_iter().filter_map(|k| multiplicative_order(k, n).map(|m| (k, m))).collect();
    for (i, a) in cands.iter().enumerate() {
        for b in &cands[i + 1..] {
            let pa = geometric_sum(n, a.0).pow(a.1 as i64).ok();
            let pb = geometric_sum(n, b.0).pow(b.1 as i64).ok();
            if pa != pb {
                return Ok([*a, *b]);
            }
        }
    }
    Err(CliError::Hypothesis(format!("o(h) = {n} admits no two distinct non-trivial Bass pairs")))
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), CliError> {
    if let Some(p) = path {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

/// Runs one command, writing human-readable output to `out`; returns the
/// process exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let io = |e: std::io::Error| match e.kind() {
        std::io::ErrorKind::BrokenPipe => CliError::OutputClosed,
        _ => CliError::Io(e.to_string()),
    };
    match cli.command {
        Command::Group { action: GroupAction::Info { group, json } } => {
            let g = load_group(&group)?;
            let info = group_info(&group, &g);
            out.write_all(info.render().as_bytes()).map_err(io)?;
            write_json(&json, &info)?;
            Ok(EXIT_OK)
        }
        Command::Scan { group, tag, json } => {
            let g = load_group(&group)?;
            let results = scan(&group, &g, tag);
            writeln!(out, "{group} {}: {} pair(s)", tag.as_str(), results.len()).map_err(io)?;
            for r in &results {
                let tags: Vec<&str> = r.tags.iter().map(|t| t.as_str()).collect();
                writeln!(out, "  g = {}, h = {}  [{}]  {}", r.g, r.h, tags.join(" "), r.notes).map_err(io)?;
            }
            write_json(&json, &results)?;
            Ok(EXIT_OK)
        }
        Command::Check(args) => {
            let g = load_group(&args.group)?;
            let report = check(&args.group, &g, &args)?;
            out.write_all(report.render().as_bytes()).map_err(io)?;
            write_json(&args.json, &report)?;
            Ok(report.exit_code())
        }
    }
}

/// Parses `args` (program name first) and runs; errors go to stderr.
pub fn main_with<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(code) => code,
        Err(CliError::OutputClosed) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
