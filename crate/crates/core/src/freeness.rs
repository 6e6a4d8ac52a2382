//! Ping-pong condition checkers and exhaustive word oracles.
//!
//! The checkers decide the inequalities behind the free product and free
//! monoid criteria with exact arithmetic plus certified numerics. The
//! oracles enumerate words up to a bound in exact ℚG arithmetic; passing an
//! oracle is evidence, not a proof.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{geometric_sum, rational, geometric_sum_bound, Certified, CycError, CyclotomicNumber, GeometricBound, Precision};
use crate::reps::CycMatrix;
use crate::ring::{Digest256, GroupRingElement, RingError};

pub const DEFAULT_SYLLABLES: usize = 8;
pub const DEFAULT_GROUP_LENGTH: usize = 12;
pub const DEFAULT_MONOID_LENGTH: usize = 10;

/// Shallow levels of the search tree are explored in parallel.
const PAR_DEPTH: usize = 3;

const CAVEAT: &str = "exhaustive up to the bound; not a proof of freeness";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreenessError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("invalid non-trivial Bass parameters k = {k}, m = {m} for n = {n}")]
    BadBassParams { k: u64, m: u64, n: u64 },
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("generator {generator} does not satisfy x^{order} = 1")]
    NotTorsion { generator: String, order: u64 },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    CertifiedCondition,
    PassedToBound,
    Violation,
    Inconclusive,
}

/// Syllables `(generator label, exponent)`, left to right.
pub type Word = Vec<(String, i64)>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Word>,
    /// the earlier word a monoid witness equals
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collides_with: Option<Word>,
    pub bound: u64,
    pub words_checked: u64,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
    /// e.g. `C_3 * C_3`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
}

impl FreenessReport {
    fn condition(verdict: Verdict, notes: String, conclusion: Option<String>) -> Self {
        FreenessReport { verdict, witness: None, collides_with: None, bound: 0, words_checked: 0, notes, conclusion }
    }

    pub fn is_success(&self) -> bool {
        matches!(self.verdict, Verdict::CertifiedCondition | Verdict::PassedToBound)
    }
}

fn cyclic_label(t: u64) -> String {
    if t == 1 {
        "C_inf".to_string()
    } else {
        format!("C_{t}")
    }
}

fn free_product_label(n: u64, m: u64) -> String {
    format!("{} * {}", cyclic_label(n), cyclic_label(m))
}

fn check_root_params(n: u64, k: u64, what: &str) -> Result<(), FreenessError> {
    if n == 0 || k == 0 || k > n || k.gcd(&n) != 1 {
        return Err(FreenessError::BadParams(format!("{what}: need 1 ≤ k ≤ n and gcd(k, n) = 1, got n = {n}, k = {k}")));
    }
    Ok(())
}

fn lift_all(xs: &[&CyclotomicNumber], extra: &[u64]) -> Result<Vec<CyclotomicNumber>, CycError> {
    let big_n = xs.iter().map(|x| x.conductor()).chain(extra.iter().copied()).fold(1u64, |a, b| a.lcm(&b));
    xs.iter().map(|x| x.lift(big_n)).collect()
}

/// `4·z_{k_n}·z_{k_m}` over `ℚ(ζ_{lcm(n,m)})`.
fn ping_pong_rhs(n: u64, k_n: u64, m: u64, k_m: u64) -> CyclotomicNumber {
    let l = n.lcm(&m);
    let zn = geometric_sum(n, k_n).lift(l).expect("n divides lcm");
    let zm = geometric_sum(m, k_m).lift(l).expect("m divides lcm");
    (&zn * &zm).scale(&BigRational::from_integer(4.into()))
}

fn approx_abs(x: &CyclotomicNumber) -> f64 {
    x.embed(1).map(|b| b.modulus()).unwrap_or(f64::NAN)
}

fn decide(lhs: &CyclotomicNumber, rhs: &CyclotomicNumber, n: u64, m: u64, prec: Precision) -> Result<FreenessReport, FreenessError> {
    let lifted = lift_all(&[lhs, rhs], &[])?;
    let cmp = lifted[0].abs_cmp_abs(&lifted[1], 1, prec)?;
    let detail = format!("|lhs| ≈ {:.6}, 4|z z'| ≈ {:.6}", approx_abs(&lifted[0]), approx_abs(&lifted[1]));
    Ok(match cmp {
        Certified::Greater | Certified::Equal => {
            FreenessReport::condition(Verdict::CertifiedCondition, detail, Some(free_product_label(n, m)))
        }
        Certified::Less => FreenessReport::condition(Verdict::Inconclusive, format!("condition unmet: {detail}"), None),
        Certified::Undecided => {
            FreenessReport::condition(Verdict::Inconclusive, format!("numeric margin undecided: {detail}"), None)
        }
    })
}

/// Checks the 2×2 criterion for `[[ζ_n, u], [0, 1]]` and `[[ζ_m, 0], [v, 1]]`
/// with `ζ_n = e^{2πi k_n/n}`: `|uv| ≥ 4|z_{k_n} z_{k_m}|` unless
/// `n = m = 2`, where `u` or `v` nonzero suffices.
pub fn prop24_check(
    n: u64,
    k_n: u64,
    m: u64,
    k_m: u64,
    u: &CyclotomicNumber,
    v: &CyclotomicNumber,
    prec: Precision,
) -> Result<FreenessReport, FreenessError> {
    check_root_params(n, k_n, "first generator")?;
    check_root_params(m, k_m, "second generator")?;
    if n == 2 && m == 2 {
        return Ok(if !u.is_zero() || !v.is_zero() {
            FreenessReport::condition(
                Verdict::CertifiedCondition,
                "n = m = 2 and an off-diagonal entry is nonzero (infinite dihedral)".into(),
                Some(free_product_label(2, 2)),
            )
        } else {
            FreenessReport::condition(Verdict::Inconclusive, "condition unmet: u = v = 0".into(), None)
        });
    }
    let uv = lift_all(&[u, v], &[])?;
    let lhs = &uv[0] * &uv[1];
    decide(&lhs, &ping_pong_rhs(n, k_n, m, k_m), n, m, prec)
}

fn check_triangular_pair(a: &CycMatrix, b: &CycMatrix, n: u64, k_n: u64, m: u64, k_m: u64) -> Result<(), FreenessError> {
    check_root_params(n, k_n, "A")?;
    check_root_params(m, k_m, "B")?;
    let r = a.degree();
    if r != b.degree() {
        return Err(FreenessError::ShapeViolation(format!("degrees differ: {r} and {}", b.degree())));
    }
    if r < 2 {
        return Err(FreenessError::ShapeViolation(format!("degree {r} is too small")));
    }
    if a.conductor() != b.conductor() {
        return Err(FreenessError::ShapeViolation("A and B live over different conductors".into()));
    }
    let big_n = a.conductor().lcm(&n).lcm(&m);
    let root = |t: u64, k: u64| CyclotomicNumber::zeta_pow(big_n, (k * (big_n / t)) as i64);
    let same = |x: &CyclotomicNumber, y: &CyclotomicNumber| -> Result<bool, FreenessError> { Ok(x.lift(big_n)? == *y) };

    for i in 0..r {
        for j in i + 1..r {
            if !a.get(i, j).is_zero() {
                return Err(FreenessError::ShapeViolation(format!("A[{},{}] is nonzero above the diagonal", i + 1, j + 1)));
            }
        }
    }
    if !a.get(0, 0).is_one() {
        return Err(FreenessError::ShapeViolation(format!("A[1,1] = {} is not 1", a.get(0, 0))));
    }
    if !same(a.get(1, 1), &root(n, k_n))? {
        return Err(FreenessError::ShapeViolation(format!("A[2,2] = {} is not e^(2πi·{k_n}/{n})", a.get(1, 1))));
    }
    for i in 0..r {
        for j in 0..r {
            if i != j && (i, j) != (0, 1) && !b.get(i, j).is_zero() {
                return Err(FreenessError::ShapeViolation(format!("B[{},{}] breaks the D + d·E_12 pattern", i + 1, j + 1)));
            }
        }
    }
    if !b.get(0, 0).is_one() {
        return Err(FreenessError::ShapeViolation(format!("B[1,1] = {} is not 1", b.get(0, 0))));
    }
    if !same(b.get(1, 1), &root(m, k_m))? {
        return Err(FreenessError::ShapeViolation(format!("B[2,2] = {} is not e^(2πi·{k_m}/{m})", b.get(1, 1))));
    }
    if n > 1 && !a.pow(n).is_identity() {
        return Err(FreenessError::ShapeViolation(format!("A^{n} is not the identity")));
    }
    if m > 1 && !b.pow(m).is_identity() {
        return Err(FreenessError::ShapeViolation(format!("B^{m} is not the identity")));
    }
    Ok(())
}

/// Checks the degree-`r ≥ 3` criterion: `A` lower triangular with
/// `A_11 = 1`, `A_22 = ζ_n`, `A^n = 1`; `B = D + d·E_12` with `D` diagonal,
/// `D_11 = 1`, `D_22 = ζ_m`, `B^m = 1`; then `|A_21·d| ≥ 4|z_{k_n} z_{k_m}|`.
pub fn lemma25_check(
    a: &CycMatrix,
    b: &CycMatrix,
    n: u64,
    k_n: u64,
    m: u64,
    k_m: u64,
    prec: Precision,
) -> Result<FreenessReport, FreenessError> {
    if a.degree() < 3 {
        return Err(FreenessError::ShapeViolation(format!(
            "degree {}: need r ≥ 3 (r = 2 goes through the 2x2 criterion)",
            a.degree()
        )));
    }
    check_triangular_pair(a, b, n, k_n, m, k_m)?;
    let lhs = a.get(1, 0) * b.get(0, 1);
    decide(&lhs, &ping_pong_rhs(n, k_n, m, k_m), n, m, prec)
}

/// Same shape requirements as [`lemma25_check`], any degree `r ≥ 2`; in
/// degree 2 the matrices are the whole picture and the 2×2 criterion
/// (with its `n = m = 2` branch) is applied to `A_21` and `d` directly.
pub fn triangular_pair_check(
    a: &CycMatrix,
    b: &CycMatrix,
    n: u64,
    k_n: u64,
    m: u64,
    k_m: u64,
    prec: Precision,
) -> Result<FreenessReport, FreenessError> {
    if a.degree() >= 3 {
        return lemma25_check(a, b, n, k_n, m, k_m, prec);
    }
    check_triangular_pair(a, b, n, k_n, m, k_m)?;
    prop24_check(n, k_n, m, k_m, a.get(1, 0), b.get(0, 1), prec)
}

/// Exact check that two scaling-factor moduli are both at most `1/3`.
pub fn affine_monoid_check(x1: &BigRational, x2: &BigRational) -> bool {
    let third = rational(1, 3);
    [x1, x2].iter().all(|x| !x.is_negative() && **x <= third)
}

/// `|x|, |y| ≤ 1/3` for cyclotomic scaling factors; `None` when the
/// precision budget cannot decide.
pub fn affine_monoid_check_cyc(x: &CyclotomicNumber, y: &CyclotomicNumber, prec: Precision) -> Result<Option<bool>, CycError> {
    let third = rational(1, 3);
    let mut all = true;
    for z in [x, y] {
        match z.abs_cmp_certified(1, &third, prec)? {
            Certified::Less | Certified::Equal => {}
            Certified::Greater => all = false,
            Certified::Undecided => return Ok(None),
        }
    }
    Ok(Some(all))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm33Outcome {
    pub report: FreenessReport,
    /// `|μ_i|` at `ζ = e^{2πi/n}`
    pub mu_abs: [f64; 2],
    /// `|μ_i^{m_i}|`
    pub power_abs: [f64; 2],
    /// certified lower bounds on `|μ_i^{m_i}| − 3`
    pub margins: [f64; 2],
}

/// Validates `(k, m)` as a non-trivial Bass pair modulo `n`.
pub fn check_bass_pair(n: u64, k: u64, m: u64) -> Result<(), FreenessError> {
    let bad = FreenessError::BadBassParams { k, m, n };
    if n < 4 || k <= 1 || k + 1 >= n || k.gcd(&n) != 1 || m == 0 {
        return Err(bad);
    }
    let mut acc = 1u64;
    for _ in 0..m {
        acc = (acc as u128 * k as u128 % n as u128) as u64;
    }
    if acc != 1 {
        return Err(bad);
    }
    Ok(())
}

/// Conditions for two Bass units `u_{k1,m1}(h)`, `u_{k2,m2}(h)` with
/// `o(h) = n` to give a free monoid: `|μ_i| > 1`, `|μ_i|^{m_i} ≥ 3` and
/// `μ_1^{m_1} ≠ μ_2^{m_2}`, where `μ_i = (ζ^{k_i} − 1)/(ζ − 1)`.
pub fn thm33_check(n: u64, first: (u64, u64), second: (u64, u64), prec: Precision) -> Result<Thm33Outcome, FreenessError> {
    check_bass_pair(n, first.0, first.1)?;
    check_bass_pair(n, second.0, second.1)?;
    let three = BigRational::from_integer(3.into());
    let mut notes = Vec::new();
    let mut ok = true;
    let mut undecided = false;
    let mut mu_abs = [0.0; 2];
    let mut power_abs = [0.0; 2];
    let mut margins = [0.0; 2];
    let mut powers = Vec::new();
    for (i, &(k, m)) in [first, second].iter().enumerate() {
        let mu = geometric_sum(n, k);
        debug_assert_eq!(geometric_sum_bound(n, k), GeometricBound::GeOneStrict);
        match mu.abs_cmp_certified(1, &BigRational::one(), prec)? {
            Certified::Greater => {}
            Certified::Undecided => undecided = true,
            _ => {
                ok = false;
                notes.push(format!("|mu_{}| ≤ 1", i + 1));
            }
        }
        let p = mu.pow(m as i64)?;
        match p.abs_cmp_certified(1, &three, prec)? {
            Certified::Greater | Certified::Equal => {}
            Certified::Undecided => undecided = true,
            Certified::Less => {
                ok = false;
                notes.push(format!("|mu_{}|^{m} < 3", i + 1));
            }
        }
        mu_abs[i] = approx_abs(&mu);
        let pb = p.embed(1)?;
        power_abs[i] = pb.modulus();
        margins[i] = pb.modulus_range().0 - 3.0;
        powers.push(p);
    }
    if powers[0] == powers[1] {
        ok = false;
        notes.push("mu_1^m1 = mu_2^m2 exactly".into());
    }
    let detail = format!(
        "|mu|^m ≈ ({:.6}, {:.6}); margins ≥ ({:.3e}, {:.3e})",
        power_abs[0], power_abs[1], margins[0], margins[1]
    );
    let report = if !ok {
        FreenessReport::condition(Verdict::Inconclusive, format!("condition unmet: {}; {detail}", notes.join(", ")), None)
    } else if undecided {
        FreenessReport::condition(Verdict::Inconclusive, format!("numeric margin undecided; {detail}"), None)
    } else {
        FreenessReport::condition(Verdict::CertifiedCondition, detail, Some("free monoid of rank 2".into()))
    };
    Ok(Thm33Outcome { report, mu_abs, power_abs, margins })
}

/// What the word oracles need from the values they multiply.
pub trait WordValue: Clone + Send + Sync {
    fn times(&self, other: &Self) -> Self;
    fn is_identity(&self) -> bool;
}

impl WordValue for GroupRingElement {
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn is_identity(&self) -> bool {
        self.is_one()
    }
}

impl WordValue for CycMatrix {
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("matrices share a conductor")
    }
    fn is_identity(&self) -> bool {
        CycMatrix::is_identity(self)
    }
}

struct Letter<T> {
    generator: usize,
    exponent: i64,
    value: T,
}

struct Search<'a, T> {
    letters: &'a [Letter<T>],
    allowed: &'a (dyn Fn(usize, usize) -> bool + Sync),
    max_len: usize,
    best: AtomicUsize,
    found: Mutex<Vec<Vec<usize>>>,
}

impl<T: WordValue> Search<'_, T> {
    fn visit(&self, word: &[usize], value: &T) {
        let len = word.len();
        if len >= self.max_len || len + 1 > self.best.load(AtomicOrdering::Relaxed) {
            return;
        }
        let last = *word.last().expect("nonempty");
        let step = |c: usize| {
            if !(self.allowed)(last, c) {
                return;
            }
            let mut next = word.to_vec();
            next.push(c);
            let v = value.times(&self.letters[c].value);
            if v.is_identity() {
                self.record(next);
            } else {
                self.visit(&next, &v);
            }
        };
        if len < PAR_DEPTH {
            (0..self.letters.len()).into_par_iter().for_each(step);
        } else {
            (0..self.letters.len()).for_each(step);
        }
    }

    fn record(&self, word: Vec<usize>) {
        self.best.fetch_min(word.len(), AtomicOrdering::Relaxed);
        self.found.lock().expect("no poisoning").push(word);
    }

    fn run(self) -> Option<Vec<usize>> {
        (0..self.letters.len()).into_par_iter().for_each(|c| {
            let v = &self.letters[c].value;
            if v.is_identity() {
                self.record(vec![c]);
            } else {
                self.visit(&[c], v);
            }
        });
        let best = self.best.load(AtomicOrdering::Relaxed);
        self.found.into_inner().expect("no poisoning").into_iter().filter(|w| w.len() == best).min()
    }
}

/// `ways[r][c]`: number of ways to append `r` more letters after `c`.
fn completion_counts(n_letters: usize, allowed: &dyn Fn(usize, usize) -> bool, max_len: usize) -> Vec<Vec<u128>> {
    let mut ways = vec![vec![1u128; n_letters]];
    for r in 1..max_len {
        let row = (0..n_letters)
            .map(|c| (0..n_letters).filter(|&d| allowed(c, d)).fold(0u128, |s, d| s.saturating_add(ways[r - 1][d])))
            .collect();
        ways.push(row);
    }
    ways
}

fn words_of_length(ways: &[Vec<u128>], len: usize) -> u128 {
    ways[len - 1].iter().fold(0u128, |s, &x| s.saturating_add(x))
}

/// Position of `word` in the (length, lex) order, counting from 1.
fn word_rank(ways: &[Vec<u128>], allowed: &dyn Fn(usize, usize) -> bool, word: &[usize]) -> u128 {
    let len = word.len();
    let mut rank = (1..len).fold(0u128, |s, l| s.saturating_add(words_of_length(ways, l)));
    for (i, &w) in word.iter().enumerate() {
        for (c, &count) in ways[len - i - 1].iter().enumerate().take(w) {
            if i == 0 || allowed(word[i - 1], c) {
                rank = rank.saturating_add(count);
            }
        }
    }
    rank.saturating_add(1)
}

fn to_syllables(letters: &[Letter<impl Sized>], labels: &[&str], word: &[usize]) -> Word {
    let mut out: Word = Vec::new();
    for &c in word {
        let l = &letters[c];
        let label = labels[l.generator];
        match out.last_mut() {
            Some((name, e)) if name == label => *e += l.exponent,
            _ => out.push((label.to_string(), l.exponent)),
        }
    }
    out
}

fn run_search<T: WordValue>(
    letters: &[Letter<T>],
    labels: &[&str],
    allowed: &(dyn Fn(usize, usize) -> bool + Sync),
    max_len: usize,
) -> FreenessReport {
    let mut report = FreenessReport::condition(Verdict::PassedToBound, CAVEAT.into(), None);
    report.bound = max_len as u64;
    if max_len == 0 || letters.is_empty() {
        return report;
    }
    let search = Search { letters, allowed, max_len, best: AtomicUsize::new(usize::MAX), found: Mutex::new(Vec::new()) };
    let hit = search.run();
    let ways = completion_counts(letters.len(), allowed, max_len);
    match hit {
        Some(word) => {
            report.verdict = Verdict::Violation;
            report.words_checked = clamp(word_rank(&ways, allowed, &word));
            report.witness = Some(to_syllables(letters, labels, &word));
            report.notes = format!("word of length {} evaluates to 1", word.len());
        }
        None => {
            let total = (1..=max_len).fold(0u128, |s, l| s.saturating_add(words_of_length(&ways, l)));
            report.words_checked = clamp(total);
        }
    }
    report
}

fn clamp(x: u128) -> u64 {
    x.min(u64::MAX as u128) as u64
}

/// Number of nonempty alternating words `x^{a1} y^{b1} …` with at most
/// `syllables` syllables and exponents in `1..ord`.
pub fn alternating_word_count(ord_u: u64, ord_v: u64, syllables: usize) -> u128 {
    let (a, b) = (ord_u.saturating_sub(1) as u128, ord_v.saturating_sub(1) as u128);
    let mut total = 0u128;
    for s in 1..=syllables as u32 {
        let (hi, lo) = (s.div_ceil(2), s / 2);
        total = total
            .saturating_add(a.saturating_pow(hi).saturating_mul(b.saturating_pow(lo)))
            .saturating_add(b.saturating_pow(hi).saturating_mul(a.saturating_pow(lo)));
    }
    total
}

fn power_of<T: WordValue>(x: &T, e: u64, one: &T) -> T {
    (0..e).fold(one.clone(), |acc, _| acc.times(x))
}

/// Free product oracle over any word value: every alternating word with
/// exponents in `1..ord` and at most `max_syllables` syllables must be
/// nontrivial.
pub fn free_product_oracle_with<T: WordValue>(
    u: &T,
    ord_u: u64,
    v: &T,
    ord_v: u64,
    one: &T,
    max_syllables: usize,
) -> Result<FreenessReport, FreenessError> {
    for (x, ord, name) in [(u, ord_u, "A"), (v, ord_v, "B")] {
        if ord == 0 || !power_of(x, ord, one).is_identity() {
            return Err(FreenessError::NotTorsion { generator: name.into(), order: ord });
        }
    }
    let mut letters = Vec::new();
    for (generator, x, ord) in [(0usize, u, ord_u), (1, v, ord_v)] {
        let mut acc = one.clone();
        for e in 1..ord {
            acc = acc.times(x);
            letters.push(Letter { generator, exponent: e as i64, value: acc.clone() });
        }
    }
    let gens: Vec<usize> = letters.iter().map(|l| l.generator).collect();
    let allowed = move |a: usize, b: usize| gens[a] != gens[b];
    let mut report = run_search(&letters, &["A", "B"], &allowed, max_syllables);
    if report.verdict == Verdict::PassedToBound {
        report.conclusion = Some(free_product_label(ord_u, ord_v));
    }
    Ok(report)
}

/// [`free_product_oracle_with`] in ℚG.
pub fn free_product_oracle(
    u: &GroupRingElement,
    ord_u: u64,
    v: &GroupRingElement,
    ord_v: u64,
    max_syllables: usize,
) -> Result<FreenessReport, FreenessError> {
    if !u.same_ring(v) {
        return Err(RingError::GroupMismatch.into());
    }
    free_product_oracle_with(u, ord_u, v, ord_v, &GroupRingElement::one(u.group()), max_syllables)
}

/// Free group oracle with explicit inverses: no nonempty freely reduced
/// word of length ≤ `max_length` in `a, b` may be 1.
pub fn free_group_oracle_with<T: WordValue>(
    a: &T,
    a_inv: &T,
    b: &T,
    b_inv: &T,
    max_length: usize,
) -> Result<FreenessReport, FreenessError> {
    for (x, xi, name) in [(a, a_inv, "A"), (b, b_inv, "B")] {
        if !x.times(xi).is_identity() || !xi.times(x).is_identity() {
            return Err(FreenessError::BadParams(format!("stored inverse of {name} is wrong")));
        }
    }
    let letters = vec![
        Letter { generator: 0, exponent: -1, value: a_inv.clone() },
        Letter { generator: 0, exponent: 1, value: a.clone() },
        Letter { generator: 1, exponent: -1, value: b_inv.clone() },
        Letter { generator: 1, exponent: 1, value: b.clone() },
    ];
    // letters 2i and 2i+1 are mutually inverse
    let allowed = |x: usize, y: usize| x / 2 != y / 2 || x == y;
    let mut report = run_search(&letters, &["A", "B"], &allowed, max_length);
    if report.verdict == Verdict::PassedToBound {
        report.conclusion = Some("free group of rank 2".into());
    }
    Ok(report)
}

/// [`free_group_oracle_with`] in ℚG, inverting exactly.
pub fn free_group_oracle(a: &GroupRingElement, b: &GroupRingElement, max_length: usize) -> Result<FreenessReport, FreenessError> {
    if !a.same_ring(b) {
        return Err(RingError::GroupMismatch.into());
    }
    let (ai, bi) = (a.try_invert()?, b.try_invert()?);
    free_group_oracle_with(a, &ai, b, &bi, max_length)
}

/// Evaluates every word over `{A, B}` of length ≤ `max_length` (the empty
/// word included) and reports the first word, in length-then-lex order,
/// equal to an earlier one.
pub fn free_monoid_oracle(a: &GroupRingElement, b: &GroupRingElement, max_length: usize) -> Result<FreenessReport, FreenessError> {
    if !a.same_ring(b) {
        return Err(RingError::GroupMismatch.into());
    }
    let gens = [a, b];
    let mut seen: HashMap<Digest256, Vec<(Vec<u8>, GroupRingElement)>> = HashMap::new();
    let one = GroupRingElement::one(a.group());
    seen.entry(one.canonical_hash()).or_default().push((Vec::new(), one.clone()));
    let mut level: Vec<(Vec<u8>, GroupRingElement)> = vec![(Vec::new(), one)];
    let mut checked = 0u64;
    let mut report = FreenessReport::condition(Verdict::PassedToBound, CAVEAT.into(), None);
    report.bound = max_length as u64;
    for _ in 0..max_length {
        let next: Vec<(Vec<u8>, GroupRingElement, Digest256)> = level
            .par_iter()
            .flat_map_iter(|(w, x)| {
                (0..2u8).map(move |c| {
                    let mut nw = w.clone();
                    nw.push(c);
                    let v = x * gens[c as usize];
                    let h = v.canonical_hash();
                    (nw, v, h)
                })
            })
            .collect();
        let mut new_level = Vec::with_capacity(next.len());
        for (w, v, h) in next {
            checked += 1;
            let bucket = seen.entry(h).or_default();
            if let Some((earlier, _)) = bucket.iter().find(|(_, y)| *y == v) {
                report.verdict = Verdict::Violation;
                report.notes = "two distinct words are equal".into();
                report.collides_with = Some(monoid_syllables(earlier));
                report.witness = Some(monoid_syllables(&w));
                report.words_checked = checked;
                return Ok(report);
            }
            bucket.push((w.clone(), v.clone()));
            new_level.push((w, v));
        }
        level = new_level;
    }
    report.words_checked = checked;
    report.conclusion = Some("free monoid of rank 2".into());
    Ok(report)
}

fn monoid_syllables(w: &[u8]) -> Word {
    let mut out: Word = Vec::new();
    for &c in w {
        let label = if c == 0 { "A" } else { "B" };
        match out.last_mut() {
            Some((name, e)) if name == label => *e += 1,
            _ => out.push((label.to_string(), 1)),
        }
    }
    out
}

/// Multiplies out a word; negative exponents use exact inverses.
pub fn evaluate_word(word: &[(String, i64)], gens: &[(&str, &GroupRingElement)]) -> Result<GroupRingElement, FreenessError> {
    let first = gens.first().ok_or_else(|| FreenessError::BadParams("no generators".into()))?.1;
    let mut acc = GroupRingElement::one(first.group());
    for (name, e) in word {
        let x = gens
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| FreenessError::BadParams(format!("unknown generator {name}")))?
            .1;
        let base = if *e < 0 { x.try_invert()? } else { x.clone() };
        acc = acc.checked_mul(&base.power(e.unsigned_abs()))?;
    }
    Ok(acc)
}

/// Re-evaluates a violation: the witness is 1, or equals `collides_with`.
pub fn replay_violation(report: &FreenessReport, gens: &[(&str, &GroupRingElement)]) -> Result<bool, FreenessError> {
    let Some(w) = &report.witness else { return Ok(false) };
    let x = evaluate_word(w, gens)?;
    Ok(match &report.collides_with {
        Some(c) => x == evaluate_word(c, gens)?,
        None => x.is_one(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;
    use crate::reps::class2_rep;
    use crate::units::{bass, bovdi_left, bovdi_right, generalized_bovdi, Side};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn prop24_examples() {
        let p = Precision::default();
        let one = CyclotomicNumber::one(1);
        let zero = CyclotomicNumber::zero(1);
        let r = prop24_check(2, 1, 2, 1, &one, &zero, p).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedCondition);
        assert_eq!(r.conclusion.as_deref(), Some("C_2 * C_2"));
        let two = CyclotomicNumber::from_int(3, 2);
        let r = prop24_check(3, 1, 3, 1, &two, &two, p).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedCondition);
        let r = prop24_check(3, 1, 3, 1, &CyclotomicNumber::one(3), &CyclotomicNumber::one(3), p).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.notes.contains("condition unmet"));
        assert!(prop24_check(4, 2, 3, 1, &two, &two, p).is_err());
        let r = prop24_check(1, 1, 3, 1, &CyclotomicNumber::from_int(1, 4), &one, p).unwrap();
        assert_eq!(r.conclusion.as_deref(), Some("C_inf * C_3"));
    }

    #[test]
    fn affine_bounds() {
        let third = BigRational::new(1.into(), 3.into());
        assert!(affine_monoid_check(&BigRational::new(1.into(), 5.into()), &BigRational::new(1.into(), 5.into())));
        assert!(affine_monoid_check(&third, &BigRational::new(1.into(), 10.into())));
        assert!(!affine_monoid_check(&BigRational::new(2.into(), 5.into()), &BigRational::new(1.into(), 10.into())));
        let x = CyclotomicNumber::from_rational(5, third);
        let mu = geometric_sum(5, 2).inv().unwrap().pow(4).unwrap();
        assert_eq!(affine_monoid_check_cyc(&x, &mu, Precision::default()).unwrap(), Some(true));
        assert_eq!(affine_monoid_check_cyc(&geometric_sum(5, 2), &x, Precision::default()).unwrap(), Some(false));
    }

    #[test]
    fn thm33_examples() {
        let out = thm33_check(5, (2, 4), (3, 4), Precision::default()).unwrap();
        assert_eq!(out.report.verdict, Verdict::CertifiedCondition);
        let phi4 = ((1.0 + 5f64.sqrt()) / 2.0).powi(4);
        assert!((out.power_abs[0] - phi4).abs() < 1e-9);
        assert!(out.margins.iter().all(|&m| m > 1e-6));
        assert!(matches!(thm33_check(5, (1, 1), (3, 4), Precision::default()), Err(FreenessError::BadBassParams { .. })));
        assert!(matches!(thm33_check(5, (2, 1), (3, 4), Precision::default()), Err(FreenessError::BadBassParams { .. })));
        // equal powers: the same pair twice
        let out = thm33_check(5, (2, 4), (2, 4), Precision::default()).unwrap();
        assert_eq!(out.report.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn rank_matches_enumeration_order() {
        let allowed = |a: usize, b: usize| a / 2 != b / 2 || a == b;
        let ways = completion_counts(4, &allowed, 3);
        assert_eq!(words_of_length(&ways, 3), 36);
        assert_eq!(word_rank(&ways, &allowed, &[0]), 1);
        assert_eq!(word_rank(&ways, &allowed, &[3]), 4);
        assert_eq!(word_rank(&ways, &allowed, &[0, 0]), 5);
        assert_eq!(word_rank(&ways, &allowed, &[0, 2]), 6);
        assert_eq!(word_rank(&ways, &allowed, &[1, 1]), 8);
    }

    #[test]
    fn free_product_degenerate_and_d8() {
        let g = catalog("d8").unwrap().group;
        let (r, s) = (g.find("r").unwrap(), g.find("s").unwrap());
        let u = bovdi_left(&g, 1, r, s).unwrap().element;
        let rep = free_product_oracle(&u, 2, &u, 2, 10).unwrap();
        assert_eq!(rep.verdict, Verdict::Violation);
        assert_eq!(rep.witness, Some(vec![("A".into(), 1), ("B".into(), 1)]));
        assert!(replay_violation(&rep, &[("A", &u), ("B", &u)]).unwrap());
        let v = u.involution();
        let rep = free_product_oracle(&u, 2, &v, 2, 10).unwrap();
        assert_eq!(rep.verdict, Verdict::PassedToBound);
        assert_eq!(rep.words_checked as u128, alternating_word_count(2, 2, 10));
        assert!(matches!(free_product_oracle(&u, 3, &v, 2, 4), Err(FreenessError::NotTorsion { .. })));
    }

    #[test]
    fn heis27_cross_validation() {
        let g = catalog("heis27").unwrap().group;
        let (gg, h) = (g.find("g").unwrap(), g.find("h").unwrap());
        let u = bovdi_left(&g, 1, gg, h).unwrap().element;
        let v = bovdi_right(&g, 1, h, g.inv(gg)).unwrap().element;
        let sys = class2_rep(&g, gg, h).unwrap();
        let order = [0, 2, 1];
        let a = sys.to_matrix(&u).unwrap().permute_basis(&order);
        let b = sys.to_matrix(&v).unwrap().permute_basis(&order);
        let rep = lemma25_check(&a, &b, 3, 2, 3, 2, Precision::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedCondition, "{}", rep.notes);
        assert_eq!(rep.conclusion.as_deref(), Some("C_3 * C_3"));
        let x = a.get(1, 0) * b.get(0, 1);
        assert_eq!(x.norm_sq().as_rational(), Some(&q(729)));
        let rep = free_product_oracle(&u, 3, &v, 3, 6).unwrap();
        assert_eq!(rep.verdict, Verdict::PassedToBound);
        assert_eq!(rep.words_checked as u128, alternating_word_count(3, 3, 6));
        // the same pair through the matrices
        let id = CycMatrix::identity(a.conductor(), 3);
        let rep = free_product_oracle_with(&a, 3, &b, 3, &id, 6).unwrap();
        assert_eq!(rep.verdict, Verdict::PassedToBound);
    }

    #[test]
    fn lemma25_shape_errors() {
        let g = catalog("heis27").unwrap().group;
        let (gg, h) = (g.find("g").unwrap(), g.find("h").unwrap());
        let sys = class2_rep(&g, gg, h).unwrap();
        let u = bovdi_left(&g, 1, gg, h).unwrap().element;
        let v = bovdi_right(&g, 1, h, g.inv(gg)).unwrap().element;
        let a = sys.to_matrix(&u).unwrap();
        let b = sys.to_matrix(&v).unwrap().permute_basis(&[0, 2, 1]);
        // unpermuted: A[2,2] is not the expected root
        assert!(matches!(lemma25_check(&a, &b, 3, 2, 3, 2, Precision::default()), Err(FreenessError::ShapeViolation(_))));
        let mut rows = a.permute_basis(&[0, 2, 1]).rows().to_vec();
        rows[0][0] = CyclotomicNumber::from_int(3, 2);
        let bad = CycMatrix::from_rows(3, rows).unwrap();
        let e = lemma25_check(&bad, &b, 3, 2, 3, 2, Precision::default()).unwrap_err();
        assert!(e.to_string().contains("A[1,1]"));
        let d8 = catalog("d8").unwrap().group;
        let sys = class2_rep(&d8, d8.find("r").unwrap(), d8.find("s").unwrap()).unwrap();
        let m = sys.to_matrix(&GroupRingElement::one(&d8)).unwrap();
        assert!(matches!(lemma25_check(&m, &m, 1, 1, 1, 1, Precision::default()), Err(FreenessError::ShapeViolation(_))));
        let (r, s) = (d8.find("r").unwrap(), d8.find("s").unwrap());
        let a = sys.to_matrix(&bovdi_left(&d8, 1, r, s).unwrap().element).unwrap().permute_basis(&[0, 1]);
        let b = sys.to_matrix(&bovdi_right(&d8, 1, s, d8.inv(r)).unwrap().element).unwrap();
        let rep = triangular_pair_check(&a, &b, 2, 1, 2, 1, Precision::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedCondition);
        assert_eq!(rep.conclusion.as_deref(), Some("C_2 * C_2"));
    }

    #[test]
    fn free_group_examples() {
        let g = catalog("heis27").unwrap().group;
        let (gg, h) = (g.find("g").unwrap(), g.find("h").unwrap());
        let u = bovdi_left(&g, 1, gg, h).unwrap().element;
        let ai = u.try_invert().unwrap();
        let rep = free_group_oracle(&u, &ai, 3).unwrap();
        assert_eq!(rep.verdict, Verdict::Violation);
        assert_eq!(rep.witness.as_ref().unwrap().len(), 2);
        assert!(replay_violation(&rep, &[("A", &u), ("B", &ai)]).unwrap());
        let rep = free_group_oracle(&u, &u, 3).unwrap();
        assert_eq!(rep.verdict, Verdict::Violation);
        assert!(replay_violation(&rep, &[("A", &u), ("B", &u)]).unwrap());
        let a = &u * &u.involution();
        let b = &u.involution() * &u;
        let rep = free_group_oracle(&a, &b, 5).unwrap();
        assert_eq!(rep.verdict, Verdict::PassedToBound);
        assert_eq!(rep.words_checked, 4 + 12 + 36 + 108 + 324);
    }

    #[test]
    fn free_monoid_examples() {
        let g = catalog("c11xc5").unwrap().group;
        let one = GroupRingElement::one(&g);
        let x = GroupRingElement::from_element(&g, g.find("g").unwrap());
        let rep = free_monoid_oracle(&x, &x, 3).unwrap();
        assert_eq!(rep.verdict, Verdict::Violation);
        assert_eq!(rep.witness, Some(vec![("B".into(), 1)]));
        assert_eq!(rep.collides_with, Some(vec![("A".into(), 1)]));
        let rep = free_monoid_oracle(&one, &one, 3).unwrap();
        assert_eq!(rep.verdict, Verdict::Violation);
        assert_eq!(rep.collides_with, Some(vec![]));
        assert!(replay_violation(&rep, &[("A", &one), ("B", &one)]).unwrap());

        let (gg, h) = (g.find("g").unwrap(), g.find("h").unwrap());
        let b1 = bass(&g, h, 2, 4).unwrap().element;
        let b2 = bass(&g, h, 3, 4).unwrap().element;
        let a = generalized_bovdi(&g, &b1, gg, h, Side::Left).unwrap().element;
        let b = generalized_bovdi(&g, &b2, gg, h, Side::Left).unwrap().element;
        let rep = free_monoid_oracle(&a, &b, 6).unwrap();
        assert_eq!(rep.verdict, Verdict::PassedToBound);
        assert_eq!(rep.words_checked, 126);
    }

    #[test]
    fn report_json_shape() {
        let r = FreenessReport {
            verdict: Verdict::Violation,
            witness: Some(vec![("A".into(), 1), ("B".into(), 2)]),
            collides_with: None,
            bound: 4,
            words_checked: 7,
            notes: String::new(),
            conclusion: None,
        };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"verdict":"VIOLATION","witness":[["A",1],["B",2]],"bound":4,"words_checked":7}"#);
    }
}
