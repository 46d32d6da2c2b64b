//! Bounded falsification searches for the structural results on harmonic,
//! unitary harmonic and bi-unitary harmonic numbers.
//!
//! Each `verify_*` function scans a finite range (or, for the two-prime
//! shapes, a finite set of prime pairs) and reports the first counterexample
//! it meets together with witness counts and small witness lists.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{primes_up_to, value_of, DivisorFunctions, PrimePower};
use crate::classify::{theorem5_parts, MeanKind, Predicate, ShapePattern};
use crate::error::Result;
use crate::ratio::ExactRatio;
use crate::search::{scan_fold, ScanConfig, CATALOG_SHAPES, TWO_PRIME_SHAPES};

pub const DEFAULT_PRIME_BOUND: u64 = 1_000;
pub const DEFAULT_KMAX: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: u128,
    pub explanation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationOutcome {
    pub theorem: String,
    pub bounds: BTreeMap<String, u64>,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub witness_counts: BTreeMap<String, u64>,
    pub witnesses: BTreeMap<String, Vec<u128>>,
}

impl VerificationOutcome {
    pub fn witness_list(&self, key: &str) -> Vec<u128> {
        self.witnesses.get(key).cloned().unwrap_or_default()
    }

    pub fn witness_count(&self, key: &str) -> u64 {
        self.witness_counts.get(key).copied().unwrap_or(0)
    }
}

impl fmt::Display for VerificationOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bounds: Vec<String> = self
            .bounds
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(
            f,
            "{:<10} {}  [{}]",
            self.theorem,
            if self.passed { "PASS" } else { "FAIL" },
            bounds.join(", ")
        )?;
        for (k, v) in &self.witness_counts {
            write!(f, "\n    {k}: {v}")?;
        }
        for (k, v) in &self.witnesses {
            let shown: Vec<String> = v.iter().take(20).map(|x| x.to_string()).collect();
            let more = if v.len() > 20 {
                format!(", ... ({} total)", v.len())
            } else {
                String::new()
            };
            write!(f, "\n    {k}: {{{}{more}}}", shown.join(", "))?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, "\n    counterexample n = {}: {}", c.n, c.explanation)?;
        }
        Ok(())
    }
}

/// Per-segment accumulator for the scans below.
#[derive(Debug, Default)]
struct Tally {
    counts: BTreeMap<String, u64>,
    lists: BTreeMap<String, Vec<u128>>,
    failure: Option<Counterexample>,
}

impl Tally {
    fn inc(&mut self, key: &str) {
        *self.counts.entry(key.to_string()).or_default() += 1;
    }

    fn push(&mut self, key: &str, n: impl Into<u128>) {
        self.lists
            .entry(key.to_string())
            .or_default()
            .push(n.into());
    }

    fn touch(&mut self, key: &str) {
        self.lists.entry(key.to_string()).or_default();
    }

    fn fail(&mut self, n: impl Into<u128>, why: impl FnOnce() -> String) {
        if self.failure.is_none() {
            self.failure = Some(Counterexample {
                n: n.into(),
                explanation: why(),
            });
        }
    }

    fn absorb(&mut self, other: Tally) {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        for (k, v) in other.lists {
            self.lists.entry(k).or_default().extend(v);
        }
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }

    fn into_outcome(self, theorem: &str, bounds: &[(&str, u64)]) -> VerificationOutcome {
        VerificationOutcome {
            theorem: theorem.to_string(),
            bounds: bounds.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            passed: self.failure.is_none(),
            counterexample: self.failure,
            witness_counts: self.counts,
            witnesses: self.lists,
        }
    }
}

fn scan_tally<V>(bound: u64, cfg: &ScanConfig, visit: V) -> Result<Tally>
where
    V: Fn(&mut Tally, u64, &[PrimePower], &DivisorFunctions) -> Result<()> + Sync,
{
    let mut total = Tally::default();
    if bound == 0 {
        return Ok(total);
    }
    scan_fold(1, bound, cfg, visit, |t| {
        total.absorb(t);
        Ok(())
    })?;
    Ok(total)
}

fn is_bh(n: u64, f: &DivisorFunctions) -> Result<bool> {
    f.mean_is_integer(n as u128, MeanKind::HBistar)
}

fn all_odd(factors: &[PrimePower]) -> bool {
    factors.iter().all(|pp| pp.exponent % 2 == 1)
}

/// Bi-unitary k-perfect numbers (sigma** = k n) are bi-unitary harmonic
/// exactly when k divides d**; k = 2, and k = 4 with at least two prime
/// factors, always qualify.
pub fn verify_theorem1(bound: u64, cfg: &ScanConfig) -> Result<VerificationOutcome> {
    let t = scan_tally(bound, cfg, |t, n, factors, f| {
        if n == 1 || f.sigma_bistar % n as u128 != 0 {
            return Ok(());
        }
        let k = f.sigma_bistar / n as u128;
        let bh = is_bh(n, f)?;
        t.inc("biunitary-k-perfect");
        t.push(&format!("biunitary-{k}-perfect"), n);
        if bh != (f.d_bistar % k == 0) {
            t.fail(n, || {
                format!("k = {k}, d** = {}, bi-unitary harmonic = {bh}", f.d_bistar)
            });
        }
        if (k == 2 || (k == 4 && factors.len() >= 2)) && !bh {
            t.fail(n, || {
                format!("bi-unitary {k}-perfect but not bi-unitary harmonic")
            });
        }
        if bh {
            t.push("harmonic-witnesses", n);
        }
        Ok(())
    })?;
    Ok(t.into_outcome("theorem-1", &[("bound", bound)]))
}

/// With every exponent odd, bi-unitary harmonic is the same as harmonic;
/// the only squarefree members are 1 and 6; even members of this kind have
/// at least three prime factors, except 6 itself (2^1 3 is the one even
/// perfect number whose power of two has an odd exponent).
pub fn verify_theorem2(bound: u64, cfg: &ScanConfig) -> Result<VerificationOutcome> {
    let mut t = scan_tally(bound, cfg, |t, n, factors, f| {
        if !all_odd(factors) {
            return Ok(());
        }
        t.inc("all-odd-exponent");
        let bh = is_bh(n, f)?;
        let h = f.mean_is_integer(n as u128, MeanKind::H)?;
        if bh != h {
            t.fail(n, || {
                format!("all exponents odd but bi-unitary harmonic = {bh}, harmonic = {h}")
            });
        }
        if !bh {
            return Ok(());
        }
        t.push("odd-exponent-members", n);
        if factors.iter().all(|pp| pp.exponent == 1) {
            t.push("squarefree-members", n);
            if n != 1 && n != 6 {
                t.fail(n, || {
                    "squarefree bi-unitary harmonic number other than 1 and 6".into()
                });
            }
        }
        if n % 2 == 0 && factors.len() < 3 {
            t.push("even-omega-below-3", n);
            if n != 6 {
                t.fail(n, || {
                    format!("even, all exponents odd, but omega = {}", factors.len())
                });
            }
        }
        Ok(())
    })?;
    t.touch("squarefree-members");
    t.touch("even-omega-below-3");
    Ok(t.into_outcome("theorem-2", &[("bound", bound)]))
}

/// No prime power above 1 is bi-unitary harmonic, hence every member above
/// 1 has at least two distinct prime factors.
pub fn verify_theorem3(bound: u64, cfg: &ScanConfig) -> Result<VerificationOutcome> {
    let t = scan_tally(bound, cfg, |t, n, factors, f| {
        if factors.len() == 1 {
            t.inc("prime-powers");
            if factors[0].exponent % 2 == 0 {
                t.inc("even-exponent-prime-powers");
            }
        }
        if n > 1 && factors.len() < 2 && is_bh(n, f)? {
            t.fail(n, || "bi-unitary harmonic prime power".into());
        }
        Ok(())
    })?;
    Ok(t.into_outcome("theorem-3", &[("bound", bound)]))
}

fn theorem4_shapes() -> Vec<(ShapePattern, (u32, u32))> {
    TWO_PRIME_SHAPES
        .iter()
        .map(|s| {
            let shape: ShapePattern = s.parse().expect("valid shape");
            let e = shape.exponents();
            (shape.clone(), (e[0], e[1]))
        })
        .collect()
}

/// Expected bi-unitary harmonic members of a two-prime shape.
fn theorem4_expected(shape: &ShapePattern) -> &'static [u64] {
    if shape.exponents() == [2, 1] {
        &[45]
    } else {
        &[]
    }
}

/// p^3 q^2, p q^4 and p^3 q^4 have no bi-unitary harmonic member and p q^2
/// has only 45. Checked over all distinct prime pairs up to `prime_bound`
/// and by a shape-filtered range scan up to `range_bound`.
pub fn verify_theorem4(
    prime_bound: u64,
    range_bound: u64,
    cfg: &ScanConfig,
) -> Result<VerificationOutcome> {
    let shapes = theorem4_shapes();
    let mut t = Tally::default();
    let primes = primes_up_to(prime_bound.min(u32::MAX as u64) as u32);
    for (shape, (ea, eb)) in &shapes {
        let key = format!("pairs:{shape}");
        let expected = theorem4_expected(shape);
        for &p in &primes {
            for &q in &primes {
                if p == q {
                    continue;
                }
                let (p, q) = (p as u64, q as u64);
                let mut factors = [PrimePower::new(p, *ea), PrimePower::new(q, *eb)];
                factors.sort_unstable();
                let n = value_of(&factors)?;
                let f = DivisorFunctions::of(&factors)?;
                t.inc(&key);
                if f.mean_is_integer(n, MeanKind::HBistar)? {
                    t.push(&format!("pair-members:{shape}"), n);
                    if !expected.iter().any(|&m| m as u128 == n) {
                        t.fail(n, || format!("p = {p}, q = {q}: shape {{{shape}}} member"));
                    }
                }
            }
        }
        t.touch(&format!("pair-members:{shape}"));
    }

    let scan_shapes: Vec<ShapePattern> = shapes.iter().map(|(s, _)| s.clone()).collect();
    let range = scan_tally(range_bound, cfg, |t, n, factors, f| {
        if factors.len() != 2 || !is_bh(n, f)? {
            return Ok(());
        }
        for shape in scan_shapes.iter().filter(|s| s.matches(factors)) {
            t.push(&format!("range-members:{shape}"), n);
            if !theorem4_expected(shape).contains(&n) {
                t.fail(n, || {
                    format!("shape {{{shape}}} member found by range scan")
                });
            }
        }
        Ok(())
    })?;
    t.absorb(range);
    for shape in &scan_shapes {
        t.touch(&format!("range-members:{shape}"));
        let found = t.lists[&format!("range-members:{shape}")].clone();
        let expected: Vec<u128> = theorem4_expected(shape)
            .iter()
            .filter(|&&m| m <= range_bound)
            .map(|&m| m as u128)
            .collect();
        if found != expected {
            t.fail(0u128, || {
                format!("shape {{{shape}}}: expected {expected:?}, found {found:?}")
            });
        }
    }
    Ok(t.into_outcome(
        "theorem-4",
        &[("prime_bound", prime_bound), ("range_bound", range_bound)],
    ))
}

/// H**(n) = H(n1) H*(n2) under the odd/even exponent split, so n1 harmonic
/// and n2 unitary harmonic force n to be bi-unitary harmonic.
pub fn verify_theorem5(bound: u64, cfg: &ScanConfig) -> Result<VerificationOutcome> {
    let t = scan_tally(bound, cfg, |t, n, factors, _| {
        let (lhs, h1, h2) = theorem5_parts(factors)?;
        if lhs != h1.checked_mul(h2)? {
            t.fail(n, || format!("H** = {lhs} but H(n1) H*(n2) = {h1} * {h2}"));
        }
        t.inc("identity-checked");
        if h1.is_integer() && h2.is_integer() {
            t.inc("hypothesis-holds");
            if !lhs.is_integer() {
                t.fail(n, || {
                    "n1 harmonic and n2 unitary harmonic, yet n not bi-unitary harmonic".into()
                });
            }
        }
        Ok(())
    })?;
    Ok(t.into_outcome("theorem-5", &[("bound", bound)]))
}

/// Expected bi-unitary harmonic members of each catalogued shape.
pub fn shape_catalog() -> Vec<(ShapePattern, Vec<u64>)> {
    let members: [&[u64]; 6] = [&[45], &[60, 90], &[15925], &[420, 630], &[9100], &[646425]];
    CATALOG_SHAPES
        .iter()
        .zip(members)
        .map(|(s, m)| (s.parse().expect("valid shape"), m.to_vec()))
        .collect()
}

fn ratio_check(
    t: &mut Tally,
    n: u64,
    label: &str,
    a: ExactRatio,
    b: ExactRatio,
    want: ExactRatio,
) -> Result<()> {
    let got = a.checked_div(b)?;
    if got != want {
        t.fail(n, || format!("{label} = {got}, expected d**/d* = {want}"));
    }
    Ok(())
}

fn equal_check(t: &mut Tally, n: u64, label: &str, a: ExactRatio, b: ExactRatio) {
    if a != b {
        t.fail(n, || format!("{label}: {a} != {b}"));
    }
}

/// H**/H5 = H4/H2 = H6/H* = d**/d* is an integer; exponents in {1, 2}
/// collapse the bi-unitary means onto the unitary ones, and all-odd
/// exponents collapse them onto the ordinary ones. Also checks the shape
/// catalogue of bi-unitary harmonic numbers.
pub fn verify_theorem6(bound: u64, cfg: &ScanConfig) -> Result<VerificationOutcome> {
    let catalog = shape_catalog();
    let mut t = scan_tally(bound, cfg, |t, n, factors, f| {
        use MeanKind::*;
        let m = |k| f.mean(n as u128, k);
        if f.d_bistar % f.d_star != 0 {
            t.fail(n, || {
                format!("d* = {} does not divide d** = {}", f.d_star, f.d_bistar)
            });
            return Ok(());
        }
        let k = ExactRatio::integer(f.d_bistar / f.d_star);
        ratio_check(t, n, "H**/H5", m(HBistar)?, m(H5)?, k)?;
        ratio_check(t, n, "H4/H2", m(H4)?, m(H2)?, k)?;
        ratio_check(t, n, "H6/H*", m(H6)?, m(HStar)?, k)?;
        if factors.iter().all(|pp| pp.exponent <= 2) {
            t.inc("exponents-1-2");
            if f.sigma_bistar != f.sigma_star || f.d_bistar != f.d_star {
                t.fail(n, || {
                    "exponents in {1,2} but sigma** != sigma* or d** != d*".into()
                });
            }
            equal_check(t, n, "H3 vs H1", m(H3)?, m(H1)?);
            equal_check(t, n, "H5 vs H*", m(H5)?, m(HStar)?);
            equal_check(t, n, "H6 vs H**", m(H6)?, m(HBistar)?);
            equal_check(t, n, "H** vs H*", m(HBistar)?, m(HStar)?);
            equal_check(t, n, "H4 vs H2", m(H4)?, m(H2)?);
        }
        if all_odd(factors) {
            t.inc("all-odd-exponent");
            equal_check(t, n, "H5 vs H2", m(H5)?, m(H2)?);
            equal_check(t, n, "H6 vs H1", m(H6)?, m(H1)?);
            equal_check(t, n, "H3 vs H", m(H3)?, m(H)?);
            equal_check(t, n, "H4 vs H", m(H4)?, m(H)?);
        }
        if is_bh(n, f)? {
            for (shape, _) in catalog.iter().filter(|(s, _)| s.matches(factors)) {
                t.push(&format!("shape:{shape}"), n);
            }
        }
        Ok(())
    })?;
    for (shape, expected) in &catalog {
        let key = format!("shape:{shape}");
        t.touch(&key);
        let found = t.lists[&key].clone();
        let expected: Vec<u128> = expected
            .iter()
            .filter(|&&m| m <= bound)
            .map(|&m| m as u128)
            .collect();
        if found != expected {
            t.fail(found.first().copied().unwrap_or(0), || {
                format!("shape {{{shape}}}: expected {expected:?}, found {found:?}")
            });
        }
    }
    Ok(t.into_outcome("theorem-6", &[("bound", bound)]))
}

/// Perfect numbers are H2- and H4-numbers; no H2-number above 1 is a
/// square; friendly numbers are never H-, H2- or H4-numbers.
pub fn verify_theorem7(bound: u64, cfg: &ScanConfig) -> Result<VerificationOutcome> {
    let t = scan_tally(bound, cfg, |t, n, factors, f| {
        let n128 = n as u128;
        let h2 = f.mean_is_integer(n128, MeanKind::H2)?;
        if f.sigma == 2 * n128 {
            t.push("perfect", n);
            if !h2 || !f.mean_is_integer(n128, MeanKind::H4)? {
                t.fail(n, || "perfect but not both an H2- and H4-number".into());
            }
        }
        if h2 {
            t.inc("h2-numbers");
            if n > 1 && factors.iter().all(|pp| pp.exponent % 2 == 0) {
                t.fail(n, || "square H2-number".into());
            }
        }
        if Predicate::Friendly.eval(n, factors, f)? {
            t.inc("friendly");
            let h = f.mean_is_integer(n128, MeanKind::H)?;
            let h4 = f.mean_is_integer(n128, MeanKind::H4)?;
            if h || h2 || h4 {
                t.fail(n, || format!("friendly with H = {h}, H2 = {h2}, H4 = {h4}"));
            }
        }
        Ok(())
    })?;
    Ok(t.into_outcome("theorem-7", &[("bound", bound)]))
}

/// Separate bounds for each classical check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalBounds {
    /// harmonic n > 1 has omega >= 2; omega = 2 only for even perfect numbers
    pub harmonic_omega: u64,
    pub balanced: u64,
    pub k_harmonic: u64,
    pub kmax: u32,
    pub biunitary_perfect: u64,
    pub unitary_perfect: u64,
    /// every perfect number is harmonic, H2 and H4
    pub perfect: u64,
}

impl ClassicalBounds {
    pub fn uniform(bound: u64, kmax: u32) -> Self {
        ClassicalBounds {
            harmonic_omega: bound,
            balanced: bound,
            k_harmonic: bound,
            kmax,
            biunitary_perfect: bound,
            unitary_perfect: bound,
            perfect: bound,
        }
    }

    fn max(&self) -> u64 {
        [
            self.harmonic_omega,
            self.balanced,
            self.k_harmonic,
            self.biunitary_perfect,
            self.unitary_perfect,
            self.perfect,
        ]
        .into_iter()
        .max()
        .unwrap_or(0)
    }
}

pub fn verify_classical(bound: u64, kmax: u32, cfg: &ScanConfig) -> Result<VerificationOutcome> {
    verify_classical_with(&ClassicalBounds::uniform(bound, kmax), cfg)
}

pub fn verify_classical_with(b: &ClassicalBounds, cfg: &ScanConfig) -> Result<VerificationOutcome> {
    let mut t = scan_tally(b.max(), cfg, |t, n, factors, f| {
        let n128 = n as u128;
        let harmonic = f.mean_is_integer(n128, MeanKind::H)?;
        let perfect = f.sigma == 2 * n128;
        if n <= b.harmonic_omega && harmonic && n > 1 {
            if factors.len() < 2 {
                t.fail(n, || "harmonic with a single prime factor".into());
            }
            if factors.len() == 2 && !(perfect && n % 2 == 0) {
                t.fail(n, || {
                    "harmonic with two prime factors but not an even perfect number".into()
                });
            }
        }
        if n <= b.balanced && 2 * f.sigma == n128 * f.d {
            t.push("balanced", n);
        }
        if n <= b.k_harmonic && n > 1 {
            for k in 2..=b.kmax {
                if Predicate::KHarmonic(k).eval(n, factors, f)? {
                    t.push(&format!("{k}-harmonic"), n);
                    t.fail(n, || format!("{k}-harmonic"));
                }
            }
        }
        if n <= b.biunitary_perfect && f.sigma_bistar == 2 * n128 {
            t.push("biunitary-perfect", n);
        }
        if n <= b.unitary_perfect && f.sigma_star == 2 * n128 {
            t.push("unitary-perfect", n);
            if !f.mean_is_integer(n128, MeanKind::HStar)? {
                t.fail(n, || "unitary perfect but not unitary harmonic".into());
            }
        }
        if n <= b.perfect && perfect {
            t.push("perfect", n);
            let ok = harmonic
                && f.mean_is_integer(n128, MeanKind::H2)?
                && f.mean_is_integer(n128, MeanKind::H4)?;
            if !ok {
                t.fail(n, || "perfect but not harmonic, H2 and H4".into());
            }
        }
        Ok(())
    })?;
    for key in [
        "balanced",
        "biunitary-perfect",
        "unitary-perfect",
        "perfect",
    ] {
        t.touch(key);
    }
    let expect = |list: &[u64], bound: u64| -> Vec<u128> {
        list.iter()
            .filter(|&&m| m <= bound)
            .map(|&m| m as u128)
            .collect()
    };
    let balanced = t.lists["balanced"].clone();
    if balanced != expect(&[6], b.balanced) {
        t.fail(
            balanced.iter().copied().find(|&m| m != 6).unwrap_or(0),
            || format!("balanced numbers {balanced:?}, expected {{6}}"),
        );
    }
    let bup = t.lists["biunitary-perfect"].clone();
    if bup != expect(&[6, 60, 90], b.biunitary_perfect) {
        t.fail(
            bup.iter()
                .copied()
                .find(|&m| ![6, 60, 90].contains(&m))
                .unwrap_or(0),
            || format!("bi-unitary perfect numbers {bup:?}, expected {{6, 60, 90}}"),
        );
    }
    let bounds = [
        ("harmonic_omega", b.harmonic_omega),
        ("balanced", b.balanced),
        ("k_harmonic", b.k_harmonic),
        ("kmax", b.kmax as u64),
        ("biunitary_perfect", b.biunitary_perfect),
        ("unitary_perfect", b.unitary_perfect),
        ("perfect", b.perfect),
    ];
    Ok(t.into_outcome("classical", &bounds))
}

/// Selector for [`run`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    Classical,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::Classical,
    ];
}

impl std::str::FromStr for TheoremId {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "1" | "theorem-1" => TheoremId::T1,
            "2" | "theorem-2" => TheoremId::T2,
            "3" | "theorem-3" => TheoremId::T3,
            "4" | "theorem-4" => TheoremId::T4,
            "5" | "theorem-5" => TheoremId::T5,
            "6" | "theorem-6" => TheoremId::T6,
            "7" | "theorem-7" => TheoremId::T7,
            "classical" | "c" => TheoremId::Classical,
            _ => {
                return Err(crate::error::Error::Parse(format!(
                    "unknown theorem selector {s:?}"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyBounds {
    pub bound: u64,
    pub prime_bound: u64,
    pub kmax: u32,
}

impl VerifyBounds {
    pub fn new(bound: u64) -> Self {
        VerifyBounds {
            bound,
            prime_bound: DEFAULT_PRIME_BOUND,
            kmax: DEFAULT_KMAX,
        }
    }
}

pub fn run(id: TheoremId, b: &VerifyBounds, cfg: &ScanConfig) -> Result<VerificationOutcome> {
    match id {
        TheoremId::T1 => verify_theorem1(b.bound, cfg),
        TheoremId::T2 => verify_theorem2(b.bound, cfg),
        TheoremId::T3 => verify_theorem3(b.bound, cfg),
        TheoremId::T4 => verify_theorem4(b.prime_bound, b.bound, cfg),
        TheoremId::T5 => verify_theorem5(b.bound, cfg),
        TheoremId::T6 => verify_theorem6(b.bound, cfg),
        TheoremId::T7 => verify_theorem7(b.bound, cfg),
        TheoremId::Classical => verify_classical(b.bound, b.kmax, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ScanConfig {
        ScanConfig::new(2, 1 << 14)
    }

    #[test]
    fn theorem1_small() {
        let o = verify_theorem1(100, &cfg()).unwrap();
        assert!(o.passed, "{o}");
        assert_eq!(o.witness_list("biunitary-2-perfect"), vec![6, 60, 90]);
        assert!(verify_theorem1(1, &cfg()).unwrap().passed);
    }

    #[test]
    fn theorem2_small() {
        let o = verify_theorem2(10, &cfg()).unwrap();
        assert!(o.passed);
        assert_eq!(o.witness_list("squarefree-members"), vec![1, 6]);
        assert_eq!(o.witness_list("even-omega-below-3"), vec![6]);
        assert!(verify_theorem2(2, &cfg()).unwrap().passed);
        let o = verify_theorem2(100_000, &cfg()).unwrap();
        assert!(o.passed, "{o}");
        let members = o.witness_list("odd-exponent-members");
        for n in [6, 270, 672, 30240] {
            assert!(members.contains(&n), "{n}");
        }
    }

    #[test]
    fn theorem3_small() {
        let o = verify_theorem3(100_000, &cfg()).unwrap();
        assert!(o.passed, "{o}");
        assert!(o.witness_count("prime-powers") > 9000);
    }

    #[test]
    fn theorem4_small() {
        let o = verify_theorem4(100, 100_000, &cfg()).unwrap();
        assert!(o.passed, "{o}");
        assert_eq!(o.witness_list("pair-members:2,1"), vec![45]);
        assert_eq!(o.witness_list("range-members:2,1"), vec![45]);
        assert!(o.witness_list("pair-members:3,2").is_empty());
        // 72 = 2^3 3^2: sigma** = 15 * 10 = 150 does not divide 72 * 8
        let f = DivisorFunctions::of(&[PrimePower::new(2, 3), PrimePower::new(3, 2)]).unwrap();
        assert_eq!(f.sigma_bistar, 150);
        assert!(!f.mean_is_integer(72, MeanKind::HBistar).unwrap());
    }

    #[test]
    fn theorem5_small() {
        let o = verify_theorem5(9, &cfg()).unwrap();
        assert!(o.passed);
        let o = verify_theorem5(20_000, &cfg()).unwrap();
        assert!(o.passed, "{o}");
        assert_eq!(o.witness_count("identity-checked"), 20_000);
    }

    #[test]
    fn theorem6_small() {
        let o = verify_theorem6(20_000, &cfg()).unwrap();
        assert!(o.passed, "{o}");
        assert_eq!(o.witness_list("shape:2,2,1"), vec![15925]);
        assert_eq!(o.witness_list("shape:2,2,1,1"), vec![9100]);
    }

    #[test]
    fn theorem7_small() {
        let o = verify_theorem7(100_000, &cfg()).unwrap();
        assert!(o.passed, "{o}");
        assert_eq!(o.witness_list("perfect"), vec![6, 28, 496, 8128]);
    }

    #[test]
    fn classical_small() {
        let o = verify_classical(100_000, 3, &cfg()).unwrap();
        assert!(o.passed, "{o}");
        assert_eq!(o.witness_list("balanced"), vec![6]);
        assert_eq!(o.witness_list("biunitary-perfect"), vec![6, 60, 90]);
    }

    #[test]
    fn broken_claim_is_reported_with_counterexample() {
        // sanity check of the tally plumbing: pretend 60 were forbidden
        let t = scan_tally(100, &cfg(), |t, n, _, f| {
            if n == 60 && is_bh(n, f)? {
                t.fail(n, || "planted".into());
            }
            Ok(())
        })
        .unwrap();
        let o = t.into_outcome("planted", &[("bound", 100)]);
        assert!(!o.passed);
        assert_eq!(o.counterexample.unwrap().n, 60);
    }

    #[test]
    fn selector_parse() {
        assert_eq!("4".parse::<TheoremId>().unwrap(), TheoremId::T4);
        assert_eq!(
            "classical".parse::<TheoremId>().unwrap(),
            TheoremId::Classical
        );
        assert!("8".parse::<TheoremId>().is_err());
    }
}
