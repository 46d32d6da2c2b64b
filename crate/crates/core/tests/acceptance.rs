//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The process exits nonzero when a criterion fails for any reason other than
//! a reference value that an independent oracle has shown to be wrong; those
//! are listed in `KNOWN_REFERENCE_ERRORS` and still print FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use biharmonic_core::arith::{biunitary_divisors, divisors, unitary_divisors};
use biharmonic_core::classify::{theorem5_decompose, theorem5_identity_holds, theorem5_parts};
use biharmonic_core::search::{search, RecordWriter, ScanConfig, SearchSummary};
use biharmonic_core::theorems::{self, shape_catalog, ClassicalBounds};
use biharmonic_core::{
    census_report, factorize, CensusReport, DivisorFunctions, ExactRatio, OutputFormat, Predicate,
    PredicateSpec, SearchOptions, SearchQuery, ShapePattern,
};

/// Bi-unitary harmonic and powerful, missing from the reference list of
/// five powerful members below 10^9 (2^3 3^4 5^4 7^2, H** = 40).
const KNOWN_REFERENCE_ERRORS: &[(u32, &str, &str)] =
    &[(2, "powerful members", "reference list omits 19845000")];

struct Outcome {
    passed: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            passed: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if !ok {
            self.passed = false;
            self.notes.push(format!("FAILED {what}"));
        } else {
            self.notes.push(what);
        }
    }
}

fn opts(workers: usize) -> SearchOptions {
    SearchOptions {
        scan: ScanConfig::new(workers, 1 << 20),
        ..Default::default()
    }
}

fn within_one(count: u64, target: u64) -> bool {
    count.abs_diff(target) <= 1
}

fn criterion1(o: &mut Outcome) -> Result<bool, String> {
    let start = Instant::now();
    let r = census_report(1_000_000, &opts(1)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let including = r.count_including_one == 50;
    let excluding = r.count_excluding_one == 50;
    o.check(
        including || excluding,
        format!(
            "count {} including 1, {} excluding 1 (target 50)",
            r.count_including_one, r.count_excluding_one
        ),
    );
    o.check(
        elapsed < Duration::from_secs(10),
        format!("single-threaded {:.2}s (< 10s)", elapsed.as_secs_f64()),
    );
    Ok(including)
}

fn criterion2(o: &mut Outcome, including_one: bool) -> Result<(), String> {
    let start = Instant::now();
    let r: CensusReport = census_report(1_000_000_000, &opts(8)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let total = if including_one {
        r.count_including_one
    } else {
        r.count_excluding_one
    };
    o.check(
        total == 211,
        format!(
            "total {total} (target 211, {})",
            if including_one {
                "counting 1"
            } else {
                "not counting 1"
            }
        ),
    );
    let expected_powerful = vec![3_307_500, 9_922_500, 23_152_500, 138_915_000, 555_660_000];
    let ok = r.powerful == expected_powerful;
    o.check(ok, format!("powerful members {:?}", r.powerful));
    if !ok {
        // guard: the only difference from the reference list is 19845000
        let mut with_omission = expected_powerful.clone();
        with_omission.push(19_845_000);
        with_omission.sort_unstable();
        let f = factorize(19_845_000).map_err(|e| e.to_string())?;
        let fd = DivisorFunctions::of(&f).map_err(|e| e.to_string())?;
        let known = r.powerful == with_omission && fd.sigma_bistar * 40 == 19_845_000 * fd.d_bistar;
        o.notes.push(format!(
            "powerful difference explained by 19845000 alone: {known}"
        ));
        if !known {
            o.notes.push("UNEXPECTED powerful list".into());
        }
    }
    o.check(
        r.perfect_squares == [9_922_500],
        format!("perfect squares {:?}", r.perfect_squares),
    );
    o.check(
        r.first_exceptional == Some(9072),
        format!("first neither H nor H*: {:?}", r.first_exceptional),
    );
    let first12_ok = r.members.iter().take(12).all(|&n| {
        let f = factorize(n).expect("factor");
        let fd = DivisorFunctions::of(&f).expect("functions");
        let h = fd
            .mean_is_integer(n as u128, biharmonic_core::MeanKind::H)
            .expect("mean");
        let hs = fd
            .mean_is_integer(n as u128, biharmonic_core::MeanKind::HStar)
            .expect("mean");
        h || hs
    });
    o.check(
        first12_ok && r.members_before_exceptional == 12,
        format!(
            "first 12 members (1 included) harmonic or unitary harmonic; {} precede 9072",
            r.members_before_exceptional
        ),
    );
    o.check(
        elapsed < Duration::from_secs(30 * 60),
        format!("8 workers {:.1}s (< 30 min)", elapsed.as_secs_f64()),
    );
    Ok(())
}

fn criterion3(o: &mut Outcome) -> Result<(), String> {
    let q = SearchQuery::new(1, 9_999_999).with_predicate(PredicateSpec::is(Predicate::Harmonic));
    let mut members = Vec::new();
    let out = search(&q, &opts(8), |r| {
        members.push((r.n, r.flags.perfect));
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    let s = out.summary;
    o.check(
        within_one(s.records, 45) || within_one(s.records_excluding_one, 45),
        format!(
            "{} including 1, {} excluding 1 (target 45 +-1)",
            s.records, s.records_excluding_one
        ),
    );
    let least = members
        .iter()
        .find(|(n, perfect)| *n > 1 && !perfect)
        .map(|m| m.0);
    o.check(
        least == Some(140),
        format!("least nontrivial member {least:?}"),
    );
    Ok(())
}

fn criterion4(o: &mut Outcome) -> Result<(), String> {
    let q = SearchQuery::new(1, 1_000_000)
        .with_predicate(PredicateSpec::is(Predicate::UnitaryHarmonic));
    let s = search(&q, &opts(8), |_| Ok(()))
        .map_err(|e| e.to_string())?
        .summary;
    o.check(
        within_one(s.records, 45) || within_one(s.records_excluding_one, 45),
        format!(
            "{} including 1, {} excluding 1 (target 45 +-1)",
            s.records, s.records_excluding_one
        ),
    );
    Ok(())
}

fn criterion5(o: &mut Outcome) -> Result<(), String> {
    let bounds = ClassicalBounds {
        harmonic_omega: 10_000_000,
        balanced: 10_000_000,
        k_harmonic: 10_000_000,
        kmax: 4,
        biunitary_perfect: 100_000_000,
        unitary_perfect: 1_000_000,
        perfect: 100_000_000,
    };
    let r = theorems::verify_classical_with(&bounds, &ScanConfig::new(8, 1 << 20))
        .map_err(|e| e.to_string())?;
    o.check(r.passed, format!("bounded checks {:?}", r.counterexample));
    o.check(
        r.witness_list("balanced") == [6],
        format!("balanced {:?}", r.witness_list("balanced")),
    );
    o.check(
        r.witness_list("biunitary-perfect") == [6, 60, 90],
        format!(
            "bi-unitary perfect {:?}",
            r.witness_list("biunitary-perfect")
        ),
    );
    o.check(
        r.witness_list("perfect") == [6, 28, 496, 8128, 33_550_336],
        format!("perfect {:?}", r.witness_list("perfect")),
    );
    o.notes.push(format!(
        "unitary perfect {:?}",
        r.witness_list("unitary-perfect")
    ));
    Ok(())
}

fn criterion6(o: &mut Outcome) -> Result<(), String> {
    let mut bad = Vec::new();
    for n in 1..=10_000u64 {
        let f = factorize(n).map_err(|e| e.to_string())?;
        let m = DivisorFunctions::of(&f).map_err(|e| e.to_string())?;
        let (all, uni, bi) = (divisors(n), unitary_divisors(n), biunitary_divisors(n));
        let brute = [
            (all.count() as u128, all.sum()),
            (uni.count() as u128, uni.sum()),
            (bi.count() as u128, bi.sum()),
        ];
        let fast = [
            (m.d, m.sigma),
            (m.d_star, m.sigma_star),
            (m.d_bistar, m.sigma_bistar),
        ];
        if brute != fast {
            bad.push(n);
        }
    }
    o.check(
        bad.is_empty(),
        format!("n <= 10^4, mismatches {:?}", &bad[..bad.len().min(10)]),
    );
    Ok(())
}

fn criterion7(o: &mut Outcome) -> Result<(), String> {
    let r = census_report(1_000_000, &opts(8)).map_err(|e| e.to_string())?;
    for (shape, expected) in shape_catalog() {
        let found = r.shape_members(&shape).unwrap_or(&[]).to_vec();
        o.check(found == expected, format!("{{{shape}}} -> {found:?}"));
    }
    let t4 = theorems::verify_theorem4(
        theorems::DEFAULT_PRIME_BOUND,
        100_000_000,
        &ScanConfig::new(8, 1 << 20),
    )
    .map_err(|e| e.to_string())?;
    o.check(
        t4.passed,
        format!("two-prime shapes {:?}", t4.counterexample),
    );
    for (s, expected) in [
        ("3,2", vec![]),
        ("4,1", vec![]),
        ("4,3", vec![]),
        ("2,1", vec![45u128]),
    ] {
        let shape: ShapePattern = s
            .parse()
            .map_err(|e: biharmonic_core::Error| e.to_string())?;
        let found = t4.witness_list(&format!("range-members:{shape}"));
        o.check(
            found == expected,
            format!("{{{shape}}} <= 10^8 -> {found:?}"),
        );
    }
    Ok(())
}

fn criterion8(o: &mut Outcome) -> Result<(), String> {
    let failures: Vec<u64> = (1..=100_000u64)
        .filter(|&n| !theorem5_identity_holds(n).unwrap_or(false))
        .take(5)
        .collect();
    o.check(
        failures.is_empty(),
        format!("identity for n <= 10^5, failures {failures:?}"),
    );
    let f = factorize(9_922_500).map_err(|e| e.to_string())?;
    let (lhs, h, hs) = theorem5_parts(&f).map_err(|e| e.to_string())?;
    let split = theorem5_decompose(9_922_500).map_err(|e| e.to_string())?;
    o.check(
        lhs == ExactRatio::integer(30)
            && h == ExactRatio::new(5, 2)
            && hs == ExactRatio::integer(12)
            && split == (15, 661_500),
        format!("H**(9922500) = {lhs} = H(15) H*(661500) = {h} * {hs}"),
    );
    Ok(())
}

fn criterion9(o: &mut Outcome) -> Result<(), String> {
    let r = theorems::verify_theorem6(100_000, &ScanConfig::new(8, 1 << 16))
        .map_err(|e| e.to_string())?;
    o.check(
        r.passed,
        format!(
            "ratios and collapse equalities, n <= 10^5 {:?}",
            r.counterexample
        ),
    );
    Ok(())
}

fn run_bytes(q: &SearchQuery, o: &SearchOptions) -> Result<(Vec<u8>, SearchSummary, bool), String> {
    let mut w = RecordWriter::new(OutputFormat::Jsonl, Vec::new());
    let out = search(q, o, |r| w.write(r)).map_err(|e| e.to_string())?;
    Ok((
        w.finish().map_err(|e| e.to_string())?,
        out.summary,
        out.completed,
    ))
}

fn criterion10(o: &mut Outcome) -> Result<(), String> {
    let q = SearchQuery::new(1, 1_000_000)
        .with_predicate(PredicateSpec::is(Predicate::BiunitaryHarmonic));
    let seg = 1 << 14;
    let mut runs = Vec::new();
    for workers in [1, 4, 8] {
        let opts = SearchOptions {
            scan: ScanConfig::new(workers, seg),
            ..Default::default()
        };
        runs.push(run_bytes(&q, &opts)?);
    }
    let same = runs
        .windows(2)
        .all(|w| w[0].0 == w[1].0 && w[0].1 == w[1].1);
    o.check(
        same && !runs[0].0.is_empty(),
        format!("1, 4, 8 workers identical ({} bytes)", runs[0].0.len()),
    );

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("checkpoint.json");
    let mut opts = SearchOptions {
        scan: ScanConfig::new(4, seg),
        checkpoint: Some(path),
        resume: true,
        halt_after: Some(500_000),
        progress: None,
    };
    let (mut first, _, done) = run_bytes(&q, &opts)?;
    opts.halt_after = None;
    let (second, summary, completed) = run_bytes(&q, &opts)?;
    first.extend(second);
    o.check(
        !done && completed && first == runs[0].0 && summary == runs[0].1,
        "interrupted at 5*10^5 and resumed equals uninterrupted",
    );
    Ok(())
}

fn main() -> ExitCode {
    let names = [
        "census <= 10^6",
        "census <= 10^9",
        "harmonic census < 10^7",
        "unitary harmonic census <= 10^6",
        "classical bounded checks",
        "oracle equivalence n <= 10^4",
        "shape catalogue",
        "odd/even split identity",
        "mean ratio integrality",
        "determinism and resume",
    ];
    let mut including_one = true;
    let mut unexpected = 0;
    let mut failed = 0;
    for (i, name) in names.iter().enumerate() {
        let id = i as u32 + 1;
        let mut o = Outcome::new();
        let start = Instant::now();
        let res = match id {
            1 => criterion1(&mut o).map(|inc| including_one = inc),
            2 => criterion2(&mut o, including_one),
            3 => criterion3(&mut o),
            4 => criterion4(&mut o),
            5 => criterion5(&mut o),
            6 => criterion6(&mut o),
            7 => criterion7(&mut o),
            8 => criterion8(&mut o),
            9 => criterion9(&mut o),
            _ => criterion10(&mut o),
        };
        if let Err(e) = res {
            o.check(false, format!("error: {e}"));
        }
        let known = KNOWN_REFERENCE_ERRORS.iter().find(|(k, _, _)| *k == id);
        let explained = known.is_some_and(|(_, check, _)| {
            !o.notes.iter().any(|n| n.starts_with("UNEXPECTED"))
                && o.notes
                    .iter()
                    .filter_map(|n| n.strip_prefix("FAILED "))
                    .all(|n| n.starts_with(check))
        });
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} {verdict}  {name}  ({:.1}s)",
            start.elapsed().as_secs_f64()
        );
        for n in &o.notes {
            println!("    {n}");
        }
        if !o.passed {
            failed += 1;
            match known {
                Some((_, _, why)) if explained => println!("    known reference error: {why}"),
                _ => unexpected += 1,
            }
        }
    }
    println!(
        "{} of {} criteria passed; {} unexplained failures",
        names.len() - failed,
        names.len(),
        unexpected
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
