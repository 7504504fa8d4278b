//! One PASS/FAIL line per acceptance criterion. The process fails if any
//! criterion fails for a reason other than the one recorded in `BLOCKED`.

use std::io::Write;
use std::process::{Command, ExitCode};
use std::time::Instant;

use cyclic_cubic::commands::verify_fixture_rows;
use cyclic_cubic::fixtures::{all_passed, embedded_rows, verify_row, write_rows, FixtureRow, RowOutcome, FIELDS};
use cyclic_cubic::render::{parse_integer, parse_rational, rational};
use cyclic_cubic::sweep::{
    check_associates, check_corollary, check_discriminant_law, check_oracle, check_structure, parameter_grid,
};
use cyclic_cubic_core::{analyze, Analysis, CaseTag, Error};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BOUND: i64 = 50;

struct Verdict {
    passed: bool,
    detail: String,
    /// Set when the failure is exactly the documented one.
    blocked: Option<&'static str>,
}

impl Verdict {
    fn new(passed: bool, detail: String) -> Self {
        Verdict { passed, detail, blocked: None }
    }
}

/// The printed (-5,7) row uses the associate (2,5) of the canonical
/// (5,3); both give certified generators.
const BLOCKED: &str = "row 16 (-5,7) lists a different unit multiple of the same a0 + a1ζ than the canonical choice; its own α certifies";

fn is_documented_associate_row(o: &RowOutcome) -> bool {
    let fields: Vec<_> = o.mismatches.iter().map(|m| m.field.as_str()).collect();
    (o.n1.as_str(), o.n2.as_str()) == ("-5", "7") && fields == ["a0", "a1", "alpha_c", "alpha_rho", "alpha_rhoprime"]
}

fn criterion_1() -> Verdict {
    let rows = embedded_rows();
    let start = Instant::now();
    let outcomes = match verify_fixture_rows(&rows, None) {
        Ok(o) => o,
        Err(e) => return Verdict::new(false, e.to_string()),
    };
    let elapsed = start.elapsed();
    let failing: Vec<&RowOutcome> = outcomes.iter().filter(|o| !o.passed()).collect();
    let fast = elapsed.as_secs_f64() < 1.0;
    let detail = format!(
        "{}/{} rows match in {:.3}s{}",
        outcomes.len() - failing.len(),
        outcomes.len(),
        elapsed.as_secs_f64(),
        failing.iter().map(|o| format!("; {} differs in {}", o.label(), o.mismatches.iter().map(|m| m.field.as_str()).collect::<Vec<_>>().join(","))).collect::<String>()
    );
    let passed = rows.len() == 46 && failing.is_empty() && fast;
    let blocked = (!passed && rows.len() == 46 && fast && failing.len() == 1 && is_documented_associate_row(failing[0])).then_some(BLOCKED);
    Verdict { passed, detail, blocked }
}

#[derive(Default)]
struct SweepTally {
    fields: usize,
    reducible: usize,
    cases: [usize; 4],
    corollaries: usize,
    failures: [Vec<String>; 4],
}

fn sweep() -> (SweepTally, Vec<Analysis>) {
    let mut t = SweepTally::default();
    let mut kept = Vec::new();
    for (n1, n2) in parameter_grid(BOUND, BOUND) {
        let an = match analyze(n1, n2) {
            Ok(an) => an,
            Err(Error::Reducible { .. }) => {
                t.reducible += 1;
                continue;
            }
            Err(e) => {
                for f in &mut t.failures {
                    f.push(format!("({n1},{n2}): {e}"));
                }
                continue;
            }
        };
        t.fields += 1;
        t.cases[CaseTag::ALL.iter().position(|c| *c == an.invariants.tag).unwrap()] += 1;
        let note = |r: Result<(), String>, v: &mut Vec<String>| {
            if let Err(e) = r {
                v.push(format!("({n1},{n2}): {e}"));
            }
        };
        note(check_discriminant_law(&an), &mut t.failures[0]);
        note(check_structure(&an), &mut t.failures[1]);
        note(check_oracle(&an), &mut t.failures[2]);
        match check_corollary(&an) {
            Ok(true) => t.corollaries += 1,
            Ok(false) => {}
            Err(e) => t.failures[3].push(format!("({n1},{n2}): {e}")),
        }
        kept.push(an);
    }
    (t, kept)
}

fn sweep_verdict(t: &SweepTally, k: usize, what: &str) -> Verdict {
    let f = &t.failures[k];
    let detail = match f.first() {
        None => format!("{what} over {} fields (|n1| <= {BOUND}, 1 <= n2 <= {BOUND}; {} reducible skipped)", t.fields, t.reducible),
        Some(first) => format!("{} failures, first {first}", f.len()),
    };
    Verdict::new(f.is_empty() && t.fields > 0, detail)
}

fn criterion_6(grid: &[Analysis]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut samples: Vec<(BigInt, BigInt)> = Vec::new();
    for _ in 0..200 {
        let an = &grid[rng.gen_range(0..grid.len())];
        samples.push((an.invariants.n1.clone(), an.invariants.n2.clone()));
    }
    while samples.len() < 300 {
        let n1: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let n2: i64 = rng.gen_range(1..=1_000_000);
        if n1.gcd(&n2) == 1 {
            samples.push((n1.into(), n2.into()));
        }
    }
    let (mut checked, mut associates, mut failures) = (0usize, 0usize, Vec::new());
    let mut tags = [false; 4];
    for (n1, n2) in samples {
        let an = match analyze(n1.clone(), n2.clone()) {
            Ok(an) => an,
            Err(Error::Reducible { .. }) => continue,
            Err(e) => {
                failures.push(format!("({n1},{n2}): {e}"));
                continue;
            }
        };
        tags[CaseTag::ALL.iter().position(|c| *c == an.invariants.tag).unwrap()] = true;
        match check_associates(&an) {
            Ok(k) => {
                checked += 1;
                associates += k;
            }
            Err(e) => failures.push(format!("({n1},{n2}): {e}")),
        }
    }
    let passed = failures.is_empty() && checked >= 200 && tags.iter().all(|&t| t);
    let detail = match failures.first() {
        None => format!("{associates} admissible associates over {checked} sampled fields all certify"),
        Some(f) => format!("{} failures, first {f}", failures.len()),
    };
    Verdict::new(passed, detail)
}

fn tamper(field: &str, raw: &str) -> String {
    match field {
        "n1" | "n2" | "a0" | "a1" => (parse_integer(raw).unwrap() + 1u32).to_string(),
        "DL" | "delta" => format!("2*{raw}"),
        "case" => {
            let t: CaseTag = raw.parse().unwrap();
            let i = CaseTag::ALL.iter().position(|c| *c == t).unwrap();
            CaseTag::ALL[(i + 1) % 4].label().to_string()
        }
        _ => rational(&(parse_rational(raw).unwrap() + cyclic_cubic_core::Rational::from_integer(1.into()))),
    }
}

fn run_verify_binary(rows: &[FixtureRow]) -> (Option<i32>, String) {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    let mut buf = Vec::new();
    write_rows(rows, &mut buf).unwrap();
    f.write_all(&buf).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cyclic-cubic"))
        .args(["verify", "--fixtures", f.path().to_str().unwrap()])
        .output()
        .unwrap();
    (o.status.code(), String::from_utf8(o.stdout).unwrap())
}

fn criterion_7() -> Verdict {
    let rows = embedded_rows();
    let baseline: Vec<RowOutcome> = rows.iter().enumerate().map(|(i, r)| verify_row(i + 1, r)).collect();
    let mut failures = Vec::new();
    let mut cases = 0usize;
    for (i, row) in rows.iter().enumerate() {
        for field in FIELDS {
            let mut t = row.clone();
            let v = tamper(field, t.get(field).unwrap());
            *t.get_mut(field).unwrap() = v;
            let outcome = verify_row(i + 1, &t);
            let mut all = baseline.clone();
            all[i] = outcome.clone();
            cases += 1;
            let named = matches!(field, "n1" | "n2") || outcome.mismatches.iter().any(|m| m.field == field);
            if all_passed(&all) || outcome.passed() || !named {
                failures.push(format!("{} field {field}", outcome.label()));
            }
        }
    }
    let mut binary_runs = 0;
    for (k, field) in FIELDS.iter().enumerate() {
        let i = (k * 5 + 3) % rows.len();
        let mut t = rows.clone();
        let v = tamper(field, t[i].get(field).unwrap());
        *t[i].get_mut(field).unwrap() = v;
        let (code, out) = run_verify_binary(&t);
        binary_runs += 1;
        let marker = format!("FAIL row {} (", i + 1);
        if code != Some(1) || !out.contains(&marker) {
            failures.push(format!("binary: row {} field {field} gave exit {code:?}", i + 1));
        }
    }
    let detail = match failures.first() {
        None => format!("{cases} single-field tamperings all flagged by row; {binary_runs} checked through the binary with exit 1"),
        Some(f) => format!("{} unflagged, first {f}", failures.len()),
    };
    Verdict::new(failures.is_empty(), detail)
}

fn main() -> ExitCode {
    let mut verdicts: Vec<(u8, &str, Verdict)> = Vec::new();
    verdicts.push((1, "table reproduction", criterion_1()));
    let (tally, grid) = sweep();
    verdicts.push((2, "discriminant law", sweep_verdict(&tally, 0, "disc(1, φ, ψ) exact")));
    verdicts.push((3, "structure certificates", sweep_verdict(&tally, 1, "tame and wild certificates exact")));
    verdicts.push((4, "oracle equivalence", sweep_verdict(&tally, 2, "Albert basis has index 1")));
    let mut v5 = sweep_verdict(&tally, 3, "closed forms agree");
    v5.detail = format!("{} ({} fields with a closed form)", v5.detail, tally.corollaries);
    v5.passed &= tally.corollaries > 0;
    verdicts.push((5, "corollary consistency", v5));
    verdicts.push((6, "associate robustness", criterion_6(&grid)));
    verdicts.push((7, "fault injection", criterion_7()));

    let mut unexpected = 0;
    for (id, name, v) in &verdicts {
        let status = if v.passed { "PASS" } else { "FAIL" };
        println!("{status} criterion {id} ({name}): {}", v.detail);
        if let (false, Some(reason)) = (v.passed, v.blocked) {
            println!("     recorded as unattainable: {reason}");
        } else if !v.passed {
            unexpected += 1;
        }
    }
    println!(
        "fields by case: 1={} 2={} 3i={} 3ii={}",
        tally.cases[0], tally.cases[1], tally.cases[2], tally.cases[3]
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
