//! One PASS/FAIL line per acceptance criterion.
//!
//! The structural suite has a known gap: two entries of the `k = 4`
//! exceptional tables prescribe almost hooks that cannot exist. Those two
//! failures are printed as FAIL and tolerated; any other failure, in any
//! suite, makes this target exit nonzero.

use std::process::ExitCode;

use sylow_branch::verify::{run, Criterion, CriterionReport, VerifyConfig};

/// (check, subject) pairs the structural suite is known to fail.
const KNOWN_GAP: [(&str, &str); 2] =
    [("exceptional-tables", "13,3"), ("exceptional-tables", "2,2,2,1,1,1,1,1,1,1,1,1,1")];

fn print_report(r: &CriterionReport) {
    println!("{}  [{:.1}s] {}", r.summary_line(), r.elapsed.as_secs_f64(), r.criterion.description());
    for f in &r.failures {
        println!("    failed {} {}: {}", f.check, f.subject, f.detail);
    }
    for n in &r.notes {
        println!("    note: {n}");
    }
}

fn unexpected(r: &CriterionReport) -> Vec<String> {
    let known: &[(&str, &str)] = if r.criterion == Criterion::Structural { &KNOWN_GAP } else { &[] };
    let mut out: Vec<String> = r
        .failures
        .iter()
        .filter(|f| !known.contains(&(f.check, f.subject.as_str())))
        .map(|f| format!("{} {} {}", r.criterion.name(), f.check, f.subject))
        .collect();
    for (check, subject) in known {
        if !r.failures.iter().any(|f| f.check == *check && f.subject == *subject) {
            out.push(format!("{} {check} {subject}: expected failure did not occur", r.criterion.name()));
        }
    }
    out
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut bad = Vec::new();
    let mut passed = 0;
    for c in Criterion::ALL {
        let r = match run(c, &cfg) {
            Ok(r) => r,
            Err(e) => {
                println!("criterion {} {}: FAIL (error: {e})", c.id(), c.name());
                bad.push(format!("{}: {e}", c.name()));
                continue;
            }
        };
        print_report(&r);
        passed += usize::from(r.passed());
        bad.extend(unexpected(&r));
    }
    println!("acceptance: {passed}/{} criteria pass", Criterion::ALL.len());
    if bad.is_empty() {
        println!("acceptance: only the known exceptional-table gap fails");
        ExitCode::SUCCESS
    } else {
        for b in &bad {
            println!("unexpected: {b}");
        }
        ExitCode::FAILURE
    }
}
