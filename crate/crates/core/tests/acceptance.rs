//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line (visible
//! with `--nocapture`) and then asserts. All comparisons are exact.

use std::time::Instant;

use noncrossing::formulas::{
    self, a007317, bell, catalan, catalan_binomial_transform, closed_form_k1, explicit_k1_series,
    explicit_k3_series, gf_k0, gf_k1, gf_k2, gf_q, kernel_residual, kernel_residual_conjugate,
    stirling2,
};
use noncrossing::oracle::{check_determinant_identity, default_samples, CheckReport, Oracle};
use noncrossing::partition::{count_avoiding, Pattern};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Published counts of (k,2)-noncrossing partitions, k = 2..6, n = 0..12.
/// Kept separate from the library's copy.
#[rustfmt::skip]
const PUBLISHED: [[u64; 13]; 5] = [
    [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012],
    [1, 1, 2, 5, 15, 51, 188, 731, 2950, 12235, 51822, 223191, 974427],
    [1, 1, 2, 5, 15, 52, 202, 856, 3868, 18313, 89711, 450825, 2310453],
    [1, 1, 2, 5, 15, 52, 203, 876, 4112, 20679, 109853, 608996, 3488806],
    [1, 1, 2, 5, 15, 52, 203, 877, 4139, 21111, 115219, 666388, 4045991],
];

fn verdict(id: u32, title: &str, start: Instant, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("AC{id:02} {status} {title} ({:.2?})", start.elapsed());
    for f in failures.iter().take(5) {
        println!("     {f}");
    }
    assert!(failures.is_empty(), "AC{id:02} {title}: {failures:?}");
}

fn failed_reports(reports: &[CheckReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} {:?}: {:?}", r.name, r.params, r.first_discrepancy))
        .collect()
}

#[test]
fn ac01_table1_reproduction() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut matched = 0;
    for (row, k) in PUBLISHED.iter().zip(2..) {
        let coeffs = gf_k2(k, 12).unwrap();
        for (n, expected) in row.iter().enumerate() {
            if coeffs[n] == BigInt::from(*expected) {
                matched += 1;
            } else {
                failures.push(format!(
                    "k={k} n={n}: expected {expected}, got {}",
                    coeffs[n]
                ));
            }
        }
    }
    assert_eq!(matched + failures.len(), 65);
    verdict(
        1,
        &format!("published (k,2) grid reproduction, {matched}/65 cells"),
        start,
        &failures,
    );
}

#[test]
fn ac02_bruteforce_matches_k2_series() {
    let start = Instant::now();
    let oracle = Oracle::new(11);
    let mut failures = Vec::new();
    for k in 2..=5 {
        let brute = oracle.bruteforce_series(k, 2, 11).unwrap();
        let series = gf_k2(k, 11).unwrap();
        if brute != series {
            failures.push(format!("k={k}: brute {brute:?} vs series {series:?}"));
        }
    }
    verdict(
        2,
        "brute force = (k,2) series, k=2..5, n<=11",
        start,
        &failures,
    );
}

#[test]
fn ac03_bruteforce_matches_k1_and_k0() {
    let start = Instant::now();
    let oracle = Oracle::new(10);
    let mut failures = Vec::new();
    for k in 2..=4 {
        let brute1 = oracle.bruteforce_series(k, 1, 10).unwrap();
        if brute1 != gf_k1(k, 10).unwrap() {
            failures.push(format!("(k,1) k={k}"));
        }
        let brute0 = oracle.bruteforce_series(k, 0, 10).unwrap();
        let stirling: Vec<BigInt> = (0..=10).map(|n| gf_k0(k, n)).collect();
        if brute0 != stirling {
            failures.push(format!("(k,0) k={k}"));
        }
    }
    verdict(
        3,
        "brute force = (k,1) series and (k,0) Stirling sums, k=2..4, n<=10",
        start,
        &failures,
    );
}

#[test]
fn ac04_known_sequences() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let k2 = gf_k2(2, 25).unwrap();
    let k3 = gf_k2(3, 25).unwrap();
    for n in 0..=25 {
        if k2[n] != catalan(n) {
            failures.push(format!("k=2 n={n}: {} vs Catalan {}", k2[n], catalan(n)));
        }
        // the binomial-transform sum at n-1 gives the count at n (OEIS offset 1)
        let expected = if n == 0 {
            BigInt::from(1)
        } else {
            catalan_binomial_transform(n - 1)
        };
        if k3[n] != expected || a007317(n) != expected {
            failures.push(format!("k=3 n={n}: {} vs {expected}", k3[n]));
        }
    }
    verdict(4, "k=2 is Catalan, k=3 is A007317, n<=25", start, &failures);
}

#[test]
fn ac05_closed_forms_for_k1() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 2..=6 {
        let series = gf_k1(k, 30).unwrap();
        for (n, c) in series.iter().enumerate().skip(1) {
            let closed = closed_form_k1(k, n).unwrap();
            if *c != closed {
                failures.push(format!("k={k} n={n}: {c} vs closed form {closed}"));
            }
        }
        let explicit = explicit_k1_series(k, 30)
            .unwrap()
            .unwrap()
            .integer_coeffs()
            .unwrap();
        if explicit != series {
            failures.push(format!("k={k}: explicit rational GF differs"));
        }
    }
    verdict(
        5,
        "(k,1) closed forms and explicit rational GFs, k=2..6, n<=30",
        start,
        &failures,
    );
}

#[test]
fn ac06_kernel_root() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 2..=8 {
        let r = kernel_residual(k, 50).unwrap();
        if r.order() != 50 || !r.is_zero() {
            failures.push(format!("k={k}: residual {r}"));
        }
        if !kernel_residual_conjugate(k, 50).unwrap().is_zero() {
            failures.push(format!("k={k}: conjugate root residual nonzero"));
        }
    }
    verdict(
        6,
        "kernel residual vanishes to order 50, k=2..8",
        start,
        &failures,
    );
}

#[test]
fn ac07_determinant_identity() {
    let start = Instant::now();
    let reports: Vec<CheckReport> = (1..=6)
        .flat_map(|b| (1..=b).map(move |a| check_determinant_identity(a, b).unwrap()))
        .collect();
    assert_eq!(reports.len(), 21);
    verdict(
        7,
        "Hessenberg determinant = b x prod (j x - 1), 1<=a<=b<=6",
        start,
        &failed_reports(&reports),
    );
}

#[test]
fn ac08_lemma_recurrences() {
    let start = Instant::now();
    let oracle = Oracle::default();
    let mut reports = Vec::new();
    for k in 2..=5 {
        for l in 1..k {
            reports.push(oracle.check_lemma1(k, l, 9).unwrap());
        }
    }
    for k in 2..=4 {
        for j in 0..=2 {
            reports.push(oracle.check_lemma3(k, j, 9).unwrap());
        }
    }
    verdict(
        8,
        "run-length recurrences to order 9",
        start,
        &failed_reports(&reports),
    );
}

#[test]
fn ac09_functional_equation() {
    let start = Instant::now();
    let oracle = Oracle::default();
    let order = 8;
    let samples = default_samples(2 * order);
    assert!(samples
        .iter()
        .all(|y| *y != num_rational::BigRational::from_integer(1.into())));
    let reports: Vec<CheckReport> = (2..=4)
        .map(|k| {
            oracle
                .check_functional_equation(k, order, &samples)
                .unwrap()
        })
        .collect();
    verdict(
        9,
        "bivariate functional equation at 16 rational y, order 8, k=2..4",
        start,
        &failed_reports(&reports),
    );
}

#[test]
fn ac10_q_family() {
    let start = Instant::now();
    let oracle = Oracle::default();
    let mut failures = Vec::new();
    for l in 0..=6 {
        let q = gf_q(l, 20).unwrap();
        for (n, c) in q.iter().enumerate() {
            let blocks: BigInt = (0..=l).map(|i| stirling2(n, i)).sum();
            if *c != blocks {
                failures.push(format!("l={l} n={n}: {c} vs {blocks}"));
            }
        }
        let report = oracle.check_q_identity(l, 20).unwrap();
        if !report.passed() {
            failures.push(format!("report l={l}: {:?}", report.first_discrepancy));
        }
        if l == 1
            && !report
                .notes
                .iter()
                .any(|note| note.contains("first at n=3"))
        {
            failures.push(format!("l=1 discrepancy not reported: {:?}", report.notes));
        }
    }
    verdict(
        10,
        "Q family = at most l blocks, l<=6, n<=20; run-length reading flagged",
        start,
        &failures,
    );
}

#[test]
fn ac11_integrality_and_bounds() {
    let start = Instant::now();
    let order = 50;
    let mut failures = Vec::new();
    let bells: Vec<BigInt> = (0..=order).map(bell).collect();
    let mut check_family = |name: &str, rows: Vec<Vec<BigInt>>| {
        for (idx, row) in rows.iter().enumerate() {
            for (n, c) in row.iter().enumerate() {
                if c.is_negative() || *c > bells[n] {
                    failures.push(format!("{name} #{idx} n={n}: {c} outside [0, Bell]"));
                }
                if let Some(next) = rows.get(idx + 1) {
                    if *c > next[n] {
                        failures.push(format!("{name} #{idx} n={n}: not increasing in parameter"));
                    }
                }
            }
        }
    };
    // integer_coeffs inside each expansion errors on any non-integral value
    check_family("k2", (2..=8).map(|k| gf_k2(k, order).unwrap()).collect());
    check_family("k1", (2..=8).map(|k| gf_k1(k, order).unwrap()).collect());
    check_family("q", (0..=8).map(|l| gf_q(l, order).unwrap()).collect());
    for k in 2..=8 {
        let c = gf_k2(k, order).unwrap();
        if (0..=k + 1).any(|n| c[n] != bells[n]) || c[order].is_zero() {
            failures.push(format!("k2 k={k}: short-n values differ from Bell"));
        }
    }
    verdict(
        11,
        "integral, non-negative, monotone in k, bounded by Bell to order 50",
        start,
        &failures,
    );
}

#[test]
fn ac12_catalan_baselines() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for pattern in ["1212", "1221"] {
        let t: Pattern = pattern.parse().unwrap();
        for n in 0..=10 {
            let count = count_avoiding(n, &t);
            if count != catalan(n) {
                failures.push(format!("{pattern} n={n}: {count} vs {}", catalan(n)));
            }
        }
    }
    verdict(
        12,
        "avoiding 1212 and 1221 counted by Catalan, n<=10",
        start,
        &failures,
    );
}

#[test]
fn k3_simplified_form_matches() {
    let simplified = explicit_k3_series(30).unwrap().integer_coeffs().unwrap();
    assert_eq!(simplified, gf_k2(3, 30).unwrap());
    assert_eq!(formulas::bell(12), BigInt::from(4213597));
}
