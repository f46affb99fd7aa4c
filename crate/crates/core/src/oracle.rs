//! Independent verification of the generating functions.
//!
//! Every check here compares a closed form against numbers obtained by
//! exhaustive enumeration of restricted growth strings, or a structural
//! identity (recurrences on the run-length refinement, the bivariate
//! functional equation, the Hessenberg determinant) against the same
//! brute-force data.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::formulas::{self, FormulaError};
use crate::partition::{self, PartitionError, Pattern};
use crate::series::{poly_det, rat, ratio, Polynomial, Series, SeriesError};

pub const DEFAULT_MAX_BRUTE_N: usize = 12;

/// Number of `(k,2)`-noncrossing partitions of `[n]` for `k = 2..=6` (rows)
/// and `n = 0..=12` (columns), as published.
#[rustfmt::skip]
pub const TABLE1: [[u64; 13]; 5] = [
    [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012],
    [1, 1, 2, 5, 15, 51, 188, 731, 2950, 12235, 51822, 223191, 974427],
    [1, 1, 2, 5, 15, 52, 202, 856, 3868, 18313, 89711, 450825, 2310453],
    [1, 1, 2, 5, 15, 52, 203, 876, 4112, 20679, 109853, 608996, 3488806],
    [1, 1, 2, 5, 15, 52, 203, 877, 4139, 21111, 115219, 666388, 4045991],
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the brute-force cap {cap} (raise it with --max-brute-n)")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid sample set: {0}")]
    InvalidSamples(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    /// Where the sides first disagree, e.g. `n=7` or `k=5,n=11`.
    pub index: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub first_discrepancy: Option<Discrepancy>,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
    /// Informational remarks that do not affect the status.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates a report; the first recorded mismatch sets the status.
struct ReportBuilder {
    name: String,
    params: BTreeMap<String, String>,
    first: Option<Discrepancy>,
    notes: Vec<String>,
    start: Instant,
}

impl ReportBuilder {
    fn new(name: &str) -> Self {
        ReportBuilder {
            name: name.to_string(),
            params: BTreeMap::new(),
            first: None,
            notes: Vec::new(),
            start: Instant::now(),
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn compare<T: PartialEq + ToString>(
        &mut self,
        index: impl FnOnce() -> String,
        expected: &T,
        actual: &T,
    ) {
        if self.first.is_none() && expected != actual {
            self.first = Some(Discrepancy {
                index: index(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn compare_seq<T: PartialEq + ToString>(&mut self, expected: &[T], actual: &[T]) {
        for (n, (e, a)) in expected.iter().zip(actual).enumerate() {
            self.compare(|| format!("n={n}"), e, a);
        }
        if expected.len() != actual.len() {
            self.compare(|| "length".into(), &expected.len(), &actual.len());
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            name: self.name,
            params: self.params,
            status: if self.first.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            first_discrepancy: self.first,
            elapsed: self.start.elapsed(),
            notes: self.notes,
        }
    }
}

/// `F_{k,l}` coefficient table from brute force: `runs[l][n]` counts the
/// `(k,2)`-noncrossing partitions of `[n]` with initial run length `l`.
#[derive(Debug, Clone)]
pub struct RunTable {
    pub order: usize,
    runs: Vec<Vec<BigInt>>,
}

impl RunTable {
    /// `F_{k,l}(x)` truncated at the table order; zero for `l > order`.
    pub fn f(&self, l: usize) -> Series {
        match self.runs.get(l) {
            Some(row) => Series::from_ints(row.iter().cloned(), self.order),
            None => Series::zero(self.order),
        }
    }

    /// `G_{k,l}(x) = sum_{i >= l} F_{k,i}(x)`. Runs longer than the order
    /// cannot contribute below `x^{order+1}`.
    pub fn g(&self, l: usize) -> Series {
        (l..=self.order).fold(Series::zero(self.order), |acc, i| &acc + &self.f(i))
    }

    /// `sum_l F_{k,l}(x)`
    pub fn total(&self) -> Series {
        self.g(0)
    }

    /// `sum_{l in range} F_{k,l}(x) y^l` at a rational `y`.
    pub fn eval_y(&self, range: std::ops::Range<usize>, y: &BigRational) -> Series {
        let mut acc = Series::zero(self.order);
        let mut power = BigRational::one();
        for l in 0..range.end.min(self.order + 1) {
            if l >= range.start {
                acc = &acc + &self.f(l).scale(&power);
            }
            power *= y;
        }
        acc
    }
}

/// Brute-force oracle with a cap on `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub max_brute_n: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_brute_n: DEFAULT_MAX_BRUTE_N,
        }
    }
}

impl Oracle {
    pub fn new(max_brute_n: usize) -> Self {
        Oracle { max_brute_n }
    }

    fn guard(&self, n: usize) -> Result<(), OracleError> {
        if n > self.max_brute_n {
            Err(OracleError::CapExceeded {
                n,
                cap: self.max_brute_n,
            })
        } else {
            Ok(())
        }
    }

    /// Counts of partitions of `[n]` avoiding `pattern`, `n = 0..=n_max`.
    pub fn count_series(
        &self,
        pattern: &Pattern,
        n_max: usize,
    ) -> Result<Vec<BigInt>, OracleError> {
        self.guard(n_max)?;
        Ok((0..=n_max)
            .into_par_iter()
            .map(|n| partition::count_avoiding(n, pattern))
            .collect())
    }

    /// Count of partitions of `[n]` avoiding `pattern`.
    pub fn count_at(&self, pattern: &Pattern, n: usize) -> Result<BigInt, OracleError> {
        self.guard(n)?;
        Ok(partition::count_avoiding(n, pattern))
    }

    /// `[#N_{k,d}(n) for n in 0..=n_max]` by enumeration.
    pub fn bruteforce_series(
        &self,
        k: usize,
        d: usize,
        n_max: usize,
    ) -> Result<Vec<BigInt>, OracleError> {
        self.count_series(&Pattern::crossing(k, d)?, n_max)
    }

    pub fn run_table(&self, k: usize, order: usize) -> Result<RunTable, OracleError> {
        self.guard(order)?;
        let pattern = Pattern::crossing(k, 2)?;
        let by_n: Vec<BTreeMap<usize, BigInt>> = (0..=order)
            .into_par_iter()
            .map(|n| partition::count_avoiding_by_run(n, &pattern))
            .collect();
        let mut runs = vec![vec![BigInt::zero(); order + 1]; order + 1];
        for (n, map) in by_n.into_iter().enumerate() {
            for (l, c) in map {
                runs[l][n] = c;
            }
        }
        Ok(RunTable { order, runs })
    }

    /// Per-`n` counts of `(k,2)`-noncrossing partitions with initial run
    /// length exactly `l`.
    pub fn bruteforce_run_series(
        &self,
        k: usize,
        l: usize,
        n_max: usize,
    ) -> Result<Vec<BigInt>, OracleError> {
        let table = self.run_table(k, n_max)?;
        Ok(table.f(l).integer_coeffs()?)
    }

    /// `gf_k2(k, 12)` against the published table for `k = 2..=6`.
    pub fn check_table1(&self) -> CheckReport {
        check_table_against(&TABLE1)
    }

    /// Formula expansion for `d ∈ {0, 1, 2}` against brute force.
    pub fn check_series_vs_bruteforce(
        &self,
        k: usize,
        d: usize,
        n_max: usize,
    ) -> Result<CheckReport, OracleError> {
        let mut r = ReportBuilder::new("series_vs_bruteforce")
            .param("k", k)
            .param("d", d)
            .param("n_max", n_max);
        let formula = match d {
            2 => formulas::gf_k2(k, n_max)?,
            1 => formulas::gf_k1(k, n_max)?,
            0 => formulas::gf_k0_sequence(k, n_max),
            _ => {
                return Err(OracleError::InvalidParameters(format!(
                    "no closed form for d = {d}"
                )))
            }
        };
        let brute = self.bruteforce_series(k, d, n_max)?;
        r.compare_seq(&brute, &formula);
        Ok(r.finish())
    }

    /// `F_{k,l} = l x G_{k,l} + x^l` for `1 <= l <= k-1`.
    pub fn check_lemma1(
        &self,
        k: usize,
        l: usize,
        order: usize,
    ) -> Result<CheckReport, OracleError> {
        if l == 0 || l >= k {
            return Err(OracleError::InvalidParameters(format!(
                "need 1 <= l <= k-1, got k={k}, l={l}"
            )));
        }
        let mut r = ReportBuilder::new("lemma1")
            .param("k", k)
            .param("l", l)
            .param("order", order);
        let table = self.checked_run_table(k, order, &mut r)?;
        let lhs = table.f(l);
        let rhs = &table.g(l).shift(1).truncate(order).scale(&rat(l as i64))
            + &Series::monomial(BigRational::one(), l, order);
        r.compare_seq(lhs.coeffs(), rhs.coeffs());
        Ok(r.finish())
    }

    /// `F_{k,k-1+j} = x^{k-1+j} + sum_{i<j} x^{j+1-i} G_{k,k-1+i} + (k-1) x G_{k,k-1+j}`.
    pub fn check_lemma3(
        &self,
        k: usize,
        j: usize,
        order: usize,
    ) -> Result<CheckReport, OracleError> {
        if k < 2 {
            return Err(FormulaError::InvalidK(k).into());
        }
        let mut r = ReportBuilder::new("lemma3")
            .param("k", k)
            .param("j", j)
            .param("order", order);
        let table = self.checked_run_table(k, order, &mut r)?;
        let lhs = table.f(k - 1 + j);
        let mut rhs = Series::monomial(BigRational::one(), k - 1 + j, order);
        for i in 0..j {
            rhs = &rhs + &table.g(k - 1 + i).shift(j + 1 - i).truncate(order);
        }
        rhs = &rhs
            + &table
                .g(k - 1 + j)
                .shift(1)
                .truncate(order)
                .scale(&rat(k as i64 - 1));
        r.compare_seq(lhs.coeffs(), rhs.coeffs());
        Ok(r.finish())
    }

    /// Builds the run table and records whether its runs sum to the plain
    /// brute-force series.
    fn checked_run_table(
        &self,
        k: usize,
        order: usize,
        r: &mut ReportBuilder,
    ) -> Result<RunTable, OracleError> {
        let table = self.run_table(k, order)?;
        let total = table.total().integer_coeffs()?;
        let plain = self.bruteforce_series(k, 2, order)?;
        for (n, (e, a)) in plain.iter().zip(&total).enumerate() {
            r.compare(|| format!("run-sum n={n}"), e, a);
        }
        Ok(table)
    }

    /// The bivariate functional equation for `F_k(x,y) = sum_l F_{k,l}(x) y^l`,
    /// with both sides multiplied by `(1-y)(1-xy)`, checked at each rational
    /// sample `y`.
    pub fn check_functional_equation(
        &self,
        k: usize,
        order: usize,
        samples: &[BigRational],
    ) -> Result<CheckReport, OracleError> {
        if k < 2 {
            return Err(FormulaError::InvalidK(k).into());
        }
        validate_samples(samples, k)?;
        let mut r = ReportBuilder::new("functional_equation")
            .param("k", k)
            .param("order", order)
            .param("samples", samples.len());
        let table = self.checked_run_table(k, order, &mut r)?;
        for y in samples {
            if let Some((n, lhs, rhs)) = functional_equation_mismatch(&table, k, y) {
                r.compare(|| format!("y={y},n={n}"), &lhs, &rhs);
            }
        }
        // both sides are polynomials in y of degree <= order + k
        if samples.len() > order + k {
            r.note(format!(
                "{} samples exceed the y-degree bound {}: identity holds formally up to x^{order}",
                samples.len(),
                order + k
            ));
        }
        r.note(format!(
            "F_k(x,y) truncated to runs <= {order}; longer runs do not reach x^{order}"
        ));
        Ok(r.finish())
    }

    /// Three readings of the `Q_l` counts: (a) the generating function,
    /// (b) partitions with at most `l` blocks, (c) partitions whose initial
    /// run length is at most `l`. (a) = (b) is asserted; (a) != (c) is only
    /// noted.
    pub fn check_q_identity(&self, l: usize, n_max: usize) -> Result<CheckReport, OracleError> {
        let mut r = ReportBuilder::new("q_identity")
            .param("l", l)
            .param("n_max", n_max);
        let gf = formulas::gf_q(l, n_max)?;
        let blocks = formulas::gf_k0_sequence(l + 1, n_max);
        r.compare_seq(&blocks, &gf);

        let brute_max = n_max.min(self.max_brute_n);
        let by_run: Vec<BigInt> = (0..=brute_max)
            .into_par_iter()
            .map(|n| {
                partition::count_by_run(n)
                    .into_iter()
                    .filter(|&(run, _)| run <= l)
                    .map(|(_, c)| c)
                    .sum()
            })
            .collect();
        if let Some(n) = (0..=brute_max).find(|&n| by_run[n] != gf[n]) {
            r.note(format!(
                "run-length reading differs from the generating function first at n={n}: \
                 gf={}, run<=l count={}",
                gf[n], by_run[n]
            ));
        }
        if brute_max < n_max {
            r.note(format!(
                "run-length reading enumerated only up to n={brute_max}"
            ));
        }
        Ok(r.finish())
    }
}

/// `gf_k2(k, 12)` for `k = 2..=6` against `expected`.
pub fn check_table_against(expected: &[[u64; 13]; 5]) -> CheckReport {
    let mut r = ReportBuilder::new("table1")
        .param("k", "2..6")
        .param("n", "0..12");
    let mut cells = 0;
    for (row, k) in expected.iter().zip(2usize..) {
        match formulas::gf_k2(k, 12) {
            Ok(coeffs) => {
                for (n, (e, a)) in row.iter().zip(&coeffs).enumerate() {
                    let e = BigInt::from(*e);
                    if e == *a {
                        cells += 1;
                    }
                    r.compare(|| format!("k={k},n={n}"), &e, a);
                }
            }
            Err(err) => r.compare(
                || format!("k={k}"),
                &"expansion".to_string(),
                &err.to_string(),
            ),
        }
    }
    r.note(format!("{cells}/65 cells match"));
    r.finish()
}

/// The `(b-a+1)`-square matrix whose row `r` holds `(a+r) x` in columns
/// `0..=r` and `1` just right of the diagonal.
pub fn hessenberg_matrix(a: usize, b: usize) -> Vec<Vec<Polynomial>> {
    let size = b + 1 - a;
    (0..size)
        .map(|r| {
            let diag = Polynomial::monomial(rat((a + r) as i64), 1);
            (0..size)
                .map(|c| match c {
                    c if c <= r => diag.clone(),
                    c if c == r + 1 => Polynomial::one(),
                    _ => Polynomial::zero(),
                })
                .collect()
        })
        .collect()
}

/// `b x prod_{j=a}^{b-1} (j x - 1)`
pub fn hessenberg_product(a: usize, b: usize) -> Polynomial {
    (a..b).fold(Polynomial::monomial(rat(b as i64), 1), |acc, j| {
        &acc * &Polynomial::from_ints(&[-1, j as i64])
    })
}

pub fn check_determinant_identity(a: usize, b: usize) -> Result<CheckReport, OracleError> {
    if a == 0 || b < a {
        return Err(OracleError::InvalidParameters(format!(
            "need 1 <= a <= b, got a={a}, b={b}"
        )));
    }
    let mut r = ReportBuilder::new("determinant_identity")
        .param("a", a)
        .param("b", b);
    let det = poly_det(&hessenberg_matrix(a, b))?;
    r.compare(|| "det".into(), &hessenberg_product(a, b), &det);
    Ok(r.finish())
}

/// First `n` where the cleared functional equation fails at the given `y`,
/// with both sides' coefficients.
fn functional_equation_mismatch(
    table: &RunTable,
    k: usize,
    y: &BigRational,
) -> Option<(usize, BigRational, BigRational)> {
    let order = table.order;
    let one = BigRational::one();
    let x = Polynomial::x();
    let km1 = rat(k as i64 - 1);
    let f_minus_h = table.eval_y(k - 1..order + 1, y);
    let f1_minus_h1 = table.eval_y(k - 1..order + 1, &one);
    // (1-y)(1-xy) + x^2 y^2 + (k-1) x y (1-xy)
    let one_minus_xy = Polynomial::new(vec![one.clone(), -y.clone()]);
    let kernel = &(&one_minus_xy.scale(&(&one - y)) + &Polynomial::monomial(y * y, 2))
        + &(&x.scale(&(&km1 * y)) * &one_minus_xy);
    let lhs = &kernel.to_series(order) * &f_minus_h;
    // (1-y) (xy)^{k-1} + y^{k-1} (x^2 y + (k-1) x (1-xy)) (F(x,1) - H(x,1))
    let y_pow = num_traits::pow(y.clone(), k - 1);
    let first = Polynomial::monomial(&(&one - y) * &y_pow, k - 1);
    let factor =
        (&Polynomial::monomial(y.clone(), 2) + &(&x.scale(&km1) * &one_minus_xy)).scale(&y_pow);
    let rhs = &first.to_series(order) + &(&factor.to_series(order) * &f1_minus_h1);
    lhs.coeffs()
        .iter()
        .zip(rhs.coeffs())
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(n, (a, b))| (n, a.clone(), b.clone()))
}

fn validate_samples(samples: &[BigRational], k: usize) -> Result<(), OracleError> {
    if samples.len() < k + 3 {
        return Err(OracleError::InvalidSamples(format!(
            "need at least {} samples, got {}",
            k + 3,
            samples.len()
        )));
    }
    if samples.iter().any(One::is_one) {
        return Err(OracleError::InvalidSamples("sample y = 1".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != samples.len() {
        return Err(OracleError::InvalidSamples("repeated sample".into()));
    }
    Ok(())
}

/// `count` distinct rationals, none equal to 1: `-1, 2, 1/2, -2, 3, 1/3, -3, ...`
pub fn default_samples(count: usize) -> Vec<BigRational> {
    let mut out = vec![rat(-1)];
    let mut m = 2i64;
    while out.len() < count {
        out.extend([rat(m), ratio(1, m), rat(-m)]);
        m += 1;
    }
    out.truncate(count);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Quick,
    Full,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Suite::Quick),
            "full" => Ok(Suite::Full),
            other => Err(format!("unknown suite {other:?} (expected quick or full)")),
        }
    }
}

type Job = Box<dyn Fn(&Oracle) -> Result<CheckReport, OracleError> + Send + Sync>;

impl Oracle {
    /// Runs a verification suite. `table` replaces the published values in
    /// the table check (used to test failure reporting).
    pub fn run_suite(
        &self,
        suite: Suite,
        table: Option<&[[u64; 13]; 5]>,
    ) -> Result<Vec<CheckReport>, OracleError> {
        let table = *table.unwrap_or(&TABLE1);
        let mut jobs: Vec<Job> = vec![Box::new(move |_| Ok(check_table_against(&table)))];
        let (kmax, n_brute, lemma1_k, lemma3, det_b, fe_k, fe_order, q_l, q_n) = match suite {
            Suite::Quick => (3, 8, 3, (3, 1), 4, 3, 6, 3, 8),
            Suite::Full => (4, 10, 5, (4, 2), 6, 4, 8, 6, 20),
        };
        for k in 2..=kmax {
            for d in 0..=2 {
                jobs.push(Box::new(move |o| {
                    o.check_series_vs_bruteforce(k, d, n_brute)
                }));
            }
        }
        for k in 2..=lemma1_k {
            for l in 1..k {
                jobs.push(Box::new(move |o| {
                    o.check_lemma1(k, l, 9.min(o.max_brute_n))
                }));
            }
        }
        for k in 2..=lemma3.0 {
            for j in 0..=lemma3.1 {
                jobs.push(Box::new(move |o| {
                    o.check_lemma3(k, j, 9.min(o.max_brute_n))
                }));
            }
        }
        for b in 1..=det_b {
            for a in 1..=b {
                jobs.push(Box::new(move |_| check_determinant_identity(a, b)));
            }
        }
        for k in 2..=fe_k {
            jobs.push(Box::new(move |o| {
                o.check_functional_equation(k, fe_order, &default_samples(2 * fe_order))
            }));
        }
        for l in 0..=q_l {
            jobs.push(Box::new(move |o| o.check_q_identity(l, q_n)));
        }
        jobs.par_iter().map(|job| job(self)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn bruteforce_series_examples() {
        let o = Oracle::default();
        assert_eq!(
            o.bruteforce_series(2, 2, 5).unwrap(),
            big(&[1, 1, 2, 5, 14, 42])
        );
        assert_eq!(o.bruteforce_series(3, 1, 3).unwrap(), big(&[1, 1, 2, 5]));
        assert_eq!(o.bruteforce_series(4, 0, 0).unwrap(), big(&[1]));
        assert_eq!(
            o.bruteforce_series(2, 2, 13),
            Err(OracleError::CapExceeded { n: 13, cap: 12 })
        );
    }

    #[test]
    fn bruteforce_run_series_examples() {
        let o = Oracle::default();
        assert_eq!(
            o.bruteforce_run_series(2, 0, 4).unwrap(),
            big(&[1, 0, 0, 0, 0])
        );
        assert_eq!(
            o.bruteforce_run_series(2, 3, 3).unwrap()[3],
            BigInt::from(1)
        );
        let table = o.run_table(3, 7).unwrap();
        assert_eq!(
            table.total().integer_coeffs().unwrap(),
            o.bruteforce_series(3, 2, 7).unwrap()
        );
    }

    #[test]
    fn table_entries() {
        assert_eq!(TABLE1[3][11], 608996);
        assert_eq!(TABLE1[1][6], 188);
        let report = Oracle::default().check_table1();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.notes, ["65/65 cells match"]);
    }

    #[test]
    fn table_mismatch_is_reported() {
        let mut wrong = TABLE1;
        wrong[2][8] = 3869;
        let report = check_table_against(&wrong);
        assert_eq!(report.status, Status::Fail);
        let d = report.first_discrepancy.unwrap();
        assert_eq!(
            (d.index.as_str(), d.expected.as_str(), d.actual.as_str()),
            ("k=4,n=8", "3869", "3868")
        );
    }

    #[test]
    fn series_vs_bruteforce_examples() {
        let o = Oracle::default();
        assert!(o.check_series_vs_bruteforce(4, 2, 9).unwrap().passed());
        assert!(o.check_series_vs_bruteforce(3, 1, 9).unwrap().passed());
        assert!(o.check_series_vs_bruteforce(5, 0, 9).unwrap().passed());
        assert!(o.check_series_vs_bruteforce(3, 3, 5).is_err());
    }

    #[test]
    fn lemma_checks() {
        let o = Oracle::default();
        assert!(o.check_lemma1(2, 1, 8).unwrap().passed());
        assert!(o.check_lemma1(4, 3, 8).unwrap().passed());
        assert!(o.check_lemma1(4, 4, 8).is_err());
        assert!(o.check_lemma3(3, 0, 8).unwrap().passed());
        assert!(o.check_lemma3(3, 1, 8).unwrap().passed());
        assert!(o.check_lemma3(4, 2, 9).unwrap().passed());
    }

    #[test]
    fn lemma1_leading_coefficient() {
        let table = Oracle::default().run_table(4, 6).unwrap();
        for l in 1..4 {
            assert_eq!(table.f(l).coeff(l).unwrap(), &rat(1));
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(
            hessenberg_matrix(1, 2)[1],
            vec![Polynomial::from_ints(&[0, 2]); 2]
        );
        for (a, b) in [(2, 2), (1, 2), (2, 4)] {
            assert!(check_determinant_identity(a, b).unwrap().passed());
        }
        assert!(check_determinant_identity(3, 2).is_err());
    }

    #[test]
    fn functional_equation_examples() {
        let o = Oracle::default();
        let samples = vec![ratio(1, 2), ratio(1, 3), rat(2), rat(3), rat(-1), rat(5)];
        assert!(o
            .check_functional_equation(3, 8, &samples)
            .unwrap()
            .passed());
        let seven: Vec<_> = default_samples(7);
        assert!(o.check_functional_equation(4, 8, &seven).unwrap().passed());
        assert!(o
            .check_functional_equation(2, 8, &samples)
            .unwrap()
            .passed());
    }

    #[test]
    fn functional_equation_rejects_bad_samples() {
        let o = Oracle::default();
        let with_one = vec![rat(1), rat(2), rat(3), rat(4), rat(5), rat(6)];
        assert!(matches!(
            o.check_functional_equation(3, 6, &with_one),
            Err(OracleError::InvalidSamples(_))
        ));
        assert!(matches!(
            o.check_functional_equation(3, 6, &default_samples(5)),
            Err(OracleError::InvalidSamples(_))
        ));
    }

    #[test]
    fn functional_equation_detects_corruption() {
        let o = Oracle::default();
        let mut table = o.run_table(3, 6).unwrap();
        assert_eq!(functional_equation_mismatch(&table, 3, &rat(2)), None);
        table.runs[3][5] += 1;
        assert!(functional_equation_mismatch(&table, 3, &rat(2)).is_some());
    }

    #[test]
    fn default_samples_are_distinct() {
        let s = default_samples(16);
        assert_eq!(s.len(), 16);
        assert!(validate_samples(&s, 4).is_ok());
    }

    #[test]
    fn q_identity_examples() {
        let o = Oracle::default();
        let r = o.check_q_identity(1, 6).unwrap();
        assert!(r.passed());
        assert!(
            r.notes.iter().any(|n| n.contains("first at n=3")),
            "{:?}",
            r.notes
        );
        let r = o.check_q_identity(2, 4).unwrap();
        assert!(r.passed());
        assert_eq!(formulas::gf_q(2, 4).unwrap()[4], BigInt::from(8));
        let r = o.check_q_identity(0, 0).unwrap();
        assert!(r.passed() && r.notes.is_empty());
    }

    #[test]
    fn report_json_shape() {
        let r = check_determinant_identity(1, 2).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["name"], "determinant_identity");
        assert_eq!(v["status"], "pass");
        assert!(v["first_discrepancy"].is_null());
        assert!(v["elapsed_ms"].is_u64());
        assert_eq!(v["params"]["a"], "1");
    }
}
