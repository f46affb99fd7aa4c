//! Closed-form generating functions for `(k,d)`-noncrossing partitions
//! (partitions avoiding `12...k12...d`) and the auxiliary sequences they are
//! compared against.
//!
//! The coefficient polynomials
//!
//! ```text
//! beta(j, j) = 1,    beta(i, j) = j x prod_{s=i+1}^{j-1} (s x - 1)   (i < j)
//! ```
//!
//! feed every formula here. The `d = 2` family additionally needs the power
//! series root `y_k` of the kernel
//! `1 + x^2 y^2 / ((1-y)(1-xy)) + (k-1) x y / (1-y)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::series::{rat, Polynomial, Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("beta({i},{j}) needs i <= j")]
    BetaIndex { i: usize, j: usize },
    #[error("parameter k = {0} out of range (need k >= 2)")]
    InvalidK(usize),
    #[error("closed form out of range: k = {k}, n = {n} (need 2 <= k <= 6, n >= 1)")]
    ClosedFormRange { k: usize, n: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Extra truncation order carried through intermediate series so that the
/// two divisions by series of valuation one still leave the requested
/// number of exact coefficients.
const HEADROOM: usize = 2;

fn check_k(k: usize) -> Result<(), FormulaError> {
    if k < 2 {
        Err(FormulaError::InvalidK(k))
    } else {
        Ok(())
    }
}

pub fn beta(i: usize, j: usize) -> Result<Polynomial, FormulaError> {
    if i > j {
        return Err(FormulaError::BetaIndex { i, j });
    }
    if i == j {
        return Ok(Polynomial::one());
    }
    let lead = Polynomial::monomial(rat(j as i64), 1);
    Ok((i + 1..j).fold(lead, |acc, s| {
        &acc * &Polynomial::from_ints(&[-1, s as i64])
    }))
}

fn sign(e: usize) -> BigRational {
    if e.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `sum_{j in js} sum_{i=0}^{j} (-1)^{i+j} x^i beta(i,j)`
fn numerator_sum(js: impl Iterator<Item = usize>) -> Polynomial {
    let mut acc = Polynomial::zero();
    for j in js {
        for i in 0..=j {
            let term = &Polynomial::monomial(sign(i + j), i) * &beta(i, j).unwrap();
            acc = &acc + &term;
        }
    }
    acc
}

/// `sum_{j in js} sum_{i=0}^{j} (-1)^{i+j} i beta(i,j)`; callers multiply by
/// `x` where the printed formula has it.
fn weighted_sum(js: impl Iterator<Item = usize>) -> Polynomial {
    let mut acc = Polynomial::zero();
    for j in js {
        for i in 1..=j {
            let c = sign(i + j) * rat(i as i64);
            acc = &acc + &beta(i, j).unwrap().scale(&c);
        }
    }
    acc
}

/// Power series expansion of
/// `y_k = (1 - (k-2)x - sqrt((1-kx)^2 - 4x^2)) / (2x(1 - (k-2)x))`
/// to the given order.
pub fn y_series(k: usize, order: usize) -> Result<Series, FormulaError> {
    check_k(k)?;
    let work = order + 1;
    let k = k as i64;
    let (num, den) = kernel_root_parts(k, work)?;
    let root = (&num - &discriminant(k).to_series(work).sqrt()?).truncate(work);
    Ok(root.div(&den)?.truncate(order))
}

/// `(1 - kx)^2 - 4x^2`
fn discriminant(k: i64) -> Polynomial {
    Polynomial::from_ints(&[1, -2 * k, k * k - 4])
}

/// `(1 - (k-2)x, 2x(1 - (k-2)x))` as series of the given order.
fn kernel_root_parts(k: i64, order: usize) -> Result<(Series, Series), FormulaError> {
    let a = Polynomial::from_ints(&[1, -(k - 2)]);
    let den = &Polynomial::from_ints(&[0, 2]) * &a;
    Ok((a.to_series(order), den.to_series(order)))
}

/// The kernel with denominators cleared, as polynomial coefficients of
/// `1, y, y^2`: `(1-y)(1-xy) + x^2 y^2 + (k-1) x y (1-xy)`.
pub fn kernel_coefficients(k: usize) -> Result<[Polynomial; 3], FormulaError> {
    check_k(k)?;
    // bivariate polynomials as coefficient vectors in y
    type Bi = Vec<Polynomial>;
    fn bmul(a: &Bi, b: &Bi) -> Bi {
        let mut out = vec![Polynomial::zero(); a.len() + b.len() - 1];
        for (i, p) in a.iter().enumerate() {
            for (j, q) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(p * q);
            }
        }
        out
    }
    fn badd(a: &Bi, b: &Bi) -> Bi {
        let len = a.len().max(b.len());
        (0..len)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(p), Some(q)) => p + q,
                (Some(p), None) | (None, Some(p)) => p.clone(),
                (None, None) => unreachable!(),
            })
            .collect()
    }
    let p = Polynomial::from_ints;
    let one_minus_y: Bi = vec![p(&[1]), p(&[-1])];
    let one_minus_xy: Bi = vec![p(&[1]), p(&[0, -1])];
    let x2y2: Bi = vec![p(&[]), p(&[]), p(&[0, 0, 1])];
    let kxy: Bi = vec![p(&[]), p(&[0, k as i64 - 1])];

    let cleared = badd(
        &badd(&bmul(&one_minus_y, &one_minus_xy), &x2y2),
        &bmul(&kxy, &one_minus_xy),
    );
    let mut out: [Polynomial; 3] = Default::default();
    for (slot, c) in out.iter_mut().zip(cleared) {
        *slot = c;
    }
    Ok(out)
}

/// The cleared kernel evaluated at `y = y_k(x)`. Zero to the given order
/// exactly when `y_k` is a root.
pub fn kernel_residual(k: usize, order: usize) -> Result<Series, FormulaError> {
    let [c0, c1, c2] = kernel_coefficients(k)?;
    let y = y_series(k, order)?;
    let value = &(&c0.to_series(order) + &(&c1.to_series(order) * &y))
        + &(&c2.to_series(order) * &y.pow(2));
    Ok(value)
}

/// The same check for the other root `y_+ = (1 - (k-2)x + sqrt(D)) / (2x(1 - (k-2)x))`,
/// which has a pole at `x = 0`. With `z = x y_+` (a power series) this
/// returns `x^2 K(x, z/x) = c0 x^2 + c1 x z + c2 z^2`.
pub fn kernel_residual_conjugate(k: usize, order: usize) -> Result<Series, FormulaError> {
    let [c0, c1, c2] = kernel_coefficients(k)?;
    let ki = k as i64;
    let (a, _) = kernel_root_parts(ki, order)?;
    let sqrt_d = discriminant(ki).to_series(order).sqrt()?;
    // z = (a + sqrt D) / (2a); a has unit constant term so no order is lost
    let z = (&a + &sqrt_d).div(&a.scale(&rat(2)))?;
    let x = Polynomial::x();
    let x2 = &x * &x;
    let t0 = (&c0 * &x2).to_series(order);
    let t1 = &(&c1 * &x).to_series(order) * &z;
    let t2 = &c2.to_series(order) * &z.pow(2);
    Ok(&(&t0 + &t1) + &t2)
}

/// Integer coefficients of the generating function for partitions of `[n]`
/// avoiding `12...k12` (`(k,2)`-noncrossing).
pub fn gf_k2(k: usize, order: usize) -> Result<Vec<BigInt>, FormulaError> {
    Ok(gf_k2_series(k, order)?.integer_coeffs()?)
}

pub fn gf_k2_series(k: usize, order: usize) -> Result<Series, FormulaError> {
    check_k(k)?;
    let work = order + HEADROOM;
    let y = y_series(k, work)?;
    let xy = y.shift(1).truncate(work);
    let head = Series::monomial(BigRational::one(), k - 1, work);
    // x^{k-1} y / (1 - x y)
    let tail = (&head * &y).div(&(&Series::one(work) - &xy))?;
    let num = &tail + &numerator_sum(0..=k - 2).to_series(work);
    let den = &Series::one(work) - &(&Polynomial::x() * &weighted_sum(0..=k - 2)).to_series(work);
    Ok(num.div(&den)?.truncate(order))
}

/// Integer coefficients of the generating function for partitions avoiding
/// `12...k1` (`(k,1)`-noncrossing).
pub fn gf_k1(k: usize, order: usize) -> Result<Vec<BigInt>, FormulaError> {
    Ok(gf_k1_series(k, order)?.integer_coeffs()?)
}

pub fn gf_k1_series(k: usize, order: usize) -> Result<Series, FormulaError> {
    check_k(k)?;
    let one_minus_x = Polynomial::from_ints(&[1, -1]);
    let x = Polynomial::x();
    let inner_num = numerator_sum(1..=k - 2);
    let last_num = numerator_sum(std::iter::once(k - 1));
    let inner_w = weighted_sum(1..=k - 2);
    let last_w = weighted_sum(std::iter::once(k - 1));

    let num = &(&one_minus_x + &(&one_minus_x * &inner_num)) + &last_num;
    let den = &(&one_minus_x - &(&(&x * &one_minus_x) * &inner_w)) - &(&x * &last_w);
    rational_expansion(&num, &den, order)
}

/// Integer coefficients of the generating function attached to the family
/// `Q_l`. The expansion coincides with the number of partitions of `[n]`
/// with at most `l` blocks.
pub fn gf_q(l: usize, order: usize) -> Result<Vec<BigInt>, FormulaError> {
    Ok(gf_q_series(l, order)?.integer_coeffs()?)
}

pub fn gf_q_series(l: usize, order: usize) -> Result<Series, FormulaError> {
    let num = &Polynomial::one() + &numerator_sum(1..=l);
    let den = &Polynomial::one() - &(&Polynomial::x() * &weighted_sum(1..=l));
    rational_expansion(&num, &den, order)
}

fn rational_expansion(
    num: &Polynomial,
    den: &Polynomial,
    order: usize,
) -> Result<Series, FormulaError> {
    let work = order + HEADROOM;
    Ok(num
        .to_series(work)
        .div(&den.to_series(work))?
        .truncate(order))
}

/// Stirling number of the second kind; zero when `i > n`.
pub fn stirling2(n: usize, i: usize) -> BigInt {
    if i > n {
        return BigInt::zero();
    }
    stirling_row(n).swap_remove(i)
}

/// `[S(n,0), ..., S(n,n)]` by the triangular recurrence.
pub fn stirling_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for i in 1..=m {
            let carry = if i < m {
                &row[i] * BigInt::from(i)
            } else {
                BigInt::zero()
            };
            next[i] = &row[i - 1] + carry;
        }
        row = next;
    }
    row
}

pub fn bell(n: usize) -> BigInt {
    stirling_row(n).into_iter().sum()
}

/// Number of `(k,0)`-noncrossing partitions of `[n]`, i.e. partitions with
/// at most `k - 1` blocks.
pub fn gf_k0(k: usize, n: usize) -> BigInt {
    stirling_row(n).into_iter().take(k).sum()
}

pub fn gf_k0_sequence(k: usize, order: usize) -> Vec<BigInt> {
    (0..=order).map(|n| gf_k0(k, n)).collect()
}

pub fn catalan(n: usize) -> BigInt {
    binomial(BigInt::from(2 * n), BigInt::from(n)) / BigInt::from(n + 1)
}

/// `sum_{i=0}^{m} (-1)^i 3^{m-i} C(m,i) C(i, floor(i/2))`, the binomial
/// transform of the Catalan numbers.
pub fn catalan_binomial_transform(m: usize) -> BigInt {
    (0..=m)
        .map(|i| {
            let term = BigInt::from(3).pow((m - i) as u32)
                * binomial(BigInt::from(m), BigInt::from(i))
                * binomial(BigInt::from(i), BigInt::from(i / 2));
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// OEIS A007317 with its offset 1 (`1, 2, 5, 15, 51, ...`), extended by
/// `a(0) = 1`. This is the number of `(3,2)`-noncrossing partitions of `[n]`.
pub fn a007317(n: usize) -> BigInt {
    match n {
        0 => BigInt::one(),
        _ => catalan_binomial_transform(n - 1),
    }
}

/// Explicit counts of `(k,1)`-noncrossing partitions for `k = 2..=6`,
/// valid for `n >= 1`.
pub fn closed_form_k1(k: usize, n: usize) -> Result<BigInt, FormulaError> {
    if !(2..=6).contains(&k) || n == 0 {
        return Err(FormulaError::ClosedFormRange { k, n });
    }
    let p = |b: u32| BigInt::from(b).pow(n as u32);
    let v = match k {
        2 => return Ok(BigInt::from(2).pow(n as u32 - 1)),
        3 => (p(3) + 3) / 6,
        4 => (p(4) + 6 * p(2) + 8) / 24,
        5 => (p(5) + 10 * p(3) + 20 * p(2) + 45) / 120,
        6 => (p(6) + 15 * p(4) + 40 * p(3) + 135 * p(2) + 264) / 720,
        _ => unreachable!(),
    };
    Ok(v)
}

/// The explicit rational generating functions for `(k,1)`-noncrossing
/// partitions, `k = 2..=6`, as (numerator, denominator factors) in integer
/// coefficients.
pub fn explicit_k1_gf(k: usize) -> Option<(Vec<i64>, Vec<Vec<i64>>)> {
    let lin = |a: i64| vec![1, -a];
    let gf = match k {
        2 => (vec![1, -1], vec![lin(2)]),
        3 => (vec![1, -3, 1], vec![lin(1), lin(3)]),
        4 => (vec![1, -6, 9, -3], vec![lin(1), lin(2), lin(4)]),
        5 => (
            vec![1, -10, 32, -37, 11],
            vec![lin(1), lin(2), lin(3), lin(5)],
        ),
        6 => (
            vec![1, -15, 81, -192, 189, -53],
            vec![lin(1), lin(2), lin(3), lin(4), lin(6)],
        ),
        _ => return None,
    };
    Some(gf)
}

pub fn explicit_k1_series(k: usize, order: usize) -> Option<Result<Series, FormulaError>> {
    let (num, factors) = explicit_k1_gf(k)?;
    let den = factors
        .iter()
        .fold(Polynomial::one(), |acc, f| &acc * &Polynomial::from_ints(f));
    Some(rational_expansion(
        &Polynomial::from_ints(&num),
        &den,
        order,
    ))
}

/// `(3 - 3x - sqrt(1 - 6x + 5x^2)) / (2(1 - x))`, the simplified `k = 3`
/// generating function.
pub fn explicit_k3_series(order: usize) -> Result<Series, FormulaError> {
    let work = order + HEADROOM;
    let root = Polynomial::from_ints(&[1, -6, 5]).to_series(work).sqrt()?;
    let num = &Polynomial::from_ints(&[3, -3]).to_series(work) - &root;
    let den = Polynomial::from_ints(&[2, -2]).to_series(work);
    Ok(num.div(&den)?.truncate(order))
}

/// Which family of counting sequences to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Avoiding `12...k12`.
    K2,
    /// Avoiding `12...k1`.
    K1,
    /// Avoiding `12...k`: at most `k - 1` blocks.
    K0,
    /// The `Q_l` family, parameterised by `l`.
    Q,
}

impl Family {
    /// The `d` of `(k,d)`, if the family is one.
    pub fn d(self) -> Option<usize> {
        match self {
            Family::K2 => Some(2),
            Family::K1 => Some(1),
            Family::K0 => Some(0),
            Family::Q => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::K2 => "k2",
            Family::K1 => "k1",
            Family::K0 => "k0",
            Family::Q => "q",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "k2" => Ok(Family::K2),
            "k1" => Ok(Family::K1),
            "k0" => Ok(Family::K0),
            "q" => Ok(Family::Q),
            other => Err(format!(
                "unknown family {other:?} (expected k2, k1, k0 or q)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GfRequest {
    pub family: Family,
    /// `k` for the `(k,d)` families, `l` for `Q`.
    pub parameter: usize,
    pub order: usize,
}

impl GfRequest {
    pub fn expand(&self) -> Result<Vec<BigInt>, FormulaError> {
        let GfRequest {
            family,
            parameter,
            order,
        } = *self;
        match family {
            Family::K2 => gf_k2(parameter, order),
            Family::K1 => gf_k1(parameter, order),
            Family::K0 => {
                check_k(parameter)?;
                Ok(gf_k0_sequence(parameter, order))
            }
            Family::Q => gf_q(parameter, order),
        }
    }
}
