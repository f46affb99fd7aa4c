//! Truncated formal power series and polynomials in one variable `x` with
//! exact rational coefficients.
//!
//! A [`Series`] of order `N` knows the coefficients of `x^0 ..= x^N` and
//! nothing beyond. Every operation tracks the order of its result explicitly;
//! nothing is ever padded with zeros past the known range.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by zero series")]
    DivisionByZero,
    #[error("non-divisible: dividend valuation {dividend} < divisor valuation {divisor}")]
    NonDivisible { dividend: usize, divisor: usize },
    #[error("dividend order {order} too small to cancel x^{valuation}")]
    OrderUnderflow { order: usize, valuation: usize },
    #[error("non-square constant term {0}")]
    NonSquareConstant(BigRational),
    #[error("beyond truncation order: requested x^{index}, order is {order}")]
    BeyondOrder { index: usize, order: usize },
    #[error("non-integral coefficient at index {index}: {value}")]
    NonIntegral { index: usize, value: BigRational },
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(BigRational::new(root(q.numer())?, root(q.denom())?))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    /// `coeffs.len() == order + 1`, always nonempty.
    coeffs: Vec<BigRational>,
}

impl Series {
    /// Keeps the first `order + 1` coefficients, filling any shortfall with
    /// zeros. Use this for exactly known (polynomial) data only.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Series { coeffs }
    }

    pub fn from_ints<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>, order: usize) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        Series::from_coeffs(coeffs, order)
    }

    pub fn zero(order: usize) -> Self {
        Series::from_coeffs(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        Series::from_coeffs(vec![c], order)
    }

    /// `c * x^power`, truncated.
    pub fn monomial(c: BigRational, power: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&BigRational, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::BeyondOrder {
            index: n,
            order: self.order(),
        })
    }

    /// Index of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Forgets coefficients above `order`. Asking for a higher order than is
    /// known keeps the series as is.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Series {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^power`; the order grows by `power` because the low
    /// coefficients become known zeros.
    pub fn shift(&self, power: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); power];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::NonIntegral {
                        index,
                        value: c.clone(),
                    })
                }
            })
            .collect()
    }

    /// `self / divisor`. Common powers of `x` are cancelled first, so the
    /// result order is `min(orders) - valuation(divisor)`.
    pub fn div(&self, divisor: &Series) -> Result<Series, SeriesError> {
        let v = divisor.valuation().ok_or(SeriesError::DivisionByZero)?;
        let order = self.order().min(divisor.order());
        if self.order() < v {
            return Err(SeriesError::OrderUnderflow {
                order: self.order(),
                valuation: v,
            });
        }
        if let Some(va) = self.valuation() {
            if va < v {
                return Err(SeriesError::NonDivisible {
                    dividend: va,
                    divisor: v,
                });
            }
        }
        let order = order - v;
        let a = &self.coeffs[v..=v + order];
        let b = &divisor.coeffs[v..=v + order];
        let inv_lead = b[0].recip();
        let mut q: Vec<BigRational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = a[n].clone();
            for i in 1..=n {
                acc -= &b[i] * &q[n - i];
            }
            q.push(acc * &inv_lead);
        }
        Ok(Series { coeffs: q })
    }

    /// The square root with positive constant term.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        let c0 = &self.coeffs[0];
        let s0 = match rational_sqrt(c0) {
            Some(s) if !s.is_zero() => s,
            _ => return Err(SeriesError::NonSquareConstant(c0.clone())),
        };
        let inv_two_s0 = (&s0 + &s0).recip();
        let mut s: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        s.push(s0);
        for n in 1..=self.order() {
            let mut acc = self.coeffs[n].clone();
            for i in 1..n {
                acc -= &s[i] * &s[n - i];
            }
            s.push(acc * &inv_two_s0);
        }
        Ok(Series { coeffs: s })
    }

    /// Power with non-negative exponent by repeated multiplication.
    pub fn pow(&self, e: usize) -> Series {
        (0..e).fold(Series::one(self.order()), |acc, _| &acc * self)
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
            .collect();
        Series { coeffs }
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
            .collect();
        Series { coeffs }
    }
}

impl Mul for &Series {
    type Output = Series;

    /// Cauchy product truncated at the smaller order.
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .filter(|&i| !self.coeffs[i].is_zero() && !rhs.coeffs[n - i].is_zero())
                    .fold(BigRational::zero(), |acc, i| {
                        acc + &self.coeffs[i] * &rhs.coeffs[n - i]
                    })
            })
            .collect();
        Series { coeffs }
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident, $ty:ty) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add, Series);
forward_owned!(Sub, sub, Series);
forward_owned!(Mul, mul, Series);

fn fmt_terms(f: &mut fmt::Formatter<'_>, coeffs: &[BigRational], zero_text: &str) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        match i {
            0 => write!(f, "{mag}")?,
            _ if mag.is_one() => {}
            _ => write!(f, "{mag}*")?,
        }
        match i {
            0 => {}
            1 => f.write_str("x")?,
            _ => write!(f, "x^{i}")?,
        }
    }
    if first {
        f.write_str(zero_text)?;
    }
    Ok(())
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs, "0")?;
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({self})")
    }
}

/// Polynomial in `x` with rational coefficients, lowest degree first and no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * x^power`
    pub fn monomial(c: BigRational, power: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); power];
        coeffs.push(c);
        Polynomial::new(coeffs)
    }

    pub fn x() -> Self {
        Polynomial::monomial(BigRational::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    pub fn to_series(&self, order: usize) -> Series {
        Series::from_coeffs(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Polynomial::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

forward_owned!(Add, add, Polynomial);
forward_owned!(Sub, sub, Polynomial);
forward_owned!(Mul, mul, Polynomial);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs, "0")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// rows, memoised over the set of columns already used. Exact, with no
/// division, and `O(2^n * n)` polynomial products.
pub fn poly_det(matrix: &[Vec<Polynomial>]) -> Result<Polynomial, SeriesError> {
    let n = matrix.len();
    for (row, entries) in matrix.iter().enumerate() {
        if entries.len() != n {
            return Err(SeriesError::NotSquare {
                row,
                len: entries.len(),
                expected: n,
            });
        }
    }
    if n == 0 {
        return Ok(Polynomial::one());
    }
    assert!(
        n < usize::BITS as usize,
        "matrix too large for subset expansion"
    );
    // minors[mask] = det of the bottom |mask| rows restricted to columns in mask
    let mut minors: Vec<Option<Polynomial>> = vec![None; 1 << n];
    minors[0] = Some(Polynomial::one());
    for mask in 1usize..(1 << n) {
        let size = mask.count_ones() as usize;
        let row = n - size;
        let mut acc = Polynomial::zero();
        for (rank, col) in (0..n).filter(|c| mask & (1 << c) != 0).enumerate() {
            let entry = &matrix[row][col];
            if entry.is_zero() {
                continue;
            }
            let term = entry * minors[mask & !(1 << col)].as_ref().unwrap();
            acc = if rank % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        minors[mask] = Some(acc);
    }
    Ok(minors[(1 << n) - 1].take().unwrap())
}
