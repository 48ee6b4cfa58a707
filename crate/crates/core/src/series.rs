//! Exact counting through generating functions.
//!
//! Four families are counted by coefficient extraction from their functional
//! equations (every node weighing 1, so skeleton size `s` sits at `z^(s+1)`):
//!
//! ```text
//! M = z + zM + zM²     Motzkin trees
//! B = z + zB²          binary trees
//! C = zC² + zM         closable skeletons
//! U = zU² + zB         uniquely closable skeletons
//! ```
//!
//! The same closable and uniquely closable sequences also come out of
//! P-recurrences (linear recurrences with polynomial coefficients), which are
//! much cheaper per term; both routes are kept so each can check the other.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::size::SeqIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Motzkin,
    Binary,
    Closable,
    Unclosable,
    UniquelyClosable,
    Catalan,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Motzkin => "motzkin",
            Family::Binary => "binary",
            Family::Closable => "closable",
            Family::Unclosable => "unclosable",
            Family::UniquelyClosable => "uniquely_closable",
            Family::Catalan => "catalan",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coefficients of one generating function, indexed by exponent from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    family: Family,
    coeffs: Vec<BigUint>,
}

impl CoefficientTable {
    pub fn new(family: Family, coeffs: Vec<BigUint>) -> Self {
        CoefficientTable { family, coeffs }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Coefficients by exponent.
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn at(&self, index: SeqIndex) -> Option<&BigUint> {
        self.coeffs.get(index.exponent())
    }

    /// Largest exponent present.
    pub fn max_exponent(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Counts by skeleton size, i.e. the coefficients shifted down by the
    /// generating-function offset.
    pub fn by_size(&self) -> &[BigUint] {
        let first = SeqIndex::Size(0).exponent();
        self.coeffs.get(first..).unwrap_or(&[])
    }
}

/// `Σ_{i+j=n} a_i a_j`
fn self_convolution(a: &[BigUint], n: usize) -> BigUint {
    (0..=n).map(|i| &a[i] * &a[n - i]).sum()
}

/// Builds a table through exponent `upto` from `next(table, n)`.
fn grow(upto: usize, mut next: impl FnMut(&[BigUint], usize) -> BigUint) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = Vec::with_capacity(upto + 1);
    for n in 0..=upto {
        let value = next(&out, n);
        out.push(value);
    }
    out
}

fn unit_at_one(n: usize) -> BigUint {
    if n == 1 {
        BigUint::one()
    } else {
        BigUint::zero()
    }
}

pub fn motzkin_coeffs(upto: SeqIndex) -> CoefficientTable {
    let coeffs = grow(upto.exponent(), |m, n| {
        if n == 0 {
            return BigUint::zero();
        }
        unit_at_one(n) + &m[n - 1] + self_convolution(m, n - 1)
    });
    CoefficientTable::new(Family::Motzkin, coeffs)
}

pub fn binary_coeffs(upto: SeqIndex) -> CoefficientTable {
    let coeffs = grow(upto.exponent(), |b, n| {
        if n == 0 {
            return BigUint::zero();
        }
        unit_at_one(n) + self_convolution(b, n - 1)
    });
    CoefficientTable::new(Family::Binary, coeffs)
}

pub fn closable_coeffs(upto: SeqIndex) -> CoefficientTable {
    let m = motzkin_coeffs(upto);
    let coeffs = grow(upto.exponent(), |c, n| {
        if n == 0 {
            return BigUint::zero();
        }
        self_convolution(c, n - 1) + &m.coeffs[n - 1]
    });
    CoefficientTable::new(Family::Closable, coeffs)
}

pub fn uniquely_closable_coeffs(upto: SeqIndex) -> CoefficientTable {
    let b = binary_coeffs(upto);
    let coeffs = grow(upto.exponent(), |u, n| {
        if n == 0 {
            return BigUint::zero();
        }
        self_convolution(u, n - 1) + &b.coeffs[n - 1]
    });
    CoefficientTable::new(Family::UniquelyClosable, coeffs)
}

/// Motzkin trees that are not closable: `M - C`.
pub fn unclosable_coeffs(upto: SeqIndex) -> CoefficientTable {
    let m = motzkin_coeffs(upto);
    let c = closable_coeffs(upto);
    let coeffs = m.coeffs.iter().zip(&c.coeffs).map(|(m, c)| m - c).collect();
    CoefficientTable::new(Family::Unclosable, coeffs)
}

/// Catalan numbers `C(2k,k)/(k+1)`, indexed by `k`.
pub fn catalan(k: usize) -> BigUint {
    // C(2k, k) = prod_{i=1..k} (k+i)/i, exact at every step
    let mut binom = BigUint::one();
    for i in 1..=k {
        binom = binom * BigUint::from(k + i) / BigUint::from(i);
    }
    binom / BigUint::from(k + 1)
}

/// Catalan numbers 0..=upto as a table indexed by `k`.
pub fn catalan_coeffs(upto: usize) -> CoefficientTable {
    CoefficientTable::new(Family::Catalan, (0..=upto).map(catalan).collect())
}

/// A linear recurrence with polynomial coefficients,
/// `Σ_{j=0..=order} P_j(n) · a_{n+j} = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub family: Family,
    /// `polys[j]` holds the coefficients of `P_j`, constant term first.
    pub polys: Vec<Vec<i64>>,
    /// `a_0 .. a_{order-1}`.
    pub initial: Vec<BigInt>,
}

impl RecurrenceSpec {
    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    fn eval(&self, j: usize, n: usize) -> BigInt {
        let n = BigInt::from(n);
        self.polys[j]
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * &n + BigInt::from(c))
    }
}

fn ints(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

/// Six-term recurrence for the closable coefficients `c_n`.
pub fn closable_recurrence() -> RecurrenceSpec {
    RecurrenceSpec {
        family: Family::Closable,
        polys: vec![
            vec![0, 87552, 161088, 90816, 18480, 1200],
            vec![95760, 231768, 202312, 79024, 13520, 800],
            vec![-9576, -44100, -38792, -12848, -1840, -100],
            vec![-23940, -66276, -48254, -14648, -1990, -100],
            vec![-167580, -260286, -147519, -38883, -4815, -225],
            vec![131670, 218739, 120441, 29817, 3435, 150],
            vec![-26334, -45405, -24128, -5642, -610, -25],
        ],
        initial: ints(&[0, 0, 1, 1, 2, 5]),
    }
}

/// Ten-term recurrence for `c_n` read directly off the differential
/// equation. Slower than [`closable_recurrence`]; kept as a cross-check.
pub fn closable_recurrence_long() -> RecurrenceSpec {
    RecurrenceSpec {
        family: Family::Closable,
        polys: vec![
            vec![0, 384, 384],
            vec![-480, -512, -32],
            vec![-2928, -2192, -368],
            vec![-504, -344, -56],
            vec![852, 188, -4],
            vec![2328, 1034, 110],
            vec![-390, -201, -21],
            vec![-1272, -327, -21],
            vec![648, 153, 9],
            vec![-90, -19, -1],
        ],
        initial: ints(&[0, 0, 1, 1, 2, 5, 11, 26, 65]),
    }
}

/// Nine-term recurrence for the uniquely closable coefficients `u_n`.
pub fn uniquely_closable_recurrence() -> RecurrenceSpec {
    RecurrenceSpec {
        family: Family::UniquelyClosable,
        polys: vec![
            vec![0, 256, 256],
            vec![-512, -640, -128],
            vec![-880, -704, -128],
            vec![152, -64, -32],
            vec![1324, 592, 64],
            vec![540, 232, 24],
            vec![-616, -200, -16],
            vec![-128, -32, -2],
            vec![72, 17, 1],
        ],
        initial: ints(&[0, 0, 1, 0, 1, 1, 2, 2]),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("leading coefficient vanishes when solving for a_{index}")]
    ZeroLeading { index: usize },
    #[error("a_{index} is not an integer: {numerator} / {denominator}")]
    NotDivisible {
        index: usize,
        numerator: BigInt,
        denominator: BigInt,
    },
    #[error("a_{index} = {value} is negative")]
    Negative { index: usize, value: BigInt },
    #[error("recurrence needs {expected} initial values, got {got}")]
    BadInitial { expected: usize, got: usize },
}

/// Runs the recurrence forward through exponent `upto`, solving for the
/// highest-index term at each step. Division must be exact.
pub fn recurrence_advance(
    spec: &RecurrenceSpec,
    upto: SeqIndex,
) -> Result<CoefficientTable, RecurrenceError> {
    let order = spec.order();
    if spec.initial.len() != order {
        return Err(RecurrenceError::BadInitial {
            expected: order,
            got: spec.initial.len(),
        });
    }
    let last = upto.exponent();
    let mut values: Vec<BigInt> = spec.initial.clone();
    let mut n = 0;
    while values.len() <= last {
        let index = n + order;
        let leading = spec.eval(order, n);
        if leading.is_zero() {
            return Err(RecurrenceError::ZeroLeading { index });
        }
        let rest: BigInt = (0..order).map(|j| spec.eval(j, n) * &values[n + j]).sum();
        let numerator = -rest;
        let (quotient, remainder) = (&numerator / &leading, &numerator % &leading);
        if !remainder.is_zero() {
            return Err(RecurrenceError::NotDivisible {
                index,
                numerator,
                denominator: leading,
            });
        }
        values.push(quotient);
        n += 1;
    }
    values.truncate(last + 1);
    let mut coeffs = Vec::with_capacity(values.len());
    for (index, value) in values.into_iter().enumerate() {
        match value.to_biguint() {
            Some(v) => coeffs.push(v),
            None => {
                debug_assert_eq!(value.sign(), Sign::Minus);
                return Err(RecurrenceError::Negative { index, value });
            }
        }
    }
    Ok(CoefficientTable::new(spec.family, coeffs))
}

/// Families with a known first-order asymptotic formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticFamily {
    Motzkin,
    Closable,
    UniquelyClosable,
}

/// Γ(3/4)
pub const GAMMA_THREE_QUARTERS: f64 = 1.225_416_702_465_177_6;

/// Leading-order estimate of the coefficient at `at`:
///
/// ```text
/// m_n ~ √3/(2√π) · 3^n · n^(-3/2)
/// c_n ~ √15/(10√π) · 3^n · n^(-3/2)
/// u_n ~ 2^(1/4+n) / (4 Γ(3/4) n^(5/4))
/// ```
///
/// Evaluated in log space; returns `inf` once the value leaves `f64` range.
///
/// # Panics
///
/// If `at` is exponent 0.
pub fn asymptotic_estimate(family: AsymptoticFamily, at: SeqIndex) -> f64 {
    let n = at.exponent();
    assert!(n >= 1, "asymptotic estimate needs exponent >= 1");
    let n = n as f64;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let ln = match family {
        AsymptoticFamily::Motzkin => {
            (3f64.sqrt() / (2.0 * sqrt_pi)).ln() + n * 3f64.ln() - 1.5 * n.ln()
        }
        AsymptoticFamily::Closable => {
            (15f64.sqrt() / (10.0 * sqrt_pi)).ln() + n * 3f64.ln() - 1.5 * n.ln()
        }
        AsymptoticFamily::UniquelyClosable => {
            (0.25 + n) * 2f64.ln() - (4.0 * GAMMA_THREE_QUARTERS).ln() - 1.25 * n.ln()
        }
    };
    ln.exp()
}

/// `num / den` as a float, for ratios of large counts.
pub fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    let shift = den.bits().saturating_sub(1000);
    let (n, d) = (num >> shift, den >> shift);
    n.to_f64().unwrap_or(f64::INFINITY) / d.to_f64().unwrap_or(f64::INFINITY)
}
