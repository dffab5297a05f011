//! Natural logarithms of decimals in fixed-point integer arithmetic.

use bigdecimal::RoundingMode;
use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::scalar::Decimal;

fn pow10(p: u32) -> BigInt {
    BigInt::from(10u32).pow(p)
}

/// `atanh(num/den) * 10^p`, truncated, for `0 <= num/den < 1`.
fn atanh_fixed(num: &BigInt, den: &BigInt, p: u32) -> BigInt {
    let num2 = num * num;
    let den2 = den * den;
    let mut term = num * pow10(p) / den;
    let mut sum = term.clone();
    let mut k = 1u32;
    loop {
        term = term * &num2 / &den2;
        if term.is_zero() {
            return sum;
        }
        sum += &term / BigInt::from(2 * k + 1);
        k += 1;
    }
}

fn ln2_fixed(p: u32) -> BigInt {
    atanh_fixed(&BigInt::one(), &BigInt::from(3), p) * 2
}

fn ln10_fixed(p: u32) -> BigInt {
    ln2_fixed(p) * 3 + atanh_fixed(&BigInt::one(), &BigInt::from(9), p) * 2
}

/// Digits needed to absorb the error of scaling `ln 2` and `ln 10`.
fn magnitude(x: &Decimal) -> u32 {
    let (m, s) = x.as_bigint_and_exponent();
    (m.bits() + s.unsigned_abs()).to_string().len() as u32
}

/// `ln(x) * 10^p` up to a few units in the last place; `x > 0`.
fn ln_fixed(x: &Decimal, p: u32) -> BigInt {
    let (m, s) = x.as_bigint_and_exponent();
    assert_eq!(m.sign(), Sign::Plus, "logarithm of a non-positive number");
    let k = m.bits() - 1;
    let two_k = BigInt::one() << k;
    let y = atanh_fixed(&(&m - &two_k), &(&m + &two_k), p) * 2;
    y + ln2_fixed(p) * BigInt::from(k) - ln10_fixed(p) * BigInt::from(s)
}

fn round_fixed(v: BigInt, p: u32, digits: u32) -> Decimal {
    Decimal::new(v, p as i64).with_scale_round(digits as i64, RoundingMode::HalfEven)
}

/// Natural logarithm of `x > 0`, rounded to `digits` fractional digits.
pub fn ln(x: &Decimal, digits: u32) -> Decimal {
    let p = digits + 12 + magnitude(x);
    round_fixed(ln_fixed(x, p), p, digits)
}

/// `-ln(a / b) = ln b - ln a` for positive `a`, `b`, rounded once.
pub fn neg_log_ratio(a: &Decimal, b: &Decimal, digits: u32) -> Decimal {
    if a == b {
        return Decimal::zero().with_scale(digits as i64);
    }
    let p = digits + 12 + magnitude(a).max(magnitude(b));
    let v = ln_fixed(b, p) - ln_fixed(a, p);
    let out = round_fixed(v, p, digits);
    if out.is_negative() && out.is_zero() {
        out.abs()
    } else {
        out
    }
}
