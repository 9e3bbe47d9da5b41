//! Exact integer helpers: characters, the sign function `s`, Fibonacci
//! numbers and the two counting lemmas.

use rug::Integer;

use crate::error::{Error, Result};
use crate::precision::Scalar;

/// A character value in `{−1, 0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharacterValue(i8);

impl CharacterValue {
    pub const MINUS: Self = Self(-1);
    pub const ZERO: Self = Self(0);
    pub const PLUS: Self = Self(1);

    pub fn value(self) -> i8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn as_i64(self) -> i64 {
        self.0 as i64
    }
}

impl From<CharacterValue> for i64 {
    fn from(c: CharacterValue) -> i64 {
        c.0 as i64
    }
}

/// Non-principal Dirichlet character modulo 4: `1, 0, −1, 0` on residues `1, 2, 3, 0`.
pub fn chi4(n: i64) -> CharacterValue {
    match n.rem_euclid(4) {
        1 => CharacterValue::PLUS,
        3 => CharacterValue::MINUS,
        _ => CharacterValue::ZERO,
    }
}

/// Legendre symbol `(j/3)`.
pub fn legendre3(j: i64) -> CharacterValue {
    match j.rem_euclid(3) {
        1 => CharacterValue::PLUS,
        2 => CharacterValue::MINUS,
        _ => CharacterValue::ZERO,
    }
}

/// Sign function that is `+1` at zero.
pub fn sgn_s(x: i64) -> CharacterValue {
    if x >= 0 {
        CharacterValue::PLUS
    } else {
        CharacterValue::MINUS
    }
}

pub fn sgn_s_real(x: &Scalar) -> CharacterValue {
    if x.is_sign_negative() && !x.is_zero() {
        CharacterValue::MINUS
    } else {
        CharacterValue::PLUS
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FibonacciIndex(pub u32);

/// `F_n` with `F_0 = 0`, `F_1 = 1`, by the defining recurrence.
pub fn fibonacci(n: FibonacciIndex) -> Integer {
    let mut prev = Integer::from(0);
    let mut cur = Integer::from(1);
    if n.0 == 0 {
        return prev;
    }
    for _ in 1..n.0 {
        let next = Integer::from(&prev + &cur);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `Σ_{|j|≤n} (−1)^j`, which equals `(−1)^n`.
pub fn alternating_sum_check(n: u32) -> i64 {
    let n = n as i64;
    (-n..=n).map(|j| if j.rem_euclid(2) == 0 { 1 } else { -1 }).sum()
}

/// `Σ_{j=1}^{⌊3n/2⌋} (j/3)` for odd `n`, which equals 1.
pub fn legendre3_partial_sum(n: i64) -> Result<i64> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::InvalidParam(format!("n must be a positive odd integer, got {n}")));
    }
    Ok((1..=(3 * n) / 2).map(|j| legendre3(j).as_i64()).sum())
}

/// `(−1)^k` as an integer.
pub fn parity_sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
