//! Exact rational scores.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Exact non-float score, always in reduced form with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Score(BigRational);

impl Score {
    pub fn zero() -> Self {
        Score(BigRational::zero())
    }

    pub fn integer(v: i64) -> Self {
        Score(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Score(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Score(r)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn mul_int(&self, v: i64) -> Score {
        Score(&self.0 * BigRational::from_integer(BigInt::from(v)))
    }

    pub fn div_int(&self, v: i64) -> Score {
        Score(&self.0 / BigRational::from_integer(BigInt::from(v)))
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Add for Score {
    type Output = Score;
    fn add(self, rhs: Score) -> Score {
        Score(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Score> for &'a Score {
    type Output = Score;
    fn add(self, rhs: &Score) -> Score {
        Score(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Score> for Score {
    fn add_assign(&mut self, rhs: &Score) {
        self.0 += &rhs.0;
    }
}

impl Sub for Score {
    type Output = Score;
    fn sub(self, rhs: Score) -> Score {
        Score(self.0 - rhs.0)
    }
}

impl Sum for Score {
    fn sum<I: Iterator<Item = Score>>(iter: I) -> Score {
        iter.fold(Score::zero(), |acc, s| acc + s)
    }
}

/// Serialized as `{"num": "<int>", "den": "<int>"}`.
impl Serialize for Score {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Score", 2)?;
        st.serialize_field("num", &self.0.numer().to_string())?;
        st.serialize_field("den", &self.0.denom().to_string())?;
        st.end()
    }
}

/// `H_j = 1 + 1/2 + ... + 1/j`, with `H_0 = 0`.
pub fn harmonic(j: usize) -> Score {
    let mut acc = BigRational::zero();
    for p in 1..=j {
        acc += BigRational::new(BigInt::one(), BigInt::from(p));
    }
    Score(acc)
}

/// `H_0..=H_max`.
pub(crate) fn harmonic_table(max: usize) -> Vec<Score> {
    let mut table = Vec::with_capacity(max + 1);
    let mut acc = BigRational::zero();
    table.push(Score(acc.clone()));
    for p in 1..=max {
        acc += BigRational::new(BigInt::one(), BigInt::from(p));
        table.push(Score(acc.clone()));
    }
    table
}
