use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::frac;

/// A rational number modulo 1, stored in [0, 1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ(BigRational);

impl QmodZ {
    pub fn new(q: BigRational) -> Self {
        QmodZ(frac(&q))
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        QmodZ(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    /// Order in Q/Z, the reduced denominator.
    pub fn order(&self) -> BigInt {
        self.0.denom().clone()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(&self.0 * BigRational::from_integer(k.into()))
    }

    pub fn parse(s: &str) -> Option<Self> {
        s.trim().parse::<BigRational>().ok().map(Self::new)
    }
}

impl Add for &QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: &QmodZ) -> QmodZ {
        QmodZ::new(&self.0 + &rhs.0)
    }
}

impl Sub for &QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: &QmodZ) -> QmodZ {
        QmodZ::new(&self.0 - &rhs.0)
    }
}

impl Neg for &QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-&self.0)
    }
}

/// Rendered as a reduced fraction `a/b`, or `0`.
impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
