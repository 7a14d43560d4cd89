use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("θ_{n} = {theta} has lowest denominator {got}, expected p_n = {p}")]
    NotAdmissible { n: u64, theta: String, got: i64, p: i64 },
    #[error("p_n must be even and at least 4, got {0}")]
    BadLevel(i64),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Parses `"a/b"` or `"a"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Q, SequenceError> {
    let err = || SequenceError::Parse(s.to_string());
    let (a, b) = match s.trim().split_once('/') {
        Some((a, b)) => (a.trim().parse().map_err(|_| err())?, b.trim().parse().map_err(|_| err())?),
        None => (s.trim().parse().map_err(|_| err())?, 1),
    };
    if b == 0 {
        return Err(err());
    }
    Ok(Q::new(a, b))
}

/// `θ_n = a/b + ζ/p_n` with `p_n = step · n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdmissibleSequence {
    pub base: Q,
    pub zeta: Q,
    pub step: i64,
}

impl AdmissibleSequence {
    pub fn new(base: Q, zeta: Q, step: i64) -> Self {
        Self { base, zeta, step }
    }

    /// The family `θ_n = -1/2 + 1/(4n)` of roots converging to `A = -i`.
    pub fn minus_i() -> Self {
        Self::new(Q::new(-1, 2), Q::from_integer(1), 4)
    }

    /// `B = lcm(b, 2)`.
    pub fn big_b(&self) -> i64 {
        self.base.denom().lcm(&2)
    }

    pub fn p(&self, n: u64) -> i64 {
        self.step * n as i64
    }

    /// `θ_n`, after checking that its lowest denominator is `p_n`.
    pub fn theta(&self, n: u64) -> Result<Q, SequenceError> {
        let p = self.p(n);
        if p < 4 || p % 2 != 0 {
            return Err(SequenceError::BadLevel(p));
        }
        let theta = self.base + self.zeta / Q::from_integer(p);
        if *theta.denom() != p {
            return Err(SequenceError::NotAdmissible { n, theta: theta.to_string(), got: *theta.denom(), p });
        }
        Ok(theta)
    }
}

impl fmt::Display for AdmissibleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})/({}n)", self.base, self.zeta, self.step)
    }
}

impl FromStr for AdmissibleSequence {
    type Err = SequenceError;
    /// `"a/b"` with `ζ = 1`, `p_n = 4n`, or `"a/b,zeta,step"`.
    fn from_str(s: &str) -> Result<Self, SequenceError> {
        let parts: Vec<&str> = s.split(',').collect();
        match parts.as_slice() {
            [base] => Ok(Self::new(parse_rational(base)?, Q::from_integer(1), 4)),
            [base, zeta] => Ok(Self::new(parse_rational(base)?, parse_rational(zeta)?, 4)),
            [base, zeta, step] => {
                let step = step.trim().parse().map_err(|_| SequenceError::Parse(s.to_string()))?;
                Ok(Self::new(parse_rational(base)?, parse_rational(zeta)?, step))
            }
            _ => Err(SequenceError::Parse(s.to_string())),
        }
    }
}

/// `cos(2π x)` with `x` reduced exactly modulo 1 before the float step.
pub fn cos_two_pi(x: Q) -> f64 {
    let frac = x - x.floor();
    (2.0 * std::f64::consts::PI * (*frac.numer() as f64 / *frac.denom() as f64)).cos()
}
