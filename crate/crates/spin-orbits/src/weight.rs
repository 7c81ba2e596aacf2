//! Half-integer scalars and torus weights for `Spin(2n)`.
//!
//! All coordinates are stored as doubled integers so that integral and
//! half-integral weights live in one exact representation.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A half-integer, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Half(pub i64);

impl Half {
    pub const ZERO: Half = Half(0);

    pub fn from_int(v: i64) -> Half {
        Half(2 * v)
    }

    /// `num/2` as a half-integer; `num` must be odd for a genuine half.
    pub fn from_halves(num: i64) -> Half {
        Half(num)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value; panics on a genuine half-integer.
    pub fn to_int(self) -> i64 {
        assert!(self.is_integer(), "not an integer: {self}");
        self.0 / 2
    }

    pub fn abs(self) -> Half {
        Half(self.0.abs())
    }
}

impl std::ops::Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl std::ops::Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl std::ops::Mul<i64> for Half {
    type Output = Half;
    fn mul(self, rhs: i64) -> Half {
        Half(self.0 * rhs)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Half {
    type Err = Error;
    fn from_str(s: &str) -> Result<Half> {
        let s = s.trim();
        if let Some(num) = s.strip_suffix("/2") {
            let n: i64 = num
                .parse()
                .map_err(|_| Error::Invalid(format!("bad half-integer `{s}`")))?;
            Ok(Half(n))
        } else {
            let n: i64 = s
                .parse()
                .map_err(|_| Error::Invalid(format!("bad integer `{s}`")))?;
            Ok(Half::from_int(n))
        }
    }
}

/// Integrality class of a weight: all coordinates integral, or all in `Z + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    Integral,
    HalfIntegral,
}

/// A length-`n` vector of half-integers, all sharing one residue mod 1.
///
/// Highest weights of `Spin(2n)` are dominant weights in this sense:
/// `a_1 >= a_2 >= ... >= a_{n-1} >= |a_n|`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    coords: Vec<Half>,
}

impl Weight {
    /// Builds a weight from half-integer coordinates, checking that all
    /// coordinates share one parity.
    pub fn new(coords: Vec<Half>) -> Result<Weight> {
        if coords.is_empty() {
            return Err(Error::Invalid("empty weight".into()));
        }
        let parity = coords[0].0.rem_euclid(2);
        if coords.iter().any(|c| c.0.rem_euclid(2) != parity) {
            return Err(Error::Invalid(format!(
                "mixed parity coordinates: {coords:?}"
            )));
        }
        Ok(Weight { coords })
    }

    pub fn integral(coords: &[i64]) -> Weight {
        Weight {
            coords: coords.iter().map(|&c| Half::from_int(c)).collect(),
        }
    }

    /// Weight with all coordinates `nums[i]/2`; every entry must be odd.
    pub fn half_integral(nums: &[i64]) -> Weight {
        assert!(nums.iter().all(|&x| x % 2 != 0), "even numerator in {nums:?}");
        Weight {
            coords: nums.iter().map(|&c| Half(c)).collect(),
        }
    }

    pub fn zero(n: usize) -> Weight {
        Weight {
            coords: vec![Half::ZERO; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Half] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> Half {
        self.coords[i]
    }

    pub fn parity(&self) -> Parity {
        if self.coords[0].is_integer() {
            Parity::Integral
        } else {
            Parity::HalfIntegral
        }
    }

    /// `a_1 >= a_2 >= ... >= a_{n-1} >= |a_n|`.
    pub fn is_dominant(&self) -> bool {
        let n = self.rank();
        for i in 0..n.saturating_sub(2) {
            if self.coords[i] < self.coords[i + 1] {
                return false;
            }
        }
        if n >= 2 && self.coords[n - 2] < self.coords[n - 1].abs() {
            return false;
        }
        true
    }

    /// Sum of the coordinates.
    pub fn coord_sum(&self) -> Half {
        Half(self.coords.iter().map(|c| c.0).sum())
    }

    /// `sum |a_i|`.
    pub fn abs_sum(&self) -> Half {
        Half(self.coords.iter().map(|c| c.0.abs()).sum())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank());
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank());
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }

    /// Inner product, in units of 1/4 (doubled times doubled).
    pub fn dot4(&self, other: &Weight) -> i64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.0 * b.0)
            .sum()
    }

    /// Dominant representative under the Weyl group of `D_n`
    /// (signed permutations with an even number of sign changes).
    pub fn dominant_representative(&self) -> Weight {
        let mut abs: Vec<i64> = self.coords.iter().map(|c| c.0.abs()).collect();
        abs.sort_unstable_by(|a, b| b.cmp(a));
        let negs = self.coords.iter().filter(|c| c.0 < 0).count();
        let has_zero = abs.last().is_some_and(|&x| x == 0);
        if negs % 2 == 1 && !has_zero {
            let last = abs.len() - 1;
            abs[last] = -abs[last];
        }
        Weight {
            coords: abs.into_iter().map(Half).collect(),
        }
    }

    /// Applies a signed permutation: `result[i] = signs[i] * self[perm[i]]`.
    pub fn apply_signed_permutation(&self, perm: &[usize], signs: &[i64]) -> Weight {
        Weight {
            coords: (0..self.rank())
                .map(|i| self.coords[perm[i]] * signs[i])
                .collect(),
        }
    }

    fn cmp_lex(&self, other: &Weight) -> Ordering {
        self.coords.cmp(&other.coords)
    }

    pub fn lex_max<'a>(weights: impl Iterator<Item = &'a Weight>) -> Option<&'a Weight> {
        weights.max_by(|a, b| a.cmp_lex(b))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Weight> {
        let coords: Result<Vec<Half>> = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|p| p.parse())
            .collect();
        Weight::new(coords?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance() {
        assert!(Weight::integral(&[1, 1, 0, 0]).is_dominant());
        assert!(Weight::half_integral(&[1, 1, 1, -1]).is_dominant());
        assert!(!Weight::integral(&[0, 1, 0, 0]).is_dominant());
        // last coordinate may be negative
        assert!(Weight::integral(&[2, 1, 1, -1]).is_dominant());
        assert!(!Weight::integral(&[2, 1, 0, -1]).is_dominant());
    }

    #[test]
    fn parity_detection() {
        assert_eq!(Weight::integral(&[1, 0]).parity(), Parity::Integral);
        assert_eq!(
            Weight::half_integral(&[3, 1]).parity(),
            Parity::HalfIntegral
        );
        assert!(Weight::new(vec![Half(2), Half(1)]).is_err());
    }

    #[test]
    fn dominant_representative_even_sign_rule() {
        // one sign flip and no zero coordinate leaves a trailing minus
        let w = Weight::integral(&[-2, 1, 1, 1]);
        assert_eq!(w.dominant_representative(), Weight::integral(&[2, 1, 1, -1]));
        // a zero coordinate absorbs the sign
        let w = Weight::integral(&[-2, 1, 0, 1]);
        assert_eq!(w.dominant_representative(), Weight::integral(&[2, 1, 1, 0]));
        // two flips cancel
        let w = Weight::integral(&[-1, -1, 1, 1]);
        assert_eq!(w.dominant_representative(), Weight::integral(&[1, 1, 1, 1]));
    }

    #[test]
    fn parse_roundtrip() {
        let w: Weight = "3/2,1/2,1/2,-1/2".parse().unwrap();
        assert_eq!(w, Weight::half_integral(&[3, 1, 1, -1]));
        assert_eq!(w.to_string(), "(3/2,1/2,1/2,-1/2)");
    }
}
