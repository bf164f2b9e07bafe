//! Exact positive rationals for `ε`. All `(1 + ε)` comparisons go through
//! integer cross-multiplication.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ratio {
    num: u64,
    den: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::param("ratio with zero denominator"));
        }
        let g = gcd(num, den).max(1);
        Ok(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn halved(self) -> Ratio {
        Ratio::new(self.num, self.den * 2).expect("nonzero denominator")
    }

    pub fn is_open_unit(self) -> bool {
        self.num > 0 && self.num < self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `a ≤ ε·b`.
    pub fn scaled_ge(self, a: u64, b: u64) -> bool {
        (a as u128) * (self.den as u128) <= (b as u128) * (self.num as u128)
    }

    /// `(1 + ε)·a < b`.
    pub fn stretched_lt(self, a: u64, b: u64) -> bool {
        (a as u128) * ((self.den + self.num) as u128) < (b as u128) * (self.den as u128)
    }

    /// `a ≤ (1 + ε)·b`.
    pub fn within_stretch(self, a: u64, b: u64) -> bool {
        (a as u128) * (self.den as u128) <= (b as u128) * ((self.den + self.num) as u128)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// Accepts `p/q`, an integer, or a plain decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::param(format!("cannot parse ratio {s:?}"));
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q = q.trim().parse().map_err(|_| bad())?;
            return Ratio::new(p, q);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let den = 10u64.pow(frac.len() as u32);
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            return Ratio::new(int * den + frac, den);
        }
        Ratio::new(s.parse().map_err(|_| bad())?, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!("1/4".parse::<Ratio>().unwrap(), Ratio::new(1, 4).unwrap());
        assert_eq!("0.25".parse::<Ratio>().unwrap(), Ratio::new(1, 4).unwrap());
        assert_eq!("2/8".parse::<Ratio>().unwrap().to_string(), "1/4");
        assert!("1/0".parse::<Ratio>().is_err());
        assert!("x".parse::<Ratio>().is_err());
    }

    #[test]
    fn stretch_comparisons_are_exact() {
        let e = Ratio::new(1, 4).unwrap();
        assert!(e.within_stretch(125, 100));
        assert!(!e.within_stretch(126, 100));
        assert!(e.stretched_lt(79, 100)); // 98.75 < 100
        assert!(!e.stretched_lt(80, 100)); // 100 < 100 fails
        assert!(e.scaled_ge(25, 100));
        assert!(!e.scaled_ge(26, 100));
    }
}
