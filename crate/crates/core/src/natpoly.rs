//! Polynomials with natural-number coefficients, used for time bounds,
//! multiplicity bounds and product ranges.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// `c0 + c1 n + c2 n^2 + ...`, coefficients stored low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NatPoly {
    coeffs: Vec<u64>,
}

impl NatPoly {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        NatPoly { coeffs }
    }

    pub fn constant(c: u64) -> Self {
        NatPoly::new(vec![c])
    }

    /// The identity polynomial `n`.
    pub fn n() -> Self {
        NatPoly::new(vec![0, 1])
    }

    /// `n^c + c`, the multiplicity bounds of the polynomial target classes.
    pub fn power_plus(c: u32) -> Self {
        let mut coeffs = vec![0; c as usize + 1];
        coeffs[0] += c as u64;
        coeffs[c as usize] += 1;
        NatPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Evaluates at `n`, saturating at `u64::MAX`.
    pub fn eval(&self, n: u64) -> u64 {
        let mut acc: u64 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.saturating_mul(n).saturating_add(c);
        }
        acc
    }

    /// If this is `n^c + c` for some `c >= 1`, returns `c`.
    pub fn as_power_plus(&self) -> Option<u32> {
        (1..=16).find(|&c| *self == NatPoly::power_plus(c))
    }
}

impl fmt::Display for NatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "n".to_string(),
                (1, c) => format!("{c}n"),
                (k, 1) => format!("n^{k}"),
                (k, c) => format!("{c}n^{k}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

impl FromStr for NatPoly {
    type Err = Error;

    /// Accepts sums of terms such as `3`, `n`, `2n^3`, `2*n^2`, e.g. `n^2+2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = || Error::Parse(format!("malformed polynomial {s:?}"));
        let mut coeffs: Vec<u64> = Vec::new();
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, power) = match term.find('n') {
                None => (term.parse::<u64>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let head = term[..pos].trim_end_matches('*');
                    let coef = if head.is_empty() {
                        1
                    } else {
                        head.parse::<u64>().map_err(|_| bad())?
                    };
                    let tail = &term[pos + 1..];
                    let power = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<usize>()
                            .map_err(|_| bad())?
                    };
                    (coef, power)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            coeffs[power] += coef;
        }
        Ok(NatPoly::new(coeffs))
    }
}

impl Serialize for NatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_plus_values() {
        let r = NatPoly::power_plus(2);
        assert_eq!(r.eval(0), 2);
        assert_eq!(r.eval(3), 11);
        assert_eq!(r.as_power_plus(), Some(2));
        assert_eq!(NatPoly::power_plus(1).eval(1), 2);
    }

    #[test]
    fn parse_and_display() {
        let p: NatPoly = "n^2 + 2".parse().unwrap();
        assert_eq!(p, NatPoly::new(vec![2, 0, 1]));
        assert_eq!(p.to_string(), "n^2+2");
        let q: NatPoly = "3*n+1+n".parse().unwrap();
        assert_eq!(q.coeffs(), &[1, 4]);
        assert_eq!("0".parse::<NatPoly>().unwrap().eval(9), 0);
        assert!("n^".parse::<NatPoly>().is_err());
        assert!("2x".parse::<NatPoly>().is_err());
    }

    #[test]
    fn eval_saturates() {
        let p = NatPoly::new(vec![0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(p.eval(1 << 20), u64::MAX);
    }
}
