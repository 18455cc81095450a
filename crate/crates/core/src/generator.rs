//! Generator labels of U_q[gl(2/1)].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Z2-degree of a generator or a basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Self {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Degree of a product.
    pub fn plus(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }

    /// `(-1)^(self * other)`.
    pub fn sign_with(self, other: Parity) -> f64 {
        if self.is_odd() && other.is_odd() {
            -1.0
        } else {
            1.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    E11,
    E22,
    E33,
    E12,
    E21,
    E23,
    E32,
    E13,
    E31,
}

impl Generator {
    pub const ALL: [Generator; 9] = [
        Generator::E11,
        Generator::E22,
        Generator::E33,
        Generator::E12,
        Generator::E21,
        Generator::E23,
        Generator::E32,
        Generator::E13,
        Generator::E31,
    ];

    /// Weyl-Chevalley generators (`|i - j| <= 1`).
    pub const CHEVALLEY: [Generator; 7] = [
        Generator::E11,
        Generator::E22,
        Generator::E33,
        Generator::E12,
        Generator::E21,
        Generator::E23,
        Generator::E32,
    ];

    /// Generators of the even subalgebra U_q[gl(2) + gl(1)].
    pub const EVEN: [Generator; 5] = [
        Generator::E11,
        Generator::E22,
        Generator::E33,
        Generator::E12,
        Generator::E21,
    ];

    pub const CARTAN: [Generator; 3] = [Generator::E11, Generator::E22, Generator::E33];

    pub fn from_indices(i: usize, j: usize) -> Option<Generator> {
        use Generator::*;
        Some(match (i, j) {
            (1, 1) => E11,
            (2, 2) => E22,
            (3, 3) => E33,
            (1, 2) => E12,
            (2, 1) => E21,
            (2, 3) => E23,
            (3, 2) => E32,
            (1, 3) => E13,
            (3, 1) => E31,
            _ => return None,
        })
    }

    pub fn indices(self) -> (usize, usize) {
        use Generator::*;
        match self {
            E11 => (1, 1),
            E22 => (2, 2),
            E33 => (3, 3),
            E12 => (1, 2),
            E21 => (2, 1),
            E23 => (2, 3),
            E32 => (3, 2),
            E13 => (1, 3),
            E31 => (3, 1),
        }
    }

    /// Odd iff exactly one index equals 3.
    pub fn parity(self) -> Parity {
        let (i, j) = self.indices();
        Parity::from_bit(((i == 3) as u8) + ((j == 3) as u8))
    }

    pub fn is_chevalley(self) -> bool {
        let (i, j) = self.indices();
        i.abs_diff(j) <= 1
    }

    pub fn label(self) -> &'static str {
        use Generator::*;
        match self {
            E11 => "E11",
            E22 => "E22",
            E33 => "E33",
            E12 => "E12",
            E21 => "E21",
            E23 => "E23",
            E32 => "E32",
            E13 => "E13",
            E31 => "E31",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        Generator::ALL
            .into_iter()
            .find(|g| g.label() == t)
            .ok_or_else(|| Error::Domain(format!("unknown generator label '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parities() {
        for g in Generator::ALL {
            let odd = matches!(
                g,
                Generator::E13 | Generator::E23 | Generator::E31 | Generator::E32
            );
            assert_eq!(g.parity().is_odd(), odd, "{g}");
        }
    }

    #[test]
    fn labels_round_trip() {
        for g in Generator::ALL {
            assert_eq!(g.label().parse::<Generator>().unwrap(), g);
            let (i, j) = g.indices();
            assert_eq!(Generator::from_indices(i, j), Some(g));
        }
        assert!("E44".parse::<Generator>().is_err());
        assert!(!Generator::E13.is_chevalley());
    }
}
