//! Finitely presented groups: words, a text format, exponent matrices,
//! Smith normal form, the minors test for `G/G' = Z`, and coset enumeration.

mod coset;
mod matrix;
mod presentation;
mod word;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use coset::{coset_index, group_order};
pub use matrix::{combinations, determinant, minor_gcd, minors_criterion, smith_normal_form, Matrix, SmithForm};
pub use presentation::Presentation;
pub use word::{Word, WordDisplay};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown generator '{name}'")]
    UnknownGenerator { line: usize, name: String },
    #[error("duplicate generator '{0}'")]
    DuplicateGenerator(String),
    #[error("invalid generator name '{0}'")]
    BadGeneratorName(String),
    #[error("relator uses generator {index} but only {count} exist")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("coset enumeration exceeded {limit} cosets")]
    CosetLimit { limit: usize },
}

/// `G/G' = Z^rank + Z/t_1 + ... + Z/t_k` with `t_1 | t_2 | ...`, all `t_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub rank: usize,
    #[serde(serialize_with = "crate::serde_bigints")]
    pub torsion: Vec<BigInt>,
}

impl Abelianization {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for Abelianization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Abelianization read off the Smith form of an exponent matrix with one
/// column per generator.
pub fn abelianization_of_matrix(m: &Matrix<BigInt>) -> Abelianization {
    let s = smith_normal_form(m);
    let nonzero = s.nonzero_count();
    Abelianization {
        rank: m.cols() - nonzero,
        torsion: s.diagonal.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
    }
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    abelianization_of_matrix(&p.exponent_matrix().to_big())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(text: &str) -> Abelianization {
        abelianization(&text.parse().unwrap())
    }

    #[test]
    fn examples() {
        assert!(ab("x y\nx^2 = y^3").is_infinite_cyclic());
        assert_eq!(ab("x y\nx^2 y^4").to_string(), "Z + Z/2");
        assert_eq!(ab("a b\na^2 ; b^3 ; (a b)^5").to_string(), "0");
        assert_eq!(ab("a b c\na^4 ; b^6").to_string(), "Z + Z/2 + Z/12");
        assert_eq!(ab("a b\na b a^-1 b^-1").to_string(), "Z^2");
    }
}
