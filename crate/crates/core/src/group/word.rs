use std::fmt;

use serde::Serialize;

/// A freely reduced word, stored as syllables `g^k` with `k != 0` and no two
/// adjacent syllables on the same generator.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Word {
    syllables: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word::power_of(g, 1)
    }

    pub fn power_of(g: usize, k: i64) -> Self {
        let mut w = Word::identity();
        w.push(g, k);
        w
    }

    pub fn from_syllables<T: IntoIterator<Item = (usize, i64)>>(syllables: T) -> Self {
        let mut w = Word::identity();
        for (g, k) in syllables {
            w.push(g, k);
        }
        w
    }

    /// Appends `g^k`, cancelling against the tail.
    pub fn push(&mut self, g: usize, k: i64) {
        if k == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((h, e)) if *h == g => {
                *e += k;
                if *e == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, k)),
        }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, counting `g^k` as `|k|` letters.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|(_, k)| k.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Self {
        Word {
            syllables: self.syllables.iter().rev().map(|&(g, k)| (g, -k)).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Self {
        let mut w = self.clone();
        for &(g, k) in &other.syllables {
            w.push(g, k);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self * other^-1`, the relator form of the equation `self = other`.
    pub fn equate(&self, other: &Word) -> Self {
        self.mul(&other.inverse())
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Word, b: &Word) -> Self {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// `E_g(w)`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.syllables
            .iter()
            .filter(|(h, _)| *h == g)
            .map(|(_, k)| k)
            .sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|(g, _)| *g).max()
    }

    /// Letters as `(generator, inverted)` pairs.
    pub fn letters(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.syllables
            .iter()
            .flat_map(|&(g, k)| std::iter::repeat_n((g, k < 0), k.unsigned_abs() as usize))
    }

    /// Substitutes a word for every generator.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &(g, k) in &self.syllables {
            out = out.mul(&images[g].pow(k));
        }
        out
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (i, &(g, k)) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = self.names.get(g).map(String::as_str).unwrap_or("?");
            if k == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_syllables([(0, 2), (1, 1), (1, -1), (0, -2), (2, 3)]);
        assert_eq!(w.syllables(), &[(2, 3)]);
        let a = Word::from_syllables([(0, 1), (1, 2)]);
        assert!(a.mul(&a.inverse()).is_identity());
        assert_eq!(a.pow(-2).syllables(), &[(1, -2), (0, -1), (1, -2), (0, -1)]);
    }

    #[test]
    fn exponent_sums_and_letters() {
        let w = Word::from_syllables([(0, 2), (1, -3), (0, 1)]);
        assert_eq!(w.exponent_sum(0), 3);
        assert_eq!(w.exponent_sum(1), -3);
        assert_eq!(w.length(), 6);
        assert_eq!(w.letters().filter(|(_, inv)| *inv).count(), 3);
    }

    #[test]
    fn substitution() {
        let x = Word::generator(0);
        let y = Word::generator(1);
        let w = x.mul(&y).mul(&x.inverse());
        let s = w.substitute(&[y.clone(), x.clone()]);
        assert_eq!(s, y.mul(&x).mul(&y.inverse()));
        assert!(Word::commutator(&x, &x).is_identity());
    }
}
