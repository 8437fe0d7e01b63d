use serde::Serialize;

use crate::group::Word;

/// A group given by a multiplication rule, for evaluating words.
pub trait GroupModel {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let mut base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn eval(&self, w: &Word, images: &[Self::Elem]) -> Self::Elem {
        w.syllables()
            .iter()
            .fold(self.identity(), |acc, &(g, k)| self.mul(&acc, &self.pow(&images[g], k)))
    }

    fn commutes(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }
}

/// Element `(s, rho)` of the wallpaper group `p3 = Z^2 x| Z/3`: the
/// translation `s` in the basis `(u, v)` after the rotation `R^rho`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct P3Element {
    pub translation: [i64; 2],
    pub rotation: u8,
}

/// `R = [[0, -1], [1, -1]]`, of order 3.
pub fn rotate(s: [i64; 2], times: u8) -> [i64; 2] {
    (0..times % 3).fold(s, |[a, b], _| [-b, a - b])
}

impl P3Element {
    pub const IDENTITY: P3Element = P3Element { translation: [0, 0], rotation: 0 };

    pub fn translation(s: [i64; 2]) -> Self {
        P3Element { translation: s, rotation: 0 }
    }

    pub fn is_translation(&self) -> bool {
        self.rotation == 0
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct P3;

impl GroupModel for P3 {
    type Elem = P3Element;

    fn identity(&self) -> P3Element {
        P3Element::IDENTITY
    }

    fn mul(&self, a: &P3Element, b: &P3Element) -> P3Element {
        let r = rotate(b.translation, a.rotation);
        P3Element {
            translation: [a.translation[0] + r[0], a.translation[1] + r[1]],
            rotation: (a.rotation + b.rotation) % 3,
        }
    }

    fn inverse(&self, a: &P3Element) -> P3Element {
        let back = (3 - a.rotation) % 3;
        let s = rotate(a.translation, back);
        P3Element { translation: [-s[0], -s[1]], rotation: back }
    }
}
