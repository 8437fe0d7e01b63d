use num_integer::Integer;
use serde::Serialize;

use super::p3::{GroupModel, P3Element, P3};
use super::NilError;
use crate::group::Word;

/// `u^m v^n x^rho h^c` in the central extension `Z -> G -> p3`, where
/// `v u = u v h^kappa`, `x u x^-1 = v`, `x v x^-1 = u^-1 v^-1 h^beta`,
/// `x^3 = h`, and `h` is central.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct NilElem {
    pub m: i64,
    pub n: i64,
    pub rho: u8,
    pub c: i64,
}

impl NilElem {
    pub const IDENTITY: NilElem = NilElem { m: 0, n: 0, rho: 0, c: 0 };
    pub const U: NilElem = NilElem { m: 1, n: 0, rho: 0, c: 0 };
    pub const V: NilElem = NilElem { m: 0, n: 1, rho: 0, c: 0 };
    pub const X: NilElem = NilElem { m: 0, n: 0, rho: 1, c: 0 };
    pub const H: NilElem = NilElem { m: 0, n: 0, rho: 0, c: 1 };

    pub fn is_central_power(&self) -> bool {
        self.m == 0 && self.n == 0 && self.rho == 0
    }
}

/// Cocycle data `(kappa, beta)` fixing the group law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NilModel {
    pub kappa: i64,
    pub beta: i64,
}

impl NilModel {
    /// Product in the Heisenberg part `<u, v, h>`, as `(m, n, c)`.
    fn heis_mul(&self, a: (i64, i64, i64), b: (i64, i64, i64)) -> (i64, i64, i64) {
        (a.0 + b.0, a.1 + b.1, a.2 + b.2 + self.kappa * a.1 * b.0)
    }

    /// Conjugation by `x` on the Heisenberg part.
    fn phi(&self, (m, n, c): (i64, i64, i64)) -> (i64, i64, i64) {
        (-n, m - n, c + self.beta * n + self.kappa * (n * (n - 1) / 2) - self.kappa * m * n)
    }

    fn phi_pow(&self, a: (i64, i64, i64), k: u8) -> (i64, i64, i64) {
        (0..k % 3).fold(a, |acc, _| self.phi(acc))
    }

    pub fn project(&self, g: &NilElem) -> P3Element {
        let x = P3Element { translation: [0, 1], rotation: 1 };
        P3.mul(&P3Element::translation([g.m, g.n]), &P3.pow(&x, g.rho as i64))
    }

    /// `z = x u^-1`
    pub fn z(&self) -> NilElem {
        self.mul(&NilElem::X, &self.inverse(&NilElem::U))
    }
}

impl GroupModel for NilModel {
    type Elem = NilElem;

    fn identity(&self) -> NilElem {
        NilElem::IDENTITY
    }

    fn mul(&self, a: &NilElem, b: &NilElem) -> NilElem {
        let moved = self.phi_pow((b.m, b.n, 0), a.rho);
        let (m, n, c) = self.heis_mul((a.m, a.n, a.c + b.c), moved);
        let r = a.rho + b.rho;
        NilElem { m, n, rho: r % 3, c: c + i64::from(r / 3) }
    }

    fn inverse(&self, a: &NilElem) -> NilElem {
        let back = (3 - a.rho) % 3;
        // (m, n, c)^-1 in the Heisenberg part
        let inv = (-a.m, -a.n, -a.c + self.kappa * a.m * a.n);
        let (m, n, c) = self.phi_pow(inv, back);
        NilElem { m, n, rho: back, c: c - i64::from(a.rho > 0) }
    }
}

/// Words in the generators `(x, z)` of `G = <x, z | x^3 = (x^{3e-1} z^-1)^3 = z^3>`.
pub fn g_relators(e: i64) -> Vec<Word> {
    let (x, z) = (0, 1);
    let a = Word::from_syllables([(x, 3 * e - 1), (z, -1)]);
    let x3 = Word::power_of(x, 3);
    vec![x3.equate(&a.pow(3)), a.pow(3).equate(&Word::power_of(z, 3))]
}

/// Solves for the cocycle making `z^3 = h` and `(x^{3e-1} z^-1)^3 = h`.
/// The central coordinate of any product is affine in `(kappa, beta)`, so
/// three evaluations determine it.
pub fn solve_model(e: i64) -> Result<NilModel, NilError> {
    let central = |model: NilModel| -> Result<[i64; 2], NilError> {
        let z = model.z();
        let a = model.mul(&model.pow(&NilElem::X, 3 * e - 1), &model.inverse(&z));
        let z3 = model.pow(&z, 3);
        let a3 = model.pow(&a, 3);
        if !z3.is_central_power() || !a3.is_central_power() {
            return Err(NilError::NormalFormIncomplete(format!(
                "z^3 = {z3:?} or A^3 = {a3:?} leaves the centre"
            )));
        }
        Ok([z3.c, a3.c])
    };
    let c00 = central(NilModel { kappa: 0, beta: 0 })?;
    let c10 = central(NilModel { kappa: 1, beta: 0 })?;
    let c01 = central(NilModel { kappa: 0, beta: 1 })?;
    // [dk_z db_z; dk_a db_a] [kappa; beta] = [1 - c00_z; 1 - c00_a]
    let (a11, a12, a21, a22) = (c10[0] - c00[0], c01[0] - c00[0], c10[1] - c00[1], c01[1] - c00[1]);
    let (r1, r2) = (1 - c00[0], 1 - c00[1]);
    let det = a11 * a22 - a12 * a21;
    if det == 0 {
        return Err(NilError::NormalFormIncomplete("cocycle system is singular".into()));
    }
    let (kn, bn) = (r1 * a22 - a12 * r2, a11 * r2 - a21 * r1);
    if !kn.is_multiple_of(&det) || !bn.is_multiple_of(&det) {
        return Err(NilError::NormalFormIncomplete(format!(
            "cocycle has no integral solution ({kn}/{det}, {bn}/{det})"
        )));
    }
    let model = NilModel { kappa: kn / det, beta: bn / det };
    validate_model(&model, e)?;
    Ok(model)
}

fn validate_model(model: &NilModel, e: i64) -> Result<(), NilError> {
    let fail = |what: &str| Err(NilError::NormalFormIncomplete(what.to_string()));
    let (u, v, x, h) = (NilElem::U, NilElem::V, NilElem::X, NilElem::H);
    let z = model.z();
    if model.pow(&x, 3) != h || model.pow(&z, 3) != h {
        return fail("x^3 or z^3 differs from h");
    }
    for r in g_relators(e) {
        if model.eval(&r, &[x, z]) != NilElem::IDENTITY {
            return fail("a defining relator of G does not vanish");
        }
    }
    if model.mul(&model.inverse(&z), &x) != u || model.mul(&x, &model.inverse(&z)) != v {
        return fail("u, v are not z^-1 x, x z^-1");
    }
    let gens = [u, v, x, h, z];
    for a in &gens {
        if !model.commutes(a, &h) {
            return fail("h is not central");
        }
        for b in &gens {
            for c in &gens {
                if model.mul(&model.mul(a, b), c) != model.mul(a, &model.mul(b, c)) {
                    return fail("multiplication is not associative on generators");
                }
            }
        }
    }
    Ok(())
}

/// `g t^k` in `pi = G x|_theta Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PiElem {
    pub g: NilElem,
    pub k: i64,
}

/// The automorphism `theta(x) = x^-1 z x^{2-3e}`, `theta(z) = x^-1` of `G`
/// together with its inverse `x -> z^-1`, `z -> z^-1 x z^{2-3e}`.
#[derive(Debug, Clone)]
pub struct PiModel {
    pub e: i64,
    pub g: NilModel,
    forward: [NilElem; 2],
    backward: [NilElem; 2],
}

impl PiModel {
    pub fn new(e: i64) -> Result<Self, NilError> {
        let g = solve_model(e)?;
        let (x, z) = (NilElem::X, g.z());
        let xi = g.inverse(&x);
        let zi = g.inverse(&z);
        let forward = [g.mul(&g.mul(&xi, &z), &g.pow(&x, 2 - 3 * e)), xi];
        let backward = [zi, g.mul(&g.mul(&zi, &x), &g.pow(&z, 2 - 3 * e))];
        let model = PiModel { e, g, forward, backward };
        model.validate()?;
        Ok(model)
    }

    fn apply_images(&self, images: &[NilElem; 2], a: &NilElem) -> NilElem {
        let g = &self.g;
        let [tx, tz] = images;
        let tu = g.mul(&g.inverse(tz), tx);
        let tv = g.mul(tx, &g.inverse(tz));
        let th = g.pow(tx, 3);
        let parts = [g.pow(&tu, a.m), g.pow(&tv, a.n), g.pow(tx, a.rho as i64), g.pow(&th, a.c)];
        parts.iter().fold(NilElem::IDENTITY, |acc, p| g.mul(&acc, p))
    }

    pub fn theta(&self, a: &NilElem) -> NilElem {
        self.apply_images(&self.forward, a)
    }

    pub fn theta_inverse(&self, a: &NilElem) -> NilElem {
        self.apply_images(&self.backward, a)
    }

    pub fn theta_pow(&self, a: &NilElem, k: i64) -> NilElem {
        let step = |b: &NilElem| if k >= 0 { self.theta(b) } else { self.theta_inverse(b) };
        (0..k.unsigned_abs()).fold(*a, |acc, _| step(&acc))
    }

    fn validate(&self) -> Result<(), NilError> {
        let g = &self.g;
        let (x, z) = (NilElem::X, g.z());
        let fail = |what: &str| Err(NilError::NormalFormIncomplete(what.to_string()));
        for r in g_relators(self.e) {
            if g.eval(&r, &self.forward) != NilElem::IDENTITY || g.eval(&r, &self.backward) != NilElem::IDENTITY {
                return fail("theta does not respect the relators of G");
            }
        }
        for s in [x, z] {
            if self.theta(&self.theta_inverse(&s)) != s || self.theta_inverse(&self.theta(&s)) != s {
                return fail("theta and its claimed inverse do not compose to the identity");
            }
        }
        // theta is a homomorphism, so it suffices that it matches on generators
        for (a, b) in [(x, z), (z, x), (NilElem::U, x)] {
            if self.theta(&g.mul(&a, &b)) != g.mul(&self.theta(&a), &self.theta(&b)) {
                return fail("theta is not multiplicative on normal forms");
            }
        }
        Ok(())
    }

    pub fn t(&self) -> PiElem {
        PiElem { g: NilElem::IDENTITY, k: 1 }
    }

    pub fn embed(&self, g: NilElem) -> PiElem {
        PiElem { g, k: 0 }
    }

    /// Images of the generators `t, x, z`.
    pub fn generators(&self) -> [PiElem; 3] {
        [self.t(), self.embed(NilElem::X), self.embed(self.g.z())]
    }
}

impl GroupModel for PiModel {
    type Elem = PiElem;

    fn identity(&self) -> PiElem {
        PiElem { g: NilElem::IDENTITY, k: 0 }
    }

    fn mul(&self, a: &PiElem, b: &PiElem) -> PiElem {
        PiElem { g: self.g.mul(&a.g, &self.theta_pow(&b.g, a.k)), k: a.k + b.k }
    }

    fn inverse(&self, a: &PiElem) -> PiElem {
        PiElem { g: self.theta_pow(&self.g.inverse(&a.g), -a.k), k: -a.k }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cocycle_solves_for_even_parameters() {
        for e in [-6, -4, -2, 0, 2, 4, 6] {
            let m = solve_model(e).unwrap();
            assert_eq!(m.beta, 0, "e = {e}");
        }
    }

    #[test]
    fn inverse_and_associativity_on_samples() {
        let g = solve_model(2).unwrap();
        let samples = [
            NilElem { m: 2, n: -1, rho: 1, c: 3 },
            NilElem { m: -3, n: 4, rho: 2, c: -1 },
            NilElem { m: 0, n: 5, rho: 0, c: 2 },
            NilElem { m: 1, n: 1, rho: 2, c: 0 },
        ];
        for a in &samples {
            assert_eq!(g.mul(a, &g.inverse(a)), NilElem::IDENTITY);
            assert_eq!(g.mul(&g.inverse(a), a), NilElem::IDENTITY);
            for b in &samples {
                for c in &samples {
                    assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let g = solve_model(0).unwrap();
        let a = NilElem { m: 2, n: -1, rho: 1, c: 3 };
        let b = NilElem { m: -3, n: 4, rho: 2, c: -1 };
        assert_eq!(g.project(&g.mul(&a, &b)), P3.mul(&g.project(&a), &g.project(&b)));
        assert_eq!(g.project(&NilElem::H), P3Element::IDENTITY);
    }

    #[test]
    fn semidirect_product() {
        let pi = PiModel::new(2).unwrap();
        let [t, x, _] = pi.generators();
        let lhs = pi.mul(&pi.mul(&t, &x), &pi.inverse(&t));
        assert_eq!(lhs.g, pi.theta(&NilElem::X));
        let w = pi.mul(&pi.pow(&t, 3), &x);
        assert_eq!(pi.mul(&w, &pi.inverse(&w)), pi.identity());
    }
}
