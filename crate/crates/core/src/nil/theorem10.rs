use serde::Serialize;

use super::model::{NilElem, NilModel, PiElem, PiModel};
use super::p3::{GroupModel, P3Element, P3};
use super::NilError;
use crate::group::{abelianization, abelianization_of_matrix, smith_normal_form, Abelianization, Matrix, Presentation, Word};

fn require_even(e: i64) -> Result<(), NilError> {
    if e % 2 != 0 {
        return Err(NilError::OddParameter(e));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilKnotGroup {
    pub e: i64,
    pub presentation: Presentation,
}

/// `<t, x, z | x^3 = (x^{3e-1} z^-1)^3 = z^3, t x t^-1 = x^-1 z x^{2-3e}, t z t^-1 = x^-1>`
pub fn build_theorem10_group(e: i64) -> Result<NilKnotGroup, NilError> {
    require_even(e)?;
    let (t, x, z) = (0, 1, 2);
    let a = Word::from_syllables([(x, 3 * e - 1), (z, -1)]);
    let conj = |g: usize| Word::from_syllables([(t, 1), (g, 1), (t, -1)]);
    let rels = vec![
        Word::power_of(x, 3).equate(&a.pow(3)),
        a.pow(3).equate(&Word::power_of(z, 3)),
        conj(x).equate(&Word::from_syllables([(x, -1), (z, 1), (x, 2 - 3 * e)])),
        conj(z).equate(&Word::power_of(x, -1)),
    ];
    let presentation = Presentation::with_names(&["t", "x", "z"], rels).expect("fixed names");
    Ok(NilKnotGroup { e, presentation })
}

/// Images of `x` and `z` in `G / <h> = p3`, with `u = z^-1 x`, `v = x z^-1`
/// sent to the basis translations.
pub fn p3_quotient_images(e: i64) -> Result<(P3Element, P3Element), NilError> {
    require_even(e)?;
    let xbar = P3Element { translation: [0, 1], rotation: 1 };
    let zbar = P3Element { translation: [0, 0], rotation: 1 };
    let fail = |what: &str| Err(NilError::ModelValidationFailed(what.to_string()));
    for r in super::model::g_relators(e) {
        if P3.eval(&r, &[xbar, zbar]) != P3Element::IDENTITY {
            return fail("a relator of G survives in p3");
        }
    }
    if P3.pow(&xbar, 3) != P3Element::IDENTITY {
        return fail("x^3 is not trivial in p3");
    }
    let u = P3.mul(&P3.inverse(&zbar), &xbar);
    let v = P3.mul(&xbar, &P3.inverse(&zbar));
    if u != P3Element::translation([1, 0]) || v != P3Element::translation([0, 1]) {
        return fail("u, v are not the basis translations");
    }
    let rotations: Vec<u8> = (0..3).map(|k| P3.pow(&xbar, k).rotation).collect();
    if rotations != [0, 1, 2] {
        return fail("powers of x miss a rotation class");
    }
    Ok((xbar, zbar))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightOrbitReport {
    /// Action of the meridian on the translation lattice, columns the images
    /// of `u` and `v`.
    pub theta_matrix: [[i64; 2]; 2],
    pub smith_of_theta_minus_identity: Vec<i64>,
    pub cokernel: Abelianization,
}

fn translation_of(model: &NilModel, g: &NilElem) -> Result<[i64; 2], NilError> {
    let p = model.project(g);
    if !p.is_translation() {
        return Err(NilError::ModelValidationFailed(format!("{p:?} is not a translation")));
    }
    Ok(p.translation)
}

pub fn weight_orbit_report(e: i64) -> Result<WeightOrbitReport, NilError> {
    require_even(e)?;
    p3_quotient_images(e)?;
    let pi = PiModel::new(e)?;
    let tu = translation_of(&pi.g, &pi.theta(&NilElem::U))?;
    let tv = translation_of(&pi.g, &pi.theta(&NilElem::V))?;
    let theta = [[tu[0], tv[0]], [tu[1], tv[1]]];
    let det = theta[0][0] * theta[1][1] - theta[0][1] * theta[1][0];
    let square = [
        [theta[0][0] * theta[0][0] + theta[0][1] * theta[1][0], theta[0][0] * theta[0][1] + theta[0][1] * theta[1][1]],
        [theta[1][0] * theta[0][0] + theta[1][1] * theta[1][0], theta[1][0] * theta[0][1] + theta[1][1] * theta[1][1]],
    ];
    if det != -1 || square != [[1, 0], [0, 1]] {
        return Err(NilError::ModelValidationFailed(format!("unexpected action {theta:?}")));
    }
    let minus = Matrix::from_rows(
        vec![vec![theta[0][0] - 1, theta[0][1]], vec![theta[1][0], theta[1][1] - 1]],
        2,
    );
    let smith = smith_normal_form(&minus).diagonal;
    // the image is spanned by the columns, so they become relation rows
    let cokernel = abelianization_of_matrix(&minus.transpose().to_big());
    Ok(WeightOrbitReport { theta_matrix: theta, smith_of_theta_minus_identity: smith, cokernel })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralityReport {
    pub element: String,
    pub commutes_with_t: bool,
    pub commutes_with_x: bool,
    pub commutes_with_z: bool,
    pub central: bool,
}

/// Which of `t, x, z` commute with `w` in the normal-form model of the group.
pub fn centrality_of(e: i64, w: &Word) -> Result<CentralityReport, NilError> {
    require_even(e)?;
    let group = build_theorem10_group(e)?;
    let pi = PiModel::new(e)?;
    let gens = pi.generators();
    for r in group.presentation.relators() {
        if pi.eval(r, &gens) != pi.identity() {
            return Err(NilError::NormalFormIncomplete("a relator does not vanish in the model".into()));
        }
    }
    let elem: PiElem = pi.eval(w, &gens);
    let c = [0, 1, 2].map(|i| pi.commutes(&elem, &gens[i]));
    Ok(CentralityReport {
        element: group.presentation.format_word(w),
        commutes_with_t: c[0],
        commutes_with_x: c[1],
        commutes_with_z: c[2],
        central: c.iter().all(|&b| b),
    })
}

/// `(t^3 x)^2`
pub fn central_candidate() -> Word {
    Word::from_syllables([(0, 3), (1, 1)]).pow(2)
}

/// `(t^3 z x)^2`, which the normal-form model finds central for every even `e`.
pub fn alternative_central_candidate() -> Word {
    Word::from_syllables([(0, 3), (2, 1), (1, 1)]).pow(2)
}

/// Whether `(t^3 x)^2` is central.
pub fn centrality_check(e: i64) -> Result<bool, NilError> {
    Ok(centrality_of(e, &central_candidate())?.central)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem10Report {
    pub e: i64,
    pub presentation: String,
    pub abelianization: Abelianization,
    pub theta: [[i64; 2]; 2],
    #[serde(rename = "smith_of_theta_minus_I")]
    pub smith_of_theta_minus_identity: Vec<i64>,
    pub cokernel: Abelianization,
    pub centrality: CentralityReport,
    pub first_power: CentralityReport,
    pub alternative: CentralityReport,
    pub cocycle: NilModel,
}

pub fn theorem10_report(e: i64) -> Result<Theorem10Report, NilError> {
    let group = build_theorem10_group(e)?;
    let orbit = weight_orbit_report(e)?;
    let centrality = centrality_of(e, &central_candidate())?;
    let first_power = centrality_of(e, &Word::from_syllables([(0, 3), (1, 1)]))?;
    Ok(Theorem10Report {
        e,
        presentation: group.presentation.to_string(),
        abelianization: abelianization(&group.presentation),
        theta: orbit.theta_matrix,
        smith_of_theta_minus_identity: orbit.smith_of_theta_minus_identity,
        cokernel: orbit.cokernel,
        centrality,
        first_power,
        alternative: centrality_of(e, &alternative_central_candidate())?,
        cocycle: PiModel::new(e)?.g,
    })
}
