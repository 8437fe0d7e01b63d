pub mod exact;
pub mod group;
pub mod nil;
pub mod orbifold;
pub mod seifert;
pub mod weight;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;

pub type Rational = Ratio<i64>;
pub type BigRational = Ratio<BigInt>;
pub type IntMatrix = group::Matrix<BigInt>;
pub type Poly = seifert::LaurentPoly<i64>;

pub(crate) fn serde_rational<S, I>(x: &Ratio<I>, s: S) -> Result<S::Ok, S::Error>
where
    S: serde::Serializer,
    I: exact::ExactInt,
{
    s.serialize_str(&exact::format_rational(x))
}

/// JSON numbers where they fit in `i64`, decimal strings otherwise.
pub(crate) fn serde_bigints<S: serde::Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        match x.to_i64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}
