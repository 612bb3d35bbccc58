//! Free-algebra elements, the oriented rewrite systems of `U_q(iso2)` and
//! `Û_q(m2)`, their normal forms, and overlap checking.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalars::Scalar;

pub mod cartan;
pub mod iso2;
pub mod m2;
pub mod rewrite;

pub use cartan::CartanFraction;
pub use iso2::{
    broken_iso2_system, casimir_from_definition, casimir_pbw, iso2_system, nf_iso2, t1_prime,
    Iso2Element, Iso2Gen, Iso2Monomial,
};
pub use m2::{check_localization, m2hat_system, nf_m2hat, M2Element, M2Gen};
pub use rewrite::{Letter, Overlap, RewriteSystem, Rule, WordComb, DEFAULT_MAX_WORD_LEN};

/// Which algebra an element or expression lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Iso2,
    M2,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::Iso2 => "iso2",
            Algebra::M2 => "m2",
        })
    }
}

/// An element of either algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Element {
    Iso2(Iso2Element),
    M2(M2Element),
}

impl Element {
    pub fn algebra(&self) -> Algebra {
        match self {
            Element::Iso2(_) => Algebra::Iso2,
            Element::M2(_) => Algebra::M2,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Iso2(x) => x.is_zero(),
            Element::M2(x) => x.is_zero(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Iso2(x) => x.fmt(f),
            Element::M2(x) => x.fmt(f),
        }
    }
}

/// Product in the common algebra of both operands.
pub fn multiply(x: &Element, y: &Element) -> Result<Element> {
    match (x, y) {
        (Element::Iso2(a), Element::Iso2(b)) => Ok(Element::Iso2(a * b)),
        (Element::M2(a), Element::M2(b)) => Ok(Element::M2(a * b)),
        _ => Err(Error::MixedAlgebra(format!(
            "cannot multiply {} by {}",
            x.algebra(),
            y.algebra()
        ))),
    }
}

/// Write `sum c_i label_i` in a form the expression parser accepts.
pub(crate) fn format_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Scalar)>,
) -> fmt::Result {
    let mut first = true;
    for (label, c) in terms {
        let (neg, coeff) = split_sign(c);
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let is_unit_label = label == "1" || label.is_empty();
        match (coeff.as_deref(), is_unit_label) {
            (None, true) => f.write_str("1")?,
            (None, false) => f.write_str(&label)?,
            (Some(cs), true) => f.write_str(cs)?,
            (Some(cs), false) => write!(f, "{cs} {label}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Split a leading minus sign off a coefficient; `None` stands for a unit coefficient.
fn split_sign(c: &Scalar) -> (bool, Option<String>) {
    if c.is_one() {
        return (false, None);
    }
    if (-c).is_one() {
        return (true, None);
    }
    let simple = c.is_polynomial() && c.numer().len() == 1;
    let s = c.to_string();
    if simple {
        if let Some(rest) = s.strip_prefix('-') {
            return (true, Some(rest.to_string()));
        }
        return (false, Some(s));
    }
    (false, Some(format!("({s})")))
}
