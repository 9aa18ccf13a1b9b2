//! Text forms of values, shared by the CLI and the identity reports.
//!
//! * rational: `"num/den"` in lowest terms, `"0/1"` for zero;
//! * polynomial in one indeterminate: array of coefficients, index = degree;
//! * polynomial in `x` and `lambda`: rectangular matrix, row = `x`-degree,
//!   column = `lambda`-degree.
//!
//! JSON uses ordinary arrays of strings. CSV cells use the same nesting with
//! `;` as separator and no quotes, e.g. `[-1/12;0/1;1/1]` or
//! `[[-1/12;0/1;-1/6];[0/1;0/1;0/1];[1/1;0/1;0/1]]`.

use serde_json::{json, Value as Json};

use crate::algebra::{BiPoly, Rational, UniPoly, Var};
use crate::error::{Error, Result};
use crate::families::FamilyValue;

/// Shape of a serialized value, fixed by which indeterminates remain symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Rational,
    Poly(Var),
    BiPoly,
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Rational => "rational",
            Shape::Poly(Var::X) => "poly_x",
            Shape::Poly(Var::Lambda) => "poly_lambda",
            Shape::BiPoly => "bipoly",
        }
    }

    pub fn from_flags(x: bool, lambda: bool) -> Shape {
        match (x, lambda) {
            (false, false) => Shape::Rational,
            (true, false) => Shape::Poly(Var::X),
            (false, true) => Shape::Poly(Var::Lambda),
            (true, true) => Shape::BiPoly,
        }
    }

    /// Narrowest shape holding `p`.
    pub fn of(p: &BiPoly) -> Shape {
        let x = p.degree_x().unwrap_or(0) > 0;
        let l = p.degree_lambda().unwrap_or(0) > 0;
        Shape::from_flags(x, l)
    }
}

/// `p` laid out in the given shape, which must be able to hold it.
pub fn cells(p: &BiPoly, shape: Shape) -> Result<Cells> {
    let mismatch = || Error::InvalidArgument(format!("{p:?} does not fit shape {}", shape.name()));
    Ok(match shape {
        Shape::Rational => Cells::Scalar(p.as_constant().ok_or_else(mismatch)?),
        Shape::Poly(v) => Cells::Vector(p.as_uni(v).ok_or_else(mismatch)?.coeffs().to_vec()),
        Shape::BiPoly => Cells::Matrix(p.to_matrix()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cells {
    Scalar(Rational),
    Vector(Vec<Rational>),
    Matrix(Vec<Vec<Rational>>),
}

impl Cells {
    pub fn to_json(&self) -> Json {
        match self {
            Cells::Scalar(q) => json!(q.to_string()),
            Cells::Vector(v) => Json::Array(v.iter().map(|q| json!(q.to_string())).collect()),
            Cells::Matrix(m) => Json::Array(
                m.iter().map(|r| Json::Array(r.iter().map(|q| json!(q.to_string())).collect())).collect(),
            ),
        }
    }

    pub fn to_csv(&self) -> String {
        let vec = |v: &[Rational]| format!("[{}]", v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(";"));
        match self {
            Cells::Scalar(q) => q.to_string(),
            Cells::Vector(v) => vec(v),
            Cells::Matrix(m) => format!("[{}]", m.iter().map(|r| vec(r)).collect::<Vec<_>>().join(";")),
        }
    }

    pub fn from_json(j: &Json) -> Result<Cells> {
        let bad = || Error::Parse(format!("bad value {j}"));
        let scalar = |v: &Json| -> Result<Rational> { v.as_str().ok_or_else(bad)?.parse() };
        match j {
            Json::String(_) => Ok(Cells::Scalar(scalar(j)?)),
            Json::Array(items) if items.iter().all(Json::is_array) && !items.is_empty() => Ok(Cells::Matrix(
                items
                    .iter()
                    .map(|r| r.as_array().expect("checked").iter().map(scalar).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?,
            )),
            Json::Array(items) => Ok(Cells::Vector(items.iter().map(scalar).collect::<Result<_>>()?)),
            _ => Err(bad()),
        }
    }

    /// Inverse of [`Cells::to_csv`]. An empty `[]` parses as an empty vector.
    pub fn from_csv(s: &str) -> Result<Cells> {
        let s = s.trim();
        let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) else {
            return Ok(Cells::Scalar(s.parse()?));
        };
        if inner.is_empty() {
            return Ok(Cells::Vector(Vec::new()));
        }
        let parse_vec = |t: &str| -> Result<Vec<Rational>> {
            if t.is_empty() {
                Ok(Vec::new())
            } else {
                t.split(';').map(str::parse).collect()
            }
        };
        if inner.starts_with('[') {
            let body = inner
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad matrix {s:?}")))?;
            Ok(Cells::Matrix(body.split("];[").map(parse_vec).collect::<Result<_>>()?))
        } else {
            Ok(Cells::Vector(parse_vec(inner)?))
        }
    }

    /// Rebuilds the polynomial; `var` names the indeterminate of a vector.
    pub fn to_bipoly(&self, var: Var) -> BiPoly {
        match self {
            Cells::Scalar(q) => BiPoly::constant(q.clone()),
            Cells::Vector(v) => BiPoly::from(UniPoly::new(var, v.clone())),
            Cells::Matrix(m) => BiPoly::new(m.clone()),
        }
    }
}

/// A value in its narrowest JSON form.
pub fn value_json(v: &FamilyValue) -> Json {
    match v {
        FamilyValue::Number(q) => json!(q.to_string()),
        FamilyValue::Uni(p) => json!({
            "indeterminate": p.var().name(),
            "coeffs": Cells::Vector(p.coeffs().to_vec()).to_json(),
        }),
        FamilyValue::Bi(p) => json!({ "matrix": Cells::Matrix(p.to_matrix()).to_json() }),
    }
}

/// Parses a comma separated coefficient list such as `"0,1,-1/2"`.
pub fn parse_coeff_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn csv_forms() {
        let p = BiPoly::new(vec![vec![q("-1/12"), q("0"), q("-1/6")], vec![], vec![q("1")]]);
        let c = cells(&p, Shape::BiPoly).unwrap();
        assert_eq!(c.to_csv(), "[[-1/12;0/1;-1/6];[0/1;0/1;0/1];[1/1;0/1;0/1]]");
        assert_eq!(Cells::from_csv(&c.to_csv()).unwrap(), c);
        assert_eq!(Cells::from_json(&c.to_json()).unwrap(), c);
        assert_eq!(c.to_bipoly(Var::X), p);

        let v = cells(&BiPoly::x(), Shape::Poly(Var::X)).unwrap();
        assert_eq!(v.to_csv(), "[0/1;1/1]");
        assert_eq!(Cells::from_csv("[0/1;1/1]").unwrap(), v);
        assert_eq!(Cells::from_csv("-1/2").unwrap(), Cells::Scalar(q("-1/2")));
        assert_eq!(Cells::from_csv("[]").unwrap(), Cells::Vector(vec![]));
    }

    #[test]
    fn shape_checks() {
        assert!(cells(&BiPoly::x(), Shape::Rational).is_err());
        assert!(cells(&BiPoly::lambda(), Shape::Poly(Var::X)).is_err());
        assert_eq!(Shape::of(&BiPoly::lambda()), Shape::Poly(Var::Lambda));
        assert_eq!(cells(&BiPoly::zero(), Shape::Rational).unwrap().to_csv(), "0/1");
    }

    #[test]
    fn coeff_list() {
        assert_eq!(parse_coeff_list("0,1").unwrap(), vec![q("0"), q("1")]);
        assert!(parse_coeff_list("0,,1").is_err());
    }
}
