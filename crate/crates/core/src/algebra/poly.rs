//! Dense polynomials over [`Rational`] in the indeterminates `x` and `lambda`.
//!
//! Both types are canonical at all times (no trailing zero coefficients), so
//! derived equality is exact polynomial equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Lambda,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Lambda,
            Var::Lambda => Var::X,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Lambda => "lambda",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var> {
        match s {
            "x" => Ok(Var::X),
            "lambda" | "λ" | "l" => Ok(Var::Lambda),
            other => Err(Error::UnknownIndeterminate(other.to_string())),
        }
    }
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(Rational::is_zero) {
        v.pop();
    }
}

/// Polynomial in a single tagged indeterminate; `coeffs[k]` multiplies `var^k`.
///
/// Constants carry a tag too, but two constants compare equal regardless of
/// it, and arithmetic between a constant and a polynomial adopts the
/// polynomial's tag.
#[derive(Clone)]
pub struct UniPoly {
    var: Var,
    coeffs: Vec<Rational>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (self.var == other.var || self.coeffs.len() <= 1)
    }
}

impl Eq for UniPoly {}

impl UniPoly {
    pub fn new(var: Var, mut coeffs: Vec<Rational>) -> Self {
        trim(&mut coeffs);
        UniPoly { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        UniPoly { var, coeffs: Vec::new() }
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        UniPoly::new(var, vec![c])
    }

    pub fn monomial(var: Var, k: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(var, coeffs)
    }

    /// The polynomial `var`.
    pub fn var_poly(var: Var) -> Self {
        UniPoly::monomial(var, 1, Rational::one())
    }

    pub fn from_ints(var: Var, cs: &[i64]) -> Self {
        UniPoly::new(var, cs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Exact substitution `var := value`; the tag must match.
    pub fn substitute(&self, var: Var, value: &Rational) -> Result<Rational> {
        if var != self.var && self.coeffs.len() > 1 {
            return Err(Error::IndeterminateMismatch {
                have: self.var.to_string(),
                want: var.to_string(),
            });
        }
        Ok(self.eval(value))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniPoly::new(self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(a*var + b)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let lin = UniPoly::new(self.var, vec![b.clone(), a.clone()]);
        let mut acc = UniPoly::zero(self.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(self.var, c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.var,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Rational::from(k))
                .collect(),
        )
    }

    fn joint_var(&self, other: &UniPoly) -> Var {
        if self.coeffs.len() <= 1 {
            other.var
        } else if other.coeffs.len() <= 1 || other.var == self.var {
            self.var
        } else {
            panic!("mixing UniPoly in {} with UniPoly in {}", self.var, other.var)
        }
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c}){}", self.var),
                _ => format!("({c}){}^{k}", self.var),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let var = self.joint_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(var, (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let var = self.joint_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(var, (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let var = self.joint_var(rhs);
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(var);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(var, out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.var, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Polynomial in `x` and `lambda`; `rows[i][j]` multiplies `x^i lambda^j`.
///
/// Each row is trimmed and trailing empty rows are removed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    rows: Vec<Vec<Rational>>,
}

impl BiPoly {
    pub fn new(mut rows: Vec<Vec<Rational>>) -> Self {
        for r in rows.iter_mut() {
            trim(r);
        }
        while rows.last().is_some_and(Vec::is_empty) {
            rows.pop();
        }
        BiPoly { rows }
    }

    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        BiPoly::new(vec![vec![c]])
    }

    pub fn x() -> Self {
        BiPoly::new(vec![vec![], vec![Rational::one()]])
    }

    pub fn lambda() -> Self {
        BiPoly::new(vec![vec![Rational::zero(), Rational::one()]])
    }

    /// Builds from `(x_degree, lambda_degree, integer coefficient)` triples.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let mut p = BiPoly::zero();
        for &(i, j, c) in terms {
            p = &p + &BiPoly::monomial(i, j, Rational::from(c));
        }
        p
    }

    pub fn monomial(i: usize, j: usize, c: Rational) -> Self {
        let mut rows = vec![Vec::new(); i + 1];
        let mut row = vec![Rational::zero(); j + 1];
        row[j] = c;
        rows[i] = row;
        BiPoly::new(rows)
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.rows.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn degree_lambda(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.len().checked_sub(1)).max()
    }

    /// Rectangular `(degree_x + 1) x (degree_lambda + 1)` coefficient matrix
    /// padded with zeros; empty for the zero polynomial.
    pub fn to_matrix(&self) -> Vec<Vec<Rational>> {
        let cols = self.degree_lambda().map_or(0, |d| d + 1);
        self.rows
            .iter()
            .map(|r| (0..cols).map(|j| r.get(j).cloned().unwrap_or_default()).collect())
            .collect()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.rows.as_slice() {
            [] => Some(Rational::zero()),
            [r] if r.len() <= 1 => Some(r.first().cloned().unwrap_or_default()),
            _ => None,
        }
    }

    /// `Some` iff the polynomial does not involve `var.other()`.
    pub fn as_uni(&self, var: Var) -> Option<UniPoly> {
        match var {
            Var::X => {
                if self.rows.iter().all(|r| r.len() <= 1) {
                    Some(UniPoly::new(
                        Var::X,
                        self.rows.iter().map(|r| r.first().cloned().unwrap_or_default()).collect(),
                    ))
                } else {
                    None
                }
            }
            Var::Lambda => match self.rows.as_slice() {
                [] => Some(UniPoly::zero(Var::Lambda)),
                [r] => Some(UniPoly::new(Var::Lambda, r.clone())),
                _ => None,
            },
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BiPoly::new(self.rows.iter().map(|r| r.iter().map(|a| a * c).collect()).collect())
    }

    pub fn eval(&self, x: &Rational, lambda: &Rational) -> Rational {
        self.substitute(Var::X, x).eval(lambda)
    }

    /// Exact substitution `var := value`, leaving a polynomial in the other
    /// indeterminate.
    pub fn substitute(&self, var: Var, value: &Rational) -> UniPoly {
        match var {
            Var::X => {
                let mut acc = UniPoly::zero(Var::Lambda);
                for r in self.rows.iter().rev() {
                    acc = &acc.scale(value) + &UniPoly::new(Var::Lambda, r.clone());
                }
                UniPoly::new(Var::Lambda, acc.coeffs)
            }
            Var::Lambda => UniPoly::new(
                Var::X,
                self.rows.iter().map(|r| UniPoly::new(Var::Lambda, r.clone()).eval(value)).collect(),
            ),
        }
    }

    /// Substitutes `var := q` where `q` is a polynomial in either indeterminate.
    pub fn compose(&self, var: Var, q: &BiPoly) -> BiPoly {
        // Horner in `var`, with the coefficients being polynomials in the other one.
        let slices: Vec<BiPoly> = match var {
            Var::X => self.rows.iter().map(|r| BiPoly::new(vec![r.clone()])).collect(),
            Var::Lambda => {
                let cols = self.degree_lambda().map_or(0, |d| d + 1);
                (0..cols)
                    .map(|j| BiPoly::new(self.rows.iter().map(|r| vec![r.get(j).cloned().unwrap_or_default()]).collect()))
                    .collect()
            }
        };
        let mut acc = BiPoly::zero();
        for s in slices.iter().rev() {
            acc = &(&acc * q) + s;
        }
        acc
    }

    /// `p(a*x + b, lambda)`.
    pub fn compose_affine_x(&self, a: &Rational, b: &Rational) -> BiPoly {
        let lin = &BiPoly::x().scale(a) + &BiPoly::constant(b.clone());
        self.compose(Var::X, &lin)
    }
}

impl From<UniPoly> for BiPoly {
    fn from(p: UniPoly) -> Self {
        match p.var {
            Var::X => BiPoly::new(p.coeffs.into_iter().map(|c| vec![c]).collect()),
            Var::Lambda => BiPoly::new(vec![p.coeffs]),
        }
    }
}

impl From<&UniPoly> for BiPoly {
    fn from(p: &UniPoly) -> Self {
        BiPoly::from(p.clone())
    }
}

impl From<Rational> for BiPoly {
    fn from(c: Rational) -> Self {
        BiPoly::constant(c)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut t = format!("({c})");
                if i > 0 {
                    t += &format!("x^{i}");
                }
                if j > 0 {
                    t += &format!("l^{j}");
                }
                terms.push(t);
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

fn zip_rows(a: &BiPoly, b: &BiPoly, op: impl Fn(Rational, Rational) -> Rational) -> BiPoly {
    let n = a.rows.len().max(b.rows.len());
    let rows = (0..n)
        .map(|i| {
            let ra = a.rows.get(i).map(Vec::as_slice).unwrap_or(&[]);
            let rb = b.rows.get(i).map(Vec::as_slice).unwrap_or(&[]);
            let m = ra.len().max(rb.len());
            (0..m)
                .map(|j| {
                    op(
                        ra.get(j).cloned().unwrap_or_default(),
                        rb.get(j).cloned().unwrap_or_default(),
                    )
                })
                .collect()
        })
        .collect();
    BiPoly::new(rows)
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        zip_rows(self, rhs, |a, b| a + b)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        zip_rows(self, rhs, |a, b| a - b)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let cols = self.degree_lambda().unwrap_or(0) + rhs.degree_lambda().unwrap_or(0) + 1;
        let mut out = vec![vec![Rational::zero(); cols]; self.rows.len() + rhs.rows.len() - 1];
        for (i1, r1) in self.rows.iter().enumerate() {
            for (j1, a) in r1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (i2, r2) in rhs.rows.iter().enumerate() {
                    let row = &mut out[i1 + i2];
                    for (j2, b) in r2.iter().enumerate() {
                        if !b.is_zero() {
                            row[j1 + j2] += &(a * b);
                        }
                    }
                }
            }
        }
        BiPoly::new(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Rational::one())
    }
}

impl std::iter::Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_trailing_zeros() {
        let p = UniPoly::new(Var::X, vec![q("1"), q("0"), q("0")]);
        assert_eq!(p.coeffs().len(), 1);
        assert!(UniPoly::new(Var::X, vec![q("0")]).is_zero());
        let b = BiPoly::new(vec![vec![q("1"), q("0")], vec![], vec![q("0")]]);
        assert_eq!(b, BiPoly::one());
        assert!(BiPoly::new(vec![vec![q("0")]]).is_zero());
    }

    #[test]
    fn substitute_examples() {
        // x^2 - lambda^2/6 - 1/12 at lambda := 0
        let p = BiPoly::new(vec![vec![q("-1/12"), q("0"), q("-1/6")], vec![], vec![q("1")]]);
        let r = p.substitute(Var::Lambda, &q("0"));
        assert_eq!(r, UniPoly::new(Var::X, vec![q("-1/12"), q("0"), q("1")]));
        assert_eq!(BiPoly::x().substitute(Var::X, &q("5")).as_constant(), Some(q("5")));
        let ff = BiPoly::from_terms(&[(3, 0, 1), (2, 1, -3), (1, 2, 2)]);
        assert_eq!(ff.substitute(Var::Lambda, &q("1")), UniPoly::from_ints(Var::X, &[0, 2, -3, 1]));
    }

    #[test]
    fn substitute_tag_mismatch_rejected() {
        let p = UniPoly::from_ints(Var::X, &[0, 1]);
        assert!(p.substitute(Var::Lambda, &q("1")).is_err());
        assert!("y".parse::<Var>().is_err());
    }

    #[test]
    fn compose_affine_matches_eval() {
        let p = UniPoly::from_ints(Var::X, &[3, -1, 0, 2]);
        let c = p.compose_affine(&q("1/3"), &q("-1/2"));
        for v in ["0", "1", "-7/5", "11"] {
            let v = q(v);
            assert_eq!(c.eval(&v), p.eval(&(&(&v * &q("1/3")) + &q("-1/2"))));
        }
    }

    #[test]
    fn compose_in_lambda() {
        // x*lambda with lambda := 2x  ->  2x^2
        let p = BiPoly::from_terms(&[(1, 1, 1)]);
        let q2 = BiPoly::x().scale(&q("2"));
        assert_eq!(p.compose(Var::Lambda, &q2), BiPoly::from_terms(&[(2, 0, 2)]));
    }

    #[test]
    fn as_uni_round_trip() {
        let u = UniPoly::from_ints(Var::Lambda, &[1, 0, 4]);
        assert_eq!(BiPoly::from(u.clone()).as_uni(Var::Lambda), Some(u));
        assert_eq!(BiPoly::x().as_uni(Var::Lambda), None);
        assert_eq!(BiPoly::lambda().as_uni(Var::X), None);
    }

    fn small_q() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..7).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn uni() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(small_q(), 0..6).prop_map(|c| UniPoly::new(Var::X, c))
    }

    fn bi() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec(prop::collection::vec(small_q(), 0..4), 0..4).prop_map(BiPoly::new)
    }

    proptest! {
        #[test]
        fn rational_ring_axioms(a in small_q(), b in small_q(), c in small_q()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn unipoly_ring_axioms(a in uni(), b in uni(), c in uni()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bipoly_ring_axioms(a in bi(), b in bi(), c in bi()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn substitution_is_a_ring_map(a in bi(), b in bi(), v in small_q()) {
            let lhs = (&a * &b).substitute(Var::X, &v);
            let rhs = &a.substitute(Var::X, &v) * &b.substitute(Var::X, &v);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
