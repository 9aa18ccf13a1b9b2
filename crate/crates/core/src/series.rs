//! Truncated formal power series in `t` with polynomial coefficients.
//!
//! Coefficients are raw Taylor coefficients: `f = sum a_k t^k`. The number
//! a generating function carries at index `n` is `n! a_n`, read with
//! [`Series::extract_number`].

use std::fmt;

use crate::algebra::combinatorics::factorial;
use crate::algebra::{falling_factorial, BiPoly, Rational, Var};
use crate::error::{Error, Result};

/// Coefficient ring of a series: which indeterminates may appear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Q,
    QX,
    QLambda,
    QXLambda,
}

impl Ring {
    fn has_x(self) -> bool {
        matches!(self, Ring::QX | Ring::QXLambda)
    }

    fn has_lambda(self) -> bool {
        matches!(self, Ring::QLambda | Ring::QXLambda)
    }

    fn from_flags(x: bool, lambda: bool) -> Ring {
        match (x, lambda) {
            (false, false) => Ring::Q,
            (true, false) => Ring::QX,
            (false, true) => Ring::QLambda,
            (true, true) => Ring::QXLambda,
        }
    }

    /// Smallest ring containing both.
    pub fn join(self, other: Ring) -> Ring {
        Ring::from_flags(self.has_x() || other.has_x(), self.has_lambda() || other.has_lambda())
    }

    pub fn contains(self, other: Ring) -> bool {
        self.join(other) == self
    }

    /// Does `p` live in this ring?
    pub fn admits(self, p: &BiPoly) -> bool {
        (self.has_x() || p.degree_x().unwrap_or(0) == 0)
            && (self.has_lambda() || p.degree_lambda().unwrap_or(0) == 0)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Q => "Q",
            Ring::QX => "Q[x]",
            Ring::QLambda => "Q[lambda]",
            Ring::QXLambda => "Q[x,lambda]",
        })
    }
}

/// Argument of a (degenerate) exponential: a rational constant or `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpArg {
    Const(Rational),
    X,
}

impl ExpArg {
    fn as_poly(&self) -> BiPoly {
        match self {
            ExpArg::Const(c) => BiPoly::constant(c.clone()),
            ExpArg::X => BiPoly::x(),
        }
    }
}

impl From<Rational> for ExpArg {
    fn from(c: Rational) -> Self {
        ExpArg::Const(c)
    }
}

/// `sum_{k<=order} a_k t^k` over a [`Ring`].
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    ring: Ring,
    coeffs: Vec<BiPoly>,
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series<{}>[", self.ring)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c:?}")?;
        }
        f.write_str("]")
    }
}

impl Series {
    /// `coeffs` must be nonempty (order = len - 1) and lie in `ring`.
    pub fn new(ring: Ring, coeffs: Vec<BiPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a series needs at least a_0".into()));
        }
        if let Some(bad) = coeffs.iter().find(|c| !ring.admits(c)) {
            return Err(Error::RingMismatch(ring.to_string(), format!("{bad:?}")));
        }
        Ok(Series { ring, coeffs })
    }

    pub fn from_rationals(coeffs: Vec<Rational>) -> Result<Self> {
        Series::new(Ring::Q, coeffs.into_iter().map(BiPoly::constant).collect())
    }

    pub fn zero(ring: Ring, order: usize) -> Self {
        Series { ring, coeffs: vec![BiPoly::zero(); order + 1] }
    }

    pub fn constant(ring: Ring, c: BiPoly, order: usize) -> Result<Self> {
        let mut s = Series::zero(ring, order);
        s.coeffs[0] = c;
        Series::new(ring, s.coeffs)
    }

    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(Ring::Q, order);
        s.coeffs[0] = BiPoly::one();
        s
    }

    /// `c t^k`, rational coefficient.
    pub fn monomial(k: usize, c: Rational, order: usize) -> Self {
        let mut s = Series::zero(Ring::Q, order);
        if k <= order {
            s.coeffs[k] = BiPoly::constant(c);
        }
        s
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&BiPoly> {
        self.coeffs.get(k)
    }

    /// Index of the first nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Reinterprets over a larger ring.
    pub fn promote(&self, ring: Ring) -> Result<Self> {
        if !ring.contains(self.ring) {
            return Err(Error::RingMismatch(self.ring.to_string(), ring.to_string()));
        }
        Ok(Series { ring, coeffs: self.coeffs.clone() })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Series { ring: self.ring, coeffs: self.coeffs[..=order].to_vec() }
    }

    fn check_ring(&self, other: &Series) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let n = self.order().min(other.order());
        Ok(Series {
            ring: self.ring,
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let n = self.order().min(other.order());
        Ok(Series {
            ring: self.ring,
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series { ring: self.ring, coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Truncated Cauchy product; the result order is the smaller of the two.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k)
                    .filter(|&i| !self.coeffs[i].is_zero() && !other.coeffs[k - i].is_zero())
                    .map(|i| &self.coeffs[i] * &other.coeffs[k - i])
                    .sum()
            })
            .collect();
        Ok(Series { ring: self.ring, coeffs })
    }

    /// Quotient `q` with `q * other = self` through order `order - v`, where
    /// `v` is the valuation of `other`, whose coefficient at `t^v` must be a
    /// nonzero rational constant.
    pub fn div(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let v = other
            .valuation()
            .ok_or_else(|| Error::SeriesDivision("division by the zero series".into()))?;
        if let Some(vf) = self.valuation() {
            if vf < v {
                return Err(Error::SeriesDivision(format!(
                    "numerator valuation {vf} below denominator valuation {v}"
                )));
            }
        }
        let lead = other.coeffs[v]
            .as_constant()
            .ok_or_else(|| Error::SeriesDivision("leading coefficient is not a unit".into()))?;
        let inv = lead.recip()?;
        let n = self.order().min(other.order());
        if v > n {
            return Err(Error::SeriesDivision("denominator vanishes through the common order".into()));
        }
        let out_order = n - v;
        let num = &self.coeffs[v..=n];
        let den = &other.coeffs[v..=n];
        let mut q: Vec<BiPoly> = Vec::with_capacity(out_order + 1);
        for k in 0..=out_order {
            let mut acc = num[k].clone();
            for j in 1..=k {
                if !den[j].is_zero() && !q[k - j].is_zero() {
                    acc = &acc - &(&den[j] * &q[k - j]);
                }
            }
            q.push(acc.scale(&inv));
        }
        Ok(Series { ring: self.ring, coeffs: q })
    }

    /// `self^r` by binary powering; `r = 0` gives the constant 1.
    pub fn pow(&self, r: u32) -> Series {
        let mut result = Series::one(self.order()).promote(self.ring).expect("Q is in every ring");
        let mut base = self.clone();
        let mut e = r;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        result
    }

    /// `n! a_n`.
    pub fn extract_number(&self, n: usize) -> Result<BiPoly> {
        let c = self.coeffs.get(n).ok_or(Error::BeyondOrder { index: n, order: self.order() })?;
        Ok(c.scale(&Rational::from(factorial(n))))
    }

    /// All of `n! a_n` for `n <= order`.
    pub fn numbers(&self) -> Vec<BiPoly> {
        (0..=self.order()).map(|n| self.extract_number(n).expect("in range")).collect()
    }

    /// Coefficientwise substitution, dropping `var` from the ring.
    pub fn substitute(&self, var: Var, value: &Rational) -> Series {
        let ring = match var {
            Var::X => Ring::from_flags(false, self.ring.has_lambda()),
            Var::Lambda => Ring::from_flags(self.ring.has_x(), false),
        };
        let coeffs = self.coeffs.iter().map(|c| BiPoly::from(c.substitute(var, value))).collect();
        Series { ring, coeffs }
    }
}

/// `e^{u t}` for rational `u` (ring `Q`) or `e^{x t}` (ring `Q[x]`).
pub fn build_exp(u: &ExpArg, order: usize) -> Series {
    let base = u.as_poly();
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut pow = BiPoly::one();
    for k in 0..=order {
        coeffs.push(pow.scale(&Rational::from(factorial(k)).recip().expect("k! > 0")));
        pow = &pow * &base;
    }
    let ring = if matches!(u, ExpArg::X) { Ring::QX } else { Ring::Q };
    Series { ring, coeffs }
}

/// `e_lambda^u(t) = (1 + lambda t)^{u / lambda}`, coefficients `(u)_{k,lambda} / k!`.
pub fn build_degenerate_exp(u: &ExpArg, order: usize) -> Series {
    let base = u.as_poly();
    let one = Rational::one();
    let coeffs = (0..=order)
        .map(|k| {
            falling_factorial(&base, k, &one)
                .scale(&Rational::from(factorial(k)).recip().expect("k! > 0"))
        })
        .collect();
    let ring = if matches!(u, ExpArg::X) { Ring::QXLambda } else { Ring::QLambda };
    Series { ring, coeffs }
}

/// `lambda^{-1} log(1 + lambda t)`: `a_0 = 0`, `a_k = (-1)^{k-1} lambda^{k-1} / k`.
pub fn build_log1p_scaled(order: usize) -> Series {
    let coeffs = (0..=order)
        .map(|k| {
            if k == 0 {
                BiPoly::zero()
            } else {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                BiPoly::monomial(0, k - 1, Rational::new(sign, k as i64).expect("k > 0"))
            }
        })
        .collect();
    Series { ring: Ring::QLambda, coeffs }
}
