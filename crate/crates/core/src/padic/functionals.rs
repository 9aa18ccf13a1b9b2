//! Bosonic and fermionic p-adic integrals as exact linear functionals on
//! polynomial integrands.
//!
//! On polynomials the two integrals are determined by their moments:
//! `int y^k dmu_1 = B_k` and `int y^k dmu_{-1} = E*_k`, with `B_k` and `E*_k`
//! the classical Bernoulli and Euler numbers. Multivariate integrands are
//! integrated one variable at a time.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::algebra::combinatorics::binom;
use crate::algebra::{BiPoly, Rational};
use crate::error::{Error, Result};
use crate::families::{classical_bernoulli_numbers, classical_euler_numbers};

/// Largest `y`-degree accepted in an integrand.
pub const DEGREE_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// `mu_1`, the Volkenborn integral.
    Bosonic,
    /// `mu_{-1}`.
    Fermionic,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Bosonic => "bosonic",
            Kind::Fermionic => "fermionic",
        }
    }

    /// `int y^k` for `k <= DEGREE_CAP`, computed once per process.
    pub fn moments(self) -> &'static [Rational] {
        static BOSONIC: OnceLock<Vec<Rational>> = OnceLock::new();
        static FERMIONIC: OnceLock<Vec<Rational>> = OnceLock::new();
        match self {
            Kind::Bosonic => BOSONIC.get_or_init(|| classical_bernoulli_numbers(DEGREE_CAP)),
            Kind::Fermionic => FERMIONIC.get_or_init(|| classical_euler_numbers(DEGREE_CAP)),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "bosonic" => Ok(Kind::Bosonic),
            "fermionic" => Ok(Kind::Fermionic),
            other => Err(Error::InvalidArgument(format!("unknown integral kind {other:?}"))),
        }
    }
}

/// Polynomial in the variable of integration `y` with coefficients in
/// `Q[x, lambda]`; `coeffs[k]` multiplies `y^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIntegrand {
    coeffs: Vec<BiPoly>,
}

impl PolyIntegrand {
    pub fn new(mut coeffs: Vec<BiPoly>) -> Result<Self> {
        while coeffs.last().is_some_and(BiPoly::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() > DEGREE_CAP + 1 {
            return Err(Error::DegreeCap(coeffs.len() - 1, DEGREE_CAP));
        }
        Ok(PolyIntegrand { coeffs })
    }

    pub fn from_rationals(cs: &[Rational]) -> Result<Self> {
        PolyIntegrand::new(cs.iter().cloned().map(BiPoly::constant).collect())
    }

    pub fn constant(c: BiPoly) -> Self {
        PolyIntegrand::new(vec![c]).expect("degree 0")
    }

    /// The integrand `y`.
    pub fn y() -> Self {
        PolyIntegrand::new(vec![BiPoly::zero(), BiPoly::one()]).expect("degree 1")
    }

    pub fn coeffs(&self) -> &[BiPoly] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BiPoly::zero();
        let coeffs = (0..n)
            .map(|k| self.coeffs.get(k).unwrap_or(&z) + other.coeffs.get(k).unwrap_or(&z))
            .collect();
        PolyIntegrand::new(coeffs).expect("degree does not grow")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolyIntegrand::new(self.coeffs.iter().map(|a| a.scale(c)).collect()).expect("same degree")
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(PolyIntegrand { coeffs: Vec::new() });
        }
        let mut out = vec![BiPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PolyIntegrand::new(out)
    }

    /// `(c + y)^n`.
    pub fn shifted_power(c: &BiPoly, n: usize) -> Result<Self> {
        if n > DEGREE_CAP {
            return Err(Error::DegreeCap(n, DEGREE_CAP));
        }
        // binomial expansion: coefficient of y^k is C(n,k) c^{n-k}
        let mut powers = vec![BiPoly::one()];
        for i in 1..=n {
            let next = &powers[i - 1] * c;
            powers.push(next);
        }
        let coeffs =
            (0..=n).map(|k| powers[n - k].scale(&Rational::from(binom(n, k)))).collect();
        PolyIntegrand::new(coeffs)
    }

    /// `(c + y)_{n, lambda} = prod_{j<n} (y + c - j lambda)`.
    pub fn shifted_falling_factorial(c: &BiPoly, n: usize) -> Result<Self> {
        if n > DEGREE_CAP {
            return Err(Error::DegreeCap(n, DEGREE_CAP));
        }
        let mut acc = PolyIntegrand::constant(BiPoly::one());
        for j in 0..n {
            let shift = c - &BiPoly::lambda().scale(&Rational::from(j));
            acc = acc.mul(&PolyIntegrand::new(vec![shift, BiPoly::one()])?)?;
        }
        Ok(acc)
    }

    /// `f(a + d y)`.
    pub fn compose_affine(&self, a: &Rational, d: &Rational) -> Self {
        let lin = PolyIntegrand::new(vec![BiPoly::constant(a.clone()), BiPoly::constant(d.clone())])
            .expect("degree 1");
        let mut acc = PolyIntegrand { coeffs: Vec::new() };
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).expect("degree preserved").add(&PolyIntegrand::constant(c.clone()));
        }
        acc
    }

    /// `f(y + m)`.
    pub fn shift(&self, m: &Rational) -> Self {
        self.compose_affine(m, &Rational::one())
    }

    /// `f(v)` for rational `v`.
    pub fn eval(&self, v: &Rational) -> BiPoly {
        let mut acc = BiPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(v) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rational::from(k)))
            .collect();
        PolyIntegrand::new(coeffs).expect("degree drops")
    }

    /// Applies the moment rule `y^k -> moment_k` of the given integral.
    pub fn integrate(&self, kind: Kind) -> BiPoly {
        let moments = kind.moments();
        self.coeffs
            .iter()
            .zip(moments)
            .filter(|(_, m)| !m.is_zero())
            .map(|(c, m)| c.scale(m))
            .sum()
    }
}

/// `int f(y) dmu_1(y)`.
pub fn bosonic_integral(f: &PolyIntegrand) -> BiPoly {
    f.integrate(Kind::Bosonic)
}

/// `int f(y) dmu_{-1}(y)`.
pub fn fermionic_integral(f: &PolyIntegrand) -> BiPoly {
    f.integrate(Kind::Fermionic)
}

/// Polynomial in `y_0, .., y_{r-1}` with `Q[x, lambda]` coefficients, stored
/// sparsely by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIntegrand {
    nvars: usize,
    terms: BTreeMap<Vec<usize>, BiPoly>,
}

impl MultiIntegrand {
    pub fn zero(nvars: usize) -> Self {
        MultiIntegrand { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BiPoly) -> Self {
        let mut m = MultiIntegrand::zero(nvars);
        m.add_term(vec![0; nvars], c);
        m
    }

    /// The integrand `y_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut m = MultiIntegrand::zero(nvars);
        m.add_term(e, BiPoly::one());
        m
    }

    /// `y_0 + .. + y_{r-1} + c`.
    pub fn linear_sum(nvars: usize, c: BiPoly) -> Self {
        (0..nvars).fold(MultiIntegrand::constant(nvars, c), |acc, i| acc.add(&MultiIntegrand::var(nvars, i)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, BiPoly> {
        &self.terms
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, exps: Vec<usize>, c: BiPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiIntegrand::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<usize> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if let Some(&d) = e.iter().max() {
                    if d > DEGREE_CAP {
                        return Err(Error::DegreeCap(d, DEGREE_CAP));
                    }
                }
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: usize) -> Result<Self> {
        let mut acc = MultiIntegrand::constant(self.nvars, BiPoly::one());
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `(L)_{n, lambda} = prod_{j<n} (L - j lambda)`.
    pub fn falling_factorial(&self, n: usize) -> Result<Self> {
        let mut acc = MultiIntegrand::constant(self.nvars, BiPoly::one());
        for j in 0..n {
            let shift = MultiIntegrand::constant(self.nvars, BiPoly::lambda().scale(&-Rational::from(j)));
            acc = acc.mul(&self.add(&shift))?;
        }
        Ok(acc)
    }

    /// Integrates out variable `i`, leaving an integrand in the remaining
    /// variables (order preserved).
    pub fn integrate_var(&self, i: usize, kind: Kind) -> Self {
        assert!(i < self.nvars, "variable index {i} out of range");
        let moments = kind.moments();
        let mut out = MultiIntegrand::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            let m = &moments[e[i]];
            if m.is_zero() {
                continue;
            }
            let mut rest = e.clone();
            rest.remove(i);
            out.add_term(rest, c.scale(m));
        }
        out
    }

    /// Value of an integrand with no variables left.
    pub fn as_value(&self) -> Option<BiPoly> {
        if self.nvars != 0 {
            return None;
        }
        Some(self.terms.get(&Vec::new()).cloned().unwrap_or_default())
    }
}

/// Integrates out every variable, last one first.
pub fn iterated_integral(f: &MultiIntegrand, kind: Kind) -> BiPoly {
    let order: Vec<usize> = (0..f.nvars()).rev().collect();
    iterated_integral_in_order(f, kind, &order).expect("a valid elimination order")
}

/// Integrates out the variables in the given order (original indices).
pub fn iterated_integral_in_order(f: &MultiIntegrand, kind: Kind, order: &[usize]) -> Result<BiPoly> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..f.nvars()).collect::<Vec<_>>() {
        return Err(Error::InvalidArgument(format!("{order:?} is not a permutation of the variables")));
    }
    let mut remaining: Vec<usize> = (0..f.nvars()).collect();
    let mut cur = f.clone();
    for &v in order {
        let pos = remaining.iter().position(|&r| r == v).expect("permutation");
        cur = cur.integrate_var(pos, kind);
        remaining.remove(pos);
    }
    Ok(cur.as_value().expect("all variables integrated"))
}

/// `int (x + y + 1/2)^n` with `x` symbolic, or at `x = 0` when `x_symbolic`
/// is false.
pub fn witt(n: usize, x_symbolic: bool, kind: Kind) -> Result<BiPoly> {
    let c = half_shift(x_symbolic);
    Ok(PolyIntegrand::shifted_power(&c, n)?.integrate(kind))
}

/// `int (x + y + 1/2)_{n, lambda}`.
pub fn degenerate_witt(n: usize, x_symbolic: bool, kind: Kind) -> Result<BiPoly> {
    let c = half_shift(x_symbolic);
    Ok(PolyIntegrand::shifted_falling_factorial(&c, n)?.integrate(kind))
}

/// `int..int (y_1 + .. + y_r + r/2)^n`.
pub fn witt_order(n: usize, r: usize, kind: Kind) -> Result<BiPoly> {
    let f = order_r_linear(r)?.pow(n)?;
    Ok(iterated_integral(&f, kind))
}

/// `int..int (y_1 + .. + y_r + r/2)_{n, lambda}`.
pub fn degenerate_witt_order(n: usize, r: usize, kind: Kind) -> Result<BiPoly> {
    let f = order_r_linear(r)?.falling_factorial(n)?;
    Ok(iterated_integral(&f, kind))
}

/// `int..int (y_1 + .. + y_r + r/2)^n` for `n = 0..=n_max`, sharing the
/// expansion between consecutive `n`.
pub fn witt_order_table(n_max: usize, r: usize, kind: Kind) -> Result<Vec<BiPoly>> {
    let lin = order_r_linear(r)?;
    let mut cur = MultiIntegrand::constant(r, BiPoly::one());
    let mut out = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        out.push(iterated_integral(&cur, kind));
        cur = cur.mul(&lin)?;
    }
    Ok(out)
}

/// `int..int (y_1 + .. + y_r + r/2)_{n, lambda}` for `n = 0..=n_max`.
pub fn degenerate_witt_order_table(n_max: usize, r: usize, kind: Kind) -> Result<Vec<BiPoly>> {
    let lin = order_r_linear(r)?;
    let mut cur = MultiIntegrand::constant(r, BiPoly::one());
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        out.push(iterated_integral(&cur, kind));
        let shift = MultiIntegrand::constant(r, BiPoly::lambda().scale(&-Rational::from(n)));
        cur = cur.mul(&lin.add(&shift))?;
    }
    Ok(out)
}

fn order_r_linear(r: usize) -> Result<MultiIntegrand> {
    if r == 0 {
        return Err(Error::InvalidArgument("order r must be at least 1".into()));
    }
    let c = Rational::new(r as i64, 2)?;
    Ok(MultiIntegrand::linear_sum(r, BiPoly::constant(c)))
}

fn half_shift(x_symbolic: bool) -> BiPoly {
    let h = BiPoly::constant(Rational::half());
    if x_symbolic {
        &BiPoly::x() + &h
    } else {
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Var;
    use crate::families;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn c(s: &str) -> BiPoly {
        BiPoly::constant(q(s))
    }

    fn half_plus_y_sq() -> PolyIntegrand {
        PolyIntegrand::shifted_power(&c("1/2"), 2).unwrap()
    }

    #[test]
    fn bosonic_examples() {
        assert_eq!(bosonic_integral(&PolyIntegrand::constant(BiPoly::one())), c("1"));
        assert_eq!(bosonic_integral(&PolyIntegrand::y()), c("-1/2"));
        assert_eq!(bosonic_integral(&half_plus_y_sq()), c("-1/12"));
    }

    #[test]
    fn fermionic_examples() {
        assert_eq!(fermionic_integral(&PolyIntegrand::constant(BiPoly::one())), c("1"));
        assert_eq!(fermionic_integral(&PolyIntegrand::y()), c("-1/2"));
        assert_eq!(fermionic_integral(&half_plus_y_sq()), c("-1/4"));
    }

    #[test]
    fn iterated_examples() {
        let f = MultiIntegrand::linear_sum(2, c("1")).pow(2).unwrap();
        assert_eq!(iterated_integral(&f, Kind::Bosonic), c("-1/6"));
        assert_eq!(iterated_integral(&f, Kind::Fermionic), c("-1/2"));
        let one = MultiIntegrand::constant(3, BiPoly::one());
        assert_eq!(iterated_integral(&one, Kind::Bosonic), c("1"));
        assert_eq!(iterated_integral(&one, Kind::Fermionic), c("1"));
    }

    #[test]
    fn iterated_fubini() {
        // asymmetric integrand: y0^3 y1 + 2 x y1^2 y2 + lambda y2^4
        let y = |i| MultiIntegrand::var(3, i);
        let f = y(0).pow(3).unwrap().mul(&y(1)).unwrap();
        let g = y(1).pow(2).unwrap().mul(&y(2)).unwrap().mul(&MultiIntegrand::constant(3, BiPoly::x().scale(&q("2")))).unwrap();
        let h = y(2).pow(4).unwrap().mul(&MultiIntegrand::constant(3, BiPoly::lambda())).unwrap();
        let total = f.add(&g).add(&h);
        for kind in [Kind::Bosonic, Kind::Fermionic] {
            let base = iterated_integral(&total, kind);
            for order in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2]] {
                assert_eq!(iterated_integral_in_order(&total, kind, &order).unwrap(), base);
            }
        }
        assert!(iterated_integral_in_order(&total, Kind::Bosonic, &[0, 0, 1]).is_err());
    }

    #[test]
    fn degenerate_witt_examples() {
        for kind in [Kind::Bosonic, Kind::Fermionic] {
            assert_eq!(degenerate_witt(0, true, kind).unwrap(), BiPoly::one());
        }
        let b2 = degenerate_witt(2, false, Kind::Bosonic).unwrap();
        assert_eq!(b2.as_uni(Var::Lambda).unwrap().as_constant(), Some(q("-1/12")));
        assert_eq!(degenerate_witt(1, true, Kind::Fermionic).unwrap(), BiPoly::x());
    }

    #[test]
    fn witt_matches_families_small() {
        let b = families::type2_bernoulli_table(6);
        let e = families::type2_euler_table(6);
        for n in 0..=6 {
            assert_eq!(witt(n, true, Kind::Bosonic).unwrap(), BiPoly::from(&b[n]));
            assert_eq!(witt(n, true, Kind::Fermionic).unwrap(), BiPoly::from(&e[n]));
        }
    }

    #[test]
    fn order_tables_match_single_calls() {
        for kind in [Kind::Bosonic, Kind::Fermionic] {
            let w = witt_order_table(5, 2, kind).unwrap();
            let dw = degenerate_witt_order_table(4, 3, kind).unwrap();
            for n in 0..=5 {
                assert_eq!(w[n], witt_order(n, 2, kind).unwrap());
            }
            for n in 0..=4 {
                assert_eq!(dw[n], degenerate_witt_order(n, 3, kind).unwrap());
            }
        }
        assert!(witt_order_table(2, 0, Kind::Bosonic).is_err());
    }

    #[test]
    fn degree_cap_enforced() {
        assert!(matches!(PolyIntegrand::shifted_power(&c("1"), 65), Err(Error::DegreeCap(65, 64))));
        assert!(PolyIntegrand::shifted_power(&c("1"), 64).is_ok());
        let big = MultiIntegrand::var(1, 0).pow(64).unwrap();
        assert!(big.mul(&MultiIntegrand::var(1, 0)).is_err());
    }

    #[test]
    fn shifted_falling_factorial_matches_falling_factorial() {
        // (x + y)_{3,lambda} at y = 2 equals (x + 2)_{3,lambda}
        let f = PolyIntegrand::shifted_falling_factorial(&BiPoly::x(), 3).unwrap();
        let base = &BiPoly::x() + &c("2");
        let expect = crate::algebra::falling_factorial(&base, 3, &Rational::one());
        assert_eq!(f.eval(&q("2")), expect);
    }
}
