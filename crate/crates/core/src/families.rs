//! Generators for every number and polynomial family, each read off its
//! generating function.
//!
//! Every `*_table(n_max)` builds one series and returns indices `0..=n_max`;
//! the single-index functions are thin wrappers. Degenerate families keep
//! `lambda` as a formal indeterminate.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::algebra::combinatorics::factorial;
use crate::algebra::{falling_factorial, BiPoly, Rational, UniPoly, Var};
use crate::error::{Error, Result};
use crate::series::{build_degenerate_exp, build_exp, build_log1p_scaled, ExpArg, Ring, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    ClassicalBernoulli,
    ClassicalEuler,
    Type2Bernoulli,
    Type2Euler,
    Type2BernoulliOrderR,
    Type2EulerOrderR,
    FullyDegenerateType2Bernoulli,
    CarlitzDegenerateType2Bernoulli,
    DegenerateType2Euler,
    DegenerateType2EulerOrderR,
    DegenerateStirling1,
    CentralFactorialT,
    Daehee,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 13] = [
        FamilyTag::ClassicalBernoulli,
        FamilyTag::ClassicalEuler,
        FamilyTag::Type2Bernoulli,
        FamilyTag::Type2Euler,
        FamilyTag::Type2BernoulliOrderR,
        FamilyTag::Type2EulerOrderR,
        FamilyTag::FullyDegenerateType2Bernoulli,
        FamilyTag::CarlitzDegenerateType2Bernoulli,
        FamilyTag::DegenerateType2Euler,
        FamilyTag::DegenerateType2EulerOrderR,
        FamilyTag::DegenerateStirling1,
        FamilyTag::CentralFactorialT,
        FamilyTag::Daehee,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::ClassicalBernoulli => "classical_bernoulli",
            FamilyTag::ClassicalEuler => "classical_euler",
            FamilyTag::Type2Bernoulli => "type2_bernoulli",
            FamilyTag::Type2Euler => "type2_euler",
            FamilyTag::Type2BernoulliOrderR => "type2_bernoulli_order_r",
            FamilyTag::Type2EulerOrderR => "type2_euler_order_r",
            FamilyTag::FullyDegenerateType2Bernoulli => "fully_degenerate_type2_bernoulli",
            FamilyTag::CarlitzDegenerateType2Bernoulli => "carlitz_degenerate_type2_bernoulli",
            FamilyTag::DegenerateType2Euler => "degenerate_type2_euler",
            FamilyTag::DegenerateType2EulerOrderR => "degenerate_type2_euler_order_r",
            FamilyTag::DegenerateStirling1 => "degenerate_stirling1",
            FamilyTag::CentralFactorialT => "central_factorial_T",
            FamilyTag::Daehee => "daehee",
        }
    }

    /// Families indexed by a second parameter `r` (for Stirling numbers the
    /// second index `l`, for central factorial numbers `r`).
    pub fn needs_order(self) -> bool {
        matches!(
            self,
            FamilyTag::Type2BernoulliOrderR
                | FamilyTag::Type2EulerOrderR
                | FamilyTag::DegenerateType2EulerOrderR
                | FamilyTag::DegenerateStirling1
                | FamilyTag::CentralFactorialT
        )
    }

    pub fn has_x(self) -> bool {
        matches!(
            self,
            FamilyTag::ClassicalBernoulli
                | FamilyTag::ClassicalEuler
                | FamilyTag::Type2Bernoulli
                | FamilyTag::Type2Euler
                | FamilyTag::FullyDegenerateType2Bernoulli
                | FamilyTag::CarlitzDegenerateType2Bernoulli
                | FamilyTag::DegenerateType2Euler
        )
    }

    pub fn has_lambda(self) -> bool {
        matches!(
            self,
            FamilyTag::FullyDegenerateType2Bernoulli
                | FamilyTag::CarlitzDegenerateType2Bernoulli
                | FamilyTag::DegenerateType2Euler
                | FamilyTag::DegenerateType2EulerOrderR
                | FamilyTag::DegenerateStirling1
        )
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// A family, with its order `r` when the family takes one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyId {
    tag: FamilyTag,
    order: Option<u32>,
}

impl FamilyId {
    pub fn new(tag: FamilyTag, order: Option<u32>) -> Result<Self> {
        match (tag.needs_order(), order) {
            (true, Some(r)) if r >= 1 || tag == FamilyTag::DegenerateStirling1 => {
                Ok(FamilyId { tag, order })
            }
            (true, Some(_)) => Err(Error::InvalidArgument(format!("{tag} needs r >= 1"))),
            (true, None) => Err(Error::InvalidArgument(format!("{tag} needs an order r"))),
            (false, Some(_)) => Err(Error::InvalidArgument(format!("{tag} takes no order r"))),
            (false, None) => Ok(FamilyId { tag, order }),
        }
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }
}

/// A family member: a number, a polynomial in one indeterminate, or in both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyValue {
    Number(Rational),
    Uni(UniPoly),
    Bi(BiPoly),
}

impl FamilyValue {
    pub fn to_bipoly(&self) -> BiPoly {
        match self {
            FamilyValue::Number(q) => BiPoly::constant(q.clone()),
            FamilyValue::Uni(p) => BiPoly::from(p),
            FamilyValue::Bi(p) => p.clone(),
        }
    }

    /// Narrowest representation of `p`.
    pub fn narrow(p: BiPoly) -> FamilyValue {
        if let Some(c) = p.as_constant() {
            FamilyValue::Number(c)
        } else if let Some(u) = p.as_uni(Var::X) {
            FamilyValue::Uni(u)
        } else if let Some(u) = p.as_uni(Var::Lambda) {
            FamilyValue::Uni(u)
        } else {
            FamilyValue::Bi(p)
        }
    }
}

fn half() -> Rational {
    Rational::half()
}

fn expect_uni(p: BiPoly, var: Var) -> UniPoly {
    p.as_uni(var).unwrap_or_else(|| panic!("expected a polynomial in {var} only, got {p:?}"))
}

fn expect_number(p: BiPoly) -> Rational {
    p.as_constant().unwrap_or_else(|| panic!("expected a number, got {p:?}"))
}

/// `e^{t/2} - e^{-t/2}` (sign `-1`) or `e^{t/2} + e^{-t/2}` (sign `+1`).
fn half_exp_combo(sign: i64, order: usize) -> Series {
    let a = build_exp(&ExpArg::Const(half()), order);
    let b = build_exp(&ExpArg::Const(-half()), order);
    if sign < 0 { a.sub(&b) } else { a.add(&b) }.expect("same ring")
}

fn degenerate_half_combo(sign: i64, order: usize) -> Series {
    let a = build_degenerate_exp(&ExpArg::Const(half()), order);
    let b = build_degenerate_exp(&ExpArg::Const(-half()), order);
    if sign < 0 { a.sub(&b) } else { a.add(&b) }.expect("same ring")
}

fn t_series(order: usize) -> Series {
    Series::monomial(1, Rational::one(), order)
}

fn two(ring: Ring, order: usize) -> Series {
    Series::constant(ring, BiPoly::constant(Rational::from(2)), order).expect("constant")
}

fn promote(s: Series, ring: Ring) -> Series {
    s.promote(ring).expect("promotion into a larger ring")
}

/// `B_n(x)` from `t e^{xt} / (e^t - 1)`.
pub fn classical_bernoulli_table(n_max: usize) -> Vec<UniPoly> {
    let order = n_max + 1;
    let num = t_series(order).promote(Ring::QX).unwrap().mul(&build_exp(&ExpArg::X, order)).unwrap();
    let den = build_exp(&ExpArg::Const(Rational::one()), order).sub(&Series::one(order)).unwrap();
    let s = num.div(&promote(den, Ring::QX)).unwrap();
    s.numbers().into_iter().map(|p| expect_uni(p, Var::X)).collect()
}

pub fn classical_bernoulli_poly(n: usize) -> UniPoly {
    classical_bernoulli_table(n).swap_remove(n)
}

/// Classical Bernoulli numbers `B_n = B_n(0)`, from `t / (e^t - 1)`.
pub fn classical_bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    let order = n_max + 1;
    let den = build_exp(&ExpArg::Const(Rational::one()), order).sub(&Series::one(order)).unwrap();
    t_series(order).div(&den).unwrap().numbers().into_iter().map(expect_number).collect()
}

/// `E*_n(x)` from `2 e^{xt} / (e^t + 1)`.
pub fn classical_euler_table(n_max: usize) -> Vec<UniPoly> {
    let order = n_max;
    let num = two(Ring::QX, order).mul(&build_exp(&ExpArg::X, order)).unwrap();
    let den = build_exp(&ExpArg::Const(Rational::one()), order).add(&Series::one(order)).unwrap();
    let s = num.div(&promote(den, Ring::QX)).unwrap();
    s.numbers().into_iter().map(|p| expect_uni(p, Var::X)).collect()
}

pub fn classical_euler_poly(n: usize) -> UniPoly {
    classical_euler_table(n).swap_remove(n)
}

/// Classical Euler numbers `E*_n = E*_n(0)`, from `2 / (e^t + 1)`.
pub fn classical_euler_numbers(n_max: usize) -> Vec<Rational> {
    let den = build_exp(&ExpArg::Const(Rational::one()), n_max).add(&Series::one(n_max)).unwrap();
    two(Ring::Q, n_max).div(&den).unwrap().numbers().into_iter().map(expect_number).collect()
}

/// `b_n(x)` from `t e^{xt} / (e^{t/2} - e^{-t/2})`.
pub fn type2_bernoulli_table(n_max: usize) -> Vec<UniPoly> {
    let order = n_max + 1;
    let num = t_series(order).promote(Ring::QX).unwrap().mul(&build_exp(&ExpArg::X, order)).unwrap();
    let s = num.div(&promote(half_exp_combo(-1, order), Ring::QX)).unwrap();
    s.numbers().into_iter().map(|p| expect_uni(p, Var::X)).collect()
}

pub fn type2_bernoulli_poly(n: usize) -> UniPoly {
    type2_bernoulli_table(n).swap_remove(n)
}

/// `b_n = b_n(0)`.
pub fn type2_bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    type2_bernoulli_kernel(n_max).numbers().into_iter().map(expect_number).collect()
}

/// `t / (e^{t/2} - e^{-t/2})` through `t^{n_max}`.
fn type2_bernoulli_kernel(n_max: usize) -> Series {
    t_series(n_max + 1).div(&half_exp_combo(-1, n_max + 1)).unwrap()
}

/// `2 / (e^{t/2} + e^{-t/2})` through `t^{n_max}`.
fn type2_euler_kernel(n_max: usize) -> Series {
    two(Ring::Q, n_max).div(&half_exp_combo(1, n_max)).unwrap()
}

/// `E_n(x)` from `2 e^{xt} / (e^{t/2} + e^{-t/2})`.
pub fn type2_euler_table(n_max: usize) -> Vec<UniPoly> {
    let order = n_max;
    let num = two(Ring::QX, order).mul(&build_exp(&ExpArg::X, order)).unwrap();
    let s = num.div(&promote(half_exp_combo(1, order), Ring::QX)).unwrap();
    s.numbers().into_iter().map(|p| expect_uni(p, Var::X)).collect()
}

pub fn type2_euler_poly(n: usize) -> UniPoly {
    type2_euler_table(n).swap_remove(n)
}

/// `E_n = E_n(0)`.
pub fn type2_euler_numbers(n_max: usize) -> Vec<Rational> {
    type2_euler_kernel(n_max).numbers().into_iter().map(expect_number).collect()
}

/// `b_n^{(r)}` for `n <= n_max`: numbers of the `r`-th power of the type 2
/// Bernoulli kernel.
pub fn type2_bernoulli_order_table(n_max: usize, r: u32) -> Vec<Rational> {
    type2_bernoulli_kernel(n_max).pow(r).numbers().into_iter().map(expect_number).collect()
}

pub fn type2_bernoulli_order(n: usize, r: u32) -> Rational {
    type2_bernoulli_order_table(n, r).swap_remove(n)
}

/// `E_n^{(r)}` for `n <= n_max`.
pub fn type2_euler_order_table(n_max: usize, r: u32) -> Vec<Rational> {
    type2_euler_kernel(n_max).pow(r).numbers().into_iter().map(expect_number).collect()
}

pub fn type2_euler_order(n: usize, r: u32) -> Rational {
    type2_euler_order_table(n, r).swap_remove(n)
}

/// `T(m, r)` for `m <= m_max`, zero below `m = r`.
pub fn central_factorial_table(m_max: usize, r: u32) -> Vec<Rational> {
    let r_fact = Rational::from(factorial(r as usize));
    half_exp_combo(-1, m_max)
        .pow(r)
        .numbers()
        .into_iter()
        .map(|p| expect_number(p).checked_div(&r_fact).expect("r! > 0"))
        .collect()
}

/// Central factorial number of the second kind `T(m, r)`.
pub fn central_factorial_t(m: usize, r: u32) -> Rational {
    central_factorial_table(m, r).swap_remove(m)
}

/// Daehee numbers `d_n` from `log(1 + t) / t`.
pub fn daehee_table(n_max: usize) -> Vec<Rational> {
    let order = n_max + 1;
    let log = build_log1p_scaled(order).substitute(Var::Lambda, &Rational::one());
    let s = log.div(&t_series(order)).unwrap();
    let out: Vec<Rational> = s.numbers().into_iter().map(expect_number).collect();
    debug_assert!(out.iter().enumerate().all(|(n, d)| *d == daehee_closed_form(n)));
    out
}

pub fn daehee(n: usize) -> Rational {
    daehee_table(n).swap_remove(n)
}

/// `(-1)^n n! / (n + 1)`.
pub fn daehee_closed_form(n: usize) -> Rational {
    let sign = if n % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
    Rational::new(sign * factorial(n), BigInt::from(n + 1)).expect("n + 1 > 0")
}

/// `S_{1,lambda}(n, l)`, the coefficient of `x^l` in `(x)_{n,lambda}`.
pub fn degenerate_stirling1(n: usize, l: usize) -> UniPoly {
    let ff = falling_factorial(&BiPoly::x(), n, &Rational::one());
    UniPoly::new(Var::Lambda, ff.rows().get(l).cloned().unwrap_or_default())
}

/// Row `n` of the degenerate Stirling triangle, `l = 0..=n`.
pub fn degenerate_stirling1_row(n: usize) -> Vec<UniPoly> {
    let ff = falling_factorial(&BiPoly::x(), n, &Rational::one());
    (0..=n).map(|l| UniPoly::new(Var::Lambda, ff.rows().get(l).cloned().unwrap_or_default())).collect()
}

/// `B_{n,lambda}(x)` from `lambda^{-1} log(1 + lambda t) e_lambda^x(t) /
/// (e_lambda^{1/2}(t) - e_lambda^{-1/2}(t))`.
pub fn fully_degenerate_type2_bernoulli_table(n_max: usize) -> Vec<BiPoly> {
    let order = n_max + 1;
    let num = promote(build_log1p_scaled(order), Ring::QXLambda)
        .mul(&build_degenerate_exp(&ExpArg::X, order))
        .unwrap();
    let s = num.div(&promote(degenerate_half_combo(-1, order), Ring::QXLambda)).unwrap();
    s.numbers()
}

pub fn fully_degenerate_type2_bernoulli_poly(n: usize) -> BiPoly {
    fully_degenerate_type2_bernoulli_table(n).swap_remove(n)
}

/// `B_{n,lambda} = B_{n,lambda}(0)` as polynomials in `lambda`.
pub fn fully_degenerate_type2_bernoulli_numbers(n_max: usize) -> Vec<UniPoly> {
    let order = n_max + 1;
    let s = build_log1p_scaled(order).div(&degenerate_half_combo(-1, order)).unwrap();
    s.numbers().into_iter().map(|p| expect_uni(p, Var::Lambda)).collect()
}

/// `b_{n,lambda}(x)` from `t e_lambda^x(t) / (e_lambda^{1/2}(t) - e_lambda^{-1/2}(t))`.
pub fn carlitz_degenerate_type2_bernoulli_table(n_max: usize) -> Vec<BiPoly> {
    let order = n_max + 1;
    let num = promote(t_series(order), Ring::QXLambda).mul(&build_degenerate_exp(&ExpArg::X, order)).unwrap();
    let s = num.div(&promote(degenerate_half_combo(-1, order), Ring::QXLambda)).unwrap();
    s.numbers()
}

pub fn carlitz_degenerate_type2_bernoulli_poly(n: usize) -> BiPoly {
    carlitz_degenerate_type2_bernoulli_table(n).swap_remove(n)
}

/// `b_{n,lambda} = b_{n,lambda}(0)` as polynomials in `lambda`.
pub fn carlitz_degenerate_type2_bernoulli_numbers(n_max: usize) -> Vec<UniPoly> {
    let order = n_max + 1;
    let s = promote(t_series(order), Ring::QLambda).div(&degenerate_half_combo(-1, order)).unwrap();
    s.numbers().into_iter().map(|p| expect_uni(p, Var::Lambda)).collect()
}

/// `E_{n,lambda}(x)` from `2 e_lambda^x(t) / (e_lambda^{1/2}(t) + e_lambda^{-1/2}(t))`.
pub fn degenerate_type2_euler_table(n_max: usize) -> Vec<BiPoly> {
    let order = n_max;
    let num = two(Ring::QXLambda, order).mul(&build_degenerate_exp(&ExpArg::X, order)).unwrap();
    let s = num.div(&promote(degenerate_half_combo(1, order), Ring::QXLambda)).unwrap();
    s.numbers()
}

pub fn degenerate_type2_euler_poly(n: usize) -> BiPoly {
    degenerate_type2_euler_table(n).swap_remove(n)
}

fn degenerate_euler_kernel(n_max: usize) -> Series {
    two(Ring::QLambda, n_max).div(&degenerate_half_combo(1, n_max)).unwrap()
}

/// `E_{n,lambda} = E_{n,lambda}(0)`.
pub fn degenerate_type2_euler_numbers(n_max: usize) -> Vec<UniPoly> {
    degenerate_type2_euler_order_table(n_max, 1)
}

/// `E_{n,lambda}^{(r)}` for `n <= n_max`.
pub fn degenerate_type2_euler_order_table(n_max: usize, r: u32) -> Vec<UniPoly> {
    degenerate_euler_kernel(n_max)
        .pow(r)
        .numbers()
        .into_iter()
        .map(|p| expect_uni(p, Var::Lambda))
        .collect()
}

pub fn degenerate_type2_euler_order(n: usize, r: u32) -> UniPoly {
    degenerate_type2_euler_order_table(n, r).swap_remove(n)
}

/// Rows `0..=n_max` of a family as generic values. For Stirling numbers the
/// order is the second index `l`.
pub fn family_table(id: FamilyId, n_max: usize) -> Vec<FamilyValue> {
    let r = id.order.unwrap_or(1);
    let uni = |v: Vec<UniPoly>| v.into_iter().map(FamilyValue::Uni).collect();
    let num = |v: Vec<Rational>| v.into_iter().map(FamilyValue::Number).collect();
    let bi = |v: Vec<BiPoly>| v.into_iter().map(FamilyValue::Bi).collect();
    match id.tag {
        FamilyTag::ClassicalBernoulli => uni(classical_bernoulli_table(n_max)),
        FamilyTag::ClassicalEuler => uni(classical_euler_table(n_max)),
        FamilyTag::Type2Bernoulli => uni(type2_bernoulli_table(n_max)),
        FamilyTag::Type2Euler => uni(type2_euler_table(n_max)),
        FamilyTag::Type2BernoulliOrderR => num(type2_bernoulli_order_table(n_max, r)),
        FamilyTag::Type2EulerOrderR => num(type2_euler_order_table(n_max, r)),
        FamilyTag::FullyDegenerateType2Bernoulli => bi(fully_degenerate_type2_bernoulli_table(n_max)),
        FamilyTag::CarlitzDegenerateType2Bernoulli => bi(carlitz_degenerate_type2_bernoulli_table(n_max)),
        FamilyTag::DegenerateType2Euler => bi(degenerate_type2_euler_table(n_max)),
        FamilyTag::DegenerateType2EulerOrderR => uni(degenerate_type2_euler_order_table(n_max, r)),
        FamilyTag::DegenerateStirling1 => {
            (0..=n_max).map(|n| FamilyValue::Uni(degenerate_stirling1(n, r as usize))).collect()
        }
        FamilyTag::CentralFactorialT => num(central_factorial_table(n_max, r)),
        FamilyTag::Daehee => num(daehee_table(n_max)),
    }
}

/// Shift helper shared by the oracle checks: `p(x + 1/2)`.
pub fn shift_half(p: &UniPoly) -> UniPoly {
    p.compose_affine(&Rational::one(), &half())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ux(cs: &[&str]) -> UniPoly {
        UniPoly::new(Var::X, cs.iter().map(|s| r(s)).collect())
    }

    fn ul(cs: &[&str]) -> UniPoly {
        UniPoly::new(Var::Lambda, cs.iter().map(|s| r(s)).collect())
    }

    #[test]
    fn classical_numbers_match_polynomials_at_zero() {
        let b = classical_bernoulli_table(12);
        let e = classical_euler_table(12);
        let zero = r("0");
        for (n, (bn, en)) in classical_bernoulli_numbers(12).into_iter().zip(classical_euler_numbers(12)).enumerate() {
            assert_eq!(bn, b[n].eval(&zero));
            assert_eq!(en, e[n].eval(&zero));
        }
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classical_bernoulli_poly(0), ux(&["1"]));
        assert_eq!(classical_bernoulli_poly(1), ux(&["-1/2", "1"]));
        assert_eq!(classical_bernoulli_poly(4).eval(&r("0")), r("-1/30"));
        assert_eq!(classical_euler_poly(0), ux(&["1"]));
        assert_eq!(classical_euler_poly(1), ux(&["-1/2", "1"]));
        assert_eq!(classical_euler_poly(2).eval(&r("1/2")), r("-1/4"));
    }

    #[test]
    fn type2_examples() {
        assert_eq!(type2_bernoulli_poly(1), ux(&["0", "1"]));
        assert_eq!(type2_bernoulli_poly(2), ux(&["-1/12", "0", "1"]));
        assert_eq!(type2_bernoulli_poly(4).eval(&r("0")), r("7/240"));
        assert_eq!(type2_euler_poly(1), ux(&["0", "1"]));
        assert_eq!(type2_euler_poly(2), ux(&["-1/4", "0", "1"]));
        assert_eq!(type2_euler_poly(4).eval(&r("0")), r("5/16"));
        assert_eq!(type2_euler_numbers(4)[4], r("5/16"));
        assert_eq!(type2_bernoulli_numbers(4)[4], r("7/240"));
    }

    #[test]
    fn order_r_examples() {
        for rr in 1..=5 {
            assert_eq!(type2_bernoulli_order(0, rr), r("1"));
            assert_eq!(type2_euler_order(0, rr), r("1"));
        }
        assert_eq!(type2_bernoulli_order(2, 2), r("-1/6"));
        assert_eq!(type2_bernoulli_order(1, 3), r("0"));
        assert_eq!(type2_euler_order(2, 2), r("-1/2"));
        assert_eq!(type2_euler_order(3, 4), r("0"));
    }

    #[test]
    fn central_factorial_examples() {
        assert_eq!(central_factorial_t(3, 3), r("1"));
        assert_eq!(central_factorial_t(3, 1), r("1/4"));
        assert_eq!(central_factorial_t(4, 2), r("1"));
        assert_eq!(central_factorial_t(1, 2), r("0"));
        // T(m, r) vanishes unless m and r share parity
        assert_eq!(central_factorial_t(5, 2), r("0"));
    }

    #[test]
    fn daehee_examples() {
        assert_eq!(daehee(0), r("1"));
        assert_eq!(daehee(1), r("-1/2"));
        assert_eq!(daehee(2), r("2/3"));
        assert_eq!(daehee(3), r("-3/2"));
        for (n, d) in daehee_table(20).into_iter().enumerate() {
            assert_eq!(d, daehee_closed_form(n));
        }
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(degenerate_stirling1(4, 4), ul(&["1"]));
        assert_eq!(degenerate_stirling1(3, 1), ul(&["0", "0", "2"]));
        assert!(degenerate_stirling1(2, 1).eval(&r("0")).is_zero());
        assert!(degenerate_stirling1(2, 3).is_zero());
    }

    #[test]
    fn stirling_row_sum_reconstructs_falling_factorial() {
        for n in 0..=14 {
            let ff = falling_factorial(&BiPoly::x(), n, &Rational::one());
            let rebuilt: BiPoly = degenerate_stirling1_row(n)
                .into_iter()
                .enumerate()
                .map(|(l, s)| &BiPoly::from(s) * &BiPoly::monomial(l, 0, Rational::one()))
                .sum();
            assert_eq!(rebuilt, ff, "n = {n}");
        }
    }

    #[test]
    fn degenerate_examples() {
        let fd = fully_degenerate_type2_bernoulli_table(2);
        assert_eq!(fd[0], BiPoly::one());
        assert_eq!(fd[2].substitute(Var::X, &r("0")), ul(&["-1/12"]));

        let cb = carlitz_degenerate_type2_bernoulli_table(2);
        assert_eq!(cb[1].substitute(Var::X, &r("0")), ul(&["0", "1/2"]));
        let expect = BiPoly::new(vec![vec![r("-1/12"), r("0"), r("-1/6")], vec![], vec![r("1")]]);
        assert_eq!(cb[2], expect);

        let de = degenerate_type2_euler_table(2);
        assert_eq!(de[1], BiPoly::x());
        assert_eq!(de[2].substitute(Var::X, &r("0")), ul(&["-1/4"]));

        assert_eq!(degenerate_type2_euler_order(0, 3), ul(&["1"]));
    }

    #[test]
    fn numbers_tables_match_polynomials_at_zero() {
        let zero = r("0");
        let fd = fully_degenerate_type2_bernoulli_table(6);
        let cb = carlitz_degenerate_type2_bernoulli_table(6);
        let de = degenerate_type2_euler_table(6);
        for n in 0..=6 {
            assert_eq!(fully_degenerate_type2_bernoulli_numbers(6)[n], fd[n].substitute(Var::X, &zero));
            assert_eq!(carlitz_degenerate_type2_bernoulli_numbers(6)[n], cb[n].substitute(Var::X, &zero));
            assert_eq!(degenerate_type2_euler_numbers(6)[n], de[n].substitute(Var::X, &zero));
        }
    }

    #[test]
    fn family_ids() {
        assert!(FamilyId::new(FamilyTag::Type2BernoulliOrderR, None).is_err());
        assert!(FamilyId::new(FamilyTag::Type2BernoulliOrderR, Some(0)).is_err());
        assert!(FamilyId::new(FamilyTag::Daehee, Some(2)).is_err());
        assert!(FamilyId::new(FamilyTag::Daehee, None).is_ok());
        for t in FamilyTag::ALL {
            assert_eq!(t.name().parse::<FamilyTag>().unwrap(), t);
        }
        assert!("nope".parse::<FamilyTag>().is_err());
    }

    #[test]
    fn family_table_lengths() {
        for t in FamilyTag::ALL {
            let id = FamilyId::new(t, t.needs_order().then_some(2)).unwrap();
            assert_eq!(family_table(id, 4).len(), 5, "{t}");
        }
    }
}
