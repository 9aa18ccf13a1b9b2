//! Riemann sums for the bosonic and fermionic integrals at finite stage `N`
//! and their p-adic distance to the exact functional values.
//!
//! All sums are evaluated exactly in `Q` through closed forms (Faulhaber for
//! the averaged sum, Euler polynomials for the alternating one) and only then
//! compared p-adically.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::functionals::{Kind, PolyIntegrand};
use crate::algebra::combinatorics::binom;
use crate::algebra::{Rational, UniPoly};
use crate::error::{Error, Result};
use crate::families::{classical_bernoulli_table, classical_euler_table};

/// Largest stage accepted by [`convergence_check`].
pub const MAX_STAGE: u32 = 6;

/// Trial division; the primes in play are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

fn big_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// `v` with `q = p^v * (unit)`; the p-adic norm of `q` is `p^{-v}`.
pub fn padic_valuation(q: &Rational, p: u64) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let pb = BigInt::from(p);
    Ok(big_valuation(q.numer(), &pb) - big_valuation(q.denom(), &pb))
}

/// Valuation with zero mapped to `None` (infinite).
fn valuation_or_inf(q: &Rational, p: u64) -> Option<i64> {
    padic_valuation(q, p).ok()
}

/// A p-adic integer known modulo `p^known`, stored as a residue modulo `p^K`.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicApprox {
    p: u64,
    precision: u32,
    residue: BigInt,
    known: u32,
}

impl PadicApprox {
    /// Reduces a `p`-integral rational modulo `p^precision`.
    pub fn from_rational(q: &Rational, p: u64, precision: u32) -> Result<Self> {
        check_odd_prime(p)?;
        let pb = BigInt::from(p);
        if (q.denom() % &pb).is_zero() {
            return Err(Error::DenominatorDivisibleByP(p));
        }
        let modulus = pb.pow(precision);
        let inv = mod_inverse(q.denom(), &modulus)
            .ok_or_else(|| Error::Precondition("denominator not invertible".into()))?;
        let residue = (q.numer() * inv).mod_floor(&modulus);
        Ok(PadicApprox { p, precision, residue, known: precision })
    }

    /// Marks only the first `known` digits as trusted.
    pub fn with_known(mut self, known: u32) -> Self {
        self.known = known.min(self.precision);
        self
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn known_precision(&self) -> u32 {
        self.known
    }
}

impl fmt::Debug for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{} (known to {}^{})", self.residue, self.p, self.precision, self.p, self.known)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn check_integrand(f: &UniPoly, p: u64, stage: u32) -> Result<()> {
    check_odd_prime(p)?;
    if stage == 0 {
        return Err(Error::InvalidArgument("stage N must be at least 1".into()));
    }
    let pb = BigInt::from(p);
    if f.coeffs().iter().any(|c| (c.denom() % &pb).is_zero()) {
        return Err(Error::DenominatorDivisibleByP(p));
    }
    Ok(())
}

fn p_pow(p: u64, n: u32) -> Rational {
    Rational::from(BigInt::from(p).pow(n))
}

/// `(1/p^N) sum_{x < p^N} f(x)`, via `sum_{x<M} x^k = (B_{k+1}(M) - B_{k+1}) / (k+1)`.
pub fn volkenborn_riemann(f: &UniPoly, p: u64, stage: u32) -> Result<Rational> {
    check_integrand(f, p, stage)?;
    let m = p_pow(p, stage);
    let deg = f.coeffs().len();
    let bern = classical_bernoulli_table(deg);
    let zero = Rational::zero();
    let total: Rational = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(k, a)| {
            let b = &bern[k + 1];
            let s = (&b.eval(&m) - &b.eval(&zero)).checked_div(&Rational::from(k + 1)).expect("k + 1 > 0");
            a * &s
        })
        .sum();
    total.checked_div(&m)
}

/// `sum_{x < p^N} (-1)^x f(x)`. For odd `M`,
/// `sum_{x<M} (-1)^x x^k = (E*_k(M) + E*_k(0)) / 2`.
pub fn fermionic_riemann(f: &UniPoly, p: u64, stage: u32) -> Result<Rational> {
    check_integrand(f, p, stage)?;
    let m = p_pow(p, stage);
    let euler = classical_euler_table(f.coeffs().len());
    let zero = Rational::zero();
    Ok(f.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(k, a)| {
            let e = &euler[k];
            a * &(&(&e.eval(&m) + &e.eval(&zero)) * &Rational::half())
        })
        .sum())
}

/// Term-by-term summation; only sensible for small `p^N`.
pub fn riemann_direct(f: &UniPoly, p: u64, stage: u32, kind: Kind) -> Result<Rational> {
    check_integrand(f, p, stage)?;
    let m = BigInt::from(p).pow(stage).to_u64().ok_or_else(|| Error::InvalidArgument("p^N too large".into()))?;
    let mut acc = Rational::zero();
    for x in 0..m {
        let v = f.eval(&Rational::from(x));
        match kind {
            Kind::Bosonic => acc += &v,
            Kind::Fermionic if x % 2 == 0 => acc += &v,
            Kind::Fermionic => acc -= &v,
        }
    }
    match kind {
        Kind::Bosonic => acc.checked_div(&p_pow(p, stage)),
        Kind::Fermionic => Ok(acc),
    }
}

pub fn riemann(f: &UniPoly, p: u64, stage: u32, kind: Kind) -> Result<Rational> {
    match kind {
        Kind::Bosonic => volkenborn_riemann(f, p, stage),
        Kind::Fermionic => fermionic_riemann(f, p, stage),
    }
}

/// Exact value of the integral of `f`.
pub fn exact_integral(f: &UniPoly, kind: Kind) -> Result<Rational> {
    let integrand = PolyIntegrand::from_rationals(f.coeffs())?;
    Ok(integrand.integrate(kind).as_constant().expect("rational integrand"))
}

/// Largest precision loss `c` such that the stage-`N` error has valuation
/// at least `N - c`, read off the closed-form error expansion.
///
/// Bosonic error: `sum_k a_k sum_{j<k} C(k+1,j) B_j / (k+1) * p^{N(k-j)}`.
/// Fermionic error: `sum_k a_k sum_{j<k} C(k,j) E*_j / 2 * p^{N(k-j)}`.
pub fn precision_loss(f: &UniPoly, p: u64, kind: Kind) -> i64 {
    let deg = f.coeffs().len();
    // B_j for the bosonic sum, E*_j for the fermionic one
    let numbers = &kind.moments()[..=deg];
    let mut loss = 0i64;
    for (k, a) in f.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, num) in numbers.iter().enumerate().take(k) {
            let weight = match kind {
                Kind::Bosonic => Rational::new(binom(k + 1, j), BigInt::from(k + 1)).expect("k + 1 > 0"),
                Kind::Fermionic => Rational::new(binom(k, j), BigInt::from(2)).expect("2 > 0"),
            };
            let term = &(a * &weight) * num;
            if let Some(v) = valuation_or_inf(&term, p) {
                loss = loss.max(-v);
            }
        }
    }
    loss
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub stage: u32,
    pub approx: Rational,
    /// `approx` reduced modulo `p^N` when it is `p`-integral.
    pub residue: Option<PadicApprox>,
    /// Valuation of `approx - exact`; `None` when the error is exactly zero.
    pub error_valuation: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub p: u64,
    pub kind: Kind,
    pub exact: Rational,
    pub precision_loss: i64,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    /// Error valuations never decrease with `N` (zero error counts as infinite).
    pub fn is_non_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| match (w[0].error_valuation, w[1].error_valuation) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a <= b,
        })
    }

    /// Every stage meets `valuation >= N - c`.
    pub fn meets_bound(&self) -> bool {
        self.rows.iter().all(|r| match r.error_valuation {
            None => true,
            Some(v) => v >= r.stage as i64 - self.precision_loss,
        })
    }
}

/// Riemann sums at `N = 1..=n_max` against the exact integral.
pub fn convergence_check(f: &UniPoly, p: u64, kind: Kind, n_max: u32) -> Result<ConvergenceReport> {
    if n_max == 0 || n_max > MAX_STAGE {
        return Err(Error::InvalidArgument(format!("N_max must be in 1..={MAX_STAGE}, got {n_max}")));
    }
    check_integrand(f, p, 1)?;
    let exact = exact_integral(f, kind)?;
    let loss = precision_loss(f, p, kind);
    let rows = (1..=n_max)
        .map(|stage| {
            let approx = riemann(f, p, stage, kind)?;
            let err = &approx - &exact;
            let known = (stage as i64 - loss).clamp(0, stage as i64) as u32;
            let residue = PadicApprox::from_rational(&approx, p, stage).ok().map(|r| r.with_known(known));
            Ok(ConvergenceRow { stage, approx, residue, error_valuation: valuation_or_inf(&err, p) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport { p, kind, exact, precision_loss: loss, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Var;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::X, cs)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&q("50"), 5).unwrap(), 2);
        assert_eq!(padic_valuation(&q("1/6"), 5).unwrap(), 0);
        assert_eq!(padic_valuation(&q("3/5"), 5).unwrap(), -1);
        assert!(matches!(padic_valuation(&q("0"), 5), Err(Error::ZeroValuation)));
    }

    #[test]
    fn volkenborn_examples() {
        assert_eq!(volkenborn_riemann(&poly(&[1]), 5, 3).unwrap(), q("1"));
        let v = volkenborn_riemann(&poly(&[0, 0, 1]), 5, 2).unwrap();
        assert_eq!(v, q("196"));
        assert!(padic_valuation(&(&v - &q("1/6")), 5).unwrap() >= 2);
        let v = volkenborn_riemann(&poly(&[0, 1]), 7, 3).unwrap();
        assert_eq!(v, q("171"));
        assert_eq!(padic_valuation(&(&v + &q("1/2")), 7).unwrap(), 3);
    }

    #[test]
    fn fermionic_examples() {
        assert_eq!(fermionic_riemann(&poly(&[1]), 5, 2).unwrap(), q("1"));
        let v = fermionic_riemann(&poly(&[0, 1]), 5, 3).unwrap();
        assert_eq!(v, q("62"));
        assert_eq!(PadicApprox::from_rational(&q("-1/2"), 5, 3).unwrap().residue(), &BigInt::from(62));
        let v = fermionic_riemann(&poly(&[0, 0, 1]), 5, 2).unwrap();
        assert!(padic_valuation(&v, 5).unwrap() >= 2);
    }

    #[test]
    fn closed_forms_match_direct_summation() {
        for p in [3u64, 5] {
            for stage in 1..=(if p == 3 { 5 } else { 4 }) {
                for f in [poly(&[1]), poly(&[0, 1]), poly(&[2, -1, 3]), poly(&[0, 0, 0, 0, 1]), poly(&[1, 0, 0, 0, 0, 0, -2])] {
                    for kind in [Kind::Bosonic, Kind::Fermionic] {
                        assert_eq!(riemann(&f, p, stage, kind).unwrap(), riemann_direct(&f, p, stage, kind).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(volkenborn_riemann(&poly(&[1]), 4, 1), Err(Error::NotOddPrime(4))));
        assert!(matches!(volkenborn_riemann(&poly(&[1]), 2, 1), Err(Error::NotOddPrime(2))));
        let f = UniPoly::new(Var::X, vec![q("1/5")]);
        assert!(matches!(fermionic_riemann(&f, 5, 1), Err(Error::DenominatorDivisibleByP(5))));
        assert!(convergence_check(&poly(&[1]), 5, Kind::Bosonic, 7).is_err());
    }

    #[test]
    fn convergence_examples() {
        let r = convergence_check(&poly(&[0, 1]), 5, Kind::Bosonic, 3).unwrap();
        assert_eq!(r.exact, q("-1/2"));
        let vals: Vec<_> = r.rows.iter().map(|r| r.error_valuation.unwrap()).collect();
        assert_eq!(vals, vec![1, 2, 3]);
        assert!(r.meets_bound() && r.is_non_decreasing());

        let r = convergence_check(&poly(&[0, 0, 1]), 5, Kind::Bosonic, 3).unwrap();
        assert!(r.rows.iter().all(|row| row.error_valuation.unwrap() >= row.stage as i64));

        let r = convergence_check(&poly(&[1]), 7, Kind::Bosonic, 2).unwrap();
        assert_eq!(r.exact, q("1"));
        assert!(r.rows.iter().all(|row| row.error_valuation.is_none()));

        let r = convergence_check(&poly(&[0, 1]), 5, Kind::Fermionic, 3).unwrap();
        assert_eq!(r.rows[2].residue.as_ref().unwrap().residue(), &BigInt::from(62));
    }

    #[test]
    fn padic_approx_reduces() {
        let a = PadicApprox::from_rational(&q("1/6"), 5, 2).unwrap();
        assert_eq!(a.residue(), &BigInt::from(21));
        assert!(PadicApprox::from_rational(&q("1/5"), 5, 2).is_err());
        assert_eq!(a.with_known(1).known_precision(), 1);
    }
}
