//! Integer combinatorics and the generalized falling factorial.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::BiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `C(n, k)`, zero outside `0..=n`. Negative `n` is rejected.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("binomial with negative n = {n}")));
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i) * (n - i) / (i + 1) = C(n, i + 1)
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}

/// Infallible binomial for the many internal call sites with `n, k` in range.
pub(crate) fn binom(n: usize, k: usize) -> BigInt {
    binomial(n as i64, k as i64).expect("nonnegative n")
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `n! / (parts_0! parts_1! ...)`; the parts must sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigInt> {
    let total: usize = parts.iter().sum();
    if total != n {
        return Err(Error::InvalidArgument(format!(
            "multinomial parts sum to {total}, expected {n}"
        )));
    }
    let den = parts.iter().fold(BigInt::one(), |acc, &p| acc * factorial(p));
    Ok(factorial(n) / den)
}

/// `(base)_{n, s*lambda} = prod_{j<n} (base - j*s*lambda)`, fully expanded.
pub fn falling_factorial(base: &BiPoly, n: usize, lambda_scale: &Rational) -> BiPoly {
    let mut acc = BiPoly::one();
    for j in 0..n {
        let step = lambda_scale * &Rational::from(j);
        let factor = base - &BiPoly::lambda().scale(&step);
        acc = &acc * &factor;
    }
    acc
}

/// Iterates all compositions of `n` into `r` nonnegative parts, in
/// lexicographic order.
pub fn compositions(n: usize, r: usize) -> Compositions {
    Compositions { n, parts: None, r }
}

pub struct Compositions {
    n: usize,
    r: usize,
    parts: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.r == 0 {
            return None;
        }
        match &mut self.parts {
            None => {
                let mut p = vec![0; self.r];
                p[self.r - 1] = self.n;
                self.parts = Some(p.clone());
                Some(p)
            }
            Some(p) => {
                // rightmost position before the last that can be bumped
                let r = p.len();
                let mut i = r - 1;
                loop {
                    if i == 0 {
                        return None;
                    }
                    i -= 1;
                    let tail: usize = p[i + 1..].iter().sum();
                    if tail > 0 {
                        p[i] += 1;
                        for q in p[i + 1..].iter_mut() {
                            *q = 0;
                        }
                        p[r - 1] = tail - 1;
                        return Some(p.clone());
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Var;

    fn pascal(n: usize, k: usize) -> BigInt {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row[k].clone()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2).unwrap(), BigInt::from(10));
        assert_eq!(binomial(7, 0).unwrap(), BigInt::from(1));
        assert_eq!(binomial(30, 15).unwrap(), BigInt::from(155117520u64));
        assert_eq!(pascal(30, 15), BigInt::from(155117520u64));
        assert_eq!(binomial(4, 5).unwrap(), BigInt::zero());
        assert_eq!(binomial(4, -1).unwrap(), BigInt::zero());
        assert!(binomial(-1, 0).is_err());
    }

    #[test]
    fn binomial_matches_pascal() {
        for n in 0..=25 {
            for k in 0..=n {
                assert_eq!(binomial(n as i64, k as i64).unwrap(), pascal(n, k));
            }
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(2, &[0, 2]).unwrap(), BigInt::from(1));
        assert_eq!(multinomial(2, &[1, 1]).unwrap(), BigInt::from(2));
        assert_eq!(multinomial(6, &[2, 2, 2]).unwrap(), BigInt::from(90));
        // iterated binomial: C(6,2) C(4,2) C(2,2)
        assert_eq!(pascal(6, 2) * pascal(4, 2), BigInt::from(90));
        assert!(multinomial(5, &[2, 2]).is_err());
    }

    #[test]
    fn multinomial_two_parts_is_binomial() {
        for n in 0..=20 {
            for k in 0..=n {
                assert_eq!(multinomial(n, &[k, n - k]).unwrap(), binom(n, k));
            }
        }
    }

    #[test]
    fn falling_factorial_examples() {
        let x = BiPoly::x();
        assert_eq!(falling_factorial(&x, 0, &Rational::one()), BiPoly::one());
        // x^3 - 3 lambda x^2 + 2 lambda^2 x
        let expect = BiPoly::from_terms(&[(3, 0, 1), (2, 1, -3), (1, 2, 2)]);
        assert_eq!(falling_factorial(&x, 3, &Rational::one()), expect);
        let three = BiPoly::constant(Rational::from(3));
        assert_eq!(falling_factorial(&three, 1, &Rational::from(2)), three);
    }

    #[test]
    fn falling_factorial_lambda_zero_is_power() {
        let x = BiPoly::x();
        for n in 0..=20 {
            let ff = falling_factorial(&x, n, &Rational::one());
            let at0 = ff.substitute(Var::Lambda, &Rational::zero());
            assert_eq!(at0, super::super::poly::UniPoly::monomial(Var::X, n, Rational::one()));
        }
    }

    #[test]
    fn compositions_enumerate() {
        let all: Vec<_> = compositions(2, 2).collect();
        assert_eq!(all, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(4, 3).count(), 15);
        assert_eq!(compositions(0, 3).collect::<Vec<_>>(), vec![vec![0, 0, 0]]);
        assert_eq!(compositions(3, 1).collect::<Vec<_>>(), vec![vec![3]]);
    }
}
