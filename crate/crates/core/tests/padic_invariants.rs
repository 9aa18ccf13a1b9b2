use t2poly::padic::numeric::{riemann_direct, precision_loss};
use t2poly::padic::{convergence_check, fermionic_riemann, padic_valuation, volkenborn_riemann, Kind, PadicApprox};
use t2poly::{Error, Rational, UniPoly, Var};

fn poly(cs: &[i64]) -> UniPoly {
    UniPoly::from_ints(Var::X, cs)
}

#[test]
fn closed_forms_match_direct_sums() {
    for p in [3u64, 5, 7] {
        for stage in 1..=3 {
            for f in [poly(&[2, -1, 0, 3]), poly(&[0, 0, 0, 0, 1]), poly(&[1, 1, 1])] {
                assert_eq!(volkenborn_riemann(&f, p, stage).unwrap(), riemann_direct(&f, p, stage, Kind::Bosonic).unwrap());
                assert_eq!(fermionic_riemann(&f, p, stage).unwrap(), riemann_direct(&f, p, stage, Kind::Fermionic).unwrap());
            }
        }
    }
}

#[test]
fn error_bound_for_monomials() {
    for kind in [Kind::Bosonic, Kind::Fermionic] {
        for p in [3u64, 5, 7, 11] {
            for k in 0..=6 {
                let mut cs = vec![0; k + 1];
                cs[k] = 1;
                let rep = convergence_check(&poly(&cs), p, kind, 5).unwrap();
                assert!(rep.is_non_decreasing(), "{} p={p} k={k}", kind.name());
                assert!(rep.meets_bound(), "{} p={p} k={k}", kind.name());
            }
        }
    }
}

#[test]
fn precision_loss_is_from_denominators() {
    // B_2 = 1/6 has no 5 or 7 in its denominator, B_4 = -1/30 has 5
    assert_eq!(precision_loss(&poly(&[0, 0, 1]), 7, Kind::Bosonic), 0);
    assert!(precision_loss(&poly(&[0, 0, 0, 0, 1]), 5, Kind::Bosonic) >= 0);
    assert_eq!(precision_loss(&poly(&[1]), 5, Kind::Fermionic), 0);
}

#[test]
fn concrete_residues() {
    let v = volkenborn_riemann(&poly(&[0, 0, 1]), 5, 2).unwrap();
    assert_eq!(v, Rational::from(196));
    let sixth = PadicApprox::from_rational(&Rational::new(1, 6).unwrap(), 5, 2).unwrap();
    assert_eq!(sixth.residue(), &21.into());
    let s = fermionic_riemann(&poly(&[0, 1]), 5, 3).unwrap();
    assert_eq!(PadicApprox::from_rational(&s, 5, 3).unwrap().residue(), &62.into());
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(volkenborn_riemann(&poly(&[1]), 2, 1), Err(Error::NotOddPrime(2))));
    assert!(matches!(volkenborn_riemann(&poly(&[1]), 9, 1), Err(Error::NotOddPrime(9))));
    let f = UniPoly::new(Var::X, vec![Rational::new(1, 5).unwrap()]);
    assert!(matches!(volkenborn_riemann(&f, 5, 1), Err(Error::DenominatorDivisibleByP(5))));
    assert!(matches!(padic_valuation(&Rational::zero(), 5), Err(Error::ZeroValuation)));
    assert!(convergence_check(&poly(&[1]), 5, Kind::Bosonic, 7).is_err());
}
