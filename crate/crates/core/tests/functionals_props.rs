use proptest::prelude::*;

use t2poly::padic::{
    bosonic_integral, fermionic_integral, iterated_integral, witt_order, Kind, MultiIntegrand, PolyIntegrand,
};
use t2poly::{BiPoly, Rational};

fn int(n: i64) -> Rational {
    Rational::from(n)
}

fn integrand() -> impl Strategy<Value = PolyIntegrand> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 0..8).prop_map(|cs| {
        let cs: Vec<Rational> = cs.into_iter().map(|(a, b)| Rational::new(a, b).unwrap()).collect();
        PolyIntegrand::from_rationals(&cs).unwrap()
    })
}

proptest! {
    #[test]
    fn unit_shift_bosonic(f in integrand()) {
        let lhs = &bosonic_integral(&f.shift(&int(1))) - &bosonic_integral(&f);
        prop_assert_eq!(lhs, f.derivative().eval(&Rational::zero()));
    }

    #[test]
    fn unit_shift_fermionic(f in integrand()) {
        let lhs = &fermionic_integral(&f.shift(&int(1))) + &fermionic_integral(&f);
        prop_assert_eq!(lhs, f.eval(&Rational::zero()).scale(&int(2)));
    }

    #[test]
    fn shift_by_m(f in integrand(), m in 1i64..=6) {
        let df = f.derivative();
        let sum: BiPoly = (0..m).map(|l| df.eval(&int(l))).sum();
        prop_assert_eq!(bosonic_integral(&f.shift(&int(m))), &sum + &bosonic_integral(&f));
    }

    #[test]
    fn shift_by_odd_d(f in integrand(), h in 0i64..=2) {
        let d = 2 * h + 1;
        let sum: BiPoly = (0..d)
            .map(|l| if l % 2 == 0 { f.eval(&int(l)) } else { -&f.eval(&int(l)) })
            .sum();
        let lhs = &fermionic_integral(&f.shift(&int(d))) + &fermionic_integral(&f);
        prop_assert_eq!(lhs, sum.scale(&int(2)));
    }

    #[test]
    fn bosonic_distribution(f in integrand(), d in prop::sample::select(vec![1i64, 2, 3, 5])) {
        let sum: BiPoly = (0..d).map(|a| bosonic_integral(&f.compose_affine(&int(a), &int(d)))).sum();
        prop_assert_eq!(bosonic_integral(&f), sum.scale(&int(d).recip().unwrap()));
    }

    #[test]
    fn fermionic_distribution(f in integrand(), d in prop::sample::select(vec![1i64, 3, 5])) {
        let sum: BiPoly = (0..d)
            .map(|a| {
                let v = fermionic_integral(&f.compose_affine(&int(a), &int(d)));
                if a % 2 == 0 { v } else { -&v }
            })
            .sum();
        prop_assert_eq!(fermionic_integral(&f), sum);
    }

    #[test]
    fn linearity(f in integrand(), g in integrand(), c in -5i64..=5) {
        for kind in [Kind::Bosonic, Kind::Fermionic] {
            let lhs = f.add(&g.scale(&int(c))).integrate(kind);
            let rhs = &f.integrate(kind) + &g.integrate(kind).scale(&int(c));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn moments() {
    let y = PolyIntegrand::y();
    assert_eq!(bosonic_integral(&y), BiPoly::constant(Rational::new(-1, 2).unwrap()));
    assert_eq!(fermionic_integral(&y), BiPoly::constant(Rational::new(-1, 2).unwrap()));
    assert_eq!(bosonic_integral(&PolyIntegrand::constant(BiPoly::one())), BiPoly::one());
}

#[test]
fn product_integrand_factorizes() {
    // int int y1^2 y2 = B_2 B_1
    let f = MultiIntegrand::var(2, 0).pow(2).unwrap().mul(&MultiIntegrand::var(2, 1)).unwrap();
    let v = iterated_integral(&f, Kind::Bosonic);
    assert_eq!(v, BiPoly::constant(Rational::new(-1, 12).unwrap()));
}

#[test]
fn order_two_witt_small() {
    // b_2^(2) = 2 b_2 = -1/6
    assert_eq!(witt_order(2, 2, Kind::Bosonic).unwrap(), BiPoly::constant(Rational::new(-1, 6).unwrap()));
}
