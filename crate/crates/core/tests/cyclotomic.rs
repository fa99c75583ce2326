mod common;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{o, random_cyclo};
use dwknot::cyclotomic::{cyclotomic_polynomial, CycloNumber, Order};

/// Floating-point embedding `ζ ↦ e^{2πi/n}`, an oracle independent of the
/// reduction modulo Φ_n.
fn embed(x: &CycloNumber) -> Complex64 {
    let n = x.order().get() as f64;
    x.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let c = c.numer().to_string().parse::<f64>().unwrap()
                / c.denom().to_string().parse::<f64>().unwrap();
            Complex64::from_polar(c, 2.0 * std::f64::consts::PI * k as f64 / n)
        })
        .sum()
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-8 * (1.0 + a.norm() + b.norm())
}

fn arb_order() -> impl Strategy<Value = Order> {
    prop::sample::select(vec![3i64, 5, 7, 9, 11, 15]).prop_map(o)
}

fn arb_pair() -> impl Strategy<Value = (CycloNumber, CycloNumber, CycloNumber)> {
    (arb_order(), any::<u64>()).prop_map(|(ord, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (
            random_cyclo(&mut rng, ord),
            random_cyclo(&mut rng, ord),
            random_cyclo(&mut rng, ord),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in arb_pair()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &CycloNumber::one(a.order()), a.clone());
    }

    #[test]
    fn arithmetic_matches_complex_embedding((a, b, _c) in arb_pair()) {
        prop_assert!(close(embed(&(&a + &b)), embed(&a) + embed(&b)));
        prop_assert!(close(embed(&(&a * &b)), embed(&a) * embed(&b)));
        prop_assert!(close(embed(&a.conj()), embed(&a).conj()));
        prop_assert!(close(embed(&a.mul_zeta(1)), embed(&a) * embed(&CycloNumber::zeta_pow(a.order(), 1))));
    }

    #[test]
    fn equality_is_modulo_the_cyclotomic_polynomial((a, _b, _c) in arb_pair(), shift in 0usize..8, k in -3i64..=3) {
        let ord = a.order();
        let n = ord.as_usize();
        let phi = cyclotomic_polynomial(ord.get());
        let mut coeffs = a.coeffs();
        coeffs.resize(n, BigRational::zero());
        // a + k·ζ^shift·Φ_n(ζ), written out coefficient by coefficient
        for (d, c) in phi.iter().enumerate() {
            coeffs[(d + shift) % n] += BigRational::from_integer(c * k);
        }
        let b = CycloNumber::from_coeffs(ord, &coeffs);
        prop_assert_eq!(&b, &a);
        prop_assert_eq!(b.canonicalize(), a.canonicalize());
    }

    #[test]
    fn zeta_has_order_n(ord in arb_order(), e in -50i64..50) {
        let n = ord.get();
        let z = CycloNumber::zeta_pow(ord, e);
        prop_assert_eq!(z.pow(n), CycloNumber::one(ord));
        prop_assert_eq!(CycloNumber::zeta_pow(ord, e + n as i64), z.clone());
        prop_assert_eq!(&z * &z.conj(), CycloNumber::one(ord));
    }

    #[test]
    fn half_powers_square_to_integer_powers(ord in arb_order(), x in -40i64..40) {
        let h = CycloNumber::zeta_half_pow(ord, x);
        prop_assert_eq!(&h * &h, CycloNumber::zeta_pow(ord, x));
        let want = Complex64::from_polar(1.0, std::f64::consts::PI * x as f64 / ord.get() as f64);
        // ζ^{x/2} is the square root that is itself an n-th root of unity
        prop_assert!(close(embed(&h), want) || close(embed(&h), -want));
        prop_assert_eq!(h.pow(ord.get()), CycloNumber::one(ord));
    }
}

#[test]
fn sum_of_all_roots_vanishes() {
    for n in [3, 5, 7, 9, 15] {
        let ord = o(n);
        let s = (0..n).fold(CycloNumber::zero(ord), |acc, k| {
            &acc + &CycloNumber::zeta_pow(ord, k)
        });
        assert!(s.is_zero(), "n={n}");
    }
}

#[test]
fn gauss_sum_squares_to_signed_n() {
    // (Σ_k ζ^{k²})² = (−1)^{(p−1)/2} p for an odd prime p.
    for p in [3i64, 5, 7, 11, 13] {
        let ord = o(p);
        let g = (0..p).fold(CycloNumber::zero(ord), |acc, k| {
            &acc + &CycloNumber::zeta_pow(ord, k * k)
        });
        let sign = if (p - 1) / 2 % 2 == 0 { 1 } else { -1 };
        assert_eq!(&g * &g, CycloNumber::from_integer(ord, sign * p), "p={p}");
    }
}

#[test]
fn real_parts_are_recognised_as_rationals() {
    let ord = o(3);
    let c = &CycloNumber::zeta_pow(ord, 1) + &CycloNumber::zeta_pow(ord, 2);
    assert_eq!(c, CycloNumber::from_integer(ord, -1));
    assert_eq!(
        c.as_integer().map(|k| k.to_string()),
        Some("-1".to_string())
    );
    assert!(CycloNumber::zeta_pow(ord, 1).as_rational().is_none());
}

#[test]
fn frac_powers() {
    let ord = o(5);
    // ζ^{1/3} is the cube root of ζ among the fifth roots of unity
    let r = CycloNumber::zeta_frac_pow(ord, 1, 3).unwrap();
    assert_eq!(r.pow(3), CycloNumber::zeta_pow(ord, 1));
    assert!(CycloNumber::zeta_frac_pow(o(9), 1, 3).is_err());
    assert!(Order::new(4).is_err());
}
