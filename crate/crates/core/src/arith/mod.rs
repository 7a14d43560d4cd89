//! Exact coefficient arithmetic: Laurent polynomials in `A` and their
//! specializations at roots of unity.

mod exact;
mod laurent;
mod specialize;

pub use exact::{fmt_gaussian, ArithError, ExactScalar, GaussianInt};
pub use laurent::{laurent_mul, LaurentPoly};
pub use specialize::{specialize, RootError, RootOfUnity};

#[cfg(test)]
mod props {
    use super::*;
    use num_complex::Complex;
    use proptest::prelude::*;

    fn laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..=6, -9i64..=9), 0..6).prop_map(LaurentPoly::from_terms)
    }

    fn eval(x: &LaurentPoly, root: RootOfUnity) -> Complex<f64> {
        let z = Complex::from_polar(1.0, std::f64::consts::PI * root.a() as f64 / root.b() as f64);
        x.terms().map(|(k, c)| z.powi(k as i32) * c.to_string().parse::<f64>().unwrap()).sum()
    }

    fn close(x: &ExactScalar, y: Complex<f64>, tol: f64) -> bool {
        (x.to_complex().unwrap() - y).norm() <= tol
    }

    proptest! {
        #[test]
        fn exact_specialization_is_a_ring_homomorphism(
            x in laurent(), y in laurent(), a in -7i64..=7, b in 1i64..=2,
        ) {
            prop_assume!(num_integer::Integer::gcd(&a, &b) == 1);
            let root = RootOfUnity::new(a, b).unwrap();
            let sx = specialize(&x, root);
            let sy = specialize(&y, root);
            prop_assert_eq!(specialize(&laurent_mul(&x, &y), root), sx.checked_mul(&sy).unwrap());
            prop_assert_eq!(specialize(&(&x + &y), root), sx.checked_add(&sy).unwrap());
        }

        #[test]
        fn float_specialization_is_a_ring_homomorphism(
            x in laurent(), y in laurent(), a in -11i64..=11, b in 3i64..=6,
        ) {
            prop_assume!(num_integer::Integer::gcd(&a, &b) == 1);
            let root = RootOfUnity::new(a, b).unwrap();
            let sx = specialize(&x, root).to_complex().unwrap();
            let sy = specialize(&y, root).to_complex().unwrap();
            prop_assert!(close(&specialize(&laurent_mul(&x, &y), root), sx * sy, 1e-12 * (1.0 + (sx * sy).norm())));
            prop_assert!(close(&specialize(&(&x + &y), root), sx + sy, 1e-12 * (1.0 + (sx + sy).norm())));
        }

        #[test]
        fn exact_cases_match_numeric_evaluation(x in laurent(), a in -7i64..=7, b in 1i64..=2) {
            prop_assume!(num_integer::Integer::gcd(&a, &b) == 1);
            let root = RootOfUnity::new(a, b).unwrap();
            let v = eval(&x, root);
            prop_assert!(close(&specialize(&x, root), v, 1e-12 * (1.0 + v.norm())));
        }
    }
}
