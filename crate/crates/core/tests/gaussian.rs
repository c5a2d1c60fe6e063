use haar_core::gaussian::{gaussian_f_at_zero, gaussian_f_by_recursion, gaussian_f_closed_form, gaussian_f_quadrature};
use num_complex::Complex64;

#[test]
fn recursion_matches_closed_form() {
    for m in 0..=8 {
        for n in 0..=m {
            assert_eq!(gaussian_f_by_recursion(m, n), gaussian_f_closed_form(m, n), "m={m} n={n}");
        }
    }
}

#[test]
fn value_at_origin() {
    for m in 0..=8 {
        for n in 0..=8 {
            assert_eq!(gaussian_f_closed_form(m, n).at_zero(), gaussian_f_at_zero(m, n), "m={m} n={n}");
        }
    }
    assert_eq!(gaussian_f_at_zero(3, 3), num_rational::BigRational::from_integer(6.into()));
}

#[test]
fn conjugation_symmetry() {
    let a = Complex64::new(0.4, -0.25);
    for m in 0..=8 {
        for n in 0..=8 {
            assert_eq!(gaussian_f_closed_form(m, n).conjugate_reflected(), gaussian_f_closed_form(n, m));
            let lhs = gaussian_f_closed_form(m, n).evaluate(a);
            let rhs = gaussian_f_closed_form(n, m).evaluate(-a).conj();
            assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()), "m={m} n={n}");
        }
    }
}

#[test]
fn quadrature_agrees() {
    for a in [Complex64::new(0.3, 0.1), Complex64::new(0.0, -0.7)] {
        for m in 0..=4 {
            for n in 0..=4 {
                let exact = gaussian_f_closed_form(m, n).evaluate(a);
                let numeric = gaussian_f_quadrature(m, n, a, 0.05);
                assert!((numeric - exact).norm() <= 1e-8 * exact.norm(), "m={m} n={n} a={a}: {numeric} vs {exact}");
            }
        }
    }
}
