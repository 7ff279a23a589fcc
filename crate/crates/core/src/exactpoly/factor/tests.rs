use super::*;
use crate::exactpoly::{parse_poly, Ring, VarTable};
use num_traits::{One, Signed};
use proptest::prelude::*;

fn ring() -> Ring {
    VarTable::new(&["x", "y"]).unwrap()
}

fn p(s: &str) -> MultiPoly {
    parse_poly(s, &ring()).unwrap()
}

fn product(factors: &[(MultiPoly, u32)]) -> MultiPoly {
    factors
        .iter()
        .fold(MultiPoly::one(&ring()), |acc, (g, m)| acc.mul(&g.pow(*m)))
}

fn names(factors: &[(MultiPoly, u32)]) -> Vec<(String, u32)> {
    factors.iter().map(|(g, m)| (g.to_string(), *m)).collect()
}

#[test]
fn difference_of_squares() {
    let out = factor_rational(&p("x^2 - y^2")).unwrap();
    assert_eq!(names(&out), vec![("x + y".into(), 1), ("x - y".into(), 1)]);
}

#[test]
fn coordinate_axes_and_line() {
    let out = factor_rational(&p("x*y*(2*x + 2*y - 1)")).unwrap();
    assert_eq!(
        names(&out),
        vec![
            ("x".into(), 1),
            ("y".into(), 1),
            ("2*x + 2*y - 1".into(), 1)
        ]
    );
}

#[test]
fn conic_is_irreducible() {
    let f = p("x^2 - 4*x*y + 6*x - y^2 + 8*y - 7");
    assert!(!oracle_conic_reducible(&f));
    let out = factor_rational(&f).unwrap();
    assert_eq!(
        names(&out),
        vec![("x^2 - 4*x*y - y^2 + 6*x + 8*y - 7".into(), 1)]
    );
}

#[test]
fn multiplicities_and_content() {
    let f = p("3*(x - 1)^2*(y + 2)^3*(x*y - 1)*x^2");
    let out = factor_rational(&f).unwrap();
    assert_eq!(
        names(&out),
        vec![
            ("x".into(), 2),
            ("x - 1".into(), 2),
            ("y + 2".into(), 3),
            ("x*y - 1".into(), 1)
        ]
    );
    assert_eq!(product(&out).normalized(), f.normalized());
}

#[test]
fn astroid_sextic_is_irreducible() {
    let f = p("(x^2 + y^2 - 1)^3 + 27*x^2*y^2");
    let out = factor_rational(&f).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(out[0].0, f.normalized());
}

#[test]
fn sum_of_squares_stays_whole() {
    let out = factor_rational(&p("x^2 + y^2")).unwrap();
    assert_eq!(out.len(), 1);
    let out = factor_rational(&p("(x^2 + y^2 + 1)*(x^2 - 2*y^2)")).unwrap();
    assert_eq!(out.len(), 2);
}

#[test]
fn budget_and_errors() {
    let tight = Budget {
        factor_max_degree: 4,
        ..Budget::default()
    };
    assert!(matches!(
        factor_with_budget(&p("x^5 - y"), &tight),
        Err(Error::FactorBudget(_))
    ));
    assert_eq!(factor_rational(&p("0")).unwrap_err(), Error::ZeroPolynomial);
    assert!(factor_rational(&p("5")).unwrap().is_empty());
    let r3 = VarTable::new(&["x", "y", "z"]).unwrap();
    assert!(factor_rational(&parse_poly("x*y*z", &r3).unwrap()).is_err());
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// Independent reducibility test for degree-2 bivariate polynomials by
/// undetermined coefficients: `f = (L1 + c1)(L2 + c2)` with `L1·L2` the
/// quadratic part.
fn oracle_conic_reducible(f: &MultiPoly) -> bool {
    let coeff = |a: u16, b: u16| -> Rational {
        f.terms()
            .iter()
            .find(|(m, _)| m.exponents() == [a, b])
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    };
    let (qa, qb, qc) = (coeff(2, 0), coeff(1, 1), coeff(0, 2));
    let (ld, le, lf) = (coeff(1, 0), coeff(0, 1), coeff(0, 0));
    // linear forms as (x-coefficient, y-coefficient)
    let (l1, l2): ((Rational, Rational), (Rational, Rational)) = if !qa.is_zero() {
        let disc = &qb * &qb - Rational::from_integer(4.into()) * &qa * &qc;
        let Some(s) = rational_sqrt(&disc) else {
            return false;
        };
        let two_a = Rational::from_integer(2.into()) * &qa;
        let r1 = (-&qb + &s) / &two_a;
        let r2 = (-&qb - &s) / &two_a;
        ((Rational::one(), -r1), (qa.clone(), -&qa * r2))
    } else if !qc.is_zero() || !qb.is_zero() {
        (
            (Rational::zero(), Rational::one()),
            (qb.clone(), qc.clone()),
        )
    } else {
        return true;
    };
    // c2*L1 + c1*L2 = (ld, le); c1*c2 = lf
    let det = &l1.0 * &l2.1 - &l1.1 * &l2.0;
    if !det.is_zero() {
        // unknowns (c2, c1)
        let c2 = (&ld * &l2.1 - &le * &l2.0) / &det;
        let c1 = (&l1.0 * &le - &l1.1 * &ld) / &det;
        return c1 * c2 == lf;
    }
    // L2 = k·L1
    let k = if !l1.0.is_zero() {
        &l2.0 / &l1.0
    } else {
        &l2.1 / &l1.1
    };
    let s = if !l1.0.is_zero() {
        &ld / &l1.0
    } else {
        &le / &l1.1
    };
    if &s * &l1.0 != ld || &s * &l1.1 != le {
        return false;
    }
    // k c1^2 - s c1 + lf = 0
    let disc = &s * &s - Rational::from_integer(4.into()) * &k * &lf;
    rational_sqrt(&disc).is_some()
}

#[test]
fn oracle_sanity() {
    assert!(oracle_conic_reducible(&p("x^2 - y^2")));
    assert!(oracle_conic_reducible(&p("(x + 2*y - 1)*(3*x - y + 2)")));
    assert!(oracle_conic_reducible(&p("(x + y - 1)*(2*x + 2*y + 3)")));
    assert!(!oracle_conic_reducible(&p("x^2 + y^2 - 1")));
    assert!(!oracle_conic_reducible(&p("x^2 - 2*y^2")));
    assert!(oracle_conic_reducible(&p("x*y")));
}

prop_compose! {
    fn linear()(a in -3i64..4, b in -3i64..4, c in -3i64..4) -> MultiPoly {
        p(&format!("{a}*x + {b}*y + {c}"))
    }
}

prop_compose! {
    fn conic()(c in proptest::collection::vec(-4i64..5, 6)) -> MultiPoly {
        p(&format!("{}*x^2 + {}*x*y + {}*y^2 + {}*x + {}*y + {}", c[0], c[1], c[2], c[3], c[4], c[5]))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_reproduces_input(a in linear(), b in linear(), c in conic()) {
        let f = a.mul(&b).mul(&c);
        prop_assume!(!f.is_zero() && !f.is_constant());
        let out = factor_rational(&f).unwrap();
        prop_assert_eq!(product(&out).normalized(), f.normalized());
        for (g, _) in &out {
            prop_assert_eq!(g, &g.normalized());
        }
    }

    #[test]
    fn conic_irreducibility_matches_oracle(f in conic(), a in linear(), b in linear()) {
        for g in [f.clone(), a.mul(&b)] {
            prop_assume!(g.total_degree() == Some(2));
            let out = factor_rational(&g).unwrap();
            let irreducible = out.len() == 1 && out[0].1 == 1;
            prop_assert_eq!(irreducible, !oracle_conic_reducible(&g), "{}", g);
        }
    }
}
