use super::monomial::MonomialOrder;
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Multivariate division of `f` by `divisors` under `ord`.
///
/// Returns quotients and remainder with `f = Σ qᵢ·gᵢ + r` and no term of `r`
/// divisible by a leading monomial of the divisors. When several divisors
/// apply, the first one in list order is used.
pub fn divide(
    f: &MultiPoly,
    divisors: &[MultiPoly],
    ord: &MonomialOrder,
) -> Result<(Vec<MultiPoly>, MultiPoly)> {
    let ring = f.ring().clone();
    let mut leads = Vec::with_capacity(divisors.len());
    for g in divisors {
        if !g.same_ring(f) {
            return Err(Error::RingMismatch);
        }
        let (m, c) = g.leading_term(ord).map_err(|_| Error::ZeroDivisor)?;
        leads.push((m.clone(), c.clone()));
    }
    let mut quotients = vec![MultiPoly::zero(&ring); divisors.len()];
    let mut remainder = Vec::new();
    let mut p = f.clone();
    while !p.is_zero() {
        let (m, c) = {
            let (m, c) = p.leading_term(ord)?;
            (m.clone(), c.clone())
        };
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, (lm, lc))| m.div(lm).map(|q| (i, q, &c / lc)));
        match hit {
            Some((i, qm, qc)) => {
                let t = MultiPoly::from_terms(&ring, vec![(qm.clone(), qc.clone())]);
                quotients[i] = quotients[i].add(&t);
                p = p.sub(&divisors[i].mul_term(&qm, &qc));
            }
            None => {
                let t = MultiPoly::from_terms(&ring, vec![(m, c)]);
                p = p.sub(&t);
                remainder.push(t);
            }
        }
    }
    let r = remainder
        .iter()
        .fold(MultiPoly::zero(&ring), |acc, t| acc.add(t));
    Ok((quotients, r))
}

/// `S(f, g) = (L/LT(f))·f − (L/LT(g))·g` with `L` the lcm of the leading
/// monomials.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly, ord: &MonomialOrder) -> Result<MultiPoly> {
    if !f.same_ring(g) {
        return Err(Error::RingMismatch);
    }
    let (mf, cf) = f.leading_term(ord)?;
    let (mg, cg) = g.leading_term(ord)?;
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).expect("lcm"), &cf.recip());
    let b = g.mul_term(&l.div(mg).expect("lcm"), &cg.recip());
    Ok(a.sub(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, Ring, VarTable};
    use proptest::prelude::*;

    fn ring() -> Ring {
        VarTable::new(&["x", "y"]).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &ring()).unwrap()
    }

    #[test]
    fn textbook_division() {
        // by hand: x^2y + xy^2 + y^2 = (x + y)(xy - 1) + 1(y^2 - 1) + (x + y + 1)
        let f = p("x^2*y + x*y^2 + y^2");
        let g = [p("x*y - 1"), p("y^2 - 1")];
        let (q, r) = divide(&f, &g, &MonomialOrder::Lex).unwrap();
        assert_eq!(r, p("x + y + 1"));
        assert_eq!(q[0], p("x + y"));
        assert_eq!(q[1], p("1"));
    }

    #[test]
    fn trivial_divisions() {
        let g = p("x^2 - 3*y + 1");
        let (q, r) = divide(&g, std::slice::from_ref(&g), &MonomialOrder::Grevlex).unwrap();
        assert!(q[0].is_one() && r.is_zero());
        let (_, r) = divide(&p("1"), &[p("x")], &MonomialOrder::Grevlex).unwrap();
        assert!(r.is_one());
        assert_eq!(
            divide(&p("x"), &[p("0")], &MonomialOrder::Lex).unwrap_err(),
            Error::ZeroDivisor
        );
    }

    #[test]
    fn s_polynomials() {
        let s = s_polynomial(&p("x^2 - y"), &p("x*y - 1"), &MonomialOrder::Lex).unwrap();
        // y*(x^2 - y) - x*(x*y - 1) = x - y^2
        assert_eq!(s, p("x - y^2"));
        let f = p("x^3 + y");
        assert!(s_polynomial(&f, &f, &MonomialOrder::Lex).unwrap().is_zero());
        let g = [p("x^2 - y"), p("y^2 - 1")];
        let s = s_polynomial(&g[0], &g[1], &MonomialOrder::Lex).unwrap();
        let (_, r) = divide(&s, &g, &MonomialOrder::Lex).unwrap();
        assert!(r.is_zero());
        assert!(s_polynomial(&p("0"), &f, &MonomialOrder::Lex).is_err());
    }

    prop_compose! {
        fn small_poly()(terms in proptest::collection::vec(((0u16..3, 0u16..3), -5i64..6), 1..5))
            -> MultiPoly {
            let t = terms.into_iter().map(|((a, b), c)| {
                (crate::exactpoly::Monomial::from_exponents(&[a, b]), crate::exactpoly::Rational::from_integer(c.into()))
            }).collect();
            MultiPoly::from_terms(&ring(), t)
        }
    }

    proptest! {
        #[test]
        fn division_contract(f in small_poly(), g1 in small_poly(), g2 in small_poly()) {
            prop_assume!(!g1.is_zero() && !g2.is_zero());
            for ord in [MonomialOrder::Lex, MonomialOrder::Grevlex] {
                let gs = [g1.clone(), g2.clone()];
                let (q, r) = divide(&f, &gs, &ord).unwrap();
                let rebuilt = q.iter().zip(&gs).fold(r.clone(), |acc, (qi, gi)| acc.add(&qi.mul(gi)));
                prop_assert_eq!(rebuilt, f.clone());
                for (m, _) in r.terms() {
                    for g in &gs {
                        prop_assert!(!g.leading_monomial(&ord).unwrap().divides(m));
                    }
                }
            }
        }
    }
}
