use super::division::divide;
use super::monomial::MonomialOrder;
use super::poly::MultiPoly;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ideals::{intersect, Ideal};

/// `f / g` when `g` divides `f` exactly, `None` otherwise.
pub fn exact_quotient(f: &MultiPoly, g: &MultiPoly) -> Result<Option<MultiPoly>> {
    let (q, r) = divide(f, std::slice::from_ref(g), &MonomialOrder::Grevlex)?;
    Ok(r.is_zero()
        .then(|| q.into_iter().next().expect("one divisor")))
}

/// Normalized greatest common divisor; `gcd(f, 0)` is `f` normalized.
///
/// Computed as `f·g / lcm(f, g)` where the lcm generates `(f) ∩ (g)`.
pub fn gcd_poly(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    gcd_with_budget(f, g, &Budget::default())
}

pub(crate) fn gcd_with_budget(f: &MultiPoly, g: &MultiPoly, budget: &Budget) -> Result<MultiPoly> {
    if !f.same_ring(g) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(g.normalized());
    }
    if g.is_zero() {
        return Ok(f.normalized());
    }
    let ring = f.ring();
    if f.is_constant() || g.is_constant() {
        return Ok(MultiPoly::one(ring));
    }
    let (fn_, gn) = (f.normalized(), g.normalized());
    if fn_ == gn {
        return Ok(fn_);
    }
    if exact_quotient(&gn, &fn_)?.is_some() {
        return Ok(fn_);
    }
    if exact_quotient(&fn_, &gn)?.is_some() {
        return Ok(gn);
    }
    let a = Ideal::new(ring, vec![fn_.clone()])?;
    let b = Ideal::new(ring, vec![gn.clone()])?;
    let meet = intersect(&a, &b, budget)?;
    let basis = meet.basis(&MonomialOrder::Grevlex, budget)?;
    debug_assert_eq!(
        basis.len(),
        1,
        "intersection of principal ideals is principal"
    );
    let lcm = &basis[0];
    let q = exact_quotient(&fn_.mul(&gn), lcm)?
        .ok_or_else(|| Error::Unsupported("lcm does not divide product".into()))?;
    Ok(q.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, Ring, VarTable};

    fn ring() -> Ring {
        VarTable::new(&["x", "y"]).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &ring()).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            gcd_poly(&p("x^2 - y^2"), &p("x^2 + 2*x*y + y^2")).unwrap(),
            p("x + y")
        );
        assert_eq!(gcd_poly(&p("-4*x + 2"), &p("0")).unwrap(), p("2*x - 1"));
        assert!(gcd_poly(&p("x"), &p("y")).unwrap().is_one());
        assert_eq!(
            gcd_poly(&p("x*y*(2*x + 2*y - 1)"), &p("x^2*(x + y)*(2*x + 2*y - 1)")).unwrap(),
            p("2*x^2 + 2*x*y - x")
        );
    }
}
