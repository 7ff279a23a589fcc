//! Factorization over the rationals of polynomials in at most two variables.
//!
//! Squarefree decomposition by repeated gcds, then Kronecker substitution
//! `v ↦ u^B` turns each squarefree bivariate part into a univariate integer
//! polynomial. Its modular factors are recombined until the inverse
//! substitution of a candidate divides the bivariate input.

mod modp;
mod zassenhaus;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::gcd::{exact_quotient, gcd_with_budget};
use super::monomial::Monomial;
use super::poly::MultiPoly;
use super::Rational;
use crate::budget::Budget;
use crate::error::{Error, Result};
use zassenhaus::{factor_squarefree_z, is_squarefree_z, primitive, zdiv_exact, zgcd, ztrim, ZPoly};

/// Irreducible factors with multiplicities; their product equals `f` up to a
/// rational unit. Factors are normalized and sorted by degree, term count, then text.
pub fn factor_rational(f: &MultiPoly) -> Result<Vec<(MultiPoly, u32)>> {
    factor_with_budget(f, &Budget::default())
}

pub(crate) fn factor_with_budget(f: &MultiPoly, budget: &Budget) -> Result<Vec<(MultiPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(vec![]);
    }
    let support = f.support();
    if support.len() > 2 {
        return Err(Error::Unsupported(format!(
            "factorization needs at most 2 variables, got {}",
            support.len()
        )));
    }
    let degree = f.total_degree().unwrap_or(0);
    if degree > budget.factor_max_degree {
        return Err(Error::FactorBudget(format!(
            "total degree {degree} exceeds limit {}",
            budget.factor_max_degree
        )));
    }
    let ring = f.ring().clone();
    let mut acc: Vec<(MultiPoly, u32)> = Vec::new();

    // monomial content
    let mut shift = Monomial::one(ring.len());
    for &i in &support {
        let e = f
            .terms()
            .iter()
            .map(|(m, _)| m.exponents()[i])
            .min()
            .unwrap_or(0);
        if e > 0 {
            shift.0[i] = e;
            acc.push((MultiPoly::var_index(&ring, i), e as u32));
        }
    }
    let f = MultiPoly::from_terms(
        &ring,
        f.terms()
            .iter()
            .map(|(m, c)| (m.div(&shift).expect("min exponent"), c.clone()))
            .collect(),
    )
    .normalized();

    let support = f.support();
    match support.len() {
        0 => {}
        1 => acc.extend(factor_univariate(&f, support[0], budget)?),
        _ => {
            let (u, v) = pick_main(&f, support[0], support[1]);
            let cont = content_in(&f, u, budget)?;
            let pp = if cont.is_constant() {
                f.clone()
            } else {
                acc.extend(factor_univariate(&cont, v, budget)?);
                exact_quotient(&f, &cont)?.expect("content divides")
            };
            for (part, mult) in squarefree_parts(&pp, u, budget)? {
                for g in bivariate_irreducible(&part, u, v, budget)? {
                    acc.push((g, mult));
                }
            }
        }
    }

    let mut merged: BTreeMap<(u32, usize, String), (MultiPoly, u32)> = BTreeMap::new();
    for (g, m) in acc {
        let g = g.normalized();
        let key = (g.total_degree().unwrap_or(0), g.num_terms(), g.to_string());
        merged.entry(key).or_insert((g, 0)).1 += m;
    }
    Ok(merged.into_values().collect())
}

/// Picks the Kronecker main variable giving the smaller substituted degree.
fn pick_main(f: &MultiPoly, a: usize, b: usize) -> (usize, usize) {
    let cost = |u: usize, v: usize| {
        let du = f.degree_in(u);
        du + (du + 1) * f.degree_in(v)
    };
    if cost(a, b) <= cost(b, a) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Gcd of the coefficients of `f` viewed as a polynomial in variable `u`.
fn content_in(f: &MultiPoly, u: usize, budget: &Budget) -> Result<MultiPoly> {
    let ring = f.ring();
    let mut by_deg: BTreeMap<u16, Vec<(Monomial, Rational)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut rest = m.clone();
        let e = rest.0[u];
        rest.0[u] = 0;
        by_deg.entry(e).or_default().push((rest, c.clone()));
    }
    let mut g = MultiPoly::zero(ring);
    for terms in by_deg.into_values() {
        g = gcd_with_budget(&g, &MultiPoly::from_terms(ring, terms), budget)?;
        if g.is_constant() {
            break;
        }
    }
    Ok(g)
}

/// Musser's squarefree decomposition with respect to `∂/∂u`; requires that
/// every irreducible factor of `f` involves `u`.
fn squarefree_parts(f: &MultiPoly, u: usize, budget: &Budget) -> Result<Vec<(MultiPoly, u32)>> {
    let mut out = Vec::new();
    let d = f.derivative_index(u);
    let mut g = gcd_with_budget(f, &d, budget)?;
    let mut w = exact_quotient(&f.normalized(), &g)?.expect("gcd divides");
    let mut i = 1;
    while !w.is_constant() {
        let y = gcd_with_budget(&w, &g, budget)?;
        let z = exact_quotient(&w, &y)?.expect("gcd divides");
        if !z.is_constant() {
            out.push((z.normalized(), i));
        }
        i += 1;
        g = exact_quotient(&g, &y)?.expect("gcd divides");
        w = y;
    }
    Ok(out)
}

fn to_dense(f: &MultiPoly, var: usize) -> ZPoly {
    let f = f.normalized();
    let deg = f.degree_in(var) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for (m, c) in f.terms() {
        out[m.exponents()[var] as usize] = c.numer().clone();
    }
    out
}

fn from_dense(a: &[BigInt], var: usize, like: &MultiPoly) -> MultiPoly {
    let ring = like.ring();
    let terms = a
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let mut m = Monomial::one(ring.len());
            m.0[var] = i as u16;
            (m, Rational::from_integer(c.clone()))
        })
        .collect();
    MultiPoly::from_terms(ring, terms)
}

fn factor_univariate(f: &MultiPoly, var: usize, budget: &Budget) -> Result<Vec<(MultiPoly, u32)>> {
    let dense = primitive(&to_dense(f, var));
    let mut out = Vec::new();
    for (part, mult) in squarefree_dense(&dense) {
        for g in factor_squarefree_z(&part, budget, |_| Ok(true))? {
            out.push((from_dense(&g, var, f), mult));
        }
    }
    Ok(out)
}

fn squarefree_dense(f: &[BigInt]) -> Vec<(ZPoly, u32)> {
    let mut out = Vec::new();
    let d: ZPoly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let mut g = zgcd(f, &d);
    let mut w = zdiv_exact(f, &g).expect("gcd divides");
    let mut i = 1;
    while w.len() > 1 {
        let y = zgcd(&w, &g);
        let z = zdiv_exact(&w, &y).expect("gcd divides");
        if z.len() > 1 {
            out.push((primitive(&z), i));
        }
        i += 1;
        g = zdiv_exact(&g, &y).expect("gcd divides");
        w = y;
    }
    out
}

/// Kronecker image: `u^i v^j ↦ t^(i + B·j)`.
fn kronecker(f: &MultiPoly, u: usize, v: usize, base: usize) -> ZPoly {
    let f = f.normalized();
    let deg = f.degree_in(u) as usize + base * f.degree_in(v) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for (m, c) in f.terms() {
        let k = m.exponents()[u] as usize + base * m.exponents()[v] as usize;
        out[k] = c.numer().clone();
    }
    ztrim(out)
}

fn inverse_kronecker(a: &[BigInt], u: usize, v: usize, base: usize, like: &MultiPoly) -> MultiPoly {
    let ring = like.ring();
    let terms = a
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let mut m = Monomial::one(ring.len());
            m.0[u] = (k % base) as u16;
            m.0[v] = (k / base) as u16;
            (m, Rational::from_integer(c.clone()))
        })
        .collect();
    MultiPoly::from_terms(ring, terms)
}

/// Irreducible factors of a squarefree polynomial all of whose factors
/// involve `u`.
fn bivariate_irreducible(
    f: &MultiPoly,
    u: usize,
    v: usize,
    budget: &Budget,
) -> Result<Vec<MultiPoly>> {
    if f.degree_in(u) <= 1 || f.degree_in(v) == 0 {
        if f.degree_in(v) == 0 {
            return Ok(factor_univariate(f, u, budget)?
                .into_iter()
                .map(|(g, _)| g)
                .collect());
        }
        return Ok(vec![f.normalized()]);
    }
    let ring = f.ring();
    let base = f.degree_in(u) as usize + 1;
    let vpoly = MultiPoly::var_index(ring, v);
    for shift in [0i64, 1, -1, 2, -2, 3, -3, 5, -5, 7, -7, 11, -11, 13] {
        let c = MultiPoly::from_int(ring, shift);
        let shifted = f.compose(&[(v, vpoly.add(&c))]).normalized();
        let image = kronecker(&shifted, u, v, base);
        if !is_squarefree_z(&image) {
            continue;
        }
        let mut current = shifted.clone();
        let mut found = Vec::new();
        factor_squarefree_z(&image, budget, |cand| {
            let g = inverse_kronecker(cand, u, v, base, f);
            if g.is_constant() {
                return Ok(false);
            }
            match exact_quotient(&current, &g)? {
                Some(q) => {
                    current = q;
                    found.push(g);
                    Ok(true)
                }
                None => Ok(false),
            }
        })?;
        if !current.is_constant() {
            found.push(current);
        }
        let back = vpoly.sub(&c);
        return Ok(found
            .into_iter()
            .map(|g| g.compose(&[(v, back.clone())]).normalized())
            .collect());
    }
    Err(Error::FactorBudget(
        "no squarefree Kronecker image found".into(),
    ))
}

#[cfg(test)]
mod tests;
