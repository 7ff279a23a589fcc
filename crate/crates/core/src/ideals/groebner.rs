//! Buchberger's algorithm over the integers.
//!
//! Polynomials are kept primitive with integer coefficients and reduced
//! fraction-free, which keeps coefficient growth far below what monic
//! rational arithmetic produces on the geometry systems this crate targets.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::budget::Budget;
use crate::error::Result;
use crate::exactpoly::{Monomial, MonomialOrder, MultiPoly, Rational, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntPoly {
    /// Sorted by descending monomial under the active order.
    pub terms: Vec<(Monomial, BigInt)>,
}

impl IntPoly {
    pub fn from_multi(p: &MultiPoly, ord: &MonomialOrder) -> IntPoly {
        Self::from_multi_scaled(p, ord).0
    }

    /// Primitive integer form `k·p` together with the factor `k`.
    pub fn from_multi_scaled(p: &MultiPoly, ord: &MonomialOrder) -> (IntPoly, Rational) {
        let mut den = BigInt::one();
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
        let mut terms: Vec<(Monomial, BigInt)> = p
            .terms()
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
            .collect();
        terms.sort_by(|a, b| ord.cmp_desc(&a.0, &b.0));
        let mut out = IntPoly { terms };
        let g = out.make_primitive();
        (out, Rational::new(den, g))
    }

    pub fn to_multi(&self, ring: &Ring) -> MultiPoly {
        MultiPoly::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone())))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    /// Returns the factor the polynomial was divided by.
    pub fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c /= &g;
            }
        }
        g
    }

    fn max_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    fn check(&self, budget: &Budget) -> Result<()> {
        budget.check_size(self.terms.len(), self.max_bits())
    }
}

/// `a·f − c·m·g`, all sorted under `ord`.
fn combine(
    a: &BigInt,
    f: &IntPoly,
    c: &BigInt,
    m: &Monomial,
    g: &IntPoly,
    ord: &MonomialOrder,
) -> IntPoly {
    let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
    let mut gi = g
        .terms
        .iter()
        .map(|(gm, gc)| (gm.mul(m), gc * c))
        .peekable();
    let mut fi = f.terms.iter().peekable();
    let scale_f = |x: &BigInt| if a.is_one() { x.clone() } else { x * a };
    loop {
        match (fi.peek(), gi.peek()) {
            (Some((fm, fc)), Some((gm, _))) => match ord.cmp(fm, gm) {
                Ordering::Greater => {
                    out.push((fm.clone(), scale_f(fc)));
                    fi.next();
                }
                Ordering::Less => {
                    let (gm, gc) = gi.next().expect("peeked");
                    out.push((gm, -gc));
                }
                Ordering::Equal => {
                    let (gm, gc) = gi.next().expect("peeked");
                    let v = scale_f(fc) - gc;
                    fi.next();
                    if !v.is_zero() {
                        out.push((gm, v));
                    }
                }
            },
            (Some((fm, fc)), None) => {
                out.push((fm.clone(), scale_f(fc)));
                fi.next();
            }
            (None, Some(_)) => {
                let (gm, gc) = gi.next().expect("peeked");
                out.push((gm, -gc));
            }
            (None, None) => break,
        }
    }
    IntPoly { terms: out }
}

/// Fully reduces `f` modulo `basis`.
///
/// Returns `(r, s)` with `s·f ≡ r` modulo the ideal and no term of `r`
/// divisible by a leading monomial of `basis`.
pub(crate) fn reduce(
    f: &IntPoly,
    basis: &[&IntPoly],
    ord: &MonomialOrder,
    budget: &Budget,
) -> Result<(IntPoly, Rational)> {
    let mut p = f.clone();
    let mut scale = Rational::one();
    let mut cursor = 0;
    let mut steps = 0usize;
    while cursor < p.terms.len() {
        let (m, c) = &p.terms[cursor];
        let hit = basis.iter().find_map(|g| m.div(g.lm()).map(|q| (*g, q)));
        let Some((g, q)) = hit else {
            cursor += 1;
            continue;
        };
        let d = c.gcd(g.lc());
        let a = g.lc() / &d;
        let cc = c / &d;
        p = combine(&a, &p, &cc, &q, g, ord);
        scale *= Rational::from_integer(a);
        steps += 1;
        if steps.is_multiple_of(16) {
            p.check(budget)?;
            budget.check_time()?;
            let g = p.content();
            if !g.is_zero() && !g.is_one() {
                for (_, c) in p.terms.iter_mut() {
                    *c /= &g;
                }
                scale /= Rational::from_integer(g);
            }
        }
    }
    Ok((p, scale))
}

fn s_poly(f: &IntPoly, g: &IntPoly, ord: &MonomialOrder) -> IntPoly {
    let l = f.lm().lcm(g.lm());
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let c = f.lc() / &d;
    let mf = l.div(f.lm()).expect("lcm");
    let mg = l.div(g.lm()).expect("lcm");
    let left = combine(
        &BigInt::zero(),
        &IntPoly { terms: vec![] },
        &(-a),
        &mf,
        f,
        ord,
    );
    combine(&BigInt::one(), &left, &c, &mg, g, ord)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'a> {
    polys: Vec<IntPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    ord: &'a MonomialOrder,
}

impl State<'_> {
    fn active_refs(&self) -> Vec<&IntPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    /// Gebauer–Möller installation of a new, fully reduced element.
    fn update(&mut self, h: IntPoly) {
        let hm = h.lm().clone();
        let hidx = self.polys.len();
        let candidates: Vec<(usize, Monomial)> = (0..self.polys.len())
            .filter(|&g| self.active[g])
            .map(|g| (g, hm.lcm(self.polys[g].lm())))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, (g1, l1)) in candidates.iter().enumerate() {
            let coprime = hm.is_coprime(self.polys[*g1].lm());
            let dominated = candidates[k + 1..]
                .iter()
                .chain(kept.iter())
                .any(|(_, l2)| l2.divides(l1));
            if coprime || !dominated {
                kept.push((*g1, l1.clone()));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !hm.is_coprime(self.polys[*g].lm()))
            .map(|(g, lcm)| Pair { i: g, j: hidx, lcm })
            .collect();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && polys[p.i].lm().lcm(&hm) != p.lcm
                && polys[p.j].lm().lcm(&hm) != p.lcm)
        });
        self.pairs.extend(new_pairs);
        for g in 0..self.polys.len() {
            if self.active[g] && hm.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then_with(|| ord.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

fn unit_basis(nvars: usize) -> Vec<IntPoly> {
    vec![IntPoly {
        terms: vec![(Monomial::one(nvars), BigInt::one())],
    }]
}

/// Reduced Gröbner basis, each element primitive with positive leading
/// coefficient, sorted by ascending leading monomial.
pub(crate) fn groebner(
    input: Vec<IntPoly>,
    nvars: usize,
    ord: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<IntPoly>> {
    let mut st = State {
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        ord,
    };
    let mut input: Vec<IntPoly> = input.into_iter().filter(|p| !p.is_zero()).collect();
    if input.iter().any(|p| p.is_constant()) {
        return Ok(unit_basis(nvars));
    }
    // smaller leading monomials first tends to shorten the run
    input.sort_by(|a, b| {
        ord.cmp(a.lm(), b.lm())
            .then(a.terms.len().cmp(&b.terms.len()))
    });
    for f in input {
        let (mut r, _) = reduce(&f, &st.active_refs(), ord, budget)?;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(unit_basis(nvars));
        }
        r.make_primitive();
        st.update(r);
    }
    while let Some(pair) = st.pop_pair() {
        budget.check_time()?;
        let s = s_poly(&st.polys[pair.i], &st.polys[pair.j], ord);
        if s.is_zero() {
            continue;
        }
        let (mut r, _) = reduce(&s, &st.active_refs(), ord, budget)?;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(unit_basis(nvars));
        }
        r.make_primitive();
        r.check(budget)?;
        if st.polys.len() >= budget.max_basis {
            return Err(crate::error::Error::BudgetExceeded(format!(
                "more than {} basis candidates",
                budget.max_basis
            )));
        }
        st.update(r);
    }
    let minimal: Vec<IntPoly> = st
        .polys
        .iter()
        .zip(&st.active)
        .filter(|(_, a)| **a)
        .map(|(p, _)| p.clone())
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&IntPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p)
            .collect();
        let (mut r, _) = reduce(g, &others, ord, budget)?;
        r.make_primitive();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    Ok(reduced)
}

/// True when every S-polynomial of `basis` reduces to zero modulo `basis`.
#[cfg(test)]
pub(crate) fn is_groebner(basis: &[IntPoly], ord: &MonomialOrder, budget: &Budget) -> Result<bool> {
    let refs: Vec<&IntPoly> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_poly(&basis[i], &basis[j], ord);
            let (r, _) = reduce(&s, &refs, ord, budget)?;
            if !r.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
