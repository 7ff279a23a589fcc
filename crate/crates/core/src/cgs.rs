//! Comprehensive Gröbner systems by disjoint branching on leading
//! coefficients.
//!
//! Every node works on a locally closed set `V(E) \ V(h)` of the parameter
//! space. The node computes a Gröbner basis of the input together with `E`
//! under a block order placing the variables above the parameters, peels off
//! the part of the set where that basis has no solutions, emits the segment
//! where every leading coefficient of the minimal Dickson basis is nonzero,
//! and recurses on each vanishing leading-coefficient factor in turn.

use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactpoly::{factor, Monomial, MonomialOrder, MultiPoly, Rational, Ring, VarTable};
use crate::ideals::{groebner_basis, is_empty_lcs, specialize_params, Ideal, LocallyClosedSet};

/// One piece `V(E) \ V(h)` of the parameter space with its basis.
///
/// `basis == [1]` marks a piece without solutions; an empty basis is the
/// zero ideal.
#[derive(Clone, Debug)]
pub struct Segment {
    /// Null conditions, a reduced basis over the parameter ring.
    pub null: Ideal,
    /// Non-null condition over the parameter ring.
    pub nonnull: MultiPoly,
    /// Basis over the full ring (variables then parameters).
    pub basis: Vec<MultiPoly>,
}

impl Segment {
    pub fn is_inconsistent(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn as_lcs(&self) -> Result<LocallyClosedSet> {
        let ring = self.null.ring();
        LocallyClosedSet::new(
            self.null.clone(),
            Ideal::new(ring, vec![self.nonnull.clone()])?,
        )
    }

    /// Leading monomials of the basis in the variables.
    pub fn leading_variable_monomials(&self, ord: &MonomialOrder) -> Vec<Monomial> {
        let nvars = self.basis.first().map_or(0, |g| g.ring().main_len());
        let mut out: Vec<Monomial> = self
            .basis
            .iter()
            .filter_map(|g| g.leading_monomial(ord).ok())
            .map(|m| var_part(m, nvars))
            .collect();
        out.sort();
        out
    }
}

#[derive(Clone, Debug)]
pub struct CoverResult {
    pub segments: Vec<Segment>,
    /// The input system over [`CoverResult::ring`].
    pub system: Vec<MultiPoly>,
    /// Variables first, then parameters.
    pub ring: Ring,
}

impl CoverResult {
    pub fn param_ring(&self) -> Ring {
        self.ring.param_ring()
    }

    /// The block order used for all segment bases.
    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::Block {
            high: self.ring.main_len(),
        }
    }
}

/// Substitutes parameter values, dropping polynomials that become zero.
///
/// `point` lists values for the parameters of the polynomials' ring in order.
pub fn specialize(polys: &[MultiPoly], point: &[Rational]) -> Result<Vec<MultiPoly>> {
    let Some(first) = polys.first() else {
        return Ok(vec![]);
    };
    specialize_params(polys, first.ring().param_names(), point)
}

pub fn segment_contains(seg: &Segment, point: &[Rational]) -> Result<bool> {
    if point.len() != seg.null.ring().len() {
        return Err(Error::IncompleteAssignment(format!(
            "expected {} parameter values, got {}",
            seg.null.ring().len(),
            point.len()
        )));
    }
    Ok(seg
        .null
        .generators()
        .iter()
        .all(|g| g.eval(point).is_zero())
        && !seg.nonnull.eval(point).is_zero())
}

pub fn groebner_cover<S: AsRef<str>, T: AsRef<str>>(
    system: &[MultiPoly],
    params: &[S],
    vars: &[T],
    budget: &Budget,
) -> Result<CoverResult> {
    if system.is_empty() {
        return Err(Error::Unsupported("empty polynomial system".into()));
    }
    let ring = VarTable::parametric(vars, params)?;
    let system = system
        .iter()
        .map(|p| p.embed(&ring))
        .collect::<Result<Vec<_>>>()?;
    let mut cover = Cover {
        ring: ring.clone(),
        pring: ring.param_ring(),
        ord: MonomialOrder::Block {
            high: ring.main_len(),
        },
        budget,
        segments: Vec::new(),
    };
    let null = Ideal::zero(&cover.pring);
    let one = MultiPoly::one(&cover.pring);
    cover.node(&system, null, one, 0)?;
    Ok(CoverResult {
        segments: cover.segments,
        system,
        ring,
    })
}

struct Cover<'a> {
    ring: Ring,
    pring: Ring,
    ord: MonomialOrder,
    budget: &'a Budget,
    segments: Vec<Segment>,
}

impl Cover<'_> {
    fn push(&mut self, null: &Ideal, nonnull: &MultiPoly, basis: Vec<MultiPoly>) -> Result<()> {
        if self.segments.len() >= self.budget.cover_max_segments {
            return Err(Error::BudgetExceeded(format!(
                "cover exceeds {} segments",
                self.budget.cover_max_segments
            )));
        }
        self.segments.push(Segment {
            null: null.clone(),
            nonnull: nonnull.clone(),
            basis,
        });
        Ok(())
    }

    fn is_empty(&self, null: &Ideal, nonnull: &MultiPoly) -> Result<bool> {
        let lcs = LocallyClosedSet::new(
            null.clone(),
            Ideal::new(&self.pring, vec![nonnull.clone()])?,
        )?;
        is_empty_lcs(&lcs, self.budget)
    }

    fn node(
        &mut self,
        system: &[MultiPoly],
        null: Ideal,
        nonnull: MultiPoly,
        depth: usize,
    ) -> Result<()> {
        self.budget.check_time()?;
        if depth > self.budget.cover_max_depth {
            return Err(Error::BudgetExceeded(format!(
                "cover recursion deeper than {}",
                self.budget.cover_max_depth
            )));
        }
        if self.is_empty(&null, &nonnull)? {
            return Ok(());
        }
        let mut input = system.to_vec();
        for e in null.generators() {
            input.push(e.embed(&self.ring)?);
        }
        let gb = groebner_basis(&Ideal::new(&self.ring, input)?, &self.ord, self.budget)?;
        if gb.len() == 1 && gb[0].is_constant() {
            return self.push(&null, &nonnull, gb);
        }
        let nvars = self.ring.main_len();
        let (par, rest): (Vec<MultiPoly>, Vec<MultiPoly>) = gb.into_iter().partition(|g| {
            g.terms()
                .iter()
                .all(|(m, _)| m.exponents()[..nvars].iter().all(|&e| e == 0))
        });

        // where some new parameter condition fails the system has no solution
        let mut null = null;
        for p in &par {
            let p = p.embed(&self.pring)?;
            if null.contains(&p, self.budget)? {
                continue;
            }
            let h = nonnull.mul(&p).normalized();
            if !self.is_empty(&null, &h)? {
                self.push(&null, &h, vec![MultiPoly::one(&self.ring)])?;
            }
            null = null.with_generators(&[p])?.reduced(self.budget)?;
        }
        if self.is_empty(&null, &nonnull)? {
            return Ok(());
        }

        let minimal = minimal_dickson(&rest, nvars, &self.ord);
        let mut factors: Vec<MultiPoly> = Vec::new();
        for g in &minimal {
            let lc = leading_coefficient(g, nvars, &self.ord).embed(&self.pring)?;
            if lc.is_constant() {
                continue;
            }
            for f in self.split(&lc)? {
                if !factors.contains(&f) {
                    factors.push(f);
                }
            }
        }
        let principal = factors
            .iter()
            .fold(nonnull.clone(), |acc, f| acc.mul(f))
            .normalized();
        if !self.is_empty(&null, &principal)? {
            self.push(&null, &principal, minimal)?;
        }
        let mut h = nonnull;
        for f in &factors {
            let child = null
                .with_generators(std::slice::from_ref(f))?
                .reduced(self.budget)?;
            let mut next = rest.clone();
            next.push(f.embed(&self.ring)?);
            self.node(&next, child, h.clone(), depth + 1)?;
            h = h.mul(f).normalized();
        }
        Ok(())
    }

    /// Distinct irreducible factors of a leading coefficient, or the
    /// coefficient itself when it cannot be factored within budget.
    fn split(&self, lc: &MultiPoly) -> Result<Vec<MultiPoly>> {
        match factor::factor_with_budget(lc, self.budget) {
            Ok(fs) => Ok(fs.into_iter().map(|(f, _)| f).collect()),
            Err(Error::Unsupported(_) | Error::FactorBudget(_)) => Ok(vec![lc.normalized()]),
            Err(e) => Err(e),
        }
    }
}

fn var_part(m: &Monomial, nvars: usize) -> Monomial {
    let mut e = m.exponents().to_vec();
    for x in e.iter_mut().skip(nvars) {
        *x = 0;
    }
    Monomial::from_exponents(&e)
}

/// Coefficient in the parameters of the leading variable monomial.
fn leading_coefficient(g: &MultiPoly, nvars: usize, ord: &MonomialOrder) -> MultiPoly {
    let lm = var_part(
        g.leading_monomial(ord).expect("nonzero basis element"),
        nvars,
    );
    let terms = g
        .terms()
        .iter()
        .filter(|(m, _)| var_part(m, nvars) == lm)
        .map(|(m, c)| (m.div(&lm).expect("same variable part"), c.clone()))
        .collect();
    MultiPoly::from_terms(g.ring(), terms)
}

/// Elements whose leading variable monomials are minimal under divisibility,
/// one per monomial, preferring the smaller leading monomial.
fn minimal_dickson(basis: &[MultiPoly], nvars: usize, ord: &MonomialOrder) -> Vec<MultiPoly> {
    let mut sorted: Vec<&MultiPoly> = basis.iter().collect();
    sorted.sort_by(|a, b| {
        ord.cmp(
            a.leading_monomial(ord).expect("nonzero"),
            b.leading_monomial(ord).expect("nonzero"),
        )
    });
    let mut picked: Vec<(Monomial, MultiPoly)> = Vec::new();
    for g in sorted {
        let lm = var_part(g.leading_monomial(ord).expect("nonzero"), nvars);
        if picked.iter().all(|(m, _)| !m.divides(&lm)) {
            picked.push((lm, g.clone()));
        }
    }
    picked.into_iter().map(|(_, g)| g).collect()
}

#[cfg(test)]
mod tests;
