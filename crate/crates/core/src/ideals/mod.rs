//! Gröbner bases and ideal-theoretic operations, plus locally closed sets.

pub(crate) mod groebner;
mod lcs;

use std::sync::{Arc, RwLock};

pub use lcs::{is_empty_lcs, lcs_contains, LocallyClosedSet};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactpoly::{MonomialOrder, MultiPoly, Rational, Ring, VarTable};
use groebner::IntPoly;

type BasisCache = Arc<RwLock<Vec<(MonomialOrder, Arc<Vec<MultiPoly>>)>>>;

/// Finitely generated polynomial ideal with a write-once basis cache per
/// monomial order.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<MultiPoly>,
    cache: BasisCache,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries(self.gens.iter().map(|g| g.to_string()))
            .finish()
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<MultiPoly>) -> Result<Ideal> {
        if gens
            .iter()
            .any(|g| !Arc::ptr_eq(g.ring(), ring) && **g.ring() != **ring)
        {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            cache: Arc::default(),
        })
    }

    /// Ideal generated by polynomials over other rings, embedded by name.
    pub fn embedded(ring: &Ring, gens: &[MultiPoly]) -> Result<Ideal> {
        let gens = gens
            .iter()
            .map(|g| g.embed(ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![]).expect("same ring")
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![MultiPoly::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    /// True when no generator is nonzero.
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn with_generators(&self, extra: &[MultiPoly]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        for g in extra {
            gens.push(g.embed(&self.ring)?);
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.with_generators(&other.gens)
    }

    /// Reduced Gröbner basis under `ord` (cached).
    pub fn basis(&self, ord: &MonomialOrder, budget: &Budget) -> Result<Arc<Vec<MultiPoly>>> {
        if let Some((_, b)) = self
            .cache
            .read()
            .expect("cache lock")
            .iter()
            .find(|(o, _)| o == ord)
        {
            return Ok(b.clone());
        }
        let input = self
            .gens
            .iter()
            .map(|g| IntPoly::from_multi(g, ord))
            .collect();
        let gb = groebner::groebner(input, self.ring.len(), ord, budget)?;
        let basis: Arc<Vec<MultiPoly>> =
            Arc::new(gb.iter().map(|g| g.to_multi(&self.ring)).collect());
        let mut cache = self.cache.write().expect("cache lock");
        if !cache.iter().any(|(o, _)| o == ord) {
            cache.push((*ord, basis.clone()));
        }
        Ok(basis)
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        let b = self.basis(&MonomialOrder::Grevlex, budget)?;
        Ok(b.len() == 1 && b[0].is_constant())
    }

    /// Same ideal, generated by its reduced grevlex basis.
    pub fn reduced(&self, budget: &Budget) -> Result<Ideal> {
        let b = self.basis(&MonomialOrder::Grevlex, budget)?;
        let out = Ideal::new(&self.ring, b.to_vec())?;
        out.cache
            .write()
            .expect("cache lock")
            .push((MonomialOrder::Grevlex, b));
        Ok(out)
    }

    pub fn contains(&self, f: &MultiPoly, budget: &Budget) -> Result<bool> {
        Ok(normal_form(f, self, &MonomialOrder::Grevlex, budget)?.is_zero())
    }

    /// Mutual membership of generators.
    pub fn equals(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(&g.embed(&self.ring)?, budget)? {
                return Ok(false);
            }
        }
        for g in &self.gens {
            if !other.contains(&g.embed(&other.ring)?, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when V(self) = V(other), checked by radical membership both ways.
    pub fn same_variety(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        for g in &other.gens {
            if !radical_member(&g.embed(&self.ring)?, self, budget)? {
                return Ok(false);
            }
        }
        for g in &self.gens {
            if !radical_member(&g.embed(&other.ring)?, other, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reduced grevlex basis rendered as strings (ascending leading monomial).
    pub fn display_generators(&self, budget: &Budget) -> Result<Vec<String>> {
        Ok(self
            .basis(&MonomialOrder::Grevlex, budget)?
            .iter()
            .map(|g| g.normalized().to_string())
            .collect())
    }
}

/// Reduced Gröbner basis of `ideal` under `ord`; empty for the zero ideal.
pub fn groebner_basis(
    ideal: &Ideal,
    ord: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<MultiPoly>> {
    Ok(ideal.basis(ord, budget)?.to_vec())
}

/// Canonical remainder of `f` modulo the reduced basis of `ideal`.
pub fn normal_form(
    f: &MultiPoly,
    ideal: &Ideal,
    ord: &MonomialOrder,
    budget: &Budget,
) -> Result<MultiPoly> {
    let f = f.embed(ideal.ring())?;
    if f.is_zero() {
        return Ok(f);
    }
    let basis = ideal.basis(ord, budget)?;
    let int_basis: Vec<IntPoly> = basis.iter().map(|g| IntPoly::from_multi(g, ord)).collect();
    let refs: Vec<&IntPoly> = int_basis.iter().collect();
    let (fi, f_scale) = IntPoly::from_multi_scaled(&f, ord);
    let (r, s) = groebner::reduce(&fi, &refs, ord, budget)?;
    let total = s * f_scale;
    Ok(r.to_multi(ideal.ring()).scale(&total.recip()))
}

pub fn ideal_member(f: &MultiPoly, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    ideal.contains(f, budget)
}

/// Membership in the radical, via `1 ∈ I + (1 − t·f)`.
pub fn radical_member(f: &MultiPoly, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    let f = f.embed(ideal.ring())?;
    if f.is_zero() {
        return Ok(true);
    }
    if f.is_constant() {
        return ideal.is_unit(budget);
    }
    let (ring, t) = with_aux_var(ideal.ring(), "t")?;
    let mut gens = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&ring))
        .collect::<Result<Vec<_>>>()?;
    gens.push(MultiPoly::one(&ring).sub(&t.mul(&f.embed(&ring)?)));
    Ideal::new(&ring, gens)?.is_unit(budget)
}

/// A ring `[aux] ++ ring` and the auxiliary variable as a polynomial.
fn with_aux_var(ring: &Ring, base: &str) -> Result<(Ring, MultiPoly)> {
    let name = ring.fresh_name(base);
    let mut names = vec![name.clone()];
    names.extend(ring.names().iter().cloned());
    let r = VarTable::new(&names)?;
    let t = MultiPoly::var(&r, &name)?;
    Ok((r, t))
}

/// Generators of `⟨polys⟩ ∩ K[target]`, computed under a block order with
/// the variables of the source ring missing from `target` in the high block.
pub(crate) fn eliminate_into(
    polys: &[MultiPoly],
    target: &Ring,
    budget: &Budget,
) -> Result<Vec<MultiPoly>> {
    let Some(first) = polys.first() else {
        return Ok(vec![]);
    };
    let source = first.ring();
    let drop: Vec<String> = source
        .names()
        .iter()
        .filter(|n| target.index_of(n).is_none())
        .cloned()
        .collect();
    let mut names = drop.clone();
    names.extend(target.names().iter().cloned());
    let work = VarTable::new(&names)?;
    let ord = MonomialOrder::Block { high: drop.len() };
    let input = polys
        .iter()
        .map(|p| p.embed(&work).map(|q| IntPoly::from_multi(&q, &ord)))
        .collect::<Result<Vec<_>>>()?;
    let gb = groebner::groebner(input, work.len(), &ord, budget)?;
    gb.iter()
        .filter(|g| {
            g.terms
                .iter()
                .all(|(m, _)| m.supported_in(drop.len()..work.len()))
        })
        .map(|g| g.to_multi(&work).embed(target))
        .collect()
}

/// `I ∩ K[remaining variables]`.
pub fn eliminate<S: AsRef<str>>(ideal: &Ideal, drop: &[S], budget: &Budget) -> Result<Ideal> {
    let ring = ideal.ring();
    let drop: Vec<&str> = drop.iter().map(|s| s.as_ref()).collect();
    for d in &drop {
        ring.index_or_err(d)?;
    }
    let keep_vars: Vec<&String> = ring
        .var_names()
        .iter()
        .filter(|n| !drop.contains(&n.as_str()))
        .collect();
    let keep_params: Vec<&String> = ring
        .param_names()
        .iter()
        .filter(|n| !drop.contains(&n.as_str()))
        .collect();
    let target = VarTable::parametric(&keep_vars, &keep_params)?;
    if drop.is_empty() {
        return ideal.reduced(budget);
    }
    let gens = eliminate_into(ideal.generators(), &target, budget)?;
    Ideal::new(&target, gens)
}

/// `I : f^∞`.
pub fn saturate(ideal: &Ideal, f: &MultiPoly, budget: &Budget) -> Result<Ideal> {
    let f = f.embed(ideal.ring())?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() || ideal.is_zero_ideal() {
        return Ok(ideal.clone());
    }
    let (ring, t) = with_aux_var(ideal.ring(), "t")?;
    let mut gens = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&ring))
        .collect::<Result<Vec<_>>>()?;
    gens.push(MultiPoly::one(&ring).sub(&t.mul(&f.embed(&ring)?)));
    let out = eliminate_into(&gens, ideal.ring(), budget)?;
    Ideal::new(ideal.ring(), out)
}

/// `I : N^∞`, realized as the intersection over the generators `nₖ` of `N`
/// of `I : nₖ^∞`.
pub fn saturate_ideal(ideal: &Ideal, by: &Ideal, budget: &Budget) -> Result<Ideal> {
    let mut acc: Option<Ideal> = None;
    for n in by.generators() {
        let s = saturate(ideal, n, budget)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s, budget)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(ideal.ring())))
}

/// `I ∩ J` via `t·I + (1 − t)·J` with `t` eliminated.
pub fn intersect(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Ideal> {
    let b_gens: Vec<MultiPoly> = b
        .generators()
        .iter()
        .map(|g| g.embed(a.ring()))
        .collect::<Result<_>>()?;
    if a.is_zero_ideal() || b_gens.is_empty() {
        return Ok(Ideal::zero(a.ring()));
    }
    if a.is_unit(budget)? {
        return Ideal::new(a.ring(), b_gens);
    }
    if Ideal::new(a.ring(), b_gens.clone())?.is_unit(budget)? {
        return Ok(a.clone());
    }
    let (ring, t) = with_aux_var(a.ring(), "t")?;
    let one_minus_t = MultiPoly::one(&ring).sub(&t);
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(t.mul(&g.embed(&ring)?));
    }
    for g in &b_gens {
        gens.push(one_minus_t.mul(&g.embed(&ring)?));
    }
    let out = eliminate_into(&gens, a.ring(), budget)?;
    Ideal::new(a.ring(), out)
}

/// Krull dimension of `V(I)`: `-1` for the unit ideal.
pub fn dimension(ideal: &Ideal, budget: &Budget) -> Result<i64> {
    let n = ideal.ring().len();
    let basis = ideal.basis(&MonomialOrder::Grevlex, budget)?;
    if basis.len() == 1 && basis[0].is_constant() {
        return Ok(-1);
    }
    let leads: Vec<u64> = basis
        .iter()
        .map(|g| {
            let m = g
                .leading_monomial(&MonomialOrder::Grevlex)
                .expect("nonzero");
            m.exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    if n > 24 {
        return Err(Error::Unsupported(
            "dimension supports at most 24 variables".into(),
        ));
    }
    let mut best = 0u32;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones();
        if size <= best {
            continue;
        }
        // independent: no leading monomial supported inside the subset
        if leads.iter().all(|&l| l & !set != 0) {
            best = size;
        }
    }
    Ok(best as i64)
}

/// Substitutes a full parameter assignment into polynomials over a ring whose
/// parameter block matches `point`, dropping zero results.
pub fn specialize_params(
    polys: &[MultiPoly],
    names: &[String],
    point: &[Rational],
) -> Result<Vec<MultiPoly>> {
    let Some(first) = polys.first() else {
        return Ok(vec![]);
    };
    let ring = first.ring();
    if names.len() != point.len() {
        return Err(Error::IncompleteAssignment(
            names.get(point.len()).cloned().unwrap_or_default(),
        ));
    }
    let assignment: Vec<(usize, Rational)> = names
        .iter()
        .zip(point)
        .filter_map(|(n, v)| ring.index_of(n).map(|i| (i, v.clone())))
        .collect();
    Ok(polys
        .iter()
        .map(|p| p.substitute(&assignment))
        .filter(|p| !p.is_zero())
        .collect())
}
