use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::vars::{index_map, Ring};
use super::Rational;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted by descending lexicographic exponent vector and never
/// store a zero coefficient, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct MultiPoly {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow(u32),
}

/// Checked ring operation. `Pow(k)` raises `p` to `k` and ignores `q`
/// beyond the ring check.
pub fn arith(p: &MultiPoly, q: &MultiPoly, op: ArithOp) -> Result<MultiPoly> {
    if !p.same_ring(q) {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => p.add(q),
        ArithOp::Sub => p.sub(q),
        ArithOp::Mul => p.mul(q),
        ArithOp::Pow(k) => p.pow(k),
    })
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.len()), c)])
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(c.into()))
    }

    /// The polynomial consisting of the single variable with index `i`.
    pub fn var_index(ring: &Ring, i: usize) -> Self {
        Self::from_terms(
            ring,
            vec![(Monomial::variable(ring.len(), i), Rational::one())],
        )
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self> {
        Ok(Self::var_index(ring, ring.index_or_err(name)?))
    }

    /// Builds a polynomial from arbitrary terms; duplicates are merged and
    /// zeros dropped.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ring.len());
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(ring, map)
    }

    fn from_map(ring: &Ring, map: BTreeMap<Monomial, Rational>) -> Self {
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn same_ring(&self, other: &MultiPoly) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.0[var] as u32)
            .max()
            .unwrap_or(0)
    }

    /// Indices of the variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.len())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0))
            .collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    /// Maximal monomial under `ord` with its coefficient.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Result<&Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    /// Terms sorted descending under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| ord.cmp_desc(&a.0, &b.0));
        t
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        assert!(self.same_ring(other), "ring mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(
            b[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        MultiPoly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert!(self.same_ring(other), "ring mismatch");
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *map.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Self::from_map(&self.ring, map)
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = MultiPoly::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn partial_derivative(&self, var: &str) -> Result<MultiPoly> {
        let i = self.ring.index_or_err(var)?;
        Ok(self.derivative_index(i))
    }

    pub fn derivative_index(&self, i: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let e = m2.0[i];
                m2.0[i] -= 1;
                (m2, c * Rational::from_integer(BigInt::from(e)))
            })
            .collect();
        MultiPoly::from_terms(&self.ring, terms)
    }

    /// Evaluates at a full assignment (one value per ring variable).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, v) in m.0.iter().zip(point) {
                if *e > 0 {
                    t *= num_traits::pow(v.clone(), *e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluates with 64-bit floats.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = rational_to_f64(c);
                for (e, v) in m.0.iter().zip(point) {
                    if *e > 0 {
                        t *= v.powi(*e as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Substitutes constants for some variables; the ring is unchanged.
    pub fn substitute(&self, assignment: &[(usize, Rational)]) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let mut c2 = c.clone();
                for (i, v) in assignment {
                    let e = m2.0[*i];
                    if e > 0 {
                        c2 *= num_traits::pow(v.clone(), e as usize);
                        m2.0[*i] = 0;
                    }
                }
                (m2, c2)
            })
            .collect();
        MultiPoly::from_terms(&self.ring, terms)
    }

    /// Substitutes polynomials for variables (simultaneously).
    pub fn compose(&self, images: &[(usize, MultiPoly)]) -> MultiPoly {
        let mut acc = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let mut t = MultiPoly::one(&self.ring);
            for (i, p) in images {
                let e = rest.0[*i];
                if e > 0 {
                    rest.0[*i] = 0;
                    t = t.mul(&p.pow(e as u32));
                }
            }
            acc = acc.add(&t.mul_term(&rest, c));
        }
        acc
    }

    /// Re-expresses the polynomial over another ring, matching variables by
    /// name. Fails when a variable in use is missing from `target`.
    pub fn embed(&self, target: &Ring) -> Result<MultiPoly> {
        if Arc::ptr_eq(&self.ring, target) || *self.ring == **target {
            return Ok(MultiPoly {
                ring: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let map = index_map(&self.ring, target);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut out = Monomial::one(target.len());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => out.0[j] = e,
                    None => return Err(Error::UnknownVariable(self.ring.name(i).to_string())),
                }
            }
            terms.push((out, c.clone()));
        }
        Ok(MultiPoly::from_terms(target, terms))
    }

    /// Least common multiple of all coefficient denominators over the gcd of
    /// all numerators, i.e. the factor that makes the polynomial primitive
    /// with integer coefficients (sign not adjusted).
    fn primitive_scale(&self) -> Rational {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(den, num)
    }

    /// Canonical form under `ord`: integer coefficients with content 1 and
    /// positive leading coefficient.
    pub fn normalized_with(&self, ord: &MonomialOrder) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut s = self.primitive_scale();
        if self.leading_term(ord).expect("nonzero").1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Canonical form under grevlex in the ring's variable order.
    pub fn normalized(&self) -> MultiPoly {
        self.normalized_with(&MonomialOrder::Grevlex)
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: &MonomialOrder) -> MultiPoly {
        match self.leading_term(ord) {
            Ok((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            Err(_) => self.clone(),
        }
    }

    /// Renders the polynomial with terms in descending `ord`.
    pub fn display_with(&self, ord: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(ord).iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mono = render_monomial(m, &self.ring);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

fn render_monomial(m: &Monomial, ring: &Ring) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.name(i).to_string()),
            _ => parts.push(format!("{}^{}", ring.name(i), e)),
        }
    }
    parts.join("*")
}

pub(crate) fn rational_to_f64(c: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&MonomialOrder::Grevlex))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                MultiPoly::$inner(self, rhs)
            }
        }
        impl std::ops::$tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                MultiPoly::$inner(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}
