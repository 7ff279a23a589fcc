//! Univariate factorization over the integers: modular factorization,
//! Hensel lifting and exhaustive recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;

use super::modp::{Fp, FpPoly};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Dense integer polynomial, lowest degree first, no trailing zeros.
pub(crate) type ZPoly = Vec<BigInt>;

const PRIMES: &[u64] = &[
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397,
];

/// Largest number of subset candidates tried during recombination.
const MAX_CANDIDATES: usize = 1 << 18;

pub(crate) fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub(crate) fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(a: &[BigInt]) -> ZPoly {
    let mut g = content(a);
    if g.is_zero() {
        return vec![];
    }
    if a.last().expect("nonzero").is_negative() {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

/// Exact quotient `a / b` over the integers, if it exists.
pub(crate) fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(vec![]);
    }
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().expect("nonzero");
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &r[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(ztrim(q))
    } else {
        None
    }
}

fn zderivative(a: &[BigInt]) -> ZPoly {
    ztrim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

fn to_fp(a: &[BigInt], fp: &Fp) -> FpPoly {
    let p = BigInt::from(fp.p);
    fp.trim(
        a.iter()
            .map(|c| c.mod_floor(&p).to_u64().expect("reduced"))
            .collect(),
    )
}

fn from_fp(a: &FpPoly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_poly(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Lifts `f ≡ lc·g·h (mod p)` with `g, h` monic to modulus `p^k`.
fn hensel_pair(f: &[BigInt], g: &FpPoly, h: &FpPoly, fp: &Fp, k: u32) -> (ZPoly, ZPoly) {
    let p = BigInt::from(fp.p);
    let lc = f.last().expect("nonzero").clone();
    let lc_inv_p = fp.inv(lc.mod_floor(&p).to_u64().expect("reduced"));
    let (one, s, t) = fp.xgcd(g, h);
    debug_assert_eq!(one, vec![1]);
    let mut gz = from_fp(g);
    let mut hz = from_fp(h);
    let mut pj = p.clone();
    for _ in 1..k {
        let next = &pj * &p;
        let prod = zmul(&zmul(&gz, &hz), std::slice::from_ref(&lc));
        let diff: ZPoly = (0..f.len().max(prod.len()))
            .map(|i| {
                f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default()
            })
            .collect();
        let e: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let e = fp.scale(&to_fp(&e, fp), lc_inv_p);
        if !e.is_empty() {
            let (q, r) = fp.divrem(&fp.pmul(&e, &t), g);
            let dh = fp.padd(&fp.pmul(&e, &s), &fp.pmul(&q, h));
            let dg = r;
            let add = |base: &ZPoly, d: &FpPoly| -> ZPoly {
                let n = base.len().max(d.len());
                let v: ZPoly = (0..n)
                    .map(|i| {
                        base.get(i).cloned().unwrap_or_default()
                            + &pj * BigInt::from(*d.get(i).unwrap_or(&0))
                    })
                    .collect();
                mod_poly(&v, &next)
            };
            gz = add(&gz, &dg);
            hz = add(&hz, &dh);
        }
        pj = next;
    }
    (gz, hz)
}

/// Lifts the monic modular factors of `f` to monic factors modulo `p^k`.
fn hensel_multi(f: &[BigInt], factors: &[FpPoly], fp: &Fp, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(fp.p).pow(k);
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero");
        let inv = mod_inverse(lc, &modulus);
        return vec![mod_poly(&zmul(f, &[inv]), &modulus)];
    }
    let mid = factors.len() / 2;
    let g = factors[..mid]
        .iter()
        .fold(vec![1u64], |acc, x| fp.pmul(&acc, x));
    let h = factors[mid..]
        .iter()
        .fold(vec![1u64], |acc, x| fp.pmul(&acc, x));
    let (gz, hz) = hensel_pair(f, &g, &h, fp, k);
    let mut out = hensel_multi(&gz, &factors[..mid], fp, k);
    out.extend(hensel_multi(&hz, &factors[mid..], fp, k));
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Factors a primitive squarefree integer polynomial of positive degree.
///
/// Every candidate factor `H` that divides the remaining polynomial is handed
/// to `accept`; accepted candidates are split off. The last remaining
/// cofactor is returned without consulting `accept`. Output factors are
/// primitive with positive leading coefficient.
pub(crate) fn factor_squarefree_z(
    f: &[BigInt],
    budget: &Budget,
    mut accept: impl FnMut(&ZPoly) -> Result<bool>,
) -> Result<Vec<ZPoly>> {
    let f = primitive(f);
    if f.len() <= 2 {
        return Ok(vec![f]);
    }
    let lc = f.last().expect("nonzero").clone();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(Fp, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for &p in PRIMES {
        let fp = Fp { p };
        if (lc.clone() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fm = to_fp(&f, &fp);
        if !fp.is_squarefree(&fm) {
            continue;
        }
        let facs = fp.factor_squarefree(&fm, &mut rng);
        if facs.len() == 1 {
            return Ok(vec![f]);
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((fp, facs));
        }
        tried += 1;
        if tried == 3 {
            break;
        }
    }
    let Some((fp, modular)) = best else {
        return Err(Error::FactorBudget(
            "no suitable prime for modular factorization".into(),
        ));
    };
    // Mignotte-style bound on the coefficients of lc·(any factor)
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    let bound = (BigInt::one() << (f.len() - 1)) * norm * lc.abs() * 2;
    let p = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus *= &p;
        k += 1;
    }
    let lifted = hensel_multi(&f, &modular, &fp, k);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut candidates = 0usize;
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        let mut hit = false;
        loop {
            candidates += 1;
            if candidates > MAX_CANDIDATES {
                return Err(Error::FactorBudget(
                    "too many recombination candidates".into(),
                ));
            }
            if candidates.is_multiple_of(256) {
                budget.check_time()?;
            }
            let lcur = current.last().expect("nonzero").clone();
            let prod = idx.iter().fold(vec![lcur.clone()], |acc, &i| {
                mod_poly(&zmul(&acc, &remaining[i]), &modulus)
            });
            let cand = primitive(&symmetric(&prod, &modulus));
            if let Some(q) = zdiv_exact(&current, &cand) {
                if accept(&cand)? {
                    found.push(cand);
                    current = primitive(&q);
                    let mut k = 0;
                    remaining.retain(|_| {
                        k += 1;
                        !idx.contains(&(k - 1))
                    });
                    hit = true;
                    break;
                }
            }
            if !next_combination(&mut idx, remaining.len()) {
                break;
            }
        }
        if !hit {
            size += 1;
        }
    }
    if current.len() > 1 {
        found.push(current);
    }
    Ok(found)
}

/// Squarefree check over the rationals.
pub(crate) fn is_squarefree_z(f: &[BigInt]) -> bool {
    let d = zderivative(f);
    if d.is_empty() {
        return f.len() <= 1;
    }
    zgcd(f, &d).len() <= 1
}

/// Primitive gcd over the integers (primitive pseudo-remainder sequence).
pub(crate) fn zgcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (mut a, mut b) = (primitive(a), primitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    a
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().expect("nonzero").clone();
        let shift = r.len() - b.len();
        r = r.iter().map(|c| c * &lb).collect();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &lr * y;
        }
        r = ztrim(r);
    }
    r
}
