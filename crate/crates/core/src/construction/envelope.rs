use std::collections::HashMap;

use super::compile::{compile_core, incidence};
use super::{invalid, Construction, ParametricSystem, Query, SystemKind};
use crate::error::{Error, Result};
use crate::exactpoly::MultiPoly;

/// Discriminant system `G ∪ {L} ∪ {det J}` of the family of lines swept by
/// the mover: `G` are the construction constraints in the dependent
/// coordinates `u`, `L` the incidence of `(x, y)` on the family line and `J`
/// the Jacobian of `(G, L)` with respect to `u`.
pub fn build_envelope_system(c: &Construction) -> Result<ParametricSystem> {
    let Query::Envelope { line, mover } = &c.query else {
        return Err(invalid("build_envelope_system needs an envelope query"));
    };
    let out = compile_core(c, &[line.as_str(), mover.as_str()], None)?;
    let ring = out.ring.clone();
    let g: Vec<MultiPoly> = out.polys.into_iter().filter(|p| !p.is_zero()).collect();
    let u: Vec<usize> = (0..ring.main_len()).collect();
    if g.len() + 1 != u.len() {
        return Err(invalid(format!(
            "family needs one degree of freedom: {} constraints for {} coordinates",
            g.len(),
            u.len()
        )));
    }
    let xy = [MultiPoly::var(&ring, "x")?, MultiPoly::var(&ring, "y")?];
    let l = incidence(&out.objs[line.as_str()], &xy);
    let rows: Vec<Vec<MultiPoly>> = g
        .iter()
        .chain(std::iter::once(&l))
        .map(|f| u.iter().map(|&i| f.derivative_index(i)).collect())
        .collect();
    let det = determinant(&rows);
    if det.is_zero() {
        return Err(Error::Degenerate(format!(
            "family line `{line}` does not move with `{mover}`"
        )));
    }
    let mut polys = g;
    polys.push(l);
    polys.push(det.normalized());
    Ok(ParametricSystem {
        polys,
        ring,
        mover_vars: out.mover_vars,
        point_vars: out.point_vars,
        kind: SystemKind::Envelope,
    })
}

/// Laplace expansion along rows, memoized on the set of used columns.
pub(crate) fn determinant(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    let ring = m[0][0].ring().clone();
    let mut memo: HashMap<u32, MultiPoly> = HashMap::new();
    fn go(
        m: &[Vec<MultiPoly>],
        used: u32,
        memo: &mut HashMap<u32, MultiPoly>,
        one: &MultiPoly,
    ) -> MultiPoly {
        let row = used.count_ones() as usize;
        if row == m.len() {
            return one.clone();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = one.sub(one);
        let mut sign_pos = 0;
        for (j, a) in m[row].iter().enumerate() {
            if used & (1 << j) != 0 {
                continue;
            }
            if !a.is_zero() {
                let minor = go(m, used | (1 << j), memo, one);
                let term = a.mul(&minor);
                acc = if sign_pos % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            sign_pos += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    go(m, 0, &mut memo, &MultiPoly::one(&ring))
}
