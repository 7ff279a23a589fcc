use num_traits::Zero;

use super::{radical_member, Ideal};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactpoly::Rational;

/// The set `V(E) \ V(N)`.
#[derive(Clone, Debug)]
pub struct LocallyClosedSet {
    pub closed: Ideal,
    pub removed: Ideal,
}

impl LocallyClosedSet {
    pub fn new(closed: Ideal, removed: Ideal) -> Result<Self> {
        if closed.ring() != removed.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(LocallyClosedSet { closed, removed })
    }
}

/// Empty iff `E` is the unit ideal or every generator of `N` lies in `√E`.
pub fn is_empty_lcs(set: &LocallyClosedSet, budget: &Budget) -> Result<bool> {
    if set.closed.is_unit(budget)? {
        return Ok(true);
    }
    for n in set.removed.generators() {
        if !radical_member(n, &set.closed, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Point membership: every generator of `E` vanishes and some generator of
/// `N` does not.
pub fn lcs_contains(set: &LocallyClosedSet, point: &[Rational]) -> Result<bool> {
    if point.len() != set.closed.ring().len() {
        return Err(Error::IncompleteAssignment(format!(
            "expected {} coordinates, got {}",
            set.closed.ring().len(),
            point.len()
        )));
    }
    let on_closed = set
        .closed
        .generators()
        .iter()
        .all(|g| g.eval(point).is_zero());
    let off_removed = set
        .removed
        .generators()
        .iter()
        .any(|g| !g.eval(point).is_zero());
    Ok(on_closed && off_removed)
}
