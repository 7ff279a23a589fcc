//! Loci and discriminants from parametric systems.
//!
//! The cover method splits the plane of tracer positions with a
//! comprehensive Gröbner system, keeps the solvable segments, breaks their
//! closures into irreducible curves and points, and discards curves along
//! which the mover stays put. The elimination method projects the whole
//! system and keeps everything.

mod json;

use std::collections::BTreeMap;
use std::time::Instant;

pub use json::{component_json, result_json, ComponentJson, DiagnosticsJson, ResultJson};

use crate::budget::Budget;
use crate::cgs::{groebner_cover, Segment};
use crate::construction::{ParametricSystem, SystemKind};
use crate::error::{Error, Result};
use crate::exactpoly::factor::factor_with_budget;
use crate::exactpoly::gcd::gcd_with_budget;
use crate::exactpoly::{Monomial, MultiPoly, Ring, VarTable};
use crate::ideals::{dimension, eliminate_into, intersect, saturate, Ideal};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tag {
    Normal,
    Special,
    Isolated,
    Anomalous,
}

impl Tag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tag::Normal => "normal",
            Tag::Special => "special",
            Tag::Isolated => "isolated",
            Tag::Anomalous => "anomalous",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    GrobnerCover,
    Elimination,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::GrobnerCover => "grobner_cover",
            Method::Elimination => "elimination",
        }
    }

    pub fn parse(name: &str) -> Option<Method> {
        match name {
            "grobner_cover" => Some(Method::GrobnerCover),
            "elimination" => Some(Method::Elimination),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Closure {
    /// Irreducible, normalized curve polynomial.
    Curve(MultiPoly),
    /// Zero-dimensional ideal.
    Points(Ideal),
    /// A whole-plane piece.
    Plane,
}

#[derive(Clone, Debug)]
pub struct LocusComponent {
    pub closure: Closure,
    /// Zero-dimensional ideals of points missing from the closure.
    pub holes: Vec<Ideal>,
    pub tag: Tag,
    pub mover_fiber_dim: i64,
    pub source_segment: Option<usize>,
}

impl LocusComponent {
    pub fn curve(&self) -> Option<&MultiPoly> {
        match &self.closure {
            Closure::Curve(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Diagnostics {
    pub segments: usize,
    pub ms: u64,
    /// Curves classified differently in different segments.
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct LocusResult {
    pub method: Method,
    pub kind: SystemKind,
    pub components: Vec<LocusComponent>,
    /// Display string of the union of the normal components.
    pub assembled: String,
    pub diagnostics: Diagnostics,
}

impl LocusResult {
    pub fn normal(&self) -> impl Iterator<Item = &LocusComponent> {
        self.components.iter().filter(|c| c.tag == Tag::Normal)
    }

    pub fn tagged(&self, tag: Tag) -> impl Iterator<Item = &LocusComponent> {
        self.components.iter().filter(move |c| c.tag == tag)
    }
}

/// Closure pieces of `V(E) \ V(h)` in the plane.
#[derive(Clone, Debug)]
pub struct PlaneDecomposition {
    pub curves: Vec<MultiPoly>,
    /// Zero-dimensional part off the curves (the unit ideal when empty).
    pub residue: Ideal,
    pub is_plane: bool,
}

pub fn decompose_plane_set(
    e: &Ideal,
    h: &MultiPoly,
    budget: &Budget,
) -> Result<PlaneDecomposition> {
    let ring = e.ring();
    let closed = if h.is_constant() {
        e.reduced(budget)?
    } else {
        saturate(e, h, budget)?.reduced(budget)?
    };
    if closed.is_zero_ideal() {
        return Ok(PlaneDecomposition {
            curves: vec![],
            residue: Ideal::unit(ring),
            is_plane: true,
        });
    }
    let mut g = MultiPoly::zero(ring);
    for p in closed.generators() {
        g = gcd_with_budget(&g, p, budget)?;
        if g.is_constant() {
            break;
        }
    }
    if g.is_constant() {
        return Ok(PlaneDecomposition {
            curves: vec![],
            residue: closed,
            is_plane: false,
        });
    }
    let curves = factor_with_budget(&g, budget)?
        .into_iter()
        .map(|(f, _)| f)
        .collect();
    let residue = saturate(&closed, &g, budget)?.reduced(budget)?;
    Ok(PlaneDecomposition {
        curves,
        residue,
        is_plane: false,
    })
}

fn mover_ring(sys: &ParametricSystem) -> Result<Ring> {
    VarTable::new(&sys.mover_vars)
}

/// Dimension of the projection onto the mover coordinates of
/// `V(polys ∪ extra) \ V(h)`.
fn mover_projection_dim(
    polys: &[MultiPoly],
    extra: &[MultiPoly],
    h: &MultiPoly,
    sys: &ParametricSystem,
    budget: &Budget,
) -> Result<i64> {
    let mut gens = polys
        .iter()
        .map(|p| p.embed(&sys.ring))
        .collect::<Result<Vec<_>>>()?;
    for p in extra {
        gens.push(p.embed(&sys.ring)?);
    }
    let mut j = Ideal::new(&sys.ring, gens)?;
    if !h.is_constant() {
        j = saturate(&j, &h.embed(&sys.ring)?, budget)?;
    }
    let target = mover_ring(sys)?;
    if j.is_unit(budget)? {
        return Ok(-1);
    }
    let projected = eliminate_into(j.generators(), &target, budget)?;
    dimension(&Ideal::new(&target, projected)?, budget)
}

/// Normal when the mover moves along the curve, special when a single mover
/// position produces it.
pub fn classify_component(
    f: &MultiPoly,
    seg: &Segment,
    sys: &ParametricSystem,
    budget: &Budget,
) -> Result<(Tag, i64)> {
    let mut extra: Vec<MultiPoly> = seg.null.generators().to_vec();
    extra.push(f.clone());
    let d = mover_projection_dim(&seg.basis, &extra, &seg.nonnull, sys, budget)?;
    let tag = match d {
        0 => Tag::Special,
        d if d >= 1 => Tag::Normal,
        _ => Tag::Anomalous,
    };
    Ok((tag, d))
}

pub fn compute_locus(
    sys: &ParametricSystem,
    method: Method,
    budget: &Budget,
) -> Result<LocusResult> {
    match method {
        Method::GrobnerCover => compute_locus_cover(sys, budget),
        Method::Elimination => compute_locus_elimination_result(sys, budget),
    }
}

/// Ideal of the closure of the projection onto the plane.
pub fn compute_locus_elimination(sys: &ParametricSystem, budget: &Budget) -> Result<Ideal> {
    let pring = sys.ring.param_ring();
    let gens = eliminate_into(&sys.polys, &pring, budget)?;
    Ideal::new(&pring, gens)?.reduced(budget)
}

struct CurveInstance {
    f: MultiPoly,
    tag: Tag,
    dim: i64,
    segment: usize,
    lpp: Vec<Monomial>,
}

struct SegmentPieces {
    curves: Vec<CurveInstance>,
    residue: Option<(Ideal, Vec<Monomial>)>,
    plane: bool,
}

pub fn compute_locus_cover(sys: &ParametricSystem, budget: &Budget) -> Result<LocusResult> {
    let start = Instant::now();
    let params = sys.params().to_vec();
    let cover = groebner_cover(&sys.polys, &params, sys.vars(), budget)?;
    let ord = cover.order();
    let pring = cover.param_ring();

    let indexed: Vec<(usize, &Segment)> = cover.segments.iter().enumerate().collect();
    let dropped: Vec<&Segment> = cover
        .segments
        .iter()
        .filter(|s| s.is_inconsistent())
        .collect();
    let pieces = par::try_map(&indexed, |&(i, seg)| -> Result<Option<SegmentPieces>> {
        if seg.is_inconsistent() {
            return Ok(None);
        }
        budget.check_time()?;
        let dec = decompose_plane_set(&seg.null, &seg.nonnull, budget)?;
        let lpp = seg.leading_variable_monomials(&ord);
        let mut curves = Vec::new();
        for f in dec.curves {
            let (tag, dim) = classify_component(&f, seg, sys, budget)?;
            curves.push(CurveInstance {
                f,
                tag,
                dim,
                segment: i,
                lpp: lpp.clone(),
            });
        }
        let residue = (!dec.residue.is_unit(budget)?).then_some((dec.residue, lpp));
        Ok(Some(SegmentPieces {
            curves,
            residue,
            plane: dec.is_plane,
        }))
    })?;

    let mut notes = Vec::new();
    let mut components = Vec::new();

    // group curve instances by polynomial
    let mut groups: BTreeMap<(u32, String), Vec<&CurveInstance>> = BTreeMap::new();
    for inst in pieces.iter().flatten().flat_map(|p| &p.curves) {
        groups
            .entry((inst.f.total_degree().unwrap_or(0), inst.f.to_string()))
            .or_default()
            .push(inst);
    }
    struct Group<'a> {
        f: MultiPoly,
        tag: Tag,
        dim: i64,
        segment: usize,
        lpps: Vec<&'a Vec<Monomial>>,
    }
    let mut curve_groups = Vec::new();
    for ((_, name), insts) in &groups {
        let tags: Vec<Tag> = insts.iter().map(|i| i.tag).collect();
        let tag = if tags.contains(&Tag::Normal) {
            Tag::Normal
        } else if tags.contains(&Tag::Special) {
            Tag::Special
        } else {
            Tag::Anomalous
        };
        if tags.iter().any(|t| *t != tag) {
            let list: Vec<String> = insts
                .iter()
                .map(|i| format!("segment {}: {}", i.segment, i.tag.as_str()))
                .collect();
            notes.push(format!("{name} classified as {}", list.join(", ")));
        }
        let lead = insts
            .iter()
            .find(|i| i.tag == tag)
            .expect("tag taken from instances");
        curve_groups.push(Group {
            f: insts[0].f.clone(),
            tag,
            dim: insts.iter().map(|i| i.dim).max().unwrap_or(0),
            segment: lead.segment,
            lpps: insts.iter().map(|i| &i.lpp).collect(),
        });
    }

    // holes: points of a normal curve lying in segments without solutions
    let normal: Vec<&Group> = curve_groups
        .iter()
        .filter(|g| g.tag == Tag::Normal)
        .collect();
    let holes = par::try_map(&normal, |g| -> Result<(Vec<Ideal>, bool)> {
        let mut acc: Option<Ideal> = None;
        let mut anomalous = false;
        for seg in &dropped {
            let j = seg.null.with_generators(std::slice::from_ref(&g.f))?;
            let j = if seg.nonnull.is_constant() {
                j
            } else {
                saturate(&j, &seg.nonnull, budget)?
            };
            match dimension(&j, budget)? {
                -1 => {}
                0 => {
                    acc = Some(match acc {
                        None => j,
                        Some(a) => intersect(&a, &j, budget)?,
                    })
                }
                _ => anomalous = true,
            }
        }
        let holes = match acc {
            Some(a) => vec![a.reduced(budget)?],
            None => vec![],
        };
        Ok((holes, anomalous))
    })?;
    let mut hole_iter = holes.into_iter();
    for g in &curve_groups {
        let (holes, anomalous) = if g.tag == Tag::Normal {
            hole_iter.next().expect("one entry per normal curve")
        } else {
            (vec![], false)
        };
        let tag = if anomalous {
            notes.push(format!(
                "{} loses a curve to segments without solutions",
                g.f
            ));
            Tag::Anomalous
        } else {
            g.tag
        };
        components.push(LocusComponent {
            closure: Closure::Curve(g.f.clone()),
            holes,
            tag,
            mover_fiber_dim: g.dim,
            source_segment: Some(g.segment),
        });
    }

    // point residues: absorbed by a curve with the same generic leading
    // monomials, otherwise reported as isolated
    for (i, piece) in pieces.iter().enumerate() {
        let Some(piece) = piece else { continue };
        if piece.plane {
            notes.push(format!("segment {i} covers the whole plane"));
            components.push(LocusComponent {
                closure: Closure::Plane,
                holes: vec![],
                tag: Tag::Anomalous,
                mover_fiber_dim: -1,
                source_segment: Some(i),
            });
        }
        let Some((residue, lpp)) = &piece.residue else {
            continue;
        };
        let mut rest = residue.clone();
        for g in &curve_groups {
            if g.lpps.contains(&lpp) {
                rest = saturate(&rest, &g.f.embed(&pring)?, budget)?;
                if rest.is_unit(budget)? {
                    break;
                }
            }
        }
        if rest.is_unit(budget)? {
            continue;
        }
        let seg = &cover.segments[i];
        let mut extra = seg.null.generators().to_vec();
        extra.extend(rest.generators().iter().cloned());
        let dim = mover_projection_dim(&seg.basis, &extra, &seg.nonnull, sys, budget)?;
        components.push(LocusComponent {
            closure: Closure::Points(rest.reduced(budget)?),
            holes: vec![],
            tag: Tag::Isolated,
            mover_fiber_dim: dim,
            source_segment: Some(i),
        });
    }

    sort_components(&mut components, budget)?;
    let assembled = assemble(&components, budget)?;
    Ok(LocusResult {
        method: Method::GrobnerCover,
        kind: sys.kind,
        components,
        assembled,
        diagnostics: Diagnostics {
            segments: cover.segments.len(),
            ms: start.elapsed().as_millis() as u64,
            notes,
        },
    })
}

fn compute_locus_elimination_result(
    sys: &ParametricSystem,
    budget: &Budget,
) -> Result<LocusResult> {
    let start = Instant::now();
    let closure = compute_locus_elimination(sys, budget)?;
    let one = MultiPoly::one(closure.ring());
    let dec = decompose_plane_set(&closure, &one, budget)?;
    if dec.is_plane {
        return Err(Error::Degenerate("the locus fills the plane".into()));
    }
    let mut components = par::try_map(&dec.curves, |f| -> Result<LocusComponent> {
        let dim = mover_projection_dim(&sys.polys, std::slice::from_ref(f), &one, sys, budget)?;
        Ok(LocusComponent {
            closure: Closure::Curve(f.clone()),
            holes: vec![],
            tag: Tag::Normal,
            mover_fiber_dim: dim,
            source_segment: None,
        })
    })?;
    if !dec.residue.is_unit(budget)? {
        let dim = mover_projection_dim(&sys.polys, dec.residue.generators(), &one, sys, budget)?;
        components.push(LocusComponent {
            closure: Closure::Points(dec.residue.clone()),
            holes: vec![],
            tag: Tag::Normal,
            mover_fiber_dim: dim,
            source_segment: None,
        });
    }
    sort_components(&mut components, budget)?;
    let assembled = assemble(&components, budget)?;
    Ok(LocusResult {
        method: Method::Elimination,
        kind: sys.kind,
        components,
        assembled,
        diagnostics: Diagnostics {
            segments: 0,
            ms: start.elapsed().as_millis() as u64,
            notes: vec![],
        },
    })
}

pub(crate) fn closure_text(c: &Closure, budget: &Budget) -> Result<String> {
    Ok(match c {
        Closure::Curve(f) => f.to_string(),
        Closure::Points(i) => i.display_generators(budget)?.join(", "),
        Closure::Plane => "0".to_string(),
    })
}

fn sort_components(components: &mut [LocusComponent], budget: &Budget) -> Result<()> {
    let mut keyed = Vec::with_capacity(components.len());
    for c in components.iter() {
        let rank = match c.closure {
            Closure::Curve(ref f) => f.total_degree().unwrap_or(0) as i64,
            Closure::Points(_) => 100,
            Closure::Plane => 200,
        };
        keyed.push((c.tag, rank, closure_text(&c.closure, budget)?));
    }
    let mut order: Vec<usize> = (0..components.len()).collect();
    order.sort_by(|&a, &b| keyed[a].cmp(&keyed[b]));
    let sorted: Vec<LocusComponent> = order.iter().map(|&i| components[i].clone()).collect();
    components.clone_from_slice(&sorted);
    Ok(())
}

/// `V(f) \ V(g1, g2) ∪ ...` over the normal components; `V(1)` when empty.
pub(crate) fn assemble(components: &[LocusComponent], budget: &Budget) -> Result<String> {
    let mut parts = Vec::new();
    for c in components.iter().filter(|c| c.tag == Tag::Normal) {
        let mut s = format!("V({})", closure_text(&c.closure, budget)?);
        for h in &c.holes {
            s.push_str(&format!(
                " \\ V({})",
                h.display_generators(budget)?.join(", ")
            ));
        }
        parts.push(s);
    }
    Ok(if parts.is_empty() {
        "V(1)".to_string()
    } else {
        parts.join(" ∪ ")
    })
}

#[cfg(test)]
mod tests;
