//! Floating-point sampling of plane curves and point sets for display.
//!
//! Everything here is advisory: coefficients become `f64` on entry and no
//! result feeds back into the exact pipeline.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactpoly::factor::factor_with_budget;
use crate::exactpoly::{
    exact_quotient, gcd_poly, rational_to_f64, MonomialOrder, MultiPoly, VarTable,
};
use crate::ideals::{groebner_basis, Ideal};
use crate::locus::{Closure, LocusResult, Tag};

/// `[xmin, xmax, ymin, ymax]`.
pub type Bbox = [f64; 4];

pub const MIN_RESOLUTION: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MarkerKind {
    Hole,
    Isolated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Marker {
    pub x: f64,
    pub y: f64,
    pub kind: MarkerKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotData {
    pub polylines: Vec<Vec<[f64; 2]>>,
    pub markers: Vec<Marker>,
    pub bbox: Bbox,
    /// Special components, drawn dashed by the web client.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub special_polylines: Vec<Vec<[f64; 2]>>,
}

impl PlotData {
    pub fn empty(bbox: Bbox) -> Self {
        PlotData {
            polylines: Vec::new(),
            markers: Vec::new(),
            bbox,
            special_polylines: Vec::new(),
        }
    }
}

pub fn check_bbox(bbox: &Bbox) -> Result<()> {
    let [x0, x1, y0, y1] = *bbox;
    if bbox.iter().all(|v| v.is_finite()) && x0 < x1 && y0 < y1 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("bad bounding box {bbox:?}")))
    }
}

/// A bivariate polynomial with `f64` coefficients.
struct Sampler(Vec<(i32, i32, f64)>);

impl Sampler {
    fn new(f: &MultiPoly) -> Result<Self> {
        if f.ring().len() != 2 {
            return Err(Error::Unsupported(format!(
                "`{f}` is not a polynomial in two variables"
            )));
        }
        Ok(Sampler(
            f.terms()
                .iter()
                .map(|(m, c)| {
                    (
                        m.exponents()[0] as i32,
                        m.exponents()[1] as i32,
                        rational_to_f64(c),
                    )
                })
                .collect(),
        ))
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        self.0
            .iter()
            .map(|&(i, j, c)| c * x.powi(i) * y.powi(j))
            .sum()
    }
}

type Key = (i64, i64);

/// Marching squares on a `resolution × resolution` grid over `bbox`.
///
/// A corner is "in" when `f > 0`. Saddle cells take the sign of the cell
/// center. Segments are chained into polylines; a closed loop repeats its
/// first vertex at the end.
pub fn sample_implicit_curve(f: &MultiPoly, bbox: Bbox, resolution: usize) -> Result<PlotData> {
    check_bbox(&bbox)?;
    if resolution < MIN_RESOLUTION {
        return Err(Error::Unsupported(format!(
            "resolution {resolution} below {MIN_RESOLUTION}"
        )));
    }
    let s = Sampler::new(f)?;
    let n = resolution;
    let [x0, x1, y0, y1] = bbox;
    let (dx, dy) = ((x1 - x0) / n as f64, (y1 - y0) / n as f64);
    let px = |i: usize| if i == n { x1 } else { x0 + i as f64 * dx };
    let py = |j: usize| if j == n { y1 } else { y0 + j as f64 * dy };
    let vals: Vec<Vec<f64>> = (0..=n)
        .map(|j| (0..=n).map(|i| s.eval(px(i), py(j))).collect())
        .collect();
    let inside = |i: usize, j: usize| vals[j][i] > 0.0;

    // a crossing on the edge between grid corners a and b (a before b)
    let cross = |a: (usize, usize), b: (usize, usize)| -> [f64; 2] {
        let (va, vb) = (vals[a.1][a.0], vals[b.1][b.0]);
        let t = (va / (va - vb)).clamp(0.0, 1.0);
        let (ax, ay, bx, by) = (px(a.0), py(a.1), px(b.0), py(b.1));
        [ax + t * (bx - ax), ay + t * (by - ay)]
    };

    let mut segments: Vec<([f64; 2], [f64; 2])> = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let c = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let bits: Vec<bool> = c.iter().map(|&(a, b)| inside(a, b)).collect();
            // edges: bottom, right, top, left, each between canonical corners
            let edges = [(c[0], c[1]), (c[1], c[2]), (c[3], c[2]), (c[0], c[3])];
            let ends = [(0, 1), (1, 2), (2, 3), (0, 3)];
            let crossing: Vec<usize> = (0..4)
                .filter(|&e| bits[ends[e].0] != bits[ends[e].1])
                .collect();
            let pt = |e: usize| cross(edges[e].0, edges[e].1);
            match crossing.len() {
                2 => segments.push((pt(crossing[0]), pt(crossing[1]))),
                4 => {
                    let center = s.eval(px(i) + dx / 2.0, py(j) + dy / 2.0) > 0.0;
                    if bits[0] == center {
                        // corners 0 and 2 connect through the center; cut off 1 and 3
                        segments.push((pt(0), pt(1)));
                        segments.push((pt(2), pt(3)));
                    } else {
                        segments.push((pt(3), pt(0)));
                        segments.push((pt(1), pt(2)));
                    }
                }
                _ => {}
            }
        }
    }

    let q = (dx.min(dy) * 1e-7).max(f64::MIN_POSITIVE);
    let key = |p: &[f64; 2]| -> Key { ((p[0] / q).round() as i64, (p[1] / q).round() as i64) };
    let mut polylines = chain(&segments, key);
    polylines.retain(|l| l.len() >= 2);
    Ok(PlotData {
        polylines,
        markers: Vec::new(),
        bbox,
        special_polylines: Vec::new(),
    })
}

/// Joins segments sharing endpoints. Walks start at odd-degree vertices,
/// then at the smallest remaining vertex of each loop.
fn chain(segments: &[([f64; 2], [f64; 2])], key: impl Fn(&[f64; 2]) -> Key) -> Vec<Vec<[f64; 2]>> {
    let mut adj: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
    let mut ends: Vec<(Key, Key)> = Vec::new();
    let mut coords: BTreeMap<Key, [f64; 2]> = BTreeMap::new();
    for (a, b) in segments {
        let (ka, kb) = (key(a), key(b));
        if ka == kb {
            continue;
        }
        let id = ends.len();
        ends.push((ka, kb));
        adj.entry(ka).or_default().push(id);
        adj.entry(kb).or_default().push(id);
        coords.entry(ka).or_insert(*a);
        coords.entry(kb).or_insert(*b);
    }
    let mut used = vec![false; ends.len()];
    let mut out = Vec::new();
    let starts: Vec<Key> = adj
        .iter()
        .filter(|(_, e)| e.len() % 2 == 1)
        .map(|(k, _)| *k)
        .chain(adj.keys().copied())
        .collect();
    for start in starts {
        while let Some(&first) = adj[&start].iter().find(|&&e| !used[e]) {
            let mut line = vec![coords[&start]];
            let mut at = start;
            let mut next = Some(first);
            while let Some(e) = next {
                used[e] = true;
                let (a, b) = ends[e];
                at = if a == at { b } else { a };
                line.push(coords[&at]);
                next = adj[&at].iter().copied().find(|&e| !used[e]);
            }
            out.push(line);
        }
    }
    out
}

/// Real roots in `[lo, hi]` of a dense polynomial (coefficients from the
/// constant term up), isolated between the critical points.
fn real_roots(c: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let c: Vec<f64> = {
        let mut v = c.to_vec();
        while v.len() > 1 && v.last() == Some(&0.0) {
            v.pop();
        }
        v
    };
    if c.len() <= 1 {
        return Vec::new();
    }
    let eval = |x: f64| c.iter().rev().fold(0.0, |acc, &a| acc * x + a);
    let deriv: Vec<f64> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &a)| a * i as f64)
        .collect();
    let mut cuts = vec![lo];
    cuts.extend(
        real_roots(&deriv, lo, hi)
            .into_iter()
            .filter(|&r| r > lo && r < hi),
    );
    cuts.push(hi);
    let scale: f64 = c.iter().map(|a| a.abs()).fold(0.0, f64::max);
    let tol = scale * 1e-10;
    let mut roots: Vec<f64> = Vec::new();
    for w in cuts.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (fa, fb) = (eval(a), eval(b));
        if fa.abs() <= tol {
            roots.push(a);
            continue;
        }
        if fa.signum() == fb.signum() {
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if eval(m).signum() == fa.signum() {
                a = m;
            } else {
                b = m;
            }
        }
        roots.push(0.5 * (a + b));
    }
    if eval(hi).abs() <= tol {
        roots.push(hi);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + b.abs()));
    roots
}

fn dense(p: &MultiPoly, v: usize) -> Vec<f64> {
    let mut out = vec![0.0; p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        out[m.exponents()[v] as usize] = rational_to_f64(c);
    }
    out
}

/// Real roots in `[lo, hi]` of the univariate generator in variable `v` of
/// a lex basis. Linear factors give exact roots; the rest are isolated
/// numerically. `None` when no such generator exists.
fn coordinate_roots(
    ideal: &Ideal,
    v: usize,
    lo: f64,
    hi: f64,
    budget: &Budget,
) -> Result<Option<Vec<f64>>> {
    let ring = ideal.ring();
    let names = [ring.name(1 - v).to_string(), ring.name(v).to_string()];
    let lex = VarTable::new(&names)?;
    let gb = groebner_basis(
        &Ideal::embedded(&lex, ideal.generators())?,
        &MonomialOrder::Lex,
        budget,
    )?;
    let Some(p) = gb.iter().find(|g| g.support() == vec![1]) else {
        return Ok(None);
    };
    let factors = match factor_with_budget(p, budget) {
        Ok(f) => f.into_iter().map(|(f, _)| f).collect(),
        Err(e) if e.is_budget() => {
            let g = gcd_poly(p, &p.derivative_index(1))?;
            vec![exact_quotient(p, &g)?.unwrap_or_else(|| p.clone())]
        }
        Err(e) => return Err(e),
    };
    let mut roots = Vec::new();
    for f in factors {
        let c = dense(&f, 1);
        if c.len() == 2 {
            let m = f
                .terms()
                .iter()
                .find(|(m, _)| m.exponents()[1] == 1)
                .map(|t| t.1.clone())
                .unwrap();
            let r = rational_to_f64(&(-f.constant_term() / m));
            if r >= lo && r <= hi {
                roots.push(r);
            }
        } else {
            roots.extend(real_roots(&c, lo, hi));
        }
    }
    roots.sort_by(f64::total_cmp);
    Ok(Some(roots))
}

/// Real points of a zero-dimensional ideal in two variables that fall in
/// `bbox`, sorted. Candidates come from the two eliminants and are kept
/// when every generator nearly vanishes.
pub fn real_points(ideal: &Ideal, bbox: Bbox, budget: &Budget) -> Result<Vec<[f64; 2]>> {
    check_bbox(&bbox)?;
    if ideal.ring().len() != 2 {
        return Err(Error::Unsupported(
            "point sets must live in the plane".into(),
        ));
    }
    let xs = coordinate_roots(ideal, 0, bbox[0], bbox[1], budget)?;
    let ys = coordinate_roots(ideal, 1, bbox[2], bbox[3], budget)?;
    let (Some(xs), Some(ys)) = (xs, ys) else {
        return Ok(Vec::new());
    };
    let gens: Vec<(Sampler, f64)> = ideal
        .generators()
        .iter()
        .map(|g| {
            let s = Sampler::new(g)?;
            let scale = s.0.iter().map(|t| t.2.abs()).fold(0.0, f64::max);
            Ok((s, scale))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for &x in &xs {
        for &y in &ys {
            let mag = 1.0 + x.abs().max(y.abs());
            let ok = gens.iter().all(|(s, scale)| {
                let deg = s.0.iter().map(|t| t.0 + t.1).max().unwrap_or(0);
                s.eval(x, y).abs() <= 1e-6 * scale * mag.powi(deg)
            });
            if ok {
                out.push([x, y]);
            }
        }
    }
    Ok(out)
}

/// Plot of a locus result: normal curves, special curves, hole markers and
/// isolated points.
pub fn plot_result(
    result: &LocusResult,
    bbox: Bbox,
    resolution: usize,
    budget: &Budget,
) -> Result<PlotData> {
    let mut plot = PlotData::empty(bbox);
    for comp in &result.components {
        match (&comp.closure, comp.tag) {
            (Closure::Curve(f), Tag::Normal) => {
                plot.polylines
                    .extend(sample_implicit_curve(f, bbox, resolution)?.polylines);
            }
            (Closure::Curve(f), Tag::Special) => {
                plot.special_polylines
                    .extend(sample_implicit_curve(f, bbox, resolution)?.polylines);
            }
            (Closure::Points(p), Tag::Isolated | Tag::Normal) => {
                for [x, y] in real_points(p, bbox, budget)? {
                    plot.markers.push(Marker {
                        x,
                        y,
                        kind: MarkerKind::Isolated,
                    });
                }
            }
            _ => {}
        }
        for hole in &comp.holes {
            for [x, y] in real_points(hole, bbox, budget)? {
                plot.markers.push(Marker {
                    x,
                    y,
                    kind: MarkerKind::Hole,
                });
            }
        }
    }
    Ok(plot)
}
