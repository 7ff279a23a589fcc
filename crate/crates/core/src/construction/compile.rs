use std::collections::{HashMap, HashSet};

use super::{invalid, Construction, Op, ParametricSystem, Query, SystemKind};
use crate::error::{Error, Result};
use crate::exactpoly::{MultiPoly, Ring, VarTable};

type Pt = [MultiPoly; 2];

#[derive(Clone, Debug)]
pub(crate) enum Obj {
    Point(Pt),
    Line { at: Pt, dir: Pt },
    Circle { center: Pt, r2: MultiPoly },
}

/// Constraint system of the steps a query depends on.
pub(crate) struct Compiled {
    pub ring: Ring,
    pub objs: HashMap<String, Obj>,
    pub polys: Vec<MultiPoly>,
    pub mover_vars: [String; 2],
    pub point_vars: Vec<(String, [String; 2])>,
}

pub(crate) fn ancestors<'a>(c: &'a Construction, roots: &[&'a str]) -> HashSet<&'a str> {
    let mut seen: HashSet<&str> = HashSet::new();
    let mut stack: Vec<&str> = roots.to_vec();
    while let Some(id) = stack.pop() {
        if !seen.insert(id) {
            continue;
        }
        if let Some(step) = c.step(id) {
            stack.extend(step.op.args());
        }
    }
    seen
}

fn sub(a: &Pt, b: &Pt) -> Pt {
    [a[0].sub(&b[0]), a[1].sub(&b[1])]
}

fn dot(a: &Pt, b: &Pt) -> MultiPoly {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1]))
}

fn cross(a: &Pt, b: &Pt) -> MultiPoly {
    a[0].mul(&b[1]).sub(&a[1].mul(&b[0]))
}

/// Incidence polynomial of a point on a line or circle.
pub(crate) fn incidence(obj: &Obj, p: &Pt) -> MultiPoly {
    match obj {
        Obj::Line { at, dir } => cross(&sub(p, at), dir),
        Obj::Circle { center, r2 } => {
            let d = sub(p, center);
            dot(&d, &d).sub(r2)
        }
        Obj::Point(_) => unreachable!("incidence on a point"),
    }
}

/// `tracer`: the point whose coordinates become the parameters `x, y`.
pub(crate) fn compile_core(
    c: &Construction,
    roots: &[&str],
    tracer: Option<&str>,
) -> Result<Compiled> {
    let keep = ancestors(c, roots);
    let mover = c.query.mover();
    let steps: Vec<_> = c
        .steps
        .iter()
        .filter(|s| keep.contains(s.id.as_str()))
        .collect();

    let mut point_vars = Vec::new();
    let mut names = Vec::new();
    for s in &steps {
        let dependent = s.op.kind() == super::Kind::Point && !matches!(s.op, Op::FreePoint(_));
        if dependent && (Some(s.id.as_str()) != tracer || s.id == mover) {
            let k = names.len();
            let pair = [format!("x{}", k + 1), format!("x{}", k + 2)];
            names.extend(pair.iter().cloned());
            point_vars.push((s.id.clone(), pair));
        }
    }
    let ring = VarTable::parametric(&names, &["x", "y"])?;
    let var = |n: &str| MultiPoly::var(&ring, n).expect("declared");
    let mut objs: HashMap<String, Obj> = HashMap::new();
    let mut polys = Vec::new();
    let mut mover_vars = None;

    for s in &steps {
        let point = |id: &str| -> Pt {
            match &objs[id] {
                Obj::Point(p) => p.clone(),
                _ => unreachable!("kind checked at parse"),
            }
        };
        let here: Option<Pt> = if Some(s.id.as_str()) == tracer && s.id != mover {
            Some([var("x"), var("y")])
        } else {
            point_vars
                .iter()
                .find(|(id, _)| *id == s.id)
                .map(|(_, [a, b])| [var(a), var(b)])
        };
        let obj = match &s.op {
            Op::FreePoint([a, b]) => Obj::Point([
                MultiPoly::constant(&ring, a.clone()),
                MultiPoly::constant(&ring, b.clone()),
            ]),
            Op::Line(p, q) => {
                let (p, q) = (point(p), point(q));
                let dir = sub(&q, &p);
                if dir[0].is_zero() && dir[1].is_zero() {
                    return Err(Error::Degenerate(format!(
                        "`{}` joins a point to itself",
                        s.id
                    )));
                }
                Obj::Line { at: p, dir }
            }
            Op::CircleCenterPoint(o, p) => {
                let (o, p) = (point(o), point(p));
                let d = sub(&p, &o);
                let r2 = dot(&d, &d);
                if r2.is_zero() {
                    return Err(Error::Degenerate(format!("`{}` has radius zero", s.id)));
                }
                Obj::Circle { center: o, r2 }
            }
            Op::PerpendicularLine(p, l) | Op::ParallelLine(p, l) => {
                let Obj::Line { dir, .. } = &objs[l.as_str()] else {
                    unreachable!("kind checked at parse")
                };
                let dir = if matches!(s.op, Op::PerpendicularLine(..)) {
                    [dir[1].neg(), dir[0].clone()]
                } else {
                    dir.clone()
                };
                Obj::Line { at: point(p), dir }
            }
            Op::PointOn(path) => {
                if s.id != mover {
                    return Err(invalid(format!(
                        "`{}` adds a second degree of freedom; only the mover may be a point_on step",
                        s.id
                    )));
                }
                let x = here.clone().expect("dependent point");
                polys.push(incidence(&objs[path.as_str()], &x));
                Obj::Point(x)
            }
            Op::Midpoint(p, q) => {
                let x = here.clone().expect("dependent point");
                let two = MultiPoly::from_int(&ring, 2);
                let (p, q) = (point(p), point(q));
                for k in 0..2 {
                    polys.push(two.mul(&x[k]).sub(&p[k]).sub(&q[k]));
                }
                Obj::Point(x)
            }
            Op::FootOfPerpendicular(p, l) => {
                let x = here.clone().expect("dependent point");
                let line = &objs[l.as_str()];
                let Obj::Line { dir, .. } = line else {
                    unreachable!("kind checked at parse")
                };
                polys.push(incidence(line, &x));
                polys.push(dot(&sub(&x, &point(p)), dir));
                Obj::Point(x)
            }
            Op::Intersect(a, b, _) => {
                let x = here.clone().expect("dependent point");
                let (oa, ob) = (&objs[a.as_str()], &objs[b.as_str()]);
                if let (Obj::Line { dir: da, .. }, Obj::Line { dir: db, .. }) = (oa, ob) {
                    if cross(da, db).is_zero() {
                        return Err(Error::Degenerate(format!(
                            "`{}` intersects parallel lines",
                            s.id
                        )));
                    }
                }
                if let (Obj::Circle { center: ca, r2: ra }, Obj::Circle { center: cb, r2: rb }) =
                    (oa, ob)
                {
                    if ca == cb && ra == rb {
                        return Err(Error::Degenerate(format!(
                            "`{}` intersects a circle with itself",
                            s.id
                        )));
                    }
                }
                polys.push(incidence(oa, &x));
                polys.push(incidence(ob, &x));
                Obj::Point(x)
            }
        };
        if s.id == mover {
            let (_, pair) = point_vars
                .iter()
                .find(|(id, _)| *id == s.id)
                .expect("mover has variables");
            mover_vars = Some(pair.clone());
            if Some(s.id.as_str()) == tracer {
                let Obj::Point(m) = &obj else { unreachable!() };
                polys.push(var("x").sub(&m[0]));
                polys.push(var("y").sub(&m[1]));
            }
        }
        objs.insert(s.id.clone(), obj);
    }
    let mover_vars = mover_vars
        .ok_or_else(|| invalid(format!("mover `{mover}` does not influence the query")))?;
    Ok(Compiled {
        ring,
        objs,
        polys,
        mover_vars,
        point_vars,
    })
}

/// Locus system: tracer coordinates are the parameters `x, y`; every other
/// dependent point contributes two variables and its defining polynomials.
pub fn compile_to_system(c: &Construction) -> Result<ParametricSystem> {
    let Query::Locus { tracer, mover } = &c.query else {
        return Err(invalid("compile_to_system needs a locus query"));
    };
    let out = compile_core(c, &[tracer.as_str(), mover.as_str()], Some(tracer))?;
    Ok(ParametricSystem {
        polys: out.polys.into_iter().filter(|p| !p.is_zero()).collect(),
        ring: out.ring,
        mover_vars: out.mover_vars,
        point_vars: out.point_vars,
        kind: SystemKind::Locus,
    })
}
