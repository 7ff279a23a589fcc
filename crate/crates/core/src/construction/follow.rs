//! Exact rational evaluation of a construction at one mover position.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Construction, Op};
use crate::error::{Error, Result};
use crate::exactpoly::Rational;

type P = [Rational; 2];

#[derive(Clone, Debug, PartialEq)]
pub enum Placed {
    Point(P),
    Line { at: P, dir: P },
    Circle { center: P, through: P },
}

/// Positions of every object of a construction.
#[derive(Clone, Debug, Default)]
pub struct Placement(pub HashMap<String, Placed>);

impl Placement {
    pub fn point(&self, id: &str) -> Option<&P> {
        match self.0.get(id) {
            Some(Placed::Point(p)) => Some(p),
            _ => None,
        }
    }
}

fn sub(a: &P, b: &P) -> P {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn dot(a: &P, b: &P) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

fn cross(a: &P, b: &P) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

/// Rational point `(1 − t², 2t) / (1 + t²)` of the unit circle.
fn unit_circle(t: &Rational) -> P {
    let one = Rational::one();
    let t2 = t * t;
    let den = &one + &t2;
    [(&one - &t2) / &den, (t + t) / &den]
}

/// Intersections of `at + s·dir` with a circle, ordered by `s`.
fn line_circle(at: &P, dir: &P, center: &P, r2: &Rational) -> Option<Vec<P>> {
    let w = sub(at, center);
    let a = dot(dir, dir);
    let b = dot(dir, &w) * Rational::from_integer(2.into());
    let c = dot(&w, &w) - r2;
    let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
    let root = rational_sqrt(&disc)?;
    let two_a = &a + &a;
    let mut out = Vec::new();
    for s in [(-&b - &root) / &two_a, (-&b + &root) / &two_a] {
        out.push([&at[0] + &s * &dir[0], &at[1] + &s * &dir[1]]);
    }
    Some(out)
}

/// Places every step with the mover at path parameter `t`: lines are
/// parametrized affinely, circles by the rational parametrization of the
/// unit circle. `None` when a step leaves the rationals or degenerates at
/// this position.
pub fn follow(c: &Construction, t: &Rational) -> Result<Option<Placement>> {
    let mut placed: HashMap<String, Placed> = HashMap::new();
    let mover = c.query.mover();
    for s in &c.steps {
        let pt = |id: &str| match &placed[id] {
            Placed::Point(p) => p.clone(),
            _ => unreachable!("kind checked at parse"),
        };
        let obj = match &s.op {
            Op::FreePoint(p) => Placed::Point(p.clone()),
            Op::Line(a, b) => {
                let (a, b) = (pt(a), pt(b));
                let dir = sub(&b, &a);
                if dir.iter().all(|v| v.is_zero()) {
                    return Ok(None);
                }
                Placed::Line { at: a, dir }
            }
            Op::CircleCenterPoint(o, p) => Placed::Circle {
                center: pt(o),
                through: pt(p),
            },
            Op::PerpendicularLine(p, l) | Op::ParallelLine(p, l) => {
                let Placed::Line { dir, .. } = &placed[l.as_str()] else {
                    unreachable!()
                };
                let dir = if matches!(s.op, Op::PerpendicularLine(..)) {
                    [-dir[1].clone(), dir[0].clone()]
                } else {
                    dir.clone()
                };
                Placed::Line { at: pt(p), dir }
            }
            Op::PointOn(path) => {
                if s.id != mover {
                    return Err(Error::Construction(format!(
                        "`{}` is a second point_on step",
                        s.id
                    )));
                }
                match &placed[path.as_str()] {
                    Placed::Line { at, dir } => {
                        Placed::Point([&at[0] + t * &dir[0], &at[1] + t * &dir[1]])
                    }
                    Placed::Circle { center, through } => {
                        let v = sub(through, center);
                        let [cs, sn] = unit_circle(t);
                        Placed::Point([
                            &center[0] + &cs * &v[0] - &sn * &v[1],
                            &center[1] + &sn * &v[0] + &cs * &v[1],
                        ])
                    }
                    Placed::Point(_) => unreachable!(),
                }
            }
            Op::Midpoint(a, b) => {
                let (a, b) = (pt(a), pt(b));
                let half = Rational::new(BigInt::one(), 2.into());
                Placed::Point([(&a[0] + &b[0]) * &half, (&a[1] + &b[1]) * &half])
            }
            Op::FootOfPerpendicular(p, l) => {
                let Placed::Line { at, dir } = &placed[l.as_str()] else {
                    unreachable!()
                };
                let s = dot(&sub(&pt(p), at), dir) / dot(dir, dir);
                Placed::Point([&at[0] + &s * &dir[0], &at[1] + &s * &dir[1]])
            }
            Op::Intersect(a, b, k) => {
                let found = match (&placed[a.as_str()], &placed[b.as_str()]) {
                    (Placed::Line { at: p, dir: d }, Placed::Line { at: q, dir: e }) => {
                        let den = cross(d, e);
                        if den.is_zero() {
                            None
                        } else {
                            let s = cross(&sub(q, p), e) / den;
                            Some(vec![[&p[0] + &s * &d[0], &p[1] + &s * &d[1]]])
                        }
                    }
                    (Placed::Line { at, dir }, Placed::Circle { center, through })
                    | (Placed::Circle { center, through }, Placed::Line { at, dir }) => {
                        let v = sub(through, center);
                        line_circle(at, dir, center, &dot(&v, &v))
                    }
                    (
                        Placed::Circle {
                            center: c1,
                            through: t1,
                        },
                        Placed::Circle {
                            center: c2,
                            through: t2,
                        },
                    ) => {
                        // radical line n·X = k, then intersect with the first circle
                        let (v1, v2) = (sub(t1, c1), sub(t2, c2));
                        let (r1, r2) = (dot(&v1, &v1), dot(&v2, &v2));
                        let two = Rational::from_integer(2.into());
                        let n = [(&c2[0] - &c1[0]) * &two, (&c2[1] - &c1[1]) * &two];
                        let nn = dot(&n, &n);
                        if nn.is_zero() {
                            None
                        } else {
                            let k = dot(c2, c2) - &r2 - dot(c1, c1) + &r1;
                            let at = [&n[0] * &k / &nn, &n[1] * &k / &nn];
                            let dir = [-n[1].clone(), n[0].clone()];
                            line_circle(&at, &dir, c1, &r1)
                        }
                    }
                    _ => unreachable!("kind checked at parse"),
                };
                match found {
                    Some(v) => Placed::Point(v[(*k as usize).min(v.len() - 1)].clone()),
                    None => return Ok(None),
                }
            }
        };
        placed.insert(s.id.clone(), obj);
    }
    Ok(Some(Placement(placed)))
}

/// The mover's position at path parameter `t`.
pub fn mover_position(c: &Construction, t: &Rational) -> Result<Option<P>> {
    Ok(follow(c, t)?.and_then(|p| p.point(c.query.mover()).cloned()))
}
