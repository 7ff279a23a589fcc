//! Construction documents, validation, and compilation into parametric
//! polynomial systems.

mod compile;
mod envelope;
mod follow;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{parse_rational, MultiPoly, Rational, Ring};

pub use compile::compile_to_system;
pub use envelope::build_envelope_system;
pub use follow::{follow, mover_position, Placement};

#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    FreePoint([Rational; 2]),
    Line(String, String),
    CircleCenterPoint(String, String),
    PointOn(String),
    Midpoint(String, String),
    PerpendicularLine(String, String),
    ParallelLine(String, String),
    FootOfPerpendicular(String, String),
    Intersect(String, String, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Point,
    Line,
    Circle,
}

impl Op {
    pub fn name(&self) -> &'static str {
        match self {
            Op::FreePoint(_) => "free_point",
            Op::Line(..) => "line",
            Op::CircleCenterPoint(..) => "circle_center_point",
            Op::PointOn(_) => "point_on",
            Op::Midpoint(..) => "midpoint",
            Op::PerpendicularLine(..) => "perpendicular_line",
            Op::ParallelLine(..) => "parallel_line",
            Op::FootOfPerpendicular(..) => "foot_of_perpendicular",
            Op::Intersect(..) => "intersect",
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Op::Line(..) | Op::PerpendicularLine(..) | Op::ParallelLine(..) => Kind::Line,
            Op::CircleCenterPoint(..) => Kind::Circle,
            _ => Kind::Point,
        }
    }

    pub fn args(&self) -> Vec<&str> {
        match self {
            Op::FreePoint(_) => vec![],
            Op::PointOn(a) => vec![a],
            Op::Line(a, b)
            | Op::CircleCenterPoint(a, b)
            | Op::Midpoint(a, b)
            | Op::PerpendicularLine(a, b)
            | Op::ParallelLine(a, b)
            | Op::FootOfPerpendicular(a, b)
            | Op::Intersect(a, b, _) => vec![a, b],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionStep {
    pub id: String,
    pub op: Op,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum Query {
    Locus { tracer: String, mover: String },
    Envelope { line: String, mover: String },
}

impl Query {
    pub fn mover(&self) -> &str {
        match self {
            Query::Locus { mover, .. } | Query::Envelope { mover, .. } => mover,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    pub steps: Vec<ConstructionStep>,
    pub query: Query,
}

impl Construction {
    pub fn step(&self, id: &str) -> Option<&ConstructionStep> {
        self.steps.iter().find(|s| s.id == id)
    }

    /// Document form, the inverse of [`parse_construction`].
    pub fn to_document(&self) -> ConstructionDoc {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let (coords, branch_index) = match &s.op {
                    Op::FreePoint(c) => (Some(c.iter().map(|v| v.to_string()).collect()), None),
                    Op::Intersect(_, _, k) if *k != 0 => (None, Some(*k)),
                    _ => (None, None),
                };
                let args: Vec<String> = s.op.args().iter().map(|a| a.to_string()).collect();
                StepDoc {
                    id: s.id.clone(),
                    op: s.op.name().to_string(),
                    coords,
                    args: if args.is_empty() { None } else { Some(args) },
                    branch_index,
                }
            })
            .collect();
        ConstructionDoc {
            steps,
            query: Some(self.query.clone()),
        }
    }
}

/// Wire format of a construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionDoc {
    pub steps: Vec<StepDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<Query>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    pub id: String,
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub args: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch_index: Option<u32>,
}

/// Which role a compiled system plays downstream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Locus,
    Envelope,
}

/// A polynomial system whose parameters are the plane coordinates `x, y`.
#[derive(Clone, Debug)]
pub struct ParametricSystem {
    pub polys: Vec<MultiPoly>,
    /// Dependent coordinates first, then the parameters.
    pub ring: Ring,
    pub mover_vars: [String; 2],
    /// Variables attached to each dependent point, in creation order.
    pub point_vars: Vec<(String, [String; 2])>,
    pub kind: SystemKind,
}

impl ParametricSystem {
    pub fn params(&self) -> &[String] {
        self.ring.param_names()
    }

    pub fn vars(&self) -> &[String] {
        self.ring.var_names()
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Construction(msg.into())
}

pub fn parse_construction(text: &str) -> Result<Construction> {
    let doc: ConstructionDoc =
        serde_json::from_str(text).map_err(|e| invalid(format!("schema: {e}")))?;
    from_document(&doc)
}

pub fn from_document(doc: &ConstructionDoc) -> Result<Construction> {
    let mut kinds: HashMap<&str, Kind> = HashMap::new();
    let mut steps = Vec::with_capacity(doc.steps.len());
    for s in &doc.steps {
        if !valid_id(&s.id) {
            return Err(invalid(format!("bad id `{}`", s.id)));
        }
        if kinds.contains_key(s.id.as_str()) {
            return Err(invalid(format!("duplicate id `{}`", s.id)));
        }
        let args = s.args.clone().unwrap_or_default();
        let arity = |n: usize| -> Result<()> {
            if args.len() != n {
                return Err(invalid(format!(
                    "`{}`: {} takes {n} arguments, got {}",
                    s.id,
                    s.op,
                    args.len()
                )));
            }
            Ok(())
        };
        let need = |k: usize, kind: Kind| -> Result<String> {
            let a = &args[k];
            match kinds.get(a.as_str()) {
                None => Err(invalid(format!("`{}` refers to undefined `{a}`", s.id))),
                Some(found) if *found != kind => Err(invalid(format!(
                    "`{}`: argument `{a}` is a {found:?}, expected {kind:?}",
                    s.id
                ))),
                Some(_) => Ok(a.clone()),
            }
        };
        if s.op != "free_point" && s.coords.is_some() {
            return Err(invalid(format!(
                "`{}`: coords only apply to free_point",
                s.id
            )));
        }
        if s.op != "intersect" && s.branch_index.is_some() {
            return Err(invalid(format!(
                "`{}`: branch_index only applies to intersect",
                s.id
            )));
        }
        let op = match s.op.as_str() {
            "free_point" => {
                arity(0)?;
                let coords = s
                    .coords
                    .as_ref()
                    .ok_or_else(|| invalid(format!("`{}`: free_point needs coords", s.id)))?;
                if coords.len() != 2 {
                    return Err(invalid(format!("`{}`: free_point needs 2 coords", s.id)));
                }
                let c = coords
                    .iter()
                    .map(|c| {
                        parse_rational(c)
                            .map_err(|_| invalid(format!("`{}`: bad coordinate `{c}`", s.id)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Op::FreePoint([c[0].clone(), c[1].clone()])
            }
            "line" => {
                arity(2)?;
                Op::Line(need(0, Kind::Point)?, need(1, Kind::Point)?)
            }
            "circle_center_point" => {
                arity(2)?;
                Op::CircleCenterPoint(need(0, Kind::Point)?, need(1, Kind::Point)?)
            }
            "point_on" => {
                arity(1)?;
                let path = &args[0];
                match kinds.get(path.as_str()) {
                    Some(Kind::Line | Kind::Circle) => Op::PointOn(path.clone()),
                    Some(Kind::Point) => {
                        return Err(invalid(format!("`{}`: `{path}` is not a path", s.id)))
                    }
                    None => {
                        return Err(invalid(format!("`{}` refers to undefined `{path}`", s.id)))
                    }
                }
            }
            "midpoint" => {
                arity(2)?;
                Op::Midpoint(need(0, Kind::Point)?, need(1, Kind::Point)?)
            }
            "perpendicular_line" => {
                arity(2)?;
                Op::PerpendicularLine(need(0, Kind::Point)?, need(1, Kind::Line)?)
            }
            "parallel_line" => {
                arity(2)?;
                Op::ParallelLine(need(0, Kind::Point)?, need(1, Kind::Line)?)
            }
            "foot_of_perpendicular" => {
                arity(2)?;
                Op::FootOfPerpendicular(need(0, Kind::Point)?, need(1, Kind::Line)?)
            }
            "intersect" => {
                arity(2)?;
                let a = &args[0];
                let b = &args[1];
                for x in [a, b] {
                    match kinds.get(x.as_str()) {
                        Some(Kind::Line | Kind::Circle) => {}
                        Some(Kind::Point) => {
                            return Err(invalid(format!(
                                "`{}`: cannot intersect point `{x}`",
                                s.id
                            )))
                        }
                        None => {
                            return Err(invalid(format!("`{}` refers to undefined `{x}`", s.id)))
                        }
                    }
                }
                if a == b {
                    return Err(Error::Degenerate(format!(
                        "`{}` intersects `{a}` with itself",
                        s.id
                    )));
                }
                Op::Intersect(a.clone(), b.clone(), s.branch_index.unwrap_or(0))
            }
            other => return Err(invalid(format!("`{}`: unknown op `{other}`", s.id))),
        };
        kinds.insert(&s.id, op.kind());
        steps.push(ConstructionStep {
            id: s.id.clone(),
            op,
        });
    }
    let query = doc.query.clone().ok_or_else(|| invalid("missing query"))?;
    let c = Construction { steps, query };
    validate_query(&c)?;
    Ok(c)
}

fn valid_id(id: &str) -> bool {
    let mut chars = id.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn validate_query(c: &Construction) -> Result<()> {
    let mover = c
        .step(c.query.mover())
        .ok_or_else(|| invalid(format!("mover `{}` is undefined", c.query.mover())))?;
    if !matches!(mover.op, Op::PointOn(_)) {
        return Err(invalid(format!(
            "mover `{}` must be a point_on step",
            mover.id
        )));
    }
    match &c.query {
        Query::Locus { tracer, .. } => {
            let t = c
                .step(tracer)
                .ok_or_else(|| invalid(format!("tracer `{tracer}` is undefined")))?;
            match t.op {
                Op::FreePoint(_) => Err(invalid(format!(
                    "tracer `{tracer}` must be a dependent point"
                ))),
                _ if t.op.kind() != Kind::Point => {
                    Err(invalid(format!("tracer `{tracer}` is not a point")))
                }
                _ => Ok(()),
            }
        }
        Query::Envelope { line, .. } => {
            let l = c
                .step(line)
                .ok_or_else(|| invalid(format!("line `{line}` is undefined")))?;
            if l.op.kind() != Kind::Line {
                return Err(invalid(format!("`{line}` is not a line")));
            }
            Ok(())
        }
    }
}
