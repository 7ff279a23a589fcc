use serde::Serialize;

use super::{closure_text, LocusComponent, LocusResult};
use crate::budget::Budget;
use crate::construction::SystemKind;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct ComponentJson {
    pub tag: String,
    pub closure: String,
    pub holes: Vec<Vec<String>>,
    pub mover_fiber_dim: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub source_segment: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct DiagnosticsJson {
    pub segments: usize,
    pub ms: u64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

/// Result document: `kind` is `locus` or `discriminant`.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct ResultJson {
    pub method: String,
    pub kind: String,
    pub components: Vec<ComponentJson>,
    pub assembled: String,
    pub diagnostics: DiagnosticsJson,
}

pub fn component_json(c: &LocusComponent, budget: &Budget) -> Result<ComponentJson> {
    Ok(ComponentJson {
        tag: c.tag.as_str().to_string(),
        closure: closure_text(&c.closure, budget)?,
        holes: c
            .holes
            .iter()
            .map(|h| h.display_generators(budget))
            .collect::<Result<_>>()?,
        mover_fiber_dim: c.mover_fiber_dim,
        source_segment: c.source_segment,
    })
}

pub fn result_json(r: &LocusResult, budget: &Budget) -> Result<ResultJson> {
    Ok(ResultJson {
        method: r.method.as_str().to_string(),
        kind: match r.kind {
            SystemKind::Locus => "locus",
            SystemKind::Envelope => "discriminant",
        }
        .to_string(),
        components: r
            .components
            .iter()
            .map(|c| component_json(c, budget))
            .collect::<Result<_>>()?,
        assembled: r.assembled.clone(),
        diagnostics: DiagnosticsJson {
            segments: r.diagnostics.segments,
            ms: r.diagnostics.ms,
            notes: r.diagnostics.notes.clone(),
        },
    })
}
