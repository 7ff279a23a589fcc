use std::time::Duration;

use serde::{Deserialize, Serialize};

use locuscover::construction::{
    build_envelope_system, compile_to_system, from_document, ConstructionDoc, Query,
};
use locuscover::locus::{compute_locus, result_json, Method, ResultJson};
use locuscover::render::{check_bbox, plot_result, Bbox, PlotData, MIN_RESOLUTION};
use locuscover::{Budget, Error};

pub const DEFAULT_BBOX: Bbox = [-10.0, 10.0, -10.0, 10.0];
pub const DEFAULT_RESOLUTION: usize = 200;
pub const MAX_RESOLUTION: usize = 2000;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlotRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bbox: Option<Bbox>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputeRequest {
    pub construction: ConstructionDoc,
    #[serde(default = "default_method")]
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plot: Option<PlotRequest>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_ms: Option<u64>,
}

fn default_method() -> String {
    Method::GrobnerCover.as_str().to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComputeResponse {
    #[serde(flatten)]
    pub result: ResultJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plot: Option<PlotData>,
    /// Compiled polynomials, as strings.
    pub system: Vec<String>,
}

/// An error with its HTTP status and a stable code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ServiceError {
    #[serde(skip)]
    pub status: u16,
    pub error: &'static str,
    pub detail: String,
}

impl ServiceError {
    pub fn invalid(detail: impl Into<String>) -> Self {
        ServiceError {
            status: 400,
            error: "invalid_request",
            detail: detail.into(),
        }
    }

    /// CLI exit code: 1 validation, 2 computation failure, 3 budget.
    pub fn exit_code(&self) -> u8 {
        match self.status {
            400 => 1,
            408 => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for ServiceError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.error, self.detail)
    }
}

impl std::error::Error for ServiceError {}

impl From<Error> for ServiceError {
    fn from(e: Error) -> Self {
        let (status, error) = match &e {
            Error::Parse { .. }
            | Error::NegativeExponent(_)
            | Error::UnknownVariable(_)
            | Error::InvalidVarTable(_)
            | Error::Construction(_)
            | Error::Unsupported(_) => (400, "invalid_request"),
            Error::Degenerate(_) => (422, "degenerate_construction"),
            Error::BudgetExceeded(_) | Error::FactorBudget(_) => (408, "budget_exceeded"),
            _ => (500, "internal"),
        };
        ServiceError {
            status,
            error,
            detail: e.to_string(),
        }
    }
}

/// Parses a request body and runs it.
pub fn handle_compute_bytes(body: &[u8]) -> Result<ComputeResponse, ServiceError> {
    let req: ComputeRequest = serde_json::from_slice(body)
        .map_err(|e| ServiceError::invalid(format!("malformed request: {e}")))?;
    handle_compute(&req)
}

/// Parse, compile, compute and optionally plot.
pub fn handle_compute(req: &ComputeRequest) -> Result<ComputeResponse, ServiceError> {
    let method = Method::parse(&req.method).ok_or_else(|| {
        ServiceError::invalid(format!(
            "method must be `grobner_cover` or `elimination`, got `{}`",
            req.method
        ))
    })?;
    let mut budget = Budget::default();
    match req.budget_ms {
        Some(0) => return Err(ServiceError::invalid("budget_ms must be positive")),
        Some(ms) => budget = budget.with_time_limit(Duration::from_millis(ms)),
        None => {}
    }
    let plot = match &req.plot {
        None => None,
        Some(p) => {
            let bbox = p.bbox.unwrap_or(DEFAULT_BBOX);
            check_bbox(&bbox)?;
            let res = p.resolution.unwrap_or(DEFAULT_RESOLUTION);
            if !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&res) {
                return Err(ServiceError::invalid(format!(
                    "resolution must lie in {MIN_RESOLUTION}..={MAX_RESOLUTION}, got {res}"
                )));
            }
            Some((bbox, res))
        }
    };

    let construction = from_document(&req.construction)?;
    let system = match construction.query {
        Query::Locus { .. } => compile_to_system(&construction)?,
        Query::Envelope { .. } => build_envelope_system(&construction)?,
    };
    let result = compute_locus(&system, method, &budget)?;
    let plot = match plot {
        Some((bbox, res)) => Some(plot_result(&result, bbox, res, &budget)?),
        None => None,
    };
    Ok(ComputeResponse {
        result: result_json(&result, &budget)?,
        plot,
        system: system.polys.iter().map(|p| p.to_string()).collect(),
    })
}
