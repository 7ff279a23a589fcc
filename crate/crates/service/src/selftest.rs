use locuscover::construction::ConstructionDoc;
use locuscover::fixtures;

use crate::compute::{handle_compute, ComputeRequest, ComputeResponse};

const CONIC: &str = "x^2 - 4*x*y - y^2 + 6*x + 8*y - 7";

pub struct SelftestReport {
    pub lines: Vec<String>,
    pub passed: bool,
}

impl SelftestReport {
    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

fn closures(r: &ComputeResponse, tag: &str) -> Vec<String> {
    let mut v: Vec<String> = r
        .result
        .components
        .iter()
        .filter(|c| c.tag == tag)
        .map(|c| c.closure.clone())
        .collect();
    v.sort();
    v
}

type Check = fn(&ComputeResponse) -> Result<(), String>;

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: expected {want:?}, got {got:?}"))
    }
}

fn triangle_generic_cover(r: &ComputeResponse) -> Result<(), String> {
    expect(
        "normal components",
        closures(r, "normal"),
        vec![CONIC.to_string()],
    )?;
    let normal = r
        .result
        .components
        .iter()
        .find(|c| c.tag == "normal")
        .unwrap();
    expect(
        "holes",
        normal.holes.clone(),
        vec![vec!["y - 4".to_string(), "x - 1".to_string()]],
    )?;
    expect(
        "assembled",
        r.result.assembled.as_str(),
        "V(x^2 - 4*x*y - y^2 + 6*x + 8*y - 7) \\ V(y - 4, x - 1)",
    )
}

fn triangle_generic_elimination(r: &ComputeResponse) -> Result<(), String> {
    expect(
        "normal components",
        closures(r, "normal"),
        vec![CONIC.to_string()],
    )
}

fn triangle_right_cover(r: &ComputeResponse) -> Result<(), String> {
    expect("assembled", r.result.assembled.as_str(), "V(2*x + 2*y - 1)")?;
    expect(
        "normal components",
        closures(r, "normal"),
        vec!["2*x + 2*y - 1".to_string()],
    )?;
    expect(
        "special components",
        closures(r, "special"),
        vec!["x".to_string(), "y".to_string()],
    )?;
    expect(
        "isolated components",
        closures(r, "isolated"),
        vec!["y, x".to_string()],
    )
}

fn triangle_right_elimination(r: &ComputeResponse) -> Result<(), String> {
    expect(
        "normal components",
        closures(r, "normal"),
        vec![
            "2*x + 2*y - 1".to_string(),
            "x".to_string(),
            "y".to_string(),
        ],
    )
}

/// Runs the two reference constructions through both methods. The report
/// carries no timings, so repeated runs print identical text.
pub fn selftest() -> SelftestReport {
    let cases: [(&str, &str, &str, Check); 4] = [
        (
            "triangle_generic",
            fixtures::TRIANGLE_GENERIC,
            "grobner_cover",
            triangle_generic_cover,
        ),
        (
            "triangle_generic",
            fixtures::TRIANGLE_GENERIC,
            "elimination",
            triangle_generic_elimination,
        ),
        (
            "triangle_right",
            fixtures::TRIANGLE_RIGHT,
            "grobner_cover",
            triangle_right_cover,
        ),
        (
            "triangle_right",
            fixtures::TRIANGLE_RIGHT,
            "elimination",
            triangle_right_elimination,
        ),
    ];
    let mut lines = Vec::new();
    let mut failures = 0;
    for (name, doc, method, check) in cases {
        let outcome = serde_json::from_str::<ConstructionDoc>(doc)
            .map_err(|e| e.to_string())
            .and_then(|construction| {
                let req = ComputeRequest {
                    construction,
                    method: method.to_string(),
                    plot: None,
                    budget_ms: None,
                };
                handle_compute(&req).map_err(|e| e.to_string())
            })
            .and_then(|r| check(&r).map(|()| r));
        match outcome {
            Ok(r) => lines.push(format!("PASS {name} {method}: {}", r.result.assembled)),
            Err(e) => {
                failures += 1;
                lines.push(format!("FAIL {name} {method}: {e}"));
            }
        }
    }
    lines.push(format!(
        "selftest: {}/{} passed",
        cases.len() - failures,
        cases.len()
    ));
    SelftestReport {
        lines,
        passed: failures == 0,
    }
}
