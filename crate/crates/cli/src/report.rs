use serde::Serialize;

use lipeq::certify::{Distortion, ValidationReport, MEASURE_TOL};
use lipeq::decide::{check_necessary, Budget, DecideConfig, Necessary, Verdict};
use lipeq::document::SpecDocument;
use lipeq::exactnum::{moran_dimension, NumError, DEFAULT_TOL};
use lipeq::ifscore::Ifs;

pub const REPORT_VERSION: u32 = 1;

/// Relative error of the floating-point distortion ratios.
const FLOAT_TOL: f64 = 1e-10;

/// A number together with how it was obtained.
#[derive(Serialize)]
pub struct Tagged<T> {
    pub value: T,
    pub exactness: String,
}

pub fn exact<T>(value: T) -> Tagged<T> {
    Tagged {
        value,
        exactness: "exact".into(),
    }
}

pub fn approx<T>(value: T, tol: f64) -> Tagged<T> {
    Tagged {
        value,
        exactness: format!("approx({tol:e})"),
    }
}

#[derive(Serialize)]
pub struct System {
    pub n: Tagged<usize>,
    pub role: &'static str,
    pub ratios: Vec<Tagged<String>>,
    pub translations: Vec<Tagged<String>>,
    pub declared_bases: Vec<String>,
}

#[derive(Serialize)]
pub struct Touching {
    pub sigma_t: Vec<Tagged<usize>>,
    pub alpha: Tagged<usize>,
    pub beta: Tagged<usize>,
    pub components: Tagged<usize>,
}

#[derive(Serialize)]
pub struct NecessaryReport {
    pub passed: bool,
    /// `ρ_1^p = ρ_n^q`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Tagged<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Tagged<u64>>,
}

#[derive(Serialize)]
pub struct Analysis<'a> {
    pub format: &'static str,
    pub version: u32,
    pub system: System,
    pub validation: &'static str,
    pub touching: Touching,
    pub dimension: Tagged<f64>,
    pub necessary: NecessaryReport,
    pub budget: Budget,
    pub verdict: &'a Verdict,
    pub assumptions: Vec<String>,
}

fn system(ifs: &Ifs) -> System {
    let spec = &ifs.spec;
    System {
        n: exact(spec.n()),
        role: match spec.role() {
            lipeq::ifscore::Role::Touching => "touching",
            lipeq::ifscore::Role::Dust => "dust",
        },
        ratios: spec.ratios().iter().map(|r| exact(r.value().to_string())).collect(),
        translations: spec.translations().iter().map(|t| exact(t.to_string())).collect(),
        declared_bases: spec
            .table()
            .map(|t| t.symbols().iter().map(|s| s.name.clone()).collect())
            .unwrap_or_default(),
    }
}

pub fn analysis<'a>(
    doc: &SpecDocument,
    ifs: &Ifs,
    cfg: &DecideConfig,
    verdict: &'a Verdict,
) -> Result<Analysis<'a>, NumError> {
    let ts = &ifs.ts;
    let s = moran_dimension(ifs.spec.ratios(), DEFAULT_TOL)?;
    let necessary = match check_necessary(ifs, &cfg.factor) {
        Ok(Necessary::Pass { p, q }) => NecessaryReport {
            passed: true,
            p: Some(exact(p)),
            q: Some(exact(q)),
        },
        // the verdict already carries the timeout
        Ok(Necessary::Fail) | Err(NumError::FactorTimeout(_)) => NecessaryReport {
            passed: false,
            p: None,
            q: None,
        },
        Err(e) => return Err(e),
    };
    let mut assumptions = Vec::new();
    if !doc.declared_bases.is_empty() {
        assumptions.push("declared bases are multiplicatively independent".to_string());
    }
    if doc.declared_independence {
        assumptions.push("μ_2 and μ_3 are algebraically independent".to_string());
    }
    Ok(Analysis {
        format: "lipeq-report",
        version: REPORT_VERSION,
        system: system(ifs),
        validation: "ok",
        touching: Touching {
            sigma_t: ts.sigma_t.iter().map(|&a| exact(a)).collect(),
            alpha: exact(ts.alpha),
            beta: exact(ts.beta),
            components: exact(ts.c1()),
        },
        dimension: approx(s, DEFAULT_TOL),
        necessary,
        budget: cfg.budget,
        verdict,
        assumptions,
    })
}

#[derive(Serialize)]
pub struct Checks {
    pub vertices: Tagged<usize>,
    pub edges: Tagged<usize>,
    pub pieces: Tagged<usize>,
    pub max_measure_error: Tagged<f64>,
}

#[derive(Serialize)]
pub struct Bounds {
    pub c_low: Tagged<f64>,
    pub c_high: Tagged<f64>,
    pub points: usize,
    pub pairs: usize,
}

#[derive(Serialize)]
pub struct Verification {
    pub format: &'static str,
    pub version: u32,
    pub valid: bool,
    pub checks: Checks,
    pub depth: usize,
    pub pieces: usize,
    pub bijective: bool,
    pub distortion: Bounds,
}

pub fn verification(check: &ValidationReport, depth: usize, bijective: bool, d: &Distortion) -> Verification {
    let measure = if check.measure_exact {
        exact(check.max_measure_error)
    } else {
        approx(check.max_measure_error, MEASURE_TOL)
    };
    Verification {
        format: "lipeq-verification",
        version: REPORT_VERSION,
        valid: true,
        checks: Checks {
            vertices: exact(check.vertices),
            edges: exact(check.edges),
            pieces: exact(check.pieces),
            max_measure_error: measure,
        },
        depth,
        pieces: d.pieces,
        bijective,
        distortion: Bounds {
            c_low: approx(d.c_low, FLOAT_TOL),
            c_high: approx(d.c_high, FLOAT_TOL),
            points: d.points,
            pairs: d.pairs,
        },
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports always serialize");
    s.push('\n');
    s
}
