//! The `analyze` pipeline and its JSON report.

use std::collections::BTreeMap;
use std::time::Instant;

use fewnomial::bivar::{newton_polygon, LatticePolygon};
use fewnomial::fans::{
    alternates, consecutive_translate_check, is_hexagon, minkowski_sum, normal_fan, FanError, Theorem3Report,
};
use fewnomial::oracle::{numeric_solve, resultant_count_positive, NumericSolution, OracleError};
use fewnomial::phimap::{analyze_phi, t3_landmark_case, CaseReport, PhiReport};
use fewnomial::reduce::{build_phi, recursion_chain, t3_phi, to_F, ReducedSystem};
use fewnomial::rootcount::{check_bounds, count_positive_solutions, BoundReport, CertifiedCount, CountSettings};
use serde::Serialize;

use crate::parse::{render_poly, Options, SystemSpec};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Settings derived from the input options; `slow` lifts the search budgets.
pub fn count_settings(o: &Options) -> CountSettings {
    let mut s = CountSettings::new(o.precision, o.max_depth);
    if o.slow {
        s.max_precision = s.max_precision.max(4096);
        s.max_nodes *= 10;
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub f: String,
    pub g: String,
    pub terms_f: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SettingsEcho {
    pub precision: u32,
    pub max_precision: u32,
    pub max_depth: u32,
    pub max_nodes: usize,
    pub slow: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainSummary {
    /// Indices of the terms of `F` in peeling order.
    pub order: Vec<usize>,
    /// Largest polynomial degree per stage.
    pub degrees: Vec<Option<usize>>,
    pub degrees_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiSummary {
    pub alpha: String,
    pub beta: String,
    pub deg_p: usize,
    pub deg_q: usize,
    pub m: u64,
    pub p: String,
    pub q: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct T3Section {
    pub k3: i64,
    pub k4: i64,
    pub l4: i64,
    pub swapped: bool,
    pub nondegenerate: bool,
    pub case: Option<CaseReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FanSection {
    pub polygon_f: LatticePolygon,
    pub polygon_g: LatticePolygon,
    pub minkowski_sum: LatticePolygon,
    pub hexagon: bool,
    pub alternates: Option<bool>,
    pub consecutive_translate: Option<bool>,
    pub fan_condition: Theorem3Report,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSection {
    pub resultant_count: Option<usize>,
    pub resultant_note: Option<String>,
    /// Uncertified Newton solutions, for reference.
    pub numeric: Vec<NumericSolution>,
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Flags {
    pub certified: bool,
    pub within_bound_t: Option<bool>,
    pub rolle_chain_ok: Option<bool>,
    pub phi_ok: Option<bool>,
    pub fan_condition_ok: Option<bool>,
    pub oracle_agrees: Option<bool>,
    pub violation: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub input: InputEcho,
    pub settings: SettingsEcho,
    pub normalization: Option<ReducedSystem>,
    pub count: Option<CertifiedCount>,
    pub bounds: BoundReport,
    pub chain: Option<ChainSummary>,
    pub phi: Option<PhiSummary>,
    pub phi_report: Option<PhiReport>,
    pub t3: Option<T3Section>,
    pub fans: Option<FanSection>,
    pub oracle: OracleSection,
    pub flags: Flags,
    pub errors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl AnalysisReport {
    /// 0 on success, 2 when the count is not certified, 3 on a violated bound.
    pub fn exit_code(&self) -> i32 {
        if self.flags.violation {
            3
        } else if !self.flags.certified {
            2
        } else {
            0
        }
    }
}

struct Clock {
    on: bool,
    laps: BTreeMap<String, u128>,
    t: Instant,
}

impl Clock {
    fn lap(&mut self, name: &str) {
        if self.on {
            self.laps.insert(name.to_string(), self.t.elapsed().as_millis());
            self.t = Instant::now();
        }
    }
}

fn fan_section(spec: &SystemSpec, count: &CertifiedCount) -> Result<FanSection, FanError> {
    let (p1, p2) = (newton_polygon(&spec.f)?, newton_polygon(&spec.g)?);
    let (fan_f, fan_g) = (normal_fan(&p1)?, normal_fan(&p2)?);
    let sum = minkowski_sum(&p1, &p2)?;
    let hexagon = is_hexagon(&sum);
    let alt = match alternates(&fan_f, &fan_g) {
        Ok(b) => Some(b),
        Err(FanError::ParallelRays) => None,
        Err(e) => return Err(e),
    };
    let translate = match consecutive_translate_check(&p1, &p2) {
        Ok(b) => Some(b),
        Err(FanError::NotHexagon) => None,
        Err(e) => return Err(e),
    };
    Ok(FanSection {
        fan_condition: Theorem3Report {
            count: count.clone(),
            hexagon,
            alternates: alt,
            consecutive_translate: translate,
            fan_f,
            fan_g,
        },
        polygon_f: p1,
        polygon_g: p2,
        minkowski_sum: sum,
        hexagon,
        alternates: alt,
        consecutive_translate: translate,
    })
}

/// Runs every stage on a system. Stage failures are recorded in `errors`
/// and leave the affected sections empty.
pub fn cmd_analyze(spec: &SystemSpec, timings: bool) -> AnalysisReport {
    let settings = count_settings(&spec.options);
    let mut errors = Vec::new();
    let mut clock = Clock {
        on: timings,
        laps: BTreeMap::new(),
        t: Instant::now(),
    };
    let (f, g) = (&spec.f, &spec.g);

    let reduced = to_F(f, g).map_err(|e| errors.push(format!("reduce: {e}"))).ok();
    let count = match count_positive_solutions(f, g, &settings) {
        Ok(c) => Some(c),
        Err(e) => {
            errors.push(format!("count: {e}"));
            None
        }
    };
    clock.lap("count");
    let bounds = check_bounds(f, g, &settings);
    clock.lap("bounds");

    let chain = reduced.as_ref().and_then(|r| recursion_chain(&r.big_f).ok());
    let chain_summary = chain.as_ref().map(|c| ChainSummary {
        order: c.order.clone(),
        degrees: c.stages.iter().map(|s| s.max_degree()).collect(),
        degrees_ok: c.degrees_within_bounds(),
    });
    let phi = chain.as_ref().and_then(|c| build_phi(c.last()).ok());
    let phi_summary = phi.as_ref().map(|p| PhiSummary {
        alpha: p.alpha().to_string(),
        beta: p.beta().to_string(),
        deg_p: p.deg_p(),
        deg_q: p.deg_q(),
        m: p.m(),
        p: format!("{} * ({})", p.p().scale(), p.p().shape()),
        q: format!("{} * ({})", p.q().scale(), p.q().shape()),
    });
    let phi_report = phi.as_ref().and_then(|p| {
        analyze_phi(p, &settings)
            .map_err(|e| errors.push(format!("phi: {e}")))
            .ok()
    });
    clock.lap("phi");

    let t3 = (f.len() == 3)
        .then(|| t3_phi(f, g).map_err(|e| errors.push(format!("t3: {e}"))).ok())
        .flatten()
        .map(|t| T3Section {
            k3: t.k3,
            k4: t.k4,
            l4: t.l4,
            swapped: t.swapped,
            nondegenerate: t.is_nondegenerate(),
            case: count.as_ref().and_then(|c| t3_landmark_case(&t, c).ok()),
        });
    let fans = match (&count, f.len()) {
        (Some(c), 3) => fan_section(spec, c).map_err(|e| errors.push(format!("fans: {e}"))).ok(),
        _ => None,
    };
    clock.lap("t3_and_fans");

    let (resultant_count, resultant_note) = match resultant_count_positive(f, g) {
        Ok(n) => (Some(n), None),
        Err(e @ (OracleError::DegreeTooLarge | OracleError::NonIntegerExponents)) => (None, Some(e.to_string())),
        Err(e) => (None, Some(e.to_string())),
    };
    let numeric = numeric_solve(f, g, 48);
    clock.lap("oracle");

    let certified = count.as_ref().is_some_and(|c| c.is_exact());
    let agrees = match (&count, resultant_count) {
        (Some(c), Some(r)) if c.is_exact() => Some(c.count == r),
        _ => None,
    };
    let rolle_chain_ok = if bounds.error.is_some() {
        None
    } else if bounds.chain.iter().any(|c| c.holds == Some(false)) || bounds.degrees_ok == Some(false) {
        Some(false)
    } else if bounds.chain.iter().all(|c| c.holds == Some(true)) {
        Some(true)
    } else {
        None
    };
    let phi_ok = phi_report.as_ref().map(|r| !r.is_violation());
    let fan_condition_ok = fans.as_ref().map(|s| !s.fan_condition.is_violation());
    let case_consistent = t3.as_ref().and_then(|t| t.case.as_ref()).map(|c| c.consistent);
    let violation = bounds.is_violation()
        || rolle_chain_ok == Some(false)
        || phi_ok == Some(false)
        || fan_condition_ok == Some(false)
        || agrees == Some(false)
        || case_consistent == Some(false);

    AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        input: InputEcho {
            f: render_poly(f),
            g: render_poly(g),
            terms_f: f.len(),
        },
        settings: SettingsEcho {
            precision: settings.precision,
            max_precision: settings.max_precision,
            max_depth: settings.max_depth,
            max_nodes: settings.max_nodes,
            slow: spec.options.slow,
        },
        normalization: reduced,
        flags: Flags {
            certified,
            within_bound_t: bounds.within_bound_t,
            rolle_chain_ok,
            phi_ok,
            fan_condition_ok,
            oracle_agrees: agrees,
            violation,
        },
        count,
        bounds,
        chain: chain_summary,
        phi: phi_summary,
        phi_report,
        t3,
        fans,
        oracle: OracleSection {
            resultant_count,
            resultant_note,
            numeric,
            agrees,
        },
        errors,
        timings_ms: timings.then_some(clock.laps),
    }
}
