//! End-to-end certificate for a flow on a region: flat validation, Matsumoto
//! compatibility, charge positivity, wall vanishing and loop monodromy.

use std::path::PathBuf;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::{Region, DEFAULT_PATH_CAP};
use crate::charge::{level_form, positivity_check, wall_vanishing_check, PositivityReport, WallReport};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::flow::{
    matsumoto_failures, monodromy_reduce, validate_flow, FlatReport, FlowAssignment, FlowEntry, MatsumotoFailure,
    SignedWord, DEFAULT_SEARCH_BUDGET,
};
use crate::root::Word;

/// Where the flow comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowSource {
    Bruhat,
    Random(u64),
    File(PathBuf),
}

impl FromStr for FlowSource {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "bruhat" {
            return Ok(FlowSource::Bruhat);
        }
        if let Some(seed) = s.strip_prefix("random:") {
            return seed.parse().map(FlowSource::Random).map_err(|_| format!("bad seed in `{s}`"));
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(FlowSource::File(PathBuf::from(path)));
        }
        Err(format!("unknown flow `{s}` (expected bruhat, random:<seed> or file:<path>)"))
    }
}

impl FlowSource {
    pub fn build<'r>(&self, region: &'r Region) -> Result<FlowAssignment<'r>> {
        match self {
            FlowSource::Bruhat => Ok(FlowAssignment::bruhat(region)),
            FlowSource::Random(seed) => Ok(FlowAssignment::random(region, *seed)),
            FlowSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
                let entries: Vec<FlowEntry> = serde_json::from_str(&text)?;
                FlowAssignment::from_entries(region, &entries)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifyConfig {
    pub samples: usize,
    pub seed: u64,
    /// Bound on the wall-vanishing residual.
    pub tol: f64,
    pub max_loop_len: usize,
    pub max_walls: usize,
    pub search_budget: usize,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            samples: 5,
            seed: 0,
            tol: crate::tol::ZERO,
            max_loop_len: 8,
            max_walls: 200,
            search_budget: DEFAULT_SEARCH_BUDGET,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowSection {
    pub complete_flats: usize,
    pub invalid_flats: Vec<FlatReport>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatsumotoSection {
    pub elements: usize,
    pub failures: Vec<MatsumotoFailure>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallSection {
    pub checked: usize,
    pub max_residual: f64,
    pub min_other: f64,
    pub failures: Vec<WallReport>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopFailure {
    pub start: Word,
    pub gens: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<SignedWord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopSection {
    pub checked: usize,
    pub max_len: usize,
    pub failures: Vec<LoopFailure>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifyReport {
    pub graph: String,
    pub graph_type: String,
    pub radius: usize,
    pub alcoves: usize,
    pub interior_walls: usize,
    pub flow: FlowSection,
    pub matsumoto: MatsumotoSection,
    /// Absent when the flow is invalid, since the heart assignment is then
    /// not well defined.
    pub positivity: Option<PositivityReport>,
    pub walls: WallSection,
    pub loops: LoopSection,
    pub pass: bool,
}

pub fn certify(flow: &FlowAssignment, cfg: &CertifyConfig) -> Result<CertifyReport> {
    let region = flow.region();
    let sys = region.system();
    let qf = level_form(sys)?;

    let flats = validate_flow(flow, cfg.exec)?;
    let invalid_flats: Vec<FlatReport> = flats.iter().filter(|r| !r.valid).cloned().collect();
    let flow_section = FlowSection { complete_flats: flats.len(), pass: invalid_flats.is_empty(), invalid_flats };

    let per: Vec<Result<Vec<MatsumotoFailure>>> =
        cfg.exec.map(region.alcoves(), |w| matsumoto_failures(flow, w, DEFAULT_PATH_CAP));
    let mut mfail = Vec::new();
    for r in per {
        mfail.extend(r?);
    }
    let matsumoto = MatsumotoSection { elements: region.len(), pass: mfail.is_empty(), failures: mfail };

    let positivity =
        if flow_section.pass { Some(positivity_check(flow, &qf, cfg.samples, cfg.seed, cfg.exec)?) } else { None };

    let mut wall_ids: Vec<usize> = region.interior_walls().map(|(k, _)| k).collect();
    if wall_ids.len() > cfg.max_walls {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        wall_ids.shuffle(&mut rng);
        wall_ids.truncate(cfg.max_walls);
        wall_ids.sort_unstable();
    }
    let wall_reports: Result<Vec<WallReport>> =
        cfg.exec.map(&wall_ids, |&k| wall_vanishing_check(region, &qf, k, cfg.samples, cfg.seed)).into_iter().collect();
    let wall_reports = wall_reports?;
    let wall_ok = |r: &WallReport| r.residual < cfg.tol && r.min_other > crate::tol::NONZERO;
    let walls = WallSection {
        checked: wall_reports.len(),
        max_residual: wall_reports.iter().map(|r| r.residual).fold(0.0, f64::max),
        min_other: wall_reports.iter().map(|r| r.min_other).fold(f64::INFINITY, f64::min),
        failures: wall_reports.iter().filter(|r| !wall_ok(r)).cloned().collect(),
        pass: wall_reports.iter().all(wall_ok),
    };

    let cycles = region.simple_cycles(cfg.max_loop_len, cfg.exec);
    let loop_failures: Vec<LoopFailure> = cfg
        .exec
        .map(&cycles, |p| {
            let fail = |reduced, error| {
                Some(LoopFailure { start: region.word(p.start).clone(), gens: p.gens.clone(), reduced, error })
            };
            match monodromy_reduce(flow, p, cfg.search_budget) {
                Ok(w) if w.is_empty() => None,
                Ok(w) => fail(Some(w), None),
                Err(e) => fail(None, Some(e.to_string())),
            }
        })
        .into_iter()
        .flatten()
        .collect();
    let loops = LoopSection {
        checked: cycles.len(),
        max_len: cfg.max_loop_len,
        pass: loop_failures.is_empty(),
        failures: loop_failures,
    };

    let pass =
        flow_section.pass && matsumoto.pass && positivity.as_ref().is_some_and(|p| p.pass) && walls.pass && loops.pass;
    Ok(CertifyReport {
        graph: sys.graph().name().to_string(),
        graph_type: region.graph_type().label().to_string(),
        radius: region.radius(),
        alcoves: region.len(),
        interior_walls: region.interior_walls().count(),
        flow: flow_section,
        matsumoto,
        positivity,
        walls,
        loops,
        pass,
    })
}
