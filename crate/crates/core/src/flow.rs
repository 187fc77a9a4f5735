//! Real flows: an above/below orientation of every wall of a region.
//!
//! Crossing a wall upward (from the lower alcove into the one above it) is
//! recorded as an inverse braid generator, crossing downward as a positive
//! one. A flow is valid when every complete flat has a unique source and a
//! unique sink sitting opposite each other on its cycle.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Path, Region, DEFAULT_PATH_CAP};
use crate::braid::{enumerate_sign_patterns, BraidType, SignPattern};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::root::{BondOrder, RootVec, WeylElt, Word};

pub const DEFAULT_SEARCH_BUDGET: usize = 100_000;

/// Position of the longer side of a wall relative to its shorter side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Above,
    Below,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Above => Direction::Below,
            Direction::Below => Direction::Above,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FlowAssignment<'r> {
    region: &'r Region,
    dirs: Vec<Option<Direction>>,
}

impl<'r> FlowAssignment<'r> {
    pub fn empty(region: &'r Region) -> Self {
        FlowAssignment { region, dirs: vec![None; region.walls().len()] }
    }

    pub fn from_fn(region: &'r Region, mut f: impl FnMut(usize) -> Direction) -> Self {
        FlowAssignment { region, dirs: (0..region.walls().len()).map(|k| Some(f(k))).collect() }
    }

    /// Longer alcove above the shorter one across every wall.
    pub fn bruhat(region: &'r Region) -> Self {
        Self::from_fn(region, |_| Direction::Above)
    }

    pub fn random(region: &'r Region, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::from_fn(region, |_| if rng.gen_bool(0.5) { Direction::Above } else { Direction::Below })
    }

    pub fn region(&self) -> &'r Region {
        self.region
    }

    pub fn direction(&self, wall: usize) -> Option<Direction> {
        self.dirs[wall]
    }

    pub fn set(&mut self, wall: usize, dir: Direction) {
        self.dirs[wall] = Some(dir);
    }

    /// Orient the wall of `a` labelled `gen` so that crossing it from `a` goes
    /// up (`upward`) or down.
    pub fn set_crossing(&mut self, a: usize, gen: usize, upward: bool) -> Result<()> {
        let id = self.region.wall_id(a, gen).ok_or(Error::BrokenPath(0))?;
        let from_base = self.region.walls()[id].base == a;
        let dir = if upward == from_base { Direction::Above } else { Direction::Below };
        self.dirs[id] = Some(dir);
        Ok(())
    }

    /// Whether crossing from `a` over its wall `gen` goes upward.
    pub fn is_upward(&self, a: usize, gen: usize) -> Result<bool> {
        let id = self.region.wall_id(a, gen).ok_or(Error::BrokenPath(0))?;
        let wall = &self.region.walls()[id];
        let dir = self.dirs[id].ok_or_else(|| self.incomplete(id))?;
        Ok((dir == Direction::Above) == (wall.base == a))
    }

    fn incomplete(&self, id: usize) -> Error {
        let wall = &self.region.walls()[id];
        Error::IncompleteAssignment { alcove: self.region.word(wall.base).0.clone(), gen: wall.gen }
    }

    /// Every interior wall carries a direction.
    pub fn check_total(&self) -> Result<()> {
        for (id, _) in self.region.interior_walls() {
            if self.dirs[id].is_none() {
                return Err(self.incomplete(id));
            }
        }
        Ok(())
    }

    pub fn to_entries(&self) -> Vec<FlowEntry> {
        self.region
            .walls()
            .iter()
            .zip(&self.dirs)
            .filter_map(|(w, d)| {
                d.map(|d| FlowEntry {
                    alcove: self.region.word(w.base).clone(),
                    gen: w.gen,
                    above: d == Direction::Above,
                })
            })
            .collect()
    }

    /// Load from file entries, rejecting unknown alcoves, contradictory
    /// duplicates and assignments that miss an interior wall.
    pub fn from_entries(region: &'r Region, entries: &[FlowEntry]) -> Result<Self> {
        let mut flow = Self::empty(region);
        for e in entries {
            let a = region
                .index_of_word(&e.alcove)
                .ok_or_else(|| Error::InvalidFlow(format!("alcove {} is not in the region", e.alcove)))?;
            if e.gen >= region.system().rank() {
                return Err(Error::InvalidFlow(format!("generator {} out of range", e.gen)));
            }
            let id = region
                .wall_id(a, e.gen)
                .ok_or_else(|| Error::InvalidFlow(format!("no wall {} at alcove {}", e.gen, e.alcove)))?;
            let base = region.walls()[id].base == a;
            let mut dir = if e.above { Direction::Above } else { Direction::Below };
            if !base {
                dir = dir.flip();
            }
            match flow.dirs[id] {
                Some(d) if d != dir => {
                    return Err(Error::InvalidFlow(format!("contradictory entries for wall {} at {}", e.gen, e.alcove)))
                }
                _ => flow.dirs[id] = Some(dir),
            }
        }
        flow.check_total()?;
        Ok(flow)
    }
}

/// One wall orientation in a flow file: the neighbour of `alcove` across `gen`
/// is above it iff `above`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowEntry {
    pub alcove: Word,
    pub gen: usize,
    pub above: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatReport {
    pub flat: usize,
    pub base: Word,
    pub pair: (usize, usize),
    pub m: usize,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub valid: bool,
    pub antipodal: bool,
}

/// Source/sink analysis of every complete flat.
pub fn validate_flow(flow: &FlowAssignment, exec: Exec) -> Result<Vec<FlatReport>> {
    flow.check_total()?;
    let region = flow.region();
    let flats: Vec<usize> = region.complete_flats().map(|(k, _)| k).collect();
    exec.map(&flats, |&k| {
        let f = &region.flats()[k];
        let len = f.len();
        let cycle: Vec<usize> = f.cycle.iter().map(|c| c.unwrap()).collect();
        let (mut sources, mut sinks) = (Vec::new(), Vec::new());
        for p in 0..len {
            let fwd = flow.is_upward(cycle[p], f.gen_at(p))?;
            let back = flow.is_upward(cycle[p], f.gen_at((p + len - 1) % len))?;
            if fwd && back {
                sources.push(p);
            } else if !fwd && !back {
                sinks.push(p);
            }
        }
        let antipodal = sources.len() == 1 && sinks.len() == 1 && (sources[0] + f.m) % len == sinks[0];
        Ok(FlatReport {
            flat: k,
            base: region.word(f.base).clone(),
            pair: f.pair,
            m: f.m,
            valid: antipodal,
            antipodal,
            sources,
            sinks,
        })
    })
    .into_iter()
    .collect()
}

pub fn is_valid_flow(flow: &FlowAssignment, exec: Exec) -> Result<bool> {
    Ok(validate_flow(flow, exec)?.iter().all(|r| r.valid))
}

/// Word in the braid generators, `(vertex, ±1)` per letter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedWord(pub Vec<(usize, i8)>);

impl SignedWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        SignedWord(self.0.iter().rev().map(|&(g, s)| (g, -s)).collect())
    }

    pub fn concat(&self, other: &SignedWord) -> Self {
        SignedWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last() {
                Some(&(g, s)) if g == l.0 && s == -l.1 => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        SignedWord(out)
    }
}

impl std::fmt::Display for SignedWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &(g, s) in &self.0 {
            write!(f, "s{g}{}", if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

pub fn signed_word(flow: &FlowAssignment, path: &Path) -> Result<SignedWord> {
    let visited = flow.region().walk(path)?;
    let mut out = Vec::with_capacity(path.gens.len());
    for (k, &g) in path.gens.iter().enumerate() {
        let up = flow.is_upward(visited[k], g).map_err(|e| match e {
            Error::BrokenPath(_) => Error::BrokenPath(k),
            other => other,
        })?;
        out.push((g, if up { -1 } else { 1 }));
    }
    Ok(SignedWord(out))
}

fn table(ty: BraidType) -> &'static [SignPattern] {
    static A1A1: OnceLock<Vec<SignPattern>> = OnceLock::new();
    static A2: OnceLock<Vec<SignPattern>> = OnceLock::new();
    match ty {
        BraidType::A1A1 => A1A1.get_or_init(|| enumerate_sign_patterns(BraidType::A1A1)),
        BraidType::A2 => A2.get_or_init(|| enumerate_sign_patterns(BraidType::A2)),
    }
}

/// A braid move whose two signed segments are not a holding equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatsumotoFailure {
    pub word: Word,
    pub neighbor: Word,
    pub position: usize,
    pub lhs: Vec<i8>,
    pub rhs: Vec<i8>,
}

/// Check every braid move between reduced words of `w`, read as paths from
/// the fundamental alcove, against the rank-two sign tables.
pub fn matsumoto_failures(flow: &FlowAssignment, w: &WeylElt, cap: usize) -> Result<Vec<MatsumotoFailure>> {
    let region = flow.region();
    let sys = region.system();
    let (words, truncated) = sys.reduced_words(w, cap);
    if truncated {
        return Err(Error::TruncatedEnumeration(cap));
    }
    let set: HashSet<&Word> = words.iter().collect();
    let mut failures = Vec::new();
    for u in &words {
        let su = signed_word(flow, &Path { start: 0, gens: u.0.clone() })?;
        for v in sys.matsumoto_neighbors(u)? {
            debug_assert!(set.contains(&v));
            let sv = signed_word(flow, &Path { start: 0, gens: v.0.clone() })?;
            let diff: Vec<usize> = (0..u.len()).filter(|&k| u.0[k] != v.0[k]).collect();
            let (p, len) = (diff[0], diff.len());
            let ty = BraidType::from_m(len).expect("braid moves have length 2 or 3");
            let lhs: Vec<i8> = su.0[p..p + len].iter().map(|l| l.1).collect();
            let rhs: Vec<i8> = sv.0[p..p + len].iter().map(|l| l.1).collect();
            let rest_agrees = su.0[..p] == sv.0[..p] && su.0[p + len..] == sv.0[p + len..];
            let pattern = SignPattern { lhs: lhs.clone(), rhs: rhs.clone() };
            if !rest_agrees || !table(ty).contains(&pattern) {
                failures.push(MatsumotoFailure { word: u.clone(), neighbor: v, position: p, lhs, rhs });
            }
        }
    }
    Ok(failures)
}

pub fn matsumoto_compatibility(flow: &FlowAssignment, w: &WeylElt) -> Result<bool> {
    Ok(matsumoto_failures(flow, w, DEFAULT_PATH_CAP)?.is_empty())
}

/// Shorten the signed word of a loop by free cancellation and rank-two
/// braid rewrites, breadth first. Returns the shortest word reached.
pub fn monodromy_reduce(flow: &FlowAssignment, path: &Path, budget: usize) -> Result<SignedWord> {
    let word = signed_word(flow, path)?;
    reduce_word(flow.region(), &word, budget)
}

pub fn reduce_word(region: &Region, word: &SignedWord, budget: usize) -> Result<SignedWord> {
    let sys = region.system();
    let start = word.free_reduce();
    let mut best = start.clone();
    let mut seen: HashSet<SignedWord> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        if cur.len() < best.len() {
            best = cur.clone();
        }
        if best.is_empty() {
            break;
        }
        for next in rewrites(&cur, |a, b| sys.bond_order(a, b).ok()) {
            let next = next.free_reduce();
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(Error::SearchBudgetExceeded { budget, best_len: best.len() });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(best)
}

fn rewrites(w: &SignedWord, bond: impl Fn(usize, usize) -> Option<BondOrder>) -> Vec<SignedWord> {
    let l = &w.0;
    let mut out = Vec::new();
    for p in 0..l.len() {
        if p + 1 < l.len() && l[p].0 != l[p + 1].0 && bond(l[p].0, l[p + 1].0) == Some(BondOrder::Two) {
            let (a, b) = (l[p].0, l[p + 1].0);
            for pat in table(BraidType::A1A1).iter().filter(|t| t.lhs == [l[p].1, l[p + 1].1]) {
                let mut v = l.clone();
                v[p] = (b, pat.rhs[0]);
                v[p + 1] = (a, pat.rhs[1]);
                out.push(SignedWord(v));
            }
        }
        if p + 2 < l.len()
            && l[p].0 == l[p + 2].0
            && l[p].0 != l[p + 1].0
            && bond(l[p].0, l[p + 1].0) == Some(BondOrder::Three)
        {
            let (a, b) = (l[p].0, l[p + 1].0);
            let lhs = [l[p].1, l[p + 1].1, l[p + 2].1];
            for pat in table(BraidType::A2).iter().filter(|t| t.lhs == lhs) {
                let mut v = l.clone();
                v[p] = (b, pat.rhs[0]);
                v[p + 1] = (a, pat.rhs[1]);
                v[p + 2] = (b, pat.rhs[2]);
                out.push(SignedWord(v));
            }
        }
    }
    out
}

/// Classes `{ w(α_i) }` of the simples of the heart attached to alcove `a`.
pub fn heart_descriptor(region: &Region, a: usize) -> Vec<RootVec> {
    let w = region.alcove(a);
    (0..region.system().rank()).map(|i| w.image_of_simple(i)).collect()
}
