//! Alcoves, walls and flats of the Coxeter arrangement, enumerated as a ball
//! of Weyl elements around the fundamental alcove.
//!
//! Alcoves are ordered shortlex by canonical word, so region indices, wall
//! lists and JSON output are stable across runs and execution modes. A wall is
//! keyed by its shorter side (the two sides always differ in length by one),
//! and a flat by the minimal representative of its parabolic coset.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{GraphJson, GraphType};
use crate::root::{BondOrder, CoxeterSystem, RootVec, WeylElt, Word};

/// Alcoves are in bijection with Weyl elements via `w ↦ w·fA`.
pub type Alcove = WeylElt;

pub const DEFAULT_PATH_CAP: usize = 10_000;
pub const REGION_SCHEMA: &str = "realflow.region.v1";

/// The wall between `base` and `base·s_gen`, where `base` is the shorter side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub base: usize,
    pub gen: usize,
    pub root: RootVec,
    /// Index of the longer side, or `None` if it lies outside the region.
    pub other: Option<usize>,
}

impl Wall {
    pub fn is_interior(&self) -> bool {
        self.other.is_some()
    }
}

/// A codimension-two flat: the coset `base·W_{ij}` with `m_ij` finite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flat {
    pub base: usize,
    pub pair: (usize, usize),
    pub m: usize,
    /// Region indices of `base, base·s_i, base·s_i s_j, …` (length `2m`).
    pub cycle: Vec<Option<usize>>,
    pub complete: bool,
}

impl Flat {
    /// Generator crossed between cycle positions `k` and `k + 1`.
    pub fn gen_at(&self, k: usize) -> usize {
        if k.is_multiple_of(2) {
            self.pair.0
        } else {
            self.pair.1
        }
    }

    pub fn len(&self) -> usize {
        2 * self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }
}

/// A walk through the region: start alcove and the generators crossed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub start: usize,
    pub gens: Vec<usize>,
}

/// Ball of alcoves `{ w·fA : ℓ(w) ≤ radius }` with walls and flats.
#[derive(Debug)]
pub struct Region {
    sys: CoxeterSystem,
    graph_type: GraphType,
    radius: usize,
    alcoves: Vec<WeylElt>,
    words: Vec<Word>,
    index: HashMap<WeylElt, usize>,
    walls: Vec<Wall>,
    wall_of: Vec<Vec<Option<usize>>>,
    flats: Vec<Flat>,
}

impl Region {
    pub fn enumerate(sys: CoxeterSystem, radius: usize) -> Result<Self> {
        Self::enumerate_with(sys, radius, Exec::default())
    }

    pub fn enumerate_with(sys: CoxeterSystem, radius: usize, exec: Exec) -> Result<Self> {
        if let Some(v) = (0..sys.rank()).find(|&v| sys.graph().loops(v) > 0) {
            return Err(Error::LoopedVertex(v));
        }
        let graph_type = sys.graph_type()?;
        if !graph_type.is_affine_or_hyperbolic() {
            return Err(Error::WrongGraphType {
                expected: "affine or hyperbolic".into(),
                found: graph_type.to_string(),
            });
        }
        let n = sys.rank();

        let mut alcoves = vec![sys.identity()];
        let mut words = vec![Word::default()];
        let mut layer = vec![sys.identity()];
        for _ in 0..radius {
            let children: Vec<Vec<WeylElt>> =
                exec.map(&layer, |w| (0..n).filter(|&i| !w.has_right_descent(i)).map(|i| sys.mul_gen(w, i)).collect());
            let mut seen = HashSet::new();
            let next: Vec<WeylElt> = children.into_iter().flatten().filter(|w| seen.insert(w.clone())).collect();
            if next.is_empty() {
                break;
            }
            let next_words = exec.map(&next, |w| sys.canonical_word(w));
            let mut pairs: Vec<(Word, WeylElt)> = next_words.into_iter().zip(next).collect();
            pairs.sort_by(|a, b| a.0.cmp(&b.0));
            layer = pairs.iter().map(|p| p.1.clone()).collect();
            for (word, w) in pairs {
                words.push(word);
                alcoves.push(w);
            }
        }
        let index: HashMap<WeylElt, usize> = alcoves.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();

        let mut walls = Vec::new();
        let mut wall_of = vec![vec![None; n]; alcoves.len()];
        for (a, w) in alcoves.iter().enumerate() {
            for i in 0..n {
                if w.has_right_descent(i) {
                    continue;
                }
                let other = index.get(&sys.mul_gen(w, i)).copied();
                let id = walls.len();
                walls.push(Wall { base: a, gen: i, root: w.image_of_simple(i), other });
                wall_of[a][i] = Some(id);
                if let Some(b) = other {
                    wall_of[b][i] = Some(id);
                }
            }
        }

        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if let Some(m) = sys.bond_order(i, j)?.finite() {
                    pairs.push((i, j, m));
                }
            }
        }
        let flats: Vec<Flat> = exec
            .map_range(0..alcoves.len(), |a| {
                let w = &alcoves[a];
                pairs
                    .iter()
                    .filter(|&&(i, j, _)| !w.has_right_descent(i) && !w.has_right_descent(j))
                    .map(|&(i, j, m)| {
                        let cycle: Vec<Option<usize>> =
                            flat_cycle(&sys, w, (i, j), m).iter().map(|x| index.get(x).copied()).collect();
                        let complete = cycle.iter().all(Option::is_some);
                        Flat { base: a, pair: (i, j), m, cycle, complete }
                    })
                    .collect::<Vec<_>>()
            })
            .into_iter()
            .flatten()
            .collect();

        Ok(Region { sys, graph_type, radius, alcoves, words, index, walls, wall_of, flats })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn graph_type(&self) -> &GraphType {
        &self.graph_type
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.alcoves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alcoves.is_empty()
    }

    pub fn alcove(&self, a: usize) -> &WeylElt {
        &self.alcoves[a]
    }

    pub fn alcoves(&self) -> &[WeylElt] {
        &self.alcoves
    }

    pub fn word(&self, a: usize) -> &Word {
        &self.words[a]
    }

    pub fn length(&self, a: usize) -> usize {
        self.words[a].len()
    }

    pub fn index_of(&self, w: &WeylElt) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn index_of_word(&self, word: &Word) -> Option<usize> {
        self.sys.element(word).ok().and_then(|w| self.index_of(&w))
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn interior_walls(&self) -> impl Iterator<Item = (usize, &Wall)> {
        self.walls.iter().enumerate().filter(|(_, w)| w.is_interior())
    }

    /// Wall id of the wall of alcove `a` labelled `gen`.
    pub fn wall_id(&self, a: usize, gen: usize) -> Option<usize> {
        self.wall_of[a][gen]
    }

    /// Region index of `a·s_gen`, if present.
    pub fn neighbor(&self, a: usize, gen: usize) -> Option<usize> {
        let wall = &self.walls[self.wall_of[a][gen]?];
        if wall.base == a {
            wall.other
        } else {
            Some(wall.base)
        }
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn complete_flats(&self) -> impl Iterator<Item = (usize, &Flat)> {
        self.flats.iter().enumerate().filter(|(_, f)| f.complete)
    }

    pub fn flat_cycle(&self, flat: &Flat) -> Vec<WeylElt> {
        flat_cycle(&self.sys, &self.alcoves[flat.base], flat.pair, flat.m)
    }

    /// Alcoves visited by a path, including the start.
    pub fn walk(&self, path: &Path) -> Result<Vec<usize>> {
        if path.start >= self.len() {
            return Err(Error::BrokenPath(0));
        }
        let mut out = vec![path.start];
        let mut cur = path.start;
        for (k, &g) in path.gens.iter().enumerate() {
            if g >= self.sys.rank() {
                return Err(Error::BrokenPath(k));
            }
            cur = self.neighbor(cur, g).ok_or(Error::BrokenPath(k))?;
            out.push(cur);
        }
        Ok(out)
    }

    pub fn reverse_path(&self, path: &Path) -> Result<Path> {
        let end = *self.walk(path)?.last().unwrap();
        Ok(Path { start: end, gens: path.gens.iter().rev().copied().collect() })
    }

    /// Simple cycles of the alcove adjacency graph of length `3..=max_len`,
    /// each listed once, starting at its smallest alcove.
    pub fn simple_cycles(&self, max_len: usize, exec: Exec) -> Vec<Path> {
        let n = self.sys.rank();
        exec.map_range(0..self.len(), |s| {
            let mut found = Vec::new();
            let mut stack = vec![s];
            let mut gens = Vec::new();
            self.cycles_from(s, max_len, n, &mut stack, &mut gens, &mut found);
            found
        })
        .into_iter()
        .flatten()
        .collect()
    }

    fn cycles_from(
        &self,
        s: usize,
        max_len: usize,
        n: usize,
        stack: &mut Vec<usize>,
        gens: &mut Vec<usize>,
        found: &mut Vec<Path>,
    ) {
        let cur = *stack.last().unwrap();
        for g in 0..n {
            let Some(next) = self.neighbor(cur, g) else { continue };
            if next == s && stack.len() >= 3 {
                // each cycle is traversed in both directions; keep one
                if stack[1] < cur {
                    let mut gs = gens.clone();
                    gs.push(g);
                    found.push(Path { start: s, gens: gs });
                }
                continue;
            }
            if next <= s || stack.len() >= max_len || stack.contains(&next) {
                continue;
            }
            stack.push(next);
            gens.push(g);
            self.cycles_from(s, max_len, n, stack, gens, found);
            gens.pop();
            stack.pop();
        }
    }

    pub fn report(&self) -> RegionReport {
        RegionReport {
            schema: REGION_SCHEMA.into(),
            graph: self.sys.graph().to_json(),
            graph_type: self.graph_type.label().into(),
            radius: self.radius,
            alcoves: self.words.clone(),
            walls: self
                .walls
                .iter()
                .map(|w| WallJson { alcove: w.base, gen: w.gen, root: w.root.0.clone(), interior: w.is_interior() })
                .collect(),
            flats: self
                .flats
                .iter()
                .map(|f| FlatJson {
                    base: self.words[f.base].clone(),
                    pair: [f.pair.0, f.pair.1],
                    m: f.m,
                    complete: f.complete,
                })
                .collect(),
        }
    }

    /// Rebuild a region from its report, checking the alcove list matches.
    pub fn from_report(report: &RegionReport) -> Result<Self> {
        let graph = report.graph.clone().into_graph()?;
        let region = Region::enumerate(CoxeterSystem::new(graph), report.radius)?;
        if region.words != report.alcoves {
            return Err(Error::Format("region file does not match its graph and radius".into()));
        }
        Ok(region)
    }
}

/// `[w, w s_i, w s_i s_j, …]`, the `2m` alcoves around the flat through `w`.
pub fn flat_cycle(sys: &CoxeterSystem, w: &WeylElt, pair: (usize, usize), m: usize) -> Vec<WeylElt> {
    let mut out = Vec::with_capacity(2 * m);
    let mut cur = w.clone();
    for k in 0..2 * m {
        out.push(cur.clone());
        cur = sys.mul_gen(&cur, if k % 2 == 0 { pair.0 } else { pair.1 });
    }
    debug_assert_eq!(&cur, w);
    out
}

/// Minimal-length representative of `w·W_{ij}`.
pub fn coset_min(sys: &CoxeterSystem, w: &WeylElt, i: usize, j: usize) -> WeylElt {
    let mut cur = w.clone();
    loop {
        if cur.has_right_descent(i) {
            cur = sys.mul_gen(&cur, i);
        } else if cur.has_right_descent(j) {
            cur = sys.mul_gen(&cur, j);
        } else {
            return cur;
        }
    }
}

pub fn neighbor(sys: &CoxeterSystem, a: &Alcove, i: usize) -> Result<Alcove> {
    sys.simple_reflection(i)?;
    Ok(sys.mul_gen(a, i))
}

/// Canonical wall-crossing sequence from `a` to `b`.
pub fn reduced_path(sys: &CoxeterSystem, a: &Alcove, b: &Alcove) -> Word {
    sys.canonical_word(&a.inverse().compose(b))
}

/// Every reduced wall-crossing sequence from `a` to `b`, capped.
pub fn all_reduced_paths(sys: &CoxeterSystem, a: &Alcove, b: &Alcove, cap: usize) -> (Vec<Word>, bool) {
    sys.reduced_words(&a.inverse().compose(b), cap)
}

/// Whether `m_ij` is finite for a pair of distinct generators.
pub fn is_flat_pair(sys: &CoxeterSystem, i: usize, j: usize) -> bool {
    matches!(sys.bond_order(i, j), Ok(BondOrder::Two | BondOrder::Three))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WallJson {
    pub alcove: usize,
    pub gen: usize,
    pub root: Vec<i64>,
    pub interior: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatJson {
    pub base: Word,
    pub pair: [usize; 2],
    pub m: usize,
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegionReport {
    pub schema: String,
    pub graph: GraphJson,
    pub graph_type: String,
    pub radius: usize,
    pub alcoves: Vec<Word>,
    pub walls: Vec<WallJson>,
    pub flats: Vec<FlatJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn region(name: &str, r: usize) -> Region {
        Region::enumerate(CoxeterSystem::new(catalog::parse(name).unwrap()), r).unwrap()
    }

    #[test]
    fn radius_zero() {
        let reg = region("A_tilde:2", 0);
        assert_eq!(reg.len(), 1);
        assert_eq!(reg.walls().len(), 3);
        assert!(reg.walls().iter().all(|w| !w.is_interior()));
        assert_eq!(reg.complete_flats().count(), 0);
    }

    #[test]
    fn wall_root_from_either_side() {
        let reg = region("A_tilde:2", 2);
        let s0 = reg.index_of_word(&Word(vec![0])).unwrap();
        let wall = &reg.walls()[reg.wall_id(s0, 1).unwrap()];
        assert_eq!(wall.root, RootVec(vec![1, 1, 0]));
        for w in reg.walls() {
            assert!(w.root.is_positive());
            if let Some(b) = w.other {
                let from_other = reg.alcove(b).image_of_simple(w.gen);
                assert_eq!(from_other.positive_form(), w.root);
            }
        }
    }

    #[test]
    fn identity_hexagon() {
        let reg = region("A_tilde:2", 3);
        let flat = reg.flats().iter().find(|f| f.base == 0 && f.pair == (0, 1)).unwrap();
        assert!(flat.complete);
        let words: Vec<Word> = flat.cycle.iter().map(|c| reg.word(c.unwrap()).clone()).collect();
        let expected: Vec<Word> = [vec![], vec![0], vec![0, 1], vec![0, 1, 0], vec![1, 0], vec![1]]
            .into_iter()
            .map(|w| reg.sys.canonical_word(&reg.sys.element(&Word(w)).unwrap()))
            .collect();
        assert_eq!(words, expected);
    }

    #[test]
    fn free_group_has_no_flats() {
        let reg = region("A_tilde_extra:2,3", 4);
        assert!(reg.flats().is_empty());
    }

    #[test]
    fn hyperbolic_square() {
        let reg = region("A_hyp:1", 3);
        let at_identity: Vec<_> = reg.flats().iter().filter(|f| f.base == 0).map(|f| (f.pair, f.m)).collect();
        assert_eq!(at_identity, vec![((0, 1), 3), ((0, 2), 2)]);
        assert!(reg.flats().iter().all(|f| f.cycle.len() == 2 * f.m));
    }

    #[test]
    fn rejects_finite_and_looped() {
        let sys = CoxeterSystem::new(catalog::parse("A:3").unwrap());
        assert!(matches!(Region::enumerate(sys, 2), Err(Error::WrongGraphType { .. })));
        let sys = CoxeterSystem::new(catalog::parse("K:2,1").unwrap());
        assert_eq!(Region::enumerate(sys, 2).unwrap_err(), Error::LoopedVertex(0));
    }

    #[test]
    fn paths() {
        let sys = CoxeterSystem::new(catalog::parse("A_tilde:2").unwrap());
        let w = sys.element(&Word(vec![0, 1, 0])).unwrap();
        let e = sys.identity();
        assert!(reduced_path(&sys, &w, &w).is_empty());
        let (mut ps, t) = all_reduced_paths(&sys, &e, &w, DEFAULT_PATH_CAP);
        ps.sort();
        assert!(!t);
        assert_eq!(ps, vec![Word(vec![0, 1, 0]), Word(vec![1, 0, 1])]);
        let k3 = CoxeterSystem::new(catalog::parse("K:3").unwrap());
        let w = k3.element(&Word(vec![0, 1, 0, 1])).unwrap();
        assert_eq!(all_reduced_paths(&k3, &k3.identity(), &w, 10).0, vec![Word(vec![0, 1, 0, 1])]);
        let a = sys.element(&Word(vec![1])).unwrap();
        let b = sys.element(&Word(vec![1, 2, 0])).unwrap();
        assert_eq!(reduced_path(&sys, &a, &b), Word(vec![2, 0]));
    }

    #[test]
    fn walk_and_reverse() {
        let reg = region("A_tilde:2", 2);
        let p = Path { start: 0, gens: vec![0, 1] };
        let visited = reg.walk(&p).unwrap();
        assert_eq!(reg.word(visited[2]), &Word(vec![0, 1]));
        let r = reg.reverse_path(&p).unwrap();
        assert_eq!(*reg.walk(&r).unwrap().last().unwrap(), 0);
        assert_eq!(reg.walk(&Path { start: 0, gens: vec![0, 1, 2] }), Err(Error::BrokenPath(2)));
    }

    #[test]
    fn hexagons_are_the_short_cycles_of_the_honeycomb() {
        let reg = region("A_tilde:2", 3);
        let cycles = reg.simple_cycles(8, Exec::Sequential);
        let complete = reg.complete_flats().count();
        assert_eq!(cycles.len(), complete);
        assert!(cycles.iter().all(|c| c.gens.len() == 6));
        assert_eq!(cycles, reg.simple_cycles(8, Exec::Parallel));
    }

    #[test]
    fn report_round_trip() {
        let reg = region("A_hyp:1", 3);
        let json = serde_json::to_string(&reg.report()).unwrap();
        let back: RegionReport = serde_json::from_str(&json).unwrap();
        let again = Region::from_report(&back).unwrap();
        assert_eq!(again.len(), reg.len());
    }
}
