//! Root lattice, Weyl group elements and the word combinatorics on top of them.
//!
//! A Weyl element is stored as the integer matrix of its action on the root
//! lattice (column `i` is the image of `α_i`) together with the matrix of its
//! inverse. The geometric representation is faithful, so matrix equality is
//! group equality and the matrix doubles as a hash key.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Gcm, Graph, GraphType};
use crate::linalg::IntMat;

/// Upper bound on descent steps before `length` gives up.
pub const MAX_DESCENT_STEPS: usize = 1_000_000;

/// Element of the root lattice in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVec(v)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c != 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c != 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn neg(&self) -> Self {
        RootVec(self.0.iter().map(|c| -c).collect())
    }

    /// The positive one of `±self`.
    pub fn positive_form(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&c| c as f64).collect()
    }
}

/// Element of the real dual space, in coordinates of the dual basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaVec(pub Vec<f64>);

impl ThetaVec {
    pub fn pair(&self, v: &RootVec) -> f64 {
        self.0.iter().zip(&v.0).map(|(t, &c)| t * c as f64).sum()
    }

    pub fn coord_sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        ThetaVec(self.0.iter().map(|x| x * s).collect())
    }
}

/// A word `[i_1, …, i_k]` standing for `s_{i_1} ⋯ s_{i_k}`; read left to right
/// it is the sequence of walls crossed from the fundamental alcove.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("s{i}")).collect();
        f.write_str(&parts.join(""))
    }
}

#[derive(Clone)]
pub struct WeylElt {
    mat: IntMat,
    inv: IntMat,
}

impl WeylElt {
    pub fn identity(n: usize) -> Self {
        WeylElt { mat: IntMat::identity(n), inv: IntMat::identity(n) }
    }

    pub fn matrix(&self) -> &IntMat {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &IntMat {
        &self.inv
    }

    pub fn inverse(&self) -> Self {
        WeylElt { mat: self.inv.clone(), inv: self.mat.clone() }
    }

    pub fn rank(&self) -> usize {
        self.mat.dim()
    }

    pub fn is_identity(&self) -> bool {
        self.mat == IntMat::identity(self.rank())
    }

    pub fn compose(&self, other: &WeylElt) -> WeylElt {
        WeylElt { mat: &self.mat * &other.mat, inv: &other.inv * &self.inv }
    }

    pub fn apply(&self, v: &RootVec) -> RootVec {
        RootVec(self.mat.mul_vec(&v.0))
    }

    /// Contragredient action `θ ↦ (w⁻¹)ᵀ θ`.
    pub fn dual_apply(&self, theta: &ThetaVec) -> ThetaVec {
        let n = self.rank();
        ThetaVec((0..n).map(|k| (0..n).map(|j| self.inv.get(j, k) as f64 * theta.0[j]).sum()).collect())
    }

    /// `w(α_i)`, the i-th column.
    pub fn image_of_simple(&self, i: usize) -> RootVec {
        RootVec(self.mat.column(i))
    }

    /// True iff `ℓ(w s_i) < ℓ(w)`, i.e. `w(α_i)` is negative.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let n = self.rank();
        for k in 0..n {
            let c = self.mat.get(k, i);
            if c != 0 {
                return c < 0;
            }
        }
        unreachable!("w(α_i) is never zero")
    }
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for WeylElt {}

impl Hash for WeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state)
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElt({:?})", self.mat)
    }
}

/// Order of `s_i s_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BondOrder {
    Two,
    Three,
    Infinite,
}

impl BondOrder {
    pub fn finite(self) -> Option<usize> {
        match self {
            BondOrder::Two => Some(2),
            BondOrder::Three => Some(3),
            BondOrder::Infinite => None,
        }
    }
}

/// A graph together with its root datum and simple reflections.
pub struct CoxeterSystem {
    graph: Graph,
    gcm: Gcm,
    reflections: Vec<Option<WeylElt>>,
    adjugate: OnceLock<IntMat>,
    kind: OnceLock<Result<GraphType>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem").field("graph", &self.graph.name()).finish()
    }
}

impl CoxeterSystem {
    pub fn new(graph: Graph) -> Self {
        let gcm = graph.gcm();
        let n = graph.rank();
        let reflections = (0..n)
            .map(|i| {
                if graph.loops(i) > 0 {
                    return None;
                }
                let mut m = IntMat::identity(n);
                for j in 0..n {
                    m.set(i, j, m.get(i, j) - gcm.get(i, j));
                }
                // reflections are involutions
                Some(WeylElt { mat: m.clone(), inv: m })
            })
            .collect();
        CoxeterSystem { graph, gcm, reflections, adjugate: OnceLock::new(), kind: OnceLock::new() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn graph_type(&self) -> Result<GraphType> {
        self.kind.get_or_init(|| self.graph.classify()).clone()
    }

    /// Indices of vertices carrying a simple reflection.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.reflections[i].is_some()).collect()
    }

    pub fn is_loop_free(&self) -> bool {
        self.reflections.iter().all(Option::is_some)
    }

    pub fn bilinear_form(&self, u: &RootVec, v: &RootVec) -> i64 {
        self.gcm.matrix().bilinear(&u.0, &v.0)
    }

    pub fn identity(&self) -> WeylElt {
        WeylElt::identity(self.rank())
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        RootVec::simple(self.rank(), i)
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElt> {
        self.reflections[i].clone().ok_or(Error::LoopedVertex(i))
    }

    fn check_gen(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::BadParam(format!("vertex {i} out of range")));
        }
        if self.reflections[i].is_none() {
            return Err(Error::LoopedVertex(i));
        }
        Ok(())
    }

    /// `w · s_i` in O(n²).
    pub fn mul_gen(&self, w: &WeylElt, i: usize) -> WeylElt {
        debug_assert!(self.reflections[i].is_some());
        let n = self.rank();
        let mut mat = w.mat.clone();
        for j in 0..n {
            let a = self.gcm.get(i, j);
            if a == 0 {
                continue;
            }
            for k in 0..n {
                mat.set(k, j, mat.get(k, j) - a * w.mat.get(k, i));
            }
        }
        let mut inv = w.inv.clone();
        for k in 0..n {
            let s: i64 = (0..n).map(|j| self.gcm.get(i, j) * w.inv.get(j, k)).sum();
            inv.set(i, k, w.inv.get(i, k) - s);
        }
        WeylElt { mat, inv }
    }

    pub fn element(&self, word: &Word) -> Result<WeylElt> {
        let mut w = self.identity();
        for &i in &word.0 {
            self.check_gen(i)?;
            w = self.mul_gen(&w, i);
        }
        Ok(w)
    }

    pub fn right_descents(&self, w: &WeylElt) -> Vec<usize> {
        self.generators().into_iter().filter(|&i| w.has_right_descent(i)).collect()
    }

    /// Canonical reduced word: peel off the smallest right descent until the
    /// identity is reached, then reverse.
    pub fn canonical_word(&self, w: &WeylElt) -> Word {
        let gens = self.generators();
        let mut cur = w.clone();
        let mut peeled = Vec::new();
        while let Some(i) = gens.iter().copied().find(|&i| cur.has_right_descent(i)) {
            cur = self.mul_gen(&cur, i);
            peeled.push(i);
            assert!(peeled.len() <= MAX_DESCENT_STEPS, "descent did not terminate");
        }
        debug_assert!(cur.is_identity(), "element outside the group generated by loop-free vertices");
        peeled.reverse();
        Word(peeled)
    }

    pub fn length(&self, w: &WeylElt) -> usize {
        self.canonical_word(w).len()
    }

    pub fn is_reduced(&self, word: &Word) -> Result<bool> {
        Ok(self.length(&self.element(word)?) == word.len())
    }

    pub fn bond_order(&self, i: usize, j: usize) -> Result<BondOrder> {
        if i == j {
            return Err(Error::SameVertex(i));
        }
        self.check_gen(i)?;
        self.check_gen(j)?;
        Ok(match self.gcm.get(i, j) {
            0 => BondOrder::Two,
            -1 => BondOrder::Three,
            _ => BondOrder::Infinite,
        })
    }

    /// Whether `w s_i` covers `w` in the Bruhat order.
    pub fn bruhat_covers(&self, w: &WeylElt, i: usize) -> Result<bool> {
        self.check_gen(i)?;
        Ok(!w.has_right_descent(i))
    }

    /// Every word reachable from a reduced word by a single braid move.
    pub fn matsumoto_neighbors(&self, word: &Word) -> Result<Vec<Word>> {
        if !self.is_reduced(word)? {
            return Err(Error::NotReduced(word.0.clone()));
        }
        let w = &word.0;
        let mut out: Vec<Word> = Vec::new();
        for p in 0..w.len() {
            if p + 1 < w.len() && w[p] != w[p + 1] && self.bond_order(w[p], w[p + 1])? == BondOrder::Two {
                let mut v = w.clone();
                v.swap(p, p + 1);
                push_unique(&mut out, Word(v));
            }
            if p + 2 < w.len()
                && w[p] == w[p + 2]
                && w[p] != w[p + 1]
                && self.bond_order(w[p], w[p + 1])? == BondOrder::Three
            {
                let mut v = w.clone();
                let (a, b) = (w[p], w[p + 1]);
                v[p] = b;
                v[p + 1] = a;
                v[p + 2] = b;
                push_unique(&mut out, Word(v));
            }
        }
        Ok(out)
    }

    /// All reduced words of `w`, by backtracking over right descents. Stops once
    /// `cap` words are found and reports truncation in the flag.
    pub fn reduced_words(&self, w: &WeylElt, cap: usize) -> (Vec<Word>, bool) {
        let mut out = Vec::new();
        let mut suffix = Vec::new();
        let truncated = self.reduced_words_rec(w, cap, &mut suffix, &mut out);
        (out, truncated)
    }

    fn reduced_words_rec(&self, w: &WeylElt, cap: usize, suffix: &mut Vec<usize>, out: &mut Vec<Word>) -> bool {
        let descents = self.right_descents(w);
        if descents.is_empty() {
            if out.len() >= cap {
                return true;
            }
            let mut word = suffix.clone();
            word.reverse();
            out.push(Word(word));
            return false;
        }
        for i in descents {
            suffix.push(i);
            let truncated = self.reduced_words_rec(&self.mul_gen(w, i), cap, suffix, out);
            suffix.pop();
            if truncated {
                return true;
            }
        }
        false
    }

    /// Positive roots among `{ w(α_i) : ℓ(w) ≤ radius }`, sorted by height.
    pub fn positive_real_roots(&self, radius: usize) -> Vec<RootVec> {
        let gens = self.generators();
        let mut seen: HashSet<RootVec> = gens.iter().map(|&i| self.simple_root(i)).collect();
        let mut frontier: Vec<RootVec> = seen.iter().cloned().collect();
        for _ in 0..radius {
            let mut next = Vec::new();
            for beta in &frontier {
                for &j in &gens {
                    let r = self.reflections[j].as_ref().unwrap().apply(beta);
                    if seen.insert(r.clone()) {
                        next.push(r);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<RootVec> = seen.into_iter().filter(RootVec::is_positive).collect();
        out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        out
    }

    pub fn adjugate(&self) -> &IntMat {
        self.adjugate.get_or_init(|| self.gcm.adjugate())
    }

    /// `θᵀ adj(A) θ`; nonnegative exactly on the Tits cone and its negative.
    pub fn tits_cone_quadratic(&self, theta: &ThetaVec) -> f64 {
        self.adjugate().quadratic_f64(&theta.0)
    }

    pub fn minimal_imaginary_root(&self) -> Result<RootVec> {
        match self.graph_type()? {
            GraphType::Affine { delta } => Ok(RootVec(delta)),
            other => Err(Error::WrongGraphType { expected: "affine".into(), found: other.to_string() }),
        }
    }

    /// `dim Hom(S_i, S_j[k])` in the 2-Calabi–Yau category attached to a
    /// loop-free graph of non-finite type.
    pub fn ext_dim(&self, i: usize, j: usize, k: usize) -> Result<i64> {
        self.check_gen(i)?;
        self.check_gen(j)?;
        if k > 2 {
            return Err(Error::BadDegree(k));
        }
        if self.graph_type()? == GraphType::Finite {
            return Err(Error::WrongGraphType { expected: "affine or wild".into(), found: "finite".into() });
        }
        Ok(match k {
            1 => self.graph.edge_mult(i, j) as i64,
            _ => (i == j) as i64,
        })
    }

    /// Alternating sum of `ext_dim`, which reproduces the GCM entry.
    pub fn euler_form(&self, i: usize, j: usize) -> Result<i64> {
        Ok(self.ext_dim(i, j, 0)? - self.ext_dim(i, j, 1)? + self.ext_dim(i, j, 2)?)
    }
}

fn push_unique(out: &mut Vec<Word>, w: Word) {
    if !out.contains(&w) {
        out.push(w);
    }
}
