//! The real central charge: points of the real level, paired against the
//! classes of heart simples.
//!
//! The level is `{ θ : θᵀ adj(A) θ = 1, Σθ_i ≥ 0 }`. Samples for the alcove
//! `w·fA` are images under `w` of interior points of the fundamental alcove,
//! each alcove drawing from its own seeded ChaCha stream so results do not
//! depend on execution order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::Region;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::flow::{heart_descriptor, validate_flow, FlowAssignment};
use crate::linalg::IntMat;
use crate::root::{CoxeterSystem, RootVec, ThetaVec, WeylElt};
use crate::tol;

const SAMPLE_LOW: f64 = 0.1;
const SAMPLE_ATTEMPTS: usize = 1000;

/// `Q(θ) = θᵀ adj(A) θ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadForm {
    q: IntMat,
}

impl QuadForm {
    pub fn matrix(&self) -> &IntMat {
        &self.q
    }

    pub fn eval(&self, theta: &ThetaVec) -> f64 {
        self.q.quadratic_f64(&theta.0)
    }

    /// `Σ |q_ij θ_i θ_j|`, the size of the terms cancelling inside `Q(θ)`.
    pub fn magnitude(&self, theta: &ThetaVec) -> f64 {
        let n = self.q.dim();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += (self.q.get(i, j) as f64 * theta.0[i] * theta.0[j]).abs();
            }
        }
        s
    }

    /// Scale onto the level and into the half with `Σθ_i ≥ 0`.
    pub fn normalize(&self, theta: &ThetaVec) -> Result<ThetaVec> {
        let q = self.eval(theta);
        if q <= tol::ZERO {
            return Err(Error::NotInCone(q));
        }
        let t = theta.scale(q.sqrt().recip());
        Ok(if t.coord_sum() < 0.0 { t.scale(-1.0) } else { t })
    }

    pub fn on_level(&self, theta: &ThetaVec, tol: f64) -> bool {
        (self.eval(theta) - 1.0).abs() <= tol && theta.coord_sum() >= -tol
    }
}

pub fn level_form(sys: &CoxeterSystem) -> Result<QuadForm> {
    let ty = sys.graph_type()?;
    if !ty.is_affine_or_hyperbolic() {
        return Err(Error::WrongGraphType { expected: "affine or hyperbolic".into(), found: ty.to_string() });
    }
    Ok(QuadForm { q: sys.adjugate().clone() })
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `k` level points in the open fundamental alcove drawn from one stream.
pub fn sample_stream(qf: &QuadForm, k: usize, seed: u64, stream: u64) -> Result<Vec<ThetaVec>> {
    let n = qf.q.dim();
    let mut rng = stream_rng(seed, stream);
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let mut attempt = 0;
        loop {
            let theta = ThetaVec((0..n).map(|_| rng.gen_range(SAMPLE_LOW..=1.0)).collect());
            match qf.normalize(&theta) {
                Ok(t) => {
                    out.push(t);
                    break;
                }
                Err(e) if attempt + 1 >= SAMPLE_ATTEMPTS => return Err(e),
                Err(_) => attempt += 1,
            }
        }
    }
    Ok(out)
}

pub fn fundamental_sample(qf: &QuadForm, k: usize, seed: u64) -> Result<Vec<ThetaVec>> {
    sample_stream(qf, k, seed, 0)
}

pub fn alcove_sample(qf: &QuadForm, w: &WeylElt, k: usize, seed: u64) -> Result<Vec<ThetaVec>> {
    Ok(fundamental_sample(qf, k, seed)?.iter().map(|t| w.dual_apply(t)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub theta: Vec<f64>,
    pub class: Vec<i64>,
    pub pairing: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlcovePositivity {
    pub alcove: usize,
    pub word: Vec<usize>,
    pub samples: usize,
    pub min_pairing: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositivityReport {
    pub alcoves: Vec<AlcovePositivity>,
    pub min_pairing: f64,
    pub pass: bool,
}

impl PositivityReport {
    pub fn failures(&self) -> impl Iterator<Item = &AlcovePositivity> {
        self.alcoves.iter().filter(|a| !a.pass)
    }
}

/// Pair `k` samples of every alcove with the classes returned by `classes`.
pub fn positivity_of<F>(
    region: &Region,
    qf: &QuadForm,
    k: usize,
    seed: u64,
    exec: Exec,
    classes: F,
) -> Result<PositivityReport>
where
    F: Fn(usize) -> Vec<RootVec> + Sync + Send,
{
    let per: Result<Vec<AlcovePositivity>> = exec
        .map_range(0..region.len(), |a| {
            let w = region.alcove(a);
            let samples = sample_stream(qf, k, seed, a as u64)?;
            let cs = classes(a);
            let mut min = f64::INFINITY;
            let mut arg = None;
            for s in &samples {
                let theta = w.dual_apply(s);
                for c in &cs {
                    let p = theta.pair(c);
                    if p < min {
                        min = p;
                        arg = Some((theta.clone(), c.clone()));
                    }
                }
            }
            let pass = min > tol::ZERO;
            let witness = (!pass).then(|| {
                let (t, c) = arg.unwrap();
                Witness { theta: t.0, class: c.0, pairing: min }
            });
            Ok(AlcovePositivity {
                alcove: a,
                word: region.word(a).0.clone(),
                samples: k,
                min_pairing: min,
                pass,
                witness,
            })
        })
        .into_iter()
        .collect();
    let alcoves = per?;
    let min_pairing = alcoves.iter().map(|a| a.min_pairing).fold(f64::INFINITY, f64::min);
    let pass = alcoves.iter().all(|a| a.pass);
    Ok(PositivityReport { alcoves, min_pairing, pass })
}

/// Positivity of the charge against the heart of every alcove; requires a
/// valid flow.
pub fn positivity_check(
    flow: &FlowAssignment,
    qf: &QuadForm,
    k: usize,
    seed: u64,
    exec: Exec,
) -> Result<PositivityReport> {
    let region = flow.region();
    if let Some(bad) = validate_flow(flow, exec)?.into_iter().find(|r| !r.valid) {
        return Err(Error::InvalidFlow(format!(
            "flat at {} with pair {:?} has sources {:?} and sinks {:?}",
            bad.base, bad.pair, bad.sources, bad.sinks
        )));
    }
    positivity_of(region, qf, k, seed, exec, |a| heart_descriptor(region, a))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WallReport {
    pub wall: usize,
    pub alcove: Vec<usize>,
    pub gen: usize,
    pub root: Vec<i64>,
    /// Largest `|⟨θ, β⟩|` over the projected points.
    pub residual: f64,
    /// Smallest `|⟨θ, c⟩|` over classes of both adjacent hearts other than `±β`.
    pub min_other: f64,
    pub pass: bool,
}

/// Project samples of the shorter side of a wall onto its hyperplane and
/// check that the charge kills exactly the wall root there.
pub fn wall_vanishing_check(region: &Region, qf: &QuadForm, wall: usize, k: usize, seed: u64) -> Result<WallReport> {
    let sys = region.system();
    let wl = &region.walls()[wall];
    let w = region.alcove(wl.base);
    let beta = &wl.root;
    let n = sys.rank();
    let mut e = vec![0.0; n];
    e[wl.gen] = 1.0;
    let nu = w.dual_apply(&ThetaVec(e));
    let nu_beta = nu.pair(beta);

    let far = sys.mul_gen(w, wl.gen);
    let others: Vec<RootVec> = heart_descriptor(region, wl.base)
        .into_iter()
        .chain((0..n).map(|i| far.image_of_simple(i)))
        .filter(|c| c.positive_form() != *beta)
        .collect();

    let (mut residual, mut min_other) = (0.0f64, f64::INFINITY);
    for s in sample_stream(qf, k, seed, wall as u64)? {
        let theta = w.dual_apply(&s);
        let t = theta.pair(beta) / nu_beta;
        let projected = ThetaVec(theta.0.iter().zip(&nu.0).map(|(x, v)| x - t * v).collect());
        let on_level = qf.normalize(&projected).map_err(|_| Error::ProjectionFailed)?;
        residual = residual.max(on_level.pair(beta).abs());
        for c in &others {
            min_other = min_other.min(on_level.pair(c).abs());
        }
    }
    Ok(WallReport {
        wall,
        alcove: region.word(wl.base).0.clone(),
        gen: wl.gen,
        root: beta.0.clone(),
        residual,
        min_other,
        pass: residual < tol::ZERO && min_other > tol::NONZERO,
    })
}

/// `κ_m = (m + √(m² − 4)) / 2`.
pub fn kronecker_constant(m: f64) -> Result<f64> {
    if m.is_nan() || m < 2.0 {
        return Err(Error::BadParam(format!("Kronecker constant needs m ≥ 2, got {m}")));
    }
    Ok((m + (m * m - 4.0).sqrt()) / 2.0)
}

/// The rank-two charge `Z_m(x)` on the level of `K_m`; `m = 2` uses the limit
/// `(1 − x, x)`.
pub fn rank2_charge(m: f64, x: f64) -> Result<(f64, f64)> {
    let k = kronecker_constant(m)?;
    if m == 2.0 {
        return Ok((1.0 - x, x));
    }
    let d = k - k.recip();
    Ok(((k.powf(1.0 - x) - k.powf(x - 1.0)) / d, (k.powf(x) - k.powf(-x)) / d))
}

/// Coordinates `x_1, …, x_n` on the hyperboloid
/// `−λ_n² x_n² + Σ_{v<n} λ_v² x_v² = −1` from angles `σ_1, …, σ_{n−1}`.
pub fn hyperboloid_param(lambdas: &[f64], sigma: &[f64]) -> Result<Vec<f64>> {
    let n = lambdas.len();
    if n == 0 || sigma.len() + 1 != n {
        return Err(Error::BadParam(format!("need n ≥ 1 scales and n − 1 angles, got {} and {}", n, sigma.len())));
    }
    if let Some(i) = lambdas.iter().position(|&l| l == 0.0) {
        return Err(Error::ZeroEigenvalue(i));
    }
    // σ_k for k = 1..n−1, with sinh(σ_0) read as 1
    let s = |k: usize| sigma[k - 1];
    Ok((1..=n)
        .map(|v| {
            let head = if v == n { 1.0 } else { s(n - v).sinh() };
            let tail: f64 = (1..v).map(|j| s(n - j).cosh()).product();
            head * tail / lambdas[v - 1]
        })
        .collect())
}

/// `−λ_n² x_n² + Σ_{v<n} λ_v² x_v²`, which is `−1` on the hyperboloid.
pub fn hyperboloid_form(lambdas: &[f64], x: &[f64]) -> f64 {
    let n = lambdas.len();
    let sq = |v: usize| (lambdas[v] * x[v]).powi(2);
    (0..n - 1).map(sq).sum::<f64>() - sq(n - 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivarianceReport {
    pub trials: usize,
    pub max_pairing_error: f64,
    pub max_level_error: f64,
    pub pass: bool,
}

/// Random checks that `w` acting on the level and on the root lattice
/// preserves the pairing and the level. Errors are relative to the size of
/// the terms summed, which grows exponentially with length in wild type.
pub fn charge_equivariance_check(
    sys: &CoxeterSystem,
    qf: &QuadForm,
    trials: usize,
    seed: u64,
) -> Result<EquivarianceReport> {
    let gens = sys.generators();
    let n = sys.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_elt = |rng: &mut ChaCha8Rng, max: usize| {
        let len = rng.gen_range(0..=max);
        let mut w = sys.identity();
        for _ in 0..len {
            w = sys.mul_gen(&w, gens[rng.gen_range(0..gens.len())]);
        }
        w
    };
    let (mut pe, mut le) = (0.0f64, 0.0f64);
    for t in 0..trials {
        let w = random_elt(&mut rng, 8);
        let base = random_elt(&mut rng, 4);
        let theta = base.dual_apply(&sample_stream(qf, 1, seed, t as u64 + 1)?[0]);
        let v = RootVec((0..n).map(|_| rng.gen_range(-5..=5)).collect());
        let wt = w.dual_apply(&theta);
        let wv = w.apply(&v);
        let scale: f64 = wt.0.iter().zip(&wv.0).map(|(a, &b)| (a * b as f64).abs()).sum::<f64>().max(1.0);
        pe = pe.max((wt.pair(&wv) - theta.pair(&v)).abs() / scale);
        let level = (qf.eval(&wt) - 1.0).abs() / qf.magnitude(&wt).max(1.0);
        le = le.max(level.max(-wt.coord_sum().min(0.0)));
    }
    Ok(EquivarianceReport { trials, max_pairing_error: pe, max_level_error: le, pass: pe <= 1e-10 && le <= tol::ZERO })
}
