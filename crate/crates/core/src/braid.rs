//! Word problem for the rank-two parabolic braid groups: `Z²` for a square
//! flat and `B₃` for a hexagonal one.
//!
//! `B₃` equality is decided by the left normal form over the six permutation
//! braids, with the reduced Burau representation as an independent check.
//! Generators are labelled 1 and 2.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Which rank-two braid group a pattern lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BraidType {
    A1A1,
    A2,
}

impl BraidType {
    pub fn from_m(m: usize) -> Option<Self> {
        match m {
            2 => Some(BraidType::A1A1),
            3 => Some(BraidType::A2),
            _ => None,
        }
    }

    pub fn m(self) -> usize {
        match self {
            BraidType::A1A1 => 2,
            BraidType::A2 => 3,
        }
    }
}

impl std::str::FromStr for BraidType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "A1A1" | "A1XA1" => Ok(BraidType::A1A1),
            "A2" => Ok(BraidType::A2),
            _ => Err(format!("unknown braid type `{s}` (expected A1A1 or A2)")),
        }
    }
}

/// A word in `σ₁^{±1}, σ₂^{±1}`, stored as `(generator, sign)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord(pub Vec<(u8, i8)>);

impl BraidWord {
    pub fn from_signs(gens: &[u8], signs: &[i8]) -> Self {
        BraidWord(gens.iter().copied().zip(signs.iter().copied()).collect())
    }

    pub fn inverse(&self) -> Self {
        BraidWord(self.0.iter().rev().map(|&(g, s)| (g, -s)).collect())
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        BraidWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn exponent_sums(&self) -> (i64, i64) {
        let mut e = (0, 0);
        for &(g, s) in &self.0 {
            if g == 1 {
                e.0 += s as i64;
            } else {
                e.1 += s as i64;
            }
        }
        e
    }

    /// Image in `S₃` as a permutation of `{0, 1, 2}`.
    pub fn permutation(&self) -> [u8; 3] {
        let mut p = [0, 1, 2];
        for &(g, _) in &self.0 {
            p = compose(&p, &gen_perm(g));
        }
        p
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(g, s) in &self.0 {
            write!(f, "s{g}{}", if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

type Perm = [u8; 3];

const DELTA: Perm = [2, 1, 0];

fn gen_perm(g: u8) -> Perm {
    match g {
        1 => [1, 0, 2],
        2 => [0, 2, 1],
        _ => panic!("braid generator must be 1 or 2, got {g}"),
    }
}

/// `(a·b)(k) = a(b(k))`.
fn compose(a: &Perm, b: &Perm) -> Perm {
    [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]]
}

fn perm_len(p: &Perm) -> usize {
    let mut n = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            n += (p[i] > p[j]) as usize;
        }
    }
    n
}

fn right_descent(p: &Perm, g: u8) -> bool {
    let i = (g - 1) as usize;
    p[i] > p[i + 1]
}

fn left_descent(p: &Perm, g: u8) -> bool {
    perm_len(&compose(&gen_perm(g), p)) < perm_len(p)
}

/// Conjugation by `Δ`, which swaps `σ₁` and `σ₂`.
fn tau(p: &Perm) -> Perm {
    compose(&compose(&DELTA, p), &DELTA)
}

/// Left normal form `Δ^inf · f₁ ⋯ f_k` with proper, left-weighted factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GarsideNF {
    pub inf: i64,
    pub factors: Vec<[u8; 3]>,
}

impl GarsideNF {
    pub fn identity() -> Self {
        GarsideNF { inf: 0, factors: Vec::new() }
    }

    /// Multiply on the right by a simple element and restore normal form.
    fn push_simple(&mut self, s: Perm) {
        self.factors.push(s);
        for k in (1..self.factors.len()).rev() {
            let (mut a, mut b) = (self.factors[k - 1], self.factors[k]);
            // move letters of b's starting set into a while a stays simple
            while let Some(g) = [1u8, 2].into_iter().find(|&g| left_descent(&b, g) && !right_descent(&a, g)) {
                let sg = gen_perm(g);
                a = compose(&a, &sg);
                b = compose(&sg, &b);
            }
            self.factors[k - 1] = a;
            self.factors[k] = b;
        }
        while self.factors.first() == Some(&DELTA) {
            self.factors.remove(0);
            self.inf += 1;
        }
        self.factors.retain(|f| *f != [0, 1, 2]);
    }

    pub fn is_left_weighted(&self) -> bool {
        self.factors
            .windows(2)
            .all(|w| [1u8, 2].into_iter().all(|g| !left_descent(&w[1], g) || right_descent(&w[0], g)))
    }
}

pub fn garside_nf(word: &BraidWord) -> GarsideNF {
    let mut nf = GarsideNF::identity();
    for &(g, s) in &word.0 {
        if s > 0 {
            nf.push_simple(gen_perm(g));
        } else {
            // σ⁻¹ = Δ⁻¹·(Δσ⁻¹), and Δ⁻¹ moves left past the factors as τ
            nf.inf -= 1;
            nf.factors = nf.factors.iter().map(tau).collect();
            nf.push_simple(compose(&DELTA, &gen_perm(g)));
        }
    }
    nf
}

pub fn equal_braid(ty: BraidType, u: &BraidWord, v: &BraidWord) -> bool {
    match ty {
        BraidType::A1A1 => u.exponent_sums() == v.exponent_sums(),
        BraidType::A2 => garside_nf(u) == garside_nf(v),
    }
}

/// Integer Laurent polynomial in `t`, as a sparse exponent → coefficient map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly(BTreeMap<i32, i64>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn monomial(c: i64, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    fn add_term(&mut self, e: i32, c: i64) {
        let v = self.0.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (&e, &c) in &o.0 {
            r.add_term(e, c);
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(&e, &c)| (e, -c)).collect())
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &o.0 {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

/// 2×2 matrix over Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentMat(pub [[LaurentPoly; 2]; 2]);

impl LaurentMat {
    pub fn identity() -> Self {
        let (o, z) = (LaurentPoly::constant(1), LaurentPoly::zero());
        LaurentMat([[o.clone(), z.clone()], [z, o]])
    }

    pub fn det(&self) -> LaurentPoly {
        let m = &self.0;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }
}

impl Mul for &LaurentMat {
    type Output = LaurentMat;
    fn mul(self, o: &LaurentMat) -> LaurentMat {
        let (a, b) = (&self.0, &o.0);
        let cell = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        LaurentMat([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }
}

/// Reduced Burau matrix of one letter:
/// `σ₁ ↦ [[−t, 1], [0, 1]]`, `σ₂ ↦ [[1, 0], [t, −t]]`.
fn burau_letter(g: u8, s: i8) -> LaurentMat {
    let m = LaurentPoly::monomial;
    let (one, zero) = (LaurentPoly::constant(1), LaurentPoly::zero());
    match (g, s > 0) {
        (1, true) => LaurentMat([[m(-1, 1), one.clone()], [zero, one]]),
        (1, false) => LaurentMat([[m(-1, -1), m(1, -1)], [zero, one]]),
        (2, true) => LaurentMat([[one, zero], [m(1, 1), m(-1, 1)]]),
        (2, false) => LaurentMat([[one.clone(), zero], [one, m(-1, -1)]]),
        _ => panic!("braid generator must be 1 or 2, got {g}"),
    }
}

pub fn burau(word: &BraidWord) -> LaurentMat {
    word.0.iter().fold(LaurentMat::identity(), |acc, &(g, s)| &acc * &burau_letter(g, s))
}

/// A holding equality `lhs = rhs` between sign patterns. For `A1A1` it reads
/// `σ₁^a σ₂^b = σ₂^c σ₁^d`; for `A2`, `σ₁^a σ₂^b σ₁^c = σ₂^d σ₁^e σ₂^f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignPattern {
    pub lhs: Vec<i8>,
    pub rhs: Vec<i8>,
}

impl SignPattern {
    pub fn words(&self, ty: BraidType) -> (BraidWord, BraidWord) {
        let (l, r): (&[u8], &[u8]) = match ty {
            BraidType::A1A1 => (&[1, 2], &[2, 1]),
            BraidType::A2 => (&[1, 2, 1], &[2, 1, 2]),
        };
        (BraidWord::from_signs(l, &self.lhs), BraidWord::from_signs(r, &self.rhs))
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: &[i8]| v.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect::<String>();
        write!(f, "({}) = ({})", s(&self.lhs), s(&self.rhs))
    }
}

fn sign_vectors(len: usize) -> Vec<Vec<i8>> {
    (0..1u32 << len).map(|bits| (0..len).rev().map(|k| if bits >> k & 1 == 0 { 1 } else { -1 }).collect()).collect()
}

/// Every sign choice for which the rank-two braid relation holds.
pub fn enumerate_sign_patterns(ty: BraidType) -> Vec<SignPattern> {
    let len = ty.m();
    let signs = sign_vectors(len);
    let mut out = Vec::new();
    for lhs in &signs {
        for rhs in &signs {
            let p = SignPattern { lhs: lhs.clone(), rhs: rhs.clone() };
            let (u, v) = p.words(ty);
            if equal_braid(ty, &u, &v) {
                out.push(p);
            }
        }
    }
    out
}

/// Aligned text rendering of a pattern table.
pub fn pattern_table(ty: BraidType, patterns: &[SignPattern]) -> String {
    let (l, r) = match ty {
        BraidType::A1A1 => ("s1 s2", "s2 s1"),
        BraidType::A2 => ("s1 s2 s1", "s2 s1 s2"),
    };
    let mut out = format!("{ty:?}: {l} = {r}\n");
    for p in patterns {
        out.push_str(&format!("  {p}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[(u8, i8)]) -> BraidWord {
        BraidWord(letters.to_vec())
    }

    #[test]
    fn braid_relation_and_non_relation() {
        let a = w(&[(1, 1), (2, 1), (1, 1)]);
        let b = w(&[(2, 1), (1, 1), (2, 1)]);
        assert!(equal_braid(BraidType::A2, &a, &b));
        assert_eq!(garside_nf(&a), GarsideNF { inf: 1, factors: vec![] });
        assert!(!equal_braid(BraidType::A2, &w(&[(1, 1), (2, 1)]), &w(&[(2, 1), (1, 1)])));
        assert!(equal_braid(BraidType::A2, &w(&[(1, 1), (1, -1)]), &BraidWord::default()));
        assert_eq!(burau(&a), burau(&b));
        assert_ne!(burau(&w(&[(1, 1), (2, 1)])), burau(&w(&[(2, 1), (1, 1)])));
    }

    #[test]
    fn burau_inverses() {
        for g in [1, 2] {
            assert_eq!(burau(&w(&[(g, 1), (g, -1)])), LaurentMat::identity());
            assert_eq!(burau(&w(&[(g, -1), (g, 1)])), LaurentMat::identity());
        }
    }

    #[test]
    fn delta_squared_is_central() {
        let d2 = w(&[(1, 1), (2, 1), (1, 1), (1, 1), (2, 1), (1, 1)]);
        for g in [1, 2] {
            let x = w(&[(g, 1)]);
            assert!(equal_braid(BraidType::A2, &d2.concat(&x), &x.concat(&d2)));
        }
        assert_eq!(garside_nf(&d2).inf, 2);
    }

    #[test]
    fn negative_letters_normalise() {
        let nf = garside_nf(&w(&[(1, -1)]));
        assert_eq!(nf.inf, -1);
        assert_eq!(nf.factors, vec![[1, 2, 0]]);
        assert!(nf.is_left_weighted());
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(enumerate_sign_patterns(BraidType::A1A1).len(), 4);
        let a2 = enumerate_sign_patterns(BraidType::A2);
        assert_eq!(a2.len(), 6);
        assert!(a2.contains(&SignPattern { lhs: vec![1, 1, -1], rhs: vec![-1, 1, 1] }));
        assert!(!a2.contains(&SignPattern { lhs: vec![1, 1, 1], rhs: vec![-1, -1, -1] }));
    }

    #[test]
    fn laurent_arithmetic() {
        let t = LaurentPoly::monomial(1, 1);
        let ti = LaurentPoly::monomial(1, -1);
        assert_eq!(&t * &ti, LaurentPoly::constant(1));
        assert!((&t - &t).is_zero());
        assert_eq!(burau(&w(&[(1, 1)])).det(), LaurentPoly::monomial(-1, 1));
    }
}
