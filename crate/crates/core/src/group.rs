//! The group `G = UC(4) ⋊ 𝔖₄`, its normal forms, and its action on Λ.
//!
//! `UC(4) = ⟨x₀⟩ * ⟨x₁⟩ * ⟨x₂⟩ * ⟨x₃⟩` is the free product of four groups of
//! order 2 and `𝔖₄` permutes the letters. On Λ, `x_a` acts as `g_{a4}` and
//! `σ ∈ 𝔖₄` as the subscript permutation `t_σ` (with `σ(4) = 4`).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{self, LatticeIsometry, LatticeVector, Pair};
use crate::perm::{Perm4, Perm5};
use crate::rational::{self, Rational};

/// Coefficients `λ₀,…,λ₄` of the Sylvester form `Σ λ_a L_a³`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    lambdas: [Rational; 5],
}

impl FamilyParams {
    pub fn new(lambdas: [Rational; 5]) -> Result<Self> {
        if lambdas.iter().any(Zero::is_zero) {
            return Err(Error::domain("all λ must be nonzero"));
        }
        Ok(FamilyParams { lambdas })
    }

    /// `(1,1,1,1,t)`.
    pub fn family(t: Rational) -> Result<Self> {
        let one = Rational::one();
        Self::new([one, one, one, one, t])
    }

    pub fn lambdas(&self) -> &[Rational; 5] {
        &self.lambdas
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.lambdas[a] == self.lambdas[b]
    }

    /// `λ₀ = λ₁ = λ₂ = λ₃ ≠ λ₄`: the shape on which the word model applies.
    pub fn check_family_shape(&self) -> Result<()> {
        let l = &self.lambdas;
        if l[0] == l[1] && l[1] == l[2] && l[2] == l[3] && l[3] != l[4] {
            Ok(())
        } else {
            let shown: Vec<String> = l.iter().map(|x| x.to_string()).collect();
            Err(Error::FamilyShape(format!(
                "need λ of shape (1,1,1,1,t) with t ≠ 1, got ({})",
                shown.join(",")
            )))
        }
    }
}

impl Default for FamilyParams {
    fn default() -> Self {
        Self::family(rational::frac(1, 16)).expect("nonzero")
    }
}

impl FromStr for FamilyParams {
    type Err = Error;

    /// Parses `a,b,c,d,e` with rational entries such as `1/16`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<Rational> = s.split(',').map(rational::parse).collect::<Result<_>>()?;
        let lambdas: [Rational; 5] = parts
            .try_into()
            .map_err(|_| Error::parse(format!("expected five comma-separated values, got {s:?}")))?;
        Self::new(lambdas)
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.lambdas.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", shown.join(","))
    }
}

impl fmt::Debug for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ=({self})")
    }
}

impl Serialize for FamilyParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_array::serialize(&self.lambdas, s)
    }
}

impl<'de> Deserialize<'de> for FamilyParams {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let l = rational::serde_array::deserialize(d)?;
        FamilyParams::new(l).map_err(serde::de::Error::custom)
    }
}

/// Normal form `x_{w₁}⋯x_{w_k} · σ` with no two adjacent letters equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    free: Vec<u8>,
    perm: Perm4,
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    free: Vec<usize>,
    perm: Perm4,
}

fn push_letter(free: &mut Vec<u8>, a: u8) {
    if free.last() == Some(&a) {
        free.pop();
    } else {
        free.push(a);
    }
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord { free: Vec::new(), perm: Perm4::identity() }
    }

    pub fn letter(a: usize) -> Result<Self> {
        if a >= 4 {
            return Err(Error::domain(format!("letter x{a} out of range")));
        }
        Ok(GroupWord { free: vec![a as u8], perm: Perm4::identity() })
    }

    pub fn from_perm(perm: Perm4) -> Self {
        GroupWord { free: Vec::new(), perm }
    }

    /// Validates that `free` is reduced and uses letters `0..4`.
    pub fn new(free: &[usize], perm: Perm4) -> Result<Self> {
        if free.iter().any(|&a| a >= 4) {
            return Err(Error::domain(format!("letters must be in 0..4, got {free:?}")));
        }
        if free.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain(format!("free part {free:?} is not reduced")));
        }
        Ok(GroupWord { free: free.iter().map(|&a| a as u8).collect(), perm })
    }

    /// Reduces an arbitrary letter sequence followed by a permutation.
    pub fn reduce(letters: &[usize], perm: Perm4) -> Result<Self> {
        let mut free = Vec::with_capacity(letters.len());
        for &a in letters {
            if a >= 4 {
                return Err(Error::domain(format!("letter x{a} out of range")));
            }
            push_letter(&mut free, a as u8);
        }
        Ok(GroupWord { free, perm })
    }

    pub fn free(&self) -> Vec<usize> {
        self.free.iter().map(|&a| a as usize).collect()
    }

    pub fn perm(&self) -> Perm4 {
        self.perm
    }

    /// Length of the free part.
    pub fn len(&self) -> usize {
        self.free.len()
    }

    pub fn is_empty(&self) -> bool {
        self.free.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.free.is_empty() && self.perm.is_identity()
    }

    /// `(u, σ)(v, τ) = (u · σ(v), στ)`, using `σ x_a σ⁻¹ = x_{σ(a)}`.
    pub fn multiply(&self, other: &GroupWord) -> GroupWord {
        let mut free = self.free.clone();
        for &a in &other.free {
            push_letter(&mut free, self.perm.apply(a as usize) as u8);
        }
        GroupWord { free, perm: self.perm.compose(&other.perm) }
    }

    pub fn inverse(&self) -> GroupWord {
        let inv = self.perm.inverse();
        GroupWord {
            free: self.free.iter().rev().map(|&a| inv.apply(a as usize) as u8).collect(),
            perm: inv,
        }
    }

    /// Parses `"x0 x1 s=(1023)"`; the permutation token is optional.
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut perm = None;
        for tok in s.split_whitespace() {
            if let Some(p) = tok.strip_prefix("s=") {
                if perm.is_some() {
                    return Err(Error::parse("more than one permutation token"));
                }
                perm = Some(Perm4::parse(p)?);
            } else if let Some(a) = tok.strip_prefix('x') {
                let a: usize = a.parse().map_err(|_| Error::parse(format!("bad letter {tok:?}")))?;
                if a >= 4 {
                    return Err(Error::parse(format!("bad letter {tok:?}")));
                }
                if perm.is_some() {
                    return Err(Error::parse("letters must precede the permutation token"));
                }
                letters.push(a);
            } else {
                return Err(Error::parse(format!("bad word token {tok:?}")));
            }
        }
        Self::reduce(&letters, perm.unwrap_or_default())
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut toks: Vec<String> = self.free.iter().map(|a| format!("x{a}")).collect();
        if !self.perm.is_identity() || toks.is_empty() {
            toks.push(format!("s={}", self.perm));
        }
        write!(f, "{}", toks.join(" "))
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GroupWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WordJson { free: self.free(), perm: self.perm }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = WordJson::deserialize(d)?;
        GroupWord::new(&w.free, w.perm).map_err(serde::de::Error::custom)
    }
}

/// All reduced words over four letters of length at most `max_len`, shortest first.
pub fn free_words(max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * 4);
        for w in &layer {
            for a in 0..4 {
                if w.last() != Some(&a) {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// All normal forms with free part of length at most `max_len`.
pub fn normal_forms(max_len: usize) -> Vec<GroupWord> {
    let perms = Perm4::all();
    free_words(max_len)
        .iter()
        .flat_map(|w| perms.iter().map(move |p| GroupWord::new(w, *p).expect("reduced")))
        .collect()
}

/// `g_ab` on Λ: the transposition `t_ab` of subscripts, composed with the
/// reflection in `α_ab` when `λ_a ≠ λ_b`.
pub fn generator_matrix(a: usize, b: usize, params: &FamilyParams) -> Result<LatticeIsometry> {
    let p = Pair::new(a, b)?;
    let t = LatticeIsometry::permutation(&Perm5::transposition(a, b));
    if params.same(a, b) {
        Ok(t)
    } else {
        Ok(t.compose(&LatticeIsometry::reflection(&lattice::alpha(p))?))
    }
}

/// Cached images of the generators for the family `(1,1,1,1,t)`.
#[derive(Clone, Debug)]
pub struct LatticeRep {
    letters: [LatticeIsometry; 4],
}

impl LatticeRep {
    pub fn new(params: &FamilyParams) -> Result<Self> {
        params.check_family_shape()?;
        let letters = [0, 1, 2, 3].map(|a| generator_matrix(a, 4, params).expect("valid pair"));
        Ok(LatticeRep { letters })
    }

    pub fn letter(&self, a: usize) -> &LatticeIsometry {
        &self.letters[a]
    }

    pub fn free_image(&self, free: &[usize]) -> LatticeIsometry {
        free.iter()
            .fold(LatticeIsometry::identity(), |m, &a| m.compose(&self.letters[a]))
    }

    pub fn image(&self, w: &GroupWord) -> LatticeIsometry {
        self.free_image(&w.free()).right_permute(&w.perm.extend())
    }
}

/// The matrix of `w` on Λ.
pub fn word_to_isometry(w: &GroupWord, params: &FamilyParams) -> Result<LatticeIsometry> {
    Ok(LatticeRep::new(params)?.image(w))
}

/// Interior roots `α_cd` with `λ_c ≠ λ_d`, as `(letter, root)` for the family shape.
fn interior_roots() -> [(usize, LatticeVector); 4] {
    [0, 1, 2, 3].map(|a| (a, lattice::alpha(Pair::new(a, 4).expect("valid pair"))))
}

pub const REDUCTION_CAP: usize = 1_000_000;

/// Moves `v` into `P` by the interior reflections.
///
/// Returns `(v', w)` with `v' = word_to_isometry(w)(v)` and `v'·α ≥ 0` for every
/// interior root `α`. Each step applies `g_{c4}` for the most negative pairing
/// `v·α_{c4}`, lowering `v·Δ` by `2|v·α_{c4}|`.
pub fn reduce_to_chamber(v: &LatticeVector, params: &FamilyParams) -> Result<(LatticeVector, GroupWord)> {
    let rep = LatticeRep::new(params)?;
    if v.norm().is_negative() || !v.dot(&lattice::delta()).is_positive() {
        return Err(Error::domain("reduction needs v·v ≥ 0 and v·Δ > 0"));
    }
    let roots = interior_roots();
    let mut cur = v.clone();
    let mut letters: Vec<usize> = Vec::new();
    for _ in 0..REDUCTION_CAP {
        let worst = roots
            .iter()
            .map(|(a, r)| (*a, cur.dot(r)))
            .filter(|(_, x)| x.is_negative())
            .min_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)));
        let Some((a, _)) = worst else {
            letters.reverse();
            let w = GroupWord::reduce(&letters, Perm4::identity())?;
            return Ok((cur, w));
        };
        cur = rep.letter(a).apply(&cur);
        letters.push(a);
    }
    Err(Error::Internal(format!("chamber reduction exceeded {REDUCTION_CAP} steps")))
}

/// Exterior roots: every `U_ab`, and `α_ab` with `λ_a = λ_b`.
pub fn exterior_roots(params: &FamilyParams) -> Vec<LatticeVector> {
    let mut out: Vec<LatticeVector> = Pair::all().map(lattice::u).collect();
    out.extend(
        Pair::all()
            .filter(|p| params.same(p.lo(), p.hi()))
            .map(lattice::alpha),
    );
    out
}

/// Membership in the nef cone `Q = ⋃ g(P)` over the subgroup generated by the interior reflections.
///
/// Vectors outside the closed positive cone are reported as not nef.
pub fn is_nef(v: &LatticeVector, params: &FamilyParams) -> Result<bool> {
    params.check_family_shape()?;
    if v.is_zero() {
        return Ok(true);
    }
    if v.norm().is_negative() || !v.dot(&lattice::delta()).is_positive() {
        return Ok(false);
    }
    let (r, _) = reduce_to_chamber(v, params)?;
    Ok(exterior_roots(params).iter().all(|e| !r.dot(e).is_negative()))
}

/// `g_ab² = 1`, `(g_ab g_bc g_ca)² = 1` and `(g_ab g_cd)² = 1` for disjoint pairs,
/// checked on the Λ-matrices.
pub fn verify_shimada_relations(params: &FamilyParams) -> bool {
    let g = |a: usize, b: usize| generator_matrix(a, b, params).expect("distinct indices");
    let sq_is_id = |m: &LatticeIsometry| m.compose(m).is_identity();
    let pairs: Vec<Pair> = Pair::all().collect();
    let involutions = pairs.iter().all(|p| sq_is_id(&g(p.lo(), p.hi())));
    let mut triangles = true;
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                if a != b && b != c && a != c {
                    let m = g(a, b).compose(&g(b, c)).compose(&g(c, a));
                    triangles &= sq_is_id(&m);
                }
            }
        }
    }
    let commuting = pairs.iter().all(|p| {
        pairs
            .iter()
            .filter(|q| p.disjoint(q))
            .all(|q| sq_is_id(&g(p.lo(), p.hi()).compose(&g(q.lo(), q.hi()))))
    });
    involutions && triangles && commuting
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let isqrt = |n: i128| -> Option<i128> {
        let r = (n as f64).sqrt() as i128;
        (r.saturating_sub(2)..=r + 2).find(|&s| s >= 0 && s * s == n)
    };
    Some(Rational::new(isqrt(*q.numer())?, isqrt(*q.denom())?))
}

/// Extra nodes of the Hessian for `λ = (1,1,1,1,t)`, as projective points with
/// first coordinate `1`.
///
/// Solves `y_a = ±1` (`a ≤ 3`), `t·y₄² = 1`, `Σ y_a = 0`, `Σ 1/(λ_a y_a) = 0`.
pub fn new_nodes(t: Rational) -> Result<Vec<[Rational; 5]>> {
    if t.is_zero() {
        return Err(Error::domain("t must be nonzero"));
    }
    let Some(root) = rational_sqrt(&t) else {
        return Ok(vec![]);
    };
    let lambdas = FamilyParams::family(t)?.lambdas;
    let one = Rational::one();
    let mut out = Vec::new();
    for signs in 0..16u32 {
        let mut y = [one; 5];
        for (k, slot) in y[1..4].iter_mut().enumerate() {
            if signs & (1 << k) != 0 {
                *slot = -one;
            }
        }
        y[4] = if signs & 8 != 0 { -one / root } else { one / root };
        let sum: Rational = y.iter().sum();
        let inv: Rational = y.iter().zip(&lambdas).map(|(y, l)| one / (*l * *y)).sum();
        if sum.is_zero() && inv.is_zero() {
            out.push(y);
        }
    }
    Ok(out)
}

/// Checks `image(u·v) = image(u)·image(v)` for all normal forms with
/// `|u| + |v| ≤ max_len`. Returns the number of pairs checked, or the first failure.
pub fn check_homomorphism(params: &FamilyParams, max_len: usize) -> Result<usize> {
    let rep = LatticeRep::new(params)?;
    let words = free_words(max_len);
    let free_img: std::collections::HashMap<Vec<usize>, LatticeIsometry> =
        words.iter().map(|w| (w.clone(), rep.free_image(w))).collect();
    let perms = Perm4::all();
    let image = |w: &GroupWord| free_img[&w.free()].right_permute(&w.perm().extend());
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = words
        .iter()
        .flat_map(|u| words.iter().filter(move |v| u.len() + v.len() <= max_len).map(move |v| (u, v)))
        .collect();
    let failures: Vec<String> = pairs
        .par_iter()
        .flat_map_iter(|(u, v)| {
            let perms = &perms;
            let image = &image;
            perms.iter().flat_map(move |s| {
                perms.iter().filter_map(move |t| {
                    let x = GroupWord::new(u, *s).expect("reduced");
                    let y = GroupWord::new(v, *t).expect("reduced");
                    let lhs = image(&x.multiply(&y));
                    let rhs = image(&x).compose(&image(&y));
                    (lhs != rhs).then(|| format!("{x} * {y}"))
                })
            })
        })
        .collect();
    match failures.first() {
        Some(f) => Err(Error::Internal(format!("homomorphism fails at {f}"))),
        None => Ok(pairs.len() * perms.len() * perms.len()),
    }
}

/// Images of all normal forms with free length ≤ `max_len`, in [`normal_forms`] order.
pub fn enumerate_images(params: &FamilyParams, max_len: usize) -> Result<Vec<LatticeIsometry>> {
    let rep = LatticeRep::new(params)?;
    let perms: Vec<Perm5> = Perm4::all().iter().map(Perm4::extend).collect();
    let mut out = Vec::new();
    let mut layer: Vec<(Vec<usize>, LatticeIsometry)> = vec![(vec![], LatticeIsometry::identity())];
    let mut free_imgs = vec![LatticeIsometry::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, m) in &layer {
            for a in 0..4 {
                if w.last() != Some(&a) {
                    let mut v = w.clone();
                    v.push(a);
                    next.push((v, m.compose(rep.letter(a))));
                }
            }
        }
        free_imgs.extend(next.iter().map(|(_, m)| m.clone()));
        layer = next;
    }
    for m in &free_imgs {
        out.extend(perms.iter().map(|p| m.right_permute(p)));
    }
    Ok(out)
}

/// Number of distinct images among normal forms of free length ≤ `max_len`,
/// together with the number of normal forms.
pub fn count_distinct_images(params: &FamilyParams, max_len: usize) -> Result<(usize, usize)> {
    let imgs = enumerate_images(params, max_len)?;
    let total = imgs.len();
    let distinct: HashSet<LatticeIsometry> = imgs.into_iter().collect();
    Ok((distinct.len(), total))
}

/// `true` iff no normal form of free length ≤ `max_len` sends `U₀₁` to `α₀₁`.
pub fn parity_separates_u_alpha(params: &FamilyParams, max_len: usize) -> Result<bool> {
    let p = Pair::new(0, 1)?;
    let (u, a) = (lattice::u(p), lattice::alpha(p));
    Ok(enumerate_images(params, max_len)?.par_iter().all(|m| m.apply(&u) != a))
}
