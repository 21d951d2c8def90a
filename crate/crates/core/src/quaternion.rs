//! Rational quaternions and the image of `G` in SO(3).
//!
//! The letters `x_a` act as the half-turns about the body diagonals of the cube
//! `[-1,1]³` and `𝔖₄` as the cube's rotation group, which permutes the four
//! diagonals. Vertex `a` of the reference tetrahedron is [`VERTICES`]`[a]`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::GroupWord;
use crate::perm::Perm4;
use crate::rational::{self, Rational};

/// Vertices of the reference tetrahedron, inscribed in `[-1,1]³`.
pub const VERTICES: [[i128; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];

/// `w + x i + y j + z k` over ℚ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalQuaternion {
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

#[derive(Serialize, Deserialize)]
struct QuatJson {
    #[serde(with = "rational::serde_str")]
    w: Rational,
    #[serde(with = "rational::serde_str")]
    x: Rational,
    #[serde(with = "rational::serde_str")]
    y: Rational,
    #[serde(with = "rational::serde_str")]
    z: Rational,
}

impl RationalQuaternion {
    pub fn new(w: Rational, x: Rational, y: Rational, z: Rational) -> Self {
        RationalQuaternion { w, x, y, z }
    }

    pub fn from_ints(w: i128, x: i128, y: i128, z: i128) -> Self {
        let r = Rational::from_integer;
        Self::new(r(w), r(x), r(y), r(z))
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    /// The pure quaternion `v₀ i + v₁ j + v₂ k`.
    pub fn pure(v: [Rational; 3]) -> Self {
        Self::new(Rational::zero(), v[0], v[1], v[2])
    }

    pub fn coeffs(&self) -> [Rational; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(Zero::is_zero)
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Reduced norm `w² + x² + y² + z²`.
    pub fn norm(&self) -> Rational {
        self.coeffs().iter().map(|c| c * c).sum()
    }

    pub fn scale(&self, s: Rational) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("cannot invert the zero quaternion"));
        }
        Ok(self.conjugate().scale(self.norm().recip()))
    }

    /// Hurwitz integer: all coefficients in ℤ, or all in ℤ + ½.
    pub fn is_hurwitz(&self) -> bool {
        let c = self.coeffs();
        let half = rational::frac(1, 2);
        c.iter().all(rational::is_integer) || c.iter().all(|x| rational::is_integer(&(x - half)))
    }

    /// All denominators are powers of 3.
    pub fn in_z_third(&self) -> bool {
        self.coeffs().iter().all(|c| {
            let mut d = *c.denom();
            while d % 3 == 0 {
                d /= 3;
            }
            d == 1
        })
    }

    /// Scales by a positive rational so the coefficients are coprime integers.
    pub fn primitive(&self) -> Self {
        let c = self.coeffs();
        let den = c.iter().fold(1i128, |acc, x| num_integer::lcm(acc, *x.denom()));
        let ints: Vec<i128> = c.iter().map(|x| (x * Rational::from_integer(den)).to_integer()).collect();
        let g = ints.iter().fold(0i128, |acc, &x| num_integer::gcd(acc, x));
        if g == 0 {
            return *self;
        }
        Self::from_ints(ints[0] / g, ints[1] / g, ints[2] / g, ints[3] / g)
    }
}

impl fmt::Display for RationalQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, unit) in self.coeffs().iter().zip(["", "i", "j", "k"]) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
            let a = c.abs();
            let mag = if a.is_one() && !unit.is_empty() { String::new() } else { a.to_string() };
            out.push_str(&format!("{sign}{mag}{unit}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for RationalQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RationalQuaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuatJson { w: self.w, x: self.x, y: self.y, z: self.z }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalQuaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let q = QuatJson::deserialize(d)?;
        Ok(Self::new(q.w, q.x, q.y, q.z))
    }
}

impl Mul for RationalQuaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self, o);
        Self::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Add for RationalQuaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for RationalQuaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for RationalQuaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// A 3×3 rational orthogonal matrix (rotation, or reflection when det = −1).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rotation3 {
    m: [[Rational; 3]; 3],
}

impl Rotation3 {
    pub fn new(m: [[Rational; 3]; 3]) -> Self {
        Rotation3 { m }
    }

    pub fn from_ints(m: [[i128; 3]; 3]) -> Self {
        Rotation3 { m: m.map(|r| r.map(Rational::from_integer)) }
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn matrix(&self) -> &[[Rational; 3]; 3] {
        &self.m
    }

    pub fn mul(&self, o: &Rotation3) -> Rotation3 {
        Rotation3 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| (0..3).map(|k| self.m[i][k] * o.m[k][j]).sum())
            }),
        }
    }

    pub fn apply(&self, v: &[Rational; 3]) -> [Rational; 3] {
        std::array::from_fn(|i| (0..3).map(|k| self.m[i][k] * v[k]).sum())
    }

    pub fn transpose(&self) -> Rotation3 {
        Rotation3 { m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i])) }
    }

    /// Inverse of an orthogonal matrix.
    pub fn inverse(&self) -> Rotation3 {
        self.transpose()
    }

    pub fn negate(&self) -> Rotation3 {
        Rotation3 { m: self.m.map(|r| r.map(|x| -x)) }
    }

    pub fn det(&self) -> Rational {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self) == Rotation3::identity()
    }

    pub fn is_identity(&self) -> bool {
        *self == Rotation3::identity()
    }
}

impl fmt::Debug for Rotation3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Serialize for Rotation3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_matrix::serialize(&self.m, s)
    }
}

impl<'de> Deserialize<'de> for Rotation3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rational::serde_matrix::deserialize(d).map(Rotation3::new)
    }
}

/// Matrix of `v ↦ q v q⁻¹` on `span(i, j, k)`.
pub fn conjugation_rotation(q: &RationalQuaternion) -> Result<Rotation3> {
    let inv = q.inverse()?;
    let cols = [RationalQuaternion::i(), RationalQuaternion::j(), RationalQuaternion::k()]
        .map(|e| *q * e * inv);
    Ok(Rotation3 {
        m: std::array::from_fn(|r| std::array::from_fn(|c| cols[c].coeffs()[r + 1])),
    })
}

/// Closure of a set of matrices under multiplication, sorted.
///
/// Fails with `CapExceeded` once more than `cap` elements have been found.
pub fn closure(generators: &[Rotation3], cap: usize) -> Result<Vec<Rotation3>> {
    let mut seen: BTreeSet<Rotation3> = BTreeSet::from([Rotation3::identity()]);
    let mut queue: VecDeque<Rotation3> = VecDeque::from([Rotation3::identity()]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.mul(g);
            if seen.insert(y) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { what: "rotation group closure".into(), cap });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The 24 units of the Hurwitz order: `±1, ±i, ±j, ±k, (±1±i±j±k)/2`.
pub fn binary_tetrahedral() -> Vec<RationalQuaternion> {
    let mut out = Vec::with_capacity(24);
    for axis in 0..4 {
        for s in [1, -1] {
            let mut c = [0; 4];
            c[axis] = s;
            out.push(RationalQuaternion::from_ints(c[0], c[1], c[2], c[3]));
        }
    }
    let half = rational::frac(1, 2);
    for bits in 0..16u32 {
        let c: [Rational; 4] = std::array::from_fn(|k| if bits & (1 << k) != 0 { -half } else { half });
        out.push(RationalQuaternion::new(c[0], c[1], c[2], c[3]));
    }
    out
}

fn normalized_sign(v: [i128; 3]) -> [i128; 3] {
    let first = v.iter().find(|&&x| x != 0).copied().unwrap_or(1);
    if first < 0 {
        v.map(|x| -x)
    } else {
        v
    }
}

/// Permutation of the body diagonals induced by an orthogonal matrix that preserves them.
pub fn diagonal_permutation(r: &Rotation3) -> Option<Perm4> {
    let verts: Vec<[Rational; 3]> = VERTICES.iter().map(|v| v.map(Rational::from_integer)).collect();
    let mut images = [0u8; 4];
    for (a, v) in verts.iter().enumerate() {
        let img = r.apply(v);
        let neg = img.map(|x| -x);
        images[a] = verts.iter().position(|u| *u == img || *u == neg)? as u8;
    }
    Perm4::new(images).ok()
}

/// The quaternion `±i±j±k` along the diagonal through vertex `a`, first coefficient positive.
pub fn body_diagonal_quaternion(a: usize) -> RationalQuaternion {
    let [x, y, z] = normalized_sign(VERTICES[a]);
    RationalQuaternion::from_ints(0, x, y, z)
}

/// The six edge-midpoint quaternions `i±j, j±k, i±k`.
pub fn edge_quaternions() -> [RationalQuaternion; 6] {
    [
        RationalQuaternion::from_ints(0, 1, 1, 0),
        RationalQuaternion::from_ints(0, 1, -1, 0),
        RationalQuaternion::from_ints(0, 0, 1, 1),
        RationalQuaternion::from_ints(0, 0, 1, -1),
        RationalQuaternion::from_ints(0, 1, 0, 1),
        RationalQuaternion::from_ints(0, 1, 0, -1),
    ]
}

/// The edge quaternion whose half-turn exchanges diagonals `a` and `b` (`a, b ≤ 3`).
pub fn edge_quaternion(a: usize, b: usize) -> Result<RationalQuaternion> {
    if a > 3 || b > 3 || a == b {
        return Err(Error::domain(format!("no edge axis for ({a},{b})")));
    }
    let target = Perm4::transposition(a, b);
    edge_quaternions()
        .into_iter()
        .find(|q| {
            let r = conjugation_rotation(q).expect("nonzero");
            diagonal_permutation(&r) == Some(target)
        })
        .ok_or_else(|| Error::Internal(format!("no edge axis swaps diagonals {a},{b}")))
}

/// Quaternion for `g_ab`: the body diagonal through vertex `a` when `b = 4`,
/// otherwise the edge axis exchanging diagonals `a` and `b`.
pub fn generator_quaternion(a: usize, b: usize) -> Result<RationalQuaternion> {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (a, 4) if a < 4 => Ok(body_diagonal_quaternion(a)),
        (a, b) if b < 4 && a != b => edge_quaternion(a, b),
        _ => Err(Error::domain(format!("no generator g{a}{b}"))),
    }
}

/// The fixed labeling `g_ab ↦ quaternion`, keyed by `"g01"` … `"g34"`.
pub fn gbar_assignment() -> BTreeMap<String, RationalQuaternion> {
    let mut out = BTreeMap::new();
    for a in 0..5 {
        for b in a + 1..5 {
            out.insert(format!("g{a}{b}"), generator_quaternion(a, b).expect("valid pair"));
        }
    }
    out
}

/// `-rotation(x_a)`: the linear part of the reflection across facet `a`.
pub fn facet_reflection(a: usize) -> Result<Rotation3> {
    if a > 3 {
        return Err(Error::domain(format!("facet index {a} out of range")));
    }
    Ok(conjugation_rotation(&body_diagonal_quaternion(a))?.negate())
}

/// Quaternions for the letters and for each `σ ∈ 𝔖₄`.
#[derive(Clone, Debug)]
pub struct QuaternionRep {
    letters: [RationalQuaternion; 4],
    perms: HashMap<Perm4, RationalQuaternion>,
}

impl QuaternionRep {
    pub fn new() -> Self {
        let letters = [0, 1, 2, 3].map(body_diagonal_quaternion);
        let edges = edge_quaternions();
        let mut perms = HashMap::from([(Perm4::identity(), RationalQuaternion::one())]);
        let mut queue = VecDeque::from([RationalQuaternion::one()]);
        while let Some(q) = queue.pop_front() {
            for e in &edges {
                let p = (q * *e).primitive();
                let r = conjugation_rotation(&p).expect("nonzero");
                let s = diagonal_permutation(&r).expect("edge products preserve the diagonals");
                if let std::collections::hash_map::Entry::Vacant(v) = perms.entry(s) {
                    v.insert(p);
                    queue.push_back(p);
                }
            }
        }
        assert_eq!(perms.len(), 24);
        QuaternionRep { letters, perms }
    }

    pub fn letter(&self, a: usize) -> RationalQuaternion {
        self.letters[a]
    }

    /// A quaternion whose rotation induces `σ` on the diagonals.
    pub fn perm(&self, s: &Perm4) -> RationalQuaternion {
        self.perms[s]
    }

    /// Exact product of the letter quaternions and the permutation quaternion.
    pub fn word(&self, w: &GroupWord) -> RationalQuaternion {
        let q = w
            .free()
            .iter()
            .fold(RationalQuaternion::one(), |acc, &a| acc * self.letters[a]);
        q * self.perms[&w.perm()]
    }

    pub fn rotation(&self, w: &GroupWord) -> Rotation3 {
        conjugation_rotation(&self.word(w)).expect("word quaternions are nonzero")
    }
}

impl Default for QuaternionRep {
    fn default() -> Self {
        Self::new()
    }
}

/// `rot(q_σ) rot(x_a) rot(q_σ)⁻¹ = rot(x_{σ(a)})` for all `σ` and `a`, and
/// `rot(q_σ) rot(q_τ) = rot(q_{στ})`.
pub fn verify_equivariance() -> bool {
    let rep = QuaternionRep::new();
    let rot = |q: &RationalQuaternion| conjugation_rotation(q).expect("nonzero");
    let perms = Perm4::all();
    let conj = perms.iter().all(|s| {
        let r = rot(&rep.perm(s));
        (0..4).all(|a| r.mul(&rot(&rep.letter(a))).mul(&r.inverse()) == rot(&rep.letter(s.apply(a))))
    });
    let hom = perms.iter().all(|s| {
        perms
            .iter()
            .all(|t| rot(&rep.perm(s)).mul(&rot(&rep.perm(t))) == rot(&rep.perm(&s.compose(t))))
    });
    conj && hom
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn q(w: i128, x: i128, y: i128, z: i128) -> RationalQuaternion {
        RationalQuaternion::from_ints(w, x, y, z)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(q(0, 1, 1, 1).norm(), int(3));
        let lhs = q(0, 0, 1, -1) * q(0, 1, -1, 0).inverse().unwrap();
        let h = frac(1, 2);
        assert_eq!(lhs, RationalQuaternion::new(-h, h, h, h));
        assert_eq!(RationalQuaternion::i() * RationalQuaternion::j(), RationalQuaternion::k());
        assert!(q(0, 0, 0, 0).inverse().is_err());
        assert!(RationalQuaternion::new(h, h, h, -h).is_hurwitz());
        assert!(!RationalQuaternion::new(h, h, int(0), int(0)).is_hurwitz());
        assert_eq!(lhs.to_string(), "-1/2+1/2i+1/2j+1/2k");
    }

    #[test]
    fn rotation_examples() {
        let ri = conjugation_rotation(&RationalQuaternion::i()).unwrap();
        assert_eq!(ri, Rotation3::from_ints([[1, 0, 0], [0, -1, 0], [0, 0, -1]]));
        let r = conjugation_rotation(&q(0, 1, 1, 0)).unwrap();
        assert_eq!(r.apply(&[int(1), int(1), int(0)]), [int(1), int(1), int(0)]);
        assert!(r.mul(&r).is_identity() && !r.is_identity());
        let r = conjugation_rotation(&q(0, 1, 1, 1)).unwrap();
        assert_eq!(r.apply(&[int(1), int(1), int(1)]), [int(1), int(1), int(1)]);
        assert!(r.mul(&r).is_identity() && r.det() == int(1));
        assert!(conjugation_rotation(&q(0, 0, 0, 0)).is_err());
    }

    #[test]
    fn closure_examples() {
        let edges: Vec<Rotation3> = edge_quaternions().iter().map(|e| conjugation_rotation(e).unwrap()).collect();
        assert_eq!(closure(&edges, 100).unwrap().len(), 24);
        assert_eq!(closure(&[Rotation3::identity()], 10).unwrap().len(), 1);
        let all: Vec<Rotation3> = gbar_assignment().values().map(|q| conjugation_rotation(q).unwrap()).collect();
        assert!(matches!(closure(&all, 10_000), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn binary_tetrahedral_examples() {
        let a = binary_tetrahedral();
        assert_eq!(a.len(), 24);
        assert!(a.iter().all(|x| x.norm() == int(1) && x.is_hurwitz()));
        let h = frac(1, 2);
        let w = RationalQuaternion::new(-h, h, h, h);
        assert!(a.contains(&w) && a.contains(&(w * w)));
        assert_eq!(w * w, RationalQuaternion::new(-h, -h, -h, -h));
        let set: BTreeSet<_> = a.iter().copied().collect();
        assert!(a.iter().all(|x| a.iter().all(|y| set.contains(&(*x * *y)))));
    }

    #[test]
    fn assignment_examples() {
        let g = gbar_assignment();
        assert_eq!(g.len(), 10);
        assert_eq!(g["g04"], q(0, 1, 1, 1));
        assert_eq!(g["g34"], q(0, 1, 1, -1));
        assert_eq!(g["g03"], q(0, 1, 1, 0));
        let rot = |s: &str| conjugation_rotation(&g[s]).unwrap();
        assert_eq!(rot("g01").mul(&rot("g04")).mul(&rot("g01").inverse()), rot("g14"));
        let three = rot("g12").mul(&rot("g23"));
        assert!(!three.is_identity() && three.mul(&three).mul(&three).is_identity());
        assert_eq!(rot("g04").mul(&three), three.mul(&rot("g04")));
        assert!(verify_equivariance());
    }

    #[test]
    fn facet_reflection_examples() {
        let f0 = facet_reflection(0).unwrap();
        assert_eq!(f0.det(), int(-1));
        assert!(f0.mul(&f0).is_identity());
        assert_eq!(f0.apply(&[int(1), int(-1), int(0)]), [int(1), int(-1), int(0)]);
        assert_eq!(f0.apply(&[int(1), int(1), int(1)]), [int(-1), int(-1), int(-1)]);
        assert!(facet_reflection(4).is_err());
    }
}
