//! The Mukai lattice Λ ≅ E₁₀ in coordinates on the ten classes `U_ab`.
//!
//! Vectors of Λ⊗ℚ are stored by their coefficients on `U_01, U_02, …, U_34`
//! (pairs in lexicographic order). The form is `U_ab·U_ab = -2`,
//! `U_ab·U_cd = 1` for disjoint pairs and `0` otherwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::perm::Perm5;
use crate::rational::{self, Rational};

pub const RANK: usize = 10;

/// An unordered pair `{a, b}` of distinct indices in `0..5`, with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    a: u8,
    b: u8,
}

const PAIR_TABLE: [(u8, u8); RANK] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

impl Pair {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a >= 5 || b >= 5 || a == b {
            return Err(Error::domain(format!("{{{a},{b}}} is not a pair of distinct indices in 0..5")));
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Ok(Pair { a: a as u8, b: b as u8 })
    }

    pub fn from_index(i: usize) -> Self {
        let (a, b) = PAIR_TABLE[i];
        Pair { a, b }
    }

    pub fn index(&self) -> usize {
        PAIR_TABLE
            .iter()
            .position(|&(a, b)| a == self.a && b == self.b)
            .expect("pair table is complete")
    }

    pub fn all() -> impl Iterator<Item = Pair> {
        (0..RANK).map(Pair::from_index)
    }

    pub fn lo(&self) -> usize {
        self.a as usize
    }

    pub fn hi(&self) -> usize {
        self.b as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        self.lo() == i || self.hi() == i
    }

    /// Number of indices shared with `other` (0, 1 or 2).
    pub fn overlap(&self, other: &Pair) -> usize {
        [other.lo(), other.hi()].iter().filter(|&&i| self.contains(i)).count()
    }

    pub fn disjoint(&self, other: &Pair) -> bool {
        self.overlap(other) == 0
    }

    /// The three indices not in the pair, ascending.
    pub fn complement(&self) -> [usize; 3] {
        let mut out = [0; 3];
        let mut k = 0;
        for i in 0..5 {
            if !self.contains(i) {
                out[k] = i;
                k += 1;
            }
        }
        out
    }

    pub fn permuted(&self, p: &Perm5) -> Pair {
        Pair::new(p.apply(self.lo()), p.apply(self.hi())).expect("permutation keeps pairs distinct")
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.a, self.b)
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// Inner product of `U_p` and `U_q`.
pub fn u_dot(p: Pair, q: Pair) -> i128 {
    match p.overlap(&q) {
        2 => -2,
        0 => 1,
        _ => 0,
    }
}

/// Gram matrix of the `U`-basis.
pub fn u_gram() -> [[i128; RANK]; RANK] {
    let mut g = [[0; RANK]; RANK];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = u_dot(Pair::from_index(i), Pair::from_index(j));
        }
    }
    g
}

/// An element of Λ⊗ℚ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    coords: [Rational; RANK],
}

impl LatticeVector {
    pub fn new(coords: [Rational; RANK]) -> Self {
        LatticeVector { coords }
    }

    pub fn from_ints(c: [i128; RANK]) -> Self {
        LatticeVector { coords: c.map(Rational::from_integer) }
    }

    pub fn zero() -> Self {
        LatticeVector { coords: [Rational::zero(); RANK] }
    }

    pub fn coords(&self) -> &[Rational; RANK] {
        &self.coords
    }

    pub fn coord(&self, p: Pair) -> Rational {
        self.coords[p.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> Rational {
        inner_product(self, other)
    }

    pub fn norm(&self) -> Rational {
        inner_product(self, self)
    }

    pub fn scale(&self, s: Rational) -> LatticeVector {
        LatticeVector { coords: self.coords.map(|x| x * s) }
    }

    /// Relabels subscripts: `U_ab ↦ U_{p(a)p(b)}`.
    pub fn permuted(&self, p: &Perm5) -> LatticeVector {
        let mut out = [Rational::zero(); RANK];
        for q in Pair::all() {
            out[q.permuted(p).index()] = self.coords[q.index()];
        }
        LatticeVector { coords: out }
    }

    /// Coefficients times two; `None` unless every denominator divides 2.
    pub fn doubled_ints(&self) -> Option<[i128; RANK]> {
        let mut out = [0; RANK];
        for (o, c) in out.iter_mut().zip(&self.coords) {
            let d = *c * Rational::from_integer(2);
            if !rational::is_integer(&d) {
                return None;
            }
            *o = d.to_integer();
        }
        Some(out)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_array::serialize(&self.coords, s)
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rational::serde_array::deserialize(d).map(LatticeVector::new)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        let mut c = self.coords;
        for (x, y) in c.iter_mut().zip(&rhs.coords) {
            *x += *y;
        }
        LatticeVector { coords: c }
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: LatticeVector) -> LatticeVector {
        &self + &rhs
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        let mut c = self.coords;
        for (x, y) in c.iter_mut().zip(&rhs.coords) {
            *x -= *y;
        }
        LatticeVector { coords: c }
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: LatticeVector) -> LatticeVector {
        &self - &rhs
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector { coords: self.coords.map(|x| -x) }
    }
}

impl Mul<&LatticeVector> for Rational {
    type Output = LatticeVector;
    fn mul(self, rhs: &LatticeVector) -> LatticeVector {
        rhs.scale(self)
    }
}

/// Which distinguished vector to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    U,
    F,
    Alpha,
    Nu,
    Delta,
}

/// Builds `U_ab`, `f_ab`, `α_ab` (unordered pair), `ν_{a,b}` (ordered pair) or `Δ` (no indices).
pub fn generator(kind: GeneratorKind, indices: &[usize]) -> Result<LatticeVector> {
    match (kind, indices) {
        (GeneratorKind::Delta, []) => Ok(delta()),
        (GeneratorKind::Delta, _) => Err(Error::domain("delta takes no indices")),
        (GeneratorKind::Nu, &[a, b]) => nu(a, b),
        (GeneratorKind::U, &[a, b]) => Ok(u(Pair::new(a, b)?)),
        (GeneratorKind::F, &[a, b]) => Ok(f(Pair::new(a, b)?)),
        (GeneratorKind::Alpha, &[a, b]) => Ok(alpha(Pair::new(a, b)?)),
        (k, idx) => Err(Error::domain(format!("{k:?} does not take indices {idx:?}"))),
    }
}

pub fn u(p: Pair) -> LatticeVector {
    let mut c = [0; RANK];
    c[p.index()] = 1;
    LatticeVector::from_ints(c)
}

/// `f_ab = ½ Σ U_xy` over the six pairs meeting `{a,b}` in exactly one index.
pub fn f(p: Pair) -> LatticeVector {
    let half = rational::frac(1, 2);
    let mut c = [Rational::zero(); RANK];
    for q in Pair::all() {
        if p.overlap(&q) == 1 {
            c[q.index()] = half;
        }
    }
    LatticeVector::new(c)
}

pub fn alpha(p: Pair) -> LatticeVector {
    &f(p) - &u(p)
}

/// The cusp vector `ν_{a,b} = 3U_ab + 2(U_cd+U_de+U_ec) + (U_ac+U_ad+U_ae)`.
pub fn nu(a: usize, b: usize) -> Result<LatticeVector> {
    let ab = Pair::new(a, b)?;
    let mut c = [0i128; RANK];
    c[ab.index()] = 3;
    let [x, y, z] = ab.complement();
    for (s, t) in [(x, y), (y, z), (x, z)] {
        c[Pair::new(s, t)?.index()] = 2;
    }
    for s in [x, y, z] {
        c[Pair::new(a, s)?.index()] = 1;
    }
    Ok(LatticeVector::from_ints(c))
}

/// `Δ = Σ U_ab`.
pub fn delta() -> LatticeVector {
    LatticeVector::from_ints([1; RANK])
}

pub fn inner_product(v: &LatticeVector, w: &LatticeVector) -> Rational {
    let g = u_gram();
    let mut acc = Rational::zero();
    for (i, vi) in v.coords.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, wj) in w.coords.iter().enumerate() {
            if g[i][j] != 0 && !wj.is_zero() {
                acc += *vi * *wj * Rational::from_integer(g[i][j]);
            }
        }
    }
    acc
}

/// `v + (v·r) r`, the reflection in a root of norm −2.
pub fn reflect_in_root(r: &LatticeVector, v: &LatticeVector) -> Result<LatticeVector> {
    if r.norm() != Rational::from_integer(-2) {
        return Err(Error::domain(format!("reflection root must have norm -2, got {}", r.norm())));
    }
    Ok(v + &r.scale(v.dot(r)))
}

/// Gram matrix of a list of vectors.
pub fn gram(vs: &[LatticeVector]) -> QMatrix {
    vs.iter().map(|v| vs.iter().map(|w| v.dot(w)).collect()).collect()
}

/// A ℤ-basis of the lattice spanned by all `U_ab` and `f_ab`.
///
/// The twenty generators are doubled to clear denominators, put in Hermite
/// normal form over ℤ, and halved again.
pub fn integral_basis() -> [LatticeVector; RANK] {
    let rows: Vec<Vec<i128>> = Pair::all()
        .map(u)
        .chain(Pair::all().map(f))
        .map(|v| v.doubled_ints().expect("generators have denominators dividing 2").to_vec())
        .collect();
    let h = linalg::hermite_rows(&rows);
    assert_eq!(h.len(), RANK, "U_ab alone already have full rank");
    let half = rational::frac(1, 2);
    std::array::from_fn(|i| {
        LatticeVector::new(std::array::from_fn(|j| Rational::from_integer(h[i][j]) * half))
    })
}

/// [`integral_basis`] together with the change of basis needed to test membership in Λ.
#[derive(Clone, Debug)]
pub struct IntegralBasis {
    basis: [LatticeVector; RANK],
    /// Columns are the basis vectors.
    to_u: QMatrix,
    from_u: QMatrix,
}

impl IntegralBasis {
    pub fn new() -> Self {
        let basis = integral_basis();
        let to_u: QMatrix = (0..RANK)
            .map(|i| basis.iter().map(|b| b.coords[i]).collect())
            .collect();
        let from_u = linalg::inverse(&to_u).expect("basis is invertible");
        IntegralBasis { basis, to_u, from_u }
    }

    pub fn vectors(&self) -> &[LatticeVector; RANK] {
        &self.basis
    }

    /// Coordinates of `v` in the integral basis.
    pub fn coordinates(&self, v: &LatticeVector) -> Vec<Rational> {
        linalg::mul(&self.from_u, &v.coords.iter().map(|x| vec![*x]).collect())
            .into_iter()
            .map(|r| r[0])
            .collect()
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.coordinates(v).iter().all(rational::is_integer)
    }

    pub fn gram(&self) -> QMatrix {
        gram(&self.basis)
    }

    /// Matrix of `m` with respect to the integral basis.
    pub fn matrix_in_basis(&self, m: &LatticeIsometry) -> QMatrix {
        linalg::mul(&self.from_u, &linalg::mul(&m.to_qmatrix(), &self.to_u))
    }
}

impl Default for IntegralBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// A linear map of Λ⊗ℚ, stored as integer numerators over a common denominator.
///
/// Column `j` holds the image of the `j`-th `U`-basis vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeIsometry {
    num: [[i128; RANK]; RANK],
    den: i128,
}

fn checked_dot(row: &[i128; RANK], other: &[[i128; RANK]; RANK], j: usize) -> i128 {
    row.iter().enumerate().fold(0i128, |acc, (k, &x)| {
        if x == 0 {
            acc
        } else {
            acc.checked_add(x.checked_mul(other[k][j]).expect("isometry entry overflow"))
                .expect("isometry entry overflow")
        }
    })
}

impl LatticeIsometry {
    pub fn identity() -> Self {
        let mut num = [[0; RANK]; RANK];
        for (i, r) in num.iter_mut().enumerate() {
            r[i] = 1;
        }
        LatticeIsometry { num, den: 1 }
    }

    pub fn from_int_matrix(num: [[i128; RANK]; RANK]) -> Self {
        LatticeIsometry { num, den: 1 }
    }

    pub fn from_rational_matrix(m: &[[Rational; RANK]; RANK]) -> Self {
        let den = m
            .iter()
            .flatten()
            .fold(1i128, |acc, x| acc.lcm(x.denom()));
        let num = m.map(|r| r.map(|x| (x * Rational::from_integer(den)).to_integer()));
        LatticeIsometry { num, den }.normalized()
    }

    fn normalized(mut self) -> Self {
        let g = self.num.iter().flatten().fold(self.den, |acc, x| acc.gcd(x));
        if g > 1 {
            for x in self.num.iter_mut().flatten() {
                *x /= g;
            }
            self.den /= g;
        }
        self
    }

    /// Relabeling of subscripts by a permutation of `{0,…,4}`.
    pub fn permutation(p: &Perm5) -> Self {
        let mut num = [[0; RANK]; RANK];
        for q in Pair::all() {
            num[q.permuted(p).index()][q.index()] = 1;
        }
        LatticeIsometry { num, den: 1 }
    }

    /// Matrix of `v ↦ v + (v·r) r`.
    pub fn reflection(r: &LatticeVector) -> Result<Self> {
        let mut m = [[Rational::zero(); RANK]; RANK];
        for j in 0..RANK {
            let img = reflect_in_root(r, &u(Pair::from_index(j)))?;
            for i in 0..RANK {
                m[i][j] = img.coords[i];
            }
        }
        Ok(Self::from_rational_matrix(&m))
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.num[i][j], self.den)
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// Integer entries when the denominator is 1.
    pub fn int_entries(&self) -> Option<&[[i128; RANK]; RANK]> {
        self.is_integral().then_some(&self.num)
    }

    pub fn to_matrix(&self) -> [[Rational; RANK]; RANK] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entry(i, j)))
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        (0..RANK).map(|i| (0..RANK).map(|j| self.entry(i, j)).collect()).collect()
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        let den = Rational::from_integer(self.den);
        LatticeVector::new(std::array::from_fn(|i| {
            let s = (0..RANK).fold(Rational::zero(), |acc, j| {
                if self.num[i][j] == 0 {
                    acc
                } else {
                    acc + v.coords[j] * Rational::from_integer(self.num[i][j])
                }
            });
            s / den
        }))
    }

    /// Matrix product `self ∘ other`.
    pub fn compose(&self, other: &LatticeIsometry) -> LatticeIsometry {
        let mut num = [[0; RANK]; RANK];
        for (i, row) in num.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = checked_dot(&self.num[i], &other.num, j);
            }
        }
        let den = self.den.checked_mul(other.den).expect("isometry denominator overflow");
        let out = LatticeIsometry { num, den };
        if den == 1 {
            out
        } else {
            out.normalized()
        }
    }

    /// `T_p ∘ self` for the subscript permutation `T_p`.
    pub fn left_permute(&self, p: &Perm5) -> LatticeIsometry {
        let mut num = [[0; RANK]; RANK];
        for q in Pair::all() {
            num[q.permuted(p).index()] = self.num[q.index()];
        }
        LatticeIsometry { num, den: self.den }
    }

    /// `self ∘ T_p` for the subscript permutation `T_p`.
    pub fn right_permute(&self, p: &Perm5) -> LatticeIsometry {
        let mut num = [[0; RANK]; RANK];
        for (row, src) in num.iter_mut().zip(&self.num) {
            for q in Pair::all() {
                row[q.index()] = src[q.permuted(p).index()];
            }
        }
        LatticeIsometry { num, den: self.den }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn transpose(&self) -> LatticeIsometry {
        let mut num = [[0; RANK]; RANK];
        for (i, row) in num.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.num[j][i];
            }
        }
        LatticeIsometry { num, den: self.den }
    }

    /// `Mᵀ G M = G` for the Gram matrix `G` of the `U`-basis.
    pub fn preserves_form(&self) -> bool {
        let g = LatticeIsometry::from_int_matrix(u_gram());
        self.transpose().compose(&g).compose(self) == g
    }

    /// Integral with determinant ±1 in the integral basis, so Λ maps onto Λ.
    pub fn preserves_lattice(&self, basis: &IntegralBasis) -> bool {
        let m = basis.matrix_in_basis(self);
        if !m.iter().flatten().all(rational::is_integer) {
            return false;
        }
        linalg::det(&m).abs().is_one()
    }
}

impl fmt::Debug for LatticeIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..RANK {
            let row: Vec<String> = (0..RANK).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for LatticeIsometry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_matrix::serialize(&self.to_matrix(), s)
    }
}

impl<'de> Deserialize<'de> for LatticeIsometry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m: [[Rational; RANK]; RANK] = rational::serde_matrix::deserialize(d)?;
        Ok(LatticeIsometry::from_rational_matrix(&m))
    }
}
