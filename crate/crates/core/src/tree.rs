//! The Bruhat–Tits tree of PGL₂(ℚ₃) and the action of `G` on it.
//!
//! Quaternions enter through the splitting `ℍ⊗ℚ₃ ≅ M₂(ℚ₃)` given by
//! `i ↦ [[0,-1],[1,0]]`, `j ↦ [[1,v],[v,-1]]` with `v² = -2`, `v ≡ 1 (mod 3)`.
//!
//! A vertex is stored as its unique primitive representative lattice in
//! `ℤ₃²`, in column Hermite form: columns `(3^a, c)` and `(0, 3^b)` with
//! `0 ≤ c < 3^b`.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{free_words, GroupWord};
use crate::padic::{Padic3, SplitMatrix};
use crate::perm::Perm4;
use crate::quaternion::{binary_tetrahedral, QuaternionRep, RationalQuaternion};

/// Largest exponent `b` a vertex may carry (so that `3^b` fits in `u128`).
pub const MAX_EXPONENT: u32 = 80;

/// The splitting of the quaternions over ℚ₃ at a fixed precision.
#[derive(Clone, Debug)]
pub struct Splitting {
    precision: u32,
    v: Padic3,
}

impl Splitting {
    pub fn new(precision: u32) -> Result<Self> {
        let v = Padic3::from_int(-2, precision).sqrt_hensel()?;
        Ok(Splitting { precision, v })
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `√-2 ∈ ℤ₃`, the root congruent to 1 mod 3.
    pub fn v(&self) -> &Padic3 {
        &self.v
    }

    /// `w + xI + yJ + zK = [[w + y − zv, −x + yv + z], [x + yv + z, w − y + zv]]`.
    pub fn split(&self, q: &RationalQuaternion) -> SplitMatrix {
        let p = |r| Padic3::from_rational(r, self.precision);
        let (w, x, y, z) = (p(&q.w), p(&q.x), p(&q.y), p(&q.z));
        let yv = &y * &self.v;
        let zv = &z * &self.v;
        SplitMatrix::new([
            [&(&w + &y) - &zv, &(&yv + &z) - &x],
            [&(&x + &yv) + &z, &(&w - &y) + &zv],
        ])
    }
}

/// Canonical form of a vertex of the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreeVertex {
    pub a: u32,
    pub b: u32,
    pub c: u128,
}

fn pow3(k: u32) -> u128 {
    3u128.pow(k)
}

fn v3(mut n: u128) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut k = 0;
    while n % 3 == 0 {
        n /= 3;
        k += 1;
    }
    Some(k)
}

/// Canonical vertex of the lattice with columns `(3^a, y)` and `(0, 3^b)`.
fn canon_lower(a: u32, y: u128, b: u32) -> TreeVertex {
    let k = a.min(b).min(v3(y).unwrap_or(u32::MAX));
    let (a, b, y) = (a - k, b - k, y / pow3(k));
    TreeVertex { a, b, c: y % pow3(b) }
}

impl TreeVertex {
    pub fn new(a: u32, b: u32, c: u128) -> Result<Self> {
        if b > MAX_EXPONENT || a > MAX_EXPONENT {
            return Err(Error::domain(format!("vertex exponents above {MAX_EXPONENT}")));
        }
        if c >= pow3(b) {
            return Err(Error::domain(format!("c = {c} must be below 3^{b}")));
        }
        if a > 0 && b > 0 && c % 3 == 0 {
            return Err(Error::domain("representative lattice is not primitive"));
        }
        Ok(TreeVertex { a, b, c })
    }

    /// The class of `ℤ₃²`.
    pub fn base() -> Self {
        TreeVertex { a: 0, b: 0, c: 0 }
    }

    /// Distance to the base vertex.
    pub fn distance(&self) -> u32 {
        self.a + self.b
    }

    /// Which of the two SL₂(ℚ₃)-orbits the vertex lies in.
    pub fn parity(&self) -> u32 {
        self.distance() % 2
    }

    /// The matrix `[[3^a, 0], [c, 3^b]]`.
    pub fn representative(&self, prec: u32) -> SplitMatrix {
        let e = |x: u128| Padic3::from_int(x as i128, prec);
        SplitMatrix::new([[e(pow3(self.a)), Padic3::zero()], [e(self.c), e(pow3(self.b))]])
    }

    /// The four index-3 sublattices: `M·diag(3,1)` and `M·[[1,0],[c′,3]]`.
    pub fn neighbors(&self) -> [TreeVertex; 4] {
        let (a, b, c) = (self.a, self.b, self.c);
        let first = canon_lower(a + 1, 3 * c, b);
        let rest = [0u128, 1, 2].map(|cp| canon_lower(a, c + pow3(b) * cp, b + 1));
        [first, rest[0], rest[1], rest[2]]
    }
}

/// Normalizes a ℚ₃-matrix to the canonical vertex of the lattice its columns span.
///
/// Raises `PrecisionExhausted` when a pivot valuation or a needed digit of `c`
/// is not determined at the working precision.
pub fn canonical_vertex(m: &SplitMatrix) -> Result<TreeVertex> {
    let entries: Vec<&Padic3> = m.m.iter().flatten().collect();
    let vmin = entries
        .iter()
        .filter_map(|e| e.valuation())
        .min()
        .ok_or_else(|| Error::precision("matrix vanishes to working precision"))?;
    if entries.iter().any(|e| e.is_zero() && e.valuation_lower_bound() < vmin) {
        return Err(Error::precision("cannot certify the minimal valuation"));
    }
    let mut e: [[Padic3; 2]; 2] = m.m.clone().map(|r| r.map(|x| x.shift(-vmin)));
    let pivot_col = match (e[0][0].valuation(), e[0][1].valuation()) {
        (None, None) => return Err(Error::precision("first row vanishes to working precision")),
        (Some(_), None) => 0,
        (None, Some(_)) => 1,
        (Some(x), Some(y)) => usize::from(y < x),
    };
    if pivot_col == 1 {
        for row in e.iter_mut() {
            row.swap(0, 1);
        }
    }
    let p = e[0][0].valuation().expect("pivot is nonzero");
    if e[0][1].is_zero() && e[0][1].valuation_lower_bound() < p {
        return Err(Error::precision("cannot certify the pivot valuation"));
    }
    let ratio = &e[0][1] * &e[0][0].invert()?;
    let d = &e[1][1] - &(&ratio * &e[1][0]);
    let b = d
        .valuation()
        .ok_or_else(|| Error::precision("matrix is singular to working precision"))?;
    let a = p;
    let c = &e[1][0] * &e[0][0].unit_part().invert()?;
    if a < 0 || b < 0 || c.valuation_lower_bound() < 0 {
        return Err(Error::Internal("normalized lattice is not integral".into()));
    }
    let (a, b) = (a as u32, b as u32);
    if b > MAX_EXPONENT || a > MAX_EXPONENT {
        return Err(Error::domain(format!("vertex exponents above {MAX_EXPONENT}")));
    }
    let c = c.residue(b)?.to_u128().expect("below 3^b");
    TreeVertex::new(a, b, c).map_err(|e| Error::Internal(format!("canonical form invalid: {e}")))
}

fn working_precision(g: &SplitMatrix) -> u32 {
    g.m.iter()
        .flatten()
        .map(Padic3::rel_precision)
        .max()
        .filter(|&p| p > 0)
        .unwrap_or(crate::padic::DEFAULT_PRECISION)
}

/// `g` applied to the lattice class `v`.
pub fn act(g: &SplitMatrix, v: &TreeVertex) -> Result<TreeVertex> {
    canonical_vertex(&g.mul(&v.representative(working_precision(g))))
}

/// Vertices at distance `≤ radius` from the base, grouped by distance.
pub fn ball_layers(radius: u32) -> Vec<Vec<TreeVertex>> {
    let mut layers = vec![vec![TreeVertex::base()]];
    let mut seen: HashSet<TreeVertex> = HashSet::from([TreeVertex::base()]);
    for _ in 0..radius {
        let mut next = Vec::new();
        for v in layers.last().expect("nonempty") {
            for n in v.neighbors() {
                if seen.insert(n) {
                    next.push(n);
                }
            }
        }
        next.sort();
        layers.push(next);
    }
    layers
}

pub fn ball(radius: u32) -> Vec<TreeVertex> {
    ball_layers(radius).into_iter().flatten().collect()
}

/// One vertex of a ball dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallNode {
    pub vertex: TreeVertex,
    pub depth: u32,
    /// Indices of neighbors inside the ball.
    pub neighbors: Vec<usize>,
}

/// The ball as adjacency lists, ordered by depth.
pub fn ball_adjacency(radius: u32) -> Vec<BallNode> {
    let verts = ball(radius);
    let index: HashMap<TreeVertex, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    verts
        .iter()
        .map(|v| BallNode {
            vertex: *v,
            depth: v.distance(),
            neighbors: v.neighbors().iter().filter_map(|n| index.get(n).copied()).collect(),
        })
        .collect()
}

/// Vertices within `radius` of the base fixed by `g`.
pub fn fixed_vertices(g: &SplitMatrix, radius: u32) -> Result<Vec<TreeVertex>> {
    let mut out = Vec::new();
    for v in ball(radius) {
        if act(g, &v)? == v {
            out.push(v);
        }
    }
    Ok(out)
}

/// Quaternion words and their matrices over ℚ₃.
#[derive(Clone, Debug)]
pub struct TreeRep {
    pub splitting: Splitting,
    pub quaternions: QuaternionRep,
}

impl TreeRep {
    pub fn new(precision: u32) -> Result<Self> {
        Ok(TreeRep { splitting: Splitting::new(precision)?, quaternions: QuaternionRep::new() })
    }

    /// The split image of the exact quaternion product of `w`.
    pub fn matrix(&self, w: &GroupWord) -> SplitMatrix {
        self.splitting.split(&self.quaternions.word(w))
    }

    /// `w · base`.
    pub fn vertex(&self, w: &GroupWord) -> Result<TreeVertex> {
        act(&self.matrix(w), &TreeVertex::base())
    }

    /// `true` iff `w` fixes every vertex within `radius` of the base.
    pub fn acts_trivially(&self, w: &GroupWord, radius: u32) -> Result<bool> {
        let g = self.matrix(w);
        if act(&g, &TreeVertex::base())? != TreeVertex::base() {
            return Ok(false);
        }
        for v in ball(radius) {
            if act(&g, &v)? != v {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Outcome of comparing reduced words with the ball around the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityReport {
    pub bijection: bool,
    /// Number of words, equivalently of vertices, at each distance.
    pub counts: Vec<usize>,
    pub total: usize,
    pub length_equals_distance: bool,
    /// Odd-length words land in the other vertex class.
    pub bipartition: bool,
}

/// Maps reduced words of length `≤ max_len` in the letters `x_a` to `w · base`.
pub fn verify_simple_transitivity(max_len: u32, rep: &TreeRep) -> Result<TransitivityReport> {
    let words = free_words(max_len as usize);
    let mut images: HashMap<TreeVertex, usize> = HashMap::new();
    let mut length_equals_distance = true;
    let mut bipartition = true;
    let mut counts = vec![0usize; max_len as usize + 1];
    for w in &words {
        let v = rep.vertex(&GroupWord::new(w, Perm4::identity())?)?;
        counts[w.len()] += 1;
        length_equals_distance &= v.distance() as usize == w.len();
        bipartition &= v.parity() as usize == w.len() % 2;
        *images.entry(v).or_default() += 1;
    }
    let target: HashSet<TreeVertex> = ball(max_len).into_iter().collect();
    let injective = images.values().all(|&n| n == 1);
    let onto = images.len() == target.len() && images.keys().all(|v| target.contains(v));
    Ok(TransitivityReport {
        bijection: injective && onto,
        counts,
        total: words.len(),
        length_equals_distance,
        bipartition,
    })
}

/// Base-vertex stabilizer among normal forms of free length `≤ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub order: usize,
    pub unit_determinants: bool,
    pub no_letter_fixes_base: bool,
}

pub fn stabilizer(rep: &TreeRep) -> Result<StabilizerReport> {
    let base = TreeVertex::base();
    let mut order = 0;
    let mut unit_determinants = true;
    let mut no_letter_fixes_base = true;
    for w in free_words(2) {
        for p in Perm4::all() {
            let word = GroupWord::new(&w, p)?;
            let g = rep.matrix(&word);
            if act(&g, &base)? == base {
                order += 1;
                unit_determinants &= g.det().valuation() == Some(0);
                no_letter_fixes_base &= w.len() != 1;
            }
        }
    }
    Ok(StabilizerReport { order, unit_determinants, no_letter_fixes_base })
}

pub fn stabilizer_order(rep: &TreeRep) -> Result<usize> {
    Ok(stabilizer(rep)?.order)
}

type Mat2 = [[u32; 2]; 2];

fn mul_mod(x: &Mat2, y: &Mat2, n: u32) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| (x[i][0] * y[0][j] + x[i][1] * y[1][j]) % n))
}

fn is_id(x: &Mat2) -> bool {
    *x == [[1, 0], [0, 1]]
}

fn reduce_mod(x: &Mat2, n: u32) -> Mat2 {
    x.map(|r| r.map(|v| v % n))
}

fn sl2(n: u32) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if (a * d + n * n - b * c) % n == 1 % n {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

/// Image of the binary tetrahedral group in SL₂(𝔽₃).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2F3Report {
    pub injective: bool,
    pub image_size: usize,
    pub group_order: usize,
    pub determinants_one: bool,
}

impl Sl2F3Report {
    pub fn passed(&self) -> bool {
        self.injective && self.image_size == 24 && self.group_order == 24 && self.determinants_one
    }
}

/// Reduces the 24 Hurwitz units mod 3 through the splitting.
pub fn sl2f3_check(splitting: &Splitting) -> Result<Sl2F3Report> {
    let mut image: BTreeSet<[[u8; 2]; 2]> = BTreeSet::new();
    let mut determinants_one = true;
    let units = binary_tetrahedral();
    for q in &units {
        let m = splitting.split(q).mod3()?;
        let det = (m[0][0] as u32 * m[1][1] as u32 + 9 - m[0][1] as u32 * m[1][0] as u32) % 3;
        determinants_one &= det == 1;
        image.insert(m);
    }
    Ok(Sl2F3Report {
        injective: image.len() == units.len(),
        image_size: image.len(),
        group_order: sl2(3).len(),
        determinants_one,
    })
}

/// Reduction mod `3^k` of the split image of a quaternion with integral image.
pub fn split_mod(splitting: &Splitting, q: &RationalQuaternion, k: u32) -> Result<Mat2> {
    let r = splitting.split(q).residues(k)?;
    Ok(r.map(|row| row.map(|x: BigUint| x.to_u32().expect("small residue"))))
}

/// The finite computation in SL₂(ℤ/9) behind the distance-2 argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityReport {
    /// `στσ⁻¹ = τ⁴` with `τ = [[1,1],[0,1]]`, `σ = diag(2, 5)`.
    pub conjugation: bool,
    /// `τ³` and `σ²` reduce to the identity mod 3.
    pub generators_reduce: bool,
    /// `|⟨τ⟩⋊⟨σ⟩| = 54`.
    pub stabilizer_order: usize,
    /// Order-3 elements of `⟨τ⟩⋊⟨σ⟩`.
    pub order3_count: usize,
    /// All of them lie in `⟨τ³⟩⋊⟨σ²⟩`.
    pub order3_in_subgroup: bool,
    /// Order-3 elements of SL₂(ℤ/9) preserving some cyclic `ℤ/9 ⊂ (ℤ/9)²`.
    pub brute_force_count: usize,
    /// All of them reduce to the identity in SL₂(𝔽₃).
    pub brute_force_trivial_mod3: bool,
}

impl RigidityReport {
    pub fn passed(&self) -> bool {
        self.conjugation
            && self.generators_reduce
            && self.stabilizer_order == 54
            && self.order3_in_subgroup
            && self.order3_count > 0
            && self.brute_force_trivial_mod3
    }
}

fn generated(gens: &[Mat2], n: u32) -> BTreeSet<Mat2> {
    let mut seen = BTreeSet::from([[[1, 0], [0, 1]]]);
    let mut stack = vec![[[1, 0], [0, 1]]];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = mul_mod(&x, g, n);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

pub fn verify_distance2_rigidity() -> RigidityReport {
    let n = 9;
    let tau: Mat2 = [[1, 1], [0, 1]];
    let sigma: Mat2 = [[2, 0], [0, 5]];
    let sigma_inv: Mat2 = [[5, 0], [0, 2]];
    let pow = |x: &Mat2, k: u32| (0..k).fold([[1, 0], [0, 1]], |acc, _| mul_mod(&acc, x, n));
    let conjugation = mul_mod(&mul_mod(&sigma, &tau, n), &sigma_inv, n) == pow(&tau, 4);
    let generators_reduce = is_id(&reduce_mod(&pow(&tau, 3), 3)) && is_id(&reduce_mod(&pow(&sigma, 2), 3));
    let order3 = |x: &Mat2| !is_id(x) && is_id(&pow(x, 3));

    let stab = generated(&[tau, sigma], n);
    let small = generated(&[pow(&tau, 3), pow(&sigma, 2)], n);
    let o3: Vec<&Mat2> = stab.iter().filter(|x| order3(x)).collect();
    let order3_in_subgroup = o3.iter().all(|x| small.contains(*x));

    // cyclic subgroups of order 9: generated by (1, t) or (3s, 1)
    let lines: Vec<[u32; 2]> = (0..9).map(|t| [1, t]).chain((0..3).map(|s| [3 * s, 1])).collect();
    let preserves = |x: &Mat2, l: &[u32; 2]| {
        let img = [(x[0][0] * l[0] + x[0][1] * l[1]) % n, (x[1][0] * l[0] + x[1][1] * l[1]) % n];
        (0..n).any(|k| img == [(k * l[0]) % n, (k * l[1]) % n])
    };
    let brute: Vec<Mat2> = sl2(n)
        .into_iter()
        .filter(|x| order3(x) && lines.iter().any(|l| preserves(x, l)))
        .collect();
    RigidityReport {
        conjugation,
        generators_reduce,
        stabilizer_order: stab.len(),
        order3_count: o3.len(),
        order3_in_subgroup,
        brute_force_count: brute.len(),
        brute_force_trivial_mod3: brute.iter().all(|x| is_id(&reduce_mod(x, 3))),
    }
}

/// Number of elements of SL₂(ℤ/n), by enumeration.
pub fn sl2_order(n: u32) -> usize {
    sl2(n).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::DEFAULT_PRECISION as N;
    use crate::rational::frac;

    fn tv(a: u32, b: u32, c: u128) -> TreeVertex {
        TreeVertex::new(a, b, c).unwrap()
    }

    #[test]
    fn split_relations() {
        let s = Splitting::new(N).unwrap();
        let i = s.split(&RationalQuaternion::i());
        let j = s.split(&RationalQuaternion::j());
        let minus_one = SplitMatrix::from_ints([[-1, 0], [0, -1]], N);
        assert!(i.mul(&i).agrees_with(&minus_one));
        assert!(j.mul(&j).agrees_with(&minus_one));
        let ij = i.mul(&j);
        let ji = j.mul(&i);
        assert!(ij.agrees_with(&ji.scale(&Padic3::from_int(-1, N))));
        assert!(ij.agrees_with(&s.split(&RationalQuaternion::k())));
        let d = s.split(&RationalQuaternion::from_ints(0, 1, 1, 1)).det();
        assert_eq!(d.valuation(), Some(1));
        assert_eq!(d.unit_part().residue(5).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn split_order_three() {
        let s = Splitting::new(N).unwrap();
        let h = frac(1, 2);
        let q = RationalQuaternion::new(-h, h, h, h);
        let m = split_mod(&s, &q, 1).unwrap();
        let cube = mul_mod(&mul_mod(&m, &m, 3), &m, 3);
        assert!(!is_id(&m) && is_id(&cube));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_vertex(&SplitMatrix::identity(N)).unwrap(), TreeVertex::base());
        assert_eq!(canonical_vertex(&SplitMatrix::from_ints([[3, 0], [0, 1]], N)).unwrap(), tv(1, 0, 0));
        assert_eq!(canonical_vertex(&SplitMatrix::from_ints([[9, 0], [0, 9]], N)).unwrap(), TreeVertex::base());
        assert_eq!(canonical_vertex(&SplitMatrix::from_ints([[0, 1], [1, 0]], N)).unwrap(), TreeVertex::base());
        assert_eq!(canonical_vertex(&SplitMatrix::from_ints([[1, 0], [5, 9]], N)).unwrap(), tv(0, 2, 5));
        let s = Splitting::new(N).unwrap();
        let v = act(&s.split(&RationalQuaternion::from_ints(0, 1, 1, 1)), &TreeVertex::base()).unwrap();
        assert_eq!(v.distance(), 1);
        assert!(canonical_vertex(&SplitMatrix::from_ints([[1, 1], [1, 1]], N)).is_err());
    }

    #[test]
    fn neighbor_examples() {
        let n: BTreeSet<_> = TreeVertex::base().neighbors().into_iter().collect();
        let expect: BTreeSet<_> = [tv(1, 0, 0), tv(0, 1, 0), tv(0, 1, 1), tv(0, 1, 2)].into_iter().collect();
        assert_eq!(n, expect);
        for v in ball(3) {
            let ns = v.neighbors();
            assert_eq!(ns.iter().collect::<HashSet<_>>().len(), 4);
            assert!(ns.iter().all(|m| m.neighbors().contains(&v)));
            for m in ns {
                assert_eq!(canonical_vertex(&m.representative(N)).unwrap(), m);
            }
        }
        assert_eq!(ball(2).len(), 17);
    }

    #[test]
    fn act_examples() {
        let s = Splitting::new(N).unwrap();
        let v = tv(0, 2, 7);
        assert_eq!(act(&SplitMatrix::identity(N), &v).unwrap(), v);
        let edge = s.split(&RationalQuaternion::from_ints(0, 1, 1, 0));
        assert_eq!(act(&edge, &TreeVertex::base()).unwrap(), TreeVertex::base());
        let diag = s.split(&RationalQuaternion::from_ints(0, 1, 1, 1));
        assert_ne!(act(&diag, &TreeVertex::base()).unwrap(), TreeVertex::base());
    }

    #[test]
    fn fixed_vertex_examples() {
        let s = Splitting::new(N).unwrap();
        let h = frac(1, 2);
        let g = s.split(&RationalQuaternion::new(-h, h, h, h));
        let fixed = fixed_vertices(&g, 4).unwrap();
        assert_eq!(fixed.len(), 2);
        assert!(fixed.contains(&TreeVertex::base()));
        assert_eq!(fixed.iter().map(TreeVertex::distance).max(), Some(1));
        let d = s.split(&RationalQuaternion::from_ints(0, 1, 1, 1));
        assert!(fixed_vertices(&d, 3).unwrap().is_empty());
        assert_eq!(fixed_vertices(&SplitMatrix::identity(N), 2).unwrap().len(), 17);
    }

    #[test]
    fn transitivity_small() {
        let rep = TreeRep::new(N).unwrap();
        let r = verify_simple_transitivity(2, &rep).unwrap();
        assert!(r.bijection && r.length_equals_distance && r.bipartition);
        assert_eq!(r.counts, vec![1, 4, 12]);
    }

    #[test]
    fn rigidity() {
        let r = verify_distance2_rigidity();
        assert!(r.passed(), "{r:?}");
        assert_eq!(sl2_order(9), 648);
        assert_eq!(sl2_order(3), 24);
    }

    #[test]
    fn binary_tetrahedral_mod_three() {
        let s = Splitting::new(N).unwrap();
        let r = sl2f3_check(&s).unwrap();
        assert!(r.passed(), "{r:?}");
        let minus = s.split(&RationalQuaternion::from_ints(-1, 0, 0, 0)).mod3().unwrap();
        assert_eq!(minus, [[2, 0], [0, 2]]);
    }
}
