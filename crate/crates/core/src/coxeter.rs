//! The Coxeter diagram of the polytope `P ⊂ Λ⊗ℝ` cut out by the twenty roots
//! `U_ab` and `α_ab`, its cusps, and the parity character.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{self, LatticeVector, Pair, RANK};
use crate::linalg::{self, QMatrix};
use crate::perm::Perm5;
use crate::rational::Rational;

pub const NODE_COUNT: usize = 2 * RANK;

/// One of the twenty simple roots of `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    U(Pair),
    Alpha(Pair),
}

impl Node {
    /// `U` nodes take indices `0..10`, `α` nodes `10..20`, each in pair order.
    pub fn from_index(i: usize) -> Node {
        if i < RANK {
            Node::U(Pair::from_index(i))
        } else {
            Node::Alpha(Pair::from_index(i - RANK))
        }
    }

    pub fn index(&self) -> usize {
        match self {
            Node::U(p) => p.index(),
            Node::Alpha(p) => RANK + p.index(),
        }
    }

    pub fn all() -> impl Iterator<Item = Node> {
        (0..NODE_COUNT).map(Node::from_index)
    }

    pub fn pair(&self) -> Pair {
        match self {
            Node::U(p) | Node::Alpha(p) => *p,
        }
    }

    pub fn is_u(&self) -> bool {
        matches!(self, Node::U(_))
    }

    pub fn root(&self) -> LatticeVector {
        match self {
            Node::U(p) => lattice::u(*p),
            Node::Alpha(p) => lattice::alpha(*p),
        }
    }

    pub fn permuted(&self, s: &Perm5) -> Node {
        match self {
            Node::U(p) => Node::U(p.permuted(s)),
            Node::Alpha(p) => Node::Alpha(p.permuted(s)),
        }
    }

    /// Identifies a vector as one of the twenty roots.
    pub fn from_root(v: &LatticeVector) -> Result<Node> {
        Node::all()
            .find(|n| n.root() == *v)
            .ok_or_else(|| Error::domain(format!("{v:?} is not a simple root of P")))
    }

    /// Parses `U01`, `α01`, `a01` or `alpha01`.
    pub fn parse(s: &str) -> Result<Node> {
        let s = s.trim();
        let bad = || Error::parse(format!("bad node label {s:?}"));
        let (is_u, rest) = if let Some(r) = s.strip_prefix('U') {
            (true, r)
        } else if let Some(r) = s.strip_prefix("alpha").or_else(|| s.strip_prefix('α')).or_else(|| s.strip_prefix('a')) {
            (false, r)
        } else {
            return Err(bad());
        };
        let digits: Vec<usize> = rest
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        let [a, b] = digits[..] else {
            return Err(bad());
        };
        let p = Pair::new(a, b).map_err(|_| bad())?;
        Ok(if is_u { Node::U(p) } else { Node::Alpha(p) })
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::U(p) => write!(f, "U{p}"),
            Node::Alpha(p) => write!(f, "α{p}"),
        }
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Node::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Edge label: inner product 0, 1 or 2 of the two roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    None,
    Single,
    Double,
}

impl EdgeKind {
    fn from_product(x: i64) -> Option<EdgeKind> {
        match x {
            0 => Some(EdgeKind::None),
            1 => Some(EdgeKind::Single),
            2 => Some(EdgeKind::Double),
            _ => None,
        }
    }
}

/// Integer inner products among the twenty roots, indexed by [`Node::index`].
pub fn root_gram() -> [[i64; NODE_COUNT]; NODE_COUNT] {
    let roots: Vec<LatticeVector> = Node::all().map(|n| n.root()).collect();
    let mut g = [[0; NODE_COUNT]; NODE_COUNT];
    for i in 0..NODE_COUNT {
        for j in 0..NODE_COUNT {
            let x = roots[i].dot(&roots[j]);
            assert!(x.is_integer());
            g[i][j] = x.to_integer() as i64;
        }
    }
    g
}

/// A Coxeter diagram on a subset of the twenty nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterDiagram {
    nodes: Vec<Node>,
    /// `edges[i][j]` for positions in `nodes`; symmetric, `None` on the diagonal.
    edges: Vec<Vec<EdgeKind>>,
}

/// The diagram of `P`.
pub fn build_diagram() -> CoxeterDiagram {
    let g = root_gram();
    let nodes: Vec<Node> = Node::all().collect();
    let edges = (0..NODE_COUNT)
        .map(|i| {
            (0..NODE_COUNT)
                .map(|j| {
                    if i == j {
                        EdgeKind::None
                    } else {
                        EdgeKind::from_product(g[i][j]).expect("roots of P meet in 0, 1 or 2")
                    }
                })
                .collect()
        })
        .collect();
    CoxeterDiagram { nodes, edges }
}

impl CoxeterDiagram {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    fn position(&self, n: Node) -> Option<usize> {
        self.nodes.iter().position(|&m| m == n)
    }

    pub fn edge(&self, a: Node, b: Node) -> Result<EdgeKind> {
        let i = self.position(a).ok_or_else(|| Error::domain(format!("{a} not in diagram")))?;
        let j = self.position(b).ok_or_else(|| Error::domain(format!("{b} not in diagram")))?;
        Ok(self.edges[i][j])
    }

    /// All non-`None` edges `(a, b, kind)` with `a` before `b`.
    pub fn edge_list(&self) -> Vec<(Node, Node, EdgeKind)> {
        let mut out = Vec::new();
        for i in 0..self.nodes.len() {
            for j in i + 1..self.nodes.len() {
                if self.edges[i][j] != EdgeKind::None {
                    out.push((self.nodes[i], self.nodes[j], self.edges[i][j]));
                }
            }
        }
        out
    }

    /// A copy with the edge between `a` and `b` replaced.
    pub fn with_edge(&self, a: Node, b: Node, kind: EdgeKind) -> Result<CoxeterDiagram> {
        if a == b {
            return Err(Error::domain("no loops in a Coxeter diagram"));
        }
        let i = self.position(a).ok_or_else(|| Error::domain(format!("{a} not in diagram")))?;
        let j = self.position(b).ok_or_else(|| Error::domain(format!("{b} not in diagram")))?;
        let mut d = self.clone();
        d.edges[i][j] = kind;
        d.edges[j][i] = kind;
        Ok(d)
    }

    /// The induced subdiagram on `keep` (nodes absent from `self` are ignored).
    pub fn restrict(&self, keep: &[Node]) -> CoxeterDiagram {
        let pos: Vec<usize> = (0..self.nodes.len()).filter(|&i| keep.contains(&self.nodes[i])).collect();
        CoxeterDiagram {
            nodes: pos.iter().map(|&i| self.nodes[i]).collect(),
            edges: pos.iter().map(|&i| pos.iter().map(|&j| self.edges[i][j]).collect()).collect(),
        }
    }

    pub fn degree(&self, n: Node) -> usize {
        self.position(n)
            .map(|i| self.edges[i].iter().filter(|&&e| e != EdgeKind::None).count())
            .unwrap_or(0)
    }

    /// Length of a shortest cycle, ignoring edge multiplicities.
    pub fn girth(&self) -> Option<usize> {
        let n = self.nodes.len();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in 0..n {
                    if self.edges[x][y] == EdgeKind::None {
                        continue;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let c = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
        }
        best
    }
}

/// `true` iff every single edge joins two nodes of the same kind.
///
/// A single edge is the relation `(st)³ = 1`, which forces `s` and `t` to have
/// the same image; no-edge relations `(st)² = 1` and double edges impose nothing.
pub fn verify_parity_welldefined(d: &CoxeterDiagram) -> bool {
    d.edge_list()
        .iter()
        .all(|(a, b, k)| *k != EdgeKind::Single || a.is_u() == b.is_u())
}

/// Element of `(ℤ/2)²`: the number of `U`- and `α`-reflections mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Parity(pub u8, pub u8);

/// The character on `W ⋊ 𝔖₅` sending `U`-reflections to `(1,0)`, `α`-reflections
/// to `(0,1)` and permutations to `(0,0)`.
pub fn parity_character(reflections: &[LatticeVector], _perm: &Perm5) -> Result<Parity> {
    let mut p = Parity(0, 0);
    for r in reflections {
        if Node::from_root(r)?.is_u() {
            p.0 ^= 1;
        } else {
            p.1 ^= 1;
        }
    }
    Ok(p)
}

/// Nonnegative pairing with all twenty roots.
pub fn in_p(v: &LatticeVector) -> bool {
    Node::all().all(|n| !n.root().dot(v).is_negative())
}

/// A connected affine Dynkin type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AffineType {
    A(usize),
    D(usize),
    E(usize),
}

impl AffineType {
    pub fn rank(&self) -> usize {
        match *self {
            AffineType::A(n) | AffineType::D(n) | AffineType::E(n) => n,
        }
    }
}

fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AffineType::A(n) => write!(f, "Ã{}", subscript(n)),
            AffineType::D(n) => write!(f, "D\u{303}{}", subscript(n)),
            AffineType::E(n) => write!(f, "Ẽ{}", subscript(n)),
        }
    }
}

type Mask = u32;

fn mask_of(nodes: &[usize]) -> Mask {
    nodes.iter().fold(0, |m, &i| m | (1 << i))
}

fn nodes_of(m: Mask) -> Vec<usize> {
    (0..NODE_COUNT).filter(|i| m & (1 << i) != 0).collect()
}

fn sub_gram(g: &[[i64; NODE_COUNT]; NODE_COUNT], nodes: &[usize]) -> QMatrix {
    nodes
        .iter()
        .map(|&i| nodes.iter().map(|&j| Rational::from_integer(g[i][j] as i128)).collect())
        .collect()
}

/// Recognizes a connected affine diagram by node count, degrees and edge labels.
fn affine_type(g: &[[i64; NODE_COUNT]; NODE_COUNT], nodes: &[usize]) -> Option<AffineType> {
    let n = nodes.len();
    let degrees: Vec<usize> = nodes
        .iter()
        .map(|&i| nodes.iter().filter(|&&j| j != i && g[i][j] != 0).count())
        .collect();
    let has_double = nodes.iter().any(|&i| nodes.iter().any(|&j| g[i][j] == 2));
    if has_double {
        return (n == 2).then_some(AffineType::A(1));
    }
    let count = |d: usize| degrees.iter().filter(|&&x| x == d).count();
    if count(2) == n {
        return Some(AffineType::A(n - 1));
    }
    if n == 5 && count(4) == 1 {
        return Some(AffineType::D(4));
    }
    if count(3) == 2 && n >= 6 {
        return Some(AffineType::D(n - 1));
    }
    if count(3) == 1 && (7..=9).contains(&n) {
        return Some(AffineType::E(n - 1));
    }
    None
}

/// One connected affine subdiagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineComponent {
    #[serde(serialize_with = "ser_display")]
    pub kind: AffineType,
    pub nodes: Vec<Node>,
    /// Positive primitive kernel vector of the Gram matrix, aligned with `nodes`.
    pub marks: Vec<u32>,
}

fn ser_display<T: fmt::Display, S: Serializer>(t: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_string())
}

impl AffineComponent {
    fn class(&self) -> u8 {
        let us = self.nodes.iter().filter(|n| n.is_u()).count();
        if us == self.nodes.len() {
            0
        } else if us > 0 {
            1
        } else {
            2
        }
    }

    /// `Σ marks · roots`, an isotropic vector orthogonal to the component.
    pub fn null_vector(&self) -> LatticeVector {
        self.nodes.iter().zip(&self.marks).fold(LatticeVector::zero(), |acc, (n, &m)| {
            &acc + &n.root().scale(Rational::from_integer(m as i128))
        })
    }
}

/// A maximal parabolic subdiagram (rank 8), i.e. a cusp of `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicClass {
    pub nodes: Vec<Node>,
    /// `U`-only components first, then mixed, then `α`-only; larger rank first within each.
    pub components: Vec<AffineComponent>,
    pub orbit_type: String,
    pub orbit_id: usize,
    pub null_vector: LatticeVector,
}

impl ParabolicClass {
    pub fn node_labels(&self) -> Vec<String> {
        self.nodes.iter().map(|n| n.to_string()).collect()
    }
}

/// The 𝔖₅-orbits of cusps.
#[derive(Clone, Debug, Serialize)]
pub struct CuspOrbit {
    pub orbit_id: usize,
    pub orbit_type: String,
    pub cusps: Vec<ParabolicClass>,
}

fn marks_for(g: &[[i64; NODE_COUNT]; NODE_COUNT], nodes: &[usize]) -> Vec<u32> {
    let ker = linalg::nullspace(&sub_gram(g, nodes));
    assert_eq!(ker.len(), 1, "affine component has a one-dimensional kernel");
    let v = &ker[0];
    let den = v.iter().fold(1i128, |acc, x| num_integer::lcm(acc, *x.denom()));
    let ints: Vec<i128> = v.iter().map(|x| (x * Rational::from_integer(den)).to_integer()).collect();
    let gcd = ints.iter().fold(0i128, |acc, &x| num_integer::gcd(acc, x));
    let sign = if ints.iter().any(|&x| x < 0) { -1 } else { 1 };
    ints.iter().map(|&x| (sign * x / gcd) as u32).collect()
}

/// Connected affine subdiagrams, found by growing connected elliptic sets.
fn affine_components(g: &[[i64; NODE_COUNT]; NODE_COUNT]) -> Vec<Mask> {
    let neighbors: Vec<Mask> = (0..NODE_COUNT)
        .map(|i| mask_of(&(0..NODE_COUNT).filter(|&j| j != i && g[i][j] != 0).collect::<Vec<_>>()))
        .collect();
    let mut seen: HashSet<Mask> = HashSet::new();
    let mut frontier: Vec<Mask> = (0..NODE_COUNT).map(|i| 1 << i).collect();
    seen.extend(frontier.iter().copied());
    let mut affine = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &m in &frontier {
            let nbr = nodes_of(m).iter().fold(0, |acc, &i| acc | neighbors[i]) & !m;
            for j in nodes_of(nbr) {
                let m2 = m | (1 << j);
                if !seen.insert(m2) {
                    continue;
                }
                let nodes = nodes_of(m2);
                let s = linalg::signature(&sub_gram(g, &nodes));
                if s.negative == nodes.len() {
                    next.push(m2);
                } else if s.positive == 0 && s.zero == 1 {
                    affine.push(m2);
                }
            }
        }
        frontier = next;
    }
    affine.sort_unstable();
    affine
}

/// All cusps of `P`, grouped into 𝔖₅-orbits.
///
/// Connected affine subdiagrams are enumerated first; cusps are the sets of
/// pairwise disjoint, mutually unjoined components of total rank 8.
pub fn classify_cusps() -> Vec<CuspOrbit> {
    let g = root_gram();
    let comps = affine_components(&g);
    let closure: Vec<Mask> = comps
        .iter()
        .map(|&m| {
            nodes_of(m)
                .iter()
                .fold(m, |acc, &i| acc | mask_of(&(0..NODE_COUNT).filter(|&j| g[i][j] != 0).collect::<Vec<_>>()))
        })
        .collect();
    let ranks: Vec<usize> = comps.iter().map(|m| m.count_ones() as usize - 1).collect();

    let mut found: Vec<Vec<usize>> = Vec::new();
    fn search(
        start: usize,
        chosen: &mut Vec<usize>,
        used: Mask,
        rank: usize,
        comps: &[Mask],
        closure: &[Mask],
        ranks: &[usize],
        found: &mut Vec<Vec<usize>>,
    ) {
        if rank == 8 {
            found.push(chosen.clone());
            return;
        }
        for k in start..comps.len() {
            if rank + ranks[k] > 8 || closure[k] & used != 0 {
                continue;
            }
            chosen.push(k);
            search(k + 1, chosen, used | comps[k], rank + ranks[k], comps, closure, ranks, found);
            chosen.pop();
        }
    }
    search(0, &mut Vec::new(), 0, 0, &comps, &closure, &ranks, &mut found);

    let mut cusps: Vec<ParabolicClass> = found
        .iter()
        .map(|ks| {
            let mut components: Vec<AffineComponent> = ks
                .iter()
                .map(|&k| {
                    let idx = nodes_of(comps[k]);
                    AffineComponent {
                        kind: affine_type(&g, &idx).expect("affine component of a known type"),
                        nodes: idx.iter().map(|&i| Node::from_index(i)).collect(),
                        marks: marks_for(&g, &idx),
                    }
                })
                .collect();
            components.sort_by(|a, b| {
                a.class()
                    .cmp(&b.class())
                    .then(b.kind.rank().cmp(&a.kind.rank()))
                    .then(a.nodes.cmp(&b.nodes))
            });
            let mut nodes: Vec<Node> = components.iter().flat_map(|c| c.nodes.clone()).collect();
            nodes.sort();
            let orbit_type = components.iter().map(|c| c.kind.to_string()).collect();
            let null_vector = components[0].null_vector();
            ParabolicClass { nodes, components, orbit_type, orbit_id: 0, null_vector }
        })
        .collect();
    cusps.sort_by(|a, b| a.nodes.cmp(&b.nodes));

    let perms = Perm5::all();
    let orbit_key = |nodes: &[Node]| -> Vec<Node> {
        perms
            .iter()
            .map(|p| {
                let mut v: Vec<Node> = nodes.iter().map(|n| n.permuted(p)).collect();
                v.sort();
                v
            })
            .min()
            .unwrap()
    };
    let mut orbits: BTreeMap<Vec<Node>, Vec<ParabolicClass>> = BTreeMap::new();
    for c in cusps {
        orbits.entry(orbit_key(&c.nodes)).or_default().push(c);
    }
    let mut out: Vec<CuspOrbit> = orbits
        .into_values()
        .map(|cs| CuspOrbit { orbit_id: 0, orbit_type: cs[0].orbit_type.clone(), cusps: cs })
        .collect();
    out.sort_by(|a, b| a.cusps[0].nodes.cmp(&b.cusps[0].nodes));
    for (id, o) in out.iter_mut().enumerate() {
        o.orbit_id = id;
        for c in &mut o.cusps {
            c.orbit_id = id;
        }
    }
    out
}

/// Gram matrix of a node set.
pub fn node_gram(nodes: &[Node]) -> QMatrix {
    lattice::gram(&nodes.iter().map(|n| n.root()).collect::<Vec<_>>())
}

/// Rank of the Gram matrix of a node set and whether it is negative semidefinite.
pub fn parabolic_profile(nodes: &[Node]) -> (usize, bool) {
    let s = linalg::signature(&node_gram(nodes));
    (s.positive + s.negative, s.positive == 0)
}

/// The Ẽ₆ node set of the cusp at `ν_{a,b}`: branch `U_ab`, middle `U_cd, U_de, U_ce`,
/// ends `U_ac, U_ad, U_ae`.
pub fn e6_nodes(a: usize, b: usize) -> Result<Vec<Node>> {
    let ab = Pair::new(a, b)?;
    let [c, d, e] = ab.complement();
    let mut v = vec![Node::U(ab)];
    for (x, y) in [(c, d), (d, e), (c, e)] {
        v.push(Node::U(Pair::new(x, y)?));
    }
    for x in [c, d, e] {
        v.push(Node::U(Pair::new(a, x)?));
    }
    Ok(v)
}

/// The Ã₂ nodes `α_bc, α_bd, α_be` completing [`e6_nodes`].
pub fn e6_partner_nodes(a: usize, b: usize) -> Result<Vec<Node>> {
    let ab = Pair::new(a, b)?;
    ab.complement()
        .iter()
        .map(|&x| Pair::new(b, x).map(Node::Alpha))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Node {
        Node::parse(s).unwrap()
    }

    #[test]
    fn edge_examples() {
        let d = build_diagram();
        assert_eq!(d.edge(n("U01"), n("U23")).unwrap(), EdgeKind::Single);
        assert_eq!(d.edge(n("U01"), n("α01")).unwrap(), EdgeKind::Double);
        assert_eq!(d.edge(n("U01"), n("α23")).unwrap(), EdgeKind::None);
        assert_eq!(d.edge(n("a01"), n("alpha02")).unwrap(), EdgeKind::Single);
    }

    #[test]
    fn labels_round_trip() {
        for node in Node::all() {
            assert_eq!(Node::parse(&node.to_string()).unwrap(), node);
        }
        assert!(Node::parse("U00").is_err());
        assert!(Node::parse("V01").is_err());
    }

    #[test]
    fn parity_examples() {
        let id = Perm5::identity();
        let u01 = lattice::u(Pair::new(0, 1).unwrap());
        let a01 = lattice::alpha(Pair::new(0, 1).unwrap());
        assert_eq!(parity_character(&[u01.clone()], &id).unwrap(), Parity(1, 0));
        assert_eq!(parity_character(&[u01, a01], &id).unwrap(), Parity(1, 1));
        assert_eq!(parity_character(&[], &Perm5::transposition(0, 1)).unwrap(), Parity(0, 0));
        assert!(parity_character(&[lattice::delta()], &id).is_err());
    }

    #[test]
    fn parity_welldefined_examples() {
        let d = build_diagram();
        assert!(verify_parity_welldefined(&d));
        let bad = d.with_edge(n("U01"), n("α23"), EdgeKind::Single).unwrap();
        assert!(!verify_parity_welldefined(&bad));
        let us: Vec<Node> = Node::all().filter(Node::is_u).collect();
        assert!(verify_parity_welldefined(&d.restrict(&us)));
    }

    #[test]
    fn in_p_examples() {
        assert!(in_p(&lattice::delta()));
        assert!(!in_p(&-lattice::delta()));
        assert!(in_p(&lattice::nu(4, 0).unwrap()));
    }

    #[test]
    fn affine_type_names() {
        assert_eq!(AffineType::A(5).to_string(), "Ã₅");
        assert_eq!(AffineType::E(6).to_string(), "Ẽ₆");
        assert_eq!(AffineType::D(5).to_string(), "D̃₅");
    }
}
