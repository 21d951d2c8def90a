//! The tetrahedron reflection game.
//!
//! The reference tetrahedron has vertices [`VERTICES`]; facet `a` is the one
//! opposite vertex `a`. A pose is an affine isometry `x ↦ Lx + t`, and every
//! move right-multiplies it: reflecting across the current image of facet `a`
//! turns pose `P` into `P·R_a`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{free_words, GroupWord};
use crate::perm::Perm4;
use crate::quaternion::{conjugation_rotation, QuaternionRep, Rotation3, VERTICES};
use crate::rational::{self, frac, int, Rational};

/// Longest free part [`pose_to_word`] will tabulate.
pub const MAX_TABLE_LEN: usize = 12;

/// Longest reduced word [`apply_move_with`] accepts; keeps pose entries well inside `i128`.
pub const MAX_WORD_LEN: usize = 64;

fn vertex(a: usize) -> [Rational; 3] {
    VERTICES[a].map(int)
}

/// An affine isometry `x ↦ linear·x + translation` of ℚ³.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pose {
    pub linear: Rotation3,
    #[serde(with = "rational::serde_array")]
    pub translation: [Rational; 3],
}

impl Pose {
    pub fn identity() -> Self {
        Pose { linear: Rotation3::identity(), translation: [int(0); 3] }
    }

    /// `R_a(x) = x − (2/3)(V_a·x + 1)V_a`, the reflection across facet `a`.
    pub fn facet(a: usize) -> Result<Self> {
        if a > 3 {
            return Err(Error::domain(format!("facet index {a} out of range")));
        }
        let v = vertex(a);
        let c = frac(2, 3);
        let linear = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { int(1) } else { int(0) } - c * v[i] * v[j])
        });
        Ok(Pose { linear: Rotation3::new(linear), translation: v.map(|x| -c * x) })
    }

    /// The symmetry fixing the center that sends `V_a` to `V_{σ(a)}`.
    pub fn symmetry(s: &Perm4, rep: &QuaternionRep) -> Self {
        let r = conjugation_rotation(&rep.perm(s)).expect("nonzero");
        let linear = if s.sign() < 0 { r.negate() } else { r };
        Pose { linear, translation: [int(0); 3] }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Pose) -> Pose {
        let lt = self.linear.apply(&other.translation);
        Pose {
            linear: self.linear.mul(&other.linear),
            translation: std::array::from_fn(|i| lt[i] + self.translation[i]),
        }
    }

    pub fn inverse(&self) -> Pose {
        let inv = self.linear.inverse();
        let t = inv.apply(&self.translation);
        Pose { linear: inv, translation: t.map(|x| -x) }
    }

    pub fn apply(&self, x: &[Rational; 3]) -> [Rational; 3] {
        let l = self.linear.apply(x);
        std::array::from_fn(|i| l[i] + self.translation[i])
    }

    pub fn is_identity(&self) -> bool {
        *self == Pose::identity()
    }

    pub fn det(&self) -> Rational {
        self.linear.det()
    }

    /// Images of the four reference vertices.
    pub fn vertices(&self) -> [[Rational; 3]; 4] {
        std::array::from_fn(|a| self.apply(&vertex(a)))
    }

    /// Orthogonal linear part and a regular image of the reference tetrahedron.
    pub fn is_valid(&self) -> bool {
        let d = self.det();
        let vs = self.vertices();
        let congruent = (0..4).all(|a| {
            (a + 1..4).all(|b| (0..3).map(|i| (vs[a][i] - vs[b][i]).pow(2)).sum::<Rational>() == int(8))
        });
        self.linear.is_orthogonal() && (d == int(1) || d == int(-1)) && congruent
    }
}

/// A move: reflect across a facet, or apply a symmetry of the tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Facet(u8),
    Symmetry(Perm4),
}

impl Move {
    pub fn facet(a: usize) -> Result<Self> {
        if a > 3 {
            return Err(Error::domain(format!("facet index {a} out of range")));
        }
        Ok(Move::Facet(a as u8))
    }

    /// The move as a group element.
    pub fn word(&self) -> GroupWord {
        match self {
            Move::Facet(a) => GroupWord::letter(*a as usize).expect("valid facet"),
            Move::Symmetry(s) => GroupWord::from_perm(*s),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Facet(a) => write!(f, "F{a}"),
            Move::Symmetry(s) => write!(f, "S={s}"),
        }
    }
}

impl FromStr for Move {
    type Err = Error;

    /// `"F0"`..`"F3"` or `"S=(abcd)"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(p) = s.strip_prefix("S=") {
            return Ok(Move::Symmetry(Perm4::parse(p)?));
        }
        match s.strip_prefix('F').and_then(|d| d.parse::<usize>().ok()) {
            Some(a) if a < 4 => Ok(Move::Facet(a as u8)),
            _ => Err(Error::parse(format!("invalid move token {s:?}"))),
        }
    }
}

impl Serialize for Move {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Move {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Whether symmetry moves are accepted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameOptions {
    #[serde(default)]
    pub symmetry_moves: bool,
}

/// Poses of the generators.
#[derive(Clone, Debug)]
pub struct MoveTable {
    facets: [Pose; 4],
    symmetries: HashMap<Perm4, Pose>,
}

impl MoveTable {
    pub fn new() -> Self {
        let rep = QuaternionRep::new();
        MoveTable {
            facets: [0, 1, 2, 3].map(|a| Pose::facet(a).expect("valid facet")),
            symmetries: Perm4::all().into_iter().map(|s| (s, Pose::symmetry(&s, &rep))).collect(),
        }
    }

    pub fn pose(&self, m: &Move) -> Pose {
        match m {
            Move::Facet(a) => self.facets[*a as usize],
            Move::Symmetry(s) => self.symmetries[s],
        }
    }

    /// `R_{u₁}⋯R_{u_k}·S_σ` for `w = x_{u₁}⋯x_{u_k}·σ`.
    pub fn word_pose(&self, w: &GroupWord) -> Pose {
        w.free()
            .iter()
            .fold(Pose::identity(), |p, &a| p.compose(&self.facets[a]))
            .compose(&self.symmetries[&w.perm()])
    }
}

impl Default for MoveTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Pose, move history and the reduced word of the history.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameState {
    pub pose: Pose,
    pub history: Vec<Move>,
    pub word: GroupWord,
}

impl Default for GameState {
    fn default() -> Self {
        Self::new()
    }
}

impl GameState {
    pub fn new() -> Self {
        GameState { pose: Pose::identity(), history: Vec::new(), word: GroupWord::identity() }
    }

    pub fn from_moves(moves: &[Move], table: &MoveTable) -> Self {
        moves.iter().fold(Self::new(), |s, m| apply_move(&s, *m, table))
    }

    pub fn is_solved(&self) -> bool {
        self.pose.is_identity()
    }

    /// Checks that `word` and `pose` agree with `history`.
    pub fn validate(&self, table: &MoveTable) -> Result<()> {
        let replay = Self::from_moves(&self.history, table);
        if replay.word != self.word {
            return Err(Error::domain("word does not match the history"));
        }
        if replay.pose != self.pose {
            return Err(Error::domain("pose does not match the history"));
        }
        Ok(())
    }
}

/// Applies `m` to the current pose and right-multiplies the word.
pub fn apply_move(s: &GameState, m: Move, table: &MoveTable) -> GameState {
    let mut history = s.history.clone();
    history.push(m);
    GameState {
        pose: s.pose.compose(&table.pose(&m)),
        history,
        word: s.word.multiply(&m.word()),
    }
}

/// [`apply_move`], rejecting symmetry moves unless `options` allows them and
/// words longer than [`MAX_WORD_LEN`].
pub fn apply_move_with(s: &GameState, m: Move, options: &GameOptions, table: &MoveTable) -> Result<GameState> {
    if matches!(m, Move::Symmetry(_)) && !options.symmetry_moves {
        return Err(Error::domain("symmetry moves are disabled for this game"));
    }
    if s.word.len() >= MAX_WORD_LEN && s.word.multiply(&m.word()).len() > MAX_WORD_LEN {
        return Err(Error::CapExceeded { what: "reduced word length".into(), cap: MAX_WORD_LEN });
    }
    Ok(apply_move(s, m, table))
}

/// Moves that return `w` to the identity: its reduced inverse, facets first.
pub fn solve_word(w: &GroupWord) -> Vec<Move> {
    let inv = w.inverse();
    let mut moves: Vec<Move> = inv.free().into_iter().map(|a| Move::Facet(a as u8)).collect();
    if !inv.perm().is_identity() {
        moves.push(Move::Symmetry(inv.perm()));
    }
    moves
}

pub fn solve(s: &GameState) -> Vec<Move> {
    solve_word(&s.word)
}

/// `n` seeded facet moves, never repeating the previous facet.
pub fn scramble_moves(n: usize, seed: u64) -> Vec<Move> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut last: Option<u8> = None;
    for _ in 0..n {
        let choices: Vec<u8> = (0..4).filter(|&a| Some(a) != last).collect();
        let a = choices[rng.random_range(0..choices.len())];
        out.push(Move::Facet(a));
        last = Some(a);
    }
    out
}

pub fn scramble(n: usize, seed: u64, table: &MoveTable) -> GameState {
    GameState::from_moves(&scramble_moves(n, seed), table)
}

/// Exact lookup from poses of reduced free words to the words.
#[derive(Clone, Debug)]
pub struct PoseTable {
    max_len: usize,
    table: HashMap<Pose, Vec<usize>>,
    collisions: usize,
    moves: MoveTable,
}

impl PoseTable {
    /// Tabulates all reduced free words of length `≤ max_len` (at most [`MAX_TABLE_LEN`]).
    pub fn new(max_len: usize) -> Result<Self> {
        if max_len > MAX_TABLE_LEN {
            return Err(Error::CapExceeded { what: "pose table length".into(), cap: MAX_TABLE_LEN });
        }
        let moves = MoveTable::new();
        let mut table = HashMap::new();
        let mut collisions = 0;
        // breadth first: extend each pose of the previous layer by one facet
        let mut layer: Vec<(Vec<usize>, Pose)> = vec![(vec![], Pose::identity())];
        table.insert(Pose::identity(), vec![]);
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * 3);
            for (w, p) in &layer {
                for a in 0..4 {
                    if w.last() == Some(&a) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(a);
                    let q = p.compose(&moves.facets[a]);
                    if table.insert(q, v.clone()).is_some() {
                        collisions += 1;
                    }
                    next.push((v, q));
                }
            }
            layer = next;
        }
        Ok(PoseTable { max_len, table, collisions, moves })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Pairs of distinct words that shared a pose during construction.
    pub fn collisions(&self) -> usize {
        self.collisions
    }

    /// The word `(u, σ)` with `pose = pose(u)·S_σ`, if `|u| ≤ max_len`.
    pub fn lookup(&self, pose: &Pose) -> Option<GroupWord> {
        Perm4::all().into_iter().find_map(|s| {
            let free_pose = pose.compose(&self.moves.symmetries[&s].inverse());
            self.table.get(&free_pose).map(|u| GroupWord::new(u, s).expect("reduced"))
        })
    }
}

pub fn pose_to_word(pose: &Pose, max_len: usize) -> Result<Option<GroupWord>> {
    Ok(PoseTable::new(max_len)?.lookup(pose))
}

/// Number of distinct linear parts among normal forms of free length `≤ max_len`,
/// and the number of normal forms.
pub fn count_linear_parts(max_len: usize) -> (usize, usize) {
    let table = MoveTable::new();
    let words = free_words(max_len);
    let mut seen = std::collections::HashSet::new();
    let mut total = 0;
    for w in &words {
        let free_pose = GroupWord::new(w, Perm4::identity()).map(|g| table.word_pose(&g)).expect("reduced");
        for s in Perm4::all() {
            seen.insert(free_pose.compose(&table.symmetries[&s]).linear);
            total += 1;
        }
    }
    (seen.len(), total)
}
