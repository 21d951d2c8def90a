//! Verification batteries, one per model, with a serializable report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::{self, build_diagram, EdgeKind, Node};
use crate::error::{Error, Result};
use crate::game::{self, GameState, MoveTable, PoseTable};
use crate::group::{self, normal_forms, FamilyParams, GroupWord, LatticeRep};
use crate::lattice::{self, IntegralBasis, LatticeIsometry, LatticeVector, Pair};
use crate::linalg;
use crate::padic::DEFAULT_PRECISION;
use crate::perm::{Perm4, Perm5};
use crate::quaternion::{self, conjugation_rotation, RationalQuaternion, Rotation3, VERTICES};
use crate::rational::{frac, int, Rational};
use crate::tree::{self, TreeRep, TreeVertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to the given parameters.
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub runtime_ms: u64,
}

impl VerifyReport {
    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Lattice,
    Coxeter,
    Group,
    Quaternion,
    Tree,
    Game,
}

impl Suite {
    pub const MODELS: [Suite; 6] =
        [Suite::Lattice, Suite::Coxeter, Suite::Group, Suite::Quaternion, Suite::Tree, Suite::Game];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Lattice => "lattice",
            Suite::Coxeter => "coxeter",
            Suite::Group => "group",
            Suite::Quaternion => "quaternion",
            Suite::Tree => "tree",
            Suite::Game => "game",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::MODELS)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub params: FamilyParams,
    pub radius: u32,
    pub precision: u32,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { params: FamilyParams::default(), radius: 4, precision: DEFAULT_PRECISION, seed: 0 }
    }
}

type Outcome = Result<(bool, String)>;

struct Battery {
    checks: Vec<Check>,
}

impl Battery {
    fn new() -> Self {
        Battery { checks: Vec::new() }
    }

    /// Records a check. Precision exhaustion aborts the suite so the caller can retry.
    fn run(&mut self, name: &str, f: impl FnOnce() -> Outcome) -> Result<()> {
        let (status, details) = match f() {
            Ok((ok, d)) => (if ok { Status::Pass } else { Status::Fail }, d),
            Err(e @ Error::PrecisionExhausted(_)) => return Err(e),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        self.checks.push(Check { name: name.into(), status, details });
        Ok(())
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.checks.push(Check { name: name.into(), status: Status::Skip, details: why.into() });
    }
}

/// Runs one suite; `All` runs every model suite in parallel and prefixes check names.
pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<VerifyReport> {
    let start = Instant::now();
    let checks = match suite {
        Suite::All => {
            let parts: Vec<Result<Vec<Check>>> = Suite::MODELS.par_iter().map(|s| run_checks(*s, opts)).collect();
            let mut all = Vec::new();
            for (s, part) in Suite::MODELS.iter().zip(parts) {
                all.extend(part?.into_iter().map(|mut c| {
                    c.name = format!("{s}/{}", c.name);
                    c
                }));
            }
            all
        }
        s => run_checks(s, opts)?,
    };
    Ok(VerifyReport { suite: suite.name().into(), checks, runtime_ms: start.elapsed().as_millis() as u64 })
}

fn run_checks(suite: Suite, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut b = Battery::new();
    match suite {
        Suite::All => unreachable!("handled by run"),
        Suite::Lattice => lattice_suite(&mut b)?,
        Suite::Coxeter => coxeter_suite(&mut b)?,
        Suite::Group => group_suite(&mut b, opts)?,
        Suite::Quaternion => quaternion_suite(&mut b)?,
        Suite::Tree => tree_suite(&mut b, opts)?,
        Suite::Game => game_suite(&mut b, opts)?,
    }
    Ok(b.checks)
}

fn roots() -> Vec<(String, LatticeVector)> {
    Node::all().map(|n| (n.to_string(), n.root())).collect()
}

/// Closed forms for the pairings among the twenty distinguished roots.
pub fn closed_form_pairing(x: Node, y: Node) -> i128 {
    let k = x.pair().overlap(&y.pair());
    match (x.is_u(), y.is_u()) {
        (true, true) => [1, 0, -2][k],
        (false, false) => [0, 1, -2][k],
        _ => [0, 0, 2][k],
    }
}

fn lattice_suite(b: &mut Battery) -> Result<()> {
    b.run("gram-table-400-entries", || {
        let mut bad = Vec::new();
        for x in Node::all() {
            for y in Node::all() {
                if lattice::inner_product(&x.root(), &y.root()) != int(closed_form_pairing(x, y)) {
                    bad.push(format!("{x}·{y}"));
                }
            }
        }
        Ok((bad.is_empty(), format!("400 entries, {} mismatches {bad:?}", bad.len())))
    })?;
    b.run("roots-norm-minus-two", || {
        Ok((roots().iter().all(|(_, r)| r.norm() == int(-2)), "20 roots".into()))
    })?;
    b.run("integral-basis-even-unimodular", || {
        let g = IntegralBasis::new().gram();
        let even = (0..10).all(|i| g[i][i].is_integer() && (g[i][i].to_integer() % 2 == 0));
        let integral = g.iter().flatten().all(|x| x.is_integer());
        let det = linalg::det(&g);
        let sig = linalg::signature(&g);
        let ok = even && integral && det == int(-1) && (sig.positive, sig.negative, sig.zero) == (1, 9, 0);
        Ok((ok, format!("det {det}, signature ({},{})", sig.positive, sig.negative)))
    })?;
    b.run("delta-pairings", || {
        let d = lattice::delta();
        let ok = d.norm() == int(10)
            && Pair::all().all(|p| d.dot(&lattice::u(p)) == int(1) && d.dot(&lattice::alpha(p)) == int(2));
        Ok((ok, format!("Δ² = {}", d.norm())))
    })?;
    b.run("nu-isotropic", || {
        let mut n = 0;
        for a in 0..5 {
            for c in 0..5 {
                if a != c {
                    if !lattice::nu(a, c)?.norm().is_zero() {
                        return Ok((false, format!("ν({a},{c}) not isotropic")));
                    }
                    n += 1;
                }
            }
        }
        Ok((true, format!("{n} ordered pairs")))
    })?;
    b.run("cusp-half-identity", || {
        let al = |a, c| Pair::new(a, c).map(lattice::alpha);
        let lhs = &(&al(0, 1)? + &al(0, 2)?) + &al(0, 3)?;
        Ok((lhs == lattice::nu(4, 0)?.scale(frac(1, 2)), "α01+α02+α03 = ν(4,0)/2".into()))
    })?;
    b.run("reflections-isometric-involutive", || {
        let probe: Vec<LatticeVector> = IntegralBasis::new().vectors().to_vec();
        for (name, r) in roots() {
            let m = LatticeIsometry::reflection(&r)?;
            if !m.preserves_form() || !m.compose(&m).is_identity() {
                return Ok((false, format!("reflection in {name}")));
            }
            for v in &probe {
                if lattice::reflect_in_root(&r, &lattice::reflect_in_root(&r, v)?)? != *v {
                    return Ok((false, format!("reflect_in_root({name}) not involutive")));
                }
            }
        }
        Ok((true, "20 reflections".into()))
    })?;
    Ok(())
}

fn coxeter_suite(b: &mut Battery) -> Result<()> {
    let d = build_diagram();
    b.run("petersen-subgraph", || {
        let us: Vec<Node> = Node::all().filter(Node::is_u).collect();
        let sub = d.restrict(&us);
        let cubic = us.iter().all(|n| sub.degree(*n) == 3);
        let girth = sub.girth();
        let perms = Perm5::all();
        let preserved = perms.iter().all(|s| {
            sub.edge_list().iter().all(|(x, y, k)| sub.edge(x.permuted(s), y.permuted(s)).ok() == Some(*k))
        });
        let u01 = Node::U(Pair::new(0, 1)?);
        let orbit: std::collections::HashSet<Node> = perms.iter().map(|s| u01.permuted(s)).collect();
        let ok = cubic && girth == Some(5) && preserved && orbit.len() == 10;
        Ok((ok, format!("3-regular {cubic}, girth {girth:?}, vertex-transitive {}", orbit.len() == 10)))
    })?;
    b.run("double-edges", || {
        let doubles: Vec<_> = d.edge_list().into_iter().filter(|e| e.2 == EdgeKind::Double).collect();
        let ok = doubles.len() == 10 && doubles.iter().all(|(x, y, _)| x.pair() == y.pair() && x.is_u() != y.is_u());
        Ok((ok, format!("{} double edges", doubles.len())))
    })?;
    b.run("parity-welldefined", || Ok((coxeter::verify_parity_welldefined(&d), String::new())))?;
    let orbits = coxeter::classify_cusps();
    b.run("cusp-orbit-types", || {
        let mut got: Vec<(String, usize)> = orbits.iter().map(|o| (o.orbit_type.clone(), o.cusps.len())).collect();
        got.sort();
        let mut want: Vec<(String, usize)> =
            [("Ã₅Ã₁Ã₂", 10), ("Ẽ₆Ã₂", 20), ("D\u{303}₅Ã₃", 15), ("Ã₄Ã₄", 12)]
                .iter()
                .map(|(s, n)| (s.to_string(), *n))
                .collect();
        want.sort();
        Ok((got == want, format!("{got:?}")))
    })?;
    b.run("cusps-parabolic-rank-8", || {
        let all = orbits.iter().flat_map(|o| &o.cusps);
        let bad = all.clone().filter(|c| coxeter::parabolic_profile(&c.nodes) != (8, true)).count();
        Ok((bad == 0, format!("{} cusps, {bad} failing", all.count())))
    })?;
    b.run("e6-nu-orthogonal", || {
        let e6: Vec<Vec<Node>> = orbits
            .iter()
            .filter(|o| o.orbit_type.starts_with('Ẽ'))
            .flat_map(|o| o.cusps.iter().map(|c| sorted(&c.nodes)))
            .collect();
        let mut matched = 0;
        for a in 0..5 {
            for c in 0..5 {
                if a == c {
                    continue;
                }
                let mut nodes = coxeter::e6_nodes(a, c)?;
                nodes.extend(coxeter::e6_partner_nodes(a, c)?);
                let v = lattice::nu(a, c)?;
                if !e6.contains(&sorted(&nodes)) || !v.norm().is_zero() || nodes.iter().any(|n| !v.dot(&n.root()).is_zero()) {
                    return Ok((false, format!("ν({a},{c})")));
                }
                matched += 1;
            }
        }
        Ok((matched == 20 && e6.len() == 20, format!("{matched} ν matched")))
    })?;
    b.run("cusps-s5-stable", || {
        let mut key: std::collections::HashMap<Vec<Node>, usize> = std::collections::HashMap::new();
        for o in &orbits {
            for c in &o.cusps {
                key.insert(sorted(&c.nodes), o.orbit_id);
            }
        }
        let ok = Perm5::all().iter().all(|s| {
            key.iter().all(|(nodes, id)| {
                let img: Vec<Node> = nodes.iter().map(|n| n.permuted(s)).collect();
                key.get(&sorted(&img)) == Some(id)
            })
        });
        Ok((ok, format!("{} cusps under 120 relabelings", key.len())))
    })?;
    Ok(())
}

fn sorted(nodes: &[Node]) -> Vec<Node> {
    let mut v = nodes.to_vec();
    v.sort();
    v
}

/// `g₄₁(α₁₂) + g₄₂(α₂₃) + g₄₃(α₃₁)`, the three facets of `Q` at `ν₀,₄`.
pub fn cusp_facet_sum(params: &FamilyParams) -> Result<LatticeVector> {
    let mut sum = LatticeVector::zero();
    for (a, c) in [(1, 2), (2, 3), (3, 1)] {
        let g = group::generator_matrix(4, a, params)?;
        sum = &sum + &g.apply(&lattice::alpha(Pair::new(a, c)?));
    }
    Ok(sum)
}

/// Agreement of the three models on which normal forms act trivially.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub words: usize,
    pub trivial_lattice: usize,
    pub trivial_rotation: usize,
    pub trivial_tree: usize,
    pub agree: bool,
}

/// For every normal form of free length `≤ max_len`, compares triviality on Λ,
/// in SO(3), and on the radius-2 ball of the tree.
pub fn cross_model_kernel(params: &FamilyParams, max_len: usize, precision: u32) -> Result<KernelReport> {
    let rep = LatticeRep::new(params)?;
    let tree = TreeRep::new(precision)?;
    let words = normal_forms(max_len);
    let results: Vec<Result<(bool, bool, bool)>> = words
        .par_iter()
        .map(|w| {
            let lat = rep.image(w).is_identity();
            let rot = tree.quaternions.rotation(w).is_identity();
            let tr = tree.acts_trivially(w, 2)?;
            Ok((lat, rot, tr))
        })
        .collect();
    let mut r = KernelReport { words: words.len(), trivial_lattice: 0, trivial_rotation: 0, trivial_tree: 0, agree: true };
    for x in results {
        let (l, o, t) = x?;
        r.trivial_lattice += usize::from(l);
        r.trivial_rotation += usize::from(o);
        r.trivial_tree += usize::from(t);
        r.agree &= l == o && o == t;
    }
    Ok(r)
}

/// Random reduced free word of length `n`.
pub fn random_free_word(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut w: Vec<usize> = Vec::with_capacity(n);
    while w.len() < n {
        let a = rng.random_range(0..4);
        if w.last() != Some(&a) {
            w.push(a);
        }
    }
    w
}

/// `reduce_to_chamber(g(Δ))` returns `(Δ, g⁻¹)` for `count` seeded random free words `g`.
pub fn nef_scramble_check(params: &FamilyParams, count: usize, max_len: usize, seed: u64) -> Result<(bool, String)> {
    let rep = LatticeRep::new(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta = lattice::delta();
    for i in 0..count {
        let n = rng.random_range(0..=max_len);
        let g = GroupWord::new(&random_free_word(&mut rng, n), Perm4::identity())?;
        let v = rep.image(&g).apply(&delta);
        let (r, w) = group::reduce_to_chamber(&v, params)?;
        if r != delta || w != g.inverse() {
            return Ok((false, format!("scramble {i} ({g}) recovered {w}")));
        }
    }
    Ok((true, format!("{count} scrambles of length ≤ {max_len}")))
}

fn group_suite(b: &mut Battery, opts: &VerifyOptions) -> Result<()> {
    let params = &opts.params;
    b.run("generators-involutive-isometries", || {
        let basis = IntegralBasis::new();
        for p in Pair::all() {
            let g = group::generator_matrix(p.lo(), p.hi(), params)?;
            if !g.compose(&g).is_identity() || !g.preserves_form() || !g.preserves_lattice(&basis) {
                return Ok((false, format!("g{p}")));
            }
        }
        Ok((true, "10 generators".into()))
    })?;
    b.run("shimada-relations", || Ok((group::verify_shimada_relations(params), format!("λ = {params}"))))?;
    b.run("shimada-relations-generic", || {
        let generic = FamilyParams::new([1, 2, 3, 4, 5].map(int))?;
        Ok((group::verify_shimada_relations(&generic), "λ = (1,2,3,4,5)".into()))
    })?;
    if (1..4).any(|a| params.same(a, 4)) {
        b.skip("cusp-facet-identity", "needs λ₄ different from λ₁, λ₂, λ₃");
    } else {
        b.run("cusp-facet-identity", || {
            let v = cusp_facet_sum(params)?;
            Ok((v == lattice::nu(0, 4)?, "g41(α12)+g42(α23)+g43(α31) = ν(0,4)".into()))
        })?;
    }
    b.run("new-nodes", || {
        let at16 = group::new_nodes(frac(1, 16))?;
        let at4 = group::new_nodes(frac(1, 4))?;
        let ok = at16 == vec![[1, 1, 1, 1, -4].map(int)] && at4.len() == 4;
        Ok((ok, format!("t=1/16: {} node(s), t=1/4: {} node(s)", at16.len(), at4.len())))
    })?;
    if params.check_family_shape().is_err() {
        for name in [
            "homomorphism-length-4",
            "injectivity-length-6",
            "nef-examples",
            "nef-scrambles",
            "u01-alpha01-separated",
            "cross-model-kernel-length-5",
        ] {
            b.skip(name, "needs λ₀ = λ₁ = λ₂ = λ₃ ≠ λ₄");
        }
        return Ok(());
    }
    b.run("homomorphism-length-4", || {
        let n = group::check_homomorphism(params, 4)?;
        Ok((true, format!("{n} products")))
    })?;
    b.run("injectivity-length-6", || {
        let (distinct, total) = group::count_distinct_images(params, 6)?;
        Ok((distinct == total, format!("{distinct} distinct images of {total} normal forms")))
    })?;
    b.run("nef-examples", || {
        let u01 = lattice::u(Pair::new(0, 1)?);
        let delta_nef = group::is_nef(&lattice::delta(), params)?;
        let u_nef = group::is_nef(&u01, params)?;
        let mut f_nef = true;
        for p in Pair::all() {
            f_nef &= group::is_nef(&lattice::f(p), params)?;
        }
        Ok((delta_nef && !u_nef && f_nef, format!("Δ {delta_nef}, U01 {u_nef}, all f {f_nef}")))
    })?;
    b.run("nef-scrambles", || nef_scramble_check(params, 200, 12, opts.seed))?;
    b.run("u01-alpha01-separated", || {
        Ok((group::parity_separates_u_alpha(params, 6)?, "normal forms of length ≤ 6".into()))
    })?;
    b.run("cross-model-kernel-length-5", || {
        let r = cross_model_kernel(params, 5, opts.precision)?;
        let ok = r.agree && r.trivial_lattice == 1;
        Ok((ok, format!("{} words, trivial in Λ/SO(3)/tree: {}/{}/{}", r.words, r.trivial_lattice, r.trivial_rotation, r.trivial_tree)))
    })?;
    Ok(())
}

fn quaternion_suite(b: &mut Battery) -> Result<()> {
    b.run("norm-i+j+k", || {
        let n = RationalQuaternion::from_ints(0, 1, 1, 1).norm();
        Ok((n == int(3), format!("{n}")))
    })?;
    b.run("edge-quotient", || {
        let q = RationalQuaternion::from_ints(0, 0, 1, -1) * RationalQuaternion::from_ints(0, 1, -1, 0).inverse()?;
        let h = frac(1, 2);
        Ok((q == RationalQuaternion::new(-h, h, h, h), format!("{q}")))
    })?;
    b.run("edge-rotations-s4", || {
        let gens: Vec<Rotation3> =
            quaternion::edge_quaternions().iter().map(conjugation_rotation).collect::<Result<_>>()?;
        let group = quaternion::closure(&gens, 1000)?;
        let perms: std::collections::HashSet<Perm4> =
            group.iter().filter_map(quaternion::diagonal_permutation).collect();
        let ok = group.len() == 24 && perms.len() == 24 && group.iter().all(|r| r.det() == int(1));
        Ok((ok, format!("order {}, {} diagonal permutations", group.len(), perms.len())))
    })?;
    b.run("rotation-homomorphism", || {
        let units = quaternion::binary_tetrahedral();
        let ok = units.iter().all(|p| {
            units.iter().all(|q| {
                let lhs = conjugation_rotation(&(*p * *q)).expect("unit");
                lhs == conjugation_rotation(p).expect("unit").mul(&conjugation_rotation(q).expect("unit"))
            })
        });
        Ok((ok, "576 products".into()))
    })?;
    b.run("sign-insensitive", || {
        let mut qs = quaternion::binary_tetrahedral();
        qs.extend(quaternion::edge_quaternions());
        let ok = qs.iter().all(|q| {
            let r = conjugation_rotation(q).expect("nonzero");
            r == conjugation_rotation(&-*q).expect("nonzero") && r == conjugation_rotation(&q.scale(int(3))).expect("nonzero")
        });
        Ok((ok, String::new()))
    })?;
    b.run("facet-reflections", || {
        let verts: Vec<[Rational; 3]> = VERTICES.iter().map(|v| v.map(int)).collect();
        for a in 0..4 {
            let r = quaternion::facet_reflection(a)?;
            let c = frac(2, 3);
            let image = |x: &[Rational; 3]| -> [Rational; 3] {
                let l = r.apply(x);
                std::array::from_fn(|i| l[i] - c * verts[a][i])
            };
            let shared = (0..4).filter(|&b| b != a).all(|b| image(&verts[b]) == verts[b]);
            let opposite = image(&verts[a]);
            let moved = opposite.iter().zip(&verts[a]).all(|(x, y)| *x == *y * frac(-5, 3));
            if r.det() != int(-1) || !shared || !moved {
                return Ok((false, format!("facet {a}")));
            }
        }
        Ok((true, "4 facets".into()))
    })?;
    b.run("equivariance", || Ok((quaternion::verify_equivariance(), String::new())))?;
    b.run("binary-tetrahedral-sl2f3", || {
        let r = tree::sl2f3_check(&tree::Splitting::new(DEFAULT_PRECISION)?)?;
        Ok((r.passed(), format!("image {} of |SL₂(𝔽₃)| = {}", r.image_size, r.group_order)))
    })?;
    Ok(())
}

fn tree_suite(b: &mut Battery, opts: &VerifyOptions) -> Result<()> {
    let n = opts.precision;
    let radius = opts.radius;
    let rep = TreeRep::new(n)?;
    let s = &rep.splitting;
    b.run("ball-sizes", || {
        let sizes: Vec<usize> = (0..=radius).map(|r| tree::ball(r).len()).collect();
        let want: Vec<usize> = (0..=radius).map(|r| 2 * 3usize.pow(r) - 1).collect();
        Ok((sizes == want, format!("{sizes:?}")))
    })?;
    b.run("simple-transitivity", || {
        let r = tree::verify_simple_transitivity(radius, &rep)?;
        let ok = r.bijection && r.length_equals_distance && r.bipartition;
        Ok((ok, format!("{} words, counts {:?}", r.total, r.counts)))
    })?;
    b.run("det-split-i+j+k", || {
        let d = s.split(&RationalQuaternion::from_ints(0, 1, 1, 1)).det();
        let ok = d.valuation() == Some(1) && d.unit_part().residue(8)? == 1u32.into();
        Ok((ok, format!("valuation {:?}", d.valuation())))
    })?;
    b.run("binary-tetrahedral-fixes-only-base", || {
        let units = quaternion::binary_tetrahedral();
        let mut common: Option<Vec<TreeVertex>> = None;
        for q in &units {
            let f = tree::fixed_vertices(&s.split(q), 2)?;
            common = Some(match common {
                None => f,
                Some(c) => c.into_iter().filter(|v| f.contains(v)).collect(),
            });
        }
        let common = common.unwrap_or_default();
        Ok((common == vec![TreeVertex::base()], format!("common fixed set {common:?}")))
    })?;
    b.run("order-3-fixes-edge", || {
        // (±1±i±j±k)/2 have order 3 modulo ±1
        let order3: Vec<RationalQuaternion> =
            quaternion::binary_tetrahedral().into_iter().filter(|q| q.w.abs() == frac(1, 2)).collect();
        for q in &order3 {
            let f = tree::fixed_vertices(&s.split(q), 4)?;
            let ok = f.len() == 2 && f.contains(&TreeVertex::base()) && f.iter().any(|v| v.distance() == 1);
            if !ok {
                return Ok((false, format!("{q} fixes {f:?}")));
            }
        }
        Ok((order3.len() == 16, format!("{} elements", order3.len())))
    })?;
    b.run("gbar-fix-nothing", || {
        for a in 0..4 {
            let g = rep.matrix(&GroupWord::letter(a)?);
            let fixed = tree::fixed_vertices(&g, 3)?;
            let flips = tree::ball(3).iter().all(|v| tree::act(&g, v).map(|w| w.parity() != v.parity()).unwrap_or(false));
            if !fixed.is_empty() || !flips {
                return Ok((false, format!("x{a}")));
            }
        }
        Ok((true, "radius 3".into()))
    })?;
    b.run("stabilizer-order", || {
        let r = tree::stabilizer(&rep)?;
        let ok = r.order == 24 && r.unit_determinants && r.no_letter_fixes_base;
        Ok((ok, format!("order {}", r.order)))
    })?;
    b.run("sl2-z9-rigidity", || {
        let r = tree::verify_distance2_rigidity();
        Ok((r.passed(), format!("{} order-3 elements in the stabilizer, {} in SL₂(ℤ/9) preserving a line", r.order3_count, r.brute_force_count)))
    })?;
    b.run("precision-monotone", || {
        let finer = TreeRep::new(n + 8)?;
        for w in normal_forms(3) {
            if rep.vertex(&w)? != finer.vertex(&w)? {
                return Ok((false, format!("{w}")));
            }
        }
        Ok((true, format!("precision {n} vs {}", n + 8)))
    })?;
    Ok(())
}

/// `solve(scramble(n))` is the reversed reduced word and returns to the reference pose.
pub fn game_scramble_check(count: usize, max_len: usize, seed: u64) -> (bool, String) {
    let table = MoveTable::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let n = rng.random_range(0..=max_len);
        let s = game::scramble(n, rng.random(), &table);
        let moves = game::solve(&s);
        let mut expect = s.history.clone();
        expect.reverse();
        let end = moves.iter().fold(s.clone(), |st, m| game::apply_move(&st, *m, &table));
        if moves != expect || moves.len() != n || !end.is_solved() || !end.word.is_identity() {
            return (false, format!("scramble {i} of length {n}"));
        }
    }
    (true, format!("{count} scrambles of length ≤ {max_len}"))
}

fn game_suite(b: &mut Battery, opts: &VerifyOptions) -> Result<()> {
    let table = MoveTable::new();
    b.run("facet-reflections", || {
        let ok = (0..4).all(|a| {
            let p = table.pose(&game::Move::Facet(a));
            p.det() == int(-1) && p.compose(&p).is_identity() && p.is_valid()
        });
        Ok((ok, "det −1, involutive".into()))
    })?;
    b.run("symmetry-moves", || {
        let ok = Perm4::all().iter().all(|s| {
            let p = table.pose(&game::Move::Symmetry(*s));
            p.is_valid() && p.det() == int(s.sign() as i128)
        });
        Ok((ok, "24 symmetries, det = sign".into()))
    })?;
    b.run("word-pose-functorial", || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let perms = Perm4::all();
        for _ in 0..200 {
            let n = rng.random_range(0..=20);
            let moves: Vec<game::Move> = (0..n)
                .map(|_| {
                    if rng.random_range(0..5) == 0 {
                        game::Move::Symmetry(perms[rng.random_range(0..24)])
                    } else {
                        game::Move::Facet(rng.random_range(0..4))
                    }
                })
                .collect();
            let s = GameState::from_moves(&moves, &table);
            if s.pose != table.word_pose(&s.word) {
                return Ok((false, format!("{moves:?}")));
            }
        }
        Ok((true, "200 random histories".into()))
    })?;
    b.run("solve-scrambles", || Ok(game_scramble_check(100, 20, opts.seed)))?;
    b.run("pose-table-length-5", || {
        let t = PoseTable::new(5)?;
        Ok((t.collisions() == 0 && t.len() == 485, format!("{} poses, {} collisions", t.len(), t.collisions())))
    })?;
    b.run("linear-parts-injective-length-6", || {
        let (distinct, total) = game::count_linear_parts(6);
        Ok((distinct == total, format!("{distinct} of {total}")))
    })?;
    Ok(())
}
