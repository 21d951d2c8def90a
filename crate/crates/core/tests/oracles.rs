//! Independent recomputations of derived values, frozen against the library.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use hessian_core::coxeter::{classify_cusps, node_gram, Node};
use hessian_core::game::{count_linear_parts, PoseTable};
use hessian_core::group::{check_homomorphism, count_distinct_images, new_nodes, FamilyParams};
use hessian_core::lattice::{self, Pair};
use hessian_core::linalg;
use hessian_core::rational::{frac, int};
use hessian_core::tree::{ball_layers, sl2_order, Splitting, TreeVertex};
use num_bigint::BigUint;

const PAIRS: [(usize, usize); 10] = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn overlap(p: (usize, usize), q: (usize, usize)) -> usize {
    [p.0, p.1].iter().filter(|x| **x == q.0 || **x == q.1).count()
}

/// Doubled U-coordinates of U_p, and of α_p = f_p − U_p from the definition of f_p.
fn doubled(is_u: bool, p: (usize, usize)) -> [i64; 10] {
    let mut v = [0i64; 10];
    let i = PAIRS.iter().position(|q| *q == p).unwrap();
    if is_u {
        v[i] = 2;
        return v;
    }
    for (j, q) in PAIRS.iter().enumerate() {
        if overlap(p, *q) == 1 {
            v[j] += 1;
        }
    }
    v[i] -= 2;
    v
}

fn oracle_dot(x: &[i64; 10], y: &[i64; 10]) -> i64 {
    let mut s = 0;
    for (i, p) in PAIRS.iter().enumerate() {
        for (j, q) in PAIRS.iter().enumerate() {
            let g = match overlap(*p, *q) {
                2 => -2,
                0 => 1,
                _ => 0,
            };
            s += x[i] * y[j] * g;
        }
    }
    assert_eq!(s % 4, 0);
    s / 4
}

#[test]
fn gram_table_matches_definitions() {
    let mut hist: BTreeMap<i64, usize> = BTreeMap::new();
    for x in Node::all() {
        for y in Node::all() {
            let p = x.pair();
            let q = y.pair();
            let ox = doubled(x.is_u(), (p.lo(), p.hi()));
            let oy = doubled(y.is_u(), (q.lo(), q.hi()));
            let want = oracle_dot(&ox, &oy);
            assert_eq!(lattice::inner_product(&x.root(), &y.root()), int(want as i128), "{x}·{y}");
            *hist.entry(want).or_default() += 1;
        }
    }
    assert_eq!(hist, BTreeMap::from([(-2, 20), (0, 270), (1, 90), (2, 20)]));
}

#[test]
fn delta_norm_from_definition() {
    let d = [2i64; 10];
    assert_eq!(oracle_dot(&d, &d), 10);
    assert_eq!(lattice::delta().norm(), int(10));
}

/// Cusps as maximal node sets whose Gram matrix is negative semidefinite of rank 8
/// with one null direction per connected component, found by brute-force subset search.
fn oracle_cusps() -> Vec<BTreeSet<usize>> {
    let nodes: Vec<Node> = Node::all().collect();
    let nsd = |set: &[usize]| {
        let sub: Vec<Node> = set.iter().map(|&i| nodes[i]).collect();
        linalg::signature(&node_gram(&sub)).positive == 0
    };
    let components = |set: &[usize]| {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &s in set {
            if !seen.insert(s) {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in set {
                    if !seen.contains(&y) && !nodes[x].root().dot(&nodes[y].root()).eq(&int(0)) {
                        seen.insert(y);
                        stack.push(y);
                    }
                }
            }
        }
        count
    };
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(set) = stack.pop() {
        if !set.is_empty() {
            let sub: Vec<Node> = set.iter().map(|&i| nodes[i]).collect();
            let sig = linalg::signature(&node_gram(&sub));
            if sig.negative == 8 && sig.zero == components(&set) {
                out.push(set.iter().copied().collect());
            }
        }
        let start = set.last().map_or(0, |l| l + 1);
        for j in start..nodes.len() {
            let mut next = set.clone();
            next.push(j);
            if nsd(&next) {
                stack.push(next);
            }
        }
    }
    out
}

#[test]
fn cusp_classification_matches_subset_search() {
    let oracle = oracle_cusps();
    assert_eq!(oracle.len(), 57);
    let mut shapes: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let library: BTreeSet<BTreeSet<usize>> = classify_cusps()
        .iter()
        .flat_map(|o| o.cusps.iter())
        .map(|c| {
            let mut sizes: Vec<usize> = c.components.iter().map(|k| k.nodes.len()).collect();
            sizes.sort();
            *shapes.entry(sizes).or_default() += 1;
            c.nodes.iter().map(|n| n.index()).collect()
        })
        .collect();
    assert_eq!(library, oracle.into_iter().collect());
    // Ã₅Ã₁Ã₂, Ẽ₆Ã₂, D̃₅Ã₃, Ã₄Ã₄ by component node counts
    assert_eq!(
        shapes,
        BTreeMap::from([(vec![2, 3, 6], 10), (vec![3, 7], 20), (vec![4, 6], 15), (vec![5, 5], 12)])
    );
}

#[test]
fn hensel_root_by_brute_force() {
    let s = Splitting::new(48).unwrap();
    for k in 1..=8u32 {
        let m = 3u64.pow(k);
        let roots: Vec<u64> = (0..m).filter(|x| (x * x + 2) % m == 0 && x % 3 == 1).collect();
        assert_eq!(roots.len(), 1);
        assert_eq!(s.v().residue(k).unwrap(), BigUint::from(roots[0]));
    }
    assert_eq!(s.v().residue(2).unwrap(), BigUint::from(4u32));
}

#[test]
fn sphere_sizes_from_canonical_triples() {
    // primitive triples (a, b, c) with a + b = d, c < 3^b, and 3 ∤ c when a, b > 0
    let count = |d: u32| -> usize {
        (0..=d)
            .map(|a| {
                let b = d - a;
                (0..3u128.pow(b)).filter(|c| a == 0 || b == 0 || c % 3 != 0).count()
            })
            .sum()
    };
    let layers = ball_layers(5);
    for (d, layer) in layers.iter().enumerate() {
        assert_eq!(layer.len(), count(d as u32));
        let all_primitive = layer.iter().all(|v| TreeVertex::new(v.a, v.b, v.c).is_ok());
        assert!(all_primitive);
    }
    let cumulative: Vec<usize> = layers.iter().scan(0, |s, l| { *s += l.len(); Some(*s) }).collect();
    assert_eq!(cumulative, vec![1, 5, 17, 53, 161, 485]);
}

#[test]
fn sl2_orders_from_formula() {
    // |SL₂(ℤ/p^k)| = p^{3k}(1 − p⁻²)
    assert_eq!(sl2_order(3), 27 * 8 / 9);
    assert_eq!(sl2_order(9), 729 * 8 / 9);
}

fn reduced_count(k: usize) -> usize {
    if k == 0 { 1 } else { 4 * 3usize.pow(k as u32 - 1) }
}

#[test]
fn homomorphism_pair_count() {
    let n: usize = (0..=4)
        .flat_map(|i| (0..=4 - i).map(move |j| reduced_count(i) * reduced_count(j)))
        .sum();
    assert_eq!(n * 576, 498_240);
    assert_eq!(check_homomorphism(&FamilyParams::default(), 4).unwrap(), 498_240);
}

#[test]
fn injectivity_count() {
    let words: usize = (0..=6).map(reduced_count).sum();
    assert_eq!(words * 24, 34_968);
    assert_eq!(count_distinct_images(&FamilyParams::default(), 6).unwrap(), (34_968, 34_968));
    assert_eq!(count_linear_parts(6), (34_968, 34_968));
}

#[test]
fn pose_table_size() {
    let words: usize = (0..=5).map(reduced_count).sum();
    let t = PoseTable::new(5).unwrap();
    assert_eq!(t.len(), words);
    assert_eq!(t.collisions(), 0);
}

/// Solutions of Σy = 0, Σ 1/(λ y) = 0 over a small grid of rationals with y₀ = 1.
fn oracle_nodes(t: (i128, i128)) -> BTreeSet<[(i128, i128); 5]> {
    let grid: Vec<(i128, i128)> = (-8..=8)
        .flat_map(|p| (1..=4).map(move |q| (p, q)))
        .filter(|&(p, q)| p != 0 && num_integer::gcd(p, q) == 1)
        .collect();
    let lam = |a: usize| if a == 4 { frac(t.0, t.1) } else { int(1) };
    let mut out = BTreeSet::new();
    let ones: Vec<(i128, i128)> = vec![(1, 1), (-1, 1)];
    for y1 in &ones {
        for y2 in &ones {
            for y3 in &ones {
                for y4 in &grid {
                    let y = [(1, 1), *y1, *y2, *y3, *y4];
                    let q: Vec<_> = y.iter().map(|&(p, d)| frac(p, d)).collect();
                    // each y_a² λ_a is the same constant
                    let on_quadric = (0..5).all(|a| q[a] * q[a] * lam(a) == int(1));
                    let sum: hessian_core::Rational = q.iter().sum();
                    let inv: hessian_core::Rational = (0..5).map(|a| int(1) / (lam(a) * q[a])).sum();
                    if on_quadric && sum == int(0) && inv == int(0) {
                        out.insert(y);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn new_nodes_match_grid_search() {
    for t in [(1, 16), (1, 4), (1, 9), (1, 1)] {
        let lib: BTreeSet<Vec<hessian_core::Rational>> =
            new_nodes(frac(t.0, t.1)).unwrap().into_iter().map(|y| y.to_vec()).collect();
        let oracle: BTreeSet<Vec<hessian_core::Rational>> = oracle_nodes(t)
            .into_iter()
            .map(|y| y.iter().map(|&(p, q)| frac(p, q)).collect())
            .collect();
        assert_eq!(lib, oracle, "t = {}/{}", t.0, t.1);
    }
    let at16: Vec<_> = new_nodes(frac(1, 16)).unwrap();
    assert_eq!(at16, vec![[1, 1, 1, 1, -4].map(int)]);
    let at4: BTreeSet<[hessian_core::Rational; 5]> = new_nodes(frac(1, 4)).unwrap().into_iter().collect();
    let want: BTreeSet<_> = [[1, 1, 1, -1, -2], [1, 1, -1, 1, -2], [1, -1, 1, 1, -2], [1, -1, -1, -1, 2]]
        .map(|y| y.map(int))
        .into_iter()
        .collect();
    assert_eq!(at4, want);
}

#[test]
fn literal_six_alpha_sum_is_not_a_cusp_vector() {
    let mut sum = lattice::LatticeVector::zero();
    for (a, b) in [(1, 4), (1, 2), (2, 4), (2, 3), (3, 4), (1, 3)] {
        sum = &sum + &lattice::alpha(Pair::new(a, b).unwrap());
    }
    let nus: HashMap<(usize, usize), lattice::LatticeVector> = (0..5)
        .flat_map(|a| (0..5).filter(move |b| *b != a).map(move |b| ((a, b), lattice::nu(a, b).unwrap())))
        .collect();
    assert!(nus.values().all(|v| *v != sum));
    let facets = hessian_core::verify::cusp_facet_sum(&FamilyParams::default()).unwrap();
    assert_eq!(facets, nus[&(0, 4)]);
}
