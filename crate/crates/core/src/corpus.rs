//! Seeded random instances: small groupoids, functors between them,
//! local systems with orthogonal or general transports, natural maps,
//! kernels and composable kernel pairs.
//!
//! Every generator draws only from the supplied RNG, so a fixed seed gives
//! a fixed corpus.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::functor::{iso_comma, GroupoidFunctor};
use crate::group::Group;
use crate::groupoid::FiniteGroupoid;
use crate::linear::{natural_map_basis, pullback, LocalSystem, SystemMap};
use crate::matrix::{int, ratio, Matrix, Rational};
use crate::quantize::{Correspondence, PrequantumKernel};

pub const MAX_OBJECTS: usize = 12;
pub const MAX_TOTAL_DIM: usize = 12;
const MAX_APEX_OBJECTS: usize = 24;

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = random_rational(rng);
        }
    }
    m
}

pub fn random_group<R: Rng>(rng: &mut R) -> Group {
    match rng.gen_range(0..5) {
        0 => Group::trivial(),
        1 => Group::cyclic(2),
        2 => Group::cyclic(3),
        3 => Group::cyclic(4),
        _ => Group::symmetric(3),
    }
}

/// Lexicographic permutations of `0..3`, matching `Group::symmetric(3)`.
const S3_PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn random_piece<R: Rng>(rng: &mut R) -> FiniteGroupoid {
    let piece = match rng.gen_range(0..7) {
        0 => Ok(FiniteGroupoid::discrete(rng.gen_range(1..=3))),
        1 => Ok(FiniteGroupoid::delooping(&random_group(rng))),
        2 => {
            let g = random_group(rng);
            let n = g.order();
            FiniteGroupoid::action_groupoid(n, &g, |a, x| g.mul(a, x))
        }
        3 => FiniteGroupoid::action_groupoid(3, &Group::symmetric(3), |a, x| S3_PERMS[a][x]),
        4 => FiniteGroupoid::action_groupoid(2, &Group::cyclic(4), |a, x| (a + x) % 2),
        5 => FiniteGroupoid::action_groupoid(3, &Group::cyclic(2), |a, x| if a == 1 && x < 2 { 1 - x } else { x }),
        _ => FiniteGroupoid::action_groupoid(rng.gen_range(1..=2), &random_group(rng), |_, x| x),
    };
    piece.expect("corpus actions are valid")
}

/// A disjoint union of one or two pieces with at most `MAX_OBJECTS` objects.
pub fn random_groupoid<R: Rng>(rng: &mut R) -> FiniteGroupoid {
    loop {
        let mut x = random_piece(rng);
        if rng.gen_bool(0.4) {
            x = FiniteGroupoid::disjoint_union(&x, &random_piece(rng)).0;
        }
        if x.num_objects() <= MAX_OBJECTS {
            return x;
        }
    }
}

/// The powers of an automorphism `a` of some object, starting at the identity.
fn cyclic_powers(y: &FiniteGroupoid, a: usize) -> Vec<usize> {
    let id = y.identity(y.source(a));
    let mut powers = vec![id];
    let mut p = a;
    while p != id {
        powers.push(p);
        p = y.comp(a, p);
    }
    powers
}

fn codiagonal(y: &FiniteGroupoid) -> GroupoidFunctor {
    let (u, _, _) = FiniteGroupoid::disjoint_union(y, y);
    let (n, m) = (y.num_objects(), y.num_morphisms());
    GroupoidFunctor::new(
        u,
        y.clone(),
        (0..2 * n).map(|o| o % n).collect(),
        (0..2 * m).map(|k| k % m).collect(),
    )
    .expect("codiagonal is a functor")
}

fn basic_functor_into<R: Rng>(rng: &mut R, y: &FiniteGroupoid) -> GroupoidFunctor {
    let n = y.num_objects();
    loop {
        let f = match rng.gen_range(0..5) {
            0 => GroupoidFunctor::identity(y),
            1 => GroupoidFunctor::pick(y, rng.gen_range(0..n)).expect("object in range"),
            2 => {
                let z = if rng.gen_bool(0.5) {
                    FiniteGroupoid::discrete(2)
                } else {
                    FiniteGroupoid::delooping(&Group::cyclic(2))
                };
                FiniteGroupoid::product(y, &z).1
            }
            3 => codiagonal(y),
            _ => {
                let o = rng.gen_range(0..n);
                let auts = y.automorphisms(o);
                let powers = cyclic_powers(y, *auts.choose(rng).expect("identity exists"));
                let b = FiniteGroupoid::delooping(&Group::cyclic(powers.len()));
                GroupoidFunctor::new(b, y.clone(), vec![o], powers).expect("powers form a homomorphism")
            }
        };
        if f.domain().num_objects() <= MAX_OBJECTS {
            return f;
        }
    }
}

/// A functor with codomain `y`: a basic functor, possibly precomposed with
/// another one.
pub fn random_functor_into<R: Rng>(rng: &mut R, y: &FiniteGroupoid) -> GroupoidFunctor {
    let f = basic_functor_into(rng, y);
    if rng.gen_bool(0.3) {
        let g = basic_functor_into(rng, f.domain());
        f.after(&g).expect("composable by construction")
    } else {
        f
    }
}

pub fn random_functor<R: Rng>(rng: &mut R) -> GroupoidFunctor {
    let y = random_groupoid(rng);
    random_functor_into(rng, &y)
}

fn random_signed_permutation<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        m[(i, j)] = int(if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    m
}

fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Homomorphisms from the automorphism group (listed as morphisms) to `±1`.
fn sign_characters(x: &FiniteGroupoid, auts: &[usize]) -> Vec<Vec<i64>> {
    let n = auts.len();
    if n > 8 {
        return Vec::new();
    }
    let pos = |m: usize| auts.iter().position(|&a| a == m).expect("closed under composition");
    (0..1u32 << n)
        .map(|bits| (0..n).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect::<Vec<i64>>())
        .filter(|chi| {
            (0..n).all(|i| (0..n).all(|j| chi[pos(x.comp(auts[i], auts[j]))] == chi[i] * chi[j]))
        })
        .collect()
}

/// A representation of the automorphism group by signed permutation
/// matrices, as a direct sum of sign characters and the regular
/// representation, of dimension at most `max_dim`.
fn random_root_rep<R: Rng>(rng: &mut R, x: &FiniteGroupoid, auts: &[usize], max_dim: usize) -> Vec<Matrix> {
    let n = auts.len();
    let chars = sign_characters(x, auts);
    let pos = |m: usize| auts.iter().position(|&a| a == m).expect("closed under composition");
    let mut blocks: Vec<Vec<Matrix>> = Vec::new();
    let mut dim = 0;
    for _ in 0..rng.gen_range(0..=2) {
        if n <= 4 && dim + n <= max_dim && rng.gen_bool(0.3) {
            let reg = (0..n)
                .map(|g| {
                    let mut m = Matrix::zeros(n, n);
                    for h in 0..n {
                        m[(pos(x.comp(auts[g], auts[h])), h)] = int(1);
                    }
                    m
                })
                .collect();
            blocks.push(reg);
            dim += n;
        } else if dim < max_dim && !chars.is_empty() {
            let chi = chars.choose(rng).expect("nonempty");
            blocks.push(chi.iter().map(|&c| Matrix::scalar(int(c))).collect());
            dim += 1;
        }
    }
    (0..n)
        .map(|g| Matrix::block_diag(blocks.iter().map(|b| &b[g])))
        .collect()
}

/// A random local system over `x` of total dimension at most
/// `MAX_TOTAL_DIM`. With `orthogonal` set every transport is a signed
/// permutation matrix, so the standard inner product applies.
pub fn random_system<R: Rng>(rng: &mut R, x: &FiniteGroupoid, orthogonal: bool) -> LocalSystem {
    let comps = x.components();
    let t = x.transversal(&comps);
    let mut dims = vec![0; x.num_objects()];
    let mut root_reps = Vec::new();
    let mut budget = MAX_TOTAL_DIM;
    for (c, &r) in comps.roots.iter().enumerate() {
        let size = comps.of.iter().filter(|&&k| k == c).count();
        let auts = x.automorphisms(r);
        let rep = random_root_rep(rng, x, &auts, budget / size);
        let d = rep[0].rows();
        budget -= d * size;
        for o in 0..x.num_objects() {
            if comps.of[o] == c {
                dims[o] = d;
            }
        }
        root_reps.push((auts, rep));
    }
    let change: Vec<Matrix> = dims
        .iter()
        .map(|&d| {
            if orthogonal {
                random_signed_permutation(rng, d)
            } else {
                random_invertible(rng, d)
            }
        })
        .collect();
    let inv: Vec<Matrix> = change.iter().map(|q| q.inverse().expect("invertible")).collect();
    let transports = (0..x.num_morphisms())
        .map(|m| {
            let (o, p) = (x.source(m), x.target(m));
            let (auts, rep) = &root_reps[comps.of[o]];
            let g = x.comp(x.inverse(t[p]), x.comp(m, t[o]));
            let i = auts.iter().position(|&a| a == g).expect("automorphism of the root");
            &(&change[p] * &rep[i]) * &inv[o]
        })
        .collect();
    LocalSystem::new(x.clone(), dims, transports).expect("transported representation is a system")
}

/// A random rational combination of a basis of natural maps `a → b`.
pub fn random_map<R: Rng>(rng: &mut R, a: &LocalSystem, b: &LocalSystem) -> SystemMap {
    let basis = natural_map_basis(a, b).expect("systems share a base");
    let zero = SystemMap::zero(a, b).expect("systems share a base");
    basis.iter().fold(zero, |acc, h| {
        let c = random_rational(rng);
        let comps = (0..a.base().num_objects())
            .map(|o| acc.component(o) + &h.component(o).scale(&c))
            .collect();
        SystemMap::new(a.clone(), b.clone(), comps).expect("combination of natural maps")
    })
}

fn span_into<R: Rng>(rng: &mut R, x2: &FiniteGroupoid) -> Correspondence {
    let g = random_functor_into(rng, x2);
    let z = g.domain().clone();
    let left = if rng.gen_bool(0.5) {
        GroupoidFunctor::terminal(&z)
    } else {
        GroupoidFunctor::identity(&z)
    };
    Correspondence { left, right: g }
}

fn span_out_of<R: Rng>(rng: &mut R, x2: &FiniteGroupoid) -> Correspondence {
    let Correspondence { left, right } = span_into(rng, x2);
    Correspondence { left: right, right: left }
}

/// A random correspondence: an iso-comma square, a graph, a product or a
/// terminal span.
pub fn random_correspondence<R: Rng>(rng: &mut R) -> Correspondence {
    loop {
        let corr = match rng.gen_range(0..4) {
            0 => {
                let y = random_groupoid(rng);
                let (f, g) = (random_functor_into(rng, &y), random_functor_into(rng, &y));
                let c = iso_comma(&f, &g).expect("common codomain");
                Correspondence { left: c.left, right: c.right }
            }
            1 => {
                let x2 = random_groupoid(rng);
                span_into(rng, &x2)
            }
            2 => {
                let (x1, x2) = (random_groupoid(rng), random_groupoid(rng));
                let (_, p1, p2) = FiniteGroupoid::product(&x1, &x2);
                Correspondence { left: p1, right: p2 }
            }
            _ => {
                let z = random_groupoid(rng);
                let t = GroupoidFunctor::terminal(&z);
                Correspondence { left: t.clone(), right: t }
            }
        };
        if corr.apex().num_objects() <= MAX_APEX_OBJECTS {
            return corr;
        }
    }
}

pub fn random_kernel_on<R: Rng>(
    rng: &mut R,
    corr: Correspondence,
    a1: LocalSystem,
    a2: LocalSystem,
) -> PrequantumKernel {
    let src = pullback(&corr.right, &a2).expect("a2 lives on the right context");
    let tgt = pullback(&corr.left, &a1).expect("a1 lives on the left context");
    let xi = random_map(rng, &src, &tgt);
    PrequantumKernel::new(corr, a1, a2, xi).expect("kernel data is consistent")
}

/// A random kernel with orthogonal coefficient systems.
pub fn random_kernel<R: Rng>(rng: &mut R) -> PrequantumKernel {
    let corr = random_correspondence(rng);
    let a1 = random_system(rng, corr.left.codomain(), true);
    let a2 = random_system(rng, corr.right.codomain(), true);
    random_kernel_on(rng, corr, a1, a2)
}

/// Kernels `k1 : X₁ ⇸ X₂` and `k2 : X₂ ⇸ X₃` sharing the middle context and
/// its coefficient system, with a glued apex of bounded size.
pub fn random_composable_pair<R: Rng>(rng: &mut R) -> (PrequantumKernel, PrequantumKernel) {
    loop {
        let x2 = random_groupoid(rng);
        let (c1, c2) = (span_into(rng, &x2), span_out_of(rng, &x2));
        let glued = iso_comma(&c1.right, &c2.left).expect("common middle context");
        if glued.groupoid.num_objects() > MAX_APEX_OBJECTS {
            continue;
        }
        let a2 = random_system(rng, &x2, true);
        let a1 = random_system(rng, c1.left.codomain(), true);
        let a3 = random_system(rng, c2.right.codomain(), true);
        let k1 = random_kernel_on(rng, c1, a1, a2.clone());
        let k2 = random_kernel_on(rng, c2, a2, a3);
        return (k1, k2);
    }
}
