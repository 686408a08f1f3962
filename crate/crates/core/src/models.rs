//! Worked models with independent oracles: matrix calculus over discrete
//! groupoids and untwisted finite gauge theory on closed surfaces.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::functor::GroupoidFunctor;
use crate::group::Group;
use crate::groupoid::FiniteGroupoid;
use crate::linear::{unit_system, SystemMap};
use crate::matrix::{Matrix, Rational};
use crate::quantize::{
    compose_correspondences, secondary_transform, Correspondence, FundamentalClass, PrequantumKernel,
};

pub const DEFAULT_SIZE_LIMIT: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub genus: usize,
}

fn check_size(group: &Group, genus: usize, limit: u128) -> Result<usize> {
    let needed = (group.order() as u128)
        .checked_pow(2 * genus as u32)
        .unwrap_or(u128::MAX);
    if needed > limit {
        return Err(Error::SizeLimit { needed, limit });
    }
    Ok(needed as usize)
}

/// All `2g`-tuples of group elements, in lexicographic order.
fn tuples(group: &Group, genus: usize, count: usize) -> Vec<Vec<usize>> {
    let n = group.order();
    (0..count)
        .map(|mut i| {
            let mut t = vec![0; 2 * genus];
            for slot in t.iter_mut().rev() {
                *slot = i % n;
                i /= n;
            }
            t
        })
        .collect()
}

/// `Π [a_i, b_i]` for the tuple `(a_1, b_1, …, a_g, b_g)`.
fn boundary(group: &Group, t: &[usize]) -> usize {
    t.chunks(2)
        .fold(group.identity(), |acc, ab| group.mul(acc, group.commutator(ab[0], ab[1])))
}

/// `G` acting on `tuples` by simultaneous conjugation.
fn conjugation_groupoid(group: &Group, tuples: &[Vec<usize>]) -> FiniteGroupoid {
    let index: HashMap<&[usize], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let table: Vec<Vec<usize>> = group
        .elements()
        .map(|h| {
            tuples
                .iter()
                .map(|t| {
                    let c: Vec<usize> = t.iter().map(|&x| group.conjugate(h, x)).collect();
                    index[c.as_slice()]
                })
                .collect()
        })
        .collect();
    FiniteGroupoid::action_from_valid_table(group, &table)
}

/// `Hom(π₁Σ_g, G)//G`: tuples with `Π[a_i, b_i] = e` under conjugation.
pub fn rep_groupoid(spec: SurfaceSpec, group: &Group, limit: u128) -> Result<FiniteGroupoid> {
    let count = check_size(group, spec.genus, limit)?;
    let flat: Vec<Vec<usize>> = tuples(group, spec.genus, count)
        .into_iter()
        .filter(|t| boundary(group, t) == group.identity())
        .collect();
    Ok(conjugation_groupoid(group, &flat))
}

/// `G//G` under conjugation; morphism `h * |G| + x` is `x → h x h⁻¹`.
pub fn adjoint_groupoid(group: &Group) -> FiniteGroupoid {
    let singles: Vec<Vec<usize>> = group.elements().map(|x| vec![x]).collect();
    conjugation_groupoid(group, &singles)
}

/// The genus-`g` surface with one boundary circle: all `2g`-tuples under
/// conjugation, with the boundary holonomy functor to `G//G` (inverted when
/// `inverted` is set, for the incoming orientation).
pub fn bordism_leg(group: &Group, genus: usize, inverted: bool, limit: u128) -> Result<GroupoidFunctor> {
    let count = check_size(group, genus, limit)?;
    let ts = tuples(group, genus, count);
    let x = conjugation_groupoid(group, &ts);
    let target = adjoint_groupoid(group);
    let n = group.order();
    let objects: Vec<usize> = ts
        .iter()
        .map(|t| {
            let b = boundary(group, t);
            if inverted {
                group.inv(b)
            } else {
                b
            }
        })
        .collect();
    let morphisms = (0..x.num_morphisms())
        .map(|m| (m / ts.len()) * n + objects[m % ts.len()])
        .collect();
    GroupoidFunctor::new(x, target, objects, morphisms)
}

/// The untwisted partition function, as the transform of the trivial kernel
/// on `pt ← Hom(π₁Σ_g, G)//G → pt` with the canonical class.
pub fn dw_partition(group: &Group, spec: SurfaceSpec, limit: u128) -> Result<Rational> {
    let x = rep_groupoid(spec, group, limit)?;
    let t = GroupoidFunctor::terminal(&x);
    closed_transform(Correspondence::new(t.clone(), t)?)
}

fn closed_transform(corr: Correspondence) -> Result<Rational> {
    let fc = FundamentalClass::canonical(&corr.right)?;
    let m = secondary_transform(&PrequantumKernel::trivial(corr), &fc)?;
    Ok(m[(0, 0)].clone())
}

/// Counts solutions of `Π[a_i, b_i] = e` and divides by `|G|`.
pub fn dw_brute_force(group: &Group, spec: SurfaceSpec, limit: u128) -> Result<Rational> {
    check_size(group, spec.genus, limit)?;
    let n = group.order();
    // counts[x] = number of tuples of the current length with product x.
    let mut counts = vec![BigInt::zero(); n];
    counts[group.identity()] = BigInt::one();
    for _ in 0..spec.genus {
        let mut next = vec![BigInt::zero(); n];
        for (x, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    next[group.mul(x, group.commutator(a, b))] += c;
                }
            }
        }
        counts = next;
    }
    Ok(Rational::new(counts[group.identity()].clone(), BigInt::from(n)))
}

/// `Σ_i (|G| / d_i)^{2g-2}` for user-supplied irreducible dimensions.
pub fn mednykh_cross_check(dims: &[u64], order: u64, genus: usize) -> Result<Rational> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::BadCharacterData("dimensions must be positive".into()));
    }
    let sq: u128 = dims.iter().map(|&d| (d as u128) * (d as u128)).sum();
    if sq != order as u128 {
        return Err(Error::BadCharacterData(format!("squares of dimensions sum to {sq}, not {order}")));
    }
    let e = 2 * genus as i32 - 2;
    Ok(dims.iter().fold(Rational::zero(), |acc, &d| {
        acc + Rational::new(BigInt::from(order), BigInt::from(d)).pow(e)
    }))
}

/// The kernel of a matrix: `X₁ ← X₁ × X₂ → X₂` over discrete sets with unit
/// coefficients and `ξ(x, y) = K[x][y]`.
pub fn matrix_kernel(k: &Matrix) -> PrequantumKernel {
    let (r, c) = k.shape();
    let (x1, x2) = (FiniteGroupoid::discrete(r), FiniteGroupoid::discrete(c));
    let (apex, p1, p2) = FiniteGroupoid::product(&x1, &x2);
    let one = unit_system(&apex);
    let comps = (0..r * c).map(|o| Matrix::scalar(k[(o / c, o % c)].clone())).collect();
    PrequantumKernel {
        corr: Correspondence { left: p1, right: p2 },
        a1: unit_system(&x1),
        a2: unit_system(&x2),
        xi: SystemMap::from_parts(one.clone(), one, comps),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixModelReport {
    pub transform: Matrix,
    pub oracle: Matrix,
}

impl MatrixModelReport {
    pub fn equal(&self) -> bool {
        self.transform == self.oracle
    }
}

/// Applies the transform of `matrix_kernel(k)` to `v` and compares with `K·v`.
pub fn matrix_model(k: &Matrix, v: &[Rational]) -> Result<MatrixModelReport> {
    if v.len() != k.cols() {
        return Err(Error::ShapeMismatch(format!(
            "vector of length {} for a {}x{} kernel",
            v.len(),
            k.rows(),
            k.cols()
        )));
    }
    let kernel = matrix_kernel(k);
    let t = secondary_transform(&kernel, &FundamentalClass::canonical(&kernel.corr.right)?)?;
    let col = Matrix::column(v.to_vec());
    Ok(MatrixModelReport {
        transform: &t * &col,
        oracle: k * &col,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueReport {
    /// Transform of the glued kernel.
    pub glued: Rational,
    /// Product of the transforms of the two pieces.
    pub factored: Rational,
    /// Partition function of the closed surface of total genus.
    pub closed: Rational,
}

impl GlueReport {
    pub fn equal(&self) -> bool {
        self.glued == self.closed && self.factored == self.closed
    }
}

/// Glues `pt ← Σ_{g₁}° → G//G` to `G//G ← Σ_{g₂}° → pt` and compares with
/// the closed genus `g₁ + g₂` partition function.
pub fn dw_glue_check(group: &Group, g1: usize, g2: usize, limit: u128) -> Result<GlueReport> {
    check_size(group, g1 + g2, limit)?;
    let out = bordism_leg(group, g1, false, limit)?;
    let inc = bordism_leg(group, g2, true, limit)?;
    let k1 = PrequantumKernel::trivial(Correspondence::new(GroupoidFunctor::terminal(out.domain()), out)?);
    let k2 = PrequantumKernel::trivial(Correspondence::new(inc.clone(), GroupoidFunctor::terminal(inc.domain()))?);
    let glued = compose_correspondences(&k2, &k1)?;
    let t = |k: &PrequantumKernel| -> Result<Matrix> {
        secondary_transform(k, &FundamentalClass::canonical(&k.corr.right)?)
    };
    let whole = t(&glued)?;
    let factored = &t(&k1)? * &t(&k2)?;
    Ok(GlueReport {
        glued: whole[(0, 0)].clone(),
        factored: factored[(0, 0)].clone(),
        closed: dw_partition(group, SurfaceSpec { genus: g1 + g2 }, limit)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, ratio};

    const LIMIT: u128 = DEFAULT_SIZE_LIMIT;

    #[test]
    fn rep_groupoids() {
        let s3 = Group::symmetric(3);
        let x = rep_groupoid(SurfaceSpec { genus: 0 }, &s3, LIMIT).unwrap();
        x.validate().unwrap();
        assert_eq!(x.cardinality(), ratio(1, 6));
        let z2 = Group::cyclic(2);
        let x = rep_groupoid(SurfaceSpec { genus: 1 }, &z2, LIMIT).unwrap();
        x.validate().unwrap();
        assert_eq!(x.num_objects(), 4);
        assert_eq!(x.cardinality(), int(2));
        let x = rep_groupoid(SurfaceSpec { genus: 1 }, &s3, LIMIT).unwrap();
        assert_eq!(x.num_objects(), 18);
        assert_eq!(x.cardinality(), int(3));
    }

    #[test]
    fn size_limit() {
        let s3 = Group::symmetric(3);
        let err = rep_groupoid(SurfaceSpec { genus: 2 }, &s3, 1000).unwrap_err();
        assert_eq!(err, Error::SizeLimit { needed: 1296, limit: 1000 });
        assert!(dw_brute_force(&s3, SurfaceSpec { genus: 3 }, 1000).is_err());
    }

    #[test]
    fn brute_force_counts() {
        let g = |n| SurfaceSpec { genus: n };
        assert_eq!(dw_brute_force(&Group::trivial(), g(3), LIMIT).unwrap(), int(1));
        assert_eq!(dw_brute_force(&Group::cyclic(2), g(1), LIMIT).unwrap(), int(2));
        assert_eq!(dw_brute_force(&Group::cyclic(3), g(1), LIMIT).unwrap(), int(3));
        assert_eq!(dw_brute_force(&Group::cyclic(2), g(2), LIMIT).unwrap(), int(8));
    }

    #[test]
    fn partition_matches_brute_force() {
        for grp in [Group::cyclic(2), Group::cyclic(3), Group::symmetric(3)] {
            for genus in 0..2 {
                let spec = SurfaceSpec { genus };
                assert_eq!(
                    dw_partition(&grp, spec, LIMIT).unwrap(),
                    dw_brute_force(&grp, spec, LIMIT).unwrap()
                );
            }
        }
    }

    #[test]
    fn mednykh() {
        assert_eq!(mednykh_cross_check(&[1], 1, 4).unwrap(), int(1));
        assert_eq!(mednykh_cross_check(&[1, 1], 2, 2).unwrap(), int(8));
        assert_eq!(mednykh_cross_check(&[1, 1, 2], 6, 1).unwrap(), int(3));
        assert_eq!(mednykh_cross_check(&[1, 1], 2, 0).unwrap(), ratio(1, 2));
        assert!(matches!(mednykh_cross_check(&[1, 2], 6, 1), Err(Error::BadCharacterData(_))));
    }

    #[test]
    fn matrix_models() {
        let k = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let r = matrix_model(&k, &[int(5), int(6)]).unwrap();
        assert!(r.equal());
        assert_eq!(r.transform, Matrix::from_i64(&[&[17], &[39]]));
        let z = Matrix::zeros(2, 3);
        assert!(matrix_model(&z, &[int(1), int(2), int(3)]).unwrap().transform.is_zero());
        let i = Matrix::identity(3);
        let v = vec![ratio(1, 2), int(-1), int(4)];
        assert_eq!(matrix_model(&i, &v).unwrap().transform, Matrix::column(v));
        assert!(matches!(matrix_model(&k, &[int(1)]), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn gluing() {
        let r = dw_glue_check(&Group::cyclic(2), 0, 0, LIMIT).unwrap();
        assert!(r.equal());
        assert_eq!(r.closed, ratio(1, 2));
        let r = dw_glue_check(&Group::cyclic(2), 1, 1, LIMIT).unwrap();
        assert!(r.equal());
        assert_eq!(r.closed, int(8));
        let r = dw_glue_check(&Group::trivial(), 2, 1, LIMIT).unwrap();
        assert!(r.equal());
        assert_eq!(r.closed, int(1));
    }
}
