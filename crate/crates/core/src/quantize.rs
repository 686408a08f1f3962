//! Fundamental classes, integral kernels and their transforms, inner
//! products on pushforwards, and the anomaly and pasting checks.

use crate::base_change::{
    de_morgan_iso, dependent_product, dependent_sum, frobenius_iso, global_sum_map,
    norm_on_domain, product_projection_iso, product_unit, sum_composition_iso, sum_counit, sum_map,
    Square,
};
use crate::error::{Error, Result};
use crate::functor::{iso_comma, GroupoidFunctor};
use crate::groupoid::FiniteGroupoid;
use crate::linear::{
    compose, compose_all, dual, dual_map, pullback, tensor, tensor_maps, unit_system, InnerProduct,
    LocalSystem, SystemMap,
};
use crate::matrix::Matrix;

/// `Nm : ∑_f f*A → ∏_f f*A` for `A` over the codomain.
pub fn norm_map(f: &GroupoidFunctor, a: &LocalSystem) -> Result<SystemMap> {
    norm_on_domain(f, &pullback(f, a)?)
}

/// A twist `τ` over the codomain of `f` with an invertible comparison
/// `∑_f f*1 → ∏_f f*τ`.
#[derive(Clone, Debug)]
pub struct FundamentalClass {
    along: GroupoidFunctor,
    twist: LocalSystem,
    comparison: SystemMap,
}

impl FundamentalClass {
    pub fn new(along: GroupoidFunctor, twist: LocalSystem, comparison: SystemMap) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidFundamentalClass(m.into()));
        if twist.base() != along.codomain() {
            return bad("twist is not over the codomain");
        }
        if twist.dims().iter().any(|&d| d != 1) {
            return bad("twist is not invertible");
        }
        let src = dependent_sum(&along, &unit_system(along.domain()))?.system;
        let tgt = dependent_product(&along, &pullback(&along, &twist)?)?.system;
        if comparison.source() != &src || comparison.target() != &tgt {
            return bad("comparison has the wrong source or target");
        }
        comparison
            .validate()
            .map_err(|e| Error::InvalidFundamentalClass(e.to_string()))?;
        if !comparison.is_equivalence() {
            return bad("comparison is not invertible");
        }
        Ok(FundamentalClass {
            along,
            twist,
            comparison,
        })
    }

    /// Untwisted class whose comparison is the norm.
    pub fn canonical(f: &GroupoidFunctor) -> Result<Self> {
        let one = unit_system(f.codomain());
        let nm = norm_map(f, &one)?;
        Ok(FundamentalClass {
            along: f.clone(),
            twist: one,
            comparison: nm,
        })
    }

    pub fn along(&self) -> &GroupoidFunctor {
        &self.along
    }

    pub fn twist(&self) -> &LocalSystem {
        &self.twist
    }

    pub fn comparison(&self) -> &SystemMap {
        &self.comparison
    }

    pub fn is_untwisted(&self) -> bool {
        self.twist == unit_system(self.along.codomain())
    }

    pub fn is_canonical(&self) -> Result<bool> {
        Ok(self.is_untwisted() && self.comparison == norm_map(&self.along, &self.twist)?)
    }
}

pub fn canonical_fundamental_class(f: &GroupoidFunctor) -> Result<FundamentalClass> {
    FundamentalClass::canonical(f)
}

/// `W_A : f_! f*A → f_* f*(A ⊗ τ)`, assembled from the projection formulas
/// and the class comparison.
pub fn wirthmuller_map(fc: &FundamentalClass, a: &LocalSystem) -> Result<SystemMap> {
    let f = &fc.along;
    let frob = frobenius_iso(f, &unit_system(f.domain()), a)?;
    let mid = tensor_maps(&SystemMap::identity(a), &fc.comparison)?;
    let pf = product_projection_iso(f, a, &pullback(f, &fc.twist)?)?;
    compose_all(&[&frob, &mid, &pf])
}

/// `[f]_A : A ⊗ τ → f_! f*A`.
pub fn fundamental_class_map(fc: &FundamentalClass, a: &LocalSystem) -> Result<SystemMap> {
    if a.base() != fc.along.codomain() {
        return Err(Error::BaseMismatch("system is not over the codomain of the class".into()));
    }
    let w = wirthmuller_map(fc, a)?;
    let eta = product_unit(&fc.along, &tensor(a, &fc.twist)?)?;
    compose(&w.inverse()?, &eta)
}

/// The measure: transpose of `∑_Y [f]_A`, a map `𝔻∑_Y f_!f*A → 𝔻∑_Y(A ⊗ τ)`.
pub fn measure(fc: &FundamentalClass, a: &LocalSystem) -> Result<Matrix> {
    Ok(global_sum_map(&fundamental_class_map(fc, a)?)?.transpose())
}

/// A span `X₁ ← Z → X₂`.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub left: GroupoidFunctor,
    pub right: GroupoidFunctor,
}

impl Correspondence {
    pub fn new(left: GroupoidFunctor, right: GroupoidFunctor) -> Result<Self> {
        if left.domain() != right.domain() {
            return Err(Error::Mismatch("legs do not share an apex".into()));
        }
        Ok(Correspondence { left, right })
    }

    pub fn apex(&self) -> &FiniteGroupoid {
        self.left.domain()
    }

    /// `X ← X → X` with identity legs.
    pub fn identity(x: &FiniteGroupoid) -> Self {
        let id = GroupoidFunctor::identity(x);
        Correspondence {
            left: id.clone(),
            right: id,
        }
    }
}

/// A correspondence with coefficients `A₁`, `A₂` and `ξ : i₂*A₂ → i₁*A₁`.
#[derive(Clone, Debug)]
pub struct PrequantumKernel {
    pub corr: Correspondence,
    pub a1: LocalSystem,
    pub a2: LocalSystem,
    pub xi: SystemMap,
}

impl PrequantumKernel {
    pub fn new(corr: Correspondence, a1: LocalSystem, a2: LocalSystem, xi: SystemMap) -> Result<Self> {
        if xi.source() != &pullback(&corr.right, &a2)? || xi.target() != &pullback(&corr.left, &a1)? {
            return Err(Error::Mismatch("ξ must map i₂*A₂ to i₁*A₁".into()));
        }
        xi.validate()?;
        Ok(PrequantumKernel { corr, a1, a2, xi })
    }

    /// Unit coefficients and identity `ξ`.
    pub fn trivial(corr: Correspondence) -> Self {
        let a1 = unit_system(corr.left.codomain());
        let a2 = unit_system(corr.right.codomain());
        let xi = SystemMap::identity(&unit_system(corr.apex()));
        PrequantumKernel { corr, a1, a2, xi }
    }

    /// `X ← X → X` with coefficients `A` and identity `ξ`.
    pub fn identity(a: &LocalSystem) -> Self {
        PrequantumKernel {
            corr: Correspondence::identity(a.base()),
            a1: a.clone(),
            a2: a.clone(),
            xi: SystemMap::identity(a),
        }
    }
}

fn check_class(k: &PrequantumKernel, fc: &FundamentalClass) -> Result<()> {
    if fc.along != k.corr.right {
        return Err(Error::Mismatch("class is not along the right leg".into()));
    }
    Ok(())
}

/// The sum-composition iso at the point for `Z → X → pt`.
fn global_composition(i: &GroupoidFunctor, b: &LocalSystem) -> Result<Matrix> {
    let t = GroupoidFunctor::terminal(i.codomain());
    Ok(sum_composition_iso(i, &t, b)?.component(0).clone())
}

/// Factors shared by the transform and the quantum operation:
/// `∑ε_{A₁} ∘ comp(i₁) ∘ ∑ξ ∘ comp(i₂)⁻¹ : ∑_{X₂}∑_{i₂}i₂*A₂ → ∑_{X₁}A₁`.
fn transform_tail(k: &PrequantumKernel) -> Result<Matrix> {
    let (i1, i2) = (&k.corr.left, &k.corr.right);
    let s2 = global_composition(i2, k.xi.source())?;
    let s2_inv = s2
        .inverse()
        .ok_or_else(|| Error::InternalAxiomFailure("composition iso is singular".into()))?;
    let s3 = global_sum_map(&k.xi)?;
    let s4 = global_composition(i1, k.xi.target())?;
    let s5 = global_sum_map(&sum_counit(i1, &k.a1)?)?;
    Ok(&(&(&s5 * &s4) * &s3) * &s2_inv)
}

/// The dual secondary integral transform `∑_{X₂}(A₂ ⊗ τ) → ∑_{X₁}A₁`.
pub fn secondary_transform(k: &PrequantumKernel, fc: &FundamentalClass) -> Result<Matrix> {
    check_class(k, fc)?;
    let s1 = global_sum_map(&fundamental_class_map(fc, &k.a2)?)?;
    Ok(&transform_tail(k)? * &s1)
}

/// The undualized transform `∏_{X₁}𝔻A₁ → ∏_{X₂}𝔻(A₂ ⊗ τ)`, the transpose
/// of the dual transform read through the de Morgan isos.
pub fn undualized_transform(k: &PrequantumKernel, fc: &FundamentalClass) -> Result<Matrix> {
    let t = secondary_transform(k, fc)?;
    let dm1 = de_morgan_iso(&GroupoidFunctor::terminal(k.a1.base()), &k.a1)?;
    let a2t = tensor(&k.a2, &fc.twist)?;
    let dm2 = de_morgan_iso(&GroupoidFunctor::terminal(a2t.base()), &a2t)?;
    let dm2_inv = dm2.inverse()?;
    Ok(&(dm2_inv.component(0) * &t.transpose()) * dm1.component(0))
}

/// Composite of `k₁ : X₁ ⇸ X₂` followed by `k₂ : X₂ ⇸ X₃`, over the
/// iso-comma of the middle legs.
pub fn compose_correspondences(k2: &PrequantumKernel, k1: &PrequantumKernel) -> Result<PrequantumKernel> {
    if k1.corr.right.codomain() != k2.corr.left.codomain() || k1.a2 != k2.a1 {
        return Err(Error::InterfaceMismatch("middle context or coefficients disagree".into()));
    }
    let c = iso_comma(&k1.corr.right, &k2.corr.left)?;
    let left = k1.corr.left.after(&c.left)?;
    let right = k2.corr.right.after(&c.right)?;
    let mid = &k1.a2;
    let p = &c.groupoid;
    let comps = (0..p.num_objects())
        .map(|o| {
            let (z1, z2, phi) = c.label(o);
            let x2 = k1.corr.right.codomain();
            let back = mid.transport(x2.inverse(phi));
            &(k1.xi.component(z1) * back) * k2.xi.component(z2)
        })
        .collect();
    let xi = SystemMap::new(pullback(&right, &k2.a2)?, pullback(&left, &k1.a1)?, comps)?;
    Ok(PrequantumKernel {
        corr: Correspondence { left, right },
        a1: k1.a1.clone(),
        a2: k2.a2.clone(),
        xi,
    })
}

/// Outcome of comparing two matrices that should agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: Matrix,
    pub rhs: Matrix,
}

impl Comparison {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }

    /// `lhs − rhs`, or `None` when the shapes differ.
    pub fn difference(&self) -> Option<Matrix> {
        (self.lhs.shape() == self.rhs.shape()).then(|| &self.lhs - &self.rhs)
    }
}

/// Compares the transform of the composite with the composite of the
/// transforms, all with canonical classes.
pub fn anomaly_defect(k2: &PrequantumKernel, k1: &PrequantumKernel) -> Result<Comparison> {
    let k = compose_correspondences(k2, k1)?;
    let whole = secondary_transform(&k, &FundamentalClass::canonical(&k.corr.right)?)?;
    let t1 = secondary_transform(k1, &FundamentalClass::canonical(&k1.corr.right)?)?;
    let t2 = secondary_transform(k2, &FundamentalClass::canonical(&k2.corr.right)?)?;
    Ok(Comparison {
        lhs: whole,
        rhs: &t1 * &t2,
    })
}

/// `∑_{f₂} ∏_g f₁* A` for `X₁ ←f₁− W −g→ V −f₂→ X₂`.
pub fn polynomial_functor(
    f1: &GroupoidFunctor,
    g: &GroupoidFunctor,
    f2: &GroupoidFunctor,
    a: &LocalSystem,
) -> Result<LocalSystem> {
    let pulled = pullback(f1, a)?;
    let prod = dependent_product(g, &pulled)?;
    Ok(dependent_sum(f2, &prod.system)?.system)
}

/// The integral kernel `K = ∑_{(f₁,f₂)} 1` over `X₁ × X₂` and the verified
/// comparison `∑_{f₂} f₁*A → ∑_{p₂}(p₁*A ⊗ K)`.
#[derive(Clone, Debug)]
pub struct KernelFactorization {
    pub product: FiniteGroupoid,
    pub p1: GroupoidFunctor,
    pub p2: GroupoidFunctor,
    pub kernel: LocalSystem,
    pub comparison: SystemMap,
}

pub fn kernel_factorization(corr: &Correspondence, a: &LocalSystem) -> Result<KernelFactorization> {
    let (f1, f2) = (&corr.left, &corr.right);
    let (product, p1, p2) = FiniteGroupoid::product(f1.codomain(), f2.codomain());
    let u = GroupoidFunctor::pairing(f1, f2, &product)?;
    let kernel = dependent_sum(&u, &unit_system(corr.apex()))?.system;
    let b = pullback(f1, a)?;
    let comp = sum_composition_iso(&u, &p2, &b)?;
    let frob = frobenius_iso(&u, &unit_system(corr.apex()), &pullback(&p1, a)?)?;
    let outer = sum_map(&p2, &frob)?;
    let comparison = compose(&outer, &comp)?;
    if !comparison.is_equivalence() {
        return Err(Error::InternalAxiomFailure("kernel factorization is not invertible".into()));
    }
    Ok(KernelFactorization {
        product,
        p1,
        p2,
        kernel,
        comparison,
    })
}

/// `h† = ⟨−,−⟩_A⁻¹ ∘ 𝔻h ∘ ⟨−,−⟩_B` for `h : A → B`.
pub fn transpose(h: &SystemMap, ip_a: &InnerProduct, ip_b: &InnerProduct) -> Result<SystemMap> {
    if ip_a.carrier() != h.source() || ip_b.carrier() != h.target() {
        return Err(Error::CarrierMismatch("inner products are not carried by the map's ends".into()));
    }
    let inv = ip_a.pairing().inverse()?;
    compose_all(&[ip_b.pairing(), &dual_map(h), &inv])
}

fn require_untwisted(fc: &FundamentalClass) -> Result<()> {
    if !fc.is_untwisted() {
        return Err(Error::TwistedClassUnsupported("the class has a nontrivial twist".into()));
    }
    Ok(())
}

/// The inner product on `f_! f*A` induced by one on `A` and an untwisted
/// class: `𝔻(f_!f*⟨−,−⟩_A) ∘ dm ∘ W_A`.
pub fn induced_inner_product(fc: &FundamentalClass, ip: &InnerProduct) -> Result<InnerProduct> {
    require_untwisted(fc)?;
    let f = &fc.along;
    let a = ip.carrier();
    let w = wirthmuller_map(fc, a)?;
    let dm = de_morgan_iso(f, &pullback(f, &dual(a))?)?;
    let push = sum_map(f, &crate::linear::pullback_map(f, ip.pairing())?)?;
    InnerProduct::new(compose_all(&[&w, &dm, &dual_map(&push)])?)
}

/// The inner product on `∑_X A` from one on `A` and the canonical class of
/// `X → pt`, whose Wirthmüller comparison is the norm: `dm ∘ Nm ∘ ∑⟨−,−⟩`.
pub fn global_inner_product(ip: &InnerProduct, fc: &FundamentalClass) -> Result<InnerProduct> {
    let a = ip.carrier();
    let t = GroupoidFunctor::terminal(a.base());
    if fc.along != t {
        return Err(Error::Mismatch("class is not along the map to the point".into()));
    }
    if !fc.is_canonical()? {
        return Err(Error::TwistedClassUnsupported(
            "global inner products use the canonical class".into(),
        ));
    }
    let push = sum_map(&t, ip.pairing())?;
    let nm = norm_on_domain(&t, &dual(a))?;
    let dm = de_morgan_iso(&t, a)?;
    InnerProduct::new(compose_all(&[&push, &nm, &dm])?)
}

/// The inner product on `∑_X ∑_f f*A` built from `ip` on `A` over `X`.
fn global_induced(f: &GroupoidFunctor, ip: &InnerProduct) -> Result<InnerProduct> {
    let rel = induced_inner_product(&FundamentalClass::canonical(f)?, ip)?;
    let t = GroupoidFunctor::terminal(f.codomain());
    global_inner_product(&rel, &FundamentalClass::canonical(&t)?)
}

/// `ε_A†` with respect to the induced product on `f_! f*A`.
pub fn counit_dagger(fc: &FundamentalClass, ip: &InnerProduct) -> Result<SystemMap> {
    let eps = sum_counit(&fc.along, ip.carrier())?;
    transpose(&eps, &induced_inner_product(fc, ip)?, ip)
}

/// Compares the pasting composite `∑_{X₁}(ε ∘ ∑_{i₁}ξ) ∘ … ∘ ∑_{X₂}[i₂]`
/// with the secondary transform.
pub fn boundary_pasting_check(k: &PrequantumKernel, fc: &FundamentalClass) -> Result<Comparison> {
    check_class(k, fc)?;
    let (i1, i2) = (&k.corr.left, &k.corr.right);
    let exp = compose(&sum_counit(i1, &k.a1)?, &sum_map(i1, &k.xi)?)?;
    let b = k.xi.source();
    let s1 = global_sum_map(&fundamental_class_map(fc, &k.a2)?)?;
    let back = global_composition(i2, b)?
        .inverse()
        .ok_or_else(|| Error::InternalAxiomFailure("composition iso is singular".into()))?;
    let forth = global_composition(i1, b)?;
    let pasted = global_sum_map(&exp)?;
    let lhs = &(&(&pasted * &forth) * &back) * &s1;
    Ok(Comparison {
        lhs,
        rhs: secondary_transform(k, fc)?,
    })
}

/// `L_X(f) = ∑_f 1_Y`.
pub fn linearize(f: &GroupoidFunctor) -> Result<LocalSystem> {
    Ok(dependent_sum(f, &unit_system(f.domain()))?.system)
}

/// For `u : Y → Y'` over `X` (with `f' ∘ u` the structure map of `Y`), the
/// induced `L_X(f' ∘ u) → L_X(f')`.
pub fn linearize_map(u: &GroupoidFunctor, f2: &GroupoidFunctor) -> Result<SystemMap> {
    let one = unit_system(u.domain());
    let comp = sum_composition_iso(u, f2, &one)?;
    let eps = sum_map(f2, &sum_counit(u, &unit_system(u.codomain()))?)?;
    compose(&eps, &comp)
}

/// `(∑ε^{i₁}) ∘ Ξ ∘ (∑ε^{i₂})†` for a kernel whose two contexts and
/// coefficient systems coincide, using the inner products induced by `ip`.
pub fn quantum_operation(k: &PrequantumKernel, ip: &InnerProduct) -> Result<Matrix> {
    if k.corr.left.codomain() != k.corr.right.codomain() || k.a1 != k.a2 || ip.carrier() != &k.a1 {
        return Err(Error::ShapeMismatch("kernel legs, coefficients and inner product must agree".into()));
    }
    let i2 = &k.corr.right;
    let a = &k.a1;
    let eps = global_sum_map(&sum_counit(i2, a)?)?;
    let src = global_induced(i2, ip)?;
    let tgt = global_inner_product(ip, &FundamentalClass::canonical(&GroupoidFunctor::terminal(a.base()))?)?;
    let src_inv = src
        .gram(0)
        .inverse()
        .ok_or_else(|| Error::InternalAxiomFailure("inner product is degenerate".into()))?;
    let dagger = &(&src_inv * &eps.transpose()) * tgt.gram(0);
    Ok(&transform_tail(k)? * &dagger)
}

/// Checks that a square is a homotopy pullback by comparing with the
/// iso-comma; used to sanity-check user squares.
pub fn is_pullback_square(sq: &Square) -> Result<bool> {
    sq.validate()?;
    let c = iso_comma(&sq.k, &sq.g)?;
    let p = sq.h.domain();
    let comps: Vec<usize> = (0..p.num_objects())
        .map(|o| {
            let phi = sq.alpha.component(o);
            (0..c.groupoid.num_objects())
                .find(|&q| c.label(q) == (sq.h.obj(o), sq.f.obj(o), phi))
                .expect("iso-comma contains every labelled object")
        })
        .collect();
    let morphisms: Vec<usize> = (0..p.num_morphisms())
        .map(|m| {
            let q = comps[p.source(m)];
            c.groupoid
                .outgoing(q)
                .iter()
                .copied()
                .find(|&n| c.left.mor(n) == sq.h.mor(m) && c.right.mor(n) == sq.f.mor(m))
                .expect("iso-comma contains every compatible morphism")
        })
        .collect();
    let cmp = GroupoidFunctor::new(p.clone(), c.groupoid.clone(), comps, morphisms)?;
    Ok(cmp.is_equivalence())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::matrix::{int, ratio};

    fn bz2() -> FiniteGroupoid {
        FiniteGroupoid::delooping(&Group::cyclic(2))
    }

    fn point() -> FiniteGroupoid {
        FiniteGroupoid::point()
    }

    #[test]
    fn norm_examples() {
        let t = GroupoidFunctor::terminal(&bz2());
        let nm = norm_map(&t, &unit_system(&point())).unwrap();
        assert_eq!(nm.component(0), &Matrix::scalar(int(2)));
        let d3 = FiniteGroupoid::discrete(3);
        let nm = norm_map(&GroupoidFunctor::terminal(&d3), &unit_system(&point())).unwrap();
        assert!(nm.component(0).is_identity());
        let id = GroupoidFunctor::identity(&bz2());
        let nm = norm_map(&id, &LocalSystem::sign()).unwrap();
        assert!(nm.component(0).is_identity());
    }

    #[test]
    fn canonical_class_examples() {
        let t = GroupoidFunctor::terminal(&bz2());
        let fc = FundamentalClass::canonical(&t).unwrap();
        let m = fundamental_class_map(&fc, &unit_system(&point())).unwrap();
        assert_eq!(m.component(0), &Matrix::scalar(ratio(1, 2)));
        let d2 = FiniteGroupoid::discrete(2);
        let fc = FundamentalClass::canonical(&GroupoidFunctor::terminal(&d2)).unwrap();
        let m = fundamental_class_map(&fc, &unit_system(&point())).unwrap();
        assert_eq!(m.component(0), &Matrix::from_i64(&[&[1], &[1]]));
        let id = GroupoidFunctor::identity(&bz2());
        let fc = FundamentalClass::canonical(&id).unwrap();
        let s = LocalSystem::sign();
        assert_eq!(fundamental_class_map(&fc, &s).unwrap(), SystemMap::identity(&s));
    }

    #[test]
    fn class_map_is_inverse_norm_after_unit() {
        let b3 = FiniteGroupoid::delooping(&Group::symmetric(3));
        let t = GroupoidFunctor::pick(&b3, 0).unwrap();
        let a = LocalSystem::regular(&Group::symmetric(3));
        let fc = FundamentalClass::canonical(&t).unwrap();
        let lhs = fundamental_class_map(&fc, &a).unwrap();
        let rhs = compose(&norm_map(&t, &a).unwrap().inverse().unwrap(), &product_unit(&t, &a).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn transform_examples() {
        let p = point();
        let corr = Correspondence::identity(&p);
        let one = unit_system(&p);
        let xi = SystemMap::new(one.clone(), one.clone(), vec![Matrix::scalar(int(7))]).unwrap();
        let k = PrequantumKernel::new(corr, one.clone(), one.clone(), xi).unwrap();
        let fc = FundamentalClass::canonical(&k.corr.right).unwrap();
        assert_eq!(secondary_transform(&k, &fc).unwrap(), Matrix::scalar(int(7)));

        let x = bz2();
        let t = GroupoidFunctor::terminal(&x);
        let k = PrequantumKernel::trivial(Correspondence::new(t.clone(), t.clone()).unwrap());
        let fc = FundamentalClass::canonical(&t).unwrap();
        assert_eq!(secondary_transform(&k, &fc).unwrap(), Matrix::scalar(ratio(1, 2)));
        assert!(boundary_pasting_check(&k, &fc).unwrap().equal());
        assert_eq!(undualized_transform(&k, &fc).unwrap(), Matrix::scalar(ratio(1, 2)));
    }

    #[test]
    fn dagger_of_counit_is_class_on_discrete() {
        let d2 = FiniteGroupoid::discrete(2);
        let t = GroupoidFunctor::terminal(&d2);
        let fc = FundamentalClass::canonical(&t).unwrap();
        let one = unit_system(&point());
        let ip = InnerProduct::standard(&one).unwrap();
        let dag = counit_dagger(&fc, &ip).unwrap();
        assert_eq!(dag, fundamental_class_map(&fc, &one).unwrap());
        assert_eq!(dag.component(0), &Matrix::from_i64(&[&[1], &[1]]));
    }

    #[test]
    fn global_inner_products() {
        let p = point();
        let one = unit_system(&p);
        let ip = InnerProduct::standard(&one).unwrap();
        let fc = FundamentalClass::canonical(&GroupoidFunctor::terminal(&p)).unwrap();
        assert_eq!(global_inner_product(&ip, &fc).unwrap().gram(0), ip.gram(0));

        let d2 = FiniteGroupoid::discrete(2);
        let ip = InnerProduct::standard(&unit_system(&d2)).unwrap();
        let fc = FundamentalClass::canonical(&GroupoidFunctor::terminal(&d2)).unwrap();
        assert!(global_inner_product(&ip, &fc).unwrap().gram(0).is_identity());

        let r = LocalSystem::regular(&Group::cyclic(2));
        let ip = InnerProduct::standard(&r).unwrap();
        let fc = FundamentalClass::canonical(&GroupoidFunctor::terminal(&bz2())).unwrap();
        let g = global_inner_product(&ip, &fc).unwrap();
        assert_eq!(g.gram(0).shape(), (1, 1));
        assert!(!g.gram(0).is_zero());
    }

    #[test]
    fn twisted_class_validation() {
        let x = bz2();
        let f = GroupoidFunctor::pick(&x, 0).unwrap();
        let nm = norm_map(&f, &unit_system(&x)).unwrap();
        let fc = FundamentalClass::new(f.clone(), LocalSystem::sign(), nm).unwrap();
        assert!(!fc.is_untwisted());
        let m = fundamental_class_map(&fc, &unit_system(&x)).unwrap();
        m.validate().unwrap();
        let ip = InnerProduct::standard(&unit_system(&x)).unwrap();
        assert!(matches!(induced_inner_product(&fc, &ip), Err(Error::TwistedClassUnsupported(_))));
        let zero = SystemMap::zero(fc.comparison().source(), fc.comparison().target()).unwrap();
        assert!(FundamentalClass::new(f, LocalSystem::sign(), zero).is_err());
    }

    #[test]
    fn composition_of_gauge_spans_has_loop_groupoid_apex() {
        let x = bz2();
        let t = GroupoidFunctor::terminal(&x);
        let k = PrequantumKernel::trivial(Correspondence::new(t.clone(), t.clone()).unwrap());
        let c = compose_correspondences(&k, &k).unwrap();
        assert_eq!(c.corr.apex().cardinality(), ratio(1, 4));
        assert!(anomaly_defect(&k, &k).unwrap().equal());

        // Cup and cap through the diagonal glue to the loop groupoid G//G.
        let (xx, _, _) = FiniteGroupoid::product(&x, &x);
        let id = GroupoidFunctor::identity(&x);
        let diag = GroupoidFunctor::pairing(&id, &id, &xx).unwrap();
        let cap = PrequantumKernel::trivial(Correspondence::new(t.clone(), diag.clone()).unwrap());
        let cup = PrequantumKernel::trivial(Correspondence::new(diag, t).unwrap());
        let c = compose_correspondences(&cup, &cap).unwrap();
        assert_eq!(c.corr.apex().cardinality(), int(1));
        assert!(anomaly_defect(&cup, &cap).unwrap().equal());
    }

    #[test]
    fn linearize_examples() {
        let d3 = FiniteGroupoid::discrete(3);
        let t = GroupoidFunctor::terminal(&d3);
        assert_eq!(linearize(&t).unwrap().dims(), &[3]);
        let m = linearize_map(&t, &GroupoidFunctor::identity(&point())).unwrap();
        assert_eq!(m.component(0), &Matrix::from_i64(&[&[1, 1, 1]]));
        assert_eq!(linearize(&GroupoidFunctor::terminal(&bz2())).unwrap().dims(), &[1]);
        let id = GroupoidFunctor::identity(&bz2());
        assert_eq!(linearize(&id).unwrap(), unit_system(&bz2()));
    }

    #[test]
    fn quantum_operation_examples() {
        let p = point();
        let one = unit_system(&p);
        let k = PrequantumKernel::identity(&one);
        let ip = InnerProduct::standard(&one).unwrap();
        assert!(quantum_operation(&k, &ip).unwrap().is_identity());

        let x = bz2();
        let t = GroupoidFunctor::terminal(&x);
        let k = PrequantumKernel::trivial(Correspondence::new(t.clone(), t).unwrap());
        assert_eq!(quantum_operation(&k, &ip).unwrap(), Matrix::scalar(ratio(1, 2)));
    }

    #[test]
    fn kernel_factorization_examples() {
        let x = bz2();
        let t = GroupoidFunctor::terminal(&x);
        let corr = Correspondence::new(t.clone(), t).unwrap();
        let kf = kernel_factorization(&corr, &unit_system(&point())).unwrap();
        assert_eq!(kf.kernel.dims(), &[1]);
        let d = FiniteGroupoid::discrete(2);
        let (prod, p1, p2) = FiniteGroupoid::product(&d, &d);
        let corr = Correspondence::new(p1, p2).unwrap();
        let kf = kernel_factorization(&corr, &unit_system(&d)).unwrap();
        assert_eq!(kf.kernel, unit_system(&prod));
    }

    #[test]
    fn polynomial_functor_on_discrete_sets() {
        // W = 3 points over V = 2 points (fibers 2, 1), V → X₂ = point.
        let w = FiniteGroupoid::discrete(3);
        let v = FiniteGroupoid::discrete(2);
        let g = GroupoidFunctor::new(w.clone(), v.clone(), vec![0, 0, 1], vec![0, 0, 1]).unwrap();
        let f1 = GroupoidFunctor::terminal(&w);
        let f2 = GroupoidFunctor::terminal(&v);
        let a = crate::linear::constant_system(&point(), 2);
        // ∏ over fibers of sizes 2 and 1 gives dims 4 and 2; ∑ adds them.
        assert_eq!(polynomial_functor(&f1, &g, &f2, &a).unwrap().dims(), &[6]);
    }
}
