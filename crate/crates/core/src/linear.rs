//! Local systems of finite-dimensional rational vector spaces over finite
//! groupoids, maps between them, and inner products.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functor::GroupoidFunctor;
use crate::group::Group;
use crate::groupoid::FiniteGroupoid;
use crate::matrix::{int, Matrix, Rational};

#[derive(PartialEq, Eq)]
struct SystemData {
    base: FiniteGroupoid,
    dims: Vec<usize>,
    transports: Vec<Matrix>,
}

/// A functor from a finite groupoid to rational vector spaces with chosen
/// bases. `transport(m)` has `dim(target)` rows and `dim(source)` columns.
#[derive(Clone)]
pub struct LocalSystem {
    data: Arc<SystemData>,
}

impl PartialEq for LocalSystem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Eq for LocalSystem {}

impl fmt::Debug for LocalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalSystem(dims {:?} over {:?})", self.data.dims, self.data.base)
    }
}

impl LocalSystem {
    pub fn new(base: FiniteGroupoid, dims: Vec<usize>, transports: Vec<Matrix>) -> Result<Self> {
        if dims.len() != base.num_objects() {
            return Err(Error::InvalidSystem {
                morphism: 0,
                reason: format!("{} dimensions for {} objects", dims.len(), base.num_objects()),
            });
        }
        if transports.len() != base.num_morphisms() {
            return Err(Error::InvalidSystem {
                morphism: transports.len().min(base.num_morphisms()),
                reason: "transport map is not total".into(),
            });
        }
        let s = Self::from_parts(base, dims, transports);
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn from_parts(base: FiniteGroupoid, dims: Vec<usize>, transports: Vec<Matrix>) -> Self {
        LocalSystem {
            data: Arc::new(SystemData {
                base,
                dims,
                transports,
            }),
        }
    }

    /// Builds a system from transports on some morphisms, closing under
    /// inverses and composites. Fails if the given data is inconsistent or
    /// does not determine every transport.
    pub fn generated(
        base: FiniteGroupoid,
        dims: Vec<usize>,
        given: &BTreeMap<usize, Matrix>,
    ) -> Result<Self> {
        let n = base.num_morphisms();
        if dims.len() != base.num_objects() {
            return Err(Error::InvalidSystem {
                morphism: 0,
                reason: format!("{} dimensions for {} objects", dims.len(), base.num_objects()),
            });
        }
        let mut t: Vec<Option<Matrix>> = vec![None; n];
        let conflict = |m: usize| Error::InvalidSystem {
            morphism: m,
            reason: "transport is inconsistent with composition".into(),
        };
        for (&m, a) in given {
            if m >= n {
                return Err(Error::InvalidSystem {
                    morphism: m,
                    reason: "no such morphism".into(),
                });
            }
            let (s, tg) = (dims[base.source(m)], dims[base.target(m)]);
            if a.shape() != (tg, s) {
                return Err(Error::InvalidSystem {
                    morphism: m,
                    reason: format!("expected a {tg}x{s} matrix, got {}x{}", a.rows(), a.cols()),
                });
            }
            t[m] = Some(a.clone());
        }
        for x in 0..base.num_objects() {
            let id = base.identity(x);
            match &t[id] {
                Some(a) if !a.is_identity() => {
                    return Err(Error::InvalidSystem {
                        morphism: id,
                        reason: "identity must transport by the identity matrix".into(),
                    })
                }
                _ => t[id] = Some(Matrix::identity(dims[x])),
            }
        }
        let mut pairs: Vec<_> = base.composition_table().iter().map(|(&k, &v)| (k, v)).collect();
        pairs.sort_unstable();
        loop {
            let mut changed = false;
            for m in 0..n {
                let Some(a) = t[m].clone() else { continue };
                let inv = base.inverse(m);
                if t[inv].is_none() {
                    let b = a.inverse().ok_or(Error::InvalidSystem {
                        morphism: m,
                        reason: "transport is not invertible".into(),
                    })?;
                    t[inv] = Some(b);
                    changed = true;
                }
            }
            for &((g, f), h) in &pairs {
                if let (Some(a), Some(b)) = (&t[g], &t[f]) {
                    let c = a * b;
                    match &t[h] {
                        None => {
                            t[h] = Some(c);
                            changed = true;
                        }
                        Some(old) if *old != c => return Err(conflict(h)),
                        _ => {}
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut transports = Vec::with_capacity(n);
        for (m, a) in t.into_iter().enumerate() {
            transports.push(a.ok_or(Error::InvalidSystem {
                morphism: m,
                reason: "transport is not determined by the given data".into(),
            })?);
        }
        Self::new(base, dims, transports)
    }

    /// Checks shapes, identities, composites and invertibility.
    pub fn validate(&self) -> Result<()> {
        let d = &*self.data;
        let bad = |morphism: usize, reason: String| Err(Error::InvalidSystem { morphism, reason });
        for (m, a) in d.transports.iter().enumerate() {
            let (s, t) = (d.dims[d.base.source(m)], d.dims[d.base.target(m)]);
            if a.shape() != (t, s) {
                return bad(m, format!("expected a {t}x{s} matrix, got {}x{}", a.rows(), a.cols()));
            }
            if !a.is_invertible() {
                return bad(m, "transport is not invertible".into());
            }
        }
        for x in 0..d.base.num_objects() {
            let id = d.base.identity(x);
            if !d.transports[id].is_identity() {
                return bad(id, "identity must transport by the identity matrix".into());
            }
        }
        let mut pairs: Vec<_> = d.base.composition_table().iter().collect();
        pairs.sort_unstable();
        for (&(g, f), &h) in pairs {
            if d.transports[h] != &d.transports[g] * &d.transports[f] {
                return bad(h, format!("transport of {g}∘{f} is not the product of transports"));
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &FiniteGroupoid {
        &self.data.base
    }

    pub fn dim(&self, x: usize) -> usize {
        self.data.dims[x]
    }

    pub fn dims(&self) -> &[usize] {
        &self.data.dims
    }

    pub fn total_dim(&self) -> usize {
        self.data.dims.iter().sum()
    }

    pub fn transport(&self, m: usize) -> &Matrix {
        &self.data.transports[m]
    }

    pub fn transports(&self) -> &[Matrix] {
        &self.data.transports
    }

    /// A representation of `group` on `ℚ^dim`, as a system over `BG`.
    pub fn representation(group: &Group, dim: usize, matrices: Vec<Matrix>) -> Result<Self> {
        Self::new(FiniteGroupoid::delooping(group), vec![dim], matrices)
    }

    /// The sign character of ℤ/2 over `Bℤ/2`.
    pub fn sign() -> Self {
        Self::representation(
            &Group::cyclic(2),
            1,
            vec![Matrix::scalar(int(1)), Matrix::scalar(int(-1))],
        )
        .expect("sign character")
    }

    /// The regular representation: `g` permutes basis vectors `e_h ↦ e_{gh}`.
    pub fn regular(group: &Group) -> Self {
        let n = group.order();
        let mats = group
            .elements()
            .map(|g| {
                let mut m = Matrix::zeros(n, n);
                for h in 0..n {
                    m[(group.mul(g, h), h)] = int(1);
                }
                m
            })
            .collect();
        Self::representation(group, n, mats).expect("regular representation")
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
}

pub fn unit_system(x: &FiniteGroupoid) -> LocalSystem {
    constant_system(x, 1)
}

/// `ℚ^n` at every object with identity transports.
pub fn constant_system(x: &FiniteGroupoid, n: usize) -> LocalSystem {
    LocalSystem::from_parts(
        x.clone(),
        vec![n; x.num_objects()],
        vec![Matrix::identity(n); x.num_morphisms()],
    )
}

fn same_base(a: &LocalSystem, b: &LocalSystem) -> Result<()> {
    if a.base() != b.base() {
        return Err(Error::BaseMismatch("systems live over different groupoids".into()));
    }
    Ok(())
}

/// Objectwise tensor; basis `e_i ⊗ e_j` has index `i * dim B + j`.
pub fn tensor(a: &LocalSystem, b: &LocalSystem) -> Result<LocalSystem> {
    same_base(a, b)?;
    Ok(LocalSystem::from_parts(
        a.base().clone(),
        a.dims().iter().zip(b.dims()).map(|(p, q)| p * q).collect(),
        a.transports().iter().zip(b.transports()).map(|(s, t)| s.kron(t)).collect(),
    ))
}

/// Objectwise dual with the dual basis; transports are inverse-transposes,
/// so `dual(dual(A)) == A` exactly.
pub fn dual(a: &LocalSystem) -> LocalSystem {
    let g = a.base();
    LocalSystem::from_parts(
        g.clone(),
        a.dims().to_vec(),
        (0..g.num_morphisms())
            .map(|m| a.transport(g.inverse(m)).transpose())
            .collect(),
    )
}

pub fn pullback(f: &GroupoidFunctor, a: &LocalSystem) -> Result<LocalSystem> {
    if f.codomain() != a.base() {
        return Err(Error::BaseMismatch("system is not over the codomain of the functor".into()));
    }
    Ok(LocalSystem::from_parts(
        f.domain().clone(),
        f.object_map().iter().map(|&y| a.dim(y)).collect(),
        f.morphism_map().iter().map(|&n| a.transport(n).clone()).collect(),
    ))
}

/// A natural transformation between local systems over one base.
#[derive(Clone, PartialEq, Eq)]
pub struct SystemMap {
    source: LocalSystem,
    target: LocalSystem,
    components: Vec<Matrix>,
}

impl fmt::Debug for SystemMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.components).finish()
    }
}

impl SystemMap {
    pub fn new(source: LocalSystem, target: LocalSystem, components: Vec<Matrix>) -> Result<Self> {
        same_base(&source, &target)?;
        let h = Self::from_parts(source, target, components);
        h.validate()?;
        Ok(h)
    }

    pub(crate) fn from_parts(source: LocalSystem, target: LocalSystem, components: Vec<Matrix>) -> Self {
        SystemMap {
            source,
            target,
            components,
        }
    }

    /// Checks shapes and naturality against every morphism of the base.
    pub fn validate(&self) -> Result<()> {
        let g = self.source.base();
        if self.components.len() != g.num_objects() {
            return Err(Error::InvalidMap("component map is not total".into()));
        }
        for (x, c) in self.components.iter().enumerate() {
            if c.shape() != (self.target.dim(x), self.source.dim(x)) {
                return Err(Error::InvalidMap(format!("component at object {x} has the wrong shape")));
            }
        }
        for m in 0..g.num_morphisms() {
            let (x, y) = (g.source(m), g.target(m));
            let lhs = &self.components[y] * self.source.transport(m);
            let rhs = self.target.transport(m) * &self.components[x];
            if lhs != rhs {
                return Err(Error::InvalidMap(format!("naturality fails at morphism {m}")));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &LocalSystem {
        &self.source
    }

    pub fn target(&self) -> &LocalSystem {
        &self.target
    }

    pub fn component(&self, x: usize) -> &Matrix {
        &self.components[x]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn identity(a: &LocalSystem) -> Self {
        Self::from_parts(
            a.clone(),
            a.clone(),
            a.dims().iter().map(|&d| Matrix::identity(d)).collect(),
        )
    }

    pub fn zero(a: &LocalSystem, b: &LocalSystem) -> Result<Self> {
        same_base(a, b)?;
        Ok(Self::from_parts(
            a.clone(),
            b.clone(),
            a.dims().iter().zip(b.dims()).map(|(&p, &q)| Matrix::zeros(q, p)).collect(),
        ))
    }

    /// Multiplies every component by `q`.
    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_parts(
            self.source.clone(),
            self.target.clone(),
            self.components.iter().map(|c| c.scale(q)).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// The objectwise inverse, if every component is invertible.
    pub fn inverse(&self) -> Result<Self> {
        let comps = self
            .components
            .iter()
            .enumerate()
            .map(|(x, c)| {
                c.inverse()
                    .ok_or_else(|| Error::NotAnEquivalence(format!("component at object {x} is singular")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(self.target.clone(), self.source.clone(), comps))
    }

    pub fn is_equivalence(&self) -> bool {
        self.components.iter().all(Matrix::is_invertible)
    }
}

/// `g ∘ f`.
pub fn compose(g: &SystemMap, f: &SystemMap) -> Result<SystemMap> {
    if f.target != g.source {
        return Err(Error::Composability("target of the first map is not the source of the second".into()));
    }
    Ok(SystemMap::from_parts(
        f.source.clone(),
        g.target.clone(),
        g.components.iter().zip(&f.components).map(|(a, b)| a * b).collect(),
    ))
}

/// Composes a chain given in application order: `maps[n-1] ∘ … ∘ maps[0]`.
pub fn compose_all(maps: &[&SystemMap]) -> Result<SystemMap> {
    let (first, rest) = maps
        .split_first()
        .ok_or_else(|| Error::Composability("empty chain".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, h| compose(h, &acc))
}

pub fn identity_map(a: &LocalSystem) -> SystemMap {
    SystemMap::identity(a)
}

/// The objectwise inverse, or `NotAnEquivalence`.
pub fn is_equivalence(h: &SystemMap) -> Result<SystemMap> {
    h.inverse()
}

pub fn tensor_maps(h: &SystemMap, k: &SystemMap) -> Result<SystemMap> {
    Ok(SystemMap::from_parts(
        tensor(&h.source, &k.source)?,
        tensor(&h.target, &k.target)?,
        h.components.iter().zip(&k.components).map(|(a, b)| a.kron(b)).collect(),
    ))
}

/// `𝔻h : 𝔻B → 𝔻A`, componentwise transpose.
pub fn dual_map(h: &SystemMap) -> SystemMap {
    SystemMap::from_parts(
        dual(&h.target),
        dual(&h.source),
        h.components.iter().map(Matrix::transpose).collect(),
    )
}

pub fn pullback_map(f: &GroupoidFunctor, h: &SystemMap) -> Result<SystemMap> {
    Ok(SystemMap::from_parts(
        pullback(f, &h.source)?,
        pullback(f, &h.target)?,
        f.object_map().iter().map(|&y| h.components[y].clone()).collect(),
    ))
}

/// Symmetry `A ⊗ B → B ⊗ A`.
pub fn braiding(a: &LocalSystem, b: &LocalSystem) -> Result<SystemMap> {
    let comps = a
        .dims()
        .iter()
        .zip(b.dims())
        .map(|(&p, &q)| {
            let mut m = Matrix::zeros(p * q, p * q);
            for i in 0..p {
                for j in 0..q {
                    m[(j * p + i, i * q + j)] = int(1);
                }
            }
            m
        })
        .collect();
    Ok(SystemMap::from_parts(tensor(a, b)?, tensor(b, a)?, comps))
}

/// Right unitor `A ⊗ 1 → A`.
pub fn right_unitor(a: &LocalSystem) -> SystemMap {
    let t = tensor(a, &unit_system(a.base())).expect("same base");
    SystemMap::from_parts(t, a.clone(), a.dims().iter().map(|&d| Matrix::identity(d)).collect())
}

/// Associator `(A ⊗ B) ⊗ C → A ⊗ (B ⊗ C)`; identity matrices under the
/// Kronecker convention.
pub fn associator(a: &LocalSystem, b: &LocalSystem, c: &LocalSystem) -> Result<SystemMap> {
    let src = tensor(&tensor(a, b)?, c)?;
    let tgt = tensor(a, &tensor(b, c)?)?;
    Ok(SystemMap::from_parts(
        src.clone(),
        tgt,
        src.dims().iter().map(|&d| Matrix::identity(d)).collect(),
    ))
}

/// Canonical `A → 𝔻𝔻A`; identity matrices since `𝔻𝔻A == A`.
pub fn double_dual(a: &LocalSystem) -> SystemMap {
    SystemMap::from_parts(a.clone(), dual(&dual(a)), a.dims().iter().map(|&d| Matrix::identity(d)).collect())
}

/// A basis of the space of natural maps `A → B`, component by component:
/// intertwiners at each root, transported along the transversal.
pub fn natural_map_basis(a: &LocalSystem, b: &LocalSystem) -> Result<Vec<SystemMap>> {
    if a.base() != b.base() {
        return Err(Error::BaseMismatch("systems live over different groupoids".into()));
    }
    let x = a.base();
    let comps = x.components();
    let t = x.transversal(&comps);
    let mut basis = Vec::new();
    for (c, &r) in comps.roots.iter().enumerate() {
        let (da, db) = (a.dim(r), b.dim(r));
        let auts = x.automorphisms(r);
        // Row-major unknowns `X[i][j]`, one block of equations `B(g)X = XA(g)` per automorphism.
        let mut eqs = Matrix::zeros(auts.len() * db * da, db * da);
        for (n, &g) in auts.iter().enumerate() {
            let (ag, bg) = (a.transport(g), b.transport(g));
            for i in 0..db {
                for j in 0..da {
                    let row = n * db * da + i * da + j;
                    for k in 0..db {
                        eqs[(row, k * da + j)] += &bg[(i, k)];
                    }
                    for k in 0..da {
                        eqs[(row, i * da + k)] -= &ag[(k, j)];
                    }
                }
            }
        }
        let ker = eqs.kernel();
        for v in 0..ker.dim() {
            let root_map = Matrix::from_fn(db, da, |i, j| ker.inclusion[(i * da + j, v)].clone());
            let comps_v = (0..x.num_objects())
                .map(|o| {
                    if comps.of[o] == c {
                        let back = a.transport(x.inverse(t[o]));
                        &(b.transport(t[o]) * &root_map) * back
                    } else {
                        Matrix::zeros(b.dim(o), a.dim(o))
                    }
                })
                .collect();
            basis.push(SystemMap::from_parts(a.clone(), b.clone(), comps_v));
        }
    }
    Ok(basis)
}

/// A nondegenerate symmetric pairing `A → 𝔻A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct {
    carrier: LocalSystem,
    pairing: SystemMap,
}

impl InnerProduct {
    pub fn new(pairing: SystemMap) -> Result<Self> {
        let carrier = pairing.source.clone();
        if pairing.target != dual(&carrier) {
            return Err(Error::InvalidInnerProduct("pairing does not land in the dual".into()));
        }
        pairing
            .validate()
            .map_err(|e| Error::InvalidInnerProduct(e.to_string()))?;
        for (x, p) in pairing.components.iter().enumerate() {
            if *p != p.transpose() {
                return Err(Error::InvalidInnerProduct(format!("not symmetric at object {x}")));
            }
            if !p.is_invertible() {
                return Err(Error::InvalidInnerProduct(format!("degenerate at object {x}")));
            }
        }
        Ok(InnerProduct { carrier, pairing })
    }

    /// Identity Gram matrices; valid only when every transport is orthogonal.
    pub fn standard(a: &LocalSystem) -> Result<Self> {
        let comps = a.dims().iter().map(|&d| Matrix::identity(d)).collect();
        Self::new(SystemMap::from_parts(a.clone(), dual(a), comps))
    }

    /// Averages the standard form over each component's root automorphisms
    /// and transports it to the other objects.
    pub fn averaged(a: &LocalSystem) -> Self {
        let g = a.base();
        let comps = g.components();
        let t = g.transversal(&comps);
        let root_forms: Vec<Matrix> = comps
            .roots
            .iter()
            .map(|&r| {
                g.automorphisms(r).into_iter().fold(Matrix::zeros(a.dim(r), a.dim(r)), |acc, m| {
                    let s = a.transport(m);
                    &acc + &(&s.transpose() * s)
                })
            })
            .collect();
        let forms = (0..g.num_objects())
            .map(|o| {
                let back = a.transport(g.inverse(t[o]));
                &(&back.transpose() * &root_forms[comps.of[o]]) * back
            })
            .collect();
        Self::new(SystemMap::from_parts(a.clone(), dual(a), forms)).expect("averaged form is an inner product")
    }

    pub fn carrier(&self) -> &LocalSystem {
        &self.carrier
    }

    pub fn pairing(&self) -> &SystemMap {
        &self.pairing
    }

    pub fn gram(&self, x: usize) -> &Matrix {
        self.pairing.component(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ratio;

    fn bz2() -> FiniteGroupoid {
        FiniteGroupoid::delooping(&Group::cyclic(2))
    }

    #[test]
    fn unit_systems() {
        for g in [FiniteGroupoid::point(), bz2(), FiniteGroupoid::discrete(3)] {
            let u = unit_system(&g);
            u.validate().unwrap();
            assert!(u.dims().iter().all(|&d| d == 1));
            assert!(u.transports().iter().all(Matrix::is_identity));
        }
    }

    #[test]
    fn tensor_examples() {
        let s = LocalSystem::sign();
        assert_eq!(tensor(&s, &s).unwrap(), unit_system(&bz2()));
        let d = constant_system(&FiniteGroupoid::discrete(2), 1);
        let a = LocalSystem::new(
            FiniteGroupoid::discrete(2),
            vec![2, 3],
            vec![Matrix::identity(2), Matrix::identity(3)],
        )
        .unwrap();
        assert_eq!(tensor(&a, &a).unwrap().dims(), &[4, 9]);
        assert!(matches!(tensor(&a, &s), Err(Error::BaseMismatch(_))));
        assert_eq!(tensor(&a, &unit_system(a.base())).unwrap(), a);
        let _ = d;
    }

    #[test]
    fn dual_examples() {
        let s = LocalSystem::sign();
        assert_eq!(dual(&s), s);
        let u = unit_system(&bz2());
        assert_eq!(dual(&u), u);
        let r = LocalSystem::regular(&Group::symmetric(3));
        assert_eq!(dual(&dual(&r)), r);
        double_dual(&r).validate().unwrap();
    }

    #[test]
    fn pullback_examples() {
        let s = LocalSystem::sign();
        let z2 = Group::cyclic(2);
        let trivial = GroupoidFunctor::from_homomorphism(&z2, &z2, &[0, 0]).unwrap();
        assert_eq!(pullback(&trivial, &s).unwrap(), unit_system(&bz2()));
        let id = GroupoidFunctor::identity(&bz2());
        assert_eq!(pullback(&id, &s).unwrap(), s);
        let pt = GroupoidFunctor::pick(&bz2(), 0).unwrap();
        assert_eq!(pullback(&pt, &s).unwrap().dims(), &[1]);
        assert!(pullback(&pt, &unit_system(&FiniteGroupoid::point())).is_err());
    }

    #[test]
    fn generated_systems_close_under_composition() {
        let z3 = Group::cyclic(3);
        let c = Matrix::from_i64(&[&[0, -1], &[1, -1]]);
        let given = BTreeMap::from([(1, c.clone())]);
        let a = LocalSystem::generated(FiniteGroupoid::delooping(&z3), vec![2], &given).unwrap();
        assert_eq!(a.transport(2), &(&c * &c));
        // A generator of ℤ/3 acting by 2 violates 2³ = 1.
        let given = BTreeMap::from([(1, Matrix::scalar(int(2)))]);
        let err = LocalSystem::generated(FiniteGroupoid::delooping(&z3), vec![1], &given).unwrap_err();
        assert!(matches!(err, Error::InvalidSystem { .. }));
        let err = LocalSystem::new(bz2(), vec![1], vec![Matrix::scalar(int(1)), Matrix::scalar(int(2))])
            .unwrap_err();
        assert!(matches!(err, Error::InvalidSystem { morphism: 0, .. }));
    }

    #[test]
    fn map_composition_and_inverse() {
        let p = FiniteGroupoid::point();
        let u = unit_system(&p);
        let two = SystemMap::new(u.clone(), u.clone(), vec![Matrix::scalar(int(2))]).unwrap();
        let three = SystemMap::new(u.clone(), u.clone(), vec![Matrix::scalar(int(3))]).unwrap();
        assert_eq!(compose(&three, &two).unwrap().component(0), &Matrix::scalar(int(6)));
        assert_eq!(compose(&two, &identity_map(&u)).unwrap(), two);
        assert_eq!(is_equivalence(&two).unwrap().component(0), &Matrix::scalar(ratio(1, 2)));
        let zero = SystemMap::zero(&u, &u).unwrap();
        assert!(matches!(is_equivalence(&zero), Err(Error::NotAnEquivalence(_))));
        let s = LocalSystem::sign();
        let bad = SystemMap::new(unit_system(&bz2()), s, vec![Matrix::scalar(int(1))]);
        assert!(matches!(bad, Err(Error::InvalidMap(_))));
    }

    #[test]
    fn braiding_is_natural_and_involutive() {
        let r = LocalSystem::regular(&Group::cyclic(2));
        let s = LocalSystem::sign();
        let b = braiding(&r, &s).unwrap();
        b.validate().unwrap();
        let bb = compose(&braiding(&s, &r).unwrap(), &b).unwrap();
        assert_eq!(bb, identity_map(&tensor(&r, &s).unwrap()));
        associator(&r, &s, &r).unwrap().validate().unwrap();
        right_unitor(&r).validate().unwrap();
    }

    #[test]
    fn inner_products() {
        let r = LocalSystem::regular(&Group::symmetric(3));
        let std = InnerProduct::standard(&r).unwrap();
        assert!(std.gram(0).is_identity());
        let a = LocalSystem::representation(
            &Group::cyclic(3),
            2,
            vec![
                Matrix::identity(2),
                Matrix::from_i64(&[&[0, -1], &[1, -1]]),
                Matrix::from_i64(&[&[-1, 1], &[-1, 0]]),
            ],
        )
        .unwrap();
        assert!(matches!(InnerProduct::standard(&a), Err(Error::InvalidInnerProduct(_))));
        let avg = InnerProduct::averaged(&a);
        assert_eq!(avg.gram(0), &Matrix::from_i64(&[&[4, -2], &[-2, 4]]));
    }
}
