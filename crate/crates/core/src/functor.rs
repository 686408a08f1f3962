//! Functors between finite groupoids, natural isomorphisms, and the comma
//! constructions that model homotopy fibers and homotopy pullbacks.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::groupoid::FiniteGroupoid;

#[derive(Clone, PartialEq, Eq)]
pub struct GroupoidFunctor {
    domain: FiniteGroupoid,
    codomain: FiniteGroupoid,
    objects: Arc<Vec<usize>>,
    morphisms: Arc<Vec<usize>>,
}

impl fmt::Debug for GroupoidFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupoidFunctor({:?} -> {:?})", self.domain, self.codomain)
    }
}

impl GroupoidFunctor {
    pub fn new(
        domain: FiniteGroupoid,
        codomain: FiniteGroupoid,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Self> {
        let f = Self::from_maps(domain, codomain, objects, morphisms);
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn from_maps(
        domain: FiniteGroupoid,
        codomain: FiniteGroupoid,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Self {
        GroupoidFunctor {
            domain,
            codomain,
            objects: Arc::new(objects),
            morphisms: Arc::new(morphisms),
        }
    }

    /// Checks totality and preservation of endpoints, identities and
    /// composition.
    pub fn validate(&self) -> Result<()> {
        let (d, c) = (&self.domain, &self.codomain);
        let bad = |m: String| Err(Error::InvalidFunctor(m));
        if self.objects.len() != d.num_objects() || self.morphisms.len() != d.num_morphisms() {
            return bad("object or morphism map is not total".into());
        }
        if self.objects.iter().any(|&y| y >= c.num_objects())
            || self.morphisms.iter().any(|&n| n >= c.num_morphisms())
        {
            return bad("image out of range".into());
        }
        for m in 0..d.num_morphisms() {
            let n = self.mor(m);
            if c.source(n) != self.obj(d.source(m)) || c.target(n) != self.obj(d.target(m)) {
                return bad(format!("morphism {m} is sent to {n} with the wrong endpoints"));
            }
        }
        for x in 0..d.num_objects() {
            if self.mor(d.identity(x)) != c.identity(self.obj(x)) {
                return bad(format!("identity of object {x} is not preserved"));
            }
        }
        for (&(g, f), &h) in d.composition_table() {
            if c.compose(self.mor(g), self.mor(f)) != Some(self.mor(h)) {
                return bad(format!("composite {g}∘{f} is not preserved"));
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &FiniteGroupoid {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroupoid {
        &self.codomain
    }

    pub fn obj(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn mor(&self, m: usize) -> usize {
        self.morphisms[m]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphisms
    }

    pub fn identity(x: &FiniteGroupoid) -> Self {
        Self::from_maps(
            x.clone(),
            x.clone(),
            (0..x.num_objects()).collect(),
            (0..x.num_morphisms()).collect(),
        )
    }

    /// The unique functor to the point.
    pub fn terminal(x: &FiniteGroupoid) -> Self {
        Self::from_maps(
            x.clone(),
            FiniteGroupoid::point(),
            vec![0; x.num_objects()],
            vec![0; x.num_morphisms()],
        )
    }

    /// The functor from the point picking out object `x`.
    pub fn pick(x: &FiniteGroupoid, object: usize) -> Result<Self> {
        if object >= x.num_objects() {
            return Err(Error::UnknownObject(object));
        }
        Ok(Self::from_maps(
            FiniteGroupoid::point(),
            x.clone(),
            vec![object],
            vec![x.identity(object)],
        ))
    }

    /// `BG → BH` induced by a homomorphism given by its images.
    pub fn from_homomorphism(g: &Group, h: &Group, images: &[usize]) -> Result<Self> {
        if !g.is_homomorphism(h, images) {
            return Err(Error::InvalidFunctor("images do not define a homomorphism".into()));
        }
        Ok(Self::from_maps(
            FiniteGroupoid::delooping(g),
            FiniteGroupoid::delooping(h),
            vec![0],
            images.to_vec(),
        ))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupoidFunctor) -> Result<Self> {
        if first.codomain != self.domain {
            return Err(Error::CodomainMismatch(
                "codomain of the first functor is not the domain of the second".into(),
            ));
        }
        Ok(Self::from_maps(
            first.domain.clone(),
            self.codomain.clone(),
            first.objects.iter().map(|&x| self.obj(x)).collect(),
            first.morphisms.iter().map(|&m| self.mor(m)).collect(),
        ))
    }

    /// `(f₁, f₂) : Z → X₁ × X₂`, where `product` is `FiniteGroupoid::product(X₁, X₂).0`.
    pub fn pairing(f1: &Self, f2: &Self, product: &FiniteGroupoid) -> Result<Self> {
        if f1.domain != f2.domain {
            return Err(Error::CodomainMismatch("pairing of functors with different domains".into()));
        }
        let (no, nm) = (f2.codomain.num_objects(), f2.codomain.num_morphisms());
        if product.num_objects() != f1.codomain.num_objects() * no
            || product.num_morphisms() != f1.codomain.num_morphisms() * nm
        {
            return Err(Error::CodomainMismatch("target is not the product of the codomains".into()));
        }
        Ok(Self::from_maps(
            f1.domain.clone(),
            product.clone(),
            (0..f1.domain.num_objects()).map(|x| f1.obj(x) * no + f2.obj(x)).collect(),
            (0..f1.domain.num_morphisms()).map(|m| f1.mor(m) * nm + f2.mor(m)).collect(),
        ))
    }

    /// Fully faithful and essentially surjective.
    pub fn is_equivalence(&self) -> bool {
        let (d, c) = (&self.domain, &self.codomain);
        for a in 0..d.num_objects() {
            let fa = self.obj(a);
            let mut images: HashMap<usize, Vec<usize>> = HashMap::new();
            for &m in d.outgoing(a) {
                images.entry(d.target(m)).or_default().push(self.mor(m));
            }
            for b in 0..d.num_objects() {
                let mut img = images.remove(&b).unwrap_or_default();
                let expected = c.hom(fa, self.obj(b)).count();
                img.sort_unstable();
                img.dedup();
                if img.len() != expected || d.hom(a, b).count() != expected {
                    return false;
                }
            }
        }
        let comps = c.components();
        let mut hit = vec![false; comps.roots.len()];
        for &y in self.objects.iter() {
            hit[comps.of[y]] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// A natural isomorphism between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalIso {
    source: GroupoidFunctor,
    target: GroupoidFunctor,
    components: Vec<usize>,
}

impl NaturalIso {
    pub fn new(source: GroupoidFunctor, target: GroupoidFunctor, components: Vec<usize>) -> Result<Self> {
        let iso = NaturalIso {
            source,
            target,
            components,
        };
        iso.validate()?;
        Ok(iso)
    }

    pub fn validate(&self) -> Result<()> {
        let (f, g) = (&self.source, &self.target);
        let bad = |m: String| Err(Error::InvalidNaturalIso(m));
        if f.domain() != g.domain() || f.codomain() != g.codomain() {
            return bad("functors are not parallel".into());
        }
        let (d, c) = (f.domain(), f.codomain());
        if self.components.len() != d.num_objects() {
            return bad("component map is not total".into());
        }
        for x in 0..d.num_objects() {
            let a = self.components[x];
            if a >= c.num_morphisms() || c.source(a) != f.obj(x) || c.target(a) != g.obj(x) {
                return bad(format!("component at {x} has the wrong endpoints"));
            }
        }
        for m in 0..d.num_morphisms() {
            let (x, y) = (d.source(m), d.target(m));
            let lhs = c.compose(g.mor(m), self.components[x]);
            let rhs = c.compose(self.components[y], f.mor(m));
            if lhs.is_none() || lhs != rhs {
                return bad(format!("naturality fails at morphism {m}"));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &GroupoidFunctor {
        &self.source
    }

    pub fn target(&self) -> &GroupoidFunctor {
        &self.target
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }
}

/// The comma groupoid `f/y` with its projection to the domain of `f`.
///
/// Objects are pairs `(x, φ : f(x) → y)`; those with `φ` an identity come
/// first, so component roots prefer them.
#[derive(Clone, Debug)]
pub struct HomotopyFiber {
    pub groupoid: FiniteGroupoid,
    pub projection: GroupoidFunctor,
    labels: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl HomotopyFiber {
    /// `(x, φ)` for fiber object `o`.
    pub fn label(&self, o: usize) -> (usize, usize) {
        self.labels[o]
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    pub fn object_of(&self, x: usize, phi: usize) -> Option<usize> {
        self.index.get(&(x, phi)).copied()
    }
}

/// Position of each morphism inside its source's outgoing list.
fn outgoing_positions(g: &FiniteGroupoid) -> Vec<usize> {
    let mut pos = vec![0; g.num_morphisms()];
    for x in 0..g.num_objects() {
        for (k, &m) in g.outgoing(x).iter().enumerate() {
            pos[m] = k;
        }
    }
    pos
}

pub fn homotopy_fiber(f: &GroupoidFunctor, y: usize) -> Result<HomotopyFiber> {
    let (x_g, y_g) = (f.domain(), f.codomain());
    if y >= y_g.num_objects() {
        return Err(Error::UnknownObject(y));
    }
    let mut labels = Vec::new();
    for x in 0..x_g.num_objects() {
        if f.obj(x) == y {
            labels.push((x, y_g.identity(y)));
        }
    }
    for x in 0..x_g.num_objects() {
        for phi in y_g.hom(f.obj(x), y) {
            if !y_g.is_identity(phi) {
                labels.push((x, phi));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> =
        labels.iter().enumerate().map(|(o, &l)| (l, o)).collect();
    let pos = outgoing_positions(x_g);
    let mut offset = Vec::with_capacity(labels.len());
    let mut morphisms = Vec::new();
    let mut base = Vec::new();
    let mut inverse_pending = Vec::new();
    for (o, &(x, phi)) in labels.iter().enumerate() {
        offset.push(morphisms.len());
        for &m in x_g.outgoing(x) {
            let x2 = x_g.target(m);
            let phi2 = y_g.comp(phi, y_g.inverse(f.mor(m)));
            let o2 = index[&(x2, phi2)];
            morphisms.push((o, o2));
            base.push(m);
            inverse_pending.push((o2, x_g.inverse(m)));
        }
    }
    let mid = |o: usize, m: usize| offset[o] + pos[m];
    let inverse = inverse_pending.iter().map(|&(o, m)| mid(o, m)).collect();
    let identity = labels.iter().enumerate().map(|(o, &(x, _))| mid(o, x_g.identity(x))).collect();
    let mut composition = HashMap::new();
    for (i, &(o, o2)) in morphisms.iter().enumerate() {
        let m1 = base[i];
        let x2 = labels[o2].0;
        for &m2 in x_g.outgoing(x2) {
            composition.insert((mid(o2, m2), i), mid(o, x_g.comp(m2, m1)));
        }
    }
    let groupoid = FiniteGroupoid::from_parts(labels.len(), morphisms, identity, inverse, composition);
    let projection = GroupoidFunctor::from_maps(
        groupoid.clone(),
        x_g.clone(),
        labels.iter().map(|&(x, _)| x).collect(),
        base,
    );
    Ok(HomotopyFiber {
        groupoid,
        projection,
        labels,
        index,
    })
}

/// The iso-comma `f ↓≅ g` with its projections and the filling isomorphism
/// `f ∘ p₁ ⇒ g ∘ p₂`.
#[derive(Clone, Debug)]
pub struct IsoComma {
    pub groupoid: FiniteGroupoid,
    pub left: GroupoidFunctor,
    pub right: GroupoidFunctor,
    pub filler: NaturalIso,
    labels: Vec<(usize, usize, usize)>,
}

impl IsoComma {
    /// `(x, z, φ : f(x) → g(z))` for object `o`.
    pub fn label(&self, o: usize) -> (usize, usize, usize) {
        self.labels[o]
    }
}

pub fn iso_comma(f: &GroupoidFunctor, g: &GroupoidFunctor) -> Result<IsoComma> {
    if f.codomain() != g.codomain() {
        return Err(Error::CodomainMismatch("iso-comma of functors with different codomains".into()));
    }
    let (xg, zg, yg) = (f.domain(), g.domain(), f.codomain());
    let mut labels = Vec::new();
    for x in 0..xg.num_objects() {
        for z in 0..zg.num_objects() {
            for phi in yg.hom(f.obj(x), g.obj(z)) {
                labels.push((x, z, phi));
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> =
        labels.iter().enumerate().map(|(o, &l)| (l, o)).collect();
    let (px, pz) = (outgoing_positions(xg), outgoing_positions(zg));
    let mut offset = Vec::with_capacity(labels.len());
    let mut morphisms = Vec::new();
    let mut parts = Vec::new();
    for (o, &(x, z, phi)) in labels.iter().enumerate() {
        offset.push(morphisms.len());
        for &m in xg.outgoing(x) {
            for &n in zg.outgoing(z) {
                let phi2 = yg.comp(yg.comp(g.mor(n), phi), yg.inverse(f.mor(m)));
                let o2 = index[&(xg.target(m), zg.target(n), phi2)];
                morphisms.push((o, o2));
                parts.push((m, n));
            }
        }
    }
    let mid = |o: usize, m: usize, n: usize| {
        let (_, z, _) = labels[o];
        offset[o] + px[m] * zg.outgoing(z).len() + pz[n]
    };
    let inverse = morphisms
        .iter()
        .zip(&parts)
        .map(|(&(_, o2), &(m, n))| mid(o2, xg.inverse(m), zg.inverse(n)))
        .collect();
    let identity = labels
        .iter()
        .enumerate()
        .map(|(o, &(x, z, _))| mid(o, xg.identity(x), zg.identity(z)))
        .collect();
    let mut composition = HashMap::new();
    for (i, (&(o, o2), &(m1, n1))) in morphisms.iter().zip(&parts).enumerate() {
        let (x2, z2, _) = labels[o2];
        for &m2 in xg.outgoing(x2) {
            for &n2 in zg.outgoing(z2) {
                composition.insert((mid(o2, m2, n2), i), mid(o, xg.comp(m2, m1), zg.comp(n2, n1)));
            }
        }
    }
    let groupoid = FiniteGroupoid::from_parts(labels.len(), morphisms, identity, inverse, composition);
    let left = GroupoidFunctor::from_maps(
        groupoid.clone(),
        xg.clone(),
        labels.iter().map(|l| l.0).collect(),
        parts.iter().map(|p| p.0).collect(),
    );
    let right = GroupoidFunctor::from_maps(
        groupoid.clone(),
        zg.clone(),
        labels.iter().map(|l| l.1).collect(),
        parts.iter().map(|p| p.1).collect(),
    );
    let filler = NaturalIso {
        source: f.after(&left)?,
        target: g.after(&right)?,
        components: labels.iter().map(|l| l.2).collect(),
    };
    Ok(IsoComma {
        groupoid,
        left,
        right,
        filler,
        labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    fn bz2() -> FiniteGroupoid {
        FiniteGroupoid::delooping(&Group::cyclic(2))
    }

    #[test]
    fn fiber_of_identity_is_contractible() {
        let x = FiniteGroupoid::action_groupoid(3, &Group::cyclic(3), |g, x| (g + x) % 3).unwrap();
        let id = GroupoidFunctor::identity(&x);
        for y in 0..3 {
            let fib = homotopy_fiber(&id, y).unwrap();
            fib.groupoid.validate().unwrap();
            fib.projection.validate().unwrap();
            assert_eq!(fib.label(0), (y, x.identity(y)));
            assert_eq!(fib.groupoid.cardinality(), int(1));
            assert_eq!(fib.groupoid.components().roots.len(), 1);
        }
        let p = FiniteGroupoid::point();
        let fib = homotopy_fiber(&GroupoidFunctor::identity(&p), 0).unwrap();
        assert_eq!(fib.groupoid, p);
    }

    #[test]
    fn fiber_of_point_into_bz2_is_discrete_two() {
        let f = GroupoidFunctor::pick(&bz2(), 0).unwrap();
        let fib = homotopy_fiber(&f, 0).unwrap();
        fib.groupoid.validate().unwrap();
        // Brute force: one object per φ ∈ ℤ/2, only identity morphisms.
        assert_eq!(fib.groupoid, FiniteGroupoid::discrete(2));
    }

    #[test]
    fn fiber_of_bz2_to_point_is_bz2() {
        let f = GroupoidFunctor::terminal(&bz2());
        let fib = homotopy_fiber(&f, 0).unwrap();
        fib.groupoid.validate().unwrap();
        assert_eq!(fib.groupoid, bz2());
        assert!(matches!(homotopy_fiber(&f, 1), Err(Error::UnknownObject(1))));
    }

    #[test]
    fn iso_comma_examples() {
        let p = FiniteGroupoid::point();
        let id = GroupoidFunctor::identity(&p);
        let c = iso_comma(&id, &id).unwrap();
        c.groupoid.validate().unwrap();
        assert_eq!(c.groupoid, p);

        let pt = GroupoidFunctor::pick(&bz2(), 0).unwrap();
        let c = iso_comma(&pt, &pt).unwrap();
        c.groupoid.validate().unwrap();
        c.filler.validate().unwrap();
        assert_eq!(c.groupoid, FiniteGroupoid::discrete(2));

        let x = bz2();
        let y = FiniteGroupoid::discrete(2);
        let c = iso_comma(&GroupoidFunctor::terminal(&x), &GroupoidFunctor::terminal(&y)).unwrap();
        c.groupoid.validate().unwrap();
        let (prod, _, _) = FiniteGroupoid::product(&x, &y);
        assert_eq!(c.groupoid.num_objects(), prod.num_objects());
        assert_eq!(c.groupoid.num_morphisms(), prod.num_morphisms());
        let pair = GroupoidFunctor::pairing(&c.left, &c.right, &prod).unwrap();
        pair.validate().unwrap();
        let mut objs = pair.object_map().to_vec();
        objs.sort_unstable();
        assert_eq!(objs, (0..prod.num_objects()).collect::<Vec<_>>());
        assert!(pair.is_equivalence());

        let bad = iso_comma(&GroupoidFunctor::identity(&x), &GroupoidFunctor::identity(&y));
        assert!(matches!(bad, Err(Error::CodomainMismatch(_))));
    }

    #[test]
    fn functor_validation_and_equivalences() {
        let x = bz2();
        assert!(GroupoidFunctor::new(x.clone(), x.clone(), vec![0], vec![1, 1]).is_err());
        assert!(GroupoidFunctor::new(x.clone(), x.clone(), vec![0], vec![0, 0]).is_ok());
        assert!(GroupoidFunctor::identity(&x).is_equivalence());
        assert!(!GroupoidFunctor::terminal(&x).is_equivalence());
        // The free transitive ℤ/2-set is equivalent to the point.
        let swap = FiniteGroupoid::action_groupoid(2, &Group::cyclic(2), |g, x| (g + x) % 2).unwrap();
        assert!(GroupoidFunctor::terminal(&swap).is_equivalence());
        assert!(GroupoidFunctor::pick(&swap, 1).unwrap().is_equivalence());
    }

    #[test]
    fn natural_iso_validation() {
        let x = bz2();
        let id = GroupoidFunctor::identity(&x);
        // ℤ/2 is abelian, so the generator is a natural automorphism of id.
        assert!(NaturalIso::new(id.clone(), id.clone(), vec![1]).is_ok());
        let s3 = Group::symmetric(3);
        let b = FiniteGroupoid::delooping(&s3);
        let id = GroupoidFunctor::identity(&b);
        assert!(matches!(
            NaturalIso::new(id.clone(), id, vec![1]),
            Err(Error::InvalidNaturalIso(_))
        ));
    }
}
