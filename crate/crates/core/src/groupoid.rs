//! Finite 1-groupoids with explicit composition tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::functor::GroupoidFunctor;
use crate::group::Group;
use crate::matrix::Rational;

#[derive(Debug, PartialEq, Eq)]
struct GroupoidData {
    num_objects: usize,
    source: Vec<usize>,
    target: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    /// `(g, f) ↦ g ∘ f` for every composable pair (`target(f) == source(g)`).
    composition: HashMap<(usize, usize), usize>,
}

/// A finite groupoid. Objects are `0..num_objects()`, morphisms
/// `0..num_morphisms()`. Cloning is cheap; values are immutable.
#[derive(Clone)]
pub struct FiniteGroupoid {
    data: Arc<GroupoidData>,
    outgoing: Arc<Vec<Vec<usize>>>,
}

impl PartialEq for FiniteGroupoid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Eq for FiniteGroupoid {}

impl fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroupoid({} objects, {} morphisms)",
            self.num_objects(),
            self.num_morphisms()
        )
    }
}

/// Connected components, each represented by its least object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Component index of every object.
    pub of: Vec<usize>,
    /// Least object of each component, in increasing order.
    pub roots: Vec<usize>,
}

impl FiniteGroupoid {
    /// Builds and fully validates a groupoid from its tables.
    pub fn new(
        num_objects: usize,
        morphisms: Vec<(usize, usize)>,
        identity: Vec<usize>,
        inverse: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let g = Self::from_parts(num_objects, morphisms, identity, inverse, composition);
        g.validate()?;
        Ok(g)
    }

    /// Builds without validation; for constructions that are correct by
    /// construction. Tests run [`FiniteGroupoid::validate`] on them.
    pub(crate) fn from_parts(
        num_objects: usize,
        morphisms: Vec<(usize, usize)>,
        identity: Vec<usize>,
        inverse: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Self {
        let (source, target): (Vec<_>, Vec<_>) = morphisms.into_iter().unzip();
        let mut outgoing = vec![Vec::new(); num_objects];
        for (m, &s) in source.iter().enumerate() {
            if s < num_objects {
                outgoing[s].push(m);
            }
        }
        FiniteGroupoid {
            data: Arc::new(GroupoidData {
                num_objects,
                source,
                target,
                identity,
                inverse,
                composition,
            }),
            outgoing: Arc::new(outgoing),
        }
    }

    /// Checks ranges, typing of composites, units, inverses, totality of
    /// composition on composable pairs and associativity.
    pub fn validate(&self) -> Result<()> {
        let d = &*self.data;
        let n = d.num_objects;
        let m = d.source.len();
        let bad = |msg: String| Err(Error::InvalidGroupoid(msg));
        if d.target.len() != m || d.inverse.len() != m || d.identity.len() != n {
            return bad("table lengths disagree".into());
        }
        for i in 0..m {
            if d.source[i] >= n || d.target[i] >= n {
                return bad(format!("morphism {i} has an endpoint out of range"));
            }
        }
        for x in 0..n {
            let e = d.identity[x];
            if e >= m || d.source[e] != x || d.target[e] != x {
                return bad(format!("identity of object {x} is not an endomorphism of {x}"));
            }
        }
        let mut incoming = vec![Vec::new(); n];
        for i in 0..m {
            incoming[d.target[i]].push(i);
        }
        let mut expected_pairs = 0usize;
        for x in 0..n {
            expected_pairs += incoming[x].len() * self.outgoing[x].len();
        }
        if d.composition.len() != expected_pairs {
            return bad(format!(
                "composition table has {} entries, expected {expected_pairs}",
                d.composition.len()
            ));
        }
        for (&(g, f), &h) in &d.composition {
            if g >= m || f >= m || h >= m {
                return bad(format!("composite {g}∘{f} out of range"));
            }
            if d.target[f] != d.source[g] {
                return bad(format!("{g}∘{f} is not composable"));
            }
            if d.source[h] != d.source[f] || d.target[h] != d.target[g] {
                return bad(format!("{g}∘{f} = {h} has the wrong endpoints"));
            }
        }
        for f in 0..m {
            let (s, t) = (d.source[f], d.target[f]);
            if self.compose(f, d.identity[s]) != Some(f) || self.compose(d.identity[t], f) != Some(f) {
                return bad(format!("identities are not units for morphism {f}"));
            }
            let inv = d.inverse[f];
            if inv >= m
                || self.compose(inv, f) != Some(d.identity[s])
                || self.compose(f, inv) != Some(d.identity[t])
            {
                return bad(format!("inverse of morphism {f} is wrong"));
            }
        }
        for f in 0..m {
            for &g in &self.outgoing[d.target[f]] {
                let gf = d.composition[&(g, f)];
                for &h in &self.outgoing[d.target[g]] {
                    let hg = d.composition[&(h, g)];
                    if d.composition[&(h, gf)] != d.composition[&(hg, f)] {
                        return bad(format!("composition is not associative on ({h}, {g}, {f})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.data.num_objects
    }

    pub fn num_morphisms(&self) -> usize {
        self.data.source.len()
    }

    pub fn source(&self, m: usize) -> usize {
        self.data.source[m]
    }

    pub fn target(&self, m: usize) -> usize {
        self.data.target[m]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.data.identity[x]
    }

    pub fn inverse(&self, m: usize) -> usize {
        self.data.inverse[m]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.data.identity[self.data.source[m]] == m
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.data.composition.get(&(g, f)).copied()
    }

    /// `g ∘ f`; panics when not composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose(g, f)
            .unwrap_or_else(|| panic!("morphisms {g} and {f} are not composable"))
    }

    pub fn outgoing(&self, x: usize) -> &[usize] {
        &self.outgoing[x]
    }

    pub fn hom(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        self.outgoing[a].iter().copied().filter(move |&m| self.target(m) == b)
    }

    pub fn automorphisms(&self, x: usize) -> Vec<usize> {
        self.hom(x, x).collect()
    }

    pub fn composition_table(&self) -> &HashMap<(usize, usize), usize> {
        &self.data.composition
    }

    pub fn components(&self) -> Components {
        let n = self.num_objects();
        let mut of = vec![usize::MAX; n];
        let mut roots = Vec::new();
        for x in 0..n {
            if of[x] != usize::MAX {
                continue;
            }
            let c = roots.len();
            roots.push(x);
            // Hom-sets are closed under composition, so every object of the
            // component is the target of some morphism out of the root.
            for &m in self.outgoing(x) {
                of[self.target(m)] = c;
            }
        }
        Components { of, roots }
    }

    /// For each object `o`, a morphism from the root of its component to
    /// `o`: the identity at roots, else the first such morphism.
    pub fn transversal(&self, comps: &Components) -> Vec<usize> {
        let mut t = vec![usize::MAX; self.num_objects()];
        for &r in &comps.roots {
            for &m in self.outgoing(r) {
                let o = self.target(m);
                if t[o] == usize::MAX {
                    t[o] = m;
                }
            }
            t[r] = self.identity(r);
        }
        t
    }

    /// Sum over components of `1 / |Aut(root)|`.
    pub fn cardinality(&self) -> Rational {
        let comps = self.components();
        comps.roots.iter().fold(Rational::zero(), |acc, &r| {
            acc + Rational::new(BigInt::from(1), BigInt::from(self.automorphisms(r).len()))
        })
    }

    pub fn discrete(n: usize) -> Self {
        let composition = (0..n).map(|i| ((i, i), i)).collect();
        Self::from_parts(n, (0..n).map(|i| (i, i)).collect(), (0..n).collect(), (0..n).collect(), composition)
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    pub fn empty() -> Self {
        Self::discrete(0)
    }

    /// One object; morphism `g` is the group element `g`, and `h ∘ g = h·g`.
    pub fn delooping(group: &Group) -> Self {
        let n = group.order();
        let mut composition = HashMap::with_capacity(n * n);
        for h in 0..n {
            for g in 0..n {
                composition.insert((h, g), group.mul(h, g));
            }
        }
        Self::from_parts(
            1,
            vec![(0, 0); n],
            vec![group.identity()],
            (0..n).map(|g| group.inv(g)).collect(),
            composition,
        )
    }

    /// Action groupoid `X//G`. Morphism `g * n + x` is `x → g·x`, and
    /// `(h, g·x) ∘ (g, x) = (h·g, x)`.
    pub fn action_groupoid(
        num_elements: usize,
        group: &Group,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = num_elements;
        let mut table = Vec::with_capacity(group.order());
        for g in group.elements() {
            let row: Vec<usize> = (0..n).map(|x| act(g, x)).collect();
            if let Some(&bad) = row.iter().find(|&&y| y >= n) {
                return Err(Error::NotAnAction(format!("element {g} sends a point to {bad}, out of range")));
            }
            table.push(row);
        }
        for x in 0..n {
            if table[group.identity()][x] != x {
                return Err(Error::NotAnAction(format!("identity moves point {x}")));
            }
        }
        for h in group.elements() {
            for g in group.elements() {
                let hg = group.mul(h, g);
                for x in 0..n {
                    if table[h][table[g][x]] != table[hg][x] {
                        return Err(Error::NotAnAction(format!(
                            "{h}·({g}·{x}) != ({h}{g})·{x}"
                        )));
                    }
                }
            }
        }
        Ok(Self::action_from_valid_table(group, &table))
    }

    pub(crate) fn action_from_valid_table(group: &Group, table: &[Vec<usize>]) -> Self {
        let n = table.first().map_or(0, Vec::len);
        let k = group.order();
        let id = |g: usize, x: usize| g * n + x;
        let mut morphisms = Vec::with_capacity(k * n);
        let mut inverse = Vec::with_capacity(k * n);
        for g in 0..k {
            for x in 0..n {
                morphisms.push((x, table[g][x]));
                inverse.push(id(group.inv(g), table[g][x]));
            }
        }
        let mut composition = HashMap::with_capacity(k * k * n);
        for g in 0..k {
            for x in 0..n {
                let gx = table[g][x];
                for h in 0..k {
                    composition.insert((id(h, gx), id(g, x)), id(group.mul(h, g), x));
                }
            }
        }
        Self::from_parts(
            n,
            morphisms,
            (0..n).map(|x| id(group.identity(), x)).collect(),
            inverse,
            composition,
        )
    }

    /// Product groupoid with its projections. Object `(x, y)` has index
    /// `x * |Y| + y`; morphism `(m, n)` has index `m * |Mor Y| + n`.
    pub fn product(x: &Self, y: &Self) -> (Self, GroupoidFunctor, GroupoidFunctor) {
        let (no, nm) = (y.num_objects(), y.num_morphisms());
        let mut morphisms = Vec::with_capacity(x.num_morphisms() * nm);
        let mut inverse = Vec::with_capacity(x.num_morphisms() * nm);
        for m in 0..x.num_morphisms() {
            for n in 0..nm {
                morphisms.push((x.source(m) * no + y.source(n), x.target(m) * no + y.target(n)));
                inverse.push(x.inverse(m) * nm + y.inverse(n));
            }
        }
        let mut composition = HashMap::new();
        for (&(g, f), &h) in x.composition_table() {
            for (&(g2, f2), &h2) in y.composition_table() {
                composition.insert((g * nm + g2, f * nm + f2), h * nm + h2);
            }
        }
        let mut identity = Vec::with_capacity(x.num_objects() * no);
        for a in 0..x.num_objects() {
            for b in 0..no {
                identity.push(x.identity(a) * nm + y.identity(b));
            }
        }
        let p = Self::from_parts(x.num_objects() * no, morphisms, identity, inverse, composition);
        let p1 = GroupoidFunctor::from_maps(
            p.clone(),
            x.clone(),
            (0..p.num_objects()).map(|o| o / no.max(1)).collect(),
            (0..p.num_morphisms()).map(|m| m / nm.max(1)).collect(),
        );
        let p2 = GroupoidFunctor::from_maps(
            p.clone(),
            y.clone(),
            (0..p.num_objects()).map(|o| o % no.max(1)).collect(),
            (0..p.num_morphisms()).map(|m| m % nm.max(1)).collect(),
        );
        (p, p1, p2)
    }

    /// Coproduct with its inclusions; objects and morphisms of `x` come
    /// first, then those of `y` shifted.
    pub fn disjoint_union(x: &Self, y: &Self) -> (Self, GroupoidFunctor, GroupoidFunctor) {
        let (on, mn) = (x.num_objects(), x.num_morphisms());
        let mut morphisms: Vec<(usize, usize)> =
            (0..mn).map(|m| (x.source(m), x.target(m))).collect();
        morphisms.extend((0..y.num_morphisms()).map(|m| (y.source(m) + on, y.target(m) + on)));
        let mut identity: Vec<usize> = (0..on).map(|a| x.identity(a)).collect();
        identity.extend((0..y.num_objects()).map(|a| y.identity(a) + mn));
        let mut inverse: Vec<usize> = (0..mn).map(|m| x.inverse(m)).collect();
        inverse.extend((0..y.num_morphisms()).map(|m| y.inverse(m) + mn));
        let mut composition = x.composition_table().clone();
        composition.extend(
            y.composition_table()
                .iter()
                .map(|(&(g, f), &h)| ((g + mn, f + mn), h + mn)),
        );
        let u = Self::from_parts(on + y.num_objects(), morphisms, identity, inverse, composition);
        let inl = GroupoidFunctor::from_maps(
            x.clone(),
            u.clone(),
            (0..on).collect(),
            (0..mn).collect(),
        );
        let inr = GroupoidFunctor::from_maps(
            y.clone(),
            u.clone(),
            (0..y.num_objects()).map(|a| a + on).collect(),
            (0..y.num_morphisms()).map(|m| m + mn).collect(),
        );
        (u, inl, inr)
    }
}
