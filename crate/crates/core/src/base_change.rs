//! Dependent sum and product along a functor, computed as colimits and
//! limits over homotopy fibers, and the canonical maps relating them.
//!
//! At each codomain object `y` the fiber `f/y` splits into connected
//! components. A component with root `r` (its least fiber object) contributes
//! the coinvariants (for the sum) or invariants (for the product) of
//! `Aut(r)` acting on `A(x_r)`. Every other fiber object `o` is reached from
//! the root by the transversal morphism `t_o`, which fixes its leg.

use crate::error::{Error, Result};
use crate::functor::{homotopy_fiber, GroupoidFunctor, HomotopyFiber, NaturalIso};
use crate::groupoid::Components;
use crate::linear::{
    compose, dual, pullback, tensor, unit_system, LocalSystem, SystemMap,
};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Sum,
    Product,
}

/// One component's presentation. For the sum `to` is the projection onto
/// coinvariant coordinates and `from` a section; for the product `to` is the
/// retraction and `from` the inclusion of invariants. `to * from = id`.
#[derive(Clone, Debug)]
struct Block {
    to: Matrix,
    from: Matrix,
    offset: usize,
}

#[derive(Clone, Debug)]
struct FiberPresentation {
    fiber: HomotopyFiber,
    comps: Components,
    to_root: Vec<usize>,
    blocks: Vec<Block>,
    dim: usize,
}

/// The value of `∑_f A` or `∏_f A` with its (co)cone structure maps.
#[derive(Clone, Debug)]
pub struct KanResult {
    side: Side,
    functor: GroupoidFunctor,
    input: LocalSystem,
    pub system: LocalSystem,
    at: Vec<FiberPresentation>,
}

fn present(f: &GroupoidFunctor, a: &LocalSystem, y: usize, side: Side) -> Result<FiberPresentation> {
    let fiber = homotopy_fiber(f, y)?;
    let fg = &fiber.groupoid;
    let comps = fg.components();
    let to_root = fg.transversal(&comps);
    let mut blocks = Vec::with_capacity(comps.roots.len());
    let mut dim = 0;
    for &r in &comps.roots {
        let d = a.dim(fiber.label(r).0);
        let id = Matrix::identity(d);
        let rels: Vec<Matrix> = fg
            .automorphisms(r)
            .into_iter()
            .filter(|&g| !fg.is_identity(g))
            .map(|g| a.transport(fiber.projection.mor(g)) - &id)
            .collect();
        let (to, from) = match side {
            Side::Sum => {
                let rows: Vec<Matrix> = rels.iter().map(Matrix::transpose).collect();
                let q = Matrix::vstack_all(d, &rows).cokernel_of_rows();
                (q.projection, q.section)
            }
            Side::Product => {
                let k = Matrix::vstack_all(d, &rels).kernel();
                (k.retraction, k.inclusion)
            }
        };
        let width = to.rows();
        blocks.push(Block { to, from, offset: dim });
        dim += width;
    }
    Ok(FiberPresentation {
        fiber,
        comps,
        to_root,
        blocks,
        dim,
    })
}

impl KanResult {
    fn build(f: &GroupoidFunctor, a: &LocalSystem, side: Side) -> Result<Self> {
        if f.domain() != a.base() {
            return Err(Error::BaseMismatch("system is not over the domain of the functor".into()));
        }
        let y_g = f.codomain();
        let at = (0..y_g.num_objects())
            .map(|y| present(f, a, y, side))
            .collect::<Result<Vec<_>>>()?;
        let mut kan = KanResult {
            side,
            functor: f.clone(),
            input: a.clone(),
            system: LocalSystem::from_parts(y_g.clone(), at.iter().map(|p| p.dim).collect(), Vec::new()),
            at,
        };
        let transports = (0..y_g.num_morphisms()).map(|n| kan.transport_along(n)).collect();
        kan.system = LocalSystem::from_parts(y_g.clone(), kan.system.dims().to_vec(), transports);
        Ok(kan)
    }

    fn transport_along(&self, n: usize) -> Matrix {
        let y_g = self.functor.codomain();
        let (y, y2) = (y_g.source(n), y_g.target(n));
        match self.side {
            Side::Sum => self.factor(y, self.at[y2].dim, |o| {
                let (x, phi) = self.at[y].fiber.label(o);
                let o2 = self.object(y2, x, y_g.comp(n, phi));
                self.leg(y2, o2)
            }),
            Side::Product => self.factor(y2, self.at[y].dim, |o2| {
                let (x, phi) = self.at[y2].fiber.label(o2);
                let o = self.object(y, x, y_g.comp(y_g.inverse(n), phi));
                self.leg(y, o)
            }),
        }
    }

    fn object(&self, y: usize, x: usize, phi: usize) -> usize {
        self.at[y].fiber.object_of(x, phi).expect("fiber object exists")
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn functor(&self) -> &GroupoidFunctor {
        &self.functor
    }

    pub fn input(&self) -> &LocalSystem {
        &self.input
    }

    pub fn fiber(&self, y: usize) -> &HomotopyFiber {
        &self.at[y].fiber
    }

    /// Fiber object `(x, φ)` over `y`, if `φ : f(x) → y`.
    pub fn fiber_object(&self, y: usize, x: usize, phi: usize) -> Option<usize> {
        self.at[y].fiber.object_of(x, phi)
    }

    /// Structure map at fiber object `o` over `y`: the cocone leg
    /// `A(x_o) → (∑A)(y)` or the cone leg `(∏A)(y) → A(x_o)`.
    pub fn leg(&self, y: usize, o: usize) -> Matrix {
        let p = &self.at[y];
        let c = p.comps.of[o];
        let b = &p.blocks[c];
        let base = p.fiber.projection.mor(p.to_root[o]);
        let x_g = self.functor.domain();
        match self.side {
            Side::Sum => {
                let core = &b.to * self.input.transport(x_g.inverse(base));
                let mut m = Matrix::zeros(p.dim, core.cols());
                m.set_block(b.offset, 0, &core);
                m
            }
            Side::Product => {
                let core = self.input.transport(base) * &b.from;
                let mut m = Matrix::zeros(core.rows(), p.dim);
                m.set_block(0, b.offset, &core);
                m
            }
        }
    }

    pub fn structure_maps(&self, y: usize) -> Vec<Matrix> {
        (0..self.at[y].fiber.groupoid.num_objects())
            .map(|o| self.leg(y, o))
            .collect()
    }

    /// The map induced by a compatible family of legs at `y`. For the sum the
    /// legs `A(x_o) → W` form a cocone and the result is `(∑A)(y) → W`; for
    /// the product the legs `W → A(x_o)` form a cone and the result is
    /// `W → (∏A)(y)`. Only root legs are consulted.
    pub fn factor(&self, y: usize, w: usize, legs: impl Fn(usize) -> Matrix) -> Matrix {
        let p = &self.at[y];
        match self.side {
            Side::Sum => {
                let mut m = Matrix::zeros(w, p.dim);
                for (b, &r) in p.blocks.iter().zip(&p.comps.roots) {
                    m.set_block(0, b.offset, &(&legs(r) * &b.from));
                }
                m
            }
            Side::Product => {
                let mut m = Matrix::zeros(p.dim, w);
                for (b, &r) in p.blocks.iter().zip(&p.comps.roots) {
                    m.set_block(b.offset, 0, &(&b.to * &legs(r)));
                }
                m
            }
        }
    }

    /// Checks that the structure maps commute with every fiber morphism.
    pub fn check_compatibility(&self) -> Result<()> {
        for (y, p) in self.at.iter().enumerate() {
            let fg = &p.fiber.groupoid;
            let legs = self.structure_maps(y);
            for m in 0..fg.num_morphisms() {
                let (o, o2) = (fg.source(m), fg.target(m));
                let t = self.input.transport(p.fiber.projection.mor(m));
                let ok = match self.side {
                    Side::Sum => &legs[o2] * t == legs[o],
                    Side::Product => t * &legs[o] == legs[o2],
                };
                if !ok {
                    return Err(Error::InternalAxiomFailure(format!(
                        "structure maps over object {y} are not compatible with fiber morphism {m}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `∑_f A`, the left Kan extension.
pub fn dependent_sum(f: &GroupoidFunctor, a: &LocalSystem) -> Result<KanResult> {
    KanResult::build(f, a, Side::Sum)
}

/// `∏_f A`, the right Kan extension.
pub fn dependent_product(f: &GroupoidFunctor, a: &LocalSystem) -> Result<KanResult> {
    KanResult::build(f, a, Side::Product)
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::BaseMismatch(what.into()))
    }
}

/// `∑_f h` between precomputed sums of its source and target.
pub fn induced_sum_map(src: &KanResult, tgt: &KanResult, h: &SystemMap) -> Result<SystemMap> {
    require(
        src.side == Side::Sum && tgt.side == Side::Sum && src.input == *h.source() && tgt.input == *h.target(),
        "sums do not match the map",
    )?;
    let comps = (0..src.system.base().num_objects())
        .map(|y| {
            src.factor(y, tgt.system.dim(y), |o| {
                let x = src.at[y].fiber.label(o).0;
                &tgt.leg(y, o) * h.component(x)
            })
        })
        .collect();
    Ok(SystemMap::from_parts(src.system.clone(), tgt.system.clone(), comps))
}

/// `∏_f h` between precomputed products of its source and target.
pub fn induced_product_map(src: &KanResult, tgt: &KanResult, h: &SystemMap) -> Result<SystemMap> {
    require(
        src.side == Side::Product
            && tgt.side == Side::Product
            && src.input == *h.source()
            && tgt.input == *h.target(),
        "products do not match the map",
    )?;
    let comps = (0..src.system.base().num_objects())
        .map(|y| {
            tgt.factor(y, src.system.dim(y), |o| {
                let x = tgt.at[y].fiber.label(o).0;
                h.component(x) * &src.leg(y, o)
            })
        })
        .collect();
    Ok(SystemMap::from_parts(src.system.clone(), tgt.system.clone(), comps))
}

pub fn sum_map(f: &GroupoidFunctor, h: &SystemMap) -> Result<SystemMap> {
    induced_sum_map(&dependent_sum(f, h.source())?, &dependent_sum(f, h.target())?, h)
}

pub fn product_map(f: &GroupoidFunctor, h: &SystemMap) -> Result<SystemMap> {
    induced_product_map(&dependent_product(f, h.source())?, &dependent_product(f, h.target())?, h)
}

fn codomain_system(f: &GroupoidFunctor, b: &LocalSystem) -> Result<()> {
    require(f.codomain() == b.base(), "system is not over the codomain of the functor")
}

/// Counit `ε_B : ∑_f f*B → B`, induced by the legs `B(φ)`.
pub fn sum_counit(f: &GroupoidFunctor, b: &LocalSystem) -> Result<SystemMap> {
    codomain_system(f, b)?;
    let kan = dependent_sum(f, &pullback(f, b)?)?;
    let comps = (0..b.base().num_objects())
        .map(|y| kan.factor(y, b.dim(y), |o| b.transport(kan.fiber(y).label(o).1).clone()))
        .collect();
    Ok(SystemMap::from_parts(kan.system.clone(), b.clone(), comps))
}

/// Unit `η̃_A : A → f*∑_f A`, the leg at `(x, id)`.
pub fn sum_unit(f: &GroupoidFunctor, a: &LocalSystem) -> Result<SystemMap> {
    let kan = dependent_sum(f, a)?;
    sum_unit_from(&kan)
}

fn identity_object(kan: &KanResult, x: usize) -> (usize, usize) {
    let f = &kan.functor;
    let y = f.obj(x);
    (y, kan.fiber_object(y, x, f.codomain().identity(y)).expect("identity fiber object"))
}

fn sum_unit_from(kan: &KanResult) -> Result<SystemMap> {
    let f = &kan.functor;
    let comps = (0..f.domain().num_objects())
        .map(|x| {
            let (y, o) = identity_object(kan, x);
            kan.leg(y, o)
        })
        .collect();
    Ok(SystemMap::from_parts(kan.input.clone(), pullback(f, &kan.system)?, comps))
}

/// Unit `η_B : B → ∏_f f*B`, induced by the legs `B(φ)⁻¹`.
pub fn product_unit(f: &GroupoidFunctor, b: &LocalSystem) -> Result<SystemMap> {
    codomain_system(f, b)?;
    let kan = dependent_product(f, &pullback(f, b)?)?;
    let y_g = f.codomain();
    let comps = (0..y_g.num_objects())
        .map(|y| {
            kan.factor(y, b.dim(y), |o| {
                b.transport(y_g.inverse(kan.fiber(y).label(o).1)).clone()
            })
        })
        .collect();
    Ok(SystemMap::from_parts(b.clone(), kan.system.clone(), comps))
}

/// Counit `ε̃_A : f*∏_f A → A`, the leg at `(x, id)`.
pub fn product_counit(f: &GroupoidFunctor, a: &LocalSystem) -> Result<SystemMap> {
    let kan = dependent_product(f, a)?;
    let comps = (0..f.domain().num_objects())
        .map(|x| {
            let (y, o) = identity_object(&kan, x);
            kan.leg(y, o)
        })
        .collect();
    Ok(SystemMap::from_parts(pullback(f, &kan.system)?, a.clone(), comps))
}

/// Checks all four triangle identities for `A` over the domain and `B` over
/// the codomain.
pub fn check_triangle_identities(f: &GroupoidFunctor, a: &LocalSystem, b: &LocalSystem) -> Result<()> {
    let fail = |what: &str| Err(Error::InternalAxiomFailure(format!("triangle identity fails: {what}")));
    let sa = dependent_sum(f, a)?;
    let eta = sum_unit_from(&sa)?;
    let lhs = compose(&sum_counit(f, &sa.system)?, &induced_sum_map(&sa, &dependent_sum(f, eta.target())?, &eta)?)?;
    if lhs != SystemMap::identity(&sa.system) {
        return fail("ε∑ ∘ ∑η̃");
    }
    let fb = pullback(f, b)?;
    let lhs = compose(&crate::linear::pullback_map(f, &sum_counit(f, b)?)?, &sum_unit(f, &fb)?)?;
    if lhs != SystemMap::identity(&fb) {
        return fail("f*ε ∘ η̃f*");
    }
    let lhs = compose(&product_counit(f, &fb)?, &crate::linear::pullback_map(f, &product_unit(f, b)?)?)?;
    if lhs != SystemMap::identity(&fb) {
        return fail("ε̃f* ∘ f*η");
    }
    let pa = dependent_product(f, a)?;
    let lhs = compose(&product_map(f, &product_counit(f, a)?)?, &product_unit(f, &pa.system)?)?;
    if lhs != SystemMap::identity(&pa.system) {
        return fail("∏ε̃ ∘ η∏");
    }
    Ok(())
}

fn assert_equivalence(h: SystemMap, what: &str) -> Result<SystemMap> {
    if h.is_equivalence() {
        Ok(h)
    } else {
        Err(Error::InternalAxiomFailure(format!("{what} is not invertible")))
    }
}

/// Projection formula `∑_f((f*B) ⊗ A) → B ⊗ ∑_f A`, verified invertible.
pub fn frobenius_iso(f: &GroupoidFunctor, a: &LocalSystem, b: &LocalSystem) -> Result<SystemMap> {
    codomain_system(f, b)?;
    let sa = dependent_sum(f, a)?;
    let src = dependent_sum(f, &tensor(&pullback(f, b)?, a)?)?;
    let tgt = tensor(b, &sa.system)?;
    let y_g = f.codomain();
    let comps = (0..y_g.num_objects())
        .map(|y| {
            src.factor(y, tgt.dim(y), |o| {
                let phi = src.fiber(y).label(o).1;
                b.transport(phi).kron(&sa.leg(y, o))
            })
        })
        .collect();
    assert_equivalence(SystemMap::from_parts(src.system.clone(), tgt, comps), "projection formula")
}

/// `A ⊗ ∏_f T → ∏_f((f*A) ⊗ T)` for `A` over the codomain and `T` over the
/// domain, verified invertible.
pub fn product_projection_iso(f: &GroupoidFunctor, a: &LocalSystem, t: &LocalSystem) -> Result<SystemMap> {
    codomain_system(f, a)?;
    let pt = dependent_product(f, t)?;
    let tgt = dependent_product(f, &tensor(&pullback(f, a)?, t)?)?;
    let src = tensor(a, &pt.system)?;
    let y_g = f.codomain();
    let comps = (0..y_g.num_objects())
        .map(|y| {
            tgt.factor(y, src.dim(y), |o| {
                let phi = tgt.fiber(y).label(o).1;
                a.transport(y_g.inverse(phi)).kron(&pt.leg(y, o))
            })
        })
        .collect();
    assert_equivalence(SystemMap::from_parts(src, tgt.system.clone(), comps), "product projection formula")
}

/// `∏_f 𝔻A → 𝔻∑_f A`, pairing invariants against coinvariants; verified
/// invertible.
pub fn de_morgan_iso(f: &GroupoidFunctor, a: &LocalSystem) -> Result<SystemMap> {
    let sa = dependent_sum(f, a)?;
    let pd = dependent_product(f, &dual(a))?;
    let comps = (0..f.codomain().num_objects())
        .map(|y| {
            let (s, p) = (&sa.at[y], &pd.at[y]);
            let mut m = Matrix::zeros(s.dim, p.dim);
            for (bs, bp) in s.blocks.iter().zip(&p.blocks) {
                m.set_block(bs.offset, bp.offset, &(&bs.from.transpose() * &bp.from));
            }
            m
        })
        .collect();
    assert_equivalence(
        SystemMap::from_parts(pd.system.clone(), dual(&sa.system), comps),
        "de Morgan comparison",
    )
}

/// A square `k ∘ h ⇒ g ∘ f` filled by `alpha`:
///
/// ```text
///   P --f--> Z
///   |h       |g
///   X --k--> Y
/// ```
#[derive(Clone, Debug)]
pub struct Square {
    pub h: GroupoidFunctor,
    pub f: GroupoidFunctor,
    pub k: GroupoidFunctor,
    pub g: GroupoidFunctor,
    pub alpha: NaturalIso,
}

impl Square {
    /// The homotopy pullback square of `k` and `g`.
    pub fn pullback(k: &GroupoidFunctor, g: &GroupoidFunctor) -> Result<Self> {
        let c = crate::functor::iso_comma(k, g)?;
        Ok(Square {
            h: c.left,
            f: c.right,
            k: k.clone(),
            g: g.clone(),
            alpha: c.filler,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::IncoherentSquare(m.into()));
        if self.h.domain() != self.f.domain()
            || self.h.codomain() != self.k.domain()
            || self.f.codomain() != self.g.domain()
            || self.k.codomain() != self.g.codomain()
        {
            return bad("legs do not form a square");
        }
        let kh = self.k.after(&self.h)?;
        let gf = self.g.after(&self.f)?;
        if self.alpha.source() != &kh || self.alpha.target() != &gf {
            return bad("filler does not go from k∘h to g∘f");
        }
        self.alpha
            .validate()
            .map_err(|e| Error::IncoherentSquare(e.to_string()))
    }
}

/// The comparison `f_! h* A → g* k_! A`. Returns `NotAnEquivalence` when it
/// is not invertible, which happens for squares that are not homotopy
/// pullbacks.
pub fn beck_chevalley(sq: &Square, a: &LocalSystem) -> Result<SystemMap> {
    sq.validate()?;
    require(a.base() == sq.k.domain(), "system is not over the source of k")?;
    let ka = dependent_sum(&sq.k, a)?;
    let src = dependent_sum(&sq.f, &pullback(&sq.h, a)?)?;
    let tgt = pullback(&sq.g, &ka.system)?;
    let y_g = sq.k.codomain();
    let comps = (0..sq.f.codomain().num_objects())
        .map(|z| {
            src.factor(z, tgt.dim(z), |o| {
                let (p, psi) = src.fiber(z).label(o);
                let hp = sq.h.obj(p);
                let (y0, o0) = identity_object(&ka, hp);
                let path = y_g.comp(sq.g.mor(psi), sq.alpha.component(p));
                debug_assert_eq!(y_g.source(path), y0);
                ka.system.transport(path) * &ka.leg(y0, o0)
            })
        })
        .collect();
    let m = SystemMap::from_parts(src.system.clone(), tgt, comps);
    if m.is_equivalence() {
        Ok(m)
    } else {
        Err(Error::NotAnEquivalence("Beck-Chevalley comparison is not invertible".into()))
    }
}

fn check_composable(f: &GroupoidFunctor, g: &GroupoidFunctor) -> Result<GroupoidFunctor> {
    g.after(f)
}

/// `∑_{g∘f} A → ∑_g ∑_f A`, verified invertible.
pub fn sum_composition_iso(f: &GroupoidFunctor, g: &GroupoidFunctor, a: &LocalSystem) -> Result<SystemMap> {
    let gf = check_composable(f, g)?;
    let src = dependent_sum(&gf, a)?;
    let inner = dependent_sum(f, a)?;
    let outer = dependent_sum(g, &inner.system)?;
    let comps = (0..g.codomain().num_objects())
        .map(|z| {
            src.factor(z, outer.system.dim(z), |o| {
                let (x, chi) = src.fiber(z).label(o);
                let (y, oi) = identity_object(&inner, x);
                let oo = outer.fiber_object(z, y, chi).expect("outer fiber object");
                &outer.leg(z, oo) * &inner.leg(y, oi)
            })
        })
        .collect();
    assert_equivalence(
        SystemMap::from_parts(src.system.clone(), outer.system.clone(), comps),
        "sum composition comparison",
    )
}

/// `∏_g ∏_f A → ∏_{g∘f} A`, verified invertible.
pub fn product_composition_iso(f: &GroupoidFunctor, g: &GroupoidFunctor, a: &LocalSystem) -> Result<SystemMap> {
    let gf = check_composable(f, g)?;
    let tgt = dependent_product(&gf, a)?;
    let inner = dependent_product(f, a)?;
    let outer = dependent_product(g, &inner.system)?;
    let comps = (0..g.codomain().num_objects())
        .map(|z| {
            tgt.factor(z, outer.system.dim(z), |o| {
                let (x, chi) = tgt.fiber(z).label(o);
                let (y, oi) = identity_object(&inner, x);
                let oo = outer.fiber_object(z, y, chi).expect("outer fiber object");
                &inner.leg(y, oi) * &outer.leg(z, oo)
            })
        })
        .collect();
    assert_equivalence(
        SystemMap::from_parts(outer.system.clone(), tgt.system.clone(), comps),
        "product composition comparison",
    )
}

/// The un-normalized norm `∑_f B → ∏_f B` for `B` over the domain: on the
/// component with root `r` it is induced by `Σ_{g ∈ Aut(r)} B(g)`.
pub fn norm_on_domain(f: &GroupoidFunctor, b: &LocalSystem) -> Result<SystemMap> {
    let s = dependent_sum(f, b)?;
    let p = dependent_product(f, b)?;
    let comps = (0..f.codomain().num_objects())
        .map(|y| {
            let (ps, pp) = (&s.at[y], &p.at[y]);
            let fg = &ps.fiber.groupoid;
            let mut m = Matrix::zeros(pp.dim, ps.dim);
            for ((bs, bp), &r) in ps.blocks.iter().zip(&pp.blocks).zip(&ps.comps.roots) {
                let d = b.dim(ps.fiber.label(r).0);
                let total = fg.automorphisms(r).into_iter().fold(Matrix::zeros(d, d), |acc, g| {
                    &acc + b.transport(ps.fiber.projection.mor(g))
                });
                m.set_block(bp.offset, bs.offset, &(&(&bp.to * &total) * &bs.from));
            }
            m
        })
        .collect();
    let nm = SystemMap::from_parts(s.system.clone(), p.system.clone(), comps);
    if nm.is_equivalence() {
        Ok(nm)
    } else {
        Err(Error::NonInvertibleNorm("norm is singular".into()))
    }
}

/// `∑_X A` for the functor to the point, as a plain matrix-level space.
pub fn global_sum(a: &LocalSystem) -> Result<KanResult> {
    dependent_sum(&GroupoidFunctor::terminal(a.base()), a)
}

/// `∑_X h` at the unique object of the point.
pub fn global_sum_map(h: &SystemMap) -> Result<Matrix> {
    let t = GroupoidFunctor::terminal(h.source().base());
    Ok(sum_map(&t, h)?.component(0).clone())
}

/// Fiberwise dimension check: `dim ∑_f A(y) == dim ∏_f A(y)` for all `y`.
pub fn ambidextrous_dimensions(f: &GroupoidFunctor, a: &LocalSystem) -> Result<bool> {
    Ok(dependent_sum(f, a)?.system.dims() == dependent_product(f, a)?.system.dims())
}

/// The unit of `X` as the dependent sum's input along `f`, for callers that
/// need `∑_f 1`.
pub fn sum_of_unit(f: &GroupoidFunctor) -> Result<KanResult> {
    dependent_sum(f, &unit_system(f.domain()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::linear::{identity_map, LocalSystem};
    use crate::groupoid::FiniteGroupoid;

    fn bz2() -> FiniteGroupoid {
        FiniteGroupoid::delooping(&Group::cyclic(2))
    }

    fn to_point(x: &FiniteGroupoid) -> GroupoidFunctor {
        GroupoidFunctor::terminal(x)
    }

    #[test]
    fn sums_and_products_along_identity_return_input() {
        let x = FiniteGroupoid::action_groupoid(3, &Group::symmetric(3), |g, i| {
            // S3 acting on three letters through its lexicographic listing.
            const P: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            P[g][i]
        })
        .unwrap();
        let a = crate::linear::constant_system(&x, 2);
        let id = GroupoidFunctor::identity(&x);
        let s = dependent_sum(&id, &a).unwrap();
        assert_eq!(s.system, a);
        let p = dependent_product(&id, &a).unwrap();
        assert_eq!(p.system, a);
        assert_eq!(sum_counit(&id, &a).unwrap(), identity_map(&a));
        assert_eq!(sum_unit(&id, &a).unwrap(), identity_map(&a));
        assert_eq!(product_unit(&id, &a).unwrap(), identity_map(&a));
        assert_eq!(product_counit(&id, &a).unwrap(), identity_map(&a));
    }

    #[test]
    fn sign_representation_has_no_coinvariants_or_invariants() {
        let s = LocalSystem::sign();
        let t = to_point(&bz2());
        assert_eq!(dependent_sum(&t, &s).unwrap().system.dims(), &[0]);
        assert_eq!(dependent_product(&t, &s).unwrap().system.dims(), &[0]);
        let u = unit_system(&bz2());
        assert_eq!(dependent_sum(&t, &u).unwrap().system.dims(), &[1]);
    }

    #[test]
    fn regular_representation_invariants_are_the_diagonal() {
        let r = LocalSystem::regular(&Group::cyclic(2));
        let p = dependent_product(&to_point(&bz2()), &r).unwrap();
        assert_eq!(p.system.dims(), &[1]);
        let leg = p.leg(0, 0);
        // Brute force: the invariant line of the swap is spanned by (1, 1).
        assert_eq!(leg, Matrix::from_i64(&[&[1], &[1]]));
    }

    #[test]
    fn counit_examples() {
        let t = to_point(&bz2());
        let e = sum_counit(&t, &unit_system(&FiniteGroupoid::point())).unwrap();
        assert_eq!(e.component(0), &Matrix::from_i64(&[&[1]]));
        let d2 = FiniteGroupoid::discrete(2);
        let e = sum_counit(&to_point(&d2), &unit_system(&FiniteGroupoid::point())).unwrap();
        assert_eq!(e.component(0), &Matrix::from_i64(&[&[1, 1]]));
    }

    #[test]
    fn triangle_identities_on_small_cases() {
        let r = LocalSystem::regular(&Group::symmetric(3));
        let b3 = FiniteGroupoid::delooping(&Group::symmetric(3));
        let t = to_point(&b3);
        check_triangle_identities(&t, &r, &crate::linear::constant_system(&FiniteGroupoid::point(), 2)).unwrap();
        let f = GroupoidFunctor::pick(&bz2(), 0).unwrap();
        check_triangle_identities(&f, &crate::linear::constant_system(&FiniteGroupoid::point(), 2), &LocalSystem::sign())
            .unwrap();
    }

    #[test]
    fn frobenius_examples() {
        let t = to_point(&bz2());
        let r = LocalSystem::regular(&Group::cyclic(2));
        let m = frobenius_iso(&t, &r, &unit_system(&FiniteGroupoid::point())).unwrap();
        assert_eq!(m.source().dims(), &[1]);
        assert_eq!(m.target().dims(), &[1]);
        let d2 = FiniteGroupoid::discrete(2);
        let m = frobenius_iso(
            &to_point(&d2),
            &unit_system(&d2),
            &crate::linear::constant_system(&FiniteGroupoid::point(), 3),
        )
        .unwrap();
        assert_eq!(m.source().dims(), &[6]);
    }

    #[test]
    fn de_morgan_examples() {
        let t = to_point(&bz2());
        let m = de_morgan_iso(&t, &LocalSystem::sign()).unwrap();
        assert_eq!(m.source().dims(), &[0]);
        let m = de_morgan_iso(&t, &LocalSystem::regular(&Group::cyclic(2))).unwrap();
        assert_eq!(m.source().dims(), &[1]);
        assert!(!m.is_zero());
        let x = bz2();
        let id = GroupoidFunctor::identity(&x);
        let m = de_morgan_iso(&id, &LocalSystem::sign()).unwrap();
        assert_eq!(m, identity_map(&LocalSystem::sign()));
    }

    #[test]
    fn beck_chevalley_examples() {
        let pt = GroupoidFunctor::pick(&bz2(), 0).unwrap();
        let sq = Square::pullback(&pt, &pt).unwrap();
        let one = unit_system(&FiniteGroupoid::point());
        let m = beck_chevalley(&sq, &one).unwrap();
        assert_eq!(m.source().dims(), &[2]);

        // Restrict the apex to a single object: not a pullback.
        let sub = GroupoidFunctor::pick(&sq.h.domain().clone(), 0).unwrap();
        let bad = Square {
            h: sq.h.after(&sub).unwrap(),
            f: sq.f.after(&sub).unwrap(),
            k: sq.k.clone(),
            g: sq.g.clone(),
            alpha: NaturalIso::new(
                sq.k.after(&sq.h.after(&sub).unwrap()).unwrap(),
                sq.g.after(&sq.f.after(&sub).unwrap()).unwrap(),
                vec![sq.alpha.component(0)],
            )
            .unwrap(),
        };
        assert!(matches!(beck_chevalley(&bad, &one), Err(Error::NotAnEquivalence(_))));

        let p = FiniteGroupoid::point();
        let id = GroupoidFunctor::identity(&p);
        let sq = Square::pullback(&id, &id).unwrap();
        assert!(beck_chevalley(&sq, &one).unwrap().component(0).is_identity());
    }

    #[test]
    fn composition_isos() {
        let b3 = FiniteGroupoid::delooping(&Group::symmetric(3));
        let pt = GroupoidFunctor::pick(&b3, 0).unwrap();
        let t = to_point(&b3);
        let a = crate::linear::constant_system(&FiniteGroupoid::point(), 2);
        let s = sum_composition_iso(&pt, &t, &a).unwrap();
        assert_eq!(s.source().dims(), &[2]);
        let p = product_composition_iso(&pt, &t, &a).unwrap();
        assert_eq!(p.target().dims(), &[2]);
    }
}
