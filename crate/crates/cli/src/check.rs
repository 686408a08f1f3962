//! Name resolution and elaboration of declarations into validated engine
//! values.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use lhott_core::base_change::global_sum;
use lhott_core::matrix::matrix_from_text;
use lhott_core::quantize::{Correspondence, PrequantumKernel};
use lhott_core::{pullback, unit_system, FiniteGroupoid, Group, GroupoidFunctor, LocalSystem, Matrix, SystemMap};

use crate::ast::*;
use crate::error::{CheckError, CheckKind};

/// Largest symmetric group the language will build.
pub const MAX_SYMMETRIC_DEGREE: usize = 5;

#[derive(Clone, Debug)]
pub enum Value {
    Group(Group),
    Groupoid(FiniteGroupoid),
    Functor(GroupoidFunctor),
    System(LocalSystem),
    Corr(Correspondence),
    Kernel(PrequantumKernel),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Group(_) => "group",
            Value::Groupoid(_) => "groupoid",
            Value::Functor(_) => "functor",
            Value::System(_) => "system",
            Value::Corr(_) => "correspondence",
            Value::Kernel(_) => "kernel",
        }
    }
}

/// A checked program: every name bound to a validated value, matrix files
/// loaded, and every command's arguments resolved.
#[derive(Clone, Debug)]
pub struct Checked {
    /// Bindings in declaration order.
    pub bindings: Vec<(String, Value)>,
    index: HashMap<String, usize>,
    projections: HashMap<String, (GroupoidFunctor, GroupoidFunctor)>,
    pub matrices: BTreeMap<String, Matrix>,
    pub commands: Vec<Command>,
}

type CResult<T> = Result<T, CheckError>;

macro_rules! getter {
    ($name:ident, $variant:ident, $ty:ty, $what:literal) => {
        pub fn $name(&self, id: &Ident) -> CResult<&$ty> {
            match self.lookup(id)? {
                Value::$variant(v) => Ok(v),
                other => Err(CheckError::ty(
                    id.span,
                    format!("`{}` is a {}, expected a {}", id.node, other.kind(), $what),
                )),
            }
        }
    };
}

impl Checked {
    fn lookup(&self, id: &Ident) -> CResult<&Value> {
        self.index
            .get(&id.node)
            .map(|&i| &self.bindings[i].1)
            .ok_or_else(|| CheckError::name(id.span, format!("`{}` is not declared", id.node)))
    }

    getter!(group, Group, Group, "group");
    getter!(groupoid, Groupoid, FiniteGroupoid, "groupoid");
    getter!(functor, Functor, GroupoidFunctor, "functor");
    getter!(system, System, LocalSystem, "system");
    getter!(corr, Corr, Correspondence, "correspondence");
    getter!(kernel, Kernel, PrequantumKernel, "kernel");

    fn bind(&mut self, name: &Ident, v: Value) -> CResult<()> {
        if self.index.contains_key(&name.node) {
            return Err(CheckError::name(name.span, format!("`{}` is already declared", name.node)));
        }
        self.index.insert(name.node.clone(), self.bindings.len());
        self.bindings.push((name.node.clone(), v));
        Ok(())
    }

    /// System on `base`, or a type error citing `id`.
    fn system_on(&self, id: &Ident, base: &FiniteGroupoid, role: &str) -> CResult<&LocalSystem> {
        let a = self.system(id)?;
        if a.base() != base {
            return Err(CheckError::ty(id.span, format!("`{}` does not live over the {role}", id.node)));
        }
        Ok(a)
    }
}

fn engine(span: Span, e: lhott_core::Error) -> CheckError {
    CheckError::ty(span, e.to_string())
}

fn matrix_of(lit: &MatrixLit, shape: (usize, usize)) -> CResult<Matrix> {
    let rows: Vec<Vec<_>> = lit.rows.iter().map(|r| r.iter().map(|e| e.node.clone()).collect()).collect();
    let m = Matrix::try_from_rows(rows, shape.1)
        .ok_or_else(|| CheckError::ty(lit.span, "matrix rows have different lengths"))?;
    if m.shape() != shape {
        return Err(CheckError::ty(
            lit.span,
            format!("expected a {}x{} matrix, found {}x{}", shape.0, shape.1, m.rows(), m.cols()),
        ));
    }
    Ok(m)
}

fn indexed_matrices(
    entries: &[(Num, MatrixLit)],
    bound: usize,
    what: &str,
    shape: impl Fn(usize) -> (usize, usize),
) -> CResult<BTreeMap<usize, (Matrix, Span)>> {
    let mut out = BTreeMap::new();
    for (k, lit) in entries {
        if k.node >= bound {
            return Err(CheckError::ty(k.span, format!("no {what} {} (there are {bound})", k.node)));
        }
        let m = matrix_of(lit, shape(k.node))?;
        if out.insert(k.node, (m, k.span)).is_some() {
            return Err(CheckError::ty(k.span, format!("{what} {} is given twice", k.node)));
        }
    }
    Ok(out)
}

fn values(v: &[Num]) -> Vec<usize> {
    v.iter().map(|n| n.node).collect()
}

pub fn check(program: &Program, base_dir: &Path) -> CResult<Checked> {
    let mut env = Checked {
        bindings: Vec::new(),
        index: HashMap::new(),
        projections: HashMap::new(),
        matrices: BTreeMap::new(),
        commands: program.commands.clone(),
    };
    for d in &program.declarations {
        let v = elaborate(&mut env, d)?;
        env.bind(&d.name, v)?;
    }
    for c in &program.commands {
        check_command(&mut env, c, base_dir)?;
    }
    Ok(env)
}

fn elaborate(env: &mut Checked, d: &Decl) -> CResult<Value> {
    let at = d.name.span;
    Ok(match &d.body {
        DeclBody::Group(g) => Value::Group(match g {
            GroupExpr::Cyclic(n) if n.node == 0 => return Err(CheckError::ty(n.span, "cyclic group of order 0")),
            GroupExpr::Cyclic(n) => Group::cyclic(n.node),
            GroupExpr::Symmetric(n) if n.node == 0 || n.node > MAX_SYMMETRIC_DEGREE => {
                return Err(CheckError::ty(
                    n.span,
                    format!("symmetric groups are supported for degrees 1 to {MAX_SYMMETRIC_DEGREE}"),
                ))
            }
            GroupExpr::Symmetric(n) => Group::symmetric(n.node),
            GroupExpr::Table(rows) => {
                Group::from_table(rows.iter().map(|r| values(r)).collect()).map_err(|e| engine(at, e))?
            }
        }),
        DeclBody::Groupoid(g) => Value::Groupoid(match g {
            GroupoidExpr::Delooping(g) => FiniteGroupoid::delooping(env.group(g)?),
            GroupoidExpr::Discrete(n) => FiniteGroupoid::discrete(n.node),
            GroupoidExpr::Action { group, points, rows } => {
                let grp = env.group(group)?;
                if rows.len() != grp.order() {
                    return Err(CheckError::ty(
                        group.span,
                        format!("{} rows given for a group of order {}", rows.len(), grp.order()),
                    ));
                }
                if let Some(r) = rows.iter().find(|r| r.len() != points.node) {
                    return Err(CheckError::ty(
                        r.first().map_or(points.span, |n| n.span),
                        format!("row of length {} for {} points", r.len(), points.node),
                    ));
                }
                let table: Vec<Vec<usize>> = rows.iter().map(|r| values(r)).collect();
                FiniteGroupoid::action_groupoid(points.node, grp, |g, x| table[g][x]).map_err(|e| engine(at, e))?
            }
            GroupoidExpr::Product(a, b) => {
                let (p, p1, p2) = FiniteGroupoid::product(env.groupoid(a)?, env.groupoid(b)?);
                env.projections.insert(d.name.node.clone(), (p1, p2));
                p
            }
            GroupoidExpr::Union(a, b) => FiniteGroupoid::disjoint_union(env.groupoid(a)?, env.groupoid(b)?).0,
        }),
        DeclBody::Functor { domain, codomain, body } => {
            let (x, y) = (env.groupoid(domain)?.clone(), env.groupoid(codomain)?.clone());
            let f = match body {
                FunctorExpr::Terminal => {
                    if y.num_objects() != 1 || y.num_morphisms() != 1 {
                        return Err(CheckError::ty(codomain.span, "terminal functors need a one-point codomain"));
                    }
                    let (n, m) = (x.num_objects(), x.num_morphisms());
                    GroupoidFunctor::new(x, y, vec![0; n], vec![0; m])
                }
                FunctorExpr::Identity => {
                    if x != y {
                        return Err(CheckError::ty(codomain.span, "identity needs equal domain and codomain"));
                    }
                    Ok(GroupoidFunctor::identity(&x))
                }
                FunctorExpr::Proj1 | FunctorExpr::Proj2 => {
                    let (p1, p2) = env.projections.get(&domain.node).ok_or_else(|| {
                        CheckError::ty(domain.span, format!("`{}` is not declared as a product", domain.node))
                    })?;
                    let p = if *body == FunctorExpr::Proj1 { p1 } else { p2 };
                    if p.codomain() != &y {
                        return Err(CheckError::ty(codomain.span, "codomain is not the projected factor"));
                    }
                    Ok(p.clone())
                }
                FunctorExpr::Explicit { objects, morphisms } => {
                    GroupoidFunctor::new(x, y, values(objects), values(morphisms))
                }
            };
            Value::Functor(f.map_err(|e| engine(at, e))?)
        }
        DeclBody::System { base, body } => {
            let x = env.groupoid(base)?.clone();
            Value::System(match body {
                SystemExpr::Unit => unit_system(&x),
                SystemExpr::Explicit { dims, transports } => {
                    if dims.len() != x.num_objects() {
                        return Err(CheckError::ty(
                            base.span,
                            format!("{} dimensions for {} objects", dims.len(), x.num_objects()),
                        ));
                    }
                    let dims = values(dims);
                    let given = indexed_matrices(transports, x.num_morphisms(), "morphism", |m| {
                        (dims[x.target(m)], dims[x.source(m)])
                    })?;
                    let spans: BTreeMap<usize, Span> = given.iter().map(|(&m, (_, s))| (m, *s)).collect();
                    let given = given.into_iter().map(|(m, (a, _))| (m, a)).collect();
                    LocalSystem::generated(x, dims, &given).map_err(|e| match e {
                        lhott_core::Error::InvalidSystem { morphism, reason } => CheckError::ty(
                            spans.get(&morphism).copied().unwrap_or(at),
                            format!("transport at morphism {morphism}: {reason}"),
                        ),
                        e => engine(at, e),
                    })?
                }
            })
        }
        DeclBody::Corr { left, apex, right, left_leg, right_leg } => {
            let (x1, z, x2) = (env.groupoid(left)?, env.groupoid(apex)?, env.groupoid(right)?);
            let (i1, i2) = (env.functor(left_leg)?, env.functor(right_leg)?);
            for (f, id, x, side) in [(i1, left_leg, x1, left), (i2, right_leg, x2, right)] {
                if f.domain() != z || f.codomain() != x {
                    return Err(CheckError::ty(
                        id.span,
                        format!("`{}` is not a functor {} -> {}", id.node, apex.node, side.node),
                    ));
                }
            }
            Value::Corr(Correspondence::new(i1.clone(), i2.clone()).map_err(|e| engine(at, e))?)
        }
        DeclBody::Kernel { corr, target, source, body } => {
            let c = env.corr(corr)?.clone();
            let a1 = env.system_on(target, c.left.codomain(), "left context")?.clone();
            let a2 = env.system_on(source, c.right.codomain(), "right context")?.clone();
            let src = pullback(&c.right, &a2).map_err(|e| engine(at, e))?;
            let tgt = pullback(&c.left, &a1).map_err(|e| engine(at, e))?;
            let xi = match body {
                KernelExpr::Unit => {
                    if src != tgt {
                        return Err(CheckError::ty(at, "`unit` needs the two pulled-back systems to coincide"));
                    }
                    SystemMap::identity(&src)
                }
                KernelExpr::Explicit(entries) => {
                    let z = c.apex();
                    let given = indexed_matrices(entries, z.num_objects(), "apex object", |o| (tgt.dim(o), src.dim(o)))?;
                    let comps = (0..z.num_objects())
                        .map(|o| given.get(&o).map_or_else(|| Matrix::zeros(tgt.dim(o), src.dim(o)), |(m, _)| m.clone()))
                        .collect();
                    SystemMap::new(src, tgt, comps).map_err(|e| engine(at, e))?
                }
            };
            Value::Kernel(PrequantumKernel::new(c, a1, a2, xi).map_err(|e| engine(at, e))?)
        }
    })
}

fn check_vector(v: &Option<Vec<Entry>>, len: usize, span: Span) -> CResult<()> {
    match v {
        Some(v) if v.len() != len => Err(CheckError::ty(
            v.first().map_or(span, |e| e.span),
            format!("vector of length {} for an input space of dimension {len}", v.len()),
        )),
        _ => Ok(()),
    }
}

fn check_command(env: &mut Checked, c: &Command, base_dir: &Path) -> CResult<()> {
    match &c.kind {
        CommandKind::Card(x) => {
            env.groupoid(x)?;
        }
        CommandKind::Sum(f, a) | CommandKind::Prod(f, a) => {
            let f = env.functor(f)?.clone();
            env.system_on(a, f.domain(), "functor's domain")?;
        }
        CommandKind::Transform(k, v) => {
            let k = env.kernel(k)?;
            let dim = global_sum(&k.a2).map_err(|e| engine(c.span, e))?.system.dim(0);
            check_vector(v, dim, c.span)?;
        }
        CommandKind::Axioms(f, a, b) => {
            let f = env.functor(f)?.clone();
            env.system_on(a, f.domain(), "functor's domain")?;
            if let Some(b) = b {
                env.system_on(b, f.codomain(), "functor's codomain")?;
            }
        }
        CommandKind::Dw(g, _) => {
            env.group(g)?;
        }
        CommandKind::Matrix(path, v) => {
            let full: PathBuf = base_dir.join(&path.node);
            let text = std::fs::read_to_string(&full).map_err(|e| CheckError {
                kind: CheckKind::FileError,
                span: path.span,
                message: format!("cannot read `{}` ({:?})", path.node, e.kind()),
            })?;
            let m = matrix_from_text(&text).map_err(|(line, msg)| CheckError {
                kind: CheckKind::FileError,
                span: path.span,
                message: format!("`{}` line {line}: {msg}", path.node),
            })?;
            check_vector(v, m.cols(), c.span)?;
            env.matrices.insert(path.node.clone(), m);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn run_check(text: &str) -> CResult<Checked> {
        check(&parse(text).unwrap(), Path::new("."))
    }

    #[test]
    fn undeclared_system_in_kernel() {
        let e = run_check(
            "groupoid P = discrete 1\nfunctor t : P -> P = id\ncorr C = P <- P -> P via t, t\nkernel K on C : A <= A = unit",
        )
        .unwrap_err();
        assert_eq!(e.kind, CheckKind::NameError);
        assert_eq!(e.span, Span { line: 4, column: 17 });
    }

    #[test]
    fn non_multiplicative_transport_cites_morphism() {
        // In ℤ/3 the generator is morphism 1; a 1x1 transport 2 has 2³ ≠ 1.
        let e = run_check("group Z3 = cyclic 3\ngroupoid X = B Z3\nsystem A on X = dims [1] trans { 1: [[2]] }")
            .unwrap_err();
        assert_eq!(e.kind, CheckKind::TypeError);
        assert!(e.message.contains("morphism"), "{}", e.message);
        assert_eq!(e.span.line, 3);
        // Inconsistent transports given explicitly for both nontrivial elements.
        let e = run_check(
            "group Z3 = cyclic 3\ngroupoid X = B Z3\nsystem A on X = dims [1] trans { 1: [[1]] 2: [[-1]] }",
        )
        .unwrap_err();
        assert_eq!(e.kind, CheckKind::TypeError);
        assert!(e.message.starts_with("transport at morphism"), "{}", e.message);
    }

    #[test]
    fn kinds_and_duplicates() {
        let e = run_check("group G = cyclic 2\nprint card G").unwrap_err();
        assert_eq!(e.kind, CheckKind::TypeError);
        assert_eq!(e.span, Span { line: 2, column: 12 });
        let e = run_check("group G = cyclic 2\ngroup G = cyclic 3").unwrap_err();
        assert_eq!(e.kind, CheckKind::NameError);
        assert_eq!(e.span.line, 2);
    }

    #[test]
    fn base_mismatch() {
        let e = run_check(
            "groupoid X = discrete 2\ngroupoid Y = discrete 1\nfunctor t : X -> Y = terminal\nsystem A on Y = unit\nprint sum t A",
        )
        .unwrap_err();
        assert_eq!(e.kind, CheckKind::TypeError);
        assert_eq!(e.span, Span { line: 5, column: 13 });
    }

    #[test]
    fn shape_mismatch() {
        let e = run_check("group Z2 = cyclic 2\ngroupoid X = B Z2\nsystem A on X = dims [2] trans { 1: [[1]] }")
            .unwrap_err();
        assert_eq!(e.kind, CheckKind::TypeError);
        assert!(e.message.contains("2x2"));
    }

    #[test]
    fn dw_script_elaborates() {
        let c = run_check("group S3 = symmetric 3\nprint dw S3 genus 1").unwrap();
        assert_eq!(c.bindings.len(), 1);
        assert_eq!(c.commands.len(), 1);
    }

    #[test]
    fn projections_and_kernels() {
        let text = "\
groupoid X = discrete 2
groupoid Y = discrete 2
groupoid P = product X Y
functor p : P -> X = proj1
functor q : P -> Y = proj2
corr C = X <- P -> Y via p, q
system A on X = unit
system B on Y = unit
kernel K on C : A <= B = { 0: [[1]], 1: [[2]], 2: [[3]], 3: [[4]] }
print transform K [5, 6]
";
        let c = run_check(text).unwrap();
        assert_eq!(c.bindings.len(), 9);
        let e = run_check(&text.replace("[5, 6]", "[5]")).unwrap_err();
        assert_eq!(e.kind, CheckKind::TypeError);
    }
}
