//! Syntax tree. Every node that can be blamed in a diagnostic carries a
//! [`Span`]; equality ignores spans, so a reprinted and reparsed program
//! compares equal to the original.

use std::fmt;

use lhott_core::Rational;

/// 1-based line and column of the first character of a token.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub node: T,
    pub span: Span,
}

impl<T> Spanned<T> {
    pub fn new(node: T, span: Span) -> Self {
        Spanned { node, span }
    }
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl<T: Eq> Eq for Spanned<T> {}

pub type Ident = Spanned<String>;
pub type Num = Spanned<usize>;
pub type Entry = Spanned<Rational>;

/// A bracketed matrix literal. `[]` has no rows and takes its column count
/// from context.
#[derive(Clone, Debug)]
pub struct MatrixLit {
    pub rows: Vec<Vec<Entry>>,
    pub span: Span,
}

impl PartialEq for MatrixLit {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl Eq for MatrixLit {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub declarations: Vec<Decl>,
    pub commands: Vec<Command>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: Ident,
    pub body: DeclBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclBody {
    Group(GroupExpr),
    Groupoid(GroupoidExpr),
    Functor { domain: Ident, codomain: Ident, body: FunctorExpr },
    System { base: Ident, body: SystemExpr },
    Corr { left: Ident, apex: Ident, right: Ident, left_leg: Ident, right_leg: Ident },
    Kernel { corr: Ident, target: Ident, source: Ident, body: KernelExpr },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(Num),
    Symmetric(Num),
    Table(Vec<Vec<Num>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupoidExpr {
    Delooping(Ident),
    Discrete(Num),
    /// One row per group element, giving the image of each point.
    Action { group: Ident, points: Num, rows: Vec<Vec<Num>> },
    Product(Ident, Ident),
    Union(Ident, Ident),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorExpr {
    Terminal,
    Identity,
    Proj1,
    Proj2,
    Explicit { objects: Vec<Num>, morphisms: Vec<Num> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemExpr {
    Unit,
    Explicit { dims: Vec<Num>, transports: Vec<(Num, MatrixLit)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelExpr {
    Unit,
    Explicit(Vec<(Num, MatrixLit)>),
}

#[derive(Clone, Debug)]
pub struct Command {
    pub span: Span,
    pub kind: CommandKind,
}

impl PartialEq for Command {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Command {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Card(Ident),
    Sum(Ident, Ident),
    Prod(Ident, Ident),
    Transform(Ident, Option<Vec<Entry>>),
    /// A functor, a system on its domain and optionally one on its codomain.
    Axioms(Ident, Ident, Option<Ident>),
    Dw(Ident, Num),
    Matrix(Spanned<String>, Option<Vec<Entry>>),
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Card(_) => "card",
            CommandKind::Sum(..) => "sum",
            CommandKind::Prod(..) => "prod",
            CommandKind::Transform(..) => "transform",
            CommandKind::Axioms(..) => "axioms",
            CommandKind::Dw(..) => "dw",
            CommandKind::Matrix(..) => "matrix",
        }
    }
}
