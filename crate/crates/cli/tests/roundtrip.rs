use lhott_cli::ast::*;
use lhott_cli::{parse, print};
use lhott_core::Rational;
use proptest::collection::vec;
use proptest::option;
use proptest::prelude::*;

fn ident() -> impl Strategy<Value = Ident> {
    "[A-Za-z_][A-Za-z0-9_']{0,5}".prop_map(|s| Spanned::new(s, Span::default()))
}

fn num() -> impl Strategy<Value = Num> {
    (0usize..1000).prop_map(|n| Spanned::new(n, Span::default()))
}

fn entry() -> impl Strategy<Value = Entry> {
    (-50i64..50, 1i64..12).prop_map(|(n, d)| Spanned::new(Rational::new(n.into(), d.into()), Span::default()))
}

fn matrix() -> impl Strategy<Value = MatrixLit> {
    vec(vec(entry(), 0..4), 0..4).prop_map(|rows| MatrixLit { rows, span: Span::default() })
}

fn rows() -> impl Strategy<Value = Vec<Vec<Num>>> {
    vec(vec(num(), 1..4), 0..4)
}

fn entries() -> impl Strategy<Value = Vec<(Num, MatrixLit)>> {
    vec((num(), matrix()), 0..4)
}

fn decl() -> impl Strategy<Value = Decl> {
    let group = prop_oneof![
        num().prop_map(GroupExpr::Cyclic),
        num().prop_map(GroupExpr::Symmetric),
        rows().prop_map(GroupExpr::Table),
    ]
    .prop_map(DeclBody::Group);
    let groupoid = prop_oneof![
        ident().prop_map(GroupoidExpr::Delooping),
        num().prop_map(GroupoidExpr::Discrete),
        (ident(), num(), rows()).prop_map(|(group, points, rows)| GroupoidExpr::Action { group, points, rows }),
        (ident(), ident()).prop_map(|(a, b)| GroupoidExpr::Product(a, b)),
        (ident(), ident()).prop_map(|(a, b)| GroupoidExpr::Union(a, b)),
    ]
    .prop_map(DeclBody::Groupoid);
    let functor_body = prop_oneof![
        Just(FunctorExpr::Terminal),
        Just(FunctorExpr::Identity),
        Just(FunctorExpr::Proj1),
        Just(FunctorExpr::Proj2),
        (vec(num(), 0..5), vec(num(), 0..5)).prop_map(|(objects, morphisms)| FunctorExpr::Explicit { objects, morphisms }),
    ];
    let functor = (ident(), ident(), functor_body)
        .prop_map(|(domain, codomain, body)| DeclBody::Functor { domain, codomain, body });
    let system_body = prop_oneof![
        Just(SystemExpr::Unit),
        (vec(num(), 0..4), entries()).prop_map(|(dims, transports)| SystemExpr::Explicit { dims, transports }),
    ];
    let system = (ident(), system_body).prop_map(|(base, body)| DeclBody::System { base, body });
    let corr = (ident(), ident(), ident(), ident(), ident()).prop_map(|(left, apex, right, left_leg, right_leg)| {
        DeclBody::Corr { left, apex, right, left_leg, right_leg }
    });
    let kernel_body = prop_oneof![Just(KernelExpr::Unit), entries().prop_map(KernelExpr::Explicit)];
    let kernel = (ident(), ident(), ident(), kernel_body)
        .prop_map(|(corr, target, source, body)| DeclBody::Kernel { corr, target, source, body });
    (ident(), prop_oneof![group, groupoid, functor, system, corr, kernel]).prop_map(|(name, body)| Decl { name, body })
}

fn command() -> impl Strategy<Value = Command> {
    let v = || option::of(vec(entry(), 0..4));
    prop_oneof![
        ident().prop_map(CommandKind::Card),
        (ident(), ident()).prop_map(|(a, b)| CommandKind::Sum(a, b)),
        (ident(), ident()).prop_map(|(a, b)| CommandKind::Prod(a, b)),
        (ident(), v()).prop_map(|(k, v)| CommandKind::Transform(k, v)),
        (ident(), ident(), option::of(ident())).prop_map(|(f, a, b)| CommandKind::Axioms(f, a, b)),
        (ident(), num()).prop_map(|(g, n)| CommandKind::Dw(g, n)),
        ("[a-z0-9_./-]{1,10}", v()).prop_map(|(p, v)| CommandKind::Matrix(Spanned::new(p, Span::default()), v)),
    ]
    .prop_map(|kind| Command { span: Span::default(), kind })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_inverts_print(declarations in vec(decl(), 0..6), commands in vec(command(), 0..6)) {
        let p = Program { declarations, commands };
        let text = print(&p);
        let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(print(&back), text);
    }
}
