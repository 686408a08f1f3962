//! Canonical rendering of a [`Program`]: declarations first, then
//! commands, one statement per line. `parse(&print(p)) == p`.

use std::fmt::{self, Write};

use lhott_core::matrix::format_rational;

use crate::ast::*;

pub fn print(p: &Program) -> String {
    p.to_string()
}

fn nums(v: &[Num]) -> String {
    v.iter().map(|n| n.node.to_string()).collect::<Vec<_>>().join(" ")
}

fn rows(v: &[Vec<Num>]) -> String {
    let body = v.iter().map(|r| nums(r)).collect::<Vec<_>>().join("; ");
    if body.is_empty() {
        "{ }".into()
    } else {
        format!("{{ {body} }}")
    }
}

fn vector(v: &[Entry]) -> String {
    let body: Vec<String> = v.iter().map(|e| format_rational(&e.node)).collect();
    format!("[{}]", body.join(", "))
}

fn matrix(m: &MatrixLit) -> String {
    let body: Vec<String> = m.rows.iter().map(|r| vector(r)).collect();
    format!("[{}]", body.join(", "))
}

fn entries(v: &[(Num, MatrixLit)]) -> String {
    if v.is_empty() {
        return "{ }".into();
    }
    let body: Vec<String> = v.iter().map(|(k, m)| format!("{}: {}", k.node, matrix(m))).collect();
    format!("{{ {} }}", body.join(", "))
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = &self.name.node;
        match &self.body {
            DeclBody::Group(g) => {
                write!(f, "group {name} = ")?;
                match g {
                    GroupExpr::Cyclic(n) => write!(f, "cyclic {}", n.node),
                    GroupExpr::Symmetric(n) => write!(f, "symmetric {}", n.node),
                    GroupExpr::Table(t) => write!(f, "table {}", rows(t)),
                }
            }
            DeclBody::Groupoid(g) => {
                write!(f, "groupoid {name} = ")?;
                match g {
                    GroupoidExpr::Delooping(g) => write!(f, "B {}", g.node),
                    GroupoidExpr::Discrete(n) => write!(f, "discrete {}", n.node),
                    GroupoidExpr::Action { group, points, rows: r } => {
                        write!(f, "action {} on {} {}", group.node, points.node, rows(r))
                    }
                    GroupoidExpr::Product(a, b) => write!(f, "product {} {}", a.node, b.node),
                    GroupoidExpr::Union(a, b) => write!(f, "union {} {}", a.node, b.node),
                }
            }
            DeclBody::Functor { domain, codomain, body } => {
                write!(f, "functor {name} : {} -> {} = ", domain.node, codomain.node)?;
                match body {
                    FunctorExpr::Terminal => f.write_str("terminal"),
                    FunctorExpr::Identity => f.write_str("id"),
                    FunctorExpr::Proj1 => f.write_str("proj1"),
                    FunctorExpr::Proj2 => f.write_str("proj2"),
                    FunctorExpr::Explicit { objects, morphisms } => write!(
                        f,
                        "{{ objects: {}; morphisms: {} }}",
                        nums(objects),
                        nums(morphisms)
                    ),
                }
            }
            DeclBody::System { base, body } => {
                write!(f, "system {name} on {} = ", base.node)?;
                match body {
                    SystemExpr::Unit => f.write_str("unit"),
                    SystemExpr::Explicit { dims, transports } => {
                        let d: Vec<String> = dims.iter().map(|n| n.node.to_string()).collect();
                        write!(f, "dims [{}] trans {}", d.join(", "), entries(transports))
                    }
                }
            }
            DeclBody::Corr { left, apex, right, left_leg, right_leg } => write!(
                f,
                "corr {name} = {} <- {} -> {} via {}, {}",
                left.node, apex.node, right.node, left_leg.node, right_leg.node
            ),
            DeclBody::Kernel { corr, target, source, body } => {
                write!(f, "kernel {name} on {} : {} <= {} = ", corr.node, target.node, source.node)?;
                match body {
                    KernelExpr::Unit => f.write_str("unit"),
                    KernelExpr::Explicit(e) => f.write_str(&entries(e)),
                }
            }
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "print {}", self.kind.name())?;
        let opt = |v: &Option<Vec<Entry>>| v.as_ref().map(|v| format!(" {}", vector(v))).unwrap_or_default();
        match &self.kind {
            CommandKind::Card(x) => write!(f, " {}", x.node),
            CommandKind::Sum(a, b) | CommandKind::Prod(a, b) => write!(f, " {} {}", a.node, b.node),
            CommandKind::Transform(k, v) => write!(f, " {}{}", k.node, opt(v)),
            CommandKind::Axioms(g, a, b) => {
                write!(f, " {} {}", g.node, a.node)?;
                match b {
                    Some(b) => write!(f, " {}", b.node),
                    None => Ok(()),
                }
            }
            CommandKind::Dw(g, n) => write!(f, " {} genus {}", g.node, n.node),
            CommandKind::Matrix(p, v) => write!(f, " \"{}\"{}", p.node, opt(v)),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for d in &self.declarations {
            writeln!(out, "{d}")?;
        }
        for c in &self.commands {
            writeln!(out, "{c}")?;
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use crate::parser::parse;

    #[test]
    fn canonical_form_is_a_fixed_point() {
        let text = "\
group G = table { 0 1; 1 0 }
groupoid X = action G on 2 { 0 1; 1 0 }
functor f : X -> P = { objects: 0 1; morphisms: 0 1 2 3 }
system A on X = dims [1, 1] trans { 2: [[-1]], 3: [] }
corr C = X <- X -> X via f, f
kernel K on C : A <= A = unit
print transform K [1/2, -3]
print matrix \"k.txt\"
print axioms f A B
";
        let p = parse(text).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(parse(&p.to_string()).unwrap(), p);
    }
}
