//! Command execution. Each command yields one [`Record`], rendered either
//! as a plain line or as a JSON object carrying the same data.

use lhott_core::base_change::{
    beck_chevalley, check_triangle_identities, de_morgan_iso, dependent_product, dependent_sum, frobenius_iso,
    Square,
};
use lhott_core::matrix::format_rational;
use lhott_core::models::{dw_partition, matrix_model, SurfaceSpec};
use lhott_core::quantize::{secondary_transform, FundamentalClass, PrequantumKernel};
use lhott_core::{unit_system, Group, GroupoidFunctor, LocalSystem, Matrix, Rational};
use serde_json::{json, Map, Value};

use crate::ast::{Command, CommandKind, Entry, Span};
use crate::check::Checked;
use crate::error::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Data {
    Scalar(Rational),
    Vector(Vec<Rational>),
    Matrix(Matrix),
    System(LocalSystem),
    /// Named checks with `None` for a pass and the failure message otherwise.
    Checks(Vec<(&'static str, Option<String>)>),
    Summary { declarations: usize, commands: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    /// The statement that produced the record, in canonical form.
    pub statement: String,
    pub data: Data,
}

fn row(v: &[Rational]) -> String {
    let items: Vec<String> = v.iter().map(format_rational).collect();
    format!("[{}]", items.join(", "))
}

fn json_row(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rational(q))).collect())
}

fn json_matrix(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| json_row(r)).collect())
}

/// Non-identity morphisms, in increasing order.
fn moving(a: &LocalSystem) -> impl Iterator<Item = usize> + '_ {
    (0..a.base().num_morphisms()).filter(move |&m| !a.base().is_identity(m))
}

impl Data {
    pub fn plain(&self) -> String {
        match self {
            Data::Scalar(q) => format_rational(q),
            Data::Vector(v) => row(v),
            Data::Matrix(m) => m.to_string(),
            Data::System(a) => {
                let dims: Vec<String> = a.dims().iter().map(|d| d.to_string()).collect();
                let trans: Vec<String> = moving(a).map(|m| format!("{m}: {}", a.transport(m))).collect();
                let trans = if trans.is_empty() {
                    "{ }".to_string()
                } else {
                    format!("{{ {} }}", trans.join(", "))
                };
                format!("dims [{}] trans {trans}", dims.join(", "))
            }
            Data::Checks(checks) => checks
                .iter()
                .map(|(name, r)| match r {
                    None => format!("{name}=ok"),
                    Some(_) => format!("{name}=FAIL"),
                })
                .collect::<Vec<_>>()
                .join(" "),
            Data::Summary { declarations, commands } => {
                format!("ok: {declarations} declarations, {commands} commands")
            }
        }
    }

    pub fn json(&self) -> Value {
        match self {
            Data::Scalar(q) => Value::String(format_rational(q)),
            Data::Vector(v) => json_row(v),
            Data::Matrix(m) => json_matrix(m),
            Data::System(a) => {
                let trans: Map<String, Value> =
                    moving(a).map(|m| (m.to_string(), json_matrix(a.transport(m)))).collect();
                json!({"dims": a.dims(), "trans": trans})
            }
            Data::Checks(checks) => Value::Object(
                checks
                    .iter()
                    .map(|(name, r)| {
                        let v = match r {
                            None => Value::String("ok".into()),
                            Some(msg) => json!({"fail": msg}),
                        };
                        (name.to_string(), v)
                    })
                    .collect(),
            ),
            Data::Summary { declarations, commands } => {
                json!({"declarations": declarations, "commands": commands})
            }
        }
    }
}

impl Record {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.data.plain(),
            Format::Json => json!({"statement": self.statement, "result": self.data.json()}).to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub limit: u128,
}

fn entries(v: &[Entry]) -> Vec<Rational> {
    v.iter().map(|e| e.node.clone()).collect()
}

fn canonical_transform(k: &PrequantumKernel) -> lhott_core::Result<Matrix> {
    secondary_transform(k, &FundamentalClass::canonical(&k.corr.right)?)
}

/// Triangle identities, Frobenius reciprocity, de Morgan duality and
/// Beck-Chevalley for the pullback of `f` along itself.
pub fn axiom_suite(f: &GroupoidFunctor, a: &LocalSystem, b: &LocalSystem) -> Vec<(&'static str, Option<String>)> {
    let iso = |r: lhott_core::Result<lhott_core::SystemMap>| match r {
        Ok(m) if m.is_equivalence() => None,
        Ok(_) => Some("comparison map is not invertible".to_string()),
        Err(e) => Some(e.to_string()),
    };
    vec![
        ("triangle", check_triangle_identities(f, a, b).err().map(|e| e.to_string())),
        ("frobenius", iso(frobenius_iso(f, a, b))),
        ("de-morgan", iso(de_morgan_iso(f, a))),
        (
            "beck-chevalley",
            iso(Square::pullback(f, f).and_then(|sq| beck_chevalley(&sq, a))),
        ),
    ]
}

fn checks_failure(span: Span, checks: &[(&'static str, Option<String>)]) -> Option<Failure> {
    checks.iter().find_map(|(name, r)| {
        r.as_ref().map(|msg| Failure::Engine {
            span,
            message: format!("{name} failed: {msg}"),
        })
    })
}

pub fn run_command(env: &Checked, c: &Command, opts: Options) -> Result<Record, Failure> {
    let e = |err| Failure::engine(c.span, err);
    let data = match &c.kind {
        CommandKind::Card(x) => Data::Scalar(env.groupoid(x).map_err(Failure::Check)?.cardinality()),
        CommandKind::Sum(f, a) | CommandKind::Prod(f, a) => {
            let (f, a) = (env.functor(f).map_err(Failure::Check)?, env.system(a).map_err(Failure::Check)?);
            let k = if matches!(c.kind, CommandKind::Sum(..)) {
                dependent_sum(f, a)
            } else {
                dependent_product(f, a)
            };
            Data::System(k.map_err(e)?.system)
        }
        CommandKind::Transform(k, v) => {
            let t = canonical_transform(env.kernel(k).map_err(Failure::Check)?).map_err(e)?;
            match v {
                Some(v) => Data::Vector((&t * &Matrix::column(entries(v))).to_rows().concat()),
                None => Data::Matrix(t),
            }
        }
        CommandKind::Axioms(f, a, b) => {
            let f = env.functor(f).map_err(Failure::Check)?;
            let a = env.system(a).map_err(Failure::Check)?;
            let b = match b {
                Some(b) => env.system(b).map_err(Failure::Check)?.clone(),
                None => unit_system(f.codomain()),
            };
            Data::Checks(axiom_suite(f, a, &b))
        }
        CommandKind::Dw(g, n) => {
            let g: &Group = env.group(g).map_err(Failure::Check)?;
            Data::Scalar(dw_partition(g, SurfaceSpec { genus: n.node }, opts.limit).map_err(e)?)
        }
        CommandKind::Matrix(path, v) => {
            let k = &env.matrices[&path.node];
            match v {
                Some(v) => {
                    let r = matrix_model(k, &entries(v)).map_err(e)?;
                    if !r.equal() {
                        return Err(Failure::Engine {
                            span: c.span,
                            message: "transform disagrees with direct multiplication".into(),
                        });
                    }
                    Data::Vector(r.transform.to_rows().concat())
                }
                None => {
                    let t = canonical_transform(&lhott_core::models::matrix_kernel(k)).map_err(e)?;
                    if &t != k {
                        return Err(Failure::Engine {
                            span: c.span,
                            message: "transform does not reproduce the matrix".into(),
                        });
                    }
                    Data::Matrix(t)
                }
            }
        }
    };
    let record = Record {
        statement: c.to_string(),
        data,
    };
    Ok(record)
}

/// Runs every command in order, handing each record to `sink`. Stops at
/// the first failure; a failing axiom check is reported after its record.
pub fn run(env: &Checked, opts: Options, sink: &mut dyn FnMut(&Record)) -> Result<(), Failure> {
    for c in &env.commands {
        let r = run_command(env, c, opts)?;
        sink(&r);
        if let Data::Checks(checks) = &r.data {
            if let Some(f) = checks_failure(c.span, checks) {
                return Err(f);
            }
        }
    }
    Ok(())
}

/// The axiom suite for every declared functor, every system over its
/// domain and every system over its codomain (the unit system when none
/// is declared), in declaration order.
pub fn run_all_axioms(env: &Checked, sink: &mut dyn FnMut(&Record)) -> Result<(), Failure> {
    use crate::check::Value;
    let systems: Vec<(&String, &LocalSystem)> = env
        .bindings
        .iter()
        .filter_map(|(n, v)| match v {
            Value::System(a) => Some((n, a)),
            _ => None,
        })
        .collect();
    for (fname, v) in &env.bindings {
        let Value::Functor(f) = v else { continue };
        let unit = unit_system(f.codomain());
        let unit_name = "unit".to_string();
        let mut targets: Vec<(&String, &LocalSystem)> =
            systems.iter().copied().filter(|(_, b)| b.base() == f.codomain()).collect();
        if targets.is_empty() {
            targets.push((&unit_name, &unit));
        }
        for (aname, a) in systems.iter().filter(|(_, a)| a.base() == f.domain()) {
            for (bname, b) in &targets {
                let checks = axiom_suite(f, a, b);
                let failure = checks_failure(Span::default(), &checks);
                sink(&Record {
                    statement: format!("axioms {fname} {aname} {bname}"),
                    data: Data::Checks(checks),
                });
                if let Some(f) = failure {
                    return Err(f);
                }
            }
        }
    }
    Ok(())
}
