//! Reading problem descriptions and serialized systems from JSON. Every
//! error carries a JSON pointer to the offending value.

use std::cmp::Ordering;

use num_rational::BigRational;
use serde_json::Value;

use uniformizer_core::completion::{DiscretePresentation, GeneratorSpec};
use uniformizer_core::polyfield::{parse_rational, BaseField, RationalFunction, SparsePoly};
use uniformizer_core::uniformize::{Ambient, GeneratorExpr, TriangularSystem};
use uniformizer_core::valuation::MonomialPlace;
use uniformizer_core::valuegroup::{is_independent, is_square_free, GroupOrder, SurdScalar};

use crate::error::{CliError, CliResult};
use crate::expr::parse_expression;
use crate::series_literal::parse_series;

/// A JSON value and its pointer.
#[derive(Clone, Debug)]
pub struct Node<'a> {
    pub value: &'a Value,
    pub path: String,
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Self {
        Node {
            value,
            path: String::new(),
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> CliResult<T> {
        Err(CliError::schema(self.path.clone(), message))
    }

    fn child(&self, value: &'a Value, key: impl std::fmt::Display) -> Node<'a> {
        Node {
            value,
            path: format!("{}/{key}", self.path),
        }
    }

    /// A present, non-null field.
    pub fn opt(&self, key: &str) -> Option<Node<'a>> {
        match self.value.get(key) {
            None | Some(Value::Null) => None,
            Some(v) => Some(self.child(v, key)),
        }
    }

    pub fn field(&self, key: &str) -> CliResult<Node<'a>> {
        if !self.value.is_object() {
            return self.fail("expected an object");
        }
        self.opt(key)
            .map_or_else(|| self.fail(format!("missing field '{key}'")), Ok)
    }

    pub fn str(&self) -> CliResult<&'a str> {
        self.value
            .as_str()
            .map_or_else(|| self.fail("expected a string"), Ok)
    }

    pub fn u64(&self) -> CliResult<u64> {
        self.value
            .as_u64()
            .map_or_else(|| self.fail("expected a non-negative integer"), Ok)
    }

    pub fn i64(&self) -> CliResult<i64> {
        self.value
            .as_i64()
            .map_or_else(|| self.fail("expected an integer"), Ok)
    }

    pub fn array(&self) -> CliResult<Vec<Node<'a>>> {
        match self.value.as_array() {
            Some(items) => Ok(items
                .iter()
                .enumerate()
                .map(|(i, v)| self.child(v, i))
                .collect()),
            None => self.fail("expected an array"),
        }
    }

    pub fn strings(&self) -> CliResult<Vec<String>> {
        self.array()?
            .iter()
            .map(|n| n.str().map(str::to_string))
            .collect()
    }

    pub fn rational(&self) -> CliResult<BigRational> {
        let s = self.str()?;
        parse_rational(s).map_or_else(
            || self.fail(format!("'{s}' is not a rational number p/q")),
            Ok,
        )
    }

    pub fn expression(&self, names: &[String], base: BaseField) -> CliResult<RationalFunction> {
        parse_expression(self.str()?, names, base)
            .map_err(|e| CliError::schema(self.path.clone(), e.to_string()))
    }

    pub fn polynomial(&self, names: &[String], base: BaseField) -> CliResult<SparsePoly> {
        let r = self.expression(names, base)?;
        if !r.is_polynomial() {
            return self.fail("expected a polynomial");
        }
        Ok(r.numer().clone())
    }
}

pub fn read_base(n: &Node) -> CliResult<BaseField> {
    let kind = n.field("kind")?;
    match kind.str()? {
        "Q" => Ok(BaseField::Rationals),
        "Fp" => {
            let p = n.field("p")?;
            BaseField::prime(p.u64()?).map_err(|e| CliError::schema(p.path.clone(), e.to_string()))
        }
        other => kind.fail(format!(
            "unknown base field kind '{other}' (expected Q or Fp)"
        )),
    }
}

/// The place of a problem; discrete places carry the working precision,
/// which is 0 when no series is needed.
#[derive(Clone, Debug)]
pub enum PlaceSpec {
    Monomial(MonomialPlace),
    Discrete {
        pres: DiscretePresentation,
        precision: i64,
    },
}

impl PlaceSpec {
    pub fn var_names(&self) -> Vec<String> {
        match self {
            PlaceSpec::Monomial(p) => p.var_names(),
            PlaceSpec::Discrete { pres, .. } => pres.var_names(),
        }
    }

    pub fn ambient(&self) -> CliResult<Ambient> {
        Ok(match self {
            PlaceSpec::Monomial(p) => Ambient::Monomial(p.clone()),
            PlaceSpec::Discrete { pres, precision } => match pres.series_place(*precision)? {
                Some(s) => Ambient::Series(s),
                None => Ambient::Monomial(pres.base_place()?),
            },
        })
    }
}

fn identifier(n: &Node) -> CliResult<String> {
    let s = n.str()?;
    let mut chars = s.chars();
    let ok = chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
        && s != "O";
    if !ok {
        return n.fail(format!("'{s}' is not a usable variable name"));
    }
    Ok(s.to_string())
}

fn names_or(
    n: Option<Node>,
    len: usize,
    default: impl Fn(usize) -> String,
) -> CliResult<Vec<String>> {
    match n {
        None => Ok((1..=len).map(default).collect()),
        Some(n) => {
            let items = n.array()?;
            if items.len() != len {
                return n.fail(format!("expected {len} names, found {}", items.len()));
            }
            items.iter().map(identifier).collect()
        }
    }
}

fn read_weight(n: &Node) -> CliResult<SurdScalar> {
    let terms = n.array()?;
    let mut out = Vec::with_capacity(terms.len());
    for t in &terms {
        let q = t.field("q")?.rational()?;
        let dn = t.field("d")?;
        let d = dn.u64()?;
        if !is_square_free(d) {
            return dn.fail(format!("{d} is not a square-free positive integer"));
        }
        out.push((q, d));
    }
    let w = SurdScalar::new(out).map_err(|e| CliError::schema(n.path.clone(), e.to_string()))?;
    match w.signum() {
        Ordering::Equal => return n.fail("weight is zero"),
        Ordering::Less => return n.fail(format!("weight {w} is negative")),
        Ordering::Greater => {}
    }
    Ok(w)
}

fn read_monomial(n: &Node, base: BaseField) -> CliResult<MonomialPlace> {
    let xw = n.field("x_weights")?;
    let weights = xw
        .array()?
        .iter()
        .map(read_weight)
        .collect::<CliResult<Vec<_>>>()?;
    let rho = weights.len();
    let tau = n.field("tau")?.u64()? as usize;
    let sizes: Vec<usize> = match n.opt("lex_blocks") {
        None => (rho > 0).then_some(rho).into_iter().collect(),
        Some(lb) => {
            let sizes = lb
                .array()?
                .iter()
                .map(|s| match s.u64()? {
                    0 => s.fail("block sizes must be positive"),
                    k => Ok(k as usize),
                })
                .collect::<CliResult<Vec<_>>>()?;
            if sizes.iter().sum::<usize>() != rho {
                return lb.fail(format!("block sizes must sum to the {rho} weights"));
            }
            sizes
        }
    };
    let mut blocks = Vec::with_capacity(sizes.len());
    let mut at = 0;
    for size in sizes {
        let block = weights[at..at + size].to_vec();
        if !is_independent(&block) {
            return xw.fail(format!(
                "weights {}..{} are not rationally independent",
                at,
                at + size - 1
            ));
        }
        blocks.push(block);
        at += size;
    }
    let order =
        GroupOrder::new(blocks).map_err(|e| CliError::schema(xw.path.clone(), e.to_string()))?;
    let x_names = names_or(n.opt("x_names"), rho, |i| format!("x{i}"))?;
    let y_names = names_or(n.opt("y_names"), tau, |j| format!("y{j}"))?;
    MonomialPlace::with_names(base, order, x_names, y_names)
        .map_err(|e| CliError::schema(n.path.clone(), e.to_string()))
}

fn read_discrete(
    n: &Node,
    base: BaseField,
    precision_override: Option<i64>,
) -> CliResult<PlaceSpec> {
    let t_name = identifier(&n.field("uniformizer")?)?;
    let explicit = match n.opt("precision") {
        None => None,
        Some(p) => match p.i64()? {
            k if k >= 1 => Some(k),
            _ => return p.fail("precision must be positive"),
        },
    };
    let precision = precision_override.or(explicit);
    let (generator, precision) = match n.opt("generator") {
        None => (None, precision.unwrap_or(0)),
        Some(g) => {
            let kind = g.field("kind")?;
            let z_name = identifier(&g.field("name")?)?;
            if z_name == t_name {
                return g
                    .field("name")?
                    .fail("generator and uniformizer need distinct names");
            }
            match kind.str()? {
                "algebraic" => {
                    let names = [t_name.clone(), z_name.clone()];
                    let min_poly = g.field("min_poly")?.polynomial(&names, base)?;
                    let rn = g.field("residue")?;
                    let residue = base
                        .reduce(&rn.rational()?)
                        .map_err(|e| CliError::schema(rn.path.clone(), e.to_string()))?;
                    let Some(prec) = precision else {
                        return n.fail(
                            "missing field 'precision' (required for an algebraic generator unless --precision is given)",
                        );
                    };
                    (
                        Some(GeneratorSpec::Algebraic {
                            z_name,
                            min_poly,
                            residue,
                        }),
                        prec,
                    )
                }
                "transcendental" => {
                    let sn = g.field("series")?;
                    let series = parse_series(sn.str()?, &t_name, base)
                        .map_err(|e| CliError::schema(sn.path.clone(), e.to_string()))?;
                    // The series carries its own precision.
                    let prec = series.precision();
                    (Some(GeneratorSpec::Transcendental { z_name, series }), prec)
                }
                other => {
                    return kind.fail(format!(
                        "unknown generator kind '{other}' (expected algebraic or transcendental)"
                    ))
                }
            }
        }
    };
    Ok(PlaceSpec::Discrete {
        pres: DiscretePresentation {
            base,
            t_name,
            generator,
        },
        precision,
    })
}

pub fn read_place(
    n: &Node,
    base: BaseField,
    precision_override: Option<i64>,
) -> CliResult<PlaceSpec> {
    let kind = n.field("kind")?;
    match kind.str()? {
        "monomial" => Ok(PlaceSpec::Monomial(read_monomial(n, base)?)),
        "discrete_series" => read_discrete(n, base, precision_override),
        other => kind.fail(format!(
            "unknown place kind '{other}' (expected monomial or discrete_series)"
        )),
    }
}

pub fn read_elements(
    n: &Node,
    names: &[String],
    base: BaseField,
) -> CliResult<Vec<RationalFunction>> {
    n.array()?
        .iter()
        .map(|e| e.expression(names, base))
        .collect()
}

fn var_names(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

/// A system object, or a certificate carrying one under `result.system`.
pub fn read_system(n: &Node, precision_override: Option<i64>) -> CliResult<TriangularSystem> {
    let n = match n.opt("result") {
        Some(r) => r.field("system")?,
        None => n.clone(),
    };
    let amb = n.field("ambient")?;
    let base = read_base(&amb.field("base_field")?)?;
    let ambient = read_place(&amb.field("place")?, base, precision_override)?.ambient()?;
    let amb_names = ambient.var_names();

    let bn = n.field("base_generators")?;
    let base_generators: Vec<String> = bn
        .array()?
        .iter()
        .map(identifier)
        .collect::<CliResult<_>>()?;
    let list = |key: &str, names: &[String]| -> CliResult<Vec<RationalFunction>> {
        n.field(key)?
            .array()?
            .iter()
            .map(|e| e.expression(names, base))
            .collect()
    };
    let coefficients = list("coefficients", &base_generators)?;
    let transcendence = list("transcendence", &amb_names)?;
    let etas = list("etas", &amb_names)?;
    let (s, m, c) = (transcendence.len(), etas.len(), coefficients.len());

    let mut f_names = var_names("T", s);
    f_names.extend(var_names("X", m));
    let mut e_names = f_names.clone();
    f_names.extend(var_names("C", c));
    e_names.extend(base_generators.iter().cloned());

    let fs = n
        .field("fs")?
        .array()?
        .iter()
        .map(|f| f.polynomial(&f_names, base))
        .collect::<CliResult<Vec<_>>>()?;
    let zeta_indices = n
        .field("zeta_indices")?
        .array()?
        .iter()
        .map(|z| z.u64().map(|k| k as usize))
        .collect::<CliResult<Vec<_>>>()?;
    let generators = n
        .field("generators")?
        .array()?
        .iter()
        .map(|g| {
            Ok(GeneratorExpr {
                name: identifier(&g.field("name")?)?,
                expr: g.field("expr")?.expression(&e_names, base)?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let change_matrices = match n.opt("change_matrices") {
        None => Vec::new(),
        Some(cm) => cm
            .array()?
            .iter()
            .map(|mat| {
                mat.array()?
                    .iter()
                    .map(|row| {
                        row.array()?
                            .iter()
                            .map(Node::i64)
                            .collect::<CliResult<Vec<_>>>()
                    })
                    .collect::<CliResult<Vec<_>>>()
            })
            .collect::<CliResult<Vec<_>>>()?,
    };
    Ok(TriangularSystem {
        ambient,
        base_generators,
        coefficients,
        transcendence,
        etas,
        zeta_indices,
        fs,
        generators,
        change_matrices,
    })
}
