use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::polyfield::{substitute_fraction, RationalFunction, SparsePoly};
use crate::valuation::ResidueElement;

use super::ambient::{Ambient, PlaceValue};
use super::system::TriangularSystem;

/// Largest `n` for which a non-triangular Jacobian is expanded in full.
const MAX_FULL_EXPANSION: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckResult {
    fn pass() -> Self {
        CheckResult {
            passed: true,
            detail: None,
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        CheckResult {
            passed: false,
            detail: Some(detail.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct U1Report {
    pub passed: bool,
    /// 1-based `(i, j)` with `i < j` and `X_j` occurring in `f_i`.
    pub offending: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct U2Report {
    pub passed: bool,
    /// 1-based index of the first `f_i` not vanishing at `eta`.
    pub offending: Option<usize>,
    pub detail: Option<String>,
}

/// Value and residue of one element; `value` is `None` for zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueResidue {
    pub value: Option<PlaceValue>,
    pub residue: Option<ResidueElement>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct U3Report {
    pub passed: bool,
    /// Value and residue of `det J_f(eta)`.
    pub determinant: ValueResidue,
    /// `d f_i / d X_i (eta)`; empty when the system is not triangular.
    pub diagonal: Vec<ValueResidue>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenerationReport {
    pub passed: bool,
    pub offending: Option<String>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub well_formed: CheckResult,
    /// `T`, the etas and the coefficients lie in the valuation ring.
    pub membership: CheckResult,
    pub u1: U1Report,
    pub u2: U2Report,
    pub u3: U3Report,
    pub generation: GenerationReport,
    /// Series precision the values were computed at, for series places.
    pub precision: Option<i64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.well_formed.passed
            && self.membership.passed
            && self.u1.passed
            && self.u2.passed
            && self.u3.passed
            && self.generation.passed
    }

    /// Residues of the diagonal Jacobian entries, when all are defined.
    pub fn diagonal_residues(&self) -> Option<Vec<ResidueElement>> {
        self.u3.diagonal.iter().map(|d| d.residue.clone()).collect()
    }
}

type Pair = (SparsePoly, SparsePoly);

fn pair(h: &RationalFunction) -> Pair {
    (h.numer().clone(), h.denom().clone())
}

/// Substitution arguments for the variables of `fs`.
fn f_args(sys: &TriangularSystem) -> Result<Vec<Pair>> {
    let mut args: Vec<Pair> = sys.transcendence.iter().map(pair).collect();
    args.extend(sys.etas.iter().map(pair));
    args.extend(sys.ambient_coefficients()?.iter().map(pair));
    Ok(args)
}

fn value_residue(amb: &Ambient, num: &SparsePoly, den: &SparsePoly) -> Result<ValueResidue> {
    if amb.is_zero(num) {
        return Ok(ValueResidue {
            value: None,
            residue: Some(amb.residue_constant(amb.base().zero())),
        });
    }
    let value = amb.value(num, den)?;
    let residue = if value.signum() == Ordering::Less {
        None
    } else {
        Some(amb.residue(num, den)?)
    };
    Ok(ValueResidue {
        value: Some(value),
        residue,
    })
}

pub fn verify(sys: &TriangularSystem) -> VerificationReport {
    let precision = sys.ambient.precision();
    if let Err(e) = sys.check_well_formed() {
        let msg = format!("malformed system: {e}");
        return VerificationReport {
            well_formed: CheckResult::fail(msg.clone()),
            membership: CheckResult::fail(msg.clone()),
            u1: U1Report {
                passed: false,
                offending: None,
            },
            u2: U2Report {
                passed: false,
                offending: None,
                detail: Some(msg.clone()),
            },
            u3: U3Report {
                passed: false,
                determinant: ValueResidue {
                    value: None,
                    residue: None,
                },
                diagonal: Vec::new(),
                detail: Some(msg.clone()),
            },
            generation: GenerationReport {
                passed: false,
                offending: None,
                detail: Some(msg),
            },
            precision,
        };
    }
    let args = f_args(sys).expect("checked by well-formedness");
    let u1 = check_u1(sys);
    VerificationReport {
        well_formed: CheckResult::pass(),
        membership: check_membership(sys, &args),
        u2: check_u2(sys, &args),
        u3: check_u3(sys, &args, u1.passed),
        u1,
        generation: check_generation(sys),
        precision,
    }
}

fn check_membership(sys: &TriangularSystem, args: &[Pair]) -> CheckResult {
    let names = sys.fs_var_names();
    for (name, (num, den)) in names.iter().zip(args) {
        if sys.ambient.is_zero(num) {
            continue;
        }
        match sys.ambient.value(num, den) {
            Ok(v) if v.signum() == Ordering::Less => {
                return CheckResult::fail(format!("{name} has negative value {v}"))
            }
            Ok(_) => {}
            Err(e) => return CheckResult::fail(format!("value of {name}: {e}")),
        }
    }
    CheckResult::pass()
}

fn check_u1(sys: &TriangularSystem) -> U1Report {
    for (i, f) in sys.fs.iter().enumerate() {
        for j in i + 1..sys.n() {
            if f.involves(sys.x_var(j)) {
                return U1Report {
                    passed: false,
                    offending: Some((i + 1, j + 1)),
                };
            }
        }
    }
    U1Report {
        passed: true,
        offending: None,
    }
}

fn check_u2(sys: &TriangularSystem, args: &[Pair]) -> U2Report {
    let nv = sys.ambient.nvars();
    for (i, f) in sys.fs.iter().enumerate() {
        let (num, _) = substitute_fraction(f, args, nv);
        if !sys.ambient.is_zero(&num) {
            return U2Report {
                passed: false,
                offending: Some(i + 1),
                detail: Some(format!("f{} does not vanish at eta", i + 1)),
            };
        }
    }
    U2Report {
        passed: true,
        offending: None,
        detail: None,
    }
}

fn check_u3(sys: &TriangularSystem, args: &[Pair], triangular: bool) -> U3Report {
    let result = if triangular {
        diagonal_determinant(sys, args)
    } else if sys.n() <= MAX_FULL_EXPANSION {
        jacobian_determinant_full(sys).map(|d| (d, Vec::new()))
    } else {
        Err(Error::Resource(format!(
            "non-triangular Jacobian of size {} not expanded",
            sys.n()
        )))
    };
    match result {
        Err(e) => U3Report {
            passed: false,
            determinant: ValueResidue {
                value: None,
                residue: None,
            },
            diagonal: Vec::new(),
            detail: Some(e.to_string()),
        },
        Ok((det, diagonal)) => {
            let unit = det.value.as_ref().is_some_and(PlaceValue::is_zero)
                && det.residue.as_ref().is_some_and(|r| !r.is_zero());
            U3Report {
                passed: unit,
                detail: (!unit).then(|| "Jacobian determinant is not a unit".to_string()),
                determinant: det,
                diagonal,
            }
        }
    }
}

/// Determinant of a triangular Jacobian as the product of its diagonal.
fn diagonal_determinant(
    sys: &TriangularSystem,
    args: &[Pair],
) -> Result<(ValueResidue, Vec<ValueResidue>)> {
    let nv = sys.ambient.nvars();
    let mut diagonal = Vec::with_capacity(sys.n());
    for (i, f) in sys.fs.iter().enumerate() {
        let d = f.derivative(sys.x_var(i));
        let (num, den) = substitute_fraction(&d, args, nv);
        diagonal.push(value_residue(&sys.ambient, &num, &den)?);
    }
    let mut value = Some(
        sys.ambient
            .value_of(&RationalFunction::one(sys.ambient.base(), nv))?,
    );
    let mut residue = Some(sys.ambient.residue_constant(sys.ambient.base().one()));
    for d in &diagonal {
        value = match (value, &d.value) {
            (Some(a), Some(b)) => Some(a.add(b)?),
            _ => None,
        };
        residue = match (residue, &d.residue) {
            (Some(a), Some(b)) => Some(ResidueElement {
                value: &a.value * &b.value,
                names: a.names,
            }),
            _ => None,
        };
    }
    if value.is_none() {
        residue = Some(sys.ambient.residue_constant(sys.ambient.base().zero()));
    }
    Ok((ValueResidue { value, residue }, diagonal))
}

/// `det J_f(eta)` by Leibniz expansion over exact rational functions.
pub fn jacobian_determinant_full(sys: &TriangularSystem) -> Result<ValueResidue> {
    sys.check_well_formed()?;
    let n = sys.n();
    let nv = sys.ambient.nvars();
    let args = f_args(sys)?;
    let mut entries: Vec<Vec<RationalFunction>> = Vec::with_capacity(n);
    for f in &sys.fs {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let (num, den) = substitute_fraction(&f.derivative(sys.x_var(j)), &args, nv);
            row.push(RationalFunction::new(num, den)?);
        }
        entries.push(row);
    }
    let det = leibniz(&entries, sys.ambient.base(), nv);
    value_residue(&sys.ambient, det.numer(), det.denom())
}

fn leibniz(
    m: &[Vec<RationalFunction>],
    base: crate::polyfield::BaseField,
    nv: usize,
) -> RationalFunction {
    let n = m.len();
    if n == 0 {
        return RationalFunction::one(base, nv);
    }
    // Expansion along the first row.
    let mut acc = RationalFunction::zero(base, nv);
    for (j, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<RationalFunction>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = a * &leibniz(&minor, base, nv);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

fn check_generation(sys: &TriangularSystem) -> GenerationReport {
    let nv = sys.ambient.nvars();
    let base = sys.ambient.base();
    let mut args: Vec<Pair> = sys.transcendence.iter().map(pair).collect();
    args.extend(sys.etas.iter().map(pair));
    let idx = sys
        .base_generator_indices()
        .expect("checked by well-formedness");
    args.extend(
        idx.iter()
            .map(|&k| (SparsePoly::var(base, nv, k), SparsePoly::one(base, nv))),
    );
    for g in &sys.generators {
        let k = sys
            .ambient
            .var_index(&g.name)
            .expect("checked by well-formedness");
        let gen = SparsePoly::var(base, nv, k);
        let (n1, d1) = substitute_fraction(g.expr.numer(), &args, nv);
        let (n2, d2) = substitute_fraction(g.expr.denom(), &args, nv);
        let den = &d1 * &n2;
        let fail = |d: &str| GenerationReport {
            passed: false,
            offending: Some(g.name.clone()),
            detail: Some(format!("{}: {d}", g.name)),
        };
        if sys.ambient.is_zero(&den) {
            return fail("expression denominator vanishes");
        }
        if !sys.ambient.is_zero(&(&(&n1 * &d2) - &(&gen * &den))) {
            return fail("expression does not reproduce the generator");
        }
    }
    GenerationReport {
        passed: true,
        offending: None,
        detail: None,
    }
}
