use crate::error::{Error, Result};
use crate::polyfield::{render_poly, render_ratfun, RationalFunction, SparsePoly};

use super::ambient::Ambient;

/// Re-expression of an ambient generator in terms of `T`, `X` and the
/// generators of the coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorExpr {
    pub name: String,
    /// Rational function in `(T1..Ts, X1..Xn, B1..Bb)`.
    pub expr: RationalFunction,
}

/// A triangular uniformization certificate.
///
/// `fs` are polynomials in `(T1..Ts, X1..Xn, C1..Cc)`. The `C` symbols stand
/// for `coefficients`, elements of the valuation ring of the coefficient
/// field generated by `base_generators`; with no base generators the
/// coefficient field is `K` and `c = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularSystem {
    pub ambient: Ambient,
    pub base_generators: Vec<String>,
    /// Rational functions in `base_generators`.
    pub coefficients: Vec<RationalFunction>,
    /// Rational functions in the ambient generators.
    pub transcendence: Vec<RationalFunction>,
    pub etas: Vec<RationalFunction>,
    pub zeta_indices: Vec<usize>,
    pub fs: Vec<SparsePoly>,
    pub generators: Vec<GeneratorExpr>,
    pub change_matrices: Vec<Vec<Vec<i64>>>,
}

impl TriangularSystem {
    pub fn s(&self) -> usize {
        self.transcendence.len()
    }

    pub fn n(&self) -> usize {
        self.etas.len()
    }

    pub fn c(&self) -> usize {
        self.coefficients.len()
    }

    /// Index of `X_j` (0-based `j`) among the variables of `fs`.
    pub fn x_var(&self, j: usize) -> usize {
        self.s() + j
    }

    pub fn fs_var_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..=self.s()).map(|i| format!("T{i}")).collect();
        names.extend((1..=self.n()).map(|j| format!("X{j}")));
        names.extend((1..=self.c()).map(|k| format!("C{k}")));
        names
    }

    pub fn expr_var_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..=self.s()).map(|i| format!("T{i}")).collect();
        names.extend((1..=self.n()).map(|j| format!("X{j}")));
        names.extend(self.base_generators.iter().cloned());
        names
    }

    pub fn render_f(&self, i: usize) -> String {
        render_poly(&self.fs[i], &self.fs_var_names())
    }

    pub fn render_ambient(&self, h: &RationalFunction) -> String {
        render_ratfun(h, &self.ambient.var_names())
    }

    pub fn render_coefficient(&self, k: usize) -> String {
        render_ratfun(&self.coefficients[k], &self.base_generators)
    }

    pub fn render_generator(&self, g: &GeneratorExpr) -> String {
        render_ratfun(&g.expr, &self.expr_var_names())
    }

    /// Ambient indices of the base generators.
    pub fn base_generator_indices(&self) -> Result<Vec<usize>> {
        self.base_generators
            .iter()
            .map(|b| {
                self.ambient.var_index(b).ok_or_else(|| {
                    Error::Invalid(format!("base generator {b} is not an ambient generator"))
                })
            })
            .collect()
    }

    /// Coefficients as elements of the ambient field.
    pub fn ambient_coefficients(&self) -> Result<Vec<RationalFunction>> {
        let map = self.base_generator_indices()?;
        let nv = self.ambient.nvars();
        self.coefficients
            .iter()
            .map(|c| {
                if c.nvars() != map.len() {
                    return Err(Error::Dimension(format!(
                        "coefficient in {} variables for {} base generators",
                        c.nvars(),
                        map.len()
                    )));
                }
                Ok(c.remap(nv, &map))
            })
            .collect()
    }

    /// Structural consistency; every later check assumes it.
    pub fn check_well_formed(&self) -> Result<()> {
        let nv = self.ambient.nvars();
        let (s, n, c) = (self.s(), self.n(), self.c());
        let base = self.ambient.base();
        if self.fs.len() != n {
            return Err(Error::Dimension(format!(
                "{} polynomials for {n} etas",
                self.fs.len()
            )));
        }
        for (i, f) in self.fs.iter().enumerate() {
            if f.nvars() != s + n + c || f.base() != base {
                return Err(Error::Dimension(format!(
                    "f{} must be a polynomial in {} variables",
                    i + 1,
                    s + n + c
                )));
            }
        }
        for (what, list) in [("T", &self.transcendence), ("eta", &self.etas)] {
            for (i, h) in list.iter().enumerate() {
                if h.nvars() != nv || h.base() != base {
                    return Err(Error::Dimension(format!(
                        "{what}{} must be a rational function in the {nv} ambient generators",
                        i + 1
                    )));
                }
                if self.ambient.is_zero(h.denom()) {
                    return Err(Error::Invalid(format!(
                        "{what}{} has a denominator vanishing in the field",
                        i + 1
                    )));
                }
            }
        }
        for (k, co) in self.ambient_coefficients()?.iter().enumerate() {
            if self.ambient.is_zero(co.denom()) {
                return Err(Error::Invalid(format!(
                    "C{} has a denominator vanishing in the field",
                    k + 1
                )));
            }
        }
        if let Some(&j) = self.zeta_indices.iter().find(|&&j| j >= n) {
            return Err(Error::OutOfRange(format!("zeta index {j} with {n} etas")));
        }
        let expr_vars = s + n + self.base_generators.len();
        let names = self.ambient.var_names();
        for name in &names {
            let covered = self.generators.iter().filter(|g| &g.name == name).count();
            let expected = usize::from(!self.base_generators.contains(name));
            if covered != expected {
                return Err(Error::Invalid(format!(
                    "generator {name} has {covered} re-expressions, expected {expected}"
                )));
            }
        }
        for g in &self.generators {
            if !names.contains(&g.name) {
                return Err(Error::Invalid(format!("unknown generator {}", g.name)));
            }
            if g.expr.nvars() != expr_vars {
                return Err(Error::Dimension(format!(
                    "expression for {} must be in {expr_vars} variables",
                    g.name
                )));
            }
        }
        for m in &self.change_matrices {
            if m.iter().any(|row| row.len() != m.len()) {
                return Err(Error::Dimension("change matrix is not square".into()));
            }
        }
        Ok(())
    }
}
