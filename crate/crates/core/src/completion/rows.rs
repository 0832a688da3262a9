//! Assembly of rows whose coefficients lie in `K(t)`.
//!
//! Constant coefficients are written inline; every other coefficient is
//! bound to a `C` symbol, equal coefficients sharing one symbol.

use crate::polyfield::{BaseField, Monomial, RationalFunction, SparsePoly};

pub(crate) struct RowBuilder {
    base: BaseField,
    /// Number of `T` and `X` variables.
    width: usize,
    pub coefficients: Vec<RationalFunction>,
    rows: Vec<Vec<(usize, Monomial)>>,
    inline: Vec<Vec<(RationalFunction, Monomial)>>,
}

impl RowBuilder {
    pub fn new(base: BaseField, width: usize) -> Self {
        RowBuilder {
            base,
            width,
            coefficients: Vec::new(),
            rows: Vec::new(),
            inline: Vec::new(),
        }
    }

    pub fn start_row(&mut self) {
        self.rows.push(Vec::new());
        self.inline.push(Vec::new());
    }

    /// Add `c * x^exps` to the current row; `c` is a function of `t`.
    pub fn term(&mut self, c: &RationalFunction, exps: &[(usize, u32)]) {
        if c.is_zero() {
            return;
        }
        let mut m = vec![0u32; self.width];
        for &(v, e) in exps {
            m[v] += e;
        }
        let m = Monomial(m);
        if c.is_constant() {
            self.inline
                .last_mut()
                .expect("row started")
                .push((c.clone(), m));
            return;
        }
        let k = match self.coefficients.iter().position(|x| x == c) {
            Some(k) => k,
            None => {
                self.coefficients.push(c.clone());
                self.coefficients.len() - 1
            }
        };
        self.rows.last_mut().expect("row started").push((k, m));
    }

    /// Rows as polynomials in `(T, X, C)`.
    pub fn finish(self) -> (Vec<SparsePoly>, Vec<RationalFunction>) {
        let nv = self.width + self.coefficients.len();
        let base = self.base;
        let lift = |m: &Monomial| {
            let mut e = m.0.clone();
            e.resize(nv, 0);
            Monomial(e)
        };
        let fs = self
            .rows
            .iter()
            .zip(&self.inline)
            .map(|(symbolic, inline)| {
                let mut f = SparsePoly::zero(base, nv);
                for (c, m) in inline {
                    let c = c.as_constant().expect("constant coefficient");
                    f = &f + &SparsePoly::monomial(base, nv, lift(m), c);
                }
                for (k, m) in symbolic {
                    let mut e = lift(m);
                    e.0[self.width + k] += 1;
                    f = &f + &SparsePoly::monomial(base, nv, e, base.one());
                }
                f
            })
            .collect();
        (fs, self.coefficients)
    }
}
