//! Two-layer uniformization for discrete rational places: the series layer
//! over `K(t)` and the `t`-adic layer of `K(t)` over `K`, composed.

use super::block::uniformize_completion_algebraic;
use super::immediate::uniformize_immediate_simple;
use super::place::{SeriesGenerator, SeriesPlace};
use super::series::TruncatedSeries;
use crate::error::Result;
use crate::polyfield::{BaseField, Coeff, RationalFunction, SparsePoly};
use crate::uniformize::{compose, uniformize_abhyankar, TriangularSystem};
use crate::valuation::MonomialPlace;
use crate::valuegroup::GroupOrder;

#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    /// `z` with `min_poly(t, z) = 0` and residue `residue`.
    Algebraic {
        z_name: String,
        min_poly: SparsePoly,
        residue: Coeff,
    },
    /// `z` transcendental over `K(t)`, embedded by a series.
    Transcendental {
        z_name: String,
        series: TruncatedSeries,
    },
}

/// `F = K(t)` or `F = K(t, z)` with the `t`-adic place, `v t = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscretePresentation {
    pub base: BaseField,
    pub t_name: String,
    pub generator: Option<GeneratorSpec>,
}

impl DiscretePresentation {
    pub fn var_names(&self) -> Vec<String> {
        let mut names = vec![self.t_name.clone()];
        match &self.generator {
            Some(GeneratorSpec::Algebraic { z_name, .. })
            | Some(GeneratorSpec::Transcendental { z_name, .. }) => names.push(z_name.clone()),
            None => {}
        }
        names
    }

    pub fn base_place(&self) -> Result<MonomialPlace> {
        MonomialPlace::with_names(
            self.base,
            GroupOrder::lex(1),
            vec![self.t_name.clone()],
            Vec::new(),
        )
    }

    /// The series place, for presentations with a generator.
    pub fn series_place(&self, precision: i64) -> Result<Option<SeriesPlace>> {
        Ok(match &self.generator {
            None => None,
            Some(GeneratorSpec::Algebraic {
                z_name,
                min_poly,
                residue,
            }) => Some(SeriesPlace::algebraic(
                self.base,
                &self.t_name,
                z_name,
                min_poly,
                residue,
                precision,
            )?),
            Some(GeneratorSpec::Transcendental { z_name, series }) => Some(
                SeriesPlace::transcendental(self.base, &self.t_name, z_name, series.clone())?,
            ),
        })
    }
}

/// Composed system for `F | K` with every `zeta` among the etas. For a
/// transcendental generator the series carries its own precision and
/// `precision` is ignored.
pub fn uniformize_discrete_rational(
    pres: &DiscretePresentation,
    zetas: &[RationalFunction],
    precision: i64,
) -> Result<TriangularSystem> {
    let base_place = pres.base_place().map_err(|e| e.in_layer("base"))?;
    let Some(place) = pres
        .series_place(precision)
        .map_err(|e| e.in_layer("series"))?
    else {
        return uniformize_abhyankar(&base_place, zetas).map_err(|e| e.in_layer("base"));
    };
    let outer = match place.generator() {
        SeriesGenerator::Algebraic { .. } => uniformize_completion_algebraic(&place, zetas),
        SeriesGenerator::Transcendental { .. } => uniformize_immediate_simple(&place, zetas),
    }
    .map_err(|e| e.in_layer("series"))?;
    let inner =
        uniformize_abhyankar(&base_place, &outer.coefficients).map_err(|e| e.in_layer("base"))?;
    compose(&outer, &inner).map_err(|e| e.in_layer("composition"))
}
