use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::surd::{is_independent, SurdScalar};
use crate::error::{Error, Result};
use crate::polyfield::render_rational;

/// Lexicographic product of rank-1 blocks. Within a block an element's
/// value is the real number `sum coord_i * weight_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupOrder {
    blocks: Vec<Vec<SurdScalar>>,
}

impl GroupOrder {
    pub fn new(blocks: Vec<Vec<SurdScalar>>) -> Result<Arc<Self>> {
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Invalid(format!("block {b} is empty")));
            }
            for (i, w) in block.iter().enumerate() {
                if w.signum() != Ordering::Greater {
                    return Err(Error::Invalid(format!(
                        "weight {i} of block {b} is not positive"
                    )));
                }
            }
            if !is_independent(block) {
                return Err(Error::Invalid(format!(
                    "weights of block {b} are not rationally independent"
                )));
            }
        }
        Ok(Arc::new(GroupOrder { blocks }))
    }

    /// Single rank-1 block.
    pub fn archimedean(weights: Vec<SurdScalar>) -> Result<Arc<Self>> {
        Self::new(vec![weights])
    }

    /// `Z^n` ordered lexicographically (each block has weight 1).
    pub fn lex(n: usize) -> Arc<Self> {
        Arc::new(GroupOrder {
            blocks: (0..n).map(|_| vec![SurdScalar::from_i64(1)]).collect(),
        })
    }

    pub fn blocks(&self) -> &[Vec<SurdScalar>] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|b| {
                let r = start..start + b.len();
                start += b.len();
                r
            })
            .collect()
    }

    /// Real value of each block of `coords`.
    pub fn block_values(&self, coords: &[BigRational]) -> Vec<SurdScalar> {
        self.block_ranges()
            .into_iter()
            .zip(&self.blocks)
            .map(|(r, w)| SurdScalar::linear_combination(&coords[r], w))
            .collect()
    }

    /// Sign of a coordinate vector under the lexicographic order.
    pub fn sign_of(&self, coords: &[BigRational]) -> Ordering {
        for (r, w) in self.block_ranges().into_iter().zip(&self.blocks) {
            let s = SurdScalar::linear_combination(&coords[r], w).signum();
            if s != Ordering::Equal {
                return s;
            }
        }
        Ordering::Equal
    }
}

pub fn rational_rank(order: &GroupOrder) -> usize {
    order.rank()
}

/// An element of the value group: rational coordinates against the standard
/// generators of its order.
#[derive(Clone, Debug)]
pub struct GroupElement {
    coords: Vec<BigRational>,
    order: Arc<GroupOrder>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
            && (Arc::ptr_eq(&self.order, &other.order) || self.order == other.order)
    }
}

impl Eq for GroupElement {}

impl GroupElement {
    pub fn new(order: Arc<GroupOrder>, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != order.rank() {
            return Err(Error::Dimension(format!(
                "{} coordinates for a group of rank {}",
                coords.len(),
                order.rank()
            )));
        }
        Ok(GroupElement { coords, order })
    }

    pub fn from_integers(order: Arc<GroupOrder>, coords: &[i64]) -> Result<Self> {
        Self::new(
            order,
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(order: Arc<GroupOrder>) -> Self {
        let n = order.rank();
        GroupElement {
            coords: vec![BigRational::zero(); n],
            order,
        }
    }

    /// The `i`-th standard generator.
    pub fn generator(order: Arc<GroupOrder>, i: usize) -> Result<Self> {
        let n = order.rank();
        if i >= n {
            return Err(Error::OutOfRange(format!("generator {i} of rank {n}")));
        }
        let mut e = Self::zero(order);
        e.coords[i] = BigRational::from_integer(1.into());
        Ok(e)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn order(&self) -> &Arc<GroupOrder> {
        &self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn integer_coords(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn signum(&self) -> Ordering {
        self.order.sign_of(&self.coords)
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.order, &other.order) || self.order == other.order {
            Ok(())
        } else {
            Err(Error::Dimension(
                "elements of different value groups".into(),
            ))
        }
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(GroupElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
            order: self.order.clone(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(GroupElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
            order: self.order.clone(),
        })
    }

    pub fn neg(&self) -> Self {
        GroupElement {
            coords: self.coords.iter().map(|a| -a).collect(),
            order: self.order.clone(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        GroupElement {
            coords: self.coords.iter().map(|a| a * k).collect(),
            order: self.order.clone(),
        }
    }

    /// Per-block real values, e.g. `[-1 + sqrt(2)]`.
    pub fn block_values(&self) -> Vec<SurdScalar> {
        self.order.block_values(&self.coords)
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(render_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Split of a lexicographic order into the first `k` blocks (the quotient by
/// the convex subgroup) and the remaining blocks (the convex subgroup).
#[derive(Clone, Debug)]
pub struct ConvexSplit {
    pub quotient: Arc<GroupOrder>,
    pub subgroup: Arc<GroupOrder>,
    split: usize,
}

impl ConvexSplit {
    pub fn project_quotient(&self, e: &GroupElement) -> GroupElement {
        GroupElement {
            coords: e.coords[..self.split].to_vec(),
            order: self.quotient.clone(),
        }
    }

    pub fn project_subgroup(&self, e: &GroupElement) -> GroupElement {
        GroupElement {
            coords: e.coords[self.split..].to_vec(),
            order: self.subgroup.clone(),
        }
    }
}

pub fn convex_decompose(order: &GroupOrder, k: usize) -> Result<ConvexSplit> {
    let nb = order.num_blocks();
    if k == 0 || k >= nb {
        return Err(Error::OutOfRange(format!(
            "split point {k} for an order with {nb} blocks"
        )));
    }
    let split = order.blocks[..k].iter().map(Vec::len).sum();
    Ok(ConvexSplit {
        quotient: Arc::new(GroupOrder {
            blocks: order.blocks[..k].to_vec(),
        }),
        subgroup: Arc::new(GroupOrder {
            blocks: order.blocks[k..].to_vec(),
        }),
        split,
    })
}
