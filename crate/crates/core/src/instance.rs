use alloc::format;

use crate::error::{dim_err, Error, Result};
use crate::field::FieldCtx;
use crate::matrix::{Order, PolyMatrix, Shift};
use crate::poly::Degree;

/// An approximation problem: order `σ`, matrix `F` with `cdeg(F) < σ`, and
/// shift `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    ctx: FieldCtx,
    order: Order,
    f: PolyMatrix,
    shift: Shift,
}

impl Instance {
    pub fn new(ctx: FieldCtx, order: Order, f: PolyMatrix, shift: Shift) -> Result<Self> {
        if f.rows() == 0 {
            return Err(Error::InvalidParameter("F needs at least one row".into()));
        }
        if order.len() != f.cols() || shift.len() != f.rows() {
            return Err(dim_err(
                "Instance::new",
                format!(
                    "F is {}x{}, order of length {}, shift of length {}",
                    f.rows(),
                    f.cols(),
                    order.len(),
                    shift.len()
                ),
            ));
        }
        for (j, (cd, &s)) in f.column_degrees().iter().zip(order.as_slice()).enumerate() {
            if *cd >= Degree::finite(s as i64) {
                return Err(Error::DegreeTooLarge {
                    op: "Instance::new",
                    detail: format!("column {j} of F has degree {cd}, order is {s}"),
                });
            }
        }
        Ok(Instance { ctx, order, f, shift })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn f(&self) -> &PolyMatrix {
        &self.f
    }

    pub fn shift(&self) -> &Shift {
        &self.shift
    }

    pub fn m(&self) -> usize {
        self.f.rows()
    }

    pub fn n(&self) -> usize {
        self.f.cols()
    }

    /// `D = σ_1 + … + σ_n`.
    pub fn total_order(&self) -> usize {
        self.order.total()
    }
}
