//! Polynomial and constant matrices, orders and shifts.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{dim_err, Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::{Degree, Poly};

/// Order `σ = (σ_1, …, σ_n)` with every `σ_j >= 1`.
///
/// Caches `D = σ_1 + … + σ_n` and `max σ` (0 when `n = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Order {
    sigma: Vec<usize>,
    total: usize,
    max: usize,
}

impl Order {
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        if sigma.contains(&0) {
            return Err(Error::InvalidOrder);
        }
        let total = sigma.iter().sum();
        let max = sigma.iter().copied().max().unwrap_or(0);
        Ok(Order { sigma, total, max })
    }

    pub fn uniform(n: usize, sigma: usize) -> Result<Self> {
        Self::new(vec![sigma; n])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// `D = Σ σ_j`.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn max(&self) -> usize {
        self.max
    }
}

/// Truncation order `d = (d_1, …, d_n)`, every `d_j >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncOrder {
    d: Vec<usize>,
    total: usize,
    max: usize,
}

impl TruncOrder {
    pub fn new(d: Vec<usize>) -> Result<Self> {
        let o = Order::new(d)?;
        Ok(TruncOrder {
            d: o.sigma,
            total: o.total,
            max: o.max,
        })
    }

    /// `(σ_1 + 1, …, σ_n + 1)`.
    pub fn order_plus_one(order: &Order) -> Self {
        let d: Vec<usize> = order.as_slice().iter().map(|s| s + 1).collect();
        TruncOrder {
            total: order.total() + d.len(),
            max: if d.is_empty() { 0 } else { order.max() + 1 },
            d,
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.d
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// `|d| = Σ d_j`.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn max(&self) -> usize {
        self.max
    }
}

/// Integer column weights `s = (s_1, …, s_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shift(Vec<i64>);

impl Shift {
    pub fn new(s: Vec<i64>) -> Self {
        Shift(s)
    }

    pub fn zero(m: usize) -> Self {
        Shift(vec![0; m])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Translates the shift so that its minimum is 0. Shifted row degrees
    /// move by a constant, so reducedness and minimality are unchanged.
    pub fn normalized(&self) -> Shift {
        let min = self.0.iter().copied().min().unwrap_or(0);
        Shift(self.0.iter().map(|s| s - min).collect())
    }
}

/// Dense `rows × cols` matrix over 𝔽_p, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl ConstMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ConstMatrix {
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(m: usize) -> Self {
        let mut a = Self::zeros(m, m);
        for i in 0..m {
            a.set(i, i, FieldElem::ONE);
        }
        a
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(dim_err(
                "ConstMatrix::from_vec",
                format!("{} entries for a {rows}x{cols} matrix", data.len()),
            ));
        }
        Ok(ConstMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElem) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        ConstMatrix { rows, cols, data }
    }

    pub fn from_u64s(ctx: &FieldCtx, rows: &[&[u64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| ctx.elem(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn as_slice(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// `[self other]`.
    pub fn hconcat(&self, other: &ConstMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(dim_err(
                "hconcat",
                format!("{} rows vs {} rows", self.rows, other.rows),
            ));
        }
        let cols = self.cols + other.cols;
        Ok(Self::from_fn(self.rows, cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    /// Schoolbook product; `(2k - 1)` operations per entry for inner
    /// dimension `k`.
    pub fn mul(&self, other: &ConstMatrix, ctx: &FieldCtx) -> Result<Self> {
        if self.cols != other.rows {
            return Err(dim_err(
                "ConstMatrix::mul",
                format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols),
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        if self.cols == 0 {
            return Ok(out);
        }
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ctx.mul(self.get(i, 0), other.get(0, j));
                for l in 1..self.cols {
                    acc = ctx.add(acc, ctx.mul(self.get(i, l), other.get(l, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `C · diag(x^{σ_1}, …, x^{σ_n})` as a polynomial matrix.
    pub fn times_x_pow(&self, exps: &[usize]) -> Result<PolyMatrix> {
        if exps.len() != self.cols {
            return Err(dim_err(
                "times_x_pow",
                format!("{} exponents for {} columns", exps.len(), self.cols),
            ));
        }
        Ok(PolyMatrix::from_fn(self.rows, self.cols, |i, j| {
            Poly::monomial(self.get(i, j), exps[j])
        }))
    }
}

/// Dense `rows × cols` matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(m: usize) -> Self {
        Self::from_fn(m, m, |i, j| {
            if i == j {
                Poly::constant(FieldElem::ONE)
            } else {
                Poly::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        PolyMatrix { rows, cols, entries }
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(dim_err(
                "PolyMatrix::from_vec",
                format!("{} entries for a {rows}x{cols} matrix", entries.len()),
            ));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    /// Builds from nested coefficient lists; convenient in tests.
    pub fn from_u64s(ctx: &FieldCtx, rows: &[&[&[u64]]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| Poly::from_u64s(ctx, rows[i][j]))
    }

    pub fn from_const(c: &ConstMatrix) -> Self {
        Self::from_fn(c.rows(), c.cols(), |i, j| Poly::constant(c.get(i, j)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Poly] {
        &mut self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Largest entry degree.
    pub fn degree(&self) -> Degree {
        self.entries
            .iter()
            .map(Poly::degree)
            .max()
            .unwrap_or(Degree::NEG_INF)
    }

    pub fn row_degrees(&self) -> Vec<Degree> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Poly::degree).max().unwrap_or(Degree::NEG_INF))
            .collect()
    }

    pub fn column_degrees(&self) -> Vec<Degree> {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| self.get(i, j).degree())
                    .max()
                    .unwrap_or(Degree::NEG_INF)
            })
            .collect()
    }

    /// `rdeg_s`: `r_i = max_j (deg p_ij + s_j)`, `-inf` for zero rows.
    pub fn shifted_row_degree(&self, s: &Shift) -> Result<Vec<Degree>> {
        if s.len() != self.cols {
            return Err(dim_err(
                "shifted_row_degree",
                format!("shift of length {} for {} columns", s.len(), self.cols),
            ));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(s.as_slice())
                    .map(|(p, &sj)| p.degree().shifted(sj))
                    .max()
                    .unwrap_or(Degree::NEG_INF)
            })
            .collect())
    }

    /// The `s`-leading matrix: entry `(i, j)` is the coefficient of degree
    /// `r_i - s_j` of `p_ij`, where `r = rdeg_s(P)`. Zero rows give zero
    /// rows.
    pub fn s_leading_matrix(&self, s: &Shift) -> Result<ConstMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let r = self.shifted_row_degree(s)?;
        Ok(ConstMatrix::from_fn(self.rows, self.cols, |i, j| match r[i].value() {
            Some(ri) => self.get(i, j).coeff_i(ri - s.as_slice()[j]),
            None => FieldElem::ZERO,
        }))
    }

    /// `|A| = rows·cols + Σ max(0, deg a_ij)`.
    pub fn size_measure(&self) -> u64 {
        (self.rows * self.cols) as u64 + self.entries.iter().map(|p| p.degree().nonneg()).sum::<u64>()
    }

    /// Coefficient matrix of `x^k`.
    pub fn coefficient(&self, k: usize) -> ConstMatrix {
        ConstMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).coeff(k))
    }

    /// Entrywise Horner evaluation, `2(|A| - rows·cols)` operations at most.
    pub fn evaluate(&self, alpha: FieldElem, ctx: &FieldCtx) -> ConstMatrix {
        ConstMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).evaluate(alpha, ctx))
    }

    /// `A(1)` using additions only.
    pub fn sum_coefficients(&self, ctx: &FieldCtx) -> ConstMatrix {
        ConstMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sum_coeffs(ctx))
    }

    /// Keeps only coefficients of degree `<= max_deg`.
    pub fn truncate_degree(&self, max_deg: usize) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).truncated(max_deg + 1))
    }

    /// `A rem X^d`: column `j` reduced modulo `x^{d_j}`.
    pub fn truncate_columns(&self, d: &[usize]) -> Result<Self> {
        if d.len() != self.cols {
            return Err(dim_err(
                "truncate_columns",
                format!("{} orders for {} columns", d.len(), self.cols),
            ));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).truncated(d[j])))
    }

    fn check_product(&self, other: &PolyMatrix, op: &'static str) -> Result<()> {
        if self.cols != other.rows {
            return Err(dim_err(
                op,
                format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols),
            ));
        }
        Ok(())
    }

    /// Exact product by schoolbook convolution.
    pub fn mul_naive(&self, other: &PolyMatrix, ctx: &FieldCtx) -> Result<Self> {
        self.check_product(other, "mul_naive")?;
        Ok(self.product_with_lengths(other, |_| usize::MAX, ctx))
    }

    /// `(A·B) rem X^d`, computing only the kept coefficients.
    pub fn mul_rem_orders(&self, other: &PolyMatrix, d: &[usize], ctx: &FieldCtx) -> Result<Self> {
        self.check_product(other, "mul_rem_orders")?;
        if d.len() != other.cols {
            return Err(dim_err(
                "mul_rem_orders",
                format!("{} orders for {} columns", d.len(), other.cols),
            ));
        }
        Ok(self.product_with_lengths(other, |j| d[j], ctx))
    }

    fn product_with_lengths(&self, other: &PolyMatrix, len: impl Fn(usize) -> usize, ctx: &FieldCtx) -> Self {
        let mut acc = Vec::new();
        Self::from_fn(self.rows, other.cols, |i, j| {
            acc.clear();
            for l in 0..self.cols {
                self.get(i, l).mul_acc_trunc(other.get(l, j), len(j), &mut acc, ctx);
            }
            Poly::from_coeffs(acc.clone())
        })
    }

    /// `u · A` for a constant row vector `u`.
    pub fn left_vec_mul(&self, u: &[FieldElem], ctx: &FieldCtx) -> Result<Self> {
        self.left_vec_mul_trunc(u, usize::MAX, ctx)
    }

    /// `(u · A) rem x^len`. Each stored coefficient of `A` below `len` costs
    /// one multiplication and at most one addition, so at most `2|A|`
    /// operations.
    pub fn left_vec_mul_trunc(&self, u: &[FieldElem], len: usize, ctx: &FieldCtx) -> Result<Self> {
        if u.len() != self.rows {
            return Err(dim_err(
                "left_vec_mul",
                format!("vector of length {} for {} rows", u.len(), self.rows),
            ));
        }
        let mut out = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mut acc: Vec<FieldElem> = Vec::new();
            for (i, &ui) in u.iter().enumerate() {
                let c = self.get(i, j).coeffs();
                let c = &c[..c.len().min(len)];
                for (k, &a) in c.iter().enumerate() {
                    let t = ctx.mul(ui, a);
                    if k < acc.len() {
                        acc[k] = ctx.add(acc[k], t);
                    } else {
                        acc.push(t);
                    }
                }
            }
            out.push(Poly::from_coeffs(acc));
        }
        Ok(PolyMatrix {
            rows: 1,
            cols: self.cols,
            entries: out,
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination over
    /// `𝔽_p[x]`.
    pub fn determinant(&self, ctx: &FieldCtx) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let m = self.rows;
        if m == 0 {
            return Ok(Poly::constant(FieldElem::ONE));
        }
        let mut a: Vec<Vec<Poly>> = (0..m).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = Poly::constant(FieldElem::ONE);
        for k in 0..m - 1 {
            let Some(piv) = (k..m).find(|&r| !a[r][k].is_zero()) else {
                return Ok(Poly::zero());
            };
            if piv != k {
                a.swap(piv, k);
                negate = !negate;
            }
            for i in k + 1..m {
                for j in k + 1..m {
                    let num = a[k][k]
                        .mul(&a[i][j], ctx)
                        .sub(&a[i][k].mul(&a[k][j], ctx), ctx);
                    let (q, r) = num.div_rem(&prev, ctx)?;
                    debug_assert!(r.is_zero());
                    a[i][j] = q;
                }
                a[i][k] = Poly::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[m - 1][m - 1].clone();
        Ok(if negate { Poly::zero().sub(&det, ctx) } else { det })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::vec::Vec;

    fn k7() -> FieldCtx {
        FieldCtx::new(7).unwrap()
    }

    /// `[[x,0],[0,1]]`.
    fn diag_x1(k: &FieldCtx) -> PolyMatrix {
        PolyMatrix::from_u64s(k, &[&[&[0, 1], &[]], &[&[], &[1]]])
    }

    fn shift(v: &[i64]) -> Shift {
        Shift::new(v.to_vec())
    }

    #[test]
    fn product_examples() {
        let k = k7();
        let a = diag_x1(&k);
        let b = PolyMatrix::from_u64s(&k, &[&[&[1]], &[&[]]]);
        let expect = PolyMatrix::from_u64s(&k, &[&[&[0, 1]], &[&[]]]);
        assert_eq!(a.mul_naive(&b, &k).unwrap(), expect);
        assert_eq!(a.mul_naive(&PolyMatrix::identity(2), &k).unwrap(), a);
        assert!(a.mul_naive(&PolyMatrix::zeros(2, 3), &k).unwrap().is_zero());
        assert!(matches!(
            b.mul_naive(&b, &k),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn truncated_product_examples() {
        let k = k7();
        let x = PolyMatrix::from_u64s(&k, &[&[&[0, 1]]]);
        assert!(x.mul_rem_orders(&x, &[2], &k).unwrap().is_zero());
        let one_plus_x = PolyMatrix::from_u64s(&k, &[&[&[1, 1]]]);
        let one = PolyMatrix::identity(1);
        assert_eq!(
            one_plus_x.mul_rem_orders(&one, &[1], &k).unwrap(),
            PolyMatrix::identity(1)
        );
        assert!(x.mul_rem_orders(&x, &[1, 2], &k).is_err());
    }

    #[test]
    fn coefficient_and_evaluation() {
        let k = k7();
        let a = diag_x1(&k);
        assert_eq!(a.coefficient(0), ConstMatrix::from_u64s(&k, &[&[0, 0], &[0, 1]]));
        assert!(a.coefficient(5).is_zero());
        assert!(PolyMatrix::zeros(2, 2).coefficient(0).is_zero());
        assert_eq!(a.evaluate(FieldElem::ZERO, &k), a.coefficient(0));
        let b = PolyMatrix::from_u64s(&k, &[&[&[1, 1]]]);
        assert_eq!(b.evaluate(k.elem(3), &k), ConstMatrix::from_u64s(&k, &[&[4]]));
    }

    #[test]
    fn degree_examples() {
        let k = k7();
        let a = diag_x1(&k);
        assert_eq!(a.row_degrees(), vec![Degree::finite(1), Degree::finite(0)]);
        assert_eq!(
            PolyMatrix::identity(3).row_degrees(),
            vec![Degree::finite(0); 3]
        );
        let z = PolyMatrix::from_u64s(&k, &[&[&[1], &[]], &[&[2], &[]]]);
        assert_eq!(z.column_degrees()[1], Degree::NEG_INF);

        // [[x,1],[2,x]], s = (0,1)
        let p = PolyMatrix::from_u64s(&k, &[&[&[0, 1], &[1]], &[&[2], &[0, 1]]]);
        let s = shift(&[0, 1]);
        assert_eq!(
            p.shifted_row_degree(&s).unwrap(),
            vec![Degree::finite(1), Degree::finite(2)]
        );
        assert_eq!(
            p.s_leading_matrix(&s).unwrap(),
            ConstMatrix::from_u64s(&k, &[&[1, 1], &[0, 1]])
        );
        assert!(p.shifted_row_degree(&shift(&[0])).is_err());
        assert_eq!(
            PolyMatrix::identity(3).s_leading_matrix(&Shift::zero(3)).unwrap(),
            ConstMatrix::identity(3)
        );
        let zero_row = PolyMatrix::from_u64s(&k, &[&[&[0, 1], &[1]], &[&[], &[]]]);
        let l = zero_row.s_leading_matrix(&Shift::zero(2)).unwrap();
        assert_eq!(l.row(1), &[FieldElem::ZERO, FieldElem::ZERO]);
        assert_eq!(zero_row.shifted_row_degree(&Shift::zero(2)).unwrap()[1], Degree::NEG_INF);
    }

    #[test]
    fn size_measure_examples() {
        let k = k7();
        assert_eq!(PolyMatrix::identity(2).size_measure(), 4);
        assert_eq!(diag_x1(&k).size_measure(), 5);
        assert_eq!(PolyMatrix::zeros(2, 2).size_measure(), 4);
        assert_eq!(PolyMatrix::zeros(2, 3).size_measure(), 6);
    }

    #[test]
    fn left_vec_mul_examples() {
        let k = k7();
        let a = PolyMatrix::from_u64s(&k, &[&[&[0, 1]], &[&[1]]]);
        let ones = [FieldElem::ONE, FieldElem::ONE];
        assert_eq!(
            a.left_vec_mul(&ones, &k).unwrap(),
            PolyMatrix::from_u64s(&k, &[&[&[1, 1]]])
        );
        let e1 = [FieldElem::ZERO, FieldElem::ONE];
        assert_eq!(a.left_vec_mul(&e1, &k).unwrap().row(0), a.row(1));
        assert!(a.left_vec_mul(&[FieldElem::ZERO; 2], &k).unwrap().is_zero());
        let (_, ops) = k.measure(|| a.left_vec_mul(&ones, &k).unwrap());
        assert!(ops.total() <= 2 * a.size_measure());
    }

    #[test]
    fn bareiss_determinant() {
        let k = k7();
        // [[x,1],[2,x]] -> x^2 - 2
        let p = PolyMatrix::from_u64s(&k, &[&[&[0, 1], &[1]], &[&[2], &[0, 1]]]);
        assert_eq!(p.determinant(&k).unwrap(), Poly::from_u64s(&k, &[5, 0, 1]));
        // needs a row swap
        let q = PolyMatrix::from_u64s(&k, &[&[&[], &[1]], &[&[1], &[]]]);
        assert_eq!(q.determinant(&k).unwrap(), Poly::from_u64s(&k, &[6]));
        assert!(PolyMatrix::zeros(3, 3).determinant(&k).unwrap().is_zero());
    }

    fn arb_poly(p: u64, max_len: usize) -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(0..p, 0..=max_len)
    }

    fn arb_matrix(rows: usize, cols: usize, max_len: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
        proptest::collection::vec(arb_poly(13, max_len), rows * cols)
    }

    fn build(k: &FieldCtx, rows: usize, cols: usize, raw: &[Vec<u64>]) -> PolyMatrix {
        PolyMatrix::from_fn(rows, cols, |i, j| Poly::from_u64s(k, &raw[i * cols + j]))
    }

    fn normalized(a: &PolyMatrix) -> bool {
        a.entries().iter().all(|p| p.coeffs().last().is_none_or(|c| !c.is_zero()))
    }

    proptest! {
        #[test]
        fn truncated_product_equals_truncated_naive(
            a in arb_matrix(2, 3, 5),
            b in arb_matrix(3, 2, 5),
            d in proptest::collection::vec(1usize..8, 2),
        ) {
            let k = FieldCtx::new(13).unwrap();
            let a = build(&k, 2, 3, &a);
            let b = build(&k, 3, 2, &b);
            let full = a.mul_naive(&b, &k).unwrap();
            let trunc = a.mul_rem_orders(&b, &d, &k).unwrap();
            prop_assert!(normalized(&full) && normalized(&trunc));
            prop_assert_eq!(trunc, full.truncate_columns(&d).unwrap());
        }

        #[test]
        fn evaluation_is_a_ring_morphism(
            a in arb_matrix(2, 3, 4),
            b in arb_matrix(3, 2, 4),
            alpha in 0u64..13,
        ) {
            let k = FieldCtx::new(13).unwrap();
            let a = build(&k, 2, 3, &a);
            let b = build(&k, 3, 2, &b);
            let alpha = k.elem(alpha);
            let lhs = a.mul_naive(&b, &k).unwrap().evaluate(alpha, &k);
            let rhs = a.evaluate(alpha, &k).mul(&b.evaluate(alpha, &k), &k).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.sum_coefficients(&k), a.evaluate(FieldElem::ONE, &k));
        }

        #[test]
        fn shifted_degree_properties(
            a in arb_matrix(3, 3, 4),
            s in proptest::collection::vec(-5i64..5, 3),
            c in -10i64..10,
        ) {
            let k = FieldCtx::new(13).unwrap();
            let a = build(&k, 3, 3, &a);
            prop_assert_eq!(a.shifted_row_degree(&Shift::zero(3)).unwrap(), a.row_degrees());
            let s1 = Shift::new(s.clone());
            let s2 = Shift::new(s.iter().map(|x| x + c).collect());
            let r1 = a.shifted_row_degree(&s1).unwrap();
            let r2 = a.shifted_row_degree(&s2).unwrap();
            let moved: Vec<Degree> = r1.iter().map(|d| d.shifted(c)).collect();
            prop_assert_eq!(&r2, &moved);
            prop_assert_eq!(a.s_leading_matrix(&s1).unwrap(), a.s_leading_matrix(&s2).unwrap());
        }
    }
}
