//! Domain types for all supported set representations and the evaluation
//! primitives every operation and test builds on.

use crate::linalg::{sym_eig, DenseMatrix, DenseVector, ExponentMatrix, IntervalScalar};
use crate::{CpzError, Result, FACTOR_TOL};

/// Threshold below which an ellipsoid shape-matrix eigenvalue is rejected as
/// not positive definite.
pub const POS_DEF_TOL: f64 = 1e-12;

/// Constrained polynomial zonotope `<c, G, E, A, b, R>`:
///
/// ```text
/// { c + sum_i (prod_k a_k^E(k,i)) G(:,i) | sum_i (prod_k a_k^R(k,i)) A(:,i) = b, a_k in [-1,1] }
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct ConPolyZonotope {
    c: DenseVector,
    g: DenseMatrix,
    e: ExponentMatrix,
    a: DenseMatrix,
    b: DenseVector,
    r: ExponentMatrix,
}

impl ConPolyZonotope {
    pub fn new(
        c: DenseVector,
        g: DenseMatrix,
        e: ExponentMatrix,
        a: DenseMatrix,
        b: DenseVector,
        r: ExponentMatrix,
    ) -> Result<Self> {
        if g.rows() != c.len() {
            return Err(CpzError::shape("G rows vs c", g.rows(), c.len()));
        }
        if e.cols() != g.cols() {
            return Err(CpzError::shape("E cols vs G cols", e.cols(), g.cols()));
        }
        if a.rows() != b.len() {
            return Err(CpzError::shape("A rows vs b", a.rows(), b.len()));
        }
        if r.cols() != a.cols() {
            return Err(CpzError::shape("R cols vs A cols", r.cols(), a.cols()));
        }
        if e.rows() != r.rows() {
            return Err(CpzError::shape("E rows vs R rows", e.rows(), r.rows()));
        }
        Ok(Self { c, g, e, a, b, r })
    }

    /// The singleton `{c}` (no factors, generators, or constraints).
    pub fn singleton(c: DenseVector) -> Self {
        let n = c.len();
        Self {
            c,
            g: DenseMatrix::empty(n),
            e: ExponentMatrix::empty(0),
            a: DenseMatrix::zeros(0, 0),
            b: DenseVector::empty(),
            r: ExponentMatrix::empty(0),
        }
    }

    /// Space dimension n.
    pub fn dim(&self) -> usize {
        self.c.len()
    }

    /// Number of factors p.
    pub fn num_factors(&self) -> usize {
        self.e.rows()
    }

    /// Number of generators h.
    pub fn num_generators(&self) -> usize {
        self.g.cols()
    }

    /// Number of constraints m.
    pub fn num_constraints(&self) -> usize {
        self.b.len()
    }

    /// Number of constraint generators q.
    pub fn num_constraint_generators(&self) -> usize {
        self.a.cols()
    }

    pub fn center(&self) -> &DenseVector {
        &self.c
    }

    pub fn generators(&self) -> &DenseMatrix {
        &self.g
    }

    pub fn exponents(&self) -> &ExponentMatrix {
        &self.e
    }

    pub fn con_generators(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn con_offset(&self) -> &DenseVector {
        &self.b
    }

    pub fn con_exponents(&self) -> &ExponentMatrix {
        &self.r
    }

    /// Pure polynomial evaluation of the generator part; ignores constraints.
    pub fn eval_point(&self, alpha: &FactorAssignment) -> Result<DenseVector> {
        if alpha.len() != self.num_factors() {
            return Err(CpzError::shape(
                "factor assignment vs factor count",
                alpha.len(),
                self.num_factors(),
            ));
        }
        let mut out: Vec<f64> = self.c.as_slice().to_vec();
        for i in 0..self.g.cols() {
            let w = monomial(alpha.values(), &self.e, i);
            if w == 0.0 {
                continue;
            }
            for row in 0..self.dim() {
                out[row] += w * self.g.get(row, i);
            }
        }
        Ok(DenseVector::new(out))
    }

    /// Constraint residual `sum_i (prod_k a_k^R(k,i)) A(:,i) - b`; a witness
    /// is an assignment whose residual infinity norm is at most
    /// [`crate::WITNESS_TOL`].
    pub fn constraint_residual(&self, alpha: &FactorAssignment) -> Result<DenseVector> {
        if alpha.len() != self.num_factors() {
            return Err(CpzError::shape(
                "factor assignment vs factor count",
                alpha.len(),
                self.num_factors(),
            ));
        }
        let m = self.num_constraints();
        let mut out = vec![0.0; m];
        for i in 0..self.a.cols() {
            let w = monomial(alpha.values(), &self.r, i);
            if w == 0.0 {
                continue;
            }
            for row in 0..m {
                out[row] += w * self.a.get(row, i);
            }
        }
        for row in 0..m {
            out[row] -= self.b[row];
        }
        Ok(DenseVector::new(out))
    }

    /// Regularity: all columns of E pairwise distinct and nonzero, likewise
    /// for R.
    pub fn is_regular(&self) -> bool {
        columns_regular(&self.e) && columns_regular(&self.r)
    }

    /// Representation size `(n + p) h + n + (m + p) q + m`.
    pub fn representation_size(&self) -> usize {
        let (n, p, h, m, q) = (
            self.dim(),
            self.num_factors(),
            self.num_generators(),
            self.num_constraints(),
            self.num_constraint_generators(),
        );
        (n + p) * h + n + (m + p) * q + m
    }
}

fn columns_regular(e: &ExponentMatrix) -> bool {
    for j in 0..e.cols() {
        if e.col_is_zero(j) {
            return false;
        }
        for i in 0..j {
            if e.col(i) == e.col(j) {
                return false;
            }
        }
    }
    true
}

/// Monomial `prod_k alpha_k^{M(k, col)}` with the convention `0^0 = 1` (a zero
/// exponent means "factor absent").
pub(crate) fn monomial(alpha: &[f64], exps: &ExponentMatrix, col: usize) -> f64 {
    let mut w = 1.0;
    for k in 0..exps.rows() {
        let ex = exps.get(k, col);
        if ex > 0 {
            w *= alpha[k].powi(ex as i32);
        }
    }
    w
}

/// A vector of factor values in `[-1, 1]^p` (with a small tolerance for
/// sampled witnesses).
#[derive(Debug, Clone, PartialEq)]
pub struct FactorAssignment {
    values: DenseVector,
}

impl FactorAssignment {
    pub fn new(values: DenseVector) -> Result<Self> {
        for (k, &v) in values.as_slice().iter().enumerate() {
            if !(-1.0 - FACTOR_TOL..=1.0 + FACTOR_TOL).contains(&v) {
                return Err(CpzError::Validation(format!(
                    "factor {k} out of [-1, 1]: {v}"
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        Self::new(DenseVector::new(values.to_vec()))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        self.values.as_slice()
    }

    pub fn concat(&self, other: &FactorAssignment) -> FactorAssignment {
        FactorAssignment {
            values: self.values.concat(&other.values),
        }
    }
}

/// Polynomial zonotope `<c, G, G_I, E>` with dependent and independent
/// generators.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyZonotope {
    pub c: DenseVector,
    pub g: DenseMatrix,
    pub gi: DenseMatrix,
    pub e: ExponentMatrix,
}

impl PolyZonotope {
    pub fn new(c: DenseVector, g: DenseMatrix, gi: DenseMatrix, e: ExponentMatrix) -> Result<Self> {
        if g.rows() != c.len() {
            return Err(CpzError::shape("G rows vs c", g.rows(), c.len()));
        }
        if gi.rows() != c.len() {
            return Err(CpzError::shape("G_I rows vs c", gi.rows(), c.len()));
        }
        if e.cols() != g.cols() {
            return Err(CpzError::shape("E cols vs G cols", e.cols(), g.cols()));
        }
        Ok(Self { c, g, gi, e })
    }

    pub fn eval(&self, alpha: &[f64], beta: &[f64]) -> Result<DenseVector> {
        if alpha.len() != self.e.rows() || beta.len() != self.gi.cols() {
            return Err(CpzError::shape(
                "polynomial zonotope evaluation",
                format!("{} / {}", alpha.len(), beta.len()),
                format!("{} / {}", self.e.rows(), self.gi.cols()),
            ));
        }
        let mut out: Vec<f64> = self.c.as_slice().to_vec();
        for i in 0..self.g.cols() {
            let w = monomial(alpha, &self.e, i);
            for row in 0..self.c.len() {
                out[row] += w * self.g.get(row, i);
            }
        }
        for j in 0..self.gi.cols() {
            for row in 0..self.c.len() {
                out[row] += beta[j] * self.gi.get(row, j);
            }
        }
        Ok(DenseVector::new(out))
    }
}

/// Constrained zonotope `<c, G, A, b>`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConZonotope {
    pub c: DenseVector,
    pub g: DenseMatrix,
    pub a: DenseMatrix,
    pub b: DenseVector,
}

impl ConZonotope {
    pub fn new(c: DenseVector, g: DenseMatrix, a: DenseMatrix, b: DenseVector) -> Result<Self> {
        if g.rows() != c.len() {
            return Err(CpzError::shape("G rows vs c", g.rows(), c.len()));
        }
        if g.cols() != a.cols() {
            return Err(CpzError::shape("G cols vs A cols", g.cols(), a.cols()));
        }
        if a.rows() != b.len() {
            return Err(CpzError::shape("A rows vs b", a.rows(), b.len()));
        }
        Ok(Self { c, g, a, b })
    }
}

/// Ellipsoid `{ x | (x - c)^T Q^{-1} (x - c) <= 1 }` with a symmetric
/// positive-definite shape matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    pub c: DenseVector,
    pub q: DenseMatrix,
}

impl Ellipsoid {
    pub fn new(c: DenseVector, q: DenseMatrix) -> Result<Self> {
        if q.rows() != c.len() || q.cols() != c.len() {
            return Err(CpzError::shape(
                "ellipsoid shape matrix",
                format!("{}x{}", q.rows(), q.cols()),
                format!("{0}x{0}", c.len()),
            ));
        }
        // sym_eig rejects asymmetric input; positive definiteness on top
        let (values, _) = sym_eig(&q)?;
        for (i, &l) in values.as_slice().iter().enumerate() {
            if l <= POS_DEF_TOL {
                return Err(CpzError::Validation(format!(
                    "shape matrix is not positive definite: eigenvalue {i} is {l}"
                )));
            }
        }
        Ok(Self { c, q })
    }
}

/// Taylor model: polynomial part over `[-1, 1]^p` plus one interval remainder
/// per output dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorModel {
    pub coeffs: DenseMatrix,
    pub expons: ExponentMatrix,
    pub remainder: Vec<IntervalScalar>,
}

impl TaylorModel {
    pub fn new(
        coeffs: DenseMatrix,
        expons: ExponentMatrix,
        remainder: Vec<IntervalScalar>,
    ) -> Result<Self> {
        if expons.cols() != coeffs.cols() {
            return Err(CpzError::shape(
                "exponent cols vs coefficient cols",
                expons.cols(),
                coeffs.cols(),
            ));
        }
        if remainder.len() != coeffs.rows() {
            return Err(CpzError::shape(
                "remainder length vs coefficient rows",
                remainder.len(),
                coeffs.rows(),
            ));
        }
        Ok(Self {
            coeffs,
            expons,
            remainder,
        })
    }
}

/// Axis-aligned box `[lo_1, hi_1] x ... x [lo_n, hi_n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalBox {
    pub lo: DenseVector,
    pub hi: DenseVector,
}

impl IntervalBox {
    pub fn new(lo: DenseVector, hi: DenseVector) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(CpzError::shape("interval bounds", lo.len(), hi.len()));
        }
        for i in 0..lo.len() {
            if lo[i] > hi[i] {
                return Err(CpzError::Validation(format!(
                    "interval dimension {i} has lo {} > hi {}",
                    lo[i], hi[i]
                )));
            }
        }
        Ok(Self { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn component(&self, i: usize) -> IntervalScalar {
        IntervalScalar::new(self.lo[i], self.hi[i]).expect("invariant: lo <= hi")
    }
}

/// The CPZ of the paper-walkthrough example (three factors, one polynomial
/// constraint); used as a fixture across the test suite.
pub fn example1() -> ConPolyZonotope {
    ConPolyZonotope::new(
        DenseVector::new(vec![0.0, 0.0]),
        DenseMatrix::from_rows(&[&[1.0, 0.0, 1.0, -1.0], &[0.0, 1.0, 1.0, 1.0]]),
        ExponentMatrix::from_rows(&[&[1, 0, 1, 2], &[0, 1, 1, 0], &[0, 0, 1, 1]]),
        DenseMatrix::from_rows(&[&[1.0, -0.5, 0.5]]),
        DenseVector::new(vec![0.5]),
        ExponentMatrix::from_rows(&[&[0, 1, 2], &[1, 0, 0], &[0, 1, 0]]),
    )
    .expect("fixture is well-formed")
}
