//! Closed-form embeddings of the other supported set representations into
//! CPZs.

use crate::linalg::{mat_mul, sym_eig, DenseMatrix, DenseVector, ExponentMatrix};
use crate::sets::{
    ConPolyZonotope, ConZonotope, Ellipsoid, FactorAssignment, IntervalBox, PolyZonotope,
    TaylorModel,
};
use crate::{CpzError, Result};

/// Embed a polynomial zonotope: independent factors become fresh dependent
/// factors, giving `<c, [G G_I], blockdiag(E, I_q), [], [], []>`.
pub fn from_poly_zonotope(s: &PolyZonotope) -> Result<ConPolyZonotope> {
    let qi = s.gi.cols();
    let g = s.g.hcat(&s.gi)?;
    let e = s.e.block_diag(&ExponentMatrix::identity(qi));
    let p = e.rows();
    ConPolyZonotope::new(
        s.c.clone(),
        g,
        e,
        DenseMatrix::zeros(0, 0),
        DenseVector::empty(),
        ExponentMatrix::empty(p),
    )
}

/// Embed a constrained zonotope as `<c, G, I_p, A, b, I_p>`.
pub fn from_con_zonotope(s: &ConZonotope) -> Result<ConPolyZonotope> {
    let p = s.g.cols();
    ConPolyZonotope::new(
        s.c.clone(),
        s.g.clone(),
        ExponentMatrix::identity(p),
        s.a.clone(),
        s.b.clone(),
        ExponentMatrix::identity(p),
    )
}

/// Embed a zonotope (center + generator matrix) as `<c, G, I_p, [], [], []>`.
pub fn from_zonotope(c: &DenseVector, g: &DenseMatrix) -> Result<ConPolyZonotope> {
    if g.rows() != c.len() {
        return Err(CpzError::shape("zonotope generators vs center", g.rows(), c.len()));
    }
    let p = g.cols();
    ConPolyZonotope::new(
        c.clone(),
        g.clone(),
        ExponentMatrix::identity(p),
        DenseMatrix::zeros(0, 0),
        DenseVector::empty(),
        ExponentMatrix::empty(p),
    )
}

/// Embed an axis-aligned box: midpoint center with a diagonal generator
/// matrix of halfwidths.
pub fn from_interval(b: &IntervalBox) -> ConPolyZonotope {
    let n = b.dim();
    let c = DenseVector::new((0..n).map(|i| 0.5 * (b.lo[i] + b.hi[i])).collect());
    let g = DenseMatrix::diag(
        &(0..n)
            .map(|i| 0.5 * (b.hi[i] - b.lo[i]))
            .collect::<Vec<_>>(),
    );
    from_zonotope(&c, &g).expect("box conversion is dimension-consistent")
}

/// Embed a Taylor model over `[-1, 1]^p`.
///
/// Constant polynomial columns are folded into the center; the interval
/// remainder contributes its midpoint to the center plus one fresh
/// independent generator per dimension with the halfwidth magnitude
/// (zero-width remainder dimensions add no generator).
pub fn from_taylor_model(t: &TaylorModel) -> Result<ConPolyZonotope> {
    let n = t.coeffs.rows();
    let p = t.expons.rows();

    let mut c: Vec<f64> = (0..n).map(|i| t.remainder[i].mid()).collect();
    let mut poly_cols: Vec<usize> = Vec::new();
    for j in 0..t.coeffs.cols() {
        if t.expons.col_is_zero(j) {
            for i in 0..n {
                c[i] += t.coeffs.get(i, j);
            }
        } else {
            poly_cols.push(j);
        }
    }

    let mut g = DenseMatrix::zeros(n, poly_cols.len());
    let mut e = ExponentMatrix::zeros(p, poly_cols.len());
    for (jj, &j) in poly_cols.iter().enumerate() {
        for i in 0..n {
            g.set(i, jj, t.coeffs.get(i, j));
        }
        for k in 0..p {
            e.set(k, jj, t.expons.get(k, j));
        }
    }

    let widths: Vec<(usize, f64)> = (0..n)
        .filter_map(|i| {
            let w = t.remainder[i].halfwidth();
            (w != 0.0).then_some((i, w))
        })
        .collect();
    let mut gi = DenseMatrix::zeros(n, widths.len());
    for (j, &(i, w)) in widths.iter().enumerate() {
        gi.set(i, j, w);
    }

    from_poly_zonotope(&PolyZonotope::new(DenseVector::new(c), g, gi, e)?)
}

/// Embed an ellipsoid via the eigendecomposition `Q = V D V^T`:
/// `G = V diag(sqrt(l_k))` with the slack-factor constraint
/// `-0.5 a_{n+1} + a_1^2 + ... + a_n^2 = 0.5`.
pub fn from_ellipsoid(e: &Ellipsoid) -> Result<ConPolyZonotope> {
    let n = e.c.len();
    let (values, vectors) = sym_eig(&e.q)?;
    for (i, &l) in values.as_slice().iter().enumerate() {
        if l <= crate::sets::POS_DEF_TOL {
            return Err(CpzError::Validation(format!(
                "shape matrix is not positive definite: eigenvalue {i} is {l}"
            )));
        }
    }
    let sqrt_d = DenseMatrix::diag(
        &values
            .as_slice()
            .iter()
            .map(|l| l.sqrt())
            .collect::<Vec<_>>(),
    );
    let g = mat_mul(&vectors, &sqrt_d)?;

    // E = [I_n; 0], one extra slack factor
    let exp = ExponentMatrix::identity(n).pad_rows(0, 1);

    let mut a = DenseMatrix::zeros(1, n + 1);
    a.set(0, 0, -0.5);
    for j in 1..=n {
        a.set(0, j, 1.0);
    }
    let b = DenseVector::new(vec![0.5]);

    let mut r = ExponentMatrix::zeros(n + 1, n + 1);
    r.set(n, 0, 1); // slack factor, linear
    for k in 0..n {
        r.set(k, k + 1, 2); // a_k^2
    }

    ConPolyZonotope::new(e.c.clone(), g, exp, a, b, r)
}

/// The explicit witness of a point of an ellipsoid in its CPZ embedding:
/// `a_k = z_k / sqrt(l_k)` with `z = V^T (x - c)` and the slack factor
/// `a_{n+1} = 2 sum a_k^2 - 1`. Valid whenever `x` lies in the ellipsoid.
pub fn ellipsoid_witness(e: &Ellipsoid, x: &DenseVector) -> Result<FactorAssignment> {
    let n = e.c.len();
    if x.len() != n {
        return Err(CpzError::shape("ellipsoid witness point", x.len(), n));
    }
    let (values, vectors) = sym_eig(&e.q)?;
    let z = vectors.transpose().mat_vec(&x.sub(&e.c)?)?;
    let mut alpha: Vec<f64> = (0..n).map(|k| z[k] / values[k].sqrt()).collect();
    let sum_sq: f64 = alpha.iter().map(|a| a * a).sum();
    alpha.push((2.0 * sum_sq - 1.0).clamp(-1.0, 1.0));
    FactorAssignment::from_slice(&alpha)
}

/// The triangle with vertices (-1, 1), (0, -1), (1, 0) as a CPZ:
/// generators (-0.75, 0.75), (-0.25, -0.25), (0.25, 0.25) with monomials
/// `a1`, `a2`, `a1 a2` around the starting point (-0.25, 0.25). Used by the
/// nonlinear-map demo.
pub fn simplex_fixture_p() -> ConPolyZonotope {
    ConPolyZonotope::new(
        DenseVector::new(vec![-0.25, 0.25]),
        DenseMatrix::from_rows(&[&[-0.75, -0.25, 0.25], &[0.75, -0.25, 0.25]]),
        ExponentMatrix::from_rows(&[&[1, 0, 1], &[0, 1, 1]]),
        DenseMatrix::zeros(0, 0),
        DenseVector::empty(),
        ExponentMatrix::empty(2),
    )
    .expect("fixture is well-formed")
}
