//! Closed-form set operations on CPZs.
//!
//! Every operation returns an exact result in CPZ form (no enclosure step is
//! involved except where documented). Operations whose raw construction
//! produces duplicate or constant exponent columns run the compaction pass
//! before returning; `_raw` variants expose the uncompacted structure.

use crate::linalg::{mat_mul, DenseMatrix, DenseVector, ExponentMatrix};
use crate::regularize::{compact, compact_con, compact_gen};
use crate::sets::ConPolyZonotope;
use crate::{CpzError, Result};

/// `M * S = <M c, M G, E, A, b, R>`.
pub fn linear_map(m: &DenseMatrix, s: &ConPolyZonotope) -> Result<ConPolyZonotope> {
    if m.cols() != s.dim() {
        return Err(CpzError::shape("linear map", m.cols(), s.dim()));
    }
    ConPolyZonotope::new(
        m.mat_vec(s.center())?,
        mat_mul(m, s.generators())?,
        s.exponents().clone(),
        s.con_generators().clone(),
        s.con_offset().clone(),
        s.con_exponents().clone(),
    )
}

/// `S1 + S2` with independent factor blocks: centers add, generators and
/// constraints concatenate block-diagonally.
pub fn minkowski_sum(s1: &ConPolyZonotope, s2: &ConPolyZonotope) -> Result<ConPolyZonotope> {
    if s1.dim() != s2.dim() {
        return Err(CpzError::shape("Minkowski sum", s1.dim(), s2.dim()));
    }
    ConPolyZonotope::new(
        s1.center().add(s2.center())?,
        s1.generators().hcat(s2.generators())?,
        s1.exponents().block_diag(s2.exponents()),
        s1.con_generators().block_diag(s2.con_generators()),
        s1.con_offset().concat(s2.con_offset()),
        s1.con_exponents().block_diag(s2.con_exponents()),
    )
}

/// `S1 x S2`: stacked centers, block-diagonal everything else.
pub fn cartesian_product(s1: &ConPolyZonotope, s2: &ConPolyZonotope) -> Result<ConPolyZonotope> {
    ConPolyZonotope::new(
        s1.center().concat(s2.center()),
        s1.generators().block_diag(s2.generators()),
        s1.exponents().block_diag(s2.exponents()),
        s1.con_generators().block_diag(s2.con_generators()),
        s1.con_offset().concat(s2.con_offset()),
        s1.con_exponents().block_diag(s2.con_exponents()),
    )
}

/// Convex hull via an interpolation factor `l` (the last factor of the
/// result): at `l = 1` the result reproduces `S1`, at `l = -1` it reproduces
/// `S2`, and intermediate values blend the two operands.
pub fn convex_hull(s1: &ConPolyZonotope, s2: &ConPolyZonotope) -> Result<ConPolyZonotope> {
    if s1.dim() != s2.dim() {
        return Err(CpzError::shape("convex hull", s1.dim(), s2.dim()));
    }
    let n = s1.dim();
    let (p1, p2) = (s1.num_factors(), s2.num_factors());
    let (h1, h2) = (s1.num_generators(), s2.num_generators());
    let p = p1 + p2 + 1;
    let lam = p - 1;

    let c = s1.center().add(s2.center())?.scale(0.5);
    let half_diff = {
        let d = s1.center().sub(s2.center())?.scale(0.5);
        let mut m = DenseMatrix::zeros(n, 1);
        for i in 0..n {
            m.set(i, 0, d[i]);
        }
        m
    };
    let g = half_diff
        .hcat(&s1.generators().scale(0.5))?
        .hcat(&s1.generators().scale(0.5))?
        .hcat(&s2.generators().scale(0.5))?
        .hcat(&s2.generators().scale(-0.5))?;

    // interpolation-factor row: [1 | 0..0 | 1..1 | 0..0 | 1..1]
    let mut e = ExponentMatrix::zeros(p, 1 + 2 * h1 + 2 * h2);
    e.set(lam, 0, 1);
    for (offset, with_lam, src, rows_above) in [
        (1, false, s1.exponents(), 0),
        (1 + h1, true, s1.exponents(), 0),
        (1 + 2 * h1, false, s2.exponents(), p1),
        (1 + 2 * h1 + h2, true, s2.exponents(), p1),
    ] {
        for j in 0..src.cols() {
            for i in 0..src.rows() {
                e.set(rows_above + i, offset + j, src.get(i, j));
            }
            if with_lam {
                e.set(lam, offset + j, 1);
            }
        }
    }

    ConPolyZonotope::new(
        c,
        g,
        e,
        s1.con_generators().block_diag(s2.con_generators()),
        s1.con_offset().concat(s2.con_offset()),
        s1.con_exponents()
            .block_diag(s2.con_exponents())
            .pad_rows(0, 1),
    )
}

/// Exact image under `x -> (x^T Q_1 x, ..., x^T Q_w x)`, compacted. Each `Q_i`
/// must be `n x n` for the operand's dimension `n`.
pub fn quadratic_map(qs: &[DenseMatrix], s: &ConPolyZonotope) -> Result<ConPolyZonotope> {
    let n = s.dim();
    let w = qs.len();
    for (i, q) in qs.iter().enumerate() {
        if q.rows() != n || q.cols() != n {
            return Err(CpzError::shape(
                "quadratic map matrix",
                format!("Q_{i} is {}x{}", q.rows(), q.cols()),
                format!("{n}x{n}"),
            ));
        }
    }
    let h = s.num_generators();
    let c = s.center();
    let g = s.generators();

    // per output row: c^T Q_i c, c^T Q_i G, G^T Q_i c, and G^T Q_i G
    let qc: Vec<DenseVector> = qs.iter().map(|q| q.mat_vec(c)).collect::<Result<_>>()?;
    let qtc: Vec<DenseVector> = qs
        .iter()
        .map(|q| q.transpose().mat_vec(c))
        .collect::<Result<_>>()?;
    let qg: Vec<DenseMatrix> = qs.iter().map(|q| mat_mul(q, g)).collect::<Result<_>>()?;

    let mut center = vec![0.0; w];
    for i in 0..w {
        center[i] = c.dot(&qc[i])?;
    }

    let cols = 2 * h + h * h;
    let mut g_new = DenseMatrix::zeros(w, cols);
    for l in 0..h {
        for i in 0..w {
            // c^T Q_i G(:,l)
            g_new.set(i, l, g.col(l).dot(&qtc[i])?);
            // G(:,l)^T Q_i c
            g_new.set(i, h + l, g.col(l).dot(&qc[i])?);
        }
    }
    for j in 0..h {
        for l in 0..h {
            for i in 0..w {
                // G(:,j)^T Q_i G(:,l)
                g_new.set(i, 2 * h + j * h + l, g.col(j).dot(&qg[i].col(l))?);
            }
        }
    }

    let mut e_new = s.exponents().hcat(s.exponents())?;
    for j in 0..h {
        e_new = e_new.hcat(&s.exponents().add_col_broadcast(&s.exponents().col(j)))?;
    }

    Ok(compact_gen(&ConPolyZonotope::new(
        DenseVector::new(center),
        g_new,
        e_new,
        s.con_generators().clone(),
        s.con_offset().clone(),
        s.con_exponents().clone(),
    )?))
}

/// Intersection before compaction: keeps `S1`'s generator part and adds the
/// coupling constraints `G1 a - G2 b = c2 - c1` on top of both operands'
/// constraint systems.
pub fn intersect_raw(s1: &ConPolyZonotope, s2: &ConPolyZonotope) -> Result<ConPolyZonotope> {
    if s1.dim() != s2.dim() {
        return Err(CpzError::shape("intersection", s1.dim(), s2.dim()));
    }
    let n = s1.dim();
    let (p1, p2) = (s1.num_factors(), s2.num_factors());
    let (m1, m2) = (s1.num_constraints(), s2.num_constraints());
    let (q1, q2) = (
        s1.num_constraint_generators(),
        s2.num_constraint_generators(),
    );
    let (h1, h2) = (s1.num_generators(), s2.num_generators());
    let m = m1 + m2 + n;
    let q = q1 + q2 + h1 + h2;

    let mut a = DenseMatrix::zeros(m, q);
    for j in 0..q1 {
        for i in 0..m1 {
            a.set(i, j, s1.con_generators().get(i, j));
        }
    }
    for j in 0..q2 {
        for i in 0..m2 {
            a.set(m1 + i, q1 + j, s2.con_generators().get(i, j));
        }
    }
    for j in 0..h1 {
        for i in 0..n {
            a.set(m1 + m2 + i, q1 + q2 + j, s1.generators().get(i, j));
        }
    }
    for j in 0..h2 {
        for i in 0..n {
            a.set(m1 + m2 + i, q1 + q2 + h1 + j, -s2.generators().get(i, j));
        }
    }

    let b = s1
        .con_offset()
        .concat(s2.con_offset())
        .concat(&s2.center().sub(s1.center())?);

    let r = s1
        .con_exponents()
        .pad_rows(0, p2)
        .hcat(&s2.con_exponents().pad_rows(p1, 0))?
        .hcat(&s1.exponents().pad_rows(0, p2))?
        .hcat(&s2.exponents().pad_rows(p1, 0))?;

    ConPolyZonotope::new(
        s1.center().clone(),
        s1.generators().clone(),
        s1.exponents().pad_rows(0, p2),
        a,
        b,
        r,
    )
}

/// `S1 n S2`, compacted.
pub fn intersect(s1: &ConPolyZonotope, s2: &ConPolyZonotope) -> Result<ConPolyZonotope> {
    Ok(compact_con(&intersect_raw(s1, s2)?))
}

/// Give a factor-free operand one fresh factor (with an all-zero generator
/// column so the set is unchanged); the union construction divides by the
/// operands' factor counts.
fn with_at_least_one_factor(s: &ConPolyZonotope) -> ConPolyZonotope {
    if s.num_factors() > 0 {
        return s.clone();
    }
    let n = s.dim();
    let h = s.num_generators();
    let mut e = ExponentMatrix::zeros(1, h + 1);
    e.set(0, h, 1);
    ConPolyZonotope::new(
        s.center().clone(),
        s.generators().hcat(&DenseMatrix::zeros(n, 1)).expect("rows match"),
        e,
        s.con_generators().clone(),
        s.con_offset().clone(),
        s.con_exponents().pad_rows(0, 1),
    )
    .expect("padding preserves dimension consistency")
}

/// Union before compaction. Two selector factors `a1, a2` come first, then
/// `S1`'s factors, then `S2`'s. The constraints are, in row order:
///
/// 1. `a1 a2 = 1` (both selectors agree and sit at +-1),
/// 2. a polynomial consistency constraint whose residual is
///    `(1 + a1 + f1 (1 - a1) / 2)(1 - f2 / 2) - a2 - 1` with
///    `f1, f2` the mean squared factor values of each operand's block; it
///    forces the deselected operand's factors to zero,
/// 3. `S1`'s constraints, active at `a1 = 1` and vacuous at `a1 = -1`,
/// 4. `S2`'s constraints, the other way around.
///
/// A witness `a` of `S1` lifts to `(1, 1, a, 0)`; a witness of `S2` lifts to
/// `(-1, -1, 0, a)`.
pub fn union_raw(s1: &ConPolyZonotope, s2: &ConPolyZonotope) -> Result<ConPolyZonotope> {
    if s1.dim() != s2.dim() {
        return Err(CpzError::shape("union", s1.dim(), s2.dim()));
    }
    let s1 = with_at_least_one_factor(s1);
    let s2 = with_at_least_one_factor(s2);
    let n = s1.dim();
    let (p1, p2) = (s1.num_factors(), s2.num_factors());
    let (m1, m2) = (s1.num_constraints(), s2.num_constraints());
    let (q1, q2) = (
        s1.num_constraint_generators(),
        s2.num_constraint_generators(),
    );
    let p = 2 + p1 + p2;

    let c = s1.center().add(s2.center())?.scale(0.5);
    let half_diff = {
        let d = s1.center().sub(s2.center())?.scale(0.5);
        let mut m = DenseMatrix::zeros(n, 1);
        for i in 0..n {
            m.set(i, 0, d[i]);
        }
        m
    };
    let g = half_diff.hcat(s1.generators())?.hcat(s2.generators())?;

    let mut e = ExponentMatrix::zeros(p, 1);
    e.set(0, 0, 1);
    let e = e
        .hcat(&s1.exponents().pad_rows(2, p2))?
        .hcat(&s2.exponents().pad_rows(2 + p1, 0))?;

    let m = 2 + m1 + m2;
    let q_bar = 2 + 2 * p1 + 2 * p2 + 2 * p1 * p2;
    let q = 1 + q_bar + q1 + q2 + 1;
    let mut a = DenseMatrix::zeros(m, q);
    let mut r = ExponentMatrix::zeros(p, q);

    // selector coupling: a1 a2 = 1
    a.set(0, 0, 1.0);
    r.set(0, 0, 1);
    r.set(1, 0, 1);

    // consistency constraint, expanded monomial by monomial
    let mut col = 1;
    let mut push = |a: &mut DenseMatrix, r: &mut ExponentMatrix, coeff: f64, exps: &[(usize, u32)]| {
        a.set(1, col, coeff);
        for &(row, ex) in exps {
            r.set(row, col, ex);
        }
        col += 1;
    };
    push(&mut a, &mut r, 1.0, &[(0, 1)]);
    push(&mut a, &mut r, -1.0, &[(1, 1)]);
    let (w1, w2) = (0.5 / p1 as f64, 0.5 / p2 as f64);
    for i in 0..p1 {
        push(&mut a, &mut r, w1, &[(2 + i, 2)]);
    }
    for i in 0..p1 {
        push(&mut a, &mut r, -w1, &[(0, 1), (2 + i, 2)]);
    }
    for j in 0..p2 {
        push(&mut a, &mut r, -w2, &[(2 + p1 + j, 2)]);
    }
    for j in 0..p2 {
        push(&mut a, &mut r, -w2, &[(0, 1), (2 + p1 + j, 2)]);
    }
    let w12 = 0.25 / (p1 as f64 * p2 as f64);
    for i in 0..p1 {
        for j in 0..p2 {
            push(&mut a, &mut r, -w12, &[(2 + i, 2), (2 + p1 + j, 2)]);
        }
    }
    for i in 0..p1 {
        for j in 0..p2 {
            push(&mut a, &mut r, w12, &[(0, 1), (2 + i, 2), (2 + p1 + j, 2)]);
        }
    }
    debug_assert_eq!(col, 1 + q_bar);

    // operand constraints, gated by the selector through the final column
    for j in 0..q1 {
        for i in 0..m1 {
            a.set(2 + i, col, s1.con_generators().get(i, j));
        }
        for i in 0..p1 {
            r.set(2 + i, col, s1.con_exponents().get(i, j));
        }
        col += 1;
    }
    for j in 0..q2 {
        for i in 0..m2 {
            a.set(2 + m1 + i, col, s2.con_generators().get(i, j));
        }
        for i in 0..p2 {
            r.set(2 + p1 + i, col, s2.con_exponents().get(i, j));
        }
        col += 1;
    }
    for i in 0..m1 {
        a.set(2 + i, col, -0.5 * s1.con_offset()[i]);
    }
    for i in 0..m2 {
        a.set(2 + m1 + i, col, 0.5 * s2.con_offset()[i]);
    }
    r.set(0, col, 1);

    let b = DenseVector::new(vec![1.0, 0.0])
        .concat(&s1.con_offset().scale(0.5))
        .concat(&s2.con_offset().scale(0.5));

    ConPolyZonotope::new(c, g, e, a, b, r)
}

/// `S1 u S2` (exact, not a convex enclosure), compacted.
pub fn union(s1: &ConPolyZonotope, s2: &ConPolyZonotope) -> Result<ConPolyZonotope> {
    Ok(compact(&union_raw(s1, s2)?))
}

/// Sum of two CPZs defined over the *same* factors (identical constraint
/// systems): generator columns concatenate without fresh factors. Used to
/// assemble Taylor polynomials whose linear and quadratic parts must stay
/// coupled.
pub(crate) fn add_shared(s1: &ConPolyZonotope, s2: &ConPolyZonotope) -> Result<ConPolyZonotope> {
    if s1.dim() != s2.dim() {
        return Err(CpzError::shape("shared-factor sum", s1.dim(), s2.dim()));
    }
    if s1.num_factors() != s2.num_factors()
        || s1.con_generators() != s2.con_generators()
        || s1.con_offset() != s2.con_offset()
        || s1.con_exponents() != s2.con_exponents()
    {
        return Err(CpzError::Validation(
            "shared-factor sum requires identical factor and constraint systems".into(),
        ));
    }
    ConPolyZonotope::new(
        s1.center().add(s2.center())?,
        s1.generators().hcat(s2.generators())?,
        s1.exponents().hcat(s2.exponents())?,
        s1.con_generators().clone(),
        s1.con_offset().clone(),
        s1.con_exponents().clone(),
    )
}
