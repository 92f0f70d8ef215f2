//! Transformation of a non-regular CPZ into an equivalent regular one by
//! merging duplicate exponent columns (generator and constraint parts).
//!
//! Beyond duplicate merging, all-zero exponent columns are folded into the
//! constant part (`c` for generators, `b` for constraints) and generator or
//! constraint columns that end up all-zero are dropped; both steps preserve
//! the represented set and are required for the regularity predicate to hold
//! after operations that produce constant terms.

use crate::linalg::{DenseMatrix, DenseVector, ExponentMatrix};
use crate::sets::ConPolyZonotope;

/// Deduplicate the columns of an exponent matrix.
///
/// Returns the distinct columns in order of first appearance together with
/// the index groups: `groups[j]` lists the original column indices equal to
/// unique column `j`. Duplicate detection sorts the columns
/// lexicographically and identifies identical neighbors.
pub fn unique_columns(m: &ExponentMatrix) -> (ExponentMatrix, Vec<Vec<usize>>) {
    let cols = m.cols();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by_key(|&i| m.col(i));

    // group identical neighbors in sorted order
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &idx in &order {
        match groups.last_mut() {
            Some(g) if m.col(g[0]) == m.col(idx) => g.push(idx),
            _ => groups.push(vec![idx]),
        }
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    // first-appearance order for deterministic output
    groups.sort_by_key(|g| g[0]);

    let mut unique = ExponentMatrix::zeros(m.rows(), groups.len());
    for (j, g) in groups.iter().enumerate() {
        for i in 0..m.rows() {
            unique.set(i, j, m.get(i, g[0]));
        }
    }
    (unique, groups)
}

/// Merge duplicate exponent columns of the generator part, fold all-zero
/// exponent columns into `c`, and drop all-zero generator columns. The
/// represented set is unchanged and the resulting exponent matrix is regular.
pub fn compact_gen(s: &ConPolyZonotope) -> ConPolyZonotope {
    let n = s.dim();
    let (unique, groups) = unique_columns(s.exponents());

    let mut c: Vec<f64> = s.center().as_slice().to_vec();
    let mut kept_cols: Vec<(Vec<f64>, Vec<u32>)> = Vec::new();
    for (j, g) in groups.iter().enumerate() {
        let mut merged = vec![0.0; n];
        for &i in g {
            for row in 0..n {
                merged[row] += s.generators().get(row, i);
            }
        }
        if unique.col_is_zero(j) {
            for row in 0..n {
                c[row] += merged[row];
            }
        } else if merged.iter().any(|&v| v != 0.0) {
            kept_cols.push((merged, unique.col(j)));
        }
    }

    let h = kept_cols.len();
    let mut g_new = DenseMatrix::zeros(n, h);
    let mut e_new = ExponentMatrix::zeros(s.num_factors(), h);
    for (j, (gen, exps)) in kept_cols.iter().enumerate() {
        for row in 0..n {
            g_new.set(row, j, gen[row]);
        }
        for row in 0..s.num_factors() {
            e_new.set(row, j, exps[row]);
        }
    }

    ConPolyZonotope::new(
        DenseVector::new(c),
        g_new,
        e_new,
        s.con_generators().clone(),
        s.con_offset().clone(),
        s.con_exponents().clone(),
    )
    .expect("compact_gen preserves dimension consistency")
}

/// Merge duplicate constraint exponent columns, fold the constant
/// contribution of all-zero exponent columns into `b` (`b := b - A(:,i)`),
/// and drop all-zero constraint columns.
pub fn compact_con(s: &ConPolyZonotope) -> ConPolyZonotope {
    let m = s.num_constraints();
    let (unique, groups) = unique_columns(s.con_exponents());

    let mut b: Vec<f64> = s.con_offset().as_slice().to_vec();
    let mut kept_cols: Vec<(Vec<f64>, Vec<u32>)> = Vec::new();
    for (j, g) in groups.iter().enumerate() {
        let mut merged = vec![0.0; m];
        for &i in g {
            for row in 0..m {
                merged[row] += s.con_generators().get(row, i);
            }
        }
        if unique.col_is_zero(j) {
            for row in 0..m {
                b[row] -= merged[row];
            }
        } else if merged.iter().any(|&v| v != 0.0) {
            kept_cols.push((merged, unique.col(j)));
        }
    }

    let q = kept_cols.len();
    let mut a_new = DenseMatrix::zeros(m, q);
    let mut r_new = ExponentMatrix::zeros(s.num_factors(), q);
    for (j, (gen, exps)) in kept_cols.iter().enumerate() {
        for row in 0..m {
            a_new.set(row, j, gen[row]);
        }
        for row in 0..s.num_factors() {
            r_new.set(row, j, exps[row]);
        }
    }

    ConPolyZonotope::new(
        s.center().clone(),
        s.generators().clone(),
        s.exponents().clone(),
        a_new,
        DenseVector::new(b),
        r_new,
    )
    .expect("compact_con preserves dimension consistency")
}

/// `compact_con(compact_gen(s))`: the canonical regular form used by the set
/// operations.
pub fn compact(s: &ConPolyZonotope) -> ConPolyZonotope {
    compact_con(&compact_gen(s))
}
