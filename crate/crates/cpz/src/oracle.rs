//! Witness sampling and independent checks used by the test suites.
//!
//! A witness of a CPZ is a factor assignment whose constraint residual
//! infinity norm is at most [`crate::WITNESS_TOL`]. Sampling draws uniform
//! proposals from a seeded generator, discards proposals whose raw residual
//! exceeds a rejection threshold, and drives the survivors onto the
//! constraint manifold with a damped Gauss-Newton iteration. Proposals are
//! drawn sequentially from the seed and polished independently, so the result
//! is deterministic for a given seed whether or not the polish runs in
//! parallel.

use crate::linalg::{solve, DenseMatrix, DenseVector};
use crate::sets::{ConPolyZonotope, FactorAssignment};
use crate::{CpzError, Result, WITNESS_TOL};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// xorshift64* generator: `x ^= x >> 12; x ^= x << 25; x ^= x >> 27;` with a
/// final multiply by `0x2545F4914F6CDD1D`. Small, seedable, and good enough
/// for proposal sampling; a zero seed is remapped to a fixed odd constant.
#[derive(Debug, Clone)]
pub struct XorShiftRng {
    state: u64,
}

impl XorShiftRng {
    pub fn new(seed: u64) -> Self {
        Self {
            state: if seed == 0 { 0x853C49E6748FEA9B } else { seed },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state ^= self.state >> 12;
        self.state ^= self.state << 25;
        self.state ^= self.state >> 27;
        self.state.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform in `[-1, 1)` with 53 bits of precision.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }
}

/// Knobs for [`sample_witnesses`].
#[derive(Debug, Clone)]
pub struct WitnessSampleConfig {
    /// Number of uniform proposals to draw.
    pub draws: usize,
    /// Proposals whose raw residual infinity norm exceeds this are discarded
    /// without polishing. Set it above `2^max_degree * q * max|A|` to polish
    /// every proposal.
    pub reject_tol: f64,
    /// Gauss-Newton iteration cap per proposal.
    pub polish_steps: usize,
    /// Generator seed; equal seeds give identical output.
    pub seed: u64,
}

impl Default for WitnessSampleConfig {
    fn default() -> Self {
        Self {
            draws: 1000,
            reject_tol: 1e-2,
            polish_steps: 25,
            seed: 0,
        }
    }
}

/// Jacobian of the constraint residual with respect to the factors:
/// `J(row, k) = sum_i A(row, i) R(k, i) a_k^(R(k,i)-1) prod_{l != k} a_l^R(l,i)`.
fn constraint_jacobian(s: &ConPolyZonotope, alpha: &[f64]) -> DenseMatrix {
    let m = s.num_constraints();
    let p = s.num_factors();
    let r = s.con_exponents();
    let a = s.con_generators();
    let mut j = DenseMatrix::zeros(m, p);
    for i in 0..a.cols() {
        for k in 0..p {
            let ex = r.get(k, i);
            if ex == 0 {
                continue;
            }
            let mut w = ex as f64 * alpha[k].powi(ex as i32 - 1);
            for l in 0..p {
                if l != k {
                    let el = r.get(l, i);
                    if el > 0 {
                        w *= alpha[l].powi(el as i32);
                    }
                }
            }
            if w == 0.0 {
                continue;
            }
            for row in 0..m {
                j.set(row, k, j.get(row, k) + a.get(row, i) * w);
            }
        }
    }
    j
}

/// Damped Gauss-Newton projection of an assignment onto the constraint
/// manifold. Uses the minimum-norm step `-J^T (J J^T + ridge)^{-1} r`,
/// backtracks until the residual decreases, clamps every iterate to
/// `[-1, 1]^p`, and returns the best iterate seen, so polishing never makes a
/// residual worse.
pub fn polish(s: &ConPolyZonotope, alpha: &FactorAssignment, steps: usize) -> FactorAssignment {
    let m = s.num_constraints();
    let p = s.num_factors();
    if m == 0 || p == 0 {
        return alpha.clone();
    }
    let mut cur: Vec<f64> = alpha.values().to_vec();
    let residual = |v: &[f64]| -> DenseVector {
        s.constraint_residual(&FactorAssignment::from_slice(v).expect("clamped"))
            .expect("length matches")
    };
    let mut best = cur.clone();
    let mut best_norm = residual(&cur).inf_norm();

    for _ in 0..steps {
        let r = residual(&cur);
        let r_norm = r.inf_norm();
        if r_norm <= WITNESS_TOL {
            break;
        }
        let mut j = constraint_jacobian(s, &cur);
        // minimum-norm step, with an active-set projection: whenever the
        // step pushes a coordinate that already sits on the box boundary
        // further outward, that coordinate is frozen (its Jacobian column
        // zeroed) and the step is recomputed, so corrections are not wasted
        // on directions that clamping immediately undoes
        let mut delta = DenseVector::new(vec![0.0; p]);
        let mut solved = false;
        for _pass in 0..=p {
            // J J^T + ridge, ridge scaled to the system's magnitude
            let jjt = crate::linalg::mat_mul(&j, &j.transpose()).expect("shapes agree");
            let ridge = 1e-12 * (1.0 + jjt.max_abs());
            let mut sys = jjt;
            for i in 0..m {
                sys.set(i, i, sys.get(i, i) + ridge);
            }
            let y = match solve(&sys, &r) {
                Ok(y) => y,
                Err(_) => break,
            };
            delta = j.transpose().mat_vec(&y).expect("shapes agree");
            let mut refrozen = false;
            for k in 0..p {
                let outward = (cur[k] >= 1.0 && delta[k] < 0.0)
                    || (cur[k] <= -1.0 && delta[k] > 0.0);
                if outward {
                    for row in 0..m {
                        j.set(row, k, 0.0);
                    }
                    refrozen = true;
                }
            }
            if !refrozen {
                solved = true;
                break;
            }
        }
        if !solved {
            break;
        }

        let mut improved = false;
        for t in [1.0, 0.5, 0.25, 0.125] {
            let cand: Vec<f64> = cur
                .iter()
                .enumerate()
                .map(|(k, &v)| (v - t * delta[k]).clamp(-1.0, 1.0))
                .collect();
            let cand_norm = residual(&cand).inf_norm();
            if cand_norm < r_norm {
                cur = cand;
                if cand_norm < best_norm {
                    best_norm = cand_norm;
                    best = cur.clone();
                }
                improved = true;
                break;
            }
        }
        if !improved {
            break;
        }
    }
    FactorAssignment::from_slice(&best).expect("clamped iterates stay in bounds")
}

fn draw_proposals(p: usize, cfg: &WitnessSampleConfig) -> Vec<Vec<f64>> {
    let mut rng = XorShiftRng::new(cfg.seed);
    (0..cfg.draws)
        .map(|_| (0..p).map(|_| rng.next_unit()).collect())
        .collect()
}

fn polish_proposal(
    s: &ConPolyZonotope,
    cfg: &WitnessSampleConfig,
    proposal: &[f64],
) -> Option<FactorAssignment> {
    let alpha = FactorAssignment::from_slice(proposal).expect("proposals are in range");
    if s.num_constraints() == 0 {
        return Some(alpha);
    }
    let raw = s
        .constraint_residual(&alpha)
        .expect("length matches")
        .inf_norm();
    if raw > cfg.reject_tol {
        return None;
    }
    let out = polish(s, &alpha, cfg.polish_steps);
    let norm = s
        .constraint_residual(&out)
        .expect("length matches")
        .inf_norm();
    (norm <= WITNESS_TOL).then_some(out)
}

/// Witness sampling; polishes accepted proposals in parallel when the
/// `parallel` feature is on. Output order follows proposal order, so the
/// result is identical to [`sample_witnesses_seq`] for the same config.
pub fn sample_witnesses(s: &ConPolyZonotope, cfg: &WitnessSampleConfig) -> Vec<FactorAssignment> {
    let proposals = draw_proposals(s.num_factors(), cfg);
    #[cfg(feature = "parallel")]
    {
        proposals
            .par_iter()
            .filter_map(|prop| polish_proposal(s, cfg, prop))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        proposals
            .iter()
            .filter_map(|prop| polish_proposal(s, cfg, prop))
            .collect()
    }
}

/// Strictly sequential witness sampling (available regardless of features).
pub fn sample_witnesses_seq(
    s: &ConPolyZonotope,
    cfg: &WitnessSampleConfig,
) -> Vec<FactorAssignment> {
    draw_proposals(s.num_factors(), cfg)
        .iter()
        .filter_map(|prop| polish_proposal(s, cfg, prop))
        .collect()
}

/// Points of the set: every sampled witness pushed through the generator
/// polynomial.
pub fn point_cloud(s: &ConPolyZonotope, cfg: &WitnessSampleConfig) -> Vec<DenseVector> {
    sample_witnesses(s, cfg)
        .iter()
        .map(|w| s.eval_point(w).expect("witness length matches"))
        .collect()
}

/// Which operation a witness pair is being mapped through.
pub enum OpKind<'a> {
    LinearMap(&'a DenseMatrix),
    QuadraticMap(&'a [DenseMatrix]),
    MinkowskiSum,
    CartesianProduct,
    /// Convex hull with a fixed value for the interpolation factor.
    ConvexHull(f64),
    /// Both witnesses must map to the same point of the two operands.
    Intersect,
    Union,
}

/// Lift a witness of the first union operand into the union's factor space:
/// selectors at `(+1, +1)`, the second operand's block zeroed.
pub fn union_lift_first(
    s1: &ConPolyZonotope,
    s2: &ConPolyZonotope,
    w: &FactorAssignment,
) -> FactorAssignment {
    let p1 = s1.num_factors().max(1);
    let p2 = s2.num_factors().max(1);
    let mut v = vec![1.0, 1.0];
    v.extend_from_slice(w.values());
    v.resize(2 + p1, 0.0); // padded factor of a factor-free operand
    v.resize(2 + p1 + p2, 0.0);
    FactorAssignment::from_slice(&v).expect("in bounds")
}

/// Lift a witness of the second union operand: selectors at `(-1, -1)`, the
/// first operand's block zeroed.
pub fn union_lift_second(
    s1: &ConPolyZonotope,
    s2: &ConPolyZonotope,
    w: &FactorAssignment,
) -> FactorAssignment {
    let p1 = s1.num_factors().max(1);
    let p2 = s2.num_factors().max(1);
    let mut v = vec![-1.0, -1.0];
    v.resize(2 + p1, 0.0);
    v.extend_from_slice(w.values());
    v.resize(2 + p1 + p2, 0.0);
    FactorAssignment::from_slice(&v).expect("in bounds")
}

/// Map a witness pair of the operands through `op` and return the worst
/// deviation observed: the lifted assignment's residual in `result` and the
/// gap between `result`'s evaluation and the closed-form expected point. For
/// [`OpKind::Intersect`] the two witnesses must hit the same point; for
/// single-operand ops the second witness is ignored.
pub fn witness_map_deviation(
    op: &OpKind,
    s1: &ConPolyZonotope,
    s2: &ConPolyZonotope,
    result: &ConPolyZonotope,
    w1: &FactorAssignment,
    w2: &FactorAssignment,
) -> Result<f64> {
    let x1 = s1.eval_point(w1)?;
    let x2 = s2.eval_point(w2)?;
    let (lifts, expected): (Vec<FactorAssignment>, Vec<DenseVector>) = match op {
        OpKind::LinearMap(m) => (vec![w1.clone()], vec![m.mat_vec(&x1)?]),
        OpKind::QuadraticMap(qs) => {
            let mut vals = Vec::with_capacity(qs.len());
            for q in qs.iter() {
                vals.push(x1.dot(&q.mat_vec(&x1)?)?);
            }
            (vec![w1.clone()], vec![DenseVector::new(vals)])
        }
        OpKind::MinkowskiSum => (vec![w1.concat(w2)], vec![x1.add(&x2)?]),
        OpKind::CartesianProduct => (vec![w1.concat(w2)], vec![x1.concat(&x2)]),
        OpKind::ConvexHull(lam) => {
            let joint = w1
                .concat(w2)
                .concat(&FactorAssignment::from_slice(&[*lam])?);
            let expect = x1
                .scale(0.5 * (1.0 + lam))
                .add(&x2.scale(0.5 * (1.0 - lam)))?;
            (vec![joint], vec![expect])
        }
        OpKind::Intersect => {
            if x1.sub(&x2)?.inf_norm() > WITNESS_TOL {
                return Err(CpzError::Validation(
                    "intersection witnesses must map to the same point".into(),
                ));
            }
            (vec![w1.concat(w2)], vec![x1])
        }
        OpKind::Union => (
            vec![
                union_lift_first(s1, s2, w1),
                union_lift_second(s1, s2, w2),
            ],
            vec![x1, x2],
        ),
    };

    let mut worst = 0.0_f64;
    for (lift, expect) in lifts.iter().zip(&expected) {
        worst = worst.max(result.constraint_residual(lift)?.inf_norm());
        worst = worst.max(result.eval_point(lift)?.sub(expect)?.inf_norm());
    }
    Ok(worst)
}

/// Random CPZ with pairwise-distinct nonzero exponent columns and a known
/// witness: `b` is set to the constraint polynomial's value at a random
/// assignment, which is returned alongside the set.
pub fn random_regular_cpz(
    rng: &mut XorShiftRng,
    n: usize,
    p: usize,
    h: usize,
    m: usize,
    q: usize,
) -> (ConPolyZonotope, FactorAssignment) {
    let g = random_matrix(rng, n, h);
    let e = random_exponents(rng, p, h);
    let a = random_matrix(rng, m, q);
    let r = random_exponents(rng, p, q);
    let alpha = FactorAssignment::from_slice(
        &(0..p).map(|_| rng.next_unit()).collect::<Vec<_>>(),
    )
    .expect("in range");
    // choose b so alpha is a witness by construction
    let mut b = vec![0.0; m];
    for i in 0..q {
        let w = crate::sets::monomial(alpha.values(), &r, i);
        for row in 0..m {
            b[row] += w * a.get(row, i);
        }
    }
    let s = ConPolyZonotope::new(DenseVector::new(vec![0.0; n]), g, e, a, DenseVector::new(b), r)
        .expect("generated shapes are consistent");
    debug_assert!(s.is_regular());
    (s, alpha)
}

fn random_matrix(rng: &mut XorShiftRng, rows: usize, cols: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.next_unit());
        }
    }
    m
}

/// Exponent columns with entries in `{0, 1, 2}`, redrawn until nonzero and
/// distinct from earlier columns. Requires `3^p > cols`.
fn random_exponents(rng: &mut XorShiftRng, p: usize, cols: usize) -> crate::linalg::ExponentMatrix {
    assert!(
        cols == 0 || 3_usize.pow(p as u32) > cols,
        "cannot place {cols} distinct nonzero exponent columns over {p} factors"
    );
    let mut chosen: Vec<Vec<u32>> = Vec::with_capacity(cols);
    while chosen.len() < cols {
        let col: Vec<u32> = (0..p).map(|_| rng.next_u64() % 3).map(|v| v as u32).collect();
        if col.iter().all(|&v| v == 0) || chosen.contains(&col) {
            continue;
        }
        chosen.push(col);
    }
    let mut e = crate::linalg::ExponentMatrix::zeros(p, cols);
    for (j, col) in chosen.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            e.set(i, j, v);
        }
    }
    e
}
