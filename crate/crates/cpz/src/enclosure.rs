//! Second-order Taylor enclosure of smooth maps `R^2 -> R^2` over CPZ
//! domains, plus the nonlinear-map demo built on it.
//!
//! The enclosure of `f` over a set `S` around an expansion point `x*` is the
//! quadratic Taylor polynomial applied exactly to `S` (its linear and
//! quadratic parts share the domain's factors, so no dependency is lost) plus
//! an interval bound on the third-order Lagrange remainder, added as an
//! independent box.

use crate::convert::from_interval;
use crate::linalg::{DenseMatrix, DenseVector, ExponentMatrix, IntervalScalar};
use crate::ops::{add_shared, linear_map, minkowski_sum, quadratic_map};
use crate::regularize::{compact, compact_gen};
use crate::sets::{ConPolyZonotope, FactorAssignment, IntervalBox};
use crate::{CpzError, Result};

/// A twice-differentiable map `R^2 -> R^2` with explicit derivatives and an
/// interval bound on its third derivatives over a box.
///
/// Indexing: `hessian(x)[out][i][j]` is `d^2 f_out / dx_i dx_j`;
/// `third(box)[out][k][i][j]` encloses `d^3 f_out / dx_k dx_i dx_j` over the
/// box.
pub struct SmoothFunction2d {
    pub value: fn(f64, f64) -> [f64; 2],
    pub jacobian: fn(f64, f64) -> [[f64; 2]; 2],
    pub hessian: fn(f64, f64) -> [[[f64; 2]; 2]; 2],
    pub third: fn(&IntervalBox) -> ThirdDerivativeBound,
}

/// Interval enclosure of all third partial derivatives, indexed
/// `[out][k][i][j]`.
pub type ThirdDerivativeBound = [[[[IntervalScalar; 2]; 2]; 2]; 2];

/// The quadratic Taylor polynomial of `f` around `x*`, evaluated at `x`.
pub fn taylor_poly_eval(f: &SmoothFunction2d, x_star: &DenseVector, x: &DenseVector) -> Result<DenseVector> {
    if x_star.len() != 2 || x.len() != 2 {
        return Err(CpzError::shape("Taylor evaluation", x_star.len(), 2));
    }
    let d = [x[0] - x_star[0], x[1] - x_star[1]];
    let v = (f.value)(x_star[0], x_star[1]);
    let j = (f.jacobian)(x_star[0], x_star[1]);
    let h = (f.hessian)(x_star[0], x_star[1]);
    let mut out = [0.0; 2];
    for o in 0..2 {
        let mut acc = v[o];
        for i in 0..2 {
            acc += j[o][i] * d[i];
            for l in 0..2 {
                acc += 0.5 * h[o][i][l] * d[i] * d[l];
            }
        }
        out[o] = acc;
    }
    Ok(DenseVector::new(out.to_vec()))
}

/// Interval bound on the third-order Lagrange remainder of the quadratic
/// Taylor polynomial around `x*`, valid for every `x` in `domain`:
/// `(1/6) sum_{k,i,l} d_k d_i d_l * d^3 f_out / dx_k dx_i dx_l` with
/// `d = domain - x*`.
pub fn taylor_remainder(
    f: &SmoothFunction2d,
    x_star: &DenseVector,
    domain: &IntervalBox,
) -> Result<IntervalBox> {
    if x_star.len() != 2 || domain.dim() != 2 {
        return Err(CpzError::shape("Taylor remainder", domain.dim(), 2));
    }
    let t = (f.third)(domain);
    let d = [
        domain
            .component(0)
            .sub(&IntervalScalar::point(x_star[0])),
        domain
            .component(1)
            .sub(&IntervalScalar::point(x_star[1])),
    ];
    let sixth = IntervalScalar::point(1.0 / 6.0);
    let mut lo = vec![0.0; 2];
    let mut hi = vec![0.0; 2];
    for o in 0..2 {
        let mut acc = IntervalScalar::zero();
        for k in 0..2 {
            for i in 0..2 {
                for l in 0..2 {
                    let term = d[k].mul(&d[i]).mul(&d[l]).mul(&t[o][k][i][l]);
                    acc = acc.add(&term);
                }
            }
        }
        let scaled = acc.mul(&sixth);
        lo[o] = scaled.lo();
        hi[o] = scaled.hi();
    }
    IntervalBox::new(DenseVector::new(lo), DenseVector::new(hi))
}

/// Enclosure of `f(S)` for `S` contained in `domain`: the exact image of `S`
/// under the quadratic Taylor polynomial around `x*`, Minkowski-summed with
/// the remainder box.
pub fn taylor_enclose(
    f: &SmoothFunction2d,
    x_star: &DenseVector,
    s: &ConPolyZonotope,
    domain: &IntervalBox,
) -> Result<ConPolyZonotope> {
    if s.dim() != 2 {
        return Err(CpzError::shape("Taylor enclosure domain", s.dim(), 2));
    }
    let shifted = ConPolyZonotope::new(
        s.center().sub(x_star)?,
        s.generators().clone(),
        s.exponents().clone(),
        s.con_generators().clone(),
        s.con_offset().clone(),
        s.con_exponents().clone(),
    )?;

    let j = (f.jacobian)(x_star[0], x_star[1]);
    let jac = DenseMatrix::from_rows(&[&j[0], &j[1]]);
    let v = (f.value)(x_star[0], x_star[1]);
    let lin_raw = linear_map(&jac, &shifted)?;
    let lin = ConPolyZonotope::new(
        lin_raw.center().add(&DenseVector::new(v.to_vec()))?,
        lin_raw.generators().clone(),
        lin_raw.exponents().clone(),
        lin_raw.con_generators().clone(),
        lin_raw.con_offset().clone(),
        lin_raw.con_exponents().clone(),
    )?;

    let h = (f.hessian)(x_star[0], x_star[1]);
    let qs = [
        DenseMatrix::from_rows(&[&h[0][0], &h[0][1]]).scale(0.5),
        DenseMatrix::from_rows(&[&h[1][0], &h[1][1]]).scale(0.5),
    ];
    let quad = quadratic_map(&qs, &shifted)?;

    // the linear and quadratic parts share the domain's factors
    let poly = compact_gen(&add_shared(&lin, &quad)?);
    let rem = taylor_remainder(f, x_star, domain)?;
    Ok(compact(&minkowski_sum(&poly, &from_interval(&rem))?))
}

/// Smallest axis-aligned box around the generator polynomial's range
/// (constraints ignored, so this is an outer bound): every monomial over
/// `[-1, 1]^p` lies in `[-1, 1]`.
pub fn enclosing_box(s: &ConPolyZonotope) -> IntervalBox {
    let n = s.dim();
    let mut lo = vec![0.0; n];
    let mut hi = vec![0.0; n];
    for i in 0..n {
        let radius: f64 = (0..s.num_generators())
            .map(|j| s.generators().get(i, j).abs())
            .sum();
        lo[i] = s.center()[i] - radius;
        hi[i] = s.center()[i] + radius;
    }
    IntervalBox::new(DenseVector::new(lo), DenseVector::new(hi)).expect("lo <= hi by construction")
}

fn region(c2: f64, g_sign: f64) -> ConPolyZonotope {
    ConPolyZonotope::new(
        DenseVector::new(vec![0.0, c2]),
        DenseMatrix::from_rows(&[&[1.0, 0.0, 0.0, 0.0], &[0.0, 0.25, 0.5, g_sign * 0.25]]),
        ExponentMatrix::from_rows(&[&[1, 2, 0, 2], &[0, 0, 1, 1]]),
        DenseMatrix::zeros(0, 0),
        DenseVector::empty(),
        ExponentMatrix::empty(2),
    )
    .expect("fixture is well-formed")
}

/// The part of the box `[-1, 1]^2` on or above the parabola `x2 = x1^2 / 2`:
/// `x1 = a1`, `x2` sweeps `[x1^2 / 2, 1]` as `a2` sweeps `[-1, 1]`.
pub fn region_above_parabola() -> ConPolyZonotope {
    region(0.5, -1.0)
}

/// The part of the box `[-1, 1]^2` on or below the parabola `x2 = x1^2 / 2`.
pub fn region_below_parabola() -> ConPolyZonotope {
    region(-0.5, 1.0)
}

/// First demo map:
/// `f(x) = (-1.6 + 0.5 x2 (2 - x1) + cos(0.5 x2), 0.5 + x2^2 + sin(0.4 x1 - 1))`.
pub fn demo_f1() -> SmoothFunction2d {
    SmoothFunction2d {
        value: |x1, x2| {
            [
                -1.6 + 0.5 * x2 * (2.0 - x1) + (0.5 * x2).cos(),
                0.5 + x2 * x2 + (0.4 * x1 - 1.0).sin(),
            ]
        },
        jacobian: |x1, x2| {
            [
                [-0.5 * x2, 1.0 - 0.5 * x1 - 0.5 * (0.5 * x2).sin()],
                [0.4 * (0.4 * x1 - 1.0).cos(), 2.0 * x2],
            ]
        },
        hessian: |x1, x2| {
            [
                [[0.0, -0.5], [-0.5, -0.25 * (0.5 * x2).cos()]],
                [[-0.16 * (0.4 * x1 - 1.0).sin(), 0.0], [0.0, 2.0]],
            ]
        },
        third: |b| {
            let z = IntervalScalar::zero();
            let mut t = [[[[z; 2]; 2]; 2]; 2];
            // output 0: only d^3/dx2^3 = 0.125 sin(0.5 x2) is nonzero
            t[0][1][1][1] = b
                .component(1)
                .mul(&IntervalScalar::point(0.5))
                .sin()
                .mul(&IntervalScalar::point(0.125));
            // output 1: only d^3/dx1^3 = -0.064 cos(0.4 x1 - 1) is nonzero
            t[1][0][0][0] = b
                .component(0)
                .mul(&IntervalScalar::point(0.4))
                .sub(&IntervalScalar::point(1.0))
                .cos()
                .mul(&IntervalScalar::point(-0.064));
            t
        },
    }
}

/// Second demo map:
/// `f(x) = (-0.6 + 2 sin(0.3 x2) + exp(0.3 x1), 0.1 + x1 x2)`.
pub fn demo_f2() -> SmoothFunction2d {
    SmoothFunction2d {
        value: |x1, x2| {
            [
                -0.6 + 2.0 * (0.3 * x2).sin() + (0.3 * x1).exp(),
                0.1 + x1 * x2,
            ]
        },
        jacobian: |x1, x2| {
            [
                [0.3 * (0.3 * x1).exp(), 0.6 * (0.3 * x2).cos()],
                [x2, x1],
            ]
        },
        hessian: |x1, x2| {
            [
                [
                    [0.09 * (0.3 * x1).exp(), 0.0],
                    [0.0, -0.18 * (0.3 * x2).sin()],
                ],
                [[0.0, 1.0], [1.0, 0.0]],
            ]
        },
        third: |b| {
            let z = IntervalScalar::zero();
            let mut t = [[[[z; 2]; 2]; 2]; 2];
            // output 0: d^3/dx1^3 = 0.027 exp(0.3 x1),
            //           d^3/dx2^3 = -0.054 cos(0.3 x2)
            t[0][0][0][0] = b
                .component(0)
                .mul(&IntervalScalar::point(0.3))
                .exp()
                .mul(&IntervalScalar::point(0.027));
            t[0][1][1][1] = b
                .component(1)
                .mul(&IntervalScalar::point(0.3))
                .cos()
                .mul(&IntervalScalar::point(-0.054));
            // output 1 is bilinear: all third derivatives vanish
            t
        },
    }
}

/// Everything the demo computes, kept around for inspection and plotting.
pub struct DemoResult {
    pub region_above: ConPolyZonotope,
    pub region_below: ConPolyZonotope,
    pub image_above: ConPolyZonotope,
    pub image_below: ConPolyZonotope,
    pub union_image: ConPolyZonotope,
}

/// The nonlinear-map demo: split the box `[-1, 1]^2` along the parabola
/// `x2 = x1^2 / 2`, enclose the image of the upper region under [`demo_f1`]
/// and the lower region under [`demo_f2`], and join the two images with the
/// exact union.
pub fn demo_nonlinear_map() -> Result<DemoResult> {
    let region_above = region_above_parabola();
    let region_below = region_below_parabola();
    let box_above = IntervalBox::new(
        DenseVector::new(vec![-1.0, 0.0]),
        DenseVector::new(vec![1.0, 1.0]),
    )?;
    // the parabola reaches x2 = 1/2 at x1 = +-1, so the lower region's
    // bounding box extends above zero
    let box_below = IntervalBox::new(
        DenseVector::new(vec![-1.0, -1.0]),
        DenseVector::new(vec![1.0, 0.5]),
    )?;
    let f1 = demo_f1();
    let f2 = demo_f2();
    let image_above = taylor_enclose(&f1, region_above.center(), &region_above, &box_above)?;
    let image_below = taylor_enclose(&f2, region_below.center(), &region_below, &box_below)?;
    let union_image = crate::ops::union(&image_above, &image_below)?;
    Ok(DemoResult {
        region_above,
        region_below,
        image_above,
        image_below,
        union_image,
    })
}

/// A point of a Taylor-enclosure output, obtained by evaluating the enclosure
/// at a domain witness with the remainder factors at zero. Used to build
/// demo point clouds without rejection sampling.
pub fn lift_through_enclosure(
    enclosure: &ConPolyZonotope,
    domain_factors: &FactorAssignment,
) -> Result<DenseVector> {
    let extra = enclosure.num_factors() - domain_factors.len();
    let mut v = domain_factors.values().to_vec();
    v.resize(v.len() + extra, 0.0);
    enclosure.eval_point(&FactorAssignment::from_slice(&v)?)
}
