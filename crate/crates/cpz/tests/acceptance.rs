//! Acceptance suite: one test per acceptance criterion, each ending in a
//! single pass/fail line. Tolerances are pinned here and nowhere else.

use std::time::Instant;

use cpz::convert::{ellipsoid_witness, from_ellipsoid, from_interval};
use cpz::enclosure::{
    demo_f1, demo_f2, demo_nonlinear_map, enclosing_box, region_above_parabola,
    region_below_parabola, taylor_poly_eval, taylor_remainder,
};
use cpz::linalg::{mat_mul, solve, sym_eig, DenseMatrix, DenseVector, ExponentMatrix};
use cpz::ops;
use cpz::oracle::{
    random_regular_cpz, sample_witnesses, sample_witnesses_seq, union_lift_first,
    union_lift_second, witness_map_deviation, OpKind, WitnessSampleConfig, XorShiftRng,
};
use cpz::regularize::compact;
use cpz::setfile::SetFile;
use cpz::sets::{example1, ConPolyZonotope, Ellipsoid, FactorAssignment, IntervalBox};

fn assignment(rng: &mut XorShiftRng, p: usize) -> FactorAssignment {
    FactorAssignment::from_slice(&(0..p).map(|_| rng.next_unit()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn criterion_1_witness_mapping_through_all_operations() {
    let start = Instant::now();
    const PAIRS: usize = 1000;
    const TOL: f64 = 1e-9;

    let mut rng = XorShiftRng::new(1);
    let mut dims = XorShiftRng::new(11);
    let mut pick = |lo: usize, hi: usize| lo + (dims.next_u64() as usize) % (hi - lo + 1);

    let mut worst = 0.0_f64;
    for i in 0..PAIRS {
        // random operand pair with n <= 4, p <= 4, h <= 5, m <= 2
        let n = pick(1, 4);
        let (p1, p2) = (pick(2, 4), pick(2, 4));
        let (h1, h2) = (pick(0, 5), pick(0, 5));
        let (m1, m2) = (pick(0, 2), pick(0, 2));
        let (q1, q2) = (
            if m1 == 0 { 0 } else { pick(1, 3) },
            if m2 == 0 { 0 } else { pick(1, 3) },
        );
        let (s1, w1) = random_regular_cpz(&mut rng, n, p1, h1, m1, q1);
        let (s2, w2) = random_regular_cpz(&mut rng, n, p2, h2, m2, q2);

        let mut m = DenseMatrix::zeros(n, n);
        let mut q = DenseMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, rng.next_unit());
                q.set(r, c, rng.next_unit());
            }
        }
        let qs = [q];
        let lam = -1.0 + 2.0 * i as f64 / (PAIRS - 1) as f64;

        let lin = ops::linear_map(&m, &s1).unwrap();
        let quad = ops::quadratic_map(&qs, &s1).unwrap();
        let sum = ops::minkowski_sum(&s1, &s2).unwrap();
        let prod = ops::cartesian_product(&s1, &s2).unwrap();
        let hull = ops::convex_hull(&s1, &s2).unwrap();
        // self-intersection: the documented lifting needs a shared point
        let inter = ops::intersect(&s1, &s1).unwrap();
        let uni = ops::union(&s1, &s2).unwrap();

        let checks: [(OpKind, &ConPolyZonotope, &ConPolyZonotope, &ConPolyZonotope, &FactorAssignment); 7] = [
            (OpKind::LinearMap(&m), &s1, &s1, &lin, &w1),
            (OpKind::QuadraticMap(&qs), &s1, &s1, &quad, &w1),
            (OpKind::MinkowskiSum, &s1, &s2, &sum, &w2),
            (OpKind::CartesianProduct, &s1, &s2, &prod, &w2),
            (OpKind::ConvexHull(lam), &s1, &s2, &hull, &w2),
            (OpKind::Intersect, &s1, &s1, &inter, &w1),
            (OpKind::Union, &s1, &s2, &uni, &w2),
        ];
        for (op, a, b, result, second) in checks {
            let d = witness_map_deviation(&op, a, b, result, &w1, second).unwrap();
            worst = worst.max(d);
        }
    }
    assert!(worst <= TOL, "worst deviation {worst:e} exceeds {TOL:e}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("criterion 1 (witness mapping through 7 operations x {PAIRS} random pairs, worst {worst:.2e}, {elapsed:?}): PASS");
}

#[test]
fn criterion_2_quadratic_map_pointwise_identity() {
    const TOL: f64 = 1e-9;
    let mut rng = XorShiftRng::new(2);
    let mut worst = 0.0_f64;
    for round in 0..20 {
        let (s, _) = if round == 0 {
            (example1(), FactorAssignment::from_slice(&[0.0; 3]).unwrap())
        } else {
            random_regular_cpz(&mut rng, 2, 3, 4, 1, 3)
        };
        let mut qs = Vec::new();
        for _ in 0..2 {
            let mut q = DenseMatrix::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    q.set(i, j, rng.next_unit());
                }
            }
            qs.push(q);
        }
        let out = ops::quadratic_map(&qs, &s).unwrap();
        for _ in 0..50 {
            let alpha = assignment(&mut rng, 3);
            let x = s.eval_point(&alpha).unwrap();
            let y = out.eval_point(&alpha).unwrap();
            for (i, q) in qs.iter().enumerate() {
                let expect = x.dot(&q.mat_vec(&x).unwrap()).unwrap();
                worst = worst.max((y[i] - expect).abs());
            }
        }
    }
    assert!(worst <= TOL, "worst deviation {worst:e}");
    println!("criterion 2 (quadratic map pointwise identity, worst {worst:.2e}): PASS");
}

#[test]
fn criterion_3_union_constraint_consistency_and_separation() {
    const CONSISTENCY_TOL: f64 = 1e-12;
    const SEPARATION_TOL: f64 = 1e-4;

    // consistency: the second constraint row of the raw union equals the
    // closed-form selector polynomial on 10^4 random assignments
    let s1 = example1();
    let shift = ops::linear_map(&DenseMatrix::identity(2), &s1).unwrap();
    let raw = ops::union_raw(&s1, &shift).unwrap();
    let (p1, p2) = (3, 3);
    let mut rng = XorShiftRng::new(3);
    let mut worst = 0.0_f64;
    for _ in 0..10_000 {
        let alpha = assignment(&mut rng, 2 + p1 + p2);
        let v = alpha.values();
        let f1: f64 = v[2..2 + p1].iter().map(|x| x * x).sum::<f64>() / p1 as f64;
        let f2: f64 = v[2 + p1..].iter().map(|x| x * x).sum::<f64>() / p2 as f64;
        let g = (1.0 + v[0] + 0.5 * f1 * (1.0 - v[0])) * (1.0 - 0.5 * f2) - v[1] - 1.0;
        let r = raw.constraint_residual(&alpha).unwrap();
        worst = worst.max((r[1] - g).abs());
    }
    assert!(worst <= CONSISTENCY_TOL, "worst consistency gap {worst:e}");

    // separation: every sampled union witness must pin the selector pair
    // within 1e-4 of (1,1) or (-1,-1) with the deselected factor block
    // within 1e-4 of zero. The selector constraint holds only at corner
    // points of the selector plane, so uniform proposals essentially never
    // survive; witnesses are sampled by polishing noisy corner-seeded
    // proposals (plus the plain sampler, whose rare survivors are checked
    // too).
    let a = example1();
    let b = ops::linear_map(&DenseMatrix::from_rows(&[&[0.0, -1.0], &[1.0, 0.0]]), &a).unwrap();
    let u = ops::union(&a, &b).unwrap();
    let p_total = u.num_factors(); // 2 selectors + 3 + 3
    let mut proposals: Vec<FactorAssignment> = Vec::new();
    let mut noise = XorShiftRng::new(33);
    for i in 0..1000 {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let mut v = vec![0.0; p_total];
        v[0] = (sign - 0.05 * sign * (noise.next_unit().abs())).clamp(-1.0, 1.0);
        v[1] = (sign - 0.05 * sign * (noise.next_unit().abs())).clamp(-1.0, 1.0);
        let active = if sign > 0.0 { 2..5 } else { 5..8 };
        let inactive = if sign > 0.0 { 5..8 } else { 2..5 };
        for k in active {
            v[k] = noise.next_unit();
        }
        for k in inactive {
            v[k] = 0.05 * noise.next_unit();
        }
        proposals.push(FactorAssignment::from_slice(&v).unwrap());
    }
    let mut sampled: Vec<FactorAssignment> = proposals
        .iter()
        .map(|prop| cpz::oracle::polish(&u, prop, 100))
        .filter(|w| u.constraint_residual(w).unwrap().inf_norm() <= 1e-9)
        .collect();
    let plain = sample_witnesses(
        &u,
        &WitnessSampleConfig {
            draws: 10_000,
            reject_tol: 1e-6,
            seed: 34,
            ..Default::default()
        },
    );
    sampled.extend(plain);
    assert!(sampled.len() >= 200, "only {} union witnesses", sampled.len());
    let mut hit_a = 0;
    let mut hit_b = 0;
    for w in &sampled {
        let v = w.values();
        let at_plus = (v[0] - 1.0).abs() <= SEPARATION_TOL && (v[1] - 1.0).abs() <= SEPARATION_TOL;
        let at_minus =
            (v[0] + 1.0).abs() <= SEPARATION_TOL && (v[1] + 1.0).abs() <= SEPARATION_TOL;
        assert!(at_plus || at_minus, "selectors ({}, {}) not pinned", v[0], v[1]);
        let deselected = if at_plus { 5..8 } else { 2..5 };
        for k in deselected {
            assert!(
                v[k].abs() <= SEPARATION_TOL,
                "deselected factor {k} = {} not zeroed",
                v[k]
            );
        }
        if at_plus {
            hit_a += 1;
        } else {
            hit_b += 1;
        }
    }
    assert!(hit_a > 0 && hit_b > 0, "witnesses never reached one branch");
    println!("criterion 3 (union consistency worst {worst:.2e}; {hit_a}+{hit_b} separated witnesses): PASS");
}

#[test]
fn criterion_4_compaction_invariance() {
    const TOL: f64 = 1e-12;
    let mut rng = XorShiftRng::new(4);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let (base, _) = random_regular_cpz(&mut rng, 2, 3, 4, 1, 3);
        // duplicate columns and append constant columns in both parts
        let mut g_extra = DenseMatrix::zeros(2, 2);
        let mut e_extra = ExponentMatrix::zeros(3, 2);
        for i in 0..2 {
            g_extra.set(i, 0, rng.next_unit());
            g_extra.set(i, 1, rng.next_unit());
        }
        for k in 0..3 {
            e_extra.set(k, 0, base.exponents().get(k, 0));
        }
        let mut a_extra = DenseMatrix::zeros(1, 2);
        let mut r_extra = ExponentMatrix::zeros(3, 2);
        a_extra.set(0, 0, rng.next_unit());
        a_extra.set(0, 1, rng.next_unit());
        for k in 0..3 {
            r_extra.set(k, 0, base.con_exponents().get(k, 0));
        }
        let messy = ConPolyZonotope::new(
            base.center().clone(),
            base.generators().hcat(&g_extra).unwrap(),
            base.exponents().hcat(&e_extra).unwrap(),
            base.con_generators().hcat(&a_extra).unwrap(),
            base.con_offset().clone(),
            base.con_exponents().hcat(&r_extra).unwrap(),
        )
        .unwrap();
        assert!(!messy.is_regular());
        let out = compact(&messy);
        assert!(out.is_regular(), "compaction output not regular");
        assert_eq!(compact(&out), out, "compaction not idempotent");
        for _ in 0..1000 {
            let alpha = assignment(&mut rng, 3);
            let p0 = messy.eval_point(&alpha).unwrap();
            let p1 = out.eval_point(&alpha).unwrap();
            worst = worst.max(p0.sub(&p1).unwrap().inf_norm());
            let r0 = messy.constraint_residual(&alpha).unwrap();
            let r1 = out.constraint_residual(&alpha).unwrap();
            worst = worst.max(r0.sub(&r1).unwrap().inf_norm());
        }
    }
    assert!(worst <= TOL, "worst invariance gap {worst:e}");
    println!("criterion 4 (compaction invariance worst {worst:.2e}, idempotent, regular): PASS");
}

#[test]
fn criterion_5_ellipsoid_embedding() {
    const WITNESS_TOL: f64 = 1e-9;
    const SLACK_TOL: f64 = 1e-9;
    const EIG_TOL: f64 = 1e-10;
    let mut rng = XorShiftRng::new(5);
    let mut worst_res = 0.0_f64;
    let mut worst_eig = 0.0_f64;
    for round in 0..10 {
        // random SPD shape matrix M M^T + I/2, dimension cycling 2..=5
        let n = 2 + round % 4;
        let mut mtx = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                mtx.set(i, j, rng.next_unit());
            }
        }
        let q = mat_mul(&mtx, &mtx.transpose())
            .unwrap()
            .add(&DenseMatrix::diag(&vec![0.5; n]))
            .unwrap();
        let c = DenseVector::new((0..n).map(|_| rng.next_unit()).collect());
        let e = Ellipsoid::new(c.clone(), q.clone()).unwrap();
        let s = from_ellipsoid(&e).unwrap();

        let (values, vectors) = sym_eig(&q).unwrap();
        let rec = mat_mul(
            &mat_mul(&vectors, &DenseMatrix::diag(values.as_slice())).unwrap(),
            &vectors.transpose(),
        )
        .unwrap();
        for i in 0..n {
            for j in 0..n {
                worst_eig = worst_eig.max((rec.get(i, j) - q.get(i, j)).abs());
            }
        }

        for step in 0..200 {
            // unit-sphere direction, boundary (t = 1) or interior (t < 1)
            let mut u: Vec<f64> = (0..n).map(|_| rng.next_unit()).collect();
            let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-9);
            u.iter_mut().for_each(|v| *v /= norm);
            let boundary = step % 2 == 0;
            let t = if boundary { 1.0 } else { 0.9 * (0.5 + 0.5 * rng.next_unit().abs()) };
            let z = DenseVector::new((0..n).map(|k| t * values[k].sqrt() * u[k]).collect());
            let x = vectors.mat_vec(&z).unwrap().add(&c).unwrap();
            let w = ellipsoid_witness(&e, &x).unwrap();
            for &v in w.values() {
                assert!(v.abs() <= 1.0 + SLACK_TOL, "factor {v} escapes the box");
            }
            worst_res = worst_res.max(s.constraint_residual(&w).unwrap().inf_norm());
            worst_res = worst_res.max(s.eval_point(&w).unwrap().sub(&x).unwrap().inf_norm());
            // the point really lies in the ellipsoid
            let d = x.sub(&c).unwrap();
            let qd = solve(&q, &d).unwrap();
            assert!(d.dot(&qd).unwrap() <= 1.0 + WITNESS_TOL, "point outside ellipsoid");
            if boundary {
                // boundary points saturate the slack factor
                assert!((w.values()[n] - 1.0).abs() <= WITNESS_TOL);
            }
        }
    }
    assert!(worst_res <= WITNESS_TOL, "worst residual {worst_res:e}");
    assert!(worst_eig <= EIG_TOL, "worst reconstruction {worst_eig:e}");
    println!("criterion 5 (ellipsoid witnesses worst {worst_res:.2e}, eig reconstruction {worst_eig:.2e}): PASS");
}

#[test]
fn criterion_6_interval_intersection() {
    const HULL_TOL: f64 = 1e-3;
    // [0,2] n [1,3] = [1,2]
    let a = from_interval(
        &IntervalBox::new(DenseVector::new(vec![0.0]), DenseVector::new(vec![2.0])).unwrap(),
    );
    let b = from_interval(
        &IntervalBox::new(DenseVector::new(vec![1.0]), DenseVector::new(vec![3.0])).unwrap(),
    );
    let inter = ops::intersect(&a, &b).unwrap();
    // loose rejection: the raw residual is bounded by 3, so polish everything
    let cfg = WitnessSampleConfig {
        draws: 10_000,
        reject_tol: 4.0,
        seed: 66,
        ..Default::default()
    };
    let ws = sample_witnesses(&inter, &cfg);
    assert!(ws.len() > 1000, "only {} witnesses", ws.len());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for w in &ws {
        let x = inter.eval_point(w).unwrap()[0];
        assert!((1.0 - 1e-9..=2.0 + 1e-9).contains(&x), "point {x} outside [1,2]");
        lo = lo.min(x);
        hi = hi.max(x);
    }
    assert!(lo <= 1.0 + HULL_TOL, "sampled hull starts at {lo}");
    assert!(hi >= 2.0 - HULL_TOL, "sampled hull ends at {hi}");

    // disjoint operands: no witness survives a million draws
    let c = from_interval(
        &IntervalBox::new(DenseVector::new(vec![5.0]), DenseVector::new(vec![6.0])).unwrap(),
    );
    let empty = ops::intersect(&a, &c).unwrap();
    let cfg = WitnessSampleConfig {
        draws: 1_000_000,
        seed: 67,
        ..Default::default()
    };
    let ws = sample_witnesses(&empty, &cfg);
    assert!(ws.is_empty(), "{} spurious witnesses of an empty set", ws.len());
    println!("criterion 6 (interval intersection hull [{lo:.5}, {hi:.5}], disjoint case empty): PASS");
}

#[test]
fn criterion_7_taylor_enclosure_and_demo() {
    let start = Instant::now();
    // residual containment: f(x) - T2(x) inside the remainder interval for
    // every grid point of each region (1e-12 round-off slack for the
    // exactly-bilinear component)
    let cases = [
        (
            demo_f1(),
            region_above_parabola(),
            IntervalBox::new(
                DenseVector::new(vec![-1.0, 0.0]),
                DenseVector::new(vec![1.0, 1.0]),
            )
            .unwrap(),
        ),
        (
            demo_f2(),
            region_below_parabola(),
            // the parabola peaks at x2 = 1/2, so the lower region's box
            // extends above zero
            IntervalBox::new(
                DenseVector::new(vec![-1.0, -1.0]),
                DenseVector::new(vec![1.0, 0.5]),
            )
            .unwrap(),
        ),
    ];
    let mut checked = 0usize;
    let mut contained = 0usize;
    for (f, region, domain) in &cases {
        let x_star = region.center();
        let rem = taylor_remainder(f, x_star, domain).unwrap();
        for i in 0..51 {
            for j in 0..51 {
                let a1 = -1.0 + i as f64 / 25.0;
                let a2 = -1.0 + j as f64 / 25.0;
                let x = region
                    .eval_point(&FactorAssignment::from_slice(&[a1, a2]).unwrap())
                    .unwrap();
                let exact = (f.value)(x[0], x[1]);
                let poly = taylor_poly_eval(f, x_star, &x).unwrap();
                checked += 1;
                let ok = (0..2).all(|o| {
                    let res = exact[o] - poly[o];
                    let iv = rem.component(o);
                    iv.lo() - 1e-12 <= res && res <= iv.hi() + 1e-12
                });
                if ok {
                    contained += 1;
                }
            }
        }
    }
    assert_eq!(contained, checked, "containment {contained}/{checked}");

    let demo = demo_nonlinear_map().unwrap();
    let ub = enclosing_box(&demo.union_image);
    for img in [&demo.image_above, &demo.image_below] {
        let bx = enclosing_box(img);
        for i in 0..2 {
            assert!(ub.lo[i] <= bx.lo[i] + 1e-12, "union box misses an image");
            assert!(ub.hi[i] >= bx.hi[i] - 1e-12, "union box misses an image");
        }
    }

    // sampled check: the union point cloud's bounding box covers the box of
    // the true images of 10^4 samples per region
    let mut rng = XorShiftRng::new(7);
    let mut true_box = [[f64::INFINITY, f64::NEG_INFINITY]; 2];
    let mut cloud_box = [[f64::INFINITY, f64::NEG_INFINITY]; 2];
    for (f, region, image, first) in [
        (&cases[0].0, &demo.region_above, &demo.image_above, true),
        (&cases[1].0, &demo.region_below, &demo.image_below, false),
    ] {
        for _ in 0..10_000 {
            let w = assignment(&mut rng, 2);
            let x = region.eval_point(&w).unwrap();
            let fx = (f.value)(x[0], x[1]);
            for i in 0..2 {
                true_box[i][0] = true_box[i][0].min(fx[i]);
                true_box[i][1] = true_box[i][1].max(fx[i]);
            }
            // both remainder corners, so the cloud brackets the true image
            for extra in [-1.0, 1.0] {
                let mut v = w.values().to_vec();
                v.resize(image.num_factors(), extra);
                let lifted = FactorAssignment::from_slice(&v).unwrap();
                let lift = if first {
                    union_lift_first(&demo.image_above, &demo.image_below, &lifted)
                } else {
                    union_lift_second(&demo.image_above, &demo.image_below, &lifted)
                };
                assert!(
                    demo.union_image.constraint_residual(&lift).unwrap().inf_norm() <= 1e-9,
                    "lifted union witness violates constraints"
                );
                let pt = demo.union_image.eval_point(&lift).unwrap();
                for i in 0..2 {
                    cloud_box[i][0] = cloud_box[i][0].min(pt[i]);
                    cloud_box[i][1] = cloud_box[i][1].max(pt[i]);
                }
            }
        }
    }
    for i in 0..2 {
        assert!(cloud_box[i][0] <= true_box[i][0] + 1e-9, "cloud box misses true image");
        assert!(cloud_box[i][1] >= true_box[i][1] - 1e-9, "cloud box misses true image");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}");
    println!("criterion 7 (Taylor residual containment {contained}/{checked}, union box covers images, {elapsed:?}): PASS");
}

#[test]
fn criterion_8_representation_size() {
    let s = example1();
    assert_eq!(s.representation_size(), 35);
    assert_eq!(
        ConPolyZonotope::singleton(DenseVector::new(vec![0.0, 0.0, 0.0])).representation_size(),
        3
    );
    // the formula matches the component dimensions on random sets
    let mut rng = XorShiftRng::new(8);
    for round in 0..1000 {
        let n = 1 + round % 4;
        let p = 2 + round % 3;
        let h = round % 6;
        let m = round % 3;
        let q = if m == 0 { 0 } else { 1 + round % 3 };
        let (s, _) = random_regular_cpz(&mut rng, n, p, h, m, q);
        assert_eq!(s.representation_size(), (n + p) * h + n + (m + p) * q + m);
    }
    // ... and tracks the components through operations
    for _ in 0..20 {
        let (a, _) = random_regular_cpz(&mut rng, 2, 3, 4, 1, 3);
        let (b, _) = random_regular_cpz(&mut rng, 2, 2, 3, 1, 2);
        for s in [
            ops::minkowski_sum(&a, &b).unwrap(),
            ops::convex_hull(&a, &b).unwrap(),
            ops::intersect(&a, &b).unwrap(),
            ops::union(&a, &b).unwrap(),
        ] {
            let (n, p, h, m, q) = (
                s.dim(),
                s.num_factors(),
                s.num_generators(),
                s.num_constraints(),
                s.num_constraint_generators(),
            );
            assert_eq!(s.representation_size(), (n + p) * h + n + (m + p) * q + m);
        }
    }
    println!("criterion 8 (representation size, fixture = 35): PASS");
}

#[test]
fn criterion_9_serialization_and_determinism() {
    // exact serialization round trip, including non-terminating decimals
    let mut g = DenseMatrix::zeros(2, 2);
    g.set(0, 0, 1.0 / 3.0);
    g.set(0, 1, 0.1 + 0.2);
    g.set(1, 0, f64::MIN_POSITIVE);
    g.set(1, 1, -1e300);
    let s = ConPolyZonotope::new(
        DenseVector::new(vec![std::f64::consts::PI, 0.0]),
        g,
        ExponentMatrix::from_rows(&[&[1, 0], &[0, 3]]),
        DenseMatrix::zeros(0, 0),
        DenseVector::empty(),
        ExponentMatrix::empty(2),
    )
    .unwrap();
    let json = serde_json::to_string(&SetFile::from_cpz(&s)).unwrap();
    let back: SetFile = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_cpz().unwrap(), s);

    let fixture = SetFile::from_cpz(&example1());
    let json1 = serde_json::to_string(&fixture).unwrap();
    let json2 = serde_json::to_string(&fixture).unwrap();
    assert_eq!(json1, json2);

    // bit-exact sampling determinism: same seed, same witnesses, parallel
    // and sequential agree
    let target = example1();
    let cfg = WitnessSampleConfig {
        draws: 2000,
        reject_tol: 8.0,
        seed: 99,
        ..Default::default()
    };
    let run1 = sample_witnesses(&target, &cfg);
    let run2 = sample_witnesses(&target, &cfg);
    let seq = sample_witnesses_seq(&target, &cfg);
    assert!(!run1.is_empty());
    assert_eq!(run1, run2, "repeat runs differ");
    assert_eq!(run1, seq, "parallel and sequential samplers differ");
    let other = sample_witnesses(
        &target,
        &WitnessSampleConfig { seed: 100, ..cfg },
    );
    assert_ne!(run1, other, "different seeds produced identical streams");
    println!("criterion 9 (serialization round trip and bit-exact sampling determinism): PASS");
}
