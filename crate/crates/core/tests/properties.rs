use num_complex::Complex64;
use proptest::prelude::*;

use slicealg::domain::{radius_point, slice_units_of, Rect, SliceDomain};
use slicealg::function::{eval_along, MonodromyFunction, PolyFunction, PolyTerm, SliceFunctionSpec};
use slicealg::path::{concat, lift, lift_fragment, path_ball_member, PLPath, PathBall, PathFragment};
use slicealg::quaternion::{frak_i, frak_i_unit, slice_matrix_inverse, stem_star, StemMatrix};
use slicealg::star::{relative_deviation, star_poly_oracle};
use slicealg::stem::{cr_residual_slice, stem_holomorphy_check, stem_with_pair};
use slicealg::{ImaginaryUnit, Quaternion, SlicePoint, StarProduct, StemQuery, StemVector};

fn quat(r: f64) -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-r..r).prop_map(Quaternion::from_array)
}

fn unit() -> impl Strategy<Value = ImaginaryUnit> {
    prop::array::uniform3(-1.0..1.0f64)
        .prop_filter("away from zero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-4)
        .prop_map(|[x, y, z]| ImaginaryUnit::new(x, y, z).unwrap())
}

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| Complex64::new(a, b))
}

fn stem_vector() -> impl Strategy<Value = StemVector> {
    (quat(2.0), quat(2.0)).prop_map(|(a, b)| StemVector::new(a, b))
}

/// Path in the disc of radius `r` (per coordinate, so inside the ball of
/// radius `r√n`), real start.
fn path(n: usize, r: f64) -> impl Strategy<Value = PLPath> {
    (prop::collection::vec(-r..r, n), prop::collection::vec(prop::collection::vec(complex(r / 2.0_f64.sqrt()), n), 1..=4))
        .prop_map(|(start, rest)| {
            let mut w = vec![start.iter().map(|x| Complex64::new(*x, 0.0)).collect::<Vec<_>>()];
            w.extend(rest);
            PLPath::new(w).unwrap()
        })
}

fn poly(n: usize, max_degree: u32) -> impl Strategy<Value = PolyFunction> {
    prop::collection::vec((prop::collection::vec(0..=max_degree, n), quat(1.0)), 1..6).prop_map(move |terms| {
        PolyFunction::new(n, terms.into_iter().map(|(k, a)| PolyTerm { k, a })).unwrap()
    })
}

fn full(p: PolyFunction) -> SliceFunctionSpec {
    SliceFunctionSpec::poly(p, SliceDomain::full_space())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norm_is_multiplicative(p in quat(5.0), q in quat(5.0)) {
        let lhs = (p * q).norm();
        let rhs = p.norm() * q.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
    }

    #[test]
    fn units_square_to_minus_one(u in unit()) {
        let q = u.as_quaternion();
        prop_assert!((q * q + Quaternion::ONE).norm() <= 1e-12);
    }

    #[test]
    fn stem_star_is_associative_and_bilinear(p in stem_vector(), q in stem_vector(), r in stem_vector(), s in -3.0..3.0f64) {
        let lhs = stem_star(&stem_star(&p, &q), &r);
        let rhs = stem_star(&p, &stem_star(&q, &r));
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        let lin = stem_star(&(p + q.scale(s)), &r);
        let split = stem_star(&p, &r) + stem_star(&q, &r).scale(s);
        prop_assert!((lin - split).norm() <= 1e-10 * (1.0 + split.norm()));
    }

    #[test]
    fn slice_matrix_inverse_is_two_sided(i in unit(), j in unit()) {
        prop_assume!(i.distance(&j) >= 1e-3);
        let m = StemMatrix::slice_pair(&i, &j);
        let inv = slice_matrix_inverse(&i, &j).unwrap();
        prop_assert!((inv.matmul(&m) - StemMatrix::IDENTITY).frobenius() <= 1e-10);
        prop_assert!((m.matmul(&inv) - StemMatrix::IDENTITY).frobenius() <= 1e-10);
    }

    #[test]
    fn canonical_unit_flips_with_the_slice(z in complex(3.0), u in unit()) {
        prop_assume!(z.im.abs() > 1e-6);
        let q = SlicePoint::from_complex(&[z], u);
        let bar = SlicePoint::from_complex(&[z.conj()], u);
        let i = frak_i_unit(&q).unwrap();
        prop_assert!(i.distance(&u) <= 1e-12 || i.distance(&-u) <= 1e-12);
        prop_assert!((frak_i(&bar) + frak_i(&q)).norm() <= 1e-12);
    }

    #[test]
    fn lift_commutes_with_concat(g in path(2, 2.0), tail in prop::collection::vec(prop::collection::vec(complex(2.0), 2), 1..3), u in unit()) {
        let mut w = vec![g.endpoint().clone()];
        w.extend(tail);
        let fragment = PathFragment::new(w).unwrap();
        let joined = concat(&g, &fragment).unwrap();
        let lifted = lift(&g, &u).concat(&lift_fragment(&fragment, &u)).unwrap();
        let direct = lift(&joined, &u);
        for k in 0..=256 {
            let t = k as f64 / 256.0;
            prop_assert!(direct.at(t).distance(&lifted.at(t)) <= 1e-12);
        }
    }

    #[test]
    fn path_ball_members_end_where_asked(g in path(1, 1.0), z in complex(0.3)) {
        let ball = PathBall::new(g.clone(), 0.5).unwrap();
        let target = vec![g.endpoint()[0] + z];
        let member = path_ball_member(&ball, &target).unwrap();
        prop_assert_eq!(member.endpoint(), &target);
    }

    #[test]
    fn lifts_stay_in_their_slice(g in path(2, 2.0), u in unit()) {
        let l = lift(&g, &u);
        let uq = u.as_quaternion();
        for k in 0..=256 {
            for c in l.at(k as f64 / 256.0).coords() {
                let im = c.im();
                prop_assert!((im - uq * im.dot(&uq)).norm() <= 1e-12 * (1.0 + c.norm()));
            }
        }
    }

    #[test]
    fn radius_balls_stay_inside(g in path(1, 0.9), u in unit(), which in 0usize..4) {
        let domain = match which {
            0 => SliceDomain::axial_ball(vec![0.0], 2.0),
            1 => SliceDomain::union(vec![SliceDomain::axial_ball(vec![0.0], 2.0), SliceDomain::axial_ball(vec![2.5], 1.0)]),
            2 => SliceDomain::slice_box(u, vec![Rect { re: [-1.5, 1.5], im: [-1.5, 1.5] }]),
            _ => SliceDomain::slit_plane(),
        };
        prop_assume!(slicealg::domain::lift_contained(&domain, &g, &u, 256));
        let r = radius_point(&domain, &g, &u).unwrap();
        prop_assert!(r > 0.0);
        let centre = g.endpoint()[0];
        for k in 0..64 {
            let w = centre + Complex64::from_polar(r * (1.0 - 1e-9), std::f64::consts::TAU * k as f64 / 64.0);
            prop_assert!(domain.contains(&SlicePoint::from_complex(&[w], u)), "boundary sample {w} outside");
        }
    }

    #[test]
    fn union_radius_dominates_members(g in path(1, 0.9), u in unit()) {
        let a = SliceDomain::axial_ball(vec![0.0], 1.5);
        let b = SliceDomain::slice_box(u, vec![Rect { re: [-0.5, 3.0], im: [-1.0, 1.0] }]);
        let union = SliceDomain::union(vec![a.clone(), b.clone()]);
        prop_assume!(slicealg::domain::lift_contained(&union, &g, &u, 256));
        let r = radius_point(&union, &g, &u).unwrap();
        let end = lift(&g, &u).endpoint();
        for m in [a, b] {
            if m.contains(&end) {
                prop_assert!(r >= m.distance_to_complement(&end, &u));
            }
        }
    }

    #[test]
    fn stable_boxes_admit_antipodal_units(g in path(1, 0.9), u in unit()) {
        let domain = SliceDomain::slice_box(u, vec![Rect { re: [-2.0, 2.0], im: [-1.0, 1.0] }]);
        let units = slice_units_of(&domain, &g, 64, 256);
        for v in &units {
            prop_assert!(units.iter().any(|w| w.distance(&-*v) <= 1e-12));
        }
    }

    #[test]
    fn polynomial_values_ignore_the_path(p in poly(2, 4), a in path(2, 1.5), b in path(2, 1.5), u in unit()) {
        let f = full(p);
        let end = a.endpoint().clone();
        let b = slicealg::path::extend_to(&b, &end).unwrap();
        let va = eval_along(&f, &a, &u).unwrap();
        let vb = eval_along(&f, &b, &u).unwrap();
        prop_assert!((va - vb).norm() <= 1e-12 * (1.0 + va.norm()));
    }

    #[test]
    fn sqrt_continuation_squares_to_the_endpoint(g in path(1, 2.0), u in unit()) {
        prop_assume!(g.start()[0].re > 0.05);
        let f = SliceFunctionSpec::sqrt(SliceDomain::full_space());
        let v = eval_along(&f, &g, &u).unwrap();
        prop_assert!((v * v - u.embed(g.endpoint()[0])).norm() <= 1e-10);
        let l = MonodromyFunction::log().continue_along(&g).unwrap();
        prop_assert!((l.exp() - g.endpoint()[0]).norm() <= 1e-10 * (1.0 + g.endpoint()[0].norm()));
    }

    #[test]
    fn real_coefficients_preserve_slices(coeffs in prop::collection::vec(-2.0..2.0f64, 1..6), z in complex(1.5), u in unit()) {
        let p = PolyFunction::from_coefficients(&coeffs.iter().map(|c| Quaternion::real(*c)).collect::<Vec<_>>());
        let v = p.eval(&SlicePoint::from_complex(&[z], u)).unwrap();
        let uq = u.as_quaternion();
        let im = v.im();
        prop_assert!((im - uq * im.dot(&uq)).norm() <= 1e-12 * (1.0 + v.norm()));
    }

    #[test]
    fn stems_represent_every_slice(p in poly(2, 5), g in path(2, 1.5), i in unit(), j in unit(), k in unit()) {
        prop_assume!(i.distance(&j) >= 1e-2);
        let f = full(p);
        let stem = stem_with_pair(&f, &g, &i, &j).unwrap();
        let value = eval_along(&f, &g, &k).unwrap();
        prop_assert!((stem.recombine(&k) - value).norm() <= 1e-9 * (1.0 + value.norm()));
    }

    #[test]
    fn stems_do_not_depend_on_the_pair(p in poly(1, 5), g in path(1, 1.5), u in prop::array::uniform4(unit())) {
        prop_assume!(u[0].distance(&u[1]) >= 1e-2 && u[2].distance(&u[3]) >= 1e-2);
        let f = full(p);
        let a = stem_with_pair(&f, &g, &u[0], &u[1]).unwrap();
        let b = stem_with_pair(&f, &g, &u[2], &u[3]).unwrap();
        prop_assert!((a - b).norm() <= 1e-8 * b.norm().max(1.0));
    }

    #[test]
    fn conjugate_paths_flip_the_stem(p in poly(2, 4), g in path(2, 1.5), c in quat(2.0), i in unit()) {
        let f = full(p);
        let q = StemQuery::new(f, SliceDomain::full_space(), SliceDomain::full_space());
        let a = q.stem_at(&g).unwrap();
        let b = q.stem_at(&g.conjugate()).unwrap();
        let ic = i.as_quaternion() * c;
        prop_assert!(relative_deviation(a.apply_row(c, ic), b.apply_row(c, -ic)) <= 1e-10);
    }

    #[test]
    fn slice_residual_scales_quadratically(p in poly(1, 5), z in complex(0.7), u in unit()) {
        let f = full(p);
        let q = SlicePoint::from_complex(&[z], u);
        let coarse = cr_residual_slice(&f, &f.domain, &q, 1e-2, 1.0).unwrap().max_residual;
        let fine = cr_residual_slice(&f, &f.domain, &q, 5e-3, 1.0).unwrap().max_residual;
        prop_assume!(fine > 1e-9);
        let ratio = coarse / fine;
        prop_assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn stem_residual_scales_quadratically(p in poly(1, 5), g in path(1, 1.0)) {
        let ball = SliceDomain::axial_ball(vec![0.0], 2.5);
        let q = StemQuery::new(SliceFunctionSpec::poly(p, ball.clone()), ball.clone(), ball);
        let coarse = stem_holomorphy_check(&q, &g, 1e-2, 1.0).unwrap().max_residual;
        let fine = stem_holomorphy_check(&q, &g, 5e-3, 1.0).unwrap().max_residual;
        prop_assume!(fine > 1e-9);
        let ratio = coarse / fine;
        prop_assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn star_matches_convolution(a in poly(1, 4), b in poly(1, 4), z in complex(1.4), u in unit()) {
        let ball = SliceDomain::axial_ball(vec![0.0], 2.0);
        let f = SliceFunctionSpec::poly(a.clone(), ball.clone());
        let g = SliceFunctionSpec::poly(b.clone(), ball.clone());
        let prod = StarProduct::new(&f, &g, ball.clone(), ball);
        let q = SlicePoint::from_complex(&[z], u);
        let oracle = star_poly_oracle(&a, &b).unwrap().eval(&q).unwrap();
        prop_assert!(relative_deviation(prod.star_eval(&q, None).unwrap(), oracle) <= 1e-8);
    }

    #[test]
    fn star_at_real_points_is_the_pointwise_product(a in poly(2, 3), b in poly(2, 3), x in prop::array::uniform2(-1.0..1.0f64)) {
        let (f, g) = (full(a), full(b));
        let prod = StarProduct::new(&f, &g, SliceDomain::full_space(), SliceDomain::full_space());
        let q = SlicePoint::real(&x);
        let expected = f.as_poly().unwrap().eval(&q).unwrap() * g.as_poly().unwrap().eval(&q).unwrap();
        prop_assert_eq!(prod.star_eval(&q, None).unwrap(), expected);
    }
}
