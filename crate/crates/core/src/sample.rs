//! Random fixtures for verification runs: units, polynomials, paths.

use num_complex::Complex64;
use rand::Rng;

use crate::domain::SliceDomain;
use crate::function::{PolyFunction, PolyTerm};
use crate::path::{CPoint, PLPath};
use crate::quaternion::{ImaginaryUnit, Quaternion, SlicePoint};

fn gaussian4<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    // Box–Muller
    let mut out = [0.0; 4];
    for pair in out.chunks_mut(2) {
        let u: f64 = rng.gen_range(f64::EPSILON..1.0);
        let v: f64 = rng.gen();
        let r = (-2.0 * u.ln()).sqrt();
        pair[0] = r * (std::f64::consts::TAU * v).cos();
        pair[1] = r * (std::f64::consts::TAU * v).sin();
    }
    out
}

/// Uniform on the unit sphere of `ℍ`.
pub fn unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = Quaternion::from_array(gaussian4(rng));
        let n = q.norm();
        if n > 1e-6 {
            return q * (1.0 / n);
        }
    }
}

/// Uniform on `𝕊`.
pub fn unit<R: Rng + ?Sized>(rng: &mut R) -> ImaginaryUnit {
    loop {
        let [_, x, y, z] = gaussian4(rng);
        if let Ok(u) = ImaginaryUnit::new(x, y, z) {
            if (x * x + y * y + z * z).sqrt() > 1e-6 {
                return u;
            }
        }
    }
}

/// Units pairwise at least `separation` apart.
pub fn separated_units<R: Rng + ?Sized>(rng: &mut R, count: usize, separation: f64) -> Vec<ImaginaryUnit> {
    let mut out: Vec<ImaginaryUnit> = Vec::with_capacity(count);
    while out.len() < count {
        let u = unit(rng);
        if out.iter().all(|v| v.distance(&u) >= separation) {
            out.push(u);
        }
    }
    out
}

/// Every multi-index of total degree `≤ degree` in `n` variables.
pub fn multi_indices(n: usize, degree: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 0..=degree {
        for mut rest in multi_indices(n - 1, degree - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Random polynomial of total degree exactly `degree`, with every
/// coefficient a unit quaternion.
pub fn poly_of_degree<R: Rng + ?Sized>(rng: &mut R, n: usize, degree: u32) -> PolyFunction {
    let terms = multi_indices(n, degree).into_iter().map(|k| PolyTerm { k, a: unit_quaternion(rng) });
    PolyFunction::new(n, terms).expect("consistent indices")
}

/// Random polynomial of degree at most `max_degree`, unit coefficients.
pub fn poly<R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: u32) -> PolyFunction {
    let d = rng.gen_range(0..=max_degree);
    poly_of_degree(rng, n, d)
}

/// Random point of the open polydisc-ball `{z : |z − c| < radius}` in `ℂⁿ`.
pub fn point_in_ball<R: Rng + ?Sized>(rng: &mut R, center: &[f64], radius: f64) -> CPoint {
    let n = center.len();
    loop {
        let z: CPoint = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius)))
            .collect();
        let d2: f64 = z.iter().map(|w| w.norm_sqr()).sum();
        if d2 < radius * radius {
            return z.iter().zip(center).map(|(w, c)| w + c).collect();
        }
    }
}

/// PL path with real start and `segments` segments, inside the ball of
/// `radius` about the real point `center` (convex, so waypoints suffice).
pub fn path_in_ball<R: Rng + ?Sized>(rng: &mut R, center: &[f64], radius: f64, segments: usize) -> PLPath {
    let n = center.len();
    let start: CPoint = loop {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-radius..radius)).collect();
        if x.iter().map(|v| v * v).sum::<f64>() < radius * radius {
            break x.iter().zip(center).map(|(v, c)| Complex64::new(v + c, 0.0)).collect();
        }
    };
    let mut waypoints = vec![start];
    for _ in 0..segments {
        waypoints.push(point_in_ball(rng, center, radius));
    }
    PLPath::new(waypoints).expect("real start, consistent dims")
}

/// Random point of `Ω` in a random sampled slice, at least `margin` from
/// the complement of its slice.
pub fn point_in_domain<R: Rng + ?Sized>(rng: &mut R, domain: &SliceDomain, n: usize, margin: f64) -> Option<SlicePoint> {
    for _ in 0..1000 {
        let q = domain.sample_point(n, rng)?;
        let unit = q.unit().unwrap_or(ImaginaryUnit::I);
        if domain.distance_to_complement(&q, &unit) > margin {
            return Some(q);
        }
    }
    None
}
