//! Stem extraction `F(γ) = M(I, J)⁻¹ (f∘γ^I(1), f∘γ^J(1))ᵀ`, the point
//! form `𝔉(q)`, and finite-difference Cauchy–Riemann residuals.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::domain::{
    check_stem_preserving, ends_real, first_exit, radius_pathball, radius_two, routing_unit, straight_route,
    Sampling, SliceDomain, StemPreservingReport,
};
use crate::error::{Error, Result};
use crate::function::PathSlice;
use crate::path::{lift, path_ball_member, PLPath, PathBall};
use crate::quaternion::{slice_matrix_inverse, ImaginaryUnit, Quaternion, SlicePoint, StemVector};

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-3;

const ROUTE_TOL: f64 = 1e-9;

/// A function on `Ω₂` whose stems are read along paths of `Ω₁`.
#[derive(Clone, Debug)]
pub struct StemQuery<F> {
    pub f: F,
    pub domain1: SliceDomain,
    pub domain2: SliceDomain,
    pub sampling: Sampling,
}

impl<F: PathSlice> StemQuery<F> {
    pub fn new(f: F, domain1: SliceDomain, domain2: SliceDomain) -> Self {
        Self { f, domain1, domain2, sampling: Sampling::default() }
    }

    pub fn with_sampling(mut self, sampling: Sampling) -> Self {
        self.sampling = sampling;
        self
    }

    /// Sampled check that `Ω₂` is `Ω₁`-stem-preserving.
    pub fn certify<R: Rng + ?Sized>(&self, trials: usize, rng: &mut R) -> StemPreservingReport {
        check_stem_preserving(&self.domain1, &self.domain2, trials, self.sampling, rng)
    }

    /// The pair of units used for `γ`.
    pub fn pair(&self, gamma: &PLPath) -> Result<(ImaginaryUnit, ImaginaryUnit)> {
        radius_two(&self.domain2, gamma, self.sampling.sphere_samples, self.sampling.path_samples)
            .map(|r| r.pair)
    }

    /// `F(γ)`.
    pub fn stem_at(&self, gamma: &PLPath) -> Result<StemVector> {
        if self.f.is_pointwise() && ends_real(gamma) {
            let x: Vec<f64> = gamma.endpoint().iter().map(|z| z.re).collect();
            return Ok(StemVector::new(self.f.eval_point(&SlicePoint::real(&x))?, Quaternion::ZERO));
        }
        let (i, j) = self.pair(gamma)?;
        stem_with_pair(&self.f, gamma, &i, &j)
    }

    /// `𝔉(q)`: the stem along a route to `q` in the slice `𝔦(q)`.
    ///
    /// Without a route, a straight segment from the anchor of `Ω₁` is used
    /// if its lift stays in `Ω₁`.
    pub fn stem_at_point(&self, q: &SlicePoint, route: Option<&PLPath>) -> Result<StemVector> {
        if q.is_real() && self.f.is_pointwise() {
            return Ok(StemVector::new(self.f.eval_point(q)?, Quaternion::ZERO));
        }
        let path = self.route(q, route)?;
        self.stem_at(&path)
    }

    /// Validates a caller route, or builds the default one.
    pub fn route(&self, q: &SlicePoint, route: Option<&PLPath>) -> Result<PLPath> {
        let unit = routing_unit(q);
        match route {
            Some(path) => {
                let end = lift(path, &unit).endpoint();
                let gap = end.distance(q);
                if gap > ROUTE_TOL * (1.0 + q.coords().iter().map(|c| c.norm()).sum::<f64>()) {
                    return Err(Error::UnitMismatch { gap });
                }
                if first_exit(&self.domain1, path, &unit, self.sampling.path_samples).is_some() {
                    return Err(Error::RoutingFailed);
                }
                Ok(path.clone())
            }
            None => straight_route(&self.domain1, q, self.sampling.path_samples),
        }
    }
}

/// `M(I, J)⁻¹ (f∘γ^I(1), f∘γ^J(1))ᵀ` for an explicit pair.
pub fn stem_with_pair<F: PathSlice + ?Sized>(
    f: &F,
    gamma: &PLPath,
    i: &ImaginaryUnit,
    j: &ImaginaryUnit,
) -> Result<StemVector> {
    let inverse = slice_matrix_inverse(i, j)?;
    let values = StemVector::new(f.eval_along(gamma, i)?, f.eval_along(gamma, j)?);
    Ok(inverse.apply(&values))
}

/// Finite-difference residuals against a tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CRReport {
    pub max_residual: f64,
    /// Largest residual over the coordinates, one entry per sample point.
    pub per_point: Vec<f64>,
    pub h: f64,
    #[serde(skip)]
    pub tolerance: f64,
    pub pass: bool,
}

impl CRReport {
    pub fn from_residuals(per_point: Vec<f64>, h: f64, tolerance: f64) -> Self {
        let max_residual = per_point.iter().copied().fold(0.0, f64::max);
        let pass = per_point.iter().all(|r| r.is_finite()) && max_residual <= tolerance;
        Self { max_residual, per_point, h, tolerance, pass }
    }

    /// Concatenates reports taken with the same step and tolerance.
    pub fn merge(reports: impl IntoIterator<Item = CRReport>, h: f64, tolerance: f64) -> Self {
        let per_point = reports.into_iter().flat_map(|r| r.per_point).collect();
        Self::from_residuals(per_point, h, tolerance)
    }
}

fn stencil(z: &[Complex64], l: usize, offset: Complex64) -> Vec<Complex64> {
    let mut w = z.to_vec();
    w[l] += offset;
    w
}

/// Largest over `ℓ` of `|½(∂/∂x_ℓ + I ∂/∂y_ℓ) f(x + yI)|` at `z^I`, by
/// central differences.
pub fn cr_residual_with<E>(eval: E, z: &[Complex64], unit: &ImaginaryUnit, h: f64) -> Result<f64>
where
    E: Fn(&SlicePoint) -> Result<Quaternion>,
{
    let at = |w: Vec<Complex64>| eval(&SlicePoint::from_complex(&w, *unit));
    let u = unit.as_quaternion();
    let mut worst: f64 = 0.0;
    for l in 0..z.len() {
        let dx = (at(stencil(z, l, Complex64::new(h, 0.0)))? - at(stencil(z, l, Complex64::new(-h, 0.0)))?) / (2.0 * h);
        let dy = (at(stencil(z, l, Complex64::new(0.0, h)))? - at(stencil(z, l, Complex64::new(0.0, -h)))?) / (2.0 * h);
        worst = worst.max(((dx + u * dy) * 0.5).norm());
    }
    Ok(worst)
}

/// Slice Cauchy–Riemann residual of a function at `q`, in the slice of `q`.
pub fn cr_residual_slice<F: PathSlice + ?Sized>(
    f: &F,
    domain: &SliceDomain,
    q: &SlicePoint,
    h: f64,
    tolerance: f64,
) -> Result<CRReport> {
    let unit = routing_unit(q);
    let z = q.complex_coords(&unit);
    for l in 0..z.len() {
        for offset in [Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, -h)] {
            if !domain.contains(&SlicePoint::from_complex(&stencil(&z, l, offset), unit)) {
                return Err(Error::StencilLeavesDomain);
            }
        }
    }
    let r = cr_residual_with(|p| f.eval_point(p), &z, &unit, h)?;
    Ok(CRReport::from_residuals(vec![r], h, tolerance))
}

/// `f(x + yI) = x − yI` in the first variable: satisfies no slice
/// Cauchy–Riemann equation.
pub fn anti_holomorphic_probe(q: &SlicePoint) -> Result<Quaternion> {
    Ok(q.coords()[0].conj())
}

/// How the unit pair is chosen at the stencil points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StencilPairs {
    /// One pair, chosen at the centre, for the whole stencil.
    Fixed,
    /// A fresh pair at every stencil point. Diagnostic only.
    PerPoint,
}

/// `|½(∂/∂x_ℓ + σ ∂/∂y_ℓ)(F∘ℒ_γ)|` at `γ(1)` by central differences.
pub fn stem_holomorphy_check<F: PathSlice>(
    query: &StemQuery<F>,
    gamma: &PLPath,
    h: f64,
    tolerance: f64,
) -> Result<CRReport> {
    stem_holomorphy_with(query, gamma, h, tolerance, StencilPairs::Fixed)
}

pub fn stem_holomorphy_with<F: PathSlice>(
    query: &StemQuery<F>,
    gamma: &PLPath,
    h: f64,
    tolerance: f64,
    pairs: StencilPairs,
) -> Result<CRReport> {
    let s = query.sampling;
    let two = radius_two(&query.domain2, gamma, s.sphere_samples, s.path_samples)?;
    let r1 = radius_pathball(&query.domain1, gamma, s.sphere_samples, s.path_samples)?;
    let radius = two.pair_radius.min(r1);
    if h >= radius {
        return Err(Error::StencilLeavesBall { h, radius });
    }
    let ball = PathBall::new(gamma.clone(), radius)?;
    let (i, j) = two.pair;
    let stem = |w: Vec<Complex64>| -> Result<StemVector> {
        let path = path_ball_member(&ball, &w)?;
        match pairs {
            StencilPairs::Fixed => stem_with_pair(&query.f, &path, &i, &j),
            StencilPairs::PerPoint => {
                let (a, b) = query.pair(&path)?;
                stem_with_pair(&query.f, &path, &a, &b)
            }
        }
    };
    let z = gamma.endpoint().clone();
    let mut worst: f64 = 0.0;
    for l in 0..z.len() {
        let dx = (stem(stencil(&z, l, Complex64::new(h, 0.0)))? - stem(stencil(&z, l, Complex64::new(-h, 0.0)))?)
            .scale(0.5 / h);
        let dy = (stem(stencil(&z, l, Complex64::new(0.0, h)))? - stem(stencil(&z, l, Complex64::new(0.0, -h)))?)
            .scale(0.5 / h);
        worst = worst.max((dx + dy.sigma()).scale(0.5).norm());
    }
    Ok(CRReport::from_residuals(vec![worst], h, tolerance))
}
