//! Slice-open domains `Ω ⊂ ℍ_s^n`, the unit sets `𝕊(Ω, γ)`, the
//! containment radii, and sampled certification of real-path-connectedness
//! and the stem-preserving conditions.
//!
//! Quantifiers over the whole sphere of units are replaced by a finite
//! sample (see [`sample_sphere`]) plus the units the domain primitives
//! declare themselves. Every check here can refute, none can prove.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::{is_real_point, lift, CPoint, PLPath};
use crate::quaternion::{frak_i_unit, sample_sphere, ImaginaryUnit, SlicePoint};

/// Stand-in for an infinite radius.
pub const RADIUS_SENTINEL: f64 = 1e12;

/// Pairs within this factor of the best min-radius compete on separation.
pub const PAIR_PREFERENCE_BAND: f64 = 0.95;

const SLICE_TOL: f64 = 1e-9;
const SAMPLE_BOX: f64 = 2.0;
const REJECTION_TRIES: usize = 400;

/// Open rectangle `re ∈ (lo, hi), im ∈ (lo, hi)` in one complex coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub re: [f64; 2],
    pub im: [f64; 2],
}

impl Rect {
    fn contains(&self, z: Complex64) -> bool {
        self.re[0] < z.re && z.re < self.re[1] && self.im[0] < z.im && z.im < self.im[1]
    }

    fn margin(&self, z: Complex64) -> f64 {
        (z.re - self.re[0]).min(self.re[1] - z.re).min(z.im - self.im[0]).min(self.im[1] - z.im)
    }
}

/// Geometry of a domain primitive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case")]
pub enum DomainShape {
    /// All of `ℍ_s^n`.
    FullSpace {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
    /// `{q : |q − c| < R}` with a real center; axially symmetric.
    AxialBall { center: Vec<f64>, radius: f64 },
    /// A product of open rectangles inside the single slice `ℂ_I^n`.
    ///
    /// Rectangles meeting the real axis make the set fail slice-openness in
    /// every other slice; such boxes serve as negative fixtures.
    SliceBox { unit: ImaginaryUnit, rects: Vec<Rect> },
    /// Union of domains.
    Union { members: Vec<SliceDomain> },
    /// One variable; every slice minus the closed ray `(−∞, 0]`.
    SlitPlane {},
}

/// A slice domain with an optional real anchor used for routing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceDomain {
    #[serde(flatten)]
    pub shape: DomainShape,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Vec<f64>>,
}

impl From<DomainShape> for SliceDomain {
    fn from(shape: DomainShape) -> Self {
        Self { shape, anchor: None }
    }
}

impl SliceDomain {
    pub fn full_space() -> Self {
        DomainShape::FullSpace { dim: None }.into()
    }

    pub fn axial_ball(center: Vec<f64>, radius: f64) -> Self {
        DomainShape::AxialBall { center, radius }.into()
    }

    pub fn slice_box(unit: ImaginaryUnit, rects: Vec<Rect>) -> Self {
        DomainShape::SliceBox { unit, rects }.into()
    }

    pub fn union(members: Vec<SliceDomain>) -> Self {
        DomainShape::Union { members }.into()
    }

    pub fn slit_plane() -> Self {
        DomainShape::SlitPlane {}.into()
    }

    pub fn with_anchor(mut self, anchor: Vec<f64>) -> Self {
        self.anchor = Some(anchor);
        self
    }

    /// Checks parameters (positive radii, ordered rectangles, dimensions).
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        match &self.shape {
            DomainShape::FullSpace { dim: Some(0) } => return bad("dimension must be positive".into()),
            DomainShape::FullSpace { .. } | DomainShape::SlitPlane {} => {}
            DomainShape::AxialBall { center, radius } => {
                if center.is_empty() || radius.is_nan() || *radius <= 0.0 {
                    return bad(format!("axial ball needs a center and positive radius, got {radius}"));
                }
            }
            DomainShape::SliceBox { rects, .. } => {
                if rects.is_empty() {
                    return bad("slice box needs at least one rectangle".into());
                }
                if rects.iter().any(|r| !(r.re[0] < r.re[1] && r.im[0] < r.im[1])) {
                    return bad("slice box rectangles must have lo < hi".into());
                }
            }
            DomainShape::Union { members } => {
                if members.is_empty() {
                    return bad("union needs members".into());
                }
                for m in members {
                    m.validate()?;
                }
                let dims: Vec<usize> = members.iter().filter_map(|m| m.dim()).collect();
                if dims.windows(2).any(|w| w[0] != w[1]) {
                    return bad("union members disagree on dimension".into());
                }
            }
        }
        if let (Some(a), Some(n)) = (&self.anchor, self.dim()) {
            if a.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: a.len() });
            }
        }
        Ok(())
    }

    /// Number of quaternionic variables, when fixed by the shape.
    pub fn dim(&self) -> Option<usize> {
        match &self.shape {
            DomainShape::FullSpace { dim } => *dim,
            DomainShape::AxialBall { center, .. } => Some(center.len()),
            DomainShape::SliceBox { rects, .. } => Some(rects.len()),
            DomainShape::Union { members } => members.iter().find_map(|m| m.dim()),
            DomainShape::SlitPlane {} => Some(1),
        }
        .or_else(|| self.anchor.as_ref().map(Vec::len))
    }

    fn dim_ok(&self, n: usize) -> bool {
        self.dim().is_none_or(|d| d == n)
    }

    /// Membership of a point of the slice cone.
    pub fn contains(&self, q: &SlicePoint) -> bool {
        if !self.dim_ok(q.dim()) {
            return false;
        }
        match &self.shape {
            DomainShape::FullSpace { .. } => true,
            DomainShape::AxialBall { center, radius } => {
                let d2: f64 = q
                    .coords()
                    .iter()
                    .zip(center)
                    .map(|(p, c)| (*p - crate::quaternion::Quaternion::real(*c)).norm_sqr())
                    .sum();
                d2 < radius * radius
            }
            DomainShape::SliceBox { unit, rects } => {
                in_slice(q, unit) && {
                    let z = q.complex_coords(unit);
                    z.iter().zip(rects).all(|(z, r)| r.contains(*z))
                }
            }
            DomainShape::Union { members } => members.iter().any(|m| m.contains(q)),
            DomainShape::SlitPlane {} => {
                let p = q.coords()[0];
                !(p.is_real() && p.w <= 0.0)
            }
        }
    }

    /// Distance from `q` to the complement of `Ω_I` inside `ℂ_I^n`, where
    /// `I = unit`. Assumes `q ∈ Ω`. Unions return the largest member
    /// distance over members containing `q`, a lower bound.
    pub fn distance_to_complement(&self, q: &SlicePoint, unit: &ImaginaryUnit) -> f64 {
        let r = match &self.shape {
            DomainShape::FullSpace { .. } => RADIUS_SENTINEL,
            DomainShape::AxialBall { center, radius } => {
                let d2: f64 = q
                    .coords()
                    .iter()
                    .zip(center)
                    .map(|(p, c)| (*p - crate::quaternion::Quaternion::real(*c)).norm_sqr())
                    .sum();
                radius - d2.sqrt()
            }
            DomainShape::SliceBox { unit: box_unit, rects } => {
                if unit.distance(box_unit) < SLICE_TOL || unit.distance(&-*box_unit) < SLICE_TOL {
                    let z = q.complex_coords(box_unit);
                    z.iter().zip(rects).map(|(z, r)| r.margin(*z)).fold(f64::INFINITY, f64::min)
                } else {
                    // only real points of the box meet other slices
                    0.0
                }
            }
            DomainShape::Union { members } => members
                .iter()
                .filter(|m| m.contains(q))
                .map(|m| m.distance_to_complement(q, unit))
                .fold(0.0, f64::max),
            DomainShape::SlitPlane {} => {
                let z = q.complex_coords(unit)[0];
                if z.re >= 0.0 {
                    z.norm()
                } else {
                    z.im.abs()
                }
            }
        };
        r.clamp(0.0, RADIUS_SENTINEL)
    }

    /// Whether membership depends only on real parts and `|Im|` of each
    /// coordinate, so that every slice looks the same.
    pub fn is_axially_symmetric(&self) -> bool {
        match &self.shape {
            DomainShape::FullSpace { .. } | DomainShape::AxialBall { .. } | DomainShape::SlitPlane {} => true,
            DomainShape::SliceBox { .. } => false,
            DomainShape::Union { members } => members.iter().all(|m| m.is_axially_symmetric()),
        }
    }

    /// Units declared by primitives (slice boxes), with their negatives.
    pub fn declared_units(&self) -> Vec<ImaginaryUnit> {
        match &self.shape {
            DomainShape::SliceBox { unit, .. } => vec![*unit, -*unit],
            DomainShape::Union { members } => members.iter().flat_map(|m| m.declared_units()).collect(),
            _ => Vec::new(),
        }
    }

    /// Sampled sphere plus declared units, without exact duplicates.
    pub fn candidate_units(&self, sphere_samples: usize) -> Vec<ImaginaryUnit> {
        let mut units = sample_sphere(sphere_samples);
        for u in self.declared_units() {
            if !units.contains(&u) {
                units.push(u);
            }
        }
        units
    }

    /// Real anchor points, explicit anchor first.
    pub fn anchors(&self) -> Vec<Vec<f64>> {
        self.anchors_in(self.dim().unwrap_or(1))
    }

    /// Anchors for `n` variables; `n` only matters for dimension-free shapes.
    pub fn anchors_in(&self, n: usize) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = self.anchor.iter().cloned().collect();
        let n = self.dim().unwrap_or(n);
        match &self.shape {
            DomainShape::FullSpace { .. } => out.push(vec![0.0; n]),
            DomainShape::AxialBall { center, .. } => out.push(center.clone()),
            DomainShape::SliceBox { rects, .. } => {
                if rects.iter().all(|r| r.im[0] < 0.0 && 0.0 < r.im[1]) {
                    out.push(rects.iter().map(|r| 0.5 * (r.re[0] + r.re[1])).collect());
                }
            }
            DomainShape::Union { members } => {
                for m in members {
                    out.extend(m.anchors_in(n));
                }
            }
            DomainShape::SlitPlane {} => out.push(vec![1.0]),
        }
        let mut seen: Vec<Vec<f64>> = Vec::new();
        for a in out {
            let q = SlicePoint::real(&a);
            if self.contains(&q) && !seen.contains(&a) {
                seen.push(a);
            }
        }
        seen
    }

    pub fn primary_anchor(&self, n: usize) -> Option<Vec<f64>> {
        self.anchors_in(n).into_iter().next()
    }

    /// Rejection-samples a point of `Ω` together with the slice it was
    /// drawn in.
    pub fn sample_point<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Option<SlicePoint> {
        let sphere = sample_sphere(32);
        for _ in 0..REJECTION_TRIES {
            let candidate = match &self.shape {
                DomainShape::Union { members } => {
                    let m = &members[rng.gen_range(0..members.len())];
                    m.sample_point(n, rng)?
                }
                DomainShape::SliceBox { unit, rects } => {
                    let z: CPoint = rects
                        .iter()
                        .map(|r| {
                            Complex64::new(
                                rng.gen_range(r.re[0]..r.re[1]),
                                rng.gen_range(r.im[0]..r.im[1]),
                            )
                        })
                        .collect();
                    SlicePoint::from_complex(&z, *unit)
                }
                DomainShape::AxialBall { center, radius } => {
                    let unit = sphere[rng.gen_range(0..sphere.len())];
                    let z: CPoint = center
                        .iter()
                        .map(|c| {
                            Complex64::new(
                                c + rng.gen_range(-radius..*radius),
                                rng.gen_range(-radius..*radius),
                            )
                        })
                        .collect();
                    SlicePoint::from_complex(&z, unit)
                }
                DomainShape::FullSpace { .. } | DomainShape::SlitPlane {} => {
                    let unit = sphere[rng.gen_range(0..sphere.len())];
                    let n = self.dim().unwrap_or(n);
                    let z: CPoint = (0..n)
                        .map(|_| {
                            Complex64::new(
                                rng.gen_range(-SAMPLE_BOX..SAMPLE_BOX),
                                rng.gen_range(-SAMPLE_BOX..SAMPLE_BOX),
                            )
                        })
                        .collect();
                    SlicePoint::from_complex(&z, unit)
                }
            };
            if self.contains(&candidate) {
                return Some(candidate);
            }
        }
        None
    }
}

fn in_slice(q: &SlicePoint, unit: &ImaginaryUnit) -> bool {
    let u = unit.as_quaternion();
    q.coords().iter().all(|p| {
        let im = p.im();
        (im - u * im.dot(&u)).norm() <= SLICE_TOL * (1.0 + p.norm())
    })
}

/// Whether every sampled point of `γ^I` (uniform samples plus waypoints)
/// lies in the domain. Returns the parameter of the first exit.
pub fn first_exit(
    domain: &SliceDomain,
    gamma: &PLPath,
    unit: &ImaginaryUnit,
    path_samples: usize,
) -> Option<f64> {
    gamma
        .samples_with_params(path_samples)
        .into_iter()
        .find(|(_, z)| !domain.contains(&SlicePoint::from_complex(z, *unit)))
        .map(|(t, _)| t)
}

pub fn lift_contained(domain: &SliceDomain, gamma: &PLPath, unit: &ImaginaryUnit, path_samples: usize) -> bool {
    first_exit(domain, gamma, unit, path_samples).is_none()
}

/// Sampled `𝕊(Ω, γ) = {I : γ^I ⊂ Ω}`.
pub fn slice_units_of(
    domain: &SliceDomain,
    gamma: &PLPath,
    sphere_samples: usize,
    path_samples: usize,
) -> Vec<ImaginaryUnit> {
    let candidates = domain.candidate_units(sphere_samples);
    if domain.is_axially_symmetric() {
        return if lift_contained(domain, gamma, &ImaginaryUnit::I, path_samples) { candidates } else { Vec::new() };
    }
    candidates.into_iter().filter(|u| lift_contained(domain, gamma, u, path_samples)).collect()
}

/// `r^I_{γ,Ω}`: distance from `γ^I(1)` to the complement of `Ω_I`.
pub fn radius_point(domain: &SliceDomain, gamma: &PLPath, unit: &ImaginaryUnit) -> Result<f64> {
    let end = lift(gamma, unit).endpoint();
    if !domain.contains(&end) {
        return Err(Error::NotInDomain);
    }
    Ok(domain.distance_to_complement(&end, unit))
}

/// Sampled lower bound for `r_{γ,Ω}`: the largest `r^I` over sampled
/// `I ∈ 𝕊(Ω, γ)`.
pub fn radius_pathball(
    domain: &SliceDomain,
    gamma: &PLPath,
    sphere_samples: usize,
    path_samples: usize,
) -> Result<f64> {
    let units = slice_units_of(domain, gamma, sphere_samples, path_samples);
    if units.is_empty() {
        return Err(Error::NotInPathSpace);
    }
    units
        .iter()
        .map(|u| radius_point(domain, gamma, u))
        .try_fold(0.0, |best, r| r.map(|r| f64::max(best, r)))
}

/// Result of [`radius_two`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadiusTwo {
    /// Best `min(r^I, r^J)` over sampled pairs.
    pub radius: f64,
    /// Pair chosen for stem extraction.
    pub pair: (ImaginaryUnit, ImaginaryUnit),
    /// `min(r^I, r^J)` for the chosen pair.
    pub pair_radius: f64,
}

/// Sampled `r²_{γ,Ω}` and the pair of units used to extract stems.
///
/// Among pairs whose min-radius is within [`PAIR_PREFERENCE_BAND`] of the
/// best, the one with the largest `|I − J|` wins; ties keep sample order.
pub fn radius_two(
    domain: &SliceDomain,
    gamma: &PLPath,
    sphere_samples: usize,
    path_samples: usize,
) -> Result<RadiusTwo> {
    let units = slice_units_of(domain, gamma, sphere_samples, path_samples);
    let radii: Vec<f64> = if domain.is_axially_symmetric() && !units.is_empty() {
        vec![radius_point(domain, gamma, &units[0])?; units.len()]
    } else {
        units.iter().map(|u| radius_point(domain, gamma, u)).collect::<Result<_>>()?
    };
    select_pair(&units, &radii)
}

pub(crate) fn select_pair(units: &[ImaginaryUnit], radii: &[f64]) -> Result<RadiusTwo> {
    let mut pairs = Vec::new();
    for a in 0..units.len() {
        for b in a + 1..units.len() {
            if units[a].distance(&units[b]) >= crate::quaternion::CONDITIONING_FLOOR {
                pairs.push((a, b, radii[a].min(radii[b])));
            }
        }
    }
    let best = pairs.iter().map(|p| p.2).fold(f64::NEG_INFINITY, f64::max);
    if pairs.is_empty() {
        return Err(Error::StemPairUnavailable { found: units.len() });
    }
    let mut chosen: Option<(usize, usize, f64, f64)> = None;
    for &(a, b, r) in &pairs {
        if r < PAIR_PREFERENCE_BAND * best {
            continue;
        }
        let sep = units[a].distance(&units[b]);
        if chosen.is_none_or(|c| sep > c.3) {
            chosen = Some((a, b, r, sep));
        }
    }
    let (a, b, r, _) = chosen.expect("best pair is in band");
    Ok(RadiusTwo { radius: best, pair: (units[a], units[b]), pair_radius: r })
}

/// Two paths sharing an endpoint.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathPair {
    pub alpha: PLPath,
    pub beta: PLPath,
}

impl PathPair {
    pub fn new(alpha: PLPath, beta: PLPath) -> Result<Self> {
        let gap = crate::path::point_distance(alpha.endpoint(), beta.endpoint());
        if gap > crate::path::JUNCTION_TOL || alpha.dim() != beta.dim() {
            return Err(Error::EndpointMismatch { gap });
        }
        Ok(Self { alpha, beta })
    }
}

/// Slice a point should be routed in: `𝔦(q)`, or its recorded unit (or
/// `i`) for real points.
pub fn routing_unit(q: &SlicePoint) -> ImaginaryUnit {
    frak_i_unit(q).or(q.unit()).unwrap_or(ImaginaryUnit::I)
}

/// Anchor + straight segment, accepted only if its lift stays in `Ω`.
pub fn straight_route(domain: &SliceDomain, q: &SlicePoint, path_samples: usize) -> Result<PLPath> {
    let unit = routing_unit(q);
    let z = q.complex_coords(&unit);
    let anchor = domain.primary_anchor(z.len()).ok_or(Error::RoutingFailed)?;
    if anchor.len() != z.len() {
        return Err(Error::DimensionMismatch { expected: anchor.len(), found: z.len() });
    }
    let path = PLPath::straight(&anchor, &z)?;
    if lift_contained(domain, &path, &unit, path_samples) {
        Ok(path)
    } else {
        Err(Error::RoutingFailed)
    }
}

/// Candidate routes from real anchors to `z`: straight segments, then
/// two-segment detours through the real projection or another anchor.
fn route_candidates(domain: &SliceDomain, z: &[Complex64]) -> Vec<PLPath> {
    let anchors = domain.anchors_in(z.len());
    let to_c = |x: &[f64]| -> CPoint { x.iter().map(|v| Complex64::new(*v, 0.0)).collect() };
    let real_part: CPoint = z.iter().map(|c| Complex64::new(c.re, 0.0)).collect();
    let mut out = Vec::new();
    for a in &anchors {
        out.push(vec![to_c(a), z.to_vec()]);
    }
    for a in &anchors {
        out.push(vec![to_c(a), real_part.clone(), z.to_vec()]);
        for b in &anchors {
            if a != b {
                out.push(vec![to_c(a), to_c(b), z.to_vec()]);
            }
        }
    }
    out.into_iter().filter_map(|w| PLPath::new(w).ok()).collect()
}

/// Searches the candidate routes for one whose lift under `𝔦(q)` stays in
/// `Ω` and ends at `q`.
pub fn find_route(domain: &SliceDomain, q: &SlicePoint, path_samples: usize) -> Option<PLPath> {
    let unit = routing_unit(q);
    let z = q.complex_coords(&unit);
    route_candidates(domain, &z)
        .into_iter()
        .find(|p| lift_contained(domain, p, &unit, path_samples))
}

/// Sampling budget shared by the certification checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sampling {
    pub sphere_samples: usize,
    pub path_samples: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Self {
            sphere_samples: crate::quaternion::DEFAULT_SPHERE_SAMPLES,
            path_samples: crate::path::DEFAULT_PATH_SAMPLES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RouteWitness {
    pub point: SlicePoint,
    pub path: PLPath,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealPathReport {
    pub trials: usize,
    pub sampled: usize,
    pub routed: usize,
    pub ratio: f64,
    pub witnesses: Vec<RouteWitness>,
    /// Points for which no candidate route was found.
    pub refutations: Vec<SlicePoint>,
}

impl RealPathReport {
    pub fn pass(&self) -> bool {
        self.refutations.is_empty() && self.sampled > 0
    }
}

const MAX_WITNESSES: usize = 8;

/// Samples points of `Ω` and tries to route each from a real anchor.
pub fn check_real_path_connected<R: Rng + ?Sized>(
    domain: &SliceDomain,
    trials: usize,
    sampling: Sampling,
    rng: &mut R,
) -> RealPathReport {
    let n = domain.dim().unwrap_or(1);
    let mut report = RealPathReport {
        trials,
        sampled: 0,
        routed: 0,
        ratio: 0.0,
        witnesses: Vec::new(),
        refutations: Vec::new(),
    };
    for _ in 0..trials {
        let Some(q) = domain.sample_point(n, rng) else { continue };
        report.sampled += 1;
        match find_route(domain, &q, sampling.path_samples) {
            Some(path) => {
                report.routed += 1;
                if report.witnesses.len() < MAX_WITNESSES {
                    report.witnesses.push(RouteWitness { point: q, path });
                }
            }
            None => report.refutations.push(q),
        }
    }
    report.ratio = if report.sampled == 0 { 0.0 } else { report.routed as f64 / report.sampled as f64 };
    report
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnitCountWitness {
    pub path: PLPath,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntersectionWitness {
    pub pair: PathPair,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StemPreservingReport {
    pub pass: bool,
    pub paths_checked: usize,
    pub pairs_checked: usize,
    /// Paths with fewer than two sampled units in `𝕊(Ω₂, γ)`.
    pub condition_i_failures: Vec<UnitCountWitness>,
    /// Endpoint-sharing pairs whose sampled unit sets meet in exactly one unit.
    pub condition_ii_failures: Vec<IntersectionWitness>,
    /// Pairs with empty intersection; these satisfy the condition literally.
    pub empty_intersections: usize,
}

/// Sampled refutation of the `Ω₁`-stem-preserving conditions for `Ω₂`.
pub fn check_stem_preserving<R: Rng + ?Sized>(
    domain1: &SliceDomain,
    domain2: &SliceDomain,
    trials: usize,
    sampling: Sampling,
    rng: &mut R,
) -> StemPreservingReport {
    let n = domain1.dim().or(domain2.dim()).unwrap_or(1);
    let mut report = StemPreservingReport {
        pass: true,
        paths_checked: 0,
        pairs_checked: 0,
        condition_i_failures: Vec::new(),
        condition_ii_failures: Vec::new(),
        empty_intersections: 0,
    };
    let units_of = |p: &PLPath| slice_units_of(domain2, p, sampling.sphere_samples, sampling.path_samples);
    let in_space1 = |p: &PLPath, preferred: &ImaginaryUnit| {
        lift_contained(domain1, p, preferred, sampling.path_samples)
            || lift_contained(domain1, p, &-*preferred, sampling.path_samples)
            || !slice_units_of(domain1, p, sampling.sphere_samples, sampling.path_samples).is_empty()
    };

    for _ in 0..trials {
        let Some(q) = domain1.sample_point(n, rng) else { continue };
        let Some(alpha) = find_route(domain1, &q, sampling.path_samples) else { continue };
        let unit = routing_unit(&q);

        let alpha_units = units_of(&alpha);
        report.paths_checked += 1;
        if alpha_units.len() < 2 {
            report.condition_i_failures.push(UnitCountWitness { path: alpha.clone(), count: alpha_units.len() });
        }

        // a detour through a random intermediate point with the same endpoint
        let z = alpha.endpoint().clone();
        let mid: CPoint = z
            .iter()
            .map(|c| c + Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)))
            .collect();
        let mut waypoints: Vec<CPoint> = alpha.waypoints()[..alpha.waypoints().len() - 1].to_vec();
        waypoints.push(mid);
        waypoints.push(z);
        let Ok(beta) = PLPath::new(waypoints) else { continue };
        if !in_space1(&beta, &unit) {
            continue;
        }
        let beta_units = units_of(&beta);
        report.paths_checked += 1;
        if beta_units.len() < 2 {
            report.condition_i_failures.push(UnitCountWitness { path: beta.clone(), count: beta_units.len() });
        }
        let shared = alpha_units.iter().filter(|u| beta_units.contains(u)).count();
        report.pairs_checked += 1;
        match shared {
            0 => report.empty_intersections += 1,
            1 => report.condition_ii_failures.push(IntersectionWitness {
                pair: PathPair::new(alpha, beta).expect("shared endpoint"),
                count: 1,
            }),
            _ => {}
        }
    }
    report.pass = report.condition_i_failures.is_empty() && report.condition_ii_failures.is_empty();
    report
}

/// Real-path-connected and `Ω`-stem-preserving, both sampled.
pub fn check_self_stem_preserving<R: Rng + ?Sized>(
    domain: &SliceDomain,
    trials: usize,
    sampling: Sampling,
    rng: &mut R,
) -> (RealPathReport, StemPreservingReport) {
    let rpc = check_real_path_connected(domain, trials, sampling, rng);
    let sp = check_stem_preserving(domain, domain, trials, sampling, rng);
    (rpc, sp)
}

/// `γ(1) ∈ ℝⁿ`.
pub fn ends_real(gamma: &PLPath) -> bool {
    is_real_point(gamma.endpoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn to_segment(z: Complex64) -> PLPath {
        PLPath::straight(&[0.0], &[z]).unwrap()
    }

    fn box_i() -> SliceDomain {
        SliceDomain::slice_box(ImaginaryUnit::I, vec![Rect { re: [-1.0, 2.0], im: [-0.5, 2.0] }])
    }

    #[test]
    fn full_space_admits_every_unit() {
        let g = to_segment(c(1.0, 0.5));
        assert_eq!(slice_units_of(&SliceDomain::full_space(), &g, 64, 256).len(), 64);
    }

    #[test]
    fn axial_ball_admits_every_unit() {
        let g = to_segment(c(1.0, 0.5));
        let d = SliceDomain::axial_ball(vec![0.0], 2.0);
        assert_eq!(slice_units_of(&d, &g, 64, 256).len(), 64);
    }

    #[test]
    fn slice_box_admits_only_its_slice() {
        let g = to_segment(c(1.0, 1.5));
        let units = slice_units_of(&box_i(), &g, 64, 256);
        // im range (-0.5, 2) is not conjugation stable, so only +i survives
        assert_eq!(units, vec![ImaginaryUnit::I]);

        let sym = SliceDomain::slice_box(ImaginaryUnit::I, vec![Rect { re: [-1.0, 2.0], im: [-2.0, 2.0] }]);
        let units = slice_units_of(&sym, &g, 64, 256);
        assert_eq!(units.len(), 2);
        assert!(units.contains(&ImaginaryUnit::I) && units.contains(&-ImaginaryUnit::I));

        // brute-force oracle: a unit qualifies iff every sample lands in the box
        for u in sym.candidate_units(64) {
            let brute = (0..=1000).all(|k| {
                let z = c(1.0, 1.5) * (k as f64 / 1000.0);
                sym.contains(&SlicePoint::from_complex(&[z], u))
            });
            assert_eq!(brute, units.contains(&u));
        }
    }

    #[test]
    fn radius_point_examples() {
        let d = SliceDomain::axial_ball(vec![0.0], 2.0);
        let g = to_segment(c(1.0, 0.5));
        let r = radius_point(&d, &g, &ImaginaryUnit::I).unwrap();
        assert!((r - (2.0 - 1.25f64.sqrt())).abs() < 1e-15);
        assert!((r - 0.881_966_011_250_105_1).abs() < 1e-12);

        let full = radius_point(&SliceDomain::full_space(), &g, &ImaginaryUnit::J).unwrap();
        assert_eq!(full, RADIUS_SENTINEL);

        let center = PLPath::constant(&[0.0]);
        assert_eq!(radius_point(&d, &center, &ImaginaryUnit::K).unwrap(), 2.0);

        let far = to_segment(c(3.0, 0.0));
        assert_eq!(radius_point(&d, &far, &ImaginaryUnit::I), Err(Error::NotInDomain));
    }

    #[test]
    fn ball_radius_matches_boundary_sampling() {
        // the closest of 100k boundary points sits at the analytic distance
        let p = c(1.0, 0.5);
        let best = (0..100_000)
            .map(|k| {
                let th = k as f64 / 100_000.0 * std::f64::consts::TAU;
                (c(2.0 * th.cos(), 2.0 * th.sin()) - p).norm()
            })
            .fold(f64::INFINITY, f64::min);
        let d = SliceDomain::axial_ball(vec![0.0], 2.0);
        let r = radius_point(&d, &to_segment(p), &ImaginaryUnit::I).unwrap();
        assert!((best - r).abs() < 1e-8);
    }

    #[test]
    fn pathball_radius_examples() {
        let g = to_segment(c(1.0, 0.5));
        assert_eq!(radius_pathball(&SliceDomain::full_space(), &g, 64, 256).unwrap(), RADIUS_SENTINEL);
        let d = SliceDomain::axial_ball(vec![0.0], 2.0);
        assert!(radius_pathball(&d, &g, 64, 256).unwrap() >= 2.0 - 1.25f64.sqrt() - 1e-15);
        let outside = to_segment(c(0.0, 3.0));
        assert_eq!(radius_pathball(&d, &outside, 64, 256), Err(Error::NotInPathSpace));
    }

    #[test]
    fn radius_two_examples() {
        let g = to_segment(c(1.0, 0.5));
        let r2 = radius_two(&SliceDomain::full_space(), &g, 64, 256).unwrap();
        assert_eq!(r2.radius, RADIUS_SENTINEL);
        assert!((r2.pair.0.distance(&r2.pair.1) - 2.0).abs() < 1e-12);

        let d = SliceDomain::axial_ball(vec![0.0], 2.0);
        let r2 = radius_two(&d, &g, 64, 256).unwrap();
        assert!(r2.radius > 0.0);
        assert!((r2.pair.0.distance(&r2.pair.1) - 2.0).abs() < 1e-12);

        let g = to_segment(c(1.0, 1.5));
        assert_eq!(radius_two(&box_i(), &g, 64, 256), Err(Error::StemPairUnavailable { found: 1 }));
    }

    #[test]
    fn union_radius_is_lower_bound_over_members() {
        let inner = SliceDomain::axial_ball(vec![0.0], 1.0);
        let outer = SliceDomain::axial_ball(vec![0.5], 2.0);
        let u = SliceDomain::union(vec![inner.clone(), outer.clone()]);
        let g = to_segment(c(0.3, 0.2));
        let ru = radius_point(&u, &g, &ImaginaryUnit::J).unwrap();
        for m in [&inner, &outer] {
            assert!(ru >= radius_point(m, &g, &ImaginaryUnit::J).unwrap());
        }
    }

    #[test]
    fn slit_plane_distance() {
        let d = SliceDomain::slit_plane();
        let above = to_segment(c(-1.0, 0.25));
        let r = radius_point(&d, &PLPath::new(vec![vec![c(1.0, 0.0)], vec![c(1.0, 0.25)], vec![c(-1.0, 0.25)]]).unwrap(), &ImaginaryUnit::I).unwrap();
        assert!((r - 0.25).abs() < 1e-15);
        assert!(!lift_contained(&d, &above, &ImaginaryUnit::I, 256), "starts at 0");
        let right = PLPath::new(vec![vec![c(1.0, 0.0)], vec![c(3.0, 4.0)]]).unwrap();
        assert!((radius_point(&d, &right, &ImaginaryUnit::K).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn real_path_connected_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = Sampling::default();
        let ball = check_real_path_connected(&SliceDomain::axial_ball(vec![0.0], 2.0), 40, s, &mut rng);
        assert_eq!(ball.ratio, 1.0);
        assert!(ball.pass());
        let full = check_real_path_connected(&SliceDomain::full_space(), 40, s, &mut rng);
        assert_eq!(full.ratio, 1.0);

        // the box component never touches the real axis
        let island = SliceDomain::slice_box(ImaginaryUnit::J, vec![Rect { re: [3.0, 4.0], im: [1.0, 2.0] }]);
        let d = SliceDomain::union(vec![SliceDomain::axial_ball(vec![0.0], 1.0), island.clone()]);
        let rep = check_real_path_connected(&d, 60, s, &mut rng);
        assert!(!rep.refutations.is_empty());
        assert!(rep.ratio < 1.0);
        for q in &rep.refutations {
            assert!(island.contains(q));
        }
    }

    #[test]
    fn stem_preserving_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = Sampling::default();
        let d1 = SliceDomain::axial_ball(vec![0.0], 1.0);
        let rep = check_stem_preserving(&d1, &SliceDomain::full_space(), 20, s, &mut rng);
        assert!(rep.pass && rep.paths_checked > 0);

        let rep = check_stem_preserving(&d1, &SliceDomain::axial_ball(vec![0.0], 1.5), 20, s, &mut rng);
        assert!(rep.pass);

        let rep = check_stem_preserving(&d1, &box_i(), 20, s, &mut rng);
        assert!(!rep.pass);
        assert!(rep.condition_i_failures.iter().all(|w| w.count < 2));
    }

    #[test]
    fn conjugation_symmetry_of_sampled_units() {
        let d = SliceDomain::axial_ball(vec![0.2], 1.5);
        let g = PLPath::new(vec![vec![c(0.0, 0.0)], vec![c(0.5, 0.7)], vec![c(0.9, -0.3)]]).unwrap();
        let units = slice_units_of(&d, &g, 64, 256);
        for u in &units {
            assert!(units.contains(&-*u));
        }
    }

    #[test]
    fn domain_json_schema() {
        let d: SliceDomain =
            serde_json::from_str(r#"{"kind":"axial-ball","params":{"center":[0.0],"radius":2.0}}"#).unwrap();
        assert_eq!(d, SliceDomain::axial_ball(vec![0.0], 2.0));
        let d: SliceDomain = serde_json::from_str(r#"{"kind":"full-space","params":{}}"#).unwrap();
        assert_eq!(d, SliceDomain::full_space());
        let text = r#"{"kind":"union","params":{"members":[{"kind":"slit-plane","params":{}},{"kind":"slice-box","params":{"unit":[0,1,0],"rects":[{"re":[0,1],"im":[1,2]}]}}]},"anchor":[1.0]}"#;
        let d: SliceDomain = serde_json::from_str(text).unwrap();
        d.validate().unwrap();
        let again: SliceDomain = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(again, d);
        assert!(serde_json::from_str::<SliceDomain>(r#"{"kind":"torus","params":{}}"#).is_err());
    }
}
