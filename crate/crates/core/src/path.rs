//! Piecewise-linear paths in ℂⁿ with real start points, their slice lifts,
//! segment extensions and path balls.
//!
//! Paths are parametrized over `[0, 1]` proportionally to arc length, so
//! zero-length segments are allowed and simply take no parameter time.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion, SlicePoint};

/// Junction tolerance for [`concat`].
pub const JUNCTION_TOL: f64 = 1e-12;

/// Default number of uniform parameter samples used for containment.
pub const DEFAULT_PATH_SAMPLES: usize = 256;

/// A point of ℂⁿ.
pub type CPoint = Vec<Complex64>;

pub fn point_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

pub fn is_real_point(z: &[Complex64]) -> bool {
    z.iter().all(|c| c.im.abs() <= crate::quaternion::REAL_TOL)
}

fn lerp(a: &[Complex64], b: &[Complex64], s: f64) -> CPoint {
    a.iter().zip(b).map(|(x, y)| x * (1.0 - s) + y * s).collect()
}

/// Cumulative arc lengths, starting with 0.
fn cumulative<T>(pts: &[T], dist: impl Fn(&T, &T) -> f64) -> Vec<f64> {
    let mut acc = Vec::with_capacity(pts.len());
    let mut total = 0.0;
    acc.push(0.0);
    for w in pts.windows(2) {
        total += dist(&w[0], &w[1]);
        acc.push(total);
    }
    acc
}

/// Locates parameter `t` on an arc-length table: returns the segment index
/// and the local parameter in `[0, 1]`.
fn locate(lengths: &[f64], t: f64) -> Option<(usize, f64)> {
    let total = *lengths.last()?;
    if lengths.len() < 2 || total == 0.0 {
        return None;
    }
    let s = t.clamp(0.0, 1.0) * total;
    let seg = match lengths.partition_point(|&l| l <= s) {
        0 => 0,
        p if p >= lengths.len() => lengths.len() - 2,
        p => p - 1,
    };
    let len = lengths[seg + 1] - lengths[seg];
    let local = if len > 0.0 { ((s - lengths[seg]) / len).clamp(0.0, 1.0) } else { 0.0 };
    Some((seg, local))
}

fn uniform_params(count: usize) -> impl Iterator<Item = f64> {
    let count = count.max(2);
    (0..count).map(move |k| k as f64 / (count - 1) as f64)
}

/// A straight or polygonal piece whose start need not be real. Only usable
/// through [`concat`].
#[derive(Clone, Debug, PartialEq)]
pub struct PathFragment {
    waypoints: Vec<CPoint>,
    lengths: Vec<f64>,
}

impl PathFragment {
    pub fn new(waypoints: Vec<CPoint>) -> Result<Self> {
        check_dims(&waypoints)?;
        let lengths = cumulative(&waypoints, |a, b| point_distance(a, b));
        Ok(Self { waypoints, lengths })
    }

    pub fn waypoints(&self) -> &[CPoint] {
        &self.waypoints
    }

    pub fn start(&self) -> &CPoint {
        &self.waypoints[0]
    }

    pub fn end(&self) -> &CPoint {
        self.waypoints.last().expect("non-empty")
    }

    pub fn at(&self, t: f64) -> CPoint {
        eval_pl(&self.waypoints, &self.lengths, t)
    }
}

fn eval_pl(waypoints: &[CPoint], lengths: &[f64], t: f64) -> CPoint {
    match locate(lengths, t) {
        Some((seg, s)) => lerp(&waypoints[seg], &waypoints[seg + 1], s),
        None => waypoints[0].clone(),
    }
}

fn check_dims(waypoints: &[CPoint]) -> Result<usize> {
    let first = waypoints.first().ok_or(Error::EmptyPath)?;
    let n = first.len();
    if n == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    for w in waypoints {
        if w.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: w.len() });
        }
    }
    Ok(n)
}

/// `ℒ_z^w(t) = (1 − t)z + tw`.
pub fn segment(z: &[Complex64], w: &[Complex64]) -> Result<PathFragment> {
    PathFragment::new(vec![z.to_vec(), w.to_vec()])
}

/// A piecewise-linear element of the path space: continuous, with
/// `γ(0) ∈ ℝⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PLPath {
    waypoints: Vec<CPoint>,
    lengths: Vec<f64>,
}

impl PLPath {
    pub fn new(waypoints: Vec<CPoint>) -> Result<Self> {
        check_dims(&waypoints)?;
        for (coordinate, c) in waypoints[0].iter().enumerate() {
            if c.im != 0.0 {
                return Err(Error::NonRealStart { coordinate, imag: c.im });
            }
        }
        let lengths = cumulative(&waypoints, |a, b| point_distance(a, b));
        Ok(Self { waypoints, lengths })
    }

    /// The constant path at a real point.
    pub fn constant(x: &[f64]) -> Self {
        Self::new(vec![x.iter().map(|v| Complex64::new(*v, 0.0)).collect()])
            .expect("real start")
    }

    /// Straight path from a real point to `z`.
    pub fn straight(start: &[f64], z: &[Complex64]) -> Result<Self> {
        let start: CPoint = start.iter().map(|v| Complex64::new(*v, 0.0)).collect();
        Self::new(vec![start, z.to_vec()])
    }

    pub fn dim(&self) -> usize {
        self.waypoints[0].len()
    }

    pub fn waypoints(&self) -> &[CPoint] {
        &self.waypoints
    }

    pub fn segments(&self) -> usize {
        self.waypoints.len() - 1
    }

    pub fn length(&self) -> f64 {
        *self.lengths.last().expect("non-empty")
    }

    pub fn start(&self) -> &CPoint {
        &self.waypoints[0]
    }

    pub fn endpoint(&self) -> &CPoint {
        self.waypoints.last().expect("non-empty")
    }

    pub fn at(&self, t: f64) -> CPoint {
        eval_pl(&self.waypoints, &self.lengths, t)
    }

    /// `count` uniform parameter samples followed by every waypoint.
    pub fn sample_points(&self, count: usize) -> Vec<CPoint> {
        let mut pts: Vec<CPoint> = uniform_params(count).map(|t| self.at(t)).collect();
        pts.extend(self.waypoints.iter().cloned());
        pts
    }

    /// Arc-length parameters of the waypoints.
    pub fn waypoint_params(&self) -> Vec<f64> {
        let total = self.length();
        if total == 0.0 {
            return vec![0.0; self.waypoints.len()];
        }
        self.lengths.iter().map(|l| l / total).collect()
    }

    /// Like [`PLPath::sample_points`], paired with parameters.
    pub fn samples_with_params(&self, count: usize) -> Vec<(f64, CPoint)> {
        let mut pts: Vec<(f64, CPoint)> = uniform_params(count).map(|t| (t, self.at(t))).collect();
        pts.extend(self.waypoint_params().into_iter().zip(self.waypoints.iter().cloned()));
        pts
    }

    /// Waypoint-wise complex conjugate `γ̄`; the start stays real.
    pub fn conjugate(&self) -> Self {
        let waypoints = self
            .waypoints
            .iter()
            .map(|w| w.iter().map(|c| c.conj()).collect())
            .collect();
        Self { waypoints, lengths: self.lengths.clone() }
    }

    pub fn as_fragment(&self) -> PathFragment {
        PathFragment { waypoints: self.waypoints.clone(), lengths: self.lengths.clone() }
    }

    /// Bit pattern of the waypoints, for exact keyed caching.
    pub fn cache_key(&self) -> Vec<u64> {
        self.waypoints
            .iter()
            .flat_map(|w| w.iter().flat_map(|c| [c.re.to_bits(), c.im.to_bits()]))
            .collect()
    }
}

impl Serialize for PLPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.waypoints.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PLPath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let waypoints = Vec::<CPoint>::deserialize(d)?;
        Self::new(waypoints).map_err(serde::de::Error::custom)
    }
}

/// `γ ∘ tail`: the tail's waypoints are appended after `γ(1)`.
pub fn concat(gamma: &PLPath, tail: &PathFragment) -> Result<PLPath> {
    if tail.start().len() != gamma.dim() {
        return Err(Error::DimensionMismatch { expected: gamma.dim(), found: tail.start().len() });
    }
    let gap = point_distance(gamma.endpoint(), tail.start());
    if gap > JUNCTION_TOL {
        return Err(Error::EndpointMismatch { gap });
    }
    let mut waypoints = gamma.waypoints.clone();
    waypoints.extend(tail.waypoints[1..].iter().cloned());
    PLPath::new(waypoints)
}

/// `ℒ_γ(z) = γ ∘ ℒ_{γ(1)}^z`, with no radius constraint.
pub fn extend_to(gamma: &PLPath, z: &[Complex64]) -> Result<PLPath> {
    concat(gamma, &segment(gamma.endpoint(), z)?)
}

/// The image `γ^I = Ψ_i^I(γ)` of a path (or fragment) in `ℂ_I^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedPath {
    unit: ImaginaryUnit,
    waypoints: Vec<Vec<Quaternion>>,
    lengths: Vec<f64>,
}

impl LiftedPath {
    fn from_waypoints(waypoints: &[CPoint], unit: &ImaginaryUnit) -> Self {
        let waypoints: Vec<Vec<Quaternion>> =
            waypoints.iter().map(|w| w.iter().map(|c| unit.embed(*c)).collect()).collect();
        let lengths = cumulative(&waypoints, |a, b| {
            a.iter().zip(b).map(|(p, q)| (*p - *q).norm_sqr()).sum::<f64>().sqrt()
        });
        Self { unit: *unit, waypoints, lengths }
    }

    pub fn unit(&self) -> ImaginaryUnit {
        self.unit
    }

    pub fn at(&self, t: f64) -> SlicePoint {
        let coords = match locate(&self.lengths, t) {
            Some((seg, s)) => self.waypoints[seg]
                .iter()
                .zip(&self.waypoints[seg + 1])
                .map(|(p, q)| *p * (1.0 - s) + *q * s)
                .collect(),
            None => self.waypoints[0].clone(),
        };
        SlicePoint::from_quaternions(coords)
            .expect("lift stays in its slice")
            .with_unit(self.unit)
    }

    pub fn endpoint(&self) -> SlicePoint {
        self.at(1.0)
    }

    /// Appends another lifted piece in the same slice.
    pub fn concat(&self, tail: &LiftedPath) -> Result<LiftedPath> {
        let gap: f64 = self
            .waypoints
            .last()
            .expect("non-empty")
            .iter()
            .zip(&tail.waypoints[0])
            .map(|(p, q)| (*p - *q).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if gap > JUNCTION_TOL {
            return Err(Error::EndpointMismatch { gap });
        }
        let mut waypoints = self.waypoints.clone();
        waypoints.extend(tail.waypoints[1..].iter().cloned());
        let lengths = cumulative(&waypoints, |a: &Vec<Quaternion>, b: &Vec<Quaternion>| {
            a.iter().zip(b).map(|(p, q)| (*p - *q).norm_sqr()).sum::<f64>().sqrt()
        });
        Ok(Self { unit: self.unit, waypoints, lengths })
    }
}

/// Applies `Ψ_i^I` to every waypoint.
pub fn lift(gamma: &PLPath, unit: &ImaginaryUnit) -> LiftedPath {
    LiftedPath::from_waypoints(&gamma.waypoints, unit)
}

pub fn lift_fragment(fragment: &PathFragment, unit: &ImaginaryUnit) -> LiftedPath {
    LiftedPath::from_waypoints(&fragment.waypoints, unit)
}

/// `B_𝒫(γ, r) = {γ ∘ ℒ_{γ(1)}^z : |z − γ(1)| < r}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathBall {
    pub center: PLPath,
    pub radius: f64,
}

impl PathBall {
    pub fn new(center: PLPath, radius: f64) -> Result<Self> {
        if radius.is_nan() || radius <= 0.0 {
            return Err(Error::InvalidSpec(format!("path ball radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn contains_endpoint(&self, z: &[Complex64]) -> bool {
        z.len() == self.center.dim() && point_distance(z, self.center.endpoint()) < self.radius
    }
}

/// The member `ℒ_γ(z)` of a path ball.
pub fn path_ball_member(ball: &PathBall, z: &[Complex64]) -> Result<PLPath> {
    if z.len() != ball.center.dim() {
        return Err(Error::DimensionMismatch { expected: ball.center.dim(), found: z.len() });
    }
    let distance = point_distance(z, ball.center.endpoint());
    if distance >= ball.radius {
        return Err(Error::OutOfBall { distance, radius: ball.radius });
    }
    extend_to(&ball.center, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn segment_examples() {
        let s = segment(&[c(0.0, 0.0)], &[c(1.0, 1.0)]).unwrap();
        assert_eq!(s.at(0.5), vec![c(0.5, 0.5)]);
        let s = segment(&[c(1.0, 0.0)], &[c(3.0, 0.0)]).unwrap();
        assert_eq!(s.at(0.25), vec![c(1.5, 0.0)]);
        let z = vec![c(0.3, -0.7)];
        let s = segment(&z, &z).unwrap();
        for t in [0.0, 0.4, 1.0] {
            assert_eq!(s.at(t), z);
        }
    }

    #[test]
    fn start_must_be_real() {
        assert!(matches!(
            PLPath::new(vec![vec![c(0.0, 1e-300)]]),
            Err(Error::NonRealStart { coordinate: 0, .. })
        ));
        assert!(matches!(PLPath::new(vec![]), Err(Error::EmptyPath)));
        assert!(matches!(
            PLPath::new(vec![vec![c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn concat_examples() {
        let base = PLPath::new(vec![vec![c(0.0, 0.0)], vec![c(1.0, 0.0)]]).unwrap();
        let tail = segment(&[c(1.0, 0.0)], &[c(1.0, 1.0)]).unwrap();
        let path = concat(&base, &tail).unwrap();
        assert_eq!(path.at(1.0), vec![c(1.0, 1.0)]);
        assert_eq!(path.segments(), 2);

        let same = concat(&base, &segment(base.endpoint(), base.endpoint()).unwrap()).unwrap();
        assert_eq!(same.endpoint(), base.endpoint());
        assert_eq!(same.at(0.5), base.at(0.5));

        let bad = segment(&[c(2.0, 0.0)], &[c(3.0, 0.0)]).unwrap();
        assert!(matches!(concat(&base, &bad), Err(Error::EndpointMismatch { .. })));
    }

    #[test]
    fn arc_length_parametrization() {
        // second segment is three times longer than the first
        let p = PLPath::new(vec![vec![c(0.0, 0.0)], vec![c(1.0, 0.0)], vec![c(1.0, 3.0)]]).unwrap();
        assert_eq!(p.at(0.25), vec![c(1.0, 0.0)]);
        assert_eq!(p.at(0.5), vec![c(1.0, 1.0)]);
    }

    #[test]
    fn lift_examples() {
        let unit = ImaginaryUnit::J;
        let constant = PLPath::constant(&[2.5]);
        let l = lift(&constant, &ImaginaryUnit::new(0.2, 0.3, 0.4).unwrap());
        assert_eq!(l.at(0.7).coords(), &[Quaternion::real(2.5)]);

        let p = PLPath::straight(&[0.0], &[c(1.0, 2.0)]).unwrap();
        assert_eq!(lift(&p, &unit).endpoint().coords(), &[Quaternion::new(1.0, 0.0, 2.0, 0.0)]);

        let u = ImaginaryUnit::new(1.0, -1.0, 2.0).unwrap();
        let plus = lift(&p, &u).endpoint().coords()[0];
        let minus = lift(&p, &-u).endpoint().coords()[0];
        assert_eq!(plus.conj(), minus);
    }

    #[test]
    fn path_ball_members() {
        let gamma = PLPath::new(vec![vec![c(0.0, 0.0)], vec![c(1.0, 0.0)]]).unwrap();
        let ball = PathBall::new(gamma.clone(), 1.0).unwrap();
        let m = path_ball_member(&ball, &[c(1.0, 0.0)]).unwrap();
        assert_eq!(m.endpoint(), gamma.endpoint());

        let m = path_ball_member(&ball, &[c(1.0, 0.5)]).unwrap();
        assert_eq!(m.waypoints(), &[vec![c(0.0, 0.0)], vec![c(1.0, 0.0)], vec![c(1.0, 0.5)]]);
        assert_eq!(m.endpoint(), &vec![c(1.0, 0.5)]);

        assert!(matches!(path_ball_member(&ball, &[c(3.0, 0.0)]), Err(Error::OutOfBall { .. })));
    }

    #[test]
    fn path_json_is_waypoint_major() {
        let p = PLPath::new(vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 2.0), c(0.0, -1.0)]])
            .unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, "[[[0.0,0.0],[1.0,0.0]],[[1.0,2.0],[0.0,-1.0]]]");
        let back: PLPath = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<PLPath>("[[[0.0,1.0]]]").is_err());
    }
}
