//! Concrete slice functions: quaternionic polynomials with right
//! coefficients, and the path-continued branches of `√` and `log`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domain::{first_exit, DomainShape, SliceDomain};
use crate::error::{Error, Result};
use crate::path::{lift, PLPath, DEFAULT_PATH_SAMPLES};
use crate::quaternion::{frak_i_unit, ImaginaryUnit, Quaternion, SlicePoint};

/// Continuation is refused when a path comes this close to the branch point.
pub const BRANCH_POINT_TOL: f64 = 1e-9;

/// Anything with path-slice values `f ∘ γ^I(1)`.
pub trait PathSlice: Send + Sync {
    /// Number of variables, if fixed.
    fn dim(&self) -> Option<usize>;

    /// The value at `γ^I(1)`, continued along `γ` where that matters.
    fn eval_along(&self, gamma: &PLPath, unit: &ImaginaryUnit) -> Result<Quaternion>;

    /// Pointwise value, where it does not depend on a path.
    fn eval_point(&self, q: &SlicePoint) -> Result<Quaternion>;

    /// Whether [`PathSlice::eval_point`] is available everywhere.
    fn is_pointwise(&self) -> bool;
}

impl<T: PathSlice + ?Sized> PathSlice for &T {
    fn dim(&self) -> Option<usize> {
        (**self).dim()
    }

    fn eval_along(&self, gamma: &PLPath, unit: &ImaginaryUnit) -> Result<Quaternion> {
        (**self).eval_along(gamma, unit)
    }

    fn eval_point(&self, q: &SlicePoint) -> Result<Quaternion> {
        (**self).eval_point(q)
    }

    fn is_pointwise(&self) -> bool {
        (**self).is_pointwise()
    }
}

/// One term `q₁^{k₁}···qₙ^{kₙ} a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub k: Vec<u32>,
    pub a: Quaternion,
}

/// `f(q) = Σ q₁^{k₁}···qₙ^{kₙ} a_k`, coefficients on the right.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyFunction {
    n: usize,
    terms: BTreeMap<Vec<u32>, Quaternion>,
}

impl PolyFunction {
    /// Repeated multi-indices are summed.
    pub fn new(n: usize, terms: impl IntoIterator<Item = PolyTerm>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("polynomial needs at least one variable".into()));
        }
        let mut map = BTreeMap::new();
        for t in terms {
            if t.k.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: t.k.len() });
            }
            if !t.a.is_finite() {
                return Err(Error::InvalidSpec("non-finite coefficient".into()));
            }
            *map.entry(t.k).or_insert(Quaternion::ZERO) += t.a;
        }
        Ok(Self { n, terms: map })
    }

    /// One-variable polynomial from dense coefficients `a_0, a_1, ...`.
    pub fn from_coefficients(coeffs: &[Quaternion]) -> Self {
        let terms = coeffs.iter().enumerate().map(|(k, a)| PolyTerm { k: vec![k as u32], a: *a });
        Self::new(1, terms).expect("one variable")
    }

    pub fn constant(n: usize, c: Quaternion) -> Self {
        Self::new(n, [PolyTerm { k: vec![0; n], a: c }]).expect("n > 0")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = PolyTerm> + '_ {
        self.terms.iter().map(|(k, a)| PolyTerm { k: k.clone(), a: *a })
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.iter().sum()).max().unwrap_or(0)
    }

    /// Dense coefficients of a one-variable polynomial.
    pub fn coefficients(&self) -> Option<Vec<Quaternion>> {
        if self.n != 1 {
            return None;
        }
        let mut out = vec![Quaternion::ZERO; self.degree() as usize + 1];
        for (k, a) in &self.terms {
            out[k[0] as usize] += *a;
        }
        Some(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Self::new(self.n, self.terms().chain(other.terms()))
    }

    pub fn scale(&self, s: f64) -> Self {
        let terms = self.terms.iter().map(|(k, a)| (k.clone(), *a * s)).collect();
        Self { n: self.n, terms }
    }

    /// Evaluation on a point of the slice cone. Coordinates of a slice
    /// point commute, so monomials are plain products of powers.
    pub fn eval(&self, q: &SlicePoint) -> Result<Quaternion> {
        if q.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: q.dim() });
        }
        if self.n == 1 {
            // Horner: Σ q^k a_k = a_0 + q(a_1 + q(a_2 + ...))
            let coeffs = self.coefficients().expect("one variable");
            let x = q.coords()[0];
            return Ok(coeffs.iter().rev().fold(Quaternion::ZERO, |acc, a| x * acc + *a));
        }
        let mut powers: Vec<Vec<Quaternion>> = Vec::with_capacity(self.n);
        for (l, x) in q.coords().iter().enumerate() {
            let top = self.terms.keys().map(|k| k[l]).max().unwrap_or(0) as usize;
            let mut p = vec![Quaternion::ONE];
            for _ in 0..top {
                let next = *p.last().expect("non-empty") * *x;
                p.push(next);
            }
            powers.push(p);
        }
        Ok(self
            .terms
            .iter()
            .map(|(k, a)| {
                let mono = k
                    .iter()
                    .enumerate()
                    .fold(Quaternion::ONE, |m, (l, e)| m * powers[l][*e as usize]);
                mono * *a
            })
            .sum())
    }
}

/// Which multivalued function is continued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Sqrt,
    Log,
}

/// A one-variable function defined by continuing the principal branch
/// from the positive real start of a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonodromyFunction {
    pub branch: Branch,
}

impl MonodromyFunction {
    pub fn sqrt() -> Self {
        Self { branch: Branch::Sqrt }
    }

    pub fn log() -> Self {
        Self { branch: Branch::Log }
    }

    pub fn principal(&self, z: Complex64) -> Complex64 {
        match self.branch {
            Branch::Sqrt => z.sqrt(),
            Branch::Log => z.ln(),
        }
    }

    /// Branch value at `z` nearest to `prev`.
    fn nearest(&self, z: Complex64, prev: Complex64) -> Complex64 {
        match self.branch {
            Branch::Sqrt => {
                let s = z.sqrt();
                if (s - prev).norm() <= (-s - prev).norm() {
                    s
                } else {
                    -s
                }
            }
            Branch::Log => {
                let l = z.ln();
                let turns = ((prev.im - l.im) / TAU).round();
                l + Complex64::new(0.0, TAU * turns)
            }
        }
    }

    /// Continues the principal branch along a path in ℂ.
    ///
    /// Each segment is bisected until it subtends less than `π/4` at the
    /// branch point; the branch is then carried by nearest-value selection.
    pub fn continue_along(&self, gamma: &PLPath) -> Result<Complex64> {
        if gamma.dim() != 1 {
            return Err(Error::MonodromyDimension(gamma.dim()));
        }
        let start = gamma.start()[0].re;
        if start.abs() < BRANCH_POINT_TOL {
            return Err(Error::BranchPointHit { distance: start.abs() });
        }
        if start < 0.0 {
            return Err(Error::StartOnCut { start });
        }
        let mut value = self.principal(Complex64::new(start, 0.0));
        for w in gamma.waypoints().windows(2) {
            let (a, b) = (w[0][0], w[1][0]);
            let distance = distance_to_origin(a, b);
            if distance < BRANCH_POINT_TOL {
                return Err(Error::BranchPointHit { distance });
            }
            let mut stack = vec![(a, b)];
            while let Some((a, b)) = stack.pop() {
                if (b / a).arg().abs() < FRAC_PI_4 {
                    value = self.nearest(b, value);
                } else {
                    let mid = (a + b) * 0.5;
                    stack.push((mid, b));
                    stack.push((a, mid));
                }
            }
        }
        Ok(value)
    }
}

fn distance_to_origin(a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return a.norm();
    }
    let t = (-(a.re * d.re + a.im * d.im) / len2).clamp(0.0, 1.0);
    (a + d * t).norm()
}

/// The function classes exercised by the library.
#[derive(Clone, Debug, PartialEq)]
pub enum SliceFunction {
    Poly(PolyFunction),
    Monodromy(MonodromyFunction),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum FunctionDoc {
    Poly { terms: Vec<PolyTerm> },
    Sqrt,
    Log,
}

impl Serialize for SliceFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let doc = match self {
            SliceFunction::Poly(p) => FunctionDoc::Poly { terms: p.terms().collect() },
            SliceFunction::Monodromy(m) => match m.branch {
                Branch::Sqrt => FunctionDoc::Sqrt,
                Branch::Log => FunctionDoc::Log,
            },
        };
        doc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SliceFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match FunctionDoc::deserialize(d)? {
            FunctionDoc::Poly { terms } => {
                let n = terms.first().map_or(1, |t| t.k.len());
                SliceFunction::Poly(PolyFunction::new(n, terms).map_err(serde::de::Error::custom)?)
            }
            FunctionDoc::Sqrt => SliceFunction::Monodromy(MonodromyFunction::sqrt()),
            FunctionDoc::Log => SliceFunction::Monodromy(MonodromyFunction::log()),
        })
    }
}

/// A function together with its declared domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceFunctionSpec {
    pub function: SliceFunction,
    pub domain: SliceDomain,
}

impl SliceFunctionSpec {
    pub fn new(function: SliceFunction, domain: SliceDomain) -> Self {
        Self { function, domain }
    }

    pub fn poly(p: PolyFunction, domain: SliceDomain) -> Self {
        Self::new(SliceFunction::Poly(p), domain)
    }

    pub fn sqrt(domain: SliceDomain) -> Self {
        Self::new(SliceFunction::Monodromy(MonodromyFunction::sqrt()), domain)
    }

    pub fn log(domain: SliceDomain) -> Self {
        Self::new(SliceFunction::Monodromy(MonodromyFunction::log()), domain)
    }

    pub fn as_poly(&self) -> Option<&PolyFunction> {
        match &self.function {
            SliceFunction::Poly(p) => Some(p),
            SliceFunction::Monodromy(_) => None,
        }
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        match (&self.function, self.dim()) {
            (SliceFunction::Monodromy(_), _) if n != 1 => Err(Error::MonodromyDimension(n)),
            (_, Some(d)) if d != n => Err(Error::DimensionMismatch { expected: d, found: n }),
            _ => Ok(()),
        }
    }
}

/// Pointwise value `f(q)`.
pub fn eval_point(f: &SliceFunctionSpec, q: &SlicePoint) -> Result<Quaternion> {
    f.check_dim(q.dim())?;
    if !f.domain.contains(q) {
        return Err(Error::OutOfDomain);
    }
    match &f.function {
        SliceFunction::Poly(p) => p.eval(q),
        SliceFunction::Monodromy(m) => {
            if !matches!(f.domain.shape, DomainShape::SlitPlane {}) {
                return Err(Error::PathRequired);
            }
            let unit = frak_i_unit(q).unwrap_or(ImaginaryUnit::I);
            let z = q.complex_coords(&unit)[0];
            Ok(unit.embed(m.principal(z)))
        }
    }
}

/// `f ∘ γ^I(1)`, continued along `γ` for monodromy functions.
pub fn eval_along(f: &SliceFunctionSpec, gamma: &PLPath, unit: &ImaginaryUnit) -> Result<Quaternion> {
    f.check_dim(gamma.dim())?;
    if let Some(t) = first_exit(&f.domain, gamma, unit, DEFAULT_PATH_SAMPLES) {
        return Err(Error::PathLeavesDomain { t });
    }
    match &f.function {
        SliceFunction::Poly(p) => p.eval(&lift(gamma, unit).endpoint()),
        SliceFunction::Monodromy(m) => Ok(unit.embed(m.continue_along(gamma)?)),
    }
}

impl PathSlice for SliceFunctionSpec {
    fn dim(&self) -> Option<usize> {
        match &self.function {
            SliceFunction::Poly(p) => Some(p.dim()),
            SliceFunction::Monodromy(_) => Some(1),
        }
    }

    fn eval_along(&self, gamma: &PLPath, unit: &ImaginaryUnit) -> Result<Quaternion> {
        eval_along(self, gamma, unit)
    }

    fn eval_point(&self, q: &SlicePoint) -> Result<Quaternion> {
        eval_point(self, q)
    }

    fn is_pointwise(&self) -> bool {
        match &self.function {
            SliceFunction::Poly(_) => true,
            SliceFunction::Monodromy(_) => matches!(self.domain.shape, DomainShape::SlitPlane {}),
        }
    }
}
