//! Quaternion arithmetic, imaginary units, slice points and the 2×1 / 2×2
//! quaternionic linear algebra used by stems.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Imaginary norms at or below this are treated as real.
pub const REAL_TOL: f64 = 1e-12;

/// Minimum `|I - J|` accepted by [`slice_matrix_inverse`].
pub const CONDITIONING_FLOOR: f64 = 1e-6;

/// Default number of sampled imaginary units.
pub const DEFAULT_SPHERE_SAMPLES: usize = 64;

/// An element `w + xi + yj + zk` of the real quaternion algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    pub fn re(&self) -> f64 {
        self.w
    }

    /// Imaginary part `xi + yj + zk`.
    pub fn im(&self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn im_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// `q⁻¹ = q̄ / |q|²`, or `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            None
        } else {
            Some(self.conj() * (1.0 / n2))
        }
    }

    pub fn is_real(&self) -> bool {
        self.im_norm() <= REAL_TOL
    }

    /// Euclidean inner product on ℝ⁴.
    pub fn dot(&self, other: &Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn is_finite(&self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Hamilton product.
pub fn quat_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    Quaternion::new(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        quat_mul(self, o)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    fn div(self, s: f64) -> Self {
        self * (1.0 / s)
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        <[f64; 4]>::deserialize(d).map(Self::from_array)
    }
}

/// A point of the unit 2-sphere of pure imaginary quaternions, i.e. a
/// quaternion with `I² = -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImaginaryUnit(Quaternion);

impl ImaginaryUnit {
    pub const I: Self = Self(Quaternion::I);
    pub const J: Self = Self(Quaternion::J);
    pub const K: Self = Self(Quaternion::K);

    /// Normalizes `(x, y, z)` onto the sphere. The real part is stored as
    /// exactly zero.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !n.is_finite() || n <= REAL_TOL {
            return Err(Error::InvalidUnit(format!("({x}, {y}, {z}) has no direction")));
        }
        Ok(Self(Quaternion::new(0.0, x / n, y / n, z / n)))
    }

    /// Unit along the imaginary part of `q`.
    pub fn from_quaternion(q: Quaternion) -> Result<Self> {
        Self::new(q.x, q.y, q.z)
    }

    pub fn as_quaternion(&self) -> Quaternion {
        self.0
    }

    pub fn components(&self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }

    /// `|I - J|` as quaternions.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.0 - other.0).norm()
    }

    /// `Ψ_i^I`: maps `x + yi` to `x + yI`.
    pub fn embed(&self, z: Complex64) -> Quaternion {
        Quaternion::real(z.re) + self.0 * z.im
    }
}

impl Neg for ImaginaryUnit {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Serialize for ImaginaryUnit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.components().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ImaginaryUnit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[f64; 3]>::deserialize(d)?;
        Self::new(x, y, z).map_err(serde::de::Error::custom)
    }
}

/// Deterministic near-uniform sample of the imaginary sphere.
///
/// Takes `ceil(count / 2)` points of a Fibonacci lattice and adds their
/// antipodes, so the sample is closed under `I ↦ -I`.
pub fn sample_sphere(count: usize) -> Vec<ImaginaryUnit> {
    let half = count.div_ceil(2).max(1);
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut units = Vec::with_capacity(2 * half);
    for i in 0..half {
        let y = 1.0 - 2.0 * (i as f64 + 0.5) / half as f64;
        let r = (1.0 - y * y).max(0.0).sqrt();
        let phi = golden * i as f64;
        // x, y, z never all vanish here
        units.push(ImaginaryUnit::new(r * phi.cos(), y, r * phi.sin()).unwrap());
    }
    let negated: Vec<_> = units.iter().map(|u| -*u).collect();
    units.extend(negated);
    units
}

/// A point of the slice cone: `n` quaternion coordinates lying in one
/// common slice `ℂ_I^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlicePoint {
    coords: Vec<Quaternion>,
    unit: Option<ImaginaryUnit>,
}

impl SlicePoint {
    /// `Ψ_i^I(z)`, with `I` recorded as the slice of the point.
    pub fn from_complex(z: &[Complex64], unit: ImaginaryUnit) -> Self {
        Self { coords: z.iter().map(|c| unit.embed(*c)).collect(), unit: Some(unit) }
    }

    pub fn real(x: &[f64]) -> Self {
        Self { coords: x.iter().map(|v| Quaternion::real(*v)).collect(), unit: None }
    }

    /// Checks that every coordinate lies in the slice of the first
    /// non-real coordinate.
    pub fn from_quaternions(coords: Vec<Quaternion>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let unit = canonical_unit(&coords);
        if let Some(u) = unit {
            let uq = u.as_quaternion();
            for (idx, q) in coords.iter().enumerate() {
                let along = q.im().dot(&uq);
                let off = (q.im() - uq * along).norm();
                if off > 1e-9 * (1.0 + q.norm()) {
                    return Err(Error::NotInSliceCone { coordinate: idx, offset: off });
                }
            }
        }
        Ok(Self { coords, unit })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Quaternion] {
        &self.coords
    }

    /// The slice this point was built in, if any.
    pub fn unit(&self) -> Option<ImaginaryUnit> {
        self.unit
    }

    pub fn with_unit(mut self, unit: ImaginaryUnit) -> Self {
        self.unit = Some(unit);
        self
    }

    pub fn is_real(&self) -> bool {
        self.coords.iter().all(Quaternion::is_real)
    }

    /// Complex coordinates relative to `unit`: `q_ℓ = Re q_ℓ + ⟨Im q_ℓ, I⟩ I`.
    pub fn complex_coords(&self, unit: &ImaginaryUnit) -> Vec<Complex64> {
        let uq = unit.as_quaternion();
        self.coords.iter().map(|q| Complex64::new(q.w, q.im().dot(&uq))).collect()
    }

    /// Complex coordinates relative to the recorded slice, or `𝔦(q)`.
    pub fn to_complex(&self) -> (Vec<Complex64>, Option<ImaginaryUnit>) {
        match self.unit.or_else(|| canonical_unit(&self.coords)) {
            Some(u) => (self.complex_coords(&u), Some(u)),
            None => (self.coords.iter().map(|q| Complex64::new(q.w, 0.0)).collect(), None),
        }
    }

    /// Distance in ℍⁿ ≅ ℝ⁴ⁿ.
    pub fn distance(&self, other: &Self) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (*a - *b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Serialize for SlicePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SlicePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<Quaternion>::deserialize(d)?;
        Self::from_quaternions(coords).map_err(serde::de::Error::custom)
    }
}

fn canonical_unit(coords: &[Quaternion]) -> Option<ImaginaryUnit> {
    coords
        .iter()
        .find(|q| !q.is_real())
        .map(|q| ImaginaryUnit::from_quaternion(*q).expect("non-real coordinate has a direction"))
}

/// `𝔦(q)`: zero for real points, otherwise the unit of the first non-real
/// coordinate.
pub fn frak_i(q: &SlicePoint) -> Quaternion {
    canonical_unit(&q.coords).map_or(Quaternion::ZERO, |u| u.as_quaternion())
}

/// `𝔦(q)` as a unit, `None` for real points.
pub fn frak_i_unit(q: &SlicePoint) -> Option<ImaginaryUnit> {
    canonical_unit(&q.coords)
}

/// Value `F(γ) ∈ ℍ^{2×1}` of a stem function.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StemVector {
    pub f1: Quaternion,
    pub f2: Quaternion,
}

impl StemVector {
    pub const fn new(f1: Quaternion, f2: Quaternion) -> Self {
        Self { f1, f2 }
    }

    /// `(1, I)·F = f1 + I f2`.
    pub fn recombine(&self, unit: &ImaginaryUnit) -> Quaternion {
        self.f1 + unit.as_quaternion() * self.f2
    }

    /// Row vector times column vector, `(a, b)·F = a f1 + b f2`.
    pub fn apply_row(&self, a: Quaternion, b: Quaternion) -> Quaternion {
        a * self.f1 + b * self.f2
    }

    /// `σF = (-f2, f1)`.
    pub fn sigma(&self) -> Self {
        Self::new(-self.f2, self.f1)
    }

    pub fn norm(&self) -> f64 {
        (self.f1.norm_sqr() + self.f2.norm_sqr()).sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.f1 * s, self.f2 * s)
    }
}

impl Add for StemVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.f1 + o.f1, self.f2 + o.f2)
    }
}

impl Sub for StemVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.f1 - o.f1, self.f2 - o.f2)
    }
}

impl Neg for StemVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.f1, -self.f2)
    }
}

/// `p*q := (p₁𝕀 + p₂σ)(q₁𝕀 + q₂σ)e₁ = (p₁q₁ − p₂q₂, p₁q₂ + p₂q₁)ᵀ`.
pub fn stem_star(p: &StemVector, q: &StemVector) -> StemVector {
    StemVector::new(p.f1 * q.f1 - p.f2 * q.f2, p.f1 * q.f2 + p.f2 * q.f1)
}

/// A 2×2 quaternionic matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StemMatrix {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
    pub d: Quaternion,
}

impl StemMatrix {
    pub const IDENTITY: Self =
        Self { a: Quaternion::ONE, b: Quaternion::ZERO, c: Quaternion::ZERO, d: Quaternion::ONE };

    pub const fn new(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> Self {
        Self { a, b, c, d }
    }

    /// `M(I, J) = [[1, I], [1, J]]`.
    pub fn slice_pair(i: &ImaginaryUnit, j: &ImaginaryUnit) -> Self {
        Self::new(Quaternion::ONE, i.as_quaternion(), Quaternion::ONE, j.as_quaternion())
    }

    pub fn apply(&self, v: &StemVector) -> StemVector {
        StemVector::new(self.a * v.f1 + self.b * v.f2, self.c * v.f1 + self.d * v.f2)
    }

    pub fn matmul(&self, o: &Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Frobenius norm over the 16 real entries.
    pub fn frobenius(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()).sqrt()
    }
}

impl Sub for StemMatrix {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

/// Inverse of `M(I, J) = [[1, I], [1, J]]`.
///
/// Solving the left-inverse system `a + b = 1, aI + bJ = 0, c + d = 0,
/// cI + dJ = 1` gives `c = (I − J)⁻¹`, `d = −c`, `a = −J c`, `b = 1 − a`.
pub fn slice_matrix_inverse(i: &ImaginaryUnit, j: &ImaginaryUnit) -> Result<StemMatrix> {
    let diff = i.as_quaternion() - j.as_quaternion();
    let separation = diff.norm();
    if separation < CONDITIONING_FLOOR {
        return Err(Error::DegenerateSlicePair { separation });
    }
    let c = diff.inv().expect("separation above floor");
    let a = -(j.as_quaternion() * c);
    Ok(StemMatrix::new(a, Quaternion::ONE - a, c, -c))
}

/// Largest deviation between `I·(c, Ic)` and `(c, Ic)·σ`, computed
/// independently from both sides.
pub fn icic_residual(c: Quaternion, unit: &ImaginaryUnit) -> f64 {
    let u = unit.as_quaternion();
    let ic = u * c;
    // left: scalar I times the row vector
    let left = (u * c, u * ic);
    // right: row vector times σ = [[0, -1], [1, 0]]
    let right = (c * 0.0 + ic * 1.0, c * -1.0 + ic * 0.0);
    (left.0 - right.0).norm().max((left.1 - right.1).norm())
}

/// `I(c, Ic) = (c, Ic)σ` to within `1e-12·(1 + |c|)`.
pub fn icic_check(c: Quaternion, unit: &ImaginaryUnit) -> bool {
    icic_residual(c, unit) <= 1e-12 * (1.0 + c.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn defining_relations() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(j * i, -k);
        for u in [i, j, k] {
            assert_eq!(u * u, -Quaternion::ONE);
        }
        assert_eq!(i * j * k, -Quaternion::ONE);
    }

    #[test]
    fn bilinear_product_example() {
        let p = Quaternion::ONE + Quaternion::I;
        let q = Quaternion::ONE + Quaternion::J;
        assert_eq!(p * q, Quaternion::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn inverse_example() {
        let q = Quaternion::new(2.0, 1.0, 0.0, -3.0);
        assert!(close(q * q.inv().unwrap(), Quaternion::ONE, 1e-15));
        assert!(Quaternion::ZERO.inv().is_none());
    }

    #[test]
    fn unit_normalizes_and_squares_to_minus_one() {
        let u = ImaginaryUnit::new(3.0, -4.0, 12.0).unwrap();
        let q = u.as_quaternion();
        assert_eq!(q.w, 0.0);
        assert!(close(q * q, -Quaternion::ONE, 1e-12));
        assert!(ImaginaryUnit::new(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn frak_i_examples() {
        let real = SlicePoint::real(&[2.0, 3.0]);
        assert_eq!(frak_i(&real), Quaternion::ZERO);

        let q = SlicePoint::from_quaternions(vec![
            Quaternion::real(5.0),
            Quaternion::new(2.0, 0.0, 3.0, 0.0),
        ])
        .unwrap();
        assert_eq!(frak_i(&q), Quaternion::J);

        let q = SlicePoint::from_quaternions(vec![Quaternion::new(2.0, 0.0, 0.0, -3.0)]).unwrap();
        assert_eq!(frak_i(&q), -Quaternion::K);
    }

    #[test]
    fn mixed_slices_are_rejected() {
        let err = SlicePoint::from_quaternions(vec![Quaternion::I, Quaternion::J]).unwrap_err();
        assert!(matches!(err, Error::NotInSliceCone { coordinate: 1, .. }));
    }

    #[test]
    fn stem_star_examples() {
        let a = Quaternion::new(1.0, 2.0, -1.0, 0.5);
        let b = Quaternion::new(-0.5, 0.0, 3.0, 1.0);
        let z = Quaternion::ZERO;
        assert_eq!(stem_star(&StemVector::new(a, z), &StemVector::new(b, z)), StemVector::new(a * b, z));

        let e2 = StemVector::new(z, Quaternion::ONE);
        assert_eq!(stem_star(&e2, &e2), StemVector::new(-Quaternion::ONE, z));
    }

    /// Oracle: expand `(p₁𝕀 + p₂σ)(q₁𝕀 + q₂σ)e₁` as explicit 2×2 matrices.
    fn star_by_matrices(p: &StemVector, q: &StemVector) -> StemVector {
        let embed = |v: &StemVector| StemMatrix::new(v.f1, -v.f2, v.f2, v.f1);
        let m = embed(p).matmul(&embed(q));
        StemVector::new(m.a, m.c)
    }

    #[test]
    fn stem_star_matches_matrix_oracle() {
        let p = StemVector::new(Quaternion::ONE, Quaternion::I);
        let q = StemVector::new(Quaternion::J, Quaternion::K);
        let oracle = star_by_matrices(&p, &q);
        assert_eq!(oracle, StemVector::new(Quaternion::J * 2.0, Quaternion::K * 2.0));
        assert_eq!(stem_star(&p, &q), oracle);
    }

    #[test]
    fn inverse_for_i_j() {
        let m = slice_matrix_inverse(&ImaginaryUnit::I, &ImaginaryUnit::J).unwrap();
        let (one, i, j, k) = (Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K);
        assert!(close(m.a, (one - k) / 2.0, 1e-15));
        assert!(close(m.b, (one + k) / 2.0, 1e-15));
        assert!(close(m.c, (j - i) / 2.0, 1e-15));
        assert!(close(m.d, (i - j) / 2.0, 1e-15));
    }

    #[test]
    fn inverse_for_antipodal_pair() {
        let u = ImaginaryUnit::new(1.0, 2.0, -2.0).unwrap();
        let m = slice_matrix_inverse(&u, &-u).unwrap();
        let half = Quaternion::real(0.5);
        let uq = u.as_quaternion();
        assert!(close(m.a, half, 1e-15));
        assert!(close(m.b, half, 1e-15));
        // (2I)⁻¹ = −I/2
        assert!(close(m.c, -uq / 2.0, 1e-15));
        assert!(close(m.d, uq / 2.0, 1e-15));
        let back = m.matmul(&StemMatrix::slice_pair(&u, &-u));
        assert!((back - StemMatrix::IDENTITY).frobenius() < 1e-15);
    }

    #[test]
    fn degenerate_pair_is_rejected() {
        let u = ImaginaryUnit::I;
        let v = ImaginaryUnit::new(1.0, 1e-8, 0.0).unwrap();
        assert!(matches!(slice_matrix_inverse(&u, &v), Err(Error::DegenerateSlicePair { .. })));
        assert!(slice_matrix_inverse(&u, &u).is_err());
    }

    #[test]
    fn icic_examples() {
        assert!(icic_check(Quaternion::ONE, &ImaginaryUnit::I));
        assert_eq!(Quaternion::I * Quaternion::ONE, Quaternion::I);
        assert_eq!(Quaternion::I * Quaternion::I, -Quaternion::ONE);
        assert_eq!(icic_residual(Quaternion::ZERO, &ImaginaryUnit::J), 0.0);
    }

    #[test]
    fn sphere_sample_is_symmetric_and_unit() {
        let s = sample_sphere(64);
        assert_eq!(s.len(), 64);
        for (a, b) in s[..32].iter().zip(&s[32..]) {
            assert_eq!(*b, -*a);
        }
        for u in &s {
            let q = u.as_quaternion();
            assert!(close(q * q, -Quaternion::ONE, 1e-12));
        }
        assert_eq!(sample_sphere(5).len(), 6);
    }

    #[test]
    fn complex_coords_round_trip() {
        let u = ImaginaryUnit::new(0.3, -0.2, 0.9).unwrap();
        let z = [Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.0)];
        let p = SlicePoint::from_complex(&z, u);
        let back = p.complex_coords(&u);
        assert!((back[0] - z[0]).norm() < 1e-15 && (back[1] - z[1]).norm() < 1e-15);
        let flipped = p.complex_coords(&-u);
        assert!((flipped[0] - z[0].conj()).norm() < 1e-15);
    }

    #[test]
    fn quaternion_json_shape() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[1.0,2.0,3.0,4.0]");
        let u: ImaginaryUnit = serde_json::from_str("[0,2,0]").unwrap();
        assert_eq!(u, ImaginaryUnit::J);
        assert!(serde_json::from_str::<ImaginaryUnit>("[0,0,0]").is_err());
    }
}
