//! The `*`-product `f*g = (f, 𝔦f)·𝔉^g` and its verification.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{routing_unit, Sampling, SliceDomain, StemPreservingReport};
use crate::error::{Error, Result};
use crate::function::{PathSlice, PolyFunction, PolyTerm, SliceFunctionSpec};
use crate::path::{lift, PLPath};
use crate::quaternion::{frak_i, ImaginaryUnit, Quaternion, SlicePoint, StemVector};
use crate::sample;
use crate::stem::{cr_residual_with, CRReport, StemQuery};

const CACHE_LIMIT: usize = 1 << 16;

/// `f*g` on `Ω₁`, with `g` living on `Ω₂`.
pub struct StarProduct<F, G> {
    pub f: F,
    pub stems: StemQuery<G>,
    wrong_unit: Option<ImaginaryUnit>,
    cache: Mutex<HashMap<Vec<u64>, StemVector>>,
}

impl<F: PathSlice, G: PathSlice> StarProduct<F, G> {
    pub fn new(f: F, g: G, domain1: SliceDomain, domain2: SliceDomain) -> Self {
        Self {
            f,
            stems: StemQuery::new(g, domain1, domain2),
            wrong_unit: None,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_sampling(mut self, sampling: Sampling) -> Self {
        self.stems.sampling = sampling;
        self
    }

    /// Replaces `𝔦(q)` by a fixed unit in the product formula. The result
    /// is no longer slice regular; used as a negative control.
    pub fn with_wrong_unit(mut self, unit: ImaginaryUnit) -> Self {
        self.wrong_unit = Some(unit);
        self
    }

    pub fn domain1(&self) -> &SliceDomain {
        &self.stems.domain1
    }

    pub fn domain2(&self) -> &SliceDomain {
        &self.stems.domain2
    }

    /// Sampled stem-preserving certification of `Ω₂` against `Ω₁`.
    pub fn certify<R: Rng + ?Sized>(&self, trials: usize, rng: &mut R) -> StemPreservingReport {
        self.stems.certify(trials, rng)
    }

    fn cached_stem(&self, route: &PLPath) -> Result<StemVector> {
        let key = route.cache_key();
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(*v);
        }
        let v = self.stems.stem_at(route)?;
        let mut cache = self.cache.lock().expect("cache lock");
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(key, v);
        Ok(v)
    }

    /// `f*g(q) = f(q)·G₁ + 𝔦(q)·f(q)·G₂` with `(G₁, G₂) = 𝔉^g(q)`.
    pub fn star_eval(&self, q: &SlicePoint, route: Option<&PLPath>) -> Result<Quaternion> {
        if !self.domain1().contains(q) {
            return Err(Error::NotInDomain);
        }
        let pointwise = self.f.is_pointwise() && self.stems.f.is_pointwise();
        if q.is_real() && pointwise && self.wrong_unit.is_none() {
            return Ok(self.f.eval_point(q)? * self.stems.f.eval_point(q)?);
        }
        let route = self.stems.route(q, route)?;
        let fq = if self.f.is_pointwise() {
            self.f.eval_point(q)?
        } else {
            self.f.eval_along(&route, &routing_unit(q))?
        };
        let g = self.cached_stem(&route)?;
        let unit = match self.wrong_unit {
            Some(u) => u.as_quaternion(),
            None => frak_i(q),
        };
        Ok(fq * g.f1 + unit * fq * g.f2)
    }
}

impl<F: PathSlice, G: PathSlice> PathSlice for StarProduct<F, G> {
    fn dim(&self) -> Option<usize> {
        self.f.dim().or(self.stems.f.dim())
    }

    /// Value at `γ^I(1)`, routed along `γ` (or `γ̄` when `𝔦 = −I`).
    fn eval_along(&self, gamma: &PLPath, unit: &ImaginaryUnit) -> Result<Quaternion> {
        let q = lift(gamma, unit).endpoint();
        let same_side = routing_unit(&q).distance(unit) < 1.0;
        let route = if same_side { gamma.clone() } else { gamma.conjugate() };
        self.star_eval(&q, Some(&route))
    }

    fn eval_point(&self, q: &SlicePoint) -> Result<Quaternion> {
        self.star_eval(q, None)
    }

    fn is_pointwise(&self) -> bool {
        self.f.is_pointwise() && self.stems.f.is_pointwise()
    }
}

/// `Σ_m q^m Σ_{k+l=m} a_k b_l`: coefficient convolution.
pub fn star_poly_oracle(f: &PolyFunction, g: &PolyFunction) -> Result<PolyFunction> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    let mut terms = Vec::new();
    for s in f.terms() {
        for t in g.terms() {
            let k = s.k.iter().zip(&t.k).map(|(a, b)| a + b).collect();
            terms.push(PolyTerm { k, a: s.a * t.a });
        }
    }
    PolyFunction::new(f.dim(), terms)
}

/// Slice Cauchy–Riemann residuals of `q ↦ f*g(q)` at the given points,
/// each in its own slice. Stencils must stay in `Ω₁`.
pub fn verify_star_regularity<F: PathSlice, G: PathSlice>(
    prod: &StarProduct<F, G>,
    points: &[SlicePoint],
    h: f64,
    tolerance: f64,
) -> Result<CRReport> {
    let residuals: Vec<f64> = points
        .par_iter()
        .map(|q| {
            let unit = routing_unit(q);
            let z = q.complex_coords(&unit);
            if prod.domain1().distance_to_complement(q, &unit) <= h {
                return Err(Error::StencilLeavesDomain);
            }
            cr_residual_with(|p| prod.star_eval(p, None), &z, &unit, h)
        })
        .collect::<Result<_>>()?;
    Ok(CRReport::from_residuals(residuals, h, tolerance))
}

/// Worst sampled instance of a law.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawWitness {
    pub point: SlicePoint,
    pub deviation: f64,
}

/// Deviations of one identity over a sampling campaign.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub trials: usize,
    pub max_dev: f64,
    pub witnesses: Vec<LawWitness>,
}

const WITNESSES_KEPT: usize = 3;

impl LawReport {
    pub fn from_deviations(law: &str, samples: Vec<(SlicePoint, f64)>) -> Self {
        let trials = samples.len();
        let mut sorted = samples;
        sorted.sort_by(|a, b| b.1.total_cmp(&a.1));
        let max_dev = sorted.first().map_or(0.0, |s| s.1);
        let witnesses = sorted
            .into_iter()
            .take(WITNESSES_KEPT)
            .map(|(point, deviation)| LawWitness { point, deviation })
            .collect();
        Self { law: law.to_string(), trials, max_dev, witnesses }
    }

    pub fn pass(&self, tolerance: f64) -> bool {
        self.max_dev.is_finite() && self.max_dev <= tolerance
    }
}

/// `|a − b| / max(1, |b|)`.
pub fn relative_deviation(a: Quaternion, b: Quaternion) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Parameters of [`verify_algebra_laws`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LawCampaign {
    pub triples: usize,
    pub points: usize,
    pub max_degree: u32,
    pub dim: usize,
    pub scalar: f64,
}

impl Default for LawCampaign {
    fn default() -> Self {
        Self { triples: 200, points: 20, max_degree: 3, dim: 1, scalar: 2.5 }
    }
}

type Spec = SliceFunctionSpec;

fn product<'a>(f: &'a Spec, g: &'a Spec, domain: &SliceDomain, s: Sampling) -> StarProduct<&'a Spec, &'a Spec> {
    StarProduct::new(f, g, domain.clone(), domain.clone()).with_sampling(s)
}

/// Associativity, both distributive laws, the unit law and real-scalar
/// centrality of `*` on random polynomial triples over a self-stem-preserving
/// domain. Each triple is drawn from its own seed, so the result does not
/// depend on the thread count.
pub fn verify_algebra_laws(
    domain: &SliceDomain,
    campaign: LawCampaign,
    sampling: Sampling,
    seed: u64,
) -> Result<Vec<LawReport>> {
    let per_triple: Vec<[Vec<(SlicePoint, f64)>; 5]> = (0..campaign.triples)
        .into_par_iter()
        .map(|t| law_deviations(domain, campaign, sampling, crate::campaign::trial_seed(seed, t as u64)))
        .collect::<Result<_>>()?;
    let names = ["associativity", "left-distributivity", "right-distributivity", "unit", "scalar-centrality"];
    Ok(names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let all = per_triple.iter().flat_map(|d| d[i].iter().cloned()).collect();
            LawReport::from_deviations(name, all)
        })
        .collect())
}

fn law_deviations(
    domain: &SliceDomain,
    c: LawCampaign,
    s: Sampling,
    seed: u64,
) -> Result<[Vec<(SlicePoint, f64)>; 5]> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let spec = |p: PolyFunction| SliceFunctionSpec::poly(p, domain.clone());
    let f = spec(sample::poly(&mut rng, c.dim, c.max_degree));
    let g = spec(sample::poly(&mut rng, c.dim, c.max_degree));
    let h = spec(sample::poly(&mut rng, c.dim, c.max_degree));
    let one = spec(PolyFunction::constant(c.dim, Quaternion::ONE));
    let polys = |x: &Spec| x.as_poly().expect("polynomial").clone();
    let g_plus_h = spec(polys(&g).add(&polys(&h))?);
    let f_plus_g = spec(polys(&f).add(&polys(&g))?);
    let lf = spec(polys(&f).scale(c.scalar));
    let lg = spec(polys(&g).scale(c.scalar));

    let fg = product(&f, &g, domain, s);
    let gh = product(&g, &h, domain, s);
    let fg_h = StarProduct::new(&fg, &h, domain.clone(), domain.clone()).with_sampling(s);
    let f_gh = StarProduct::new(&f, &gh, domain.clone(), domain.clone()).with_sampling(s);
    let f_gph = product(&f, &g_plus_h, domain, s);
    let fh = product(&f, &h, domain, s);
    let fpg_h = product(&f_plus_g, &h, domain, s);
    let one_f = product(&one, &f, domain, s);
    let f_one = product(&f, &one, domain, s);
    let lf_g = product(&lf, &g, domain, s);
    let f_lg = product(&f, &lg, domain, s);

    let mut out: [Vec<(SlicePoint, f64)>; 5] = Default::default();
    for _ in 0..c.points {
        let q = sample::point_in_domain(&mut rng, domain, c.dim, 0.0).ok_or(Error::NotInDomain)?;
        let lhs = fg_h.star_eval(&q, None)?;
        let rhs = f_gh.star_eval(&q, None)?;
        out[0].push((q.clone(), relative_deviation(lhs, rhs)));

        let fq_gh = f_gph.star_eval(&q, None)?;
        let split = fg.star_eval(&q, None)? + fh.star_eval(&q, None)?;
        out[1].push((q.clone(), relative_deviation(fq_gh, split)));

        let fg_q = fpg_h.star_eval(&q, None)?;
        let split = fh.star_eval(&q, None)? + gh.star_eval(&q, None)?;
        out[2].push((q.clone(), relative_deviation(fg_q, split)));

        let fq = f.eval_point(&q)?;
        let unit = relative_deviation(one_f.star_eval(&q, None)?, fq)
            .max(relative_deviation(f_one.star_eval(&q, None)?, fq));
        out[3].push((q.clone(), unit));

        let scaled = fg.star_eval(&q, None)? * c.scalar;
        let centrality = relative_deviation(lf_g.star_eval(&q, None)?, scaled)
            .max(relative_deviation(f_lg.star_eval(&q, None)?, scaled));
        out[4].push((q, centrality));
    }
    Ok(out)
}

/// `(√ * √)(q) = q` at the given points of the slit plane.
pub fn star_monodromy_square(points: &[SlicePoint], sampling: Sampling) -> Result<LawReport> {
    let slit = SliceDomain::slit_plane();
    let sqrt = SliceFunctionSpec::sqrt(slit.clone());
    let prod = StarProduct::new(&sqrt, &sqrt, slit.clone(), slit).with_sampling(sampling);
    let samples = points
        .par_iter()
        .map(|q| Ok((q.clone(), relative_deviation(prod.star_eval(q, None)?, q.coords()[0]))))
        .collect::<Result<_>>()?;
    Ok(LawReport::from_deviations("sqrt-square", samples))
}
