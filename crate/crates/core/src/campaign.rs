//! Seeded verification campaigns and their JSON reports.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{
    find_route, radius_pathball, radius_point, radius_two, routing_unit, straight_route, Rect, Sampling,
    SliceDomain, DomainShape,
};
use crate::error::{Error, Result};
use crate::function::{PathSlice, PolyFunction, SliceFunction, SliceFunctionSpec};
use crate::path::PLPath;
use crate::quaternion::{icic_residual, ImaginaryUnit, Quaternion, SlicePoint};
use crate::sample;
use crate::star::{
    relative_deviation, star_monodromy_square, verify_algebra_laws, verify_star_regularity, LawCampaign,
    LawReport, LawWitness, StarProduct,
};
use crate::stem::{stem_holomorphy_check, stem_with_pair, StemQuery, DEFAULT_STEP};

/// Environment variable that overrides [`RunConfig::seed`].
pub const SEED_ENV: &str = "SLICEALG_SEED";

pub const SUITES: [&str; 6] =
    ["stem-consistency", "stem-holomorphy", "star-regularity", "algebra-laws", "monodromy", "radii-positivity"];

/// SplitMix64 finalizer applied to `seed ⊕ index`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn suite_seed(seed: u64, suite: &str) -> u64 {
    suite.bytes().fold(seed, |s, b| trial_seed(s, b as u64))
}

/// Generator for trial `index` of a run seeded with `seed`.
pub fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, index as u64))
}

/// Default tolerance per law.
pub fn default_tolerances() -> BTreeMap<String, f64> {
    [
        ("representation", 1e-9),
        ("pair-independence", 1e-8),
        ("conjugation", 1e-10),
        ("icic", 1e-12),
        ("stem-holomorphy", 1e-4),
        ("star-regularity", 1e-4),
        ("stem-preserving", 0.0),
        ("associativity", 1e-8),
        ("left-distributivity", 1e-8),
        ("right-distributivity", 1e-8),
        ("unit", 1e-10),
        ("scalar-centrality", 1e-10),
        ("sqrt-loop", 1e-10),
        ("log-loop", 1e-10),
        ("sqrt-square", 1e-9),
        ("radius-point", 0.0),
        ("radius-pathball", 0.0),
        ("radius-two", 0.0),
        ("union-lower-bound", 0.0),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

fn default_seed() -> u64 {
    20240601
}

fn default_trials() -> usize {
    20
}

fn default_sphere() -> usize {
    crate::quaternion::DEFAULT_SPHERE_SAMPLES
}

fn default_path() -> usize {
    crate::path::DEFAULT_PATH_SAMPLES
}

/// Everything that determines a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_sphere")]
    pub sphere_samples: usize,
    #[serde(default = "default_path")]
    pub path_samples: usize,
    #[serde(default = "default_trials")]
    pub trials: usize,
    /// Overrides of [`default_tolerances`], by law name.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    /// Extra functions with their domains, used by the stem and radius suites.
    #[serde(default)]
    pub fixtures: Vec<SliceFunctionSpec>,
    /// Suites to run; all when empty.
    #[serde(default)]
    pub suites: Vec<String>,
    /// Negative control: star products use a fixed unit instead of `𝔦(q)`.
    #[serde(default)]
    pub wrong_unit_star: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            sphere_samples: default_sphere(),
            path_samples: default_path(),
            trials: default_trials(),
            tolerances: BTreeMap::new(),
            fixtures: Vec::new(),
            suites: Vec::new(),
            wrong_unit_star: false,
        }
    }
}

impl RunConfig {
    /// Applies `SLICEALG_SEED` if set.
    pub fn apply_env(&mut self) -> Result<()> {
        if let Ok(v) = std::env::var(SEED_ENV) {
            self.seed = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("{SEED_ENV} is not an unsigned integer: {v:?}")))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.suites {
            if !SUITES.contains(&s.as_str()) {
                return Err(Error::InvalidSpec(format!("unknown suite {s:?}")));
            }
        }
        let known = default_tolerances();
        for (law, tol) in &self.tolerances {
            if !known.contains_key(law) {
                return Err(Error::InvalidSpec(format!("unknown law {law:?}")));
            }
            if tol.is_nan() || *tol < 0.0 {
                return Err(Error::InvalidSpec(format!("tolerance for {law} must be non-negative")));
            }
        }
        if self.sphere_samples < 2 || self.path_samples < 2 {
            return Err(Error::InvalidSpec("need at least two sphere and path samples".into()));
        }
        for f in &self.fixtures {
            f.domain.validate()?;
        }
        Ok(())
    }

    pub fn sampling(&self) -> Sampling {
        Sampling { sphere_samples: self.sphere_samples, path_samples: self.path_samples }
    }

    pub fn tolerance(&self, law: &str) -> f64 {
        self.tolerances.get(law).copied().unwrap_or_else(|| default_tolerances()[law])
    }

    fn wants(&self, suite: &str) -> bool {
        self.suites.is_empty() || self.suites.iter().any(|s| s == suite)
    }
}

/// One law checked against its tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawOutcome {
    pub law: String,
    pub trials: usize,
    pub max_dev: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub witnesses: Vec<LawWitness>,
}

impl LawOutcome {
    fn judge(report: LawReport, config: &RunConfig) -> Self {
        let tolerance = config.tolerance(&report.law);
        Self {
            pass: report.pass(tolerance),
            law: report.law,
            trials: report.trials,
            max_dev: report.max_dev,
            tolerance,
            witnesses: report.witnesses,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub laws: Vec<LawOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub seed: u64,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

/// Runs the selected suites on the current rayon pool.
pub fn run(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let mut suites = Vec::new();
    for name in SUITES {
        if !config.wants(name) {
            continue;
        }
        let seed = suite_seed(config.seed, name);
        let laws = match name {
            "stem-consistency" => stem_consistency(config, seed),
            "stem-holomorphy" => stem_holomorphy(config, seed),
            "star-regularity" => star_regularity(config, seed),
            "algebra-laws" => algebra_laws(config, seed),
            "monodromy" => monodromy(config, seed),
            _ => radii_positivity(config, seed),
        };
        suites.push(match laws {
            Ok(reports) => {
                let laws: Vec<LawOutcome> = reports.into_iter().map(|r| LawOutcome::judge(r, config)).collect();
                SuiteReport { suite: name.to_string(), pass: laws.iter().all(|l| l.pass), laws, error: None }
            }
            Err(e) => SuiteReport { suite: name.to_string(), pass: false, laws: Vec::new(), error: Some(e.to_string()) },
        });
    }
    Ok(RunReport { seed: config.seed, pass: suites.iter().all(|s| s.pass), suites })
}

/// A slice domain that is not axially symmetric: the unit ball joined to a
/// box in the slice `ℂ_j` that reaches out to `Re = 3`.
pub fn keyhole_domain() -> SliceDomain {
    SliceDomain::union(vec![
        SliceDomain::axial_ball(vec![0.0], 1.0),
        SliceDomain::slice_box(ImaginaryUnit::J, vec![Rect { re: [0.5, 3.0], im: [0.2, 1.5] }]),
    ])
}

fn indicator(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn origin(n: usize) -> Vec<f64> {
    vec![0.0; n]
}

fn par_trials<T, F>(count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    (0..count).into_par_iter().map(f).collect()
}

/// `|(1, K)F(γ) − f(γ^K(1))| / (1 + |f(γ^K(1))|)` with `F` read from `(I, J)`.
pub fn representation_deviation<F: PathSlice + ?Sized>(
    f: &F,
    gamma: &PLPath,
    pair: (&ImaginaryUnit, &ImaginaryUnit),
    k: &ImaginaryUnit,
) -> Result<f64> {
    let stem = stem_with_pair(f, gamma, pair.0, pair.1)?;
    let value = f.eval_along(gamma, k)?;
    Ok((stem.recombine(k) - value).norm() / (1.0 + value.norm()))
}

fn stem_consistency(config: &RunConfig, seed: u64) -> Result<Vec<LawReport>> {
    let s = config.sampling();
    let random = par_trials(config.trials, |t| {
        let mut rng = rng_for(seed, t);
        let n = 1 + t % 2;
        let f = SliceFunctionSpec::poly(sample::poly(&mut rng, n, 5), SliceDomain::full_space());
        let segments = rng.gen_range(1..=4);
        let gamma = sample::path_in_ball(&mut rng, &origin(n), 1.5, segments);
        let u = sample::separated_units(&mut rng, 5, 1e-2);
        let tag = SlicePoint::from_complex(gamma.endpoint(), u[2]);

        let representation = representation_deviation(&f, &gamma, (&u[0], &u[1]), &u[2])?;
        let a = stem_with_pair(&f, &gamma, &u[0], &u[1])?;
        let b = stem_with_pair(&f, &gamma, &u[3], &u[4])?;
        let pair = (a - b).norm() / b.norm().max(1.0);

        let c = sample::unit_quaternion(&mut rng) * rng.gen_range(0.1..3.0);
        let i = sample::unit(&mut rng).as_quaternion();
        let bar = stem_with_pair(&f, &gamma.conjugate(), &u[0], &u[1])?;
        let conj = relative_deviation(a.apply_row(c, i * c), bar.apply_row(c, -(i * c)));

        let cq = Quaternion::from_array([rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)]);
        let icic = icic_residual(cq, &u[0]) / (1.0 + cq.norm());
        Ok([(tag.clone(), representation), (tag.clone(), pair), (tag.clone(), conj), (tag, icic)])
    })?;

    let mut fixture_devs = Vec::new();
    for (fi, fixture) in config.fixtures.iter().enumerate() {
        if !matches!(fixture.function, SliceFunction::Poly(_)) {
            continue;
        }
        let n = fixture.dim().unwrap_or(1);
        let devs = par_trials(config.trials, |t| {
            let mut rng = rng_for(trial_seed(seed, 1 + fi as u64), t);
            let Some(q) = sample::point_in_domain(&mut rng, &fixture.domain, n, 0.0) else { return Ok(None) };
            let Some(gamma) = find_route(&fixture.domain, &q, s.path_samples) else { return Ok(None) };
            let lifted = gamma.clone();
            let units = crate::domain::slice_units_of(&fixture.domain, &lifted, s.sphere_samples, s.path_samples);
            let Ok(two) = radius_two(&fixture.domain, &gamma, s.sphere_samples, s.path_samples) else {
                return Ok(None);
            };
            let k = units[rng.gen_range(0..units.len())];
            let d = representation_deviation(fixture, &gamma, (&two.pair.0, &two.pair.1), &k)?;
            Ok(Some((q, d)))
        })?;
        fixture_devs.extend(devs.into_iter().flatten());
    }

    let mut columns: [Vec<(SlicePoint, f64)>; 4] = Default::default();
    for row in random {
        for (col, entry) in columns.iter_mut().zip(row) {
            col.push(entry);
        }
    }
    columns[0].extend(fixture_devs);
    let [rep, pair, conj, icic] = columns;
    Ok(vec![
        LawReport::from_deviations("representation", rep),
        LawReport::from_deviations("pair-independence", pair),
        LawReport::from_deviations("conjugation", conj),
        LawReport::from_deviations("icic", icic),
    ])
}

fn stem_holomorphy(config: &RunConfig, seed: u64) -> Result<Vec<LawReport>> {
    let s = config.sampling();
    let devs = par_trials(config.trials, |t| {
        let mut rng = rng_for(seed, t);
        let n = 1 + t % 2;
        let ball = SliceDomain::axial_ball(origin(n), 2.0);
        let g = SliceFunctionSpec::poly(sample::poly(&mut rng, n, 4), ball.clone());
        let segments = rng.gen_range(1..=4);
        let gamma = sample::path_in_ball(&mut rng, &origin(n), 1.5, segments);
        let query = StemQuery::new(g, ball.clone(), ball).with_sampling(s);
        let r = stem_holomorphy_check(&query, &gamma, DEFAULT_STEP, config.tolerance("stem-holomorphy"))?;
        Ok((SlicePoint::from_complex(gamma.endpoint(), ImaginaryUnit::I), r.max_residual))
    })?;
    Ok(vec![LawReport::from_deviations("stem-holomorphy", devs)])
}

/// Points of `Ω₁` whose whole stencil can be reached by the default route.
fn routable_points<R: Rng + ?Sized>(
    rng: &mut R,
    domain: &SliceDomain,
    count: usize,
    h: f64,
    margin: f64,
    s: Sampling,
) -> Vec<SlicePoint> {
    let mut out = Vec::new();
    for _ in 0..50 * count {
        if out.len() == count {
            break;
        }
        let Some(q) = sample::point_in_domain(rng, domain, 1, margin.max(2.0 * h)) else { break };
        let unit = routing_unit(&q);
        let z = q.complex_coords(&unit)[0];
        let ok = [Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, -h)]
            .iter()
            .all(|d| straight_route(domain, &SlicePoint::from_complex(&[z + d], unit), s.path_samples).is_ok());
        if ok && !q.is_real() {
            out.push(q);
        }
    }
    out
}

fn star_regularity(config: &RunConfig, seed: u64) -> Result<Vec<LawReport>> {
    let s = config.sampling();
    let h = DEFAULT_STEP;
    let tol = config.tolerance("star-regularity");
    let full = SliceDomain::full_space();
    let wrong = |p: StarProduct<SliceFunctionSpec, SliceFunctionSpec>| {
        if config.wrong_unit_star {
            p.with_wrong_unit(ImaginaryUnit::new(1.0, 2.0, 2.0).expect("non-zero"))
        } else {
            p
        }
    };
    let rows = par_trials(config.trials + 1, |t| {
        let mut rng = rng_for(seed, t);
        let (f, g, d1, margin) = if t == config.trials {
            let slit = SliceDomain::slit_plane();
            let f = SliceFunctionSpec::sqrt(slit.clone());
            let g = SliceFunctionSpec::poly(sample::poly(&mut rng, 1, 3), full.clone());
            (f, g, slit, 0.1)
        } else {
            let d1 = if t % 2 == 0 { SliceDomain::axial_ball(vec![0.0], 1.0) } else { keyhole_domain() };
            let f = SliceFunctionSpec::poly(sample::poly(&mut rng, 1, 2), d1.clone());
            let g = SliceFunctionSpec::poly(sample::poly(&mut rng, 1, 2), full.clone());
            (f, g, d1, 0.0)
        };
        let prod = wrong(StarProduct::new(f, g, d1.clone(), full.clone()).with_sampling(s));
        let points = routable_points(&mut rng, &d1, 5, h, margin, s);
        let report = verify_star_regularity(&prod, &points, h, tol)?;
        Ok(points.into_iter().zip(report.per_point).collect::<Vec<_>>())
    })?;

    let mut cert_rng = rng_for(seed, config.trials + 1);
    let mut certs = Vec::new();
    for d1 in [SliceDomain::axial_ball(vec![0.0], 1.0), keyhole_domain(), SliceDomain::slit_plane()] {
        let query = StemQuery::new(SliceFunctionSpec::poly(PolyFunction::constant(1, Quaternion::ONE), full.clone()), d1, full.clone())
            .with_sampling(s);
        let r = query.certify(config.trials.max(1), &mut cert_rng);
        certs.push((SlicePoint::real(&[0.0]), indicator(r.pass)));
    }
    Ok(vec![
        LawReport::from_deviations("star-regularity", rows.into_iter().flatten().collect()),
        LawReport::from_deviations("stem-preserving", certs),
    ])
}

fn algebra_laws(config: &RunConfig, seed: u64) -> Result<Vec<LawReport>> {
    let campaign = LawCampaign { triples: config.trials, points: 5, ..LawCampaign::default() };
    verify_algebra_laws(&SliceDomain::axial_ball(vec![0.0], 2.0), campaign, config.sampling(), seed)
}

/// Closed polygon winding once around 0, starting and ending at `ρ > 0`.
pub fn loop_about_origin<R: Rng + ?Sized>(rng: &mut R, vertices: usize) -> PLPath {
    let rho = rng.gen_range(0.3..2.0);
    let mut waypoints = vec![vec![Complex64::new(rho, 0.0)]];
    for k in 1..vertices {
        let angle = TAU * (k as f64 + rng.gen_range(-0.3..0.3)) / vertices as f64;
        waypoints.push(vec![Complex64::from_polar(rng.gen_range(0.3..2.0), angle)]);
    }
    waypoints.push(vec![Complex64::new(rho, 0.0)]);
    PLPath::new(waypoints).expect("real start")
}

fn monodromy(config: &RunConfig, seed: u64) -> Result<Vec<LawReport>> {
    let full = SliceDomain::full_space();
    let sqrt = SliceFunctionSpec::sqrt(full.clone());
    let log = SliceFunctionSpec::log(full);
    let loops = par_trials(config.trials, |t| {
        let mut rng = rng_for(seed, t);
        let vertices = rng.gen_range(4..=9);
        let gamma = loop_about_origin(&mut rng, vertices);
        let unit = sample::unit(&mut rng);
        let rho = gamma.start()[0].re;
        let tag = SlicePoint::from_complex(gamma.endpoint(), unit);
        let s = sqrt.eval_along(&gamma, &unit)?;
        let l = log.eval_along(&gamma, &unit)?;
        let sqrt_dev = relative_deviation(s, Quaternion::real(-rho.sqrt()));
        let log_dev = relative_deviation(l, unit.embed(Complex64::new(rho.ln(), TAU)));
        Ok([(tag.clone(), sqrt_dev), (tag, log_dev)])
    })?;
    let mut rng = rng_for(seed, config.trials);
    let slit = SliceDomain::slit_plane();
    let points: Vec<SlicePoint> = (0..config.trials * 5)
        .filter_map(|_| sample::point_in_domain(&mut rng, &slit, 1, 1e-3))
        .collect();
    let square = star_monodromy_square(&points, config.sampling())?;
    let (sq, lg): (Vec<_>, Vec<_>) = loops.into_iter().map(|[a, b]| (a, b)).unzip();
    Ok(vec![
        LawReport::from_deviations("sqrt-loop", sq),
        LawReport::from_deviations("log-loop", lg),
        square,
    ])
}

/// Domains checked by the radius suite besides the configured fixtures.
pub fn radius_fixtures() -> Vec<SliceDomain> {
    vec![
        SliceDomain::axial_ball(vec![0.0], 2.0),
        SliceDomain::axial_ball(vec![1.0, -1.0], 1.5),
        keyhole_domain(),
        SliceDomain::union(vec![SliceDomain::axial_ball(vec![0.0], 1.0), SliceDomain::axial_ball(vec![1.5], 1.0)]),
        SliceDomain::slit_plane(),
    ]
}

fn radii_positivity(config: &RunConfig, seed: u64) -> Result<Vec<LawReport>> {
    let s = config.sampling();
    let mut domains = radius_fixtures();
    domains.extend(config.fixtures.iter().map(|f| f.domain.clone()));
    let mut cols: [Vec<(SlicePoint, f64)>; 4] = Default::default();
    for (di, domain) in domains.iter().enumerate() {
        let n = domain.dim().unwrap_or(1);
        let rows = par_trials(config.trials, |t| {
            let mut rng = rng_for(trial_seed(seed, di as u64), t);
            let Some(q) = sample::point_in_domain(&mut rng, domain, n, 0.0) else { return Ok(None) };
            let Some(gamma) = find_route(domain, &q, s.path_samples) else { return Ok(None) };
            let unit = routing_unit(&q);
            let r_point = radius_point(domain, &gamma, &unit)?;
            let r_ball = radius_pathball(domain, &gamma, s.sphere_samples, s.path_samples)?;
            let r_two = match radius_two(domain, &gamma, s.sphere_samples, s.path_samples) {
                Ok(r) => Some(r.radius),
                Err(Error::StemPairUnavailable { .. }) => None,
                Err(e) => return Err(e),
            };
            let bound = match &domain.shape {
                DomainShape::Union { members } => {
                    let end = crate::path::lift(&gamma, &unit).endpoint();
                    let best = members
                        .iter()
                        .filter(|m| m.contains(&end))
                        .map(|m| m.distance_to_complement(&end, &unit))
                        .fold(0.0, f64::max);
                    Some(r_point >= best)
                }
                _ => None,
            };
            Ok(Some((q, r_point, r_ball, r_two, bound)))
        })?;
        for (q, r_point, r_ball, r_two, bound) in rows.into_iter().flatten() {
            cols[0].push((q.clone(), indicator(r_point > 0.0)));
            cols[1].push((q.clone(), indicator(r_ball > 0.0)));
            if let Some(r) = r_two {
                cols[2].push((q.clone(), indicator(r > 0.0)));
            }
            if let Some(ok) = bound {
                cols[3].push((q, indicator(ok)));
            }
        }
    }
    let [a, b, c, d] = cols;
    Ok(vec![
        LawReport::from_deviations("radius-point", a),
        LawReport::from_deviations("radius-pathball", b),
        LawReport::from_deviations("radius-two", c),
        LawReport::from_deviations("union-lower-bound", d),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig { trials: 4, sphere_samples: 16, path_samples: 64, ..RunConfig::default() }
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds: std::collections::BTreeSet<u64> = (0..1000).map(|i| trial_seed(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }

    #[test]
    fn small_run_passes_and_is_reproducible() {
        let a = run(&small()).unwrap();
        assert!(a.pass, "{}", serde_json::to_string_pretty(&a).unwrap());
        let b = run(&small()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn impossible_tolerance_fails_honestly() {
        let mut c = small();
        c.suites = vec!["stem-holomorphy".into()];
        c.tolerances.insert("stem-holomorphy".into(), 1e-15);
        let r = run(&c).unwrap();
        assert!(!r.pass);
        assert!(r.suites[0].laws[0].max_dev > 1e-15);
    }

    #[test]
    fn wrong_unit_control_fails() {
        let mut c = small();
        c.suites = vec!["star-regularity".into()];
        c.wrong_unit_star = true;
        let r = run(&c).unwrap();
        assert!(!r.pass);
        assert!(r.suites[0].laws[0].max_dev > 1e-2);
    }

    #[test]
    fn config_schema_is_strict() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"seed": 1, "bogus": 2}"#).is_err());
        let c: RunConfig = serde_json::from_str(r#"{"suites": ["nope"]}"#).unwrap();
        assert!(c.validate().is_err());
        let c: RunConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(c, RunConfig::default());
    }
}
