//! Contact-number bound formulas and the spherical/volumetric quantities
//! they depend on: unit-ball volumes, spherical cap measures, the half-pi
//! spherical packing density, and the Rogers simplex density `sigma_d`.

use crate::special::{gamma, integer_root, integrate, planar_max_contacts};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("density estimate must lie in (0, 1], got {0}")]
    DensityOutOfRange(f64),
    #[error("the Hales constant is only valid in dimension 3")]
    HalesDimension,
    #[error("density estimate is for dimension {estimate}, bound asked for {requested}")]
    DimensionMismatch { estimate: usize, requested: usize },
    #[error("formula requires n > 1, got {0}")]
    NTooSmall(u64),
    #[error("formula requires dimension >= {required}, got {got}")]
    DimensionTooSmall { required: usize, got: usize },
    #[error("Monte Carlo needs at least {required} samples, got {got}")]
    TooFewSamples { required: u64, got: u64 },
    #[error("invalid cap: dimension {d}, angular radius {alpha}, sphere radius {r}")]
    BadCap { d: usize, alpha: f64, r: f64 },
}

/// Where an upper density estimate comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensitySource {
    RogersSigma,
    Hales,
    Custom,
}

impl DensitySource {
    pub fn as_str(&self) -> &'static str {
        match self {
            DensitySource::RogersSigma => "rogers",
            DensitySource::Hales => "hales",
            DensitySource::Custom => "custom",
        }
    }
}

/// An upper estimate for the truncated-Voronoi density in dimension `d`,
/// tagged by provenance. Values must lie in `(0, 1]`; the Hales constant
/// `0.7547` is only admissible at `d = 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityEstimate {
    pub dimension: usize,
    pub value: f64,
    pub source: DensitySource,
}

impl DensityEstimate {
    pub const HALES_3D: f64 = 0.7547;

    pub fn new(dimension: usize, value: f64, source: DensitySource) -> Result<Self, BoundsError> {
        if !(value > 0.0 && value <= 1.0) {
            return Err(BoundsError::DensityOutOfRange(value));
        }
        if source == DensitySource::Hales && (dimension != 3 || value != Self::HALES_3D) {
            return Err(BoundsError::HalesDimension);
        }
        Ok(DensityEstimate {
            dimension,
            value,
            source,
        })
    }

    pub fn hales() -> Self {
        DensityEstimate {
            dimension: 3,
            value: Self::HALES_3D,
            source: DensitySource::Hales,
        }
    }

    pub fn custom(dimension: usize, value: f64) -> Result<Self, BoundsError> {
        Self::new(dimension, value, DensitySource::Custom)
    }
}

/// A spherical cap on the sphere of radius `sphere_radius` in dimension `d`,
/// of angular radius `alpha` in `[0, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapSpec {
    pub dimension: usize,
    pub angular_radius: f64,
    pub sphere_radius: f64,
}

impl CapSpec {
    pub fn new(
        dimension: usize,
        angular_radius: f64,
        sphere_radius: f64,
    ) -> Result<Self, BoundsError> {
        let radius_ok = sphere_radius.is_finite() && sphere_radius > 0.0;
        if dimension < 2 || !(0.0..=PI).contains(&angular_radius) || !radius_ok {
            return Err(BoundsError::BadCap {
                d: dimension,
                alpha: angular_radius,
                r: sphere_radius,
            });
        }
        Ok(CapSpec {
            dimension,
            angular_radius,
            sphere_radius,
        })
    }
}

/// Identifier of a contact-number bound formula, as used in reports and on
/// the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFormula {
    /// Planar bound for arbitrary packings.
    Harborth,
    /// Planar bound for locally separable packings.
    PlanarLs,
    /// 3D bound for arbitrary packings.
    General3,
    /// 3D bound for totally separable packings.
    Ts3,
    /// 3D locally separable bound with the dodecahedral density constant.
    Ls3Hales,
    /// Locally separable bound in dimension d >= 3 with a pluggable density
    /// estimate.
    MainLs,
    /// Totally separable bound in dimension d >= 4.
    BeszszTs,
    /// Upper half of the integer-lattice estimate.
    LatticeUpper,
}

impl BoundFormula {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundFormula::Harborth => "harborth",
            BoundFormula::PlanarLs => "ls2",
            BoundFormula::General3 => "general3",
            BoundFormula::Ts3 => "ts3",
            BoundFormula::Ls3Hales => "ls3",
            BoundFormula::MainLs => "main",
            BoundFormula::BeszszTs => "beszsz",
            BoundFormula::LatticeUpper => "lattice-upper",
        }
    }
}

/// An evaluated contact-number bound. `value` is the floor of `pre_floor`;
/// when the pre-floor value sits within `1e-9` of an integer the report also
/// carries the other candidate floor, since a silent off-by-one is the main
/// numerical hazard of these formulas. Exactly representable cases (perfect
/// squares and powers) are evaluated in integer arithmetic and never flagged.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub formula: BoundFormula,
    pub n: u64,
    pub dimension: usize,
    pub delta: Option<f64>,
    pub pre_floor: f64,
    pub value: i64,
    pub boundary_alternate: Option<i64>,
}

const FLOOR_GUARD: f64 = 1e-9;

fn guarded_floor(pre: f64) -> (i64, Option<i64>) {
    let nearest = pre.round();
    let value = pre.floor() as i64;
    if (pre - nearest).abs() < FLOOR_GUARD {
        let alt = if value == nearest as i64 {
            value - 1
        } else {
            nearest as i64
        };
        (value, Some(alt))
    } else {
        (value, None)
    }
}

fn exact_report(
    formula: BoundFormula,
    n: u64,
    dimension: usize,
    delta: Option<f64>,
    value: i64,
) -> BoundReport {
    BoundReport {
        formula,
        n,
        dimension,
        delta,
        pre_floor: value as f64,
        value,
        boundary_alternate: None,
    }
}

fn float_report(
    formula: BoundFormula,
    n: u64,
    dimension: usize,
    delta: Option<f64>,
    pre: f64,
) -> BoundReport {
    let (value, boundary_alternate) = guarded_floor(pre);
    BoundReport {
        formula,
        n,
        dimension,
        delta,
        pre_floor: pre,
        value,
        boundary_alternate,
    }
}

/// Volume of the unit ball in dimension `d`: pi^(d/2) / Gamma(d/2 + 1).
pub fn unit_ball_volume(d: usize) -> f64 {
    PI.powf(d as f64 / 2.0) / gamma(d as f64 / 2.0 + 1.0)
}

/// Surface measure of a spherical cap:
/// `R^(d-1) * (d-1) * omega_(d-1) * integral_0^alpha sin^(d-2)`.
pub fn cap_surface_measure(cap: &CapSpec) -> f64 {
    let d = cap.dimension;
    let exponent = (d - 2) as f64;
    let integral = integrate(
        |theta| theta.sin().powf(exponent),
        0.0,
        cap.angular_radius,
        1e-10,
    );
    cap.sphere_radius.powi(d as i32 - 1) * (d as f64 - 1.0) * unit_ball_volume(d - 1) * integral
}

/// Density of the packing of pairwise tangent pi/4-caps centered at the
/// vertices of the regular spherical simplex of edge pi/2:
/// `2/omega_d` times the measure of a pi/4-cap on the unit sphere.
pub fn boroczky_half_pi_density(d: usize) -> f64 {
    let cap = CapSpec {
        dimension: d,
        angular_radius: PI / 4.0,
        sphere_radius: 1.0,
    };
    2.0 / unit_ball_volume(d) * cap_surface_measure(&cap)
}

/// A seeded Monte Carlo estimate of the Rogers simplex density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaEstimate {
    pub dimension: usize,
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl SigmaEstimate {
    pub fn to_density_estimate(&self) -> Result<DensityEstimate, BoundsError> {
        DensityEstimate::new(self.dimension, self.value, DensitySource::RogersSigma)
    }
}

pub const SIGMA_MIN_SAMPLES: u64 = 100_000;
const SIGMA_BLOCK: u64 = 1 << 16;

/// Fraction of a regular `d`-simplex of edge 2 covered by the unit balls
/// centered at its vertices, estimated by uniform sampling inside the
/// simplex.
///
/// Points are drawn through barycentric weights (normalized exponentials),
/// and the squared vertex distances reduce to `2(Q - w_i^2) + 2(1 - w_i)^2`
/// with `Q = sum w^2`, so a sample is covered iff `Q + 1 - 2*max_i(w_i) <= 1/2`.
/// Sampling is split into fixed blocks, each on its own seeded stream, so the
/// result is reproducible for a given `(seed, samples)` independent of how
/// many workers run the blocks.
pub fn rogers_sigma(d: usize, samples: u64, seed: u64) -> Result<SigmaEstimate, BoundsError> {
    if d < 2 {
        return Err(BoundsError::DimensionTooSmall {
            required: 2,
            got: d,
        });
    }
    if samples < SIGMA_MIN_SAMPLES {
        return Err(BoundsError::TooFewSamples {
            required: SIGMA_MIN_SAMPLES,
            got: samples,
        });
    }
    let blocks = samples.div_ceil(SIGMA_BLOCK);
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(block + 1);
            let count = SIGMA_BLOCK.min(samples - block * SIGMA_BLOCK);
            let mut weights = vec![0.0f64; d + 1];
            let mut hits = 0u64;
            for _ in 0..count {
                let mut sum = 0.0;
                for w in weights.iter_mut() {
                    let e = -(1.0 - rng.gen::<f64>()).ln();
                    *w = e;
                    sum += e;
                }
                let mut q = 0.0;
                let mut max_w = 0.0f64;
                for w in weights.iter() {
                    let w = *w / sum;
                    q += w * w;
                    max_w = max_w.max(w);
                }
                if q + 1.0 - 2.0 * max_w <= 0.5 {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let value = hits as f64 / samples as f64;
    let std_error = (value * (1.0 - value) / samples as f64).sqrt();
    Ok(SigmaEstimate {
        dimension: d,
        value,
        std_error,
        samples,
        seed,
    })
}

/// Contact-number bound for locally separable packings of `n` unit balls in
/// dimension `d >= 3`:
/// `floor(d*n - d^(-(d-3)/2) * delta^(-(d-1)/d) * n^((d-1)/d))`.
pub fn main_ls_bound(n: u64, d: usize, est: &DensityEstimate) -> Result<BoundReport, BoundsError> {
    if n <= 1 {
        return Err(BoundsError::NTooSmall(n));
    }
    if d < 3 {
        return Err(BoundsError::DimensionTooSmall {
            required: 3,
            got: d,
        });
    }
    if est.dimension != d {
        return Err(BoundsError::DimensionMismatch {
            estimate: est.dimension,
            requested: d,
        });
    }
    if !(est.value > 0.0 && est.value <= 1.0) {
        return Err(BoundsError::DensityOutOfRange(est.value));
    }
    let coefficient = main_ls_coefficient(d, est.value);
    let df = d as f64;
    let nf = n as f64;
    let pre = df * nf - coefficient * nf.powf((df - 1.0) / df);
    Ok(float_report(
        BoundFormula::MainLs,
        n,
        d,
        Some(est.value),
        pre,
    ))
}

/// The coefficient `d^(-(d-3)/2) * delta^(-(d-1)/d)` of the locally
/// separable bound.
pub fn main_ls_coefficient(d: usize, delta: f64) -> f64 {
    let df = d as f64;
    df.powf(-(df - 3.0) / 2.0) * delta.powf(-(df - 1.0) / df)
}

/// Contact-number bound for totally separable packings of `n` unit balls in
/// dimension `d >= 4`: `floor(d*n - 1/2 * d^(-(d-1)/2) * n^((d-1)/d))`.
pub fn beszsz_ts_bound(n: u64, d: usize) -> Result<BoundReport, BoundsError> {
    if n <= 1 {
        return Err(BoundsError::NTooSmall(n));
    }
    if d < 4 {
        return Err(BoundsError::DimensionTooSmall {
            required: 4,
            got: d,
        });
    }
    let df = d as f64;
    let nf = n as f64;
    let pre = df * nf - 0.5 * df.powf(-(df - 1.0) / 2.0) * nf.powf((df - 1.0) / df);
    Ok(float_report(BoundFormula::BeszszTs, n, d, None, pre))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanarKind {
    /// Arbitrary planar packings: floor(3n - sqrt(12n - 3)).
    Harborth,
    /// Locally separable planar packings: floor(2n - 2 sqrt(n)).
    Ls,
}

/// Planar contact-number bounds.
pub fn planar_bounds(n: u64, kind: PlanarKind) -> Result<BoundReport, BoundsError> {
    if n <= 1 {
        return Err(BoundsError::NTooSmall(n));
    }
    match kind {
        PlanarKind::Harborth => {
            let radicand = 12 * n - 3;
            let s = integer_root(radicand, 2);
            if s * s == radicand {
                Ok(exact_report(
                    BoundFormula::Harborth,
                    n,
                    2,
                    None,
                    (3 * n) as i64 - s as i64,
                ))
            } else {
                let pre = 3.0 * n as f64 - (radicand as f64).sqrt();
                Ok(float_report(BoundFormula::Harborth, n, 2, None, pre))
            }
        }
        PlanarKind::Ls => Ok(exact_report(
            BoundFormula::PlanarLs,
            n,
            2,
            None,
            planar_max_contacts(n) as i64,
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bounds3dKind {
    /// Arbitrary packings: floor(6n - 0.926 n^(2/3)).
    General,
    /// Totally separable packings: floor(3n - 1.346 n^(2/3)).
    Ts,
    /// Locally separable packings with the dodecahedral constant:
    /// floor(3n - 1.206 n^(2/3)).
    LsHales,
}

/// Contact-number bounds in dimension 3.
pub fn bounds_3d(n: u64, kind: Bounds3dKind) -> Result<BoundReport, BoundsError> {
    if n <= 1 {
        return Err(BoundsError::NTooSmall(n));
    }
    let nf = n as f64;
    let pow = nf.powf(2.0 / 3.0);
    let (formula, pre) = match kind {
        Bounds3dKind::General => (BoundFormula::General3, 6.0 * nf - 0.926 * pow),
        Bounds3dKind::Ts => (BoundFormula::Ts3, 3.0 * nf - 1.346 * pow),
        Bounds3dKind::LsHales => (BoundFormula::Ls3Hales, 3.0 * nf - 1.206 * pow),
    };
    Ok(float_report(formula, n, 3, None, pre))
}

/// Integer-lattice contact-number estimates: the attained lower bound
/// `d*N^d - d*N^(d-1)` for `N = floor(n^(1/d))`, and the upper bound
/// `floor(d*n - d*n^((d-1)/d))`. The two coincide exactly when `n = N^d`.
pub fn lattice_bounds(n: u64, d: usize) -> Result<(i64, BoundReport), BoundsError> {
    if n <= 1 {
        return Err(BoundsError::NTooSmall(n));
    }
    if d < 2 {
        return Err(BoundsError::DimensionTooSmall {
            required: 2,
            got: d,
        });
    }
    let big_n = integer_root(n, d as u32);
    let lower = d as i64 * (big_n.pow(d as u32) as i64 - big_n.pow(d as u32 - 1) as i64);
    let upper = if big_n.pow(d as u32) == n {
        exact_report(
            BoundFormula::LatticeUpper,
            n,
            d,
            None,
            d as i64 * (n as i64 - big_n.pow(d as u32 - 1) as i64),
        )
    } else {
        let df = d as f64;
        let nf = n as f64;
        let pre = df * nf - df * nf.powf((df - 1.0) / df);
        float_report(BoundFormula::LatticeUpper, n, d, None, pre)
    };
    Ok((lower, upper))
}

/// Numerically checks the coefficient chain
/// `d^(-(d-3)/2) * delta^(-(d-1)/d) > d^(-(d-3)/2) > 1/2 * d^(-(d-1)/2)`
/// that makes the locally separable bound stronger than the totally
/// separable one. Requires a density estimate strictly below 1.
pub fn strengthening_check(d: usize, est: &DensityEstimate) -> Result<bool, BoundsError> {
    if d < 3 {
        return Err(BoundsError::DimensionTooSmall {
            required: 3,
            got: d,
        });
    }
    if !(est.value > 0.0 && est.value < 1.0) {
        return Err(BoundsError::DensityOutOfRange(est.value));
    }
    let df = d as f64;
    let c1 = main_ls_coefficient(d, est.value);
    let c2 = df.powf(-(df - 3.0) / 2.0);
    let c3 = 0.5 * df.powf(-(df - 1.0) / 2.0);
    Ok(c1 > c2 && c2 > c3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-12);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-12);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-12);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-12);
        assert!((unit_ball_volume(5) - 8.0 * PI * PI / 15.0).abs() < 1e-12);
    }

    #[test]
    fn cap_measure_full_sphere() {
        for d in 2..=10 {
            let cap = CapSpec::new(d, PI, 2.5).unwrap();
            let expected = d as f64 * unit_ball_volume(d) * 2.5f64.powi(d as i32 - 1);
            let rel = (cap_surface_measure(&cap) - expected).abs() / expected;
            assert!(rel < 1e-9, "d = {d}: rel err {rel}");
        }
    }

    #[test]
    fn cap_measure_arc_length_in_2d() {
        for alpha in [0.3, 1.0, 2.0] {
            let cap = CapSpec::new(2, alpha, 3.0).unwrap();
            let expected = 2.0 * alpha * 3.0;
            assert!((cap_surface_measure(&cap) - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn cap_measure_quarter_cap_in_3d() {
        // Closed form 2 pi R^2 (1 - cos alpha).
        let cap = CapSpec::new(3, PI / 4.0, 1.0).unwrap();
        let expected = 2.0 * PI * (1.0 - 0.5f64.sqrt());
        assert!((cap_surface_measure(&cap) - expected).abs() < 1e-9);
        assert!((expected - 1.8403023690212202).abs() < 1e-12);
    }

    #[test]
    fn cap_measure_monotone_in_alpha() {
        for d in [2, 3, 5, 8] {
            let mut last = -1.0;
            for step in 0..=16 {
                let alpha = PI * step as f64 / 16.0;
                let cap = CapSpec::new(d, alpha, 1.0).unwrap();
                let v = cap_surface_measure(&cap);
                assert!(v >= last - 1e-12);
                last = v;
            }
        }
    }

    #[test]
    fn half_pi_density_values() {
        assert!((boroczky_half_pi_density(2) - 1.0).abs() < 1e-9);
        // d = 3 closed form: 3 (1 - sqrt(2)/2).
        let expected = 3.0 * (1.0 - 0.5f64.sqrt());
        assert!((boroczky_half_pi_density(3) - expected).abs() < 1e-9);
        assert!((expected - 0.8786796564403575).abs() < 1e-12);
    }

    #[test]
    fn half_pi_density_decreasing() {
        let mut last = f64::INFINITY;
        for d in 2..=24 {
            let v = boroczky_half_pi_density(d);
            assert!(v < last, "not decreasing at d = {d}");
            last = v;
        }
    }

    #[test]
    fn sigma_matches_planar_closed_form() {
        // sigma_2 = pi / (2 sqrt(3)): triangle of edge 2 has area sqrt(3),
        // covered by three 60-degree unit sectors of total area pi/2.
        let est = rogers_sigma(2, 400_000, 7).unwrap();
        let expected = PI / (2.0 * 3.0f64.sqrt());
        assert!(
            (est.value - expected).abs() < 3.0 * est.std_error,
            "estimate {} vs {expected} (se {})",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn sigma_is_deterministic_given_seed() {
        let a = rogers_sigma(3, 150_000, 42).unwrap();
        let b = rogers_sigma(3, 150_000, 42).unwrap();
        assert_eq!(a, b);
        let c = rogers_sigma(3, 150_000, 43).unwrap();
        assert_ne!(a.value, c.value);
    }

    #[test]
    fn sigma_rejects_small_sample_counts() {
        assert!(matches!(
            rogers_sigma(3, 10, 1),
            Err(BoundsError::TooFewSamples { .. })
        ));
    }

    #[test]
    fn hales_coefficient() {
        let c = main_ls_coefficient(3, DensityEstimate::HALES_3D);
        assert!((c - 1.206).abs() < 0.001, "coefficient {c}");
    }

    #[test]
    fn main_bound_at_1000() {
        let report = main_ls_bound(1000, 3, &DensityEstimate::hales()).unwrap();
        assert_eq!(report.value, 2879);
    }

    #[test]
    fn main_bound_degenerate_density_one() {
        let est = DensityEstimate::custom(3, 1.0).unwrap();
        for n in [2u64, 10, 100, 1000] {
            let report = main_ls_bound(n, 3, &est).unwrap();
            let nf = n as f64;
            let expected = (3.0 * nf - nf.powf(2.0 / 3.0)).floor() as i64;
            assert_eq!(report.value, expected);
        }
    }

    #[test]
    fn beszsz_small_case() {
        // d = 4, n = 16: 64 - 0.5 * 4^(-3/2) * 8 = 63.5.
        let report = beszsz_ts_bound(16, 4).unwrap();
        assert_eq!(report.value, 63);
        assert!(beszsz_ts_bound(10, 3).is_err());
    }

    #[test]
    fn bounds_below_dn() {
        for d in 4..=8 {
            for n in [10u64, 100, 1000] {
                let report = beszsz_ts_bound(n, d).unwrap();
                assert!(report.value < (d as i64) * (n as i64));
            }
        }
        for n in [10u64, 100, 1000] {
            let report = main_ls_bound(n, 3, &DensityEstimate::hales()).unwrap();
            assert!(report.value < 3 * n as i64);
        }
    }

    #[test]
    fn planar_values() {
        assert_eq!(planar_bounds(4, PlanarKind::Ls).unwrap().value, 4);
        assert_eq!(planar_bounds(7, PlanarKind::Ls).unwrap().value, 8);
        // 12 * 7 - 3 = 81 is a perfect square: exact path.
        let h = planar_bounds(7, PlanarKind::Harborth).unwrap();
        assert_eq!(h.value, 12);
        assert_eq!(h.boundary_alternate, None);
    }

    #[test]
    fn bounds_3d_values() {
        assert_eq!(bounds_3d(1000, Bounds3dKind::LsHales).unwrap().value, 2879);
        assert_eq!(bounds_3d(1000, Bounds3dKind::Ts).unwrap().value, 2865);
        for n in [2u64, 5, 17, 100, 999, 10_000] {
            let g = bounds_3d(n, Bounds3dKind::General).unwrap().value;
            let t = bounds_3d(n, Bounds3dKind::Ts).unwrap().value;
            assert!(g >= t);
        }
    }

    #[test]
    fn lattice_bound_values() {
        let (lower, upper) = lattice_bounds(9, 2).unwrap();
        assert_eq!((lower, upper.value), (12, 12));
        let (lower, upper) = lattice_bounds(27, 3).unwrap();
        assert_eq!((lower, upper.value), (54, 54));
        let (lower, upper) = lattice_bounds(10, 2).unwrap();
        assert_eq!((lower, upper.value), (12, 13));
    }

    #[test]
    fn lattice_lower_at_most_upper() {
        // Equality holds exactly at the perfect powers n = N^d.
        for d in 2..=5 {
            for n in 2..200u64 {
                let (lower, upper) = lattice_bounds(n, d).unwrap();
                assert!(lower <= upper.value, "n = {n}, d = {d}");
                let big_n = integer_root(n, d as u32);
                if big_n.pow(d as u32) == n {
                    assert_eq!(lower, upper.value, "n = {n}, d = {d}");
                } else {
                    assert!(lower < upper.value, "n = {n}, d = {d}");
                }
            }
        }
    }

    #[test]
    fn strengthening_at_3() {
        let est = DensityEstimate::hales();
        assert!(strengthening_check(3, &est).unwrap());
    }

    #[test]
    fn density_estimate_validation() {
        assert!(DensityEstimate::custom(3, 0.0).is_err());
        assert!(DensityEstimate::custom(3, 1.5).is_err());
        assert!(DensityEstimate::new(4, 0.7547, DensitySource::Hales).is_err());
    }
}
