//! Separability decisions for packings.
//!
//! In the plane the totally-separable property is decided exactly: for each
//! pair of disks we sweep all critical line directions (where the projected
//! interval structure of the disks can change) plus the midpoint of every arc
//! between consecutive critical directions, and solve the resulting 1D gap
//! problem. The locally-separable property runs the same decision on each
//! tangency star. In higher dimensions only the necessary conditions are
//! tested: pairwise-obtuse tangency directions and vertex degree at most `2d`.

use crate::geometry::{dot, ContactGraph, ContactStar, GeometryError, Packing};
use crate::tolerance::Tolerance;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SeparabilityError {
    #[error("operation requires dimension {required}, packing has {got}")]
    UnsupportedDimension { required: usize, got: usize },
    #[error("packing must contain at least {required} balls, got {got}")]
    TooFewBalls { required: usize, got: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// An oriented line `{x : <x, direction> = offset}` in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line2 {
    pub direction: [f64; 2],
    pub offset: f64,
}

impl Line2 {
    /// Signed distance of a point to the line.
    pub fn clearance(&self, point: &[f64]) -> f64 {
        point[0] * self.direction[0] + point[1] * self.direction[1] - self.offset
    }
}

/// A line witnessing that disks `pair.0` and `pair.1` can be separated while
/// missing every disk interior. `clearances[k]` is the signed distance of
/// center `k` to the line.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationCertificate {
    pub pair: (usize, usize),
    pub line: Line2,
    pub clearances: Vec<f64>,
}

impl SeparationCertificate {
    /// Re-validates the certificate against the packing it was issued for:
    /// the line misses every interior (`|clearance| >= r - tol.contact`) and
    /// the two disks of the pair lie on opposite sides.
    pub fn validate(&self, p: &Packing, tol: &Tolerance) -> bool {
        if p.dimension() != 2 || self.clearances.len() != p.len() {
            return false;
        }
        let norm = (self.line.direction[0].powi(2) + self.line.direction[1].powi(2)).sqrt();
        if (norm - 1.0).abs() > tol.angle {
            return false;
        }
        let r = p.radius();
        for (k, &stored) in self.clearances.iter().enumerate() {
            let actual = self.line.clearance(p.center(k));
            if (actual - stored).abs() > 1e-9 || actual.abs() < r - tol.contact {
                return false;
            }
        }
        let (i, j) = self.pair;
        if i >= p.len() || j >= p.len() || i == j {
            return false;
        }
        self.clearances[i] * self.clearances[j] < 0.0
    }
}

/// Outcome of the exact totally-separable decision.
#[derive(Debug, Clone, PartialEq)]
pub enum TsVerdict {
    /// Every pair admits a separating line; one certificate per unordered
    /// pair, lexicographic.
    Yes {
        certificates: Vec<SeparationCertificate>,
    },
    /// First pair (in lexicographic order) with no separating line.
    No { pair: (usize, usize) },
}

impl TsVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, TsVerdict::Yes { .. })
    }
}

/// Outcome of a locally-separable check.
#[derive(Debug, Clone, PartialEq)]
pub enum LsVerdict {
    /// Every tangency star is totally separable (exact planar decision).
    Yes,
    /// Conclusive failure with a witness.
    No(LsWitness),
    /// Obtuse mode only: the necessary conditions (pairwise-obtuse star
    /// directions, degree <= 2d) hold. Not a proof of local separability.
    NecessaryConditionsHold,
}

impl LsVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, LsVerdict::Yes)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LsWitness {
    /// Exact mode: the star of `center` contains a pair with no separator.
    StarInseparable { center: usize, pair: (usize, usize) },
    /// Two tangency directions at `center` under 90 degrees apart.
    AcuteDirections { center: usize, pair: (usize, usize) },
    /// Star degree exceeds the `2d` cap.
    DegreeExceeded {
        center: usize,
        degree: usize,
        max: usize,
    },
}

/// Which locally-separable decision to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsMode {
    /// Exact planar decision on every star (requires `d = 2`).
    Exact2d,
    /// Necessary-condition test in any dimension.
    Obtuse,
}

/// Outcome of the obtuse-star test on a single contact star.
#[derive(Debug, Clone, PartialEq)]
pub enum StarCheck {
    Pass,
    /// Positions into the star's direction list with inner product above the
    /// angular tolerance (angle below 90 degrees).
    AcutePair {
        a: usize,
        b: usize,
    },
    DegreeExceeded {
        degree: usize,
        max: usize,
    },
}

impl StarCheck {
    pub fn is_pass(&self) -> bool {
        matches!(self, StarCheck::Pass)
    }
}

/// Necessary condition for local separability of one star: at most `2d`
/// tangency directions, pairwise at angular distance at least pi/2.
pub fn obtuse_star_check(star: &ContactStar, dimension: usize, tol: &Tolerance) -> StarCheck {
    let max = 2 * dimension;
    if star.degree() > max {
        return StarCheck::DegreeExceeded {
            degree: star.degree(),
            max,
        };
    }
    for a in 0..star.directions.len() {
        for b in (a + 1)..star.directions.len() {
            if dot(&star.directions[a], &star.directions[b]) > tol.angle {
                return StarCheck::AcutePair { a, b };
            }
        }
    }
    StarCheck::Pass
}

/// Critical sweep directions for a planar packing, as angles in `[0, 2pi)`:
/// all `u` where some pair of centers projects to a difference in
/// `{-2r, 0, +2r}`. Between consecutive critical directions the combinatorial
/// structure of the 1D gap problem is constant.
///
/// The ratio is clamped within the contact tolerance so that the forced
/// direction of a tangent pair survives rounding of the center distance to
/// just under `2r`.
fn critical_angles(p: &Packing, tol: &Tolerance) -> Vec<f64> {
    let n = p.len();
    let two_r = 2.0 * p.radius();
    let mut angles = Vec::new();
    for k in 0..n {
        for l in (k + 1)..n {
            let ck = p.center(k);
            let cl = p.center(l);
            let vx = cl[0] - ck[0];
            let vy = cl[1] - ck[1];
            let rho = (vx * vx + vy * vy).sqrt();
            if rho == 0.0 {
                continue;
            }
            let phi = vy.atan2(vx);
            for target in [0.0, two_r, -two_r] {
                let ratio = target / rho;
                if ratio.abs() <= 1.0 + tol.contact {
                    let delta = ratio.clamp(-1.0, 1.0).acos();
                    for theta in [phi + delta, phi - delta] {
                        angles.push(theta.rem_euclid(2.0 * PI));
                    }
                }
            }
        }
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    angles
}

/// Critical angles plus the midpoint of every arc between consecutive ones.
/// Testing both arc endpoints and the midpoint makes the sweep complete up to
/// tolerance, including degenerate single-angle feasibility (tangent pairs).
fn candidate_angles(p: &Packing, tol: &Tolerance) -> Vec<f64> {
    let critical = critical_angles(p, tol);
    if critical.is_empty() {
        return vec![0.0, PI / 2.0];
    }
    let mut all = Vec::with_capacity(critical.len() * 2);
    for (idx, &theta) in critical.iter().enumerate() {
        let next = if idx + 1 < critical.len() {
            critical[idx + 1]
        } else {
            critical[0] + 2.0 * PI
        };
        all.push(theta);
        all.push((theta + next) / 2.0);
    }
    all
}

/// Best feasible offset along direction `u` for separating disks `i` and `j`,
/// or None. Returns `(offset, min_clearance)` maximizing the minimum
/// clearance among the candidate offsets tested (gap endpoints + midpoints).
fn best_offset_along(
    projections: &[f64],
    i: usize,
    j: usize,
    r: f64,
    contact_tol: f64,
) -> Option<(f64, f64)> {
    let (a_lo, a_hi) = if projections[i] <= projections[j] {
        (projections[i], projections[j])
    } else {
        (projections[j], projections[i])
    };
    // t must put i and j strictly on opposite sides while clearing both,
    // so t in [a_lo + r - tol, a_hi - r + tol].
    let lo = a_lo + r - contact_tol;
    let hi = a_hi - r + contact_tol;
    if lo > hi {
        return None;
    }
    // Forbidden open intervals, shrunk by the tolerance: a line at offset t
    // misses the interior of disk k iff |projections[k] - t| >= r - tol.
    let shrink = r - contact_tol;
    let mut intervals: Vec<(f64, f64)> = projections
        .iter()
        .map(|&a| (a - shrink, a + shrink))
        .filter(|&(s, e)| e > lo && s < hi)
        .collect();
    intervals.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // Feasible gaps inside [lo, hi] between merged forbidden intervals.
    let mut gaps: Vec<(f64, f64)> = Vec::new();
    let mut cursor = lo;
    for &(s, e) in &intervals {
        if s > cursor {
            gaps.push((cursor, s.min(hi)));
        }
        cursor = cursor.max(e);
        if cursor >= hi {
            break;
        }
    }
    if cursor < hi {
        gaps.push((cursor, hi));
    }

    let mut best: Option<(f64, f64)> = None;
    for (s, e) in gaps {
        for t in [s, (s + e) / 2.0, e] {
            let min_clearance = projections
                .iter()
                .map(|&a| (a - t).abs())
                .fold(f64::INFINITY, f64::min);
            if min_clearance < r - contact_tol {
                continue;
            }
            if (projections[i] - t) * (projections[j] - t) >= 0.0 {
                continue;
            }
            match best {
                Some((_, c)) if c >= min_clearance => {}
                _ => best = Some((t, min_clearance)),
            }
        }
    }
    best
}

fn separate_pair_with_angles(
    p: &Packing,
    i: usize,
    j: usize,
    angles: &[f64],
    tol: &Tolerance,
) -> Option<SeparationCertificate> {
    let r = p.radius();
    let n = p.len();
    let mut best: Option<(f64, Line2)> = None;
    let mut projections = vec![0.0; n];
    for &theta in angles {
        let u = [theta.cos(), theta.sin()];
        for (k, c) in p.centers().enumerate() {
            projections[k] = c[0] * u[0] + c[1] * u[1];
        }
        if let Some((t, clearance)) = best_offset_along(&projections, i, j, r, tol.contact) {
            let better = match best {
                Some((c, _)) => clearance > c,
                None => true,
            };
            if better {
                best = Some((
                    clearance,
                    Line2 {
                        direction: u,
                        offset: t,
                    },
                ));
            }
        }
    }
    best.map(|(_, line)| {
        let clearances = p.centers().map(|c| line.clearance(c)).collect();
        SeparationCertificate {
            pair: (i, j),
            line,
            clearances,
        }
    })
}

/// Searches for a line separating disks `i` and `j` while missing every disk
/// interior in the packing. Complete for `d = 2` up to the tolerance policy;
/// among the candidates tested, the returned line maximizes the minimum
/// clearance over all disks.
pub fn separate_pair(
    p: &Packing,
    i: usize,
    j: usize,
    tol: &Tolerance,
) -> Result<Option<SeparationCertificate>, SeparabilityError> {
    if p.dimension() != 2 {
        return Err(SeparabilityError::UnsupportedDimension {
            required: 2,
            got: p.dimension(),
        });
    }
    p.validate(tol)?;
    if i == j || i >= p.len() || j >= p.len() {
        return Err(GeometryError::IndexOutOfBounds {
            index: i.max(j),
            len: p.len(),
        }
        .into());
    }
    let angles = candidate_angles(p, tol);
    Ok(separate_pair_with_angles(p, i, j, &angles, tol))
}

/// Exact totally-separable decision for a planar packing: every unordered
/// pair must admit a separating line disjoint from all disk interiors.
pub fn is_ts(p: &Packing, tol: &Tolerance) -> Result<TsVerdict, SeparabilityError> {
    if p.dimension() != 2 {
        return Err(SeparabilityError::UnsupportedDimension {
            required: 2,
            got: p.dimension(),
        });
    }
    if p.len() < 2 {
        return Err(SeparabilityError::TooFewBalls {
            required: 2,
            got: p.len(),
        });
    }
    p.validate(tol)?;
    let angles = candidate_angles(p, tol);
    let n = p.len();
    let mut certificates = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            match separate_pair_with_angles(p, i, j, &angles, tol) {
                Some(cert) => certificates.push(cert),
                None => return Ok(TsVerdict::No { pair: (i, j) }),
            }
        }
    }
    Ok(TsVerdict::Yes { certificates })
}

/// Locally-separable check. `Exact2d` runs the exact totally-separable
/// decision on the sub-packing `{i} + T_i` of every center; `Obtuse` runs the
/// necessary-condition star test in any dimension, where a failure is a
/// conclusive negative but a pass is only `NecessaryConditionsHold`.
pub fn is_ls(
    p: &Packing,
    g: &ContactGraph,
    tol: &Tolerance,
    mode: LsMode,
) -> Result<LsVerdict, SeparabilityError> {
    match mode {
        LsMode::Exact2d => {
            if p.dimension() != 2 {
                return Err(SeparabilityError::UnsupportedDimension {
                    required: 2,
                    got: p.dimension(),
                });
            }
            for i in 0..p.len() {
                let neighbors = g.neighbors(i);
                if neighbors.is_empty() {
                    continue;
                }
                let mut indices = Vec::with_capacity(neighbors.len() + 1);
                indices.push(i);
                indices.extend_from_slice(neighbors);
                let sub = p.select(&indices)?;
                match is_ts(&sub, tol)? {
                    TsVerdict::Yes { .. } => {}
                    TsVerdict::No { pair } => {
                        return Ok(LsVerdict::No(LsWitness::StarInseparable {
                            center: i,
                            pair: (indices[pair.0], indices[pair.1]),
                        }));
                    }
                }
            }
            Ok(LsVerdict::Yes)
        }
        LsMode::Obtuse => {
            let d = p.dimension();
            for i in 0..p.len() {
                let star = g.star(p, i)?;
                match obtuse_star_check(&star, d, tol) {
                    StarCheck::Pass => {}
                    StarCheck::AcutePair { a, b } => {
                        return Ok(LsVerdict::No(LsWitness::AcuteDirections {
                            center: i,
                            pair: (star.neighbors[a], star.neighbors[b]),
                        }));
                    }
                    StarCheck::DegreeExceeded { degree, max } => {
                        return Ok(LsVerdict::No(LsWitness::DegreeExceeded {
                            center: i,
                            degree,
                            max,
                        }));
                    }
                }
            }
            Ok(LsVerdict::NecessaryConditionsHold)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn unit_disks(centers: &[[f64; 2]]) -> Packing {
        Packing::new(2, 0.5, centers.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn grid(n: usize) -> Packing {
        let mut centers = Vec::new();
        for x in 0..n {
            for y in 0..n {
                centers.push([x as f64, y as f64]);
            }
        }
        unit_disks(&centers)
    }

    #[test]
    fn tangent_pair_common_tangent() {
        let p = unit_disks(&[[0.0, 0.0], [1.0, 0.0]]);
        let cert = separate_pair(&p, 0, 1, &tol()).unwrap().unwrap();
        assert!((cert.line.direction[0].abs() - 1.0).abs() < 1e-9);
        assert!((cert.line.offset.abs() - 0.5).abs() < 1e-9);
        assert!(cert.validate(&p, &tol()));
    }

    #[test]
    fn collinear_outer_pair_separable() {
        // Oracle: by the 1D gap test along u = (1, 0), any t in {0.5, 1.5}
        // clears all three disks and splits the pair (0, 2).
        let p = unit_disks(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        let cert = separate_pair(&p, 0, 2, &tol()).unwrap().unwrap();
        assert!(cert.validate(&p, &tol()));
    }

    #[test]
    fn square_diagonal_pair() {
        // x = 0.5 is valid for the diagonal pair; the diagonal direction line
        // through the other two centers is not (clearance 0 there).
        let p = unit_disks(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]);
        let cert = separate_pair(&p, 0, 3, &tol()).unwrap().unwrap();
        assert!(cert.validate(&p, &tol()));
        let s = 0.5_f64.sqrt();
        let bad = SeparationCertificate {
            pair: (0, 3),
            line: Line2 {
                direction: [s, s],
                offset: s, // passes through centers 1 and 2
            },
            clearances: vec![-s, 0.0, 0.0, s],
        };
        assert!(!bad.validate(&p, &tol()));
    }

    #[test]
    fn sub_grids_are_ts() {
        for p in [grid(2), grid(3)] {
            match is_ts(&p, &tol()).unwrap() {
                TsVerdict::Yes { certificates } => {
                    let n = p.len();
                    assert_eq!(certificates.len(), n * (n - 1) / 2);
                    for cert in &certificates {
                        assert!(cert.validate(&p, &tol()));
                    }
                }
                TsVerdict::No { pair } => panic!("grid pair {pair:?} not separated"),
            }
        }
    }

    #[test]
    fn two_disks_always_ts() {
        let p = unit_disks(&[[0.3, -1.2], [2.0, 0.7]]);
        assert!(is_ts(&p, &tol()).unwrap().is_yes());
    }

    #[test]
    fn hexagonal_flower_is_not_ts() {
        let h = 3.0_f64.sqrt() / 2.0;
        let p = unit_disks(&[
            [0.0, 0.0],
            [1.0, 0.0],
            [0.5, h],
            [-0.5, h],
            [-1.0, 0.0],
            [-0.5, -h],
            [0.5, -h],
        ]);
        assert!(matches!(is_ts(&p, &tol()).unwrap(), TsVerdict::No { .. }));
    }

    #[test]
    fn obtuse_check_cross_polytope_d3() {
        let mut centers = vec![vec![0.0; 3]];
        for axis in 0..3 {
            for sign in [2.0, -2.0] {
                let mut c = vec![0.0; 3];
                c[axis] = sign;
                centers.push(c);
            }
        }
        let p = Packing::new(3, 1.0, centers).unwrap();
        let g = p.contact_graph(&tol()).unwrap();
        let star = g.star(&p, 0).unwrap();
        assert_eq!(star.degree(), 6);
        assert!(obtuse_star_check(&star, 3, &tol()).is_pass());
    }

    #[test]
    fn obtuse_check_rejects_sixty_degrees() {
        let star = ContactStar {
            center_index: 0,
            neighbors: vec![1, 2],
            directions: vec![vec![1.0, 0.0], vec![0.5, 3.0_f64.sqrt() / 2.0]],
        };
        assert_eq!(
            obtuse_star_check(&star, 2, &tol()),
            StarCheck::AcutePair { a: 0, b: 1 }
        );
    }

    #[test]
    fn obtuse_check_rejects_by_count() {
        // 2d + 1 directions drawn from the signed basis: pigeonhole forces a
        // repeat, but the count cap fires first.
        let d = 3;
        let mut directions = Vec::new();
        for axis in 0..d {
            for sign in [1.0, -1.0] {
                let mut u = vec![0.0; d];
                u[axis] = sign;
                directions.push(u);
            }
        }
        directions.push(vec![1.0, 0.0, 0.0]);
        let star = ContactStar {
            center_index: 0,
            neighbors: (1..=directions.len()).collect(),
            directions,
        };
        assert_eq!(
            obtuse_star_check(&star, d, &tol()),
            StarCheck::DegreeExceeded { degree: 7, max: 6 }
        );
    }

    #[test]
    fn flower_fails_ls_both_modes() {
        let h = 3.0_f64.sqrt() / 2.0;
        let p = unit_disks(&[
            [0.0, 0.0],
            [1.0, 0.0],
            [0.5, h],
            [-0.5, h],
            [-1.0, 0.0],
            [-0.5, -h],
            [0.5, -h],
        ]);
        let g = p.contact_graph(&tol()).unwrap();
        assert!(matches!(
            is_ls(&p, &g, &tol(), LsMode::Exact2d).unwrap(),
            LsVerdict::No(LsWitness::StarInseparable { .. })
        ));
        assert!(matches!(
            is_ls(&p, &g, &tol(), LsMode::Obtuse).unwrap(),
            LsVerdict::No(_)
        ));
    }

    #[test]
    fn grid_is_ls_both_modes() {
        let p = grid(3);
        let g = p.contact_graph(&tol()).unwrap();
        assert_eq!(
            is_ls(&p, &g, &tol(), LsMode::Exact2d).unwrap(),
            LsVerdict::Yes
        );
        assert_eq!(
            is_ls(&p, &g, &tol(), LsMode::Obtuse).unwrap(),
            LsVerdict::NecessaryConditionsHold
        );
    }

    #[test]
    fn exact_mode_rejects_higher_dimensions() {
        let p = Packing::new(3, 1.0, vec![vec![0.0; 3], vec![2.0, 0.0, 0.0]]).unwrap();
        let g = p.contact_graph(&tol()).unwrap();
        assert!(matches!(
            is_ls(&p, &g, &tol(), LsMode::Exact2d),
            Err(SeparabilityError::UnsupportedDimension { .. })
        ));
    }
}
