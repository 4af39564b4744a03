//! Generators for the extremal and witness configurations: basic polyominoes,
//! integer-grid packings, cross-polytope tangency stars, and the pentagon and
//! pendant augmentations of planar maximizers.
//!
//! All lattice constructions emit integer coordinates with radius 1/2 so that
//! tangency is exactly representable in binary floating point.

use crate::geometry::{canonical_lattice_form, dist, GeometryError, Packing};
use crate::tolerance::Tolerance;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConstructionError {
    #[error("value {got} below minimum {min}")]
    TooSmall { got: u64, min: u64 },
    #[error("dimension must be >= 2, got {0}")]
    BadDimension(usize),
    #[error(
        "corner {corner:?} does not expose two boundary sides with clearance for the pentagon"
    )]
    CornerBlocked { corner: (i64, i64) },
    #[error("grid of side {n_per_side} in dimension {d} exceeds the 1e7 center budget")]
    GridTooLarge { d: usize, n_per_side: u64 },
    #[error("no boundary point of the configuration has a free axis neighbor")]
    NoFreeNeighbor,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The unique decomposition `N = m(m + eps) + k` with `eps` in `{0, 1}` and
/// `0 <= k < m + eps`, which drives the basic-polyomino generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyominoSpec {
    pub n: u64,
    pub m: u64,
    pub epsilon: u64,
    pub k: u64,
}

/// Decomposes `N >= 4` as `m(m + eps) + k`.
pub fn decompose(n: u64) -> Result<PolyominoSpec, ConstructionError> {
    if n < 4 {
        return Err(ConstructionError::TooSmall { got: n, min: 4 });
    }
    let m = crate::special::integer_root(n, 2);
    let (epsilon, k) = if n < m * m + m {
        (0, n - m * m)
    } else {
        (1, n - m * m - m)
    };
    debug_assert!(k < m + epsilon);
    Ok(PolyominoSpec { n, m, epsilon, k })
}

/// A finite set of integer lattice points; the edges are exactly the
/// axis-aligned unit-distance pairs within the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeConfig {
    points: Vec<(i64, i64)>,
}

impl LatticeConfig {
    pub fn new(points: impl IntoIterator<Item = (i64, i64)>) -> Result<Self, GeometryError> {
        let set: BTreeSet<(i64, i64)> = points.into_iter().collect();
        if set.is_empty() {
            return Err(GeometryError::EmptyPointSet);
        }
        Ok(LatticeConfig {
            points: set.into_iter().collect(),
        })
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: (i64, i64)) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    /// Axis-aligned unit-distance pairs, lexicographic.
    pub fn edges(&self) -> Vec<((i64, i64), (i64, i64))> {
        let mut edges = Vec::new();
        for &(x, y) in &self.points {
            if self.contains((x + 1, y)) {
                edges.push(((x, y), (x + 1, y)));
            }
            if self.contains((x, y + 1)) {
                edges.push(((x, y), (x, y + 1)));
            }
        }
        edges
    }

    pub fn edge_count(&self) -> usize {
        self.points
            .iter()
            .map(|&(x, y)| {
                usize::from(self.contains((x + 1, y))) + usize::from(self.contains((x, y + 1)))
            })
            .sum()
    }

    pub fn canonical(&self) -> Vec<(i64, i64)> {
        canonical_lattice_form(&self.points).expect("non-empty by construction")
    }

    /// Unit-diameter disk packing (radius 1/2) on the lattice points.
    pub fn to_packing(&self) -> Packing {
        Packing::new(
            2,
            0.5,
            self.points
                .iter()
                .map(|&(x, y)| vec![x as f64, y as f64])
                .collect(),
        )
        .expect("lattice points form a valid packing")
    }
}

/// The basic polyomino spanned by `N >= 4` lattice points: the point grid of
/// an (m-1) x (m-1+eps) rectangle of unit squares, plus a vertical bar of
/// length k-1 attached flush to the right side with tops aligned, sharing the
/// top-right rectangle corner. `k = 1` degenerates to a single pendant point
/// joined by one horizontal unit edge; `k = 0` is the bare rectangle.
pub fn basic_polyomino(n: u64) -> Result<LatticeConfig, ConstructionError> {
    let spec = decompose(n)?;
    let cols = spec.m as i64; // rectangle point columns: x in 0..cols
    let rows = (spec.m + spec.epsilon) as i64; // point rows: y in 0..rows
    let top = rows - 1;
    let mut points = Vec::with_capacity(n as usize);
    for x in 0..cols {
        for y in 0..rows {
            points.push((x, y));
        }
    }
    for step in 0..spec.k as i64 {
        points.push((cols, top - step));
    }
    let config = LatticeConfig::new(points)?;
    debug_assert_eq!(config.len() as u64, n);
    Ok(config)
}

/// Closed-form edge count of `basic_polyomino(n)`, without materializing it.
pub fn basic_polyomino_edge_count(n: u64) -> Result<u64, ConstructionError> {
    let spec = decompose(n)?;
    let m = spec.m;
    let rows = spec.m + spec.epsilon;
    let rectangle = (m - 1) * rows + m * (rows - 1);
    let bar = if spec.k > 0 { 2 * spec.k - 1 } else { 0 };
    Ok(rectangle + bar)
}

/// `N^d` unit-diameter balls centered on `{0..N-1}^d`. Its contact graph has
/// exactly `d*N^d - d*N^(d-1)` edges.
pub fn grid_packing(d: usize, n_per_side: u64) -> Result<Packing, ConstructionError> {
    if d < 2 {
        return Err(ConstructionError::BadDimension(d));
    }
    if n_per_side < 1 {
        return Err(ConstructionError::TooSmall {
            got: n_per_side,
            min: 1,
        });
    }
    let total = (n_per_side as u128).pow(d as u32);
    if total > 10_000_000 {
        return Err(ConstructionError::GridTooLarge { d, n_per_side });
    }
    let mut centers = Vec::with_capacity(total as usize);
    for flat in 0..total as u64 {
        let mut remainder = flat;
        let mut c = vec![0.0; d];
        for axis in (0..d).rev() {
            c[axis] = (remainder % n_per_side) as f64;
            remainder /= n_per_side;
        }
        centers.push(c);
    }
    Ok(Packing::new(d, 0.5, centers).expect("grid is a valid packing"))
}

/// One unit ball at the origin touched by `2d` others at `+-2 e_i`: the
/// maximal totally separable tangency star in dimension `d`.
pub fn cross_polytope_star(d: usize) -> Result<Packing, ConstructionError> {
    if d < 2 {
        return Err(ConstructionError::BadDimension(d));
    }
    let mut centers = vec![vec![0.0; d]];
    for axis in 0..d {
        for sign in [2.0, -2.0] {
            let mut c = vec![0.0; d];
            c[axis] = sign;
            centers.push(c);
        }
    }
    Ok(Packing::new(d, 1.0, centers).expect("cross-polytope star is a valid packing"))
}

/// The mirror-symmetric equilateral pentagon with a right angle at the
/// lattice corner, in canonical position: vertices (0,0), (1,0),
/// (1+cos a, sin a), (sin a, 1+cos a), (0,1) where the apex angle `a` closes
/// the free side to unit length. All interior angles are at least pi/2.
#[derive(Debug, Clone, PartialEq)]
pub struct PentagonSolution {
    /// Boundary cycle, counterclockwise, starting at the corner vertex.
    pub vertices: [[f64; 2]; 5],
    /// The solved apex parameter `a` with cos a - sin a = 1/sqrt(2) - 1.
    pub apex_angle: f64,
}

/// Solves the symmetric equilateral pentagon. The closure condition
/// `|V3 - V4| = 1` reduces to `cos a - sin a = 1/sqrt(2) - 1`, whose root is
/// `a = arccos((1 - sqrt(2))/2) - pi/4`.
pub fn pentagon_solution() -> PentagonSolution {
    let apex_angle = ((1.0 - 2.0f64.sqrt()) / 2.0).acos() - std::f64::consts::FRAC_PI_4;
    let (sin_a, cos_a) = apex_angle.sin_cos();
    PentagonSolution {
        vertices: [
            [0.0, 0.0],
            [1.0, 0.0],
            [1.0 + cos_a, sin_a],
            [sin_a, 1.0 + cos_a],
            [0.0, 1.0],
        ],
        apex_angle,
    }
}

impl PentagonSolution {
    pub fn side_lengths(&self) -> [f64; 5] {
        let mut out = [0.0; 5];
        for (i, side) in out.iter_mut().enumerate() {
            *side = dist(&self.vertices[i], &self.vertices[(i + 1) % 5]);
        }
        out
    }

    pub fn interior_angles(&self) -> [f64; 5] {
        let mut out = [0.0; 5];
        for (i, angle) in out.iter_mut().enumerate() {
            let prev = self.vertices[(i + 4) % 5];
            let cur = self.vertices[i];
            let next = self.vertices[(i + 1) % 5];
            let a = [prev[0] - cur[0], prev[1] - cur[1]];
            let b = [next[0] - cur[0], next[1] - cur[1]];
            let cos = (a[0] * b[0] + a[1] * b[1])
                / ((a[0] * a[0] + a[1] * a[1]).sqrt() * (b[0] * b[0] + b[1] * b[1]).sqrt());
            *angle = cos.clamp(-1.0, 1.0).acos();
        }
        out
    }
}

/// Attaches the symmetric pentagon at a boundary corner of a lattice
/// configuration: the two lattice sides meeting at `corner` become the two
/// polyomino-adjacent pentagon sides, and the two non-lattice apex vertices
/// bulge into the free quadrant. The result gains 2 disks and exactly 3
/// contacts.
pub fn pentagon_augmented(
    base: &LatticeConfig,
    corner: (i64, i64),
    tol: &Tolerance,
) -> Result<Packing, ConstructionError> {
    let pentagon = pentagon_solution();
    let apex_d = pentagon.vertices[2];
    let apex_e = pentagon.vertices[3];
    for (sx, sy) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
        let side_a = (corner.0, corner.1 + sy);
        let side_c = (corner.0 + sx, corner.1);
        if !base.contains(side_a) || !base.contains(side_c) {
            continue;
        }
        let place = |v: [f64; 2]| {
            [
                corner.0 as f64 + sx as f64 * v[0],
                corner.1 as f64 + sy as f64 * v[1],
            ]
        };
        let d = place(apex_d);
        let e = place(apex_e);
        // The apexes must touch exactly their pentagon neighbors: tangency
        // with side_c resp. side_a is built in; every other disk must stay
        // strictly clear so the contact count rises by exactly 3.
        let mut ok = true;
        for &(px, py) in base.points() {
            let p = [px as f64, py as f64];
            for (apex, mate) in [(d, side_c), (e, side_a)] {
                if (px, py) == mate {
                    continue;
                }
                if dist(&p, &apex) < 1.0 + tol.contact {
                    ok = false;
                    break;
                }
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        let mut centers: Vec<Vec<f64>> = base
            .points()
            .iter()
            .map(|&(x, y)| vec![x as f64, y as f64])
            .collect();
        centers.push(d.to_vec());
        centers.push(e.to_vec());
        return Ok(Packing::new(2, 0.5, centers)?);
    }
    Err(ConstructionError::CornerBlocked { corner })
}

/// Adds one pendant lattice point joined by a single unit edge, at the first
/// free axis neighbor (in scan order) that touches exactly one existing
/// point.
pub fn pendant_augmented(base: &LatticeConfig) -> Result<LatticeConfig, ConstructionError> {
    for &(x, y) in base.points() {
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let q = (x + dx, y + dy);
            if base.contains(q) {
                continue;
            }
            let contacts = [(1, 0), (-1, 0), (0, 1), (0, -1)]
                .iter()
                .filter(|&&(ex, ey)| base.contains((q.0 + ex, q.1 + ey)))
                .count();
            if contacts == 1 {
                let mut points = base.points().to_vec();
                points.push(q);
                return Ok(LatticeConfig::new(points)?);
            }
        }
    }
    Err(ConstructionError::NoFreeNeighbor)
}

/// Six unit-diameter disks around a central one on the triangular lattice.
/// Adjacent tangency directions are 60 degrees apart, so this is the stock
/// witness of a packing that is not locally separable.
pub fn hexagonal_flower() -> Packing {
    let h = 3.0f64.sqrt() / 2.0;
    Packing::new(
        2,
        0.5,
        vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.5, h],
            vec![-0.5, h],
            vec![-1.0, 0.0],
            vec![-0.5, -h],
            vec![0.5, -h],
        ],
    )
    .expect("flower is a valid packing")
}

/// The exceptional 7-disk maximizer: two unit squares sharing exactly one
/// vertex. Pinned by the exhaustive lattice search (see the enumeration
/// tests), stored here in canonical form.
pub fn exceptional_seven() -> LatticeConfig {
    LatticeConfig::new([(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)])
        .expect("fixture is non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separability::{is_ts, obtuse_star_check, TsVerdict};
    use crate::special::planar_max_contacts;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    /// Brute-force oracle for the decomposition: scan all (m, eps, k).
    fn decompose_oracle(n: u64) -> Vec<(u64, u64, u64)> {
        let mut found = Vec::new();
        for m in 2..=n {
            for epsilon in 0..=1u64 {
                if m * (m + epsilon) > n {
                    continue;
                }
                let k = n - m * (m + epsilon);
                if k < m + epsilon {
                    found.push((m, epsilon, k));
                }
            }
        }
        found
    }

    #[test]
    fn decompose_small_values() {
        assert_eq!(decompose_oracle(4), vec![(2, 0, 0)]);
        assert_eq!(decompose_oracle(7), vec![(2, 1, 1)]);
        assert_eq!(decompose_oracle(12), vec![(3, 1, 0)]);
        for (n, expected) in [(4, (2, 0, 0)), (7, (2, 1, 1)), (12, (3, 1, 0))] {
            let spec = decompose(n).unwrap();
            assert_eq!((spec.m, spec.epsilon, spec.k), expected);
        }
    }

    #[test]
    fn decompose_is_unique_up_to_1000() {
        for n in 4..=1000 {
            let all = decompose_oracle(n);
            assert_eq!(all.len(), 1, "n = {n}: {all:?}");
            let spec = decompose(n).unwrap();
            assert_eq!((spec.m, spec.epsilon, spec.k), all[0]);
        }
    }

    #[test]
    fn decompose_rejects_small_n() {
        assert!(decompose(3).is_err());
    }

    #[test]
    fn basic_polyomino_hand_counts() {
        // Hand counts: N=5 square + pendant, N=9 full 3x3 grid, N=7 is a
        // 2x3 point rectangle + pendant.
        for (n, edges) in [(5u64, 5usize), (9, 12), (7, 8)] {
            let config = basic_polyomino(n).unwrap();
            assert_eq!(config.len() as u64, n);
            assert_eq!(config.edge_count(), edges, "n = {n}");
        }
    }

    #[test]
    fn basic_polyomino_matches_formula() {
        for n in 4..=400u64 {
            let config = basic_polyomino(n).unwrap();
            assert_eq!(config.len() as u64, n);
            assert_eq!(
                config.edge_count() as u64,
                planar_max_contacts(n),
                "n = {n}"
            );
            assert_eq!(
                basic_polyomino_edge_count(n).unwrap(),
                config.edge_count() as u64
            );
        }
    }

    #[test]
    fn grid_contact_counts() {
        for (d, n_side, expected) in [(2usize, 3u64, 12i64), (3, 2, 12), (2, 1, 0)] {
            let p = grid_packing(d, n_side).unwrap();
            let g = p.contact_graph(&tol()).unwrap();
            assert_eq!(g.contact_count() as i64, expected);
        }
    }

    #[test]
    fn cross_star_properties() {
        for d in 2..=4 {
            let p = cross_polytope_star(d).unwrap();
            assert_eq!(p.len(), 2 * d + 1);
            let g = p.contact_graph(&tol()).unwrap();
            assert_eq!(g.degree(0), 2 * d);
            let star = g.star(&p, 0).unwrap();
            assert!(obtuse_star_check(&star, d, &tol()).is_pass());
        }
    }

    #[test]
    fn pentagon_closure_and_angles() {
        let pent = pentagon_solution();
        // Closure equation, checked directly.
        let lhs = pent.apex_angle.cos() - pent.apex_angle.sin();
        let rhs = 0.5f64.sqrt() - 1.0;
        assert!((lhs - rhs).abs() < 1e-12);
        assert!((pent.apex_angle - 0.9940148537065969).abs() < 1e-12);
        assert!((pent.apex_angle.to_degrees() - 56.95286).abs() < 1e-3);
        for side in pent.side_lengths() {
            assert!((side - 1.0).abs() < 1e-9);
        }
        let angles = pent.interior_angles();
        for angle in angles {
            assert!(angle >= std::f64::consts::FRAC_PI_2 - 1e-9);
        }
        // Interior angle at (1, 0) is pi - a.
        let expected = std::f64::consts::PI - pent.apex_angle;
        assert!((angles[1] - expected).abs() < 1e-9);
        assert!((angles[1].to_degrees() - 123.047).abs() < 1e-2);
        let total: f64 = angles.iter().sum();
        assert!((total - 3.0 * std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn pentagon_augmented_13_disk_fixture() {
        let base = basic_polyomino(11).unwrap();
        assert_eq!(base.edge_count(), 15);
        let p = pentagon_augmented(&base, (2, 1), &tol()).unwrap();
        assert_eq!(p.len(), 13);
        let g = p.contact_graph(&tol()).unwrap();
        assert_eq!(g.contact_count(), 18);
        assert_eq!(planar_max_contacts(13), 18);
    }

    #[test]
    fn pentagon_augmentation_needs_clearance() {
        // Every corner of a bare square faces outward with both side
        // neighbors missing, so no quadrant qualifies.
        let square = basic_polyomino(4).unwrap();
        assert!(matches!(
            pentagon_augmented(&square, (0, 0), &tol()),
            Err(ConstructionError::CornerBlocked { .. })
        ));
    }

    #[test]
    fn pendant_counts() {
        let base = basic_polyomino(12).unwrap();
        assert_eq!(base.edge_count(), 17);
        let augmented = pendant_augmented(&base).unwrap();
        assert_eq!(augmented.len(), 13);
        assert_eq!(augmented.edge_count(), 18);
        assert_eq!(planar_max_contacts(13), 18);

        let square = basic_polyomino(4).unwrap();
        let augmented = pendant_augmented(&square).unwrap();
        assert_eq!(augmented.len(), 5);
        assert_eq!(augmented.edge_count(), 5);
        assert_eq!(
            augmented.canonical(),
            basic_polyomino(5).unwrap().canonical()
        );
    }

    #[test]
    fn pendant_augmented_stays_ts() {
        let augmented = pendant_augmented(&basic_polyomino(12).unwrap()).unwrap();
        let p = augmented.to_packing();
        assert!(matches!(is_ts(&p, &tol()).unwrap(), TsVerdict::Yes { .. }));
    }

    #[test]
    fn planar_cross_star_is_ts() {
        // The 2d-neighbor star is itself totally separable; every separating
        // line sits exactly at the tolerance boundary (clearance = r).
        let p = cross_polytope_star(2).unwrap();
        assert!(matches!(is_ts(&p, &tol()).unwrap(), TsVerdict::Yes { .. }));
    }

    #[test]
    fn generators_emit_valid_packings() {
        for n in [4u64, 5, 7, 11, 12] {
            assert!(basic_polyomino(n)
                .unwrap()
                .to_packing()
                .validate(&tol())
                .is_ok());
        }
        assert!(hexagonal_flower().validate(&tol()).is_ok());
        assert!(exceptional_seven().to_packing().validate(&tol()).is_ok());
        let pent = pentagon_augmented(&basic_polyomino(11).unwrap(), (2, 1), &tol()).unwrap();
        assert!(pent.validate(&tol()).is_ok());
    }

    #[test]
    fn exceptional_seven_shape() {
        let config = exceptional_seven();
        assert_eq!(config.len(), 7);
        assert_eq!(config.edge_count(), 8);
        assert_eq!(config.canonical(), config.points().to_vec());
    }
}
