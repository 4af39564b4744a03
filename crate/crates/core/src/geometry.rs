//! Packings of congruent balls, tangency detection, contact graphs and
//! contact stars in any dimension `d >= 2`.
//!
//! All types here are immutable values after construction and every operation
//! is a pure function of its inputs, so they can be evaluated in parallel
//! without shared state. Vertex order is always input order and all outputs
//! are deterministic.

use crate::tolerance::Tolerance;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("packing has no centers")]
    Empty,
    #[error("dimension must be >= 2, got {0}")]
    BadDimension(usize),
    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("center {index} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("centers {i} and {j} overlap: distance {distance} < 2r")]
    Overlap { i: usize, j: usize, distance: f64 },
    #[error("center index {index} out of bounds for {len} centers")]
    IndexOutOfBounds { index: usize, len: usize },
    #[error("empty point set")]
    EmptyPointSet,
}

/// A packing of `n` congruent balls: dimension, common radius and centers.
///
/// Radius `1/2` with integer centers is the unit-diameter convention used by
/// the planar machinery; radius `1` is the unit-ball convention. Coordinates
/// are stored flat, `dimension` per center, in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct Packing {
    dimension: usize,
    radius: f64,
    coords: Vec<f64>,
}

impl Packing {
    pub fn new(
        dimension: usize,
        radius: f64,
        centers: Vec<Vec<f64>>,
    ) -> Result<Self, GeometryError> {
        if dimension < 2 {
            return Err(GeometryError::BadDimension(dimension));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeometryError::BadRadius(radius));
        }
        if centers.is_empty() {
            return Err(GeometryError::Empty);
        }
        let mut coords = Vec::with_capacity(centers.len() * dimension);
        for (index, c) in centers.iter().enumerate() {
            if c.len() != dimension {
                return Err(GeometryError::DimensionMismatch {
                    index,
                    expected: dimension,
                    found: c.len(),
                });
            }
            coords.extend_from_slice(c);
        }
        Ok(Packing {
            dimension,
            radius,
            coords,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dimension
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn center(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn centers(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dimension)
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        dist(self.center(i), self.center(j))
    }

    /// Sub-packing built from the given center indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Packing, GeometryError> {
        let mut coords = Vec::with_capacity(indices.len() * self.dimension);
        for &i in indices {
            if i >= self.len() {
                return Err(GeometryError::IndexOutOfBounds {
                    index: i,
                    len: self.len(),
                });
            }
            coords.extend_from_slice(self.center(i));
        }
        if coords.is_empty() {
            return Err(GeometryError::Empty);
        }
        Ok(Packing {
            dimension: self.dimension,
            radius: self.radius,
            coords,
        })
    }

    /// Checks the packing condition: every pairwise center distance is at
    /// least `2r - tol.contact`. Returns the first offending pair otherwise.
    pub fn validate(&self, tol: &Tolerance) -> Result<(), GeometryError> {
        let n = self.len();
        let min = 2.0 * self.radius - tol.contact;
        for i in 0..n {
            for j in (i + 1)..n {
                let distance = self.distance(i, j);
                if distance < min {
                    return Err(GeometryError::Overlap { i, j, distance });
                }
            }
        }
        Ok(())
    }

    /// Tangency graph: an edge wherever `|dist - 2r| <= tol.contact`.
    ///
    /// Fails with the offending pair if the packing itself is invalid.
    pub fn contact_graph(&self, tol: &Tolerance) -> Result<ContactGraph, GeometryError> {
        self.validate(tol)?;
        let n = self.len();
        let target = 2.0 * self.radius;
        let mut edges = Vec::new();
        let mut adjacency = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if (self.distance(i, j) - target).abs() <= tol.contact {
                    edges.push((i, j));
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        Ok(ContactGraph {
            n,
            edges,
            adjacency,
        })
    }
}

/// Contact graph of a packing. Edge count is the contact number `c(P)`;
/// `adjacency[i]` is the tangency neighbor set of center `i`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl ContactGraph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// The contact number `c(P)`.
    pub fn contact_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as ordered pairs `(i, j)` with `i < j`, lexicographic.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Unit tangency directions from center `i` to each of its neighbors.
    pub fn star(&self, p: &Packing, i: usize) -> Result<ContactStar, GeometryError> {
        if i >= self.n {
            return Err(GeometryError::IndexOutOfBounds {
                index: i,
                len: self.n,
            });
        }
        let d = p.dimension();
        let ci = p.center(i);
        let mut directions = Vec::with_capacity(self.adjacency[i].len());
        for &j in &self.adjacency[i] {
            let cj = p.center(j);
            let mut u = vec![0.0; d];
            for k in 0..d {
                u[k] = cj[k] - ci[k];
            }
            let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in &mut u {
                *x /= norm;
            }
            directions.push(u);
        }
        Ok(ContactStar {
            center_index: i,
            neighbors: self.adjacency[i].clone(),
            directions,
        })
    }
}

/// The tangency directions `u_ij = (c_j - c_i)/|c_j - c_i|` of one center,
/// in ascending neighbor order.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactStar {
    pub center_index: usize,
    pub neighbors: Vec<usize>,
    pub directions: Vec<Vec<f64>>,
}

impl ContactStar {
    pub fn degree(&self) -> usize {
        self.directions.len()
    }
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A point map of the square lattice.
pub type LatticeIsometry = fn(i64, i64) -> (i64, i64);

/// The 8 isometries of the square lattice fixing the origin.
const DIHEDRAL: [LatticeIsometry; 8] = [
    |x, y| (x, y),
    |x, y| (-y, x),
    |x, y| (-x, -y),
    |x, y| (y, -x),
    |x, y| (x, -y),
    |x, y| (-x, y),
    |x, y| (y, x),
    |x, y| (-y, -x),
];

/// Canonical representative of an integer point set under the 8 lattice
/// isometries plus translation: the lexicographically least among the
/// min-corner translates of all dihedral images. Idempotent, and isometric
/// inputs map to identical outputs.
pub fn canonical_lattice_form(points: &[(i64, i64)]) -> Result<Vec<(i64, i64)>, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyPointSet);
    }
    let mut best: Option<Vec<(i64, i64)>> = None;
    for transform in DIHEDRAL {
        let mut image: Vec<(i64, i64)> = points.iter().map(|&(x, y)| transform(x, y)).collect();
        let min_x = image.iter().map(|p| p.0).min().unwrap();
        let min_y = image.iter().map(|p| p.1).min().unwrap();
        for p in &mut image {
            p.0 -= min_x;
            p.1 -= min_y;
        }
        image.sort_unstable();
        image.dedup();
        match &best {
            Some(b) if *b <= image => {}
            _ => best = Some(image),
        }
    }
    Ok(best.unwrap())
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

    #[test]
    fn tangent_pair_is_valid() {
        let p = unit_disks(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(p.validate(&tol()), Ok(()));
    }

    #[test]
    fn overlapping_pair_reports_violation() {
        let p = unit_disks(&[[0.0, 0.0], [0.95, 0.0]]);
        match p.validate(&tol()) {
            Err(GeometryError::Overlap {
                i: 0,
                j: 1,
                distance,
            }) => {
                assert!((distance - 0.95).abs() < 1e-12)
            }
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn grid_3x3_is_valid() {
        // Oracle: direct distance check over all pairs of integer points.
        let mut centers = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                centers.push([x as f64, y as f64]);
            }
        }
        for (a, ca) in centers.iter().enumerate() {
            for cb in centers.iter().skip(a + 1) {
                let d = dist(ca, cb);
                assert!(d >= 1.0 - 1e-12);
            }
        }
        let p = unit_disks(&centers);
        assert_eq!(p.validate(&tol()), Ok(()));
    }

    #[test]
    fn ragged_centers_rejected() {
        let err = Packing::new(2, 0.5, vec![vec![0.0, 0.0], vec![1.0]]).unwrap_err();
        assert_eq!(
            err,
            GeometryError::DimensionMismatch {
                index: 1,
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn contact_graph_edge_cases() {
        let p = unit_disks(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(p.contact_graph(&tol()).unwrap().contact_count(), 1);
        let p = unit_disks(&[[0.0, 0.0], [1.5, 0.0]]);
        assert_eq!(p.contact_graph(&tol()).unwrap().contact_count(), 0);
    }

    #[test]
    fn grid_3x3_has_12_contacts() {
        let mut centers = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                centers.push([x as f64, y as f64]);
            }
        }
        let p = unit_disks(&centers);
        let g = p.contact_graph(&tol()).unwrap();
        assert_eq!(g.contact_count(), 12);
    }

    #[test]
    fn contact_graph_on_invalid_packing_fails() {
        let p = unit_disks(&[[0.0, 0.0], [0.5, 0.0]]);
        assert!(matches!(
            p.contact_graph(&tol()),
            Err(GeometryError::Overlap { .. })
        ));
    }

    #[test]
    fn star_single_neighbor() {
        let p = unit_disks(&[[0.0, 0.0], [1.0, 0.0]]);
        let g = p.contact_graph(&tol()).unwrap();
        let s = g.star(&p, 0).unwrap();
        assert_eq!(s.directions, vec![vec![1.0, 0.0]]);
    }

    #[test]
    fn star_cross_polytope_d2() {
        let p = unit_disks(&[[0.0, 0.0], [1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]);
        let g = p.contact_graph(&tol()).unwrap();
        let s = g.star(&p, 0).unwrap();
        assert_eq!(s.degree(), 4);
        for a in 0..4 {
            for b in (a + 1)..4 {
                let ip = dot(&s.directions[a], &s.directions[b]);
                assert!(
                    ip.abs() < 1e-12 || (ip + 1.0).abs() < 1e-12,
                    "inner product {ip} not in {{0, -1}}"
                );
            }
        }
    }

    #[test]
    fn star_isolated_vertex_is_empty() {
        let p = unit_disks(&[[0.0, 0.0], [5.0, 0.0]]);
        let g = p.contact_graph(&tol()).unwrap();
        assert_eq!(g.star(&p, 0).unwrap().degree(), 0);
    }

    #[test]
    fn canonical_form_translates_to_origin() {
        assert_eq!(canonical_lattice_form(&[(5, 5)]).unwrap(), vec![(0, 0)]);
    }

    #[test]
    fn canonical_form_identifies_rotations() {
        let l = [(0, 0), (0, 1), (1, 0)];
        let rotated: Vec<(i64, i64)> = l.iter().map(|&(x, y)| (-y, x)).collect();
        assert_eq!(
            canonical_lattice_form(&l).unwrap(),
            canonical_lattice_form(&rotated).unwrap()
        );
        assert_eq!(
            canonical_lattice_form(&[(0, 0), (1, 0)]).unwrap(),
            canonical_lattice_form(&[(0, 0), (0, 1)]).unwrap()
        );
    }

    #[test]
    fn canonical_form_empty_rejected() {
        assert_eq!(
            canonical_lattice_form(&[]),
            Err(GeometryError::EmptyPointSet)
        );
    }
}
