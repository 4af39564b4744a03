//! Brute-force oracles and classification for planar contact graphs:
//! face extraction from straight-line embeddings, exhaustive max-contact
//! search over lattice configurations, and the classifier for maximizers.

use crate::constructions::{exceptional_seven, LatticeConfig};
use crate::geometry::{canonical_lattice_form, ContactGraph, GeometryError, Packing};
use crate::separability::{is_ls, LsMode, LsVerdict, SeparabilityError};
use crate::special::planar_max_contacts;
use crate::tolerance::Tolerance;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EnumerationError {
    #[error("operation requires a planar packing, got dimension {0}")]
    UnsupportedDimension(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("inconsistent embedding: {0}")]
    Structural(String),
    #[error("search requires 2 <= n, got {0}")]
    NTooSmall(usize),
    #[error(
        "budget exceeded after completing size {completed_n} \
         (max contacts there: {max_edges_at_completed}, {forms_seen} canonical forms seen)"
    )]
    BudgetExceeded {
        completed_n: usize,
        max_edges_at_completed: usize,
        forms_seen: u64,
    },
    #[error("exceptional-configuration search expected one candidate, found {candidates}")]
    AmbiguousPin { candidates: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Separability(#[from] SeparabilityError),
}

/// A straight-line plane embedding: vertex coordinates, edges, and the
/// rotation system (counterclockwise cyclic neighbor order per vertex)
/// derived from the coordinates.
#[derive(Debug, Clone)]
pub struct EmbeddedGraph {
    coords: Vec<[f64; 2]>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    rotation: Vec<Vec<usize>>,
}

impl EmbeddedGraph {
    pub fn new(
        coords: Vec<[f64; 2]>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, EnumerationError> {
        let n = coords.len();
        let mut normalized: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a == b || a >= n || b >= n {
                return Err(EnumerationError::Structural(format!(
                    "bad edge ({a}, {b}) on {n} vertices"
                )));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &normalized {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut rotation = Vec::with_capacity(n);
        for (v, neighbors) in adjacency.iter().enumerate() {
            let mut order = neighbors.clone();
            order.sort_by(|&a, &b| {
                let angle =
                    |u: usize| (coords[u][1] - coords[v][1]).atan2(coords[u][0] - coords[v][0]);
                angle(a).partial_cmp(&angle(b)).unwrap().then(a.cmp(&b))
            });
            rotation.push(order);
        }
        Ok(EmbeddedGraph {
            coords,
            edges: normalized,
            adjacency,
            rotation,
        })
    }

    pub fn from_packing(p: &Packing, g: &ContactGraph) -> Result<Self, EnumerationError> {
        if p.dimension() != 2 {
            return Err(EnumerationError::UnsupportedDimension(p.dimension()));
        }
        let coords = p.centers().map(|c| [c[0], c[1]]).collect();
        Self::new(coords, g.edges().to_vec())
    }

    pub fn from_lattice(config: &LatticeConfig) -> Self {
        let coords: Vec<[f64; 2]> = config
            .points()
            .iter()
            .map(|&(x, y)| [x as f64, y as f64])
            .collect();
        let index: HashMap<(i64, i64), usize> = config
            .points()
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i))
            .collect();
        let edges = config
            .edges()
            .into_iter()
            .map(|(a, b)| (index[&a], index[&b]))
            .collect();
        Self::new(coords, edges).expect("lattice graphs embed consistently")
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn coords(&self) -> &[[f64; 2]] {
        &self.coords
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.coords.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// The embedding with vertex `v` and its incident edges removed.
    pub fn remove_vertex(&self, v: usize) -> EmbeddedGraph {
        let mut coords = Vec::with_capacity(self.coords.len() - 1);
        let mut remap = vec![usize::MAX; self.coords.len()];
        for (i, &c) in self.coords.iter().enumerate() {
            if i != v {
                remap[i] = coords.len();
                coords.push(c);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (remap[a], remap[b]))
            .collect();
        EmbeddedGraph::new(coords, edges).expect("subgraph of a consistent embedding")
    }
}

/// One face of an embedded graph: the closed vertex walk tracing its
/// boundary (a bridge edge appears twice) and the walk's signed area.
#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub cycle: Vec<usize>,
    pub signed_area: f64,
}

impl Face {
    /// Number of sides of the face (directed edges on its boundary walk).
    pub fn side_count(&self) -> usize {
        self.cycle.len()
    }
}

/// The face structure of a connected straight-line embedding.
#[derive(Debug, Clone)]
pub struct FaceCensus {
    pub internal: Vec<Face>,
    pub external: Face,
    /// Internal faces by side count.
    pub f_counts: BTreeMap<usize, usize>,
    /// Distinct vertices on the external walk.
    pub external_vertex_count: usize,
    /// Those vertices grouped by graph degree.
    pub external_degree_counts: BTreeMap<usize, usize>,
}

impl FaceCensus {
    pub fn internal_face_count(&self) -> usize {
        self.internal.len()
    }
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn segments_cross(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    let eps = 1e-12;
    d1 * d2 < -eps && d3 * d4 < -eps
}

/// Traces all faces of a connected embedding through its rotation system.
/// The external face is the unique one with non-positive signed area; the
/// Euler relation `V - E + F = 2` and absence of edge crossings are enforced.
pub fn faces(g: &EmbeddedGraph) -> Result<FaceCensus, EnumerationError> {
    if !g.is_connected() {
        return Err(EnumerationError::Disconnected);
    }
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        for &(c, d) in g.edges.iter().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if segments_cross(g.coords[a], g.coords[b], g.coords[c], g.coords[d]) {
                return Err(EnumerationError::Structural(format!(
                    "edges ({a},{b}) and ({c},{d}) cross"
                )));
            }
        }
    }

    let n = g.vertex_count();
    let position: Vec<HashMap<usize, usize>> = g
        .rotation
        .iter()
        .map(|order| order.iter().enumerate().map(|(i, &u)| (u, i)).collect())
        .collect();

    let mut all_faces = Vec::new();
    if g.edges.is_empty() {
        if n != 1 {
            return Err(EnumerationError::Disconnected);
        }
        all_faces.push(Face {
            cycle: vec![0],
            signed_area: 0.0,
        });
    } else {
        let mut visited: HashSet<(usize, usize)> = HashSet::new();
        for &(a, b) in &g.edges {
            for start in [(a, b), (b, a)] {
                if visited.contains(&start) {
                    continue;
                }
                let mut walk = Vec::new();
                let mut area = 0.0;
                let mut current = start;
                loop {
                    visited.insert(current);
                    let (u, v) = current;
                    walk.push(u);
                    area += g.coords[u][0] * g.coords[v][1] - g.coords[v][0] * g.coords[u][1];
                    let order = &g.rotation[v];
                    let pos = position[v][&u];
                    let next = order[(pos + order.len() - 1) % order.len()];
                    current = (v, next);
                    if current == start {
                        break;
                    }
                    if walk.len() > 4 * g.edges.len() {
                        return Err(EnumerationError::Structural(
                            "face walk failed to close".into(),
                        ));
                    }
                }
                all_faces.push(Face {
                    cycle: walk,
                    signed_area: area / 2.0,
                });
            }
        }
    }

    let f = all_faces.len();
    if n + f != g.edge_count() + 2 {
        return Err(EnumerationError::Structural(format!(
            "Euler relation violated: V={n}, E={}, F={f}",
            g.edge_count()
        )));
    }

    let external_index = all_faces
        .iter()
        .enumerate()
        .min_by(|(_, x), (_, y)| x.signed_area.partial_cmp(&y.signed_area).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let external = all_faces.swap_remove(external_index);
    if external.signed_area > 1e-9 {
        return Err(EnumerationError::Structural(
            "no clockwise outer boundary found".into(),
        ));
    }
    for face in &all_faces {
        if face.signed_area <= 1e-9 {
            return Err(EnumerationError::Structural(
                "multiple non-positive-area faces".into(),
            ));
        }
    }
    all_faces.sort_by(|a, b| a.cycle.cmp(&b.cycle));

    let mut f_counts = BTreeMap::new();
    for face in &all_faces {
        *f_counts.entry(face.side_count()).or_insert(0) += 1;
    }
    let distinct: HashSet<usize> = external.cycle.iter().copied().collect();
    let mut external_degree_counts = BTreeMap::new();
    for &v in &distinct {
        *external_degree_counts.entry(g.degree(v)).or_insert(0) += 1;
    }
    Ok(FaceCensus {
        internal: all_faces,
        external,
        f_counts,
        external_vertex_count: distinct.len(),
        external_degree_counts,
    })
}

/// True iff the connected graph on at least 3 vertices has no cut vertex.
pub fn two_connected(g: &EmbeddedGraph) -> bool {
    let n = g.vertex_count();
    if n < 3 || !g.is_connected() {
        return false;
    }
    // Iterative DFS lowpoint computation.
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut timer = 0;
    let mut root_children = 0;
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    disc[0] = timer;
    low[0] = timer;
    timer += 1;
    while let Some(top) = stack.last_mut() {
        let (v, next) = *top;
        if next < g.adjacency[v].len() {
            top.1 += 1;
            let w = g.adjacency[v][next];
            if disc[w] == usize::MAX {
                parent[w] = v;
                if v == 0 {
                    root_children += 1;
                }
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                stack.push((w, 0));
            } else if w != parent[v] {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(u, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if u != 0 && low[v] >= disc[u] {
                    return false;
                }
            }
        }
    }
    if root_children > 1 {
        return false;
    }
    disc.iter().all(|&d| d != usize::MAX)
}

/// The Euler face relation for extremal graphs: the number of internal faces
/// must equal `c - n + 1`.
pub fn euler_face_check(census: &FaceCensus, n: usize, contacts: usize) -> bool {
    census.internal_face_count() + n == contacts + 1
}

/// Resource budget for the exhaustive lattice search.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub max_seconds: f64,
    pub max_forms: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_seconds: 60.0,
            max_forms: 10_000_000,
        }
    }
}

/// Result of the exhaustive search over connected n-point lattice
/// configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSearchResult {
    pub n: usize,
    /// Exact maximum contact count over all n-point subsets of the lattice.
    pub max_edges: usize,
    /// All connected maximizers, in canonical form, sorted.
    pub witnesses: Vec<Vec<(i64, i64)>>,
    /// Connected configurations up to lattice isometry, by size (index k
    /// holds the count for k points; entries 0 and 1 are 0 and 1).
    pub class_counts: Vec<usize>,
    pub forms_seen: u64,
}

fn lattice_edge_count(points: &[(i64, i64)]) -> usize {
    points
        .iter()
        .map(|&(x, y)| {
            usize::from(points.binary_search(&(x + 1, y)).is_ok())
                + usize::from(points.binary_search(&(x, y + 1)).is_ok())
        })
        .sum()
}

/// Exact maximum contact count over all n-point subsets of the integer
/// lattice, with every connected maximizer (up to lattice isometry) as a
/// witness.
///
/// Connected configurations are enumerated by canonical-form BFS: grow every
/// shape by one 4-neighbor, deduplicate with the canonical form. Disconnected
/// configurations are covered by combining per-size connected maxima over all
/// splits; the combined value never beats the connected maximum, but it is
/// computed rather than assumed. The budget is enforced per completed size,
/// so partial failures are reproducible.
pub fn max_contact_lattice(
    n: usize,
    budget: &SearchBudget,
) -> Result<LatticeSearchResult, EnumerationError> {
    if n < 2 {
        return Err(EnumerationError::NTooSmall(n));
    }
    let start = Instant::now();
    let forms = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let mut frontier: Vec<Vec<(i64, i64)>> = vec![vec![(0, 0)]];
    let mut best_connected: Vec<usize> = vec![0; n + 1]; // by size, sizes 0 and 1 are 0
    let mut class_counts: Vec<usize> = vec![0; n + 1];
    class_counts[1] = 1;
    let over_budget = |completed: usize, best: &[usize]| EnumerationError::BudgetExceeded {
        completed_n: completed,
        max_edges_at_completed: best[completed],
        forms_seen: forms.load(Ordering::Relaxed),
    };

    for size in 1..n {
        let expanded: Vec<HashSet<Vec<(i64, i64)>>> = frontier
            .par_chunks(256.max(frontier.len() / 64))
            .map(|chunk| {
                let mut local: HashSet<Vec<(i64, i64)>> = HashSet::new();
                for shape in chunk {
                    if abort.load(Ordering::Relaxed) {
                        break;
                    }
                    for &(x, y) in shape {
                        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                            let q = (x + dx, y + dy);
                            if shape.binary_search(&q).is_ok() {
                                continue;
                            }
                            let mut grown = shape.clone();
                            grown.push(q);
                            let canonical =
                                canonical_lattice_form(&grown).expect("non-empty shape");
                            local.insert(canonical);
                        }
                    }
                    let seen = forms.fetch_add(4 * shape.len() as u64, Ordering::Relaxed);
                    if seen > budget.max_forms || start.elapsed().as_secs_f64() > budget.max_seconds
                    {
                        abort.store(true, Ordering::Relaxed);
                        break;
                    }
                }
                local
            })
            .collect();
        if abort.load(Ordering::Relaxed) {
            return Err(over_budget(size, &best_connected));
        }
        let mut merged: HashSet<Vec<(i64, i64)>> = HashSet::new();
        for local in expanded {
            merged.extend(local);
        }
        let mut next: Vec<Vec<(i64, i64)>> = merged.into_iter().collect();
        next.sort_unstable();
        best_connected[size + 1] = next
            .iter()
            .map(|s| lattice_edge_count(s))
            .max()
            .unwrap_or(0);
        class_counts[size + 1] = next.len();
        frontier = next;
    }

    // Best over disconnected splits, from the per-size connected maxima.
    let mut best_any = vec![0usize; n + 1];
    for size in 2..=n {
        let mut best = best_connected[size];
        for a in 1..size {
            best = best.max(best_any[a] + best_any[size - a]);
        }
        best_any[size] = best;
    }
    let max_edges = best_any[n];
    let witnesses: Vec<Vec<(i64, i64)>> = frontier
        .into_iter()
        .filter(|shape| lattice_edge_count(shape) == max_edges)
        .collect();
    Ok(LatticeSearchResult {
        n,
        max_edges,
        witnesses,
        class_counts,
        forms_seen: forms.load(Ordering::Relaxed),
    })
}

/// Crystallization label of a planar maximizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    /// 2-connected, all internal faces unit squares forming an edge-to-edge
    /// polyomino.
    CaseI,
    /// As case I except exactly one pentagon face against the outer boundary.
    CaseII,
    /// One pendant vertex whose removal leaves a case-I graph.
    CaseIII,
    /// The 7-disk pair of corner-sharing squares.
    ExceptionalSeven,
    Other,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::CaseI => "case_i",
            CaseLabel::CaseII => "case_ii",
            CaseLabel::CaseIII => "case_iii",
            CaseLabel::ExceptionalSeven => "exceptional_7",
            CaseLabel::Other => "other",
        }
    }
}

/// Evidence recorded with a classification.
#[derive(Debug, Clone, PartialEq)]
pub enum Evidence {
    Polyomino { square_faces: usize },
    Pentagon { face: Vec<usize> },
    Pendant { vertex: usize },
    ExceptionalSeven,
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub label: CaseLabel,
    pub n: usize,
    pub contacts: usize,
    pub reason: String,
    pub evidence: Evidence,
}

struct FaceShape {
    sides: Vec<f64>,
    angles: Vec<f64>,
    distinct: bool,
}

fn face_shape(face: &Face, coords: &[[f64; 2]]) -> FaceShape {
    let k = face.cycle.len();
    let mut sides = Vec::with_capacity(k);
    let mut angles = Vec::with_capacity(k);
    let mut seen = HashSet::new();
    let mut distinct = true;
    for i in 0..k {
        if !seen.insert(face.cycle[i]) {
            distinct = false;
        }
        let cur = coords[face.cycle[i]];
        let next = coords[face.cycle[(i + 1) % k]];
        let prev = coords[face.cycle[(i + k - 1) % k]];
        sides.push(((next[0] - cur[0]).powi(2) + (next[1] - cur[1]).powi(2)).sqrt());
        let a = [prev[0] - cur[0], prev[1] - cur[1]];
        let b = [next[0] - cur[0], next[1] - cur[1]];
        let na = (a[0] * a[0] + a[1] * a[1]).sqrt();
        let nb = (b[0] * b[0] + b[1] * b[1]).sqrt();
        let cos = ((a[0] * b[0] + a[1] * b[1]) / (na * nb)).clamp(-1.0, 1.0);
        angles.push(cos.acos());
    }
    FaceShape {
        sides,
        angles,
        distinct,
    }
}

fn is_unit_square_face(face: &Face, coords: &[[f64; 2]], side: f64, tol: &Tolerance) -> bool {
    if face.side_count() != 4 {
        return false;
    }
    let shape = face_shape(face, coords);
    shape.distinct
        && shape.sides.iter().all(|&s| (s - side).abs() <= tol.contact)
        && shape
            .angles
            .iter()
            .all(|&a| (a - FRAC_PI_2).abs() <= tol.angle + 1e-9)
}

fn is_unit_pentagon_face(face: &Face, coords: &[[f64; 2]], side: f64, tol: &Tolerance) -> bool {
    if face.side_count() != 5 {
        return false;
    }
    let shape = face_shape(face, coords);
    shape.distinct
        && shape.sides.iter().all(|&s| (s - side).abs() <= tol.contact)
        && shape
            .angles
            .iter()
            .all(|&a| a >= FRAC_PI_2 - tol.angle - 1e-9)
}

/// True iff the given internal faces are pairwise reachable through shared
/// edges (the polyomino condition). Vacuously true for zero or one face.
fn faces_edge_connected(faces: &[&Face]) -> bool {
    if faces.len() <= 1 {
        return true;
    }
    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (idx, face) in faces.iter().enumerate() {
        let k = face.cycle.len();
        for i in 0..k {
            let a = face.cycle[i];
            let b = face.cycle[(i + 1) % k];
            by_edge.entry((a.min(b), a.max(b))).or_default().push(idx);
        }
    }
    let mut seen = vec![false; faces.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(f) = stack.pop() {
        let face = faces[f];
        let k = face.cycle.len();
        for i in 0..k {
            let a = face.cycle[i];
            let b = face.cycle[(i + 1) % k];
            for &other in &by_edge[&(a.min(b), a.max(b))] {
                if !seen[other] {
                    seen[other] = true;
                    count += 1;
                    stack.push(other);
                }
            }
        }
    }
    count == faces.len()
}

fn case_i_structure(g: &EmbeddedGraph, census: &FaceCensus, side: f64, tol: &Tolerance) -> bool {
    if census.internal.is_empty() || !two_connected(g) {
        return false;
    }
    let squares: Vec<&Face> = census.internal.iter().collect();
    squares
        .iter()
        .all(|f| is_unit_square_face(f, &g.coords, side, tol))
        && faces_edge_connected(&squares)
}

/// External-boundary directed edges of the census, as a set.
fn external_edge_set(census: &FaceCensus) -> HashSet<(usize, usize)> {
    let cycle = &census.external.cycle;
    let k = cycle.len();
    (0..k).map(|i| (cycle[i], cycle[(i + 1) % k])).collect()
}

fn case_ii_structure(
    g: &EmbeddedGraph,
    census: &FaceCensus,
    side: f64,
    tol: &Tolerance,
) -> Option<Vec<usize>> {
    if !two_connected(g) {
        return None;
    }
    let mut pentagon = None;
    let mut squares = Vec::new();
    for face in &census.internal {
        if is_unit_square_face(face, &g.coords, side, tol) {
            squares.push(face);
        } else if pentagon.is_none() && is_unit_pentagon_face(face, &g.coords, side, tol) {
            pentagon = Some(face);
        } else {
            return None;
        }
    }
    let pentagon = pentagon?;
    if !faces_edge_connected(&squares) {
        return None;
    }
    // Sides of the pentagon bordering the external face must form one
    // consecutive run of length >= 3 in its cyclic side order; the remaining
    // (polyomino-adjacent) sides are then at most 2 and consecutive as well.
    let external_edges = external_edge_set(census);
    let k = pentagon.cycle.len();
    let on_external: Vec<bool> = (0..k)
        .map(|i| {
            let a = pentagon.cycle[i];
            let b = pentagon.cycle[(i + 1) % k];
            external_edges.contains(&(b, a))
        })
        .collect();
    let external_count = on_external.iter().filter(|&&x| x).count();
    if external_count < 3 {
        return None;
    }
    let runs = (0..k)
        .filter(|&i| !on_external[i] && on_external[(i + 1) % k])
        .count();
    if external_count < k && runs != 1 {
        return None;
    }
    Some(pentagon.cycle.clone())
}

fn case_iii_structure(
    g: &EmbeddedGraph,
    census: &FaceCensus,
    side: f64,
    tol: &Tolerance,
) -> Option<usize> {
    let pendants: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.degree(v) == 1)
        .collect();
    if pendants.len() != 1 {
        return None;
    }
    let pendant = pendants[0];
    if !census.external.cycle.contains(&pendant) {
        return None;
    }
    let reduced = g.remove_vertex(pendant);
    let reduced_census = faces(&reduced).ok()?;
    case_i_structure(&reduced, &reduced_census, side, tol).then_some(pendant)
}

fn graphs_isomorphic(a: &EmbeddedGraph, b: &EmbeddedGraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }
    let adj_b: Vec<HashSet<usize>> = (0..n)
        .map(|v| b.adjacency[v].iter().copied().collect())
        .collect();
    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn backtrack(
        v: usize,
        a: &EmbeddedGraph,
        b: &EmbeddedGraph,
        adj_b: &[HashSet<usize>],
        assignment: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = assignment.len();
        if v == n {
            return true;
        }
        for target in 0..n {
            if used[target] || a.degree(v) != b.degree(target) {
                continue;
            }
            let consistent = a.adjacency[v]
                .iter()
                .all(|&w| assignment[w] == usize::MAX || adj_b[target].contains(&assignment[w]));
            if !consistent {
                continue;
            }
            assignment[v] = target;
            used[target] = true;
            if backtrack(v + 1, a, b, adj_b, assignment, used) {
                return true;
            }
            assignment[v] = usize::MAX;
            used[target] = false;
        }
        false
    }
    backtrack(0, a, b, &adj_b, &mut assignment, &mut used)
}

/// Classifies a planar locally separable maximizer into the crystallization
/// cases. Inputs that are not extremal or not locally separable are labeled
/// `Other` with the reason recorded.
pub fn classify(p: &Packing, tol: &Tolerance) -> Result<Classification, EnumerationError> {
    if p.dimension() != 2 {
        return Err(EnumerationError::UnsupportedDimension(p.dimension()));
    }
    let g = p.contact_graph(tol)?;
    let n = p.len();
    let contacts = g.contact_count();
    let other = |reason: &str| Classification {
        label: CaseLabel::Other,
        n,
        contacts,
        reason: reason.to_string(),
        evidence: Evidence::None,
    };
    if n < 4 {
        return Ok(other("classification applies to n >= 4"));
    }
    let maximum = planar_max_contacts(n as u64) as usize;
    if contacts != maximum {
        return Ok(other(&format!(
            "contact count {contacts} differs from the planar maximum {maximum}"
        )));
    }
    match is_ls(p, &g, tol, LsMode::Exact2d)? {
        LsVerdict::Yes => {}
        _ => return Ok(other("packing is not locally separable")),
    }
    let embedded = EmbeddedGraph::from_packing(p, &g)?;
    if !embedded.is_connected() {
        return Ok(other("contact graph is disconnected"));
    }
    let census = faces(&embedded)?;
    let side = 2.0 * p.radius();

    if case_i_structure(&embedded, &census, side, tol) {
        return Ok(Classification {
            label: CaseLabel::CaseI,
            n,
            contacts,
            reason: "2-connected; all internal faces are unit squares forming a polyomino".into(),
            evidence: Evidence::Polyomino {
                square_faces: census.internal_face_count(),
            },
        });
    }
    if let Some(face) = case_ii_structure(&embedded, &census, side, tol) {
        return Ok(Classification {
            label: CaseLabel::CaseII,
            n,
            contacts,
            reason: "unit-square polyomino plus one pentagon face on the outer boundary".into(),
            evidence: Evidence::Pentagon { face },
        });
    }
    if let Some(vertex) = case_iii_structure(&embedded, &census, side, tol) {
        return Ok(Classification {
            label: CaseLabel::CaseIII,
            n,
            contacts,
            reason: "one pendant vertex whose removal leaves a case-I graph".into(),
            evidence: Evidence::Pendant { vertex },
        });
    }
    if n == 7 {
        let fixture = EmbeddedGraph::from_lattice(&exceptional_seven());
        if graphs_isomorphic(&embedded, &fixture) {
            return Ok(Classification {
                label: CaseLabel::ExceptionalSeven,
                n,
                contacts,
                reason: "contact graph matches the exceptional 7-disk configuration".into(),
                evidence: Evidence::ExceptionalSeven,
            });
        }
    }
    Ok(other(
        "extremal locally separable packing outside the classified cases",
    ))
}

/// Re-derives the exceptional 7-disk configuration by exhaustive search:
/// among all lattice maximizers for n = 7, exactly one is locally separable
/// without being a case-I or case-III structure. The stored fixture
/// must match this result.
pub fn pin_exceptional_seven(budget: &SearchBudget) -> Result<LatticeConfig, EnumerationError> {
    let tol = Tolerance::default();
    let result = max_contact_lattice(7, budget)?;
    let mut hits = Vec::new();
    for witness in result.witnesses {
        let config = LatticeConfig::new(witness)?;
        let p = config.to_packing();
        let g = p.contact_graph(&tol)?;
        if !is_ls(&p, &g, &tol, LsMode::Exact2d)?.is_yes() {
            continue;
        }
        let embedded = EmbeddedGraph::from_lattice(&config);
        let census = faces(&embedded)?;
        if case_i_structure(&embedded, &census, 1.0, &tol) {
            continue;
        }
        if case_iii_structure(&embedded, &census, 1.0, &tol).is_some() {
            continue;
        }
        hits.push(config);
    }
    if hits.len() != 1 {
        return Err(EnumerationError::AmbiguousPin {
            candidates: hits.len(),
        });
    }
    Ok(hits.into_iter().next().unwrap())
}

/// Degrees-to-radians display helper for diagnostics.
pub fn degrees(rad: f64) -> f64 {
    rad * 180.0 / PI
}
