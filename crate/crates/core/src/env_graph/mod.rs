//! Environment representation and the maximum-clearance roadmap.
//!
//! Obstacle centers are the sites of a Voronoi diagram clipped to the
//! environment bounds; its edges (plus collision-free connectors from the
//! start and goal into their containing cells) form a graph whose edges
//! carry clearance. Narrow passages are pruned, Dijkstra searches the
//! graph, and candidate paths leaving through different start-cell
//! vertices are ranked by the multiscale jerk/acceleration/length
//! criterion.

mod costs;
mod voronoi;

pub use costs::{accel_cost, accel_primitive_state, compare_priority, jerk_cost, pi_gate, PathCosts};
pub use voronoi::{voronoi_cells, Cell};

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::geom::{point_segment_dist, polyline_length, Rect, Vec2};
use crate::real::{lit, Real};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("environment bounds are degenerate")]
    EmptyEnvironment,
    #[error("start and goal are not connected in the pruned roadmap")]
    Disconnected,
    #[error("segment duration must be positive")]
    NonpositiveDuration,
}

/// Disc obstacle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Obstacle<T> {
    pub center: Vec2<T>,
    pub radius: T,
}

impl<T: Real> Obstacle<T> {
    pub fn new(center: Vec2<T>, radius: T) -> Self {
        Self { center, radius }
    }
}

/// Planning environment: bounded rectangle, disc obstacles, one start/goal
/// pair. `inflation` is the vehicle footprint (r_v + r_c) added to every
/// obstacle radius for feasibility checks.
#[derive(Clone, Debug)]
pub struct Environment<T> {
    pub bounds: Rect<T>,
    pub obstacles: Vec<Obstacle<T>>,
    pub start: Vec2<T>,
    pub goal: Vec2<T>,
    pub inflation: T,
}

impl<T: Real> Environment<T> {
    /// Segment [a, b] keeps clear of every inflated obstacle disc.
    pub fn segment_is_free(&self, a: Vec2<T>, b: Vec2<T>) -> bool {
        self.obstacles
            .iter()
            .all(|o| point_segment_dist(o.center, a, b) >= o.radius + self.inflation)
    }
}

/// Undirected roadmap edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge<T> {
    pub a: usize,
    pub b: usize,
    pub length: T,
    /// Minimum distance from the edge segment to any site.
    pub clearance: T,
}

/// Voronoi roadmap with start/goal connectors.
#[derive(Clone, Debug)]
pub struct RoadmapGraph<T> {
    pub vertices: Vec<Vec2<T>>,
    pub edges: Vec<Edge<T>>,
    /// Clipped Voronoi cell polygon of every site.
    pub site_cells: Vec<Cell<T>>,
    pub start: usize,
    pub goal: usize,
}

impl<T: Real> RoadmapGraph<T> {
    pub fn adjacency(&self) -> Vec<Vec<(usize, T)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.a].push((e.b, e.length));
            adj[e.b].push((e.a, e.length));
        }
        for list in &mut adj {
            list.sort_by(|a, b| a.0.cmp(&b.0));
        }
        adj
    }

    fn neighbors_of(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.a == v {
                    Some(e.b)
                } else if e.b == v {
                    Some(e.a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

struct VertexPool<T> {
    pts: Vec<Vec2<T>>,
    tol: T,
}

impl<T: Real> VertexPool<T> {
    fn new(tol: T) -> Self {
        Self { pts: Vec::new(), tol }
    }

    fn intern(&mut self, p: Vec2<T>) -> usize {
        for (i, q) in self.pts.iter().enumerate() {
            if q.dist(p) <= self.tol {
                return i;
            }
        }
        self.pts.push(p);
        self.pts.len() - 1
    }
}

fn on_bounds_edge<T: Real>(p: Vec2<T>, bounds: &Rect<T>, tol: T) -> bool {
    (p.x - bounds.min.x).abs() <= tol
        || (p.x - bounds.max.x).abs() <= tol
        || (p.y - bounds.min.y).abs() <= tol
        || (p.y - bounds.max.y).abs() <= tol
}

fn min_site_distance<T: Real>(a: Vec2<T>, b: Vec2<T>, sites: &[Vec2<T>]) -> T {
    sites
        .iter()
        .map(|&s| point_segment_dist(s, a, b))
        .fold(T::infinity(), T::min)
}

/// Build the clipped Voronoi roadmap of the obstacle centers and connect
/// start and goal to the visible vertices of their containing cells. With
/// fewer than two sites the graph degenerates to the start-goal segment.
pub fn build_roadmap<T: Real>(env: &Environment<T>) -> Result<RoadmapGraph<T>, GraphError> {
    if env.bounds.is_degenerate() {
        return Err(GraphError::EmptyEnvironment);
    }
    let sites: Vec<Vec2<T>> = env.obstacles.iter().map(|o| o.center).collect();

    if sites.len() < 2 {
        let length = env.start.dist(env.goal);
        let clearance = min_site_distance(env.start, env.goal, &sites);
        return Ok(RoadmapGraph {
            vertices: vec![env.start, env.goal],
            edges: vec![Edge { a: 0, b: 1, length, clearance }],
            site_cells: voronoi_cells(&sites, &env.bounds),
            start: 0,
            goal: 1,
        });
    }

    let tol = lit::<T>(1e-9) * env.bounds.diagonal().max(T::one());
    let cells = voronoi_cells(&sites, &env.bounds);
    let mut pool = VertexPool::new(tol);
    let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut cell_vertex_ids: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];

    for cell in &cells {
        let poly = &cell.polygon;
        for i in 0..poly.len() {
            let a = poly[i];
            let b = poly[(i + 1) % poly.len()];
            if a.dist(b) <= tol {
                continue;
            }
            // boundary segments are clipping artifacts, not Voronoi edges
            let mid = (a + b) * lit::<T>(0.5);
            if on_bounds_edge(a, &env.bounds, tol)
                && on_bounds_edge(b, &env.bounds, tol)
                && on_bounds_edge(mid, &env.bounds, tol)
            {
                continue;
            }
            let ia = pool.intern(a);
            let ib = pool.intern(b);
            if ia == ib {
                continue;
            }
            cell_vertex_ids[cell.site].push(ia);
            cell_vertex_ids[cell.site].push(ib);
            let key = (ia.min(ib), ia.max(ib));
            edge_set.insert(key);
        }
    }

    let mut edges: Vec<Edge<T>> = edge_set
        .into_iter()
        .map(|(a, b)| Edge {
            a,
            b,
            length: pool.pts[a].dist(pool.pts[b]),
            clearance: min_site_distance(pool.pts[a], pool.pts[b], &sites),
        })
        .collect();

    // start/goal connectors into the visible vertices of their cells
    let start_id = pool.pts.len();
    pool.pts.push(env.start);
    let goal_id = pool.pts.len();
    pool.pts.push(env.goal);

    let nearest_site = |p: Vec2<T>| {
        let mut best = 0usize;
        let mut best_d = T::infinity();
        for (i, &s) in sites.iter().enumerate() {
            let d = s.dist(p);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        best
    };

    for (endpoint, endpoint_id) in [(env.start, start_id), (env.goal, goal_id)] {
        let cell = nearest_site(endpoint);
        let mut ids = cell_vertex_ids[cell].clone();
        ids.sort_unstable();
        ids.dedup();
        for vid in ids {
            let v = pool.pts[vid];
            if !env.segment_is_free(endpoint, v) {
                continue;
            }
            edges.push(Edge {
                a: endpoint_id.min(vid),
                b: endpoint_id.max(vid),
                length: endpoint.dist(v),
                clearance: min_site_distance(endpoint, v, &sites),
            });
        }
    }

    Ok(RoadmapGraph {
        vertices: pool.pts,
        edges,
        site_cells: cells,
        start: start_id,
        goal: goal_id,
    })
}

/// Remove every edge with clearance below `min_clearance` and drop the
/// vertices this isolates (start and goal are always kept).
pub fn prune_narrow<T: Real>(
    g: &RoadmapGraph<T>,
    min_clearance: T,
) -> Result<RoadmapGraph<T>, GraphError> {
    let kept: Vec<Edge<T>> = g
        .edges
        .iter()
        .copied()
        .filter(|e| e.clearance >= min_clearance)
        .collect();

    let mut used = vec![false; g.vertices.len()];
    used[g.start] = true;
    used[g.goal] = true;
    for e in &kept {
        used[e.a] = true;
        used[e.b] = true;
    }
    let mut remap = vec![usize::MAX; g.vertices.len()];
    let mut vertices = Vec::new();
    for (i, &keep) in used.iter().enumerate() {
        if keep {
            remap[i] = vertices.len();
            vertices.push(g.vertices[i]);
        }
    }
    let edges = kept
        .into_iter()
        .map(|e| Edge { a: remap[e.a], b: remap[e.b], ..e })
        .collect();

    let pruned = RoadmapGraph {
        vertices,
        edges,
        site_cells: g.site_cells.clone(),
        start: remap[g.start],
        goal: remap[g.goal],
    };
    if dijkstra(&pruned, pruned.start, None).0[pruned.goal].is_infinite() {
        return Err(GraphError::Disconnected);
    }
    Ok(pruned)
}

/// Dijkstra with a deterministic tie-break (smaller predecessor index wins
/// on equal distance). `skip` removes one vertex from the search.
fn dijkstra<T: Real>(
    g: &RoadmapGraph<T>,
    from: usize,
    skip: Option<usize>,
) -> (Vec<T>, Vec<usize>) {
    let n = g.vertices.len();
    let adj = g.adjacency();
    let mut dist = vec![T::infinity(); n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    dist[from] = T::zero();
    loop {
        // linear extraction keeps the tie-break explicit; graphs are small
        let mut u = usize::MAX;
        let mut best = T::infinity();
        for i in 0..n {
            if !done[i] && Some(i) != skip && dist[i] < best {
                best = dist[i];
                u = i;
            }
        }
        if u == usize::MAX {
            break;
        }
        done[u] = true;
        for &(v, w) in &adj[u] {
            if Some(v) == skip || done[v] {
                continue;
            }
            let nd = dist[u] + w;
            if nd < dist[v] || (nd == dist[v] && u < prev[v]) {
                dist[v] = nd;
                prev[v] = u;
            }
        }
    }
    (dist, prev)
}

/// Minimum-length vertex sequence from a to b.
pub fn shortest_path<T: Real>(
    g: &RoadmapGraph<T>,
    a: usize,
    b: usize,
) -> Result<Vec<usize>, GraphError> {
    assert!(a < g.vertices.len() && b < g.vertices.len());
    if a == b {
        return Ok(vec![a]);
    }
    let (dist, prev) = dijkstra(g, a, None);
    if dist[b].is_infinite() {
        return Err(GraphError::Disconnected);
    }
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    Ok(path)
}

/// Path length along graph vertices.
pub fn path_length<T: Real>(g: &RoadmapGraph<T>, path: &[usize]) -> T {
    let pts: Vec<Vec2<T>> = path.iter().map(|&i| g.vertices[i]).collect();
    polyline_length(&pts)
}

/// One candidate per start-cell exit vertex: J/A/L costs are filled in by
/// [`select_path`].
#[derive(Clone, Debug)]
pub struct PathCandidate<T> {
    pub vertices: Vec<usize>,
    /// Highest vertex index of the middle part; the partition is
    /// first = edge (0,1), middle = edges (1..=middle_end), remaining after.
    pub middle_end: usize,
    pub costs: PathCosts<T>,
}

impl<T: Real> PathCandidate<T> {
    pub fn points(&self, g: &RoadmapGraph<T>) -> Vec<Vec2<T>> {
        self.vertices.iter().map(|&i| g.vertices[i]).collect()
    }
}

/// Shortest path constrained to leave through each vertex of the start
/// cell, duplicates removed.
pub fn candidate_paths<T: Real>(
    g: &RoadmapGraph<T>,
) -> Result<Vec<PathCandidate<T>>, GraphError> {
    let exits = g.neighbors_of(g.start);
    if exits.is_empty() {
        return Err(GraphError::Disconnected);
    }
    let (dist, prev) = dijkstra(g, g.goal, Some(g.start));
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for w in exits {
        if w == g.goal {
            let path = vec![g.start, g.goal];
            if seen.insert(path.clone()) {
                out.push(PathCandidate { vertices: path, middle_end: 1, costs: PathCosts::default() });
            }
            continue;
        }
        if dist[w].is_infinite() {
            continue;
        }
        let mut path = vec![g.start, w];
        let mut cur = w;
        while cur != g.goal {
            cur = prev[cur];
            path.push(cur);
        }
        if seen.insert(path.clone()) {
            out.push(PathCandidate { vertices: path, middle_end: 1, costs: PathCosts::default() });
        }
    }
    if out.is_empty() {
        return Err(GraphError::Disconnected);
    }
    Ok(out)
}

/// Partition of a vertex path into traversed / detected / unknown parts.
#[derive(Clone, Debug, PartialEq)]
pub struct PathPartition<T> {
    pub first: Vec<Vec2<T>>,
    pub middle: Vec<Vec2<T>>,
    pub remaining: Vec<Vec2<T>>,
}

impl<T: Real> PathPartition<T> {
    pub fn middle_edge_count(&self) -> usize {
        self.middle.len().saturating_sub(1)
    }

    pub fn remaining_edge_count(&self) -> usize {
        self.remaining.len().saturating_sub(1)
    }

    /// Concatenation with shared junction points dropped.
    pub fn concatenated(&self) -> Vec<Vec2<T>> {
        let mut out = self.first.clone();
        out.extend(self.middle.iter().skip(1).copied());
        out.extend(self.remaining.iter().skip(1).copied());
        out
    }
}

/// Split a path into its first edge, the maximal in-range prefix of the
/// rest, and the remaining unknown part.
pub fn partition_path<T: Real>(
    pts: &[Vec2<T>],
    pose: Vec2<T>,
    sensor_range: T,
) -> PathPartition<T> {
    assert!(pts.len() >= 2, "partition needs a nonempty path");
    let n = pts.len();
    let mut m = 1usize;
    if pts[1].dist(pose) <= sensor_range {
        while m + 1 < n && pts[m + 1].dist(pose) <= sensor_range {
            m += 1;
        }
    }
    PathPartition {
        first: pts[0..2].to_vec(),
        middle: pts[1..=m].to_vec(),
        remaining: pts[m..].to_vec(),
    }
}

/// Vehicle state the selection costs are seeded with.
#[derive(Clone, Copy, Debug)]
pub struct StartKinematics<T> {
    pub position: Vec2<T>,
    pub velocity: Vec2<T>,
    pub accel: Vec2<T>,
}

#[derive(Clone, Copy, Debug)]
pub struct SelectWeights<T> {
    pub w1: T,
    pub w2: T,
    /// Gate threshold; defaults to 10% of the mean candidate jerk.
    pub c: Option<T>,
}

impl<T: Real> Default for SelectWeights<T> {
    fn default() -> Self {
        Self { w1: T::one(), w2: T::one(), c: None }
    }
}

fn unit_or<T: Real>(v: Vec2<T>, fallback: Vec2<T>) -> Vec2<T> {
    v.normalized().unwrap_or(fallback)
}

/// Fill in J/A/L for one candidate given the current vehicle kinematics.
fn candidate_costs<T: Real>(
    cand: &mut PathCandidate<T>,
    g: &RoadmapGraph<T>,
    kin: &StartKinematics<T>,
    sensor_range: T,
    u_d: T,
) -> Result<(), GraphError> {
    let pts = cand.points(g);
    let part = partition_path(&pts, kin.position, sensor_range);
    cand.middle_end = part.middle.len().max(1);

    // first part: minimum-jerk primitive from the current state to the end
    // of the first edge, leaving along the next edge at the desired speed
    let p0 = pts[0];
    let p1 = pts[1];
    let first_len = p0.dist(p1);
    let t1 = (first_len / u_d).max(lit::<T>(1e-6));
    let exit_dir = if pts.len() >= 3 {
        unit_or(pts[2] - pts[1], unit_or(p1 - p0, Vec2::new(T::one(), T::zero())))
    } else {
        unit_or(p1 - p0, Vec2::new(T::one(), T::zero()))
    };
    let jerk = jerk_cost(p0, p1, kin.velocity, kin.accel, exit_dir * u_d, (t1, t1))?;

    // middle part: one minimum-acceleration primitive across the detected
    // section, entering along the first edge and leaving along its last edge
    let accel = if part.middle_edge_count() >= 1 {
        let mstart = part.middle[0];
        let mend = *part.middle.last().unwrap();
        let len = polyline_length(&part.middle);
        let t = (len / u_d).max(lit::<T>(1e-6));
        let v_in = unit_or(p1 - p0, exit_dir) * u_d;
        let n = part.middle.len();
        let v_out = unit_or(part.middle[n - 1] - part.middle[n - 2], exit_dir) * u_d;
        accel_cost(mstart, mend, v_in, v_out, (t, t))?
    } else {
        T::zero()
    };

    let remaining_len = polyline_length(&part.remaining);
    cand.costs = PathCosts { jerk, accel, remaining_len };
    Ok(())
}

/// Rank candidates under the multiscale priority criterion and return the
/// winner; ties break on total length, then on the vertex sequence.
pub fn select_path<T: Real>(
    mut candidates: Vec<PathCandidate<T>>,
    g: &RoadmapGraph<T>,
    kin: &StartKinematics<T>,
    sensor_range: T,
    weights: &SelectWeights<T>,
    u_d: T,
) -> Result<PathCandidate<T>, GraphError> {
    assert!(!candidates.is_empty(), "select_path needs candidates");
    for cand in candidates.iter_mut() {
        candidate_costs(cand, g, kin, sensor_range, u_d)?;
    }
    let mean_jerk = candidates.iter().map(|c| c.costs.jerk).sum::<T>()
        / T::from_usize(candidates.len()).unwrap();
    let c = weights
        .c
        .unwrap_or(lit::<T>(0.1) * mean_jerk)
        .max(lit::<T>(1e-12));

    let better = |a: &PathCandidate<T>, b: &PathCandidate<T>| -> bool {
        match compare_priority(&a.costs, &b.costs, weights.w1, weights.w2, c) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => {
                let la = path_length(g, &a.vertices);
                let lb = path_length(g, &b.vertices);
                if la != lb {
                    la < lb
                } else {
                    a.vertices < b.vertices
                }
            }
        }
    };

    let mut best = 0usize;
    for i in 1..candidates.len() {
        if better(&candidates[i], &candidates[best]) {
            best = i;
        }
    }
    Ok(candidates.swap_remove(best))
}
