//! The two-robot configuration space of the lollipop and its skeleton: the set
//! of configurations whose robots sit exactly half a unit apart, realized as a
//! weighted multigraph with closed-form embeddings back into configuration
//! space.
//!
//! The skeleton is a chain of three circles with a whisker interval at each
//! end. Edge weights are L1 lengths (the sum of both robots' displacements),
//! which makes each circle have length 2 and each whisker length 1.
//!
//! Counterclockwise orientations, fixed here once and used by the router's
//! tie-break: in each circle the robot that is physically on the circle edge
//! moves counterclockwise. Concretely the ccw cycles are
//! `v1 -> S1a -> v2 -> S1b -> v1`, `v2 -> S2a -> v3 -> S2b -> v2` and
//! `v4 -> S3a -> v3 -> S3b -> v4`.

use crate::spaces::{EdgeKind, PhysPoint, SpaceError, SpaceKind, HALF_UNIT};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use thiserror::Error;

/// An ordered, non-colliding pair of robot positions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfigState {
    pub a: PhysPoint,
    pub b: PhysPoint,
}

impl ConfigState {
    /// Canonicalize both points and reject collisions.
    pub fn new(space: SpaceKind, a: PhysPoint, b: PhysPoint) -> Result<Self, SpaceError> {
        let a = space.canonicalize(a)?;
        let b = space.canonicalize(b)?;
        if space.dist(a, b) == 0.0 {
            return Err(SpaceError::CollidingState(a));
        }
        Ok(ConfigState { a, b })
    }

    pub fn separation(&self, space: SpaceKind) -> f64 {
        space.dist(self.a, self.b)
    }

    /// The state with the two robots exchanged.
    pub fn swapped(&self) -> Self {
        ConfigState { a: self.b, b: self.a }
    }

    /// L1 distance between configurations: sum of per-robot track distances.
    pub fn l1(&self, space: SpaceKind, other: &ConfigState) -> f64 {
        space.dist(self.a, other.a) + space.dist(self.b, other.b)
    }
}

impl fmt::Display for ConfigState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Which product block of the flat representation a state lives in,
/// by the edge tags of (robot A, robot B).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Block {
    II,
    IC,
    CI,
    CC,
}

/// Flat (block, u, v) coordinates of a configuration; u is robot A, v robot B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlatCoord {
    pub block: Block,
    pub u: f64,
    pub v: f64,
}

/// Flat coordinates of a canonical state. Invertible via [`from_flat`].
pub fn to_flat(state: &ConfigState) -> FlatCoord {
    let block = match (state.a.edge, state.b.edge) {
        (EdgeKind::Interval, EdgeKind::Interval) => Block::II,
        (EdgeKind::Interval, EdgeKind::Circle) => Block::IC,
        (EdgeKind::Circle, EdgeKind::Interval) => Block::CI,
        (EdgeKind::Circle, EdgeKind::Circle) => Block::CC,
    };
    FlatCoord { block, u: state.a.t, v: state.b.t }
}

pub fn from_flat(flat: &FlatCoord) -> ConfigState {
    let (a, b) = match flat.block {
        Block::II => (PhysPoint::interval(flat.u), PhysPoint::interval(flat.v)),
        Block::IC => (PhysPoint::interval(flat.u), PhysPoint::circle(flat.v)),
        Block::CI => (PhysPoint::circle(flat.u), PhysPoint::interval(flat.v)),
        Block::CC => (PhysPoint::circle(flat.u), PhysPoint::circle(flat.v)),
    };
    ConfigState { a, b }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VertexId {
    E1,
    V1,
    V2,
    V3,
    V4,
    E2,
}

pub const VERTICES: [VertexId; 6] = [
    VertexId::E1,
    VertexId::V1,
    VertexId::V2,
    VertexId::V3,
    VertexId::V4,
    VertexId::E2,
];

impl VertexId {
    pub fn label(self) -> &'static str {
        match self {
            VertexId::E1 => "e1",
            VertexId::V1 => "v1",
            VertexId::V2 => "v2",
            VertexId::V3 => "v3",
            VertexId::V4 => "v4",
            VertexId::E2 => "e2",
        }
    }

    fn index(self) -> usize {
        match self {
            VertexId::E1 => 0,
            VertexId::V1 => 1,
            VertexId::V2 => 2,
            VertexId::V3 => 3,
            VertexId::V4 => 4,
            VertexId::E2 => 5,
        }
    }

    /// Embedded configuration of the vertex.
    pub fn state(self) -> ConfigState {
        let (a, b) = match self {
            VertexId::E1 => (PhysPoint::interval(0.0), PhysPoint::interval(0.5)),
            VertexId::V1 => (PhysPoint::interval(0.5), PhysPoint::circle(0.0)),
            VertexId::V2 => (PhysPoint::circle(0.0), PhysPoint::circle(0.5)),
            VertexId::V3 => (PhysPoint::circle(0.5), PhysPoint::circle(0.0)),
            VertexId::V4 => (PhysPoint::circle(0.0), PhysPoint::interval(0.5)),
            VertexId::E2 => (PhysPoint::interval(0.5), PhysPoint::interval(0.0)),
        };
        ConfigState { a, b }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeId {
    I1,
    S1a,
    S1b,
    S2a,
    S2b,
    S3a,
    S3b,
    I2,
}

pub const EDGES: [EdgeId; 8] = [
    EdgeId::I1,
    EdgeId::S1a,
    EdgeId::S1b,
    EdgeId::S2a,
    EdgeId::S2b,
    EdgeId::S3a,
    EdgeId::S3b,
    EdgeId::I2,
];

impl EdgeId {
    pub fn label(self) -> &'static str {
        match self {
            EdgeId::I1 => "I1",
            EdgeId::S1a => "S1a",
            EdgeId::S1b => "S1b",
            EdgeId::S2a => "S2a",
            EdgeId::S2b => "S2b",
            EdgeId::S3a => "S3a",
            EdgeId::S3b => "S3b",
            EdgeId::I2 => "I2",
        }
    }

    /// Parameter range of the edge's embedding.
    pub fn s_range(self) -> (f64, f64) {
        match self {
            EdgeId::I1 | EdgeId::I2 | EdgeId::S2a => (0.0, 0.5),
            EdgeId::S1a | EdgeId::S1b | EdgeId::S2b | EdgeId::S3a | EdgeId::S3b => (0.5, 1.0),
        }
    }

    /// Endpoint vertices at (range start, range end).
    pub fn ends(self) -> (VertexId, VertexId) {
        match self {
            EdgeId::I1 => (VertexId::E1, VertexId::V1),
            EdgeId::S1a => (VertexId::V1, VertexId::V2),
            EdgeId::S1b => (VertexId::V1, VertexId::V2),
            EdgeId::S2a => (VertexId::V2, VertexId::V3),
            EdgeId::S2b => (VertexId::V3, VertexId::V2),
            EdgeId::S3a => (VertexId::V4, VertexId::V3),
            EdgeId::S3b => (VertexId::V4, VertexId::V3),
            EdgeId::I2 => (VertexId::E2, VertexId::V4),
        }
    }

    /// Which circle of the chain the edge belongs to, if any.
    pub fn circle(self) -> Option<u8> {
        match self {
            EdgeId::S1a | EdgeId::S1b => Some(1),
            EdgeId::S2a | EdgeId::S2b => Some(2),
            EdgeId::S3a | EdgeId::S3b => Some(3),
            EdgeId::I1 | EdgeId::I2 => None,
        }
    }

    /// Whether traversing the edge with increasing `s` is the counterclockwise
    /// direction of its circle. Irrelevant (false) for the whiskers.
    pub fn ccw_is_increasing(self) -> bool {
        match self {
            EdgeId::S1a | EdgeId::S2a | EdgeId::S2b | EdgeId::S3a => true,
            EdgeId::S1b | EdgeId::S3b => false,
            EdgeId::I1 | EdgeId::I2 => false,
        }
    }

    /// L1 length; every edge spans half a parameter unit with both robots moving.
    pub fn length(self) -> f64 {
        1.0
    }

    /// Embedded configuration at parameter `s`. Every embedded state has
    /// separation exactly one half.
    pub fn embed(self, s: f64) -> ConfigState {
        let lollipop = SpaceKind::Lollipop;
        let canon = |p: PhysPoint| lollipop.canonicalize(p).expect("embedding stays in range");
        let wrap = crate::spaces::wrap_unit;
        let (a, b) = match self {
            EdgeId::I1 => (PhysPoint::interval(s), PhysPoint::interval(s + 0.5)),
            EdgeId::S1a => (PhysPoint::interval(s), PhysPoint::circle(s - 0.5)),
            EdgeId::S1b => (PhysPoint::interval(s), PhysPoint::circle(wrap(1.5 - s))),
            EdgeId::S2a => (PhysPoint::circle(wrap(s)), PhysPoint::circle(wrap(s + 0.5))),
            EdgeId::S2b => (PhysPoint::circle(wrap(s)), PhysPoint::circle(wrap(s + 0.5))),
            EdgeId::S3a => (PhysPoint::circle(s - 0.5), PhysPoint::interval(s)),
            EdgeId::S3b => (PhysPoint::circle(wrap(1.5 - s)), PhysPoint::interval(s)),
            EdgeId::I2 => (PhysPoint::interval(s + 0.5), PhysPoint::interval(s)),
        };
        ConfigState { a: canon(a), b: canon(b) }
    }

    /// Parameter at which `v` sits on this edge, if it is an endpoint.
    pub fn param_of_vertex(self, v: VertexId) -> Option<f64> {
        let (lo, hi) = self.s_range();
        let (start, end) = self.ends();
        if v == start {
            Some(lo)
        } else if v == end {
            Some(hi)
        } else {
            None
        }
    }
}

/// A point of the skeleton: a vertex, or an interior point of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SkeletonPoint {
    Vertex(VertexId),
    Interior { edge: EdgeId, s: f64 },
}

const VERTEX_SNAP: f64 = 1e-12;

impl SkeletonPoint {
    /// Point on `edge` at parameter `s`; parameters at (or within 1e-12 of)
    /// the range ends canonicalize to the endpoint vertices.
    pub fn on_edge(edge: EdgeId, s: f64) -> Self {
        let (lo, hi) = edge.s_range();
        let (start, end) = edge.ends();
        if s - lo <= VERTEX_SNAP {
            SkeletonPoint::Vertex(start)
        } else if hi - s <= VERTEX_SNAP {
            SkeletonPoint::Vertex(end)
        } else {
            SkeletonPoint::Interior { edge, s }
        }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, SkeletonPoint::Vertex(_))
    }

    /// Edges containing this point, with the parameter on each.
    fn placements(&self) -> Vec<(EdgeId, f64)> {
        match *self {
            SkeletonPoint::Interior { edge, s } => vec![(edge, s)],
            SkeletonPoint::Vertex(v) => EDGES
                .iter()
                .filter_map(|&e| e.param_of_vertex(v).map(|s| (e, s)))
                .collect(),
        }
    }

    /// Position along the counterclockwise loop of circle `j`, in `[0, 2)`,
    /// measured from the circle's whisker-side vertex. `None` off that circle.
    pub fn loop_coord(&self, j: u8) -> Option<f64> {
        let coord = |edge: EdgeId, s: f64| -> Option<f64> {
            if edge.circle() != Some(j) {
                return None;
            }
            let l = match edge {
                EdgeId::S1a | EdgeId::S3a => 2.0 * (s - 0.5),
                EdgeId::S1b | EdgeId::S3b => 1.0 + 2.0 * (1.0 - s),
                EdgeId::S2a | EdgeId::S2b => 2.0 * s,
                _ => unreachable!(),
            };
            Some(if l >= 2.0 { l - 2.0 } else { l })
        };
        self.placements().iter().find_map(|&(e, s)| coord(e, s))
    }
}

impl fmt::Display for SkeletonPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkeletonPoint::Vertex(v) => f.write_str(v.label()),
            SkeletonPoint::Interior { edge, s } => write!(f, "{}@{}", edge.label(), s),
        }
    }
}

/// Point at loop coordinate `l` of circle `j`.
fn loop_point(j: u8, l: f64) -> SkeletonPoint {
    let l = l.rem_euclid(2.0);
    let (lower, upper) = match j {
        1 => (EdgeId::S1a, EdgeId::S1b),
        2 => (EdgeId::S2a, EdgeId::S2b),
        3 => (EdgeId::S3a, EdgeId::S3b),
        _ => unreachable!("circle index"),
    };
    if j == 2 {
        if l <= 1.0 {
            SkeletonPoint::on_edge(lower, l / 2.0)
        } else {
            SkeletonPoint::on_edge(upper, l / 2.0)
        }
    } else if l <= 1.0 {
        SkeletonPoint::on_edge(lower, 0.5 + l / 2.0)
    } else {
        SkeletonPoint::on_edge(upper, 1.0 - (l - 1.0) / 2.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SkeletonError {
    #[error("NotOnSkeleton: separation {separation} is not within {tol} of one half")]
    NotOnSkeleton { separation: f64, tol: f64 },
    #[error("RegionMismatch: {0}")]
    RegionMismatch(String),
}

/// The skeleton as an explicit weighted multigraph.
///
/// Immutable after build; every query is read-only.
#[derive(Debug, Clone)]
pub struct SkeletonGraph {
    _private: (),
}

impl Default for SkeletonGraph {
    fn default() -> Self {
        Self::build()
    }
}

impl SkeletonGraph {
    /// Deterministic construction from the closed-form edge embeddings.
    pub fn build() -> Self {
        SkeletonGraph { _private: () }
    }

    pub fn vertex_count(&self) -> usize {
        VERTICES.len()
    }

    pub fn edge_count(&self) -> usize {
        EDGES.len()
    }

    /// First Betti number: edges - vertices + components, with the component
    /// count taken from a union-find over the edge list.
    pub fn b1(&self) -> usize {
        let mut parent: Vec<usize> = (0..VERTICES.len()).collect();
        fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for e in EDGES {
            let (u, v) = e.ends();
            let (ru, rv) = (find(&mut parent, u.index()), find(&mut parent, v.index()));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        let mut roots: Vec<usize> = (0..VERTICES.len()).map(|i| find(&mut parent, i)).collect();
        roots.sort_unstable();
        roots.dedup();
        EDGES.len() - VERTICES.len() + roots.len()
    }

    /// Embed a skeleton point into configuration space.
    pub fn embed(&self, p: &SkeletonPoint) -> ConfigState {
        match *p {
            SkeletonPoint::Vertex(v) => v.state(),
            SkeletonPoint::Interior { edge, s } => edge.embed(s),
        }
    }

    /// Inverse of `embed` for states within `tol` of the skeleton (L1).
    pub fn locate(&self, state: &ConfigState, tol: f64) -> Result<SkeletonPoint, SkeletonError> {
        let space = SpaceKind::Lollipop;
        let sep = state.separation(space);
        if (sep - HALF_UNIT).abs() > tol {
            return Err(SkeletonError::NotOnSkeleton { separation: sep, tol });
        }
        let (a, b) = (state.a, state.b);
        let candidates: Vec<(EdgeId, f64)> = match (a.edge, b.edge) {
            (EdgeKind::Interval, EdgeKind::Interval) => {
                if a.t < b.t {
                    vec![(EdgeId::I1, (a.t + b.t - 0.5) / 2.0)]
                } else {
                    vec![(EdgeId::I2, (b.t + a.t - 0.5) / 2.0)]
                }
            }
            (EdgeKind::Interval, EdgeKind::Circle) => vec![
                (EdgeId::S1a, (a.t + b.t + 0.5) / 2.0),
                (EdgeId::S1b, (a.t + 1.5 - b.t) / 2.0),
            ],
            (EdgeKind::Circle, EdgeKind::Interval) => vec![
                (EdgeId::S3a, (b.t + a.t + 0.5) / 2.0),
                (EdgeId::S3b, (b.t + 1.5 - a.t) / 2.0),
            ],
            (EdgeKind::Circle, EdgeKind::Circle) => {
                let sb = crate::spaces::wrap_unit(b.t - 0.5);
                let s = crate::spaces::wrap_unit(a.t + crate::spaces::cyc_signed(a.t, sb) / 2.0);
                if s <= 0.5 {
                    vec![(EdgeId::S2a, s)]
                } else {
                    vec![(EdgeId::S2b, s)]
                }
            }
        };
        let mut best: Option<(f64, SkeletonPoint)> = None;
        for (edge, s) in candidates {
            let (lo, hi) = edge.s_range();
            let point = SkeletonPoint::on_edge(edge, s.clamp(lo, hi));
            let resid = self.embed(&point).l1(space, state);
            if best.as_ref().map_or(true, |(r, _)| resid < *r) {
                best = Some((resid, point));
            }
        }
        let (resid, point) = best.expect("candidate list is never empty");
        if resid > 2.0 * tol + 1e-12 {
            return Err(SkeletonError::NotOnSkeleton { separation: sep, tol });
        }
        Ok(point)
    }

    /// Shortest-path route between skeleton points under the L1 metric, with
    /// exact full-crossing ties resolved counterclockwise. With `ccw_arc` the
    /// route instead follows the counterclockwise arc of the circle shared by
    /// the two points.
    ///
    /// Returned waypoints are consecutive-edge-adjacent: between two vertex
    /// waypoints the traversed edge's midpoint is inserted, so parallel edges
    /// are always disambiguated.
    pub fn route(&self, from: &SkeletonPoint, to: &SkeletonPoint, ccw_arc: bool) -> Result<Vec<SkeletonPoint>, SkeletonError> {
        if ccw_arc {
            self.route_ccw_arc(from, to)
        } else {
            Ok(self.route_shortest(from, to))
        }
    }

    fn route_ccw_arc(&self, from: &SkeletonPoint, to: &SkeletonPoint) -> Result<Vec<SkeletonPoint>, SkeletonError> {
        let shared = (1..=3).find(|&j| from.loop_coord(j).is_some() && to.loop_coord(j).is_some());
        let Some(j) = shared else {
            return Err(SkeletonError::RegionMismatch(format!(
                "counterclockwise arc requires both points in one circle, got {from} and {to}"
            )));
        };
        let lf = from.loop_coord(j).unwrap();
        let lt = to.loop_coord(j).unwrap();
        if lf == lt {
            return Ok(vec![*from]);
        }
        let delta = (lt - lf).rem_euclid(2.0);
        let mut waypoints = vec![*from];
        // Vertices sit at integer loop coordinates; emitting every half step
        // keeps consecutive waypoints on one edge and pins parallel edges.
        let mut m = (lf * 2.0).floor() / 2.0 + 0.5;
        while m < lf + delta {
            waypoints.push(loop_point(j, m));
            m += 0.5;
        }
        waypoints.push(*to);
        dedup_waypoints(&mut waypoints);
        Ok(waypoints)
    }

    fn route_shortest(&self, from: &SkeletonPoint, to: &SkeletonPoint) -> Vec<SkeletonPoint> {
        if from == to {
            return vec![*from];
        }
        // Node table: the six vertices plus interior endpoints.
        let mut nodes: Vec<SkeletonPoint> = VERTICES.iter().map(|&v| SkeletonPoint::Vertex(v)).collect();
        let node_of = |nodes: &mut Vec<SkeletonPoint>, p: &SkeletonPoint| -> usize {
            match *p {
                SkeletonPoint::Vertex(v) => v.index(),
                SkeletonPoint::Interior { .. } => {
                    if let Some(i) = nodes.iter().position(|n| n == p) {
                        i
                    } else {
                        nodes.push(*p);
                        nodes.len() - 1
                    }
                }
            }
        };
        let start = node_of(&mut nodes, from);
        let goal = node_of(&mut nodes, to);

        // Split every edge at the interior nodes sitting on it.
        struct Seg {
            u: usize,
            v: usize,
            edge: EdgeId,
            su: f64,
            sv: f64,
            full: bool,
        }
        let mut segs: Vec<Seg> = Vec::new();
        for e in EDGES {
            let (lo, hi) = e.s_range();
            let (vl, vh) = e.ends();
            let mut cuts: Vec<(f64, usize)> = vec![(lo, vl.index()), (hi, vh.index())];
            for (i, n) in nodes.iter().enumerate() {
                if let SkeletonPoint::Interior { edge, s } = n {
                    if *edge == e {
                        cuts.push((*s, i));
                    }
                }
            }
            cuts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            for w in cuts.windows(2) {
                let ((su, u), (sv, v)) = (w[0], w[1]);
                if su == sv {
                    continue;
                }
                segs.push(Seg { u, v, edge: e, su, sv, full: su == lo && sv == hi });
            }
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for (i, s) in segs.iter().enumerate() {
            adj[s.u].push(i);
            adj[s.v].push(i);
        }

        // Dijkstra on (length, cw full crossings) lexicographic cost.
        #[derive(PartialEq)]
        struct Item {
            len: f64,
            cw: u32,
            node: usize,
        }
        impl Eq for Item {}
        impl Ord for Item {
            fn cmp(&self, other: &Self) -> Ordering {
                other
                    .len
                    .partial_cmp(&self.len)
                    .unwrap()
                    .then(other.cw.cmp(&self.cw))
                    .then(other.node.cmp(&self.node))
            }
        }
        impl PartialOrd for Item {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
        let mut dist = vec![(f64::INFINITY, u32::MAX); nodes.len()];
        let mut prev: Vec<Option<usize>> = vec![None; nodes.len()];
        dist[start] = (0.0, 0);
        let mut heap = BinaryHeap::new();
        heap.push(Item { len: 0.0, cw: 0, node: start });
        while let Some(Item { len, cw, node }) = heap.pop() {
            if (len, cw) > dist[node] {
                continue;
            }
            for &si in &adj[node] {
                let seg = &segs[si];
                let next = if seg.u == node { seg.v } else { seg.u };
                let increasing = seg.u == node;
                let seg_len = 2.0 * (seg.sv - seg.su);
                let cw_cross = seg.full
                    && seg.edge.circle().is_some()
                    && (increasing != seg.edge.ccw_is_increasing());
                let cand = (len + seg_len, cw + u32::from(cw_cross));
                if cand < dist[next] {
                    dist[next] = cand;
                    prev[next] = Some(si);
                    heap.push(Item { len: cand.0, cw: cand.1, node: next });
                }
            }
        }

        // Reconstruct, inserting each traversed segment's midpoint between
        // vertex pairs so parallel circle edges stay pinned to the choice
        // the tie-break made.
        let mut hops: Vec<usize> = Vec::new();
        let mut cur = goal;
        while cur != start {
            let si = prev[cur].expect("skeleton is connected");
            hops.push(si);
            let seg = &segs[si];
            cur = if seg.u == cur { seg.v } else { seg.u };
        }
        hops.reverse();
        let mut waypoints = vec![nodes[start]];
        let mut at = start;
        for si in hops {
            let seg = &segs[si];
            let next = if seg.u == at { seg.v } else { seg.u };
            if nodes[at].is_vertex() && nodes[next].is_vertex() {
                waypoints.push(SkeletonPoint::Interior {
                    edge: seg.edge,
                    s: (seg.su + seg.sv) / 2.0,
                });
            }
            waypoints.push(nodes[next]);
            at = next;
        }
        dedup_waypoints(&mut waypoints);
        waypoints
    }

    /// A common edge carrying both points, with their parameters on it.
    pub fn common_edge(&self, p: &SkeletonPoint, q: &SkeletonPoint) -> Option<(EdgeId, f64, f64)> {
        for (ep, sp) in p.placements() {
            for (eq, sq) in q.placements() {
                if ep == eq {
                    return Some((ep, sp, sq));
                }
            }
        }
        None
    }

    /// L1 length of a waypoint path (consecutive waypoints must share an edge).
    pub fn route_length(&self, waypoints: &[SkeletonPoint]) -> f64 {
        waypoints
            .windows(2)
            .map(|w| {
                let (_, sp, sq) = self
                    .common_edge(&w[0], &w[1])
                    .expect("consecutive waypoints share an edge");
                2.0 * (sq - sp).abs()
            })
            .sum()
    }

    /// Sequence of (edge, +1/-1 direction in `s`) traversed by a route.
    pub fn route_signature(&self, waypoints: &[SkeletonPoint]) -> Vec<(EdgeId, i8)> {
        waypoints
            .windows(2)
            .filter_map(|w| {
                let (e, sp, sq) = self.common_edge(&w[0], &w[1])?;
                if sp == sq {
                    None
                } else {
                    Some((e, if sq > sp { 1 } else { -1 }))
                }
            })
            .collect()
    }

    /// JSON-friendly dump: vertices, edges, and 33 sampled embeddings per edge.
    pub fn dump(&self) -> SkeletonDump {
        let vertices = VERTICES
            .iter()
            .map(|&v| VertexDump { id: v.label(), state: v.state() })
            .collect();
        let edges = EDGES
            .iter()
            .map(|&e| {
                let (lo, hi) = e.s_range();
                let samples = (0..33)
                    .map(|k| e.embed(lo + (hi - lo) * k as f64 / 32.0))
                    .collect();
                EdgeDump {
                    id: e.label(),
                    endpoints: [e.ends().0.label(), e.ends().1.label()],
                    length: e.length(),
                    samples,
                }
            })
            .collect();
        SkeletonDump { vertices, edges, b1: self.b1() }
    }
}

fn dedup_waypoints(waypoints: &mut Vec<SkeletonPoint>) {
    waypoints.dedup_by(|a, b| a == b);
}

/// The parallel edge that the counterclockwise rule assigns to a full
/// vertex-to-vertex circle crossing.
pub fn ccw_crossing_edge(fromv: VertexId, tov: VertexId) -> Option<EdgeId> {
    for e in EDGES {
        if e.circle().is_none() {
            continue;
        }
        let (lo_v, hi_v) = e.ends();
        let incr = e.ccw_is_increasing();
        let (ccw_from, ccw_to) = if incr { (lo_v, hi_v) } else { (hi_v, lo_v) };
        if ccw_from == fromv && ccw_to == tov {
            return Some(e);
        }
    }
    None
}

#[derive(Debug, Serialize)]
pub struct VertexDump {
    pub id: &'static str,
    pub state: ConfigState,
}

#[derive(Debug, Serialize)]
pub struct EdgeDump {
    pub id: &'static str,
    pub endpoints: [&'static str; 2],
    pub length: f64,
    pub samples: Vec<ConfigState>,
}

#[derive(Debug, Serialize)]
pub struct SkeletonDump {
    pub vertices: Vec<VertexDump>,
    pub edges: Vec<EdgeDump>,
    pub b1: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: SpaceKind = SpaceKind::Lollipop;
    const I: fn(f64) -> PhysPoint = PhysPoint::interval;
    const C: fn(f64) -> PhysPoint = PhysPoint::circle;

    fn st(a: PhysPoint, b: PhysPoint) -> ConfigState {
        ConfigState::new(L, a, b).unwrap()
    }

    #[test]
    fn config_state_rejects_collisions() {
        assert!(matches!(
            ConfigState::new(L, I(0.3), I(0.3)),
            Err(SpaceError::CollidingState(_))
        ));
        // Junction aliases collide after canonicalization.
        assert!(ConfigState::new(L, I(1.0), C(0.0)).is_err());
    }

    #[test]
    fn flat_blocks() {
        assert_eq!(to_flat(&st(I(0.2), C(0.7))), FlatCoord { block: Block::IC, u: 0.2, v: 0.7 });
        assert_eq!(to_flat(&st(C(0.1), C(0.9))), FlatCoord { block: Block::CC, u: 0.1, v: 0.9 });
        assert_eq!(to_flat(&st(I(0.3), I(0.8))), FlatCoord { block: Block::II, u: 0.3, v: 0.8 });
        let f = to_flat(&st(C(0.1), I(0.6)));
        assert_eq!(from_flat(&f), st(C(0.1), I(0.6)));
    }

    #[test]
    fn graph_shape() {
        let g = SkeletonGraph::build();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.b1(), 3);
    }

    #[test]
    fn embedded_points_sit_on_the_skeleton() {
        let g = SkeletonGraph::build();
        for e in EDGES {
            let (lo, hi) = e.s_range();
            for k in 0..=1000 {
                let s = lo + (hi - lo) * k as f64 / 1000.0;
                let state = e.embed(s);
                assert!(
                    (state.separation(L) - HALF_UNIT).abs() <= 1e-12,
                    "{} at s={s}: separation {}",
                    e.label(),
                    state.separation(L)
                );
            }
            // Endpoint embeddings match the vertex states.
            let (vl, vh) = e.ends();
            assert_eq!(g.embed(&SkeletonPoint::on_edge(e, lo)), vl.state());
            assert_eq!(g.embed(&SkeletonPoint::on_edge(e, hi)), vh.state());
        }
    }

    #[test]
    fn locate_examples() {
        let g = SkeletonGraph::build();
        assert_eq!(
            g.locate(&st(I(0.75), C(0.25)), 1e-9).unwrap(),
            SkeletonPoint::Interior { edge: EdgeId::S1a, s: 0.75 }
        );
        assert_eq!(
            g.locate(&st(C(0.25), C(0.75)), 1e-9).unwrap(),
            SkeletonPoint::Interior { edge: EdgeId::S2a, s: 0.25 }
        );
        assert!(matches!(
            g.locate(&st(I(0.2), I(0.3)), 1e-9),
            Err(SkeletonError::NotOnSkeleton { .. })
        ));
        // Vertex states canonicalize to vertex ids regardless of block.
        for v in VERTICES {
            assert_eq!(g.locate(&v.state(), 1e-9).unwrap(), SkeletonPoint::Vertex(v));
        }
    }

    #[test]
    fn route_end_to_end_is_ccw_and_length_five() {
        let g = SkeletonGraph::build();
        let e1 = SkeletonPoint::Vertex(VertexId::E1);
        let e2 = SkeletonPoint::Vertex(VertexId::E2);
        let route = g.route(&e1, &e2, false).unwrap();
        assert!((g.route_length(&route) - 5.0).abs() < 1e-12);
        let sig = g.route_signature(&route);
        let mut edges: Vec<EdgeId> = sig.iter().map(|(e, _)| *e).collect();
        edges.dedup();
        assert_eq!(
            edges,
            vec![EdgeId::I1, EdgeId::S1a, EdgeId::S2a, EdgeId::S3b, EdgeId::I2]
        );
        // Every circle crossing is ccw: S1a increasing, S2a increasing, S3b decreasing.
        for (e, d) in sig {
            if e.circle().is_some() {
                let ccw = (d > 0) == e.ccw_is_increasing();
                assert!(ccw, "{} traversed clockwise", e.label());
            }
        }
    }

    #[test]
    fn route_trivial_and_ccw_arc() {
        let g = SkeletonGraph::build();
        let p = SkeletonPoint::Interior { edge: EdgeId::S2a, s: 0.2 };
        assert_eq!(g.route(&p, &p, false).unwrap(), vec![p]);

        // Counterclockwise arc to the antipode within the second circle.
        let q = SkeletonPoint::Interior { edge: EdgeId::S2b, s: 0.7 };
        let arc = g.route(&p, &q, true).unwrap();
        assert!((g.route_length(&arc) - 1.0).abs() < 1e-12);
        assert_eq!(arc[0], p);
        assert!(arc.contains(&SkeletonPoint::Vertex(VertexId::V3)));
        assert!(!arc.contains(&SkeletonPoint::Vertex(VertexId::V2)));
        assert_eq!(*arc.last().unwrap(), q);

        // The shortest route between antipodes would tie; the ccw arc is the
        // contract for swapped states, and the cw arc is rejected implicitly
        // because the caller chooses the mode.
        let mismatch = g.route(&p, &SkeletonPoint::Vertex(VertexId::E1), true);
        assert!(matches!(mismatch, Err(SkeletonError::RegionMismatch(_))));
    }

    #[test]
    fn vertex_crossings_use_ccw_parallel_edges() {
        assert_eq!(ccw_crossing_edge(VertexId::V1, VertexId::V2), Some(EdgeId::S1a));
        assert_eq!(ccw_crossing_edge(VertexId::V2, VertexId::V1), Some(EdgeId::S1b));
        assert_eq!(ccw_crossing_edge(VertexId::V2, VertexId::V3), Some(EdgeId::S2a));
        assert_eq!(ccw_crossing_edge(VertexId::V3, VertexId::V2), Some(EdgeId::S2b));
        assert_eq!(ccw_crossing_edge(VertexId::V4, VertexId::V3), Some(EdgeId::S3a));
        assert_eq!(ccw_crossing_edge(VertexId::V3, VertexId::V4), Some(EdgeId::S3b));
    }

    #[test]
    fn route_validity_and_half_separation() {
        let g = SkeletonGraph::build();
        let from = SkeletonPoint::Interior { edge: EdgeId::I1, s: 0.2 };
        let to = SkeletonPoint::Interior { edge: EdgeId::S3a, s: 0.8 };
        let route = g.route(&from, &to, false).unwrap();
        for w in route.windows(2) {
            let (e, sp, sq) = g.common_edge(&w[0], &w[1]).expect("adjacent waypoints");
            for k in 0..=16 {
                let s = sp + (sq - sp) * k as f64 / 16.0;
                let state = e.embed(s);
                assert!((state.separation(L) - HALF_UNIT).abs() <= 1e-9);
            }
        }
    }
}
