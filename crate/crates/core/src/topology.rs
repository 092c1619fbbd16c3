//! Full Steiner topologies encoded as edge-split vectors.
//!
//! A topology over N terminals is grown from a root star (terminals 0, 1, 2
//! joined to Steiner point S0 by edges 1, 2, 3). The i-th growth step splits
//! an existing edge t_i, inserting Steiner point S_i together with the next
//! unused terminal i+2. The vector (t_1, ..., t_k) therefore identifies the
//! topology completely, and every prefix is itself a valid partial topology.
//!
//! Edge indices follow fixed rules so that equal vectors rebuild identical
//! trees regardless of N: when edge t with extremities P1, P2 (ordered by
//! global index, terminals before Steiner points) is split by S_i, the edge
//! P1-S_i keeps index t, P2-S_i becomes 2i+3, and the terminal edge gets
//! 2i+2. Global index of S_i is N+i.

use crate::geometry::{dist, Point};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Global node index: terminals are 0..N, Steiner point S_i is N+i.
pub type NodeId = usize;

/// Marker for "no edge" in the terminal edge table.
const NO_EDGE: usize = usize::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    /// Fewer than three input points.
    #[error("a topology needs at least 3 terminals")]
    TooFewPoints,
    /// Input points do not share one dimension.
    #[error("input points have mixed dimensions")]
    DimensionMismatch,
    /// Edge index out of range for the current growth step.
    #[error("edge {0} does not exist at this growth step")]
    NoSuchEdge(usize),
    /// All terminals are already attached.
    #[error("no unused terminal remains to attach")]
    NoMoreRegularPoints,
    /// The requested Steiner pair shares no edge.
    #[error("Steiner points S{0} and S{1} are not adjacent")]
    NotAdjacent(usize, usize),
    /// No insertion record exists for the requested pair.
    #[error("no triplet recorded for S{0} at S{1}")]
    NoTriplet(usize, usize),
    /// Reverse derivation of a vector failed (internal consistency error).
    #[error("could not reconstruct a vector for the rewired tree")]
    ReconstructionFailed,
}

/// An edge-split vector, printed and parsed as dash-joined indices
/// ("3-5-3-9-11-7-7"; the root topology is the empty string).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TopologyVector(pub Vec<usize>);

impl TopologyVector {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for TopologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "-")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for TopologyVector {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(TopologyVector(Vec::new()));
        }
        s.split('-')
            .map(|tok| tok.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map(TopologyVector)
    }
}

/// Insertion record: when S_i was inserted onto an edge with Steiner
/// extremity `anchor`, these were the anchor's two other incident edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triplet {
    pub anchor: NodeId,
    pub edges: [usize; 2],
}

/// One candidate rewiring of a collided adjacent Steiner pair (S_i, S_h):
/// S_i trades its free branch for one of S_h's two other branches.
#[derive(Debug, Clone)]
pub struct Reorganization {
    /// Vector of the rewired topology.
    pub vector: TopologyVector,
    /// S_i's two neighbors other than S_h after the exchange.
    pub si_pair: [NodeId; 2],
    /// S_h's two neighbors other than S_i after the exchange.
    pub sh_pair: [NodeId; 2],
}

/// A (partial or full) topology over a fixed terminal set, carrying node
/// positions. Terminals keep the input coordinates; Steiner positions start
/// at perturbed centroids and are refined by the optimizer.
#[derive(Debug, Clone)]
pub struct TopologyTree {
    n: usize,
    dim: usize,
    /// Flat positions, node-major: terminal g at g*dim, S_i at (n+i)*dim.
    positions: Vec<f64>,
    steiner_count: usize,
    /// Edge index -> endpoints; slot 0 unused.
    edges: Vec<[NodeId; 2]>,
    /// Steiner ordinal -> neighbor globals, parallel to `sedge`.
    snbr: Vec<[NodeId; 3]>,
    sedge: Vec<[usize; 3]>,
    /// Terminal -> its single incident edge (NO_EDGE when unattached).
    redge: Vec<usize>,
    triplets: Vec<Vec<Triplet>>,
    vector: Vec<usize>,
    bbox_diam: f64,
    coord_scale: f64,
}

/// Number of full topologies over n terminals: (2n-5)!! for n >= 3.
pub fn count_full_topologies(n: usize) -> u128 {
    if n < 3 {
        return 0;
    }
    let mut count: u128 = 1;
    let mut factor: u128 = 3;
    for _ in 0..n.saturating_sub(3) {
        count *= factor;
        factor += 2;
    }
    count
}

/// Root topology: terminals 0, 1, 2 joined to S0 by edges 1, 2, 3.
pub fn root_tree(points: &[Point]) -> Result<TopologyTree, TopologyError> {
    if points.len() < 3 {
        return Err(TopologyError::TooFewPoints);
    }
    let dim = points[0].dim();
    if points.iter().any(|p| p.dim() != dim) {
        return Err(TopologyError::DimensionMismatch);
    }
    let n = points.len();
    let mut positions = Vec::with_capacity((2 * n - 2) * dim);
    for p in points {
        positions.extend_from_slice(p.coords());
    }
    let mut lo = vec![f64::MAX; dim];
    let mut hi = vec![f64::MIN; dim];
    let mut scale = 0.0_f64;
    for p in points {
        for (j, &c) in p.coords().iter().enumerate() {
            lo[j] = lo[j].min(c);
            hi[j] = hi[j].max(c);
            scale = scale.max(c.abs());
        }
    }
    let bbox_diam = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| (b - a) * (b - a))
        .sum::<f64>()
        .sqrt();
    let mut redge = vec![NO_EDGE; n];
    redge[0] = 1;
    redge[1] = 2;
    redge[2] = 3;
    let mut tree = TopologyTree {
        n,
        dim,
        positions,
        steiner_count: 1,
        edges: vec![[NO_EDGE, NO_EDGE], [0, n], [1, n], [2, n]],
        snbr: vec![[0, 1, 2]],
        sedge: vec![[1, 2, 3]],
        redge,
        triplets: vec![Vec::new()],
        vector: Vec::new(),
        bbox_diam,
        coord_scale: scale.max(bbox_diam),
    };
    tree.positions.resize((n + 1) * dim, 0.0);
    tree.init_steiner_position(0, [0, 1, 2]);
    Ok(tree)
}

/// Build the topology for `vector` from scratch.
pub fn build_tree(points: &[Point], vector: &[usize]) -> Result<TopologyTree, TopologyError> {
    let mut tree = root_tree(points)?;
    for &t in vector {
        tree.merge_edge(t)?;
    }
    Ok(tree)
}

impl TopologyTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn steiner_count(&self) -> usize {
        self.steiner_count
    }

    /// Terminals attached so far (the first `steiner_count + 2` inputs).
    pub fn used_terminals(&self) -> usize {
        self.steiner_count + 2
    }

    pub fn is_full(&self) -> bool {
        self.steiner_count == self.n - 2
    }

    pub fn vector(&self) -> TopologyVector {
        TopologyVector(self.vector.clone())
    }

    pub fn vector_slice(&self) -> &[usize] {
        &self.vector
    }

    /// Largest valid edge index in the current tree.
    pub fn edge_count(&self) -> usize {
        2 * self.steiner_count + 1
    }

    /// Number of split choices for the next growth step.
    pub fn child_count(&self) -> usize {
        if self.is_full() {
            0
        } else {
            self.edge_count()
        }
    }

    pub fn edge_endpoints(&self, e: usize) -> [NodeId; 2] {
        self.edges[e]
    }

    pub fn steiner_neighbors(&self, ordinal: usize) -> [NodeId; 3] {
        self.snbr[ordinal]
    }

    pub fn triplets(&self, ordinal: usize) -> &[Triplet] {
        &self.triplets[ordinal]
    }

    pub fn is_steiner(&self, g: NodeId) -> bool {
        g >= self.n
    }

    pub fn position(&self, g: NodeId) -> &[f64] {
        &self.positions[g * self.dim..(g + 1) * self.dim]
    }

    pub(crate) fn position_mut(&mut self, g: NodeId) -> &mut [f64] {
        &mut self.positions[g * self.dim..(g + 1) * self.dim]
    }

    pub fn steiner_position(&self, ordinal: usize) -> &[f64] {
        self.position(self.n + ordinal)
    }

    pub fn set_steiner_position(&mut self, ordinal: usize, coords: &[f64]) {
        let g = self.n + ordinal;
        self.position_mut(g).copy_from_slice(coords);
    }

    /// Copy every node position from a tree of identical shape counts.
    pub fn copy_positions_from(&mut self, other: &TopologyTree) {
        assert_eq!(self.n, other.n);
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.steiner_count, other.steiner_count);
        self.positions.copy_from_slice(&other.positions);
    }

    /// Diameter of the terminal bounding box.
    pub fn bbox_diam(&self) -> f64 {
        self.bbox_diam
    }

    /// Magnitude scale of the instance (max |coordinate|, at least the
    /// bounding box diameter); used for machine-precision thresholds.
    pub fn coord_scale(&self) -> f64 {
        self.coord_scale
    }

    pub fn tree_length(&self) -> f64 {
        let mut len = 0.0;
        for e in 1..=self.edge_count() {
            let [u, v] = self.edges[e];
            len += dist(self.position(u), self.position(v));
        }
        len
    }

    /// Edges not longer than `eps_abs`, as (smaller, larger) global pairs.
    pub fn degenerate_edges(&self, eps_abs: f64) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for e in 1..=self.edge_count() {
            let [u, v] = self.edges[e];
            if dist(self.position(u), self.position(v)) <= eps_abs {
                out.push((u.min(v), u.max(v)));
            }
        }
        out
    }

    fn init_steiner_position(&mut self, ordinal: usize, nbrs: [NodeId; 3]) {
        let d = self.dim;
        let mut centroid = vec![0.0; d];
        for nb in nbrs {
            let p = self.position(nb);
            for j in 0..d {
                centroid[j] += p[j] / 3.0;
            }
        }
        // Deterministic nudge off the centroid so symmetric instances do not
        // start update sweeps from exactly coincident Steiner positions.
        centroid[ordinal % d] += 1e-6 * self.bbox_diam;
        self.set_steiner_position(ordinal, &centroid);
    }

    fn steiner_slot(&self, ordinal: usize, edge: usize) -> usize {
        self.sedge[ordinal]
            .iter()
            .position(|&e| e == edge)
            .expect("edge must be incident to the Steiner point")
    }

    /// Split edge `t`, inserting the next Steiner point together with the
    /// next unused terminal.
    pub fn merge_edge(&mut self, t: usize) -> Result<(), TopologyError> {
        let i = self.steiner_count;
        if t == 0 || t > self.edge_count() {
            return Err(TopologyError::NoSuchEdge(t));
        }
        let r = i + 2;
        if r >= self.n {
            return Err(TopologyError::NoMoreRegularPoints);
        }
        let s = self.n + i;
        let [u, v] = self.edges[t];
        let (p1, p2) = if u < v { (u, v) } else { (v, u) };

        // Record insertion triplets before rewiring: for each Steiner
        // extremity, its two other incident edges.
        let mut recs = Vec::new();
        for p in [p1, p2] {
            if p >= self.n {
                let ord = p - self.n;
                let mut others = self.sedge[ord]
                    .iter()
                    .copied()
                    .filter(|&e| e != t)
                    .collect::<Vec<_>>();
                others.sort_unstable();
                recs.push(Triplet {
                    anchor: p,
                    edges: [others[0], others[1]],
                });
            }
        }

        let e_term = 2 * i + 2;
        let e_far = 2 * i + 3;
        self.edges[t] = [p1, s];
        self.edges.push([r, s]);
        self.edges.push([p2, s]);
        debug_assert_eq!(self.edges.len() - 1, e_far);

        if p1 >= self.n {
            let ord = p1 - self.n;
            let slot = self.steiner_slot(ord, t);
            self.snbr[ord][slot] = s;
        }
        if p2 >= self.n {
            let ord = p2 - self.n;
            let slot = self.steiner_slot(ord, t);
            self.snbr[ord][slot] = s;
            self.sedge[ord][slot] = e_far;
        } else {
            self.redge[p2] = e_far;
        }
        self.redge[r] = e_term;
        self.snbr.push([p1, p2, r]);
        self.sedge.push([t, e_far, e_term]);
        self.triplets.push(recs);
        self.vector.push(t);
        self.steiner_count += 1;
        self.positions.resize((self.n + self.steiner_count) * self.dim, 0.0);
        self.init_steiner_position(i, [p1, p2, r]);
        Ok(())
    }

    /// Neighbor lists over global ids (unattached terminals empty).
    fn adjacency(&self) -> Vec<Vec<NodeId>> {
        let mut adj = vec![Vec::new(); self.n + self.steiner_count];
        for e in 1..=self.edge_count() {
            let [u, v] = self.edges[e];
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Whether `target` lies in the component of `start` when `removed` is
    /// deleted from the tree.
    fn branch_contains(
        adj: &[Vec<NodeId>],
        removed: NodeId,
        start: NodeId,
        target: NodeId,
    ) -> bool {
        if start == target {
            return true;
        }
        let mut stack = vec![start];
        let mut seen = vec![removed, start];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if w == target {
                    return true;
                }
                if !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        false
    }

    /// The two candidate rewirings for a collided adjacent pair (S_i, S_h).
    ///
    /// S_i's free neighbor (the one that is neither S_h nor on the branch
    /// holding S_i's own terminal i+2) is exchanged with one of S_h's two
    /// neighbors other than S_i. Vectors are recovered by peeling the
    /// rewired adjacency in descending ordinal order and rebuilding.
    pub fn reorganizations(
        &self,
        i: usize,
        h: usize,
    ) -> Result<[Reorganization; 2], TopologyError> {
        let (i, h) = if i > h { (i, h) } else { (h, i) };
        if i >= self.steiner_count || i == h {
            return Err(TopologyError::NotAdjacent(i, h));
        }
        let si = self.n + i;
        let sh = self.n + h;
        if !self.snbr[i].contains(&sh) {
            return Err(TopologyError::NotAdjacent(i, h));
        }
        if !self.triplets[i].iter().any(|tr| tr.anchor == sh) {
            return Err(TopologyError::NoTriplet(i, h));
        }

        let adj = self.adjacency();
        let own_terminal = i + 2;
        let others: Vec<NodeId> = self.snbr[i].iter().copied().filter(|&g| g != sh).collect();
        let x = if Self::branch_contains(&adj, si, others[0], own_terminal) {
            others[1]
        } else {
            debug_assert!(Self::branch_contains(&adj, si, others[1], own_terminal));
            others[0]
        };
        let kept_i: NodeId = *others.iter().find(|&&g| g != x).unwrap();
        let swaps: Vec<NodeId> = self.snbr[h].iter().copied().filter(|&g| g != si).collect();

        let mut out = Vec::with_capacity(2);
        for idx in 0..2 {
            let w = swaps[idx];
            let kept_h = swaps[1 - idx];
            let mut rew = adj.clone();
            let replace = |lists: &mut Vec<Vec<NodeId>>, at: NodeId, from: NodeId, to: NodeId| {
                let slot = lists[at].iter().position(|&g| g == from).unwrap();
                lists[at][slot] = to;
            };
            replace(&mut rew, si, x, w);
            replace(&mut rew, sh, w, x);
            replace(&mut rew, x, si, sh);
            replace(&mut rew, w, sh, si);
            let vector = self.vector_from_adjacency(&rew)?;
            out.push(Reorganization {
                vector: TopologyVector(vector),
                si_pair: [kept_i, w],
                sh_pair: [kept_h, x],
            });
        }
        let b = out.pop().unwrap();
        let a = out.pop().unwrap();
        Ok([a, b])
    }

    /// Recover the edge-split vector realizing `adj` (a rewired adjacency of
    /// this tree's nodes): peel S_k..S_1, each of which must sit next to its
    /// own terminal, then replay the recorded reconnections forward.
    fn vector_from_adjacency(&self, adj: &[Vec<NodeId>]) -> Result<Vec<usize>, TopologyError> {
        let k = self.steiner_count;
        let mut work: Vec<Vec<NodeId>> = adj.to_vec();
        let mut rejoin = vec![(0usize, 0usize); k];
        for j in (1..k).rev() {
            let sj = self.n + j;
            let rj = j + 2;
            if !work[sj].contains(&rj) {
                return Err(TopologyError::ReconstructionFailed);
            }
            let rest: Vec<NodeId> = work[sj].iter().copied().filter(|&g| g != rj).collect();
            if rest.len() != 2 {
                return Err(TopologyError::ReconstructionFailed);
            }
            let (p, q) = (rest[0], rest[1]);
            let replace = |lists: &mut Vec<Vec<NodeId>>, at: NodeId, from: NodeId, to: NodeId| {
                let slot = lists[at].iter().position(|&g| g == from).unwrap();
                lists[at][slot] = to;
            };
            replace(&mut work, p, sj, q);
            replace(&mut work, q, sj, p);
            work[sj].clear();
            rejoin[j] = (p.min(q), p.max(q));
        }

        // Replay forward on a structural copy, reading off edge indices.
        let dummy: Vec<Point> = (0..self.n)
            .map(|_| Point::new(vec![0.0, 0.0]).unwrap())
            .collect();
        let mut replay = root_tree(&dummy)?;
        let mut vector = Vec::with_capacity(k - 1);
        for j in 1..k {
            let (p, q) = rejoin[j];
            let t = (1..=replay.edge_count())
                .find(|&e| {
                    let [u, v] = replay.edges[e];
                    (u.min(v), u.max(v)) == (p, q)
                })
                .ok_or(TopologyError::ReconstructionFailed)?;
            replay.merge_edge(t)?;
            vector.push(t);
        }
        Ok(vector)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(n: usize) -> Vec<Point> {
        // Generic positions on a parabola-like curve; geometry is irrelevant
        // for structural tests but must be valid.
        (0..n)
            .map(|i| Point::new(vec![i as f64, (i * i) as f64 * 0.1]).unwrap())
            .collect()
    }

    fn sorted(mut v: Vec<NodeId>) -> Vec<NodeId> {
        v.sort_unstable();
        v
    }

    #[test]
    fn root_tree_shape() {
        let t = root_tree(&pts(10)).unwrap();
        assert_eq!(t.steiner_count(), 1);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.edge_endpoints(1), [0, 10]);
        assert_eq!(t.edge_endpoints(2), [1, 10]);
        assert_eq!(t.edge_endpoints(3), [2, 10]);
        assert_eq!(sorted(t.steiner_neighbors(0).to_vec()), vec![0, 1, 2]);
        assert_eq!(root_tree(&pts(2)).unwrap_err(), TopologyError::TooFewPoints);
    }

    #[test]
    fn merge_edge_follows_indexing_rules() {
        let mut t = root_tree(&pts(5)).unwrap();
        t.merge_edge(3).unwrap();
        // Edge 3 ran from terminal 2 to S0; terminal keeps the old index.
        assert_eq!(t.edge_endpoints(3), [2, 6]);
        assert_eq!(t.edge_endpoints(5), [5, 6]);
        assert_eq!(t.edge_endpoints(4), [3, 6]);
        assert_eq!(sorted(t.steiner_neighbors(1).to_vec()), vec![2, 3, 5]);
        assert_eq!(sorted(t.steiner_neighbors(0).to_vec()), vec![0, 1, 6]);

        t.merge_edge(5).unwrap();
        // Edge 5 ran from S0 to S1; S0 keeps index 5, S1 side becomes 7.
        assert_eq!(t.edge_endpoints(5), [5, 7]);
        assert_eq!(t.edge_endpoints(7), [6, 7]);
        assert_eq!(t.edge_endpoints(6), [4, 7]);
        assert_eq!(sorted(t.steiner_neighbors(2).to_vec()), vec![4, 5, 6]);
        assert_eq!(t.vector().to_string(), "3-5");
        // Both extremities of edge 5 were Steiner points, so S2 carries two
        // insertion records.
        let recs = t.triplets(2);
        assert_eq!(recs.len(), 2);
        assert!(recs.iter().any(|r| r.anchor == 5 && r.edges == [1, 2]));
        assert!(recs.iter().any(|r| r.anchor == 6 && r.edges == [3, 4]));

        assert_eq!(t.merge_edge(99).unwrap_err(), TopologyError::NoSuchEdge(99));
        let mut full = build_tree(&pts(4), &[1]).unwrap();
        assert!(full.is_full());
        assert_eq!(
            full.merge_edge(1).unwrap_err(),
            TopologyError::NoMoreRegularPoints
        );
    }

    #[test]
    fn build_tree_matches_incremental_growth() {
        let v = [3usize, 5, 3, 9, 11, 7, 7];
        let t = build_tree(&pts(10), &v).unwrap();
        assert_eq!(t.vector().as_slice(), &v);
        assert!(t.is_full());
        // Spot-check adjacency derived by hand for this vector.
        let n = 10;
        assert_eq!(sorted(t.steiner_neighbors(0).to_vec()), vec![0, 1, n + 2]);
        assert_eq!(
            sorted(t.steiner_neighbors(4).to_vec()),
            vec![6, n + 1, n + 5]
        );
        assert_eq!(
            sorted(t.steiner_neighbors(7).to_vec()),
            vec![9, n + 1, n + 6]
        );
        // S4 was inserted onto the edge S1-S3 (index 9): both anchors
        // recorded with their other two edges at that moment.
        let recs = t.triplets(4);
        assert_eq!(recs.len(), 2);
        assert!(recs.iter().any(|r| r.anchor == n + 1 && r.edges == [4, 7]));
        assert!(recs.iter().any(|r| r.anchor == n + 3 && r.edges == [3, 8]));
    }

    #[test]
    fn count_full_topologies_small_values() {
        assert_eq!(count_full_topologies(3), 1);
        assert_eq!(count_full_topologies(4), 3);
        assert_eq!(count_full_topologies(5), 15);
        assert_eq!(count_full_topologies(6), 105);
        assert_eq!(count_full_topologies(7), 945);
        assert_eq!(count_full_topologies(9), 135135);
    }

    #[test]
    fn child_count_tracks_edge_count() {
        let mut t = root_tree(&pts(6)).unwrap();
        assert_eq!(t.child_count(), 3);
        t.merge_edge(1).unwrap();
        assert_eq!(t.child_count(), 5);
        t.merge_edge(4).unwrap();
        assert_eq!(t.child_count(), 7);
        t.merge_edge(7).unwrap();
        assert_eq!(t.child_count(), 0);
    }

    #[test]
    fn vector_round_trips_text_form() {
        let v: TopologyVector = "3-5-3-9-11-7-7".parse().unwrap();
        assert_eq!(v.as_slice(), &[3, 5, 3, 9, 11, 7, 7]);
        assert_eq!(v.to_string(), "3-5-3-9-11-7-7");
        let empty: TopologyVector = "".parse().unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.to_string(), "");
    }

    #[test]
    fn reorganizations_match_hand_derived_exchange() {
        let t = build_tree(&pts(10), &[3, 5, 3, 9, 11, 7, 7]).unwrap();
        let [a, b] = t.reorganizations(4, 1).unwrap();
        let mut got = vec![a.vector.to_string(), b.vector.to_string()];
        got.sort();
        assert_eq!(got, vec!["3-5-3-4-9-7-7", "3-5-3-7-9-11-15"]);
    }

    #[test]
    fn reorganizations_reject_non_adjacent_pairs() {
        let t = build_tree(&pts(5), &[3, 5]).unwrap();
        // S1 and S0 are separated by S2 in this tree.
        assert_eq!(
            t.reorganizations(1, 0).unwrap_err(),
            TopologyError::NotAdjacent(1, 0)
        );
    }

    #[test]
    fn reorganizations_of_smallest_tree() {
        let t = build_tree(&pts(4), &[1]).unwrap();
        let [a, b] = t.reorganizations(1, 0).unwrap();
        let mut got = vec![a.vector.to_string(), b.vector.to_string()];
        got.sort();
        assert_eq!(got, vec!["2", "3"]);
    }

    #[test]
    fn reorganization_keeps_exchanged_neighbors() {
        // For the 4-terminal tree (1): S1 holds {0, 3}, S0 holds {1, 2}.
        // Each rewiring hands S1's free neighbor 0 to S0 and takes 1 or 2.
        let t = build_tree(&pts(4), &[1]).unwrap();
        let [a, b] = t.reorganizations(1, 0).unwrap();
        for r in [&a, &b] {
            assert!(r.sh_pair.contains(&0));
            assert!(r.si_pair.contains(&3));
        }
        let mut taken: Vec<NodeId> = [&a, &b]
            .iter()
            .map(|r| *r.si_pair.iter().find(|&&g| g != 3).unwrap())
            .collect();
        taken.sort_unstable();
        assert_eq!(taken, vec![1, 2]);
    }
}
