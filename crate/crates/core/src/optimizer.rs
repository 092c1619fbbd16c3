//! Fixed-point optimization of Steiner point positions for a fixed topology.
//!
//! Each iteration replaces every Steiner point by the Fermat point of its
//! three neighbors. The default mode updates all points simultaneously from
//! the previous iterate (Jacobi); if the total length ever increases beyond
//! slack the tree is restarted with in-place sweeps (Gauss-Seidel), which
//! are monotone.
//!
//! Degenerate optima need one extension: two exactly coincident adjacent
//! Steiner points pin each other (each is the wide-angle Fermat solution of
//! the other) even when the merged junction should keep sliding. Coincident
//! adjacent clusters whose members are all individually pinned are therefore
//! moved jointly by one safeguarded Weiszfeld step towards the geometric
//! median of their outside neighbors, which is monotone as well.

use crate::geometry::{dist, fermat_into};
use crate::topology::TopologyTree;

/// Tuning knobs for [`optimize`].
#[derive(Debug, Clone)]
pub struct OptimizeOptions {
    /// Relative convergence threshold: stop when the error figure drops
    /// below `conv_eps * length`. The error figure has an f64 noise floor
    /// around 1e-8 relative, so the default is effectively "machine
    /// precision": the stall criterion (no Steiner point moved more than a
    /// few ulps) ends the iteration first.
    pub conv_eps: f64,
    /// Collision threshold relative to the terminal bounding box diameter.
    pub collision_eps: f64,
    /// Iteration budget per update mode (the sequential restart gets a
    /// fresh budget).
    pub max_iters: usize,
    /// Whether to stop early when two adjacent Steiner points collide.
    pub collision_detection: bool,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            conv_eps: 1e-10,
            collision_eps: 1e-4,
            max_iters: 1000,
            collision_detection: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeKind {
    Converged,
    CollisionDetected,
    IterationLimit,
}

#[derive(Debug, Clone)]
pub struct OptimizeOutcome {
    pub kind: OutcomeKind,
    /// Tree length at exit.
    pub length: f64,
    /// Total update sweeps performed (both modes).
    pub iterations: usize,
    /// Colliding pair (i, h), i > h, when `kind` is `CollisionDetected`.
    pub collided_pair: Option<(usize, usize)>,
    /// Whether the Jacobi mode was abandoned for sequential sweeps.
    pub jacobi_fallback: bool,
}

/// Total edge length of the tree at its current positions.
pub fn tree_length(tree: &TopologyTree) -> f64 {
    tree.tree_length()
}

/// Error figure E: the root of the summed positive parts of
/// 2 (xj - xi).(xk - xi) + |xj - xi| |xk - xi| over all neighbor pairs
/// (j, k) of every Steiner point i. Zero exactly when every angle at every
/// Steiner point is at least 120 degrees.
pub fn error_figure(tree: &TopologyTree) -> f64 {
    let d = tree.dim();
    let mut sum = 0.0;
    for i in 0..tree.steiner_count() {
        let xs = tree.steiner_position(i);
        let nb = tree.steiner_neighbors(i);
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let u = tree.position(nb[a]);
            let v = tree.position(nb[b]);
            let mut uv = 0.0;
            let mut uu = 0.0;
            let mut vv = 0.0;
            for j in 0..d {
                let p = u[j] - xs[j];
                let q = v[j] - xs[j];
                uv += p * q;
                uu += p * p;
                vv += q * q;
            }
            let term = 2.0 * uv + (uu * vv).sqrt();
            if term > 0.0 {
                sum += term;
            }
        }
    }
    sum.sqrt()
}

/// One simultaneous (Jacobi) sweep: every Steiner point is replaced by the
/// Fermat point of its neighbors' pre-sweep positions.
pub fn iterate_once(tree: &mut TopologyTree) {
    Optimizer::new().sweep_jacobi(tree, 0.0, false);
}

/// Smallest colliding adjacent Steiner pair: (i, h) with i > h, S_i and S_h
/// adjacent and closer than `eps_abs`; smallest i first, ties by smallest h.
pub fn detect_collision(tree: &TopologyTree, eps_abs: f64) -> Option<(usize, usize)> {
    detect_collision_suppressed(tree, eps_abs, &[])
}

fn detect_collision_suppressed(
    tree: &TopologyTree,
    eps_abs: f64,
    suppressed: &[(usize, usize)],
) -> Option<(usize, usize)> {
    let n = tree.n();
    for i in 1..tree.steiner_count() {
        let mut best: Option<usize> = None;
        for &g in &tree.steiner_neighbors(i) {
            if g < n {
                continue;
            }
            let h = g - n;
            if h >= i || suppressed.contains(&(i, h)) {
                continue;
            }
            if dist(tree.steiner_position(i), tree.steiner_position(h)) <= eps_abs {
                best = Some(best.map_or(h, |b: usize| b.min(h)));
            }
        }
        if let Some(h) = best {
            return Some((i, h));
        }
    }
    None
}

/// Optimize with default (empty) collision suppression.
pub fn optimize(tree: &mut TopologyTree, opts: &OptimizeOptions) -> OptimizeOutcome {
    Optimizer::new().optimize_suppressed(tree, opts, &[])
}

/// Optimize while ignoring collisions of the listed pairs ((i, h), i > h).
pub fn optimize_suppressed(
    tree: &mut TopologyTree,
    opts: &OptimizeOptions,
    suppressed: &[(usize, usize)],
) -> OptimizeOutcome {
    Optimizer::new().optimize_suppressed(tree, opts, suppressed)
}

/// Like [`optimize_suppressed`], recording the tree length after every
/// committed sweep (a sequential restart clears the record).
pub fn optimize_traced(
    tree: &mut TopologyTree,
    opts: &OptimizeOptions,
    suppressed: &[(usize, usize)],
    trace: &mut Vec<f64>,
) -> OptimizeOutcome {
    Optimizer::new().optimize_impl(tree, opts, suppressed, Some(trace))
}

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Jacobi,
    Sequential,
}

/// Reusable optimization state; hot paths allocate nothing per sweep.
pub struct Optimizer {
    prev: Vec<f64>,
    next: Vec<f64>,
    init: Vec<f64>,
    n1: Vec<f64>,
    n2: Vec<f64>,
    n3: Vec<f64>,
    ebuf: Vec<f64>,
    fbuf: Vec<f64>,
    uf: Vec<usize>,
    pinned: Vec<bool>,
    seen: Vec<bool>,
    members: Vec<usize>,
}

impl Default for Optimizer {
    fn default() -> Self {
        Self::new()
    }
}

impl Optimizer {
    pub fn new() -> Self {
        Optimizer {
            prev: Vec::new(),
            next: Vec::new(),
            init: Vec::new(),
            n1: Vec::new(),
            n2: Vec::new(),
            n3: Vec::new(),
            ebuf: Vec::new(),
            fbuf: Vec::new(),
            uf: Vec::new(),
            pinned: Vec::new(),
            seen: Vec::new(),
            members: Vec::new(),
        }
    }

    pub fn optimize(&mut self, tree: &mut TopologyTree, opts: &OptimizeOptions) -> OptimizeOutcome {
        self.optimize_suppressed(tree, opts, &[])
    }

    pub fn optimize_suppressed(
        &mut self,
        tree: &mut TopologyTree,
        opts: &OptimizeOptions,
        suppressed: &[(usize, usize)],
    ) -> OptimizeOutcome {
        self.optimize_impl(tree, opts, suppressed, None)
    }

    fn ensure(&mut self, k: usize, d: usize) {
        self.prev.resize(k * d, 0.0);
        self.next.resize(k * d, 0.0);
        self.init.resize(k * d, 0.0);
        self.n1.resize(d, 0.0);
        self.n2.resize(d, 0.0);
        self.n3.resize(d, 0.0);
        self.ebuf.resize(d, 0.0);
        self.fbuf.resize(d, 0.0);
        self.uf.resize(k, 0);
        self.pinned.resize(k, false);
        self.seen.resize(k, false);
    }

    fn optimize_impl(
        &mut self,
        tree: &mut TopologyTree,
        opts: &OptimizeOptions,
        suppressed: &[(usize, usize)],
        mut trace: Option<&mut Vec<f64>>,
    ) -> OptimizeOutcome {
        let k = tree.steiner_count();
        let d = tree.dim();
        self.ensure(k, d);
        let scale = tree.coord_scale();
        let merge_eps = 1e-12 * scale;
        let stall_eps = 32.0 * f64::EPSILON * scale;
        let eps_abs = opts.collision_eps * tree.bbox_diam();
        for i in 0..k {
            self.init[i * d..(i + 1) * d].copy_from_slice(tree.steiner_position(i));
        }
        let init_len = tree.tree_length();
        let mut prev_len = init_len;
        if let Some(tr) = trace.as_deref_mut() {
            tr.clear();
            tr.push(init_len);
        }
        let mut mode = Mode::Jacobi;
        let mut fallback = false;
        let mut total_iters = 0usize;
        let mut phase_iters = 0usize;
        loop {
            let max_move = match mode {
                Mode::Jacobi => self.sweep_jacobi(tree, merge_eps, true),
                Mode::Sequential => self.sweep_sequential(tree, merge_eps),
            };
            total_iters += 1;
            phase_iters += 1;
            let len = tree.tree_length();
            if mode == Mode::Jacobi && len > prev_len + 1e-12 {
                // Oscillation: restart this tree with monotone sweeps.
                for i in 0..k {
                    let from = &self.init[i * d..(i + 1) * d];
                    tree.position_mut(tree.n() + i).copy_from_slice(from);
                }
                mode = Mode::Sequential;
                fallback = true;
                phase_iters = 0;
                prev_len = init_len;
                if let Some(tr) = trace.as_deref_mut() {
                    tr.clear();
                    tr.push(init_len);
                }
                continue;
            }
            prev_len = len;
            if let Some(tr) = trace.as_deref_mut() {
                tr.push(len);
            }
            if opts.collision_detection {
                if let Some(pair) = detect_collision_suppressed(tree, eps_abs, suppressed) {
                    return OptimizeOutcome {
                        kind: OutcomeKind::CollisionDetected,
                        length: len,
                        iterations: total_iters,
                        collided_pair: Some(pair),
                        jacobi_fallback: fallback,
                    };
                }
            }
            // The error figure is blind to a coincident cluster that still
            // has a net pull (all its angle terms vanish), so the E exit
            // additionally requires every cluster to be stationary now.
            let converged = (error_figure(tree) < opts.conv_eps * len
                && self.clusters_stationary(tree, merge_eps, stall_eps))
                || max_move <= stall_eps;
            if converged {
                return OptimizeOutcome {
                    kind: OutcomeKind::Converged,
                    length: len,
                    iterations: total_iters,
                    collided_pair: None,
                    jacobi_fallback: fallback,
                };
            }
            if phase_iters >= opts.max_iters {
                return OptimizeOutcome {
                    kind: OutcomeKind::IterationLimit,
                    length: len,
                    iterations: total_iters,
                    collided_pair: None,
                    jacobi_fallback: fallback,
                };
            }
        }
    }

    /// Copy a node position into one of the neighbor buffers, reading
    /// Steiner positions from `prev` when `from_prev` is set.
    fn load_neighbor(
        buf: &mut [f64],
        tree: &TopologyTree,
        prev: &[f64],
        g: usize,
        d: usize,
        from_prev: bool,
    ) {
        let n = tree.n();
        if from_prev && g >= n {
            let o = g - n;
            buf.copy_from_slice(&prev[o * d..(o + 1) * d]);
        } else {
            buf.copy_from_slice(tree.position(g));
        }
    }

    /// Union-find clusters of adjacent Steiner points closer than
    /// `merge_eps`; returns whether any cluster of size >= 2 exists.
    /// Positions are read from `prev` when `from_prev` is set.
    fn find_clusters(&mut self, tree: &TopologyTree, merge_eps: f64, from_prev: bool) -> bool {
        let k = tree.steiner_count();
        let n = tree.n();
        let d = tree.dim();
        for i in 0..k {
            self.uf[i] = i;
        }
        fn find(uf: &mut [usize], mut a: usize) -> usize {
            while uf[a] != a {
                uf[a] = uf[uf[a]];
                a = uf[a];
            }
            a
        }
        let mut any = false;
        for i in 0..k {
            for &g in &tree.steiner_neighbors(i) {
                if g < n {
                    continue;
                }
                let o = g - n;
                if o >= i {
                    continue;
                }
                let (pi, po) = if from_prev {
                    (
                        &self.prev[i * d..(i + 1) * d],
                        &self.prev[o * d..(o + 1) * d],
                    )
                } else {
                    (tree.steiner_position(i), tree.steiner_position(o))
                };
                if dist(pi, po) <= merge_eps {
                    let (ra, rb) = (find(&mut self.uf, i), find(&mut self.uf, o));
                    if ra != rb {
                        self.uf[ra.max(rb)] = ra.min(rb);
                        any = true;
                    }
                }
            }
        }
        if any {
            for i in 0..k {
                find(&mut self.uf, i);
            }
            // Full path compression so uf[i] is the root for every i.
            for i in 0..k {
                let mut r = i;
                while self.uf[r] != r {
                    r = self.uf[r];
                }
                self.uf[i] = r;
            }
        }
        any
    }

    /// One safeguarded Weiszfeld step for a coincident cluster located at
    /// `y`: a step of the member set towards the geometric median of the
    /// external neighbor positions. Writes the new position into `fbuf` and
    /// returns the step size. `read` maps a global id to its position.
    fn joint_step(
        members: &[usize],
        tree: &TopologyTree,
        prev: &[f64],
        from_prev: bool,
        y: &[f64],
        merge_eps: f64,
        fbuf: &mut [f64],
    ) -> f64 {
        let n = tree.n();
        let d = tree.dim();
        let mut w_sum = 0.0;
        let mut t_point = vec![0.0; d];
        let mut r_vec = vec![0.0; d];
        let mut coincident = 0.0;
        let mut buf = vec![0.0; d];
        for &m in members {
            for &g in &tree.steiner_neighbors(m) {
                if g >= n && members.contains(&(g - n)) {
                    continue;
                }
                Self::load_neighbor(&mut buf, tree, prev, g, d, from_prev);
                let dy = dist(&buf, y);
                if dy <= merge_eps.max(f64::MIN_POSITIVE) {
                    coincident += 1.0;
                    continue;
                }
                w_sum += 1.0 / dy;
                for j in 0..d {
                    t_point[j] += buf[j] / dy;
                    r_vec[j] += (buf[j] - y[j]) / dy;
                }
            }
        }
        if w_sum == 0.0 {
            fbuf.copy_from_slice(y);
            return 0.0;
        }
        for j in 0..d {
            t_point[j] /= w_sum;
        }
        let r = r_vec.iter().map(|v| v * v).sum::<f64>().sqrt();
        if coincident > 0.0 && r <= coincident {
            // Pinned at a terminal: the pull of the free neighbors cannot
            // overcome the kink, so the cluster is already optimal here.
            fbuf.copy_from_slice(y);
            return 0.0;
        }
        let blend = if coincident > 0.0 { coincident / r } else { 0.0 };
        for j in 0..d {
            fbuf[j] = (1.0 - blend) * t_point[j] + blend * y[j];
        }
        dist(fbuf, y)
    }

    /// True when every coincident adjacent cluster of the current positions
    /// is at a local optimum: all members individually pinned and the joint
    /// Weiszfeld step a no-op. Singleton "clusters" are trivially fine.
    fn clusters_stationary(&mut self, tree: &TopologyTree, merge_eps: f64, stall_eps: f64) -> bool {
        let k = tree.steiner_count();
        let d = tree.dim();
        if !self.find_clusters(tree, merge_eps, false) {
            return true;
        }
        for i in 0..k {
            self.seen[i] = false;
        }
        for root in 0..k {
            if self.uf[root] != root || self.seen[root] {
                continue;
            }
            self.members.clear();
            for i in root..k {
                if self.uf[i] == root {
                    self.members.push(i);
                    self.seen[i] = true;
                }
            }
            if self.members.len() < 2 {
                continue;
            }
            for idx in 0..self.members.len() {
                let m = self.members[idx];
                let nb = tree.steiner_neighbors(m);
                Self::load_neighbor(&mut self.n1, tree, &self.prev, nb[0], d, false);
                Self::load_neighbor(&mut self.n2, tree, &self.prev, nb[1], d, false);
                Self::load_neighbor(&mut self.n3, tree, &self.prev, nb[2], d, false);
                fermat_into(&self.n1, &self.n2, &self.n3, &mut self.fbuf, &mut self.ebuf);
                if dist(&self.fbuf, tree.steiner_position(m)) > merge_eps {
                    return false;
                }
            }
            let y: Vec<f64> = tree.steiner_position(root).to_vec();
            let step = Self::joint_step(
                &self.members,
                tree,
                &self.prev,
                false,
                &y,
                merge_eps,
                &mut self.fbuf,
            );
            if step > stall_eps {
                return false;
            }
        }
        true
    }

    /// Simultaneous sweep; `handle_clusters` enables the coincident-cluster
    /// treatment (off for the public single-step operation). Returns the
    /// largest single-point move.
    fn sweep_jacobi(
        &mut self,
        tree: &mut TopologyTree,
        merge_eps: f64,
        handle_clusters: bool,
    ) -> f64 {
        let k = tree.steiner_count();
        let n = tree.n();
        let d = tree.dim();
        self.ensure(k, d);
        for i in 0..k {
            self.prev[i * d..(i + 1) * d].copy_from_slice(tree.steiner_position(i));
        }
        let any_clusters = handle_clusters && self.find_clusters(tree, merge_eps, true);
        // Plain updates for every point, from pre-sweep positions.
        for i in 0..k {
            let nb = tree.steiner_neighbors(i);
            Self::load_neighbor(&mut self.n1, tree, &self.prev, nb[0], d, true);
            Self::load_neighbor(&mut self.n2, tree, &self.prev, nb[1], d, true);
            Self::load_neighbor(&mut self.n3, tree, &self.prev, nb[2], d, true);
            fermat_into(&self.n1, &self.n2, &self.n3, &mut self.fbuf, &mut self.ebuf);
            self.next[i * d..(i + 1) * d].copy_from_slice(&self.fbuf);
        }
        if any_clusters {
            for i in 0..k {
                self.seen[i] = false;
            }
            for root in 0..k {
                if self.uf[root] != root || self.seen[root] {
                    continue;
                }
                self.members.clear();
                for i in root..k {
                    if self.uf[i] == root {
                        self.members.push(i);
                        self.seen[i] = true;
                    }
                }
                if self.members.len() < 2 {
                    continue;
                }
                let all_pinned = self.members.iter().all(|&m| {
                    dist(
                        &self.next[m * d..(m + 1) * d],
                        &self.prev[m * d..(m + 1) * d],
                    ) <= merge_eps
                });
                if !all_pinned {
                    // Members are separating; the plain updates stand.
                    continue;
                }
                let y: Vec<f64> = self.prev[root * d..(root + 1) * d].to_vec();
                Self::joint_step(
                    &self.members,
                    tree,
                    &self.prev,
                    true,
                    &y,
                    merge_eps,
                    &mut self.fbuf,
                );
                for &m in &self.members {
                    self.next[m * d..(m + 1) * d].copy_from_slice(&self.fbuf);
                }
            }
        }
        let mut max_move = 0.0_f64;
        for i in 0..k {
            let to = &self.next[i * d..(i + 1) * d];
            max_move = max_move.max(dist(to, &self.prev[i * d..(i + 1) * d]));
            tree.position_mut(n + i).copy_from_slice(to);
        }
        max_move
    }

    /// Sum of distances from `at` to the non-member neighbors of every
    /// member; the part of the tree length the cluster update can change,
    /// apart from internal edges, which a joint move never lengthens.
    fn cluster_star(members: &[usize], tree: &TopologyTree, at: Option<&[f64]>) -> f64 {
        let n = tree.n();
        let mut sum = 0.0;
        for &m in members {
            let from = at.unwrap_or_else(|| tree.steiner_position(m));
            for &g in &tree.steiner_neighbors(m) {
                if g >= n && members.contains(&(g - n)) {
                    continue;
                }
                sum += dist(from, tree.position(g));
            }
        }
        sum
    }

    /// In-place ascending-ordinal sweep (monotone). Every relocation is
    /// committed only if it does not lengthen its local star: near the
    /// numerical floor the closed-form target of a needle-thin neighbor
    /// triangle can sit a hair uphill, and skipping such moves (they do not
    /// count towards the returned largest move) lets the stall exit end the
    /// iteration instead of creeping upwards. Returns the largest
    /// single-point move.
    fn sweep_sequential(&mut self, tree: &mut TopologyTree, merge_eps: f64) -> f64 {
        let k = tree.steiner_count();
        let n = tree.n();
        let d = tree.dim();
        self.ensure(k, d);
        let any_clusters = self.find_clusters(tree, merge_eps, false);
        let mut max_move = 0.0_f64;
        if any_clusters {
            // Pinnedness is judged against pre-sweep positions.
            for i in 0..k {
                self.pinned[i] = true;
            }
            for i in 0..k {
                if !Self::in_multi_cluster(&self.uf, i, k) {
                    continue;
                }
                let nb = tree.steiner_neighbors(i);
                Self::load_neighbor(&mut self.n1, tree, &self.prev, nb[0], d, false);
                Self::load_neighbor(&mut self.n2, tree, &self.prev, nb[1], d, false);
                Self::load_neighbor(&mut self.n3, tree, &self.prev, nb[2], d, false);
                fermat_into(&self.n1, &self.n2, &self.n3, &mut self.fbuf, &mut self.ebuf);
                self.pinned[i] = dist(&self.fbuf, tree.steiner_position(i)) <= merge_eps;
            }
        }
        for i in 0..k {
            self.seen[i] = false;
        }
        for i in 0..k {
            if self.seen[i] {
                continue;
            }
            let multi = any_clusters && Self::in_multi_cluster(&self.uf, i, k);
            if multi {
                let root = self.uf[i];
                self.members.clear();
                for m in root..k {
                    if self.uf[m] == root {
                        self.members.push(m);
                    }
                }
                let cluster_pinned = self.members.iter().all(|&m| self.pinned[m]);
                if cluster_pinned {
                    for &m in &self.members {
                        self.seen[m] = true;
                    }
                    let y: Vec<f64> = tree.steiner_position(root).to_vec();
                    let step = Self::joint_step(
                        &self.members,
                        tree,
                        &self.prev,
                        false,
                        &y,
                        merge_eps,
                        &mut self.fbuf,
                    );
                    let before = Self::cluster_star(&self.members, tree, None);
                    let after = Self::cluster_star(&self.members, tree, Some(&self.fbuf));
                    if after <= before {
                        max_move = max_move.max(step);
                        for idx in 0..self.members.len() {
                            let m = self.members[idx];
                            tree.position_mut(n + m).copy_from_slice(&self.fbuf);
                        }
                    }
                    continue;
                }
                // Fall through: separating members update like singletons.
            }
            self.seen[i] = true;
            let nb = tree.steiner_neighbors(i);
            Self::load_neighbor(&mut self.n1, tree, &self.prev, nb[0], d, false);
            Self::load_neighbor(&mut self.n2, tree, &self.prev, nb[1], d, false);
            Self::load_neighbor(&mut self.n3, tree, &self.prev, nb[2], d, false);
            fermat_into(&self.n1, &self.n2, &self.n3, &mut self.fbuf, &mut self.ebuf);
            let (before, after, step) = {
                let cur = tree.steiner_position(i);
                (
                    dist(cur, &self.n1) + dist(cur, &self.n2) + dist(cur, &self.n3),
                    dist(&self.fbuf, &self.n1)
                        + dist(&self.fbuf, &self.n2)
                        + dist(&self.fbuf, &self.n3),
                    dist(&self.fbuf, cur),
                )
            };
            if after <= before {
                max_move = max_move.max(step);
                tree.position_mut(n + i).copy_from_slice(&self.fbuf);
            }
        }
        max_move
    }

    fn in_multi_cluster(uf: &[usize], i: usize, k: usize) -> bool {
        let root = uf[i];
        (0..k).filter(|&m| uf[m] == root).count() >= 2
    }
}
