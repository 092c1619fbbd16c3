//! A lower bound on the optimal length of a topology, computed without
//! optimizing any Steiner point.
//!
//! The tree is contracted one cherry at a time: a Steiner point with two
//! leaf neighbors is removed together with those leaves and replaced by
//! their equilateral point, erected away from the remaining neighbor. Each
//! contraction preserves a lower bound on the attainable length (a
//! consequence of Ptolemy's inequality), so the distance between the last
//! two surviving nodes bounds every placement of the Steiner points from
//! below. For a single Steiner point whose terminals span angles below 120
//! degrees the bound is exact.

use crate::geometry::equilateral_into;
use crate::topology::TopologyTree;

/// One node of the contraction graph.
struct CNode {
    pos: Vec<f64>,
    nbrs: Vec<usize>,
    alive: bool,
    steiner: bool,
}

struct Contraction {
    nodes: Vec<CNode>,
    /// Labels of original Steiner points, ascending by ordinal; dead ones
    /// are skipped via the `alive` flag.
    steiner_labels: Vec<usize>,
    alive_count: usize,
}

impl Contraction {
    /// Compact relabeling of the tree: used terminals first (keeping their
    /// order), then Steiner points by ordinal.
    fn from_tree(tree: &TopologyTree) -> Contraction {
        let n = tree.n();
        let m = tree.used_terminals();
        let k = tree.steiner_count();
        let relabel = |g: usize| if g < n { g } else { m + (g - n) };
        let mut nodes: Vec<CNode> = (0..m + k)
            .map(|l| {
                let g = if l < m { l } else { n + (l - m) };
                CNode {
                    pos: tree.position(g).to_vec(),
                    nbrs: Vec::new(),
                    alive: true,
                    steiner: l >= m,
                }
            })
            .collect();
        for e in 1..=tree.edge_count() {
            let [p, q] = tree.edge_endpoints(e);
            let (p, q) = (relabel(p), relabel(q));
            nodes[p].nbrs.push(q);
            nodes[q].nbrs.push(p);
        }
        Contraction {
            nodes,
            steiner_labels: (m..m + k).collect(),
            alive_count: m + k,
        }
    }

    /// Smallest-ordinal live Steiner point with at least two live leaf
    /// neighbors. Such a point always exists while any Steiner point lives.
    fn find_cherry(&self) -> Option<usize> {
        self.steiner_labels.iter().copied().find(|&s| {
            self.nodes[s].alive
                && self.nodes[s]
                    .nbrs
                    .iter()
                    .filter(|&&g| self.nodes[g].alive && !self.nodes[g].steiner)
                    .count()
                    >= 2
        })
    }

    /// Contract the cherry at Steiner label `s`: its two smallest-label
    /// leaf neighbors are replaced by their equilateral point, erected on
    /// the side away from the remaining neighbor, and attached in place of
    /// `s`. Fails (degenerate cherry) when the three positions involved are
    /// collinear.
    fn contract(&mut self, s: usize) -> Result<(), ()> {
        let mut leaves: Vec<usize> = self.nodes[s]
            .nbrs
            .iter()
            .copied()
            .filter(|&g| self.nodes[g].alive && !self.nodes[g].steiner)
            .collect();
        leaves.sort_unstable();
        let (a, b) = (leaves[0], leaves[1]);
        let third = self.nodes[s]
            .nbrs
            .iter()
            .copied()
            .find(|&g| self.nodes[g].alive && g != a && g != b)
            .expect("a degree-3 node keeps a third neighbor");
        let d = self.nodes[a].pos.len();
        let mut e = vec![0.0; d];
        if equilateral_into(
            &self.nodes[a].pos,
            &self.nodes[b].pos,
            &self.nodes[third].pos,
            &mut e,
        )
        .is_err()
        {
            return Err(());
        }
        let fresh = self.nodes.len();
        self.nodes.push(CNode {
            pos: e,
            nbrs: vec![third],
            alive: true,
            steiner: false,
        });
        for g in self.nodes[third].nbrs.iter_mut() {
            if *g == s {
                *g = fresh;
            }
        }
        self.nodes[a].alive = false;
        self.nodes[b].alive = false;
        self.nodes[s].alive = false;
        self.alive_count -= 2;
        Ok(())
    }

    fn run(&mut self) -> Option<f64> {
        while let Some(s) = self.find_cherry() {
            if self.contract(s).is_err() {
                return None;
            }
        }
        debug_assert_eq!(self.alive_count, 2);
        let mut it = self.nodes.iter().filter(|n| n.alive);
        let p = it.next()?;
        let q = it.next()?;
        let d2: f64 = p
            .pos
            .iter()
            .zip(&q.pos)
            .map(|(u, v)| (u - v) * (u - v))
            .sum();
        Some(d2.sqrt())
    }
}

/// Lower bound on the length attainable by any placement of the Steiner
/// points of this topology. Independent of the current Steiner positions.
/// Returns 0 when a contraction step degenerates (three collinear nodes),
/// which keeps the bound trivially sound.
pub fn lower_bound(tree: &TopologyTree) -> f64 {
    Contraction::from_tree(tree).run().unwrap_or(0.0)
}
