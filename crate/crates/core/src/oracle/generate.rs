//! Isomorph-free generation by canonical vertex augmentation.
//!
//! A graph on `k+1` vertices is built from a graph on `k` vertices by adding
//! vertex `k` joined to a subset of the old vertices. The child is kept only
//! when the new vertex lies in the orbit of the child's canonical deletion
//! vertex: among the vertices of smallest `(degree, sum of neighbour
//! degrees)`, the one with the largest canonical label. Every isomorphism
//! class then has exactly one parent class, and isomorphic siblings are
//! removed with a per-parent certificate set.

use std::collections::HashSet;

use crate::graph::canon::Labeling;
use crate::graph::{bits, full_mask, CanonicalForm, Graph};

/// Bitmask over edge counts `0..128`.
type EdgeMask = u128;

const ALL_EDGES: EdgeMask = u128::MAX;

/// `allowed[k]`: edge counts a graph on `k` vertices may have and still be
/// an ancestor of a graph on `n` vertices with exactly `e` edges.
///
/// The canonical deletion vertex has minimum degree, so the parent of a graph
/// on `k+1` vertices with `m` edges has `m − d` edges for some
/// `d ≤ min(k, ⌊2m/(k+1)⌋)`.
pub(crate) fn allowed_edge_counts(n: usize, edges: Option<usize>) -> Vec<EdgeMask> {
    let Some(e) = edges else {
        return vec![ALL_EDGES; n + 1];
    };
    let mut allowed = vec![0 as EdgeMask; n + 1];
    if e > n * n.saturating_sub(1) / 2 {
        return allowed;
    }
    allowed[n] = 1 << e;
    for k in (0..n).rev() {
        let mut mask = 0;
        for m in bits128(allowed[k + 1]) {
            let max_drop = k.min(2 * m / (k + 1));
            for d in 0..=max_drop.min(m) {
                mask |= 1 << (m - d);
            }
        }
        let feasible = k * k.saturating_sub(1) / 2;
        allowed[k] = mask & (EdgeMask::MAX >> (127 - feasible));
    }
    allowed
}

fn bits128(mut word: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            return None;
        }
        let b = word.trailing_zeros() as usize;
        word &= word - 1;
        Some(b)
    })
}

struct Frame {
    graph: Graph,
    degrees: Vec<usize>,
    next_subset: u64,
    seen: HashSet<CanonicalForm>,
}

impl Frame {
    fn new(graph: Graph) -> Self {
        Frame {
            degrees: graph.degrees(),
            graph,
            next_subset: 0,
            seen: HashSet::new(),
        }
    }

    fn subsets(&self) -> u64 {
        1u64 << self.graph.order()
    }
}

/// Pull-based depth-first generator. Yields each graph of the target order
/// once per isomorphism class, descending from a fixed root.
pub(crate) struct Generator {
    target: usize,
    allowed: Vec<EdgeMask>,
    bipartite_only: bool,
    root: Option<Graph>,
    stack: Vec<Frame>,
}

impl Generator {
    /// `root` must itself be an output of the generator at its own order
    /// (the empty graph on zero vertices always is).
    pub(crate) fn new(
        root: Graph,
        target: usize,
        allowed: Vec<EdgeMask>,
        bipartite_only: bool,
    ) -> Self {
        Generator {
            target,
            allowed,
            bipartite_only,
            root: Some(root),
            stack: Vec::new(),
        }
    }

    fn admits(&self, g: &Graph) -> bool {
        let m = g.size();
        m < 128
            && self.allowed[g.order()] >> m & 1 == 1
            && (!self.bipartite_only || g.is_bipartite())
    }

    /// The child for `subset`, if it passes the filters and is canonical.
    fn child(&mut self, subset: u64) -> Option<Graph> {
        let frame = self.stack.last_mut().expect("non-empty stack");
        let k = frame.graph.order();
        let new_deg = subset.count_ones() as usize;

        let m = frame.graph.size() + new_deg;
        if m >= 128 || self.allowed[k + 1] >> m & 1 == 0 {
            return None;
        }
        // the new vertex must have minimum degree
        let deg = |i: usize| frame.degrees[i] + (subset >> i & 1) as usize;
        if (0..k).any(|i| deg(i) < new_deg) {
            return None;
        }

        let mut rows = frame.graph.rows().to_vec();
        for i in bits(subset) {
            rows[i] |= 1 << k;
        }
        rows.push(subset);
        let child = Graph::from_rows_unchecked(rows);
        if self.bipartite_only && !child.is_bipartite() {
            return None;
        }

        // among min-degree vertices the new one must minimise the neighbour-degree sum
        let degrees = child.degrees();
        let key = |x: usize| bits(child.neighbors(x)).map(|y| degrees[y]).sum::<usize>();
        let new_key = key(k);
        let mut ties = 1u64 << k;
        for x in (0..k).filter(|&x| degrees[x] == new_deg) {
            match key(x).cmp(&new_key) {
                std::cmp::Ordering::Less => return None,
                std::cmp::Ordering::Equal => ties |= 1 << x,
                std::cmp::Ordering::Greater => {}
            }
        }

        let n = k + 1;
        let labeling = Labeling::compute(&child, vec![full_mask(n)]);
        if ties != 1 << k {
            let w = bits(ties)
                .max_by_key(|&x| labeling.position[x])
                .expect("ties contains the new vertex");
            if w != k && labeling.known_orbit_of(w) >> k & 1 == 0 {
                let rest = full_mask(n);
                let at_w = Labeling::compute(&child, vec![1 << w, rest & !(1 << w)]);
                let at_k = Labeling::compute(&child, vec![1 << k, rest & !(1 << k)]);
                if at_w.form != at_k.form {
                    return None;
                }
            }
        }
        let frame = self.stack.last_mut().unwrap();
        frame.seen.insert(labeling.form).then_some(child)
    }
}

impl Iterator for Generator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if let Some(root) = self.root.take() {
            if !self.admits(&root) || root.order() > self.target {
                return None;
            }
            if root.order() == self.target {
                return Some(root);
            }
            self.stack.push(Frame::new(root));
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next_subset >= frame.subsets() {
                self.stack.pop();
                continue;
            }
            let subset = frame.next_subset;
            frame.next_subset += 1;
            let Some(child) = self.child(subset) else {
                continue;
            };
            if child.order() == self.target {
                return Some(child);
            }
            self.stack.push(Frame::new(child));
        }
    }
}
