//! Simple undirected graphs on at most 64 vertices.
//!
//! Row `i` of the adjacency is a `u64` bitset of the neighbours of `i`, so the
//! whole graph is `n` machine words.

pub(crate) mod canon;
mod family;
mod graph6;

pub use canon::{
    canonical_form, canonical_form_with_cap, same_orbit, CanonicalForm, DEFAULT_CANON_CAP,
};
pub use family::{classify_family, FamilyKind};
pub use graph6::{graph6_decode, graph6_encode};

use crate::error::{domain, Error, Result};

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    rows: Vec<u64>,
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates over the set bits of a word, lowest first.
pub(crate) fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let i = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(i)
        }
    })
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capacity {
            what: "vertex count",
            got: n,
            limit: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(Graph { rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(domain(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(domain(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, checking symmetry and the absence of loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        check_capacity(rows.len())?;
        let n = rows.len();
        for (i, &row) in rows.iter().enumerate() {
            if row & !full_mask(n) != 0 {
                return Err(domain(format!("row {i} has bits beyond vertex {}", n - 1)));
            }
            if row >> i & 1 == 1 {
                return Err(domain(format!("loop at vertex {i}")));
            }
            for j in bits(row) {
                if rows[j] >> i & 1 == 0 {
                    return Err(domain(format!("asymmetric adjacency between {i} and {j}")));
                }
            }
        }
        Ok(Graph { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(rows.len() <= MAX_VERTICES);
        Graph { rows }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| bits(row >> i >> 1).map(move |k| (i, i + 1 + k)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    /// Degree sequence in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn isolated_count(&self) -> usize {
        self.rows.iter().filter(|&&r| r == 0).count()
    }

    /// The induced subgraph on `keep`, relabelled in increasing vertex order.
    pub fn induced(&self, keep: u64) -> Graph {
        let verts: Vec<usize> = bits(keep & full_mask(self.order())).collect();
        let rows = verts
            .iter()
            .map(|&v| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| self.has_edge(v, u))
                    .fold(0u64, |acc, (k, _)| acc | 1 << k)
            })
            .collect();
        Graph { rows }
    }

    /// Removes every vertex of degree zero.
    pub fn strip_isolated(&self) -> Graph {
        let keep = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != 0)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        self.induced(keep)
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order(), "permutation length mismatch");
        let mut rows = vec![0u64; self.order()];
        for (v, &row) in self.rows.iter().enumerate() {
            rows[perm[v]] = bits(row).fold(0u64, |acc, u| acc | 1 << perm[u]);
        }
        Graph { rows }
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut left = full_mask(self.order());
        let mut out = Vec::new();
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let next = bits(frontier).fold(0u64, |acc, v| acc | self.rows[v]) & !comp;
                comp |= next;
                frontier = next;
            }
            left &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Returns a proper 2-colouring as `(side0, side1)` masks when one exists.
    ///
    /// In each component the smallest vertex gets side 0.
    pub fn bipartition(&self) -> Option<(u64, u64)> {
        let mut side0 = 0u64;
        let mut side1 = 0u64;
        for comp in self.components() {
            let start = comp & comp.wrapping_neg();
            let (mut a, mut b) = (start, 0u64);
            let mut frontier = start;
            let mut on_a = true;
            while frontier != 0 {
                let reach = bits(frontier).fold(0u64, |acc, v| acc | self.rows[v]);
                let (same, other) = if on_a { (a, b) } else { (b, a) };
                if reach & same != 0 {
                    return None;
                }
                let next = reach & !other;
                if on_a {
                    b |= next;
                } else {
                    a |= next;
                }
                frontier = next;
                on_a = !on_a;
            }
            side0 |= a;
            side1 |= b;
        }
        Some((side0, side1))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn triangle_count(&self) -> usize {
        self.edges()
            .map(|(u, v)| (self.rows[u] & self.rows[v] & !full_mask(v + 1)).count_ones() as usize)
            .sum()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({})", graph6_encode(self))
    }
}

/// `K(p,q)` with parts `{0..p}` and `{p..p+q}`.
pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph> {
    if p == 0 || q == 0 {
        return Err(domain(format!("K({p},{q}) needs both parts non-empty")));
    }
    let n = p
        .checked_add(q)
        .ok_or_else(|| domain("part sizes overflow"))?;
    let mut g = Graph::empty(n)?;
    let left = full_mask(p);
    let right = full_mask(n) & !left;
    for v in 0..p {
        g.rows[v] = right;
    }
    for v in p..n {
        g.rows[v] = left;
    }
    Ok(g)
}

fn check_family_parts(p: usize, q: usize) -> Result<()> {
    if p.min(q) < 2 {
        return Err(domain(format!(
            "both parts must have at least 2 vertices, got ({p},{q})"
        )));
    }
    Ok(())
}

/// `K(p,q)` minus the edge between vertex `0` and vertex `p`.
pub fn k_minus(p: usize, q: usize) -> Result<Graph> {
    check_family_parts(p, q)?;
    let mut g = complete_bipartite(p, q)?;
    g.remove_edge(0, p);
    Ok(g)
}

/// `K(p,q)` plus a new last vertex joined to the first vertex of the smaller part.
pub fn k_plus(p: usize, q: usize) -> Result<Graph> {
    check_family_parts(p, q)?;
    let base = complete_bipartite(p, q)?;
    let mut g = disjoint_union(&base, &Graph::empty(1)?)?;
    let anchor = if p <= q { 0 } else { p };
    g.add_edge(anchor, p + q);
    Ok(g)
}

/// Vertex-disjoint union; the vertices of `h` follow those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.order() + h.order();
    check_capacity(n)?;
    let shift = g.order();
    let mut rows = g.rows.clone();
    rows.extend(
        h.rows
            .iter()
            .map(|&r| if shift >= 64 { 0 } else { r << shift }),
    );
    Ok(Graph { rows })
}

/// `g` together with `k` isolated vertices.
pub fn with_isolated(g: &Graph, k: usize) -> Result<Graph> {
    disjoint_union(g, &Graph::empty(k)?)
}

pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(domain("a cycle needs at least 3 vertices"));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for v in 0..n {
        g.rows[v] = full_mask(n) & !(1 << v);
    }
    Ok(g)
}
