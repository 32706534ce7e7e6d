//! Canonical labeling by colour refinement and individualization.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, individualize each vertex of the first non-singleton cell
//! in turn, and recurse. Every leaf is a discrete partition, i.e. a relabeling;
//! the certificate is the largest relabelled adjacency bit string over all
//! leaves. Leaves that reproduce the best (or first) certificate yield
//! automorphisms, which prune the remaining siblings by orbit and let the
//! search jump back to the common ancestor.

use super::{bits, full_mask, Graph, MAX_VERTICES};
use crate::error::{Error, Result};

/// Default vertex limit for [`canonical_form`].
pub const DEFAULT_CANON_CAP: usize = 12;

const MAX_STORED_AUTOMORPHISMS: usize = 128;

/// Relabeling-invariant certificate of an isomorphism class.
///
/// Two graphs get equal certificates iff they are isomorphic. The ordering is
/// arbitrary but fixed, so certificates can key ordered maps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    n: u8,
    words: Vec<u64>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    /// Byte string form: the vertex count followed by the adjacency words, big-endian.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![self.n];
        for w in &self.words {
            out.extend_from_slice(&w.to_be_bytes());
        }
        out
    }

    /// The canonically relabelled graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut rows = vec![0u64; n];
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if self.words[idx / 64] >> (63 - idx % 64) & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                idx += 1;
            }
        }
        Graph::from_rows_unchecked(rows)
    }
}

/// Canonical form with the default cap of [`DEFAULT_CANON_CAP`] vertices.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with_cap(g, DEFAULT_CANON_CAP)
}

/// Canonical form for graphs up to `cap` vertices (`cap` itself at most 64).
///
/// The search is exponential in the worst case, so the cap guards against
/// accidentally feeding it something large. The highly regular family graphs
/// used elsewhere in this crate stay cheap well beyond the default.
pub fn canonical_form_with_cap(g: &Graph, cap: usize) -> Result<CanonicalForm> {
    let cap = cap.min(MAX_VERTICES);
    if g.order() > cap {
        return Err(Error::Capacity {
            what: "canonical labeling vertex count",
            got: g.order(),
            limit: cap,
        });
    }
    Ok(Labeling::compute(g, unit_partition(g.order())).form)
}

/// Whether some automorphism of `g` maps `u` to `v`.
pub fn same_orbit(g: &Graph, u: usize, v: usize) -> bool {
    if u == v {
        return true;
    }
    let n = g.order();
    let cu = vec![1u64 << u, full_mask(n) & !(1 << u)];
    let cv = vec![1u64 << v, full_mask(n) & !(1 << v)];
    Labeling::compute(g, cu).form == Labeling::compute(g, cv).form
}

fn unit_partition(n: usize) -> Vec<u64> {
    if n == 0 {
        Vec::new()
    } else {
        vec![full_mask(n)]
    }
}

/// Result of a canonical search.
pub(crate) struct Labeling {
    pub form: CanonicalForm,
    /// `position[v]` is the canonical index of vertex `v`.
    pub position: Vec<u8>,
    /// Automorphisms met during the search, as vertex maps.
    pub automorphisms: Vec<Vec<u8>>,
}

impl Labeling {
    /// Canonical search starting from an ordered partition of the vertices.
    pub(crate) fn compute(g: &Graph, initial: Vec<u64>) -> Labeling {
        let n = g.order();
        let mut search = Search {
            rows: g.rows(),
            n,
            words: (n * n.saturating_sub(1) / 2).div_ceil(64),
            best: None,
            first: None,
            autos: Vec::new(),
            path: Vec::with_capacity(n),
        };
        let mut cells = initial;
        refine(search.rows, &mut cells);
        search.visit(cells, 0);
        let best = search.best.expect("search reaches at least one leaf");
        Labeling {
            form: CanonicalForm {
                n: n as u8,
                words: best.key,
            },
            position: best.position,
            automorphisms: search.autos,
        }
    }

    /// Orbit partition of the group generated by the automorphisms found.
    ///
    /// This may be finer than the true orbit partition.
    pub(crate) fn known_orbit_of(&self, v: usize) -> u64 {
        orbit(v, self.automorphisms.iter())
    }
}

struct Leaf {
    key: Vec<u64>,
    position: Vec<u8>,
    vertex_at: Vec<u8>,
    path: Vec<u8>,
}

struct Search<'a> {
    rows: &'a [u64],
    n: usize,
    words: usize,
    best: Option<Leaf>,
    first: Option<Leaf>,
    autos: Vec<Vec<u8>>,
    path: Vec<u8>,
}

fn orbit<'a>(v: usize, gens: impl Iterator<Item = &'a Vec<u8>> + Clone) -> u64 {
    let mut orb = 1u64 << v;
    let mut frontier = orb;
    while frontier != 0 {
        let mut next = 0u64;
        for x in bits(frontier) {
            for g in gens.clone() {
                next |= 1 << g[x];
            }
        }
        next &= !orb;
        orb |= next;
        frontier = next;
    }
    orb
}

/// Refines an ordered partition to the coarsest equitable refinement.
///
/// A cell is split by the number of neighbours each member has in a splitter
/// cell; the pieces replace it in increasing order of that count. The rule
/// depends only on the ordered partition, so it commutes with relabeling.
fn refine(rows: &[u64], cells: &mut Vec<u64>) {
    let mut counts: Vec<(u32, usize)> = Vec::with_capacity(rows.len());
    'restart: loop {
        for s in 0..cells.len() {
            let splitter = cells[s];
            for c in 0..cells.len() {
                let cell = cells[c];
                if cell & (cell - 1) == 0 {
                    continue;
                }
                counts.clear();
                counts.extend(bits(cell).map(|v| ((rows[v] & splitter).count_ones(), v)));
                let k0 = counts[0].0;
                if counts.iter().all(|&(k, _)| k == k0) {
                    continue;
                }
                counts.sort_unstable();
                let mut pieces: Vec<u64> = Vec::new();
                let mut last = None;
                for &(k, v) in counts.iter() {
                    if last != Some(k) {
                        pieces.push(0);
                        last = Some(k);
                    }
                    *pieces.last_mut().unwrap() |= 1 << v;
                }
                cells.splice(c..=c, pieces);
                continue 'restart;
            }
        }
        return;
    }
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Explores the subtree below `cells`. A returned depth asks every node
    /// deeper than it to unwind.
    fn visit(&mut self, cells: Vec<u64>, depth: usize) -> Option<usize> {
        if cells.len() == self.n {
            return self.leaf(&cells);
        }
        let ci = cells
            .iter()
            .position(|&c| c & (c - 1) != 0)
            .expect("non-discrete partition has a non-singleton cell");
        let cell = cells[ci];
        let mut explored = 0u64;
        for v in bits(cell) {
            if explored != 0 && self.equivalent_to_explored(v, explored) {
                continue;
            }
            explored |= 1 << v;
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ci]);
            child.push(1 << v);
            child.push(cell & !(1 << v));
            child.extend_from_slice(&cells[ci + 1..]);
            refine(self.rows, &mut child);
            self.path.push(v as u8);
            let jump = self.visit(child, depth + 1);
            self.path.pop();
            if let Some(target) = jump {
                if target < depth {
                    return Some(target);
                }
            }
        }
        None
    }

    /// Automorphisms fixing the current path pointwise map the subtree of one
    /// child onto another; skip `v` when such a map reaches it from an
    /// explored sibling.
    fn equivalent_to_explored(&self, v: usize, explored: u64) -> bool {
        let path = &self.path;
        let stabilizer = self
            .autos
            .iter()
            .filter(|g| path.iter().all(|&x| g[x as usize] == x));
        orbit(v, stabilizer) & explored != 0
    }

    fn leaf(&mut self, cells: &[u64]) -> Option<usize> {
        let n = self.n;
        let vertex_at: Vec<u8> = cells.iter().map(|c| c.trailing_zeros() as u8).collect();
        let mut position = vec![0u8; n];
        for (i, &v) in vertex_at.iter().enumerate() {
            position[v as usize] = i as u8;
        }
        let mut key = vec![0u64; self.words];
        let mut idx = 0;
        for j in 1..n {
            let row = self.rows[vertex_at[j] as usize];
            for &vi in &vertex_at[..j] {
                if row >> vi & 1 == 1 {
                    key[idx / 64] |= 1 << (63 - idx % 64);
                }
                idx += 1;
            }
        }

        let Some(best) = &self.best else {
            let leaf = Leaf {
                key,
                position,
                vertex_at,
                path: self.path.clone(),
            };
            self.first = Some(Leaf {
                key: leaf.key.clone(),
                position: leaf.position.clone(),
                vertex_at: leaf.vertex_at.clone(),
                path: leaf.path.clone(),
            });
            self.best = Some(leaf);
            return None;
        };

        match key.cmp(&best.key) {
            std::cmp::Ordering::Greater => {
                self.best = Some(Leaf {
                    key,
                    position,
                    vertex_at,
                    path: self.path.clone(),
                });
                None
            }
            std::cmp::Ordering::Equal => {
                let gamma = self.automorphism_to(&position, best);
                let target = common_prefix(&self.path, &best.path);
                self.store(gamma);
                Some(target)
            }
            std::cmp::Ordering::Less => {
                let first = self.first.as_ref().expect("first leaf is set with best");
                if key == first.key {
                    let gamma = self.automorphism_to(&position, first);
                    let target = common_prefix(&self.path, &first.path);
                    self.store(gamma);
                    Some(target)
                } else {
                    None
                }
            }
        }
    }

    fn automorphism_to(&self, position: &[u8], other: &Leaf) -> Vec<u8> {
        position
            .iter()
            .map(|&pos| other.vertex_at[pos as usize])
            .collect()
    }

    fn store(&mut self, gamma: Vec<u8>) {
        let identity = gamma.iter().enumerate().all(|(i, &x)| i == x as usize);
        if !identity && self.autos.len() < MAX_STORED_AUTOMORPHISMS {
            self.autos.push(gamma);
        }
    }
}
