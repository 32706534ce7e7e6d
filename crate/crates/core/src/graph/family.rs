use serde::{Deserialize, Serialize};

use super::{full_mask, Graph};

/// Which of the complete-bipartite-like families a graph belongs to, with `p <= q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    CompleteBipartite { p: usize, q: usize },
    MinusEdge { p: usize, q: usize },
    PlusPendant { p: usize, q: usize },
    NotInFamily,
}

impl FamilyKind {
    /// Membership in the union of the three family sets.
    ///
    /// `MinusEdge(2,2)` is the path on four vertices; it is classified as a
    /// minus-edge graph but is not a member of the minus-edge set.
    pub fn in_family_set(&self) -> bool {
        !matches!(
            self,
            FamilyKind::MinusEdge { p: 2, q: 2 } | FamilyKind::NotInFamily
        )
    }

    /// True for the four-vertex path `MinusEdge(2,2)`.
    pub fn is_path_case(&self) -> bool {
        matches!(self, FamilyKind::MinusEdge { p: 2, q: 2 })
    }

    pub fn parts(&self) -> Option<(usize, usize)> {
        match *self {
            FamilyKind::CompleteBipartite { p, q }
            | FamilyKind::MinusEdge { p, q }
            | FamilyKind::PlusPendant { p, q } => Some((p, q)),
            FamilyKind::NotInFamily => None,
        }
    }
}

fn sorted(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Complete bipartite shape of a connected bipartite graph, if it has one.
fn complete_parts(g: &Graph) -> Option<(usize, usize)> {
    if g.order() < 2 || !g.is_connected() {
        return None;
    }
    let (a, b) = g.bipartition()?;
    let (p, q) = sorted(a.count_ones() as usize, b.count_ones() as usize);
    (g.size() == p * q).then_some((p, q))
}

/// Identifies `K(p,q)`, `K⁻(p,q)` or `K⁺(p,q)` after discarding isolated vertices.
///
/// `K⁺(2,q)` is the same graph as `K⁻(2,q+1)` and is reported as the latter.
pub fn classify_family(g: &Graph) -> FamilyKind {
    let core = g.strip_isolated();
    if core.order() < 2 || !core.is_connected() {
        return FamilyKind::NotInFamily;
    }
    let Some((a, b)) = core.bipartition() else {
        return FamilyKind::NotInFamily;
    };
    let (p, q) = sorted(a.count_ones() as usize, b.count_ones() as usize);
    let e = core.size();
    if e == p * q {
        return FamilyKind::CompleteBipartite { p, q };
    }
    if p >= 2 && e + 1 == p * q {
        return FamilyKind::MinusEdge { p, q };
    }

    // K⁺(p,q): dropping a pendant leaves K(p,q) with the pendant's neighbour
    // in a part of the smaller size.
    let full = full_mask(core.order());
    for x in (0..core.order()).filter(|&x| core.degree(x) == 1) {
        let y = core.neighbors(x).trailing_zeros() as usize;
        let rest = core.induced(full & !(1 << x));
        let Some((p, q)) = complete_parts(&rest) else {
            continue;
        };
        if p < 2 {
            continue;
        }
        // index of y once x is removed
        let y_rest = if y > x { y - 1 } else { y };
        let (side0, _) = rest.bipartition().expect("complete bipartite");
        let y_side = if side0 >> y_rest & 1 == 1 {
            side0.count_ones() as usize
        } else {
            rest.order() - side0.count_ones() as usize
        };
        if y_side == p {
            return FamilyKind::PlusPendant { p, q };
        }
    }
    FamilyKind::NotInFamily
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, k_minus, k_plus, path, with_isolated};

    #[test]
    fn constructor_inverse() {
        for p in 1..7 {
            for q in p..8 {
                let g = complete_bipartite(q, p).unwrap();
                assert_eq!(classify_family(&g), FamilyKind::CompleteBipartite { p, q });
            }
        }
        for p in 2..7 {
            for q in p..8 {
                assert_eq!(
                    classify_family(&k_minus(q, p).unwrap()),
                    FamilyKind::MinusEdge { p, q }
                );
                let expected = if p == 2 {
                    FamilyKind::MinusEdge { p: 2, q: q + 1 }
                } else {
                    FamilyKind::PlusPendant { p, q }
                };
                assert_eq!(
                    classify_family(&k_plus(p, q).unwrap()),
                    expected,
                    "K+({p},{q})"
                );
                assert_eq!(classify_family(&k_plus(q, p).unwrap()), expected);
            }
        }
    }

    #[test]
    fn isolated_vertices_are_ignored() {
        let g = with_isolated(&k_minus(4, 5).unwrap(), 3).unwrap();
        assert_eq!(classify_family(&g), FamilyKind::MinusEdge { p: 4, q: 5 });
    }

    #[test]
    fn path_case_is_flagged() {
        let kind = classify_family(&path(4).unwrap());
        assert_eq!(kind, FamilyKind::MinusEdge { p: 2, q: 2 });
        assert!(kind.is_path_case());
        assert!(!kind.in_family_set());
        assert!(FamilyKind::MinusEdge { p: 2, q: 3 }.in_family_set());
    }

    #[test]
    fn outside_the_families() {
        assert_eq!(
            classify_family(&complete(3).unwrap()),
            FamilyKind::NotInFamily
        );
        assert_eq!(
            classify_family(&Graph::empty(4).unwrap()),
            FamilyKind::NotInFamily
        );
        assert_eq!(classify_family(&path(6).unwrap()), FamilyKind::NotInFamily);
        assert_eq!(classify_family(&cycle(6).unwrap()), FamilyKind::NotInFamily);
        let two = with_isolated(&complete_bipartite(1, 1).unwrap(), 0).unwrap();
        let two = crate::graph::disjoint_union(&two, &two).unwrap();
        assert_eq!(classify_family(&two), FamilyKind::NotInFamily);
        // pendant attached to the larger part
        let mut g = with_isolated(&complete_bipartite(3, 4).unwrap(), 1).unwrap();
        g.add_edge(3, 7);
        assert_eq!(classify_family(&g), FamilyKind::NotInFamily);
    }

    #[test]
    fn p5_is_minus_two_three_shape() {
        // K⁻(2,3) is a spider, not the path on five vertices
        assert_eq!(classify_family(&path(5).unwrap()), FamilyKind::NotInFamily);
    }
}
