//! Exhaustive small-graph oracle: isomorph-free enumeration, cospectral
//! classes keyed by exact characteristic polynomial, and DS checks by search.

mod generate;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{canonical_form_with_cap, graph6_encode, k_minus, CanonicalForm, Graph};
use crate::poly::{char_poly, char_poly_fingerprint, IntPolynomial};
use generate::{allowed_edge_counts, Generator};

/// Default vertex limit for enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// Hard vertex limit for enumeration, whatever the configured cap.
pub const MAX_ENUMERATION_CAP: usize = 12;

/// Which graphs to enumerate: all graphs on `n` vertices, optionally only
/// those with exactly `edges` edges, optionally only bipartite ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSpec {
    pub n: usize,
    pub edges: Option<usize>,
    pub bipartite_only: bool,
    pub cap: usize,
}

impl EnumerationSpec {
    pub fn new(n: usize) -> Self {
        EnumerationSpec {
            n,
            edges: None,
            bipartite_only: false,
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    pub fn with_edges(mut self, e: usize) -> Self {
        self.edges = Some(e);
        self
    }

    pub fn bipartite(mut self) -> Self {
        self.bipartite_only = true;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    fn check(&self) -> Result<()> {
        if self.cap > MAX_ENUMERATION_CAP {
            return Err(Error::Capacity {
                what: "enumeration cap",
                got: self.cap,
                limit: MAX_ENUMERATION_CAP,
            });
        }
        if self.n > self.cap {
            return Err(Error::Capacity {
                what: "enumeration vertex count",
                got: self.n,
                limit: self.cap,
            });
        }
        Ok(())
    }
}

/// Lazy stream of one graph per isomorphism class matching a spec.
pub struct GraphStream(Generator);

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        self.0.next()
    }
}

pub fn enumerate_graphs(spec: &EnumerationSpec) -> Result<GraphStream> {
    spec.check()?;
    let allowed = allowed_edge_counts(spec.n, spec.edges);
    Ok(GraphStream(Generator::new(
        Graph::empty(0).expect("zero vertices"),
        spec.n,
        allowed,
        spec.bipartite_only,
    )))
}

/// Folds over every graph of the spec, splitting the generation tree into
/// subtrees for the current rayon pool.
///
/// `reduce` must be associative; rayon combines partial results in subtree
/// order, so an order-insensitive `reduce` gives thread-count independent
/// results.
pub fn par_fold<T, I, F, R>(spec: &EnumerationSpec, init: I, fold: F, reduce: R) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, Graph) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    spec.check()?;
    let n = spec.n;
    let allowed = allowed_edge_counts(n, spec.edges);
    let split = if n >= 7 { n - 3 } else { 0 };
    let roots: Vec<Graph> = Generator::new(
        Graph::empty(0).expect("zero vertices"),
        split,
        allowed.clone(),
        spec.bipartite_only,
    )
    .collect();
    Ok(roots
        .into_par_iter()
        .map(|root| {
            Generator::new(root, n, allowed.clone(), spec.bipartite_only).fold(init(), &fold)
        })
        .reduce(&init, &reduce))
}

/// Number of graphs matching the spec.
pub fn count_graphs(spec: &EnumerationSpec) -> Result<usize> {
    par_fold(spec, || 0usize, |c, _| c + 1, |a, b| a + b)
}

/// One member of a cospectral class: its certificate and the canonically
/// labelled representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMember {
    pub form: CanonicalForm,
    pub graph: Graph,
}

/// Pairwise non-isomorphic graphs sharing one characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CospectralClass {
    pub poly: IntPolynomial,
    pub members: Vec<ClassMember>,
}

impl CospectralClass {
    pub fn graph6_members(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|m| graph6_encode(&m.graph))
            .collect()
    }
}

impl Serialize for CospectralClass {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("CospectralClass", 3)?;
        st.serialize_field("poly", &self.poly)?;
        st.serialize_field("count", &self.members.len())?;
        st.serialize_field("members", &self.graph6_members())?;
        st.end()
    }
}

type PolyMap = BTreeMap<IntPolynomial, Vec<Graph>>;

fn merge(mut a: PolyMap, b: PolyMap) -> PolyMap {
    for (k, mut v) in b {
        a.entry(k).or_default().append(&mut v);
    }
    a
}

/// Cospectral classes of the graphs matching `spec`, ordered by polynomial.
/// Classes with a single member are dropped unless `keep_singletons`.
pub fn cospectral_classes(
    spec: &EnumerationSpec,
    keep_singletons: bool,
) -> Result<Vec<CospectralClass>> {
    let map = par_fold(
        spec,
        PolyMap::new,
        |mut map, g| {
            map.entry(char_poly(&g)).or_default().push(g);
            map
        },
        merge,
    )?;
    let min = if keep_singletons { 1 } else { 2 };
    let mut out = Vec::new();
    for (poly, graphs) in map.into_iter().filter(|(_, v)| v.len() >= min) {
        let mut members: Vec<ClassMember> = graphs
            .iter()
            .map(|g| {
                let form = canonical_form_with_cap(g, spec.cap)?;
                Ok(ClassMember {
                    graph: form.to_graph(),
                    form,
                })
            })
            .collect::<Result<_>>()?;
        members.sort_by(|a, b| a.form.cmp(&b.form));
        out.push(CospectralClass { poly, members });
    }
    Ok(out)
}

fn graph6_list<S: Serializer>(graphs: &[Graph], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(graphs.iter().map(graph6_encode))
}

/// Result of searching all graphs with the same vertex and edge count for
/// cospectral mates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DsCheck {
    pub n: usize,
    pub e: usize,
    /// No non-isomorphic cospectral graph exists on `n` vertices.
    pub is_ds_within_n: bool,
    /// Every non-isomorphic cospectral graph, canonically labelled.
    #[serde(serialize_with = "graph6_list")]
    pub mates: Vec<Graph>,
    /// Graphs compared.
    pub searched: usize,
}

/// Searches every graph on `n(g)` vertices with `e(g)` edges for cospectral
/// mates. Cospectral graphs share both counts, so the edge filter loses
/// nothing.
pub fn verify_ds(g: &Graph) -> Result<DsCheck> {
    verify_ds_with_cap(g, DEFAULT_ENUMERATION_CAP)
}

pub fn verify_ds_with_cap(g: &Graph, cap: usize) -> Result<DsCheck> {
    let (n, e) = (g.order(), g.size());
    let spec = EnumerationSpec::new(n).with_edges(e).with_cap(cap);
    spec.check()?;
    let target = char_poly(g);
    let fingerprint = char_poly_fingerprint(g);
    let own = canonical_form_with_cap(g, cap)?;
    let (searched, mut found) = par_fold(
        &spec,
        || (0usize, Vec::new()),
        |(count, mut found), h| {
            if char_poly_fingerprint(&h) == fingerprint && char_poly(&h) == target {
                found.push(h);
            }
            (count + 1, found)
        },
        |(c1, mut f1), (c2, mut f2)| {
            f1.append(&mut f2);
            (c1 + c2, f1)
        },
    )?;
    let mut mates = Vec::new();
    for h in found.drain(..) {
        let form = canonical_form_with_cap(&h, cap)?;
        if form != own {
            mates.push(form);
        }
    }
    mates.sort();
    Ok(DsCheck {
        n,
        e,
        is_ds_within_n: mates.is_empty(),
        mates: mates.iter().map(CanonicalForm::to_graph).collect(),
        searched,
    })
}

/// One `K⁻(p,q)` checked by exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowRow {
    pub p: usize,
    pub q: usize,
    pub n: usize,
    pub e: usize,
    pub passed: bool,
    #[serde(serialize_with = "graph6_list")]
    pub mates: Vec<Graph>,
    pub searched: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub n_max: usize,
    pub all_passed: bool,
    pub rows: Vec<WindowRow>,
}

/// Exhaustive DS check of every `K⁻(p,q)` with `2 ≤ p ≤ q` and `p + q ≤ n_max`.
pub fn verify_minus_edge_window(n_max: usize) -> Result<WindowReport> {
    EnumerationSpec::new(n_max).check()?;
    let mut rows = Vec::new();
    for n in 4..=n_max {
        for p in 2..=n / 2 {
            let q = n - p;
            let check = verify_ds(&k_minus(p, q)?)?;
            rows.push(WindowRow {
                p,
                q,
                n,
                e: check.e,
                passed: check.is_ds_within_n,
                mates: check.mates,
                searched: check.searched,
            });
        }
    }
    Ok(WindowReport {
        n_max,
        all_passed: rows.iter().all(|r| r.passed),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, with_isolated};

    #[test]
    fn caps() {
        assert!(matches!(
            enumerate_graphs(&EnumerationSpec::new(11)),
            Err(Error::Capacity {
                got: 11,
                limit: 10,
                ..
            })
        ));
        assert!(enumerate_graphs(&EnumerationSpec::new(11).with_cap(11)).is_ok());
        assert!(enumerate_graphs(&EnumerationSpec::new(11).with_cap(13)).is_err());
    }

    #[test]
    fn stream_and_parallel_fold_agree() {
        for n in 0..=7 {
            let spec = EnumerationSpec::new(n);
            assert_eq!(
                enumerate_graphs(&spec).unwrap().count(),
                count_graphs(&spec).unwrap()
            );
        }
    }

    #[test]
    fn smallest_cospectral_pair() {
        for n in 0..=4 {
            assert!(cospectral_classes(&EnumerationSpec::new(n), false)
                .unwrap()
                .is_empty());
        }
        let classes = cospectral_classes(&EnumerationSpec::new(5), false).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(
            classes[0].poly,
            IntPolynomial::from_i64(&[0, 0, 0, -4, 0, 1])
        );
        let star = canonical_form_with_cap(&complete_bipartite(1, 4).unwrap(), 12).unwrap();
        let square = canonical_form_with_cap(
            &with_isolated(&complete_bipartite(2, 2).unwrap(), 1).unwrap(),
            12,
        )
        .unwrap();
        let mut expected = vec![star, square];
        expected.sort();
        let got: Vec<_> = classes[0].members.iter().map(|m| m.form.clone()).collect();
        assert_eq!(got, expected);
        let all = cospectral_classes(&EnumerationSpec::new(5), true).unwrap();
        assert_eq!(all.iter().map(|c| c.members.len()).sum::<usize>(), 34);
    }

    #[test]
    fn star_has_one_mate() {
        let check = verify_ds(&complete_bipartite(1, 4).unwrap()).unwrap();
        assert!(!check.is_ds_within_n);
        assert_eq!(check.mates.len(), 1);
        assert_eq!(
            canonical_form_with_cap(&check.mates[0], 12).unwrap(),
            canonical_form_with_cap(
                &with_isolated(&complete_bipartite(2, 2).unwrap(), 1).unwrap(),
                12
            )
            .unwrap()
        );
    }

    #[test]
    fn small_window() {
        let report = verify_minus_edge_window(4).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert!(report.all_passed);
        let report = verify_minus_edge_window(7).unwrap();
        let pairs: Vec<_> = report.rows.iter().map(|r| (r.p, r.q)).collect();
        assert_eq!(pairs, vec![(2, 2), (2, 3), (2, 4), (3, 3), (2, 5), (3, 4)]);
        assert!(report.all_passed);
    }

    #[test]
    fn class_json_shape() {
        let classes = cospectral_classes(&EnumerationSpec::new(5), false).unwrap();
        let v = serde_json::to_value(&classes[0]).unwrap();
        assert_eq!(v["count"], 2);
        assert_eq!(
            v["poly"],
            serde_json::json!(["0", "0", "0", "-4", "0", "1"])
        );
        assert_eq!(v["members"].as_array().unwrap().len(), 2);
    }
}
