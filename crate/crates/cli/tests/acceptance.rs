//! Acceptance run: ten end-to-end checks, one PASS/FAIL line each.
//!
//! Runs without the libtest harness (`harness = false`) so the lines print in
//! order with their timings. The process exits non-zero if any check fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;

use kpq_spectra::ds::{
    balanced_mate_instance, build_mate, ds_check_k_plus, enumerate_non_ds, non_ds_by_quadratic,
    unit_residue_instance,
};
use kpq_spectra::graph::{
    canonical_form, canonical_form_with_cap, classify_family, complete_bipartite, graph6_encode,
    k_minus, k_plus, with_isolated, Graph, MAX_VERTICES,
};
use kpq_spectra::oracle::{
    cospectral_classes, count_graphs, par_fold, verify_ds, verify_minus_edge_window,
    EnumerationSpec,
};
use kpq_spectra::poly::char_poly;
use kpq_spectra::spectra::{
    is_complete_bipartite_spectrum, quartic_to_poly, radius_threshold_holds, rho_leq_sqrt_e,
    spectrum_k_minus, spectrum_k_plus, threshold_by_intervals, threshold_exact,
};
use kpq_spectra::IntPolynomial;

type Outcome = Result<String, String>;

/// `(p, q)`, the mate `(p2, q2, isolated)` and two witnesses `(a, b, b', t)`.
type AtlasRow = ((u64, u64), (u64, u64, u64), [(u64, u64, u64, u64); 2]);

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// `K(a,b)` plus isolated vertices with `a, b ≥ 1`, decided from the
/// definition rather than through the library's family classifier.
fn is_complete_bipartite_plus_isolated(g: &Graph) -> bool {
    let core = g.strip_isolated();
    if core.order() < 2 || !core.is_connected() {
        return false;
    }
    match core.bipartition() {
        Some((a, b)) => core.size() == (a.count_ones() * b.count_ones()) as usize,
        None => false,
    }
}

// 1. non-DS atlas for q <= 20 from the command line tool
fn atlas_table() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_kpq"))
        .args(["atlas", "--max-q", "20"])
        .output()
        .map_err(err)?;
    ensure(out.status.success(), || {
        format!("atlas exited with {}", out.status)
    })?;
    let records: Vec<Value> = serde_json::from_slice(&out.stdout).map_err(err)?;
    let expected: [AtlasRow; 7] = [
        ((3, 6), (4, 5, 1), [(2, 1, 1, 1), (3, 2, 2, 0)]),
        ((4, 10), (6, 7, 2), [(2, 1, 1, 2), (5, 3, 2, 0)]),
        ((5, 14), (8, 9, 3), [(2, 1, 1, 3), (7, 4, 2, 0)]),
        ((4, 12), (5, 10, 2), [(3, 1, 1, 1), (4, 3, 3, 0)]),
        ((5, 15), (7, 11, 3), [(3, 2, 2, 1), (5, 2, 3, 0)]),
        ((6, 18), (10, 11, 4), [(2, 1, 1, 4), (9, 5, 2, 0)]),
        ((5, 20), (6, 17, 3), [(4, 1, 1, 1), (5, 4, 4, 0)]),
    ];
    ensure(records.len() == expected.len(), || {
        format!("{} records, want 7", records.len())
    })?;
    let u = |v: &Value| v.as_u64().unwrap_or(u64::MAX);
    for ((p, q), (p2, q2, iso), witnesses) in expected {
        let rec = records
            .iter()
            .find(|r| u(&r["verdict"]["p"]) == p && u(&r["verdict"]["q"]) == q)
            .ok_or_else(|| format!("no record for K+({p},{q})"))?;
        let v = &rec["verdict"];
        ensure(v["status"] == "NotDS", || {
            format!("K+({p},{q}) status {}", v["status"])
        })?;
        let m = &v["mate"];
        ensure(
            (u(&m["p2"]), u(&m["q2"]), u(&m["isolated"])) == (p2, q2, iso),
            || format!("K+({p},{q}) mate {m}"),
        )?;
        let got: BTreeSet<(u64, u64, u64, u64)> = v["witnesses"]
            .as_array()
            .ok_or("witnesses missing")?
            .iter()
            .map(|w| (u(&w["a"]), u(&w["b"]), u(&w["bp"]), u(&w["t"])))
            .collect();
        for w in witnesses {
            ensure(got.contains(&w), || {
                format!("K+({p},{q}) lacks witness {w:?}")
            })?;
        }
    }
    Ok("7 records, mates and both witnesses per row match".into())
}

// 2. smallest cospectral pair
fn smallest_pair() -> Outcome {
    for n in 0..=4 {
        let classes = cospectral_classes(&EnumerationSpec::new(n), false).map_err(err)?;
        ensure(classes.is_empty(), || {
            format!("{} classes on {n} vertices", classes.len())
        })?;
    }
    let classes = cospectral_classes(&EnumerationSpec::new(5), false).map_err(err)?;
    ensure(classes.len() == 1, || {
        format!("{} classes on 5 vertices", classes.len())
    })?;
    let class = &classes[0];
    let expected_poly = IntPolynomial::from_i64(&[0, 0, 0, -4, 0, 1]);
    ensure(class.poly == expected_poly, || {
        format!("class polynomial {}", class.poly)
    })?;
    let got: BTreeSet<_> = class.members.iter().map(|m| m.form.clone()).collect();
    let want: BTreeSet<_> = [
        complete_bipartite(1, 4).map_err(err)?,
        with_isolated(&complete_bipartite(2, 2).map_err(err)?, 1).map_err(err)?,
    ]
    .iter()
    .map(|g| canonical_form(g).map_err(err))
    .collect::<Result<_, _>>()?;
    ensure(got == want, || {
        format!("members {:?}", class.graph6_members())
    })?;
    Ok(format!(
        "only class on <= 5 vertices: {} = {{{}}}",
        class.poly,
        class.graph6_members().join(", ")
    ))
}

// 3. closed-form spectra
fn closed_forms() -> Outcome {
    let mut pairs = 0;
    for q in 2..=58usize {
        for p in (2..=q).take_while(|p| p + q <= 60) {
            let minus = quartic_to_poly(&spectrum_k_minus(p as u64, q as u64).map_err(err)?);
            ensure(minus == char_poly(&k_minus(p, q).map_err(err)?), || {
                format!("K-({p},{q})")
            })?;
            let plus = quartic_to_poly(&spectrum_k_plus(p as u64, q as u64).map_err(err)?);
            ensure(plus == char_poly(&k_plus(p, q).map_err(err)?), || {
                format!("K+({p},{q})")
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} pairs (p,q), both families, coefficient-exact"
    ))
}

// 4. minus-edge graphs with p + q <= 9 have no mate
fn minus_edge_window() -> Outcome {
    let report = verify_minus_edge_window(9).map_err(err)?;
    let failed: Vec<_> = report
        .rows
        .iter()
        .filter(|r| !r.passed)
        .map(|r| (r.p, r.q))
        .collect();
    ensure(report.all_passed && failed.is_empty(), || {
        format!("failed pairs {failed:?}")
    })?;
    let searched: usize = report.rows.iter().map(|r| r.searched).sum();
    let nine = count_graphs(&EnumerationSpec::new(9)).map_err(err)?;
    ensure(nine == 274_668, || format!("{nine} graphs on 9 vertices"))?;
    Ok(format!(
        "{} pairs without mates, {searched} same-size graphs compared, {nine} graphs on 9 vertices",
        report.rows.len()
    ))
}

// 5. K+(3,6) among all 10-vertex, 19-edge graphs
fn flagship() -> Outcome {
    let g = k_plus(3, 6).map_err(err)?;
    let check = verify_ds(&g).map_err(err)?;
    ensure(check.mates.len() == 1, || {
        format!("{} mates", check.mates.len())
    })?;
    let expected = canonical_form(&with_isolated(&k_minus(4, 5).map_err(err)?, 1).map_err(err)?)
        .map_err(err)?;
    ensure(
        canonical_form(&check.mates[0]).map_err(err)? == expected,
        || format!("mate {}", graph6_encode(&check.mates[0])),
    )?;
    Ok(format!(
        "{} graphs searched, unique mate {} = K_{{4,5}}- u K1",
        check.searched,
        graph6_encode(&check.mates[0])
    ))
}

// 6. every non-DS verdict with 3 <= p <= q <= 200 is cospectral with its mate
fn soundness() -> Outcome {
    let (mut explicit, mut symbolic) = (0, 0);
    for q in 3..=200u64 {
        for p in 3..=q {
            let v = ds_check_k_plus(p, q).map_err(err)?;
            let Some(m) = v.mate else { continue };
            let plus = spectrum_k_plus(p, q).map_err(err)?;
            let mate = spectrum_k_minus(m.p2, m.q2)
                .map_err(err)?
                .with_isolated(m.isolated);
            ensure(plus == mate, || {
                format!("K+({p},{q}) quartic differs from {}", m.name())
            })?;
            if p + q < MAX_VERTICES as u64 {
                let g = k_plus(p as usize, q as usize).map_err(err)?;
                let h = build_mate(&v).map_err(err)?;
                ensure(char_poly(&g) == char_poly(&h), || {
                    format!("K+({p},{q}) polynomial")
                })?;
                let (fg, fh) = (
                    canonical_form_with_cap(&g, MAX_VERTICES).map_err(err)?,
                    canonical_form_with_cap(&h, MAX_VERTICES).map_err(err)?,
                );
                ensure(fg != fh, || format!("K+({p},{q}) isomorphic to its mate"))?;
                explicit += 1;
            } else {
                symbolic += 1;
            }
        }
    }
    ensure(explicit > 0 && symbolic > 0, || "empty sweep".into())?;
    Ok(format!(
        "{explicit} explicit pairs (polynomial equal, forms differ), {symbolic} symbolic"
    ))
}

// 7. both non-DS sweeps agree
fn parametrization() -> Outcome {
    let by_params: BTreeSet<(u64, u64)> =
        enumerate_non_ds(2000).iter().map(|v| (v.p, v.q)).collect();
    let by_roots: BTreeSet<(u64, u64)> = non_ds_by_quadratic(2000).into_iter().collect();
    ensure(by_params == by_roots, || {
        let extra: Vec<_> = by_params.symmetric_difference(&by_roots).take(5).collect();
        format!("sets differ, e.g. {extra:?}")
    })?;
    Ok(format!(
        "{} non-DS pairs with q <= 2000 from both sweeps",
        by_roots.len()
    ))
}

// 8. the K+(m+2, 4m+2) family
fn balanced_family() -> Outcome {
    for m in 1..=100u64 {
        let inst = balanced_mate_instance(m).map_err(err)?;
        ensure(unit_residue_instance(m, 2).map_err(err)? == inst, || {
            format!("m = {m}: instances differ")
        })?;
        let plus = spectrum_k_plus(inst.p, inst.q).map_err(err)?;
        let mate = spectrum_k_minus(inst.p2, inst.q2)
            .map_err(err)?
            .with_isolated(inst.isolated);
        ensure(plus == mate, || format!("m = {m}: quartics differ"))?;
        let s = 4 * m * m + 10 * m + 5;
        ensure(plus.s.to_string() == s.to_string(), || {
            format!("m = {m}: s = {}", plus.s)
        })?;
    }
    Ok("m = 1..100: quartics agree, s = 4m^2+10m+5, both constructions coincide".into())
}

#[derive(Default)]
struct Tally {
    graphs: usize,
    special: usize,
    failures: Vec<String>,
}

fn merge(mut a: Tally, b: Tally) -> Tally {
    a.graphs += b.graphs;
    a.special += b.special;
    a.failures.extend(b.failures);
    a
}

fn finish(t: Tally, what: &str) -> Result<Tally, String> {
    if t.failures.is_empty() {
        Ok(t)
    } else {
        let sample: Vec<_> = t.failures.iter().take(5).collect();
        Err(format!(
            "{} {what} failures, e.g. {sample:?}",
            t.failures.len()
        ))
    }
}

// 9. coefficient facts over every graph on <= 8 vertices
fn coefficient_facts() -> Outcome {
    let mut total = Tally::default();
    for n in 0..=8 {
        let t = par_fold(
            &EnumerationSpec::new(n),
            Tally::default,
            |mut t, g| {
                t.graphs += 1;
                let p = char_poly(&g);
                let cb = is_complete_bipartite_plus_isolated(&g);
                t.special += cb as usize;
                let ok = (n < 1 || p.coeff(n - 1) == 0.into())
                    && (n < 2 || p.coeff(n - 2) == (-(g.size() as i64)).into())
                    && p.even_part().is_some() == g.is_bipartite()
                    && is_complete_bipartite_spectrum(&p).is_some() == cb;
                if !ok {
                    t.failures.push(graph6_encode(&g));
                }
                t
            },
            merge,
        )
        .map_err(err)?;
        total = merge(total, finish(t, "coefficient")?);
    }
    Ok(format!(
        "{} graphs, {} complete bipartite plus isolated",
        total.graphs, total.special
    ))
}

// 10. radius bound and threshold over bipartite graphs on <= 8 vertices
fn radius_facts() -> Outcome {
    let mut total = Tally::default();
    let mut outside = 0;
    for n in 0..=8 {
        let t = par_fold(
            &EnumerationSpec::new(n).bipartite(),
            Tally::default,
            |mut t, g| {
                t.graphs += 1;
                let fail = |t: &mut Tally, why: &str| {
                    t.failures.push(format!("{} {why}", graph6_encode(&g)))
                };
                let rho = match rho_leq_sqrt_e(&g) {
                    Ok(r) => r,
                    Err(e) => {
                        fail(&mut t, &e.to_string());
                        return t;
                    }
                };
                if !rho.holds {
                    fail(&mut t, "rho^2 > e");
                }
                if g.size() > 0 && rho.equality != is_complete_bipartite_plus_isolated(&g) {
                    fail(&mut t, "equality mismatch");
                }
                if g.size() == 0 || g.isolated_count() > 0 {
                    return t;
                }
                let exact = threshold_exact(&g).unwrap_or(true);
                let fast = radius_threshold_holds(&g).ok();
                let wide = threshold_by_intervals(&g, 50).ok().flatten();
                if fast != Some(exact) || wide.is_some_and(|w| w != exact) {
                    fail(&mut t, "threshold routes disagree");
                }
                if !classify_family(&g).in_family_set() {
                    t.special += 1;
                    if exact {
                        fail(&mut t, "outside the families but meets the threshold");
                    }
                }
                t
            },
            merge,
        )
        .map_err(err)?;
        let t = finish(t, "radius")?;
        outside += t.special;
        total = merge(total, t);
    }
    Ok(format!(
        "{} bipartite graphs satisfy rho^2 <= e with the stated equality cases; {outside} isolated-free graphs outside the families all fail the threshold",
        total.graphs
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "non-DS atlas for q <= 20",
            Duration::from_secs(1),
            atlas_table,
        ),
        (
            "smallest cospectral pair",
            Duration::from_secs(1),
            smallest_pair,
        ),
        (
            "closed-form spectra for p+q <= 60",
            Duration::from_secs(60),
            closed_forms,
        ),
        (
            "K-(p,q) has no mate for p+q <= 9",
            Duration::from_secs(600),
            minus_edge_window,
        ),
        (
            "K+(3,6) has a unique mate",
            Duration::from_secs(1800),
            flagship,
        ),
        (
            "non-DS verdicts are cospectral, q <= 200",
            Duration::from_secs(60),
            soundness,
        ),
        (
            "parametrized and root sweeps agree, q <= 2000",
            Duration::from_secs(60),
            parametrization,
        ),
        (
            "K+(m+2,4m+2) family, m <= 100",
            Duration::from_secs(1),
            balanced_family,
        ),
        (
            "coefficient facts, n <= 8",
            Duration::from_secs(300),
            coefficient_facts,
        ),
        (
            "radius bound and threshold, bipartite n <= 8",
            Duration::from_secs(600),
            radius_facts,
        ),
    ];
    let mut failures = 0;
    for (k, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; over the {:?} budget", limit)),
            other => other,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        failures += result.is_err() as usize;
        println!(
            "{tag} criterion {}: {name} ({:.3}s) {detail}",
            k + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
