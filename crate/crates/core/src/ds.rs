//! Determined-by-spectrum decisions for the families.
//!
//! `K⁻(p,q)` is always DS. `K⁺(p,q)` with `3 ≤ p ≤ q` is not DS exactly when
//! `x² − (q+3)x + (pq+2)` has two integer roots `p″ ≤ q″`, both at least 2;
//! the mate is then `K⁻(p″,q″) ∪ (p−2)K₁`. Those instances are also exactly
//! the images of the tuples `(a, b, b′, t)` under [`param_to_instance`],
//! which gives a second, independent way to list them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::graph::{k_minus, with_isolated, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DsStatus {
    #[serde(rename = "DS")]
    Ds,
    #[serde(rename = "NotDS")]
    NotDs,
}

/// The cospectral mate `K⁻(p2,q2) ∪ isolated·K₁`, with `p2 ≤ q2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mate {
    pub p2: u64,
    pub q2: u64,
    pub isolated: u64,
}

impl Mate {
    /// `"K_{4,5}- u 1K1"`, or `"K_{4,5}-"` when there are no isolated vertices.
    pub fn name(&self) -> String {
        let base = format!("K_{{{},{}}}-", self.p2, self.q2);
        if self.isolated == 0 {
            base
        } else {
            format!("{base} u {}K1", self.isolated)
        }
    }

    pub fn order(&self) -> u64 {
        self.p2 + self.q2 + self.isolated
    }
}

/// A tuple `(a, b, b′, t)` with `1 ≤ b, b′ < a`, `gcd(a, b) = 1`,
/// `b·b′ ≡ 1 (mod a)` and `b·b′ + t ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamTuple {
    pub a: u64,
    pub b: u64,
    pub bp: u64,
    pub t: u64,
}

impl ParamTuple {
    pub fn new(a: u64, b: u64, bp: u64, t: u64) -> Result<Self> {
        let pt = ParamTuple { a, b, bp, t };
        pt.validate()?;
        Ok(pt)
    }

    pub fn validate(&self) -> Result<()> {
        let ParamTuple { a, b, bp, t } = *self;
        if b == 0 || bp == 0 || b >= a || bp >= a {
            return Err(domain(format!(
                "need 1 <= b, b' < a, got a={a}, b={b}, b'={bp}"
            )));
        }
        if a.gcd(&b) != 1 {
            return Err(domain(format!("gcd({a}, {b}) != 1")));
        }
        if (b as u128 * bp as u128) % a as u128 != 1 {
            return Err(domain(format!("{b}*{bp} is not 1 mod {a}")));
        }
        if (b as u128) * (bp as u128) + (t as u128) < 2 {
            return Err(domain("b*b' + t must be at least 2"));
        }
        Ok(())
    }
}

/// A non-DS instance: `K⁺(p,q)` cospectral with `K⁻(p2,q2) ∪ isolated·K₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instance {
    pub p: u64,
    pub q: u64,
    pub p2: u64,
    pub q2: u64,
    pub isolated: u64,
}

/// Outcome of a DS decision for one family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsVerdict {
    pub p: u64,
    pub q: u64,
    pub status: DsStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mate: Option<Mate>,
    #[serde(default)]
    pub witnesses: Vec<ParamTuple>,
}

impl DsVerdict {
    fn ds(p: u64, q: u64) -> Self {
        DsVerdict {
            p,
            q,
            status: DsStatus::Ds,
            mate: None,
            witnesses: Vec::new(),
        }
    }

    pub fn is_ds(&self) -> bool {
        self.status == DsStatus::Ds
    }
}

fn normalize(p: u64, q: u64) -> Result<(u64, u64)> {
    let (p, q) = (p.min(q), p.max(q));
    if p < 2 {
        return Err(domain(format!(
            "both parts must have at least 2 vertices, got ({p},{q})"
        )));
    }
    Ok((p, q))
}

/// Integer roots `r1 ≤ r2` of `x² − (q+3)x + (pq+2)`, both at least 2.
fn mate_roots(p: u64, q: u64) -> Option<(u64, u64)> {
    let sum = BigInt::from(q) + 3;
    let prod = BigInt::from(p) * BigInt::from(q) + 2;
    let disc: BigInt = &sum * &sum - BigInt::from(4) * &prod;
    if disc.is_negative() {
        return None;
    }
    let r: BigInt = disc.sqrt();
    let top: BigInt = &sum + &r;
    if &r * &r != disc || top.is_odd() {
        return None;
    }
    let low: BigInt = &sum - &r;
    let lo = (low / 2u32).to_u64()?;
    let hi = (top / 2u32).to_u64()?;
    (lo >= 2).then_some((lo, hi))
}

/// DS decision for `K⁺(p,q)`. `p = 2` is DS because `K⁺(2,q) = K⁻(2,q+1)`.
pub fn ds_check_k_plus(p: u64, q: u64) -> Result<DsVerdict> {
    let (p, q) = normalize(p, q)?;
    if p == 2 {
        return Ok(DsVerdict::ds(p, q));
    }
    Ok(match mate_roots(p, q) {
        None => DsVerdict::ds(p, q),
        Some((p2, q2)) => DsVerdict {
            p,
            q,
            status: DsStatus::NotDs,
            mate: Some(Mate {
                p2,
                q2,
                isolated: p - 2,
            }),
            witnesses: witnesses_for(p, q),
        },
    })
}

/// DS decision for `K⁻(p,q)`: always DS.
pub fn ds_check_k_minus(p: u64, q: u64) -> Result<DsVerdict> {
    let (p, q) = normalize(p, q)?;
    Ok(DsVerdict::ds(p, q))
}

/// Graphs cospectral with `K(p,q)`: every `K(p′,q′) ∪ (p+q−p′−q′)K₁` with
/// `p′q′ = pq` and `p < p′ ≤ q′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompleteBipartiteVerdict {
    pub p: u64,
    pub q: u64,
    pub status: DsStatus,
    pub mates: Vec<CompleteBipartiteMate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompleteBipartiteMate {
    pub p2: u64,
    pub q2: u64,
    pub isolated: u64,
}

pub fn ds_check_complete_bipartite(p: u64, q: u64) -> Result<CompleteBipartiteVerdict> {
    let (p, q) = (p.min(q), p.max(q));
    if p == 0 {
        return Err(domain(format!("K({p},{q}) needs both parts non-empty")));
    }
    let prod = p as u128 * q as u128;
    let mates: Vec<_> = (p as u128 + 1..)
        .take_while(|d| d * d <= prod)
        .filter(|d| prod.is_multiple_of(*d))
        .map(|d| {
            let (p2, q2) = (d as u64, (prod / d) as u64);
            CompleteBipartiteMate {
                p2,
                q2,
                isolated: p + q - p2 - q2,
            }
        })
        .collect();
    let status = if mates.is_empty() {
        DsStatus::Ds
    } else {
        DsStatus::NotDs
    };
    Ok(CompleteBipartiteVerdict {
        p,
        q,
        status,
        mates,
    })
}

/// `(p, q, p″, q″)` with `q = a²t + ab′`, `p″ = bq/a + 1`, `q″ = q + 2 − bq/a`
/// and `p = b(a−b)t + bb′ + b(1−bb′)/a + 1`.
///
/// `p″` and `q″` come back in formula order, which is not always ascending.
pub fn param_to_instance(pt: ParamTuple) -> Result<(u64, u64, u64, u64)> {
    pt.validate()?;
    let (a, b, bp, t) = (pt.a as u128, pt.b as u128, pt.bp as u128, pt.t as u128);
    let s = a * t + bp;
    let q = a * s;
    // b((a−b)s + 1) is divisible by a because s ≡ b′ and b·b′ ≡ 1 (mod a)
    let p = b * ((a - b) * s + 1) / a + 1;
    let p2 = b * s + 1;
    let q2 = (a - b) * s + 2;
    let narrow = |x: u128| u64::try_from(x).map_err(|_| domain("instance does not fit in 64 bits"));
    Ok((narrow(p)?, narrow(q)?, narrow(p2)?, narrow(q2)?))
}

/// Every tuple that maps to `(p, q)` under [`param_to_instance`], sorted.
pub fn witnesses_for(p: u64, q: u64) -> Vec<ParamTuple> {
    let mut out = Vec::new();
    for a in (2..=q).filter(|a| q.is_multiple_of(*a)) {
        let s = q / a;
        for b in (1..a).filter(|b| a.gcd(b) == 1) {
            let bp = mod_inverse(b, a);
            if s < bp || !(s - bp).is_multiple_of(a) {
                continue;
            }
            let t = (s - bp) / a;
            let Ok(pt) = ParamTuple::new(a, b, bp, t) else {
                continue;
            };
            if matches!(param_to_instance(pt), Ok((pp, _, _, _)) if pp == p) {
                out.push(pt);
            }
        }
    }
    out
}

fn mod_inverse(b: u64, a: u64) -> u64 {
    let e = (b as i128).extended_gcd(&(a as i128));
    e.x.rem_euclid(a as i128) as u64
}

fn sorted_instance(p: u64, q: u64, x: u64, y: u64) -> Instance {
    Instance {
        p,
        q,
        p2: x.min(y),
        q2: x.max(y),
        isolated: p - 2,
    }
}

/// Non-DS `K⁺(p,q)` with `3 ≤ p ≤ q ≤ q_max`, from the parametrization, with
/// all witness tuples. Sorted by `(q, p)`.
pub fn enumerate_non_ds(q_max: u64) -> Vec<DsVerdict> {
    let found: Vec<(Instance, ParamTuple)> = (2..=q_max)
        .into_par_iter()
        .flat_map_iter(|a| tuples_with_modulus(a, q_max))
        .collect();
    let mut rows: BTreeMap<(u64, u64), (Instance, Vec<ParamTuple>)> = BTreeMap::new();
    for (inst, pt) in found {
        rows.entry((inst.q, inst.p))
            .or_insert_with(|| (inst, Vec::new()))
            .1
            .push(pt);
    }
    rows.into_values()
        .map(|(inst, mut witnesses)| {
            witnesses.sort();
            DsVerdict {
                p: inst.p,
                q: inst.q,
                status: DsStatus::NotDs,
                mate: Some(Mate {
                    p2: inst.p2,
                    q2: inst.q2,
                    isolated: inst.isolated,
                }),
                witnesses,
            }
        })
        .collect()
}

fn tuples_with_modulus(a: u64, q_max: u64) -> Vec<(Instance, ParamTuple)> {
    let mut out = Vec::new();
    for b in (1..a).filter(|b| a.gcd(b) == 1) {
        let bp = mod_inverse(b, a);
        for t in 0.. {
            if (a as u128) * (a as u128 * t as u128 + bp as u128) > q_max as u128 {
                break;
            }
            let Ok(pt) = ParamTuple::new(a, b, bp, t) else {
                continue;
            };
            let (p, q, x, y) = param_to_instance(pt).expect("validated tuple");
            if (3..=q).contains(&p) {
                out.push((sorted_instance(p, q, x, y), pt));
            }
        }
    }
    out
}

/// Non-DS `(p, q)` with `3 ≤ p ≤ q ≤ q_max`, from the integer roots of
/// `x² − (q+3)x + (pq+2)`. Sorted by `(q, p)`.
pub fn non_ds_by_quadratic(q_max: u64) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = (3..=q_max)
        .into_par_iter()
        .flat_map_iter(|q| {
            (3..=q)
                .filter(move |&p| mate_roots(p, q).is_some())
                .map(move |p| (p, q))
        })
        .collect();
    out.sort_by_key(|&(p, q)| (q, p));
    out
}

/// The `b = b′ = 1` instances: `K⁺((a−1)t+2, a²t+a)` and its mate
/// `K⁻(at+2, a(a−1)t+a+1) ∪ (a−1)t·K₁`.
pub fn unit_residue_instance(t: u64, a: u64) -> Result<Instance> {
    if t < 1 || a < 2 {
        return Err(domain(format!("need t >= 1 and a >= 2, got t={t}, a={a}")));
    }
    let (t, a) = (t as u128, a as u128);
    let narrow = |x: u128| u64::try_from(x).map_err(|_| domain("instance does not fit in 64 bits"));
    Ok(Instance {
        p: narrow((a - 1) * t + 2)?,
        q: narrow(a * a * t + a)?,
        p2: narrow(a * t + 2)?,
        q2: narrow(a * (a - 1) * t + a + 1)?,
        isolated: narrow((a - 1) * t)?,
    })
}

/// `K⁺(m+2, 4m+2)` and its mate `K⁻(2m+2, 2m+3) ∪ m·K₁`.
pub fn balanced_mate_instance(m: u64) -> Result<Instance> {
    if m < 1 {
        return Err(domain("m must be at least 1"));
    }
    Ok(Instance {
        p: m + 2,
        q: 4 * m + 2,
        p2: 2 * m + 2,
        q2: 2 * m + 3,
        isolated: m,
    })
}

/// The explicit mate graph of a non-DS verdict.
pub fn build_mate(verdict: &DsVerdict) -> Result<Graph> {
    let mate = verdict.mate.ok_or_else(|| {
        domain(format!(
            "K+({},{}) is DS and has no mate",
            verdict.p, verdict.q
        ))
    })?;
    let n = mate.order();
    if n > crate::graph::MAX_VERTICES as u64 {
        return Err(crate::Error::Capacity {
            what: "mate vertex count",
            got: n.min(usize::MAX as u64) as usize,
            limit: crate::graph::MAX_VERTICES,
        });
    }
    with_isolated(
        &k_minus(mate.p2 as usize, mate.q2 as usize)?,
        mate.isolated as usize,
    )
}
