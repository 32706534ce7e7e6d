//! Closed-form spectra of `K(p,q)`, `K⁻(p,q)` and `K⁺(p,q)`, and the
//! spectral-radius predicates used to pin down the family.
//!
//! A family spectrum is `{0^z, ±λ₁, ±λ₂}` with `λ₁², λ₂²` the roots of
//! `y² − s·y + t`, so the whole spectrum is three integers and the
//! characteristic polynomial is `x^z · (x⁴ − s·x² + t)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::poly::sturm::IsolatedRoot;
use crate::poly::{char_poly, max_root_leq, IntPolynomial};

/// The spectrum `{0^zeros, ±√((s ± √(s² − 4t))/2)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuarticSpectrum {
    pub zeros: u64,
    pub s: BigInt,
    pub t: BigInt,
}

impl Serialize for QuarticSpectrum {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("QuarticSpectrum", 4)?;
        st.serialize_field("n", &self.order())?;
        st.serialize_field("zeros", &self.zeros)?;
        st.serialize_field("s", &self.s.to_string())?;
        st.serialize_field("t", &self.t.to_string())?;
        st.end()
    }
}

impl QuarticSpectrum {
    pub fn new(zeros: u64, s: BigInt, t: BigInt) -> Result<Self> {
        if s.is_negative() || t.is_negative() || &s * &s < BigInt::from(4) * &t {
            return Err(domain(format!(
                "(s, t) = ({s}, {t}) does not give a real spectrum"
            )));
        }
        Ok(QuarticSpectrum { zeros, s, t })
    }

    /// Vertex count of a graph with this spectrum.
    pub fn order(&self) -> u64 {
        self.zeros + 4
    }

    /// Edge count, half the sum of squared eigenvalues.
    pub fn edges(&self) -> &BigInt {
        &self.s
    }

    /// `s² − 4t`, the discriminant of `y² − s·y + t`.
    pub fn discriminant(&self) -> BigInt {
        &self.s * &self.s - BigInt::from(4) * &self.t
    }

    /// Same nonzero eigenvalues with `k` more zeros: the spectrum after adding
    /// `k` isolated vertices.
    pub fn with_isolated(&self, k: u64) -> Self {
        QuarticSpectrum {
            zeros: self.zeros + k,
            ..self.clone()
        }
    }

    /// Approximate nonzero eigenvalues `[λ₁, λ₂, −λ₂, −λ₁]`. Diagnostics only.
    pub fn approx_eigenvalues(&self) -> [f64; 4] {
        let s = self.s.to_f64().unwrap_or(f64::NAN);
        let d = self
            .discriminant()
            .to_f64()
            .unwrap_or(f64::NAN)
            .max(0.0)
            .sqrt();
        let l1 = ((s + d) / 2.0).sqrt();
        let l2 = ((s - d) / 2.0).max(0.0).sqrt();
        [l1, l2, -l2, -l1]
    }
}

fn normalize(p: u64, q: u64) -> Result<(BigInt, BigInt, u64, u64)> {
    let (p, q) = (p.min(q), p.max(q));
    if p < 2 {
        return Err(domain(format!(
            "both parts must have at least 2 vertices, got ({p},{q})"
        )));
    }
    Ok((BigInt::from(p), BigInt::from(q), p, q))
}

/// Spectrum of `K⁻(p,q)`: `zeros = p+q−4`, `s = pq−1`, `t = (p−1)(q−1)`.
pub fn spectrum_k_minus(p: u64, q: u64) -> Result<QuarticSpectrum> {
    let (bp, bq, p, q) = normalize(p, q)?;
    let one = BigInt::one();
    Ok(QuarticSpectrum {
        zeros: p + q - 4,
        s: &bp * &bq - &one,
        t: (&bp - &one) * (&bq - &one),
    })
}

/// Spectrum of `K⁺(p,q)`: `zeros = p+q−3`, `s = pq+1`, `t = (p−1)q`.
pub fn spectrum_k_plus(p: u64, q: u64) -> Result<QuarticSpectrum> {
    let (bp, bq, p, q) = normalize(p, q)?;
    let one = BigInt::one();
    Ok(QuarticSpectrum {
        zeros: p + q - 3,
        s: &bp * &bq + &one,
        t: (&bp - &one) * &bq,
    })
}

/// `x^zeros · (x⁴ − s·x² + t)`.
pub fn quartic_to_poly(qs: &QuarticSpectrum) -> IntPolynomial {
    let z = qs.zeros as usize;
    let mut coeffs = vec![BigInt::zero(); z + 5];
    coeffs[z] = qs.t.clone();
    coeffs[z + 2] = -qs.s.clone();
    coeffs[z + 4] = BigInt::one();
    IntPolynomial::new(coeffs)
}

/// Spectrum `{0^(n−2), ±√(pq)}` of `K(p,q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompleteBipartiteSpectrum {
    pub n: u64,
    pub zeros: u64,
    #[serde(serialize_with = "decimal")]
    pub lambda_squared: BigInt,
}

fn decimal<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn spectrum_complete_bipartite(p: u64, q: u64) -> Result<CompleteBipartiteSpectrum> {
    if p == 0 || q == 0 {
        return Err(domain(format!("K({p},{q}) needs both parts non-empty")));
    }
    Ok(CompleteBipartiteSpectrum {
        n: p + q,
        zeros: p + q - 2,
        lambda_squared: BigInt::from(p) * BigInt::from(q),
    })
}

/// If `p = x^(n−2)·(x² − c)` with an integer `c ≥ 1`, returns `c`.
///
/// `c ≥ 1` rather than `c ≥ 0`: `x^n` is the spectrum of the edgeless graph,
/// which contains no complete bipartite graph.
pub fn is_complete_bipartite_spectrum(p: &IntPolynomial) -> Option<BigInt> {
    let n = p.degree()?;
    if n < 2 || !p.is_monic() || !p.coeff(n - 1).is_zero() {
        return None;
    }
    let c = -p.coeff(n - 2);
    if !c.is_positive() {
        return None;
    }
    p.coeffs()[..n - 2].iter().all(Zero::is_zero).then_some(c)
}

/// Outcome of comparing `ρ(G)` with `√e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RhoBound {
    /// `ρ² ≤ e`.
    pub holds: bool,
    /// `ρ² = e`.
    pub equality: bool,
}

fn bipartite_even_part(g: &Graph) -> Result<IntPolynomial> {
    if !g.is_bipartite() {
        return Err(domain("graph is not bipartite"));
    }
    let (_, q) = char_poly(g)
        .even_part()
        .expect("a bipartite graph has a symmetric spectrum");
    Ok(q)
}

/// Exact comparison of `ρ(G)²` with the edge count `e` of a bipartite graph.
///
/// `ρ²` is the largest root of the even part `q(y)` of the characteristic
/// polynomial (or `0` when `q` is constant), so `ρ² ≤ e` is `max_root_leq(q, e)`
/// and equality is `q(e) = 0`. The edgeless graph gives `0 = 0`.
pub fn rho_leq_sqrt_e(g: &Graph) -> Result<RhoBound> {
    let q = bipartite_even_part(g)?;
    let e = BigInt::from(g.size());
    if e.is_zero() {
        return Ok(RhoBound {
            holds: true,
            equality: true,
        });
    }
    let holds = max_root_leq(&q, &BigRational::from_integer(e.clone()));
    let equality = holds && q.eval(&e).is_zero();
    Ok(RhoBound { holds, equality })
}

fn threshold_preconditions(g: &Graph) -> Result<()> {
    if !g.is_bipartite() {
        return Err(domain("graph is not bipartite"));
    }
    if g.isolated_count() > 0 {
        return Err(domain("graph has isolated vertices"));
    }
    if g.size() == 0 {
        return Err(domain("graph has no edges"));
    }
    Ok(())
}

fn largest_square_root_of_spectrum(g: &Graph) -> Result<IsolatedRoot> {
    let q = bipartite_even_part(g)?;
    Ok(IsolatedRoot::largest(&q).expect("a graph with an edge has a positive eigenvalue"))
}

/// Whether `ρ(G) ≥ √((e + √(e² − 4(e − 1 − √(e−1))))/2)`, decided exactly.
///
/// A 30-digit interval evaluation settles almost every graph; graphs whose
/// interval straddles the threshold go through [`threshold_exact`].
pub fn radius_threshold_holds(g: &Graph) -> Result<bool> {
    threshold_preconditions(g)?;
    if let Some(v) = threshold_by_intervals(g, 30)? {
        return Ok(v);
    }
    threshold_exact(g)
}

/// Exact route. With `R = ρ²` and `h(R) = (R − 1)(R − e + 1)` the threshold
/// `R ≥ (e + √((e−2)² + 4√(e−1)))/2` is the conjunction
/// `2R − e ≥ 0`, `h(R) ≥ 0` and `h(R)² − (e − 1) ≥ 0`, each an exact sign
/// test of a polynomial at the isolated root `R`.
pub fn threshold_exact(g: &Graph) -> Result<bool> {
    threshold_preconditions(g)?;
    let mut root = largest_square_root_of_spectrum(g)?;
    let e = BigInt::from(g.size());
    let one = BigInt::one();

    let linear = IntPolynomial::new(vec![-e.clone(), BigInt::from(2)]);
    let h = IntPolynomial::new(vec![&e - &one, -e.clone(), one.clone()]);
    let h2 = &(&h * &h) - &IntPolynomial::constant(&e - &one);
    Ok(root.sign_of(&linear) >= 0 && root.sign_of(&h) >= 0 && root.sign_of(&h2) >= 0)
}

fn pow10(d: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), d as usize)
}

/// Lower and upper bounds on `√x` with denominator `10^d`.
fn sqrt_bounds(x_lo: &BigRational, x_hi: &BigRational, d: u32) -> (BigRational, BigRational) {
    let scale = pow10(2 * d);
    let den = pow10(d);
    let lo_int = (x_lo * BigRational::from_integer(scale.clone()))
        .floor()
        .to_integer();
    let hi_int = (x_hi * BigRational::from_integer(scale))
        .ceil()
        .to_integer();
    let lo = lo_int.max(BigInt::zero()).sqrt();
    let hi_int = hi_int.max(BigInt::zero());
    let mut hi = hi_int.sqrt();
    if &hi * &hi < hi_int {
        hi += 1;
    }
    (BigRational::new(lo, den.clone()), BigRational::new(hi, den))
}

/// Interval evaluation of the threshold at `digits` decimal digits.
///
/// `ρ²` is bracketed by Sturm bisection, the nested radicals by integer
/// square roots, and the answer is `None` when the brackets overlap.
pub fn threshold_by_intervals(g: &Graph, digits: u32) -> Result<Option<bool>> {
    threshold_preconditions(g)?;
    let mut root = largest_square_root_of_spectrum(g)?;
    let eps = BigRational::new(BigInt::one(), pow10(digits));
    while root.width() > eps {
        root.bisect();
    }
    let e = BigRational::from_integer(BigInt::from(g.size()));
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let four = BigRational::from_integer(BigInt::from(4));

    let em1 = &e - &one;
    let (r_lo, r_hi) = sqrt_bounds(&em1, &em1, digits + 2);
    let base = (&e - &two) * (&e - &two);
    let (d_lo, d_hi) = (&base + &four * &r_lo, &base + &four * &r_hi);
    let (s_lo, s_hi) = sqrt_bounds(&d_lo, &d_hi, digits + 2);
    let t_lo = (&e + &s_lo) / &two;
    let t_hi = (&e + &s_hi) / &two;

    if root.lo >= t_hi {
        Ok(Some(true))
    } else if root.hi < t_lo {
        Ok(Some(false))
    } else {
        Ok(None)
    }
}
