//! Exact characteristic polynomials `det(xI − A)` of adjacency matrices.
//!
//! The main route reduces `A` to upper Hessenberg form modulo several 31-bit
//! primes, reads the characteristic polynomial off the Hessenberg recurrence,
//! and lifts the residues with the Chinese remainder theorem. The number of
//! primes comes from a Hadamard-type bound on the coefficients, so the lift
//! is exact. [`char_poly_leverrier`] is an independent Faddeev–LeVerrier
//! route over big integers kept for cross-checking.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::IntPolynomial;
use crate::graph::{bits, Graph};

const PRIME_POOL: usize = 48;

/// Descending primes below 2³¹. Products of two residues fit in a `u64`.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let is_prime = |m: u64| {
            m > 1
                && (2..)
                    .take_while(|d| d * d <= m)
                    .all(|d| !m.is_multiple_of(d))
        };
        let mut out = Vec::with_capacity(PRIME_POOL);
        let mut m = (1u64 << 31) - 1;
        while out.len() < PRIME_POOL {
            if is_prime(m) {
                out.push(m);
            }
            m -= 2;
        }
        out
    })
}

/// Upper bound on `|c_k|` for every coefficient of the characteristic polynomial.
///
/// `c_k` is, up to sign, a sum of principal minors of order `n − k`. By
/// Hadamard each minor is at most `∏ √deg(i)` over its rows, so `|c_k|` is at
/// most an elementary symmetric function of the `⌈√deg(i)⌉`.
fn coefficient_bound(g: &Graph) -> BigInt {
    let roots: Vec<u64> = g
        .degrees()
        .into_iter()
        .map(|d| {
            let d = d as u64;
            let r = (d as f64).sqrt() as u64;
            (r.saturating_sub(1)..=r + 1).find(|x| x * x >= d).unwrap()
        })
        .collect();
    let mut esf = vec![BigInt::zero(); roots.len() + 1];
    esf[0] = BigInt::one();
    for (i, &r) in roots.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let add = &esf[k - 1] * r;
            esf[k] += add;
        }
    }
    esf.into_iter().max().unwrap()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Characteristic polynomial modulo `p`, coefficients lowest degree first.
fn char_poly_mod(g: &Graph, p: u64) -> Vec<u64> {
    let n = g.order();
    let mut h = vec![0u64; n * n];
    for (i, &row) in g.rows().iter().enumerate() {
        for j in bits(row) {
            h[i * n + j] = 1;
        }
    }

    // Similarity transforms to upper Hessenberg form.
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| h[i * n + m - 1] != 0) else {
            continue;
        };
        if piv != m {
            for j in 0..n {
                h.swap(piv * n + j, m * n + j);
            }
            for i in 0..n {
                h.swap(i * n + piv, i * n + m);
            }
        }
        let inv = inv_mod(h[m * n + m - 1], p);
        for i in m + 1..n {
            let u = h[i * n + m - 1] * inv % p;
            if u == 0 {
                continue;
            }
            // row_i -= u · row_m
            for j in 0..n {
                let sub = u * h[m * n + j] % p;
                h[i * n + j] = (h[i * n + j] + p - sub) % p;
            }
            // col_m += u · col_i
            for j in 0..n {
                h[j * n + m] = (h[j * n + m] + u * h[j * n + i]) % p;
            }
        }
    }

    // P_k = (x − h_kk) P_{k−1} − Σ_{i<k} h_ik (∏_{j=i+1..k} h_{j,j−1}) P_{i−1}
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        let hkk = h[k * n + k];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - c * hkk % p) % p;
        }
        let mut t = 1u64;
        for i in (0..k).rev() {
            t = t * h[(i + 1) * n + i] % p;
            if t == 0 {
                break;
            }
            let f = h[i * n + k] * t % p;
            if f == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = (next[d] + p - f * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// The characteristic polynomial modulo one large prime. Equal polynomials
/// give equal fingerprints, so unequal fingerprints rule out cospectrality.
pub(crate) fn char_poly_fingerprint(g: &Graph) -> Vec<u64> {
    char_poly_mod(g, primes()[0])
}

/// Exact characteristic polynomial `det(xI − A)`: monic of degree `n`.
pub fn char_poly(g: &Graph) -> IntPolynomial {
    let n = g.order();
    if g.size() == 0 {
        return IntPolynomial::monomial(n);
    }
    let needed = BigInt::from(2) * coefficient_bound(g) + 1;
    let mut modulus = BigInt::one();
    let mut used = Vec::new();
    for &p in primes() {
        if modulus > needed {
            break;
        }
        used.push(p);
        modulus *= p;
    }
    assert!(modulus > needed, "prime pool too small for n = {n}");

    let residues: Vec<Vec<u64>> = used.iter().map(|&p| char_poly_mod(g, p)).collect();
    let half = &modulus >> 1;
    // Garner-free CRT: x = Σ rᵢ · Mᵢ · (Mᵢ⁻¹ mod pᵢ) mod M
    let basis: Vec<BigInt> = used
        .iter()
        .map(|&p| {
            let mi = &modulus / p;
            let mi_mod = (&mi % p).to_u64().unwrap();
            mi * inv_mod(mi_mod, p)
        })
        .collect();
    let coeffs = (0..=n)
        .map(|k| {
            let mut x = BigInt::zero();
            for (r, b) in residues.iter().zip(&basis) {
                x += b * r[k];
            }
            let x = x.mod_floor(&modulus);
            if x > half {
                x - &modulus
            } else {
                x
            }
        })
        .collect();
    IntPolynomial::new(coeffs)
}

/// Faddeev–LeVerrier over big integers.
///
/// `M₁ = I`, `c_{n−k} = −tr(A·M_k)/k`, `M_{k+1} = A·M_k + c_{n−k}·I`. The
/// divisions are exact. Multiplying by `A` is a sum of neighbour rows, so a
/// step costs `O(n·e)` big-integer additions.
pub fn char_poly_leverrier(g: &Graph) -> IntPolynomial {
    let n = g.order();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    if n == 0 {
        return IntPolynomial::new(coeffs);
    }
    let identity = |c: &BigInt| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { c.clone() } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    };
    let mut m = identity(&BigInt::one());
    for k in 1..=n {
        // am = A · M
        let am: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row = vec![BigInt::zero(); n];
                for j in bits(g.neighbors(i)) {
                    for (acc, x) in row.iter_mut().zip(&m[j]) {
                        *acc += x;
                    }
                }
                row
            })
            .collect();
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        let (c, r) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev–LeVerrier division is exact");
        coeffs[n - k] = c.clone();
        if k < n {
            m = am;
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += &c;
            }
        }
    }
    IntPolynomial::new(coeffs)
}

/// Edge count read off a characteristic polynomial: `−c_{n−2}`.
pub fn coefficient_edge_count(p: &IntPolynomial) -> BigInt {
    match p.degree() {
        Some(d) if d >= 2 => -p.coeff(d - 2),
        _ => BigInt::zero(),
    }
}
