//! Sturm sequences and exact real-root location over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntPolynomial;

/// Sturm chain of the squarefree part of a polynomial.
///
/// Every member is scaled by a positive constant only, so sign variations are
/// those of the textbook chain.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    /// Builds the chain for the distinct roots of `p`. Panics on the zero polynomial.
    pub fn new(p: &IntPolynomial) -> Self {
        assert!(!p.is_zero(), "the zero polynomial has no Sturm chain");
        let f = p.squarefree_part();
        let mut chain = vec![f.clone()];
        let mut next = f.derivative().primitive();
        while !next.is_zero() {
            let r = chain.last().unwrap().positive_pseudo_rem(&next);
            chain.push(next);
            next = (-r).primitive_keep_sign();
        }
        SturmChain { chain }
    }

    /// The squarefree polynomial the chain was built from.
    pub fn base(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(lead_sign))
    }

    fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = lead_sign(p);
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in `(a, b]`, for `a < b`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        debug_assert!(a < b);
        self.variations_at(a) - self.variations_at(b)
    }

    /// Number of distinct real roots strictly greater than `a`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at_pos_inf()
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

fn lead_sign(p: &IntPolynomial) -> i8 {
    match p.leading() {
        Some(c) if c.is_positive() => 1,
        Some(c) if c.is_negative() => -1,
        _ => 0,
    }
}

impl IntPolynomial {
    /// Divides out the (positive) content without touching the sign.
    fn primitive_keep_sign(&self) -> IntPolynomial {
        let c = self.content();
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(self.coeffs().iter().map(|a| a / &c).collect())
    }
}

/// True iff every real root of `q` is at most `bound`. Decided exactly.
///
/// The zero polynomial vanishes everywhere and gives `false`; a nonzero
/// constant has no roots and gives `true`.
pub fn max_root_leq(q: &IntPolynomial, bound: &BigRational) -> bool {
    if q.is_zero() {
        return false;
    }
    if q.degree() == Some(0) {
        return true;
    }
    SturmChain::new(q).count_above(bound) == 0
}

/// Cauchy bound: every root of `p` has absolute value below the result.
pub(crate) fn root_bound(p: &IntPolynomial) -> BigRational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::new(max, lead) + BigRational::one()
}

/// A real root of a squarefree polynomial pinned to an interval `(lo, hi]`
/// that contains no other root.
#[derive(Clone, Debug)]
pub(crate) struct IsolatedRoot {
    pub chain: SturmChain,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl IsolatedRoot {
    /// The largest real root of `p`, if it has one.
    pub fn largest(p: &IntPolynomial) -> Option<IsolatedRoot> {
        let chain = SturmChain::new(p);
        if chain.count_real() == 0 {
            return None;
        }
        let mut hi = root_bound(chain.base());
        let mut lo = -hi.clone();
        while chain.count_in(&lo, &hi) > 1 {
            let mid = (&lo + &hi) / BigInt::from(2);
            if chain.count_in(&mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(IsolatedRoot { chain, lo, hi })
    }

    /// Halves the interval, keeping the root inside.
    pub fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) / BigInt::from(2);
        if self.chain.count_in(&mid, &self.hi) == 1 {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Exact sign of `f` at the root.
    pub fn sign_of(&mut self, f: &IntPolynomial) -> i8 {
        if f.is_zero() {
            return 0;
        }
        if f.degree() == Some(0) {
            return lead_sign(f);
        }
        let common = self.chain.base().gcd(f);
        if common.degree().unwrap_or(0) > 0
            && SturmChain::new(&common).count_in(&self.lo, &self.hi) > 0
        {
            return 0;
        }
        let f_chain = SturmChain::new(f);
        while f_chain.count_in(&self.lo, &self.hi) > 0 {
            self.bisect();
        }
        // f has no root in (lo, hi], so its sign there is constant and nonzero
        f.sign_at(&self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn counts_roots() {
        // (x-1)(x-2)(x-3)
        let f = p(&[-6, 11, -6, 1]);
        let s = SturmChain::new(&f);
        assert_eq!(s.count_real(), 3);
        assert_eq!(s.count_in(&r(0, 1), &r(5, 2)), 2);
        assert_eq!(s.count_in(&r(1, 1), &r(2, 1)), 1); // (1, 2]
        assert_eq!(s.count_above(&r(3, 1)), 0);
        assert_eq!(s.count_above(&r(29, 10)), 1);
        // x² + 1
        assert_eq!(SturmChain::new(&p(&[1, 0, 1])).count_real(), 0);
        // repeated roots count once: (x-1)²(x+2)
        assert_eq!(SturmChain::new(&p(&[2, -3, 0, 1])).count_real(), 2);
    }

    #[test]
    fn max_root_examples() {
        let q = p(&[6, -11, 1]); // roots ≈ 0.57, 10.43
        assert!(max_root_leq(&q, &r(11, 1)));
        assert!(!max_root_leq(&q, &r(10, 1)));
        let lin = p(&[-4, 1]);
        assert!(max_root_leq(&lin, &r(4, 1)));
        assert!(!max_root_leq(&lin, &r(3, 1)));
        assert!(max_root_leq(&p(&[7]), &r(-100, 1)));
        assert!(!max_root_leq(&IntPolynomial::zero(), &r(0, 1)));
        // negative leading coefficient
        assert!(max_root_leq(&p(&[4, -1]), &r(4, 1)));
    }

    #[test]
    fn isolate_and_sign() {
        let q = p(&[6, -11, 1]);
        let mut root = IsolatedRoot::largest(&q).unwrap();
        while root.width() > r(1, 1000) {
            root.bisect();
        }
        // (11 + √97)/2 ≈ 10.424
        assert!(root.lo < r(10425, 1000) && root.hi > r(10424, 1000));
        assert_eq!(root.sign_of(&p(&[-10, 1])), 1);
        assert_eq!(root.sign_of(&p(&[-11, 1])), -1);
        assert_eq!(root.sign_of(&q), 0);
        assert_eq!(root.sign_of(&p(&[-6, 11, -1]).scale(&BigInt::from(3))), 0);
        assert!(IsolatedRoot::largest(&p(&[1, 0, 1])).is_none());
    }
}
