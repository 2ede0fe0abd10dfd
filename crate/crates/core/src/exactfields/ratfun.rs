use super::fpx;

/// An element of 𝔽_p(t): `num / den` with `den` monic and coprime to `num`.
///
/// Zero is `0 / 1`. The modulus is not stored; it comes from the owning
/// field, so every operation takes `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFun {
    num: Vec<u64>,
    den: Vec<u64>,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: Vec::new(), den: vec![1] }
    }

    pub fn one() -> Self {
        RatFun { num: vec![1], den: vec![1] }
    }

    pub fn constant(c: u64, p: u64) -> Self {
        let mut num = vec![c % p];
        fpx::trim(&mut num);
        RatFun { num, den: vec![1] }
    }

    pub fn t() -> Self {
        RatFun { num: vec![0, 1], den: vec![1] }
    }

    /// Builds and normalizes `num / den`. Panics if `den` is zero.
    pub fn new(num: Vec<u64>, den: Vec<u64>, p: u64) -> Self {
        let mut num = num;
        let mut den = den;
        fpx::trim(&mut num);
        fpx::trim(&mut den);
        assert!(!den.is_empty(), "rational function with zero denominator");
        if num.is_empty() {
            return RatFun::zero();
        }
        let g = fpx::gcd(&num, &den, p);
        if g.len() > 1 {
            num = fpx::divrem(&num, &g, p).0;
            den = fpx::divrem(&den, &g, p).0;
        }
        let lc = *den.last().unwrap();
        if lc != 1 {
            let inv = fpx::inv_mod(lc, p);
            num = fpx::scale(&num, inv, p);
            den = fpx::scale(&den, inv, p);
        }
        RatFun { num, den }
    }

    pub fn polynomial(num: Vec<u64>, p: u64) -> Self {
        RatFun::new(num, vec![1], p)
    }

    pub fn numerator(&self) -> &[u64] {
        &self.num
    }

    pub fn denominator(&self) -> &[u64] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num == [1] && self.den == [1]
    }

    pub fn add(&self, other: &Self, p: u64) -> Self {
        if self.den == other.den {
            return RatFun::new(fpx::add(&self.num, &other.num, p), self.den.clone(), p);
        }
        let n = fpx::add(
            &fpx::mul(&self.num, &other.den, p),
            &fpx::mul(&other.num, &self.den, p),
            p,
        );
        RatFun::new(n, fpx::mul(&self.den, &other.den, p), p)
    }

    pub fn neg(&self, p: u64) -> Self {
        RatFun { num: fpx::neg(&self.num, p), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self, p: u64) -> Self {
        self.add(&other.neg(p), p)
    }

    pub fn mul(&self, other: &Self, p: u64) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero();
        }
        RatFun::new(
            fpx::mul(&self.num, &other.num, p),
            fpx::mul(&self.den, &other.den, p),
            p,
        )
    }

    /// `None` for zero.
    pub fn inv(&self, p: u64) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFun::new(self.den.clone(), self.num.clone(), p))
        }
    }

    /// Substitutes `t ↦ t^q` (the q-th power map when q is a power of p).
    pub fn frobenius(&self, q: usize, p: u64) -> Self {
        let spread = |a: &[u64]| {
            let mut out = vec![0u64; if a.is_empty() { 0 } else { (a.len() - 1) * q + 1 }];
            for (i, &c) in a.iter().enumerate() {
                out[i * q] = c;
            }
            out
        };
        RatFun::new(spread(&self.num), spread(&self.den), p)
    }

    /// Writes `self = Σ_{r<q} t^r · c_r(t^q)` and returns the `c_r` with
    /// `t^q` renamed back to `t` (q a power of p).
    pub fn frobenius_components(&self, q: usize, p: u64) -> Vec<RatFun> {
        // num/den = num·den^{q-1} / den^q and den^q = den(t^q)
        let lifted = fpx::mul(&self.num, &fpx::pow(&self.den, q as u64 - 1, p), p);
        (0..q)
            .map(|r| {
                let mut comp = Vec::new();
                let mut e = r;
                while e < lifted.len() {
                    comp.push(lifted[e]);
                    e += q;
                }
                RatFun::new(comp, self.den.clone(), p)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_in_f2t() {
        let p = 2;
        let a = RatFun::new(vec![0, 1], vec![1, 1], p); // t/(t+1)
        let b = RatFun::new(vec![1, 1], vec![1], p); // t+1
        assert_eq!(a.mul(&b, p), RatFun::t());
    }

    #[test]
    fn inverse_of_t() {
        let inv = RatFun::t().inv(2).unwrap();
        assert_eq!(inv.numerator(), &[1]);
        assert_eq!(inv.denominator(), &[0, 1]);
    }

    #[test]
    fn components_reassemble() {
        let p = 3;
        let q = 3;
        let f = RatFun::new(vec![2, 1, 0, 1, 1], vec![1, 0, 1], p);
        let comps = f.frobenius_components(q, p);
        let mut acc = RatFun::zero();
        let mut tr = RatFun::one();
        for c in &comps {
            acc = acc.add(&tr.mul(&c.frobenius(q, p), p), p);
            tr = tr.mul(&RatFun::t(), p);
        }
        assert_eq!(acc, f);
    }
}
