//! Exact arithmetic in the truncated ramified discrete valuation ring
//! `O_N = Z[x]/(x^e - p, p^m)` with uniformizer `pi` the class of `x`,
//! so that `pi^e = p` and `N = e*m` is the pi-adic working precision.
//!
//! Elements are coefficient vectors `a_0 + a_1 pi + ... + a_{e-1} pi^{e-1}`
//! with each `a_i` a canonical residue in `Z/p^m`.  All arithmetic is exact;
//! there is no notion of a numerical zero anywhere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ambient truncated ring, determined by `(p, e, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    /// Residue characteristic; a rational prime.
    pub p: u64,
    /// Ramification index: `pi^e = p`.
    pub e: u32,
    /// p-adic precision exponent; coefficients live in `Z/p^m`.
    pub m: u32,
}

/// An element of `O_N`, canonical coefficients modulo `p^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub(crate) coeffs: Vec<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl RingSpec {
    pub fn new(p: u64, e: u32, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || m == 0 {
            return Err(Error::BadRing("e and m must be positive".into()));
        }
        // keep p^m comfortably inside u64 so products fit in u128
        let mut pm: u64 = 1;
        for _ in 0..m {
            pm = pm
                .checked_mul(p)
                .ok_or_else(|| Error::BadRing(format!("p^m = {p}^{m} overflows")))?;
        }
        if pm >= 1u64 << 62 {
            return Err(Error::BadRing(format!("p^m = {pm} too large")));
        }
        Ok(RingSpec { p, e, m })
    }

    /// pi-adic precision `N = e*m`.
    pub fn n(&self) -> u32 {
        self.e * self.m
    }

    pub fn pm(&self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn zero(&self) -> RingElem {
        RingElem {
            coeffs: vec![0; self.e as usize],
        }
    }

    pub fn one(&self) -> RingElem {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> RingElem {
        let pm = self.pm() as i128;
        let r = ((v as i128 % pm) + pm) % pm;
        let mut c = vec![0; self.e as usize];
        c[0] = r as u64;
        RingElem { coeffs: c }
    }

    /// `pi^v` as an element; zero when `v >= N`.
    pub fn pi_pow(&self, v: u32) -> RingElem {
        let mut c = vec![0u64; self.e as usize];
        if v < self.n() {
            let (q, r) = (v / self.e, v % self.e);
            c[r as usize] = self.p.pow(q) % self.pm();
        }
        RingElem { coeffs: c }
    }

    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<RingElem> {
        if coeffs.len() > self.e as usize {
            return Err(Error::BadRing(format!(
                "coefficient vector of length {} for e = {}",
                coeffs.len(),
                self.e
            )));
        }
        let pm = self.pm() as i128;
        let mut c = vec![0u64; self.e as usize];
        for (i, &a) in coeffs.iter().enumerate() {
            c[i] = (((a as i128 % pm) + pm) % pm) as u64;
        }
        Ok(RingElem { coeffs: c })
    }

    pub fn is_zero(&self, x: &RingElem) -> bool {
        x.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &RingElem, y: &RingElem) -> RingElem {
        let pm = self.pm();
        RingElem {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(&a, &b)| (a + b) % pm)
                .collect(),
        }
    }

    pub fn sub(&self, x: &RingElem, y: &RingElem) -> RingElem {
        let pm = self.pm();
        RingElem {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(&a, &b)| (a + pm - b) % pm)
                .collect(),
        }
    }

    pub fn neg(&self, x: &RingElem) -> RingElem {
        let pm = self.pm();
        RingElem {
            coeffs: x.coeffs.iter().map(|&a| (pm - a) % pm).collect(),
        }
    }

    pub fn mul(&self, x: &RingElem, y: &RingElem) -> RingElem {
        let e = self.e as usize;
        let pm = self.pm() as u128;
        // convolution, then fold pi^e = p
        let mut conv = vec![0u128; 2 * e - 1];
        for i in 0..e {
            if x.coeffs[i] == 0 {
                continue;
            }
            for j in 0..e {
                conv[i + j] += (x.coeffs[i] as u128) * (y.coeffs[j] as u128) % pm;
            }
        }
        for t in (e..2 * e - 1).rev() {
            let carry = conv[t] % pm;
            conv[t - e] += carry * (self.p as u128) % pm;
        }
        RingElem {
            coeffs: conv[..e].iter().map(|&c| (c % pm) as u64).collect(),
        }
    }

    /// pi-adic valuation; `val(0) = N` (saturated).
    pub fn val(&self, x: &RingElem) -> u32 {
        let mut best = self.n();
        for (i, &a) in x.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut vp = 0u32;
            let mut a = a;
            while a % self.p == 0 {
                a /= self.p;
                vp += 1;
            }
            best = best.min(i as u32 + self.e * vp);
        }
        best
    }

    pub fn is_unit(&self, x: &RingElem) -> bool {
        self.val(x) == 0
    }

    /// Exact multiplicative inverse of a unit; Newton iteration on
    /// `y <- y(2 - xy)` starting from the inverse of `a_0` mod p.
    pub fn inv(&self, x: &RingElem) -> Result<RingElem> {
        let v = self.val(x);
        if v != 0 {
            return Err(Error::NotAUnit(v));
        }
        let a0 = x.coeffs[0] % self.p;
        let mut y = self.from_int(mod_inverse(a0, self.p) as i64);
        // precision doubles each step
        let mut prec = 1u32;
        while prec < self.n() {
            let two = self.from_int(2);
            let t = self.sub(&two, &self.mul(x, &y));
            y = self.mul(&y, &t);
            prec *= 2;
        }
        debug_assert_eq!(self.mul(x, &y), self.one());
        Ok(y)
    }

    /// Divide by `pi^v`.  Requires `val(x) >= v`; the result is well defined
    /// only modulo `pi^(N-v)` and the caller is responsible for tracking the
    /// lost precision.
    pub fn div_pi(&self, x: &RingElem, v: u32) -> Result<RingElem> {
        let actual = self.val(x);
        if actual < v {
            return Err(Error::DivisionByPi { wanted: v, actual });
        }
        let e = self.e as usize;
        let mut c = x.coeffs.clone();
        for _ in 0..v {
            // y with pi*y = x: b_i = a_{i+1}, b_{e-1} = a_0/p
            debug_assert_eq!(c[0] % self.p, 0);
            let high = c[0] / self.p;
            for i in 0..e - 1 {
                c[i] = c[i + 1];
            }
            c[e - 1] = high;
        }
        Ok(RingElem { coeffs: c })
    }

    /// Canonical representative modulo `pi^b` (digits at and above `pi^b`
    /// zeroed out).
    pub fn reduce(&self, x: &RingElem, b: u32) -> RingElem {
        let mut c = x.coeffs.clone();
        for (i, ci) in c.iter_mut().enumerate() {
            // coefficient of pi^i survives modulo p^ceil((b-i)/e)
            let i = i as u32;
            let k = if b > i { (b - i).div_ceil(self.e).min(self.m) } else { 0 };
            *ci %= self.p.pow(k);
        }
        RingElem { coeffs: c }
    }

    pub fn eq_mod(&self, x: &RingElem, y: &RingElem, b: u32) -> bool {
        self.reduce(x, b) == self.reduce(y, b)
    }

    /// Scale by an integer.
    pub fn mul_int(&self, x: &RingElem, v: i64) -> RingElem {
        self.mul(x, &self.from_int(v))
    }

    /// Canonical integer vector for serialization.
    pub fn to_vec(&self, x: &RingElem) -> Vec<u64> {
        x.coeffs.clone()
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p
    let mut t: i128 = 0;
    let mut new_t: i128 = 1;
    let mut r: i128 = p as i128;
    let mut new_r: i128 = (a % p) as i128;
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible");
    (((t % p as i128) + p as i128) % p as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z2_6() -> RingSpec {
        RingSpec::new(2, 1, 6).unwrap()
    }

    fn ram3() -> RingSpec {
        // pi^2 = 3, N = 8
        RingSpec::new(3, 2, 4).unwrap()
    }

    #[test]
    fn ring_make_basics() {
        let r = z2_6();
        assert_eq!(r.n(), 6);
        let r = ram3();
        assert_eq!(r.n(), 8);
        // pi^2 = 3 in the ramified ring
        let pi = r.pi_pow(1);
        assert_eq!(r.mul(&pi, &pi), r.from_int(3));
        assert!(RingSpec::new(4, 1, 3).is_err());
        assert!(RingSpec::new(3, 0, 1).is_err());
    }

    #[test]
    fn valuations() {
        let r = z2_6();
        assert_eq!(r.val(&r.from_int(8)), 3);
        assert_eq!(r.val(&r.zero()), 6);
        let r = ram3();
        assert_eq!(r.val(&r.from_int(3)), 2);
        // pi + 3 has valuation min(1, 2) = 1
        let x = r.add(&r.pi_pow(1), &r.from_int(3));
        assert_eq!(r.val(&x), 1);
    }

    #[test]
    fn inverses() {
        let r = RingSpec::new(2, 1, 4).unwrap();
        assert_eq!(r.inv(&r.from_int(5)).unwrap(), r.from_int(13));
        assert_eq!(r.inv(&r.one()).unwrap(), r.one());
        let r = ram3();
        assert!(r.inv(&r.pi_pow(1)).is_err());
    }

    #[test]
    fn pi_division() {
        let r = z2_6();
        let y = r.div_pi(&r.from_int(8), 3).unwrap();
        assert!(r.eq_mod(&y, &r.one(), 3));
        assert_eq!(r.div_pi(&r.zero(), 4).unwrap(), r.zero());
        // (pi*u)/pi = u mod pi^7 in the ramified ring
        let r = ram3();
        let u = r.from_coeffs(&[2, 1]).unwrap(); // a unit
        assert_eq!(r.val(&u), 0);
        let x = r.mul(&r.pi_pow(1), &u);
        let y = r.div_pi(&x, 1).unwrap();
        assert!(r.eq_mod(&y, &u, 7));
        assert!(r.div_pi(&r.one(), 1).is_err());
    }

    #[test]
    fn reduce_is_canonical() {
        let r = ram3();
        // pi^3 = 3*pi reduces to zero mod pi^3
        let x = r.pi_pow(3);
        assert!(r.is_zero(&r.reduce(&x, 3)));
        assert!(!r.is_zero(&r.reduce(&x, 4)));
    }

    fn arb_elem(spec: RingSpec) -> impl Strategy<Value = RingElem> {
        prop::collection::vec(0u64..spec.pm(), spec.e as usize)
            .prop_map(|coeffs| RingElem { coeffs })
    }

    fn rings() -> Vec<RingSpec> {
        vec![
            RingSpec::new(2, 1, 6).unwrap(),
            RingSpec::new(3, 2, 4).unwrap(),
            RingSpec::new(2, 2, 3).unwrap(),
            RingSpec::new(5, 1, 4).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn canonical_coeffs_roundtrip(x in arb_elem(RingSpec::new(3, 2, 4).unwrap())) {
            let r = RingSpec::new(3, 2, 4).unwrap();
            let c: Vec<i64> = r.to_vec(&x).iter().map(|&u| u as i64).collect();
            prop_assert_eq!(r.from_coeffs(&c).unwrap(), x);
        }

        #[test]
        fn ring_axioms(seed in 0usize..4, triple in prop::collection::vec(prop::collection::vec(0u64..1000, 2), 3)) {
            let r = rings()[seed];
            let take = |v: &Vec<u64>| {
                let c: Vec<i64> = v.iter().take(r.e as usize).map(|&x| x as i64).collect();
                r.from_coeffs(&c).unwrap()
            };
            let (x, y, z) = (take(&triple[0]), take(&triple[1]), take(&triple[2]));
            prop_assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
            prop_assert_eq!(r.mul(&x, &r.add(&y, &z)), r.add(&r.mul(&x, &y), &r.mul(&x, &z)));
            prop_assert_eq!(r.add(&x, &y), r.add(&y, &x));
            prop_assert_eq!(r.mul(&x, &y), r.mul(&y, &x));
        }

        #[test]
        fn val_is_multiplicative(seed in 0usize..4, a in prop::collection::vec(0u64..100000, 2), b in prop::collection::vec(0u64..100000, 2)) {
            let r = rings()[seed];
            let take = |v: &Vec<u64>| {
                let c: Vec<i64> = v.iter().take(r.e as usize).map(|&x| x as i64).collect();
                r.from_coeffs(&c).unwrap()
            };
            let (x, y) = (take(&a), take(&b));
            let (vx, vy) = (r.val(&x), r.val(&y));
            if vx + vy < r.n() {
                prop_assert_eq!(r.val(&r.mul(&x, &y)), vx + vy);
            } else {
                prop_assert!(r.val(&r.mul(&x, &y)) >= r.n().min(vx + vy));
            }
            prop_assert!(r.val(&r.add(&x, &y)) >= vx.min(vy));
        }

        #[test]
        fn inv_is_exact(seed in 0usize..4, a in prop::collection::vec(1u64..100000, 2)) {
            let r = rings()[seed];
            let c: Vec<i64> = a.iter().take(r.e as usize).map(|&x| x as i64).collect();
            let mut x = r.from_coeffs(&c).unwrap();
            if !r.is_unit(&x) {
                x = r.add(&x, &r.one());
            }
            prop_assume!(r.is_unit(&x));
            prop_assert_eq!(r.mul(&x, &r.inv(&x).unwrap()), r.one());
        }

        #[test]
        fn div_pi_round_trip(seed in 0usize..4, a in prop::collection::vec(0u64..100000, 2), v in 0u32..4) {
            let r = rings()[seed];
            let c: Vec<i64> = a.iter().take(r.e as usize).map(|&x| x as i64).collect();
            let x = r.from_coeffs(&c).unwrap();
            let shifted = r.mul(&x, &r.pi_pow(v));
            let back = r.div_pi(&shifted, v).unwrap();
            prop_assert!(r.eq_mod(&back, &x, r.n() - v));
        }
    }
}
