//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! Elements are stored in the power basis of Q[X]/Phi_N(X), so equality and
//! zero-testing reduce to coefficient comparison after lifting both operands
//! to the lcm conductor. No floating point anywhere.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::error::{Error, Result};

/// Euler totient.
pub fn phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

/// Exact division of integer polynomials, divisor monic. Coefficients low to high.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() < den.len() {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let idx = i - dd + j;
            rem[idx] = &rem[idx] - &c * dc;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Phi_N as integer coefficients (low to high), cached.
fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // (X^n - 1) / prod_{d | n, d < n} Phi_d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut result = num;
    for d in divisors(n) {
        if d < n {
            let pd = cyclotomic_poly(d);
            result = int_poly_div_exact(&result, &pd);
        }
    }
    cache.lock().unwrap().insert(n, result.clone());
    result
}

fn trim(v: &mut Vec<BigRational>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial Phi_N. Result has length phi(N).
fn reduce_mod_phi(mut a: Vec<BigRational>, n: u64) -> Vec<BigRational> {
    let modulus: Vec<BigRational> = cyclotomic_poly(n)
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    let deg = modulus.len() - 1;
    if a.len() > deg {
        for i in (deg..a.len()).rev() {
            let c = a[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, mc) in modulus.iter().enumerate() {
                a[i - deg + j] = &a[i - deg + j] - &c * mc;
            }
        }
    }
    a.resize(deg, BigRational::zero());
    a
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] = &out[i + j] + ca * cb;
            }
        }
    }
    out
}

/// An exact element of Q(zeta_N), in the power basis of Q[X]/Phi_N(X).
#[derive(Clone)]
pub struct CycNumber {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    fn make(conductor: u64, coeffs: Vec<BigRational>) -> CycNumber {
        CycNumber {
            conductor,
            coeffs: reduce_mod_phi(coeffs, conductor),
        }
    }

    pub fn zero() -> CycNumber {
        CycNumber::make(1, vec![BigRational::zero()])
    }

    pub fn one() -> CycNumber {
        CycNumber::make(1, vec![BigRational::one()])
    }

    pub fn from_rational(r: BigRational) -> CycNumber {
        CycNumber::make(1, vec![r])
    }

    pub fn from_integer(i: i64) -> CycNumber {
        CycNumber::from_rational(BigRational::from_integer(BigInt::from(i)))
    }

    /// zeta_N^k. Rejects N = 0.
    pub fn root_of_unity(n: u64, k: i64) -> Result<CycNumber> {
        if n == 0 {
            return Err(Error::ZeroConductor);
        }
        let e = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        Ok(CycNumber::make(n, coeffs))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().map(|r| r.is_one()).unwrap_or(false)
    }

    /// Rational part, if the element lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embed into Q(zeta_M) for a multiple M of the conductor.
    pub fn embed(&self, m: u64) -> CycNumber {
        assert!(m % self.conductor == 0, "target conductor must be a multiple");
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        CycNumber::make(m, coeffs)
    }

    fn lift_pair(a: &CycNumber, b: &CycNumber) -> (CycNumber, CycNumber) {
        let m = a.conductor.lcm(&b.conductor);
        (a.embed(m), b.embed(m))
    }

    pub fn add(&self, other: &CycNumber) -> CycNumber {
        let (a, b) = CycNumber::lift_pair(self, other);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        CycNumber::make(a.conductor, coeffs)
    }

    pub fn sub(&self, other: &CycNumber) -> CycNumber {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycNumber) -> CycNumber {
        let (a, b) = CycNumber::lift_pair(self, other);
        CycNumber::make(a.conductor, poly_mul(&a.coeffs, &b.coeffs))
    }

    pub fn div(&self, other: &CycNumber) -> Result<CycNumber> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[X].
    pub fn inverse(&self) -> Result<CycNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.conductor;
        let modulus: Vec<BigRational> = cyclotomic_poly(n)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        // Bezout: s * self + t * Phi_N = gcd = const.
        let mut r0 = modulus;
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s0 = vec![BigRational::zero()];
        let mut s1 = vec![BigRational::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant (Phi_N is irreducible over Q).
        debug_assert!(r0.len() == 1 && !r0[0].is_zero());
        let inv_c = BigRational::one() / r0[0].clone();
        let coeffs = s0.iter().map(|c| c * &inv_c).collect();
        Ok(CycNumber::make(n, coeffs))
    }

    pub fn pow(&self, exp: i64) -> Result<CycNumber> {
        if exp < 0 {
            return self.inverse()?.pow(-exp);
        }
        let mut base = self.clone();
        let mut e = exp as u64;
        let mut acc = CycNumber::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Least k >= 1 with self^k = 1, or None if self is not a root of unity.
    /// Rejects zero.
    pub fn mult_order(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        // Roots of unity in Q(zeta_N) have order dividing lcm(2, N).
        let bound = self.conductor.lcm(&2);
        let one = CycNumber::one();
        if self.pow(bound as i64)? != one {
            return Ok(None);
        }
        for d in divisors(bound) {
            if self.pow(d as i64)? == one {
                return Ok(Some(d));
            }
        }
        unreachable!()
    }
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); len];
    for (i, c) in a.iter().enumerate() {
        out[i] = c.clone();
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = &out[i] - c;
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut bb = b.to_vec();
    trim(&mut bb);
    let db = bb.len() - 1;
    let lead = bb[db].clone();
    if rem.len() <= db {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = &rem[i] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c.clone();
        for (j, mc) in bb.iter().enumerate() {
            rem[i - db + j] = &rem[i - db + j] - &c * mc;
        }
    }
    trim(&mut rem);
    (quot, rem)
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = CycNumber::lift_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNumber {}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc(N={}; {})", self.conductor, self.to_display())
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_display())
    }
}

impl CycNumber {
    /// Symbolic rendering as a sum of rational multiples of zeta powers.
    pub fn to_display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        if let Some(r) = self.to_rational() {
            return r.to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i == 0 {
                parts.push(c.to_string());
            } else if c.is_one() {
                parts.push(format!("z{}^{}", self.conductor, i));
            } else {
                parts.push(format!("{}*z{}^{}", c, self.conductor, i));
            }
        }
        parts.join(" + ")
    }
}

/// Convenience for tests and config resolution.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
