//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(N)-1} reduced modulo
//! the N-th cyclotomic polynomial, so equal values of equal order have equal
//! coefficient vectors. Values of different order are lifted to the lcm.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Reduction data for one cyclotomic order.
struct Ctx {
    n: u32,
    deg: usize,
    /// `red[k]` is ζ^k in the power basis, as sparse integer coefficients.
    red: Vec<Vec<(usize, BigInt)>>,
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_poly(d);
            num = poly_div_exact(&num, &den);
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    q
}

fn build_ctx(n: u32) -> Ctx {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    let mut red: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..n {
        red.push(
            cur.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| (i, BigInt::from(*c)))
                .collect(),
        );
        // multiply by x and reduce the top coefficient with the monic Φ_N
        let top = cur[deg - 1];
        for i in (1..deg).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..deg {
                cur[i] -= top * phi[i];
            }
        }
    }
    Ctx { n, deg, red }
}

fn ctx(n: u32) -> Arc<Ctx> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Ctx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(build_ctx(n)))
        .clone()
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// An exact element of Q(ζ_N).
#[derive(Clone)]
pub struct CycloNum {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    fn from_raw(n: u32, raw: &[BigRational]) -> Self {
        let c = ctx(n);
        let mut coeffs = vec![BigRational::zero(); c.deg];
        for (k, q) in raw.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (i, z) in &c.red[k] {
                coeffs[*i] += q * BigRational::from_integer(z.clone());
            }
        }
        CycloNum { order: n, coeffs }
    }

    /// The rational number `q` viewed in Q(ζ_1) = Q.
    pub fn from_rational(q: BigRational) -> Self {
        CycloNum { order: 1, coeffs: vec![q] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Builds Σ q_k ζ_N^k from (q_k, k) pairs; exponents are taken mod N.
    pub fn from_terms(n: u32, terms: &[(BigRational, i64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("cyclotomic order must be positive".into()));
        }
        let mut raw = vec![BigRational::zero(); n as usize];
        for (q, k) in terms {
            raw[k.rem_euclid(n as i64) as usize] += q;
        }
        Ok(Self::from_raw(n, &raw))
    }

    /// The cyclotomic order N of the field this value is stored in.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients, length φ(N).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the value as a rational if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the value in Q(ζ_M); requires N | M.
    pub fn lift(&self, m: u32) -> Self {
        if m == self.order {
            return self.clone();
        }
        assert!(m % self.order == 0, "cannot lift order {} to {}", self.order, m);
        let step = (m / self.order) as usize;
        let mut raw = vec![BigRational::zero(); m as usize];
        for (k, q) in self.coeffs.iter().enumerate() {
            raw[k * step] = q.clone();
        }
        Self::from_raw(m, &raw)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = a.order.lcm(&b.order);
        (a.lift(m), b.lift(m))
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.order == other.order {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x + y)
                .collect();
            return CycloNum { order: self.order, coeffs };
        }
        let (a, b) = Self::common(self, other);
        a.add_ref(&b)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.order != other.order {
            let (a, b) = Self::common(self, other);
            return a.mul_ref(&b);
        }
        if self.order == 1 {
            return CycloNum { order: 1, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let n = self.order as usize;
        let mut raw = vec![BigRational::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                raw[(i + j) % n] += x * y;
            }
        }
        Self::from_raw(self.order, &raw)
    }

    /// Multiplicative inverse; inverting zero is a domain error.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inversion of zero".into()));
        }
        let nz: Vec<usize> = (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect();
        if nz.len() == 1 {
            let k = nz[0] as i64;
            let q = self.coeffs[nz[0]].recip();
            return Self::from_terms(self.order, &[(q, -k)]);
        }
        // Solve x·y = 1 with the multiplication-by-x matrix.
        let d = self.coeffs.len();
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let e = Self::root_of_unity(self.order, j as i64);
            cols.push(self.mul_ref(&e).coeffs);
        }
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..d).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        let sol = solve_augmented(&mut m, d)
            .ok_or_else(|| Error::Domain("singular multiplication matrix".into()))?;
        Ok(CycloNum { order: self.order, coeffs: sol })
    }

    /// ζ_N^k.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        let c = ctx(n);
        let idx = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); c.deg];
        for (i, z) in &c.red[idx] {
            coeffs[*i] = BigRational::from_integer(z.clone());
        }
        CycloNum { order: n, coeffs }
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Returns k with self = ζ_M^k, M = order, if the value is such a root.
    pub fn root_exponent(&self) -> Option<u32> {
        let c = ctx(self.order);
        'outer: for k in 0..c.n {
            let r = &c.red[k as usize];
            let mut it = r.iter().peekable();
            for (i, q) in self.coeffs.iter().enumerate() {
                let expect = match it.peek() {
                    Some((j, z)) if *j == i => {
                        it.next();
                        BigRational::from_integer(z.clone())
                    }
                    _ => BigRational::zero(),
                };
                if *q != expect {
                    continue 'outer;
                }
            }
            return Some(k);
        }
        None
    }

    /// Complex value under ζ_N ↦ exp(2πi/N); used only for sign choices.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let v = q.to_f64().unwrap_or(0.0);
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// A square root in Q(ζ_L) for some multiple L of N that is at most
    /// `max_order`. `positive` selects the root with positive real part (or
    /// positive imaginary part when the real part vanishes).
    pub fn sqrt(&self, max_order: u32, positive: bool) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let n = self.order;
        let mut tried = None;
        for j in 0..n as i64 {
            let shift = Self::root_of_unity(n, -2 * j);
            let y = self * &shift;
            if let Some(q) = y.as_rational() {
                match rational_sqrt(&q) {
                    Ok((root, need)) => {
                        let l = need.lcm(&n);
                        if l > max_order {
                            tried.get_or_insert(l);
                            continue;
                        }
                        let cand = &root * &Self::root_of_unity(n, j);
                        debug_assert!(&cand * &cand == *self);
                        let (re, im) = cand.approx();
                        let pos = if re.abs() > 1e-9 { re > 0.0 } else { im > 0.0 };
                        return Ok(if pos == positive { cand } else { -cand });
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        match tried {
            Some(l) => Err(Error::Domain(format!(
                "square root of {} needs cyclotomic order {}; enlarge N",
                self, l
            ))),
            None => Err(Error::Domain(format!(
                "no square root of {} found among root-of-unity multiples of rationals; enlarge N",
                self
            ))),
        }
    }
}

/// Square root of a rational in a cyclotomic field; returns the root and
/// the cyclotomic order used.
fn rational_sqrt(q: &BigRational) -> Result<(CycloNum, u32)> {
    let neg = q.is_negative();
    let m = (q.numer() * q.denom()).abs();
    let den = q.denom().abs();
    let (sq, free) = square_split(&m)?;
    let mut need: u32 = 1;
    let mut root = CycloNum::from_rational(BigRational::new(sq, den));
    let mut primes = factor_small(&free)?;
    if neg {
        primes.push(0);
    }
    for p in primes {
        let (s, ord) = prime_sqrt(p);
        need = need.lcm(&ord);
        root = &root * &s;
    }
    Ok((root, need))
}

fn square_split(m: &BigInt) -> Result<(BigInt, BigInt)> {
    let mut sq = BigInt::one();
    let mut free = BigInt::one();
    for (p, e) in factor_pairs(m)? {
        let pb = BigInt::from(p);
        for _ in 0..e / 2 {
            sq *= &pb;
        }
        if e % 2 == 1 {
            free *= &pb;
        }
    }
    Ok((sq, free))
}

fn factor_pairs(m: &BigInt) -> Result<Vec<(u64, u32)>> {
    let mut v = m
        .to_u64()
        .ok_or_else(|| Error::Domain("square root argument too large to factor".into()))?;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= v {
        if v % p == 0 {
            let mut e = 0;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if v > 1 {
        out.push((v, 1));
    }
    Ok(out)
}

fn factor_small(m: &BigInt) -> Result<Vec<u64>> {
    Ok(factor_pairs(m)?.into_iter().map(|(p, _)| p).collect())
}

/// √p for a prime p (p = 0 encodes √-1), with the order it lives in.
fn prime_sqrt(p: u64) -> (CycloNum, u32) {
    if p == 0 {
        return (CycloNum::root_of_unity(4, 1), 4);
    }
    if p == 2 {
        let s = &CycloNum::root_of_unity(8, 1) + &CycloNum::root_of_unity(8, -1);
        return (s, 8);
    }
    let pu = p as u32;
    let mut g = CycloNum::zero();
    for a in 1..pu {
        let leg = legendre(a as u64, p);
        let t = CycloNum::root_of_unity(pu, a as i64);
        g = if leg == 1 { &g + &t } else { &g - &t };
    }
    if p % 4 == 1 {
        (g, pu)
    } else {
        let mi = -CycloNum::root_of_unity(4, 1);
        (&mi * &g, 4 * pu)
    }
}

fn legendre(a: u64, p: u64) -> i32 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Gaussian elimination on an augmented d×(d+1) matrix.
pub(crate) fn solve_augmented(m: &mut [Vec<BigRational>], d: usize) -> Option<Vec<BigRational>> {
    for col in 0..d {
        let piv = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for c in col..=d {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=d {
                    let t = &m[col][c] * &f;
                    m[r][c] -= t;
                }
            }
        }
    }
    Some((0..d).map(|r| m[r][d].clone()).collect())
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let a = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match k {
                0 => None,
                1 => Some(format!("z{}", self.order)),
                _ => Some(format!("z{}^{}", self.order, k)),
            };
            match mono {
                None => write!(f, "{}", a)?,
                Some(m) if a.is_one() => write!(f, "{}", m)?,
                Some(m) => write!(f, "{}*{}", a, m)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &'a CycloNum) -> CycloNum {
                let f: fn(&CycloNum, &CycloNum) -> CycloNum = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &'a CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b));
binop!(Sub, sub, |a, b| a.add_ref(&-b));
binop!(Mul, mul, |a, b| a.mul_ref(b));
binop!(Div, div, |a, b| a.mul_ref(&b.inv().expect("division by zero")));

impl AddAssign<CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: CycloNum) {
        *self = self.add_ref(&rhs);
    }
}

impl<'a> AddAssign<&'a CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &'a CycloNum) {
        *self = self.add_ref(rhs);
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl std::iter::Sum for CycloNum {
    fn sum<I: Iterator<Item = CycloNum>>(iter: I) -> CycloNum {
        iter.fold(CycloNum::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for CycloNum {
    fn product<I: Iterator<Item = CycloNum>>(iter: I) -> CycloNum {
        iter.fold(CycloNum::one(), |a, b| a * b)
    }
}

/// Serialized form: `{"order": N, "terms": [["q", k], ...]}` with the
/// power-basis coefficients of nonzero terms.
#[derive(Serialize, Deserialize)]
struct CycloRepr {
    order: u32,
    terms: Vec<(String, i64)>,
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(k, q)| (q.to_string(), k as i64))
            .collect();
        CycloRepr { order: self.order, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CycloRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(r.terms.len());
        for (q, k) in r.terms {
            let q: BigRational = q.parse().map_err(serde::de::Error::custom)?;
            terms.push((q, k));
        }
        CycloNum::from_terms(r.order, &terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycloNum {
        CycloNum::root_of_unity(n, k)
    }

    #[test]
    fn small_identities() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycloNum::from_int(-1));
        assert!((CycloNum::one() + z(3, 1) + z(3, 2)).is_zero());
        assert_eq!(z(5, 1).inv().unwrap(), z(5, 4));
        assert_eq!(z(2, 1), CycloNum::from_int(-1));
        assert_eq!(z(3, 3), CycloNum::one());
        assert!(CycloNum::zero().inv().is_err());
    }

    #[test]
    fn reduction_matches_minimal_polynomial_oracle() {
        // ζ_6^2 = ζ_3, checked against Φ_6 = x^2 - x + 1: ζ6^2 = ζ6 - 1.
        let v = z(6, 2);
        assert_eq!(v.coeffs(), &[BigRational::from_integer((-1).into()), BigRational::one()]);
        assert_eq!(v, z(3, 1));
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn general_inverse() {
        let x = CycloNum::one() + z(12, 1) + CycloNum::from_frac(1, 3) * z(12, 5);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn square_roots() {
        let three = CycloNum::from_int(3);
        let r = three.sqrt(12, true).unwrap();
        assert_eq!(&r * &r, three);
        assert!(r.approx().0 > 0.0);
        let neg = three.sqrt(12, false).unwrap();
        assert_eq!(neg, -r);
        assert!(three.sqrt(6, true).is_err());
        let two = CycloNum::from_int(2).sqrt(8, true).unwrap();
        assert_eq!(&two * &two, CycloNum::from_int(2));
        let five = CycloNum::from_int(5).sqrt(5, true).unwrap();
        assert_eq!(&five * &five, CycloNum::from_int(5));
        let q = CycloNum::from_frac(9, 4).sqrt(1, true).unwrap();
        assert_eq!(q, CycloNum::from_frac(3, 2));
        let zz = z(3, 1).sqrt(3, true).unwrap();
        assert_eq!(&zz * &zz, z(3, 1));
    }

    #[test]
    fn display_and_serde() {
        let x = CycloNum::from_frac(1, 2) - z(4, 1);
        assert_eq!(x.to_string(), "1/2 - z4");
        let s = serde_json::to_string(&x).unwrap();
        let y: CycloNum = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert_eq!(z(12, 4).root_exponent(), Some(4));
        assert_eq!((CycloNum::one() + z(12, 4)).root_exponent(), Some(2));
    }
}
