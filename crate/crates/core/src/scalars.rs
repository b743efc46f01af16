//! Exact arithmetic in cyclotomic fields Q(zeta_M).
//!
//! An element is stored as its coefficient vector in the power basis
//! `1, z, ..., z^(phi(M)-1)` after reduction modulo the M-th cyclotomic
//! polynomial. Elements that turn out to be rational are always stored with
//! order 1, so the common case stays cheap.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("order must be positive")]
    ZeroOrder,
}

type Poly = Vec<BigRational>;

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients (low degree first) of the monic polynomial Phi_m.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<BigInt>> {
    assert!(m > 0, "cyclotomic polynomial of order 0");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by every Phi_d with d a proper divisor of m.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &div);
        }
    }
    let result = Arc::new(num);
    cyclotomic_cache().lock().unwrap().insert(m, result.clone());
    result
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (dn..num.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dn] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dn + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient, which is the degree of Phi_m.
pub fn totient(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

fn reduce_mod(mut p: Poly, m: u32) -> Poly {
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    for i in (deg..p.len()).rev() {
        if p[i].is_zero() {
            continue;
        }
        let c = p[i].clone();
        for (j, pj) in phi.iter().enumerate() {
            if pj.is_zero() {
                continue;
            }
            let target = &mut p[i - deg + j];
            if pj.is_one() {
                *target -= &c;
            } else if (-pj).is_one() {
                *target += &c;
            } else {
                *target -= &c * BigRational::from_integer(pj.clone());
            }
        }
    }
    p.resize(deg, BigRational::zero());
    p
}

fn root_cache() -> &'static Mutex<HashMap<(u32, usize), CycScalar>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), CycScalar>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_sub_scaled(a: &Poly, b: &Poly, c: &BigRational, shift: usize) -> Poly {
    let mut out = a.clone();
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, BigRational::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        if !bi.is_zero() {
            out[i + shift] -= c * bi;
        }
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut rem = a.clone();
    trim(&mut rem);
    let mut q: Poly = Vec::new();
    let lead = b.last().expect("nonzero divisor").clone();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        if q.len() <= shift {
            q.resize(shift + 1, BigRational::zero());
        }
        q[shift] = c.clone();
        rem = poly_sub_scaled(&rem, b, &c, shift);
    }
    (q, rem)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Element of the cyclotomic field Q(zeta_order).
#[derive(Clone, Debug)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar { order: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycScalar { order: 1, coeffs: vec![r] }
    }

    /// Builds an element from raw power-basis coefficients, reducing them.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Result<Self, ScalarError> {
        if order == 0 {
            return Err(ScalarError::ZeroOrder);
        }
        Ok(Self::normalized(order, reduce_mod(coeffs, order)))
    }

    fn normalized(order: u32, coeffs: Vec<BigRational>) -> Self {
        if coeffs.iter().skip(1).all(Zero::is_zero) {
            let c = coeffs.into_iter().next().unwrap_or_else(BigRational::zero);
            return CycScalar { order: 1, coeffs: vec![c] };
        }
        CycScalar { order, coeffs }
    }

    /// zeta_m^k for any integer k.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m > 0, "root of unity of order 0");
        let e = k.rem_euclid(m as i64) as usize;
        if let Some(z) = root_cache().lock().unwrap().get(&(m, e)) {
            return z.clone();
        }
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        let z = Self::normalized(m, reduce_mod(p, m));
        root_cache().lock().unwrap().insert((m, e), z.clone());
        z
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.order == 1).then(|| &self.coeffs[0])
    }

    /// Re-expresses the element in Q(zeta_target); `order` must divide `target`.
    pub fn to_order(&self, target: u32) -> Vec<BigRational> {
        assert!(target.is_multiple_of(self.order), "order {} does not divide {}", self.order, target);
        let step = (target / self.order) as usize;
        let mut p = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        reduce_mod(p, target)
    }

    fn common(&self, other: &Self) -> (u32, Vec<BigRational>, Vec<BigRational>) {
        if self.order == other.order {
            return (self.order, self.coeffs.clone(), other.coeffs.clone());
        }
        let l = self.order.lcm(&other.order);
        (l, self.to_order(l), other.to_order(l))
    }

    fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        if r.is_one() {
            return self.clone();
        }
        if (-r).is_one() {
            return self.neg();
        }
        let coeffs = self.coeffs.iter().map(|c| if c.is_zero() { c.clone() } else { c * r }).collect();
        CycScalar { order: self.order, coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.order == 1 && other.order == 1 {
            return Self::from_rational(&self.coeffs[0] + &other.coeffs[0]);
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (m, mut a, b) = self.common(other);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x += y;
        }
        Self::normalized(m, a)
    }

    pub fn neg(&self) -> Self {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let Some(r) = other.as_rational() {
            return self.scale_rational(r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale_rational(r);
        }
        let (m, a, b) = self.common(other);
        Self::normalized(m, reduce_mod(poly_mul(&a, &b), m))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // Extended Euclid against Phi_M; the gcd is a nonzero constant.
        let phi: Poly =
            cyclotomic_polynomial(self.order).iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let mut a = self.coeffs.clone();
        trim(&mut a);
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut s2 = s0.clone();
            if s2.len() < qs.len() {
                s2.resize(qs.len(), BigRational::zero());
            }
            for (i, c) in qs.iter().enumerate() {
                s2[i] -= c;
            }
            trim(&mut s2);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let g = r0[0].clone();
        let s: Poly = s0.iter().map(|c| c / &g).collect();
        Ok(Self::normalized(self.order, reduce_mod(s, self.order)))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            exp >>= 1;
        }
        Ok(acc)
    }
}

/// The root of unity zeta_order^exponent, kept symbolic so that powers are
/// computed by exponent arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootOfUnity {
    pub order: u32,
    pub exponent: i64,
}

impl RootOfUnity {
    pub fn new(order: u32, exponent: i64) -> Self {
        assert!(order > 0, "root of unity of order 0");
        RootOfUnity { order, exponent: exponent.rem_euclid(order as i64) }
    }

    /// zeta_order itself.
    pub fn primitive(order: u32) -> Self {
        Self::new(order, 1)
    }

    pub fn value(&self) -> CycScalar {
        CycScalar::root_of_unity(self.order, self.exponent)
    }

    pub fn pow(&self, e: i64) -> CycScalar {
        let m = self.order as i64;
        CycScalar::root_of_unity(self.order, (self.exponent.rem_euclid(m) * e.rem_euclid(m)).rem_euclid(m))
    }

    /// Smallest k > 0 with value^k = 1.
    pub fn multiplicative_order(&self) -> u32 {
        let g = (self.exponent as u64).gcd(&(self.order as u64)).max(1);
        if self.exponent == 0 {
            1
        } else {
            (self.order as u64 / g) as u32
        }
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.common(other);
        a == b
    }
}

impl Eq for CycScalar {}

impl Default for CycScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: Self) -> CycScalar {
        CycScalar::add(self, rhs)
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: Self) -> CycScalar {
        CycScalar::sub(self, rhs)
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: Self) -> CycScalar {
        CycScalar::mul(self, rhs)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar::neg(self)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = if k == 0 {
                fmt_rational(&mag)
            } else if mag.is_one() {
                format!("z{}^{}", self.order, k)
            } else {
                format!("{}*z{}^{}", fmt_rational(&mag), self.order, k)
            };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> ScalarError {
        ScalarError::Parse { input: self.src.to_string(), reason: reason.into() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn rational(&mut self) -> Result<Option<BigRational>, ScalarError> {
        let Some(n) = self.digits() else { return Ok(None) };
        let num: BigInt = n.parse().map_err(|_| self.err("bad integer"))?;
        if self.eat('/') {
            let d = self.digits().ok_or_else(|| self.err("missing denominator"))?;
            let den: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(Some(BigRational::new(num, den)));
        }
        Ok(Some(BigRational::from_integer(num)))
    }

    fn root(&mut self) -> Result<Option<CycScalar>, ScalarError> {
        if !self.eat('z') {
            return Ok(None);
        }
        let m = self.digits().ok_or_else(|| self.err("missing root order"))?;
        let m: u32 = m.parse().map_err(|_| self.err("bad root order"))?;
        if m == 0 {
            return Err(self.err("root order 0"));
        }
        let k: i64 = if self.eat('^') {
            let neg = self.eat('-');
            let k = self.digits().ok_or_else(|| self.err("missing exponent"))?;
            let k: i64 = k.parse().map_err(|_| self.err("bad exponent"))?;
            if neg {
                -k
            } else {
                k
            }
        } else {
            1
        };
        Ok(Some(CycScalar::root_of_unity(m, k)))
    }

    fn term(&mut self) -> Result<CycScalar, ScalarError> {
        let coef = self.rational()?;
        if coef.is_some() {
            self.eat('*');
        }
        let root = self.root()?;
        match (coef, root) {
            (None, None) => Err(self.err("expected a term")),
            (Some(c), None) => Ok(CycScalar::from_rational(c)),
            (None, Some(z)) => Ok(z),
            (Some(c), Some(z)) => Ok(z.scale_rational(&c)),
        }
    }

    fn parse(&mut self) -> Result<CycScalar, ScalarError> {
        let mut acc = CycScalar::zero();
        let mut sign = if self.eat('-') { -1 } else { 1 };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("trailing input"));
        }
        Ok(acc)
    }
}

impl FromStr for CycScalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        Parser { src: s, pos: 0 }.parse()
    }
}

impl serde::Serialize for CycScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(m: u32, k: i64) -> CycScalar {
        CycScalar::root_of_unity(m, k)
    }

    #[test]
    fn cyclotomic_polynomials_small_orders() {
        let as_i64 = |m| cyclotomic_polynomial(m).iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(totient(12), 4);
    }

    #[test]
    fn root_products() {
        assert_eq!(z(4, 1).mul(&z(4, 1)), CycScalar::from_int(-1));
        let s = CycScalar::one().add(&z(3, 1)).add(&z(3, 2));
        assert!(s.is_zero());
        assert!(z(8, 1).mul(&z(8, 7)).is_one());
    }

    #[test]
    fn root_of_unity_examples() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(4, 2), CycScalar::from_int(-1));
        assert_eq!(z(2, 1), CycScalar::from_int(-1));
        assert_eq!(z(5, -1), z(5, 4));
    }

    #[test]
    fn mixed_orders_coerce() {
        // zeta_8^2 is i.
        assert_eq!(z(8, 2), z(4, 1));
        assert_eq!(z(4, 1).mul(&z(3, 1)), z(12, 7));
        assert_eq!(z(4, 1).add(&z(8, 2)), z(4, 1).mul(&CycScalar::from_int(2)));
    }

    #[test]
    fn symbolic_roots() {
        let q = RootOfUnity::new(8, 3);
        assert_eq!(q.pow(3), z(8, 9));
        assert_eq!(q.pow(-1), z(8, 5));
        assert_eq!(q.multiplicative_order(), 8);
        assert_eq!(RootOfUnity::new(8, 2).multiplicative_order(), 4);
        assert_eq!(RootOfUnity::new(8, 0).multiplicative_order(), 1);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(z(4, 1).div(&CycScalar::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn text_format_examples() {
        let s: CycScalar = "1/2 + 3*z4^1".parse().unwrap();
        assert_eq!(s.to_string(), "1/2 + 3*z4^1");
        assert_eq!("-z8^3".parse::<CycScalar>().unwrap(), z(8, 3).neg());
        assert_eq!("z4^2".parse::<CycScalar>().unwrap().to_string(), "-1");
        assert_eq!(CycScalar::zero().to_string(), "0");
        assert!("1 +".parse::<CycScalar>().is_err());
        assert!("1/0".parse::<CycScalar>().is_err());
    }

    fn orders() -> impl Strategy<Value = u32> {
        prop::sample::select(vec![1u32, 3, 4, 5, 8, 12])
    }

    fn scalar() -> impl Strategy<Value = CycScalar> {
        (orders(), prop::collection::vec((-6i64..7, 1i64..5), 1..5)).prop_map(|(m, cs)| {
            let coeffs = cs.into_iter().map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d))).collect();
            CycScalar::from_coeffs(m, coeffs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn print_parse_round_trip(a in scalar()) {
            let text = a.to_string();
            let back: CycScalar = text.parse().unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn roots_satisfy_their_polynomial(m in 1u32..30) {
            prop_assert!(z(m, m as i64).is_one());
            let phi = cyclotomic_polynomial(m);
            let mut acc = CycScalar::zero();
            for (k, c) in phi.iter().enumerate() {
                let c = CycScalar::from_rational(BigRational::from_integer(c.clone()));
                acc = acc.add(&c.mul(&z(m, k as i64)));
            }
            prop_assert!(acc.is_zero());
        }
    }
}
