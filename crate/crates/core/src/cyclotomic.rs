//! Exact arithmetic in the cyclotomic field `Q(ζ)`, `ζ = exp(2πi/n)`, for odd `n ≥ 3`.
//!
//! A [`CycloNumber`] stores a length-`n` coefficient vector over the power
//! basis `1, ζ, …, ζ^{n-1}`, i.e. an element of `Q[x]/(x^n - 1)`, with a
//! common denominator. Arithmetic stays in that ring; equality and
//! integrality tests go through reduction modulo the `n`-th cyclotomic
//! polynomial, which is the only place where the zero-sum relations
//! (`1 + ζ + … + ζ^{n-1} = 0` and friends) are applied.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An odd order `n ≥ 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Order(u32);

impl Order {
    pub fn new(n: i64) -> Result<Self> {
        if n < 3 || n % 2 == 0 || n > u32::MAX as i64 {
            return Err(Error::InvalidOrder(n));
        }
        Ok(Order(n as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// `(n - 1) / 2`.
    #[inline]
    pub fn half(self) -> u32 {
        (self.0 - 1) / 2
    }

    /// `e mod n` in `0..n`.
    #[inline]
    pub fn reduce(self, e: i64) -> usize {
        e.rem_euclid(self.0 as i64) as usize
    }

    /// Exponent of `ζ^{x/2}`: `x·(n+1)/2 mod n`, since `(n+1)/2` inverts 2 modulo odd `n`.
    pub fn half_exponent(self, x: i64) -> usize {
        let n = self.0 as i128;
        ((x as i128).rem_euclid(n) * ((n + 1) / 2)).rem_euclid(n) as usize
    }

    /// Exponent of `ζ^{a/b}`: the fraction is reduced first, and the reduced
    /// denominator must be a unit modulo `n`.
    pub fn frac_exponent(self, a: i64, b: i64) -> Result<usize> {
        if b == 0 {
            return Err(Error::InvalidFraction(format!("{a}/0")));
        }
        let g = a.gcd(&b);
        let (mut a, mut b) = (a / g, b / g);
        if b < 0 {
            a = -a;
            b = -b;
        }
        let n = self.0 as i64;
        let inv = mod_inverse(b, n).ok_or(Error::NonInvertibleDenominator {
            num: a,
            den: b,
            order: self.0,
        })?;
        Ok(((a.rem_euclid(n) as i128 * inv as i128).rem_euclid(n as i128)) as usize)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn mod_inverse(b: i64, n: i64) -> Option<i64> {
    let e = b.rem_euclid(n).extended_gcd(&n);
    (e.gcd == 1).then(|| e.x.rem_euclid(n))
}

/// Exact element of `Q(ζ_n)`.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    order: Order,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNumber {
    pub fn zero(order: Order) -> Self {
        CycloNumber {
            order,
            num: vec![BigInt::zero(); order.as_usize()],
            den: BigInt::one(),
        }
    }

    pub fn one(order: Order) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: Order, k: impl Into<BigInt>) -> Self {
        let mut x = Self::zero(order);
        x.num[0] = k.into();
        x
    }

    pub fn from_rational(order: Order, q: &BigRational) -> Self {
        let mut x = Self::zero(order);
        x.num[0] = q.numer().clone();
        x.den = q.denom().clone();
        x.normalize();
        x
    }

    /// Builds `Σ coeffs[k]·ζ^k`; indices are taken modulo `n`.
    pub fn from_coeffs(order: Order, coeffs: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = vec![BigInt::zero(); order.as_usize()];
        for (k, c) in coeffs.iter().enumerate() {
            num[k % order.as_usize()] += c.numer() * (&den / c.denom());
        }
        let mut x = CycloNumber { order, num, den };
        x.normalize();
        x
    }

    /// `ζ^e`.
    pub fn zeta_pow(order: Order, e: i64) -> Self {
        Self::monomial(order, order.reduce(e), BigInt::one())
    }

    /// `ζ^{x/2}`, the unique `n`-th root of unity whose square is `ζ^x`.
    pub fn zeta_half_pow(order: Order, x: i64) -> Self {
        Self::monomial(order, order.half_exponent(x), BigInt::one())
    }

    /// `ζ^{a/b}` with the reduced denominator inverted modulo `n`.
    pub fn zeta_frac_pow(order: Order, a: i64, b: i64) -> Result<Self> {
        Ok(Self::monomial(
            order,
            order.frac_exponent(a, b)?,
            BigInt::one(),
        ))
    }

    fn monomial(order: Order, k: usize, c: BigInt) -> Self {
        let mut x = Self::zero(order);
        x.num[k] = c;
        x
    }

    #[inline]
    pub fn order(&self) -> Order {
        self.order
    }

    /// Coefficient of `ζ^k` in the stored (not necessarily canonical) representation.
    pub fn coeff(&self, k: usize) -> BigRational {
        BigRational::new(self.num[k % self.num.len()].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|k| self.coeff(k)).collect()
    }

    fn normalize(&mut self) {
        let mut g = BigInt::zero();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
        }
        if g.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let g = g.gcd(&self.den);
        let g = if self.den.is_negative() { -g } else { g };
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    /// Representative reduced modulo `Φ_n`, padded back to length `n`.
    pub fn canonicalize(&self) -> CycloNumber {
        let phi = cyclotomic_polynomial(self.order.get());
        let deg = phi.len() - 1;
        let mut a = self.num.clone();
        for i in (deg..a.len()).rev() {
            if a[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut a[i]);
            for (j, f) in phi.iter().enumerate().take(deg) {
                if !f.is_zero() {
                    a[i - deg + j] -= &c * f;
                }
            }
        }
        let mut x = CycloNumber {
            order: self.order,
            num: a,
            den: self.den.clone(),
        };
        x.normalize();
        x
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero) || self.canonicalize().num.iter().all(Zero::is_zero)
    }

    /// `Some(q)` iff the canonical form is the constant `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let c = self.canonicalize();
        c.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(c.num[0].clone(), c.den.clone()))
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Complex conjugate: `ζ^k ↦ ζ^{-k}`.
    pub fn conj(&self) -> CycloNumber {
        let n = self.num.len();
        let num = (0..n).map(|k| self.num[(n - k) % n].clone()).collect();
        CycloNumber {
            order: self.order,
            num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> CycloNumber {
        let mut x = CycloNumber {
            order: self.order,
            num: self.num.iter().map(|c| c * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        x.normalize();
        x
    }

    /// Multiplication by `ζ^e` (a rotation of the coefficient vector).
    pub fn mul_zeta(&self, e: i64) -> CycloNumber {
        let n = self.num.len();
        let s = self.order.reduce(e);
        let mut num = vec![BigInt::zero(); n];
        for (k, c) in self.num.iter().enumerate() {
            num[(k + s) % n] = c.clone();
        }
        CycloNumber {
            order: self.order,
            num,
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> CycloNumber {
        let mut base = self.clone();
        let mut acc = CycloNumber::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn check_order(&self, other: &CycloNumber) {
        assert_eq!(
            self.order, other.order,
            "cyclotomic numbers of different orders"
        );
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order != other.order {
            return false;
        }
        if self.den == other.den && self.num == other.num {
            return true;
        }
        let (a, b) = (self.canonicalize(), other.canonicalize());
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNumber {}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;

    fn add(self, rhs: &'a CycloNumber) -> CycloNumber {
        self.check_order(rhs);
        let den = self.den.lcm(&rhs.den);
        let (fa, fb) = (&den / &self.den, &den / &rhs.den);
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &fa + b * &fb)
            .collect();
        let mut x = CycloNumber {
            order: self.order,
            num,
            den,
        };
        x.normalize();
        x
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;

    fn sub(self, rhs: &'a CycloNumber) -> CycloNumber {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;

    fn mul(self, rhs: &'a CycloNumber) -> CycloNumber {
        self.check_order(rhs);
        let n = self.num.len();
        let mut num = vec![BigInt::zero(); n];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    num[(i + j) % n] += a * b;
                }
            }
        }
        let mut x = CycloNumber {
            order: self.order,
            num,
            den: &self.den * &rhs.den,
        };
        x.normalize();
        x
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;

    fn neg(self) -> CycloNumber {
        CycloNumber {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;

    fn neg(self) -> CycloNumber {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: &'a CycloNumber) -> CycloNumber {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonicalize();
        let mut first = true;
        for (k, a) in c.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let q = BigRational::new(a.clone(), c.den.clone());
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{q}")?,
                1 => write!(f, "({q})ζ")?,
                _ => write!(f, "({q})ζ^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `ζ^e` for order `n`.
pub fn zeta_pow(n: i64, e: i64) -> Result<CycloNumber> {
    Ok(CycloNumber::zeta_pow(Order::new(n)?, e))
}

/// `ζ^{x/2} = ζ^{x(n+1)/2}`.
pub fn zeta_half_pow(n: i64, x: i64) -> Result<CycloNumber> {
    Ok(CycloNumber::zeta_half_pow(Order::new(n)?, x))
}

/// `ζ^{a/b}`; fails with [`Error::NonInvertibleDenominator`] when the reduced
/// denominator shares a factor with `n`.
pub fn zeta_frac_pow(n: i64, a: i64, b: i64) -> Result<CycloNumber> {
    CycloNumber::zeta_frac_pow(Order::new(n)?, a, b)
}

/// Coefficients (low degree first) of the `n`-th cyclotomic polynomial,
/// obtained by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = exact_div_monic(&p, &cyclotomic_polynomial(d));
    }
    let p = Arc::new(p);
    cache.lock().unwrap().entry(n).or_insert(p).clone()
}

fn exact_div_monic(a: &[BigInt], f: &[BigInt]) -> Vec<BigInt> {
    let deg = f.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - deg];
    for i in (deg..a.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        for (j, fj) in f.iter().enumerate().take(deg) {
            rem[i - deg + j] -= &c * fj;
        }
        quot[i - deg] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact division");
    quot
}

type SparseRow = Vec<(usize, Vec<(usize, BigInt)>)>;

#[derive(Clone, Debug)]
struct IntegerForm {
    den: BigInt,
    rows: Vec<SparseRow>,
}

/// Dense matrix over `Q(ζ_n)`. Matrix-vector products run over a common
/// denominator with integer coefficient vectors.
#[derive(Clone, Debug)]
pub struct CycloMatrix {
    order: Order,
    rows: usize,
    cols: usize,
    entries: Vec<CycloNumber>,
    int_form: OnceLock<IntegerForm>,
}

impl CycloMatrix {
    pub fn zeros(order: Order, rows: usize, cols: usize) -> Self {
        CycloMatrix {
            order,
            rows,
            cols,
            entries: vec![CycloNumber::zero(order); rows * cols],
            int_form: OnceLock::new(),
        }
    }

    pub fn identity(order: Order, dim: usize) -> Self {
        let mut m = Self::zeros(order, dim, dim);
        for i in 0..dim {
            m.set(i, i, CycloNumber::one(order));
        }
        m
    }

    #[inline]
    pub fn order(&self) -> Order {
        self.order
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &CycloNumber {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloNumber) {
        assert_eq!(v.order(), self.order);
        self.entries[r * self.cols + c] = v;
        self.int_form = OnceLock::new();
    }

    fn int_form(&self) -> &IntegerForm {
        self.int_form.get_or_init(|| {
            let mut den = BigInt::one();
            for e in &self.entries {
                den = den.lcm(&e.den);
            }
            let rows = (0..self.rows)
                .map(|r| {
                    (0..self.cols)
                        .filter_map(|c| {
                            let e = self.get(r, c);
                            let f = &den / &e.den;
                            let terms: Vec<_> = e
                                .num
                                .iter()
                                .enumerate()
                                .filter(|(_, a)| !a.is_zero())
                                .map(|(k, a)| (k, a * &f))
                                .collect();
                            (!terms.is_empty()).then_some((c, terms))
                        })
                        .collect()
                })
                .collect();
            IntegerForm { den, rows }
        })
    }

    pub fn mul_vec(&self, v: &[CycloNumber]) -> Vec<CycloNumber> {
        assert_eq!(v.len(), self.cols);
        let n = self.order.as_usize();
        let mut vden = BigInt::one();
        for x in v {
            vden = vden.lcm(&x.den);
        }
        let scaled: Vec<Vec<BigInt>> = v
            .iter()
            .map(|x| {
                let f = &vden / &x.den;
                x.num.iter().map(|a| a * &f).collect()
            })
            .collect();
        let form = self.int_form();
        let den = &form.den * &vden;
        form.rows
            .iter()
            .map(|row| {
                let mut acc = vec![BigInt::zero(); n];
                for (c, terms) in row {
                    for (e, a) in terms {
                        for (k, w) in scaled[*c].iter().enumerate() {
                            if !w.is_zero() {
                                acc[(e + k) % n] += a * w;
                            }
                        }
                    }
                }
                let mut x = CycloNumber {
                    order: self.order,
                    num: acc,
                    den: den.clone(),
                };
                x.normalize();
                x
            })
            .collect()
    }

    pub fn mul(&self, rhs: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = CycloMatrix::zeros(self.order, self.rows, rhs.cols);
        for c in 0..rhs.cols {
            let column: Vec<CycloNumber> = (0..rhs.rows).map(|r| rhs.get(r, c).clone()).collect();
            for (r, v) in self.mul_vec(&column).into_iter().enumerate() {
                out.entries[r * out.cols + c] = v;
            }
        }
        out
    }

    pub fn trace(&self) -> CycloNumber {
        (0..self.rows.min(self.cols)).fold(CycloNumber::zero(self.order), |acc, i| {
            &acc + self.get(i, i)
        })
    }
}

impl PartialEq for CycloMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}
