//! Morphisms `V±⊙V± → V±⊙V±` as full `n² × n²` matrices in the basis
//! `a^k b ⊗ a^{k'} b`. Slow, but every step is a literal index computation,
//! which makes it a reference for the block calculus.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{BlockIndex, BlockVector, Sign};
use crate::cyclotomic::{CycloMatrix, CycloNumber, Order};
use crate::error::{Error, Result};

/// `𝒯^{s,s'}_{k,k'}` stored at row `(s, s')`, column `(k, k')`.
#[derive(Clone, Debug, PartialEq)]
pub struct RawMorphism {
    sign: Sign,
    matrix: CycloMatrix,
}

impl RawMorphism {
    pub fn zeros(order: Order, sign: Sign) -> Self {
        let d = order.as_usize() * order.as_usize();
        RawMorphism {
            sign,
            matrix: CycloMatrix::zeros(order, d, d),
        }
    }

    pub fn identity(order: Order, sign: Sign) -> Self {
        let d = order.as_usize() * order.as_usize();
        RawMorphism {
            sign,
            matrix: CycloMatrix::identity(order, d),
        }
    }

    #[inline]
    pub fn order(&self) -> Order {
        self.matrix.order()
    }

    #[inline]
    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn matrix(&self) -> &CycloMatrix {
        &self.matrix
    }

    fn pair(&self, a: i64, b: i64) -> usize {
        let n = self.order();
        n.reduce(a) * n.as_usize() + n.reduce(b)
    }

    /// `𝒯^{s,s'}_{k,k'}`, indices modulo `n`.
    pub fn entry(&self, s: i64, s2: i64, k: i64, k2: i64) -> &CycloNumber {
        self.matrix.get(self.pair(s, s2), self.pair(k, k2))
    }

    pub fn set_entry(&mut self, s: i64, s2: i64, k: i64, k2: i64, v: CycloNumber) {
        let (r, c) = (self.pair(s, s2), self.pair(k, k2));
        self.matrix.set(r, c, v);
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RawMorphism) -> RawMorphism {
        assert_eq!(self.sign, other.sign);
        RawMorphism {
            sign: self.sign,
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    /// Ordinary matrix trace `Σ 𝒯^{k,k'}_{k,k'}`; equals the quantum trace of
    /// the block vector because `d_{V_i} = dim V_i`.
    pub fn trace(&self) -> CycloNumber {
        self.matrix.trace()
    }

    /// Commutes with `a` and `b`, and is supported on `s - s' = k - k'`.
    pub fn is_equivariant(&self) -> bool {
        let n = self.order().get() as i64;
        for s in 0..n {
            for s2 in 0..n {
                for k in 0..n {
                    for k2 in 0..n {
                        let x = self.entry(s, s2, k, k2);
                        // a shift by 2 generates all shifts when n is odd
                        if x != self.entry(s + 1, s2 + 1, k + 1, k2 + 1)
                            || x != self.entry(-s, -s2, -k, -k2)
                        {
                            return false;
                        }
                        if (s - s2 - k + k2).rem_euclid(n) != 0 && !x.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `c_g(d) = 𝒯^{g,0}_{d+g,d}`.
    fn c(&self, g: i64, d: i64) -> &CycloNumber {
        self.entry(g, 0, d + g, d)
    }

    /// `λ = Σ_d c₀(d)`, `μ_r = Σ_d ζ^{dr/2} c₀(d)`, `ν_{j,t} = Σ_d ζ^{-dt/2} c_j(d)`.
    ///
    /// Equivariance makes `c₀` even, so `μ_r` is also `½ Σ_d (ζ^{dr/2} + ζ^{-dr/2}) c₀(d)`.
    pub fn phi_forward(&self) -> Result<BlockVector> {
        if !self.is_equivariant() {
            return Err(Error::NotEquivariant);
        }
        let order = self.order();
        let n = order.get() as i64;
        let sum = |g: i64, weight: &dyn Fn(i64) -> i64| {
            (0..n).fold(CycloNumber::zero(order), |acc, d| {
                &acc + &self.c(g, d).mul_zeta(weight(d))
            })
        };
        Ok(BlockVector::from_fn(order, self.sign, |idx| match idx {
            BlockIndex::Unit => sum(0, &|_| 0),
            BlockIndex::TwoDim(r) => sum(0, &|d| order.half_exponent(d * r as i64) as i64),
            BlockIndex::Mixed(j, t) => {
                sum(j as i64, &|d| -(order.half_exponent(d * t as i64) as i64))
            }
        }))
    }

    /// The equivariant morphism with the given block vector:
    /// `c₀(d) = (1/n)(λ + Σ_r (ζ^{dr/2} + ζ^{-dr/2}) μ_r)` and
    /// `c_{±j}(d) = (1/n) Σ_t ζ^{±dt/2} ν_{j,t}`.
    pub fn phi_inverse(v: &BlockVector) -> RawMorphism {
        let order = v.order();
        let n = order.get() as i64;
        let h = order.half() as i64;
        let inv_n = BigRational::new(BigInt::from(1), BigInt::from(n));
        let mut out = RawMorphism::zeros(order, v.sign());
        for g in 0..n {
            for d in 0..n {
                let val = if g == 0 {
                    (1..=h).fold(v.get(BlockIndex::Unit).clone(), |acc, r| {
                        let e = order.half_exponent(d * r) as i64;
                        let mu = v.get(BlockIndex::TwoDim(r as u32));
                        &(&acc + &mu.mul_zeta(e)) + &mu.mul_zeta(-e)
                    })
                } else {
                    // grade g = j carries ζ^{+dt/2}, grade g = n - j carries ζ^{-dt/2}
                    let (j, sgn) = if g <= h { (g, 1) } else { (n - g, -1) };
                    (1..=n).fold(CycloNumber::zero(order), |acc, t| {
                        let e = order.half_exponent(d * t) as i64;
                        &acc + &v
                            .get(BlockIndex::Mixed(j as u32, t as u32))
                            .mul_zeta(sgn * e)
                    })
                };
                let val = val.scale(&inv_n);
                for sh in 0..n {
                    out.set_entry(g + sh, sh, d + g + sh, d + sh, val.clone());
                }
            }
        }
        out
    }

    /// Integer powers, negative ones through [`raw_r_pow`] only.
    pub fn pow(&self, e: u32) -> RawMorphism {
        (0..e).fold(RawMorphism::identity(self.order(), self.sign), |acc, _| {
            acc.compose(self)
        })
    }
}

/// `R±: a^k b ⊗ a^{k'} b ↦ ±a^{2k-k'} b ⊗ a^k b`.
pub fn raw_r(order: Order, sign: Sign) -> RawMorphism {
    raw_r_pow(order, sign, 1)
}

/// `R±ˡ` as a signed permutation matrix; `l` may be negative.
pub fn raw_r_pow(order: Order, sign: Sign, l: i64) -> RawMorphism {
    let n = order.get() as i64;
    let step = |(k, k2): (i64, i64)| -> (i64, i64) {
        if l >= 0 {
            ((2 * k - k2).rem_euclid(n), k)
        } else {
            (k2, (2 * k2 - k).rem_euclid(n))
        }
    };
    let unit = CycloNumber::from_integer(order, sign.pow(l));
    let mut out = RawMorphism::zeros(order, sign);
    for k in 0..n {
        for k2 in 0..n {
            let (s, s2) = (0..l.unsigned_abs()).fold((k, k2), |p, _| step(p));
            out.set_entry(s, s2, k, k2, unit.clone());
        }
    }
    out
}

/// Quarter rotation: `rot(𝒯)^{a,b}_{c,d} = 𝒯^{c,a}_{d,b}`, with `V±* ≅ V±`
/// identified through the basis `{a^k b}`.
pub fn raw_rot(f: &RawMorphism) -> RawMorphism {
    let n = f.order().get() as i64;
    let mut out = RawMorphism::zeros(f.order(), f.sign);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let x = f.entry(c, a, d, b);
                    if !x.is_zero() {
                        out.set_entry(a, b, c, d, x.clone());
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{phi_r, rot_matrix};
    use super::*;

    fn o(n: i64) -> Order {
        Order::new(n).unwrap()
    }

    #[test]
    fn raw_r_examples() {
        let n = o(3);
        let r = raw_r(n, Sign::Plus);
        assert_eq!(r.entry(0, 0, 0, 0), &CycloNumber::one(n));
        // (1,0) ↦ (2,1)
        assert_eq!(r.entry(2, 1, 1, 0), &CycloNumber::one(n));
        let m = raw_r(n, Sign::Minus);
        assert_eq!(m.entry(2, 1, 1, 0), &CycloNumber::from_integer(n, -1));
        assert_eq!(
            r.compose(&raw_r_pow(n, Sign::Plus, -1)),
            RawMorphism::identity(n, Sign::Plus)
        );
        assert!(r.is_equivariant());
    }

    #[test]
    fn phi_forward_of_braiding() {
        for n in [3, 5, 7] {
            let n = o(n);
            for s in Sign::BOTH {
                assert_eq!(raw_r(n, s).phi_forward().unwrap(), phi_r(n, s, 1));
                assert_eq!(
                    RawMorphism::identity(n, s).phi_forward().unwrap(),
                    BlockVector::ones(n, s)
                );
            }
        }
    }

    #[test]
    fn phi_inverse_examples() {
        let n = o(5);
        assert_eq!(
            RawMorphism::phi_inverse(&BlockVector::ones(n, Sign::Plus)),
            RawMorphism::identity(n, Sign::Plus)
        );
        for s in Sign::BOTH {
            let r = raw_r(n, s);
            assert_eq!(RawMorphism::phi_inverse(&r.phi_forward().unwrap()), r);
        }
    }

    #[test]
    fn non_equivariant_is_rejected() {
        let n = o(3);
        let mut f = RawMorphism::identity(n, Sign::Plus);
        f.set_entry(0, 0, 0, 0, CycloNumber::from_integer(n, 2));
        assert_eq!(f.phi_forward(), Err(Error::NotEquivariant));
    }

    #[test]
    fn rotation_has_order_four() {
        let n = o(3);
        let f = RawMorphism::phi_inverse(&phi_r(n, Sign::Plus, 1));
        let g = raw_rot(&raw_rot(&raw_rot(&raw_rot(&f))));
        assert_eq!(g, f);
        assert_ne!(raw_rot(&f), f);
    }

    #[test]
    fn rotation_of_identity() {
        // rot(id)^{a,b}_{c,d} = δ_{c,d}·δ_{a,b}: a cap over a cup
        let n = o(3);
        let r = raw_rot(&RawMorphism::identity(n, Sign::Plus));
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let expected = i64::from(a == b && c == d);
                        assert_eq!(r.entry(a, b, c, d), &CycloNumber::from_integer(n, expected));
                    }
                }
            }
        }
        assert_eq!(
            r.phi_forward().unwrap(),
            rot_matrix(n, Sign::Plus).apply(&BlockVector::ones(n, Sign::Plus))
        );
    }
}
