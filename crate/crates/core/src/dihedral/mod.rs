//! Block calculus on `V±⊙V±` for the quantum double of `D_n`.
//!
//! `V±⊙V± ≅ V₁ ⊕ ⊕_r V_{2+r} ⊕ ⊕_{j,t} V_{(j,t)}` is multiplicity free, so
//! an endomorphism is one scalar per summand (a [`BlockVector`]).
//! Composition is the entrywise product, a quarter rotation is the linear
//! map [`RotMatrix`], and closing up is [`quantum_trace`].
//!
//! [`raw`] holds the same morphisms as `n² × n²` tensors and serves as an
//! independent check of everything here.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::cyclotomic::{CycloMatrix, CycloNumber, Order};
use crate::error::Result;
use crate::tangle::{mu, neg_cf, Frac};

pub mod raw;

pub use raw::{raw_r, raw_r_pow, raw_rot, RawMorphism};

/// Which of the two reflection representations `V₊`, `V₋` colors the strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    /// `(±1)^l`.
    pub fn pow(self, l: i64) -> i64 {
        match self {
            Sign::Minus if l.rem_euclid(2) == 1 => -1,
            _ => 1,
        }
    }

    /// `θ_{V±} = ±1`.
    pub fn twist(self) -> i64 {
        self.pow(1)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A simple summand of `V±⊙V±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockIndex {
    /// `V₁`.
    Unit,
    /// `V_{2+r}`, `1 ≤ r ≤ (n-1)/2`.
    TwoDim(u32),
    /// `V_{(j,t)}`, `1 ≤ j ≤ (n-1)/2`, `1 ≤ t ≤ n`.
    Mixed(u32, u32),
}

impl fmt::Display for BlockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockIndex::Unit => write!(f, "1"),
            BlockIndex::TwoDim(r) => write!(f, "2+{r}"),
            BlockIndex::Mixed(j, t) => write!(f, "({j},{t})"),
        }
    }
}

/// `1 + (n-1)/2 + n(n-1)/2`.
pub fn block_count(order: Order) -> usize {
    let h = order.half() as usize;
    1 + h + order.as_usize() * h
}

/// Unit, then `TwoDim(1..)`, then `Mixed(j, t)` in lexicographic order.
pub fn block_indices(order: Order) -> Vec<BlockIndex> {
    let h = order.half();
    let n = order.get();
    let mut out = Vec::with_capacity(block_count(order));
    out.push(BlockIndex::Unit);
    out.extend((1..=h).map(BlockIndex::TwoDim));
    for j in 1..=h {
        out.extend((1..=n).map(|t| BlockIndex::Mixed(j, t)));
    }
    out
}

/// Position of `idx` in [`block_indices`].
pub fn block_position(order: Order, idx: BlockIndex) -> usize {
    let h = order.half() as usize;
    let n = order.as_usize();
    match idx {
        BlockIndex::Unit => 0,
        BlockIndex::TwoDim(r) => {
            assert!((1..=h).contains(&(r as usize)), "TwoDim({r}) out of range");
            r as usize
        }
        BlockIndex::Mixed(j, t) => {
            assert!(
                (1..=h).contains(&(j as usize)) && (1..=n).contains(&(t as usize)),
                "Mixed({j},{t}) out of range"
            );
            1 + h + (j as usize - 1) * n + (t as usize - 1)
        }
    }
}

/// Quantum dimension of a summand; equal to its dimension.
pub fn qdim(idx: BlockIndex) -> u32 {
    match idx {
        BlockIndex::Unit => 1,
        _ => 2,
    }
}

/// Diagonal endomorphism of `V±⊙V±`, one scalar per summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockVector {
    order: Order,
    sign: Sign,
    entries: Vec<CycloNumber>,
}

impl BlockVector {
    pub fn from_entries(order: Order, sign: Sign, entries: Vec<CycloNumber>) -> Self {
        assert_eq!(entries.len(), block_count(order), "wrong number of blocks");
        assert!(entries.iter().all(|e| e.order() == order));
        BlockVector {
            order,
            sign,
            entries,
        }
    }

    pub fn from_fn(order: Order, sign: Sign, f: impl FnMut(BlockIndex) -> CycloNumber) -> Self {
        Self::from_entries(
            order,
            sign,
            block_indices(order).into_iter().map(f).collect(),
        )
    }

    /// The identity morphism.
    pub fn ones(order: Order, sign: Sign) -> Self {
        Self::from_entries(
            order,
            sign,
            vec![CycloNumber::one(order); block_count(order)],
        )
    }

    pub fn zeros(order: Order, sign: Sign) -> Self {
        Self::from_entries(
            order,
            sign,
            vec![CycloNumber::zero(order); block_count(order)],
        )
    }

    #[inline]
    pub fn order(&self) -> Order {
        self.order
    }

    #[inline]
    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn get(&self, idx: BlockIndex) -> &CycloNumber {
        &self.entries[block_position(self.order, idx)]
    }

    pub fn entries(&self) -> &[CycloNumber] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (BlockIndex, &CycloNumber)> {
        block_indices(self.order).into_iter().zip(&self.entries)
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &BlockVector) -> BlockVector {
        self.check(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .collect();
        BlockVector {
            order: self.order,
            sign: self.sign,
            entries,
        }
    }

    pub fn scale(&self, q: &BigRational) -> BlockVector {
        BlockVector {
            order: self.order,
            sign: self.sign,
            entries: self.entries.iter().map(|e| e.scale(q)).collect(),
        }
    }

    fn check(&self, other: &BlockVector) {
        assert_eq!(
            (self.order, self.sign),
            (other.order, other.sign),
            "block vectors over different objects"
        );
    }
}

/// `Φ±(R±ˡ)`: `(±1)ˡ` on `V₁` and every `V_{2+r}`, `(±ζ^{jt/2})ˡ` on `V_{(j,t)}`.
pub fn phi_r(order: Order, sign: Sign, l: i64) -> BlockVector {
    let s = sign.pow(l);
    BlockVector::from_fn(order, sign, |idx| {
        let e = match idx {
            BlockIndex::Mixed(j, t) => {
                let n = order.get() as i64;
                let jt = (j as i64 * t as i64) % n;
                // ζ^{jtl/2}; reduce before multiplying to stay in range
                order.half_exponent(jt * l.rem_euclid(n)) as i64
            }
            _ => 0,
        };
        let z = CycloNumber::zeta_pow(order, e);
        if s < 0 {
            -z
        } else {
            z
        }
    })
}

/// Matrix of the quarter rotation on block vectors. It does not depend on
/// the sign; the tag only keeps the interfaces uniform.
#[derive(Clone, Debug, PartialEq)]
pub struct RotMatrix {
    sign: Sign,
    matrix: CycloMatrix,
}

impl RotMatrix {
    pub fn order(&self) -> Order {
        self.matrix.order()
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn get(&self, row: BlockIndex, col: BlockIndex) -> &CycloNumber {
        let n = self.order();
        self.matrix
            .get(block_position(n, row), block_position(n, col))
    }

    /// Overwrites one entry.
    pub fn set(&mut self, row: BlockIndex, col: BlockIndex, v: CycloNumber) {
        let n = self.order();
        self.matrix
            .set(block_position(n, row), block_position(n, col), v);
    }

    pub fn matrix(&self) -> &CycloMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &BlockVector) -> BlockVector {
        assert_eq!(v.order, self.order());
        BlockVector {
            order: v.order,
            sign: v.sign,
            entries: self.matrix.mul_vec(&v.entries),
        }
    }
}

/// `ζ^{e/2} + ζ^{-e/2}`.
fn half_cos(order: Order, e: i64) -> CycloNumber {
    let k = order.half_exponent(e) as i64;
    &CycloNumber::zeta_pow(order, k) + &CycloNumber::zeta_pow(order, -k)
}

pub fn rot_matrix(order: Order, sign: Sign) -> RotMatrix {
    use BlockIndex::*;
    let n = order.get() as i64;
    let inv_n = BigRational::new(BigInt::from(1), BigInt::from(n));
    let idx = block_indices(order);
    let mut matrix = CycloMatrix::zeros(order, idx.len(), idx.len());
    for (a, &row) in idx.iter().enumerate() {
        for (b, &col) in idx.iter().enumerate() {
            let x = match (row, col) {
                (_, Unit) => CycloNumber::one(order),
                (Unit, _) | (TwoDim(_), TwoDim(_)) => CycloNumber::from_integer(order, 2),
                (TwoDim(r), Mixed(j, _)) | (Mixed(j, _), TwoDim(r)) => {
                    half_cos(order, j as i64 * r as i64)
                }
                (Mixed(j, t), Mixed(j2, t2)) => {
                    half_cos(order, (j as i64 * t2 as i64 + j2 as i64 * t as i64) % n)
                }
            };
            matrix.set(a, b, x.scale(&inv_n));
        }
    }
    RotMatrix { sign, matrix }
}

/// `|v| = Σ_i d_{V_i}·v_i`.
pub fn quantum_trace(v: &BlockVector) -> CycloNumber {
    let mut acc = CycloNumber::zero(v.order);
    for (idx, x) in v.iter() {
        acc = match qdim(idx) {
            1 => &acc + x,
            d => &acc + &x.scale(&BigRational::from_integer(BigInt::from(d))),
        };
    }
    acc
}

/// `ROT·Φ(Rˡ)` in closed form:
/// `(±1)ˡ(n,l)·(1 ⊕ [(n,l)|r] ⊕ [(n,l)|j, (n,l)|t]·ζ^{-jt/2l})`.
///
/// Fails with `NonInvertibleDenominator` when some surviving exponent has no
/// meaning modulo `n`; use the matrix product then.
pub fn rot_phi_power_closed(order: Order, sign: Sign, l: i64) -> Result<BlockVector> {
    assert_ne!(l, 0, "closed form needs l ≠ 0");
    closed_pattern(order, sign, sign.pow(l), l, 1)
}

/// `F(T(p/q))` in closed form:
/// `(±1)^μ(n,p)·(1 ⊕ [(n,p)|r] ⊕ [(n,p)|j, (n,p)|t]·ζ^{-(q/2p)jt})`,
/// with `μ` taken from the expansion [`neg_cf`] produces.
pub fn rational_closed_form(order: Order, sign: Sign, f: Frac) -> Result<BlockVector> {
    closed_pattern(order, sign, sign.pow(mu(&neg_cf(f))), f.num(), f.den())
}

fn closed_pattern(order: Order, sign: Sign, unit: i64, p: i64, q: i64) -> Result<BlockVector> {
    let g = (order.get() as i64).gcd(&p);
    let scale = CycloNumber::from_integer(order, unit * g);
    let idx = block_indices(order);
    let mut entries = Vec::with_capacity(idx.len());
    for i in idx {
        let e = match i {
            BlockIndex::Unit => Some(CycloNumber::one(order)),
            BlockIndex::TwoDim(r) => (r as i64 % g == 0).then(|| CycloNumber::one(order)),
            BlockIndex::Mixed(j, t) => {
                if j as i64 % g == 0 && t as i64 % g == 0 {
                    let jt = j as i64 * t as i64;
                    Some(CycloNumber::zeta_frac_pow(order, -q * jt, 2 * p)?)
                } else {
                    None
                }
            }
        };
        entries.push(match e {
            Some(x) => &x * &scale,
            None => CycloNumber::zero(order),
        });
    }
    Ok(BlockVector::from_entries(order, sign, entries))
}
