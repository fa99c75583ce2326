//! Helpers shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use dwknot::cyclotomic::{CycloNumber, Order};
use dwknot::dihedral::{BlockVector, Sign};

pub fn o(n: i64) -> Order {
    Order::new(n).unwrap()
}

/// A few random monomials `(a/b)·ζ^k` with small `a`, `b`.
pub fn random_cyclo(rng: &mut ChaCha8Rng, order: Order) -> CycloNumber {
    let n = order.get() as i64;
    let terms = rng.gen_range(0..=3);
    let mut x = CycloNumber::zero(order);
    for _ in 0..terms {
        let a: i64 = rng.gen_range(-5..=5);
        let b: i64 = rng.gen_range(1..=4);
        let q = BigRational::new(BigInt::from(a), BigInt::from(b));
        x = &x + &CycloNumber::zeta_pow(order, rng.gen_range(0..n)).scale(&q);
    }
    x
}

pub fn random_block_vector(rng: &mut ChaCha8Rng, order: Order, sign: Sign) -> BlockVector {
    BlockVector::from_fn(order, sign, |_| random_cyclo(rng, order))
}
