//! Evaluation of tangle words in the block calculus, and the three ways of
//! turning the result into a coloring count.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclotomic::Order;
use crate::dihedral::{phi_r, quantum_trace, rot_matrix, BlockVector, RotMatrix, Sign};
use crate::error::{Error, Result};
use crate::tangle::{closure_trace, montesinos_word, mu, neg_cf, MontesinosSpec, TangleWord};

/// Validates a coloring order: odd and at least 3.
pub fn order(n: u32) -> Result<Order> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    Order::new(n as i64)
}

/// Evaluator with a per-order cache of rotation matrices.
///
/// A rotation matrix can be replaced for one order with
/// [`Engine::with_rot_override`]; the verification harness uses this to
/// check that a corrupted table is detected.
#[derive(Default)]
pub struct Engine {
    cache: Mutex<HashMap<Order, Arc<RotMatrix>>>,
    overrides: HashMap<Order, Arc<RotMatrix>>,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_rot_override(mut self, rot: RotMatrix) -> Self {
        self.overrides.insert(rot.order(), Arc::new(rot));
        self
    }

    pub fn rot(&self, order: Order) -> Arc<RotMatrix> {
        if let Some(r) = self.overrides.get(&order) {
            return r.clone();
        }
        if let Some(r) = self.cache.lock().unwrap().get(&order) {
            return r.clone();
        }
        // built outside the lock; a racing duplicate is harmless
        let r = Arc::new(rot_matrix(order, Sign::Plus));
        self.cache.lock().unwrap().entry(order).or_insert(r).clone()
    }

    /// `1 ↦ R`, `⋆ ↦ ∘`, `rt ↦ ROT`, with no check on the closure.
    pub fn evaluate(&self, w: &TangleWord, order: Order, sign: Sign) -> BlockVector {
        match w {
            TangleWord::Integral(m) => phi_r(order, sign, *m),
            TangleWord::VComp(upper, lower) => self
                .evaluate(upper, order, sign)
                .compose(&self.evaluate(lower, order, sign)),
            TangleWord::Rot(inner) => self.rot(order).apply(&self.evaluate(inner, order, sign)),
        }
    }

    /// [`Engine::evaluate`] for words whose closure is a knot.
    pub fn eval_word(&self, w: &TangleWord, n: u32, sign: Sign) -> Result<BlockVector> {
        let order = order(n)?;
        require_knot(w)?;
        Ok(self.evaluate(w, order, sign))
    }

    /// `F(w̄, V±) = |F(w, V±)|` for a word closing to a knot.
    pub fn rt_invariant(&self, w: &TangleWord, n: u32, sign: Sign) -> Result<i64> {
        let v = self.eval_word(w, n, sign)?;
        trace_integer(&v)
    }

    /// `F(w̄, V₊)` and `F(w̄, V₋)`, closure not checked.
    fn both_traces(&self, w: &TangleWord, order: Order) -> Result<(i64, i64)> {
        let plus = trace_integer(&self.evaluate(w, order, Sign::Plus))?;
        let minus = trace_integer(&self.evaluate(w, order, Sign::Minus))?;
        Ok((plus, minus))
    }

    /// `CN_n = (1/2n) Σ_k Σ_± θ±^{wr} F(K,V±) (χ_{V±}(a^k b, e) + χ_{V±}(a^k b, a^k b))`
    /// with `χ_{V±}(a^k b, e) = 1`, `χ_{V±}(a^k b, a^k b) = ±1`, `θ_{V±} = ±1`.
    ///
    /// Every strand carries the same color, so the closure must be a knot;
    /// [`Engine::coloring_count_unchecked`] drops that check.
    pub fn coloring_count(&self, w: &TangleWord, n: u32) -> Result<u64> {
        let order = order(n)?;
        let d = require_knot(w)?;
        let wr = d.writhe().expect("knot diagrams carry a writhe");
        self.assemble(w, order, wr)
    }

    /// [`Engine::coloring_count`] without the knot check. For a link the
    /// writhe parity is the crossing-count parity, which is all that enters.
    pub fn coloring_count_unchecked(&self, w: &TangleWord, n: u32) -> Result<u64> {
        let order = order(n)?;
        self.assemble(w, order, w.crossing_count() as i64)
    }

    fn assemble(&self, w: &TangleWord, order: Order, wr: i64) -> Result<u64> {
        let (plus, minus) = self.both_traces(w, order)?;
        let n = order.get() as i64;
        let mut total = BigInt::zero();
        for _k in 0..n {
            for (sign, f) in [(Sign::Plus, plus), (Sign::Minus, minus)] {
                let chi = 1 + sign.twist();
                total += BigInt::from(sign.pow(wr)) * BigInt::from(f) * BigInt::from(chi);
            }
        }
        let (q, r) = total.div_rem(&BigInt::from(2 * n));
        if !r.is_zero() {
            return Err(Error::NonIntegerTrace);
        }
        q.to_u64().ok_or(Error::Overflow("coloring count"))
    }

    /// Full report for a word closing to a knot.
    pub fn invariant_report(&self, w: &TangleWord, n: u32) -> Result<InvariantReport> {
        let order = order(n)?;
        let d = require_knot(w)?;
        let wr = d.writhe().expect("knot diagrams carry a writhe");
        let (value_plus, value_minus) = self.both_traces(w, order)?;
        Ok(InvariantReport {
            word: w.to_string(),
            n,
            value_plus,
            value_minus,
            writhe_parity: wr.rem_euclid(2) as u8,
            cn: self.assemble(w, order, wr)?,
        })
    }
}

/// `F(K, V±)`, the writhe parity and `CN_n` of one knot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub word: String,
    pub n: u32,
    pub value_plus: i64,
    pub value_minus: i64,
    pub writhe_parity: u8,
    pub cn: u64,
}

fn require_knot(w: &TangleWord) -> Result<crate::tangle::PlanarDiagram> {
    let d = closure_trace(w);
    if d.n_components() != 1 {
        return Err(Error::MultiComponentClosure(d.n_components()));
    }
    Ok(d)
}

fn trace_integer(v: &BlockVector) -> Result<i64> {
    quantum_trace(v)
        .as_integer()
        .ok_or(Error::NonIntegerTrace)?
        .to_i64()
        .ok_or(Error::Overflow("quantum trace"))
}

fn default_engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(Engine::new)
}

/// [`Engine::eval_word`] on a shared engine.
pub fn eval_word(w: &TangleWord, n: u32, sign: Sign) -> Result<BlockVector> {
    default_engine().eval_word(w, n, sign)
}

/// [`Engine::rt_invariant`] on a shared engine.
pub fn rt_invariant(w: &TangleWord, n: u32, sign: Sign) -> Result<i64> {
    default_engine().rt_invariant(w, n, sign)
}

/// [`Engine::coloring_count`] on a shared engine.
pub fn coloring_count_engine(w: &TangleWord, n: u32) -> Result<u64> {
    default_engine().coloring_count(w, n)
}

/// [`Engine::invariant_report`] on a shared engine.
pub fn invariant_report(w: &TangleWord, n: u32) -> Result<InvariantReport> {
    default_engine().invariant_report(w, n)
}

/// `gcd(|a|, |b|)` with `gcd(a, 0) = |a|`.
fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// The closed value `n·∏(n,p_i)·(n/(n,L), N)/(n,L)` with `L = [p₁,…,p_m]`
/// and `N = L·Σ q_i/p_i`, before any sign.
fn closed_count(spec: &MontesinosSpec, n: u32) -> Result<u64> {
    let n = n as i64;
    let mut l = 1i64;
    let mut prod = BigInt::from(n);
    for f in spec.fracs() {
        l = l
            .checked_mul(f.num().abs() / gcd(l, f.num()))
            .ok_or(Error::Overflow("lcm of numerators"))?;
        prod *= gcd(n, f.num());
    }
    let big_l = BigInt::from(l);
    let sum = spec.fracs().iter().fold(BigRational::zero(), |acc, f| {
        acc + BigRational::new(f.den().into(), f.num().into())
    });
    let big_n = sum * BigRational::from_integer(big_l);
    if !big_n.is_integer() {
        return Err(Error::NonIntegerN(big_n.to_string()));
    }
    let nl = gcd(n, l);
    let big_n = big_n.to_integer();
    let g = BigInt::from(n / nl).gcd(&big_n);
    let (q, r) = (prod * g).div_rem(&BigInt::from(nl));
    debug_assert!(r.is_zero());
    q.to_u64().ok_or(Error::Overflow("coloring count"))
}

/// Number of Fox `n`-colorings of the Montesinos knot `M(p₁/q₁, …, p_m/q_m)`
/// by the closed formula. The closure must be a knot.
pub fn coloring_count_formula(spec: &MontesinosSpec, n: u32) -> Result<u64> {
    order(n)?;
    let d = closure_trace(&montesinos_word(spec));
    if d.n_components() != 1 {
        return Err(Error::NotAKnot(d.n_components()));
    }
    closed_count(spec, n)
}

/// [`coloring_count_formula`] without the knot check.
pub fn coloring_count_formula_unchecked(spec: &MontesinosSpec, n: u32) -> Result<u64> {
    order(n)?;
    closed_count(spec, n)
}

/// `|F̌(T(p_m/q_m)) ∘ ⋯ ∘ F̌(T(p₁/q₁))|` in closed form:
/// `(±1)^{Σμ}` times the count, with each `μ` from [`neg_cf`].
pub fn montesinos_invariant_closed(spec: &MontesinosSpec, n: u32, sign: Sign) -> Result<i64> {
    order(n)?;
    let total_mu: i64 = spec.fracs().iter().map(|&f| mu(&neg_cf(f))).sum();
    let v = closed_count(spec, n)? as i64;
    Ok(sign.pow(total_mu) * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::{parse_word, rational_word, Frac};

    fn fr(p: i64, q: i64) -> Frac {
        Frac::new(p, q).unwrap()
    }

    fn spec(s: &str) -> MontesinosSpec {
        s.parse().unwrap()
    }

    #[test]
    fn trefoil() {
        let w = rational_word(fr(1, 3));
        assert_eq!(rt_invariant(&w, 3, Sign::Plus).unwrap(), 9);
        assert_eq!(coloring_count_engine(&w, 3).unwrap(), 9);
        assert_eq!(
            coloring_count_engine(&rational_word(fr(2, 5)), 5).unwrap(),
            25
        );
    }

    #[test]
    fn identity_word() {
        let e = Engine::new();
        let o = order(5).unwrap();
        assert_eq!(
            e.evaluate(&TangleWord::integral(0), o, Sign::Minus),
            BlockVector::ones(o, Sign::Minus)
        );
        assert_eq!(
            eval_word(&TangleWord::integral(0), 5, Sign::Plus),
            Err(Error::MultiComponentClosure(2))
        );
    }

    #[test]
    fn unknot_and_pretzels() {
        for n in [3, 5, 7, 9] {
            assert_eq!(
                rt_invariant(&rational_word(fr(3, 1)), n, Sign::Plus).unwrap(),
                n as i64
            );
        }
        let p333 = montesinos_word(&MontesinosSpec::pretzel(&[3, 3, 3]).unwrap());
        assert_eq!(rt_invariant(&p333, 3, Sign::Plus).unwrap(), 27);
        for n in [3, 5, 7, 9, 11, 13, 15] {
            let w = montesinos_word(&spec("-2,3,5"));
            assert_eq!(coloring_count_engine(&w, n).unwrap(), n as u64);
        }
    }

    #[test]
    fn orders_are_validated() {
        let w = rational_word(fr(1, 3));
        assert_eq!(rt_invariant(&w, 4, Sign::Plus), Err(Error::EvenOrder(4)));
        assert_eq!(rt_invariant(&w, 1, Sign::Plus), Err(Error::InvalidOrder(1)));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(coloring_count_formula(&spec("1/3"), 9).unwrap(), 27);
        assert_eq!(coloring_count_formula(&spec("3,3,3"), 9).unwrap(), 243);
        assert_eq!(coloring_count_formula(&spec("-2,3,5"), 15).unwrap(), 15);
        assert_eq!(coloring_count_formula(&spec("3"), 7).unwrap(), 7);
        assert_eq!(
            coloring_count_formula(&spec("5/2"), 5),
            Err(Error::NotAKnot(2))
        );
    }

    #[test]
    fn closed_invariant_examples() {
        assert_eq!(
            montesinos_invariant_closed(&spec("1/3"), 3, Sign::Plus).unwrap(),
            9
        );
        // μ(1/3) = -3
        assert_eq!(
            montesinos_invariant_closed(&spec("1/3"), 3, Sign::Minus).unwrap(),
            -9
        );
        assert_eq!(
            montesinos_invariant_closed(&spec("3"), 5, Sign::Minus).unwrap(),
            -5
        );
    }

    #[test]
    fn report() {
        let w = parse_word("rt(-3)").unwrap();
        let r = invariant_report(&w, 3).unwrap();
        assert_eq!(
            (r.value_plus, r.value_minus, r.writhe_parity, r.cn),
            (3, -3, 1, 3)
        );
        let w = parse_word("-3").unwrap();
        let r = invariant_report(&w, 3).unwrap();
        assert_eq!((r.value_plus, r.cn), (9, 9));
    }
}
