//! Fox `n`-colorings of a planar diagram, counted through the Smith normal
//! form of the coloring matrix. Independent of the block calculus.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::tangle::PlanarDiagram;

/// Enumeration budget of [`count_colorings_naive`].
pub const NAIVE_BUDGET: u64 = 10_000_000;

/// One row per relation, one column per arc (in the diagram's arc order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringMatrix {
    cols: usize,
    rows: Vec<Vec<i64>>,
}

impl ColoringMatrix {
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }
}

/// `x_{under-in} + x_{under-out} - 2·x_{over} ≡ 0` for every crossing.
///
/// Traced diagrams have `over_in == over_out`. Diagrams whose edges are
/// split at overcrossings as well get the extra relation
/// `x_{over-in} - x_{over-out} ≡ 0`.
pub fn coloring_matrix(d: &PlanarDiagram) -> ColoringMatrix {
    let col: HashMap<usize, usize> = d.arcs().iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let cols = d.arcs().len();
    let mut rows = Vec::with_capacity(d.crossing_count());
    for c in d.crossings() {
        let mut row = vec![0i64; cols];
        row[col[&c.under_in]] += 1;
        row[col[&c.under_out]] += 1;
        row[col[&c.over_in]] -= 2;
        rows.push(row);
        if c.over_in != c.over_out {
            let mut row = vec![0i64; cols];
            row[col[&c.over_in]] += 1;
            row[col[&c.over_out]] -= 1;
            rows.push(row);
        }
    }
    ColoringMatrix { cols, rows }
}

/// Nonzero invariant factors `d₁ | d₂ | … | d_r` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub cols: usize,
}

/// Smith normal form `U·M·V = D` together with the unimodular `U` and `V`.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
}

/// Diagonalizes `m` by unimodular row and column operations, always pivoting
/// on the entry of smallest absolute value.
pub fn smith_decomposition(m: &[Vec<i64>], cols: usize) -> SnfDecomposition {
    let rows = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols);
            r.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    let mut u = identity(rows);
    let mut v = identity(cols);

    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = smallest_nonzero(&a, t) {
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    add_row(&mut a, i, t, &-&q);
                    add_row(&mut u, i, t, &-&q);
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    add_col(&mut a, j, t, &-&q);
                    add_col(&mut v, j, t, &-&q);
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                continue;
            }
            // row and column are clear; enforce the divisibility chain
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    add_row(&mut a, t, i, &BigInt::one());
                    add_row(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if t < rows && t < cols && a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    SnfDecomposition { u, v, d: a }
}

/// Invariant factors of `m`. Test and debug builds also check `U·M·V = D`.
pub fn smith_normal_form(m: &ColoringMatrix) -> SnfResult {
    snf_of_rows(&m.rows, m.cols)
}

fn snf_of_rows(m: &[Vec<i64>], cols: usize) -> SnfResult {
    let dec = smith_decomposition(m, cols);
    if cfg!(debug_assertions) {
        let big: Vec<Vec<BigInt>> = m
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let umv = matmul(&matmul(&dec.u, &big), &dec.v);
        assert_eq!(
            umv, dec.d,
            "Smith normal form transforms do not reproduce D"
        );
    }
    let diagonal: Vec<BigInt> = (0..m.len().min(cols))
        .map(|i| dec.d[i][i].clone())
        .take_while(|x| !x.is_zero())
        .collect();
    debug_assert!(diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    SnfResult {
        rank: diagonal.len(),
        diagonal,
        cols,
    }
}

fn identity(k: usize) -> Vec<Vec<BigInt>> {
    (0..k)
        .map(|i| (0..k).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect()
}

fn smallest_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `row_dst += k·row_src`.
fn add_row(a: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    let src_row = a[src].clone();
    for (x, y) in a[dst].iter_mut().zip(&src_row) {
        *x += k * y;
    }
}

/// `col_dst += k·col_src`.
fn add_col(a: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    for row in a.iter_mut() {
        let y = row[src].clone();
        row[dst] += k * y;
    }
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let width = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..width)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn check_order(n: u32) -> Result<()> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    if n < 3 {
        return Err(Error::InvalidOrder(n as i64));
    }
    Ok(())
}

/// Number of solutions of `M·x ≡ 0 (mod n)`: `n^{c-r}·∏ gcd(d_i, n)`.
pub fn count_colorings(d: &PlanarDiagram, n: u32) -> Result<u64> {
    check_order(n)?;
    let snf = smith_normal_form(&coloring_matrix(d));
    count_from_snf(&snf, n)
}

pub fn count_from_snf(snf: &SnfResult, n: u32) -> Result<u64> {
    let big_n = BigInt::from(n);
    let mut count = num_traits::pow(big_n.clone(), snf.cols - snf.rank);
    for di in &snf.diagonal {
        count *= di.gcd(&big_n);
    }
    count.to_u64().ok_or(Error::Overflow("coloring count"))
}

/// Exhaustive count over all `n^{arcs}` assignments.
pub fn count_colorings_naive(d: &PlanarDiagram, n: u32) -> Result<u64> {
    check_order(n)?;
    let m = coloring_matrix(d);
    let c = m.n_cols();
    let total = (n as u64)
        .checked_pow(c as u32)
        .filter(|&t| t <= NAIVE_BUDGET)
        .ok_or_else(|| Error::BudgetExceeded(format!("{n}^{c}")))?;
    let n = n as i64;
    let mut x = vec![0i64; c];
    let mut count = 0u64;
    for _ in 0..total {
        if m.rows.iter().all(|row| {
            row.iter()
                .zip(&x)
                .map(|(a, b)| a * b)
                .sum::<i64>()
                .rem_euclid(n)
                == 0
        }) {
            count += 1;
        }
        for xi in x.iter_mut() {
            *xi += 1;
            if *xi < n {
                break;
            }
            *xi = 0;
        }
    }
    Ok(count)
}
