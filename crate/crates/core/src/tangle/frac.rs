use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Reduced nonzero fraction `p/q` with `q > 0`; the sign lives on `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Frac {
    num: i64,
    den: i64,
}

impl Frac {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidFraction(format!("{p}/{q}")));
        }
        if p == 0 {
            return Err(Error::ZeroTangle);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        Ok(Frac { num: p, den: q })
    }

    #[inline]
    pub fn num(self) -> i64 {
        self.num
    }

    #[inline]
    pub fn den(self) -> i64 {
        self.den
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn parse_int(s: &str) -> Result<i64> {
    let s = s.trim().replace('\u{2212}', "-");
    s.parse()
        .map_err(|_| Error::InvalidFraction(format!("not an integer: {s:?}")))
}

impl FromStr for Frac {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((p, q)) => Frac::new(parse_int(p)?, parse_int(q)?),
            None => Frac::new(parse_int(s)?, 1),
        }
    }
}

/// Parameters `p₁/q₁, …, p_m/q_m` of a Montesinos link, bottom tangle first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MontesinosSpec(Vec<Frac>);

impl MontesinosSpec {
    pub fn new(fracs: Vec<Frac>) -> Result<Self> {
        if fracs.is_empty() {
            return Err(Error::InvalidFraction("empty Montesinos spec".into()));
        }
        Ok(MontesinosSpec(fracs))
    }

    pub fn pretzel(ps: &[i64]) -> Result<Self> {
        Self::new(ps.iter().map(|&p| Frac::new(p, 1)).collect::<Result<_>>()?)
    }

    pub fn fracs(&self) -> &[Frac] {
        &self.0
    }

    /// Replaces every `p_i/q_i` by `p_i/(-q_i)`.
    pub fn mirror(&self) -> Self {
        MontesinosSpec(
            self.0
                .iter()
                .map(|f| Frac::new(f.num(), -f.den()).expect("nonzero"))
                .collect(),
        )
    }
}

impl fmt::Display for MontesinosSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for MontesinosSpec {
    type Err = Error;

    /// Comma-separated fractions, e.g. `1/3,-2/1,5/2`.
    fn from_str(s: &str) -> Result<Self> {
        MontesinosSpec::new(s.split(',').map(str::parse).collect::<Result<_>>()?)
    }
}

/// `[[s₁,…,s_k]]` with `[[s₁]] = s₁` and `[[s₁,…,s_k]] = s_k - 1/[[s₁,…,s_{k-1}]]`.
pub fn eval_cf(s: &[i64]) -> Result<Frac> {
    let (&first, rest) = s
        .split_first()
        .ok_or_else(|| Error::InvalidFraction("empty expansion".into()))?;
    // running value p/q, q > 0, not necessarily nonzero
    let (mut p, mut q) = (first as i128, 1i128);
    for (i, &sk) in rest.iter().enumerate() {
        if p == 0 {
            return Err(Error::IllFormedExpansion(i + 1));
        }
        // sk - q/p = (sk·p - q)/p
        let (np, nq) = (sk as i128 * p - q, p);
        let g = np.gcd(&nq).max(1);
        let sgn = nq.signum();
        p = sgn * np / g;
        q = sgn * nq / g;
    }
    if p == 0 {
        return Err(Error::ZeroTangle);
    }
    let p = i64::try_from(p).map_err(|_| Error::Overflow("continued fraction"))?;
    let q = i64::try_from(q).map_err(|_| Error::Overflow("continued fraction"))?;
    Frac::new(p, q)
}

/// How each term of a negative continued fraction expansion is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CfStrategy {
    /// `s_k = ⌈p/q⌉`; every remainder is positive.
    Ceil,
    /// `s_k = ⌊p/q⌋`; remainders are negative.
    Floor,
    /// `s_k` the nearest integer, ties rounded up.
    Nearest,
}

/// Expansion `[s₁,…,s_k]` with `eval_cf(neg_cf(f)) = f`, using [`CfStrategy::Nearest`]
/// (the shortest diagrams of the three strategies).
pub fn neg_cf(f: Frac) -> Vec<i64> {
    neg_cf_with(f, CfStrategy::Nearest)
}

pub fn neg_cf_with(f: Frac, strategy: CfStrategy) -> Vec<i64> {
    let (mut p, mut q) = (f.num(), f.den());
    // q > 0 throughout
    let mut rev = Vec::new();
    loop {
        let s = match strategy {
            CfStrategy::Ceil => -(-p).div_euclid(q),
            CfStrategy::Floor => p.div_euclid(q),
            CfStrategy::Nearest => (2 * p + q).div_euclid(2 * q),
        };
        rev.push(s);
        // p/q = s - 1/x  ⇒  x = q/(s·q - p), with |s·q - p| < q
        let r = s * q - p;
        if r == 0 {
            break;
        }
        let sgn = r.signum();
        (p, q) = (sgn * q, sgn * r);
    }
    rev.reverse();
    rev
}

/// `μ = Σ s_l` of an expansion.
pub fn mu(expansion: &[i64]) -> i64 {
    expansion.iter().sum()
}
