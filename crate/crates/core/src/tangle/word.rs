use std::fmt;

use super::frac::{neg_cf, Frac, MontesinosSpec};

/// Arborescent tangle word over integral tangles, vertical composition and
/// quarter rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TangleWord {
    /// `m` half-twists stacked vertically; `0` is the identity tangle.
    Integral(i64),
    /// `upper ⋆ lower`: `lower` is read first (drawn below).
    VComp(Box<TangleWord>, Box<TangleWord>),
    /// Counterclockwise quarter turn of the inner diagram.
    Rot(Box<TangleWord>),
}

impl TangleWord {
    pub fn integral(m: i64) -> Self {
        TangleWord::Integral(m)
    }

    pub fn vcomp(upper: TangleWord, lower: TangleWord) -> Self {
        TangleWord::VComp(Box::new(upper), Box::new(lower))
    }

    pub fn rot(inner: TangleWord) -> Self {
        TangleWord::Rot(Box::new(inner))
    }

    /// Total number of crossings, `Σ |m|` over the leaves.
    pub fn crossing_count(&self) -> u64 {
        match self {
            TangleWord::Integral(m) => m.unsigned_abs(),
            TangleWord::VComp(a, b) => a.crossing_count() + b.crossing_count(),
            TangleWord::Rot(a) => a.crossing_count(),
        }
    }
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleWord::Integral(m) => write!(f, "{m}"),
            TangleWord::Rot(a) => write!(f, "rt({a})"),
            TangleWord::VComp(a, b) => {
                write!(f, "{a}*")?;
                // `*` associates to the left
                match **b {
                    TangleWord::VComp(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}

/// `rt(s_k ⋆ rt(… rt(s₂ ⋆ rt(s₁)) …))`.
pub fn rational_word_from_expansion(expansion: &[i64]) -> TangleWord {
    let (&first, rest) = expansion.split_first().expect("nonempty expansion");
    rest.iter()
        .fold(TangleWord::rot(TangleWord::integral(first)), |acc, &s| {
            TangleWord::rot(TangleWord::vcomp(TangleWord::integral(s), acc))
        })
}

/// Rational tangle `T(p/q)` built from [`neg_cf`].
pub fn rational_word(f: Frac) -> TangleWord {
    rational_word_from_expansion(&neg_cf(f))
}

/// `T(p_m/q_m) ⋆ ⋯ ⋆ T(p₁/q₁)`.
pub fn montesinos_word(spec: &MontesinosSpec) -> TangleWord {
    // left-nested, as `*` parses
    let mut it = spec.fracs().iter().rev().copied().map(rational_word);
    let top = it.next().expect("nonempty spec");
    it.fold(top, TangleWord::vcomp)
}
