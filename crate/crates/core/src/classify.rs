//! Meaningless / identically zero / nontrivial classification of chains.
//!
//! A meaningful chain is identically zero exactly when it contains an
//! adjacent `div curl` or `curl grad` factor. Every other meaningful chain
//! is one of three words per length, distinguished by its innermost
//! operator.

use std::fmt;

use thiserror::Error;

use crate::operator::{chain_signature, Chain, ChainSignature, Operator, Sort};

/// Largest length accepted by [`census`].
pub const DEFAULT_CENSUS_BOUND: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalFormFamily {
    /// `(grad) div ... grad div grad`, innermost `grad`, scalar input.
    GradDivAlternating,
    /// `curl curl ... curl`.
    CurlPower,
    /// `(div) grad ... div grad div`, innermost `div`, vector input.
    DivGradAlternating,
}

impl NormalFormFamily {
    pub const ALL: [NormalFormFamily; 3] = [
        NormalFormFamily::GradDivAlternating,
        NormalFormFamily::CurlPower,
        NormalFormFamily::DivGradAlternating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NormalFormFamily::GradDivAlternating => "grad-div-alternating",
            NormalFormFamily::CurlPower => "curl-power",
            NormalFormFamily::DivGradAlternating => "div-grad-alternating",
        }
    }

    pub fn innermost(self) -> Operator {
        match self {
            NormalFormFamily::GradDivAlternating => Operator::Grad,
            NormalFormFamily::CurlPower => Operator::Curl,
            NormalFormFamily::DivGradAlternating => Operator::Div,
        }
    }

    fn from_innermost(op: Operator) -> Self {
        match op {
            Operator::Grad => NormalFormFamily::GradDivAlternating,
            Operator::Curl => NormalFormFamily::CurlPower,
            Operator::Div => NormalFormFamily::DivGradAlternating,
        }
    }
}

impl fmt::Display for NormalFormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Meaningless,
    /// Identically `0` or `0⃗`. `witness` indexes the leftmost annihilating
    /// pair `(ops[witness], ops[witness + 1])`.
    TrivialZero {
        output: Sort,
        witness: usize,
    },
    Nontrivial {
        family: NormalFormFamily,
        order: usize,
    },
}

impl Classification {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Classification::TrivialZero { .. })
    }

    pub fn is_nontrivial(&self) -> bool {
        matches!(self, Classification::Nontrivial { .. })
    }
}

/// Whether `outer ∘ inner` vanishes identically (`div curl`, `curl grad`).
pub fn is_annihilating_pair(outer: Operator, inner: Operator) -> bool {
    matches!(
        (outer, inner),
        (Operator::Div, Operator::Curl) | (Operator::Curl, Operator::Grad)
    )
}

pub fn classify(chain: &Chain) -> Classification {
    let ChainSignature::Meaningful { output, .. } = chain_signature(chain) else {
        return Classification::Meaningless;
    };
    if let Some((witness, _, _)) = chain.pairs().find(|&(_, o, i)| is_annihilating_pair(o, i)) {
        return Classification::TrivialZero { output, witness };
    }
    let family = NormalFormFamily::from_innermost(chain.innermost());
    debug_assert_eq!(*chain, nontrivial_chain(family, chain.len()));
    Classification::Nontrivial {
        family,
        order: chain.len(),
    }
}

/// The unique nontrivial chain of `family` with `order` operators.
///
/// # Panics
/// If `order` is zero.
pub fn nontrivial_chain(family: NormalFormFamily, order: usize) -> Chain {
    assert!(order >= 1, "chains have at least one operator");
    // Built innermost first, then reversed into outermost-first storage.
    let mut ops = Vec::with_capacity(order);
    let mut op = family.innermost();
    for _ in 0..order {
        ops.push(op);
        op = match op {
            Operator::Grad => Operator::Div,
            Operator::Div => Operator::Grad,
            Operator::Curl => Operator::Curl,
        };
    }
    ops.reverse();
    Chain::new(ops).expect("order >= 1")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Census {
    pub length: usize,
    pub meaningless: u64,
    pub trivial: u64,
    pub nontrivial: u64,
}

impl Census {
    pub fn total(&self) -> u64 {
        self.meaningless + self.trivial + self.nontrivial
    }

    pub fn meaningful(&self) -> u64 {
        self.trivial + self.nontrivial
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("chain length {length} outside 1..={bound}")]
pub struct CensusError {
    pub length: usize,
    pub bound: usize,
}

/// Counts of every classification over all `3^length` chains.
pub fn census(length: usize) -> Result<Census, CensusError> {
    census_bounded(length, DEFAULT_CENSUS_BOUND)
}

pub fn census_bounded(length: usize, bound: usize) -> Result<Census, CensusError> {
    if length == 0 || length > bound {
        return Err(CensusError { length, bound });
    }
    let mut out = Census {
        length,
        meaningless: 0,
        trivial: 0,
        nontrivial: 0,
    };
    for chain in Chain::enumerate(length) {
        match classify(&chain) {
            Classification::Meaningless => out.meaningless += 1,
            Classification::TrivialZero { .. } => out.trivial += 1,
            Classification::Nontrivial { .. } => out.nontrivial += 1,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::Sort;
    use Operator::*;

    fn chain(ops: &[Operator]) -> Chain {
        Chain::new(ops.to_vec()).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&chain(&[Div, Curl])),
            Classification::TrivialZero {
                output: Sort::Scalar,
                witness: 0
            }
        );
        assert_eq!(
            classify(&chain(&[Curl, Curl, Grad])),
            Classification::TrivialZero {
                output: Sort::Vector,
                witness: 1
            }
        );
        assert_eq!(
            classify(&chain(&[Grad, Div, Grad])),
            Classification::Nontrivial {
                family: NormalFormFamily::GradDivAlternating,
                order: 3
            }
        );
        assert_eq!(
            classify(&chain(&[Curl, Curl, Curl])),
            Classification::Nontrivial {
                family: NormalFormFamily::CurlPower,
                order: 3
            }
        );
        assert_eq!(classify(&chain(&[Grad, Grad])), Classification::Meaningless);
    }

    #[test]
    fn leftmost_witness_wins() {
        assert_eq!(
            classify(&chain(&[Div, Curl, Grad])),
            Classification::TrivialZero {
                output: Sort::Scalar,
                witness: 0
            }
        );
    }

    #[test]
    fn family_words() {
        assert_eq!(
            nontrivial_chain(NormalFormFamily::CurlPower, 3),
            chain(&[Curl, Curl, Curl])
        );
        assert_eq!(
            nontrivial_chain(NormalFormFamily::DivGradAlternating, 3),
            chain(&[Div, Grad, Div])
        );
        assert_eq!(
            nontrivial_chain(NormalFormFamily::GradDivAlternating, 2),
            chain(&[Div, Grad])
        );
        assert_eq!(
            nontrivial_chain(NormalFormFamily::GradDivAlternating, 1),
            chain(&[Grad])
        );
        assert_eq!(
            nontrivial_chain(NormalFormFamily::DivGradAlternating, 1),
            chain(&[Div])
        );
    }

    #[test]
    fn family_words_classify_back() {
        for order in 1..=10 {
            for family in NormalFormFamily::ALL {
                let c = nontrivial_chain(family, order);
                assert_eq!(classify(&c), Classification::Nontrivial { family, order });
            }
        }
    }

    #[test]
    fn census_small_lengths() {
        let c1 = census(1).unwrap();
        assert_eq!((c1.meaningful(), c1.trivial, c1.nontrivial), (3, 0, 3));
        let c2 = census(2).unwrap();
        assert_eq!((c2.meaningful(), c2.trivial, c2.nontrivial), (5, 2, 3));
        let c3 = census(3).unwrap();
        assert_eq!((c3.meaningful(), c3.trivial, c3.nontrivial), (8, 5, 3));
        let c4 = census(4).unwrap();
        assert_eq!((c4.meaningful(), c4.trivial, c4.nontrivial), (13, 10, 3));
    }

    #[test]
    fn census_bounds() {
        assert_eq!(
            census(0),
            Err(CensusError {
                length: 0,
                bound: 12
            })
        );
        assert_eq!(
            census(13),
            Err(CensusError {
                length: 13,
                bound: 12
            })
        );
        assert!(census_bounded(13, 13).is_ok());
    }

    #[test]
    fn census_totals() {
        for n in 1..=9 {
            let c = census(n).unwrap();
            assert_eq!(c.total(), 3u64.pow(n as u32));
            assert_eq!(c.nontrivial, 3);
        }
    }
}
