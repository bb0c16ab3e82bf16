//! Sorts, the three first-order operators, and chain composition.
//!
//! A [`Chain`] stores operators outermost first, so `[Div, Curl, Grad]` is
//! `div ∘ curl ∘ grad` and acts on its argument right to left.

use std::fmt;

/// The sort of a field: scalar (`F`) or vector (`F⃗`).
///
/// The nowhere-defined value is not a sort. It only appears as the
/// [`ChainSignature::Meaningless`] outcome of a composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Scalar,
    Vector,
}

impl Sort {
    pub const ALL: [Sort; 2] = [Sort::Scalar, Sort::Vector];

    pub fn name(self) -> &'static str {
        match self {
            Sort::Scalar => "scalar",
            Sort::Vector => "vector",
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of `grad` (∇₁), `curl` (∇₂), `div` (∇₃).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    Grad,
    Curl,
    Div,
}

impl Operator {
    pub const ALL: [Operator; 3] = [Operator::Grad, Operator::Curl, Operator::Div];

    /// `(domain, codomain)` of the operator.
    pub const fn signature(self) -> (Sort, Sort) {
        match self {
            Operator::Grad => (Sort::Scalar, Sort::Vector),
            Operator::Curl => (Sort::Vector, Sort::Vector),
            Operator::Div => (Sort::Vector, Sort::Scalar),
        }
    }

    pub const fn domain(self) -> Sort {
        self.signature().0
    }

    pub const fn codomain(self) -> Sort {
        self.signature().1
    }

    /// Index in the ∇₁, ∇₂, ∇₃ numbering.
    pub const fn index(self) -> u8 {
        match self {
            Operator::Grad => 1,
            Operator::Curl => 2,
            Operator::Div => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Operator::Grad => "grad",
            Operator::Curl => "curl",
            Operator::Div => "div",
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Free-function form of [`Operator::signature`].
pub fn signature(op: Operator) -> (Sort, Sort) {
    op.signature()
}

/// Result of composing operators: either the nowhere-defined value or an
/// arrow between two sorts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainSignature {
    Meaningless,
    Meaningful { input: Sort, output: Sort },
}

impl ChainSignature {
    pub fn of(op: Operator) -> Self {
        let (input, output) = op.signature();
        ChainSignature::Meaningful { input, output }
    }

    pub fn is_meaningful(&self) -> bool {
        matches!(self, ChainSignature::Meaningful { .. })
    }

    /// Composes `outer ∘ inner`. Meaningless is absorbing on both sides.
    pub fn compose(outer: ChainSignature, inner: ChainSignature) -> ChainSignature {
        match (outer, inner) {
            (
                ChainSignature::Meaningful {
                    input: mid_in,
                    output,
                },
                ChainSignature::Meaningful {
                    input,
                    output: mid_out,
                },
            ) if mid_in == mid_out => ChainSignature::Meaningful { input, output },
            _ => ChainSignature::Meaningless,
        }
    }

    /// Sort produced when applied to an argument of sort `arg`, or `None`
    /// for the nowhere-defined outcome.
    pub fn apply_to(&self, arg: Sort) -> Option<Sort> {
        match *self {
            ChainSignature::Meaningful { input, output } if input == arg => Some(output),
            _ => None,
        }
    }
}

impl fmt::Display for ChainSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainSignature::Meaningless => f.write_str("meaningless"),
            ChainSignature::Meaningful { input, output } => write!(f, "{input} -> {output}"),
        }
    }
}

/// Signature of `outer ∘ inner`.
pub fn compose_pair(outer: Operator, inner: Operator) -> ChainSignature {
    ChainSignature::compose(ChainSignature::of(outer), ChainSignature::of(inner))
}

/// A nonempty composition of operators, outermost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain(Vec<Operator>);

impl Chain {
    /// Returns `None` for an empty sequence; there is no identity operator.
    pub fn new(ops: Vec<Operator>) -> Option<Self> {
        if ops.is_empty() {
            None
        } else {
            Some(Chain(ops))
        }
    }

    pub fn single(op: Operator) -> Self {
        Chain(vec![op])
    }

    pub fn ops(&self) -> &[Operator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn outermost(&self) -> Operator {
        self.0[0]
    }

    pub fn innermost(&self) -> Operator {
        self.0[self.0.len() - 1]
    }

    /// Operators in the order they act on an argument.
    pub fn application_order(&self) -> impl Iterator<Item = Operator> + '_ {
        self.0.iter().rev().copied()
    }

    /// Adjacent `(outer, inner)` pairs, indexed from the outermost.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, Operator, Operator)> + '_ {
        self.0.windows(2).enumerate().map(|(i, w)| (i, w[0], w[1]))
    }

    /// `self ∘ inner` as a longer chain.
    pub fn then_inner(&self, inner: &Chain) -> Chain {
        let mut ops = self.0.clone();
        ops.extend_from_slice(&inner.0);
        Chain(ops)
    }

    /// All `3^len` chains of the given length in lexicographic order of
    /// `Operator::ALL`.
    pub fn enumerate(len: usize) -> impl Iterator<Item = Chain> {
        let total = if len == 0 { 0 } else { 3usize.pow(len as u32) };
        (0..total).map(move |mut code| {
            let mut ops = vec![Operator::Grad; len];
            for slot in ops.iter_mut().rev() {
                *slot = Operator::ALL[code % 3];
                code /= 3;
            }
            Chain(ops)
        })
    }
}

impl From<Operator> for Chain {
    fn from(op: Operator) -> Self {
        Chain::single(op)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, op) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(op.name())?;
        }
        Ok(())
    }
}

/// Signature of the whole chain, folded right to left (innermost pairs
/// first).
pub fn chain_signature(chain: &Chain) -> ChainSignature {
    chain
        .ops()
        .iter()
        .rev()
        .map(|&op| ChainSignature::of(op))
        .reduce(|inner, outer| ChainSignature::compose(outer, inner))
        .expect("chain is nonempty")
}

/// Signature folded left to right, `((a ∘ b) ∘ c) ∘ ...`.
pub fn chain_signature_left_grouped(chain: &Chain) -> ChainSignature {
    chain
        .ops()
        .iter()
        .map(|&op| ChainSignature::of(op))
        .reduce(ChainSignature::compose)
        .expect("chain is nonempty")
}

/// An explicitly parenthesized composition, used to check that grouping
/// does not matter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Grouping {
    Leaf(Operator),
    /// `(outer) ∘ (inner)`.
    Compose(Box<Grouping>, Box<Grouping>),
}

impl Grouping {
    /// `((a ∘ b) ∘ c) ∘ ...`
    pub fn left(chain: &Chain) -> Grouping {
        let mut ops = chain.ops().iter();
        let first = Grouping::Leaf(*ops.next().expect("chain is nonempty"));
        ops.fold(first, |acc, &op| {
            Grouping::Compose(Box::new(acc), Box::new(Grouping::Leaf(op)))
        })
    }

    /// `a ∘ (b ∘ (c ∘ ...))`
    pub fn right(chain: &Chain) -> Grouping {
        let mut ops = chain.ops().iter().rev();
        let last = Grouping::Leaf(*ops.next().expect("chain is nonempty"));
        ops.fold(last, |acc, &op| {
            Grouping::Compose(Box::new(Grouping::Leaf(op)), Box::new(acc))
        })
    }

    pub fn signature(&self) -> ChainSignature {
        match self {
            Grouping::Leaf(op) => ChainSignature::of(*op),
            Grouping::Compose(outer, inner) => {
                ChainSignature::compose(outer.signature(), inner.signature())
            }
        }
    }

    /// Flattens back to a chain.
    pub fn flatten(&self) -> Chain {
        match self {
            Grouping::Leaf(op) => Chain::single(*op),
            Grouping::Compose(outer, inner) => outer.flatten().then_inner(&inner.flatten()),
        }
    }
}

impl fmt::Display for Grouping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grouping::Leaf(op) => write!(f, "{op}"),
            Grouping::Compose(outer, inner) => write!(f, "({outer} ∘ {inner})"),
        }
    }
}
