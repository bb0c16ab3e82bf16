//! Scalar and vector polynomial fields and the exact differential operators.

use std::fmt;

use thiserror::Error;

use crate::operator::{chain_signature, Chain, ChainSignature, Grouping, Operator, Sort};
use crate::poly::{Axis, Polynomial, Rational, TooManyTerms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("meaningless chain `{0}` has no value")]
    MeaninglessChain(Chain),
    #[error("sort mismatch: expected {expected} field, got {actual}")]
    SortMismatch { expected: Sort, actual: Sort },
    #[error(transparent)]
    TooManyTerms(#[from] TooManyTerms),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarField(pub Polynomial);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VectorField(pub [Polynomial; 3]);

impl ScalarField {
    pub fn new(p: Polynomial) -> Self {
        ScalarField(p)
    }

    pub fn poly(&self) -> &Polynomial {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl VectorField {
    pub fn new(f1: Polynomial, f2: Polynomial, f3: Polynomial) -> Self {
        VectorField([f1, f2, f3])
    }

    pub fn zero() -> Self {
        VectorField::default()
    }

    pub fn component(&self, axis: Axis) -> &Polynomial {
        &self.0[axis.index()]
    }

    pub fn components(&self) -> &[Polynomial; 3] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> VectorField {
        VectorField([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
    }

    fn zip(
        &self,
        other: &VectorField,
        f: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> VectorField {
        VectorField([
            f(&self.0[0], &other.0[0]),
            f(&self.0[1], &other.0[1]),
            f(&self.0[2], &other.0[2]),
        ])
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        self.zip(other, |a, b| a - b)
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// A scalar or vector field. The sort travels with the value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldValue {
    Scalar(ScalarField),
    Vector(VectorField),
}

impl FieldValue {
    pub fn sort(&self) -> Sort {
        match self {
            FieldValue::Scalar(_) => Sort::Scalar,
            FieldValue::Vector(_) => Sort::Vector,
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero(self)
    }

    pub fn zero_of(sort: Sort) -> Self {
        match sort {
            Sort::Scalar => FieldValue::Scalar(ScalarField::default()),
            Sort::Vector => FieldValue::Vector(VectorField::zero()),
        }
    }

    pub fn polys(&self) -> &[Polynomial] {
        match self {
            FieldValue::Scalar(s) => std::slice::from_ref(&s.0),
            FieldValue::Vector(v) => &v.0,
        }
    }

    /// `a·self + b·other`. Both must share a sort.
    pub fn linear_combination(
        &self,
        a: &Rational,
        other: &FieldValue,
        b: &Rational,
    ) -> Result<FieldValue, FieldError> {
        let comb = |p: &Polynomial, q: &Polynomial| &p.scale(a) + &q.scale(b);
        match (self, other) {
            (FieldValue::Scalar(p), FieldValue::Scalar(q)) => {
                Ok(FieldValue::Scalar(ScalarField(comb(&p.0, &q.0))))
            }
            (FieldValue::Vector(p), FieldValue::Vector(q)) => {
                Ok(FieldValue::Vector(p.zip(q, comb)))
            }
            _ => Err(FieldError::SortMismatch {
                expected: self.sort(),
                actual: other.sort(),
            }),
        }
    }

    pub fn check_size(&self) -> Result<(), TooManyTerms> {
        self.polys().iter().try_for_each(Polynomial::check_size)
    }

    pub fn as_scalar(&self) -> Option<&ScalarField> {
        match self {
            FieldValue::Scalar(s) => Some(s),
            FieldValue::Vector(_) => None,
        }
    }

    pub fn as_vector(&self) -> Option<&VectorField> {
        match self {
            FieldValue::Vector(v) => Some(v),
            FieldValue::Scalar(_) => None,
        }
    }
}

impl From<ScalarField> for FieldValue {
    fn from(s: ScalarField) -> Self {
        FieldValue::Scalar(s)
    }
}

impl From<VectorField> for FieldValue {
    fn from(v: VectorField) -> Self {
        FieldValue::Vector(v)
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Scalar(s) => s.fmt(f),
            FieldValue::Vector(v) => v.fmt(f),
        }
    }
}

pub fn partial_derivative(p: &Polynomial, axis: Axis) -> Polynomial {
    p.partial(axis)
}

pub fn grad(f: &ScalarField) -> VectorField {
    VectorField(Axis::ALL.map(|a| f.0.partial(a)))
}

pub fn curl(v: &VectorField) -> VectorField {
    let [f1, f2, f3] = &v.0;
    VectorField([
        &f3.partial(Axis::X2) - &f2.partial(Axis::X3),
        &f1.partial(Axis::X3) - &f3.partial(Axis::X1),
        &f2.partial(Axis::X1) - &f1.partial(Axis::X2),
    ])
}

pub fn div(v: &VectorField) -> ScalarField {
    let [f1, f2, f3] = &v.0;
    ScalarField(&(&f1.partial(Axis::X1) + &f2.partial(Axis::X2)) + &f3.partial(Axis::X3))
}

/// Sum of pure second partials; agrees exactly with `div(grad(f))`.
pub fn laplacian(f: &ScalarField) -> ScalarField {
    ScalarField(laplacian_poly(&f.0))
}

pub(crate) fn laplacian_poly(p: &Polynomial) -> Polynomial {
    Axis::ALL
        .iter()
        .map(|&a| p.partial(a).partial(a))
        .fold(Polynomial::zero(), |acc, t| &acc + &t)
}

/// Componentwise Laplacian.
pub fn vector_laplacian(v: &VectorField) -> VectorField {
    v.map(laplacian_poly)
}

/// Applies one operator, checking the argument sort.
pub fn apply_operator(op: Operator, input: &FieldValue) -> Result<FieldValue, FieldError> {
    match (op, input) {
        (Operator::Grad, FieldValue::Scalar(f)) => Ok(grad(f).into()),
        (Operator::Curl, FieldValue::Vector(v)) => Ok(curl(v).into()),
        (Operator::Div, FieldValue::Vector(v)) => Ok(div(v).into()),
        _ => Err(FieldError::SortMismatch {
            expected: op.domain(),
            actual: input.sort(),
        }),
    }
}

/// Applies `chain` innermost first.
pub fn apply_chain(chain: &Chain, input: &FieldValue) -> Result<FieldValue, FieldError> {
    let ChainSignature::Meaningful {
        input: expected, ..
    } = chain_signature(chain)
    else {
        return Err(FieldError::MeaninglessChain(chain.clone()));
    };
    if expected != input.sort() {
        return Err(FieldError::SortMismatch {
            expected,
            actual: input.sort(),
        });
    }
    input.check_size()?;
    let mut value = input.clone();
    for op in chain.application_order() {
        value = apply_operator(op, &value)?;
    }
    Ok(value)
}

/// Evaluates a parenthesized composition: the inner group is applied first,
/// then the outer group to its result.
pub fn apply_grouping(g: &Grouping, input: &FieldValue) -> Result<FieldValue, FieldError> {
    match g {
        Grouping::Leaf(op) => apply_operator(*op, input),
        Grouping::Compose(outer, inner) => {
            if g.signature() == ChainSignature::Meaningless {
                return Err(FieldError::MeaninglessChain(g.flatten()));
            }
            let mid = apply_grouping(inner, input)?;
            apply_grouping(outer, &mid)
        }
    }
}

pub fn is_zero(fv: &FieldValue) -> bool {
    fv.polys().iter().all(Polynomial::is_zero)
}

/// Value of a field at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointValue {
    Scalar(Rational),
    Vector([Rational; 3]),
}

impl fmt::Display for PointValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointValue::Scalar(c) => write!(f, "{c}"),
            PointValue::Vector([a, b, c]) => write!(f, "({a}, {b}, {c})"),
        }
    }
}

pub fn eval_at(fv: &FieldValue, point: &[Rational; 3]) -> PointValue {
    match fv {
        FieldValue::Scalar(s) => PointValue::Scalar(s.0.eval(point)),
        FieldValue::Vector(v) => PointValue::Vector(v.0.clone().map(|p| p.eval(point))),
    }
}
