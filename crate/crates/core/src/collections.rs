//! Polyharmonic, curling and vector-harmonic collections, plus checkers for
//! the inductive Laplacian product identities.
//!
//! * `Hₙ`: scalar `f` with `Δⁿf = 0`.
//! * `Cₙ`: vector `v` with `curlⁿ v = 0⃗`.
//! * `H⃗ₙ`: vector `v` with `Δ⃗ⁿ v = 0⃗`.
//!
//! Orders reported here are the least `n` with the defining annihilation.

use std::fmt;

use thiserror::Error;

use crate::field::{
    apply_chain, curl, div, grad, is_zero, laplacian, vector_laplacian, FieldError, FieldValue,
    ScalarField, VectorField,
};
use crate::operator::{Chain, Operator, Sort};
use crate::poly::{rational, Axis, Polynomial};

/// Default iteration bound for [`collection_order`].
pub const DEFAULT_MAX_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CollectionKind {
    Harmonic,
    Curling,
    VectorHarmonic,
}

impl CollectionKind {
    pub fn required_sort(self) -> Sort {
        match self {
            CollectionKind::Harmonic => Sort::Scalar,
            CollectionKind::Curling | CollectionKind::VectorHarmonic => Sort::Vector,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CollectionKind::Harmonic => "harmonic",
            CollectionKind::Curling => "curling",
            CollectionKind::VectorHarmonic => "vharmonic",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "harmonic" => Some(CollectionKind::Harmonic),
            "curling" => Some(CollectionKind::Curling),
            "vharmonic" => Some(CollectionKind::VectorHarmonic),
            _ => None,
        }
    }

    /// One application of the defining operator (`Δ`, `curl` or `Δ⃗`).
    fn step(self, field: &FieldValue) -> FieldValue {
        match (self, field) {
            (CollectionKind::Harmonic, FieldValue::Scalar(f)) => laplacian(f).into(),
            (CollectionKind::Curling, FieldValue::Vector(v)) => curl(v).into(),
            (CollectionKind::VectorHarmonic, FieldValue::Vector(v)) => vector_laplacian(v).into(),
            _ => unreachable!("sort checked by caller"),
        }
    }

    fn check_sort(self, field: &FieldValue) -> Result<(), FieldError> {
        let expected = self.required_sort();
        if field.sort() != expected {
            return Err(FieldError::SortMismatch {
                expected,
                actual: field.sort(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for CollectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderResult {
    Order(usize),
    ExceedsBound(usize),
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::Order(n) => write!(f, "order {n}"),
            OrderResult::ExceedsBound(n) => write!(f, "exceeds {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollectionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("field is not in the {kind} collection of order {order}")]
    NotInCollection { kind: CollectionKind, order: usize },
}

/// `m`-fold iterate of the collection's operator.
pub fn iterate(
    kind: CollectionKind,
    field: &FieldValue,
    m: usize,
) -> Result<FieldValue, FieldError> {
    kind.check_sort(field)?;
    let mut value = field.clone();
    for _ in 0..m {
        if value.is_zero() {
            break;
        }
        value = kind.step(&value);
    }
    Ok(value)
}

/// Whether the `m`-fold iterate vanishes, i.e. membership in the collection
/// of order `m`.
pub fn in_collection(
    kind: CollectionKind,
    field: &FieldValue,
    m: usize,
) -> Result<bool, FieldError> {
    Ok(iterate(kind, field, m)?.is_zero())
}

/// Least `n` in `1..=max_n` whose `n`-fold iterate is zero.
///
/// The zero field has order 1.
pub fn collection_order(
    kind: CollectionKind,
    field: &FieldValue,
    max_n: usize,
) -> Result<OrderResult, FieldError> {
    kind.check_sort(field)?;
    let mut value = field.clone();
    for n in 1..=max_n {
        value = kind.step(&value);
        if value.is_zero() {
            return Ok(OrderResult::Order(n));
        }
    }
    Ok(OrderResult::ExceedsBound(max_n))
}

/// Membership of `field` in the annihilator of `chain`.
pub fn annihilates(chain: &Chain, field: &FieldValue) -> Result<bool, FieldError> {
    Ok(is_zero(&apply_chain(chain, field)?))
}

fn laplacian_pow(f: &Polynomial, n: usize) -> Polynomial {
    let mut p = f.clone();
    for _ in 0..n {
        if p.is_zero() {
            break;
        }
        p = laplacian(&ScalarField(p)).0;
    }
    p
}

/// `Δⁿ(x·f) = 2n·∂(Δⁿ⁻¹f)/∂x + x·Δⁿf` along `x₁`.
///
/// # Panics
/// If `n == 0`.
pub fn check_coordinate_product(f: &ScalarField, n: usize) -> bool {
    check_coordinate_product_axis(f, n, Axis::X1)
}

pub fn check_coordinate_product_axis(f: &ScalarField, n: usize, axis: Axis) -> bool {
    assert!(n >= 1, "order must be positive");
    let x = Polynomial::var(axis);
    let lhs = laplacian_pow(&(&x * &f.0), n);
    let rhs = &laplacian_pow(&f.0, n - 1)
        .partial(axis)
        .scale(&rational(2 * n as i64))
        + &(&x * &laplacian_pow(&f.0, n));
    lhs == rhs
}

/// For `n >= 2`:
/// `Δⁿ(x²f) = 4n(n−1)·∂²(Δⁿ⁻²f)/∂x² + 4nx·∂(Δⁿ⁻¹f)/∂x + 2n·Δⁿ⁻¹f + x²·Δⁿf`.
/// For `n == 1` the base equation `Δ(x²f) = 2f + 4x·∂f/∂x + x²·Δf`.
///
/// # Panics
/// If `n == 0`.
pub fn check_square_product(f: &ScalarField, n: usize) -> bool {
    check_square_product_axis(f, n, Axis::X1)
}

pub fn check_square_product_axis(f: &ScalarField, n: usize, axis: Axis) -> bool {
    assert!(n >= 1, "order must be positive");
    let x = Polynomial::var(axis);
    let x2 = &x * &x;
    let lhs = laplacian_pow(&(&x2 * &f.0), n);
    let rhs = if n == 1 {
        let terms = [
            f.0.scale(&rational(2)),
            &x.scale(&rational(4)) * &f.0.partial(axis),
            &x2 * &laplacian_pow(&f.0, 1),
        ];
        terms.iter().fold(Polynomial::zero(), |acc, t| &acc + t)
    } else {
        let k = n as i64;
        let terms = [
            laplacian_pow(&f.0, n - 2)
                .partial(axis)
                .partial(axis)
                .scale(&rational(4 * k * (k - 1))),
            &x.scale(&rational(4 * k)) * &laplacian_pow(&f.0, n - 1).partial(axis),
            laplacian_pow(&f.0, n - 1).scale(&rational(2 * k)),
            &x2 * &laplacian_pow(&f.0, n),
        ];
        terms.iter().fold(Polynomial::zero(), |acc, t| &acc + t)
    };
    lhs == rhs
}

/// `curl curl v = grad div v` for `v` with `Δ⃗v = 0⃗`.
pub fn check_harmonic_curl_curl(v: &VectorField) -> Result<bool, CollectionError> {
    if !vector_laplacian(v).is_zero() {
        return Err(CollectionError::NotInCollection {
            kind: CollectionKind::VectorHarmonic,
            order: 1,
        });
    }
    Ok(curl(&curl(v)) == grad(&div(v)))
}

/// The eight meaningful third-order chains in the order
/// `grad div grad`, `curl curl curl`, `div grad div`, `div curl curl`,
/// `div curl grad`, `curl curl grad`, `curl grad div`, `grad div curl`.
pub fn third_order_chains() -> [Chain; 8] {
    use Operator::*;
    [
        [Grad, Div, Grad],
        [Curl, Curl, Curl],
        [Div, Grad, Div],
        [Div, Curl, Curl],
        [Div, Curl, Grad],
        [Curl, Curl, Grad],
        [Curl, Grad, Div],
        [Grad, Div, Curl],
    ]
    .map(|ops| Chain::new(ops.to_vec()).expect("nonempty"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThirdOrderReport {
    /// Each third-order chain with whether it annihilated its argument.
    pub results: Vec<(Chain, bool)>,
}

impl ThirdOrderReport {
    pub fn all_zero(&self) -> bool {
        self.results.iter().all(|(_, z)| *z)
    }
}

/// Applies every meaningful third-order chain to `f` (scalar chains) or `v`
/// (vector chains). Requires `Δf = 0` and `Δ⃗v = 0⃗`.
pub fn third_order_on_harmonic(
    f: &ScalarField,
    v: &VectorField,
) -> Result<ThirdOrderReport, CollectionError> {
    if !laplacian(f).is_zero() {
        return Err(CollectionError::NotInCollection {
            kind: CollectionKind::Harmonic,
            order: 1,
        });
    }
    if !vector_laplacian(v).is_zero() {
        return Err(CollectionError::NotInCollection {
            kind: CollectionKind::VectorHarmonic,
            order: 1,
        });
    }
    let scalar = FieldValue::Scalar(f.clone());
    let vector = FieldValue::Vector(v.clone());
    let results = third_order_chains()
        .into_iter()
        .map(|c| {
            let arg = if c.innermost() == Operator::Grad {
                &scalar
            } else {
                &vector
            };
            let zero = annihilates(&c, arg)?;
            Ok((c, zero))
        })
        .collect::<Result<Vec<_>, FieldError>>()?;
    Ok(ThirdOrderReport { results })
}
