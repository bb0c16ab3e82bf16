//! Finite-difference oracle.
//!
//! Fields here are black boxes evaluated at `f64` points. Partials use the
//! central difference `(f(p + h·eₐ) − f(p − h·eₐ)) / 2h`, so the path shares
//! nothing with the symbolic engine except the polynomial sampler.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{apply_chain, eval_at, FieldError, FieldValue, PointValue};
use crate::operator::{chain_signature, Chain, ChainSignature, Operator, Sort};
use crate::poly::{Axis, Rational};

/// Longest chain [`cross_check`] accepts.
pub const MAX_CROSS_CHECK_DEPTH: usize = 2;
/// Relative tolerance used for depth-2 cross checks.
pub const NESTED_REL_TOL: f64 = 1e-3;
/// Absolute floor used for depth-2 cross checks.
pub const NESTED_ABS_FLOOR: f64 = 1e-6;

pub type Point = [f64; 3];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sample {
    Scalar(f64),
    Vector([f64; 3]),
}

impl Sample {
    pub fn sort(&self) -> Sort {
        match self {
            Sample::Scalar(_) => Sort::Scalar,
            Sample::Vector(_) => Sort::Vector,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Sample::Scalar(x) => x.is_finite(),
            Sample::Vector(v) => v.iter().all(|x| x.is_finite()),
        }
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        match self {
            Sample::Scalar(x) => x.abs(),
            Sample::Vector(v) => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
        }
    }

    /// Euclidean distance; `None` when sorts differ.
    pub fn distance(&self, other: &Sample) -> Option<f64> {
        match (self, other) {
            (Sample::Scalar(a), Sample::Scalar(b)) => Some((a - b).abs()),
            (Sample::Vector(a), Sample::Vector(b)) => Some(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum::<f64>()
                    .sqrt(),
            ),
            _ => None,
        }
    }

    fn component(&self, i: usize) -> f64 {
        match self {
            Sample::Scalar(x) => *x,
            Sample::Vector(v) => v[i],
        }
    }
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sample::Scalar(x) => write!(f, "{x:e}"),
            Sample::Vector([a, b, c]) => write!(f, "({a:e}, {b:e}, {c:e})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("sort mismatch: expected {expected} field, got {actual}")]
    SortMismatch { expected: Sort, actual: Sort },
    #[error("non-finite sample near {point:?}")]
    NumericalFailure { point: Point },
    #[error("chain of length {depth} is deeper than {max} supported by the oracle")]
    DepthUnsupported { depth: usize, max: usize },
    #[error("invalid finite-difference configuration: {0}")]
    InvalidConfig(&'static str),
    #[error(transparent)]
    Field(#[from] FieldError),
}

type Evaluator = dyn Fn(Point) -> Sample + Send + Sync;

/// A field known only through point evaluation. The evaluator must be pure.
#[derive(Clone)]
pub struct SampledField {
    sort: Sort,
    eval: Arc<Evaluator>,
}

impl fmt::Debug for SampledField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledField")
            .field("sort", &self.sort)
            .finish_non_exhaustive()
    }
}

impl SampledField {
    pub fn scalar(f: impl Fn(Point) -> f64 + Send + Sync + 'static) -> Self {
        SampledField {
            sort: Sort::Scalar,
            eval: Arc::new(move |p| Sample::Scalar(f(p))),
        }
    }

    pub fn vector(f: impl Fn(Point) -> [f64; 3] + Send + Sync + 'static) -> Self {
        SampledField {
            sort: Sort::Vector,
            eval: Arc::new(move |p| Sample::Vector(f(p))),
        }
    }

    /// Samples a polynomial field in floating point.
    pub fn from_polynomial(fv: &FieldValue) -> Self {
        match fv.clone() {
            FieldValue::Scalar(s) => SampledField::scalar(move |p| s.0.eval_f64(p)),
            FieldValue::Vector(v) => SampledField::vector(move |p| {
                [v.0[0].eval_f64(p), v.0[1].eval_f64(p), v.0[2].eval_f64(p)]
            }),
        }
    }

    pub fn sort(&self) -> Sort {
        self.sort
    }

    pub fn evaluate(&self, p: Point) -> Sample {
        (self.eval)(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    pub h: f64,
    pub rel_tol: f64,
    pub abs_floor: f64,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig {
            h: 1e-3,
            rel_tol: 1e-6,
            abs_floor: 1e-9,
        }
    }
}

impl FdConfig {
    pub fn new(h: f64, rel_tol: f64, abs_floor: f64) -> Result<Self, OracleError> {
        let cfg = FdConfig {
            h,
            rel_tol,
            abs_floor,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_step(self, h: f64) -> Result<Self, OracleError> {
        FdConfig::new(h, self.rel_tol, self.abs_floor)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.h) || self.h >= 1.0 {
            return Err(OracleError::InvalidConfig("step must lie in (0, 1)"));
        }
        if !positive(self.rel_tol) || !positive(self.abs_floor) {
            return Err(OracleError::InvalidConfig("tolerances must be positive"));
        }
        Ok(())
    }

    /// `max(rel_tol·|exact|, abs_floor)`.
    pub fn tolerance(&self, exact_norm: f64) -> f64 {
        (self.rel_tol * exact_norm).max(self.abs_floor)
    }
}

fn shifted(p: Point, axis: Axis, delta: f64) -> Point {
    let mut q = p;
    q[axis.index()] += delta;
    q
}

fn checked(field: &SampledField, p: Point) -> Result<Sample, OracleError> {
    let s = field.evaluate(p);
    if s.is_finite() {
        Ok(s)
    } else {
        Err(OracleError::NumericalFailure { point: p })
    }
}

/// Central difference of every component along `axis`.
fn fd_partial_components(
    field: &SampledField,
    axis: Axis,
    p: Point,
    h: f64,
) -> Result<Sample, OracleError> {
    let plus = checked(field, shifted(p, axis, h))?;
    let minus = checked(field, shifted(p, axis, -h))?;
    let d = |a: f64, b: f64| (a - b) / (2.0 * h);
    Ok(match (plus, minus) {
        (Sample::Scalar(a), Sample::Scalar(b)) => Sample::Scalar(d(a, b)),
        (Sample::Vector(a), Sample::Vector(b)) => {
            Sample::Vector([d(a[0], b[0]), d(a[1], b[1]), d(a[2], b[2])])
        }
        _ => return Err(OracleError::NumericalFailure { point: p }),
    })
}

pub fn fd_partial(
    field: &SampledField,
    axis: Axis,
    point: Point,
    cfg: &FdConfig,
) -> Result<f64, OracleError> {
    if field.sort() != Sort::Scalar {
        return Err(OracleError::SortMismatch {
            expected: Sort::Scalar,
            actual: field.sort(),
        });
    }
    cfg.validate()?;
    match fd_partial_components(field, axis, point, cfg.h)? {
        Sample::Scalar(x) => Ok(x),
        Sample::Vector(_) => Err(OracleError::NumericalFailure { point }),
    }
}

/// `grad`, `curl` or `div` with every partial replaced by a central
/// difference.
pub fn fd_first_order(
    op: Operator,
    field: &SampledField,
    point: Point,
    cfg: &FdConfig,
) -> Result<Sample, OracleError> {
    if field.sort() != op.domain() {
        return Err(OracleError::SortMismatch {
            expected: op.domain(),
            actual: field.sort(),
        });
    }
    cfg.validate()?;
    let d = |axis: Axis| fd_partial_components(field, axis, point, cfg.h);
    let [d1, d2, d3] = [d(Axis::X1)?, d(Axis::X2)?, d(Axis::X3)?];
    Ok(match op {
        Operator::Grad => Sample::Vector([d1.component(0), d2.component(0), d3.component(0)]),
        Operator::Curl => Sample::Vector([
            d2.component(2) - d3.component(1),
            d3.component(0) - d1.component(2),
            d1.component(1) - d2.component(0),
        ]),
        Operator::Div => Sample::Scalar(d1.component(0) + d2.component(1) + d3.component(2)),
    })
}

/// A new black-box field evaluating `op` on `field` by finite differences.
/// Failures surface as NaN samples and are reported by the outer caller.
pub fn fd_lift(
    op: Operator,
    field: &SampledField,
    cfg: FdConfig,
) -> Result<SampledField, OracleError> {
    if field.sort() != op.domain() {
        return Err(OracleError::SortMismatch {
            expected: op.domain(),
            actual: field.sort(),
        });
    }
    cfg.validate()?;
    let inner = field.clone();
    let nan = match op.codomain() {
        Sort::Scalar => Sample::Scalar(f64::NAN),
        Sort::Vector => Sample::Vector([f64::NAN; 3]),
    };
    Ok(SampledField {
        sort: op.codomain(),
        eval: Arc::new(move |p| fd_first_order(op, &inner, p, &cfg).unwrap_or(nan)),
    })
}

/// Outcome of comparing the symbolic engine against nested finite
/// differences.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckReport {
    pub points: usize,
    /// Largest `|fd − exact|` over the points.
    pub max_deviation: f64,
    /// Largest ratio of deviation to the per-point tolerance.
    pub worst_ratio: f64,
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub passed: bool,
}

fn point_value_to_sample(v: &PointValue) -> Sample {
    use num_traits::ToPrimitive;
    let f = |c: &Rational| c.to_f64().unwrap_or(f64::NAN);
    match v {
        PointValue::Scalar(c) => Sample::Scalar(f(c)),
        PointValue::Vector([a, b, c]) => Sample::Vector([f(a), f(b), f(c)]),
    }
}

fn exact_point(p: Point) -> Result<[Rational; 3], OracleError> {
    let conv = |x: f64| Rational::from_float(x).ok_or(OracleError::NumericalFailure { point: p });
    Ok([conv(p[0])?, conv(p[1])?, conv(p[2])?])
}

/// Compares `apply_chain(chain, poly_input)` with the nested finite
/// difference of the sampled input at each point.
///
/// Depth-1 chains use `cfg` as given; depth-2 chains relax the tolerance to
/// [`NESTED_REL_TOL`] and [`NESTED_ABS_FLOOR`].
pub fn cross_check(
    chain: &Chain,
    poly_input: &FieldValue,
    points: &[Point],
    cfg: &FdConfig,
) -> Result<CrossCheckReport, OracleError> {
    if chain.len() > MAX_CROSS_CHECK_DEPTH {
        return Err(OracleError::DepthUnsupported {
            depth: chain.len(),
            max: MAX_CROSS_CHECK_DEPTH,
        });
    }
    if chain_signature(chain) == ChainSignature::Meaningless {
        return Err(FieldError::MeaninglessChain(chain.clone()).into());
    }
    cfg.validate()?;
    let exact = apply_chain(chain, poly_input)?;

    let mut sampled = SampledField::from_polynomial(poly_input);
    for op in chain.application_order() {
        sampled = fd_lift(op, &sampled, *cfg)?;
    }

    let (rel_tol, abs_floor) = if chain.len() > 1 {
        (
            cfg.rel_tol.max(NESTED_REL_TOL),
            cfg.abs_floor.max(NESTED_ABS_FLOOR),
        )
    } else {
        (cfg.rel_tol, cfg.abs_floor)
    };
    let tol_cfg = FdConfig {
        h: cfg.h,
        rel_tol,
        abs_floor,
    };

    let mut max_deviation: f64 = 0.0;
    let mut worst_ratio: f64 = 0.0;
    for &p in points {
        let want = point_value_to_sample(&eval_at(&exact, &exact_point(p)?));
        let got = checked(&sampled, p)?;
        let dev = got.distance(&want).expect("sorts agree by construction");
        max_deviation = max_deviation.max(dev);
        worst_ratio = worst_ratio.max(dev / tol_cfg.tolerance(want.norm()));
    }
    Ok(CrossCheckReport {
        points: points.len(),
        max_deviation,
        worst_ratio,
        rel_tol,
        abs_floor,
        passed: worst_ratio <= 1.0,
    })
}
