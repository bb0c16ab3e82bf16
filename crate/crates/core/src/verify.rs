//! Corpus-level verification suites.
//!
//! Each suite runs a set of named checks over a seeded field corpus and
//! returns a [`Report`]. Reports are sorted by check name and contain no
//! timing data, so the same seed and parameters print identical text.

use std::fmt;

use num_traits::ToPrimitive;

use crate::classify::{classify, Classification};
use crate::collections::{
    check_coordinate_product, check_harmonic_curl_curl, check_square_product, collection_order,
    third_order_on_harmonic, CollectionKind, OrderResult, DEFAULT_MAX_ORDER,
};
use crate::corpus::{radius_squared, CorpusConfig, FieldGenerator};
use crate::field::{
    apply_chain, apply_grouping, curl, div, grad, vector_laplacian, FieldValue, ScalarField,
    VectorField,
};
use crate::json::field_to_json;
use crate::numeric::{cross_check, fd_first_order, fd_partial, FdConfig, Sample, SampledField};
use crate::operator::{chain_signature, Chain, ChainSignature, Grouping, Operator, Sort};
use crate::parse::parse;
use crate::poly::{ratio, Axis, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Associativity,
    Examples,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Identities,
        Suite::Associativity,
        Suite::Examples,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Associativity => "associativity",
            Suite::Examples => "examples",
            Suite::Oracle => "oracle",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Distinct stream per suite so suites do not share fields.
    fn salt(self) -> u64 {
        match self {
            Suite::Identities => 0x1D,
            Suite::Associativity => 0xA5,
            Suite::Examples => 0xE7,
            Suite::Oracle => 0x0C,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyParams {
    pub trials: usize,
    pub seed: u64,
    pub degree: u32,
    /// Finite-difference step for the oracle suite's first-order check;
    /// `None` uses [`POLY_FD_STEP`].
    pub fd_step: Option<f64>,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            trials: 100,
            seed: 42,
            degree: 4,
            fd_step: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    /// First failing input, in a printable form.
    pub counterexample: Option<String>,
}

impl CheckResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total && self.counterexample.is_none()
    }
}

/// Accumulates pass/fail results for one named check.
struct Tally {
    name: String,
    passed: usize,
    total: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            passed: 0,
            total: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            passed: self.passed,
            total: self.total,
            counterexample: self.counterexample,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub params: VerifyParams,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::ok)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params;
        write!(
            f,
            "suite {} (trials {}, seed {}, degree {}",
            self.suite.name(),
            p.trials,
            p.seed,
            p.degree
        )?;
        if let Some(h) = p.fd_step {
            write!(f, ", fd step {h:e}")?;
        }
        writeln!(f, ")")?;
        for c in &self.checks {
            let tag = if c.ok() { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {} {}/{}", c.name, c.passed, c.total)?;
            if let Some(ce) = &c.counterexample {
                writeln!(f, "  counterexample: {ce}")?;
            }
        }
        let failed = self.checks.iter().filter(|c| !c.ok()).count();
        if failed == 0 {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "{failed} of {} checks failed", self.checks.len())
        }
    }
}

pub fn run(suite: Suite, params: VerifyParams) -> Report {
    let mut checks = match suite {
        Suite::Identities => identities(params),
        Suite::Associativity => associativity(params),
        Suite::Examples => examples(params),
        Suite::Oracle => oracle(params),
    };
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Report {
        suite,
        params,
        checks,
    }
}

fn generator(suite: Suite, params: VerifyParams, cfg: CorpusConfig) -> FieldGenerator {
    FieldGenerator::new(
        params.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ suite.salt(),
        cfg,
    )
}

fn json(fv: impl Into<FieldValue>) -> String {
    field_to_json(&fv.into())
}

fn chains(exprs: &[&str]) -> Vec<Chain> {
    exprs
        .iter()
        .map(|e| parse(e).expect("built-in chain"))
        .collect()
}

fn identities(params: VerifyParams) -> Vec<CheckResult> {
    let cfg = CorpusConfig {
        degree: params.degree,
        ..CorpusConfig::default()
    };
    let mut gen = generator(Suite::Identities, params, cfg);

    let mut div_curl = Tally::new("div-curl-zero");
    let mut curl_grad = Tally::new("curl-grad-zero");
    let mut third = Tally::new("third-order-zero");
    let mut curl_curl = Tally::new("curl-curl-expansion");
    let mut linear = Tally::new("linearity");
    let mut degree = Tally::new("degree-drop");

    let third_order = chains(&[
        "div curl curl",
        "div curl grad",
        "curl curl grad",
        "curl grad div",
        "grad div curl",
    ]);
    let linear_chains: Vec<Chain> = (1..=3)
        .flat_map(Chain::enumerate)
        .filter(|c| chain_signature(c).is_meaningful())
        .collect();
    let (a, b) = (ratio(3, 2), ratio(-2, 1));

    for _ in 0..params.trials {
        let f = gen.scalar();
        let v = gen.vector();
        let f2 = gen.scalar();
        let v2 = gen.vector();
        let fs: FieldValue = f.clone().into();
        let vs: FieldValue = v.clone().into();

        div_curl.record(div(&curl(&v)).is_zero(), || json(v.clone()));
        curl_grad.record(curl(&grad(&f)).is_zero(), || json(f.clone()));

        for c in &third_order {
            let arg = if c.innermost() == Operator::Grad {
                &fs
            } else {
                &vs
            };
            let zero = apply_chain(c, arg).map(|r| r.is_zero()).unwrap_or(false);
            third.record(zero, || format!("{c} on {}", field_to_json(arg)));
        }

        let lhs = curl(&curl(&v));
        let rhs = grad(&div(&v)).sub(&vector_laplacian(&v));
        curl_curl.record(lhs == rhs, || json(v.clone()));

        for c in &linear_chains {
            let (u, w): (FieldValue, FieldValue) = match chain_signature(c) {
                ChainSignature::Meaningful {
                    input: Sort::Scalar,
                    ..
                } => (fs.clone(), f2.clone().into()),
                _ => (vs.clone(), v2.clone().into()),
            };
            let comb = u.linear_combination(&a, &w, &b).expect("same sort");
            let ok = match (
                apply_chain(c, &comb),
                apply_chain(c, &u),
                apply_chain(c, &w),
            ) {
                (Ok(l), Ok(cu), Ok(cw)) => cu
                    .linear_combination(&a, &cw, &b)
                    .map(|r| r == l)
                    .unwrap_or(false),
                _ => false,
            };
            linear.record(ok, || {
                format!("{c} on {} and {}", field_to_json(&u), field_to_json(&w))
            });
        }

        for op in Operator::ALL {
            let arg = if op == Operator::Grad { &fs } else { &vs };
            let out = apply_chain(&Chain::single(op), arg).expect("sorts match");
            let din = max_degree(arg);
            let dout = max_degree(&out);
            // grad drops the degree by exactly one; curl and div may cancel
            // further.
            let ok = match (din, dout) {
                (_, None) => true,
                (Some(i), Some(o)) if op == Operator::Grad => o + 1 == i,
                (Some(i), Some(o)) => o < i,
                (None, Some(_)) => false,
            };
            degree.record(ok, || format!("{op} on {}", field_to_json(arg)));
        }
    }
    vec![
        div_curl.finish(),
        curl_grad.finish(),
        third.finish(),
        curl_curl.finish(),
        linear.finish(),
        degree.finish(),
    ]
}

fn max_degree(fv: &FieldValue) -> Option<u32> {
    fv.polys().iter().filter_map(Polynomial::total_degree).max()
}

fn associativity(params: VerifyParams) -> Vec<CheckResult> {
    let cfg = CorpusConfig {
        degree: params.degree,
        ..CorpusConfig::default()
    };
    let mut gen = generator(Suite::Associativity, params, cfg);

    let mut sig = Tally::new("grouping-signatures");
    for c in Chain::enumerate(3) {
        let left = Grouping::left(&c).signature();
        let right = Grouping::right(&c).signature();
        for arg in Sort::ALL {
            sig.record(left.apply_to(arg) == right.apply_to(arg), || {
                format!("{c} on {arg}")
            });
        }
    }

    let mut values = Tally::new("grouping-values");
    let meaningful: Vec<Chain> = Chain::enumerate(3)
        .filter(|c| chain_signature(c).is_meaningful())
        .collect();
    for _ in 0..params.trials {
        let f: FieldValue = gen.scalar().into();
        let v: FieldValue = gen.vector().into();
        for c in &meaningful {
            let arg = if c.innermost() == Operator::Grad {
                &f
            } else {
                &v
            };
            let left = apply_grouping(&Grouping::left(c), arg);
            let right = apply_grouping(&Grouping::right(c), arg);
            let ok = matches!((&left, &right), (Ok(l), Ok(r)) if l == r);
            values.record(ok, || format!("{c} on {}", field_to_json(arg)));
        }
    }
    vec![sig.finish(), values.finish()]
}

fn examples(params: VerifyParams) -> Vec<CheckResult> {
    let cfg = CorpusConfig {
        degree: params.degree,
        ..CorpusConfig::default()
    };
    let harmonic_cfg = CorpusConfig {
        degree: 3,
        coeff_bound: 5,
        max_terms: 8,
    };
    let mut gen = generator(Suite::Examples, params, cfg);
    let mut hgen = generator(
        Suite::Examples,
        VerifyParams {
            seed: params.seed ^ 0xFF,
            ..params
        },
        harmonic_cfg,
    );

    let mut third = Tally::new("harmonic-third-order-zero");
    let mut coord = Tally::new("coordinate-product-identity");
    let mut square = Tally::new("square-product-identity");
    let mut curl_curl = Tally::new("curl-curl-equals-grad-div");
    let mut coord_order = Tally::new("coordinate-product-order");
    let mut radial_order = Tally::new("radial-product-order");
    let mut strict = Tally::new("harmonic-strictness");

    for _ in 0..params.trials {
        let f = ScalarField(hgen.harmonic());
        let v = hgen.vector_harmonic();
        match third_order_on_harmonic(&f, &v) {
            Ok(report) => {
                for (c, zero) in &report.results {
                    third.record(*zero, || {
                        format!("{c} on {} / {}", json(f.clone()), json(v.clone()))
                    });
                }
            }
            Err(e) => third.record(false, || {
                format!("{e}: {} / {}", json(f.clone()), json(v.clone()))
            }),
        }

        let w = hgen.vector_harmonic();
        curl_curl.record(check_harmonic_curl_curl(&w).unwrap_or(false), || {
            json(w.clone())
        });

        let g = gen.scalar();
        for n in 1..=4 {
            coord.record(check_coordinate_product(&g, n), || {
                format!("n={n} f={}", json(g.clone()))
            });
            square.record(check_square_product(&g, n), || {
                format!("n={n} f={}", json(g.clone()))
            });
        }

        for n in 2..=3 {
            let base = hgen.polyharmonic(n - 1);
            let times_x = ScalarField(&Polynomial::var(Axis::X1) * &base.0);
            let times_r2 = ScalarField(&radius_squared() * &base.0);
            let in_order = |h: &ScalarField| {
                matches!(
                    collection_order(CollectionKind::Harmonic, &h.clone().into(), DEFAULT_MAX_ORDER),
                    Ok(OrderResult::Order(k)) if k <= n
                )
            };
            coord_order.record(in_order(&times_x), || {
                format!("n={n} f={}", json(base.clone()))
            });
            radial_order.record(in_order(&times_r2), || {
                format!("n={n} f={}", json(base.clone()))
            });
        }
    }

    let r2 = radius_squared();
    let witnesses = [
        (
            Polynomial::from_int_terms(&[(1, [2, 0, 0]), (-1, [0, 2, 0])]),
            1,
        ),
        (r2.clone(), 2),
        (r2.pow(2), 3),
    ];
    for (p, want) in witnesses {
        let got = collection_order(
            CollectionKind::Harmonic,
            &ScalarField(p.clone()).into(),
            DEFAULT_MAX_ORDER,
        );
        strict.record(got == Ok(OrderResult::Order(want)), || {
            format!("{p}: {got:?}")
        });
    }

    vec![
        third.finish(),
        coord.finish(),
        square.finish(),
        curl_curl.finish(),
        coord_order.finish(),
        radial_order.finish(),
        strict.finish(),
    ]
}

/// Step used when comparing finite differences to exact first-order
/// derivatives of cubic and quartic fields: near `ε^(1/3)` for `f64`,
/// balancing the `h²` truncation term against `ε/h` rounding.
pub const POLY_FD_STEP: f64 = 1.0 / 131_072.0;

fn oracle(params: VerifyParams) -> Vec<CheckResult> {
    let cfg = CorpusConfig {
        degree: params.degree.min(3),
        ..CorpusConfig::default()
    };
    let mut gen = generator(Suite::Oracle, params, cfg);
    let fd = match FdConfig::default().with_step(params.fd_step.unwrap_or(POLY_FD_STEP)) {
        Ok(fd) => fd,
        Err(e) => {
            let mut bad = Tally::new("first-order-agreement");
            bad.record(false, || e.to_string());
            return vec![bad.finish()];
        }
    };

    let mut first = Tally::new("first-order-agreement");
    let mut nested = Tally::new("second-order-cross-check");
    let second = chains(&["div grad", "curl curl", "grad div", "div curl", "curl grad"]);

    for _ in 0..params.trials.min(20) {
        let f: FieldValue = gen.scalar().into();
        let v: FieldValue = gen.vector().into();
        let points: Vec<[f64; 3]> = (0..10).map(|_| gen.point(2.0)).collect();
        for op in Operator::ALL {
            let arg = if op == Operator::Grad { &f } else { &v };
            let report = cross_check(&Chain::single(op), arg, &points, &fd);
            let ok = matches!(&report, Ok(r) if r.passed);
            first.record(ok, || format!("{op} on {}: {report:?}", field_to_json(arg)));
        }
        for c in &second {
            let arg = if c.innermost() == Operator::Grad {
                &f
            } else {
                &v
            };
            let report = cross_check(c, arg, &points, &FdConfig::default());
            let ok = matches!(&report, Ok(r) if r.passed);
            nested.record(ok, || format!("{c} on {}: {report:?}", field_to_json(arg)));
        }
    }

    let mut conv = Tally::new("quartic-convergence");
    let ratio = quartic_convergence_ratio();
    conv.record((25.0..=400.0).contains(&ratio), || {
        format!("error ratio {ratio}")
    });

    vec![first.finish(), nested.finish(), conv.finish()]
}

/// Error of the central difference of `x₁⁴` at `x₁ = 1` with `h = 10⁻³`
/// divided by the error with `h = 10⁻⁴`. Second-order convergence gives
/// about 100.
pub fn quartic_convergence_ratio() -> f64 {
    let f = SampledField::scalar(|p| p[0].powi(4));
    let err = |h: f64| {
        let cfg = FdConfig::default().with_step(h).expect("valid step");
        (fd_partial(&f, Axis::X1, [1.0, 0.0, 0.0], &cfg).expect("finite") - 4.0).abs()
    };
    err(1e-3) / err(1e-4)
}

/// Witness fields for the classifier oracle: the two fixed low-degree
/// fields, two fixed degree-6 fields so that nontrivial chains up to
/// length 5 have a nonzero image, and `random` scalar and vector fields of
/// degree `<= 3` with coefficients in `[-5, 5]`.
pub fn classifier_witnesses(seed: u64, random: usize) -> (Vec<FieldValue>, Vec<FieldValue>) {
    let p = Polynomial::from_int_terms;
    let mut scalars: Vec<FieldValue> = vec![
        ScalarField(p(&[(1, [2, 1, 0]), (1, [0, 0, 1])])).into(),
        ScalarField(radius_squared().pow(3)).into(),
    ];
    let mut vectors: Vec<FieldValue> = vec![
        VectorField::new(
            p(&[(1, [0, 1, 1])]),
            p(&[(1, [2, 0, 0])]),
            p(&[(1, [1, 1, 1])]),
        )
        .into(),
        VectorField::new(
            p(&[(1, [0, 6, 0]), (1, [6, 0, 0])]),
            p(&[(1, [0, 0, 6])]),
            p(&[(1, [6, 0, 0])]),
        )
        .into(),
    ];
    let mut gen = FieldGenerator::new(
        seed,
        CorpusConfig {
            degree: 3,
            coeff_bound: 5,
            max_terms: 8,
        },
    );
    for _ in 0..random {
        scalars.push(gen.scalar().into());
        vectors.push(gen.vector().into());
    }
    (scalars, vectors)
}

/// Agreement between the syntactic classification of `chain` and symbolic
/// evaluation over the witnesses. `None` for meaningless chains.
pub fn classifier_agrees(
    chain: &Chain,
    scalars: &[FieldValue],
    vectors: &[FieldValue],
) -> Option<bool> {
    let class = classify(chain);
    let ChainSignature::Meaningful { input, .. } = chain_signature(chain) else {
        return None;
    };
    let witnesses = if input == Sort::Scalar {
        scalars
    } else {
        vectors
    };
    let all_zero = witnesses
        .iter()
        .all(|w| apply_chain(chain, w).map(|r| r.is_zero()).unwrap_or(false));
    Some(match class {
        Classification::TrivialZero { .. } => all_zero,
        Classification::Nontrivial { .. } => !all_zero,
        Classification::Meaningless => false,
    })
}

/// Largest first-order deviation ratio `|fd − exact| / tol` seen at the
/// given points; values `<= 1` pass.
pub fn first_order_worst_ratio(
    op: Operator,
    field: &FieldValue,
    points: &[[f64; 3]],
    cfg: &FdConfig,
) -> f64 {
    let exact = apply_chain(&Chain::single(op), field).expect("sort matches");
    let sampled = SampledField::from_polynomial(field);
    points
        .iter()
        .map(|&pt| {
            let got = fd_first_order(op, &sampled, pt, cfg).expect("finite samples");
            let want = exact_sample(&exact, pt);
            got.distance(&want).expect("same sort") / cfg.tolerance(want.norm())
        })
        .fold(0.0, f64::max)
}

fn exact_sample(fv: &FieldValue, pt: [f64; 3]) -> Sample {
    use crate::field::{eval_at, PointValue};
    use crate::poly::Rational;
    let q = pt.map(|x| Rational::from_float(x).expect("finite point"));
    match eval_at(fv, &q) {
        PointValue::Scalar(c) => Sample::Scalar(c.to_f64().unwrap_or(f64::NAN)),
        PointValue::Vector(v) => Sample::Vector(v.map(|c| c.to_f64().unwrap_or(f64::NAN))),
    }
}
