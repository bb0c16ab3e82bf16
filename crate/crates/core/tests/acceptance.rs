//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any failed.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use nabla_core::classify::{census, classify, nontrivial_chain, Classification, NormalFormFamily};
use nabla_core::collections::{
    check_coordinate_product, check_harmonic_curl_curl, check_square_product, collection_order,
    third_order_on_harmonic, CollectionKind, OrderResult, DEFAULT_MAX_ORDER,
};
use nabla_core::corpus::{radius_squared, CorpusConfig, FieldGenerator};
use nabla_core::field::{apply_chain, apply_grouping, curl, div, grad, FieldValue, ScalarField};
use nabla_core::numeric::FdConfig;
use nabla_core::operator::{chain_signature, Chain, Grouping, Operator, Sort};
use nabla_core::parse::parse;
use nabla_core::poly::{Axis, Polynomial};
use nabla_core::verify::{
    classifier_agrees, classifier_witnesses, first_order_worst_ratio, quartic_convergence_ratio,
    POLY_FD_STEP,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    )
}

fn chain_set(exprs: &[&str]) -> BTreeSet<Chain> {
    exprs.iter().map(|e| parse(e).unwrap()).collect()
}

fn split_by_class(len: usize) -> (BTreeSet<Chain>, BTreeSet<Chain>) {
    let mut trivial = BTreeSet::new();
    let mut nontrivial = BTreeSet::new();
    for c in Chain::enumerate(len) {
        match classify(&c) {
            Classification::TrivialZero { .. } => {
                trivial.insert(c);
            }
            Classification::Nontrivial { .. } => {
                nontrivial.insert(c);
            }
            Classification::Meaningless => {}
        }
    }
    (trivial, nontrivial)
}

fn second_order_census() -> Outcome {
    let start = Instant::now();
    let c = census(2).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        c.meaningful() == 5,
        format!("meaningful {}", c.meaningful()),
    )?;
    let (trivial, nontrivial) = split_by_class(2);
    ensure(
        trivial == chain_set(&["div curl", "curl grad"]),
        format!("trivial {trivial:?}"),
    )?;
    ensure(
        nontrivial == chain_set(&["div grad", "curl curl", "grad div"]),
        format!("nontrivial {nontrivial:?}"),
    )?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("5 meaningful, 2 zero, 3 nontrivial in {elapsed:?}"))
}

fn third_order_census() -> Outcome {
    let start = Instant::now();
    let c = census(3).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        c.meaningful() == 8,
        format!("meaningful {}", c.meaningful()),
    )?;
    let (trivial, nontrivial) = split_by_class(3);
    ensure(
        nontrivial == chain_set(&["grad div grad", "curl curl curl", "div grad div"]),
        format!("nontrivial {nontrivial:?}"),
    )?;
    ensure(
        trivial
            == chain_set(&[
                "div curl curl",
                "div curl grad",
                "curl curl grad",
                "curl grad div",
                "grad div curl",
            ]),
        format!("trivial {trivial:?}"),
    )?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("8 meaningful, 5 zero, 3 nontrivial in {elapsed:?}"))
}

fn three_families_at_scale() -> Outcome {
    let start = Instant::now();
    for n in 1..=12 {
        let c = census(n).map_err(|e| e.to_string())?;
        ensure(
            c.nontrivial == 3,
            format!("length {n}: {} nontrivial", c.nontrivial),
        )?;
        let found: BTreeSet<Chain> = Chain::enumerate(n)
            .filter(|c| classify(c).is_nontrivial())
            .collect();
        let expected: BTreeSet<Chain> = NormalFormFamily::ALL
            .iter()
            .map(|&f| nontrivial_chain(f, n))
            .collect();
        ensure(found == expected, format!("length {n}: {found:?}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "3 nontrivial family words at every length 1..=12 in {elapsed:?}"
    ))
}

fn classifier_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let (scalars, vectors) = classifier_witnesses(2024, 20);
    let mut checked = 0;
    for n in 1..=5 {
        for c in Chain::enumerate(n) {
            if let Some(ok) = classifier_agrees(&c, &scalars, &vectors) {
                ensure(
                    ok,
                    format!(
                        "{c} classified {:?} disagrees with evaluation",
                        classify(&c)
                    ),
                )?;
                checked += 1;
            }
        }
    }
    ensure(checked == 50, format!("{checked} meaningful chains"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "{checked} meaningful chains agree over {} witnesses in {elapsed:?}",
        scalars.len() + vectors.len()
    ))
}

fn associativity() -> Outcome {
    let mut cases = 0;
    for c in Chain::enumerate(3) {
        let left = Grouping::left(&c).signature();
        let right = Grouping::right(&c).signature();
        for arg in Sort::ALL {
            ensure(
                left.apply_to(arg) == right.apply_to(arg),
                format!("{c} on {arg}"),
            )?;
            cases += 1;
        }
    }
    ensure(cases == 54, format!("{cases} cases"))?;
    let mut gen = FieldGenerator::new(5, CorpusConfig::default());
    let mut values = 0;
    for c in Chain::enumerate(3).filter(|c| chain_signature(c).is_meaningful()) {
        for _ in 0..10 {
            let arg: FieldValue = if c.innermost() == Operator::Grad {
                gen.scalar().into()
            } else {
                gen.vector().into()
            };
            let l = apply_grouping(&Grouping::left(&c), &arg).map_err(|e| e.to_string())?;
            let r = apply_grouping(&Grouping::right(&c), &arg).map_err(|e| e.to_string())?;
            ensure(l == r, format!("{c} differs on {arg}"))?;
            values += 1;
        }
    }
    Ok(format!(
        "54/54 signature cases, {values} value comparisons identical"
    ))
}

fn annihilations() -> Outcome {
    let start = Instant::now();
    let mut gen = FieldGenerator::new(
        6,
        CorpusConfig {
            degree: 4,
            coeff_bound: 9,
            max_terms: 8,
        },
    );
    let third: Vec<Chain> = [
        "div curl curl",
        "div curl grad",
        "curl curl grad",
        "curl grad div",
        "grad div curl",
    ]
    .iter()
    .map(|e| parse(e).unwrap())
    .collect();
    for _ in 0..100 {
        let f = gen.scalar();
        let v = gen.vector();
        ensure(div(&curl(&v)).is_zero(), format!("div curl nonzero on {v}"))?;
        ensure(
            curl(&grad(&f)).is_zero(),
            format!("curl grad nonzero on {f}"),
        )?;
        let (fs, vs): (FieldValue, FieldValue) = (f.into(), v.into());
        for c in &third {
            let arg = if c.innermost() == Operator::Grad {
                &fs
            } else {
                &vs
            };
            let out = apply_chain(c, arg).map_err(|e| e.to_string())?;
            ensure(out.is_zero(), format!("{c} nonzero on {arg}"))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "100 fields, 7 annihilations each, exact zero in {elapsed:?}"
    ))
}

fn curl_curl_is_grad_div() -> Outcome {
    let mut gen = FieldGenerator::new(
        7,
        CorpusConfig {
            degree: 3,
            coeff_bound: 5,
            max_terms: 8,
        },
    );
    for _ in 0..20 {
        let v = gen.vector_harmonic();
        ensure(
            check_harmonic_curl_curl(&v).map_err(|e| e.to_string())?,
            format!("curl curl != grad div on {v}"),
        )?;
    }
    Ok("20 vector-harmonic fields".into())
}

fn third_order_on_harmonic_fields() -> Outcome {
    let mut gen = FieldGenerator::new(
        8,
        CorpusConfig {
            degree: 3,
            coeff_bound: 5,
            max_terms: 8,
        },
    );
    for _ in 0..10 {
        let f = ScalarField(gen.harmonic());
        let v = gen.vector_harmonic();
        let report = third_order_on_harmonic(&f, &v).map_err(|e| e.to_string())?;
        ensure(report.results.len() == 8, "eight products")?;
        ensure(report.all_zero(), format!("{report:?}"))?;
    }
    Ok("8/8 third-order products vanish on 10 harmonic pairs".into())
}

fn examples_2_and_3() -> Outcome {
    let start = Instant::now();
    let mut gen = FieldGenerator::new(
        9,
        CorpusConfig {
            degree: 4,
            coeff_bound: 9,
            max_terms: 8,
        },
    );
    for _ in 0..20 {
        let f = gen.scalar();
        for n in 1..=4 {
            ensure(
                check_coordinate_product(&f, n),
                format!("coordinate product n={n} f={f}"),
            )?;
            // n = 1 is the base equation.
            ensure(
                check_square_product(&f, n),
                format!("square product n={n} f={f}"),
            )?;
        }
    }
    let mut hgen = FieldGenerator::new(
        10,
        CorpusConfig {
            degree: 3,
            coeff_bound: 5,
            max_terms: 8,
        },
    );
    let x1 = Polynomial::var(Axis::X1);
    let r2 = radius_squared();
    for n in 2..=3 {
        for _ in 0..20 {
            let f = hgen.polyharmonic(n - 1);
            let order = |p: Polynomial| {
                collection_order(
                    CollectionKind::Harmonic,
                    &ScalarField(p).into(),
                    DEFAULT_MAX_ORDER,
                )
            };
            ensure(
                order(f.0.clone()) == Ok(OrderResult::Order(n - 1)),
                format!("base order of {f}"),
            )?;
            for (label, product) in [("x1", &x1 * &f.0), ("r2", &r2 * &f.0)] {
                let got = order(product);
                ensure(
                    matches!(got, Ok(OrderResult::Order(k)) if k <= n),
                    format!("{label}*f not in H{n}: {got:?} for {f}"),
                )?;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "identities on 20 fields, n<=4; memberships for n in 2..=3 in {elapsed:?}"
    ))
}

fn strictness_witnesses() -> Outcome {
    let r2 = radius_squared();
    let cases = [
        (
            Polynomial::from_int_terms(&[(1, [2, 0, 0]), (-1, [0, 2, 0])]),
            1,
        ),
        (r2.clone(), 2),
        (r2.pow(2), 3),
    ];
    for (p, want) in cases {
        let got = collection_order(
            CollectionKind::Harmonic,
            &ScalarField(p.clone()).into(),
            DEFAULT_MAX_ORDER,
        );
        ensure(got == Ok(OrderResult::Order(want)), format!("{p}: {got:?}"))?;
    }
    Ok("orders 1, 2, 3".into())
}

fn fibonacci_counts() -> Outcome {
    let counts: Vec<u64> = (1..=8)
        .map(|n| census(n).map(|c| c.meaningful()).unwrap_or(0))
        .collect();
    ensure(
        counts == [3, 5, 8, 13, 21, 34, 55, 89],
        format!("{counts:?}"),
    )?;
    Ok(format!("{counts:?}"))
}

fn numeric_oracle() -> Outcome {
    let start = Instant::now();
    let mut gen = FieldGenerator::new(
        12,
        CorpusConfig {
            degree: 3,
            coeff_bound: 9,
            max_terms: 8,
        },
    );
    let cfg = FdConfig::default()
        .with_step(POLY_FD_STEP)
        .map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let f: FieldValue = gen.scalar().into();
        let v: FieldValue = gen.vector().into();
        let points: Vec<[f64; 3]> = (0..10).map(|_| gen.point(2.0)).collect();
        for op in Operator::ALL {
            let arg = if op == Operator::Grad { &f } else { &v };
            let ratio = first_order_worst_ratio(op, arg, &points, &cfg);
            ensure(
                ratio <= 1.0,
                format!("{op} on {arg}: deviation {ratio} x tolerance"),
            )?;
            worst = worst.max(ratio);
        }
    }
    let conv = quartic_convergence_ratio();
    ensure(
        (25.0..=400.0).contains(&conv),
        format!("convergence ratio {conv}"),
    )?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "worst deviation {worst:.3} x tolerance, h^2 ratio {conv:.1}, in {elapsed:?}"
    ))
}

fn nabla(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_nabla"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn cli_contract() -> Outcome {
    let expect_line = |args: &[&str], want: &str| -> Result<(), String> {
        let o = nabla(args);
        ensure(
            o.status.code() == Some(0),
            format!("{args:?} exit {:?}", o.status.code()),
        )?;
        ensure(
            stdout(&o).trim_end() == want,
            format!("{args:?} printed {:?}", stdout(&o)),
        )
    };
    expect_line(
        &["classify", "div curl"],
        "zero (scalar), annihilating pair at position 0: div curl",
    )?;
    expect_line(
        &["classify", "curl curl curl"],
        "nontrivial: curl-power, order 3, signature vector -> vector",
    )?;
    expect_line(&["classify", "grad grad"], "meaningless")?;

    let table = nabla(&["census", "--max", "3", "--json"]);
    ensure(table.status.code() == Some(0), "census exit")?;
    let rows: serde_json::Value =
        serde_json::from_slice(&table.stdout).map_err(|e| e.to_string())?;
    let want = serde_json::json!([
        {"length": 1, "total": 3, "meaningless": 0, "trivial": 0, "nontrivial": 3},
        {"length": 2, "total": 9, "meaningless": 4, "trivial": 2, "nontrivial": 3},
        {"length": 3, "total": 27, "meaningless": 19, "trivial": 5, "nontrivial": 3},
    ]);
    ensure(rows == want, format!("census rows {rows}"))?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let field = dir.path().join("x1.json");
    std::fs::write(
        &field,
        r#"{"kind":"scalar","terms":[{"c":"1","e":[1,0,0]}]}"#,
    )
    .map_err(|e| e.to_string())?;
    let field = field.to_str().unwrap();
    ensure(
        nabla(&["apply", "--chain", "grad", "--field", field])
            .status
            .code()
            == Some(0),
        "exit 0",
    )?;
    ensure(
        nabla(&["classify", "grad rot"]).status.code() == Some(1),
        "exit 1 on parse error",
    )?;
    ensure(
        nabla(&["apply", "--chain", "div", "--field", field])
            .status
            .code()
            == Some(1),
        "exit 1 on sort",
    )?;
    ensure(
        nabla(&["apply", "--chain", "grad grad", "--field", field])
            .status
            .code()
            == Some(2),
        "exit 2",
    )?;
    ensure(
        nabla(&[
            "verify",
            "--suite",
            "oracle",
            "--trials",
            "3",
            "--fd-step",
            "0.001",
        ])
        .status
        .code()
            == Some(3),
        "exit 3 on violated check",
    )?;

    let args = ["verify", "--suite", "identities", "--seed", "42"];
    let (a, b) = (nabla(&args), nabla(&args));
    ensure(a.status.code() == Some(0), "identities suite passes")?;
    ensure(
        a.stdout == b.stdout && !a.stdout.is_empty(),
        "verify output differs between runs",
    )?;
    Ok("classify strings, census rows, exit codes 0/1/2/3, deterministic verify".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 13] = [
        ("second-order census", second_order_census),
        ("third-order census", third_order_census),
        (
            "three nontrivial families up to length 12",
            three_families_at_scale,
        ),
        (
            "classifier agrees with symbolic evaluation",
            classifier_oracle_equivalence,
        ),
        ("associativity over 54 cases", associativity),
        ("annihilation identities", annihilations),
        (
            "curl curl = grad div on vector-harmonic fields",
            curl_curl_is_grad_div,
        ),
        (
            "third-order products vanish on harmonic fields",
            third_order_on_harmonic_fields,
        ),
        ("inductive Laplacian product identities", examples_2_and_3),
        ("polyharmonic strictness witnesses", strictness_witnesses),
        ("meaningful counts follow Fibonacci", fibonacci_counts),
        ("finite-difference oracle agreement", numeric_oracle),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
