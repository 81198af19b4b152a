//! The checks behind `verify-all`.

use std::time::Instant;

use powersum_core::dissect::{
    check_certificate, full_theorem_report, generate, leftover_per_rectangle, mutate, Construction, Mutation,
};
use powersum_core::figurate::{excess_layer_count, IdentityName, IdentityParams};
use powersum_core::pyramid::{build_pyramid, main_sections, secondary_sections, sizes};
use powersum_core::render::{emit_figure, FigureName, FigureSpec, Format};
use powersum_core::{bernoulli, evaluate_identity, faulhaber, strip_root, QuadExt, Rat};
use serde::Serialize;

use crate::Failure;

#[derive(Serialize)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
    #[serde(skip)]
    pub exit_code: u8,
}

type CheckResult = Result<String, String>;

struct Check {
    name: String,
    exit_code: u8,
    run: Box<dyn Fn() -> CheckResult + Send + Sync>,
}

fn check(name: impl Into<String>, exit_code: u8, run: impl Fn() -> CheckResult + Send + Sync + 'static) -> Check {
    Check { name: name.into(), exit_code, run: Box::new(run) }
}

fn r(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

fn bernoulli_table() -> CheckResult {
    let expected = [
        r(1, 1),
        r(1, 2),
        r(1, 6),
        r(0, 1),
        r(-1, 30),
        r(0, 1),
        r(1, 42),
        r(0, 1),
        r(-1, 30),
        r(0, 1),
        r(5, 66),
        r(0, 1),
        r(-691, 2730),
        r(0, 1),
        r(7, 6),
        r(0, 1),
    ];
    for (m, want) in expected.iter().enumerate() {
        let got = bernoulli(m);
        if &got != want {
            return Err(format!("B_{m} = {got}, expected {want}"));
        }
    }
    Ok(String::from("B_0..B_15 match"))
}

fn boast() -> CheckResult {
    let got = faulhaber(10, 1000);
    let want = "91409924241424243424241924242500";
    if got.to_string() == want {
        Ok(format!("S_10(1000) = {want}"))
    } else {
        Err(format!("S_10(1000) = {got}, expected {want}"))
    }
}

fn faulhaber_oracle(max_n: u64) -> CheckResult {
    for p in 0..=8u32 {
        let mut sum = Rat::from_integer(0.into());
        for n in 1..=max_n {
            sum += Rat::from_integer(num_pow(n, p));
            let got = faulhaber(p, n);
            if got != sum {
                return Err(format!("faulhaber({p}, {n}) = {got}, brute force {sum}"));
            }
        }
    }
    Ok(format!("p <= 8, n <= {max_n}"))
}

fn num_pow(n: u64, p: u32) -> powersum_core::exact::BigInt {
    powersum_core::exact::BigInt::from(n).pow(p)
}

fn registry(max_n: u64) -> CheckResult {
    let mut count = 0u64;
    for name in IdentityName::REGISTRY {
        for n in 1..=max_n {
            let ms: Vec<Option<u64>> = if name.needs_m() { (1..=n).map(Some).collect() } else { vec![None] };
            let ps: Vec<Option<u64>> = if name.needs_p() { (0..=4).map(Some).collect() } else { vec![None] };
            for m in &ms {
                for p in &ps {
                    let params = IdentityParams { n: Some(n), m: *m, p: *p, d: None };
                    let report = evaluate_identity(name, &params).map_err(|e| e.to_string())?;
                    if !report.holds() {
                        return Err(report.to_string());
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} instances, n <= {max_n}"))
}

fn sections(max_n: u32) -> CheckResult {
    let top = max_n.min(12);
    for d in 3..=5u32 {
        for n in 1..=top {
            let p = build_pyramid(d, n).map_err(|e| e.to_string())?;
            let main = sizes(&main_sections(&p).map_err(|e| e.to_string())?);
            if main.iter().enumerate().any(|(i, &s)| s != (i + 1).pow(d - 1)) {
                return Err(format!("main section sizes of P_{d}({n}): {main:?}"));
            }
            for axis in 2..=d {
                let sec = sizes(&secondary_sections(&p, axis).map_err(|e| e.to_string())?);
                if sec.iter().sum::<usize>() != p.len() {
                    return Err(format!("secondary sections of P_{d}({n}) along {axis} miss cells"));
                }
            }
        }
    }
    Ok(format!("d = 3..5, n <= {top}"))
}

fn certificates(c: Construction, max_n: u32) -> CheckResult {
    let top = max_n.min(c.max_n());
    for n in 1..=top {
        let cert = generate(c, n).map_err(|e| e.to_string())?;
        let report = check_certificate(&cert).map_err(|f| format!("n={n}: {f}"))?;
        let ni = i64::from(n);
        let expected = match c {
            Construction::GaussRect => QuadExt::from_int(ni * (ni + 1)),
            Construction::ThreePyr2d => QuadExt::from_int(ni * (ni + 1) * (2 * ni + 1) / 2),
            _ => QuadExt::from_int(ni * ni * (ni + 1) * (ni + 1)),
        };
        if report.target_area != expected {
            return Err(format!("n={n}: total {} != {expected}", report.target_area));
        }
    }
    Ok(format!("n <= {top}"))
}

fn pipeline(max_n: u32) -> CheckResult {
    let top = max_n.min(Construction::FivePyrLayers.max_n());
    for n in 1..=top {
        let report = full_theorem_report(n).map_err(|e| format!("n={n}: {e}"))?;
        if !report.holds() {
            return Err(report.to_string());
        }
    }
    Ok(format!("five pyramids -> reshape -> scissor -> top layer, n <= {top}"))
}

const MUTATIONS: [Mutation; 6] = [
    Mutation::Translate(0),
    Mutation::Translate(1),
    Mutation::Translate(2),
    Mutation::Translate(3),
    Mutation::QuarterTurn,
    Mutation::Reflect,
];

fn mutations() -> CheckResult {
    for c in Construction::ALL {
        let cert = generate(c, 2).map_err(|e| e.to_string())?;
        let len = cert.placements.len();
        for i in 0..100usize {
            let index = (i * 7919 + 13) % len;
            let m = MUTATIONS[i % MUTATIONS.len()];
            if check_certificate(&mutate(&cert, index, m)).is_ok() {
                return Err(format!("{c}: {m:?} of {} went unnoticed", cert.placements[index].piece_id));
            }
        }
    }
    Ok(String::from("100 mutations per construction, all rejected"))
}

fn quadratic_field() -> CheckResult {
    let x = strip_root();
    let third = QuadExt::from(r(1, 3));
    if &x * &x + &x - &third != QuadExt::zero() {
        return Err(String::from("x^2 + x - 1/3 != 0"));
    }
    for n in 1..=100i64 {
        let lhs = (QuadExt::from_int(n) - &x) * (QuadExt::from_int(n + 1) + &x);
        let rhs = QuadExt::from_int(n * n + n) - &third;
        if lhs != rhs {
            return Err(format!("n={n}: {lhs} != {rhs}"));
        }
    }
    if leftover_per_rectangle() != third {
        return Err(format!("leftover {} != 1/3", leftover_per_rectangle()));
    }
    Ok(String::from("x^2 + x = 1/3, (n-x)(n+1+x) = n^2+n-1/3 for n <= 100"))
}

fn final_assembly(max_n: u64) -> CheckResult {
    let mut s4 = Rat::from_integer(0.into());
    for n in 1..=max_n {
        s4 += Rat::from_integer(num_pow(n, 4));
        let nr = Rat::from_integer(n.into());
        let rhs = &nr * (&nr + r(1, 1)) * (&nr + r(1, 2)) * (&nr * &nr + &nr - r(1, 3));
        if &s4 * r(5, 1) != rhs {
            return Err(format!("n={n}: 5 S_4 = {} != {rhs}", &s4 * r(5, 1)));
        }
        let excess = Rat::from_integer(excess_layer_count(n));
        let nn = &nr * &nr * (&nr + r(1, 1)) * (&nr + r(1, 1));
        if &s4 * r(5, 1) != &nr * &nn + excess {
            return Err(format!("n={n}: layer count fails"));
        }
    }
    Ok(format!("5 S_4(n) = n(n+1)(n+1/2)(n^2+n-1/3), n <= {max_n}"))
}

fn figures() -> CheckResult {
    let specs = [
        (FigureName::Gauss, 4, Format::Svg),
        (FigureName::MainSections, 4, Format::Tikz),
        (FigureName::NicomachusGridDiy, 3, Format::Svg),
        (FigureName::Step3Scissor, 2, Format::Svg),
        (FigureName::TwoCopies, 3, Format::Svg),
    ];
    for (figure, n, format) in specs {
        let spec = FigureSpec::new(figure, n, format);
        let a = emit_figure(&spec).map_err(|e| e.to_string())?;
        let b = emit_figure(&spec).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{figure} n={n} differs between runs"));
        }
    }
    Ok(String::from("5 figures byte-identical across runs"))
}

fn suite(max_n: u32) -> Vec<Check> {
    let n64 = u64::from(max_n);
    let mut checks = vec![
        check("bernoulli-table", 1, bernoulli_table),
        check("bernoulli-boast", 1, boast),
        check("faulhaber-oracle", 1, move || faulhaber_oracle(n64)),
        check("identity-registry", 1, move || registry(n64)),
        check("sections", 1, move || sections(max_n)),
    ];
    for c in [Construction::GaussRect, Construction::ThreePyr2d, Construction::Nicomachus4d2d] {
        checks.push(check(format!("certificate {c}"), 2, move || certificates(c, max_n)));
    }
    checks.push(check("pipeline", 2, move || pipeline(max_n)));
    checks.push(check("mutations", 2, mutations));
    checks.push(check("quadratic-field", 1, quadratic_field));
    checks.push(check("final-assembly", 1, move || final_assembly(n64)));
    checks.push(check("figures", 1, figures));
    checks
}

/// Runs every check on its own thread; results come back in suite order.
pub fn run_all(max_n: u32) -> Vec<Outcome> {
    let checks = suite(max_n);
    std::thread::scope(|scope| {
        let handles: Vec<_> = checks
            .iter()
            .map(|c| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let result = (c.run)();
                    (result, start.elapsed().as_millis())
                })
            })
            .collect();
        checks
            .iter()
            .zip(handles)
            .map(|(c, h)| {
                let (result, millis) = h.join().unwrap_or_else(|_| (Err(String::from("panicked")), 0));
                let (passed, detail) = match result {
                    Ok(d) => (true, d),
                    Err(d) => (false, d),
                };
                Outcome { name: c.name.clone(), passed, detail, millis, exit_code: c.exit_code }
            })
            .collect()
    })
}

pub fn exit_failure(outcomes: &[Outcome]) -> Option<Failure> {
    outcomes.iter().find(|o| !o.passed).map(|o| {
        let msg = format!("{} failed: {}", o.name, o.detail);
        if o.exit_code == 2 {
            Failure::Cover(msg)
        } else {
            Failure::Mismatch(msg)
        }
    })
}
