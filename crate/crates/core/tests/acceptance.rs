//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use modiff::idl::{
    certificate_is_valid, certificate_weight, model_satisfies, relax_to_idl, solve_idl, IdlOutcome,
};
use modiff::instances::{chain, idl_example, intro1, random_idl, random_system, RandomParams};
use modiff::mdl::{
    brute_force_sat, normalize_solution, small_model_bound, solve, SolveOutcome, DEFAULT_BUDGET,
};
use modiff::reductions::{coloring_to_witness, encode_3col, Graph, Variant};
use modiff::{BigInt, ConstraintSystem, Modulus, Scalar, System};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn within(limit: Duration, start: Instant) -> (bool, String) {
    let took = start.elapsed();
    (
        took < limit,
        format!("{:.3}s of {}s", took.as_secs_f64(), limit.as_secs()),
    )
}

fn integer_unsat<S: Scalar>(sys: &ConstraintSystem<S>) -> Option<S> {
    match solve_idl(&relax_to_idl(sys).ok()?).ok()? {
        IdlOutcome::Unsat(cert) if certificate_is_valid(&cert) => Some(certificate_weight(&cert)),
        _ => None,
    }
}

fn integer_sat<S: Scalar>(sys: &ConstraintSystem<S>) -> bool {
    let Ok(relaxed) = relax_to_idl(sys) else {
        return false;
    };
    matches!(solve_idl(&relaxed), Ok(IdlOutcome::Sat(m)) if model_satisfies(&relaxed, &m))
}

fn modular_sat<S: Scalar>(sys: &ConstraintSystem<S>) -> bool {
    solve(sys)
        .model()
        .is_some_and(|a| sys.check(a).unwrap().is_satisfied())
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let relaxed = relax_to_idl(&idl_example(&Modulus::new(10i64).unwrap())).unwrap();
    let result = solve_idl(&relaxed).unwrap();
    let (fast, time) = within(Duration::from_secs(1), start);
    match result {
        IdlOutcome::Unsat(cert) => {
            let w = certificate_weight(&cert);
            outcome(
                certificate_is_valid(&cert) && w == -1 && fast,
                format!(
                    "UNSAT, cycle of {} constraints, weight {w}, {time}",
                    cert.len()
                ),
            )
        }
        IdlOutcome::Sat(_) => outcome(false, "reported SAT"),
    }
}

fn gap_pair_a() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [4i64, 16] {
        let sys = intro1(&Modulus::new(n).unwrap());
        let (m, w) = (modular_sat(&sys), integer_unsat(&sys));
        ok &= m && w.is_some_and(|w| w < 0);
        notes.push(format!("N={n}: modular {}, integer cycle {:?}", sat(m), w));
    }
    let big: ConstraintSystem<BigInt> = intro1(&Modulus::new(BigInt::from(1u64) << 32).unwrap());
    let (m, w) = (modular_sat(&big), integer_unsat(&big));
    ok &= m && w.as_ref().is_some_and(|w| *w < BigInt::from(0));
    notes.push(format!(
        "N=2^32: modular {}, integer cycle {:?}",
        sat(m),
        w.map(|w| w.to_string())
    ));
    outcome(ok, notes.join("; "))
}

fn gap_pair_b() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [5i64, 8] {
        let sys = chain(&Modulus::new(n).unwrap());
        let (m, i) = (modular_sat(&sys), integer_sat(&sys));
        ok &= !m && i;
        notes.push(format!("N={n}: modular {}, integer {}", sat(m), sat(i)));
    }
    let (fast, time) = within(Duration::from_secs(5), start);
    outcome(ok && fast, format!("{}; {time}", notes.join("; ")))
}

fn sat(b: bool) -> &'static str {
    if b {
        "SAT"
    } else {
        "UNSAT"
    }
}

fn reduction(variant: Variant, moduli: [i64; 2]) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut wrong = Vec::new();
    for n in moduli {
        for (name, g) in common::corpus() {
            let (sys, _) = encode_3col(&g, &Modulus::new(n).unwrap(), variant).unwrap();
            if modular_sat(&sys) != common::is_three_colorable(&g) {
                wrong.push(format!("{name}@{n}"));
            }
            checked += 1;
        }
    }
    let (fast, time) = within(Duration::from_secs(60), start);
    outcome(
        wrong.is_empty() && fast,
        format!("{checked} encodings, disagreements {wrong:?}, {time}"),
    )
}

fn witnesses() -> Outcome {
    let mut graphs = common::corpus();
    graphs.push(("Petersen".into(), Graph::petersen()));
    let mut checked = 0;
    let mut failures = 0;
    for (variant, moduli) in [
        (Variant::NonStrict, [4i64, 16, 256]),
        (Variant::Strict, [9, 16, 256]),
    ] {
        for n in moduli {
            let md = Modulus::new(n).unwrap();
            for (_, g) in &graphs {
                let (sys, _) = encode_3col(g, &md, variant).unwrap();
                for col in common::proper_colorings(g) {
                    let good = coloring_to_witness(g, &col, &md, variant)
                        .is_ok_and(|a| sys.check(&a).unwrap().is_satisfied());
                    failures += usize::from(!good);
                    checked += 1;
                }
            }
        }
    }
    outcome(
        failures == 0,
        format!("{checked} witnesses, {failures} failures"),
    )
}

/// 500 seeded systems with p <= 3, N <= 12, m <= 2.
fn random_corpus() -> Vec<System> {
    (0..500u64)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let params = RandomParams {
                vars: rng.random_range(1..=3),
                constraints: rng.random_range(1..=6),
                m: rng.random_range(0..=2),
                modulus: Modulus::new(rng.random_range(2..=12)).unwrap(),
            };
            random_system(&params, seed)
        })
        .collect()
}

fn oracle_equivalence(corpus: &[System]) -> Outcome {
    let start = Instant::now();
    let mut sats = 0;
    let mut wrong = Vec::new();
    for (i, sys) in corpus.iter().enumerate() {
        let oracle = brute_force_sat(sys, DEFAULT_BUDGET).unwrap().is_sat();
        sats += usize::from(oracle);
        if modular_sat(sys) != oracle {
            wrong.push(i);
        }
    }
    let (fast, time) = within(Duration::from_secs(120), start);
    outcome(
        wrong.is_empty() && fast,
        format!(
            "{} systems ({sats} SAT), disagreements {wrong:?}, {time}",
            corpus.len()
        ),
    )
}

fn normalizer_bound(corpus: &[System]) -> Outcome {
    let mut checked = 0;
    let mut failures = 0;
    for sys in corpus {
        let Ok(SolveOutcome::Sat(a, _)) = brute_force_sat(sys, DEFAULT_BUDGET) else {
            continue;
        };
        let candidates = small_model_bound(sys).candidates;
        let good = normalize_solution(sys, &a).is_ok_and(|out| {
            sys.check(&out).unwrap().is_satisfied()
                && out.iter().all(|(_, v)| candidates.contains(v))
        });
        failures += usize::from(!good);
        checked += 1;
    }
    outcome(
        failures == 0,
        format!("{checked} SAT systems normalized, {failures} failures"),
    )
}

fn idl_soundness() -> Outcome {
    let (mut sats, mut unsats, mut failures) = (0, 0, 0);
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
        let vars = rng.random_range(1..=6);
        let cons = rng.random_range(0..=12);
        let sys = random_idl(vars, cons, 5, seed);
        match solve_idl(&sys).unwrap() {
            IdlOutcome::Sat(model) => {
                sats += 1;
                failures += usize::from(!model_satisfies(&sys, &model));
            }
            IdlOutcome::Unsat(cert) => {
                unsats += 1;
                failures += usize::from(!certificate_is_valid(&cert));
            }
        }
    }
    outcome(
        failures == 0,
        format!("{sats} SAT, {unsats} UNSAT, {failures} failures"),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let corpus = random_corpus();
    let criteria: Vec<Criterion> = vec![
        (
            "integer worked example has a weight -1 cycle",
            Box::new(worked_example),
        ),
        (
            "0 <= x, x+1 <= 0: modular SAT, integer UNSAT",
            Box::new(gap_pair_a),
        ),
        (
            "chain x0 < ... < xN: modular UNSAT, integer SAT",
            Box::new(gap_pair_b),
        ),
        (
            "nonstrict encoding matches 3-colorability",
            Box::new(|| reduction(Variant::NonStrict, [4, 16])),
        ),
        (
            "strict encoding matches 3-colorability",
            Box::new(|| reduction(Variant::Strict, [9, 16])),
        ),
        ("coloring witnesses satisfy encodings", Box::new(witnesses)),
        (
            "bounded search agrees with brute force",
            Box::new(|| oracle_equivalence(&corpus)),
        ),
        (
            "normalized models stay inside the bound",
            Box::new(|| normalizer_bound(&corpus)),
        ),
        (
            "integer models and certificates check out",
            Box::new(idl_soundness),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = run();
        println!(
            "criterion {}: {} | {name} | {}",
            i + 1,
            if result.ok { "PASS" } else { "FAIL" },
            result.detail
        );
        failed += usize::from(!result.ok);
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
