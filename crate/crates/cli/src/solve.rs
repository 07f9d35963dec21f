//! `modiff solve`

use std::time::Instant;

use num_bigint::BigInt;

use modiff::idl::{
    certificate_is_valid, certificate_weight, model_satisfies, relax_to_idl, solve_idl, IdlOutcome,
};
use modiff::mdl::{brute_force_sat, normalize_with_trace, small_model_bound, solve, SolveOutcome};
use modiff::{parse_system, Assignment, ConstraintSystem, VarId};

use crate::model::render_model;
use crate::{read_file, CmdResult, Failure, SolveArgs, EXIT_SAT, EXIT_UNSAT};

type Sys = ConstraintSystem<BigInt>;

pub fn run(args: &SolveArgs) -> CmdResult {
    let text = read_file(&args.file)?;
    let sys: Sys =
        parse_system(&text).map_err(|e| Failure::Input(format!("{}: {e}", args.file.display())))?;
    let start = Instant::now();
    let mut out = String::new();
    let code = if args.relax {
        relaxed(&sys, &mut out)?
    } else {
        modular(&sys, args, &mut out)?
    };
    print!("{out}");
    if args.timing {
        eprintln!("time: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(code)
}

fn header(sys: &Sys, semantics: &str, solver: &str, out: &mut String) {
    out.push_str(&format!("semantics: {semantics}\n"));
    out.push_str(&format!("solver: {solver}\n"));
    out.push_str(&format!("modulus: {}\n", sys.modulus()));
    out.push_str(&format!("variables: {}\n", sys.var_count()));
    out.push_str(&format!("constraints: {}\n", sys.constraints().len()));
}

fn verified(sys: &Sys, a: &Assignment<BigInt>, what: &str) -> Result<(), Failure> {
    match sys.check(a) {
        Ok(c) if c.is_satisfied() => Ok(()),
        _ => Err(Failure::Internal(format!(
            "{what} model does not satisfy the system"
        ))),
    }
}

fn modular(sys: &Sys, args: &SolveArgs, out: &mut String) -> CmdResult {
    let solver = if args.oracle {
        "exhaustive"
    } else {
        "bounded search"
    };
    header(sys, "modular", solver, out);
    let outcome = if args.oracle {
        brute_force_sat(sys, args.budget).map_err(|e| Failure::Input(e.to_string()))?
    } else {
        solve(sys)
    };
    match outcome {
        SolveOutcome::Sat(a, stats) => {
            verified(sys, &a, "solver")?;
            let shown = if args.normalize {
                let (packed, trace) = normalize_with_trace(sys, &a)
                    .map_err(|e| Failure::Internal(format!("normalization failed: {e}")))?;
                verified(sys, &packed, "normalized")?;
                let candidates = small_model_bound(sys).candidates;
                if !packed.iter().all(|(_, v)| candidates.contains(v)) {
                    return Err(Failure::Internal(
                        "normalized model leaves the small-model range".into(),
                    ));
                }
                (packed, Some(trace.len()))
            } else {
                (a, None)
            };
            out.push_str("verdict: SAT\n");
            out.push_str(&render_model(sys.symbols(), &shown.0));
            if let Some(shifts) = shown.1 {
                out.push_str(&format!("normalized: {shifts} shifts\n"));
            }
            stat_lines(args.oracle, &stats, out);
            Ok(EXIT_SAT)
        }
        SolveOutcome::Unsat(stats) => {
            out.push_str("verdict: UNSAT\n");
            stat_lines(args.oracle, &stats, out);
            Ok(EXIT_UNSAT)
        }
    }
}

fn stat_lines(oracle: bool, stats: &modiff::mdl::SearchStats<BigInt>, out: &mut String) {
    if oracle {
        out.push_str(&format!("assignments: {}\n", stats.nodes));
    } else {
        out.push_str(&format!("nodes: {}\n", stats.nodes));
        if let Some(b) = &stats.bound {
            out.push_str(&format!("bound: {b}\n"));
        }
        out.push_str(&format!("candidates: {}\n", stats.domain_size));
    }
}

fn relaxed(sys: &Sys, out: &mut String) -> CmdResult {
    header(sys, "integer (no wrap-around)", "floyd-warshall", out);
    let idl = relax_to_idl(sys).map_err(|e| Failure::Internal(e.to_string()))?;
    let code = match solve_idl(&idl).map_err(|e| Failure::Internal(e.to_string()))? {
        IdlOutcome::Sat(values) => {
            if !model_satisfies(&idl, &values) {
                return Err(Failure::Internal(
                    "integer model violates the relaxation".into(),
                ));
            }
            // report values relative to the zero variable
            let base = idl
                .zero()
                .map_or_else(|| BigInt::from(0), |z| values[z.index()].clone());
            let mut a = Assignment::new();
            for (i, v) in values.iter().take(sys.var_count()).enumerate() {
                a.set(VarId(i), v.clone() - base.clone());
            }
            out.push_str("verdict: SAT\n");
            out.push_str(&render_model(sys.symbols(), &a));
            EXIT_SAT
        }
        IdlOutcome::Unsat(cert) => {
            if !certificate_is_valid(&cert) {
                return Err(Failure::Internal(
                    "certificate is not a negative cycle".into(),
                ));
            }
            out.push_str("verdict: UNSAT\n");
            for c in &cert {
                let origin = c
                    .origin
                    .and_then(|i| sys.constraints().get(i))
                    .ok_or_else(|| {
                        Failure::Internal("certificate cites an unknown constraint".into())
                    })?;
                out.push_str(&format!("core: {}\n", sys.display_constraint(origin)));
            }
            out.push_str(&format!("cycle-weight: {}\n", certificate_weight(&cert)));
            EXIT_UNSAT
        }
    };
    let modular = solve(sys);
    if let Some(a) = modular.model() {
        verified(sys, a, "solver")?;
    }
    let verdict = if modular.is_sat() { "SAT" } else { "UNSAT" };
    out.push_str(&format!("modular-verdict: {verdict}\n"));
    Ok(code)
}
