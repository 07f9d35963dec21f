//! `modiff gen`

use num_bigint::BigInt;

use modiff::instances::{chain, idl_example, intro1, random_system, RandomParams};
use modiff::{render_system, ConstraintSystem, Modulus};

use crate::{CmdResult, Failure, GenArgs, GenKind};

/// Longest chain `gen` will print.
const MAX_CHAIN: u32 = 1_000_000;

pub fn run(args: &GenArgs) -> CmdResult {
    let default = match args.kind {
        GenKind::Intro1 => 16,
        GenKind::Intro2 | GenKind::Chain => 5,
        GenKind::IdlExample => 10,
        GenKind::Random => 12,
    };
    let n = args
        .modulus
        .clone()
        .unwrap_or_else(|| BigInt::from(default));
    let n = Modulus::new(n).map_err(|e| Failure::Input(e.to_string()))?;
    let sys: ConstraintSystem<BigInt> = match args.kind {
        GenKind::Intro1 => intro1(&n),
        GenKind::IdlExample => idl_example(&n),
        GenKind::Intro2 | GenKind::Chain => {
            if *n.get() > BigInt::from(MAX_CHAIN) {
                return Err(Failure::Input(format!(
                    "chain length is capped at N = {MAX_CHAIN}"
                )));
            }
            chain(&n)
        }
        GenKind::Random => {
            if args.m < 0 {
                return Err(Failure::Input("--m must be non-negative".into()));
            }
            if args.vars == 0 && args.cons > 0 {
                return Err(Failure::Input("--vars must be positive".into()));
            }
            let params = RandomParams {
                vars: args.vars,
                constraints: args.cons,
                m: args.m,
                modulus: n,
            };
            random_system(&params, args.seed)
        }
    };
    let text = render_system(&sys);
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}
