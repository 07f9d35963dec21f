//! `modiff reduce` and `modiff decode`

use std::path::PathBuf;

use num_bigint::BigInt;

use modiff::reductions::{
    decode_coloring, encode_3col, parse_dimacs_graph, parse_meta, render_meta, verify_coloring,
};
use modiff::{render_system, Assignment, ConstraintSystem, Modulus, SystemCheck};

use crate::model::parse_model;
use crate::{read_file, CmdResult, DecodeArgs, Failure, ReduceArgs};

fn with_extension(prefix: &std::path::Path, ext: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(".");
    name.push(ext);
    PathBuf::from(name)
}

fn write(path: &std::path::Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

pub fn run_reduce(args: &ReduceArgs) -> CmdResult {
    let text = read_file(&args.graph)?;
    let g = parse_dimacs_graph(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", args.graph.display())))?;
    let n = Modulus::new(args.modulus.clone()).map_err(|e| Failure::Input(e.to_string()))?;
    let (sys, meta) =
        encode_3col(&g, &n, args.variant.into()).map_err(|e| Failure::Input(e.to_string()))?;
    let (mdl, side) = (
        with_extension(&args.out, "mdl"),
        with_extension(&args.out, "meta"),
    );
    write(&mdl, &render_system(&sys))?;
    write(&side, &render_meta(&meta, sys.symbols()))?;
    println!("variant: {}", meta.variant);
    println!("modulus: {}", meta.modulus);
    println!("vertices: {}", g.vertex_count());
    println!("edges: {}", g.edge_count());
    println!("variables: {}", sys.var_count());
    println!("constraints: {}", sys.constraints().len());
    println!("system: {}", mdl.display());
    println!("meta: {}", side.display());
    Ok(0)
}

pub fn run_decode(args: &DecodeArgs) -> CmdResult {
    let side = read_file(&args.meta)?;
    let (sys, meta): (ConstraintSystem<BigInt>, _) =
        parse_meta(&side).map_err(|e| Failure::Input(format!("{}: {e}", args.meta.display())))?;
    let values = parse_model(&read_file(&args.model)?)?;
    let mut a = Assignment::new();
    for (name, value) in values {
        let id = sys.symbols().lookup(&name).ok_or_else(|| {
            Failure::Input(format!(
                "{}: `{name}` is not a variable of the encoding",
                args.model.display()
            ))
        })?;
        a.set(id, value);
    }
    match sys.check(&a) {
        Ok(SystemCheck::Satisfied) => {}
        Ok(SystemCheck::Violated(i)) => {
            return Err(Failure::Internal(format!(
                "model violates `{}`",
                sys.display_constraint(&sys.constraints()[i])
            )))
        }
        Err(e) => return Err(Failure::Internal(format!("model is incomplete: {e}"))),
    }
    let col = decode_coloring(&meta, &a).map_err(|e| Failure::Internal(e.to_string()))?;
    if !verify_coloring(&meta.graph(), &col) {
        return Err(Failure::Internal("decoded coloring is not proper".into()));
    }
    for (v, c) in col.colors().iter().enumerate() {
        println!("color {v} {c}");
    }
    Ok(0)
}
