//! Graph 3-colorability encoded as modular difference systems, in a
//! nonstrict (`<=`) and a strict (`<`) flavour, with decoding, witness
//! construction, DIMACS graph I/O and a sidecar format for the variable map.

mod encode;
mod graph;
mod meta;

pub use encode::{
    coloring_to_witness, decode_coloring, edge_var_names, encode_3col, encode_3col_nonstrict,
    encode_3col_strict, vertex_var_name, EncodingMeta, ReductionError, Variant,
};
pub use graph::{
    parse_dimacs_graph, render_dimacs_graph, verify_coloring, Coloring, DimacsError, Graph,
    GraphError,
};
pub use meta::{parse_meta, render_meta, MetaError};
