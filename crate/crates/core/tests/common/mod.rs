//! Oracles and corpora shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use modiff::idl::IdlSystem;
use modiff::reductions::{verify_coloring, Coloring, Graph};

/// Every simple graph on `n` vertices, one per isomorphism class.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| (v + 1..n).map(move |w| (v, w)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, e)| *e)
            .collect();
        let canon = perms
            .iter()
            .map(|p| {
                let mut relabelled: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(v, w)| (p[v].min(p[w]), p[v].max(p[w])))
                    .collect();
                relabelled.sort();
                relabelled
            })
            .min()
            .expect("at least the identity");
        if seen.insert(canon) {
            out.push(Graph::from_edges(n, &edges).expect("simple graph"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All graphs on one to four vertices up to isomorphism, then `C5`.
/// `K4` and `K3` are among the former.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for (i, g) in graphs_up_to_iso(n).into_iter().enumerate() {
            out.push((format!("n{n}#{i}"), g));
        }
    }
    out.push(("C5".into(), Graph::cycle(5)));
    out
}

/// Proper 3-colorings by trying all `3^n` color vectors.
pub fn proper_colorings(g: &Graph) -> Vec<Coloring> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for code in 0..3u64.pow(n as u32) {
        let colors = (0..n)
            .map(|i| ((code / 3u64.pow(i as u32)) % 3) as u8)
            .collect();
        let col = Coloring::new(colors).expect("colors below 3");
        if verify_coloring(g, &col) {
            out.push(col);
        }
    }
    out
}

pub fn is_three_colorable(g: &Graph) -> bool {
    !proper_colorings(g).is_empty()
}

/// Integer satisfiability by enumeration. With `x0` pinned to 0, a
/// satisfiable system has a solution with every value in `[-W, W]` where `W`
/// is the sum of the absolute bounds.
pub fn idl_window_sat(sys: &IdlSystem<i64>) -> bool {
    let p = sys.var_count();
    if p == 0 {
        return true;
    }
    let w: i64 = sys.constraints().iter().map(|c| c.k.abs()).sum();
    let mut values = vec![-w; p];
    values[0] = 0;
    loop {
        if sys.constraints().iter().all(|c| c.holds(&values)) {
            return true;
        }
        let mut i = p;
        loop {
            i -= 1;
            if i == 0 {
                return false;
            }
            if values[i] < w {
                values[i] += 1;
                break;
            }
            values[i] = -w;
        }
    }
}
