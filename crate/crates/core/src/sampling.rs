//! Seeded random polarized metric graphs for property tests and checks.

use rand::Rng;

use crate::graph::PolarizedMetricGraph;
use crate::rational::{self, Rational};

/// A random positive rational `n/d` with `n ∈ [1, 30]`, `d ∈ [1, 7]`.
pub fn random_length<R: Rng>(rng: &mut R) -> Rational {
    rational::ratio(rng.gen_range(1..=30), rng.gen_range(1..=7))
}

fn assemble<R: Rng>(rng: &mut R, q: &[u32], ends: &[(usize, usize)]) -> PolarizedMetricGraph {
    let vs = q.iter().enumerate().map(|(i, &q)| (format!("v{i}"), q));
    let es = ends
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (format!("e{i}"), format!("v{a}"), format!("v{b}"), random_length(rng)))
        .collect::<Vec<_>>();
    PolarizedMetricGraph::new(vs, es).expect("well-formed random graph")
}

/// Random tree on `n` vertices followed by `extra` random edges (loops and
/// parallel edges allowed).
fn random_edges<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Vec<(usize, usize)> {
    let mut ends: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for _ in 0..extra {
        ends.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    ends
}

fn spread<R: Rng>(rng: &mut R, n: usize, total: u32) -> Vec<u32> {
    let mut q = vec![0; n];
    for _ in 0..total {
        q[rng.gen_range(0..n)] += 1;
    }
    q
}

/// A connected polarized metric graph of genus `h`, not necessarily stable.
pub fn random_polarized_graph<R: Rng>(rng: &mut R, h: u32) -> PolarizedMetricGraph {
    assert!(h >= 1, "genus must be positive");
    let n = rng.gen_range(1..=4);
    let b1 = rng.gen_range(0..=h);
    let mut ends = random_edges(rng, n, b1 as usize);
    // occasional pendant q = 0 vertex, a valence-1 point of the metric graph
    if n > 1 && rng.gen_bool(0.2) {
        ends.push((rng.gen_range(0..n), n));
        let mut q = spread(rng, n, h - b1);
        q.push(0);
        return assemble(rng, &q, &ends);
    }
    let q = spread(rng, n, h - b1);
    assemble(rng, &q, &ends)
}

/// A stable polarized metric graph of genus `h ≥ 2`: every `q = 0` vertex
/// has valence at least three.
pub fn random_stable_graph<R: Rng>(rng: &mut R, h: u32) -> PolarizedMetricGraph {
    assert!(h >= 2, "stable graphs need genus at least two");
    loop {
        let n = rng.gen_range(1..=(2 * h as usize - 2));
        let b1 = rng.gen_range(0..=h);
        let ends = random_edges(rng, n, b1 as usize);
        let q = spread(rng, n, h - b1);
        let g = assemble(rng, &q, &ends);
        if g.validate().map(|r| r.stable).unwrap_or(false) {
            return g;
        }
    }
}

/// A random rational point strictly inside a random edge of `g`.
pub fn random_interior_point<R: Rng>(rng: &mut R, g: &PolarizedMetricGraph) -> crate::GraphPoint {
    let e = &g.edges()[rng.gen_range(0..g.edges().len())];
    let d: i64 = rng.gen_range(2..=29);
    let k: i64 = rng.gen_range(1..d);
    crate::GraphPoint::interior(&e.id, &e.length * rational::ratio(k, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_graphs_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for h in 1..=5 {
            for _ in 0..20 {
                let g = random_polarized_graph(&mut rng, h);
                assert_eq!(g.genus().unwrap().1, h as u64);
                g.require_valid().unwrap();
            }
        }
        for h in 2..=4 {
            for _ in 0..20 {
                let g = random_stable_graph(&mut rng, h);
                let rep = g.validate().unwrap();
                assert!(rep.stable && rep.h == h as u64);
            }
        }
    }
}
