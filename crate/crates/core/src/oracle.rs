//! Approximate computations that certify the exact engine.
//!
//! * [`quadrature_phi`] / [`quadrature_epsilon`] integrate the diagonal
//!   `g_μ(x, x)` with the midpoint rule from pointwise Green's function
//!   values, instead of integrating the edge polynomials.
//! * [`DiscreteGreen`] builds `g_μ` in floating point from an equal-length
//!   subdivision: resistances from a Cholesky factorization of the grounded
//!   Laplacian and the measure integrals by the trapezoid rule.
//! * [`laplacian_probe`] measures second differences of `y ↦ g_μ(x, y)`.
//! * [`subdivision_invariance_check`] refines the model at random rational
//!   points and compares every invariant exactly.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GraphPoint, PolarizedMetricGraph};
use crate::invariants::{self, ExactValue};
use crate::potential::Potential;
use crate::rational::{self, int, Rational};

/// Errors at or below this size are treated as exact when forming ratios.
pub const NOISE_FLOOR: f64 = 1e-14;
/// Ratios are judged once the coarser error has dropped below this.
pub const ASYMPTOTIC_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Phi,
    Epsilon,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Phi => "phi",
            Quantity::Epsilon => "epsilon",
        }
    }
}

/// Midpoint-rule value of `∫ g_μ(x, x) d(α μ + β δ_{K_q})`, with the atoms
/// taken exactly. The sum itself is formed exactly.
fn diagonal_midpoint(pot: &Potential, m: usize, alpha: &Rational, beta: &Rational) -> Result<Rational> {
    if m < 2 {
        return Err(Error::ValidationFailure(format!("quadrature order {m} < 2")));
    }
    let g = pot.graph();
    let mu = pot.admissible_measure();
    let kq = g.polarized_divisor()?;
    let mut total = Rational::zero();
    for v in g.vertices() {
        let w = alpha * mu.atom(&v.id) + beta * kq.get(&v.id);
        if !w.is_zero() {
            let p = GraphPoint::vertex(&v.id);
            total += w * pot.green(&p, &p)?;
        }
    }
    let half = rational::ratio(1, 2);
    for e in g.edges() {
        let d = mu.density(&e.id);
        if d.is_zero() {
            continue;
        }
        let step = &e.length / int(m as i64);
        let mut s = Rational::zero();
        for i in 0..m {
            let p = GraphPoint::interior(&e.id, (int(i as i64) + &half) * &step);
            s += pot.green(&p, &p)?;
        }
        total += alpha * d * step * s;
    }
    Ok(total)
}

fn quadrature_exact(pot: &Potential, q: Quantity, m: usize) -> Result<Rational> {
    let h = int(pot.genus().1 as i64);
    match q {
        Quantity::Phi => {
            let alpha = &h * int(10) + int(2);
            let quarter = rational::ratio(1, 4);
            let delta = pot.graph().total_length();
            Ok((diagonal_midpoint(pot, m, &alpha, &int(-1))? - delta) * quarter)
        }
        Quantity::Epsilon => diagonal_midpoint(pot, m, &(&h * int(2) - int(2)), &int(1)),
    }
}

/// Midpoint-rule approximation of `φ` with `m` samples per edge.
pub fn quadrature_phi(g: &PolarizedMetricGraph, m: usize) -> Result<f64> {
    let pot = Potential::new(g)?;
    Ok(rational::to_f64(&quadrature_exact(&pot, Quantity::Phi, m)?))
}

/// Midpoint-rule approximation of `ε` with `m` samples per edge.
pub fn quadrature_epsilon(g: &PolarizedMetricGraph, m: usize) -> Result<f64> {
    let pot = Potential::new(g)?;
    Ok(rational::to_f64(&quadrature_exact(&pot, Quantity::Epsilon, m)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub quantity: Quantity,
    pub exact: ExactValue,
    pub orders: Vec<usize>,
    pub approximations: Vec<f64>,
    pub errors: Vec<f64>,
    /// `errors[i−1] / errors[i]`, absent for the first rung and when the
    /// finer error is at the noise floor.
    pub ratios: Vec<Option<f64>>,
}

impl OracleReport {
    pub fn final_error(&self) -> f64 {
        self.errors.last().copied().unwrap_or(f64::NAN)
    }

    /// Errors do not grow from the second rung on.
    pub fn monotone(&self) -> bool {
        self.errors
            .windows(2)
            .skip(1)
            .all(|w| w[1] <= w[0] + NOISE_FLOOR)
    }

    /// Ratios that enter the convergence judgement: the coarser error is
    /// below [`ASYMPTOTIC_THRESHOLD`] and the finer one above the noise.
    pub fn judged_ratios(&self) -> Vec<f64> {
        (1..self.errors.len())
            .filter(|&i| self.errors[i - 1] < ASYMPTOTIC_THRESHOLD)
            .filter_map(|i| self.ratios[i])
            .collect()
    }

    pub fn ratios_within(&self, lo: f64, hi: f64) -> bool {
        self.judged_ratios().iter().all(|r| (lo..=hi).contains(r))
    }

    pub fn passes(&self, lo: f64, hi: f64, tolerance: f64) -> bool {
        self.monotone() && self.ratios_within(lo, hi) && self.final_error() < tolerance
    }
}

/// Runs the midpoint quadrature for each order and compares with the exact
/// engine.
pub fn oracle_report(g: &PolarizedMetricGraph, q: Quantity, orders: &[usize]) -> Result<OracleReport> {
    let pot = Potential::new(g)?;
    let exact = match q {
        Quantity::Phi => invariants::phi_of(&pot)?,
        Quantity::Epsilon => invariants::epsilon_of(&pot)?,
    };
    let mut approximations = Vec::new();
    let mut errors = Vec::new();
    for &m in orders {
        let a = quadrature_exact(&pot, q, m)?;
        approximations.push(rational::to_f64(&a));
        errors.push(rational::to_f64(&(a - &exact).abs()));
    }
    let ratios = (0..errors.len())
        .map(|i| (i > 0 && errors[i] > NOISE_FLOOR).then(|| errors[i - 1] / errors[i]))
        .collect();
    Ok(OracleReport {
        quantity: q,
        exact: ExactValue::new(exact),
        orders: orders.to_vec(),
        approximations,
        errors,
        ratios,
    })
}

/// Floating-point Green's function on an equal-length subdivision with `m`
/// pieces per edge.
#[derive(Debug, Clone)]
pub struct DiscreteGreen {
    m: usize,
    vertex_node: BTreeMap<String, usize>,
    /// Node indices along each edge from its first end, `m + 1` entries.
    edge_nodes: BTreeMap<String, (Rational, Vec<usize>)>,
    resistance: DMatrix<f64>,
    f: Vec<f64>,
    c: f64,
}

impl DiscreteGreen {
    pub fn new(g: &PolarizedMetricGraph, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::ValidationFailure(format!("subdivision order {m} < 2")));
        }
        let pot = Potential::new(g)?;
        let mu = pot.admissible_measure();
        let nv = g.vertices().len();
        let mut vertex_node = BTreeMap::new();
        for (i, v) in g.vertices().iter().enumerate() {
            vertex_node.insert(v.id.clone(), i);
        }
        let mut n = nv;
        let mut weights: Vec<f64> = g
            .vertices()
            .iter()
            .map(|v| rational::to_f64(&mu.atom(&v.id)))
            .collect();
        let mut pieces: Vec<(usize, usize, f64)> = Vec::new();
        let mut edge_nodes = BTreeMap::new();
        for e in g.edges() {
            let mut nodes = vec![e.ends[0]];
            for _ in 1..m {
                nodes.push(n);
                weights.push(0.0);
                n += 1;
            }
            nodes.push(e.ends[1]);
            let h = rational::to_f64(&e.length) / m as f64;
            let w = rational::to_f64(&mu.density(&e.id)) * h;
            for k in 0..m {
                pieces.push((nodes[k], nodes[k + 1], 1.0 / h));
                weights[nodes[k]] += w / 2.0;
                weights[nodes[k + 1]] += w / 2.0;
            }
            edge_nodes.insert(e.id.clone(), (e.length.clone(), nodes));
        }

        // Laplacian grounded at node 0
        let mut lap = DMatrix::<f64>::zeros(n - 1, n - 1);
        for &(a, b, cond) in &pieces {
            if a == b {
                continue;
            }
            for (x, y) in [(a, b), (b, a)] {
                if x > 0 {
                    lap[(x - 1, x - 1)] += cond;
                    if y > 0 {
                        lap[(x - 1, y - 1)] -= cond;
                    }
                }
            }
        }
        let gram = if n > 1 {
            lap.cholesky()
                .ok_or_else(|| Error::ValidationFailure("singular subdivided Laplacian".into()))?
                .inverse()
        } else {
            DMatrix::zeros(0, 0)
        };
        let gv = |i: usize, j: usize| if i == 0 || j == 0 { 0.0 } else { gram[(i - 1, j - 1)] };
        let resistance = DMatrix::from_fn(n, n, |i, j| gv(i, i) + gv(j, j) - 2.0 * gv(i, j));
        let w = DVector::from_vec(weights);
        let f: Vec<f64> = (&resistance * &w).iter().copied().collect();
        let c = 0.5 * f.iter().zip(w.iter()).map(|(a, b)| a * b).sum::<f64>();
        Ok(DiscreteGreen {
            m,
            vertex_node,
            edge_nodes,
            resistance,
            f,
            c,
        })
    }

    pub fn order(&self) -> usize {
        self.m
    }

    /// Node of the subdivision at `p`, if `p` is one.
    pub fn node(&self, p: &GraphPoint) -> Option<usize> {
        match p {
            GraphPoint::Vertex(id) => self.vertex_node.get(id).copied(),
            GraphPoint::Interior { edge, offset } => {
                let (len, nodes) = self.edge_nodes.get(edge)?;
                let k = offset * int(self.m as i64) / len;
                k.is_integer()
                    .then(|| k.to_integer())
                    .and_then(|k| usize::try_from(k).ok())
                    .and_then(|k| nodes.get(k).copied())
            }
        }
    }

    fn require_node(&self, p: &GraphPoint) -> Result<usize> {
        self.node(p).ok_or_else(|| Error::UnknownPoint(format!("{p} is not a subdivision node")))
    }

    pub fn resistance(&self, x: &GraphPoint, y: &GraphPoint) -> Result<f64> {
        Ok(self.resistance[(self.require_node(x)?, self.require_node(y)?)])
    }

    pub fn potential_f(&self, x: &GraphPoint) -> Result<f64> {
        Ok(self.f[self.require_node(x)?])
    }

    pub fn capacity(&self) -> f64 {
        self.c
    }

    pub fn green(&self, x: &GraphPoint, y: &GraphPoint) -> Result<f64> {
        let (i, j) = (self.require_node(x)?, self.require_node(y)?);
        Ok(0.5 * (self.f[i] + self.f[j] - self.resistance[(i, j)]) - self.c)
    }
}

/// `g_μ(x, y)` from the subdivision of order `m`, extrapolated with the
/// order-`2m` value to cancel the leading `1/m²` error.
pub fn independent_green(g: &PolarizedMetricGraph, x: &GraphPoint, y: &GraphPoint, m: usize) -> Result<f64> {
    let coarse = DiscreteGreen::new(g, m)?.green(x, y)?;
    let fine = DiscreteGreen::new(g, 2 * m)?.green(x, y)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub edge: String,
    pub from: String,
    #[serde(with = "rational::serde_str")]
    pub step: Rational,
    pub samples: usize,
    /// Mean of `−Δ²g / step²` over the interior samples.
    pub constant: f64,
    pub min: f64,
    pub max: f64,
    /// `−` the density of `μ` on the edge.
    pub expected: f64,
    pub deviation: f64,
}

/// Second differences of `y ↦ g_μ(x, y)` along `edge`, with `Δ` acting as
/// `−d²/ds²` on edge interiors. Away from `x` the result should be the
/// constant `−μ`-density of the edge.
pub fn laplacian_probe(g: &PolarizedMetricGraph, x: &GraphPoint, edge: &str, step: &Rational) -> Result<ProbeReport> {
    let pot = Potential::new(g)?;
    g.check_point(x)?;
    let e = g
        .edge(edge)
        .ok_or_else(|| Error::UnknownPoint(format!("edge:{edge}")))?;
    if let GraphPoint::Interior { edge: on, .. } = x {
        if on == edge {
            return Err(Error::ValidationFailure(format!("probe origin {x} lies on edge {edge}")));
        }
    }
    let parts = &e.length / step;
    if !step.is_positive() || !parts.is_integer() || parts < int(4) {
        return Err(Error::ValidationFailure(format!(
            "step {} must divide length {} into at least 4 parts",
            rational::format(step),
            rational::format(&e.length)
        )));
    }
    let n: usize = parts.to_integer().try_into().map_err(|_| {
        Error::ValidationFailure("too many probe samples".into())
    })?;
    let vals: Vec<Rational> = (0..=n)
        .map(|k| {
            let p = g.point_on_edge(edge, step * int(k as i64))?;
            pot.green(x, &p)
        })
        .collect::<Result<_>>()?;
    let sq = step * step;
    let consts: Vec<f64> = vals
        .windows(3)
        .map(|w| rational::to_f64(&(-(&w[2] - &w[1] * int(2) + &w[0]) / &sq)))
        .collect();
    let expected = -rational::to_f64(&pot.admissible_measure().density(edge));
    let mean = consts.iter().sum::<f64>() / consts.len() as f64;
    let min = consts.iter().copied().fold(f64::INFINITY, f64::min);
    let max = consts.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(ProbeReport {
        edge: edge.to_string(),
        from: x.to_string(),
        step: step.clone(),
        samples: consts.len(),
        constant: mean,
        min,
        max,
        expected,
        deviation: consts.iter().map(|c| (c - expected).abs()).fold(0.0, f64::max),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub quantity: String,
    pub original: String,
    pub refined: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionTrial {
    /// Inserted points in the coordinates of the unrefined graph.
    pub inserted: Vec<String>,
    pub compared: usize,
    pub failure: Option<Mismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionReport {
    pub seed: u64,
    pub trials: Vec<SubdivisionTrial>,
    pub passed: bool,
}

/// Tracks where points of the unrefined graph sit in a refinement.
struct Refinement {
    graph: PolarizedMetricGraph,
    /// Per original edge: cut offsets (from its first end) with vertex ids,
    /// and the refined pieces between consecutive cuts.
    cuts: BTreeMap<String, (Vec<(Rational, String)>, Vec<String>)>,
}

impl Refinement {
    fn new(g: &PolarizedMetricGraph) -> Self {
        let cuts = g
            .edges()
            .iter()
            .map(|e| {
                let a = g.vertices()[e.ends[0]].id.clone();
                let b = g.vertices()[e.ends[1]].id.clone();
                (
                    e.id.clone(),
                    (vec![(Rational::zero(), a), (e.length.clone(), b)], vec![e.id.clone()]),
                )
            })
            .collect();
        Refinement {
            graph: g.clone(),
            cuts,
        }
    }

    fn has_cut(&self, edge: &str, t: &Rational) -> bool {
        self.cuts[edge].0.iter().any(|(s, _)| s == t)
    }

    /// Inserts the original point `(edge, t)`; returns its new vertex id.
    fn insert(&mut self, edge: &str, t: &Rational) -> Result<String> {
        let (cuts, pieces) = self.cuts.get_mut(edge).expect("known edge");
        let i = cuts.iter().position(|(s, _)| s > t).expect("interior offset") - 1;
        let (t0, left) = cuts[i].clone();
        let (t1, right) = cuts[i + 1].clone();
        let piece = pieces[i].clone();
        let pe = self.graph.edge(&piece).expect("piece exists");
        let forward = left == right || self.graph.vertices()[pe.ends[0]].id == left;
        let local = if forward { t - &t0 } else { &t1 - t };
        let (g2, v, [first, second]) = self.graph.split_edge(&piece, &local)?;
        let (lp, rp) = if forward { (first, second) } else { (second, first) };
        cuts.insert(i + 1, (t.clone(), v.clone()));
        pieces.splice(i..=i, [lp, rp]);
        self.graph = g2;
        Ok(v)
    }
}

struct Snapshot {
    values: Vec<(&'static str, Rational)>,
}

impl Snapshot {
    fn of(pot: &Potential) -> Result<Self> {
        let eps = invariants::epsilon_of(pot)?;
        let phi = invariants::phi_of(pot)?;
        let psi = invariants::psi_from(pot.genus().1, &eps, &phi);
        Ok(Snapshot {
            values: vec![
                ("delta", pot.graph().total_length()),
                ("phi", phi),
                ("epsilon", eps),
                ("psi", psi),
                ("c", pot.capacity().clone()),
            ],
        })
    }
}

fn random_offset(rng: &mut ChaCha8Rng, len: &Rational) -> Rational {
    let d: i64 = rng.gen_range(2..=97);
    let k: i64 = rng.gen_range(1..d);
    len * rational::ratio(k, d)
}

/// Inserts 1–5 random rational points per trial and checks that `δ`, `φ`,
/// `ε`, `ψ`, `c` and sampled values of `g_μ` are unchanged exactly.
pub fn subdivision_invariance_check(g: &PolarizedMetricGraph, trials: usize, seed: u64) -> Result<SubdivisionReport> {
    let pot = Potential::new(g)?;
    if g.edges().is_empty() {
        return Err(Error::ValidationFailure("graph has no edges to refine".into()));
    }
    let base = Snapshot::of(&pot)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..trials {
        let k = rng.gen_range(1..=5);
        let mut refinement = Refinement::new(g);
        let mut inserted: Vec<(GraphPoint, String)> = Vec::new();
        while inserted.len() < k {
            let e = &g.edges()[rng.gen_range(0..g.edges().len())];
            let t = random_offset(&mut rng, &e.length);
            if refinement.has_cut(&e.id, &t) {
                continue;
            }
            let v = refinement.insert(&e.id, &t)?;
            inserted.push((GraphPoint::interior(&e.id, t), v));
        }
        out.push(compare_refinement(&pot, &base, &refinement.graph, &inserted, &mut rng)?);
    }
    let passed = out.iter().all(|t| t.failure.is_none());
    Ok(SubdivisionReport {
        seed,
        trials: out,
        passed,
    })
}

/// Refines at the given original points and compares, without randomness in
/// the choice of points.
pub fn subdivision_check_at(g: &PolarizedMetricGraph, points: &[(String, Rational)], seed: u64) -> Result<SubdivisionTrial> {
    let pot = Potential::new(g)?;
    let base = Snapshot::of(&pot)?;
    let mut refinement = Refinement::new(g);
    let mut inserted = Vec::new();
    for (e, t) in points {
        let p = GraphPoint::interior(e, t.clone());
        g.check_point(&p)?;
        if refinement.has_cut(e, t) {
            continue;
        }
        let v = refinement.insert(e, t)?;
        inserted.push((p, v));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    compare_refinement(&pot, &base, &refinement.graph, &inserted, &mut rng)
}

fn compare_refinement(
    pot: &Potential,
    base: &Snapshot,
    refined: &PolarizedMetricGraph,
    inserted: &[(GraphPoint, String)],
    rng: &mut ChaCha8Rng,
) -> Result<SubdivisionTrial> {
    let names = inserted.iter().map(|(p, _)| p.to_string()).collect();
    let rpot = Potential::new(refined)?;
    let snap = Snapshot::of(&rpot)?;
    let mut compared = 0;
    let mismatch = |q: String, a: &Rational, b: &Rational| Mismatch {
        quantity: q,
        original: rational::format(a),
        refined: rational::format(b),
    };
    for ((name, a), (_, b)) in base.values.iter().zip(&snap.values) {
        compared += 1;
        if a != b {
            return Ok(SubdivisionTrial {
                inserted: names,
                compared,
                failure: Some(mismatch(name.to_string(), a, b)),
            });
        }
    }
    // points as seen from the original and from the refined graph
    let pts: Vec<(GraphPoint, GraphPoint)> = pot
        .graph()
        .vertices()
        .iter()
        .map(|v| (GraphPoint::vertex(&v.id), GraphPoint::vertex(&v.id)))
        .chain(inserted.iter().map(|(p, v)| (p.clone(), GraphPoint::vertex(v))))
        .collect();
    let mut pairs: Vec<(usize, usize)> = (pts.len() - inserted.len()..pts.len()).map(|i| (i, i)).collect();
    for _ in 0..4 {
        pairs.push((rng.gen_range(0..pts.len()), rng.gen_range(0..pts.len())));
    }
    for (i, j) in pairs {
        let a = pot.green(&pts[i].0, &pts[j].0)?;
        let b = rpot.green(&pts[i].1, &pts[j].1)?;
        compared += 1;
        if a != b {
            return Ok(SubdivisionTrial {
                inserted: names,
                compared,
                failure: Some(mismatch(format!("g({}, {})", pts[i].0, pts[j].0), &a, &b)),
            });
        }
    }
    Ok(SubdivisionTrial {
        inserted: names,
        compared,
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus2::{build, Genus2Type};
    use crate::rational::ratio;

    fn unit(t: Genus2Type) -> PolarizedMetricGraph {
        build(t, &vec![int(1); t.arity()]).unwrap()
    }

    #[test]
    fn quadrature_examples() {
        let sunset = unit(Genus2Type::I);
        let a = quadrature_phi(&sunset, 256).unwrap();
        assert!((a - 1.0 / 9.0).abs() < 1e-5, "{a}");
        let a = quadrature_phi(&unit(Genus2Type::III), 256).unwrap();
        assert!((a - 1.0 / 12.0).abs() < 1e-5, "{a}");
        let t2 = unit(Genus2Type::II);
        for m in [2, 3, 8] {
            assert_eq!(quadrature_phi(&t2, m).unwrap(), 1.0);
            assert_eq!(quadrature_epsilon(&t2, m).unwrap(), 1.0);
        }
        assert!(quadrature_phi(&sunset, 1).is_err());
    }

    #[test]
    fn ladder_converges_quadratically() {
        let rep = oracle_report(&unit(Genus2Type::I), Quantity::Phi, &[8, 16, 32, 64]).unwrap();
        assert!(rep.monotone());
        for r in rep.ratios.iter().flatten() {
            assert!((r - 4.0).abs() < 0.1, "{r}");
        }
        let rep = oracle_report(&unit(Genus2Type::II), Quantity::Phi, &[8, 16]).unwrap();
        assert_eq!(rep.errors, vec![0.0, 0.0]);
        assert_eq!(rep.ratios, vec![None, None]);
    }

    #[test]
    fn discrete_green_matches_engine() {
        let loop3 = unit(Genus2Type::III);
        let v = GraphPoint::vertex("v");
        let d = DiscreteGreen::new(&loop3, 64).unwrap();
        assert!((d.green(&v, &v).unwrap() - 1.0 / 48.0).abs() < 1e-4);
        assert!((independent_green(&loop3, &v, &v, 64).unwrap() - 1.0 / 48.0).abs() < 1e-8);
        let t2 = unit(Genus2Type::II);
        let (a, b) = (GraphPoint::vertex("a"), GraphPoint::vertex("b"));
        assert!((DiscreteGreen::new(&t2, 4).unwrap().green(&a, &b).unwrap() + 0.25).abs() < 1e-12);
        let sunset = unit(Genus2Type::I);
        let p = GraphPoint::interior("e2", ratio(1, 4));
        let d = DiscreteGreen::new(&sunset, 64).unwrap();
        let exact = rational::to_f64(&crate::potential::green(&sunset, &a, &p).unwrap());
        assert!((d.green(&a, &p).unwrap() - exact).abs() < 1e-4);
        assert!(d.node(&GraphPoint::interior("e2", ratio(1, 3))).is_none());
    }

    #[test]
    fn probe_examples() {
        let rep = laplacian_probe(&unit(Genus2Type::III), &GraphPoint::vertex("v"), "e1", &ratio(1, 256)).unwrap();
        assert!((rep.constant + 0.5).abs() < 1e-9, "{rep:?}");
        assert!(rep.deviation < 1e-6);
        let rep = laplacian_probe(&unit(Genus2Type::II), &GraphPoint::vertex("a"), "e1", &ratio(1, 8)).unwrap();
        assert_eq!(rep.expected, 0.0);
        assert!(rep.deviation < 1e-12);
        let rep = laplacian_probe(&unit(Genus2Type::I), &GraphPoint::vertex("a"), "e2", &ratio(1, 256)).unwrap();
        assert!((rep.constant + 1.0 / 3.0).abs() < 1e-9);
        let sunset = unit(Genus2Type::I);
        assert!(laplacian_probe(&sunset, &GraphPoint::vertex("a"), "e2", &ratio(1, 3)).is_err());
        assert!(laplacian_probe(&sunset, &GraphPoint::interior("e2", ratio(1, 2)), "e2", &ratio(1, 8)).is_err());
    }

    #[test]
    fn subdivision_examples() {
        let rep = subdivision_invariance_check(&unit(Genus2Type::I), 3, 5).unwrap();
        assert!(rep.passed, "{rep:?}");
        let quarters: Vec<(String, Rational)> = (1..4).map(|k| ("e1".to_string(), ratio(k, 4))).collect();
        let t = subdivision_check_at(&unit(Genus2Type::III), &quarters, 1).unwrap();
        assert!(t.failure.is_none(), "{t:?}");
        let adversarial: Vec<(String, Rational)> =
            [1, 96, 2].iter().map(|&k| ("e1".to_string(), ratio(k, 97))).collect();
        let t = subdivision_check_at(&unit(Genus2Type::VI), &adversarial, 2).unwrap();
        assert!(t.failure.is_none(), "{t:?}");
    }
}
