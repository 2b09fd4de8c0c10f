//! Exact electrical-network computations on metric graphs.
//!
//! Edges are resistors of resistance `m(e)`. All solves are exact: the
//! weighted Laplacian is grounded at one node and the reduced system is
//! solved by fraction-free elimination.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{GraphPoint, PolarizedMetricGraph};
use crate::linalg;
use crate::rational::{self, Rational};

/// Resistance that may be infinite (terminals in different components).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResistanceValue {
    Finite(Rational),
    Infinite,
}

impl ResistanceValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ResistanceValue::Finite(r) => Some(r),
            ResistanceValue::Infinite => None,
        }
    }
}

impl fmt::Display for ResistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResistanceValue::Finite(r) => f.write_str(&rational::format(r)),
            ResistanceValue::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ResistanceValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `s ↦ a s² + b s + c` on `[0, m(e)]`, `s` measured from the first end of
/// the edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticProfile {
    pub edge: String,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub length: Rational,
}

impl QuadraticProfile {
    pub fn eval(&self, s: &Rational) -> Rational {
        (&self.a * s + &self.b) * s + &self.c
    }

    /// `∫₀^{m(e)}` of the profile.
    pub fn integral(&self) -> Rational {
        let l = &self.length;
        let l2 = l * l;
        &self.a * &l2 * l / rational::int(3) + &self.b * &l2 / rational::int(2) + &self.c * l
    }
}

/// Index-level resistor network used by every exact computation. Node
/// indices of a graph-derived network coincide with the graph's vertex
/// indices; edge `i` runs from `edges[i].0` to `edges[i].1`.
#[derive(Debug, Clone)]
pub(crate) struct Network {
    pub n: usize,
    pub edges: Vec<(usize, usize, Rational)>,
}

impl Network {
    pub fn from_graph(g: &PolarizedMetricGraph) -> Self {
        Network {
            n: g.vertices().len(),
            edges: g
                .edges()
                .iter()
                .map(|e| (e.ends[0], e.ends[1], e.length.clone()))
                .collect(),
        }
    }

    /// Splits edge `e` at `offset` from its first end. Edge `e` keeps the
    /// first piece and the second piece is appended; returns the new node.
    pub fn split(&self, e: usize, offset: &Rational) -> (Network, usize) {
        let mut net = self.clone();
        let (a, b, len) = net.edges[e].clone();
        let v = net.n;
        net.n += 1;
        net.edges[e] = (a, v, offset.clone());
        net.edges.push((v, b, len - offset));
        (net, v)
    }

    pub fn without_edge(&self, e: usize) -> Network {
        let mut net = self.clone();
        net.edges.remove(e);
        net
    }

    fn component_of(&self, root: usize) -> Vec<bool> {
        let mut adj = vec![Vec::new(); self.n];
        for (a, b, _) in &self.edges {
            adj[*a].push(*b);
            adj[*b].push(*a);
        }
        let mut seen = vec![false; self.n];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Reduced Laplacian over the component of `ground`, with `ground`
    /// deleted. Returns the matrix and the map from node to row.
    fn grounded_laplacian(&self, ground: usize) -> (Vec<Vec<Rational>>, Vec<Option<usize>>) {
        let comp = self.component_of(ground);
        let mut row = vec![None; self.n];
        let mut k = 0;
        for v in 0..self.n {
            if comp[v] && v != ground {
                row[v] = Some(k);
                k += 1;
            }
        }
        let mut lap = vec![vec![Rational::zero(); k]; k];
        for (a, b, len) in &self.edges {
            if a == b || !comp[*a] {
                continue;
            }
            let g = len.recip();
            if let Some(i) = row[*a] {
                lap[i][i] += &g;
            }
            if let Some(j) = row[*b] {
                lap[j][j] += &g;
            }
            if let (Some(i), Some(j)) = (row[*a], row[*b]) {
                lap[i][j] -= &g;
                lap[j][i] -= &g;
            }
        }
        (lap, row)
    }

    /// Effective resistance between two nodes, `None` when they lie in
    /// different components. Solves `L v = 1_x − 1_y` grounded at `y`.
    pub fn resistance(&self, x: usize, y: usize) -> Option<Rational> {
        if x == y {
            return Some(Rational::zero());
        }
        let (lap, row) = self.grounded_laplacian(y);
        let i = row[x]?;
        let mut rhs = vec![vec![Rational::zero()]; lap.len()];
        rhs[i][0] = Rational::one();
        let v = linalg::solve(&lap, &rhs).expect("grounded Laplacian of a component is nonsingular");
        Some(v[i][0].clone())
    }

    /// `r(x, ·)` for every node of a connected network, from one inverse of
    /// the Laplacian grounded at `x`: `r(x, y)` is the `y` diagonal entry.
    pub fn resistances_from(&self, x: usize) -> Vec<Rational> {
        let (lap, row) = self.grounded_laplacian(x);
        let k = lap.len();
        let id: Vec<Vec<Rational>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        let inv = linalg::solve(&lap, &id).expect("grounded Laplacian of a component is nonsingular");
        (0..self.n)
            .map(|y| match row[y] {
                Some(i) => inv[i][i].clone(),
                None if y == x => Rational::zero(),
                None => panic!("network is disconnected"),
            })
            .collect()
    }

    /// Excised resistance `r(e)`: loops give 0, bridges `Infinite`.
    pub fn excised(&self, e: usize) -> ResistanceValue {
        let (a, b, _) = self.edges[e];
        if a == b {
            return ResistanceValue::Finite(Rational::zero());
        }
        match self.without_edge(e).resistance(a, b) {
            Some(r) => ResistanceValue::Finite(r),
            None => ResistanceValue::Infinite,
        }
    }

    /// Exact quadratic `s ↦ r(x, point at s on e)` for a node `x` not interior
    /// to `e`, given `r(x, ·)` at the nodes. Built by interpolation through
    /// `L/4, L/2, 3L/4`, then certified at both ends and at `L/3`.
    pub fn profile(
        &self,
        x: usize,
        e: usize,
        from_x: &[Rational],
    ) -> std::result::Result<(Rational, Rational, Rational), String> {
        let (a, b, len) = &self.edges[e];
        let sample = |s: &Rational| -> Rational {
            let (net, v) = self.split(e, s);
            net.resistance(x, v).expect("connected network")
        };
        let four = rational::int(4);
        let s1 = len / &four;
        let s2 = len / rational::int(2);
        let s3 = len * rational::int(3) / &four;
        let (y1, y2, y3) = (sample(&s1), sample(&s2), sample(&s3));
        let (qa, qb, qc) = interpolate_quadratic([&s1, &s2, &s3], [&y1, &y2, &y3]);
        let eval = |s: &Rational| (&qa * s + &qb) * s + &qc;

        if eval(&Rational::zero()) != from_x[*a] {
            return Err(format!(
                "value at first end {} != r(x, end) {}",
                rational::format(&eval(&Rational::zero())),
                rational::format(&from_x[*a])
            ));
        }
        if eval(len) != from_x[*b] {
            return Err(format!(
                "value at second end {} != r(x, end) {}",
                rational::format(&eval(len)),
                rational::format(&from_x[*b])
            ));
        }
        let s4 = len / rational::int(3);
        let y4 = sample(&s4);
        if eval(&s4) != y4 {
            return Err(format!(
                "fourth sample {} off the quadratic {}",
                rational::format(&y4),
                rational::format(&eval(&s4))
            ));
        }
        Ok((qa, qb, qc))
    }

    /// Places `points` (edge index, offset strictly inside) as nodes,
    /// splitting edges as needed. Returns the refined network and one node
    /// per point, in input order.
    pub fn embed(&self, points: &[(usize, Rational)]) -> (Network, Vec<usize>) {
        let mut by_edge: BTreeMap<usize, Vec<(Rational, usize)>> = BTreeMap::new();
        for (k, (e, s)) in points.iter().enumerate() {
            by_edge.entry(*e).or_default().push((s.clone(), k));
        }
        let mut net = self.clone();
        let mut nodes = vec![0; points.len()];
        for (e, mut list) in by_edge {
            list.sort();
            let mut cur_edge = e;
            let mut consumed = Rational::zero();
            let mut last: Option<(Rational, usize)> = None;
            for (s, k) in list {
                if let Some((ls, lv)) = &last {
                    if *ls == s {
                        nodes[k] = *lv;
                        continue;
                    }
                }
                let (next, v) = net.split(cur_edge, &(&s - &consumed));
                net = next;
                cur_edge = net.edges.len() - 1;
                consumed = s.clone();
                nodes[k] = v;
                last = Some((s, v));
            }
        }
        (net, nodes)
    }
}

/// Coefficients `(a, b, c)` of the quadratic through three points.
pub(crate) fn interpolate_quadratic(
    xs: [&Rational; 3],
    ys: [&Rational; 3],
) -> (Rational, Rational, Rational) {
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    let mut c = Rational::zero();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let denom = (xs[i] - xs[j]) * (xs[i] - xs[k]);
        let w = ys[i] / denom;
        // (x - xj)(x - xk) = x² - (xj + xk) x + xj xk
        a += &w;
        b -= &w * (xs[j] + xs[k]);
        c += &w * xs[j] * xs[k];
    }
    (a, b, c)
}

fn require_circuit(g: &PolarizedMetricGraph) -> Result<()> {
    g.require_connected()?;
    if let Some(e) = g.edges().iter().find(|e| !e.length.is_positive()) {
        return Err(Error::NonPositiveLength {
            edge: e.id.clone(),
            length: rational::format(&e.length),
        });
    }
    Ok(())
}

/// Resolves graph points to (edge index, offset) pairs or vertex indices.
pub(crate) enum Located {
    Node(usize),
    OnEdge(usize, Rational),
}

pub(crate) fn locate(g: &PolarizedMetricGraph, p: &GraphPoint) -> Result<Located> {
    g.check_point(p)?;
    Ok(match p {
        GraphPoint::Vertex(id) => Located::Node(g.vertex_idx(id).expect("checked")),
        GraphPoint::Interior { edge, offset } => {
            Located::OnEdge(g.edge_idx(edge).expect("checked"), offset.clone())
        }
    })
}

/// Network with the given points inserted, and their node indices.
pub(crate) fn embed_points(
    g: &PolarizedMetricGraph,
    points: &[&GraphPoint],
) -> Result<(Network, Vec<usize>)> {
    let net = Network::from_graph(g);
    let mut interior = Vec::new();
    let mut slots = Vec::new();
    let mut nodes = vec![0; points.len()];
    for (k, p) in points.iter().enumerate() {
        match locate(g, p)? {
            Located::Node(v) => nodes[k] = v,
            Located::OnEdge(e, s) => {
                interior.push((e, s));
                slots.push(k);
            }
        }
    }
    let (net, placed) = net.embed(&interior);
    for (k, v) in slots.into_iter().zip(placed) {
        nodes[k] = v;
    }
    Ok((net, nodes))
}

/// Effective resistance between two points of a connected graph.
pub fn resistance(g: &PolarizedMetricGraph, x: &GraphPoint, y: &GraphPoint) -> Result<Rational> {
    require_circuit(g)?;
    let (net, nodes) = embed_points(g, &[x, y])?;
    Ok(net
        .resistance(nodes[0], nodes[1])
        .expect("connected graph"))
}

/// Resistance between the endpoints of `edge` with its interior removed.
pub fn excised_edge_resistance(g: &PolarizedMetricGraph, edge: &str) -> Result<ResistanceValue> {
    require_circuit(g)?;
    let e = g
        .edge_idx(edge)
        .ok_or_else(|| Error::UnknownPoint(format!("edge:{edge}")))?;
    Ok(Network::from_graph(g).excised(e))
}

/// The exact quadratic `s ↦ r(x, point at offset s on edge)`.
pub fn resistance_profile(
    g: &PolarizedMetricGraph,
    x: &GraphPoint,
    edge: &str,
) -> Result<QuadraticProfile> {
    require_circuit(g)?;
    let e = g
        .edge_idx(edge)
        .ok_or_else(|| Error::UnknownPoint(format!("edge:{edge}")))?;
    if let GraphPoint::Interior { edge: on, .. } = x {
        if on == edge {
            return Err(Error::UnknownPoint(format!(
                "{x} lies inside edge {edge:?}; split the edge first"
            )));
        }
    }
    let (net, nodes) = embed_points(g, &[x])?;
    let from_x = net.resistances_from(nodes[0]);
    let (a, b, c) = net
        .profile(nodes[0], e, &from_x)
        .map_err(|detail| Error::ProfileSampleMismatch {
            edge: edge.to_string(),
            detail,
        })?;
    Ok(QuadraticProfile {
        edge: edge.to_string(),
        a,
        b,
        c,
        length: g.edges()[e].length.clone(),
    })
}

/// Closed form for `r` between two points of the same edge, at offsets
/// `s` and `t`: `u (L − u + r) / (L + r)` with `u = |s − t|`, or `u` across
/// a bridge.
pub fn same_edge_resistance(
    g: &PolarizedMetricGraph,
    edge: &str,
    s: &Rational,
    t: &Rational,
) -> Result<Rational> {
    let r = excised_edge_resistance(g, edge)?;
    let len = &g.edge(edge).expect("checked").length;
    for o in [s, t] {
        if o.is_negative() || o > len {
            return Err(Error::OffsetOutOfRange {
                edge: edge.to_string(),
                offset: rational::format(o),
                length: rational::format(len),
            });
        }
    }
    Ok(same_edge_formula(len, &r, &(s - t).abs()))
}

pub(crate) fn same_edge_formula(len: &Rational, r: &ResistanceValue, u: &Rational) -> Rational {
    match r {
        ResistanceValue::Finite(r) => u * (len - u + r) / (len + r),
        ResistanceValue::Infinite => u.clone(),
    }
}

/// `Σ_e m(e) / (m(e) + r(e))`, bridges contributing 0. Equals `b₁`.
pub fn foster_sum(g: &PolarizedMetricGraph) -> Result<Rational> {
    require_circuit(g)?;
    let net = Network::from_graph(g);
    Ok((0..net.edges.len())
        .filter_map(|e| {
            let len = &net.edges[e].2;
            net.excised(e).finite().map(|r| len / (len + r))
        })
        .sum())
}
