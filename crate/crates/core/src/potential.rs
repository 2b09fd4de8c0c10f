//! Canonical and admissible measures, the potential
//! `f(x) = ∫ r(x, ζ) dμ(ζ)`, the capacity constant `c = ½ ∫∫ r dμ dμ` and the
//! Green's function `g_μ(x, y) = ½ (f(x) + f(y) − r(x, y)) − c`.
//!
//! [`Potential`] caches everything derived from one graph. The free functions
//! are one-shot conveniences over it.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::circuit::{self, Located, Network, ResistanceValue};
use crate::error::{Error, Result};
use crate::graph::{GraphPoint, PolarizedMetricGraph};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureKind {
    Canonical,
    Admissible,
    DivisorCurrent,
}

/// Point masses at vertices plus a uniform density on each edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    pub kind: MeasureKind,
    pub atoms: BTreeMap<String, Rational>,
    pub densities: BTreeMap<String, Rational>,
    lengths: BTreeMap<String, Rational>,
}

impl Measure {
    fn from_vectors(
        g: &PolarizedMetricGraph,
        kind: MeasureKind,
        atoms: &[Rational],
        dens: &[Rational],
    ) -> Self {
        Measure {
            kind,
            atoms: g
                .vertices()
                .iter()
                .zip(atoms)
                .map(|(v, a)| (v.id.clone(), a.clone()))
                .collect(),
            densities: g
                .edges()
                .iter()
                .zip(dens)
                .map(|(e, d)| (e.id.clone(), d.clone()))
                .collect(),
            lengths: g
                .edges()
                .iter()
                .map(|e| (e.id.clone(), e.length.clone()))
                .collect(),
        }
    }

    /// `Σ atoms + Σ density · m(e)`.
    pub fn total_mass(&self) -> Rational {
        let atoms: Rational = self.atoms.values().sum();
        let cont: Rational = self
            .densities
            .iter()
            .map(|(e, d)| d * &self.lengths[e])
            .sum();
        atoms + cont
    }

    pub fn atom(&self, v: &str) -> Rational {
        self.atoms.get(v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn density(&self, e: &str) -> Rational {
        self.densities.get(e).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Polynomial in the offset `s ∈ [0, m(e)]` from the first end of an edge,
/// coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePolynomial {
    pub edge: String,
    pub coefficients: Vec<Rational>,
    pub length: Rational,
}

impl EdgePolynomial {
    pub fn eval(&self, s: &Rational) -> Rational {
        poly_eval(&self.coefficients, s)
    }

    pub fn integral(&self) -> Rational {
        poly_integral(&self.coefficients, &self.length)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

fn poly_eval(c: &[Rational], s: &Rational) -> Rational {
    c.iter()
        .rev()
        .fold(Rational::zero(), |acc, k| acc * s + k)
}

fn poly_integral(c: &[Rational], len: &Rational) -> Rational {
    let mut pow = len.clone();
    let mut total = Rational::zero();
    for (k, coef) in c.iter().enumerate() {
        total += coef * &pow / rational::int(k as i64 + 1);
        pow = pow * len;
    }
    total
}

fn poly_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_else(Rational::zero)
                + b.get(i).cloned().unwrap_or_else(Rational::zero)
        })
        .collect();
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn poly_scale(a: &[Rational], k: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * k).collect()
}

/// `∫₀^L r(p_s, p_t) dt` for two points of the same edge, as a polynomial
/// in `s`: `[(L + r) A(s) − B(s)] / (L + r)` with `A(s) = (s² + (L−s)²)/2`
/// and `B(s) = (s³ + (L−s)³)/3`; across a bridge just `A(s)`.
fn self_edge_integral(len: &Rational, r: &ResistanceValue) -> Vec<Rational> {
    let l = len;
    let l2 = l * l;
    let l3 = &l2 * l;
    let half = rational::ratio(1, 2);
    let third = rational::ratio(1, 3);
    // A(s) = s² − L s + L²/2
    let a = vec![&l2 * &half, -l.clone(), rational::int(1)];
    // B(s) = (s³ + (L − s)³)/3 = (L³ − 3 L² s + 3 L s²)/3; the cubic terms cancel
    let b = vec![
        &l3 * &third,
        -(&l2 * rational::int(3)) * &third,
        l * rational::int(3) * &third,
        Rational::zero(),
    ];
    match r {
        ResistanceValue::Infinite => a,
        ResistanceValue::Finite(r) => {
            let lr = l + r;
            let num = poly_add(&poly_scale(&a, &lr), &poly_scale(&b, &rational::int(-1)));
            poly_scale(&num, &lr.recip())
        }
    }
}

/// Everything derived from one polarized metric graph of positive genus.
#[derive(Debug, Clone)]
pub struct Potential {
    graph: PolarizedMetricGraph,
    b1: u64,
    h: u64,
    net: Network,
    excised: Vec<ResistanceValue>,
    can_atoms: Vec<Rational>,
    can_dens: Vec<Rational>,
    atoms: Vec<Rational>,
    dens: Vec<Rational>,
    /// `r(v, w)` between vertices.
    vertex_r: Vec<Vec<Rational>>,
    /// `∫_e r(v, ·)` for each vertex `v` and edge `e`.
    edge_integrals: Vec<Vec<Rational>>,
    f_vertex: Vec<Rational>,
    profiles: Vec<EdgePolynomial>,
    c: Rational,
}

impl Potential {
    pub fn new(g: &PolarizedMetricGraph) -> Result<Self> {
        g.require_valid()?;
        let (b1, h) = g.genus()?;
        let net = Network::from_graph(g);
        let nv = g.vertices().len();
        let ne = g.edges().len();
        let excised: Vec<ResistanceValue> = (0..ne).map(|e| net.excised(e)).collect();

        let kcan = g.canonical_coefficients();
        let kq = g.polarized_coefficients();
        let half = rational::ratio(1, 2);
        let can_atoms: Vec<Rational> = kcan.iter().map(|&k| -rational::int(k) * &half).collect();
        let can_dens: Vec<Rational> = excised
            .iter()
            .zip(g.edges())
            .map(|(r, e)| match r {
                ResistanceValue::Finite(r) => (&e.length + r).recip(),
                ResistanceValue::Infinite => Rational::zero(),
            })
            .collect();

        // μ = (δ_{K_q} + 2 μ_can) / 2h, and the simplified (Σ q δ_x + μ_can|edges) / h
        let two_h = rational::int(2 * h as i64);
        let hq = rational::int(h as i64);
        let def_atoms: Vec<Rational> = kq
            .iter()
            .zip(&can_atoms)
            .map(|(&k, a)| (rational::int(k) + a * rational::int(2)) / &two_h)
            .collect();
        let def_dens: Vec<Rational> = can_dens
            .iter()
            .map(|d| d * rational::int(2) / &two_h)
            .collect();
        let atoms: Vec<Rational> = g
            .vertices()
            .iter()
            .map(|v| rational::int(v.q as i64) / &hq)
            .collect();
        let dens: Vec<Rational> = can_dens.iter().map(|d| d / &hq).collect();
        for (i, (x, y)) in def_atoms.iter().zip(&atoms).enumerate() {
            if x != y {
                return Err(Error::CrosscheckFailure {
                    quantity: format!("admissible atom at {}", g.vertices()[i].id),
                    primary: rational::format(x),
                    secondary: rational::format(y),
                });
            }
        }
        for (i, (x, y)) in def_dens.iter().zip(&dens).enumerate() {
            if x != y {
                return Err(Error::CrosscheckFailure {
                    quantity: format!("admissible density on {}", g.edges()[i].id),
                    primary: rational::format(x),
                    secondary: rational::format(y),
                });
            }
        }

        let vertex_r: Vec<Vec<Rational>> = (0..nv).map(|v| net.resistances_from(v)).collect();

        let mut edge_integrals = vec![vec![Rational::zero(); ne]; nv];
        for v in 0..nv {
            for e in 0..ne {
                if dens[e].is_zero() {
                    continue;
                }
                let (a, b, c) = net
                    .profile(v, e, &vertex_r[v])
                    .map_err(|detail| Error::ProfileSampleMismatch {
                        edge: g.edges()[e].id.clone(),
                        detail,
                    })?;
                let len = &g.edges()[e].length;
                edge_integrals[v][e] = poly_integral(&[c, b, a], len);
            }
        }
        let f_vertex: Vec<Rational> = (0..nv)
            .map(|v| {
                let at: Rational = (0..nv).map(|w| &atoms[w] * &vertex_r[v][w]).sum();
                let cont: Rational = (0..ne).map(|e| &dens[e] * &edge_integrals[v][e]).sum();
                at + cont
            })
            .collect();

        let mut pot = Potential {
            graph: g.clone(),
            b1,
            h,
            net,
            excised,
            can_atoms,
            can_dens,
            atoms,
            dens,
            vertex_r,
            edge_integrals,
            f_vertex,
            profiles: Vec::new(),
            c: Rational::zero(),
        };
        pot.profiles = (0..ne)
            .map(|e| pot.build_profile(e))
            .collect::<Result<_>>()?;
        let at: Rational = (0..nv).map(|v| &pot.atoms[v] * &pot.f_vertex[v]).sum();
        let cont: Rational = (0..ne)
            .map(|e| &pot.dens[e] * pot.profiles[e].integral())
            .sum();
        pot.c = (at + cont) * rational::ratio(1, 2);
        Ok(pot)
    }

    /// Atom and edge-integral contributions to `f` at node `x` of a
    /// refinement `net` of the graph, skipping the edges in `skip`.
    /// `origin` maps each refined edge to its original edge.
    fn cross_value(&self, net: &Network, origin: &[usize], x: usize, skip: usize) -> Result<Rational> {
        let from_x = net.resistances_from(x);
        let nv = self.graph.vertices().len();
        let mut total: Rational = (0..nv).map(|w| &self.atoms[w] * &from_x[w]).sum();
        for (i, &o) in origin.iter().enumerate() {
            if o == skip || self.dens[o].is_zero() {
                continue;
            }
            let (a, b, c) = net
                .profile(x, i, &from_x)
                .map_err(|detail| Error::ProfileSampleMismatch {
                    edge: self.graph.edges()[o].id.clone(),
                    detail,
                })?;
            total += &self.dens[o] * poly_integral(&[c, b, a], &net.edges[i].2);
        }
        Ok(total)
    }

    fn split_origin(&self, e: usize) -> (Vec<usize>, usize) {
        let ne = self.graph.edges().len();
        let origin: Vec<usize> = (0..ne).chain(std::iter::once(e)).collect();
        (origin, ne)
    }

    fn self_poly(&self, e: usize) -> Vec<Rational> {
        poly_scale(
            &self_edge_integral(&self.graph.edges()[e].length, &self.excised[e]),
            &self.dens[e],
        )
    }

    /// `f` at offset `s` strictly inside edge `e`: other edges through
    /// interpolated profiles, the edge itself in closed form.
    fn f_interior(&self, e: usize, s: &Rational) -> Result<Rational> {
        let (net, x) = self.net.split(e, s);
        let (origin, _) = self.split_origin(e);
        let cross = self.cross_value(&net, &origin, x, e)?;
        Ok(cross + poly_eval(&self.self_poly(e), s))
    }

    /// `f` at offset `s` strictly inside edge `e`, integrating every edge,
    /// including both halves of `e`, through interpolated profiles.
    fn f_interior_by_profiles(&self, e: usize, s: &Rational) -> Result<Rational> {
        let (net, x) = self.net.split(e, s);
        let (origin, _) = self.split_origin(e);
        self.cross_value(&net, &origin, x, usize::MAX)
    }

    fn build_profile(&self, e: usize) -> Result<EdgePolynomial> {
        let edge = &self.graph.edges()[e];
        let len = &edge.length;
        let [a, b] = edge.ends;
        let mismatch = |detail: String| Error::ProfileSampleMismatch {
            edge: edge.id.clone(),
            detail,
        };
        let self_poly = self.self_poly(e);

        // cross part at both ends from cached vertex data, midpoint by a split
        let cross_end = |v: usize| &self.f_vertex[v] - &self.dens[e] * &self.edge_integrals[v][e];
        let c0 = cross_end(a);
        let c1 = cross_end(b);
        let mid = len * rational::ratio(1, 2);
        let (net, x) = self.net.split(e, &mid);
        let (origin, _) = self.split_origin(e);
        let cm = self.cross_value(&net, &origin, x, e)?;
        let zero = Rational::zero();
        let (qa, qb, qc) = circuit::interpolate_quadratic([&zero, &mid, len], [&c0, &cm, &c1]);
        let coefficients = poly_add(&[qc, qb, qa], &self_poly);
        let profile = EdgePolynomial {
            edge: edge.id.clone(),
            coefficients,
            length: len.clone(),
        };

        // the closed-form self term must reproduce the interpolated one at the ends
        for (v, s) in [(a, Rational::zero()), (b, len.clone())] {
            let got = profile.eval(&s);
            if got != self.f_vertex[v] {
                return Err(mismatch(format!(
                    "f at {} is {}, profile gives {}",
                    self.graph.vertices()[v].id,
                    rational::format(&self.f_vertex[v]),
                    rational::format(&got)
                )));
            }
        }
        let quarter = len * rational::ratio(1, 4);
        let direct = self.f_interior_by_profiles(e, &quarter)?;
        let got = profile.eval(&quarter);
        if got != direct {
            return Err(mismatch(format!(
                "interior spot check: f = {}, profile gives {}",
                rational::format(&direct),
                rational::format(&got)
            )));
        }
        Ok(profile)
    }

    pub fn graph(&self) -> &PolarizedMetricGraph {
        &self.graph
    }

    /// `(b₁, h)`.
    pub fn genus(&self) -> (u64, u64) {
        (self.b1, self.h)
    }

    pub fn canonical_measure(&self) -> Measure {
        Measure::from_vectors(&self.graph, MeasureKind::Canonical, &self.can_atoms, &self.can_dens)
    }

    pub fn admissible_measure(&self) -> Measure {
        Measure::from_vectors(&self.graph, MeasureKind::Admissible, &self.atoms, &self.dens)
    }

    /// `δ_{K_q}` as a measure.
    pub fn divisor_current(&self) -> Measure {
        let kq: Vec<Rational> = self
            .graph
            .polarized_coefficients()
            .into_iter()
            .map(rational::int)
            .collect();
        let zeros = vec![Rational::zero(); self.graph.edges().len()];
        Measure::from_vectors(&self.graph, MeasureKind::DivisorCurrent, &kq, &zeros)
    }

    pub fn excised(&self) -> &[ResistanceValue] {
        &self.excised
    }

    pub(crate) fn vertex_f(&self) -> &[Rational] {
        &self.f_vertex
    }

    pub(crate) fn admissible_vectors(&self) -> (&[Rational], &[Rational]) {
        (&self.atoms, &self.dens)
    }

    pub fn potential_f(&self, x: &GraphPoint) -> Result<Rational> {
        match circuit::locate(&self.graph, x)? {
            Located::Node(v) => Ok(self.f_vertex[v].clone()),
            Located::OnEdge(e, s) => self.f_interior(e, &s),
        }
    }

    pub fn potential_profile(&self, edge: &str) -> Result<&EdgePolynomial> {
        let e = self
            .graph
            .edge_idx(edge)
            .ok_or_else(|| Error::UnknownPoint(format!("edge:{edge}")))?;
        Ok(&self.profiles[e])
    }

    pub fn profiles(&self) -> &[EdgePolynomial] {
        &self.profiles
    }

    pub fn capacity(&self) -> &Rational {
        &self.c
    }

    pub fn resistance(&self, x: &GraphPoint, y: &GraphPoint) -> Result<Rational> {
        if x == y {
            self.graph.check_point(x)?;
            return Ok(Rational::zero());
        }
        if let (GraphPoint::Vertex(a), GraphPoint::Vertex(b)) = (x, y) {
            if let (Some(i), Some(j)) = (self.graph.vertex_idx(a), self.graph.vertex_idx(b)) {
                return Ok(self.vertex_r[i][j].clone());
            }
        }
        circuit::resistance(&self.graph, x, y)
    }

    pub fn green(&self, x: &GraphPoint, y: &GraphPoint) -> Result<Rational> {
        let fx = self.potential_f(x)?;
        let fy = if x == y { fx.clone() } else { self.potential_f(y)? };
        let r = self.resistance(x, y)?;
        Ok((fx + fy - r) * rational::ratio(1, 2) - &self.c)
    }

    /// `∫ g_μ(x, y) dμ(y)` in closed form. Zero for every `x`.
    pub fn green_mass(&self, x: &GraphPoint) -> Result<Rational> {
        let fx = self.potential_f(x)?;
        // ∫ r(x, ·) dμ is f(x) by definition of f; recompute it independently
        // from the refined network so the check is not a tautology.
        let rx = self.integrate_resistance_from(x)?;
        let f_mass: Rational = {
            let nv = self.graph.vertices().len();
            let at: Rational = (0..nv).map(|v| &self.atoms[v] * &self.f_vertex[v]).sum();
            let cont: Rational = self
                .profiles
                .iter()
                .zip(&self.dens)
                .map(|(p, d)| d * p.integral())
                .sum();
            at + cont
        };
        let mass = self.admissible_measure().total_mass();
        Ok((&fx * &mass + f_mass - rx) * rational::ratio(1, 2) - &self.c * mass)
    }

    /// `∫ r(x, ·) dμ` with every edge piece integrated through interpolated
    /// resistance profiles on the refined network.
    fn integrate_resistance_from(&self, x: &GraphPoint) -> Result<Rational> {
        match circuit::locate(&self.graph, x)? {
            Located::Node(v) => {
                let ne = self.graph.edges().len();
                let origin: Vec<usize> = (0..ne).collect();
                self.cross_value(&self.net, &origin, v, usize::MAX)
            }
            Located::OnEdge(e, s) => self.f_interior_by_profiles(e, &s),
        }
    }
}

pub fn canonical_measure(g: &PolarizedMetricGraph) -> Result<Measure> {
    Ok(Potential::new(g)?.canonical_measure())
}

pub fn admissible_measure(g: &PolarizedMetricGraph) -> Result<Measure> {
    Ok(Potential::new(g)?.admissible_measure())
}

pub fn potential_f(g: &PolarizedMetricGraph, x: &GraphPoint) -> Result<Rational> {
    Potential::new(g)?.potential_f(x)
}

pub fn potential_profile(g: &PolarizedMetricGraph, edge: &str) -> Result<EdgePolynomial> {
    Potential::new(g)?.potential_profile(edge).cloned()
}

pub fn capacity_c(g: &PolarizedMetricGraph) -> Result<Rational> {
    Ok(Potential::new(g)?.capacity().clone())
}

pub fn green(g: &PolarizedMetricGraph, x: &GraphPoint, y: &GraphPoint) -> Result<Rational> {
    Potential::new(g)?.green(x, y)
}
