//! Polarized metric graphs: the data model, validation, genus, divisors and
//! model refinement.
//!
//! A graph is stored in canonical form: vertices and edges sorted by id, and
//! every non-loop edge oriented from the lexicographically smaller endpoint
//! id to the larger. Offsets of interior points are measured from the first
//! end of the edge.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub q: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// Vertex indices; equal for a loop.
    pub ends: [usize; 2],
    pub length: Rational,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedMetricGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

/// A vertex, or a point strictly inside an edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GraphPoint {
    Vertex(String),
    Interior { edge: String, offset: Rational },
}

impl GraphPoint {
    pub fn vertex(id: impl Into<String>) -> Self {
        GraphPoint::Vertex(id.into())
    }

    pub fn interior(edge: impl Into<String>, offset: Rational) -> Self {
        GraphPoint::Interior {
            edge: edge.into(),
            offset,
        }
    }
}

impl fmt::Display for GraphPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphPoint::Vertex(v) => write!(f, "vertex:{v}"),
            GraphPoint::Interior { edge, offset } => {
                write!(f, "edge:{edge}@{}", rational::format(offset))
            }
        }
    }
}

impl std::str::FromStr for GraphPoint {
    type Err = Error;

    /// Parses `vertex:ID` or `edge:ID@p/q`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(id) = s.strip_prefix("vertex:") {
            if id.is_empty() {
                return Err(Error::UnknownPoint(s.to_string()));
            }
            return Ok(GraphPoint::Vertex(id.to_string()));
        }
        if let Some(rest) = s.strip_prefix("edge:") {
            let (id, off) = rest
                .rsplit_once('@')
                .ok_or_else(|| Error::UnknownPoint(s.to_string()))?;
            return Ok(GraphPoint::Interior {
                edge: id.to_string(),
                offset: rational::parse(off)?,
            });
        }
        Err(Error::UnknownPoint(s.to_string()))
    }
}

/// A divisor supported on the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    pub coefficients: BTreeMap<String, Rational>,
}

impl Divisor {
    pub fn degree(&self) -> Rational {
        self.coefficients.values().sum()
    }

    pub fn get(&self, id: &str) -> Rational {
        self.coefficients.get(id).cloned().unwrap_or_else(Rational::zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub connected: bool,
    pub positive_lengths: bool,
    pub b1: u64,
    pub h: u64,
    pub stable: bool,
    /// q = 0 vertices with fewer than three half-edges.
    pub unstable_vertices: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: String,
    q: u32,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    id: String,
    ends: [String; 2],
    #[serde(with = "rational::serde_str")]
    length: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

impl PolarizedMetricGraph {
    /// Builds a graph from `(id, q)` vertices and `(id, end, end, length)`
    /// edges. Only structural problems are rejected here; lengths, connectivity
    /// and genus are checked by [`validate`](Self::validate).
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = (String, u32)>,
        E: IntoIterator<Item = (String, String, String, Rational)>,
    {
        let mut vs: Vec<Vertex> = vertices
            .into_iter()
            .map(|(id, q)| Vertex { id, q })
            .collect();
        if vs.is_empty() {
            return Err(Error::EmptyGraph);
        }
        vs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut vertex_index = HashMap::with_capacity(vs.len());
        for (i, v) in vs.iter().enumerate() {
            if vertex_index.insert(v.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(v.id.clone()));
            }
        }

        let mut es = Vec::new();
        for (id, a, b, length) in edges {
            let lookup = |v: &String| {
                vertex_index.get(v).copied().ok_or_else(|| Error::UnknownVertex {
                    edge: id.clone(),
                    vertex: v.clone(),
                })
            };
            let (ia, ib) = (lookup(&a)?, lookup(&b)?);
            es.push(Edge {
                id,
                ends: [ia.min(ib), ia.max(ib)],
                length,
            });
        }
        es.sort_by(|a, b| a.id.cmp(&b.id));
        let mut edge_index = HashMap::with_capacity(es.len());
        for (i, e) in es.iter().enumerate() {
            if vertex_index.contains_key(&e.id) || edge_index.insert(e.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(e.id.clone()));
            }
        }
        Ok(Self {
            vertices: vs,
            edges: es,
            vertex_index,
            edge_index,
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let g: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(
            g.vertices.into_iter().map(|v| (v.id, v.q)),
            g.edges.into_iter().map(|e| {
                let [a, b] = e.ends;
                (e.id, a, b, e.length)
            }),
        )
    }

    /// Canonical compact JSON.
    pub fn to_json(&self) -> String {
        let g = GraphJson {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    id: v.id.clone(),
                    q: v.q,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    id: e.id.clone(),
                    ends: [
                        self.vertices[e.ends[0]].id.clone(),
                        self.vertices[e.ends[1]].id.clone(),
                    ],
                    length: e.length.clone(),
                })
                .collect(),
        };
        serde_json::to_string(&g).expect("graph serializes")
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_idx(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_idx(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edge_idx(id).map(|i| &self.edges[i])
    }

    /// Number of half-edges at each vertex; a loop counts twice.
    pub fn valences(&self) -> Vec<u64> {
        let mut val = vec![0u64; self.vertices.len()];
        for e in &self.edges {
            val[e.ends[0]] += 1;
            val[e.ends[1]] += 1;
        }
        val
    }

    /// First vertex not reachable from vertex 0, if any.
    fn unreachable_vertex(&self) -> Option<usize> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.ends[0]].push(e.ends[1]);
            adj[e.ends[1]].push(e.ends[0]);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().position(|s| !s)
    }

    pub fn is_connected(&self) -> bool {
        self.unreachable_vertex().is_none()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        match self.unreachable_vertex() {
            None => Ok(()),
            Some(v) => Err(Error::DisconnectedGraph {
                root: self.vertices[0].id.clone(),
                vertex: self.vertices[v].id.clone(),
            }),
        }
    }

    fn require_positive_lengths(&self) -> Result<()> {
        match self.edges.iter().find(|e| !e.length.is_positive()) {
            None => Ok(()),
            Some(e) => Err(Error::NonPositiveLength {
                edge: e.id.clone(),
                length: rational::format(&e.length),
            }),
        }
    }

    /// Connectivity, positive lengths and positive genus: everything the
    /// measure and invariant computations need.
    pub fn require_valid(&self) -> Result<()> {
        self.require_connected()?;
        self.require_positive_lengths()?;
        if self.genus_unchecked().1 == 0 {
            return Err(Error::GenusZero);
        }
        Ok(())
    }

    /// Checks connectivity, lengths and genus, and reports stability.
    /// Stability is reported, never required.
    pub fn validate(&self) -> Result<ValidationReport> {
        self.require_valid()?;
        let (b1, h) = self.genus_unchecked();
        let val = self.valences();
        let unstable_vertices: Vec<String> = self
            .vertices
            .iter()
            .zip(&val)
            .filter(|(v, &n)| v.q == 0 && n < 3)
            .map(|(v, _)| v.id.clone())
            .collect();
        Ok(ValidationReport {
            connected: true,
            positive_lengths: true,
            b1,
            h,
            stable: unstable_vertices.is_empty(),
            unstable_vertices,
        })
    }

    fn genus_unchecked(&self) -> (u64, u64) {
        let b1 = (self.edges.len() as u64 + 1).saturating_sub(self.vertices.len() as u64);
        let qsum: u64 = self.vertices.iter().map(|v| v.q as u64).sum();
        (b1, b1 + qsum)
    }

    /// `(b1, h)` with `b1 = |E| - |V| + 1` and `h = b1 + Σ q`.
    pub fn genus(&self) -> Result<(u64, u64)> {
        self.require_connected()?;
        Ok(self.genus_unchecked())
    }

    /// Index-aligned `K_can(x) = valence(x) - 2`.
    pub(crate) fn canonical_coefficients(&self) -> Vec<i64> {
        self.valences().iter().map(|&v| v as i64 - 2).collect()
    }

    /// Index-aligned `K_q(x) = K_can(x) + 2 q(x)`.
    pub(crate) fn polarized_coefficients(&self) -> Vec<i64> {
        self.canonical_coefficients()
            .iter()
            .zip(&self.vertices)
            .map(|(k, v)| k + 2 * v.q as i64)
            .collect()
    }

    fn divisor_from(&self, coeffs: Vec<i64>) -> Divisor {
        Divisor {
            coefficients: self
                .vertices
                .iter()
                .zip(coeffs)
                .map(|(v, c)| (v.id.clone(), rational::int(c)))
                .collect(),
        }
    }

    pub fn canonical_divisor(&self) -> Result<Divisor> {
        self.require_connected()?;
        Ok(self.divisor_from(self.canonical_coefficients()))
    }

    pub fn polarized_divisor(&self) -> Result<Divisor> {
        self.require_connected()?;
        Ok(self.divisor_from(self.polarized_coefficients()))
    }

    /// Total length `δ = Σ m(e)`.
    pub fn total_length(&self) -> Rational {
        self.edges.iter().map(|e| &e.length).sum()
    }

    /// Checks that a point exists and, for interior points, that the offset is
    /// strictly inside the edge.
    pub fn check_point(&self, p: &GraphPoint) -> Result<()> {
        match p {
            GraphPoint::Vertex(id) => self
                .vertex_idx(id)
                .map(|_| ())
                .ok_or_else(|| Error::UnknownPoint(p.to_string())),
            GraphPoint::Interior { edge, offset } => {
                let e = self
                    .edge(edge)
                    .ok_or_else(|| Error::UnknownPoint(p.to_string()))?;
                if !offset.is_positive() || offset >= &e.length {
                    return Err(Error::OffsetOutOfRange {
                        edge: edge.clone(),
                        offset: rational::format(offset),
                        length: rational::format(&e.length),
                    });
                }
                Ok(())
            }
        }
    }

    /// Builds a point at `offset` along `edge`, mapping the endpoints
    /// `0` and `m(e)` to vertex points.
    pub fn point_on_edge(&self, edge: &str, offset: Rational) -> Result<GraphPoint> {
        let e = self
            .edge(edge)
            .ok_or_else(|| Error::UnknownPoint(format!("edge:{edge}")))?;
        if offset.is_zero() {
            return Ok(GraphPoint::Vertex(self.vertices[e.ends[0]].id.clone()));
        }
        if offset == e.length {
            return Ok(GraphPoint::Vertex(self.vertices[e.ends[1]].id.clone()));
        }
        let p = GraphPoint::interior(edge, offset);
        self.check_point(&p)?;
        Ok(p)
    }

    fn fresh_id(&self, base: String) -> String {
        let mut id = base;
        while self.vertex_index.contains_key(&id) || self.edge_index.contains_key(&id) {
            id.push('\'');
        }
        id
    }

    /// Inserts an interior point as a new `q = 0` vertex, splitting its edge
    /// into `{e}.0` (first end to the new vertex) and `{e}.1`. Returns the
    /// refined graph and the new vertex id. A vertex point returns the graph
    /// unchanged.
    pub fn insert_point(&self, p: &GraphPoint) -> Result<(Self, String)> {
        self.check_point(p)?;
        match p {
            GraphPoint::Vertex(id) => Ok((self.clone(), id.clone())),
            GraphPoint::Interior { edge, offset } => {
                let (g, v, _) = self.split_edge(edge, offset)?;
                Ok((g, v))
            }
        }
    }

    /// Like [`insert_point`](Self::insert_point) for an interior point, also
    /// returning the ids of the piece from the first end and the piece to the
    /// second end.
    pub fn split_edge(&self, edge: &str, offset: &Rational) -> Result<(Self, String, [String; 2])> {
        self.check_point(&GraphPoint::interior(edge, offset.clone()))?;
        let e = self.edge(edge).expect("checked");
        let new_v = self.fresh_id(format!("{edge}@{}", rational::format(offset)));
        let left = self.fresh_id(format!("{edge}.0"));
        let right = self.fresh_id(format!("{edge}.1"));
        let a = self.vertices[e.ends[0]].id.clone();
        let b = self.vertices[e.ends[1]].id.clone();

        let vertices = self
            .vertices
            .iter()
            .map(|v| (v.id.clone(), v.q))
            .chain(std::iter::once((new_v.clone(), 0)));
        let mut edges: Vec<(String, String, String, Rational)> = self
            .edges
            .iter()
            .filter(|x| x.id != edge)
            .map(|x| {
                (
                    x.id.clone(),
                    self.vertices[x.ends[0]].id.clone(),
                    self.vertices[x.ends[1]].id.clone(),
                    x.length.clone(),
                )
            })
            .collect();
        edges.push((left.clone(), a, new_v.clone(), offset.clone()));
        edges.push((right.clone(), new_v.clone(), b, &e.length - offset));
        Ok((Self::new(vertices, edges)?, new_v, [left, right]))
    }

    /// The same combinatorial graph with every length multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.length = &e.length * factor;
        }
        g
    }

    /// The same combinatorial graph with edge lengths replaced in edge order.
    pub fn with_lengths(&self, lengths: &[Rational]) -> Result<Self> {
        if lengths.len() != self.edges.len() {
            return Err(Error::ArityMismatch {
                tag: "graph".into(),
                expected: self.edges.len(),
                got: lengths.len(),
            });
        }
        let mut g = self.clone();
        for (e, l) in g.edges.iter_mut().zip(lengths) {
            e.length = l.clone();
        }
        Ok(g)
    }

    /// Whether removing the interior of edge `i` disconnects the graph.
    /// Plain search, independent of any resistance computation.
    pub fn is_bridge(&self, i: usize) -> bool {
        let e = &self.edges[i];
        if e.is_loop() {
            return false;
        }
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for (j, x) in self.edges.iter().enumerate() {
            if j != i {
                adj[x.ends[0]].push(x.ends[1]);
                adj[x.ends[1]].push(x.ends[0]);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![e.ends[0]];
        seen[e.ends[0]] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        !seen[e.ends[1]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn g(vs: &[(&str, u32)], es: &[(&str, &str, &str, Rational)]) -> PolarizedMetricGraph {
        PolarizedMetricGraph::new(
            vs.iter().map(|(i, q)| (i.to_string(), *q)),
            es.iter()
                .map(|(i, a, b, l)| (i.to_string(), a.to_string(), b.to_string(), l.clone())),
        )
        .unwrap()
    }

    fn sunset() -> PolarizedMetricGraph {
        g(
            &[("a", 0), ("b", 0)],
            &[
                ("e1", "a", "b", int(1)),
                ("e2", "a", "b", int(1)),
                ("e3", "a", "b", int(1)),
            ],
        )
    }

    #[test]
    fn validate_examples() {
        let point = g(&[("v", 2)], &[]);
        let r = point.validate().unwrap();
        assert!(r.stable);
        assert_eq!((r.b1, r.h), (0, 2));

        let seg = g(&[("a", 0), ("b", 0)], &[("e", "a", "b", int(1))]);
        assert_eq!(seg.validate(), Err(Error::GenusZero));
        let seg1 = g(&[("a", 1), ("b", 0)], &[("e", "a", "b", int(1))]);
        let r = seg1.validate().unwrap();
        assert!(!r.stable);
        assert_eq!(r.unstable_vertices, vec!["b".to_string()]);

        let two = g(&[("a", 1), ("b", 1)], &[]);
        assert!(matches!(
            two.validate(),
            Err(Error::DisconnectedGraph { ref vertex, .. }) if vertex == "b"
        ));

        let bad = g(&[("a", 1), ("b", 1)], &[("e", "a", "b", int(0))]);
        assert!(matches!(
            bad.validate(),
            Err(Error::NonPositiveLength { ref edge, .. }) if edge == "e"
        ));
    }

    #[test]
    fn unstable_two_vertex_segment_with_q0() {
        // q = 0 vertices with one half-edge are reported, the graph still validates
        let seg = g(&[("a", 0), ("b", 0), ("c", 2)], &[("e", "a", "b", int(1)), ("f", "b", "c", int(1))]);
        let r = seg.validate().unwrap();
        assert!(!r.stable);
        assert_eq!(r.unstable_vertices, vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn structural_errors() {
        let dup = PolarizedMetricGraph::new(
            vec![("a".into(), 0), ("a".into(), 1)],
            Vec::<(String, String, String, Rational)>::new(),
        );
        assert_eq!(dup, Err(Error::DuplicateId("a".into())));
        let unknown = PolarizedMetricGraph::new(
            vec![("a".into(), 0)],
            vec![("e".into(), "a".into(), "z".into(), int(1))],
        );
        assert!(matches!(unknown, Err(Error::UnknownVertex { .. })));
        let empty = PolarizedMetricGraph::new(Vec::new(), Vec::new());
        assert_eq!(empty, Err(Error::EmptyGraph));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(sunset().genus().unwrap(), (2, 2));
        let lp = g(&[("v", 1)], &[("e", "v", "v", int(1))]);
        assert_eq!(lp.genus().unwrap(), (1, 2));
        assert_eq!(g(&[("v", 2)], &[]).genus().unwrap(), (0, 2));
    }

    #[test]
    fn divisors() {
        let s = sunset();
        let k = s.canonical_divisor().unwrap();
        assert_eq!(k.get("a"), int(1));
        assert_eq!(k.get("b"), int(1));
        assert_eq!(k.degree(), int(2));

        let lp = g(&[("v", 1)], &[("e", "v", "v", int(1))]);
        assert_eq!(lp.canonical_divisor().unwrap().get("v"), int(0));
        assert_eq!(lp.polarized_divisor().unwrap().get("v"), int(2));

        let seg = g(&[("a", 1), ("b", 1)], &[("e", "a", "b", int(1))]);
        let kq = seg.polarized_divisor().unwrap();
        assert_eq!(kq.get("a"), int(1));
        assert_eq!(kq.get("b"), int(1));
        assert_eq!(kq.degree(), int(2));
    }

    #[test]
    fn insert_point_examples() {
        let seg = g(&[("a", 1), ("b", 1)], &[("e", "a", "b", int(1))]);
        let (s2, v) = seg.insert_point(&GraphPoint::interior("e", ratio(1, 2))).unwrap();
        assert_eq!(v, "e@1/2");
        let lens: Vec<_> = s2.edges().iter().map(|e| e.length.clone()).collect();
        assert_eq!(lens, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(s2.vertex_idx("e@1/2").map(|i| s2.vertices()[i].q), Some(0));

        let lp = g(&[("v", 1)], &[("e", "v", "v", int(3))]);
        let (l2, nv) = lp.insert_point(&GraphPoint::interior("e", int(1))).unwrap();
        assert_eq!(l2.edges().len(), 2);
        let mut lens: Vec<_> = l2.edges().iter().map(|e| e.length.clone()).collect();
        lens.sort();
        assert_eq!(lens, vec![int(1), int(2)]);
        let iv = l2.vertex_idx(&nv).unwrap();
        let iu = l2.vertex_idx("v").unwrap();
        for e in l2.edges() {
            let mut ends = e.ends;
            ends.sort();
            let mut want = [iu, iv];
            want.sort();
            assert_eq!(ends, want);
        }
        assert_eq!(l2.genus().unwrap(), lp.genus().unwrap());

        // subdividing an integer edge at every integer point gives a unit chain
        let long = g(&[("a", 1), ("b", 1)], &[("e", "a", "b", int(4))]);
        let mut cur = long.clone();
        let mut edge = "e".to_string();
        for _ in 0..3 {
            let (next, _) = cur.insert_point(&GraphPoint::interior(edge.clone(), int(1))).unwrap();
            // the remainder is the `.1` child hanging off the new vertex
            edge = format!("{edge}.1");
            cur = next;
        }
        assert_eq!(cur.edges().len(), 4);
        assert!(cur.edges().iter().all(|e| e.length == int(1)));
        assert_eq!(cur.total_length(), int(4));
        assert_eq!(cur.genus().unwrap(), (0, 2));

        assert!(matches!(
            seg.insert_point(&GraphPoint::interior("e", int(1))),
            Err(Error::OffsetOutOfRange { .. })
        ));
        assert!(matches!(
            seg.insert_point(&GraphPoint::interior("zz", ratio(1, 2))),
            Err(Error::UnknownPoint(_))
        ));
    }

    #[test]
    fn total_length_examples() {
        assert_eq!(sunset().total_length(), int(3));
        assert_eq!(g(&[("v", 2)], &[]).total_length(), int(0));
        let seg = g(&[("a", 1), ("b", 1)], &[("e", "a", "b", ratio(5, 2))]);
        assert_eq!(seg.total_length(), ratio(5, 2));
    }

    #[test]
    fn json_canonical_form() {
        let src = r#"{"vertices":[{"id":"b","q":0},{"id":"a","q":1}],"edges":[{"id":"y","ends":["b","a"],"length":"4/2"},{"id":"x","ends":["a","a"],"length":"1"}]}"#;
        let g = PolarizedMetricGraph::from_json(src).unwrap();
        let canon = g.to_json();
        assert_eq!(
            canon,
            r#"{"vertices":[{"id":"a","q":1},{"id":"b","q":0}],"edges":[{"id":"x","ends":["a","a"],"length":"1"},{"id":"y","ends":["a","b"],"length":"2"}]}"#
        );
        assert_eq!(PolarizedMetricGraph::from_json(&canon).unwrap().to_json(), canon);
        assert!(PolarizedMetricGraph::from_json(r#"{"vertices":[{"id":"a","q":1.5}],"edges":[]}"#).is_err());
        assert!(PolarizedMetricGraph::from_json(r#"{"vertices":[{"id":"a","q":-1}],"edges":[]}"#).is_err());
    }

    #[test]
    fn point_parsing() {
        let p: GraphPoint = "edge:e1@3/4".parse().unwrap();
        assert_eq!(p, GraphPoint::interior("e1", ratio(3, 4)));
        assert_eq!(p.to_string(), "edge:e1@3/4");
        let v: GraphPoint = "vertex:a".parse().unwrap();
        assert_eq!(v, GraphPoint::vertex("a"));
        assert!("node:a".parse::<GraphPoint>().is_err());
        assert!("edge:e1".parse::<GraphPoint>().is_err());
    }

    #[test]
    fn bridges() {
        let s = sunset();
        assert!((0..3).all(|i| !s.is_bridge(i)));
        let seg = g(&[("a", 1), ("b", 1)], &[("e", "a", "b", int(1))]);
        assert!(seg.is_bridge(0));
        let lp = g(&[("v", 1)], &[("e", "v", "v", int(1))]);
        assert!(!lp.is_bridge(0));
    }
}
