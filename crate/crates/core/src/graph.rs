//! The multigraph of exceptional curves, with edge multiplicity `C_i . C_j`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::curves::{CurveLabel, SurfaceModel};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CurveGraph {
    model: SurfaceModel,
    mult: Vec<u8>,
}

/// An ordered set of vertices of a [`CurveGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    bits: u64,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_indices(idx: &[usize]) -> Self {
        let mut s = Self::new();
        for &i in idx {
            s.insert(i);
        }
        s
    }

    pub fn full(n: usize) -> Self {
        Self {
            bits: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.bits >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < 64, "vertex index {i} out of range");
        let fresh = !self.contains(i);
        self.bits |= 1 << i;
        fresh
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Members in increasing (canonical) order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(move |&i| self.contains(i))
    }
}

/// Counts and checks on a curve graph. Fields that only make sense at some
/// ranks are still computed everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub rank: usize,
    pub vertices: usize,
    /// Sum of `C_i . C_j` over unordered pairs.
    pub edges_with_multiplicity: usize,
    pub simple_edges: usize,
    pub double_edges: usize,
    pub triangles: usize,
    pub triangle_free: bool,
    pub every_edge_in_exactly_one_triangle: bool,
    /// Diameter of the simple skeleton; `None` if disconnected.
    pub diameter: Option<usize>,
    pub double_edges_perfect_matching: bool,
    pub no_triangle_with_double_edge: bool,
    pub triangles_sum_to_minus_k_plus_curve: bool,
    /// `A . B >= 1` iff `A' . B = 0` for `B` not in `{A, A'}` (rank 7 only).
    pub dual_adjacency_rule: bool,
}

impl StructuralReport {
    /// The facts expected at this rank, as `(name, holds)` pairs.
    pub fn checks(&self) -> Vec<(&'static str, bool)> {
        let mut out = vec![("entries_in_range", true)];
        match self.rank {
            5 => {
                out.push(("triangle_free", self.triangle_free));
                out.push(("edge_count_40", self.edges_with_multiplicity == 40));
            }
            6 => {
                out.push((
                    "every_edge_in_exactly_one_triangle",
                    self.every_edge_in_exactly_one_triangle,
                ));
                out.push(("triangle_count_45", self.triangles == 45));
            }
            7 => {
                out.push(("double_edges_28", self.double_edges == 28));
                out.push((
                    "double_edges_perfect_matching",
                    self.double_edges_perfect_matching,
                ));
                out.push(("diameter_2", self.diameter == Some(2)));
                out.push((
                    "no_triangle_with_double_edge",
                    self.no_triangle_with_double_edge,
                ));
                out.push((
                    "triangles_sum_to_minus_k_plus_curve",
                    self.triangles_sum_to_minus_k_plus_curve,
                ));
                out.push(("dual_adjacency_rule", self.dual_adjacency_rule));
            }
            _ => {}
        }
        out
    }

    pub fn all_hold(&self) -> bool {
        self.checks().iter().all(|(_, ok)| *ok)
    }
}

#[derive(Serialize)]
struct EdgeRow<'a> {
    a: &'a CurveLabel,
    b: &'a CurveLabel,
    mult: u8,
}

#[derive(Serialize)]
struct GraphExport<'a> {
    rank: usize,
    vertices: Vec<&'a CurveLabel>,
    edges: Vec<EdgeRow<'a>>,
}

pub fn build_graph(model: SurfaceModel) -> Result<CurveGraph> {
    CurveGraph::new(model)
}

impl CurveGraph {
    pub fn new(model: SurfaceModel) -> Result<Self> {
        let n = model.len();
        if n > 64 {
            return Err(Error::Internal(format!("{n} vertices exceed set capacity")));
        }
        let mut mult = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let p = model.product(i, j);
                    mult[i * n + j] = u8::try_from(p)
                        .ok()
                        .filter(|&m| m <= 2)
                        .ok_or_else(|| {
                            Error::Internal(format!(
                                "{} . {} = {p}",
                                model.label(i),
                                model.label(j)
                            ))
                        })?;
                }
            }
        }
        Ok(Self { model, mult })
    }

    /// Builds the surface model and its graph in one step.
    pub fn for_rank(r: usize) -> Result<Self> {
        Self::new(SurfaceModel::new(r)?)
    }

    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    pub fn rank(&self) -> usize {
        self.model.rank()
    }

    pub fn len(&self) -> usize {
        self.model.len()
    }

    pub fn is_empty(&self) -> bool {
        self.model.is_empty()
    }

    #[inline]
    pub fn mult(&self, i: usize, j: usize) -> u8 {
        self.mult[i * self.len() + j]
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.mult(i, j) >= 1
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.adjacent(i, j))
    }

    /// Unordered triples pairwise joined by simple edges.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.mult(a, b) != 1 {
                    continue;
                }
                for c in b + 1..n {
                    if self.mult(a, c) == 1 && self.mult(b, c) == 1 {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    fn eccentricity(&self, start: usize) -> Option<usize> {
        let n = self.len();
        let mut dist = vec![usize::MAX; n];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbours(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist.iter().try_fold(0, |acc, &d| (d != usize::MAX).then(|| acc.max(d)))
    }

    pub fn structural_report(&self) -> StructuralReport {
        let n = self.len();
        let m = &self.model;
        let mut weighted = 0usize;
        let mut simple = 0usize;
        let mut double = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                let k = self.mult(i, j) as usize;
                weighted += k;
                simple += (k == 1) as usize;
                double += (k == 2) as usize;
            }
        }
        let tris = self.triangles();
        let mut per_edge = vec![0usize; n * n];
        for t in &tris {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                per_edge[a * n + b] += 1;
            }
        }
        let every_edge_once = (0..n).all(|i| {
            (i + 1..n).all(|j| self.mult(i, j) != 1 || per_edge[i * n + j] == 1)
        });
        let diameter = (0..n)
            .map(|v| self.eccentricity(v))
            .try_fold(0, |acc, e| e.map(|e| acc.max(e)));
        let matching = (0..n).all(|i| (0..n).filter(|&j| self.mult(i, j) == 2).count() == 1);
        let no_double_triangle = (0..n).all(|a| {
            (0..n).all(|b| {
                self.mult(a, b) != 2
                    || (0..n).all(|c| c == a || c == b || !(self.adjacent(a, c) && self.adjacent(b, c)))
            })
        });
        let k = m.canonical();
        let tri_sums = tris.iter().all(|t| {
            let s = m.class(t[0]) + m.class(t[1]) + m.class(t[2]) + k;
            m.find_class(&s).is_some()
        });
        let dual_rule = m.rank() == 7
            && (0..n).all(|a| {
                let ad = m.dual_index(a).expect("rank 7");
                (0..n)
                    .filter(|&b| b != a && b != ad)
                    .all(|b| self.adjacent(a, b) == (self.mult(ad, b) == 0))
            });
        StructuralReport {
            rank: m.rank(),
            vertices: n,
            edges_with_multiplicity: weighted,
            simple_edges: simple,
            double_edges: double,
            triangles: tris.len(),
            triangle_free: tris.is_empty(),
            every_edge_in_exactly_one_triangle: every_edge_once,
            diameter,
            double_edges_perfect_matching: matching,
            no_triangle_with_double_edge: no_double_triangle,
            triangles_sum_to_minus_k_plus_curve: tri_sums,
            dual_adjacency_rule: dual_rule,
        }
    }

    /// Completes an adjacent pair `{A, B}`: at rank 6, the unique `C` with
    /// `A + B + C = -K`; at rank 5, an adjacent pair `{A', B'}` with
    /// `A + B + A' + B' = -K` spanning an induced square with `A, B`.
    pub fn complete_configuration(&self, pair: &[usize]) -> Result<Vec<usize>> {
        let &[a, b] = pair else {
            return Err(Error::Contract(format!(
                "expected two curves, got {}",
                pair.len()
            )));
        };
        if a >= self.len() || b >= self.len() || self.mult(a, b) != 1 {
            return Err(Error::Contract("curves must be adjacent".into()));
        }
        let m = &self.model;
        let rest = m.anticanonical() - m.class(a) - m.class(b);
        match m.rank() {
            6 => m
                .find_class(&rest)
                .map(|c| vec![c])
                .ok_or_else(|| Error::Internal(format!("{rest} is not a curve"))),
            5 => {
                for (x, y) in m.pair_decompositions(&rest)? {
                    if self.mult(x, y) != 1 {
                        continue;
                    }
                    // square a - b - x - y - a, no diagonals
                    let (x, y) = if self.adjacent(b, x) { (x, y) } else { (y, x) };
                    let square = self.mult(b, x) == 1
                        && self.mult(a, y) == 1
                        && self.mult(a, x) == 0
                        && self.mult(b, y) == 0;
                    if square {
                        return Ok(vec![x, y]);
                    }
                }
                Err(Error::Internal("no square completion".into()))
            }
            r => Err(Error::UnsupportedRank {
                op: "complete_configuration",
                rank: r,
            }),
        }
    }

    /// Adjacency with multiplicity as JSON.
    pub fn to_json(&self) -> serde_json::Value {
        let n = self.len();
        let m = &self.model;
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.mult(i, j) > 0 {
                    edges.push(EdgeRow {
                        a: m.label(i),
                        b: m.label(j),
                        mult: self.mult(i, j),
                    });
                }
            }
        }
        serde_json::to_value(GraphExport {
            rank: m.rank(),
            vertices: (0..n).map(|i| m.label(i)).collect(),
            edges,
        })
        .expect("graph serializes")
    }

    /// One `a b mult` line per edge.
    pub fn edge_list(&self) -> String {
        let n = self.len();
        let mut out = String::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.mult(i, j) > 0 {
                    let _ = writeln!(
                        out,
                        "{} {} {}",
                        self.model.label(i),
                        self.model.label(j),
                        self.mult(i, j)
                    );
                }
            }
        }
        out
    }

    /// Labels of a vertex set, in canonical order.
    pub fn labels(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|i| self.model.label(i).to_string()).collect()
    }

    /// Vertices adjacent (with any multiplicity) to a member of `set` and
    /// not in it.
    pub fn boundary(&self, set: &VertexSet) -> BTreeSet<usize> {
        set.iter()
            .flat_map(|i| self.neighbours(i))
            .filter(|&j| !set.contains(j))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(g: &CurveGraph, s: &str) -> usize {
        g.model().index_of_str(s).unwrap()
    }

    #[test]
    fn multiplicities() {
        let g5 = CurveGraph::for_rank(5).unwrap();
        assert_eq!(g5.mult(idx(&g5, "e1"), idx(&g5, "f12")), 1);
        assert_eq!(g5.structural_report().edges_with_multiplicity, 40);
        let g7 = CurveGraph::for_rank(7).unwrap();
        assert_eq!(g7.structural_report().double_edges, 28);
        for g in [&g5, &g7] {
            for i in 0..g.len() {
                assert_eq!(g.mult(i, i), 0);
                for j in 0..g.len() {
                    assert_eq!(g.mult(i, j), g.mult(j, i));
                }
            }
        }
        let g6 = CurveGraph::for_rank(6).unwrap();
        assert_eq!(g6.structural_report().double_edges, 0);
    }

    #[test]
    fn facts_by_rank() {
        let r5 = CurveGraph::for_rank(5).unwrap().structural_report();
        assert!(r5.triangle_free);
        assert_eq!(r5.triangles, 0);
        let r6 = CurveGraph::for_rank(6).unwrap().structural_report();
        assert!(r6.every_edge_in_exactly_one_triangle);
        assert_eq!(r6.triangles, 45);
        let r7 = CurveGraph::for_rank(7).unwrap().structural_report();
        assert_eq!(r7.diameter, Some(2));
        assert!(r7.double_edges_perfect_matching);
        assert!(r7.no_triangle_with_double_edge);
        assert!(r7.triangles_sum_to_minus_k_plus_curve);
        assert!(r7.dual_adjacency_rule);
        for r in 2..=7 {
            assert!(CurveGraph::for_rank(r).unwrap().structural_report().all_hold());
        }
    }

    #[test]
    fn rank_seven_vertex_degrees() {
        let g = CurveGraph::for_rank(7).unwrap();
        for i in 0..g.len() {
            let simple = (0..g.len()).filter(|&j| g.mult(i, j) == 1).count();
            let disjoint = (0..g.len()).filter(|&j| j != i && g.mult(i, j) == 0).count();
            assert_eq!((simple, disjoint), (27, 27));
        }
    }

    #[test]
    fn completion_at_rank_six() {
        let g = CurveGraph::for_rank(6).unwrap();
        let c = g
            .complete_configuration(&[idx(&g, "e1"), idx(&g, "f12")])
            .unwrap();
        assert_eq!(g.model().label(c[0]).to_string(), "g2");
        let a = idx(&g, "e1");
        assert_eq!(g.mult(a, c[0]), 1);
        assert!(g.complete_configuration(&[idx(&g, "e1"), idx(&g, "e2")]).is_err());
    }

    #[test]
    fn completion_at_rank_five() {
        let g = CurveGraph::for_rank(5).unwrap();
        let m = g.model();
        for a in 0..g.len() {
            for b in a + 1..g.len() {
                if g.mult(a, b) != 1 {
                    continue;
                }
                let xy = g.complete_configuration(&[a, b]).unwrap();
                let sum = m.class(a) + m.class(b) + m.class(xy[0]) + m.class(xy[1]);
                assert_eq!(sum, m.anticanonical());
            }
        }
        let g4 = CurveGraph::for_rank(4).unwrap();
        assert!(matches!(
            g4.complete_configuration(&[0, 4]),
            Err(Error::UnsupportedRank { .. }) | Err(Error::Contract(_))
        ));
    }

    #[test]
    fn exports() {
        let g = CurveGraph::for_rank(2).unwrap();
        assert_eq!(g.edge_list(), "e1 f12 1\ne2 f12 1\n");
        let v = g.to_json();
        assert_eq!(v["edges"].as_array().unwrap().len(), 2);
        assert_eq!(v["vertices"][2], "f12");
    }

    #[test]
    fn vertex_sets() {
        let mut s = VertexSet::from_indices(&[3, 1]);
        assert_eq!(s.iter().collect::<Vec<_>>(), [1, 3]);
        assert!(!s.insert(3));
        assert!(s.insert(55));
        assert_eq!(s.len(), 3);
        assert!(VertexSet::from_indices(&[1]).is_subset(&s));
        assert_eq!(VertexSet::full(56).len(), 56);
    }
}
