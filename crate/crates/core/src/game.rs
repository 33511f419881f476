//! Capture games on the curve graph: diagrams, moves, greedy monotone
//! closure and certificate replay.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::curves::CurveLabel;
use crate::error::{Error, Result};
use crate::graph::{CurveGraph, VertexSet};

/// Named move families. The tag fixes the diagram shape; side conditions
/// live with the validity oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MoveKind {
    R5Edge,
    R6Path,
    P1,
    P2,
    M1,
    M2,
    M3,
    M4,
    M5,
    W1,
    W2,
    W3,
    Generic,
}

impl MoveKind {
    pub const ALL: [MoveKind; 13] = [
        MoveKind::R5Edge,
        MoveKind::R6Path,
        MoveKind::P1,
        MoveKind::P2,
        MoveKind::M1,
        MoveKind::M2,
        MoveKind::M3,
        MoveKind::M4,
        MoveKind::M5,
        MoveKind::W1,
        MoveKind::W2,
        MoveKind::W3,
        MoveKind::Generic,
    ];

    /// The fixed diagram of this kind; `None` for [`MoveKind::Generic`],
    /// which accepts any two-anchor diagram.
    pub fn diagram(self) -> Option<CaptureDiagram> {
        use MoveKind::*;
        let two = |a, b| Some(CaptureDiagram::two(a, b));
        match self {
            R5Edge | M2 => two(1, 0),
            R6Path | P2 | M1 | W2 => two(1, 1),
            P1 | M4 => two(2, 1),
            M3 | W3 => two(0, 1),
            W1 => two(0, 0),
            M5 => Some(CaptureDiagram::one(2)),
            Generic => None,
        }
    }

    pub fn anchor_count(self) -> usize {
        self.diagram().map_or(2, |d| d.anchors as usize)
    }

    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }
}

impl std::str::FromStr for MoveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(Value::String(s.to_string()))
            .map_err(|_| Error::MalformedCertificate(format!("unknown move kind `{s}`")))
    }
}

/// Pattern graph on `{a1[, a2], c}`: the multiplicity of `c` against each
/// anchor. Two anchors are always disjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaptureDiagram {
    pub anchors: u8,
    pub to_first: u8,
    pub to_second: u8,
}

impl CaptureDiagram {
    pub const fn one(to_first: u8) -> Self {
        Self {
            anchors: 1,
            to_first,
            to_second: 0,
        }
    }

    pub const fn two(to_first: u8, to_second: u8) -> Self {
        Self {
            anchors: 2,
            to_first,
            to_second,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CaptureMove {
    pub kind: MoveKind,
    pub anchors: Vec<usize>,
    pub captured: usize,
}

impl CaptureMove {
    pub fn new(kind: MoveKind, anchors: &[usize], captured: usize) -> Self {
        Self {
            kind,
            anchors: anchors.to_vec(),
            captured,
        }
    }

    /// Whether the images induce exactly the kind's diagram.
    pub fn realizes_diagram(&self, g: &CurveGraph) -> bool {
        let n = g.len();
        let c = self.captured;
        if c >= n || self.anchors.iter().any(|&a| a >= n || a == c) {
            return false;
        }
        match (self.kind.diagram(), self.anchors.as_slice()) {
            (Some(d), &[a]) => d.anchors == 1 && g.mult(a, c) == d.to_first,
            (Some(d), &[a1, a2]) => {
                d.anchors == 2
                    && a1 != a2
                    && g.mult(a1, a2) == 0
                    && g.mult(a1, c) == d.to_first
                    && g.mult(a2, c) == d.to_second
            }
            (None, &[a1, a2]) => a1 != a2 && g.mult(a1, a2) == 0,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CaptureState<'g> {
    pub graph: &'g CurveGraph,
    pub captured: VertexSet,
}

impl<'g> CaptureState<'g> {
    pub fn new(graph: &'g CurveGraph, start: &[usize]) -> Self {
        Self {
            graph,
            captured: VertexSet::from_indices(start),
        }
    }

    pub fn is_full(&self) -> bool {
        self.captured.len() == self.graph.len()
    }
}

/// Anchors captured, target not, images realize the diagram.
pub fn applicable(mv: &CaptureMove, state: &CaptureState<'_>) -> bool {
    mv.realizes_diagram(state.graph)
        && mv.anchors.iter().all(|&a| state.captured.contains(a))
        && !state.captured.contains(mv.captured)
}

/// Decides which moves are allowed and produces evidence for them.
pub trait MoveOracle {
    type Evidence: Clone + Serialize;

    /// Kinds tried by [`closure`], in order of preference.
    fn kinds(&self) -> &[MoveKind];

    /// Called only on moves that realize their diagram.
    fn validate(&self, mv: &CaptureMove) -> Option<Self::Evidence>;
}

/// Evidence of an oracle that checks nothing; serializes as `{}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct NoEvidence {}

/// Accepts every move of the listed kinds.
#[derive(Clone, Debug)]
pub struct AllowAll {
    pub kinds: Vec<MoveKind>,
}

impl AllowAll {
    pub fn new(kinds: &[MoveKind]) -> Self {
        Self {
            kinds: kinds.to_vec(),
        }
    }
}

impl MoveOracle for AllowAll {
    type Evidence = NoEvidence;

    fn kinds(&self) -> &[MoveKind] {
        &self.kinds
    }

    fn validate(&self, mv: &CaptureMove) -> Option<NoEvidence> {
        self.kinds.contains(&mv.kind).then(NoEvidence::default)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaptureCertificate<E> {
    pub start: Vec<usize>,
    pub moves: Vec<(CaptureMove, E)>,
}

impl<E: Serialize> CaptureCertificate<E> {
    pub fn to_json(&self, g: &CurveGraph) -> Value {
        let m = g.model();
        let lab = |i: usize| m.label(i).to_string();
        json!({
            "start": self.start.iter().map(|&i| lab(i)).collect::<Vec<_>>(),
            "moves": self.moves.iter().map(|(mv, ev)| json!({
                "kind": mv.kind,
                "anchors": mv.anchors.iter().map(|&i| lab(i)).collect::<Vec<_>>(),
                "captured": lab(mv.captured),
                "evidence": ev,
            })).collect::<Vec<_>>(),
        })
    }
}

impl CaptureCertificate<Value> {
    /// Parses the JSON form; evidence is kept as raw JSON.
    pub fn from_json(v: &Value, g: &CurveGraph) -> Result<Self> {
        let bad = |what: &str| Error::MalformedCertificate(what.to_string());
        let m = g.model();
        let label = |v: &Value| -> Result<usize> {
            let s = v.as_str().ok_or_else(|| bad("label is not a string"))?;
            let l: CurveLabel = s.parse()?;
            m.index_of(&l)
                .map_err(|_| Error::MalformedCertificate(format!("dangling label `{s}`")))
        };
        let labels = |v: &Value| -> Result<Vec<usize>> {
            v.as_array()
                .ok_or_else(|| bad("expected a label array"))?
                .iter()
                .map(label)
                .collect()
        };
        let start = labels(v.get("start").ok_or_else(|| bad("missing start"))?)?;
        let moves = v
            .get("moves")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing moves"))?
            .iter()
            .map(|mv| {
                let kind: MoveKind = mv
                    .get("kind")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("missing kind"))?
                    .parse()?;
                let anchors = labels(mv.get("anchors").ok_or_else(|| bad("missing anchors"))?)?;
                let captured = label(mv.get("captured").ok_or_else(|| bad("missing captured"))?)?;
                let ev = mv.get("evidence").cloned().unwrap_or(Value::Null);
                Ok((CaptureMove { kind, anchors, captured }, ev))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { start, moves })
    }
}

fn find_move<O: MoveOracle>(
    c: usize,
    state: &CaptureState<'_>,
    oracle: &O,
) -> Option<(CaptureMove, O::Evidence)> {
    let g = state.graph;
    let kinds = oracle.kinds();
    let try_kinds = |anchors: &[usize]| {
        for &kind in kinds {
            if kind.anchor_count() != anchors.len() {
                continue;
            }
            let mv = CaptureMove::new(kind, anchors, c);
            if !mv.realizes_diagram(g) {
                continue;
            }
            if let Some(ev) = oracle.validate(&mv) {
                return Some((mv, ev));
            }
        }
        None
    };
    if kinds.iter().any(|k| k.anchor_count() == 1) {
        for a in state.captured.iter() {
            if let Some(found) = try_kinds(&[a]) {
                return Some(found);
            }
        }
    }
    let first_mults: Vec<u8> = kinds
        .iter()
        .filter_map(|k| match k.diagram() {
            Some(d) if d.anchors == 2 => Some(Some(d.to_first)),
            Some(_) => None,
            None => Some(None),
        })
        .map(|m| m.unwrap_or(u8::MAX))
        .collect();
    if first_mults.is_empty() {
        return None;
    }
    let any_first = first_mults.contains(&u8::MAX);
    for a1 in state.captured.iter() {
        if !any_first && !first_mults.contains(&g.mult(a1, c)) {
            continue;
        }
        for a2 in state.captured.iter() {
            if a2 == a1 || g.mult(a1, a2) != 0 {
                continue;
            }
            if let Some(found) = try_kinds(&[a1, a2]) {
                return Some(found);
            }
        }
    }
    None
}

/// Greedy monotone closure. On failure returns the captured set at the
/// fixpoint.
pub fn closure_or_stuck<O: MoveOracle>(
    start: &[usize],
    oracle: &O,
    graph: &CurveGraph,
) -> std::result::Result<CaptureCertificate<O::Evidence>, VertexSet> {
    let mut state = CaptureState::new(graph, start);
    if start.len() > 2 || start.iter().any(|&i| i >= graph.len()) {
        return Err(state.captured);
    }
    let mut moves = Vec::new();
    loop {
        let mut progress = false;
        for c in 0..graph.len() {
            if state.captured.contains(c) {
                continue;
            }
            if let Some((mv, ev)) = find_move(c, &state, oracle) {
                state.captured.insert(c);
                moves.push((mv, ev));
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    if state.is_full() {
        Ok(CaptureCertificate {
            start: start.to_vec(),
            moves,
        })
    } else {
        Err(state.captured)
    }
}

/// Greedy monotone closure: scan uncaptured vertices in canonical order,
/// apply the first approved move for each, repeat until nothing changes.
pub fn closure<O: MoveOracle>(
    start: &[usize],
    oracle: &O,
    graph: &CurveGraph,
) -> Option<CaptureCertificate<O::Evidence>> {
    closure_or_stuck(start, oracle, graph).ok()
}

/// Replays a certificate: each move must be applicable in turn, of a kind
/// the oracle offers, and approved by it; the end state must be full.
pub fn replay<O: MoveOracle, E>(
    cert: &CaptureCertificate<E>,
    oracle: &O,
    graph: &CurveGraph,
) -> Result<bool> {
    let n = graph.len();
    let dangling = cert.start.iter().any(|&i| i >= n)
        || cert
            .moves
            .iter()
            .any(|(mv, _)| mv.captured >= n || mv.anchors.iter().any(|&a| a >= n));
    if dangling {
        return Err(Error::MalformedCertificate("vertex index out of range".into()));
    }
    if cert.start.len() > 2 {
        return Ok(false);
    }
    let mut state = CaptureState::new(graph, &cert.start);
    for (mv, _) in &cert.moves {
        if !oracle.kinds().contains(&mv.kind)
            || !applicable(mv, &state)
            || oracle.validate(mv).is_none()
        {
            return Ok(false);
        }
        state.captured.insert(mv.captured);
    }
    Ok(state.is_full())
}

/// One stage of a staged capture sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    Curves(Vec<usize>),
    Remaining,
}

/// The staged sequences starting from `{e1, e2}` at ranks 5, 6 and 7.
pub fn standard_stages(g: &CurveGraph) -> Result<(Vec<usize>, Vec<Stage>)> {
    let m = g.model();
    let ids = |labels: &[&str]| -> Result<Vec<usize>> {
        labels.iter().map(|l| m.index_of_str(l)).collect()
    };
    let start = ids(&["e1", "e2"])?;
    let stages = match g.rank() {
        5 => vec![
            Stage::Curves(ids(&["f13", "f14", "f15", "f23", "f24", "f25"])?),
            Stage::Curves(ids(&["g", "e3", "e4", "e5", "f12", "f34", "f35", "f45"])?),
        ],
        6 => vec![
            Stage::Curves(ids(&["f12", "g3", "g4", "g5", "g6"])?),
            Stage::Remaining,
        ],
        7 => vec![
            Stage::Curves(ids(&["h1", "h2"])?),
            Stage::Curves(ids(&["e3", "e4", "e5", "e6", "e7"])?),
            Stage::Remaining,
        ],
        r => {
            return Err(Error::UnsupportedRank {
                op: "standard_stages",
                rank: r,
            })
        }
    };
    Ok((start, stages))
}

/// Plays a staged sequence. Within a stage members are tried in canonical
/// order, repeatedly, with anchors drawn from everything captured so far.
/// Returns the resulting certificate, or `None` if some stage cannot be
/// completed or curves remain at the end.
pub fn replay_stages<O: MoveOracle>(
    start: &[usize],
    stages: &[Stage],
    oracle: &O,
    graph: &CurveGraph,
) -> Option<CaptureCertificate<O::Evidence>> {
    let mut state = CaptureState::new(graph, start);
    let mut moves = Vec::new();
    for stage in stages {
        let mut todo: Vec<usize> = match stage {
            Stage::Curves(v) => {
                let mut v = v.clone();
                v.sort_unstable();
                v
            }
            Stage::Remaining => (0..graph.len()).filter(|&i| !state.captured.contains(i)).collect(),
        };
        todo.retain(|&c| !state.captured.contains(c));
        while !todo.is_empty() {
            let before = todo.len();
            todo.retain(|&c| match find_move(c, &state, oracle) {
                Some((mv, ev)) => {
                    state.captured.insert(c);
                    moves.push((mv, ev));
                    false
                }
                None => true,
            });
            if todo.len() == before {
                return None;
            }
        }
    }
    state.is_full().then(|| CaptureCertificate {
        start: start.to_vec(),
        moves,
    })
}
