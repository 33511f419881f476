//! Divisor-specific move validity and the vanishing certifier.
//!
//! A two-anchor move capturing `c` from `(a1, a2)` is valid for `D` when
//! `N = D - a1 - a2 - c - K` is nef and big. Each structured move kind adds
//! side conditions under which this is expected to hold; the certifier picks
//! the kinds and start pair from `m_D`, the rank and the shape of `D + K`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::curves::SurfaceModel;
use crate::error::{Error, Result};
use crate::game::{closure_or_stuck, replay, CaptureCertificate, CaptureMove, MoveKind, MoveOracle};
use crate::graph::CurveGraph;
use crate::lattice::{reflect, DivisorClass, RootClass};

/// Why a move is valid for a divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityEvidence {
    pub rule: MoveKind,
    /// `N = D - anchors - captured - K`.
    pub n_class: DivisorClass,
    /// Minimum of `N . H` over all exceptional curves.
    pub min_product: i64,
    pub n_squared: i64,
    pub side_conditions: Vec<String>,
}

/// `Some((min N.H, N^2))` iff `N` is nef and `N^2 > 0`.
pub fn nef_big_check(n: &DivisorClass, model: &SurfaceModel) -> Option<(i64, i64)> {
    let min = model
        .curves()
        .iter()
        .map(|c| n.try_dot(&c.class).ok())
        .min()
        .flatten()?;
    let sq = n.try_dot(n).ok()?;
    (min >= 0 && sq > 0).then_some((min, sq))
}

/// How `D + K` looks when `m_D = 1` on the rank-7 surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residual {
    /// `m_D != 1` or rank below 7.
    NotApplicable,
    /// `F = D + K` nef, nonzero, `F^2 > 0`.
    Big,
    /// `F = m Q` for a conic class `Q`.
    ConicMultiple { m: i64, q: DivisorClass },
}

/// Everything about `D` that move checks need, computed once.
#[derive(Clone, Debug)]
pub struct DivisorContext<'g> {
    graph: &'g CurveGraph,
    d: DivisorClass,
    degree: i64,
    m_d: i64,
    f: DivisorClass,
    f_dot: Vec<i64>,
    d_dot: Vec<i64>,
    residual: Residual,
    /// For each curve `C`: min of `F . E` over curves `E` with `E . C = 0`.
    min_f_disjoint: Vec<i64>,
}

impl<'g> DivisorContext<'g> {
    pub fn new(d: &DivisorClass, graph: &'g CurveGraph) -> Result<Self> {
        let model = graph.model();
        if d.rank() != model.rank() {
            return Err(Error::RankMismatch {
                left: d.rank(),
                right: model.rank(),
            });
        }
        let d_dot = model.products_with(d)?;
        let m_d = d_dot.iter().copied().min().unwrap_or(0);
        let f = d.checked_add(&model.canonical())?;
        let f_dot = model.products_with(&f)?;
        let residual = if model.rank() == 7 && m_d == 1 && !f.is_zero() {
            match model.conic_structure(&f)? {
                Some((m, q)) => Residual::ConicMultiple { m, q },
                None => Residual::Big,
            }
        } else {
            Residual::NotApplicable
        };
        let n = model.len();
        let min_f_disjoint = (0..n)
            .map(|c| {
                (0..n)
                    .filter(|&e| e != c && graph.mult(c, e) == 0)
                    .map(|e| f_dot[e])
                    .min()
                    .unwrap_or(i64::MAX)
            })
            .collect();
        Ok(Self {
            graph,
            d: *d,
            degree: d.anticanonical_degree(),
            m_d,
            f,
            f_dot,
            d_dot,
            residual,
            min_f_disjoint,
        })
    }

    pub fn divisor(&self) -> DivisorClass {
        self.d
    }

    pub fn graph(&self) -> &'g CurveGraph {
        self.graph
    }

    pub fn m_d(&self) -> i64 {
        self.m_d
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// `F = D + K`.
    pub fn residual_class(&self) -> DivisorClass {
        self.f
    }

    pub fn residual(&self) -> Residual {
        self.residual
    }

    /// `F . C_i`.
    pub fn f_dot(&self, i: usize) -> i64 {
        self.f_dot[i]
    }

    /// Side conditions of `mv`'s kind for this divisor, as named facts, or
    /// `None` if one fails. Assumes the move realizes its diagram.
    pub fn side_conditions(&self, mv: &CaptureMove) -> Option<Vec<String>> {
        let mut facts = Vec::new();
        self.check_side(mv, Some(&mut facts)).then_some(facts)
    }

    /// Same as [`Self::side_conditions`] without building the descriptions.
    pub fn side_conditions_hold(&self, mv: &CaptureMove) -> bool {
        self.check_side(mv, None)
    }

    /// Whether any move of `kind` can meet the side conditions for this
    /// divisor, judged from the rank and `m_D` alone.
    pub fn kind_possible(&self, kind: MoveKind) -> bool {
        use MoveKind::*;
        let r = self.graph.rank();
        match kind {
            R5Edge => r == 5 && self.m_d >= 1,
            R6Path => r == 6 && self.m_d >= 1,
            P1 | P2 => r == 7 && self.m_d >= 2,
            M1 | M2 | M3 | M4 => self.residual == Residual::Big,
            M5 => r == 7,
            W1 | W2 | W3 => matches!(self.residual, Residual::ConicMultiple { .. }),
            Generic => true,
        }
    }

    fn check_side(&self, mv: &CaptureMove, facts: Option<&mut Vec<String>>) -> bool {
        self.check_side_parts(mv.kind, &mv.anchors, mv.captured, facts)
    }

    fn check_side_parts(
        &self,
        kind: MoveKind,
        a: &[usize],
        c: usize,
        mut facts: Option<&mut Vec<String>>,
    ) -> bool {
        use MoveKind::*;
        let r = self.graph.rank();
        let m = self.graph.model();
        let lab = |i: usize| m.label(i).to_string();
        let mut need = |ok: bool, fact: &dyn Fn() -> String| {
            if let Some(f) = facts.as_deref_mut() {
                f.push(fact());
            }
            ok
        };
        let md = self.m_d;
        match kind {
            R5Edge => r == 5 && need(md >= 1, &|| format!("m_D = {md} >= 1")),
            R6Path => r == 6 && need(md >= 1, &|| format!("m_D = {md} >= 1")),
            P1 | P2 => r == 7 && need(md >= 2, &|| format!("m_D = {md} >= 2")),
            M1 | M3 | M4 => {
                self.residual == Residual::Big
                    && need(true, &|| "m_D = 1, F = D + K with F^2 > 0".into())
                    && need(self.f_dot[a[1]] == 0, &|| format!("F.{} = 0", lab(a[1])))
                    && need(self.f_dot[a[0]] == self.min_f_disjoint[a[1]], &|| {
                        format!(
                            "F.{} = {} is minimal among curves disjoint from {}",
                            lab(a[0]),
                            self.f_dot[a[0]],
                            lab(a[1])
                        )
                    })
            }
            M2 => {
                self.residual == Residual::Big
                    && need(true, &|| "m_D = 1, F = D + K with F^2 > 0".into())
                    && need(self.f_dot[a[1]] == 0, &|| format!("F.{} = 0", lab(a[1])))
            }
            M5 => {
                r == 7
                    && need(self.d_dot[a[0]] == 1, &|| format!("D.{} = 1", lab(a[0])))
                    && need(self.d_dot[a[0]] - m.product(c, a[0]) == -1, &|| {
                        format!("(D - {}).{} = -1", lab(c), lab(a[0]))
                    })
            }
            W1 | W2 | W3 => {
                matches!(self.residual, Residual::ConicMultiple { .. })
                    && need(true, &|| {
                        format!("m_D = 1, F = D + K = {} is a conic multiple", self.f)
                    })
                    && need(self.f_dot[a[0]] == 0 && self.f_dot[a[1]] == 0, &|| {
                        format!("F.{} = F.{} = 0", lab(a[0]), lab(a[1]))
                    })
                    && match kind {
                        W1 => need(self.f_dot[c] == 0, &|| format!("F.{} = 0", lab(c))),
                        W3 => match m.dual_index(c) {
                            Ok(dual) => need(self.f_dot[dual] >= 1, &|| {
                                format!("F.{} = {} >= 1", lab(dual), self.f_dot[dual])
                            }),
                            Err(_) => false,
                        },
                        _ => true,
                    }
            }
            Generic => true,
        }
    }

    /// `(min N.H, N^2)` for `N = D - K - sum(curves)`, from cached products.
    /// The curves must be distinct. Uses `-K.H = 1` for every curve `H`.
    pub fn n_numbers(&self, curves: &[usize]) -> (i64, i64) {
        let m = self.graph.model();
        let min = (0..m.len())
            .map(|h| {
                self.d_dot[h] + 1
                    - curves.iter().map(|&x| m.product(x, h)).sum::<i64>()
            })
            .min()
            .unwrap_or(0);
        let k2 = 9 - m.rank() as i64;
        let mut s2 = -(curves.len() as i64);
        for (i, &x) in curves.iter().enumerate() {
            for &y in &curves[i + 1..] {
                s2 += 2 * m.product(x, y);
            }
        }
        let ds: i64 = curves.iter().map(|&x| self.d_dot[x]).sum();
        let sk = -(curves.len() as i64);
        let d2 = self.d.self_intersection();
        (min, d2 + s2 + k2 - 2 * ds + 2 * self.degree + 2 * sk)
    }

    /// Full validity check. Errors if the move does not realize its diagram.
    pub fn validate(&self, mv: &CaptureMove) -> Result<Option<ValidityEvidence>> {
        if !mv.realizes_diagram(self.graph) {
            return Err(Error::Contract(format!(
                "move {:?} does not realize the {} diagram",
                mv,
                mv.kind.name()
            )));
        }
        if !self.side_conditions_hold(mv) {
            return Ok(None);
        }
        let mut curves = mv.anchors.clone();
        curves.push(mv.captured);
        let (min_product, n_squared) = self.n_numbers(&curves);
        if mv.anchors.len() == 2 && !(min_product >= 0 && n_squared > 0) {
            return Ok(None);
        }
        let m = self.graph.model();
        let mut n = self.d.checked_sub(&m.canonical())?;
        for &x in &curves {
            n = n.checked_sub(&m.class(x))?;
        }
        Ok(Some(ValidityEvidence {
            rule: mv.kind,
            n_class: n,
            min_product,
            n_squared,
            side_conditions: self.side_conditions(mv).unwrap_or_default(),
        }))
    }

    /// Every move of `kind` that realizes its diagram and meets the side
    /// conditions, without the nef-and-big check.
    pub fn instances(&self, kind: MoveKind) -> Vec<CaptureMove> {
        let g = self.graph;
        let n = g.len();
        let mut out = Vec::new();
        if !self.kind_possible(kind) {
            return out;
        }
        match kind.diagram() {
            Some(d) if d.anchors == 1 => {
                for a in 0..n {
                    for c in (0..n).filter(|&c| g.mult(a, c) == d.to_first && c != a) {
                        if self.check_side_parts(kind, &[a], c, None) {
                            out.push(CaptureMove::new(kind, &[a], c));
                        }
                    }
                }
            }
            diagram => {
                for c in 0..n {
                    for a1 in 0..n {
                        if a1 == c || diagram.is_some_and(|d| g.mult(a1, c) != d.to_first) {
                            continue;
                        }
                        for a2 in 0..n {
                            if a2 == c || a2 == a1 || g.mult(a1, a2) != 0 {
                                continue;
                            }
                            if diagram.is_some_and(|d| g.mult(a2, c) != d.to_second) {
                                continue;
                            }
                            if self.check_side_parts(kind, &[a1, a2], c, None) {
                                out.push(CaptureMove::new(kind, &[a1, a2], c));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// For the `F^2 > 0` case with start `(A, C)`: `F.A = 0` forces
    /// `F.A' >= 3`, and `F.A >= 1` forces `F.A' >= 2`.
    pub fn dual_bounds_hold(&self, a: usize) -> Result<bool> {
        let dual = self.graph.model().dual_index(a)?;
        let (fa, fd) = (self.f_dot[a], self.f_dot[dual]);
        Ok(if fa == 0 { fd >= 3 } else { fd >= 2 })
    }

    /// For `F = mQ`: every curve not contracted by `F` meets some disjoint
    /// pair of contracted curves.
    pub fn contracted_pairs_cover(&self) -> bool {
        let g = self.graph;
        let n = g.len();
        let contracted: Vec<usize> = (0..n).filter(|&i| self.f_dot[i] == 0).collect();
        (0..n).filter(|&b| self.f_dot[b] != 0).all(|b| {
            contracted.iter().any(|&x| {
                g.mult(x, b) >= 1
                    && contracted
                        .iter()
                        .any(|&y| y != x && g.mult(y, b) >= 1 && g.mult(x, y) == 0)
            })
        })
    }
}

/// A [`MoveOracle`] validating moves for one divisor.
pub struct DivisorOracle<'g> {
    pub ctx: DivisorContext<'g>,
    pub kinds: Vec<MoveKind>,
}

impl MoveOracle for DivisorOracle<'_> {
    type Evidence = ValidityEvidence;

    fn kinds(&self) -> &[MoveKind] {
        &self.kinds
    }

    fn validate(&self, mv: &CaptureMove) -> Option<ValidityEvidence> {
        self.ctx.validate(mv).ok().flatten()
    }
}

/// Validity of a single move for `d`.
pub fn validate_move(
    d: &DivisorClass,
    mv: &CaptureMove,
    graph: &CurveGraph,
) -> Result<Option<ValidityEvidence>> {
    DivisorContext::new(d, graph)?.validate(mv)
}

/// All nef classes of anticanonical degree `degree`, sorted canonically.
///
/// A nef class `d_0 L - sum m_i E_i` has `0 <= m_i` (against `E_i`),
/// `m_i <= d_0` (against the conic class `L - E_i`) and `m_i <= degree`
/// (against the effective class `-K - E_i`); `d_0` is fixed by the degree.
pub fn enumerate_nef_classes(model: &SurfaceModel, degree: i64) -> Result<Vec<DivisorClass>> {
    let r = model.rank();
    if degree < 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let max_d0 = (degree + r as i64 * degree) / 3;
    let mut m = vec![0i64; r];
    for d0 in 0..=max_d0 {
        let total = 3 * d0 - degree;
        if total < 0 {
            continue;
        }
        let cap = d0.min(degree);
        nef_fill(model, d0, cap, &mut m, 0, total, &mut out)?;
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

fn nef_fill(
    model: &SurfaceModel,
    d0: i64,
    cap: i64,
    m: &mut [i64],
    i: usize,
    left: i64,
    out: &mut Vec<DivisorClass>,
) -> Result<()> {
    let r = m.len();
    if i == r {
        if left == 0 {
            let mut c = vec![d0];
            c.extend(m.iter().map(|v| -v));
            let d = DivisorClass::new(&c)?;
            if model.is_nef(&d) {
                out.push(d);
            }
        }
        return Ok(());
    }
    let slots = (r - i) as i64;
    for v in 0..=cap.min(left) {
        if left - v > (slots - 1) * cap {
            continue;
        }
        // lines through two points
        if m[..i].iter().any(|&w| w + v > d0) {
            continue;
        }
        m[i] = v;
        nef_fill(model, d0, cap, m, i + 1, left - v, out)?;
    }
    m[i] = 0;
    Ok(())
}

/// All effective classes of anticanonical degree at most `max_degree`,
/// sorted by degree and then canonically. A non-nef effective class meets
/// some curve `C` negatively, and subtracting `C` keeps it effective.
pub fn enumerate_effective_classes(
    model: &SurfaceModel,
    max_degree: i64,
) -> Result<Vec<DivisorClass>> {
    let mut all = Vec::new();
    if max_degree < 0 {
        return Ok(all);
    }
    let mut prev = vec![DivisorClass::zero(model.rank())?];
    all.extend(prev.iter().copied());
    for t in 1..=max_degree {
        let mut layer: HashSet<DivisorClass> = enumerate_nef_classes(model, t)?.into_iter().collect();
        for e in &prev {
            for c in model.curves() {
                let d = e.checked_add(&c.class)?;
                if !model.is_nef(&d) {
                    layer.insert(d);
                }
            }
        }
        let mut layer: Vec<DivisorClass> = layer.into_iter().collect();
        layer.sort_by(|a, b| a.canonical_cmp(b));
        all.extend(layer.iter().copied());
        prev = layer;
    }
    Ok(all)
}

/// Route taken by the certifier.
#[derive(Clone, Debug, PartialEq)]
pub enum Route {
    NotNef {
        curve: usize,
        product: i64,
    },
    Contraction {
        curve: usize,
        reflections: Vec<RootClass>,
        dropped: usize,
        restricted: DivisorClass,
    },
    Game {
        certificate: CaptureCertificate<ValidityEvidence>,
    },
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::NotNef { .. } => "NOT_NEF",
            Route::Contraction { .. } => "CONTRACTION",
            Route::Game { .. } => "GAME",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VanishingCertificate {
    pub divisor: DivisorClass,
    pub rank: usize,
    pub degree: i64,
    pub m_d: i64,
    pub route: Route,
}

impl VanishingCertificate {
    pub fn to_json(&self, g: &CurveGraph) -> Value {
        let m = g.model();
        let detail = match &self.route {
            Route::NotNef { curve, product } => json!({
                "curve": m.label(*curve),
                "product": product,
            }),
            Route::Contraction {
                curve,
                reflections,
                dropped,
                restricted,
            } => json!({
                "curve": m.label(*curve),
                "reflections": reflections,
                "dropped": dropped,
                "restricted": restricted,
            }),
            Route::Game { certificate } => certificate.to_json(g),
        };
        json!({
            "divisor": self.divisor,
            "rank": self.rank,
            "degree": self.degree,
            "m_d": self.m_d,
            "route": self.route.name(),
            "detail": detail,
        })
    }

    pub fn move_count(&self) -> usize {
        match &self.route {
            Route::Game { certificate } => certificate.moves.len(),
            _ => 0,
        }
    }

    /// Smallest `N^2` over two-anchor moves.
    pub fn min_n_squared(&self) -> Option<i64> {
        match &self.route {
            Route::Game { certificate } => certificate
                .moves
                .iter()
                .filter(|(mv, _)| mv.anchors.len() == 2)
                .map(|(_, ev)| ev.n_squared)
                .min(),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Append the GENERIC kind after the structured kinds.
    pub allow_generic: bool,
}

/// Start pair and kinds for the game route.
pub fn game_plan(
    ctx: &DivisorContext<'_>,
    opts: &CertifyOptions,
) -> Result<(Vec<usize>, Vec<MoveKind>)> {
    use MoveKind::*;
    let g = ctx.graph;
    let m = g.model();
    let e12 = || -> Result<Vec<usize>> { Ok(vec![m.index_of_str("e1")?, m.index_of_str("e2")?]) };
    let n = g.len();
    let (start, mut kinds) = match m.rank() {
        5 => (e12()?, vec![R5Edge]),
        6 => (e12()?, vec![R6Path]),
        7 if ctx.m_d >= 2 => (e12()?, vec![P1, P2]),
        7 => match ctx.residual {
            Residual::Big => {
                let c = (0..n)
                    .find(|&i| ctx.f_dot[i] == 0)
                    .ok_or_else(|| Error::Internal("m_D = 1 but F contracts nothing".into()))?;
                let a = (0..n)
                    .filter(|&e| e != c && g.mult(c, e) == 0)
                    .min_by_key(|&e| (ctx.f_dot[e], e))
                    .ok_or_else(|| Error::Internal("no curve disjoint from C".into()))?;
                (vec![a, c], vec![M1, M2, M3, M4, M5])
            }
            Residual::ConicMultiple { .. } => {
                let contracted: Vec<usize> = (0..n).filter(|&i| ctx.f_dot[i] == 0).collect();
                let pair = contracted
                    .iter()
                    .flat_map(|&x| contracted.iter().map(move |&y| (x, y)))
                    .find(|&(x, y)| x < y && g.mult(x, y) == 0)
                    .ok_or_else(|| Error::Internal("no disjoint contracted pair".into()))?;
                (vec![pair.0, pair.1], vec![W1, W2, W3])
            }
            Residual::NotApplicable => {
                return Err(Error::Internal(format!(
                    "{} has m_D = {} but no residual case",
                    ctx.d, ctx.m_d
                )))
            }
        },
        r if opts.allow_generic => {
            let _ = r;
            (e12()?, vec![])
        }
        r => {
            return Err(Error::UnsupportedRank {
                op: "game certification without generic moves",
                rank: r,
            })
        }
    };
    if opts.allow_generic {
        kinds.push(Generic);
    }
    Ok((start, kinds))
}

/// Maps the contracted curve to some `E_j` by Cremona reflections in
/// `L - E_i - E_j - E_k` and drops `E_j` from the reflected divisor.
fn contraction_route(d: &DivisorClass, curve: usize, model: &SurfaceModel) -> Result<Route> {
    let r = model.rank();
    let mut c = model.class(curve);
    let mut dd = *d;
    let mut reflections = Vec::new();
    while c.l_coeff() > 0 {
        if r < 3 || reflections.len() > 16 {
            return Err(Error::UnsupportedRank {
                op: "contraction",
                rank: r,
            });
        }
        let mut order: Vec<usize> = (1..=r).collect();
        order.sort_by_key(|&i| (c.e_coeff(i), i));
        let mut top = [order[0], order[1], order[2]];
        top.sort_unstable();
        let mut v = vec![0i64; r + 1];
        v[0] = 1;
        for i in top {
            v[i] = -1;
        }
        let root = RootClass::new(DivisorClass::new(&v)?)?;
        c = reflect(&c, &root)?;
        dd = reflect(&dd, &root)?;
        reflections.push(root);
    }
    let j = (1..=r)
        .find(|&i| c == DivisorClass::exceptional(r, i).expect("index in range"))
        .ok_or_else(|| Error::Internal(format!("reflection left {c}, not an E_j")))?;
    let restricted = dd.drop_exceptional(j).map_err(|e| match e {
        Error::RankOutOfRange(_) => Error::UnsupportedRank {
            op: "contraction",
            rank: r,
        },
        other => other,
    })?;
    Ok(Route::Contraction {
        curve,
        reflections,
        dropped: j,
        restricted,
    })
}

pub fn certify(d: &DivisorClass, graph: &CurveGraph) -> Result<VanishingCertificate> {
    certify_with(d, graph, &CertifyOptions::default())
}

pub fn certify_with(
    d: &DivisorClass,
    graph: &CurveGraph,
    opts: &CertifyOptions,
) -> Result<VanishingCertificate> {
    let ctx = DivisorContext::new(d, graph)?;
    if ctx.degree < 3 {
        return Err(Error::Contract(format!(
            "{d} has anticanonical degree {} < 3",
            ctx.degree
        )));
    }
    let model = graph.model();
    let route = if ctx.m_d < 0 {
        let curve = (0..model.len())
            .find(|&i| ctx.d_dot[i] < 0)
            .expect("m_D < 0 has a witness");
        Route::NotNef {
            curve,
            product: ctx.d_dot[curve],
        }
    } else if ctx.m_d == 0 {
        let curve = (0..model.len())
            .find(|&i| ctx.d_dot[i] == 0)
            .expect("m_D = 0 has a witness");
        contraction_route(d, curve, model)?
    } else {
        let (start, kinds) = game_plan(&ctx, opts)?;
        let oracle = DivisorOracle { ctx, kinds };
        match closure_or_stuck(&start, &oracle, graph) {
            Ok(certificate) => Route::Game { certificate },
            Err(stuck) => {
                return Err(Error::CertificationFailed {
                    divisor: *d,
                    captured: stuck.len(),
                    total: graph.len(),
                    stuck: graph.labels(&stuck),
                })
            }
        }
    };
    Ok(VanishingCertificate {
        divisor: *d,
        rank: model.rank(),
        degree: d.anticanonical_degree(),
        m_d: model.nef_report(d)?.m_d,
        route,
    })
}

/// Certificates for every nef class with `3 <= -K.D <= max_degree`, in
/// canonical order. Fails on the first class that cannot be certified.
pub fn sweep(
    graph: &CurveGraph,
    max_degree: i64,
    opts: &CertifyOptions,
) -> Result<Vec<VanishingCertificate>> {
    sweep_outcomes(graph, max_degree, opts)?
        .into_iter()
        .map(|(_, r)| r)
        .collect()
}

/// Like [`sweep`], keeping the outcome of every class.
pub fn sweep_outcomes(
    graph: &CurveGraph,
    max_degree: i64,
    opts: &CertifyOptions,
) -> Result<Vec<(DivisorClass, Result<VanishingCertificate>)>> {
    if max_degree < 3 {
        return Err(Error::Contract(format!("max degree {max_degree} < 3")));
    }
    let mut classes = Vec::new();
    for t in 3..=max_degree {
        classes.extend(enumerate_nef_classes(graph.model(), t)?);
    }
    Ok(classes
        .par_iter()
        .map(|d| (*d, certify_with(d, graph, opts)))
        .collect())
}

/// Checks a certificate in its JSON form. Game routes are replayed move by
/// move against the validity rules of the divisor; other routes are
/// recomputed and compared.
pub fn check_certificate_json(v: &Value, graph: &CurveGraph, opts: &CertifyOptions) -> Result<bool> {
    let bad = |what: &str| Error::MalformedCertificate(what.to_string());
    let d: DivisorClass = serde_json::from_value(v.get("divisor").cloned().ok_or_else(|| bad("missing divisor"))?)
        .map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    if d.rank() != graph.rank() {
        return Err(Error::RankMismatch {
            left: d.rank(),
            right: graph.rank(),
        });
    }
    let route = v.get("route").and_then(Value::as_str).ok_or_else(|| bad("missing route"))?;
    if route != "GAME" {
        return Ok(certify_with(&d, graph, opts).map_or(false, |c| c.to_json(graph) == *v));
    }
    let ctx = DivisorContext::new(&d, graph)?;
    if ctx.m_d < 1 || ctx.degree < 3 {
        return Ok(false);
    }
    let detail = v.get("detail").ok_or_else(|| bad("missing detail"))?;
    let cert = CaptureCertificate::from_json(detail, graph)?;
    let mut kinds: Vec<MoveKind> = MoveKind::ALL
        .iter()
        .copied()
        .filter(|&k| k != MoveKind::Generic)
        .collect();
    if opts.allow_generic {
        kinds.push(MoveKind::Generic);
    }
    replay(&cert, &DivisorOracle { ctx, kinds }, graph)
}
