//! Exceptional curves, nefness, effectivity and `h^0` on the blowup of the
//! plane at `r <= 7` general points.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{box_search, canonical_class, check_rank, DivisorClass};

/// Which family an exceptional curve belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveKind {
    /// Exceptional divisor over a point.
    E,
    /// Line through two points.
    F,
    /// Conic through five points.
    G,
    /// Cubic through all seven points, singular at one.
    H,
}

/// Name of an exceptional curve: `e1`, `f12`, `g`/`g3`/`g12`, `h1`.
///
/// For `G` the indices are the points the conic misses.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveLabel {
    pub kind: CurveKind,
    pub indices: Vec<u8>,
}

impl CurveLabel {
    pub fn e(i: u8) -> Self {
        Self { kind: CurveKind::E, indices: vec![i] }
    }

    pub fn f(i: u8, j: u8) -> Self {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Self { kind: CurveKind::F, indices: vec![a, b] }
    }

    pub fn g(missed: &[u8]) -> Self {
        let mut v = missed.to_vec();
        v.sort_unstable();
        Self { kind: CurveKind::G, indices: v }
    }

    pub fn h(i: u8) -> Self {
        Self { kind: CurveKind::H, indices: vec![i] }
    }

    /// Whether this label names a curve on the surface of rank `r`.
    pub fn legal_at(&self, r: usize) -> bool {
        let in_range = self.indices.iter().all(|&i| i >= 1 && (i as usize) <= r);
        let sorted_distinct = self.indices.windows(2).all(|w| w[0] < w[1]);
        in_range
            && sorted_distinct
            && match self.kind {
                CurveKind::E => self.indices.len() == 1,
                CurveKind::F => self.indices.len() == 2,
                CurveKind::G => r >= 5 && self.indices.len() == r - 5,
                CurveKind::H => r >= 7 && self.indices.len() == 1,
            }
    }

    /// The class this label stands for at rank `r`.
    pub fn class(&self, r: usize) -> Result<DivisorClass> {
        if !self.legal_at(r) {
            return Err(Error::UnknownLabel(format!("{self} at rank {r}")));
        }
        let mut c = vec![0i64; r + 1];
        match self.kind {
            CurveKind::E => c[self.indices[0] as usize] = 1,
            CurveKind::F => {
                c[0] = 1;
                for &i in &self.indices {
                    c[i as usize] = -1;
                }
            }
            CurveKind::G => {
                c[0] = 2;
                for (i, ci) in c.iter_mut().enumerate().skip(1) {
                    if !self.indices.contains(&(i as u8)) {
                        *ci = -1;
                    }
                }
            }
            CurveKind::H => {
                c[0] = 3;
                for ci in c.iter_mut().skip(1) {
                    *ci = -1;
                }
                c[self.indices[0] as usize] = -2;
            }
        }
        DivisorClass::new(&c)
    }

    /// Reads off the label of an exceptional class, if it has one of the
    /// four standard shapes.
    pub fn classify(d: &DivisorClass) -> Option<Self> {
        let r = d.rank();
        let e = &d.coeffs()[1..];
        let idx = |pred: &dyn Fn(i64) -> bool| -> Vec<u8> {
            e.iter()
                .enumerate()
                .filter(|(_, &v)| pred(v))
                .map(|(i, _)| i as u8 + 1)
                .collect()
        };
        let label = match d.l_coeff() {
            0 => {
                let ones = idx(&|v| v == 1);
                let rest = idx(&|v| v != 0 && v != 1);
                (ones.len() == 1 && rest.is_empty() && e.iter().filter(|&&v| v != 0).count() == 1)
                    .then(|| Self::e(ones[0]))
            }
            1 => {
                let m = idx(&|v| v == -1);
                (m.len() == 2 && e.iter().filter(|&&v| v != 0).count() == 2)
                    .then(|| Self::f(m[0], m[1]))
            }
            2 => {
                let m = idx(&|v| v == -1);
                let zero = idx(&|v| v == 0);
                (m.len() == 5 && m.len() + zero.len() == r).then(|| Self::g(&zero))
            }
            3 => {
                let two = idx(&|v| v == -2);
                let one = idx(&|v| v == -1);
                (r == 7 && two.len() == 1 && one.len() == 6).then(|| Self::h(two[0]))
            }
            _ => None,
        }?;
        label.legal_at(r).then_some(label)
    }
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            CurveKind::E => 'e',
            CurveKind::F => 'f',
            CurveKind::G => 'g',
            CurveKind::H => 'h',
        };
        write!(f, "{c}")?;
        for i in &self.indices {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl FromStr for CurveLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownLabel(s.to_string());
        let mut chars = s.chars();
        let kind = match chars.next().ok_or_else(bad)? {
            'e' => CurveKind::E,
            'f' => CurveKind::F,
            'g' => CurveKind::G,
            'h' => CurveKind::H,
            _ => return Err(bad()),
        };
        let indices = chars
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self { kind, indices })
    }
}

impl Serialize for CurveLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CurveLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalCurve {
    pub label: CurveLabel,
    pub class: DivisorClass,
}

/// Output of [`SurfaceModel::nef_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefReport {
    pub is_nef: bool,
    /// Minimum of `d . C` over all exceptional curves.
    pub m_d: i64,
    /// Indices of curves with `d . C = 0`, in canonical order.
    pub contracted: Vec<usize>,
}

/// Result of stripping off negative curves until a nef class is reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// `Some(P)` when the class is effective; `P` is its nef part.
    pub nef_part: Option<DivisorClass>,
    /// Curves removed, in removal order (with repetition).
    pub fixed: Vec<usize>,
}

#[derive(Serialize)]
struct CurveRow<'a> {
    index: usize,
    label: &'a CurveLabel,
    class: &'a DivisorClass,
}

/// The exceptional curves of one surface, in canonical order, with their
/// pairwise intersection numbers cached.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    rank: usize,
    curves: Vec<ExceptionalCurve>,
    index: HashMap<CurveLabel, usize>,
    by_class: HashMap<DivisorClass, usize>,
    products: Vec<i64>,
    canonical: DivisorClass,
}

/// Builds the surface model at rank `r` by exhaustive search of the
/// coefficient box.
pub fn enumerate_exceptional(r: usize) -> Result<SurfaceModel> {
    SurfaceModel::new(r)
}

impl SurfaceModel {
    pub fn new(r: usize) -> Result<Self> {
        check_rank(r)?;
        let mut curves = box_search(r, -1, 1)
            .into_iter()
            .map(|class| {
                let label = CurveLabel::classify(&class).ok_or_else(|| {
                    Error::Internal(format!("exceptional class {class} has no standard label"))
                })?;
                Ok(ExceptionalCurve { label, class })
            })
            .collect::<Result<Vec<_>>>()?;
        curves.sort_by(|a, b| a.label.cmp(&b.label));
        let n = curves.len();
        let mut products = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                products[i * n + j] = curves[i].class.dot(&curves[j].class);
            }
        }
        let index = curves
            .iter()
            .enumerate()
            .map(|(i, c)| (c.label.clone(), i))
            .collect();
        let by_class = curves.iter().enumerate().map(|(i, c)| (c.class, i)).collect();
        Ok(Self {
            rank: r,
            curves,
            index,
            by_class,
            products,
            canonical: canonical_class(r)?,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curves(&self) -> &[ExceptionalCurve] {
        &self.curves
    }

    pub fn curve(&self, i: usize) -> &ExceptionalCurve {
        &self.curves[i]
    }

    pub fn class(&self, i: usize) -> DivisorClass {
        self.curves[i].class
    }

    pub fn label(&self, i: usize) -> &CurveLabel {
        &self.curves[i].label
    }

    pub fn canonical(&self) -> DivisorClass {
        self.canonical
    }

    pub fn anticanonical(&self) -> DivisorClass {
        -self.canonical
    }

    pub fn index_of(&self, label: &CurveLabel) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(format!("{label} at rank {}", self.rank)))
    }

    pub fn index_of_str(&self, label: &str) -> Result<usize> {
        self.index_of(&label.parse()?)
    }

    /// Index of the exceptional curve with this class, if any.
    pub fn find_class(&self, d: &DivisorClass) -> Option<usize> {
        self.by_class.get(d).copied()
    }

    /// `C_i . C_j` from the cached table.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> i64 {
        self.products[i * self.curves.len() + j]
    }

    /// `d . C` for every curve, in canonical order.
    pub fn products_with(&self, d: &DivisorClass) -> Result<Vec<i64>> {
        self.curves.iter().map(|c| d.try_dot(&c.class)).collect()
    }

    fn check(&self, d: &DivisorClass) -> Result<()> {
        if d.rank() == self.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: d.rank(),
                right: self.rank,
            })
        }
    }

    /// Index of `-K - C_i`; only meaningful at rank 7.
    pub fn dual_index(&self, i: usize) -> Result<usize> {
        if self.rank != 7 {
            return Err(Error::UnsupportedRank {
                op: "dual",
                rank: self.rank,
            });
        }
        let d = self.anticanonical() - self.class(i);
        self.find_class(&d)
            .ok_or_else(|| Error::Internal(format!("dual of {} missing", self.label(i))))
    }

    pub fn dual(&self, c: &ExceptionalCurve) -> Result<&ExceptionalCurve> {
        let i = self.index_of(&c.label)?;
        Ok(self.curve(self.dual_index(i)?))
    }

    pub fn nef_report(&self, d: &DivisorClass) -> Result<NefReport> {
        self.check(d)?;
        let prods = self.products_with(d)?;
        let m_d = prods.iter().copied().min().unwrap_or(0);
        let contracted = prods
            .iter()
            .enumerate()
            .filter(|(_, &p)| p == 0)
            .map(|(i, _)| i)
            .collect();
        Ok(NefReport {
            is_nef: m_d >= 0,
            m_d,
            contracted,
        })
    }

    pub fn is_nef(&self, d: &DivisorClass) -> bool {
        self.curves.iter().all(|c| d.dot(&c.class) >= 0)
    }

    /// Fixed-part reduction with a caller-chosen negative curve at each step.
    /// `choose` receives the indices of all curves meeting the current class
    /// negatively and returns one of them.
    pub fn reduce_with(
        &self,
        d: &DivisorClass,
        mut choose: impl FnMut(&[usize]) -> usize,
    ) -> Result<Reduction> {
        self.check(d)?;
        let mut cur = *d;
        let mut fixed = Vec::new();
        loop {
            let deg = cur.anticanonical_degree();
            if deg < 0 {
                return Ok(Reduction { nef_part: None, fixed });
            }
            let negative: Vec<usize> = (0..self.len())
                .filter(|&i| cur.try_dot(&self.curves[i].class).map_or(false, |p| p < 0))
                .collect();
            if negative.is_empty() {
                return Ok(Reduction {
                    nef_part: Some(cur),
                    fixed,
                });
            }
            // a nonzero class of anticanonical degree 0 is never effective
            if deg == 0 {
                return Ok(Reduction { nef_part: None, fixed });
            }
            let pick = choose(&negative);
            if !negative.contains(&pick) {
                return Err(Error::Contract(format!(
                    "chooser returned {pick}, which does not meet {cur} negatively"
                )));
            }
            fixed.push(pick);
            cur = cur.checked_sub(&self.curves[pick].class)?;
        }
    }

    /// Fixed-part reduction taking the first negative curve in canonical
    /// order.
    pub fn reduce(&self, d: &DivisorClass) -> Result<Reduction> {
        self.reduce_with(d, |neg| neg[0])
    }

    pub fn is_effective(&self, d: &DivisorClass) -> Result<bool> {
        Ok(self.reduce(d)?.nef_part.is_some())
    }

    /// `h^0` from Riemann-Roch applied to the nef part.
    pub fn h0(&self, d: &DivisorClass) -> Result<i64> {
        match self.reduce(d)?.nef_part {
            None => Ok(0),
            Some(p) => Ok(1 + (p.self_intersection() - p.dot(&self.canonical)) / 2),
        }
    }

    /// If `f` (nef, effective, nonzero) has `f^2 = 0`, returns `(m, q)` with
    /// `f = m q` and `q` a conic class.
    pub fn conic_structure(&self, f: &DivisorClass) -> Result<Option<(i64, DivisorClass)>> {
        self.check(f)?;
        if f.is_zero() || !self.is_nef(f) {
            return Err(Error::Contract(format!(
                "{f} must be nonzero and nef"
            )));
        }
        if f.self_intersection() != 0 {
            return Ok(None);
        }
        let g = f
            .coeffs()
            .iter()
            .fold(0i64, |acc, &c| num_integer::gcd(acc, c));
        let q = DivisorClass::new(&f.coeffs().iter().map(|c| c / g).collect::<Vec<_>>())?;
        if !is_conic_class(&q) {
            return Err(Error::Internal(format!(
                "{f} has square zero but {q} is not a conic class"
            )));
        }
        Ok(Some((g, q)))
    }

    /// All unordered pairs `{A, B}` of curves with `A + B = d`, each reported
    /// as `(i, j)` with `i <= j`.
    pub fn pair_decompositions(&self, d: &DivisorClass) -> Result<Vec<(usize, usize)>> {
        self.check(d)?;
        let mut out = Vec::new();
        for i in 0..self.len() {
            let rest = d.checked_sub(&self.class(i))?;
            if let Some(j) = self.find_class(&rest) {
                if i <= j {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }

    /// Ways of writing the conic class `q` as a sum of two curves.
    pub fn conic_decompositions(&self, q: &DivisorClass) -> Result<Vec<(usize, usize)>> {
        self.check(q)?;
        if !is_conic_class(q) {
            return Err(Error::Contract(format!("{q} is not a conic class")));
        }
        self.pair_decompositions(q)
    }

    /// Ways of writing a nef class of anticanonical degree 2 as a sum of two
    /// curves.
    pub fn degree2_nef_decompose(&self, d: &DivisorClass) -> Result<Vec<(usize, usize)>> {
        self.check(d)?;
        if d.anticanonical_degree() != 2 || !self.is_nef(d) {
            return Err(Error::Contract(format!(
                "{d} must be nef of anticanonical degree 2"
            )));
        }
        let pairs = self.pair_decompositions(d)?;
        if pairs.is_empty() {
            return Err(Error::Internal(format!("{d} has no two-curve decomposition")));
        }
        Ok(pairs)
    }

    /// The curve table as JSON: `[{"index", "label", "class"}, ...]`.
    pub fn curve_table_json(&self) -> serde_json::Value {
        let rows: Vec<CurveRow<'_>> = self
            .curves
            .iter()
            .enumerate()
            .map(|(index, c)| CurveRow {
                index,
                label: &c.label,
                class: &c.class,
            })
            .collect();
        serde_json::to_value(rows).expect("curve table serializes")
    }
}

/// `-K . q = 2` and `q^2 = 0`.
pub fn is_conic_class(q: &DivisorClass) -> bool {
    q.anticanonical_degree() == 2 && q.self_intersection() == 0
}
