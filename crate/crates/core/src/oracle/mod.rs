//! Interpolation oracle: graded pieces of the Cox ring as spaces of plane
//! forms with prescribed multiplicities at explicit points.
//!
//! A class `dL + sum a_i E_i` is realized by forms of degree `d` with
//! multiplicity at least `max(-a_i, 0)` at `p_i`. Products of sections are
//! products of forms, so ranks of multiplication maps reduce to ranks of
//! coefficient matrices.

pub mod forms;
pub mod points;

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::curves::{ExceptionalCurve, SurfaceModel};
use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::linalg::{apply, coordinates, kernel_basis, rank_mod_p, rank_with_ceiling, Matrix};
use crate::scalar::{Field, Fp, PRIME};

use forms::{monomial_count, multiplicity_conditions, multiply, normalize};
pub use points::{check_general_position, PointConfiguration, STANDARD_POINTS};

/// Degree-`degree` forms satisfying the multiplicity conditions of a class.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneFormBasis<F> {
    /// Plane degree; negative degrees have the empty basis.
    pub degree: i64,
    pub mults: Vec<u32>,
    /// One coefficient vector per basis form.
    pub forms: Vec<Vec<F>>,
}

impl<F> PlaneFormBasis<F> {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }
}

/// The distinguished section of an exceptional curve.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionModel<F> {
    pub curve: ExceptionalCurve,
    pub degree: u32,
    pub form: Vec<F>,
}

/// Monomials in a degree, their span, and the relations among them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdealDim {
    pub monomial_count: usize,
    pub rank: usize,
    pub ideal_dim: usize,
}

/// First homology of the degree-`D` strand
/// `A_2 -> A_1 -> A_0` of the Koszul complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulStrandReport {
    pub divisor: DivisorClass,
    pub rank: usize,
    pub dims: [usize; 3],
    pub rank_d1: usize,
    pub rank_d2: usize,
    pub b1: usize,
    pub seed: Option<u64>,
    pub arithmetic: &'static str,
    /// How the ranks were obtained.
    pub ranks_by: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

/// Outcome of the dual-pair products check at rank 7.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionsReport {
    pub seed: Option<u64>,
    pub arithmetic: &'static str,
    pub products: usize,
    pub full_rank: usize,
    pub subsets_checked: usize,
    pub subsets_of_rank_3: usize,
    pub holds: bool,
}

/// Interpolation dimension of a class, pinned between two bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionCertificate {
    pub divisor: DivisorClass,
    pub lattice_h0: i64,
    /// Expected count for the nef part; a lower bound.
    pub lower: usize,
    /// Kernel dimension modulo `p`; an upper bound.
    pub upper: usize,
    pub dimension: usize,
    pub method: &'static str,
}

impl DimensionCertificate {
    pub fn agrees(&self) -> bool {
        self.dimension as i64 == self.lattice_h0
    }
}

pub struct CoxOracle<F: Field> {
    points: PointConfiguration,
    model: SurfaceModel,
    sections: Vec<SectionModel<F>>,
    cache: Mutex<HashMap<DivisorClass, Arc<PlaneFormBasis<F>>>>,
}

impl<F: Field> CoxOracle<F> {
    pub fn new(points: PointConfiguration) -> Result<Self> {
        let model = SurfaceModel::new(points.rank())?;
        let mut oracle = CoxOracle {
            points,
            model,
            sections: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        };
        let sections = oracle
            .model
            .curves()
            .iter()
            .map(|c| oracle.distinguished_section(c))
            .collect::<Result<Vec<_>>>()?;
        oracle.sections = sections;
        Ok(oracle)
    }

    /// Oracle on the standard points extended with seeded random points.
    pub fn standard(rank: usize, seed: u64) -> Result<Self> {
        Self::new(PointConfiguration::standard(rank, seed)?)
    }

    pub fn points(&self) -> &PointConfiguration {
        &self.points
    }

    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    pub fn sections(&self) -> &[SectionModel<F>] {
        &self.sections
    }

    fn check(&self, d: &DivisorClass) -> Result<()> {
        if d.rank() != self.model.rank() {
            return Err(Error::RankMismatch {
                left: d.rank(),
                right: self.model.rank(),
            });
        }
        Ok(())
    }

    /// Plane degree, multiplicities and condition rows of a class, or `None`
    /// for negative degree.
    fn conditions<G: Field>(&self, d: &DivisorClass) -> Option<(u32, Vec<u32>, Matrix<G>)> {
        let deg = u32::try_from(d.l_coeff()).ok()?;
        let mults: Vec<u32> = (1..=self.model.rank())
            .map(|i| (-d.e_coeff(i)).max(0) as u32)
            .collect();
        let rows = self
            .points
            .points()
            .iter()
            .zip(&mults)
            .flat_map(|(p, &m)| multiplicity_conditions::<G>(p, m, deg))
            .collect();
        Some((deg, mults, rows))
    }

    /// Forms realizing `H^0(D)`. Cached per class.
    pub fn component_basis(&self, d: &DivisorClass) -> Result<Arc<PlaneFormBasis<F>>> {
        self.check(d)?;
        if let Some(b) = self.cache.lock().expect("cache lock").get(d) {
            return Ok(Arc::clone(b));
        }
        let basis = match self.conditions::<F>(d) {
            None => PlaneFormBasis {
                degree: d.l_coeff(),
                mults: Vec::new(),
                forms: Vec::new(),
            },
            Some((deg, mults, rows)) => PlaneFormBasis {
                degree: deg as i64,
                mults,
                forms: kernel_basis(&rows, monomial_count(deg)),
            },
        };
        let basis = Arc::new(basis);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(*d, Arc::clone(&basis));
        Ok(basis)
    }

    /// True iff `form` (of the class's plane degree) satisfies the
    /// multiplicity conditions of `d`.
    pub fn in_component(&self, d: &DivisorClass, form: &[F]) -> bool {
        match self.conditions::<F>(d) {
            None => form.iter().all(F::is_zero),
            Some((deg, _, rows)) => {
                form.len() == monomial_count(deg) && apply(&rows, form).iter().all(F::is_zero)
            }
        }
    }

    /// The unique form, up to scale, cutting out `c`; first coefficient 1.
    pub fn distinguished_section(&self, c: &ExceptionalCurve) -> Result<SectionModel<F>> {
        let b = self.component_basis(&c.class)?;
        if b.dim() != 1 {
            return Err(Error::GeneralPosition(format!(
                "{} has {} independent forms instead of one",
                c.label,
                b.dim()
            )));
        }
        Ok(SectionModel {
            curve: c.clone(),
            degree: b.degree as u32,
            form: normalize(b.forms[0].clone()),
        })
    }

    /// Product of the distinguished forms of a multiset of curves.
    pub fn evaluate(&self, monomial: &[usize]) -> (u32, Vec<F>) {
        monomial
            .iter()
            .fold((0, vec![F::one()]), |(deg, f), &i| {
                let s = &self.sections[i];
                (deg + s.degree, multiply(&f, deg, &s.form, s.degree))
            })
    }

    /// Monomials in `d`, their rank among the forms of `d`, and the number of
    /// independent relations.
    pub fn ideal_dim(&self, d: &DivisorClass) -> Result<IdealDim> {
        let monos = monomials_of_multidegree(d, &self.model)?;
        let basis = self.component_basis(d)?;
        let mut rows = Vec::with_capacity(monos.len());
        for m in &monos {
            let (_, f) = self.evaluate(m);
            if !self.in_component(d, &f) {
                return Err(Error::Internal(format!(
                    "monomial {m:?} evaluates outside the forms of {d}"
                )));
            }
            rows.push(f);
        }
        let rank = rank_with_ceiling(rows, basis.dim());
        Ok(IdealDim {
            monomial_count: monos.len(),
            rank,
            ideal_dim: monos.len() - rank,
        })
    }

    /// Builds the strand `A_2 -> A_1 -> A_0` in degree `d` and reports
    /// `b_1 = dim ker d_1 - rank d_2`.
    pub fn koszul_b1(&self, d: &DivisorClass) -> Result<KoszulStrandReport> {
        self.check(d)?;
        let n = self.model.len();
        let a0 = self.component_basis(d)?;

        // A_1 summands with their offset in the ambient coefficient space
        let mut slot_of = vec![None; n];
        let mut slots = Vec::new();
        let mut ambient = 0;
        for c in 0..n {
            let b = self.component_basis(&d.checked_sub(&self.model.class(c))?)?;
            if b.dim() > 0 {
                slot_of[c] = Some(slots.len());
                slots.push((c, ambient, b.clone()));
                ambient += monomial_count(b.degree as u32);
            }
        }
        let a1: usize = slots.iter().map(|s| s.2.dim()).sum();

        let mut d1 = Vec::with_capacity(a1);
        for (c, _, b) in &slots {
            let sec = &self.sections[*c];
            for s in &b.forms {
                d1.push(multiply(s, b.degree as u32, &sec.form, sec.degree));
            }
        }

        let mut d2 = Vec::new();
        for (i, &(c, off_c, _)) in slots.iter().enumerate() {
            for &(c2, off_c2, _) in &slots[i + 1..] {
                let pair = d
                    .checked_sub(&self.model.class(c))?
                    .checked_sub(&self.model.class(c2))?;
                let b = self.component_basis(&pair)?;
                for s in &b.forms {
                    let deg = b.degree as u32;
                    let (sc, sc2) = (&self.sections[c], &self.sections[c2]);
                    let mut v = vec![F::zero(); ambient];
                    for (k, x) in multiply(s, deg, &sc.form, sc.degree).into_iter().enumerate() {
                        v[off_c2 + k] = x;
                    }
                    for (k, x) in multiply(s, deg, &sc2.form, sc2.degree).into_iter().enumerate() {
                        v[off_c + k] = -x;
                    }
                    d2.push(v);
                }
            }
        }
        self.check_complex(d, &slots, &d2)?;
        let a2 = d2.len();

        let (rank_d1, rank_d2, ranks_by) = if F::MODULAR {
            (F::rank(d1), F::rank(d2), "elimination over the prime field")
        } else {
            match (rank_mod_p(&d1), rank_mod_p(&d2)) {
                (Some(r1), Some(r2)) if r1 + r2 == a1 => (r1, r2, "reduction mod p, certified"),
                _ => (
                    rank_with_ceiling(d1, a0.dim().min(a1)),
                    F::rank(d2),
                    "exact elimination",
                ),
            }
        };
        if rank_d1 + rank_d2 > a1 {
            return Err(Error::Internal(format!(
                "strand of {d}: rank d1 + rank d2 = {} exceeds dim A1 = {a1}",
                rank_d1 + rank_d2
            )));
        }
        Ok(KoszulStrandReport {
            divisor: *d,
            rank: self.model.rank(),
            dims: [a0.dim(), a1, a2],
            rank_d1,
            rank_d2,
            b1: a1 - rank_d1 - rank_d2,
            seed: self.points.seed(),
            arithmetic: F::NAME,
            ranks_by,
            caveat: F::MODULAR.then(|| {
                format!("ranks over F_{PRIME} are lower bounds for ranks over the rationals")
            }),
        })
    }

    /// `d_1(d_2(v)) = 0` for every column of `d_2`.
    fn check_complex(
        &self,
        d: &DivisorClass,
        slots: &[(usize, usize, Arc<PlaneFormBasis<F>>)],
        d2: &[Vec<F>],
    ) -> Result<()> {
        let Some(deg) = u32::try_from(d.l_coeff()).ok() else {
            return Ok(());
        };
        for v in d2 {
            let mut total = vec![F::zero(); monomial_count(deg)];
            for (c, off, b) in slots {
                let len = monomial_count(b.degree as u32);
                let part = &v[*off..off + len];
                if part.iter().all(F::is_zero) {
                    continue;
                }
                let sec = &self.sections[*c];
                for (t, x) in total
                    .iter_mut()
                    .zip(multiply(part, b.degree as u32, &sec.form, sec.degree))
                {
                    *t = t.clone() + x;
                }
            }
            if !total.iter().all(F::is_zero) {
                return Err(Error::Internal(format!("d1 d2 != 0 in the strand of {d}")));
            }
        }
        Ok(())
    }

    /// The 28 products of dual pairs span `H^0(-K)` and every 27 of them
    /// still do. Rank 7 only.
    pub fn verify_27_sections(&self) -> Result<SectionsReport> {
        if self.model.rank() != 7 {
            return Err(Error::UnsupportedRank {
                op: "verify_27_sections",
                rank: self.model.rank(),
            });
        }
        let ak = self.model.anticanonical();
        let basis = self.component_basis(&ak)?;
        let mut vectors = Vec::new();
        for i in 0..self.model.len() {
            let j = self.model.dual_index(i)?;
            if i > j {
                continue;
            }
            let (_, f) = self.evaluate(&[i, j]);
            let coords = coordinates(&basis.forms, &f).ok_or_else(|| {
                Error::Internal(format!(
                    "product of {} and its dual lies outside H0(-K)",
                    self.model.label(i)
                ))
            })?;
            vectors.push(coords);
        }
        let full_rank = F::rank(vectors.clone());
        let good = (0..vectors.len())
            .filter(|&skip| {
                let rest: Matrix<F> = vectors
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, v)| v.clone())
                    .collect();
                F::rank(rest) == 3
            })
            .count();
        Ok(SectionsReport {
            seed: self.points.seed(),
            arithmetic: F::NAME,
            products: vectors.len(),
            full_rank,
            subsets_checked: vectors.len(),
            subsets_of_rank_3: good,
            holds: vectors.len() == 28 && full_rank == 3 && good == 28,
        })
    }

    /// Dimension of the forms of `d`, squeezed between the expected count
    /// of its nef part and the kernel dimension mod `p`. Falls back to
    /// elimination over `F` when the bounds differ.
    pub fn certified_h0(&self, d: &DivisorClass) -> Result<DimensionCertificate> {
        self.check(d)?;
        let lattice_h0 = self.model.h0(d)?;
        let lower = match self.model.reduce(d)?.nef_part {
            None => 0,
            Some(p) => match self.conditions::<Fp>(&p) {
                None => 0,
                Some((deg, _, rows)) => monomial_count(deg).saturating_sub(rows.len()),
            },
        };
        let (upper, dimension, method) = match self.conditions::<Fp>(d) {
            None => (0, 0, "negative degree"),
            Some((deg, _, rows)) => {
                let cols = monomial_count(deg);
                let upper = cols - crate::linalg::gauss_rank(rows);
                if upper == lower {
                    (upper, upper, "bounds meet")
                } else {
                    let (_, _, exact) = self.conditions::<F>(d).expect("nonnegative degree");
                    (upper, cols - F::rank(exact), "elimination")
                }
            }
        };
        Ok(DimensionCertificate {
            divisor: *d,
            lattice_h0,
            lower,
            upper,
            dimension,
            method,
        })
    }

    /// Classes of anticanonical degree 2 carrying at least one monomial.
    pub fn degree_two_classes(&self) -> Vec<DivisorClass> {
        let n = self.model.len();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let c = self.model.class(i) + self.model.class(j);
                if seen.insert(c) {
                    out.push(c);
                }
            }
        }
        out.sort_by(DivisorClass::canonical_cmp);
        out
    }
}

/// All multisets of curves (as sorted index lists) whose classes sum to `d`.
/// Each has exactly `-K.d` members.
pub fn monomials_of_multidegree(
    d: &DivisorClass,
    model: &SurfaceModel,
) -> Result<Vec<Vec<usize>>> {
    fn go(
        model: &SurfaceModel,
        rem: DivisorClass,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        dead: &mut HashSet<(DivisorClass, usize)>,
    ) -> Result<bool> {
        if rem.anticanonical_degree() == 0 {
            let hit = rem.coeffs().iter().all(|&v| v == 0);
            if hit {
                out.push(cur.clone());
            }
            return Ok(hit);
        }
        if dead.contains(&(rem, start)) {
            return Ok(false);
        }
        let mut found = false;
        for i in start..model.len() {
            let next = rem.checked_sub(&model.class(i))?;
            if !model.is_effective(&next)? {
                continue;
            }
            cur.push(i);
            found |= go(model, next, i, cur, out, dead)?;
            cur.pop();
        }
        if !found {
            dead.insert((rem, start));
        }
        Ok(found)
    }
    if d.rank() != model.rank() {
        return Err(Error::RankMismatch {
            left: d.rank(),
            right: model.rank(),
        });
    }
    let mut out = Vec::new();
    if d.anticanonical_degree() < 0 || !model.is_effective(d)? {
        return Ok(out);
    }
    go(model, *d, 0, &mut Vec::new(), &mut out, &mut HashSet::new())?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ExactOracle, ModularOracle, Rational};
    use num_traits::{One, Zero};

    fn cls(v: &[i64]) -> DivisorClass {
        DivisorClass::new(v).unwrap()
    }

    fn label_sets(o: &ExactOracle, monos: &[Vec<usize>]) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = monos
            .iter()
            .map(|m| m.iter().map(|&i| o.model().label(i).to_string()).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn distinguished_forms_at_the_standard_points() {
        let o = ExactOracle::standard(4, 0).unwrap();
        let m = o.model();
        let f12 = &o.sections()[m.index_of_str("f12").unwrap()];
        assert_eq!(f12.degree, 1);
        assert_eq!(f12.form, vec![Rational::from_i64(0), Rational::from_i64(0), Rational::from_i64(1)]);
        let e3 = &o.sections()[m.index_of_str("e3").unwrap()];
        assert_eq!((e3.degree, e3.form.clone()), (0, vec![Rational::from_i64(1)]));
        for s in o.sections() {
            assert!(o.in_component(&s.curve.class, &s.form));
            assert!(s.form.iter().find(|v| !v.is_zero()).unwrap().is_one());
        }
    }

    #[test]
    fn nodal_cubic_is_unique() {
        let o = ExactOracle::standard(7, 3).unwrap();
        let h1 = o.model().index_of_str("h1").unwrap();
        let (deg, _, rows) = o.conditions::<Rational>(&o.model().class(h1)).unwrap();
        assert_eq!((deg, rows.len()), (3, 9));
        assert_eq!(Rational::rank(rows), 9);
        assert_eq!(o.sections()[h1].form.len(), 10);
    }

    #[test]
    fn component_dimensions() {
        for r in 2..=7 {
            let o = ModularOracle::standard(r, 1).unwrap();
            let mut l = vec![0; r + 1];
            l[0] = 1;
            assert_eq!(o.component_basis(&cls(&l)).unwrap().dim(), 3);
        }
        let o = ExactOracle::standard(7, 1).unwrap();
        assert_eq!(o.component_basis(&o.model().anticanonical()).unwrap().dim(), 3);
        let o = ExactOracle::standard(4, 1).unwrap();
        assert_eq!(o.component_basis(&cls(&[2, -1, -1, -1, -1])).unwrap().dim(), 2);
        assert_eq!(o.component_basis(&cls(&[-1, 0, 0, 0, 0])).unwrap().dim(), 0);
    }

    #[test]
    fn monomials_in_small_degrees() {
        let o = ExactOracle::standard(4, 0).unwrap();
        let q = monomials_of_multidegree(&cls(&[2, -1, -1, -1, -1]), o.model()).unwrap();
        assert_eq!(
            label_sets(&o, &q),
            vec![vec!["f12", "f34"], vec!["f13", "f24"], vec!["f14", "f23"]]
        );
        let l = monomials_of_multidegree(&cls(&[1, -1, 0, 0, 0]), o.model()).unwrap();
        assert_eq!(
            label_sets(&o, &l),
            vec![vec!["e2", "f12"], vec!["e3", "f13"], vec!["e4", "f14"]]
        );
        let m6 = SurfaceModel::new(6).unwrap();
        let t = monomials_of_multidegree(&m6.anticanonical(), &m6).unwrap();
        assert_eq!(t.len(), 45);
        assert!(t.iter().all(|m| m.len() == 3 && m[0] < m[1] && m[1] < m[2]));
        assert_eq!(
            monomials_of_multidegree(&DivisorClass::zero(6).unwrap(), &m6).unwrap(),
            vec![Vec::<usize>::new()]
        );
        assert!(monomials_of_multidegree(&cls(&[0, 1, -1, 0, 0, 0, 0]), &m6)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn ideal_dimensions() {
        let o = ExactOracle::standard(4, 0).unwrap();
        let want = IdealDim { monomial_count: 3, rank: 2, ideal_dim: 1 };
        assert_eq!(o.ideal_dim(&cls(&[2, -1, -1, -1, -1])).unwrap(), want);
        assert_eq!(o.ideal_dim(&cls(&[1, -1, 0, 0, 0])).unwrap(), want);
        let o6 = ExactOracle::standard(6, 0).unwrap();
        let ak = o6.model().anticanonical();
        let got = o6.ideal_dim(&ak).unwrap();
        assert_eq!((got.monomial_count, got.rank, got.ideal_dim), (45, 4, 41));
    }

    #[test]
    fn koszul_strands() {
        let o = ExactOracle::standard(4, 0).unwrap();
        let rep = o.koszul_b1(&cls(&[1, -1, 0, 0, 0])).unwrap();
        assert_eq!(rep.b1, 1);
        assert_eq!(rep.dims[0], 2);
        let o6 = ExactOracle::standard(6, 0).unwrap();
        let rep = o6.koszul_b1(&o6.model().anticanonical()).unwrap();
        assert_eq!(rep.b1, 0);
        assert_eq!(rep.dims, [4, 54, 135]);
        // an empty strand
        let rep = o6.koszul_b1(&cls(&[0, 1, -1, 0, 0, 0, 0])).unwrap();
        assert_eq!((rep.dims, rep.b1), ([0, 0, 0], 0));
    }

    #[test]
    fn degree_two_b1_counts_monomials() {
        for r in [3, 5] {
            let o = ExactOracle::standard(r, 2).unwrap();
            for d in o.degree_two_classes() {
                if !o.model().is_nef(&d) {
                    continue;
                }
                let monos = monomials_of_multidegree(&d, o.model()).unwrap().len();
                let h0 = o.model().h0(&d).unwrap() as usize;
                assert_eq!(o.koszul_b1(&d).unwrap().b1, monos - h0, "{d}");
            }
        }
    }

    #[test]
    fn prime_and_exact_agree() {
        let e = ExactOracle::standard(5, 7).unwrap();
        let p = ModularOracle::standard(5, 7).unwrap();
        let d = cls(&[3, -1, -1, -1, -1, 0]);
        let (a, b) = (e.koszul_b1(&d).unwrap(), p.koszul_b1(&d).unwrap());
        assert_eq!((a.dims, a.b1), (b.dims, b.b1));
        assert!(a.caveat.is_none() && b.caveat.is_some());
    }

    #[test]
    fn twenty_seven_sections() {
        let o = ExactOracle::standard(7, 11).unwrap();
        let rep = o.verify_27_sections().unwrap();
        assert!(rep.holds, "{rep:?}");
        assert_eq!((rep.products, rep.full_rank), (28, 3));
        assert!(ExactOracle::standard(6, 0).unwrap().verify_27_sections().is_err());
    }

    #[test]
    fn certified_dimensions_match_the_lattice() {
        let o = ExactOracle::standard(6, 5).unwrap();
        for v in [
            vec![3, -1, -1, -1, -1, -1, -1],
            vec![2, -2, -2, 0, 0, 0, 0],
            vec![0, 2, 0, 0, 0, 0, 0],
            vec![4, -3, 0, 0, 0, 0, 0],
            vec![1, -2, 0, 0, 0, 0, 0],
        ] {
            let c = o.certified_h0(&cls(&v)).unwrap();
            assert!(c.agrees(), "{c:?}");
            assert!(c.lower <= c.dimension && c.dimension <= c.upper);
        }
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let o = ModularOracle::standard(4, 0).unwrap();
        assert!(o.component_basis(&cls(&[1, 0, 0])).is_err());
    }
}
