//! Ternary forms as coefficient vectors, and multiplicity conditions.
//!
//! Monomials of degree `d` are ordered by decreasing power of `x`, then of
//! `y`: `x^d, x^{d-1}y, x^{d-1}z, x^{d-2}y^2, ...`.

use crate::scalar::Field;

pub type Exponent = [u32; 3];

/// Number of monomials of degree `d`.
pub fn monomial_count(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) / 2
}

/// Monomials of degree `d` in canonical order.
pub fn monomials(d: u32) -> Vec<Exponent> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Position of `x^a y^b z^c` in [`monomials`] of its degree.
#[inline]
pub fn monomial_index(e: Exponent) -> usize {
    let d = (e[0] + e[1] + e[2]) as usize;
    let rest = d - e[0] as usize;
    rest * (rest + 1) / 2 + (rest - e[1] as usize)
}

/// Product of a degree-`da` form and a degree-`db` form.
pub fn multiply<F: Field>(a: &[F], da: u32, b: &[F], db: u32) -> Vec<F> {
    let mut out = vec![F::zero(); monomial_count(da + db)];
    let ma = monomials(da);
    let mb = monomials(db);
    for (x, ea) in a.iter().zip(&ma) {
        if x.is_zero() {
            continue;
        }
        for (y, eb) in b.iter().zip(&mb) {
            if y.is_zero() {
                continue;
            }
            let k = monomial_index([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
            out[k] = out[k].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|t| (n - t) as i64).product()
}

/// Rows expressing "multiplicity at least `m` at `p`" on degree-`d` forms:
/// every partial derivative of order below `m` in the two coordinates other
/// than a nonzero one vanishes at `p`.
pub fn multiplicity_conditions<F: Field>(p: &[i64; 3], m: u32, d: u32) -> Vec<Vec<F>> {
    let chart = p.iter().position(|&c| c != 0).expect("nonzero point");
    let (u, v) = match chart {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mons = monomials(d);
    let mut rows = Vec::new();
    for order in 0..m.min(d + 1) {
        for i in 0..=order {
            let j = order - i;
            let row = mons
                .iter()
                .map(|e| {
                    if e[u] < i || e[v] < j {
                        return F::zero();
                    }
                    let mut ex = *e;
                    ex[u] -= i;
                    ex[v] -= j;
                    let mut val = F::from_i64(falling(e[u], i) * falling(e[v], j));
                    for (k, &pk) in p.iter().enumerate() {
                        for _ in 0..ex[k] {
                            val = val * F::from_i64(pk);
                        }
                    }
                    val
                })
                .collect();
            rows.push(row);
        }
    }
    rows
}

/// Scales `f` so that its first nonzero coefficient is 1.
pub fn normalize<F: Field>(mut f: Vec<F>) -> Vec<F> {
    if let Some(lead) = f.iter().find(|v| !v.is_zero()).cloned() {
        let inv = lead.inv().expect("nonzero");
        for v in &mut f {
            *v = v.clone() * inv.clone();
        }
    }
    f
}
