//! Closed-form descriptions of the mass linear functions on the bundle
//! families, as spaces of coefficient vectors `gamma` with
//! `H = sum gamma_i eta_i` and `<H, c> = sum gamma_i k_i`.

use super::BundleD2Polygon;
use crate::error::{Error, Result};
use crate::kernel::{nullspace, rank, rref, MultiPoly, QVector, Rational};
use crate::masslinear::equivalence_classes;
use crate::measure;
use crate::polytope::HPolytope;

/// Spaces of coefficient vectors, one entry per facet. Both are stored as
/// reduced row echelon bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlSpace {
    pub mass_linear: Vec<QVector>,
    pub inessential: Vec<QVector>,
}

fn echelon(vs: Vec<QVector>) -> Vec<QVector> {
    if vs.is_empty() {
        return vs;
    }
    let r = rank(&vs);
    rref(&vs).0.into_iter().take(r).collect()
}

fn spans(basis: &[QVector], v: &[Rational]) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    rank(&rows) == basis.len()
}

impl MlSpace {
    fn from_constraints(n: usize, ml: &[QVector], extra: &[QVector]) -> MlSpace {
        let mass_linear = echelon(nullspace(ml, n));
        let mut all = ml.to_vec();
        all.extend_from_slice(extra);
        MlSpace { mass_linear, inessential: echelon(nullspace(&all, n)) }
    }

    pub fn contains(&self, gamma: &[Rational]) -> bool {
        spans(&self.mass_linear, gamma)
    }

    pub fn contains_inessential(&self, gamma: &[Rational]) -> bool {
        spans(&self.inessential, gamma)
    }

    /// Whether some mass linear function is essential.
    pub fn has_essential(&self) -> bool {
        self.mass_linear.len() > self.inessential.len()
    }
}

/// `sum gamma_i eta_i`.
pub fn functional_from_gamma(p: &HPolytope, gamma: &[Rational]) -> QVector {
    let mut h = vec![Rational::zero(); p.dim()];
    for (g, eta) in gamma.iter().zip(p.etas()) {
        for (x, e) in h.iter_mut().zip(eta) {
            *x += g * e;
        }
    }
    h
}

fn row(n: usize, entries: &[(usize, i64)]) -> QVector {
    let mut r = vec![Rational::zero(); n];
    for &(i, v) in entries {
        r[i] += Rational::from(v);
    }
    r
}

/// Mass linear functions on the `Delta_k` bundle over `Delta_1` with twist `a`,
/// facet order `F1..F{k+1}, G1, G2`.
pub fn ml_space_yk(a: &[i64]) -> MlSpace {
    let k = a.len();
    let n = k + 3;
    let ml = vec![
        row(n, &[(k + 1, 1), (k + 2, 1)]),
        row(n, &(0..=k).map(|i| (i, 1)).collect::<Vec<_>>()),
        row(n, &a.iter().enumerate().map(|(i, &ai)| (i, ai)).collect::<Vec<_>>()),
    ];
    // fiber facets sharing a twist value form a class; F{k+1} has twist 0
    let mut values: Vec<i64> = a.to_vec();
    values.push(0);
    let mut distinct = values.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let extra: Vec<QVector> = distinct
        .iter()
        .map(|&alpha| {
            row(n, &values.iter().enumerate().filter(|&(_, &v)| v == alpha).map(|(i, _)| (i, 1)).collect::<Vec<_>>())
        })
        .collect();
    MlSpace::from_constraints(n, &ml, &extra)
}

/// Mass linear functions on the 121-bundle, facet order
/// `T0, T1, F2, F3, F4, G5, G6`.
pub fn ml_space_121(a: [i64; 3], d: i64) -> MlSpace {
    let n = 7;
    let ml = vec![
        row(n, &[(0, 1), (1, 1)]),
        row(n, &[(0, d)]),
        row(n, &[(0, a[0])]),
        row(n, &[(2, 1), (3, 1), (4, 1)]),
        row(n, &[(2, a[1]), (3, a[2])]),
        row(n, &[(5, 1), (6, 1)]),
    ];
    let extra = if a[1] * a[2] * (a[1] - a[2]) != 0 {
        vec![row(n, &[(2, 1)]), row(n, &[(3, 1)]), row(n, &[(4, 1)])]
    } else {
        Vec::new()
    };
    MlSpace::from_constraints(n, &ml, &extra)
}

/// The area of a polygon as a quadratic polynomial in its support numbers.
///
/// # Errors
///
/// Fails unless `p` is a smooth polygon.
pub fn area_polynomial(p: &HPolytope) -> Result<MultiPoly> {
    if p.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, found: p.dim() });
    }
    measure::volume_poly(p)
}

/// Mass linear functions on a `Delta_2` bundle over a polygon, facet order
/// `F1, F2, F3, G1..Gk`.
///
/// The fiber part is the line of `gamma` on the fiber facets with every
/// twist parallel to `(gamma_2, -gamma_1)`; it is mass linear when the twist
/// ratios `r` satisfy `P(r) = 0` or some `gamma_i` vanishes, and inessential
/// when the bundle is trivial or some `gamma_i` vanishes. The base part lifts
/// the inessential functions of the polygon.
///
/// # Errors
///
/// Fails if the base polygon is not smooth.
pub fn ml_space_d2_polygon(spec: &BundleD2Polygon) -> Result<MlSpace> {
    let base = &spec.base;
    let k = base.num_facets();
    let n = 3 + k;
    let classes = equivalence_classes(base)?;
    let mut lifts = Vec::new();
    {
        let rows: Vec<QVector> =
            classes.classes.iter().map(|c| row(k, &c.iter().map(|&i| (i, 1)).collect::<Vec<_>>())).collect();
        for beta in nullspace(&rows, k) {
            let mut g = vec![Rational::zero(); 3];
            g.extend(beta);
            lifts.push(g);
        }
    }
    let mut fiber_rows = vec![row(n, &[(0, 1), (1, 1), (2, 1)])];
    for i in 0..k {
        fiber_rows.push(row(n, &[(3 + i, 1)]));
        let (b1, b2) = spec.twists[i];
        if (b1, b2) != (0, 0) {
            fiber_rows.push(row(n, &[(0, b1), (1, b2)]));
        }
    }
    let fiber = nullspace(&fiber_rows, n);
    let trivial = spec.twists.iter().all(|&b| b == (0, 0));
    let mut ml = lifts.clone();
    let mut ine = lifts;
    if trivial {
        ml.extend(fiber.iter().cloned());
        ine.extend(fiber);
    } else if let [g] = &fiber[..] {
        let degenerate = g[..3].iter().any(Rational::is_zero);
        let r: QVector = spec
            .twists
            .iter()
            .map(|&(b1, b2)| if g[1].is_zero() { -Rational::from(b2) / &g[0] } else { Rational::from(b1) / &g[1] })
            .collect();
        let on_curve = area_polynomial(base)?.eval(&r)?.is_zero();
        if degenerate || on_curve {
            ml.push(g.clone());
        }
        if degenerate {
            ine.push(g.clone());
        }
    }
    Ok(MlSpace { mass_linear: echelon(ml), inessential: echelon(ine) })
}
