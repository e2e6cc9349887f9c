//! Builders for the polytope families: simplices, products, bundles over a
//! segment, 121-bundles, simplex bundles over polygons, expansions, double
//! expansions, and the minimal families built from a blown-up triangle.

mod blow;
mod mlspace;

pub use blow::{blowdown, blowup, blowup_bound, BlowdownCondition, BlowdownOutcome, BlownDown};
pub use mlspace::{area_polynomial, functional_from_gamma, ml_space_121, ml_space_d2_polygon, ml_space_yk, MlSpace};

use crate::error::{Error, Result};
use crate::kernel::{int_vec, IntVector, QVector, Rational};
use crate::polytope::HPolytope;

pub(crate) fn labels(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn rows(rs: &[Vec<i64>]) -> Vec<IntVector> {
    rs.iter().map(|r| int_vec(r)).collect()
}

fn unit(n: usize, i: usize, v: i64) -> Vec<i64> {
    let mut r = vec![0; n];
    r[i] = v;
    r
}

/// The standard simplex `x_i >= 0, sum x_i <= 1`.
///
/// # Errors
///
/// Fails for `n = 0`.
pub fn simplex(n: usize) -> Result<HPolytope> {
    simplex_scaled(n, Rational::one())
}

/// `x_i >= 0, sum x_i <= lambda`.
///
/// # Errors
///
/// Fails for `n = 0` or `lambda <= 0`.
pub fn simplex_scaled(n: usize, lambda: Rational) -> Result<HPolytope> {
    if n == 0 {
        return Err(Error::InvalidParameter("simplex dimension must be positive".into()));
    }
    let mut rs: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i, -1)).collect();
    rs.push(vec![1; n]);
    let mut kappa = vec![Rational::zero(); n];
    kappa.push(lambda);
    HPolytope::new(rows(&rs), kappa)?.with_labels(labels("F", 1..=n + 1)).map(|p| p.with_name(format!("simplex{n}")))
}

/// Cartesian product. Labels of the second factor get a trailing `'` when
/// they collide with the first.
///
/// # Errors
///
/// Fails if the product has more facets than supported.
pub fn product(a: &HPolytope, b: &HPolytope) -> Result<HPolytope> {
    let (na, nb) = (a.dim(), b.dim());
    let mut conormals = Vec::new();
    let mut kappa = Vec::new();
    for (eta, k) in a.conormals().iter().zip(a.kappa()) {
        let mut r = eta.clone();
        r.extend(std::iter::repeat(0.into()).take(nb));
        conormals.push(r);
        kappa.push(k.clone());
    }
    for (eta, k) in b.conormals().iter().zip(b.kappa()) {
        let mut r: IntVector = std::iter::repeat(0.into()).take(na).collect();
        r.extend(eta.iter().cloned());
        conormals.push(r);
        kappa.push(k.clone());
    }
    let mut labs: Vec<String> = a.labels().to_vec();
    for l in b.labels() {
        let mut l = l.clone();
        while labs.contains(&l) {
            l.push('\'');
        }
        labs.push(l);
    }
    HPolytope::new(conormals, kappa)?.with_labels(labs)
}

/// Polygon from integer conormals and support numbers.
///
/// # Errors
///
/// Fails if the data does not describe a simple bounded polygon.
pub fn polygon(conormals: &[(i64, i64)], kappa: QVector) -> Result<HPolytope> {
    let rs: Vec<Vec<i64>> = conormals.iter().map(|&(x, y)| vec![x, y]).collect();
    HPolytope::from_rows(&rs, kappa)
}

/// The trapezoid with conormals `(-1,0), (0,-1), (1,1), (-1,-1)` and support
/// numbers `(0, 0, 2, -1)`. Its barycenters `B_0, B_1, B_2` are distinct.
pub fn trapezoid() -> HPolytope {
    polygon(&[(-1, 0), (0, -1), (1, 1), (-1, -1)], [0, 0, 2, -1].iter().map(|&x| Rational::from(x)).collect())
        .expect("valid trapezoid")
        .with_name("trapezoid")
}

/// `Delta_k` bundle over `Delta_1` twisted by `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleYk {
    pub k: usize,
    pub a: Vec<i64>,
    /// `k + 3` support numbers.
    pub kappa: QVector,
}

impl BundleYk {
    /// Fiber size `sum_{i <= k+1} k_i`.
    pub fn lambda(&self) -> Rational {
        self.kappa[..=self.k].iter().sum()
    }

    /// Base size `sum a_i k_i + k_{k+2} + k_{k+3}`.
    pub fn h(&self) -> Rational {
        let mut s: Rational = self.a.iter().zip(&self.kappa).map(|(a, k)| Rational::from(*a) * k).sum();
        s += &self.kappa[self.k + 1];
        s += &self.kappa[self.k + 2];
        s
    }

    pub fn in_chamber(&self) -> bool {
        let lam = self.lambda();
        let amax = self.a.iter().copied().max().unwrap_or(0).max(0);
        lam.is_positive() && self.h() > Rational::from(amax) * lam
    }

    /// Conormal rows in facet order `F1..F{k+1}, G1, G2`.
    pub fn conormal_rows(k: usize, a: &[i64]) -> Vec<Vec<i64>> {
        let n = k + 1;
        let mut rs: Vec<Vec<i64>> = (0..k).map(|i| unit(n, i, -1)).collect();
        let mut top = vec![1; k];
        top.push(0);
        rs.push(top);
        rs.push(unit(n, k, -1));
        let mut tw: Vec<i64> = a.to_vec();
        tw.push(1);
        rs.push(tw);
        rs
    }
}

/// Builds the `Delta_k` bundle over `Delta_1` with fiber facets first and the
/// two base facets last.
///
/// # Errors
///
/// Fails on malformed parameters or support numbers outside the chamber.
pub fn bundle_yk(spec: &BundleYk) -> Result<HPolytope> {
    if spec.k == 0 || spec.a.len() != spec.k || spec.kappa.len() != spec.k + 3 {
        return Err(Error::InvalidParameter(format!(
            "bundle-yk needs a of length k and k+3 support numbers (k = {})",
            spec.k
        )));
    }
    if !spec.in_chamber() {
        return Err(Error::NotInChamber(format!("lambda = {}, h = {}", spec.lambda(), spec.h())));
    }
    let mut labs = labels("F", 1..=spec.k + 1);
    labs.extend(labels("G", 1..=2));
    let a: Vec<String> = spec.a.iter().map(i64::to_string).collect();
    Ok(HPolytope::from_rows(&BundleYk::conormal_rows(spec.k, &spec.a), spec.kappa.clone())?
        .with_labels(labs)?
        .with_name(format!("Y(k={},a=({}))", spec.k, a.join(","))))
}

/// `Delta_1` bundle over a `Delta_2` bundle over `Delta_1`, in the normal
/// form with facets `T0, T1, F2, F3, F4, G5, G6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle121 {
    pub a: [i64; 3],
    pub d: i64,
    pub kappa: QVector,
}

impl Bundle121 {
    pub fn conormal_rows(a: [i64; 3], d: i64) -> Vec<Vec<i64>> {
        vec![
            vec![1, 0, 0, 0],
            vec![-1, 0, 0, 0],
            vec![0, -1, 0, 0],
            vec![0, 0, -1, 0],
            vec![d, 1, 1, 0],
            vec![0, 0, 0, -1],
            vec![a[0], a[1], a[2], 1],
        ]
    }
}

/// # Errors
///
/// Fails if `d < 0`, the support numbers have the wrong length, or the
/// result is not a smooth polytope with the product combinatorics.
pub fn bundle_121(spec: &Bundle121) -> Result<HPolytope> {
    if spec.d < 0 || spec.kappa.len() != 7 {
        return Err(Error::InvalidParameter("bundle-121 needs d >= 0 and 7 support numbers".into()));
    }
    let p = HPolytope::from_rows(&Bundle121::conormal_rows(spec.a, spec.d), spec.kappa.clone())?
        .with_labels(["T0", "T1", "F2", "F3", "F4", "G5", "G6"].iter().map(|s| s.to_string()).collect())?;
    p.check_smooth()?;
    if p.vertices().len() != 12 || p.meets(&[0, 1]) || p.meets(&[2, 3, 4]) || p.meets(&[5, 6]) {
        return Err(Error::NotInChamber("support numbers do not give the 121-bundle combinatorics".into()));
    }
    let a: Vec<String> = spec.a.iter().map(i64::to_string).collect();
    Ok(p.with_name(format!("121(a=({}),d={})", a.join(","), spec.d)))
}

/// `Delta_2` bundle over a polygon. Fiber facets `F1, F2, F3` have conormals
/// `-e1, -e2, e1 + e2`; base facet `Gi` has conormal `(b^i, eta_i)`.
#[derive(Debug, Clone)]
pub struct BundleD2Polygon {
    /// Base polygon with edges in adjacency order.
    pub base: HPolytope,
    /// `(b_1^i, b_2^i)` per edge; the first two must be zero.
    pub twists: Vec<(i64, i64)>,
    /// Support numbers of the three fiber facets.
    pub fiber_kappa: QVector,
}

/// Whether consecutive edges of a polygon meet, cyclically.
pub fn in_adjacency_order(p: &HPolytope) -> bool {
    let k = p.num_facets();
    p.dim() == 2 && (0..k).all(|i| p.meets(&[i, (i + 1) % k]))
}

/// # Errors
///
/// Fails on a non-polygon base, edges out of adjacency order, nonzero first
/// twists, or support numbers that do not give the bundle combinatorics.
pub fn bundle_d2_polygon(spec: &BundleD2Polygon) -> Result<HPolytope> {
    let base = &spec.base;
    let k = base.num_facets();
    if !in_adjacency_order(base) {
        return Err(Error::InvalidParameter("base polygon edges must be listed in adjacency order".into()));
    }
    if spec.twists.len() != k || spec.fiber_kappa.len() != 3 {
        return Err(Error::InvalidParameter("need one twist per edge and three fiber support numbers".into()));
    }
    if spec.twists[0] != (0, 0) || spec.twists[1] != (0, 0) {
        return Err(Error::InvalidParameter("the first two twists must vanish".into()));
    }
    let mut rs = vec![vec![-1, 0, 0, 0], vec![0, -1, 0, 0], vec![1, 1, 0, 0]];
    let mut kappa = spec.fiber_kappa.clone();
    for (i, &(b1, b2)) in spec.twists.iter().enumerate() {
        let eta = base.conormal(i);
        let (e1, e2) = (bigint_i64(&eta[0])?, bigint_i64(&eta[1])?);
        rs.push(vec![b1, b2, e1, e2]);
        kappa.push(base.kappa()[i].clone());
    }
    let mut labs = labels("F", 1..=3);
    labs.extend(labels("G", 1..=k));
    let p = HPolytope::from_rows(&rs, kappa)?.with_labels(labs)?;
    p.check_smooth()?;
    if p.vertices().len() != 3 * k || p.meets(&[0, 1, 2]) {
        return Err(Error::NotInChamber("support numbers do not give the bundle combinatorics".into()));
    }
    Ok(p.with_name(format!("D2-bundle over {k}-gon")))
}

pub(crate) fn bigint_i64(x: &num_bigint::BigInt) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::InvalidParameter(format!("entry {x} does not fit in 64 bits")))
}

fn extend_row(eta: &IntVector, extra: &[i64]) -> IntVector {
    let mut r = eta.clone();
    r.extend(extra.iter().map(|&x| x.into()));
    r
}

/// `k`-fold expansion along `facet`: fiber-type facets in their original
/// order, then base-type facets `B1..B{k+1}`.
///
/// # Errors
///
/// Fails for `k = 0` or an out-of-range facet.
pub fn expansion(base: &HPolytope, facet: usize, k: usize) -> Result<HPolytope> {
    if k == 0 || facet >= base.num_facets() {
        return Err(Error::InvalidParameter("expansion needs k >= 1 and a valid facet".into()));
    }
    let mut conormals = Vec::new();
    let mut kappa = Vec::new();
    let mut labs = Vec::new();
    for j in (0..base.num_facets()).filter(|&j| j != facet) {
        conormals.push(extend_row(base.conormal(j), &vec![0; k]));
        kappa.push(base.kappa()[j].clone());
        labs.push(base.label(j).to_string());
    }
    let zero: IntVector = vec![0.into(); base.dim()];
    for i in 0..k {
        conormals.push(extend_row(&zero, &unit(k, i, -1)));
        kappa.push(Rational::zero());
    }
    conormals.push(extend_row(base.conormal(facet), &vec![1; k]));
    kappa.push(base.kappa()[facet].clone());
    labs.extend(labels("B", 1..=k + 1));
    HPolytope::new(conormals, kappa)?.with_labels(labs)
}

/// Double expansion along facets `j1` and `j2`: fiber-type facets in their
/// original order, then `B1, B2` (from `j1`) and `B3, B4` (from `j2`).
///
/// # Errors
///
/// Fails if `j1 == j2` or either is out of range.
pub fn double_expansion(base: &HPolytope, j1: usize, j2: usize) -> Result<HPolytope> {
    if j1 == j2 || j1 >= base.num_facets() || j2 >= base.num_facets() {
        return Err(Error::InvalidParameter("double expansion needs two distinct facets".into()));
    }
    let mut conormals = Vec::new();
    let mut kappa = Vec::new();
    let mut labs = Vec::new();
    for j in (0..base.num_facets()).filter(|&j| j != j1 && j != j2) {
        conormals.push(extend_row(base.conormal(j), &[0, 0]));
        kappa.push(base.kappa()[j].clone());
        labs.push(base.label(j).to_string());
    }
    let zero: IntVector = vec![0.into(); base.dim()];
    conormals.push(extend_row(&zero, &[-1, 0]));
    kappa.push(Rational::zero());
    conormals.push(extend_row(base.conormal(j1), &[1, 0]));
    kappa.push(base.kappa()[j1].clone());
    conormals.push(extend_row(&zero, &[0, -1]));
    kappa.push(Rational::zero());
    conormals.push(extend_row(base.conormal(j2), &[0, 1]));
    kappa.push(base.kappa()[j2].clone());
    labs.extend(labels("B", 1..=4));
    HPolytope::new(conormals, kappa)?.with_labels(labs)
}

/// Triangle `(-1,0), (0,-1), (1,1)` blown up first at `e1 ∩ e3` and then
/// repeatedly at the intersection of the newest edge with `e1`. Edges are
/// `e1..ek` in adjacency order; `e_j = (-(j-4), 1)` for `j >= 4`.
///
/// # Errors
///
/// Fails for `k < 3`.
pub fn recipe_polygon(k: usize) -> Result<HPolytope> {
    if k < 3 {
        return Err(Error::InvalidParameter("a polygon needs at least three edges".into()));
    }
    let mut p = simplex_scaled(2, Rational::from(k as i64))?;
    let mut last = 2;
    for _ in 4..=k {
        p = blowup(&p, &[0, last], None)?;
        last = p.num_facets() - 1;
    }
    p.with_labels(labels("e", 1..=k)).map(|p| p.with_name(format!("recipe {k}-gon")))
}

/// `Delta_2` bundle over the recipe polygon with `k = n_facets - 3` edges,
/// twists `b^i = r_i (1, -1)` for `r = (0, 0, 1, ..., 1, 2)`. The fiber function
/// from [`essential_fiber_function`] is essential and mass linear on it.
///
/// # Errors
///
/// Fails for `n_facets < 7`.
pub fn minimal_family_a3(n_facets: usize) -> Result<HPolytope> {
    if n_facets < 7 {
        return Err(Error::InvalidParameter("the a3 family starts at seven facets".into()));
    }
    let k = n_facets - 3;
    let base = recipe_polygon(k)?;
    let r: Vec<i64> = (1..=k)
        .map(|i| {
            if i <= 2 {
                0
            } else if i == k {
                2
            } else {
                1
            }
        })
        .collect();
    let twists: Vec<(i64, i64)> = r.iter().map(|&ri| (ri, -ri)).collect();
    // the fiber must be small against the base chamber
    let radius = base.chamber_radius()?;
    let mut lambda = radius.iter().min().cloned().expect("nonempty") / Rational::from(8);
    for _ in 0..16 {
        let spec = BundleD2Polygon {
            base: base.clone(),
            twists: twists.clone(),
            fiber_kappa: vec![Rational::zero(), Rational::zero(), lambda.clone()],
        };
        match bundle_d2_polygon(&spec) {
            Ok(p) => return Ok(p.with_name(format!("minimal a3, N={n_facets}"))),
            Err(Error::NotInChamber(_) | Error::NonSimple { .. } | Error::Redundant { .. }) => {
                lambda /= Rational::from(2);
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::Internal("no admissible fiber size found".into()))
}

/// `gamma_1 eta_1 + gamma_2 eta_2 + gamma_3 eta_3` on the fiber facets of a
/// `Delta_2` bundle over a polygon, with `gamma_3 = -gamma_1 - gamma_2`.
pub fn essential_fiber_function(g1: i64, g2: i64) -> QVector {
    let g3 = -g1 - g2;
    [-g1 + g3, -g2 + g3, 0, 0].iter().map(|&x| Rational::from(x)).collect()
}

/// Double expansion of the recipe polygon with `k = n_facets - 2` edges
/// along `e5, e1` when `k = 5` and along `e_k, e_{k-2}` otherwise.
///
/// # Errors
///
/// Fails for `n_facets < 5`.
pub fn minimal_family_b(n_facets: usize) -> Result<HPolytope> {
    if n_facets < 5 {
        return Err(Error::InvalidParameter("the b family starts at five facets".into()));
    }
    let k = n_facets - 2;
    let base = recipe_polygon(k)?;
    let (j1, j2) = if k == 5 { (4, 0) } else { (k - 1, k - 3) };
    Ok(double_expansion(&base, j1, j2)?.with_name(format!("minimal b, N={n_facets}")))
}

/// `sum gamma_i eta_i` over the four base-type facets of a double
/// expansion, which are the last four facets.
pub fn base_type_function(p: &HPolytope, gamma: [i64; 4]) -> QVector {
    let n_f = p.num_facets();
    let mut h = vec![Rational::zero(); p.dim()];
    for (t, g) in gamma.iter().enumerate() {
        for (x, e) in h.iter_mut().zip(p.eta(n_f - 4 + t)) {
            *x += Rational::from(*g) * e;
        }
    }
    h
}
