//! Mass linearity, facet symmetry, facet equivalence and the reductions
//! built on them.
//!
//! `H` is mass linear on `p` when `k -> <H, c(k)>` is linear on the chamber.
//! Every verdict here is an exact polynomial identity in the support numbers;
//! the sampled checks only shortcut negative answers.

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::kernel::poly::{Coeff, IntPoly};
use crate::kernel::{dot, rank, solve_linear, MultiPoly, QVector, Rational};
use crate::measure::{self, check_len};
use crate::polytope::{mask_of, Face, HPolytope};

/// Outcome of [`mass_linear_test`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassLinearReport {
    pub verdict: bool,
    /// Coefficients `gamma_i` with `<H, c> = sum gamma_i k_i`, when mass linear.
    pub gamma: Option<QVector>,
    pub symmetric: Vec<usize>,
    pub asymmetric: Vec<usize>,
    /// Per facet: asymmetric and meets every other facet.
    pub pervasive_asymmetric: Vec<bool>,
    /// Per facet: asymmetric and flat.
    pub flat_asymmetric: Vec<bool>,
    /// `<H, c(k)> - sum gamma_i k_i` at the base point; zero whenever the
    /// verdict is positive.
    pub constant_term: Option<Rational>,
}

impl MassLinearReport {
    /// `sum gamma_i eta_i`, which reproduces `H` for a mass linear pair.
    pub fn reconstruct(&self, p: &HPolytope) -> Option<QVector> {
        let g = self.gamma.as_ref()?;
        let mut h = vec![Rational::zero(); p.dim()];
        for (gi, eta) in g.iter().zip(p.etas()) {
            for (a, b) in h.iter_mut().zip(eta) {
                *a += gi * b;
            }
        }
        Some(h)
    }
}

/// Volume and `H`-moment polynomials together with the evaluation of
/// `<H, c>` at arbitrary support numbers.
struct Moments {
    v: MultiPoly,
    m: MultiPoly,
}

impl Moments {
    fn new(p: &HPolytope, h: &[Rational]) -> Result<Self> {
        Ok(Moments { v: measure::volume_poly(p)?, m: measure::moment_poly(p, h)? })
    }

    fn hat(&self, kappa: &[Rational]) -> Result<Rational> {
        let v = self.v.eval(kappa)?;
        if v.is_zero() {
            return Err(Error::ZeroVolume);
        }
        Ok(self.m.eval(kappa)? / v)
    }
}

fn bump(kappa: &[Rational], i: usize, t: &Rational) -> QVector {
    let mut k = kappa.to_vec();
    k[i] += t;
    k
}

/// Decides whether `H` is mass linear on `p` and extracts its coefficients.
///
/// # Errors
///
/// Fails on non-smooth input or a functional of the wrong length.
pub fn mass_linear_test(p: &HPolytope, h: &[Rational]) -> Result<MassLinearReport> {
    check_len(p, h)?;
    p.check_smooth()?;
    let mom = Moments::new(p, h)?;
    let n_f = p.num_facets();
    let radius = p.chamber_radius()?;
    let base = mom.hat(p.kappa())?;

    let mut gamma = Vec::with_capacity(n_f);
    let mut consistent = true;
    for (i, r) in radius.iter().enumerate() {
        let t1 = r / Rational::from(2);
        let t2 = r / Rational::from(4);
        let g1 = (mom.hat(&bump(p.kappa(), i, &t1))? - &base) / &t1;
        let g2 = (mom.hat(&bump(p.kappa(), i, &t2))? - &base) / &t2;
        if g1 != g2 {
            consistent = false;
            break;
        }
        gamma.push(g1);
    }

    let mut verdict = false;
    let mut constant = None;
    if consistent {
        let c = &base - dot(&gamma, p.kappa());
        let l = MultiPoly::linear(&gamma).add(&MultiPoly::constant(n_f, c.clone()))?;
        verdict = mom.m.sub(&l.mul(&mom.v)?)?.is_zero();
        if verdict && !c.is_zero() {
            return Err(Error::Internal(format!("mass linear function with constant term {c}")));
        }
        constant = Some(c);
    }

    if verdict {
        let s: Rational = gamma.iter().sum();
        if !s.is_zero() {
            return Err(Error::Internal(format!("coefficients sum to {s}")));
        }
        let symmetric: Vec<usize> = (0..n_f).filter(|&i| gamma[i].is_zero()).collect();
        Ok(report(p, Some(gamma), symmetric, constant))
    } else {
        let symmetric = symmetric_with(p, &mom)?;
        Ok(report(p, None, symmetric, constant))
    }
}

fn report(
    p: &HPolytope,
    gamma: Option<QVector>,
    symmetric: Vec<usize>,
    constant: Option<Rational>,
) -> MassLinearReport {
    let n_f = p.num_facets();
    let asymmetric: Vec<usize> = (0..n_f).filter(|i| !symmetric.contains(i)).collect();
    let pervasive_asymmetric = (0..n_f).map(|i| asymmetric.contains(&i) && p.is_pervasive(i)).collect();
    let flat_asymmetric = (0..n_f).map(|i| asymmetric.contains(&i) && p.is_flat(i)).collect();
    MassLinearReport {
        verdict: gamma.is_some(),
        gamma,
        symmetric,
        asymmetric,
        pervasive_asymmetric,
        flat_asymmetric,
        constant_term: constant,
    }
}

/// Sampled check of linearity at random points of the chamber box. A
/// `false` answer is conclusive; `true` only means no counterexample was
/// found.
///
/// # Errors
///
/// Fails on non-smooth input or a functional of the wrong length.
pub fn mass_linear_prefilter(p: &HPolytope, h: &[Rational], trials: usize, seed: u64) -> Result<bool> {
    check_len(p, h)?;
    let mom = Moments::new(p, h)?;
    let radius = p.chamber_radius()?;
    let base = mom.hat(p.kappa())?;
    let gamma: QVector = radius
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let t = r / Rational::from(2);
            Ok((mom.hat(&bump(p.kappa(), i, &t))? - &base) / t)
        })
        .collect::<Result<_>>()?;
    if base != dot(&gamma, p.kappa()) {
        return Ok(false);
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..trials {
        let k: QVector =
            p.kappa().iter().zip(&radius).map(|(k, r)| k + r * Rational::new(rng.gen_range(-64i64..=64), 64)).collect();
        if mom.hat(&k)? != dot(&gamma, &k) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn factorial(n: usize) -> Rational {
    (1..=n).map(Rational::from).product()
}

/// Whether `d/dk_i (m / v)` vanishes identically, i.e. `m' v - m v' = 0`.
fn quotient_partial_vanishes(m: &MultiPoly, v: &MultiPoly, i: usize, n: usize) -> Result<bool> {
    let ms = m.scale(&factorial(n + 1));
    let vs = v.scale(&factorial(n));
    if let Some(z) = quotient_partial_int::<i128>(&ms, &vs, i) {
        return Ok(z);
    }
    if let Some(z) = quotient_partial_int::<BigInt>(&ms, &vs, i) {
        return Ok(z);
    }
    Ok(m.partial(i).mul(v)?.sub(&m.mul(&v.partial(i))?)?.is_zero())
}

fn quotient_partial_int<C: Coeff>(m: &MultiPoly, v: &MultiPoly, i: usize) -> Option<bool> {
    let m = IntPoly::<C>::from_multipoly(m)?;
    let v = IntPoly::<C>::from_multipoly(v)?;
    let one = C::from_rational(&Rational::one())?;
    let neg = C::from_rational(&Rational::from(-1))?;
    let mut acc = IntPoly::zero(v.nvars());
    acc.add_product(&m.partial(i)?, &v, &one)?;
    acc.add_product(&m, &v.partial(i)?, &neg)?;
    Some(acc.is_zero())
}

fn symmetric_with(p: &HPolytope, mom: &Moments) -> Result<Vec<usize>> {
    let n = p.dim();
    let kappa = p.kappa();
    let radius = p.chamber_radius()?;
    // numeric derivative test at two points rules out most asymmetric facets
    let k2: QVector = kappa.iter().zip(&radius).map(|(k, r)| k + r / Rational::from(3)).collect();
    let mut out = Vec::new();
    for i in 0..p.num_facets() {
        let dm = mom.m.partial(i);
        let dv = mom.v.partial(i);
        let mut quick_nonzero = false;
        for pt in [kappa, &k2[..]] {
            let val = dm.eval(pt)? * mom.v.eval(pt)? - mom.m.eval(pt)? * dv.eval(pt)?;
            if !val.is_zero() {
                quick_nonzero = true;
                break;
            }
        }
        if !quick_nonzero && quotient_partial_vanishes(&mom.m, &mom.v, i, n)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Facets `i` for which `<H, c>` does not depend on `k_i`. Works whether or
/// not `H` is mass linear.
///
/// # Errors
///
/// Fails on non-smooth input or a functional of the wrong length.
pub fn symmetric_facets(p: &HPolytope, h: &[Rational]) -> Result<Vec<usize>> {
    check_len(p, h)?;
    p.check_smooth()?;
    symmetric_with(p, &Moments::new(p, h)?)
}

/// Partition of the facets into equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClasses {
    pub classes: Vec<Vec<usize>>,
    /// Rank of the conormals outside each class; `n - |I| + 1` for every
    /// class with at least two members.
    pub complement_ranks: Vec<usize>,
}

impl EquivalenceClasses {
    pub fn class_of(&self, i: usize) -> usize {
        self.classes.iter().position(|c| c.contains(&i)).expect("every facet lies in a class")
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.class_of(i) == self.class_of(j)
    }

    pub fn is_class(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.classes.contains(&s)
    }
}

fn complement_rows(p: &HPolytope, excluded: &[usize]) -> Vec<QVector> {
    (0..p.num_facets()).filter(|k| !excluded.contains(k)).map(|k| p.eta(k).clone()).collect()
}

fn sum_rows(p: &HPolytope, set: &[usize]) -> QVector {
    let mut s = vec![Rational::zero(); p.dim()];
    for &i in set {
        for (a, b) in s.iter_mut().zip(p.eta(i)) {
            *a += b;
        }
    }
    s
}

/// Whether facets `i` and `j` are equivalent: the other conormals span a
/// hyperplane that contains `eta_i + eta_j`.
pub fn facets_equivalent(p: &HPolytope, i: usize, j: usize) -> bool {
    if i == j {
        return true;
    }
    let mut rows = complement_rows(p, &[i, j]);
    let r = rank(&rows);
    if r + 1 != p.dim() {
        return false;
    }
    rows.push(sum_rows(p, &[i, j]));
    rank(&rows) == r
}

/// Equivalence classes of facets: pairwise relation, connected components,
/// then a check of the full class condition.
///
/// # Errors
///
/// Fails with [`Error::InconsistentClass`] when a component does not satisfy
/// the class condition.
pub fn equivalence_classes(p: &HPolytope) -> Result<EquivalenceClasses> {
    let n_f = p.num_facets();
    let mut parent: Vec<usize> = (0..n_f).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for i in 0..n_f {
        for j in i + 1..n_f {
            if facets_equivalent(p, i, j) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..n_f {
        let r = find(&mut parent, i);
        match roots.iter().position(|&x| x == r) {
            Some(c) => classes[c].push(i),
            None => {
                roots.push(r);
                classes.push(vec![i]);
            }
        }
    }
    let mut complement_ranks = Vec::with_capacity(classes.len());
    for c in &classes {
        let mut rows = complement_rows(p, c);
        let r = rank(&rows);
        if c.len() >= 2 {
            rows.push(sum_rows(p, c));
            if r + c.len() != p.dim() + 1 || rank(&rows) != r {
                return Err(Error::InconsistentClass(c.clone()));
            }
        }
        complement_ranks.push(r);
    }
    Ok(EquivalenceClasses { classes, complement_ranks })
}

/// Coefficients `beta` with `H = sum beta_i eta_i` and zero sum over each
/// equivalence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InessentialWitness {
    pub beta: QVector,
}

/// Returns a witness when `H` is inessential, `None` when it is essential.
///
/// # Errors
///
/// Fails on non-smooth input, a functional of the wrong length, an
/// inconsistent class, or if the witness does not reproduce `<H, c>`.
pub fn is_inessential(p: &HPolytope, h: &[Rational]) -> Result<Option<InessentialWitness>> {
    check_len(p, h)?;
    let classes = equivalence_classes(p)?;
    let n_f = p.num_facets();
    let mut rows: Vec<QVector> = (0..p.dim()).map(|r| (0..n_f).map(|i| p.eta(i)[r].clone()).collect()).collect();
    let mut rhs: QVector = h.to_vec();
    for c in &classes.classes {
        rows.push((0..n_f).map(|i| if c.contains(&i) { Rational::one() } else { Rational::zero() }).collect());
        rhs.push(Rational::zero());
    }
    let Some(sol) = solve_linear(&rows, &rhs)? else {
        return Ok(None);
    };
    let beta = sol.particular;
    let hat = measure::functional_at(p, h, p.kappa())?;
    if hat != dot(&beta, p.kappa()) {
        return Err(Error::Internal("inessential witness does not reproduce <H, c>".into()));
    }
    Ok(Some(InessentialWitness { beta }))
}

/// Result of subtracting an inessential function supported on one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// `H' = sum_{i in I, i != last} gamma_i (eta_i - eta_last)`.
    pub h_prime: QVector,
    /// `H - H'`.
    pub h_tilde: QVector,
}

/// For a class `I`, builds the inessential `H'` whose removal makes every
/// facet of `I` but the last symmetric.
///
/// # Errors
///
/// Fails if `H` is not mass linear or `class` is not an equivalence class.
pub fn inessential_reduction(p: &HPolytope, h: &[Rational], class: &[usize]) -> Result<Reduction> {
    let report = mass_linear_test(p, h)?;
    let gamma = report.gamma.ok_or(Error::NotMassLinear)?;
    let classes = equivalence_classes(p)?;
    if class.is_empty() || !classes.is_class(class) {
        return Err(Error::NotAClass(class.to_vec()));
    }
    let mut sorted = class.to_vec();
    sorted.sort_unstable();
    let last = *sorted.last().expect("nonempty class");
    let mut h_prime = vec![Rational::zero(); p.dim()];
    for &i in &sorted[..sorted.len() - 1] {
        for (r, x) in h_prime.iter_mut().enumerate() {
            *x += &gamma[i] * (&p.eta(i)[r] - &p.eta(last)[r]);
        }
    }
    let h_tilde = h.iter().zip(&h_prime).map(|(a, b)| a - b).collect();
    Ok(Reduction { h_prime, h_tilde })
}

/// A face presented as a full-dimensional polytope in lattice coordinates,
/// with the restricted functional.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub polytope: HPolytope,
    pub h: QVector,
    /// Facet `l` of the face lies in facet `facet_map[l]` of the ambient polytope.
    pub facet_map: Vec<usize>,
    /// Coefficients of the restricted functional, when mass linear.
    pub gamma: Option<QVector>,
}

/// Restricts `H` to a symmetric face. Coordinates on the face are
/// `x = v0 + sum y_l w_l`, where `v0` is a vertex of the face and `w_l` are
/// the primitive edge directions at `v0` spanning it.
///
/// # Errors
///
/// Fails if the face is a vertex, some facet containing it is asymmetric,
/// or the coefficients of the restriction disagree with those of `H`.
pub fn restrict_to_face(p: &HPolytope, h: &[Rational], f: &Face) -> Result<Restriction> {
    check_len(p, h)?;
    p.check_smooth()?;
    if f.dim == 0 {
        return Err(Error::InvalidParameter("cannot restrict to a vertex".into()));
    }
    let report = mass_linear_test(p, h)?;
    if f.index_set.iter().any(|i| !report.symmetric.contains(i)) {
        return Err(Error::NotSymmetricFace(f.index_set.clone()));
    }
    let v0 = &p.vertices()[f.vertex_ids[0]];
    let dirs: Vec<QVector> = v0
        .basis
        .iter()
        .enumerate()
        .filter(|(_, j)| !f.index_set.contains(j))
        .map(|(pos, _)| v0.edge_direction(pos))
        .collect();
    let fmask = mask_of(&f.index_set);
    let facet_map: Vec<usize> = (0..p.num_facets())
        .filter(|&k| !f.index_set.contains(&k))
        .filter(|&k| p.face_by_mask(fmask | (1u64 << k)).is_some_and(|g| g.dim + 1 == f.dim))
        .collect();
    let conormals = facet_map
        .iter()
        .map(|&k| {
            dirs.iter()
                .map(|w| {
                    dot(p.eta(k), w).to_integer().ok_or_else(|| Error::Internal("non-integral restriction".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let kappa: QVector = facet_map.iter().map(|&k| p.slack(k, &v0.point)).collect();
    let labels = facet_map.iter().map(|&k| p.label(k).to_string()).collect();
    let polytope = HPolytope::new(conormals, kappa)?.with_labels(labels)?;
    let h_res: QVector = dirs.iter().map(|w| dot(h, w)).collect();
    let gamma = match report.gamma {
        Some(g) => {
            let sub = mass_linear_test(&polytope, &h_res)?;
            let expected: QVector = facet_map.iter().map(|&k| g[k].clone()).collect();
            if sub.gamma.as_ref() != Some(&expected) {
                return Err(Error::Internal("restricted coefficients differ from the ambient ones".into()));
            }
            sub.gamma
        }
        None => None,
    };
    Ok(Restriction { polytope, h: h_res, facet_map, gamma })
}

/// Vector `xi` with `<eta_i, xi> = gamma_i` for all `i`, if one exists.
///
/// # Errors
///
/// Fails with [`Error::NotMassLinear`] if `H` is not mass linear.
pub fn generating_vector(p: &HPolytope, h: &[Rational]) -> Result<Option<QVector>> {
    let gamma = mass_linear_test(p, h)?.gamma.ok_or(Error::NotMassLinear)?;
    Ok(solve_linear(p.etas(), &gamma)?.map(|s| s.particular))
}

/// `<H, B_k>` for `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullReport {
    pub values: QVector,
    pub verdict: bool,
}

impl FullReport {
    /// `<H, B_0> = <H, B_{n-1}> = <H, B_n>`.
    pub fn mass_linear_by_barycenters(&self) -> bool {
        let n = self.values.len() - 1;
        self.values[0] == self.values[n] && self.values[n.saturating_sub(1)] == self.values[n]
    }

    /// `<H, B_0> = <H, B_{n-2}> = <H, B_n>`.
    pub fn generated_by_barycenters(&self) -> bool {
        let n = self.values.len() - 1;
        self.values[0] == self.values[n] && self.values[n.saturating_sub(2)] == self.values[n]
    }
}

/// Compares `<H, B_k>` across all skeleta.
///
/// # Errors
///
/// Fails on non-smooth input or a functional of the wrong length.
pub fn fully_mass_linear_test(p: &HPolytope, h: &[Rational]) -> Result<FullReport> {
    check_len(p, h)?;
    let values = measure::pair_all(h, &measure::skeleton_barycenters(p)?);
    let verdict = values.iter().all(|v| v == &values[0]);
    Ok(FullReport { values, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{q, qi};

    fn qv(v: &[i64]) -> QVector {
        v.iter().map(|&x| qi(x)).collect()
    }

    fn square() -> HPolytope {
        HPolytope::from_rows(&[vec![-1, 0], vec![1, 0], vec![0, -1], vec![0, 1]], qv(&[0, 1, 0, 1])).unwrap()
    }

    fn y3_bar() -> HPolytope {
        HPolytope::from_rows(
            &[
                vec![-1, 0, 0, 0],
                vec![0, -1, 0, 0],
                vec![0, 0, -1, 0],
                vec![1, 1, 1, 0],
                vec![0, 0, 0, -1],
                vec![1, 1, 0, 1],
            ],
            qv(&[0, 0, 0, 1, 0, 2]),
        )
        .unwrap()
    }

    #[test]
    fn box_coordinate() {
        let r = mass_linear_test(&square(), &qv(&[1, 0])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.gamma, Some(vec![q(-1, 2), q(1, 2), qi(0), qi(0)]));
        assert_eq!(r.symmetric, vec![2, 3]);
        assert_eq!(r.reconstruct(&square()), Some(qv(&[1, 0])));
        assert_eq!(generating_vector(&square(), &qv(&[1, 0])).unwrap(), Some(vec![q(1, 2), qi(0)]));
        assert!(fully_mass_linear_test(&square(), &qv(&[1, 0])).unwrap().verdict);
    }

    #[test]
    fn zero_functional() {
        let p = y3_bar();
        let r = mass_linear_test(&p, &qv(&[0, 0, 0, 0])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.symmetric, (0..6).collect::<Vec<_>>());
        assert_eq!(is_inessential(&p, &qv(&[0, 0, 0, 0])).unwrap().unwrap().beta, qv(&[0; 6]));
    }

    #[test]
    fn classes_of_simplex_and_bundle() {
        let tri = HPolytope::from_rows(&[vec![-1, 0], vec![0, -1], vec![1, 1]], qv(&[0, 0, 1])).unwrap();
        assert_eq!(equivalence_classes(&tri).unwrap().classes, vec![vec![0, 1, 2]]);
        let c = equivalence_classes(&y3_bar()).unwrap();
        assert_eq!(c.classes, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
    }

    #[test]
    fn bundle_not_mass_linear_for_unbalanced_gamma() {
        // gamma = (1, 0, -1, 0) on the fiber facets, sum a_i gamma_i = 1
        let p = y3_bar();
        let h = qv(&[-1, 0, 1, 0]);
        let r = mass_linear_test(&p, &h).unwrap();
        assert!(!r.verdict);
        assert!(r.gamma.is_none());
        assert!(!mass_linear_prefilter(&p, &h, 4, 7).unwrap());
    }

    #[test]
    fn bundle_reduction_over_fiber_pair() {
        let p = y3_bar();
        // H = eta_1 - eta_2
        let h = qv(&[-1, 1, 0, 0]);
        let r = mass_linear_test(&p, &h).unwrap();
        assert_eq!(r.gamma, Some(qv(&[1, -1, 0, 0, 0, 0])));
        let red = inessential_reduction(&p, &h, &[0, 1]).unwrap();
        assert_eq!(red.h_tilde, qv(&[0, 0, 0, 0]));
        assert!(is_inessential(&p, &h).unwrap().is_some());
        assert!(matches!(inessential_reduction(&p, &h, &[0, 2]), Err(Error::NotAClass(_))));
    }

    #[test]
    fn symmetric_facets_without_linearity() {
        let trap =
            HPolytope::from_rows(&[vec![-1, 0], vec![0, -1], vec![1, 1], vec![-1, -1]], qv(&[0, 0, 2, -1])).unwrap();
        let h = qv(&[1, 1]);
        let r = mass_linear_test(&trap, &h).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.symmetric, Vec::<usize>::new());
        let full = fully_mass_linear_test(&trap, &h).unwrap();
        assert!(!full.verdict);
        assert!(!full.mass_linear_by_barycenters());
    }
}
