//! Volumes, moments and barycenters.
//!
//! Inside a chamber every vertex is a linear function of the support numbers,
//! so a pulling triangulation computed at the base point yields the volume
//! and the coordinate moments as exact polynomials in `k1..kN`. For smooth
//! polytopes the vertex forms have integer coefficients, which lets the
//! accumulation run on machine integers with a big-integer fallback.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kernel::poly::{Coeff, IntPoly};
use crate::kernel::{determinant, dot, Monomial, MultiPoly, QMatrix, QVector, Rational};
use crate::polytope::{indices_of, mask_of, Face, FacetMask, HPolytope};

/// A vertex as a linear function of the support numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamVertex {
    pub basis: Vec<usize>,
    /// `forms[i][l]` is the coefficient of `k_{basis[l]}` in coordinate `i`.
    pub forms: QMatrix,
}

impl ParamVertex {
    /// Coordinate `i` as a dense linear form over all `n_facets` variables.
    pub fn coordinate_form(&self, i: usize, n_facets: usize) -> QVector {
        let mut v = vec![Rational::zero(); n_facets];
        for (l, &j) in self.basis.iter().enumerate() {
            v[j] = self.forms[i][l].clone();
        }
        v
    }

    pub fn eval(&self, kappa: &[Rational]) -> QVector {
        self.forms.iter().map(|row| row.iter().zip(&self.basis).map(|(c, &j)| c * &kappa[j]).sum()).collect()
    }

    fn sparse_form(&self, i: usize) -> Vec<(usize, Rational)> {
        self.basis.iter().zip(&self.forms[i]).map(|(&j, c)| (j, c.clone())).collect()
    }
}

/// One full-dimensional simplex of a triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    /// Indices into [`Triangulation::vertices`], anchor first.
    pub vertex_ids: Vec<usize>,
    /// Sign of `det(v1 - v0, ..., vn - v0)` at the base support numbers.
    pub sign: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub vertices: Vec<ParamVertex>,
    pub simplices: Vec<Simplex>,
}

/// Cached symbolic data of a polytope.
#[derive(Debug)]
pub struct Symbolic {
    pub triangulation: Triangulation,
    /// `V(k)`.
    pub volume: MultiPoly,
    /// `mu_{e_i}(k)` for each coordinate `i`.
    pub moments: Vec<MultiPoly>,
}

/// Pulling triangulation of the face with the given facet mask: pick the
/// lexicographically smallest vertex and cone it over the triangulations of
/// the subfaces not containing it. Returns vertex id lists.
pub(crate) fn pull_face(
    p: &HPolytope,
    mask: FacetMask,
    memo: &mut HashMap<FacetMask, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(t) = memo.get(&mask) {
        return t.clone();
    }
    let face = p.face_by_mask(mask).expect("pulling only visits nonempty faces");
    let out = if face.dim == 0 {
        vec![vec![face.vertex_ids[0]]]
    } else {
        let anchor = p.lex_min_vertex(&face.vertex_ids);
        let amask = p.vertices()[anchor].mask();
        let mut out = Vec::new();
        for j in 0..p.num_facets() {
            let bit = 1u64 << j;
            if mask & bit != 0 || amask & bit != 0 {
                continue;
            }
            let sub = mask | bit;
            match p.face_by_mask(sub) {
                Some(f) if f.dim + 1 == face.dim => {}
                _ => continue,
            }
            for s in pull_face(p, sub, memo) {
                let mut simplex = Vec::with_capacity(s.len() + 1);
                simplex.push(anchor);
                simplex.extend(s);
                out.push(simplex);
            }
        }
        out
    };
    memo.insert(mask, out.clone());
    out
}

fn param_vertices(p: &HPolytope) -> Vec<ParamVertex> {
    p.vertices().iter().map(|v| ParamVertex { basis: v.basis.clone(), forms: v.inv.clone() }).collect()
}

fn diff_matrix(points: &[&QVector]) -> QMatrix {
    let n = points.len() - 1;
    (0..n).map(|i| (1..=n).map(|j| &points[j][i] - &points[0][i]).collect()).collect()
}

/// Pulling triangulation anchored at the lexicographically smallest vertex.
///
/// # Errors
///
/// Fails on non-smooth input.
pub fn triangulate(p: &HPolytope) -> Result<Triangulation> {
    p.check_smooth()?;
    let mut memo = HashMap::new();
    let simplices = pull_face(p, 0, &mut memo)
        .into_iter()
        .map(|ids| {
            let pts: Vec<&QVector> = ids.iter().map(|&i| &p.vertices()[i].point).collect();
            let sign = determinant(&diff_matrix(&pts)).signum();
            Simplex { vertex_ids: ids, sign }
        })
        .collect();
    Ok(Triangulation { vertices: param_vertices(p), simplices })
}

/// Symbolic `n! V` and `(n+1)! mu_{e_i}` accumulated with coefficients `C`.
fn accumulate<C: Coeff>(p: &HPolytope, tri: &Triangulation) -> Option<(IntPoly<C>, Vec<IntPoly<C>>)> {
    let n = p.dim();
    let nv = p.num_facets();
    let forms: Vec<Vec<IntPoly<C>>> = tri
        .vertices
        .iter()
        .map(|v| (0..n).map(|i| IntPoly::linear(nv, &v.sparse_form(i))).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    let neg_one = C::from_rational(&Rational::from(-1))?;
    let one = C::from_rational(&Rational::one())?;
    let mut vol = IntPoly::zero(nv);
    let mut moments: Vec<IntPoly<C>> = (0..n).map(|_| IntPoly::zero(nv)).collect();
    for s in &tri.simplices {
        let v0 = &forms[s.vertex_ids[0]];
        // cols[c][i] = x_i(v_{c+1}) - x_i(v_0)
        let cols: Vec<Vec<IntPoly<C>>> = s.vertex_ids[1..]
            .iter()
            .map(|&vid| {
                (0..n)
                    .map(|i| {
                        let mut d = forms[vid][i].clone();
                        d.add_scaled(&v0[i], &neg_one)?;
                        Some(d)
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        let det = symbolic_det(&cols, nv, &one, &neg_one)?;
        let sign = if s.sign < 0 { &neg_one } else { &one };
        vol.add_scaled(&det, sign)?;
        for (i, m) in moments.iter_mut().enumerate() {
            let mut sum = IntPoly::zero(nv);
            for &vid in &s.vertex_ids {
                sum.add_scaled(&forms[vid][i], &one)?;
            }
            m.add_product(&det, &sum, sign)?;
        }
    }
    Some((vol, moments))
}

/// Determinant of a matrix of polynomials given by columns, by Laplace
/// expansion over growing sets of rows.
fn symbolic_det<C: Coeff>(cols: &[Vec<IntPoly<C>>], nv: usize, one: &C, neg_one: &C) -> Option<IntPoly<C>> {
    let n = cols.len();
    let mut minors: HashMap<FacetMask, IntPoly<C>> = HashMap::new();
    for i in 0..n {
        minors.insert(1u64 << i, cols[0][i].clone());
    }
    for c in 1..n {
        let mut next = HashMap::new();
        for rows in subsets_of_size(n, c + 1) {
            let rl = indices_of(rows);
            let mut acc = IntPoly::zero(nv);
            for (pos, &i) in rl.iter().enumerate() {
                let sub = minors.get(&(rows & !(1u64 << i)));
                let Some(sub) = sub else { continue };
                if sub.is_zero() || cols[c][i].is_zero() {
                    continue;
                }
                let sign = if (pos + c) % 2 == 0 { one } else { neg_one };
                acc.add_product(&cols[c][i], sub, sign)?;
            }
            next.insert(rows, acc);
        }
        minors = next;
    }
    minors.remove(&((1u64 << n) - 1))
}

fn subsets_of_size(n: usize, k: usize) -> Vec<FacetMask> {
    (0..(1u64 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

fn factorial(n: usize) -> Rational {
    (1..=n).map(Rational::from).product()
}

fn compute_symbolic(p: &HPolytope) -> Result<Symbolic> {
    let tri = triangulate(p)?;
    let n = p.dim();
    let (volume, moments) = match accumulate::<i128>(p, &tri) {
        Some((v, m)) => (v.to_multipoly(&factorial(n)), m.iter().map(|x| x.to_multipoly(&factorial(n + 1))).collect()),
        None => {
            let (v, m) =
                accumulate::<BigInt>(p, &tri).ok_or_else(|| Error::Internal("vertex forms are not integral".into()))?;
            (v.to_multipoly(&factorial(n)), m.iter().map(|x| x.to_multipoly(&factorial(n + 1))).collect())
        }
    };
    Ok(Symbolic { triangulation: tri, volume, moments })
}

/// Symbolic data of `p`, computed once and cached with the polytope.
///
/// # Errors
///
/// Fails on non-smooth input.
pub fn symbolic(p: &HPolytope) -> Result<Arc<Symbolic>> {
    if let Some(s) = p.symbolic.get() {
        return Ok(Arc::clone(s));
    }
    let s = Arc::new(compute_symbolic(p)?);
    let _ = p.symbolic.set(Arc::clone(&s));
    Ok(s)
}

/// Volume as a polynomial in the support numbers, valid on the chamber.
///
/// # Errors
///
/// Fails on non-smooth input.
pub fn volume_poly(p: &HPolytope) -> Result<MultiPoly> {
    Ok(symbolic(p)?.volume.clone())
}

/// `mu_H(k) = integral of <H, x>` as a polynomial in the support numbers.
///
/// # Errors
///
/// Fails on non-smooth input or if `h` has the wrong length.
pub fn moment_poly(p: &HPolytope, h: &[Rational]) -> Result<MultiPoly> {
    check_len(p, h)?;
    let s = symbolic(p)?;
    let mut acc = MultiPoly::zero(p.num_facets());
    for (hi, m) in h.iter().zip(&s.moments) {
        if !hi.is_zero() {
            acc = acc.add(&m.scale(hi))?;
        }
    }
    Ok(acc)
}

pub(crate) fn check_len(p: &HPolytope, h: &[Rational]) -> Result<()> {
    if h.len() == p.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("functional of length {} in dimension {}", h.len(), p.dim())))
    }
}

/// Volume at the base support numbers, summed over the triangulation.
///
/// # Errors
///
/// Fails on non-smooth input.
pub fn numeric_volume(p: &HPolytope) -> Result<Rational> {
    Ok(numeric_integrals(p)?.0)
}

fn numeric_integrals(p: &HPolytope) -> Result<(Rational, QVector)> {
    let s = symbolic(p)?;
    let n = p.dim();
    let nf = factorial(n);
    let mut vol = Rational::zero();
    let mut mom = vec![Rational::zero(); n];
    for simplex in &s.triangulation.simplices {
        let pts: Vec<&QVector> = simplex.vertex_ids.iter().map(|&i| &p.vertices()[i].point).collect();
        let v = determinant(&diff_matrix(&pts)).abs() / &nf;
        for (i, m) in mom.iter_mut().enumerate() {
            let sum: Rational = pts.iter().map(|x| &x[i]).sum();
            *m += &v * sum / Rational::from(n + 1);
        }
        vol += v;
    }
    Ok((vol, mom))
}

/// Center of mass at the base support numbers.
///
/// # Errors
///
/// Fails on non-smooth input or zero volume.
pub fn center_of_mass(p: &HPolytope) -> Result<QVector> {
    let (vol, mom) = numeric_integrals(p)?;
    if vol.is_zero() {
        return Err(Error::ZeroVolume);
    }
    Ok(mom.into_iter().map(|m| m / &vol).collect())
}

/// `<H, c(k)>` at an arbitrary support vector of the chamber, from the
/// symbolic polynomials.
///
/// # Errors
///
/// Fails on non-smooth input, wrong lengths, or zero volume at `kappa`.
pub fn functional_at(p: &HPolytope, h: &[Rational], kappa: &[Rational]) -> Result<Rational> {
    let v = volume_poly(p)?.eval(kappa)?;
    if v.is_zero() {
        return Err(Error::ZeroVolume);
    }
    Ok(moment_poly(p, h)?.eval(kappa)? / v)
}

/// Exact integral over the polytope (at the base support numbers) of a
/// polynomial in the coordinates `x1..xn`, given as a [`MultiPoly`] in `n`
/// variables. Each simplex is handled in barycentric coordinates, where
/// `integral of b^beta = n! vol beta! / (|beta| + n)!`.
///
/// # Errors
///
/// Fails on non-smooth input or if `f` has the wrong variable count.
pub fn polynomial_integral(p: &HPolytope, f: &MultiPoly) -> Result<Rational> {
    let n = p.dim();
    if f.nvars() != n {
        return Err(Error::VariableMismatch { left: n, right: f.nvars() });
    }
    let s = symbolic(p)?;
    let nf = factorial(n);
    let mut total = Rational::zero();
    for simplex in &s.triangulation.simplices {
        let pts: Vec<&QVector> = simplex.vertex_ids.iter().map(|&i| &p.vertices()[i].point).collect();
        let vol = determinant(&diff_matrix(&pts)).abs() / &nf;
        // x_j = sum_t b_t v_t[j], with b in n+1 barycentric variables
        let coords: Vec<MultiPoly> =
            (0..n).map(|j| MultiPoly::linear(&pts.iter().map(|v| v[j].clone()).collect::<Vec<_>>())).collect();
        let mut g = MultiPoly::zero(n + 1);
        for (m, c) in f.terms() {
            let mut t = MultiPoly::constant(n + 1, c.clone());
            for (j, cj) in coords.iter().enumerate() {
                for _ in 0..m.exponent(j) {
                    t = t.mul(cj)?;
                }
            }
            g = g.add(&t)?;
        }
        let mut acc = Rational::zero();
        for (m, c) in g.terms() {
            let beta = m.exponents(n + 1);
            let num: Rational = beta.iter().map(|&b| factorial(b as usize)).product();
            let deg: usize = beta.iter().map(|&b| b as usize).sum();
            acc += c * num / factorial(deg + n);
        }
        total += acc * &nf * vol;
    }
    Ok(total)
}

/// Lattice-normalized measure of a face and its first moment `integral x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceMeasure {
    pub volume: Rational,
    pub moment: QVector,
}

impl FaceMeasure {
    pub fn barycenter(&self) -> QVector {
        self.moment.iter().map(|m| m / &self.volume).collect()
    }
}

/// Measure of a face induced by the integral lattice of its direction
/// space. At a vertex of a smooth polytope the slacks of the active facets
/// not containing the face are lattice coordinates on the face, so volumes
/// are taken in those coordinates.
///
/// # Errors
///
/// Fails on non-smooth input.
pub fn face_measure(p: &HPolytope, f: &Face) -> Result<FaceMeasure> {
    p.check_smooth()?;
    let mut memo = HashMap::new();
    face_measure_with(p, f, &mut memo)
}

fn face_measure_with(p: &HPolytope, f: &Face, memo: &mut HashMap<FacetMask, Vec<Vec<usize>>>) -> Result<FaceMeasure> {
    let n = p.dim();
    if f.dim == 0 {
        return Ok(FaceMeasure { volume: Rational::one(), moment: p.vertices()[f.vertex_ids[0]].point.clone() });
    }
    let base = &p.vertices()[f.vertex_ids[0]];
    let free: Vec<usize> = base.basis.iter().copied().filter(|j| !f.index_set.contains(j)).collect();
    let lattice_coords = |x: &QVector| -> QVector { free.iter().map(|&j| p.slack(j, x)).collect() };
    let df = factorial(f.dim);
    let mut volume = Rational::zero();
    let mut moment = vec![Rational::zero(); n];
    for ids in pull_face(p, mask_of(&f.index_set), memo) {
        let ys: Vec<QVector> = ids.iter().map(|&i| lattice_coords(&p.vertices()[i].point)).collect();
        let yrefs: Vec<&QVector> = ys.iter().collect();
        let v = determinant(&diff_matrix(&yrefs)).abs() / &df;
        for (i, m) in moment.iter_mut().enumerate() {
            let sum: Rational = ids.iter().map(|&vid| &p.vertices()[vid].point[i]).sum();
            *m += &v * sum / Rational::from(f.dim + 1);
        }
        volume += v;
    }
    Ok(FaceMeasure { volume, moment })
}

/// Barycenter of the union of the `k`-faces with the lattice measure.
///
/// # Errors
///
/// Fails on non-smooth input or `k > n`.
pub fn skeleton_barycenter(p: &HPolytope, k: usize) -> Result<QVector> {
    if k > p.dim() {
        return Err(Error::InvalidParameter(format!("skeleton dimension {k} exceeds {}", p.dim())));
    }
    if k == p.dim() {
        return center_of_mass(p);
    }
    p.check_smooth()?;
    let mut memo = HashMap::new();
    let mut volume = Rational::zero();
    let mut moment = vec![Rational::zero(); p.dim()];
    for f in p.faces_of_dim(k) {
        let m = face_measure_with(p, &f, &mut memo)?;
        volume += m.volume;
        for (a, b) in moment.iter_mut().zip(m.moment) {
            *a += b;
        }
    }
    Ok(moment.into_iter().map(|m| m / &volume).collect())
}

/// `B_0, ..., B_n`.
///
/// # Errors
///
/// Fails on non-smooth input.
pub fn skeleton_barycenters(p: &HPolytope) -> Result<Vec<QVector>> {
    (0..=p.dim()).map(|k| skeleton_barycenter(p, k)).collect()
}

/// `<H, x>` for each point.
pub fn pair_all(h: &[Rational], points: &[QVector]) -> QVector {
    points.iter().map(|x| dot(h, x)).collect()
}

/// Univariate helper used by tests and oracles: the monomial `x^e` in
/// variable `i` of `nvars`.
pub fn coordinate_monomial(nvars: usize, exps: &[u32]) -> MultiPoly {
    MultiPoly::from_terms(nvars, [(Monomial::from_exponents(exps), Rational::one())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{q, qi};

    fn qv(v: &[i64]) -> QVector {
        v.iter().map(|&x| qi(x)).collect()
    }

    fn delta2() -> HPolytope {
        HPolytope::from_rows(&[vec![-1, 0], vec![0, -1], vec![1, 1]], qv(&[0, 0, 1])).unwrap()
    }

    fn square() -> HPolytope {
        HPolytope::from_rows(&[vec![-1, 0], vec![1, 0], vec![0, -1], vec![0, 1]], qv(&[0, 1, 0, 1])).unwrap()
    }

    fn y3() -> HPolytope {
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
    fn triangulation_sizes() {
        assert_eq!(triangulate(&delta2()).unwrap().simplices.len(), 1);
        assert_eq!(triangulate(&square()).unwrap().simplices.len(), 2);
        let y = y3();
        assert_eq!(numeric_volume(&y).unwrap(), q(1, 4));
    }

    #[test]
    fn segment_volume() {
        let seg = HPolytope::from_rows(&[vec![-1], vec![1]], qv(&[0, 1])).unwrap();
        assert_eq!(volume_poly(&seg).unwrap(), MultiPoly::linear(&qv(&[1, 1])));
    }

    #[test]
    fn simplex_volume_poly() {
        let v = volume_poly(&delta2()).unwrap();
        let s = MultiPoly::linear(&qv(&[1, 1, 1]));
        assert_eq!(v, s.mul(&s).unwrap().scale(&q(1, 2)));
    }

    #[test]
    fn bundle_volume_matches_base_evaluation() {
        let y = y3();
        let v = volume_poly(&y).unwrap();
        assert_eq!(v.eval(y.kappa()).unwrap(), q(1, 4));
        assert_eq!(v.degree(), Some(4));
        assert!(v.is_homogeneous());
        let mu = moment_poly(&y, &qv(&[1, 0, 0, 0])).unwrap();
        assert_eq!(mu.degree(), Some(5));
    }

    #[test]
    fn mixed_monomial_on_simplex() {
        let lam = qi(2);
        let p = HPolytope::from_rows(&[vec![-1, 0], vec![0, -1], vec![1, 1]], vec![qi(0), qi(0), lam.clone()]).unwrap();
        let f = coordinate_monomial(2, &[1, 1]);
        assert_eq!(polynomial_integral(&p, &f).unwrap(), lam.pow(4) / qi(24));
    }

    #[test]
    fn centers() {
        assert_eq!(center_of_mass(&delta2()).unwrap(), vec![q(1, 3), q(1, 3)]);
        assert_eq!(center_of_mass(&square()).unwrap(), vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn lattice_lengths_of_edges() {
        let rect =
            HPolytope::from_rows(&[vec![-1, 0], vec![1, 0], vec![0, -1], vec![0, 1]], qv(&[0, 2, 0, 1])).unwrap();
        let bottom = rect.face(&[2]).unwrap();
        assert_eq!(face_measure(&rect, &bottom).unwrap().volume, qi(2));
        let tri = delta2();
        let hyp = tri.face(&[2]).unwrap();
        assert_eq!(face_measure(&tri, &hyp).unwrap().volume, qi(1));
        // an edge with direction (1,1)
        let par =
            HPolytope::from_rows(&[vec![1, -1], vec![-1, 1], vec![0, -1], vec![0, 1]], qv(&[0, 1, 0, 1])).unwrap();
        let e = par.face(&[0]).unwrap();
        assert_eq!(face_measure(&par, &e).unwrap().volume, qi(1));
    }

    #[test]
    fn barycenters() {
        let s = square();
        for k in 0..=2 {
            assert_eq!(skeleton_barycenter(&s, k).unwrap(), vec![q(1, 2), q(1, 2)]);
        }
        assert_eq!(skeleton_barycenter(&delta2(), 0).unwrap(), vec![q(1, 3), q(1, 3)]);
        assert_eq!(skeleton_barycenter(&delta2(), 1).unwrap(), vec![q(1, 3), q(1, 3)]);
        let trap =
            HPolytope::from_rows(&[vec![-1, 0], vec![0, -1], vec![1, 1], vec![-1, -1]], qv(&[0, 0, 2, -1])).unwrap();
        let b = skeleton_barycenters(&trap).unwrap();
        assert_eq!(b[0], vec![q(3, 4), q(3, 4)]);
        assert_eq!(b[1], vec![q(4, 5), q(4, 5)]);
        assert_eq!(b[2], vec![q(7, 9), q(7, 9)]);
    }
}
