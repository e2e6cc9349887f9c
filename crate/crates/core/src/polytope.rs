//! Half-space polytopes `{x : <eta_i, x> <= kappa_i}` with primitive integer
//! conormals and rational support numbers.
//!
//! Vertices are found by scanning all `n`-subsets of facets, which costs
//! `O(N^n)` small linear solves; at the sizes handled here (`n <= 4`,
//! `N <= 14` or so) that is at most a thousand solves.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::kernel::linalg::{is_primitive, QMatrix};
use crate::kernel::{
    determinant, dot, int_vec, inverse, mat_vec, rank, to_rational_vec, IntVector, QVector, Rational, MAX_VARS,
};
use crate::measure::Symbolic;

/// Bit set of facet indices.
pub type FacetMask = u64;

pub fn mask_of(indices: &[usize]) -> FacetMask {
    indices.iter().fold(0, |m, &i| m | (1u64 << i))
}

pub fn indices_of(mask: FacetMask) -> Vec<usize> {
    (0..64).filter(|i| mask & (1u64 << i) != 0).collect()
}

/// A vertex together with the facets meeting there.
#[derive(Clone, PartialEq, Eq)]
pub struct Vertex {
    pub point: QVector,
    /// The `n` facets active at the vertex, increasing.
    pub basis: Vec<usize>,
    /// Inverse of the matrix whose rows are the active conormals.
    pub(crate) inv: QMatrix,
}

impl Vertex {
    pub fn mask(&self) -> FacetMask {
        mask_of(&self.basis)
    }

    /// Direction of the edge leaving the vertex along which every active
    /// facet except `basis[pos]` stays active. It satisfies
    /// `<eta_basis[pos], w> = -1`.
    pub fn edge_direction(&self, pos: usize) -> QVector {
        self.inv.iter().map(|row| -&row[pos]).collect()
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({:?} on {:?})", self.point, self.basis)
    }
}

/// A nonempty face, indexed by all facets containing it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub index_set: Vec<usize>,
    pub vertex_ids: Vec<usize>,
}

/// Smooth or simple polytope in half-space form.
#[derive(Clone)]
pub struct HPolytope {
    name: Option<String>,
    dim: usize,
    conormals: Vec<IntVector>,
    eta: Vec<QVector>,
    kappa: QVector,
    labels: Vec<String>,
    vertices: Vec<Vertex>,
    pub(crate) symbolic: OnceLock<Arc<Symbolic>>,
}

impl PartialEq for HPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.conormals == other.conormals
            && self.kappa == other.kappa
            && self.labels == other.labels
    }
}

impl Eq for HPolytope {}

impl fmt::Debug for HPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "HPolytope {} (dim {})", self.name.as_deref().unwrap_or("-"), self.dim)?;
        for i in 0..self.num_facets() {
            writeln!(f, "  {:>4}: {:?} <= {}", self.labels[i], self.conormals[i], self.kappa[i])?;
        }
        Ok(())
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl HPolytope {
    /// Validates and builds a polytope.
    ///
    /// # Errors
    ///
    /// Fails if the data is inconsistent, a conormal is not primitive, or the
    /// polytope is empty, unbounded, non-simple or has a redundant half-space.
    pub fn new(conormals: Vec<IntVector>, kappa: QVector) -> Result<Self> {
        let n_facets = conormals.len();
        let dim = conormals.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::DimensionMismatch("no conormals or zero dimension".into()));
        }
        if conormals.iter().any(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch("conormals have different lengths".into()));
        }
        if kappa.len() != n_facets {
            return Err(Error::DimensionMismatch(format!(
                "{} support numbers for {} conormals",
                kappa.len(),
                n_facets
            )));
        }
        if n_facets > MAX_VARS {
            return Err(Error::TooManyFacets(n_facets));
        }
        if let Some(facet) = conormals.iter().position(|c| !is_primitive(c)) {
            return Err(Error::NotPrimitive { facet });
        }
        let eta: Vec<QVector> = conormals.iter().map(|c| to_rational_vec(c)).collect();
        let labels = (1..=n_facets).map(|i| format!("F{i}")).collect();
        let vertices = enumerate_vertices(&eta, &kappa)?;
        Ok(HPolytope { name: None, dim, conormals, eta, kappa, labels, vertices, symbolic: OnceLock::new() })
    }

    /// Builds from small integer conormals.
    ///
    /// # Errors
    ///
    /// As for [`HPolytope::new`].
    pub fn from_rows(rows: &[Vec<i64>], kappa: QVector) -> Result<Self> {
        HPolytope::new(rows.iter().map(|r| int_vec(r)).collect(), kappa)
    }

    /// Replaces the facet labels.
    ///
    /// # Errors
    ///
    /// Fails if the number of labels differs from the number of facets.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.num_facets() {
            return Err(Error::DimensionMismatch(format!("{} labels for {} facets", labels.len(), self.num_facets())));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Same conormals, labels and name with new support numbers.
    ///
    /// # Errors
    ///
    /// As for [`HPolytope::new`].
    pub fn with_kappa(&self, kappa: QVector) -> Result<Self> {
        let mut p = HPolytope::new(self.conormals.clone(), kappa)?;
        p.labels = self.labels.clone();
        p.name = self.name.clone();
        Ok(p)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_facets(&self) -> usize {
        self.conormals.len()
    }

    pub fn conormals(&self) -> &[IntVector] {
        &self.conormals
    }

    pub fn conormal(&self, i: usize) -> &IntVector {
        &self.conormals[i]
    }

    /// Conormal `i` as a rational vector.
    pub fn eta(&self, i: usize) -> &QVector {
        &self.eta[i]
    }

    pub fn etas(&self) -> &[QVector] {
        &self.eta
    }

    pub fn kappa(&self) -> &[Rational] {
        &self.kappa
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Index of the facet with the given label.
    pub fn facet_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Slack `kappa_i - <eta_i, x>` of facet `i` at `x`.
    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        &self.kappa[i] - dot(&self.eta[i], x)
    }

    /// Always true: construction rejects non-simple input.
    pub fn is_simple(&self) -> bool {
        true
    }

    /// The first vertex whose active conormals do not form a lattice basis.
    pub fn smoothness_violation(&self) -> Option<(Vec<usize>, Rational)> {
        self.vertices.iter().find_map(|v| {
            let rows: Vec<QVector> = v.basis.iter().map(|&j| self.eta[j].clone()).collect();
            let d = determinant(&rows);
            (!d.abs().is_one()).then(|| (v.basis.clone(), d))
        })
    }

    pub fn is_smooth(&self) -> bool {
        self.smoothness_violation().is_none()
    }

    /// # Errors
    ///
    /// [`Error::NotSmooth`] naming the first offending vertex.
    pub fn check_smooth(&self) -> Result<()> {
        match self.smoothness_violation() {
            None => Ok(()),
            Some((basis, det)) => Err(Error::NotSmooth { basis, det }),
        }
    }

    /// Whether `F_I` is nonempty.
    pub fn meets(&self, indices: &[usize]) -> bool {
        let m = mask_of(indices);
        self.vertices.iter().any(|v| v.mask() & m == m)
    }

    /// The face `F_I`, or `None` if the intersection is empty.
    pub fn face(&self, indices: &[usize]) -> Option<Face> {
        self.face_by_mask(mask_of(indices))
    }

    pub fn face_by_mask(&self, m: FacetMask) -> Option<Face> {
        let ids: Vec<usize> = (0..self.vertices.len()).filter(|&i| self.vertices[i].mask() & m == m).collect();
        if ids.is_empty() {
            return None;
        }
        let canon = ids.iter().fold(!0u64, |acc, &i| acc & self.vertices[i].mask());
        let index_set = indices_of(canon);
        Some(Face { dim: self.dim - index_set.len(), index_set, vertex_ids: ids })
    }

    /// All nonempty faces including the polytope itself, ordered by dimension
    /// and then by index set.
    pub fn face_lattice(&self) -> Vec<Face> {
        let mut masks = BTreeSet::new();
        for v in &self.vertices {
            let full = v.mask();
            let mut sub = full;
            loop {
                masks.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & full;
            }
        }
        let mut faces: Vec<Face> = masks.into_iter().filter_map(|m| self.face_by_mask(m)).collect();
        faces.sort();
        faces.dedup();
        faces
    }

    pub fn faces_of_dim(&self, k: usize) -> Vec<Face> {
        self.face_lattice().into_iter().filter(|f| f.dim == k).collect()
    }

    /// Facets other than `i` that meet facet `i`.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.num_facets()).filter(|&j| j != i && self.meets(&[i, j])).collect()
    }

    /// A facet is pervasive if it meets every other facet.
    pub fn is_pervasive(&self, i: usize) -> bool {
        self.neighbors(i).len() + 1 == self.num_facets()
    }

    /// A facet is flat if the conormals of all other facets meeting it lie in
    /// a hyperplane.
    pub fn is_flat(&self, i: usize) -> bool {
        let rows: Vec<QVector> = self.neighbors(i).iter().map(|&j| self.eta[j].clone()).collect();
        rank(&rows) < self.dim
    }

    /// Sorted list of vertex bases; determines the face pattern.
    pub fn basis_pattern(&self) -> Vec<Vec<usize>> {
        let mut b: Vec<Vec<usize>> = self.vertices.iter().map(|v| v.basis.clone()).collect();
        b.sort();
        b
    }

    /// Whether `kappa2` gives a smooth polytope with the same face pattern,
    /// checked at `kappa2` and at the midpoint of the segment from `kappa`.
    pub fn in_same_chamber(&self, kappa2: &[Rational]) -> bool {
        if kappa2.len() != self.num_facets() {
            return false;
        }
        let pattern = self.basis_pattern();
        let mid: QVector = self.kappa.iter().zip(kappa2).map(|(a, b)| (a + b) / Rational::from(2)).collect();
        [kappa2.to_vec(), mid].into_iter().all(|k| match self.with_kappa(k) {
            Ok(p) => p.basis_pattern() == pattern && p.is_smooth(),
            Err(_) => false,
        })
    }

    /// A radius per facet such that every support vector within that box of
    /// `kappa` lies in the chamber. The bound is the smallest vertex slack
    /// divided by `1 + |eta_m A_J^{-1}|_1`, halved.
    ///
    /// # Errors
    ///
    /// Fails on non-smooth input.
    pub fn chamber_radius(&self) -> Result<QVector> {
        self.check_smooth()?;
        let mut best: Option<Rational> = None;
        for v in &self.vertices {
            for m in 0..self.num_facets() {
                if v.basis.contains(&m) {
                    continue;
                }
                let s = self.slack(m, &v.point);
                let row_norm: Rational = (0..self.dim)
                    .map(|l| {
                        let c: Rational = (0..self.dim).map(|t| &self.eta[m][t] * &v.inv[t][l]).sum();
                        c.abs()
                    })
                    .sum();
                let bound = s / (Rational::one() + row_norm);
                if best.as_ref().map_or(true, |b| bound < *b) {
                    best = Some(bound);
                }
            }
        }
        let r = best.unwrap_or_else(Rational::one) / Rational::from(2);
        Ok(vec![r; self.num_facets()])
    }

    /// Translates by `xi`: `kappa_i -> kappa_i + <eta_i, xi>`.
    ///
    /// # Panics
    ///
    /// Panics if `xi` has the wrong length.
    pub fn translate(&self, xi: &[Rational]) -> HPolytope {
        assert_eq!(xi.len(), self.dim, "translation vector has wrong length");
        let kappa = (0..self.num_facets()).map(|i| &self.kappa[i] + dot(&self.eta[i], xi)).collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                point: v.point.iter().zip(xi).map(|(a, b)| a + b).collect(),
                basis: v.basis.clone(),
                inv: v.inv.clone(),
            })
            .collect();
        HPolytope {
            name: self.name.clone(),
            dim: self.dim,
            conormals: self.conormals.clone(),
            eta: self.eta.clone(),
            kappa,
            labels: self.labels.clone(),
            vertices,
            symbolic: OnceLock::new(),
        }
    }

    /// Sum of the conormals with the given indices.
    pub fn conormal_sum(&self, indices: &[usize]) -> IntVector {
        let mut s = vec![BigInt::from(0); self.dim];
        for &i in indices {
            for (x, y) in s.iter_mut().zip(&self.conormals[i]) {
                *x += y;
            }
        }
        s
    }

    /// Sum of the support numbers with the given indices.
    pub fn kappa_sum(&self, indices: &[usize]) -> Rational {
        indices.iter().map(|&i| &self.kappa[i]).sum()
    }

    /// Lexicographically smallest vertex among `ids`.
    pub fn lex_min_vertex(&self, ids: &[usize]) -> usize {
        *ids.iter()
            .min_by(|&&a, &&b| self.vertices[a].point.cmp(&self.vertices[b].point))
            .expect("nonempty vertex list")
    }

    /// Greatest common unit: largest absolute conormal entry, for diagnostics.
    pub fn max_conormal_entry(&self) -> BigInt {
        self.conormals.iter().flatten().map(Signed::abs).max().unwrap_or_default()
    }
}

fn enumerate_vertices(eta: &[QVector], kappa: &[Rational]) -> Result<Vec<Vertex>> {
    let n = eta[0].len();
    let big_n = eta.len();
    let full_rank = rank(eta) == n;
    let mut vertices = Vec::new();
    if full_rank {
        for basis in combinations(big_n, n) {
            let rows: Vec<QVector> = basis.iter().map(|&j| eta[j].clone()).collect();
            let rhs: QVector = basis.iter().map(|&j| kappa[j].clone()).collect();
            let Some(inv) = inverse(&rows) else { continue };
            let x = mat_vec(&inv, &rhs);
            let mut feasible = true;
            let mut extra = Vec::new();
            for m in 0..big_n {
                if basis.contains(&m) {
                    continue;
                }
                let s = &kappa[m] - dot(&eta[m], &x);
                if s.is_negative() {
                    feasible = false;
                    break;
                }
                if s.is_zero() {
                    extra.push(m);
                }
            }
            if !feasible {
                continue;
            }
            if !extra.is_empty() {
                let mut facets = basis.clone();
                facets.extend(extra);
                facets.sort_unstable();
                return Err(Error::NonSimple { facets });
            }
            vertices.push(Vertex { point: x, basis, inv });
        }
    }
    if vertices.is_empty() {
        return Err(if full_rank { Error::Empty } else { Error::Unbounded });
    }
    for v in &vertices {
        for pos in 0..n {
            let w = v.edge_direction(pos);
            let blocked = (0..big_n).any(|m| !v.basis.contains(&m) && dot(&eta[m], &w).is_positive());
            if !blocked {
                return Err(Error::Unbounded);
            }
        }
    }
    let used = vertices.iter().fold(0u64, |m, v| m | v.mask());
    if let Some(facet) = (0..big_n).find(|&i| used & (1u64 << i) == 0) {
        return Err(Error::Redundant { facet });
    }
    Ok(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{q, qi};

    fn qv(v: &[i64]) -> QVector {
        v.iter().map(|&x| qi(x)).collect()
    }

    pub(crate) fn delta2() -> HPolytope {
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

    fn euler(p: &HPolytope) -> i64 {
        p.face_lattice().iter().map(|f| if f.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    #[test]
    fn simplex_vertices() {
        let p = delta2();
        let pts: Vec<QVector> = p.vertices().iter().map(|v| v.point.clone()).collect();
        assert_eq!(pts.len(), 3);
        for want in [qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])] {
            assert!(pts.contains(&want));
        }
        assert!(p.is_smooth());
    }

    #[test]
    fn square_and_bundle_vertex_counts() {
        assert_eq!(square().vertices().len(), 4);
        assert_eq!(y3().vertices().len(), 8);
    }

    #[test]
    fn face_lattice_of_triangle() {
        let p = delta2();
        let faces = p.face_lattice();
        assert_eq!(faces.iter().filter(|f| f.dim == 0).count(), 3);
        assert_eq!(faces.iter().filter(|f| f.dim == 1).count(), 3);
        assert_eq!(faces.iter().filter(|f| f.dim == 2).count(), 1);
        assert_eq!(euler(&p), 1);
    }

    #[test]
    fn faces_of_bundle() {
        let p = y3();
        assert!(p.face(&[0, 1, 2, 3]).is_none());
        let e = p.face(&[1, 3, 4]).unwrap();
        assert_eq!(e.dim, 1);
        assert_eq!(e.vertex_ids.len(), 2);
        assert_eq!(euler(&p), 1);
    }

    #[test]
    fn smoothness() {
        let bad = HPolytope::from_rows(&[vec![-1, 0], vec![0, -1], vec![1, 2]], qv(&[0, 0, 2])).unwrap();
        assert!(!bad.is_smooth());
        assert!(bad.check_smooth().is_err());
    }

    #[test]
    fn construction_errors() {
        let rows = [vec![-1, 0], vec![0, -1], vec![1, 1]];
        assert_eq!(HPolytope::from_rows(&rows, qv(&[0, 0, -1])).unwrap_err(), Error::Empty);
        let unb = [vec![-1, 0], vec![0, -1], vec![1, 0]];
        assert_eq!(HPolytope::from_rows(&unb, qv(&[0, 0, 1])).unwrap_err(), Error::Unbounded);
        let red = [vec![-1, 0], vec![0, -1], vec![1, 1], vec![1, 0]];
        assert_eq!(HPolytope::from_rows(&red, qv(&[0, 0, 1, 5])).unwrap_err(), Error::Redundant { facet: 3 });
        let deg = [vec![-1, 0], vec![0, -1], vec![1, 1], vec![1, 0]];
        assert!(matches!(HPolytope::from_rows(&deg, qv(&[0, 0, 1, 1])), Err(Error::NonSimple { .. })));
        let np = [vec![-2, 0], vec![0, -1], vec![1, 1]];
        assert_eq!(HPolytope::from_rows(&np, qv(&[0, 0, 1])).unwrap_err(), Error::NotPrimitive { facet: 0 });
    }

    #[test]
    fn chambers() {
        let p = delta2();
        assert!(p.in_same_chamber(p.kappa()));
        assert!(!p.in_same_chamber(&qv(&[0, 0, -1])));
        let y = y3();
        assert!(y.in_same_chamber(&[qi(0), qi(0), qi(0), qi(1), qi(0), q(3, 2)]));
        assert!(!y.in_same_chamber(&[qi(0), qi(0), qi(0), qi(1), qi(0), q(1, 2)]));
        let r = y.chamber_radius().unwrap();
        for i in 0..y.num_facets() {
            for s in [1, -1] {
                let mut k = y.kappa().to_vec();
                k[i] += &r[i] * qi(s);
                assert!(y.in_same_chamber(&k));
            }
        }
    }

    #[test]
    fn translation() {
        let p = delta2();
        assert_eq!(p.translate(&qv(&[0, 0])), p);
        let t = p.translate(&qv(&[1, 1]));
        assert_eq!(t.kappa(), &qv(&[-1, -1, 3])[..]);
        assert_eq!(t.basis_pattern(), p.basis_pattern());
        assert!(t.vertices().iter().any(|v| v.point == qv(&[1, 1])));
    }

    #[test]
    fn edge_directions_are_dual_to_active_conormals() {
        let p = y3();
        for v in p.vertices() {
            for pos in 0..4 {
                let w = v.edge_direction(pos);
                for (t, &j) in v.basis.iter().enumerate() {
                    let want = if t == pos { qi(-1) } else { qi(0) };
                    assert_eq!(dot(p.eta(j), &w), want);
                }
                assert!(w.iter().all(Rational::is_integer));
            }
        }
    }

    #[test]
    fn pervasive_and_flat() {
        let p = y3();
        // base facets meet every fiber facet but not each other
        assert!(!p.is_pervasive(4));
        assert!(p.is_pervasive(0));
        let s = square();
        assert!(s.is_flat(0));
    }
}
