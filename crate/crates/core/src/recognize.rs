//! Recognizers for the structured families. Each one moves the polytope into
//! lattice coordinates adapted to a vertex, reads off the family parameters,
//! rebuilds the family member with the matching constructor and accepts only
//! on exact equality of conormals and support numbers.

use crate::construct::{
    bundle_121, bundle_d2_polygon, bundle_yk, double_expansion, expansion, Bundle121, BundleD2Polygon, BundleYk,
};
use crate::error::{Error, Result};
use crate::kernel::linalg::to_int_vec;
use crate::kernel::{dot, inverse, solve_linear, IntVector, QMatrix, QVector, Rational};
use crate::masslinear::{equivalence_classes, facets_equivalent, is_inessential, mass_linear_test};
use crate::polytope::HPolytope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    BundleOverSegment,
    Expansion,
    DoubleExpansion,
    Bundle121,
    BundleD2Polygon,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::BundleOverSegment => "bundle_over_segment",
            Family::Expansion => "expansion",
            Family::DoubleExpansion => "double_expansion",
            Family::Bundle121 => "bundle_121",
            Family::BundleD2Polygon => "bundle_d2_polygon",
        }
    }
}

#[derive(Debug, Clone)]
pub enum FamilyParams {
    /// `a` is present when the fiber is a simplex.
    Segment {
        fiber: HPolytope,
        a: Option<Vec<i64>>,
    },
    Bundle121 {
        a: [i64; 3],
        d: i64,
    },
    D2Polygon {
        base: HPolytope,
        twists: Vec<(i64, i64)>,
    },
    /// The expansion facet is the last facet of the core.
    Expansion {
        core: HPolytope,
        k: usize,
    },
    /// Expanded along the last two facets of the core.
    DoubleExpansion {
        core: HPolytope,
    },
}

/// Evidence that a polytope belongs to a family.
///
/// Facet `l` of `normal_form` corresponds to input facet `facet_map[l]`; its
/// conormal is `eta_{facet_map[l]} * matrix` and its support number is
/// `k_{facet_map[l]} + <conormal, translation>`.
#[derive(Debug, Clone)]
pub struct RecognitionCertificate {
    pub family: Family,
    /// Fiber or fiber-type facets, as input indices.
    pub fiber: Vec<usize>,
    /// Base or base-type facets, as input indices.
    pub base: Vec<usize>,
    pub facet_map: Vec<usize>,
    pub matrix: QMatrix,
    pub translation: QVector,
    pub params: FamilyParams,
    pub normal_form: HPolytope,
}

impl RecognitionCertificate {
    /// Recomputes the image of `p` under the recorded map and compares it
    /// with the normal form.
    pub fn verify(&self, p: &HPolytope) -> bool {
        if self.facet_map.len() != p.num_facets() || self.normal_form.num_facets() != p.num_facets() {
            return false;
        }
        let mut seen = vec![false; p.num_facets()];
        for (l, &i) in self.facet_map.iter().enumerate() {
            if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                return false;
            }
            let img = row_times(p.eta(i), &self.matrix);
            if Some(self.normal_form.conormal(l)) != to_int_vec(&img).as_ref() {
                return false;
            }
            if p.kappa()[i].clone() + dot(&img, &self.translation) != self.normal_form.kappa()[l] {
                return false;
            }
        }
        true
    }
}

fn row_times(v: &[Rational], a: &[QVector]) -> QVector {
    (0..a[0].len()).map(|c| v.iter().zip(a).map(|(x, row)| x * &row[c]).sum()).collect()
}

/// Lattice coordinates in which the conormals of `basis` become `target`.
struct Frame {
    matrix: QMatrix,
    eta: Vec<IntVector>,
    translation: QVector,
    kappa: QVector,
}

impl Frame {
    fn new(p: &HPolytope, basis: &[usize], target: &[Vec<i64>]) -> Option<Frame> {
        let b: Vec<QVector> = basis.iter().map(|&i| p.eta(i).clone()).collect();
        let t: Vec<QVector> = target.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect();
        let binv = inverse(&b)?;
        let matrix: QMatrix = binv.iter().map(|row| row_times(row, &t)).collect();
        let eta = p.etas().iter().map(|e| to_int_vec(&row_times(e, &matrix))).collect::<Option<Vec<_>>>()?;
        // move the vertex to the origin
        let rows: Vec<QVector> = basis.iter().map(|&i| eta[i].iter().map(Rational::from).collect()).collect();
        let rhs: QVector = basis.iter().map(|&i| -&p.kappa()[i]).collect();
        let translation = solve_linear(&rows, &rhs).ok()??.particular;
        let kappa = (0..p.num_facets())
            .map(|i| {
                let e: QVector = eta[i].iter().map(Rational::from).collect();
                &p.kappa()[i] + dot(&e, &translation)
            })
            .collect();
        Some(Frame { matrix, eta, translation, kappa })
    }

    fn coord(&self, i: usize, c: usize) -> i64 {
        i64::try_from(&self.eta[i][c]).unwrap_or(i64::MAX)
    }

    fn tail_is(&self, i: usize, from: usize, expected: &[i64]) -> bool {
        (from..self.eta[i].len()).all(|c| self.coord(i, c) == expected[c - from])
    }

    fn head(&self, i: usize, len: usize) -> IntVector {
        self.eta[i][..len].to_vec()
    }

    fn certificate(
        self,
        family: Family,
        fiber: Vec<usize>,
        base: Vec<usize>,
        facet_map: Vec<usize>,
        params: FamilyParams,
        normal_form: HPolytope,
    ) -> Option<RecognitionCertificate> {
        let matches = facet_map
            .iter()
            .enumerate()
            .all(|(l, &i)| normal_form.conormal(l) == &self.eta[i] && normal_form.kappa()[l] == self.kappa[i]);
        matches.then(|| RecognitionCertificate {
            family,
            fiber,
            base,
            facet_map,
            matrix: self.matrix,
            translation: self.translation,
            params,
            normal_form,
        })
    }
}

/// Targets `-e_t` for `basis[t]`, plus `+1` in the tail columns recorded
/// for that facet.
fn adapted_targets(n: usize, basis: &[usize], tails: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut rows = neg_unit_rows(n);
    for (t, l) in basis.iter().enumerate() {
        for &(facet, col) in tails {
            if facet == *l {
                rows[t][col] += 1;
            }
        }
    }
    rows
}

fn neg_unit_rows(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = -1;
            r
        })
        .collect()
}

fn vertex_containing(p: &HPolytope, set: &[usize]) -> Option<Vec<usize>> {
    p.vertices().iter().find(|v| set.iter().all(|i| v.basis.contains(i))).map(|v| v.basis.clone())
}

fn labelled(p: &HPolytope, facet_map: &[usize], conormals: Vec<IntVector>, kappa: QVector) -> Option<HPolytope> {
    let labels = facet_map.iter().map(|&i| p.label(i).to_string()).collect();
    HPolytope::new(conormals, kappa).ok()?.with_labels(labels).ok()
}

fn segment_certificate(p: &HPolytope, i: usize, j: usize) -> Option<RecognitionCertificate> {
    let n = p.dim();
    let fibers: Vec<usize> = (0..p.num_facets()).filter(|&l| l != i && l != j).collect();
    let basis = vertex_containing(p, &[i])?;
    let mut ordered: Vec<usize> = basis.iter().copied().filter(|&l| l != i).collect();
    ordered.push(i);
    let frame = Frame::new(p, &ordered, &neg_unit_rows(n))?;
    let mut tail = vec![0; 1];
    if !fibers.iter().all(|&l| frame.tail_is(l, n - 1, &tail)) {
        return None;
    }
    tail[0] = 1;
    if !frame.tail_is(j, n - 1, &tail) {
        return None;
    }
    let fiber_rows: Vec<IntVector> = fibers.iter().map(|&l| frame.head(l, n - 1)).collect();
    let fiber_kappa: QVector = fibers.iter().map(|&l| frame.kappa[l].clone()).collect();
    let fiber = labelled(p, &fibers, fiber_rows, fiber_kappa)?;
    if fibers.len() == n {
        let k = n - 1;
        let leftover = *fibers.iter().find(|l| !ordered.contains(l))?;
        let mut facet_map: Vec<usize> = ordered[..k].to_vec();
        facet_map.extend([leftover, i, j]);
        let a: Vec<i64> = (0..k).map(|c| frame.coord(j, c)).collect();
        let kappa = facet_map.iter().map(|&l| frame.kappa[l].clone()).collect();
        let spec = BundleYk { k, a: a.clone(), kappa };
        if let Ok(y) = bundle_yk(&spec) {
            let labels = facet_map.iter().map(|&l| p.label(l).to_string()).collect();
            let y = y.with_labels(labels).ok()?;
            return frame.certificate(
                Family::BundleOverSegment,
                fibers,
                vec![i, j],
                facet_map,
                FamilyParams::Segment { fiber, a: Some(a) },
                y,
            );
        }
    }
    let mut facet_map = fibers.clone();
    facet_map.extend([i, j]);
    let conormals = facet_map.iter().map(|&l| frame.eta[l].clone()).collect();
    let kappa = facet_map.iter().map(|&l| frame.kappa[l].clone()).collect();
    let nf = labelled(p, &facet_map, conormals, kappa)?;
    frame.certificate(
        Family::BundleOverSegment,
        fibers,
        vec![i, j],
        facet_map,
        FamilyParams::Segment { fiber, a: None },
        nf,
    )
}

/// Every presentation of `p` as a bundle over a segment, one per class
/// `{i, j}` with `F_i ∩ F_j` empty, in facet order.
///
/// # Errors
///
/// Fails on non-smooth input.
pub fn recognize_bundle_over_segment_all(p: &HPolytope) -> Result<Vec<RecognitionCertificate>> {
    let classes = equivalence_classes(p)?;
    Ok(classes
        .classes
        .iter()
        .filter(|c| c.len() == 2 && !p.meets(c))
        .filter_map(|c| segment_certificate(p, c[0], c[1]))
        .collect())
}

/// # Errors
///
/// Fails on non-smooth input.
pub fn recognize_bundle_over_segment(p: &HPolytope) -> Result<Option<RecognitionCertificate>> {
    Ok(recognize_bundle_over_segment_all(p)?.into_iter().next())
}

fn subsets_of(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if items.len() < size {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = subsets_of(&items[1..], size - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    out.extend(subsets_of(&items[1..], size));
    out
}

fn expansion_certificate(p: &HPolytope, set: &[usize], last: usize) -> Option<RecognitionCertificate> {
    let n = p.dim();
    let inner: Vec<usize> = set.iter().copied().filter(|&l| l != last).collect();
    let k = inner.len();
    let m = n - k;
    let basis = vertex_containing(p, &inner)?;
    let mut ordered: Vec<usize> = basis.iter().copied().filter(|l| !inner.contains(l)).collect();
    ordered.extend(&inner);
    let tails: Vec<(usize, usize)> = (m..n).map(|c| (last, c)).collect();
    let frame = Frame::new(p, &ordered, &adapted_targets(n, &ordered, &tails))?;
    let fibers: Vec<usize> = (0..p.num_facets()).filter(|l| !set.contains(l)).collect();
    if !fibers.iter().all(|&l| frame.tail_is(l, m, &vec![0; k])) || !frame.tail_is(last, m, &vec![1; k]) {
        return None;
    }
    let mut core_map = fibers.clone();
    core_map.push(last);
    let core = labelled(
        p,
        &core_map,
        core_map.iter().map(|&l| frame.head(l, m)).collect(),
        core_map.iter().map(|&l| frame.kappa[l].clone()).collect(),
    )?;
    let nf = expansion(&core, core_map.len() - 1, k).ok()?;
    let mut facet_map = fibers.clone();
    facet_map.extend(&inner);
    facet_map.push(last);
    let nf = nf.with_labels(facet_map.iter().map(|&l| p.label(l).to_string()).collect()).ok()?;
    frame.certificate(Family::Expansion, fibers, set.to_vec(), facet_map, FamilyParams::Expansion { core, k }, nf)
}

/// Presentations of `p` as a `k`-fold expansion: a set `J` of equivalent
/// facets with `F_J` nonempty, largest sets first.
///
/// # Errors
///
/// Fails on non-smooth input.
pub fn recognize_expansion_all(p: &HPolytope) -> Result<Vec<RecognitionCertificate>> {
    let classes = equivalence_classes(p)?;
    let mut out = Vec::new();
    let max = classes.classes.iter().map(Vec::len).max().unwrap_or(0).min(p.dim() + 1);
    for size in (2..=max).rev() {
        for class in &classes.classes {
            for set in subsets_of(class, size) {
                if !p.meets(&set) {
                    continue;
                }
                if let Some(c) = set.iter().rev().find_map(|&last| expansion_certificate(p, &set, last)) {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// # Errors
///
/// Fails on non-smooth input.
pub fn recognize_expansion(p: &HPolytope) -> Result<Option<RecognitionCertificate>> {
    Ok(recognize_expansion_all(p)?.into_iter().next())
}

fn double_certificate(p: &HPolytope, a: usize, b: usize, c: usize, d: usize) -> Option<RecognitionCertificate> {
    let n = p.dim();
    let basis = vertex_containing(p, &[a, c])?;
    let mut ordered: Vec<usize> = basis.iter().copied().filter(|&l| l != a && l != c).collect();
    ordered.extend([a, c]);
    let frame = Frame::new(p, &ordered, &adapted_targets(n, &ordered, &[(b, n - 2), (d, n - 1)]))?;
    let set = [a, b, c, d];
    let fibers: Vec<usize> = (0..p.num_facets()).filter(|l| !set.contains(l)).collect();
    if !fibers.iter().all(|&l| frame.tail_is(l, n - 2, &[0, 0]))
        || !frame.tail_is(b, n - 2, &[1, 0])
        || !frame.tail_is(d, n - 2, &[0, 1])
    {
        return None;
    }
    let mut core_map = fibers.clone();
    core_map.extend([b, d]);
    let core = labelled(
        p,
        &core_map,
        core_map.iter().map(|&l| frame.head(l, n - 2)).collect(),
        core_map.iter().map(|&l| frame.kappa[l].clone()).collect(),
    )?;
    let len = core_map.len();
    let mut facet_map = fibers.clone();
    facet_map.extend(set);
    let nf = double_expansion(&core, len - 2, len - 1)
        .ok()?
        .with_labels(facet_map.iter().map(|&l| p.label(l).to_string()).collect())
        .ok()?;
    frame.certificate(
        Family::DoubleExpansion,
        fibers,
        set.to_vec(),
        facet_map,
        FamilyParams::DoubleExpansion { core },
        nf,
    )
}

/// Presentations of `p` as a double expansion: two disjoint pairs of
/// equivalent facets `F_1 ~ F_2`, `F_3 ~ F_4` with `F_12` and `F_34` nonempty.
/// Base-type facets are listed as `[F_1, F_2, F_3, F_4]`.
///
/// # Errors
///
/// Fails on non-smooth input.
pub fn recognize_double_expansion_all(p: &HPolytope) -> Result<Vec<RecognitionCertificate>> {
    p.check_smooth()?;
    let n_f = p.num_facets();
    let pairs: Vec<(usize, usize)> = (0..n_f)
        .flat_map(|i| (i + 1..n_f).map(move |j| (i, j)))
        .filter(|&(i, j)| p.meets(&[i, j]) && facets_equivalent(p, i, j))
        .collect();
    let mut out = Vec::new();
    for (s, &(i1, j1)) in pairs.iter().enumerate() {
        for &(i2, j2) in &pairs[s + 1..] {
            if i2 == i1 || i2 == j1 || j2 == i1 || j2 == j1 {
                continue;
            }
            let options = [(i1, j1, i2, j2), (j1, i1, i2, j2), (i1, j1, j2, i2), (j1, i1, j2, i2)];
            if let Some(c) = options.iter().find_map(|&(a, b, c, d)| double_certificate(p, a, b, c, d)) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// # Errors
///
/// Fails on non-smooth input.
pub fn recognize_double_expansion(p: &HPolytope) -> Result<Option<RecognitionCertificate>> {
    Ok(recognize_double_expansion_all(p)?.into_iter().next())
}

fn permutations3(s: &[usize]) -> [[usize; 3]; 6] {
    let (a, b, c) = (s[0], s[1], s[2]);
    [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]]
}

/// Recognizes the 121-bundle normal form up to lattice-affine equivalence.
///
/// # Errors
///
/// Fails on non-smooth input.
pub fn recognize_121(p: &HPolytope) -> Result<Option<RecognitionCertificate>> {
    p.check_smooth()?;
    if p.dim() != 4 || p.num_facets() != 7 {
        return Ok(None);
    }
    for t0 in 0..7 {
        for t1 in 0..7 {
            let opposite = p.eta(t0).iter().zip(p.eta(t1)).all(|(x, y)| (x + y).is_zero());
            if t0 == t1 || !opposite {
                continue;
            }
            for v in p.vertices().iter().filter(|v| v.basis.contains(&t0)) {
                let rest: Vec<usize> = v.basis.iter().copied().filter(|&l| l != t0).collect();
                for [f2, f3, g5] in permutations3(&rest) {
                    let target = vec![vec![1, 0, 0, 0], vec![0, -1, 0, 0], vec![0, 0, -1, 0], vec![0, 0, 0, -1]];
                    let Some(frame) = Frame::new(p, &[t0, f2, f3, g5], &target) else { continue };
                    let others: Vec<usize> = (0..7).filter(|l| ![t0, t1, f2, f3, g5].contains(l)).collect();
                    for (f4, g6) in [(others[0], others[1]), (others[1], others[0])] {
                        let d = frame.coord(f4, 0);
                        if d < 0 || !frame.tail_is(f4, 1, &[1, 1, 0]) || frame.coord(g6, 3) != 1 {
                            continue;
                        }
                        let a = [frame.coord(g6, 0), frame.coord(g6, 1), frame.coord(g6, 2)];
                        let facet_map = vec![t0, t1, f2, f3, f4, g5, g6];
                        let kappa = facet_map.iter().map(|&l| frame.kappa[l].clone()).collect();
                        let Ok(nf) = bundle_121(&Bundle121 { a, d, kappa }) else { continue };
                        let Ok(nf) = nf.with_labels(facet_map.iter().map(|&l| p.label(l).to_string()).collect()) else {
                            continue;
                        };
                        let fiber = vec![t0, t1];
                        let base = vec![f2, f3, f4, g5, g6];
                        if let Some(c) = frame.certificate(
                            Family::Bundle121,
                            fiber,
                            base,
                            facet_map,
                            FamilyParams::Bundle121 { a, d },
                            nf,
                        ) {
                            return Ok(Some(c));
                        }
                        break;
                    }
                }
            }
        }
    }
    Ok(None)
}

fn d2_certificate(p: &HPolytope, f: [usize; 3], ga: usize, gb: usize) -> Option<RecognitionCertificate> {
    let target = vec![vec![-1, 0, 0, 0], vec![0, -1, 0, 0], vec![0, 0, -1, 0], vec![0, 0, 0, -1]];
    let frame = Frame::new(p, &[f[0], f[1], ga, gb], &target)?;
    if !frame.tail_is(f[2], 0, &[1, 1, 0, 0]) {
        return None;
    }
    let mut cycle = vec![ga, gb];
    let base_facets: Vec<usize> = (0..p.num_facets()).filter(|l| !f.contains(l)).collect();
    while cycle.len() < base_facets.len() {
        let cur = *cycle.last().expect("nonempty");
        let next = base_facets.iter().copied().find(|&l| !cycle.contains(&l) && p.meets(&[cur, l]))?;
        cycle.push(next);
    }
    let base_map = cycle.clone();
    let base = labelled(
        p,
        &base_map,
        cycle.iter().map(|&l| frame.eta[l][2..].to_vec()).collect(),
        cycle.iter().map(|&l| frame.kappa[l].clone()).collect(),
    )?;
    let twists: Vec<(i64, i64)> = cycle.iter().map(|&l| (frame.coord(l, 0), frame.coord(l, 1))).collect();
    let mut facet_map = f.to_vec();
    facet_map.extend(&cycle);
    let spec = BundleD2Polygon {
        base: base.clone(),
        twists: twists.clone(),
        fiber_kappa: f.iter().map(|&l| frame.kappa[l].clone()).collect(),
    };
    let nf =
        bundle_d2_polygon(&spec).ok()?.with_labels(facet_map.iter().map(|&l| p.label(l).to_string()).collect()).ok()?;
    frame.certificate(
        Family::BundleD2Polygon,
        f.to_vec(),
        cycle,
        facet_map,
        FamilyParams::D2Polygon { base, twists },
        nf,
    )
}

/// Recognizes a `Delta_2` bundle over a polygon: three facets with
/// conormals summing to zero and spanning a plane, pairwise meeting but
/// with empty triple intersection.
///
/// # Errors
///
/// Fails on non-smooth input.
pub fn recognize_d2_polygon(p: &HPolytope) -> Result<Option<RecognitionCertificate>> {
    Ok(recognize_d2_polygon_all(p)?.into_iter().next())
}

/// # Errors
///
/// Fails on non-smooth input.
pub fn recognize_d2_polygon_all(p: &HPolytope) -> Result<Vec<RecognitionCertificate>> {
    p.check_smooth()?;
    let n_f = p.num_facets();
    if p.dim() != 4 || n_f < 6 || p.vertices().len() != 3 * (n_f - 3) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for f in crate::polytope::combinations(n_f, 3) {
        let f = [f[0], f[1], f[2]];
        let sum = p.conormal_sum(&f);
        if sum.iter().any(|x| x != &0.into()) || p.meets(&f) {
            continue;
        }
        if !(p.meets(&[f[0], f[1]]) && p.meets(&[f[0], f[2]]) && p.meets(&[f[1], f[2]])) {
            continue;
        }
        let Some(basis) = vertex_containing(p, &[f[0], f[1]]) else { continue };
        let g: Vec<usize> = basis.iter().copied().filter(|l| !f.contains(l)).collect();
        if let Some(c) = d2_certificate(p, f, g[0], g[1]).or_else(|| d2_certificate(p, f, g[1], g[0])) {
            out.push(c);
        }
    }
    Ok(out)
}

/// The cases of the four-dimensional classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThmType {
    /// `Delta_3` bundle over `Delta_1`.
    A1,
    /// 121-bundle.
    A2,
    /// `Delta_2` bundle over a polygon.
    A3,
    /// Double expansion of a polygon with the four base-type facets
    /// asymmetric and `H` inessential.
    B,
}

impl ThmType {
    pub fn as_str(self) -> &'static str {
        match self {
            ThmType::A1 => "a1",
            ThmType::A2 => "a2",
            ThmType::A3 => "a3",
            ThmType::B => "b",
        }
    }
}

/// All matching cases, in the order of preference `a2, a3, a1, b`.
#[derive(Debug, Clone)]
pub struct ThmRecognition {
    pub matches: Vec<(ThmType, RecognitionCertificate)>,
}

impl ThmRecognition {
    pub fn primary(&self) -> ThmType {
        self.matches[0].0
    }

    pub fn tags(&self) -> Vec<ThmType> {
        self.matches.iter().map(|(t, _)| *t).collect()
    }
}

/// Matches `(p, h)` against the cases of the four-dimensional
/// classification. Essential functions are tested against `a1..a3`,
/// inessential ones against `b`.
///
/// # Errors
///
/// Fails unless `p` is smooth and four-dimensional.
pub fn recognize_thm_type(p: &HPolytope, h: &[Rational]) -> Result<Option<ThmRecognition>> {
    if p.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, found: p.dim() });
    }
    let report = mass_linear_test(p, h)?;
    if !report.verdict {
        return Ok(None);
    }
    let mut matches = Vec::new();
    if is_inessential(p, h)?.is_none() {
        if let Some(c) = recognize_121(p)? {
            matches.push((ThmType::A2, c));
        }
        if let Some(c) = recognize_d2_polygon(p)? {
            matches.push((ThmType::A3, c));
        }
        if let Some(c) = recognize_bundle_over_segment_all(p)?
            .into_iter()
            .find(|c| matches!(&c.params, FamilyParams::Segment { a: Some(a), .. } if a.len() == 3))
        {
            matches.push((ThmType::A1, c));
        }
    } else {
        let mut asym = report.asymmetric.clone();
        asym.sort_unstable();
        if let Some(c) = recognize_double_expansion_all(p)?.into_iter().find(|c| {
            let mut b = c.base.clone();
            b.sort_unstable();
            b == asym
        }) {
            matches.push((ThmType::B, c));
        }
    }
    Ok((!matches.is_empty()).then_some(ThmRecognition { matches }))
}
