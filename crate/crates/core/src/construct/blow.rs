use crate::error::{Error, Result};
use crate::kernel::{dot, to_rational_vec, IntVector, Rational};
use crate::polytope::{mask_of, HPolytope};

fn validate_face(p: &HPolytope, face: &[usize]) -> Result<Vec<usize>> {
    let mut idx = face.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.len() != face.len() || idx.iter().any(|&i| i >= p.num_facets()) {
        return Err(Error::InvalidParameter(format!("bad facet indices {face:?}")));
    }
    if idx.len() < 2 {
        return Err(Error::CodimensionTooSmall(idx));
    }
    match p.face(&idx) {
        Some(f) if f.index_set == idx => Ok(idx),
        _ => Err(Error::NotAFace(idx)),
    }
}

/// Supremum of admissible blowup sizes at `F_I`: the smallest value of
/// `sum_I k_i - <eta_0, v>` over vertices `v` off the face.
///
/// # Errors
///
/// Fails unless `I` indexes a nonempty face of codimension at least two.
pub fn blowup_bound(p: &HPolytope, face: &[usize]) -> Result<Rational> {
    let idx = validate_face(p, face)?;
    let m = mask_of(&idx);
    let eta0 = to_rational_vec(&p.conormal_sum(&idx));
    let k0 = p.kappa_sum(&idx);
    p.vertices()
        .iter()
        .filter(|v| v.mask() & m != m)
        .map(|v| &k0 - dot(&eta0, &v.point))
        .min()
        .ok_or_else(|| Error::Internal("face contains every vertex".into()))
}

/// Blowup of `p` along `F_I` by `eps`, half the admissible bound when absent.
/// The exceptional facet is appended last and labelled `E<n>`.
///
/// # Errors
///
/// Fails on an invalid face or an `eps` outside `(0, bound)`.
pub fn blowup(p: &HPolytope, face: &[usize], eps: Option<Rational>) -> Result<HPolytope> {
    let bound = blowup_bound(p, face)?;
    let eps = eps.unwrap_or_else(|| &bound / Rational::from(2));
    if !eps.is_positive() {
        return Err(Error::EpsilonNotPositive(eps));
    }
    if eps >= bound {
        return Err(Error::EpsilonTooLarge { eps: Box::new(eps), bound: Box::new(bound) });
    }
    let mut conormals: Vec<IntVector> = p.conormals().to_vec();
    conormals.push(p.conormal_sum(face));
    let mut kappa = p.kappa().to_vec();
    kappa.push(p.kappa_sum(face) - eps);
    let mut labels = p.labels().to_vec();
    labels.push(format!("E{}", next_exceptional(p.labels())));
    let mut out = HPolytope::new(conormals, kappa)?.with_labels(labels)?;
    if let Some(name) = p.name() {
        out = out.with_name(format!("{name}+blowup"));
    }
    Ok(out)
}

fn next_exceptional(labels: &[String]) -> usize {
    labels.iter().filter_map(|l| l.strip_prefix('E').and_then(|s| s.parse::<usize>().ok())).max().unwrap_or(0) + 1
}

/// The three conditions a facet must satisfy to be an exceptional divisor,
/// in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowdownCondition {
    /// The facet is a simplex bundle whose fiber facets are cut out by `F_I`.
    SimplexBundle,
    /// The conormal equals the sum of the conormals in `I`.
    ConormalSum,
    /// Dropping the facet leaves a smooth polytope in which `F_I` is a face
    /// and the cut is admissible.
    Admissible,
}

impl BlowdownCondition {
    pub fn as_str(self) -> &'static str {
        match self {
            BlowdownCondition::SimplexBundle => "simplex_bundle",
            BlowdownCondition::ConormalSum => "conormal_sum",
            BlowdownCondition::Admissible => "admissible",
        }
    }
}

/// A successful blowdown.
#[derive(Debug, Clone)]
pub struct BlownDown {
    pub polytope: HPolytope,
    /// The blown-up face, as indices into the blown-down polytope.
    pub face: Vec<usize>,
    pub eps: Rational,
    /// Every index set that satisfies all three conditions, as indices into
    /// the original polytope.
    pub candidates: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum BlowdownOutcome {
    Success(BlownDown),
    Failure { condition: BlowdownCondition, detail: String },
}

fn subsets_up_to(items: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(items: &[usize], start: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, i + 1, max, cur, out);
            cur.pop();
        }
    }
    rec(items, 0, max, &mut cur, &mut out);
    out
}

fn shift_down(indices: &[usize], removed: usize) -> Vec<usize> {
    indices.iter().map(|&i| if i > removed { i - 1 } else { i }).collect()
}

fn try_candidate(p: &HPolytope, f: usize, set: &[usize]) -> std::result::Result<(HPolytope, Rational), String> {
    let keep: Vec<usize> = (0..p.num_facets()).filter(|&j| j != f).collect();
    let conormals = keep.iter().map(|&j| p.conormal(j).clone()).collect();
    let kappa = keep.iter().map(|&j| p.kappa()[j].clone()).collect();
    let labels = keep.iter().map(|&j| p.label(j).to_string()).collect();
    let q = HPolytope::new(conormals, kappa)
        .and_then(|q| q.with_labels(labels))
        .map_err(|e| format!("removing the facet gives no valid polytope: {e}"))?;
    if let Some((basis, det)) = q.smoothness_violation() {
        return Err(format!("result is not smooth at {basis:?} (det {det})"));
    }
    let image = shift_down(set, f);
    let m = mask_of(&image);
    if !q.meets(&image) {
        return Err(format!("{image:?} is not a face of the result"));
    }
    let eps = p.kappa_sum(set) - &p.kappa()[f];
    if !eps.is_positive() {
        return Err(format!("cut size {eps} is not positive"));
    }
    let eta_f = p.eta(f);
    let kf = &p.kappa()[f];
    let cut_off = q.vertices().iter().filter(|v| v.mask() & m == m).count();
    for v in q.vertices().iter().filter(|v| v.mask() & m != m) {
        if dot(eta_f, &v.point) >= *kf {
            return Err(format!("vertex {:?} off the face is cut", v.point));
        }
    }
    let face_vertices = p.face(&[f]).map_or(0, |fc| fc.vertex_ids.len());
    if q.vertices().len() - cut_off + face_vertices != p.vertices().len() {
        return Err("vertex counts do not match a blowup".into());
    }
    Ok((q, eps))
}

/// Tries to blow down facet `f`. On failure reports the first condition no
/// candidate index set satisfies.
///
/// # Errors
///
/// Fails if `f` is out of range.
pub fn blowdown(p: &HPolytope, f: usize) -> Result<BlowdownOutcome> {
    if f >= p.num_facets() {
        return Err(Error::InvalidParameter(format!("facet {f} out of range")));
    }
    let face = p.face(&[f]).ok_or_else(|| Error::NotAFace(vec![f]))?;
    let vmasks: Vec<u64> = face.vertex_ids.iter().map(|&v| p.vertices()[v].mask()).collect();
    let nbrs = p.neighbors(f);
    let bundle: Vec<Vec<usize>> = subsets_up_to(&nbrs, p.dim())
        .into_iter()
        .filter(|set| vmasks.iter().all(|vm| set.iter().filter(|&&i| vm & (1u64 << i) != 0).count() + 1 == set.len()))
        .collect();
    if bundle.is_empty() {
        return Ok(BlowdownOutcome::Failure {
            condition: BlowdownCondition::SimplexBundle,
            detail: format!("facet {} is not a simplex bundle over a face cut out by its neighbours", p.label(f)),
        });
    }
    let summing: Vec<Vec<usize>> = bundle.into_iter().filter(|set| &p.conormal_sum(set) == p.conormal(f)).collect();
    if summing.is_empty() {
        return Ok(BlowdownOutcome::Failure {
            condition: BlowdownCondition::ConormalSum,
            detail: format!("no fiber set has conormals summing to that of {}", p.label(f)),
        });
    }
    let mut good = Vec::new();
    let mut first_err = String::new();
    for set in &summing {
        match try_candidate(p, f, set) {
            Ok((q, eps)) => good.push((set.clone(), q, eps)),
            Err(e) if first_err.is_empty() => first_err = format!("{set:?}: {e}"),
            Err(_) => {}
        }
    }
    if good.is_empty() {
        return Ok(BlowdownOutcome::Failure { condition: BlowdownCondition::Admissible, detail: first_err });
    }
    let candidates: Vec<Vec<usize>> = good.iter().map(|(s, _, _)| s.clone()).collect();
    let (set, polytope, eps) = good.swap_remove(0);
    Ok(BlowdownOutcome::Success(BlownDown { polytope, face: shift_down(&set, f), eps, candidates }))
}
