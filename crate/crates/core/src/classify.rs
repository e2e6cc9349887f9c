//! Classification of four-dimensional mass linear pairs by repeated
//! blowdown, and the search for blowups that make an inessential function
//! on a double expansion essential.

use crate::construct::{blowdown, blowup, BlowdownOutcome};
use crate::error::{Error, Result};
use crate::kernel::linalg::is_zero_vec;
use crate::kernel::Rational;
use crate::masslinear::{is_inessential, mass_linear_test, MassLinearReport};
use crate::polytope::HPolytope;
use crate::recognize::{
    recognize_double_expansion_all, recognize_thm_type, FamilyParams, RecognitionCertificate, ThmType,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlowupKind {
    SymmetricTwoFace,
    /// Edge `F_i ∩ F_j ∩ G` with `G` symmetric, `gamma_i + gamma_j = 0`, and
    /// the edge meeting every asymmetric facet.
    EdgeFijG {
        i: usize,
        j: usize,
        g: usize,
    },
    Vertex,
    Other,
}

impl BlowupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BlowupKind::SymmetricTwoFace => "symmetric_2face",
            BlowupKind::EdgeFijG { .. } => "edge_type_Fij_G",
            BlowupKind::Vertex => "vertex",
            BlowupKind::Other => "other",
        }
    }
}

/// Whether the face `F_I` meets facet `a`.
fn face_meets(p: &HPolytope, face: &[usize], a: usize) -> bool {
    let mut s = face.to_vec();
    s.push(a);
    p.meets(&s)
}

/// Type of the blowup of `p` along `F_I`, relative to the coefficients
/// `gamma` of a mass linear function on `p`.
pub fn blowup_kind(p: &HPolytope, gamma: &[Rational], face: &[usize]) -> BlowupKind {
    let n = p.dim();
    let symmetric = |i: usize| gamma[i].is_zero();
    if face.len() + 2 == n && face.iter().all(|&i| symmetric(i)) {
        return BlowupKind::SymmetricTwoFace;
    }
    if face.len() + 1 == n {
        let asym: Vec<usize> = (0..p.num_facets()).filter(|&i| !symmetric(i)).collect();
        if asym.iter().all(|&a| face_meets(p, face, a)) {
            for &g in face.iter().filter(|&&g| symmetric(g)) {
                let ij: Vec<usize> = face.iter().copied().filter(|&l| l != g).collect();
                if (&gamma[ij[0]] + &gamma[ij[1]]).is_zero() {
                    return BlowupKind::EdgeFijG { i: ij[0], j: ij[1], g };
                }
            }
        }
    }
    if face.len() == n {
        BlowupKind::Vertex
    } else {
        BlowupKind::Other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassTag {
    A1,
    A2,
    A3,
    B,
    Inessential,
    Zero,
    Unclassified,
}

impl ClassTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::A1 => "a1",
            ClassTag::A2 => "a2",
            ClassTag::A3 => "a3",
            ClassTag::B => "b",
            ClassTag::Inessential => "inessential",
            ClassTag::Zero => "zero",
            ClassTag::Unclassified => "unclassified",
        }
    }
}

impl From<ThmType> for ClassTag {
    fn from(t: ThmType) -> Self {
        match t {
            ThmType::A1 => ClassTag::A1,
            ThmType::A2 => ClassTag::A2,
            ThmType::A3 => ClassTag::A3,
            ThmType::B => ClassTag::B,
        }
    }
}

/// One blowdown. Read backwards it is the blowup of the smaller polytope
/// along `face` by `eps`, with the new facet placed at index `facet` and
/// labelled `label`.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub facet: usize,
    pub label: String,
    /// Indices into the blown-down polytope.
    pub face: Vec<usize>,
    pub face_labels: Vec<String>,
    pub eps: Rational,
    pub kind: BlowupKind,
    /// `H` essential on the polytope before and after the blowdown.
    pub essential_before: bool,
    pub essential_after: bool,
}

#[derive(Debug, Clone)]
pub struct ClassificationResult {
    pub tag: ClassTag,
    /// Every case the terminal polytope matches; the tag is the first.
    pub alternatives: Vec<ThmType>,
    pub trace: Vec<TraceStep>,
    pub terminal: HPolytope,
    pub terminal_report: MassLinearReport,
    pub terminal_essential: bool,
    pub certificate: Option<RecognitionCertificate>,
    /// Why the result is not one of the cases, when it is not.
    pub note: Option<String>,
}

impl ClassificationResult {
    /// Replays the trace as blowups of the terminal polytope.
    ///
    /// # Errors
    ///
    /// Fails if a recorded blowup is invalid.
    pub fn replay(&self) -> Result<HPolytope> {
        let mut p = self.terminal.clone();
        for step in self.trace.iter().rev() {
            let b = blowup(&p, &step.face, Some(step.eps.clone()))?;
            p = move_last_facet(&b, step.facet, &step.label)?;
        }
        Ok(p)
    }
}

/// Moves the last facet to position `pos` and relabels it.
pub(crate) fn move_last_facet(p: &HPolytope, pos: usize, label: &str) -> Result<HPolytope> {
    let n_f = p.num_facets();
    let mut order: Vec<usize> = (0..n_f - 1).collect();
    order.insert(pos, n_f - 1);
    let conormals = order.iter().map(|&i| p.conormal(i).clone()).collect();
    let kappa = order.iter().map(|&i| p.kappa()[i].clone()).collect();
    let mut labels: Vec<String> = order.iter().map(|&i| p.label(i).to_string()).collect();
    labels[pos] = label.to_string();
    let mut out = HPolytope::new(conormals, kappa)?.with_labels(labels)?;
    if let Some(name) = p.name() {
        out = out.with_name(name);
    }
    Ok(out)
}

fn essential(p: &HPolytope, h: &[Rational]) -> Result<bool> {
    Ok(is_inessential(p, h)?.is_none())
}

/// Classifies a mass linear pair on a smooth 4-polytope by blowing down
/// facets from the highest index down, restarting after each success, until
/// a case of the classification is recognized or no facet blows down.
/// Blowups append their exceptional facet, so the most recent one is tried
/// first.
///
/// # Errors
///
/// Fails unless `p` is four-dimensional and `H` mass linear, or if the
/// coefficients change under a blowdown.
pub fn classify4d(p: &HPolytope, h: &[Rational]) -> Result<ClassificationResult> {
    if p.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, found: p.dim() });
    }
    let report = mass_linear_test(p, h)?;
    let gamma = report.gamma.clone().ok_or(Error::NotMassLinear)?;
    let done = |tag: ClassTag, cur: HPolytope, rep: MassLinearReport, ess: bool, trace, note: Option<String>| {
        ClassificationResult {
            tag,
            alternatives: Vec::new(),
            trace,
            terminal: cur,
            terminal_report: rep,
            terminal_essential: ess,
            certificate: None,
            note,
        }
    };
    if is_zero_vec(h) {
        return Ok(done(ClassTag::Zero, p.clone(), report, false, Vec::new(), None));
    }
    let ess0 = essential(p, h)?;
    if !ess0 {
        return Ok(done(ClassTag::Inessential, p.clone(), report, false, Vec::new(), None));
    }
    let mut cur = p.clone();
    let mut cur_gamma = gamma;
    let mut cur_report = report;
    let mut cur_ess = ess0;
    let mut trace = Vec::new();
    loop {
        if let Some(rec) = recognize_thm_type(&cur, h)? {
            let alternatives = rec.tags();
            let (t, cert) = rec.matches.into_iter().next().expect("nonempty match list");
            let mut res = done(t.into(), cur, cur_report, cur_ess, trace, None);
            res.alternatives = alternatives;
            res.certificate = Some(cert);
            return Ok(res);
        }
        let mut stepped = false;
        for f in (0..cur.num_facets()).rev() {
            let BlowdownOutcome::Success(down) = blowdown(&cur, f)? else { continue };
            let small = down.polytope;
            let rep = mass_linear_test(&small, h)?;
            let mut expected = cur_gamma.clone();
            expected.remove(f);
            if rep.gamma.as_ref() != Some(&expected) {
                return Err(Error::Internal(format!("coefficients changed when blowing down {}", cur.label(f))));
            }
            let ess = essential(&small, h)?;
            trace.push(TraceStep {
                facet: f,
                label: cur.label(f).to_string(),
                face_labels: down.face.iter().map(|&i| small.label(i).to_string()).collect(),
                kind: blowup_kind(&small, &expected, &down.face),
                face: down.face,
                eps: down.eps,
                essential_before: cur_ess,
                essential_after: ess,
            });
            cur = small;
            cur_gamma = expected;
            cur_report = rep;
            cur_ess = ess;
            stepped = true;
            break;
        }
        if !stepped {
            let note = if cur_ess {
                "minimal, H essential, and no case of the classification matches"
            } else {
                "minimal, H inessential, and not a double expansion with the base-type facets asymmetric"
            };
            return Ok(done(ClassTag::Unclassified, cur, cur_report, cur_ess, trace, Some(note.into())));
        }
    }
}

/// A blowup in a plan; `face` indexes the polytope the step applies to.
#[derive(Debug, Clone)]
pub struct PlanStep {
    pub face: Vec<usize>,
    pub face_labels: Vec<String>,
    pub kind: BlowupKind,
}

#[derive(Debug, Clone)]
pub enum Plan {
    Recipe { steps: Vec<PlanStep>, result: HPolytope },
    Impossible(String),
}

fn edge_candidates(p: &HPolytope, gamma: &[Rational], firsts: &[usize], seconds: &[usize]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for &i in firsts {
        for &j in seconds.iter().filter(|&&j| j != i) {
            for g in (0..p.num_facets()).filter(|&g| gamma[g].is_zero()) {
                let mut face = vec![i, j, g];
                face.sort_unstable();
                if p.face(&face).is_some_and(|f| f.dim == 1)
                    && matches!(blowup_kind(p, gamma, &face), BlowupKind::EdgeFijG { .. })
                {
                    out.push([i, j, g]);
                }
            }
        }
    }
    out
}

fn sorted(face: &[usize]) -> Vec<usize> {
    let mut f = face.to_vec();
    f.sort_unstable();
    f
}

fn step(p: &HPolytope, gamma: &[Rational], face: &[usize]) -> Result<(PlanStep, HPolytope)> {
    let face = sorted(face);
    let next = blowup(p, &face, None)?;
    Ok((
        PlanStep {
            face_labels: face.iter().map(|&i| p.label(i).to_string()).collect(),
            kind: blowup_kind(p, gamma, &face),
            face,
        },
        next,
    ))
}

/// Looks for blowups of type `(F_ij, G)` that make an inessential function
/// on a double expansion of a polygon essential. With `allow_vertex` the
/// vertex where the four base-type facets meet may be blown up first.
///
/// # Errors
///
/// Fails unless `p` is a four-dimensional double expansion, `H` is mass
/// linear and inessential, and the asymmetric facets are the base-type ones.
pub fn essential_blowup_planner(p: &HPolytope, h: &[Rational], allow_vertex: bool) -> Result<Plan> {
    if p.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, found: p.dim() });
    }
    let report = mass_linear_test(p, h)?;
    let gamma = report.gamma.clone().ok_or(Error::NotMassLinear)?;
    if essential(p, h)? {
        return Err(Error::Precondition("H is already essential".into()));
    }
    let asym = sorted(&report.asymmetric);
    let cert = recognize_double_expansion_all(p)?
        .into_iter()
        .find(|c| sorted(&c.base) == asym)
        .ok_or_else(|| Error::Precondition("not a double expansion with asymmetric base-type facets".into()))?;
    let FamilyParams::DoubleExpansion { core } = &cert.params else {
        return Err(Error::Internal("double expansion certificate without core".into()));
    };
    let base = cert.base.clone();
    let g0 = gamma[base[0]].abs();
    if base.iter().any(|&i| gamma[i].abs() != g0) {
        return Ok(Plan::Impossible("the coefficients of the base-type facets differ in absolute value".into()));
    }
    let m = core.num_facets();
    let adjacent = core.meets(&[m - 2, m - 1]);
    if allow_vertex && adjacent {
        let (first, next) = step(p, &gamma, &base)?;
        return Ok(match essential_blowup_planner(&next, h, false)? {
            Plan::Recipe { mut steps, result } => {
                steps.insert(0, first);
                Plan::Recipe { steps, result }
            }
            impossible => impossible,
        });
    }
    if m == 3 {
        return Ok(Plan::Impossible("the core polygon is a triangle".into()));
    }
    let (f12, f34) = (&base[..2], &base[2..]);
    for [i, j, g] in edge_candidates(p, &gamma, f12, f34) {
        let (s1, p1) = step(p, &gamma, &[i, j, g])?;
        let mut g1 = gamma.clone();
        g1.push(Rational::zero());
        if essential(&p1, h)? {
            return Ok(Plan::Recipe { steps: vec![s1], result: p1 });
        }
        // equivalent expansion facets need a second edge through F_i
        let others: Vec<usize> = base.iter().copied().filter(|&l| l != i && l != j).collect();
        for [_, k, g2] in edge_candidates(&p1, &g1, &[i], &others) {
            let (s2, p2) = step(&p1, &g1, &[i, k, g2])?;
            if essential(&p2, h)? {
                return Ok(Plan::Recipe { steps: vec![s1, s2], result: p2 });
            }
        }
    }
    Ok(Plan::Impossible(if adjacent {
        "the expanded edges are adjacent and no allowed edge blowup makes H essential".into()
    } else {
        "no edge of the core has endpoints on both expanded edges".into()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{bundle_yk, functional_from_gamma, BundleYk};
    use crate::kernel::{qi, QVector};

    fn qv(v: &[i64]) -> QVector {
        v.iter().map(|&x| qi(x)).collect()
    }

    fn example_pair() -> (HPolytope, QVector) {
        let y = bundle_yk(&BundleYk { k: 3, a: vec![1, 1, 0], kappa: qv(&[0, 0, 0, 1, 0, 2]) }).unwrap();
        let h = functional_from_gamma(&y, &qv(&[1, -1, -1, 1, 0, 0]));
        (y, h)
    }

    #[test]
    fn example_blowup_classifies_as_b() {
        let (y, h) = example_pair();
        let b = blowup(&y, &[1, 3, 4], None).unwrap();
        let res = classify4d(&b, &h).unwrap();
        assert_eq!(res.tag, ClassTag::B, "{res:?}");
        assert_eq!(res.trace.len(), 1);
        assert!(matches!(res.trace[0].kind, BlowupKind::EdgeFijG { .. }));
        assert_eq!(res.replay().unwrap(), b);
    }

    #[test]
    fn planner_on_example() {
        let (y, h) = example_pair();
        match essential_blowup_planner(&y, &h, false).unwrap() {
            Plan::Recipe { steps, result } => {
                assert_eq!(steps.len(), 1);
                assert!(is_inessential(&result, &h).unwrap().is_none());
            }
            Plan::Impossible(why) => panic!("{why}"),
        }
    }

    #[test]
    fn a1_with_essential_function_is_minimal() {
        let y = bundle_yk(&BundleYk { k: 3, a: vec![1, 2, 3], kappa: qv(&[0, 0, 0, 1, 0, 9]) }).unwrap();
        // gamma_1 + gamma_2 + gamma_3 + gamma_4 = 0 and sum a_i gamma_i = 0
        let h = functional_from_gamma(&y, &qv(&[1, -2, 1, 0, 0, 0]));
        let res = classify4d(&y, &h).unwrap();
        assert_eq!(res.tag, ClassTag::A1);
        assert!(res.trace.is_empty());
    }
}
