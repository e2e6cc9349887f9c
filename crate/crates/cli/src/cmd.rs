use std::fs;
use std::path::Path;

use masslin::classify::classify4d;
use masslin::construct::{self, functional_from_gamma, BlowdownOutcome, Bundle121, BundleD2Polygon, BundleYk, MlSpace};
use masslin::masslinear::{
    equivalence_classes, fully_mass_linear_test, generating_vector, is_inessential, mass_linear_prefilter,
    mass_linear_test, symmetric_facets,
};
use masslin::measure::{pair_all, skeleton_barycenters};
use masslin::{HPolytope, QVector, Rational};
use rayon::prelude::*;

use crate::args::{Family, FamilyParams, FunctionalArgs, SpaceFamily};
use crate::doc::{
    BarycenterDoc, BarycenterReport, BatchEntry, BlowdownReport, CertificateDoc, CheckReport, ClassifyReport,
    MlSpaceReport, PolytopeDocument, PrefilterDoc, StepDoc,
};
use crate::error::CliError;

pub enum Output {
    Check(CheckReport),
    Batch(Vec<BatchEntry>),
    Classify(ClassifyReport),
    Polytope(PolytopeDocument),
    Blowdown(BlowdownReport),
    Barycenters(BarycenterReport),
    MlSpace(MlSpaceReport),
}

pub fn read_document(path: &Path) -> Result<PolytopeDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::domain("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<HPolytope, CliError> {
    read_document(path)?.to_polytope()
}

fn labels(p: &HPolytope, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| p.label(i).to_string()).collect()
}

/// A facet by label, or by 0-based index when no label matches.
pub fn resolve_facet(p: &HPolytope, s: &str) -> Result<usize, CliError> {
    let s = s.trim();
    if let Some(i) = p.facet_by_label(s) {
        return Ok(i);
    }
    match s.parse::<usize>() {
        Ok(i) if i < p.num_facets() => Ok(i),
        _ => Err(CliError::domain("unknown_facet", format!("no facet {s:?}"))),
    }
}

fn resolve_facets(p: &HPolytope, s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',').map(|t| resolve_facet(p, t)).collect()
}

fn functional(p: &HPolytope, f: &FunctionalArgs) -> Result<QVector, CliError> {
    match (&f.h, &f.gamma) {
        (Some(h), _) => Ok(h.0.clone()),
        (None, Some(g)) => {
            if g.0.len() != p.num_facets() {
                return Err(CliError::domain(
                    "dimension_mismatch",
                    format!("{} coefficients for {} facets", g.0.len(), p.num_facets()),
                ));
            }
            Ok(functional_from_gamma(p, &g.0))
        }
        (None, None) => Err(CliError::Usage("one of --h or --gamma is required".into())),
    }
}

pub fn check_polytope(
    p: &HPolytope,
    doc: PolytopeDocument,
    f: &FunctionalArgs,
    seed: u64,
    trials: usize,
) -> Result<CheckReport, CliError> {
    let h = functional(p, f)?;
    let passed = mass_linear_prefilter(p, &h, trials, seed)?;
    let rep = mass_linear_test(p, &h)?;
    let symmetric = symmetric_facets(p, &h)?;
    let asymmetric: Vec<usize> = (0..p.num_facets()).filter(|i| !symmetric.contains(i)).collect();
    let classes = equivalence_classes(p)?;
    let (essential, beta) = if rep.verdict {
        match is_inessential(p, &h)? {
            Some(w) => (Some(false), Some(w.beta)),
            None => (Some(true), None),
        }
    } else {
        (None, None)
    };
    let full = fully_mass_linear_test(p, &h)?;
    let generating = if rep.verdict { generating_vector(p, &h)? } else { None };
    Ok(CheckReport {
        command: "check".into(),
        polytope: doc,
        h,
        prefilter: PrefilterDoc { seed, trials, passed },
        mass_linear: rep.verdict,
        gamma: rep.gamma,
        symmetric: labels(p, &symmetric),
        asymmetric: labels(p, &asymmetric),
        equivalence_classes: classes.classes.iter().map(|c| labels(p, c)).collect(),
        essential,
        beta,
        barycenter_values: full.values,
        fully_mass_linear: full.verdict,
        generating_vector: generating,
    })
}

pub fn check_file(path: &Path, f: &FunctionalArgs, seed: u64, trials: usize) -> Result<CheckReport, CliError> {
    let doc = read_document(path)?;
    let p = doc.to_polytope()?;
    // echo the parsed polytope so default labels are filled in
    let echo = PolytopeDocument::from_polytope(&p)?;
    check_polytope(&p, echo, f, seed, trials)
}

/// Checks every polytope document in `dir`, in file name order. Report
/// files are skipped.
pub fn check_dir(
    dir: &Path,
    f: &FunctionalArgs,
    seed: u64,
    trials: usize,
    jobs: usize,
) -> Result<Vec<BatchEntry>, CliError> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(|e| CliError::domain("io", format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            p.is_file() && name.ends_with(".json") && !name.ends_with(".report.json")
        })
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::domain("internal", e.to_string()))?;
    Ok(pool.install(|| {
        files
            .par_iter()
            .map(|path| {
                let file = path.file_name().and_then(|n| n.to_str()).unwrap_or("").to_string();
                match check_file(path, f, seed, trials) {
                    Ok(r) => BatchEntry { file, report: Some(r), error: None },
                    Err(e) => BatchEntry { file, report: None, error: Some(e.to_doc()) },
                }
            })
            .collect()
    }))
}

pub fn classify(path: &Path, f: &FunctionalArgs, trace: bool) -> Result<ClassifyReport, CliError> {
    let p = load(path)?;
    let h = functional(&p, f)?;
    let res = classify4d(&p, &h)?;
    let t = &res.terminal;
    let steps = res
        .trace
        .iter()
        .map(|s| StepDoc {
            facet: s.label.clone(),
            position: s.facet,
            face: s.face_labels.clone(),
            eps: s.eps.clone(),
            kind: s.kind.as_str().into(),
            essential_before: s.essential_before,
            essential_after: s.essential_after,
        })
        .collect();
    let replay_exact = if trace {
        let r = res.replay()?;
        Some(r.conormals() == p.conormals() && r.kappa() == p.kappa())
    } else {
        None
    };
    Ok(ClassifyReport {
        command: "classify".into(),
        polytope: p.name().unwrap_or_default().to_string(),
        h,
        tag: res.tag.as_str().into(),
        alternatives: res.alternatives.iter().map(|a| a.as_str().to_string()).collect(),
        note: res.note.clone(),
        terminal_gamma: res.terminal_report.gamma.clone().unwrap_or_default(),
        terminal_essential: res.terminal_essential,
        certificate: res.certificate.as_ref().map(|c| CertificateDoc {
            family: c.family.as_str().into(),
            fiber: labels(t, &c.fiber),
            base: labels(t, &c.base),
        }),
        terminal: PolytopeDocument::from_polytope(t)?,
        steps: res.trace.len(),
        trace: trace.then_some(steps),
        replay_exact,
    })
}

fn need<T: Clone>(v: &Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| CliError::Usage(format!("{family} needs --{flag}")))
}

fn yk_spec(params: &FamilyParams) -> Result<Vec<i64>, CliError> {
    need(&params.a, "a", "bundle-yk")
}

fn d2_spec(params: &FamilyParams, family: &str) -> Result<BundleD2Polygon, CliError> {
    let base = load(&need(&params.base, "base", family)?)?;
    Ok(BundleD2Polygon {
        base,
        twists: need(&params.twists, "twists", family)?.0,
        fiber_kappa: need(&params.fiber_kappa, "fiber-kappa", family)?.0,
    })
}

fn triple(a: &[i64]) -> Result<[i64; 3], CliError> {
    a.try_into().map_err(|_| CliError::domain("invalid_parameter", "bundle-121 needs three twist entries"))
}

pub fn construct(family: Family, params: &FamilyParams) -> Result<PolytopeDocument, CliError> {
    let p = match family {
        Family::Simplex => {
            let n = need(&params.n, "n", "simplex")?;
            match &params.lambda {
                Some(l) => construct::simplex_scaled(n, l.clone())?,
                None => construct::simplex(n)?,
            }
        }
        Family::Product => {
            let a = load(&need(&params.base, "base", "product")?)?;
            let b = load(&need(&params.other, "other", "product")?)?;
            construct::product(&a, &b)?
        }
        Family::Trapezoid => construct::trapezoid(),
        Family::RecipePolygon => construct::recipe_polygon(need(&params.n, "n", "recipe-polygon")?)?,
        Family::BundleYk => {
            let a = yk_spec(params)?;
            let k = params.k.unwrap_or(a.len());
            construct::bundle_yk(&BundleYk { k, a, kappa: need(&params.kappa, "kappa", "bundle-yk")?.0 })?
        }
        Family::Bundle121 => {
            let a = triple(&need(&params.a, "a", "bundle-121")?)?;
            let d = need(&params.d, "d", "bundle-121")?;
            construct::bundle_121(&Bundle121 { a, d, kappa: need(&params.kappa, "kappa", "bundle-121")?.0 })?
        }
        Family::BundleD2Polygon => construct::bundle_d2_polygon(&d2_spec(params, "bundle-d2-polygon")?)?,
        Family::Expansion => {
            let base = load(&need(&params.base, "base", "expansion")?)?;
            let j = resolve_facet(&base, &need(&params.facet, "facet", "expansion")?)?;
            construct::expansion(&base, j, params.times)?
        }
        Family::DoubleExpansion => {
            let base = load(&need(&params.base, "base", "double-expansion")?)?;
            let js = resolve_facets(&base, &need(&params.facets, "facets", "double-expansion")?)?;
            let [j1, j2] = js[..] else {
                return Err(CliError::domain("invalid_parameter", "double-expansion needs exactly two facets"));
            };
            construct::double_expansion(&base, j1, j2)?
        }
        Family::MinimalA3 => construct::minimal_family_a3(need(&params.n_facets, "n-facets", "minimal-a3")?)?,
        Family::MinimalB => construct::minimal_family_b(need(&params.n_facets, "n-facets", "minimal-b")?)?,
    };
    p.check_smooth()?;
    PolytopeDocument::from_polytope(&p)
}

pub fn blowup(path: &Path, face: &str, eps: Option<Rational>) -> Result<PolytopeDocument, CliError> {
    let p = load(path)?;
    let mut idx = resolve_facets(&p, face)?;
    idx.sort_unstable();
    idx.dedup();
    PolytopeDocument::from_polytope(&construct::blowup(&p, &idx, eps)?)
}

pub fn blowdown(path: &Path, facet: &str) -> Result<BlowdownReport, CliError> {
    let p = load(path)?;
    let f = resolve_facet(&p, facet)?;
    match construct::blowdown(&p, f)? {
        BlowdownOutcome::Success(d) => Ok(BlowdownReport {
            command: "blowdown".into(),
            facet: p.label(f).to_string(),
            face: labels(&d.polytope, &d.face),
            eps: d.eps.clone(),
            candidates: d.candidates.iter().map(|c| labels(&p, c)).collect(),
            polytope: PolytopeDocument::from_polytope(&d.polytope)?,
        }),
        BlowdownOutcome::Failure { condition, detail } => Err(CliError::domain(
            "blowdown_failed",
            format!("{} does not blow down ({}): {detail}", p.label(f), condition.as_str()),
        )),
    }
}

pub fn barycenters(path: &Path, f: &FunctionalArgs) -> Result<BarycenterReport, CliError> {
    let p = load(path)?;
    let h = functional(&p, f)?;
    let points = skeleton_barycenters(&p)?;
    let values = pair_all(&h, &points);
    let full = fully_mass_linear_test(&p, &h)?;
    Ok(BarycenterReport {
        command: "barycenters".into(),
        polytope: p.name().unwrap_or_default().to_string(),
        barycenters: points
            .into_iter()
            .zip(values)
            .enumerate()
            .map(|(k, (point, value))| BarycenterDoc { k, point, value })
            .collect(),
        h,
        fully_mass_linear: full.verdict,
        mass_linear_by_barycenters: full.mass_linear_by_barycenters(),
        generated_by_barycenters: full.generated_by_barycenters(),
    })
}

fn numbered(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

pub fn mlspace(family: SpaceFamily, params: &FamilyParams) -> Result<MlSpaceReport, CliError> {
    let (name, facets, space): (&str, Vec<String>, MlSpace) = match family {
        SpaceFamily::BundleYk => {
            let a = yk_spec(params)?;
            let mut facets = numbered("F", 1..=a.len() + 1);
            facets.extend(numbered("G", 1..=2));
            ("bundle-yk", facets, construct::ml_space_yk(&a))
        }
        SpaceFamily::Bundle121 => {
            let a = triple(&need(&params.a, "a", "bundle-121")?)?;
            let d = need(&params.d, "d", "bundle-121")?;
            let facets = ["T0", "T1", "F2", "F3", "F4", "G5", "G6"].iter().map(|s| s.to_string()).collect();
            ("bundle-121", facets, construct::ml_space_121(a, d))
        }
        SpaceFamily::BundleD2Polygon => {
            let spec = d2_spec(params, "bundle-d2-polygon")?;
            let mut facets = numbered("F", 1..=3);
            facets.extend(numbered("G", 1..=spec.base.num_facets()));
            ("bundle-d2-polygon", facets, construct::ml_space_d2_polygon(&spec)?)
        }
    };
    Ok(MlSpaceReport {
        command: "mlspace".into(),
        family: name.into(),
        facets,
        has_essential: space.has_essential(),
        mass_linear: space.mass_linear,
        inessential: space.inessential,
    })
}
