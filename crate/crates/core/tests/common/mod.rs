//! Seeded generator for the (polytope, functional) suite shared by the
//! integration tests and the acceptance harness.

#![allow(dead_code)]

use masslin::construct::{
    blowup, bundle_121, bundle_d2_polygon, bundle_yk, double_expansion, expansion, functional_from_gamma,
    minimal_family_a3, ml_space_121, ml_space_d2_polygon, ml_space_yk, recipe_polygon, simplex, simplex_scaled,
    trapezoid, Bundle121, BundleD2Polygon, BundleYk,
};
use masslin::kernel::nullspace;
use masslin::masslinear::equivalence_classes;
use masslin::{q, qi, HPolytope, QVector, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const SEED: u64 = 0x5eed_2024;

pub fn qv(v: &[i64]) -> QVector {
    v.iter().map(|&x| qi(x)).collect()
}

/// A polytope together with functionals to test on it. `ml_gammas` are
/// coefficient vectors that are mass linear by construction.
#[derive(Clone)]
pub struct Base {
    pub name: String,
    pub p: HPolytope,
    pub ml_gammas: Vec<QVector>,
    pub family: &'static str,
}

#[derive(Clone)]
pub struct Case {
    pub name: String,
    pub p: HPolytope,
    pub h: QVector,
    pub family: &'static str,
}

pub fn yk_kappa(rng: &mut StdRng, a: &[i64]) -> QVector {
    let k = a.len();
    let mut kappa: QVector = (0..k).map(|_| q(rng.gen_range(0..3), 2)).collect();
    kappa.push(qi(1));
    let lambda: Rational = kappa.iter().sum();
    let amax = a.iter().copied().max().unwrap_or(0).max(0);
    let twist: Rational = a.iter().zip(&kappa).map(|(&ai, ki)| qi(ai) * ki).sum();
    kappa.push(qi(0));
    kappa.push(qi(amax) * &lambda - twist + qi(1) + q(rng.gen_range(0..4), 3));
    kappa
}

pub fn yk(k: usize, a: &[i64], kappa: QVector) -> HPolytope {
    bundle_yk(&BundleYk { k, a: a.to_vec(), kappa }).expect("support numbers in the chamber")
}

pub const YK_TWISTS: &[&[i64]] = &[
    &[0],
    &[1],
    &[2],
    &[0, 0],
    &[1, 0],
    &[1, 1],
    &[1, 2],
    &[2, -1],
    &[1, 1, 0],
    &[1, -1, 0],
    &[1, 2, 3],
    &[0, 0, 1],
    &[2, 2, -1],
];

fn bundle_121_base(a: [i64; 3], d: i64, rng: &mut StdRng) -> Option<Base> {
    let k4 = qi(d + 1) + q(rng.gen_range(0..3), 2);
    let reach = 2 + a.iter().map(|x| x.abs()).sum::<i64>();
    let kappa = vec![qi(1), qi(0), qi(0), qi(0), k4.clone(), qi(0), qi(reach) * (k4 + qi(1)) + qi(1)];
    let p = bundle_121(&Bundle121 { a, d, kappa }).ok()?;
    Some(Base {
        name: p.name().unwrap_or("121").to_string(),
        ml_gammas: ml_space_121(a, d).mass_linear,
        p,
        family: "121",
    })
}

/// `Delta_2` bundle over a polygon, shrinking the fiber until the
/// combinatorics are right.
pub fn d2_bundle(base: &HPolytope, twists: &[(i64, i64)]) -> Option<(HPolytope, BundleD2Polygon)> {
    let mut lambda = q(1, 4);
    for _ in 0..12 {
        let spec = BundleD2Polygon {
            base: base.clone(),
            twists: twists.to_vec(),
            fiber_kappa: vec![qi(0), qi(0), lambda.clone()],
        };
        if let Ok(p) = bundle_d2_polygon(&spec) {
            return Some((p, spec));
        }
        lambda /= qi(2);
    }
    None
}

/// Random nonzero twist with entries in `[-2, 2]`.
pub fn random_twist(rng: &mut StdRng) -> (i64, i64) {
    loop {
        let t = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        if t != (0, 0) {
            return t;
        }
    }
}

fn d2_base(base: &HPolytope, twists: &[(i64, i64)]) -> Option<Base> {
    let (p, spec) = d2_bundle(base, twists)?;
    let space = ml_space_d2_polygon(&spec).ok()?;
    Some(Base {
        name: format!("D2 over {}-gon {twists:?}", base.num_facets()),
        p,
        ml_gammas: space.mass_linear,
        family: "d2",
    })
}

/// Inessential coefficient vectors: zero sum over each equivalence class.
pub fn inessential_gammas(p: &HPolytope) -> Vec<QVector> {
    let n_f = p.num_facets();
    let classes = equivalence_classes(p).expect("consistent classes");
    let rows: Vec<QVector> = classes
        .classes
        .iter()
        .map(|c| (0..n_f).map(|i| if c.contains(&i) { qi(1) } else { qi(0) }).collect())
        .collect();
    nullspace(&rows, n_f)
}

fn generic_base(name: String, p: HPolytope, family: &'static str) -> Base {
    let ml_gammas = inessential_gammas(&p);
    Base { name, p, ml_gammas, family }
}

/// Every base polytope in the suite: simplex bundles over a segment,
/// 121-bundles, `Delta_2` bundles over polygons, expansions and double
/// expansions.
pub fn bases() -> Vec<Base> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for a in YK_TWISTS {
        let kappa = yk_kappa(&mut rng, a);
        let p = yk(a.len(), a, kappa);
        let mut ml_gammas = ml_space_yk(a).mass_linear;
        if *a == [1, 1, 0] {
            ml_gammas.push(qv(&[1, -1, -1, 1, 0, 0]));
        }
        out.push(Base { name: p.name().unwrap().to_string(), p, ml_gammas, family: "yk" });
    }
    for (a, d) in [([0, 1, 2], 0), ([1, 1, 2], 1), ([0, 0, 1], 2), ([2, 1, 1], 0), ([0, 1, 1], 1)] {
        if let Some(b) = bundle_121_base(a, d, &mut rng) {
            out.push(b);
        }
    }
    let tri = simplex_scaled(2, qi(2)).unwrap();
    for _ in 0..3 {
        let t = random_twist(&mut rng);
        if let Some(b) = d2_base(&tri, &[(0, 0), (0, 0), t]) {
            out.push(b);
        }
    }
    let quad = recipe_polygon(4).unwrap();
    let t = random_twist(&mut rng);
    if let Some(b) = d2_base(&quad, &[(0, 0), (0, 0), t, (1, -1)]) {
        out.push(b);
    }
    let a3 = minimal_family_a3(7).unwrap();
    let spec_base = recipe_polygon(4).unwrap();
    let spec = BundleD2Polygon {
        base: spec_base,
        twists: vec![(0, 0), (0, 0), (1, -1), (2, -2)],
        fiber_kappa: a3.kappa()[..3].to_vec(),
    };
    out.push(Base {
        name: "minimal a3 N=7".into(),
        ml_gammas: ml_space_d2_polygon(&spec).unwrap().mass_linear,
        p: a3,
        family: "d2",
    });
    let tri1 = simplex(2).unwrap();
    let trap = trapezoid();
    for j in 0..3 {
        out.push(generic_base(
            format!("expansion of triangle along {j}"),
            expansion(&tri1, j, 1).unwrap(),
            "expansion",
        ));
    }
    out.push(generic_base("2-fold expansion of triangle".into(), expansion(&tri1, 2, 2).unwrap(), "expansion"));
    for j in [0, 2, 3] {
        out.push(generic_base(
            format!("expansion of trapezoid along {j}"),
            expansion(&trap, j, 1).unwrap(),
            "expansion",
        ));
    }
    let y2 = yk(2, &[1, 2], qv(&[0, 0, 1, 0, 4]));
    for j in [0, 2, 3] {
        out.push(generic_base(format!("expansion of Y(1,2) along {j}"), expansion(&y2, j, 1).unwrap(), "expansion"));
    }
    for (j1, j2) in [(0, 2), (2, 3), (1, 3), (0, 1)] {
        out.push(generic_base(
            format!("double expansion of trapezoid along {j1},{j2}"),
            double_expansion(&trap, j1, j2).unwrap(),
            "double_expansion",
        ));
    }
    out.push(generic_base(
        "double expansion of triangle".into(),
        double_expansion(&tri1, 0, 1).unwrap(),
        "double_expansion",
    ));
    let pent = recipe_polygon(5).unwrap();
    out.push(generic_base(
        "double expansion of pentagon".into(),
        double_expansion(&pent, 4, 0).unwrap(),
        "double_expansion",
    ));
    for b in out.iter_mut().filter(|b| b.family == "double_expansion") {
        let n_f = b.p.num_facets();
        let mut g = vec![qi(0); n_f - 4];
        g.extend(qv(&[1, -1, -1, 1]));
        b.ml_gammas.push(g);
    }
    out
}

/// Blowups of a base along random faces of codimension at least two, with
/// random admissible sizes.
pub fn random_blowups(p: &HPolytope, count: usize, rng: &mut StdRng) -> Vec<(Vec<usize>, Rational, HPolytope)> {
    let faces: Vec<Vec<usize>> =
        (0..p.dim().saturating_sub(1)).flat_map(|d| p.faces_of_dim(d)).map(|f| f.index_set).collect();
    let mut out = Vec::new();
    for _ in 0..count {
        let face = &faces[rng.gen_range(0..faces.len())];
        let bound = masslin::construct::blowup_bound(p, face).unwrap();
        let eps = bound * q(rng.gen_range(1..8), 8);
        if let Ok(b) = blowup(p, face, Some(eps.clone())) {
            out.push((face.clone(), eps, b));
        }
    }
    out
}

/// Random coefficient vector with entries in `[-2, 2]`.
pub fn random_gamma(rng: &mut StdRng, n: usize) -> QVector {
    (0..n).map(|_| qi(rng.gen_range(-2..=2))).collect()
}

fn push_functionals(
    out: &mut Vec<Case>,
    name: &str,
    p: &HPolytope,
    gammas: &[QVector],
    family: &'static str,
    rng: &mut StdRng,
) {
    for (t, g) in gammas.iter().enumerate() {
        out.push(Case { name: format!("{name} ml#{t}"), p: p.clone(), h: functional_from_gamma(p, g), family });
    }
    if gammas.len() >= 2 {
        let mut g = vec![qi(0); p.num_facets()];
        for b in gammas {
            let c = qi(rng.gen_range(1..=3));
            for (x, y) in g.iter_mut().zip(b) {
                *x += &c * y;
            }
        }
        out.push(Case { name: format!("{name} ml generic"), p: p.clone(), h: functional_from_gamma(p, &g), family });
    }
    for t in 0..2 {
        let g = random_gamma(rng, p.num_facets());
        out.push(Case { name: format!("{name} rand#{t}"), p: p.clone(), h: functional_from_gamma(p, &g), family });
    }
}

/// The full suite: each base with its mass linear functions and random
/// ones, then blowups of each base carrying the same functionals.
pub fn suite() -> Vec<Case> {
    let mut rng = StdRng::seed_from_u64(SEED ^ 1);
    let mut out = Vec::new();
    for b in bases() {
        push_functionals(&mut out, &b.name, &b.p, &b.ml_gammas, b.family, &mut rng);
        let hs: Vec<QVector> = b.ml_gammas.iter().map(|g| functional_from_gamma(&b.p, g)).collect();
        for (face, _, bp) in random_blowups(&b.p, 2, &mut rng) {
            for (t, h) in hs.iter().take(3).enumerate() {
                out.push(Case {
                    name: format!("{} blown up at {face:?} ml#{t}", b.name),
                    p: bp.clone(),
                    h: h.clone(),
                    family: "blowup",
                });
            }
        }
    }
    out
}
