mod common;

use common::{qv, yk};
use masslin::classify::classify4d;
use masslin::construct::{blowdown, blowup, blowup_bound, functional_from_gamma, ml_space_yk, BlowdownOutcome};
use masslin::kernel::int_vec;
use masslin::masslinear::{equivalence_classes, is_inessential, mass_linear_test};
use masslin::measure::{center_of_mass, numeric_volume};
use masslin::recognize::{recognize_bundle_over_segment, recognize_double_expansion, Family};
use masslin::{q, qi, HPolytope, IntVector, QVector, Rational};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() }
}

/// Y(k, a) with support numbers chosen inside the chamber.
fn arb_yk() -> impl Strategy<Value = (Vec<i64>, HPolytope)> {
    (1usize..=3)
        .prop_flat_map(|k| (prop::collection::vec(-2i64..=2, k), prop::collection::vec(0i64..=2, k), 0i64..=3))
        .prop_map(|(a, fib, extra)| {
            let k = a.len();
            let mut kappa: QVector = fib.iter().map(|&x| q(x, 2)).collect();
            kappa.push(qi(1));
            let lambda: Rational = kappa.iter().sum();
            let amax = a.iter().copied().max().unwrap().max(0);
            let twist: Rational = a.iter().zip(&kappa).map(|(&x, y)| qi(x) * y).sum();
            kappa.push(qi(0));
            kappa.push(qi(amax) * lambda - twist + qi(1) + q(extra, 3));
            let p = yk(k, &a, kappa);
            (a, p)
        })
}

/// `eta -> eta U` for a unimodular `U` built from elementary moves.
fn change_lattice(p: &HPolytope, moves: &[(usize, usize, i64)]) -> HPolytope {
    let n = p.dim();
    let mut rows: Vec<Vec<i64>> =
        p.conormals().iter().map(|c| c.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
    for &(i, j, m) in moves {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for r in rows.iter_mut() {
            r[j] += m * r[i];
        }
    }
    let conormals: Vec<IntVector> = rows.iter().map(|r| int_vec(r)).collect();
    HPolytope::new(conormals, p.kappa().to_vec()).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn blowdown_inverts_blowup((_, p) in arb_yk(), pick in 0usize..64, frac in 1i64..8) {
        let faces: Vec<Vec<usize>> = (0..p.dim() - 1).flat_map(|d| p.faces_of_dim(d)).map(|f| f.index_set).collect();
        let face = &faces[pick % faces.len()];
        let eps = blowup_bound(&p, face).unwrap() * q(frac, 8);
        let b = blowup(&p, face, Some(eps.clone())).unwrap();
        prop_assert!(b.is_smooth());
        match blowdown(&b, b.num_facets() - 1).unwrap() {
            BlowdownOutcome::Success(d) => {
                prop_assert_eq!(d.polytope.conormals(), p.conormals());
                prop_assert_eq!(d.polytope.kappa(), p.kappa());
                prop_assert_eq!(d.eps, eps);
            }
            BlowdownOutcome::Failure { condition, detail } => {
                prop_assert!(false, "{}: {}", condition.as_str(), detail);
            }
        }
    }

    #[test]
    fn blowup_removes_the_cut_volume((_, p) in arb_yk(), pick in 0usize..64) {
        let vertices = p.faces_of_dim(0);
        let face = &vertices[pick % vertices.len()].index_set;
        let eps = blowup_bound(&p, face).unwrap() / qi(2);
        let b = blowup(&p, face, Some(eps.clone())).unwrap();
        // the cut corner is a unimodular simplex of size eps
        let n = p.dim() as u32;
        let fact: Rational = (1..=n).map(|i| qi(i as i64)).product();
        let cut = eps.pow(n) / fact;
        prop_assert_eq!(numeric_volume(&p).unwrap() - numeric_volume(&b).unwrap(), cut);
    }

    #[test]
    fn closed_form_space_matches_tester((a, p) in arb_yk(), coeffs in prop::collection::vec(-3i64..=3, 4)) {
        let space = ml_space_yk(&a);
        let mut g = vec![qi(0); p.num_facets()];
        for (v, c) in space.mass_linear.iter().zip(&coeffs) {
            for (x, y) in g.iter_mut().zip(v) {
                *x += qi(*c) * y;
            }
        }
        let h = functional_from_gamma(&p, &g);
        let rep = mass_linear_test(&p, &h).unwrap();
        prop_assert_eq!(rep.gamma.as_ref(), Some(&g));
        prop_assert!(g.iter().sum::<Rational>().is_zero());
        let inessential = is_inessential(&p, &h).unwrap().is_some();
        prop_assert_eq!(inessential, space.contains_inessential(&g));
    }

    #[test]
    fn coefficients_are_lattice_invariant(
        (_, p) in arb_yk(),
        moves in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..4),
        gamma in prop::collection::vec(-2i64..=2, 6),
    ) {
        let g: QVector = gamma.iter().take(p.num_facets()).map(|&x| qi(x)).collect();
        prop_assume!(g.len() == p.num_facets());
        let h = functional_from_gamma(&p, &g);
        let p2 = change_lattice(&p, &moves);
        let h2 = functional_from_gamma(&p2, &g);
        let r1 = mass_linear_test(&p, &h).unwrap();
        let r2 = mass_linear_test(&p2, &h2).unwrap();
        prop_assert_eq!(r1.verdict, r2.verdict);
        prop_assert_eq!(r1.gamma, r2.gamma);
        let c1 = equivalence_classes(&p).unwrap();
        let c2 = equivalence_classes(&p2).unwrap();
        prop_assert_eq!(c1.classes, c2.classes);
    }

    #[test]
    fn translation_moves_the_center((_, p) in arb_yk(), shift in prop::collection::vec(-3i64..=3, 4)) {
        let xi: QVector = shift.iter().take(p.dim()).map(|&x| q(x, 3)).collect();
        let c = center_of_mass(&p).unwrap();
        let c2 = center_of_mass(&p.translate(&xi)).unwrap();
        let moved: QVector = c.iter().zip(&xi).map(|(a, b)| a + b).collect();
        prop_assert_eq!(c2, moved);
    }

    #[test]
    fn bundles_are_recognized_in_any_lattice_frame(
        (_, p) in arb_yk(),
        moves in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..5),
    ) {
        let p2 = change_lattice(&p, &moves);
        let cert = recognize_bundle_over_segment(&p2).unwrap();
        prop_assert!(cert.is_some());
        let cert = cert.unwrap();
        prop_assert_eq!(cert.family, Family::BundleOverSegment);
        prop_assert!(cert.verify(&p2));
    }
}

#[test]
fn classification_trace_replays_exactly() {
    let y = yk(3, &[1, 1, 0], qv(&[0, 0, 0, 1, 0, 2]));
    let h = functional_from_gamma(&y, &qv(&[1, -1, -1, 1, 0, 0]));
    for eps in [q(1, 4), q(1, 2), q(3, 4)] {
        let b = blowup(&y, &[1, 3, 4], Some(eps)).unwrap();
        let res = classify4d(&b, &h).unwrap();
        let replay = res.replay().unwrap();
        assert_eq!(replay.conormals(), b.conormals());
        assert_eq!(replay.kappa(), b.kappa());
        assert!(recognize_double_expansion(&res.terminal).unwrap().is_some());
    }
}
