//! Inputs shared by the benchmarks in `benches/`.
//!
//! Symbolic volume data is cached on each polytope, so the benches rebuild
//! polytopes from [`Fixture`] to time the uncached path.

use masslin::construct::{blowup, bundle_yk, functional_from_gamma, minimal_family_a3, BundleYk};
use masslin::{qi, HPolytope, IntVector, QVector};

#[derive(Clone)]
pub struct Fixture {
    pub name: &'static str,
    conormals: Vec<IntVector>,
    kappa: QVector,
    labels: Vec<String>,
    pub h: QVector,
}

impl Fixture {
    fn new(name: &'static str, p: &HPolytope, h: QVector) -> Self {
        Fixture { name, conormals: p.conormals().to_vec(), kappa: p.kappa().to_vec(), labels: p.labels().to_vec(), h }
    }

    /// A polytope with no cached data.
    pub fn fresh(&self) -> HPolytope {
        HPolytope::new(self.conormals.clone(), self.kappa.clone())
            .and_then(|p| p.with_labels(self.labels.clone()))
            .expect("fixture is valid")
    }
}

fn ints(v: &[i64]) -> QVector {
    v.iter().map(|&x| qi(x)).collect()
}

/// `Y(k=3, a=(1,1,0))` with the inessential function `eta_1 - eta_2 - eta_3 + eta_4`.
pub fn golden() -> Fixture {
    let y = bundle_yk(&BundleYk { k: 3, a: vec![1, 1, 0], kappa: ints(&[0, 0, 0, 1, 0, 2]) }).expect("in chamber");
    let h = functional_from_gamma(&y, &ints(&[1, -1, -1, 1, 0, 0]));
    Fixture::new("Y3", &y, h)
}

/// The golden polytope blown up along `F2 ∩ F4 ∩ G1`, where the function
/// becomes essential.
pub fn golden_blowup() -> Fixture {
    let g = golden();
    let b = blowup(&g.fresh(), &[1, 3, 4], None).expect("admissible");
    Fixture::new("Y3 blown up", &b, g.h)
}

/// Smallest member of the `a3` family with its essential fiber function.
pub fn minimal_a3() -> Fixture {
    let p = minimal_family_a3(7).expect("constructible");
    Fixture::new("minimal a3", &p, masslin::construct::essential_fiber_function(1, 1))
}
