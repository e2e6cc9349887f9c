//! Text rendering of the reports. JSON goes through [`to_json`].

use std::fmt::Write;

use masslin::Rational;

use crate::args::Format;
use crate::cmd::Output;
use crate::doc::{to_json, CheckReport, PolytopeDocument};

fn list(v: &[Rational]) -> String {
    v.iter().map(Rational::to_string).collect::<Vec<_>>().join(", ")
}

fn opt_list(v: &Option<Vec<Rational>>) -> String {
    v.as_deref().map_or_else(|| "-".to_string(), |v| format!("({})", list(v)))
}

fn polytope_text(d: &PolytopeDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} (dim {}, {} facets)",
        if d.name.is_empty() { "polytope" } else { &d.name },
        d.dim,
        d.facets.len()
    );
    for f in &d.facets {
        let normal: Vec<String> = f.normal.iter().map(i64::to_string).collect();
        let _ = writeln!(s, "  {:<6} ({})  kappa {}", f.label.as_deref().unwrap_or("?"), normal.join(", "), f.kappa);
    }
    s
}

fn check_text(r: &CheckReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "polytope     {}", if r.polytope.name.is_empty() { "-" } else { &r.polytope.name });
    let _ = writeln!(s, "H            ({})", list(&r.h));
    let _ =
        writeln!(s, "prefilter    {} (seed {}, {} points)", r.prefilter.passed, r.prefilter.seed, r.prefilter.trials);
    let _ = writeln!(s, "mass linear  {}", r.mass_linear);
    let _ = writeln!(s, "gamma        {}", opt_list(&r.gamma));
    let _ = writeln!(s, "symmetric    {}", r.symmetric.join(" "));
    let _ = writeln!(s, "asymmetric   {}", r.asymmetric.join(" "));
    let classes: Vec<String> = r.equivalence_classes.iter().map(|c| format!("{{{}}}", c.join(" "))).collect();
    let _ = writeln!(s, "classes      {}", classes.join(" "));
    let ess = match r.essential {
        Some(true) => "essential",
        Some(false) => "inessential",
        None => "-",
    };
    let _ = writeln!(s, "essential    {ess}");
    let _ = writeln!(s, "beta         {}", opt_list(&r.beta));
    let _ = writeln!(s, "<H,B_k>      {}", list(&r.barycenter_values));
    let _ = writeln!(s, "fully ml     {}", r.fully_mass_linear);
    let _ = writeln!(s, "xi_H         {}", opt_list(&r.generating_vector));
    s
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => match self {
                Output::Check(r) => to_json(r),
                Output::Batch(r) => to_json(r),
                Output::Classify(r) => to_json(r),
                Output::Polytope(r) => to_json(r),
                Output::Blowdown(r) => to_json(r),
                Output::Barycenters(r) => to_json(r),
                Output::MlSpace(r) => to_json(r),
            },
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        match self {
            Output::Check(r) => s = check_text(r),
            Output::Batch(entries) => {
                for e in entries {
                    let _ = writeln!(s, "== {}", e.file);
                    match (&e.report, &e.error) {
                        (Some(r), _) => s.push_str(&check_text(r)),
                        (_, Some(err)) => {
                            let _ = writeln!(s, "error {}: {}", err.kind, err.message);
                        }
                        _ => {}
                    }
                }
            }
            Output::Classify(r) => {
                let _ = writeln!(s, "tag          {}", r.tag);
                let _ = writeln!(s, "alternatives {}", r.alternatives.join(" "));
                if let Some(n) = &r.note {
                    let _ = writeln!(s, "note         {n}");
                }
                let _ = writeln!(s, "blowdowns    {}", r.steps);
                for st in r.trace.iter().flatten() {
                    let _ = writeln!(
                        s,
                        "  {} <- blowup of {{{}}} by {} [{}] essential {} -> {}",
                        st.facet,
                        st.face.join(" "),
                        st.eps,
                        st.kind,
                        st.essential_after,
                        st.essential_before
                    );
                }
                if let Some(ok) = r.replay_exact {
                    let _ = writeln!(s, "replay exact {ok}");
                }
                if let Some(c) = &r.certificate {
                    let _ =
                        writeln!(s, "certificate  {} fiber {} base {}", c.family, c.fiber.join(" "), c.base.join(" "));
                }
                let _ = writeln!(s, "terminal gamma ({}) essential {}", list(&r.terminal_gamma), r.terminal_essential);
                s.push_str(&polytope_text(&r.terminal));
            }
            Output::Polytope(d) => s = polytope_text(d),
            Output::Blowdown(r) => {
                let _ = writeln!(s, "{} blows down to the blowup of {{{}}} by {}", r.facet, r.face.join(" "), r.eps);
                s.push_str(&polytope_text(&r.polytope));
            }
            Output::Barycenters(r) => {
                for b in &r.barycenters {
                    let _ = writeln!(s, "B_{}  ({})  <H,B> = {}", b.k, list(&b.point), b.value);
                }
                let _ = writeln!(s, "fully mass linear        {}", r.fully_mass_linear);
                let _ = writeln!(s, "B_0 = B_n-1 = B_n test   {}", r.mass_linear_by_barycenters);
                let _ = writeln!(s, "B_0 = B_n-2 = B_n test   {}", r.generated_by_barycenters);
            }
            Output::MlSpace(r) => {
                let _ = writeln!(s, "{} facets {}", r.family, r.facets.join(" "));
                let _ = writeln!(s, "mass linear basis ({})", r.mass_linear.len());
                for v in &r.mass_linear {
                    let _ = writeln!(s, "  ({})", list(v));
                }
                let _ = writeln!(s, "inessential basis ({})", r.inessential.len());
                for v in &r.inessential {
                    let _ = writeln!(s, "  ({})", list(v));
                }
                let _ = writeln!(s, "essential functions exist: {}", r.has_essential);
            }
        }
        s
    }
}
