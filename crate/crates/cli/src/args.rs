//! Argument types shared by the subcommands.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use masslin::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// A comma separated list of rationals.
#[derive(Debug, Clone)]
pub struct RatList(pub Vec<Rational>);

impl std::str::FromStr for RatList {
    type Err = masslin::kernel::ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        masslin::kernel::parse_rational_list(s).map(RatList)
    }
}

/// Twists `b1:b2` separated by commas.
#[derive(Debug, Clone)]
pub struct Twists(pub Vec<(i64, i64)>);

impl std::str::FromStr for Twists {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| {
                let (a, b) = t.split_once(':').ok_or_else(|| format!("twist {t:?} is not of the form b1:b2"))?;
                let a = a.trim().parse().map_err(|_| format!("bad twist entry {a:?}"))?;
                let b = b.trim().parse().map_err(|_| format!("bad twist entry {b:?}"))?;
                Ok((a, b))
            })
            .collect::<Result<_, _>>()
            .map(Twists)
    }
}

/// The functional, given directly or by its facet coefficients.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct FunctionalArgs {
    /// Coordinates of H, e.g. `1,-1,0,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<RatList>,
    /// Facet coefficients gamma; H is sum gamma_i eta_i.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<RatList>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Simplex,
    Product,
    Trapezoid,
    RecipePolygon,
    BundleYk,
    #[value(name = "bundle-121")]
    Bundle121,
    BundleD2Polygon,
    Expansion,
    DoubleExpansion,
    MinimalA3,
    MinimalB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceFamily {
    BundleYk,
    #[value(name = "bundle-121")]
    Bundle121,
    BundleD2Polygon,
}

/// Family parameters shared by `construct` and `mlspace`.
#[derive(Debug, Clone, Default, Args)]
pub struct FamilyParams {
    /// Fiber dimension of a simplex bundle.
    #[arg(long)]
    pub k: Option<usize>,
    /// Twist vector, e.g. `1,1,0`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Option<Vec<i64>>,
    /// Support numbers.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<RatList>,
    /// Second twist of a 121-bundle.
    #[arg(long)]
    pub d: Option<i64>,
    /// Dimension of a simplex or edge count of a recipe polygon.
    #[arg(long)]
    pub n: Option<usize>,
    /// Size of a simplex.
    #[arg(long)]
    pub lambda: Option<Rational>,
    /// Base polytope document.
    #[arg(long)]
    pub base: Option<PathBuf>,
    /// Second factor of a product.
    #[arg(long)]
    pub other: Option<PathBuf>,
    /// Facet of the base to expand along, by label or index.
    #[arg(long)]
    pub facet: Option<String>,
    /// The two facets of a double expansion.
    #[arg(long)]
    pub facets: Option<String>,
    /// Twists of a polygon bundle, e.g. `0:0,0:0,1:-1`.
    #[arg(long, allow_hyphen_values = true)]
    pub twists: Option<Twists>,
    /// Fiber support numbers of a polygon bundle.
    #[arg(long, allow_hyphen_values = true)]
    pub fiber_kappa: Option<RatList>,
    /// Facet count of a minimal family member.
    #[arg(long)]
    pub n_facets: Option<usize>,
    /// Multiplicity of an expansion.
    #[arg(long, default_value_t = 1)]
    pub times: usize,
}
