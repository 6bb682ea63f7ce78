//! Win profiles across palette sizes and the game parameters derived from them.
//!
//! Nothing here assumes that winning is monotone in the palette size: every
//! value in a profile is solved, and a parameter is only the least winning
//! palette inside the solved range, reported together with its profile.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexOrdering};
use crate::rules::{Family, GameSpec, Player, Variant};
use crate::solver::{solve_with, SolveError, SolverConfig};

/// Outcome of one variant on one graph for each palette size (or marking
/// bound) in a contiguous range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinProfile {
    pub variant: Variant,
    pub k_min: u32,
    pub k_max: u32,
    /// `outcomes[i]` is the winner at `k_min + i`.
    pub outcomes: Vec<Player>,
}

impl WinProfile {
    pub fn range(&self) -> RangeInclusive<u32> {
        self.k_min..=self.k_max
    }

    pub fn outcome(&self, k: u32) -> Option<Player> {
        if self.range().contains(&k) {
            Some(self.outcomes[(k - self.k_min) as usize])
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, Player)> + '_ {
        self.range().zip(self.outcomes.iter().copied())
    }

    pub fn least_maker_win(&self) -> Option<u32> {
        self.iter().find(|&(_, p)| p == Player::Maker).map(|(k, _)| k)
    }

    /// Every `k` with a Maker win at `k` and a Breaker win at `k + 1`.
    pub fn violations(&self) -> Vec<u32> {
        self.iter()
            .zip(self.outcomes.iter().skip(1))
            .filter(|&((_, here), &next)| here == Player::Maker && next == Player::Breaker)
            .map(|((k, _), _)| k)
            .collect()
    }

    pub fn is_upward_closed(&self) -> bool {
        self.violations().is_empty()
    }

    /// Compact form such as `1:B 2:B 3:M`.
    pub fn summary(&self) -> String {
        self.iter()
            .map(|(k, p)| format!("{k}:{}", if p == Player::Maker { 'M' } else { 'B' }))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for WinProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.variant, self.summary())
    }
}

/// Solves `variant` on `g` for every `k` in `range`. Ordered variants use
/// `ordering`, defaulting to the identity.
pub fn win_profile(
    g: &Graph,
    variant: Variant,
    range: RangeInclusive<u32>,
    ordering: Option<&VertexOrdering>,
) -> Result<WinProfile, SolveError> {
    win_profile_with(g, variant, range, ordering, &SolverConfig::default())
}

pub fn win_profile_with(
    g: &Graph,
    variant: Variant,
    range: RangeInclusive<u32>,
    ordering: Option<&VertexOrdering>,
    config: &SolverConfig,
) -> Result<WinProfile, SolveError> {
    let (k_min, k_max) = (*range.start(), *range.end());
    let outcomes = range
        .into_par_iter()
        .map(|k| {
            let mut spec = GameSpec::new(variant, k);
            if let Some(o) = ordering {
                spec = spec.with_ordering(o.clone());
            }
            let spec = spec.with_default_ordering(g.n());
            solve_with(&spec, g, config.clone()).map(|r| r.winner)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WinProfile { variant, k_min, k_max, outcomes })
}

pub fn monotonicity_violations(
    g: &Graph,
    variant: Variant,
    range: RangeInclusive<u32>,
    ordering: Option<&VertexOrdering>,
) -> Result<Vec<u32>, SolveError> {
    Ok(win_profile(g, variant, range, ordering)?.violations())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ParameterValue {
    Determined(u32),
    /// No Maker win in the solved range; the parameter exceeds this value.
    UndeterminedAbove(u32),
    NotApplicable(String),
}

impl fmt::Display for ParameterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParameterValue::Determined(v) => write!(f, "{v}"),
            ParameterValue::UndeterminedAbove(v) => write!(f, ">{v}"),
            ParameterValue::NotApplicable(why) => write!(f, "n/a ({why})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameter {
    pub name: String,
    pub variant: Variant,
    pub value: ParameterValue,
    pub profile: Option<WinProfile>,
}

impl Parameter {
    pub fn determined(&self) -> Option<u32> {
        match self.value {
            ParameterValue::Determined(v) => Some(v),
            _ => None,
        }
    }
}

/// The named game parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParameterName {
    ChiG,
    ChiCg,
    GrundyG,
    ArboricityG,
    ColG,
    ColCg,
}

impl ParameterName {
    pub const ALL: [ParameterName; 6] = [
        ParameterName::ChiG,
        ParameterName::ChiCg,
        ParameterName::GrundyG,
        ParameterName::ArboricityG,
        ParameterName::ColG,
        ParameterName::ColCg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParameterName::ChiG => "chi_g",
            ParameterName::ChiCg => "chi_cg",
            ParameterName::GrundyG => "grundy_g",
            ParameterName::ArboricityG => "arboricity_g",
            ParameterName::ColG => "col_g",
            ParameterName::ColCg => "col_cg",
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            ParameterName::ChiG => Variant::Vertex,
            ParameterName::ChiCg => Variant::ConnectedVertex,
            ParameterName::GrundyG => Variant::Greedy,
            ParameterName::ArboricityG => Variant::Arboricity,
            ParameterName::ColG => Variant::Marking,
            ParameterName::ColCg => Variant::ConnectedMarking,
        }
    }
}

impl fmt::Display for ParameterName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ParameterName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ParameterName::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown parameter '{s}' (expected one of chi_g, chi_cg, grundy_g, arboricity_g, col_g, col_cg)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterReport {
    pub chi_g: Parameter,
    pub chi_cg: Parameter,
    pub grundy_g: Parameter,
    pub arboricity_g: Parameter,
    pub col_g: Parameter,
    pub col_cg: Parameter,
}

impl ParameterReport {
    pub fn parameters(&self) -> [&Parameter; 6] {
        [&self.chi_g, &self.chi_cg, &self.grundy_g, &self.arboricity_g, &self.col_g, &self.col_cg]
    }

    pub fn get(&self, name: ParameterName) -> &Parameter {
        match name {
            ParameterName::ChiG => &self.chi_g,
            ParameterName::ChiCg => &self.chi_cg,
            ParameterName::GrundyG => &self.grundy_g,
            ParameterName::ArboricityG => &self.arboricity_g,
            ParameterName::ColG => &self.col_g,
            ParameterName::ColCg => &self.col_cg,
        }
    }
}

/// Default top of the profile range for `variant` on `g`, high enough that
/// Maker always wins there: Δ + 1 colours for the vertex games, `m` colours
/// for arboricity, and `n` (bound `n - 1`) for marking.
pub fn default_k_max(g: &Graph, variant: Variant) -> u32 {
    let value = match variant.family() {
        Family::Vertex => g.max_degree() + 1,
        Family::Edge => g.m().max(1),
        Family::Mark => g.n().max(1),
    };
    value as u32
}

/// One named parameter of `g` with its profile. Colouring parameters use
/// palettes `1..=k_max`; the marking parameters use bounds `0..=k_max - 1`
/// and report one more than the least winning bound. Without `k_max`, the
/// parameter's [`default_k_max`] is used.
pub fn parameter(
    g: &Graph,
    which: ParameterName,
    k_max: Option<u32>,
    config: &SolverConfig,
) -> Result<Parameter, SolveError> {
    let name = which.name().to_string();
    let variant = which.variant();
    if variant.is_connected() && !g.is_connected() {
        let value = ParameterValue::NotApplicable("graph is disconnected".into());
        return Ok(Parameter { name, variant, value, profile: None });
    }
    let top = k_max.unwrap_or_else(|| default_k_max(g, variant)).max(1);
    let (range, offset) = if variant.is_marking() { (0..=top - 1, 1) } else { (1..=top, 0) };
    let profile = win_profile_with(g, variant, range, None, config)?;
    let value = match profile.least_maker_win() {
        Some(k) => ParameterValue::Determined(k + offset),
        None => ParameterValue::UndeterminedAbove(top),
    };
    Ok(Parameter { name, variant, value, profile: Some(profile) })
}

/// All named parameters of `g`; see [`parameter`].
pub fn parameter_report(g: &Graph, k_max: Option<u32>) -> Result<ParameterReport, SolveError> {
    parameter_report_with(g, k_max, &SolverConfig::default())
}

pub fn parameter_report_with(
    g: &Graph,
    k_max: Option<u32>,
    config: &SolverConfig,
) -> Result<ParameterReport, SolveError> {
    let p = |which| parameter(g, which, k_max, config);
    Ok(ParameterReport {
        chi_g: p(ParameterName::ChiG)?,
        chi_cg: p(ParameterName::ChiCg)?,
        grundy_g: p(ParameterName::GrundyG)?,
        arboricity_g: p(ParameterName::ArboricityG)?,
        col_g: p(ParameterName::ColG)?,
        col_cg: p(ParameterName::ColCg)?,
    })
}
