//! Small-graph enumeration and predicate scans over graph streams.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::params::{self, ParameterName, ParameterValue, WinProfile};
use crate::rules::Variant;
use crate::solver::{SolveError, SolverConfig};

/// Largest order handled by [`enumerate_graphs`].
pub const MAX_ENUM_VERTICES: usize = 8;
/// Largest order handled by [`canonical_form`].
pub const MAX_CANONICAL_VERTICES: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("built-in enumeration stops at {MAX_ENUM_VERTICES} vertices; supply a graph6 stream for n = {0}")]
    TooLarge(usize),
    #[error("canonical forms are limited to {MAX_CANONICAL_VERTICES} vertices, got {0}")]
    CanonicalTooLarge(usize),
    #[error("invalid predicate '{text}': {reason}")]
    Predicate { text: String, reason: String },
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

/// Isomorphism-invariant vertex colours: degrees refined by the multiset of
/// neighbour colours until stable. Colour names are ranks of sorted
/// signatures, so isomorphic graphs get matching colourings.
fn refined_colours(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colours: Vec<usize> = (1..=n).map(|v| g.degree(v)).collect();
    let mut classes = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.neighbours(v + 1).iter().map(|&w| colours[w - 1]).collect();
                around.sort_unstable();
                (colours[v], around)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colours = sigs.iter().map(|s| distinct.binary_search(s).expect("own signature")).collect();
        if distinct.len() == classes {
            return colours;
        }
        classes = distinct.len();
    }
}

struct Canon<'a> {
    g: &'a Graph,
    colours: Vec<usize>,
    target: Vec<usize>,
    total: u32,
    order: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
}

impl Canon<'_> {
    /// Places a vertex at each position in turn, appending the upper-triangle
    /// column of that position (graph6 bit order) and pruning prefixes that
    /// already exceed the best complete string.
    fn extend(&mut self, used: u64, prefix: u64, len: u32) {
        let p = self.order.len();
        if p == self.g.n() {
            if self.best.as_ref().is_none_or(|(b, _)| prefix < *b) {
                self.best = Some((prefix, self.order.clone()));
            }
            return;
        }
        for v in 0..self.g.n() {
            if used >> v & 1 == 1 || self.colours[v] != self.target[p] {
                continue;
            }
            let adj = self.g.adj_mask(v);
            let mut next = prefix;
            for &u in &self.order {
                next = next << 1 | (adj >> u & 1);
            }
            let next_len = len + p as u32;
            if let Some((b, _)) = &self.best {
                if next > b >> (self.total - next_len) {
                    continue;
                }
            }
            self.order.push(v);
            self.extend(used | 1 << v, next, next_len);
            self.order.pop();
        }
    }
}

/// Relabelling `perm` (vertex `v` becomes `perm[v - 1]`) that takes `g` to
/// its canonical form, plus the canonical adjacency string.
fn canonical_labelling(g: &Graph) -> Result<(Vec<usize>, u64), SearchError> {
    let n = g.n();
    if n > MAX_CANONICAL_VERTICES {
        return Err(SearchError::CanonicalTooLarge(n));
    }
    let colours = refined_colours(g);
    let mut target = colours.clone();
    target.sort_unstable();
    let mut canon = Canon { g, colours, target, total: (n * n.saturating_sub(1) / 2) as u32, order: Vec::new(), best: None };
    canon.extend(0, 0, 0);
    let (key, order) = canon.best.expect("some labelling exists");
    let mut perm = vec![0; n];
    for (position, &v) in order.iter().enumerate() {
        perm[v] = position + 1;
    }
    Ok((perm, key))
}

/// Canonical representative of `g`'s isomorphism class: the relabelling
/// with the least adjacency string among those that order vertices by
/// refined colour. Exhaustive within colour classes.
pub fn canonical_form(g: &Graph) -> Result<Graph, SearchError> {
    let (perm, _) = canonical_labelling(g)?;
    Ok(g.permuted(&perm).expect("canonical labelling is a permutation"))
}

/// Order plus canonical adjacency string; equal iff the graphs are isomorphic.
pub fn canonical_key(g: &Graph) -> Result<(usize, u64), SearchError> {
    Ok((g.n(), canonical_labelling(g)?.1))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool, SearchError> {
    Ok(a.n() == b.n() && a.m() == b.m() && canonical_key(a)? == canonical_key(b)?)
}

/// All graphs on `n` vertices up to isomorphism, in canonical form, ordered
/// by canonical adjacency string. Built by adding a vertex with every
/// possible neighbourhood to each graph on `n - 1` vertices.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>, SearchError> {
    if n > MAX_ENUM_VERTICES {
        return Err(SearchError::TooLarge(n));
    }
    let mut level = vec![Graph::empty(0).expect("null graph")];
    for size in 1..=n {
        let mut next: BTreeMap<u64, Graph> = BTreeMap::new();
        for g in &level {
            let edges = g.edges();
            for nbrs in 0u64..1 << (size - 1) {
                let mut e = edges.clone();
                e.extend((0..size - 1).filter(|&u| nbrs >> u & 1 == 1).map(|u| (u + 1, size)));
                let h = Graph::new(size, &e).expect("valid extension");
                let (perm, key) = canonical_labelling(&h)?;
                next.entry(key).or_insert_with(|| h.permuted(&perm).expect("permutation"));
            }
        }
        level = next.into_values().collect();
    }
    if connected_only {
        level.retain(Graph::is_connected);
    }
    Ok(level)
}

/// A property of a graph decided by exact solving.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Predicate {
    /// Game chromatic number below the connected one.
    ChiGLessThanChiCg { k_max: Option<u32> },
    /// Some edge whose deletion keeps the graph connected and raises the
    /// connected game colouring number.
    ColCgEdgeNonMonotone { k_max: Option<u32> },
    /// Maker wins at some k and loses at k + 1 within the range. Without
    /// `k_max` the variant's default top is used.
    NonMonotoneProfile { variant: Variant, k_min: u32, k_max: Option<u32> },
    /// The parameter takes exactly this value.
    Threshold { parameter: ParameterName, value: u32 },
}

impl Predicate {
    pub fn name(&self) -> &'static str {
        match self {
            Predicate::ChiGLessThanChiCg { .. } => "chi-g-lt-chi-cg",
            Predicate::ColCgEdgeNonMonotone { .. } => "col-cg-edge",
            Predicate::NonMonotoneProfile { .. } => "non-monotone",
            Predicate::Threshold { .. } => "threshold",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = |k: &Option<u32>| k.map(|k| format!(":{k}")).unwrap_or_default();
        match self {
            Predicate::ChiGLessThanChiCg { k_max } | Predicate::ColCgEdgeNonMonotone { k_max } => {
                write!(f, "{}{}", self.name(), top(k_max))
            }
            Predicate::NonMonotoneProfile { variant, k_min, k_max } => {
                write!(f, "non-monotone:{variant}:{k_min}")?;
                match k_max {
                    Some(k) => write!(f, "-{k}"),
                    None => Ok(()),
                }
            }
            Predicate::Threshold { parameter, value } => write!(f, "threshold:{parameter}={value}"),
        }
    }
}

/// Accepts `chi-g-lt-chi-cg[:KMAX]`, `col-cg-edge[:KMAX]`,
/// `non-monotone:VARIANT[:KMIN[-KMAX]]` and `threshold:PARAM=VALUE`.
impl FromStr for Predicate {
    type Err = SearchError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |reason: String| SearchError::Predicate { text: text.to_string(), reason };
        let num = |s: &str| s.parse::<u32>().map_err(|e| bad(format!("'{s}': {e}")));
        let mut parts = text.splitn(2, ':');
        let head = parts.next().unwrap_or_default();
        let rest = parts.next();
        match head {
            "chi-g-lt-chi-cg" => Ok(Predicate::ChiGLessThanChiCg { k_max: rest.map(num).transpose()? }),
            "col-cg-edge" => Ok(Predicate::ColCgEdgeNonMonotone { k_max: rest.map(num).transpose()? }),
            "non-monotone" => {
                let rest = rest.ok_or_else(|| bad("missing variant".into()))?;
                let (variant, range) = match rest.split_once(':') {
                    Some((v, r)) => (v, Some(r)),
                    None => (rest, None),
                };
                let variant: Variant = variant.parse().map_err(bad)?;
                let (k_min, k_max) = match range {
                    None => (if variant.is_marking() { 0 } else { 1 }, None),
                    Some(r) => match r.split_once('-') {
                        Some((a, b)) => (num(a)?, Some(num(b)?)),
                        None => (num(r)?, None),
                    },
                };
                Ok(Predicate::NonMonotoneProfile { variant, k_min, k_max })
            }
            "threshold" => {
                let rest = rest.ok_or_else(|| bad("expected PARAM=VALUE".into()))?;
                let (p, v) = rest.split_once('=').ok_or_else(|| bad("expected PARAM=VALUE".into()))?;
                Ok(Predicate::Threshold { parameter: p.parse().map_err(bad)?, value: num(v)? })
            }
            _ => Err(bad("unknown predicate".into())),
        }
    }
}

/// Why a graph satisfies a predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    ChiGap { chi_g: u32, chi_cg: u32 },
    /// Each listed edge (1-indexed) raises col_cg from `col_cg` to the paired value.
    EdgeDeletion { col_cg: u32, edges: Vec<((usize, usize), u32)> },
    Violations { variant: Variant, ks: Vec<u32> },
    Threshold { parameter: ParameterName, value: u32 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ChiGap { chi_g, chi_cg } => write!(f, "chi_g={chi_g} chi_cg={chi_cg}"),
            Witness::EdgeDeletion { col_cg, edges } => {
                write!(f, "col_cg={col_cg}")?;
                for ((u, v), after) in edges {
                    write!(f, " e={u}-{v}:{after}")?;
                }
                Ok(())
            }
            Witness::Violations { variant, ks } => {
                let ks: Vec<String> = ks.iter().map(u32::to_string).collect();
                write!(f, "{variant} drops after k={}", ks.join(","))
            }
            Witness::Threshold { parameter, value } => write!(f, "{parameter}={value}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub graph6: String,
    pub predicate: Predicate,
    pub witness: Witness,
    pub profiles: Vec<WinProfile>,
}

impl fmt::Display for Hit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.graph6, self.predicate.name(), self.witness)
    }
}

fn determined(p: &params::Parameter) -> Option<u32> {
    match p.value {
        ParameterValue::Determined(v) => Some(v),
        _ => None,
    }
}

/// Decides `predicate` on `g`; `Some` with a witness iff it holds.
pub fn evaluate(g: &Graph, predicate: &Predicate, config: &SolverConfig) -> Result<Option<Hit>, SolveError> {
    let hit = |witness, profiles| Hit { graph6: g.to_graph6(), predicate: predicate.clone(), witness, profiles };
    let profiles_of = |ps: &[&params::Parameter]| ps.iter().filter_map(|p| p.profile.clone()).collect::<Vec<_>>();
    match predicate {
        Predicate::ChiGLessThanChiCg { k_max } => {
            if !g.is_connected() {
                return Ok(None);
            }
            let chi_g = params::parameter(g, ParameterName::ChiG, *k_max, config)?;
            let chi_cg = params::parameter(g, ParameterName::ChiCg, *k_max, config)?;
            let found = match (determined(&chi_g), determined(&chi_cg)) {
                (Some(a), Some(b)) if a < b => Some(Witness::ChiGap { chi_g: a, chi_cg: b }),
                _ => None,
            };
            Ok(found.map(|w| hit(w, profiles_of(&[&chi_g, &chi_cg]))))
        }
        Predicate::ColCgEdgeNonMonotone { k_max } => {
            if !g.is_connected() {
                return Ok(None);
            }
            let whole = params::parameter(g, ParameterName::ColCg, *k_max, config)?;
            let Some(base) = determined(&whole) else { return Ok(None) };
            let mut profiles = profiles_of(&[&whole]);
            let mut edges = Vec::new();
            for (u, v) in g.edges() {
                let h = g.delete_edge(u, v).expect("edge of g");
                if !h.is_connected() {
                    continue;
                }
                let minus = params::parameter(&h, ParameterName::ColCg, *k_max, config)?;
                let raised = match minus.value {
                    ParameterValue::Determined(after) if after > base => Some(after),
                    ParameterValue::UndeterminedAbove(top) if top >= base => Some(top + 1),
                    _ => None,
                };
                if let Some(after) = raised {
                    edges.push(((u, v), after));
                    profiles.extend(minus.profile);
                }
            }
            if edges.is_empty() {
                return Ok(None);
            }
            Ok(Some(hit(Witness::EdgeDeletion { col_cg: base, edges }, profiles)))
        }
        Predicate::NonMonotoneProfile { variant, k_min, k_max } => {
            if variant.is_connected() && !g.is_connected() {
                return Ok(None);
            }
            let top = k_max.unwrap_or_else(|| {
                let d = params::default_k_max(g, *variant);
                if variant.is_marking() { d - 1 } else { d }
            });
            let profile = params::win_profile_with(g, *variant, *k_min..=top, None, config)?;
            let ks = profile.violations();
            if ks.is_empty() {
                return Ok(None);
            }
            Ok(Some(hit(Witness::Violations { variant: *variant, ks }, vec![profile])))
        }
        Predicate::Threshold { parameter, value } => {
            let p = params::parameter(g, *parameter, Some((*value).max(1)), config)?;
            if determined(&p) != Some(*value) {
                return Ok(None);
            }
            Ok(Some(hit(Witness::Threshold { parameter: *parameter, value: *value }, profiles_of(&[&p]))))
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScanOptions {
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
    /// Wall-clock allowance per graph.
    pub budget: Option<Duration>,
    /// Transposition-table cap per solve.
    pub max_entries: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    /// Position of the graph in the input stream, from 0.
    pub index: usize,
    pub graph6: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub predicate: Predicate,
    pub evaluated: usize,
    pub hits: Vec<Hit>,
    pub skipped: Vec<Skipped>,
}

/// Evaluates `predicate` on every graph. Graphs run in parallel; hits and
/// skips come back in stream order whatever the worker count. A graph whose
/// solve fails or runs out of budget is listed as skipped.
pub fn scan(graphs: &[Graph], predicate: &Predicate, options: &ScanOptions) -> Result<ScanReport, SearchError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = options.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| SearchError::Pool(e.to_string()))?;
    let outcomes: Vec<Result<Option<Hit>, SolveError>> = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| {
                let config = SolverConfig {
                    max_entries: options.max_entries,
                    deadline: options.budget.map(|b| Instant::now() + b),
                };
                evaluate(g, predicate, &config)
            })
            .collect()
    });
    let mut report = ScanReport { predicate: predicate.clone(), evaluated: graphs.len(), hits: Vec::new(), skipped: Vec::new() };
    for (index, (g, outcome)) in graphs.iter().zip(outcomes).enumerate() {
        match outcome {
            Ok(Some(hit)) => report.hits.push(hit),
            Ok(None) => {}
            Err(e) => report.skipped.push(Skipped { index, graph6: g.to_graph6(), reason: e.to_string() }),
        }
    }
    Ok(report)
}
