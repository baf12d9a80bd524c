//! Observed and reference magic numbers, matching, and fitting `τ`.
//!
//! Dataset files hold one entry per line, `value[±uncertainty]`, optionally
//! wrapped in parentheses to flag a weak entry. `#` starts a comment.
//!
//! ```text
//! # Na clusters
//! 8
//! (18)
//! 198±2
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::shells::{build_scheme, detect_shells, primary_counts};
use crate::spectrum::ModelParameters;

/// Datasets shipped with the crate, by lookup name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("martin", include_str!("../data/martin.txt")),
    ("pedersen", include_str!("../data/pedersen.txt")),
    ("brechignac", include_str!("../data/brechignac.txt")),
    ("knight", include_str!("../data/knight.txt")),
    ("bjornholm", include_str!("../data/bjornholm.txt")),
    ("jellium-martin", include_str!("../data/jellium-martin.txt")),
    (
        "jellium-bjornholm",
        include_str!("../data/jellium-bjornholm.txt"),
    ),
    ("jellium-brack", include_str!("../data/jellium-brack.txt")),
    ("jellium-bulgac", include_str!("../data/jellium-bulgac.txt")),
    ("woods-saxon", include_str!("../data/woods-saxon.txt")),
    ("three-n-plus-l", include_str!("../data/three-n-plus-l.txt")),
    (
        "intermediate-well",
        include_str!("../data/intermediate-well.txt"),
    ),
    ("square-well", include_str!("../data/square-well.txt")),
    (
        "harmonic-oscillator",
        include_str!("../data/harmonic-oscillator.txt"),
    ),
    ("q-oscillator", include_str!("../data/q-oscillator.txt")),
];

/// The experimental Na-cluster datasets.
pub const EXPERIMENTS: &[&str] = &["martin", "pedersen", "brechignac", "knight", "bjornholm"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ObservedMagic {
    pub value: u32,
    /// Half-width of the reported range; 0 for a bare number.
    pub uncertainty: u32,
    pub parenthesized: bool,
}

impl ObservedMagic {
    pub fn exact(value: u32) -> Self {
        Self {
            value,
            uncertainty: 0,
            parenthesized: false,
        }
    }

    /// True when `predicted` lies within the stated uncertainty plus `slack`.
    pub fn accepts(&self, predicted: u32, slack: u32) -> bool {
        predicted.abs_diff(self.value) <= self.uncertainty + slack
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentalDataset {
    pub source: String,
    entries: Vec<ObservedMagic>,
}

impl ExperimentalDataset {
    /// Sorts `entries` by value and checks the dataset invariants.
    pub fn new(source: impl Into<String>, mut entries: Vec<ObservedMagic>) -> Result<Self> {
        let source = source.into();
        if entries.is_empty() {
            return Err(Error::Validation(format!(
                "dataset `{source}` has no entries"
            )));
        }
        for e in &entries {
            if e.value < 2 {
                return Err(Error::Validation(format!(
                    "magic number {} is below 2",
                    e.value
                )));
            }
            if e.uncertainty > e.value {
                return Err(Error::Validation(format!(
                    "uncertainty {} exceeds value {}",
                    e.uncertainty, e.value
                )));
            }
        }
        entries.sort_by_key(|e| e.value);
        if let Some(w) = entries.windows(2).find(|w| w[0].value >= w[1].value) {
            return Err(Error::Validation(format!(
                "dataset `{source}` lists {} more than once",
                w[1].value
            )));
        }
        Ok(Self { source, entries })
    }

    /// A dataset of bare values, e.g. a model's own predictions.
    pub fn from_values(source: impl Into<String>, values: &[u32]) -> Result<Self> {
        Self::new(
            source,
            values.iter().copied().map(ObservedMagic::exact).collect(),
        )
    }

    pub fn bundled(name: &str) -> Option<Self> {
        let (_, text) = BUNDLED.iter().find(|(n, _)| *n == name)?;
        Some(parse_dataset(name, text).expect("bundled datasets are well-formed"))
    }

    pub fn entries(&self) -> &[ObservedMagic] {
        &self.entries
    }

    pub fn values(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.value).collect()
    }
}

fn parse_entry(raw: &str) -> std::result::Result<ObservedMagic, String> {
    let (body, parenthesized) = match raw.strip_prefix('(') {
        Some(inner) => match inner.strip_suffix(')') {
            Some(inner) => (inner.trim(), true),
            None => return Err(format!("unbalanced parenthesis in `{raw}`")),
        },
        None if raw.ends_with(')') => return Err(format!("unbalanced parenthesis in `{raw}`")),
        None => (raw, false),
    };
    let (value, uncertainty) = match body.split_once('±').or_else(|| body.split_once("+-")) {
        Some((v, u)) => (v.trim(), Some(u.trim())),
        None => (body, None),
    };
    let value: u32 = value
        .parse()
        .map_err(|_| format!("`{value}` is not a magic number"))?;
    let uncertainty = match uncertainty {
        Some(u) => u
            .parse()
            .map_err(|_| format!("`{u}` is not an uncertainty"))?,
        None => 0,
    };
    Ok(ObservedMagic {
        value,
        uncertainty,
        parenthesized,
    })
}

/// Parses a dataset file. Entries may appear in any order.
pub fn parse_dataset(source: &str, text: &str) -> Result<ExperimentalDataset> {
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let entry = parse_entry(content).map_err(|message| Error::Parse {
            line: idx + 1,
            message,
        })?;
        entries.push(entry);
    }
    ExperimentalDataset::new(source, entries)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchReport {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    /// `(predicted, observed)` value pairs.
    pub matched_pairs: Vec<(u32, u32)>,
    pub unmatched_predicted: Vec<u32>,
    pub unmatched_observed: Vec<u32>,
    pub f1: f64,
}

/// Greedy one-to-one matching: each prediction, in ascending order, takes
/// the unmatched observation within `uncertainty + slack` whose accepted
/// range ends first (lowest value on ties). This yields a maximum matching.
/// Parenthesized observations take part only when `include_paren` is set.
pub fn match_magics(
    predicted: &[u32],
    ds: &ExperimentalDataset,
    slack: u32,
    include_paren: bool,
) -> MatchReport {
    let observed: Vec<&ObservedMagic> = ds
        .entries
        .iter()
        .filter(|e| include_paren || !e.parenthesized)
        .collect();
    let mut taken = vec![false; observed.len()];
    let mut matched_pairs = Vec::new();
    let mut unmatched_predicted = Vec::new();

    let mut sorted = predicted.to_vec();
    sorted.sort_unstable();
    for p in sorted {
        let hit = observed
            .iter()
            .enumerate()
            .filter(|(j, o)| !taken[*j] && o.accepts(p, slack))
            .min_by_key(|(_, o)| (o.value + o.uncertainty, o.value))
            .map(|(j, o)| (j, o.value));
        match hit {
            Some((j, o)) => {
                taken[j] = true;
                matched_pairs.push((p, o));
            }
            None => unmatched_predicted.push(p),
        }
    }
    let unmatched_observed: Vec<u32> = observed
        .iter()
        .zip(&taken)
        .filter(|(_, t)| !**t)
        .map(|(o, _)| o.value)
        .collect();

    let tp = matched_pairs.len();
    let fp = unmatched_predicted.len();
    let fn_ = unmatched_observed.len();
    let denom = 2 * tp + fp + fn_;
    let f1 = if denom == 0 {
        1.0
    } else {
        (2 * tp) as f64 / denom as f64
    };
    MatchReport {
        true_positives: tp,
        false_positives: fp,
        false_negatives: fn_,
        matched_pairs,
        unmatched_predicted,
        unmatched_observed,
        f1,
    }
}

/// Evenly spaced grid `lo, lo + step, ...` not exceeding `hi`.
pub fn tau_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
        return Err(Error::Precondition(format!(
            "invalid grid {lo}:{hi}:{step}"
        )));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    // snap to 12 decimals so that e.g. 0.02 + 9 * 0.002 reads as 0.038
    Ok((0..=count)
        .map(|i| ((lo + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitConfig {
    /// Supplies ħω0 and n_max; its deformation is replaced by each grid point.
    pub base: ModelParameters,
    pub primary_gap: f64,
    pub count_limit: u32,
    pub slack: u32,
    pub include_paren: bool,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            base: ModelParameters::default(),
            primary_gap: crate::shells::DEFAULT_PRIMARY_GAP,
            count_limit: crate::shells::DEFAULT_COUNT_LIMIT,
            slack: 0,
            include_paren: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub tau_best: f64,
    pub score_best: f64,
    /// `(τ, f1)` for every grid point, in grid order.
    pub grid: Vec<(f64, f64)>,
}

/// Primary magic numbers predicted at deformation `tau`.
pub fn predict(tau: f64, config: &FitConfig) -> Result<Vec<u32>> {
    let params = ModelParameters::with_tau(config.base.hbar_omega0(), tau, config.base.n_max())?;
    let scheme = build_scheme(&params, config.count_limit)?;
    Ok(primary_counts(&detect_shells(
        &scheme,
        config.primary_gap,
        config.primary_gap,
    )))
}

/// Exhaustive search for the `τ` maximising the F1 score against `ds`.
/// Ties go to the smallest `τ`.
pub fn fit_tau(ds: &ExperimentalDataset, grid: &[f64], config: &FitConfig) -> Result<FitResult> {
    if grid.is_empty() {
        return Err(Error::Precondition("tau grid is empty".into()));
    }
    if grid.iter().any(|t| !t.is_finite() || *t <= 0.0) {
        return Err(Error::Precondition(
            "tau grid must hold positive finite values".into(),
        ));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "tau grid must be strictly ascending".into(),
        ));
    }
    let mut trace = Vec::with_capacity(grid.len());
    let mut best = (grid[0], f64::NEG_INFINITY);
    for &tau in grid {
        let predicted = predict(tau, config)?;
        let score = match_magics(&predicted, ds, config.slack, config.include_paren).f1;
        if score > best.1 {
            best = (tau, score);
        }
        trace.push((tau, score));
    }
    Ok(FitResult {
        tau_best: best.0,
        score_best: best.1,
        grid: trace,
    })
}
