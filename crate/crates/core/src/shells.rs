//! Energy ordering, occupancies and shell closures.
//!
//! A [`LevelScheme`] is the energy-ordered prefix of the spectrum up to a
//! particle-count limit. It also remembers the energy of the first level
//! above the cut so that the gap following the last kept level is known.
//! Shell closures are gaps above a threshold; the running occupancy at the
//! level below the gap is the magic number.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::{allowed_l, energy, enumerate_levels, Level, ModelParameters};

/// Minimum gap (units of ħω0) separating two shells.
pub const DEFAULT_PRIMARY_GAP: f64 = 0.39;
/// Lower edge of the band of weak closures.
pub const DEFAULT_SECONDARY_GAP: f64 = 0.30;
/// Particle count up to which electronic shell filling is meaningful.
pub const DEFAULT_COUNT_LIMIT: u32 = 1500;

// Upper bound used when searching for a sufficient n_max.
const N_MAX_SEARCH_CAP: u32 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MagicGrade {
    Primary,
    Secondary,
}

impl MagicGrade {
    pub fn as_str(&self) -> &'static str {
        match self {
            MagicGrade::Primary => "primary",
            MagicGrade::Secondary => "secondary",
        }
    }
}

/// A shell closure: the gap above `after_level` and the occupancy below it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MagicRecord {
    pub after_level: Level,
    pub gap: f64,
    pub count: u32,
    pub grade: MagicGrade,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelScheme {
    levels: Vec<Level>,
    cumulative: Vec<u32>,
    next_energy: f64,
    params: ModelParameters,
}

impl LevelScheme {
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Running occupancy, including each level itself.
    pub fn cumulative(&self) -> &[u32] {
        &self.cumulative
    }

    /// Energy of the first level above the cut.
    pub fn next_energy(&self) -> f64 {
        self.next_energy
    }

    pub fn params(&self) -> &ModelParameters {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Energy difference from level `i` to the next one up.
    pub fn gap_after(&self, i: usize) -> f64 {
        let above = self
            .levels
            .get(i + 1)
            .map_or(self.next_energy, |l| l.energy);
        above - self.levels[i].energy
    }

    pub fn gaps(&self) -> Vec<f64> {
        (0..self.levels.len()).map(|i| self.gap_after(i)).collect()
    }

    pub fn total(&self) -> u32 {
        self.cumulative.last().copied().unwrap_or(0)
    }
}

/// Total order on levels: energy, then `n`, then `l`.
fn level_order(a: &Level, b: &Level) -> Ordering {
    a.energy
        .total_cmp(&b.energy)
        .then(a.n.cmp(&b.n))
        .then(a.l.cmp(&b.l))
}

pub(crate) fn sort_levels(levels: &mut [Level]) {
    levels.sort_by(level_order);
}

/// Orders the spectrum and keeps levels up to and including the first one
/// whose running occupancy reaches `count_limit`.
pub fn build_scheme(params: &ModelParameters, count_limit: u32) -> Result<LevelScheme> {
    if count_limit < 2 {
        return Err(Error::Precondition(format!(
            "count_limit must be at least 2, got {count_limit}"
        )));
    }
    match try_build(params, count_limit)? {
        Some(scheme) => Ok(scheme),
        None => Err(Error::InsufficientShells {
            n_max: params.n_max(),
            required: required_n_max(params, count_limit),
        }),
    }
}

// None when the enumerated shells do not provably contain the scheme and the
// level right above it.
fn try_build(params: &ModelParameters, count_limit: u32) -> Result<Option<LevelScheme>> {
    let mut levels = enumerate_levels(params)?;
    sort_levels(&mut levels);

    let mut cumulative = Vec::with_capacity(levels.len());
    let mut total = 0u32;
    for level in &levels {
        total += level.degeneracy;
        cumulative.push(total);
    }
    let Some(cut) = cumulative.iter().position(|&c| c >= count_limit) else {
        return Ok(None);
    };
    let Some(next) = levels.get(cut + 1).copied() else {
        return Ok(None);
    };
    // Every level of a higher shell lies above the lowest level of shell
    // n_max + 1 or n_max + 2, so both parities bound the unseen spectrum.
    let floor = lowest_energy_of_shells(params, params.n_max() + 1..=params.n_max() + 2)?;
    if floor < next.energy {
        return Ok(None);
    }

    levels.truncate(cut + 1);
    cumulative.truncate(cut + 1);
    Ok(Some(LevelScheme {
        levels,
        cumulative,
        next_energy: next.energy,
        params: *params,
    }))
}

fn lowest_energy_of_shells(
    params: &ModelParameters,
    shells: std::ops::RangeInclusive<u32>,
) -> Result<f64> {
    let mut lowest = f64::INFINITY;
    for n in shells {
        for l in allowed_l(n) {
            lowest = lowest.min(energy(n, l, params)?);
        }
    }
    Ok(lowest)
}

fn required_n_max(params: &ModelParameters, count_limit: u32) -> Option<u32> {
    let fits = |n_max: u32| -> bool {
        params
            .with_n_max(n_max)
            .ok()
            .and_then(|p| try_build(&p, count_limit).ok().flatten())
            .is_some()
    };
    let mut failed = params.n_max();
    let mut candidate = failed.saturating_mul(2).max(failed + 1);
    loop {
        if fits(candidate) {
            break;
        }
        if candidate >= N_MAX_SEARCH_CAP {
            return None;
        }
        failed = candidate;
        candidate = candidate.saturating_mul(2).min(N_MAX_SEARCH_CAP);
    }
    while candidate - failed > 1 {
        let mid = failed + (candidate - failed) / 2;
        if fits(mid) {
            candidate = mid;
        } else {
            failed = mid;
        }
    }
    Some(candidate)
}

/// Classifies the gap above every level. Gaps strictly larger than
/// `primary_gap` close a shell; gaps in `(secondary_gap, primary_gap]` are
/// reported as secondary closures.
pub fn detect_shells(
    scheme: &LevelScheme,
    primary_gap: f64,
    secondary_gap: f64,
) -> Vec<MagicRecord> {
    (0..scheme.len())
        .filter_map(|i| {
            let gap = scheme.gap_after(i);
            let grade = if gap > primary_gap {
                MagicGrade::Primary
            } else if gap > secondary_gap {
                MagicGrade::Secondary
            } else {
                return None;
            };
            Some(MagicRecord {
                after_level: scheme.levels[i],
                gap,
                count: scheme.cumulative[i],
                grade,
            })
        })
        .collect()
}

/// Magic numbers of the primary records, in ascending order.
pub fn primary_counts(records: &[MagicRecord]) -> Vec<u32> {
    records
        .iter()
        .filter(|r| r.grade == MagicGrade::Primary)
        .map(|r| r.count)
        .collect()
}

/// Plain-text level table. Primary closures get a `*` after the running
/// total and a gap row below them.
pub fn render_table(scheme: &LevelScheme, records: &[MagicRecord]) -> String {
    let mut out = String::new();
    out.push_str("  n   l         E   2(2l+1)   total\n");
    let mut primary = records
        .iter()
        .filter(|r| r.grade == MagicGrade::Primary)
        .peekable();
    for (i, level) in scheme.levels.iter().enumerate() {
        let count = scheme.cumulative[i];
        let closes = primary.next_if(|r| r.count == count).is_some();
        let _ = writeln!(
            out,
            "{:>3} {:>3} {:>9.3} {:>9} {:>7}{}",
            level.n,
            level.l,
            level.energy,
            level.degeneracy,
            count,
            if closes { "*" } else { "" }
        );
        if closes {
            let _ = writeln!(out, "{:>17.3}", scheme.gap_after(i));
        }
    }
    out
}
