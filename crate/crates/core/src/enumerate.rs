//! Exhaustive generation of small quandles and racks, and the pairwise
//! composition survey.
//!
//! Tables are built column by column. Self-distributivity is equivalent to
//! `S_{S_z(y)} = S_z S_y S_z^-1` for the inner maps, so every pair of
//! assigned columns forces a third one; the search propagates these before
//! branching and fails as soon as a forced column clashes.

use rayon::prelude::*;

use crate::composition::{compose, distributes_over};
use crate::error::{Error, Result};
pub use crate::iso::{canonical_form, CanonicalTable};
use crate::iso::{is_orbit_minimal, PositionOrder};
use crate::perm::all_permutations;
use crate::table::{Classification, OpTable};

/// Largest quandle order accepted by [`enumerate_quandles`].
pub const DEFAULT_MAX_N: usize = 7;
/// Largest rack order accepted by [`enumerate_racks`].
pub const RACK_MAX_N: usize = 5;

/// Quandles of order `n`, labelled or one canonical representative per
/// isomorphism class, sorted. Orders above [`DEFAULT_MAX_N`] are rejected.
pub fn enumerate_quandles(n: usize, up_to_iso: bool) -> Result<Vec<OpTable>> {
    enumerate_quandles_capped(n, up_to_iso, DEFAULT_MAX_N)
}

pub fn enumerate_quandles_capped(n: usize, up_to_iso: bool, cap: usize) -> Result<Vec<OpTable>> {
    enumerate(n, up_to_iso, cap, true)
}

pub fn enumerate_racks(n: usize, up_to_iso: bool) -> Result<Vec<OpTable>> {
    enumerate(n, up_to_iso, RACK_MAX_N, false)
}

fn enumerate(n: usize, up_to_iso: bool, cap: usize, quandles: bool) -> Result<Vec<OpTable>> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n > cap {
        return Err(Error::CapacityExceeded { requested: n, cap });
    }
    let perms: Vec<Vec<u8>> = all_permutations(n)
        .into_iter()
        .map(|p| p.into_iter().map(|v| v as u8).collect())
        .collect();
    let candidates: Vec<Vec<&[u8]>> = (0..n)
        .map(|b| {
            perms
                .iter()
                .filter(|p| !quandles || p[b] as usize == b)
                .map(Vec::as_slice)
                .collect()
        })
        .collect();
    let mut tables: Vec<OpTable> = candidates[0]
        .par_iter()
        .flat_map_iter(|first| {
            let mut search = ColumnSearch::new(n, &candidates);
            let mut found = Vec::new();
            if search.assign(0, first) {
                search.extend(&mut |t: OpTable| {
                    if !up_to_iso || is_orbit_minimal(&t, PositionOrder::Shell) {
                        found.push(t);
                    }
                });
            }
            found
        })
        .collect();
    if up_to_iso {
        tables = tables
            .into_par_iter()
            .map(|t| canonical_form(&t).table)
            .collect();
    }
    tables.sort();
    Ok(tables)
}

struct ColumnSearch<'a> {
    n: usize,
    candidates: &'a [Vec<&'a [u8]>],
    columns: Vec<Option<Vec<u8>>>,
    inverses: Vec<Vec<u8>>,
    trail: Vec<usize>,
}

impl<'a> ColumnSearch<'a> {
    fn new(n: usize, candidates: &'a [Vec<&'a [u8]>]) -> Self {
        ColumnSearch {
            n,
            candidates,
            columns: vec![None; n],
            inverses: vec![vec![0; n]; n],
            trail: Vec::with_capacity(n),
        }
    }

    fn set(&mut self, b: usize, column: Vec<u8>) {
        for (x, &v) in column.iter().enumerate() {
            self.inverses[b][v as usize] = x as u8;
        }
        self.columns[b] = Some(column);
        self.trail.push(b);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let b = self.trail.pop().expect("non-empty");
            self.columns[b] = None;
        }
    }

    /// Assigns column `b` and propagates; on failure leaves the state
    /// unchanged apart from the caller undoing to its mark.
    fn assign(&mut self, b: usize, column: &[u8]) -> bool {
        let start = self.trail.len();
        self.set(b, column.to_vec());
        let mut next = start;
        while next < self.trail.len() {
            let c = self.trail[next];
            next += 1;
            let assigned: Vec<usize> = self.trail.clone();
            for &other in &assigned {
                if !self.force(c, other) || !self.force(other, c) {
                    return false;
                }
            }
        }
        true
    }

    /// Applies `S_{S_z(y)} = S_z S_y S_z^-1`.
    fn force(&mut self, z: usize, y: usize) -> bool {
        let (sz, sy) = match (&self.columns[z], &self.columns[y]) {
            (Some(sz), Some(sy)) => (sz, sy),
            _ => return true,
        };
        let w = sz[y] as usize;
        let inv = &self.inverses[z];
        let required: Vec<u8> = (0..self.n)
            .map(|u| sz[sy[inv[u] as usize] as usize])
            .collect();
        match &self.columns[w] {
            Some(existing) => *existing == required,
            None => {
                self.set(w, required);
                true
            }
        }
    }

    fn extend(&mut self, emit: &mut impl FnMut(OpTable)) {
        let Some(b) = self.columns.iter().position(Option::is_none) else {
            let n = self.n;
            let columns = &self.columns;
            emit(
                OpTable::from_fn(n, |a, b| columns[b].as_ref().expect("complete")[a] as usize)
                    .expect("valid size"),
            );
            return;
        };
        let candidates = self.candidates;
        for column in &candidates[b] {
            let mark = self.trail.len();
            if self.assign(b, column) {
                self.extend(emit);
            }
            self.undo_to(mark);
        }
    }
}

/// One cell of a [`SurveyReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyCell {
    pub product: OpTable,
    pub classification: Classification,
    /// Whether the second factor distributes over the first.
    pub distributes: bool,
    /// Whether the first factor also distributes over the second; together
    /// with `distributes` this guarantees a quandle.
    pub converse_distributes: bool,
}

/// Classification of every ordered product `T_i T_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyReport {
    pub tables: Vec<OpTable>,
    /// `grid[i][j]` describes `compose(T_i, T_j)`.
    pub grid: Vec<Vec<SurveyCell>>,
}

pub fn composition_survey(tables: &[OpTable]) -> Result<SurveyReport> {
    if let Some(first) = tables.first() {
        for t in tables {
            first.check_same_size(t)?;
        }
    }
    let grid = tables
        .iter()
        .map(|ti| {
            tables
                .iter()
                .map(|tj| {
                    let product = compose(ti, tj)?;
                    Ok(SurveyCell {
                        classification: product.classification(),
                        distributes: distributes_over(tj, ti)?,
                        converse_distributes: distributes_over(ti, tj)?,
                        product,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SurveyReport {
        tables: tables.to_vec(),
        grid,
    })
}
