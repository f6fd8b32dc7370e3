//! Free resolutions of finitely presented graded modules, and minimization.
//!
//! Resolutions are built by iterated syzygy computation. With the `minimal`
//! option each step keeps only a minimal homogeneous generating set of the
//! kernel, which over a graded polynomial ring makes every differential from
//! the second one on free of constant entries automatically; the first one is
//! constant-free whenever the input presentation is minimal. Minimization of
//! an arbitrary graded complex cancels unit pivots Gaussian-style.

use std::collections::BTreeMap;

use crate::cancel::{CancelToken, Cancelled};
use crate::ring::Polynomial;

use super::groebner::{groebner_with, kernel_with, minimal_generators_with};
use super::{FreeModule, FreeResolution, ModuleElem, ModuleMap, Presentation};

/// Free resolution of `coker(p.rels)` of length at most `max_len`.
///
/// Stops early as soon as a kernel vanishes. With `minimal` set the input
/// presentation is minimized first and every kernel is shrunk to a minimal
/// generating set, so the result is a minimal resolution and its length is
/// the homological dimension of the module (when `max_len` permits).
pub fn free_resolution(p: &Presentation, max_len: usize, minimal: bool) -> FreeResolution {
    free_resolution_with(p, max_len, minimal, &CancelToken::new()).expect("no cancellation")
}

pub fn free_resolution_with(
    p: &Presentation,
    max_len: usize,
    minimal: bool,
    token: &CancelToken,
) -> Result<FreeResolution, Cancelled> {
    let p0 = if minimal {
        minimize_presentation_with(p, token)?
    } else {
        p.clone()
    };
    let mut modules = vec![p0.gens().clone()];
    let mut differentials: Vec<ModuleMap> = Vec::new();
    if max_len == 0 || p0.num_rels() == 0 {
        return Ok(FreeResolution::from_parts(modules, differentials));
    }
    modules.push(p0.rels().source().clone());
    differentials.push(p0.rels().clone());

    while differentials.len() < max_len {
        let last = differentials.last().unwrap();
        let mut syz = kernel_with(last, token)?;
        if minimal {
            syz = minimal_generators_with(&syz, last.source(), token)?;
        }
        if syz.is_empty() {
            break;
        }
        let d = ModuleMap::from_generators(last.source(), syz)
            .expect("syzygies are nonzero and homogeneous");
        modules.push(d.source().clone());
        differentials.push(d);
    }
    Ok(FreeResolution::from_parts(modules, differentials))
}

/// Graded Betti numbers: for each homological index, the generator degrees of
/// the minimal resolution with multiplicities.
pub fn betti(p: &Presentation) -> Vec<BTreeMap<i32, usize>> {
    let nv = p.ring().num_vars();
    let res = free_resolution(p, nv + 1, true);
    res.modules()
        .iter()
        .map(|m| {
            let mut counts = BTreeMap::new();
            for &s in m.shifts() {
                *counts.entry(s).or_insert(0) += 1;
            }
            counts
        })
        .collect()
}

/// Position of a unit pivot inside one differential.
fn find_unit(map: &ModuleMap) -> Option<(usize, usize)> {
    // smallest column first, then smallest row
    for col in 0..map.num_cols() {
        for row in 0..map.num_rows() {
            if map.entry(row, col).is_one() {
                return Some((row, col));
            }
        }
    }
    None
}

struct Grid {
    shifts_src: Vec<i32>,
    shifts_tgt: Vec<i32>,
    // entries[row][col]
    entries: Vec<Vec<Polynomial>>,
}

impl Grid {
    fn of(map: &ModuleMap) -> Self {
        Grid {
            shifts_src: map.source().shifts().to_vec(),
            shifts_tgt: map.target().shifts().to_vec(),
            entries: (0..map.num_rows())
                .map(|i| (0..map.num_cols()).map(|j| map.entry(i, j).clone()).collect())
                .collect(),
        }
    }

    fn to_map(&self, ring: &crate::ring::RingCtx) -> ModuleMap {
        let source = FreeModule::new(ring, self.shifts_src.clone());
        let target = FreeModule::new(ring, self.shifts_tgt.clone());
        let columns = (0..source.rank())
            .map(|j| {
                ModuleElem::from_components(
                    (0..target.rank()).map(|i| self.entries[i][j].clone()).collect(),
                )
            })
            .collect();
        ModuleMap::new(source, target, columns).expect("pivoting preserves gradedness")
    }

    fn delete_row(&mut self, row: usize) {
        self.entries.remove(row);
        self.shifts_tgt.remove(row);
    }

    fn delete_col(&mut self, col: usize) {
        for r in &mut self.entries {
            r.remove(col);
        }
        self.shifts_src.remove(col);
    }

    /// Gaussian cancellation at a unit pivot `(k, l)`; over F2 the update is
    /// `a[i][j] += a[i][l] * a[k][j]`. Deletes row `k` and column `l`.
    fn pivot(&mut self, k: usize, l: usize) {
        let rows = self.entries.len();
        let cols = self.shifts_src.len();
        for i in 0..rows {
            if i == k || self.entries[i][l].is_zero() {
                continue;
            }
            let coeff = self.entries[i][l].clone();
            for j in 0..cols {
                if j == l || self.entries[k][j].is_zero() {
                    continue;
                }
                let add = &coeff * &self.entries[k][j];
                self.entries[i][j] = &self.entries[i][j] + &add;
            }
        }
        self.delete_row(k);
        self.delete_col(l);
    }
}

/// Cancels all unit pivots of the differentials, yielding a homotopy
/// equivalent complex with no constant entries. On an exact input the graded
/// ranks of the result are the Betti numbers; idempotent.
pub fn minimize(res: &FreeResolution) -> FreeResolution {
    if res.length() == 0 {
        return res.clone();
    }
    let ring = res.modules()[0].ring().clone();
    let mut grids: Vec<Grid> = res.differentials().iter().map(Grid::of).collect();
    loop {
        let mut pivoted = false;
        for d in 0..grids.len() {
            // keep cancelling inside this differential until it is clean
            loop {
                let pos = {
                    let map = grids[d].to_map(&ring);
                    find_unit(&map)
                };
                let Some((k, l)) = pos else { break };
                // row k of the next differential corresponds to source slot l
                grids[d].pivot(k, l);
                if d + 1 < grids.len() {
                    grids[d + 1].delete_row(l);
                }
                if d > 0 {
                    grids[d - 1].delete_col(k);
                }
                pivoted = true;
            }
        }
        if !pivoted {
            break;
        }
    }
    let m0_shifts = grids[0].shifts_tgt.clone();
    // trim trailing zero-rank tails
    while let Some(last) = grids.last() {
        if last.shifts_src.is_empty() {
            grids.pop();
        } else {
            break;
        }
    }
    if grids.is_empty() {
        // every differential cancelled away; what is left is free
        let m0 = FreeModule::new(&ring, m0_shifts);
        return FreeResolution::from_parts(vec![m0], vec![]);
    }
    let maps: Vec<ModuleMap> = grids.iter().map(|g| g.to_map(&ring)).collect();
    let mut modules = vec![maps[0].target().clone()];
    for m in &maps {
        modules.push(m.source().clone());
    }
    FreeResolution::from_parts(modules, maps)
}

/// Minimal presentation of the same module: unit pivots cancelled, redundant
/// relation columns dropped. The generator count afterwards is the minimal
/// number of generators.
pub fn minimize_presentation(p: &Presentation) -> Presentation {
    minimize_presentation_with(p, &CancelToken::new()).expect("no cancellation")
}

pub(crate) fn minimize_presentation_with(
    p: &Presentation,
    token: &CancelToken,
) -> Result<Presentation, Cancelled> {
    let ring = p.ring().clone();
    let mut grid = Grid::of(p.rels());
    loop {
        let pos = find_unit(&grid.to_map(&ring));
        let Some((k, l)) = pos else { break };
        grid.pivot(k, l);
    }
    let map = grid.to_map(&ring);
    let gens = map.target().clone();
    let cols: Vec<ModuleElem> = map
        .columns()
        .iter()
        .filter(|c| !c.is_zero())
        .cloned()
        .collect();
    let min_cols = minimal_generators_with(&cols, &gens, token)?;
    let rels = if min_cols.is_empty() {
        ModuleMap::zero(FreeModule::new(&ring, vec![]), gens.clone())
    } else {
        ModuleMap::from_generators(&gens, min_cols).expect("minimal generators are homogeneous")
    };
    Ok(Presentation::new(gens, rels).expect("endpoints preserved"))
}

/// Checks a resolution: consecutive composites vanish and every kernel
/// generator of one differential lies in the image of the next (exactness at
/// the interior spots).
pub fn verify_resolution(res: &FreeResolution) -> bool {
    verify_resolution_with(res, &CancelToken::new()).unwrap_or(false)
}

pub(crate) fn verify_resolution_with(
    res: &FreeResolution,
    token: &CancelToken,
) -> Result<bool, Cancelled> {
    if !res.composites_are_zero() {
        return Ok(false);
    }
    for i in 0..res.length() {
        let ker = kernel_with(&res.differentials()[i], token)?;
        if i + 1 < res.length() {
            let image_gb = groebner_with(
                res.differentials()[i + 1].columns(),
                res.differentials()[i + 1].target(),
                token,
            )?;
            if !ker.iter().all(|v| image_gb.contains(v)) {
                return Ok(false);
            }
        } else if !ker.is_empty() {
            // the resolution was truncated here; nothing to check
            return Ok(true);
        }
    }
    Ok(true)
}
