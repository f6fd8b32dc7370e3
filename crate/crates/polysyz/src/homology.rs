//! Homological invariants of finitely presented graded modules: freeness,
//! homological dimension, and the exact syzygy order.
//!
//! A module is a j-th syzygy when it embeds in an exact sequence
//! `0 -> M -> F^1 -> ... -> F^j` with free `F^i`; order 1 means torsion-free,
//! and order at least `num_vars` means free. The order is decided through
//! the Auslander transpose: over a regular graded ring, `M` is a j-th syzygy
//! exactly when `Ext^i(Tr M, R)` vanishes for `i = 1, ..., j`. That reduces
//! the whole question to kernels and normal forms, and it is cross-validated
//! against Koszul-complex ground truth in the acceptance suite.

use crate::cancel::{CancelToken, Cancelled};
use crate::module::{
    free_resolution_with, groebner_with, kernel_with, minimize_presentation,
    minimize_presentation_with, normal_form, FreeModule, FreeResolution, ModuleElem, Presentation,
};

/// The exact syzygy order of a module: `Free` when the minimal resolution
/// has length zero (the zero module counts as free), otherwise the largest
/// `k` such that the module is a k-th syzygy, with `0 <= k < num_vars`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyzygyOrder {
    Free,
    Order(u32),
}

impl SyzygyOrder {
    pub fn is_free(self) -> bool {
        matches!(self, SyzygyOrder::Free)
    }

    /// Numeric order with `Free` acting as plus infinity.
    pub fn at_least(self, k: u32) -> bool {
        match self {
            SyzygyOrder::Free => true,
            SyzygyOrder::Order(o) => o >= k,
        }
    }
}

impl std::fmt::Display for SyzygyOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SyzygyOrder::Free => write!(f, "FREE"),
            SyzygyOrder::Order(k) => write!(f, "{k}"),
        }
    }
}

/// Outcome of one Ext vanishing test, with a witness cycle when nonzero.
#[derive(Debug, Clone)]
pub struct ExtReport {
    pub index: usize,
    pub vanishes: bool,
    pub witness: Option<ModuleElem>,
}

/// Auslander transpose: the cokernel of the dualized relation matrix, on
/// negated degree shifts. The input is minimized first, which pins the
/// transpose down to stable isomorphism; `Ext^i(Tr M, R)` for `i >= 1` does
/// not see the remaining free-summand ambiguity.
pub fn auslander_transpose(p: &Presentation) -> Presentation {
    let pm = minimize_presentation(p);
    transpose_of_minimal(&pm)
}

fn transpose_of_minimal(pm: &Presentation) -> Presentation {
    let rels_t = pm.rels().transpose();
    Presentation::cokernel(rels_t)
}

/// Whether `Ext^i(M, R)` vanishes for the module presented by `p`, for a
/// fixed `i >= 1`; reports one nonzero homology class when it does not.
pub fn ext_vanishing(p: &Presentation, i: usize) -> ExtReport {
    ext_vanishing_with(p, i, &CancelToken::new()).expect("no cancellation")
}

pub fn ext_vanishing_with(
    p: &Presentation,
    i: usize,
    token: &CancelToken,
) -> Result<ExtReport, Cancelled> {
    assert!(i >= 1, "Ext index must be positive");
    let res = free_resolution_with(p, i + 1, true, token)?;
    let (vanishes, witness) = ext_at(&res, i, token)?;
    Ok(ExtReport {
        index: i,
        vanishes,
        witness,
    })
}

/// Homology of the dualized resolution at spot `i`: kernel generators of
/// `d_{i+1}^T` are reduced against the image of `d_i^T`.
fn ext_at(
    res: &FreeResolution,
    i: usize,
    token: &CancelToken,
) -> Result<(bool, Option<ModuleElem>), Cancelled> {
    let len = res.length();
    if i > len {
        return Ok((true, None));
    }
    let d_i_t = res.differentials()[i - 1].transpose();
    let image_gb = groebner_with(d_i_t.columns(), d_i_t.target(), token)?;
    let cycles: Vec<ModuleElem> = if i < len {
        kernel_with(&res.differentials()[i].transpose(), token)?
    } else {
        // the dual complex ends here; every dual basis vector is a cycle
        let g_i_dual: &FreeModule = d_i_t.target();
        (0..g_i_dual.rank()).map(|k| g_i_dual.basis_elem(k)).collect()
    };
    for z in &cycles {
        let nf = normal_form(z, &image_gb);
        if !nf.is_zero() {
            return Ok((false, Some(nf)));
        }
    }
    Ok((true, None))
}

/// Exact syzygy order via the transpose criterion: `FREE` when the minimal
/// presentation has no relations, otherwise one less than the smallest
/// `i >= 1` with `Ext^i(Tr M, R)` nonzero.
pub fn syzygy_order(p: &Presentation) -> SyzygyOrder {
    syzygy_order_with(p, &CancelToken::new()).expect("no cancellation")
}

pub fn syzygy_order_with(
    p: &Presentation,
    token: &CancelToken,
) -> Result<SyzygyOrder, Cancelled> {
    let pm = minimize_presentation_with(p, token)?;
    if pm.num_gens() == 0 || pm.num_rels() == 0 {
        return Ok(SyzygyOrder::Free);
    }
    let tr = transpose_of_minimal(&pm);
    let nv = p.ring().num_vars();
    let res = free_resolution_with(&tr, nv + 1, true, token)?;
    for i in 1..=nv {
        let (vanishes, _) = ext_at(&res, i, token)?;
        if !vanishes {
            return Ok(SyzygyOrder::Order((i - 1) as u32));
        }
    }
    // a non-free module is never an r-th syzygy over r variables
    unreachable!("module with relations has no Ext obstruction up to num_vars");
}

/// Length of the minimal free resolution.
pub fn homological_dimension(p: &Presentation) -> usize {
    homological_dimension_with(p, &CancelToken::new()).expect("no cancellation")
}

pub fn homological_dimension_with(
    p: &Presentation,
    token: &CancelToken,
) -> Result<usize, Cancelled> {
    let nv = p.ring().num_vars();
    let res = free_resolution_with(p, nv + 1, true, token)?;
    debug_assert!(res.length() <= nv, "Hilbert syzygy bound violated");
    Ok(res.length())
}

/// True exactly when the minimized presentation has no relations left.
pub fn is_free(p: &Presentation) -> bool {
    minimize_presentation(p).num_rels() == 0
}
