//! Koszul complexes over `F2[t1, ..., tr]` as reference objects.
//!
//! The exterior-power bases are indexed by subsets in the crate-wide
//! (cardinality, colex) order, and over F2 the boundary maps carry no signs:
//! the differential sends `e_S` to the sum of `t_j e_{S minus j}`. The image
//! of the j-th differential is a j-th syzygy of homological dimension
//! `r - j`, which is what makes these complexes the ground truth for the
//! syzygy engine.

use thiserror::Error;

use crate::module::{kernel, FreeModule, ModuleMap, Presentation};
use crate::ring::{Polynomial, RingCtx};
use crate::subset::{subsets_of_size, SubsetIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum KoszulError {
    #[error("exterior degree {k} out of range for {r} variables")]
    DegreeOutOfRange { r: usize, k: usize },
    #[error("{r} variables exceed the ring width")]
    TooManyVars { r: usize },
}

/// Validated pair (number of variables, exterior degree).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KoszulSpec {
    pub r: usize,
    pub k: usize,
}

impl KoszulSpec {
    pub fn new(r: usize, k: usize) -> Result<Self, KoszulError> {
        if r == 0 || r > crate::ring::MAX_VARS {
            return Err(KoszulError::TooManyVars { r });
        }
        if k > r {
            return Err(KoszulError::DegreeOutOfRange { r, k });
        }
        Ok(KoszulSpec { r, k })
    }
}

/// The k-th exterior power as a free module: one slot per k-subset, each
/// generator in degree k.
pub fn exterior_power(ring: &RingCtx, r: usize, k: usize) -> FreeModule {
    let rank = subsets_of_size(r, k).len();
    FreeModule::new(ring, vec![k as i32; rank])
}

/// The boundary map `Lambda^k -> Lambda^{k-1}`; the entry at
/// `(S minus j, S)` is `t_j`, everything else zero.
pub fn koszul_differential(r: usize, k: usize) -> Result<ModuleMap, KoszulError> {
    let spec = KoszulSpec::new(r, k)?;
    if spec.k == 0 {
        return Err(KoszulError::DegreeOutOfRange { r, k });
    }
    let ring = RingCtx::standard(r);
    let source_sets = subsets_of_size(r, k);
    let target_sets = subsets_of_size(r, k - 1);
    let index_of = |s: SubsetIndex| -> usize {
        target_sets
            .iter()
            .position(|&t| t == s)
            .expect("face of a k-subset is a (k-1)-subset")
    };
    let source = exterior_power(&ring, r, k);
    let target = exterior_power(&ring, r, k - 1);
    let columns = source_sets
        .iter()
        .map(|&s| {
            let mut col = target.zero_elem();
            for j in s.iter() {
                let face = s.without(j);
                *col.component_mut(index_of(face)) = Polynomial::var(&ring, j - 1);
            }
            col
        })
        .collect();
    Ok(ModuleMap::new(source, target, columns).expect("koszul columns are graded"))
}

/// Presentation of `K_j`, the image of the j-th differential: generators are
/// the columns of the differential, relations its kernel.
pub fn koszul_image_presentation(r: usize, j: usize) -> Result<Presentation, KoszulError> {
    let delta = koszul_differential(r, j)?;
    let gens = delta.source().clone();
    let syz = kernel(&delta);
    let rels = if syz.is_empty() {
        ModuleMap::zero(FreeModule::new(gens.ring(), vec![]), gens.clone())
    } else {
        ModuleMap::from_generators(&gens, syz).expect("syzygies are homogeneous")
    };
    Ok(Presentation::new(gens, rels).expect("matching endpoints"))
}

/// Presentations of the kernel and cokernel of
/// `delta: Lambda^{k+1} -> Lambda^k`.
pub fn koszul_ker_coker(r: usize, k: usize) -> Result<(Presentation, Presentation), KoszulError> {
    let delta = koszul_differential(r, k + 1)?;
    let coker = Presentation::cokernel(delta.clone());
    let ker_gens = kernel(&delta);
    let ker = if ker_gens.is_empty() {
        Presentation::zero_module(delta.ring())
    } else {
        let gens_map =
            ModuleMap::from_generators(delta.source(), ker_gens).expect("homogeneous kernel");
        let gens = gens_map.source().clone();
        let second = kernel(&gens_map);
        let rels = if second.is_empty() {
            ModuleMap::zero(FreeModule::new(gens.ring(), vec![]), gens.clone())
        } else {
            ModuleMap::from_generators(&gens, second).expect("homogeneous syzygies")
        };
        Presentation::new(gens, rels).expect("matching endpoints")
    };
    Ok((ker, coker))
}
