//! Graded free modules over a polynomial ring, and the machinery built on
//! them: Groebner bases of submodules, normal forms, kernels, free
//! resolutions, minimization, exact rank, and graded dimension counts.
//!
//! A free module is a list of degree shifts, one per basis slot; an element
//! is one polynomial per slot. Maps are stored column-major: column `j` is
//! the image of the j-th source basis vector and must be homogeneous of the
//! source slot's degree, so every map here is degree-preserving.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::ring::{compare, fmt_monomial, Monomial, Polynomial, RingCtx, RingError, TermOrder};

mod groebner;
mod hilbert;
mod rank;
mod resolution;

pub use groebner::{
    groebner, groebner_with, kernel, kernel_with, minimal_generators, normal_form, GroebnerBasis,
};
pub use hilbert::{graded_dim, HilbertData, LaurentPoly};
pub use rank::generic_rank;
pub use resolution::{
    betti, free_resolution, free_resolution_with, minimize, minimize_presentation,
    verify_resolution,
};
pub(crate) use resolution::minimize_presentation_with;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("element has {got} components, ambient rank is {want}")]
    RankMismatch { got: usize, want: usize },
    #[error("column {col} is not homogeneous of the source degree {degree}")]
    NotGraded { col: usize, degree: i32 },
    #[error("map endpoints do not match")]
    EndpointMismatch,
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("cannot parse matrix: {0}")]
    Parse(String),
}

/// A graded free module: an ambient ring and one integer degree per basis
/// slot (the degree of that generator).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    ring: RingCtx,
    shifts: Vec<i32>,
}

impl FreeModule {
    pub fn new(ring: &RingCtx, shifts: Vec<i32>) -> Self {
        FreeModule {
            ring: ring.clone(),
            shifts,
        }
    }

    /// Rank `n` with all generators in degree 0.
    pub fn standard(ring: &RingCtx, rank: usize) -> Self {
        Self::new(ring, vec![0; rank])
    }

    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    pub fn shift(&self, i: usize) -> i32 {
        self.shifts[i]
    }

    /// Dual module: negated generator degrees.
    pub fn dual(&self) -> FreeModule {
        Self::new(&self.ring, self.shifts.iter().map(|s| -s).collect())
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        assert_eq!(self.ring, other.ring, "direct sum over different rings");
        let mut shifts = self.shifts.clone();
        shifts.extend_from_slice(&other.shifts);
        Self::new(&self.ring, shifts)
    }

    pub fn zero_elem(&self) -> ModuleElem {
        ModuleElem::zero(&self.ring, self.rank())
    }

    pub fn basis_elem(&self, i: usize) -> ModuleElem {
        assert!(i < self.rank());
        let mut e = self.zero_elem();
        e.components[i] = Polynomial::one(&self.ring);
        e
    }
}

/// An element of a free module: one polynomial per basis slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElem {
    components: Vec<Polynomial>,
}

impl ModuleElem {
    pub fn zero(ring: &RingCtx, rank: usize) -> Self {
        ModuleElem {
            components: vec![Polynomial::zero(ring); rank],
        }
    }

    pub fn from_components(components: Vec<Polynomial>) -> Self {
        ModuleElem { components }
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Leading (slot, monomial) under position-over-term order with the
    /// lower basis index dominant: the first nonzero slot leads.
    pub fn lead(&self) -> Option<(usize, Monomial)> {
        self.components
            .iter()
            .enumerate()
            .find_map(|(i, p)| p.leading_monomial().map(|m| (i, m)))
    }

    pub fn try_add(&self, other: &ModuleElem) -> Result<ModuleElem, ModuleError> {
        if self.rank() != other.rank() {
            return Err(ModuleError::RankMismatch {
                got: other.rank(),
                want: self.rank(),
            });
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_, _>>()?;
        Ok(ModuleElem { components })
    }

    pub fn add(&self, other: &ModuleElem) -> ModuleElem {
        self.try_add(other).expect("rank mismatch in module +")
    }

    pub fn mul_monomial(&self, m: Monomial) -> ModuleElem {
        ModuleElem {
            components: self.components.iter().map(|p| p.mul_monomial(m)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> ModuleElem {
        ModuleElem {
            components: self.components.iter().map(|c| c * p).collect(),
        }
    }

    /// Common degree of every term (term degree plus slot shift); `None` for
    /// the zero element or an inhomogeneous one.
    pub fn homogeneous_degree_in(&self, ambient: &FreeModule) -> Option<i32> {
        let mut degree: Option<i32> = None;
        for (i, p) in self.components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree()? as i32 + ambient.shift(i);
            match degree {
                None => degree = Some(d),
                Some(prev) if prev == d => {}
                Some(_) => return None,
            }
        }
        degree
    }

    pub fn is_homogeneous_in(&self, ambient: &FreeModule) -> bool {
        self.is_zero() || self.homogeneous_degree_in(ambient).is_some()
    }

    /// Embeds into a larger module, placing the components at `offset`.
    pub(crate) fn padded(&self, ring: &RingCtx, rank: usize, offset: usize) -> ModuleElem {
        let mut out = ModuleElem::zero(ring, rank);
        for (i, p) in self.components.iter().enumerate() {
            out.components[offset + i] = p.clone();
        }
        out
    }

    pub(crate) fn slice(&self, range: std::ops::Range<usize>) -> ModuleElem {
        ModuleElem {
            components: self.components[range].to_vec(),
        }
    }

    pub fn component_mut(&mut self, i: usize) -> &mut Polynomial {
        &mut self.components[i]
    }

    /// Deterministic total order used for canonical sorting of bases.
    pub(crate) fn cmp_canonical(&self, other: &ModuleElem, order: TermOrder) -> Ordering {
        for (a, b) in self.components.iter().zip(&other.components) {
            for (x, y) in a.terms().iter().zip(b.terms()) {
                match compare(*x, *y, order) {
                    Ordering::Equal => {}
                    ord => return ord.reverse(),
                }
            }
            match a.terms().len().cmp(&b.terms().len()) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

pub(crate) struct ElemDisplay<'a>(pub &'a ModuleElem, pub &'a RingCtx);

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, p) in self.0.components().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if p.is_one() {
                write!(f, "e{}", i + 1)?;
            } else if p.num_terms() == 1 {
                fmt_monomial(p.leading_monomial().unwrap(), self.1, f)?;
                write!(f, "*e{}", i + 1)?;
            } else {
                write!(f, "({})*e{}", p, i + 1)?;
            }
        }
        Ok(())
    }
}

/// A graded map between free modules, stored column-major. Column `j` is the
/// image of the j-th source basis vector and is homogeneous of degree
/// `source.shift(j)`, so the map preserves degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: FreeModule,
    target: FreeModule,
    columns: Vec<ModuleElem>,
}

impl ModuleMap {
    pub fn new(
        source: FreeModule,
        target: FreeModule,
        columns: Vec<ModuleElem>,
    ) -> Result<Self, ModuleError> {
        if source.ring != target.ring {
            return Err(ModuleError::EndpointMismatch);
        }
        if columns.len() != source.rank() {
            return Err(ModuleError::RankMismatch {
                got: columns.len(),
                want: source.rank(),
            });
        }
        for (j, col) in columns.iter().enumerate() {
            if col.rank() != target.rank() {
                return Err(ModuleError::RankMismatch {
                    got: col.rank(),
                    want: target.rank(),
                });
            }
            let want = source.shift(j);
            if !col.is_zero() && col.homogeneous_degree_in(&target) != Some(want) {
                return Err(ModuleError::NotGraded {
                    col: j,
                    degree: want,
                });
            }
        }
        Ok(ModuleMap {
            source,
            target,
            columns,
        })
    }

    /// Builds the map sending basis vector `j` to `gens[j]`, inferring the
    /// source degrees from the generators. Generators must be nonzero and
    /// homogeneous.
    pub fn from_generators(
        target: &FreeModule,
        gens: Vec<ModuleElem>,
    ) -> Result<Self, ModuleError> {
        let mut shifts = Vec::with_capacity(gens.len());
        for (j, g) in gens.iter().enumerate() {
            let d = g
                .homogeneous_degree_in(target)
                .ok_or(ModuleError::ZeroGenerator(j))?;
            shifts.push(d);
        }
        let source = FreeModule::new(&target.ring, shifts);
        ModuleMap::new(source, target.clone(), gens)
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        let columns = (0..source.rank())
            .map(|_| target.zero_elem())
            .collect();
        ModuleMap {
            source,
            target,
            columns,
        }
    }

    pub fn identity(fm: &FreeModule) -> Self {
        let columns = (0..fm.rank()).map(|i| fm.basis_elem(i)).collect();
        ModuleMap {
            source: fm.clone(),
            target: fm.clone(),
            columns,
        }
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn ring(&self) -> &RingCtx {
        &self.source.ring
    }

    pub fn columns(&self) -> &[ModuleElem] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &ModuleElem {
        &self.columns[j]
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        self.columns[col].component(row)
    }

    pub fn num_rows(&self) -> usize {
        self.target.rank()
    }

    pub fn num_cols(&self) -> usize {
        self.source.rank()
    }

    pub fn is_zero_map(&self) -> bool {
        self.columns.iter().all(ModuleElem::is_zero)
    }

    pub fn has_constant_entry(&self) -> bool {
        self.columns
            .iter()
            .any(|c| c.components().iter().any(Polynomial::is_one))
    }

    pub fn apply(&self, v: &ModuleElem) -> ModuleElem {
        assert_eq!(v.rank(), self.num_cols(), "rank mismatch in apply");
        let mut out = self.target.zero_elem();
        for (j, p) in v.components().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            out = out.add(&self.columns[j].mul_poly(p));
        }
        out
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(
            self.source, other.target,
            "composition endpoints do not match"
        );
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            columns,
        }
    }

    /// The dual map: entries transposed, shifts negated.
    pub fn transpose(&self) -> ModuleMap {
        let source = self.target.dual();
        let target = self.source.dual();
        let columns = (0..source.rank())
            .map(|a| {
                ModuleElem::from_components(
                    (0..target.rank()).map(|b| self.entry(a, b).clone()).collect(),
                )
            })
            .collect();
        ModuleMap {
            source,
            target,
            columns,
        }
    }

    /// Block-diagonal sum of two maps.
    pub fn direct_sum(&self, other: &ModuleMap) -> ModuleMap {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let ring = &self.source.ring;
        let mut columns = Vec::with_capacity(source.rank());
        for c in &self.columns {
            columns.push(c.padded(ring, target.rank(), 0));
        }
        for c in &other.columns {
            columns.push(c.padded(ring, target.rank(), self.target.rank()));
        }
        ModuleMap {
            source,
            target,
            columns,
        }
    }

    /// Canonical text rows: row-major, entries in polynomial text form,
    /// separated by `, `.
    pub fn to_text_rows(&self) -> Vec<String> {
        (0..self.num_rows())
            .map(|i| {
                (0..self.num_cols())
                    .map(|j| self.entry(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect()
    }

    /// Parses what [`Self::to_text_rows`] produced, given the two endpoint
    /// modules.
    pub fn parse_text_rows(
        source: FreeModule,
        target: FreeModule,
        rows: &[String],
    ) -> Result<Self, ModuleError> {
        if rows.len() != target.rank() {
            return Err(ModuleError::Parse(format!(
                "expected {} rows, got {}",
                target.rank(),
                rows.len()
            )));
        }
        let ring = &source.ring;
        let mut entries: Vec<Vec<Polynomial>> = Vec::with_capacity(rows.len());
        for row in rows {
            let cells: Vec<&str> = if row.trim().is_empty() {
                Vec::new()
            } else {
                row.split(',').collect()
            };
            if cells.len() != source.rank() {
                return Err(ModuleError::Parse(format!(
                    "expected {} entries per row, got {}",
                    source.rank(),
                    cells.len()
                )));
            }
            let parsed = cells
                .iter()
                .map(|c| Polynomial::parse(ring, c))
                .collect::<Result<Vec<_>, _>>()?;
            entries.push(parsed);
        }
        let columns = (0..source.rank())
            .map(|j| {
                ModuleElem::from_components(
                    (0..target.rank()).map(|i| entries[i][j].clone()).collect(),
                )
            })
            .collect();
        ModuleMap::new(source, target, columns)
    }
}

/// A finitely presented graded module: generator degrees plus a relation
/// map into the generators. The module presented is the cokernel of `rels`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    gens: FreeModule,
    rels: ModuleMap,
}

impl Presentation {
    pub fn new(gens: FreeModule, rels: ModuleMap) -> Result<Self, ModuleError> {
        if rels.target != gens {
            return Err(ModuleError::EndpointMismatch);
        }
        Ok(Presentation { gens, rels })
    }

    /// The free module itself: no relations.
    pub fn free(gens: FreeModule) -> Self {
        let ring = gens.ring.clone();
        let rels = ModuleMap::zero(FreeModule::new(&ring, vec![]), gens.clone());
        Presentation { gens, rels }
    }

    pub fn zero_module(ring: &RingCtx) -> Self {
        Self::free(FreeModule::new(ring, vec![]))
    }

    /// Cokernel of a map, presented on the target's basis.
    pub fn cokernel(map: ModuleMap) -> Self {
        Presentation {
            gens: map.target.clone(),
            rels: map,
        }
    }

    /// Builds a presentation from homogeneous relation elements.
    pub fn from_relations(
        gens: FreeModule,
        rels: Vec<ModuleElem>,
    ) -> Result<Self, ModuleError> {
        let nonzero: Vec<ModuleElem> = rels.into_iter().filter(|r| !r.is_zero()).collect();
        let map = ModuleMap::from_generators(&gens, nonzero)?;
        Ok(Presentation { gens, rels: map })
    }

    pub fn gens(&self) -> &FreeModule {
        &self.gens
    }

    pub fn rels(&self) -> &ModuleMap {
        &self.rels
    }

    pub fn ring(&self) -> &RingCtx {
        &self.gens.ring
    }

    pub fn num_gens(&self) -> usize {
        self.gens.rank()
    }

    pub fn num_rels(&self) -> usize {
        self.rels.num_cols()
    }

    /// No relation has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        !self.rels.has_constant_entry()
    }

    pub fn direct_sum(&self, other: &Presentation) -> Presentation {
        Presentation {
            gens: self.gens.direct_sum(&other.gens),
            rels: self.rels.direct_sum(&other.rels),
        }
    }
}

/// A chain of free modules `F_0 <- F_1 <- ... <- F_L` with composable
/// differentials; `differentials[i]` maps `modules[i+1]` into `modules[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeResolution {
    modules: Vec<FreeModule>,
    differentials: Vec<ModuleMap>,
}

impl FreeResolution {
    pub(crate) fn from_parts(
        modules: Vec<FreeModule>,
        differentials: Vec<ModuleMap>,
    ) -> Self {
        debug_assert_eq!(modules.len(), differentials.len() + 1);
        for (i, d) in differentials.iter().enumerate() {
            debug_assert_eq!(d.target, modules[i]);
            debug_assert_eq!(d.source, modules[i + 1]);
        }
        FreeResolution {
            modules,
            differentials,
        }
    }

    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn differentials(&self) -> &[ModuleMap] {
        &self.differentials
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(FreeModule::rank).collect()
    }

    /// The presentation formed by the first differential (the whole chain
    /// resolves its cokernel).
    pub fn presentation(&self) -> Presentation {
        match self.differentials.first() {
            Some(d1) => Presentation::cokernel(d1.clone()),
            None => Presentation::free(self.modules[0].clone()),
        }
    }

    pub fn composites_are_zero(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].compose(&w[1]).is_zero_map())
    }
}
