//! The big chain space domain layer.
//!
//! A big chain space is the level set at height `c` of the last of `m`
//! generic hyperplane cuts through a product of `r` spheres `S^{m+n-1}`,
//! carrying the coordinatewise action of the rank-r 2-torus. Everything its
//! equivariant cohomology does as a module over `R = F2[t1, ..., tr]` is
//! governed by the subset calculus of the length vector: a subset `J` of
//! `{1, ..., r}` weighs `l(J) = sum_{j in J} l_j - sum_{j not in J} l_j`,
//! and the halves `L_c = {l(J) > c}` and `S_c = {l(I) < -c}` index the two
//! free modules connected by the monomial matrix iota built here. Its kernel
//! and cokernel, summed, present the cohomology module whose exact syzygy
//! order the engine then decides.
//!
//! Length data are exact rationals throughout; every sign decision
//! (genericity, long versus short, chamber membership) is exact.

mod report;

pub use report::{
    render_matrix_block, sweep, CohomologyParts, ReportJson, SweepRow, SyzygyReport,
};

use std::collections::HashMap;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::module::{FreeModule, ModuleElem, ModuleMap, Presentation};
use crate::ring::{Monomial, Polynomial, RingCtx, MAX_VARS};
use crate::subset::{all_subsets, SubsetIndex};

/// Caps keeping monomial exponents inside the packed representation.
pub const MAX_RANK: usize = MAX_VARS - 1;
pub const MAX_SPHERE_PARAM: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenericityClash {
    /// `l(J) = 0`
    Zero,
    /// `l(J) = c`
    PlusC,
    /// `l(J) = -c`
    MinusC,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainSpaceError {
    #[error("length vector must have between 1 and {MAX_RANK} positive entries")]
    BadLengthVector,
    #[error("length entry {0} is not positive")]
    NonPositiveLength(String),
    #[error("m must satisfy 2 <= m <= {MAX_SPHERE_PARAM}, got {0}")]
    BadM(u32),
    #[error("n must satisfy 1 <= n <= {MAX_SPHERE_PARAM}, got {0}")]
    BadN(u32),
    #[error("c must be non-negative, got {0}")]
    NegativeC(String),
    #[error("non-generic input: {}", format_clash(.subset, .value, .clash))]
    NonGeneric {
        subset: SubsetIndex,
        value: Rational64,
        clash: GenericityClash,
    },
    #[error("level {i} out of range {lo}..={hi}")]
    LevelOutOfRange { i: u32, lo: u32, hi: u32 },
    #[error("subset weight l({0}) = 0 has no sign")]
    ZeroWeight(SubsetIndex),
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
}

fn format_clash(subset: &SubsetIndex, value: &Rational64, clash: &GenericityClash) -> String {
    match clash {
        GenericityClash::Zero => format!("l({subset}) = 0"),
        GenericityClash::PlusC => format!("l({subset}) = {value} = c"),
        GenericityClash::MinusC => format!("l({subset}) = {value} = -c"),
    }
}

/// Parses `p/q` or `p` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational64, ChainSpaceError> {
    let s = s.trim();
    let bad = || ChainSpaceError::ParseRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p, q))
        }
        None => {
            let p: i64 = s.parse().map_err(|_| bad())?;
            Ok(Rational64::from_integer(p))
        }
    }
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &Rational64) -> String {
    if x.denom() == &1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A vector of strictly positive exact rational lengths, one per sphere
/// factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthVector {
    entries: Vec<Rational64>,
}

impl LengthVector {
    pub fn new(entries: Vec<Rational64>) -> Result<Self, ChainSpaceError> {
        if entries.is_empty() || entries.len() > MAX_RANK {
            return Err(ChainSpaceError::BadLengthVector);
        }
        for e in &entries {
            if !e.is_positive() {
                return Err(ChainSpaceError::NonPositiveLength(format_rational(e)));
            }
        }
        Ok(LengthVector { entries })
    }

    /// Parses a comma-separated list like `1,1,1` or `1/2,3,5/4`.
    pub fn parse(s: &str) -> Result<Self, ChainSpaceError> {
        let entries = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(entries)
    }

    pub fn from_integers(entries: &[i64]) -> Result<Self, ChainSpaceError> {
        Self::new(entries.iter().map(|&e| Rational64::from_integer(e)).collect())
    }

    pub fn entries(&self) -> &[Rational64] {
        &self.entries
    }

    pub fn r(&self) -> usize {
        self.entries.len()
    }

    pub fn max_entry(&self) -> Rational64 {
        *self.entries.iter().max().expect("nonempty by construction")
    }

    pub fn total(&self) -> Rational64 {
        self.entries.iter().sum()
    }
}

/// Signed subset weight `l(J) = sum_{j in J} l_j - sum_{j not in J} l_j`.
pub fn subset_weight(ell: &LengthVector, j: SubsetIndex) -> Rational64 {
    let mut acc = Rational64::zero();
    for (idx, l) in ell.entries.iter().enumerate() {
        if j.contains(idx + 1) {
            acc += l;
        } else {
            acc -= l;
        }
    }
    acc
}

/// First subset (in canonical order) witnessing `l(J) = 0`, `l(J) = c`, or
/// `l(J) = -c`, if any.
pub fn genericity_violation(
    ell: &LengthVector,
    c: Rational64,
) -> Option<(SubsetIndex, Rational64, GenericityClash)> {
    for j in all_subsets(ell.r()) {
        let w = subset_weight(ell, j);
        if w.is_zero() {
            return Some((j, w, GenericityClash::Zero));
        }
        if w == c {
            return Some((j, w, GenericityClash::PlusC));
        }
        if w == -c {
            return Some((j, w, GenericityClash::MinusC));
        }
    }
    None
}

/// Extended genericity: `l(J)` never equals `c` or `-c`. At `c = 0` this is
/// ordinary genericity of the length vector.
pub fn is_generic(ell: &LengthVector, c: Rational64) -> bool {
    all_subsets(ell.r()).into_iter().all(|j| {
        let w = subset_weight(ell, j);
        w != c && w != -c
    })
}

/// Long and short subsets at threshold `c`:
/// `L_c = {J : l(J) > c}` and `S_c = {I : l(I) < -c}`, each in canonical
/// (cardinality, colex) order.
pub fn long_short_sets(
    ell: &LengthVector,
    c: Rational64,
) -> Result<(Vec<SubsetIndex>, Vec<SubsetIndex>), ChainSpaceError> {
    if !is_generic(ell, c) {
        let (subset, value, clash) = genericity_violation(ell, c).expect("violation exists");
        return Err(ChainSpaceError::NonGeneric {
            subset,
            value,
            clash,
        });
    }
    let mut long = Vec::new();
    let mut short = Vec::new();
    for j in all_subsets(ell.r()) {
        let w = subset_weight(ell, j);
        if w > c {
            long.push(j);
        } else if w < -c {
            short.push(j);
        }
    }
    Ok((long, short))
}

/// Sorted distinct subset weights, and the least positive one (`cr_min`).
/// The full set is always long, so a positive weight exists.
pub fn critical_values(ell: &LengthVector) -> (Vec<Rational64>, Rational64) {
    let mut values: Vec<Rational64> = all_subsets(ell.r())
        .into_iter()
        .map(|j| subset_weight(ell, j))
        .collect();
    values.sort();
    values.dedup();
    let cr_min = *values
        .iter()
        .find(|v| v.is_positive())
        .expect("the full subset has positive weight");
    (values, cr_min)
}

/// The divided-power level of a basis slot: `i` on long subsets, `0` on
/// short ones. Undefined when the weight vanishes.
pub fn mu(i: u32, j: SubsetIndex, ell: &LengthVector) -> Result<u32, ChainSpaceError> {
    let w = subset_weight(ell, j);
    if w.is_zero() {
        return Err(ChainSpaceError::ZeroWeight(j));
    }
    Ok(if w.is_positive() { i } else { 0 })
}

/// One open interval of regular thresholds between consecutive positive
/// critical values, with a generic representative (the midpoint; the last,
/// unbounded chamber uses `cr_max + 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub lo: Rational64,
    pub hi: Option<Rational64>,
    pub representative: Rational64,
}

/// Chambers of the threshold half-line `c >= 0` cut by the positive critical
/// values; verdicts are constant on each chamber.
pub fn chambers(ell: &LengthVector) -> Vec<Chamber> {
    let (values, _) = critical_values(ell);
    let positive: Vec<Rational64> = values.into_iter().filter(|v| v.is_positive()).collect();
    let mut out = Vec::with_capacity(positive.len() + 1);
    let mut lo = Rational64::zero();
    for &hi in &positive {
        out.push(Chamber {
            lo,
            hi: Some(hi),
            representative: (lo + hi) / 2,
        });
        lo = hi;
    }
    out.push(Chamber {
        lo,
        hi: None,
        representative: lo + 1,
    });
    out
}

/// Validated parameters of one big chain space: sphere dimensions via
/// `(m, n)`, the length vector, and the threshold `c >= 0`.
///
/// Construction checks genericity of both the length vector and its
/// extension by `c` (every subset weight misses `0`, `c`, and `-c`), which
/// is what the closed-form presentations require. `n >= 1` keeps the
/// connecting matrix free of unit entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpaceParams {
    m: u32,
    n: u32,
    ell: LengthVector,
    c: Rational64,
}

impl ChainSpaceParams {
    pub fn new(
        m: u32,
        n: u32,
        ell: LengthVector,
        c: Rational64,
    ) -> Result<Self, ChainSpaceError> {
        if !(2..=MAX_SPHERE_PARAM).contains(&m) {
            return Err(ChainSpaceError::BadM(m));
        }
        if !(1..=MAX_SPHERE_PARAM).contains(&n) {
            return Err(ChainSpaceError::BadN(n));
        }
        if c.is_negative() {
            return Err(ChainSpaceError::NegativeC(format_rational(&c)));
        }
        if let Some((subset, value, clash)) = genericity_violation(&ell, c) {
            return Err(ChainSpaceError::NonGeneric {
                subset,
                value,
                clash,
            });
        }
        Ok(ChainSpaceParams { m, n, ell, c })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ell(&self) -> &LengthVector {
        &self.ell
    }

    pub fn c(&self) -> Rational64 {
        self.c
    }

    pub fn r(&self) -> usize {
        self.ell.r()
    }

    /// `R = F2[t1, ..., tr]`.
    pub fn ring(&self) -> RingCtx {
        RingCtx::standard(self.r())
    }

    /// `R~ = F2[t, t1, ..., tr]` with the extra degree-one class `t` first.
    pub fn ring_ext(&self) -> RingCtx {
        RingCtx::extended(self.r())
    }

    pub fn subset_weight(&self, j: SubsetIndex) -> Rational64 {
        subset_weight(&self.ell, j)
    }

    fn is_long(&self, j: SubsetIndex) -> bool {
        self.subset_weight(j).is_positive()
    }

    /// Degree of one generator of the ambient sphere-product cohomology.
    pub fn class_degree(&self) -> i32 {
        (self.m + self.n - 1) as i32
    }

    /// The free basis of the level-i cohomology: one slot `s_J / t^{mu_i(J)}`
    /// per subset, of degree `|J| (m+n-1) - mu_i(J)`, for `0 <= i <= m-1`.
    pub fn level_basis(&self, i: u32) -> Result<Vec<(SubsetIndex, i32)>, ChainSpaceError> {
        if i > self.m - 1 {
            return Err(ChainSpaceError::LevelOutOfRange {
                i,
                lo: 0,
                hi: self.m - 1,
            });
        }
        let d = self.class_degree();
        Ok(all_subsets(self.r())
            .into_iter()
            .map(|j| {
                let mu_ij = if self.is_long(j) { i } else { 0 };
                (j, j.cardinality() as i32 * d - mu_ij as i32)
            })
            .collect())
    }

    fn level_module(&self, i: u32) -> (Vec<SubsetIndex>, FreeModule) {
        let basis = self.level_basis(i).expect("level validated by caller");
        let ring = self.ring_ext();
        let (labels, shifts): (Vec<_>, Vec<_>) = basis.into_iter().unzip();
        (labels, FreeModule::new(&ring, shifts))
    }

    /// Expansion of `sbar_J / t^{tdiv}` in the level-`level` basis: the slot
    /// `s_I / t^{mu_level(I)}` for `I` inside `J` receives the coefficient
    /// `t^{(m-1)|J \ I| + mu_level(I) - tdiv} * prod_{j in J \ I} t_j^n`.
    fn sbar_column(
        &self,
        index_of: &HashMap<SubsetIndex, usize>,
        ambient: &FreeModule,
        level: u32,
        tdiv: u32,
        j: SubsetIndex,
    ) -> ModuleElem {
        let ring = ambient.ring().clone();
        let mut col = ambient.zero_elem();
        for i in j.subsets() {
            let diff_card = j.cardinality() - i.cardinality();
            let mu_i = if self.is_long(i) { level } else { 0 };
            let t_exp = (self.m - 1) * diff_card + mu_i;
            assert!(t_exp >= tdiv, "division bookkeeping left the ring");
            let mut mono = Monomial::var_pow(0, t_exp - tdiv);
            for v in j.iter() {
                if !i.contains(v) {
                    mono = mono
                        .checked_mul(Monomial::var_pow(v, self.n))
                        .expect("exponents bounded by construction");
                }
            }
            let slot = index_of[&i];
            let updated = col
                .component(slot)
                .try_add(&Polynomial::from_monomial(&ring, mono))
                .expect("same ring");
            *col.component_mut(slot) = updated;
        }
        col
    }

    /// Presentation of the level-i cut: the level-(i-1) basis modulo, for
    /// every long `J`, the slot `s_J / t^{i-1}` itself and the expansion of
    /// `sbar_J / t^{i-1}`. Valid for `1 <= i <= m`.
    pub fn cut_presentation(&self, i: u32) -> Result<Presentation, ChainSpaceError> {
        if !(1..=self.m).contains(&i) {
            return Err(ChainSpaceError::LevelOutOfRange {
                i,
                lo: 1,
                hi: self.m,
            });
        }
        let (labels, gens) = self.level_module(i - 1);
        let index_of: HashMap<SubsetIndex, usize> =
            labels.iter().copied().enumerate().map(|(k, s)| (s, k)).collect();
        let mut rels = Vec::new();
        for (slot, &j) in labels.iter().enumerate() {
            if !self.is_long(j) {
                continue;
            }
            rels.push(gens.basis_elem(slot));
            rels.push(self.sbar_column(&index_of, &gens, i - 1, i - 1, j));
        }
        Ok(Presentation::from_relations(gens, rels).expect("relations are homogeneous"))
    }

    /// Presentation of the level-set cohomology over the extended ring: the
    /// level-(m-1) basis modulo every slot with `l(I) > -c` and the
    /// expansions of `sbar_J / t^{m-1}` for `l(J) > c`.
    pub fn level_set_presentation(&self) -> Presentation {
        let (labels, gens) = self.level_module(self.m - 1);
        let index_of: HashMap<SubsetIndex, usize> =
            labels.iter().copied().enumerate().map(|(k, s)| (s, k)).collect();
        let mut rels = Vec::new();
        for (slot, &subset) in labels.iter().enumerate() {
            if self.subset_weight(subset) > -self.c {
                rels.push(gens.basis_elem(slot));
            }
        }
        for &subset in &labels {
            if self.subset_weight(subset) > self.c {
                rels.push(self.sbar_column(&index_of, &gens, self.m - 1, self.m - 1, subset));
            }
        }
        Presentation::from_relations(gens, rels).expect("relations are homogeneous")
    }

    /// Kills the class `t`: one extra relation `t e_K` per generator, so the
    /// cokernel is the module with `R`-coefficients (still presented over
    /// the extended ring).
    pub fn kill_t(pres: &Presentation) -> Presentation {
        let gens = pres.gens().clone();
        let t = Polynomial::var(gens.ring(), 0);
        let mut rels: Vec<ModuleElem> = pres.rels().columns().to_vec();
        for k in 0..gens.rank() {
            rels.push(gens.basis_elem(k).mul_poly(&t));
        }
        Presentation::from_relations(gens, rels).expect("t-multiples are homogeneous")
    }

    /// The connecting matrix between the long and the short half.
    pub fn iota(&self) -> IotaMatrix {
        let ring = self.ring();
        let (long, short) = long_short_sets(&self.ell, self.c).expect("params are generic");
        let d = self.class_degree();
        let row_of: HashMap<SubsetIndex, usize> =
            short.iter().copied().enumerate().map(|(k, s)| (s, k)).collect();
        let target = FreeModule::new(
            &ring,
            short.iter().map(|s| s.cardinality() as i32 * d).collect(),
        );
        let source = FreeModule::new(
            &ring,
            long.iter()
                .map(|s| s.cardinality() as i32 * d - (self.m as i32 - 1))
                .collect(),
        );
        let columns = long
            .iter()
            .map(|&j| {
                let mut col = target.zero_elem();
                for v in j.iter() {
                    let face = j.without(v);
                    if let Some(&row) = row_of.get(&face) {
                        *col.component_mut(row) =
                            Polynomial::from_monomial(&ring, Monomial::var_pow(v - 1, self.n));
                    }
                }
                col
            })
            .collect();
        let matrix = ModuleMap::new(source, target, columns).expect("iota columns are graded");
        debug_assert_eq!(long.len(), short.len(), "complement bijection");
        IotaMatrix {
            rows: short,
            cols: long,
            matrix,
        }
    }

    /// Appends one asymptotically small positive length: half the least
    /// distance from the set `{l(J) - c, l(J) + c}` to zero. The long/short
    /// family of the result is the original family with the new index
    /// optional everywhere, so all verdicts are preserved while the torus
    /// rank grows by one.
    pub fn extend_by_zero(&self) -> Result<ChainSpaceParams, ChainSpaceError> {
        let gap = self.extension_gap();
        let epsilon = gap / 2;
        let mut entries = self.ell.entries.clone();
        entries.push(epsilon);
        let ell = LengthVector::new(entries)?;
        ChainSpaceParams::new(self.m, self.n, ell, self.c)
    }

    /// Least distance of the weights from the three walls: the values
    /// `|l(J) - c|`, `|l(J) + c|`, and `|l(J)|` over all subsets. Halving it
    /// keeps every sign decision of the extended vector intact, including
    /// plain genericity.
    pub fn extension_gap(&self) -> Rational64 {
        all_subsets(self.r())
            .into_iter()
            .flat_map(|j| {
                let w = self.subset_weight(j);
                [(w - self.c).abs(), (w + self.c).abs(), w.abs()]
            })
            .min()
            .expect("at least one subset")
    }

    /// Predicted maximal syzygy order: `Some(k)` exactly when the long-set
    /// family matches the maximal model for this rank (all subsets of more
    /// than half the indices for odd `r = 2k+1`; for even `r = 2k+2` the
    /// same pattern ignoring one distinguished index, in any position).
    pub fn classify_maximal(&self) -> Option<u32> {
        let r = self.r();
        let (long, _) = long_short_sets(&self.ell, self.c).expect("params are generic");
        let family: std::collections::BTreeSet<u32> = long.iter().map(|s| s.mask()).collect();
        if r % 2 == 1 {
            let k = (r as u32 - 1) / 2;
            let model: std::collections::BTreeSet<u32> = all_subsets(r)
                .into_iter()
                .filter(|j| j.cardinality() > k)
                .map(|j| j.mask())
                .collect();
            (family == model).then_some(k)
        } else {
            let k = (r as u32 - 2) / 2;
            for p in 1..=r {
                let model: std::collections::BTreeSet<u32> = all_subsets(r)
                    .into_iter()
                    .filter(|j| j.without(p).cardinality() > k)
                    .map(|j| j.mask())
                    .collect();
                if family == model {
                    return Some(k);
                }
            }
            None
        }
    }
}

/// The connecting matrix of one parameter point: rows indexed by the short
/// half, columns by the long half, both in canonical subset order. The
/// entry at `(J \ j, J)` is `t_j^n` whenever the face is short; everything
/// else vanishes. Row `s_I` sits in degree `|I|(m+n-1)`, column
/// `sbar_J / t^{m-1}` in degree `|J|(m+n-1) - (m-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IotaMatrix {
    pub rows: Vec<SubsetIndex>,
    pub cols: Vec<SubsetIndex>,
    pub matrix: ModuleMap,
}

impl IotaMatrix {
    pub fn size(&self) -> usize {
        self.cols.len()
    }
}

/// The ambient equivariant cohomology of the sphere product, recorded
/// symbolically: generators `s_1, ..., s_r` of degree `m+n-1` over the
/// extended ring, with the defining relations `s_j * sbar_j` where
/// `sbar_j = s_j + t^{m-1} t_j^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientPresentation {
    pub r: usize,
    pub m: u32,
    pub n: u32,
    /// Degree of each generator `s_j`.
    pub gen_degree: i32,
    /// For each `j`, the relation `s_j^2 + t^{m-1} t_j^n s_j` as pairs of an
    /// `s`-exponent vector and a coefficient in the extended ring.
    pub relations: Vec<AmbientRelation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientRelation {
    pub j: usize,
    pub terms: Vec<(Vec<u32>, Polynomial)>,
}

impl std::fmt::Display for AmbientRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (exps, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if !coeff.is_one() {
                write!(f, "{coeff}*")?;
            }
            let mut wrote = false;
            for (idx, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                wrote = true;
                if e == 1 {
                    write!(f, "s{}", idx + 1)?;
                } else {
                    write!(f, "s{}^{}", idx + 1, e)?;
                }
            }
            if !wrote && coeff.is_one() {
                write!(f, "1")?;
            }
        }
        Ok(())
    }
}

/// Symbolic record of the ambient presentation; the generators and relation
/// shapes feed documentation and the product-expansion oracle used in tests.
pub fn ambient_presentation(params: &ChainSpaceParams) -> AmbientPresentation {
    let ring = params.ring_ext();
    let r = params.r();
    let relations = (1..=r)
        .map(|j| {
            let mut sq = vec![0u32; r];
            sq[j - 1] = 2;
            let mut lin = vec![0u32; r];
            lin[j - 1] = 1;
            let coeff = Polynomial::from_monomial(
                &ring,
                Monomial::var_pow(0, params.m - 1)
                    .checked_mul(Monomial::var_pow(j, params.n))
                    .expect("bounded exponents"),
            );
            AmbientRelation {
                j,
                terms: vec![(sq, Polynomial::one(&ring)), (lin, coeff)],
            }
        })
        .collect();
    AmbientPresentation {
        r,
        m: params.m,
        n: params.n,
        gen_degree: params.class_degree(),
        relations,
    }
}

/// Image of the generator `s_j` under restriction to the fixed point labeled
/// by `J`: the monomial `t^{m-1} t_j^n` when `j` lies in `J`, zero
/// otherwise.
pub fn restrict_to_fixed_point(
    params: &ChainSpaceParams,
    point: SubsetIndex,
    j: usize,
) -> Polynomial {
    let ring = params.ring_ext();
    assert!(j >= 1 && j <= params.r(), "generator index out of range");
    if point.contains(j) {
        Polynomial::from_monomial(
            &ring,
            Monomial::var_pow(0, params.m - 1)
                .checked_mul(Monomial::var_pow(j, params.n))
                .expect("bounded exponents"),
        )
    } else {
        Polynomial::zero(&ring)
    }
}

/// Expands the product `prod_{j in J} (s_j + t^{m-1} t_j^n)` over the
/// extended ring by literal term-by-term multiplication, as coefficients on
/// the squarefree `s_I` slots. This is the independent oracle against which
/// the closed-form columns are checked.
pub fn expand_sbar_product(
    params: &ChainSpaceParams,
    j: SubsetIndex,
) -> Vec<(SubsetIndex, Polynomial)> {
    let ring = params.ring_ext();
    let mut acc: HashMap<SubsetIndex, Polynomial> = HashMap::new();
    acc.insert(SubsetIndex::EMPTY, Polynomial::one(&ring));
    for v in j.iter() {
        let weight = Polynomial::from_monomial(
            &ring,
            Monomial::var_pow(0, params.m - 1)
                .checked_mul(Monomial::var_pow(v, params.n))
                .expect("bounded exponents"),
        );
        let mut next: HashMap<SubsetIndex, Polynomial> = HashMap::new();
        for (slot, coeff) in &acc {
            // multiply by s_v
            let with_s = slot.with(v);
            let entry = next.entry(with_s).or_insert_with(|| Polynomial::zero(&ring));
            *entry = entry.try_add(coeff).expect("same ring");
            // multiply by t^{m-1} t_v^n
            let scaled = coeff.try_mul(&weight).expect("same ring");
            let entry = next.entry(*slot).or_insert_with(|| Polynomial::zero(&ring));
            *entry = entry.try_add(&scaled).expect("same ring");
        }
        acc = next;
    }
    let mut out: Vec<(SubsetIndex, Polynomial)> = acc
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .collect();
    out.sort_by_key(|(s, _)| s.card_colex_key());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::graded_dim;

    fn rat(s: &str) -> Rational64 {
        parse_rational(s).unwrap()
    }

    fn ell(entries: &[i64]) -> LengthVector {
        LengthVector::from_integers(entries).unwrap()
    }

    fn params(m: u32, n: u32, lengths: &[&str], c: &str) -> ChainSpaceParams {
        let entries = lengths.iter().map(|s| rat(s)).collect();
        ChainSpaceParams::new(m, n, LengthVector::new(entries).unwrap(), rat(c)).unwrap()
    }

    #[test]
    fn subset_weights() {
        let l = ell(&[1, 1, 1]);
        assert_eq!(subset_weight(&l, SubsetIndex::from_elems(&[1, 2])), rat("1"));
        let l2 = ell(&[2, 2, 2, 3]);
        assert_eq!(subset_weight(&l2, SubsetIndex::from_elems(&[1, 4])), rat("1"));
        assert_eq!(subset_weight(&l2, SubsetIndex::full(4)), rat("9"));
        assert_eq!(subset_weight(&l2, SubsetIndex::EMPTY), rat("-9"));
    }

    #[test]
    fn genericity_checks() {
        assert!(!is_generic(&ell(&[1, 1]), rat("0")));
        assert!(is_generic(&ell(&[1, 2]), rat("0")));
        assert!(!is_generic(&ell(&[1, 1, 1]), rat("1")));
        assert!(is_generic(&ell(&[1, 1, 1]), rat("1/2")));
    }

    #[test]
    fn genericity_violation_names_first_subset() {
        let (subset, _, clash) = genericity_violation(&ell(&[1, 1]), rat("0")).unwrap();
        assert_eq!(subset, SubsetIndex::from_elems(&[1]));
        assert_eq!(clash, GenericityClash::Zero);
        let err = ChainSpaceParams::new(2, 1, ell(&[1, 1]), rat("0")).unwrap_err();
        assert_eq!(err.to_string(), "non-generic input: l({1}) = 0");
    }

    #[test]
    fn long_short_families() {
        // unit lengths, r = 3: long sets are those with more than half the indices
        let (long, short) = long_short_sets(&ell(&[1, 1, 1]), rat("0")).unwrap();
        let shown: Vec<String> = long.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, vec!["{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]);
        assert_eq!(short.len(), 4);

        // high threshold: only the full set stays long
        let (long, short) = long_short_sets(&ell(&[1, 1, 1]), rat("3/2")).unwrap();
        assert_eq!(long, vec![SubsetIndex::full(3)]);
        assert_eq!(short, vec![SubsetIndex::EMPTY]);

        // complement bijection makes the halves equal in size
        for entries in [&[1, 2, 4][..], &[2, 2, 3][..], &[1, 3, 5, 10][..]] {
            let l = ell(entries);
            assert!(is_generic(&l, rat("0")));
            let (long, short) = long_short_sets(&l, rat("0")).unwrap();
            assert_eq!(long.len(), short.len());
            assert_eq!(long.len(), 1 << (entries.len() - 1));
        }
    }

    #[test]
    fn critical_values_and_cr_min() {
        let (values, cr_min) = critical_values(&ell(&[1, 1, 1]));
        let shown: Vec<String> = values.iter().map(format_rational).collect();
        assert_eq!(shown, vec!["-3", "-1", "1", "3"]);
        assert_eq!(cr_min, rat("1"));

        let (_, cr_min) = critical_values(&ell(&[2, 2, 2, 3]));
        assert_eq!(cr_min, rat("1"));

        let (values, _) = critical_values(&ell(&[1, 2]));
        let shown: Vec<String> = values.iter().map(format_rational).collect();
        assert_eq!(shown, vec!["-3", "-1", "1", "3"]);
    }

    #[test]
    fn mu_levels() {
        let l = ell(&[1, 1, 1]);
        assert_eq!(mu(1, SubsetIndex::full(3), &l).unwrap(), 1);
        assert_eq!(mu(4, SubsetIndex::from_elems(&[1]), &l).unwrap(), 0);
        assert_eq!(mu(0, SubsetIndex::full(3), &l).unwrap(), 0);
        assert!(mu(1, SubsetIndex::from_elems(&[1]), &ell(&[1, 1])).is_err());
    }

    #[test]
    fn chambers_of_unit_lengths() {
        let ch = chambers(&ell(&[1, 1, 1]));
        assert_eq!(ch.len(), 3);
        assert_eq!(ch[0].representative, rat("1/2"));
        assert_eq!(ch[1].representative, rat("2"));
        assert_eq!(ch[2].representative, rat("4"));
        assert_eq!(ch[2].hi, None);
    }

    #[test]
    fn params_validation() {
        assert!(ChainSpaceParams::new(1, 1, ell(&[1, 2]), rat("0")).is_err());
        assert!(ChainSpaceParams::new(2, 0, ell(&[1, 2]), rat("0")).is_err());
        assert!(ChainSpaceParams::new(2, 1, ell(&[1, 2]), rat("-1")).is_err());
        assert!(LengthVector::new(vec![rat("0")]).is_err());
        assert!(LengthVector::new(vec![]).is_err());
        assert!(ChainSpaceParams::new(2, 1, ell(&[1, 2]), rat("0")).is_ok());
        // l({1}) = -1 = -c is rejected by extended genericity
        assert!(matches!(
            ChainSpaceParams::new(2, 1, ell(&[1, 2]), rat("1")),
            Err(ChainSpaceError::NonGeneric {
                clash: GenericityClash::MinusC,
                ..
            })
        ));
    }

    #[test]
    fn ambient_record_shapes() {
        let p = params(2, 1, &["1", "1", "1"], "0");
        let amb = ambient_presentation(&p);
        assert_eq!(amb.gen_degree, 2);
        assert_eq!(amb.relations.len(), 3);
        assert_eq!(amb.relations[0].to_string(), "s1^2 + t*t1*s1");

        let single = params(3, 2, &["1"], "0");
        let amb1 = ambient_presentation(&single);
        assert_eq!(amb1.relations.len(), 1);
        assert_eq!(amb1.gen_degree, 4);
        assert_eq!(amb1.relations[0].to_string(), "s1^2 + t^2*t1^2*s1");
    }

    #[test]
    fn restriction_images() {
        let p = params(2, 1, &["1", "1", "1"], "0");
        let j12 = SubsetIndex::from_elems(&[1, 2]);
        assert_eq!(restrict_to_fixed_point(&p, j12, 1).to_string(), "t*t1");
        assert!(restrict_to_fixed_point(&p, j12, 3).is_zero());

        let q = params(4, 2, &["1", "2"], "0");
        assert_eq!(
            restrict_to_fixed_point(&q, SubsetIndex::from_elems(&[2]), 2).to_string(),
            "t^3*t2^2"
        );
    }

    #[test]
    fn product_rule_against_expansion_oracle() {
        // restriction is multiplicative: pushing the expansion of sbar_J
        // through the fixed-point restriction at p_K must vanish whenever J
        // meets K, and give the full weight monomial otherwise
        let p = params(2, 1, &["1", "1", "1"], "0");
        let ring = p.ring_ext();
        for j in all_subsets(3) {
            let expansion = expand_sbar_product(&p, j);
            for k in all_subsets(3) {
                let mut total = Polynomial::zero(&ring);
                for (slots, coeff) in &expansion {
                    let mut restricted = coeff.clone();
                    for v in slots.iter() {
                        restricted = restricted
                            .try_mul(&restrict_to_fixed_point(&p, k, v))
                            .unwrap();
                    }
                    total = total.try_add(&restricted).unwrap();
                }
                let meets = j.iter().any(|v| k.contains(v));
                if j == SubsetIndex::EMPTY {
                    assert!(total.is_one());
                } else if meets {
                    assert!(total.is_zero(), "J={j} K={k}");
                } else {
                    assert_eq!(total.num_terms(), 1, "J={j} K={k}");
                    assert_eq!(
                        total.leading_monomial().unwrap().exponent(0),
                        (p.m() - 1) * j.cardinality()
                    );
                }
            }
        }
    }

    #[test]
    fn level_basis_degrees() {
        let p = params(2, 1, &["1", "1", "1"], "0");
        let basis0 = p.level_basis(0).unwrap();
        assert_eq!(basis0.len(), 8);
        assert!(basis0.iter().all(|&(j, d)| d == 2 * j.cardinality() as i32));

        let basis1 = p.level_basis(1).unwrap();
        let d12 = basis1
            .iter()
            .find(|&&(j, _)| j == SubsetIndex::from_elems(&[1, 2]))
            .unwrap()
            .1;
        assert_eq!(d12, 3); // 2*2 - 1
        assert!(p.level_basis(2).is_err());
    }

    #[test]
    fn cut_presentation_rank_one() {
        // single sphere: the quotient is spanned by s_{} with one relation
        // t^{m-1} t1^n, so its series numerator is 1 - q^{m+n-1}
        let p = params(2, 1, &["1"], "0");
        let pres = p.cut_presentation(1).unwrap();
        assert_eq!(pres.num_gens(), 2);
        let h = graded_dim(&pres);
        assert_eq!(h.numerator().terms(), vec![(0, 1), (2, -1)]);

        let p2 = params(3, 2, &["1"], "0");
        let pres2 = p2.cut_presentation(1).unwrap();
        let h2 = graded_dim(&pres2);
        assert_eq!(h2.numerator().terms(), vec![(0, 1), (4, -1)]);
        assert!(p2.cut_presentation(4).is_err());
        assert!(p2.cut_presentation(0).is_err());
    }

    #[test]
    fn cut_relations_are_homogeneous() {
        let p = params(3, 2, &["1", "2"], "0");
        for i in 1..=3 {
            let pres = p.cut_presentation(i).unwrap();
            for (idx, col) in pres.rels().columns().iter().enumerate() {
                assert!(
                    col.homogeneous_degree_in(pres.gens()).is_some(),
                    "column {idx} at level {i}"
                );
            }
        }
    }

    #[test]
    fn level_set_high_threshold_collapses() {
        // c above the total weight: every slot becomes a relation
        let p = params(2, 1, &["1", "1", "1"], "4");
        let pres = p.level_set_presentation();
        let h = graded_dim(&pres);
        assert!(h.is_finite());
        assert_eq!(h.total_dim(), Some(0));
    }

    #[test]
    fn level_set_single_sphere() {
        // slots s_{} and s_{1}/t; l({1}) = 1 > 0 kills the long slot and
        // contributes the sbar expansion
        let p = params(2, 1, &["1"], "0");
        let pres = p.level_set_presentation();
        assert_eq!(pres.num_gens(), 2);
        assert_eq!(pres.num_rels(), 2);
    }

    #[test]
    fn iota_unit_lengths_r3() {
        let p = params(2, 1, &["1", "1", "1"], "0");
        let iota = p.iota();
        assert_eq!(iota.size(), 4);
        assert_eq!(
            iota.matrix.to_text_rows(),
            vec!["0, 0, 0, 0", "t2, t3, 0, 0", "t1, 0, t3, 0", "0, t1, t2, 0"]
        );
        assert_eq!(iota.matrix.source().shifts(), &[3, 3, 3, 5]);
        assert_eq!(iota.matrix.target().shifts(), &[0, 2, 2, 2]);
    }

    #[test]
    fn iota_high_threshold_is_zero() {
        let p = params(2, 1, &["1", "1", "1"], "3/2");
        let iota = p.iota();
        assert_eq!(iota.size(), 1);
        assert!(iota.matrix.is_zero_map());
        assert_eq!(iota.cols, vec![SubsetIndex::full(3)]);
        assert_eq!(iota.rows, vec![SubsetIndex::EMPTY]);
    }

    #[test]
    fn iota_full_column_vanishes_when_faces_are_long() {
        let p = params(2, 1, &["2", "2", "2", "3"], "0");
        let iota = p.iota();
        let full_col = iota
            .cols
            .iter()
            .position(|&j| j == SubsetIndex::full(4))
            .unwrap();
        assert!(iota.matrix.column(full_col).is_zero());
    }

    #[test]
    fn iota_columns_match_expansion_oracle() {
        // reduce the product expansion of sbar_J modulo the killed slots and
        // the class t; what survives must be exactly the closed-form column
        for (lengths, c) in [
            (&["1", "1", "1"][..], "0"),
            (&["1", "1", "1"][..], "2"),
            (&["2", "2", "3"][..], "1/2"),
            (&["2", "2", "2", "3"][..], "1/2"),
            (&["1", "2", "4", "8"][..], "2"),
        ] {
            let p = params(2, 1, lengths, c);
            let iota = p.iota();
            let ring = p.ring();
            for (ci, &j) in iota.cols.iter().enumerate() {
                let expansion = expand_sbar_product(&p, j);
                let mut expected = iota.matrix.target().zero_elem();
                for (slot, coeff) in &expansion {
                    let Some(row) = iota.rows.iter().position(|&s| s == *slot) else {
                        continue; // slot killed by the long-half relations
                    };
                    // divide by t^{m-1}, then set t = 0
                    for &mono in coeff.terms() {
                        let texp = mono.exponent(0);
                        assert!(texp >= p.m() - 1);
                        if texp == p.m() - 1 {
                            let exps: Vec<u32> =
                                (1..=p.r()).map(|v| mono.exponent(v)).collect();
                            let reduced = Monomial::from_exponents(&exps).unwrap();
                            let updated = expected
                                .component(row)
                                .try_add(&Polynomial::from_monomial(&ring, reduced))
                                .unwrap();
                            *expected.component_mut(row) = updated;
                        }
                    }
                }
                assert_eq!(
                    iota.matrix.column(ci),
                    &expected,
                    "column {j} for lengths {lengths:?}, c = {c}"
                );
            }
        }
    }

    #[test]
    fn extension_gap_and_extend() {
        let p = params(2, 1, &["1", "1", "1"], "1/2");
        assert_eq!(p.extension_gap(), rat("1/2"));
        let ext = p.extend_by_zero().unwrap();
        assert_eq!(ext.r(), 4);
        assert_eq!(ext.ell().entries()[3], rat("1/4"));
        // extending twice keeps stacking tiny coordinates
        let ext2 = ext.extend_by_zero().unwrap();
        assert_eq!(ext2.r(), 5);
        assert!(ext2.ell().entries()[4] < ext.ell().entries()[3]);
        // the long/short family gains the new index as a free rider
        let (long, _) = long_short_sets(p.ell(), p.c()).unwrap();
        let (long_ext, _) = long_short_sets(ext.ell(), ext.c()).unwrap();
        assert_eq!(long_ext.len(), 2 * long.len());
        for &j in &long {
            assert!(long_ext.contains(&j));
            assert!(long_ext.contains(&j.with(4)));
        }
    }

    #[test]
    fn classification_models() {
        assert_eq!(params(2, 1, &["1", "1", "1"], "1/2").classify_maximal(), Some(1));
        // same family as unit lengths
        assert_eq!(params(2, 1, &["2", "2", "3"], "1/2").classify_maximal(), Some(1));
        // braced pattern differs at {1,2}
        assert_eq!(
            params(2, 1, &["2", "2", "2", "3"], "1/2").classify_maximal(),
            None
        );
        // even-rank model: one index is a free rider
        assert_eq!(
            params(2, 1, &["1", "4", "4", "4"], "2").classify_maximal(),
            Some(1)
        );
        // the distinguished index may sit anywhere
        assert_eq!(
            params(2, 1, &["4", "4", "1", "4"], "2").classify_maximal(),
            Some(1)
        );
        // far chambers never match
        assert_eq!(params(2, 1, &["1", "1", "1"], "2").classify_maximal(), None);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/2").unwrap(), Rational64::new(3, 2));
        assert_eq!(parse_rational("7").unwrap(), Rational64::from_integer(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&Rational64::new(6, 4)), "3/2");
        assert_eq!(format_rational(&Rational64::from_integer(5)), "5");
    }
}
