//! Graded dimension counts via Hilbert series.
//!
//! The Hilbert series of a presented module is read off the initial module of
//! a Groebner basis of the relations: per basis slot this leaves a monomial
//! ideal, whose numerator over `(1 - q)^{num_vars}` comes from the classic
//! colon/sum pivot recursion. Negative shifts (from dualizing) make the
//! numerator a Laurent polynomial.

use crate::ring::{Monomial, RingCtx};

use super::groebner::groebner;
use super::Presentation;

/// An integer Laurent polynomial in one variable `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    min_deg: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            min_deg: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(deg: i32) -> Self {
        LaurentPoly {
            min_deg: deg,
            coeffs: vec![1],
        }
    }

    /// `1 - q`.
    pub fn one_minus_q() -> Self {
        LaurentPoly {
            min_deg: 0,
            coeffs: vec![1, -1],
        }
    }

    fn normalize(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_deg += lead_zeros as i32;
        }
        if self.coeffs.is_empty() {
            self.min_deg = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, deg: i32) -> i64 {
        if deg < self.min_deg {
            return 0;
        }
        let idx = (deg - self.min_deg) as usize;
        self.coeffs.get(idx).copied().unwrap_or(0)
    }

    /// Sparse view: `(degree, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> Vec<(i32, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.min_deg + i as i32, c))
            .collect()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let min = self.min_deg.min(other.min_deg);
        let max = (self.min_deg + self.coeffs.len() as i32)
            .max(other.min_deg + other.coeffs.len() as i32);
        let mut coeffs = vec![0i64; (max - min) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min_deg - min) as usize + i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            coeffs[(other.min_deg - min) as usize + i] += c;
        }
        LaurentPoly {
            min_deg: min,
            coeffs,
        }
        .normalize()
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly {
            min_deg: self.min_deg + other.min_deg,
            coeffs,
        }
        .normalize()
    }

    pub fn shift(&self, by: i32) -> LaurentPoly {
        LaurentPoly {
            min_deg: self.min_deg + by,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Exact division by `1 - q`; `None` when the remainder (the value at
    /// `q = 1`) is nonzero.
    pub fn div_one_minus_q(&self) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if self.eval_at_one() != 0 {
            return None;
        }
        // 1 - q = -(q - 1); synthetic division by prefix sums
        let mut quot = Vec::with_capacity(self.coeffs.len() - 1);
        let mut acc = 0i64;
        for &c in &self.coeffs[..self.coeffs.len() - 1] {
            acc += c;
            quot.push(acc);
        }
        Some(
            LaurentPoly {
                min_deg: self.min_deg,
                coeffs: quot,
            }
            .normalize(),
        )
    }
}

/// Hilbert data of a finitely presented graded module: the series numerator
/// over `(1 - q)^{num_vars}`, plus the total F2-dimension when the module is
/// finite-dimensional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    numerator: LaurentPoly,
    denom_power: usize,
    finite: bool,
    total_dim: Option<u64>,
}

impl HilbertData {
    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denom_power(&self) -> usize {
        self.denom_power
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn total_dim(&self) -> Option<u64> {
        self.total_dim
    }

    /// Series equality across possibly different ambient variable counts:
    /// cross-multiplied numerators agree.
    pub fn same_series_as(&self, other: &HilbertData) -> bool {
        let mut a = self.numerator.clone();
        let mut b = other.numerator.clone();
        let omq = LaurentPoly::one_minus_q();
        for _ in 0..other.denom_power.saturating_sub(self.denom_power) {
            a = a.mul(&omq);
        }
        for _ in 0..self.denom_power.saturating_sub(other.denom_power) {
            b = b.mul(&omq);
        }
        a == b
    }
}

/// Numerator of `R / I` for a monomial ideal, over `(1 - q)^{num_vars}`.
fn monomial_quotient_numerator(gens: &[Monomial]) -> LaurentPoly {
    // minimal generators only
    let mut min: Vec<Monomial> = Vec::new();
    'outer: for (i, &m) in gens.iter().enumerate() {
        for (j, &n) in gens.iter().enumerate() {
            if (n.divides(m) && n != m) || (n == m && j < i) {
                continue 'outer;
            }
        }
        min.push(m);
    }
    if min.is_empty() {
        return LaurentPoly::one();
    }
    if min.iter().any(|m| m.is_one()) {
        return LaurentPoly::zero();
    }
    let coprime = min
        .iter()
        .enumerate()
        .all(|(i, &a)| min[i + 1..].iter().all(|&b| a.is_coprime_with(b)));
    if coprime {
        let mut out = LaurentPoly::one();
        for m in &min {
            out = out.mul(&LaurentPoly::one().sub(&LaurentPoly::monomial(m.degree() as i32)));
        }
        return out;
    }
    // pivot on the most frequent variable; split along 0 -> R/(I:x) -> R/I -> R/(I+x) -> 0
    let mut counts = [0usize; crate::ring::MAX_VARS];
    for m in &min {
        for (i, c) in counts.iter_mut().enumerate() {
            if m.exponent(i) > 0 {
                *c += 1;
            }
        }
    }
    let pivot_var = counts
        .iter()
        .enumerate()
        .max_by_key(|&(_, &c)| c)
        .map(|(i, _)| i)
        .unwrap();
    let x = Monomial::var(pivot_var);
    let with_x: Vec<Monomial> = min.iter().copied().chain(std::iter::once(x)).collect();
    let colon: Vec<Monomial> = min
        .iter()
        .map(|&m| {
            if m.exponent(pivot_var) > 0 {
                m.div_by(x).unwrap()
            } else {
                m
            }
        })
        .collect();
    monomial_quotient_numerator(&with_x)
        .add(&monomial_quotient_numerator(&colon).shift(1))
}

/// Hilbert series of `coker(p.rels)` from the initial module of the relation
/// Groebner basis; reports the total F2-dimension when finite.
pub fn graded_dim(p: &Presentation) -> HilbertData {
    let ring: &RingCtx = p.ring();
    let nv = ring.num_vars();
    let gb = groebner(p.rels().columns(), p.gens());
    let mut slot_leads: Vec<Vec<Monomial>> = vec![Vec::new(); p.num_gens()];
    for (slot, mon) in gb.leading_terms() {
        slot_leads[slot].push(mon);
    }
    let mut numerator = LaurentPoly::zero();
    for (i, leads) in slot_leads.iter().enumerate() {
        let n_i = monomial_quotient_numerator(leads);
        numerator = numerator.add(&n_i.shift(p.gens().shift(i)));
    }
    let mut reduced = numerator.clone();
    let mut finite = true;
    for _ in 0..nv {
        match reduced.div_one_minus_q() {
            Some(q) => reduced = q,
            None => {
                finite = false;
                break;
            }
        }
    }
    let total_dim = if finite {
        debug_assert!(reduced.terms().iter().all(|&(_, c)| c >= 0));
        Some(reduced.eval_at_one() as u64)
    } else {
        None
    };
    HilbertData {
        numerator,
        denom_power: nv,
        finite,
        total_dim,
    }
}
