//! Exact arithmetic in polynomial rings `F2[v1, ..., vk]`.
//!
//! A polynomial over F2 is a finite set of monomials: every coefficient is 1,
//! addition is symmetric difference, and `p + p = 0` holds on the nose. The
//! term set is kept sorted in decreasing term order so that addition is a
//! linear merge and the leading monomial is always the first entry.
//!
//! A [`Monomial`] packs one 8-bit exponent per variable into a `u64`, which
//! caps a ring context at [`MAX_VARS`] variables of individual degree at most
//! 255. All variables have degree one; the total degree of a monomial is the
//! sum of its exponents.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use thiserror::Error;

/// Hard cap on the number of variables a ring context supports.
pub const MAX_VARS: usize = 8;

/// Largest exponent a single variable may carry.
pub const MAX_EXPONENT: u32 = 0xff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("a ring context supports at most {MAX_VARS} variables, got {0}")]
    TooManyVars(usize),
    #[error("a ring context needs at least one variable")]
    NoVars,
    #[error("duplicate variable name `{0}`")]
    DuplicateVar(String),
    #[error("operands live in different ring contexts")]
    RingMismatch,
    #[error("exponent of variable {var} exceeds {MAX_EXPONENT}")]
    ExponentOverflow { var: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Total orders on monomials refining divisibility and compatible with
/// multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    /// Degree first, ties broken at the last differing exponent, where the
    /// smaller exponent wins. The default everywhere.
    #[default]
    DegRevLex,
    /// Plain lexicographic order with variable 0 dominant. Slower in Groebner
    /// walks but occasionally easier to read when debugging.
    Lex,
}

#[derive(Debug)]
struct RingInner {
    names: Vec<String>,
    order: TermOrder,
}

/// An ambient polynomial ring: a variable count, display names, and a term
/// order. Cheap to clone and safe to share across threads.
#[derive(Debug, Clone)]
pub struct RingCtx {
    inner: Arc<RingInner>,
}

impl PartialEq for RingCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.order == other.inner.order && self.inner.names == other.inner.names)
    }
}

impl Eq for RingCtx {}

impl RingCtx {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        order: TermOrder,
    ) -> Result<Self, RingError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(RingError::NoVars);
        }
        if names.len() > MAX_VARS {
            return Err(RingError::TooManyVars(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(RingError::DuplicateVar(n.clone()));
            }
        }
        Ok(RingCtx {
            inner: Arc::new(RingInner { names, order }),
        })
    }

    /// `F2[t1, ..., tr]` under degrevlex.
    pub fn standard(r: usize) -> Self {
        Self::new((1..=r).map(|j| format!("t{j}")), TermOrder::DegRevLex)
            .expect("standard ring dimensions are validated by the caller")
    }

    /// `F2[t, t1, ..., tr]` under degrevlex, with `t` as variable 0.
    pub fn extended(r: usize) -> Self {
        let names = std::iter::once("t".to_string()).chain((1..=r).map(|j| format!("t{j}")));
        Self::new(names, TermOrder::DegRevLex)
            .expect("extended ring dimensions are validated by the caller")
    }

    pub fn num_vars(&self) -> usize {
        self.inner.names.len()
    }

    pub fn order(&self) -> TermOrder {
        self.inner.order
    }

    pub fn var_names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.inner.names[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.names.iter().position(|n| n == name)
    }
}

/// A monomial: one exponent per variable, packed 8 bits per lane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        assert!(e <= MAX_EXPONENT, "exponent {e} out of range");
        Monomial((e as u64) << (8 * i))
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self, RingError> {
        if exps.len() > MAX_VARS {
            return Err(RingError::TooManyVars(exps.len()));
        }
        let mut packed = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            if e > MAX_EXPONENT {
                return Err(RingError::ExponentOverflow { var: i });
            }
            packed |= (e as u64) << (8 * i);
        }
        Ok(Monomial(packed))
    }

    #[inline]
    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> (8 * i)) & 0xff) as u32
    }

    pub fn exponents(self, num_vars: usize) -> Vec<u32> {
        (0..num_vars).map(|i| self.exponent(i)).collect()
    }

    /// Total degree; every variable has degree one.
    #[inline]
    pub fn degree(self) -> u32 {
        let mut x = self.0;
        let mut sum = 0;
        while x != 0 {
            sum += (x & 0xff) as u32;
            x >>= 8;
        }
        sum
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn checked_mul(self, other: Monomial) -> Result<Monomial, RingError> {
        for i in 0..MAX_VARS {
            if self.exponent(i) + other.exponent(i) > MAX_EXPONENT {
                return Err(RingError::ExponentOverflow { var: i });
            }
        }
        Ok(Monomial(self.0 + other.0))
    }

    #[inline]
    pub fn divides(self, other: Monomial) -> bool {
        // Lane-wise <= ; no borrows can cross lanes when it holds.
        for i in 0..MAX_VARS {
            if self.exponent(i) > other.exponent(i) {
                return false;
            }
        }
        true
    }

    pub fn div_by(self, other: Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial(self.0 - other.0))
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        let mut packed = 0u64;
        for i in 0..MAX_VARS {
            let e = self.exponent(i).max(other.exponent(i));
            packed |= (e as u64) << (8 * i);
        }
        Monomial(packed)
    }

    pub fn gcd(self, other: Monomial) -> Monomial {
        let mut packed = 0u64;
        for i in 0..MAX_VARS {
            let e = self.exponent(i).min(other.exponent(i));
            packed |= (e as u64) << (8 * i);
        }
        Monomial(packed)
    }

    pub fn is_coprime_with(self, other: Monomial) -> bool {
        self.gcd(other).is_one()
    }
}

/// Compare two monomials under the given order. Total, refines divisibility,
/// and is compatible with multiplication.
pub fn compare(a: Monomial, b: Monomial, order: TermOrder) -> Ordering {
    match order {
        TermOrder::DegRevLex => {
            let (da, db) = (a.degree(), b.degree());
            if da != db {
                return da.cmp(&db);
            }
            for i in (0..MAX_VARS).rev() {
                let (ea, eb) = (a.exponent(i), b.exponent(i));
                if ea != eb {
                    // last differing exponent: smaller wins
                    return if ea < eb { Ordering::Greater } else { Ordering::Less };
                }
            }
            Ordering::Equal
        }
        TermOrder::Lex => {
            for i in 0..MAX_VARS {
                let (ea, eb) = (a.exponent(i), b.exponent(i));
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
            Ordering::Equal
        }
    }
}

/// A polynomial over F2: a set of monomials, stored strictly decreasing in
/// the ring's term order. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingCtx,
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero(ring: &RingCtx) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingCtx) -> Self {
        Self::from_monomial(ring, Monomial::ONE)
    }

    pub fn var(ring: &RingCtx, i: usize) -> Self {
        assert!(i < ring.num_vars(), "variable index {i} out of range");
        Self::from_monomial(ring, Monomial::var(i))
    }

    pub fn from_monomial(ring: &RingCtx, m: Monomial) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![m],
        }
    }

    /// Builds a polynomial from an arbitrary term list. Repeated monomials
    /// cancel in pairs (coefficients live in F2).
    pub fn from_terms(ring: &RingCtx, mut terms: Vec<Monomial>) -> Self {
        let order = ring.order();
        terms.sort_unstable_by(|a, b| compare(*b, *a, order));
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        let mut i = 0;
        while i < terms.len() {
            let mut run = 1;
            while i + run < terms.len() && terms[i + run] == terms[i] {
                run += 1;
            }
            if run % 2 == 1 {
                out.push(terms[i]);
            }
            i += run;
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the constant polynomial 1, the only unit of the ring.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().copied()
    }

    /// Maximum total degree over all terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(first) => {
                let d = first.degree();
                self.terms.iter().all(|m| m.degree() == d)
            }
        }
    }

    /// Common degree of all terms, `None` if zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.degree();
        self.terms.iter().all(|m| m.degree() == d).then_some(d)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        if self.ring != other.ring {
            return Err(RingError::RingMismatch);
        }
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match compare(self.terms[i], other.terms[j], order) {
                Ordering::Greater => {
                    out.push(self.terms[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    // symmetric difference: equal monomials cancel
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: out,
        })
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        if self.ring != other.ring {
            return Err(RingError::RingMismatch);
        }
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &a in &self.terms {
            for &b in &other.terms {
                products.push(a.checked_mul(b)?);
            }
        }
        Ok(Polynomial::from_terms(&self.ring, products))
    }

    /// Multiplies by a single monomial, preserving the term order.
    pub fn mul_monomial(&self, m: Monomial) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| t.checked_mul(m).expect("exponent overflow in monomial product"))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Removes and returns the leading monomial.
    pub(crate) fn pop_leading(&mut self) -> Option<Monomial> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Appends a monomial strictly smaller than the current last term.
    pub(crate) fn push_trailing(&mut self, m: Monomial) {
        debug_assert!(
            self.terms
                .last()
                .is_none_or(|&t| compare(t, m, self.ring.order()) == Ordering::Greater),
            "push_trailing would break term ordering"
        );
        self.terms.push(m);
    }

    /// Parses the canonical text form, e.g. `t1^2*t2 + t3`, `1`, `0`.
    pub fn parse(ring: &RingCtx, input: &str) -> Result<Polynomial, RingError> {
        let input = input.trim();
        if input.is_empty() {
            return Err(RingError::Parse("empty input".into()));
        }
        if input == "0" {
            return Ok(Polynomial::zero(ring));
        }
        let mut terms = Vec::new();
        for term in input.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(RingError::Parse(format!("empty term in `{input}`")));
            }
            let mut mono = Monomial::ONE;
            for factor in term.split('*') {
                let factor = factor.trim();
                if factor == "1" {
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        let exp: u32 = e
                            .trim()
                            .parse()
                            .map_err(|_| RingError::Parse(format!("bad exponent in `{factor}`")))?;
                        (n.trim(), exp)
                    }
                    None => (factor, 1),
                };
                let idx = ring
                    .var_index(name)
                    .ok_or_else(|| RingError::Parse(format!("unknown variable `{name}`")))?;
                mono = mono.checked_mul(Monomial::var_pow(idx, exp))?;
            }
            terms.push(mono);
        }
        Ok(Polynomial::from_terms(ring, terms))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in +")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in *")
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

pub(crate) fn fmt_monomial(m: Monomial, ring: &RingCtx, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if m.is_one() {
        return write!(f, "1");
    }
    let mut first = true;
    for i in 0..ring.num_vars() {
        let e = m.exponent(i);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", ring.var_name(i))?;
        } else {
            write!(f, "{}^{}", ring.var_name(i), e)?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    /// Canonical text form: terms in decreasing term order joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, &m) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            fmt_monomial(m, &self.ring, f)?;
        }
        Ok(())
    }
}

/// Exact division: `Some(q)` with `p = q * d`, or `None` when `d` does not
/// divide `p`. Used by the fraction-free elimination in [`crate::module`].
pub fn div_exact(p: &Polynomial, d: &Polynomial) -> Option<Polynomial> {
    assert!(!d.is_zero(), "division by zero polynomial");
    let ring = p.ring().clone();
    if p.ring() != d.ring() {
        return None;
    }
    let order = ring.order();
    let lead_d = d.leading_monomial().expect("nonzero divisor");
    let mut rem = p.clone();
    let mut quot: Vec<Monomial> = Vec::new();
    while let Some(lead_r) = rem.leading_monomial() {
        let q = lead_r.div_by(lead_d)?;
        debug_assert!(
            quot.last().is_none_or(|&t| compare(t, q, order) == Ordering::Greater)
        );
        quot.push(q);
        rem = &rem + &d.mul_monomial(q);
    }
    Some(Polynomial {
        ring,
        terms: quot,
    })
}
