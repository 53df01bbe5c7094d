//! Exact arithmetic in the Laurent polynomial ring Z[q, q^-1] and its field
//! of fractions.
//!
//! Everything downstream (q-tables, W-graph edge weights, representation
//! matrices) is built on [`LaurentPoly`]. The coefficient ring is generic over
//! [`Coeff`]; use [`i64`] for speed (all arithmetic is checked, overflow
//! aborts) or `num_bigint::BigInt` when coefficients might exceed a machine
//! word. The fraction field [`RationalFn`] is only needed by the seminormal
//! representation oracle.

use std::borrow::Cow;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Coefficient ring for all exact arithmetic: an ordered integer ring with
/// checked operations. Implemented by `i64` and `num_bigint::BigInt`.
pub trait Coeff:
    Clone
    + Eq
    + Ord
    + std::hash::Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + ToPrimitive
    + From<i32>
    + Send
    + Sync
    + 'static
{
}

impl<T> Coeff for T where
    T: Clone
        + Eq
        + Ord
        + std::hash::Hash
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = T>
        + Signed
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + ToPrimitive
        + From<i32>
        + Send
        + Sync
        + 'static
{
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    /// `exact_div_q` was asked to divide a polynomial with a nonzero constant
    /// term or with negative exponents. In engine context this signals a
    /// corrupted q-table.
    #[error("polynomial is not divisible by q in Z[q]: {0}")]
    NonDivisible(String),
    #[error("division by zero rational function")]
    DivisionByZero,
}

fn checked_add<C: Coeff>(a: &C, b: &C) -> C {
    a.checked_add(b)
        .expect("coefficient overflow; rerun with the big-integer coefficient type")
}

fn checked_mul<C: Coeff>(a: &C, b: &C) -> C {
    a.checked_mul(b)
        .expect("coefficient overflow; rerun with the big-integer coefficient type")
}

/// A sparse Laurent polynomial in one variable q with exact integer
/// coefficients.
///
/// Terms are held sorted by exponent with no zero coefficients, so equal
/// values always have identical representations (canonical form).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly<C: Coeff> {
    terms: Vec<(i32, C)>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    /// The monomial `c * q^exp` (zero if `c` is zero).
    pub fn monomial(c: C, exp: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(exp, c)],
            }
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// The variable q.
    pub fn q() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// q - q^-1, the recurring Hecke relation element.
    pub fn q_minus_qinv() -> Self {
        LaurentPoly {
            terms: vec![(-1, -C::one()), (1, C::one())],
        }
    }

    /// Builds a polynomial from arbitrary (exponent, coefficient) pairs,
    /// combining duplicates and dropping zeros.
    pub fn from_terms(pairs: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut terms: Vec<(i32, C)> = pairs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|&(e, _)| e);
        let mut out: Vec<(i32, C)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => {
                    *lc = checked_add(lc, &c);
                }
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LaurentPoly { terms: out }
    }

    /// Convenience constructor from machine-integer pairs.
    pub fn from_pairs(pairs: &[(i32, i32)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| (e, C::from(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Sorted (exponent, coefficient) view.
    pub fn terms(&self) -> &[(i32, C)] {
        &self.terms
    }

    pub fn coeff(&self, exp: i32) -> C {
        match self.terms.binary_search_by_key(&exp, |&(e, _)| e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    /// Coefficient of q^0.
    pub fn constant_term(&self) -> C {
        self.coeff(0)
    }

    /// Largest exponent, or None for the zero polynomial.
    pub fn degree(&self) -> Option<i32> {
        self.terms.last().map(|&(e, _)| e)
    }

    /// Smallest exponent, or None for the zero polynomial.
    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|&(e, _)| e)
    }

    /// True iff the polynomial lies in Z[q] (no negative exponents).
    pub fn in_a_plus(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// True iff every exponent is >= 1, i.e. the polynomial lies in q*Z[q].
    pub fn in_q_a_plus(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 1)
    }

    /// The bar involution q -> q^-1.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<(i32, C)> =
            self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        LaurentPoly { terms }
    }

    /// Multiplication by q^k.
    pub fn shifted(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scaled(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (*e, checked_mul(a, c)))
                .collect(),
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, _) = self.terms[i];
            let (eb, _) = other.terms[j];
            match ea.cmp(&eb) {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = checked_add(&self.terms[i].1, &other.terms[j].1);
                    if !c.is_zero() {
                        out.push((ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        self.terms = out;
    }

    /// Adds `c * q^shift * other` in place.
    pub fn add_scaled_shifted(&mut self, other: &Self, c: &C, shift: i32) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let scaled = LaurentPoly {
            terms: other
                .terms
                .iter()
                .map(|(e, a)| (*e + shift, checked_mul(a, c)))
                .collect(),
        };
        self.add_assign_ref(&scaled);
    }

    pub fn neg_ref(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Convolve against the shorter operand.
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Self::zero();
        for (e, c) in &small.terms {
            acc.add_scaled_shifted(large, c, *e);
        }
        acc
    }

    /// Exact division by q. Requires zero constant term and no negative
    /// exponents; the result again lies in Z[q].
    pub fn exact_div_q(&self) -> Result<Self, LaurentError> {
        if let Some(e) = self.min_exp() {
            if e < 1 {
                return Err(LaurentError::NonDivisible(format!("{self}")));
            }
        }
        Ok(self.shifted(-1))
    }

    /// Substitutes q -> -q.
    pub fn subst_neg_q(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let c = if e.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
                    (*e, c)
                })
                .collect(),
        }
    }

    /// Content: gcd of all coefficients (nonnegative), zero for the zero
    /// polynomial.
    pub fn content(&self) -> C {
        let mut g = C::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
        }
        g
    }

    /// Leading coefficient (highest exponent), zero for the zero polynomial.
    pub fn leading_coeff(&self) -> C {
        self.terms.last().map_or_else(C::zero, |(_, c)| c.clone())
    }

    /// Divides every coefficient by `c`, which must divide exactly.
    fn div_content(&self, c: &C) -> Self {
        assert!(!c.is_zero());
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| {
                    let (quot, rem) = a.div_rem(c);
                    assert!(rem.is_zero(), "content division must be exact");
                    (*e, quot)
                })
                .collect(),
        }
    }

    /// Exact polynomial division, defined when `div` divides `self` in
    /// Z[q,q^-1]. Returns None otherwise.
    pub fn div_exact(&self, div: &Self) -> Option<Self> {
        if div.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Pull monomial factors out so both operands live in Z[q] with
        // nonzero constant term; any Laurent quotient is then ordinary.
        let a = self.min_exp().unwrap();
        let b = div.min_exp().unwrap();
        let mut rem = self.shifted(-a);
        let g = div.shifted(-b);
        let mut quot = Self::zero();
        let dlead = g.leading_coeff();
        let ddeg = g.degree().unwrap();
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                return None;
            }
            let (c, crem) = rem.leading_coeff().div_rem(&dlead);
            if c.is_zero() || !crem.is_zero() {
                return None;
            }
            let t = Self::monomial(c, rdeg - ddeg);
            rem.add_assign_ref(&t.mul_ref(&g).neg_ref());
            quot.add_assign_ref(&t);
        }
        Some(quot.shifted(a - b))
    }

    /// Renders the polynomial with caret powers, e.g. `q^2 - 2 + q^-2`.
    fn fmt_human(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest power first.
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = abs.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{abs}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_human(f)
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_human(f)
    }
}

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<C: Coeff> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        self.add_assign_ref(rhs);
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        let mut out = self.clone();
        out.add_assign_ref(&rhs.neg_ref());
        out
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        self.mul_ref(rhs)
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        self.neg_ref()
    }
}

/// gcd in Z[q] by the primitive Euclidean algorithm with pseudo-division.
/// Inputs must lie in Z[q]; the result is primitive with positive leading
/// coefficient (times the coefficient gcd of the inputs).
fn poly_gcd<C: Coeff>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> LaurentPoly<C> {
    if a.is_zero() {
        return positive_lead(b.clone());
    }
    if b.is_zero() {
        return positive_lead(a.clone());
    }
    debug_assert!(a.in_a_plus() && b.in_a_plus());
    let content = a.content().gcd(&b.content());
    let mut f = primitive(a);
    let mut g = primitive(b);
    if f.degree() < g.degree() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g);
        f = g;
        g = if r.is_zero() { r } else { primitive(&r) };
    }
    positive_lead(f.scaled(&content))
}

fn primitive<C: Coeff>(p: &LaurentPoly<C>) -> LaurentPoly<C> {
    let c = p.content();
    if c.is_zero() || c.is_one() {
        p.clone()
    } else {
        p.div_content(&c)
    }
}

fn positive_lead<C: Coeff>(p: LaurentPoly<C>) -> LaurentPoly<C> {
    if p.leading_coeff().is_negative() {
        p.neg_ref()
    } else {
        p
    }
}

/// Remainder of f by g in Z[q] up to unit content: each elimination step
/// scales by lc(g) and then strips the integer content, which keeps
/// machine-word coefficients in range on realistic inputs.
fn pseudo_rem<C: Coeff>(f: &LaurentPoly<C>, g: &LaurentPoly<C>) -> LaurentPoly<C> {
    let dg = g.degree().expect("nonzero divisor");
    let lg = g.leading_coeff();
    let mut r = f.clone();
    while let Some(dr) = r.degree() {
        if dr < dg {
            break;
        }
        let lr = r.leading_coeff();
        r = r.scaled(&lg);
        let t = LaurentPoly::monomial(lr, dr - dg);
        r.add_assign_ref(&t.mul_ref(g).neg_ref());
        debug_assert!(r.degree().is_none_or(|d| d < dr));
        r = primitive(&r);
    }
    r
}

/// An element of the field of fractions of Z[q,q^-1], held in canonical form:
/// the denominator lies in Z[q] with nonzero constant term, positive leading
/// coefficient and content 1, and shares no factor with the numerator's
/// polynomial part (monomial factors of the value live in the numerator,
/// which stays a Laurent polynomial).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn<C: Coeff> {
    num: LaurentPoly<C>,
    den: LaurentPoly<C>,
}

impl<C: Coeff> RationalFn<C> {
    pub fn new(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Result<Self, LaurentError> {
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFn {
                num,
                den: LaurentPoly::one(),
            };
        }
        // Pull the monomial parts out: num = q^a n0, den = q^b d0 with
        // n0, d0 in Z[q] having nonzero constant term.
        let a = num.min_exp().unwrap();
        let b = den.min_exp().unwrap();
        let n0 = num.shifted(-a);
        let d0 = den.shifted(-b);
        let g = poly_gcd(&n0, &d0);
        let mut n1 = n0.div_exact(&g).expect("gcd divides");
        let mut d1 = d0.div_exact(&g).expect("gcd divides");
        if d1.leading_coeff().is_negative() {
            n1 = n1.neg_ref();
            d1 = d1.neg_ref();
        }
        RationalFn {
            num: n1.shifted(a - b),
            den: d1,
        }
    }

    pub fn zero() -> Self {
        RationalFn {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFn {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_poly(p: LaurentPoly<C>) -> Self {
        RationalFn {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn num(&self) -> &LaurentPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let num = &self.num.mul_ref(&other.den) + &other.num.mul_ref(&self.den);
        Self::normalized(num, self.den.mul_ref(&other.den))
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        RationalFn {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        Self::normalized(self.num.mul_ref(&other.num), self.den.mul_ref(&other.den))
    }

    pub fn inv(&self) -> Result<Self, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    /// The bar involution q -> q^-1 extended to the fraction field.
    pub fn bar(&self) -> Self {
        Self::normalized(self.num.bar(), self.den.bar())
    }
}

impl<C: Coeff> fmt::Display for RationalFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<C: Coeff> fmt::Debug for RationalFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> Add for &RationalFn<C> {
    type Output = RationalFn<C>;
    fn add(self, rhs: Self) -> RationalFn<C> {
        self.add_ref(rhs)
    }
}

impl<C: Coeff> Sub for &RationalFn<C> {
    type Output = RationalFn<C>;
    fn sub(self, rhs: Self) -> RationalFn<C> {
        self.sub_ref(rhs)
    }
}

impl<C: Coeff> Mul for &RationalFn<C> {
    type Output = RationalFn<C>;
    fn mul(self, rhs: Self) -> RationalFn<C> {
        self.mul_ref(rhs)
    }
}

/// Renders a coefficient for JSON: a plain integer when it fits in an i64,
/// otherwise a decimal string.
pub fn coeff_json<C: Coeff>(c: &C) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

/// Parses a short polynomial expression used in tests and fixtures, accepting
/// the forms produced by `Display` (e.g. `q^3 + q`, `-2q^-1 + 1`, `0`).
pub fn parse_poly<C: Coeff>(s: &str) -> Option<LaurentPoly<C>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return None;
    }
    let mut terms: Vec<(i32, C)> = Vec::new();
    let mut rest: &str = &compact;
    let mut sign = 1i32;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    while !rest.is_empty() {
        let end = rest
            .char_indices()
            .skip(1)
            .find(|&(i, ch)| (ch == '+' || ch == '-') && !rest[..i].ends_with('^'))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let (tok, tail) = rest.split_at(end);
        let (coeff_str, exp): (Cow<'_, str>, i32) = if let Some(pos) = tok.find('q') {
            let coeff = &tok[..pos];
            let after = &tok[pos + 1..];
            let e = if let Some(es) = after.strip_prefix('^') {
                es.parse().ok()?
            } else if after.is_empty() {
                1
            } else {
                return None;
            };
            (
                if coeff.is_empty() {
                    Cow::Borrowed("1")
                } else {
                    Cow::Borrowed(coeff)
                },
                e,
            )
        } else {
            (Cow::Borrowed(tok), 0)
        };
        let c: i64 = coeff_str.parse().ok()?;
        let mut cc = C::from(i32::try_from(c).ok()?);
        if sign < 0 {
            cc = -cc;
        }
        terms.push((exp, cc));
        rest = tail;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            sign = 1;
            rest = r;
        }
    }
    Some(LaurentPoly::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = LaurentPoly<i64>;
    type PB = LaurentPoly<BigInt>;

    fn p(s: &str) -> P {
        parse_poly(s).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p("q") + &p("-q"), P::zero());
        assert_eq!(&p("q^2+1") + &p("q"), p("q^2+q+1"));
        assert_eq!(&p("q^3+q") + &P::zero(), p("q^3+q"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("q") * &p("q^2+1"), p("q^3+q"));
        assert_eq!(&P::one() * &p("q^-2+7"), p("q^-2+7"));
        assert_eq!(&p("q-q^-1") * &p("q-q^-1"), p("q^2-2+q^-2"));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p("q").bar(), p("q^-1"));
        assert_eq!(p("q-q^-1").bar(), p("q^-1-q"));
        assert_eq!(p("7").bar(), p("7"));
    }

    #[test]
    fn constant_term_examples() {
        assert_eq!(p("q^2+1").constant_term(), 1);
        assert_eq!(p("q").constant_term(), 0);
        assert_eq!(P::zero().constant_term(), 0);
    }

    #[test]
    fn exact_div_q_examples() {
        assert_eq!(p("q^3+q").exact_div_q().unwrap(), p("q^2+1"));
        assert_eq!(P::zero().exact_div_q().unwrap(), P::zero());
        assert!(matches!(
            p("q^2+1").exact_div_q(),
            Err(LaurentError::NonDivisible(_))
        ));
        assert!(p("q^-1").exact_div_q().is_err());
    }

    #[test]
    fn in_q_a_plus_examples() {
        assert!(p("q^3+q").in_q_a_plus());
        assert!(!P::one().in_q_a_plus());
        assert!(P::zero().in_q_a_plus());
    }

    #[test]
    fn display_reads_high_to_low() {
        assert_eq!(p("q^2-2+q^-2").to_string(), "q^2 - 2 + q^-2");
        assert_eq!(p("-q^3-q").to_string(), "-q^3 - q");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn div_exact_basics() {
        let a = p("q^4-1");
        let b = p("q^2-1");
        assert_eq!(a.div_exact(&b).unwrap(), p("q^2+1"));
        assert!(p("q^2+1").div_exact(&p("q+1")).is_none());
    }

    #[test]
    fn rational_normalization_example() {
        // (q^2 - 1) / (q - q^3) normalizes to -q^-1.
        let r = RationalFn::new(p("q^2-1"), p("q-q^3")).unwrap();
        assert_eq!(r.num(), &p("-q^-1"));
        assert_eq!(r.den(), &P::one());
    }

    #[test]
    fn rational_inverse_and_identity() {
        type R = RationalFn<i64>;
        let x = R::new(p("q^2+1"), p("q")).unwrap();
        assert_eq!(x.mul_ref(&x.inv().unwrap()), R::one());
        let ab = R::new(p("q^3-2"), p("q^2+q+1")).unwrap();
        assert_eq!(ab.add_ref(&R::zero()), ab);
        assert!(R::zero().inv().is_err());
    }

    #[test]
    fn rational_equality_across_representations() {
        type R = RationalFn<i64>;
        let a = R::new(p("q^2-1"), p("q+1")).unwrap();
        let b = R::new(p("q^3-q"), p("q^2+q")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, R::from_poly(p("q-1")));
    }

    #[test]
    fn bigint_backend_matches_i64_on_small_values() {
        let a = p("q^3-2q+5");
        let b = p("-q^-2+4");
        let ab: PB = parse_poly("q^3-2q+5").unwrap();
        let bb: PB = parse_poly("-q^-2+4").unwrap();
        let prod = &a * &b;
        let prod_big = &ab * &bb;
        assert_eq!(
            prod.terms()
                .iter()
                .map(|(e, c)| (*e, BigInt::from(*c)))
                .collect::<Vec<_>>(),
            prod_big.terms().to_vec()
        );
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        proptest::collection::vec((-6i32..7, -9i64..10), 0..8)
            .prop_map(P::from_terms)
    }

    proptest! {
        #[test]
        fn bar_is_an_involution(a in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a);
        }

        #[test]
        fn bar_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }

        #[test]
        fn div_q_round_trips(a in arb_poly()) {
            let shifted = a.shifted(1).shifted(-a.min_exp().unwrap_or(0).min(0));
            prop_assume!(shifted.in_q_a_plus());
            let q = P::q();
            prop_assert_eq!(&shifted.exact_div_q().unwrap() * &q, shifted);
        }

        #[test]
        fn canonical_equality(a in arb_poly(), b in arb_poly()) {
            // (a + b) - b == a bit for bit, and mul distributes over add.
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            let c = p("q-q^-1");
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }

        #[test]
        fn rational_field_axioms(an in arb_poly(), bn in arb_poly()) {
            type R = RationalFn<BigInt>;
            prop_assume!(!bn.is_zero());
            let to_big = |p: &P| -> LaurentPoly<BigInt> {
                LaurentPoly::from_terms(p.terms().iter().map(|(e, c)| (*e, BigInt::from(*c))))
            };
            let x = R::new(to_big(&an), to_big(&bn)).unwrap();
            prop_assert_eq!(x.sub_ref(&x), R::zero());
            if !x.is_zero() {
                prop_assert_eq!(x.mul_ref(&x.inv().unwrap()), R::one());
            }
            prop_assert_eq!(x.bar().bar(), x);
        }
    }
}
