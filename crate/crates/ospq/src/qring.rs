//! Exact arithmetic in the scalar ring of the whole construction: Laurent
//! polynomials and rational functions in `s = q^(1/2)` with arbitrary
//! precision rational coefficients.
//!
//! Working in `s` rather than `q` keeps every half-integer power of `q`
//! that appears in the operator tables inside a single Laurent ring, so
//! exact division and canonical forms are available throughout. `q` is the
//! alias `s^2`.

use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Arbitrary precision rational number.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QringError {
    /// Exact division was requested but the divisor does not divide the
    /// dividend in the Laurent ring. Usually signals a broken identity
    /// upstream rather than a local arithmetic problem.
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("division by zero")]
    DivisionByZero,
    /// Evaluation point is a zero of the denominator.
    #[error("pole at evaluation point")]
    PoleAtPoint,
    /// Text is not in the canonical rendering.
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    let b = if exp > 0 { base.clone() } else { base.recip() };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// Laurent polynomial in `s = q^(1/2)`: a finite sum of `c * s^e` terms
/// with nonzero rational `c` and integer `e` (possibly negative).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// `c * s^e`; the zero coefficient yields the zero polynomial.
    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// `s^e`.
    pub fn s_pow(e: i64) -> Self {
        LaurentPoly::monomial(Rat::one(), e)
    }

    /// `q^k = s^(2k)`.
    pub fn q_pow(k: i64) -> Self {
        LaurentPoly::s_pow(2 * k)
    }

    /// `q - q^(-1)`, the deformation factor multiplying every off-diagonal
    /// block of the R-matrix.
    pub fn q_minus_qinv() -> Self {
        &LaurentPoly::q_pow(1) - &LaurentPoly::q_pow(-1)
    }

    /// Symmetric q-integer `[t] = (q^t - q^(-t)) / (q - q^(-1))`.
    pub fn q_int(t: i64) -> Self {
        if t == 0 {
            return LaurentPoly::zero();
        }
        let a = t.abs();
        let mut p = LaurentPoly::zero();
        for i in 0..a {
            p = &p + &LaurentPoly::q_pow(a - 1 - 2 * i);
        }
        if t < 0 {
            p = -&p;
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.terms.iter()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.terms.values().next_back()
    }

    /// Multiply by `s^e`.
    pub fn shifted(&self, e: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Exact evaluation at a nonzero rational `s` value.
    pub fn eval(&self, s_value: &Rat) -> Result<Rat, QringError> {
        if s_value.is_zero() && self.min_exp().map_or(false, |e| e < 0) {
            return Err(QringError::PoleAtPoint);
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += c * rat_pow(s_value, *e);
        }
        Ok(acc)
    }

    /// Dense coefficient vector of the polynomial part after shifting the
    /// minimal exponent to zero. Returns `(shift, coeffs)`.
    fn to_dense(&self) -> (i64, Vec<Rat>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![Rat::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    v[(e - lo) as usize] = c.clone();
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }

    fn from_dense(shift: i64, v: &[Rat]) -> Self {
        LaurentPoly::from_terms(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (shift + i as i64, c.clone())),
        )
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        lp_multiply(self, rhs)
    }
}

/// Exact product of two Laurent polynomials.
pub fn lp_multiply(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            out.add_term(ea + eb, ca * cb);
        }
    }
    out
}

/// Dense polynomial division; returns `(quotient, remainder)`.
fn dense_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let dd = den.len() - 1;
    let lead = &den[dd];
    let mut rem: Vec<Rat> = num.to_vec();
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quo = vec![Rat::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let f = &rem[i] / lead;
        quo[i - dd] = f.clone();
        for (j, dc) in den.iter().enumerate() {
            let delta = &f * dc;
            rem[i - dd + j] -= delta;
        }
    }
    while rem.last().map_or(false, |c| c.is_zero()) {
        rem.pop();
    }
    (quo, rem)
}

/// Exact Laurent division: the unique `c` with `b * c = a`, or
/// `NotDivisible` when no such Laurent polynomial exists.
pub fn lp_exact_divide(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, QringError> {
    if b.is_zero() {
        return Err(QringError::DivisionByZero);
    }
    if a.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let (sa, da) = a.to_dense();
    let (sb, db) = b.to_dense();
    let (quo, rem) = dense_divmod(&da, &db);
    if !rem.is_empty() {
        return Err(QringError::NotDivisible(format!("{a} by {b}")));
    }
    Ok(LaurentPoly::from_dense(sa - sb, &quo))
}

/// Clear denominators and strip integer content; the sign makes the
/// leading coefficient positive.
fn dense_to_primitive_int(v: &[Rat]) -> Vec<num_bigint::BigInt> {
    use num_integer::Integer;
    let mut lcm = num_bigint::BigInt::from(1);
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let mut out: Vec<num_bigint::BigInt> =
        v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut content = num_bigint::BigInt::from(0);
    for c in &out {
        content = content.gcd(c);
    }
    if !content.is_zero() {
        let flip = out.last().map_or(false, |c| c.is_negative());
        if flip {
            content = -content;
        }
        for c in &mut out {
            *c /= &content;
        }
    }
    out
}

/// Pseudo-remainder of integer polynomials (`deg a >= deg b`, `b` nonzero).
fn int_prem(a: &[num_bigint::BigInt], b: &[num_bigint::BigInt]) -> Vec<num_bigint::BigInt> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r: Vec<num_bigint::BigInt> = a.to_vec();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let k = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &lr * bc;
        }
        while r.last().map_or(false, num_traits::Zero::is_zero) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

fn int_primitive(mut v: Vec<num_bigint::BigInt>) -> Vec<num_bigint::BigInt> {
    use num_integer::Integer;
    let mut content = num_bigint::BigInt::from(0);
    for c in &v {
        content = content.gcd(c);
    }
    if !content.is_zero() {
        if v.last().map_or(false, |c| c.is_negative()) {
            content = -content;
        }
        for c in &mut v {
            *c /= &content;
        }
    }
    v
}

/// Monic gcd of the polynomial parts (minimal exponents shifted away).
/// The unit `c * s^k` ambiguity is fixed by returning a monic polynomial
/// with nonzero constant term. Computed by the primitive pseudo-remainder
/// sequence over the integers, which keeps coefficients small.
pub fn lp_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return make_monic(b);
    }
    if b.is_zero() {
        return make_monic(a);
    }
    // a monomial shares only units with anything
    if a.terms.len() == 1 || b.terms.len() == 1 {
        return LaurentPoly::one();
    }
    let (_, xq) = a.to_dense();
    let (_, yq) = b.to_dense();
    let mut x = dense_to_primitive_int(&xq);
    let mut y = dense_to_primitive_int(&yq);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let rem = int_primitive(int_prem(&x, &y));
        x = y;
        y = rem;
    }
    let p = LaurentPoly::from_terms(
        x.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, Rat::from_integer(c.clone()))),
    );
    make_monic(&p)
}

fn make_monic(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return LaurentPoly::zero();
    }
    let shift = -p.min_exp().unwrap();
    let shifted = p.shifted(shift);
    let lc = shifted.leading_coeff().unwrap().clone();
    shifted.scaled(&lc.recip())
}

fn fmt_term(f: &mut fmt::Formatter<'_>, e: i64, mag: &Rat) -> fmt::Result {
    if e == 0 {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        write!(f, "{mag}*")?;
    }
    if e % 2 == 0 {
        let t = e / 2;
        if t == 1 {
            write!(f, "q")
        } else {
            write!(f, "q^{t}")
        }
    } else {
        write!(f, "q^({e}/2)")
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical rendering: terms in descending `s` exponent, even
    /// exponents printed as integer powers of `q`, odd ones as `q^(k/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            fmt_term(f, *e, &c.abs())?;
        }
        Ok(())
    }
}

/// Rational function in `s`, stored in canonical form: the denominator is a
/// monic polynomial with nonzero constant term and is coprime to the
/// numerator, so two values are equal iff their fields are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Canonicalising constructor, `n / d`.
    pub fn new(n: LaurentPoly, d: LaurentPoly) -> Result<RatFunc, QringError> {
        rf_normalize(n, d)
    }

    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn s_pow(e: i64) -> Self {
        RatFunc::from(LaurentPoly::s_pow(e))
    }

    pub fn q_pow(k: i64) -> Self {
        RatFunc::from(LaurentPoly::q_pow(k))
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from(LaurentPoly::constant(c))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den.is_one() && o.den.is_one() {
            return RatFunc {
                num: &self.num + &o.num,
                den: LaurentPoly::one(),
            };
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        let d = &self.den * &o.den;
        rf_normalize(n, d).expect("denominator product of nonzero denominators is nonzero")
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.den.is_one() && o.den.is_one() {
            return RatFunc {
                num: &self.num * &o.num,
                den: LaurentPoly::one(),
            };
        }
        rf_normalize(&self.num * &o.num, &self.den * &o.den)
            .expect("denominator product of nonzero denominators is nonzero")
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc, QringError> {
        if o.is_zero() {
            return Err(QringError::DivisionByZero);
        }
        rf_normalize(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn recip(&self) -> Result<RatFunc, QringError> {
        RatFunc::one().div(self)
    }

    pub fn scaled(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scaled(c),
            den: self.den.clone(),
        }
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }
}

/// Canonical form of `n / d`: the denominator becomes a monic polynomial
/// with nonzero constant term, coprime to the numerator; the leftover unit
/// `c * s^k` is absorbed into the numerator.
pub fn rf_normalize(n: LaurentPoly, d: LaurentPoly) -> Result<RatFunc, QringError> {
    if d.is_zero() {
        return Err(QringError::DivisionByZero);
    }
    if n.is_zero() {
        return Ok(RatFunc::zero());
    }
    // Unit denominator: absorb it into the numerator outright.
    if d.terms.len() == 1 {
        let (e, c) = d.terms.iter().next().map(|(e, c)| (*e, c.clone())).unwrap();
        return Ok(RatFunc {
            num: n.shifted(-e).scaled(&c.recip()),
            den: LaurentPoly::one(),
        });
    }
    // Shift the denominator to a polynomial with nonzero constant term;
    // the compensating unit multiplies the numerator.
    let shift = -d.min_exp().unwrap();
    let mut den = d.shifted(shift);
    let mut num = n.shifted(shift);
    let g = lp_gcd(&num, &den);
    if !g.is_one() {
        num = lp_exact_divide(&num, &g).expect("gcd divides");
        den = lp_exact_divide(&den, &g).expect("gcd divides");
    }
    let lc = den.leading_coeff().unwrap().clone();
    if !lc.is_one() {
        let inv = lc.recip();
        num = num.scaled(&inv);
        den = den.scaled(&inv);
    }
    Ok(RatFunc { num, den })
}

/// Exact rational value of `x` at `s = s_value`; `PoleAtPoint` when the
/// denominator vanishes there.
pub fn evaluate_at(x: &RatFunc, s_value: &Rat) -> Result<Rat, QringError> {
    let d = x.den.eval(s_value)?;
    if d.is_zero() {
        return Err(QringError::PoleAtPoint);
    }
    let n = x.num.eval(s_value)?;
    Ok(n / d)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

// ---- parsing the canonical rendering --------------------------------------

fn parse_term(text: &str) -> Result<(i64, Rat), QringError> {
    let bad = || QringError::Parse(text.to_string());
    let (coeff_text, q_text) = match text.split_once('*') {
        Some((c, q)) => (Some(c), q),
        None => (None, text),
    };
    if !q_text.starts_with('q') {
        // plain rational constant; a '*' without a q-part is malformed
        if coeff_text.is_some() {
            return Err(bad());
        }
        let c: Rat = q_text.trim().parse().map_err(|_| bad())?;
        return Ok((0, c));
    }
    let coeff: Rat = match coeff_text {
        None => Rat::one(),
        Some(c) => c.trim().parse().map_err(|_| bad())?,
    };
    let rest = &q_text[1..];
    let exp: i64 = if rest.is_empty() {
        2
    } else if let Some(r) = rest.strip_prefix("^(") {
        // half-integer exponent "q^(k/2)"
        let r = r.strip_suffix("/2)").ok_or_else(bad)?;
        r.parse().map_err(|_| bad())?
    } else if let Some(r) = rest.strip_prefix('^') {
        let t: i64 = r.parse().map_err(|_| bad())?;
        2 * t
    } else {
        return Err(bad());
    };
    Ok((exp, coeff))
}

impl std::str::FromStr for LaurentPoly {
    type Err = QringError;

    /// Parse the canonical rendering produced by `Display`.
    fn from_str(text: &str) -> Result<Self, QringError> {
        let text = text.trim();
        if text == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut out = LaurentPoly::zero();
        // split on " + " / " - " while honouring a leading sign
        let mut rest = text;
        let mut sign = Rat::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        }
        loop {
            let next = rest
                .find(" + ")
                .map(|i| (i, 1))
                .into_iter()
                .chain(rest.find(" - ").map(|i| (i, -1)))
                .min_by_key(|&(i, _)| i);
            let (term_text, advance) = match next {
                Some((i, s)) => (&rest[..i], Some((i + 3, s))),
                None => (rest, None),
            };
            let (e, c) = parse_term(term_text.trim())?;
            out.add_term(e, c * &sign);
            match advance {
                Some((off, s)) => {
                    sign = Rat::from_integer(s.into());
                    rest = &rest[off..];
                }
                None => break,
            }
        }
        Ok(out)
    }
}

impl std::str::FromStr for RatFunc {
    type Err = QringError;

    /// Parse `poly` or `(num)/(den)` in the canonical rendering.
    fn from_str(text: &str) -> Result<Self, QringError> {
        let text = text.trim();
        if let Some(body) = text.strip_prefix('(') {
            if let Some((num, den)) = body.split_once(")/(") {
                let den = den
                    .strip_suffix(')')
                    .ok_or_else(|| QringError::Parse(text.to_string()))?;
                return RatFunc::new(num.parse()?, den.parse()?);
            }
        }
        Ok(RatFunc::from(text.parse::<LaurentPoly>()?))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

/// `s^k` as an exact rational, for the numeric evaluation domain.
pub fn rat_s_pow(s: &Rat, k: i64) -> Rat {
    rat_pow(s, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn s() -> LaurentPoly {
        LaurentPoly::s_pow(1)
    }

    fn sinv() -> LaurentPoly {
        LaurentPoly::s_pow(-1)
    }

    #[test]
    fn multiply_difference_of_squares() {
        // (s - s^-1)(s + s^-1) = s^2 - s^-2
        let a = &s() - &sinv();
        let b = &s() + &sinv();
        let want = &LaurentPoly::s_pow(2) - &LaurentPoly::s_pow(-2);
        assert_eq!(lp_multiply(&a, &b), want);
    }

    #[test]
    fn multiply_zero_annihilates() {
        let p = &LaurentPoly::q_pow(3) + &LaurentPoly::constant(rat(7, 2));
        assert!(lp_multiply(&LaurentPoly::zero(), &p).is_zero());
    }

    #[test]
    fn multiply_q_alias() {
        // (q - q^-1)(q + q^-1) = q^2 - q^-2 with q = s^2
        let a = LaurentPoly::q_minus_qinv();
        let b = &LaurentPoly::q_pow(1) + &LaurentPoly::q_pow(-1);
        let want = &LaurentPoly::q_pow(2) - &LaurentPoly::q_pow(-2);
        assert_eq!(lp_multiply(&a, &b), want);
    }

    #[test]
    fn exact_divide_examples() {
        let qmq = LaurentPoly::q_minus_qinv();
        // (q^2 - 1) / (q - q^-1) = q
        let a = &LaurentPoly::q_pow(2) - &LaurentPoly::one();
        assert_eq!(lp_exact_divide(&a, &qmq).unwrap(), LaurentPoly::q_pow(1));
        // (q^-2 - 1) / (q - q^-1) = -q^-1
        let b = &LaurentPoly::q_pow(-2) - &LaurentPoly::one();
        assert_eq!(lp_exact_divide(&b, &qmq).unwrap(), -&LaurentPoly::q_pow(-1));
        // (q^2 + 1) is not divisible
        let c = &LaurentPoly::q_pow(2) + &LaurentPoly::one();
        assert!(matches!(
            lp_exact_divide(&c, &qmq),
            Err(QringError::NotDivisible(_))
        ));
        assert!(matches!(
            lp_exact_divide(&a, &LaurentPoly::zero()),
            Err(QringError::DivisionByZero)
        ));
    }

    #[test]
    fn normalize_examples() {
        let qmq = LaurentPoly::q_minus_qinv();
        // (q^2 - 1, q - q^-1) -> q/1
        let rf = rf_normalize(&LaurentPoly::q_pow(2) - &LaurentPoly::one(), qmq).unwrap();
        assert_eq!(rf, RatFunc::q_pow(1));
        assert!(rf.is_polynomial());
        // (2q, 2) -> q/1
        let rf = rf_normalize(
            LaurentPoly::monomial(rat(2, 1), 2),
            LaurentPoly::constant(rat(2, 1)),
        )
        .unwrap();
        assert_eq!(rf, RatFunc::q_pow(1));
        // (p, p) -> 1/1
        let p = &LaurentPoly::q_pow(3) + &LaurentPoly::monomial(rat(-5, 3), 1);
        assert_eq!(rf_normalize(p.clone(), p).unwrap(), RatFunc::one());
    }

    #[test]
    fn normalize_is_scale_invariant() {
        let a = &LaurentPoly::s_pow(3) + &LaurentPoly::constant(rat(1, 2));
        let b = &LaurentPoly::s_pow(-1) - &LaurentPoly::s_pow(2);
        let c = &LaurentPoly::q_pow(2) + &LaurentPoly::s_pow(-3);
        let plain = rf_normalize(a.clone(), b.clone()).unwrap();
        let scaled = rf_normalize(lp_multiply(&a, &c), lp_multiply(&b, &c)).unwrap();
        assert_eq!(plain, scaled);
    }

    #[test]
    fn evaluate_examples() {
        let one = Rat::one();
        // q - q^-1 at s = 1 is 0
        let x = RatFunc::from(LaurentPoly::q_minus_qinv());
        assert_eq!(evaluate_at(&x, &one).unwrap(), Rat::zero());
        // q at s = 2 is 4
        assert_eq!(
            evaluate_at(&RatFunc::q_pow(1), &rat(2, 1)).unwrap(),
            rat(4, 1)
        );
        // 1 / (q - q^-1) at s = 1 is a pole
        let inv = RatFunc::one().div(&x).unwrap();
        assert!(matches!(
            evaluate_at(&inv, &one),
            Err(QringError::PoleAtPoint)
        ));
    }

    #[test]
    fn rendering() {
        let p = &LaurentPoly::q_pow(2) - &LaurentPoly::q_pow(-2);
        assert_eq!(p.to_string(), "q^2 - q^-2");
        assert_eq!(LaurentPoly::s_pow(1).to_string(), "q^(1/2)");
        assert_eq!(LaurentPoly::s_pow(-3).to_string(), "q^(-3/2)");
        assert_eq!(LaurentPoly::q_pow(1).to_string(), "q");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::monomial(rat(-3, 2), 2).to_string(), "-3/2*q");
        let mixed = &LaurentPoly::constant(rat(1, 1)) - &LaurentPoly::monomial(rat(2, 1), -4);
        assert_eq!(mixed.to_string(), "1 - 2*q^-2");
    }

    #[test]
    fn q_int_values() {
        assert_eq!(LaurentPoly::q_int(0), LaurentPoly::zero());
        assert_eq!(LaurentPoly::q_int(1), LaurentPoly::one());
        let two = &LaurentPoly::q_pow(1) + &LaurentPoly::q_pow(-1);
        assert_eq!(LaurentPoly::q_int(2), two);
        assert_eq!(LaurentPoly::q_int(-2), -&LaurentPoly::q_int(2));
        // (q^t - q^-t) = [t] (q - q^-1)
        for t in -4..=4 {
            let lhs = &LaurentPoly::q_pow(t) - &LaurentPoly::q_pow(-t);
            assert_eq!(
                lhs,
                lp_multiply(&LaurentPoly::q_int(t), &LaurentPoly::q_minus_qinv())
            );
        }
    }
}
