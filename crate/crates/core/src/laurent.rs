//! Sparse Laurent polynomials over ℤ in the three variables `x`, `s`, `t`.
//!
//! Terms are kept in a map from exponent vectors to nonzero arbitrary
//! precision coefficients; every operation returns a canonical value, so
//! structural equality is ring equality. The same type carries the
//! Seiberg-Witten invariants, whose variables `ξ, τ, ζ` are a renaming of
//! `x, s, t` (see [`VarNames`]).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// One of the three ring variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    S,
    T,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::S, Var::T];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::S => "s",
            Var::T => "t",
        }
    }

    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::S => 1,
            Var::T => 2,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Var {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" => Ok(Var::X),
            "s" => Ok(Var::S),
            "t" => Ok(Var::T),
            other => Err(format!("unknown variable `{other}` (expected x, s or t)")),
        }
    }
}

/// Exponents of `x`, `s`, `t` in a monomial. Addition is the monomial
/// product; the zero vector is the monomial `1`.
///
/// Ordered graded-lexicographically: total degree first, then `x`, `s`, `t`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    pub x: i64,
    pub s: i64,
    pub t: i64,
}

impl ExponentVector {
    pub const ZERO: ExponentVector = ExponentVector { x: 0, s: 0, t: 0 };

    pub const fn new(x: i64, s: i64, t: i64) -> Self {
        ExponentVector { x, s, t }
    }

    /// Unit exponent vector of a single variable.
    pub fn unit(var: Var) -> Self {
        let mut e = Self::ZERO;
        e.set(var, 1);
        e
    }

    pub fn get(&self, var: Var) -> i64 {
        match var {
            Var::X => self.x,
            Var::S => self.s,
            Var::T => self.t,
        }
    }

    pub fn set(&mut self, var: Var, value: i64) {
        match var {
            Var::X => self.x = value,
            Var::S => self.s = value,
            Var::T => self.t = value,
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.x + self.s + self.t
    }

    pub fn scaled(&self, factor: i64) -> Self {
        ExponentVector::new(self.x * factor, self.s * factor, self.t * factor)
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    fn as_array(&self) -> [i64; 3] {
        [self.x, self.s, self.t]
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.x.cmp(&other.x))
            .then(self.s.cmp(&other.s))
            .then(self.t.cmp(&other.t))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExponentVector {
    type Output = ExponentVector;

    fn add(self, rhs: Self) -> Self {
        ExponentVector::new(self.x + rhs.x, self.s + rhs.s, self.t + rhs.t)
    }
}

impl Sub for ExponentVector {
    type Output = ExponentVector;

    fn sub(self, rhs: Self) -> Self {
        ExponentVector::new(self.x - rhs.x, self.s - rhs.s, self.t - rhs.t)
    }
}

impl Neg for ExponentVector {
    type Output = ExponentVector;

    fn neg(self) -> Self {
        ExponentVector::new(-self.x, -self.s, -self.t)
    }
}

impl From<(i64, i64, i64)> for ExponentVector {
    fn from((x, s, t): (i64, i64, i64)) -> Self {
        ExponentVector::new(x, s, t)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("invalid substitution for {var}: {reason}")]
    InvalidSubstitution { var: Var, reason: &'static str },
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// Printable names for the three variable slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarNames(pub [&'static str; 3]);

impl VarNames {
    pub const XST: VarNames = VarNames(["x", "s", "t"]);
    /// The classes `ξ, τ, ζ` carried by Seiberg-Witten invariants.
    pub const XI_TAU_ZETA: VarNames = VarNames(["ξ", "τ", "ζ"]);
}

impl Default for VarNames {
    fn default() -> Self {
        VarNames::XST
    }
}

/// An element of ℤ[x^±1, s^±1, t^±1] in canonical sparse form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, ExponentVector::ZERO)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, ExponentVector::ZERO)
    }

    /// `c · x^ex s^es t^et`; the zero polynomial when `c = 0`.
    pub fn monomial(c: impl Into<BigInt>, e: impl Into<ExponentVector>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e.into(), c);
        }
        LaurentPolynomial { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(1, ExponentVector::unit(v))
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn s() -> Self {
        Self::var(Var::S)
    }

    pub fn t() -> Self {
        Self::var(Var::T)
    }

    /// Builds a polynomial from arbitrary terms, merging repeated exponents
    /// and dropping zero coefficients.
    pub fn from_terms<I, E, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (E, C)>,
        E: Into<ExponentVector>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e.into()).or_default() += c.into();
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPolynomial { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ExponentVector::ZERO)
                .is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// The single term of a monomial, or `None` for zero and multi-term
    /// polynomials.
    pub fn as_monomial(&self) -> Option<(ExponentVector, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// Smallest and largest exponent of `var` over the support.
    pub fn degree_range(&self, var: Var) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e.get(var));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// Coefficient of `var^power`, as a polynomial in the remaining variables.
    pub fn coefficient_in(&self, var: Var, power: i64) -> LaurentPolynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.get(var) == power)
            .map(|(e, c)| {
                let mut e = *e;
                e.set(var, 0);
                (e, c.clone())
            })
            .collect();
        LaurentPolynomial { terms }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPolynomial {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, v)| (*e, v * c)).collect();
        LaurentPolynomial { terms }
    }

    /// Multiplies by the unit monomial `x^e.x s^e.s t^e.t`.
    pub fn shift(&self, e: ExponentVector) -> LaurentPolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (*k + e, v.clone()))
            .collect();
        LaurentPolynomial { terms }
    }

    pub fn pow(&self, mut n: u32) -> LaurentPolynomial {
        let mut result = Self::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `Σ_{i=0}^{n-1} base^i`; zero when `n = 0`.
    pub fn geometric_sum(base: &LaurentPolynomial, n: u32) -> LaurentPolynomial {
        let mut acc = Self::zero();
        let mut power = Self::one();
        for i in 0..n {
            acc += &power;
            if i + 1 < n {
                power = &power * base;
            }
        }
        acc
    }

    /// Negates every exponent vector: `p(x, s, t) ↦ p(1/x, 1/s, 1/t)`.
    pub fn invert_variables(&self) -> LaurentPolynomial {
        let terms = self.terms.iter().map(|(e, c)| (-*e, c.clone())).collect();
        LaurentPolynomial { terms }
    }

    pub fn substitute(&self, sub: &Substitution) -> LaurentPolynomial {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let (image, negate) = sub.apply(e);
            (image, if negate { -c } else { c.clone() })
        }))
    }

    pub fn render(&self) -> String {
        self.render_with(VarNames::XST)
    }

    /// Deterministic text form: graded-lex ascending, `*` between factors,
    /// `^` for exponents other than 1.
    pub fn render_with(&self, names: VarNames) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = c.abs();
            let factors: Vec<String> = e
                .as_array()
                .iter()
                .zip(names.0)
                .filter(|(d, _)| **d != 0)
                .map(|(d, name)| {
                    if *d == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{d}")
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&magnitude.to_string());
            } else {
                if !magnitude.is_one() {
                    out.push_str(&magnitude.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Compact JSON form, `{"terms":[{"c":"<int>","x":ex,"s":es,"t":et},...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial JSON serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, LaurentError> {
        serde_json::from_str(text).map_err(|e| LaurentError::Json(e.to_string()))
    }

    fn add_into(&mut self, rhs: &LaurentPolynomial, negate: bool) {
        for (e, c) in &rhs.terms {
            let slot = self.terms.entry(*e).or_default();
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
            if slot.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    fn mul_ref(&self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some((e, c)) = rhs.as_monomial() {
            return self.shift(e).scale(c);
        }
        if let Some((e, c)) = self.as_monomial() {
            return rhs.shift(e).scale(c);
        }
        let mut products: Vec<(ExponentVector, BigInt)> =
            Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                products.push((*ea + *eb, ca * cb));
            }
        }
        products.sort_unstable_by_key(|a| a.0);
        let mut terms = BTreeMap::new();
        let mut iter = products.into_iter();
        let Some((mut cur_e, mut cur_c)) = iter.next() else {
            return Self::zero();
        };
        for (e, c) in iter {
            if e == cur_e {
                cur_c += c;
            } else {
                if !cur_c.is_zero() {
                    terms.insert(cur_e, cur_c);
                }
                cur_e = e;
                cur_c = c;
            }
        }
        if !cur_c.is_zero() {
            terms.insert(cur_e, cur_c);
        }
        LaurentPolynomial { terms }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        LaurentPolynomial::constant(c)
    }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        big.add_into(small, false);
        big
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out.add_into(rhs, true);
        out
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.mul_ref(rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        LaurentPolynomial { terms }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(mut self) -> LaurentPolynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $tr<&'a LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(rhs)
            }
        }

        impl<'a> $tr<LaurentPolynomial> for &'a LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        self.add_into(rhs, false);
    }
}

impl AddAssign<LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: LaurentPolynomial) {
        self.add_into(&rhs, false);
    }
}

impl SubAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial) {
        self.add_into(rhs, true);
    }
}

impl SubAssign<LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, rhs: LaurentPolynomial) {
        self.add_into(&rhs, true);
    }
}

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl std::iter::Product for LaurentPolynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| &acc * &p)
    }
}

/// A ring endomorphism sending each variable to `±` a monomial.
///
/// This covers the variable swaps and the squaring map used for the
/// Seiberg-Witten invariants; the image of a term `c·x^a s^b t^c` is
/// read off from the integer matrix whose rows are the three images.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Substitution {
    images: [ExponentVector; 3],
    negate: [bool; 3],
}

impl Substitution {
    /// Validates that every replacement is a single term with coefficient
    /// `±1`.
    pub fn new(
        x: &LaurentPolynomial,
        s: &LaurentPolynomial,
        t: &LaurentPolynomial,
    ) -> Result<Self, LaurentError> {
        let mut images = [ExponentVector::ZERO; 3];
        let mut negate = [false; 3];
        for (var, p) in Var::ALL.into_iter().zip([x, s, t]) {
            if p.is_zero() {
                return Err(LaurentError::InvalidSubstitution {
                    var,
                    reason: "replacement is the zero polynomial",
                });
            }
            let (e, c) = p.as_monomial().ok_or(LaurentError::InvalidSubstitution {
                var,
                reason: "replacement must be a single monomial",
            })?;
            if !c.abs().is_one() {
                return Err(LaurentError::InvalidSubstitution {
                    var,
                    reason: "replacement coefficient must be a unit",
                });
            }
            images[var.index()] = e;
            negate[var.index()] = c.is_negative();
        }
        Ok(Substitution { images, negate })
    }

    /// Each variable goes to the unit-coefficient monomial with the given
    /// exponent vector.
    pub fn from_images(x: ExponentVector, s: ExponentVector, t: ExponentVector) -> Self {
        Substitution {
            images: [x, s, t],
            negate: [false; 3],
        }
    }

    pub fn identity() -> Self {
        Self::from_images(
            ExponentVector::unit(Var::X),
            ExponentVector::unit(Var::S),
            ExponentVector::unit(Var::T),
        )
    }

    /// Exchanges two variables.
    pub fn swap(a: Var, b: Var) -> Self {
        let mut sub = Self::identity();
        sub.images.swap(a.index(), b.index());
        sub
    }

    /// `v ↦ v^n` for every variable.
    pub fn power(n: i64) -> Self {
        let id = Self::identity();
        Self::from_images(
            id.images[0].scaled(n),
            id.images[1].scaled(n),
            id.images[2].scaled(n),
        )
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &Substitution) -> Substitution {
        let mut images = [ExponentVector::ZERO; 3];
        let mut negate = [false; 3];
        for i in 0..3 {
            let (e, n) = then.apply(&self.images[i]);
            images[i] = e;
            negate[i] = n ^ self.negate[i];
        }
        Substitution { images, negate }
    }

    fn apply(&self, e: &ExponentVector) -> (ExponentVector, bool) {
        let mut image = ExponentVector::ZERO;
        let mut negate = false;
        for (i, d) in e.as_array().into_iter().enumerate() {
            image = image + self.images[i].scaled(d);
            negate ^= self.negate[i] && d.rem_euclid(2) == 1;
        }
        (image, negate)
    }
}

/// Wire form of one term.
#[derive(Serialize, Deserialize)]
struct JsonTerm {
    c: String,
    x: i64,
    s: i64,
    t: i64,
}

#[derive(Serialize, Deserialize)]
struct JsonPolynomial {
    terms: Vec<JsonTerm>,
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = JsonPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| JsonTerm {
                    c: c.to_string(),
                    x: e.x,
                    s: e.s,
                    t: e.t,
                })
                .collect(),
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = JsonPolynomial::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(wire.terms.len());
        for term in wire.terms {
            let c: BigInt = term.c.parse().map_err(|_| {
                serde::de::Error::custom(format!("coefficient `{}` is not an integer", term.c))
            })?;
            terms.push((ExponentVector::new(term.x, term.s, term.t), c));
        }
        Ok(LaurentPolynomial::from_terms(terms))
    }
}
