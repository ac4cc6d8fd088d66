//! The braid family `B(q;k,m)` and its three-variable Alexander polynomial
//! `Δ_{q;k,m}(x,s,t)`.
//!
//! `Δ` is available two ways: as `det(I - x·Γ_{q;k,m})` from the colored
//! word, and from the closed form
//!
//! ```text
//! Δ = 1 - x(st)^m + x·G(xt, q-1)·[ t^(2k-1) + (s-1)t·G(-t, 2k-1)·G(st, m) - x(st)^m t^(2k-1) ]
//! ```
//!
//! where `G(u, n) = 1 + u + … + u^(n-1)` is [`LaurentPolynomial::geometric_sum`].
//! The two routes are independent and are checked against each other.
//! They agree whenever `q = 2` or `k = 1`. For `q ≥ 3, k ≥ 2` the closed
//! form is not the determinant (and not symmetric under inverting the
//! variables), so the determinant is the one to use as the link polynomial.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::braidmatrix::{
    char_det_capped, word_matrix, BraidError, BraidLetter, ColoredBraidWord, PolyMatrix,
    DEFAULT_DIMENSION_CAP,
};
use crate::laurent::{ExponentVector, LaurentPolynomial, Substitution, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("rim index must be 1 or 2, got {0}")]
    InvalidRim(u8),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Parameters `(q, k, m)` of `B(q;k,m)` with `q ≥ 2`, `k ≥ 1`, `m ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    q: u32,
    k: u32,
    m: u32,
}

impl FamilyParams {
    pub fn new(q: u32, k: u32, m: u32) -> Result<Self, FamilyError> {
        if q < 2 {
            return Err(FamilyError::InvalidParams(format!(
                "q must be at least 2, got {q}"
            )));
        }
        if k < 1 {
            return Err(FamilyError::InvalidParams(format!(
                "k must be at least 1, got {k}"
            )));
        }
        Ok(FamilyParams { q, k, m })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `(q+1, k, m)`.
    pub fn next_q(&self) -> Self {
        FamilyParams {
            q: self.q + 1,
            ..*self
        }
    }

    /// `(q-1, k, m)`, if that is still a valid member.
    pub fn prev_q(&self) -> Option<Self> {
        FamilyParams::new(self.q - 1, self.k, self.m).ok()
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q={}, k={}, m={})", self.q, self.k, self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EmbeddingKind {
    Phi,
    Psi,
}

impl EmbeddingKind {
    pub fn name(self) -> &'static str {
        match self {
            EmbeddingKind::Phi => "phi",
            EmbeddingKind::Psi => "psi",
        }
    }
}

impl fmt::Display for EmbeddingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EmbeddingKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "phi" => Ok(EmbeddingKind::Phi),
            "psi" => Ok(EmbeddingKind::Psi),
            other => Err(format!("unknown embedding `{other}` (expected phi or psi)")),
        }
    }
}

/// Which embedding produced the torus, and which rim torus `R_1`/`R_2`
/// its homology class is written against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    kind: EmbeddingKind,
    rim: u8,
}

impl Embedding {
    pub fn new(kind: EmbeddingKind, rim: u8) -> Result<Self, FamilyError> {
        if rim != 1 && rim != 2 {
            return Err(FamilyError::InvalidRim(rim));
        }
        Ok(Embedding { kind, rim })
    }

    pub fn phi() -> Self {
        Embedding {
            kind: EmbeddingKind::Phi,
            rim: 1,
        }
    }

    pub fn psi() -> Self {
        Embedding {
            kind: EmbeddingKind::Psi,
            rim: 1,
        }
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn rim(&self) -> u8 {
        self.rim
    }
}

fn xt() -> LaurentPolynomial {
    LaurentPolynomial::monomial(1, (1, 0, 1))
}

fn st() -> LaurentPolynomial {
    LaurentPolynomial::monomial(1, (0, 1, 1))
}

fn st_pow(m: u32) -> LaurentPolynomial {
    LaurentPolynomial::monomial(1, (0, m as i64, m as i64))
}

fn t_pow(e: i64) -> LaurentPolynomial {
    LaurentPolynomial::monomial(1, (0, 0, e))
}

/// The colored word whose matrix is
/// `C_q(t) C_{q-1}(t) ⋯ C_3(t) · C_2(t)^(2k-1) · [C_1(s) C_1(t)]^m` on `q` strands.
pub fn family_word(p: &FamilyParams) -> ColoredBraidWord {
    let mut letters = Vec::new();
    letters.extend(
        (3..=p.q as usize)
            .rev()
            .map(|g| BraidLetter::new(g, Var::T)),
    );
    letters.extend(std::iter::repeat_n(
        BraidLetter::new(2, Var::T),
        2 * p.k as usize - 1,
    ));
    for _ in 0..p.m {
        letters.push(BraidLetter::new(1, Var::S));
        letters.push(BraidLetter::new(1, Var::T));
    }
    ColoredBraidWord::new(p.q as usize, letters).expect("family word letters are in range")
}

/// `Γ_{q;k,m}`.
pub fn family_gamma(p: &FamilyParams) -> PolyMatrix {
    word_matrix(&family_word(p)).expect("family word has no inverse letters")
}

/// Builds `Γ_{q+1}` from `Γ_q`: `Γ_q` in the top-left block, a `1` closing
/// row `q` in the new last column, and `t` times row `q` of `Γ_q` (with a
/// trailing `0`) as the new last row.
pub fn gamma_step(gamma: &PolyMatrix) -> PolyMatrix {
    let q = gamma.dim();
    let mut out = PolyMatrix::zeros(q + 1);
    for r in 0..q {
        for c in 0..q {
            out.set(r, c, gamma.get(r, c).clone());
        }
    }
    if q > 0 {
        out.set(q - 1, q, LaurentPolynomial::one());
        let t = LaurentPolynomial::t();
        for c in 0..q {
            out.set(q, c, gamma.get(q - 1, c) * &t);
        }
    }
    out
}

/// How `Δ_{q;k,m}` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Determinant,
    ClosedForm,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "det" => Ok(Method::Determinant),
            "closed" => Ok(Method::ClosedForm),
            other => Err(format!("unknown method `{other}` (expected det or closed)")),
        }
    }
}

pub fn delta_with(
    p: &FamilyParams,
    method: Method,
    cap: usize,
) -> Result<LaurentPolynomial, FamilyError> {
    match method {
        Method::Determinant => delta_det_capped(p, cap),
        Method::ClosedForm => Ok(delta_closed(p)),
    }
}

/// `Δ_{q;k,m}` as `det(I - x·Γ_{q;k,m})`.
pub fn delta_det(p: &FamilyParams) -> Result<LaurentPolynomial, FamilyError> {
    delta_det_capped(p, DEFAULT_DIMENSION_CAP)
}

pub fn delta_det_capped(p: &FamilyParams, cap: usize) -> Result<LaurentPolynomial, FamilyError> {
    Ok(char_det_capped(&family_gamma(p), Var::X, cap)?)
}

/// `Δ_{1;k,m} = 1 - x(st)^m`, the seed of the recursion in `q`. It is not
/// the polynomial of any member of the family.
pub fn delta_seed(m: u32) -> LaurentPolynomial {
    &LaurentPolynomial::one() - &st_pow(m).shift(ExponentVector::unit(Var::X))
}

/// `P_{k,m}(s,t) = t^(2k-1) + (s-1)t·G(st, m)·G(-t, 2k-1)`.
pub fn p_poly(k: u32, m: u32) -> LaurentPolynomial {
    let odd = 2 * k as i64 - 1;
    let s_minus_one = &LaurentPolynomial::s() - &LaurentPolynomial::one();
    let alternating = LaurentPolynomial::geometric_sum(&-LaurentPolynomial::t(), odd as u32);
    let second = &(&s_minus_one.shift(ExponentVector::unit(Var::T))
        * &LaurentPolynomial::geometric_sum(&st(), m))
        * &alternating;
    &t_pow(odd) + &second
}

/// `P_{k,m} - x(st)^m t^(2k-1)`, the bracket shared by `Δ` and `D`.
fn bracket(k: u32, m: u32) -> LaurentPolynomial {
    let top = LaurentPolynomial::monomial(1, (1, m as i64, m as i64 + 2 * k as i64 - 1));
    &p_poly(k, m) - &top
}

/// `Δ_{q;k,m}` from the closed form.
pub fn delta_closed(p: &FamilyParams) -> LaurentPolynomial {
    let x = ExponentVector::unit(Var::X);
    let tail = &LaurentPolynomial::geometric_sum(&xt(), p.q - 1) * &bracket(p.k, p.m);
    &delta_seed(p.m) + &tail.shift(x)
}

/// `D_{q;k,m} = Δ_{q+1;k,m} - Δ_{q;k,m} = (xt)^(q-1)·x·[P_{k,m} - x(st)^m t^(2k-1)]`
/// for `q ≥ 1` (with `Δ_1` the seed).
pub fn d_poly(q: u32, k: u32, m: u32) -> Result<LaurentPolynomial, FamilyError> {
    if q < 1 || k < 1 {
        return Err(FamilyError::InvalidParams(format!(
            "D needs q ≥ 1 and k ≥ 1, got q={q}, k={k}"
        )));
    }
    let shift = ExponentVector::new(q as i64, 0, q as i64 - 1);
    Ok(bracket(k, m).shift(shift))
}

/// Closed-form count `6 - 4q + 2k(m+1)(q-1)` of nonzero terms of `Δ`.
/// Only stated for `m ≥ 1`; `None` for the `m = 0` members.
pub fn term_count_formula(p: &FamilyParams) -> Option<u64> {
    if p.m == 0 {
        return None;
    }
    let (q, k, m) = (p.q as i64, p.k as i64, p.m as i64);
    Some((6 - 4 * q + 2 * k * (m + 1) * (q - 1)) as u64)
}

/// Number of nonzero terms of `Δ`: the formula when it applies, a direct
/// count otherwise.
pub fn term_count(p: &FamilyParams) -> u64 {
    term_count_formula(p).unwrap_or_else(|| delta_closed(p).term_count() as u64)
}

/// The closed-form polynomial for the chosen embedding: `Δ(x,s,t)` for ψ,
/// `Δ(s,x,t)` for φ.
pub fn delta_embedded(p: &FamilyParams, e: &Embedding) -> LaurentPolynomial {
    embed(delta_closed(p), e)
}

/// Relabels `Δ(x,s,t)` for the embedding: unchanged for ψ, `x ↔ s` for φ.
pub fn embed(delta: LaurentPolynomial, e: &Embedding) -> LaurentPolynomial {
    match e.kind {
        EmbeddingKind::Psi => delta,
        EmbeddingKind::Phi => delta.substitute(&Substitution::swap(Var::X, Var::S)),
    }
}
