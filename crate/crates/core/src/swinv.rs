//! Seiberg-Witten invariants of the fiber sums `E(2) #_{T=F} E(1)` along the
//! family tori, their basic classes, and the non-isotopy report.
//!
//! The invariant lives in ℤ[ξ^±1, τ^±1, ζ^±1]; it is stored as a
//! [`LaurentPolynomial`] whose `x, s, t` slots hold the exponents of
//! `ξ, τ, ζ`. For ψ it is `ξ^-q τ^-m ζ^-(2k+q+m-3) Δ(ξ², τ², ζ²)` and for φ
//! the roles of `ξ` and `τ` are exchanged.
//!
//! `Δ` here is the link polynomial `det(I - x·Γ)`. The closed form can be
//! requested through [`sw_invariant_with`], but it only gives a symmetric
//! result where it equals the determinant.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::braidmatrix::DEFAULT_DIMENSION_CAP;
use crate::family::{
    delta_with, embed, term_count_formula, Embedding, EmbeddingKind, FamilyError, FamilyParams,
    Method,
};
use crate::laurent::{ExponentVector, LaurentPolynomial, Substitution, Var, VarNames};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SwError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("the Seiberg-Witten formula needs m ≥ 1, got m = {0}")]
    DegenerateM(u32),
    #[error("Seiberg-Witten polynomial for {params} ({embedding}) is not (anti)symmetric")]
    NotSymmetric {
        params: FamilyParams,
        embedding: EmbeddingKind,
    },
    #[error("no k values to compare")]
    EmptyKSet,
}

/// Behaviour under `(ξ, τ, ζ) ↦ (ξ⁻¹, τ⁻¹, ζ⁻¹)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

impl Parity {
    pub fn sign(self) -> i64 {
        match self {
            Parity::Symmetric => 1,
            Parity::Antisymmetric => -1,
        }
    }
}

/// Returns the parity when `invert_variables(p) = ±p`.
pub fn parity(p: &LaurentPolynomial) -> Option<Parity> {
    let inverted = p.invert_variables();
    if inverted == *p {
        Some(Parity::Symmetric)
    } else if inverted == -p {
        Some(Parity::Antisymmetric)
    } else {
        None
    }
}

/// Shifts `p` by the monomial that centers its support at the origin, when
/// that monomial is integral and the result is (anti)symmetric.
pub fn center_support(p: &LaurentPolynomial) -> Option<(LaurentPolynomial, Parity)> {
    let mut shift = ExponentVector::ZERO;
    for v in Var::ALL {
        let (lo, hi) = p.degree_range(v)?;
        if (lo + hi).is_odd() {
            return None;
        }
        shift.set(v, -(lo + hi) / 2);
    }
    let centered = p.shift(shift);
    let par = parity(&centered)?;
    Some((centered, par))
}

/// The Seiberg-Witten invariant of one fiber sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwInvariant {
    poly: LaurentPolynomial,
    parity: Parity,
}

impl SwInvariant {
    pub fn polynomial(&self) -> &LaurentPolynomial {
        &self.poly
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn basic_class_count(&self) -> usize {
        self.poly.term_count()
    }

    pub fn render(&self) -> String {
        self.poly.render_with(VarNames::XI_TAU_ZETA)
    }
}

impl fmt::Display for SwInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Monomial prefactor `(ξ-exp, τ-exp, ζ-exp)` that symmetrizes the squared
/// Alexander polynomial.
fn prefactor(p: &FamilyParams, kind: EmbeddingKind) -> ExponentVector {
    let (q, k, m) = (p.q() as i64, p.k() as i64, p.m() as i64);
    let zeta = -(2 * k + q + m - 3);
    match kind {
        EmbeddingKind::Psi => ExponentVector::new(-q, -m, zeta),
        EmbeddingKind::Phi => ExponentVector::new(-m, -q, zeta),
    }
}

pub fn sw_invariant(p: &FamilyParams, e: &Embedding) -> Result<SwInvariant, SwError> {
    sw_invariant_with(p, e, Method::Determinant, DEFAULT_DIMENSION_CAP)
}

/// Like [`sw_invariant`], with an explicit evaluation route for `Δ`.
///
/// Fails with [`SwError::NotSymmetric`] if the symmetrized polynomial is
/// not invariant (up to sign) under inverting the variables.
pub fn sw_invariant_with(
    p: &FamilyParams,
    e: &Embedding,
    method: Method,
    cap: usize,
) -> Result<SwInvariant, SwError> {
    if p.m() == 0 {
        return Err(SwError::DegenerateM(p.m()));
    }
    let poly = embed(delta_with(p, method, cap)?, e)
        .substitute(&Substitution::power(2))
        .shift(prefactor(p, e.kind()));
    let parity = parity(&poly).ok_or(SwError::NotSymmetric {
        params: *p,
        embedding: e.kind(),
    })?;
    Ok(SwInvariant { poly, parity })
}

/// Classes with nonzero Seiberg-Witten coefficient, in graded-lex order.
pub fn basic_classes(sw: &SwInvariant) -> Vec<(ExponentVector, BigInt)> {
    sw.poly.terms().map(|(e, c)| (*e, c.clone())).collect()
}

/// `fiber_coeff·[F] + rim_coeff·[R_rim]` in `H_2(E(2); ℤ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyClass {
    #[serde(rename = "F")]
    pub fiber_coeff: i64,
    #[serde(rename = "R")]
    pub rim_coeff: i64,
    #[serde(skip)]
    pub rim_index: u8,
    pub primitive: bool,
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = if self.rim_index == 1 { '₁' } else { '₂' };
        write!(f, "{}[F]+{}[R{}]", self.fiber_coeff, self.rim_coeff, sub)
    }
}

/// Class of the torus built from `(q, m)`: `q[F]+m[R_i]` for φ and
/// `m[F]+q[R_i]` for ψ.
pub fn homology_class(q: u32, m: u32, e: &Embedding) -> Result<HomologyClass, SwError> {
    if q < 2 {
        return Err(FamilyError::InvalidParams(format!("q must be at least 2, got {q}")).into());
    }
    if m < 1 {
        return Err(SwError::DegenerateM(m));
    }
    let (fiber_coeff, rim_coeff) = match e.kind() {
        EmbeddingKind::Phi => (q as i64, m as i64),
        EmbeddingKind::Psi => (m as i64, q as i64),
    };
    Ok(HomologyClass {
        fiber_coeff,
        rim_coeff,
        rim_index: e.rim(),
        primitive: fiber_coeff.gcd(&rim_coeff) == 1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "pairwise-non-isotopic")]
    PairwiseNonIsotopic,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::PairwiseNonIsotopic => "pairwise-non-isotopic",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinguishRow {
    pub k: u32,
    pub basic_classes: u64,
    /// `6 - 4q + 2k(m+1)(q-1)`, for comparison.
    #[serde(skip)]
    pub formula_count: u64,
    #[serde(serialize_with = "serialize_sw")]
    pub sw: SwInvariant,
}

fn serialize_sw<S: serde::Serializer>(sw: &SwInvariant, s: S) -> Result<S::Ok, S::Error> {
    sw.poly.serialize(s)
}

fn serialize_kind<S: serde::Serializer>(kind: &EmbeddingKind, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(kind.name())
}

/// Per-`k` basic-class counts for fixed `(q, m, embedding)` and the verdict
/// they support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinguishReport {
    pub q: u32,
    pub m: u32,
    #[serde(serialize_with = "serialize_kind")]
    pub embedding: EmbeddingKind,
    pub rim: u8,
    pub homology: HomologyClass,
    pub rows: Vec<DistinguishRow>,
    pub verdict: Verdict,
}

impl DistinguishReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    pub fn counts(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.basic_classes).collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "q = {}, m = {}, embedding = {}, rim = {}\n",
            self.q, self.m, self.embedding, self.rim
        );
        out.push_str(&format!(
            "homology: {} ({})\n",
            self.homology,
            if self.homology.primitive {
                "primitive"
            } else {
                "not primitive"
            }
        ));
        for row in &self.rows {
            out.push_str(&format!(
                "k = {}: {} basic classes",
                row.k, row.basic_classes
            ));
            if row.formula_count != row.basic_classes {
                out.push_str(&format!(" (closed-form count {})", row.formula_count));
            }
            out.push('\n');
        }
        let note = match (self.verdict, self.rows.len()) {
            (Verdict::PairwiseNonIsotopic, 1) => "trivially distinct (one member)",
            (Verdict::PairwiseNonIsotopic, _) => {
                "pairwise distinct counts => pairwise non-diffeomorphic fiber sums => pairwise non-isotopic tori"
            }
            (Verdict::Inconclusive, _) => "repeated basic-class counts",
        };
        out.push_str(&format!("verdict: {} ({note})\n", self.verdict.as_str()));
        out
    }
}

/// Computes the invariant for every `k` and compares basic-class counts.
pub fn distinguish(
    q: u32,
    m: u32,
    k_values: &BTreeSet<u32>,
    e: &Embedding,
) -> Result<DistinguishReport, SwError> {
    if k_values.is_empty() {
        return Err(SwError::EmptyKSet);
    }
    let homology = homology_class(q, m, e)?;
    let ks: Vec<u32> = k_values.iter().copied().collect();
    let rows = ks
        .par_iter()
        .map(|&k| {
            let p = FamilyParams::new(q, k, m)?;
            let sw = sw_invariant(&p, e)?;
            Ok(DistinguishRow {
                k,
                basic_classes: sw.basic_class_count() as u64,
                formula_count: term_count_formula(&p).expect("m ≥ 1 checked above"),
                sw,
            })
        })
        .collect::<Result<Vec<_>, SwError>>()?;
    let distinct: BTreeSet<u64> = rows.iter().map(|r| r.basic_classes).collect();
    let verdict = if distinct.len() == rows.len() {
        Verdict::PairwiseNonIsotopic
    } else {
        Verdict::Inconclusive
    };
    Ok(DistinguishReport {
        q,
        m,
        embedding: e.kind(),
        rim: e.rim(),
        homology,
        rows,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{delta_closed, delta_det, delta_embedded};
    use crate::laurent::LaurentPolynomial as P;

    fn params(q: u32, k: u32, m: u32) -> FamilyParams {
        FamilyParams::new(q, k, m).unwrap()
    }

    #[test]
    fn sw_examples() {
        let p = params(2, 1, 1);
        let psi = sw_invariant(&p, &Embedding::psi()).unwrap();
        assert_eq!(
            *psi.polynomial(),
            P::from_terms([((-2, -1, -2), 1), ((2, 1, 2), -1)])
        );
        assert_eq!(psi.render(), "ξ^-2*τ^-1*ζ^-2 - ξ^2*τ*ζ^2");
        assert_eq!(psi.parity(), Parity::Antisymmetric);
        assert_eq!(psi.polynomial().invert_variables(), -psi.polynomial());

        let phi = sw_invariant(&p, &Embedding::phi()).unwrap();
        assert_eq!(
            *phi.polynomial(),
            P::from_terms([((-1, -2, -2), 1), ((1, 2, 2), -1)])
        );
        assert_eq!(phi.parity(), Parity::Antisymmetric);
    }

    #[test]
    fn sw_rejects_m_zero() {
        assert_eq!(
            sw_invariant(&params(3, 1, 0), &Embedding::psi()),
            Err(SwError::DegenerateM(0))
        );
    }

    #[test]
    fn basic_class_examples() {
        let zero = SwInvariant {
            poly: P::zero(),
            parity: Parity::Symmetric,
        };
        assert!(basic_classes(&zero).is_empty());
        let sw = sw_invariant(&params(2, 1, 1), &Embedding::psi()).unwrap();
        assert_eq!(
            basic_classes(&sw),
            vec![
                (ExponentVector::new(-2, -1, -2), BigInt::from(1)),
                (ExponentVector::new(2, 1, 2), BigInt::from(-1)),
            ]
        );
        let sw = sw_invariant(&params(2, 2, 1), &Embedding::psi()).unwrap();
        assert_eq!(basic_classes(&sw).len(), 6);
    }

    #[test]
    fn prefactor_matches_generic_centering() {
        for (q, k, m) in [(2, 1, 1), (3, 2, 1), (4, 3, 2), (5, 1, 4)] {
            let p = params(q, k, m);
            for e in [Embedding::psi(), Embedding::phi()] {
                let squared = embed(delta_det(&p).unwrap(), &e).substitute(&Substitution::power(2));
                let (centered, par) = center_support(&squared).expect("centerable");
                let sw = sw_invariant(&p, &e).unwrap();
                assert_eq!(centered, *sw.polynomial());
                assert_eq!(par, sw.parity());
            }
        }
        // odd width cannot be centered on the lattice
        assert_eq!(center_support(&(&P::one() - &P::x())), None);
        assert_eq!(center_support(&P::zero()), None);
    }

    #[test]
    fn homology_examples() {
        let h = homology_class(2, 1, &Embedding::phi()).unwrap();
        assert_eq!(
            (h.fiber_coeff, h.rim_coeff, h.rim_index, h.primitive),
            (2, 1, 1, true)
        );
        assert_eq!(h.to_string(), "2[F]+1[R₁]");
        let h = homology_class(2, 1, &Embedding::psi()).unwrap();
        assert_eq!(h.to_string(), "1[F]+2[R₁]");
        assert!(h.primitive);
        let h = homology_class(4, 2, &Embedding::new(EmbeddingKind::Phi, 2).unwrap()).unwrap();
        assert_eq!(h.to_string(), "4[F]+2[R₂]");
        assert!(!h.primitive);
        assert!(homology_class(1, 1, &Embedding::psi()).is_err());
        assert!(homology_class(2, 0, &Embedding::psi()).is_err());
    }

    #[test]
    fn distinguish_examples() {
        let ks: BTreeSet<u32> = [1, 2, 3].into();
        let r = distinguish(2, 1, &ks, &Embedding::psi()).unwrap();
        assert_eq!(r.counts(), [2, 6, 10]);
        assert_eq!(r.verdict, Verdict::PairwiseNonIsotopic);

        // the determinant gives 12 basic classes at k = 2, the closed form 10
        let r = distinguish(3, 1, &[1, 2].into(), &Embedding::psi()).unwrap();
        assert_eq!(r.counts(), [2, 12]);
        assert_eq!(r.verdict, Verdict::PairwiseNonIsotopic);

        let r = distinguish(2, 1, &[1].into(), &Embedding::psi()).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.verdict, Verdict::PairwiseNonIsotopic);
        assert!(r.render_text().contains("trivially distinct"));

        assert_eq!(
            distinguish(2, 1, &BTreeSet::new(), &Embedding::psi()),
            Err(SwError::EmptyKSet)
        );
        assert!(distinguish(2, 0, &ks, &Embedding::psi()).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = distinguish(2, 1, &[1].into(), &Embedding::psi()).unwrap();
        assert_eq!(
            r.to_json(),
            concat!(
                r#"{"q":2,"m":1,"embedding":"psi","rim":1,"#,
                r#""homology":{"F":1,"R":2,"primitive":true},"#,
                r#""rows":[{"k":1,"basic_classes":2,"sw":{"terms":[{"c":"1","x":-2,"s":-1,"t":-2},{"c":"-1","x":2,"s":1,"t":2}]}}],"#,
                r#""verdict":"pairwise-non-isotopic"}"#
            )
        );
    }

    #[test]
    fn count_preserved_by_squaring_and_prefactor() {
        let p = params(4, 2, 3);
        let sw = sw_invariant(&p, &Embedding::phi()).unwrap();
        assert_eq!(sw.basic_class_count(), delta_det(&p).unwrap().term_count());
    }

    #[test]
    fn closed_form_route_agrees_where_it_is_the_determinant() {
        for (q, k, m) in [(2, 3, 2), (4, 1, 3)] {
            let p = params(q, k, m);
            for e in [Embedding::psi(), Embedding::phi()] {
                let closed = sw_invariant_with(&p, &e, Method::ClosedForm, 16).unwrap();
                assert_eq!(closed, sw_invariant(&p, &e).unwrap());
            }
        }
    }

    #[test]
    fn symmetry_check_rejects_closed_form_beyond_two_strands() {
        let p = params(3, 2, 1);
        assert_eq!(
            sw_invariant_with(&p, &Embedding::psi(), Method::ClosedForm, 16),
            Err(SwError::NotSymmetric {
                params: p,
                embedding: EmbeddingKind::Psi
            })
        );
        // the closed-form count is the formula's, the determinant's is not
        assert_eq!(delta_closed(&p).term_count(), 10);
        assert_eq!(delta_embedded(&p, &Embedding::psi()).term_count(), 10);
        let r = distinguish(3, 1, &[2].into(), &Embedding::psi()).unwrap();
        assert_eq!(r.rows[0].basic_classes, 12);
        assert_eq!(r.rows[0].formula_count, 10);
        assert!(r
            .render_text()
            .contains("12 basic classes (closed-form count 10)"));
    }
}
