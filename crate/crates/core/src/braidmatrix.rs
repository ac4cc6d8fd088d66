//! Colored braid words, their generator matrices `C_i(a)` and the
//! determinant `det(I - x·Γ)` of the word matrix `Γ`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::laurent::{LaurentPolynomial, Var};

/// Largest matrix dimension `determinant` accepts unless told otherwise.
pub const DEFAULT_DIMENSION_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("a braid word needs at least one strand")]
    NoStrands,
    #[error("generator {generator} is out of range for {strands} strands")]
    GeneratorOutOfRange { generator: usize, strands: usize },
    #[error("letter label must be s or t, got {0}")]
    InvalidLabel(Var),
    #[error("inverse letter at position {position} is not supported")]
    InverseLetter { position: usize },
    #[error("matrix dimension {dimension} exceeds the determinant cap {cap}")]
    DimensionCap { dimension: usize, cap: usize },
    #[error("matrix dimensions do not match ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("cannot parse braid word: {0}")]
    Parse(String),
}

/// One crossing `σ_i` (or `σ_i^{-1}`) colored by the variable `label`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub generator: usize,
    pub label: Var,
    pub inverse: bool,
}

impl BraidLetter {
    pub fn new(generator: usize, label: Var) -> Self {
        BraidLetter {
            generator,
            label,
            inverse: false,
        }
    }

    pub fn inverted(self) -> Self {
        BraidLetter {
            inverse: !self.inverse,
            ..self
        }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, self.generator)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

impl FromStr for BraidLetter {
    type Err = BraidError;

    fn from_str(token: &str) -> Result<Self, Self::Err> {
        let (body, inverse) = match token.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (token, false),
        };
        let mut chars = body.chars();
        let label = match chars.next() {
            Some('s') => Var::S,
            Some('t') => Var::T,
            _ => {
                return Err(BraidError::Parse(format!(
                    "letter `{token}` must start with s or t"
                )))
            }
        };
        let generator: usize = chars
            .as_str()
            .parse()
            .map_err(|_| BraidError::Parse(format!("letter `{token}` has no generator index")))?;
        Ok(BraidLetter {
            generator,
            label,
            inverse,
        })
    }
}

/// A braid word on `strands` strands whose letters carry a coloring
/// variable.
///
/// Generator indices run over `1..=strands`, matching the row index of the
/// `strands × strands` matrix `C_i(a)` the letter stands for; the last
/// index is the truncated boundary generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredBraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl ColoredBraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for letter in &letters {
            if letter.generator == 0 || letter.generator > strands {
                return Err(BraidError::GeneratorOutOfRange {
                    generator: letter.generator,
                    strands,
                });
            }
            if letter.label == Var::X {
                return Err(BraidError::InvalidLabel(letter.label));
            }
        }
        Ok(ColoredBraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for ColoredBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n: {}; w:", self.strands)?;
        for letter in &self.letters {
            write!(f, " {letter}")?;
        }
        Ok(())
    }
}

/// Parses `n: <strands>; w: s1 s1 t2 t2 ...`.
impl FromStr for ColoredBraidWord {
    type Err = BraidError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (head, tail) = text
            .split_once(';')
            .ok_or_else(|| BraidError::Parse("expected `n: <strands>; w: <letters>`".into()))?;
        let strands = head
            .trim()
            .strip_prefix("n:")
            .ok_or_else(|| BraidError::Parse("missing `n:` field".into()))?
            .trim()
            .parse::<usize>()
            .map_err(|e| BraidError::Parse(format!("bad strand count: {e}")))?;
        let letters = tail
            .trim()
            .strip_prefix("w:")
            .ok_or_else(|| BraidError::Parse("missing `w:` field".into()))?
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<BraidLetter>, _>>()?;
        ColoredBraidWord::new(strands, letters)
    }
}

/// Square matrix of Laurent polynomials, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<LaurentPolynomial>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![LaurentPolynomial::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = LaurentPolynomial::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPolynomial>>) -> Result<Self, BraidError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(BraidError::RaggedRows {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            entries.extend(r);
        }
        Ok(PolyMatrix { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at zero-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &LaurentPolynomial {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: LaurentPolynomial) {
        self.entries[row * self.n + col] = value;
    }

    pub fn row(&self, row: usize) -> &[LaurentPolynomial] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[LaurentPolynomial]> + '_ {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, BraidError> {
        if self.n != rhs.n {
            return Err(BraidError::DimensionMismatch(self.n, rhs.n));
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, BraidError> {
        if self.n != rhs.n {
            return Err(BraidError::DimensionMismatch(self.n, rhs.n));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(PolyMatrix { n: self.n, entries })
    }

    pub fn scale(&self, factor: &LaurentPolynomial) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> PolyMatrix {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = out.mul(self).expect("square matrix");
        }
        out
    }

    /// Right-multiplies in place by `C_i(a)` (one-based `i`).
    ///
    /// `C_i(a)` differs from the identity only in row `i`, so only columns
    /// `i-1`, `i` and `i+1` change: `col_{i-1} += a·col_i`,
    /// `col_{i+1} += col_i`, `col_i *= -a`.
    fn right_mul_generator(&mut self, i: usize, a: Var) {
        let n = self.n;
        let col = i - 1;
        let label = LaurentPolynomial::var(a);
        for r in 0..n {
            let pivot = self.entries[r * n + col].clone();
            if pivot.is_zero() {
                continue;
            }
            let scaled = &pivot * &label;
            if col > 0 {
                self.entries[r * n + col - 1] += &scaled;
            }
            if col + 1 < n {
                self.entries[r * n + col + 1] += &pivot;
            }
            self.entries[r * n + col] = -scaled;
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(LaurentPolynomial::render).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The `n × n` matrix `C_i(a)`: identity except row `i`, which holds
/// `(a, -a, 1)` in columns `i-1, i, i+1`, truncated at the borders.
pub fn c_matrix(n: usize, i: usize, a: Var) -> Result<PolyMatrix, BraidError> {
    if i == 0 || i > n {
        return Err(BraidError::GeneratorOutOfRange {
            generator: i,
            strands: n,
        });
    }
    let mut m = PolyMatrix::identity(n);
    m.right_mul_generator(i, a);
    Ok(m)
}

/// Product of the letters' `C` matrices, first letter leftmost.
pub fn word_matrix(word: &ColoredBraidWord) -> Result<PolyMatrix, BraidError> {
    let mut m = PolyMatrix::identity(word.strands);
    for (position, letter) in word.letters.iter().enumerate() {
        if letter.inverse {
            return Err(BraidError::InverseLetter { position });
        }
        m.right_mul_generator(letter.generator, letter.label);
    }
    Ok(m)
}

pub fn determinant(m: &PolyMatrix) -> Result<LaurentPolynomial, BraidError> {
    determinant_capped(m, DEFAULT_DIMENSION_CAP)
}

/// Exact determinant by Laplace expansion with memoized minors.
///
/// `minors[S]` holds the determinant of the submatrix on the first `|S|`
/// rows and the column set `S`; row `|S|` extends it one column at a time.
/// That is `n·2^(n-1)` polynomial products and no division.
pub fn determinant_capped(m: &PolyMatrix, cap: usize) -> Result<LaurentPolynomial, BraidError> {
    let n = m.dim();
    if n > cap {
        return Err(BraidError::DimensionCap { dimension: n, cap });
    }
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let full = (1usize << n) - 1;
    let mut minors = vec![LaurentPolynomial::zero(); 1 << n];
    minors[0] = LaurentPolynomial::one();
    for mask in 0..full {
        let minor = std::mem::take(&mut minors[mask]);
        if minor.is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        for col in 0..n {
            let bit = 1usize << col;
            if mask & bit != 0 {
                continue;
            }
            let entry = m.get(row, col);
            if entry.is_zero() {
                continue;
            }
            let product = &minor * entry;
            // parity of already-used columns to the right of `col`
            if (mask >> (col + 1)).count_ones() % 2 == 1 {
                minors[mask | bit] -= product;
            } else {
                minors[mask | bit] += product;
            }
        }
    }
    Ok(std::mem::take(&mut minors[full]))
}

/// `det(I - v·Γ)`.
pub fn char_det(gamma: &PolyMatrix, v: Var) -> Result<LaurentPolynomial, BraidError> {
    char_det_capped(gamma, v, DEFAULT_DIMENSION_CAP)
}

pub fn char_det_capped(
    gamma: &PolyMatrix,
    v: Var,
    cap: usize,
) -> Result<LaurentPolynomial, BraidError> {
    let shifted =
        PolyMatrix::identity(gamma.dim()).sub(&gamma.scale(&LaurentPolynomial::var(v)))?;
    determinant_capped(&shifted, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPolynomial as P;

    fn mat(rows: Vec<Vec<P>>) -> PolyMatrix {
        PolyMatrix::from_rows(rows).unwrap()
    }

    fn c(v: i64) -> P {
        P::constant(v)
    }

    #[test]
    fn c_matrix_examples() {
        let t = P::t();
        assert_eq!(
            c_matrix(2, 1, Var::T).unwrap(),
            mat(vec![vec![-t.clone(), c(1)], vec![c(0), c(1)]])
        );
        assert_eq!(
            c_matrix(2, 2, Var::T).unwrap(),
            mat(vec![vec![c(1), c(0)], vec![t.clone(), -t.clone()]])
        );
        let a = P::s();
        assert_eq!(
            c_matrix(3, 2, Var::S).unwrap(),
            mat(vec![
                vec![c(1), c(0), c(0)],
                vec![a.clone(), -a.clone(), c(1)],
                vec![c(0), c(0), c(1)],
            ])
        );
        assert_eq!(c_matrix(1, 1, Var::T).unwrap(), mat(vec![vec![-t]]));
    }

    #[test]
    fn c_matrix_index_errors() {
        assert_eq!(
            c_matrix(3, 0, Var::T),
            Err(BraidError::GeneratorOutOfRange {
                generator: 0,
                strands: 3
            })
        );
        assert!(c_matrix(3, 4, Var::T).is_err());
    }

    #[test]
    fn word_matrix_examples() {
        let empty = ColoredBraidWord::new(4, vec![]).unwrap();
        assert_eq!(word_matrix(&empty).unwrap(), PolyMatrix::identity(4));

        let w = ColoredBraidWord::new(
            2,
            vec![BraidLetter::new(1, Var::S), BraidLetter::new(1, Var::T)],
        )
        .unwrap();
        let st = &P::s() * &P::t();
        assert_eq!(
            word_matrix(&w).unwrap(),
            mat(vec![vec![st, &c(1) - &P::s()], vec![c(0), c(1)]])
        );
    }

    #[test]
    fn fast_path_matches_generic_product() {
        let letters: Vec<BraidLetter> = [
            (3, Var::T),
            (2, Var::T),
            (1, Var::S),
            (2, Var::S),
            (1, Var::T),
            (3, Var::S),
        ]
        .into_iter()
        .map(|(g, v)| BraidLetter::new(g, v))
        .collect();
        let w = ColoredBraidWord::new(3, letters.clone()).unwrap();
        let generic = letters.iter().fold(PolyMatrix::identity(3), |acc, l| {
            acc.mul(&c_matrix(3, l.generator, l.label).unwrap())
                .unwrap()
        });
        assert_eq!(word_matrix(&w).unwrap(), generic);
    }

    #[test]
    fn inverse_letters_rejected() {
        let w = ColoredBraidWord::new(
            2,
            vec![
                BraidLetter::new(1, Var::S),
                BraidLetter::new(1, Var::T).inverted(),
            ],
        )
        .unwrap();
        assert_eq!(
            word_matrix(&w),
            Err(BraidError::InverseLetter { position: 1 })
        );
    }

    #[test]
    fn word_validation() {
        assert_eq!(ColoredBraidWord::new(0, vec![]), Err(BraidError::NoStrands));
        assert!(matches!(
            ColoredBraidWord::new(2, vec![BraidLetter::new(3, Var::S)]),
            Err(BraidError::GeneratorOutOfRange {
                generator: 3,
                strands: 2
            })
        ));
        assert_eq!(
            ColoredBraidWord::new(2, vec![BraidLetter::new(1, Var::X)]),
            Err(BraidError::InvalidLabel(Var::X))
        );
    }

    #[test]
    fn parse_and_display_word() {
        let w: ColoredBraidWord = "n: 3; w: t3 t2 s1 t1".parse().unwrap();
        assert_eq!(w.strands(), 3);
        assert_eq!(w.letters()[2], BraidLetter::new(1, Var::S));
        assert_eq!(w.to_string(), "n: 3; w: t3 t2 s1 t1");
        let back: ColoredBraidWord = w.to_string().parse().unwrap();
        assert_eq!(back, w);

        let inv: ColoredBraidWord = "n:2;w: s1^-1".parse().unwrap();
        assert!(inv.letters()[0].inverse);
        let empty: ColoredBraidWord = "n: 2; w:".parse().unwrap();
        assert!(empty.is_empty());

        assert!("n: 2 w: s1".parse::<ColoredBraidWord>().is_err());
        assert!("n: 2; w: x1".parse::<ColoredBraidWord>().is_err());
        assert!("n: 2; w: s".parse::<ColoredBraidWord>().is_err());
        assert!("n: two; w: s1".parse::<ColoredBraidWord>().is_err());
    }

    #[test]
    fn determinant_examples() {
        assert!(determinant(&PolyMatrix::identity(3)).unwrap().is_one());
        let t = P::t();
        let m = mat(vec![vec![-t.clone(), c(1)], vec![c(0), c(1)]]);
        assert_eq!(determinant(&m).unwrap(), -t);
        assert!(determinant(&PolyMatrix::identity(0)).unwrap().is_one());
        assert!(determinant(&PolyMatrix::zeros(2)).unwrap().is_zero());
    }

    #[test]
    fn determinant_cap() {
        let m = PolyMatrix::identity(5);
        assert_eq!(
            determinant_capped(&m, 4),
            Err(BraidError::DimensionCap {
                dimension: 5,
                cap: 4
            })
        );
        assert!(determinant(&PolyMatrix::identity(17)).is_err());
    }

    #[test]
    fn char_det_examples() {
        let one_minus_x = &c(1) - &P::x();
        for q in 1..=4 {
            assert_eq!(
                char_det(&PolyMatrix::identity(q), Var::X).unwrap(),
                one_minus_x.pow(q as u32)
            );
        }
        // Γ = C2(t)·C1(s)·C1(t) on 2 strands gives 1 - x^2 s t^2
        let w: ColoredBraidWord = "n: 2; w: t2 s1 t1".parse().unwrap();
        let d = char_det(&word_matrix(&w).unwrap(), Var::X).unwrap();
        assert_eq!(d, &c(1) - &P::monomial(1, (2, 1, 2)));
    }

    #[test]
    fn generator_determinant_is_minus_label() {
        for n in 1..=5 {
            for i in 1..=n {
                for v in [Var::S, Var::T] {
                    assert_eq!(
                        determinant(&c_matrix(n, i, v).unwrap()).unwrap(),
                        -P::var(v)
                    );
                }
            }
        }
    }

    #[test]
    fn mismatched_dimensions() {
        let a = PolyMatrix::identity(2);
        let b = PolyMatrix::identity(3);
        assert_eq!(a.mul(&b), Err(BraidError::DimensionMismatch(2, 3)));
        assert!(PolyMatrix::from_rows(vec![vec![c(1)], vec![c(1), c(2)]]).is_err());
    }
}
