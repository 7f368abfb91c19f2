//! The D4 root system in the normal plane `P`, its reflections, and the Weyl
//! group as a group of signed permutations of the orthonormal basis.
//!
//! Roots are indexed `1..=12` in the fixed order
//!
//! ```text
//!  1: e1-e2   2: e2-e3   3: e3-e4   4: e1-e3   5: e2-e4   6: e1-e4
//!  7: e1+e2   8: e2+e3   9: e3+e4  10: e1+e3  11: e2+e4  12: e1+e4
//! ```
//!
//! with simple roots `{1, 2, 3, 9}`. A word such as `s2 s1 s3 s2` denotes the
//! composition `s2 ∘ s1 ∘ s3 ∘ s2`, so it acts on `P` right-to-left.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::rational::{ParseRationalError, Rational};

/// Labels of the simple roots, in matrix order.
pub const SIMPLE_INDICES: [usize; 4] = [1, 2, 3, 9];

/// The D4 Cartan matrix, rows and columns ordered `1, 2, 3, 9`.
pub const D4_CARTAN: [[i64; 4]; 4] = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]];

/// Position of a simple root label in [`SIMPLE_INDICES`].
pub fn simple_position(label: usize) -> Option<usize> {
    SIMPLE_INDICES.iter().position(|&s| s == label)
}

/// `(i, j, sign)` for each positive root `e_i + sign * e_j` (0-based axes).
const D4_POSITIVE_ROOTS: [(usize, usize, i64); 12] = [
    (0, 1, -1),
    (1, 2, -1),
    (2, 3, -1),
    (0, 2, -1),
    (1, 3, -1),
    (0, 3, -1),
    (0, 1, 1),
    (1, 2, 1),
    (2, 3, 1),
    (0, 2, 1),
    (1, 3, 1),
    (0, 3, 1),
];

/// Words expressing `alpha_i = w(alpha_1)` for `i = 2..=12`.
pub const ROOT_WORD_TABLE: [(usize, &[u8]); 11] = [
    (2, &[1, 2]),
    (3, &[2, 1, 3, 2]),
    (4, &[2]),
    (5, &[1, 3, 2]),
    (6, &[3, 2]),
    (7, &[2, 3, 9, 2]),
    (8, &[1, 3, 9, 2]),
    (9, &[2, 1, 9, 2]),
    (10, &[3, 9, 2]),
    (11, &[1, 9, 2]),
    (12, &[9, 2]),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("invalid multiplicity {0}: must be at least 1")]
    InvalidMultiplicity(u32),
    #[error("root index {0} out of range 1..=12")]
    IndexOutOfRange(usize),
    #[error("reflection in root {0} is not a signed permutation")]
    NotSignedPermutation(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("expected 4 comma-separated coordinates, found {0}")]
    WrongArity(usize),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("unexpected character `{0}` in word")]
    UnexpectedChar(char),
    #[error("generator label {0} out of range 1..=12")]
    LabelOutOfRange(u64),
    #[error("generator prefix without a label")]
    MissingLabel,
}

// ---------------------------------------------------------------------------
// Vectors

/// A vector of `P` in the orthonormal basis `e1..e4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RootVector(pub [Rational; 4]);

impl RootVector {
    pub fn from_ints(c: [i64; 4]) -> Self {
        RootVector(c.map(Rational::from_int))
    }

    pub fn basis(i: usize) -> Self {
        let mut c = [Rational::ZERO; 4];
        c[i] = Rational::ONE;
        RootVector(c)
    }

    pub fn inner(&self, other: &RootVector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| *a * *b).sum()
    }

    pub fn norm_sq(&self) -> Rational {
        self.inner(self)
    }

    pub fn scale(&self, s: Rational) -> RootVector {
        RootVector(self.0.map(|c| c * s))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }
}

impl Index<usize> for RootVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for RootVector {
    type Output = RootVector;
    fn add(self, rhs: RootVector) -> RootVector {
        RootVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for RootVector {
    type Output = RootVector;
    fn sub(self, rhs: RootVector) -> RootVector {
        RootVector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        RootVector(self.0.map(|c| -c))
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", c.join(","))
    }
}

impl FromStr for RootVector {
    type Err = ParseError;

    /// `a,b,c,d` with optional parentheses; entries are rationals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(s);
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(ParseError::WrongArity(parts.len()));
        }
        let mut c = [Rational::ZERO; 4];
        for (slot, p) in c.iter_mut().zip(parts) {
            *slot = p.parse()?;
        }
        Ok(RootVector(c))
    }
}

// ---------------------------------------------------------------------------
// Signed permutations

/// The linear map `e_i ↦ signs[i] * e_{image[i]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    image: [u8; 4],
    signs: [i8; 4],
}

impl SignedPerm {
    pub const IDENTITY: SignedPerm = SignedPerm {
        image: [0, 1, 2, 3],
        signs: [1; 4],
    };

    /// Returns `None` unless `image` is a permutation of `0..4` and every sign
    /// is `±1`.
    pub fn new(image: [u8; 4], signs: [i8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &i in &image {
            if i > 3 || std::mem::replace(&mut seen[i as usize], true) {
                return None;
            }
        }
        if signs.iter().any(|s| s.abs() != 1) {
            return None;
        }
        Some(SignedPerm { image, signs })
    }

    pub fn image(&self) -> [u8; 4] {
        self.image
    }

    pub fn signs(&self) -> [i8; 4] {
        self.signs
    }

    pub fn sign_product(&self) -> i8 {
        self.signs.iter().product()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let mut image = [0; 4];
        let mut signs = [1; 4];
        for i in 0..4 {
            let mid = other.image[i] as usize;
            image[i] = self.image[mid];
            signs[i] = other.signs[i] * self.signs[mid];
        }
        SignedPerm { image, signs }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut image = [0; 4];
        let mut signs = [1; 4];
        for i in 0..4 {
            let j = self.image[i] as usize;
            image[j] = i as u8;
            signs[j] = self.signs[i];
        }
        SignedPerm { image, signs }
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        let mut out = [Rational::ZERO; 4];
        for i in 0..4 {
            out[self.image[i] as usize] = v.0[i] * Rational::from_int(self.signs[i] as i64);
        }
        RootVector(out)
    }

    /// Matrix whose column `i` is the image of `e_i`.
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(4, 4);
        for i in 0..4 {
            m[(self.image[i] as usize, i)] = Rational::from_int(self.signs[i] as i64);
        }
        m
    }

    /// Recognizes a 4x4 matrix (columns = images of basis vectors) as a
    /// signed permutation.
    pub fn from_matrix(m: &Matrix) -> Option<SignedPerm> {
        if m.rows() != 4 || m.cols() != 4 {
            return None;
        }
        let mut image = [0u8; 4];
        let mut signs = [1i8; 4];
        for j in 0..4 {
            let col = m.column(j);
            let nonzero: Vec<usize> = (0..4).filter(|&i| !col[i].is_zero()).collect();
            let [i] = nonzero[..] else { return None };
            signs[j] = if col[i] == Rational::ONE {
                1
            } else if col[i] == -Rational::ONE {
                -1
            } else {
                return None;
            };
            image[j] = i as u8;
        }
        SignedPerm::new(image, signs)
    }
}

impl fmt::Display for SignedPerm {
    /// Images of `e1..e4`, e.g. `[e2, e1, e3, e4]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..4)
            .map(|i| {
                let sign = if self.signs[i] < 0 { "-" } else { "" };
                format!("{sign}e{}", self.image[i] + 1)
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

// ---------------------------------------------------------------------------
// Words

/// A word over reflection labels, read as a composition (rightmost first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// Shortlex order: shorter first, then lexicographic on labels.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl From<&[u8]> for Word {
    fn from(w: &[u8]) -> Self {
        Word(w.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("s{l}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn subscript_digit(c: char) -> Option<u32> {
    ('₀'..='₉').contains(&c).then(|| c as u32 - '₀' as u32)
}

impl FromStr for Word {
    type Err = ParseError;

    /// Accepts `s2 s1 s3 s2`, `s2s1s3s2`, `σ₂σ₁σ₃σ₂`, `2,1,3,2` and the
    /// identity spellings `""`, `e`, `id`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "e" || trimmed == "id" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut chars = trimmed.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() || matches!(c, ',' | '.' | '*') {
                chars.next();
                continue;
            }
            let prefixed = matches!(c, 's' | 'σ');
            if prefixed {
                chars.next();
            }
            let mut value: u64 = 0;
            let mut digits = 0;
            while let Some(&d) = chars.peek() {
                let Some(v) = d.to_digit(10).or_else(|| subscript_digit(d)) else {
                    break;
                };
                chars.next();
                digits += 1;
                value = value.saturating_mul(10).saturating_add(v as u64);
            }
            if digits == 0 {
                return Err(if prefixed {
                    ParseError::MissingLabel
                } else {
                    ParseError::UnexpectedChar(c)
                });
            }
            if !(1..=12).contains(&value) {
                return Err(ParseError::LabelOutOfRange(value));
            }
            letters.push(value as u8);
        }
        Ok(Word(letters))
    }
}

// ---------------------------------------------------------------------------
// Weyl group elements

/// A signed permutation together with a word that produces it. Equality and
/// hashing look only at the signed permutation.
#[derive(Debug, Clone)]
pub struct WeylElement {
    pub perm: SignedPerm,
    pub word: Word,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement {
            perm: SignedPerm::IDENTITY,
            word: Word::empty(),
        }
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        self.perm.apply(v)
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
    }
}

/// A finite group of signed permutations, listed in shortlex order of the
/// stored words.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    lookup: HashMap<SignedPerm, usize>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn contains(&self, perm: &SignedPerm) -> bool {
        self.lookup.contains_key(perm)
    }

    pub fn get(&self, perm: &SignedPerm) -> Option<&WeylElement> {
        self.lookup.get(perm).map(|&i| &self.elements[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeylElement> {
        self.elements.iter()
    }
}

/// Breadth-first closure of `generators` under composition.
///
/// Generators are tried in increasing label order and each new element is
/// reached by appending one generator on the right of its parent's word, so
/// every stored word is the shortlex-least word for its element.
pub fn enumerate_group(generators: &[WeylElement]) -> WeylGroup {
    let mut gens: Vec<&WeylElement> = generators.iter().collect();
    gens.sort_by(|a, b| a.word.cmp(&b.word));

    let mut elements = vec![WeylElement::identity()];
    let mut lookup = HashMap::from([(SignedPerm::IDENTITY, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for g in &gens {
            let parent = &elements[idx];
            let perm = parent.perm.compose(&g.perm);
            if lookup.contains_key(&perm) {
                continue;
            }
            let mut letters = parent.word.0.clone();
            letters.extend_from_slice(&g.word.0);
            lookup.insert(perm, elements.len());
            queue.push_back(elements.len());
            elements.push(WeylElement {
                perm,
                word: Word(letters),
            });
        }
    }
    WeylGroup { elements, lookup }
}

/// Distinct images of `v` under `group`.
pub fn orbit<'a>(
    group: impl IntoIterator<Item = &'a WeylElement>,
    v: &RootVector,
) -> BTreeSet<RootVector> {
    group.into_iter().map(|w| w.apply(v)).collect()
}

// ---------------------------------------------------------------------------
// Root system

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    positive_roots: Vec<RootVector>,
    multiplicity: u32,
}

/// Builds the D4 root data for uniform multiplicity `m`.
pub fn build_d4(m: u32) -> Result<RootSystem, RootSystemError> {
    if m < 1 {
        return Err(RootSystemError::InvalidMultiplicity(m));
    }
    let positive_roots = D4_POSITIVE_ROOTS
        .iter()
        .map(|&(i, j, s)| {
            let mut c = [0i64; 4];
            c[i] = 1;
            c[j] = s;
            RootVector::from_ints(c)
        })
        .collect();
    Ok(RootSystem {
        positive_roots,
        multiplicity: m,
    })
}

impl RootSystem {
    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn simple_indices(&self) -> [usize; 4] {
        SIMPLE_INDICES
    }

    /// Root `alpha_i`, 1-based.
    pub fn root(&self, i: usize) -> Result<&RootVector, RootSystemError> {
        i.checked_sub(1)
            .and_then(|k| self.positive_roots.get(k))
            .ok_or(RootSystemError::IndexOutOfRange(i))
    }

    pub fn simple_roots(&self) -> [RootVector; 4] {
        SIMPLE_INDICES.map(|i| self.positive_roots[i - 1])
    }

    /// `Φ ∪ −Φ`.
    pub fn all_roots(&self) -> BTreeSet<RootVector> {
        self.positive_roots.iter().flat_map(|r| [*r, -*r]).collect()
    }

    /// `2 (alpha_i, alpha_j) / (alpha_j, alpha_j)`.
    pub fn cartan_number(&self, i: usize, j: usize) -> Result<Rational, RootSystemError> {
        let a = self.root(i)?;
        let b = self.root(j)?;
        Ok(Rational::from_int(2) * a.inner(b) / b.norm_sq())
    }

    /// Cartan matrix on the simple roots, rows and columns ordered `1, 2, 3, 9`.
    pub fn simple_cartan_matrix(&self) -> [[i64; 4]; 4] {
        std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                self.cartan_number(SIMPLE_INDICES[r], SIMPLE_INDICES[c])
                    .ok()
                    .and_then(|x| x.to_integer())
                    .expect("Cartan numbers of a root system are integers")
            })
        })
    }

    /// Reflection `x ↦ x − 2(x, alpha_i)/(alpha_i, alpha_i) · alpha_i`.
    pub fn reflection(&self, i: usize) -> Result<WeylElement, RootSystemError> {
        let alpha = *self.root(i)?;
        let two_over_norm = Rational::from_int(2) / alpha.norm_sq();
        let m = Matrix::from_fn(4, 4, |r, c| {
            let e = RootVector::basis(c);
            let image = e - alpha.scale(two_over_norm * e.inner(&alpha));
            image[r]
        });
        let perm = SignedPerm::from_matrix(&m).ok_or(RootSystemError::NotSignedPermutation(i))?;
        Ok(WeylElement {
            perm,
            word: Word(vec![i as u8]),
        })
    }

    /// The four simple reflections `s1, s2, s3, s9`.
    pub fn generators(&self) -> [WeylElement; 4] {
        SIMPLE_INDICES.map(|i| self.reflection(i).expect("simple index is in range"))
    }

    /// Evaluates a word as a composition of reflections.
    pub fn word_element(&self, word: &Word) -> Result<SignedPerm, RootSystemError> {
        word.0.iter().try_fold(SignedPerm::IDENTITY, |acc, &l| {
            Ok(acc.compose(&self.reflection(l as usize)?.perm))
        })
    }

    pub fn weyl_group(&self) -> WeylGroup {
        enumerate_group(&self.generators())
    }

    /// Subgroup fixing `b = e1+e2+e3+e4`, generated by `s1, s2, s3`.
    pub fn stabilizer_group(&self) -> WeylGroup {
        let [s1, s2, s3, _] = self.generators();
        enumerate_group(&[s1, s2, s3])
    }

    /// Coordinates of `v` in the simple-root basis (order `1, 2, 3, 9`).
    pub fn simple_coordinates(&self, v: &RootVector) -> Vec<Rational> {
        let basis = Matrix::from_fn(4, 4, |r, c| self.simple_roots()[c][r]);
        basis
            .inverse()
            .expect("simple roots are linearly independent")
            .mul_vec(&v.0)
    }
}

/// Outcome of checking one `alpha_i = w(alpha_1)` identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCheck {
    pub root: usize,
    pub word: Word,
    pub expected: RootVector,
    pub computed: RootVector,
}

impl WordCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

/// Evaluates every entry of [`ROOT_WORD_TABLE`] against the root list.
pub fn verify_word_table(rs: &RootSystem) -> Vec<WordCheck> {
    let alpha1 = rs.positive_roots[0];
    ROOT_WORD_TABLE
        .iter()
        .map(|&(root, letters)| {
            let word = Word::from(letters);
            let perm = rs.word_element(&word).expect("table labels are simple");
            WordCheck {
                root,
                computed: perm.apply(&alpha1),
                expected: rs.positive_roots[root - 1],
                word,
            }
        })
        .collect()
}

/// Dimension bookkeeping for a D4 foliation with uniform multiplicity `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoliationDims {
    pub diagram: &'static str,
    pub multiplicity: u32,
    pub dim_m: u64,
    pub ambient_n: u64,
}

pub fn ambient_dims(m: u32) -> Result<FoliationDims, RootSystemError> {
    if m < 1 {
        return Err(RootSystemError::InvalidMultiplicity(m));
    }
    let dim_m = 12 * m as u64;
    Ok(FoliationDims {
        diagram: "D4",
        multiplicity: m,
        dim_m,
        ambient_n: dim_m + 4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs() -> RootSystem {
        build_d4(4).unwrap()
    }

    /// All 384 signed permutations of four letters, by brute force.
    fn all_signed_perms() -> Vec<SignedPerm> {
        let mut out = Vec::new();
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        for mask in 0..16u8 {
                            let signs =
                                std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 });
                            if let Some(p) = SignedPerm::new([a, b, c, d], signs) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn root_list() {
        let rs = rs();
        assert_eq!(rs.positive_roots().len(), 12);
        assert_eq!(rs.root(1).unwrap(), &RootVector::from_ints([1, -1, 0, 0]));
        assert_eq!(rs.root(9).unwrap(), &RootVector::from_ints([0, 0, 1, 1]));
        assert_eq!(rs.root(12).unwrap(), &RootVector::from_ints([1, 0, 0, 1]));
        assert!(rs
            .positive_roots()
            .iter()
            .all(|r| r.norm_sq() == Rational::from_int(2)));
        assert_eq!(rs.root(0), Err(RootSystemError::IndexOutOfRange(0)));
        assert_eq!(rs.root(13), Err(RootSystemError::IndexOutOfRange(13)));
    }

    #[test]
    fn invalid_multiplicity() {
        assert_eq!(build_d4(0), Err(RootSystemError::InvalidMultiplicity(0)));
        assert_eq!(
            ambient_dims(0),
            Err(RootSystemError::InvalidMultiplicity(0))
        );
    }

    #[test]
    fn dimensions() {
        let d = ambient_dims(4).unwrap();
        assert_eq!((d.dim_m, d.ambient_n), (48, 52));
        let d = ambient_dims(2).unwrap();
        assert_eq!((d.dim_m, d.ambient_n), (24, 28));
    }

    #[test]
    fn positive_roots_are_nonnegative_integer_combinations() {
        let rs = rs();
        for r in rs.positive_roots() {
            let c = rs.simple_coordinates(r);
            assert!(
                c.iter().all(|x| x.is_integer() && *x >= Rational::ZERO),
                "{r}: {c:?}"
            );
        }
    }

    #[test]
    fn cartan_numbers() {
        let rs = rs();
        assert_eq!(rs.cartan_number(1, 2).unwrap(), Rational::from_int(-1));
        assert_eq!(rs.cartan_number(1, 9).unwrap(), Rational::ZERO);
        for i in 1..=12 {
            assert_eq!(rs.cartan_number(i, i).unwrap(), Rational::from_int(2));
            for j in 1..=12 {
                assert!(rs.cartan_number(i, j).unwrap().is_integer());
            }
        }
        assert_eq!(
            rs.cartan_number(1, 13),
            Err(RootSystemError::IndexOutOfRange(13))
        );
    }

    #[test]
    fn simple_cartan_matrix_is_d4() {
        let c = rs().simple_cartan_matrix();
        assert_eq!(c, D4_CARTAN);
        let m = Matrix::from_int_rows(&c);
        assert!(m.is_symmetric());
        assert_eq!(m.determinant(), Rational::from_int(4));
    }

    #[test]
    fn generator_actions() {
        let rs = rs();
        let [s1, s2, s3, s9] = rs.generators();
        assert_eq!(s1.perm, SignedPerm::new([1, 0, 2, 3], [1; 4]).unwrap());
        assert_eq!(s2.perm, SignedPerm::new([0, 2, 1, 3], [1; 4]).unwrap());
        assert_eq!(s3.perm, SignedPerm::new([0, 1, 3, 2], [1; 4]).unwrap());
        assert_eq!(
            s9.perm,
            SignedPerm::new([0, 1, 3, 2], [1, 1, -1, -1]).unwrap()
        );
        for i in 1..=12 {
            let r = rs.reflection(i).unwrap().perm;
            assert_eq!(r.compose(&r), SignedPerm::IDENTITY);
            assert_eq!(r.sign_product(), 1);
        }
        assert!(rs.reflection(0).is_err());
    }

    #[test]
    fn apply_examples() {
        let rs = rs();
        let a1 = *rs.root(1).unwrap();
        let s2 = rs.word_element(&"s2".parse().unwrap()).unwrap();
        assert_eq!(s2.apply(&a1), *rs.root(4).unwrap());
        let s9s2 = rs.word_element(&"s9 s2".parse().unwrap()).unwrap();
        assert_eq!(s9s2.apply(&a1), *rs.root(12).unwrap());
        assert_eq!(SignedPerm::IDENTITY.apply(&a1), a1);
    }

    #[test]
    fn group_orders() {
        let rs = rs();
        let [s1, s2, s3, s9] = rs.generators();
        assert_eq!(
            enumerate_group(&[s1.clone(), s2.clone(), s3.clone(), s9]).order(),
            192
        );
        assert_eq!(enumerate_group(&[s1, s2, s3]).order(), 24);
        assert_eq!(enumerate_group(&[]).order(), 1);
    }

    #[test]
    fn weyl_group_is_even_signed_perms() {
        let w = rs().weyl_group();
        let brute: BTreeSet<SignedPerm> = all_signed_perms()
            .into_iter()
            .filter(|p| p.sign_product() == 1)
            .collect();
        assert_eq!(all_signed_perms().len(), 384);
        let enumerated: BTreeSet<SignedPerm> = w.iter().map(|e| e.perm).collect();
        assert_eq!(enumerated, brute);
    }

    #[test]
    fn group_axioms_by_exhaustion() {
        let w = rs().weyl_group();
        for a in w.iter() {
            assert!(w.contains(&a.perm.inverse()));
            assert_eq!(a.perm.compose(&a.perm.inverse()), SignedPerm::IDENTITY);
            for b in w.iter() {
                assert!(w.contains(&a.perm.compose(&b.perm)));
            }
        }
    }

    /// Coxeter length: number of positive roots sent to negative roots.
    fn inversions(rs: &RootSystem, p: &SignedPerm) -> usize {
        let positive: BTreeSet<RootVector> = rs.positive_roots().iter().copied().collect();
        positive
            .iter()
            .filter(|r| !positive.contains(&p.apply(r)))
            .count()
    }

    /// Shortlex-least word built greedily from the smallest left descent.
    fn greedy_shortlex_word(rs: &RootSystem, p: SignedPerm) -> Word {
        let mut letters = Vec::new();
        let mut cur = p;
        while cur != SignedPerm::IDENTITY {
            let len = inversions(rs, &cur);
            let s = SIMPLE_INDICES
                .into_iter()
                .map(|l| (l, rs.reflection(l).unwrap().perm))
                .find(|(_, s)| inversions(rs, &s.compose(&cur)) < len)
                .expect("non-identity element has a left descent");
            letters.push(s.0 as u8);
            cur = s.1.compose(&cur);
        }
        Word(letters)
    }

    #[test]
    fn stored_words_are_sound_and_shortlex_minimal() {
        let rs = rs();
        let w = rs.weyl_group();
        for e in w.iter() {
            assert_eq!(rs.word_element(&e.word).unwrap(), e.perm);
            assert_eq!(e.word.len(), inversions(&rs, &e.perm));
            assert_eq!(e.word, greedy_shortlex_word(&rs, e.perm));
        }
        assert_eq!(w.iter().map(|e| e.word.len()).max(), Some(12));
    }

    #[test]
    fn orbits() {
        let rs = rs();
        let w = rs.weyl_group();
        let a1 = *rs.root(1).unwrap();
        assert_eq!(orbit(w.iter(), &a1), rs.all_roots());
        assert_eq!(orbit(w.iter(), &a1).len(), 24);
        let b = RootVector::from_ints([1, 1, 1, 1]);
        assert_eq!(orbit(rs.stabilizer_group().iter(), &b), BTreeSet::from([b]));
        assert_eq!(orbit([&WeylElement::identity()], &a1), BTreeSet::from([a1]));
    }

    #[test]
    fn stabilizer_is_exactly_the_fixer_of_b() {
        let rs = rs();
        let w = rs.weyl_group();
        let wb = rs.stabilizer_group();
        let b = RootVector::from_ints([1, 1, 1, 1]);
        for e in w.iter() {
            assert_eq!(e.apply(&b) == b, wb.contains(&e.perm));
        }
    }

    #[test]
    fn word_table() {
        let checks = verify_word_table(&rs());
        assert_eq!(checks.len(), 11);
        for c in &checks {
            assert!(c.passed(), "alpha_{} via {}", c.root, c.word);
        }
    }

    #[test]
    fn word_table_fails_under_left_to_right_reading() {
        // Reading the words in the other order breaks at least one identity.
        let rs = rs();
        let a1 = *rs.root(1).unwrap();
        let failures = ROOT_WORD_TABLE
            .iter()
            .filter(|(root, letters)| {
                let rev: Vec<u8> = letters.iter().rev().copied().collect();
                rs.word_element(&Word(rev)).unwrap().apply(&a1) != *rs.root(*root).unwrap()
            })
            .count();
        assert!(failures > 0);
    }

    #[test]
    fn word_parsing() {
        let w = Word(vec![2, 1, 3, 2]);
        for s in [
            "s2 s1 s3 s2",
            "s2s1s3s2",
            "σ₂σ₁σ₃σ₂",
            "2,1,3,2",
            " 2 1 3 2 ",
        ] {
            assert_eq!(s.parse::<Word>().unwrap(), w, "{s}");
        }
        assert_eq!("e".parse::<Word>().unwrap(), Word::empty());
        assert_eq!("".parse::<Word>().unwrap(), Word::empty());
        assert_eq!("s".parse::<Word>(), Err(ParseError::MissingLabel));
        assert_eq!("s13".parse::<Word>(), Err(ParseError::LabelOutOfRange(13)));
        assert_eq!(
            "2132".parse::<Word>(),
            Err(ParseError::LabelOutOfRange(2132))
        );
        assert_eq!("x".parse::<Word>(), Err(ParseError::UnexpectedChar('x')));
        assert_eq!(w.to_string(), "s2 s1 s3 s2");
    }

    #[test]
    fn vector_parsing() {
        assert_eq!(
            "1,-1,0,0".parse::<RootVector>().unwrap(),
            RootVector::from_ints([1, -1, 0, 0])
        );
        assert_eq!(
            "(1/2, 1/2, 1/2, 1/2)"
                .parse::<RootVector>()
                .unwrap()
                .to_string(),
            "(1/2,1/2,1/2,1/2)"
        );
        assert_eq!("1,2".parse::<RootVector>(), Err(ParseError::WrongArity(2)));
    }

    fn any_vector() -> impl Strategy<Value = RootVector> {
        prop::array::uniform4((-20i64..20, 1i64..6))
            .prop_map(|c| RootVector(c.map(|(n, d)| Rational::new(n, d))))
    }

    proptest! {
        #[test]
        fn weyl_group_acts_by_isometries(idx in 0usize..192, u in any_vector(), v in any_vector()) {
            let w = rs().weyl_group();
            let e = &w.elements()[idx];
            prop_assert_eq!(e.apply(&u).inner(&e.apply(&v)), u.inner(&v));
        }

        #[test]
        fn weyl_group_permutes_roots(idx in 0usize..192) {
            let rs = rs();
            let w = rs.weyl_group();
            let e = &w.elements()[idx];
            let image: BTreeSet<RootVector> = rs.all_roots().iter().map(|r| e.apply(r)).collect();
            prop_assert_eq!(image, rs.all_roots());
            prop_assert_eq!(e.perm.sign_product(), 1);
        }

        #[test]
        fn matrix_round_trip(idx in 0usize..192, v in any_vector()) {
            let w = rs().weyl_group();
            let p = w.elements()[idx].perm;
            prop_assert_eq!(SignedPerm::from_matrix(&p.to_matrix()), Some(p));
            prop_assert_eq!(p.to_matrix().mul_vec(&v.0), p.apply(&v).0.to_vec());
        }

        #[test]
        fn word_display_parse_round_trip(letters in prop::collection::vec(1u8..=12, 0..10)) {
            let w = Word(letters);
            prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        }
    }
}
