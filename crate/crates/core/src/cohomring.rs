//! Degree-`m` cohomology and homology of `M`, the Kronecker pairing, the
//! induced Weyl actions, and the polynomial invariants built on them.
//!
//! Homology has the basis `b1, b2, b3, b9` of leaf-sphere classes. Cohomology
//! is described in three bases:
//!
//! - `ω`: dual to the `b`'s, `<ω_i, b_j> = δ_ij`;
//! - `d`: Euler classes of the curvature distributions, `d = C ω` with `C`
//!   the simple Cartan matrix;
//! - `t`: the classes on which `W` acts by the same signed permutations as on
//!   the normal plane. Their `ω`-coordinates are `t_i = Σ_j (e_i, α_j) ω_j`.
//!
//! The published change of basis between `ω` and `t` is the one for type B4
//! (`t4 = −ω3 + 2ω9`); with the D4 Cartan matrix it does not turn the `ω`
//! action into signed permutations. It is kept as [`PRINTED_T_FROM_OMEGA`]
//! so the report can show exactly where it fails.

use std::fmt;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::poly::{render_linear, Polynomial};
use crate::rational::Rational;
use crate::rootsys::{simple_position, RootSystem, RootVector, SignedPerm, Word, SIMPLE_INDICES};

/// `t` in terms of `ω` as printed in the source (rows `t1..t4`, columns
/// `ω1, ω2, ω3, ω9`). Type B4 conversion.
pub const PRINTED_T_FROM_OMEGA: [[i64; 4]; 4] =
    [[1, 0, 0, 0], [-1, 1, 0, 0], [0, -1, 1, 0], [0, 0, -1, 2]];

/// `ω` in terms of `t` as printed in the source, as `(numerator, denominator)`.
pub const PRINTED_OMEGA_FROM_T: [[(i64, i64); 4]; 4] = [
    [(1, 1), (0, 1), (0, 1), (0, 1)],
    [(1, 1), (1, 1), (0, 1), (0, 1)],
    [(1, 1), (1, 1), (1, 1), (0, 1)],
    [(1, 2), (1, 2), (1, 2), (1, 2)],
];

/// `t` in terms of `ω` for D4 (rows `t1..t4`).
pub const D4_T_FROM_OMEGA: [[i64; 4]; 4] =
    [[1, 0, 0, 0], [-1, 1, 0, 0], [0, -1, 1, 1], [0, 0, -1, 1]];

/// The action of `s1, s2, s3, s9` on `t1..t4` as printed: each entry lists
/// the images of `t1..t4` as `(sign, target index)`.
pub const PRINTED_T_ACTIONS: [(usize, [(i8, u8); 4]); 4] = [
    (1, [(1, 2), (1, 1), (1, 3), (1, 4)]),
    (2, [(1, 1), (1, 3), (1, 2), (1, 4)]),
    (3, [(1, 1), (1, 2), (1, 4), (1, 3)]),
    (9, [(1, 1), (1, 2), (-1, 4), (-1, 3)]),
];

/// [`PRINTED_T_ACTIONS`] entry for `label` as a signed permutation.
pub fn printed_t_action(label: usize) -> Option<SignedPerm> {
    let (_, images) = PRINTED_T_ACTIONS.iter().find(|(l, _)| *l == label)?;
    SignedPerm::new(images.map(|(_, t)| t - 1), images.map(|(s, _)| s))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomError {
    #[error("{0} is not a simple root index (expected one of 1, 2, 3, 9)")]
    NonSimpleIndex(usize),
    #[error("action of s{0} on the t basis is not a signed permutation")]
    NotSignedPermutation(usize),
    #[error("basis change matrix is singular")]
    SingularBasisChange,
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Omega,
    T,
    D,
}

impl Basis {
    fn label(self, pos: usize) -> String {
        match self {
            Basis::Omega => format!("ω{}", SIMPLE_INDICES[pos]),
            Basis::D => format!("d{}", SIMPLE_INDICES[pos]),
            Basis::T => format!("t{}", pos + 1),
        }
    }
}

/// A degree-`m` cohomology class with exact coordinates in one basis.
/// Positions follow `1, 2, 3, 9` for `ω`/`d` and `1, 2, 3, 4` for `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CohClass {
    pub basis: Basis,
    pub coords: [Rational; 4],
}

impl CohClass {
    pub fn new(basis: Basis, coords: [Rational; 4]) -> Self {
        CohClass { basis, coords }
    }

    pub fn from_ints(basis: Basis, coords: [i64; 4]) -> Self {
        CohClass {
            basis,
            coords: coords.map(Rational::from_int),
        }
    }

    pub fn basis_vector(basis: Basis, pos: usize) -> Self {
        let mut coords = [Rational::ZERO; 4];
        coords[pos] = Rational::ONE;
        CohClass { basis, coords }
    }

    pub fn scale(&self, s: Rational) -> Self {
        CohClass {
            basis: self.basis,
            coords: self.coords.map(|c| c * s),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Rational::is_integer)
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_linear(&self.coords, |pos| self.basis.label(pos)))
    }
}

/// A degree-`m` homology class in the basis `b1, b2, b3, b9`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HomClass {
    pub coords: [Rational; 4],
}

impl HomClass {
    /// The leaf-sphere class `b_label`.
    pub fn leaf(label: usize) -> Result<Self, CohomError> {
        let pos = simple_pos(label)?;
        let mut coords = [Rational::ZERO; 4];
        coords[pos] = Rational::ONE;
        Ok(HomClass { coords })
    }

    pub fn from_ints(coords: [i64; 4]) -> Self {
        HomClass {
            coords: coords.map(Rational::from_int),
        }
    }
}

impl fmt::Display for HomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_linear(&self.coords, |pos| {
            format!("b{}", SIMPLE_INDICES[pos])
        }))
    }
}

fn simple_pos(label: usize) -> Result<usize, CohomError> {
    simple_position(label).ok_or(CohomError::NonSimpleIndex(label))
}

/// Pairing matrix on all twelve roots: entry `(i, j)` is
/// `<d_i, b_j> = 2(α_i, α_j)/(α_j, α_j)`.
pub fn kronecker_matrix(rs: &RootSystem) -> [[i64; 12]; 12] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            rs.cartan_number(i + 1, j + 1)
                .ok()
                .and_then(|x| x.to_integer())
                .expect("Cartan numbers are integers")
        })
    })
}

/// The `t`-classes in `ω`-coordinates, read off from the root data:
/// the coefficient of `ω_j` in `t_i` is `2(e_i, α_j)/(α_j, α_j)`.
pub fn derive_t_from_omega(rs: &RootSystem) -> Matrix {
    let simple = rs.simple_roots();
    Matrix::from_fn(4, 4, |i, j| {
        let alpha = simple[j];
        Rational::from_int(2) * RootVector::basis(i).inner(&alpha) / alpha.norm_sq()
    })
}

/// Cohomology calculus for one root system and one choice of `t` basis.
#[derive(Debug, Clone)]
pub struct CohomologyModel {
    /// Simple Cartan matrix `β`, positions ordered `1, 2, 3, 9`.
    cartan: Matrix,
    /// Row `i` holds the `ω`-coordinates of `t_{i+1}`.
    t_in_omega: Matrix,
    /// Row `i` holds the `t`-coordinates of `ω` at position `i`.
    omega_in_t: Matrix,
}

impl CohomologyModel {
    /// The D4 model, with the `t` basis derived from the roots.
    pub fn new(rs: &RootSystem) -> Self {
        Self::with_basis_change(rs, derive_t_from_omega(rs))
            .expect("derived basis change is invertible")
    }

    /// A model using an arbitrary `t`-from-`ω` matrix, e.g. the printed one.
    pub fn with_basis_change(rs: &RootSystem, t_in_omega: Matrix) -> Result<Self, CohomError> {
        let omega_in_t = t_in_omega
            .inverse()
            .ok_or(CohomError::SingularBasisChange)?;
        Ok(CohomologyModel {
            cartan: Matrix::from_int_rows(&rs.simple_cartan_matrix()),
            t_in_omega,
            omega_in_t,
        })
    }

    pub fn cartan(&self) -> &Matrix {
        &self.cartan
    }

    pub fn t_in_omega(&self) -> &Matrix {
        &self.t_in_omega
    }

    pub fn omega_in_t(&self) -> &Matrix {
        &self.omega_in_t
    }

    fn beta(&self, i_pos: usize, j_pos: usize) -> Rational {
        self.cartan[(i_pos, j_pos)]
    }

    /// Euler class `d_label` in the `ω` basis.
    pub fn euler_class_d(&self, label: usize) -> Result<CohClass, CohomError> {
        let pos = simple_pos(label)?;
        Ok(CohClass::new(
            Basis::Omega,
            std::array::from_fn(|j| self.beta(pos, j)),
        ))
    }

    /// Re-expresses a class in the `ω` basis.
    pub fn to_omega(&self, c: &CohClass) -> CohClass {
        // If x = Σ c_i y_i and y_i = Σ_j R_ij ω_j then the ω-coordinates are Rᵀ c.
        let rows = match c.basis {
            Basis::Omega => return *c,
            Basis::T => &self.t_in_omega,
            Basis::D => &self.cartan,
        };
        let v = rows.transpose().mul_vec(&c.coords);
        CohClass::new(Basis::Omega, v.try_into().expect("length 4"))
    }

    /// Re-expresses a class in the `t` basis.
    pub fn to_t(&self, c: &CohClass) -> CohClass {
        if c.basis == Basis::T {
            return *c;
        }
        let omega = self.to_omega(c);
        let v = self.omega_in_t.transpose().mul_vec(&omega.coords);
        CohClass::new(Basis::T, v.try_into().expect("length 4"))
    }

    /// Re-expresses a class in the `d` basis.
    pub fn to_d(&self, c: &CohClass) -> CohClass {
        if c.basis == Basis::D {
            return *c;
        }
        let omega = self.to_omega(c);
        let inv = self.cartan.inverse().expect("Cartan matrix is nonsingular");
        let v = inv.transpose().mul_vec(&omega.coords);
        CohClass::new(Basis::D, v.try_into().expect("length 4"))
    }

    pub fn t_from_omega(&self, c: &CohClass) -> CohClass {
        self.to_t(c)
    }

    pub fn omega_from_t(&self, c: &CohClass) -> CohClass {
        self.to_omega(c)
    }

    /// `<c, h>`, computed in the `ω` basis where `<ω_i, b_j> = δ_ij`.
    pub fn pairing(&self, c: &CohClass, h: &HomClass) -> Rational {
        let omega = self.to_omega(c);
        omega
            .coords
            .iter()
            .zip(&h.coords)
            .map(|(a, b)| *a * *b)
            .sum()
    }

    /// `σ_i⋆(b_j) = b_j − β_ij b_i`, extended linearly.
    pub fn homology_action(&self, label: usize, h: &HomClass) -> Result<HomClass, CohomError> {
        let i = simple_pos(label)?;
        let mut coords = h.coords;
        coords[i] = h.coords[i]
            - (0..4)
                .map(|j| self.beta(i, j) * h.coords[j])
                .sum::<Rational>();
        Ok(HomClass { coords })
    }

    /// The homology action with the sign as printed, `σ_i⋆(b_j) = b_j + β_ij b_i`.
    /// Not an involution; kept for the erratum check.
    pub fn homology_action_as_printed(
        &self,
        label: usize,
        h: &HomClass,
    ) -> Result<HomClass, CohomError> {
        let i = simple_pos(label)?;
        let mut coords = h.coords;
        coords[i] = h.coords[i]
            + (0..4)
                .map(|j| self.beta(i, j) * h.coords[j])
                .sum::<Rational>();
        Ok(HomClass { coords })
    }

    /// Matrix of `σ_i*` on `ω`-coordinates: `σ_i*(ω_k) = ω_k` for `k ≠ i` and
    /// `σ_i*(ω_i) = ω_i − Σ_j β_ij ω_j`.
    pub fn omega_action_matrix(&self, label: usize) -> Result<Matrix, CohomError> {
        let i = simple_pos(label)?;
        let mut m = Matrix::identity(4);
        for j in 0..4 {
            // column i holds the image of ω_i
            m[(j, i)] -= self.beta(i, j);
        }
        Ok(m)
    }

    pub fn cohomology_action_omega(
        &self,
        label: usize,
        c: &CohClass,
    ) -> Result<CohClass, CohomError> {
        let m = self.omega_action_matrix(label)?;
        let omega = self.to_omega(c);
        let v = m.mul_vec(&omega.coords);
        Ok(CohClass::new(Basis::Omega, v.try_into().expect("length 4")))
    }

    /// Matrix of `σ_i*` on `t`-coordinates (column `j` is the image of `t_j`).
    pub fn t_action_matrix(&self, label: usize) -> Result<Matrix, CohomError> {
        let m = self.omega_action_matrix(label)?;
        let to_omega = self.t_in_omega.transpose();
        let to_t = self.omega_in_t.transpose();
        Ok(&(&to_t * &m) * &to_omega)
    }

    /// `σ_i*` on the `t` basis, which must be a signed permutation.
    pub fn action_on_t(&self, label: usize) -> Result<SignedPerm, CohomError> {
        SignedPerm::from_matrix(&self.t_action_matrix(label)?)
            .ok_or(CohomError::NotSignedPermutation(label))
    }

    /// Pullback along a word `g1 g2 … gn`, i.e. `g1* ∘ g2* ∘ … ∘ gn*`, as a
    /// matrix on `t`-coordinates.
    pub fn word_pullback_matrix(&self, word: &Word) -> Result<Matrix, CohomError> {
        word.letters()
            .iter()
            .try_fold(Matrix::identity(4), |acc, &l| {
                Ok(&acc * &self.t_action_matrix(l as usize)?)
            })
    }

    /// Applies `g1* ∘ … ∘ gn*` to a polynomial in the `t`'s (rightmost letter
    /// first).
    pub fn act_word_on_polynomial(
        &self,
        word: &Word,
        p: &Polynomial,
    ) -> Result<Polynomial, CohomError> {
        word.letters().iter().rev().try_fold(p.clone(), |acc, &l| {
            Ok(act_on_polynomial(&self.action_on_t(l as usize)?, &acc))
        })
    }
}

/// `s9*: (t1, t2, t3, t4) ↦ (t1, t2, -t4, -t3)`.
pub fn render_t_action(label: usize, p: &SignedPerm) -> String {
    let images: Vec<String> = (0..4)
        .map(|j| {
            let sign = if p.signs()[j] < 0 { "-" } else { "" };
            format!("{sign}t{}", p.image()[j] + 1)
        })
        .collect();
    format!("s{label}*: (t1, t2, t3, t4) ↦ ({})", images.join(", "))
}

/// Substitutes `t_i ↦ w(t_i)` for a signed permutation `w` of the `t`'s.
pub fn act_on_polynomial(w: &SignedPerm, p: &Polynomial) -> Polynomial {
    p.substitute_signed(w)
}

/// Whether `p` is fixed by every generator.
pub fn is_invariant(p: &Polynomial, generators: &[SignedPerm]) -> bool {
    generators.iter().all(|g| act_on_polynomial(g, p) == *p)
}

/// Invariance under the adjacent transpositions, which generate `S4`.
pub fn is_symmetric(p: &Polynomial) -> bool {
    (0..3).all(|i| p.swap_vars(i, i + 1) == *p)
}

fn elementary_in(vars: &[Polynomial; 4], i: usize) -> Polynomial {
    let mut total = Polynomial::zero();
    for mask in 0u32..16 {
        if mask.count_ones() as usize != i {
            continue;
        }
        let term = (0..4)
            .filter(|b| mask >> b & 1 == 1)
            .fold(Polynomial::one(), |acc, b| &acc * &vars[b]);
        total = &total + &term;
    }
    total
}

/// `e_i(t1, t2, t3, t4)` for `i` in `0..=4`.
pub fn elementary_symmetric(i: usize) -> Result<Polynomial, CohomError> {
    if i > 4 {
        return Err(CohomError::IndexOutOfRange(i));
    }
    Ok(elementary_in(&std::array::from_fn(Polynomial::var), i))
}

/// `θ_i = e_i(t1², t2², t3², t4²)` for `i` in `0..=4`.
pub fn theta(i: usize) -> Result<Polynomial, CohomError> {
    if i > 4 {
        return Err(CohomError::IndexOutOfRange(i));
    }
    Ok(elementary_in(
        &std::array::from_fn(|k| Polynomial::var(k).pow(2)),
        i,
    ))
}

/// One polynomial identity `lhs = rhs` and its difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub label: &'static str,
    pub difference: Polynomial,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.difference.is_zero()
    }
}

/// Checks `θ1 = e1² − 2e2`, `θ2 = e2² − 2e1e3 + 2e4`, `θ3 = e3² − 2e2e4`.
pub fn verify_theta_identities() -> Vec<IdentityCheck> {
    let e = |i| elementary_symmetric(i).expect("in range");
    let th = |i| theta(i).expect("in range");
    let two = Rational::from_int(2);
    let rhs1 = &e(1).pow(2) - &e(2).scale(two);
    let rhs2 = &(&e(2).pow(2) - &(&e(1) * &e(3)).scale(two)) + &e(4).scale(two);
    let rhs3 = &e(3).pow(2) - &(&e(2) * &e(4)).scale(two);
    vec![
        IdentityCheck {
            label: "θ1 = e1^2 - 2e2",
            difference: &th(1) - &rhs1,
        },
        IdentityCheck {
            label: "θ2 = e2^2 - 2e1e3 + 2e4",
            difference: &th(2) - &rhs2,
        },
        IdentityCheck {
            label: "θ3 = e3^2 - 2e2e4",
            difference: &th(3) - &rhs3,
        },
    ]
}
