//! The first Pontryagin class of the curvature distribution `E_{α1}` for
//! multiplicity 4, solved as an exact homogeneous linear system.
//!
//! The unknown class is `p1(E_{α1}) = k1 t1 + k2 t2 + k3 t3 + k4 t4`. Every
//! other `p1(E_{αi})` is a pullback of it along the word expressing `αi` in
//! terms of `α1`. Three families of constraints then cut the coefficient
//! space down to a line:
//!
//! 1. the leaf sphere of `E_{α1}` is a 4-sphere with stably trivial tangent
//!    bundle, so `<p1(E_{α1}), b1> = 0`;
//! 2. `TM` is stably trivial, so the twelve classes sum to zero;
//! 3. `p1(E_{α7}) + … + p1(E_{α12})` is pulled back from the focal manifold,
//!    so it must be symmetric in `t1..t4`.
//!
//! Unknowns are carried as exact linear forms, so redundant (`0 = 0`) rows
//! stay visible.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use thiserror::Error;

use crate::cohomring::{Basis, CohClass, CohomError, CohomologyModel, HomClass};
use crate::linalg::Matrix;
use crate::rational::Rational;
use crate::rootsys::{Word, ROOT_WORD_TABLE};

pub const GENERIC_NAMES: [&str; 4] = ["k1", "k2", "k3", "k4"];
/// Names used once `k2` has been identified with `k1 = k`.
pub const TABLE_NAMES: [&str; 4] = ["k", "k2", "k3", "k4"];

/// The classes `p1(E_{αi})`, `i = 2..=12`, as printed once `k1 = k2 = k`.
/// Entries give the coefficient of `t1..t4` as `(sign, unknown)` where the
/// unknown is 1 for `k`, 3 for `k3` and 4 for `k4`.
pub const PRINTED_ORBIT_TABLE: [(usize, [(i8, u8); 4]); 11] = [
    (2, [(1, 3), (1, 1), (1, 1), (1, 4)]),
    (3, [(1, 3), (1, 4), (1, 1), (1, 1)]),
    (4, [(1, 1), (1, 3), (1, 1), (1, 4)]),
    (5, [(1, 3), (1, 1), (1, 4), (1, 1)]),
    (6, [(1, 1), (1, 3), (1, 4), (1, 1)]),
    (7, [(1, 1), (-1, 1), (1, 3), (-1, 4)]),
    (8, [(1, 3), (1, 1), (-1, 1), (-1, 4)]),
    (9, [(1, 3), (-1, 4), (1, 1), (-1, 1)]),
    (10, [(1, 1), (1, 3), (-1, 1), (-1, 4)]),
    (11, [(1, 3), (1, 1), (-1, 4), (-1, 1)]),
    (12, [(1, 1), (1, 3), (-1, 4), (-1, 1)]),
];

/// The classes for `α7..α12` as printed once also `k3 = −k`.
pub const PRINTED_FOCAL_TABLE: [(usize, [(i8, u8); 4]); 6] = [
    (7, [(1, 1), (-1, 1), (-1, 1), (-1, 4)]),
    (8, [(-1, 1), (1, 1), (-1, 1), (-1, 4)]),
    (9, [(-1, 1), (-1, 4), (1, 1), (-1, 1)]),
    (10, [(1, 1), (-1, 1), (-1, 1), (-1, 4)]),
    (11, [(-1, 1), (1, 1), (-1, 4), (-1, 1)]),
    (12, [(1, 1), (-1, 1), (-1, 4), (-1, 1)]),
];

/// The printed form of `p1(ξ)`, with the stray `ω4` in place of `ω9`.
pub const PRINTED_XI_P1: &str = "2k(ω2 - ω4)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PontError {
    #[error(transparent)]
    Cohom(#[from] CohomError),
    #[error("computed class for alpha_{0} does not match the printed table")]
    TableMismatch(usize),
    #[error("solution space has dimension {0}, expected 1")]
    UnexpectedDimension(usize),
}

// ---------------------------------------------------------------------------
// Linear forms in the unknowns

/// `Σ c_i k_i` with exact coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LinearForm(pub [Rational; 4]);

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn var(i: usize) -> Self {
        let mut c = [Rational::ZERO; 4];
        c[i] = Rational::ONE;
        LinearForm(c)
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        LinearForm(c.map(Rational::from_int))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, s: Rational) -> Self {
        LinearForm(self.0.map(|c| c * s))
    }

    pub fn eval(&self, values: &[Rational; 4]) -> Rational {
        self.0.iter().zip(values).map(|(a, b)| *a * *b).sum()
    }

    /// Highest-index unknown with a nonzero coefficient.
    pub fn last_var(&self) -> Option<usize> {
        (0..4).rev().find(|&i| !self.0[i].is_zero())
    }

    pub fn render(&self, names: &[&str; 4]) -> String {
        crate::poly::render_linear(&self.0, |i| names[i].to_string())
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: LinearForm) -> LinearForm {
        LinearForm(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: LinearForm) -> LinearForm {
        self + (-rhs)
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm(self.0.map(|c| -c))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&GENERIC_NAMES))
    }
}

/// A substitution `k_i ↦ images[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Substitution {
    images: [LinearForm; 4],
}

impl Default for Substitution {
    fn default() -> Self {
        Substitution::identity()
    }
}

impl Substitution {
    pub fn identity() -> Self {
        Substitution {
            images: std::array::from_fn(LinearForm::var),
        }
    }

    pub fn apply(&self, form: &LinearForm) -> LinearForm {
        (0..4).fold(LinearForm::zero(), |acc, i| {
            acc + self.images[i].scale(form.0[i])
        })
    }

    /// Extends the substitution so that `form = 0` holds, by solving `form`
    /// (after the current substitution) for its highest-index unknown.
    /// Returns the eliminated unknown, or `None` if nothing was left to
    /// eliminate.
    pub fn eliminate(&mut self, form: &LinearForm) -> Option<usize> {
        let reduced = self.apply(form);
        let v = reduced.last_var()?;
        let c = reduced.0[v];
        let mut rest = reduced;
        rest.0[v] = Rational::ZERO;
        let value = rest.scale(-c.recip());
        let mut step = Substitution::identity();
        step.images[v] = value;
        self.images = self.images.map(|img| step.apply(&img));
        Some(v)
    }
}

// ---------------------------------------------------------------------------
// Classes with unknown coefficients

/// `Σ coeffs[i] · t_{i+1}` where each coefficient is a linear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct UnknownClass {
    pub coeffs: [LinearForm; 4],
}

impl UnknownClass {
    /// `k1 t1 + k2 t2 + k3 t3 + k4 t4`.
    pub fn generic() -> Self {
        UnknownClass {
            coeffs: std::array::from_fn(LinearForm::var),
        }
    }

    /// Builds a class from one row of [`PRINTED_ORBIT_TABLE`] / [`PRINTED_FOCAL_TABLE`].
    pub fn from_table_row(row: &[(i8, u8); 4]) -> Self {
        UnknownClass {
            coeffs: row.map(|(sign, var)| {
                LinearForm::var(var as usize - 1).scale(Rational::from_int(sign as i64))
            }),
        }
    }

    /// Applies a linear map given on `t`-coordinates.
    pub fn apply_matrix(&self, m: &Matrix) -> Self {
        UnknownClass {
            coeffs: std::array::from_fn(|i| {
                (0..4).fold(LinearForm::zero(), |acc, j| {
                    acc + self.coeffs[j].scale(m[(i, j)])
                })
            }),
        }
    }

    pub fn substitute(&self, s: &Substitution) -> Self {
        UnknownClass {
            coeffs: self.coeffs.map(|c| s.apply(&c)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LinearForm::is_zero)
    }

    /// `<self, h>` as a linear form in the unknowns.
    pub fn pairing(&self, model: &CohomologyModel, h: &HomClass) -> LinearForm {
        (0..4).fold(LinearForm::zero(), |acc, i| {
            acc + self.coeffs[i].scale(model.pairing(&CohClass::basis_vector(Basis::T, i), h))
        })
    }

    /// The class at concrete values of the unknowns.
    pub fn evaluate(&self, values: &[Rational; 4]) -> CohClass {
        CohClass::new(Basis::T, self.coeffs.map(|c| c.eval(values)))
    }

    /// Renders e.g. `k3 t1 + k t2 - (k + k4) t4`.
    pub fn render(&self, names: &[&str; 4]) -> String {
        let mut out = String::new();
        for (i, form) in self.coeffs.iter().enumerate() {
            if form.is_zero() {
                continue;
            }
            let vars: Vec<usize> = (0..4).filter(|&v| !form.0[v].is_zero()).collect();
            let first = out.is_empty();
            // pull a common leading sign out of the term
            let negative = form.0[vars[0]] < Rational::ZERO;
            let shown = if negative { -*form } else { *form };
            let body = if vars.len() == 1 {
                shown.render(names)
            } else {
                format!("({})", shown.render(names))
            };
            match (first, negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&format!("{body} t{}", i + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Add for UnknownClass {
    type Output = UnknownClass;
    fn add(self, rhs: UnknownClass) -> UnknownClass {
        UnknownClass {
            coeffs: std::array::from_fn(|i| self.coeffs[i] + rhs.coeffs[i]),
        }
    }
}

impl fmt::Display for UnknownClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&GENERIC_NAMES))
    }
}

pub fn sum_classes<'a>(classes: impl IntoIterator<Item = &'a UnknownClass>) -> UnknownClass {
    classes
        .into_iter()
        .fold(UnknownClass::default(), |acc, c| acc + *c)
}

// ---------------------------------------------------------------------------
// Constraints

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    LeafSphere,
    SumZero,
    Symmetry,
}

impl ConstraintKind {
    pub fn name(self) -> &'static str {
        match self {
            ConstraintKind::LeafSphere => "leaf-sphere",
            ConstraintKind::SumZero => "sum-zero",
            ConstraintKind::Symmetry => "symmetry",
        }
    }
}

/// The homogeneous equation `form = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub kind: ConstraintKind,
    pub label: String,
    pub form: LinearForm,
}

impl Equation {
    pub fn is_vacuous(&self) -> bool {
        self.form.is_zero()
    }

    pub fn render(&self, names: &[&str; 4]) -> String {
        format!("{} = 0", self.form.render(names))
    }
}

/// `p1(E_{αi})` for `i = 1..=12`, each a pullback of `generic` along the
/// word for `αi`.
pub fn orbit_classes(
    model: &CohomologyModel,
    generic: &UnknownClass,
) -> Result<[UnknownClass; 12], PontError> {
    let mut out = [*generic; 12];
    for &(root, letters) in &ROOT_WORD_TABLE {
        let m = model.word_pullback_matrix(&Word::from(letters))?;
        out[root - 1] = generic.apply_matrix(&m);
    }
    Ok(out)
}

/// `<p1(E_{α1}), b1> = 0`.
pub fn leaf_sphere_constraint(model: &CohomologyModel, alpha1_class: &UnknownClass) -> Equation {
    let b1 = HomClass::leaf(1).expect("1 is simple");
    Equation {
        kind: ConstraintKind::LeafSphere,
        label: "<p1(E_α1), b1> = 0".to_string(),
        form: alpha1_class.pairing(model, &b1),
    }
}

/// One equation per `t_i`: the coefficient of `t_i` in the total sum is zero.
pub fn sum_zero_constraint(classes: &[UnknownClass]) -> Vec<Equation> {
    let total = sum_classes(classes);
    (0..4)
        .map(|i| Equation {
            kind: ConstraintKind::SumZero,
            label: format!("t{} coefficient of p1(TM)", i + 1),
            form: total.coeffs[i],
        })
        .collect()
}

/// Invariance of `Σ classes` under the transpositions `(t1 t2)`, `(t2 t3)`,
/// `(t3 t4)`, which generate `S4`. Vacuous and repeated equations are
/// dropped.
pub fn symmetry_constraint(classes: &[UnknownClass]) -> Vec<Equation> {
    let total = sum_classes(classes);
    let mut out: Vec<Equation> = Vec::new();
    for i in 0..3 {
        let form = total.coeffs[i] - total.coeffs[i + 1];
        if form.is_zero() || out.iter().any(|e| e.form == form || e.form == -form) {
            continue;
        }
        out.push(Equation {
            kind: ConstraintKind::Symmetry,
            label: format!("invariance under (t{} t{})", i + 1, i + 2),
            form,
        });
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub equations: Vec<Equation>,
}

impl ConstraintSystem {
    pub fn push(&mut self, e: Equation) {
        self.equations.push(e);
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_fn(self.equations.len(), 4, |i, j| self.equations[i].form.0[j])
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    pub fn solve(&self) -> SolutionSpace {
        SolutionSpace {
            basis: self
                .matrix()
                .nullspace()
                .into_iter()
                .map(|v| v.try_into().expect("length 4"))
                .collect(),
        }
    }
}

/// Basis of the solution space of a homogeneous system in `(k1..k4)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSpace {
    pub basis: Vec<[Rational; 4]>,
}

impl SolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Whether the space is exactly the line through `v`.
    pub fn is_line_through(&self, v: &[Rational; 4]) -> bool {
        if self.dimension() != 1 {
            return false;
        }
        let m = Matrix::from_fn(2, 4, |i, j| if i == 0 { self.basis[0][j] } else { v[j] });
        m.rank() == 1 && v.iter().any(|c| !c.is_zero())
    }

    /// The generator of a line, scaled so its first nonzero entry is 1.
    pub fn normalized_generator(&self) -> Result<[Rational; 4], PontError> {
        if self.dimension() != 1 {
            return Err(PontError::UnexpectedDimension(self.dimension()));
        }
        let v = self.basis[0];
        let lead = *v
            .iter()
            .find(|c| !c.is_zero())
            .expect("basis vectors are nonzero");
        Ok(v.map(|c| c / lead))
    }
}

/// Which constraint families to impose. All on by default; switching one
/// off is a diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintToggles {
    pub leaf_sphere: bool,
    pub sum_zero: bool,
    pub symmetry: bool,
}

impl Default for ConstraintToggles {
    fn default() -> Self {
        ConstraintToggles {
            leaf_sphere: true,
            sum_zero: true,
            symmetry: true,
        }
    }
}

/// Every intermediate of the constraint solve.
#[derive(Debug, Clone)]
pub struct PontryaginSolve {
    pub toggles: ConstraintToggles,
    /// `p1(E_{αi})` with fully generic unknowns.
    pub classes: [UnknownClass; 12],
    pub leaf: Option<Equation>,
    pub sum_zero: Vec<Equation>,
    /// `Σ_{i=7..12} p1(E_{αi})` after the substitutions available before the
    /// symmetry constraint.
    pub focal_sum: UnknownClass,
    pub symmetry: Vec<Equation>,
    pub system: ConstraintSystem,
    pub solution: SolutionSpace,
}

impl PontryaginSolve {
    /// The twelve classes after `k2 = k1`.
    pub fn classes_k2_eq_k1(&self) -> [UnknownClass; 12] {
        let mut s = Substitution::identity();
        s.eliminate(&LinearForm::from_ints([1, -1, 0, 0]));
        self.classes.map(|c| c.substitute(&s))
    }

    /// The twelve classes after `k2 = k1` and `k3 = −k1`.
    pub fn classes_k3_eq_minus_k(&self) -> [UnknownClass; 12] {
        let mut s = Substitution::identity();
        s.eliminate(&LinearForm::from_ints([1, -1, 0, 0]));
        s.eliminate(&LinearForm::from_ints([1, 0, 1, 0]));
        self.classes.map(|c| c.substitute(&s))
    }
}

/// Checks the computed classes against [`PRINTED_ORBIT_TABLE`] and [`PRINTED_FOCAL_TABLE`];
/// returns the first root whose class differs.
pub fn check_printed_tables(classes: &[UnknownClass; 12]) -> Result<(), PontError> {
    let mut s = Substitution::identity();
    s.eliminate(&LinearForm::from_ints([1, -1, 0, 0]));
    for (root, row) in &PRINTED_ORBIT_TABLE {
        if classes[root - 1].substitute(&s) != UnknownClass::from_table_row(row) {
            return Err(PontError::TableMismatch(*root));
        }
    }
    s.eliminate(&LinearForm::from_ints([1, 0, 1, 0]));
    for (root, row) in &PRINTED_FOCAL_TABLE {
        if classes[root - 1].substitute(&s) != UnknownClass::from_table_row(row) {
            return Err(PontError::TableMismatch(*root));
        }
    }
    Ok(())
}

/// Builds the orbit classes, validates them against the printed tables, and
/// solves the enabled constraints.
pub fn solve_constraints(
    model: &CohomologyModel,
    toggles: ConstraintToggles,
) -> Result<PontryaginSolve, PontError> {
    let classes = orbit_classes(model, &UnknownClass::generic())?;
    check_printed_tables(&classes)?;

    let mut system = ConstraintSystem::default();
    let mut subst = Substitution::identity();

    let leaf = toggles
        .leaf_sphere
        .then(|| leaf_sphere_constraint(model, &classes[0]));
    if let Some(eq) = &leaf {
        subst.eliminate(&eq.form);
        system.push(eq.clone());
    }

    let mut sum_zero = Vec::new();
    if toggles.sum_zero {
        let reduced: Vec<UnknownClass> = classes.iter().map(|c| c.substitute(&subst)).collect();
        sum_zero = sum_zero_constraint(&reduced);
        for eq in &sum_zero {
            subst.eliminate(&eq.form);
            system.push(eq.clone());
        }
    }

    let focal: Vec<UnknownClass> = classes[6..].iter().map(|c| c.substitute(&subst)).collect();
    let focal_sum = sum_classes(&focal);
    let mut symmetry = Vec::new();
    if toggles.symmetry {
        symmetry = symmetry_constraint(&focal);
        for eq in &symmetry {
            system.push(eq.clone());
        }
    }

    let solution = system.solve();
    Ok(PontryaginSolve {
        toggles,
        classes,
        leaf,
        sum_zero,
        focal_sum,
        symmetry,
        system,
        solution,
    })
}

// ---------------------------------------------------------------------------
// The distribution ξ = E_{α1}

/// The Euler class and first Pontryagin class of `ξ = E_{α1}`, in the `ω`
/// basis. The Pontryagin class is `k · p1_per_k` for an unknown `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XiClasses {
    pub euler: CohClass,
    pub p1_per_k: CohClass,
    /// `p1(E_{α1}) = k · t_direction` in the `t` basis.
    pub t_direction: CohClass,
}

impl XiClasses {
    pub fn p1_at(&self, k: i64) -> CohClass {
        self.p1_per_k.scale(Rational::from_int(k))
    }

    /// `p1` written as `c·k(…)` with the content pulled out, e.g. `2k(ω2 - ω9)`.
    pub fn render_p1(&self) -> String {
        let content = rational_content(&self.p1_per_k.coords);
        if content.is_zero() {
            return "0".to_string();
        }
        let primitive = self.p1_per_k.scale(content.recip());
        let prefix = if content == Rational::ONE {
            String::new()
        } else {
            content.to_string()
        };
        format!("{prefix}k({primitive})")
    }
}

pub fn xi_classes(
    model: &CohomologyModel,
    solution: &SolutionSpace,
) -> Result<XiClasses, PontError> {
    let direction = solution.normalized_generator()?;
    let t_direction = CohClass::new(Basis::T, direction);
    Ok(XiClasses {
        euler: model.euler_class_d(1)?,
        p1_per_k: model.to_omega(&t_direction),
        t_direction,
    })
}

/// Positive generator `g` of `{s ∈ Q : s·c_i ∈ 2Z for all i}`: the values of
/// `k` allowed when `k · class` must be an integral class divisible by 2.
/// `None` for the zero class.
pub fn even_integrality_generator(coords: &[Rational; 4]) -> Option<Rational> {
    // s·c ∈ 2Z  ⇔  s ∈ (2/c)Z; the intersection of the lattices a_i Z is
    // lcm(a_i) for rationals a_i = p_i/q_i, i.e. lcm(p_i)/gcd(q_i).
    let lattices: Vec<Rational> = coords
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| (Rational::from_int(2) / *c).abs())
        .collect();
    if lattices.is_empty() {
        return None;
    }
    let num = lattices.iter().fold(1i64, |acc, a| acc.lcm(&a.numer()));
    let den = lattices.iter().fold(0i64, |acc, a| acc.gcd(&a.denom()));
    Some(Rational::new(num, den))
}

/// Greatest rational `g` with every `c_i / g` an integer, positive; zero for
/// the zero vector.
fn rational_content(coords: &[Rational; 4]) -> Rational {
    let nonzero: Vec<&Rational> = coords.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Rational::ZERO;
    }
    let num = nonzero.iter().fold(0i64, |acc, c| acc.gcd(&c.numer()));
    let den = nonzero.iter().fold(1i64, |acc, c| acc.lcm(&c.denom()));
    Rational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_d4;
    use proptest::prelude::*;

    fn model() -> CohomologyModel {
        CohomologyModel::new(&build_d4(4).unwrap())
    }

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn orbit_class_examples() {
        let classes = orbit_classes(&model(), &UnknownClass::generic()).unwrap();
        assert_eq!(classes[0], UnknownClass::generic());
        let mut s = Substitution::identity();
        s.eliminate(&LinearForm::from_ints([1, -1, 0, 0]));
        assert_eq!(
            classes[1].substitute(&s).render(&TABLE_NAMES),
            "k3 t1 + k t2 + k t3 + k4 t4"
        );
        assert_eq!(
            classes[6].substitute(&s).render(&TABLE_NAMES),
            "k t1 - k t2 + k3 t3 - k4 t4"
        );
        assert!(check_printed_tables(&classes).is_ok());
    }

    #[test]
    fn a_wrong_convention_is_caught() {
        // Reading the pullback words left-to-right gives different classes.
        let m = model();
        let generic = UnknownClass::generic();
        let mut classes = [generic; 12];
        for &(root, letters) in &ROOT_WORD_TABLE {
            let rev: Vec<u8> = letters.iter().rev().copied().collect();
            classes[root - 1] = generic.apply_matrix(&m.word_pullback_matrix(&Word(rev)).unwrap());
        }
        assert!(matches!(
            check_printed_tables(&classes),
            Err(PontError::TableMismatch(_))
        ));
    }

    #[test]
    fn pullback_words_invert() {
        let m = model();
        for &(_, letters) in &ROOT_WORD_TABLE {
            let w = m.word_pullback_matrix(&Word::from(letters)).unwrap();
            let rev: Vec<u8> = letters.iter().rev().copied().collect();
            let w_inv = m.word_pullback_matrix(&Word(rev)).unwrap();
            let c = UnknownClass::generic();
            assert_eq!(c.apply_matrix(&w).apply_matrix(&w_inv), c);
        }
    }

    #[test]
    fn leaf_sphere_equation() {
        let eq = leaf_sphere_constraint(&model(), &UnknownClass::generic());
        assert_eq!(eq.form, LinearForm::from_ints([1, -1, 0, 0]));
        assert_eq!(eq.render(&GENERIC_NAMES), "k1 - k2 = 0");
    }

    #[test]
    fn sum_zero_equations() {
        let sol = solve_constraints(&model(), ConstraintToggles::default()).unwrap();
        let forms: Vec<LinearForm> = sol.sum_zero.iter().map(|e| e.form).collect();
        assert_eq!(
            forms,
            vec![
                LinearForm::from_ints([6, 0, 6, 0]),
                LinearForm::from_ints([4, 0, 4, 0]),
                LinearForm::from_ints([2, 0, 2, 0]),
                LinearForm::zero(),
            ]
        );
        assert!(sol.sum_zero[3].is_vacuous());
    }

    #[test]
    fn sum_zero_agrees_with_column_sums_of_printed_table() {
        // Independent route: add up the transcribed table (plus α1 = k t1 + k t2 + k3 t3 + k4 t4).
        let alpha1 = UnknownClass::from_table_row(&[(1, 1), (1, 1), (1, 3), (1, 4)]);
        let total = PRINTED_ORBIT_TABLE.iter().fold(alpha1, |acc, (_, row)| {
            acc + UnknownClass::from_table_row(row)
        });
        let sol = solve_constraints(&model(), ConstraintToggles::default()).unwrap();
        for i in 0..4 {
            assert_eq!(sol.sum_zero[i].form, total.coeffs[i]);
        }
    }

    #[test]
    fn focal_sum_and_symmetry() {
        let sol = solve_constraints(&model(), ConstraintToggles::default()).unwrap();
        // −(k + k4)(t2 + 2t3 + 3t4)
        let kk4 = LinearForm::from_ints([1, 0, 0, 1]);
        let expected = UnknownClass {
            coeffs: [LinearForm::zero(), -kk4, -kk4.scale(r(2)), -kk4.scale(r(3))],
        };
        assert_eq!(sol.focal_sum, expected);
        assert_eq!(sol.symmetry.len(), 1);
        assert_eq!(sol.symmetry[0].form, kk4);
        // at the solution the focal sum vanishes
        let v = sol.solution.normalized_generator().unwrap();
        assert!(sol
            .focal_sum
            .evaluate(&v)
            .coords
            .iter()
            .all(Rational::is_zero));
    }

    #[test]
    fn solution_spaces() {
        let m = model();
        let full = solve_constraints(&m, ConstraintToggles::default()).unwrap();
        assert!(full.solution.is_line_through(&[r(1), r(1), r(-1), r(-1)]));
        for eq in &full.system.equations {
            assert!(eq.form.eval(&full.solution.basis[0]).is_zero());
        }

        let no_sym = solve_constraints(
            &m,
            ConstraintToggles {
                symmetry: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(no_sym.solution.dimension(), 2);
        for v in &no_sym.solution.basis {
            assert_eq!(v[0], v[1]);
            assert_eq!(v[2], -v[0]);
        }

        let none = ConstraintToggles {
            leaf_sphere: false,
            sum_zero: false,
            symmetry: false,
        };
        assert_eq!(solve_constraints(&m, none).unwrap().solution.dimension(), 4);

        let no_leaf = solve_constraints(
            &m,
            ConstraintToggles {
                leaf_sphere: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(no_leaf.solution.dimension(), 2);
    }

    #[test]
    fn xi_euler_and_pontryagin() {
        let m = model();
        let sol = solve_constraints(&m, ConstraintToggles::default()).unwrap();
        let xi = xi_classes(&m, &sol.solution).unwrap();
        assert_eq!(xi.euler, CohClass::from_ints(Basis::Omega, [2, -1, 0, 0]));
        assert_eq!(
            xi.p1_at(1),
            CohClass::from_ints(Basis::Omega, [0, 2, 0, -2])
        );
        assert!(xi.p1_at(0).coords.iter().all(Rational::is_zero));
        assert_eq!(xi.render_p1(), "2k(ω2 - ω9)");
        assert_eq!(even_integrality_generator(&xi.p1_per_k.coords), Some(r(1)));

        let no_sym = solve_constraints(
            &m,
            ConstraintToggles {
                symmetry: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(
            xi_classes(&m, &no_sym.solution),
            Err(PontError::UnexpectedDimension(2))
        );
    }

    #[test]
    fn integrality_generator_examples() {
        let q = |n, d| Rational::new(n, d);
        assert_eq!(
            even_integrality_generator(&[r(1), r(0), r(0), r(0)]),
            Some(r(2))
        );
        assert_eq!(
            even_integrality_generator(&[q(1, 2), r(0), r(0), r(0)]),
            Some(r(4))
        );
        assert_eq!(
            even_integrality_generator(&[r(4), r(6), r(0), r(0)]),
            Some(r(1))
        );
        assert_eq!(even_integrality_generator(&[r(0); 4]), None);
    }

    proptest! {
        #[test]
        fn substitution_enforces_the_eliminated_equation(
            eq in prop::array::uniform4(-5i64..6),
            form in prop::array::uniform4(-5i64..6),
            vals in prop::array::uniform4(-5i64..6),
        ) {
            let eq = LinearForm::from_ints(eq);
            let mut s = Substitution::identity();
            if s.eliminate(&eq).is_some() {
                // the substituted equation is identically zero
                prop_assert!(s.apply(&eq).is_zero());
                // substituted forms agree with the originals on solutions of eq
                let f = LinearForm::from_ints(form);
                let v = vals.map(Rational::from_int);
                let image = LinearForm(std::array::from_fn(|i| s.apply(&LinearForm::var(i)).eval(&v)));
                prop_assert!(eq.eval(&image.0).is_zero());
                prop_assert_eq!(s.apply(&f).eval(&v), f.eval(&image.0));
            }
        }

        #[test]
        fn even_integrality_generator_is_exact(c in prop::array::uniform4((-6i64..7, 1i64..5))) {
            let coords = c.map(|(n, d)| Rational::new(n, d));
            if let Some(g) = even_integrality_generator(&coords) {
                prop_assert!(g > Rational::ZERO);
                prop_assert!(coords.iter().all(|x| (g * *x / Rational::from_int(2)).is_integer()));
                // no proper divisor g/p works
                for p in [2i64, 3, 5, 7] {
                    let smaller = g / Rational::from_int(p);
                    prop_assert!(!coords.iter().all(|x| (smaller * *x / Rational::from_int(2)).is_integer()));
                }
            }
        }
    }
}
