//! Rank-4 and rank-5 bundles over `S^4`, modeled by characteristic numbers.
//!
//! An oriented rank-4 bundle `ξ` over `S^4` is determined by
//! `f(ξ) = (<e(ξ),[S^4]>, <p1(ξ),[S^4]>)`, and `f` is an injective group
//! homomorphism whose image is the kernel of `g(a, b) = 2a - b mod 4`. So a
//! class is just an integer pair, and all bundle arithmetic is integer
//! arithmetic. A rank-5 (stable) bundle is determined by its `p1`, which is
//! always even.
//!
//! The two facts taken as axioms are `π3(SO(5)) = Z` (Bott periodicity) and
//! that `Vect^5(S^4) → H^4(S^4; Z)` is injective with image `2H^4`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg};

use thiserror::Error;

/// Modulus of the realizability congruence.
pub const REALIZABILITY_MODULUS: i64 = 4;
/// Default half-width of the exhaustive window checks.
pub const DEFAULT_WINDOW: i64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Vect4Error {
    #[error("({0}, {1}) is not the pair of a rank-4 bundle: 2a - b is not divisible by 4")]
    NotRealizable(i64, i64),
    #[error("malformed class ({0}, {1}): p1 must be even")]
    OddPontryagin(i64, i64),
}

/// `(a, b) = (<e,[S^4]>, <p1,[S^4]>)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SphereBundleClass {
    pub a: i64,
    pub b: i64,
}

impl SphereBundleClass {
    pub const ZERO: SphereBundleClass = SphereBundleClass { a: 0, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        SphereBundleClass { a, b }
    }

    /// The tangent bundle of `S^4`.
    pub fn tau() -> Self {
        SphereBundleClass::new(2, 0)
    }

    /// The quaternionic line bundle.
    pub fn gamma() -> Self {
        SphereBundleClass::new(1, -2)
    }

    pub fn scale(self, n: i64) -> Self {
        SphereBundleClass::new(n * self.a, n * self.b)
    }

    /// `g(a, b) = 2a - b` reduced into `0..4`.
    pub fn g(self) -> i64 {
        (2 * self.a - self.b).rem_euclid(REALIZABILITY_MODULUS)
    }

    pub fn is_realizable(self) -> bool {
        self.g() == 0
    }

    /// `(n_tau, n_gamma)` with `self = n_tau·τ + n_gamma·γ`.
    pub fn decompose(self) -> Result<(i64, i64), Vect4Error> {
        if !self.is_realizable() {
            return Err(Vect4Error::NotRealizable(self.a, self.b));
        }
        Ok(((2 * self.a + self.b) / 4, -self.b / 2))
    }

    pub fn compose(n_tau: i64, n_gamma: i64) -> Self {
        SphereBundleClass::tau().scale(n_tau) + SphereBundleClass::gamma().scale(n_gamma)
    }

    /// `ξ ↦ ξ ⊕ ε^1`; Pontryagin classes are stable so only `b` survives.
    pub fn stabilize(self) -> Result<StableBundleClass, Vect4Error> {
        if self.b % 2 != 0 {
            return Err(Vect4Error::OddPontryagin(self.a, self.b));
        }
        if !self.is_realizable() {
            return Err(Vect4Error::NotRealizable(self.a, self.b));
        }
        Ok(StableBundleClass { p1: self.b })
    }
}

impl Add for SphereBundleClass {
    type Output = SphereBundleClass;
    fn add(self, rhs: SphereBundleClass) -> SphereBundleClass {
        SphereBundleClass::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Neg for SphereBundleClass {
    type Output = SphereBundleClass;
    fn neg(self) -> SphereBundleClass {
        SphereBundleClass::new(-self.a, -self.b)
    }
}

impl fmt::Display for SphereBundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A rank-5 bundle over `S^4`, by its Pontryagin number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StableBundleClass {
    pub p1: i64,
}

impl StableBundleClass {
    pub fn new(p1: i64) -> Result<Self, Vect4Error> {
        if p1 % 2 != 0 {
            return Err(Vect4Error::OddPontryagin(0, p1));
        }
        Ok(StableBundleClass { p1 })
    }
}

impl Add for StableBundleClass {
    type Output = StableBundleClass;
    fn add(self, rhs: StableBundleClass) -> StableBundleClass {
        StableBundleClass {
            p1: self.p1 + rhs.p1,
        }
    }
}

/// Results of the exhaustive checks over `|a|, |b| <= window`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSequenceCheck {
    pub window: i64,
    /// Realizable classes that stabilize to the trivial bundle.
    pub kernel: Vec<SphereBundleClass>,
    pub kernel_is_tau_multiples: bool,
    pub image: BTreeSet<i64>,
    pub image_is_even_integers: bool,
    pub closed_under_group_ops: bool,
    /// Each aligned 4x4 block of the window holds exactly 4 realizable pairs.
    pub index_four: bool,
    /// Distinct classes have distinct pairs. True by construction.
    pub f_injective: bool,
}

impl ExactSequenceCheck {
    pub fn passed(&self) -> bool {
        self.kernel_is_tau_multiples
            && self.image_is_even_integers
            && self.closed_under_group_ops
            && self.index_four
            && self.f_injective
    }
}

pub fn window_classes(n: i64) -> impl Iterator<Item = SphereBundleClass> {
    (-n..=n).flat_map(move |a| (-n..=n).map(move |b| SphereBundleClass::new(a, b)))
}

/// Checks the exact sequence `π4(S^4) → Vect^4(S^4) → Vect^5(S^4)` on a
/// finite window: the kernel of stabilization is `Zτ` (the image of
/// `∂(ι4) = τ`) and the image is the even integers.
pub fn verify_exact_sequence(n: i64) -> ExactSequenceCheck {
    let realizable: Vec<SphereBundleClass> =
        window_classes(n).filter(|x| x.is_realizable()).collect();

    let kernel: Vec<SphereBundleClass> = realizable
        .iter()
        .copied()
        .filter(|x| x.stabilize().map(|s| s.p1 == 0).unwrap_or(false))
        .collect();
    let expected_kernel: Vec<SphereBundleClass> = (-n..=n)
        .filter(|a| a % 2 == 0)
        .map(|a| SphereBundleClass::tau().scale(a / 2))
        .collect();
    let kernel_is_tau_multiples = kernel == expected_kernel;

    let image: BTreeSet<i64> = realizable
        .iter()
        .filter_map(|x| x.stabilize().ok())
        .map(|s| s.p1)
        .collect();
    let expected_image: BTreeSet<i64> = (-n..=n).filter(|b| b % 2 == 0).collect();
    let image_is_even_integers = image == expected_image;

    let closed_under_group_ops = realizable.iter().all(|x| (-*x).is_realizable())
        && realizable
            .iter()
            .all(|x| realizable.iter().all(|y| (*x + *y).is_realizable()));

    let index_four = (-n..=n - 3).step_by(4).all(|a0| {
        (-n..=n - 3).step_by(4).all(|b0| {
            (a0..a0 + 4)
                .flat_map(|a| (b0..b0 + 4).map(move |b| (a, b)))
                .filter(|&(a, b)| SphereBundleClass::new(a, b).is_realizable())
                .count()
                == 4
        })
    });

    let distinct: BTreeSet<SphereBundleClass> = window_classes(n).collect();
    let f_injective = distinct.len() as i64 == (2 * n + 1) * (2 * n + 1);

    ExactSequenceCheck {
        window: n,
        kernel,
        kernel_is_tau_multiples,
        image,
        image_is_even_integers,
        closed_under_group_ops,
        index_four,
        f_injective,
    }
}
