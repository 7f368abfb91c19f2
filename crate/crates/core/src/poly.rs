//! Sparse polynomials in `t1, t2, t3, t4` over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;
use crate::rootsys::SignedPerm;

/// Degree of each `t_i` in cohomology when no other grading is given.
pub const DEFAULT_GRADING: u32 = 4;

pub type Exponent = [u32; 4];

/// A polynomial stored as exponent vector ↦ nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::monomial([0; 4], c)
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::ONE)
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Polynomial { terms }
    }

    /// The variable `t_{i+1}` (0-based `i`).
    pub fn var(i: usize) -> Self {
        let mut exp = [0; 4];
        exp[i] = 1;
        Polynomial::monomial(exp, Rational::ONE)
    }

    /// `sum c_i t_i`.
    pub fn linear(coeffs: &[Rational; 4]) -> Self {
        coeffs
            .iter()
            .enumerate()
            .fold(Polynomial::zero(), |acc, (i, c)| {
                acc + Polynomial::var(i).scale(*c)
            })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &Exponent) -> Rational {
        self.terms.get(exp).copied().unwrap_or(Rational::ZERO)
    }

    pub fn scale(&self, c: Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(e, v)| (*e, *v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Largest total degree in the variables, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    /// Cohomological degree when each `t_i` has degree `m`, for homogeneous
    /// polynomials.
    pub fn graded_degree(&self, m: u32) -> Option<u32> {
        if !self.is_homogeneous() {
            return None;
        }
        self.total_degree().map(|d| d * m)
    }

    /// Substitutes `t_i ↦ sign_i · t_{image(i)}`.
    pub fn substitute_signed(&self, perm: &SignedPerm) -> Self {
        let image = perm.image();
        let signs = perm.signs();
        let mut out = Polynomial::zero();
        for (exp, c) in &self.terms {
            let mut new_exp = [0; 4];
            let mut sign = 1i64;
            for i in 0..4 {
                new_exp[image[i] as usize] = exp[i];
                if signs[i] < 0 && exp[i] % 2 == 1 {
                    sign = -sign;
                }
            }
            out.add_term(new_exp, *c * Rational::from_int(sign));
        }
        out
    }

    /// Swaps `t_{i+1}` and `t_{j+1}`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut image = [0, 1, 2, 3];
        image.swap(i, j);
        self.substitute_signed(&SignedPerm::new(image, [1; 4]).expect("transposition"))
    }

    fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(Rational::ZERO);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, *c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = std::array::from_fn(|i| ea[i] + eb[i]);
                out.add_term(e, *ca * *cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-Rational::ONE)
    }
}

macro_rules! by_value {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Writes `c·body` as one signed term of a sum; `first` suppresses the
/// leading ` + `.
pub(crate) fn write_term(out: &mut String, coeff: Rational, body: &str, first: bool) {
    let negative = coeff < Rational::ZERO;
    let magnitude = coeff.abs();
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    if body.is_empty() {
        out.push_str(&magnitude.to_string());
    } else if magnitude == Rational::ONE {
        out.push_str(body);
    } else if magnitude.is_integer() {
        out.push_str(&format!("{magnitude}{body}"));
    } else {
        out.push_str(&format!("({magnitude}){body}"));
    }
}

/// Renders `Σ c_i · label(i)` skipping zero coefficients; `"0"` if empty.
pub(crate) fn render_linear(coeffs: &[Rational], label: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let first = out.is_empty();
        write_term(&mut out, *c, &label(i), first);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Polynomial {
    /// Terms in decreasing total degree, then decreasing lexicographic
    /// exponent order, e.g. `t1^2 + 2t1t2 - t3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Exponent, &Rational)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (k, (exp, c)) in ordered.into_iter().enumerate() {
            let body: String = exp
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("t{}", i + 1)
                    } else {
                        format!("t{}^{p}", i + 1)
                    }
                })
                .collect();
            write_term(&mut out, *c, &body, k == 0);
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(i: usize) -> Polynomial {
        Polynomial::var(i - 1)
    }

    #[test]
    fn display_order() {
        let p = &(&t(1).pow(2) + &(&t(1) * &t(2)).scale(Rational::from_int(2))) - &t(3);
        assert_eq!(p.to_string(), "t1^2 + 2t1t2 - t3");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(
            Polynomial::constant(Rational::new(-1, 2)).to_string(),
            "-1/2"
        );
        assert_eq!(t(4).scale(Rational::new(1, 2)).to_string(), "(1/2)t4");
    }

    #[test]
    fn grading() {
        let p = &t(1) * &t(2);
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.graded_degree(DEFAULT_GRADING), Some(8));
        assert_eq!((&p + &t(3)).graded_degree(4), None);
        assert_eq!(Polynomial::zero().total_degree(), None);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &t(1) - &t(1);
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
    }

    #[test]
    fn signed_substitution() {
        // t3 ↦ -t4, t4 ↦ -t3
        let s9 = SignedPerm::new([0, 1, 3, 2], [1, 1, -1, -1]).unwrap();
        let e1 = &(&t(1) + &t(2)) + &(&t(3) + &t(4));
        assert_eq!(e1.substitute_signed(&s9).to_string(), "t1 + t2 - t3 - t4");
        let e4 = &(&t(1) * &t(2)) * &(&t(3) * &t(4));
        assert_eq!(e4.substitute_signed(&s9), e4);
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::array::uniform4(0u32..3), -5i64..6), 0..6).prop_map(|terms| {
            terms.into_iter().fold(Polynomial::zero(), |acc, (e, c)| {
                acc + Polynomial::monomial(e, Rational::from_int(c))
            })
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn substitution_is_a_ring_map(a in small_poly(), b in small_poly()) {
            let p = SignedPerm::new([2, 0, 3, 1], [-1, 1, -1, 1]).unwrap();
            prop_assert_eq!((&a * &b).substitute_signed(&p), &a.substitute_signed(&p) * &b.substitute_signed(&p));
            prop_assert_eq!((&a + &b).substitute_signed(&p), &a.substitute_signed(&p) + &b.substitute_signed(&p));
        }
    }
}
