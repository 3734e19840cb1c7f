//! The nearest-integer pseudo-Euclidean algorithm r_i = a_{i+1}λr_{i+1} − r_{i+2}.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{Context, QLambda, ZLambda};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfExpansion {
    pub terms: Vec<BigInt>,
    pub terminated: bool,
    pub steps_used: usize,
}

impl CfExpansion {
    /// `[a1; a2, …]`-style rendering with `;` separators, e.g. `[0; -2]`.
    pub fn render(&self) -> String {
        let t: Vec<String> = self.terms.iter().map(|x| x.to_string()).collect();
        format!("[{}]", t.join("; "))
    }
}

/// A point of Q(λ) ∪ {∞}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Projective {
    Finite(QLambda),
    Infinity,
}

impl Context {
    /// A rational close to x / (λy); y must be nonzero.
    fn approx_ratio(&self, x: &ZLambda, y: &ZLambda) -> BigRational {
        let mut bits = 64;
        loop {
            let yi = self.interval(y, bits);
            let width = &yi.hi - &yi.lo;
            let mid2 = &yi.hi + &yi.lo;
            if !yi.contains_zero() && mid2.magnitude() > &(width.magnitude() * 8u32) {
                let xi = self.interval(x, bits);
                let li = self.lambda_interval(bits);
                let den = yi.mid_rational() * li.mid_rational();
                return xi.mid_rational() / den;
            }
            bits *= 2;
        }
    }

    /// The integer m with −|y|λ/2 ≤ mλy − x < |y|λ/2, and the remainder mλy − x.
    pub fn nearest_step(&self, x: &ZLambda, y: &ZLambda) -> (BigInt, ZLambda) {
        let y_pos = self.is_positive(y);
        let t = self.approx_ratio(x, y);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut m = if y_pos {
            (t - half).ceil().to_integer()
        } else {
            (t + half).floor().to_integer()
        };
        let ly = self.mul_lambda(&if y_pos { y.clone() } else { -y });
        // moving m by one moves the remainder by λy
        let up = if y_pos { BigInt::one() } else { -BigInt::one() };
        loop {
            let rem = &self.mul_lambda(y).scale(&m) - x;
            let twice = rem.scale(&BigInt::from(2));
            if self.sign(&(&twice + &ly)) == Ordering::Less {
                m += &up;
            } else if self.sign(&(&ly - &twice)) != Ordering::Greater {
                m -= &up;
            } else {
                return (m, rem);
            }
        }
    }

    pub fn pseudo_euclid(&self, r0: &QLambda, r1: &QLambda, max_steps: usize) -> Result<CfExpansion> {
        if r1.is_zero() {
            return Err(Error::ZeroInput);
        }
        // scaling both by the same positive integer leaves every quotient unchanged
        let mut x = r0.num().scale(r1.den());
        let mut y = r1.num().scale(r0.den());
        let mut terms = Vec::new();
        while terms.len() < max_steps {
            let (m, rem) = self.nearest_step(&x, &y);
            terms.push(m);
            if rem.is_zero() {
                let steps_used = terms.len();
                return Ok(CfExpansion {
                    terms,
                    terminated: true,
                    steps_used,
                });
            }
            x = std::mem::replace(&mut y, rem);
        }
        Ok(CfExpansion {
            steps_used: terms.len(),
            terms,
            terminated: false,
        })
    }

    /// a₁λ − 1/(a₂λ − 1/(⋯)) with 1/∞ = 0 and 1/0 = ∞.
    pub fn eval_cf_homogeneous(&self, terms: &[BigInt]) -> (ZLambda, ZLambda) {
        // value = num/den, starting from ∞ = 1/0
        let mut num = self.one();
        let mut den = self.zero();
        for a in terms.iter().rev() {
            let al = self.lambda().scale(a);
            let next_num = &self.mul(&al, &num) - &den;
            den = num;
            num = next_num;
        }
        (num, den)
    }

    pub fn eval_cf(&self, terms: &[BigInt]) -> Projective {
        let (num, den) = self.eval_cf_homogeneous(terms);
        if den.is_zero() {
            return Projective::Infinity;
        }
        let inv = self.inverse(&den).expect("nonzero");
        Projective::Finite(self.qmul(&QLambda::from_integral(num), &inv))
    }

    /// True when the expansion evaluates back to r0/r1 exactly.
    pub fn cf_matches(&self, terms: &[BigInt], r0: &QLambda, r1: &QLambda) -> bool {
        let (num, den) = self.eval_cf_homogeneous(terms);
        let lhs = self.mul(&num, &r1.num().scale(r0.den()));
        let rhs = self.mul(&den, &r0.num().scale(r1.den()));
        lhs == rhs && !(num.is_zero() && den.is_zero())
    }
}

impl Projective {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Projective::Infinity)
    }
}
