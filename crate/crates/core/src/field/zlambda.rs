use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An element Σ c_i λ^i of Z[λ], stored on the integral basis 1, λ, …, λ^{d-1}.
///
/// The coefficient vector always has exactly `d` entries, so structural
/// equality is equality in the ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZLambda {
    coeffs: Vec<BigInt>,
}

impl ZLambda {
    pub fn zero(d: usize) -> Self {
        ZLambda {
            coeffs: vec![BigInt::zero(); d],
        }
    }

    pub fn one(d: usize) -> Self {
        Self::from_int(d, BigInt::one())
    }

    pub fn from_int(d: usize, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(d);
        z.coeffs[0] = n.into();
        z
    }

    /// Builds an element from a coefficient vector of length exactly `d`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "Z[λ] has degree at least 1");
        ZLambda { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The integer value when the element lies in Z·1.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ZLambda {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// gcd of the coefficients (nonnegative; zero for the zero element).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_int(&self, k: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (quo, rem) = c.div_rem(k);
            if !rem.is_zero() {
                return None;
            }
            out.push(quo);
        }
        Some(ZLambda { coeffs: out })
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Semicolon-joined coefficients in ascending powers, e.g. `0;2`.
    pub fn to_coeff_string(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(
            self.coeffs.len(),
            other.coeffs.len(),
            "elements from different fields"
        );
        ZLambda {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl Add for &ZLambda {
    type Output = ZLambda;
    fn add(self, rhs: &ZLambda) -> ZLambda {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ZLambda {
    type Output = ZLambda;
    fn sub(self, rhs: &ZLambda) -> ZLambda {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Add for ZLambda {
    type Output = ZLambda;
    fn add(self, rhs: ZLambda) -> ZLambda {
        &self + &rhs
    }
}

impl Sub for ZLambda {
    type Output = ZLambda;
    fn sub(self, rhs: ZLambda) -> ZLambda {
        &self - &rhs
    }
}

impl Neg for &ZLambda {
    type Output = ZLambda;
    fn neg(self) -> ZLambda {
        ZLambda {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for ZLambda {
    type Output = ZLambda;
    fn neg(self) -> ZLambda {
        -&self
    }
}

impl fmt::Display for ZLambda {
    /// Renders as a polynomial in `λ`, e.g. `2λ+3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mag = c.abs();
            if k == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => out.push('λ'),
                _ => out.push_str(&format!("λ^{k}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// An element of Q(λ) as `num / den` with `den > 0` and gcd(den, content(num)) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QLambda {
    num: ZLambda,
    den: BigInt,
}

impl QLambda {
    pub fn new(num: ZLambda, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        let g = num.content().gcd(&den);
        if g.is_one() || g.is_zero() {
            return QLambda { num, den };
        }
        QLambda {
            num: num.div_int(&g).expect("gcd divides"),
            den: den / g,
        }
    }

    pub fn from_integral(num: ZLambda) -> Self {
        QLambda {
            num,
            den: BigInt::one(),
        }
    }

    pub fn num(&self) -> &ZLambda {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &QLambda) -> QLambda {
        let num = &self.num.scale(&other.den) + &other.num.scale(&self.den);
        QLambda::new(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &QLambda) -> QLambda {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QLambda {
        QLambda {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for QLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}
