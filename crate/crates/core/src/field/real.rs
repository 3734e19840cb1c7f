//! Dyadic interval arithmetic and the enclosure of λ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly;

/// A closed interval [lo / 2^bits, hi / 2^bits].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

fn floor_shift(x: &BigInt, k: u32) -> BigInt {
    // arithmetic right shift rounds toward -inf for BigInt
    x >> k
}

fn ceil_shift(x: &BigInt, k: u32) -> BigInt {
    -((-x) >> k)
}

impl Dyadic {
    pub fn exact(v: BigInt, bits: u32) -> Self {
        let s = v << bits;
        Dyadic {
            lo: s.clone(),
            hi: s,
            bits,
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        assert_eq!(self.bits, o.bits);
        Dyadic {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            lo: -&self.hi,
            hi: -&self.lo,
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        assert_eq!(self.bits, o.bits);
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = products.iter().min().expect("nonempty");
        let hi = products.iter().max().expect("nonempty");
        Dyadic {
            lo: floor_shift(lo, self.bits),
            hi: ceil_shift(hi, self.bits),
            bits: self.bits,
        }
    }

    /// Halves the interval exactly (bits stay fixed, so rounding widens it).
    pub fn half(&self) -> Dyadic {
        Dyadic {
            lo: floor_shift(&self.lo, 1),
            hi: ceil_shift(&self.hi, 1),
            bits: self.bits,
        }
    }

    /// Enclosure of the square root; negative parts are clamped to zero.
    pub fn sqrt(&self) -> Dyadic {
        let lo = if self.lo.is_positive() {
            (&self.lo << self.bits).sqrt()
        } else {
            BigInt::zero()
        };
        let hi = if self.hi.is_positive() {
            let scaled = &self.hi << self.bits;
            let r = scaled.sqrt();
            if &r * &r == scaled {
                r
            } else {
                r + 1
            }
        } else {
            BigInt::zero()
        };
        Dyadic {
            lo,
            hi,
            bits: self.bits,
        }
    }

    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.bits)
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.bits)
    }

    pub fn mid_rational(&self) -> BigRational {
        BigRational::new(&self.lo + &self.hi, BigInt::one() << (self.bits + 1))
    }

    pub fn width_log2(&self) -> i64 {
        let w = &self.hi - &self.lo;
        if w.is_zero() {
            i64::MIN
        } else {
            w.bits() as i64 - self.bits as i64
        }
    }

    pub fn mid_f64(&self) -> f64 {
        let mid = self.mid_rational();
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Midpoint rounded to `digits` decimal places, as a plain decimal string.
    pub fn mid_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let mid = self.mid_rational() * BigRational::from(scale);
        let rounded = mid.round().to_integer();
        let neg = rounded.is_negative();
        let mut s = rounded.abs().to_string();
        if digits > 0 {
            if s.len() <= digits {
                s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
            }
            s.insert(s.len() - digits, '.');
        }
        if neg {
            s.insert(0, '-');
        }
        s
    }
}

/// Sign of p(m / 2^k) for an integer polynomial, without leaving the integers.
fn sign_at_dyadic(p: &[BigInt], m: &BigInt, k: u32) -> i32 {
    let d = poly::degree(p);
    let mut acc = p[d].clone();
    for i in (0..d).rev() {
        acc = acc * m + (&p[i] << (k as usize * (d - i)));
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

/// Dyadic enclosure of the largest real root of a monic, totally real
/// polynomial whose roots all lie in (-2, 2].
#[derive(Clone, Debug)]
pub struct RootEnclosure {
    pmin: Vec<BigInt>,
    iso: Dyadic,
}

impl RootEnclosure {
    pub fn largest_root(pmin: &[BigInt]) -> Self {
        // invariant: the largest root lies in (lo, hi]
        let mut bits = 0u32;
        let mut lo = BigInt::zero();
        let mut hi = BigInt::from(2);
        loop {
            let lo_r = BigRational::new(lo.clone(), BigInt::one() << bits);
            if poly::real_roots_above(pmin, &lo_r) == 1 {
                break;
            }
            bits += 1;
            lo <<= 1;
            hi <<= 1;
            let mid: BigInt = (&lo + &hi) >> 1;
            let mid_r = BigRational::new(mid.clone(), BigInt::one() << bits);
            if poly::real_roots_above(pmin, &mid_r) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        RootEnclosure {
            pmin: pmin.to_vec(),
            iso: Dyadic { lo, hi, bits },
        }
    }

    /// An enclosure of width at most 2^-bits (exact if the root is dyadic).
    pub fn at(&self, bits: u32) -> Dyadic {
        let mut cur = self.iso.clone();
        if bits <= cur.bits {
            return cur;
        }
        if sign_at_dyadic(&self.pmin, &cur.hi, cur.bits) == 0 {
            let v = &cur.hi << (bits - cur.bits);
            return Dyadic {
                lo: v.clone(),
                hi: v,
                bits,
            };
        }
        // the root is simple and alone in (lo, hi], so p < 0 left of it and p > 0 right of it
        while cur.bits < bits || &cur.hi - &cur.lo > BigInt::one() {
            if &cur.hi - &cur.lo <= BigInt::one() {
                cur.lo <<= 1;
                cur.hi <<= 1;
                cur.bits += 1;
            }
            let mid: BigInt = (&cur.lo + &cur.hi) >> 1;
            match sign_at_dyadic(&self.pmin, &mid, cur.bits) {
                1 => cur.hi = mid,
                -1 => cur.lo = mid,
                _ => {
                    return Dyadic {
                        lo: &mid << (bits - cur.bits),
                        hi: mid << (bits - cur.bits),
                        bits,
                    }
                }
            }
        }
        cur
    }
}

/// Bounds 2^bits · λ^i ∈ [lo_i, hi_i] for i < d.
#[derive(Clone, Debug)]
pub struct PowerBounds {
    pub bits: u32,
    pub lo: Vec<BigInt>,
    pub hi: Vec<BigInt>,
}

impl PowerBounds {
    pub fn new(lambda: &Dyadic, d: usize) -> Self {
        let bits = lambda.bits;
        assert!(lambda.lo.is_positive());
        let one = BigInt::one() << bits;
        let mut lo = vec![one.clone()];
        let mut hi = vec![one];
        for i in 1..d {
            lo.push(floor_shift(&(&lo[i - 1] * &lambda.lo), bits));
            hi.push(ceil_shift(&(&hi[i - 1] * &lambda.hi), bits));
        }
        PowerBounds { bits, lo, hi }
    }

    pub fn eval(&self, coeffs: &[BigInt]) -> Dyadic {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_positive() {
                lo += c * &self.lo[i];
                hi += c * &self.hi[i];
            } else if c.is_negative() {
                lo += c * &self.hi[i];
                hi += c * &self.lo[i];
            }
        }
        Dyadic {
            lo,
            hi,
            bits: self.bits,
        }
    }
}

/// Nearest integer to a rational, halves rounding up: floor(x + 1/2).
pub fn round_half_up(x: &BigRational) -> BigInt {
    (x + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}
