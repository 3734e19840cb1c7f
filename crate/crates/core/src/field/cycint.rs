use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;

use super::{Context, Dyadic, ZLambda};

/// The element a + c·η of Z[ζ], where η = ζ^{q-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycInt {
    pub a: ZLambda,
    pub c: ZLambda,
}

impl CycInt {
    pub fn new(a: ZLambda, c: ZLambda) -> Self {
        assert_eq!(a.degree(), c.degree());
        CycInt { a, c }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.c.is_zero()
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        CycInt::new(&self.a + &rhs.a, &self.c + &rhs.c)
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        CycInt::new(&self.a - &rhs.a, &self.c - &rhs.c)
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt::new(-&self.a, -&self.c)
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})η", self.a, self.c)
    }
}

/// A rectangle in the complex plane containing a point.
#[derive(Clone, Debug)]
pub struct ComplexInterval {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl Context {
    pub fn cyc(&self, a: ZLambda, c: ZLambda) -> CycInt {
        CycInt::new(a, c)
    }

    pub fn cyc_from_i64s(&self, a: &[i64], c: &[i64]) -> CycInt {
        CycInt::new(self.zl_from_i64s(a), self.zl_from_i64s(c))
    }

    pub fn cyc_zero(&self) -> CycInt {
        CycInt::new(self.zero(), self.zero())
    }

    pub fn cyc_one(&self) -> CycInt {
        CycInt::new(self.one(), self.zero())
    }

    /// The embedding of a real element of Z[λ].
    pub fn cyc_real(&self, a: ZLambda) -> CycInt {
        CycInt::new(a, self.zero())
    }

    pub fn eta(&self) -> CycInt {
        CycInt::new(self.zero(), self.one())
    }

    pub fn zeta(&self) -> CycInt {
        CycInt::new(self.lambda(), self.one())
    }

    /// (a + bη)(c + dη) = (ac − bd) + (ad + bc − λbd)η, using η² = −1 − λη.
    pub fn cyc_mul(&self, x: &CycInt, y: &CycInt) -> CycInt {
        let ac = self.mul(&x.a, &y.a);
        let bd = self.mul(&x.c, &y.c);
        let ad = self.mul(&x.a, &y.c);
        let bc = self.mul(&x.c, &y.a);
        let lbd = self.mul_lambda(&bd);
        CycInt::new(&ac - &bd, &(&ad + &bc) - &lbd)
    }

    pub fn cyc_scale(&self, u: &ZLambda, x: &CycInt) -> CycInt {
        CycInt::new(self.mul(u, &x.a), self.mul(u, &x.c))
    }

    /// Multiplication by ζ: (a, c) ↦ (λa − c, a).
    pub fn mul_zeta(&self, x: &CycInt) -> CycInt {
        CycInt::new(&self.mul_lambda(&x.a) - &x.c, x.a.clone())
    }

    /// Complex conjugation, using conj(η) = −λ − η.
    pub fn cyc_conj(&self, x: &CycInt) -> CycInt {
        CycInt::new(&x.a - &self.mul_lambda(&x.c), -&x.c)
    }

    /// |x|² = a² − λac + c², an element of Z[λ].
    pub fn cyc_norm_to_lambda(&self, x: &CycInt) -> ZLambda {
        let aa = self.mul(&x.a, &x.a);
        let cc = self.mul(&x.c, &x.c);
        let ac = self.mul(&x.a, &x.c);
        &(&aa + &cc) - &self.mul_lambda(&ac)
    }

    pub fn cyc_norm_to_q(&self, x: &CycInt) -> BigInt {
        self.norm(&self.cyc_norm_to_lambda(x))
    }

    /// `Some(k)` with x = ζ^k when x is a root of unity.
    pub fn unit_root_index(&self, x: &CycInt) -> Option<u32> {
        if !self.cyc_norm_to_lambda(x).is_one() {
            return None;
        }
        self.unit_roots()
            .iter()
            .position(|z| z == x)
            .map(|k| k as u32)
    }

    /// Coordinates (u, v) with x = u + vζ.
    pub fn to_zeta_basis(&self, x: &CycInt) -> (ZLambda, ZLambda) {
        (&x.a - &self.mul_lambda(&x.c), x.c.clone())
    }

    pub fn from_zeta_basis(&self, u: &ZLambda, v: &ZLambda) -> CycInt {
        CycInt::new(u + &self.mul_lambda(v), v.clone())
    }

    /// An enclosure of the complex number a + c·e^{iπ(q−1)/q}.
    pub fn embed(&self, x: &CycInt, precision: u32) -> ComplexInterval {
        let bits = precision.max(16) + 8;
        // Re = a − cλ/2, Im = c·sin(π/q) = c·√(4 − λ²)/2
        let re_twice = self.interval(&(&x.a.scale(&BigInt::from(2)) - &self.mul_lambda(&x.c)), bits);
        let c = self.interval(&x.c, bits);
        let four_minus = self.interval(&(&self.int(4) - &self.mul_lambda(&self.lambda())), bits);
        let c = rebase(&c, bits + 8);
        let s = rebase(&four_minus, bits + 8).sqrt();
        ComplexInterval {
            re: re_twice.half_exact(),
            im: c.mul(&s).half_exact(),
        }
    }

    pub fn cyc_to_f64(&self, x: &CycInt) -> (f64, f64) {
        let l = self.lambda_f64();
        let a = self.to_f64(&x.a);
        let c = self.to_f64(&x.c);
        let s = (std::f64::consts::PI / self.q() as f64).sin();
        (a - c * l / 2.0, c * s)
    }
}

fn rebase(x: &Dyadic, bits: u32) -> Dyadic {
    if x.bits >= bits {
        return x.clone();
    }
    let k = bits - x.bits;
    Dyadic {
        lo: &x.lo << k,
        hi: &x.hi << k,
        bits,
    }
}

impl Dyadic {
    /// Division by two without widening: one more fractional bit.
    pub fn half_exact(&self) -> Dyadic {
        Dyadic {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            bits: self.bits + 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_squared() {
        for q in [5, 7] {
            let ctx = Context::new(q).unwrap();
            let eta = ctx.eta();
            let sq = ctx.cyc_mul(&eta, &eta);
            assert_eq!(sq, CycInt::new(-ctx.one(), -ctx.lambda()));
            let (re, im) = ctx.cyc_to_f64(&sq);
            let ang = 2.0 * (q - 1) as f64 * std::f64::consts::PI / q as f64;
            assert!((re - ang.cos()).abs() < 1e-12 && (im - ang.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn zeta_times_eta_is_minus_one() {
        let ctx = Context::new(9).unwrap();
        let p = ctx.cyc_mul(&ctx.zeta(), &ctx.eta());
        assert_eq!(p, -ctx.cyc_one());
        assert_eq!(ctx.mul_zeta(&ctx.eta()), -ctx.cyc_one());
    }

    #[test]
    fn norms() {
        let ctx = Context::new(5).unwrap();
        let x = ctx.cyc(ctx.lambda().scale(&BigInt::from(2)), ctx.one());
        let expected = &ctx.mul(&ctx.lambda(), &ctx.lambda()).scale(&BigInt::from(2)) + &ctx.one();
        assert_eq!(ctx.cyc_norm_to_lambda(&x), expected);
        assert!(ctx.cyc_norm_to_lambda(&ctx.zeta()).is_one());
        assert_eq!(ctx.cyc_norm_to_q(&ctx.cyc_real(ctx.int(2))), BigInt::from(16));
        assert_eq!(ctx.cyc_norm_to_q(&ctx.zeta()), BigInt::from(1));
    }

    #[test]
    fn unit_roots() {
        let ctx = Context::new(5).unwrap();
        assert_eq!(ctx.unit_root_index(&ctx.cyc_one()), Some(0));
        assert_eq!(ctx.unit_root_index(&ctx.zeta()), Some(1));
        assert_eq!(ctx.unit_root_index(&ctx.eta()), Some(4));
        assert_eq!(ctx.unit_root_index(&ctx.cyc_real(ctx.int(2))), None);
        assert_eq!(ctx.unit_roots().len(), 10);
    }

    #[test]
    fn zeta_basis() {
        let ctx = Context::new(7).unwrap();
        let (u, v) = ctx.to_zeta_basis(&ctx.zeta());
        assert!(u.is_zero() && v.is_one());
        let x = ctx.cyc(ctx.lambda().scale(&BigInt::from(2)), ctx.one());
        let (u, v) = ctx.to_zeta_basis(&x);
        assert_eq!(u, ctx.lambda());
        assert!(v.is_one());
        assert_eq!(ctx.from_zeta_basis(&u, &v), x);
    }

    #[test]
    fn embedding() {
        let ctx = Context::new(5).unwrap();
        let z = ctx.embed(&ctx.zeta(), 40);
        assert!((z.re.mid_f64() - 0.809_016_994_374_947_4).abs() < 1e-11);
        assert!((z.im.mid_f64() - 0.587_785_252_292_473_1).abs() < 1e-11);
        assert!(z.re.width_log2() <= -40);
        let ctx = Context::new(3).unwrap();
        let e = ctx.embed(&ctx.eta(), 30);
        assert!((e.re.mid_f64() + 0.5).abs() < 1e-9);
        assert!((e.im.mid_f64() - 0.866_025_403_784_438_6).abs() < 1e-8);
    }
}
