//! Arithmetic in Z[λ], Q(λ) and Z[ζ] for ζ = e^{iπ/q}, λ = ζ + ζ̄ = 2cos(π/q).

pub mod cycint;
pub mod poly;
pub mod real;
pub mod zlambda;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use cycint::{ComplexInterval, CycInt};
pub use real::Dyadic;
pub use zlambda::{QLambda, ZLambda};

use crate::error::{Error, Result};
use poly::Poly;
use real::{PowerBounds, RootEnclosure};

const BASE_BITS: u32 = 128;

/// Precomputed data for a fixed q. Immutable once built.
#[derive(Clone, Debug)]
pub struct Context {
    q: u32,
    d: usize,
    phi2q: Poly,
    pmin: Poly,
    /// λ^{d+k} on the integral basis, k = 0..d-1
    reduction: Vec<ZLambda>,
    enclosure: RootEnclosure,
    base: PowerBounds,
    powers_f64: Vec<f64>,
    unit_roots: Vec<CycInt>,
}

impl Context {
    pub fn new(q: u32) -> Result<Self> {
        if q < 3 {
            return Err(Error::InvalidQ(q));
        }
        let phi2q = poly::cyclotomic(2 * q);
        let pmin = poly::palindromic_reduce(&phi2q);
        let d = poly::degree(&pmin);
        debug_assert_eq!(2 * d, poly::degree(&phi2q));

        // λ^d = -Σ p_i λ^i
        let mut reduction = Vec::with_capacity(d);
        let top = ZLambda::from_coeffs(pmin[..d].iter().map(|c| -c).collect());
        reduction.push(top);
        for k in 1..d {
            let prev = &reduction[k - 1];
            reduction.push(shift_up(prev, &reduction[0]));
        }

        let enclosure = RootEnclosure::largest_root(&pmin);
        let base = PowerBounds::new(&enclosure.at(BASE_BITS), d);
        let powers_f64 = (0..d)
            .map(|i| {
                Dyadic {
                    lo: base.lo[i].clone(),
                    hi: base.hi[i].clone(),
                    bits: base.bits,
                }
                .mid_f64()
            })
            .collect();

        let mut ctx = Context {
            q,
            d,
            phi2q,
            pmin,
            reduction,
            enclosure,
            base,
            powers_f64,
            unit_roots: Vec::new(),
        };
        let mut roots = Vec::with_capacity(2 * q as usize);
        let mut z = ctx.cyc_one();
        for _ in 0..2 * q {
            let next = ctx.mul_zeta(&z);
            roots.push(z);
            z = next;
        }
        debug_assert_eq!(z, ctx.cyc_one());
        ctx.unit_roots = roots;
        Ok(ctx)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Degree of Q(λ) over Q.
    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn phi2q(&self) -> &[BigInt] {
        &self.phi2q
    }

    pub fn pmin(&self) -> &[BigInt] {
        &self.pmin
    }

    pub fn zero(&self) -> ZLambda {
        ZLambda::zero(self.d)
    }

    pub fn one(&self) -> ZLambda {
        ZLambda::one(self.d)
    }

    pub fn int(&self, n: impl Into<BigInt>) -> ZLambda {
        ZLambda::from_int(self.d, n)
    }

    /// λ^k reduced to the integral basis.
    pub fn lambda_pow(&self, k: usize) -> ZLambda {
        let mut x = self.one();
        for _ in 0..k {
            x = self.mul_lambda(&x);
        }
        x
    }

    pub fn lambda(&self) -> ZLambda {
        self.lambda_pow(1)
    }

    /// Parses coefficients given in ascending powers of λ; missing ones are zero.
    pub fn zl_from_coeffs(&self, coeffs: &[BigInt]) -> Result<ZLambda> {
        if coeffs.len() > self.d {
            return Err(Error::InvalidInput(format!(
                "{} coefficients given but Z[λ] has rank {} for q = {}",
                coeffs.len(),
                self.d,
                self.q
            )));
        }
        let mut v = coeffs.to_vec();
        v.resize(self.d, BigInt::zero());
        Ok(ZLambda::from_coeffs(v))
    }

    pub fn zl_from_i64s(&self, coeffs: &[i64]) -> ZLambda {
        let v: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        self.zl_from_coeffs(&v).expect("coefficient count within degree")
    }

    pub fn mul(&self, x: &ZLambda, y: &ZLambda) -> ZLambda {
        let d = self.d;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in x.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs().iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigInt> = prod[..d].to_vec();
        for (k, c) in prod[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(self.reduction[k].coeffs()) {
                *o += c * r;
            }
        }
        ZLambda::from_coeffs(out)
    }

    pub fn mul_lambda(&self, x: &ZLambda) -> ZLambda {
        shift_up(x, &self.reduction[0])
    }

    pub fn mul_int(&self, x: &ZLambda, k: &BigInt) -> ZLambda {
        x.scale(k)
    }

    pub fn pow(&self, x: &ZLambda, mut e: u32) -> ZLambda {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Exact sign of the real number x.
    pub fn sign(&self, x: &ZLambda) -> Ordering {
        let c = x.coeffs();
        if c[1..].iter().all(Zero::is_zero) {
            return c[0].sign_ordering();
        }
        if let Some(s) = self.sign_f64(c) {
            return s;
        }
        let mut bits = BASE_BITS;
        loop {
            let iv = if bits == BASE_BITS {
                self.base.eval(c)
            } else {
                PowerBounds::new(&self.enclosure.at(bits), self.d).eval(c)
            };
            if iv.lo.is_positive() {
                return Ordering::Greater;
            }
            if iv.hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    fn sign_f64(&self, c: &[BigInt]) -> Option<Ordering> {
        let mut v = 0.0f64;
        let mut mag = 0.0f64;
        for (ci, p) in c.iter().zip(&self.powers_f64) {
            let t = ci.to_f64()? * p;
            v += t;
            mag += t.abs();
        }
        // rounding error is below (d + 4)·2^-52·mag, far under this margin
        if !mag.is_finite() || v.abs() <= mag * 1e-10 {
            return None;
        }
        Some(if v > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        })
    }

    pub fn is_positive(&self, x: &ZLambda) -> bool {
        self.sign(x) == Ordering::Greater
    }

    pub fn is_negative(&self, x: &ZLambda) -> bool {
        self.sign(x) == Ordering::Less
    }

    pub fn cmp(&self, x: &ZLambda, y: &ZLambda) -> Ordering {
        self.sign(&(x - y))
    }

    pub fn abs(&self, x: &ZLambda) -> ZLambda {
        if self.is_negative(x) {
            -x
        } else {
            x.clone()
        }
    }

    /// Compares x with a rational number exactly.
    pub fn cmp_rational(&self, x: &ZLambda, num: &BigInt, den: &BigInt) -> Ordering {
        assert!(den.is_positive());
        let lhs = x.scale(den);
        self.sign(&(&lhs - &self.int(num.clone())))
    }

    /// An enclosure of x of width at most about 2^-bits.
    pub fn interval(&self, x: &ZLambda, bits: u32) -> Dyadic {
        let extra = x.height().bits() as u32 + self.d as u32 + 4;
        let work = bits + extra;
        let bounds = if work <= BASE_BITS {
            self.base.clone()
        } else {
            PowerBounds::new(&self.enclosure.at(work), self.d)
        };
        bounds.eval(x.coeffs())
    }

    pub fn lambda_interval(&self, bits: u32) -> Dyadic {
        self.enclosure.at(bits)
    }

    pub fn to_f64(&self, x: &ZLambda) -> f64 {
        let mut v = 0.0;
        for (c, p) in x.coeffs().iter().zip(&self.powers_f64) {
            v += c.to_f64().unwrap_or(f64::NAN) * p;
        }
        v
    }

    pub fn lambda_f64(&self) -> f64 {
        if self.d == 1 {
            return 1.0;
        }
        self.powers_f64[1]
    }

    /// Field norm N_{λ:1}(x), the product of all real conjugates.
    pub fn norm(&self, x: &ZLambda) -> BigInt {
        let mut g = x.coeffs().to_vec();
        poly::trim(&mut g);
        poly::resultant(&self.pmin, &g)
    }

    pub fn is_unit(&self, x: &ZLambda) -> bool {
        self.norm(x).abs().is_one()
    }

    /// Matrix of multiplication by x on the integral basis (column k = x·λ^k).
    pub fn mult_matrix(&self, x: &ZLambda) -> Vec<Vec<BigInt>> {
        let d = self.d;
        let mut cols = Vec::with_capacity(d);
        let mut v = x.clone();
        for _ in 0..d {
            cols.push(v.coeffs().to_vec());
            v = self.mul_lambda(&v);
        }
        (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    /// x^{-1} in Q(λ), by the adjugate of the multiplication matrix.
    pub fn inverse(&self, x: &ZLambda) -> Option<QLambda> {
        if x.is_zero() {
            return None;
        }
        let m = self.mult_matrix(x);
        let d = self.d;
        let det = poly::det_bareiss(m.clone());
        // solve m·y = det·e_0 by Cramer: y_i = det(m with column i replaced by e_0)
        let mut y = Vec::with_capacity(d);
        for i in 0..d {
            let mut mi = m.clone();
            for (r, row) in mi.iter_mut().enumerate() {
                row[i] = if r == 0 { BigInt::one() } else { BigInt::zero() };
            }
            y.push(poly::det_bareiss(mi));
        }
        Some(QLambda::new(ZLambda::from_coeffs(y), det))
    }

    pub fn qmul(&self, x: &QLambda, y: &QLambda) -> QLambda {
        QLambda::new(self.mul(x.num(), y.num()), x.den() * y.den())
    }

    pub fn qdiv(&self, x: &QLambda, y: &QLambda) -> Option<QLambda> {
        let inv = self.inverse(y.num())?;
        let inv = QLambda::new(inv.num().scale(y.den()), inv.den().clone());
        Some(self.qmul(x, &inv))
    }

    pub fn qsign(&self, x: &QLambda) -> Ordering {
        self.sign(x.num())
    }

    /// Exact sign of √A + 1 − √B − √C for real elements A, B, C ≥ 0.
    pub fn sqrt_sum_sign(&self, a: &ZLambda, b: &ZLambda, c: &ZLambda) -> Ordering {
        // squaring both sides: sign(2√A − 2√G − E), G = BC, E = B + C − A − 1
        let g = self.mul(b, c);
        let e = &(&(b + c) - a) - &self.one();
        let p = self.cmp(a, &g);
        let es = self.sign(&e);
        match (p, es) {
            (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
            (Ordering::Greater | Ordering::Equal, Ordering::Less | Ordering::Equal) => Ordering::Greater,
            (Ordering::Less | Ordering::Equal, Ordering::Greater | Ordering::Equal) => Ordering::Less,
            _ => {
                // both sides share a sign: compare P² = 4A + 4G − 8√(AG) with E²
                let h = &(&a.scale(&BigInt::from(4)) + &g.scale(&BigInt::from(4))) - &self.mul(&e, &e);
                let ag = self.mul(a, &g);
                let hs = self.sign(&h);
                let s = if hs != Ordering::Greater {
                    if hs == Ordering::Equal && ag.is_zero() {
                        Ordering::Equal
                    } else {
                        Ordering::Less
                    }
                } else {
                    self.cmp(&self.mul(&h, &h), &ag.scale(&BigInt::from(64)))
                };
                // s is the sign of P² − E²; for P, E < 0 the order flips
                if p == Ordering::Greater {
                    s
                } else {
                    s.reverse()
                }
            }
        }
    }

    /// The 2q unit roots ζ^k, k = 0..2q-1.
    pub fn unit_roots(&self) -> &[CycInt] {
        &self.unit_roots
    }

    pub fn zeta_pow(&self, k: i64) -> CycInt {
        let n = 2 * self.q as i64;
        self.unit_roots[k.rem_euclid(n) as usize].clone()
    }
}

fn shift_up(x: &ZLambda, top: &ZLambda) -> ZLambda {
    let c = x.coeffs();
    let d = c.len();
    let mut out = Vec::with_capacity(d);
    out.push(BigInt::zero());
    out.extend_from_slice(&c[..d - 1]);
    let lead = &c[d - 1];
    if !lead.is_zero() {
        for (o, t) in out.iter_mut().zip(top.coeffs()) {
            *o += lead * t;
        }
    }
    ZLambda::from_coeffs(out)
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}
