//! Deciding membership in Δ⁽¹⁾_q and in G_q, and reading off words.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{Context, CycInt};

use super::{Gen, Mat2, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipTrace {
    pub member: bool,
    /// The quotients m of the steps (a, c) ↦ (c, mλc − a).
    pub quotients: Vec<BigInt>,
    /// The final coordinate a = ±1 for members, 0 otherwise.
    pub final_sign: i8,
    pub reason: &'static str,
}

impl Context {
    /// Upper bound on the number of reduction steps before both coordinates drop below 1/2.
    fn step_cap(&self, x: &CycInt) -> usize {
        let mag = |z: &crate::field::ZLambda| {
            let f = self.to_f64(z).abs();
            if f.is_finite() {
                f
            } else {
                2f64.powi((z.height().bits() + self.degree() as u64 + 1).min(1000) as i32)
            }
        };
        let m = mag(&x.a).max(mag(&x.c)).max(1.0);
        let decay = (2.0 / self.lambda_f64()).log2();
        ((m * 2.0).log2() / decay).ceil() as usize + 8
    }

    pub fn membership(&self, x: &CycInt) -> Result<MembershipTrace> {
        let cap = self.step_cap(x);
        let mut a = x.a.clone();
        let mut c = x.c.clone();
        let mut quotients = Vec::new();
        loop {
            if c.is_zero() {
                let sign = if a.is_one() {
                    1
                } else if (-&a).is_one() {
                    -1
                } else {
                    0
                };
                return Ok(MembershipTrace {
                    member: sign != 0,
                    quotients,
                    final_sign: sign,
                    reason: if sign != 0 {
                        "reached ±1"
                    } else {
                        "reached the real axis away from ±1"
                    },
                });
            }
            let n2 = self.cyc_norm_to_lambda(&CycInt::new(a.clone(), c.clone()));
            if self.cmp(&n2, &self.one()) == Ordering::Less {
                return Ok(MembershipTrace {
                    member: false,
                    quotients,
                    final_sign: 0,
                    reason: "modulus dropped below 1",
                });
            }
            if quotients.len() >= cap {
                return Err(Error::StepCapExceeded(cap));
            }
            let (m, rem) = self.nearest_step(&a, &c);
            quotients.push(m);
            a = std::mem::replace(&mut c, rem);
        }
    }

    pub fn is_odd_vanishing_cycle(&self, x: &CycInt) -> Result<bool> {
        Ok(self.membership(x)?.member)
    }

    /// Lang–Lang: det m = 1 and both columns are odd vanishing cycles.
    pub fn in_hecke_group(&self, m: &Mat2) -> Result<bool> {
        if !self.det(m).is_one() {
            return Ok(false);
        }
        Ok(self.is_odd_vanishing_cycle(&m.first_column())?
            && self.is_odd_vanishing_cycle(&m.second_column())?)
    }

    /// A word over {NEG, Q, A₁} evaluating to m.
    pub fn factor(&self, m: &Mat2) -> Result<Word> {
        if !self.det(m).is_one() {
            return Err(Error::NotInGroup);
        }
        let trace = self.membership(&m.first_column())?;
        if !trace.member {
            return Err(Error::NotInGroup);
        }
        // each step is T = −V·A₁^{−m}; then T_k⋯T_1·m = s·A₁^l
        let mut reduced = m.clone();
        let v = self.generators().v;
        for q in &trace.quotients {
            let k = q.to_i64().ok_or_else(|| Error::InvalidInput("quotient too large".into()))?;
            reduced = self.mat_mul(&self.a1_pow(-k), &reduced);
            reduced = self.mat_mul(&v, &reduced).neg();
        }
        let s = trace.final_sign;
        let shifted = if s < 0 { reduced.neg() } else { reduced };
        if !(shifted.a.is_one() && shifted.c.is_zero() && shifted.d.is_one()) {
            return Err(Error::Internal("column reduction did not reach ±A₁^l".into()));
        }
        let l = self.lambda_multiple(&shifted.b).ok_or(Error::NotInGroup)?;

        // m = (A₁^{m₁}V)(A₁^{m₂}V)⋯(A₁^{m_k}V)·s·A₁^l with V = Q^{q−1}A₁
        let q = self.q() as i64;
        let mut w = Word::new();
        for k in &trace.quotients {
            w.push(Gen::A1, k.to_i64().expect("checked above"));
            w.push(Gen::Q, q - 1);
            w.push(Gen::A1, 1);
        }
        if s < 0 {
            w.push(Gen::Neg, 1);
        }
        w.push(Gen::A1, l);
        Ok(w)
    }

    /// `Some(l)` when x = lλ for an integer l.
    pub fn lambda_multiple(&self, x: &crate::field::ZLambda) -> Option<i64> {
        let idx = if self.degree() == 1 { 0 } else { 1 };
        let l = x.coeffs()[idx].clone();
        if self.lambda().scale(&l) == *x {
            l.to_i64()
        } else {
            None
        }
    }

    /// Number of Γ⁽¹⁾-orbits on Δ⁽¹⁾_q: 1 for odd q, 2 for q ≡ 0 (4), 4 for q ≡ 2 (4).
    pub fn orbit_count(&self) -> u32 {
        match self.q() % 4 {
            0 => 2,
            2 => 4,
            _ => 1,
        }
    }

    /// Reduces a μ-weight (μ exponents plus q per sign flip) to an orbit label.
    pub fn orbit_from_weight(&self, weight: &BigInt) -> u32 {
        let n = BigInt::from(self.orbit_count());
        let r: BigInt = ((weight % &n) + &n) % &n;
        r.to_u32().expect("small")
    }

    /// The Γ⁽¹⁾-orbit of a member: 0 is the orbit of 1; for q ≡ 2 (4)
    /// the residues q−1, q, 2q−1 (mod 4) are the orbits of η, −1, −η.
    pub fn orbit_label(&self, x: &CycInt) -> Result<u32> {
        let trace = self.membership(x)?;
        if !trace.member {
            return Err(Error::NotMember);
        }
        // every step −V·A₁^{−m} has weight 2q − 1 ≡ −1, so x = steps⁻¹(±1) has
        // weight (number of steps) + q·[final sign is −1]
        let mut weight = BigInt::from(trace.quotients.len());
        if trace.final_sign < 0 {
            weight += self.q();
        }
        Ok(self.orbit_from_weight(&weight))
    }

    /// Representative of an orbit label among 1, η, −1, −η.
    pub fn orbit_representative(&self, label: u32) -> CycInt {
        let q = self.q() as i64;
        [0, q - 1, q, 2 * q - 1]
            .into_iter()
            .find(|&k| self.orbit_from_weight(&BigInt::from(k)) == label)
            .map(|k| self.zeta_pow(k))
            .unwrap_or_else(|| self.cyc_one())
    }
}
