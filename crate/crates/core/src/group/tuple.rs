use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Context, CycInt};

use super::{Gen, Mat2, Word};

/// (r, ε, l₁, …, l_{2r}) standing for (−id)^ε μ^{l_{2r}} a₁^{l_{2r−1}} ⋯ μ^{l₂} a₁^{l₁}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalTuple {
    pub r: usize,
    pub eps: u8,
    pub l: Vec<i64>,
}

impl CanonicalTuple {
    pub fn new(eps: u8, l: Vec<i64>) -> Self {
        CanonicalTuple {
            r: l.len() / 2,
            eps,
            l,
        }
    }

    pub fn validate(&self, q: u32) -> Result<()> {
        let q = q as i64;
        let bad = |msg: String| Err(Error::MalformedTuple(msg));
        if self.r == 0 || self.l.len() != 2 * self.r {
            return bad(format!("expected 2r = {} entries, got {}", 2 * self.r, self.l.len()));
        }
        if self.eps > 1 {
            return bad("ε must be 0 or 1".into());
        }
        let top = self.l[2 * self.r - 1];
        if !(0..q).contains(&top) {
            return bad(format!("l_{{2r}} = {top} outside 0..{}", q - 1));
        }
        for j in 1..self.r {
            let even = self.l[2 * j - 1];
            if !(1..=q - 2).contains(&even) {
                return bad(format!("l_{} = {even} outside 1..{}", 2 * j, q - 2));
            }
            let odd = self.l[2 * j];
            if odd < 1 {
                return bad(format!("l_{} = {odd} must be positive", 2 * j + 1));
            }
        }
        Ok(())
    }

    /// Σ_{j≥2} l_{2j−1}.
    pub fn age(&self) -> i64 {
        (1..self.r).map(|j| self.l[2 * j]).sum()
    }

    pub fn generation(&self) -> usize {
        self.r
    }

    /// Sum of the μ exponents plus εq, the orbit invariant before reduction.
    pub fn mu_weight(&self, q: u32) -> i64 {
        let mu: i64 = (0..self.r).map(|j| self.l[2 * j + 1]).sum();
        mu + self.eps as i64 * q as i64
    }
}

impl fmt::Display for CanonicalTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.l.iter().map(|x| x.to_string()).collect();
        write!(f, "(r={}, ε={}, l=({}))", self.r, self.eps, l.join(","))
    }
}

/// Normal form ±μ^{k₀} u μ^{k₁} u ⋯ u μ^{k_t} with u = V⁻¹.
struct Letters {
    q: i64,
    neg: bool,
    ks: Vec<i64>,
}

impl Letters {
    fn new(q: u32) -> Self {
        Letters {
            q: q as i64,
            neg: false,
            ks: vec![0],
        }
    }

    fn mu(&mut self, e: i64) {
        let last = self.ks.last_mut().expect("nonempty");
        let k = (*last + e).rem_euclid(2 * self.q);
        // μ^q = −id
        if k >= self.q {
            *last = k - self.q;
            self.neg = !self.neg;
        } else {
            *last = k;
        }
    }

    fn u(&mut self) {
        if self.ks.len() > 1 && *self.ks.last().expect("nonempty") == 0 {
            // u² = −id
            self.ks.pop();
            self.neg = !self.neg;
        } else {
            self.ks.push(0);
        }
    }

    fn push(&mut self, gen: Gen, exp: i64) {
        let q = self.q;
        for _ in 0..exp.unsigned_abs() {
            match (gen, exp > 0) {
                // V = −u, V⁻¹ = u
                (Gen::V, true) => {
                    self.neg = !self.neg;
                    self.u();
                }
                (Gen::V, false) => self.u(),
                // A₁ = μu, A₁⁻¹ = uμ^{q−1}
                (Gen::A1, true) => {
                    self.mu(1);
                    self.u();
                }
                (Gen::A1, false) => {
                    self.u();
                    self.mu(q - 1);
                }
                // A₂ = uμ, A₂⁻¹ = μ^{q−1}u
                (Gen::A2, true) => {
                    self.u();
                    self.mu(1);
                }
                (Gen::A2, false) => {
                    self.mu(q - 1);
                    self.u();
                }
                (Gen::Q, true) => self.mu(1),
                (Gen::Q, false) => self.mu(-1),
                (Gen::Neg, _) => self.neg = !self.neg,
            }
        }
    }

    fn into_tuple(self) -> CanonicalTuple {
        let Letters { q, mut neg, mut ks } = self;
        let mut l1 = 0i64;
        // peel a₁⁻¹ = uμ^{q−1} from the right
        while ks.len() > 1 && *ks.last().expect("nonempty") == q - 1 {
            ks.pop();
            l1 -= 1;
        }
        // peel a₁ = μu from the right
        if l1 == 0 {
            while ks.len() > 1 && *ks.last().expect("nonempty") == 0 {
                ks.pop();
                let last = ks.last_mut().expect("nonempty");
                *last -= 1;
                if *last < 0 {
                    *last += q;
                    neg = !neg;
                }
                l1 += 1;
            }
        }
        let top = ks.pop().expect("nonempty");
        let mut l = vec![l1, top];
        // what is left is μ^{k₀} u μ^{k₁} u ⋯ μ^{k_{t−1}} u, and μ^k u = μ^{k−1} a₁
        while !ks.is_empty() {
            let mut run = 0;
            let mut e;
            loop {
                let k = ks.pop().expect("nonempty");
                run += 1;
                e = k - 1;
                if ks.is_empty() {
                    if e < 0 {
                        e += q;
                        neg = !neg;
                    }
                    break;
                }
                if e != 0 {
                    break;
                }
            }
            l.push(run);
            l.push(e);
        }
        CanonicalTuple::new(neg as u8, l)
    }
}

impl Context {
    pub fn eval_tuple(&self, t: &CanonicalTuple) -> Result<Mat2> {
        t.validate(self.q())?;
        let g = self.generators();
        let mut acc = self.identity();
        for j in (0..t.r).rev() {
            acc = self.mat_mul(&acc, &self.mat_pow(&g.q, t.l[2 * j + 1]));
            acc = self.mat_mul(&acc, &self.a1_pow(t.l[2 * j]));
        }
        Ok(if t.eps == 1 { acc.neg() } else { acc })
    }

    /// The image of 1 under the tuple, computed by acting on vectors only.
    pub fn tuple_point(&self, t: &CanonicalTuple) -> Result<CycInt> {
        t.validate(self.q())?;
        let mut x = self.cyc_one();
        for j in 0..t.r {
            x = self.act_a1_pow(&x, t.l[2 * j]);
            for _ in 0..t.l[2 * j + 1] {
                x = self.mul_zeta(&x);
            }
        }
        Ok(if t.eps == 1 { -x } else { x })
    }

    /// The unique tuple evaluating to the same matrix as `w`.
    pub fn canonical_tuple(&self, w: &Word) -> CanonicalTuple {
        let mut letters = Letters::new(self.q());
        for t in &w.tokens {
            letters.push(t.gen, t.exp);
        }
        letters.into_tuple()
    }

    pub fn tuple_word(&self, t: &CanonicalTuple) -> Word {
        let mut w = Word::new();
        if t.eps == 1 {
            w.push(Gen::Neg, 1);
        }
        for j in (0..t.r).rev() {
            w.push(Gen::Q, t.l[2 * j + 1]);
            w.push(Gen::A1, t.l[2 * j]);
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tuples() {
        let ctx = Context::new(5).unwrap();
        let id = CanonicalTuple::new(0, vec![0, 0]);
        assert_eq!(ctx.eval_tuple(&id).unwrap(), ctx.identity());
        let q = CanonicalTuple::new(0, vec![0, 1]);
        assert_eq!(ctx.eval_tuple(&q).unwrap(), ctx.generators().q);
        let neg = CanonicalTuple::new(1, vec![0, 0]);
        assert_eq!(ctx.eval_tuple(&neg).unwrap(), ctx.identity().neg());
        assert!(ctx
            .eval_tuple(&CanonicalTuple::new(0, vec![0, 4, 1, 0]))
            .is_err());
    }

    #[test]
    fn rewriting_examples() {
        for q in 3..=9 {
            let ctx = Context::new(q).unwrap();
            let t = |s: &str| ctx.canonical_tuple(&s.parse().unwrap());
            assert_eq!(t("A1"), CanonicalTuple::new(0, vec![1, 0]));
            assert_eq!(t("V"), CanonicalTuple::new(0, vec![1, q as i64 - 1]));
            assert_eq!(t("Q"), CanonicalTuple::new(0, vec![0, 1]));
            assert_eq!(t("V V"), CanonicalTuple::new(1, vec![0, 0]));
        }
    }

    #[test]
    fn v_is_q_power_times_a1() {
        let ctx = Context::new(3).unwrap();
        let g = ctx.generators();
        let qq = ctx.mat_mul(&g.q, &g.q);
        assert_eq!(ctx.mat_mul(&qq, &g.a1), g.v);
    }

    #[test]
    fn age_and_generation() {
        let t = CanonicalTuple::new(1, vec![0, 2, 3, 1, 4, 0]);
        assert_eq!(t.age(), 7);
        assert_eq!(t.generation(), 3);
        assert!(t.validate(5).is_ok());
        assert!(t.validate(3).is_err());
    }
}
