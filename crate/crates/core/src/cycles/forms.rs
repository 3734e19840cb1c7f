//! The even and odd bilinear forms on Z[ζ] = Z[λ]·1 ⊕ Z[λ]·η and their groups.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{Context, CycInt, ZLambda};
use crate::group::Mat2;

impl Context {
    /// Symmetric form with Gram matrix (2 −λ; −λ 2).
    pub fn form_i0(&self, x: &CycInt, y: &CycInt) -> ZLambda {
        let diag = &self.mul(&x.a, &y.a) + &self.mul(&x.c, &y.c);
        let off = &self.mul(&x.a, &y.c) + &self.mul(&x.c, &y.a);
        &diag.scale(&2.into()) - &self.mul_lambda(&off)
    }

    /// Skew form with Gram matrix (0 −λ; λ 0).
    pub fn form_i1(&self, x: &CycInt, y: &CycInt) -> ZLambda {
        let skew = &self.mul(&x.c, &y.a) - &self.mul(&x.a, &y.c);
        self.mul_lambda(&skew)
    }

    /// b − I⁽⁰⁾(a, b)·a, defined for I⁽⁰⁾(a, a) = 2.
    pub fn s0_reflect(&self, a: &CycInt, b: &CycInt) -> Result<CycInt> {
        if self.form_i0(a, a) != self.int(2) {
            return Err(Error::InvalidInput("reflection vector needs I0(a, a) = 2".into()));
        }
        Ok(b - &self.cyc_scale(&self.form_i0(a, b), a))
    }

    /// b − I⁽¹⁾(a, b)·a.
    pub fn s1_transvect(&self, a: &CycInt, b: &CycInt) -> CycInt {
        b - &self.cyc_scale(&self.form_i1(a, b), a)
    }

    /// b + I⁽¹⁾(a, b)·a.
    pub fn s1_inverse(&self, a: &CycInt, b: &CycInt) -> CycInt {
        b + &self.cyc_scale(&self.form_i1(a, b), a)
    }

    /// Matrix of a Z[λ]-linear map given by its values on 1 and η.
    pub fn matrix_of(&self, f: impl Fn(&CycInt) -> CycInt) -> Mat2 {
        let e1 = f(&self.cyc_one());
        let e2 = f(&self.eta());
        Mat2::new(e1.a, e2.a, e1.c, e2.c)
    }

    pub fn s0_matrix(&self, a: &CycInt) -> Result<Mat2> {
        self.s0_reflect(a, a)?;
        Ok(self.matrix_of(|b| self.s0_reflect(a, b).expect("checked above")))
    }

    pub fn s1_matrix(&self, a: &CycInt) -> Mat2 {
        self.matrix_of(|b| self.s1_transvect(a, b))
    }

    /// M = S⁻¹Sᵗ for S = (1 −λ; 0 1), written on columns: (1 − λ², λ; −λ, 1).
    pub fn monodromy(&self) -> Mat2 {
        let l = self.lambda();
        let l2 = self.mul(&l, &l);
        Mat2::new(&self.one() - &l2, l.clone(), -&l, self.one())
    }

    /// Whether m preserves the given bilinear form on the basis (1, η).
    pub fn preserves(&self, m: &Mat2, form: impl Fn(&CycInt, &CycInt) -> ZLambda) -> bool {
        let basis = [self.cyc_one(), self.eta()];
        basis.iter().all(|x| {
            basis
                .iter()
                .all(|y| form(&self.act(m, x), &self.act(m, y)) == form(x, y))
        })
    }

    /// The 2q elements of Γ⁽⁰⁾: rotations μ_{ζ^{2k}} and reflections σ_{ζ^k}, k < q.
    pub fn even_group(&self) -> Vec<Mat2> {
        let q = self.q() as i64;
        let mut ops = Vec::with_capacity(2 * q as usize);
        for k in 0..q {
            let z2k = self.zeta_pow(2 * k);
            ops.push(self.matrix_of(|b| self.cyc_mul(&z2k, b)));
        }
        for k in 0..q {
            let zk = self.zeta_pow(k);
            ops.push(self.s0_matrix(&zk).expect("unit roots have I0 = 2"));
        }
        ops
    }

    /// Closure of `gens` under multiplication, or None past `limit` elements.
    pub fn matrix_closure(&self, gens: &[Mat2], limit: usize) -> Option<Vec<Mat2>> {
        let mut seen: Vec<Mat2> = vec![self.identity()];
        let mut frontier = seen.clone();
        while let Some(m) = frontier.pop() {
            for g in gens {
                let p = self.mat_mul(g, &m);
                if !seen.contains(&p) {
                    if seen.len() >= limit {
                        return None;
                    }
                    seen.push(p.clone());
                    frontier.push(p);
                }
            }
        }
        Some(seen)
    }

    /// Δ⁽⁰⁾: the orbit of {±1, ±η} under Γ⁽⁰⁾.
    pub fn even_cycles(&self) -> BTreeSet<CycInt> {
        let group = self.even_group();
        let mut out = BTreeSet::new();
        let mut frontier = vec![self.cyc_one(), -self.cyc_one(), self.eta(), -self.eta()];
        while let Some(x) = frontier.pop() {
            if !out.insert(x.clone()) {
                continue;
            }
            for g in &group {
                let y = self.act(g, &x);
                if !out.contains(&y) {
                    frontier.push(y);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_values() {
        let ctx = Context::new(7).unwrap();
        let (e1, e2) = (ctx.cyc_one(), ctx.eta());
        assert_eq!(ctx.form_i0(&e1, &e1), ctx.int(2));
        assert_eq!(ctx.form_i0(&e1, &e2), -ctx.lambda());
        assert_eq!(ctx.form_i1(&e1, &e2), -ctx.lambda());
        assert_eq!(ctx.form_i1(&e2, &e1), ctx.lambda());
        let x = ctx.cyc_from_i64s(&[3, 1, -2], &[0, 5, 1]);
        assert!(ctx.form_i1(&x, &x).is_zero());
    }

    #[test]
    fn transvections_and_monodromy() {
        for q in 3..=9 {
            let ctx = Context::new(q).unwrap();
            let g = ctx.generators();
            assert_eq!(ctx.s1_matrix(&ctx.cyc_one()), g.a1);
            assert_eq!(ctx.s1_matrix(&ctx.eta()), g.a2);
            let m = ctx.monodromy();
            let s0 = ctx.mat_mul(
                &ctx.s0_matrix(&ctx.cyc_one()).unwrap(),
                &ctx.s0_matrix(&ctx.eta()).unwrap(),
            );
            assert_eq!(s0, m.neg());
            assert_eq!(ctx.mat_mul(&g.a1, &g.a2), m);
            assert!(ctx.preserves(&m, |x, y| ctx.form_i0(x, y)));
            assert!(ctx.preserves(&m, |x, y| ctx.form_i1(x, y)));
        }
    }

    #[test]
    fn even_group_is_dihedral() {
        for q in 3..=8 {
            let ctx = Context::new(q).unwrap();
            let ops = ctx.even_group();
            let mut distinct: Vec<String> = ops.iter().map(|m| m.to_string()).collect();
            distinct.sort();
            distinct.dedup();
            assert_eq!(distinct.len(), 2 * q as usize);
            let r1 = ctx.s0_matrix(&ctx.cyc_one()).unwrap();
            let r2 = ctx.s0_matrix(&ctx.eta()).unwrap();
            let closure = ctx.matrix_closure(&[r1.clone(), r2.clone()], 100).unwrap();
            assert_eq!(closure.len(), 2 * q as usize);
            assert!(ops.iter().all(|o| closure.contains(o)));
            assert!(ops.iter().all(|o| ctx.preserves(o, |x, y| ctx.form_i0(x, y))));
            let z2 = ctx.matrix_of(|b| ctx.cyc_mul(&ctx.zeta_pow(2), b));
            assert_eq!(ctx.mat_mul(&r1, &r2), z2);
            let cycles = ctx.even_cycles();
            assert_eq!(cycles.len(), 2 * q as usize);
            assert!(ctx.unit_roots().iter().all(|z| cycles.contains(z)));
        }
    }

    #[test]
    fn reflections_and_inverses() {
        let ctx = Context::new(5).unwrap();
        let r = ctx.s0_matrix(&ctx.cyc_one()).unwrap();
        assert_eq!(ctx.mat_mul(&r, &r), ctx.identity());
        assert!(ctx.s0_reflect(&ctx.cyc_real(ctx.int(2)), &ctx.cyc_one()).is_err());
        let a = ctx.zeta();
        let b = ctx.cyc_from_i64s(&[4, -1], &[2, 3]);
        assert_eq!(ctx.s1_inverse(&a, &ctx.s1_transvect(&a, &b)), b);
    }
}
