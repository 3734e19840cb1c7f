//! Exact verification of the defining relations among V, A₁, A₂ and Q.

use serde::Serialize;

use crate::field::Context;

use super::Mat2;

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationsReport {
    pub q: u32,
    /// Order of A₁A₂ in the matrix group.
    pub q_tilde: u32,
    pub checks: Vec<RelationCheck>,
}

impl RelationsReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

impl Context {
    /// q̃ = 2q for odd q, q for q ≡ 0 (4), q/2 for q ≡ 2 (4).
    pub fn q_tilde(&self) -> u32 {
        let q = self.q();
        match q % 4 {
            0 => q,
            2 => q / 2,
            _ => 2 * q,
        }
    }

    fn alternating(&self, first: &Mat2, second: &Mat2, factors: u32) -> Mat2 {
        let mut acc = self.identity();
        for i in 0..factors {
            acc = self.mat_mul(&acc, if i % 2 == 0 { first } else { second });
        }
        acc
    }

    pub fn relations_report(&self) -> RelationsReport {
        let q = self.q();
        let g = self.generators();
        let id = self.identity();
        let neg_id = id.neg();
        let mut checks = Vec::new();
        let mut check = |name: String, holds: bool| checks.push(RelationCheck { name, holds });

        let v2 = self.mat_mul(&g.v, &g.v);
        let qq = self.mat_pow(&g.q, q as i64);
        check("V^2 = -I".into(), v2 == neg_id);
        check(format!("Q^{q} = -I"), qq == neg_id);
        check("V^4 = I".into(), self.mat_mul(&v2, &v2) == id);
        check(format!("V^2 = Q^{q}"), v2 == qq);
        check("det V = det A1 = 1".into(), self.det(&g.v).is_one() && self.det(&g.a1).is_one());

        let a1a2 = self.mat_mul(&g.a1, &g.a2);
        let a2a1 = self.mat_mul(&g.a2, &g.a1);
        let q2 = self.mat_mul(&g.q, &g.q);
        check("A1 A2 = -Q^2".into(), a1a2 == q2.neg());
        check("A1 V = Q".into(), self.mat_mul(&g.a1, &g.v) == g.q);
        check("V A2 = Q".into(), self.mat_mul(&g.v, &g.a2) == g.q);
        let v_inv = self.mat_inv_unimodular(&g.v);
        check(
            "A2 = V A1 V^-1".into(),
            g.a2 == self.mat_mul(&self.mat_mul(&g.v, &g.a1), &v_inv),
        );
        check(
            format!("V = Q^{} A1", q - 1),
            self.mat_mul(&self.mat_pow(&g.q, q as i64 - 1), &g.a1) == g.v,
        );

        // A₁A₂ acts on Z[ζ] as multiplication by −ζ²
        let minus_z2 = -self.zeta_pow(2);
        let acts = [self.cyc_one(), self.eta()]
            .iter()
            .all(|x| self.act(&a1a2, x) == self.cyc_mul(&minus_z2, x));
        check("A1 A2 acts as multiplication by -zeta^2".into(), acts);

        let qt = self.q_tilde();
        check(
            format!("(A1 A2)^{qt} = I"),
            self.mat_pow(&a1a2, qt as i64) == id,
        );
        let mut p = id.clone();
        let mut first = None;
        for k in 1..=qt {
            p = self.mat_mul(&p, &a1a2);
            if p == id {
                first = Some(k);
                break;
            }
        }
        check(format!("A1 A2 has order exactly {qt}"), first == Some(qt));

        if q.is_multiple_of(2) {
            let h = (q / 2) as i64;
            let x = self.mat_pow(&a1a2, h);
            let y = self.mat_pow(&a2a1, h);
            check(format!("(A1 A2)^{h} = (A2 A1)^{h}"), x == y);
            let expected = if q.is_multiple_of(4) { &neg_id } else { &id };
            let label = if q.is_multiple_of(4) { "-I" } else { "I" };
            check(format!("(A1 A2)^{h} = {label}"), x == *expected);
        } else {
            let sign_neg = ((q - 1) / 2) % 2 == 1;
            let signed = |m: &Mat2| if sign_neg { m.neg() } else { m.clone() };
            let x = self.alternating(&g.a1, &g.a2, q);
            let y = self.alternating(&g.a2, &g.a1, q);
            check(format!("A1 A2 A1 ... ({q} factors) = A2 A1 A2 ... ({q} factors)"), x == y);
            check(
                format!("A1 A2 A1 ... ({q} factors) = (-1)^{} V", (q - 1) / 2),
                x == signed(&g.v),
            );
            check(
                format!("(A1 A2)^{} = (-1)^{} Q", q.div_ceil(2), (q - 1) / 2),
                self.mat_pow(&a1a2, q.div_ceil(2) as i64) == signed(&g.q),
            );
        }
        RelationsReport {
            q,
            q_tilde: qt,
            checks,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold() {
        for q in 3..=12 {
            let ctx = Context::new(q).unwrap();
            let r = ctx.relations_report();
            for c in &r.checks {
                assert!(c.holds, "q={q}: {}", c.name);
            }
        }
        assert_eq!(Context::new(5).unwrap().q_tilde(), 10);
    }
}
