use std::fmt;

use num_bigint::BigInt;

use crate::field::{Context, CycInt, ZLambda};

/// A 2×2 matrix over Z[λ], row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: ZLambda,
    pub b: ZLambda,
    pub c: ZLambda,
    pub d: ZLambda,
}

impl Mat2 {
    pub fn new(a: ZLambda, b: ZLambda, c: ZLambda, d: ZLambda) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    /// First column read as a + cη.
    pub fn first_column(&self) -> CycInt {
        CycInt::new(self.a.clone(), self.c.clone())
    }

    pub fn second_column(&self) -> CycInt {
        CycInt::new(self.b.clone(), self.d.clone())
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// The generators V, A₁, A₂ and Q = A₁V.
#[derive(Clone, Debug)]
pub struct Generators {
    pub v: Mat2,
    pub a1: Mat2,
    pub a2: Mat2,
    pub q: Mat2,
}

impl Context {
    pub fn identity(&self) -> Mat2 {
        Mat2::new(self.one(), self.zero(), self.zero(), self.one())
    }

    pub fn mat_from_i64s(&self, entries: [&[i64]; 4]) -> Mat2 {
        let [a, b, c, d] = entries.map(|e| self.zl_from_i64s(e));
        Mat2::new(a, b, c, d)
    }

    pub fn generators(&self) -> Generators {
        let (o, z, l) = (self.one(), self.zero(), self.lambda());
        Generators {
            v: Mat2::new(z.clone(), -&o, o.clone(), z.clone()),
            a1: Mat2::new(o.clone(), l.clone(), z.clone(), o.clone()),
            a2: Mat2::new(o.clone(), z.clone(), -&l, o.clone()),
            q: Mat2::new(l, -&o, o, z),
        }
    }

    pub fn mat_mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let m = |p: &ZLambda, q: &ZLambda, r: &ZLambda, s: &ZLambda| {
            &self.mul(p, q) + &self.mul(r, s)
        };
        Mat2::new(
            m(&x.a, &y.a, &x.b, &y.c),
            m(&x.a, &y.b, &x.b, &y.d),
            m(&x.c, &y.a, &x.d, &y.c),
            m(&x.c, &y.b, &x.d, &y.d),
        )
    }

    pub fn det(&self, m: &Mat2) -> ZLambda {
        &self.mul(&m.a, &m.d) - &self.mul(&m.b, &m.c)
    }

    /// Inverse of a determinant-one matrix.
    pub fn mat_inv_unimodular(&self, m: &Mat2) -> Mat2 {
        debug_assert!(self.det(m).is_one());
        Mat2::new(m.d.clone(), -&m.b, -&m.c, m.a.clone())
    }

    /// m^e for a determinant-one matrix; negative powers use the inverse.
    pub fn mat_pow(&self, m: &Mat2, e: i64) -> Mat2 {
        let mut base = if e < 0 {
            self.mat_inv_unimodular(m)
        } else {
            m.clone()
        };
        let mut k = e.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            base = self.mat_mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// A₁^k = (1 kλ; 0 1).
    pub fn a1_pow(&self, k: i64) -> Mat2 {
        Mat2::new(
            self.one(),
            self.lambda().scale(&BigInt::from(k)),
            self.zero(),
            self.one(),
        )
    }

    /// ψ(m·ψ⁻¹(x)): the column (a, c) is multiplied by m.
    pub fn act(&self, m: &Mat2, x: &CycInt) -> CycInt {
        let a = &self.mul(&m.a, &x.a) + &self.mul(&m.b, &x.c);
        let c = &self.mul(&m.c, &x.a) + &self.mul(&m.d, &x.c);
        CycInt::new(a, c)
    }

    /// a₁ on Z[ζ]: (a, c) ↦ (a + λc, c).
    pub fn act_a1(&self, x: &CycInt) -> CycInt {
        CycInt::new(&x.a + &self.mul_lambda(&x.c), x.c.clone())
    }

    pub fn act_a1_pow(&self, x: &CycInt, k: i64) -> CycInt {
        let shift = self.mul_lambda(&x.c).scale(&BigInt::from(k));
        CycInt::new(&x.a + &shift, x.c.clone())
    }
}
