//! The explicit descriptions of Δ⁽¹⁾_q for q ∈ {3, 4, 6}.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Context, CycInt};

/// Which of the two Z-lattices a point lies in: `a + c·λη` or `b·λ + dη`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lattice {
    /// Coordinates (a, c) of a + c·λ·η (for q = 3 simply a + cη).
    First(i64, i64),
    /// Coordinates (b, d) of b·λ + d·η.
    Second(i64, i64),
}

fn require_small_q(ctx: &Context) -> Result<()> {
    match ctx.q() {
        3 | 4 | 6 => Ok(()),
        q => Err(Error::UnsupportedQ {
            q,
            expected: "{3, 4, 6}",
        }),
    }
}

/// Integer lattice coordinates of x, if it lies in one of the lattices.
pub fn lattice_coords(ctx: &Context, x: &CycInt) -> Result<Option<Lattice>> {
    require_small_q(ctx)?;
    let small = |v: &BigInt| v.to_i64();
    if ctx.q() == 3 {
        return Ok(match (small(&x.a.coeffs()[0]), small(&x.c.coeffs()[0])) {
            (Some(a), Some(c)) => Some(Lattice::First(a, c)),
            _ => None,
        });
    }
    let (a, c) = (x.a.coeffs(), x.c.coeffs());
    if a[1].is_zero() && c[0].is_zero() {
        if let (Some(a0), Some(c1)) = (small(&a[0]), small(&c[1])) {
            return Ok(Some(Lattice::First(a0, c1)));
        }
    }
    if a[0].is_zero() && c[1].is_zero() {
        if let (Some(a1), Some(c0)) = (small(&a[1]), small(&c[0])) {
            return Ok(Some(Lattice::Second(a1, c0)));
        }
    }
    Ok(None)
}

pub fn from_lattice(ctx: &Context, l: Lattice) -> CycInt {
    match l {
        Lattice::First(a, c) => ctx.cyc(ctx.int(a), ctx.lambda().scale(&BigInt::from(c))),
        Lattice::Second(b, d) => ctx.cyc(ctx.lambda().scale(&BigInt::from(b)), ctx.int(d)),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Membership by the gcd criteria: gcd(a, c) = 1 for q = 3, and for q = 4, 6
/// (with k = q/2) gcd(a, kc) = 1 on the first lattice, gcd(kb, d) = 1 on the second.
pub fn closed_form_member(ctx: &Context, x: &CycInt) -> Result<bool> {
    let k = match ctx.q() {
        4 => 2,
        6 => 3,
        _ => 1,
    };
    Ok(match lattice_coords(ctx, x)? {
        Some(Lattice::First(a, c)) => gcd(a, k * c) == 1,
        Some(Lattice::Second(b, d)) => ctx.q() != 3 && gcd(k * b, d) == 1,
        None => false,
    })
}

/// The Γ⁽¹⁾-orbit predicted by the congruence description, in the labelling
/// 0 ↔ 1, 1 ↔ η, 2 ↔ −1, 3 ↔ −η (q = 6) and 0 ↔ 1, 1 ↔ η (q = 4).
pub fn closed_form_orbit(ctx: &Context, x: &CycInt) -> Result<Option<u32>> {
    if !closed_form_member(ctx, x)? {
        return Ok(None);
    }
    let l = lattice_coords(ctx, x)?.expect("members lie in a lattice");
    Ok(Some(match (ctx.q(), l) {
        (3, _) => 0,
        (4, Lattice::First(..)) => 0,
        (4, Lattice::Second(..)) => 1,
        (6, Lattice::First(a, _)) => {
            if a.rem_euclid(3) == 1 {
                0
            } else {
                2
            }
        }
        (6, Lattice::Second(_, d)) => {
            if d.rem_euclid(3) == 1 {
                1
            } else {
                3
            }
        }
        _ => unreachable!("q checked above"),
    }))
}

/// All closed-form members with |x|² ≤ num/den, by scanning the lattices.
pub fn closed_form_scan(ctx: &Context, num: &BigInt, den: &BigInt) -> Result<Vec<CycInt>> {
    require_small_q(ctx)?;
    let r2 = num.to_f64().unwrap_or(f64::MAX) / den.to_f64().unwrap_or(1.0);
    let l = ctx.lambda_f64();
    // |a + Cη|² ≥ (1 − λ/2)(a² + C²) for real a, C
    let reach = (r2 / (1.0 - l / 2.0)).sqrt().ceil() as i64 + 1;
    let scale = if ctx.q() == 3 { 1.0 } else { l };
    let mut out = Vec::new();
    let mut consider = |lat: Lattice| -> Result<()> {
        let x = from_lattice(ctx, lat);
        if closed_form_member(ctx, &x)?
            && ctx.cmp_rational(&ctx.cyc_norm_to_lambda(&x), num, den) != Ordering::Greater
        {
            out.push(x);
        }
        Ok(())
    };
    let short = (reach as f64 / scale).ceil() as i64 + 1;
    for a in -reach..=reach {
        for c in -short..=short {
            consider(Lattice::First(a, c))?;
        }
    }
    if ctx.q() != 3 {
        for b in -short..=short {
            for d in -reach..=reach {
                consider(Lattice::Second(b, d))?;
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// gcd of two big integers, exposed for certificate checks.
pub fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn is_coprime(a: &BigInt, b: &BigInt) -> bool {
    a.gcd(b).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c3 = Context::new(3).unwrap();
        assert!(closed_form_member(&c3, &c3.cyc_from_i64s(&[2], &[3])).unwrap());
        assert!(!closed_form_member(&c3, &c3.cyc_from_i64s(&[2], &[4])).unwrap());
        let c4 = Context::new(4).unwrap();
        let x = c4.cyc(c4.lambda(), c4.one());
        assert!(closed_form_member(&c4, &x).unwrap());
        let c6 = Context::new(6).unwrap();
        assert!(!closed_form_member(&c6, &c6.cyc_from_i64s(&[1], &[1])).unwrap());
        assert!(closed_form_member(&Context::new(5).unwrap(), &c3.cyc_one()).is_err());
    }

    #[test]
    fn agrees_with_membership_test() {
        for q in [3, 4, 6] {
            let ctx = Context::new(q).unwrap();
            for i in -12..=12 {
                for j in -12..=12 {
                    for lat in [Lattice::First(i, j), Lattice::Second(i, j)] {
                        let x = from_lattice(&ctx, lat);
                        assert_eq!(
                            closed_form_member(&ctx, &x).unwrap(),
                            ctx.is_odd_vanishing_cycle(&x).unwrap(),
                            "q={q} {lat:?}"
                        );
                    }
                }
            }
        }
    }
}
