//! Dense integer polynomials in ascending coefficient order.
//!
//! Only what the field construction needs: cyclotomic polynomials by the
//! divisor recursion, the palindromic reduction that turns Φ_{2q} into the
//! minimal polynomial of 2cos(π/q), resultants, and exact root counting for
//! totally real polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Poly = Vec<BigInt>;

pub fn trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigInt::zero());
    }
}

pub fn degree(p: &[BigInt]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact division by a monic polynomial. Panics if the remainder is nonzero.
pub fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Poly {
    let dd = degree(den);
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem: Poly = num.to_vec();
    trim(&mut rem);
    let dn = degree(&rem);
    if dn < dd {
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let lead = rem[k + dd].clone();
        if lead.is_zero() {
            continue;
        }
        for (j, c) in den.iter().enumerate().take(dd + 1) {
            rem[k + j] -= &lead * c;
        }
        quot[k] = lead;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(&mut quot);
    quot
}

/// Φ_n via Φ_n = (t^n − 1) / ∏_{d | n, d < n} Φ_d.
pub fn cyclotomic(n: u32) -> Poly {
    assert!(n >= 1);
    let mut table: Vec<Option<Poly>> = vec![None; n as usize + 1];
    for m in 1..=n {
        if !n.is_multiple_of(m) {
            continue;
        }
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = BigInt::from(-1);
        num[m as usize] = BigInt::one();
        for d in 1..m {
            if m % d == 0 {
                let phi_d = table[d as usize].as_ref().expect("divisors computed first");
                num = div_exact_monic(&num, phi_d);
            }
        }
        table[m as usize] = Some(num);
    }
    table[n as usize].take().expect("computed")
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Given a palindromic polynomial f of degree 2d, returns p of degree d with
/// f(t) = t^d · p(t + 1/t).
///
/// Works on the Laurent polynomial t^{-d} f(t): the leading term c·t^j is
/// removed by subtracting c·(t + 1/t)^j, which records c·x^j in p.
pub fn palindromic_reduce(f: &[BigInt]) -> Poly {
    let deg = degree(f);
    assert!(deg.is_multiple_of(2), "palindromic polynomial must have even degree");
    let d = deg / 2;
    // laurent[k] is the coefficient of t^{k - d}
    let mut laurent: Vec<BigInt> = f[..=deg].to_vec();
    let mut p = vec![BigInt::zero(); d + 1];
    for j in (0..=d).rev() {
        let c = laurent[d + j].clone();
        if c.is_zero() {
            continue;
        }
        p[j] = c.clone();
        // (t + 1/t)^j = Σ_k C(j,k) t^{j-2k}
        for (k, b) in binomial_row(j).iter().enumerate() {
            let exp = j as isize - 2 * k as isize;
            let idx = (d as isize + exp) as usize;
            laurent[idx] -= &c * b;
        }
    }
    assert!(
        laurent.iter().all(Zero::is_zero),
        "input polynomial is not palindromic"
    );
    trim(&mut p);
    p
}

/// Determinant of a square integer matrix by fraction-free Bareiss elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant Res(f, g) as the determinant of the Sylvester matrix.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (m, n) = (degree(f), degree(g));
    if g.iter().all(Zero::is_zero) || f.iter().all(Zero::is_zero) {
        return BigInt::zero();
    }
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    // n shifted copies of f, then m shifted copies of g, highest degree first
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for k in 0..=m {
            row[i + k] = f[m - k].clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for k in 0..=n {
            row[i + k] = g[n - k].clone();
        }
        rows.push(row);
    }
    det_bareiss(rows)
}

/// Coefficients of p(x + shift), ascending.
pub fn taylor_shift(p: &[BigInt], shift: &BigRational) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = p.iter().map(|x| BigRational::from(x.clone())).collect();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * shift;
            c[j] += t;
        }
    }
    c
}

fn sign_variations<T: Signed>(coeffs: &[T]) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for c in coeffs {
        let s = if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of roots strictly greater than `x`, counted with multiplicity.
///
/// Exact only for polynomials whose roots are all real; Descartes' bound is
/// then attained. Minimal polynomials of 2cos(π/q) have this property.
pub fn real_roots_above(p: &[BigInt], x: &BigRational) -> usize {
    let shifted = taylor_shift(p, x);
    sign_variations(&shifted)
}

pub fn eval_rational(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from(c.clone());
    }
    acc
}

/// Human-readable form with descending powers, e.g. `t^3-t^2-2t+1`.
pub fn to_string(p: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for k in (0..p.len()).rev() {
        let c = &p[k];
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if k == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn gcd_content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(8), p(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(10), p(&[1, -1, 1, -1, 1]));
        assert_eq!(to_string(&cyclotomic(14), "t"), "t^6-t^5+t^4-t^3+t^2-t+1");
    }

    #[test]
    fn palindromic_reduction_matches_table() {
        assert_eq!(palindromic_reduce(&cyclotomic(6)), p(&[-1, 1]));
        assert_eq!(palindromic_reduce(&cyclotomic(8)), p(&[-2, 0, 1]));
        assert_eq!(palindromic_reduce(&cyclotomic(10)), p(&[-1, -1, 1]));
        assert_eq!(palindromic_reduce(&cyclotomic(12)), p(&[-3, 0, 1]));
        assert_eq!(palindromic_reduce(&cyclotomic(14)), p(&[1, -2, -1, 1]));
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(t^2 - t - 1, t) = product of roots of t^2-t-1 evaluated in t = -1
        assert_eq!(resultant(&p(&[-1, -1, 1]), &p(&[0, 1])), BigInt::from(-1));
        // Res(t^2 - 3, t) = -3
        assert_eq!(resultant(&p(&[-3, 0, 1]), &p(&[0, 1])), BigInt::from(-3));
        // Res(f, constant c) = c^deg f
        assert_eq!(resultant(&p(&[-1, -1, 1]), &p(&[4])), BigInt::from(16));
    }

    #[test]
    fn bareiss_det() {
        let m = vec![p(&[2, 0, 1]), p(&[1, 3, 2]), p(&[1, 1, 1])];
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(det_bareiss(m), BigInt::zero());
        let m = vec![p(&[0, 1]), p(&[1, 0])];
        assert_eq!(det_bareiss(m), BigInt::from(-1));
    }

    #[test]
    fn descartes_on_totally_real() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let f = p(&[6, -7, 0, 1]);
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(real_roots_above(&f, &r(-4, 1)), 3);
        assert_eq!(real_roots_above(&f, &r(0, 1)), 2);
        assert_eq!(real_roots_above(&f, &r(3, 2)), 1);
        assert_eq!(real_roots_above(&f, &r(2, 1)), 0);
    }

    #[test]
    fn display() {
        assert_eq!(to_string(&p(&[1, 0, 0, 0, 1]), "t"), "t^4+1");
        assert_eq!(to_string(&p(&[-1, 1]), "t"), "t-1");
        assert_eq!(to_string(&p(&[1, -2, -1, 1]), "t"), "t^3-t^2-2t+1");
    }
}
