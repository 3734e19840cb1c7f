//! Large disks free of vanishing cycles for q ∈ {3, 4, 6}, via the Chinese remainder theorem.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Context, CycInt, ZLambda};

/// A hole in one Z-lattice: no point (a, c) with a0 < a < a0 + N + 1 and
/// c0 < c < c0 + N + 1 satisfies the coprimality condition.
#[derive(Clone, Debug)]
pub struct HoleCertificate {
    pub q: u32,
    pub n: usize,
    pub primes: Vec<Vec<u64>>,
    pub a0: BigInt,
    pub c0: BigInt,
    /// Product of all primes; (a0, c0) may be shifted by multiples of it.
    pub modulus: BigInt,
    pub lattice: &'static str,
    pub verified: bool,
    pub overlap: Option<OverlapCertificate>,
}

/// A first-lattice hole shifted inside a larger second-lattice hole.
#[derive(Clone, Debug)]
pub struct OverlapCertificate {
    pub n2: usize,
    pub b0: BigInt,
    pub d0: BigInt,
    pub a0: BigInt,
    pub c0: BigInt,
    pub contained: bool,
    pub verified: bool,
}

#[derive(Serialize)]
struct OverlapJson {
    n2: usize,
    b0: String,
    d0: String,
    a0: String,
    c0: String,
    contained: bool,
    verified: bool,
}

#[derive(Serialize)]
struct HoleJson<'a> {
    q: u32,
    n: usize,
    primes: &'a [Vec<u64>],
    a0: String,
    c0: String,
    modulus: String,
    lattice: &'static str,
    quadrangle: String,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    overlap: Option<OverlapJson>,
}

impl HoleCertificate {
    /// The open quadrangle in which the hole lies.
    pub fn quadrangle(&self) -> String {
        let side = self.n + 1;
        let dir = match self.q {
            3 => "η",
            4 => "√2·η",
            _ => "√3·η",
        };
        format!(
            "({a0} + {c0}·{dir}) + (0,{side}) + (0,{side})·{dir}",
            a0 = self.a0,
            c0 = self.c0
        )
    }

    /// Interior lattice coordinates (a0 + i, c0 + j), 1 ≤ i, j ≤ N.
    pub fn interior(&self) -> Vec<(BigInt, BigInt)> {
        let n = self.n as i64;
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| (&self.a0 + i, &self.c0 + j))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let overlap = self.overlap.as_ref().map(|o| OverlapJson {
            n2: o.n2,
            b0: o.b0.to_string(),
            d0: o.d0.to_string(),
            a0: o.a0.to_string(),
            c0: o.c0.to_string(),
            contained: o.contained,
            verified: o.verified,
        });
        serde_json::to_value(HoleJson {
            q: self.q,
            n: self.n,
            primes: &self.primes,
            a0: self.a0.to_string(),
            c0: self.c0.to_string(),
            modulus: self.modulus.to_string(),
            lattice: self.lattice,
            quadrangle: self.quadrangle(),
            verified: self.verified,
            overlap,
        })
        .expect("plain data serializes")
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The first `count` primes, skipping the first `skip`.
pub fn primes_from(skip: usize, count: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_prime(p)).skip(skip).take(count).collect()
}

/// Row-major N×N grid of the first N² primes.
pub fn default_primes(n: usize) -> Vec<Vec<u64>> {
    primes_from(0, n * n).chunks(n).map(|r| r.to_vec()).collect()
}

/// x with x ≡ r_k mod m_k for pairwise coprime m_k, reduced into [0, Π m_k).
pub fn crt(residues: &[(BigInt, BigInt)]) -> BigInt {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, mk) in residues {
        // x + m·t ≡ r mod mk
        let e = m.extended_gcd(mk);
        debug_assert!(e.gcd.is_one());
        let t = ((r - &x) * &e.x).mod_floor(mk);
        x += &m * t;
        m *= mk;
    }
    x.mod_floor(&m)
}

fn check_primes(primes: &[Vec<u64>]) -> Result<usize> {
    let n = primes.len();
    if n == 0 || primes.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("primes must form a nonempty N×N grid".into()));
    }
    let mut all: Vec<u64> = primes.iter().flatten().copied().collect();
    if !all.iter().all(|&p| is_prime(p)) {
        return Err(Error::InvalidPrimes);
    }
    all.sort_unstable();
    all.dedup();
    if all.len() != n * n {
        return Err(Error::InvalidPrimes);
    }
    Ok(n)
}

/// Base point (a0, c0) with a0 ≡ −i mod P_i, c0 ≡ −j mod Q_j, and P = Π p_ij.
fn crt_base(primes: &[Vec<u64>]) -> (BigInt, BigInt, BigInt) {
    let n = primes.len();
    let row = |i: usize| primes[i].iter().map(|&p| BigInt::from(p)).product::<BigInt>();
    let col = |j: usize| primes.iter().map(|r| BigInt::from(r[j])).product::<BigInt>();
    let a_res: Vec<_> = (0..n).map(|i| (-BigInt::from(i + 1), row(i))).collect();
    let c_res: Vec<_> = (0..n).map(|j| (-BigInt::from(j + 1), col(j))).collect();
    let modulus = a_res.iter().map(|(_, m)| m.clone()).product();
    (crt(&a_res), crt(&c_res), modulus)
}

fn small_q_factor(q: u32) -> i64 {
    match q {
        4 => 2,
        6 => 3,
        _ => 1,
    }
}

fn first_lattice_point(ctx: &Context, a: &BigInt, c: &BigInt) -> CycInt {
    if ctx.q() == 3 {
        ctx.cyc(ctx.int(a.clone()), ctx.int(c.clone()))
    } else {
        ctx.cyc(ctx.int(a.clone()), ctx.lambda().scale(c))
    }
}

/// Whether a first-lattice point (a, c) fails the coprimality condition.
fn first_lattice_excluded(q: u32, a: &BigInt, c: &BigInt) -> bool {
    !a.gcd(&(c * small_q_factor(q))).is_one()
}

fn second_lattice_excluded(q: u32, b: &BigInt, d: &BigInt) -> bool {
    !(b * small_q_factor(q)).gcd(d).is_one()
}

/// Builds and checks the hole for the given prime grid.
pub fn find_hole(ctx: &Context, primes: &[Vec<u64>]) -> Result<HoleCertificate> {
    let q = ctx.q();
    if !matches!(q, 3 | 4 | 6) {
        return Err(Error::UnsupportedQ {
            q,
            expected: "{3, 4, 6}",
        });
    }
    let n = check_primes(primes)?;
    let (a0, c0, modulus) = crt_base(primes);
    let mut cert = HoleCertificate {
        q,
        n,
        primes: primes.to_vec(),
        a0,
        c0,
        modulus,
        lattice: if q == 3 { "Z + Z·η" } else { "first" },
        verified: false,
        overlap: None,
    };
    cert.verified = verify_first(ctx, &cert.a0, &cert.c0, n)?;
    Ok(cert)
}

/// Every interior point is rejected both by the gcd test and by the membership test.
fn verify_first(ctx: &Context, a0: &BigInt, c0: &BigInt, n: usize) -> Result<bool> {
    for i in 1..=n as i64 {
        for j in 1..=n as i64 {
            let (a, c) = (a0 + i, c0 + j);
            if !first_lattice_excluded(ctx.q(), &a, &c) {
                return Ok(false);
            }
            let x = first_lattice_point(ctx, &a, &c);
            if ctx.is_odd_vanishing_cycle(&x)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The smallest m ≥ 0 such that `ok(m)` holds, assuming monotonicity.
fn least_shift(mut ok: impl FnMut(&BigInt) -> bool) -> BigInt {
    let mut hi = BigInt::one();
    if ok(&BigInt::zero()) {
        // shift downwards instead
        let mut lo = -BigInt::one();
        while ok(&lo) {
            lo *= 2;
        }
        let mut hi = BigInt::zero();
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
            if ok(&mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return hi;
    }
    while !ok(&hi) {
        hi *= 2;
    }
    let mut lo = BigInt::zero();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Adds the second stage for q ∈ {4, 6}: a second-lattice hole of side
/// N₂ + 1 with N₂ ≥ λ(N + 1 + P), and a shift of the first hole inside it.
pub fn add_overlap(ctx: &Context, cert: &mut HoleCertificate) -> Result<()> {
    let q = ctx.q();
    if !matches!(q, 4 | 6) {
        return Err(Error::UnsupportedQ {
            q,
            expected: "{4, 6}",
        });
    }
    let n = cert.n;
    let lam = ctx.lambda();
    let bound = BigInt::from(n + 1) + &cert.modulus;
    // least N2 with N2 ≥ λ·bound, i.e. N2² ≥ k·bound² for λ² = k
    let k = BigInt::from(small_q_factor(q));
    let target = &bound * &bound * &k;
    let mut n2 = target.sqrt();
    if &n2 * &n2 < target {
        n2 += 1;
    }
    let n2: usize = n2
        .try_into()
        .map_err(|_| Error::InvalidInput("second hole too large".into()))?;
    let used = n * n;
    let second: Vec<Vec<u64>> = primes_from(used, n2 * n2)
        .chunks(n2)
        .map(|r| r.to_vec())
        .collect();
    let (b0, d0, _) = crt_base(&second);

    let lam_times = |v: &BigInt| lam.scale(v);
    let geq = |x: &ZLambda, y: &ZLambda| ctx.sign(&(x - y)).is_ge();
    let step = cert.modulus.clone();
    // a = a0 + l1·P minimal with a ≥ λ·b0, c = c0 + l2·P minimal with λ·c ≥ d0
    let lb0 = lam_times(&b0);
    let l1 = least_shift(|l| geq(&ctx.int(&cert.a0 + l * &step), &lb0));
    let d0z = ctx.int(d0.clone());
    let l2 = least_shift(|l| geq(&lam_times(&(&cert.c0 + l * &step)), &d0z));
    let a = &cert.a0 + &l1 * &step;
    let c = &cert.c0 + &l2 * &step;

    let side = BigInt::from(n + 1);
    let side2 = BigInt::from(n2 + 1);
    let contained = geq(&ctx.int(a.clone()), &lb0)
        && geq(&lam_times(&(&b0 + &side2)), &ctx.int(&a + &side))
        && geq(&lam_times(&c), &d0z)
        && geq(&ctx.int(&d0 + &side2), &lam_times(&(&c + &side)));

    let mut verified = contained && verify_first(ctx, &a, &c, n)?;
    if verified {
        // second-lattice points bλ + dη inside the shifted first hole
        let (x_lo, x_hi) = (ctx.int(a.clone()), ctx.int(&a + &side));
        let (y_lo, y_hi) = (lam_times(&c), lam_times(&(&c + &side)));
        let strictly = |lo: &ZLambda, v: &ZLambda, hi: &ZLambda| {
            ctx.sign(&(v - lo)).is_gt() && ctx.sign(&(hi - v)).is_gt()
        };
        let b_start = least_shift(|b| geq(&lam_times(b), &x_lo));
        let d_start = least_shift(|d| geq(&ctx.int(d.clone()), &y_lo));
        let mut b = b_start;
        while ctx.sign(&(&x_hi - &lam_times(&b))).is_gt() {
            let mut d = d_start.clone();
            while ctx.sign(&(&y_hi - &ctx.int(d.clone()))).is_gt() {
                let bl = lam_times(&b);
                let dz = ctx.int(d.clone());
                let inside = strictly(&x_lo, &bl, &x_hi) && strictly(&y_lo, &dz, &y_hi);
                if inside && !second_lattice_excluded(q, &b, &d) {
                    verified = false;
                }
                d += 1;
            }
            b += 1;
        }
    }
    cert.overlap = Some(OverlapCertificate {
        n2,
        b0,
        d0,
        a0: a,
        c0: c,
        contained,
        verified,
    });
    Ok(())
}
