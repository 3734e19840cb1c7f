//! Self-checks run by `hecke verify`, deterministic for a fixed seed.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cycles::closed_form::{closed_form_orbit, closed_form_scan};
use crate::cycles::enumerate::{age_count, duplicate_scan};
use crate::cycles::holes::{default_primes, find_hole};
use crate::cycles::shells::{rotation_closure_scan, shell_table};
use crate::cycles::{enumerate_in_disk, CycleRecord};
use crate::error::Result;
use crate::field::{Context, CycInt, ZLambda};
use crate::group::{Gen, Mat2, Word};
use crate::q5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub q: Option<u32>,
    pub checked: u64,
    pub failed: u64,
    pub note: String,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.name)?;
        if let Some(q) = self.q {
            write!(f, " q={q}")?;
        }
        write!(f, " checked={} failed={}", self.checked, self.failed)?;
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        Ok(())
    }
}

struct Tally {
    checked: u64,
    failed: u64,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failed: 0 }
    }

    fn check(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
    }

    fn finish(self, name: &str, q: Option<u32>, note: impl Into<String>) -> SuiteResult {
        SuiteResult {
            name: name.into(),
            q,
            checked: self.checked,
            failed: self.failed,
            note: note.into(),
        }
    }
}

pub fn rng_for(seed: u64, q: u32, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ ((q as u64) << 32) ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// A random element of Z[λ] with integer coordinates in [−h, h].
pub fn random_zl(ctx: &Context, rng: &mut impl Rng, h: i64) -> ZLambda {
    let coeffs: Vec<i64> = (0..ctx.degree()).map(|_| rng.gen_range(-h..=h)).collect();
    ctx.zl_from_i64s(&coeffs)
}

pub fn random_cyc(ctx: &Context, rng: &mut impl Rng, h: i64) -> CycInt {
    ctx.cyc(random_zl(ctx, rng, h), random_zl(ctx, rng, h))
}

/// A random word of `len` tokens over V, A₁, A₂, Q and −I.
pub fn random_word(rng: &mut impl Rng, len: usize) -> Word {
    let gens = [Gen::V, Gen::A1, Gen::A2, Gen::Q, Gen::Neg];
    let mut w = Word::new();
    for _ in 0..len {
        let g = gens[rng.gen_range(0..gens.len())];
        let mut e = rng.gen_range(-3i64..=3);
        if e == 0 {
            e = 1;
        }
        w.push(g, e);
    }
    w
}

/// A random word in the transvections A₁^{±1}, A₂^{±1}.
pub fn random_transvection_word(rng: &mut impl Rng, len: usize) -> Word {
    let mut w = Word::new();
    for _ in 0..len {
        let g = if rng.gen_bool(0.5) { Gen::A1 } else { Gen::A2 };
        w.push(g, if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    w
}

/// A matrix with determinant ≠ 1 obtained by changing one column or entry of m.
pub fn perturb(ctx: &Context, m: &Mat2, which: usize) -> Mat2 {
    let mut p = m.clone();
    let one = ctx.one();
    match which % 4 {
        0 => {
            p.a = -&p.a;
            p.c = -&p.c;
        }
        1 => {
            p.b = p.b.scale(&BigInt::from(2));
            p.d = p.d.scale(&BigInt::from(2));
        }
        // adding 1 to a changes det by d, adding 1 to d changes it by a
        2 if !p.d.is_zero() => p.a = &p.a + &one,
        _ if !p.a.is_zero() => p.d = &p.d + &one,
        // a = d = 0 forces c ≠ 0, and adding 1 to b changes det by −c
        _ => p.b = &p.b + &one,
    }
    p
}

pub fn relations(ctx: &Context) -> SuiteResult {
    let report = ctx.relations_report();
    let mut t = Tally::new();
    let mut bad = Vec::new();
    for c in &report.checks {
        t.check(c.holds);
        if !c.holds {
            bad.push(c.name.clone());
        }
    }
    t.finish("relations", Some(ctx.q()), bad.join(", "))
}

/// Random words lie in the group; perturbed ones do not; factor/eval round trips.
pub fn words(ctx: &Context, seed: u64, samples: usize) -> Result<SuiteResult> {
    let mut rng = rng_for(seed, ctx.q(), 1);
    let mut t = Tally::new();
    for i in 0..samples {
        let len = rng.gen_range(1..=12);
        let m = ctx.eval_word(&random_word(&mut rng, len));
        t.check(ctx.in_hecke_group(&m)?);
        let p = perturb(ctx, &m, i);
        t.check(!ctx.det(&p).is_one() && !ctx.in_hecke_group(&p)?);
        let w = ctx.factor(&m)?;
        t.check(ctx.eval_word(&w) == m);
    }
    Ok(t.finish("group-membership", Some(ctx.q()), ""))
}

/// Entries α₁ + α₂λ of matrices in the group for q = 5 satisfy α₁α₂ ≥ 0.
pub fn entry_signs_q5(ctx: &Context, seed: u64, samples: usize) -> SuiteResult {
    let mut rng = rng_for(seed, ctx.q(), 2);
    let mut t = Tally::new();
    for _ in 0..samples {
        let len = rng.gen_range(1..=16);
        let m = ctx.eval_word(&random_word(&mut rng, len));
        for e in [&m.a, &m.b, &m.c, &m.d] {
            let c = e.coeffs();
            t.check(&c[0] * &c[1] >= BigInt::from(0));
        }
    }
    t.finish("entry-signs", Some(ctx.q()), "")
}

pub fn enumeration(ctx: &Context, age_max: u32, workers: usize) -> Result<SuiteResult> {
    let mut t = Tally::new();
    let report = duplicate_scan(ctx, age_max, workers)?;
    t.check(report.duplicates == 0);
    let expected: BigInt = (0..=age_max).map(|s| age_count(ctx.q(), s)).sum();
    t.check(BigInt::from(report.points) == expected);
    let (n, missing) = rotation_closure_scan(ctx, age_max.min(4), workers)?;
    t.check(n > 0 && missing == 0);
    Ok(t.finish(
        "enumeration",
        Some(ctx.q()),
        format!("{} points to age {age_max}", report.points),
    ))
}

pub fn shells(ctx: &Context, s_max: u32, workers: usize) -> Result<SuiteResult> {
    let mut t = Tally::new();
    let table = shell_table(ctx, s_max, workers)?;
    t.check(table.rho2(0).is_one());
    t.check(table.strictly_increasing(ctx));
    for ok in table.growth_checks(ctx) {
        t.check(ok);
    }
    let expected = if ctx.q() == 3 { 6 } else { 4 * ctx.q() as usize };
    t.check(table.shells[1].minimizers.len() == expected);
    let l = ctx.lambda();
    let lz = &ctx.cyc_real(l.clone()) + &ctx.zeta();
    let one_lz = &ctx.cyc_one() + &ctx.cyc_scale(&l, &ctx.zeta());
    let orbit: Vec<CycInt> = ctx
        .unit_roots()
        .iter()
        .flat_map(|z| [ctx.cyc_mul(z, &lz), ctx.cyc_mul(z, &one_lz)])
        .collect();
    t.check(table.shells[1].minimizers.iter().all(|m| orbit.contains(m)));
    Ok(t.finish("shells", Some(ctx.q()), ""))
}

/// Enumeration inside |x|² ≤ r2 equals the gcd description, for q ∈ {3, 4, 6}.
pub fn closed_forms(ctx: &Context, r2: i64) -> Result<SuiteResult> {
    let mut t = Tally::new();
    let (num, den) = (BigInt::from(r2), BigInt::from(1));
    let mut ours: Vec<CycInt> = enumerate_in_disk(ctx, &num, &den)?
        .into_iter()
        .map(|r| r.point)
        .collect();
    let mut oracle = closed_form_scan(ctx, &num, &den)?;
    ours.sort();
    oracle.sort();
    t.check(ours == oracle);
    Ok(t.finish("closed-form", Some(ctx.q()), format!("{} points", ours.len())))
}

/// Orbit labels: agreement with the congruence classes and constancy along Γ⁽¹⁾.
pub fn orbits(ctx: &Context, seed: u64, samples: usize) -> Result<SuiteResult> {
    let mut t = Tally::new();
    let recs: Vec<CycleRecord> = crate::cycles::enumerate_by_age(ctx, 2);
    for r in &recs {
        t.check(ctx.orbit_label(&r.point)? == r.orbit);
        if ctx.q() % 2 == 1 {
            t.check(r.orbit == 0);
        }
        if matches!(ctx.q(), 4 | 6) {
            t.check(closed_form_orbit(ctx, &r.point)? == Some(r.orbit));
        }
    }
    let mut rng = rng_for(seed, ctx.q(), 3);
    for _ in 0..samples {
        let r = &recs[rng.gen_range(0..recs.len())];
        let len = rng.gen_range(1..=8);
        let g = ctx.eval_word(&random_transvection_word(&mut rng, len));
        let y = ctx.act(&g, &r.point);
        t.check(ctx.orbit_label(&y)? == r.orbit);
    }
    Ok(t.finish("orbits", Some(ctx.q()), ""))
}

/// Bilinear forms, the even group and the transvections.
pub fn forms(ctx: &Context, seed: u64, samples: usize) -> SuiteResult {
    let mut t = Tally::new();
    let g = ctx.generators();
    t.check(ctx.s1_matrix(&ctx.cyc_one()) == g.a1);
    t.check(ctx.s1_matrix(&ctx.eta()) == g.a2);
    let m = ctx.monodromy();
    let r1 = ctx.s0_matrix(&ctx.cyc_one()).expect("I0(1,1) = 2");
    let r2 = ctx.s0_matrix(&ctx.eta()).expect("I0(η,η) = 2");
    t.check(ctx.mat_mul(&r1, &r2) == m.neg());
    t.check(ctx.mat_mul(&g.a1, &g.a2) == m);
    let even = ctx.even_group();
    t.check(even.len() == 2 * ctx.q() as usize);
    let closure = ctx.matrix_closure(&[r1, r2], 4 * ctx.q() as usize);
    t.check(closure.is_some_and(|c| c.len() == 2 * ctx.q() as usize && even.iter().all(|o| c.contains(o))));
    let cycles = ctx.even_cycles();
    t.check(cycles.len() == 2 * ctx.q() as usize && ctx.unit_roots().iter().all(|z| cycles.contains(z)));
    let mut rng = rng_for(seed, ctx.q(), 4);
    let mu = ctx.generators().q;
    for _ in 0..samples {
        let x = random_cyc(ctx, &mut rng, 5);
        let y = random_cyc(ctx, &mut rng, 5);
        let len = rng.gen_range(1..=8);
        let w = ctx.eval_word(&random_word(&mut rng, len));
        t.check(ctx.form_i1(&ctx.act(&w, &x), &ctx.act(&w, &y)) == ctx.form_i1(&x, &y));
        let op = &even[rng.gen_range(0..even.len())];
        t.check(ctx.form_i0(&ctx.act(op, &x), &ctx.act(op, &y)) == ctx.form_i0(&x, &y));
        t.check(ctx.form_i0(&ctx.act(&mu, &x), &ctx.act(&mu, &y)) == ctx.form_i0(&x, &y));
        t.check(ctx.form_i1(&x, &x).is_zero());
    }
    t.finish("forms", Some(ctx.q()), "")
}

/// Random x = a + cη with a, c ≥ 1 and |x| ≥ 1: a₁x has (1, ζ)-coordinates (a, c)
/// and |a₁x| ≥ |x| + √(2λ²+1) − 1.
pub fn sector_growth(ctx: &Context, seed: u64, samples: usize) -> SuiteResult {
    let mut rng = rng_for(seed, ctx.q(), 5);
    let mut t = Tally::new();
    let one = ctx.one();
    let c2 = &ctx.mul(&ctx.lambda(), &ctx.lambda()).scale(&BigInt::from(2)) + &one;
    let mut accepted = 0;
    while accepted < samples {
        let a = random_zl(ctx, &mut rng, 12);
        let c = random_zl(ctx, &mut rng, 12);
        if ctx.cmp(&a, &one) == Ordering::Less || ctx.cmp(&c, &one) == Ordering::Less {
            continue;
        }
        let x = ctx.cyc(a.clone(), c.clone());
        let n2 = ctx.cyc_norm_to_lambda(&x);
        if ctx.cmp(&n2, &one) == Ordering::Less {
            continue;
        }
        accepted += 1;
        let y = ctx.act_a1(&x);
        let (u, v) = ctx.to_zeta_basis(&y);
        t.check(u == a && v == c);
        let m2 = ctx.cyc_norm_to_lambda(&y);
        t.check(ctx.sqrt_sum_sign(&m2, &n2, &c2) != Ordering::Less);
    }
    t.finish("sector-growth", Some(ctx.q()), "")
}

pub fn decomposition_q5(ctx: &Context, height: i64) -> Result<SuiteResult> {
    let report = q5::sweep(ctx, height)?;
    Ok(SuiteResult {
        name: "decomposition".into(),
        q: Some(5),
        checked: report.checked as u64,
        failed: report.failures.len() as u64,
        note: report.failures.first().cloned().unwrap_or_default(),
    })
}

pub fn holes(ctx: &Context) -> Result<SuiteResult> {
    let mut t = Tally::new();
    if ctx.q() == 3 {
        let cert = find_hole(ctx, &[vec![2, 3], vec![5, 7]])?;
        t.check(cert.verified && cert.a0 == BigInt::from(173) && cert.c0 == BigInt::from(19));
    }
    for n in 1..=3 {
        t.check(find_hole(ctx, &default_primes(n))?.verified);
    }
    Ok(t.finish("holes", Some(ctx.q()), ""))
}

/// Ring laws, norm multiplicativity and sign consistency on random elements.
pub fn field(ctx: &Context, seed: u64, samples: usize) -> SuiteResult {
    let mut rng = rng_for(seed, ctx.q(), 6);
    let mut t = Tally::new();
    for _ in 0..samples {
        let (x, y, z) = (
            random_cyc(ctx, &mut rng, 100),
            random_cyc(ctx, &mut rng, 100),
            random_cyc(ctx, &mut rng, 100),
        );
        let m = |u: &CycInt, v: &CycInt| ctx.cyc_mul(u, v);
        t.check(m(&m(&x, &y), &z) == m(&x, &m(&y, &z)));
        t.check(m(&x, &(&y + &z)) == &m(&x, &y) + &m(&x, &z));
        t.check(m(&x, &y) == m(&y, &x));
        t.check(ctx.cyc_norm_to_q(&m(&x, &y)) == ctx.cyc_norm_to_q(&x) * ctx.cyc_norm_to_q(&y));
        t.check(ctx.cyc_conj(&m(&x, &y)) == m(&ctx.cyc_conj(&x), &ctx.cyc_conj(&y)));
        let n = ctx.cyc_norm_to_lambda(&x);
        t.check(m(&x, &ctx.cyc_conj(&x)) == ctx.cyc_real(n.clone()));
        t.check(ctx.sign(&n) == if x.is_zero() { Ordering::Equal } else { Ordering::Greater });
        let r = random_zl(ctx, &mut rng, 100);
        let iv = ctx.interval(&r, 200);
        let s = ctx.sign(&r);
        let numeric = if iv.contains_zero() {
            Ordering::Equal
        } else if iv.mid_f64() > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        t.check(r.is_zero() || s == numeric);
    }
    t.finish("field", Some(ctx.q()), "")
}

pub fn minimal_polynomials() -> Result<SuiteResult> {
    let table = [(3, "t-1"), (4, "t^2-2"), (5, "t^2-t-1"), (6, "t^2-3"), (7, "t^3-t^2-2t+1")];
    let mut t = Tally::new();
    for (q, expect) in table {
        let ctx = Context::new(q)?;
        t.check(crate::field::poly::to_string(ctx.pmin(), "t") == expect);
    }
    Ok(t.finish("minimal-polynomials", None, ""))
}

/// Runs every suite for the given q values.
pub fn run(qs: &[u32], seed: u64, workers: usize) -> Result<Vec<SuiteResult>> {
    let mut out = vec![minimal_polynomials()?];
    for &q in qs {
        let ctx = Context::new(q)?;
        out.push(field(&ctx, seed, 200));
        out.push(relations(&ctx));
        out.push(words(&ctx, seed, 100)?);
        out.push(enumeration(&ctx, if q <= 6 { 5 } else { 4 }, workers)?);
        out.push(shells(&ctx, 3, workers)?);
        out.push(orbits(&ctx, seed, 50)?);
        out.push(forms(&ctx, seed, 100));
        out.push(sector_growth(&ctx, seed, 200));
        if matches!(q, 3 | 4 | 6) {
            out.push(closed_forms(&ctx, 100)?);
            out.push(holes(&ctx)?);
        }
        if q == 5 {
            out.push(entry_signs_q5(&ctx, seed, 200));
            out.push(decomposition_q5(&ctx, 2)?);
        }
    }
    Ok(out)
}
