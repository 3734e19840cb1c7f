//! The reduction procedure for q = 5 writing every nonzero γ ∈ Z[ζ] as u·δ with
//! u ∈ Z[λ]_{>0} and δ an odd vanishing cycle.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Context, CycInt, QLambda, ZLambda};
use crate::group::{Gen, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Branch {
    /// μ^k γ ∈ S(1, ζ^{1/2}]
    Lower,
    /// μ^k γ ∈ S(ζ^{9/2}, −1)
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectorLocation {
    pub k: u32,
    pub branch: Branch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub k: u32,
    pub n: i64,
    /// |N(γ)| before the step.
    pub norm: BigInt,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub u: ZLambda,
    pub delta: CycInt,
    /// The unit root ζ^j reached at the end; δ = word(ζ^j).
    pub unit_index: u32,
    pub word: Word,
    pub trace: Vec<TraceStep>,
}

fn require_q5(ctx: &Context) -> Result<()> {
    if ctx.q() == 5 {
        Ok(())
    } else {
        Err(Error::UnsupportedQ {
            q: ctx.q(),
            expected: "{5}",
        })
    }
}

/// Sign of Im(conj(u)·v): positive iff v lies strictly counterclockwise of u within π.
pub fn cross(ctx: &Context, u: &CycInt, v: &CycInt) -> Ordering {
    ctx.sign(&ctx.cyc_mul(&ctx.cyc_conj(u), v).c)
}

/// Some (k, r) with γ = r·ζ^k and r ∈ Z[λ]_{>0}.
pub fn unit_ray(ctx: &Context, x: &CycInt) -> Option<(u32, ZLambda)> {
    let n = 2 * ctx.q() as i64;
    (0..n).find_map(|k| {
        let y = ctx.cyc_mul(&ctx.zeta_pow(-k), x);
        (y.c.is_zero() && ctx.is_positive(&y.a)).then_some((k as u32, y.a))
    })
}

fn in_lower(ctx: &Context, x: &CycInt) -> bool {
    let one = ctx.cyc_one();
    let x2 = ctx.cyc_mul(x, x);
    cross(ctx, &one, x).is_gt() && cross(ctx, &one, &x2).is_gt() && cross(ctx, &x2, &ctx.zeta()).is_ge()
}

fn in_upper(ctx: &Context, x: &CycInt) -> bool {
    let one = ctx.cyc_one();
    let x2 = ctx.cyc_mul(x, x);
    cross(ctx, &one, x).is_gt() && cross(ctx, &one, &x2).is_lt() && cross(ctx, &ctx.zeta_pow(9), &x2).is_gt()
}

pub fn locate_sector(ctx: &Context, x: &CycInt) -> Result<SectorLocation> {
    require_q5(ctx)?;
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if unit_ray(ctx, x).is_some() {
        return Err(Error::InvalidInput("element lies on a unit-root ray".into()));
    }
    let mut found = None;
    let mut y = x.clone();
    for k in 0..10 {
        let hit = match (in_lower(ctx, &y), in_upper(ctx, &y)) {
            (true, false) => Some(Branch::Lower),
            (false, true) => Some(Branch::Upper),
            (false, false) => None,
            (true, true) => return Err(Error::Internal("overlapping sectors".into())),
        };
        if let Some(branch) = hit {
            if found.is_some() {
                return Err(Error::Internal("sector not unique".into()));
            }
            found = Some(SectorLocation { k, branch });
        }
        y = ctx.mul_zeta(&y);
    }
    found.ok_or_else(|| Error::Internal("no sector found".into()))
}

/// Least m ≥ 1 with `ok(m)`, for a predicate monotone in m.
fn least_from_one(mut ok: impl FnMut(i64) -> bool) -> Result<i64> {
    let mut hi = 1i64;
    while !ok(hi) {
        hi = hi
            .checked_mul(2)
            .ok_or_else(|| Error::Internal("shift search overflow".into()))?;
    }
    let mut lo = hi / 2;
    if lo == 0 {
        return Ok(1);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// One application of the procedure: b = a₁^{−n} μ^k, returning (location, n, b(γ)).
pub fn step_p(ctx: &Context, x: &CycInt) -> Result<(SectorLocation, i64, CycInt)> {
    let loc = locate_sector(ctx, x)?;
    let y = (0..loc.k).fold(x.clone(), |acc, _| ctx.mul_zeta(&acc));
    let zeta = ctx.zeta();
    let eta = ctx.eta();
    let image = |n: i64| ctx.act_a1_pow(&y, -n);
    let n = match loc.branch {
        Branch::Lower => least_from_one(|n| cross(ctx, &zeta, &image(n)).is_ge())?,
        Branch::Upper => -least_from_one(|m| cross(ctx, &image(-m), &eta).is_ge())?,
    };
    let out = image(n);
    let in_target = match loc.branch {
        // S[ζ, ζ⁴)
        Branch::Lower => cross(ctx, &zeta, &out).is_ge() && cross(ctx, &out, &eta).is_gt(),
        // S(ζ, ζ⁴]
        Branch::Upper => cross(ctx, &zeta, &out).is_gt() && cross(ctx, &out, &eta).is_ge(),
    };
    if !in_target {
        return Err(Error::Internal(format!("shift n = {n} misses the target sector")));
    }
    let before = ctx.cyc_norm_to_q(x).abs();
    let after = ctx.cyc_norm_to_q(&out).abs();
    if after >= before {
        return Err(Error::Internal(format!("norm did not decrease: {before} -> {after}")));
    }
    Ok((loc, n, out))
}

pub fn decompose_q5(ctx: &Context, gamma: &CycInt) -> Result<Decomposition> {
    require_q5(ctx)?;
    if gamma.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut cur = gamma.clone();
    let mut trace = Vec::new();
    let (j, u) = loop {
        if let Some(hit) = unit_ray(ctx, &cur) {
            break hit;
        }
        let norm = ctx.cyc_norm_to_q(&cur).abs();
        let (loc, n, next) = step_p(ctx, &cur)?;
        trace.push(TraceStep { k: loc.k, n, norm });
        cur = next;
    };
    // b = a₁^{−n_t} μ^{k_t} ⋯ a₁^{−n_1} μ^{k_1}, so b⁻¹ = μ^{−k_1} a₁^{n_1} ⋯ μ^{−k_t} a₁^{n_t}
    let mut word = Word::new();
    for s in &trace {
        word.push(Gen::Q, (10 - s.k as i64) % 10);
        word.push(Gen::A1, s.n);
    }
    let delta = ctx.act(&ctx.eval_word(&word), &ctx.zeta_pow(j as i64));
    if ctx.cyc_scale(&u, &delta) != *gamma {
        return Err(Error::Internal("u·δ differs from γ".into()));
    }
    Ok(Decomposition {
        u,
        delta,
        unit_index: j,
        word,
        trace,
    })
}

/// Independent route to the same (u, δ): the nearest-multiple reduction of the
/// coordinates of γ ends at (±u, 0); δ = γ/u.
pub fn half_line_representative(ctx: &Context, gamma: &CycInt, max_steps: usize) -> Result<(ZLambda, CycInt)> {
    if gamma.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (mut a, mut c) = (gamma.a.clone(), gamma.c.clone());
    let mut steps = 0;
    while !c.is_zero() {
        if steps == max_steps {
            return Err(Error::StepCapExceeded(max_steps));
        }
        let (_, rem) = ctx.nearest_step(&a, &c);
        a = std::mem::replace(&mut c, rem);
        steps += 1;
    }
    let u = ctx.abs(&a);
    let inv = ctx.inverse(&u).ok_or_else(|| Error::Internal("zero terminal value".into()))?;
    let divide = |v: &ZLambda| -> Result<ZLambda> {
        let r = ctx.qmul(&QLambda::from_integral(v.clone()), &inv);
        if r.den() != &BigInt::from(1) {
            return Err(Error::Internal("coordinate not divisible".into()));
        }
        Ok(r.num().clone())
    };
    Ok((u.clone(), CycInt::new(divide(&gamma.a)?, divide(&gamma.c)?)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: usize,
    pub failures: Vec<String>,
    pub longest_trace: usize,
}

/// Every nonzero a + cη with all four integer coordinates in [−h, h].
pub fn sweep_elements(ctx: &Context, h: i64) -> Vec<CycInt> {
    let range: Vec<i64> = (-h..=h).collect();
    let mut out = Vec::new();
    for &a0 in &range {
        for &a1 in &range {
            for &c0 in &range {
                for &c1 in &range {
                    let x = ctx.cyc_from_i64s(&[a0, a1], &[c0, c1]);
                    if !x.is_zero() {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

/// Checks the decomposition of every element of height ≤ h.
pub fn sweep(ctx: &Context, h: i64) -> Result<SweepReport> {
    require_q5(ctx)?;
    let elems = sweep_elements(ctx, h);
    let results: Vec<(usize, Option<String>)> = elems
        .par_iter()
        .map(|g| match check_one(ctx, g) {
            Ok(len) => (len, None),
            Err(e) => (0, Some(format!("{g}: {e}"))),
        })
        .collect();
    let mut report = SweepReport {
        checked: elems.len(),
        ..Default::default()
    };
    for (len, err) in results {
        report.longest_trace = report.longest_trace.max(len);
        report.failures.extend(err);
    }
    Ok(report)
}

fn check_one(ctx: &Context, g: &CycInt) -> Result<usize> {
    let d = decompose_q5(ctx, g)?;
    if !ctx.is_positive(&d.u) {
        return Err(Error::Internal("u not positive".into()));
    }
    if ctx.cyc_scale(&d.u, &d.delta) != *g {
        return Err(Error::Internal("product mismatch".into()));
    }
    if !ctx.is_odd_vanishing_cycle(&d.delta)? {
        return Err(Error::Internal("δ not a member".into()));
    }
    if d.trace.windows(2).any(|w| w[1].norm >= w[0].norm) {
        return Err(Error::Internal("trace norms not decreasing".into()));
    }
    if d.trace.last().is_some_and(|s| s.norm <= BigInt::from(1)) {
        return Err(Error::Internal("unit passed to the procedure".into()));
    }
    let (u, delta) = half_line_representative(ctx, g, 10_000)?;
    if u != d.u || delta != d.delta {
        return Err(Error::Internal("half-line representative differs".into()));
    }
    Ok(d.trace.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(5).unwrap()
    }

    #[test]
    fn boundary_goes_lower() {
        let ctx = ctx();
        let g = &ctx.cyc_one() + &ctx.zeta();
        assert_eq!(
            locate_sector(&ctx, &g).unwrap(),
            SectorLocation {
                k: 0,
                branch: Branch::Lower
            }
        );
    }

    #[test]
    fn ray_elements_rejected() {
        let ctx = ctx();
        let g = &ctx.cyc_one() + &ctx.zeta_pow(4);
        assert!(locate_sector(&ctx, &g).is_err());
        let d = decompose_q5(&ctx, &g).unwrap();
        assert_eq!(d.u, ctx.zl_from_i64s(&[-1, 1]));
        assert_eq!(d.delta, ctx.zeta_pow(2));
        assert!(d.trace.is_empty());
    }

    #[test]
    fn examples() {
        let ctx = ctx();
        let d = decompose_q5(&ctx, &ctx.cyc_real(ctx.int(2))).unwrap();
        assert_eq!((d.u, d.delta), (ctx.int(2), ctx.cyc_one()));
        let lz = &ctx.cyc_real(ctx.lambda()) + &ctx.zeta();
        let d = decompose_q5(&ctx, &lz).unwrap();
        assert!(d.u.is_one());
        assert_eq!(d.delta, lz);
        assert!(decompose_q5(&ctx, &ctx.cyc_zero()).is_err());
    }

    #[test]
    fn location_matches_argument() {
        let ctx = ctx();
        let g = ctx.cyc_from_i64s(&[2], &[1]);
        let loc = locate_sector(&ctx, &g).unwrap();
        let (re, im) = ctx.cyc_to_f64(&g);
        let arg = im.atan2(re) + loc.k as f64 * std::f64::consts::PI / 5.0;
        let arg = arg.rem_euclid(2.0 * std::f64::consts::PI);
        let tenth = std::f64::consts::PI / 10.0;
        match loc.branch {
            Branch::Lower => assert!(arg > 0.0 && arg <= tenth + 1e-12),
            Branch::Upper => assert!(arg > 9.0 * tenth && arg < 10.0 * tenth),
        }
    }

    #[test]
    fn small_sweep() {
        let report = sweep(&ctx(), 1).unwrap();
        assert_eq!(report.checked, 80);
        assert!(report.failures.is_empty(), "{:?}", report.failures);
    }
}
