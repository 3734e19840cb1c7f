//! Enumeration of Δ⁽¹⁾_q through the tuples (r, ε, l) with l₁ = 0.
//!
//! A depth-first walk builds the "core" a₁^{l_{2r−1}} μ^{l_{2r−2}} ⋯ a₁^{l₃} μ^{l₂}(1)
//! once per prefix and emits its 2q images ±ζ^k·core.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{ComplexInterval, Context, CycInt, ZLambda};
use crate::group::CanonicalTuple;

/// Which part of Δ⁽¹⁾_q to walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    /// All points of age at most this.
    Age(u32),
    /// All points with |x|² ≤ num/den.
    Disk { num: BigInt, den: BigInt },
}

impl Bound {
    pub fn disk(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Bound::Disk {
            num: num.into(),
            den: den.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleRecord {
    pub point: CycInt,
    pub age: i64,
    pub generation: usize,
    pub orbit: u32,
    pub tuple: CanonicalTuple,
}

impl CycleRecord {
    pub fn embedding(&self, ctx: &Context, precision: u32) -> ComplexInterval {
        ctx.embed(&self.point, precision)
    }

    fn order_key(&self) -> (i64, usize, &[i64], u8) {
        (self.age, self.generation, &self.tuple.l, self.tuple.eps)
    }
}

/// Canonical order: age, then generation, then the tuple entries, then ε.
pub fn canonical_order(x: &CycleRecord, y: &CycleRecord) -> Ordering {
    x.order_key().cmp(&y.order_key())
}

/// A visited core: the prefix (l₁, …, l_{2r−1}) and its age.
pub struct Core<'a> {
    pub point: &'a CycInt,
    pub prefix: &'a [i64],
    pub age: i64,
    /// |point|², available for disk walks.
    pub norm2: Option<&'a ZLambda>,
}

impl Core<'_> {
    pub fn generation(&self) -> usize {
        self.prefix.len().div_ceil(2)
    }

    /// The 2q points ±ζ^k·core with their tuples, in canonical order.
    pub fn images(&self, ctx: &Context) -> Vec<(CycInt, CanonicalTuple)> {
        let q = ctx.q() as i64;
        let mut rotated = Vec::with_capacity(q as usize);
        let mut z = self.point.clone();
        for _ in 0..q {
            let next = ctx.mul_zeta(&z);
            rotated.push(z);
            z = next;
        }
        let mut out = Vec::with_capacity(2 * q as usize);
        for (k, z) in rotated.into_iter().enumerate() {
            let mut l = self.prefix.to_vec();
            l.push(k as i64);
            out.push((-&z, CanonicalTuple::new(1, l.clone())));
            out.push((z, CanonicalTuple::new(0, l)));
        }
        out.sort_by(|a, b| (&a.1.l, a.1.eps).cmp(&(&b.1.l, b.1.eps)));
        out
    }
}

struct Walker<'a, F> {
    ctx: &'a Context,
    bound: &'a Bound,
    age_cap: i64,
    visit: F,
}

impl<F: FnMut(&Core)> Walker<'_, F> {
    fn inside(&self, n2: &ZLambda) -> bool {
        match self.bound {
            Bound::Age(_) => true,
            Bound::Disk { num, den } => self.ctx.cmp_rational(n2, num, den) != Ordering::Greater,
        }
    }

    fn norm2(&self, x: &CycInt) -> Option<ZLambda> {
        match self.bound {
            Bound::Age(_) => None,
            Bound::Disk { .. } => Some(self.ctx.cyc_norm_to_lambda(x)),
        }
    }

    fn emit(&mut self, core: &CycInt, prefix: &[i64], age: i64, n2: Option<&ZLambda>) {
        (self.visit)(&Core {
            point: core,
            prefix,
            age,
            norm2: n2,
        });
    }

    /// Visits the subtree below `core` whose next rotation is μ^m.
    fn branch(&mut self, core: &CycInt, prefix: &mut Vec<i64>, age: i64, m: i64) {
        let mut z = core.clone();
        for _ in 0..m {
            z = self.ctx.mul_zeta(&z);
        }
        let mut run = 0;
        while age + run < self.age_cap {
            z = self.ctx.act_a1(&z);
            run += 1;
            // |a₁z| > |z| on the sectors visited here, so leaving the disk is final
            let n2 = self.norm2(&z);
            if let Some(n) = &n2 {
                if !self.inside(n) {
                    break;
                }
            }
            prefix.push(m);
            prefix.push(run);
            self.emit(&z, prefix, age + run, n2.as_ref());
            for m2 in 1..=self.ctx.q() as i64 - 2 {
                self.branch(&z, prefix, age + run, m2);
            }
            prefix.pop();
            prefix.pop();
        }
    }
}

/// Largest age that can reach |x|² ≤ R², from ρ⁽ˢ⁾ ≥ 1 + s(√(2λ²+1) − 1), rounded up generously.
pub fn disk_age_cap(ctx: &Context, num: &BigInt, den: &BigInt) -> i64 {
    let r2 = BigRational::new(num.clone(), den.clone());
    let r = num_traits::ToPrimitive::to_f64(&r2).unwrap_or(f64::MAX).max(0.0).sqrt();
    let l = ctx.lambda_f64();
    let step = (2.0 * l * l + 1.0).sqrt() - 1.0;
    (((r - 1.0) / step).max(0.0).ceil() as i64).saturating_add(2)
}

fn age_cap(ctx: &Context, bound: &Bound) -> i64 {
    match bound {
        Bound::Age(s) => *s as i64,
        Bound::Disk { num, den } => disk_age_cap(ctx, num, den),
    }
}

/// Walks one top-level branch: `None` is the generation-1 core 1, `Some(m)` the subtree with l₂ = m.
pub fn walk_branch(ctx: &Context, bound: &Bound, branch: Option<i64>, visit: impl FnMut(&Core)) {
    let mut w = Walker {
        ctx,
        bound,
        age_cap: age_cap(ctx, bound),
        visit,
    };
    let one = ctx.cyc_one();
    let mut prefix = vec![0];
    match branch {
        None => {
            let n2 = w.norm2(&one);
            if n2.as_ref().is_none_or(|n| w.inside(n)) {
                w.emit(&one, &prefix, 0, n2.as_ref());
            }
        }
        Some(m) => {
            if let Bound::Disk { num, den } = bound {
                if ctx.cmp_rational(&ctx.one(), num, den) == Ordering::Greater {
                    return;
                }
            }
            w.branch(&one, &mut prefix, 0, m);
        }
    }
}

/// The top-level branches in order: generation 1 first, then l₂ = 1, …, q − 2.
pub fn branches(ctx: &Context) -> Vec<Option<i64>> {
    std::iter::once(None)
        .chain((1..=ctx.q() as i64 - 2).map(Some))
        .collect()
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))
}

/// Maps every branch in parallel and returns the per-branch results in branch order.
pub fn map_branches<T: Send>(
    ctx: &Context,
    bound: &Bound,
    workers: usize,
    per_branch: impl Fn(Option<i64>) -> T + Sync + Send,
) -> Result<Vec<T>> {
    let bs = branches(ctx);
    if workers <= 1 {
        return Ok(bs.into_iter().map(&per_branch).collect());
    }
    let _ = bound;
    Ok(pool(workers)?.install(|| bs.into_par_iter().map(&per_branch).collect()))
}

fn record_from(ctx: &Context, point: CycInt, tuple: CanonicalTuple, age: i64) -> CycleRecord {
    let orbit = ctx.orbit_from_weight(&BigInt::from(tuple.mu_weight(ctx.q())));
    CycleRecord {
        point,
        age,
        generation: tuple.r,
        orbit,
        tuple,
    }
}

/// All records within the bound, in canonical order; identical for every worker count.
pub fn enumerate(ctx: &Context, bound: &Bound, workers: usize) -> Result<Vec<CycleRecord>> {
    if let Bound::Disk { num, den } = bound {
        if !den.is_positive() || num.is_negative() {
            return Err(Error::InvalidInput("radius² must be a nonnegative rational".into()));
        }
    }
    let parts = map_branches(ctx, bound, workers, |b| {
        let mut out = Vec::new();
        walk_branch(ctx, bound, b, |core| {
            for (p, t) in core.images(ctx) {
                out.push(record_from(ctx, p, t, core.age));
            }
        });
        out
    })?;
    let mut all: Vec<CycleRecord> = parts.into_iter().flatten().collect();
    all.sort_by(canonical_order);
    Ok(all)
}

pub fn enumerate_by_age(ctx: &Context, age_max: u32) -> Vec<CycleRecord> {
    enumerate(ctx, &Bound::Age(age_max), 1).expect("single-threaded walk does not fail")
}

pub fn enumerate_in_disk(ctx: &Context, num: &BigInt, den: &BigInt) -> Result<Vec<CycleRecord>> {
    enumerate(ctx, &Bound::disk(num.clone(), den.clone()), 1)
}

/// Keeps the records with |Re x| ≤ w/2 and |Im x| ≤ h/2, decided exactly.
pub fn in_rect(ctx: &Context, recs: Vec<CycleRecord>, w: &BigRational, h: &BigRational) -> Vec<CycleRecord> {
    recs.into_iter()
        .filter(|r| within_rect(ctx, &r.point, w, h))
        .collect()
}

pub fn within_rect(ctx: &Context, x: &CycInt, w: &BigRational, h: &BigRational) -> bool {
    // 2·Re = 2a − λc and 4·Im² = c²(4 − λ²)
    let two_re = &x.a.scale(&BigInt::from(2)) - &ctx.mul_lambda(&x.c);
    let re_ok = ctx.cmp_rational(&ctx.abs(&two_re), w.numer(), w.denom()) != Ordering::Greater;
    let c2 = ctx.mul(&x.c, &x.c);
    let four_im2 = &c2.scale(&BigInt::from(4)) - &ctx.mul_lambda(&ctx.mul_lambda(&c2));
    let h2 = h * h;
    re_ok && ctx.cmp_rational(&four_im2, h2.numer(), h2.denom()) != Ordering::Greater
}

/// Squared radius of the disk circumscribing the rectangle w × h.
pub fn rect_radius2(w: &BigRational, h: &BigRational) -> BigRational {
    (w * w + h * h) / BigRational::from_integer(BigInt::from(4))
}

/// 64-bit fingerprint of a point; equal points have equal fingerprints.
pub fn fingerprint(x: &CycInt) -> u64 {
    let mut h = DefaultHasher::new();
    x.hash(&mut h);
    h.finish()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DuplicateReport {
    pub points: u64,
    /// Exact duplicates found after rechecking fingerprint collisions.
    pub duplicates: u64,
    pub fingerprint_collisions: u64,
}

/// Streams all points of age ≤ `age_max` and counts exact duplicates.
pub fn duplicate_scan(ctx: &Context, age_max: u32, workers: usize) -> Result<DuplicateReport> {
    let bound = Bound::Age(age_max);
    let parts = map_branches(ctx, &bound, workers, |b| {
        let mut fps = Vec::new();
        walk_branch(ctx, &bound, b, |core| {
            for (p, _) in core.images(ctx) {
                fps.push(fingerprint(&p));
            }
        });
        fps
    })?;
    let mut fps: Vec<u64> = parts.into_iter().flatten().collect();
    let points = fps.len() as u64;
    fps.sort_unstable();
    let mut clashing: Vec<u64> = fps.windows(2).filter(|w| w[0] == w[1]).map(|w| w[0]).collect();
    clashing.dedup();
    drop(fps);
    if clashing.is_empty() {
        return Ok(DuplicateReport {
            points,
            ..Default::default()
        });
    }
    // second pass: compare the actual points behind repeated fingerprints
    let mut hits: Vec<(u64, CycInt)> = Vec::new();
    for b in branches(ctx) {
        walk_branch(ctx, &bound, b, |core| {
            for (p, _) in core.images(ctx) {
                let f = fingerprint(&p);
                if clashing.binary_search(&f).is_ok() {
                    hits.push((f, p));
                }
            }
        });
    }
    hits.sort();
    let duplicates = hits.windows(2).filter(|w| w[0] == w[1]).count() as u64;
    let collisions = hits.windows(2).filter(|w| w[0].0 == w[1].0 && w[0].1 != w[1].1).count() as u64;
    Ok(DuplicateReport {
        points,
        duplicates,
        fingerprint_collisions: collisions,
    })
}

/// Number of points of age exactly s: 2q for s = 0, else 2q(q−2)(q−1)^{s−1}.
pub fn age_count(q: u32, s: u32) -> BigInt {
    let q = BigInt::from(q);
    if s == 0 {
        return &q * 2;
    }
    let base: BigInt = &q - 1;
    &q * 2 * (&q - 2) * num_traits::pow(base, s as usize - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn age_zero_is_unit_roots() {
        for q in 3..=8 {
            let ctx = Context::new(q).unwrap();
            let recs = enumerate_by_age(&ctx, 0);
            assert_eq!(recs.len(), 2 * q as usize);
            let mut pts: Vec<CycInt> = recs.iter().map(|r| r.point.clone()).collect();
            pts.sort();
            let mut roots = ctx.unit_roots().to_vec();
            roots.sort();
            assert_eq!(pts, roots);
        }
    }

    #[test]
    fn counts_per_age() {
        for q in [3, 4, 5, 7] {
            let ctx = Context::new(q).unwrap();
            let recs = enumerate_by_age(&ctx, 3);
            for s in 0..=3 {
                let n = recs.iter().filter(|r| r.age == s as i64).count();
                assert_eq!(BigInt::from(n), age_count(q, s), "q={q} s={s}");
            }
        }
    }

    #[test]
    fn tuples_reproduce_points() {
        let ctx = Context::new(7).unwrap();
        for r in enumerate_by_age(&ctx, 2) {
            r.tuple.validate(7).unwrap();
            assert_eq!(ctx.tuple_point(&r.tuple).unwrap(), r.point);
            assert_eq!(r.tuple.age(), r.age);
            let m = ctx.eval_tuple(&r.tuple).unwrap();
            assert_eq!(m.first_column(), r.point);
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let ctx = Context::new(6).unwrap();
        let b = Bound::disk(60, 1);
        assert_eq!(enumerate(&ctx, &b, 1).unwrap(), enumerate(&ctx, &b, 3).unwrap());
    }

    #[test]
    fn disk_matches_filtered_ages() {
        for q in [5, 7, 8] {
            let ctx = Context::new(q).unwrap();
            let (num, den) = (BigInt::from(20), BigInt::from(1));
            let disk = enumerate_in_disk(&ctx, &num, &den).unwrap();
            let cap = disk_age_cap(&ctx, &num, &den) as u32;
            let filtered: Vec<CycleRecord> = enumerate_by_age(&ctx, cap)
                .into_iter()
                .filter(|r| {
                    ctx.cmp_rational(&ctx.cyc_norm_to_lambda(&r.point), &num, &den)
                        != Ordering::Greater
                })
                .collect();
            assert_eq!(disk, filtered, "q={q}");
        }
    }
}
