//! Minimal moduli per age shell.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::Result;
use crate::field::{Context, CycInt, ZLambda};

use super::enumerate::{map_branches, walk_branch, Bound};

#[derive(Clone, Debug)]
pub struct Shell {
    pub age: u32,
    /// ρ⁽ˢ⁾², exact.
    pub min_norm2: ZLambda,
    pub count: u64,
    /// All points of this age attaining the minimum.
    pub minimizers: Vec<CycInt>,
}

#[derive(Clone, Debug)]
pub struct ShellTable {
    pub q: u32,
    pub shells: Vec<Shell>,
}

#[derive(Default)]
struct Acc {
    min: Option<ZLambda>,
    count: u64,
    cores: Vec<CycInt>,
}

impl Acc {
    fn offer(&mut self, ctx: &Context, n2: ZLambda, core: &CycInt, images: u64) {
        self.count += images;
        match self.min.as_ref().map(|m| ctx.cmp(&n2, m)) {
            Some(Ordering::Greater) => {}
            Some(Ordering::Equal) => self.cores.push(core.clone()),
            _ => {
                self.min = Some(n2);
                self.cores = vec![core.clone()];
            }
        }
    }

    fn merge(&mut self, ctx: &Context, other: Acc) {
        self.count += other.count;
        let Some(m) = other.min else { return };
        match self.min.as_ref().map(|x| ctx.cmp(&m, x)) {
            Some(Ordering::Greater) => {}
            Some(Ordering::Equal) => self.cores.extend(other.cores),
            _ => {
                self.min = Some(m);
                self.cores = other.cores;
            }
        }
    }
}

impl ShellTable {
    pub fn rho2(&self, s: usize) -> &ZLambda {
        &self.shells[s].min_norm2
    }

    /// For each s, whether ρ⁽ˢ⁺¹⁾ ≥ ρ⁽ˢ⁾ + (√(2λ²+1) − 1), decided exactly.
    pub fn growth_checks(&self, ctx: &Context) -> Vec<bool> {
        let c = &ctx.mul(&ctx.lambda(), &ctx.lambda()).scale(&2.into()) + &ctx.one();
        self.shells
            .windows(2)
            .map(|w| ctx.sqrt_sum_sign(&w[1].min_norm2, &w[0].min_norm2, &c) != Ordering::Less)
            .collect()
    }

    /// Whether ρ⁽ˢ⁾ is strictly increasing.
    pub fn strictly_increasing(&self, ctx: &Context) -> bool {
        self.shells
            .windows(2)
            .all(|w| ctx.cmp(&w[1].min_norm2, &w[0].min_norm2) == Ordering::Greater)
    }
}

pub fn shell_table(ctx: &Context, s_max: u32, workers: usize) -> Result<ShellTable> {
    let bound = Bound::Age(s_max);
    let images = 2 * ctx.q() as u64;
    let parts = map_branches(ctx, &bound, workers, |b| {
        let mut accs: Vec<Acc> = (0..=s_max).map(|_| Acc::default()).collect();
        walk_branch(ctx, &bound, b, |core| {
            let n2 = ctx.cyc_norm_to_lambda(core.point);
            accs[core.age as usize].offer(ctx, n2, core.point, images);
        });
        accs
    })?;
    let mut total: Vec<Acc> = (0..=s_max).map(|_| Acc::default()).collect();
    for part in parts {
        for (t, a) in total.iter_mut().zip(part) {
            t.merge(ctx, a);
        }
    }
    let shells = total
        .into_iter()
        .enumerate()
        .map(|(s, acc)| {
            let mut minimizers = Vec::new();
            for core in &acc.cores {
                let mut z = core.clone();
                for _ in 0..ctx.q() {
                    minimizers.push(z.clone());
                    minimizers.push(-&z);
                    z = ctx.mul_zeta(&z);
                }
            }
            minimizers.sort();
            minimizers.dedup();
            Shell {
                age: s as u32,
                min_norm2: acc.min.expect("every shell is nonempty"),
                count: acc.count,
                minimizers,
            }
        })
        .collect();
    Ok(ShellTable {
        q: ctx.q(),
        shells,
    })
}

fn shell_fingerprint(age: i64, generation: usize, x: &CycInt) -> u64 {
    let mut h = DefaultHasher::new();
    (age, generation, x).hash(&mut h);
    h.finish()
}

/// Checks that each set Δ^{(1,s,r)} with s ≤ `age_max` is closed under multiplication by ζ.
///
/// Returns the number of points checked and the number of images that were missing.
pub fn rotation_closure_scan(ctx: &Context, age_max: u32, workers: usize) -> Result<(u64, u64)> {
    let bound = Bound::Age(age_max);
    let parts = map_branches(ctx, &bound, workers, |b| {
        let mut own = Vec::new();
        let mut rotated = Vec::new();
        walk_branch(ctx, &bound, b, |core| {
            let r = core.generation();
            for (p, _) in core.images(ctx) {
                own.push(shell_fingerprint(core.age, r, &p));
                rotated.push(shell_fingerprint(core.age, r, &ctx.mul_zeta(&p)));
            }
        });
        (own, rotated)
    })?;
    let mut own = Vec::new();
    let mut rotated = Vec::new();
    for (o, r) in parts {
        own.extend(o);
        rotated.extend(r);
    }
    own.sort_unstable();
    let missing = rotated
        .iter()
        .filter(|f| own.binary_search(f).is_err())
        .count() as u64;
    Ok((own.len() as u64, missing))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_shell_minima() {
        let expect = [(3, vec![3]), (4, vec![5, 0]), (5, vec![3, 2]), (6, vec![7, 0])];
        for (q, coeffs) in expect {
            let ctx = Context::new(q).unwrap();
            let t = shell_table(&ctx, 2, 1).unwrap();
            assert!(t.rho2(0).is_one());
            assert_eq!(*t.rho2(1), ctx.zl_from_i64s(&coeffs), "q={q}");
            // for q = 3, λ + ζ = 1 + λζ and the two orbits coincide
            let orbits = if q == 3 { 1 } else { 2 };
            assert_eq!(t.shells[1].minimizers.len(), orbits * 2 * q as usize);
            assert!(t.growth_checks(&ctx).iter().all(|&b| b));
        }
    }

    #[test]
    fn closure_small() {
        let ctx = Context::new(5).unwrap();
        let (n, missing) = rotation_closure_scan(&ctx, 3, 2).unwrap();
        assert_eq!(n, 10 + 30 + 120 + 480);
        assert_eq!(missing, 0);
    }
}
