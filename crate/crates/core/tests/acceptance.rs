//! Acceptance criteria, one line per criterion.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hecke::cycles::enumerate::{age_count, duplicate_scan};
use hecke::cycles::holes::find_hole;
use hecke::cycles::shells::{rotation_closure_scan, shell_table};
use hecke::cycles::{enumerate_by_age, enumerate_in_disk};
use hecke::field::poly;
use hecke::group::Gen;
use hecke::verify::{perturb, random_transvection_word, random_word};
use hecke::{q5, Context, CycInt};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ctx(q: u32) -> Context {
    Context::new(q).expect("q ≥ 3")
}

fn c1_minimal_polynomials() -> Check {
    let table = [
        (3, "t^2-t+1", "t-1"),
        (4, "t^4+1", "t^2-2"),
        (5, "t^4-t^3+t^2-t+1", "t^2-t-1"),
        (6, "t^4-t^2+1", "t^2-3"),
        (7, "t^6-t^5+t^4-t^3+t^2-t+1", "t^3-t^2-2t+1"),
    ];
    for (q, phi, pmin) in table {
        let c = ctx(q);
        let got_phi = poly::to_string(c.phi2q(), "t");
        let got_min = poly::to_string(c.pmin(), "t");
        ensure(got_phi == phi, || format!("q={q}: cyclotomic {got_phi}"))?;
        ensure(got_min == pmin, || format!("q={q}: minimal {got_min}"))?;
    }
    Ok("q = 3..7 match the table".into())
}

fn c2_second_shell() -> Check {
    let exact: [(u32, &[i64]); 4] = [(3, &[3]), (4, &[5, 0]), (5, &[3, 2]), (6, &[7, 0])];
    for (q, coeffs) in exact {
        let c = ctx(q);
        let t = shell_table(&c, 1, 1).map_err(|e| e.to_string())?;
        let want = c.zl_from_i64s(coeffs);
        ensure(*t.rho2(1) == want, || format!("q={q}: ρ² = {}", t.rho2(1)))?;
    }
    let c = ctx(7);
    let t = shell_table(&c, 1, 1).map_err(|e| e.to_string())?;
    let r2 = t.rho2(1);
    // 2.7375² = 47961/6400
    let above = c.cmp_rational(r2, &BigInt::from(47961), &BigInt::from(6400)) == Ordering::Greater;
    let below = c.cmp_rational(r2, &BigInt::from(9), &BigInt::from(1)) == Ordering::Less;
    ensure(above && below, || format!("q=7: ρ² = {r2} ≈ {}", c.to_f64(r2)))?;
    Ok(format!("3, 5, 2λ+3, 7; q=7 ρ = {:.5}", c.to_f64(r2).sqrt()))
}

/// Brute-force gcd scan of the lattice(s) inside |x|² ≤ r2, with integer norms.
fn gcd_oracle(c: &Context, r2: i64) -> BTreeSet<CycInt> {
    let q = c.q();
    let k: i64 = match q {
        4 => 2,
        6 => 3,
        _ => 1,
    };
    let lam = c.lambda();
    let mut out = BTreeSet::new();
    for s in -60i64..=60 {
        for t in -60i64..=60 {
            if q == 3 {
                if s * s - s * t + t * t <= r2 && s.gcd(&t) == 1 {
                    out.insert(c.cyc(c.int(s), c.int(t)));
                }
                continue;
            }
            // s + tλη
            if s * s - k * s * t + k * t * t <= r2 && s.gcd(&(k * t)) == 1 {
                out.insert(c.cyc(c.int(s), lam.scale(&BigInt::from(t))));
            }
            // sλ + tη
            if k * s * s - k * s * t + t * t <= r2 && (k * s).gcd(&t) == 1 {
                out.insert(c.cyc(lam.scale(&BigInt::from(s)), c.int(t)));
            }
        }
    }
    out
}

fn c3_closed_forms() -> Check {
    let mut sizes = Vec::new();
    for q in [3, 4, 6] {
        let c = ctx(q);
        let ours: BTreeSet<CycInt> = enumerate_in_disk(&c, &BigInt::from(400), &BigInt::from(1))
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|r| r.point)
            .collect();
        let oracle = gcd_oracle(&c, 400);
        ensure(ours == oracle, || {
            format!(
                "q={q}: {} enumerated vs {} from gcd scan ({} only enumerated, {} only scanned)",
                ours.len(),
                oracle.len(),
                ours.difference(&oracle).count(),
                oracle.difference(&ours).count()
            )
        })?;
        sizes.push(format!("q={q}: {}", ours.len()));
    }
    Ok(sizes.join(", "))
}

fn c4_bijectivity() -> Check {
    let mut total = 0u64;
    for q in 3..=10 {
        let c = ctx(q);
        let r = duplicate_scan(&c, 6, 1).map_err(|e| e.to_string())?;
        ensure(r.duplicates == 0, || format!("q={q}: {} duplicates", r.duplicates))?;
        let expected: BigInt = (0..=6).map(|s| age_count(q, s)).sum();
        ensure(BigInt::from(r.points) == expected, || {
            format!("q={q}: {} points, tuple count {expected}", r.points)
        })?;
        total += r.points;
    }
    Ok(format!("{total} points, no duplicates"))
}

fn c5_shells() -> Check {
    for q in 3..=10 {
        let c = ctx(q);
        let age = if q <= 7 { 5 } else { 4 };
        let (n, missing) = rotation_closure_scan(&c, age, 1).map_err(|e| e.to_string())?;
        ensure(missing == 0, || format!("q={q}: {missing} of {n} rotations missing"))?;

        let t = shell_table(&c, age, 1).map_err(|e| e.to_string())?;
        ensure(t.growth_checks(&c).iter().all(|&b| b), || format!("q={q}: shell growth fails"))?;

        let mut roots = BTreeSet::new();
        let mut z = c.cyc_one();
        for _ in 0..2 * q {
            roots.insert(z.clone());
            z = c.mul_zeta(&z);
        }
        let age0: BTreeSet<CycInt> = enumerate_by_age(&c, 0).into_iter().map(|r| r.point).collect();
        ensure(age0 == roots && roots.len() == 2 * q as usize, || format!("q={q}: age 0 is not UR"))?;

        let l = c.cyc_real(c.lambda());
        let lz = &l + &c.zeta();
        let one_lz = &c.cyc_one() + &c.cyc_mul(&l, &c.zeta());
        let want: BTreeSet<CycInt> = roots
            .iter()
            .flat_map(|u| [c.cyc_mul(u, &lz), c.cyc_mul(u, &one_lz)])
            .collect();
        let got: BTreeSet<CycInt> = t.shells[1].minimizers.iter().cloned().collect();
        ensure(got == want, || format!("q={q}: age-1 minimizers differ"))?;
        let count = if q == 3 { 2 * q } else { 4 * q } as usize;
        ensure(got.len() == count, || format!("q={q}: {} age-1 minimizers", got.len()))?;
    }
    Ok("rotation-closed, growth holds, age 0 = UR, age-1 minima = UR·{λ+ζ, 1+λζ} (2q points for q=3 where they coincide)".into())
}

fn c6_decomposition() -> Check {
    let c = ctx(5);
    let report = q5::sweep(&c, 4).map_err(|e| e.to_string())?;
    ensure(report.failures.is_empty(), || format!("{:?}", &report.failures[..report.failures.len().min(3)]))?;
    ensure(report.checked == 9usize.pow(4) - 1, || format!("{} elements", report.checked))?;
    // sector location is unique for random elements off the unit-root rays
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut located = 0;
    while located < 10_000 {
        let g = c.cyc_from_i64s(
            &[rng.gen_range(-50..=50), rng.gen_range(-50..=50)],
            &[rng.gen_range(-50..=50), rng.gen_range(-50..=50)],
        );
        if g.is_zero() || q5::unit_ray(&c, &g).is_some() {
            continue;
        }
        q5::locate_sector(&c, &g).map_err(|e| format!("{g}: {e}"))?;
        located += 1;
    }
    Ok(format!(
        "{} elements decomposed, longest trace {}; 10000 sectors located",
        report.checked, report.longest_trace
    ))
}

fn c7_relations() -> Check {
    for q in 3..=12u32 {
        let c = ctx(q);
        let report = c.relations_report();
        let bad: Vec<&str> = report.checks.iter().filter(|r| !r.holds).map(|r| r.name.as_str()).collect();
        ensure(bad.is_empty(), || format!("q={q}: {bad:?}"))?;

        let g = c.generators();
        let neg = c.identity().neg();
        ensure(c.mat_mul(&g.v, &g.v) == neg, || format!("q={q}: V²"))?;
        ensure(c.mat_pow(&g.q, q as i64) == neg, || format!("q={q}: Q^q"))?;
        ensure(c.mat_mul(&g.a1, &g.v) == g.q && c.mat_mul(&g.v, &g.a2) == g.q, || format!("q={q}: A1V = Q = VA2"))?;
        let m = c.mat_mul(&g.a1, &g.a2);
        let order = match q % 4 {
            0 => q,
            2 => q / 2,
            _ => 2 * q,
        };
        let first_identity = (1..=2 * q).find(|&k| c.mat_pow(&m, k as i64) == c.identity());
        ensure(first_identity == Some(order), || format!("q={q}: order of A1A2 is {first_identity:?}"))?;
    }
    Ok("q = 3..12".into())
}

fn c8_lang_lang() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for q in [3, 5, 7, 8] {
        let c = ctx(q);
        for i in 0..1000 {
            let len = rng.gen_range(1..=16);
            let w = random_word(&mut rng, len);
            let m = c.eval_word(&w);
            ensure(c.in_hecke_group(&m).map_err(|e| e.to_string())?, || format!("q={q}: {w} rejected"))?;
            let p = perturb(&c, &m, i);
            ensure(!c.det(&p).is_one(), || "perturbation kept det 1".into())?;
            ensure(!c.in_hecke_group(&p).map_err(|e| e.to_string())?, || format!("q={q}: perturbed {w} accepted"))?;
            let f = c.factor(&m).map_err(|e| e.to_string())?;
            ensure(c.eval_word(&f) == m, || format!("q={q}: factor of {w} does not evaluate back"))?;
            ensure(f.tokens.iter().all(|t| matches!(t.gen, Gen::A1 | Gen::Q | Gen::Neg)), || "factor alphabet".into())?;
        }
    }
    Ok("4000 words accepted, 4000 perturbations rejected, factor round trips".into())
}

fn c9_orbits() -> Check {
    // q = 6: congruence classes over both lattices, coordinates up to 10
    let c = ctx(6);
    let label = |x: &CycInt| c.orbit_label(x).map_err(|e| e.to_string());
    let rep = |k: i64| label(&c.zeta_pow(k));
    let (l_one, l_minus, l_z5, l_mz5) = (rep(0)?, rep(6)?, rep(5)?, rep(11)?);
    let distinct: BTreeSet<u32> = [l_one, l_minus, l_z5, l_mz5].into_iter().collect();
    ensure(distinct.len() == 4, || "q=6 representatives share labels".into())?;
    let lam = c.lambda();
    let mut checked = 0;
    for s in -10i64..=10 {
        for t in -10i64..=10 {
            if s.gcd(&t) != 1 {
                continue;
            }
            if s.rem_euclid(3) != 0 {
                let x = c.cyc(c.int(s), lam.scale(&BigInt::from(t)));
                let want = if s.rem_euclid(3) == 1 { l_one } else { l_minus };
                ensure(label(&x)? == want, || format!("q=6: {x}"))?;
                checked += 1;
            }
            if t.rem_euclid(3) != 0 {
                let x = c.cyc(lam.scale(&BigInt::from(s)), c.int(t));
                let want = if t.rem_euclid(3) == 1 { l_z5 } else { l_mz5 };
                ensure(label(&x)? == want, || format!("q=6: {x}"))?;
                checked += 1;
            }
        }
    }
    // q = 4: the two lattice components
    let c4 = ctx(4);
    let (a, b) = (c4.orbit_label(&c4.cyc_one()).unwrap(), c4.orbit_label(&c4.zeta_pow(3)).unwrap());
    ensure(a != b, || "q=4 representatives share labels".into())?;
    let lam4 = c4.lambda();
    for s in -10i64..=10 {
        for t in -10i64..=10 {
            if s.gcd(&(2 * t)) == 1 {
                let x = c4.cyc(c4.int(s), lam4.scale(&BigInt::from(t)));
                ensure(c4.orbit_label(&x).unwrap() == a, || format!("q=4: {x}"))?;
            }
            if (2 * s).gcd(&t) == 1 {
                let x = c4.cyc(lam4.scale(&BigInt::from(s)), c4.int(t));
                ensure(c4.orbit_label(&x).unwrap() == b, || format!("q=4: {x}"))?;
            }
        }
    }
    // odd q: one orbit; all q: constant along transvection words
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for q in 3..=10 {
        let c = ctx(q);
        let recs = enumerate_by_age(&c, 2);
        for r in &recs {
            if q % 2 == 1 {
                ensure(r.orbit == 0, || format!("q={q}: label {}", r.orbit))?;
            }
        }
        for _ in 0..200 {
            let r = &recs[rng.gen_range(0..recs.len())];
            let len = rng.gen_range(1..=10);
            let g = c.eval_word(&random_transvection_word(&mut rng, len));
            let y = c.act(&g, &r.point);
            ensure(c.orbit_label(&y).map_err(|e| e.to_string())? == r.orbit, || {
                format!("q={q}: label changes along the orbit of {}", r.point)
            })?;
        }
    }
    Ok(format!("{checked} q=6 points by congruence, q=4 lattices, 1600 translates"))
}

fn c10_entry_signs() -> Check {
    let c = ctx(5);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..1000 {
        let len = rng.gen_range(1..=20);
        let w = random_word(&mut rng, len);
        let m = c.eval_word(&w);
        for e in [&m.a, &m.b, &m.c, &m.d] {
            let k = e.coeffs();
            ensure(&k[0] * &k[1] >= BigInt::from(0), || format!("{w}: entry {e}"))?;
        }
    }
    Ok("1000 words, 4000 entries".into())
}

fn c11_holes() -> Check {
    let c = ctx(3);
    let cert = find_hole(&c, &[vec![2, 3], vec![5, 7]]).map_err(|e| e.to_string())?;
    ensure(cert.a0 == BigInt::from(173) && cert.c0 == BigInt::from(19), || {
        format!("base ({}, {})", cert.a0, cert.c0)
    })?;
    ensure(cert.verified, || "certificate not verified".into())?;
    let expect = [(174, 20, 2), (174, 21, 3), (175, 20, 5), (175, 21, 7)];
    for (a, t, g) in expect {
        ensure(a.gcd(&t) == g, || format!("gcd({a}, {t})"))?;
        let x = c.cyc(c.int(a), c.int(t));
        ensure(!c.is_odd_vanishing_cycle(&x).map_err(|e| e.to_string())?, || format!("{x} accepted"))?;
    }
    Ok("base (173, 19), interior gcds 2, 3, 5, 7".into())
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn c12_figures() -> Check {
    let mut counts = Vec::new();
    for q in 3..=9 {
        let qs = q.to_string();
        let base = ["enumerate", "--q", &qs, "--rect", "12,8"];
        let with = |extra: &[&str]| -> Result<Vec<u8>, String> {
            let mut a: Vec<&str> = base.to_vec();
            a.extend_from_slice(extra);
            run_cli(&a)
        };
        let svg = with(&["--format", "svg"])?;
        let svg_again = with(&["--format", "svg", "--workers", "3"])?;
        let csv = with(&["--format", "csv"])?;
        ensure(svg == svg_again, || format!("q={q}: SVG differs between runs"))?;
        let svg = String::from_utf8(svg).map_err(|e| e.to_string())?;
        let points = hecke::output::svg_point_count(&svg);
        let rows = csv::Reader::from_reader(csv.as_slice()).records().count();
        ensure(points == rows && rows > 0, || format!("q={q}: {points} circles, {rows} rows"))?;
        counts.push(format!("{q}:{rows}"));
    }
    Ok(format!("12×8 rectangle point counts {}", counts.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("minimal polynomials", c1_minimal_polynomials),
        ("second-shell minima", c2_second_shell),
        ("closed forms vs enumeration (|x|² ≤ 400)", c3_closed_forms),
        ("no duplicates to age 6", c4_bijectivity),
        ("shell rotation, growth, minima", c5_shells),
        ("q = 5 decomposition sweep", c6_decomposition),
        ("matrix relations", c7_relations),
        ("membership of random words", c8_lang_lang),
        ("orbit labels", c9_orbits),
        ("q = 5 entry signs", c10_entry_signs),
        ("hole certificate", c11_holes),
        ("figure outputs", c12_figures),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
