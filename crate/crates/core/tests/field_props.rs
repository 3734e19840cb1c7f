use std::cmp::Ordering;

use proptest::prelude::*;

use hecke::{Context, CycInt, ZLambda};

fn zl(ctx: &Context, v: &[i64]) -> ZLambda {
    ctx.zl_from_i64s(&v[..ctx.degree()])
}

fn cyc(ctx: &Context, a: &[i64], c: &[i64]) -> CycInt {
    ctx.cyc(zl(ctx, a), zl(ctx, c))
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-100i64..=100, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(q in 3u32..=14, a in coeffs(), b in coeffs(), c in coeffs(), d in coeffs(), e in coeffs(), f in coeffs()) {
        let ctx = Context::new(q).unwrap();
        let (x, y, z) = (cyc(&ctx, &a, &b), cyc(&ctx, &c, &d), cyc(&ctx, &e, &f));
        let m = |u: &CycInt, v: &CycInt| ctx.cyc_mul(u, v);
        prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
        prop_assert_eq!(m(&x, &(&y + &z)), &m(&x, &y) + &m(&x, &z));
        prop_assert_eq!(m(&x, &y), m(&y, &x));
        let (u, v) = (zl(&ctx, &a), zl(&ctx, &c));
        prop_assert_eq!(ctx.norm(&ctx.mul(&u, &v)), ctx.norm(&u) * ctx.norm(&v));
    }

    #[test]
    fn conjugation_and_norms(q in 3u32..=14, a in coeffs(), b in coeffs(), c in coeffs(), d in coeffs()) {
        let ctx = Context::new(q).unwrap();
        let (x, y) = (cyc(&ctx, &a, &b), cyc(&ctx, &c, &d));
        let xy = ctx.cyc_mul(&x, &y);
        prop_assert_eq!(ctx.cyc_conj(&ctx.cyc_conj(&x)), x.clone());
        prop_assert_eq!(ctx.cyc_conj(&xy), ctx.cyc_mul(&ctx.cyc_conj(&x), &ctx.cyc_conj(&y)));
        let nx = ctx.cyc_norm_to_lambda(&x);
        prop_assert_eq!(ctx.cyc_mul(&x, &ctx.cyc_conj(&x)), ctx.cyc_real(nx.clone()));
        prop_assert_eq!(
            ctx.cyc_norm_to_lambda(&xy),
            ctx.mul(&nx, &ctx.cyc_norm_to_lambda(&y))
        );
        prop_assert_eq!(ctx.cyc_norm_to_q(&xy), ctx.cyc_norm_to_q(&x) * ctx.cyc_norm_to_q(&y));
        let expected = if x.is_zero() { Ordering::Equal } else { Ordering::Greater };
        prop_assert_eq!(ctx.sign(&nx), expected);
    }

    #[test]
    fn sign_matches_embedding(q in 3u32..=14, a in coeffs()) {
        let ctx = Context::new(q).unwrap();
        let x = zl(&ctx, &a);
        prop_assume!(!x.is_zero());
        let iv = ctx.interval(&x, 256);
        prop_assert!(!iv.contains_zero());
        let numeric = if iv.mid_f64() > 0.0 { Ordering::Greater } else { Ordering::Less };
        prop_assert_eq!(ctx.sign(&x), numeric);
    }

    #[test]
    fn unimodular_action_preserves_skew_form(q in 3u32..=10, a in coeffs(), b in coeffs(), c in coeffs(), d in coeffs(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let ctx = Context::new(q).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = ctx.eval_word(&hecke::verify::random_word(&mut rng, 6));
        let (x, y) = (cyc(&ctx, &a, &b), cyc(&ctx, &c, &d));
        prop_assert_eq!(ctx.form_i1(&ctx.act(&g, &x), &ctx.act(&g, &y)), ctx.form_i1(&x, &y));
    }
}

#[test]
fn zeta_basis_examples() {
    let ctx = Context::new(5).unwrap();
    let lz = &ctx.cyc_real(ctx.lambda()) + &ctx.zeta();
    assert_eq!(ctx.to_zeta_basis(&lz), (ctx.lambda(), ctx.one()));
    assert_eq!(ctx.to_zeta_basis(&ctx.zeta()), (ctx.zero(), ctx.one()));
    let e = ctx.embed(&ctx.zeta(), 64);
    assert!((e.re.mid_f64() - 0.80902).abs() < 1e-5);
    assert!((e.im.mid_f64() - 0.58779).abs() < 1e-5);
}
