use std::ffi::CStr;
use std::ptr;

use hecke_ffi::*;

unsafe fn context(q: u32) -> *mut HeckeContext {
    let mut ctx = ptr::null_mut();
    assert_eq!(hecke_context_new(q, &mut ctx), HeckeStatus::Ok);
    assert!(!ctx.is_null());
    ctx
}

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    hecke_string_free(s);
    out
}

#[test]
fn context_lifecycle() {
    unsafe {
        for (q, deg, poly) in [(3, 1, "t-1"), (5, 2, "t^2-t-1"), (7, 3, "t^3-t^2-2t+1")] {
            let ctx = context(q);
            assert_eq!(hecke_context_degree(ctx), deg);
            let mut s = ptr::null_mut();
            assert_eq!(hecke_minpoly(ctx, &mut s), HeckeStatus::Ok);
            assert_eq!(take_string(s), poly);
            hecke_context_free(ctx);
        }
        hecke_context_free(ptr::null_mut());
    }
}

#[test]
fn bad_arguments() {
    unsafe {
        let mut ctx = ptr::null_mut();
        assert_eq!(hecke_context_new(2, &mut ctx), HeckeStatus::InvalidArgument);
        assert!(ctx.is_null());
        let msg = CStr::from_ptr(hecke_last_error()).to_str().unwrap();
        assert!(!msg.is_empty());
        assert_eq!(hecke_context_new(5, ptr::null_mut()), HeckeStatus::NullPointer);

        let ctx = context(5);
        let mut out = false;
        assert_eq!(
            hecke_is_member(ctx, ptr::null(), [0i64, 0].as_ptr(), &mut out),
            HeckeStatus::NullPointer
        );
        let mut list = ptr::null_mut();
        assert_eq!(hecke_enumerate_disk(ctx, 1, 0, &mut list), HeckeStatus::InvalidArgument);
        assert_eq!(hecke_cycle_list_len(ptr::null()), 0);
        hecke_context_free(ctx);
    }
}

#[test]
fn membership() {
    unsafe {
        let ctx = context(5);
        let mut out = false;
        // 1 + λη with λ² = λ + 1
        assert_eq!(hecke_is_member(ctx, [1, 0].as_ptr(), [0, 1].as_ptr(), &mut out), HeckeStatus::Ok);
        assert!(out);
        assert_eq!(hecke_is_member(ctx, [2, 0].as_ptr(), [0, 0].as_ptr(), &mut out), HeckeStatus::Ok);
        assert!(!out);

        // A1 = (1 λ; 0 1) and (1 1; 0 1)
        let a1 = [1, 0, 0, 1, 0, 0, 1, 0];
        assert_eq!(hecke_in_hecke_group(ctx, a1.as_ptr(), &mut out), HeckeStatus::Ok);
        assert!(out);
        let t = [1, 0, 1, 0, 0, 0, 1, 0];
        assert_eq!(hecke_in_hecke_group(ctx, t.as_ptr(), &mut out), HeckeStatus::Ok);
        assert!(!out);
        hecke_context_free(ctx);
    }
}

#[test]
fn enumeration_matches_library() {
    unsafe {
        let ctx = context(7);
        let mut list = ptr::null_mut();
        assert_eq!(hecke_enumerate_disk(ctx, 30, 1, &mut list), HeckeStatus::Ok);
        let n = hecke_cycle_list_len(list);
        assert_eq!(hecke_cycle_list_q(list), 7);

        let lib = hecke::Context::new(7).unwrap();
        let expect = hecke::cycles::enumerate(&lib, &hecke::cycles::Bound::disk(30, 1), 1).unwrap();
        assert_eq!(n, expect.len());

        let mut a = [0i64; 3];
        let mut c = [0i64; 3];
        let mut cyc = HeckeCycle::default();
        let mut member = false;
        for (i, r) in expect.iter().enumerate() {
            assert_eq!(hecke_cycle_list_get(list, i, &mut cyc), HeckeStatus::Ok);
            assert_eq!(cyc.age, r.age);
            assert_eq!(cyc.generation, r.generation);
            assert!(cyc.re * cyc.re + cyc.im * cyc.im <= 30.0 + 1e-9);
            assert_eq!(hecke_cycle_list_coeffs(list, i, a.as_mut_ptr(), c.as_mut_ptr()), HeckeStatus::Ok);
            assert_eq!(lib.cyc_from_i64s(&a, &c), r.point);
            assert_eq!(hecke_is_member(ctx, a.as_ptr(), c.as_ptr(), &mut member), HeckeStatus::Ok);
            assert!(member);
        }
        assert_eq!(hecke_cycle_list_get(list, n, &mut cyc), HeckeStatus::InvalidArgument);
        hecke_cycle_list_free(list);

        assert_eq!(hecke_enumerate_age(ctx, 1, &mut list), HeckeStatus::Ok);
        let by_age = hecke::cycles::enumerate(&lib, &hecke::cycles::Bound::Age(1), 1).unwrap();
        assert_eq!(hecke_cycle_list_len(list), by_age.len());
        assert!(by_age.iter().all(|r| r.age <= 1));
        hecke_cycle_list_free(list);
        hecke_context_free(ctx);
    }
}

#[test]
fn q5_decomposition_json() {
    unsafe {
        let mut s = ptr::null_mut();
        // 1 + ζ⁴ = (λ − 1)·ζ²
        let ctx = hecke::Context::new(5).unwrap();
        let g = &ctx.cyc_one() + &ctx.zeta_pow(4);
        let a: Vec<i64> = g.a.coeffs().iter().map(|x| x.try_into().unwrap()).collect();
        let c: Vec<i64> = g.c.coeffs().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(hecke_decompose_q5_json(a.as_ptr(), c.as_ptr(), &mut s), HeckeStatus::Ok);
        let json = take_string(s);
        assert!(json.starts_with(r#"{"u":"-1;1""#), "{json}");
        assert!(json.contains(r#""delta":{"a":"0;1","c":"0;1"}"#), "{json}");

        assert_eq!(
            hecke_decompose_q5_json([0, 0].as_ptr(), [0, 0].as_ptr(), &mut s),
            HeckeStatus::InvalidArgument
        );
    }
}
