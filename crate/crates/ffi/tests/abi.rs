use std::ffi::{CStr, CString};
use std::ptr;

use bmcp_ffi::*;

const TINY1: &str = "BMCP 1\n3 3 10\n4 5 6\n3 7 2\n2 1 2\n2 2 3\n2 1 3\n";

fn last_error() -> String {
    let p = bmcp_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn tiny() -> *mut BmcpInstance {
    let text = CString::new(TINY1).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { bmcp_instance_parse(text.as_ptr(), &mut inst) }, BmcpStatus::Ok);
    inst
}

#[test]
fn parse_accessors_and_round_trip() {
    let inst = tiny();
    unsafe {
        assert_eq!(bmcp_instance_item_count(inst), 3);
        assert_eq!(bmcp_instance_element_count(inst), 3);
        assert_eq!(bmcp_instance_capacity(inst), 10);

        let mut text = ptr::null_mut();
        assert_eq!(bmcp_instance_to_string(inst, &mut text), BmcpStatus::Ok);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), TINY1);
        bmcp_string_free(text);

        let mut lp = ptr::null_mut();
        assert_eq!(bmcp_export_lp(inst, &mut lp), BmcpStatus::Ok);
        let lp_text = CStr::from_ptr(lp).to_string_lossy().into_owned();
        assert!(lp_text.starts_with("Maximize\n obj: 3 x1 + 7 x2 + 2 x3\n"));
        bmcp_string_free(lp);

        let mut opt = 0;
        assert_eq!(bmcp_exact_optimum(inst, &mut opt), BmcpStatus::Ok);
        assert_eq!(opt, 12);
        bmcp_instance_free(inst);
    }
}

#[test]
fn solve_with_round_budget() {
    let inst = tiny();
    let mut cfg = bmcp_solver_config_default();
    assert_eq!(cfg.time_limit_seconds, 600.0);
    assert_eq!((cfg.reward_factor, cfg.penalty_factor), (0.5, 0.5));
    cfg.rounds = 3;
    cfg.seed = 11;
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(bmcp_solve(inst, &cfg, &mut r), BmcpStatus::Ok);
        assert_eq!(bmcp_run_result_objective(r), 12);
        assert!(bmcp_run_result_weight(r) <= 10);
        assert_eq!(bmcp_run_result_rounds(r), 3);
        assert!(bmcp_run_result_time_to_best(r) >= 0.0);

        let k = bmcp_run_result_selected_count(r);
        assert_eq!(k, 2);
        let mut small = [0usize; 1];
        assert_eq!(
            bmcp_run_result_selected_items(r, small.as_mut_ptr(), 1),
            BmcpStatus::InvalidInput
        );
        let mut items = vec![usize::MAX; k];
        assert_eq!(bmcp_run_result_selected_items(r, items.as_mut_ptr(), k), BmcpStatus::Ok);
        assert!(items == [0, 1] || items == [0, 2], "{items:?}");

        bmcp_run_result_free(r);
        bmcp_instance_free(inst);
    }
}

#[test]
fn generated_instances_are_reproducible() {
    unsafe {
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(bmcp_instance_generate(50, 60, 0.1, 500, 9, &mut a), BmcpStatus::Ok);
        assert_eq!(bmcp_instance_generate(50, 60, 0.1, 500, 9, &mut b), BmcpStatus::Ok);
        let (mut ta, mut tb) = (ptr::null_mut(), ptr::null_mut());
        bmcp_instance_to_string(a, &mut ta);
        bmcp_instance_to_string(b, &mut tb);
        assert_eq!(CStr::from_ptr(ta), CStr::from_ptr(tb));
        bmcp_string_free(ta);
        bmcp_string_free(tb);
        bmcp_instance_free(a);
        bmcp_instance_free(b);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut inst = ptr::null_mut();
        let bad = CString::new("BMCP 1\n2 3 10\n4 5 6\n").unwrap();
        assert_eq!(bmcp_instance_parse(bad.as_ptr(), &mut inst), BmcpStatus::Parse);
        assert!(inst.is_null());
        assert!(last_error().contains("line 3"), "{}", last_error());

        assert_eq!(bmcp_instance_parse(ptr::null(), &mut inst), BmcpStatus::NullPointer);
        let missing = CString::new("/nonexistent/x.bmcp").unwrap();
        assert_eq!(bmcp_instance_load(missing.as_ptr(), &mut inst), BmcpStatus::Io);
        let invalid = [0xffu8, 0];
        assert_eq!(
            bmcp_instance_parse(invalid.as_ptr().cast(), &mut inst),
            BmcpStatus::InvalidUtf8
        );
        assert_eq!(bmcp_instance_generate(5, 5, 0.1, 0, 1, &mut inst), BmcpStatus::Config);

        let tiny = tiny();
        let mut cfg = bmcp_solver_config_default();
        cfg.reward_factor = 1.5;
        let mut r = ptr::null_mut();
        assert_eq!(bmcp_solve(tiny, &cfg, &mut r), BmcpStatus::Config);
        assert!(r.is_null());
        cfg = bmcp_solver_config_default();
        cfg.time_limit_seconds = -1.0;
        assert_eq!(bmcp_solve(tiny, &cfg, &mut r), BmcpStatus::Config);
        assert_eq!(bmcp_solve(ptr::null(), &cfg, &mut r), BmcpStatus::NullPointer);

        let mut opt = 0;
        let mut big = ptr::null_mut();
        assert_eq!(bmcp_instance_generate(40, 10, 0.2, 100, 1, &mut big), BmcpStatus::Ok);
        assert_eq!(bmcp_exact_optimum(big, &mut opt), BmcpStatus::Config);

        bmcp_instance_free(big);
        bmcp_instance_free(tiny);
        bmcp_instance_free(ptr::null_mut());
        bmcp_run_result_free(ptr::null_mut());
        bmcp_string_free(ptr::null_mut());
        assert_eq!(bmcp_instance_item_count(ptr::null()), 0);
    }
}

#[test]
fn wilcoxon_exact_and_degenerate() {
    let a = [3.0, 5.0, 8.0, 12.0, 20.0];
    let b = [2.0, 3.0, 5.0, 8.0, 15.0];
    let mut out = BmcpWilcoxon::default();
    unsafe {
        assert_eq!(bmcp_wilcoxon(a.as_ptr(), b.as_ptr(), 5, &mut out), BmcpStatus::Ok);
        assert_eq!(out.p_value, 0.0625);
        assert_eq!((out.w_plus, out.n, out.exact), (15.0, 5, true));

        assert_eq!(bmcp_wilcoxon(a.as_ptr(), a.as_ptr(), 5, &mut out), BmcpStatus::Ok);
        assert_eq!(out.p_value, 1.0);

        assert_eq!(bmcp_wilcoxon(a.as_ptr(), b.as_ptr(), 0, &mut out), BmcpStatus::InvalidInput);
        assert_eq!(bmcp_wilcoxon(ptr::null(), b.as_ptr(), 5, &mut out), BmcpStatus::NullPointer);
    }
}
