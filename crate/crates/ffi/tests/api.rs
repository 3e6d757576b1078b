use std::ffi::{CStr, CString};
use std::ptr;

use lambdatree_ffi::*;

fn parse(text: &str) -> *mut LtTree {
    let c = CString::new(text).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { lt_tree_parse(c.as_ptr(), &mut t) }, LtStatus::Ok);
    t
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(lt_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn solve_and_read_witness() {
    let t = parse("6\n0 1\n0 2\n0 3\n0 4\n0 5\n");
    unsafe {
        assert_eq!(lt_tree_vertex_count(t), 6);
        assert_eq!(lt_tree_max_degree(t), 5);
        for alg in [LtAlgorithm::Auto, LtAlgorithm::Ck, LtAlgorithm::Fast, LtAlgorithm::Linear] {
            let mut r = ptr::null_mut();
            assert_eq!(lt_solve_l21(t, alg, &mut r), LtStatus::Ok);
            assert!(lt_result_feasible(r));
            assert_eq!(lt_result_lambda(r), 6);
            let mut len = 0usize;
            assert_eq!(lt_result_labels(r, ptr::null_mut(), &mut len), LtStatus::BufferTooSmall);
            assert_eq!(len, 6);
            let mut buf = vec![0u32; len];
            assert_eq!(lt_result_labels(r, buf.as_mut_ptr(), &mut len), LtStatus::Ok);
            let mut valid = false;
            assert_eq!(lt_validate(t, buf.as_ptr(), buf.len(), 6, 2, 1, &mut valid), LtStatus::Ok);
            assert!(valid);
            lt_result_free(r);
        }
        lt_tree_free(t);
    }
}

#[test]
fn decisions_and_lp1() {
    let t = parse("5\n0 1\n1 2\n2 3\n3 4\n");
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(lt_decide(t, 2, 3, LtAlgorithm::Linear, true, &mut r), LtStatus::Ok);
        assert!(!lt_result_feasible(r));
        let mut len = 5usize;
        let mut buf = [0u32; 5];
        assert_eq!(lt_result_labels(r, buf.as_mut_ptr(), &mut len), LtStatus::NoWitness);
        lt_result_free(r);

        let mut r = ptr::null_mut();
        assert_eq!(lt_solve_lp1(t, 3, LtAlgorithm::Auto, &mut r), LtStatus::Ok);
        assert_eq!(lt_result_lambda(r), 5);
        lt_result_free(r);
        lt_tree_free(t);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut t = ptr::null_mut();
        let bad = CString::new("3\n0 1\n1 1\n").unwrap();
        assert_eq!(lt_tree_parse(bad.as_ptr(), &mut t), LtStatus::Parse);
        assert!(t.is_null());
        assert!(last_error().contains("line 3"), "{}", last_error());
        assert_eq!(lt_tree_parse(ptr::null(), &mut t), LtStatus::NullPointer);

        let edges = [0u32, 1, 1, 0];
        assert_eq!(lt_tree_from_edges(3, edges.as_ptr(), &mut t), LtStatus::Parse);
        assert_eq!(lt_tree_from_edges(0, ptr::null(), &mut t), LtStatus::InvalidArgument);

        let mut r = ptr::null_mut();
        assert_eq!(lt_solve_l21(ptr::null(), LtAlgorithm::Auto, &mut r), LtStatus::NullPointer);
        let good = parse("2\n0 1\n");
        assert_eq!(lt_solve_lp1(good, 0, LtAlgorithm::Auto, &mut r), LtStatus::InvalidArgument);
        let mut valid = true;
        let labels = [0u32];
        assert_eq!(lt_validate(good, labels.as_ptr(), 1, 2, 2, 1, &mut valid), LtStatus::InvalidArgument);
        lt_tree_free(good);
        // Null handles are ignored by the destructors.
        lt_tree_free(ptr::null_mut());
        lt_result_free(ptr::null_mut());
    }
}

#[test]
fn generated_trees() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(lt_tree_generate(LtTreeKind::Random, 500, 7, 3, &mut t), LtStatus::Ok);
        assert_eq!(lt_tree_vertex_count(t), 500);
        assert_eq!(lt_tree_max_degree(t), 7);
        let mut r = ptr::null_mut();
        assert_eq!(lt_solve_l21(t, LtAlgorithm::Linear, &mut r), LtStatus::Ok);
        let l = lt_result_lambda(r);
        assert!(l == 8 || l == 9);
        lt_result_free(r);
        lt_tree_free(t);
        assert_eq!(lt_tree_generate(LtTreeKind::Star, 5, 9, 0, &mut t), LtStatus::InvalidArgument);
    }
}
