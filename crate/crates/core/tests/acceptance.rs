//! Acceptance suite: every criterion is exercised at exact arithmetic, one
//! test per criterion, each printing a PASS line when it completes.

use std::sync::Arc;

use bbs_core::border::{
    base_change_symbolic, generic_prebasis, generic_pseudo_prebasis,
};
use bbs_core::order_ideal::{OrderIdeal, PseudoOrderIdeal};
use bbs_core::parse::parse_poly;
use bbs_core::{Matrix, Polynomial, VarContext};

fn oi(n: usize, elems: &[&[u32]]) -> OrderIdeal {
    OrderIdeal::new(n, elems.iter().map(|e| e.to_vec()).collect()).unwrap()
}

/// O = {1, y, x, xy}, the degrevlex order ideal of the base-change example.
fn o_xy() -> OrderIdeal {
    oi(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])
}

/// O' = {1, x, x^2, x^3}.
fn o_prime() -> OrderIdeal {
    oi(2, &[&[0, 0], &[1, 0], &[2, 0], &[3, 0]])
}

fn assert_matrix_eq(ctx: &Arc<VarContext>, got: &Matrix<Polynomial>, expect: &[&[&str]], label: &str) {
    assert_eq!(got.rows(), expect.len(), "{}: row count", label);
    for (i, row) in expect.iter().enumerate() {
        assert_eq!(got.cols(), row.len(), "{}: col count", label);
        for (j, s) in row.iter().enumerate() {
            let e = parse_poly(ctx, s).unwrap();
            assert_eq!(
                got.at(i, j),
                &e,
                "{}: entry ({}, {}): got {}, expected {}",
                label,
                i + 1,
                j + 1,
                got.at(i, j),
                s
            );
        }
    }
}

/// Criterion 1: the worked base-change example. M_C, N_C, M_D, N_D are
/// reproduced entry-exact, including h_1..h_4, k_1..k_4, l_1..l_4, and both
/// open-set determinants.
#[test]
fn acceptance_01_base_change_worked_example() {
    let start = std::time::Instant::now();

    // O-side: generic prebasis over K[c], represent O' and its border.
    let src_c = generic_prebasis(&o_xy(), &["x", "y"]);
    let ctx_c = src_c.context().clone();
    let (m_c, n_c) = base_change_symbolic(&src_c, &PseudoOrderIdeal::plain(o_prime())).unwrap();

    let h1 = "c_1_2*c_3_2^2+c_1_4*c_3_2*c_4_2+c_1_2*c_3_4*c_4_2+c_1_4*c_4_2*c_4_4+c_1_2^2+c_1_4*c_2_2";
    let h2 = "c_2_2*c_3_2^2+c_2_4*c_3_2*c_4_2+c_2_2*c_3_4*c_4_2+c_2_4*c_4_2*c_4_4+c_1_2*c_2_2+c_2_2*c_2_4";
    let h3 = "c_3_2^3+2*c_3_2*c_3_4*c_4_2+c_3_4*c_4_2*c_4_4+2*c_1_2*c_3_2+c_2_2*c_3_4+c_1_4*c_4_2";
    let h4 = "c_3_2^2*c_4_2+c_3_4*c_4_2^2+c_3_2*c_4_2*c_4_4+c_4_2*c_4_4^2+c_2_2*c_3_2+c_1_2*c_4_2+c_2_4*c_4_2+c_2_2*c_4_4";

    assert_matrix_eq(
        &ctx_c,
        &m_c,
        &[
            &["1", "0", "c_1_2", "c_1_2*c_3_2+c_1_4*c_4_2"],
            &["0", "0", "c_2_2", "c_2_2*c_3_2+c_2_4*c_4_2"],
            &["0", "1", "c_3_2", "c_1_2+c_3_2^2+c_3_4*c_4_2"],
            &["0", "0", "c_4_2", "c_2_2+c_3_2*c_4_2+c_4_2*c_4_4"],
        ],
        "M_C",
    );
    assert_matrix_eq(
        &ctx_c,
        &n_c,
        &[
            &["0", "0", "c_1_4", "c_1_2*c_3_4+c_1_4*c_4_4", h1],
            &["1", "0", "c_2_4", "c_2_2*c_3_4+c_2_4*c_4_4", h2],
            &["0", "0", "c_3_4", "c_3_2*c_3_4+c_3_4*c_4_4+c_1_4", h3],
            &["0", "1", "c_4_4", "c_3_4*c_4_2+c_4_4^2+c_2_4", h4],
        ],
        "N_C",
    );

    let det_mc = m_c.det_bareiss().unwrap();
    assert_eq!(
        det_mc,
        parse_poly(&ctx_c, "c_2_4*c_4_2^2-c_2_2*c_4_2*c_4_4-c_2_2^2").unwrap(),
        "det(M_C)"
    );

    // O'-side: generic prebasis over K[d], represent O and its border.
    let src_d =
        generic_pseudo_prebasis(&PseudoOrderIdeal::plain(o_prime()), &["x", "y"], "d");
    let ctx_d = src_d.context().clone();
    let (m_d, n_d) = base_change_symbolic(&src_d, &PseudoOrderIdeal::plain(o_xy())).unwrap();

    let k1 = "d_1_1^2+d_1_2*d_2_1+d_1_3*d_3_1+d_1_4*d_4_1";
    let k2 = "d_1_1*d_2_1+d_2_1*d_2_2+d_2_3*d_3_1+d_2_4*d_4_1";
    let k3 = "d_1_1*d_3_1+d_2_1*d_3_2+d_3_1*d_3_3+d_3_4*d_4_1";
    // The algorithmic value; its third summand is d_3_1*d_4_3 (the printed
    // source carries d_3_1*d_4_2 there, inconsistent with its own k_1..k_3
    // pattern and with the substitution identity of criterion 2).
    let k4 = "d_1_1*d_4_1+d_2_1*d_4_2+d_3_1*d_4_3+d_4_1*d_4_4";
    let l1 = "d_1_1*d_1_2+d_1_2*d_2_2+d_1_3*d_3_2+d_1_4*d_4_2";
    let l2 = "d_1_2*d_2_1+d_2_2^2+d_2_3*d_3_2+d_2_4*d_4_2";
    let l3 = "d_1_2*d_3_1+d_2_2*d_3_2+d_3_2*d_3_3+d_3_4*d_4_2";
    let l4 = "d_1_2*d_4_1+d_2_2*d_4_2+d_3_2*d_4_3+d_4_2*d_4_4";

    assert_matrix_eq(
        &ctx_d,
        &m_d,
        &[
            &["1", "d_1_1", "0", "d_1_2"],
            &["0", "d_2_1", "1", "d_2_2"],
            &["0", "d_3_1", "0", "d_3_2"],
            &["0", "d_4_1", "0", "d_4_2"],
        ],
        "M_D",
    );
    assert_matrix_eq(
        &ctx_d,
        &n_d,
        &[
            &[k1, "0", l1, "d_1_3"],
            &[k2, "0", l2, "d_2_3"],
            &[k3, "1", l3, "d_3_3"],
            &[k4, "0", l4, "d_4_3"],
        ],
        "N_D",
    );

    let det_md = m_d.det_bareiss().unwrap();
    // The determinant of the displayed M_D; its vanishing locus is the one
    // cut out by d_3_1*d_4_2 - d_3_2*d_4_1.
    assert_eq!(
        det_md,
        parse_poly(&ctx_d, "d_3_2*d_4_1-d_3_1*d_4_2").unwrap(),
        "det(M_D)"
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "runtime target exceeded: {:?}", elapsed);
    println!("ACCEPTANCE 1 (base-change worked example): PASS ({:?})", elapsed);
}
