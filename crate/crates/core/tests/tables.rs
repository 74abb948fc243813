use howe_core::{verify_row, CountMethod, Table};

#[test]
fn table_one_reaches_serre_bound_over_fp() {
    for row in Table::One.rows() {
        let check = verify_row(&row, Table::One.target(), 1_000_000);
        assert!(check.passed(), "{check}");
        let counts = check.target_counts().unwrap();
        assert_eq!(counts.method, CountMethod::BruteForce);
    }
}

#[test]
fn table_two_is_maximal_over_fp2() {
    for row in Table::Two.rows() {
        let check = verify_row(&row, Table::Two.target(), 1_000_000);
        assert!(check.passed(), "{check}");
        assert_eq!(
            check.target_counts().unwrap().method,
            CountMethod::BruteForce
        );
        assert_eq!(row.p() % 4, 3);
    }
}

#[test]
fn table_three_reaches_serre_bound_over_fp3() {
    for row in Table::Three.rows() {
        let check = verify_row(&row, Table::Three.target(), 60_000);
        assert!(check.passed(), "{check}");
        let expected = if row.p() == 37 {
            CountMethod::BruteForce
        } else {
            CountMethod::ZetaLift
        };
        assert_eq!(check.target_counts().unwrap().method, expected);
    }
}

#[test]
fn rows_fail_other_targets() {
    let row = Table::Two.rows()[0];
    assert!(!verify_row(&row, Table::Three.target(), 0).passed());
}
