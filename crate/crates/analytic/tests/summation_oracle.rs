//! Cross-checks the closed-form power sums against direct summation.

use analytic::{sum_identities, valtr_probability, Exact};

#[test]
fn closed_forms_match_direct_summation() {
    for n in 1i64..=300 {
        let s = sum_identities(n);
        let mut direct = (0i128, 0i128, 0i128, 0i128, 0i128);
        for i in 0..=i128::from(n) {
            let n = i128::from(n);
            direct.0 += i;
            direct.1 += i * i;
            direct.2 += i * i * i;
            direct.3 += i * (n - i);
            direct.4 += i * i * (n - i);
        }
        assert_eq!(
            (s.sum_i, s.sum_i_sq, s.sum_i_cu, s.sum_i_n_minus_i, s.sum_i_sq_n_minus_i),
            direct,
            "mismatch at n = {n}"
        );
    }
}

#[test]
fn valtr_matches_direct_formula_evaluation() {
    // Independent evaluation: build C(2n−2, n−1) from Pascal's rule instead
    // of the multiplicative binomial, then square the ratio.
    let mut row = vec![1i128]; // Pascal's triangle row 0
    for r in 1..=38usize {
        let mut next = vec![1i128; r + 1];
        for c in 1..r {
            next[c] = row[c - 1] + row[c];
        }
        row = next;
        if r % 2 == 0 {
            let n = (r / 2 + 1) as u32;
            if (3..=20).contains(&n) {
                let factorial: i128 = (2..=i128::from(n)).product();
                let expect = Exact::new(row[r / 2], factorial);
                assert_eq!(valtr_probability(n).unwrap(), expect * expect, "n = {n}");
            }
        }
    }
}
