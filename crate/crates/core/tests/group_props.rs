use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use orbiweight::group::{
    abelianization, coset_index, determinant, group_order, minors_criterion, smith_normal_form, Matrix, Presentation,
    Word,
};
use proptest::prelude::*;

/// Laplace expansion along the first row.
fn det_oracle(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * det_oracle(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors `D_k = gcd of k-minors`.
fn invariant_factors_oracle(rows: &[Vec<i64>], cols: usize) -> Vec<i128> {
    let r = rows.len();
    let mut prev: i128 = 1;
    let mut out = Vec::new();
    for k in 1..=r.min(cols) {
        let mut g: i128 = 0;
        for rs in subsets(r, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j]).collect()).collect();
                g = g.gcd(&det_oracle(&sub));
            }
        }
        if g == 0 {
            out.extend(std::iter::repeat_n(0, r.min(cols) - out.len()));
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn matrix_strategy(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        (proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r), Just(c))
    })
}

fn big(rows: &[Vec<i64>], cols: usize) -> Matrix<BigInt> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(), cols)
}

/// Product of elementary matrices: row additions and swaps.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Matrix<BigInt> {
    let mut u = Matrix::<BigInt>::identity(n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = Matrix::<BigInt>::identity(n);
        if k == 0 {
            e[(i, i)] = BigInt::zero();
            e[(j, j)] = BigInt::zero();
            e[(i, j)] = BigInt::from(1);
            e[(j, i)] = BigInt::from(1);
        } else {
            e[(i, j)] = BigInt::from(k);
        }
        u = u.mul(&e);
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_matches_determinantal_divisors((rows, cols) in matrix_strategy(4, 4, 9)) {
        let m = big(&rows, cols);
        let s = smith_normal_form(&m);
        let expected: Vec<BigInt> = invariant_factors_oracle(&rows, cols).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(&s.diagonal, &expected);
        prop_assert!(s.left.is_unimodular() && s.right.is_unimodular());
        prop_assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal_matrix());
    }

    #[test]
    fn determinant_matches_expansion(n in 1usize..=5, seed in proptest::collection::vec(-9i64..=9, 25)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
        prop_assert_eq!(determinant(&big(&rows, n)), BigInt::from(det_oracle(&rows)));
    }

    #[test]
    fn smith_invariant_under_permutation_and_unimodular(
        (rows, cols) in matrix_strategy(6, 5, 9),
        left_ops in proptest::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..8),
        right_ops in proptest::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
        rot in 0usize..6,
    ) {
        let m = big(&rows, cols);
        let base = smith_normal_form(&m).diagonal;
        let mut permuted = rows.clone();
        permuted.rotate_left(rot % rows.len());
        for r in permuted.iter_mut() {
            r.reverse();
        }
        prop_assert_eq!(&smith_normal_form(&big(&permuted, cols)).diagonal, &base);
        let l = unimodular(rows.len(), &left_ops);
        let r = unimodular(cols, &right_ops);
        prop_assert!(l.is_unimodular() && r.is_unimodular());
        prop_assert_eq!(&smith_normal_form(&l.mul(&m).mul(&r)).diagonal, &base);
    }

    #[test]
    fn minors_criterion_agrees_with_smith((rows, cols) in matrix_strategy(6, 5, 9)) {
        let names: Vec<String> = (0..cols).map(|i| format!("g{i}")).collect();
        let relators: Vec<Word> = rows
            .iter()
            .map(|r| Word::from_syllables(r.iter().enumerate().map(|(g, &k)| (g, k))))
            .collect();
        let p = Presentation::new(names, relators).unwrap();
        prop_assert_eq!(p.exponent_matrix().to_rows(), rows.clone());
        let expected = {
            let f = invariant_factors_oracle(&rows, cols);
            let nonzero: Vec<i128> = f.into_iter().filter(|&d| d != 0).collect();
            cols - nonzero.len() == 1 && nonzero.iter().all(|d| d.abs() == 1)
        };
        prop_assert_eq!(abelianization(&p).is_infinite_cyclic(), expected);
        prop_assert_eq!(minors_criterion(&p.exponent_matrix()), expected);
    }

    #[test]
    fn exponent_matrix_additive(
        a in proptest::collection::vec((0usize..4, -5i64..=5), 0..8),
        b in proptest::collection::vec((0usize..4, -5i64..=5), 0..8),
    ) {
        let (wa, wb) = (Word::from_syllables(a), Word::from_syllables(b));
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let p = Presentation::new(names, vec![wa.clone(), wb.clone(), wa.mul(&wb)]).unwrap();
        let m = p.exponent_matrix();
        for g in 0..4 {
            prop_assert_eq!(m.row(2)[g], m.row(0)[g] + m.row(1)[g]);
        }
    }

    #[test]
    fn presentation_text_round_trips(
        words in proptest::collection::vec(proptest::collection::vec((0usize..3, -4i64..=4), 1..6), 1..4),
    ) {
        let relators: Vec<Word> = words.into_iter().map(Word::from_syllables).filter(|w| !w.is_identity()).collect();
        let p = Presentation::new(vec!["x".into(), "y".into(), "z".into()], relators).unwrap();
        let q: Presentation = p.to_string().parse().unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn word_inverse_and_reduction(syl in proptest::collection::vec((0usize..3, -4i64..=4), 0..10)) {
        let w = Word::from_syllables(syl);
        prop_assert!(w.mul(&w.inverse()).is_identity());
        prop_assert_eq!(w.pow(3), w.mul(&w).mul(&w));
        prop_assert_eq!(w.pow(-2), w.inverse().mul(&w.inverse()));
        for pair in w.syllables().windows(2) {
            prop_assert_ne!(pair[0].0, pair[1].0);
        }
        prop_assert!(w.syllables().iter().all(|&(_, k)| k != 0));
    }
}

#[test]
fn coset_enumeration_known_orders() {
    for n in 2..=12i64 {
        // dihedral group of order 2n
        let p: Presentation = format!("a b\na^{n}\nb^2\n(a b)^2").parse().unwrap();
        assert_eq!(group_order(&p, 10_000).unwrap(), 2 * n as usize);
        // cyclic subgroup <a> has index 2
        assert_eq!(coset_index(&p, &[p.parse_word("a").unwrap()], 10_000).unwrap(), 2);
    }
    let a5: Presentation = "a b\na^2\nb^3\n(a b)^5".parse().unwrap();
    assert_eq!(group_order(&a5, 10_000).unwrap(), 60);
    let z: Presentation = "a b\na b a^-1 b^-1\nb".parse().unwrap();
    assert!(group_order(&z, 500).is_err());
}

#[test]
fn abelianization_torsion_is_a_divisor_chain() {
    let p: Presentation = "a b c\na^4 b^6\nb^10 c^-2\na^2 c^14".parse().unwrap();
    let ab = abelianization(&p);
    for w in ab.torsion.windows(2) {
        assert!((&w[1] % &w[0]).is_zero());
    }
    assert!(ab.torsion.iter().all(|t| t.is_positive()));
}
