mod common;

use absorbing::exactalg::{
    count_roots_closed, det_poly, det_rational, int, isolate_real_roots, minimal_poly_candidate, parse_number,
    parse_rational, rat, rational_roots, refine_root, square_minors, to_f64, SturmSequence,
};
use absorbing::{BiPoly, Interval, Rational, UniPoly};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Leibniz expansion over all permutations.
fn leibniz(a: &[Vec<Rational>]) -> Rational {
    fn go(a: &[Vec<Rational>], row: usize, used: &mut Vec<bool>, sign: i64, acc: Rational, out: &mut Rational) {
        let n = a.len();
        if row == n {
            *out += acc * int(sign);
            return;
        }
        for c in 0..n {
            if used[c] {
                continue;
            }
            // parity: number of used columns greater than c
            let inv = used[c + 1..].iter().filter(|&&u| u).count() as i64;
            used[c] = true;
            let s = if inv % 2 == 0 { sign } else { -sign };
            go(a, row + 1, used, s, &acc * &a[row][c], out);
            used[c] = false;
        }
    }
    let mut out = Rational::zero();
    go(a, 0, &mut vec![false; a.len()], 1, Rational::one(), &mut out);
    out
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(
            prop::collection::vec((-9i64..=9, 1i64..=4).prop_map(|(a, b)| rat(a, b)), n),
            n,
        )
    })
}

fn from_roots(roots: &[Rational]) -> UniPoly {
    roots.iter().fold(UniPoly::constant(int(1)), |p, r| &p * &UniPoly::linear_root(r))
}

#[test]
fn parse_examples() {
    assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
    assert_eq!(parse_rational("-4").unwrap(), int(-4));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("0.5").is_err());
    assert_eq!(parse_number("1e-3").unwrap(), rat(1, 1000));
    assert_eq!(parse_number("0.25").unwrap(), rat(1, 4));
}

#[test]
fn det_examples() {
    let a = common::matrix(&[&[2, 1], &[1, 3]]);
    assert_eq!(det_rational(&a).unwrap(), int(5));
    // symbolic determinant of [[1−z, −z], [−λz, λ(1−z)]]
    let l = BiPoly::lambda();
    let z = BiPoly::z();
    let one = BiPoly::constant(int(1));
    let m = vec![
        vec![&one - &z, -&z],
        vec![-(&l * &z), &l * &(&one - &z)],
    ];
    let d = det_poly(&m).unwrap();
    // λ(1−z)² − λz² = λ(1 − 2z)
    assert_eq!(d.lambda_normalize().unwrap(), UniPoly::from_ints(&[1, -2]));
}

#[test]
fn sturm_counts_cubic() {
    let p = UniPoly::from_ints(&[-7, 10, -5, 1]);
    assert_eq!(SturmSequence::new(&p).count_real(), 1);
    let roots = isolate_real_roots(&p).unwrap();
    assert_eq!(roots.len(), 1);
    let r = refine_root(&p, &roots[0], &rat(1, 1_000_000_000)).unwrap();
    assert!((to_f64(&r.midpoint()) - 1.430159709).abs() < 1e-8);
}

#[test]
fn minimal_poly_examples() {
    let p = UniPoly::from_ints(&[-2, 0, 1]);
    let iv = Interval::new(int(1), int(2));
    let a = minimal_poly_candidate(&p, &iv).unwrap();
    assert_eq!(a.degree(), 2);
    assert!(a.minimality_certified());
    // (z²−2)(z−3) restricted around √2 drops the rational factor
    let q = &p * &UniPoly::from_ints(&[-3, 1]);
    let b = minimal_poly_candidate(&q, &iv).unwrap();
    assert_eq!(b.poly().monic(), p.monic());
    let c = minimal_poly_candidate(&UniPoly::from_ints(&[-7, 10, -5, 1]), &Interval::new(int(1), int(2))).unwrap();
    assert_eq!(c.degree(), 3);
    assert!(c.minimality_certified());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn det_matches_leibniz(a in square(5)) {
        prop_assert_eq!(det_rational(&a).unwrap(), leibniz(&a));
    }

    #[test]
    fn det_alternates_under_row_swap(a in square(5), i in 0usize..5, j in 0usize..5) {
        let n = a.len();
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let mut b = a.clone();
        b.swap(i, j);
        prop_assert_eq!(det_rational(&b).unwrap(), -det_rational(&a).unwrap());
    }

    #[test]
    fn symbolic_det_specializes(a in square(4), l in 1i64..9, z in -5i64..5) {
        // entries a_ij + λ·a_ji − z·δ_ij, checked at a rational point
        let n = a.len();
        let lam = rat(l, 10);
        let zz = int(z);
        let sym: Vec<Vec<BiPoly>> = (0..n).map(|i| (0..n).map(|j| {
            let mut p = BiPoly::constant(a[i][j].clone());
            p.add_term(1, 0, a[j][i].clone());
            if i == j { p.add_term(0, 1, int(-1)); }
            p
        }).collect()).collect();
        let num: Vec<Vec<Rational>> = sym.iter().map(|r| r.iter().map(|p| p.eval(&lam, &zz)).collect()).collect();
        prop_assert_eq!(det_poly(&sym).unwrap().eval(&lam, &zz), det_rational(&num).unwrap());
    }

    #[test]
    fn minors_table_matches_direct(a in square(4)) {
        let n = a.len();
        let table = square_minors(&a).unwrap();
        for (&(rm, cm), v) in &table {
            let rows: Vec<usize> = (0..n).filter(|i| rm >> i & 1 == 1).collect();
            let cols: Vec<usize> = (0..n).filter(|j| cm >> j & 1 == 1).collect();
            let sub: Vec<Vec<Rational>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect()).collect();
            prop_assert_eq!(v, &leibniz(&sub));
        }
    }

    #[test]
    fn sturm_counts_distinct_roots(roots in prop::collection::vec((-6i64..=6, 1i64..=3), 1..6), lo in -7i64..0, hi in 0i64..7) {
        let rs: Vec<Rational> = roots.iter().map(|&(a, b)| rat(a, b)).collect();
        let p = from_roots(&rs);
        let mut distinct = rs.clone();
        distinct.sort();
        distinct.dedup();
        let s = SturmSequence::new(&p.square_free());
        prop_assert_eq!(s.count_real(), distinct.len());
        let (lo, hi) = (int(lo), int(hi));
        let expected = distinct.iter().filter(|r| **r > lo && **r <= hi).count();
        prop_assert_eq!(s.count_half_open(&lo, &hi), expected);
        let closed = distinct.iter().filter(|r| **r >= lo && **r <= hi).count();
        prop_assert_eq!(count_roots_closed(&p, &Interval::new(lo, hi)).unwrap(), closed);
    }

    #[test]
    fn isolation_and_rational_roots(roots in prop::collection::vec((-6i64..=6, 1i64..=4), 1..5), extra in 2i64..7) {
        let rs: Vec<Rational> = roots.iter().map(|&(a, b)| rat(a, b)).collect();
        // extra² + 1 is never a square, so this factor has two irrational roots
        let irr = UniPoly::from_ints(&[-(extra * extra + 1), 0, 1]);
        let p = &from_roots(&rs) * &irr;
        let mut distinct = rs.clone();
        distinct.sort();
        distinct.dedup();
        let isolated = isolate_real_roots(&p).unwrap();
        prop_assert_eq!(isolated.len(), distinct.len() + 2);
        for w in isolated.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
        let found = rational_roots(&p).unwrap();
        prop_assert_eq!(&found, &distinct);
        for r in &found {
            prop_assert!(isolated.iter().any(|iv| iv.contains(r)));
        }
    }

    #[test]
    fn refinement_nests(k in 2i64..50, den in 1u32..40) {
        prop_assume!(((k as f64).sqrt().round() as i64).pow(2) != k);
        let p = UniPoly::from_ints(&[-k, 0, 1]);
        let iv = isolate_real_roots(&p).unwrap().pop().unwrap();
        let coarse = refine_root(&p, &iv, &rat(1, den as i64)).unwrap();
        let fine = refine_root(&p, &coarse, &rat(1, 1 << 30)).unwrap();
        prop_assert!(coarse.lo <= fine.lo && fine.hi <= coarse.hi);
        prop_assert!(fine.width() <= rat(1, 1 << 30));
        prop_assert!(coarse.contains(&fine.midpoint()));
        prop_assert!((to_f64(&fine.midpoint()) - (k as f64).sqrt()).abs() < 1e-8);
    }

    #[test]
    fn gcd_divides_both(a in prop::collection::vec(-5i64..5, 1..5), b in prop::collection::vec(-5i64..5, 1..5), c in prop::collection::vec(-5i64..5, 2..4)) {
        let c = UniPoly::from_ints(&c);
        prop_assume!(c.degree().unwrap_or(0) >= 1);
        let p = &UniPoly::from_ints(&a) * &c;
        let q = &UniPoly::from_ints(&b) * &c;
        prop_assume!(!p.is_zero() && !q.is_zero());
        let g = p.gcd(&q);
        prop_assert!(g.divides(&p) && g.divides(&q));
        prop_assert!(c.divides(&g));
    }
}
