//! Property suites over the exact arithmetic: algebraic identities of the
//! cubic reductions, transform invariance of the Mahler measure, power
//! detection in Q_p, and agreement between the splitting criteria and the
//! residue-search oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use tau3_core::cubic::CubicPoly;
use tau3_core::measure::{mahler_measure, measure_interval};
use tau3_core::padic::{
    self, is_cube_in_qp, is_square_in_qp, nth_root_in_qp, sqrt_in_qp, PadicNumber, QuadExtElem,
};
use tau3_core::splitting::{
    oracle_splits, splits_1mod3, splits_1mod3_noncanonical, splits_completely,
};

fn small_poly() -> impl Strategy<Value = CubicPoly> {
    (1i64..6, -12i64..13, -12i64..13, -12i64..13)
        .prop_map(|(a, b, c, d)| CubicPoly::new(a, b, c, d))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-300i64..300, 1i64..120)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    // L(f) <= 2^3 · M(f), and M(f) >= 1, for every nonzero integer cubic.
    #[test]
    fn length_bounded_by_eight_measures(f in small_poly()) {
        let m = mahler_measure(&f).unwrap();
        prop_assert!(f.length() as f64 <= 8.0 * (m.value + m.error_bound) + 1e-9);
        prop_assert!(m.value - m.error_bound >= 1.0 - 1e-12);
    }

    // Substituting x = y + b/(3a) into the depressed form and rescaling by a
    // recovers the original coefficients exactly.
    #[test]
    fn depress_then_undepress_is_identity(f in small_poly()) {
        let dep = f.depress();
        let shift = rat(f.b, 3 * f.a);
        let lead = rat(f.a, 1);
        let c2 = rat(3, 1) * &shift;
        let c1 = rat(3, 1) * &shift * &shift + &dep.linear;
        let c0 = &shift * &shift * &shift + &dep.linear * &shift + &dep.constant;
        prop_assert_eq!(&lead * c2, rat(f.b, 1));
        prop_assert_eq!(&lead * c1, rat(f.c, 1));
        prop_assert_eq!(&lead * c0, rat(f.d, 1));
    }

    // Δ = -disc(f) / (27·a⁴) exactly, for every cubic.
    #[test]
    fn delta_matches_discriminant(f in small_poly()) {
        let dep = f.depress();
        let a4 = BigInt::from(f.a).pow(4);
        let expected = -BigRational::new(f.discriminant(), BigInt::from(27) * a4);
        prop_assert_eq!(dep.delta, expected);
    }

    // The measure is invariant under root negation, and under coefficient
    // reversal when d != 0 (reciprocal roots): certified intervals of equal
    // reals must overlap.
    #[test]
    fn measure_invariant_under_transforms(f in small_poly()) {
        let m = mahler_measure(&f).unwrap();
        let neg = mahler_measure(&f.negated_roots()).unwrap();
        prop_assert!((m.value - neg.value).abs() <= m.error_bound + neg.error_bound + 1e-12);
        if let Some(rev) = f.reversal() {
            let r = mahler_measure(&rev).unwrap();
            prop_assert!((m.value - r.value).abs() <= m.error_bound + r.error_bound + 1e-12);
        }
    }

    // Multiplying by a nonzero cube never changes cube-ness in Q_p.
    #[test]
    fn cube_detection_is_cube_invariant(
        r in rational(),
        s in rational(),
        p in prop::sample::select(vec![5u64, 7, 11, 13, 31, 43]),
    ) {
        let cube = &s * &s * &s;
        let scaled = &r * cube;
        prop_assert_eq!(
            is_cube_in_qp(&scaled, p).unwrap(),
            is_cube_in_qp(&r, p).unwrap()
        );
    }

    // Squares round-trip through the canonical square root, and an odd
    // valuation is never a square.
    #[test]
    fn sqrt_round_trip(
        s in rational(),
        p in prop::sample::select(vec![5u64, 7, 13, 29, 97]),
    ) {
        let square = &s * &s;
        prop_assert!(is_square_in_qp(&square, p).unwrap());
        let root = sqrt_in_qp(&square, p, 14).unwrap();
        let direct = PadicNumber::from_rational(&square, p, 14).unwrap();
        prop_assert!(root.mul(&root).unwrap().agrees_with(&direct));
        let odd = square * rat(p as i64, 1);
        prop_assert!(!is_square_in_qp(&odd, p).unwrap());
    }

    // |x + y√-3|_p takes integer-power values: v(x² + 3y²) = 2·min(vx, vy)
    // because -3 is a non-residue for p = 2 (mod 3).
    #[test]
    fn unramified_extension_has_integral_valuations(
        x in rational(),
        y in rational(),
        p in prop::sample::select(vec![5u64, 11, 17, 23, 41]),
    ) {
        let norm = &x * &x + rat(3, 1) * &y * &y;
        let z = QuadExtElem::from_rationals(&x, &y, p, 8).unwrap();
        let vx = padic::valuation(&x, p).unwrap();
        let vy = padic::valuation(&y, p).unwrap();
        prop_assert_eq!(z.valuation(), Some(vx.min(vy)));
        prop_assert_eq!(padic::valuation(&norm, p).unwrap(), 2 * vx.min(vy));
    }

    // The splitting criteria agree with the independent oracle away from
    // ramification.
    #[test]
    fn criteria_agree_with_oracle(
        f in small_poly(),
        p in prop::sample::select(vec![5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53]),
    ) {
        prop_assume!(f.is_irreducible());
        let disc = f.discriminant();
        let p_big = BigInt::from(p);
        prop_assume!(!(BigInt::from(f.a) % &p_big).is_zero());
        prop_assume!(!(&disc % &p_big).is_zero());
        prop_assert_eq!(
            splits_completely(&f, p).unwrap().splits,
            oracle_splits(&f, p).unwrap()
        );
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    // For p = 1 (mod 3) the verdict does not depend on which square root of
    // Δ the criterion uses; sampled at volume.
    #[test]
    fn square_root_branch_is_immaterial(
        f in small_poly(),
        p in prop::sample::select(vec![7u64, 13, 19, 31, 37, 43, 61, 67]),
    ) {
        prop_assume!(f.is_irreducible());
        let canonical = splits_1mod3(&f, p).unwrap();
        let negated = splits_1mod3_noncanonical(&f, p).unwrap();
        prop_assert_eq!(canonical.splits, negated.splits);
    }
}

/// Δ = -disc/27 for monic depressed cubics, on a deterministic grid of
/// 1000 integer (A, B) pairs, in exact arithmetic.
#[test]
fn depressed_delta_identity_1000() {
    let mut checked = 0;
    'outer: for lin in -25i64..25 {
        for con in -10i64..10 {
            let f = CubicPoly::new(1, 0, lin, con);
            let dep = f.depress();
            assert_eq!(dep.linear, rat(lin, 1));
            assert_eq!(dep.constant, rat(con, 1));
            let expected = -BigRational::new(f.discriminant(), BigInt::from(27));
            assert_eq!(dep.delta, expected, "A = {lin}, B = {con}");
            checked += 1;
            if checked >= 1000 {
                break 'outer;
            }
        }
    }
    assert_eq!(checked, 1000);
}

/// Hensel consistency at volume: squaring 500 lifted square roots and
/// cubing 500 lifted cube roots reproduces the inputs to precision.
#[test]
fn hensel_round_trips_500() {
    let mut state = 0x3962_6f2a_u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let primes = [5u64, 7, 13, 29, 97, 101];
    let mut squares = 0;
    let mut cubes = 0;
    while squares < 500 || cubes < 500 {
        let n = (next() % 4000) as i64 - 2000;
        let d = (next() % 200) as i64 + 1;
        if n == 0 {
            continue;
        }
        let p = primes[(next() % primes.len() as u64) as usize];
        let r = BigRational::new(BigInt::from(n), BigInt::from(d));
        if squares < 500 {
            let sq = &r * &r;
            let root = sqrt_in_qp(&sq, p, 12).unwrap();
            let direct = PadicNumber::from_rational(&sq, p, 12).unwrap();
            assert!(root.mul(&root).unwrap().agrees_with(&direct));
            squares += 1;
        }
        if cubes < 500 {
            let cu = &r * &r * &r;
            assert!(is_cube_in_qp(&cu, p).unwrap());
            let root = nth_root_in_qp(&cu, 3, p, 12).unwrap();
            let direct = PadicNumber::from_rational(&cu, p, 12).unwrap();
            assert!(
                root.mul(&root)
                    .unwrap()
                    .mul(&root)
                    .unwrap()
                    .agrees_with(&direct),
                "cube root round trip failed for {n}/{d} at p = {p}"
            );
            cubes += 1;
        }
    }
}

/// Kth-power detection in K = Q_p(√-3) agrees with literal k-th powers.
#[test]
fn kth_powers_in_k_detected() {
    for p in [5u64, 11, 17] {
        for cx in [rat(1, 1), rat(2, 1), rat(-7, 5), rat(0, 1)] {
            for cy in [rat(0, 1), rat(1, 1), rat(3, 2)] {
                if cx.is_zero() && cy.is_zero() {
                    continue;
                }
                // z = (cx + cy√-3)³ expanded over Q: re = cx³ - 9 cx cy²,
                // im = 3 cx² cy - 3 cy³.
                let re = &cx * &cx * &cx - rat(9, 1) * &cx * &cy * &cy;
                let im = rat(3, 1) * &cx * &cx * &cy - rat(3, 1) * &cy * &cy * &cy;
                let z = QuadExtElem::from_rationals(&re, &im, p, 10).unwrap();
                assert!(
                    padic::is_cube_in_k(&z).unwrap(),
                    "literal cube not detected at p = {p}"
                );
            }
        }
    }
}

/// The measure enclosure of an exact-integer-measure cubic contains the
/// integer.
#[test]
fn exact_measures_enclosed() {
    // All roots of x³ - 2x² - x - 3 lie outside the unit circle: M = 3.
    let (lo, hi) = measure_interval(&CubicPoly::new(1, -2, -1, -3)).unwrap();
    let three = BigRational::from(BigInt::from(3));
    assert!(lo <= three && three <= hi);
    assert!((&hi - &lo) < rat(1, 1_000_000_000));
    assert!(!(&hi - &lo).is_negative());
    assert!(BigRational::one() <= lo);
}
