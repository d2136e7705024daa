//! Integer cubic polynomials and their exact algebraic reductions.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// An integer cubic `a·x³ + b·x² + c·x + d` with positive leading coefficient.
///
/// The leading coefficient is kept positive so that every rational cubic has
/// exactly one representative here (up to overall sign, which never affects
/// roots, measure, or splitting).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicPoly {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// The monic depressed form `x³ + A·x + B` of a cubic, over exact rationals,
/// together with `Δ = B² + 4A³/27`.
///
/// A cubic splits over a field of characteristic ≠ 2, 3 exactly when its
/// depressed form does, since depression only rescales and shifts the roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepressedForm {
    /// Coefficient of the linear term.
    pub linear: BigRational,
    /// Constant term.
    pub constant: BigRational,
    /// `constant² + 4·linear³/27`; its square class decides Cardano's radicals.
    pub delta: BigRational,
}

impl CubicPoly {
    /// Construct a cubic, requiring `a >= 1`.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(a >= 1, "leading coefficient must be positive");
        CubicPoly { a, b, c, d }
    }

    pub fn coeffs(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Sum of the absolute values of the coefficients.
    pub fn length(&self) -> u64 {
        self.a.unsigned_abs()
            + self.b.unsigned_abs()
            + self.c.unsigned_abs()
            + self.d.unsigned_abs()
    }

    /// The content: gcd of the coefficients. An imprimitive cubic (content
    /// above 1) is an integer multiple of its primitive part and has
    /// strictly larger measure.
    pub fn content(&self) -> u64 {
        let mut g = self.a.unsigned_abs();
        for c in [self.b, self.c, self.d] {
            g = gcd_small(g, c.unsigned_abs());
        }
        g
    }

    /// The reversed polynomial `d·x³ + c·x² + b·x + a`, sign-normalised so the
    /// leading coefficient is positive. Its roots are the reciprocals of the
    /// roots of `self`; only defined when `d != 0`.
    pub fn reversal(&self) -> Option<CubicPoly> {
        if self.d == 0 {
            return None;
        }
        let s = self.d.signum();
        Some(CubicPoly::new(
            s * self.d,
            s * self.c,
            s * self.b,
            s * self.a,
        ))
    }

    /// The polynomial with roots negated (`-f(-x)` normalised to positive lead).
    pub fn negated_roots(&self) -> CubicPoly {
        CubicPoly::new(self.a, -self.b, self.c, -self.d)
    }

    /// Exact evaluation at an integer point.
    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let a = BigInt::from(self.a);
        let b = BigInt::from(self.b);
        let c = BigInt::from(self.c);
        let d = BigInt::from(self.d);
        ((a * x + b) * x + c) * x + d
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let a = BigRational::from(BigInt::from(self.a));
        let b = BigRational::from(BigInt::from(self.b));
        let c = BigRational::from(BigInt::from(self.c));
        let d = BigRational::from(BigInt::from(self.d));
        ((a * x + b) * x + c) * x + d
    }

    /// Exact evaluation of the derivative `3a·x² + 2b·x + c` at a rational point.
    pub fn eval_derivative_rational(&self, x: &BigRational) -> BigRational {
        let a3 = BigRational::from(BigInt::from(self.a) * 3);
        let b2 = BigRational::from(BigInt::from(self.b) * 2);
        let c = BigRational::from(BigInt::from(self.c));
        (a3 * x + b2) * x + c
    }

    /// Floating-point evaluation, for seed refinement only.
    pub fn eval_f64(&self, x: f64) -> f64 {
        ((self.a as f64 * x + self.b as f64) * x + self.c as f64) * x + self.d as f64
    }

    /// Exact sign of `f(x)` at a rational point, via the cleared form
    /// `a·n³ + b·n²·m + c·n·m² + d·m³` (m > 0), which avoids rational
    /// normalization in the root-bracketing hot path.
    pub fn eval_sign(&self, x: &BigRational) -> core::cmp::Ordering {
        let n = x.numer();
        let m = x.denom();
        let m2 = m * m;
        let v = ((BigInt::from(self.a) * n + BigInt::from(self.b) * m) * n
            + BigInt::from(self.c) * &m2)
            * n
            + BigInt::from(self.d) * m2 * m;
        v.cmp(&BigInt::zero())
    }

    /// Exact sign of the discriminant (positive iff three distinct real
    /// roots), on an integer fast path.
    pub fn discriminant_sign(&self) -> core::cmp::Ordering {
        let (a, b, c, d) = (
            self.a as i128,
            self.b as i128,
            self.c as i128,
            self.d as i128,
        );
        let quick = || -> Option<i128> {
            let t1 = (b * c).checked_mul(b * c)?;
            let t2 = 4i128.checked_mul(a.checked_mul(c.checked_mul(c.checked_mul(c)?)?)?)?;
            let t3 = 4i128.checked_mul(b.checked_mul(b.checked_mul(b.checked_mul(d)?)?)?)?;
            let t4 = 27i128.checked_mul((a * d).checked_mul(a * d)?)?;
            let t5 = 18i128.checked_mul(a.checked_mul(b.checked_mul(c.checked_mul(d)?)?)?)?;
            t1.checked_sub(t2)?
                .checked_sub(t3)?
                .checked_sub(t4)?
                .checked_add(t5)
        };
        match quick() {
            Some(v) => v.cmp(&0),
            None => self.discriminant().cmp(&BigInt::zero()),
        }
    }

    pub fn eval_derivative_f64(&self, x: f64) -> f64 {
        (3.0 * self.a as f64 * x + 2.0 * self.b as f64) * x + self.c as f64
    }

    /// The discriminant `b²c² - 4ac³ - 4b³d - 27a²d² + 18abcd`, exactly.
    pub fn discriminant(&self) -> BigInt {
        let a = BigInt::from(self.a);
        let b = BigInt::from(self.b);
        let c = BigInt::from(self.c);
        let d = BigInt::from(self.d);
        &b * &b * &c * &c - 4 * &a * &c * &c * &c - 4 * &b * &b * &b * &d - 27 * &a * &a * &d * &d
            + 18 * &a * &b * &c * &d
    }

    /// True when the cubic has no rational root, i.e. is irreducible over Q.
    ///
    /// A rational root of `a·x³+b·x²+c·x+d` must be `±p/q` with `p | d` and
    /// `q | a`, so testing that finite candidate set is a complete
    /// irreducibility test in degree 3.
    pub fn is_irreducible(&self) -> bool {
        if self.d == 0 {
            return false; // root at 0
        }
        // f(p/q) = 0 iff a·p³ + b·p²q + c·pq² + d·q³ = 0.
        let clears_to_zero = |p: i64, q: i64| -> bool {
            let (a, b, c, d) = (
                self.a as i128,
                self.b as i128,
                self.c as i128,
                self.d as i128,
            );
            let (p, q) = (p as i128, q as i128);
            let val = a
                .checked_mul(p * p * p)
                .and_then(|t| t.checked_add(b * p * p * q))
                .and_then(|t| t.checked_add(c * p * q * q))
                .and_then(|t| t.checked_add(d * q * q * q));
            match val {
                Some(v) => v == 0,
                None => {
                    // Out of i128 range; redo exactly.
                    let (p, q) = (BigInt::from(p), BigInt::from(q));
                    let v = BigInt::from(a) * &p * &p * &p
                        + BigInt::from(b) * &p * &p * &q
                        + BigInt::from(c) * &p * &q * &q
                        + BigInt::from(d) * &q * &q * &q;
                    v.is_zero()
                }
            }
        };
        let num_divs = positive_divisors(self.d.unsigned_abs());
        let den_divs = positive_divisors(self.a.unsigned_abs());
        for &q in &den_divs {
            for &p in &num_divs {
                if gcd_small(p, q) != 1 {
                    continue;
                }
                if clears_to_zero(p as i64, q as i64) || clears_to_zero(-(p as i64), q as i64) {
                    return false;
                }
            }
        }
        true
    }

    /// The depressed form `x³ + A·x + B` with
    /// `A = (3ac - b²)/(3a²)` and `B = (27a²d - 9abc + 2b³)/(27a³)`,
    /// along with `Δ = B² + 4A³/27`, all as exact rationals.
    pub fn depress(&self) -> DepressedForm {
        let a = BigInt::from(self.a);
        let b = BigInt::from(self.b);
        let c = BigInt::from(self.c);
        let d = BigInt::from(self.d);
        let linear = BigRational::new(3 * &a * &c - &b * &b, 3 * &a * &a);
        let constant = BigRational::new(
            27 * &a * &a * &d - 9 * &a * &b * &c + 2 * &b * &b * &b,
            27 * &a * &a * &a,
        );
        let delta = &constant * &constant
            + &linear * &linear * &linear * BigRational::new(BigInt::from(4), BigInt::from(27));
        DepressedForm {
            linear,
            constant,
            delta,
        }
    }
}

impl DepressedForm {
    /// True when the linear coefficient vanishes (the pure-cube case `x³ + B`).
    pub fn is_pure_cube(&self) -> bool {
        self.linear.is_zero()
    }
}

fn gcd_small(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Positive divisors of `n` (with `divisors(0) = [0]`, never used for roots).
fn positive_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

impl fmt::Display for CubicPoly {
    /// Renders like `x^3 - 2x^2 - x - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_poly(self.coeffs()))
    }
}

impl fmt::Debug for CubicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CubicPoly({}, {}, {}, {}: {})",
            self.a, self.b, self.c, self.d, self
        )
    }
}

fn render_poly(coeffs: [i64; 4]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    let powers = ["x^3", "x^2", "x", ""];
    let mut first = true;
    for (i, &coeff) in coeffs.iter().enumerate() {
        if coeff == 0 {
            continue;
        }
        let mag = coeff.unsigned_abs();
        if first {
            if coeff < 0 {
                s.push('-');
            }
            first = false;
        } else if coeff < 0 {
            s.push_str(" - ");
        } else {
            s.push_str(" + ");
        }
        let is_constant = i == 3;
        if mag != 1 || is_constant {
            let _ = write!(s, "{mag}");
        }
        s.push_str(powers[i]);
    }
    if first {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn poly(a: i64, b: i64, c: i64, d: i64) -> CubicPoly {
        CubicPoly::new(a, b, c, d)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn length_examples() {
        assert_eq!(poly(1, 0, 0, 0).length(), 1);
        assert_eq!(poly(1, -9, 6, 1).length(), 17);
        assert_eq!(poly(3, -4, -5, 3).length(), 15);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(poly(1, 0, 0, -2).is_irreducible()); // x^3 - 2
        assert!(!poly(1, -1, 0, 0).is_irreducible()); // x^2 (x - 1)
        assert!(poly(2, -2, 1, -2).is_irreducible());
        // Rational root 1/2:
        assert!(!poly(2, -1, 2, -1).is_irreducible()); // (2x - 1)(x^2 + 1)
        assert!(!poly(1, -3, 3, -1).is_irreducible()); // (x - 1)^3
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(poly(1, -1, -2, 1).discriminant(), BigInt::from(49));
        assert_eq!(poly(1, 0, 0, -2).discriminant(), BigInt::from(-108));
        assert_eq!(poly(1, 0, 0, 0).discriminant(), BigInt::zero());
    }

    #[test]
    fn depress_examples() {
        let dep = poly(1, 0, 1, 0).depress(); // x^3 + x
        assert_eq!(dep.linear, rat(1, 1));
        assert_eq!(dep.constant, rat(0, 1));

        let dep = poly(1, -3, 0, 1).depress(); // x^3 - 3x^2 + 1
        assert_eq!(dep.linear, rat(-3, 1));
        assert_eq!(dep.constant, rat(-1, 1));
        assert_eq!(dep.delta, rat(-3, 1));

        let dep = poly(2, -2, 1, -2).depress();
        assert_eq!(dep.linear, rat(1, 6));
        assert_eq!(dep.constant, rat(-49, 54));
    }

    #[test]
    fn depress_then_undepress_recovers_poly() {
        // Substitute x = y + b/(3a) into the monic depressed cubic and clear
        // denominators: a·((y + s)³ + A(y + s) + B) with s = b/(3a) must
        // reproduce the original coefficients.
        for &(a, b, c, d) in &[
            (1i64, -1, -2, 1),
            (2, -2, 1, -2),
            (3, -4, -5, 3),
            (7, 23, -11, 5),
            (1, 0, 0, -2),
        ] {
            let f = poly(a, b, c, d);
            let dep = f.depress();
            let s = rat(b, 3 * a);
            let lead = rat(a, 1);
            // coefficients of (y + s)^3 + A (y + s) + B in y
            let c2 = rat(3, 1) * &s;
            let c1 = rat(3, 1) * &s * &s + &dep.linear;
            let c0 = &s * &s * &s + &dep.linear * &s + &dep.constant;
            assert_eq!(&lead * BigRational::one(), rat(a, 1));
            assert_eq!(&lead * c2, rat(b, 1));
            assert_eq!(&lead * c1, rat(c, 1));
            assert_eq!(&lead * c0, rat(d, 1));
        }
    }

    #[test]
    fn delta_is_minus_disc_over_27_for_monic_depressed() {
        // For monic x³ + Ax + B with integer A, B: Δ = -disc/27.
        for &(lin, con) in &[(1i64, 1i64), (-3, -1), (2, -5), (-7, 4), (0, 9)] {
            let f = poly(1, 0, lin, con);
            let dep = f.depress();
            let disc = BigRational::from(f.discriminant());
            assert_eq!(dep.delta, -disc / rat(27, 1));
        }
    }

    #[test]
    fn rendering() {
        use alloc::string::ToString;
        assert_eq!(poly(1, -2, -1, -3).to_string(), "x^3 - 2x^2 - x - 3");
        assert_eq!(poly(2, -2, 1, -2).to_string(), "2x^3 - 2x^2 + x - 2");
        assert_eq!(poly(1, 0, -1, -2).to_string(), "x^3 - x - 2");
        assert_eq!(poly(1, -1, 0, 1).to_string(), "x^3 - x^2 + 1");
        assert_eq!(poly(1, 0, 0, -2).to_string(), "x^3 - 2");
    }

    #[test]
    fn content_detects_imprimitive() {
        assert_eq!(poly(2, -2, 0, -2).content(), 2);
        assert_eq!(poly(2, -1, 0, 2).content(), 1);
        assert_eq!(poly(6, 0, -9, 3).content(), 3);
    }

    #[test]
    fn reversal_and_negation() {
        let f = poly(1, -1, -2, 1);
        assert_eq!(f.reversal().unwrap(), poly(1, -2, -1, 1));
        let g = poly(1, 0, -1, -1); // x^3 - x - 1
        assert_eq!(g.reversal().unwrap(), poly(1, 1, 0, -1)); // x^3 + x^2 - 1
        assert_eq!(g.negated_roots(), poly(1, 0, -1, 1)); // x^3 - x + 1
    }
}
