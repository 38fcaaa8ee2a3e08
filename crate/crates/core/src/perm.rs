//! Permutation testing for binomials x^i + ax: direct evaluation with an
//! occupancy bitmask and Hermite power sums. The third tester (the AGW
//! reduction) lives in [`crate::index`].

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::gcd;

/// A candidate binomial x^i + ax over a fixed field, with 2 <= i <= q-2 and
/// a != 0. i = 1 degenerates to a monomial and i >= q-1 is redundant modulo
/// x^q - x.
pub struct BinomialSpec<'a> {
    pub field: &'a FieldSpec,
    pub i: u32,
    pub a: FieldElement,
}

impl<'a> BinomialSpec<'a> {
    pub fn new(field: &'a FieldSpec, i: u32, a: FieldElement) -> Result<Self> {
        let max = field.q() as u64 - 2;
        if (i as u64) < 2 || i as u64 > max {
            return Err(Error::ExponentOutOfRange { i: i as u64, max });
        }
        if a.is_zero() {
            return Err(Error::ZeroInput("binomial coefficient"));
        }
        Ok(BinomialSpec { field, i, a })
    }
}

/// Reusable occupancy mask for the direct tester. Non-permutations collide
/// quickly, so the early abort dominates; the mask is cleared per call
/// (q/64 words).
pub struct DirectTester {
    mask: Vec<u64>,
}

impl DirectTester {
    pub fn new(field: &FieldSpec) -> Self {
        DirectTester {
            mask: vec![0u64; field.q() as usize / 64 + 1],
        }
    }

    /// True iff c -> c^i + a*c is a bijection of GF(q). Evaluation of c^i
    /// goes through the log/exp tables: one multiply-mod per element.
    pub fn is_pp(&mut self, field: &FieldSpec, i: u32, a: FieldElement) -> bool {
        debug_assert!(!a.is_zero());
        self.mask.fill(0);
        let qm1 = field.qm1() as u64;
        let la = field.log_raw(a.0) as u64;
        self.mask[0] |= 1; // image of c = 0
        for lc in 0..qm1 {
            let v = field.exp_raw(lc * i as u64) ^ field.exp_raw(lc + la);
            let word = &mut self.mask[(v / 64) as usize];
            let bit = 1u64 << (v % 64);
            if *word & bit != 0 {
                return false;
            }
            *word |= bit;
        }
        true
    }
}

/// True iff {c^i + a*c : c in GF(q)} has q distinct values.
pub fn is_pp_direct(b: &BinomialSpec) -> bool {
    DirectTester::new(b.field).is_pp(b.field, b.i, b.a)
}

/// Hermite condition (i): x = 0 is the only root of x^i + ax, equivalently
/// a is not an (i-1)-th power, equivalently a^d != 1 with
/// d = (q-1)/gcd(i-1, q-1).
pub fn root_count_check(b: &BinomialSpec) -> bool {
    let qm1 = b.field.qm1() as u64;
    let s = gcd(b.i as u64 - 1, qm1);
    b.field.log_raw(b.a.0) as u64 % s != 0
}

/// The coefficient of x^{q-1} in the reduction of (x^i + ax)^t mod (x^q - x),
/// computed as the field sum over all c of (c^i + ac)^t. In characteristic 2
/// the sum of c^e over GF(q) is 1 iff (q-1) | e with e > 0, and 0 otherwise,
/// which makes the power sum equal the Hermite coefficient.
pub fn hermite_power_sum(b: &BinomialSpec, t: u32) -> Result<FieldElement> {
    let max = b.field.q() as u64 - 2;
    if t == 0 || t as u64 > max {
        return Err(Error::HermiteExponentOutOfRange { t: t as u64, max });
    }
    let f = b.field;
    let qm1 = f.qm1() as u64;
    let la = f.log_raw(b.a.0) as u64;
    let mut acc = 0u32;
    for lc in 0..qm1 {
        let v = f.exp_raw(lc * b.i as u64) ^ f.exp_raw(lc + la);
        if v != 0 {
            acc ^= f.exp_raw(f.log_raw(v) as u64 * t as u64);
        }
    }
    Ok(FieldElement(acc))
}

/// Full Hermite's criterion: exactly one root, and the coefficient of
/// x^{q-1} in (x^i + ax)^t vanishes for every t in [1, q-2]. Evaluating even
/// t as well is redundant (their coefficients are squares of earlier ones)
/// but harmless at the field sizes where this tester runs; intended for
/// q <= 2^10.
pub fn is_pp_hermite(b: &BinomialSpec) -> bool {
    if !root_count_check(b) {
        return false;
    }
    (1..=b.field.q() - 2).all(|t| hermite_power_sum(b, t).unwrap().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    /// Brute-force root enumeration, the independent oracle for
    /// root_count_check.
    fn has_single_root_brute(b: &BinomialSpec) -> bool {
        let f = b.field;
        let roots = f
            .elements()
            .filter(|&c| {
                let v = FieldSpec::add(f.pow(c, b.i as i64).unwrap(), f.mul(b.a, c));
                v.is_zero()
            })
            .count();
        roots == 1
    }

    #[test]
    fn root_count_matches_brute_force() {
        for n in 2..=8 {
            let f = build_field(n).unwrap();
            for i in 2..=f.q() - 2 {
                for a in f.nonzero_elements() {
                    let b = BinomialSpec::new(&f, i, a).unwrap();
                    assert_eq!(
                        root_count_check(&b),
                        has_single_root_brute(&b),
                        "n={n} i={i} a={a}"
                    );
                }
            }
        }
    }

    #[test]
    fn a_equal_one_always_has_second_root() {
        let f = build_field(6).unwrap();
        for i in 2..=f.q() - 2 {
            let b = BinomialSpec::new(&f, i, FieldElement::ONE).unwrap();
            assert!(!root_count_check(&b));
            assert!(!is_pp_direct(&b));
        }
    }

    #[test]
    fn root_count_order_example() {
        // GF(64), i=10: d = 63/gcd(9,63) = 7; a of order 9 has a^7 != 1.
        let f = build_field(6).unwrap();
        let a = f.pow(f.generator(), 7).unwrap();
        assert_eq!(f.order(a).unwrap(), 9);
        let b = BinomialSpec::new(&f, 10, a).unwrap();
        assert!(root_count_check(&b));
    }

    #[test]
    fn gf64_i22_has_valid_a() {
        let f = build_field(6).unwrap();
        assert!(f
            .nonzero_elements()
            .any(|a| is_pp_direct(&BinomialSpec::new(&f, 22, a).unwrap())));
    }

    #[test]
    fn gf32_has_no_permutation_binomials() {
        let f = build_field(5).unwrap();
        for i in 2..=f.q() - 2 {
            for a in f.nonzero_elements() {
                assert!(!is_pp_direct(&BinomialSpec::new(&f, i, a).unwrap()));
            }
        }
    }

    #[test]
    fn gf16_only_linearized_binomials_permute() {
        let f = build_field(4).unwrap();
        for i in 2..=f.q() - 2 {
            for a in f.nonzero_elements() {
                let pp = is_pp_direct(&BinomialSpec::new(&f, i, a).unwrap());
                if pp {
                    assert!(matches!(i, 2 | 4 | 8), "non-linearized PP at i={i}");
                }
            }
        }
    }

    #[test]
    fn hermite_t1_vanishes() {
        let f = build_field(6).unwrap();
        for i in 2..=f.q() - 2 {
            let b = BinomialSpec::new(&f, i, f.generator()).unwrap();
            assert_eq!(hermite_power_sum(&b, 1).unwrap(), FieldElement::ZERO);
        }
    }

    #[test]
    fn hermite_t_out_of_range() {
        let f = build_field(4).unwrap();
        let b = BinomialSpec::new(&f, 3, f.generator()).unwrap();
        assert!(hermite_power_sum(&b, 0).is_err());
        assert!(hermite_power_sum(&b, f.q() - 1).is_err());
    }

    #[test]
    fn hermite_agrees_with_direct_gf8() {
        let f = build_field(3).unwrap();
        for i in 2..=f.q() - 2 {
            for a in f.nonzero_elements() {
                let b = BinomialSpec::new(&f, i, a).unwrap();
                assert_eq!(is_pp_hermite(&b), is_pp_direct(&b));
            }
        }
    }

    #[test]
    fn hermite_agrees_with_direct_gf64() {
        let f = build_field(6).unwrap();
        for i in 2..=f.q() - 2 {
            for a in f.nonzero_elements() {
                let b = BinomialSpec::new(&f, i, a).unwrap();
                assert_eq!(is_pp_hermite(&b), is_pp_direct(&b), "i={i} a={a}");
            }
        }
    }

    #[test]
    fn nonzero_hermite_coefficient_for_failing_a() {
        // GF(64), i=43: for a violating the f1 condition some t is nonzero.
        let f = build_field(6).unwrap();
        for a in f.nonzero_elements() {
            let b = BinomialSpec::new(&f, 43, a).unwrap();
            if !is_pp_direct(&b) && root_count_check(&b) {
                let witness = (1..=f.q() - 2).any(|t| !hermite_power_sum(&b, t).unwrap().is_zero());
                assert!(witness, "a={a}");
            }
        }
    }

    #[test]
    fn validity_invariant_under_frobenius_and_scaling() {
        for n in 3..=6 {
            let f = build_field(n).unwrap();
            for i in 2..=f.q() - 2 {
                let verdict: Vec<bool> = f
                    .nonzero_elements()
                    .map(|a| is_pp_direct(&BinomialSpec::new(&f, i, a).unwrap()))
                    .collect();
                let v = |a: FieldElement| verdict[a.0 as usize - 1];
                for a in f.nonzero_elements() {
                    // a -> a^2: conjugation by the squaring automorphism
                    assert_eq!(v(a), v(f.mul(a, a)), "n={n} i={i} a={a} square");
                    // a -> a*c^{i-1}: from u*f(cx) with u = c^{-i}
                    for c in f.nonzero_elements() {
                        let scaled = f.mul(a, f.pow(c, i as i64 - 1).unwrap());
                        assert_eq!(v(a), v(scaled), "n={n} i={i} a={a} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn pp_implies_root_count() {
        let f = build_field(6).unwrap();
        for i in 2..=f.q() - 2 {
            for a in f.nonzero_elements() {
                let b = BinomialSpec::new(&f, i, a).unwrap();
                if is_pp_direct(&b) {
                    assert!(root_count_check(&b));
                }
            }
        }
    }

    #[test]
    fn binomial_spec_validation() {
        let f = build_field(4).unwrap();
        assert!(BinomialSpec::new(&f, 1, f.generator()).is_err());
        assert!(BinomialSpec::new(&f, 15, f.generator()).is_err());
        assert!(BinomialSpec::new(&f, 3, FieldElement::ZERO).is_err());
    }
}
