//! Lucas-lemma binomial parity and the symbolic Hermite coefficient of
//! x^{q-1} for binomial powers.
//!
//! The coefficient of x^{q-1} in (x^i + ax)^t mod (x^q - x) collects the
//! terms binom(t, k) a^{t-k} x^{t + (i-1)k} whose exponent is divisible by
//! q-1 (exponents are positive for t >= 1, and x^e with e > 0 reduces to
//! x^{((e-1) mod (q-1)) + 1}, so divisibility is the whole condition). The
//! surviving terms are those with binom(t, k) odd, decided by the bit-subset
//! specialization of Lucas' lemma.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::gcd;

/// binom(n, k) mod 2: 1 iff the bits of k are a subset of the bits of n.
pub fn lucas_binom_mod2(n: u64, k: u64) -> Result<u8> {
    if k > n {
        return Err(Error::BinomialIndexOrder { n, k });
    }
    Ok(u8::from(k & !n == 0))
}

/// The solution set of t + (i-1)k = 0 (mod modulus) for k in [0, t],
/// together with the Lucas-surviving subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruentIndexSet {
    pub t: u64,
    pub i: u64,
    pub modulus: u64,
    /// All k in [0, t] satisfying the congruence, ascending.
    pub members: Vec<u64>,
    /// The members with binom(t, k) odd.
    pub surviving: Vec<u64>,
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // extended Euclid; gcd(a, m) = 1
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i128) as u64
}

/// Enumerates the congruence solutions by stepping through one residue
/// class k = k0 (mod modulus/gcd) instead of scanning [0, t]; t can be on
/// the order of q^2 in the worked instances.
pub fn congruent_set(t: u64, i: u64, modulus: u64) -> CongruentIndexSet {
    debug_assert!(i >= 1 && modulus >= 1);
    let step_base = (i - 1) % modulus;
    let mut members = Vec::new();
    if step_base == 0 {
        if t % modulus == 0 {
            members.extend(0..=t);
        }
    } else {
        let g = gcd(step_base, modulus);
        if t % g == 0 {
            let m = modulus / g;
            // (i-1)k = -t  =>  k = (-t/g) * inv((i-1)/g) (mod m)
            let rhs = (modulus - t % modulus) % modulus / g;
            let k0 = (rhs as u128 * mod_inverse(step_base / g, m) as u128 % m as u128) as u64;
            let mut k = k0;
            while k <= t {
                members.push(k);
                k += m;
            }
        }
    }
    let surviving = members.iter().copied().filter(|&k| k & !t == 0).collect();
    CongruentIndexSet {
        t,
        i,
        modulus,
        members,
        surviving,
    }
}

/// The symbolic coefficient of x^{q-1} in (x^i + ax)^t mod (x^q - x): the
/// field sum of a^{t-k} over the surviving k. Must equal
/// [`crate::perm::hermite_power_sum`] on every input.
pub fn binomial_power_coeff(
    field: &FieldSpec,
    i: u32,
    a: FieldElement,
    t: u32,
) -> Result<FieldElement> {
    let max = field.q() as u64 - 2;
    if t == 0 || t as u64 > max {
        return Err(Error::HermiteExponentOutOfRange { t: t as u64, max });
    }
    let set = congruent_set(t as u64, i as u64, field.qm1() as u64);
    let mut acc = FieldElement::ZERO;
    for &k in &set.surviving {
        acc = FieldSpec::add(acc, field.pow(a, (t as u64 - k) as i64)?);
    }
    Ok(acc)
}
