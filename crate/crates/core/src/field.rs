//! Exact arithmetic in GF(2^n) for 1 <= n <= 16.
//!
//! Elements are encoded in polynomial basis: bit k of the integer is the
//! coefficient of x^k. The field model is pinned for reproducibility: the
//! reduction polynomial is the lexicographically smallest irreducible of the
//! requested degree (compared as integers under the bit encoding) and the
//! generator is the smallest integer representative of a primitive element.
//! Discrete-log tables are precomputed at build time; order and subgroup
//! membership queries in the search inner loop reduce to log arithmetic.

use std::fmt;

use crate::error::{Error, Result};
use crate::gcd;

/// An element of GF(2^n) in polynomial basis, `bits < q` for the owning
/// [`FieldSpec`]. Addition is bitwise XOR.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// A binary field GF(2^n): degree, reduction polynomial, primitive element
/// and log/exp tables. Immutable after construction; all operations are pure
/// functions of their inputs, so a spec can be shared across workers.
pub struct FieldSpec {
    n: u32,
    q: u32,
    reduction_poly: u32,
    generator: FieldElement,
    log_table: Vec<u32>, // indexed by bits; log_table[0] is a sentinel
    exp_table: Vec<u32>, // length q-1
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("n", &self.n)
            .field(
                "reduction_poly",
                &format_args!("{:#x}", self.reduction_poly),
            )
            .field("generator", &self.generator)
            .finish()
    }
}

const LOG_SENTINEL: u32 = u32::MAX;

fn poly_deg(p: u64) -> u32 {
    debug_assert!(p != 0);
    63 - p.leading_zeros()
}

fn clmul(a: u64, b: u64) -> u64 {
    let mut r = 0;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    r
}

fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = poly_deg(m);
    while a != 0 {
        let da = poly_deg(a);
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

/// Trial division by every polynomial of degree 1..=n/2. A reducible
/// polynomial has an irreducible factor of degree at most n/2, so dividing by
/// composite candidates as well is merely redundant.
fn is_irreducible(p: u64, n: u32) -> bool {
    for div in 2u64..(1u64 << (n / 2 + 1)) {
        if poly_rem(p, div) == 0 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(n: u32) -> u64 {
    // Constant term must be 1, otherwise x divides the candidate.
    let mut p = (1u64 << n) | 1;
    while p < (1u64 << (n + 1)) {
        if is_irreducible(p, n) {
            return p;
        }
        p += 2;
    }
    unreachable!("an irreducible polynomial of degree {n} exists");
}

fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Builds the field model for GF(2^n): smallest irreducible reduction
/// polynomial, smallest-integer generator, full log/exp tables.
/// Deterministic across runs and platforms.
pub fn build_field(n: u32) -> Result<FieldSpec> {
    if n == 0 || n > 16 {
        return Err(Error::DegreeOutOfRange(n));
    }
    let q: u32 = 1 << n;
    let qm1 = q - 1;
    let poly = smallest_irreducible(n);
    let mul_raw = |a: u64, b: u64| poly_rem(clmul(a, b), poly);
    let pow_raw = |mut base: u64, mut e: u32| {
        let mut acc = 1u64;
        while e != 0 {
            if e & 1 == 1 {
                acc = mul_raw(acc, base);
            }
            base = mul_raw(base, base);
            e >>= 1;
        }
        acc
    };

    let factors = prime_factors(qm1);
    let generator = if qm1 == 1 {
        1u32
    } else {
        (2..q)
            .find(|&g| factors.iter().all(|&p| pow_raw(g as u64, qm1 / p) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    };

    let mut exp_table = vec![0u32; qm1 as usize];
    let mut log_table = vec![LOG_SENTINEL; q as usize];
    let mut acc = 1u64;
    for e in 0..qm1 {
        exp_table[e as usize] = acc as u32;
        log_table[acc as usize] = e;
        acc = mul_raw(acc, generator as u64);
    }
    debug_assert_eq!(acc, 1, "generator order must be q-1");

    Ok(FieldSpec {
        n,
        q,
        reduction_poly: poly as u32,
        generator: FieldElement(generator),
        log_table,
        exp_table,
    })
}

impl FieldSpec {
    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn qm1(&self) -> u32 {
        self.q - 1
    }

    pub fn reduction_poly(&self) -> u32 {
        self.reduction_poly
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// g^(e mod (q-1)), as raw bits. Hot-loop primitive.
    #[inline]
    pub fn exp_raw(&self, e: u64) -> u32 {
        self.exp_table[(e % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log of nonzero raw bits. Hot-loop primitive.
    #[inline]
    pub fn log_raw(&self, x: u32) -> u32 {
        debug_assert!(x != 0 && x < self.q);
        self.log_table[x as usize]
    }

    pub fn log(&self, x: FieldElement) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log_raw(x.0))
        }
    }

    #[inline]
    pub fn add(x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(x.0 ^ y.0)
    }

    /// Carry-less product reduced modulo the reduction polynomial, realized
    /// through the log/exp tables.
    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp_raw(self.log_raw(x.0) as u64 + self.log_raw(y.0) as u64))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        self.pow(x, -1)
    }

    /// x^k with k interpreted modulo q-1 for nonzero x; pow(0, k) = 0 for
    /// k > 0 and pow(0, 0) = 1.
    pub fn pow(&self, x: FieldElement, k: i64) -> Result<FieldElement> {
        if x.is_zero() {
            return match k {
                0 => Ok(FieldElement::ONE),
                k if k > 0 => Ok(FieldElement::ZERO),
                _ => Err(Error::ZeroToNegativePower),
            };
        }
        let qm1 = (self.q - 1) as i64;
        let e = k.rem_euclid(qm1) as u64;
        Ok(FieldElement(self.exp_raw(self.log_raw(x.0) as u64 * e)))
    }

    /// Smallest k >= 1 with x^k = 1; always divides q-1.
    pub fn order(&self, x: FieldElement) -> Result<u32> {
        let lx = self
            .log(x)
            .ok_or(Error::ZeroInput("multiplicative order"))?;
        let qm1 = (self.q - 1) as u64;
        Ok((qm1 / gcd(lx as u64, qm1)) as u32)
    }

    /// Membership in mu_d, the subgroup of d-th roots of unity; d must divide
    /// q-1.
    pub fn in_mu(&self, x: FieldElement, d: u32) -> Result<bool> {
        let qm1 = self.q - 1;
        if d == 0 || qm1 % d != 0 {
            return Err(Error::NotADivisor {
                divisor: d as u64,
                group_order: qm1 as u64,
            });
        }
        let lx = self
            .log(x)
            .ok_or(Error::ZeroInput("root-of-unity membership"))?;
        Ok((lx as u64 * d as u64) % qm1 as u64 == 0)
    }

    /// The d elements g^{k(q-1)/d}, k = 0..d, in increasing log order.
    pub fn enumerate_mu(&self, d: u32) -> Result<Vec<FieldElement>> {
        let qm1 = self.q - 1;
        if d == 0 || qm1 % d != 0 {
            return Err(Error::NotADivisor {
                divisor: d as u64,
                group_order: qm1 as u64,
            });
        }
        let step = (qm1 / d) as u64;
        Ok((0..d as u64)
            .map(|k| FieldElement(self.exp_raw(k * step)))
            .collect())
    }

    /// The norm map onto the subfield of size 2^m, realized as
    /// x^((2^n-1)/(2^m-1)); norm of 0 is 0 by convention.
    pub fn norm_to_subfield(&self, x: FieldElement, m: u32) -> Result<FieldElement> {
        if m == 0 || self.n % m != 0 {
            return Err(Error::NotADivisor {
                divisor: m as u64,
                group_order: self.n as u64,
            });
        }
        if x.is_zero() {
            return Ok(FieldElement::ZERO);
        }
        let e = ((self.q as u64 - 1) / ((1u64 << m) - 1)) as i64;
        self.pow(x, e)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(FieldElement)
    }
}
